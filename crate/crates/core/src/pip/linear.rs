use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use super::{Ideal, Pip};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};

impl Pip {
    /// Exact number of linear extensions of the subposet `ideal`.
    ///
    /// Counts by memoizing over the down-sets of `ideal`: the extensions of a
    /// down-set are those of the down-set minus one of its maximal elements,
    /// followed by that element.
    pub fn linear_extension_count(&self, ideal: &Ideal) -> BigUint {
        let mut memo: HashMap<ElementSet, BigUint> = HashMap::new();
        self.count_from(ideal.members().clone(), &mut memo)
    }

    fn count_from(&self, set: ElementSet, memo: &mut HashMap<ElementSet, BigUint>) -> BigUint {
        if set.len() <= 1 {
            return BigUint::one();
        }
        if let Some(c) = memo.get(&set) {
            return c.clone();
        }
        let mut total = BigUint::default();
        for m in self.maximal_elements(&set).iter() {
            let mut rest = set.clone();
            rest.remove(m);
            total += self.count_from(rest, memo);
        }
        memo.insert(set, total.clone());
        total
    }

    /// Lazily enumerates the linear extensions of `ideal` in lexicographic
    /// order of element indices.
    pub fn linear_extensions(&self, ideal: &Ideal) -> LinearExtensions<'_> {
        LinearExtensions::new(self, ideal.members().clone())
    }

    /// Collects every linear extension, failing if there are more than `cap`.
    pub fn enumerate_linear_extensions(&self, ideal: &Ideal, cap: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        for ext in self.linear_extensions(ideal) {
            if out.len() == cap {
                return Err(Error::CapExceeded { what: "linear extension", cap });
            }
            out.push(ext);
        }
        Ok(out)
    }
}

/// Iterator over linear extensions; see [`Pip::linear_extensions`].
pub struct LinearExtensions<'a> {
    pip: &'a Pip,
    target: ElementSet,
    placed: ElementSet,
    prefix: Vec<usize>,
    // candidates available at each depth and the position of the one in use
    frames: Vec<(Vec<usize>, usize)>,
    started: bool,
    done: bool,
}

impl<'a> LinearExtensions<'a> {
    fn new(pip: &'a Pip, target: ElementSet) -> Self {
        let placed = ElementSet::empty(pip.len());
        LinearExtensions { pip, target, placed, prefix: Vec::new(), frames: Vec::new(), started: false, done: false }
    }

    fn available(&self) -> Vec<usize> {
        self.target
            .difference(&self.placed)
            .iter()
            .filter(|&e| self.pip.strictly_below(e).intersection(&self.target).is_subset(&self.placed))
            .collect()
    }

    /// Extends the prefix greedily with first candidates until complete.
    fn descend(&mut self) {
        while self.prefix.len() < self.target.len() {
            let cands = self.available();
            let first = cands[0];
            self.frames.push((cands, 0));
            self.prefix.push(first);
            self.placed.insert(first);
        }
    }

    /// Moves to the next sibling at the deepest frame that has one.
    fn advance(&mut self) -> bool {
        while let Some((cands, pos)) = self.frames.last_mut() {
            let old = cands[*pos];
            self.placed.remove(old);
            self.prefix.pop();
            if *pos + 1 < cands.len() {
                *pos += 1;
                let next = cands[*pos];
                self.prefix.push(next);
                self.placed.insert(next);
                return true;
            }
            self.frames.pop();
        }
        false
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        self.descend();
        if self.target.is_empty() {
            self.done = true;
        }
        Some(self.prefix.clone())
    }
}
