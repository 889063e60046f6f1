use super::{Ideal, Pip};
use crate::error::{Error, Result};

impl Pip {
    /// The PIP of the same cube complex rooted at the vertex `root`.
    ///
    /// With `I = root` and `J` its complement: order inside `J` is kept, order
    /// inside `I` is reversed, `i < j` becomes an inconsistent pair, pairs
    /// inconsistent inside `J` stay inconsistent and `i`, `j` inconsistent
    /// becomes `i < j`. Element ids are unchanged.
    pub fn reroot(&self, root: &Ideal) -> Result<Pip> {
        if root.members().universe() != self.len() || !self.is_consistent_ideal(root.members()) {
            return Err(Error::NotAnIdeal(self.format_set(root.members())));
        }
        let in_i = |e: usize| root.contains(e);
        let mut relations = Vec::new();
        let mut inconsistent = Vec::new();
        for b in 0..self.len() {
            for a in self.strictly_below(b).iter() {
                match (in_i(a), in_i(b)) {
                    (false, false) => relations.push((a, b)),
                    (true, true) => relations.push((b, a)),
                    (true, false) => inconsistent.push((a, b)),
                    // an ideal never has an element above one outside it
                    (false, true) => unreachable!("ideal is not downward closed"),
                }
            }
        }
        for (p, q) in self.inconsistent_pairs() {
            match (in_i(p), in_i(q)) {
                (false, false) => inconsistent.push((p, q)),
                (true, false) => relations.push((p, q)),
                (false, true) => relations.push((q, p)),
                (true, true) => unreachable!("consistent ideal holds an inconsistent pair"),
            }
        }
        Pip::from_indices(self.ids.clone(), &relations, &inconsistent)
    }
}
