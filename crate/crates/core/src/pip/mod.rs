//! Finite posets with inconsistent pairs (PIPs) and their consistent order
//! ideals.
//!
//! A [`Pip`] is immutable once built. Reachability (`<`) and the upward
//! closure of the inconsistency relation are materialized at construction so
//! every predicate below is a handful of bitset operations.

mod io;
mod iso;
mod linear;
mod reroot;

use std::collections::HashMap;
use std::fmt;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};

pub use io::PipFile;
pub use linear::LinearExtensions;

/// Default cap on the number of ideals [`Pip::consistent_ideals`] will produce.
pub const DEFAULT_IDEAL_CAP: usize = 1 << 20;

/// How listed inconsistent pairs are interpreted during validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InconsistencyMode {
    /// The listed pairs are the whole relation; it must already be upward closed.
    Literal,
    /// The listed pairs generate the relation by upward closure.
    UpwardClosure,
}

/// The first problem found while validating a PIP description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnknownElement(String),
    DuplicateElement(String),
    /// The order relation has a cycle through these elements.
    Cycle(Vec<String>),
    SelfInconsistent(String),
    /// Axiom 1: the inconsistent pair `{p, q}` has the common upper bound `bound`.
    CommonUpperBound { p: String, q: String, bound: String },
    /// Axiom 2: `{p, q}` is inconsistent but `{p_up, q_up}` above it is not.
    NotUpwardClosed { p: String, q: String, p_up: String, q_up: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownElement(id) => write!(f, "unknown element `{id}`"),
            Violation::DuplicateElement(id) => write!(f, "duplicate element `{id}`"),
            Violation::Cycle(ids) => write!(f, "order relation has a cycle through {}", ids.join(", ")),
            Violation::SelfInconsistent(id) => write!(f, "element `{id}` is inconsistent with itself"),
            Violation::CommonUpperBound { p, q, bound } => write!(
                f,
                "axiom 1: inconsistent pair {{{p}, {q}}} has common upper bound `{bound}`"
            ),
            Violation::NotUpwardClosed { p, q, p_up, q_up } => write!(
                f,
                "axiom 2: {{{p}, {q}}} is inconsistent but {{{p_up}, {q_up}}} is not"
            ),
        }
    }
}

/// A consistent order ideal of some [`Pip`], stored as a subset of its
/// element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal(ElementSet);

impl Ideal {
    /// Wraps a set without checking it. Use [`Pip::ideal`] for checked construction.
    pub fn from_set_unchecked(set: ElementSet) -> Self {
        Ideal(set)
    }

    pub fn members(&self) -> &ElementSet {
        &self.0
    }

    pub fn into_members(self) -> ElementSet {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.0.contains(element)
    }
}

/// A finite poset with inconsistent pairs.
///
/// Elements are opaque string ids, indexed `0..len()` in lexicographic id order.
#[derive(Clone)]
pub struct Pip {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    below: Vec<ElementSet>,
    above: Vec<ElementSet>,
    conflicts: Vec<ElementSet>,
    topo: Vec<usize>,
}

impl fmt::Debug for Pip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let file = self.to_file();
        f.debug_struct("Pip")
            .field("elements", &file.elements)
            .field("covers", &file.covers)
            .field("inconsistent", &file.inconsistent)
            .finish()
    }
}

struct Checked {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    below: Vec<ElementSet>,
    above: Vec<ElementSet>,
    topo: Vec<usize>,
    pairs: Vec<(usize, usize)>,
}

/// Sorts ids, resolves relation endpoints and checks acyclicity.
fn resolve(
    elements: &[String],
    relations: &[(String, String)],
    inconsistent: &[(String, String)],
) -> std::result::Result<Checked, Violation> {
    let mut ids = elements.to_vec();
    ids.sort();
    for w in ids.windows(2) {
        if w[0] == w[1] {
            return Err(Violation::DuplicateElement(w[0].clone()));
        }
    }
    let index: HashMap<String, usize> = ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let lookup = |id: &String| index.get(id).copied().ok_or_else(|| Violation::UnknownElement(id.clone()));
    let n = ids.len();
    let mut succ = vec![Vec::new(); n];
    for (a, b) in relations {
        let (a, b) = (lookup(a)?, lookup(b)?);
        succ[a].push(b);
    }
    let mut pairs = Vec::with_capacity(inconsistent.len());
    for (p, q) in inconsistent {
        pairs.push((lookup(p)?, lookup(q)?));
    }

    // Kahn's algorithm, always taking the smallest available index.
    let mut indegree = vec![0usize; n];
    for s in &succ {
        for &b in s {
            indegree[b] += 1;
        }
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut topo = Vec::with_capacity(n);
    while let Some(&v) = ready.iter().next() {
        ready.remove(&v);
        topo.push(v);
        for &b in &succ[v] {
            indegree[b] -= 1;
            if indegree[b] == 0 {
                ready.insert(b);
            }
        }
    }
    if topo.len() < n {
        let cyc: Vec<String> = (0..n).filter(|&i| indegree[i] > 0).map(|i| ids[i].clone()).collect();
        return Err(Violation::Cycle(cyc));
    }

    let mut below = vec![ElementSet::empty(n); n];
    for &v in &topo {
        for &b in &succ[v] {
            let mut add = below[v].clone();
            add.insert(v);
            below[b] = below[b].union(&add);
        }
    }
    let mut above = vec![ElementSet::empty(n); n];
    for (b, set) in below.iter().enumerate() {
        for a in set.iter() {
            above[a].insert(b);
        }
    }
    Ok(Checked { ids, index, below, above, topo, pairs })
}

fn check_pairs(c: &Checked, mode: InconsistencyMode) -> std::result::Result<(), Violation> {
    let n = c.ids.len();
    let up = |p: usize| {
        let mut s = c.above[p].clone();
        s.insert(p);
        s
    };
    for &(p, q) in &c.pairs {
        if p == q {
            return Err(Violation::SelfInconsistent(c.ids[p].clone()));
        }
        if let Some(r) = up(p).intersection(&up(q)).iter().next() {
            return Err(Violation::CommonUpperBound {
                p: c.ids[p].clone(),
                q: c.ids[q].clone(),
                bound: c.ids[r].clone(),
            });
        }
    }
    if mode == InconsistencyMode::Literal {
        let mut listed = vec![ElementSet::empty(n); n];
        for &(p, q) in &c.pairs {
            listed[p].insert(q);
            listed[q].insert(p);
        }
        for &(p, q) in &c.pairs {
            for p2 in up(p).iter() {
                for q2 in up(q).iter() {
                    if !listed[p2].contains(q2) {
                        return Err(Violation::NotUpwardClosed {
                            p: c.ids[p].clone(),
                            q: c.ids[q].clone(),
                            p_up: c.ids[p2].clone(),
                            q_up: c.ids[q2].clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checks acyclicity and both PIP axioms for a raw description.
///
/// `relations` may be any generating set of the order (covers or more).
pub fn validate(
    elements: &[String],
    relations: &[(String, String)],
    inconsistent: &[(String, String)],
    mode: InconsistencyMode,
) -> std::result::Result<(), Violation> {
    let checked = resolve(elements, relations, inconsistent)?;
    check_pairs(&checked, mode)
}

impl Pip {
    /// Builds a PIP from ids, a generating set of order relations `(a, b)`
    /// meaning `a < b`, and generating inconsistent pairs (closed upward).
    pub fn new(
        elements: Vec<String>,
        relations: Vec<(String, String)>,
        inconsistent: Vec<(String, String)>,
    ) -> Result<Pip> {
        let checked = resolve(&elements, &relations, &inconsistent).map_err(Error::InvalidPip)?;
        check_pairs(&checked, InconsistencyMode::UpwardClosure).map_err(Error::InvalidPip)?;
        Ok(Self::from_checked(checked))
    }

    fn from_checked(c: Checked) -> Pip {
        let n = c.ids.len();
        let mut conflicts = vec![ElementSet::empty(n); n];
        for &(p, q) in &c.pairs {
            let mut up_p = c.above[p].clone();
            up_p.insert(p);
            let mut up_q = c.above[q].clone();
            up_q.insert(q);
            for a in up_p.iter() {
                conflicts[a] = conflicts[a].union(&up_q);
            }
            for b in up_q.iter() {
                conflicts[b] = conflicts[b].union(&up_p);
            }
        }
        Pip {
            ids: c.ids,
            index: c.index,
            below: c.below,
            above: c.above,
            conflicts,
            topo: c.topo,
        }
    }

    /// Builds a PIP directly from element indices; `ids` must already be sorted.
    pub(crate) fn from_indices(
        ids: Vec<String>,
        relations: &[(usize, usize)],
        inconsistent: &[(usize, usize)],
    ) -> Result<Pip> {
        let rels: Vec<(String, String)> =
            relations.iter().map(|&(a, b)| (ids[a].clone(), ids[b].clone())).collect();
        let inc: Vec<(String, String)> =
            inconsistent.iter().map(|&(a, b)| (ids[a].clone(), ids[b].clone())).collect();
        Pip::new(ids, rels, inc)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, element: usize) -> &str {
        &self.ids[element]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// `a < b`.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    /// `a <= b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `{a, b}` belongs to the (closed) inconsistency relation.
    pub fn inconsistent(&self, a: usize, b: usize) -> bool {
        self.conflicts[a].contains(b)
    }

    /// Elements strictly below `element`.
    pub fn strictly_below(&self, element: usize) -> &ElementSet {
        &self.below[element]
    }

    /// Elements strictly above `element`.
    pub fn strictly_above(&self, element: usize) -> &ElementSet {
        &self.above[element]
    }

    /// Elements inconsistent with `element` (closed relation).
    pub fn conflicts_of(&self, element: usize) -> &ElementSet {
        &self.conflicts[element]
    }

    /// A linear extension of the whole poset, smallest index first among ties.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Cover relations `(a, b)` with `a` covered by `b`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.len() {
            for a in self.below[b].iter() {
                if self.above[a].is_disjoint(&self.below[b]) {
                    out.push((a, b));
                }
            }
        }
        out.sort();
        out
    }

    /// Minimal inconsistent pairs `(p, q)` with `p < q` by index, sorted.
    pub fn minimal_inconsistent_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.len() {
            for q in self.conflicts[p].iter().filter(|&q| q > p) {
                let minimal = self.below[p].iter().all(|p2| !self.inconsistent(p2, q))
                    && self.below[q].iter().all(|q2| !self.inconsistent(p, q2));
                if minimal {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// All inconsistent pairs `(p, q)` with `p < q` by index.
    pub fn inconsistent_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|p| self.conflicts[p].iter().filter(move |&q| q > p).map(move |q| (p, q)))
            .collect()
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.len())
    }

    /// Looks up a set of ids as a subset of the element universe.
    pub fn subset<S: AsRef<str>>(&self, ids: &[S]) -> Result<ElementSet> {
        let mut set = self.empty_set();
        for id in ids {
            let i = self.index_of(id.as_ref()).ok_or_else(|| Error::UnknownElement(id.as_ref().to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    /// Downward closed and free of inconsistent pairs.
    pub fn is_consistent_ideal(&self, set: &ElementSet) -> bool {
        set.iter()
            .all(|e| self.below[e].is_subset(set) && self.conflicts[e].is_disjoint(set))
    }

    /// Checked conversion of a set into an [`Ideal`].
    pub fn ideal(&self, set: ElementSet) -> Result<Ideal> {
        if set.universe() != self.len() {
            return Err(Error::NotAnIdeal(format!(
                "set over {} elements used with a PIP of {} elements",
                set.universe(),
                self.len()
            )));
        }
        if !self.is_consistent_ideal(&set) {
            return Err(Error::NotAnIdeal(self.format_set(&set)));
        }
        Ok(Ideal(set))
    }

    /// Checked ideal from element ids.
    pub fn ideal_from_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<Ideal> {
        self.ideal(self.subset(ids)?)
    }

    pub fn empty_ideal(&self) -> Ideal {
        Ideal(self.empty_set())
    }

    /// The whole poset as an ideal, when it is consistent.
    pub fn full_ideal(&self) -> Result<Ideal> {
        self.ideal(ElementSet::full(self.len()))
    }

    pub fn maximal_elements(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_indices(
            self.len(),
            set.iter().filter(|&e| self.above[e].is_disjoint(set)),
        )
    }

    pub fn minimal_elements(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_indices(
            self.len(),
            set.iter().filter(|&e| self.below[e].is_disjoint(set)),
        )
    }

    pub fn is_antichain(&self, set: &ElementSet) -> bool {
        set.iter().all(|e| self.below[e].is_disjoint(set))
    }

    /// Every consistent order ideal, in canonical order (by size, then by
    /// sorted member indices). Fails once more than `cap` ideals exist.
    pub fn consistent_ideals(&self, cap: usize) -> Result<Vec<Ideal>> {
        let mut out = Vec::new();
        let mut current = self.empty_set();
        self.extend_ideals(0, &mut current, &mut out, cap)?;
        out.sort_by_cached_key(|a| (a.len(), a.to_vec()));
        Ok(out.into_iter().map(Ideal).collect())
    }

    fn extend_ideals(
        &self,
        pos: usize,
        current: &mut ElementSet,
        out: &mut Vec<ElementSet>,
        cap: usize,
    ) -> Result<()> {
        if pos == self.topo.len() {
            if out.len() == cap {
                return Err(Error::CapExceeded { what: "ideal", cap });
            }
            out.push(current.clone());
            return Ok(());
        }
        let e = self.topo[pos];
        self.extend_ideals(pos + 1, current, out, cap)?;
        if self.below[e].is_subset(current) && self.conflicts[e].is_disjoint(current) {
            current.insert(e);
            let res = self.extend_ideals(pos + 1, current, out, cap);
            current.remove(e);
            res?;
        }
        Ok(())
    }

    /// Number of elements in a longest chain of `ideal`.
    pub fn depth(&self, ideal: &Ideal) -> usize {
        self.heights(ideal.members()).into_iter().max().unwrap_or(0)
    }

    /// For each member of `set`, the length of the longest chain in `set`
    /// ending at it (0 for non-members).
    pub fn heights(&self, set: &ElementSet) -> Vec<usize> {
        let mut height = vec![0usize; self.len()];
        for &e in &self.topo {
            if set.contains(e) {
                height[e] = 1 + self.below[e].iter().filter(|&c| set.contains(c)).map(|c| height[c]).max().unwrap_or(0);
            }
        }
        height
    }

    /// Image of the ideal `b` in the PIP rerooted at `root`: `root △ b`.
    pub fn transport(&self, root: &Ideal, b: &Ideal) -> Ideal {
        Ideal(root.0.symmetric_difference(&b.0))
    }

    /// Renders a set as `{a,b,c}` using element ids.
    pub fn format_set(&self, set: &ElementSet) -> String {
        let ids: Vec<&str> = set.iter().map(|e| self.id(e)).collect();
        format!("{{{}}}", ids.join(","))
    }
}
