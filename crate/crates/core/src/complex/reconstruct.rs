use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::{Cube, CubeComplex};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::pip::{Ideal, Pip};

/// Why a rooted complex is not the complex of any PIP.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cat0Failure {
    /// Two edge paths from the root to `vertex` cross different sets of
    /// hyperplanes; the edge `(from, vertex)` exposes the disagreement.
    WallsNotWellDefined { from: String, vertex: String },
    /// Distinct vertices are separated from the root by the same hyperplanes.
    CollidingVertices { a: String, b: String },
    /// Two hyperplanes lie on the same side of exactly the same vertices.
    ParallelHyperplanes { a: String, b: String },
    /// The recovered order and inconsistencies do not form a PIP.
    InvalidPip(String),
    /// The recovered PIP is valid but its complex differs from the input.
    ComplexMismatch(String),
}

impl fmt::Display for Cat0Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cat0Failure::WallsNotWellDefined { from, vertex } => write!(
                f,
                "hyperplane labels are not well defined: crossing the edge {from} -- {vertex} disagrees with another path"
            ),
            Cat0Failure::CollidingVertices { a, b } => {
                write!(f, "vertices {a} and {b} are separated from the root by the same hyperplanes")
            }
            Cat0Failure::ParallelHyperplanes { a, b } => {
                write!(f, "hyperplanes {a} and {b} separate the same vertices")
            }
            Cat0Failure::InvalidPip(msg) => write!(f, "recovered relations are not a PIP: {msg}"),
            Cat0Failure::ComplexMismatch(msg) => write!(f, "complex of the recovered PIP differs: {msg}"),
        }
    }
}

/// Failure report from [`CubeComplex::reconstruct_pip`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotCat0Report {
    pub failure: Cat0Failure,
    /// An edge 4-cycle spanning no square, when one exists.
    pub unfilled_four_cycle: Option<[String; 4]>,
}

impl fmt::Display for NotCat0Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.failure)?;
        if let Some(cycle) = &self.unfilled_four_cycle {
            write!(f, "; unfilled 4-cycle {} - {} - {} - {}", cycle[0], cycle[1], cycle[2], cycle[3])?;
        }
        Ok(())
    }
}

/// A PIP recovered from a rooted complex, with the ideal of every vertex.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub pip: Pip,
    /// `vertex_ideals[v]` is the ideal of hyperplanes separating `v` from the root.
    pub vertex_ideals: Vec<Ideal>,
}

impl Reconstruction {
    pub fn vertex_of(&self) -> HashMap<Ideal, usize> {
        self.vertex_ideals.iter().cloned().enumerate().map(|(v, i)| (i, v)).collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl CubeComplex {
    /// Partitions the edges into hyperplanes: classes of the relation "opposite
    /// edges of a common square". Returns `(edges, class of each edge, number
    /// of classes)`, with classes numbered by first appearance in a
    /// breadth-first sweep from the root.
    pub fn hyperplanes(&self) -> (Vec<(usize, usize)>, Vec<usize>, usize) {
        let edges: Vec<(usize, usize)> = self
            .cubes_of_dim(1)
            .map(|c| (c.corners[0].min(c.corners[1]), c.corners[0].max(c.corners[1])))
            .collect();
        let edge_index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let edge_of = |a: usize, b: usize| edge_index[&(a.min(b), a.max(b))];
        let mut uf = UnionFind::new(edges.len());
        for sq in self.cubes_of_dim(2) {
            let c = &sq.corners;
            uf.union(edge_of(c[0], c[1]), edge_of(c[2], c[3]));
            uf.union(edge_of(c[0], c[2]), edge_of(c[1], c[3]));
        }
        // renumber classes in breadth-first order from the root
        let mut class_of_root = HashMap::new();
        let mut class = vec![usize::MAX; edges.len()];
        let mut seen = vec![false; self.vertex_count()];
        seen[self.root] = true;
        let mut queue = VecDeque::from([self.root]);
        let mut visit = |e: usize, uf: &mut UnionFind, class: &mut Vec<usize>| {
            let r = uf.find(e);
            let next = class_of_root.len();
            class[e] = *class_of_root.entry(r).or_insert(next);
        };
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                let e = edge_of(u, w);
                if class[e] == usize::MAX {
                    visit(e, &mut uf, &mut class);
                }
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        for e in 0..edges.len() {
            if class[e] == usize::MAX {
                visit(e, &mut uf, &mut class);
            }
        }
        let count = class.iter().copied().max().map_or(0, |m| m + 1);
        (edges, class, count)
    }

    /// Recovers the PIP of this complex rooted at its root, or explains why
    /// none exists (the complex is not CAT(0)).
    ///
    /// Each hyperplane becomes an element. A vertex is labeled by the
    /// hyperplanes crossed on the way from the root; `p <= q` when every label
    /// containing `q` contains `p`, and `p`, `q` are inconsistent when no label
    /// contains both. The result is accepted only if the labeling is a rooted
    /// isomorphism onto `X(P)`.
    pub fn reconstruct_pip(&self, ideal_cap: usize) -> Result<std::result::Result<Reconstruction, NotCat0Report>> {
        if !self.is_connected() {
            return Err(Error::InvalidComplex("complex is disconnected".into()));
        }
        Ok(self.reconstruct_inner(ideal_cap)?.map_err(|failure| NotCat0Report {
            failure,
            unfilled_four_cycle: self
                .unfilled_four_cycles()
                .first()
                .map(|cyc| cyc.map(|v| self.labels[v].clone())),
        }))
    }

    fn reconstruct_inner(&self, ideal_cap: usize) -> Result<std::result::Result<Reconstruction, Cat0Failure>> {
        let (edges, class, count) = self.hyperplanes();
        let n = self.vertex_count();
        let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, &(a, b)) in edges.iter().enumerate() {
            adjacency[a].push((b, class[e]));
            adjacency[b].push((a, class[e]));
        }
        let mut labels: Vec<Option<ElementSet>> = vec![None; n];
        labels[self.root] = Some(ElementSet::empty(count));
        let mut queue = VecDeque::from([self.root]);
        while let Some(u) = queue.pop_front() {
            let here = labels[u].clone().expect("queued vertices are labeled");
            for &(w, h) in &adjacency[u] {
                let mut there = here.clone();
                there.toggle(h);
                match &labels[w] {
                    None => {
                        labels[w] = Some(there);
                        queue.push_back(w);
                    }
                    Some(existing) if *existing != there => {
                        return Ok(Err(Cat0Failure::WallsNotWellDefined {
                            from: self.labels[u].clone(),
                            vertex: self.labels[w].clone(),
                        }));
                    }
                    Some(_) => {}
                }
            }
        }
        let labels: Vec<ElementSet> = labels.into_iter().map(|l| l.expect("connected")).collect();
        let mut owner: HashMap<&ElementSet, usize> = HashMap::new();
        for (v, l) in labels.iter().enumerate() {
            if let Some(&other) = owner.get(l) {
                return Ok(Err(Cat0Failure::CollidingVertices {
                    a: self.labels[other].clone(),
                    b: self.labels[v].clone(),
                }));
            }
            owner.insert(l, v);
        }

        let width = count.saturating_sub(1).to_string().len();
        let ids: Vec<String> = (0..count).map(|h| format!("h{h:0width$}")).collect();
        // side[h]: vertices beyond hyperplane h
        let mut side = vec![ElementSet::empty(n); count];
        for (v, l) in labels.iter().enumerate() {
            for h in l.iter() {
                side[h].insert(v);
            }
        }
        let mut relations = Vec::new();
        let mut inconsistent = Vec::new();
        for p in 0..count {
            for q in 0..count {
                if p == q {
                    continue;
                }
                if side[p] == side[q] {
                    return Ok(Err(Cat0Failure::ParallelHyperplanes { a: ids[p].clone(), b: ids[q].clone() }));
                }
                if side[q].is_subset(&side[p]) {
                    relations.push((p, q));
                } else if p < q && side[p].is_disjoint(&side[q]) {
                    inconsistent.push((p, q));
                }
            }
        }
        let pip = match Pip::from_indices(ids, &relations, &inconsistent) {
            Ok(pip) => pip,
            Err(Error::InvalidPip(v)) => return Ok(Err(Cat0Failure::InvalidPip(v.to_string()))),
            Err(e) => return Err(e),
        };

        for (v, l) in labels.iter().enumerate() {
            if !pip.is_consistent_ideal(l) {
                return Ok(Err(Cat0Failure::ComplexMismatch(format!(
                    "vertex {} maps to {} which is not a consistent ideal",
                    self.labels[v],
                    pip.format_set(l)
                ))));
            }
        }
        let expected = pip_f_vector(&pip, ideal_cap)?;
        let mut actual = self.f_vector();
        actual.resize(expected.len().max(actual.len()), 0);
        let mut expected_padded = expected.clone();
        expected_padded.resize(actual.len(), 0);
        if actual != expected_padded {
            return Ok(Err(Cat0Failure::ComplexMismatch(format!(
                "f-vector {actual:?} but the recovered PIP has {expected_padded:?}"
            ))));
        }
        for cube in &self.cubes {
            if let Err(msg) = check_cube(&pip, cube, &labels) {
                let names: Vec<&str> = cube.corners.iter().map(|&v| self.labels[v].as_str()).collect();
                return Ok(Err(Cat0Failure::ComplexMismatch(format!("cube {names:?}: {msg}"))));
            }
        }
        let vertex_ideals = labels.into_iter().map(Ideal::from_set_unchecked).collect();
        Ok(Ok(Reconstruction { pip, vertex_ideals }))
    }
}

/// Cube counts of `X(P)` without building it: `sum over ideals I of C(|I_max|, d)`.
fn pip_f_vector(pip: &Pip, ideal_cap: usize) -> Result<Vec<usize>> {
    let mut f = vec![0usize];
    for ideal in pip.consistent_ideals(ideal_cap)? {
        let k = pip.maximal_elements(ideal.members()).len();
        if f.len() < k + 1 {
            f.resize(k + 1, 0);
        }
        let mut binom = 1usize;
        for (d, slot) in f.iter_mut().enumerate().take(k + 1) {
            *slot += binom;
            binom = binom * (k - d) / (d + 1);
        }
    }
    while f.len() > 1 && f.last() == Some(&0) {
        f.pop();
    }
    Ok(f)
}

/// The corner labels of `cube` must be exactly `{K - S : S ⊆ M}` with `K`
/// their union and `M` a set of `dim` maximal elements of `K`.
fn check_cube(pip: &Pip, cube: &Cube, labels: &[ElementSet]) -> std::result::Result<(), String> {
    let sets: Vec<&ElementSet> = cube.corners.iter().map(|&v| &labels[v]).collect();
    let top = sets.iter().fold(ElementSet::empty(pip.len()), |acc, s| acc.union(s));
    let bottom = sets.iter().fold(top.clone(), |acc, s| acc.intersection(s));
    let moved = top.difference(&bottom);
    if moved.len() != cube.dim() {
        return Err(format!("spans {} hyperplanes", moved.len()));
    }
    if !pip.is_consistent_ideal(&top) || !moved.is_subset(&pip.maximal_elements(&top)) {
        return Err("directions are not maximal elements of a consistent ideal".into());
    }
    let dirs = moved.to_vec();
    let mut wanted: Vec<ElementSet> = (0..1usize << dirs.len())
        .map(|mask| {
            let mut s = top.clone();
            for (b, &e) in dirs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    s.remove(e);
                }
            }
            s
        })
        .collect();
    let mut got: Vec<ElementSet> = sets.into_iter().cloned().collect();
    wanted.sort();
    got.sort();
    if wanted != got {
        return Err("corners are not the vertices of C(I, M)".into());
    }
    Ok(())
}
