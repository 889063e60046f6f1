//! Explicit rooted cubical complexes.
//!
//! Every cube is stored in corner order: a `d`-cube holds `2^d` vertex indices
//! where `corners[mask]` is reached from `corners[0]` by moving along the
//! directions set in `mask`. Cubes of dimension zero are the vertices
//! themselves and are not stored.

mod iso;
mod reconstruct;

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pip::Pip;

pub use reconstruct::{Cat0Failure, NotCat0Report, Reconstruction};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cube {
    corners: Vec<usize>,
}

impl Cube {
    pub fn dim(&self) -> usize {
        self.corners.len().trailing_zeros() as usize
    }

    pub fn corners(&self) -> &[usize] {
        &self.corners
    }

    /// Sorted vertex set, used as the identity of a cube.
    pub fn key(&self) -> Vec<usize> {
        let mut k = self.corners.clone();
        k.sort_unstable();
        k
    }

    /// Facets (codimension-one faces) in corner order.
    fn facets(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let dim = self.dim();
        (0..dim).flat_map(move |bit| {
            [0usize, 1].into_iter().map(move |side| {
                (0..self.corners.len())
                    .filter(|m| (m >> bit) & 1 == side)
                    .map(|m| self.corners[m])
                    .collect()
            })
        })
    }
}

/// A finite cubical complex with a distinguished root vertex.
#[derive(Debug, Clone)]
pub struct CubeComplex {
    labels: Vec<String>,
    cubes: Vec<Cube>,
    root: usize,
    neighbors: Vec<Vec<usize>>,
}

/// JSON form of a complex: vertex ids, cubes by corner-ordered vertex ids, root id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: Vec<String>,
    pub cubes: Vec<CubeFile>,
    pub root: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeFile {
    pub verts: Vec<String>,
}

impl CubeComplex {
    /// Builds a complex from corner-ordered cubes of dimension at least one.
    ///
    /// Rejects malformed cubes, duplicates and cubes with a missing facet.
    pub fn new(labels: Vec<String>, cubes: Vec<Vec<usize>>, root: usize) -> Result<Self> {
        let n = labels.len();
        if root >= n {
            return Err(Error::InvalidComplex(format!("root {root} is not a vertex")));
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::with_capacity(cubes.len());
        for corners in cubes {
            if corners.len() < 2 || !corners.len().is_power_of_two() {
                return Err(Error::InvalidComplex(format!("cube with {} corners", corners.len())));
            }
            if let Some(&bad) = corners.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidComplex(format!("cube corner {bad} is not a vertex")));
            }
            let cube = Cube { corners };
            let key = cube.key();
            if key.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex("cube with repeated corners".into()));
            }
            if !seen.insert(key) {
                return Err(Error::InvalidComplex("duplicate cube".into()));
            }
            out.push(cube);
        }
        for cube in out.iter().filter(|c| c.dim() >= 2) {
            for facet in cube.facets() {
                let mut key = facet;
                key.sort_unstable();
                if !seen.contains(&key) {
                    return Err(Error::InvalidComplex(format!(
                        "face {:?} of a {}-cube is missing",
                        key.iter().map(|&v| &labels[v]).collect::<Vec<_>>(),
                        cube.dim()
                    )));
                }
            }
        }
        out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.key().cmp(&b.key())));
        let mut neighbors = vec![Vec::new(); n];
        for c in out.iter().filter(|c| c.dim() == 1) {
            let (a, b) = (c.corners[0], c.corners[1]);
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(CubeComplex { labels, cubes: out, root, neighbors })
    }

    /// The rooted complex `X(P)`: one vertex per consistent ideal and one cube
    /// `C(I, M)` for every ideal `I` and nonempty `M` of maximal elements of `I`.
    /// Vertex `i` is the `i`-th ideal of [`Pip::consistent_ideals`].
    pub fn from_pip(pip: &Pip, ideal_cap: usize) -> Result<Self> {
        let ideals = pip.consistent_ideals(ideal_cap)?;
        let index: HashMap<_, usize> = ideals.iter().enumerate().map(|(i, id)| (id.members().clone(), i)).collect();
        let mut cubes = Vec::new();
        for ideal in &ideals {
            let maxes = pip.maximal_elements(ideal.members()).to_vec();
            for subset in 1usize..(1 << maxes.len()) {
                let dirs: Vec<usize> = (0..maxes.len()).filter(|b| subset >> b & 1 == 1).map(|b| maxes[b]).collect();
                let corners = (0..1usize << dirs.len())
                    .map(|mask| {
                        let mut set = ideal.members().clone();
                        for (bit, &e) in dirs.iter().enumerate() {
                            if mask >> bit & 1 == 1 {
                                set.remove(e);
                            }
                        }
                        index[&set]
                    })
                    .collect();
                cubes.push(corners);
            }
        }
        let labels = ideals.iter().map(|i| pip.format_set(i.members())).collect();
        // the empty ideal sorts first
        CubeComplex::new(labels, cubes, 0)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Same complex with a different root.
    pub fn with_root(&self, root: usize) -> Result<Self> {
        if root >= self.vertex_count() {
            return Err(Error::InvalidComplex(format!("root {root} is not a vertex")));
        }
        let mut c = self.clone();
        c.root = root;
        Ok(c)
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Cubes of dimension at least one, sorted by dimension then vertex set.
    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn cubes_of_dim(&self, dim: usize) -> impl Iterator<Item = &Cube> {
        self.cubes.iter().filter(move |c| c.dim() == dim)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn dimension(&self) -> usize {
        self.cubes.iter().map(Cube::dim).max().unwrap_or(0)
    }

    /// Number of cubes of each dimension, starting with vertices.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dimension() + 1];
        f[0] = self.vertex_count();
        for c in &self.cubes {
            f[c.dim()] += 1;
        }
        f
    }

    /// `dim,count` rows, header included.
    pub fn f_vector_csv(&self) -> String {
        let mut out = String::from("dim,count\n");
        for (d, count) in self.f_vector().iter().enumerate() {
            out.push_str(&format!("{d},{count}\n"));
        }
        out
    }

    /// Breadth-first edge distances from `source`; `usize::MAX` if unreachable.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.neighbors[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }

    /// 4-cycles of edges `a-b-c-d-a` whose four vertices span no 2-cube.
    /// Each cycle is reported once, starting from its smallest vertex.
    pub fn unfilled_four_cycles(&self) -> Vec<[usize; 4]> {
        let squares: HashSet<Vec<usize>> = self.cubes_of_dim(2).map(Cube::key).collect();
        let mut out = Vec::new();
        for a in 0..self.vertex_count() {
            for &b in self.neighbors(a).iter().filter(|&&b| b > a) {
                for &d in self.neighbors(a).iter().filter(|&&d| d > b) {
                    for &c in self.neighbors(b).iter().filter(|&&c| c > a && c != d) {
                        if !self.neighbors(d).contains(&c) {
                            continue;
                        }
                        let mut key = vec![a, b, c, d];
                        key.sort_unstable();
                        if !squares.contains(&key) {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            vertices: self.labels.clone(),
            cubes: self
                .cubes
                .iter()
                .map(|c| CubeFile { verts: c.corners.iter().map(|&v| self.labels[v].clone()).collect() })
                .collect(),
            root: self.labels[self.root].clone(),
        }
    }

    pub fn from_file(file: &ComplexFile) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in file.vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(Error::InvalidComplex(format!("duplicate vertex `{v}`")));
            }
        }
        let lookup = |v: &String| {
            index.get(v.as_str()).copied().ok_or_else(|| Error::InvalidComplex(format!("unknown vertex `{v}`")))
        };
        let cubes = file
            .cubes
            .iter()
            .map(|c| c.verts.iter().map(lookup).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        CubeComplex::new(file.vertices.clone(), cubes, lookup(&file.root)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("ComplexFile serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ComplexFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }
}
