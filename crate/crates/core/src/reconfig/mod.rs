//! Reconfigurable systems: a base graph whose vertices carry symbols, and
//! local reversible moves (generators) that rewrite the symbols on their
//! support.

mod io;
mod order;

use std::collections::{HashMap, HashSet, VecDeque};

use crate::complex::CubeComplex;
use crate::error::{Error, Result};

pub use io::{GeneratorFile, GraphFile, SystemFile};
pub use order::HomeOrder;

/// Default cap on explored states.
pub const DEFAULT_STATE_CAP: usize = 1 << 20;

/// A labeling of every base-graph vertex by an alphabet symbol, stored as
/// symbol indices in vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RState(Vec<u8>);

impl RState {
    pub fn new(symbols: Vec<u8>) -> Self {
        RState(symbols)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn get(&self, vertex: usize) -> u8 {
        self.0[vertex]
    }
}

/// A local move. `local[0]` and `local[1]` label the support (in support
/// order) and differ exactly on the trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    name: String,
    support: Vec<usize>,
    trace: Vec<usize>,
    local: [Vec<u8>; 2],
    moves: [String; 2],
}

impl Generator {
    /// `moves[i]` names the move from `local[i]` to `local[1 - i]`.
    pub fn new(
        name: impl Into<String>,
        support: Vec<usize>,
        trace: Vec<usize>,
        local0: Vec<u8>,
        local1: Vec<u8>,
        moves: [String; 2],
    ) -> Result<Self> {
        let name = name.into();
        let bad = |msg: &str| Err(Error::InvalidSystem(format!("generator `{name}`: {msg}")));
        if local0.len() != support.len() || local1.len() != support.len() {
            return bad("local states must label exactly the support");
        }
        let mut sorted = support.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != support.len() {
            return bad("support has repeated vertices");
        }
        if trace.is_empty() {
            return bad("empty trace");
        }
        for &t in &trace {
            if !support.contains(&t) {
                return bad("trace is not contained in the support");
            }
        }
        for (i, v) in support.iter().enumerate() {
            let in_trace = trace.contains(v);
            if in_trace && local0[i] == local1[i] {
                return bad("local states agree on a trace vertex");
            }
            if !in_trace && local0[i] != local1[i] {
                return bad("local states differ outside the trace");
            }
        }
        let mut trace = trace;
        trace.sort_unstable();
        Ok(Generator { name, support, trace, local: [local0, local1], moves })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn trace(&self) -> &[usize] {
        &self.trace
    }

    pub fn local(&self, side: usize) -> &[u8] {
        &self.local[side]
    }

    /// Name of the move that starts from local state `side`.
    pub fn move_name(&self, side: usize) -> &str {
        &self.moves[side]
    }

    /// Which local state `u` shows on the support, if any.
    pub fn side_at(&self, u: &RState) -> Option<usize> {
        (0..2).find(|&side| self.support.iter().zip(&self.local[side]).all(|(&v, &s)| u.get(v) == s))
    }

    pub fn admissible(&self, u: &RState) -> bool {
        self.side_at(u).is_some()
    }

    /// `u` with the support switched to the other local state.
    pub fn apply(&self, u: &RState) -> Result<RState> {
        let side = self
            .side_at(u)
            .ok_or_else(|| Error::InvalidState(format!("generator `{}` is not admissible", self.name)))?;
        Ok(self.apply_from(u, side))
    }

    fn apply_from(&self, u: &RState, side: usize) -> RState {
        let mut out = u.clone();
        for (&v, &s) in self.support.iter().zip(&self.local[1 - side]) {
            out.0[v] = s;
        }
        out
    }

    /// Trace of `self` avoids the support of `other` and vice versa.
    pub fn commutes_with(&self, other: &Generator) -> bool {
        self.trace.iter().all(|t| !other.support.contains(t)) && other.trace.iter().all(|t| !self.support.contains(t))
    }
}

/// Pairwise commutation of a set of generators.
pub fn commute(gens: &[&Generator]) -> bool {
    gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
}

/// A base graph, an alphabet, generators and a seed state.
#[derive(Debug, Clone)]
pub struct ReconfigSystem {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    alphabet: Vec<String>,
    generators: Vec<Generator>,
    seed: RState,
    vertex_index: HashMap<String, usize>,
}

/// One edge of the transition graph: `generator` applied to `from` starting
/// at local state `side` gives `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    pub generator: usize,
    pub side: usize,
}

/// The reachable states of a system and its transition graph.
#[derive(Debug, Clone)]
pub struct Exploration {
    states: Vec<RState>,
    index: HashMap<RState, usize>,
    depth: Vec<usize>,
    transitions: Vec<Transition>,
    adjacency: Vec<Vec<usize>>,
}

impl ReconfigSystem {
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(usize, usize)>,
        alphabet: Vec<String>,
        generators: Vec<Generator>,
        seed: RState,
    ) -> Result<Self> {
        if alphabet.is_empty() || alphabet.len() > 256 {
            return Err(Error::InvalidSystem("alphabet must have 1..=256 symbols".into()));
        }
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidSystem(format!("duplicate vertex `{v}`")));
            }
        }
        let n = vertices.len();
        if edges.iter().any(|&(a, b)| a >= n || b >= n) {
            return Err(Error::InvalidSystem("edge endpoint is not a vertex".into()));
        }
        for g in &generators {
            if g.support.iter().any(|&v| v >= n) {
                return Err(Error::InvalidSystem(format!("generator `{}` leaves the graph", g.name)));
            }
            if g.local.iter().flatten().any(|&s| s as usize >= alphabet.len()) {
                return Err(Error::InvalidSystem(format!("generator `{}` uses an unknown symbol", g.name)));
            }
        }
        let system = ReconfigSystem { vertices, edges, alphabet, generators, seed, vertex_index };
        system.check_state(&system.seed)?;
        Ok(system)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn seed(&self) -> &RState {
        &self.seed
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn symbol_index(&self, symbol: &str) -> Option<u8> {
        self.alphabet.iter().position(|s| s == symbol).map(|i| i as u8)
    }

    pub fn check_state(&self, u: &RState) -> Result<()> {
        if u.0.len() != self.vertices.len() {
            return Err(Error::InvalidState(format!(
                "state labels {} vertices, graph has {}",
                u.0.len(),
                self.vertices.len()
            )));
        }
        if u.0.iter().any(|&s| s as usize >= self.alphabet.len()) {
            return Err(Error::InvalidState("unknown symbol".into()));
        }
        Ok(())
    }

    /// Compact display: symbols concatenated when all are single characters,
    /// comma separated otherwise.
    pub fn format_state(&self, u: &RState) -> String {
        let syms = u.0.iter().map(|&s| self.alphabet[s as usize].as_str());
        if self.alphabet.iter().all(|s| s.chars().count() == 1) {
            syms.collect()
        } else {
            syms.collect::<Vec<_>>().join(",")
        }
    }

    /// Finds the generator and side whose move is called `name`.
    pub fn find_move(&self, name: &str) -> Option<(usize, usize)> {
        self.generators
            .iter()
            .enumerate()
            .find_map(|(g, gen)| (0..2).find(|&side| gen.moves[side] == name).map(|side| (g, side)))
    }

    /// Breadth-first closure of the seed under admissible moves.
    ///
    /// States are numbered by (distance from the seed, encoding), so the
    /// numbering does not depend on generator order.
    pub fn explore(&self, cap: usize) -> Result<Exploration> {
        let mut found: Vec<(RState, usize)> = vec![(self.seed.clone(), 0)];
        let mut seen: HashSet<RState> = HashSet::from([self.seed.clone()]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let (u, d) = found[i].clone();
            for g in &self.generators {
                if let Some(side) = g.side_at(&u) {
                    let v = g.apply_from(&u, side);
                    if seen.insert(v.clone()) {
                        if found.len() == cap {
                            return Err(Error::CapExceeded { what: "state", cap });
                        }
                        found.push((v, d + 1));
                        queue.push_back(found.len() - 1);
                    }
                }
            }
        }
        found.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        let depth: Vec<usize> = found.iter().map(|(_, d)| *d).collect();
        let states: Vec<RState> = found.into_iter().map(|(s, _)| s).collect();
        let index: HashMap<RState, usize> = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut transitions = Vec::new();
        let mut adjacency = vec![Vec::new(); states.len()];
        for (i, u) in states.iter().enumerate() {
            for (gi, g) in self.generators.iter().enumerate() {
                if let Some(side) = g.side_at(u) {
                    let j = index[&g.apply_from(u, side)];
                    if side == 0 {
                        adjacency[i].push(transitions.len());
                        adjacency[j].push(transitions.len());
                        transitions.push(Transition { from: i, to: j, generator: gi, side });
                    }
                }
            }
        }
        Ok(Exploration { states, index, depth, transitions, adjacency })
    }

    /// The state complex: one `k`-cube for every state `u` and every set of
    /// `k` pairwise commuting generators admissible at `u`.
    ///
    /// Each cube is emitted once, from the corner where all of its generators
    /// sit at local state 0; cubes are deduplicated on their vertex sets.
    pub fn state_complex(&self, exploration: &Exploration) -> Result<CubeComplex> {
        let commuting: Vec<Vec<bool>> = self
            .generators
            .iter()
            .map(|a| self.generators.iter().map(|b| a.commutes_with(b)).collect())
            .collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut cubes = Vec::new();
        for u in &exploration.states {
            let ready: Vec<usize> = (0..self.generators.len())
                .filter(|&g| self.generators[g].side_at(u) == Some(0))
                .collect();
            let mut chosen = Vec::new();
            self.collect_cubes(exploration, u, &ready, 0, &commuting, &mut chosen, &mut seen, &mut cubes)?;
        }
        let labels = exploration.states.iter().map(|s| self.format_state(s)).collect();
        let root = exploration.index[&self.seed];
        CubeComplex::new(labels, cubes, root)
    }

    #[allow(clippy::too_many_arguments)]
    fn collect_cubes(
        &self,
        exploration: &Exploration,
        u: &RState,
        ready: &[usize],
        start: usize,
        commuting: &[Vec<bool>],
        chosen: &mut Vec<usize>,
        seen: &mut HashSet<Vec<usize>>,
        cubes: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        for k in start..ready.len() {
            let g = ready[k];
            if !chosen.iter().all(|&c| commuting[c][g]) {
                continue;
            }
            chosen.push(g);
            let corners = (0..1usize << chosen.len())
                .map(|mask| {
                    let mut s = u.clone();
                    for (bit, &gi) in chosen.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            s = self.generators[gi].apply_from(&s, 0);
                        }
                    }
                    exploration.index.get(&s).copied().ok_or_else(|| {
                        Error::InvalidSystem("cube corner outside the explored states".into())
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            let mut key = corners.clone();
            key.sort_unstable();
            if seen.insert(key) {
                cubes.push(corners);
            }
            self.collect_cubes(exploration, u, ready, k + 1, commuting, chosen, seen, cubes)?;
            chosen.pop();
        }
        Ok(())
    }
}

impl Exploration {
    pub fn states(&self) -> &[RState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, u: &RState) -> Option<usize> {
        self.index.get(u).copied()
    }

    /// Edge distance of each state from the seed.
    pub fn depth(&self) -> &[usize] {
        &self.depth
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Neighbors of state `i` in the transition graph, with the transition used.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, &Transition)> + '_ {
        self.adjacency[i].iter().map(move |&t| {
            let tr = &self.transitions[t];
            (if tr.from == i { tr.to } else { tr.from }, tr)
        })
    }

    /// Breadth-first distances in the transition graph from state `source`.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for (w, _) in self.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}
