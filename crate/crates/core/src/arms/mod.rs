//! The two pinned robotic arms: the quadrant arm and the strip arm, their
//! particle-model systems, their PIPs, and the state <-> ideal bijections.

mod paths;
mod series;
mod snake;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::CubeComplex;
use crate::error::{Error, Result};
use crate::pip::{Ideal, Pip};
use crate::reconfig::{Generator, HomeOrder, RState, ReconfigSystem, DEFAULT_STATE_CAP};

pub use paths::{enumerate_partial_paths, refold, unfold, PartialPath, Symbol};
pub use series::{cube_counts, cube_counts_by_paths, cube_counts_by_series};
pub use snake::snake_system;

/// Which arm: pinned in the first quadrant, or in a strip of height one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Quadrant,
    Strip,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Quadrant => "quadrant",
            Flavor::Strip => "strip",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadrant" => Ok(Flavor::Quadrant),
            "strip" => Ok(Flavor::Strip),
            other => Err(Error::InvalidArgument(format!("unknown arm type `{other}`"))),
        }
    }
}

/// An arm of `n` links, recorded by the positions (1-based) of its vertical
/// links. Strip states never have two consecutive verticals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArmState {
    pub n: usize,
    pub verticals: Vec<usize>,
}

impl ArmState {
    pub fn new(flavor: Flavor, n: usize, mut verticals: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("arm length must be at least 1".into()));
        }
        verticals.sort_unstable();
        if verticals.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidState("repeated vertical link".into()));
        }
        if verticals.iter().any(|&a| a == 0 || a > n) {
            return Err(Error::InvalidState(format!("vertical links must lie in 1..={n}")));
        }
        if flavor == Flavor::Strip && verticals.windows(2).any(|w| w[1] == w[0] + 1) {
            return Err(Error::InvalidState("strip arm cannot have two consecutive vertical links".into()));
        }
        Ok(ArmState { n, verticals })
    }

    pub fn horizontal(n: usize) -> Self {
        ArmState { n, verticals: Vec::new() }
    }

    /// Accepts a digit string (`3568`, only when `n <= 9`), a comma list
    /// (`3,5,6,8`), the empty string, or `{"n":..,"verticals":[..]}`.
    pub fn parse(flavor: Flavor, n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            let state: ArmState = serde_json::from_str(text)?;
            if state.n != n {
                return Err(Error::InvalidState(format!("state is for n = {}, expected {n}", state.n)));
            }
            return ArmState::new(flavor, n, state.verticals);
        }
        let bad = |s: &str| Error::InvalidState(format!("cannot read `{s}` as a link position"));
        let verticals = if text.is_empty() {
            Vec::new()
        } else if text.contains(',') {
            text.split(',').map(|s| s.trim().parse::<usize>().map_err(|_| bad(s))).collect::<Result<_>>()?
        } else if n <= 9 {
            text.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad(text))).collect::<Result<_>>()?
        } else {
            vec![text.parse::<usize>().map_err(|_| bad(text))?]
        };
        ArmState::new(flavor, n, verticals)
    }

    /// The padded word `(a_1, .., a_k, n+1, .., n+1)`.
    pub fn word(&self) -> Vec<usize> {
        let mut w = self.verticals.clone();
        w.resize(self.n, self.n + 1);
        w
    }

    /// `N`/`E` spelling of the arm, link by link.
    pub fn ne_word(&self) -> String {
        (1..=self.n).map(|i| if self.verticals.contains(&i) { 'N' } else { 'E' }).collect()
    }

    pub fn from_ne_word(flavor: Flavor, word: &str) -> Result<Self> {
        let mut verticals = Vec::new();
        for (i, c) in word.chars().enumerate() {
            match c {
                'N' => verticals.push(i + 1),
                'E' => {}
                other => return Err(Error::InvalidState(format!("unexpected link `{other}`"))),
            }
        }
        ArmState::new(flavor, word.chars().count(), verticals)
    }

    fn to_rstate(&self) -> RState {
        RState::new((1..=self.n).map(|i| self.verticals.contains(&i) as u8).collect())
    }

    fn from_rstate(u: &RState) -> Self {
        let verticals = u.symbols().iter().enumerate().filter(|(_, &s)| s == 1).map(|(i, _)| i + 1).collect();
        ArmState { n: u.symbols().len(), verticals }
    }
}

impl fmt::Display for ArmState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.verticals.iter().map(|a| a.to_string()).collect();
        if self.n <= 9 {
            f.write_str(&parts.concat())
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

/// `A <= B` when `w(A) >= w(B)` coordinatewise.
pub fn word_leq(a: &ArmState, b: &ArmState) -> bool {
    a.word().iter().zip(b.word()).all(|(x, y)| *x >= y)
}

/// Every state of the arm, sorted.
pub fn all_states(flavor: Flavor, n: usize) -> Vec<ArmState> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn extend(flavor: Flavor, n: usize, next: usize, current: &mut Vec<usize>, out: &mut Vec<ArmState>) {
        if next > n {
            out.push(ArmState { n, verticals: current.clone() });
            return;
        }
        extend(flavor, n, next + 1, current, out);
        if flavor == Flavor::Quadrant || current.last() != Some(&(next - 1)) {
            current.push(next);
            extend(flavor, n, next + 1, current, out);
            current.pop();
        }
    }
    extend(flavor, n, 1, &mut current, &mut out);
    out.sort();
    out
}

fn qp_id(x: usize, y: usize) -> String {
    format!("{x}:{y}")
}

fn sp_id(k: usize, i: usize) -> String {
    format!("{k}:{i}")
}

/// Lattice points `(x, y)` with `0 <= y <= x <= n-1`, ordered componentwise;
/// no inconsistent pairs.
pub fn qp_pip(n: usize) -> Result<Pip> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let points: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..=x).map(move |y| (x, y))).collect();
    let mut relations = Vec::new();
    for &(x, y) in &points {
        if x + 1 < n {
            relations.push((qp_id(x, y), qp_id(x + 1, y)));
        }
        if y < x {
            relations.push((qp_id(x, y), qp_id(x, y + 1)));
        }
    }
    Pip::new(points.iter().map(|&(x, y)| qp_id(x, y)).collect(), relations, vec![])
}

/// Cells `(k, i)` with `k >= 1` and `1 <= i <= n - 2k + 2`, where
/// `(k, i) <= (k', i')` iff `k <= k'` and `i >= i'`; no inconsistent pairs.
pub fn sp_pip(n: usize) -> Result<Pip> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let cells = sp_cells(n);
    let mut relations = Vec::new();
    for &(k, i) in &cells {
        if i > 1 {
            relations.push((sp_id(k, i), sp_id(k, i - 1)));
        }
        if cells.contains(&(k + 1, i)) {
            relations.push((sp_id(k, i), sp_id(k + 1, i)));
        }
    }
    Pip::new(cells.iter().map(|&(k, i)| sp_id(k, i)).collect(), relations, vec![])
}

fn sp_cells(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut k = 1;
    while n + 2 > 2 * k {
        for i in 1..=n + 2 - 2 * k {
            out.push((k, i));
        }
        k += 1;
    }
    out
}

pub fn arm_pip(flavor: Flavor, n: usize) -> Result<Pip> {
    match flavor {
        Flavor::Quadrant => qp_pip(n),
        Flavor::Strip => sp_pip(n),
    }
}

fn parse_pair(id: &str) -> (usize, usize) {
    let (a, b) = id.split_once(':').expect("arm element ids are `a:b`");
    (a.parse().expect("numeric id"), b.parse().expect("numeric id"))
}

/// The order ideal of the arm PIP corresponding to a state.
pub fn state_to_ideal(flavor: Flavor, pip: &Pip, state: &ArmState) -> Result<Ideal> {
    let n = state.n;
    let a = &state.verticals;
    let mut set = pip.empty_set();
    for e in 0..pip.len() {
        let (p, q) = parse_pair(pip.id(e));
        let member = match flavor {
            Flavor::Quadrant => {
                let (x, y) = (p, q);
                y < a.len() && (1..=y + 1).all(|m| a[m - 1] + x < n + m)
            }
            Flavor::Strip => {
                let (k, i) = (p, q);
                a.len() >= k && (1..=k).all(|m| a[m - 1] <= i + 2 * (m - 1))
            }
        };
        if member {
            set.insert(e);
        }
    }
    pip.ideal(set)
}

/// The state corresponding to an order ideal of the arm PIP.
pub fn ideal_to_state(flavor: Flavor, n: usize, pip: &Pip, ideal: &Ideal) -> Result<ArmState> {
    let mut verticals = Vec::new();
    for m in 1.. {
        let best = ideal
            .members()
            .iter()
            .filter_map(|e| {
                let (p, q) = parse_pair(pip.id(e));
                match flavor {
                    Flavor::Quadrant => (q + 1 >= m).then(|| n + m - 1 - p),
                    Flavor::Strip => (p >= m).then(|| q + 2 * (m - 1)),
                }
            })
            .min();
        match best {
            Some(a) => verticals.push(a),
            None => break,
        }
    }
    ArmState::new(flavor, n, verticals)
}

fn hop_moves(i: usize) -> [String; 2] {
    [format!("hop_left@{}", i + 1), format!("hop_right@{i}")]
}

fn enter_moves(n: usize) -> [String; 2] {
    [format!("enter@{n}"), format!("leave@{n}")]
}

fn slot_system(n: usize, alphabet: [&str; 2], generators: Vec<Generator>) -> Result<ReconfigSystem> {
    ReconfigSystem::new(
        (1..=n).map(|i| i.to_string()).collect(),
        (1..n).map(|i| (i - 1, i)).collect(),
        alphabet.iter().map(|s| s.to_string()).collect(),
        generators,
        RState::new(vec![0; n]),
    )
}

/// Hopping particles on slots `1..=n`: a particle hops to an empty
/// neighboring slot, or enters or leaves at slot `n`. Symbol `1` marks a
/// vertical link.
pub fn quadrant_system(n: usize) -> Result<ReconfigSystem> {
    quadrant_like(n, ["0", "1"])
}

fn quadrant_like(n: usize, alphabet: [&str; 2]) -> Result<ReconfigSystem> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut gens = Vec::new();
    for i in 1..n {
        gens.push(Generator::new(format!("hop{i}"), vec![i - 1, i], vec![i - 1, i], vec![0, 1], vec![1, 0], hop_moves(i))?);
    }
    gens.push(Generator::new("enter", vec![n - 1], vec![n - 1], vec![0], vec![1], enter_moves(n))?);
    slot_system(n, alphabet, gens)
}

/// Repellent particles: as in [`quadrant_system`], but particles keep at
/// least one empty slot between them. The flanking slots sit in the support
/// with fixed label `0`.
pub fn strip_system(n: usize) -> Result<ReconfigSystem> {
    strip_like(n, ["0", "1"])
}

/// The arm in the pyramid grid after unfolding: the strip dynamics spelled
/// with link letters `E` and `N`.
pub fn pyramid_system(n: usize) -> Result<ReconfigSystem> {
    strip_like(n, ["E", "N"])
}

fn strip_like(n: usize, alphabet: [&str; 2]) -> Result<ReconfigSystem> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut gens = Vec::new();
    for i in 1..n {
        let slots: Vec<usize> = (i.saturating_sub(1).max(1)..=(i + 2).min(n)).collect();
        let support: Vec<usize> = slots.iter().map(|s| s - 1).collect();
        let local0 = slots.iter().map(|&s| (s == i + 1) as u8).collect();
        let local1 = slots.iter().map(|&s| (s == i) as u8).collect();
        gens.push(Generator::new(format!("hop{i}"), support, vec![i - 1, i], local0, local1, hop_moves(i))?);
    }
    let slots: Vec<usize> = (n.saturating_sub(1).max(1)..=n).collect();
    let support: Vec<usize> = slots.iter().map(|s| s - 1).collect();
    let local1 = slots.iter().map(|&s| (s == n) as u8).collect();
    gens.push(Generator::new("enter", support, vec![n - 1], vec![0; slots.len()], local1, enter_moves(n))?);
    slot_system(n, alphabet, gens)
}

pub fn arm_system(flavor: Flavor, n: usize) -> Result<ReconfigSystem> {
    match flavor {
        Flavor::Quadrant => quadrant_system(n),
        Flavor::Strip => strip_system(n),
    }
}

/// Particle-system state of an arm state.
pub fn arm_to_rstate(state: &ArmState) -> RState {
    state.to_rstate()
}

/// Arm state of a particle-system state.
pub fn rstate_to_arm(u: &RState) -> ArmState {
    ArmState::from_rstate(u)
}

/// Whether the join-irreducible states under the order from the horizontal
/// state form a poset isomorphic to the arm PIP.
pub fn join_irreducibles_check(flavor: Flavor, n: usize) -> Result<bool> {
    let system = arm_system(flavor, n)?;
    let exploration = system.explore(DEFAULT_STATE_CAP)?;
    let home = exploration.index_of(system.seed()).expect("seed is explored");
    let order = HomeOrder::new(&exploration, home);
    let labels: Vec<String> = exploration.states().iter().map(|s| system.format_state(s)).collect();
    let poset = order.join_irreducible_poset(&labels)?;
    Ok(poset.is_isomorphic(&arm_pip(flavor, n)?))
}

/// The state complex of the arm rooted at the horizontal state, with vertices
/// labeled by [`ArmState`] display strings.
pub fn arm_state_complex(flavor: Flavor, n: usize, cap: usize) -> Result<CubeComplex> {
    let system = arm_system(flavor, n)?;
    let exploration = system.explore(cap)?;
    system.state_complex(&exploration)
}
