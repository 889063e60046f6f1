use std::fmt;

use super::{ArmState, Flavor};
use crate::error::{Error, Result};

/// One symbol of a partial path. A `Square` covers two links whose order is
/// left open; a `Half` is a final link whose direction is left open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    E,
    N,
    Square,
    Half,
}

impl Symbol {
    fn links(self) -> usize {
        if self == Symbol::Square {
            2
        } else {
            1
        }
    }
}

/// A path with unresolved unit squares and at most one final half square;
/// it stands for the cube spanned by all its resolutions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialPath {
    flavor: Flavor,
    symbols: Vec<Symbol>,
}

impl PartialPath {
    pub fn new(flavor: Flavor, symbols: Vec<Symbol>) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidState(format!("partial path: {msg}")));
        if let Some(pos) = symbols.iter().position(|&s| s == Symbol::Half) {
            if pos + 1 != symbols.len() {
                return bad("half square must be the last symbol");
            }
        }
        if flavor == Flavor::Strip {
            for w in symbols.windows(2) {
                if matches!(w[0], Symbol::N | Symbol::Square) && w[1] != Symbol::E {
                    return bad("a vertical link or square must be followed by a horizontal link");
                }
            }
        }
        Ok(PartialPath { flavor, symbols })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Number of links of the arm.
    pub fn len(&self) -> usize {
        self.symbols.iter().map(|s| s.links()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Dimension of the cube: squares plus half squares.
    pub fn dimension(&self) -> usize {
        self.symbols.iter().filter(|s| matches!(s, Symbol::Square | Symbol::Half)).count()
    }

    /// The `2^d` states obtained by resolving each square as `NE` or `EN`
    /// and the half square as `N` or `E`. Index bit `j` set means the `j`-th
    /// open symbol takes its upper resolution (`NE`, resp. `N`).
    pub fn corners(&self) -> Vec<ArmState> {
        let open: Vec<usize> = (0..self.symbols.len())
            .filter(|&i| matches!(self.symbols[i], Symbol::Square | Symbol::Half))
            .collect();
        (0..1usize << open.len())
            .map(|mask| {
                let mut word = String::new();
                for (i, s) in self.symbols.iter().enumerate() {
                    let upper = open.iter().position(|&o| o == i).is_some_and(|j| mask >> j & 1 == 1);
                    word.push_str(match (s, upper) {
                        (Symbol::E, _) => "E",
                        (Symbol::N, _) => "N",
                        (Symbol::Square, true) => "NE",
                        (Symbol::Square, false) => "EN",
                        (Symbol::Half, true) => "N",
                        (Symbol::Half, false) => "E",
                    });
                }
                ArmState::from_ne_word(self.flavor, &word).expect("resolutions of a valid partial path are states")
            })
            .collect()
    }
}

impl fmt::Display for PartialPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .symbols
            .iter()
            .map(|s| match s {
                Symbol::E => "E",
                Symbol::N => "N",
                Symbol::Square => "Sq",
                Symbol::Half => "Half",
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// All partial paths of `n` links, in lexicographic symbol order.
pub fn enumerate_partial_paths(n: usize, flavor: Flavor) -> Vec<PartialPath> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend(n, flavor, &mut current, &mut out);
    out
}

fn extend(remaining: usize, flavor: Flavor, current: &mut Vec<Symbol>, out: &mut Vec<PartialPath>) {
    if remaining == 0 {
        out.push(PartialPath { flavor, symbols: current.clone() });
        return;
    }
    let needs_e = flavor == Flavor::Strip && matches!(current.last(), Some(Symbol::N | Symbol::Square));
    for s in [Symbol::E, Symbol::N, Symbol::Square, Symbol::Half] {
        if needs_e && s != Symbol::E {
            continue;
        }
        if s.links() > remaining || (s == Symbol::Half && remaining != 1) {
            continue;
        }
        current.push(s);
        extend(remaining - s.links(), flavor, current, out);
        current.pop();
    }
}

/// The strip arm as drawn: vertical links alternate up (`N`) and down (`S`).
pub fn strip_word(state: &ArmState) -> String {
    let mut up = true;
    (1..=state.n)
        .map(|i| {
            if state.verticals.contains(&i) {
                let c = if up { 'N' } else { 'S' };
                up = !up;
                c
            } else {
                'E'
            }
        })
        .collect()
}

/// Unfolds a strip arm into the pyramid: at every vertical link after the
/// first, the rest of the arm is reflected so that it keeps climbing. The
/// result is an `N`/`E` path with no two consecutive `N` links.
pub fn unfold(state: &ArmState) -> String {
    let mut reflected = false;
    let mut seen_vertical = false;
    strip_word(state)
        .chars()
        .map(|c| match c {
            'E' => 'E',
            _ => {
                let mut up = (c == 'N') != reflected;
                if seen_vertical && !up {
                    reflected = !reflected;
                    up = true;
                }
                seen_vertical = true;
                debug_assert!(up);
                'N'
            }
        })
        .collect()
}

/// Inverse of [`unfold`].
pub fn refold(path: &str) -> Result<ArmState> {
    if path.contains("NN") {
        return Err(Error::InvalidState("pyramid path has two consecutive vertical links".into()));
    }
    ArmState::from_ne_word(Flavor::Strip, path)
}
