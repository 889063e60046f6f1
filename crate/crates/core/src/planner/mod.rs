//! Optimal plans between states of a system whose state complex is CAT(0):
//! reroot at the start state, then walk to the goal ideal.

mod plan;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::pip::{Ideal, Pip};

pub use plan::{Plan, Planner, RobotInfo};

/// What a plan minimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    /// Total number of single moves.
    Moves,
    /// Number of stages of simultaneous commuting moves.
    Steps,
    /// Makespan when a move takes unit time and commuting moves overlap.
    Time,
    /// Length in the Euclidean cube metric. Not supported.
    Euclidean,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Moves => "moves",
            Metric::Steps => "steps",
            Metric::Time => "time",
            Metric::Euclidean => "euclidean",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "moves" => Ok(Metric::Moves),
            "steps" => Ok(Metric::Steps),
            "time" => Ok(Metric::Time),
            "euclidean" => Ok(Metric::Euclidean),
            other => Err(Error::InvalidArgument(format!("unknown metric `{other}`"))),
        }
    }
}

pub(crate) fn euclidean_unsupported() -> Error {
    Error::UnsupportedMetric(
        "euclidean geodesics need the geodesic algorithm for CAT(0) cube complexes, which is not implemented; use moves, steps or time"
            .into(),
    )
}

/// Reroots `pip` at `a` and returns the rerooted PIP with the image of `b`.
pub fn goal_ideal(pip: &Pip, a: &Ideal, b: &Ideal) -> Result<(Pip, Ideal)> {
    if !pip.is_consistent_ideal(b.members()) {
        return Err(Error::NotAnIdeal(pip.format_set(b.members())));
    }
    let rerooted = pip.reroot(a)?;
    let image = rerooted.ideal(a.members().symmetric_difference(b.members()))?;
    Ok((rerooted, image))
}

/// The normal cube path from the empty ideal to `b`: each step adds every
/// minimal element of what is still missing.
pub fn normal_cube_path(pip: &Pip, b: &Ideal) -> Vec<ElementSet> {
    let mut done = pip.empty_set();
    let mut steps = Vec::new();
    while done.len() < b.len() {
        let step = pip.minimal_elements(&b.members().difference(&done));
        done = done.union(&step);
        steps.push(step);
    }
    steps
}

/// The normal cube path from `b` back to the empty ideal, reversed: each
/// step of the walk back removes every maximal element that remains.
pub fn reverse_normal_cube_path(pip: &Pip, b: &Ideal) -> Vec<ElementSet> {
    let mut left = b.members().clone();
    let mut steps = Vec::new();
    while !left.is_empty() {
        let step = pip.maximal_elements(&left);
        left = left.difference(&step);
        steps.push(step);
    }
    steps.reverse();
    steps
}

/// One element at a time, always the minimal missing element with the
/// smallest id.
pub fn shortest_move_plan(pip: &Pip, b: &Ideal) -> Vec<usize> {
    let mut done = pip.empty_set();
    let mut order = Vec::with_capacity(b.len());
    while done.len() < b.len() {
        let next = pip
            .minimal_elements(&b.members().difference(&done))
            .iter()
            .min_by(|&x, &y| pip.id(x).cmp(pip.id(y)))
            .expect("a nonempty finite set has minimal elements");
        done.insert(next);
        order.push(next);
    }
    order
}

/// Minimum makespan: the number of elements in a longest chain of `b`.
pub fn makespan(pip: &Pip, b: &Ideal) -> usize {
    pip.depth(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arms::qp_pip;

    fn chain() -> Pip {
        Pip::new(vec!["p".into(), "q".into()], vec![("p".into(), "q".into())], vec![]).unwrap()
    }

    #[test]
    fn goal_ideal_examples() {
        let p = chain();
        let a = p.ideal_from_ids(&["p"]).unwrap();
        let b = p.ideal_from_ids(&["p", "q"]).unwrap();
        let (pa, img) = goal_ideal(&p, &a, &b).unwrap();
        assert_eq!(pa.format_set(img.members()), "{q}");
        let (_, same) = goal_ideal(&p, &a, &a).unwrap();
        assert!(same.is_empty());
        let (_, fromempty) = goal_ideal(&p, &p.empty_ideal(), &b).unwrap();
        assert_eq!(fromempty, b);
    }

    #[test]
    fn paths_on_the_three_chain() {
        let p = qp_pip(2).unwrap();
        let full = p.full_ideal().unwrap();
        let normal = normal_cube_path(&p, &full);
        assert_eq!(normal.len(), 3);
        assert!(normal.iter().all(|s| s.len() == 1));
        assert_eq!(shortest_move_plan(&p, &full).len(), 3);
        assert_eq!(makespan(&p, &full), 3);
        assert!(normal_cube_path(&p, &p.empty_ideal()).is_empty());
    }

    #[test]
    fn normal_and_reverse_differ_in_general() {
        let p = Pip::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![("a".into(), "b".into())],
            vec![],
        )
        .unwrap();
        let full = p.full_ideal().unwrap();
        let fwd: Vec<String> = normal_cube_path(&p, &full).iter().map(|s| p.format_set(s)).collect();
        let back: Vec<String> = reverse_normal_cube_path(&p, &full).iter().map(|s| p.format_set(s)).collect();
        assert_eq!(fwd, vec!["{a,c}", "{b}"]);
        assert_eq!(back, vec!["{a}", "{b,c}"]);
    }

    #[test]
    fn metric_names() {
        for m in [Metric::Moves, Metric::Steps, Metric::Time, Metric::Euclidean] {
            assert_eq!(m.name().parse::<Metric>().unwrap(), m);
        }
        assert!("fast".parse::<Metric>().is_err());
    }
}
