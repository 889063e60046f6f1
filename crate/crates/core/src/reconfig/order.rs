use std::collections::VecDeque;

use super::Exploration;
use crate::bitset::ElementSet;
use crate::error::Result;
use crate::pip::Pip;

/// The partial order on states induced by a home state: `p <= q` when `p`
/// lies on some shortest path from home to `q`.
#[derive(Debug, Clone)]
pub struct HomeOrder {
    home: usize,
    dist: Vec<usize>,
    down: Vec<ElementSet>,
    covers: Vec<Vec<usize>>,
}

impl HomeOrder {
    pub fn new(exploration: &Exploration, home: usize) -> Self {
        let n = exploration.len();
        let dist = exploration.distances_from(home);
        let mut order: Vec<usize> = (0..n).filter(|&v| dist[v] != usize::MAX).collect();
        order.sort_by_key(|&v| dist[v]);
        let mut down = vec![ElementSet::empty(n); n];
        let mut covers = vec![Vec::new(); n];
        for &q in &order {
            let mut set = ElementSet::empty(n);
            set.insert(q);
            for (p, _) in exploration.neighbors(q) {
                if dist[p] + 1 == dist[q] && !covers[q].contains(&p) {
                    covers[q].push(p);
                    set = set.union(&down[p]);
                }
            }
            covers[q].sort_unstable();
            down[q] = set;
        }
        HomeOrder { home, dist, down, covers }
    }

    pub fn home(&self) -> usize {
        self.home
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    pub fn rank(&self, p: usize) -> usize {
        self.dist[p]
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.down[q].contains(p)
    }

    pub fn lower_covers(&self, q: usize) -> &[usize] {
        &self.covers[q]
    }

    /// Least common upper bound, if one exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len()).filter(|&q| self.leq(a, q) && self.leq(b, q)).collect();
        upper.iter().copied().find(|&j| upper.iter().all(|&q| self.leq(j, q)))
    }

    /// Greatest common lower bound, if one exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower = self.down[a].intersection(&self.down[b]);
        let found = lower.iter().find(|&m| lower.is_subset(&self.down[m]));
        found
    }

    pub fn is_lattice(&self) -> bool {
        (0..self.len()).all(|a| (a..self.len()).all(|b| self.join(a, b).is_some() && self.meet(a, b).is_some()))
    }

    /// States with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&q| self.covers[q].len() == 1).collect()
    }

    /// The join-irreducibles as a poset, named by `labels`.
    pub fn join_irreducible_poset(&self, labels: &[String]) -> Result<Pip> {
        let ji = self.join_irreducibles();
        let ids = ji.iter().map(|&q| labels[q].clone()).collect();
        let mut relations = Vec::new();
        for &p in &ji {
            for &q in &ji {
                if p != q && self.leq(p, q) {
                    relations.push((labels[p].clone(), labels[q].clone()));
                }
            }
        }
        Pip::new(ids, relations, vec![])
    }

    /// Breadth-first check that every state reachable from home is ranked.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([self.home]);
        seen[self.home] = true;
        while let Some(q) = queue.pop_front() {
            for (r, covers) in self.covers.iter().enumerate() {
                if !seen[r] && covers.contains(&q) {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Generator, RState, ReconfigSystem, DEFAULT_STATE_CAP};
    use super::*;

    fn switches(k: usize) -> ReconfigSystem {
        let gens = (0..k)
            .map(|v| Generator::new(format!("g{v}"), vec![v], vec![v], vec![0], vec![1], [format!("u{v}"), format!("d{v}")]).unwrap())
            .collect();
        ReconfigSystem::new(
            (0..k).map(|v| v.to_string()).collect(),
            vec![],
            vec!["0".into(), "1".into()],
            gens,
            RState::new(vec![0; k]),
        )
        .unwrap()
    }

    #[test]
    fn boolean_lattice_from_switches() {
        let sys = switches(3);
        let ex = sys.explore(DEFAULT_STATE_CAP).unwrap();
        let order = HomeOrder::new(&ex, 0);
        assert!(order.is_lattice());
        assert!(order.is_connected());
        assert_eq!(order.join_irreducibles().len(), 3);
        let labels: Vec<String> = ex.states().iter().map(|s| sys.format_state(s)).collect();
        let poset = order.join_irreducible_poset(&labels).unwrap();
        assert_eq!(poset.len(), 3);
        assert!(poset.covers().is_empty());
        let top = ex.index_of(&RState::new(vec![1, 1, 1])).unwrap();
        assert_eq!(order.rank(top), 3);
        let a = ex.index_of(&RState::new(vec![1, 0, 0])).unwrap();
        let b = ex.index_of(&RState::new(vec![0, 1, 0])).unwrap();
        assert_eq!(order.join(a, b), ex.index_of(&RState::new(vec![1, 1, 0])));
        assert_eq!(order.meet(a, b), Some(0));
    }
}
