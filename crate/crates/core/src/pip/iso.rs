use super::Pip;

impl Pip {
    /// Finds a bijection `self -> other` preserving `<` and inconsistency in
    /// both directions. Returns the image of each element index.
    pub fn isomorphism(&self, other: &Pip) -> Option<Vec<usize>> {
        if self.len() != other.len() {
            return None;
        }
        let sig = |p: &Pip, e: usize| {
            (p.below[e].len(), p.above[e].len(), p.conflicts[e].len(), p.covers_below_count(e))
        };
        let mut ours: Vec<_> = (0..self.len()).map(|e| sig(self, e)).collect();
        let mut theirs: Vec<_> = (0..other.len()).map(|e| sig(other, e)).collect();
        let (sig_self, sig_other) = (ours.clone(), theirs.clone());
        ours.sort();
        theirs.sort();
        if ours != theirs {
            return None;
        }
        let mut map = vec![usize::MAX; self.len()];
        let mut used = vec![false; other.len()];
        let order = self.topo.clone();
        if self.extend_iso(other, &order, 0, &sig_self, &sig_other, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_iso<S: PartialEq>(
        &self,
        other: &Pip,
        order: &[usize],
        pos: usize,
        sig_self: &[S],
        sig_other: &[S],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&e) = order.get(pos) else {
            return true;
        };
        for f in 0..other.len() {
            if used[f] || sig_self[e] != sig_other[f] {
                continue;
            }
            let fits = order[..pos].iter().all(|&d| {
                let g = map[d];
                self.lt(d, e) == other.lt(g, f)
                    && self.lt(e, d) == other.lt(f, g)
                    && self.inconsistent(d, e) == other.inconsistent(g, f)
            });
            if !fits {
                continue;
            }
            map[e] = f;
            used[f] = true;
            if self.extend_iso(other, order, pos + 1, sig_self, sig_other, map, used) {
                return true;
            }
            used[f] = false;
            map[e] = usize::MAX;
        }
        false
    }

    fn covers_below_count(&self, b: usize) -> usize {
        self.below[b].iter().filter(|&a| self.above[a].is_disjoint(&self.below[b])).count()
    }

    pub fn is_isomorphic(&self, other: &Pip) -> bool {
        self.isomorphism(other).is_some()
    }
}

#[cfg(test)]
mod tests {
    use crate::pip::tests::{pairs, s};
    use crate::pip::Pip;

    #[test]
    fn relabeled_pips_are_isomorphic() {
        let a = Pip::new(s(&["a", "b", "c"]), pairs(&[("a", "b")]), pairs(&[("b", "c")])).unwrap();
        let b = Pip::new(s(&["x", "y", "z"]), pairs(&[("z", "x")]), pairs(&[("x", "y")])).unwrap();
        let map = a.isomorphism(&b).unwrap();
        assert_eq!(b.id(map[0]), "z");
        assert_eq!(b.id(map[2]), "y");
    }

    #[test]
    fn order_and_inconsistency_are_distinguished() {
        let chain = Pip::new(s(&["a", "b"]), pairs(&[("a", "b")]), vec![]).unwrap();
        let anti = Pip::new(s(&["a", "b"]), vec![], pairs(&[("a", "b")])).unwrap();
        let free = Pip::new(s(&["a", "b"]), vec![], vec![]).unwrap();
        assert!(!chain.is_isomorphic(&anti));
        assert!(!anti.is_isomorphic(&free));
        assert!(free.is_isomorphic(&free));
    }
}
