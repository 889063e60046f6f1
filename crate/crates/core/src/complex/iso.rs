use std::collections::{BTreeMap, HashSet, VecDeque};

use super::CubeComplex;

impl CubeComplex {
    /// Searches for a root-preserving bijection of vertices that maps cubes
    /// onto cubes. Returns the image of each vertex of `self`.
    ///
    /// Vertices are first partitioned by iterated refinement of (distance to
    /// root, per-dimension cube incidence) with neighbor colors; the map is then
    /// extended in breadth-first order, one vertex at a time, checking edges
    /// and every fully mapped cube as it goes.
    pub fn rooted_isomorphism(&self, other: &CubeComplex) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        if n != other.vertex_count() || self.f_vector() != other.f_vector() {
            return None;
        }
        let (ours, theirs) = joint_colors(self, other)?;
        if ours[self.root] != theirs[other.root] {
            return None;
        }

        let order = bfs_order(self);
        let mut position = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let parent: Vec<usize> = order
            .iter()
            .map(|&v| self.neighbors(v).iter().copied().min_by_key(|&u| position[u]).unwrap_or(v))
            .collect();
        let mut high_cubes: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (ci, cube) in self.cubes.iter().enumerate().filter(|(_, c)| c.dim() >= 2) {
            // checked once its last corner (in search order) is placed
            let last = *cube.corners.iter().max_by_key(|&&v| position[v]).unwrap();
            high_cubes[last].push(ci);
        }
        let their_cubes: HashSet<Vec<usize>> = other.cubes.iter().filter(|c| c.dim() >= 2).map(|c| c.key()).collect();

        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[self.root] = other.root;
        used[other.root] = true;
        // candidate lists per search position, with a cursor each
        let mut stack: Vec<(Vec<usize>, usize)> = Vec::new();
        let mut pos = 1;
        let candidates = |pos: usize, map: &[usize], used: &[bool]| -> Vec<usize> {
            let v = order[pos];
            let anchor = map[parent[pos]];
            other.neighbors(anchor).iter().copied().filter(|&w| !used[w] && theirs[w] == ours[v]).collect()
        };
        if n > 1 {
            stack.push((candidates(1, &map, &used), 0));
        }
        while pos < n {
            let v = order[pos];
            let (cands, cursor) = stack.last_mut().expect("frame for current position");
            if map[v] != usize::MAX {
                used[map[v]] = false;
                map[v] = usize::MAX;
            }
            let mut placed = false;
            while *cursor < cands.len() {
                let w = cands[*cursor];
                *cursor += 1;
                if self.fits(other, v, w, &map, &used, &high_cubes[v], &their_cubes) {
                    map[v] = w;
                    used[w] = true;
                    placed = true;
                    break;
                }
            }
            if placed {
                pos += 1;
                if pos < n {
                    stack.push((candidates(pos, &map, &used), 0));
                }
            } else {
                stack.pop();
                if pos == 1 {
                    return None;
                }
                pos -= 1;
            }
        }
        Some(map)
    }

    #[allow(clippy::too_many_arguments)]
    fn fits(
        &self,
        other: &CubeComplex,
        v: usize,
        w: usize,
        map: &[usize],
        used: &[bool],
        cubes_to_check: &[usize],
        their_cubes: &HashSet<Vec<usize>>,
    ) -> bool {
        let mapped_here = self.neighbors(v).iter().filter(|&&u| map[u] != usize::MAX).count();
        let edges_ok = self
            .neighbors(v)
            .iter()
            .filter(|&&u| map[u] != usize::MAX)
            .all(|&u| other.neighbors(w).binary_search(&map[u]).is_ok());
        if !edges_ok {
            return false;
        }
        // no extra edges on the other side between w and already-mapped vertices
        let inverse_hits = other.neighbors(w).iter().filter(|&&x| used[x]).count();
        if inverse_hits != mapped_here {
            return false;
        }
        cubes_to_check.iter().all(|&ci| {
            let mut key: Vec<usize> = self.cubes[ci]
                .corners
                .iter()
                .map(|&c| if c == v { w } else { map[c] })
                .collect();
            key.sort_unstable();
            their_cubes.contains(&key)
        })
    }

    pub fn is_rooted_isomorphic(&self, other: &CubeComplex) -> bool {
        self.rooted_isomorphism(other).is_some()
    }
}

fn bfs_order(c: &CubeComplex) -> Vec<usize> {
    let mut seen = vec![false; c.vertex_count()];
    let mut order = Vec::with_capacity(c.vertex_count());
    let mut queue = VecDeque::from([c.root]);
    seen[c.root] = true;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in c.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    // unreachable vertices cannot be anchored; they make the search fail
    order.extend((0..c.vertex_count()).filter(|&v| !seen[v]));
    order
}

/// Colors both complexes with a shared palette; `None` when color counts differ.
fn joint_colors(a: &CubeComplex, b: &CubeComplex) -> Option<(Vec<usize>, Vec<usize>)> {
    let initial = |c: &CubeComplex| -> Vec<Vec<usize>> {
        let dist = c.distances_from(c.root);
        let dims = c.dimension() + 1;
        let mut sig: Vec<Vec<usize>> = (0..c.vertex_count()).map(|v| {
            let mut s = vec![dist[v]];
            s.resize(dims + 1, 0);
            s
        }).collect();
        for cube in c.cubes() {
            for &v in cube.corners() {
                sig[v][cube.dim()] += 1;
            }
        }
        sig
    };
    let (mut sa, mut sb) = (initial(a), initial(b));
    let mut classes = 0;
    loop {
        let mut palette: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
        for s in sa.iter().chain(sb.iter()) {
            palette.entry(s).or_insert(0);
        }
        for (i, slot) in palette.values_mut().enumerate() {
            *slot = i;
        }
        let ca: Vec<usize> = sa.iter().map(|s| palette[s]).collect();
        let cb: Vec<usize> = sb.iter().map(|s| palette[s]).collect();
        let mut ha = ca.clone();
        let mut hb = cb.clone();
        ha.sort_unstable();
        hb.sort_unstable();
        if ha != hb {
            return None;
        }
        let count = palette.len();
        if count == classes {
            return Some((ca, cb));
        }
        classes = count;
        let refine = |c: &CubeComplex, colors: &[usize]| -> Vec<Vec<usize>> {
            (0..c.vertex_count())
                .map(|v| {
                    let mut s: Vec<usize> = c.neighbors(v).iter().map(|&u| colors[u]).collect();
                    s.sort_unstable();
                    s.insert(0, colors[v]);
                    s
                })
                .collect()
        };
        sa = refine(a, &ca);
        sb = refine(b, &cb);
    }
}
