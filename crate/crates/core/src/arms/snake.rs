use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::reconfig::{Generator, RState, ReconfigSystem};

type Point = (usize, usize);

/// Unit segments of the grid with `m` rows and `n` columns of cells.
struct Grid {
    m: usize,
    n: usize,
    segments: Vec<(Point, Point)>,
}

impl Grid {
    fn new(m: usize, n: usize) -> Self {
        let mut segments = Vec::new();
        for y in 0..=m {
            for x in 0..n {
                segments.push(((x, y), (x + 1, y)));
            }
        }
        for x in 0..=n {
            for y in 0..m {
                segments.push(((x, y), (x, y + 1)));
            }
        }
        Grid { m, n, segments }
    }

    fn name(&self, s: usize) -> String {
        let ((x0, y0), (x1, y1)) = self.segments[s];
        format!("{x0},{y0}-{x1},{y1}")
    }

    fn find(&self, a: Point, b: Point) -> Option<usize> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.segments.iter().position(|&s| s == key)
    }

    fn at(&self, p: Point) -> Vec<usize> {
        (0..self.segments.len()).filter(|&s| self.segments[s].0 == p || self.segments[s].1 == p).collect()
    }

    fn other_end(&self, s: usize, p: Point) -> Point {
        let (a, b) = self.segments[s];
        if a == p {
            b
        } else {
            a
        }
    }

    fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..=self.m).flat_map(move |y| (0..=self.n).map(move |x| (x, y)))
    }
}

fn perpendicular(g: &Grid, a: usize, b: usize) -> bool {
    let horizontal = |s: usize| g.segments[s].0 .1 == g.segments[s].1 .1;
    horizontal(a) != horizontal(b)
}

/// Builds a generator whose support is `support`, with `on0` occupied in
/// local state 0 and `on1` occupied in local state 1, everything else empty.
fn occupancy_move(
    name: String,
    support: BTreeSet<usize>,
    on0: &[usize],
    on1: &[usize],
    moves: [String; 2],
) -> Result<Generator> {
    let support: Vec<usize> = support.into_iter().collect();
    let local = |on: &[usize]| support.iter().map(|s| on.contains(s) as u8).collect::<Vec<u8>>();
    let trace: Vec<usize> = support.iter().copied().filter(|s| on0.contains(s) != on1.contains(s)).collect();
    Generator::new(name, support.clone(), trace, local(on0), local(on1), moves)
}

/// The unpinned snake of `l` unit links in the `m x n` grid of cells.
///
/// Base-graph vertices are grid segments (symbol `1` when the snake uses
/// it). An end flip rotates an end link about its inner endpoint; a corner
/// switch moves a corner of the snake to the opposite corner of its cell.
/// Self-avoidance is built into the supports: every segment touching a point
/// the move visits is read, and all but the snake's own links must be empty.
pub fn snake_system(l: usize, m: usize, n: usize) -> Result<ReconfigSystem> {
    if l == 0 || m == 0 || n == 0 {
        return Err(Error::InvalidArgument("snake length and grid size must be at least 1".into()));
    }
    if l > n {
        return Err(Error::InvalidArgument(format!("a snake of length {l} does not fit along {n} columns")));
    }
    let g = Grid::new(m, n);
    let mut gens = Vec::new();
    for p in g.points() {
        let here = g.at(p);
        for (i, &s1) in here.iter().enumerate() {
            for &s2 in &here[i + 1..] {
                if !perpendicular(&g, s1, s2) {
                    continue;
                }
                let (q, r) = (g.other_end(s1, p), g.other_end(s2, p));
                let support: BTreeSet<usize> = here.iter().chain(&g.at(q)).chain(&g.at(r)).copied().collect();
                let label = format!("flip({})", g.name(s1));
                let moves = [format!("flip:{}>{}", g.name(s1), g.name(s2)), format!("flip:{}>{}", g.name(s2), g.name(s1))];
                if l == 1 {
                    gens.push(occupancy_move(label, support, &[s1], &[s2], moves)?);
                    continue;
                }
                for &t in &here {
                    if t == s1 || t == s2 {
                        continue;
                    }
                    let label = format!("flip({}|{})", g.name(s1), g.name(t));
                    let moves = [
                        format!("flip:{}>{}|{}", g.name(s1), g.name(s2), g.name(t)),
                        format!("flip:{}>{}|{}", g.name(s2), g.name(s1), g.name(t)),
                    ];
                    gens.push(occupancy_move(label, support.clone(), &[s1, t], &[s2, t], moves)?);
                }
            }
        }
    }
    if l >= 2 {
        for y in 0..m {
            for x in 0..n {
                let corners = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)];
                for k in 0..2 {
                    let (b, a, b2, c) = (corners[k], corners[k + 1], corners[k + 2], corners[(k + 3) % 4]);
                    let seg = |u, v| g.find(u, v).expect("cell sides are segments");
                    let on0 = [seg(a, b), seg(b, c)];
                    let on1 = [seg(a, b2), seg(b2, c)];
                    let support: BTreeSet<usize> = g.at(b).into_iter().chain(g.at(b2)).collect();
                    let moves = [
                        format!("corner:{},{}>{},{}", b.0, b.1, b2.0, b2.1),
                        format!("corner:{},{}>{},{}", b2.0, b2.1, b.0, b.1),
                    ];
                    gens.push(occupancy_move(format!("corner({},{}|{},{})", b.0, b.1, b2.0, b2.1), support, &on0, &on1, moves)?);
                }
            }
        }
    }
    let mut seed = vec![0u8; g.segments.len()];
    for x in 0..l {
        seed[g.find((x, 0), (x + 1, 0)).expect("bottom row segment")] = 1;
    }
    let mut edges = Vec::new();
    for p in g.points() {
        let here = g.at(p);
        for (i, &a) in here.iter().enumerate() {
            for &b in &here[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    ReconfigSystem::new(
        (0..g.segments.len()).map(|s| g.name(s)).collect(),
        edges,
        vec!["0".into(), "1".into()],
        gens,
        RState::new(seed),
    )
}
