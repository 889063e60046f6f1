//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::{HashSet, VecDeque};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use cubeplan::arms::{self, Flavor};
use cubeplan::complex::CubeComplex;
use cubeplan::pip::DEFAULT_IDEAL_CAP;
use cubeplan::planner::{makespan, normal_cube_path, Metric, Planner};
use cubeplan::reconfig::DEFAULT_STATE_CAP;
use cubeplan::Pip;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fib(k: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..k {
        (a, b) = (b, a + b);
    }
    a
}

fn state_counts() -> Check {
    let t = Instant::now();
    for n in 1..=12 {
        let got = arms::quadrant_system(n).map_err(|e| e.to_string())?.explore(DEFAULT_STATE_CAP).map_err(|e| e.to_string())?.len();
        ensure(got == 1 << n, || format!("quadrant n={n}: {got} states"))?;
    }
    for n in 1..=18 {
        let got = arms::strip_system(n).map_err(|e| e.to_string())?.explore(DEFAULT_STATE_CAP).map_err(|e| e.to_string())?.len() as u64;
        ensure(got == fib(n + 2), || format!("strip n={n}: {got} states, expected {}", fib(n + 2)))?;
    }
    let elapsed = t.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("2^n for n<=12, F(n+2) for n<=18 (strip n=9: {}), {elapsed:.2?}", fib(11)))
}

fn generating_functions() -> Check {
    for flavor in [Flavor::Quadrant, Flavor::Strip] {
        for n in 1..=12 {
            let series = arms::cube_counts_by_series(flavor, n);
            let paths = arms::cube_counts_by_paths(flavor, n);
            ensure(series == paths, || format!("{flavor} n={n}: series {series:?} vs paths {paths:?}"))?;
            if n <= 9 {
                let complex = arms::arm_state_complex(flavor, n, DEFAULT_STATE_CAP).map_err(|e| e.to_string())?;
                let mut f: Vec<String> = complex.f_vector().iter().map(|c| c.to_string()).collect();
                f.resize(n + 1, "0".into());
                let s: Vec<String> = series.iter().map(|c| c.to_string()).collect();
                ensure(f == s, || format!("{flavor} n={n}: f-vector {f:?} vs series {s:?}"))?;
            }
        }
    }
    Ok("paths = series for n<=12, = f-vector for n<=9, both robots".into())
}

fn arm_isomorphisms() -> Check {
    let t = Instant::now();
    for (flavor, max) in [(Flavor::Quadrant, 8), (Flavor::Strip, 10)] {
        for n in 1..=max {
            let bfs = arms::arm_state_complex(flavor, n, DEFAULT_STATE_CAP).map_err(|e| e.to_string())?;
            let pip = arms::arm_pip(flavor, n).map_err(|e| e.to_string())?;
            let from_pip = CubeComplex::from_pip(&pip, DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())?;
            ensure(bfs.is_rooted_isomorphic(&from_pip), || format!("{flavor} n={n}: not rooted isomorphic"))?;
        }
    }
    let elapsed = t.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("quadrant n<=8, strip n<=10, {elapsed:.2?}"))
}

/// A random PIP on at most `max_elems` elements with at most three minimal
/// inconsistent pairs, or `None` if the draw does not validate.
fn random_pip(rng: &mut ChaCha8Rng, max_elems: usize) -> Option<Pip> {
    let k = rng.gen_range(1..=max_elems);
    let ids: Vec<String> = (0..k).map(|i| format!("e{i}")).collect();
    let density = rng.gen_range(0.0..0.5);
    let mut relations = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if rng.gen_bool(density) {
                relations.push((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    let mut inconsistent = Vec::new();
    if k >= 2 {
        for _ in 0..rng.gen_range(0..=3) {
            let a = rng.gen_range(0..k);
            let b = rng.gen_range(0..k);
            inconsistent.push((ids[a].clone(), ids[b].clone()));
        }
    }
    let pip = Pip::new(ids, relations, inconsistent).ok()?;
    (pip.minimal_inconsistent_pairs().len() <= 3).then_some(pip)
}

fn pip_round_trip() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let (mut accepted, mut drawn, mut with_conflicts) = (0, 0, 0);
    while accepted < 1000 {
        drawn += 1;
        let Some(pip) = random_pip(&mut rng, 10) else { continue };
        accepted += 1;
        if !pip.minimal_inconsistent_pairs().is_empty() {
            with_conflicts += 1;
        }
        let complex = CubeComplex::from_pip(&pip, DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())?;
        let rec = match complex.reconstruct_pip(DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())? {
            Ok(rec) => rec,
            Err(report) => return Err(format!("{}: {report}", pip.to_json())),
        };
        ensure(rec.pip.is_isomorphic(&pip), || format!("not isomorphic: {}", pip.to_json()))?;
    }
    Ok(format!("{accepted} PIPs ({with_conflicts} with inconsistent pairs) from {drawn} draws"))
}

fn rerooting() -> Check {
    let mut corpus = vec![
        arms::qp_pip(3).map_err(|e| e.to_string())?,
        arms::sp_pip(4).map_err(|e| e.to_string())?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    while corpus.len() < 200 {
        if let Some(p) = random_pip(&mut rng, 7) {
            corpus.push(p);
        }
    }
    let mut roots = 0;
    for pip in &corpus {
        let complex = CubeComplex::from_pip(pip, DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())?;
        for (v, a) in pip.consistent_ideals(DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())?.iter().enumerate() {
            roots += 1;
            let rerooted = pip.reroot(a).map_err(|e| e.to_string())?;
            let x_a = CubeComplex::from_pip(&rerooted, DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())?;
            let x_at_a = complex.with_root(v).map_err(|e| e.to_string())?;
            ensure(x_a.is_rooted_isomorphic(&x_at_a), || format!("X(P_a) differs at a={} in {}", pip.format_set(a.members()), pip.to_json()))?;
            // the old root, seen from a, is the ideal a itself
            let back = rerooted.reroot(&rerooted.transport(a, &pip.empty_ideal())).map_err(|e| e.to_string())?;
            ensure(back.is_isomorphic(pip), || format!("double reroot at {} differs", pip.format_set(a.members())))?;
        }
    }
    Ok(format!("{} PIPs, {roots} roots", corpus.len()))
}

fn bfs(adj: &[Vec<usize>], source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Number of shortest paths from `source` in an unweighted graph.
fn shortest_path_counts(adj: &[Vec<usize>], source: usize) -> Vec<u128> {
    let dist = bfs(adj, source);
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by_key(|&v| dist[v]);
    let mut count = vec![0u128; adj.len()];
    count[source] = 1;
    for u in order {
        for &v in &adj[u] {
            if dist[v] == dist[u] + 1 {
                count[v] += count[u];
            }
        }
    }
    count
}

/// Above this many linear extensions, plans are counted but not listed.
const LIST_CAP: usize = 2000;

struct MetricTotals {
    pairs: usize,
    listed: usize,
}

/// Runs criteria 6 and 7 together: they share the pairs and the plans.
fn metric_oracles(time_failures: &mut Vec<String>) -> Result<MetricTotals, String> {
    let mut totals = MetricTotals { pairs: 0, listed: 0 };
    for flavor in [Flavor::Quadrant, Flavor::Strip] {
        for n in 1..=5 {
            let planner = Planner::for_arm(flavor, n).map_err(|e| e.to_string())?;
            let system = planner.system();
            let exploration = system.explore(DEFAULT_STATE_CAP).map_err(|e| e.to_string())?;
            let complex = system.state_complex(&exploration).map_err(|e| e.to_string())?;
            let states = exploration.states();
            let size = states.len();
            let vertex: Vec<usize> = states
                .iter()
                .map(|u| complex.vertex_index(&system.format_state(u)).expect("state is a vertex"))
                .collect();

            // transition graph and cube-move graph, both on exploration indices
            let moves: Vec<Vec<usize>> = (0..size).map(|i| exploration.neighbors(i).map(|(j, _)| j).collect()).collect();
            let to_state: Vec<usize> = {
                let mut inv = vec![0; size];
                for (i, &v) in vertex.iter().enumerate() {
                    inv[v] = i;
                }
                inv
            };
            let mut cube_moves = vec![HashSet::new(); size];
            for cube in complex.cubes() {
                let c = cube.corners();
                let far = c.len() - 1;
                for m in 0..c.len() {
                    cube_moves[to_state[c[m]]].insert(to_state[c[m ^ far]]);
                }
            }
            let cube_moves: Vec<Vec<usize>> = cube_moves.into_iter().map(|s| s.into_iter().collect()).collect();

            for i in 0..size {
                let move_dist = bfs(&moves, i);
                let path_counts = shortest_path_counts(&moves, i);
                let cube_dist = bfs(&cube_moves, i);
                for j in 0..size {
                    totals.pairs += 1;
                    let (from, to) = (&states[i], &states[j]);
                    let tag = || format!("{flavor} n={n} {} -> {}", planner.format_state(from), planner.format_state(to));
                    let (_, rerooted, b) = planner.goal(from, to).map_err(|e| format!("{}: {e}", tag()))?;
                    let depth = rerooted.depth(&b);

                    let moves_plan = planner.plan(from, to, Metric::Moves, false).map_err(|e| e.to_string())?;
                    planner.verify(&moves_plan).map_err(|e| format!("{}: {e}", tag()))?;
                    ensure(moves_plan.length == move_dist[j] && move_dist[j] == b.len(), || {
                        format!("{}: moves {} bfs {} |B| {}", tag(), moves_plan.length, move_dist[j], b.len())
                    })?;

                    let steps_plan = planner.plan(from, to, Metric::Steps, false).map_err(|e| e.to_string())?;
                    planner.verify(&steps_plan).map_err(|e| format!("{}: {e}", tag()))?;
                    ensure(steps_plan.length == cube_dist[j] && cube_dist[j] == depth, || {
                        format!("{}: steps {} cube bfs {} depth {}", tag(), steps_plan.length, cube_dist[j], depth)
                    })?;

                    let extensions: u128 = rerooted.linear_extension_count(&b).to_string().parse().unwrap();
                    ensure(extensions == path_counts[j], || {
                        format!("{}: {extensions} linear extensions, {} shortest paths", tag(), path_counts[j])
                    })?;
                    if extensions as usize <= LIST_CAP {
                        totals.listed += 1;
                        let plans = planner.move_plans(from, to, LIST_CAP).map_err(|e| e.to_string())?;
                        let distinct: HashSet<_> = plans.iter().map(|p| p.steps.clone()).collect();
                        ensure(plans.len() as u128 == extensions && distinct.len() == plans.len(), || {
                            format!("{}: {} plans ({} distinct) for {extensions} extensions", tag(), plans.len(), distinct.len())
                        })?;
                        for p in &plans {
                            planner.verify(p).map_err(|e| format!("{}: {e}", tag()))?;
                        }
                    }

                    let time_plan = planner.plan(from, to, Metric::Time, false).map_err(|e| e.to_string())?;
                    let normal = normal_cube_path(&rerooted, &b).len();
                    if !(makespan(&rerooted, &b) == depth && normal == depth && time_plan.length == depth) {
                        time_failures.push(format!("{}: makespan {} depth {depth} normal {normal}", tag(), makespan(&rerooted, &b)));
                    }
                }
            }
        }
    }
    Ok(totals)
}

fn snakes() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for (m, n) in [(1, 6), (3, 5)] {
        let system = arms::snake_system(1, m, n).map_err(|e| e.to_string())?;
        let exploration = system.explore(DEFAULT_STATE_CAP).map_err(|e| e.to_string())?;
        let complex = system.state_complex(&exploration).map_err(|e| e.to_string())?;
        let report = match complex.reconstruct_pip(DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())? {
            Ok(_) => return Err(format!("U({m},{n}) reconstructed as CAT(0)")),
            Err(report) => report,
        };
        let unfilled = complex.unfilled_four_cycles().len();
        ensure(unfilled > 0 && report.unfilled_four_cycle.is_some(), || format!("U({m},{n}): no unfilled 4-cycle"))?;

        let path = dir.path().join(format!("snake_{m}_{n}.json"));
        std::fs::write(&path, system.to_json()).map_err(|e| e.to_string())?;
        let out = Command::new(env!("CARGO_BIN_EXE_cubeplan"))
            .args(["complex", "check-cat0", "--system", path.to_str().unwrap()])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(4), || format!("U({m},{n}): exit {:?}", out.status.code()))?;
        notes.push(format!("U({m},{n}): {} states, {unfilled} unfilled 4-cycles, exit 4", exploration.len()));
    }
    Ok(notes.join("; "))
}

fn join_irreducibles() -> Check {
    for (flavor, max) in [(Flavor::Quadrant, 5), (Flavor::Strip, 6)] {
        for n in 1..=max {
            let ok = arms::join_irreducibles_check(flavor, n).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{flavor} n={n}"))?;
        }
    }
    Ok("quadrant n<=5, strip n<=6".into())
}

fn main() -> ExitCode {
    let mut results: Vec<(usize, &str, Check)> = vec![
        (1, "state counts", state_counts()),
        (2, "generating functions", generating_functions()),
        (3, "arm complexes are PIP complexes", arm_isomorphisms()),
        (4, "PIP round trip", pip_round_trip()),
        (5, "rerooting", rerooting()),
    ];
    let mut time_failures = Vec::new();
    let metrics = metric_oracles(&mut time_failures);
    let (six, seven) = match metrics {
        Ok(t) => {
            let seven = match time_failures.first() {
                None => Ok(format!("{} pairs", t.pairs)),
                Some(f) => Err(format!("{} failures, first {f}", time_failures.len())),
            };
            (Ok(format!("{} pairs, {} with every plan listed", t.pairs, t.listed)), seven)
        }
        Err(e) => (Err(e), Err("not reached".into())),
    };
    results.push((6, "metric oracles", six));
    results.push((7, "time metric", seven));
    results.push((8, "snakes are not CAT(0)", snakes()));
    results.push((9, "join-irreducibles", join_irreducibles()));

    let mut failed = 0;
    for (k, name, result) in &results {
        match result {
            Ok(detail) => println!("criterion {k} {name}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {k} {name}: FAIL ({detail})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
