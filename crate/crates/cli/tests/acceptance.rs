//! Acceptance criteria, run in order by one test so timings are not disturbed by
//! sibling tests. Each criterion prints one PASS/FAIL line.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use twoline::frontier::{decide_parallel_with, SweepOptions};
use twoline::io::{LayoutKind, SplitMix64};
use twoline::optimizer::{candidate_radii_parallel, decide, initial_bracket, minimize_radius};
use twoline::oracle::{
    brute_force_min_count, brute_force_min_piercing_two_lines, brute_force_perpendicular, grid_search_radius,
};
use twoline::perpendicular::{solve_center_square, ActiveSet};
use twoline::{verify_cover, Instance, Interval, LineLayout, WeightedPoint};
use twoline_bench::{loglog_slope, run_scaling};

const PARALLEL_CASES: usize = 1000;
const PARALLEL_BUDGET_S: f64 = 60.0;
const AXIS_CASES_PER_LAYOUT: usize = 500;
const MONOTONE_INSTANCES: usize = 200;
const MONOTONE_PAIRS: usize = 20;
const TREE_OPS: usize = 100_000;
const TREE_INTERVALS: usize = 1000;
const OPT_INSTANCES: usize = 100;
const GRID_RESOLUTION: f64 = 1e-4;
const OPT_REL_TOL: f64 = 1e-9;
const SQUARE_POINTS: usize = 10_000;
const SCALING_EXPONENTS: std::ops::RangeInclusive<u32> = 13..=17;
const MAX_SLOPE: f64 = 1.25;
const SCALING_BUDGET_S: f64 = 120.0;

const AXIS_LAYOUTS: [LineLayout; 3] = [LineLayout::Perpendicular, LineLayout::Corner, LineLayout::TJunction];

fn report(id: u32, name: &str, ok: bool, detail: String) -> bool {
    println!("criterion {id:>2} {:<4} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn coord(rng: &mut SplitMix64, lo: f64, hi: f64) -> f64 {
    if rng.below(4) == 0 {
        (rng.uniform(lo, hi) * 2.0).round() / 2.0
    } else {
        rng.uniform(lo, hi)
    }
}

/// Weighted parallel instance on `y = 2` / `y = 0`, with a radius near a tangency or touching radius.
fn parallel_case(rng: &mut SplitMix64) -> (Instance, f64) {
    let n = 1 + rng.below(10) as usize;
    let k = 1 + rng.below(5) as usize;
    let pts: Vec<(f64, f64, f64)> =
        (0..n).map(|_| (coord(rng, 0.0, 8.0), coord(rng, -1.0, 3.0), rng.uniform(0.5, 4.0))).collect();
    let inst = Instance::weighted(&pts, LineLayout::Parallel { y1: 2.0, y2: 0.0 }, k);
    let cands = candidate_radii_parallel(&inst);
    let base = cands[1 + rng.below(cands.len() as u64 - 1) as usize];
    let r = if rng.below(3) == 0 { base } else { base * rng.uniform(0.9, 1.1) };
    (inst, r)
}

fn axes_case(rng: &mut SplitMix64, layout: LineLayout) -> (Instance, f64) {
    let (xr, yr) = match layout {
        LineLayout::Corner => ((-1.0, 6.0), (-1.0, 6.0)),
        LineLayout::TJunction => ((-6.0, 6.0), (-6.0, 1.0)),
        _ => ((-6.0, 6.0), (-6.0, 6.0)),
    };
    let n = 1 + rng.below(8) as usize;
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|_| match rng.below(3) {
            0 => (coord(rng, xr.0, xr.1), coord(rng, -1.5, 1.5)),
            1 => (coord(rng, -1.5, 1.5), coord(rng, yr.0, yr.1)),
            _ => (coord(rng, -2.0, 2.0), coord(rng, -2.0, 2.0)),
        })
        .collect();
    let r = rng.uniform(0.3, 2.5);
    let k = match brute_force_min_count(&Instance::unweighted(&pts, layout, 1), r).unwrap() {
        Some(m) => (m as i64 + rng.below(3) as i64 - 1).clamp(1, 6) as usize,
        None => 1 + rng.below(6) as usize,
    };
    (Instance::unweighted(&pts, layout, k), r)
}

fn any_case(rng: &mut SplitMix64, i: usize) -> (Instance, f64) {
    match i % 4 {
        0 => parallel_case(rng),
        j => axes_case(rng, AXIS_LAYOUTS[j - 1]),
    }
}

struct Soundness {
    checked: usize,
    bad: usize,
}

impl Soundness {
    fn check(&mut self, inst: &Instance, r: f64, res: &twoline::FeasibilityResult) {
        if res.feasible {
            self.checked += 1;
            let ok =
                res.solution.as_ref().is_some_and(|s| s.centers.len() <= inst.k && verify_cover(inst, r, &s.centers));
            self.bad += usize::from(!ok);
        }
    }
}

fn criteria_1_2(sound: &mut Soundness) -> (bool, bool) {
    let mut rng = SplitMix64::new(1);
    let start = Instant::now();
    let (mut mismatches, mut violations) = (0, 0);
    for _ in 0..PARALLEL_CASES {
        let (inst, r) = parallel_case(&mut rng);
        let (res, stats) = decide_parallel_with(&inst, r, SweepOptions { check_invariants: true });
        let expect = brute_force_min_piercing_two_lines(&inst.points, (2.0, 0.0), r, inst.points.len()).unwrap();
        mismatches += usize::from(res.min_count != expect);
        violations += stats.invariant_violations.len();
        sound.check(&inst, r, &res);
    }
    let secs = start.elapsed().as_secs_f64();
    let one = report(
        1,
        "parallel decider equals oracle",
        mismatches == 0 && secs < PARALLEL_BUDGET_S,
        format!("{PARALLEL_CASES} instances, {mismatches} mismatches, {secs:.2} s (limit {PARALLEL_BUDGET_S} s)"),
    );
    let two = report(
        2,
        "frontier invariants after every point",
        violations == 0,
        format!("{PARALLEL_CASES} sweeps checked, {violations} violations"),
    );
    (one, two)
}

fn criterion_5(sound: &mut Soundness) -> bool {
    let mut mismatches = Vec::new();
    for (seed, layout) in AXIS_LAYOUTS.iter().enumerate() {
        let mut rng = SplitMix64::new(50 + seed as u64);
        let mut bad = 0;
        for _ in 0..AXIS_CASES_PER_LAYOUT {
            let (inst, r) = axes_case(&mut rng, *layout);
            let res = decide(&inst, r);
            bad += usize::from(res.feasible != brute_force_perpendicular(&inst.points, r, inst.k, *layout).unwrap());
            sound.check(&inst, r, &res);
        }
        mismatches.push(format!("{layout:?} {bad}"));
    }
    let ok = mismatches.iter().all(|m| m.ends_with(" 0"));
    report(
        5,
        "axis deciders equal oracle",
        ok,
        format!("{AXIS_CASES_PER_LAYOUT} instances per layout, mismatches: {}", mismatches.join(", ")),
    )
}

fn criterion_4(sound: &mut Soundness) -> bool {
    let mut rng = SplitMix64::new(4);
    let mut violations = 0;
    for i in 0..MONOTONE_INSTANCES {
        let (inst, r0) = any_case(&mut rng, i);
        for _ in 0..MONOTONE_PAIRS {
            let r1 = r0 * rng.uniform(0.5, 1.5);
            let r2 = r1 * rng.uniform(1.0, 1.3);
            let (a, b) = (decide(&inst, r1), decide(&inst, r2));
            if r2 > r1 && a.feasible && !b.feasible {
                violations += 1;
            }
            sound.check(&inst, r1, &a);
            sound.check(&inst, r2, &b);
        }
    }
    report(
        4,
        "feasibility monotone in r",
        violations == 0,
        format!("{MONOTONE_INSTANCES} instances x {MONOTONE_PAIRS} pairs, {violations} violations"),
    )
}

fn criterion_6() -> bool {
    let mut rng = SplitMix64::new(6);
    let family: Vec<Interval> = (0..TREE_INTERVALS)
        .map(|_| {
            let a = (rng.uniform(0.0, 100.0) * 4.0).round() / 4.0;
            Interval::new(a, a + (rng.uniform(0.0, 10.0) * 4.0).round() / 4.0)
        })
        .collect();
    let mut set = ActiveSet::new(&family);
    let mut active = vec![false; TREE_INTERVALS];
    let mut bad = 0;
    for _ in 0..TREE_OPS {
        let i = rng.below(TREE_INTERVALS as u64) as usize;
        if active[i] {
            set.deactivate(i);
        } else {
            set.activate(i);
        }
        active[i] = !active[i];
        let on: Vec<&Interval> = family.iter().zip(&active).filter(|(_, &a)| a).map(|(iv, _)| iv).collect();
        let ql = on.iter().map(|iv| iv.hi).reduce(f64::min);
        let qr = on.iter().map(|iv| iv.lo).reduce(f64::max);
        bad += usize::from(set.tree.query_ql() != ql || set.tree.query_qr() != qr);
        let (a, b) = (rng.uniform(-5.0, 105.0), rng.uniform(-5.0, 115.0));
        let naive = on.iter().any(|iv| a < iv.lo && iv.hi < b);
        bad += usize::from(set.heap.contained_interval_exists(a, b) != naive);
    }
    report(
        6,
        "tree and heap match naive recomputation",
        bad == 0,
        format!("{TREE_OPS} operations on {TREE_INTERVALS} intervals, {bad} mismatches"),
    )
}

fn criterion_7() -> bool {
    let mut rng = SplitMix64::new(7);
    let (mut off, mut witness) = (0, 0);
    let mut worst: f64 = 0.0;
    for i in 0..OPT_INSTANCES {
        let (inst, _) = any_case(&mut rng, i);
        let (r_hat, _) = minimize_radius(|r| decide(&inst, r).feasible, initial_bracket(&inst), OPT_REL_TOL);
        let grid = grid_search_radius(&inst, GRID_RESOLUTION).unwrap();
        let gap = (r_hat - grid).abs();
        worst = worst.max(gap);
        off += usize::from(gap > GRID_RESOLUTION + OPT_REL_TOL * r_hat);
        let tight = r_hat <= 10.0 * OPT_REL_TOL || !decide(&inst, 0.999 * r_hat).feasible;
        witness += usize::from(!decide(&inst, r_hat).feasible || !tight);
    }
    report(
        7,
        "optimizer agrees with grid oracle",
        off == 0 && witness == 0,
        format!("{OPT_INSTANCES} instances, {off} outside tolerance, {witness} bracket failures, max gap {worst:.2e}"),
    )
}

fn criterion_8() -> bool {
    let mut rng = SplitMix64::new(8);
    let r = 1.0;
    let pts: Vec<WeightedPoint> =
        (0..SQUARE_POINTS).map(|i| WeightedPoint::unit(i, rng.uniform(-r, r), rng.uniform(-r, r))).collect();
    let (ok, centers) = solve_center_square(&pts, &[], 4, r);
    let inst = Instance { points: pts, layout: LineLayout::Perpendicular, k: 4 };
    let verified = ok && verify_cover(&inst, r, &centers);
    report(
        8,
        "four centers cover the center square",
        verified,
        format!("{SQUARE_POINTS} points, {} centers, verified {verified}", centers.len()),
    )
}

fn criterion_9() -> bool {
    let start = Instant::now();
    let sizes: Vec<usize> = SCALING_EXPONENTS.map(|e| 1usize << e).collect();
    // One warm-up pass so allocator and cache state do not land on the smallest size.
    run_scaling(&[LayoutKind::Parallel], &sizes[..1], 42, 1);
    let rows = run_scaling(&[LayoutKind::Parallel], &sizes, 42, 3);
    let secs = start.elapsed().as_secs_f64();
    let slope = loglog_slope(&rows.iter().map(|r| (r.n, r.mean_ms)).collect::<Vec<_>>());
    let monotone = rows.windows(2).all(|w| w[1].mean_ms >= w[0].mean_ms);
    let means: Vec<String> = rows.iter().map(|r| format!("{:.1}", r.mean_ms)).collect();
    report(
        9,
        "parallel decider scaling",
        slope <= MAX_SLOPE && secs < SCALING_BUDGET_S && monotone,
        format!(
            "slope {slope:.3} (limit {MAX_SLOPE}), means ms [{}], nondecreasing {monotone}, {secs:.1} s",
            means.join(", ")
        ),
    )
}

fn run_cli(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_twoline")).args(args).output().expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn criterion_10(dir: &Path) -> bool {
    let mut differing = Vec::new();
    let mut runs = 0;
    for kind in ["parallel", "perpendicular", "corner", "t_junction"] {
        let gen = ["gen", "--n", "40", "--seed", "42", "--kind", kind, "--k", "3"];
        let (a, _) = run_cli(&gen);
        let (b, _) = run_cli(&gen);
        runs += 1;
        if a != b {
            differing.push(format!("gen {kind}"));
        }
        let inst = dir.join(format!("{kind}.json"));
        std::fs::write(&inst, &a).unwrap();
        let inst = inst.to_str().unwrap();
        let commands: [Vec<&str>; 3] = [
            vec!["--no-timing", "decide", "--instance", inst, "--radius", "1.1", "--json"],
            vec!["--no-timing", "solve", "--instance", inst],
            vec!["--no-timing", "solve", "--instance", inst, "--tol", "1e-6"],
        ];
        for cmd in &commands {
            runs += 1;
            if run_cli(cmd) != run_cli(cmd) {
                differing.push(format!("{} {kind}", cmd[1]));
            }
        }
    }
    report(10, "byte-identical reruns", differing.is_empty(), format!("{runs} command pairs, differing: {differing:?}"))
}

#[test]
fn acceptance_criteria() {
    let dir = std::env::temp_dir().join(format!("twoline-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut sound = Soundness { checked: 0, bad: 0 };
    let (c1, c2) = criteria_1_2(&mut sound);
    let c5 = criterion_5(&mut sound);
    let c4 = criterion_4(&mut sound);
    let c3 = report(
        3,
        "witness centers verify",
        sound.bad == 0 && sound.checked > 0,
        format!("{} feasible results checked, {} failed", sound.checked, sound.bad),
    );
    let results = [c1, c2, c3, c4, c5, criterion_6(), criterion_7(), criterion_8(), criterion_9(), criterion_10(&dir)];
    std::fs::remove_dir_all(&dir).ok();
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, &ok)| !ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
