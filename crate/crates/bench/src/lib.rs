//! Wall-clock scaling runs for the deciders, with CSV output and a log-log fit.

use std::fmt::Write as _;
use std::time::Instant;

use twoline::io::{generate, GenSpec, LayoutKind};
use twoline::{decide, Instance};

pub const CSV_HEADER: &str = "n,algorithm,mean_ms,stddev_ms";

pub const ALL_KINDS: [LayoutKind; 4] =
    [LayoutKind::Parallel, LayoutKind::Perpendicular, LayoutKind::Corner, LayoutKind::TJunction];

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub algorithm: LayoutKind,
    pub mean_ms: f64,
    pub stddev_ms: f64,
}

/// Density stays at a few points per unit length so the frontier size does not grow with n.
pub fn bench_instance(kind: LayoutKind, n: usize, seed: u64) -> Instance {
    let mut spec = GenSpec::new(n, seed ^ n as u64, kind);
    spec.spread = (n as f64 / 4.0).max(1.0);
    spec.k = n.max(1);
    generate(&spec)
}

/// Generated points lie within one unit of a line, so this radius reaches every one.
pub fn bench_radius(_kind: LayoutKind) -> f64 {
    1.5
}

pub fn time_decider(inst: &Instance, r: f64, repeats: usize) -> (f64, f64) {
    let samples: Vec<f64> = (0..repeats.max(1))
        .map(|_| {
            let t = Instant::now();
            std::hint::black_box(decide(std::hint::black_box(inst), r));
            t.elapsed().as_secs_f64() * 1e3
        })
        .collect();
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let var = if samples.len() > 1 {
        samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (samples.len() - 1) as f64
    } else {
        0.0
    };
    (mean, var.sqrt())
}

pub fn run_scaling(kinds: &[LayoutKind], sizes: &[usize], seed: u64, repeats: usize) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for &kind in kinds {
        for &n in sizes {
            let inst = bench_instance(kind, n, seed);
            let (mean_ms, stddev_ms) = time_decider(&inst, bench_radius(kind), repeats);
            rows.push(BenchRow { n, algorithm: kind, mean_ms, stddev_ms });
        }
    }
    rows
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(out, "{},{},{:.6},{:.6}", r.n, r.algorithm, r.mean_ms, r.stddev_ms).unwrap();
    }
    out
}

/// Least-squares slope of ln(time) against ln(n).
pub fn loglog_slope(points: &[(usize, f64)]) -> f64 {
    let xy: Vec<(f64, f64)> = points.iter().map(|&(n, t)| ((n as f64).ln(), t.ln())).collect();
    let m = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / m;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
