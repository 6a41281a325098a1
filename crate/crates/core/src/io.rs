//! JSON instance and result files, and the deterministic instance generator.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{validate_instance, Instance, InstanceError, LineLayout, WeightedPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayoutKind {
    Parallel,
    Perpendicular,
    Corner,
    TJunction,
}

impl FromStr for LayoutKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "parallel" => Ok(LayoutKind::Parallel),
            "perpendicular" => Ok(LayoutKind::Perpendicular),
            "corner" => Ok(LayoutKind::Corner),
            "t_junction" => Ok(LayoutKind::TJunction),
            _ => Err(format!("unknown layout kind {s:?}")),
        }
    }
}

impl fmt::Display for LayoutKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LayoutKind::Parallel => "parallel",
            LayoutKind::Perpendicular => "perpendicular",
            LayoutKind::Corner => "corner",
            LayoutKind::TJunction => "t_junction",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutSpec {
    pub kind: LayoutKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y2: Option<f64>,
}

fn unit_weight() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub x: f64,
    pub y: f64,
    #[serde(default = "unit_weight")]
    pub w: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub layout: LayoutSpec,
    pub k: usize,
    pub points: Vec<PointSpec>,
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed instance: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] InstanceError),
    #[error("layout {kind} {problem}")]
    Layout { kind: LayoutKind, problem: &'static str },
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        let (kind, y1, y2) = match inst.layout {
            LineLayout::Parallel { y1, y2 } => (LayoutKind::Parallel, Some(y1), Some(y2)),
            LineLayout::Perpendicular => (LayoutKind::Perpendicular, None, None),
            LineLayout::Corner => (LayoutKind::Corner, None, None),
            LineLayout::TJunction => (LayoutKind::TJunction, None, None),
        };
        let mut pts = inst.points.clone();
        pts.sort_by_key(|p| p.id);
        InstanceFile {
            layout: LayoutSpec { kind, y1, y2 },
            k: inst.k,
            points: pts.iter().map(|p| PointSpec { x: p.x, y: p.y, w: p.w }).collect(),
        }
    }

    /// Builds and validates the instance; point ids follow file order.
    pub fn to_instance(&self) -> Result<Instance, IoError> {
        let kind = self.layout.kind;
        let layout = match (kind, self.layout.y1, self.layout.y2) {
            (LayoutKind::Parallel, Some(y1), Some(y2)) => LineLayout::Parallel { y1, y2 },
            (LayoutKind::Parallel, _, _) => return Err(IoError::Layout { kind, problem: "needs y1 and y2" }),
            (_, None, None) => match kind {
                LayoutKind::Perpendicular => LineLayout::Perpendicular,
                LayoutKind::Corner => LineLayout::Corner,
                _ => LineLayout::TJunction,
            },
            _ => return Err(IoError::Layout { kind, problem: "takes no y1/y2" }),
        };
        let points = self.points.iter().enumerate().map(|(i, p)| WeightedPoint::new(i, p.x, p.y, p.w)).collect();
        let inst = Instance::new(points, layout, self.k);
        validate_instance(&inst)?;
        Ok(inst)
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, IoError> {
    serde_json::from_str::<InstanceFile>(text)?.to_instance()
}

/// Pretty JSON; floats use the shortest representation that reads back to the same value.
pub fn emit_instance(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(inst)).expect("instance serializes")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CenterSpec {
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunStats {
    pub n: usize,
    pub decider_calls: usize,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub feasible: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_count: Option<usize>,
    pub centers: Vec<CenterSpec>,
    pub stats: RunStats,
}

/// 64-bit splitmix generator; the sequence is fixed by the seed on every platform.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub seed: u64,
    pub kind: LayoutKind,
    /// Extent of the region points are drawn from along the lines.
    pub spread: f64,
    pub k: usize,
    /// Parallel only: draw weights in `[0.5, 4)` instead of 1.
    pub weighted: bool,
}

impl GenSpec {
    pub fn new(n: usize, seed: u64, kind: LayoutKind) -> Self {
        GenSpec { n, seed, kind, spread: 10.0, k: 2, weighted: false }
    }
}

/// Points within one unit of a line (or ray), so every radius above 1 is feasible for
/// weight 1 with enough centers.
///
/// Parallel instances use lines `y = 3` and `y = 0`.
pub fn generate(spec: &GenSpec) -> Instance {
    let mut rng = SplitMix64::new(spec.seed);
    let s = spec.spread;
    let layout = match spec.kind {
        LayoutKind::Parallel => LineLayout::Parallel { y1: 3.0, y2: 0.0 },
        LayoutKind::Perpendicular => LineLayout::Perpendicular,
        LayoutKind::Corner => LineLayout::Corner,
        LayoutKind::TJunction => LineLayout::TJunction,
    };
    let mut points = Vec::with_capacity(spec.n);
    for id in 0..spec.n {
        let p = match spec.kind {
            LayoutKind::Parallel => {
                let x = rng.uniform(0.0, s);
                let line = if rng.below(2) == 0 { 3.0 } else { 0.0 };
                let y = line + rng.uniform(-1.0, 1.0);
                let w = if spec.weighted { rng.uniform(0.5, 4.0) } else { 1.0 };
                WeightedPoint::new(id, x, y, w)
            }
            _ => {
                let along_x = rng.below(2) == 0;
                let (lo, hi) = match (spec.kind, along_x) {
                    (LayoutKind::Corner, _) => (-1.0, s),
                    (LayoutKind::TJunction, false) => (-s, 1.0),
                    _ => (-s / 2.0, s / 2.0),
                };
                let a = rng.uniform(lo, hi);
                let b = rng.uniform(-1.0, 1.0);
                if along_x {
                    WeightedPoint::unit(id, a, b)
                } else {
                    WeightedPoint::unit(id, b, a)
                }
            }
        };
        points.push(p);
    }
    Instance::new(points, layout, spec.k.max(1))
}
