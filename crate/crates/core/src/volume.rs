//! Closed-form volumes of the hull and the three double-McCormick
//! relaxations, idealized radii, and a Monte-Carlo volume oracle.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ineq::InequalitySystem;
use crate::seed::stream_rng;
use crate::trilinear::{membership, Bounds3, GroupingChoice};

/// Four-dimensional Lebesgue measure.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Volume(f64);

impl Volume {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < 0.0 {
            return Err(Error::InvalidArgument(format!("volume must be nonnegative, got {value}")));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

fn check_omega(labeled: &Bounds3) -> Result<()> {
    if labeled.satisfies_omega() {
        Ok(())
    } else {
        Err(Error::OmegaViolated)
    }
}

pub fn vol_hull(labeled: &Bounds3) -> Result<Volume> {
    check_omega(labeled)?;
    let ([a1, a2, a3], [b1, b2, b3]) = (labeled.lower(), labeled.upper());
    let v = (b1 - a1)
        * (b2 - a2)
        * (b3 - a3)
        * (b1 * (5.0 * b2 * b3 - a2 * b3 - b2 * a3 - 3.0 * a2 * a3)
            + a1 * (5.0 * a2 * a3 - b2 * a3 - a2 * b3 - 3.0 * b2 * b3))
        / 24.0;
    Ok(Volume(v.max(0.0)))
}

/// Volume in excess of the hull for each grouping choice.
pub fn excess_volume(labeled: &Bounds3, choice: GroupingChoice) -> Result<f64> {
    check_omega(labeled)?;
    let ([a1, a2, a3], [b1, b2, b3]) = (labeled.lower(), labeled.upper());
    let common = (b1 - a1) * (b2 - a2).powi(2) * (b3 - a3).powi(2);
    let excess = match choice.index() {
        1 => {
            common
                * (3.0 * (b1 * b2 * a3 - a1 * b2 * a3 + b1 * a2 * b3 - a1 * a2 * b3)
                    + 2.0 * (a1 * b2 * b3 - b1 * a2 * a3))
                / (24.0 * (b2 * b3 - a2 * a3))
        }
        2 => {
            common * (5.0 * (a1 * b1 * b3 - a1 * b1 * a3) + 3.0 * (b1 * b1 * a3 - a1 * a1 * b3))
                / (24.0 * (b1 * b3 - a1 * a3))
        }
        _ => {
            common * (5.0 * (a1 * b1 * b2 - a1 * b1 * a2) + 3.0 * (b1 * b1 * a2 - a1 * a1 * b2))
                / (24.0 * (b1 * b2 - a1 * a2))
        }
    };
    Ok(excess)
}

pub fn vol_double_mccormick(labeled: &Bounds3, choice: GroupingChoice) -> Result<Volume> {
    Ok(Volume((vol_hull(labeled)?.0 + excess_volume(labeled, choice)?).max(0.0)))
}

/// Volume of the Euclidean unit ball in dimension `d` (`π²/2` for `d = 4`).
pub fn unit_ball_volume(d: u32) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(d - 2) * 2.0 * std::f64::consts::PI / d as f64,
    }
}

/// Radius of the ball with the same volume.
pub fn idealized_radius(vol: Volume, d: u32) -> f64 {
    assert!(d >= 1, "dimension must be positive");
    (vol.0 / unit_ball_volume(d)).powf(1.0 / d as f64)
}

pub fn idealized_radial_distance(v1: Volume, v2: Volume, d: u32) -> f64 {
    (idealized_radius(v1, d) - idealized_radius(v2, d)).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
    pub hits: u64,
    pub seed: u64,
}

const CHUNK: u64 = 1 << 15;

/// Hit-or-miss estimate of the volume of `system` inside the box
/// `[a, b] × [a₁a₂a₃, b₁b₂b₃]`. Samples are drawn in fixed-size chunks, each
/// from its own seed-derived stream, and hit counts are summed as integers,
/// so the result does not depend on how chunks are scheduled.
pub fn mc_volume_estimate(bounds: &Bounds3, system: &InequalitySystem, samples: u64, seed: u64) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive".into()));
    }
    let (a, b) = (bounds.lower(), bounds.upper());
    let (flo, fhi) = bounds.product_range();
    let box_volume = bounds.box_volume() * (fhi - flo);
    if !(box_volume > 0.0) {
        return Err(Error::ZeroVolumeSamplingBox);
    }
    let chunks = samples.div_ceil(CHUNK);
    let hits = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream_rng(seed, &format!("mc-volume/{c}"));
            let count = CHUNK.min(samples - c * CHUNK);
            let mut hits = 0u64;
            for _ in 0..count {
                let f = flo + (fhi - flo) * rng.gen::<f64>();
                let xs: [f64; 3] = std::array::from_fn(|t| a[t] + (b[t] - a[t]) * rng.gen::<f64>());
                if membership(&[f, xs[0], xs[1], xs[2]], system, 0.0)? {
                    hits += 1;
                }
            }
            Ok(hits)
        })
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .sum::<u64>();
    let p = hits as f64 / samples as f64;
    Ok(McEstimate {
        estimate: p * box_volume,
        std_error: (p * (1.0 - p) / samples as f64).sqrt() * box_volume,
        samples,
        hits,
        seed,
    })
}
