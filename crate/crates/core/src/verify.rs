//! Numeric cross-checks of the closed-form conditions against the Jacobi
//! eigenvalue oracle, plus decomposition and double-angle sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::TAU;
use std::time::Instant;

use crate::bloch::{assemble, SIGMA_1, SIGMA_2};
use crate::canonical::decompose_channel;
use crate::channel::{orthogonal_channel, AffineChannel};
use crate::cp::{chi_matrix, cp_conditions, CP_TOL};
use crate::linalg::{rotation_matrix, Mat2, Vec2};

/// Points this close to the boundary (in `margin` or `min qᵢ`) are not
/// compared in the random sweep.
pub const BOUNDARY_BAND: f64 = 1e-7;

pub fn oracle_is_psd(l1: f64, l2: f64, w1: f64, w2: f64) -> bool {
    chi_matrix(l1, l2, w1, w2)
        .eigenvalues()
        .iter()
        .all(|&e| e >= -CP_TOL)
}

/// Number of grid points per axis for `[−1, 1]` at the given step.
pub fn grid_len(step: f64) -> usize {
    (2.0 / step).round() as usize + 1
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridOutcome {
    pub points: usize,
    pub mismatches: usize,
}

/// Unital `(λ₁, λ₂)` grid: closed form vs eigenvalue signs.
pub fn unital_grid(step: f64) -> GridOutcome {
    let n = grid_len(step);
    let coord = |i: usize| (-1.0 + i as f64 * step).min(1.0);
    let mut mismatches = 0;
    for i in 0..n {
        for j in 0..n {
            let (l1, l2) = (coord(i), coord(j));
            if cp_conditions(l1, l2, 0.0, 0.0).is_cp != oracle_is_psd(l1, l2, 0.0, 0.0) {
                mismatches += 1;
            }
        }
    }
    GridOutcome {
        points: n * n,
        mismatches,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOutcome {
    pub samples: usize,
    pub mismatches: usize,
    pub boundary_excluded: usize,
    pub accepted: usize,
    /// CP-accepted points with `b < −ε`.
    pub b_exceptions: usize,
    pub min_accepted_b: f64,
}

/// Uniform points in `[−1, 1]⁴`.
pub fn random_sweep(samples: usize, seed: u64) -> SweepOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SweepOutcome {
        samples,
        mismatches: 0,
        boundary_excluded: 0,
        accepted: 0,
        b_exceptions: 0,
        min_accepted_b: f64::INFINITY,
    };
    for _ in 0..samples {
        let [l1, l2, w1, w2]: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
        let report = cp_conditions(l1, l2, w1, w2);
        if report.is_cp {
            out.accepted += 1;
            out.min_accepted_b = out.min_accepted_b.min(report.b);
            if report.b < -CP_TOL {
                out.b_exceptions += 1;
            }
        }
        let min_q = report
            .q
            .iter()
            .map(|q| q.abs())
            .fold(f64::INFINITY, f64::min);
        if report.margin.abs() < BOUNDARY_BAND || min_q < BOUNDARY_BAND {
            out.boundary_excluded += 1;
            continue;
        }
        if report.is_cp != oracle_is_psd(l1, l2, w1, w2) {
            out.mismatches += 1;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundTripOutcome {
    pub samples: usize,
    pub max_residual: f64,
    pub max_orthogonality_defect: f64,
    pub max_det_error: f64,
    pub max_rotation_det_error: f64,
}

impl RoundTripOutcome {
    pub fn failures(&self) -> usize {
        usize::from(self.max_residual > 1e-10)
            + usize::from(self.max_orthogonality_defect > 1e-12)
            + usize::from(self.max_rotation_det_error > 1e-12)
            + usize::from(self.max_det_error > 1e-10)
    }
}

/// Random `A` with entries in `[−2, 2]` and `w` in `[−1, 1]²`.
pub fn roundtrip_sweep(samples: usize, seed: u64) -> RoundTripOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = RoundTripOutcome {
        samples,
        max_residual: 0.0,
        max_orthogonality_defect: 0.0,
        max_det_error: 0.0,
        max_rotation_det_error: 0.0,
    };
    for _ in 0..samples {
        let e: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-2.0..=2.0));
        let w = Vec2::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        let c = AffineChannel::new(Mat2::new(e[0], e[1], e[2], e[3]), w);
        let f = decompose_channel(&c);
        out.max_residual = out.max_residual.max(f.residual(&c));
        for r in [f.left().matrix(), f.right().matrix()] {
            out.max_orthogonality_defect =
                out.max_orthogonality_defect.max(r.orthogonality_defect());
            out.max_rotation_det_error = out.max_rotation_det_error.max((r.det() - 1.0).abs());
        }
        out.max_det_error = out
            .max_det_error
            .max((c.a.det() - f.lambda.0 * f.lambda.1).abs());
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleAngleOutcome {
    pub angles: usize,
    pub states: usize,
    pub max_matrix_error: f64,
    pub max_state_error: f64,
}

/// Bloch matrix of conjugation by `R(α)` vs `R(2α)`, and `ΩρΩᵗ` vs the
/// rotated Bloch vector.
pub fn double_angle_check(angles: usize, states: usize, seed: u64) -> DoubleAngleOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = DoubleAngleOutcome {
        angles,
        states,
        max_matrix_error: 0.0,
        max_state_error: 0.0,
    };
    let mut channels = Vec::with_capacity(angles);
    for _ in 0..angles {
        let alpha = rng.gen_range(0.0..TAU);
        let ch = orthogonal_channel(rotation_matrix(alpha)).expect("rotation is orthogonal");
        let err = (*ch.bloch_matrix() - rotation_matrix(2.0 * alpha)).max_abs();
        out.max_matrix_error = out.max_matrix_error.max(err);
        channels.push(ch);
    }
    for k in 0..states {
        let ch = &channels[k % channels.len()];
        let r = rng.gen_range(0.0..=1.0f64).sqrt();
        let v = Vec2::from_polar(r, rng.gen_range(0.0..TAU));
        let rho = assemble(v);
        let direct = Vec2::new(
            (SIGMA_1 * ch.conjugate(&rho)).trace(),
            (SIGMA_2 * ch.conjugate(&rho)).trace(),
        );
        let via_bloch = *ch.bloch_matrix() * v;
        out.max_state_error = out.max_state_error.max((direct - via_bloch).max_abs());
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyReport {
    pub grid_points: usize,
    pub samples: usize,
    pub mismatches: usize,
    pub boundary_excluded: usize,
    pub max_roundtrip_residual: f64,
    pub elapsed: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub grid_step: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            grid_step: 0.01,
            samples: 100_000,
            seed: 0,
        }
    }
}

/// Runs all five checks. `mismatches` sums grid and sweep disagreements,
/// `b` exceptions, and failed round-trip and double-angle tolerances.
pub fn run_verify(opts: &VerifyOptions) -> VerifyReport {
    let start = Instant::now();
    let grid = unital_grid(opts.grid_step);
    let sweep = random_sweep(opts.samples, opts.seed);
    let round = roundtrip_sweep(opts.samples.min(10_000), opts.seed.wrapping_add(1));
    let angles = double_angle_check(100, 1000, opts.seed.wrapping_add(2));
    let angle_failures =
        usize::from(angles.max_matrix_error > 1e-12) + usize::from(angles.max_state_error > 1e-12);
    VerifyReport {
        grid_points: grid.points,
        samples: sweep.samples,
        mismatches: grid.mismatches
            + sweep.mismatches
            + sweep.b_exceptions
            + round.failures()
            + angle_failures,
        boundary_excluded: sweep.boundary_excluded,
        max_roundtrip_residual: round.max_residual,
        elapsed: start.elapsed().as_secs_f64(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarse_grid() {
        let g = unital_grid(0.5);
        assert_eq!(g.points, 25);
        assert_eq!(g.mismatches, 0);
        assert_eq!(grid_len(0.01), 201);
    }

    #[test]
    fn small_run_is_clean_and_repeatable() {
        let opts = VerifyOptions {
            grid_step: 0.1,
            samples: 2000,
            seed: 7,
        };
        let a = run_verify(&opts);
        let b = run_verify(&opts);
        assert_eq!(a.mismatches, 0);
        assert_eq!(a.grid_points, 441);
        assert_eq!(
            (
                a.grid_points,
                a.samples,
                a.mismatches,
                a.boundary_excluded,
                a.max_roundtrip_residual
            ),
            (
                b.grid_points,
                b.samples,
                b.mismatches,
                b.boundary_excluded,
                b.max_roundtrip_residual
            )
        );
    }
}
