//! Rebit states and their Bloch-disk coordinates.
//!
//! A state is a real symmetric 2×2 matrix with unit trace and no negative
//! eigenvalue, `ρ = ½(I + v₁σ₁ + v₂σ₂)` with `‖v‖ ≤ 1`.

use crate::error::{RebitError, Result};
use crate::linalg::{Mat2, Vec2};

/// Tolerance for structural checks (symmetry, trace, disk membership).
pub const STRUCT_TOL: f64 = 1e-12;

pub const SIGMA_0: Mat2 = Mat2::IDENTITY;
pub const SIGMA_1: Mat2 = Mat2::diag(1.0, -1.0);
pub const SIGMA_2: Mat2 = Mat2::new(0.0, 1.0, 1.0, 0.0);

/// The two traceless real Pauli matrices, in Bloch-axis order.
pub const PAULI: [Mat2; 2] = [SIGMA_1, SIGMA_2];

/// Bloch coordinates of a rebit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(pub Vec2);

impl BlochVector {
    pub fn new(x: f64, y: f64) -> Self {
        Self(Vec2::new(x, y))
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Mat2);

impl DensityMatrix {
    pub fn maximally_mixed() -> Self {
        Self(Mat2::diag(0.5, 0.5))
    }

    /// Validates a candidate matrix. Asymmetric input is rejected, never
    /// symmetrized.
    pub fn try_new(m: Mat2) -> Result<Self> {
        match is_valid_state(&m) {
            StateCheck::Valid => Ok(Self(m)),
            StateCheck::Invalid(err) => Err(err),
        }
    }

    pub(crate) fn from_bloch_unchecked(v: Vec2) -> Self {
        Self(assemble(v))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn bloch(&self) -> BlochVector {
        bloch_components(&self.0)
    }

    pub fn det(&self) -> f64 {
        self.0.det()
    }

    /// Both eigenvalues, descending.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let [[a, b], [_, d]] = self.0 .0;
        let mean = 0.5 * (a + d);
        let rad = (0.5 * (a - d)).hypot(b);
        (mean + rad, mean - rad)
    }
}

fn bloch_components(m: &Mat2) -> BlochVector {
    let [s1, s2] = PAULI.map(|p| (p * *m).trace());
    BlochVector::new(s1, s2)
}

/// `v_k = Tr(σ_k ρ)`.
pub fn bloch_from_density(rho: &DensityMatrix) -> BlochVector {
    rho.bloch()
}

/// `ρ = ½(I + v₁σ₁ + v₂σ₂)`.
pub fn density_from_bloch(v: BlochVector) -> Result<DensityMatrix> {
    let norm = v.norm();
    if !norm.is_finite() {
        return Err(RebitError::NonFinite);
    }
    if norm > 1.0 + STRUCT_TOL {
        return Err(RebitError::OutsideBlochDisk(norm));
    }
    Ok(DensityMatrix(assemble(v.0)))
}

// No validation; callers guarantee the vector is in the disk.
pub(crate) fn assemble(v: Vec2) -> Mat2 {
    Mat2::new(0.5 * (1.0 + v.x), 0.5 * v.y, 0.5 * v.y, 0.5 * (1.0 - v.x))
}

/// `ρ(r, θ) = ½[[1 + r cos θ, r sin θ], [r sin θ, 1 − r cos θ]]`.
pub fn state_polar(r: f64, theta: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&r) || !theta.is_finite() {
        return Err(RebitError::BadRadius(r));
    }
    let (s, c) = theta.sin_cos();
    Ok(DensityMatrix(Mat2::new(
        0.5 * (1.0 + r * c),
        0.5 * r * s,
        0.5 * r * s,
        0.5 * (1.0 - r * c),
    )))
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateCheck {
    Valid,
    Invalid(RebitError),
}

impl StateCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, StateCheck::Valid)
    }
}

pub fn is_valid_state(m: &Mat2) -> StateCheck {
    if !m.is_finite() {
        return StateCheck::Invalid(RebitError::NonFinite);
    }
    let asym = (m.get(0, 1) - m.get(1, 0)).abs();
    if asym > STRUCT_TOL {
        return StateCheck::Invalid(RebitError::NotSymmetric(asym));
    }
    let tr = m.trace();
    if (tr - 1.0).abs() > STRUCT_TOL {
        return StateCheck::Invalid(RebitError::BadTrace(tr));
    }
    let norm = bloch_components(m).norm();
    if norm > 1.0 + STRUCT_TOL {
        return StateCheck::Invalid(RebitError::OutsideBlochDisk(norm));
    }
    StateCheck::Valid
}
