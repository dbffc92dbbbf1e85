//! Affine Bloch-space representation of candidate rebit channels.
//!
//! A trace-preserving map acts on Bloch vectors as `v ↦ w + A v`. Complete
//! positivity is not assumed here; see [`crate::cp`] for the verdict.

use serde::{Deserialize, Serialize};

use crate::bloch::{DensityMatrix, PAULI};
use crate::error::{RebitError, Result};
use crate::linalg::{rotation_matrix, Mat2, Vec2};

/// Slack allowed on the output Bloch norm before [`AffineChannel::apply`]
/// reports a positivity violation.
pub const APPLY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineChannel {
    pub a: Mat2,
    pub w: Vec2,
}

impl AffineChannel {
    pub const IDENTITY: AffineChannel = AffineChannel {
        a: Mat2::IDENTITY,
        w: Vec2::ZERO,
    };

    pub fn new(a: Mat2, w: Vec2) -> Self {
        Self { a, w }
    }

    pub fn unital(a: Mat2) -> Self {
        Self::new(a, Vec2::ZERO)
    }

    pub fn diagonal(l1: f64, l2: f64, w: Vec2) -> Self {
        Self::new(Mat2::diag(l1, l2), w)
    }

    /// Unital channel rotating the Bloch disk by `alpha`.
    pub fn rotation(alpha: f64) -> Self {
        Self::unital(rotation_matrix(alpha))
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.w.is_finite()
    }

    /// Image of a Bloch vector, without any positivity check.
    pub fn map_bloch(&self, v: Vec2) -> Vec2 {
        self.w + self.a * v
    }

    /// `C(ρ) = ½(I + (w + A v^ρ)·σ)`. Fails when the image leaves the Bloch
    /// disk, which means the map is not even positive on `ρ`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let out = self.map_bloch(rho.bloch().0);
        let norm = out.norm();
        if norm.is_nan() || norm > 1.0 + APPLY_TOL {
            return Err(RebitError::NotPositive { norm });
        }
        // within the slack but past the disk: land on the boundary
        let out = if norm > 1.0 { (1.0 / norm) * out } else { out };
        Ok(DensityMatrix::from_bloch_unchecked(out))
    }

    /// `self ∘ other`: `(A₁A₂, w₁ + A₁w₂)`.
    pub fn compose(&self, other: &AffineChannel) -> AffineChannel {
        AffineChannel::new(self.a * other.a, self.w + self.a * other.w)
    }

    pub fn is_unital(&self) -> bool {
        self.w.norm() <= 1e-12
    }

    /// The 3×3 affine matrix acting on `(1, v₁, v₂)`. The first row is fixed
    /// to `(1, 0, 0)`, which is what makes the map trace preserving.
    pub fn affine_matrix(&self) -> [[f64; 3]; 3] {
        let [[a11, a12], [a21, a22]] = self.a.0;
        [[1.0, 0.0, 0.0], [self.w.x, a11, a12], [self.w.y, a21, a22]]
    }
}

pub fn compose(c1: &AffineChannel, c2: &AffineChannel) -> AffineChannel {
    c1.compose(c2)
}

pub fn is_unital(c: &AffineChannel) -> bool {
    c.is_unital()
}

/// Conjugation `ρ ↦ ΩρΩᵗ` by an orthogonal matrix, together with the map it
/// induces on Bloch vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthogonalChannel {
    omega: Mat2,
    bloch: Mat2,
}

impl OrthogonalChannel {
    pub fn omega(&self) -> &Mat2 {
        &self.omega
    }

    /// `R_Ω`. A rotation when `det Ω = 1`; for `det Ω = −1` the induced map
    /// is a reflection of the Bloch disk.
    pub fn bloch_matrix(&self) -> &Mat2 {
        &self.bloch
    }

    pub fn conjugate(&self, rho: &Mat2) -> Mat2 {
        self.omega * *rho * self.omega.transpose()
    }

    pub fn as_affine(&self) -> AffineChannel {
        AffineChannel::unital(self.bloch)
    }
}

/// Builds `σ_Ω` with `(R_Ω)_jk = ½ Tr(σ_j Ω σ_k Ωᵗ)`.
pub fn orthogonal_channel(omega: Mat2) -> Result<OrthogonalChannel> {
    if !omega.is_finite() {
        return Err(RebitError::NonFinite);
    }
    let defect = omega.orthogonality_defect();
    if defect > 1e-12 {
        return Err(RebitError::NotOrthogonal(defect));
    }
    let omega_t = omega.transpose();
    let mut r = [[0.0; 2]; 2];
    for (j, row) in r.iter_mut().enumerate() {
        for (k, cell) in row.iter_mut().enumerate() {
            *cell = 0.5 * (PAULI[j] * omega * PAULI[k] * omega_t).trace();
        }
    }
    Ok(OrthogonalChannel {
        omega,
        bloch: Mat2(r),
    })
}

pub fn as_affine(ch: &OrthogonalChannel) -> AffineChannel {
    ch.as_affine()
}
