//! χ-matrix of the diagonal map `C_D` and the closed-form complete-positivity
//! test.
//!
//! For `C_D: v ↦ (w₁ + λ₁v₁, w₂ + λ₂v₂)` in the orthonormal basis
//! `(σ₀, σ₁, σ₂)/√2` the χ-matrix is
//!
//! ```text
//!       ⎡ 1+λ₁+λ₂   w₁        w₂      ⎤
//!   ½ · ⎢ w₁        1+λ₁−λ₂   0       ⎥
//!       ⎣ w₂        0         1−λ₁+λ₂ ⎦
//! ```
//!
//! and `C_D` is completely positive iff χ is positive semi-definite. The
//! closed form used here: the diagonal entries `q₀, q₁, q₂` are
//! non-negative and the determinant, multiplied out as
//! `8q₀q₁q₂ − w₁²·2q₂ − w₂²·2q₁`, is non-negative. On the faces where `q₁`
//! or `q₂` vanishes that product degenerates, so the two 2×2 principal
//! minors containing `q₀` are checked as well.

use serde::Serialize;

use crate::bloch::{PAULI, SIGMA_0};
use crate::canonical::{decompose_channel, CanonicalForm};
use crate::channel::AffineChannel;
use crate::error::{RebitError, Result};
use crate::linalg::{eig_sym3, Mat2, Sym3, Vec2};

/// One-sided boundary tolerance: points within this distance of the
/// admissible region's boundary count as inside.
pub const CP_TOL: f64 = 1e-9;

/// Off-diagonal magnitude up to which `A` is treated as already diagonal.
pub const DIAGONAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiMatrix(pub Sym3);

impl ChiMatrix {
    pub fn sym(&self) -> &Sym3 {
        &self.0
    }

    pub fn eigenvalues(&self) -> [f64; 3] {
        eig_sym3(&self.0)
    }

    /// Number of eigenvalues above [`CP_TOL`].
    pub fn rank(&self) -> u8 {
        self.eigenvalues().iter().filter(|&&e| e > CP_TOL).count() as u8
    }
}

pub fn chi_matrix(l1: f64, l2: f64, w1: f64, w2: f64) -> ChiMatrix {
    ChiMatrix(Sym3::new(
        [
            0.5 * (1.0 + l1 + l2),
            0.5 * (1.0 + l1 - l2),
            0.5 * (1.0 - l1 + l2),
        ],
        [0.5 * w1, 0.5 * w2, 0.0],
    ))
}

/// χ from the trace formula `χ_rs = ¼ Σ_k Tr[σ_s σ_k σ_r C(σ_k)]`, where
/// `C(σ₀) = I + w·σ` and `C(σ_j) = λ_j σ_j`.
///
/// Only diagonal channels are accepted; decompose general channels first.
pub fn chi_general(c: &AffineChannel) -> Result<ChiMatrix> {
    if !c.a.is_diagonal(DIAGONAL_TOL) {
        return Err(RebitError::NotDiagonal);
    }
    Ok(ChiMatrix(Sym3::from_upper(&chi_trace_formula(c))))
}

fn chi_trace_formula(c: &AffineChannel) -> [[f64; 3]; 3] {
    let basis = [SIGMA_0, PAULI[0], PAULI[1]];
    // images of the basis operators; σ₀ = 2·(maximally mixed state)
    let image = |k: usize| -> Mat2 {
        if k == 0 {
            SIGMA_0 + PAULI[0].scale(c.w.x) + PAULI[1].scale(c.w.y)
        } else {
            let col = Vec2::new(c.a.get(0, k - 1), c.a.get(1, k - 1));
            PAULI[0].scale(col.x) + PAULI[1].scale(col.y)
        }
    };
    let images = [image(0), image(1), image(2)];
    let mut chi = [[0.0; 3]; 3];
    for (r, row) in chi.iter_mut().enumerate() {
        for (s, cell) in row.iter_mut().enumerate() {
            *cell = 0.25
                * (0..3)
                    .map(|k| (basis[s] * basis[k] * basis[r] * images[k]).trace())
                    .sum::<f64>();
        }
    }
    chi
}

/// Diagonal entries of χ (its eigenvalues in the unital case).
pub fn q_values(l1: f64, l2: f64) -> [f64; 3] {
    [
        0.5 * (1.0 + l1 + l2),
        0.5 * (1.0 + l1 - l2),
        0.5 * (1.0 - l1 + l2),
    ]
}

/// Coefficients of `P(x) = det(χ − x) = −x³ + (a/2)x² − (b_exact/4)x + det χ`.
///
/// `b = 3 − |w|² + 2(λ₁+λ₂) − (λ₁+λ₂)²` is the reported quantity. The
/// actual linear coefficient (four times the sum of the principal 2×2
/// minors) has `(λ₁−λ₂)²` in place of `(λ₁+λ₂)²`, so `b = b_exact − 4λ₁λ₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharPoly {
    pub a: f64,
    pub b: f64,
    pub b_exact: f64,
    pub det_chi: f64,
}

impl CharPoly {
    pub fn eval(&self, x: f64) -> f64 {
        -x * x * x + 0.5 * self.a * x * x - 0.25 * self.b_exact * x + self.det_chi
    }
}

pub fn charpoly_coeffs(l1: f64, l2: f64, w1: f64, w2: f64) -> CharPoly {
    let sum = l1 + l2;
    let a = 3.0 + sum;
    let w_sq = w1 * w1 + w2 * w2;
    let b = 3.0 - w_sq + 2.0 * sum - sum * sum;
    let b_exact = 3.0 - w_sq + 2.0 * sum - (l1 - l2) * (l1 - l2);
    let det_chi = 0.125
        * ((1.0 - l1 + l2) * ((1.0 + l1 + l2) * (1.0 + l1 - l2) - w1 * w1)
            - w2 * w2 * (1.0 + l1 - l2));
    CharPoly {
        a,
        b,
        b_exact,
        det_chi,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftCheck {
    pub inside: bool,
    /// `8q₀q₁q₂ − w₁²(1−λ₁+λ₂) − w₂²(1+λ₁−λ₂)`, i.e. `8·det χ`.
    pub margin: f64,
}

/// Whether `(w₁, w₂)` lies in the admissible shift region for scales
/// `(λ₁, λ₂)`. Assumes the caller already checked `q₀, q₁, q₂ ≥ 0`.
///
/// Never divides, so vanishing `qᵢ` are handled directly: `q₂ = 0` forces
/// `w₂ = 0`, `q₁ = 0` forces `w₁ = 0`, and `q₀ = 0` forces both.
pub fn shift_region_contains(l1: f64, l2: f64, w1: f64, w2: f64) -> ShiftCheck {
    let [q0, q1, q2] = q_values(l1, l2);
    let margin = 8.0 * q0 * q1 * q2 - w1 * w1 * (1.0 - l1 + l2) - w2 * w2 * (1.0 + l1 - l2);
    let minor_1 = 4.0 * q0 * q1 - w1 * w1;
    let minor_2 = 4.0 * q0 * q2 - w2 * w2;
    ShiftCheck {
        inside: margin >= -CP_TOL && minor_1 >= -CP_TOL && minor_2 >= -CP_TOL,
        margin,
    }
}

/// Verdict on a diagonal map with scales `λ` and shift `w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CpReport {
    pub q: [f64; 3],
    pub a: f64,
    pub b: f64,
    pub det_chi: f64,
    pub margin: f64,
    pub is_cp: bool,
    pub kraus_rank: u8,
}

/// Closed-form complete-positivity conditions on the diagonal map
/// `v ↦ w + diag(λ₁, λ₂) v`.
pub fn cp_conditions(l1: f64, l2: f64, w1: f64, w2: f64) -> CpReport {
    let q = q_values(l1, l2);
    let poly = charpoly_coeffs(l1, l2, w1, w2);
    let shift = shift_region_contains(l1, l2, w1, w2);
    let is_cp = q.iter().all(|&qi| qi >= -CP_TOL) && shift.inside;
    CpReport {
        q,
        a: poly.a,
        b: poly.b,
        det_chi: poly.det_chi,
        margin: shift.margin,
        is_cp,
        kraus_rank: chi_matrix(l1, l2, w1, w2).rank(),
    }
}

/// The factorization the verdict is read from.
///
/// A channel whose linear part is already diagonal is taken as its own
/// diagonal map (no dressing rotations); anything else goes through
/// [`decompose_channel`]. The distinction matters because the χ conditions
/// are not symmetric under `λ ↦ −λ`: `diag(−1, 0)` is a rank-1 vertex of
/// the admissible pentagon while its canonical form `(1, 0)` sits on an edge.
pub fn working_frame(c: &AffineChannel) -> CanonicalForm {
    if c.a.is_diagonal(DIAGONAL_TOL) {
        CanonicalForm {
            theta1: 0.0,
            theta2: 0.0,
            lambda: (c.a.get(0, 0), c.a.get(1, 1)),
            shift: c.w,
        }
    } else {
        decompose_channel(c)
    }
}

pub fn is_cp(c: &AffineChannel) -> CpReport {
    let f = working_frame(c);
    cp_conditions(f.lambda.0, f.lambda.1, f.shift.x, f.shift.y)
}

/// Whether `(λ₁, λ₂)` is an admissible unital scale pair: inside `[−1, 1]²`
/// and all three `qᵢ ≥ 0`.
pub fn in_pentagon(l1: f64, l2: f64) -> bool {
    l1.abs() <= 1.0 + CP_TOL
        && l2.abs() <= 1.0 + CP_TOL
        && q_values(l1, l2).iter().all(|&q| q >= -CP_TOL)
}

/// Corners of the admissible `(λ₁, λ₂)` region, counter-clockwise.
pub fn admissible_pentagon() -> [(f64, f64); 5] {
    [(-1.0, 0.0), (0.0, -1.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
}
