//! Fixed-size numeric kernels: 2-vectors, 2×2 matrices, plane rotations,
//! a closed-form 2×2 SVD and a Jacobi eigenvalue routine for real symmetric
//! 3×3 matrices.
//!
//! The Jacobi routine is intentionally iterative. It serves as the numeric
//! oracle for the closed-form positivity conditions in [`crate::cp`], so it
//! must not share any algebra with them.

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        Self::new(r * theta.cos(), r * theta.sin())
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.x, self.y]
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(v: [f64; 2]) -> Self {
        Self::new(v[0], v[1])
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self * rhs.x, self * rhs.y)
    }
}

/// Real 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);
    pub const ZERO: Mat2 = Mat2([[0.0, 0.0], [0.0, 0.0]]);

    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2([[a11, a12], [a21, a22]])
    }

    pub const fn diag(d1: f64, d2: f64) -> Self {
        Self::new(d1, 0.0, 0.0, d2)
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[row][col]
    }

    pub fn transpose(&self) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        Mat2::new(a, c, b, d)
    }

    pub fn det(&self) -> f64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, k: f64) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        Mat2::new(k * a, k * b, k * c, k * d)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|v| v.is_finite())
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.0[0][1].abs() <= tol && self.0[1][0].abs() <= tol
    }

    /// `‖MᵗM − I‖_∞`
    pub fn orthogonality_defect(&self) -> f64 {
        (self.transpose() * *self - Mat2::IDENTITY).max_abs()
    }

    pub fn mul_vec(&self, v: Vec2) -> Vec2 {
        let [[a, b], [c, d]] = self.0;
        Vec2::new(a * v.x + b * v.y, c * v.x + d * v.y)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = self.0;
        let b = rhs.0;
        let mut out = [[0.0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    fn mul(self, rhs: Vec2) -> Vec2 {
        self.mul_vec(rhs)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (self.0, rhs.0);
        Mat2::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + rhs.scale(-1.0)
    }
}

/// Wraps an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    // `+ 0.0` turns a negative zero into a positive one
    let t = theta.rem_euclid(TAU) + 0.0;
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// `[[cos θ, −sin θ], [sin θ, cos θ]]`
pub fn rotation_matrix(theta: f64) -> Mat2 {
    let (s, c) = theta.sin_cos();
    Mat2::new(c, -s, s, c)
}

/// A plane rotation, stored by its angle in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Rotation2 {
    angle: f64,
}

impl Rotation2 {
    pub const IDENTITY: Rotation2 = Rotation2 { angle: 0.0 };

    pub fn new(theta: f64) -> Self {
        Self {
            angle: normalize_angle(theta),
        }
    }

    /// Reads the angle off a matrix assumed to lie in SO(2).
    pub fn from_matrix(m: &Mat2) -> Self {
        Self::new(m.0[1][0].atan2(m.0[0][0]))
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn matrix(&self) -> Mat2 {
        rotation_matrix(self.angle)
    }

    pub fn inverse(&self) -> Rotation2 {
        Rotation2::new(-self.angle)
    }

    pub fn compose(&self, other: &Rotation2) -> Rotation2 {
        Rotation2::new(self.angle + other.angle)
    }
}

/// Output of [`svd2`]: `A = left · diag(s1, s2) · rightᵗ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Svd2 {
    pub left: Mat2,
    pub s1: f64,
    pub s2: f64,
    pub right: Mat2,
}

impl Svd2 {
    pub fn reconstruct(&self) -> Mat2 {
        self.left * Mat2::diag(self.s1, self.s2) * self.right.transpose()
    }
}

// Relative size below which one of the two rotation/reflection amplitudes
// counts as zero, i.e. the singular values are tied.
const TIE_TOL: f64 = 4.0 * f64::EPSILON;

/// Closed-form singular value decomposition of a 2×2 matrix.
///
/// `A` splits into a scaled rotation plus a scaled reflection,
/// `A = q·R(α) + r·R(β)·σ₁` with `q, r ≥ 0`. Writing the same matrix as
/// `R(φ)·diag(q + r, q − r)·R(θ)` gives `φ = (α + β)/2`, `θ = (α − β)/2`.
/// A negative second entry (`q < r`, i.e. `det A < 0`) is absorbed into the
/// left factor as a reflection so that both singular values are
/// non-negative. When `q + r` and `|q − r|` coincide the right factor is the
/// identity.
pub fn svd2(a: &Mat2) -> Svd2 {
    let [[a11, a12], [a21, a22]] = a.0;
    if a12 == 0.0 && a21 == 0.0 {
        return svd_diagonal(a11, a22);
    }
    let e = 0.5 * (a11 + a22);
    let f = 0.5 * (a11 - a22);
    let g = 0.5 * (a21 + a12);
    let h = 0.5 * (a21 - a12);
    let q = e.hypot(h);
    let r = f.hypot(g);
    let alpha = h.atan2(e);
    let beta = g.atan2(f);

    let (phi, theta) = if r <= TIE_TOL * q {
        (alpha, 0.0)
    } else if q <= TIE_TOL * r {
        (beta, 0.0)
    } else {
        (0.5 * (alpha + beta), 0.5 * (alpha - beta))
    };

    let s1 = q + r;
    let s2 = q - r;
    let rot_left = rotation_matrix(phi);
    // right factor V with Vᵗ = R(θ)
    let right = rotation_matrix(-theta);
    if s2 < 0.0 {
        Svd2 {
            left: rot_left * Mat2::diag(1.0, -1.0),
            s1,
            s2: -s2,
            right,
        }
    } else {
        Svd2 {
            left: rot_left,
            s1,
            s2,
            right,
        }
    }
}

// Exact path for diagonal input: signs go to the left factor, a swap to both.
fn svd_diagonal(d1: f64, d2: f64) -> Svd2 {
    let sign = |x: f64| if x < 0.0 { -1.0 } else { 1.0 };
    if d1.abs() >= d2.abs() {
        Svd2 {
            left: Mat2::diag(sign(d1), sign(d2)),
            s1: d1.abs(),
            s2: d2.abs(),
            right: Mat2::IDENTITY,
        }
    } else {
        Svd2 {
            left: Mat2::new(0.0, sign(d1), sign(d2), 0.0),
            s1: d2.abs(),
            s2: d1.abs(),
            right: Mat2::new(0.0, 1.0, 1.0, 0.0),
        }
    }
}

/// Real symmetric 3×3 matrix; only the upper triangle is stored.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Sym3 {
    /// `(m00, m11, m22)`
    pub diag: [f64; 3],
    /// `(m01, m02, m12)`
    pub off: [f64; 3],
}

impl Sym3 {
    pub const fn new(diag: [f64; 3], off: [f64; 3]) -> Self {
        Self { diag, off }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_diagonal(d: [f64; 3]) -> Self {
        Self::new(d, [0.0; 3])
    }

    /// Builds from a full matrix, reading only the upper triangle.
    pub fn from_upper(m: &[[f64; 3]; 3]) -> Self {
        Self::new([m[0][0], m[1][1], m[2][2]], [m[0][1], m[0][2], m[1][2]])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match (i.min(j), i.max(j)) {
            (a, b) if a == b => self.diag[a],
            (0, 1) => self.off[0],
            (0, 2) => self.off[1],
            (1, 2) => self.off[2],
            _ => panic!("Sym3 index ({i}, {j}) out of range"),
        }
    }

    pub fn to_array(&self) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.get(i, j);
            }
        }
        out
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// Cofactor expansion along the first row.
    pub fn det(&self) -> f64 {
        let m = self.to_array();
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn max_abs(&self) -> f64 {
        self.diag
            .iter()
            .chain(self.off.iter())
            .fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    pub fn scale(&self, k: f64) -> Sym3 {
        Sym3::new(self.diag.map(|v| k * v), self.off.map(|v| k * v))
    }

    pub fn is_finite(&self) -> bool {
        self.diag
            .iter()
            .chain(self.off.iter())
            .all(|v| v.is_finite())
    }
}

const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues of a symmetric 3×3 matrix, sorted descending, by cyclic
/// Jacobi rotations.
///
/// Sweeps stop once the largest off-diagonal magnitude drops below `1e-14`
/// or after 100 sweeps.
pub fn eig_sym3(m: &Sym3) -> [f64; 3] {
    let mut a = m.to_array();
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off = a[0][1].abs().max(a[0][2].abs()).max(a[1][2].abs());
        if off < JACOBI_OFF_TOL {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            jacobi_rotate(&mut a, p, q);
        }
    }
    let mut e = [a[0][0], a[1][1], a[2][2]];
    e.sort_by(|x, y| y.total_cmp(x));
    e
}

// Annihilates a[p][q] with a plane rotation in the (p, q) plane.
fn jacobi_rotate(a: &mut [[f64; 3]; 3], p: usize, q: usize) {
    let apq = a[p][q];
    if apq == 0.0 {
        return;
    }
    let app = a[p][p];
    let aqq = a[q][q];
    let tau = (aqq - app) / (2.0 * apq);
    // smaller root of t² + 2τt − 1 = 0
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    a[p][p] = app - t * apq;
    a[q][q] = aqq + t * apq;
    a[p][q] = 0.0;
    a[q][p] = 0.0;
    let k = 3 - p - q;
    let akp = a[k][p];
    let akq = a[k][q];
    a[k][p] = c * akp - s * akq;
    a[p][k] = a[k][p];
    a[k][q] = s * akp + c * akq;
    a[q][k] = a[k][q];
}
