//! Rotation–diagonal–rotation factorization of rebit channels.
//!
//! Every affine channel `(A, w)` factors as `σ_{R₁} ∘ C_D ∘ σ_{R₂}` where the
//! outer maps are Bloch rotations and `C_D` acts as `v ↦ s + D v` with
//! `D = diag(λ₁, λ₂)` and `s = R₁ᵗ w`.
//!
//! The factorization is not unique. This module fixes the convention
//! `λ₁ = σ₁ ≥ |λ₂| = σ₂` with `λ₂ < 0` exactly when `det A < 0`; a pair of
//! negative signs is a rotation by π and is folded into `R₁`. When the two
//! singular values coincide `R₂` is the identity.

use crate::channel::{orthogonal_channel, AffineChannel};
use crate::linalg::{svd2, Mat2, Rotation2, Vec2};

/// `A = R₁ · diag(λ₁, λ₂) · R₂`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixFactors {
    pub left: Rotation2,
    pub lambda: (f64, f64),
    pub right: Rotation2,
}

impl MatrixFactors {
    pub fn reconstruct(&self) -> Mat2 {
        self.left.matrix() * Mat2::diag(self.lambda.0, self.lambda.1) * self.right.matrix()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalForm {
    pub theta1: f64,
    pub theta2: f64,
    pub lambda: (f64, f64),
    /// Shift expressed in the diagonal frame, `R₁ᵗ w`.
    pub shift: Vec2,
}

impl CanonicalForm {
    pub fn identity() -> Self {
        Self {
            theta1: 0.0,
            theta2: 0.0,
            lambda: (1.0, 1.0),
            shift: Vec2::ZERO,
        }
    }

    /// The middle factor `C_D` as an affine channel.
    pub fn diagonal_part(&self) -> AffineChannel {
        AffineChannel::diagonal(self.lambda.0, self.lambda.1, self.shift)
    }

    pub fn left(&self) -> Rotation2 {
        Rotation2::new(self.theta1)
    }

    pub fn right(&self) -> Rotation2 {
        Rotation2::new(self.theta2)
    }

    /// Largest entrywise deviation of `reconstruct(self)` from `c`.
    pub fn residual(&self, c: &AffineChannel) -> f64 {
        let back = reconstruct(self);
        (back.a - c.a).max_abs().max((back.w - c.w).max_abs())
    }
}

const REFLECT: Mat2 = Mat2::diag(1.0, -1.0);

/// Splits an orthogonal matrix into a rotation and, when its determinant is
/// negative, the reflection `diag(1, −1)` on the right: `O = R·𝓘`.
fn split_reflection(o: &Mat2) -> (Mat2, bool) {
    if o.det() < 0.0 {
        (*o * REFLECT, true)
    } else {
        (*o, false)
    }
}

/// Factors `A` as `R₁ · diag(λ₁, λ₂) · R₂` with rotations `R₁, R₂`.
///
/// Starting from `A = O₁ Σ O₂ᵗ`, each `O_j` is written `R_j 𝓘` with
/// `𝓘 ∈ {I, diag(1, −1)}`. Since `𝓘` commutes with `Σ` and squares to the
/// identity, matching reflections cancel; a single one flips the sign of
/// `σ₂`.
pub fn canonical_decompose(a: &Mat2) -> MatrixFactors {
    let svd = svd2(a);
    let (r1, left_reflects) = split_reflection(&svd.left);
    let (r2, right_reflects) = split_reflection(&svd.right);
    let lambda2 = if svd.s2 == 0.0 {
        0.0
    } else if left_reflects != right_reflects {
        -svd.s2
    } else {
        svd.s2
    };
    MatrixFactors {
        left: Rotation2::from_matrix(&r1),
        lambda: (svd.s1, lambda2),
        right: Rotation2::from_matrix(&r2.transpose()),
    }
}

pub fn decompose_channel(c: &AffineChannel) -> CanonicalForm {
    let f = canonical_decompose(&c.a);
    CanonicalForm {
        theta1: f.left.angle(),
        theta2: f.right.angle(),
        lambda: f.lambda,
        shift: f.left.inverse().matrix() * c.w,
    }
}

pub fn reconstruct(f: &CanonicalForm) -> AffineChannel {
    let r1 = f.left().matrix();
    AffineChannel::new(
        r1 * Mat2::diag(f.lambda.0, f.lambda.1) * f.right().matrix(),
        r1 * f.shift,
    )
}

/// `C` rebuilt as the composition of three channels: the two orthogonal
/// conjugations (by `Ω = R(θ/2)`, which rotates the Bloch disk by `θ`) around
/// the diagonal map.
pub fn as_composition(f: &CanonicalForm) -> AffineChannel {
    let outer = |theta: f64| {
        orthogonal_channel(Rotation2::new(0.5 * theta).matrix())
            .expect("rotation matrices are orthogonal")
            .as_affine()
    };
    outer(f.theta1)
        .compose(&f.diagonal_part())
        .compose(&outer(f.theta2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rotation_matrix;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

    fn angle_close(a: f64, b: f64) -> bool {
        let d = (a - b).rem_euclid(TAU);
        d.min(TAU - d) < 1e-12
    }

    fn mat_strategy() -> impl Strategy<Value = Mat2> {
        prop::array::uniform4(-2.0..2.0f64).prop_map(|v| Mat2::new(v[0], v[1], v[2], v[3]))
    }

    #[test]
    fn diagonal_input_is_already_canonical() {
        let f = canonical_decompose(&Mat2::diag(0.5, 0.3));
        assert_eq!(f.left.angle(), 0.0);
        assert_eq!(f.right.angle(), 0.0);
        assert_eq!(f.lambda, (0.5, 0.3));
    }

    #[test]
    fn swap_matrix_is_quarter_turn_times_reflection() {
        let a = Mat2::new(0.0, 1.0, 1.0, 0.0);
        let f = canonical_decompose(&a);
        assert!(angle_close(f.left.angle(), FRAC_PI_2));
        assert_eq!(f.right.angle(), 0.0);
        assert!((f.lambda.0 - 1.0).abs() < 1e-15 && (f.lambda.1 + 1.0).abs() < 1e-15);
        assert!((f.reconstruct() - a).max_abs() < 1e-12);
    }

    #[test]
    fn rotated_diagonal() {
        let a = rotation_matrix(FRAC_PI_4) * Mat2::diag(0.8, 0.2);
        let f = canonical_decompose(&a);
        assert!(angle_close(f.left.angle(), FRAC_PI_4));
        assert!(angle_close(f.right.angle(), 0.0));
        assert!((f.lambda.0 - 0.8).abs() < 1e-12 && (f.lambda.1 - 0.2).abs() < 1e-12);
        assert!((f.reconstruct() - a).max_abs() < 1e-10);
    }

    #[test]
    fn zero_matrix() {
        let f = canonical_decompose(&Mat2::ZERO);
        assert_eq!(f.lambda, (0.0, 0.0));
        assert_eq!(f.left, Rotation2::IDENTITY);
        assert_eq!(f.right, Rotation2::IDENTITY);
    }

    #[test]
    fn negative_pair_is_folded_into_left_rotation() {
        let f = canonical_decompose(&Mat2::diag(-0.6, -0.6));
        assert!((f.lambda.0 - 0.6).abs() < 1e-15 && (f.lambda.1 - 0.6).abs() < 1e-15);
        assert!(angle_close(f.left.angle(), std::f64::consts::PI));
        assert_eq!(f.right.angle(), 0.0);
    }

    #[test]
    fn channel_examples() {
        let f = decompose_channel(&AffineChannel::IDENTITY);
        assert_eq!(f, CanonicalForm::identity());

        let c = AffineChannel::diagonal(0.5, 0.3, Vec2::new(0.1, 0.2));
        let f = decompose_channel(&c);
        assert_eq!((f.theta1, f.theta2), (0.0, 0.0));
        assert_eq!(f.lambda, (0.5, 0.3));
        assert_eq!(f.shift, Vec2::new(0.1, 0.2));

        let c = AffineChannel::new(
            rotation_matrix(FRAC_PI_2) * Mat2::diag(0.6, 0.4),
            Vec2::new(0.2, 0.0),
        );
        let f = decompose_channel(&c);
        assert!(angle_close(f.theta1, FRAC_PI_2));
        assert!((f.lambda.0 - 0.6).abs() < 1e-12 && (f.lambda.1 - 0.4).abs() < 1e-12);
        assert!((f.shift - Vec2::new(0.0, -0.2)).max_abs() < 1e-12);
        assert!(f.residual(&c) <= 1e-10);
    }

    #[test]
    fn reconstruct_examples() {
        assert_eq!(
            reconstruct(&CanonicalForm::identity()),
            AffineChannel::IDENTITY
        );
        let f = CanonicalForm {
            theta1: FRAC_PI_2,
            theta2: 0.0,
            lambda: (1.0, -1.0),
            shift: Vec2::ZERO,
        };
        let c = reconstruct(&f);
        assert!((c.a - Mat2::new(0.0, 1.0, 1.0, 0.0)).max_abs() < 1e-15);
        assert_eq!(c.w, Vec2::ZERO);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn round_trip_and_invariants(a in mat_strategy(), w in prop::array::uniform2(-1.0..1.0f64)) {
            let c = AffineChannel::new(a, w.into());
            let f = decompose_channel(&c);
            prop_assert!(f.residual(&c) <= 1e-10);
            prop_assert!(f.lambda.0 >= 0.0 && f.lambda.0 >= f.lambda.1.abs());
            prop_assert!((a.det() - f.lambda.0 * f.lambda.1).abs() <= 1e-10);
            prop_assert!(a.det() * f.lambda.1 >= 0.0 || f.lambda.1 == 0.0);
            let svd = svd2(&a);
            prop_assert!((f.lambda.0 - svd.s1).abs() <= 1e-10);
            prop_assert!((f.lambda.1.abs() - svd.s2).abs() <= 1e-10);
            for r in [f.left(), f.right()] {
                let m = r.matrix();
                prop_assert!(m.orthogonality_defect() <= 1e-12);
                prop_assert!((m.det() - 1.0).abs() <= 1e-12);
            }
            prop_assert!((0.0..TAU).contains(&f.theta1) && (0.0..TAU).contains(&f.theta2));
        }

        #[test]
        fn composition_of_channels_matches(a in mat_strategy(), w in prop::array::uniform2(-1.0..1.0f64)) {
            let c = AffineChannel::new(a, w.into());
            let f = decompose_channel(&c);
            let via = as_composition(&f);
            prop_assert!((via.a - c.a).max_abs() <= 1e-12);
            prop_assert!((via.w - c.w).max_abs() <= 1e-12);
        }
    }
}
