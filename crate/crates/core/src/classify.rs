//! Named channel families, Kraus rank and the image ellipse.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::TAU;

use crate::channel::AffineChannel;
use crate::cp::{chi_matrix, in_pentagon, is_cp, q_values, shift_region_contains, working_frame};
use crate::error::{RebitError, Result};
use crate::linalg::{rotation_matrix, Mat2, Vec2};

/// Matching tolerance for the named families.
pub const MATCH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl Axis {
    pub fn as_str(self) -> &'static str {
        match self {
            Axis::Horizontal => "horizontal",
            Axis::Vertical => "vertical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelClass {
    Identity,
    PhaseFlip {
        fixed_axis: Axis,
        p: f64,
    },
    Depolarizing {
        r: f64,
        reflect_1: bool,
        reflect_2: bool,
    },
    CompletelyDepolarizing,
    Linear {
        axis: Axis,
        q: f64,
    },
    General {
        rank: u8,
        unital: bool,
    },
}

impl ChannelClass {
    pub fn name(&self) -> &'static str {
        match self {
            ChannelClass::Identity => "Identity",
            ChannelClass::PhaseFlip { .. } => "PhaseFlip",
            ChannelClass::Depolarizing { .. } => "Depolarizing",
            ChannelClass::CompletelyDepolarizing => "CompletelyDepolarizing",
            ChannelClass::Linear { .. } => "Linear",
            ChannelClass::General { .. } => "General",
        }
    }
}

pub fn kraus_rank(c: &AffineChannel) -> Result<u8> {
    let report = is_cp(c);
    if !report.is_cp {
        return Err(RebitError::NotCompletelyPositive);
    }
    Ok(report.kraus_rank)
}

/// First matching family in the order Identity, CompletelyDepolarizing,
/// Depolarizing, PhaseFlip, Linear, General.
pub fn classify(c: &AffineChannel) -> Result<ChannelClass> {
    let report = is_cp(c);
    if !report.is_cp {
        return Err(RebitError::NotCompletelyPositive);
    }
    let f = working_frame(c);
    let (l1, l2) = f.lambda;
    let unital = f.shift.norm() <= MATCH_TOL;
    let near = |x: f64, y: f64| (x - y).abs() <= MATCH_TOL;

    if !unital {
        return Ok(ChannelClass::General {
            rank: report.kraus_rank,
            unital,
        });
    }
    let class = if near(l1, 1.0) && near(l2, 1.0) {
        ChannelClass::Identity
    } else if near(l1, 0.0) && near(l2, 0.0) {
        ChannelClass::CompletelyDepolarizing
    } else if near(l1.abs(), l2.abs()) {
        ChannelClass::Depolarizing {
            r: l1.abs(),
            reflect_1: l1 < 0.0,
            reflect_2: l2 < 0.0,
        }
    } else if near(l2, 1.0) && l1 >= -MATCH_TOL {
        ChannelClass::PhaseFlip {
            fixed_axis: Axis::Vertical,
            p: (1.0 - l1).min(1.0),
        }
    } else if near(l1, 1.0) && l2 >= -MATCH_TOL {
        ChannelClass::PhaseFlip {
            fixed_axis: Axis::Horizontal,
            p: (1.0 - l2).min(1.0),
        }
    } else if near(l2, 0.0) {
        ChannelClass::Linear {
            axis: Axis::Horizontal,
            q: l1,
        }
    } else if near(l1, 0.0) {
        ChannelClass::Linear {
            axis: Axis::Vertical,
            q: l2,
        }
    } else {
        ChannelClass::General {
            rank: report.kraus_rank,
            unital,
        }
    };
    Ok(class)
}

/// Image of the Bloch disk: `center + R(tilt)·(a₁ cos t, a₂ sin t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImageEllipse {
    pub center: Vec2,
    pub semi_axes: (f64, f64),
    pub tilt: f64,
}

impl ImageEllipse {
    pub fn point_at(&self, t: f64) -> Vec2 {
        let (s, c) = t.sin_cos();
        self.center
            + rotation_matrix(self.tilt) * Vec2::new(self.semi_axes.0 * c, self.semi_axes.1 * s)
    }

    pub fn is_degenerate(&self) -> bool {
        self.semi_axes.0 == 0.0 || self.semi_axes.1 == 0.0
    }

    /// `(d₁/a₁)² + (d₂/a₂)² − 1` where `d = R(−tilt)(p − center)`.
    /// Meaningless for degenerate ellipses.
    pub fn residual(&self, p: Vec2) -> f64 {
        let d = rotation_matrix(-self.tilt) * (p - self.center);
        let (a1, a2) = self.semi_axes;
        (d.x / a1).powi(2) + (d.y / a2).powi(2) - 1.0
    }

    /// Largest norm over `n` equally spaced boundary points.
    pub fn max_norm(&self, n: usize) -> f64 {
        (0..n)
            .map(|k| self.point_at(TAU * k as f64 / n as f64).norm())
            .fold(0.0, f64::max)
    }
}

pub fn image_ellipse(c: &AffineChannel) -> ImageEllipse {
    let f = working_frame(c);
    ImageEllipse {
        center: c.w,
        semi_axes: (f.lambda.0.abs(), f.lambda.1.abs()),
        tilt: f.theta1,
    }
}

/// Draws a CP channel: scales uniform over the pentagon, shift (unless
/// `unital`) uniform over the admissible shift region, dressing angles
/// uniform. Deterministic in `seed`.
pub fn sample_cp_channel(seed: u64, unital: bool) -> AffineChannel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(&mut rng, unital)
}

/// `count` channels drawn in sequence from one generator seeded with `seed`.
pub fn sample_cp_channels(seed: u64, count: usize, unital: bool) -> Vec<AffineChannel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sample_with(&mut rng, unital)).collect()
}

pub fn sample_with<R: Rng>(rng: &mut R, unital: bool) -> AffineChannel {
    loop {
        let (l1, l2) = sample_scales(rng);
        let s = if unital {
            Vec2::ZERO
        } else {
            sample_shift(rng, l1, l2)
        };
        let r1 = rotation_matrix(rng.gen_range(0.0..TAU));
        let r2 = rotation_matrix(rng.gen_range(0.0..TAU));
        let c = AffineChannel::new(r1 * Mat2::diag(l1, l2) * r2, r1 * s);
        if is_cp(&c).is_cp {
            return c;
        }
    }
}

pub fn sample_scales<R: Rng>(rng: &mut R) -> (f64, f64) {
    loop {
        let l1 = rng.gen_range(-1.0..=1.0);
        let l2 = rng.gen_range(-1.0..=1.0);
        if in_pentagon(l1, l2) {
            return (l1, l2);
        }
    }
}

// Rejection from the box |w₁| ≤ 2√(q₀q₁), |w₂| ≤ 2√(q₀q₂), which contains
// the region.
fn sample_shift<R: Rng>(rng: &mut R, l1: f64, l2: f64) -> Vec2 {
    let [q0, q1, q2] = q_values(l1, l2).map(|q| q.max(0.0));
    let h1 = 2.0 * (q0 * q1).sqrt();
    let h2 = 2.0 * (q0 * q2).sqrt();
    loop {
        let w1 = rng.gen_range(-h1..=h1);
        let w2 = rng.gen_range(-h2..=h2);
        if shift_region_contains(l1, l2, w1, w2).inside {
            return Vec2::new(w1, w2);
        }
    }
}

/// Rank of the diagonal map with the given parameters, no frame change.
pub fn diagonal_rank(l1: f64, l2: f64, w1: f64, w2: f64) -> u8 {
    chi_matrix(l1, l2, w1, w2).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::is_unital;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn diag(l1: f64, l2: f64) -> AffineChannel {
        AffineChannel::diagonal(l1, l2, Vec2::ZERO)
    }

    #[test]
    fn kraus_rank_examples() {
        assert_eq!(kraus_rank(&diag(-1.0, 0.0)).unwrap(), 1);
        assert_eq!(kraus_rank(&diag(0.0, -1.0)).unwrap(), 1);
        assert_eq!(kraus_rank(&diag(0.0, 1.0)).unwrap(), 2);
        assert_eq!(kraus_rank(&AffineChannel::IDENTITY).unwrap(), 3);
        assert!(matches!(
            kraus_rank(&diag(1.0, -1.0)),
            Err(RebitError::NotCompletelyPositive)
        ));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&AffineChannel::IDENTITY).unwrap(),
            ChannelClass::Identity
        );
        assert_eq!(
            classify(&diag(0.7, 1.0)).unwrap(),
            ChannelClass::PhaseFlip {
                fixed_axis: Axis::Vertical,
                p: 1.0 - 0.7
            }
        );
        assert_eq!(
            classify(&diag(1.0, 0.7)).unwrap(),
            ChannelClass::PhaseFlip {
                fixed_axis: Axis::Horizontal,
                p: 1.0 - 0.7
            }
        );
        assert_eq!(
            classify(&diag(0.5, 0.5)).unwrap(),
            ChannelClass::Depolarizing {
                r: 0.5,
                reflect_1: false,
                reflect_2: false
            }
        );
        assert_eq!(
            classify(&diag(0.5, -0.5)).unwrap(),
            ChannelClass::Depolarizing {
                r: 0.5,
                reflect_1: false,
                reflect_2: true
            }
        );
        assert_eq!(
            classify(&diag(0.0, 0.0)).unwrap(),
            ChannelClass::CompletelyDepolarizing
        );
        assert_eq!(
            classify(&diag(0.4, 0.0)).unwrap(),
            ChannelClass::Linear {
                axis: Axis::Horizontal,
                q: 0.4
            }
        );
        assert_eq!(
            classify(&diag(0.0, -0.3)).unwrap(),
            ChannelClass::Linear {
                axis: Axis::Vertical,
                q: -0.3
            }
        );
        assert_eq!(
            classify(&diag(0.6, 0.3)).unwrap(),
            ChannelClass::General {
                rank: 3,
                unital: true
            }
        );
        assert_eq!(
            classify(&AffineChannel::diagonal(0.5, 0.5, Vec2::new(0.2, 0.0))).unwrap(),
            ChannelClass::General {
                rank: 3,
                unital: false
            }
        );
        assert!(classify(&diag(1.0, -1.0)).is_err());
    }

    #[test]
    fn rotations_classify_as_identity() {
        assert_eq!(
            classify(&AffineChannel::rotation(0.8)).unwrap(),
            ChannelClass::Identity
        );
    }

    #[test]
    fn ellipse_examples() {
        let e = image_ellipse(&AffineChannel::IDENTITY);
        assert_eq!(e.center, Vec2::ZERO);
        assert_eq!(e.semi_axes, (1.0, 1.0));
        assert_eq!(e.tilt, 0.0);

        let e = image_ellipse(&AffineChannel::diagonal(0.8, 0.2, Vec2::new(0.1, 0.0)));
        assert_eq!(e.center, Vec2::new(0.1, 0.0));
        assert_eq!(e.semi_axes, (0.8, 0.2));
        assert_eq!(e.tilt, 0.0);

        let e = image_ellipse(&diag(0.0, 0.0));
        assert_eq!(e.semi_axes, (0.0, 0.0));
        assert!(e.is_degenerate());
        assert_eq!(e.point_at(1.0), Vec2::ZERO);

        let c = AffineChannel::new(
            rotation_matrix(FRAC_PI_2) * Mat2::diag(0.6, 0.4),
            Vec2::ZERO,
        );
        let e = image_ellipse(&c);
        assert!((e.tilt - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn sampler_is_deterministic() {
        assert_eq!(sample_cp_channel(42, false), sample_cp_channel(42, false));
        assert_eq!(sample_cp_channel(42, true), sample_cp_channel(42, true));
        assert_ne!(sample_cp_channel(42, false), sample_cp_channel(43, false));
        let batch = sample_cp_channels(42, 3, false);
        assert_eq!(batch[0], sample_cp_channel(42, false));
        assert_eq!(batch, sample_cp_channels(42, 3, false));
    }

    #[test]
    fn sampled_channels_are_cp() {
        for seed in 0..1000 {
            let c = sample_cp_channel(seed, true);
            assert!(is_cp(&c).is_cp && is_unital(&c), "seed {seed}");
            let c = sample_cp_channel(seed, false);
            assert!(is_cp(&c).is_cp, "seed {seed}");
        }
    }

    #[test]
    fn unital_samples_stay_in_disk() {
        for seed in 0..1000 {
            let c = sample_cp_channel(seed, true);
            for k in 0..360 {
                let v = Vec2::from_polar(1.0, TAU * k as f64 / 360.0);
                assert!(c.map_bloch(v).norm() <= 1.0 + 1e-9, "seed {seed}");
            }
        }
    }

    #[test]
    fn boundary_images_lie_on_ellipse() {
        for seed in 0..1000 {
            let c = sample_cp_channel(seed, seed % 2 == 0);
            let e = image_ellipse(&c);
            if e.semi_axes.0 < 1e-3 || e.semi_axes.1 < 1e-3 {
                continue;
            }
            for k in 0..360 {
                let v = Vec2::from_polar(1.0, TAU * k as f64 / 360.0);
                assert!(e.residual(c.map_bloch(v)).abs() <= 1e-9, "seed {seed}");
            }
        }
    }

    #[test]
    fn rank_on_pentagon_edges() {
        for i in 0..=100 {
            let t = i as f64 / 100.0;
            // λ₂ = λ₁ + 1, λ₂ = λ₁ − 1, λ₁ + λ₂ = −1
            for (l1, l2) in [(t - 1.0, t), (t, t - 1.0), (-t, t - 1.0)] {
                let expect = if i == 0 || i == 100 { 1 } else { 2 };
                let expect = if (l1, l2) == (0.0, 1.0) || (l1, l2) == (1.0, 0.0) {
                    2
                } else {
                    expect
                };
                assert_eq!(diagonal_rank(l1, l2, 0.0, 0.0), expect, "({l1}, {l2})");
            }
        }
    }

    proptest! {
        #[test]
        fn classification_is_rotation_invariant(seed in any::<u64>(), t1 in 0.0..TAU, t2 in 0.0..TAU, unital in any::<bool>()) {
            let c = sample_cp_channel(seed, unital);
            let f = working_frame(&c);
            // stay away from the band where the dressed verdict may flip
            let r = crate::cp::cp_conditions(f.lambda.0, f.lambda.1, f.shift.x, f.shift.y);
            prop_assume!(r.margin > 1e-7 && r.q.iter().all(|&q| q > 1e-7));
            let d = AffineChannel::rotation(t1)
                .compose(&c)
                .compose(&AffineChannel::rotation(t2));
            prop_assert_eq!(classify(&d).unwrap().name(), classify(&c).unwrap().name());
            prop_assert_eq!(kraus_rank(&d).unwrap(), kraus_rank(&c).unwrap());
        }
    }
}
