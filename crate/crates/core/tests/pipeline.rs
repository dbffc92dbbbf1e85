use rebit::bloch::state_polar;
use rebit::canonical::as_composition;
use rebit::linalg::rotation_matrix;
use rebit::*;

#[test]
fn sampled_unital_channels_map_states_to_states() {
    for c in rebit::classify::sample_cp_channels(11, 200, true) {
        for k in 0..36 {
            let rho = state_polar(1.0, k as f64 * 0.1745).unwrap();
            let out = c.apply(&rho).unwrap();
            assert!(out.bloch().norm() <= 1.0 + 1e-12);
        }
    }
}

#[test]
fn decomposition_rebuilds_sampled_channels() {
    for c in rebit::classify::sample_cp_channels(12, 200, false) {
        let f = decompose_channel(&c);
        assert!(f.residual(&c) <= 1e-10);
        let via = as_composition(&f);
        assert!((via.a - c.a).max_abs() <= 1e-12 && (via.w - c.w).max_abs() <= 1e-12);
        assert_eq!(is_cp(&c).is_cp, is_cp(&f.diagonal_part()).is_cp);
    }
}

#[test]
fn dressed_phase_flip_keeps_its_family() {
    let pf = AffineChannel::diagonal(0.7, 1.0, Vec2::ZERO);
    let dressed = AffineChannel::new(
        rotation_matrix(0.4) * pf.a * rotation_matrix(1.1),
        Vec2::ZERO,
    );
    assert!(matches!(
        classify(&pf).unwrap(),
        ChannelClass::PhaseFlip { .. }
    ));
    assert!(matches!(
        classify(&dressed).unwrap(),
        ChannelClass::PhaseFlip { .. }
    ));
    assert_eq!(kraus_rank(&dressed).unwrap(), 3);
}

#[test]
fn non_cp_maps_get_an_ellipse_but_no_class() {
    let c = AffineChannel::diagonal(1.0, -1.0, Vec2::ZERO);
    assert_eq!(classify(&c), Err(RebitError::NotCompletelyPositive));
    let e = image_ellipse(&c);
    assert_eq!(e.semi_axes, (1.0, 1.0));
}
