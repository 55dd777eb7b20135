use super::*;
use crate::numerics::QuadratureSpec;
use alloc::vec::Vec;
use approx::assert_relative_eq;
use core::f64::consts::PI;

fn families() -> Vec<RadialProfile> {
    alloc::vec![
        make_gaussian(1.3).unwrap(),
        make_sub_gaussian(1.9, 0.7).unwrap(),
        make_sub_gaussian(0.8, 1.0).unwrap(),
        make_compact_quartic(2.0).unwrap(),
        make_uniform_ball(0.5).unwrap(),
        RadialProfile::optimal_gaussian(1.0, 1.0, 1.98832764428167).unwrap(),
    ]
}

fn moment(p: &RadialProfile, k: i32) -> f64 {
    p.moment(k).unwrap()
}

#[test]
fn normalisation_and_variance() {
    for p in families() {
        assert_relative_eq!(moment(&p, 2), 1.0, max_relative = 1e-9);
        let s = p.scale();
        assert_relative_eq!(moment(&p, 4), 3.0 * s * s, max_relative = 1e-8);
    }
}

#[test]
fn gaussian_centre() {
    let g = make_gaussian(1.0).unwrap();
    assert_relative_eq!(g.density(0.0), 0.063493635934240969786, max_relative = 1e-14);
}

#[test]
fn sub_gaussian_degenerates_to_gaussian() {
    let a = make_gaussian(0.9).unwrap();
    let b = make_sub_gaussian(2.0, 0.9).unwrap();
    for i in 0..50 {
        let r = i as f64 * 0.1;
        assert_relative_eq!(a.density(r), b.density(r), max_relative = 1e-12);
    }
}

#[test]
fn sub_gaussian_alpha_value() {
    assert_relative_eq!(sub_gaussian_alpha(1.9).unwrap(), 1.3513424049403037424, max_relative = 1e-13);
    assert!(make_sub_gaussian(0.0, 1.0).is_err());
    assert!(make_sub_gaussian(-1.0, 1.0).is_err());
}

#[test]
fn quartic_support() {
    let q = make_compact_quartic(1.0).unwrap();
    assert_eq!(q.support_radius(), Some(3.0));
    assert_eq!(q.density(3.0), 0.0);
    assert_eq!(q.density(3.5), 0.0);
    assert!(q.density(2.9) > 0.0);
}

#[test]
fn scale_must_be_positive() {
    assert!(make_gaussian(0.0).is_err());
    assert!(make_gaussian(-1.0).is_err());
    assert!(make_compact_quartic(f64::NAN).is_err());
    assert!(make_uniform_ball(-2.0).is_err());
}

#[test]
fn ball_cumulative_and_potential() {
    let b = make_uniform_ball(1.0).unwrap();
    let radius = libm::sqrt(5.0);
    let d = derive(&b).unwrap();
    for r in [0.3, 1.0, 2.0] {
        assert_relative_eq!(d.enclosed_mass(r), libm::pow(r / radius, 3.0), max_relative = 1e-14);
    }
    assert_relative_eq!(d.potential(0.0), 1.5 / radius, max_relative = 1e-14);
    assert_relative_eq!(d.potential(3.0), 1.0 / 3.0, max_relative = 1e-14);
}

#[test]
fn gaussian_cumulative_value() {
    let d = derive(&make_gaussian(1.0).unwrap()).unwrap();
    assert_relative_eq!(d.enclosed_mass(1.0), 0.198748043098799, max_relative = 1e-12);
    assert_relative_eq!(d.enclosed_mass(40.0), 1.0, max_relative = 1e-15);
    assert_relative_eq!(d.potential(2.0), libm::erf(2.0 / core::f64::consts::SQRT_2) / 2.0, max_relative = 1e-13);
}

#[test]
fn closed_forms_match_quadrature() {
    // Rebuild each analytic family as a dense table and compare.
    for p in [make_gaussian(1.0).unwrap(), make_compact_quartic(1.0).unwrap()] {
        let d = derive(&p).unwrap();
        let spec = QuadratureSpec::with_scale(1.0);
        for r in [0.2, 0.9, 1.7, 2.5] {
            let q = crate::numerics::integrate(|m| 4.0 * PI * m * m * p.density(m), 0.0, r, &spec)
                .unwrap()
                .value;
            assert_relative_eq!(d.enclosed_mass(r), q, max_relative = 1e-10);
        }
    }
}

#[test]
fn potential_gradient_relation() {
    for p in families() {
        let d = derive(&p).unwrap();
        let s = p.scale();
        for i in 1..=20 {
            let r = s * i as f64 * 0.2;
            if p.support_radius().map_or(false, |rr| (r - rr).abs() < 1e-3 * s) {
                continue;
            }
            let h = 1e-5 * s;
            let fd = (d.potential(r + h) - d.potential(r - h)) / (2.0 * h);
            let scale = d.potential_gradient(r).abs().max(1e-3 / (s * s));
            assert!((fd - d.potential_gradient(r)).abs() < 1e-6 * scale, "r={r} fd={fd}");
        }
    }
}

#[test]
fn cumulative_is_monotone() {
    for p in families() {
        let d = derive(&p).unwrap();
        let s = p.scale();
        let mut prev = 0.0;
        assert_eq!(d.enclosed_mass(0.0), 0.0);
        for i in 1..=400 {
            let q = d.enclosed_mass(s * i as f64 * 0.025);
            assert!(q >= prev - 1e-14);
            prev = q;
        }
        assert_relative_eq!(d.enclosed_mass(1e4 * s), 1.0, max_relative = 1e-9);
        assert!(d.potential(1e4 * s) < 1.1e-4 / s);
    }
}

#[test]
fn tabulated_gaussian_roundtrip() {
    let r: Vec<f64> = (0..=400).map(|k| k as f64 * 0.02).collect();
    let g: Vec<f64> = r.iter().map(|&x| 2.0 * libm::exp(-x * x / 2.0)).collect();
    let t = RadialProfile::tabulated(&r, &g).unwrap();
    assert_relative_eq!(t.scale(), 1.0, max_relative = 1e-6);
    assert_relative_eq!(moment(&t, 2), 1.0, max_relative = 1e-9);
    let reference = make_gaussian(1.0).unwrap();
    assert_relative_eq!(t.density(0.7), reference.density(0.7), max_relative = 1e-6);
    let d = derive(&t).unwrap();
    assert_relative_eq!(d.enclosed_mass(1.0), 0.198748043098799, max_relative = 1e-6);
    assert_eq!(t.density(8.5), 0.0);
}

#[test]
fn rescaling_preserves_shape() {
    for p in families() {
        let u = p.unit();
        assert_relative_eq!(u.scale(), 1.0, max_relative = 1e-15);
        let s = p.scale();
        for r in [0.1, 0.5, 1.3] {
            let a = u.density(r);
            let b = p.density(r * s) * s * s * s;
            assert_relative_eq!(a, b, max_relative = 1e-12, epsilon = 1e-300);
        }
    }
}

#[test]
fn radius_for_mass_inverts() {
    for p in families() {
        let d = derive(&p).unwrap();
        for u in [0.01, 0.5, 0.97] {
            let r = d.radius_for_mass(u).unwrap();
            assert_relative_eq!(d.enclosed_mass(r), u, max_relative = 1e-10);
        }
    }
}

#[test]
fn grad_sq_over_density_consistent() {
    for p in families() {
        let s = p.scale();
        for r in [0.3 * s, 1.1 * s] {
            let g = p.density(r);
            let dg = p.derivative(r);
            if g > 0.0 {
                assert_relative_eq!(p.grad_sq_over_density(r), dg * dg / g, max_relative = 1e-10, epsilon = 1e-300);
            }
        }
    }
}
