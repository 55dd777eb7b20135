use super::*;
use crate::smearing::{make_compact_quartic, make_gaussian, make_sub_gaussian, make_uniform_ball};
use alloc::vec;
use approx::assert_relative_eq;

const Y_EQUAL: f64 = 1.98832764428167;
const Y_TEN: f64 = 150.990098581391;

fn optimal(y: f64) -> RadialProfile {
    RadialProfile::optimal_gaussian(1.0, 1.0, y).unwrap()
}

#[test]
fn dirichlet_values() {
    let g = dirichlet_energy(&make_gaussian(1.0).unwrap()).unwrap();
    assert_relative_eq!(g.value, 0.375, max_relative = 1e-10);
    assert_eq!(g.length_power, -2);
    assert!(g.error_estimate >= 0.0);
    let g2 = dirichlet_energy(&make_gaussian(2.0).unwrap()).unwrap();
    assert_relative_eq!(g2.value, 0.09375, max_relative = 1e-10);
    let s = dirichlet_energy(&make_sub_gaussian(1.9, 1.0).unwrap()).unwrap();
    assert_relative_eq!(s.value, 0.37549107199601853638, max_relative = 1e-9);
}

#[test]
fn dirichlet_rejects_jumps() {
    assert!(matches!(
        dirichlet_energy(&make_uniform_ball(1.0).unwrap()),
        Err(Error::SingularProfile(_))
    ));
    assert!(matches!(dirichlet_energy(&optimal(Y_EQUAL)), Err(Error::SingularProfile(_))));
}

#[test]
fn grad_sq_values() {
    let g = grad_sq_functional(&make_gaussian(1.0).unwrap()).unwrap().value;
    let q = grad_sq_functional(&make_compact_quartic(1.0).unwrap()).unwrap().value;
    assert_relative_eq!(g, 0.0042090731748085912896, max_relative = 1e-10);
    assert_relative_eq!(q, 0.0028654439342676629382, max_relative = 1e-10);
    assert_relative_eq!(g / q, 1.46890788, max_relative = 1e-8);
}

#[test]
fn macro_feedback_values() {
    let b = macro_feedback_functional(&make_uniform_ball(1.0).unwrap()).unwrap().value;
    assert_relative_eq!(b, 3.3719110708995486687, max_relative = 1e-10);
    let g = macro_feedback_functional(&make_gaussian(1.0).unwrap()).unwrap().value;
    assert_relative_eq!(g, 3.5449077018110320546, max_relative = 1e-10);
    let g2 = macro_feedback_functional(&make_gaussian(2.0).unwrap()).unwrap().value;
    assert_relative_eq!(g2, g / 2.0, max_relative = 1e-10);
}

#[test]
fn gauss_gauss_closed_form() {
    assert_relative_eq!(i0_gauss_gauss_closed(1.0).unwrap(), 0.0171096318072640, max_relative = 1e-13);
    let literal = |eta: f64| {
        let s = libm::sqrt(1.0 + 2.0 * eta * eta);
        0.5 * (1.0 + 2.0 / core::f64::consts::PI * (eta * eta / s - 2.0 * libm::atan(s)))
    };
    for eta in [0.3, 0.5, 1.0, 2.0, 4.0, 10.0] {
        assert_relative_eq!(i0_gauss_gauss_closed(eta).unwrap(), literal(eta), max_relative = 1e-9);
    }
    assert!(i0_gauss_gauss_closed(1e-6).unwrap() < 1e-20);
    assert!(i0_gauss_gauss_closed(0.0).is_err());
}

#[test]
fn gauss_gauss_quadrature_agreement() {
    let c = make_gaussian(1.0).unwrap();
    for eta in [0.25, 1.0, 4.0] {
        let g = make_gaussian(1.0 / eta).unwrap();
        let quad = grav_functional_i0(&c, &g).unwrap().value;
        assert_relative_eq!(quad, i0_gauss_gauss_closed(eta).unwrap(), max_relative = 1e-8);
    }
}

#[test]
fn optimal_closed_form() {
    assert_relative_eq!(i0_gauss_optimal_closed(Y_EQUAL).unwrap(), 0.00768869518905193, max_relative = 1e-12);
    assert_relative_eq!(
        i0_gauss_optimal_literal(Y_EQUAL).unwrap(),
        i0_gauss_optimal_closed(Y_EQUAL).unwrap(),
        max_relative = 1e-12
    );
    assert_relative_eq!(i0_gauss_optimal_closed(10.0).unwrap(), 3.51581369152043858e-7, max_relative = 1e-12);
    assert_relative_eq!(i0_gauss_optimal_closed(0.1).unwrap(), 0.636733188381998346, max_relative = 1e-12);
    assert_relative_eq!(i0_gauss_optimal_closed(Y_TEN).unwrap(), 4.01339763439456030e-70, max_relative = 1e-10);
    // both branches of each piece meet
    for y in [0.5, 32.0] {
        let a = i0_gauss_optimal_closed(y * (1.0 - 1e-12)).unwrap();
        let b = i0_gauss_optimal_closed(y * (1.0 + 1e-12)).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-10);
    }
}

#[test]
fn optimal_quadrature_agreement() {
    let c = make_gaussian(1.0).unwrap();
    for y in [0.3, Y_EQUAL, 10.0, Y_TEN] {
        let q = grav_functional_i0(&c, &optimal(y)).unwrap().value;
        assert_relative_eq!(q, i0_gauss_optimal_closed(y).unwrap(), max_relative = 1e-8);
    }
}

#[test]
fn extreme_ratio_in_log_domain() {
    let ln = ln_i0_gauss_gauss_closed(0.1).unwrap() - ln_i0_gauss_optimal_closed(Y_TEN).unwrap();
    assert_relative_eq!(ln / core::f64::consts::LN_10, 62.4092908789, max_relative = 1e-10);
}

#[test]
fn pair_functional() {
    let c = make_gaussian(1.0).unwrap();
    let g = make_gaussian(1.0).unwrap();
    let at0 = pair_grav_functional(&c, &g, 0.0).unwrap().value;
    assert_relative_eq!(at0, grav_functional_i0(&c, &g).unwrap().value, max_relative = 1e-14);
    let at1 = pair_grav_functional(&c, &g, 1.0).unwrap().value;
    assert_relative_eq!(at1, 0.0157947722685974, max_relative = 1e-9);
    let tiny = pair_grav_functional(&c, &g, 1e-6).unwrap().value;
    assert_relative_eq!(tiny, at0, max_relative = 1e-8);
    let far = pair_grav_functional(&c, &g, 40.0).unwrap().value;
    assert!(far < 1e-3 * at0);
    // a non-Gaussian collapse profile takes the cumulative-moment route
    let q = make_compact_quartic(1.0).unwrap();
    let direct = pair_grav_functional(&q, &g, 0.0).unwrap().value;
    let near = pair_grav_functional(&q, &g, 1e-4).unwrap().value;
    assert_relative_eq!(direct, near, max_relative = 1e-6);
}

#[test]
fn two_particle_values() {
    let g = make_gaussian(1.0).unwrap();
    let v = two_particle_psl(&g, 1.0, 10.0, 1.0).unwrap().value;
    assert_relative_eq!(v, 0.413527, max_relative = 2e-6);
    let s = two_particle_psl(&make_sub_gaussian(1.9, 1.0).unwrap(), 1.0, 10.0, 1.0).unwrap().value;
    assert_relative_eq!(s, 0.412515, max_relative = 2e-6);
    let z = two_particle_psl(&g, 1.0, 10.0, 0.0).unwrap().value;
    assert_relative_eq!(z, 0.375, max_relative = 1e-9);
    let far = two_particle_psl(&g, 1.0, 10.0, 50.0).unwrap().value;
    assert!((far - 0.75).abs() < 1e-6);
    assert!(two_particle_psl(&g, 0.0, 1.0, 1.0).is_err());
}

#[test]
fn single_particle_triple() {
    let g = make_gaussian(1.0).unwrap();
    let c = PointConfig::new(vec![[0.0; 3]], vec![2.0]).unwrap();
    let h = point_config_heating(&g, &c, 1000, 1).unwrap();
    for v in [h.i_n.value, h.i_com.value, h.n_single.value] {
        assert_relative_eq!(v, 0.375, max_relative = 1e-10);
    }
}

#[test]
fn clustered_pair() {
    let g = make_gaussian(1.0).unwrap();
    let c = PointConfig::new(vec![[0.0; 3], [0.0; 3]], vec![1.0, 1.0]).unwrap();
    let h = point_config_heating(&g, &c, 20_000, 7).unwrap();
    assert!((h.i_n.value - 0.375).abs() < 4.0 * h.i_n.error_estimate);
    assert_relative_eq!(h.i_n.value, h.i_com.value, max_relative = 1e-12);
    assert_relative_eq!(h.n_single.value, 0.75, max_relative = 1e-10);
}

#[test]
fn sandwich_three_particles() {
    let g = make_gaussian(1.0).unwrap();
    let c = PointConfig::new(vec![[0.0; 3], [1.5, 0.0, 0.0], [0.3, 2.0, -1.0]], vec![1.0, 4.0, 9.0]).unwrap();
    let h = point_config_heating(&g, &c, 50_000, 11).unwrap();
    assert!(h.n_minus_com.holds(3.0));
    assert!(h.nsingle_minus_n.holds(3.0));
    assert!(h.single_minus_com.holds(3.0));
    assert!(h.i_com.value <= h.i_n.value && h.i_n.value <= h.n_single.value);
    // the mixture estimate of I[√g] is unbiased
    assert!((h.single_mc.value - 0.375).abs() < 4.0 * h.single_mc.error_estimate);
    // and the run is reproducible
    assert_eq!(h, point_config_heating(&g, &c, 50_000, 11).unwrap());
}

#[test]
fn non_gaussian_sampling() {
    let g = make_compact_quartic(1.0).unwrap();
    let exact = dirichlet_energy(&g).unwrap().value;
    let c = PointConfig::new(vec![[0.0; 3], [2.0, 0.0, 0.0]], vec![1.0, 1.0]).unwrap();
    let h = point_config_heating(&g, &c, 5000, 3).unwrap();
    assert!((h.single_mc.value - exact).abs() < 4.0 * h.single_mc.error_estimate);
}

#[test]
fn bad_configs() {
    assert!(PointConfig::new(vec![], vec![]).is_err());
    assert!(PointConfig::new(vec![[0.0; 3]], vec![-1.0]).is_err());
    assert!(PointConfig::new(vec![[0.0; 3]], vec![1.0, 2.0]).is_err());
}

#[test]
fn work_flux() {
    let c = PointConfig::new(vec![[0.0; 3], [1.0, 0.0, 0.0]], vec![1.0, 2.0])
        .unwrap()
        .with_velocities(vec![[0.0; 3]; 2])
        .unwrap();
    assert_eq!(newtonian_work_flux(&c).unwrap(), 0.0);
    let single = PointConfig::new(vec![[0.0; 3]], vec![3.0])
        .unwrap()
        .with_velocities(vec![[1.0, 2.0, 3.0]])
        .unwrap();
    assert_eq!(newtonian_work_flux(&single).unwrap(), 0.0);

    // symmetric approach along x
    let (m, x, v) = (5.0e3, 2.0, 0.3);
    let pos = |t: f64| vec![[-(x - v * t), 0.0, 0.0], [x - v * t, 0.0, 0.0]];
    let potential = |t: f64| {
        let p = pos(t);
        -G_NEWTON * m * m / (p[1][0] - p[0][0])
    };
    let c = PointConfig::new(pos(0.0), vec![m, m])
        .unwrap()
        .with_velocities(vec![[v, 0.0, 0.0], [-v, 0.0, 0.0]])
        .unwrap();
    let h = 1e-4;
    let dv = (potential(h) - potential(-h)) / (2.0 * h);
    assert_relative_eq!(newtonian_work_flux(&c).unwrap(), -dv, max_relative = 1e-8);

    let same = PointConfig::new(vec![[0.0; 3], [0.0; 3]], vec![1.0, 1.0])
        .unwrap()
        .with_velocities(vec![[0.0; 3]; 2])
        .unwrap();
    assert!(matches!(newtonian_work_flux(&same), Err(Error::CoincidentPoints { .. })));
}
