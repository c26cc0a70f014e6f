use swanson_core::model::default_grid;
use swanson_core::twodim::{build_2d, check_constraint, verify_superintegrability, Integral, TwoDimModel};
use swanson_core::{ExtensionSpec, ModelParams};

fn system(
    p: [ModelParams; 2],
    ext: [Option<ExtensionSpec>; 2],
    n: (usize, usize),
) -> swanson_core::twodim::TwoDimSystem {
    let m = TwoDimModel::new(p, ext, n.0, n.1).unwrap();
    build_2d(&m, &default_grid(&p[0]), &default_grid(&p[1])).unwrap()
}

#[test]
fn non_hermitian_factors_with_commensurate_spacings() {
    // Omega_1 = 2 from (2.5, 0.9, 0.625), Omega_2 = 1
    let p = [ModelParams::new(2.5, 0.9, 0.625).unwrap(), ModelParams::oscillator(1.0).unwrap()];
    let sys = system(p, [None, None], (1, 2));
    assert!(check_constraint(&sys.model).satisfied);
    let r = verify_superintegrability(&sys, 40, 1e-2).unwrap();
    assert!(r.max_residual <= 1e-2, "{}", r.report);
    assert!(r.witness.is_some());
    let ground = sys.product_states(1).unwrap().remove(0);
    let want = sys.factors[0].exact_energy(0) + sys.factors[1].exact_energy(0);
    assert!((ground.energy - want).abs() <= 1e-4 * want);
}

#[test]
fn plain_residual_converges_second_order() {
    let p = [ModelParams::oscillator(2.0).unwrap(), ModelParams::oscillator(1.0).unwrap()];
    let m = TwoDimModel::new(p, [None, None], 1, 2).unwrap();
    let (g1, g2) = (default_grid(&p[0]), default_grid(&p[1]));
    let coarse = verify_superintegrability(&build_2d(&m, &g1, &g2).unwrap(), 30, 1e-5).unwrap().max_residual;
    let fine =
        verify_superintegrability(&build_2d(&m, &g1.refined(), &g2.refined()).unwrap(), 30, 1e-5).unwrap().max_residual;
    let ratio = coarse / fine;
    assert!((3.0..=5.0).contains(&ratio), "{coarse} {fine}");
}

#[test]
fn extended_factors_move_within_clusters() {
    let p = ModelParams::new(2.0, 0.5, 0.25).unwrap();
    let s = ExtensionSpec::new(2).unwrap();
    let sys = system([p, p], [Some(s.clone()), Some(s)], (1, 1));
    assert!(check_constraint(&sys.model).satisfied);
    let r = verify_superintegrability(&sys, 30, 1e-1).unwrap();
    assert!(r.report.measurement("largest norm fraction of X psi outside its cluster").unwrap() < 1e-4);
    assert!(r.report.check("I+ is the adjoint of I- (relative)").unwrap().pass);
    // K v_0 and K v_1 vanish, so I- annihilates (0, k) and (1, k)
    let s01 = sys.product_state(1, 0).unwrap();
    assert!(sys.apply_integral(Integral::IMinus, &s01).annihilated);
    let s21 = sys.product_state(2, 1).unwrap();
    assert!(!sys.apply_integral(Integral::IMinus, &s21).annihilated);
}

#[test]
fn negative_control_with_extended_factors() {
    let p1 = ModelParams::new(2.0, 0.5, 0.25).unwrap();
    let p2 = ModelParams::oscillator(1.0).unwrap();
    let sys = system([p1, p2], [Some(ExtensionSpec::new(2).unwrap()), None], (1, 1));
    assert!(!check_constraint(&sys.model).satisfied);
    let r = verify_superintegrability(&sys, 30, 1e-4).unwrap();
    assert!(r.control_detects_violation(p1.level_spacing()), "{}", r.max_residual);
}
