use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{build_operator_set, ExtensionSpec, OperatorSet, SusyError};
use crate::model::{gram_deviation, ModelParams};
use crate::numerics::{
    commutator, dagger, identity_residual, interior_norm, mat_mul, symmetric_eigensolve, Grid, OperatorMatrix,
    ProbeSet, HERMITICITY_TOLERANCE,
};
use crate::report::{Check, ResidualReport};

/// Overlap required between `K v_j` and the neighbouring eigenvector.
pub const LADDER_OVERLAP: f64 = 0.9999;

/// Relative norm below which a ladder image counts as annihilated.
pub const ANNIHILATION_TOLERANCE: f64 = 1e-4;

/// Weighted Gram matrix tolerance for the sampled eigenfunctions.
pub const GRAM_TOLERANCE: f64 = 1e-6;

fn neg(m: &OperatorMatrix) -> OperatorMatrix {
    -m
}

/// `h+ - omega/2 = A'A`, `h- - omega/2 = AA'` and their images
/// `H+ - omega/2 = theta' theta`, `H- - omega/2 = theta theta'`.
pub fn verify_factorization(os: &OperatorSet, tol: f64) -> Result<ResidualReport, SusyError> {
    let half = neg(&os.scalar(0.5 * os.params.omega()));
    let probes = os.probes();
    let hprobes = os.conjugated_probes();
    let mut r = ResidualReport::new();
    let pairs = [
        ("h+ - omega/2 = A'A", &os.h_plus, &os.a_dag, &os.a, &probes),
        ("h- - omega/2 = AA'", &os.h_minus, &os.a, &os.a_dag, &probes),
        ("H+ - omega/2 = theta'theta", &os.big_h_plus, &os.theta_dag, &os.theta, &hprobes),
        ("H- - omega/2 = theta theta'", &os.big_h_minus, &os.theta, &os.theta_dag, &hprobes),
    ];
    for (name, h, left, right, p) in pairs {
        let product = neg(&mat_mul(left, right)?);
        r.push(Check::at_most(name, identity_residual(&[h, &half, &product], p)?, tol));
    }
    Ok(r)
}

/// `A~ h~+ = h~- A~` and `A~' h~- = h~+ A~'` with `A~ = sqrt(J) A`.
pub fn verify_intertwining(os: &OperatorSet, tol: f64) -> Result<ResidualReport, SusyError> {
    let s = os.derived.j.sqrt();
    let at = s * &os.a;
    let at_dag = s * &os.a_dag;
    let probes = os.probes();
    let mut r = ResidualReport::new();
    let relations = [
        ("A~ h~+ = h~- A~", &at, &os.h_tilde, &os.h_tilde_minus),
        ("A~' h~- = h~+ A~'", &at_dag, &os.h_tilde_minus, &os.h_tilde),
    ];
    for (name, op, right, left) in relations {
        let lhs = mat_mul(op, right)?;
        let rhs = neg(&mat_mul(left, op)?);
        r.push(Check::at_most(name, identity_residual(&[&lhs, &rhs], &probes)?, tol));
    }
    r.measure("max per-state intertwining residual", intertwining_on_states(os, 8)?);
    Ok(r)
}

/// Largest relative residual of `(A~ h~+ - h~- A~) psi_n` over the sampled
/// oscillator eigenfunctions `n < count`.
pub fn intertwining_on_states(os: &OperatorSet, count: usize) -> Result<f64, SusyError> {
    let at = os.derived.j.sqrt() * &os.a;
    let lhs = mat_mul(&at, &os.h_tilde)?;
    let rhs = mat_mul(&os.h_tilde_minus, &at)?;
    let states = ProbeSet::hermite(os.grid, os.derived.delta, count);
    let mut worst: f64 = 0.0;
    for v in states.vectors() {
        let a = lhs.apply(v);
        let b = rhs.apply(v);
        let diff: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        worst = worst.max(interior_norm(&diff, &os.grid, None) / interior_norm(&a, &os.grid, None));
    }
    Ok(worst)
}

/// The four L-relations on the unextended `h+`, the four K-relations on
/// `h-`, ladder overlaps and annihilated states.
///
/// The L-relations use `E_tilde = 1`; the K-relations use `E_tilde = -2m-1`.
/// The cubic products are checked in the form
/// `J^2 K'K = (M + E_tilde - 1) M (M - 2)`, `J^2 KK' = (M + E_tilde + 1) M (M + 2)`
/// with `M = J h- - J omega / 2`. The sign of `[h-, K']` is measured.
pub fn verify_ladder_algebra(os: &OperatorSet, tol: f64) -> Result<ResidualReport, SusyError> {
    let j = os.derived.j;
    let omega = os.params.omega();
    let probes = os.probes();
    let mut r = ResidualReport::new();

    // unextended h+ = (1/J) h~ + omega/2 - 1/J
    let h1 = &((1.0 / j) * &os.h_tilde) + (0.5 * omega - 1.0 / j);
    let je = 1.0;
    let two_over_j = 2.0 / j;
    let comm = |a: &OperatorMatrix, b: &OperatorMatrix| commutator(a, b);

    let c = comm(&h1, &os.l)?;
    let t = two_over_j * &os.l;
    r.push(Check::at_most("[h+, L] = -(2/J) L", identity_residual(&[&c, &t], &probes)?, tol));
    let c = comm(&h1, &os.l_dag)?;
    let t = -two_over_j * &os.l_dag;
    r.push(Check::at_most("[h+, L'] = (2/J) L'", identity_residual(&[&c, &t], &probes)?, tol));

    let jh = j * &h1;
    for (name, left, right, offset) in [
        ("L'L = Jh+ - J omega/2 + JE - 1", &os.l_dag, &os.l, je - 1.0),
        ("LL' = Jh+ - J omega/2 + JE + 1", &os.l, &os.l_dag, je + 1.0),
    ] {
        let product = mat_mul(left, right)?;
        let rest = neg(&(&jh + (offset - 0.5 * j * omega)));
        r.push(Check::at_most(name, identity_residual(&[&product, &rest], &probes)?, tol));
    }

    let c = comm(&os.h_minus, &os.k)?;
    let t = two_over_j * &os.k;
    r.push(Check::at_most("[h-, K] = -(2/J) K", identity_residual(&[&c, &t], &probes)?, tol));

    let c = comm(&os.h_minus, &os.k_dag)?;
    let raising = identity_residual(&[&c, &(-two_over_j * &os.k_dag)], &probes)?;
    let lowering = identity_residual(&[&c, &(two_over_j * &os.k_dag)], &probes)?;
    let sign = if raising <= lowering { 1.0 } else { -1.0 };
    r.push(Check::at_most("[h-, K'] = s (2/J) K'", raising.min(lowering), tol));
    r.measure("sign s of [h-, K']", sign);
    r.measure("residual of [h-, K'] = -(2/J) K'", lowering);

    let e = os.spec.e_tilde();
    let m_op = &(j * &os.h_minus) + (-0.5 * j * omega);
    let poly = |a: f64, b: f64| -> Result<OperatorMatrix, SusyError> {
        Ok(mat_mul(&mat_mul(&(&m_op + a), &m_op)?, &(&m_op + b))?)
    };
    let kdk = mat_mul(&os.k_dag, &os.k)?;
    let kkd = mat_mul(&os.k, &os.k_dag)?;
    let p_low = neg(&poly(e - 1.0, -2.0)?);
    let p_high = neg(&poly(e + 1.0, 2.0)?);
    let j2 = j * j;
    r.push(Check::at_most(
        "J^2 K'K = (M + E - 1) M (M - 2)",
        identity_residual(&[&(j2 * &kdk), &p_low], &probes)?,
        tol,
    ));
    r.push(Check::at_most(
        "J^2 KK' = (M + E + 1) M (M + 2)",
        identity_residual(&[&(j2 * &kkd), &p_high], &probes)?,
        tol,
    ));
    r.measure("residual of K'K = (M + E - 1) M (M - 2) without J^2", identity_residual(&[&kdk, &p_low], &probes)?);

    ladder_action(os, &mut r)?;
    Ok(r)
}

fn euclid(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn overlap(u: &[Complex64], v: &[Complex64]) -> f64 {
    let dot: Complex64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
    dot.norm() / (euclid(u) * euclid(v))
}

/// `K v_j ~ v_{j-1}`, `K' v_j ~ v_{j+1}` on the eigenvectors of `h-`, and the
/// three annihilated images `K v_0`, `K v_1`, `K' v_0`.
fn ladder_action(os: &OperatorSet, r: &mut ResidualReport) -> Result<(), SusyError> {
    let eig = symmetric_eigensolve(&os.h_minus, 6)?;
    let v = &eig.eigenvectors;
    let images: Vec<Vec<Complex64>> = v.iter().map(|x| os.k.apply(x)).collect();
    let raised: Vec<Vec<Complex64>> = v.iter().map(|x| os.k_dag.apply(x)).collect();
    let mut worst: f64 = 1.0;
    for jj in 2..v.len() {
        worst = worst.min(overlap(&v[jj - 1], &images[jj]));
    }
    for jj in 1..v.len() - 1 {
        worst = worst.min(overlap(&v[jj + 1], &raised[jj]));
    }
    r.push(Check::at_least("K, K' move one extended level (min overlap)", worst, LADDER_OVERLAP));
    let lowered = euclid(&images[2]);
    let annihilated =
        [euclid(&images[0]) / lowered, euclid(&images[1]) / lowered, euclid(&raised[0]) / euclid(&raised[1])]
            .into_iter()
            .fold(0.0, f64::max);
    r.push(Check::at_most("K v_0, K v_1, K' v_0 annihilated (relative)", annihilated, ANNIHILATION_TOLERANCE));
    Ok(())
}

/// Relative sup-norm deviation of `eta M - M' eta`.
pub fn eta_deviation(eta: &OperatorMatrix, m: &OperatorMatrix) -> Result<f64, SusyError> {
    let left = mat_mul(eta, m)?;
    let right = mat_mul(&dagger(m), eta)?;
    Ok((&left - &right).sup_norm() / left.sup_norm())
}

/// `eta H = H' eta` for both constructions of `H+-`, plus the weighted Gram
/// matrix of the sampled eigenfunctions.
pub fn verify_pseudo_hermiticity(os: &OperatorSet, tol: f64) -> Result<ResidualReport, SusyError> {
    let mut r = ResidualReport::new();
    r.push(Check::at_most(
        "eta H+ = H+' eta (conjugation)",
        eta_deviation(&os.eta, &os.big_h_plus)?,
        HERMITICITY_TOLERANCE,
    ));
    r.push(Check::at_most(
        "eta H- = H-' eta (conjugation)",
        eta_deviation(&os.eta, &os.big_h_minus)?,
        HERMITICITY_TOLERANCE,
    ));
    let inv_eta: Vec<f64> = os.rho.iter().map(|x| 1.0 / (x * x)).collect();
    let probes = os.conjugated_probes().with_norm_weight(inv_eta);
    for (name, h) in [
        ("eta H+ = H+' eta (expression)", &os.big_h_plus_expr),
        ("eta H- = H-' eta (expression)", &os.big_h_minus_expr),
    ] {
        let left = mat_mul(&os.eta, h)?;
        let right = neg(&mat_mul(&dagger(h), &os.eta)?);
        r.push(Check::at_most(name, identity_residual(&[&left, &right], &probes)?, tol));
    }
    r.push(Check::at_most("H+ expression = H+ conjugation", os.expr_vs_conjugation.0, tol));
    r.push(Check::at_most("H- expression = H- conjugation", os.expr_vs_conjugation.1, tol));
    match gram_deviation(&os.params, &os.grid, 8) {
        Ok(dev) => r.push(Check::at_most("weighted Gram of psi_0..psi_7 = I", dev, GRAM_TOLERANCE)),
        Err(e) => r.note(format!("Gram check skipped: {e}")),
    }
    Ok(r)
}

/// Builds the set on `g` and on `g.refined()` and returns `(coarse, fine)`
/// values of `f`.
pub fn refinement_pair<F>(p: &ModelParams, s: &ExtensionSpec, g: &Grid, f: F) -> Result<(f64, f64), SusyError>
where
    F: Fn(&OperatorSet) -> Result<f64, SusyError>,
{
    let coarse = f(&build_operator_set(p, s, g)?)?;
    let fine = f(&build_operator_set(p, s, &g.refined())?)?;
    Ok((coarse, fine))
}

/// Offsets of the expanded `(omega, alpha, beta)` forms
///
/// `H+ = -(k/2) d^2 + (alpha - beta) x d + (omega + alpha + beta) x^2 / 2 + (2m - 1) Omega + (alpha - beta)/2 + omega/2`
///
/// `H- = ... + (alpha - beta)/2 + omega/2 + (beta - alpha) Delta^2 q(Delta x) + (m + 1) Omega / 2`,
/// `q = (H'/H)^2 - H''/H`, against the conjugation-built operators. Each
/// field is `true - expanded`, fitted as `c0 + c1 q + c2 x^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpandedFormOffsets {
    pub plus_constant: f64,
    pub plus_x2: f64,
    pub minus_constant: f64,
    pub minus_rational: f64,
    pub minus_x2: f64,
    /// Closed-form values of the three nonzero offsets:
    /// `(3 - 2m) Omega / 2`, `(m - 2) Omega / 2`, `Omega - (beta - alpha) Delta^2`.
    pub predicted: (f64, f64, f64),
}

pub fn expanded_form_offsets(os: &OperatorSet) -> Result<ExpandedFormOffsets, SusyError> {
    let p = &os.params;
    let (omega, alpha, beta) = (p.omega(), p.alpha(), p.beta());
    let (delta, big_omega) = (os.derived.delta, os.derived.level_spacing);
    let m = os.spec.m() as f64;
    let g = &os.grid;
    let seed = os.spec.seed();
    let q = |x: f64| {
        let (r1, r2) = seed.ratios(delta * x);
        r1 * r1 - r2
    };
    let d2 = crate::numerics::d2_matrix(g)?;
    let xd = mat_mul(&os.x, &os.d)?;
    let differential = &(-0.5 * p.kinetic() * &d2) + &((alpha - beta) * &xd);
    let base = |x: f64| 0.5 * (omega + alpha + beta) * x * x + 0.5 * (alpha - beta) + 0.5 * omega;
    let expanded_plus =
        &differential + &crate::numerics::diag_matrix_real(|x| base(x) + (2.0 * m - 1.0) * big_omega, g)?;
    let expanded_minus = &differential
        + &crate::numerics::diag_matrix_real(
            |x| base(x) + (beta - alpha) * delta * delta * q(x) + 0.5 * (m + 1.0) * big_omega,
            g,
        )?;

    // ground-state profile in the H-frame, nonzero everywhere
    let f: Vec<Complex64> = g
        .points()
        .iter()
        .zip(&os.rho)
        .map(|(&x, r)| Complex64::new((-0.5 * (delta * x).powi(2)).exp() / r, 0.0))
        .collect();
    let window: Vec<usize> = g.interior_indices().filter(|&i| (delta * g.point(i)).abs() <= 5.0).collect();
    let fit = |truth: &OperatorMatrix, expanded: &OperatorMatrix| -> [f64; 3] {
        let diff = truth - expanded;
        let df = diff.apply(&f);
        let a = DMatrix::from_fn(window.len(), 3, |row, col| {
            let x = g.point(window[row]);
            [1.0, q(x), x * x][col]
        });
        let b = DVector::from_iterator(window.len(), window.iter().map(|&i| df[i].re / f[i].re));
        let sol = a.svd(true, true).solve(&b, 1e-14).expect("svd with both factors");
        [sol[0], sol[1], sol[2]]
    };
    let plus = fit(&os.big_h_plus, &expanded_plus);
    let minus = fit(&os.big_h_minus, &expanded_minus);
    Ok(ExpandedFormOffsets {
        plus_constant: plus[0],
        plus_x2: plus[2],
        minus_constant: minus[0],
        minus_rational: minus[1],
        minus_x2: minus[2],
        predicted: (
            0.5 * (3.0 - 2.0 * m) * big_omega,
            0.5 * (m - 2.0) * big_omega,
            big_omega - (beta - alpha) * delta * delta,
        ),
    })
}
