use num_complex::Complex64;

use super::{ExtensionSpec, SusyError};
use crate::model::{derive_params, rho_vector, DerivedParams, ModelParams};
use crate::numerics::{
    conjugate_by_diagonal, d1_matrix, d2_matrix, dagger, diag_matrix_real, identity_residual, mat_mul, Grid,
    OperatorMatrix, ProbeSet,
};

/// Number of Hermite-function probes used for interior residuals.
pub const PROBE_COUNT: usize = 4;

/// Every operator of the 1-step extension on one x-grid.
///
/// Lower-case `h` are the Hermitian equivalents, upper-case `H` their
/// non-Hermitian images `rho^{-1} h rho`. The `_expr` variants are assembled
/// from the explicit differential expressions instead of by conjugation.
#[derive(Clone, Debug)]
pub struct OperatorSet {
    pub params: ModelParams,
    pub derived: DerivedParams,
    pub spec: ExtensionSpec,
    pub grid: Grid,
    pub rho: Vec<f64>,
    pub a: OperatorMatrix,
    pub a_dag: OperatorMatrix,
    pub l: OperatorMatrix,
    pub l_dag: OperatorMatrix,
    pub k: OperatorMatrix,
    pub k_dag: OperatorMatrix,
    pub theta: OperatorMatrix,
    pub theta_dag: OperatorMatrix,
    pub h_plus: OperatorMatrix,
    pub h_minus: OperatorMatrix,
    pub h_tilde: OperatorMatrix,
    pub h_tilde_minus: OperatorMatrix,
    pub big_h_plus: OperatorMatrix,
    pub big_h_minus: OperatorMatrix,
    pub big_h_plus_expr: OperatorMatrix,
    pub big_h_minus_expr: OperatorMatrix,
    pub x: OperatorMatrix,
    pub d: OperatorMatrix,
    pub eta: OperatorMatrix,
    /// Interior residuals of `H_expr - H` for `(H+, H-)`.
    pub expr_vs_conjugation: (f64, f64),
}

fn scaled(c: f64, m: &OperatorMatrix) -> OperatorMatrix {
    c * m
}

fn shifted(m: &OperatorMatrix, c: f64) -> OperatorMatrix {
    m + c
}

/// Builds the full operator set on the x-grid `g`.
pub fn build_operator_set(p: &ModelParams, s: &ExtensionSpec, g: &Grid) -> Result<OperatorSet, SusyError> {
    let derived = derive_params(p).with_factorization_energy(s.e_tilde());
    let (delta, j, lambda) = (derived.delta, derived.j, derived.lambda);
    let seed = s.seed();
    let d = d1_matrix(g)?.with_label("D");
    let d2 = d2_matrix(g)?;
    let x = diag_matrix_real(|x| x, g)?.with_label("X");
    let x2 = diag_matrix_real(|x| x * x, g)?;

    let w = diag_matrix_real(|x| seed.superpotential(delta * x), g)?;
    let a = scaled(1.0 / j.sqrt(), &(&scaled(1.0 / delta, &d) + &w)).with_label("A");
    let a_dag = dagger(&a).with_label("A'");
    let l = (&scaled(1.0 / delta, &d) + &scaled(delta, &x)).with_label("L");
    let l_dag = dagger(&l).with_label("L'");

    let kinetic = scaled(-1.0 / (delta * delta), &d2);
    let h_tilde = (&kinetic + &scaled(delta * delta, &x2)).with_label("h~");
    let h_tilde_minus = (&kinetic + &diag_matrix_real(|x| seed.partner_potential(delta * x), g)?).with_label("h~-");
    let shift = 0.5 * p.omega() - derived.factorization_energy;
    let h_plus = shifted(&scaled(1.0 / j, &h_tilde), shift).with_label("h+");
    let h_minus = shifted(&scaled(1.0 / j, &h_tilde_minus), shift).with_label("h-");

    let k = mat_mul(&mat_mul(&a, &l)?, &a_dag)?.with_label("K");
    let k_dag = dagger(&k).with_label("K'");

    let rho = rho_vector(p, g);
    let inv_rho: Vec<f64> = rho.iter().map(|r| 1.0 / r).collect();
    let conj = |m: &OperatorMatrix, label: &str| -> Result<OperatorMatrix, SusyError> {
        Ok(conjugate_by_diagonal(m, &inv_rho)?.with_label(label))
    };
    let theta = conj(&a, "theta")?;
    let theta_dag = conj(&a_dag, "theta'")?;
    let big_h_plus = conj(&h_plus, "H+")?;
    let big_h_minus = conj(&h_minus, "H-")?;

    // (1/(J Delta^2)) (-d^2 - 2 lambda x d + (Delta^4 - lambda^2) x^2 - lambda + c(x)) + omega/2
    let c = 1.0 / (j * delta * delta);
    let m = s.m() as f64;
    let core = &(&scaled(-1.0, &d2) - &scaled(2.0 * lambda, &mat_mul(&x, &d)?))
        + &diag_matrix_real(|x| (delta.powi(4) - lambda * lambda) * x * x - lambda, g)?;
    let plus_const = delta * delta * (1.0 + 2.0 * m);
    let big_h_plus_expr = shifted(&scaled(c, &shifted(&core, plus_const)), 0.5 * p.omega()).with_label("H+ expr");
    let minus_extra = diag_matrix_real(
        |x| {
            let (r1, r2) = seed.ratios(delta * x);
            delta * delta * (2.0 * (r1 * r1 - r2) + 2.0 * m - 1.0)
        },
        g,
    )?;
    let big_h_minus_expr = shifted(&scaled(c, &(&core + &minus_extra)), 0.5 * p.omega()).with_label("H- expr");

    let eta = diag_matrix_real(|x| (lambda * x * x).exp(), g)?.with_label("eta");

    let probes = h_frame_probes(g, delta, &rho);
    let expr_vs_conjugation = (
        identity_residual(&[&big_h_plus_expr, &-&big_h_plus], &probes)?,
        identity_residual(&[&big_h_minus_expr, &-&big_h_minus], &probes)?,
    );

    for op in [&a, &k, &theta, &big_h_plus, &big_h_minus, &big_h_plus_expr, &big_h_minus_expr, &eta] {
        op.check_finite()?;
    }

    Ok(OperatorSet {
        params: *p,
        derived,
        spec: s.clone(),
        grid: *g,
        rho,
        a,
        a_dag,
        l,
        l_dag,
        k,
        k_dag,
        theta,
        theta_dag,
        h_plus,
        h_minus,
        h_tilde,
        h_tilde_minus,
        big_h_plus,
        big_h_minus,
        big_h_plus_expr,
        big_h_minus_expr,
        x,
        d,
        eta,
        expr_vs_conjugation,
    })
}

/// Hermite functions of `Delta x`.
pub(crate) fn h_frame_base(g: &Grid, delta: f64) -> ProbeSet {
    ProbeSet::hermite(*g, delta, PROBE_COUNT)
}

/// The same probes carried to the non-Hermitian frame by `rho^{-1}`.
pub(crate) fn h_frame_probes(g: &Grid, delta: f64, rho: &[f64]) -> ProbeSet {
    let inv: Vec<f64> = rho.iter().map(|r| 1.0 / r).collect();
    h_frame_base(g, delta).conjugated(&inv)
}

impl OperatorSet {
    /// Probe block for identities between the Hermitian operators.
    pub fn probes(&self) -> ProbeSet {
        h_frame_base(&self.grid, self.derived.delta)
    }

    /// Probe block for identities between the `rho^{-1} . rho` images.
    pub fn conjugated_probes(&self) -> ProbeSet {
        h_frame_probes(&self.grid, self.derived.delta, &self.rho)
    }

    pub fn identity(&self) -> OperatorMatrix {
        OperatorMatrix::identity(self.grid)
    }

    /// `c * I` on the set's grid.
    pub fn scalar(&self, c: f64) -> OperatorMatrix {
        crate::numerics::scalar_mul(Complex64::new(c, 0.0), &self.identity())
    }

    /// Operators by their expression-language names.
    pub fn named(&self) -> Vec<(&'static str, &OperatorMatrix)> {
        vec![
            ("A", &self.a),
            ("L", &self.l),
            ("K", &self.k),
            ("theta", &self.theta),
            ("thetadag", &self.theta_dag),
            ("hplus", &self.h_plus),
            ("hminus", &self.h_minus),
            ("htilde", &self.h_tilde),
            ("htildeminus", &self.h_tilde_minus),
            ("Hplus", &self.big_h_plus),
            ("Hminus", &self.big_h_minus),
            ("HplusExpr", &self.big_h_plus_expr),
            ("HminusExpr", &self.big_h_minus_expr),
            ("X", &self.x),
            ("D", &self.d),
            ("eta", &self.eta),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::default_grid;

    #[test]
    fn hermitian_limit_collapses_similarity() {
        let p = ModelParams::new(2.0, 0.3, 0.3).unwrap();
        let g = default_grid(&p);
        let os = build_operator_set(&p, &ExtensionSpec::new(2).unwrap(), &g).unwrap();
        assert_eq!(os.derived.lambda, 0.0);
        let diff = &os.big_h_plus - &os.h_plus;
        assert!(diff.sup_norm() <= 1e-12 * os.h_plus.sup_norm());
        assert!(os.h_plus.hermiticity_deviation() <= 1e-12);
        assert!(os.h_minus.hermiticity_deviation() <= 1e-12);
    }

    #[test]
    fn non_hermitian_images_when_alpha_differs_from_beta() {
        let p = ModelParams::new(2.0, 0.5, 0.25).unwrap();
        let g = default_grid(&p);
        let os = build_operator_set(&p, &ExtensionSpec::new(2).unwrap(), &g).unwrap();
        assert!(os.big_h_plus.hermiticity_deviation() > 1e-6);
        assert!(os.big_h_minus.hermiticity_deviation() > 1e-6);
        for op in [&os.a, &os.l, &os.k, &os.h_minus] {
            assert_eq!(op.grid(), &g);
        }
    }

    #[test]
    fn expression_and_conjugation_agree_with_second_order() {
        let p = ModelParams::new(2.0, 0.5, 0.25).unwrap();
        let s = ExtensionSpec::new(2).unwrap();
        let g = default_grid(&p);
        let coarse = build_operator_set(&p, &s, &g).unwrap().expr_vs_conjugation;
        let fine = build_operator_set(&p, &s, &g.refined()).unwrap().expr_vs_conjugation;
        assert!(coarse.0 <= 1e-4 && coarse.1 <= 1e-4, "{coarse:?}");
        assert!(fine.1 <= 2.6e-5, "{fine:?}");
        let ratio = coarse.1 / fine.1;
        assert!((3.0..=5.0).contains(&ratio), "{ratio}");
    }
}
