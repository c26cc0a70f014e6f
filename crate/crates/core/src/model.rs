//! Swanson model parameters, the constants derived from them, and the closed
//! forms of the Hermitian-equivalent oscillator.

use thiserror::Error;

use crate::numerics::{hermite_functions, weighted_inner, Grid, NumericsError, WaveSample};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("parameter {name} is not finite")]
    NonFinite { name: &'static str },
    #[error("invariant violated: omega - alpha - beta > 0 (got {value})")]
    KineticNotPositive { value: f64 },
    #[error("invariant violated: omega^2 - 4 alpha beta > 0 (got {value})")]
    SpectrumNotReal { value: f64 },
    #[error("eigenfunctions do not decay: lambda + Delta^2 = {value} must be positive")]
    NonDecaying { value: f64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// `(omega, alpha, beta)` of `omega a'a + alpha a^2 + beta a'^2 + omega/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    omega: f64,
    alpha: f64,
    beta: f64,
}

impl ModelParams {
    pub fn new(omega: f64, alpha: f64, beta: f64) -> Result<Self, ModelError> {
        for (name, v) in [("omega", omega), ("alpha", alpha), ("beta", beta)] {
            if !v.is_finite() {
                return Err(ModelError::NonFinite { name });
            }
        }
        let kinetic = omega - alpha - beta;
        if kinetic <= 0.0 {
            return Err(ModelError::KineticNotPositive { value: kinetic });
        }
        let disc = omega * omega - 4.0 * alpha * beta;
        if disc <= 0.0 {
            return Err(ModelError::SpectrumNotReal { value: disc });
        }
        Ok(Self { omega, alpha, beta })
    }

    /// Plain oscillator `alpha = beta = 0`.
    pub fn oscillator(omega: f64) -> Result<Self, ModelError> {
        Self::new(omega, 0.0, 0.0)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `omega - alpha - beta`.
    pub fn kinetic(&self) -> f64 {
        self.omega - self.alpha - self.beta
    }

    /// `sqrt(omega^2 - 4 alpha beta)`.
    pub fn level_spacing(&self) -> f64 {
        (self.omega * self.omega - 4.0 * self.alpha * self.beta).sqrt()
    }

    pub fn is_hermitian(&self) -> bool {
        self.alpha == self.beta
    }
}

/// Constants induced by [`ModelParams`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedParams {
    /// Similarity exponent, `rho = exp(lambda x^2 / 2)`.
    pub lambda: f64,
    /// Length rescale `z = delta x`.
    pub delta: f64,
    /// Energy rescale `2 / Omega`.
    pub j: f64,
    /// Level spacing `Omega = sqrt(omega^2 - 4 alpha beta)`.
    pub level_spacing: f64,
    /// Factorization energy in x-units, `E_tilde / J`.
    pub factorization_energy: f64,
}

impl DerivedParams {
    /// Same constants with the factorization energy set from its
    /// dimensionless value.
    pub fn with_factorization_energy(mut self, e_tilde: f64) -> Self {
        self.factorization_energy = e_tilde / self.j;
        self
    }

    /// `J * E`.
    pub fn e_tilde(&self) -> f64 {
        self.j * self.factorization_energy
    }
}

/// `(lambda, Delta, J, Omega, E)` with the unextended factorization energy
/// `E_tilde = 1`.
pub fn derive_params(p: &ModelParams) -> DerivedParams {
    let kinetic = p.kinetic();
    let level_spacing = p.level_spacing();
    let j = 2.0 / level_spacing;
    DerivedParams {
        lambda: (p.beta - p.alpha) / kinetic,
        delta: (level_spacing / kinetic).sqrt(),
        j,
        level_spacing,
        factorization_energy: 1.0 / j,
    }
}

/// Potential part of the Hermitian equivalent `h`:
/// `x^2 (omega^2 - 4 alpha beta) / (2 (omega - alpha - beta)) + omega / 2`.
pub fn hermitian_potential(p: &ModelParams, x: f64) -> f64 {
    0.5 * x * x * (p.omega * p.omega - 4.0 * p.alpha * p.beta) / p.kinetic() + 0.5 * p.omega
}

/// `omega/2 + (n + 1/2) Omega`.
pub fn exact_energy(n: usize, p: &ModelParams) -> f64 {
    0.5 * p.omega + (n as f64 + 0.5) * p.level_spacing()
}

/// Metric weight `exp(lambda x^2)` on the grid.
pub fn weight_vector(p: &ModelParams, g: &Grid) -> Vec<f64> {
    let lambda = derive_params(p).lambda;
    g.points().iter().map(|x| (lambda * x * x).exp()).collect()
}

/// Similarity factor `rho = exp(lambda x^2 / 2)` on the grid.
pub fn rho_vector(p: &ModelParams, g: &Grid) -> Vec<f64> {
    let lambda = derive_params(p).lambda;
    g.points().iter().map(|x| (0.5 * lambda * x * x).exp()).collect()
}

/// Default x-grid for a model: `L = 10` and 2001 points in `z = delta x`.
pub fn default_grid(p: &ModelParams) -> Grid {
    Grid::in_x_units(Grid::DEFAULT_HALF_WIDTH, Grid::DEFAULT_POINTS, derive_params(p).delta)
        .expect("default grid is valid")
}

/// `psi_n(x) ~ exp(-x^2 (lambda + Delta^2) / 2) H_n(Delta x)`, normalized to
/// unit norm under the weight `exp(lambda x^2)`.
pub fn eigenfunction(n: usize, p: &ModelParams, g: &Grid) -> Result<WaveSample, ModelError> {
    let d = derive_params(p);
    let decay = d.lambda + d.delta * d.delta;
    if decay <= 0.0 {
        return Err(ModelError::NonDecaying { value: decay });
    }
    let values: Vec<f64> = g
        .points()
        .iter()
        .map(|&x| (-0.5 * d.lambda * x * x).exp() * hermite_functions(d.delta * x, n + 1)[n])
        .collect();
    let sample = WaveSample::from_real(*g, &values)?;
    Ok(sample.normalized(&weight_vector(p, g))?)
}

/// Largest entry of `|G - I|` for the weighted Gram matrix of
/// `psi_0 .. psi_{count-1}`.
pub fn gram_deviation(p: &ModelParams, g: &Grid, count: usize) -> Result<f64, ModelError> {
    let w = weight_vector(p, g);
    let states = (0..count).map(|n| eigenfunction(n, p, g)).collect::<Result<Vec<_>, _>>()?;
    let mut worst: f64 = 0.0;
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((weighted_inner(a, b, &w)? - want).norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swanson() -> ModelParams {
        ModelParams::new(2.0, 0.5, 0.25).unwrap()
    }

    #[test]
    fn derived_constants() {
        let d = derive_params(&swanson());
        assert!((d.lambda + 0.2).abs() < 1e-15);
        assert!((d.level_spacing - 3.5f64.sqrt()).abs() < 1e-15);
        assert!((d.level_spacing - 1.8708287).abs() < 1e-7);
        assert!((d.j * d.level_spacing - 2.0).abs() < 1e-15);
        assert!((d.delta.powi(4) * 1.25f64.powi(2) - 3.5).abs() < 1e-12);
        assert!((d.factorization_energy - d.level_spacing / 2.0).abs() < 1e-15);

        let o = derive_params(&ModelParams::oscillator(1.0).unwrap());
        assert_eq!((o.lambda, o.delta, o.j, o.level_spacing), (0.0, 1.0, 2.0, 1.0));
    }

    #[test]
    fn invariant_violations_are_named() {
        assert!(matches!(ModelParams::new(1.0, 1.0, 1.0), Err(ModelError::KineticNotPositive { .. })));
        assert!(matches!(ModelParams::new(1.0, -2.0, -2.0), Err(ModelError::SpectrumNotReal { .. })));
        assert!(matches!(ModelParams::new(f64::NAN, 0.0, 0.0), Err(ModelError::NonFinite { name: "omega" })));
        let msg = ModelParams::new(1.0, 1.0, 1.0).unwrap_err().to_string();
        assert!(msg.contains("omega - alpha - beta > 0"), "{msg}");
    }

    #[test]
    fn potential_examples() {
        let osc = ModelParams::oscillator(1.0).unwrap();
        assert!((hermitian_potential(&osc, 1.0) - 1.0).abs() < 1e-15);
        assert!((hermitian_potential(&swanson(), 0.0) - 1.0).abs() < 1e-15);
        assert!((hermitian_potential(&swanson(), 1.0) - 2.4).abs() < 1e-14);
    }

    #[test]
    fn energies() {
        assert!((exact_energy(0, &ModelParams::oscillator(1.0).unwrap()) - 1.0).abs() < 1e-15);
        assert!((exact_energy(0, &swanson()) - 1.9354144).abs() < 1e-7);
        assert!((exact_energy(3, &swanson()) - (1.0 + 3.5 * 3.5f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn weights() {
        let g = Grid::new(2.0, 5).unwrap();
        assert_eq!(weight_vector(&ModelParams::oscillator(1.0).unwrap(), &g), vec![1.0; 5]);
        let w = weight_vector(&swanson(), &g);
        assert_eq!(w[2], 1.0);
        assert!((w[4] - 0.449329).abs() < 1e-6);
    }

    #[test]
    fn ground_state_is_normalized_gaussian() {
        let p = ModelParams::oscillator(1.0).unwrap();
        let g = default_grid(&p);
        let psi = eigenfunction(0, &p, &g).unwrap();
        let peak = psi.values()[g.centre()].re;
        for (i, v) in psi.values().iter().enumerate() {
            let x = g.point(i);
            assert!((v.re - peak * (-0.5 * x * x).exp()).abs() < 1e-14);
        }
        let one = weighted_inner(&psi, &psi, &weight_vector(&p, &g)).unwrap();
        assert!((one.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn odd_state_is_antisymmetric() {
        let p = swanson();
        let g = default_grid(&p);
        let psi = eigenfunction(1, &p, &g).unwrap();
        let n = g.n_points();
        for i in 0..n {
            assert!((psi.values()[i] + psi.values()[n - 1 - i]).norm() < 1e-14);
        }
    }

    #[test]
    fn weighted_norm_of_second_state() {
        let p = swanson();
        let g = default_grid(&p);
        let psi = eigenfunction(2, &p, &g).unwrap();
        let nrm = weighted_inner(&psi, &psi, &weight_vector(&p, &g)).unwrap();
        assert!((nrm.re - 1.0).abs() < 1e-8);
    }

    #[test]
    fn gram_matrix_is_identity() {
        let p = swanson();
        assert!(gram_deviation(&p, &default_grid(&p), 8).unwrap() < 1e-6);
    }

    #[test]
    fn non_decaying_regime_is_reported() {
        // valid parameters with alpha - beta > Omega
        let p = ModelParams::new(1.0, 0.5, -3.0).unwrap();
        let g = Grid::new(5.0, 101).unwrap();
        assert!(matches!(eigenfunction(0, &p, &g), Err(ModelError::NonDecaying { .. })));
    }
}
