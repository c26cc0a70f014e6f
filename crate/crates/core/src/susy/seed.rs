use num_bigint::BigInt;

use super::SusyError;
use crate::model::{DerivedParams, ModelParams};
use crate::numerics::{d2_matrix, diag_matrix_real, symmetric_eigensolve, Grid, SpectralReport, WaveSample};
use crate::poly::{derivative, pseudo_hermite, Polynomial};

/// Pseudo-Hermite seed data for an even index `m`, including `m = 0`.
#[derive(Clone, Debug)]
pub struct Seed {
    m: usize,
    poly: Polynomial,
}

impl Seed {
    pub fn new(m: usize) -> Result<Self, SusyError> {
        if !m.is_multiple_of(2) {
            return Err(SusyError::InvalidSeed { m, reason: "odd pseudo-Hermite polynomials have a real zero" });
        }
        Ok(Self { m, poly: pseudo_hermite(m) })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    /// `E_tilde = -2m - 1`.
    pub fn energy(&self) -> f64 {
        -(2.0 * self.m as f64 + 1.0)
    }

    /// `(H'/H, H''/H)` at `z`.
    pub fn ratios(&self, z: f64) -> (f64, f64) {
        self.poly.log_derivative_ratios(z)
    }

    /// `W(z) = -z - H'/H`.
    pub fn superpotential(&self, z: f64) -> f64 {
        -z - self.ratios(z).0
    }

    /// `V(z) = z^2 - 2 [H''/H - (H'/H)^2 + 1]`.
    pub fn partner_potential(&self, z: f64) -> f64 {
        let (r1, r2) = self.ratios(z);
        z * z - 2.0 * (r2 - r1 * r1 + 1.0)
    }

    /// `phi(z) = H(z) exp(z^2 / 2)`.
    pub fn seed_value(&self, z: f64) -> f64 {
        self.poly.eval_with_derivatives(z).0 * (0.5 * z * z).exp()
    }
}

/// The 1-step extension with seed index `m` (even, `m >= 2`).
#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    seed: Seed,
}

impl ExtensionSpec {
    pub fn new(m: usize) -> Result<Self, SusyError> {
        if m < 2 {
            return Err(SusyError::InvalidSeed { m, reason: "the extension needs m >= 2" });
        }
        Ok(Self { seed: Seed::new(m)? })
    }

    pub fn m(&self) -> usize {
        self.seed.m
    }

    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    /// Factorization energy in z-units, `-2m - 1`.
    pub fn e_tilde(&self) -> f64 {
        self.seed.energy()
    }

    /// Factorization energy in x-units, `E_tilde / J`.
    pub fn energy(&self, d: &DerivedParams) -> f64 {
        self.e_tilde() / d.j
    }
}

/// Seed sampled on a z-grid with the sup-norm residual of
/// `(-d^2/dz^2 + z^2 - E_tilde) phi`.
#[derive(Clone, Debug)]
pub struct SeedSample {
    pub sample: WaveSample,
    pub ode_residual: f64,
}

/// Samples `phi_m` on `g` (z-units).
///
/// The ODE residual is `(-H'' - 2z H' + 2m H) exp(z^2/2)`, formed with exact
/// integer coefficients before evaluation.
pub fn seed_sample(m: usize, g: &Grid) -> Result<SeedSample, SusyError> {
    let spec = ExtensionSpec::new(m)?;
    let h = spec.seed.polynomial();
    let h1 = derivative(h);
    let h2 = derivative(&h1);
    let two_z = Polynomial::new(vec![BigInt::from(0), BigInt::from(2)]);
    let residual_poly = &(&h.scale_by(&BigInt::from(2 * m)) - &h2) - &(&two_z * &h1);
    let ode_residual = g
        .points()
        .iter()
        .map(|&z| (residual_poly.eval_with_derivatives(z).0 * (0.5 * z * z).exp()).abs())
        .fold(0.0, f64::max);
    let sample = WaveSample::sample(*g, |z| spec.seed.seed_value(z))?;
    Ok(SeedSample { sample, ode_residual })
}

pub fn superpotential_tilde(m: usize, z: f64) -> Result<f64, SusyError> {
    Ok(Seed::new(m)?.superpotential(z))
}

pub fn partner_potential_tilde(m: usize, z: f64) -> Result<f64, SusyError> {
    Ok(Seed::new(m)?.partner_potential(z))
}

fn schrodinger_spectrum<F: Fn(f64) -> f64>(v: F, g: &Grid, k: usize, label: &str) -> Result<SpectralReport, SusyError> {
    let kinetic = -1.0 * &d2_matrix(g)?;
    let h = (&kinetic + &diag_matrix_real(v, g)?).with_label(label);
    Ok(symmetric_eigensolve(&h, k)?)
}

/// Lowest `k` eigenvalues of `-d^2/dz^2 + V(z)` for the extended partner
/// potential, on the z-grid `g`.
pub fn extended_spectrum(p: &ModelParams, s: &ExtensionSpec, g: &Grid, k: usize) -> Result<SpectralReport, SusyError> {
    let seed = s.seed();
    Ok(schrodinger_spectrum(|z| seed.partner_potential(z), g, k, "h~-")?
        .with_param("omega", p.omega())
        .with_param("alpha", p.alpha())
        .with_param("beta", p.beta())
        .with_param("m", s.m() as f64)
        .with_param("E_tilde", s.e_tilde()))
}

/// Ground-state seed path (`W = z`, `E_tilde = 1`): the partner is the
/// translated oscillator `z^2 + 2`.
pub fn unextended_partner_spectrum(g: &Grid, k: usize) -> Result<SpectralReport, SusyError> {
    schrodinger_spectrum(|z| z * z + 2.0, g, k, "h~- (unextended)")
}

/// Lowest `k` eigenvalues of `-d^2/dz^2 + z^2` on `g`.
pub fn oscillator_spectrum(g: &Grid, k: usize) -> Result<SpectralReport, SusyError> {
    schrodinger_spectrum(|z| z * z, g, k, "h~")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_examples() {
        let g = Grid::new(5.0, 101).unwrap();
        let s = seed_sample(2, &g).unwrap();
        assert_eq!(s.ode_residual, 0.0);
        assert_eq!(s.sample.values()[g.centre()].re, 2.0);
        let i1 = g.centre() + 10;
        assert_eq!(g.point(i1), 1.0);
        assert!((s.sample.values()[i1].re - 6.0 * 0.5f64.exp()).abs() < 1e-12);
        assert!((s.sample.values()[i1].re - 9.892_327_6).abs() < 1e-6);
        assert_eq!(seed_sample(6, &g).unwrap().ode_residual, 0.0);
    }

    #[test]
    fn invalid_seeds_rejected() {
        let g = Grid::new(5.0, 101).unwrap();
        assert!(matches!(seed_sample(3, &g), Err(SusyError::InvalidSeed { m: 3, .. })));
        assert!(matches!(seed_sample(0, &g), Err(SusyError::InvalidSeed { m: 0, .. })));
        assert!(ExtensionSpec::new(1).is_err());
        assert!(superpotential_tilde(5, 0.0).is_err());
    }

    #[test]
    fn superpotential_examples() {
        assert_eq!(superpotential_tilde(2, 0.0).unwrap(), 0.0);
        assert!((superpotential_tilde(2, 1.0).unwrap() + 7.0 / 3.0).abs() < 1e-15);
        assert_eq!(superpotential_tilde(4, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn partner_potential_examples() {
        assert!((partner_potential_tilde(2, 0.0).unwrap() + 10.0).abs() < 1e-14);
        assert!((partner_potential_tilde(2, 9.0).unwrap() - 79.0).abs() < 0.05);
        let z = 0.5f64.sqrt();
        assert!((partner_potential_tilde(2, z).unwrap() + 1.5).abs() < 1e-14);
        // closed form z^2 - 2 + (16 z^2 - 8)/(2 z^2 + 1)^2
        for z in [-3.0, -0.4, 0.0, 1.3, 6.0] {
            let closed = z * z - 2.0 + (16.0 * z * z - 8.0) / (2.0 * z * z + 1.0f64).powi(2);
            assert!((partner_potential_tilde(2, z).unwrap() - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_index_is_ground_state_path() {
        // m = 0: W = -z, V = z^2 - 2
        assert_eq!(superpotential_tilde(0, 1.5).unwrap(), -1.5);
        assert!((partner_potential_tilde(0, 1.5).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn factorization_energy() {
        let s = ExtensionSpec::new(4).unwrap();
        assert_eq!(s.e_tilde(), -9.0);
        let d = crate::model::derive_params(&ModelParams::new(2.0, 0.5, 0.25).unwrap());
        assert!((s.energy(&d) * d.j + 9.0).abs() < 1e-14);
    }

    #[test]
    fn unextended_partner_is_translated_oscillator() {
        let g = Grid::default_grid();
        let r = unextended_partner_spectrum(&g, 4).unwrap();
        for (n, e) in r.eigenvalues.iter().enumerate() {
            assert!((e - (2.0 * n as f64 + 3.0)).abs() < 1e-3, "{n}: {e}");
        }
    }
}
