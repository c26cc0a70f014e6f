//! Two decoupled 1D factors (plain or 1-step extended) and the ladder-power
//! integrals `A = h1 - h2`, `I- = X1^n1 Y2^n2`, `I+ = Y1^n1 X2^n2`,
//! `B1 = I- - I+`, `B2 = I- + I+`, with `X` lowering and `Y` raising.
//!
//! Commutators with `h = h1 + h2` are evaluated by their action on separable
//! eigenstates, so nothing of size `N^2` is ever formed: every 2D vector is a
//! short sum of tensor products `a (x) b` and its norm follows from the 1D
//! Gram matrices.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use num_complex::Complex64;
use thiserror::Error;

use crate::model::{derive_params, ModelError, ModelParams};
use crate::numerics::{
    d2_matrix, dagger, diag_matrix_real, mat_mul, symmetric_eigensolve, Grid, NumericsError, OperatorMatrix, WaveSample,
};
use crate::report::{Check, ResidualReport};
use crate::susy::{build_operator_set, ExtensionSpec, SusyError};

/// Relative tolerance of the commensurability flag.
pub const CONSTRAINT_TOLERANCE: f64 = 1e-12;

/// A factor image `X_i u` counts as annihilated when its norm is below this
/// fraction of the factor operator's scale (largest image over the lowest
/// [`SCALE_LEVELS`] levels).
pub const ANNIHILATION_THRESHOLD: f64 = 1e-3;

/// Number of low levels used to set each factor operator's scale.
pub const SCALE_LEVELS: usize = 8;

/// Relative tolerance on the energy of `X psi`.
pub const ENERGY_TOLERANCE: f64 = 1e-6;

/// Tolerance for `A` commuting with `h`.
pub const A_COMMUTATOR_TOLERANCE: f64 = 1e-8;

/// Minimum magnitude of the off-diagonal matrix element used as the
/// independence witness.
pub const WITNESS_THRESHOLD: f64 = 0.1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TwoDimError {
    #[error("ladder power n{index} must be at least 1")]
    ZeroPower { index: usize },
    #[error("only {available} levels were computed in dimension {dim}; request more levels")]
    NotEnoughLevels { dim: usize, available: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Susy(#[from] SusyError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Clone, Debug)]
pub struct TwoDimModel {
    pub params: [ModelParams; 2],
    pub ext: [Option<ExtensionSpec>; 2],
    pub n1: usize,
    pub n2: usize,
}

impl TwoDimModel {
    pub fn new(
        params: [ModelParams; 2],
        ext: [Option<ExtensionSpec>; 2],
        n1: usize,
        n2: usize,
    ) -> Result<Self, TwoDimError> {
        if n1 == 0 {
            return Err(TwoDimError::ZeroPower { index: 1 });
        }
        if n2 == 0 {
            return Err(TwoDimError::ZeroPower { index: 2 });
        }
        Ok(Self { params, ext, n1, n2 })
    }

    /// `(Omega_1, Omega_2)`.
    pub fn level_spacings(&self) -> (f64, f64) {
        (self.params[0].level_spacing(), self.params[1].level_spacing())
    }

    pub fn is_commensurate(&self) -> bool {
        check_constraint(self).satisfied
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstraintCheck {
    pub satisfied: bool,
    /// `|n1 Omega_1 - n2 Omega_2|`.
    pub mismatch: f64,
}

/// `n1 sqrt(omega_1^2 - 4 alpha_1 beta_1) = n2 sqrt(omega_2^2 - 4 alpha_2 beta_2)`.
pub fn check_constraint(m: &TwoDimModel) -> ConstraintCheck {
    let (o1, o2) = m.level_spacings();
    let (a, b) = (m.n1 as f64 * o1, m.n2 as f64 * o2);
    let mismatch = (a - b).abs();
    ConstraintCheck { satisfied: mismatch <= CONSTRAINT_TOLERANCE * a.max(b), mismatch }
}

/// One dimension: Hermitian Hamiltonian, lowering operator and its lowest
/// eigenpairs.
#[derive(Clone, Debug)]
pub struct Factor {
    pub params: ModelParams,
    pub ext: Option<ExtensionSpec>,
    pub grid: Grid,
    pub h: OperatorMatrix,
    pub lower: OperatorMatrix,
    pub raise: OperatorMatrix,
    pub energies: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
}

impl Factor {
    fn build(p: &ModelParams, ext: &Option<ExtensionSpec>, g: &Grid, levels: usize) -> Result<Self, TwoDimError> {
        let (h, lower) = match ext {
            Some(s) => {
                let os = build_operator_set(p, s, g)?;
                (os.h_minus, os.k)
            }
            None => {
                let d = derive_params(p);
                let delta = d.delta;
                let kinetic = (-1.0 / (delta * delta * d.j)) * &d2_matrix(g)?;
                let h = &(&kinetic + &diag_matrix_real(|x| delta * delta * x * x / d.j, g)?) + 0.5 * p.omega();
                let dd = crate::numerics::d1_matrix(g)?;
                let l = &((1.0 / delta) * &dd) + &diag_matrix_real(|x| delta * x, g)?;
                (h.with_label("h"), l.with_label("L"))
            }
        };
        let raise = dagger(&lower);
        let eig = symmetric_eigensolve(&h, levels)?;
        Ok(Self {
            params: *p,
            ext: ext.clone(),
            grid: *g,
            h,
            lower,
            raise,
            energies: eig.eigenvalues,
            vectors: eig.eigenvectors,
        })
    }

    /// Closed-form energy of level `j`: `omega/2 + (j + 1/2) Omega` for a plain
    /// factor; `omega/2` then `omega/2 + (2j - 1 - E_tilde) Omega / 2` for an
    /// extended one.
    pub fn exact_energy(&self, j: usize) -> f64 {
        let half = 0.5 * self.params.omega();
        let omega = self.params.level_spacing();
        match &self.ext {
            None => half + (j as f64 + 0.5) * omega,
            Some(_) if j == 0 => half,
            Some(s) => half + 0.5 * omega * (2.0 * j as f64 - 1.0 - s.e_tilde()),
        }
    }
}

/// Separable eigenstate `u_n (x) v_k`.
#[derive(Clone, Debug)]
pub struct ProductState {
    pub indices: (usize, usize),
    pub energies: (f64, f64),
    pub energy: f64,
    pub factors: (WaveSample, WaveSample),
}

/// The integrals of motion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Integral {
    A,
    IMinus,
    IPlus,
    B1,
    B2,
}

impl Integral {
    pub const ALL: [Integral; 5] = [Integral::A, Integral::IMinus, Integral::IPlus, Integral::B1, Integral::B2];

    pub fn name(self) -> &'static str {
        match self {
            Integral::A => "A",
            Integral::IMinus => "I-",
            Integral::IPlus => "I+",
            Integral::B1 => "B1",
            Integral::B2 => "B2",
        }
    }
}

/// `sum_t a_t (x) b_t`.
#[derive(Clone, Debug, Default)]
pub struct TensorSum {
    pub terms: Vec<(Vec<Complex64>, Vec<Complex64>)>,
}

fn dot(a: &[Complex64], b: &[Complex64], grid: &Grid, interior: bool) -> Complex64 {
    if interior {
        grid.interior_indices().map(|i| a[i].conj() * b[i]).sum()
    } else {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    }
}

impl TensorSum {
    fn norm_with(&self, grids: (&Grid, &Grid), interior: bool) -> f64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (a, b) in &self.terms {
            for (c, d) in &self.terms {
                total += dot(a, c, grids.0, interior) * dot(b, d, grids.1, interior);
            }
        }
        total.re.max(0.0).sqrt()
    }

    /// `<u (x) v, self>`.
    fn project(&self, u: &[Complex64], v: &[Complex64], grids: (&Grid, &Grid)) -> Complex64 {
        self.terms.iter().map(|(a, b)| dot(u, a, grids.0, false) * dot(v, b, grids.1, false)).sum()
    }
}

/// Result of applying an integral to a product state.
#[derive(Clone, Debug)]
pub struct IntegralAction {
    pub image: TensorSum,
    /// Energy change predicted from the ladder powers; `0` for `A`.
    pub predicted_shift: f64,
    /// All parts of the image fell below [`ANNIHILATION_THRESHOLD`].
    pub annihilated: bool,
}

/// Operator on one factor: identity, the Hamiltonian, or a ladder power.
#[derive(Clone, Copy, Debug)]
enum FactorOp {
    Identity,
    Hamiltonian,
    Lower,
    Raise,
}

#[derive(Clone, Debug)]
pub struct TwoDimSystem {
    pub model: TwoDimModel,
    pub factors: [Factor; 2],
    lower_pow: [OperatorMatrix; 2],
    raise_pow: [OperatorMatrix; 2],
    scales: [(f64, f64); 2],
}

/// Default number of 1D levels computed per factor.
pub const DEFAULT_LEVELS: usize = 60;

pub fn build_2d(m: &TwoDimModel, g1: &Grid, g2: &Grid) -> Result<TwoDimSystem, TwoDimError> {
    build_2d_with_levels(m, g1, g2, DEFAULT_LEVELS)
}

pub fn build_2d_with_levels(m: &TwoDimModel, g1: &Grid, g2: &Grid, levels: usize) -> Result<TwoDimSystem, TwoDimError> {
    let f1 = Factor::build(&m.params[0], &m.ext[0], g1, levels)?;
    let f2 = Factor::build(&m.params[1], &m.ext[1], g2, levels)?;
    let power = |op: &OperatorMatrix, n: usize| -> Result<OperatorMatrix, TwoDimError> {
        let mut acc = op.clone();
        for _ in 1..n {
            acc = mat_mul(&acc, op)?;
        }
        Ok(acc)
    };
    let lower_pow = [power(&f1.lower, m.n1)?, power(&f2.lower, m.n2)?];
    let raise_pow = [power(&f1.raise, m.n1)?, power(&f2.raise, m.n2)?];
    let scale = |op: &OperatorMatrix, f: &Factor| {
        f.vectors
            .iter()
            .take(SCALE_LEVELS)
            .map(|v| dot(&op.apply(v), &op.apply(v), &f.grid, false).re.sqrt())
            .fold(0.0, f64::max)
    };
    let scales = [
        (scale(&lower_pow[0], &f1), scale(&raise_pow[0], &f1)),
        (scale(&lower_pow[1], &f2), scale(&raise_pow[1], &f2)),
    ];
    Ok(TwoDimSystem { model: m.clone(), factors: [f1, f2], lower_pow, raise_pow, scales })
}

#[derive(PartialEq)]
struct HeapItem(f64, usize, usize);

impl Eq for HeapItem {}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapItem {
    // min-heap on energy, ties by index for a deterministic order
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| (other.1, other.2).cmp(&(self.1, self.2)))
    }
}

impl TwoDimSystem {
    fn grids(&self) -> (&Grid, &Grid) {
        (&self.factors[0].grid, &self.factors[1].grid)
    }

    /// Index pairs of the `count` lowest product states, ascending in energy.
    pub fn product_indices(&self, count: usize) -> Result<Vec<(usize, usize)>, TwoDimError> {
        let (e1, e2) = (&self.factors[0].energies, &self.factors[1].energies);
        let mut heap = BinaryHeap::new();
        let mut seen = HashSet::new();
        heap.push(HeapItem(e1[0] + e2[0], 0, 0));
        seen.insert((0, 0));
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let Some(HeapItem(_, i, j)) = heap.pop() else { break };
            if i + 1 >= e1.len() {
                return Err(TwoDimError::NotEnoughLevels { dim: 1, available: e1.len() });
            }
            if j + 1 >= e2.len() {
                return Err(TwoDimError::NotEnoughLevels { dim: 2, available: e2.len() });
            }
            out.push((i, j));
            for (a, b) in [(i + 1, j), (i, j + 1)] {
                if seen.insert((a, b)) {
                    heap.push(HeapItem(e1[a] + e2[b], a, b));
                }
            }
        }
        Ok(out)
    }

    /// The `count` lowest product states, ascending in energy.
    pub fn product_states(&self, count: usize) -> Result<Vec<ProductState>, TwoDimError> {
        self.product_indices(count)?.into_iter().map(|(i, j)| self.product_state(i, j)).collect()
    }

    pub fn product_state(&self, i: usize, j: usize) -> Result<ProductState, TwoDimError> {
        let (f1, f2) = (&self.factors[0], &self.factors[1]);
        let energies = (f1.energies[i], f2.energies[j]);
        Ok(ProductState {
            indices: (i, j),
            energies,
            energy: energies.0 + energies.1,
            factors: (
                WaveSample::new(f1.grid, f1.vectors[i].clone())?,
                WaveSample::new(f2.grid, f2.vectors[j].clone())?,
            ),
        })
    }

    fn op(&self, dim: usize, which: FactorOp) -> Option<&OperatorMatrix> {
        match which {
            FactorOp::Identity => None,
            FactorOp::Hamiltonian => Some(&self.factors[dim].h),
            FactorOp::Lower => Some(&self.lower_pow[dim]),
            FactorOp::Raise => Some(&self.raise_pow[dim]),
        }
    }

    fn scale(&self, dim: usize, which: FactorOp) -> Option<f64> {
        match which {
            FactorOp::Lower => Some(self.scales[dim].0),
            FactorOp::Raise => Some(self.scales[dim].1),
            _ => None,
        }
    }

    fn decompose(which: Integral) -> Vec<(f64, FactorOp, FactorOp)> {
        use FactorOp::*;
        let minus = (1.0, Lower, Raise);
        let plus = (1.0, Raise, Lower);
        match which {
            Integral::A => vec![(1.0, Hamiltonian, Identity), (-1.0, Identity, Hamiltonian)],
            Integral::IMinus => vec![minus],
            Integral::IPlus => vec![plus],
            Integral::B1 => vec![minus, (-1.0, Raise, Lower)],
            Integral::B2 => vec![minus, plus],
        }
    }

    fn apply_factor(&self, dim: usize, which: FactorOp, v: &[Complex64]) -> Vec<Complex64> {
        match self.op(dim, which) {
            None => v.to_vec(),
            Some(m) => m.apply(v),
        }
    }

    /// `[h_dim, X] v`.
    fn commute_factor(&self, dim: usize, which: FactorOp, v: &[Complex64]) -> Option<Vec<Complex64>> {
        let m = self.op(dim, which)?;
        let h = &self.factors[dim].h;
        let hxv = h.apply(&m.apply(v));
        let xhv = m.apply(&h.apply(v));
        Some(hxv.iter().zip(&xhv).map(|(a, b)| a - b).collect())
    }

    fn is_annihilated(&self, dim: usize, which: FactorOp, image: &[Complex64]) -> bool {
        match self.scale(dim, which) {
            Some(s) => {
                let n = dot(image, image, &self.factors[dim].grid, false).re.sqrt();
                n <= ANNIHILATION_THRESHOLD * s
            }
            None => false,
        }
    }

    /// Surviving parts `(coefficient, X1, X2)` of `X` on `s`, with images.
    #[allow(clippy::type_complexity)]
    fn surviving(
        &self,
        which: Integral,
        s: &ProductState,
    ) -> Vec<(f64, FactorOp, FactorOp, Vec<Complex64>, Vec<Complex64>)> {
        let (u, v) = (s.factors.0.values(), s.factors.1.values());
        Self::decompose(which)
            .into_iter()
            .filter_map(|(c, x1, x2)| {
                let a = self.apply_factor(0, x1, u);
                let b = self.apply_factor(1, x2, v);
                if self.is_annihilated(0, x1, &a) || self.is_annihilated(1, x2, &b) {
                    None
                } else {
                    Some((c, x1, x2, a, b))
                }
            })
            .collect()
    }

    fn shift(&self, x1: FactorOp, x2: FactorOp) -> f64 {
        let (o1, o2) = self.model.level_spacings();
        let per = |op: FactorOp, n: usize, o: f64| match op {
            FactorOp::Lower => -(n as f64) * o,
            FactorOp::Raise => n as f64 * o,
            _ => 0.0,
        };
        per(x1, self.model.n1, o1) + per(x2, self.model.n2, o2)
    }

    pub fn apply_integral(&self, which: Integral, s: &ProductState) -> IntegralAction {
        let parts = self.surviving(which, s);
        let predicted_shift = match which {
            Integral::A => 0.0,
            _ => {
                let (_, x1, x2) = Self::decompose(which)[0];
                self.shift(x1, x2)
            }
        };
        let annihilated = parts.is_empty();
        let image = TensorSum {
            terms: parts.into_iter().map(|(c, _, _, a, b)| (a.iter().map(|z| z * c).collect(), b)).collect(),
        };
        IntegralAction { image, predicted_shift, annihilated }
    }

    /// `r(X, psi) = |[h, X] psi| / max(|X psi|, max_t |X_t psi|)` on interior
    /// points, or `None` when `X psi` is annihilated.
    pub fn commutator_residual(&self, which: Integral, s: &ProductState) -> Option<f64> {
        let parts = self.surviving(which, s);
        if parts.is_empty() {
            return None;
        }
        let (u, v) = (s.factors.0.values(), s.factors.1.values());
        let grids = self.grids();
        let mut comm = TensorSum::default();
        let mut image = TensorSum::default();
        let mut largest: f64 = 0.0;
        for (c, x1, x2, a, b) in parts {
            let scaled: Vec<Complex64> = a.iter().map(|z| z * c).collect();
            let single = TensorSum { terms: vec![(scaled.clone(), b.clone())] };
            largest = largest.max(single.norm_with(grids, true));
            if let Some(ca) = self.commute_factor(0, x1, u) {
                comm.terms.push((ca.iter().map(|z| z * c).collect(), b.clone()));
            }
            if let Some(cb) = self.commute_factor(1, x2, v) {
                comm.terms.push((scaled.clone(), cb));
            }
            image.terms.push((scaled, b));
        }
        let denom = image.norm_with(grids, true).max(largest);
        Some(if comm.terms.is_empty() { 0.0 } else { comm.norm_with(grids, true) / denom })
    }

    /// Rayleigh quotient of `h` on a tensor sum.
    fn energy_of(&self, t: &TensorSum) -> f64 {
        let grids = self.grids();
        let (h1, h2) = (&self.factors[0].h, &self.factors[1].h);
        let mut num = Complex64::new(0.0, 0.0);
        for (a, b) in &t.terms {
            for (c, d) in &t.terms {
                num += dot(a, &h1.apply(c), grids.0, false) * dot(b, d, grids.1, false);
                num += dot(a, c, grids.0, false) * dot(b, &h2.apply(d), grids.1, false);
            }
        }
        num.re / t.norm_with(grids, false).powi(2)
    }

    /// `|h psi - E psi| / E` for a product state.
    pub fn separability_residual(&self, s: &ProductState) -> f64 {
        let (u, v) = (s.factors.0.values(), s.factors.1.values());
        let hu = self.factors[0].h.apply(u);
        let hv = self.factors[1].h.apply(v);
        let e = Complex64::new(-s.energy, 0.0);
        let t = TensorSum {
            terms: vec![(hu, v.to_vec()), (u.to_vec(), hv), (u.iter().map(|z| z * e).collect(), v.to_vec())],
        };
        t.norm_with(self.grids(), false) / s.energy.abs()
    }

    /// All index pairs whose numerical energy lies within `tol` of `energy`.
    pub fn cluster_of(&self, energy: f64, tol: f64) -> Vec<(usize, usize)> {
        let (e1, e2) = (&self.factors[0].energies, &self.factors[1].energies);
        let mut out = Vec::new();
        for (i, a) in e1.iter().enumerate() {
            for (j, b) in e2.iter().enumerate() {
                if (a + b - energy).abs() <= tol {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Fraction of `|image|^2` outside the listed basis states.
    fn leakage(&self, image: &TensorSum, cluster: &[(usize, usize)]) -> f64 {
        let grids = self.grids();
        let total = image.norm_with(grids, false).powi(2);
        let inside: f64 = cluster
            .iter()
            .map(|&(i, j)| image.project(&self.factors[0].vectors[i], &self.factors[1].vectors[j], grids).norm_sqr())
            .sum();
        (1.0 - inside / total).max(0.0)
    }

    /// `<u_i (x) v_j, I psi>` without the annihilation cut.
    pub fn raw_matrix_element(&self, which: Integral, target: (usize, usize), s: &ProductState) -> Complex64 {
        let (u, v) = (s.factors.0.values(), s.factors.1.values());
        let (tu, tv) = (&self.factors[0].vectors[target.0], &self.factors[1].vectors[target.1]);
        let grids = self.grids();
        Self::decompose(which)
            .into_iter()
            .map(|(c, x1, x2)| {
                c * dot(tu, &self.apply_factor(0, x1, u), grids.0, false)
                    * dot(tv, &self.apply_factor(1, x2, v), grids.1, false)
            })
            .sum()
    }

    /// `<u_i (x) v_j, I psi>`.
    pub fn matrix_element(&self, which: Integral, target: (usize, usize), s: &ProductState) -> Complex64 {
        let action = self.apply_integral(which, s);
        action.image.project(&self.factors[0].vectors[target.0], &self.factors[1].vectors[target.1], self.grids())
    }
}

/// Cluster tolerance for grouping numerically degenerate product energies.
pub fn cluster_tolerance(energy: f64) -> f64 {
    1e-3 * energy.abs().max(1.0)
}

/// Degenerate group of product states.
#[derive(Clone, Debug, PartialEq)]
pub struct Cluster {
    pub energy: f64,
    pub members: Vec<(usize, usize)>,
}

/// Off-diagonal matrix element of `I-` between distinct states of one
/// cluster.
#[derive(Clone, Debug, PartialEq)]
pub struct IndependenceWitness {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub magnitude: f64,
}

#[derive(Clone, Debug)]
pub struct SuperintegrabilityReport {
    pub report: ResidualReport,
    pub constraint: ConstraintCheck,
    /// Largest `r(X, psi)` over `I-`, `I+`, `B1`, `B2` and the tested states.
    pub max_residual: f64,
    pub clusters: Vec<Cluster>,
    pub witness: Option<IndependenceWitness>,
    pub annihilated: usize,
}

impl SuperintegrabilityReport {
    /// Negative-control verdict: the commutator action is at least
    /// `0.1 Omega_1`.
    pub fn control_detects_violation(&self, omega1: f64) -> bool {
        self.max_residual >= 0.1 * omega1
    }
}

/// Groups consecutive energies (ascending) into clusters.
fn clusters_from(sys: &TwoDimSystem, indices: &[(usize, usize)]) -> Vec<Cluster> {
    let mut out: Vec<Cluster> = Vec::new();
    for &(i, j) in indices {
        let e = sys.factors[0].energies[i] + sys.factors[1].energies[j];
        match out.last_mut() {
            Some(c) if (e - c.energy).abs() <= cluster_tolerance(c.energy) => c.members.push((i, j)),
            _ => out.push(Cluster { energy: e, members: vec![(i, j)] }),
        }
    }
    out
}

/// Checks `[h, X] = 0` on the `n_states` lowest product states for every
/// integral, plus energy conservation, separability, the `I+ = I-'` adjoint
/// relation and an independence witness.
pub fn verify_superintegrability(
    sys: &TwoDimSystem,
    n_states: usize,
    tol: f64,
) -> Result<SuperintegrabilityReport, TwoDimError> {
    let constraint = check_constraint(&sys.model);
    let indices = sys.product_indices(n_states)?;
    let states: Vec<ProductState> = indices.iter().map(|&(i, j)| sys.product_state(i, j)).collect::<Result<_, _>>()?;
    let mut report = ResidualReport::new();
    report.note("constraint: n1 sqrt(omega1^2 - 4 alpha1 beta1) = n2 sqrt(omega2^2 - 4 alpha2 beta2)");
    report.note("B1 = I- - I+, B2 = I- + I+");
    report.measure("constraint mismatch |n1 Omega1 - n2 Omega2|", constraint.mismatch);

    let mut max_ladder: f64 = 0.0;
    let mut max_a: f64 = 0.0;
    let mut worst_energy: f64 = 0.0;
    let mut worst_leak: f64 = 0.0;
    let mut annihilated = 0;
    for which in Integral::ALL {
        let mut worst: f64 = 0.0;
        for s in &states {
            let Some(r) = sys.commutator_residual(which, s) else {
                annihilated += 1;
                continue;
            };
            worst = worst.max(r);
            // A psi is a multiple of psi, possibly zero
            if which != Integral::A {
                let action = sys.apply_integral(which, s);
                let e = sys.energy_of(&action.image);
                worst_energy = worst_energy.max((e - s.energy).abs() / s.energy.abs());
                let cluster = sys.cluster_of(s.energy, cluster_tolerance(s.energy));
                worst_leak = worst_leak.max(sys.leakage(&action.image, &cluster));
            }
        }
        if which == Integral::A {
            max_a = worst;
        } else {
            max_ladder = max_ladder.max(worst);
            report.push(Check::at_most(format!("max r([h, {}])", which.name()), worst, tol));
        }
    }
    report.push(Check::at_most("max r([h, A])", max_a, A_COMMUTATOR_TOLERANCE));
    report.push(Check::at_most("energy of X psi equals E psi (relative)", worst_energy, ENERGY_TOLERANCE));
    report.measure("largest norm fraction of X psi outside its cluster", worst_leak);
    report.measure("annihilated (state, integral) pairs", annihilated as f64);

    let separability = states.iter().map(|s| sys.separability_residual(s)).fold(0.0, f64::max);
    report.push(Check::at_most("h psi = (E1 + E2) psi", separability, ENERGY_TOLERANCE));

    // I+ against the adjoint of I-: <a, I- b> = conj(<b, I+ a>)
    let sample: Vec<&ProductState> = states.iter().take(20).collect();
    let mut adj_dev: f64 = 0.0;
    let mut adj_scale: f64 = 0.0;
    for a in &sample {
        for b in &sample {
            let x = sys.raw_matrix_element(Integral::IMinus, a.indices, b);
            let y = sys.raw_matrix_element(Integral::IPlus, b.indices, a);
            adj_dev = adj_dev.max((x - y.conj()).norm());
            adj_scale = adj_scale.max(x.norm());
        }
    }
    report.push(Check::at_most(
        "I+ is the adjoint of I- (relative)",
        if adj_scale > 0.0 { adj_dev / adj_scale } else { 0.0 },
        ENERGY_TOLERANCE,
    ));

    let clusters = clusters_from(sys, &indices);
    let mut witness = None;
    'search: for c in &clusters {
        for &from in &c.members {
            for &to in &c.members {
                if from == to {
                    continue;
                }
                let s = sys.product_state(from.0, from.1)?;
                let magnitude = sys.matrix_element(Integral::IMinus, to, &s).norm();
                if magnitude >= WITNESS_THRESHOLD {
                    witness = Some(IndependenceWitness { from, to, magnitude });
                    break 'search;
                }
            }
        }
    }
    report.push(Check::at_least(
        "independence witness |<psi', I- psi>|",
        witness.as_ref().map_or(0.0, |w| w.magnitude),
        WITNESS_THRESHOLD,
    ));

    Ok(SuperintegrabilityReport { report, constraint, max_residual: max_ladder, clusters, witness, annihilated })
}
