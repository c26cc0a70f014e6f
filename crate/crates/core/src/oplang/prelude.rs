use super::ast::Expr;
use super::eval::{evaluate_value, Bindings, Value};
use super::parser::parse_str;
use super::{EvalError, OplangError, ParseError, ParseErrorKind};
use crate::numerics::{identity_residual, OperatorMatrix, ProbeSet};
use crate::report::Check;
use crate::susy::OperatorSet;

/// Names bound to images in the non-Hermitian frame.
const CONJUGATED_FRAME: [&str; 6] = ["Hplus", "Hminus", "HplusExpr", "HminusExpr", "theta", "thetadag"];

/// Standard bindings for one operator set, with the probe blocks used to
/// measure identities in each frame.
#[derive(Clone, Debug)]
pub struct Prelude {
    pub bindings: Bindings,
    hermitian_probes: ProbeSet,
    conjugated_probes: ProbeSet,
    metric_probes: ProbeSet,
}

impl Prelude {
    pub fn new(os: &OperatorSet) -> Self {
        let mut b = Bindings::new();
        for (name, m) in os.named() {
            b.bind_operator(name, m.clone());
        }
        b.bind_operator("I", os.identity());
        b.bind_operator("LdagL", (&os.l_dag * &os.l).with_label("L'L"));
        b.bind_operator("LLdag", (&os.l * &os.l_dag).with_label("LL'"));
        let d = &os.derived;
        let p = &os.params;
        for (name, v) in [
            ("J", d.j),
            ("omega", p.omega()),
            ("alpha", p.alpha()),
            ("beta", p.beta()),
            ("lambda", d.lambda),
            ("Delta", d.delta),
            ("Omega", p.level_spacing()),
            ("Em", d.factorization_energy),
            ("twoOverJ", 2.0 / d.j),
            ("JomegaHalf", 0.5 * d.j * p.omega()),
            ("JE", d.j * d.factorization_energy),
            ("one", 1.0),
        ] {
            b.bind_scalar(name, v);
        }
        let inv_eta: Vec<f64> = os.rho.iter().map(|r| 1.0 / (r * r)).collect();
        Self {
            bindings: b,
            hermitian_probes: os.probes(),
            conjugated_probes: os.conjugated_probes(),
            metric_probes: os.conjugated_probes().with_norm_weight(inv_eta),
        }
    }

    /// Hermite probes for Hermitian-frame expressions, their `rho^{-1}`
    /// images for expressions with non-Hermitian operators, and the same
    /// images under a `1/eta` norm once `eta` appears.
    pub fn probes_for(&self, e: &Expr) -> &ProbeSet {
        let symbols = e.symbols();
        if symbols.contains(&"eta") {
            &self.metric_probes
        } else if symbols.iter().any(|s| CONJUGATED_FRAME.contains(s)) {
            &self.conjugated_probes
        } else {
            &self.hermitian_probes
        }
    }
}

/// Additive terms of `e` with their signs. A commutator standing as a term
/// is expanded into its two products.
pub fn split_terms(e: &Expr) -> Vec<(f64, Expr)> {
    let mut out = Vec::new();
    collect(e, 1.0, &mut out);
    out
}

fn collect(e: &Expr, sign: f64, out: &mut Vec<(f64, Expr)>) {
    match e {
        Expr::Add(a, b) => {
            collect(a, sign, out);
            collect(b, sign, out);
        }
        Expr::Sub(a, b) => {
            collect(a, sign, out);
            collect(b, -sign, out);
        }
        Expr::Negate(a) => collect(a, -sign, out),
        Expr::Commutator(a, b) => {
            out.push((sign, Expr::mul((**a).clone(), (**b).clone())));
            out.push((-sign, Expr::mul((**b).clone(), (**a).clone())));
        }
        other => out.push((sign, other.clone())),
    }
}

/// Verdict of [`check_zero`].
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub expression: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl CheckOutcome {
    pub fn to_check(&self) -> Check {
        Check::at_most(self.name.clone(), self.residual, self.threshold)
    }
}

/// Splits an optional `name :=` label off the expression, returning the
/// label, the body and the body's character offset.
fn strip_label(input: &str) -> (Option<String>, &str, usize) {
    if let Some(pos) = input.find(":=") {
        let label = input[..pos].trim();
        let mut chars = label.chars();
        let is_ident = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if is_ident {
            let body = &input[pos + 2..];
            return (Some(label.to_string()), body, input[..pos + 2].chars().count());
        }
    }
    (None, input, 0)
}

/// Evaluates `expression` (optionally prefixed `name :=`) as a sum of terms
/// and measures `|sum| / max |term|` on interior points.
pub fn check_zero(expression: &str, prelude: &Prelude, tol: f64) -> Result<CheckOutcome, OplangError> {
    let (label, body, shift) = strip_label(expression);
    let ast = parse_str(body).map_err(|e| {
        let kind = match e.kind {
            ParseErrorKind::Unbalanced { open, opened_at } => {
                ParseErrorKind::Unbalanced { open, opened_at: opened_at + shift }
            }
            k => k,
        };
        ParseError::new(kind, e.offset + shift)
    })?;
    let probes = prelude.probes_for(&ast);
    let grid = *probes.grid();
    let mut terms: Vec<OperatorMatrix> = Vec::new();
    let mut any_operator = false;
    for (sign, t) in split_terms(&ast) {
        let m = match evaluate_value(&t, &prelude.bindings)? {
            Value::Operator(m) => {
                any_operator = true;
                sign * &m
            }
            Value::Scalar(v) => sign * v * &OperatorMatrix::identity(grid),
        };
        terms.push(m);
    }
    if !any_operator {
        return Err(EvalError::ScalarOnly.into());
    }
    let refs: Vec<&OperatorMatrix> = terms.iter().collect();
    let residual = identity_residual(&refs, probes).map_err(EvalError::from)?;
    let printed = ast.to_string();
    Ok(CheckOutcome {
        name: label.unwrap_or_else(|| printed.clone()),
        expression: printed,
        residual,
        threshold: tol,
        pass: residual <= tol,
    })
}
