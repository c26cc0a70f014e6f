use std::collections::BTreeMap;

use num_complex::Complex64;

use super::ast::Expr;
use super::EvalError;
use crate::numerics::{add_scalar, commutator, dagger, mat_add, mat_mul, mat_sub, scalar_mul, OperatorMatrix};

/// Largest exponent accepted on an operator, which keeps the band of `X^n`
/// bounded.
pub const MAX_OPERATOR_POWER: u32 = 16;

#[derive(Clone, Debug)]
pub enum Value {
    Scalar(f64),
    Operator(OperatorMatrix),
}

/// Name to value map used by [`evaluate`].
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    operators: BTreeMap<String, OperatorMatrix>,
    scalars: BTreeMap<String, f64>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind_operator(&mut self, name: impl Into<String>, m: OperatorMatrix) {
        self.operators.insert(name.into(), m);
    }

    pub fn bind_scalar(&mut self, name: impl Into<String>, v: f64) {
        self.scalars.insert(name.into(), v);
    }

    pub fn operator(&self, name: &str) -> Option<&OperatorMatrix> {
        self.operators.get(name)
    }

    pub fn scalar(&self, name: &str) -> Option<f64> {
        self.scalars.get(name).copied()
    }

    pub fn operator_names(&self) -> impl Iterator<Item = &str> {
        self.operators.keys().map(String::as_str)
    }

    pub fn scalar_names(&self) -> impl Iterator<Item = &str> {
        self.scalars.keys().map(String::as_str)
    }

    fn lookup(&self, name: &str) -> Result<Value, EvalError> {
        if let Some(m) = self.operators.get(name) {
            Ok(Value::Operator(m.clone()))
        } else if let Some(&v) = self.scalars.get(name) {
            Ok(Value::Scalar(v))
        } else {
            Err(EvalError::Unbound(name.to_string()))
        }
    }
}

fn c(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn combine(a: Value, b: Value, sign: f64) -> Result<Value, EvalError> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + sign * y),
        (Value::Operator(m), Value::Scalar(y)) => Value::Operator(add_scalar(&m, c(sign * y))),
        (Value::Scalar(x), Value::Operator(m)) => Value::Operator(add_scalar(&scalar_mul(c(sign), &m), c(x))),
        (Value::Operator(m), Value::Operator(n)) => {
            Value::Operator(if sign > 0.0 { mat_add(&m, &n)? } else { mat_sub(&m, &n)? })
        }
    })
}

fn product(a: Value, b: Value) -> Result<Value, EvalError> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
        (Value::Scalar(x), Value::Operator(m)) | (Value::Operator(m), Value::Scalar(x)) => {
            Value::Operator(scalar_mul(c(x), &m))
        }
        (Value::Operator(m), Value::Operator(n)) => Value::Operator(mat_mul(&m, &n)?),
    })
}

/// Evaluates to a scalar or an operator.
pub fn evaluate_value(e: &Expr, b: &Bindings) -> Result<Value, EvalError> {
    Ok(match e {
        Expr::Scalar(s) => Value::Scalar(s.value()),
        Expr::Symbol(name) => b.lookup(name)?,
        Expr::Add(x, y) => combine(evaluate_value(x, b)?, evaluate_value(y, b)?, 1.0)?,
        Expr::Sub(x, y) => combine(evaluate_value(x, b)?, evaluate_value(y, b)?, -1.0)?,
        Expr::Mul(x, y) => product(evaluate_value(x, b)?, evaluate_value(y, b)?)?,
        Expr::Negate(x) => match evaluate_value(x, b)? {
            Value::Scalar(v) => Value::Scalar(-v),
            Value::Operator(m) => Value::Operator(scalar_mul(c(-1.0), &m)),
        },
        Expr::Dagger(x) => match evaluate_value(x, b)? {
            Value::Scalar(v) => Value::Scalar(v),
            Value::Operator(m) => Value::Operator(dagger(&m)),
        },
        Expr::Pow(x, n) => match evaluate_value(x, b)? {
            Value::Scalar(v) => Value::Scalar(v.powf(*n as f64)),
            Value::Operator(m) => {
                if *n > MAX_OPERATOR_POWER {
                    return Err(EvalError::PowerTooLarge(*n));
                }
                let mut acc = OperatorMatrix::identity(*m.grid());
                for _ in 0..*n {
                    acc = mat_mul(&acc, &m)?;
                }
                Value::Operator(acc)
            }
        },
        Expr::Commutator(x, y) => match (evaluate_value(x, b)?, evaluate_value(y, b)?) {
            (Value::Operator(m), Value::Operator(n)) => Value::Operator(commutator(&m, &n)?),
            _ => Value::Scalar(0.0),
        },
    })
}

/// Evaluates to an operator; a scalar-only expression is an error.
pub fn evaluate(e: &Expr, b: &Bindings) -> Result<OperatorMatrix, EvalError> {
    match evaluate_value(e, b)? {
        Value::Operator(m) => Ok(m),
        Value::Scalar(_) => Err(EvalError::ScalarOnly),
    }
}
