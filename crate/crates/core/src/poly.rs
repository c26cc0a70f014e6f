//! Exact integer polynomials: Hermite and pseudo-Hermite families, formal
//! derivatives, floating point evaluation and Sturm-sequence root counting.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial with arbitrary-precision integer coefficients in ascending
/// degree, optionally multiplied by an overall rational factor.
///
/// The zero polynomial has an empty coefficient list; otherwise the last
/// stored coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
    scale: Option<(BigInt, BigInt)>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs, scale: None }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// Attach an overall factor `num/den`. The integer coefficients are left
    /// untouched; the factor only enters floating point evaluation and
    /// equality.
    pub fn with_scale(mut self, num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator in polynomial scale");
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / &g, den / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        self.scale = if n.is_one() && d.is_one() { None } else { Some((n, d)) };
        self
    }

    pub fn scale(&self) -> Option<&(BigInt, BigInt)> {
        self.scale.as_ref()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn scale_by(&self, c: &BigInt) -> Self {
        let mut out = Self::new(self.coeffs.iter().map(|a| a * c).collect());
        out.scale = self.scale.clone();
        out
    }

    fn scale_f64(&self) -> f64 {
        match &self.scale {
            None => 1.0,
            Some((n, d)) => ratio_to_f64(n, d),
        }
    }

    /// Values of `p`, `p'` and `p''` at `x` in one Horner pass.
    pub fn eval_with_derivatives(&self, x: f64) -> (f64, f64, f64) {
        let (mut p, mut dp, mut ddp) = (0.0, 0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            ddp = ddp * x + 2.0 * dp;
            dp = dp * x + p;
            p = p * x + c.to_f64().unwrap_or(f64::NAN);
        }
        let s = self.scale_f64();
        (s * p, s * dp, s * ddp)
    }

    /// `p'/p` and `p''/p` at `x`; these ratios do not depend on the overall
    /// normalization of `p`.
    pub fn log_derivative_ratios(&self, x: f64) -> (f64, f64) {
        let (p, dp, ddp) = self.eval_with_derivatives(x);
        (dp / p, ddp / p)
    }
}

fn ratio_to_f64(n: &BigInt, d: &BigInt) -> f64 {
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            // shift both down until they fit
            let bits = n.bits().max(d.bits()).saturating_sub(1000);
            let (a, b) = (n >> bits, d >> bits);
            a.to_f64().unwrap_or(f64::NAN) / b.to_f64().unwrap_or(f64::NAN)
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some((n, d)) = &self.scale {
            write!(f, "({n}/{d})*(")?;
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "x")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if self.scale.is_some() {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale_by(&BigInt::from(-1))
    }
}

/// Physicists' Hermite polynomial `H_n` from `H_{n+1} = 2x H_n - 2n H_{n-1}`.
pub fn hermite(n: usize) -> Polynomial {
    three_term(n, -1)
}

/// Pseudo-Hermite polynomial `(-i)^n H_n(ix)`: real, leading coefficient
/// `+2^n`, generated by `P_{n+1} = 2x P_n + 2n P_{n-1}`.
pub fn pseudo_hermite(m: usize) -> Polynomial {
    three_term(m, 1)
}

fn three_term(n: usize, sign: i64) -> Polynomial {
    let two_x = Polynomial::from_i64(&[0, 2]);
    let mut prev = Polynomial::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two_x.clone();
    for k in 1..n {
        let next = &(&two_x * &cur) + &prev.scale_by(&BigInt::from(sign * 2 * k as i64));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Exact formal derivative.
pub fn derivative(p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::new(p.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect());
    out.scale = p.scale.clone();
    out
}

/// Horner evaluation in double precision.
pub fn eval(p: &Polynomial, x: f64) -> f64 {
    p.eval_with_derivatives(x).0
}

/// Divide out the (positive) content so the coefficients are coprime.
fn primitive(coeffs: Vec<BigInt>) -> Vec<BigInt> {
    let g = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        return coeffs;
    }
    coeffs.into_iter().map(|c| c / &g).collect()
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Pseudo-remainder of `a` by `b`: returns `r` and the number `k` of
/// reduction steps, with `lc(b)^k * a = q * b + r`.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, usize) {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    let mut steps = 0;
    while r.len() > db {
        let dr = r.len() - 1;
        let lead = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (k, bk) in b.iter().enumerate() {
            r[dr - db + k] -= &lead * bk;
        }
        r = trim(r);
        steps += 1;
    }
    (r, steps)
}

/// Sturm chain of `p` with content stripped at every step. Each member has
/// the sign (up to a positive factor) of the classical chain
/// `p, p', -rem(p, p'), ...`.
pub fn sturm_chain(p: &Polynomial) -> Vec<Vec<BigInt>> {
    assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
    let mut chain = vec![primitive(p.coeffs.clone())];
    let dp = derivative(p);
    if dp.is_zero() {
        return chain;
    }
    chain.push(primitive(dp.coeffs.clone()));
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.len() == 1 {
            break;
        }
        let (r, steps) = pseudo_remainder(a, b);
        if r.is_empty() {
            break;
        }
        // r = lc(b)^steps * rem(a, b); the chain needs -rem(a, b)
        let flip = b[b.len() - 1].is_negative() && steps % 2 == 1;
        let next: Vec<BigInt> = if flip { r } else { r.into_iter().map(|c| -c).collect() };
        chain.push(primitive(next));
    }
    chain
}

fn sign_at_infinity(c: &[BigInt], negative: bool) -> i32 {
    let lead = c.last().expect("nonzero chain member");
    let mut s = if lead.is_negative() { -1 } else { 1 };
    if negative && (c.len() - 1) % 2 == 1 {
        s = -s;
    }
    s
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut count = 0;
    let mut last = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots, decided exactly by Sturm's theorem over
/// `(-inf, inf)`.
pub fn real_root_count(p: &Polynomial) -> usize {
    let chain = sturm_chain(p);
    let minus = variations(chain.iter().map(|c| sign_at_infinity(c, true)));
    let plus = variations(chain.iter().map(|c| sign_at_infinity(c, false)));
    minus - plus
}

/// True iff `p` has no real root.
pub fn certify_nodeless(p: &Polynomial) -> bool {
    real_root_count(p) == 0
}
