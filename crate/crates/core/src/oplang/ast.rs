use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Number(f64),
    Rational(u64, u64),
}

impl Scalar {
    pub fn value(&self) -> f64 {
        match *self {
            Scalar::Number(v) => v,
            Scalar::Rational(p, q) => p as f64 / q as f64,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Scalar(Scalar),
    Symbol(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Commutator(Box<Expr>, Box<Expr>),
    Dagger(Box<Expr>),
    Negate(Box<Expr>),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn symbol(name: &str) -> Self {
        Expr::Symbol(name.to_string())
    }

    pub fn add(a: Expr, b: Expr) -> Self {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Self {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Self {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn commutator(a: Expr, b: Expr) -> Self {
        Expr::Commutator(Box::new(a), Box::new(b))
    }

    pub fn dagger(a: Expr) -> Self {
        Expr::Dagger(Box::new(a))
    }

    pub fn negate(a: Expr) -> Self {
        Expr::Negate(Box::new(a))
    }

    /// Binding strength: 0 sum, 1 product, 2 unary minus, 3 postfix or atom.
    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) => 1,
            Expr::Negate(_) => 2,
            _ => 3,
        }
    }

    /// Every symbol name, in order of appearance.
    pub fn symbols(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Scalar(_) => {}
            Expr::Symbol(s) => out.push(s),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Commutator(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            Expr::Pow(a, _) | Expr::Dagger(a) | Expr::Negate(a) => a.collect_symbols(out),
        }
    }
}

struct Wrapped<'a>(&'a Expr, u8);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.level() < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Prints with the fewest parentheses that reparse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Scalar(Scalar::Number(v)) => write!(f, "{v}"),
            Expr::Scalar(Scalar::Rational(p, q)) => write!(f, "{p}/{q}"),
            Expr::Symbol(s) => write!(f, "{s}"),
            Expr::Add(a, b) => write!(f, "{} + {}", Wrapped(a, 0), Wrapped(b, 1)),
            Expr::Sub(a, b) => write!(f, "{} - {}", Wrapped(a, 0), Wrapped(b, 1)),
            Expr::Mul(a, b) => write!(f, "{} * {}", Wrapped(a, 1), Wrapped(b, 2)),
            Expr::Negate(a) => write!(f, "-{}", Wrapped(a, 2)),
            Expr::Pow(a, n) => write!(f, "{}^{n}", Wrapped(a, 3)),
            Expr::Dagger(a) => write!(f, "{}'", Wrapped(a, 3)),
            Expr::Commutator(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}
