//! Operator-expression language for stating identities against a bound
//! operator set.
//!
//! ```text
//! expr    := term (("+" | "-") term)* ;
//! term    := factor ("*" factor)* ;
//! factor  := "-" factor | postfix ;
//! postfix := atom ("'" | "^" integer)* ;
//! atom    := number | rational | ident | "(" expr ")" | "[" expr "," expr "]" ;
//! rational:= integer "/" integer ;
//! ident   := letter (letter | digit | "_")* ;
//! ```
//!
//! `'` is the adjoint and `U+2212` is accepted as a minus sign.

mod ast;
mod eval;
mod lexer;
mod parser;
mod prelude;

use std::fmt;

use thiserror::Error;

pub use ast::{Expr, Scalar};
pub use eval::{evaluate, evaluate_value, Bindings, Value, MAX_OPERATOR_POWER};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, parse_str, MAX_DEPTH};
pub use prelude::{check_zero, split_terms, CheckOutcome, Prelude};

use crate::numerics::NumericsError;

#[derive(Clone, Debug, PartialEq)]
pub enum ParseErrorKind {
    UnknownCharacter(char),
    MalformedNumber,
    UnexpectedToken(String),
    UnexpectedEnd,
    Unbalanced { open: char, opened_at: usize },
    UnmatchedClose(char),
    NonIntegerExponent,
    ExponentOutOfRange,
    TooDeep,
}

/// Parse or lexical failure at a character offset.
#[derive(Clone, Debug, PartialEq, Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, offset: usize) -> Self {
        Self { kind, offset }
    }
}

fn delimiter_name(c: char) -> &'static str {
    if c == '[' || c == ']' {
        "bracket"
    } else {
        "parenthesis"
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = self.offset;
        match &self.kind {
            ParseErrorKind::UnknownCharacter(c) => write!(f, "unknown character {c:?} at offset {at}"),
            ParseErrorKind::MalformedNumber => write!(f, "malformed number at offset {at}"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected {t} at offset {at}"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input at offset {at}"),
            ParseErrorKind::Unbalanced { open, opened_at } => {
                write!(f, "unbalanced {} at offset {at} (opened at offset {opened_at})", delimiter_name(*open))
            }
            ParseErrorKind::UnmatchedClose(c) => write!(f, "unmatched closing {} at offset {at}", delimiter_name(*c)),
            ParseErrorKind::NonIntegerExponent => write!(f, "exponent must be a nonnegative integer at offset {at}"),
            ParseErrorKind::ExponentOutOfRange => write!(f, "exponent out of range at offset {at}"),
            ParseErrorKind::TooDeep => write!(f, "nesting deeper than {MAX_DEPTH} at offset {at}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum EvalError {
    #[error("unbound symbol '{0}'")]
    Unbound(String),
    #[error("expression evaluates to a scalar; an operator is expected")]
    ScalarOnly,
    #[error("operator power {0} exceeds the limit of {MAX_OPERATOR_POWER}")]
    PowerTooLarge(u32),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum OplangError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[cfg(test)]
mod tests;
