use super::ast::{Expr, Scalar};
use super::lexer::{tokenize, Token, TokenKind};
use super::{ParseError, ParseErrorKind};

/// Nesting limit, so hostile input cannot exhaust the stack.
pub const MAX_DEPTH: usize = 200;

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    end: usize,
    depth: usize,
}

pub fn parse(tokens: &[Token]) -> Result<Expr, ParseError> {
    let end = tokens.last().map_or(0, |t| t.offset + t.lexeme.chars().count());
    parse_with_end(tokens, end)
}

/// Tokenizes and parses; end-of-input errors point one past the last
/// character.
pub fn parse_str(input: &str) -> Result<Expr, ParseError> {
    parse_with_end(&tokenize(input)?, input.chars().count())
}

fn parse_with_end(tokens: &[Token], end: usize) -> Result<Expr, ParseError> {
    let mut p = Parser { tokens, pos: 0, end, depth: 0 };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(t) if matches!(t.kind, TokenKind::RParen | TokenKind::RBracket) => {
            Err(ParseError::new(ParseErrorKind::UnmatchedClose(t.lexeme.chars().next().unwrap_or(')')), t.offset))
        }
        Some(t) => Err(p.unexpected(t)),
    }
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn unexpected(&self, t: &Token) -> ParseError {
        ParseError::new(ParseErrorKind::UnexpectedToken(t.kind.describe().to_string()), t.offset)
    }

    fn descend(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let at = self.peek().map_or(self.end, |t| t.offset);
            return Err(ParseError::new(ParseErrorKind::TooDeep, at));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.descend()?;
        let mut lhs = self.term()?;
        while let Some(kind) = self.peek().map(|t| t.kind.clone()) {
            match kind {
                TokenKind::Plus => {
                    self.pos += 1;
                    lhs = Expr::add(lhs, self.term()?);
                }
                TokenKind::Minus => {
                    self.pos += 1;
                    lhs = Expr::sub(lhs, self.term()?);
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Star)) {
            self.pos += 1;
            lhs = Expr::mul(lhs, self.factor()?);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Minus)) {
            self.pos += 1;
            self.descend()?;
            let inner = self.factor()?;
            self.depth -= 1;
            return Ok(Expr::negate(inner));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.atom()?;
        loop {
            match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Dag) => {
                    self.pos += 1;
                    e = Expr::dagger(e);
                }
                Some(TokenKind::Caret) => {
                    self.pos += 1;
                    let n = self.exponent()?;
                    e = Expr::Pow(Box::new(e), n);
                }
                _ => return Ok(e),
            }
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let end = self.end;
        match self.next() {
            Some(t) => {
                let at = t.offset;
                match t.kind {
                    TokenKind::Number(_) if t.lexeme.chars().all(|c| c.is_ascii_digit()) => {
                        t.lexeme.parse().map_err(|_| ParseError::new(ParseErrorKind::ExponentOutOfRange, at))
                    }
                    TokenKind::Number(_) | TokenKind::Rational(..) | TokenKind::Minus => {
                        Err(ParseError::new(ParseErrorKind::NonIntegerExponent, at))
                    }
                    _ => Err(ParseError::new(ParseErrorKind::UnexpectedToken(t.kind.describe().to_string()), at)),
                }
            }
            None => Err(ParseError::new(ParseErrorKind::UnexpectedEnd, end)),
        }
    }

    fn closing(&mut self, want: TokenKind, open: char, opened_at: usize) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t.kind == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.unexpected(t)),
            None => Err(ParseError::new(ParseErrorKind::Unbalanced { open, opened_at }, self.end)),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let end = self.end;
        let Some(t) = self.next().cloned() else {
            return Err(ParseError::new(ParseErrorKind::UnexpectedEnd, end));
        };
        match t.kind {
            TokenKind::Number(v) => Ok(Expr::Scalar(Scalar::Number(v))),
            TokenKind::Rational(p, q) => Ok(Expr::Scalar(Scalar::Rational(p, q))),
            TokenKind::Ident => Ok(Expr::Symbol(t.lexeme)),
            TokenKind::LParen => {
                let e = self.expr()?;
                self.closing(TokenKind::RParen, '(', t.offset)?;
                Ok(e)
            }
            TokenKind::LBracket => {
                let a = self.expr()?;
                match self.peek() {
                    Some(c) if c.kind == TokenKind::Comma => self.pos += 1,
                    Some(c) => return Err(self.unexpected(c)),
                    None => {
                        return Err(ParseError::new(ParseErrorKind::Unbalanced { open: '[', opened_at: t.offset }, end))
                    }
                }
                let b = self.expr()?;
                self.closing(TokenKind::RBracket, '[', t.offset)?;
                Ok(Expr::commutator(a, b))
            }
            _ => Err(self.unexpected(&t)),
        }
    }
}
