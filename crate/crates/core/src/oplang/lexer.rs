use super::{ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq)]
pub enum TokenKind {
    Ident,
    Number(f64),
    Rational(u64, u64),
    Plus,
    Minus,
    Star,
    Caret,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Dag,
}

impl TokenKind {
    pub fn describe(&self) -> &'static str {
        match self {
            TokenKind::Ident => "identifier",
            TokenKind::Number(_) => "number",
            TokenKind::Rational(..) => "rational",
            TokenKind::Plus => "'+'",
            TokenKind::Minus => "'-'",
            TokenKind::Star => "'*'",
            TokenKind::Caret => "'^'",
            TokenKind::LBracket => "'['",
            TokenKind::RBracket => "']'",
            TokenKind::LParen => "'('",
            TokenKind::RParen => "')'",
            TokenKind::Comma => "','",
            TokenKind::Dag => "'''",
        }
    }
}

/// A token with its character offset in the source.
#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub offset: usize,
}

fn single(c: char) -> Option<TokenKind> {
    Some(match c {
        '+' => TokenKind::Plus,
        '-' | '\u{2212}' => TokenKind::Minus,
        '*' => TokenKind::Star,
        '^' => TokenKind::Caret,
        '[' => TokenKind::LBracket,
        ']' => TokenKind::RBracket,
        '(' => TokenKind::LParen,
        ')' => TokenKind::RParen,
        ',' => TokenKind::Comma,
        '\'' => TokenKind::Dag,
        _ => return None,
    })
}

/// Splits `input` into tokens. Offsets count characters, not bytes.
pub fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if let Some(kind) = single(c) {
            out.push(Token { kind, lexeme: c.to_string(), offset: i });
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { kind: TokenKind::Ident, lexeme: chars[start..i].iter().collect(), offset: start });
        } else if c.is_ascii_digit() || c == '.' {
            let (token, next) = number(&chars, i)?;
            out.push(token);
            i = next;
        } else {
            return Err(ParseError::new(ParseErrorKind::UnknownCharacter(c), i));
        }
    }
    Ok(out)
}

fn digits(chars: &[char], mut i: usize) -> usize {
    while i < chars.len() && chars[i].is_ascii_digit() {
        i += 1;
    }
    i
}

fn number(chars: &[char], start: usize) -> Result<(Token, usize), ParseError> {
    let malformed = |at: usize| ParseError::new(ParseErrorKind::MalformedNumber, at);
    let int_end = digits(chars, start);
    let mut i = int_end;
    let mut integral = int_end > start;
    if i < chars.len() && chars[i] == '.' {
        let frac_end = digits(chars, i + 1);
        if frac_end == i + 1 || int_end == start {
            return Err(malformed(start));
        }
        i = frac_end;
        integral = false;
    }
    if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
        let mut j = i + 1;
        if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
            j += 1;
        }
        let exp_end = digits(chars, j);
        if exp_end == j {
            return Err(malformed(start));
        }
        i = exp_end;
        integral = false;
    }
    let den_end = if i < chars.len() && chars[i] == '/' { digits(chars, i + 1) } else { i };
    if den_end > i + 1 {
        if !integral {
            return Err(malformed(start));
        }
        let lexeme: String = chars[start..den_end].iter().collect();
        let num: u64 = chars[start..int_end].iter().collect::<String>().parse().map_err(|_| malformed(start))?;
        let den: u64 = chars[i + 1..den_end].iter().collect::<String>().parse().map_err(|_| malformed(start))?;
        if den == 0 {
            return Err(malformed(start));
        }
        return Ok((Token { kind: TokenKind::Rational(num, den), lexeme, offset: start }, den_end));
    }
    if i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_' || chars[i] == '.') {
        return Err(malformed(start));
    }
    let lexeme: String = chars[start..i].iter().collect();
    let value: f64 = lexeme.parse().map_err(|_| malformed(start))?;
    if !value.is_finite() {
        return Err(malformed(start));
    }
    Ok((Token { kind: TokenKind::Number(value), lexeme, offset: start }, i))
}
