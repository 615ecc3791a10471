//! Recursive-descent parser for the form language:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('^' unary)*
//! unary   := ('-' | '+') unary | product
//! product := atom (('*')? atom)*
//! atom    := number ('/' number)? | 'x' index | 'dx[' indices ']' | '@' name
//!          | 'd(' expr ')' | 'i_[' fields '](' expr ')' | 'L_[' fields '](' expr ')'
//!          | '(' expr ')' | '[' fields ']'
//! ```
//!
//! Types are checked while parsing so that errors carry the column where
//! they arise.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::expr::FormExpression;
use crate::algebra::Rational;
use crate::registry;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical(char),
    Unexpected {
        found: String,
        expected: &'static str,
    },
    ZeroDenominator,
    IndexOutOfRange {
        index: usize,
        dim: usize,
    },
    DegreeMismatch {
        left: usize,
        right: usize,
    },
    DegreeOverflow {
        degree: usize,
        dim: usize,
    },
    FormProduct {
        left: usize,
        right: usize,
    },
    Arity {
        expected: usize,
        got: usize,
    },
    FieldInFormPosition,
    FormInFieldPosition,
    NotAFunction {
        degree: usize,
    },
    Preset(String),
}

/// A parse error at a 1-based column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ParseErrorKind::*;
        write!(f, "column {}: ", self.column)?;
        match &self.kind {
            Lexical(c) => write!(f, "unexpected character `{c}`"),
            Unexpected { found, expected } => write!(f, "expected {expected}, found {found}"),
            ZeroDenominator => write!(f, "zero denominator"),
            IndexOutOfRange { index, dim } => write!(f, "index {index} out of range 1..={dim}"),
            DegreeMismatch { left, right } => {
                write!(f, "cannot add a {left}-form and a {right}-form")
            }
            DegreeOverflow { degree, dim } => write!(f, "degree {degree} exceeds dimension {dim}"),
            FormProduct { left, right } => {
                write!(f, "`*` needs a function on one side (got degrees {left} and {right}); use `^` for wedge")
            }
            Arity { expected, got } => {
                write!(f, "vector field needs {expected} components, got {got}")
            }
            FieldInFormPosition => write!(f, "vector field used where a form is expected"),
            FormInFieldPosition => write!(f, "form used where a vector field is expected"),
            NotAFunction { degree } => {
                write!(f, "field component must be a function, got a {degree}-form")
            }
            Preset(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for ParseError {}

/// Static type of a parsed expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExprType {
    Form(usize),
    Field,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Num(BigInt),
    Var(usize),
    BasisOpen,
    DOpen,
    InteriorOpen,
    LieOpen,
    Preset(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Num(n) => format!("number `{n}`"),
            Token::Var(i) => format!("`x{i}`"),
            Token::BasisOpen => "`dx[`".into(),
            Token::DOpen => "`d(`".into(),
            Token::InteriorOpen => "`i_[`".into(),
            Token::LieOpen => "`L_[`".into(),
            Token::Preset(n) => format!("`@{n}`"),
            Token::LBracket => "`[`".into(),
            Token::RBracket => "`]`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Comma => "`,`".into(),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Star => "`*`".into(),
            Token::Caret => "`^`".into(),
            Token::Slash => "`/`".into(),
            Token::End => "end of input".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self,
            Token::Num(_)
                | Token::Var(_)
                | Token::BasisOpen
                | Token::DOpen
                | Token::InteriorOpen
                | Token::LieOpen
                | Token::Preset(_)
                | Token::LParen
        )
    }
}

fn lex(input: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |from: usize| {
        let mut j = from;
        while j < chars.len() && chars[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    let rest_starts = |i: usize, s: &str| {
        chars[i..]
            .iter()
            .take(s.chars().count())
            .copied()
            .eq(s.chars())
    };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let err = |column| ParseError {
            column,
            kind: ParseErrorKind::Lexical(c),
        };
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let (tok, next) = match c {
            '0'..='9' => {
                let j = digits(i);
                let s: String = chars[i..j].iter().collect();
                (Token::Num(s.parse().expect("digits")), j)
            }
            'x' => {
                let j = digits(i + 1);
                if j == i + 1 {
                    return Err(err(col));
                }
                let s: String = chars[i + 1..j].iter().collect();
                let index = s.parse().unwrap_or(usize::MAX);
                (Token::Var(index), j)
            }
            'd' if rest_starts(i, "dx[") => (Token::BasisOpen, i + 3),
            'd' if rest_starts(i, "d(") => (Token::DOpen, i + 2),
            'i' if rest_starts(i, "i_[") => (Token::InteriorOpen, i + 3),
            'L' if rest_starts(i, "L_[") => (Token::LieOpen, i + 3),
            '@' => {
                let mut j = i + 1;
                while j < chars.len()
                    && (chars[j].is_ascii_alphanumeric() || chars[j] == '_' || chars[j] == ':')
                {
                    j += 1;
                }
                if j == i + 1 {
                    return Err(err(col));
                }
                (Token::Preset(chars[i + 1..j].iter().collect()), j)
            }
            '[' => (Token::LBracket, i + 1),
            ']' => (Token::RBracket, i + 1),
            '(' => (Token::LParen, i + 1),
            ')' => (Token::RParen, i + 1),
            ',' => (Token::Comma, i + 1),
            '+' => (Token::Plus, i + 1),
            '-' | '−' => (Token::Minus, i + 1),
            '*' => (Token::Star, i + 1),
            '^' | '∧' => (Token::Caret, i + 1),
            '/' => (Token::Slash, i + 1),
            _ => return Err(err(col)),
        };
        out.push((tok, col));
        i = next;
    }
    out.push((Token::End, chars.len() + 1));
    Ok(out)
}

type Typed = (FormExpression, ExprType);

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    dim: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn column(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> (Token, usize) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { column, kind }
    }

    fn expect(&mut self, tok: Token, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(
                self.column(),
                ParseErrorKind::Unexpected {
                    found: self.peek().describe(),
                    expected,
                },
            ))
        }
    }

    fn form_degree(&self, t: ExprType, column: usize) -> Result<usize, ParseError> {
        match t {
            ExprType::Form(k) => Ok(k),
            ExprType::Field => Err(self.error(column, ParseErrorKind::FieldInFormPosition)),
        }
    }

    fn expr(&mut self) -> Result<Typed, ParseError> {
        let start = self.column();
        let (mut node, mut ty) = self.term()?;
        loop {
            let add = match self.peek() {
                Token::Plus => true,
                Token::Minus => false,
                _ => return Ok((node, ty)),
            };
            let (_, col) = self.bump();
            let left = self.form_degree(ty, start)?;
            let rcol = self.column();
            let (rhs, rty) = self.term()?;
            let right = self.form_degree(rty, rcol)?;
            if left != right {
                return Err(self.error(col, ParseErrorKind::DegreeMismatch { left, right }));
            }
            node = if add {
                FormExpression::Add(Box::new(node), Box::new(rhs))
            } else {
                FormExpression::Sub(Box::new(node), Box::new(rhs))
            };
            ty = ExprType::Form(left);
        }
    }

    fn term(&mut self) -> Result<Typed, ParseError> {
        let start = self.column();
        let (mut node, mut ty) = self.unary()?;
        while *self.peek() == Token::Caret {
            let (_, col) = self.bump();
            let left = self.form_degree(ty, start)?;
            let rcol = self.column();
            let (rhs, rty) = self.unary()?;
            let right = self.form_degree(rty, rcol)?;
            if left + right > self.dim {
                return Err(self.error(
                    col,
                    ParseErrorKind::DegreeOverflow {
                        degree: left + right,
                        dim: self.dim,
                    },
                ));
            }
            node = FormExpression::Wedge(Box::new(node), Box::new(rhs));
            ty = ExprType::Form(left + right);
        }
        Ok((node, ty))
    }

    fn unary(&mut self) -> Result<Typed, ParseError> {
        match self.peek() {
            Token::Minus => {
                self.bump();
                let col = self.column();
                let (node, ty) = self.unary()?;
                self.form_degree(ty, col)?;
                Ok((FormExpression::Neg(Box::new(node)), ty))
            }
            Token::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.product(),
        }
    }

    fn product(&mut self) -> Result<Typed, ParseError> {
        let start = self.column();
        let (mut node, mut ty) = self.atom()?;
        loop {
            let col = self.column();
            if *self.peek() == Token::Star {
                self.bump();
            } else if !self.peek().starts_atom() {
                return Ok((node, ty));
            }
            let left = self.form_degree(ty, start)?;
            let rcol = self.column();
            let (rhs, rty) = self.atom()?;
            let right = self.form_degree(rty, rcol)?;
            if left > 0 && right > 0 {
                return Err(self.error(col, ParseErrorKind::FormProduct { left, right }));
            }
            node = FormExpression::Mul(Box::new(node), Box::new(rhs));
            ty = ExprType::Form(left + right);
        }
    }

    fn check_index(&self, index: usize, column: usize) -> Result<usize, ParseError> {
        if (1..=self.dim).contains(&index) {
            Ok(index)
        } else {
            Err(self.error(
                column,
                ParseErrorKind::IndexOutOfRange {
                    index,
                    dim: self.dim,
                },
            ))
        }
    }

    fn small_number(&mut self) -> Result<(usize, usize), ParseError> {
        let col = self.column();
        match self.bump().0 {
            Token::Num(n) => Ok((usize::try_from(n).unwrap_or(usize::MAX), col)),
            other => Err(self.error(
                col,
                ParseErrorKind::Unexpected {
                    found: other.describe(),
                    expected: "an index",
                },
            )),
        }
    }

    fn components(&mut self) -> Result<Vec<FormExpression>, ParseError> {
        let open = self.column();
        let mut out = Vec::new();
        if *self.peek() != Token::RBracket {
            loop {
                let col = self.column();
                let (node, ty) = self.expr()?;
                match ty {
                    ExprType::Form(0) => out.push(node),
                    ExprType::Form(degree) => {
                        return Err(self.error(col, ParseErrorKind::NotAFunction { degree }))
                    }
                    ExprType::Field => {
                        return Err(self.error(col, ParseErrorKind::FieldInFormPosition))
                    }
                }
                if *self.peek() == Token::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Token::RBracket, "`,` or `]`")?;
        if out.len() != self.dim {
            return Err(self.error(
                open,
                ParseErrorKind::Arity {
                    expected: self.dim,
                    got: out.len(),
                },
            ));
        }
        Ok(out)
    }

    fn operator_argument(&mut self) -> Result<(FormExpression, usize, usize), ParseError> {
        self.expect(Token::LParen, "`(`")?;
        let col = self.column();
        let (node, ty) = self.expr()?;
        let degree = self.form_degree(ty, col)?;
        self.expect(Token::RParen, "`)`")?;
        Ok((node, degree, col))
    }

    fn atom(&mut self) -> Result<Typed, ParseError> {
        let (tok, col) = self.bump();
        match tok {
            Token::Num(n) => {
                let mut q = Rational::from_integer(n);
                if *self.peek() == Token::Slash {
                    self.bump();
                    let dcol = self.column();
                    match self.bump().0 {
                        Token::Num(d) if d.is_zero() => {
                            return Err(self.error(dcol, ParseErrorKind::ZeroDenominator))
                        }
                        Token::Num(d) => q /= Rational::from_integer(d),
                        other => {
                            return Err(self.error(
                                dcol,
                                ParseErrorKind::Unexpected {
                                    found: other.describe(),
                                    expected: "a denominator",
                                },
                            ))
                        }
                    }
                }
                Ok((FormExpression::Number(q), ExprType::Form(0)))
            }
            Token::Var(i) => {
                self.check_index(i, col)?;
                Ok((FormExpression::Var(i), ExprType::Form(0)))
            }
            Token::BasisOpen => {
                let mut indices = Vec::new();
                if *self.peek() != Token::RBracket {
                    loop {
                        let (i, icol) = self.small_number()?;
                        indices.push(self.check_index(i, icol)?);
                        if *self.peek() == Token::Comma {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Token::RBracket, "`,` or `]`")?;
                if indices.len() > self.dim {
                    return Err(self.error(
                        col,
                        ParseErrorKind::DegreeOverflow {
                            degree: indices.len(),
                            dim: self.dim,
                        },
                    ));
                }
                let k = indices.len();
                Ok((FormExpression::Basis(indices), ExprType::Form(k)))
            }
            Token::Preset(name) => {
                let form = registry::form(&name)
                    .map_err(|e| self.error(col, ParseErrorKind::Preset(e.to_string())))?;
                if form.dim() != self.dim {
                    return Err(self.error(
                        col,
                        ParseErrorKind::Preset(format!(
                            "@{name} lives in dimension {}, not {}",
                            form.dim(),
                            self.dim
                        )),
                    ));
                }
                Ok((FormExpression::Preset(name), ExprType::Form(form.degree())))
            }
            Token::DOpen => {
                let inner = self.column();
                let (node, ty) = self.expr()?;
                let k = self.form_degree(ty, inner)?;
                self.expect(Token::RParen, "`)`")?;
                if k + 1 > self.dim {
                    return Err(self.error(
                        col,
                        ParseErrorKind::DegreeOverflow {
                            degree: k + 1,
                            dim: self.dim,
                        },
                    ));
                }
                Ok((FormExpression::D(Box::new(node)), ExprType::Form(k + 1)))
            }
            Token::InteriorOpen | Token::LieOpen => {
                let field = self.components()?;
                let (node, k, acol) = self.operator_argument()?;
                if tok == Token::InteriorOpen {
                    if k == 0 {
                        return Err(
                            self.error(acol, ParseErrorKind::DegreeMismatch { left: 1, right: 0 })
                        );
                    }
                    Ok((
                        FormExpression::Interior(field, Box::new(node)),
                        ExprType::Form(k - 1),
                    ))
                } else {
                    Ok((
                        FormExpression::Lie(field, Box::new(node)),
                        ExprType::Form(k),
                    ))
                }
            }
            Token::LParen => {
                let typed = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(typed)
            }
            Token::LBracket => Ok((FormExpression::Field(self.components()?), ExprType::Field)),
            other => Err(self.error(
                col,
                ParseErrorKind::Unexpected {
                    found: other.describe(),
                    expected: "an expression",
                },
            )),
        }
    }
}

/// Parses and type-checks `input` on an `ambient_dim`-dimensional chart.
pub fn parse(input: &str, ambient_dim: usize) -> Result<(FormExpression, ExprType), ParseError> {
    let mut p = Parser {
        tokens: lex(input)?,
        pos: 0,
        dim: ambient_dim,
    };
    let typed = p.expr()?;
    if *p.peek() != Token::End {
        return Err(p.error(
            p.column(),
            ParseErrorKind::Unexpected {
                found: p.peek().describe(),
                expected: "an operator or end of input",
            },
        ));
    }
    Ok(typed)
}

/// Parses an expression that must denote a differential form.
pub fn parse_form(input: &str, ambient_dim: usize) -> Result<(FormExpression, usize), ParseError> {
    match parse(input, ambient_dim)? {
        (e, ExprType::Form(k)) => Ok((e, k)),
        (_, ExprType::Field) => Err(ParseError {
            column: 1,
            kind: ParseErrorKind::FieldInFormPosition,
        }),
    }
}

/// Parses a bracketed vector-field literal.
pub fn parse_field(input: &str, ambient_dim: usize) -> Result<FormExpression, ParseError> {
    match parse(input, ambient_dim)? {
        (e, ExprType::Field) => Ok(e),
        _ => Err(ParseError {
            column: 1,
            kind: ParseErrorKind::FormInFieldPosition,
        }),
    }
}
