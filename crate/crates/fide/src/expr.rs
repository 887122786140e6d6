//! Arithmetic expression language for problem definitions.
//!
//! Grammar (LL(1), ASCII source; `t` spells the integration variable):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := unary ('^' factor)?
//! unary   := '-' unary | primary
//! primary := NUMBER | IDENT | IDENT '(' expr (',' expr)* ')' | '(' expr ')'
//! NUMBER  := digits ('.' digits)? (('e' | 'E') ('+' | '-')? digits)?
//! ```
//!
//! `^` is right-associative. There is no implicit multiplication: `2x` is a
//! syntax error. Functions: exp, ln, sqrt, sin, cos, abs, gamma; constants pi
//! and e become number literals at parse time. Exponentiation of a negative
//! base by a non-integer power is an evaluation error rather than a complex
//! result.

use std::fmt;

use crate::gamma;
use crate::scalar::Real;

/// Byte range of a node or token in the source string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

/// The two variables: `x` (outer) and `t` (integration).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    T,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::T => "t",
        })
    }
}

/// Registered functions, all of arity one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Ln,
    Sqrt,
    Sin,
    Cos,
    Abs,
    Gamma,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "abs" => Func::Abs,
            "gamma" => Func::Gamma,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Abs => "abs",
            Func::Gamma => "gamma",
        }
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Binary operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

/// Expression tree. Equality is structural and ignores spans.
#[derive(Debug, Clone)]
pub struct Expr {
    kind: ExprKind,
    span: Span,
}

#[derive(Debug, Clone)]
pub enum ExprKind {
    Number(f64),
    Variable(Var),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        match (&self.kind, &other.kind) {
            (ExprKind::Number(a), ExprKind::Number(b)) => a == b,
            (ExprKind::Variable(a), ExprKind::Variable(b)) => a == b,
            (ExprKind::Neg(a), ExprKind::Neg(b)) => a == b,
            (ExprKind::Binary(op_a, la, ra), ExprKind::Binary(op_b, lb, rb)) => {
                op_a == op_b && la == lb && ra == rb
            }
            (ExprKind::Call(fa, aa), ExprKind::Call(fb, ab)) => fa == fb && aa == ab,
            _ => false,
        }
    }
}

impl Expr {
    pub fn kind(&self) -> &ExprKind {
        &self.kind
    }

    pub fn span(&self) -> Span {
        self.span
    }

    /// True when no variable occurs anywhere in the tree.
    pub fn is_constant(&self) -> bool {
        match &self.kind {
            ExprKind::Number(_) => true,
            ExprKind::Variable(_) => false,
            ExprKind::Neg(child) => child.is_constant(),
            ExprKind::Binary(_, l, r) => l.is_constant() && r.is_constant(),
            ExprKind::Call(_, args) => args.iter().all(Expr::is_constant),
        }
    }

    /// Evaluate at the point (x, t).
    pub fn eval<R: Real>(&self, x: R, t: R) -> Result<R, EvalError> {
        let fail = |kind| {
            Err(EvalError {
                kind,
                span: self.span,
            })
        };
        let finite = |v: R| {
            if v.is_finite() {
                Ok(v)
            } else {
                Err(EvalError {
                    kind: EvalErrorKind::NonFinite,
                    span: self.span,
                })
            }
        };
        match &self.kind {
            ExprKind::Number(v) => Ok(R::of(*v)),
            ExprKind::Variable(Var::X) => Ok(x),
            ExprKind::Variable(Var::T) => Ok(t),
            ExprKind::Neg(child) => Ok(-child.eval(x, t)?),
            ExprKind::Binary(op, l, r) => {
                let a = l.eval(x, t)?;
                let b = r.eval(x, t)?;
                match op {
                    BinOp::Add => finite(a + b),
                    BinOp::Sub => finite(a - b),
                    BinOp::Mul => finite(a * b),
                    BinOp::Div => {
                        if b == R::zero() {
                            return fail(EvalErrorKind::DivisionByZero);
                        }
                        finite(a / b)
                    }
                    BinOp::Pow => {
                        if a < R::zero() && b.fract() != R::zero() {
                            return fail(EvalErrorKind::NegativeBasePower);
                        }
                        if a == R::zero() && b < R::zero() {
                            return fail(EvalErrorKind::DivisionByZero);
                        }
                        finite(a.powf(b))
                    }
                }
            }
            ExprKind::Call(func, args) => {
                let v = args[0].eval(x, t)?;
                match func {
                    Func::Exp => finite(v.exp()),
                    Func::Ln => {
                        if v <= R::zero() {
                            return fail(EvalErrorKind::LogDomain);
                        }
                        finite(v.ln())
                    }
                    Func::Sqrt => {
                        if v < R::zero() {
                            return fail(EvalErrorKind::SqrtDomain);
                        }
                        Ok(v.sqrt())
                    }
                    Func::Sin => Ok(v.sin()),
                    Func::Cos => Ok(v.cos()),
                    Func::Abs => Ok(v.abs()),
                    Func::Gamma => match gamma::gamma(v) {
                        Ok(g) => finite(g),
                        Err(_) => fail(EvalErrorKind::GammaDomain),
                    },
                }
            }
        }
    }

    fn needs_parens_as_unary(&self) -> bool {
        matches!(self.kind, ExprKind::Binary(..))
    }
}

/// Minimal-parentheses rendering that reparses to a structurally identical
/// tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn paren(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
            write!(f, "({e})")
        }
        match &self.kind {
            ExprKind::Number(v) => write!(f, "{v}"),
            ExprKind::Variable(v) => write!(f, "{v}"),
            ExprKind::Neg(child) => {
                write!(f, "-")?;
                if child.needs_parens_as_unary() {
                    paren(f, child)
                } else {
                    write!(f, "{child}")
                }
            }
            ExprKind::Binary(op, l, r) => {
                match op {
                    BinOp::Add | BinOp::Sub => {
                        // left operand sits in expr position: anything goes
                        write!(f, "{l}{}", op.symbol())?;
                        // right operand is a term
                        if matches!(r.kind, ExprKind::Binary(BinOp::Add | BinOp::Sub, ..)) {
                            paren(f, r)
                        } else {
                            write!(f, "{r}")
                        }
                    }
                    BinOp::Mul | BinOp::Div => {
                        if matches!(l.kind, ExprKind::Binary(BinOp::Add | BinOp::Sub, ..)) {
                            paren(f, l)?;
                        } else {
                            write!(f, "{l}")?;
                        }
                        write!(f, "{}", op.symbol())?;
                        // right operand is a factor
                        if matches!(
                            r.kind,
                            ExprKind::Binary(BinOp::Add | BinOp::Sub | BinOp::Mul | BinOp::Div, ..)
                        ) {
                            paren(f, r)
                        } else {
                            write!(f, "{r}")
                        }
                    }
                    BinOp::Pow => {
                        // base is a unary; a nested pow on the left would
                        // re-associate to the right without parentheses
                        if l.needs_parens_as_unary() {
                            paren(f, l)?;
                        } else {
                            write!(f, "{l}")?;
                        }
                        write!(f, "^")?;
                        if matches!(
                            r.kind,
                            ExprKind::Binary(BinOp::Add | BinOp::Sub | BinOp::Mul | BinOp::Div, ..)
                        ) {
                            paren(f, r)
                        } else {
                            write!(f, "{r}")
                        }
                    }
                }
            }
            ExprKind::Call(func, args) => {
                write!(f, "{func}(")?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{arg}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Parse failure, with the byte offset where it happened.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: String,
        found: String,
    },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("`{name}` takes {expected} argument(s), got {found} (at byte {offset})")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
        offset: usize,
    },
}

impl ParseError {
    /// Byte offset of the failure, for callers that prefix field context.
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::ArityMismatch { offset, .. } => *offset,
        }
    }
}

/// Evaluation failure at a specific node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at bytes {}..{}", span.start, span.end)]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalErrorKind {
    DivisionByZero,
    NegativeBasePower,
    LogDomain,
    SqrtDomain,
    GammaDomain,
    NonFinite,
}

impl fmt::Display for EvalErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalErrorKind::DivisionByZero => "division by zero",
            EvalErrorKind::NegativeBasePower => "non-integer power of a negative base",
            EvalErrorKind::LogDomain => "logarithm of a non-positive value",
            EvalErrorKind::SqrtDomain => "square root of a negative value",
            EvalErrorKind::GammaDomain => "gamma argument outside (0, 171)",
            EvalErrorKind::NonFinite => "non-finite result",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Number(v) => format!("number `{v}`"),
            Token::Ident(name) => format!("identifier `{name}`"),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Star => "`*`".into(),
            Token::Slash => "`/`".into(),
            Token::Caret => "`^`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Comma => "`,`".into(),
        }
    }
}

fn tokenize(source: &str) -> Result<Vec<(Token, Span)>, ParseError> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => tokens.push((Token::Plus, Span { start, end: i + 1 })),
            b'-' => tokens.push((Token::Minus, Span { start, end: i + 1 })),
            b'*' => tokens.push((Token::Star, Span { start, end: i + 1 })),
            b'/' => tokens.push((Token::Slash, Span { start, end: i + 1 })),
            b'^' => tokens.push((Token::Caret, Span { start, end: i + 1 })),
            b'(' => tokens.push((Token::LParen, Span { start, end: i + 1 })),
            b')' => tokens.push((Token::RParen, Span { start, end: i + 1 })),
            b',' => tokens.push((Token::Comma, Span { start, end: i + 1 })),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                        return Err(ParseError::Syntax {
                            offset: i,
                            expected: "digit after decimal point".into(),
                            found: describe_byte(bytes, i),
                        });
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                    // otherwise the `e` is a separate identifier (the constant)
                }
                let text = &source[start..i];
                let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    expected: "numeric literal".into(),
                    found: format!("`{text}`"),
                })?;
                tokens.push((Token::Number(value), Span { start, end: i }));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push((
                    Token::Ident(source[start..i].to_string()),
                    Span { start, end: i },
                ));
                continue;
            }
            _ => {
                return Err(ParseError::Syntax {
                    offset: start,
                    expected: "number, identifier, operator or parenthesis".into(),
                    found: describe_byte(bytes, start),
                });
            }
        }
        i += 1;
    }
    Ok(tokens)
}

fn describe_byte(bytes: &[u8], offset: usize) -> String {
    match bytes.get(offset) {
        Some(&b) => format!("`{}`", b as char),
        None => "end of input".into(),
    }
}

struct Parser<'a> {
    tokens: &'a [(Token, Span)],
    pos: usize,
    source_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Token, Span)> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<&(Token, Span)> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.source_len, |(_, span)| span.start)
    }

    fn found(&self) -> String {
        self.peek()
            .map_or_else(|| "end of input".into(), |(t, _)| t.describe())
    }

    fn syntax(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            expected: expected.into(),
            found: self.found(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut node = self.term()?;
        while let Some((token, _)) = self.peek() {
            let op = match token {
                Token::Plus => BinOp::Add,
                Token::Minus => BinOp::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            node = binary(op, node, rhs);
        }
        Ok(node)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut node = self.factor()?;
        while let Some((token, _)) = self.peek() {
            let op = match token {
                Token::Star => BinOp::Mul,
                Token::Slash => BinOp::Div,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.factor()?;
            node = binary(op, node, rhs);
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.unary()?;
        if let Some((Token::Caret, _)) = self.peek() {
            self.pos += 1;
            let exponent = self.factor()?; // right-associative
            return Ok(binary(BinOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some((Token::Minus, span)) = self.peek() {
            let start = span.start;
            self.pos += 1;
            let child = self.unary()?;
            let span = Span {
                start,
                end: child.span.end,
            };
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(child)),
                span,
            });
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let (token, span) = match self.bump() {
            Some(t) => (t.0.clone(), t.1),
            None => return Err(self.syntax("expression")),
        };
        match token {
            Token::Number(value) => Ok(Expr {
                kind: ExprKind::Number(value),
                span,
            }),
            Token::LParen => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((Token::RParen, close)) => Ok(Expr {
                        kind: inner.kind,
                        span: Span {
                            start: span.start,
                            end: close.end,
                        },
                    }),
                    Some(_) => {
                        self.pos -= 1;
                        Err(self.syntax("`)`"))
                    }
                    None => Err(self.syntax("`)`")),
                }
            }
            Token::Ident(name) => {
                if let Some((Token::LParen, _)) = self.peek() {
                    self.pos += 1;
                    let func = Func::from_name(&name).ok_or(ParseError::UnknownIdentifier {
                        name: name.clone(),
                        offset: span.start,
                    })?;
                    let mut args = vec![self.expr()?];
                    loop {
                        match self.bump() {
                            Some((Token::Comma, _)) => args.push(self.expr()?),
                            Some((Token::RParen, close)) => {
                                if args.len() != 1 {
                                    return Err(ParseError::ArityMismatch {
                                        name: name.clone(),
                                        expected: 1,
                                        found: args.len(),
                                        offset: span.start,
                                    });
                                }
                                return Ok(Expr {
                                    kind: ExprKind::Call(func, args),
                                    span: Span {
                                        start: span.start,
                                        end: close.end,
                                    },
                                });
                            }
                            Some(_) => {
                                self.pos -= 1;
                                return Err(self.syntax("`,` or `)`"));
                            }
                            None => return Err(self.syntax("`,` or `)`")),
                        }
                    }
                } else {
                    match name.as_str() {
                        "x" => Ok(Expr {
                            kind: ExprKind::Variable(Var::X),
                            span,
                        }),
                        "t" => Ok(Expr {
                            kind: ExprKind::Variable(Var::T),
                            span,
                        }),
                        "pi" => Ok(Expr {
                            kind: ExprKind::Number(std::f64::consts::PI),
                            span,
                        }),
                        "e" => Ok(Expr {
                            kind: ExprKind::Number(std::f64::consts::E),
                            span,
                        }),
                        _ if Func::from_name(&name).is_some() => Err(ParseError::Syntax {
                            offset: span.end,
                            expected: format!("`(` after function name `{name}`"),
                            found: self.found(),
                        }),
                        _ => Err(ParseError::UnknownIdentifier {
                            name,
                            offset: span.start,
                        }),
                    }
                }
            }
            other => Err(ParseError::Syntax {
                offset: span.start,
                expected: "expression".into(),
                found: other.describe(),
            }),
        }
    }
}

fn binary(op: BinOp, l: Expr, r: Expr) -> Expr {
    let span = Span {
        start: l.span.start,
        end: r.span.end,
    };
    Expr {
        kind: ExprKind::Binary(op, Box::new(l), Box::new(r)),
        span,
    }
}

/// Parse a source string into an expression tree, consuming all input.
pub fn parse(source: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(source)?;
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        source_len: source.len(),
    };
    let expr = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.syntax("end of input"));
    }
    Ok(expr)
}
