//! Arithmetic expressions over named parameters.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := number | identifier | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus and is right-associative; its exponent
//! must evaluate to an integer. Numbers are integer or decimal literals, so a
//! fraction `p/q` is an exact division. Evaluation is exact over the
//! rationals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::invariants::SquareMatrix;
use crate::scalar::{decimal_string, parse_rational, pow_i, Rational};

const MAX_EXPONENT: i64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    /// Non-negative literal.
    Num(Rational),
    Param(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn num(v: Rational) -> Self {
        Expr::Num(v)
    }

    pub fn param(name: &str) -> Self {
        Expr::Param(name.to_string())
    }

    pub fn neg(e: Expr) -> Self {
        Expr::Neg(Box::new(e))
    }

    pub fn binary(op: BinOp, l: Expr, r: Expr) -> Self {
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Num(_) | Expr::Param(_) => 5,
            Expr::Neg(_) => 3,
            Expr::Binary(op, ..) => op.precedence(),
        }
    }

    /// All identifiers, sorted.
    pub fn identifiers(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_identifiers(&mut out);
        out
    }

    fn collect_identifiers(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Param(n) => {
                out.insert(n.clone());
            }
            Expr::Neg(e) => e.collect_identifiers(out),
            Expr::Binary(_, l, r) => {
                l.collect_identifiers(out);
                r.collect_identifiers(out);
            }
        }
    }

    pub fn evaluate(&self, bindings: &BTreeMap<String, Rational>) -> Result<Rational> {
        match self {
            Expr::Num(v) => Ok(v.clone()),
            Expr::Param(n) => bindings
                .get(n)
                .cloned()
                .ok_or_else(|| Error::Unbound(n.clone())),
            Expr::Neg(e) => Ok(-e.evaluate(bindings)?),
            Expr::Binary(op, l, r) => {
                let a = l.evaluate(bindings)?;
                let b = r.evaluate(bindings)?;
                match op {
                    BinOp::Add => Ok(a + b),
                    BinOp::Sub => Ok(a - b),
                    BinOp::Mul => Ok(a * b),
                    BinOp::Div if b.is_zero() => Err(Error::DivisionByZero),
                    BinOp::Div => Ok(a / b),
                    BinOp::Pow => {
                        if !b.is_integer() {
                            return Err(Error::NonIntegerExponent);
                        }
                        let e = b
                            .to_integer()
                            .to_i64()
                            .filter(|e| e.abs() <= MAX_EXPONENT)
                            .ok_or_else(|| {
                                Error::Precondition(format!("exponent {b} is too large"))
                            })?;
                        pow_i(&a, e)
                    }
                }
            }
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Canonical form with the minimal parentheses the grammar needs.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) if v.is_integer() && *v >= Rational::zero() => write!(f, "{v}"),
            Expr::Num(v) => match decimal_string(v) {
                Some(s) if *v >= Rational::zero() => f.write_str(&s),
                _ => write!(f, "({v})"),
            },
            Expr::Param(n) => f.write_str(n),
            Expr::Neg(e) => {
                f.write_str("-")?;
                e.fmt_child(f, e.precedence() < 3)
            }
            Expr::Binary(BinOp::Pow, l, r) => {
                l.fmt_child(f, l.precedence() < 5)?;
                f.write_str("^")?;
                r.fmt_child(f, r.precedence() < 3)
            }
            Expr::Binary(op, l, r) => {
                let p = op.precedence();
                l.fmt_child(f, l.precedence() < p)?;
                write!(f, " {} ", op.symbol())?;
                r.fmt_child(f, r.precedence() <= p)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            let text = &src[start..i];
            let v = parse_rational(text).map_err(|_| Error::Syntax {
                pos: start,
                msg: format!("malformed number `{text}`"),
            })?;
            out.push((Tok::Num(v), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else {
            let tok = match c {
                '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(Error::Syntax {
                        pos: i,
                        msg: format!(
                            "unexpected character `{}`",
                            src[i..].chars().next().unwrap()
                        ),
                    })
                }
            };
            out.push((tok, i));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    params: Option<&'a [String]>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn syntax(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.offset(),
            msg: msg.to_string(),
        }
    }

    fn eat_op(&mut self, ops: &[char]) -> Option<char> {
        match self.peek() {
            Some(Tok::Op(c)) if ops.contains(c) => {
                let c = *c;
                self.pos += 1;
                Some(c)
            }
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(c) = self.eat_op(&['+', '-']) {
            let rhs = self.term()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(c) = self.eat_op(&['*', '/']) {
            let rhs = self.unary()?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_op(&['-']).is_some() {
            return Ok(Expr::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat_op(&['^']).is_some() {
            let exp = self.unary()?;
            return Ok(Expr::binary(BinOp::Pow, base, exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Some(Tok::Ident(name)) => {
                if let Some(params) = self.params {
                    if !params.contains(&name) {
                        return Err(Error::UnknownIdentifier { name, pos: at });
                    }
                }
                self.pos += 1;
                Ok(Expr::Param(name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => Err(self.syntax("expected a number, identifier or `(`")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

fn parse_impl(src: &str, params: Option<&[String]>) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
        end: src.len(),
        params,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses `src`; every identifier must be one of `params`.
pub fn parse(src: &str, params: &[String]) -> Result<Expr> {
    parse_impl(src, Some(params))
}

/// Parses `src` accepting any identifier.
pub fn parse_free(src: &str) -> Result<Expr> {
    parse_impl(src, None)
}

/// Square matrix whose entries are expressions over named parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametricMatrix {
    m: usize,
    params: Vec<String>,
    entries: Vec<Expr>,
}

impl ParametricMatrix {
    pub fn new(params: Vec<String>, rows: &[Vec<String>]) -> Result<Self> {
        let m = rows.len();
        if m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension(format!(
                "expected a square matrix, got {} rows of lengths {:?}",
                m,
                rows.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        let mut seen = BTreeSet::new();
        for p in &params {
            if !seen.insert(p) {
                return Err(Error::Precondition(format!(
                    "parameter `{p}` declared twice"
                )));
            }
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|s| parse(s, &params))
            .collect::<Result<_>>()?;
        Ok(ParametricMatrix { m, params, entries })
    }

    pub fn from_strs(params: &[&str], rows: &[&[&str]]) -> Result<Self> {
        Self::new(
            params.iter().map(|s| s.to_string()).collect(),
            &rows
                .iter()
                .map(|r| r.iter().map(|s| s.to_string()).collect())
                .collect::<Vec<_>>(),
        )
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn entry(&self, i: usize, j: usize) -> &Expr {
        &self.entries[i * self.m + j]
    }

    pub fn instantiate(&self, bindings: &BTreeMap<String, Rational>) -> Result<SquareMatrix> {
        let vals = self
            .entries
            .iter()
            .map(|e| e.evaluate(bindings))
            .collect::<Result<Vec<_>>>()?;
        SquareMatrix::new(self.m, vals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};
    use proptest::prelude::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn bind(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    #[test]
    fn parse_shapes() {
        let e = parse("a*(b - 1)", &names(&["a", "b"])).unwrap();
        assert_eq!(
            e,
            Expr::binary(
                BinOp::Mul,
                Expr::param("a"),
                Expr::binary(BinOp::Sub, Expr::param("b"), Expr::Num(int(1)))
            )
        );
        assert_eq!(
            parse("-c", &names(&["c"])).unwrap(),
            Expr::neg(Expr::param("c"))
        );
        let e = parse("x ^ 2 ^ 3", &names(&["x"])).unwrap();
        assert_eq!(
            e,
            Expr::binary(
                BinOp::Pow,
                Expr::param("x"),
                Expr::binary(BinOp::Pow, Expr::Num(int(2)), Expr::Num(int(3)))
            )
        );
        // unary minus binds looser than ^
        assert_eq!(
            parse("-x^2", &names(&["x"])).unwrap(),
            Expr::neg(Expr::binary(
                BinOp::Pow,
                Expr::param("x"),
                Expr::Num(int(2))
            ))
        );
    }

    #[test]
    fn evaluation() {
        let e = parse("a*c*(b-1)", &names(&["a", "b", "c"])).unwrap();
        let v = e
            .evaluate(&bind(&[("a", int(10)), ("b", int(28)), ("c", frac(8, 3))]))
            .unwrap();
        assert_eq!(v, int(720));
        assert_eq!(
            parse_free("1/2 + 1/3")
                .unwrap()
                .evaluate(&BTreeMap::new())
                .unwrap(),
            frac(5, 6)
        );
        let e = parse("x/y", &names(&["x", "y"])).unwrap();
        assert!(matches!(
            e.evaluate(&bind(&[("x", int(1)), ("y", int(0))])),
            Err(Error::DivisionByZero)
        ));
        assert_eq!(
            parse_free("2^-2 + 0.25")
                .unwrap()
                .evaluate(&BTreeMap::new())
                .unwrap(),
            frac(1, 2)
        );
        assert!(matches!(
            parse_free("2^(1/2)").unwrap().evaluate(&BTreeMap::new()),
            Err(Error::NonIntegerExponent)
        ));
        assert!(matches!(
            parse_free("x + 1").unwrap().evaluate(&BTreeMap::new()),
            Err(Error::Unbound(_))
        ));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(
            parse("a + q", &names(&["a"])),
            Err(Error::UnknownIdentifier { pos: 4, .. })
        ));
        assert!(matches!(
            parse_free("(1 + 2"),
            Err(Error::Syntax { pos: 6, .. })
        ));
        assert!(matches!(
            parse_free("1 + * 2"),
            Err(Error::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_free("1 $ 2"),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_free("1 2"),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_free("1.2.3"),
            Err(Error::Syntax { pos: 0, .. })
        ));
        assert!(parse_free("").is_err());
    }

    #[test]
    fn printer_is_minimal() {
        for (src, want) in [
            ("a - (b - c)", "a - (b - c)"),
            ("(a - b) - c", "a - b - c"),
            ("(a*b)^2", "(a * b)^2"),
            ("a^(b^c)", "a^b^c"),
            ("(a^b)^c", "(a^b)^c"),
            ("-(a + b)", "-(a + b)"),
            ("a * -b", "a * -b"),
            ("(-a)^2", "(-a)^2"),
            ("2^-1", "2^-1"),
            ("0.5 * a", "0.5 * a"),
        ] {
            assert_eq!(parse_free(src).unwrap().to_string(), want, "{src}");
        }
    }

    #[test]
    fn parametric_matrix() {
        let pm = ParametricMatrix::from_strs(
            &["a", "b", "c"],
            &[&["-a", "a", "0"], &["b", "-1", "0"], &["0", "0", "-c"]],
        )
        .unwrap();
        let m = pm
            .instantiate(&bind(&[("a", int(10)), ("b", int(28)), ("c", frac(8, 3))]))
            .unwrap();
        assert_eq!(m.get(2, 2), &frac(-8, 3));
        assert!(ParametricMatrix::from_strs(&["a"], &[&["a", "b"], &["0", "1"]]).is_err());
        assert!(ParametricMatrix::from_strs(&["a"], &[&["a", "1"]]).is_err());
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0i64..50).prop_map(|v| Expr::Num(int(v))),
            (1i64..40).prop_map(|v| Expr::Num(frac(v, 4))),
            prop::sample::select(vec!["a", "b", "x1"]).prop_map(Expr::param),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Expr::neg),
                (
                    prop::sample::select(vec![
                        BinOp::Add,
                        BinOp::Sub,
                        BinOp::Mul,
                        BinOp::Div,
                        BinOp::Pow
                    ]),
                    inner.clone(),
                    inner
                )
                    .prop_map(|(op, l, r)| Expr::binary(op, l, r)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let printed = e.to_string();
            let back = parse_free(&printed).unwrap();
            prop_assert_eq!(back, e, "printed as {}", printed);
        }
    }
}
