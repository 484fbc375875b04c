use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::ring::{CoefficientRing, Ring};
use super::{Polynomial, PolyError, VariableContext};

pub const POLYNOMIAL_SCHEMA: &str = "chowring.polynomial/1";

/// Parses text such as `21*h^2 - 42*h*c1 + 18*c1^2 + 9*c2` over `ctx`.
///
/// Grammar: a sum of signed terms; a term is a `*`-joined product of
/// factors, each an integer, a fraction `p/q`, or `name` / `name^k`.
/// Whitespace is ignored. Rational coefficients must lie in `ring`.
pub fn parse_polynomial<R: Ring>(
    text: &str,
    ctx: &Arc<VariableContext>,
    ring: R,
) -> Result<Polynomial<R>, PolyError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut out = Polynomial::zero(ctx, ring.clone());
    parser.skip_ws();
    if parser.at_end() {
        return Err(parser.error("empty input"));
    }
    let mut first = true;
    loop {
        parser.skip_ws();
        if parser.at_end() {
            break;
        }
        let mut negative = false;
        match parser.peek() {
            Some(b'+') if !first => parser.pos += 1,
            Some(b'-') => {
                parser.pos += 1;
                negative = true;
            }
            _ if !first => return Err(parser.error("expected `+` or `-`")),
            _ => {}
        }
        first = false;
        parser.skip_ws();
        let (coeff, exps) = parser.term(ctx)?;
        let coeff = if negative { -coeff } else { coeff };
        let c = ring
            .from_rational(&coeff)
            .ok_or_else(|| PolyError::CoefficientNotInRing(coeff.to_string()))?;
        let term = Polynomial::monomial(ctx, ring.clone(), exps, c)?;
        out = out.checked_add(&term)?;
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if f(b)) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice")
    }

    fn number(&mut self) -> Result<BigInt, PolyError> {
        let digits = self.take_while(|b| b.is_ascii_digit()).to_string();
        BigInt::from_str(&digits).map_err(|_| self.error("expected a number"))
    }

    fn term(&mut self, ctx: &VariableContext) -> Result<(BigRational, Vec<u32>), PolyError> {
        let mut coeff = BigRational::one();
        let mut exps = vec![0u32; ctx.len()];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let num = self.number()?;
                    self.skip_ws();
                    let den = if self.peek() == Some(b'/') {
                        self.pos += 1;
                        self.skip_ws();
                        let d = self.number()?;
                        if d == BigInt::from(0) {
                            return Err(self.error("zero denominator"));
                        }
                        d
                    } else {
                        BigInt::one()
                    };
                    coeff *= BigRational::new(num, den);
                }
                Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                    let start = self.pos;
                    let name = self
                        .take_while(|b| b.is_ascii_alphanumeric() || b == b'_')
                        .to_string();
                    let idx = ctx.index_of(&name).ok_or(PolyError::UnknownVariable(name))?;
                    self.skip_ws();
                    let k = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        let k = self.number()?;
                        u32::try_from(k).map_err(|_| PolyError::Parse {
                            pos: start,
                            msg: "exponent too large".into(),
                        })?
                    } else {
                        1
                    };
                    exps[idx] += k;
                }
                _ => return Err(self.error("expected a number or a variable")),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((coeff, exps));
            }
        }
    }
}

/// `c12` -> `c_{12}`, `xi1` -> `\xi_{1}`, other names unchanged.
fn latex_variable(name: &str) -> String {
    let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (stem, index) = name.split_at(split);
    let stem = match stem {
        "xi" => "\\xi",
        s => s,
    };
    if index.is_empty() || !index.chars().all(|c| c.is_ascii_digit()) {
        name.to_string()
    } else {
        format!("{stem}_{{{index}}}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableJson {
    pub name: String,
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    /// Decimal integer, fraction `p/q`, or residue, as text so big values survive.
    pub coeff: String,
    pub exps: Vec<u32>,
}

/// Serialized form of a polynomial; `text` is informational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub schema: String,
    pub ring: String,
    pub variables: Vec<VariableJson>,
    pub terms: Vec<TermJson>,
    pub text: String,
}

impl<R: Ring> Polynomial<R> {
    pub fn to_json(&self) -> PolynomialJson {
        let ctx = self.context();
        PolynomialJson {
            schema: POLYNOMIAL_SCHEMA.to_string(),
            ring: self.ring().descriptor().to_string(),
            variables: ctx
                .names()
                .iter()
                .zip(ctx.weights())
                .map(|(n, &w)| VariableJson {
                    name: n.clone(),
                    weight: w,
                })
                .collect(),
            terms: self
                .canonical_terms()
                .into_iter()
                .map(|(e, c)| TermJson {
                    coeff: self.ring().to_text(c),
                    exps: e.clone(),
                })
                .collect(),
            text: self.to_string(),
        }
    }

    /// LaTeX rendering: `c1^2` becomes `c_{1}^{2}`, products are juxtaposed.
    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        if self.is_zero() {
            return "0".to_string();
        }
        for (i, (e, c)) in self.canonical_terms().into_iter().enumerate() {
            let ring = self.ring();
            let negative = ring.is_negative(c);
            let abs = if negative { ring.neg(c) } else { c.clone() };
            out.push_str(match (i, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let is_const = e.iter().all(|&x| x == 0);
            if is_const || !ring.is_one(&abs) {
                let text = ring.to_text(&abs);
                match text.split_once('/') {
                    Some((a, b)) => out.push_str(&format!("\\frac{{{a}}}{{{b}}}")),
                    None => out.push_str(&text),
                }
            }
            for (idx, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                out.push_str(&latex_variable(self.context().name(idx)));
                if k > 1 {
                    out.push_str(&format!("^{{{k}}}"));
                }
            }
        }
        out
    }

    /// Reads a serialized polynomial; the stored ring must match `ring`.
    pub fn from_json(json: &PolynomialJson, ring: R) -> Result<Self, PolyError> {
        if json.schema != POLYNOMIAL_SCHEMA {
            return Err(PolyError::Parse {
                pos: 0,
                msg: format!("unsupported schema `{}`", json.schema),
            });
        }
        let stored: CoefficientRing = json.ring.parse()?;
        if stored != ring.descriptor() {
            return Err(PolyError::RingMismatch(stored, ring.descriptor()));
        }
        let ctx = VariableContext::new(json.variables.iter().map(|v| (v.name.clone(), v.weight)))?;
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            let q = BigRational::from_str(&t.coeff)
                .map_err(|_| PolyError::CoefficientNotInRing(t.coeff.clone()))?;
            let c = ring
                .from_rational(&q)
                .ok_or_else(|| PolyError::CoefficientNotInRing(t.coeff.clone()))?;
            terms.push((t.exps.clone(), c));
        }
        Polynomial::from_terms(&ctx, ring, terms)
    }
}
