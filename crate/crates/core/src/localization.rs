//! Torus localization on products of projective spaces of forms.
//!
//! For `μ = (k1, ..., ks)` the product map `π_μ: ∏ ℙ(W_kj) -> ℙ(W_d)`
//! multiplies forms. Its torus-fixed points are tuples `(Q_v1, ..., Q_vs)`
//! with `vj ∈ ℕⁿ(kj)`, mapping to `Q_{v1+...+vs}`, so
//!
//! ```text
//! π_μ*(∏ ξj^ej) = Σ_{(v1..vs)} ∏ (-vj·l)^ej · [Q_{Σv}] / ∏ c_top(T_{Q_vj})
//! ```
//!
//! and `δ_μ = π_μ*(1) / deg π_μ`. Each summand is a rational function with
//! a denominator that factors into linear forms in `l`; the sum is formed
//! over the least common multiple of those denominators and divided once at
//! the end, which must be exact.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use log::{debug, warn};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::classes::{self, c_context, l_context, ClassError};
use crate::combinatorics::{self, ExponentVector, Partition};
use crate::poly::{Degree, Integers, PolyError, Polynomial, VariableContext};
use crate::symmetric::{BasisConvention, SymmetricError};

/// Variable used for the hyperplane class of the target `ℙ(W_d)`.
pub const TARGET_VAR: &str = "h";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalizationError {
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("partition {mu} has degree {got}, expected d = {expected}")]
    PartitionDegree { mu: String, got: u32, expected: u32 },
    #[error("exponent list has {got} entries but the partition has {expected} parts")]
    ExponentArity { got: usize, expected: usize },
    #[error("localization sum is not a polynomial: common denominator {denominator} does not divide the numerator")]
    InexactDenominator { denominator: String },
    #[error("pushforward is not divisible by deg(π_μ) = {degree}: coefficient content is {content}")]
    InexactDegreeDivision { degree: u64, content: String },
    #[error("localization result is not symmetric in the roots: {0}")]
    NotSymmetric(String),
    #[error("localization result is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("restriction convention check failed at {point}: got {got}, expected {expected}")]
    RestrictionConvention {
        point: String,
        got: String,
        expected: String,
    },
}

impl LocalizationError {
    /// True for failures of an exactness invariant (a division that should
    /// be exact, or a result that should be symmetric or homogeneous), as
    /// opposed to bad input.
    pub fn is_exactness_diagnostic(&self) -> bool {
        !matches!(
            self,
            LocalizationError::Class(_)
                | LocalizationError::PartitionDegree { .. }
                | LocalizationError::ExponentArity { .. }
        )
    }
}

impl From<PolyError> for LocalizationError {
    fn from(e: PolyError) -> Self {
        LocalizationError::Class(e.into())
    }
}

impl From<SymmetricError> for LocalizationError {
    fn from(e: SymmetricError) -> Self {
        match e {
            SymmetricError::NotSymmetric { monomial, .. } => LocalizationError::NotSymmetric(monomial),
            SymmetricError::Poly(p) => p.into(),
        }
    }
}

/// A nonzero integer linear form in `l1..ln`, primitive with first nonzero
/// coefficient positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm(Vec<i64>);

impl LinearForm {
    /// Splits `Σ a_i l_i` as `scalar * form`; `None` for the zero form.
    pub fn normalize(coeffs: &[i64]) -> Option<(i64, LinearForm)> {
        let first = *coeffs.iter().find(|&&a| a != 0)?;
        let g = coeffs.iter().fold(0i64, |g, &a| g.gcd(&a));
        let scalar = if first < 0 { -g } else { g };
        Some((scalar, LinearForm(coeffs.iter().map(|a| a / scalar).collect())))
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn to_polynomial(&self, ctx: &Arc<VariableContext>) -> Result<Polynomial, PolyError> {
        classes::dot_l(ctx, &self.0)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = l_context(&[], self.0.len());
        let p = self.to_polynomial(&ctx).map_err(|_| fmt::Error)?;
        write!(f, "({p})")
    }
}

/// A denominator kept in factored form: `constant * ∏ form^mult`, with a
/// positive constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Denominator {
    constant: BigInt,
    forms: BTreeMap<LinearForm, u32>,
}

impl Denominator {
    pub fn one() -> Self {
        Self {
            constant: BigInt::one(),
            forms: BTreeMap::new(),
        }
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn forms(&self) -> &BTreeMap<LinearForm, u32> {
        &self.forms
    }

    /// Least common multiple (positive constant, maximal multiplicities).
    pub fn lcm(&self, other: &Self) -> Self {
        let mut forms = self.forms.clone();
        for (f, &m) in &other.forms {
            let slot = forms.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(m);
        }
        Self {
            constant: self.constant.lcm(&other.constant),
            forms,
        }
    }

    /// `self / other` as a polynomial over `ctx`; `other` must divide `self`.
    fn cofactor(&self, other: &Self, ctx: &Arc<VariableContext>) -> Result<Polynomial, PolyError> {
        let (q, r) = self.constant.div_rem(&other.constant);
        if !r.is_zero() {
            return Err(PolyError::InexactDivision);
        }
        let mut acc = Polynomial::constant(ctx, Integers, q);
        for (f, &m) in &self.forms {
            let have = other.forms.get(f).copied().unwrap_or(0);
            if have > m {
                return Err(PolyError::InexactDivision);
            }
            if m > have {
                acc = &acc * &f.to_polynomial(ctx)?.pow(m - have);
            }
        }
        Ok(acc)
    }

    pub fn to_polynomial(&self, ctx: &Arc<VariableContext>) -> Result<Polynomial, PolyError> {
        self.cofactor(&Self::one(), ctx)
    }
}

impl fmt::Display for Denominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (form, m) in &self.forms {
            write!(f, "*{form}")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// A fraction `numerator / denominator` with a factored denominator.
#[derive(Clone, Debug)]
pub struct RationalClass {
    pub numerator: Polynomial,
    pub denominator: Denominator,
}

impl RationalClass {
    /// `numerator / (scalar * ∏ linear forms)`; the sign of the scalar part
    /// is moved into the numerator.
    pub fn from_linear_factors(numerator: Polynomial, factors: &[Vec<i64>]) -> Result<Self, PolyError> {
        let mut constant = BigInt::one();
        let mut forms = BTreeMap::new();
        for coeffs in factors {
            let (scalar, form) = LinearForm::normalize(coeffs).ok_or(PolyError::InexactDivision)?;
            constant *= scalar;
            *forms.entry(form).or_insert(0) += 1;
        }
        let numerator = if constant.is_negative() {
            constant = -constant;
            -numerator
        } else {
            numerator
        };
        Ok(Self {
            numerator,
            denominator: Denominator { constant, forms },
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        let lcm = self.denominator.lcm(&other.denominator);
        let ctx = self.numerator.context();
        let a = &self.numerator * &lcm.cofactor(&self.denominator, ctx)?;
        let b = other.numerator.checked_mul(&lcm.cofactor(&other.denominator, ctx)?)?;
        Ok(Self {
            numerator: a.checked_add(&b)?,
            denominator: lcm,
        })
    }

    /// Sums many fractions over the common multiple of all denominators,
    /// in parallel. Exact arithmetic makes the result independent of the
    /// summation order.
    pub fn sum(terms: &[RationalClass], ctx: &Arc<VariableContext>) -> Result<Self, PolyError> {
        let lcm = terms
            .iter()
            .fold(Denominator::one(), |acc, t| acc.lcm(&t.denominator));
        let numerator = terms
            .par_iter()
            .map(|t| {
                let n = t.numerator.to_context(ctx)?;
                n.checked_mul(&lcm.cofactor(&t.denominator, ctx)?)
            })
            .try_reduce(|| Polynomial::zero(ctx, Integers), |a, b| a.checked_add(&b))?;
        Ok(Self {
            numerator,
            denominator: lcm,
        })
    }

    /// The exact polynomial quotient, or `InexactDivision`.
    pub fn to_polynomial(&self) -> Result<Polynomial, PolyError> {
        let ctx = self.numerator.context();
        let mut q = self.numerator.div_exact_scalar(&self.denominator.constant)?;
        for (form, &m) in &self.denominator.forms {
            let f = form.to_polynomial(ctx)?;
            for _ in 0..m {
                q = q.div_exact(&f)?;
            }
        }
        Ok(q)
    }
}

/// A torus-fixed point `(Q_v1, ..., Q_vs)` of `∏ ℙ(W_kj)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductFixedPoint {
    pub vectors: Vec<ExponentVector>,
}

impl ProductFixedPoint {
    /// `v1 + ... + vs`, the image point in `ℙ(W_d)`.
    pub fn image(&self) -> ExponentVector {
        let n = self.vectors.first().map_or(0, ExponentVector::len);
        self.vectors
            .iter()
            .fold(ExponentVector(vec![0; n]), |acc, v| acc.add(v))
    }
}

impl fmt::Display for ProductFixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vectors.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All fixed points for the parts `k1 <= ... <= ks` of `μ`, in lexicographic
/// order of the factor choices.
pub fn product_fixed_points(n: usize, mu: &Partition) -> Vec<ProductFixedPoint> {
    mu.parts()
        .iter()
        .map(|&k| combinatorics::vectors_of_weight(k, n))
        .multi_cartesian_product()
        .map(|vectors| ProductFixedPoint { vectors })
        .collect()
}

/// Linear factors `(v - v0)·l` of the tangent top Chern class at `Q_v0`.
fn tangent_factors(v0: &ExponentVector) -> Vec<Vec<i64>> {
    combinatorics::vectors_of_weight(v0.weight(), v0.len())
        .into_iter()
        .filter(|v| v != v0)
        .map(|v| v.difference(v0))
        .collect()
}

/// Restricts `p` to a fixed point: `ξj -> -vj·l` for the named factor
/// variables and, when given, `base -> -(Σ vj)·l`.
pub fn restrict_to_fixed_point(
    p: &Polynomial,
    point: &ProductFixedPoint,
    factor_vars: &[&str],
    base_var: Option<&str>,
) -> Result<Polynomial, PolyError> {
    let n = point.image().len();
    let work = p.context().union(&l_context(&[], n))?;
    let p = p.to_context(&work)?;
    let neg_dot = |v: &ExponentVector| -> Result<Polynomial, PolyError> {
        let w: Vec<i64> = v.entries().iter().map(|&x| -(x as i64)).collect();
        classes::dot_l(&work, &w)
    };
    let mut images: Vec<(&str, Polynomial)> = Vec::new();
    for (var, v) in factor_vars.iter().zip(&point.vectors) {
        if work.contains(var) {
            images.push((var, neg_dot(v)?));
        }
    }
    if let Some(b) = base_var {
        if work.contains(b) {
            images.push((b, neg_dot(&point.image())?));
        }
    }
    let bindings: Vec<(&str, &Polynomial)> = images.iter().map(|(v, q)| (*v, q)).collect();
    let out = p.substitute(&bindings)?;
    let removed: Vec<&str> = images.iter().map(|(v, _)| *v).collect();
    out.to_context(&work.without(&removed))
}

/// Checks `[Q_v]|_{Q_v} = c_top(T_{Q_v})` for every `v ∈ ℕⁿ(k)`, which pins
/// down the sign of the restriction rule `h -> -v·l`.
pub fn check_restriction_convention(n: usize, k: u32) -> Result<(), LocalizationError> {
    for v in combinatorics::vectors_of_weight(k, n) {
        let point = ProductFixedPoint {
            vectors: vec![v.clone()],
        };
        let q = classes::fixed_point_class(&v, k, TARGET_VAR)?;
        let got = restrict_to_fixed_point(&q, &point, &[], Some(TARGET_VAR))?;
        let expected = classes::tangent_top_chern(&v, k)?;
        if got != expected.to_context(got.context())? {
            return Err(LocalizationError::RestrictionConvention {
                point: v.to_string(),
                got: got.to_string(),
                expected: expected.to_string(),
            });
        }
    }
    Ok(())
}

/// Result of a localization computation.
#[derive(Clone, Debug)]
pub struct LocalizedClass {
    pub n: usize,
    pub d: u32,
    pub mu: Partition,
    pub exponents: Vec<u32>,
    /// In the Chern basis, over `[h, c1..cn]`.
    pub polynomial: Polynomial,
    /// In the root variables, over `[h, l1..ln]`.
    pub polynomial_l: Polynomial,
    pub degree: Degree,
    pub summands: usize,
}

fn check_partition(d: u32, mu: &Partition) -> Result<(), LocalizationError> {
    if mu.degree() != d {
        return Err(LocalizationError::PartitionDegree {
            mu: mu.to_string(),
            got: mu.degree(),
            expected: d,
        });
    }
    Ok(())
}

/// `π_μ*(∏ ξj^ej)` with `ej` attached to the parts of `μ` in ascending
/// order. Not divided by `deg π_μ`.
pub fn pushforward_product_map(
    n: usize,
    d: u32,
    mu: &Partition,
    exponents: &[u32],
) -> Result<LocalizedClass, LocalizationError> {
    check_partition(d, mu)?;
    if exponents.len() != mu.len() {
        return Err(LocalizationError::ExponentArity {
            got: exponents.len(),
            expected: mu.len(),
        });
    }
    if mu.len() > n {
        warn!("partition {mu} has more parts than n = {n}; fixed points are still enumerated");
    }
    for &k in mu.parts().iter().dedup() {
        check_restriction_convention(n, k)?;
    }

    let ctx = l_context(&[TARGET_VAR], n);
    let points = product_fixed_points(n, mu);

    let images: Vec<ExponentVector> = points.iter().map(|p| p.image()).unique().collect();
    let fixed: HashMap<ExponentVector, Polynomial> = images
        .par_iter()
        .map(|v| {
            let q = classes::fixed_point_class(v, d, TARGET_VAR)?.to_context(&ctx)?;
            Ok((v.clone(), q))
        })
        .collect::<Result<_, ClassError>>()?;

    let terms: Vec<RationalClass> = points
        .par_iter()
        .map(|point| {
            let mut numerator = fixed[&point.image()].clone();
            for (v, &e) in point.vectors.iter().zip(exponents) {
                if e > 0 {
                    let w: Vec<i64> = v.entries().iter().map(|&x| -(x as i64)).collect();
                    numerator = &numerator * &classes::dot_l(&ctx, &w)?.pow(e);
                }
            }
            let factors: Vec<Vec<i64>> = point.vectors.iter().flat_map(tangent_factors).collect();
            RationalClass::from_linear_factors(numerator, &factors)
        })
        .collect::<Result<_, PolyError>>()?;

    let total = RationalClass::sum(&terms, &ctx)?;
    debug!(
        "μ = {mu}, e = {exponents:?}: {} summands, common denominator {}",
        terms.len(),
        total.denominator
    );
    let polynomial_l = total
        .to_polynomial()
        .map_err(|_| LocalizationError::InexactDenominator {
            denominator: total.denominator.to_string(),
        })?;
    finish(n, d, mu, exponents, polynomial_l, terms.len())
}

fn finish(
    n: usize,
    d: u32,
    mu: &Partition,
    exponents: &[u32],
    polynomial_l: Polynomial,
    summands: usize,
) -> Result<LocalizedClass, LocalizationError> {
    let degree = polynomial_l
        .homogeneous_degree()
        .ok_or_else(|| LocalizationError::NotHomogeneous(polynomial_l.to_string()))?;
    let basis = BasisConvention::new(n);
    let polynomial = basis
        .to_chern_basis(&polynomial_l)?
        .to_context(&c_context(&[TARGET_VAR], n))?;
    Ok(LocalizedClass {
        n,
        d,
        mu: mu.clone(),
        exponents: exponents.to_vec(),
        polynomial,
        polynomial_l,
        degree,
        summands,
    })
}

/// `δ_μ = π_μ*(1) / deg π_μ`, the class of the locus of degree-`d` forms
/// that factor with degree pattern `μ`.
pub fn delta_class(n: usize, d: u32, mu: &Partition) -> Result<LocalizedClass, LocalizationError> {
    let zeros = vec![0; mu.len()];
    let push = pushforward_product_map(n, d, mu, &zeros)?;
    let degree = combinatorics::product_map_degree(mu);
    let big = BigInt::from(degree);
    let polynomial_l = push.polynomial_l.div_exact_scalar(&big).map_err(|_| {
        LocalizationError::InexactDegreeDivision {
            degree,
            content: push.polynomial_l.content().to_string(),
        }
    })?;
    finish(n, d, mu, &zeros, polynomial_l, push.summands)
}

/// Outcome of the localization identity `Σ_v [Q_v] / c_top(T_{Q_v}) = 1`.
#[derive(Clone, Debug)]
pub struct UnitCheck {
    pub n: usize,
    pub k: u32,
    pub passed: bool,
    /// Numerator minus denominator after clearing; zero on success.
    pub residual: Polynomial,
}

pub fn localization_unit_check(n: usize, k: u32) -> Result<UnitCheck, LocalizationError> {
    let ctx = l_context(&[TARGET_VAR], n);
    let terms: Vec<RationalClass> = combinatorics::vectors_of_weight(k, n)
        .iter()
        .map(|v| {
            let q = classes::fixed_point_class(v, k, TARGET_VAR)?.to_context(&ctx)?;
            Ok(RationalClass::from_linear_factors(q, &tangent_factors(v))?)
        })
        .collect::<Result<_, LocalizationError>>()?;
    let total = RationalClass::sum(&terms, &ctx)?;
    let residual = &total.numerator - &total.denominator.to_polynomial(&ctx)?;
    Ok(UnitCheck {
        n,
        k,
        passed: residual.is_zero(),
        residual,
    })
}
