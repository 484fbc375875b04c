use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::{Integers, IntegersMod, Rationals, Ring};
use super::{PolyError, VariableContext};

/// Exponent vector, one entry per context variable.
pub type Exponents = Vec<u32>;

/// Weighted degree with a `-inf` value for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms are kept in a map keyed by exponent vector; zero coefficients are
/// never stored, so equal polynomials have identical term maps.
#[derive(Clone)]
pub struct Polynomial<R: Ring = Integers> {
    ctx: Arc<VariableContext>,
    ring: R,
    terms: BTreeMap<Exponents, R::Elem>,
}

impl<R: Ring> PartialEq for Polynomial<R> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx)
            && self.ring == other.ring
            && self.terms == other.terms
    }
}

impl<R: Ring> Eq for Polynomial<R> where R::Elem: Eq {}

impl<R: Ring> fmt::Debug for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}; {}]({})", self.ring.descriptor(), self.ctx, self)
    }
}

impl<R: Ring> Polynomial<R> {
    pub fn zero(ctx: &Arc<VariableContext>, ring: R) -> Self {
        Self {
            ctx: ctx.clone(),
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<VariableContext>, ring: R, c: R::Elem) -> Self {
        let exps = vec![0; ctx.len()];
        Self::monomial(ctx, ring, exps, c).expect("arity matches")
    }

    pub fn from_int(ctx: &Arc<VariableContext>, ring: R, c: i64) -> Self {
        let c = ring.from_int(c);
        Self::constant(ctx, ring, c)
    }

    pub fn one(ctx: &Arc<VariableContext>, ring: R) -> Self {
        let c = ring.one();
        Self::constant(ctx, ring, c)
    }

    pub fn variable(ctx: &Arc<VariableContext>, ring: R, name: &str) -> Result<Self, PolyError> {
        let idx = ctx.require(name)?;
        let mut exps = vec![0; ctx.len()];
        exps[idx] = 1;
        let one = ring.one();
        Self::monomial(ctx, ring, exps, one)
    }

    pub fn monomial(
        ctx: &Arc<VariableContext>,
        ring: R,
        exps: Exponents,
        coeff: R::Elem,
    ) -> Result<Self, PolyError> {
        Self::from_terms(ctx, ring, [(exps, coeff)])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// exponent vectors are summed.
    pub fn from_terms<I>(ctx: &Arc<VariableContext>, ring: R, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Exponents, R::Elem)>,
    {
        let mut out = Self::zero(ctx, ring);
        for (exps, c) in terms {
            if exps.len() != ctx.len() {
                return Err(PolyError::Arity {
                    got: exps.len(),
                    expected: ctx.len(),
                });
            }
            out.add_term(exps, &c);
        }
        Ok(out)
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Terms in lexicographic order of exponent vectors (ascending).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &R::Elem)> {
        self.terms.iter()
    }

    /// Terms in the canonical printing order: weighted degree descending,
    /// then lexicographic descending by context variable order.
    pub fn canonical_terms(&self) -> Vec<(&Exponents, &R::Elem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.graded_cmp(b.0, a.0));
        v
    }

    fn graded_cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.ctx
            .weighted_degree(a)
            .cmp(&self.ctx.weighted_degree(b))
            .then_with(|| a.cmp(b))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn coefficient(&self, exps: &[u32]) -> R::Elem {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Leading term in lexicographic order of exponent vectors.
    pub fn lex_leading_term(&self) -> Option<(&Exponents, &R::Elem)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, exps: Exponents, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.ring.add(o.get(), c);
                if self.ring.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if !(Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx) {
            return Err(PolyError::ContextMismatch {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            });
        }
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch(
                self.ring.descriptor(),
                other.ring.descriptor(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &self.ring.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut acc: HashMap<Exponents, R::Elem> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = self.ring.mul(ca, cb);
                match acc.get_mut(&e) {
                    Some(slot) => *slot = self.ring.add(slot, &prod),
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .collect();
        Ok(Self {
            ctx: self.ctx.clone(),
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(&self.ctx, self.ring.clone());
        for (e, x) in &self.terms {
            out.add_term(e.clone(), &self.ring.mul(x, c));
        }
        out
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&self.ring.from_int(c))
    }

    /// Multiplies by a monomial given as an exponent vector.
    pub fn shift(&self, exps: &[u32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        Self {
            ctx: self.ctx.clone(),
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ctx, self.ring.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn product<'a, I>(ctx: &Arc<VariableContext>, ring: R, factors: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = &'a Self>,
        R: 'a,
    {
        let mut acc = Self::one(ctx, ring);
        for f in factors {
            acc = acc.checked_mul(f)?;
        }
        Ok(acc)
    }

    /// Maximum weighted degree of a term; `-inf` for zero.
    pub fn weighted_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|e| self.ctx.weighted_degree(e))
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// `Some(degree)` when every term has the same weighted degree; zero is
    /// homogeneous of degree `-inf`.
    pub fn homogeneous_degree(&self) -> Option<Degree> {
        let mut it = self.terms.keys().map(|e| self.ctx.weighted_degree(e));
        match it.next() {
            None => Some(Degree::NegInfinity),
            Some(first) => it.all(|d| d == first).then_some(Degree::Finite(first)),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    pub fn degree_in(&self, var: &str) -> Result<Degree, PolyError> {
        let idx = self.ctx.require(var)?;
        Ok(self
            .terms
            .keys()
            .map(|e| e[idx])
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite))
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables
    /// (same context, `var` exponent zero).
    pub fn coefficient_of(&self, var: &str, k: u32) -> Result<Self, PolyError> {
        let idx = self.ctx.require(var)?;
        let mut out = Self::zero(&self.ctx, self.ring.clone());
        for (e, c) in &self.terms {
            if e[idx] == k {
                let mut e2 = e.clone();
                e2[idx] = 0;
                out.add_term(e2, c);
            }
        }
        Ok(out)
    }

    /// Divides by a relation monic in `var`, returning `(quotient, remainder)`
    /// with `self == quotient * rel + remainder` and the remainder of
    /// `var`-degree below that of `rel`.
    pub fn reduce_mod_monic(&self, rel: &Self, var: &str) -> Result<(Self, Self), PolyError> {
        self.check_compatible(rel)?;
        let idx = self.ctx.require(var)?;
        let m = match rel.degree_in(var)? {
            Degree::Finite(m) => m,
            Degree::NegInfinity => return Err(PolyError::NotMonic(var.to_string())),
        };
        let lead = rel.coefficient_of(var, m)?;
        if lead != Self::one(&self.ctx, self.ring.clone()) {
            return Err(PolyError::NotMonic(var.to_string()));
        }
        let tail = rel.checked_sub(&Self::variable(&self.ctx, self.ring.clone(), var)?.pow(m))?;

        let mut quotient = Self::zero(&self.ctx, self.ring.clone());
        let mut rem = self.clone();
        loop {
            let top = match rem.degree_in(var)? {
                Degree::Finite(t) if t >= m => t,
                _ => break,
            };
            // Everything of var-degree `top`, as `coeff * var^top`.
            let mut chunk = Self::zero(&self.ctx, self.ring.clone());
            for (e, c) in &rem.terms {
                if e[idx] == top {
                    let mut e2 = e.clone();
                    e2[idx] = top - m;
                    chunk.add_term(e2, c);
                }
            }
            // var^top * coeff == chunk * var^m  ≡  -chunk * tail
            for (e, c) in &chunk.terms {
                let mut e2 = e.clone();
                e2[idx] += m;
                rem.add_term(e2, &self.ring.neg(c));
            }
            rem = rem.checked_sub(&chunk.checked_mul(&tail)?)?;
            quotient = quotient.checked_add(&chunk)?;
        }
        Ok((quotient, rem))
    }

    /// Simultaneous substitution of variables by polynomials over the same
    /// context and ring.
    pub fn substitute(&self, bindings: &[(&str, &Self)]) -> Result<Self, PolyError> {
        let mut images: Vec<Option<&Self>> = vec![None; self.ctx.len()];
        for (name, image) in bindings {
            let idx = self.ctx.require(name)?;
            self.check_compatible(image)?;
            images[idx] = Some(image);
        }
        let mut powers: Vec<Vec<Self>> = vec![Vec::new(); self.ctx.len()];
        let mut out = Self::zero(&self.ctx, self.ring.clone());
        for (e, c) in &self.terms {
            let mut kept = e.clone();
            let mut term = Self::one(&self.ctx, self.ring.clone());
            for (i, image) in images.iter().enumerate() {
                let Some(image) = image else { continue };
                let k = e[i] as usize;
                kept[i] = 0;
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Self::one(&self.ctx, self.ring.clone()));
                }
                while cache.len() <= k {
                    let next = &cache[cache.len() - 1] * *image;
                    cache.push(next);
                }
                term = &term * &cache[k];
            }
            let term = term.shift(&kept).scale(c);
            out = &out + &term;
        }
        Ok(out)
    }

    /// Evaluates at a point binding every variable that occurs in `self`.
    pub fn evaluate(&self, point: &[(&str, R::Elem)]) -> Result<R::Elem, PolyError> {
        let mut values: Vec<Option<&R::Elem>> = vec![None; self.ctx.len()];
        for (name, v) in point {
            values[self.ctx.require(name)?] = Some(v);
        }
        let mut acc = self.ring.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let v = values[i]
                    .ok_or_else(|| PolyError::UnboundVariable(self.ctx.name(i).to_string()))?;
                t = self.ring.mul(&t, &self.ring.pow(v, k));
            }
            acc = self.ring.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial over another context, matching variables
    /// by name. Variables that occur must exist in the target with the same
    /// weight.
    pub fn to_context(&self, target: &Arc<VariableContext>) -> Result<Self, PolyError> {
        if Arc::ptr_eq(&self.ctx, target) || *self.ctx == **target {
            return Ok(Self {
                ctx: target.clone(),
                ring: self.ring.clone(),
                terms: self.terms.clone(),
            });
        }
        let used = self.used_variables();
        let mut map = vec![None; self.ctx.len()];
        for &i in &used {
            let name = self.ctx.name(i);
            let j = target.require(name)?;
            if target.weight(j) != self.ctx.weight(i) {
                return Err(PolyError::WeightConflict(name.to_string()));
            }
            map[i] = Some(j);
        }
        let mut out = Self::zero(target, self.ring.clone());
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    e2[j] = k;
                }
            }
            out.add_term(e2, c);
        }
        Ok(out)
    }

    /// Embeds both operands into the union of their contexts.
    pub fn unify(&self, other: &Self) -> Result<(Self, Self), PolyError> {
        let ctx = self.ctx.union(&other.ctx)?;
        Ok((self.to_context(&ctx)?, other.to_context(&ctx)?))
    }

    pub fn rename_variable(&self, from: &str, to: &str) -> Result<Self, PolyError> {
        let ctx = self.ctx.renamed(from, to)?;
        Ok(Self {
            ctx,
            ring: self.ring.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Indices of variables with a nonzero exponent in some term.
    pub fn used_variables(&self) -> Vec<usize> {
        (0..self.ctx.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    pub fn map_ring<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> Polynomial<S> {
        let mut out = Polynomial::zero(&self.ctx, ring);
        for (e, c) in &self.terms {
            let c2 = f(c);
            out.add_term(e.clone(), &c2);
        }
        out
    }

    /// Exact quotient `self / divisor`, or `InexactDivision` when none exists.
    ///
    /// Works on lexicographic leading terms: an exact quotient forces
    /// `LT(self) = LT(q) * LT(divisor)` at every step.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.check_compatible(divisor)?;
        let (dlead_e, dlead_c) = divisor
            .lex_leading_term()
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or(PolyError::InexactDivision)?;
        let mut rem = self.clone();
        let mut quotient = Self::zero(&self.ctx, self.ring.clone());
        while let Some((e, c)) = rem.lex_leading_term() {
            if e.iter().zip(&dlead_e).any(|(a, b)| a < b) {
                return Err(PolyError::InexactDivision);
            }
            let qc = self
                .ring
                .divide_exact(c, &dlead_c)
                .ok_or(PolyError::InexactDivision)?;
            let qe: Exponents = e.iter().zip(&dlead_e).map(|(a, b)| a - b).collect();
            for (de, dc) in &divisor.terms {
                let te: Exponents = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(te, &self.ring.neg(&self.ring.mul(dc, &qc)));
            }
            quotient.add_term(qe, &qc);
        }
        Ok(quotient)
    }
}

impl Polynomial<Integers> {
    /// Gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn div_exact_scalar(&self, d: &BigInt) -> Result<Self, PolyError> {
        let mut out = Self::zero(&self.ctx, Integers);
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() || d.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            out.add_term(e.clone(), &q);
        }
        Ok(out)
    }

    pub fn eval_integers(&self, point: &[(&str, BigInt)]) -> Result<BigInt, PolyError> {
        self.evaluate(point)
    }

    pub fn to_modular(&self, ring: IntegersMod) -> Polynomial<IntegersMod> {
        self.map_ring(ring, |c| ring.from_bigint(c))
    }

    pub fn to_rationals(&self) -> Polynomial<Rationals> {
        self.map_ring(Rationals, |c| Rationals.from_bigint(c))
    }

    /// Largest absolute coefficient, useful for size diagnostics.
    pub fn max_coefficient(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }
}

impl<R: Ring> fmt::Display for Polynomial<R> {
    /// Canonical text form, e.g. `21*h^2 - 42*h*c1 + 18*c1^2 + 9*c2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.canonical_terms().into_iter().enumerate() {
            let negative = self.ring.is_negative(c);
            let abs = if negative { self.ring.neg(c) } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&x| x == 0);
            if is_const || !self.ring.is_one(&abs) {
                factors.push(self.ring.to_text(&abs));
            }
            for (idx, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(self.ctx.name(idx).to_string()),
                    _ => factors.push(format!("{}^{}", self.ctx.name(idx), k)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! impl_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, R: Ring> $tr<&'a Polynomial<R>> for &'a Polynomial<R> {
            type Output = Polynomial<R>;
            /// Panics when the operands live in different contexts or rings;
            /// use the `checked_*` form to get an error instead.
            fn $method(self, rhs: &'a Polynomial<R>) -> Polynomial<R> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<R: Ring> $tr<Polynomial<R>> for Polynomial<R> {
            type Output = Polynomial<R>;
            fn $method(self, rhs: Polynomial<R>) -> Polynomial<R> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, R: Ring> $tr<&'a Polynomial<R>> for Polynomial<R> {
            type Output = Polynomial<R>;
            fn $method(self, rhs: &'a Polynomial<R>) -> Polynomial<R> {
                (&self).$method(rhs)
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl<R: Ring> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), self.ring.neg(c)))
            .collect();
        Polynomial {
            ctx: self.ctx.clone(),
            ring: self.ring.clone(),
            terms,
        }
    }
}

impl<R: Ring> Neg for Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        -&self
    }
}
