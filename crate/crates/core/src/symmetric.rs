//! Symmetric polynomials in the root variables `l1..ln` and the Chern basis.
//!
//! The convention throughout is `c_i = (-1)^i e_i(l1, ..., ln)`, so that
//! `(t + l1)...(t + ln) = sum_k (-1)^k c_k t^(n-k)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use itertools::Itertools;

use crate::poly::{Exponents, PolyError, Polynomial, Ring, VariableContext};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymmetricError {
    #[error("polynomial is not symmetric in l1..l{n}: leading monomial {monomial} is not a partition")]
    NotSymmetric { n: usize, monomial: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Name of the `i`-th root variable, 1-based.
pub fn l_var(i: usize) -> String {
    format!("l{i}")
}

/// Name of the `i`-th Chern variable, 1-based.
pub fn c_var(i: usize) -> String {
    format!("c{i}")
}

/// Conversion rules between `ℤ[l1..ln]^{S_n}` and `ℤ[c1..cn]`.
///
/// Variables other than `l1..ln` (resp. `c1..cn`) are carried through as
/// scalars.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisConvention {
    n: usize,
}

impl BasisConvention {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "need at least one root variable");
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l_names(&self) -> Vec<String> {
        (1..=self.n).map(l_var).collect()
    }

    pub fn c_names(&self) -> Vec<String> {
        (1..=self.n).map(c_var).collect()
    }

    /// Context `l1..ln`, all of weight 1.
    pub fn l_context(&self) -> Arc<VariableContext> {
        VariableContext::new(self.l_names().into_iter().map(|v| (v, 1))).expect("distinct names")
    }

    /// Context `c1..cn` with `deg c_i = i`.
    pub fn c_context(&self) -> Arc<VariableContext> {
        VariableContext::new(self.c_names().into_iter().zip(1..)).expect("distinct names")
    }

    /// `p` re-expressed over its context extended by any missing `l_i`.
    fn with_l_vars<R: Ring>(&self, p: &Polynomial<R>) -> Result<Polynomial<R>, PolyError> {
        let ctx = p.context().union(&self.l_context())?;
        p.to_context(&ctx)
    }

    fn l_indices(&self, ctx: &VariableContext) -> Vec<usize> {
        (1..=self.n)
            .map(|i| ctx.index_of(&l_var(i)).expect("context contains l-variables"))
            .collect()
    }

    /// True iff `p` is fixed by every adjacent transposition of l-variables.
    pub fn is_symmetric<R: Ring>(&self, p: &Polynomial<R>) -> bool {
        let Ok(p) = self.with_l_vars(p) else {
            return false;
        };
        let idx = self.l_indices(p.context());
        let swapped = |i: usize| {
            let terms = p.terms().map(|(e, c)| {
                let mut e = e.clone();
                e.swap(idx[i], idx[i + 1]);
                (e, c.clone())
            });
            Polynomial::from_terms(p.context(), p.ring().clone(), terms).expect("same arity")
        };
        (0..self.n - 1).all(|i| swapped(i) == p)
    }

    /// `e_k(l1..ln)` over `ctx`, which must contain the l-variables.
    pub fn elementary<R: Ring>(
        &self,
        k: usize,
        ctx: &Arc<VariableContext>,
        ring: R,
    ) -> Result<Polynomial<R>, PolyError> {
        let idx: Vec<usize> = (1..=self.n)
            .map(|i| ctx.require(&l_var(i)))
            .collect::<Result<_, _>>()?;
        let one = ring.one();
        let terms = idx.iter().combinations(k).map(|subset| {
            let mut e = vec![0; ctx.len()];
            for &&i in &subset {
                e[i] = 1;
            }
            (e, one.clone())
        });
        Polynomial::from_terms(ctx, ring.clone(), terms)
    }

    /// Rewrites a symmetric polynomial in terms of `c1..cn`.
    ///
    /// The result lives over the input context with the l-variables removed
    /// and `c1..cn` appended (if not already present). Uses the classical
    /// leading-term descent: the lex-leading monomial `l^a` of a symmetric
    /// polynomial has `a1 >= ... >= an`, and subtracting
    /// `e1^(a1-a2) ... en^an` times its coefficient removes it without any
    /// division.
    pub fn to_chern_basis<R: Ring>(&self, p: &Polynomial<R>) -> Result<Polynomial<R>, SymmetricError> {
        let p = self.with_l_vars(p)?;
        let ctx = p.context();
        let ring = p.ring().clone();
        let l_idx = self.l_indices(ctx);
        let l_names = self.l_names();
        let l_refs: Vec<&str> = l_names.iter().map(String::as_str).collect();
        let target = ctx.without(&l_refs).union(&self.c_context())?;
        let c_idx: Vec<usize> = (1..=self.n)
            .map(|i| target.index_of(&c_var(i)).expect("c-variables present"))
            .collect();
        let inert_src: Vec<usize> = (0..ctx.len()).filter(|i| !l_idx.contains(i)).collect();
        let inert_dst: Vec<usize> = inert_src
            .iter()
            .map(|&i| target.index_of(ctx.name(i)).expect("inert variable kept"))
            .collect();

        // Split into inert exponent -> polynomial in the l-exponents.
        let mut groups: BTreeMap<Exponents, BTreeMap<Exponents, R::Elem>> = BTreeMap::new();
        for (e, c) in p.terms() {
            let inert: Exponents = inert_src.iter().map(|&i| e[i]).collect();
            let l: Exponents = l_idx.iter().map(|&i| e[i]).collect();
            groups.entry(inert).or_default().insert(l, c.clone());
        }

        let mut cache = ElementaryPowers::new(self.n, ring.clone());
        let mut out = Polynomial::zero(&target, ring.clone());
        for (inert, mut lpoly) in groups {
            while let Some((lead, coeff)) = lpoly.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
                if lead.windows(2).any(|w| w[0] < w[1]) {
                    let monomial = Polynomial::monomial(
                        &self.l_context(),
                        ring.clone(),
                        lead.clone(),
                        coeff.clone(),
                    )?;
                    return Err(SymmetricError::NotSymmetric {
                        n: self.n,
                        monomial: monomial.to_string(),
                    });
                }
                // m_k = a_k - a_{k+1}, with a_{n+1} = 0
                let mults: Vec<u32> = (0..self.n)
                    .map(|k| lead[k] - lead.get(k + 1).copied().unwrap_or(0))
                    .collect();
                for (e, c) in cache.product(&mults).iter() {
                    let delta = ring.mul(&coeff, c);
                    let slot = lpoly.entry(e.clone()).or_insert_with(|| ring.zero());
                    *slot = ring.sub(slot, &delta);
                    if ring.is_zero(slot) {
                        lpoly.remove(e);
                    }
                }
                debug_assert!(!lpoly.contains_key(&lead));

                // e_k^m = (-1)^(k m) c_k^m
                let sign_odd = mults
                    .iter()
                    .enumerate()
                    .map(|(k, &m)| (k as u32 + 1) * m)
                    .sum::<u32>()
                    % 2
                    == 1;
                let mut exps = vec![0; target.len()];
                for (&src, &dst) in inert.iter().zip(&inert_dst) {
                    exps[dst] += src;
                }
                for (k, &m) in mults.iter().enumerate() {
                    exps[c_idx[k]] += m;
                }
                let c = if sign_odd { ring.neg(&coeff) } else { coeff };
                out = out.checked_add(&Polynomial::monomial(&target, ring.clone(), exps, c)?)?;
            }
        }
        Ok(out)
    }

    /// Substitutes `c_i -> (-1)^i e_i(l)`. The result lives over the input
    /// context with `c1..cn` removed and `l1..ln` appended.
    pub fn expand_chern<R: Ring>(&self, p: &Polynomial<R>) -> Result<Polynomial<R>, PolyError> {
        let ring = p.ring().clone();
        let work = p.context().union(&self.c_context())?.union(&self.l_context())?;
        let q = p.to_context(&work)?;
        let images: Vec<Polynomial<R>> = (1..=self.n)
            .map(|k| {
                let e = self.elementary(k, &work, ring.clone())?;
                Ok(if k % 2 == 1 { -e } else { e })
            })
            .collect::<Result<_, PolyError>>()?;
        let names = self.c_names();
        let bindings: Vec<(&str, &Polynomial<R>)> =
            names.iter().map(String::as_str).zip(images.iter()).collect();
        let expanded = q.substitute(&bindings)?;
        let c_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let target = p.context().without(&c_refs).union(&self.l_context())?;
        expanded.to_context(&target)
    }
}

/// Memoized products `e1^m1 ... en^mn` in the bare l-variables.
struct ElementaryPowers<R: Ring> {
    ring: R,
    elementary: Vec<BTreeMap<Exponents, R::Elem>>,
    products: HashMap<Vec<u32>, BTreeMap<Exponents, R::Elem>>,
}

impl<R: Ring> ElementaryPowers<R> {
    fn new(n: usize, ring: R) -> Self {
        let elementary = (1..=n)
            .map(|k| {
                (0..n)
                    .combinations(k)
                    .map(|subset| {
                        let mut e = vec![0; n];
                        for i in subset {
                            e[i] = 1;
                        }
                        (e, ring.one())
                    })
                    .collect()
            })
            .collect();
        Self {
            ring,
            elementary,
            products: HashMap::new(),
        }
    }

    fn mul(&self, a: &BTreeMap<Exponents, R::Elem>, b: &BTreeMap<Exponents, R::Elem>) -> BTreeMap<Exponents, R::Elem> {
        let mut out: BTreeMap<Exponents, R::Elem> = BTreeMap::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = self.ring.mul(ca, cb);
                let slot = out.entry(e).or_insert_with(|| self.ring.zero());
                *slot = self.ring.add(slot, &prod);
            }
        }
        out.retain(|_, c| !self.ring.is_zero(c));
        out
    }

    fn product(&mut self, mults: &[u32]) -> &BTreeMap<Exponents, R::Elem> {
        if !self.products.contains_key(mults) {
            let value = match mults.iter().rposition(|&m| m > 0) {
                None => {
                    let n = mults.len();
                    BTreeMap::from([(vec![0; n], self.ring.one())])
                }
                Some(k) => {
                    let mut smaller = mults.to_vec();
                    smaller[k] -= 1;
                    let base = self.product(&smaller).clone();
                    self.mul(&base, &self.elementary[k])
                }
            };
            self.products.insert(mults.to_vec(), value);
        }
        &self.products[mults]
    }
}

/// Sum of `p` over all permutations of the named variables (no averaging).
pub fn symmetrize<R: Ring>(p: &Polynomial<R>, orbit: &[&str]) -> Result<Polynomial<R>, PolyError> {
    let ctx = p.context();
    let idx: Vec<usize> = orbit
        .iter()
        .map(|v| ctx.require(v))
        .collect::<Result<_, _>>()?;
    let mut out = Polynomial::zero(ctx, p.ring().clone());
    for perm in idx.iter().permutations(idx.len()) {
        let terms = p.terms().map(|(e, c)| {
            let mut moved = e.clone();
            for (&from, &&to) in idx.iter().zip(&perm) {
                moved[to] = e[from];
            }
            (moved, c.clone())
        });
        out = out.checked_add(&Polynomial::from_terms(ctx, p.ring().clone(), terms)?)?;
    }
    Ok(out)
}

/// Sum of the distinct images of each term under permutations of the named
/// variables, extended linearly. For a monomial `m` this is its orbit sum,
/// and `symmetrize(m) = |Stab(m)| * orbit_sum(m)`.
pub fn orbit_sum<R: Ring>(p: &Polynomial<R>, orbit: &[&str]) -> Result<Polynomial<R>, PolyError> {
    let ctx = p.context();
    let idx: Vec<usize> = orbit
        .iter()
        .map(|v| ctx.require(v))
        .collect::<Result<_, _>>()?;
    let mut out = Polynomial::zero(ctx, p.ring().clone());
    for (e, c) in p.terms() {
        let images: std::collections::BTreeSet<Exponents> = idx
            .iter()
            .permutations(idx.len())
            .map(|perm| {
                let mut moved = e.clone();
                for (&from, &&to) in idx.iter().zip(&perm) {
                    moved[to] = e[from];
                }
                moved
            })
            .collect();
        let terms = images.into_iter().map(|m| (m, c.clone()));
        out = out.checked_add(&Polynomial::from_terms(ctx, p.ring().clone(), terms)?)?;
    }
    Ok(out)
}
