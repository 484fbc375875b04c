//! Membership of homogeneous polynomials in homogeneous ideals.
//!
//! For a homogeneous target `b` of weighted degree `D` and homogeneous
//! generators `g_i`, `b ∈ (g_1, ..., g_k)` iff `b` is a combination of the
//! products `m * g_i` with `m` a monomial of degree `D - deg g_i`. That is a
//! finite linear system on the degree-`D` slice, solved exactly over ℤ (echelon
//! form with a unimodular transform), over ℚ, or over `𝔽_p`.
//!
//! Every answer carries a certificate that is checked before it is returned:
//! cofactors are multiplied back out, and a non-membership answer comes with
//! a linear functional `φ` on the slice that separates the target from the
//! ideal (over a field: `φ` kills every `m * g_i` but not `b`; over ℤ: `φ`
//! is rational, integral on every `m * g_i`, and non-integral on `b`).

pub mod linalg;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{self, ClassError};
use crate::poly::{
    CoefficientRing, Degree, Exponents, Integers, IntegersMod, PolyError, Polynomial,
    PolynomialJson, Rationals, Ring, VariableContext,
};
use linalg::{EchelonRing, LeftSolve};

pub const DEFAULT_SLICE_BOUND: usize = 5000;
pub const CERTIFICATE_SCHEMA: &str = "chowring.certificate/1";
pub const INDEPENDENCE_SCHEMA: &str = "chowring.independence/1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MembershipError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("{role} is not homogeneous: {poly}")]
    NotHomogeneous { role: String, poly: String },
    #[error("degree-{degree} slice has more than {bound} monomials")]
    SliceTooLarge { degree: u32, bound: usize },
    #[error("Z/{0} is not a field; membership is decided over Z, Q or F_p only")]
    NotAField(u64),
    #[error("certificate failed re-verification: {0}")]
    CertificateRejected(String),
    #[error("inconsistent verdicts across rings: {0}")]
    InconsistentRings(String),
}

impl MembershipError {
    /// True when a computed certificate failed its own re-check.
    pub fn is_exactness_diagnostic(&self) -> bool {
        matches!(
            self,
            MembershipError::CertificateRejected(_) | MembershipError::InconsistentRings(_)
        )
    }
}

/// Coefficient rings with a slice decision procedure.
pub trait SliceSolver: EchelonRing {
    /// Ring in which non-membership functionals live.
    type Witness: EchelonRing;

    fn witness_ring(&self) -> Self::Witness;
    fn to_witness(&self, a: &Self::Elem) -> <Self::Witness as Ring>::Elem;
    fn check_usable(&self) -> Result<(), MembershipError> {
        Ok(())
    }
    /// Whether `φ(m * g)` is compatible with membership: integral over ℤ,
    /// zero over a field.
    fn functional_admits(&self, value: &<Self::Witness as Ring>::Elem) -> bool;
    /// Value a vanishing functional is normalized to at the target: `1/2`
    /// over ℤ, `1` over a field.
    fn separating_value(&self) -> <Self::Witness as Ring>::Elem;
    /// Replaces a solution `u` by a smaller one differing from it by an
    /// element of the span of `kernel` (syzygies). Identity by default.
    fn shorten(&self, u: Vec<Self::Elem>, _kernel: &[Vec<Self::Elem>]) -> Vec<Self::Elem> {
        u
    }
}

impl SliceSolver for Integers {
    type Witness = Rationals;

    fn witness_ring(&self) -> Rationals {
        Rationals
    }
    fn to_witness(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }
    fn functional_admits(&self, value: &BigRational) -> bool {
        value.is_integer()
    }
    fn separating_value(&self) -> BigRational {
        BigRational::new(1.into(), 2.into())
    }
    /// Echelon transforms make cofactor entries grow quickly; reducing
    /// against an LLL basis of the syzygy lattice brings them back down.
    fn shorten(&self, u: Vec<BigInt>, kernel: &[Vec<BigInt>]) -> Vec<BigInt> {
        if kernel.is_empty() {
            return u;
        }
        linalg::ReducedLattice::new(kernel.to_vec()).reduce(&u)
    }
}

impl SliceSolver for Rationals {
    type Witness = Rationals;

    fn witness_ring(&self) -> Rationals {
        Rationals
    }
    fn to_witness(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn functional_admits(&self, value: &BigRational) -> bool {
        self.is_zero(value)
    }
    fn separating_value(&self) -> BigRational {
        self.one()
    }
}

impl SliceSolver for IntegersMod {
    type Witness = IntegersMod;

    fn witness_ring(&self) -> IntegersMod {
        *self
    }
    fn to_witness(&self, a: &u64) -> u64 {
        *a
    }
    fn check_usable(&self) -> Result<(), MembershipError> {
        if self.is_field() {
            Ok(())
        } else {
            Err(MembershipError::NotAField(self.modulus()))
        }
    }
    fn functional_admits(&self, value: &u64) -> bool {
        *value == 0
    }
    fn separating_value(&self) -> u64 {
        1
    }
}

/// Monomials of one weighted degree together with the generator multiples
/// that land there.
#[derive(Clone, Debug)]
pub struct GradedSlice {
    pub ctx: Arc<VariableContext>,
    pub degree: u32,
    /// Basis monomials in canonical order (graded lex, descending).
    pub basis: Vec<Exponents>,
    /// `(generator index, multiplier monomial)` per column.
    pub columns: Vec<(usize, Exponents)>,
}

/// All exponent vectors of weighted degree `degree`, or `None` once more than
/// `bound` have been produced.
pub fn monomials_of_degree(ctx: &VariableContext, degree: u32, bound: usize) -> Option<Vec<Exponents>> {
    fn go(
        ctx: &VariableContext,
        var: usize,
        rest: u32,
        current: &mut Exponents,
        out: &mut Vec<Exponents>,
        bound: usize,
    ) -> bool {
        if var == ctx.len() {
            if rest == 0 {
                out.push(current.clone());
                return out.len() <= bound;
            }
            return true;
        }
        let w = ctx.weight(var);
        for k in (0..=rest / w).rev() {
            current[var] = k;
            if !go(ctx, var + 1, rest - k * w, current, out, bound) {
                return false;
            }
        }
        current[var] = 0;
        true
    }
    let mut out = Vec::new();
    let mut current = vec![0; ctx.len()];
    if !go(ctx, 0, degree, &mut current, &mut out, bound) {
        return None;
    }
    Some(out)
}

impl GradedSlice {
    pub fn new<R: Ring>(
        ctx: &Arc<VariableContext>,
        degree: u32,
        generators: &[Polynomial<R>],
        bound: usize,
    ) -> Result<Self, MembershipError> {
        let too_large = || MembershipError::SliceTooLarge { degree, bound };
        let basis = monomials_of_degree(ctx, degree, bound).ok_or_else(too_large)?;
        let mut columns = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            let Degree::Finite(e) = g.weighted_degree() else {
                continue;
            };
            if e > degree {
                continue;
            }
            let multipliers = monomials_of_degree(ctx, degree - e, bound).ok_or_else(too_large)?;
            columns.extend(multipliers.into_iter().map(|m| (i, m)));
        }
        Ok(Self {
            ctx: ctx.clone(),
            degree,
            basis,
            columns,
        })
    }

    /// Coefficient vector of a degree-`D` polynomial in the slice basis.
    fn coordinates<R: Ring>(&self, index: &HashMap<&Exponents, usize>, p: &Polynomial<R>) -> Vec<R::Elem> {
        let mut v = vec![p.ring().zero(); self.basis.len()];
        for (e, c) in p.terms() {
            v[index[e]] = c.clone();
        }
        v
    }
}

/// Why a target is outside the ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Obstruction {
    /// The target is outside the span of the slice over the fraction field
    /// (or over the field itself).
    RankIncrease,
    /// The target is in the rational span but not the integer span.
    Torsion,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::RankIncrease => write!(f, "rank-increase"),
            Obstruction::Torsion => write!(f, "torsion"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Verdict<R: SliceSolver> {
    Member {
        cofactors: Vec<Polynomial<R>>,
    },
    NonMember {
        obstruction: Obstruction,
        /// Separating functional, as a polynomial whose coefficient at a
        /// basis monomial is the functional's value there.
        functional: Polynomial<R::Witness>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankData {
    pub basis_size: usize,
    pub columns: usize,
    /// Rank of the generator-multiple matrix (over ℚ when the ring is ℤ).
    pub rank: usize,
    /// Same, with the target adjoined.
    pub augmented_rank: usize,
}

#[derive(Clone, Debug)]
pub struct MembershipCertificate<R: SliceSolver> {
    pub ring: R,
    pub degree: Degree,
    pub target: Polynomial<R>,
    pub generators: Vec<Polynomial<R>>,
    pub verdict: Verdict<R>,
    pub rank: RankData,
}

impl<R: SliceSolver> MembershipCertificate<R> {
    pub fn is_member(&self) -> bool {
        matches!(self.verdict, Verdict::Member { .. })
    }

    pub fn cofactors(&self) -> Option<&[Polynomial<R>]> {
        match &self.verdict {
            Verdict::Member { cofactors } => Some(cofactors),
            Verdict::NonMember { .. } => None,
        }
    }

    pub fn obstruction(&self) -> Option<Obstruction> {
        match &self.verdict {
            Verdict::Member { .. } => None,
            Verdict::NonMember { obstruction, .. } => Some(*obstruction),
        }
    }

    /// Re-checks the certificate from scratch with polynomial arithmetic.
    pub fn verify(&self) -> Result<(), MembershipError> {
        match &self.verdict {
            Verdict::Member { cofactors } => {
                let combo: Vec<(Polynomial<R>, Polynomial<R>)> = cofactors
                    .iter()
                    .cloned()
                    .zip(self.generators.iter().cloned())
                    .collect();
                if verify_identity(&self.target, &combo)? {
                    Ok(())
                } else {
                    Err(MembershipError::CertificateRejected(
                        "cofactor combination differs from the target".into(),
                    ))
                }
            }
            Verdict::NonMember { functional, .. } => {
                let Degree::Finite(degree) = self.degree else {
                    return Err(MembershipError::CertificateRejected("zero target".into()));
                };
                let ctx = functional.context();
                let w = self.ring.witness_ring();
                let apply = |p: &Polynomial<R>| {
                    p.terms().fold(w.zero(), |acc, (e, c)| {
                        w.add(&acc, &w.mul(&functional.coefficient(e), &self.ring.to_witness(c)))
                    })
                };
                for (i, g) in self.generators.iter().enumerate() {
                    let Degree::Finite(e) = g.weighted_degree() else { continue };
                    if e > degree {
                        continue;
                    }
                    let multipliers = monomials_of_degree(ctx, degree - e, usize::MAX)
                        .expect("unbounded enumeration");
                    for m in multipliers {
                        let value = apply(&g.shift(&m));
                        if !self.ring.functional_admits(&value) {
                            return Err(MembershipError::CertificateRejected(format!(
                                "functional does not respect generator {} times monomial {:?}",
                                i + 1,
                                m
                            )));
                        }
                    }
                }
                if self.ring.functional_admits(&apply(&self.target)) {
                    return Err(MembershipError::CertificateRejected(
                        "functional does not separate the target".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    pub fn report(&self) -> CertificateReport {
        let (verdict, cofactors, obstruction, witness) = match &self.verdict {
            Verdict::Member { cofactors } => (
                "member",
                cofactors.iter().map(|c| c.to_string()).collect(),
                None,
                None,
            ),
            Verdict::NonMember {
                obstruction,
                functional,
            } => ("non-member", Vec::new(), Some(*obstruction), Some(functional.to_json())),
        };
        CertificateReport {
            schema: CERTIFICATE_SCHEMA.to_string(),
            verdict: verdict.to_string(),
            ring: self.ring.descriptor().to_string(),
            degree: self.degree.finite(),
            target: self.target.to_string(),
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
            cofactors,
            basis_size: self.rank.basis_size,
            columns: self.rank.columns,
            rank: self.rank.rank,
            augmented_rank: self.rank.augmented_rank,
            obstruction,
            witness,
        }
    }
}

/// Serializable summary of a membership certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub schema: String,
    pub verdict: String,
    pub ring: String,
    pub degree: Option<u32>,
    pub target: String,
    pub generators: Vec<String>,
    pub cofactors: Vec<String>,
    pub basis_size: usize,
    pub columns: usize,
    pub rank: usize,
    pub augmented_rank: usize,
    pub obstruction: Option<Obstruction>,
    pub witness: Option<PolynomialJson>,
}

impl CertificateReport {
    pub fn is_member(&self) -> bool {
        self.verdict == "member"
    }
}

fn common_context<R: Ring>(target: &Polynomial<R>, generators: &[Polynomial<R>]) -> Result<Arc<VariableContext>, PolyError> {
    let mut ctx = target.context().clone();
    for g in generators {
        ctx = ctx.union(g.context())?;
    }
    Ok(ctx)
}

/// Decides `target ∈ (generators)` on the target's degree slice.
pub fn slice_membership<R: SliceSolver>(
    target: &Polynomial<R>,
    generators: &[Polynomial<R>],
    bound: usize,
) -> Result<MembershipCertificate<R>, MembershipError> {
    let ring = target.ring().clone();
    ring.check_usable()?;
    let ctx = common_context(target, generators)?;
    let target = target.to_context(&ctx)?;
    let generators: Vec<Polynomial<R>> = generators
        .iter()
        .map(|g| g.to_context(&ctx))
        .collect::<Result<_, _>>()?;
    let not_homogeneous = |role: String, p: &Polynomial<R>| MembershipError::NotHomogeneous {
        role,
        poly: p.to_string(),
    };
    let degree = target
        .homogeneous_degree()
        .ok_or_else(|| not_homogeneous("target".into(), &target))?;
    for (i, g) in generators.iter().enumerate() {
        if !g.is_homogeneous() {
            return Err(not_homogeneous(format!("generator {}", i + 1), g));
        }
    }

    let Degree::Finite(d) = degree else {
        let cofactors = vec![Polynomial::zero(&ctx, ring.clone()); generators.len()];
        return Ok(MembershipCertificate {
            ring,
            degree,
            target,
            generators,
            verdict: Verdict::Member { cofactors },
            rank: RankData {
                basis_size: 0,
                columns: 0,
                rank: 0,
                augmented_rank: 0,
            },
        });
    };

    let slice = GradedSlice::new(&ctx, d, &generators, bound)?;
    let index: HashMap<&Exponents, usize> = slice.basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let rows: Vec<Vec<R::Elem>> = slice
        .columns
        .par_iter()
        .map(|(gi, m)| slice.coordinates(&index, &generators[*gi].shift(m)))
        .collect();
    let b = slice.coordinates(&index, &target);
    let cols = slice.basis.len();
    let ech = linalg::echelon(&ring, rows, cols);
    let mut rank = RankData {
        basis_size: cols,
        columns: slice.columns.len(),
        rank: ech.rank(),
        augmented_rank: ech.rank(),
    };

    let verdict = match linalg::solve_left(&ring, &ech, &b) {
        LeftSolve::Solved(w) => {
            let u = linalg::combine_rows(&ring, &ech, &w);
            // Rows of the transform past the rank map the generator
            // multiples to zero.
            let u = ring.shorten(u, &ech.transform[ech.rank()..]);
            let mut cofactors = vec![Polynomial::zero(&ctx, ring.clone()); generators.len()];
            for ((gi, m), coeff) in slice.columns.iter().zip(u) {
                if !ring.is_zero(&coeff) {
                    let term = Polynomial::monomial(&ctx, ring.clone(), m.clone(), coeff)?;
                    cofactors[*gi] = &cofactors[*gi] + &term;
                }
            }
            Verdict::Member { cofactors }
        }
        failure => {
            let w = ring.witness_ring();
            let wech = linalg::Echelon {
                form: ech.form[..ech.rank()]
                    .iter()
                    .map(|row| row.iter().map(|x| ring.to_witness(x)).collect())
                    .collect(),
                transform: Vec::new(),
                pivots: ech.pivots.clone(),
            };
            let wb: Vec<_> = b.iter().map(|x| ring.to_witness(x)).collect();
            let (obstruction, y) = match (linalg::solve_left(&w, &wech, &wb), failure) {
                (LeftSolve::Residual { column }, _) => {
                    rank.augmented_rank += 1;
                    (Obstruction::RankIncrease, linalg::null_vector(&w, &wech, cols, column))
                }
                (LeftSolve::Solved(_), LeftSolve::PivotObstruction { index }) => {
                    (Obstruction::Torsion, linalg::pivot_dual_vector(&w, &wech, cols, index))
                }
                (other, failure) => unreachable!("field solve {other:?} after {failure:?}"),
            };
            // A functional vanishing on the slice can be rescaled so that
            // φ(b) is the canonical separating value; a torsion functional
            // cannot, since its integrality on the ideal is not scale-free.
            let scale = match obstruction {
                Obstruction::RankIncrease => {
                    let at_b = y.iter().zip(&wb).fold(w.zero(), |acc, (a, c)| w.add(&acc, &w.mul(a, c)));
                    w.divide_exact(&ring.separating_value(), &at_b)
                        .expect("separating functional is nonzero on the target")
                }
                Obstruction::Torsion => w.one(),
            };
            let terms = slice
                .basis
                .iter()
                .cloned()
                .zip(y.iter().map(|a| w.mul(a, &scale)));
            let functional = Polynomial::from_terms(&ctx, w.clone(), terms)?;
            Verdict::NonMember {
                obstruction,
                functional,
            }
        }
    };

    let cert = MembershipCertificate {
        ring,
        degree,
        target,
        generators,
        verdict,
        rank,
    };
    cert.verify()?;
    Ok(cert)
}

/// Runs [`slice_membership`] over the requested ring for integer input.
pub fn membership_over(
    target: &Polynomial<Integers>,
    generators: &[Polynomial<Integers>],
    ring: CoefficientRing,
    bound: usize,
) -> Result<CertificateReport, MembershipError> {
    Ok(match ring {
        CoefficientRing::Integers => slice_membership(target, generators, bound)?.report(),
        CoefficientRing::Rationals => {
            let gens: Vec<_> = generators.iter().map(|g| g.to_rationals()).collect();
            slice_membership(&target.to_rationals(), &gens, bound)?.report()
        }
        CoefficientRing::IntegersMod(m) => {
            let r = IntegersMod::new(m)?;
            let gens: Vec<_> = generators.iter().map(|g| g.to_modular(r)).collect();
            slice_membership(&target.to_modular(r), &gens, bound)?.report()
        }
    })
}

/// `lhs == Σ cofactor * generator`, after moving everything into a common
/// context.
pub fn verify_identity<R: Ring>(
    lhs: &Polynomial<R>,
    combination: &[(Polynomial<R>, Polynomial<R>)],
) -> Result<bool, PolyError> {
    let mut ctx = lhs.context().clone();
    for (c, g) in combination {
        ctx = ctx.union(c.context())?.union(g.context())?;
    }
    let mut rhs = Polynomial::zero(&ctx, lhs.ring().clone());
    for (c, g) in combination {
        rhs = rhs.checked_add(&c.to_context(&ctx)?.checked_mul(&g.to_context(&ctx)?)?)?;
    }
    Ok(lhs.to_context(&ctx)? == rhs)
}

/// Checks the one valid implication between rings: membership over ℤ forces
/// membership over every other ring. (Non-membership over `𝔽_p` or ℚ then
/// forces non-membership over ℤ; nothing is implied between `𝔽_p` and ℚ.)
pub fn check_ring_consistency(reports: &[CertificateReport]) -> Result<(), MembershipError> {
    let integral = reports.iter().find(|r| r.ring == CoefficientRing::Integers.to_string());
    if let Some(z) = integral {
        if z.is_member() {
            if let Some(bad) = reports.iter().find(|r| !r.is_member()) {
                return Err(MembershipError::InconsistentRings(format!(
                    "member over Z but not over {}",
                    bad.ring
                )));
            }
        }
    }
    Ok(())
}

/// `P_[d](x) ∈ (α_1(x), ..., α_n(x))` over ℤ, on the degree-`N` slice of
/// `ℤ[x, c1..cn]`.
pub fn relation_polynomial_membership(
    n: usize,
    d: u32,
    bound: usize,
) -> Result<MembershipCertificate<Integers>, MembershipError> {
    let target = classes::total_relation_c(n, d, "x")?;
    let generators = classes::alpha_generators(n, d, "x")?;
    slice_membership(&target, &generators, bound)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorCheck {
    pub index: usize,
    pub generator: String,
    /// Member of the ideal of the other generators over ℤ.
    pub redundant: bool,
    pub results: Vec<CertificateReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub schema: String,
    pub independent: bool,
    pub generators: Vec<GeneratorCheck>,
}

/// Tests each generator against the ideal of the others, over ℤ and every
/// ring in `rings`.
pub fn minimal_generators_check(
    generators: &[Polynomial<Integers>],
    rings: &[CoefficientRing],
    bound: usize,
) -> Result<IndependenceReport, MembershipError> {
    let mut all_rings = vec![CoefficientRing::Integers];
    for r in rings {
        if !all_rings.contains(r) {
            all_rings.push(*r);
        }
    }
    let checks = (0..generators.len())
        .into_par_iter()
        .map(|i| {
            let others: Vec<_> = generators
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let results = all_rings
                .iter()
                .map(|&r| membership_over(&generators[i], &others, r, bound))
                .collect::<Result<Vec<_>, _>>()?;
            check_ring_consistency(&results)?;
            Ok(GeneratorCheck {
                index: i + 1,
                generator: generators[i].to_string(),
                redundant: results[0].is_member(),
                results,
            })
        })
        .collect::<Result<Vec<_>, MembershipError>>()?;
    Ok(IndependenceReport {
        schema: INDEPENDENCE_SCHEMA.to_string(),
        independent: checks.iter().all(|c| !c.redundant),
        generators: checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::c_context;
    use crate::poly::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &c_context(&["h"], 3), Integers).unwrap()
    }

    fn alphas() -> Vec<Polynomial> {
        crate::classes::alpha_generators(3, 3, "h").unwrap()
    }

    fn delta2() -> Polynomial {
        p("21*h^2 - 42*h*c1 + 9*c2 + 18*c1^2")
    }

    #[test]
    fn twice_delta2_cofactors_are_forced() {
        let cert = slice_membership(&delta2().scale_int(2), &alphas(), DEFAULT_SLICE_BOUND).unwrap();
        let cof = cert.cofactors().unwrap();
        assert_eq!(cof[0], p("5*h - 3*c1"));
        assert_eq!(cof[1], p("-3"));
        assert!(cof[2].is_zero());
    }

    #[test]
    fn delta2_is_torsion_over_integers() {
        let z = slice_membership(&delta2(), &alphas(), DEFAULT_SLICE_BOUND).unwrap();
        assert_eq!(z.obstruction(), Some(Obstruction::Torsion));
        assert_eq!(z.rank.rank, z.rank.augmented_rank);
        let f2 = IntegersMod::new(2).unwrap();
        let gens: Vec<_> = alphas().iter().map(|g| g.to_modular(f2)).collect();
        let m = slice_membership(&delta2().to_modular(f2), &gens, DEFAULT_SLICE_BOUND).unwrap();
        assert_eq!(m.obstruction(), Some(Obstruction::RankIncrease));
        let q = membership_over(&delta2(), &alphas(), CoefficientRing::Rationals, DEFAULT_SLICE_BOUND).unwrap();
        assert!(q.is_member());
    }

    #[test]
    fn composite_modulus_is_refused() {
        let r = IntegersMod::new(4).unwrap();
        let t = delta2().to_modular(r);
        assert_eq!(
            slice_membership(&t, &[], DEFAULT_SLICE_BOUND).unwrap_err(),
            MembershipError::NotAField(4)
        );
    }

    #[test]
    fn redundant_multiple_is_found() {
        let a1 = alphas()[0].clone();
        let report = minimal_generators_check(&[a1.clone(), a1.scale_int(2)], &[], DEFAULT_SLICE_BOUND).unwrap();
        assert!(!report.independent);
        assert!(report.generators[1].redundant);
    }

    #[test]
    fn inhomogeneous_input_is_rejected() {
        assert!(matches!(
            slice_membership(&p("h + c2"), &alphas(), DEFAULT_SLICE_BOUND),
            Err(MembershipError::NotHomogeneous { .. })
        ));
    }

    #[test]
    fn slice_bound_is_enforced() {
        assert!(matches!(
            slice_membership(&p("h^30"), &alphas(), 50),
            Err(MembershipError::SliceTooLarge { .. })
        ));
    }

    #[test]
    fn zero_target_is_member() {
        let cert = slice_membership(&p("0"), &alphas(), DEFAULT_SLICE_BOUND).unwrap();
        assert!(cert.is_member());
    }

    #[test]
    fn relation_polynomial_cofactors_are_small() {
        let cert = relation_polynomial_membership(3, 3, DEFAULT_SLICE_BOUND).unwrap();
        for c in cert.cofactors().unwrap() {
            assert!(c.max_coefficient() < BigInt::from(100), "{c}");
        }
    }
}
