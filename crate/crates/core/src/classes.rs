//! Explicit equivariant classes on products of projective spaces of forms.
//!
//! Classes are built in the root variables `l1..ln` and converted to the
//! Chern basis at the end, so every intermediate is an honest integer
//! polynomial. Hyperplane variables (`x`, `y`, `h`, `t`, ...) have weight 1.
//!
//! Sign conventions, fixed once here:
//! * `c_i = (-1)^i e_i(l)`;
//! * `P_{1}(t) = ∏ (t + l_i)`;
//! * the relation of `ℙ(E)` in its hyperplane variable `y` is
//!   `P_{1}(-y)`, normalized to the monic `∏ (y - l_i)`;
//! * a point `Q_v` of `ℙ(W_k)` restricts the hyperplane class to `-v·l`.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::combinatorics::{self, CombinatoricsError, ExponentVector, Partition};
use crate::poly::{Integers, PolyError, Polynomial, VariableContext};
use crate::symmetric::{c_var, l_var, BasisConvention, SymmetricError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Symmetric(#[from] SymmetricError),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
    #[error("degree d = {0} is not allowed here (need d >= 2)")]
    DegreeTooSmall(u32),
    #[error("`{var}` has degree {degree}, not reduced below {bound}")]
    NotReduced { var: String, degree: u32, bound: u32 },
    #[error("character has {got} entries, expected {expected}")]
    CharacterLength { got: usize, expected: usize },
}

/// `[vars..., l1..ln]`, every variable of weight 1.
pub fn l_context(vars: &[&str], n: usize) -> Arc<VariableContext> {
    let names = vars
        .iter()
        .map(|v| (v.to_string(), 1))
        .chain((1..=n).map(|i| (l_var(i), 1)));
    VariableContext::new(names).expect("distinct variable names")
}

/// `[vars..., c1..cn]` with `deg c_i = i` and the rest of weight 1.
pub fn c_context(vars: &[&str], n: usize) -> Arc<VariableContext> {
    let names = vars
        .iter()
        .map(|v| (v.to_string(), 1))
        .chain((1..=n).map(|i| (c_var(i), i as u32)));
    VariableContext::new(names).expect("distinct variable names")
}

/// `v·l = Σ v_i l_i` over `ctx`.
pub fn dot_l(ctx: &Arc<VariableContext>, v: &[i64]) -> Result<Polynomial, PolyError> {
    let mut out = Polynomial::zero(ctx, Integers);
    for (i, &vi) in v.iter().enumerate() {
        if vi != 0 {
            out = &out + &Polynomial::variable(ctx, Integers, &l_var(i + 1))?.scale_int(vi);
        }
    }
    Ok(out)
}

fn linear_factor(
    ctx: &Arc<VariableContext>,
    var: &str,
    v: &ExponentVector,
) -> Result<Polynomial, PolyError> {
    let w: Vec<i64> = v.entries().iter().map(|&x| x as i64).collect();
    Ok(&Polynomial::variable(ctx, Integers, var)? + &dot_l(ctx, &w)?)
}

fn product_of_factors<'a>(
    ctx: &Arc<VariableContext>,
    var: &str,
    vs: impl IntoIterator<Item = &'a ExponentVector>,
) -> Result<Polynomial, PolyError> {
    let mut acc = Polynomial::one(ctx, Integers);
    for v in vs {
        acc = &acc * &linear_factor(ctx, var, v)?;
    }
    Ok(acc)
}

/// `P_μ(var) = ∏_{v ∈ ℕⁿ(μ)} (var + v·l)` over `[var, l1..ln]`.
pub fn partition_class(n: usize, mu: &Partition, var: &str) -> Result<Polynomial, ClassError> {
    let ctx = l_context(&[var], n);
    Ok(product_of_factors(&ctx, var, &combinatorics::vectors_with_support(mu, n))?)
}

/// `P_[d](var) = ∏_{v ∈ ℕⁿ(d)} (var + v·l)` over `[var, l1..ln]`; monic of
/// degree `binom(n+d-1, d)` in `var`.
pub fn total_relation(n: usize, d: u32, var: &str) -> Result<Polynomial, ClassError> {
    let ctx = l_context(&[var], n);
    Ok(product_of_factors(&ctx, var, &combinatorics::vectors_of_weight(d, n))?)
}

/// `P_[d](var)` in the Chern basis, over `[var, c1..cn]`.
pub fn total_relation_c(n: usize, d: u32, var: &str) -> Result<Polynomial, ClassError> {
    let p = total_relation(n, d, var)?;
    Ok(BasisConvention::new(n).to_chern_basis(&p)?)
}

/// `P_{1}(t) = Σ_k (-1)^k c_k t^(n-k)` with `t` any polynomial over a
/// context containing `c1..cn`.
pub fn standard_relation_at(n: usize, t: &Polynomial) -> Result<Polynomial, PolyError> {
    let ctx = t.context();
    let mut out = Polynomial::zero(ctx, Integers);
    for k in 0..=n {
        let ck = if k == 0 {
            Polynomial::one(ctx, Integers)
        } else {
            Polynomial::variable(ctx, Integers, &c_var(k))?
        };
        let term = &ck * &t.pow((n - k) as u32);
        out = if k % 2 == 0 { &out + &term } else { &out - &term };
    }
    Ok(out)
}

fn check_degree(d: u32) -> Result<(), ClassError> {
    if d < 2 {
        return Err(ClassError::DegreeTooSmall(d));
    }
    Ok(())
}

/// `Q_[d](x, y) = P_{1}(x + (d-1)y) - (-(d-1))ⁿ P_{1}(-y)` in the root
/// variables, over `[x, y, l1..ln]`.
pub fn universal_singular_class_l(n: usize, d: u32, x: &str, y: &str) -> Result<Polynomial, ClassError> {
    check_degree(d)?;
    let ctx = l_context(&[x, y], n);
    let xv = Polynomial::variable(&ctx, Integers, x)?;
    let yv = Polynomial::variable(&ctx, Integers, y)?;
    let shifted = &xv + &yv.scale_int(d as i64 - 1);
    let mut first = Polynomial::one(&ctx, Integers);
    let mut second = Polynomial::one(&ctx, Integers);
    for i in 1..=n {
        let li = Polynomial::variable(&ctx, Integers, &l_var(i))?;
        first = &first * &(&shifted + &li);
        second = &second * &(&li - &yv);
    }
    let factor = BigInt::from(-(d as i64 - 1)).pow(n as u32);
    Ok(&first - &second.scale(&factor))
}

/// `Q_[d](x, y)` in the Chern basis, over `[x, y, c1..cn]`.
pub fn universal_singular_class(n: usize, d: u32, x: &str, y: &str) -> Result<Polynomial, ClassError> {
    let q = universal_singular_class_l(n, d, x, y)?;
    let q = BasisConvention::new(n).to_chern_basis(&q)?;
    Ok(q.to_context(&c_context(&[x, y], n))?)
}

/// `Q_[d](x, y)` evaluated straight from the Chern-basis form of `P_{1}`.
pub fn universal_singular_class_direct(n: usize, d: u32, x: &str, y: &str) -> Result<Polynomial, ClassError> {
    check_degree(d)?;
    let ctx = c_context(&[x, y], n);
    let xv = Polynomial::variable(&ctx, Integers, x)?;
    let yv = Polynomial::variable(&ctx, Integers, y)?;
    let first = standard_relation_at(n, &(&xv + &yv.scale_int(d as i64 - 1)))?;
    let second = standard_relation_at(n, &-&yv)?;
    let factor = BigInt::from(-(d as i64 - 1)).pow(n as u32);
    Ok(&first - &second.scale(&factor))
}

/// `[α_1(var), ..., α_n(var)]` with `Q_[d](var, y) = Σ α_i(var) y^(n-i)`,
/// over `[var, c1..cn]`.
pub fn alpha_generators(n: usize, d: u32, var: &str) -> Result<Vec<Polynomial>, ClassError> {
    let y = if var == "y" { "y_" } else { "y" };
    let q = universal_singular_class(n, d, var, y)?;
    let target = c_context(&[var], n);
    (1..=n)
        .map(|i| {
            let coeff = q.coefficient_of(y, (n - i) as u32)?;
            Ok(coeff.to_context(&target)?)
        })
        .collect()
}

/// Same as [`alpha_generators`] but left in the root variables, over
/// `[var, l1..ln]`.
pub fn alpha_generators_l(n: usize, d: u32, var: &str) -> Result<Vec<Polynomial>, ClassError> {
    let y = if var == "y" { "y_" } else { "y" };
    let q = universal_singular_class_l(n, d, var, y)?;
    let target = l_context(&[var], n);
    (1..=n)
        .map(|i| Ok(q.coefficient_of(y, (n - i) as u32)?.to_context(&target)?))
        .collect()
}

/// `[Z̃] = ∏ (x + (d-1)y + l_i)` over `[x, y, l1..ln]`.
pub fn ztilde_class(n: usize, d: u32, x: &str, y: &str) -> Result<Polynomial, ClassError> {
    check_degree(d)?;
    let ctx = l_context(&[x, y], n);
    let mut acc = Polynomial::one(&ctx, Integers);
    for i in 1..=n {
        let mut character = vec![0; n];
        character[i - 1] = 1;
        let f = invariant_hypersurface_class(&ctx, &[(x, 1), (y, d as i64 - 1)], &character)?;
        acc = &acc * &f;
    }
    Ok(acc)
}

/// Class of a torus-invariant hypersurface of multidegree `degrees` (pairs
/// of hyperplane variable and degree) whose equation has character
/// `character`: `Σ deg·var + character·l`.
pub fn invariant_hypersurface_class(
    ctx: &Arc<VariableContext>,
    degrees: &[(&str, i64)],
    character: &[i64],
) -> Result<Polynomial, ClassError> {
    let n = (1..).take_while(|&i| ctx.contains(&l_var(i))).count();
    if character.iter().any(|&c| c != 0) && character.len() > n {
        return Err(ClassError::CharacterLength {
            got: character.len(),
            expected: n,
        });
    }
    let mut out = dot_l(ctx, character)?;
    for (var, deg) in degrees {
        out = &out + &Polynomial::variable(ctx, Integers, var)?.scale_int(*deg);
    }
    Ok(out)
}

/// `[Q_v] = ∏_{w ∈ ℕⁿ(d), w ≠ v} (var + w·l)` over `[var, l1..ln]`.
pub fn fixed_point_class(v: &ExponentVector, d: u32, var: &str) -> Result<Polynomial, ClassError> {
    v.checked_weight(d)?;
    let n = v.len();
    let ctx = l_context(&[var], n);
    let others: Vec<ExponentVector> = combinatorics::vectors_of_weight(d, n)
        .into_iter()
        .filter(|w| w != v)
        .collect();
    Ok(product_of_factors(&ctx, var, &others)?)
}

/// Top equivariant Chern class of the tangent space of `ℙ(W_k)` at the fixed
/// point `Q_{v0}`: `∏_{v ∈ ℕⁿ(k), v ≠ v0} (v - v0)·l` over `[l1..ln]`.
pub fn tangent_top_chern(v0: &ExponentVector, k: u32) -> Result<Polynomial, ClassError> {
    v0.checked_weight(k)?;
    let n = v0.len();
    let ctx = l_context(&[], n);
    let mut acc = Polynomial::one(&ctx, Integers);
    for v in combinatorics::vectors_of_weight(k, n) {
        if &v != v0 {
            acc = &acc * &dot_l(&ctx, &v.difference(v0))?;
        }
    }
    Ok(acc)
}

/// One projective factor of an ambient product: its hyperplane variable and
/// monic relation, in both bases.
#[derive(Clone, Debug)]
pub struct FactorRelation {
    pub var: String,
    /// Degree of the relation in `var` (the factor is `ℙ^(degree-1)`).
    pub degree: u32,
    /// Over `[var, l1..ln]`.
    pub relation_l: Polynomial,
    /// Over `[var, c1..cn]`.
    pub relation_c: Polynomial,
}

impl FactorRelation {
    /// `ℙ(W_k)` with relation `P_[k](var)`.
    pub fn forms(n: usize, k: u32, var: &str) -> Result<Self, ClassError> {
        let relation_l = total_relation(n, k, var)?;
        let relation_c = BasisConvention::new(n)
            .to_chern_basis(&relation_l)?
            .to_context(&c_context(&[var], n))?;
        Ok(Self {
            var: var.to_string(),
            degree: combinatorics::dim_w(n as u64, k as u64) as u32,
            relation_l,
            relation_c,
        })
    }

    /// `ℙ(E)` for the standard representation, relation `P_{1}(-var)`
    /// normalized to be monic: `∏ (var - l_i)`.
    pub fn standard(n: usize, var: &str) -> Result<Self, ClassError> {
        let ctx = l_context(&[var], n);
        let v = Polynomial::variable(&ctx, Integers, var)?;
        let mut raw = Polynomial::one(&ctx, Integers);
        for i in 1..=n {
            raw = &raw * &(&Polynomial::variable(&ctx, Integers, &l_var(i))? - &v);
        }
        let relation_l = if n % 2 == 1 { -raw } else { raw };
        let relation_c = BasisConvention::new(n)
            .to_chern_basis(&relation_l)?
            .to_context(&c_context(&[var], n))?;
        Ok(Self {
            var: var.to_string(),
            degree: n as u32,
            relation_l,
            relation_c,
        })
    }
}

/// A product of projective bundles over `BGL_n`, described by the monic
/// relations of its factors.
#[derive(Clone, Debug)]
pub struct AmbientRingSpec {
    pub n: usize,
    pub factors: Vec<FactorRelation>,
}

impl AmbientRingSpec {
    pub fn new(n: usize, factors: Vec<FactorRelation>) -> Self {
        Self { n, factors }
    }

    /// `ℙ(W_d) × ℙ(E)` with hyperplane variables `x` and `y`.
    pub fn forms_times_standard(n: usize, d: u32, x: &str, y: &str) -> Result<Self, ClassError> {
        Ok(Self::new(
            n,
            vec![FactorRelation::forms(n, d, x)?, FactorRelation::standard(n, y)?],
        ))
    }

    /// `ψ(p)`: the representative of `p` with degree below each factor's
    /// relation degree in that factor's variable.
    ///
    /// Polynomials mentioning any `l_i` are reduced with the root-variable
    /// relations, others with the Chern-basis ones. Factors are reduced
    /// last-first. The result lives over the union of `p`'s context and the
    /// relations' contexts.
    pub fn splitting_psi(&self, p: &Polynomial) -> Result<Polynomial, ClassError> {
        let uses_l = p
            .used_variables()
            .iter()
            .any(|&i| (1..=self.n).any(|k| p.context().name(i) == l_var(k)));
        let rels: Vec<&Polynomial> = self
            .factors
            .iter()
            .map(|f| if uses_l { &f.relation_l } else { &f.relation_c })
            .collect();
        let mut ctx = p.context().clone();
        for r in &rels {
            ctx = ctx.union(r.context())?;
        }
        let mut out = p.to_context(&ctx)?;
        for (f, rel) in self.factors.iter().zip(&rels).rev() {
            let rel = rel.to_context(&ctx)?;
            out = out.reduce_mod_monic(&rel, &f.var)?.1;
        }
        Ok(out)
    }
}

/// Pushforward along a `ℙ^(m-1)` factor with hyperplane variable `var`:
/// the coefficient of `var^(m-1)` of an already reduced class.
pub fn pushforward_to_base(p: &Polynomial, var: &str, m: u32) -> Result<Polynomial, ClassError> {
    if let Some(deg) = p.degree_in(var)?.finite() {
        if deg >= m {
            return Err(ClassError::NotReduced {
                var: var.to_string(),
                degree: deg,
                bound: m,
            });
        }
    }
    if m == 0 {
        return Ok(Polynomial::zero(p.context(), Integers));
    }
    Ok(p.coefficient_of(var, m - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn single_variable_partition_class() {
        let p = partition_class(1, &part("4"), "x").unwrap();
        assert_eq!(p.to_string(), "x + 4*l1");
        assert_eq!(total_relation(1, 4, "x").unwrap(), p);
    }

    #[test]
    fn binary_quadrics_relation() {
        let p = total_relation(2, 2, "x").unwrap();
        let ctx = l_context(&["x"], 2);
        let expected = parse_polynomial("x + 2*l1", &ctx, Integers).unwrap()
            * parse_polynomial("x + 2*l2", &ctx, Integers).unwrap()
            * parse_polynomial("x + l1 + l2", &ctx, Integers).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn plane_cubic_alphas() {
        let a = alpha_generators(3, 3, "h").unwrap();
        let got: Vec<String> = a.iter().map(|p| p.to_string()).collect();
        assert_eq!(
            got,
            [
                "12*h - 12*c1",
                "6*h^2 - 4*h*c1 - 6*c2",
                "h^3 - h^2*c1 + h*c2 - 9*c3"
            ]
        );
    }

    #[test]
    fn both_routes_to_q_agree() {
        for n in 1..=4 {
            for d in 2..=5 {
                assert_eq!(
                    universal_singular_class(n, d, "x", "y").unwrap(),
                    universal_singular_class_direct(n, d, "x", "y").unwrap(),
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn standard_relation_is_monic() {
        let f = FactorRelation::standard(3, "y").unwrap();
        assert_eq!(f.relation_c.to_string(), "y^3 + y^2*c1 + y*c2 + c3");
    }

    #[test]
    fn tangent_classes_at_coordinate_points() {
        let ctx = l_context(&[], 3);
        let p = |s: &str| parse_polynomial(s, &ctx, Integers).unwrap();
        assert_eq!(
            tangent_top_chern(&ExponentVector(vec![1, 0, 0]), 1).unwrap(),
            p("l2 - l1") * p("l3 - l1")
        );
        assert_eq!(
            tangent_top_chern(&ExponentVector(vec![2, 0, 0]), 2).unwrap(),
            p("4") * p("l2 - l1").pow(2) * p("l3 - l1").pow(2) * p("l2 + l3 - 2*l1")
        );
        assert_eq!(
            tangent_top_chern(&ExponentVector(vec![1, 1, 0]), 2).unwrap(),
            -(p("l1 - l2").pow(2) * p("2*l3 - l1 - l2") * p("l3 - l1") * p("l3 - l2"))
        );
        assert!(tangent_top_chern(&ExponentVector(vec![1, 1, 0]), 3).is_err());
    }

    #[test]
    fn fixed_point_class_divides_relation() {
        let v = ExponentVector(vec![3, 0, 0]);
        let q = fixed_point_class(&v, 3, "x").unwrap();
        assert_eq!(q.degree_in("x").unwrap().finite(), Some(9));
        let ctx = q.context().clone();
        let lin = parse_polynomial("x + 3*l1", &ctx, Integers).unwrap();
        assert_eq!(q * lin, total_relation(3, 3, "x").unwrap());
        assert!(fixed_point_class(&ExponentVector(vec![5]), 5, "x").unwrap().is_one());
        assert!(fixed_point_class(&v, 2, "x").is_err());
    }

    #[test]
    fn pushforward_reads_top_coefficient() {
        let ctx = c_context(&["x", "y"], 3);
        let y2 = parse_polynomial("y^2", &ctx, Integers).unwrap();
        assert!(pushforward_to_base(&y2, "y", 3).unwrap().is_one());
        let one = Polynomial::one(&ctx, Integers);
        assert!(pushforward_to_base(&one, "y", 3).unwrap().is_zero());
        let y3 = parse_polynomial("y^3", &ctx, Integers).unwrap();
        assert!(matches!(
            pushforward_to_base(&y3, "y", 3),
            Err(ClassError::NotReduced { .. })
        ));
    }

    #[test]
    fn hypersurface_classes() {
        let ctx = l_context(&["h", "t"], 3);
        let f = invariant_hypersurface_class(&ctx, &[("h", 1), ("t", 2)], &[0, 1, 0]).unwrap();
        assert_eq!(f.to_string(), "h + 2*t + l2");
        let g = invariant_hypersurface_class(&ctx, &[("h", 3)], &[]).unwrap();
        assert_eq!(g.to_string(), "3*h");
    }
}
