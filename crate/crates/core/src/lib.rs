//! Exact computation of equivariant Chow-ring presentations for spaces of
//! hypersurfaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: sparse weighted-graded polynomials over ℤ, ℤ/m and ℚ.
//! * [`symmetric`]: passage between root variables `l1..ln` and Chern
//!   classes `c1..cn`.
//! * [`combinatorics`]: partitions, exponent vectors and product maps.
//! * [`classes`]: explicit tautological classes (`P_μ`, `Q_[d]`, the `α_i`).
//! * [`localization`]: equivariant localization for product-map pushforwards.
//! * [`membership`]: graded ideal membership with certificates.
//! * [`presentation`]: assembled presentations.
//! * [`verify`]: the self-check suite behind `chowring verify`.
//!
//! ```
//! use chowring::combinatorics::Partition;
//! use chowring::{classes, localization, membership, CoefficientRing};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let alphas = classes::alpha_generators(3, 3, "h")?;
//! let delta2 = localization::delta_class(3, 3, &Partition::new(vec![1, 2])?)?.polynomial;
//! assert_eq!(delta2.to_string(), "21*h^2 - 42*h*c1 + 18*c1^2 + 9*c2");
//!
//! // delta2 is not in (alpha1, alpha2, alpha3) over Z, but 2*delta2 is.
//! let over_z = membership::membership_over(&delta2, &alphas, CoefficientRing::Integers, 5000)?;
//! assert!(!over_z.is_member());
//! let twice = membership::slice_membership(&delta2.scale_int(2), &alphas, 5000)?;
//! let cofactors: Vec<String> = twice.cofactors().unwrap().iter().map(|c| c.to_string()).collect();
//! assert_eq!(cofactors, ["5*h - 3*c1", "-3", "0"]);
//! # Ok(())
//! # }
//! ```

pub mod classes;
pub mod combinatorics;
pub mod localization;
pub mod membership;
pub mod poly;
pub mod presentation;
pub mod symmetric;
pub mod verify;

pub use poly::{
    parse_polynomial, CoefficientRing, Degree, Integers, IntegersMod, PolyError, Polynomial,
    Rationals, Ring, VariableContext,
};
