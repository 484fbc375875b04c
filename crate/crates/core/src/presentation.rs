//! Presentations `ℤ[c1..cn, h] / (relations)` for the supported `(n, d)`.

use serde::{Deserialize, Serialize};

use crate::classes::{self, ClassError};
use crate::combinatorics::Partition;
use crate::localization::{self, LocalizationError, TARGET_VAR};
use crate::poly::{Polynomial, PolynomialJson};
use crate::symmetric::c_var;

pub const PRESENTATION_SCHEMA: &str = "chowring.presentation/1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("n = {n}, d = {d}: need n >= 2 and d >= 2")]
    TooSmall { n: usize, d: u32 },
    #[error(
        "no presentation is available for n = {n}, d = {d}: only (3, 3), (n, 2) and (2, d) are \
         supported; the other cases (starting with plane quartics, n = 3, d = 4) are open"
    )]
    Unsupported { n: usize, d: u32 },
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub polynomial: Polynomial,
}

/// Generators `c1..cn, h` and the relations of the Chow ring of the stack of
/// smooth degree-`d` hypersurfaces in `ℙ^(n-1)`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub n: usize,
    pub d: u32,
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
    pub provenance: String,
}

/// Whether `(n, d)` has a known presentation.
pub fn is_supported(n: usize, d: u32) -> bool {
    n >= 2 && d >= 2 && (n == 2 || d == 2 || (n, d) == (3, 3))
}

pub fn presentation(n: usize, d: u32) -> Result<Presentation, PresentationError> {
    if n < 2 || d < 2 {
        return Err(PresentationError::TooSmall { n, d });
    }
    if !is_supported(n, d) {
        return Err(PresentationError::Unsupported { n, d });
    }
    let alphas = classes::alpha_generators(n, d, TARGET_VAR)?;
    let mut relations: Vec<Relation> = alphas
        .into_iter()
        .enumerate()
        .map(|(i, p)| Relation {
            name: format!("alpha{}", i + 1),
            polynomial: p,
        })
        .collect();
    let provenance = if (n, d) == (3, 3) {
        let mu = Partition::new(vec![1, 2]).expect("valid partition");
        let delta = localization::delta_class(3, 3, &mu)?;
        relations.push(Relation {
            name: "delta2".into(),
            polynomial: delta.polynomial,
        });
        "plane cubics: the alpha classes generate the image of the incidence variety of \
         singular points; the class delta2 of cubics containing a line (computed by torus \
         localization) is the additional generator, and 2*delta2 already lies in the alpha ideal"
    } else {
        "the discriminant ideal is generated by the alpha classes, the pushforwards of the \
         incidence variety of singular points"
    };
    let mut generators: Vec<String> = (1..=n).map(c_var).collect();
    generators.push(TARGET_VAR.to_string());
    Ok(Presentation {
        n,
        d,
        generators,
        relations,
        provenance: provenance.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub name: String,
    pub text: String,
    pub degree: Option<u32>,
    pub polynomial: PolynomialJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub schema: String,
    pub n: usize,
    pub d: u32,
    pub generators: Vec<String>,
    pub relations: Vec<RelationJson>,
    pub provenance: String,
}

impl Presentation {
    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            schema: PRESENTATION_SCHEMA.to_string(),
            n: self.n,
            d: self.d,
            generators: self.generators.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| RelationJson {
                    name: r.name.clone(),
                    text: r.polynomial.to_string(),
                    degree: r.polynomial.weighted_degree().finite(),
                    polynomial: r.polynomial.to_json(),
                })
                .collect(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let names: Vec<&str> = self.relations.iter().map(|r| r.name.as_str()).collect();
        let mut out = format!(
            "Z[{}]/({})\n",
            self.generators.join(", "),
            names.join(", ")
        );
        for r in &self.relations {
            out.push_str(&format!("  {} = {}\n", r.name, r.polynomial));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| match g.strip_prefix('c') {
                Some(i) => format!("c_{{{i}}}"),
                None => g.clone(),
            })
            .collect();
        let names: Vec<String> = self.relations.iter().map(|r| latex_name(&r.name)).collect();
        let mut out = format!(
            "\\mathbb{{Z}}[{}]/({})\n\\begin{{align*}}\n",
            gens.join(", "),
            names.join(", ")
        );
        for (r, name) in self.relations.iter().zip(&names) {
            out.push_str(&format!("{name} &= {} \\\\\n", r.polynomial.to_latex()));
        }
        out.push_str("\\end{align*}\n");
        out
    }
}

fn latex_name(name: &str) -> String {
    if let Some(i) = name.strip_prefix("alpha") {
        format!("\\alpha_{{{i}}}")
    } else if let Some(i) = name.strip_prefix("delta") {
        format!("\\delta_{{{i}}}")
    } else {
        name.to_string()
    }
}
