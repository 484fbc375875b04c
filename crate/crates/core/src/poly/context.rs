use std::fmt;
use std::sync::Arc;

use super::PolyError;

/// Ordered list of named, weighted-graded variables shared by a family of
/// polynomials.
///
/// Two polynomials combine arithmetically only when their contexts are equal
/// (same names, same weights, same order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableContext {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VariableContext {
    pub fn new<I, S>(vars: I) -> Result<Arc<Self>, PolyError>
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut weights = Vec::new();
        for (name, weight) in vars {
            let name = name.into();
            if weight == 0 {
                return Err(PolyError::ZeroWeight(name));
            }
            if names.contains(&name) {
                return Err(PolyError::DuplicateVariable(name));
            }
            names.push(name);
            weights.push(weight);
        }
        Ok(Arc::new(Self { names, weights }))
    }

    /// Context with no variables; polynomials over it are constants.
    pub fn empty() -> Arc<Self> {
        Arc::new(Self {
            names: Vec::new(),
            weights: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// Weighted degree of an exponent vector under this context.
    pub fn weighted_degree(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    /// Variables of `self` followed by those of `other` not already present.
    pub fn union(&self, other: &VariableContext) -> Result<Arc<Self>, PolyError> {
        let mut vars: Vec<(String, u32)> = self
            .names
            .iter()
            .cloned()
            .zip(self.weights.iter().copied())
            .collect();
        for (name, &w) in other.names.iter().zip(&other.weights) {
            match self.index_of(name) {
                Some(i) if self.weights[i] != w => {
                    return Err(PolyError::WeightConflict(name.clone()))
                }
                Some(_) => {}
                None => vars.push((name.clone(), w)),
            }
        }
        Self::new(vars)
    }

    /// The context with the named variables removed.
    pub fn without(&self, drop: &[&str]) -> Arc<Self> {
        let vars = self
            .names
            .iter()
            .zip(&self.weights)
            .filter(|(n, _)| !drop.contains(&n.as_str()))
            .map(|(n, &w)| (n.clone(), w));
        Self::new(vars).expect("subset of a valid context is valid")
    }

    pub fn renamed(&self, from: &str, to: &str) -> Result<Arc<Self>, PolyError> {
        let idx = self.require(from)?;
        let mut names = self.names.clone();
        names[idx] = to.to_string();
        Self::new(names.into_iter().zip(self.weights.iter().copied()))
    }
}

impl fmt::Display for VariableContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, w)) in self.names.iter().zip(&self.weights).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}:{w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_zero_weights() {
        assert_eq!(
            VariableContext::new([("x", 1), ("x", 1)]).unwrap_err(),
            PolyError::DuplicateVariable("x".into())
        );
        assert_eq!(
            VariableContext::new([("c1", 0)]).unwrap_err(),
            PolyError::ZeroWeight("c1".into())
        );
    }

    #[test]
    fn union_keeps_order_and_checks_weights() {
        let a = VariableContext::new([("h", 1), ("c1", 1)]).unwrap();
        let b = VariableContext::new([("c1", 1), ("c2", 2)]).unwrap();
        let u = a.union(&b).unwrap();
        assert_eq!(u.names(), ["h", "c1", "c2"]);
        let bad = VariableContext::new([("c1", 3)]).unwrap();
        assert!(matches!(a.union(&bad), Err(PolyError::WeightConflict(_))));
    }

    #[test]
    fn weighted_degree_uses_weights() {
        let ctx = VariableContext::new([("h", 1), ("c1", 1), ("c2", 2), ("c3", 3)]).unwrap();
        assert_eq!(ctx.weighted_degree(&[1, 0, 1, 1]), 6);
    }
}
