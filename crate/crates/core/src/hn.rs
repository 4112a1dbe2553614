//! Generic subrepresentations, existence of semistables, and Harder–Narasimhan types.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{
    euler_form_unchecked, slope, subdimension_vectors, DimensionVector, Quiver, Rational,
    StabilityParameter,
};

/// An ordered decomposition `d = d¹ + … + dˡ` with strictly decreasing slopes,
/// each part admitting semistable representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HnType {
    parts: Vec<DimensionVector>,
}

impl HnType {
    /// Validates the sum and slope conditions. Semistability of the parts is
    /// checked separately by [`HnType::validate`].
    pub fn new(parts: Vec<DimensionVector>, theta: &StabilityParameter) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Input("an HN type needs at least one part".into()));
        }
        let slopes = parts
            .iter()
            .map(|p| slope(theta, p.entries()))
            .collect::<Result<Vec<_>>>()?;
        if slopes.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Input("HN type slopes must strictly decrease".into()));
        }
        Ok(HnType { parts })
    }

    pub fn parts(&self) -> &[DimensionVector] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn total(&self) -> Vec<i64> {
        let n = self.parts[0].len();
        let mut sum = vec![0; n];
        for p in &self.parts {
            for (s, x) in sum.iter_mut().zip(p.entries()) {
                *s += x;
            }
        }
        sum
    }

    /// Checks all three type invariants against `d` and `θ`.
    pub fn validate(
        &self,
        ctx: &mut HnContext<'_>,
        d: &DimensionVector,
        theta: &StabilityParameter,
    ) -> Result<()> {
        if self.total() != d.entries() {
            return Err(Error::Input(format!("HN type {self} does not sum to {d}")));
        }
        HnType::new(self.parts.clone(), theta)?;
        for p in &self.parts {
            if !ctx.has_semistable(p, theta) {
                return Err(Error::Input(format!("part {p} of {self} admits no semistables")));
            }
        }
        Ok(())
    }

    /// The concatenated entries, used as the ordering key.
    fn key(&self) -> Vec<i64> {
        self.parts.iter().flat_map(|p| p.entries().iter().copied()).collect()
    }
}

impl fmt::Display for HnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Memo tables for one quiver. Not shared across threads; one context per
/// top-level computation.
pub struct HnContext<'q> {
    quiver: &'q Quiver,
    generic: HashMap<Vec<i64>, BTreeSet<Vec<i64>>>,
    semistable: HashMap<(Vec<i64>, Vec<i64>), bool>,
}

impl<'q> HnContext<'q> {
    pub fn new(quiver: &'q Quiver) -> Self {
        HnContext { quiver, generic: HashMap::new(), semistable: HashMap::new() }
    }

    pub fn quiver(&self) -> &Quiver {
        self.quiver
    }

    /// Dimension vectors of subrepresentations of a general representation of
    /// dimension `e`, by Schofield's recursion: `e' ↪ e` iff `⟨f, e − e'⟩ ≥ 0`
    /// for every `f ↪ e'`.
    pub fn generic_subdimension_vectors(&mut self, e: &[i64]) -> BTreeSet<Vec<i64>> {
        if let Some(s) = self.generic.get(e) {
            return s.clone();
        }
        let mut out = BTreeSet::new();
        for sub in subdimension_vectors(e) {
            let ok = if sub.iter().all(|&x| x == 0) || sub.as_slice() == e {
                true
            } else {
                let rest: Vec<i64> = e.iter().zip(&sub).map(|(a, b)| a - b).collect();
                self.generic_subdimension_vectors(&sub)
                    .iter()
                    .all(|f| euler_form_unchecked(self.quiver, f, &rest) >= 0)
            };
            if ok {
                out.insert(sub);
            }
        }
        self.generic.insert(e.to_vec(), out.clone());
        out
    }

    /// Whether a `μ_θ`-semistable representation of dimension `e` exists.
    /// `θ·e` need not vanish.
    pub fn has_semistable(&mut self, e: &DimensionVector, theta: &StabilityParameter) -> bool {
        let key = (e.entries().to_vec(), theta.entries().to_vec());
        if let Some(&b) = self.semistable.get(&key) {
            return b;
        }
        let mu = slope(theta, e.entries()).expect("dimension vector is nonzero");
        let generic = self.generic_subdimension_vectors(e.entries());
        let ok = generic
            .iter()
            .filter(|f| f.iter().any(|&x| x != 0) && f.as_slice() != e.entries())
            .all(|f| slope(theta, f).expect("nonzero") <= mu);
        self.semistable.insert(key, ok);
        ok
    }

    /// All HN types of `d`, including the trivial type when `d` admits
    /// semistables, sorted lexicographically by concatenated parts.
    pub fn hn_types(&mut self, d: &DimensionVector, theta: &StabilityParameter) -> Result<Vec<HnType>> {
        if theta.pair(d.entries()) != 0 {
            return Err(Error::Input("HN types are enumerated for θ·d = 0".into()));
        }
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.extend_types(d.entries(), theta, None, &mut prefix, &mut out);
        out.sort_by_key(HnType::key);
        Ok(out)
    }

    fn extend_types(
        &mut self,
        rest: &[i64],
        theta: &StabilityParameter,
        bound: Option<&Rational>,
        prefix: &mut Vec<DimensionVector>,
        out: &mut Vec<HnType>,
    ) {
        if rest.iter().all(|&x| x == 0) {
            out.push(HnType { parts: prefix.clone() });
            return;
        }
        for part in subdimension_vectors(rest) {
            if part.iter().all(|&x| x == 0) {
                continue;
            }
            let mu = slope(theta, &part).expect("nonzero");
            if bound.is_some_and(|b| mu >= *b) {
                continue;
            }
            let part = DimensionVector::from_raw(part);
            if !self.has_semistable(&part, theta) {
                continue;
            }
            let remaining: Vec<i64> = rest.iter().zip(part.entries()).map(|(a, b)| a - b).collect();
            prefix.push(part);
            self.extend_types(&remaining, theta, Some(&mu), prefix, out);
            prefix.pop();
        }
    }
}

/// Convenience wrapper for [`HnContext::hn_types`].
pub fn hn_types(q: &Quiver, d: &DimensionVector, theta: &StabilityParameter) -> Result<Vec<HnType>> {
    HnContext::new(q).hn_types(d, theta)
}

/// Convenience wrapper for [`HnContext::has_semistable`].
pub fn has_semistable(q: &Quiver, e: &DimensionVector, theta: &StabilityParameter) -> bool {
    HnContext::new(q).has_semistable(e, theta)
}

/// Convenience wrapper for [`HnContext::generic_subdimension_vectors`].
pub fn generic_subdimension_vectors(q: &Quiver, e: &[i64]) -> BTreeSet<Vec<i64>> {
    HnContext::new(q).generic_subdimension_vectors(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[i64]) -> DimensionVector {
        DimensionVector::new(v.to_vec()).unwrap()
    }

    fn th(v: &[i64]) -> StabilityParameter {
        StabilityParameter::new(v.to_vec()).unwrap()
    }

    #[test]
    fn generic_subdimensions_a2() {
        let a2 = Quiver::kronecker(1);
        let got: Vec<_> = generic_subdimension_vectors(&a2, &[2, 1]).into_iter().collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 1]]);
    }

    #[test]
    fn generic_subdimensions_kronecker() {
        let k3 = Quiver::kronecker(3);
        let got: Vec<_> = generic_subdimension_vectors(&k3, &[1, 1]).into_iter().collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn semistable_existence() {
        let k3 = Quiver::kronecker(3);
        assert!(has_semistable(&k3, &dv(&[2, 3]), &th(&[12, -9])));
        let a2 = Quiver::kronecker(1);
        assert!(!has_semistable(&a2, &dv(&[2, 1]), &th(&[1, -1])));
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 1;
            let q = Quiver::from_one_based(3, &[(1, 2), (2, 3)]).unwrap();
            assert!(has_semistable(&q, &dv(&e), &th(&[5, -1, 2])));
        }
    }

    #[test]
    fn recurring_example_has_nineteen_types() {
        let k3 = Quiver::kronecker(3);
        let types = hn_types(&k3, &dv(&[3, 4]), &th(&[12, -9])).unwrap();
        assert_eq!(types.len(), 19);
        assert_eq!(types.iter().filter(|t| t.is_trivial()).count(), 1);
    }

    #[test]
    fn unit_vector_has_only_trivial_type() {
        let q = Quiver::kronecker(3);
        let types = hn_types(&q, &dv(&[1, 0]), &th(&[0, 1])).unwrap();
        assert_eq!(types.len(), 1);
        assert!(types[0].is_trivial());
        assert!(hn_types(&q, &dv(&[0, 1]), &th(&[0, 1])).is_err());
    }

    #[test]
    fn mkronecker_types_do_not_depend_on_m() {
        let mut first = None;
        for m in 3..7 {
            let q = Quiver::kronecker(m);
            let t = th(&[3 * m as i64, -2 * m as i64]);
            let types: Vec<_> = hn_types(&q, &dv(&[2, 3]), &t)
                .unwrap()
                .into_iter()
                .filter(|t| !t.is_trivial())
                .collect();
            assert_eq!(types.len(), 7);
            match &first {
                None => first = Some(types),
                Some(f) => assert_eq!(f, &types),
            }
        }
    }

    #[test]
    fn type_validation_rejects_bad_orders() {
        let t = th(&[12, -9]);
        assert!(HnType::new(vec![dv(&[2, 3]), dv(&[1, 1])], &t).is_err());
        let good = HnType::new(vec![dv(&[1, 1]), dv(&[2, 3])], &t).unwrap();
        let k3 = Quiver::kronecker(3);
        let mut ctx = HnContext::new(&k3);
        good.validate(&mut ctx, &dv(&[3, 4]), &t).unwrap();
        assert!(good.validate(&mut ctx, &dv(&[3, 5]), &t).is_err());
    }
}
