//! Quivers, dimension vectors, stability parameters and the Euler form.
//!
//! Vertices are 0-based inside the library. The JSON input format and the
//! bundle expression language use 1-based vertex labels and are converted at
//! the boundary.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[cfg(test)]
pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A finite directed graph with numbered vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// Builds a quiver from 0-based arrow endpoints.
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Input("a quiver needs at least one vertex".into()));
        }
        for &(s, t) in &arrows {
            if s >= vertex_count || t >= vertex_count {
                return Err(Error::Input(format!(
                    "arrow ({}, {}) has an endpoint outside 1..{}",
                    s + 1,
                    t + 1,
                    vertex_count
                )));
            }
        }
        Ok(Quiver { vertex_count, arrows })
    }

    /// Builds a quiver from 1-based arrow endpoints, as written in input documents.
    pub fn from_one_based(vertex_count: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let mut zero = Vec::with_capacity(arrows.len());
        for &(s, t) in arrows {
            if s == 0 || t == 0 {
                return Err(Error::Input(format!(
                    "arrow ({s}, {t}): vertices are numbered from 1"
                )));
            }
            zero.push((s - 1, t - 1));
        }
        Quiver::new(vertex_count, zero)
    }

    /// The generalized Kronecker quiver with `m` arrows from vertex 0 to vertex 1.
    pub fn kronecker(m: usize) -> Self {
        Quiver { vertex_count: 2, arrows: vec![(0, 1); m] }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Arrow multiplicities grouped by (source, target), in first-seen order.
    pub fn arrow_multiplicities(&self) -> Vec<((usize, usize), usize)> {
        let mut out: Vec<((usize, usize), usize)> = Vec::new();
        for &a in &self.arrows {
            match out.iter_mut().find(|(b, _)| *b == a) {
                Some((_, m)) => *m += 1,
                None => out.push((a, 1)),
            }
        }
        out
    }

    /// A directed cycle if one exists (vertices in order), otherwise `None`.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let n = self.vertex_count;
        let mut state = vec![0u8; n];
        let mut stack: Vec<usize> = Vec::new();
        fn visit(
            q: &Quiver,
            v: usize,
            state: &mut [u8],
            stack: &mut Vec<usize>,
        ) -> Option<Vec<usize>> {
            state[v] = 1;
            stack.push(v);
            for &(s, t) in &q.arrows {
                if s != v {
                    continue;
                }
                if state[t] == 1 {
                    let pos = stack.iter().position(|&x| x == t).unwrap();
                    return Some(stack[pos..].to_vec());
                }
                if state[t] == 0 {
                    if let Some(c) = visit(q, t, state, stack) {
                        return Some(c);
                    }
                }
            }
            stack.pop();
            state[v] = 2;
            None
        }
        for v in 0..n {
            if state[v] == 0 {
                if let Some(c) = visit(self, v, &mut state, &mut stack) {
                    return Some(c);
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// A topological order of the vertices, if the quiver is acyclic.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count;
        let mut indeg = vec![0usize; n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        ready.reverse();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.push(t);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Quiver {
            vertex_count: self.vertex_count,
            arrows: self.arrows.iter().map(|&(s, t)| (perm[s], perm[t])).collect(),
        }
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.vertex_count {
            return Err(Error::Length { expected: self.vertex_count, got: v.len() });
        }
        Ok(())
    }
}

/// A nonzero, componentwise nonnegative integer vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimensionVector(Vec<i64>);

impl DimensionVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.iter().any(|&x| x < 0) {
            return Err(Error::Input(format!("dimension vector {entries:?} has a negative entry")));
        }
        if entries.iter().all(|&x| x == 0) {
            return Err(Error::Input("dimension vector must be nonzero".into()));
        }
        Ok(DimensionVector(entries))
    }

    /// Wraps a vector already known to be valid.
    pub(crate) fn from_raw(entries: Vec<i64>) -> Self {
        debug_assert!(entries.iter().all(|&x| x >= 0) && entries.iter().any(|&x| x > 0));
        DimensionVector(entries)
    }

    pub fn for_quiver(q: &Quiver, entries: Vec<i64>) -> Result<Self> {
        q.check_len(&entries)?;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        DimensionVector(permute(&self.0, perm))
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

pub(crate) fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[i64]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

fn permute(v: &[i64], perm: &[usize]) -> Vec<i64> {
    let mut out = vec![0; v.len()];
    for (i, &x) in v.iter().enumerate() {
        out[perm[i]] = x;
    }
    out
}

/// An integer weight on the vertices. Zero is representable so that a
/// degenerate canonical parameter can be reported, see [`StabilityParameter::is_zero`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StabilityParameter(Vec<i64>);

impl StabilityParameter {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.iter().all(|&x| x == 0) {
            return Err(Error::Input("stability parameter must be nonzero".into()));
        }
        Ok(StabilityParameter(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn pair(&self, e: &[i64]) -> i64 {
        dot(&self.0, e)
    }

    pub fn scaled(&self, c: i64) -> Self {
        StabilityParameter(self.0.iter().map(|x| x * c).collect())
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        StabilityParameter(permute(&self.0, perm))
    }
}

impl fmt::Display for StabilityParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// A tuple `a` with `a·d = 1`, fixing the universal bundles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Linearisation(Vec<i64>);

impl Linearisation {
    /// Unchecked constructor, used for offset-free weight computations.
    pub(crate) fn from_raw(entries: Vec<i64>) -> Self {
        Linearisation(entries)
    }

    pub fn new(entries: Vec<i64>, d: &DimensionVector) -> Result<Self> {
        if entries.len() != d.len() {
            return Err(Error::Length { expected: d.len(), got: entries.len() });
        }
        if dot(&entries, d.entries()) != 1 {
            return Err(Error::Input(format!(
                "linearisation {entries:?} does not pair to 1 with d = {d}"
            )));
        }
        Ok(Linearisation(entries))
    }

    /// The solution of `a·d = 1` that is smallest in the lexicographic order
    /// on absolute values, searching `|a_i| ≤ bound`.
    pub fn smallest(d: &DimensionVector) -> Result<Self> {
        let n = d.len();
        let g = d.entries().iter().fold(0i64, |g, &x| g.gcd(&x));
        if g != 1 {
            return Err(Error::Input(format!("no linearisation exists: gcd of d = {d} is {g}")));
        }
        let bound = d.entries().iter().copied().max().unwrap_or(1).max(1);
        let mut best: Option<Vec<i64>> = None;
        let key = |a: &[i64]| a.iter().map(|x| x.abs()).collect::<Vec<_>>();
        let mut cur = vec![-bound; n];
        loop {
            if dot(&cur, d.entries()) == 1 {
                let better = match &best {
                    None => true,
                    Some(b) => (key(&cur), cur.clone()) < (key(b), b.clone()),
                };
                if better {
                    best = Some(cur.clone());
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    return best
                        .map(Linearisation)
                        .ok_or_else(|| Error::Input(format!("no small linearisation for d = {d}")));
                }
                if cur[i] < bound {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -bound;
                i += 1;
            }
        }
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for Linearisation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// `⟨e, f⟩ = Σ e_i f_i − Σ_a e_{s(a)} f_{t(a)}`; `e`, `f` may be any integer vectors.
pub fn euler_form(q: &Quiver, e: &[i64], f: &[i64]) -> Result<i64> {
    q.check_len(e)?;
    q.check_len(f)?;
    Ok(euler_form_unchecked(q, e, f))
}

pub(crate) fn euler_form_unchecked(q: &Quiver, e: &[i64], f: &[i64]) -> i64 {
    let diag: i64 = dot(e, f);
    let arrows: i64 = q.arrows.iter().map(|&(s, t)| e[s] * f[t]).sum();
    diag - arrows
}

/// `θcan_i = ⟨d, 1_i⟩ − ⟨1_i, d⟩`. May be zero, e.g. for a quiver without arrows.
pub fn canonical_stability(q: &Quiver, d: &DimensionVector) -> Result<StabilityParameter> {
    q.check_len(d.entries())?;
    let n = q.vertex_count();
    let entries = (0..n)
        .map(|i| {
            let mut unit = vec![0; n];
            unit[i] = 1;
            euler_form_unchecked(q, d.entries(), &unit) - euler_form_unchecked(q, &unit, d.entries())
        })
        .collect();
    Ok(StabilityParameter(entries))
}

/// `μ_θ(e) = θ·e / Σ e_i`.
pub fn slope(theta: &StabilityParameter, e: &[i64]) -> Result<Rational> {
    if theta.0.len() != e.len() {
        return Err(Error::Length { expected: theta.0.len(), got: e.len() });
    }
    let total: i64 = e.iter().sum();
    if total <= 0 {
        return Err(Error::Input("slope of a vector with zero total dimension".into()));
    }
    Ok(Rational::new(BigInt::from(theta.pair(e)), BigInt::from(total)))
}

/// Iterates all `e` with `0 ≤ e ≤ d` componentwise, in lexicographic order.
pub fn subdimension_vectors(d: &[i64]) -> impl Iterator<Item = Vec<i64>> + '_ {
    let n = d.len();
    let mut cur: Option<Vec<i64>> = Some(vec![0; n]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = n;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < d[i] {
                next[i] += 1;
                cur = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    })
}

/// Proper nonzero subdimension vectors of `d`.
pub(crate) fn proper_subdimension_vectors(d: &[i64]) -> impl Iterator<Item = Vec<i64>> + '_ {
    subdimension_vectors(d).filter(move |e| e.iter().any(|&x| x != 0) && e.as_slice() != d)
}

fn check_theta(q: &Quiver, d: &DimensionVector, theta: &StabilityParameter) -> Result<()> {
    q.check_len(d.entries())?;
    q.check_len(theta.entries())?;
    if theta.pair(d.entries()) != 0 {
        return Err(Error::Input(format!("θ·d = {} but must be 0", theta.pair(d.entries()))));
    }
    Ok(())
}

fn coprime_witnesses(d: &DimensionVector, theta: &StabilityParameter) -> Vec<Vec<i64>> {
    proper_subdimension_vectors(d.entries()).filter(|e| theta.pair(e) == 0).collect()
}

fn ample_witnesses(q: &Quiver, d: &DimensionVector, theta: &StabilityParameter) -> Vec<Vec<i64>> {
    let de = d.entries();
    subdimension_vectors(de)
        .filter(|e| theta.pair(e) > 0)
        .filter(|e| {
            let rest: Vec<i64> = de.iter().zip(e).map(|(a, b)| a - b).collect();
            euler_form_unchecked(q, e, &rest) > -2
        })
        .collect()
}

/// θ-coprimality: no proper nonzero subdimension vector pairs to zero with θ.
pub fn is_coprime(q: &Quiver, d: &DimensionVector, theta: &StabilityParameter) -> Result<bool> {
    check_theta(q, d, theta)?;
    Ok(coprime_witnesses(d, theta).is_empty())
}

/// θ-strong ample stability: `⟨d', d − d'⟩ ≤ −2` whenever `θ·d' > 0`.
pub fn is_strongly_amply_stable(
    q: &Quiver,
    d: &DimensionVector,
    theta: &StabilityParameter,
) -> Result<bool> {
    check_theta(q, d, theta)?;
    Ok(ample_witnesses(q, d, theta).is_empty())
}

/// Outcome of [`check_assumptions`]; each witness list is nonempty exactly
/// when the corresponding check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub acyclic: bool,
    pub coprime: bool,
    pub strongly_amply_stable: bool,
    pub witnesses: AssumptionWitnesses,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionWitnesses {
    /// A directed cycle (0-based vertices).
    pub cycle: Vec<usize>,
    pub coprime: Vec<Vec<i64>>,
    pub strongly_amply_stable: Vec<Vec<i64>>,
}

impl AssumptionReport {
    pub fn all_hold(&self) -> bool {
        self.acyclic && self.coprime && self.strongly_amply_stable
    }

    /// Turns a failed report into an error naming the first failing assumption.
    pub fn require(&self) -> Result<()> {
        if !self.acyclic {
            return Err(Error::Assumption(format!(
                "quiver is not acyclic (cycle through vertices {:?})",
                self.witnesses.cycle.iter().map(|v| v + 1).collect::<Vec<_>>()
            )));
        }
        if !self.coprime {
            return Err(Error::Assumption(format!(
                "d is not θ-coprime (witness {:?})",
                self.witnesses.coprime[0]
            )));
        }
        if !self.strongly_amply_stable {
            return Err(Error::Assumption(format!(
                "d is not θ-strongly amply stable (witness {:?})",
                self.witnesses.strongly_amply_stable[0]
            )));
        }
        Ok(())
    }
}

pub fn check_assumptions(
    q: &Quiver,
    d: &DimensionVector,
    theta: &StabilityParameter,
) -> Result<AssumptionReport> {
    check_theta(q, d, theta)?;
    let cycle = q.find_cycle().unwrap_or_default();
    let coprime = coprime_witnesses(d, theta);
    let ample = ample_witnesses(q, d, theta);
    Ok(AssumptionReport {
        acyclic: cycle.is_empty(),
        coprime: coprime.is_empty(),
        strongly_amply_stable: ample.is_empty(),
        witnesses: AssumptionWitnesses { cycle, coprime, strongly_amply_stable: ample },
    })
}

/// The index `r = gcd(θcan)`.
pub fn fano_index(q: &Quiver, d: &DimensionVector) -> Result<i64> {
    let theta = canonical_stability(q, d)?;
    if theta.is_zero() {
        return Err(Error::Degenerate("canonical stability parameter is zero".into()));
    }
    Ok(theta.entries().iter().fold(0i64, |g, &x| g.gcd(&x)))
}

/// `1 − ⟨d, d⟩`.
pub fn moduli_dimension(q: &Quiver, d: &DimensionVector) -> Result<usize> {
    let dim = 1 - euler_form(q, d.entries(), d.entries())?;
    usize::try_from(dim).map_err(|_| {
        Error::Degenerate(format!("1 − ⟨d,d⟩ = {dim} is negative; no smooth moduli space"))
    })
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
    fn euler_form_examples() {
        let k3 = Quiver::kronecker(3);
        assert_eq!(euler_form(&k3, &[3, 4], &[3, 4]).unwrap(), -11);
        assert_eq!(euler_form(&k3, &[1, 1], &[2, 3]).unwrap(), -4);
        assert_eq!(euler_form(&k3, &[0, 0], &[5, 7]).unwrap(), 0);
        assert!(matches!(euler_form(&k3, &[1], &[1, 1]), Err(Error::Length { .. })));
    }

    #[test]
    fn canonical_stability_examples() {
        let k3 = Quiver::kronecker(3);
        assert_eq!(canonical_stability(&k3, &dv(&[3, 4])).unwrap().entries(), &[12, -9]);
        for m in 1..6usize {
            let q = Quiver::kronecker(m);
            let t = canonical_stability(&q, &dv(&[2, 5])).unwrap();
            assert_eq!(t.entries(), &[5 * m as i64, -2 * m as i64]);
        }
        let empty = Quiver::new(3, vec![]).unwrap();
        assert!(canonical_stability(&empty, &dv(&[1, 2, 3])).unwrap().is_zero());
    }

    #[test]
    fn slope_examples() {
        let t = th(&[12, -9]);
        assert_eq!(slope(&t, &[1, 1]).unwrap(), Rational::new(3.into(), 2.into()));
        assert_eq!(slope(&t, &[2, 3]).unwrap(), Rational::new((-3).into(), 5.into()));
        assert_eq!(slope(&t, &[3, 4]).unwrap(), rat(0));
        assert!(slope(&t, &[0, 0]).is_err());
    }

    #[test]
    fn coprimality() {
        let k3 = Quiver::kronecker(3);
        assert!(is_coprime(&k3, &dv(&[3, 4]), &th(&[12, -9])).unwrap());
        let k2 = Quiver::kronecker(2);
        assert!(!is_coprime(&k2, &dv(&[2, 2]), &th(&[1, -1])).unwrap());
        assert!(is_coprime(&k2, &dv(&[1, 1]), &th(&[1, -1])).unwrap());
        assert!(is_coprime(&k3, &dv(&[3, 4]), &th(&[1, 1])).is_err());
    }

    #[test]
    fn strong_ample_stability() {
        let k3 = Quiver::kronecker(3);
        assert!(is_strongly_amply_stable(&k3, &dv(&[3, 4]), &th(&[12, -9])).unwrap());
        // boundary case ⟨(1,0),(0,1)⟩ = −2 counts as satisfied
        let k2 = Quiver::kronecker(2);
        assert!(is_strongly_amply_stable(&k2, &dv(&[1, 1]), &th(&[1, -1])).unwrap());
        let a2 = Quiver::kronecker(1);
        assert!(!is_strongly_amply_stable(&a2, &dv(&[1, 1]), &th(&[1, -1])).unwrap());
    }

    #[test]
    fn assumption_reports() {
        let k3 = Quiver::kronecker(3);
        let r = check_assumptions(&k3, &dv(&[3, 4]), &th(&[12, -9])).unwrap();
        assert!(r.all_hold());
        assert_eq!(r.witnesses, AssumptionWitnesses::default());

        let k2 = Quiver::kronecker(2);
        assert!(check_assumptions(&k2, &dv(&[1, 1]), &th(&[2, -2])).unwrap().all_hold());

        let looped = Quiver::new(2, vec![(0, 1), (1, 1)]).unwrap();
        let r = check_assumptions(&looped, &dv(&[1, 1]), &th(&[1, -1])).unwrap();
        assert!(!r.acyclic);
        assert_eq!(r.witnesses.cycle, vec![1]);
        assert!(r.require().is_err());
    }

    #[test]
    fn index_and_dimension() {
        let k3 = Quiver::kronecker(3);
        assert_eq!(fano_index(&k3, &dv(&[3, 4])).unwrap(), 3);
        assert_eq!(moduli_dimension(&k3, &dv(&[3, 4])).unwrap(), 12);
        for m in 3..8 {
            assert_eq!(fano_index(&Quiver::kronecker(m), &dv(&[2, 3])).unwrap(), m as i64);
        }
        let k2 = Quiver::kronecker(2);
        assert_eq!(fano_index(&k2, &dv(&[1, 1])).unwrap(), 2);
        assert_eq!(moduli_dimension(&k2, &dv(&[1, 1])).unwrap(), 1);
        let fivefold = Quiver::from_one_based(
            3,
            &[(1, 2), (1, 3), (1, 3), (2, 3), (2, 3), (2, 3), (2, 3)],
        )
        .unwrap();
        assert_eq!(moduli_dimension(&fivefold, &dv(&[1, 1, 1])).unwrap(), 5);
        let empty = Quiver::new(2, vec![]).unwrap();
        assert!(matches!(fano_index(&empty, &dv(&[1, 1])), Err(Error::Degenerate(_))));
        assert!(moduli_dimension(&empty, &dv(&[2, 0])).is_err());
    }

    #[test]
    fn subdimension_box() {
        let all: Vec<_> = subdimension_vectors(&[1, 2]).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[5], vec![1, 2]);
        assert_eq!(proper_subdimension_vectors(&[1, 2]).count(), 4);
    }

    #[test]
    fn linearisation_solver() {
        let a = Linearisation::smallest(&dv(&[3, 4])).unwrap();
        assert_eq!(dot(a.entries(), &[3, 4]), 1);
        assert_eq!(a.entries(), &[-1, 1]);
        assert!(Linearisation::smallest(&dv(&[2, 4])).is_err());
        assert!(Linearisation::new(vec![1, 1], &dv(&[3, 4])).is_err());
    }

    #[test]
    fn acyclic_order() {
        let q = Quiver::from_one_based(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(q.topological_order(), Some(vec![0, 1, 2]));
        let c = Quiver::new(2, vec![(0, 1), (1, 0)]).unwrap();
        assert!(c.topological_order().is_none());
        assert!(Quiver::from_one_based(2, &[(0, 1)]).is_err());
        assert!(Quiver::new(2, vec![(0, 2)]).is_err());
    }
}
