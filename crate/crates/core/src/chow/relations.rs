//! Tautological relations. For every forbidden `e` the normal-bundle class
//! `δ_e` is multiplied by each Artin monomial and antisymmetrised over the
//! product of symmetric groups; the result is rewritten in the elementary
//! symmetric generators `ξ_{i,k}` via Jacobi–Trudi.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{mono_mul, Mono, MAX_VARS, ONE};
use crate::error::{Error, Result};
use crate::quiver::{proper_subdimension_vectors, DimensionVector, Quiver, StabilityParameter};

/// Positions of the Chern roots `x_{i,r}` (and of the generators `ξ_{i,k}`,
/// with `ξ_{i,k}` at `offset[i] + k − 1`).
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub dims: Vec<usize>,
    pub offset: Vec<usize>,
}

impl Layout {
    pub fn new(d: &[i64]) -> Result<Self> {
        let dims: Vec<usize> = d.iter().map(|&x| x as usize).collect();
        let total: usize = dims.iter().sum();
        if total > MAX_VARS {
            return Err(Error::Presentation(format!(
                "{total} generators exceed the supported maximum of {MAX_VARS}"
            )));
        }
        let mut offset = Vec::with_capacity(dims.len());
        let mut acc = 0;
        for &k in &dims {
            offset.push(acc);
            acc += k;
        }
        Ok(Layout { dims, offset })
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `Σ_i C(d_i, 2)`, the degree of the Vandermonde denominator.
    pub fn vandermonde_degree(&self) -> usize {
        self.dims.iter().map(|&k| k * k.saturating_sub(1) / 2).sum()
    }
}

type XPoly = HashMap<Mono, i128>;

fn xpoly_mul_linear(p: &XPoly, plus: usize, minus: usize) -> XPoly {
    let mut out: XPoly = HashMap::with_capacity(p.len() * 2);
    for (m, c) in p {
        let mut a = *m;
        a[plus] += 1;
        *out.entry(a).or_insert(0) += c;
        let mut b = *m;
        b[minus] += 1;
        *out.entry(b).or_insert(0) -= c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `δ_e = ∏_a ∏_{r < e_{s(a)}} ∏_{s ≥ e_{t(a)}} (x_{t(a),s} − x_{s(a),r})`, 0-based.
fn delta(q: &Quiver, lay: &Layout, e: &[i64]) -> XPoly {
    let mut p: XPoly = HashMap::from([(ONE, 1i128)]);
    for &(s, t) in q.arrows() {
        for r in 0..e[s] as usize {
            for u in e[t] as usize..lay.dims[t] {
                p = xpoly_mul_linear(&p, lay.offset[t] + u, lay.offset[s] + r);
            }
        }
    }
    p
}

/// Monomials `∏ x_{i,r}^{β_{i,r}}` with `β_{i,r} ≤ r`: a basis of the
/// polynomial ring over the symmetric invariants.
fn artin_monomials(lay: &Layout) -> Vec<(Mono, usize)> {
    let mut out = vec![(ONE, 0usize)];
    for (i, &k) in lay.dims.iter().enumerate() {
        for r in 1..k {
            let v = lay.offset[i] + r;
            out = out
                .into_iter()
                .flat_map(|(m, deg)| {
                    (0..=r).map(move |b| {
                        let mut m = m;
                        m[v] = b as u8;
                        (m, deg + b)
                    })
                })
                .collect();
        }
    }
    out
}

/// Schur polynomials of one vertex rewritten in its generators `ξ_{i,·}`.
struct SchurCache<'a> {
    lay: &'a Layout,
    h: HashMap<(usize, usize), HashMap<Mono, BigInt>>,
    schur: HashMap<(usize, Vec<u8>), HashMap<Mono, BigInt>>,
}

impl<'a> SchurCache<'a> {
    fn new(lay: &'a Layout) -> Self {
        SchurCache { lay, h: HashMap::new(), schur: HashMap::new() }
    }

    /// Complete symmetric `h_k` in the `d_i` roots of vertex `i`.
    fn h(&mut self, i: usize, k: usize) -> HashMap<Mono, BigInt> {
        if let Some(p) = self.h.get(&(i, k)) {
            return p.clone();
        }
        let n = self.lay.dims[i];
        let p = if k == 0 {
            HashMap::from([(ONE, BigInt::from(1))])
        } else {
            // h_k = Σ_{j=1}^{min(k,n)} (−1)^{j−1} e_j h_{k−j}
            let mut acc: HashMap<Mono, BigInt> = HashMap::new();
            for j in 1..=k.min(n) {
                let prev = self.h(i, k - j);
                let mut ej = ONE;
                ej[self.lay.offset[i] + j - 1] = 1;
                for (m, c) in prev {
                    let slot = acc.entry(mono_mul(&m, &ej)).or_insert_with(BigInt::zero);
                    if j % 2 == 1 {
                        *slot += c;
                    } else {
                        *slot -= c;
                    }
                }
            }
            acc.retain(|_, c| !c.is_zero());
            acc
        };
        self.h.insert((i, k), p.clone());
        p
    }

    /// `s_λ = det(h_{λ_r − r + c})` for a partition with at most `d_i` parts.
    fn schur(&mut self, i: usize, lambda: &[u8]) -> HashMap<Mono, BigInt> {
        let parts: Vec<usize> = lambda.iter().map(|&x| x as usize).filter(|&x| x > 0).collect();
        let key = (i, parts.iter().map(|&x| x as u8).collect::<Vec<u8>>());
        if let Some(p) = self.schur.get(&key) {
            return p.clone();
        }
        let l = parts.len();
        let mut entries: Vec<Vec<Option<HashMap<Mono, BigInt>>>> = Vec::with_capacity(l);
        for r in 0..l {
            let mut row = Vec::with_capacity(l);
            for c in 0..l {
                let idx = parts[r] as i64 - r as i64 + c as i64;
                row.push(if idx < 0 { None } else { Some(self.h(i, idx as usize)) });
            }
            entries.push(row);
        }
        let p = determinant(&entries);
        self.schur.insert(key, p.clone());
        p
    }
}

fn poly_mul(a: &HashMap<Mono, BigInt>, b: &HashMap<Mono, BigInt>) -> HashMap<Mono, BigInt> {
    let mut out: HashMap<Mono, BigInt> = HashMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            *out.entry(mono_mul(ma, mb)).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Laplace expansion along the first row; `None` entries are zero.
fn determinant(m: &[Vec<Option<HashMap<Mono, BigInt>>>]) -> HashMap<Mono, BigInt> {
    let l = m.len();
    if l == 0 {
        return HashMap::from([(ONE, BigInt::from(1))]);
    }
    let mut acc: HashMap<Mono, BigInt> = HashMap::new();
    for c in 0..l {
        let Some(entry) = &m[0][c] else { continue };
        let minor: Vec<Vec<Option<HashMap<Mono, BigInt>>>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = poly_mul(entry, &determinant(&minor));
        for (mono, coeff) in term {
            let slot = acc.entry(mono).or_insert_with(BigInt::zero);
            if c % 2 == 0 {
                *slot += coeff;
            } else {
                *slot -= coeff;
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

/// Antisymmetrises one monomial vertex by vertex. Returns the sign and the
/// concatenated partitions, or `None` when the result is zero.
fn antisymmetrise(lay: &Layout, m: &Mono) -> Option<(i128, Vec<u8>)> {
    let mut sign = 1i128;
    let mut key = Vec::with_capacity(lay.total());
    for (i, &k) in lay.dims.iter().enumerate() {
        let mut exps: Vec<u8> = m[lay.offset[i]..lay.offset[i] + k].to_vec();
        for a in 0..k {
            for b in a + 1..k {
                match exps[a].cmp(&exps[b]) {
                    std::cmp::Ordering::Equal => return None,
                    std::cmp::Ordering::Less => sign = -sign,
                    std::cmp::Ordering::Greater => {}
                }
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (r, x) in exps.iter().enumerate() {
            key.push(x - (k - 1 - r) as u8);
        }
    }
    Some((sign, key))
}

/// Forbidden subdimension vectors: `0 < e < d` with `θ·e > 0`.
pub(crate) fn forbidden(d: &DimensionVector, theta: &StabilityParameter) -> Vec<Vec<i64>> {
    proper_subdimension_vectors(d.entries()).filter(|e| theta.pair(e) > 0).collect()
}

/// Every tautological relation of degree at most `top`, as a polynomial in
/// the generators `ξ_{i,k}` (integer coefficients), with its degree.
pub(crate) fn tautological_relations(
    q: &Quiver,
    d: &DimensionVector,
    theta: &StabilityParameter,
    top: usize,
) -> Result<Vec<(usize, HashMap<Mono, BigInt>)>> {
    let lay = Layout::new(d.entries())?;
    let vdeg = lay.vandermonde_degree();
    let artin = artin_monomials(&lay);
    let mut cache = SchurCache::new(&lay);
    let mut out = Vec::new();
    for e in forbidden(d, theta) {
        let de = delta(q, &lay, &e);
        let ddeg = q
            .arrows()
            .iter()
            .map(|&(s, t)| e[s] as usize * (lay.dims[t] - e[t] as usize))
            .sum::<usize>();
        for (b, bdeg) in &artin {
            if ddeg + bdeg < vdeg || ddeg + bdeg - vdeg > top {
                continue;
            }
            let mut acc: HashMap<Vec<u8>, i128> = HashMap::new();
            for (m, c) in &de {
                if let Some((sign, key)) = antisymmetrise(&lay, &mono_mul(m, b)) {
                    *acc.entry(key).or_insert(0) += sign * c;
                }
            }
            let mut rel: HashMap<Mono, BigInt> = HashMap::new();
            for (key, c) in acc {
                if c == 0 {
                    continue;
                }
                let mut term: HashMap<Mono, BigInt> = HashMap::from([(ONE, BigInt::from(c))]);
                let mut pos = 0;
                for (i, &k) in lay.dims.iter().enumerate() {
                    let s = cache.schur(i, &key[pos..pos + k]);
                    term = poly_mul(&term, &s);
                    pos += k;
                }
                for (mono, coeff) in term {
                    *rel.entry(mono).or_insert_with(BigInt::zero) += coeff;
                }
            }
            rel.retain(|_, c| !c.is_zero());
            if !rel.is_empty() {
                out.push((ddeg + bdeg - vdeg, rel));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schur_polynomials_in_elementary_generators() {
        let lay = Layout::new(&[3]).unwrap();
        let mut cache = SchurCache::new(&lay);
        // s_(1,1) = e_2, s_(2) = e_1² − e_2, s_(2,1) = e_1 e_2 − e_3
        let e2 = {
            let mut m = ONE;
            m[1] = 1;
            m
        };
        assert_eq!(cache.schur(0, &[1, 1, 0]), HashMap::from([(e2, BigInt::from(1))]));
        let s21 = cache.schur(0, &[2, 1, 0]);
        assert_eq!(s21.len(), 2);
        let mut e1e2 = ONE;
        e1e2[0] = 1;
        e1e2[1] = 1;
        assert_eq!(s21[&e1e2], BigInt::from(1));
        assert_eq!(cache.schur(0, &[1, 1, 1]).len(), 1);
    }

    #[test]
    fn projective_plane_relation() {
        let q = Quiver::kronecker(3);
        let d = DimensionVector::new(vec![1, 1]).unwrap();
        let theta = StabilityParameter::new(vec![3, -3]).unwrap();
        let rels = tautological_relations(&q, &d, &theta, 2).unwrap();
        assert!(rels.is_empty());
        let rels = tautological_relations(&q, &d, &theta, 3).unwrap();
        assert_eq!(rels.len(), 1);
        // (ξ_2 − ξ_1)³
        assert_eq!(rels[0].1.len(), 4);
    }

    #[test]
    fn artin_basis_size() {
        let lay = Layout::new(&[3, 4]).unwrap();
        assert_eq!(artin_monomials(&lay).len(), 6 * 24);
    }
}
