//! Weighted polynomial rings in the generators `ξ_{i,k}` and graded,
//! degree-truncated polynomials over a [`Field`].

use std::cmp::Ordering;
use std::collections::HashMap;

use super::field::Field;

pub(crate) const MAX_VARS: usize = 16;

/// Exponent vector; entries past the ring's variable count stay zero.
pub(crate) type Mono = [u8; MAX_VARS];

pub(crate) const ONE: Mono = [0; MAX_VARS];

/// Variables with positive integer weights, truncated above degree `top`.
#[derive(Clone, Debug)]
pub(crate) struct Ring {
    pub weights: Vec<usize>,
    pub names: Vec<String>,
    pub top: usize,
}

impl Ring {
    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn degree(&self, m: &Mono) -> usize {
        self.weights.iter().zip(m).map(|(w, &e)| w * e as usize).sum()
    }

    pub fn var(&self, v: usize) -> Mono {
        let mut m = ONE;
        m[v] = 1;
        m
    }

    /// Weighted degree reverse lexicographic order.
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        self.degree(a).cmp(&self.degree(b)).then_with(|| {
            for v in (0..self.nvars()).rev() {
                if a[v] != b[v] {
                    return b[v].cmp(&a[v]);
                }
            }
            Ordering::Equal
        })
    }

    /// Every monomial of weighted degree `k`, in decreasing order.
    pub fn monomials(&self, k: usize) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut cur = ONE;
        self.fill(0, k, &mut cur, &mut out);
        out.sort_by(|a, b| self.cmp(b, a));
        out
    }

    fn fill(&self, v: usize, left: usize, cur: &mut Mono, out: &mut Vec<Mono>) {
        if v == self.nvars() {
            if left == 0 {
                out.push(*cur);
            }
            return;
        }
        let w = self.weights[v];
        for e in 0..=left / w {
            cur[v] = e as u8;
            self.fill(v + 1, left - e * w, cur, out);
        }
        cur[v] = 0;
    }

    pub fn format(&self, m: &Mono) -> String {
        let parts: Vec<String> = (0..self.nvars())
            .filter(|&v| m[v] > 0)
            .map(|v| if m[v] == 1 { self.names[v].clone() } else { format!("{}^{}", self.names[v], m[v]) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

pub(crate) fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out = *a;
    for (o, e) in out.iter_mut().zip(b) {
        *o += e;
    }
    out
}

pub(crate) fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn mono_div(b: &Mono, a: &Mono) -> Mono {
    let mut out = *b;
    for (o, e) in out.iter_mut().zip(a) {
        *o -= e;
    }
    out
}

pub(crate) fn coprime(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

pub(crate) fn lcm(a: &Mono, b: &Mono) -> Mono {
    let mut out = *a;
    for (o, e) in out.iter_mut().zip(b) {
        *o = (*o).max(*e);
    }
    out
}

/// A polynomial split by weighted degree, with all parts above `top` dropped.
#[derive(Clone, Debug)]
pub(crate) struct Graded<F> {
    pub parts: Vec<HashMap<Mono, F>>,
}

impl<F: Field> Graded<F> {
    pub fn zero(ring: &Ring) -> Self {
        Graded { parts: vec![HashMap::new(); ring.top + 1] }
    }

    pub fn constant(ring: &Ring, c: F) -> Self {
        let mut g = Self::zero(ring);
        g.add_term(ring, ONE, c);
        g
    }

    pub fn add_term(&mut self, ring: &Ring, m: Mono, c: F) {
        let k = ring.degree(&m);
        if k >= self.parts.len() || c.is_zero() {
            return;
        }
        let slot = self.parts[k].entry(m).or_insert_with(F::zero);
        slot.add_assign(&c);
        if slot.is_zero() {
            self.parts[k].remove(&m);
        }
    }

    #[cfg(test)]
    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(HashMap::is_empty)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, part) in other.parts.iter().enumerate() {
            for (m, c) in part {
                let slot = out.parts[k].entry(*m).or_insert_with(F::zero);
                slot.add_assign(c);
            }
            out.parts[k].retain(|_, c| !c.is_zero());
        }
        out
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = self.clone();
        for part in &mut out.parts {
            for c in part.values_mut() {
                *c = c.mul(s);
            }
            part.retain(|_, c| !c.is_zero());
        }
        out
    }

    /// Product truncated at the top degree.
    pub fn mul(&self, other: &Self) -> Self {
        let top = self.parts.len() - 1;
        let mut out = Graded { parts: vec![HashMap::new(); top + 1] };
        for (i, a) in self.parts.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for (j, b) in other.parts.iter().enumerate().take(top + 1 - i) {
                if b.is_empty() {
                    continue;
                }
                let dst = &mut out.parts[i + j];
                for (ma, ca) in a {
                    for (mb, cb) in b {
                        dst.entry(mono_mul(ma, mb)).or_insert_with(F::zero).add_assign(&ca.mul(cb));
                    }
                }
            }
        }
        for part in &mut out.parts {
            part.retain(|_, c| !c.is_zero());
        }
        out
    }

    /// Only the top-degree part of the product.
    pub fn mul_top(&self, other: &Self) -> HashMap<Mono, F> {
        let top = self.parts.len() - 1;
        let mut out: HashMap<Mono, F> = HashMap::new();
        for (i, a) in self.parts.iter().enumerate() {
            let b = &other.parts[top - i];
            for (ma, ca) in a {
                for (mb, cb) in b {
                    out.entry(mono_mul(ma, mb)).or_insert_with(F::zero).add_assign(&ca.mul(cb));
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `exp(self)` for a class without constant term.
    pub fn exp(&self) -> Self {
        assert!(self.parts[0].is_empty(), "exp of a class with a constant term");
        let top = self.parts.len() - 1;
        // k·E_k = Σ_j j·L_j·E_{k−j}
        let mut out = Graded { parts: vec![HashMap::new(); top + 1] };
        out.parts[0].insert(ONE, F::one());
        for k in 1..=top {
            let mut acc: HashMap<Mono, F> = HashMap::new();
            for j in 1..=k {
                let lj = &self.parts[j];
                let ekj = &out.parts[k - j];
                if lj.is_empty() || ekj.is_empty() {
                    continue;
                }
                let jf = F::from_i64(j as i64);
                for (ma, ca) in lj {
                    let cj = ca.mul(&jf);
                    for (mb, cb) in ekj {
                        acc.entry(mono_mul(ma, mb)).or_insert_with(F::zero).add_assign(&cj.mul(cb));
                    }
                }
            }
            let inv_k = F::from_i64(k as i64).inv();
            acc.retain(|_, c| {
                *c = c.mul(&inv_k);
                !c.is_zero()
            });
            out.parts[k] = acc;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Rational;

    fn ring() -> Ring {
        Ring { weights: vec![1, 2], names: vec!["a".into(), "b".into()], top: 4 }
    }

    #[test]
    fn monomial_enumeration_and_order() {
        let r = ring();
        let m4 = r.monomials(4);
        assert_eq!(m4.len(), 3);
        assert_eq!(r.format(&m4[0]), "a^4");
        assert_eq!(r.format(&m4[2]), "b^2");
    }

    #[test]
    fn exp_of_a_linear_class() {
        let r = ring();
        let mut x = Graded::<Rational>::zero(&r);
        x.add_term(&r, r.var(0), Rational::from_integer(2.into()));
        let e = x.exp();
        let a4 = {
            let mut m = ONE;
            m[0] = 4;
            m
        };
        assert_eq!(e.parts[4][&a4], Rational::new(16.into(), 24.into()));
        let prod = e.mul(&x.scale(&Rational::from_integer((-1).into())).exp());
        assert!(prod.add(&Graded::constant(&r, Rational::from_integer((-1).into()))).is_zero());
    }
}
