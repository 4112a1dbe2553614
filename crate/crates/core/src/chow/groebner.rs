//! Degree-truncated Gröbner bases of weighted-homogeneous ideals, computed
//! degree by degree with the Gebauer–Möller pair criteria.

use std::collections::{BTreeMap, HashMap};

use super::field::Field;
use super::poly::{coprime, divides, lcm, mono_div, mono_mul, Mono, Ring, MAX_VARS};

/// A homogeneous polynomial, terms in decreasing monomial order.
pub(crate) type HPoly<F> = Vec<(Mono, F)>;

/// Within one weighted degree, the reversed exponent vector orders monomials
/// so that ascending keys are descending in the monomial order.
fn key(ring: &Ring, m: &Mono) -> Mono {
    let n = ring.nvars();
    let mut k = [0u8; MAX_VARS];
    for v in 0..n {
        k[v] = m[n - 1 - v];
    }
    k
}

fn unkey(ring: &Ring, k: &Mono) -> Mono {
    key(ring, k)
}

pub(crate) fn normalise<F: Field>(ring: &Ring, terms: HashMap<Mono, F>) -> HPoly<F> {
    let mut v: HPoly<F> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by(|a, b| ring.cmp(&b.0, &a.0));
    v
}

fn make_monic<F: Field>(p: &mut HPoly<F>) {
    let inv = p[0].1.inv();
    for (_, c) in p.iter_mut() {
        *c = c.mul(&inv);
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    degree: usize,
}

pub(crate) struct GroebnerBasis<F> {
    pub polys: Vec<HPoly<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn leading(&self, g: usize) -> &Mono {
        &self.polys[g][0].0
    }

    /// An element whose leading monomial divides `m`.
    pub fn reducer(&self, m: &Mono) -> Option<usize> {
        (0..self.polys.len()).find(|&g| divides(self.leading(g), m))
    }

    pub fn is_standard(&self, m: &Mono) -> bool {
        self.reducer(m).is_none()
    }

    /// Full reduction of a homogeneous polynomial.
    pub fn reduce(&self, ring: &Ring, p: &HPoly<F>) -> HPoly<F> {
        let mut acc: BTreeMap<Mono, F> = p.iter().map(|(m, c)| (key(ring, m), c.clone())).collect();
        let mut out = Vec::new();
        while let Some((k, c)) = acc.pop_first() {
            let m = unkey(ring, &k);
            match self.reducer(&m) {
                Some(g) => {
                    let q = mono_div(&m, self.leading(g));
                    for (t, d) in &self.polys[g][1..] {
                        let kt = key(ring, &mono_mul(&q, t));
                        let delta = c.mul(d);
                        let slot = acc.entry(kt).or_insert_with(F::zero);
                        *slot = slot.sub(&delta);
                        if slot.is_zero() {
                            acc.remove(&kt);
                        }
                    }
                }
                None => out.push((m, c)),
            }
        }
        out
    }

    fn s_poly(&self, pair: &Pair) -> HPoly<F> {
        let mut acc: HashMap<Mono, F> = HashMap::new();
        let qi = mono_div(&pair.lcm, self.leading(pair.i));
        let qj = mono_div(&pair.lcm, self.leading(pair.j));
        for (m, c) in &self.polys[pair.i][1..] {
            acc.entry(mono_mul(&qi, m)).or_insert_with(F::zero).add_assign(c);
        }
        for (m, c) in &self.polys[pair.j][1..] {
            let slot = acc.entry(mono_mul(&qj, m)).or_insert_with(F::zero);
            *slot = slot.sub(c);
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Gebauer–Möller update after appending element `h`.
fn update<F: Field>(ring: &Ring, gb: &GroebnerBasis<F>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = *gb.leading(h);
    let mut fresh: Vec<Pair> = (0..h)
        .map(|g| {
            let l = lcm(gb.leading(g), &lh);
            Pair { i: g, j: h, degree: ring.degree(&l), lcm: l }
        })
        .filter(|p| p.degree <= ring.top)
        .collect();
    let mut kept: Vec<Pair> = Vec::new();
    while let Some(p) = fresh.pop() {
        let cop = coprime(gb.leading(p.i), &lh);
        let dominated = fresh.iter().chain(kept.iter()).any(|o| divides(&o.lcm, &p.lcm));
        if cop || !dominated {
            kept.push(p);
        }
    }
    let kept: Vec<Pair> = kept.into_iter().filter(|p| !coprime(gb.leading(p.i), &lh)).collect();
    pairs.retain(|p| {
        if !divides(&lh, &p.lcm) {
            return true;
        }
        let li = lcm(gb.leading(p.i), &lh);
        let lj = lcm(gb.leading(p.j), &lh);
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(kept);
}

/// A Gröbner basis valid in every degree up to `ring.top`.
pub(crate) fn groebner<F: Field>(ring: &Ring, generators: Vec<HPoly<F>>) -> GroebnerBasis<F> {
    let mut by_degree: BTreeMap<usize, Vec<HPoly<F>>> = BTreeMap::new();
    for g in generators {
        if let Some((m, _)) = g.first() {
            let k = ring.degree(m);
            if k <= ring.top {
                by_degree.entry(k).or_default().push(g);
            }
        }
    }
    let mut gb = GroebnerBasis { polys: Vec::new() };
    let mut pairs: Vec<Pair> = Vec::new();
    for k in 0..=ring.top {
        let mut todo: Vec<HPoly<F>> = Vec::new();
        let (now, later): (Vec<Pair>, Vec<Pair>) = pairs.drain(..).partition(|p| p.degree == k);
        pairs = later;
        for p in &now {
            todo.push(normalise(ring, gb.s_poly(p).into_iter().collect()));
        }
        todo.extend(by_degree.remove(&k).unwrap_or_default());
        for p in todo {
            let mut r = gb.reduce(ring, &p);
            if r.is_empty() {
                continue;
            }
            make_monic(&mut r);
            gb.polys.push(r);
            let h = gb.polys.len() - 1;
            update(ring, &gb, &mut pairs, h);
        }
    }
    gb
}
