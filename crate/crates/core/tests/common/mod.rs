//! Independent oracles shared by the integration tests.
//!
//! Everything here works from random representations over `𝔽_p`: the
//! dimension of `Hom(V, W)` is the corank of the linear map
//! `(φ_i) ↦ (W_a φ_{s(a)} − φ_{t(a)} V_a)`, generic ranks are taken as the
//! maximum over several samples, and `ext = hom − ⟨α, β⟩`.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeSet;

use quiver_sod::quiver::Quiver;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const P: u64 = 2_147_483_647;
pub const SAMPLES: usize = 20;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn inv(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % P, P - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        exp >>= 1;
    }
    acc
}

/// Rank over `𝔽_p` by Gaussian elimination.
pub fn rank(mut m: Vec<Vec<u64>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pivot);
        let scale = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * scale % P;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + (P - f) * m[r][j] % P) % P;
                }
            }
        }
        r += 1;
    }
    r
}

/// Independent Euler form `Σ αᵢβᵢ − Σ_a α_{s(a)} β_{t(a)}`.
pub fn euler(q: &Quiver, a: &[i64], b: &[i64]) -> i64 {
    let diag: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    diag - q.arrows().iter().map(|&(s, t)| a[s] * b[t]).sum::<i64>()
}

fn random_rep(q: &Quiver, dims: &[i64], rng: &mut StdRng) -> Vec<Vec<Vec<u64>>> {
    q.arrows()
        .iter()
        .map(|&(s, t)| {
            (0..dims[t]).map(|_| (0..dims[s]).map(|_| rng.gen_range(0..P)).collect()).collect()
        })
        .collect()
}

/// `dim Hom(V, W)` for one random pair of representations.
fn hom_sample(q: &Quiver, a: &[i64], b: &[i64], rng: &mut StdRng) -> usize {
    let v = random_rep(q, a, rng);
    let w = random_rep(q, b, rng);
    let n = a.len();
    // φ_i is a b_i × a_i block; offsets into the unknown vector
    let mut off = vec![0usize; n + 1];
    for i in 0..n {
        off[i + 1] = off[i] + (a[i] * b[i]) as usize;
    }
    let unknowns = off[n];
    if unknowns == 0 {
        return 0;
    }
    let var = |i: usize, row: usize, col: usize| off[i] + row * a[i] as usize + col;
    let mut rows = Vec::new();
    for (k, &(s, t)) in q.arrows().iter().enumerate() {
        // (W_k φ_s − φ_t V_k) is b_t × a_s
        for x in 0..b[t] as usize {
            for y in 0..a[s] as usize {
                let mut eq = vec![0u64; unknowns];
                for z in 0..b[s] as usize {
                    let idx = var(s, z, y);
                    eq[idx] = (eq[idx] + w[k][x][z]) % P;
                }
                for z in 0..a[t] as usize {
                    let idx = var(t, x, z);
                    eq[idx] = (eq[idx] + P - v[k][z][y]) % P;
                }
                rows.push(eq);
            }
        }
    }
    unknowns - rank(rows)
}

/// Generic `hom(α, β)`: the minimum over random samples.
pub fn hom(q: &Quiver, a: &[i64], b: &[i64], rng: &mut StdRng) -> usize {
    (0..SAMPLES).map(|_| hom_sample(q, a, b, rng)).min().unwrap_or(0)
}

pub fn ext(q: &Quiver, a: &[i64], b: &[i64], rng: &mut StdRng) -> i64 {
    hom(q, a, b, rng) as i64 - euler(q, a, b)
}

pub fn boxes(d: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &x in d {
        out = out.into_iter().flat_map(|p: Vec<i64>| (0..=x).map(move |v| [p.clone(), vec![v]].concat())).collect();
    }
    out
}

/// Generic subdimension vectors of `e`, including `0` and `e`, by the rank test
/// `ext(e', e − e') = 0`.
pub fn generic_subdimensions(q: &Quiver, e: &[i64], rng: &mut StdRng) -> BTreeSet<Vec<i64>> {
    boxes(e)
        .into_iter()
        .filter(|sub| {
            let rest: Vec<i64> = e.iter().zip(sub).map(|(a, b)| a - b).collect();
            ext(q, sub, &rest, rng) == 0
        })
        .collect()
}

/// `μ(a)` against `μ(b)` by cross multiplication.
pub fn cmp_slope(theta: &[i64], a: &[i64], b: &[i64]) -> Ordering {
    let num = |v: &[i64]| theta.iter().zip(v).map(|(t, x)| t * x).sum::<i64>();
    let den = |v: &[i64]| v.iter().sum::<i64>();
    (num(a) * den(b)).cmp(&(num(b) * den(a)))
}

pub fn has_semistable(q: &Quiver, e: &[i64], theta: &[i64], rng: &mut StdRng) -> bool {
    generic_subdimensions(q, e, rng)
        .iter()
        .filter(|s| s.iter().any(|&x| x != 0))
        .all(|s| cmp_slope(theta, s, e) != Ordering::Greater)
}

/// All ordered decompositions of `d` into nonzero parts with strictly
/// decreasing slopes, each part admitting semistables.
pub fn hn_types(q: &Quiver, d: &[i64], theta: &[i64], rng: &mut StdRng) -> BTreeSet<Vec<Vec<i64>>> {
    let mut out = BTreeSet::new();
    let mut stack = vec![(d.to_vec(), Vec::<Vec<i64>>::new())];
    while let Some((rest, prefix)) = stack.pop() {
        if rest.iter().all(|&x| x == 0) {
            out.insert(prefix);
            continue;
        }
        for part in boxes(&rest) {
            if part.iter().all(|&x| x == 0) {
                continue;
            }
            if prefix.last().is_some_and(|last| cmp_slope(theta, &part, last) != Ordering::Less) {
                continue;
            }
            if !has_semistable(q, &part, theta, rng) {
                continue;
            }
            let next: Vec<i64> = rest.iter().zip(&part).map(|(a, b)| a - b).collect();
            let mut p = prefix.clone();
            p.push(part);
            stack.push((next, p));
        }
    }
    out
}
