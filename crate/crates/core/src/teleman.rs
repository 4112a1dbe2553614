//! One-parameter-subgroup weights on HN strata, Teleman bounds, and the
//! quantization inequality `max W(F, d*) < η_{d*}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bundle::BundleExpression;
use crate::error::{Error, Result};
use crate::hn::{HnContext, HnType};
use crate::quiver::{
    canonical_stability, check_assumptions, euler_form_unchecked, fano_index, slope,
    DimensionVector, Linearisation, Quiver, Rational, StabilityParameter,
};

/// The weight data `(c, k)` of the one-parameter subgroup attached to an HN type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumWeights {
    pub hn_type: HnType,
    pub c: BigInt,
    pub k: Vec<BigInt>,
}

impl StratumWeights {
    /// `Σ_n k_n dⁿ`.
    pub fn weighted_sum(&self) -> Vec<BigInt> {
        let n = self.hn_type.parts()[0].len();
        let mut out = vec![BigInt::zero(); n];
        for (part, k) in self.hn_type.parts().iter().zip(&self.k) {
            for (o, &x) in out.iter_mut().zip(part.entries()) {
                *o += k * x;
            }
        }
        out
    }

    /// Replaces `(c, k)` by `(λc, λk)`.
    pub fn rescaled(&self, lambda: i64) -> Self {
        let l = BigInt::from(lambda);
        StratumWeights {
            hn_type: self.hn_type.clone(),
            c: &self.c * &l,
            k: self.k.iter().map(|x| x * &l).collect(),
        }
    }
}

/// Weights with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMultiset(BTreeMap<Rational, u64>);

impl WeightMultiset {
    pub fn single(w: Rational) -> Self {
        let mut m = BTreeMap::new();
        m.insert(w, 1);
        WeightMultiset(m)
    }

    pub fn insert(&mut self, w: Rational, mult: u64) {
        if mult > 0 {
            *self.0.entry(w).or_insert(0) += mult;
        }
    }

    pub fn support(&self) -> Vec<Rational> {
        self.0.keys().cloned().collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Rational, &u64)> {
        self.0.iter()
    }

    pub fn max(&self) -> Option<&Rational> {
        self.0.keys().next_back()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn negated(&self) -> Self {
        WeightMultiset(self.0.iter().map(|(w, m)| (-w, *m)).collect())
    }

    pub fn shifted(&self, by: &Rational) -> Self {
        WeightMultiset(self.0.iter().map(|(w, m)| (w + by, *m)).collect())
    }

    /// Weights of a tensor product: all pairwise sums, multiplicities multiplied.
    pub fn tensor(&self, other: &WeightMultiset) -> Self {
        let mut out = WeightMultiset::default();
        for (a, ma) in &self.0 {
            for (b, mb) in &other.0 {
                out.insert(a + b, ma * mb);
            }
        }
        out
    }

    pub fn union(&self, other: &WeightMultiset) -> Self {
        let mut out = self.clone();
        for (w, m) in &other.0 {
            out.insert(w.clone(), *m);
        }
        out
    }
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn to_rat(x: &BigInt) -> Rational {
    Rational::from_integer(x.clone())
}

/// `k_m = c·μ_θ(dᵐ)` with `c` the least positive integer making every `k_m` integral.
pub fn stratum_weights(hn_type: &HnType, theta: &StabilityParameter) -> Result<StratumWeights> {
    let slopes = hn_type
        .parts()
        .iter()
        .map(|p| slope(theta, p.entries()))
        .collect::<Result<Vec<_>>>()?;
    let c = slopes.iter().fold(BigInt::one(), |acc, s| acc.lcm(s.denom()));
    let k = slopes.iter().map(|s| (s * to_rat(&c)).to_integer()).collect();
    Ok(StratumWeights { hn_type: hn_type.clone(), c, k })
}

/// Weights of `U_i(a)`: `k_m − Σ_j Σ_n a_j dⁿ_j k_n` with multiplicity `dᵐ_i`.
pub fn weights_universal(sw: &StratumWeights, i: usize, a: &Linearisation) -> WeightMultiset {
    let offset: BigInt = sw
        .weighted_sum()
        .iter()
        .zip(a.entries())
        .map(|(s, &aj)| s * aj)
        .sum();
    let mut out = WeightMultiset::default();
    for (part, k) in sw.hn_type.parts().iter().zip(&sw.k) {
        let mult = part.entries()[i];
        if mult > 0 {
            out.insert(to_rat(&(k - &offset)), mult as u64);
        }
    }
    out
}

/// Weights of `U_i^∨ ⊗ U_j`: `k_m − k_n` with multiplicity `dᵐ_j · dⁿ_i`.
/// Independent of the linearisation.
pub fn weights_hom(sw: &StratumWeights, i: usize, j: usize) -> WeightMultiset {
    let parts = sw.hn_type.parts();
    let mut out = WeightMultiset::default();
    for (pm, km) in parts.iter().zip(&sw.k) {
        for (pn, kn) in parts.iter().zip(&sw.k) {
            let mult = pm.entries()[j] * pn.entries()[i];
            if mult > 0 {
                out.insert(to_rat(&(km - kn)), mult as u64);
            }
        }
    }
    out
}

/// Weight of `L(e)`: `−e·Σ_n k_n dⁿ`.
pub fn weight_linearised(sw: &StratumWeights, e: &[Rational]) -> Rational {
    let s = sw.weighted_sum();
    let dot: Rational = e.iter().zip(&s).map(|(x, y)| x * to_rat(y)).sum();
    -dot
}

/// `η = Σ_{s<t} (k_t − k_s)·⟨dˢ, dᵗ⟩`.
pub fn eta_bound(sw: &StratumWeights, q: &Quiver) -> Rational {
    let parts = sw.hn_type.parts();
    let mut eta = BigInt::zero();
    for s in 0..parts.len() {
        for t in s + 1..parts.len() {
            let ef = euler_form_unchecked(q, parts[s].entries(), parts[t].entries());
            eta += (&sw.k[t] - &sw.k[s]) * big(ef);
        }
    }
    to_rat(&eta)
}

/// Weights of an arbitrary tensor word. `h` is the character of `O(H)`;
/// `a` is used for universal atoms when the expression carries none.
pub fn weights_expression(
    sw: &StratumWeights,
    f: &BundleExpression,
    h: &[Rational],
    a: Option<&Linearisation>,
) -> Result<WeightMultiset> {
    let resolved = f.resolve(h);
    let a = f.linearisation().or(a);
    let mut out = WeightMultiset::single(Rational::zero());
    let duals = resolved.universal.iter().filter(|(_, dual)| *dual).count();
    let balanced = 2 * duals == resolved.universal.len();
    let zero = Linearisation::from_raw(vec![0; h.len()]);
    let a = match a {
        Some(a) => a,
        // with as many duals as non-duals the linearisation offsets cancel
        None if balanced => &zero,
        None => {
            return Err(Error::Precondition(format!(
                "{f} involves universal bundles but no linearisation was given"
            )))
        }
    };
    for &(i, dual) in &resolved.universal {
        let w = weights_universal(sw, i, a);
        out = out.tensor(&if dual { w.negated() } else { w });
    }
    if let Some(e) = resolved.character {
        out = out.shifted(&weight_linearised(sw, &e));
    }
    Ok(out)
}

/// One nontrivial stratum of a [`TelemanReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TelemanRow {
    pub hn_type: HnType,
    pub max_weight: Rational,
    pub eta: Rational,
    pub satisfied: bool,
    /// `η − max_weight`; positive exactly when satisfied.
    pub margin: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TelemanReport {
    pub bundle: String,
    pub rows: Vec<TelemanRow>,
}

impl TelemanReport {
    /// The inequality holds on every nontrivial stratum, so `H^{≥1}` vanishes.
    pub fn satisfied(&self) -> bool {
        self.rows.iter().all(|r| r.satisfied)
    }
}

/// Precomputed strata for a fixed `(Q, d, θ)`.
#[derive(Clone, Debug)]
pub struct TelemanContext {
    quiver: Quiver,
    d: DimensionVector,
    theta: StabilityParameter,
    index: i64,
    /// `θcan / r`, the character of `O(H)`.
    h: Vec<Rational>,
    strata: Vec<(StratumWeights, Rational)>,
}

impl TelemanContext {
    pub fn new(q: &Quiver, d: &DimensionVector, theta: &StabilityParameter) -> Result<Self> {
        check_assumptions(q, d, theta)?.require()?;
        let index = fano_index(q, d)?;
        let theta_can = canonical_stability(q, d)?;
        let h = theta_can
            .entries()
            .iter()
            .map(|&x| Rational::new(big(x), big(index)))
            .collect();
        let mut ctx = HnContext::new(q);
        let mut strata = Vec::new();
        for t in ctx.hn_types(d, theta)? {
            if t.is_trivial() {
                continue;
            }
            let sw = stratum_weights(&t, theta)?;
            let eta = eta_bound(&sw, q);
            strata.push((sw, eta));
        }
        Ok(TelemanContext {
            quiver: q.clone(),
            d: d.clone(),
            theta: theta.clone(),
            index,
            h,
            strata,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dimension_vector(&self) -> &DimensionVector {
        &self.d
    }

    pub fn theta(&self) -> &StabilityParameter {
        &self.theta
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn h_character(&self) -> &[Rational] {
        &self.h
    }

    /// Weight data and `η` of each nontrivial stratum, in HN-type order.
    pub fn strata(&self) -> &[(StratumWeights, Rational)] {
        &self.strata
    }

    pub fn report(&self, f: &BundleExpression, a: Option<&Linearisation>) -> Result<TelemanReport> {
        let rows = self
            .strata
            .iter()
            .map(|(sw, eta)| {
                let w = weights_expression(sw, f, &self.h, a)?;
                let max_weight = w.max().cloned().unwrap_or_else(Rational::zero);
                let margin = eta - &max_weight;
                Ok(TelemanRow {
                    hn_type: sw.hn_type.clone(),
                    satisfied: margin.is_positive(),
                    max_weight,
                    eta: eta.clone(),
                    margin,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TelemanReport { bundle: f.to_string(), rows })
    }

    /// The columns of the weight table: hom-weight support (union over
    /// `i, j`), universal-weight support (union over `i`), the weight of
    /// `O(H)`, and `η`.
    pub fn table(&self, a: &Linearisation) -> Vec<TableRow> {
        let n = self.quiver.vertex_count();
        self.strata
            .iter()
            .map(|(sw, eta)| {
                let mut hom = WeightMultiset::default();
                let mut uni = WeightMultiset::default();
                for i in 0..n {
                    uni = uni.union(&weights_universal(sw, i, a));
                    for j in 0..n {
                        hom = hom.union(&weights_hom(sw, i, j));
                    }
                }
                TableRow {
                    hn_type: sw.hn_type.clone(),
                    c: sw.c.clone(),
                    hom_weights: hom,
                    universal_weights: uni,
                    h_weight: weight_linearised(sw, &self.h),
                    eta: eta.clone(),
                }
            })
            .collect()
    }

    /// For each nontrivial type, the largest integer `t` with
    /// `k₁ − k_ℓ + (t/r)·θcan·Σ k_s dˢ < η`, and the minimum over types.
    /// Only meaningful for `θ = θcan`.
    pub fn t_star(&self) -> Result<TStar> {
        let theta_can = canonical_stability(&self.quiver, &self.d)?;
        if theta_can != self.theta {
            return Err(Error::Precondition("t* is defined for the canonical stability parameter".into()));
        }
        let r = big(self.index);
        let mut per_type = Vec::new();
        for (sw, eta) in &self.strata {
            let spread = to_rat(&(&sw.k[0] - sw.k.last().unwrap()));
            let pairing: BigInt = sw
                .weighted_sum()
                .iter()
                .zip(theta_can.entries())
                .map(|(s, &t)| s * t)
                .sum();
            let step = Rational::new(pairing, r.clone());
            if !step.is_positive() {
                return Err(Error::Degenerate(format!(
                    "θcan·Σ k d is not positive on {}",
                    sw.hn_type
                )));
            }
            // largest integer t with spread + t·step < eta
            let bound = (eta - spread) / step;
            let t = bound.ceil().to_integer() - BigInt::one();
            let t = i64::try_from(t).map_err(|_| Error::Degenerate("t* out of range".into()))?;
            per_type.push((sw.hn_type.clone(), t));
        }
        let min = per_type.iter().map(|(_, t)| *t).min().unwrap_or(i64::MAX);
        Ok(TStar { per_type, min })
    }

    /// Whether `min t* = r − 1`.
    pub fn theorem_d_criterion(&self) -> Result<bool> {
        Ok(self.t_star()?.min == self.index - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub hn_type: HnType,
    pub c: BigInt,
    pub hom_weights: WeightMultiset,
    pub universal_weights: WeightMultiset,
    pub h_weight: Rational,
    pub eta: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TStar {
    pub per_type: Vec<(HnType, i64)>,
    pub min: i64,
}

/// [`TelemanContext::report`] as a free function.
pub fn teleman_report(
    q: &Quiver,
    d: &DimensionVector,
    theta: &StabilityParameter,
    f: &BundleExpression,
) -> Result<TelemanReport> {
    TelemanContext::new(q, d, theta)?.report(f, None)
}

/// `t*` at the canonical stability parameter.
pub fn t_star(q: &Quiver, d: &DimensionVector) -> Result<TStar> {
    TelemanContext::new(q, d, &canonical_stability(q, d)?)?.t_star()
}

pub fn theorem_d_criterion(q: &Quiver, d: &DimensionVector) -> Result<bool> {
    TelemanContext::new(q, d, &canonical_stability(q, d)?)?.theorem_d_criterion()
}
