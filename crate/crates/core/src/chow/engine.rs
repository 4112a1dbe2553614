//! The presentation over an arbitrary coefficient field: reduced generators,
//! Gröbner basis, graded monomial basis, the top-degree functional and the
//! characteristic classes used by Hirzebruch–Riemann–Roch.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

use super::field::Field;
use super::groebner::{groebner, normalise, GroebnerBasis, HPoly};
use super::poly::{mono_mul, Graded, Mono, Ring, ONE};
use super::relations::{tautological_relations, Layout};
use crate::bundle::BundleExpression;
use crate::error::{Error, Result};
use crate::quiver::{
    fano_index, moduli_dimension, DimensionVector, Linearisation, Quiver, Rational, StabilityParameter,
};

pub(crate) struct Engine<F> {
    pub ring: Ring,
    pub layout: Layout,
    /// Full generator index → reduced variable, `None` for the eliminated one.
    reduced: Vec<Option<usize>>,
    /// The eliminated generator `ξ_{i₀,1}` as a linear form in reduced variables.
    substitute: (usize, HashMap<Mono, F>),
    pub gb: GroebnerBasis<F>,
    pub basis: Vec<Vec<Mono>>,
    top_values: HashMap<Mono, F>,
    tables: Vec<OnceLock<HashMap<Mono, Vec<F>>>>,
    pub relation_count: usize,
    pub index: i64,
    pub h: Vec<Rational>,
    arrows: Vec<((usize, usize), usize)>,
    pub todd: Graded<F>,
    pub scalar: F,
}

fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Coefficients of `log(x / (1 − e^{−x}))` up to degree `top`.
pub(crate) fn log_todd_series(top: usize) -> Vec<Rational> {
    // g = x/(1−e^{−x}) = Σ g_n x^n, from (1−e^{−x})/x · g = 1.
    let mut fact = vec![<Rational as One>::one(); top + 2];
    for n in 1..top + 2 {
        fact[n] = &fact[n - 1] * rational(n as i64);
    }
    // (1−e^{−x})/x = Σ (−1)^n x^n/(n+1)!
    let u: Vec<Rational> =
        (0..=top).map(|n| if n % 2 == 0 { fact[n + 1].recip() } else { -fact[n + 1].recip() }).collect();
    let mut g = vec![<Rational as One>::one(); top + 1];
    for n in 1..=top {
        let s: Rational = (1..=n).map(|k| &u[k] * &g[n - k]).sum();
        g[n] = -s;
    }
    // n f_n = n g_n − Σ_{k=1}^{n−1} k f_k g_{n−k}
    let mut f = vec![Rational::from_integer(0.into()); top + 1];
    for n in 1..=top {
        let s: Rational = (1..n).map(|k| rational(k as i64) * &f[k] * &g[n - k]).sum();
        f[n] = (rational(n as i64) * &g[n] - s) / rational(n as i64);
    }
    f
}

fn lift<F: Field>(r: &Rational) -> Result<F> {
    F::from_rational(r).ok_or_else(|| Error::Presentation(format!("{r} is not invertible in the field")))
}

impl<F: Field> Engine<F> {
    pub fn build(q: &Quiver, d: &DimensionVector, theta: &StabilityParameter, a: &Linearisation) -> Result<Self> {
        let top = moduli_dimension(q, d)?;
        let relations = tautological_relations(q, d, theta, top)?;
        Self::from_relations(q, d, theta, a, &relations)
    }

    /// Builds the presentation from precomputed integral relations.
    pub fn from_relations(
        q: &Quiver,
        d: &DimensionVector,
        theta: &StabilityParameter,
        a: &Linearisation,
        relations: &[(usize, HashMap<Mono, BigInt>)],
    ) -> Result<Self> {
        let top = moduli_dimension(q, d)?;
        let index = fano_index(q, d)?;
        let layout = Layout::new(d.entries())?;
        let n = d.len();
        if a.entries().len() != n {
            return Err(Error::Length { expected: n, got: a.entries().len() });
        }
        let pivot = (0..n)
            .filter(|&i| a.entries()[i] != 0 && layout.dims[i] > 0)
            .min_by_key(|&i| (a.entries()[i].abs(), i))
            .ok_or_else(|| Error::Presentation("the linearisation is zero".into()))?;

        let mut weights = Vec::new();
        let mut names = Vec::new();
        let mut reduced = Vec::new();
        for i in 0..n {
            for k in 1..=layout.dims[i] {
                if i == pivot && k == 1 {
                    reduced.push(None);
                } else {
                    reduced.push(Some(weights.len()));
                    weights.push(k);
                    names.push(format!("c{k}(U{})", i + 1));
                }
            }
        }
        let ring = Ring { weights, names, top };
        let mut linear: HashMap<Mono, F> = HashMap::new();
        let ap = rational(a.entries()[pivot]);
        for i in (0..n).filter(|&i| i != pivot && layout.dims[i] > 0) {
            let c = -rational(a.entries()[i]) / &ap;
            let v = reduced[layout.offset[i]].expect("kept generator");
            linear.insert(ring.var(v), lift(&c)?);
        }
        linear.retain(|_, c| !c.is_zero());

        let mut engine = Engine {
            ring,
            layout,
            reduced,
            substitute: (pivot, linear),
            gb: GroebnerBasis { polys: Vec::new() },
            basis: Vec::new(),
            top_values: HashMap::new(),
            tables: Vec::new(),
            relation_count: 0,
            index,
            h: theta.entries().iter().map(|&t| Rational::new(t.into(), index.into())).collect(),
            arrows: q.arrow_multiplicities(),
            todd: Graded { parts: Vec::new() },
            scalar: F::one(),
        };

        engine.relation_count = relations.len() + 1;
        let mut powers: Vec<HashMap<Mono, F>> = vec![HashMap::from([(ONE, F::one())])];
        let mut gens: Vec<HPoly<F>> = Vec::new();
        for (_, rel) in relations {
            let mut acc: HashMap<Mono, F> = HashMap::new();
            for (m, c) in rel {
                let (rest, e) = engine.split_full(m);
                while powers.len() <= e {
                    let next = mul_maps(powers.last().expect("nonempty"), &engine.substitute.1);
                    powers.push(next);
                }
                let cf = F::from_int(c);
                for (pm, pc) in &powers[e] {
                    acc.entry(mono_mul(&rest, pm)).or_insert_with(F::zero).add_assign(&cf.mul(pc));
                }
            }
            let p = normalise(&engine.ring, acc);
            if !p.is_empty() {
                gens.push(p);
            }
        }
        engine.gb = groebner(&engine.ring, gens);
        engine.basis = (0..=top)
            .map(|k| engine.ring.monomials(k).into_iter().filter(|m| engine.gb.is_standard(m)).collect())
            .collect();
        if engine.basis[top].len() != 1 || engine.basis[0].len() != 1 {
            return Err(Error::Presentation(format!(
                "graded basis has {} elements in degree 0 and {} in the top degree {top}",
                engine.basis[0].len(),
                engine.basis[top].len()
            )));
        }
        engine.tables = (0..=top).map(|_| OnceLock::new()).collect();
        engine.top_values = engine.reduce_degree(top).into_iter().map(|(m, v)| (m, v[0].clone())).collect();

        engine.todd = engine.todd_polynomial()?;
        let raw = engine.integrate_raw(&engine.todd.parts[top]);
        if raw.is_zero() {
            return Err(Error::Presentation("the Todd class integrates to zero".into()));
        }
        engine.scalar = raw.inv();
        Ok(engine)
    }

    /// Splits a monomial in the full generators into its reduced part and
    /// the exponent of the eliminated generator.
    fn split_full(&self, m: &Mono) -> (Mono, usize) {
        let mut rest = ONE;
        let mut e = 0;
        for (full, slot) in self.reduced.iter().enumerate() {
            match slot {
                Some(v) => rest[*v] = m[full],
                None => e = m[full] as usize,
            }
        }
        (rest, e)
    }

    /// `ξ_{i,k}` as a polynomial in the reduced variables; zero for `k > d_i`.
    pub fn xi(&self, i: usize, k: usize) -> Graded<F> {
        let mut g = Graded::zero(&self.ring);
        if k == 0 {
            g.add_term(&self.ring, ONE, F::one());
        } else if k <= self.layout.dims[i] {
            match self.reduced[self.layout.offset[i] + k - 1] {
                Some(v) => g.add_term(&self.ring, self.ring.var(v), F::one()),
                None => {
                    for (m, c) in &self.substitute.1 {
                        g.add_term(&self.ring, *m, c.clone());
                    }
                }
            }
        }
        g
    }

    /// Normal forms of every monomial of degree `k` as coordinates in `basis[k]`.
    fn reduce_degree(&self, k: usize) -> HashMap<Mono, Vec<F>> {
        let mut monos = self.ring.monomials(k);
        monos.reverse();
        let dim = self.basis[k].len();
        let position: HashMap<Mono, usize> = self.basis[k].iter().enumerate().map(|(j, m)| (*m, j)).collect();
        let mut table: HashMap<Mono, Vec<F>> = HashMap::with_capacity(monos.len());
        for m in monos {
            let v = match self.gb.reducer(&m) {
                None => {
                    let mut v = vec![F::zero(); dim];
                    v[position[&m]] = F::one();
                    v
                }
                Some(g) => {
                    let poly = &self.gb.polys[g];
                    let q = super::poly::mono_div(&m, &poly[0].0);
                    let mut v = vec![F::zero(); dim];
                    for (t, c) in &poly[1..] {
                        let w = &table[&mono_mul(&q, t)];
                        for (x, y) in v.iter_mut().zip(w) {
                            if !y.is_zero() {
                                *x = x.sub(&c.mul(y));
                            }
                        }
                    }
                    v
                }
            };
            table.insert(m, v);
        }
        table
    }

    pub fn table(&self, k: usize) -> &HashMap<Mono, Vec<F>> {
        self.tables[k].get_or_init(|| self.reduce_degree(k))
    }

    /// Coordinates of a homogeneous part in the graded basis.
    pub fn reduce_part(&self, k: usize, part: &HashMap<Mono, F>) -> Vec<F> {
        let mut v = vec![F::zero(); self.basis[k].len()];
        if part.is_empty() {
            return v;
        }
        let table = self.table(k);
        for (m, c) in part {
            for (x, y) in v.iter_mut().zip(&table[m]) {
                *x = x.add(&c.mul(y));
            }
        }
        v
    }

    fn integrate_raw(&self, top_part: &HashMap<Mono, F>) -> F {
        let mut acc = F::zero();
        for (m, c) in top_part {
            acc.add_assign(&c.mul(&self.top_values[m]));
        }
        acc
    }

    /// `∫` of the top-degree part, normalised so that `χ(O) = 1`.
    pub fn integrate(&self, top_part: &HashMap<Mono, F>) -> F {
        self.integrate_raw(top_part).mul(&self.scalar)
    }

    /// Power sums `p_k` of the Chern roots of `U_i`, `k = 0..=top`.
    fn power_sums(&self, i: usize) -> Vec<Graded<F>> {
        let top = self.ring.top;
        let e: Vec<Graded<F>> = (0..=top).map(|k| self.xi(i, k)).collect();
        let mut p: Vec<Graded<F>> = vec![Graded::constant(&self.ring, F::from_i64(self.layout.dims[i] as i64))];
        for k in 1..=top {
            let mut acc = e[k].scale(&F::from_i64(if k % 2 == 1 { k as i64 } else { -(k as i64) }));
            for j in 1..k.min(self.layout.dims[i] + 1) {
                let term = e[j].mul(&p[k - j]);
                acc = acc.add(&if j % 2 == 1 { term } else { term.scale(&F::from_i64(-1)) });
            }
            p.push(acc);
        }
        p
    }

    /// `Σ_k p_k / k!` with the roots negated when `dual`.
    fn ch_from_power_sums(&self, p: &[Graded<F>], dual: bool) -> Graded<F> {
        let mut out = Graded::zero(&self.ring);
        let mut fact = <Rational as One>::one();
        for (k, pk) in p.iter().enumerate() {
            if k > 0 {
                fact *= rational(k as i64);
            }
            let mut s = fact.recip();
            if dual && k % 2 == 1 {
                s = -s;
            }
            out = out.add(&pk.scale(&F::from_rational(&s).expect("factorials are invertible")));
        }
        out
    }

    /// `c₁(L(e)) = −Σ_i e_i ξ_{i,1}`.
    pub fn first_chern_of_character(&self, e: &[Rational]) -> Result<Graded<F>> {
        let mut out = Graded::zero(&self.ring);
        for (i, ei) in e.iter().enumerate() {
            out = out.add(&self.xi(i, 1).scale(&lift::<F>(&-ei)?));
        }
        Ok(out)
    }

    pub fn chern_character(&self, f: &BundleExpression) -> Result<Graded<F>> {
        let n = self.layout.dims.len();
        if let Some(v) = f.max_vertex() {
            if v >= n {
                return Err(Error::Expression(format!("vertex {} out of range", v + 1)));
            }
        }
        let resolved = f.resolve(&self.h);
        let mut out = Graded::constant(&self.ring, F::one());
        let mut sums: HashMap<usize, Vec<Graded<F>>> = HashMap::new();
        for (i, dual) in resolved.universal {
            let p = sums.entry(i).or_insert_with(|| self.power_sums(i));
            let ch = self.ch_from_power_sums(p, dual);
            out = out.mul(&ch);
        }
        if let Some(e) = resolved.character {
            if e.len() != n {
                return Err(Error::Length { expected: n, got: e.len() });
            }
            out = out.mul(&self.first_chern_of_character(&e)?.exp());
        }
        Ok(out)
    }

    /// `td(T)` with `ch(T) = 1 − Σ_i ch(U_i^∨ ⊗ U_i) + Σ_a ch(U_{s(a)}^∨ ⊗ U_{t(a)})`.
    fn todd_polynomial(&self) -> Result<Graded<F>> {
        let top = self.ring.top;
        let n = self.layout.dims.len();
        let p: Vec<Vec<Graded<F>>> = (0..n).map(|i| self.power_sums(i)).collect();
        let binom = |k: usize, a: usize| -> F {
            let mut c = BigInt::one();
            for j in 0..a {
                c = c * BigInt::from(k - j) / BigInt::from(j + 1);
            }
            F::from_int(&c)
        };
        // p_k(A^∨ ⊗ B) = Σ_{a+b=k} C(k,a) (−1)^a p_a(A) p_b(B)
        let tensor_sum = |s: usize, t: usize, k: usize| -> Graded<F> {
            let mut acc = Graded::zero(&self.ring);
            for a in 0..=k {
                let mut c = binom(k, a);
                if a % 2 == 1 {
                    c = c.neg();
                }
                acc = acc.add(&p[s][a].mul(&p[t][k - a]).scale(&c));
            }
            acc
        };
        let f = log_todd_series(top);
        let mut log_td = Graded::zero(&self.ring);
        for k in 1..=top {
            let mut pk = Graded::zero(&self.ring);
            for i in 0..n {
                pk = pk.add(&tensor_sum(i, i, k).scale(&F::from_i64(-1)));
            }
            for &((s, t), mult) in &self.arrows {
                pk = pk.add(&tensor_sum(s, t, k).scale(&F::from_i64(mult as i64)));
            }
            log_td = log_td.add(&pk.scale(&lift(&f[k])?));
        }
        Ok(log_td.exp())
    }

    /// `χ(F) = ∫ ch(F)·td(T)`.
    pub fn euler_characteristic(&self, f: &BundleExpression) -> Result<F> {
        let ch = self.chern_character(f)?;
        Ok(self.integrate(&ch.mul_top(&self.todd)))
    }
}

fn mul_maps<F: Field>(a: &HashMap<Mono, F>, b: &HashMap<Mono, F>) -> HashMap<Mono, F> {
    let mut out: HashMap<Mono, F> = HashMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            out.entry(mono_mul(ma, mb)).or_insert_with(F::zero).add_assign(&ca.mul(cb));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn engine(inst: &catalog::Instance) -> Engine<Rational> {
        Engine::build(&inst.quiver, &inst.d, &inst.theta, &inst.linearisation).unwrap()
    }

    fn sizes(e: &Engine<Rational>) -> Vec<usize> {
        e.basis.iter().map(Vec::len).collect()
    }

    #[test]
    fn log_todd_coefficients() {
        let f = log_todd_series(4);
        assert_eq!(f[1], Rational::new(1.into(), 2.into()));
        assert_eq!(f[2], Rational::new((-1).into(), 24.into()));
        assert_eq!(f[3], Rational::from_integer(0.into()));
        assert_eq!(f[4], Rational::new(1.into(), 2880.into()));
    }

    #[test]
    fn small_presentations() {
        assert_eq!(sizes(&engine(&catalog::projective_line())), vec![1, 1]);
        assert_eq!(sizes(&engine(&catalog::del_pezzos()[0])), vec![1, 1, 1]);
        assert_eq!(sizes(&engine(&catalog::m_kronecker(3))), vec![1, 1, 3, 3, 3, 1, 1]);
    }

    #[test]
    fn euler_characteristics_on_the_plane() {
        let e = engine(&catalog::del_pezzos()[0]);
        let chi = |s: i64| e.euler_characteristic(&BundleExpression::trivial().twist(s)).unwrap();
        assert_eq!(chi(0), rational(1));
        assert_eq!(chi(1), rational(3));
        assert_eq!(chi(2), rational(6));
        assert_eq!(chi(-3), rational(1));
        assert_eq!(chi(-1), rational(0));
    }
}
