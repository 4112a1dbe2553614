//! Poincaré polynomials of quiver moduli via the Harder–Narasimhan recursion
//! on motivic counts, and the derived Hochschild and Picard numbers.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{
    check_assumptions, euler_form_unchecked, moduli_dimension, slope, subdimension_vectors,
    DimensionVector, Quiver, Rational, StabilityParameter,
};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly(Vec<Rational>);

impl Poly {
    fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    fn monomial(deg: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    fn scale(&self, c: &Rational) -> Self {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    fn monic(&self) -> Self {
        self.scale(&self.lead().recip())
    }

    fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly(Vec::new()), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        let inv = d.lead().recip();
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        (Poly::new(q), Poly::new(r))
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let zero = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + o.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|x| -x).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// Reduced quotient `num / den` with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    fn new(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFn::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let c = den.lead().recip();
        RatFn { num: num.scale(&c), den: den.scale(&c) }
    }

    fn zero() -> Self {
        RatFn { num: Poly(Vec::new()), den: Poly::constant(Rational::one()) }
    }

    /// `q^s` for any integer `s`.
    fn q_power(s: i64) -> Self {
        let one = Rational::one();
        if s >= 0 {
            RatFn { num: Poly::monomial(s as usize, one.clone()), den: Poly::constant(one) }
        } else {
            RatFn { num: Poly::constant(one.clone()), den: Poly::monomial((-s) as usize, one) }
        }
    }

    fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::constant(Rational::one()) }
    }

    fn inverse(&self) -> Self {
        RatFn::new(self.den.clone(), self.num.clone())
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::new(&self.num + &o.num, self.den.clone());
        }
        RatFn::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, o: &RatFn) -> RatFn {
        let neg = RatFn { num: -&o.num, den: o.den.clone() };
        self + &neg
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, o: &RatFn) -> RatFn {
        RatFn::new(&self.num * &o.num, &self.den * &o.den)
    }
}

/// Coefficients `b_0, …, b_D` with `b_k = h^{k,k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PoincarePolynomial {
    coefficients: Vec<u64>,
}

impl PoincarePolynomial {
    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Sum of the coefficients, the dimension of `HH₀`.
    pub fn total(&self) -> u64 {
        self.coefficients.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.coefficients.iter().eq(self.coefficients.iter().rev())
    }
}

/// Memoized semistable counts `a_e` for a fixed `(Q, θ)`.
struct Counter<'q> {
    quiver: &'q Quiver,
    theta: &'q StabilityParameter,
    semistable: HashMap<Vec<i64>, RatFn>,
    /// Sums over slope-decreasing compositions of `f` with all slopes below a bound.
    tails: HashMap<(Vec<i64>, Rational), RatFn>,
}

impl<'q> Counter<'q> {
    /// Count of the whole stack of representations of dimension `e`:
    /// `q^{−⟨e,e⟩} / ∏_i ∏_{k=1}^{e_i} (1 − q^{−k})`.
    fn stack(&self, e: &[i64]) -> RatFn {
        let mut out = RatFn::q_power(-euler_form_unchecked(self.quiver, e, e));
        for &ei in e {
            for k in 1..=ei {
                // 1 − q^{−k} = (q^k − 1) / q^k
                let mut c = vec![Rational::zero(); k as usize + 1];
                c[0] = -Rational::one();
                c[k as usize] = Rational::one();
                let factor = &RatFn::from_poly(Poly::new(c)) * &RatFn::q_power(-k);
                out = &out * &factor.inverse();
            }
        }
        out
    }

    fn semistable(&mut self, e: &[i64]) -> RatFn {
        if let Some(a) = self.semistable.get(e) {
            return a.clone();
        }
        let mut a = self.stack(e);
        for first in subdimension_vectors(e) {
            if first.iter().all(|&x| x == 0) || first.as_slice() == e {
                continue;
            }
            let rest: Vec<i64> = e.iter().zip(&first).map(|(x, y)| x - y).collect();
            let term = self.term(&first, &rest);
            a = &a - &term;
        }
        self.semistable.insert(e.to_vec(), a.clone());
        a
    }

    /// `a_{first} · q^{−⟨rest, first⟩} · tail(rest, μ(first))`, where `first`
    /// is the subrepresentation of largest slope.
    fn term(&mut self, first: &[i64], rest: &[i64]) -> RatFn {
        let mu = slope(self.theta, first).expect("nonzero");
        let tail = self.tail(rest, &mu);
        if tail.num.is_zero() {
            return tail;
        }
        let a = self.semistable(first);
        let twist = RatFn::q_power(-euler_form_unchecked(self.quiver, rest, first));
        &(&a * &twist) * &tail
    }

    fn tail(&mut self, f: &[i64], bound: &Rational) -> RatFn {
        if f.iter().all(|&x| x == 0) {
            return RatFn::from_poly(Poly::constant(Rational::one()));
        }
        let key = (f.to_vec(), bound.clone());
        if let Some(t) = self.tails.get(&key) {
            return t.clone();
        }
        let mut out = RatFn::zero();
        for first in subdimension_vectors(f) {
            if first.iter().all(|&x| x == 0) {
                continue;
            }
            if slope(self.theta, &first).expect("nonzero") >= *bound {
                continue;
            }
            let rest: Vec<i64> = f.iter().zip(&first).map(|(x, y)| x - y).collect();
            let term = self.term(&first, &rest);
            out = &out + &term;
        }
        self.tails.insert(key, out.clone());
        out
    }
}

/// Diagonal Hodge numbers of the moduli space.
pub fn poincare_polynomial(
    q: &Quiver,
    d: &DimensionVector,
    theta: &StabilityParameter,
) -> Result<PoincarePolynomial> {
    check_assumptions(q, d, theta)?.require()?;
    let dim = moduli_dimension(q, d)?;
    let mut counter =
        Counter { quiver: q, theta, semistable: HashMap::new(), tails: HashMap::new() };
    let a = counter.semistable(d.entries());
    // the stable locus is a principal PGL-bundle over the moduli space: multiply by (q − 1)
    let q_minus_one = Poly::new(vec![-Rational::one(), Rational::one()]);
    let cleared = &a * &RatFn::from_poly(q_minus_one);
    let den_degree = cleared.den.degree().unwrap_or(0);
    let monomial_den = cleared.den.0[..den_degree].iter().all(Zero::is_zero);
    if !monomial_den {
        return Err(Error::Presentation(format!(
            "count of {d} does not clear to a polynomial"
        )));
    }
    let shift = cleared.num.0.iter().take_while(|c| c.is_zero()).count();
    let coeffs = &cleared.num.0[shift..];
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if !c.is_integer() || c.is_negative() {
            return Err(Error::Presentation(format!("non-integral Betti number {c} for {d}")));
        }
        out.push(c.to_integer().to_u64().ok_or_else(|| Error::Presentation("Betti number overflow".into()))?);
    }
    let p = PoincarePolynomial { coefficients: out };
    if p.degree() != dim || p.coefficients[0] != 1 {
        return Err(Error::Presentation(format!(
            "Poincaré polynomial of {d} has degree {} and constant term {}, expected degree {dim} and 1",
            p.degree(),
            p.coefficients[0]
        )));
    }
    Ok(p)
}

/// `dim HH₀`, the sum of the Betti numbers.
pub fn hochschild_zero(q: &Quiver, d: &DimensionVector, theta: &StabilityParameter) -> Result<u64> {
    Ok(poincare_polynomial(q, d, theta)?.total())
}

/// `h^{1,1}`.
pub fn picard_rank(q: &Quiver, d: &DimensionVector, theta: &StabilityParameter) -> Result<u64> {
    let p = poincare_polynomial(q, d, theta)?;
    Ok(p.coefficients.get(1).copied().unwrap_or(0))
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
    fn polynomial_gcd() {
        let r = |x: i64| Rational::from_integer(x.into());
        // (q − 1)(q + 2) and (q − 1)(q − 3)
        let a = Poly::new(vec![r(-2), r(1), r(1)]);
        let b = Poly::new(vec![r(3), r(-4), r(1)]);
        assert_eq!(a.gcd(&b), Poly::new(vec![r(-1), r(1)]));
        let f = RatFn::new(a, b);
        assert_eq!(f.den, Poly::new(vec![r(-3), r(1)]));
    }

    #[test]
    fn projective_line_and_plane() {
        let p = poincare_polynomial(&Quiver::kronecker(2), &dv(&[1, 1]), &th(&[1, -1])).unwrap();
        assert_eq!(p.coefficients(), &[1, 1]);
        let p = poincare_polynomial(&Quiver::kronecker(3), &dv(&[1, 1]), &th(&[1, -1])).unwrap();
        assert_eq!(p.coefficients(), &[1, 1, 1]);
    }

    #[test]
    fn recurring_example_hodge_column() {
        let p = poincare_polynomial(&Quiver::kronecker(3), &dv(&[3, 4]), &th(&[12, -9])).unwrap();
        assert_eq!(p.coefficients(), &[1, 1, 3, 5, 8, 10, 12, 10, 8, 5, 3, 1, 1]);
        assert_eq!(p.total(), 68);
        assert!(p.is_palindromic());
    }

    #[test]
    fn rescaled_theta_gives_same_polynomial() {
        let q = Quiver::kronecker(3);
        let a = poincare_polynomial(&q, &dv(&[2, 3]), &th(&[3, -2])).unwrap();
        let b = poincare_polynomial(&q, &dv(&[2, 3]), &th(&[9, -6])).unwrap();
        assert_eq!(a, b);
        assert_eq!(picard_rank(&q, &dv(&[2, 3]), &th(&[3, -2])).unwrap(), 1);
    }
}
