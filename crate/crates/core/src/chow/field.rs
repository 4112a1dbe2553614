//! Coefficient fields for the Chow engine: exact rationals and prime fields.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::quiver::Rational;

pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
    /// `None` when the denominator is not invertible.
    fn from_rational(r: &Rational) -> Option<Self>;

    fn from_int(n: &BigInt) -> Self {
        Self::from_rational(&Rational::from_integer(n.clone())).expect("integers embed in every field")
    }

    fn from_i64(n: i64) -> Self {
        Self::from_int(&BigInt::from(n))
    }

    fn add_assign(&mut self, o: &Self) {
        *self = self.add(o);
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
}

/// Integers modulo the prime `P < 2⁶³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let (mut base, mut acc) = (self, Fp(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    fn reduce_big(n: &BigInt) -> u64 {
        let m = n.mod_floor(&BigInt::from(P));
        m.to_u64().expect("residue fits")
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        let den = Self::reduce_big(r.denom());
        if den == 0 {
            return None;
        }
        Some(Fp(Self::reduce_big(r.numer())).mul(&Fp(den).inv()))
    }
    fn from_int(n: &BigInt) -> Self {
        Fp(Self::reduce_big(n))
    }
}

/// Primes just below 2⁶² used by the multi-modular path.
pub const PRIMES: [u64; 4] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
];

#[cfg(test)]
mod tests {
    use super::*;

    type F = Fp<{ PRIMES[0] }>;

    #[test]
    fn primes_are_prime() {
        // Fermat test with several bases is enough to catch a typo.
        fn check<const P: u64>() {
            for b in [2u64, 3, 5, 7, 11, 13] {
                assert_eq!(Fp::<P>(b).pow(P - 1), Fp(1), "{P}");
            }
        }
        check::<{ PRIMES[0] }>();
        check::<{ PRIMES[1] }>();
        check::<{ PRIMES[2] }>();
        check::<{ PRIMES[3] }>();
    }

    #[test]
    fn modular_arithmetic() {
        let half = F::from_rational(&Rational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half.add(&half), F::one());
        assert_eq!(F::from_i64(-3).add(&F::from_i64(3)), F::zero());
        assert_eq!(F::from_i64(7).mul(&F::from_i64(7).inv()), F::one());
        let p = Rational::from_integer(BigInt::from(PRIMES[0]));
        assert!(F::from_rational(&Rational::new(1.into(), 1.into()).mul(&p.recip())).is_none());
    }
}
