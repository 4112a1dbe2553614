//! Euler characteristics through prime fields. Each prime's presentation is
//! accepted only if its graded dimensions equal the Hodge column from the
//! point count; integers are rebuilt by Chinese remaindering until the
//! symmetric residue stops changing.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::engine::Engine;
use super::field::{Fp, PRIMES};
use super::poly::Mono;
use crate::bundle::BundleExpression;
use crate::error::{Error, Result};
use crate::quiver::{DimensionVector, Linearisation, Quiver, StabilityParameter};

trait Residues: Send + Sync {
    fn dims(&self) -> Vec<usize>;
    fn chi(&self, f: &BundleExpression) -> Result<u64>;
}

impl<const P: u64> Residues for Engine<Fp<P>> {
    fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    fn chi(&self, f: &BundleExpression) -> Result<u64> {
        Ok(self.euler_characteristic(f)?.value())
    }
}

pub(crate) struct Problem {
    pub quiver: Quiver,
    pub d: DimensionVector,
    pub theta: StabilityParameter,
    pub a: Linearisation,
    pub relations: Vec<(usize, HashMap<Mono, BigInt>)>,
    pub expected: Vec<usize>,
}

type Slot = OnceLock<Option<Box<dyn Residues>>>;

pub(crate) struct MultiModular {
    problem: Problem,
    slots: [Slot; 4],
}

fn build<const P: u64>(p: &Problem) -> Result<Option<Box<dyn Residues>>> {
    match Engine::<Fp<P>>::from_relations(&p.quiver, &p.d, &p.theta, &p.a, &p.relations) {
        Ok(e) if e.basis.iter().map(Vec::len).collect::<Vec<_>>() == p.expected => Ok(Some(Box::new(e))),
        // a prime dividing a leading coefficient enlarges the quotient
        Ok(_) => Ok(None),
        Err(Error::Presentation(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

impl MultiModular {
    pub fn new(problem: Problem) -> Self {
        MultiModular { problem, slots: Default::default() }
    }

    fn engine(&self, k: usize) -> Result<Option<&dyn Residues>> {
        if let Some(slot) = self.slots[k].get() {
            return Ok(slot.as_deref());
        }
        let built = match k {
            0 => build::<{ PRIMES[0] }>(&self.problem)?,
            1 => build::<{ PRIMES[1] }>(&self.problem)?,
            2 => build::<{ PRIMES[2] }>(&self.problem)?,
            _ => build::<{ PRIMES[3] }>(&self.problem)?,
        };
        let _ = self.slots[k].set(built);
        Ok(self.slots[k].get().and_then(|s| s.as_deref()))
    }

    /// Graded dimensions, certified against the expected Hodge column.
    pub fn graded_dimensions(&self) -> Result<Vec<usize>> {
        for k in 0..PRIMES.len() {
            if let Some(e) = self.engine(k)? {
                return Ok(e.dims());
            }
        }
        Err(Error::Presentation(format!(
            "no prime reproduces the expected graded dimensions {:?}",
            self.problem.expected
        )))
    }

    pub fn euler_characteristic(&self, f: &BundleExpression) -> Result<BigInt> {
        let mut modulus = BigInt::one();
        let mut value = BigInt::zero();
        let mut previous: Option<BigInt> = None;
        for (k, &p) in PRIMES.iter().enumerate() {
            let Some(engine) = self.engine(k)? else { continue };
            let r = BigInt::from(engine.chi(f)?);
            let p = BigInt::from(p);
            // value ≡ old mod modulus, value ≡ r mod p
            let inv = mod_inverse(&modulus, &p);
            let t = ((&r - &value) * inv).mod_floor(&p);
            value += &modulus * t;
            modulus *= &p;
            let symmetric = if &value * 2 > modulus { &value - &modulus } else { value.clone() };
            if previous.as_ref() == Some(&symmetric) {
                return Ok(symmetric);
            }
            previous = Some(symmetric);
        }
        Err(Error::Presentation("the multi-modular Euler characteristic did not stabilise".into()))
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    e.x.mod_floor(p)
}
