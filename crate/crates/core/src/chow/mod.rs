//! Chow rings of quiver moduli from the tautological presentation.
//!
//! The generators are the Chern classes `ξ_{i,k} = c_k(U_i)`, printed as
//! `c{k}(U{i})`. One generator `c1(U_{i₀})` is eliminated through the linear
//! relation `Σ a_i ξ_{i,1} = 0`. Relations are reduced by a Gröbner basis for
//! the weighted degree reverse lexicographic order, truncated above the
//! dimension `D`, and the graded basis consists of the standard monomials.
//!
//! Sign convention: `c₁(L(e)) = −Σ_i e_i ξ_{i,1}`, so the canonical bundle is
//! `ω = L(−θcan)` with `c₁(ω) = Σ_i θcan_i ξ_{i,1}`, and `H = L(θcan/r)` has
//! class `−c₁(ω)/r`. The integration map is fixed by `χ(O) = 1`.

mod engine;
mod field;
mod groebner;
mod modular;
mod poly;
mod relations;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::betti::poincare_polynomial;
use crate::bundle::BundleExpression;
use crate::error::{Error, Result};
use crate::quiver::{check_assumptions, moduli_dimension, DimensionVector, Linearisation, Quiver, Rational, StabilityParameter};
use engine::Engine;
use modular::{MultiModular, Problem};
use poly::Graded;

/// Largest dimension for which [`HrrContext::new`] computes over ℚ.
pub const EXACT_DIMENSION_LIMIT: usize = 20;

/// The tautological presentation over ℚ.
#[derive(Clone)]
pub struct Presentation {
    engine: Arc<Engine<Rational>>,
}

/// An element of the Chow ring, as coordinates in the graded basis.
#[derive(Clone)]
pub struct ChowClass {
    engine: Arc<Engine<Rational>>,
    coordinates: Vec<Vec<Rational>>,
}

/// Builds the presentation over ℚ. The assumptions must hold.
pub fn build_presentation(
    q: &Quiver,
    d: &DimensionVector,
    theta: &StabilityParameter,
    a: &Linearisation,
) -> Result<Presentation> {
    check_assumptions(q, d, theta)?.require()?;
    Ok(Presentation { engine: Arc::new(Engine::build(q, d, theta, a)?) })
}

impl Presentation {
    /// The dimension `D` of the moduli space.
    pub fn dimension(&self) -> usize {
        self.engine.ring.top
    }

    /// The Fano index `r`.
    pub fn index(&self) -> i64 {
        self.engine.index
    }

    pub fn graded_dimensions(&self) -> Vec<usize> {
        self.engine.basis.iter().map(Vec::len).collect()
    }

    /// The standard monomials of degree `k`.
    pub fn basis(&self, k: usize) -> Vec<String> {
        self.engine.basis.get(k).map(|b| b.iter().map(|m| self.engine.ring.format(m)).collect()).unwrap_or_default()
    }

    /// The generators kept after eliminating one through the linear relation.
    pub fn generators(&self) -> Vec<String> {
        self.engine.ring.names.clone()
    }

    /// Number of relations, the linear one included.
    pub fn relation_count(&self) -> usize {
        self.engine.relation_count
    }

    /// `∫` of the top basis monomial.
    pub fn degree_scalar(&self) -> Rational {
        self.engine.scalar.clone()
    }

    fn class(&self, g: &Graded<Rational>) -> ChowClass {
        ChowClass::from_graded(&self.engine, g)
    }

    /// `ξ_{i,k} = c_k(U_i)` with a 0-based vertex; zero when `k > d_i`.
    pub fn xi(&self, i: usize, k: usize) -> Result<ChowClass> {
        if i >= self.engine.layout.dims.len() {
            return Err(Error::Input(format!("vertex {} out of range", i + 1)));
        }
        Ok(self.class(&self.engine.xi(i, k)))
    }

    /// The ample generator `c₁(H)`.
    pub fn h_class(&self) -> ChowClass {
        let g = self.engine.first_chern_of_character(&self.engine.h).expect("rational characters embed");
        self.class(&g)
    }

    pub fn one(&self) -> ChowClass {
        self.class(&Graded::constant(&self.engine.ring, <Rational as One>::one()))
    }
}

/// `ch(F)`, truncated above the dimension.
pub fn chern_character(p: &Presentation, f: &BundleExpression) -> Result<ChowClass> {
    Ok(p.class(&p.engine.chern_character(f)?))
}

/// `c₁(ω) = Σ_i θcan_i ξ_{i,1}`.
pub fn canonical_class(p: &Presentation) -> ChowClass {
    let r = Rational::from_integer(BigInt::from(-p.engine.index));
    p.h_class().scale(&r)
}

/// The Todd class of the tangent bundle.
pub fn todd_class(p: &Presentation) -> ChowClass {
    p.class(&p.engine.todd)
}

/// `χ(F) = ∫ ch(F)·td(T)`, which must be an integer.
pub fn euler_characteristic(p: &Presentation, f: &BundleExpression) -> Result<BigInt> {
    integral(p.engine.euler_characteristic(f)?)
}

fn integral(chi: Rational) -> Result<BigInt> {
    if chi.is_integer() {
        Ok(chi.to_integer())
    } else {
        Err(Error::NonIntegral(chi.to_string()))
    }
}

/// `∫` of the product of the given classes.
pub fn intersection_number(p: &Presentation, classes: &[ChowClass]) -> Result<Rational> {
    let mut acc = p.one();
    for c in classes {
        acc = acc.mul(c)?;
    }
    Ok(acc.integrate())
}

impl ChowClass {
    fn from_graded(engine: &Arc<Engine<Rational>>, g: &Graded<Rational>) -> Self {
        let coordinates = (0..=engine.ring.top).map(|k| engine.reduce_part(k, &g.parts[k])).collect();
        ChowClass { engine: Arc::clone(engine), coordinates }
    }

    fn to_graded(&self) -> Graded<Rational> {
        let ring = &self.engine.ring;
        let mut g = Graded::zero(ring);
        for (k, coords) in self.coordinates.iter().enumerate() {
            for (m, c) in self.engine.basis[k].iter().zip(coords) {
                g.add_term(ring, *m, c.clone());
            }
        }
        g
    }

    fn check(&self, other: &ChowClass) -> Result<()> {
        if Arc::ptr_eq(&self.engine, &other.engine) {
            Ok(())
        } else {
            Err(Error::Precondition("classes belong to different presentations".into()))
        }
    }

    /// Coordinates of the degree-`k` part in the graded basis.
    pub fn coordinates(&self, k: usize) -> &[Rational] {
        self.coordinates.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree_part(&self, k: usize) -> ChowClass {
        let coordinates = self
            .coordinates
            .iter()
            .enumerate()
            .map(|(j, v)| if j == k { v.clone() } else { vec![Rational::zero(); v.len()] })
            .collect();
        ChowClass { engine: Arc::clone(&self.engine), coordinates }
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().flatten().all(Zero::is_zero)
    }

    pub fn add(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check(other)?;
        let coordinates = self
            .coordinates
            .iter()
            .zip(&other.coordinates)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(ChowClass { engine: Arc::clone(&self.engine), coordinates })
    }

    pub fn scale(&self, s: &Rational) -> ChowClass {
        let coordinates = self.coordinates.iter().map(|v| v.iter().map(|x| x * s).collect()).collect();
        ChowClass { engine: Arc::clone(&self.engine), coordinates }
    }

    pub fn mul(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check(other)?;
        Ok(ChowClass::from_graded(&self.engine, &self.to_graded().mul(&other.to_graded())))
    }

    pub fn pow(&self, n: u32) -> ChowClass {
        let mut acc = ChowClass::from_graded(&self.engine, &Graded::constant(&self.engine.ring, <Rational as One>::one()));
        for _ in 0..n {
            acc = acc.mul(self).expect("same presentation");
        }
        acc
    }

    /// `∫` of the top-degree part.
    pub fn integrate(&self) -> Rational {
        let top = self.engine.ring.top;
        &self.coordinates[top][0] * &self.engine.scalar
    }
}

impl PartialEq for ChowClass {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.engine, &other.engine) && self.coordinates == other.coordinates
    }
}

impl fmt::Debug for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChowClass({self})")
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, coords) in self.coordinates.iter().enumerate() {
            for (m, c) in self.engine.basis[k].iter().zip(coords) {
                if c.is_zero() {
                    continue;
                }
                let mono = self.engine.ring.format(m);
                terms.push(match (mono.as_str(), c == &<Rational as One>::one()) {
                    ("1", _) => c.to_string(),
                    (_, true) => mono,
                    _ => format!("{c}*{mono}"),
                });
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// How Euler characteristics are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Over ℚ.
    Exact,
    /// In several prime fields, with Chinese remaindering.
    Modular,
}

/// Euler characteristics of many bundles on one moduli space.
pub struct HrrContext {
    inner: Inner,
}

enum Inner {
    Exact(Presentation),
    Modular(Box<MultiModular>),
}

impl HrrContext {
    /// Uses [`Backend::Exact`] up to [`EXACT_DIMENSION_LIMIT`].
    pub fn new(q: &Quiver, d: &DimensionVector, theta: &StabilityParameter, a: &Linearisation) -> Result<Self> {
        let backend =
            if moduli_dimension(q, d)? <= EXACT_DIMENSION_LIMIT { Backend::Exact } else { Backend::Modular };
        Self::with_backend(q, d, theta, a, backend)
    }

    pub fn with_backend(
        q: &Quiver,
        d: &DimensionVector,
        theta: &StabilityParameter,
        a: &Linearisation,
        backend: Backend,
    ) -> Result<Self> {
        let inner = match backend {
            Backend::Exact => Inner::Exact(build_presentation(q, d, theta, a)?),
            Backend::Modular => {
                let expected: Vec<usize> =
                    poincare_polynomial(q, d, theta)?.coefficients().iter().map(|&c| c as usize).collect();
                let top = moduli_dimension(q, d)?;
                let relations = relations::tautological_relations(q, d, theta, top)?;
                Inner::Modular(Box::new(MultiModular::new(Problem {
                    quiver: q.clone(),
                    d: d.clone(),
                    theta: theta.clone(),
                    a: a.clone(),
                    relations,
                    expected,
                })))
            }
        };
        Ok(HrrContext { inner })
    }

    pub fn backend(&self) -> Backend {
        match self.inner {
            Inner::Exact(_) => Backend::Exact,
            Inner::Modular(_) => Backend::Modular,
        }
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        match &self.inner {
            Inner::Exact(p) => Some(p),
            Inner::Modular(_) => None,
        }
    }

    pub fn graded_dimensions(&self) -> Result<Vec<usize>> {
        match &self.inner {
            Inner::Exact(p) => Ok(p.graded_dimensions()),
            Inner::Modular(m) => m.graded_dimensions(),
        }
    }

    pub fn euler_characteristic(&self, f: &BundleExpression) -> Result<BigInt> {
        match &self.inner {
            Inner::Exact(p) => euler_characteristic(p, f),
            Inner::Modular(m) => m.euler_characteristic(f),
        }
    }
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<Presentation>();
    check::<HrrContext>();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, Instance};

    fn present(inst: &Instance) -> Presentation {
        build_presentation(&inst.quiver, &inst.d, &inst.theta, &inst.linearisation).unwrap()
    }

    fn int(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn anticanonical_degree(p: &Presentation) -> Rational {
        let minus_k = canonical_class(p).scale(&int(-1));
        intersection_number(p, &vec![minus_k; p.dimension()]).unwrap()
    }

    #[test]
    fn projective_plane() {
        let p = present(&catalog::del_pezzos()[0]);
        assert_eq!(p.graded_dimensions(), vec![1, 1, 1]);
        assert_eq!(anticanonical_degree(&p), int(9));
        let h = p.h_class();
        assert_eq!(intersection_number(&p, &[h.clone(), h]).unwrap(), int(1));
        let chi = euler_characteristic(&p, &BundleExpression::trivial().twist(1)).unwrap();
        assert_eq!(chi, BigInt::from(3));
        let td = todd_class(&p);
        assert_eq!(td.integrate(), int(1));
    }

    #[test]
    fn del_pezzo_degrees() {
        let degrees: Vec<Rational> = catalog::del_pezzos().iter().map(|i| anticanonical_degree(&present(i))).collect();
        assert_eq!(degrees, [9, 8, 8, 7, 6, 5].map(int).to_vec());
    }

    #[test]
    fn fano_examples() {
        let p5 = present(&catalog::fano_fivefold());
        assert_eq!(anticanonical_degree(&p5), int(6318));
        let p3 = present(&catalog::fano_threefold());
        assert_eq!(anticanonical_degree(&p3), int(56));
    }

    #[test]
    fn projective_line_and_recurring_example() {
        let p1 = present(&catalog::projective_line());
        assert_eq!(p1.graded_dimensions(), vec![1, 1]);
        let p = present(&catalog::recurring_example());
        assert_eq!(p.graded_dimensions(), vec![1, 1, 3, 5, 8, 10, 12, 10, 8, 5, 3, 1, 1]);
        let omega = canonical_class(&p);
        let expected = p.xi(0, 1).unwrap().scale(&int(12)).add(&p.xi(1, 1).unwrap().scale(&int(-9))).unwrap();
        assert_eq!(omega, expected);
    }

    #[test]
    fn linear_relation_and_multiplicativity() {
        let inst = catalog::m_kronecker(3);
        let p = present(&inst);
        let a = inst.linearisation.entries();
        let lin = p.xi(0, 1).unwrap().scale(&int(a[0])).add(&p.xi(1, 1).unwrap().scale(&int(a[1]))).unwrap();
        assert!(lin.is_zero());
        let f = BundleExpression::u(0);
        let g = BundleExpression::udual(1).twist(1);
        let lhs = chern_character(&p, &f.tensor(&g)).unwrap();
        let rhs = chern_character(&p, &f).unwrap().mul(&chern_character(&p, &g).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let rank = chern_character(&p, &BundleExpression::hom(0, 1)).unwrap();
        assert_eq!(rank.coordinates(0), &[int(6)]);
    }

    #[test]
    fn serre_duality() {
        let inst = catalog::m_kronecker(3);
        let p = present(&inst);
        let sign = if p.dimension().is_multiple_of(2) { 1 } else { -1 };
        for f in [BundleExpression::u(0), BundleExpression::hom(1, 0).twist(-1), BundleExpression::udual(1).twist(2)] {
            let lhs = euler_characteristic(&p, &f).unwrap();
            let rhs = euler_characteristic(&p, &f.serre_partner(p.index())).unwrap();
            assert_eq!(lhs, rhs * sign, "{f}");
        }
    }

    #[test]
    fn modular_backend_agrees_with_exact() {
        let inst = catalog::m_kronecker(4);
        let args = (&inst.quiver, &inst.d, &inst.theta, &inst.linearisation);
        let exact = HrrContext::with_backend(args.0, args.1, args.2, args.3, Backend::Exact).unwrap();
        let modular = HrrContext::with_backend(args.0, args.1, args.2, args.3, Backend::Modular).unwrap();
        assert_eq!(exact.graded_dimensions().unwrap(), modular.graded_dimensions().unwrap());
        for f in [BundleExpression::u(1).twist(2), BundleExpression::hom(0, 1).twist(-3), BundleExpression::udual(0)] {
            assert_eq!(exact.euler_characteristic(&f).unwrap(), modular.euler_characteristic(&f).unwrap(), "{f}");
        }
    }
}
