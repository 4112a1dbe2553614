//! Symbolic equivariant bundles: tensor words in `U_i`, `U_i^∨`, `L(e)` and `O(sH)`.
//!
//! Text grammar (whitespace is ignored, vertices are 1-based):
//!
//! ```text
//! expr   := factor ( "*" factor )*
//! factor := "O" [ "(" twist ")" ]
//!         | "U" index [ "^" ] [ "(" twist ")" ]
//!         | "H"
//!         | "L(" rational ( "," rational )* ")"
//! twist  := [ "+" | "-" ] [ integer ] "H"
//! ```
//!
//! `U2^` is the dual of `U2`, `O(-1H)` is `O(−H)`, and `L(4,-3)` is the
//! linearised line bundle of the character `(4, −3)`. `H` stands for
//! `L(θcan/r)`, the ample generator; the canonical bundle is `L(−θcan)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{Linearisation, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Atom {
    /// `U_i`, 0-based vertex.
    U(usize),
    /// `U_i^∨`, 0-based vertex.
    Udual(usize),
    /// `L(e)` for a rational character `e`.
    Lin(Vec<Rational>),
    /// `O(sH)`.
    H(i64),
}

/// Atoms after substituting `H = L(h)` and collecting all line bundles into one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolved {
    pub universal: Vec<(usize, bool)>,
    /// Total character of the line-bundle factors; `None` if there are none.
    pub character: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleExpression {
    atoms: Vec<Atom>,
    linearisation: Option<Linearisation>,
}

impl BundleExpression {
    /// The structure sheaf (empty tensor word).
    pub fn trivial() -> Self {
        BundleExpression { atoms: Vec::new(), linearisation: None }
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> Self {
        BundleExpression { atoms, linearisation: None }
    }

    pub fn u(i: usize) -> Self {
        Self::from_atoms(vec![Atom::U(i)])
    }

    pub fn udual(i: usize) -> Self {
        Self::from_atoms(vec![Atom::Udual(i)])
    }

    /// `U_i^∨ ⊗ U_j`.
    pub fn hom(i: usize, j: usize) -> Self {
        Self::from_atoms(vec![Atom::Udual(i), Atom::U(j)])
    }

    pub fn lin(e: Vec<Rational>) -> Self {
        Self::from_atoms(vec![Atom::Lin(e)])
    }

    pub fn with_linearisation(mut self, a: Linearisation) -> Self {
        self.linearisation = Some(a);
        self
    }

    pub fn linearisation(&self) -> Option<&Linearisation> {
        self.linearisation.as_ref()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn tensor(&self, other: &BundleExpression) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        BundleExpression {
            atoms,
            linearisation: self.linearisation.clone().or_else(|| other.linearisation.clone()),
        }
    }

    /// `F ⊗ O(sH)`, merging into an existing `H` factor.
    pub fn twist(&self, s: i64) -> Self {
        if s == 0 {
            return self.clone();
        }
        let mut out = self.clone();
        match out.atoms.iter_mut().find_map(|a| match a {
            Atom::H(t) => Some(t),
            _ => None,
        }) {
            Some(t) => *t += s,
            None => out.atoms.push(Atom::H(s)),
        }
        out.atoms.retain(|a| *a != Atom::H(0));
        out
    }

    pub fn dual(&self) -> Self {
        let atoms = self
            .atoms
            .iter()
            .map(|a| match a {
                Atom::U(i) => Atom::Udual(*i),
                Atom::Udual(i) => Atom::U(*i),
                Atom::Lin(e) => Atom::Lin(e.iter().map(|x| -x).collect()),
                Atom::H(s) => Atom::H(-s),
            })
            .collect();
        BundleExpression { atoms, linearisation: self.linearisation.clone() }
    }

    /// `F^∨ ⊗ ω` with `ω = O(−rH)`: the Serre-duality partner.
    pub fn serre_partner(&self, index: i64) -> Self {
        self.dual().twist(-index)
    }

    pub fn max_vertex(&self) -> Option<usize> {
        self.atoms
            .iter()
            .filter_map(|a| match a {
                Atom::U(i) | Atom::Udual(i) => Some(*i),
                _ => None,
            })
            .max()
    }

    /// Rank of the bundle.
    pub fn rank(&self, d: &[i64]) -> i64 {
        self.atoms
            .iter()
            .map(|a| match a {
                Atom::U(i) | Atom::Udual(i) => d[*i],
                _ => 1,
            })
            .product()
    }

    pub fn resolve(&self, h: &[Rational]) -> Resolved {
        let mut universal = Vec::new();
        let mut character: Option<Vec<Rational>> = None;
        let mut add = |v: Vec<Rational>| {
            character = Some(match character.take() {
                None => v,
                Some(c) => c.iter().zip(&v).map(|(a, b)| a + b).collect(),
            });
        };
        for a in &self.atoms {
            match a {
                Atom::U(i) => universal.push((*i, false)),
                Atom::Udual(i) => universal.push((*i, true)),
                Atom::Lin(e) => add(e.clone()),
                Atom::H(s) => add(h.iter().map(|x| x * Rational::from_integer(BigInt::from(*s))).collect()),
            }
        }
        Resolved { universal, character }
    }

    /// Parses the text grammar in the module docs for a quiver with `n` vertices.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { chars: &chars, pos: 0, n };
        let mut atoms = Vec::new();
        loop {
            atoms.extend(p.factor()?);
            if p.eat('*') {
                continue;
            }
            if p.pos == chars.len() {
                break;
            }
            return Err(p.error("expected '*' or end of expression"));
        }
        Ok(BundleExpression { atoms, linearisation: None })
    }
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Expression(format!("{msg} at position {}", self.pos))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect::<String>().parse().unwrap())
    }

    fn sign(&mut self) -> i64 {
        if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        }
    }

    fn twist(&mut self) -> Result<i64> {
        let sign = self.sign();
        let k = match self.digits() {
            Some(k) => i64::try_from(k).map_err(|_| self.error("twist too large"))?,
            None => 1,
        };
        self.expect('H')?;
        Ok(sign * k)
    }

    fn optional_twist(&mut self, atoms: &mut Vec<Atom>) -> Result<()> {
        if self.eat('(') {
            let s = self.twist()?;
            self.expect(')')?;
            if s != 0 {
                atoms.push(Atom::H(s));
            }
        }
        Ok(())
    }

    fn rational(&mut self) -> Result<Rational> {
        let sign = self.sign();
        let num = self.digits().ok_or_else(|| self.error("expected a number"))?;
        let den = if self.eat('/') {
            self.digits().ok_or_else(|| self.error("expected a denominator"))?
        } else {
            BigInt::one()
        };
        if den.is_zero() {
            return Err(self.error("zero denominator"));
        }
        Ok(Rational::new(num * sign, den))
    }

    fn factor(&mut self) -> Result<Vec<Atom>> {
        let mut atoms = Vec::new();
        match self.peek() {
            Some('O') => {
                self.pos += 1;
                self.optional_twist(&mut atoms)?;
            }
            Some('H') => {
                self.pos += 1;
                atoms.push(Atom::H(1));
            }
            Some('U') => {
                self.pos += 1;
                let idx = self.digits().ok_or_else(|| self.error("expected a vertex number"))?;
                let idx = usize::try_from(idx).map_err(|_| self.error("vertex out of range"))?;
                if idx == 0 || idx > self.n {
                    return Err(self.error(&format!("vertex {idx} outside 1..{}", self.n)));
                }
                if self.eat('^') {
                    atoms.push(Atom::Udual(idx - 1));
                } else {
                    atoms.push(Atom::U(idx - 1));
                }
                self.optional_twist(&mut atoms)?;
            }
            Some('L') => {
                self.pos += 1;
                self.expect('(')?;
                let mut e = vec![self.rational()?];
                while self.eat(',') {
                    e.push(self.rational()?);
                }
                self.expect(')')?;
                if e.len() != self.n {
                    return Err(Error::Expression(format!(
                        "character has {} entries, quiver has {} vertices",
                        e.len(),
                        self.n
                    )));
                }
                atoms.push(Atom::Lin(e));
            }
            _ => return Err(self.error("expected O, U<i>, H or L(...)")),
        }
        Ok(atoms)
    }
}

impl fmt::Display for BundleExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<String> = Vec::new();
        let mut twist = 0i64;
        for a in &self.atoms {
            match a {
                Atom::U(i) => pieces.push(format!("U{}", i + 1)),
                Atom::Udual(i) => pieces.push(format!("U{}^", i + 1)),
                Atom::Lin(e) => pieces.push(format!(
                    "L({})",
                    e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                )),
                Atom::H(s) => twist += s,
            }
        }
        if twist != 0 {
            pieces.push(format!("O({twist}H)"));
        }
        if pieces.is_empty() {
            return write!(f, "O");
        }
        write!(f, "{}", pieces.join(" * "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::rat;

    #[test]
    fn parses_the_documented_example() {
        let e = BundleExpression::parse("U1^ * U2 * O(-1H)", 2).unwrap();
        assert_eq!(e.atoms(), &[Atom::Udual(0), Atom::U(1), Atom::H(-1)]);
        assert_eq!(e.to_string(), "U1^ * U2 * O(-1H)");
    }

    #[test]
    fn parses_shorthands() {
        assert_eq!(BundleExpression::parse("O", 2).unwrap(), BundleExpression::trivial());
        assert_eq!(BundleExpression::parse("O(2H)", 2).unwrap().atoms(), &[Atom::H(2)]);
        assert_eq!(BundleExpression::parse("H*H", 2).unwrap().atoms(), &[Atom::H(1), Atom::H(1)]);
        assert_eq!(BundleExpression::parse("U2(-H)", 2).unwrap().atoms(), &[Atom::U(1), Atom::H(-1)]);
        let l = BundleExpression::parse("L(4,-3/2)", 2).unwrap();
        assert_eq!(l.atoms(), &[Atom::Lin(vec![rat(4), Rational::new((-3).into(), 2.into())])]);
        assert_eq!(BundleExpression::parse("O(0H)", 2).unwrap().to_string(), "O");
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "U0", "U3", "U1 U2", "O(2)", "L(1)", "X", "U1^^", "L(1/0,1)"] {
            assert!(BundleExpression::parse(bad, 2).is_err(), "{bad}");
        }
    }

    #[test]
    fn dual_and_partner() {
        let f = BundleExpression::parse("U1^ * O(-1H)", 2).unwrap();
        assert_eq!(f.dual().to_string(), "U1 * O(1H)");
        // K = −3H on an index-3 variety: partner of U1^(−H) is U1(−2H)
        assert_eq!(f.serre_partner(3).to_string(), "U1 * O(-2H)");
        assert_eq!(f.serre_partner(3).serre_partner(3), f);
    }

    #[test]
    fn resolution_collects_line_bundles() {
        let f = BundleExpression::parse("U1 * O(2H) * L(1,0)", 2).unwrap();
        let r = f.resolve(&[rat(4), rat(-3)]);
        assert_eq!(r.universal, vec![(0, false)]);
        assert_eq!(r.character, Some(vec![rat(9), rat(-6)]));
        assert_eq!(BundleExpression::hom(0, 1).resolve(&[rat(1), rat(1)]).character, None);
        assert_eq!(f.rank(&[3, 4]), 3);
        assert_eq!(BundleExpression::hom(0, 1).rank(&[3, 4]), 12);
    }
}
