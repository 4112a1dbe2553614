//! Named instances: the recurring 3-Kronecker example, the m-Kronecker
//! family, the six del Pezzo quivers, a Fano 5-fold, a Fano 3-fold and ℙ¹.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::quiver::{canonical_stability, DimensionVector, Linearisation, Quiver, StabilityParameter};

/// A moduli problem `(Q, d, θ)` together with a linearisation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub name: String,
    pub quiver: Quiver,
    pub d: DimensionVector,
    pub theta: StabilityParameter,
    pub linearisation: Linearisation,
}

impl Instance {
    /// Builds an instance at the canonical stability parameter. A missing
    /// linearisation is replaced by [`Linearisation::smallest`].
    pub fn canonical(name: &str, quiver: Quiver, d: Vec<i64>, a: Option<Vec<i64>>) -> Result<Self> {
        let d = DimensionVector::for_quiver(&quiver, d)?;
        let theta = canonical_stability(&quiver, &d)?;
        let linearisation = match a {
            Some(a) => Linearisation::new(a, &d)?,
            None => Linearisation::smallest(&d)?,
        };
        Ok(Instance { name: name.to_string(), quiver, d, theta, linearisation })
    }
}

fn build(name: &str, n: usize, arrows: &[(usize, usize)], d: &[i64], a: Option<&[i64]>) -> Instance {
    let q = Quiver::from_one_based(n, arrows).expect("catalog quiver is valid");
    Instance::canonical(name, q, d.to_vec(), a.map(<[i64]>::to_vec)).expect("catalog instance is valid")
}

/// 3-Kronecker quiver, `d = (3, 4)`, `a = (3, −2)`: a 12-dimensional Fano of index 3.
pub fn recurring_example() -> Instance {
    build("3-Kronecker (3,4)", 2, &[(1, 2); 3], &[3, 4], Some(&[3, -2]))
}

/// `m`-Kronecker quiver, `d = (2, 3)`, `a = (2, −1)`.
pub fn m_kronecker(m: usize) -> Instance {
    let arrows = vec![(1, 2); m];
    build(&format!("{m}-Kronecker (2,3)"), 2, &arrows, &[2, 3], Some(&[2, -1]))
}

/// Kronecker quiver with `d = (1, 1)`, giving ℙ¹.
pub fn projective_line() -> Instance {
    build("P1", 2, &[(1, 2); 2], &[1, 1], None)
}

/// The six del Pezzo quivers, in the order ℙ², ℙ¹×ℙ¹, Bl₁ … Bl₄. Each carries
/// the linearisation for which `O, U₁, …, U_n` is exceptional.
pub fn del_pezzos() -> Vec<Instance> {
    vec![
        build("P2", 2, &[(1, 2); 3], &[1, 1], Some(&[2, -1])),
        build("P1xP1", 3, &[(1, 2), (1, 2), (3, 2), (3, 2)], &[1, 1, 1], Some(&[1, -1, 1])),
        build("Bl1(P2)", 3, &[(1, 2), (1, 3), (2, 3), (2, 3)], &[1, 1, 1], Some(&[1, 1, -1])),
        build("Bl2(P2)", 4, &[(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)], &[1, 1, 1, 1], Some(&[1, 1, 0, -1])),
        build(
            "Bl3(P2)",
            5,
            &[(1, 4), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5)],
            &[1, 1, 1, 1, 1],
            Some(&[1, 1, 1, -1, -1]),
        ),
        build(
            "Bl4(P2)",
            6,
            &[(1, 6), (2, 6), (3, 6), (4, 6), (5, 6)],
            &[1, 1, 1, 1, 1, 2],
            Some(&[1, 1, 1, 1, 1, -2]),
        ),
    ]
}

/// Three vertices, arrows `1→2`, `1→3` twice and `2→3` four times, `d = (1,1,1)`,
/// `a = (0, 2, −1)`: a Fano 5-fold of index 3.
pub fn fano_fivefold() -> Instance {
    let mut arrows = vec![(1, 2), (1, 3), (1, 3)];
    arrows.extend([(2, 3); 4]);
    build("Fano 5-fold", 3, &arrows, &[1, 1, 1], Some(&[0, 2, -1]))
}

/// Three vertices, arrows `1→2`, `1→3` and `2→3` three times, `d = (1,1,1)`,
/// `a = (1, 1, −1)`: the Fano threefold 2-35 of index 2.
pub fn fano_threefold() -> Instance {
    let mut arrows = vec![(1, 2), (1, 3)];
    arrows.extend([(2, 3); 3]);
    build("Fano 3-fold", 3, &arrows, &[1, 1, 1], Some(&[1, 1, -1]))
}

/// Every named instance, with the m-Kronecker family at `m = 3`.
pub fn all() -> Vec<Instance> {
    let mut out = vec![recurring_example(), m_kronecker(3), projective_line()];
    out.extend(del_pezzos());
    out.push(fano_fivefold());
    out.push(fano_threefold());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{check_assumptions, fano_index, moduli_dimension};

    #[test]
    fn every_instance_satisfies_the_assumptions() {
        for inst in all() {
            let report = check_assumptions(&inst.quiver, &inst.d, &inst.theta).unwrap();
            assert!(report.all_hold(), "{}", inst.name);
        }
    }

    #[test]
    fn indices_and_dimensions() {
        let idx: Vec<i64> =
            del_pezzos().iter().map(|i| fano_index(&i.quiver, &i.d).unwrap()).collect();
        assert_eq!(idx, vec![3, 2, 1, 1, 1, 1]);
        let dims: Vec<usize> =
            del_pezzos().iter().map(|i| moduli_dimension(&i.quiver, &i.d).unwrap()).collect();
        assert_eq!(dims, vec![2; 6]);
        let f5 = fano_fivefold();
        assert_eq!(f5.theta.entries(), &[3, 3, -6]);
        assert_eq!(moduli_dimension(&f5.quiver, &f5.d).unwrap(), 5);
        let f3 = fano_threefold();
        assert_eq!(f3.theta.entries(), &[2, 2, -4]);
        assert_eq!(fano_index(&f3.quiver, &f3.d).unwrap(), 2);
        let p1 = projective_line();
        assert_eq!(fano_index(&p1.quiver, &p1.d).unwrap(), 2);
        assert_eq!(m_kronecker(7).theta.entries(), &[21, -14]);
    }
}
