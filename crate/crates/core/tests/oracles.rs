mod common;

use std::collections::BTreeSet;

use quiver_sod::catalog;
use quiver_sod::hn::{generic_subdimension_vectors, hn_types};
use quiver_sod::quiver::Quiver;

/// Every quiver on `n` vertices without loops and with at most `max_arrows` arrows,
/// up to reordering of the arrow list.
fn small_quivers(n: usize, max_arrows: usize) -> Vec<Quiver> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t))).collect();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<(usize, usize)>)> = vec![(0, vec![])];
    while let Some((from, arrows)) = stack.pop() {
        out.push(Quiver::new(n, arrows.clone()).unwrap());
        if arrows.len() == max_arrows {
            continue;
        }
        for k in from..pairs.len() {
            let mut next = arrows.clone();
            next.push(pairs[k]);
            stack.push((k, next));
        }
    }
    out
}

#[test]
fn schofield_recursion_matches_random_representations() {
    let mut rng = common::rng(7);
    let mut checked = 0;
    for n in 1..=3 {
        for q in small_quivers(n, 3) {
            for e in common::boxes(&vec![2; n]) {
                let expected = common::generic_subdimensions(&q, &e, &mut rng);
                let got = generic_subdimension_vectors(&q, &e);
                assert_eq!(got, expected, "quiver {:?}, e = {e:?}", q.arrows());
                checked += 1;
            }
        }
    }
    assert!(checked > 1000, "only {checked} cases");
}

#[test]
fn hn_types_match_brute_force() {
    let mut rng = common::rng(11);
    let mut instances: Vec<_> =
        catalog::all().into_iter().filter(|i| i.d.entries().iter().sum::<i64>() <= 6).collect();
    instances.push(catalog::m_kronecker(4));
    assert!(instances.len() >= 8);
    for inst in instances {
        let expected = common::hn_types(&inst.quiver, inst.d.entries(), inst.theta.entries(), &mut rng);
        let got: BTreeSet<Vec<Vec<i64>>> = hn_types(&inst.quiver, &inst.d, &inst.theta)
            .unwrap()
            .iter()
            .map(|t| t.parts().iter().map(|p| p.entries().to_vec()).collect())
            .collect();
        assert_eq!(got, expected, "{}", inst.name);
    }
}

#[test]
fn oracle_sanity() {
    let mut rng = common::rng(3);
    let q = Quiver::kronecker(3);
    let subs = common::generic_subdimensions(&q, &[1, 1], &mut rng);
    let expected: BTreeSet<Vec<i64>> = [vec![0, 0], vec![0, 1], vec![1, 1]].into_iter().collect();
    assert_eq!(subs, expected);
    assert_eq!(common::hom(&q, &[1, 0], &[0, 1], &mut rng), 0);
    assert_eq!(common::ext(&q, &[1, 0], &[0, 1], &mut rng), 3);
    assert!(common::has_semistable(&q, &[3, 4], &[12, -9], &mut rng));
    assert!(!common::has_semistable(&q, &[1, 4], &[4, -1], &mut rng));
}
