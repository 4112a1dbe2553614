//! Builds the tautological presentation of the Chow ring of the
//! 3-Kronecker (3, 4) moduli space and computes a few intersection numbers.
//!
//! Run with `cargo run --release --example chow_ring`.

use quiver_sod::catalog;
use quiver_sod::chow::{build_presentation, canonical_class, intersection_number};

fn main() -> Result<(), quiver_sod::error::Error> {
    let inst = catalog::recurring_example();
    let p = build_presentation(&inst.quiver, &inst.d, &inst.theta, &inst.linearisation)?;
    let dims = p.graded_dimensions();
    println!("generators {:?}, {} relations", p.generators(), p.relation_count());
    println!("graded basis sizes {dims:?}, total {}", dims.iter().sum::<usize>());
    println!("basis in degree 2: {:?}", p.basis(2));

    let top = p.dimension() as u32;
    let h = p.h_class();
    println!("degree of H: {}", h.pow(top).integrate());
    let k = canonical_class(&p);
    let mut factors = vec![k.clone(); 2];
    factors.extend(std::iter::repeat_n(h.clone(), p.dimension() - 2));
    println!("K^2 . H^{}: {}", p.dimension() - 2, intersection_number(&p, &factors)?);
    let c2 = p.xi(1, 2)?;
    factors = vec![c2];
    factors.extend(std::iter::repeat_n(h, p.dimension() - 2));
    println!("c2(U2) . H^{}: {}", p.dimension() - 2, intersection_number(&p, &factors)?);
    Ok(())
}
