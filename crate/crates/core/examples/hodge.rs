//! Computes the Hodge column, the Picard rank and HH₀ for every catalog
//! instance.
//!
//! Run with `cargo run --example hodge`.

use quiver_sod::betti::{hochschild_zero, picard_rank, poincare_polynomial};
use quiver_sod::catalog;

fn main() -> Result<(), quiver_sod::error::Error> {
    for inst in catalog::all() {
        let p = poincare_polynomial(&inst.quiver, &inst.d, &inst.theta)?;
        let hh0 = hochschild_zero(&inst.quiver, &inst.d, &inst.theta)?;
        let pic = picard_rank(&inst.quiver, &inst.d, &inst.theta)?;
        let column: Vec<String> = p.coefficients().iter().map(u64::to_string).collect();
        println!("{:<28} {} | rho = {pic} | HH0 = {hh0}", inst.name, column.join(" "));
    }
    Ok(())
}
