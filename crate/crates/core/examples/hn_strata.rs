//! Checks the standing assumptions on the 3-Kronecker moduli space of
//! dimension vector (3, 4) and lists its Harder–Narasimhan types.
//!
//! Run with `cargo run --example hn_strata`.

use quiver_sod::catalog;
use quiver_sod::hn::hn_types;
use quiver_sod::quiver::check_assumptions;

fn main() -> Result<(), quiver_sod::error::Error> {
    let inst = catalog::recurring_example();
    let report = check_assumptions(&inst.quiver, &inst.d, &inst.theta)?;
    println!("{}: d = {}, theta = {}", inst.name, inst.d, inst.theta);
    println!(
        "acyclic {}, coprime {}, strongly amply stable {}",
        report.acyclic, report.coprime, report.strongly_amply_stable
    );
    let types = hn_types(&inst.quiver, &inst.d, &inst.theta)?;
    println!("{} Harder–Narasimhan types:", types.len());
    for t in &types {
        println!("  {t}");
    }
    Ok(())
}
