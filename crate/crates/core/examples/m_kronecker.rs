//! Studies the m-Kronecker family with dimension vector (2, 3): the
//! Fano index, the `t*` values per stratum and the vanishing of `H⁰` on the
//! twisted families, for m = 3, …, 6.
//!
//! Run with `cargo run --release --example m_kronecker`.

use quiver_sod::catalog;
use quiver_sod::sod::{mkronecker_h0_condition, SodContext};

fn main() -> Result<(), quiver_sod::error::Error> {
    for m in 3..=6 {
        let inst = catalog::m_kronecker(m);
        let ctx = SodContext::from_instance(&inst)?;
        let tstar = ctx.teleman().t_star()?;
        let h0 = mkronecker_h0_condition(m, inst.linearisation.entries())?;
        let d = ctx.theorem_d()?;
        println!(
            "m = {m}: dimension {}, index {}, min t* = {}, H^0 condition {h0}, U-only collection {} ({} objects)",
            ctx.dimension(),
            ctx.index(),
            tstar.min,
            d.answer,
            d.predicted_collection_length
        );
    }
    Ok(())
}
