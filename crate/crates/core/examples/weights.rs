//! Prints the weight table of the unstable strata and checks one bundle
//! against the weight inequality on every stratum.
//!
//! Run with `cargo run --example weights`.

use quiver_sod::bundle::BundleExpression;
use quiver_sod::catalog;
use quiver_sod::teleman::TelemanContext;

fn main() -> Result<(), quiver_sod::error::Error> {
    let inst = catalog::recurring_example();
    let ctx = TelemanContext::new(&inst.quiver, &inst.d, &inst.theta)?;
    println!("{}: index {}, {} unstable strata", inst.name, ctx.index(), ctx.strata().len());
    for row in ctx.table(&inst.linearisation) {
        let hom: Vec<String> = row.hom_weights.support().iter().map(ToString::to_string).collect();
        println!("  {} | max hom weight {} | eta {}", row.hn_type, hom.last().map_or("-", String::as_str), row.eta);
    }
    let f = BundleExpression::parse("U1 * U2^ * O(-1H)", inst.quiver.vertex_count())?;
    let report = ctx.report(&f, Some(&inst.linearisation))?;
    println!("higher cohomology of {f} vanishes by weights: {}", report.satisfied());
    Ok(())
}
