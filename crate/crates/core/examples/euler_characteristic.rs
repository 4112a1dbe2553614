//! Evaluates Euler characteristics of bundle expressions by
//! Hirzebruch–Riemann–Roch on the projective plane, viewed as a quiver
//! moduli space, and on the 3-Kronecker (3, 4) moduli space.
//!
//! Run with `cargo run --release --example euler_characteristic`.

use quiver_sod::bundle::BundleExpression;
use quiver_sod::catalog;
use quiver_sod::chow::HrrContext;

fn main() -> Result<(), quiver_sod::error::Error> {
    let plane = catalog::del_pezzos().remove(0);
    let big = catalog::recurring_example();
    let cases = [
        (&plane, ["O", "O(1H)", "O(2H)", "U1^ * U2"]),
        (&big, ["O", "O(1H)", "U1", "U2^ * U1 * O(-1H)"]),
    ];
    for (inst, exprs) in cases {
        let ctx = HrrContext::new(&inst.quiver, &inst.d, &inst.theta, &inst.linearisation)?;
        println!("{} ({:?} backend)", inst.name, ctx.backend());
        for text in exprs {
            let f = BundleExpression::parse(text, inst.quiver.vertex_count())?;
            println!("  chi({f}) = {}", ctx.euler_characteristic(&f)?);
        }
    }
    Ok(())
}
