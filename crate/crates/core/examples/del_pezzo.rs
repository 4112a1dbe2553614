//! Answers the collection questions on the six del Pezzo quiver moduli
//! spaces and prints one summary line per surface.
//!
//! Run with `cargo run --release --example del_pezzo`.

use quiver_sod::catalog;
use quiver_sod::sod::{Question, SodContext};

fn main() -> Result<(), quiver_sod::error::Error> {
    println!("{:<12} {:>4} {:>4} {:<14} {:<14} {:<14}", "surface", "r", "HH0", "A", "B", "C");
    for inst in catalog::del_pezzos() {
        let ctx = SodContext::from_instance(&inst)?;
        let answers: Vec<String> = [Question::A, Question::B, Question::C]
            .into_iter()
            .map(|q| ctx.question(q).map(|v| format!("{} ({})", v.answer, v.predicted_collection_length)))
            .collect::<Result<_, _>>()?;
        println!(
            "{:<12} {:>4} {:>4} {:<14} {:<14} {:<14}",
            inst.name, ctx.index(), ctx.hh0(), answers[0], answers[1], answers[2]
        );
    }
    Ok(())
}
