//! Prints the blow-up tower over P4 with the Mori cone of each stage.
//!
//! `cargo run -p toric-core --example tower`

use toric_core::{mori_cone, paper_tower, serialize_fan};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = paper_tower()?;
    for (name, fan) in [("X", &t.x), ("W", &t.w), ("Y", &t.y)] {
        println!("== {name}");
        print!("{}", serialize_fan(fan));
        let mori = mori_cone(fan)?;
        for e in &mori.entries {
            let mark = if e.extremal { "E" } else { " " };
            println!("  {mark} {}  (degree {})", e.relation.describe(fan), e.relation.degree);
        }
        println!("  Picard number {}, {} extremal\n", mori.picard_number, mori.extremal_count());
    }
    Ok(())
}
