//! Builds a finite field from a descriptor and prints its presentation,
//! multiplication table and projective line.
//!
//! ```text
//! cargo run --example field_arithmetic -- 2^2
//! cargo run --example field_arithmetic -- 3^2:1,0,1
//! ```

use frieze_fq::gf::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let descriptor = std::env::args().nth(1).unwrap_or_else(|| "2^2".into());
    let field: Field = descriptor.parse()?;

    println!("F_{} = {}", field.order(), field.descriptor());
    println!("modulus (constant first): {:?}", field.modulus());

    let elems: Vec<_> = field.elements().collect();
    println!("\nmultiplication table:");
    for &a in &elems {
        let row: Vec<String> = elems
            .iter()
            .map(|&b| field.label(field.mul(a, b)))
            .collect();
        println!("  {:>3} | {}", field.label(a), row.join(" "));
    }

    println!("\ninverses:");
    for &a in elems.iter().skip(1) {
        println!(
            "  {}^-1 = {}",
            field.label(a),
            field.label(field.inv(a).unwrap())
        );
    }

    let points: Vec<String> = field.p1_points().iter().map(|p| p.to_string()).collect();
    println!("\nP^1 has {} points: {}", points.len(), points.join(" "));
    println!("|PGL_2| = {}", field.pgl2_elements().len());
    Ok(())
}
