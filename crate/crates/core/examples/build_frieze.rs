//! Generates the frieze of a first row, renders it, and runs the structural
//! checks: glide symmetry, periodicity, unimodularity and tameness.
//!
//! ```text
//! cargo run --example build_frieze -- 2 1,1,1,0,0
//! cargo run --example build_frieze -- 2^2 2,0,3,1,1
//! ```

use frieze_fq::frieze::{
    check_tame, check_tame_all_diamonds, frieze_symmetries, matrix_criterion, render_frieze,
    FirstRow, Frieze, RenderFormat,
};
use frieze_fq::gf::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let field: Field = args.next().as_deref().unwrap_or("3").parse()?;
    let row = args.next().unwrap_or_else(|| "0,0,0,0,0,0".into());
    let entries = field.parse_elements(&row)?;

    let (ok, product) = matrix_criterion(&field, &entries);
    println!(
        "product of step matrices: {product} ({})",
        if ok { "-Id" } else { "not -Id" }
    );

    let frieze = Frieze::from_first_row(FirstRow::new(&field, entries.clone())?)?;
    print!("\n{}", render_frieze(&frieze, RenderFormat::Text));

    println!("\nglide invariant: {}", frieze.is_glide_invariant());
    println!("antiperiodic diagonals: {}", frieze.is_periodic());
    println!("unimodular: {}", frieze.is_unimodular());
    let tame = check_tame(&frieze);
    let all = check_tame_all_diamonds(&frieze);
    println!(
        "tame: {} ({} zero-centred diamonds, {} diamonds in the full check)",
        tame.ok && all.ok,
        tame.diamonds_checked,
        all.diamonds_checked
    );

    let sym = frieze_symmetries(&entries);
    let canon: Vec<String> = sym.canonical.iter().map(|&e| field.label(e)).collect();
    println!(
        "dihedral orbit: size {}, representative ({})",
        sym.orbit_size,
        canon.join(",")
    );
    println!("\n{}", render_frieze(&frieze, RenderFormat::Json));
    Ok(())
}
