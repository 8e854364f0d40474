//! Enumerates all tame friezes of a given width and prints the orbit catalog.
//!
//! ```text
//! cargo run --release --example enumerate_friezes -- 2^2 2
//! ```

use frieze_fq::gf::Field;
use frieze_fq::search::{
    catalog_orbits, enumerate_friezes, CatalogFormat, SearchOptions, Strategy,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let field: Field = args.next().as_deref().unwrap_or("3").parse()?;
    let width: usize = args.next().as_deref().unwrap_or("3").parse()?;

    let result = enumerate_friezes(&field, width, Strategy::Mitm, &SearchOptions::default())?;
    print!("{}", catalog_orbits(&result, CatalogFormat::Text));
    eprintln!("elapsed: {:.2?}", result.elapsed);
    Ok(())
}
