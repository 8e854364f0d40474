//! Sends every tame frieze of a width to its configuration and back, and
//! shows how orbits of configurations match friezes.
//!
//! ```text
//! cargo run --example frieze_configuration_bijection -- 3 2
//! ```

use std::collections::BTreeSet;

use frieze_fq::frieze::FirstRow;
use frieze_fq::gf::Field;
use frieze_fq::moduli::{
    canonical_rescaling, configuration_to_frieze, frieze_to_configuration, GroupAction,
};
use frieze_fq::search::{enumerate_friezes, SearchOptions, Strategy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let field: Field = args.next().as_deref().unwrap_or("3").parse()?;
    let width: usize = args.next().as_deref().unwrap_or("2").parse()?;
    let n = width + 3;

    let res = enumerate_friezes(&field, width, Strategy::Mitm, &SearchOptions::default())?;
    let group = GroupAction::new(&field);
    let mut orbits = BTreeSet::new();
    let mut classes = BTreeSet::new();
    for entries in res.tuples.as_deref().unwrap_or_default() {
        let row = FirstRow::new(&field, entries.clone())?;
        let config = frieze_to_configuration(&row)?;
        let back = configuration_to_frieze(&config)?;
        let expected = if n.is_multiple_of(2) {
            canonical_rescaling(&field, entries)
        } else {
            entries.clone()
        };
        assert_eq!(back.entries(), expected.as_slice());
        let codes: Vec<String> = row.codes().iter().map(|c| c.to_string()).collect();
        println!("({})  ->  {config}", codes.join(","));
        orbits.insert(group.canonical(&config.indices()));
        classes.insert(expected);
    }
    println!(
        "\n{} friezes, {} rescaling classes, {} configuration orbits; all round trips ok",
        res.total_count,
        classes.len(),
        orbits.len()
    );
    Ok(())
}
