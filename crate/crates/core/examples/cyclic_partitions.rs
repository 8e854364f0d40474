//! Cyclic partitions: brute-force counts against the closed form, the
//! falling-factorial expansion of configuration counts, and the equality
//! pattern classification of configurations.
//!
//! ```text
//! cargo run --release --example cyclic_partitions -- 8
//! ```

use frieze_fq::gf::Field;
use frieze_fq::partitions::{
    a_kn_closed_form, enumerate_cyclic_partitions, falling_factorial_expand, partition_triangle,
    shifted_configuration_samples, verify_partition_identity,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);

    println!("A(k, n), k = 1..=n:");
    for (i, row) in partition_triangle(max_n).iter().enumerate() {
        let n = i + 2;
        let closed: Vec<String> = (2..=n)
            .map(|k| a_kn_closed_form(k, n).map(|v| v.to_string()))
            .collect::<Result<_, _>>()?;
        let brute: Vec<String> = row[1..].iter().map(|v| v.to_string()).collect();
        assert_eq!(brute, closed);
        println!(
            "  n={n:<2} {}",
            row.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
    }

    println!("\npartitions of 5 points into 3 blocks:");
    for p in enumerate_cyclic_partitions(5, 3) {
        println!("  {:?}", p.blocks());
    }

    let n = max_n.min(10);
    let exp = falling_factorial_expand(&shifted_configuration_samples(n));
    let coeffs: Vec<String> = exp
        .integer_coefficients()
        .expect("coefficients are integers")
        .iter()
        .map(|c| c.to_string())
        .collect();
    println!(
        "\nfalling-factorial coefficients for n={n}: {}",
        coeffs.join(" ")
    );

    for q in [2u64, 3, 4, 5] {
        let field = Field::of_order(q)?;
        let report = verify_partition_identity(&field, 6, frieze_fq::DEFAULT_BUDGET)?;
        println!(
            "q={q} n=6: c_n = {}, partition sum = {}, patterns by blocks {:?}, holds: {}",
            report.closed_form,
            report.from_partitions,
            report.patterns_by_blocks,
            report.holds()
        );
    }
    Ok(())
}
