//! Tabulates the closed-form counts for a range of q: friezes by width,
//! configurations, and points of the moduli spaces.
//!
//! ```text
//! cargo run --example closed_forms -- 9
//! ```

use frieze_fq::formulas::{
    count_configurations, count_friezes, count_moduli, count_moduli_plus,
    count_signed_configurations,
};
use frieze_fq::gf::prime_power;

fn main() {
    let max_q: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(9);
    let qs: Vec<(u64, bool)> = (2..=max_q)
        .filter_map(|q| prime_power(q).map(|(p, _)| (q, p == 2)))
        .collect();

    println!("tame friezes f_w");
    print!("{:>4}", "q");
    for w in 1..=8 {
        print!("{:>12}", format!("w={w}"));
    }
    println!();
    for &(q, c2) in &qs {
        print!("{q:>4}");
        for w in 1..=8 {
            print!("{:>12}", count_friezes(q, c2, w).unwrap());
        }
        println!();
    }

    println!("\nconfigurations and moduli (n = 2..=8)");
    for &(q, c2) in &qs {
        println!("q = {q}");
        for n in 2..=8 {
            let signed = if n % 2 == 0 {
                let (p, m) = count_signed_configurations(q, c2, n).unwrap();
                let mp = count_moduli_plus(q, c2, (n / 2) as u32);
                format!("c+ {p}  c- {m}  moduli+ {mp}")
            } else {
                String::new()
            };
            println!(
                "  n={n}  c {}  moduli {}  {signed}",
                count_configurations(q, n),
                count_moduli(q, n).unwrap()
            );
        }
    }
}
