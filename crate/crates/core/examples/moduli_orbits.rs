//! Counts PGL_2 orbits of configurations on the projective line by brute
//! force and compares them with the closed forms.
//!
//! ```text
//! cargo run --release --example moduli_orbits -- 3 6
//! ```

use frieze_fq::formulas::{count_moduli, count_moduli_plus};
use frieze_fq::gf::Field;
use frieze_fq::moduli::{pgl2_orbit_count, sign_class, SignFilter};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let field: Field = args.next().as_deref().unwrap_or("3").parse()?;
    let max_n: usize = args.next().as_deref().unwrap_or("6").parse()?;
    let q = field.order() as u64;
    let budget = frieze_fq::DEFAULT_BUDGET;

    for n in 2..=max_n {
        let all = pgl2_orbit_count(&field, n, SignFilter::All, budget)?;
        print!(
            "n={n}: {} configurations, {} orbits (closed form {})",
            all.configurations,
            all.orbit_count(),
            count_moduli(q, n)?
        );
        if n % 2 == 0 {
            let plus = pgl2_orbit_count(&field, n, SignFilter::Plus, budget)?;
            print!(
                "; plus part {} orbits (closed form {})",
                plus.orbit_count(),
                count_moduli_plus(q, field.is_char_two(), (n / 2) as u32)
            );
        }
        println!();
        if n <= 4 {
            for (rep, size) in &all.orbits {
                let class = sign_class(rep).map(|s| s.to_string()).unwrap_or_default();
                println!("    {rep}  size {size}  {class}");
            }
        }
    }
    Ok(())
}
