//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when a criterion fails that is not listed in `KNOWN_FAILURES`,
//! or when a listed one starts passing.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use frieze_fq::formulas::{self, QInt};
use frieze_fq::frieze::{dihedral_images, matrix_criterion, FirstRow, Frieze};
use frieze_fq::gf::{Elem, Field};
use frieze_fq::moduli::{
    canonical_rescaling, configuration_to_frieze, enumerate_configurations,
    frieze_to_configuration, pgl2_orbit_count, GroupAction, SignFilter,
};
use frieze_fq::partitions::{
    a_kn_closed_form, configuration_count_from_partitions, count_cyclic_partitions,
};
use frieze_fq::search::{enumerate_friezes, EnumerationResult, SearchOptions, Strategy};

const BUDGET: u64 = frieze_fq::DEFAULT_BUDGET;
const PRIME_POWERS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

/// Criteria whose stated target cannot be met, with the reason.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    1,
    "reference table lists 17696 for q=4 w=7; enumeration (both strategies) and the \
     closed form q^7+q^5+q^4-q^2-1 give 17647",
)];

type Outcome = Result<String, String>;
type Criterion = Box<dyn Fn(&mut Cache) -> Outcome>;

fn field(q: u64) -> Field {
    Field::of_order(q).unwrap()
}

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn big(v: usize) -> QInt {
    QInt::from(v)
}

/// Enumeration results shared between criteria.
struct Cache {
    results: BTreeMap<(u64, usize), EnumerationResult>,
}

impl Cache {
    fn get(&mut self, q: u64, w: usize) -> &EnumerationResult {
        self.results
            .entry((q, w))
            .or_insert_with(|| enumerate_friezes(&field(q), w, Strategy::Mitm, &opts()).unwrap())
    }
}

fn criterion_1(cache: &mut Cache) -> Outcome {
    let table: [(u64, [u64; 7]); 3] = [
        (2, [3, 5, 11, 21, 43, 85, 171]),
        (3, [2, 10, 35, 91, 260, 820, 2501]),
        (4, [7, 17, 79, 273, 1135, 4369, 17696]),
    ];
    let mut bad = Vec::new();
    let mut cells = 0;
    for (q, row) in table {
        for (i, &expected) in row.iter().enumerate() {
            let w = i + 1;
            cells += 1;
            let got = cache.get(q, w).total_count;
            if got != expected {
                let naive = enumerate_friezes(&field(q), w, Strategy::Naive, &opts())
                    .unwrap()
                    .total_count;
                let closed = formulas::count_friezes(q, q == 2 || q == 4, w).unwrap();
                bad.push(format!(
                    "q={q} w={w}: table {expected}, mitm {got}, naive {naive}, closed form {closed}"
                ));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{cells}/{cells} cells match"))
    } else {
        Err(format!(
            "{}/{cells} cells match; {}",
            cells - bad.len(),
            bad.join("; ")
        ))
    }
}

fn criterion_2(cache: &mut Cache) -> Outcome {
    let mut bad = Vec::new();
    for q in PRIME_POWERS {
        let f = field(q);
        for w in 1..=5 {
            let got = cache.get(q, w).total_count;
            let closed = formulas::count_friezes(q, f.is_char_two(), w).unwrap();
            if closed != QInt::from(got) {
                bad.push(format!("q={q} w={w}: {got} vs {closed}"));
            }
        }
    }
    verdict(bad, "35 (q, w) pairs agree with the closed form")
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    for q in [2u64, 3, 4, 5] {
        for n in 2..=7 {
            let got = enumerate_configurations(&field(q), n, SignFilter::All, BUDGET)
                .unwrap()
                .count();
            let expected = formulas::count_configurations(q, n);
            if big(got) != expected {
                bad.push(format!("q={q} n={n}: {got} vs {expected}"));
            }
        }
    }
    verdict(
        bad,
        "configuration counts match for q in {2,3,4,5}, n = 2..=7",
    )
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    for q in [2u64, 3] {
        for n in 2..=7 {
            let got = pgl2_orbit_count(&field(q), n, SignFilter::All, BUDGET)
                .unwrap()
                .orbit_count();
            let expected = formulas::count_moduli(q, n).unwrap();
            if big(got) != expected {
                bad.push(format!("q={q} n={n}: {got} vs {expected}"));
            }
        }
    }
    verdict(bad, "orbit counts match for q in {2,3}, n = 2..=7")
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    let mut branches = BTreeSet::new();
    for q in [2u64, 3, 4, 5] {
        let f = field(q);
        for m in 1..=3u32 {
            branches.insert((f.is_char_two(), m % 2));
            let got = pgl2_orbit_count(&f, 2 * m as usize, SignFilter::Plus, BUDGET)
                .unwrap()
                .orbit_count();
            let expected = formulas::count_moduli_plus(q, f.is_char_two(), m);
            if big(got) != expected {
                bad.push(format!("q={q} m={m}: {got} vs {expected}"));
            }
        }
    }
    if branches.len() != 4 {
        bad.push(format!("only {} branches covered", branches.len()));
    }
    verdict(bad, "plus-part orbit counts match in all four branches")
}

fn criterion_6(cache: &mut Cache) -> Outcome {
    let mut bad = Vec::new();
    let mut friezes = 0;
    let mut reps = 0;
    for q in [2u64, 3] {
        let f = field(q);
        let group = GroupAction::new(&f);
        for w in 1..=3 {
            let n = w + 3;
            for entries in cache.get(q, w).tuples.clone().unwrap() {
                friezes += 1;
                let row = FirstRow::new(&f, entries.clone()).unwrap();
                let back = frieze_to_configuration(&row).and_then(|c| configuration_to_frieze(&c));
                let expected = if n % 2 == 0 {
                    canonical_rescaling(&f, &entries)
                } else {
                    entries.clone()
                };
                if back.as_ref().map(|r| r.entries()) != Ok(expected.as_slice()) {
                    bad.push(format!("q={q} row {:?}", row.codes()));
                }
            }
            let filter = if n % 2 == 0 {
                SignFilter::Plus
            } else {
                SignFilter::All
            };
            for (rep, _) in pgl2_orbit_count(&f, n, filter, BUDGET).unwrap().orbits {
                reps += 1;
                let back = configuration_to_frieze(&rep).and_then(|r| frieze_to_configuration(&r));
                match back {
                    Ok(c) if group.canonical(&c.indices()) == group.canonical(&rep.indices()) => {}
                    _ => bad.push(format!("q={q} configuration {rep}")),
                }
            }
        }
    }
    verdict(
        bad,
        &format!("{friezes} friezes and {reps} orbit representatives round-trip"),
    )
}

fn sizes(cache: &mut Cache, q: u64, w: usize) -> Vec<usize> {
    let mut s: Vec<usize> = cache.get(q, w).orbits.iter().map(|o| o.1).collect();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

fn criterion_7(cache: &mut Cache) -> Outcome {
    let mut bad = Vec::new();
    let expect: [(u64, usize, &[usize]); 4] = [
        (2, 2, &[5]),
        (4, 2, &[10, 5, 1, 1]),
        (2, 3, &[6, 3, 1, 1]),
        (3, 3, &[12, 6, 6, 6, 2, 2, 1]),
    ];
    for (q, w, want) in expect {
        let got = sizes(cache, q, w);
        if got != want {
            bad.push(format!("q={q} w={w}: {got:?}"));
        }
    }
    let f3 = sizes(cache, 3, 2);
    if f3.len() != 2 || f3.iter().sum::<usize>() != 10 {
        bad.push(format!("q=3 w=2: {f3:?}"));
    }
    verdict(bad, "all five orbit-size multisets match")
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    for n in 2..=12 {
        for k in 2..=n {
            let brute = count_cyclic_partitions(n, k);
            let closed = a_kn_closed_form(k, n).unwrap();
            if closed != brute.into() {
                bad.push(format!("A({k},{n}): {brute} vs {closed}"));
            }
        }
    }
    for q in PRIME_POWERS {
        for n in 2..=10 {
            let lhs = formulas::count_configurations(q, n);
            let rhs = configuration_count_from_partitions(q, n);
            if rhs != lhs.clone().into() {
                bad.push(format!("identity q={q} n={n}: {lhs} vs {rhs}"));
            }
        }
    }
    verdict(
        bad,
        "A(k,n) for 2 <= k <= n <= 12 and the identity for q <= 9, n <= 10",
    )
}

fn criterion_9(cache: &mut Cache) -> Outcome {
    let f: Vec<u64> = (1..=7).map(|w| cache.get(2, w).total_count).collect();
    let bad: Vec<String> = (3..=7)
        .filter(|&n| f[n - 1] != f[n - 2] + 2 * f[n - 3])
        .map(|n| format!("n={n}: {} != {} + 2*{}", f[n - 1], f[n - 2], f[n - 3]))
        .collect();
    verdict(bad, &format!("f_1..f_7 = {f:?}"))
}

fn field_axioms(f: &Field) -> bool {
    let els: Vec<Elem> = f.elements().collect();
    let (zero, one) = (f.zero(), f.one());
    for &a in &els {
        if f.add(a, zero) != a || f.mul(a, one) != a || f.add(a, f.neg(a)) != zero {
            return false;
        }
        if !a.is_zero() && f.mul(a, f.inv(a).unwrap()) != one {
            return false;
        }
        for &b in &els {
            if f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a) {
                return false;
            }
            for &c in &els {
                if f.add(f.add(a, b), c) != f.add(a, f.add(b, c))
                    || f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))
                    || f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))
                {
                    return false;
                }
            }
        }
    }
    true
}

fn criterion_10(cache: &mut Cache) -> Outcome {
    let mut bad = Vec::new();
    for q in PRIME_POWERS {
        if !field_axioms(&field(q)) {
            bad.push(format!("field axioms q={q}"));
        }
    }

    let mut checked = 0;
    for q in PRIME_POWERS {
        let f = field(q);
        for w in 1..=5 {
            for t in cache.get(q, w).tuples.clone().unwrap() {
                checked += 1;
                let fr = Frieze::from_first_row(FirstRow::new(&f, t.clone()).unwrap()).unwrap();
                if !fr.is_glide_invariant() || !fr.is_periodic() {
                    bad.push(format!(
                        "glide/periodicity q={q} {:?}",
                        fr.first_row().codes()
                    ));
                }
            }
        }
    }

    // dihedral invariance over every tuple of small length
    for (q, max_n) in [(2u64, 8usize), (3, 6), (4, 5)] {
        let f = field(q);
        let els: Vec<Elem> = f.elements().collect();
        for n in 3..=max_n {
            let mut t = vec![Elem::ZERO; n];
            for code in 0..(q as usize).pow(n as u32) {
                let mut c = code;
                for slot in t.iter_mut() {
                    *slot = els[c % q as usize];
                    c /= q as usize;
                }
                let base = matrix_criterion(&f, &t).0;
                if dihedral_images(&t).any(|img| matrix_criterion(&f, &img).0 != base) {
                    bad.push(format!("dihedral q={q} {t:?}"));
                }
            }
        }
    }

    let mut pairs = 0;
    for q in PRIME_POWERS {
        let f = field(q);
        let mut w = 1;
        while (q as f64).powi(w as i32 + 3) <= 1e6 {
            pairs += 1;
            let naive = enumerate_friezes(&f, w, Strategy::Naive, &opts()).unwrap();
            let mitm = enumerate_friezes(&f, w, Strategy::Mitm, &opts()).unwrap();
            if naive.tuples != mitm.tuples || naive.orbits != mitm.orbits {
                bad.push(format!("strategies differ q={q} w={w}"));
            }
            w += 1;
        }
    }
    verdict(
        bad,
        &format!(
            "field axioms q<=9; glide and periodicity on {checked} friezes; \
             dihedral invariance; naive = mitm on {pairs} (q, w) pairs"
        ),
    )
}

fn verdict(bad: Vec<String>, ok: &str) -> Outcome {
    if bad.is_empty() {
        Ok(ok.to_string())
    } else {
        Err(bad.join("; "))
    }
}

fn main() -> ExitCode {
    let mut cache = Cache {
        results: BTreeMap::new(),
    };
    let criteria: Vec<(u32, &str, Criterion)> = vec![
        (1, "frieze count table", Box::new(criterion_1)),
        (
            2,
            "enumeration vs closed form, q <= 9, w <= 5",
            Box::new(criterion_2),
        ),
        (3, "configuration counts", Box::new(|_| criterion_3())),
        (4, "moduli orbit counts", Box::new(|_| criterion_4())),
        (5, "plus-part orbit counts", Box::new(|_| criterion_5())),
        (6, "frieze/configuration round trips", Box::new(criterion_6)),
        (7, "orbit catalogs", Box::new(criterion_7)),
        (8, "cyclic partitions", Box::new(|_| criterion_8())),
        (9, "Jacobsthal recursion at q = 2", Box::new(criterion_9)),
        (10, "property suites", Box::new(criterion_10)),
    ];

    let mut unexpected = 0;
    for (id, name, run) in &criteria {
        let start = Instant::now();
        let outcome = run(&mut cache);
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| k == id);
        match (&outcome, known) {
            (Ok(detail), None) => println!("criterion {id:>2} PASS  {name}: {detail} [{secs:.1}s]"),
            (Err(detail), Some((_, why))) => {
                println!("criterion {id:>2} FAIL  {name}: {detail} [{secs:.1}s]");
                println!("             known: {why}");
            }
            (Err(detail), None) => {
                unexpected += 1;
                println!("criterion {id:>2} FAIL  {name}: {detail} [{secs:.1}s]");
            }
            (Ok(detail), Some(_)) => {
                unexpected += 1;
                println!("criterion {id:>2} PASS  {name}: {detail} [{secs:.1}s] (listed as a known failure)");
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
