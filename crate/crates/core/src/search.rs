//! Exhaustive enumeration of the first rows `(a_1, ..., a_n)` over `F_q`
//! with `M(a_n) ... M(a_1) = -Id`, i.e. all tame friezes of width `n - 3`.
//!
//! The meet-in-the-middle strategy splits `n = n_L + n_R` with
//! `n_L = ceil(n / 2)`. Right halves are indexed by their product `P_R`;
//! a left half with product `P_L` matches exactly the right halves with
//! `P_R = -P_L^{-1}`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::formulas;
use crate::frieze::{frieze_symmetries, step_matrix};
use crate::gf::{Elem, Field, Mat2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("width must be at least 1, got {0}")]
    InvalidWidth(usize),
    #[error("estimated work {estimated} matrix products exceeds the budget {budget}")]
    BudgetExceeded { estimated: u128, budget: u64 },
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Naive,
    Mitm,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Cap on estimated matrix multiplications.
    pub budget: u64,
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
    /// Solutions are kept as a full list only up to this many.
    pub tuple_threshold: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: crate::DEFAULT_BUDGET,
            workers: 0,
            tuple_threshold: 1_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub field: Field,
    pub width: usize,
    pub total_count: u64,
    /// Every solution, sorted by element codes; `None` above the threshold.
    pub tuples: Option<Vec<Vec<Elem>>>,
    /// Canonical dihedral representatives with orbit sizes, sorted.
    pub orbits: Vec<(Vec<Elem>, usize)>,
    pub elapsed: Duration,
}

/// Estimated matrix multiplications for one search.
pub fn estimate_work(q: u64, n: usize, strategy: Strategy) -> u128 {
    let geometric = |len: usize| (1..=len as u32).map(|i| (q as u128).pow(i)).sum::<u128>();
    match strategy {
        Strategy::Naive => geometric(n - 1),
        Strategy::Mitm => {
            let left = n.div_ceil(2);
            geometric(left) + geometric(n - left)
        }
    }
}

/// Depth-first walk over all tuples of length `len`, tracking the product
/// `M(x_len) ... M(x_1)` of the prefix.
fn walk(
    field: &Field,
    steps: &[Mat2],
    len: usize,
    prefix: &mut Vec<Elem>,
    prod: Mat2,
    leaf: &mut impl FnMut(&[Elem], &Mat2),
) {
    if prefix.len() == len {
        leaf(prefix, &prod);
        return;
    }
    for (a, step) in field.elements().zip(steps) {
        prefix.push(a);
        walk(field, steps, len, prefix, field.mat_mul(step, &prod), leaf);
        prefix.pop();
    }
}

/// `-P^{-1}` for `det P = 1`.
fn neg_inverse(field: &Field, p: &Mat2) -> Mat2 {
    Mat2 {
        a: field.neg(p.d),
        b: p.b,
        c: p.c,
        d: field.neg(p.a),
    }
}

/// Per-chunk partial result.
#[derive(Default)]
struct Partial {
    count: u64,
    tuples: Option<Vec<Vec<Elem>>>,
    orbits: Vec<(Vec<Elem>, usize)>,
}

struct Collector {
    threshold: usize,
    part: Partial,
}

impl Collector {
    fn new(threshold: usize) -> Self {
        Collector {
            threshold,
            part: Partial {
                tuples: Some(Vec::new()),
                ..Partial::default()
            },
        }
    }

    fn push(&mut self, sol: Vec<Elem>) {
        self.part.count += 1;
        let sym = frieze_symmetries(&sol);
        if sym.canonical == sol {
            self.part.orbits.push((sol.clone(), sym.orbit_size));
        }
        if self.part.count as usize > self.threshold {
            self.part.tuples = None;
        } else if let Some(t) = self.part.tuples.as_mut() {
            t.push(sol);
        }
    }
}

fn prefixes(field: &Field, len: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Elem>| {
                field.elements().map(move |a| {
                    let mut v = p.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

fn run_naive(field: &Field, n: usize, threshold: usize) -> Vec<Partial> {
    let steps: Vec<Mat2> = field.elements().map(|a| step_matrix(field, a)).collect();
    let split = 2.min(n - 1);
    prefixes(field, split)
        .into_par_iter()
        .map(|start| {
            let mut col = Collector::new(threshold);
            let prod = start.iter().fold(Mat2::IDENTITY, |acc, &a| {
                field.mat_mul(&steps[a.code() as usize], &acc)
            });
            let minus_one = field.neg(Elem::ONE);
            let mut prefix = start;
            walk(field, &steps, n - 1, &mut prefix, prod, &mut |pre, p| {
                // the last factor must equal -P^{-1} and have the step shape
                let need = neg_inverse(field, p);
                if need.b == minus_one && need.c == Elem::ONE && need.d.is_zero() {
                    let mut sol = pre.to_vec();
                    sol.push(need.a);
                    col.push(sol);
                }
            });
            col.part
        })
        .collect()
}

fn run_mitm(field: &Field, n: usize, threshold: usize) -> Vec<Partial> {
    let steps: Vec<Mat2> = field.elements().map(|a| step_matrix(field, a)).collect();
    let left = n.div_ceil(2);
    let right = n - left;
    let mut table: HashMap<u64, Vec<Vec<Elem>>> = HashMap::new();
    walk(
        field,
        &steps,
        right,
        &mut Vec::new(),
        Mat2::IDENTITY,
        &mut |r, p| {
            table.entry(p.key()).or_default().push(r.to_vec());
        },
    );
    let split = 2.min(left);
    prefixes(field, split)
        .into_par_iter()
        .map(|start| {
            let mut col = Collector::new(threshold);
            let prod = start.iter().fold(Mat2::IDENTITY, |acc, &a| {
                field.mat_mul(&steps[a.code() as usize], &acc)
            });
            let mut prefix = start;
            walk(field, &steps, left, &mut prefix, prod, &mut |l, p| {
                if let Some(rights) = table.get(&neg_inverse(field, p).key()) {
                    for r in rights {
                        let mut sol = l.to_vec();
                        sol.extend_from_slice(r);
                        col.push(sol);
                    }
                }
            });
            col.part
        })
        .collect()
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, SearchError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))
}

/// All first rows of tame friezes of width `w` over `field`, with counts and
/// the dihedral orbit catalog. Output is independent of the worker count.
pub fn enumerate_friezes(
    field: &Field,
    w: usize,
    strategy: Strategy,
    opts: &SearchOptions,
) -> Result<EnumerationResult, SearchError> {
    if w < 1 {
        return Err(SearchError::InvalidWidth(w));
    }
    let n = w + 3;
    let estimated = estimate_work(field.order() as u64, n, strategy);
    if estimated > opts.budget as u128 {
        return Err(SearchError::BudgetExceeded {
            estimated,
            budget: opts.budget,
        });
    }
    let start = Instant::now();
    let parts = pool(opts.workers)?.install(|| match strategy {
        Strategy::Naive => run_naive(field, n, opts.tuple_threshold),
        Strategy::Mitm => run_mitm(field, n, opts.tuple_threshold),
    });

    let total_count: u64 = parts.iter().map(|p| p.count).sum();
    let mut tuples = if total_count as usize <= opts.tuple_threshold {
        Some(Vec::with_capacity(total_count as usize))
    } else {
        None
    };
    let mut orbits = Vec::new();
    for p in parts {
        orbits.extend(p.orbits);
        if let (Some(all), Some(t)) = (tuples.as_mut(), p.tuples) {
            all.extend(t);
        }
    }
    if let Some(t) = tuples.as_mut() {
        t.sort();
    }
    orbits.sort();
    debug_assert_eq!(orbits.iter().map(|o| o.1 as u64).sum::<u64>(), total_count);
    Ok(EnumerationResult {
        field: field.clone(),
        width: w,
        total_count,
        tuples,
        orbits,
        elapsed: start.elapsed(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountCheck {
    pub w: usize,
    pub enumerated: u64,
    pub closed_form: String,
    pub matches: bool,
}

/// Enumerated counts against the closed form for widths `1..=w_max`.
pub fn verify_count_formula(
    field: &Field,
    w_max: usize,
    opts: &SearchOptions,
) -> Result<Vec<CountCheck>, SearchError> {
    (1..=w_max)
        .map(|w| {
            let res = enumerate_friezes(field, w, Strategy::Mitm, opts)?;
            let closed = formulas::count_friezes(field.order() as u64, field.is_char_two(), w)
                .expect("width is positive");
            Ok(CountCheck {
                w,
                enumerated: res.total_count,
                matches: closed == res.total_count.into(),
                closed_form: closed.to_string(),
            })
        })
        .collect()
}

#[derive(Serialize)]
struct OrbitJson {
    rep: Vec<u32>,
    size: usize,
}

#[derive(Serialize)]
struct CatalogJson {
    field: String,
    width: usize,
    count: u64,
    orbits: Vec<OrbitJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogFormat {
    Text,
    Json,
}

/// Orbit catalog, sorted by canonical tuple.
pub fn catalog_orbits(result: &EnumerationResult, format: CatalogFormat) -> String {
    match format {
        CatalogFormat::Json => {
            let doc = CatalogJson {
                field: result.field.descriptor(),
                width: result.width,
                count: result.total_count,
                orbits: result
                    .orbits
                    .iter()
                    .map(|(rep, size)| OrbitJson {
                        rep: rep.iter().map(|e| e.code()).collect(),
                        size: *size,
                    })
                    .collect(),
            };
            serde_json::to_string(&doc).expect("catalog serializes")
        }
        CatalogFormat::Text => {
            let f = &result.field;
            let mut out = String::new();
            writeln!(out, "field: {}", f.descriptor()).unwrap();
            writeln!(out, "width: {}", result.width).unwrap();
            writeln!(out, "count: {}", result.total_count).unwrap();
            writeln!(out, "orbits: {}", result.orbits.len()).unwrap();
            for (rep, size) in &result.orbits {
                let labels: Vec<String> = rep.iter().map(|&e| f.label(e)).collect();
                writeln!(out, "  ({})  size {}", labels.join(","), size).unwrap();
            }
            out
        }
    }
}
