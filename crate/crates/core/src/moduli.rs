//! Configurations of points on `P^1(F_q)`, their `PGL_2` orbits, and the
//! correspondence between configurations and first rows of tame friezes.
//!
//! A configuration `(v_1, ..., v_n)` has no two cyclically adjacent points
//! equal. For even `n` the sign class compares the products of alternate
//! consecutive determinants of any lift, with the wrap-around determinant
//! taken against `-V_1`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::frieze::{matrix_criterion, FirstRow, FriezeError};
use crate::gf::{Elem, Field, Mat2, ProjPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuliError {
    #[error("cyclically adjacent points {0} and {1} coincide")]
    AdjacentEqual(usize, usize),
    #[error("a configuration needs at least 2 points, got {0}")]
    TooShort(usize),
    #[error("sign classes are only defined for even n, got {0}")]
    OddN(usize),
    #[error("sign filter requires even n, got {0}")]
    OddNWithSignFilter(usize),
    #[error("configuration with sign class {0} has no lift with constant determinants")]
    NotLiftable(SignClass),
    #[error("first row does not satisfy the -Id criterion (product {0})")]
    CriterionFails(Mat2),
    #[error("estimated work {estimated} exceeds the budget {budget}")]
    BudgetExceeded { estimated: u128, budget: u64 },
    #[error(transparent)]
    Frieze(#[from] FriezeError),
}

/// An n-tuple of points of `P^1(F_q)` with `v_i != v_{i+1}` cyclically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    field: Field,
    points: Vec<ProjPoint>,
}

impl Configuration {
    pub fn new(field: &Field, points: Vec<ProjPoint>) -> Result<Configuration, ModuliError> {
        let n = points.len();
        if n < 2 {
            return Err(ModuliError::TooShort(n));
        }
        if let Some(i) = (0..n).find(|&i| points[i] == points[(i + 1) % n]) {
            return Err(ModuliError::AdjacentEqual(i + 1, (i + 1) % n + 1));
        }
        Ok(Configuration {
            field: field.clone(),
            points,
        })
    }

    /// Parses a comma-separated list of element codes and `inf`.
    pub fn parse(field: &Field, s: &str) -> Result<Configuration, crate::Error> {
        let points = s
            .split(',')
            .map(|t| ProjPoint::parse(field, t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Configuration::new(field, points)?)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn indices(&self) -> Vec<u32> {
        self.points.iter().map(|p| p.index(&self.field)).collect()
    }

    pub fn distinct_points(&self) -> usize {
        let mut v = self.points.clone();
        v.sort();
        v.dedup();
        v.len()
    }

    /// Image under a matrix acting on every point.
    pub fn transform(&self, m: &Mat2) -> Configuration {
        Configuration {
            field: self.field.clone(),
            points: self.points.iter().map(|&p| self.field.act(m, p)).collect(),
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignClass {
    Plus,
    Minus,
    Other,
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SignClass::Plus => "plus",
            SignClass::Minus => "minus",
            SignClass::Other => "other",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignFilter {
    All,
    Plus,
    Minus,
}

/// Consecutive determinants `det(V_i, V_{i+1})` of the default lift, the
/// last one taken against `-V_1`.
fn chain_dets(field: &Field, vs: &[[Elem; 2]]) -> Vec<Elem> {
    let n = vs.len();
    (0..n)
        .map(|i| {
            let next = if i + 1 == n {
                [field.neg(vs[0][0]), field.neg(vs[0][1])]
            } else {
                vs[i + 1]
            };
            field.det2(vs[i], next)
        })
        .collect()
}

/// Products of the determinants at odd and even (1-based) positions.
fn alternating_products(field: &Field, dets: &[Elem]) -> (Elem, Elem) {
    let mut odd = Elem::ONE;
    let mut even = Elem::ONE;
    for (i, &d) in dets.iter().enumerate() {
        if i % 2 == 0 {
            odd = field.mul(odd, d);
        } else {
            even = field.mul(even, d);
        }
    }
    (odd, even)
}

fn default_lift(c: &Configuration) -> Vec<[Elem; 2]> {
    c.points.iter().map(|p| p.coords()).collect()
}

fn membership(c: &Configuration) -> (bool, bool) {
    let f = &c.field;
    let dets = chain_dets(f, &default_lift(c));
    let (odd, even) = alternating_products(f, &dets);
    (odd == even, odd == f.neg(even))
}

/// Plus when the lift system is consistent, minus when it is consistent up
/// to a global sign flip, other otherwise. In characteristic 2 plus and
/// minus coincide and the result is reported as plus.
pub fn sign_class(c: &Configuration) -> Result<SignClass, ModuliError> {
    if c.len() % 2 == 1 {
        return Err(ModuliError::OddN(c.len()));
    }
    Ok(match membership(c) {
        (true, _) => SignClass::Plus,
        (false, true) => SignClass::Minus,
        _ => SignClass::Other,
    })
}

fn passes(c: &Configuration, filter: SignFilter) -> bool {
    match filter {
        SignFilter::All => true,
        SignFilter::Plus => membership(c).0,
        SignFilter::Minus => membership(c).1,
    }
}

/// Streams configurations in lexicographic order of point indices.
pub struct Configurations {
    field: Field,
    points: Vec<ProjPoint>,
    filter: SignFilter,
    idx: Vec<u32>,
    state: IterState,
}

#[derive(PartialEq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

impl Configurations {
    fn allowed(&self, pos: usize, v: u32) -> bool {
        let n = self.idx.len();
        (pos == 0 || v != self.idx[pos - 1]) && (pos + 1 != n || v != self.idx[0])
    }

    fn fill_from(&mut self, start: usize) {
        for pos in start..self.idx.len() {
            let v = (0..self.points.len() as u32)
                .find(|&v| self.allowed(pos, v))
                .expect("P^1 has at least three points");
            self.idx[pos] = v;
        }
    }

    fn advance(&mut self) -> bool {
        let m = self.points.len() as u32;
        let mut pos = self.idx.len();
        while pos > 0 {
            pos -= 1;
            let mut v = self.idx[pos] + 1;
            while v < m && !self.allowed(pos, v) {
                v += 1;
            }
            if v < m {
                self.idx[pos] = v;
                self.fill_from(pos + 1);
                return true;
            }
        }
        false
    }
}

impl Iterator for Configurations {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        loop {
            match self.state {
                IterState::Done => return None,
                IterState::Fresh => {
                    self.idx[0] = 0;
                    self.fill_from(1);
                    self.state = IterState::Running;
                }
                IterState::Running => {
                    if !self.advance() {
                        self.state = IterState::Done;
                        return None;
                    }
                }
            }
            let cfg = Configuration {
                field: self.field.clone(),
                points: self.idx.iter().map(|&i| self.points[i as usize]).collect(),
            };
            if passes(&cfg, self.filter) {
                return Some(cfg);
            }
        }
    }
}

fn check_budget(estimated: u128, budget: u64) -> Result<(), ModuliError> {
    if estimated > budget as u128 {
        Err(ModuliError::BudgetExceeded { estimated, budget })
    } else {
        Ok(())
    }
}

/// All of `C_n(F_q)`, or `C_n^+` / `C_n^-` when filtered. Work is estimated
/// as `(q + 1)^n`.
pub fn enumerate_configurations(
    field: &Field,
    n: usize,
    filter: SignFilter,
    budget: u64,
) -> Result<Configurations, ModuliError> {
    if n < 2 {
        return Err(ModuliError::TooShort(n));
    }
    if filter != SignFilter::All && n % 2 == 1 {
        return Err(ModuliError::OddNWithSignFilter(n));
    }
    check_budget((field.order() as u128 + 1).pow(n as u32), budget)?;
    Ok(Configurations {
        field: field.clone(),
        points: field.p1_points(),
        filter,
        idx: vec![0; n],
        state: IterState::Fresh,
    })
}

/// `PGL_2(F_q)` as permutations of point indices.
pub struct GroupAction {
    perms: Vec<Vec<u32>>,
}

impl GroupAction {
    pub fn new(field: &Field) -> GroupAction {
        let pts = field.p1_points();
        let perms = field
            .pgl2_elements()
            .iter()
            .map(|g| pts.iter().map(|&p| field.act(g, p).index(field)).collect())
            .collect();
        GroupAction { perms }
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    /// Lexicographically least image of an index tuple under the group.
    pub fn canonical(&self, idx: &[u32]) -> Vec<u32> {
        let mut best = idx.to_vec();
        let mut img = vec![0; idx.len()];
        for perm in &self.perms {
            for (o, &i) in img.iter_mut().zip(idx) {
                *o = perm[i as usize];
            }
            if img < best {
                best.copy_from_slice(&img);
            }
        }
        best
    }
}

/// Orbit census of a configuration space under `PGL_2(F_q)`.
#[derive(Debug, Clone)]
pub struct OrbitReport {
    pub configurations: usize,
    /// Canonical representative and orbit size, sorted by representative.
    pub orbits: Vec<(Configuration, usize)>,
}

impl OrbitReport {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }
}

/// Splits the (filtered) configuration space into `PGL_2` orbits by
/// mapping every configuration to its least image.
pub fn pgl2_orbit_count(
    field: &Field,
    n: usize,
    filter: SignFilter,
    budget: u64,
) -> Result<OrbitReport, ModuliError> {
    let configs: Vec<Vec<u32>> = enumerate_configurations(field, n, filter, budget)?
        .map(|c| c.indices())
        .collect();
    let group = GroupAction::new(field);
    let canon: Vec<Vec<u32>> = configs.par_iter().map(|c| group.canonical(c)).collect();
    let mut sizes: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for c in canon {
        *sizes.entry(c).or_default() += 1;
    }
    let orbits = sizes
        .into_iter()
        .map(|(idx, size)| {
            let points = idx
                .iter()
                .map(|&i| ProjPoint::from_index(field, i).unwrap())
                .collect();
            (
                Configuration {
                    field: field.clone(),
                    points,
                },
                size,
            )
        })
        .collect();
    Ok(OrbitReport {
        configurations: configs.len(),
        orbits,
    })
}

/// Vectors `V_i` over the points with `det(V_i, V_{i+1}) = det(V_n, -V_1)`
/// equal to the common value `det`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lift {
    pub vectors: Vec<[Elem; 2]>,
    pub det: Elem,
}

impl Lift {
    /// Checks the determinant chain and that each vector projects to its point.
    pub fn is_valid_for(&self, c: &Configuration) -> bool {
        let f = &c.field;
        self.vectors.len() == c.len()
            && !self.det.is_zero()
            && chain_dets(f, &self.vectors).iter().all(|&d| d == self.det)
            && self
                .vectors
                .iter()
                .zip(&c.points)
                .all(|(v, &p)| f.proj(v[0], v[1]) == Some(p))
    }
}

/// Rescales the default lift `(x, 1)` / `(1, 0)` so consecutive determinants
/// are constant. For odd `n` the constant is chosen to make `lambda_1 = 1`;
/// for even `n` it is 1 with `lambda_1 = 1`, which works only on `C_n^+`.
pub fn lift_configuration(c: &Configuration) -> Result<Lift, ModuliError> {
    let f = &c.field;
    let n = c.len();
    let base = default_lift(c);
    let dets = chain_dets(f, &base);
    let target = if n % 2 == 1 {
        // lambda_1^2 = (prod odd det^-1 / prod even det^-1) * c = 1
        let (odd, even) = alternating_products(f, &dets);
        f.div(odd, even).expect("determinants are nonzero")
    } else {
        Elem::ONE
    };
    // lambda_i lambda_{i+1} = target / det_i
    let mut lambdas = vec![Elem::ONE; n];
    for i in 0..n - 1 {
        let rhs = f.div(target, dets[i]).expect("determinants are nonzero");
        lambdas[i + 1] = f.div(rhs, lambdas[i]).unwrap();
    }
    let closing = f.mul(f.mul(lambdas[n - 1], lambdas[0]), dets[n - 1]);
    if closing != target {
        return Err(ModuliError::NotLiftable(sign_class(c)?));
    }
    let vectors = base
        .iter()
        .zip(&lambdas)
        .map(|(v, &l)| [f.mul(l, v[0]), f.mul(l, v[1])])
        .collect();
    let lift = Lift {
        vectors,
        det: target,
    };
    debug_assert!(lift.is_valid_for(c));
    Ok(lift)
}

/// `a_i` from `V_i = a_i V_{i-1} - V_{i-2}` with `V_0 = -V_n`,
/// `V_{-1} = -V_{n-1}`: `a_i = det(V_{i-2}, V_i) / det`.
pub fn coefficients_from_lift(field: &Field, lift: &Lift) -> Vec<Elem> {
    let n = lift.vectors.len();
    let neg = |v: [Elem; 2]| [field.neg(v[0]), field.neg(v[1])];
    let at = |i: isize| -> [Elem; 2] {
        if i >= 1 {
            lift.vectors[(i - 1) as usize]
        } else {
            neg(lift.vectors[(i + n as isize - 1) as usize])
        }
    };
    (1..=n as isize)
        .map(|i| {
            field
                .div(field.det2(at(i - 2), at(i)), lift.det)
                .expect("lift determinant is nonzero")
        })
        .collect()
}

/// `(l a_1, a_2 / l, l a_3, ...)`.
pub fn rescale(field: &Field, a: &[Elem], lambda: Elem) -> Vec<Elem> {
    let inv = field.inv(lambda).expect("rescaling factor is nonzero");
    a.iter()
        .enumerate()
        .map(|(i, &x)| field.mul(x, if i % 2 == 0 { lambda } else { inv }))
        .collect()
}

/// Least tuple in the rescaling class of `a` (for even `n`).
pub fn canonical_rescaling(field: &Field, a: &[Elem]) -> Vec<Elem> {
    field
        .elements()
        .skip(1)
        .map(|l| rescale(field, a, l))
        .min()
        .expect("F_q^* is non-empty")
}

/// First row of the frieze attached to a configuration. For even `n` the
/// row is only defined up to rescaling and the least representative is
/// returned.
pub fn configuration_to_frieze(c: &Configuration) -> Result<FirstRow, ModuliError> {
    let f = &c.field;
    let lift = lift_configuration(c)?;
    let mut a = coefficients_from_lift(f, &lift);
    debug_assert!(matrix_criterion(f, &a).0);
    if c.len().is_multiple_of(2) {
        a = canonical_rescaling(f, &a);
    }
    Ok(FirstRow::new(f, a)?)
}

/// Vectors `(E(i-1, 2), E(i, 1))` read off the first two South-East
/// diagonals, ending `(1, 0), (0, -1)`.
pub fn frieze_vectors(field: &Field, a: &[Elem]) -> Vec<[Elem; 2]> {
    let n = a.len();
    // diagonal starting at a_1: D_0 = 1, D_1 = a_1, ...
    let mut first = vec![Elem::ZERO, Elem::ONE];
    let mut second = vec![Elem::ZERO, Elem::ONE];
    for i in 1..=n {
        let next1 = field.sub(field.mul(a[(i - 1) % n], first[i]), first[i - 1]);
        first.push(next1);
        let next2 = field.sub(field.mul(a[i % n], second[i]), second[i - 1]);
        second.push(next2);
    }
    // first[j] = E(j - 1, 1), second[j] = E(j - 1, 2)
    (1..=n).map(|i| [second[i], first[i + 1]]).collect()
}

/// The configuration attached to a first row satisfying the criterion.
pub fn frieze_to_configuration(row: &FirstRow) -> Result<Configuration, ModuliError> {
    let f = row.field();
    let (ok, prod) = matrix_criterion(f, row.entries());
    if !ok {
        return Err(ModuliError::CriterionFails(prod));
    }
    let points = frieze_vectors(f, row.entries())
        .into_iter()
        .map(|v| f.proj(v[0], v[1]).expect("frieze vectors are nonzero"))
        .collect();
    Configuration::new(f, points)
}
