//! Tame friezes over `F_q`: construction from the first row, the `-Id`
//! matrix criterion, tameness, and dihedral symmetries of first rows.
//!
//! Indexing: columns are 0-based and taken mod `n = w + 3`. The entry in
//! row `r` and column `c` is the continuant of `a[c], a[c+1], ..., a[c+r-1]`,
//! i.e. the `r`-th term of the South-East diagonal that starts at `a[c]`.
//! In the staggered layout that entry sits at half-step position `2c + r`,
//! so the diamond around rows `r-1..=r+1` reads
//!
//! ```text
//!              E(r-1, c+1)
//!     E(r, c)              E(r, c+1)
//!              E(r+1, c)
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Elem, Field, FieldError, Mat2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FriezeError {
    #[error("a first row needs at least 3 entries, got {0}")]
    TooShort(usize),
    #[error("first row does not close up into a frieze: product is {0}, not -Id")]
    NotAFrieze(Mat2),
    #[error("malformed frieze json: {0}")]
    Json(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The cycle `(a_1, ..., a_n)` of first-row entries, `n = width + 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstRow {
    field: Field,
    entries: Vec<Elem>,
}

impl FirstRow {
    pub fn new(field: &Field, entries: Vec<Elem>) -> Result<FirstRow, FriezeError> {
        if entries.len() < 3 {
            return Err(FriezeError::TooShort(entries.len()));
        }
        Ok(FirstRow {
            field: field.clone(),
            entries,
        })
    }

    /// Convenience constructor from element codes; panics on codes `>= q`.
    pub fn from_codes(field: &Field, codes: &[u32]) -> Result<FirstRow, FriezeError> {
        let entries = codes
            .iter()
            .map(|&c| field.elem(c).expect("element code out of range"))
            .collect();
        FirstRow::new(field, entries)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn codes(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.code()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn width(&self) -> usize {
        self.entries.len() - 3
    }
}

/// `[[a, -1], [1, 0]]`.
#[inline]
pub fn step_matrix(field: &Field, a: Elem) -> Mat2 {
    Mat2 {
        a,
        b: field.neg(Elem::ONE),
        c: Elem::ONE,
        d: Elem::ZERO,
    }
}

/// `M(a_n) ... M(a_2) M(a_1)`, multiplied right to left.
pub fn row_product(field: &Field, entries: &[Elem]) -> Mat2 {
    entries.iter().fold(Mat2::IDENTITY, |acc, &a| {
        field.mat_mul(&step_matrix(field, a), &acc)
    })
}

/// Whether the tuple satisfies `M(a_n) ... M(a_1) = -Id`, along with the
/// product itself. Accepts tuples of any length.
pub fn matrix_criterion(field: &Field, entries: &[Elem]) -> (bool, Mat2) {
    let prod = row_product(field, entries);
    (prod == field.mat_neg(&Mat2::IDENTITY), prod)
}

/// A tame frieze of width `w` over one fundamental period of `n = w + 3`
/// columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frieze {
    first_row: FirstRow,
    width: usize,
    /// Rows `-1 ..= w + 2`; `rows[r + 1]` holds row `r`.
    rows: Vec<Vec<Elem>>,
}

impl Frieze {
    /// Builds every South-East diagonal by `D_{i+1} = a D_i - D_{i-1}` and
    /// accepts the row iff the array closes up (rows `w+1` all 1, `w+2` all 0).
    pub fn from_first_row(row: FirstRow) -> Result<Frieze, FriezeError> {
        let field = row.field.clone();
        let n = row.len();
        let w = n - 3;
        let a = &row.entries;
        let mut rows = vec![vec![Elem::ZERO; n]; w + 4];
        for c in 0..n {
            let (mut prev, mut cur) = (Elem::ZERO, Elem::ONE);
            rows[0][c] = prev;
            rows[1][c] = cur;
            for r in 1..=w + 2 {
                let next = field.sub(field.mul(a[(c + r - 1) % n], cur), prev);
                prev = cur;
                cur = next;
                rows[r + 1][c] = cur;
            }
        }
        let closes =
            rows[w + 2].iter().all(|&e| e == Elem::ONE) && rows[w + 3].iter().all(|e| e.is_zero());
        if !closes {
            return Err(FriezeError::NotAFrieze(row_product(&field, a)));
        }
        Ok(Frieze {
            first_row: row,
            width: w,
            rows,
        })
    }

    pub fn field(&self) -> &Field {
        &self.first_row.field
    }

    pub fn first_row(&self) -> &FirstRow {
        &self.first_row
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Period `n = w + 3`.
    pub fn period(&self) -> usize {
        self.width + 3
    }

    /// Stored rows `-1 ..= w + 2`.
    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    /// Entry of row `r` at column `c` for `-2 <= r <= w + 3`; the outermost
    /// rows are the implied rows of `-1`.
    pub fn entry(&self, r: isize, c: isize) -> Elem {
        let w = self.width as isize;
        assert!(
            (-2..=w + 3).contains(&r),
            "row {r} outside the extended frieze"
        );
        if r == -2 || r == w + 3 {
            return self.field().neg(Elem::ONE);
        }
        let n = self.period() as isize;
        self.rows[(r + 1) as usize][c.rem_euclid(n) as usize]
    }

    /// Checks `E(r, c) = E(w + 1 - r, c + r + 1)` on every stored entry.
    pub fn is_glide_invariant(&self) -> bool {
        let w = self.width as isize;
        let n = self.period() as isize;
        (-1..=w + 2).all(|r| (0..n).all(|c| self.entry(r, c) == self.entry(w + 1 - r, c + r + 1)))
    }

    /// Every South-East diagonal, continued by its recursion through the
    /// border rows for two full periods, satisfies `D_{i+n} = -D_i`.
    pub fn is_periodic(&self) -> bool {
        let f = self.field();
        let n = self.period();
        let a = self.first_row.entries();
        (0..n).all(|c| {
            let mut diag = vec![Elem::ZERO, Elem::ONE];
            for i in 1..2 * n {
                let next = f.sub(f.mul(a[(c + i - 1) % n], diag[i]), diag[i - 1]);
                diag.push(next);
            }
            // diag[j] is D_{j-1}
            (0..n).all(|j| diag[j + n] == f.neg(diag[j]))
        })
    }

    /// Unimodular rule on every diamond whose four entries are stored.
    pub fn is_unimodular(&self) -> bool {
        let f = self.field();
        let w = self.width as isize;
        let n = self.period() as isize;
        (0..=w + 1).all(|r| {
            (0..n).all(|c| {
                let left = self.entry(r, c);
                let right = self.entry(r, c + 1);
                let top = self.entry(r - 1, c + 1);
                let bottom = self.entry(r + 1, c);
                f.sub(f.mul(left, right), f.mul(top, bottom)) == Elem::ONE
            })
        })
    }

    /// The 3x3 diamond centred at `(r, c)`, rows running up-right.
    pub fn diamond3(&self, r: isize, c: isize) -> [[Elem; 3]; 3] {
        [
            [
                self.entry(r, c - 1),
                self.entry(r - 1, c),
                self.entry(r - 2, c + 1),
            ],
            [
                self.entry(r + 1, c - 1),
                self.entry(r, c),
                self.entry(r - 1, c + 1),
            ],
            [
                self.entry(r + 2, c - 1),
                self.entry(r + 1, c),
                self.entry(r, c + 1),
            ],
        ]
    }
}

/// Outcome of a tameness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TamenessReport {
    pub ok: bool,
    /// `(row, column)` of the first 3x3 diamond whose rank is not 2.
    pub witness: Option<(isize, isize)>,
    pub diamonds_checked: usize,
}

fn rank3(field: &Field, m: &[[Elem; 3]; 3]) -> usize {
    let mut rows: Vec<[Elem; 3]> = m.to_vec();
    let mut rank = 0;
    for col in 0..3 {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]).unwrap();
        let pivot_row = rows[rank];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let factor = field.mul(row[col], inv);
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(factor, p));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank-2 check on the 3x3 diamonds with a zero centre, which is all that
/// tameness requires once the diagonal recursion holds.
pub fn check_tame(f: &Frieze) -> TamenessReport {
    tameness(f, false)
}

/// Rank-2 check on every 3x3 diamond of the array extended by the rows of
/// `-1`, including those with a nonzero centre.
pub fn check_tame_all_diamonds(f: &Frieze) -> TamenessReport {
    tameness(f, true)
}

fn tameness(f: &Frieze, all: bool) -> TamenessReport {
    let w = f.width as isize;
    let n = f.period() as isize;
    let centre_rows = if all { 0..=w + 1 } else { 1..=w };
    let mut checked = 0;
    for r in centre_rows {
        for c in 0..n {
            if !all && !f.entry(r, c).is_zero() {
                continue;
            }
            checked += 1;
            if rank3(f.field(), &f.diamond3(r, c)) != 2 {
                return TamenessReport {
                    ok: false,
                    witness: Some((r, c)),
                    diamonds_checked: checked,
                };
            }
        }
    }
    TamenessReport {
        ok: true,
        witness: None,
        diamonds_checked: checked,
    }
}

/// Canonical representative and orbit size of a first row under rotations
/// and reversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetries {
    pub canonical: Vec<Elem>,
    /// Whether the canonical tuple is only reached through a reversal.
    pub reversed: bool,
    pub orbit_size: usize,
}

/// All `2n` images of `a` under the dihedral group: rotations first, then
/// rotations of the reversal `(a_n, ..., a_1)`.
pub fn dihedral_images(a: &[Elem]) -> impl Iterator<Item = Vec<Elem>> + '_ {
    let n = a.len();
    let rev: Vec<Elem> = a.iter().rev().copied().collect();
    (0..n)
        .map(move |s| (0..n).map(|i| a[(i + s) % n]).collect())
        .chain((0..n).map(move |s| (0..n).map(|i| rev[(i + s) % n]).collect()))
}

/// Lexicographically smallest dihedral image; ties go to the non-reversed
/// rotation.
pub fn canonical_form(a: &[Elem]) -> Vec<Elem> {
    frieze_symmetries(a).canonical
}

pub fn frieze_symmetries(a: &[Elem]) -> Symmetries {
    let n = a.len();
    let mut best: Option<(Vec<Elem>, bool)> = None;
    let mut seen = std::collections::BTreeSet::new();
    for (i, img) in dihedral_images(a).enumerate() {
        let reversed = i >= n;
        if best.as_ref().is_none_or(|(b, _)| img < *b) {
            best = Some((img.clone(), reversed));
        }
        seen.insert(img);
    }
    let (canonical, reversed) = best.expect("non-empty tuple");
    Symmetries {
        canonical,
        reversed,
        orbit_size: seen.len(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Json,
}

#[derive(Serialize, Deserialize)]
struct FriezeJson {
    field: String,
    width: usize,
    first_row: Vec<u32>,
    rows: Vec<Vec<u32>>,
}

/// Text: one fundamental domain in the staggered layout, rows `0..=w+1`.
/// Json: `{field, width, first_row, rows}` with rows `-1..=w+2` as codes.
pub fn render_frieze(f: &Frieze, format: RenderFormat) -> String {
    match format {
        RenderFormat::Text => render_text(f),
        RenderFormat::Json => {
            let doc = FriezeJson {
                field: f.field().descriptor(),
                width: f.width,
                first_row: f.first_row.codes(),
                rows: f
                    .rows
                    .iter()
                    .map(|r| r.iter().map(|e| e.code()).collect())
                    .collect(),
            };
            serde_json::to_string(&doc).expect("frieze json serializes")
        }
    }
}

fn render_text(f: &Frieze) -> String {
    let field = f.field();
    let w = f.width;
    let cw = field
        .elements()
        .map(|e| field.label(e).len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for r in 0..=w + 1 {
        let cells: Vec<String> = (0..(w + 2 - r) as isize)
            .map(|c| format!("{:>cw$}", field.label(f.entry(r as isize, c))))
            .collect();
        let line = format!("{}{}", " ".repeat(r * cw), cells.join(&" ".repeat(cw)));
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Inverse of the json rendering. The stored rows must match the frieze
/// regenerated from `first_row`.
pub fn parse_frieze_json(s: &str) -> Result<Frieze, FriezeError> {
    let doc: FriezeJson = serde_json::from_str(s).map_err(|e| FriezeError::Json(e.to_string()))?;
    let field: Field = doc.field.parse()?;
    let entries = doc
        .first_row
        .iter()
        .map(|&c| {
            field
                .elem(c)
                .ok_or_else(|| FriezeError::Json(format!("element code {c} out of range")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let f = Frieze::from_first_row(FirstRow::new(&field, entries)?)?;
    let rows: Vec<Vec<u32>> = f
        .rows
        .iter()
        .map(|r| r.iter().map(|e| e.code()).collect())
        .collect();
    if doc.width != f.width || doc.rows != rows {
        return Err(FriezeError::Json("rows disagree with the first row".into()));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(field: &Field, codes: &[u32]) -> FirstRow {
        FirstRow::from_codes(field, codes).unwrap()
    }

    #[test]
    fn f2_width_two() {
        let f2 = Field::prime(2).unwrap();
        let fr = Frieze::from_first_row(row(&f2, &[1, 1, 1, 0, 0])).unwrap();
        assert_eq!(fr.width(), 2);
        let second: Vec<u32> = fr.rows()[3].iter().map(|e| e.code()).collect();
        // a_i a_{i+1} - 1 over F_2
        assert_eq!(second, vec![0, 0, 1, 1, 1]);
        assert_eq!(
            render_frieze(&fr, RenderFormat::Text),
            "1 1 1 1\n 1 1 1\n  0 0\n   1\n"
        );
    }

    #[test]
    fn width_zero() {
        for q in [2, 3, 4, 5] {
            let f = Field::of_order(q).unwrap();
            let fr = Frieze::from_first_row(row(&f, &[1, 1, 1])).unwrap();
            assert_eq!(fr.width(), 0);
            assert_eq!(render_frieze(&fr, RenderFormat::Text), "1 1\n 1\n");
        }
    }

    #[test]
    fn f3_all_ones_rejected() {
        // M = [[1,-1],[1,0]]: M^2 = [[0,-1],[1,-1]], M^4 = [[-1,1],[-1,0]] over F_3
        let f3 = Field::prime(3).unwrap();
        let err = Frieze::from_first_row(row(&f3, &[1, 1, 1, 1])).unwrap_err();
        let expected = Mat2 {
            a: f3.from_int(-1),
            b: f3.from_int(1),
            c: f3.from_int(-1),
            d: f3.from_int(0),
        };
        assert_eq!(err, FriezeError::NotAFrieze(expected));
        assert!(!matrix_criterion(&f3, &row(&f3, &[1, 1, 1, 1]).entries).0);
    }

    #[test]
    fn criterion_examples() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        assert!(matrix_criterion(&f2, row(&f2, &[1, 1, 1, 0, 0]).entries()).0);
        assert!(matrix_criterion(&f3, row(&f3, &[2, 1, 0, 1, 2]).entries()).0);
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = Field::of_order(q).unwrap();
            assert!(matrix_criterion(&f, &[Elem::ZERO; 6]).0);
        }
        // short products for diagnostics
        let (ok, m) = matrix_criterion(&f3, &[f3.from_int(2)]);
        assert!(!ok);
        assert_eq!(m, step_matrix(&f3, f3.from_int(2)));
    }

    /// The width-4 integer frieze with first row 4 2 1 3 2 2 1, reduced mod a
    /// prime large enough to keep every entry.
    #[test]
    fn classical_width_four_example() {
        let f = Field::prime(101).unwrap();
        let fr = Frieze::from_first_row(row(&f, &[4, 2, 1, 3, 2, 2, 1])).unwrap();
        let codes = |r: isize| -> Vec<u32> { (0..7).map(|c| fr.entry(r, c).code()).collect() };
        assert_eq!(codes(2), vec![7, 1, 2, 5, 3, 1, 3]);
        assert_eq!(codes(3), vec![3, 1, 3, 7, 1, 2, 5]);
        assert_eq!(codes(4), vec![2, 1, 4, 2, 1, 3, 2]);
        assert!(fr.is_glide_invariant());
        assert_eq!(
            render_frieze(&fr, RenderFormat::Text)
                .lines()
                .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>(),
            vec!["1 1 1 1 1 1", "4 2 1 3 2", "7 1 2 5", "3 1 3", "2 1", "1"]
        );
    }

    #[test]
    fn tameness_examples() {
        let f2 = Field::prime(2).unwrap();
        // width 1 over F_2: first row alternates 0 and alpha
        for alpha in [0, 1] {
            let fr = Frieze::from_first_row(row(&f2, &[0, alpha, 0, alpha])).unwrap();
            assert!(check_tame(&fr).ok);
            assert!(check_tame_all_diamonds(&fr).ok);
        }
        let f3 = Field::prime(3).unwrap();
        let zero = Frieze::from_first_row(row(&f3, &[0; 6])).unwrap();
        let report = check_tame(&zero);
        assert!(report.ok && report.witness.is_none());
        assert!(report.diamonds_checked > 0);
        let f5 = Field::prime(5).unwrap();
        let nonzero = Frieze::from_first_row(row(&f5, &[3, 3, 3, 3, 3])).unwrap();
        assert!(nonzero.rows()[2..=4].iter().flatten().all(|e| !e.is_zero()));
        assert_eq!(check_tame(&nonzero).diamonds_checked, 0);
    }

    #[test]
    fn wild_diamond_detected() {
        // a hand-built array that is not tame: rank of the all-zero-centre
        // diamond of a rank-1 block
        let f3 = Field::prime(3).unwrap();
        let m = [[Elem::ONE; 3]; 3];
        assert_eq!(rank3(&f3, &m), 1);
        let id = [
            [Elem::ONE, Elem::ZERO, Elem::ZERO],
            [Elem::ZERO, Elem::ONE, Elem::ZERO],
            [Elem::ZERO, Elem::ZERO, Elem::ONE],
        ];
        assert_eq!(rank3(&f3, &id), 3);
    }

    #[test]
    fn symmetries() {
        let f2 = Field::prime(2).unwrap();
        let s = frieze_symmetries(row(&f2, &[1, 1, 1, 0, 0]).entries());
        assert_eq!(s.orbit_size, 5);
        assert_eq!(s.canonical, row(&f2, &[0, 0, 1, 1, 1]).entries());
        let f4 = Field::of_order(4).unwrap();
        assert_eq!(
            frieze_symmetries(row(&f4, &[2, 0, 3, 1, 1]).entries()).orbit_size,
            10
        );
        assert_eq!(frieze_symmetries(&[Elem::ZERO; 6]).orbit_size, 1);
    }

    #[test]
    fn reversal_tie_break() {
        let f3 = Field::prime(3).unwrap();
        // palindromic cycle: canonical reached without reversal
        let s = frieze_symmetries(row(&f3, &[2, 1, 0, 1, 2]).entries());
        assert!(!s.reversed);
        // (0,1,2,...) vs reversal: only the reversed rotation is minimal
        let s = frieze_symmetries(row(&f3, &[0, 2, 1, 1, 1]).entries());
        assert_eq!(s.canonical, row(&f3, &[0, 1, 1, 1, 2]).entries());
        assert!(s.reversed);
    }

    #[test]
    fn json_round_trip() {
        let f4 = Field::of_order(4).unwrap();
        let fr = Frieze::from_first_row(row(&f4, &[2, 0, 3, 1, 1])).unwrap();
        let js = render_frieze(&fr, RenderFormat::Json);
        assert!(js.starts_with(r#"{"field":"2^2","width":2,"first_row":[2,0,3,1,1]"#));
        assert_eq!(parse_frieze_json(&js).unwrap(), fr);
        let tampered = js.replace(r#""rows":[[0,"#, r#""rows":[[1,"#);
        assert!(parse_frieze_json(&tampered).is_err());
    }
}
