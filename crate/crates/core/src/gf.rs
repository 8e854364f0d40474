//! Exact arithmetic in finite fields `F_q`, `q = p^k`, together with the
//! projective line `P^1(F_q)` and 2x2 matrices over `F_q`.
//!
//! Elements are stored as their *code*: the coefficient vector of the
//! polynomial representative (constant term first) read as a base-`p`
//! integer. Code `0` is zero, code `1` is one, and ascending codes give the
//! canonical element order used everywhere else in the crate.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Largest field size supported.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Fields up to this size get full addition/multiplication tables.
const TABLE_LIMIT: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported maximum 2^16")]
    TooLarge(u64),
    #[error("modulus {0:?} is reducible over F_{1}")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("invalid field descriptor {0:?}: {1}")]
    InvalidDescriptor(String, String),
    #[error("singular matrix has no inverse")]
    SingularMatrix,
}

/// An element of a [`Field`], identified by its base-`p` code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Position of the element in the canonical field order.
    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, constant term first, length `k + 1`.
    modulus: Vec<u32>,
    default_modulus: bool,
    tables: Option<Tables>,
}

/// A concrete finite field `F_{p^k}`.
///
/// Cloning is cheap; all clones share the same immutable tables.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `Some((p, k))` when `q = p^k` for a prime `p`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

// Dense polynomials over F_p, constant term first, no trailing zeros.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let m = poly_trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    let mut r = poly_trim(a.to_vec());
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mc) in m.iter().enumerate() {
            let sub = (factor as u64 * mc as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    if p == 2 {
        return if exp == 0 { 1 } else { base % 2 };
    }
    let mut acc: u64 = 1;
    let mut b = base as u64 % p as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        exp >>= 1;
    }
    acc as u32
}

fn digits(code: u32, p: u32, k: u32) -> Vec<u32> {
    let mut c = code;
    (0..k)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut divisor = digits(low as u32, p, d as u32);
            divisor.push(1);
            if poly_rem(m, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `k`, comparing coefficients from
/// `x^{k-1}` down to the constant term.
fn default_modulus(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for low in 0..count {
        let mut m = digits(low as u32, p, k);
        m.push(1);
        if m[0] != 0 && is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// Builds `F_{p^k}`. When `k > 1` and no modulus is given, the default
    /// irreducible is used. A supplied modulus is constant-first, length
    /// `k + 1`, and must be monic.
    pub fn new(p: u64, k: u32, modulus: Option<&[u32]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrimeCharacteristic(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(FieldError::TooLarge(p.saturating_pow(k)))?;
        let p = p as u32;
        let (modulus, default) = match modulus {
            None if k == 1 => (vec![0, 1], true),
            None => (default_modulus(p, k), true),
            Some(m) => {
                if m.len() != k as usize + 1 {
                    return Err(FieldError::InvalidModulus(format!(
                        "expected {} coefficients for degree {k}, got {}",
                        k + 1,
                        m.len()
                    )));
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(FieldError::InvalidModulus(format!(
                        "coefficient {c} is not reduced mod {p}"
                    )));
                }
                if m[k as usize] != 1 {
                    return Err(FieldError::InvalidModulus("modulus must be monic".into()));
                }
                if !is_irreducible(m, p) {
                    return Err(FieldError::ReducibleModulus(m.to_vec(), p));
                }
                let is_default = k == 1 || default_modulus(p, k) == m;
                (m.to_vec(), is_default)
            }
        };
        let mut inner = Inner {
            p,
            k,
            q: q as u32,
            modulus,
            default_modulus: default,
            tables: None,
        };
        if inner.q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Field {
            inner: Arc::new(inner),
        })
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        Field::new(p, 1, None)
    }

    /// The field of order `q`, with the default modulus.
    pub fn of_order(q: u64) -> Result<Field, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NonPrimeCharacteristic(q))?;
        Field::new(p, k, None)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    /// Number of elements `q`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn is_char_two(&self) -> bool {
        self.inner.p == 2
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// Field descriptor: `p`, `p^k`, or `p^k:c0,c1,...` when the modulus is
    /// not the default one.
    pub fn descriptor(&self) -> String {
        self.to_string()
    }

    /// Element with the given code, if `code < q`.
    pub fn elem(&self, code: u32) -> Option<Elem> {
        (code < self.inner.q).then_some(Elem(code))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.inner.p as i64) as u32)
    }

    /// Element from its coefficient vector (constant term first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Elem {
        let mut d: Vec<u32> = coeffs.iter().map(|&c| c % self.inner.p).collect();
        let r = poly_rem(&d, &self.inner.modulus, self.inner.p);
        d = r;
        d.resize(self.inner.k as usize, 0);
        Elem(undigits(&d, self.inner.p))
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        digits(a.0, self.inner.p, self.inner.k)
    }

    /// All `q` elements in canonical order: 0, 1, then ascending code.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.inner.q).map(Elem)
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let i = &self.inner;
        if let Some(t) = &i.tables {
            return Elem(t.add[(a.0 * i.q + b.0) as usize] as u32);
        }
        if i.k == 1 {
            return Elem((a.0 + b.0) % i.p);
        }
        let (mut x, mut y, mut place, mut out) = (a.0, b.0, 1u32, 0u32);
        for _ in 0..i.k {
            out += ((x % i.p + y % i.p) % i.p) * place;
            x /= i.p;
            y /= i.p;
            place = place.wrapping_mul(i.p);
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let i = &self.inner;
        if let Some(t) = &i.tables {
            return Elem(t.neg[a.0 as usize] as u32);
        }
        let d: Vec<u32> = self
            .coeffs(a)
            .into_iter()
            .map(|c| (i.p - c) % i.p)
            .collect();
        Elem(undigits(&d, i.p))
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let i = &self.inner;
        if let Some(t) = &i.tables {
            return Elem(t.mul[(a.0 * i.q + b.0) as usize] as u32);
        }
        slow_mul(i, a, b)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        let i = &self.inner;
        if let Some(t) = &i.tables {
            return Some(Elem(t.inv[a.0 as usize] as u32));
        }
        Some(self.pow(a, (i.q - 2) as u64))
    }

    /// `a / b`; `None` when `b` is zero.
    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, mut exp: u64) -> Elem {
        let mut acc = Elem::ONE;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Label used in text output: the element code.
    pub fn label(&self, a: Elem) -> String {
        a.0.to_string()
    }

    /// Parses a list of element codes such as `"1,0,2"`.
    pub fn parse_elements(&self, s: &str) -> Result<Vec<Elem>, FieldError> {
        s.split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u32>()
                    .ok()
                    .and_then(|c| self.elem(c))
                    .ok_or_else(|| {
                        FieldError::InvalidDescriptor(
                            s.to_string(),
                            format!("{t:?} is not an element code below {}", self.order()),
                        )
                    })
            })
            .collect()
    }

    // --- projective line ---

    /// All `q + 1` points: `(a : 1)` for every element in order, then `(1 : 0)`.
    pub fn p1_points(&self) -> Vec<ProjPoint> {
        self.elements()
            .map(ProjPoint::Affine)
            .chain(std::iter::once(ProjPoint::Infinity))
            .collect()
    }

    /// Normalized point `(x : y)`; `None` for `(0 : 0)`.
    pub fn proj(&self, x: Elem, y: Elem) -> Option<ProjPoint> {
        if !y.is_zero() {
            Some(ProjPoint::Affine(self.div(x, y)?))
        } else if !x.is_zero() {
            Some(ProjPoint::Infinity)
        } else {
            None
        }
    }

    /// `det([u v]) = u0 v1 - u1 v0` for column vectors `u`, `v`.
    #[inline]
    pub fn det2(&self, u: [Elem; 2], v: [Elem; 2]) -> Elem {
        self.sub(self.mul(u[0], v[1]), self.mul(u[1], v[0]))
    }

    // --- 2x2 matrices ---

    pub fn mat_mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        Mat2 {
            a: self.add(self.mul(x.a, y.a), self.mul(x.b, y.c)),
            b: self.add(self.mul(x.a, y.b), self.mul(x.b, y.d)),
            c: self.add(self.mul(x.c, y.a), self.mul(x.d, y.c)),
            d: self.add(self.mul(x.c, y.b), self.mul(x.d, y.d)),
        }
    }

    pub fn mat_det(&self, m: &Mat2) -> Elem {
        self.sub(self.mul(m.a, m.d), self.mul(m.b, m.c))
    }

    pub fn mat_inv(&self, m: &Mat2) -> Result<Mat2, FieldError> {
        let di = self
            .inv(self.mat_det(m))
            .ok_or(FieldError::SingularMatrix)?;
        Ok(Mat2 {
            a: self.mul(m.d, di),
            b: self.mul(self.neg(m.b), di),
            c: self.mul(self.neg(m.c), di),
            d: self.mul(m.a, di),
        })
    }

    pub fn mat_neg(&self, m: &Mat2) -> Mat2 {
        Mat2 {
            a: self.neg(m.a),
            b: self.neg(m.b),
            c: self.neg(m.c),
            d: self.neg(m.d),
        }
    }

    pub fn mat_scale(&self, s: Elem, m: &Mat2) -> Mat2 {
        Mat2 {
            a: self.mul(s, m.a),
            b: self.mul(s, m.b),
            c: self.mul(s, m.c),
            d: self.mul(s, m.d),
        }
    }

    pub fn mat_apply(&self, m: &Mat2, v: [Elem; 2]) -> [Elem; 2] {
        [
            self.add(self.mul(m.a, v[0]), self.mul(m.b, v[1])),
            self.add(self.mul(m.c, v[0]), self.mul(m.d, v[1])),
        ]
    }

    /// Fractional-linear action `(x : y) -> (ax + by : cx + dy)`.
    /// `m` must be invertible.
    pub fn act(&self, m: &Mat2, pt: ProjPoint) -> ProjPoint {
        let [x, y] = self.mat_apply(m, pt.coords());
        self.proj(x, y)
            .expect("invertible matrix maps points to points")
    }

    /// One invertible matrix per scalar class: the first nonzero entry in
    /// `a, b, c, d` order is 1. Exactly `q(q^2 - 1)` matrices.
    pub fn pgl2_elements(&self) -> Vec<Mat2> {
        let els: Vec<Elem> = self.elements().collect();
        let mut out = Vec::with_capacity((self.order() as usize).pow(3));
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    for &d in &els {
                        let m = Mat2 { a, b, c, d };
                        let lead = [a, b, c, d].into_iter().find(|e| !e.is_zero());
                        if lead == Some(Elem::ONE) && !self.mat_det(&m).is_zero() {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out
    }
}

fn slow_mul(i: &Inner, a: Elem, b: Elem) -> Elem {
    if i.k == 1 {
        return Elem((a.0 as u64 * b.0 as u64 % i.p as u64) as u32);
    }
    let x = digits(a.0, i.p, i.k);
    let y = digits(b.0, i.p, i.k);
    let mut prod = vec![0u64; 2 * i.k as usize];
    for (s, &xs) in x.iter().enumerate() {
        for (t, &yt) in y.iter().enumerate() {
            prod[s + t] = (prod[s + t] + xs as u64 * yt as u64) % i.p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    let mut r = poly_rem(&prod, &i.modulus, i.p);
    r.resize(i.k as usize, 0);
    Elem(undigits(&r, i.p))
}

fn build_tables(i: &Inner) -> Tables {
    let q = i.q as usize;
    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    let mut neg = vec![0u8; q];
    let mut inv = vec![0u8; q];
    for a in 0..q {
        let da = digits(a as u32, i.p, i.k);
        let dn: Vec<u32> = da.iter().map(|&c| (i.p - c) % i.p).collect();
        neg[a] = undigits(&dn, i.p) as u8;
        for b in 0..q {
            let db = digits(b as u32, i.p, i.k);
            let ds: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % i.p).collect();
            add[a * q + b] = undigits(&ds, i.p) as u8;
            let m = slow_mul(i, Elem(a as u32), Elem(b as u32)).0;
            mul[a * q + b] = m as u8;
            if m == 1 {
                inv[a] = b as u8;
            }
        }
    }
    Tables { add, mul, neg, inv }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = &self.inner;
        if i.k == 1 {
            write!(f, "{}", i.p)
        } else if i.default_modulus {
            write!(f, "{}^{}", i.p, i.k)
        } else {
            let m: Vec<String> = i.modulus.iter().map(|c| c.to_string()).collect();
            write!(f, "{}^{}:{}", i.p, i.k, m.join(","))
        }
    }
}

impl FromStr for Field {
    type Err = FieldError;

    /// Accepts `p`, `p^k`, and `p^k:c0,...,ck`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| FieldError::InvalidDescriptor(s.to_string(), why.to_string());
        let (order, modulus) = match s.trim().split_once(':') {
            Some((o, m)) => (o, Some(m)),
            None => (s.trim(), None),
        };
        let (p, k) = match order.split_once('^') {
            Some((p, k)) => (
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| bad("bad characteristic"))?,
                k.trim().parse::<u32>().map_err(|_| bad("bad degree"))?,
            ),
            None => (order.parse::<u64>().map_err(|_| bad("not an integer"))?, 1),
        };
        if !is_prime(p) {
            let hint = if k == 1 && prime_power(p).is_some() {
                "is a prime power; write it as p^k"
            } else {
                "characteristic must be prime"
            };
            return Err(bad(&format!("{p} {hint}")));
        }
        let modulus = modulus
            .map(|m| {
                m.split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<u32>()
                            .map_err(|_| bad("bad modulus coefficient"))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        Field::new(p, k, modulus.as_deref())
    }
}

/// A point of `P^1(F_q)` in normalized coordinates: `(a : 1)` or `(1 : 0)`.
///
/// The derived order puts affine points first in field order, then infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjPoint {
    Affine(Elem),
    Infinity,
}

impl ProjPoint {
    /// Normalized homogeneous coordinates; also the default lift to `F_q^2`.
    pub fn coords(self) -> [Elem; 2] {
        match self {
            ProjPoint::Affine(x) => [x, Elem::ONE],
            ProjPoint::Infinity => [Elem::ONE, Elem::ZERO],
        }
    }

    /// Index in [`Field::p1_points`] order.
    pub fn index(self, field: &Field) -> u32 {
        match self {
            ProjPoint::Affine(x) => x.code(),
            ProjPoint::Infinity => field.order(),
        }
    }

    pub fn from_index(field: &Field, idx: u32) -> Option<ProjPoint> {
        match idx.cmp(&field.order()) {
            std::cmp::Ordering::Less => Some(ProjPoint::Affine(Elem(idx))),
            std::cmp::Ordering::Equal => Some(ProjPoint::Infinity),
            std::cmp::Ordering::Greater => None,
        }
    }

    /// Parses `"inf"` or an element code.
    pub fn parse(field: &Field, s: &str) -> Result<ProjPoint, FieldError> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(ProjPoint::Infinity);
        }
        s.parse::<u32>()
            .ok()
            .and_then(|c| field.elem(c))
            .map(ProjPoint::Affine)
            .ok_or_else(|| {
                FieldError::InvalidDescriptor(
                    s.to_string(),
                    "expected an element code or inf".into(),
                )
            })
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Affine(x) => write!(f, "{x}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Row-major 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        a: Elem::ONE,
        b: Elem::ZERO,
        c: Elem::ZERO,
        d: Elem::ONE,
    };

    /// Packs the four entry codes into one hash key.
    #[inline]
    pub fn key(&self) -> u64 {
        (self.a.0 as u64) << 48
            | (self.b.0 as u64) << 32
            | (self.c.0 as u64) << 16
            | self.d.0 as u64
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_fields() -> Vec<Field> {
        [2, 3, 4, 5, 7, 8, 9]
            .into_iter()
            .map(|q| Field::of_order(q).unwrap())
            .collect()
    }

    #[test]
    fn prime_field_f2() {
        let f = Field::new(2, 1, None).unwrap();
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![Elem(0), Elem(1)]);
    }

    #[test]
    fn f4_presentation() {
        let f = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        let alpha = f.elem(2).unwrap();
        let beta = f.elem(3).unwrap();
        assert_eq!(f.coeffs(alpha), vec![0, 1]);
        assert_eq!(f.coeffs(beta), vec![1, 1]);
        assert_eq!(f.add(Elem::ONE, alpha), beta);
        assert_eq!(f.inv(alpha), Some(beta));
        assert_eq!(f.to_string(), "2^2");
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 0, 1])),
            Err(FieldError::ReducibleModulus(..))
        ));
        assert_eq!(
            Field::new(4, 1, None).unwrap_err(),
            FieldError::NonPrimeCharacteristic(4)
        );
    }

    #[test]
    fn default_moduli() {
        assert_eq!(Field::new(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::new(2, 3, None).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn element_orders() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(
            f3.elements().map(Elem::code).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        let f4 = Field::of_order(4).unwrap();
        let coeffs: Vec<_> = f4.elements().map(|e| f4.coeffs(e)).collect();
        assert_eq!(coeffs, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn descriptors() {
        assert_eq!("5".parse::<Field>().unwrap().order(), 5);
        assert_eq!("2^2".parse::<Field>().unwrap().order(), 4);
        assert_eq!("2^2:1,1,1".parse::<Field>().unwrap().to_string(), "2^2");
        assert!("4".parse::<Field>().is_err());
        assert!("2^2:1,0,1".parse::<Field>().is_err());
        let odd = "3^2:2,1,1".parse::<Field>().unwrap();
        assert_eq!(odd.to_string(), "3^2:2,1,1");
        assert_eq!(odd.to_string().parse::<Field>().unwrap(), odd);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in small_fields() {
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                assert_eq!(f.pow(a, f.order() as u64), a, "Frobenius in {f}");
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                    let inverses = els.iter().filter(|&&b| f.mul(a, b) == Elem::ONE).count();
                    assert_eq!(inverses, 1);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = Field::of_order(9).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), slow_mul(&f.inner, a, b));
            }
        }
        // above the table limit
        let big = Field::new(2, 9, None).unwrap();
        assert!(big.inner.tables.is_none());
        for code in [1u32, 2, 3, 100, 511] {
            let a = big.elem(code).unwrap();
            assert_eq!(big.mul(a, big.inv(a).unwrap()), Elem::ONE);
            assert_eq!(big.add(a, big.neg(a)), Elem::ZERO);
        }
        let a = big.elem(77).unwrap();
        assert_eq!(big.pow(a, 512), a);
    }

    #[test]
    fn projective_line_sizes() {
        for (q, n) in [(2, 3), (4, 5), (9, 10)] {
            assert_eq!(Field::of_order(q).unwrap().p1_points().len(), n);
        }
    }

    #[test]
    fn pgl2_sizes_and_identity() {
        assert_eq!(Field::prime(2).unwrap().pgl2_elements().len(), 6);
        assert_eq!(Field::prime(3).unwrap().pgl2_elements().len(), 24);
        assert_eq!(Field::of_order(4).unwrap().pgl2_elements().len(), 60);
        let f = Field::prime(5).unwrap();
        for pt in f.p1_points() {
            assert_eq!(f.act(&Mat2::IDENTITY, pt), pt);
        }
    }

    #[test]
    fn singular_inverse() {
        let f = Field::prime(3).unwrap();
        let m = Mat2 {
            a: Elem::ONE,
            b: Elem::ONE,
            c: Elem::ONE,
            d: Elem::ONE,
        };
        assert_eq!(f.mat_inv(&m), Err(FieldError::SingularMatrix));
    }

    #[test]
    fn pgl2_sharply_three_transitive() {
        for q in [2, 3, 4, 5] {
            let f = Field::of_order(q).unwrap();
            let pts = f.p1_points();
            let group = f.pgl2_elements();
            let mut triples: Vec<[ProjPoint; 3]> = Vec::new();
            for &x in &pts {
                for &y in &pts {
                    for &z in &pts {
                        if x != y && y != z && x != z {
                            triples.push([x, y, z]);
                        }
                    }
                }
            }
            let base = triples[0];
            for t in &triples {
                let hits = group
                    .iter()
                    .filter(|g| base.iter().zip(t).all(|(&s, &d)| f.act(g, s) == d))
                    .count();
                assert_eq!(hits, 1, "q = {q}");
            }
            // faithful: only the identity class fixes every point
            let fixers = group
                .iter()
                .filter(|g| pts.iter().all(|&p| f.act(g, p) == p))
                .count();
            assert_eq!(fixers, 1);
        }
    }

    #[test]
    fn matrix_product_associative() {
        let f = Field::of_order(4).unwrap();
        let g = f.pgl2_elements();
        for x in g.iter().step_by(7) {
            for y in g.iter().step_by(11) {
                for z in g.iter().step_by(13) {
                    assert_eq!(
                        f.mat_mul(&f.mat_mul(x, y), z),
                        f.mat_mul(x, &f.mat_mul(y, z))
                    );
                }
                let xy = f.mat_mul(x, y);
                assert_eq!(f.mat_det(&xy), f.mul(f.mat_det(x), f.mat_det(y)));
            }
        }
    }
}
