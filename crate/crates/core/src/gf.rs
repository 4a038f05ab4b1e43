//! Arithmetic in GF(p) and GF(p^m).
//!
//! Field elements are encoded as integers in `[0, q)`: the coefficient vector
//! `(c_0, ..., c_{m-1})` of the polynomial representative maps to
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. This encoding is what matrices store
//! and what every file format uses. [`Element`] wraps an encoded value together
//! with its field and checks field agreement on every binary operation.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Fields up to this order get log/antilog tables.
const TABLE_LIMIT: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,
    #[error("field order {p}^{m} exceeds the supported maximum {MAX_FIELD_ORDER}")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("operands belong to different fields: GF({0}) and GF({1})")]
    FieldMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {value} is not an element of GF({q})")]
    OutOfRange { value: u64, q: u32 },
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct FieldInner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    tables: Option<Tables>,
}

/// A finite field GF(p^m) with a fixed modulus polynomial.
///
/// Cloning is cheap; all clones share the same arithmetic tables.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

/// Wire form of a field: `{"p": int, "m": int}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u64,
    pub m: u32,
}

impl FieldSpec {
    /// Builds GF(p^m) using the lexicographically smallest monic irreducible
    /// polynomial of degree `m` as modulus.
    pub fn new(p: u64, m: u32) -> Result<FieldSpec, GfError> {
        if m == 0 {
            return Err(GfError::ZeroExtensionDegree);
        }
        if !is_prime(p) {
            return Err(GfError::NonPrimeCharacteristic(p));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(GfError::FieldTooLarge { p, m })?;
        let p = p as u32;
        let q = q as u32;
        let modulus = smallest_irreducible(p, m);
        let mut inner = FieldInner {
            p,
            m,
            q,
            modulus,
            primitive: 0,
            tables: None,
        };
        inner.primitive = find_primitive(&inner);
        if q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldSpec {
            inner: Arc::new(inner),
        })
    }

    /// Shorthand for the prime field GF(p).
    pub fn prime(p: u64) -> Result<FieldSpec, GfError> {
        FieldSpec::new(p, 1)
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.inner.m
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Monic modulus, little-endian coefficients, length `m + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn desc(&self) -> FieldDesc {
        FieldDesc {
            p: self.inner.p as u64,
            m: self.inner.m,
        }
    }

    pub fn contains(&self, value: u64) -> bool {
        value < self.inner.q as u64
    }

    pub fn check(&self, value: u64) -> Result<u32, GfError> {
        if self.contains(value) {
            Ok(value as u32)
        } else {
            Err(GfError::OutOfRange {
                value,
                q: self.inner.q,
            })
        }
    }

    pub fn element(&self, value: u64) -> Result<Element, GfError> {
        Ok(Element {
            field: self.clone(),
            value: self.check(value)?,
        })
    }

    pub fn zero(&self) -> Element {
        Element {
            field: self.clone(),
            value: 0,
        }
    }

    pub fn one(&self) -> Element {
        Element {
            field: self.clone(),
            value: 1,
        }
    }

    /// The smallest element (in integer encoding) of multiplicative order q-1.
    pub fn primitive_element(&self) -> Element {
        Element {
            field: self.clone(),
            value: self.inner.primitive,
        }
    }

    /// Encoded value of [`FieldSpec::primitive_element`].
    pub fn primitive(&self) -> u32 {
        self.inner.primitive
    }

    /// Coefficient vector of an encoded element, little-endian, length `m`.
    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        digits(a, self.inner.p, self.inner.m)
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<u32, GfError> {
        let p = self.inner.p;
        let mut value: u64 = 0;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(GfError::OutOfRange {
                    value: c as u64,
                    q: p,
                });
            }
            value = value * p as u64 + c as u64;
        }
        self.check(value)
    }

    // Raw arithmetic on encoded values. Callers guarantee operands are in range.

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let f = &*self.inner;
        if f.m == 1 {
            let s = a + b;
            if s >= f.p {
                s - f.p
            } else {
                s
            }
        } else if f.p == 2 {
            a ^ b
        } else {
            digitwise(a, b, f.p, f.m, |x, y| (x + y) % f.p)
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: u32) -> u32 {
        let f = &*self.inner;
        if a == 0 || f.p == 2 {
            a
        } else if f.m == 1 {
            f.p - a
        } else {
            digitwise(a, 0, f.p, f.m, |x, _| (f.p - x) % f.p)
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let f = &*self.inner;
        match &f.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None if f.m == 1 => ((a as u64 * b as u64) % f.p as u64) as u32,
            None => poly_mul_mod(f, a, b),
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        let f = &*self.inner;
        Ok(match &f.tables {
            Some(t) => {
                let l = t.log[a as usize];
                t.exp[if l == 0 { 0 } else { (f.q - 1 - l) as usize }]
            }
            None => self.pow(a, (f.q - 2) as u64),
        })
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &*self.inner;
        if let Some(t) = &f.tables {
            let order = (f.q - 1) as u64;
            let l = (t.log[a as usize] as u64 * (e % order)) % order;
            return t.exp[l as usize];
        }
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: u32) -> Result<u64, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        Ok(order_of(self, a))
    }

    /// Iterator over every encoded element, `0..q`.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.inner.q
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.m == other.inner.m)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.m == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.m)
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl TryFrom<FieldDesc> for FieldSpec {
    type Error = GfError;

    fn try_from(d: FieldDesc) -> Result<Self, Self::Error> {
        FieldSpec::new(d.p, d.m)
    }
}

impl From<FieldSpec> for FieldDesc {
    fn from(f: FieldSpec) -> Self {
        f.desc()
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.desc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let desc = FieldDesc::deserialize(d)?;
        FieldSpec::try_from(desc).map_err(serde::de::Error::custom)
    }
}

/// A field element bound to its field.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    field: FieldSpec,
    value: u32,
}

impl Element {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Element) -> Result<(), GfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch(
                self.field.order(),
                other.field.order(),
            ))
        }
    }

    fn with(&self, value: u32) -> Element {
        Element {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element, GfError> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Element) -> Result<Element, GfError> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Element) -> Result<Element, GfError> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &Element) -> Result<Element, GfError> {
        self.same_field(other)?;
        Ok(self.with(self.field.div(self.value, other.value)?))
    }

    pub fn neg(&self) -> Element {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Element, GfError> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> Element {
        self.with(self.field.pow(self.value, e))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.value, self.field)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

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

/// Returns `Some((p, m))` when `q = p^m` for a prime `p`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Smallest prime power that is at least `bound`.
pub fn smallest_prime_power_at_least(bound: u64) -> (u64, u32) {
    let mut q = bound.max(2);
    loop {
        if let Some(pm) = prime_power(q) {
            return pm;
        }
        q += 1;
    }
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn digits(mut a: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(a % p);
        a /= p;
    }
    out
}

fn digitwise(a: u32, b: u32, p: u32, m: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..m {
        out += op(a % p, b % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

fn poly_mul_mod(f: &FieldInner, a: u32, b: u32) -> u32 {
    let (p, m) = (f.p as u64, f.m as usize);
    let da = digits(a, f.p, f.m);
    let db = digits(b, f.p, f.m);
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
        }
    }
    // Reduce using x^m = -(modulus low terms).
    for deg in (m..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &mc) in f.modulus[..m].iter().enumerate() {
            let t = (c * mc as u64) % p;
            let slot = &mut prod[deg - m + i];
            *slot = (*slot + p - t) % p;
        }
    }
    let mut value = 0u64;
    for &c in prod[..m].iter().rev() {
        value = value * p + c;
    }
    value as u32
}

/// Remainder of `num` modulo monic `den` over GF(p); little-endian vectors.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dd = den.len() - 1;
    let p = p as u64;
    while r.len() > dd {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                let t = (lead * c as u64) % p;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let m = poly.len() - 1;
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low as u32, p, d as u32);
            g.push(1);
            if poly_rem(poly, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(m);
    for low in 0..count {
        let mut poly = digits(low as u32, p, m);
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn slow_mul(f: &FieldInner, a: u32, b: u32) -> u32 {
    if a == 0 || b == 0 {
        0
    } else if f.m == 1 {
        ((a as u64 * b as u64) % f.p as u64) as u32
    } else {
        poly_mul_mod(f, a, b)
    }
}

fn slow_pow(f: &FieldInner, a: u32, mut e: u64) -> u32 {
    let mut base = a;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(f, acc, base);
        }
        base = slow_mul(f, base, base);
        e >>= 1;
    }
    acc
}

fn find_primitive(f: &FieldInner) -> u32 {
    let order = (f.q - 1) as u64;
    let factors = distinct_prime_factors(order);
    (1..f.q)
        .find(|&a| factors.iter().all(|&r| slow_pow(f, a, order / r) != 1))
        .expect("the multiplicative group of a finite field is cyclic")
}

fn build_tables(f: &FieldInner) -> Tables {
    let n = (f.q - 1) as usize;
    let mut exp = vec![0u32; 2 * n.max(1)];
    let mut log = vec![0u32; f.q as usize];
    let mut x = 1u32;
    for (i, slot) in exp.iter_mut().take(n).enumerate() {
        *slot = x;
        log[x as usize] = i as u32;
        x = slow_mul(f, x, f.primitive);
    }
    for i in n..2 * n {
        exp[i] = exp[i - n];
    }
    if n == 0 {
        exp[0] = 1;
    }
    Tables { exp, log }
}

fn order_of(field: &FieldSpec, a: u32) -> u64 {
    let group = (field.order() - 1) as u64;
    let mut order = group;
    for r in distinct_prime_factors(group) {
        while order.is_multiple_of(r) && field.pow(a, order / r) == 1 {
            order /= r;
        }
    }
    order
}
