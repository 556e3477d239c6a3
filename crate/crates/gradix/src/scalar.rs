//! Exact coefficient fields: arbitrary-precision rationals and prime fields.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, p: u64 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p >= MAX_PRIME {
            return Err(Error::Argument(format!("prime modulus {p} exceeds 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::Argument(format!("modulus {p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Prime { value: 0, p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Prime { value: n.rem_euclid(p as i64) as u64, p },
        }
    }

    /// `num / den` in this field; `den` must be nonzero in the field.
    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar> {
        self.from_i64(den).invert().map(|d| &self.from_i64(num) * &d)
    }

    pub fn contains(self, s: &Scalar) -> bool {
        s.field() == self
    }

    /// Number of elements, or `None` for the rationals.
    pub fn size(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }

    /// All `n`-th roots of `v` in the field (`v` nonzero, `n >= 1`).
    pub fn nth_roots(self, v: &Scalar, n: u64) -> Vec<Scalar> {
        assert!(n >= 1);
        if v.is_zero() {
            return vec![self.zero()];
        }
        match (self, v) {
            (Field::Rational, Scalar::Rational(q)) => rational_nth_roots(q, n)
                .into_iter()
                .map(Scalar::Rational)
                .collect(),
            (Field::Prime(p), Scalar::Prime { value, .. }) => prime_nth_roots(*value, n, p)
                .into_iter()
                .map(|value| Scalar::Prime { value, p })
                .collect(),
            _ => panic!("nth_roots: scalar from another field"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn rational_nth_roots(q: &BigRational, n: u64) -> Vec<BigRational> {
    let n32 = n as u32;
    let negative = q.is_negative();
    if negative && n.is_multiple_of(2) {
        return Vec::new();
    }
    let num = q.numer().abs();
    let den = q.denom().clone();
    let rn = num.nth_root(n32);
    let rd = den.nth_root(n32);
    if num_traits::pow(rn.clone(), n as usize) != num || num_traits::pow(rd.clone(), n as usize) != den {
        return Vec::new();
    }
    let root = BigRational::new(rn, rd);
    if negative {
        vec![-root]
    } else if n.is_multiple_of(2) {
        vec![-root.clone(), root]
    } else {
        vec![root]
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime field has a primitive root")
}

/// Discrete logarithm of `v` to base `g` modulo `p` by baby-step giant-step.
fn discrete_log(g: u64, v: u64, p: u64) -> u64 {
    let order = p - 1;
    let m = (order as f64).sqrt().ceil() as u64 + 1;
    let mut table = HashMap::with_capacity(m as usize);
    let mut cur = 1u64;
    for j in 0..m {
        table.entry(cur).or_insert(j);
        cur = cur * g % p;
    }
    let factor = pow_mod(pow_mod(g, m, p), p - 2, p);
    let mut gamma = v % p;
    for i in 0..=m {
        if let Some(&j) = table.get(&gamma) {
            return (i * m + j) % order;
        }
        gamma = gamma * factor % p;
    }
    unreachable!("every nonzero residue is a power of a primitive root")
}

fn prime_nth_roots(v: u64, n: u64, p: u64) -> Vec<u64> {
    if p == 2 {
        return vec![1];
    }
    let order = p - 1;
    let g = primitive_root(p);
    let l = discrete_log(g, v, p);
    let d = n.gcd(&order);
    if !l.is_multiple_of(d) {
        return Vec::new();
    }
    let m = order / d;
    let nd = (n / d) % m;
    let inv = if m == 1 { 0 } else { mod_inverse(nd, m) };
    let y0 = if m == 1 { 0 } else { (l / d) % m * inv % m };
    let mut roots: Vec<u64> = (0..d).map(|k| pow_mod(g, y0 + k * m, p)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(m));
    let x = e.x.mod_floor(&BigInt::from(m));
    x.to_u64().expect("inverse fits in u64")
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field().to_string(), other.field().to_string()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self * other)
    }

    pub fn invert(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { value, p } => Scalar::Prime { value: pow_mod(*value, p - 2, *p), p: *p },
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// JSON form: rationals as `"a/b"` (or `"a"`), residues as integers.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rational(_) => serde_json::Value::String(self.to_string()),
            Scalar::Prime { value, .. } => serde_json::Value::from(*value),
        }
    }

    /// Parses a scalar of `field` from a JSON integer or `"a/b"` string.
    pub fn from_json(field: Field, v: &serde_json::Value) -> Result<Scalar> {
        match v {
            serde_json::Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("scalar {n} is not an integer")))?;
                Ok(field.from_i64(i))
            }
            serde_json::Value::String(s) => Scalar::parse(field, s),
            other => Err(Error::Parse(format!("expected scalar, found {other}"))),
        }
    }

    pub fn parse(field: Field, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
        let den: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        match field {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let n = num.mod_floor(&pb).to_u64().unwrap();
                let d = den.mod_floor(&pb).to_u64().unwrap();
                let d = Scalar::Prime { value: d, p }
                    .invert()
                    .map_err(|_| Error::Parse(format!("denominator of {s:?} vanishes mod {p}")))?;
                Ok(&Scalar::Prime { value: n, p } * &d)
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

// Modular reduction inside the operator bodies is intended.
macro_rules! binop {
    ($tr:ident, $method:ident, $rat:expr, $prime:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            #[allow(clippy::suspicious_arithmetic_impl)]
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational($rat(a, b)),
                    (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) if p == q => {
                        Scalar::Prime { value: $prime(*a, *b, *p), p: *p }
                    }
                    (a, b) => panic!("field mismatch: {} vs {}", a.field(), b.field()),
                }
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a: u64, b: u64, p: u64| (a + b) % p);
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a: u64, b: u64, p: u64| (a + p - b) % p);
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, |a: u64, b: u64, p: u64| a * b % p);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Prime { value, p } => Scalar::Prime { value: (p - value) % p, p: *p },
        }
    }
}
