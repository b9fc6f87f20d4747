use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};

use super::encoding::{put_int, Reader};
use super::{AbelianGroup, GroupElement, GroupError};

/// Largest |D| for which the reduced forms are enumerated.
pub const MAX_CLASS_GROUP_DISCRIMINANT: i64 = 100_000_000;

/// Positive-definite binary quadratic form `a x^2 + b xy + c y^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadraticForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        QuadraticForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let babs = self.b.abs();
        if !self.a.is_positive() || babs > self.a || self.a > self.c {
            return false;
        }
        if (babs == self.a || self.a == self.c) && self.b.is_negative() {
            return false;
        }
        true
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    /// The principal form of discriminant `d`.
    pub fn principal(d: &BigInt) -> Self {
        let b = d.mod_floor(&BigInt::from(2));
        let c = (&b * &b - d) / 4;
        QuadraticForm::new(1, b, c)
    }

    /// Brings `b` into `(-a, a]` by the substitution `x -> x + r y`.
    fn normalize(&mut self) {
        let two_a = BigInt::from(2) * &self.a;
        let r = (&self.a - &self.b).div_floor(&two_a);
        let b = &self.b + &two_a * &r;
        let c = &self.a * &r * &r + &self.b * &r + &self.c;
        self.b = b;
        self.c = c;
    }

    /// The unique reduced form equivalent to `self`.
    pub fn reduced(&self) -> Self {
        let mut f = self.clone();
        f.normalize();
        while f.a > f.c {
            std::mem::swap(&mut f.a, &mut f.c);
            f.b = -std::mem::take(&mut f.b);
            f.normalize();
        }
        if f.a == f.c && f.b.is_negative() {
            f.b = -std::mem::take(&mut f.b);
        }
        f
    }

    /// Gauss composition followed by reduction (Shanks' formulation).
    pub fn compose(&self, other: &Self) -> Self {
        let (f1, f2) = if self.a > other.a {
            (other, self)
        } else {
            (self, other)
        };
        let (a1, b1) = (&f1.a, &f1.b);
        let (a2, b2, c2) = (&f2.a, &f2.b, &f2.c);
        let s: BigInt = (b1 + b2) / 2;
        let n = b2 - &s;

        let (y1, d) = if a2.is_multiple_of(a1) {
            (BigInt::zero(), a1.clone())
        } else {
            let e = a2.extended_gcd(a1);
            (e.x, e.gcd)
        };
        let (x2, y2, d1) = if s.is_multiple_of(&d) {
            (BigInt::zero(), -BigInt::one(), d)
        } else {
            let e = s.extended_gcd(&d);
            (e.x, -e.y, e.gcd)
        };

        let v1 = a1 / &d1;
        let v2 = a2 / &d1;
        let r = (&y1 * &y2 * &n - &x2 * c2).mod_floor(&v1);
        let b3 = b2 + BigInt::from(2) * &v2 * &r;
        let a3 = &v1 * &v2;
        let disc = self.discriminant();
        let c3 = (&b3 * &b3 - &disc) / (BigInt::from(4) * &a3);
        QuadraticForm::new(a3, b3, c3).reduced()
    }

    pub fn inverse(&self) -> Self {
        QuadraticForm::new(self.a.clone(), -&self.b, self.c.clone()).reduced()
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Class group of primitive positive-definite forms of a negative
/// discriminant, realized on reduced representatives.
///
/// All reduced forms are enumerated up front; sampling is uniform over
/// that list.
#[derive(Debug, Clone)]
pub struct ClassGroup {
    d: BigInt,
    forms: Vec<QuadraticForm>,
    index: HashMap<QuadraticForm, usize>,
}

impl ClassGroup {
    pub fn new(d: impl Into<BigInt>) -> Result<Self, GroupError> {
        let d = d.into();
        let d64 = validate_discriminant(&d)?;
        let forms = enumerate_reduced_forms(d64);
        let index = forms.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        Ok(ClassGroup { d, forms, index })
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.d
    }

    /// The class number h(D).
    pub fn class_number(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[QuadraticForm] {
        &self.forms
    }

    pub fn element(&self, f: &QuadraticForm) -> Result<GroupElement, GroupError> {
        if self.index.contains_key(f) {
            Ok(encode(f))
        } else {
            Err(GroupError::NotAnElement {
                input: f.to_string(),
                group: self.descriptor(),
            })
        }
    }

    pub fn form(&self, a: &GroupElement) -> QuadraticForm {
        self.decode(a.as_bytes())
            .unwrap_or_else(|| panic!("{a:?} is not an element of {}", self.descriptor()))
    }

    fn decode(&self, bytes: &[u8]) -> Option<QuadraticForm> {
        let mut r = Reader::new(bytes);
        let f = QuadraticForm {
            a: r.int()?,
            b: r.int()?,
            c: r.int()?,
        };
        r.finish()?;
        self.index.contains_key(&f).then_some(f)
    }
}

fn validate_discriminant(d: &BigInt) -> Result<i64, GroupError> {
    let invalid = || GroupError::InvalidDiscriminant(d.clone());
    if !d.is_negative() {
        return Err(invalid());
    }
    let r = d.mod_floor(&BigInt::from(4));
    if !(r.is_zero() || r.is_one()) {
        return Err(invalid());
    }
    match d.to_i64() {
        Some(x) if x >= -MAX_CLASS_GROUP_DISCRIMINANT => Ok(x),
        _ => Err(GroupError::TooLarge {
            what: format!("|discriminant| {}", d.magnitude()),
            limit: MAX_CLASS_GROUP_DISCRIMINANT.to_string(),
        }),
    }
}

/// All reduced primitive forms of discriminant `d < 0`, ordered by `(a, b)`.
fn enumerate_reduced_forms(d: i64) -> Vec<QuadraticForm> {
    let mut out = Vec::new();
    let mut a = 1i64;
    // reduced forms satisfy 3a^2 <= |d|
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (a == c && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            out.push(QuadraticForm::new(a, b, c));
        }
        a += 1;
    }
    out
}

fn encode(f: &QuadraticForm) -> GroupElement {
    let mut buf = Vec::new();
    put_int(&mut buf, &f.a);
    put_int(&mut buf, &f.b);
    put_int(&mut buf, &f.c);
    GroupElement::from_bytes(buf)
}

fn parse_signed(tok: &str) -> Option<BigInt> {
    let digits = tok.strip_prefix('-').unwrap_or(tok);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let x: BigInt = tok.parse().ok()?;
    (x.to_string() == tok).then_some(x)
}

impl AbelianGroup for ClassGroup {
    fn descriptor(&self) -> String {
        format!("classgroup:{}", self.d)
    }

    fn identity(&self) -> GroupElement {
        encode(&QuadraticForm::principal(&self.d))
    }

    fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        encode(&self.form(a).compose(&self.form(b)))
    }

    fn inverse(&self, a: &GroupElement) -> GroupElement {
        encode(&self.form(a).inverse())
    }

    fn is_element(&self, bytes: &[u8]) -> bool {
        self.decode(bytes).is_some()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> GroupElement {
        encode(&self.forms[rng.gen_range(0..self.forms.len())])
    }

    fn exponent_bound(&self) -> BigUint {
        BigUint::from(self.forms.len())
    }

    fn cardinality(&self) -> Option<BigUint> {
        Some(BigUint::from(self.forms.len()))
    }

    fn display(&self, a: &GroupElement) -> String {
        self.form(a).to_string()
    }

    fn parse_element(&self, s: &str) -> Result<GroupElement, GroupError> {
        let err = || GroupError::NotAnElement {
            input: s.to_string(),
            group: self.descriptor(),
        };
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(err)?;
        let parts: Vec<_> = inner.split(',').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(err());
        };
        let f = QuadraticForm {
            a: parse_signed(a).ok_or_else(err)?,
            b: parse_signed(b).ok_or_else(err)?,
            c: parse_signed(c).ok_or_else(err)?,
        };
        self.element(&f).map_err(|_| err())
    }
}
