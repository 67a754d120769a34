//! Exact arithmetic over prime fields, small extension fields and the
//! rationals, plus cyclic subgroup location inside multiplicative groups.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Finite fields larger than this are out of scope.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over Z_{0}")]
    ReducibleModulus(u64),
    #[error("modulus must be monic of degree {expected} with coefficients below {p}")]
    BadModulus { expected: usize, p: u64 },
    #[error("zero element has no multiplicative order")]
    ZeroElement,
    #[error("no element of order {m}: {m} does not divide {group_order}")]
    NoSuchOrder { m: u64, group_order: u64 },
    #[error("field size {0} exceeds limit {}", MAX_FIELD_SIZE)]
    FieldTooLarge(u64),
    #[error("cannot parse field element: {0}")]
    ParseElement(String),
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("division by zero")]
    DivisionByZero,
}

/// Description of the arithmetic carrier: characteristic 0 means the
/// rationals, otherwise a prime field or an extension of one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    #[serde(alias = "p")]
    pub characteristic: u64,
    #[serde(default = "one_usize", alias = "k")]
    pub extension_degree: usize,
    /// Monic irreducible modulus, little-endian coefficients, length k+1.
    /// When absent for k > 1 a default modulus is chosen deterministically.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

fn one_usize() -> usize {
    1
}

impl FieldSpec {
    pub fn prime(p: u64) -> Self {
        FieldSpec { characteristic: p, extension_degree: 1, modulus: None }
    }

    pub fn extension(p: u64, k: usize) -> Self {
        FieldSpec { characteristic: p, extension_degree: k, modulus: None }
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0, extension_degree: 1, modulus: None }
    }
}

/// Arithmetic context. All element operations are pure; values are
/// immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Field {
    Prime { p: u64 },
    /// Extension field F_{p^k}; elements are little-endian coefficient
    /// vectors reduced modulo `modulus`.
    Ext { p: u64, k: usize, modulus: Vec<u64> },
    Rationals,
}

/// A canonical field element: residues in [0, p), rationals in lowest
/// terms with positive denominator. Equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldElement {
    Prime(u64),
    Ext(Vec<u64>),
    Rational(BigRational),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---- dense polynomial helpers over Z_p (little-endian coefficients) ----

fn poly_trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm || (r.len() == dm + 1 && dm == 0) {
        let dr = r.len() - 1;
        if dr < dm {
            break;
        }
        let q = r[dr] * lead_inv % p;
        for i in 0..=dm {
            let idx = dr - dm + i;
            let sub = q * m[i] % p;
            r[idx] = (r[idx] + p - sub) % p;
        }
        poly_trim(&mut r);
        if r.len() == 1 && r[0] == 0 {
            break;
        }
    }
    r
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Exhaustive trial division by all monic polynomials of degree up to
/// deg(m)/2. Desk-scale only.
fn poly_irreducible(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        // enumerate monic divisor candidates of degree d
        let count = p.pow(d as u32);
        for t in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut v = t;
            for _ in 0..d {
                cand.push(v % p);
                v /= p;
            }
            cand.push(1);
            let r = poly_rem(m, &cand, p);
            if r.len() == 1 && r[0] == 0 {
                return false;
            }
        }
    }
    true
}

/// Smallest (in the fixed enumeration order of lower-coefficient
/// vectors) monic irreducible polynomial of degree k over Z_p.
fn default_modulus(p: u64, k: usize) -> Vec<u64> {
    let count = p.pow(k as u32);
    for t in 0..count {
        let mut m = Vec::with_capacity(k + 1);
        let mut v = t;
        for _ in 0..k {
            m.push(v % p);
            v /= p;
        }
        m.push(1);
        if poly_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over Z_p")
}

impl Field {
    pub fn make(spec: &FieldSpec) -> Result<Field, AlgebraError> {
        if spec.characteristic == 0 {
            return Ok(Field::Rationals);
        }
        let p = spec.characteristic;
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let k = spec.extension_degree;
        let size = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if size > MAX_FIELD_SIZE as u128 {
            return Err(AlgebraError::FieldTooLarge(size.min(u64::MAX as u128) as u64));
        }
        if k == 1 {
            return Ok(Field::Prime { p });
        }
        let modulus = match &spec.modulus {
            Some(m) => {
                if m.len() != k + 1 || m[k] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(AlgebraError::BadModulus { expected: k, p });
                }
                if !poly_irreducible(m, p) {
                    return Err(AlgebraError::ReducibleModulus(p));
                }
                m.clone()
            }
            None => default_modulus(p, k),
        };
        Ok(Field::Ext { p, k, modulus })
    }

    pub fn prime(p: u64) -> Field {
        Field::make(&FieldSpec::prime(p)).expect("p must be prime")
    }

    pub fn spec(&self) -> FieldSpec {
        match self {
            Field::Prime { p } => FieldSpec::prime(*p),
            Field::Ext { p, k, modulus } => FieldSpec {
                characteristic: *p,
                extension_degree: *k,
                modulus: Some(modulus.clone()),
            },
            Field::Rationals => FieldSpec::rationals(),
        }
    }

    pub fn size(&self) -> Option<u64> {
        match self {
            Field::Prime { p } => Some(*p),
            Field::Ext { p, k, .. } => Some(p.pow(*k as u32)),
            Field::Rationals => None,
        }
    }

    pub fn zero(&self) -> FieldElement {
        match self {
            Field::Prime { .. } => FieldElement::Prime(0),
            Field::Ext { k, .. } => FieldElement::Ext(vec![0; *k]),
            Field::Rationals => FieldElement::Rational(BigRational::zero()),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        match self {
            Field::Prime { p } => {
                let r = v.rem_euclid(*p as i64) as u64;
                FieldElement::Prime(r)
            }
            Field::Ext { p, k, .. } => {
                let mut c = vec![0; *k];
                c[0] = v.rem_euclid(*p as i64) as u64;
                FieldElement::Ext(c)
            }
            Field::Rationals => FieldElement::Rational(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Prime(r) => *r == 0,
            FieldElement::Ext(c) => c.iter().all(|&x| x == 0),
            FieldElement::Rational(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (Field::Prime { p }, FieldElement::Prime(x), FieldElement::Prime(y)) => {
                FieldElement::Prime((x + y) % p)
            }
            (Field::Ext { p, .. }, FieldElement::Ext(x), FieldElement::Ext(y)) => {
                FieldElement::Ext(x.iter().zip(y).map(|(u, v)| (u + v) % p).collect())
            }
            (Field::Rationals, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x + y)
            }
            _ => panic!("element does not belong to this field"),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match (self, a) {
            (Field::Prime { p }, FieldElement::Prime(x)) => FieldElement::Prime((p - x) % p),
            (Field::Ext { p, .. }, FieldElement::Ext(x)) => {
                FieldElement::Ext(x.iter().map(|&u| (p - u) % p).collect())
            }
            (Field::Rationals, FieldElement::Rational(x)) => FieldElement::Rational(-x),
            _ => panic!("element does not belong to this field"),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (Field::Prime { p }, FieldElement::Prime(x), FieldElement::Prime(y)) => {
                FieldElement::Prime(x * y % p)
            }
            (Field::Ext { p, k, modulus }, FieldElement::Ext(x), FieldElement::Ext(y)) => {
                let mut prod = vec![0u64; 2 * k - 1];
                for (i, &xi) in x.iter().enumerate() {
                    if xi == 0 {
                        continue;
                    }
                    for (j, &yj) in y.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + xi * yj) % p;
                    }
                }
                let mut r = poly_rem(&prod, modulus, *p);
                r.resize(*k, 0);
                FieldElement::Ext(r)
            }
            (Field::Rationals, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x * y)
            }
            _ => panic!("element does not belong to this field"),
        }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, AlgebraError> {
        if self.is_zero(a) {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            Field::Prime { p } => match a {
                FieldElement::Prime(x) => FieldElement::Prime(mod_inv(*x, *p)),
                _ => panic!("element does not belong to this field"),
            },
            Field::Ext { .. } => {
                let q = self.size().unwrap();
                self.pow(a, q - 2)
            }
            Field::Rationals => match a {
                FieldElement::Rational(x) => FieldElement::Rational(x.recip()),
                _ => panic!("element does not belong to this field"),
            },
        })
    }

    /// All field elements in the fixed enumeration order: numeric order
    /// of the coefficient vector read in base p (prime fields: 0..p-1).
    pub fn elements(&self) -> Result<Vec<FieldElement>, AlgebraError> {
        let size = self.size().ok_or(AlgebraError::InfiniteField)?;
        let mut out = Vec::with_capacity(size as usize);
        match self {
            Field::Prime { .. } => {
                for r in 0..size {
                    out.push(FieldElement::Prime(r));
                }
            }
            Field::Ext { p, k, .. } => {
                for t in 0..size {
                    let mut c = Vec::with_capacity(*k);
                    let mut v = t;
                    for _ in 0..*k {
                        c.push(v % p);
                        v /= p;
                    }
                    out.push(FieldElement::Ext(c));
                }
            }
            Field::Rationals => unreachable!(),
        }
        Ok(out)
    }

    /// Least n >= 1 with g^n = 1.
    pub fn element_order(&self, g: &FieldElement) -> Result<u64, AlgebraError> {
        if self.size().is_none() {
            return Err(AlgebraError::InfiniteField);
        }
        if self.is_zero(g) {
            return Err(AlgebraError::ZeroElement);
        }
        let one = self.one();
        let mut acc = g.clone();
        let mut n = 1;
        while acc != one {
            acc = self.mul(&acc, g);
            n += 1;
        }
        Ok(n)
    }

    /// First element (in enumeration order) of multiplicative order
    /// exactly m. Exists iff m divides |F*|.
    pub fn find_element_of_order(&self, m: u64) -> Result<FieldElement, AlgebraError> {
        let size = self.size().ok_or(AlgebraError::InfiniteField)?;
        let group_order = size - 1;
        if m == 0 || group_order % m != 0 {
            return Err(AlgebraError::NoSuchOrder { m, group_order });
        }
        for g in self.elements()? {
            if self.is_zero(&g) {
                continue;
            }
            if self.element_order(&g)? == m {
                return Ok(g);
            }
        }
        Err(AlgebraError::NoSuchOrder { m, group_order })
    }

    /// Text encoding: prime fields as decimal, extension fields as JSON
    /// arrays of residues (little-endian), rationals as "num/den".
    pub fn format_element(&self, a: &FieldElement) -> String {
        match a {
            FieldElement::Prime(r) => r.to_string(),
            FieldElement::Ext(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
            FieldElement::Rational(r) => format!("{}/{}", r.numer(), r.denom()),
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<FieldElement, AlgebraError> {
        let text = text.trim();
        match self {
            Field::Prime { .. } | Field::Ext { .. } if text.starts_with('[') => {
                let v: Vec<i64> = serde_json::from_str(text)
                    .map_err(|_| AlgebraError::ParseElement(text.to_string()))?;
                self.element_from_coeffs(&v)
            }
            _ => {
                if let Some((n, d)) = text.split_once('/') {
                    match self {
                        Field::Rationals => {
                            let n: BigInt = n
                                .trim()
                                .parse()
                                .map_err(|_| AlgebraError::ParseElement(text.to_string()))?;
                            let d: BigInt = d
                                .trim()
                                .parse()
                                .map_err(|_| AlgebraError::ParseElement(text.to_string()))?;
                            if d.is_zero() {
                                return Err(AlgebraError::ParseElement(text.to_string()));
                            }
                            Ok(FieldElement::Rational(BigRational::new(n, d)))
                        }
                        _ => Err(AlgebraError::ParseElement(text.to_string())),
                    }
                } else {
                    let v: i64 = text
                        .parse()
                        .map_err(|_| AlgebraError::ParseElement(text.to_string()))?;
                    Ok(self.from_int(v))
                }
            }
        }
    }

    fn element_from_coeffs(&self, v: &[i64]) -> Result<FieldElement, AlgebraError> {
        match self {
            Field::Ext { p, k, .. } => {
                if v.len() > *k {
                    return Err(AlgebraError::ParseElement(format!("{v:?}")));
                }
                let mut c: Vec<u64> = v.iter().map(|x| x.rem_euclid(*p as i64) as u64).collect();
                c.resize(*k, 0);
                Ok(FieldElement::Ext(c))
            }
            Field::Prime { p } => {
                if v.len() != 1 {
                    return Err(AlgebraError::ParseElement(format!("{v:?}")));
                }
                Ok(FieldElement::Prime(v[0].rem_euclid(*p as i64) as u64))
            }
            Field::Rationals => Err(AlgebraError::ParseElement(format!("{v:?}"))),
        }
    }

    /// Accepts the JSON forms used in graph documents: integers, "n/d"
    /// strings, and residue arrays for extension fields.
    pub fn element_from_json(&self, v: &serde_json::Value) -> Result<FieldElement, AlgebraError> {
        match v {
            serde_json::Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| AlgebraError::ParseElement(v.to_string()))?;
                Ok(self.from_int(i))
            }
            serde_json::Value::String(s) => self.parse_element(s),
            serde_json::Value::Array(items) => {
                let coeffs: Result<Vec<i64>, _> = items
                    .iter()
                    .map(|x| {
                        x.as_i64()
                            .ok_or_else(|| AlgebraError::ParseElement(v.to_string()))
                    })
                    .collect();
                self.element_from_coeffs(&coeffs?)
            }
            _ => Err(AlgebraError::ParseElement(v.to_string())),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime { p } => write!(f, "F_{p}"),
            Field::Ext { p, k, .. } => write!(f, "F_{{{p}^{k}}}"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::make(&FieldSpec::prime(5)).unwrap();
        assert_eq!(f.size(), Some(5));
        let two = f.from_int(2);
        let three = f.from_int(3);
        assert_eq!(f.mul(&two, &three), f.one());
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert_eq!(
            Field::make(&FieldSpec::prime(4)),
            Err(AlgebraError::NotPrime(4))
        );
    }

    #[test]
    fn default_modulus_for_f16() {
        let f = Field::make(&FieldSpec::extension(2, 4)).unwrap();
        match &f {
            Field::Ext { modulus, .. } => assert_eq!(modulus, &vec![1, 1, 0, 0, 1]),
            _ => panic!("expected extension field"),
        }
        assert_eq!(f.size(), Some(16));
        // every nonzero element has order dividing 15 and some element
        // has order exactly 15
        let mut found_generator = false;
        for g in f.elements().unwrap() {
            if f.is_zero(&g) {
                continue;
            }
            let ord = f.element_order(&g).unwrap();
            assert_eq!(15 % ord, 0);
            if ord == 15 {
                found_generator = true;
            }
        }
        assert!(found_generator);
    }

    #[test]
    fn reducible_modulus_rejected() {
        let spec = FieldSpec {
            characteristic: 2,
            extension_degree: 2,
            modulus: Some(vec![1, 0, 1]), // x^2+1 = (x+1)^2 over F_2
        };
        assert_eq!(Field::make(&spec), Err(AlgebraError::ReducibleModulus(2)));
    }

    #[test]
    fn element_order_examples() {
        let f = Field::prime(5);
        assert_eq!(f.element_order(&f.from_int(2)).unwrap(), 4);
        assert_eq!(f.element_order(&f.one()).unwrap(), 1);
        assert_eq!(
            f.element_order(&f.zero()),
            Err(AlgebraError::ZeroElement)
        );
    }

    #[test]
    fn find_order_examples() {
        let f = Field::prime(5);
        let g = f.find_element_of_order(4).unwrap();
        assert_eq!(g, f.from_int(2)); // smallest generator in enumeration order
        assert_eq!(
            f.find_element_of_order(3),
            Err(AlgebraError::NoSuchOrder { m: 3, group_order: 4 })
        );

        let f16 = Field::make(&FieldSpec::extension(2, 4)).unwrap();
        let g5 = f16.find_element_of_order(5).unwrap();
        assert_eq!(f16.element_order(&g5).unwrap(), 5);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for spec in [
            FieldSpec::prime(2),
            FieldSpec::prime(5),
            FieldSpec::extension(2, 2),
            FieldSpec::extension(3, 2),
        ] {
            let f = Field::make(&spec).unwrap();
            let els = f.elements().unwrap();
            for a in &els {
                // additive and multiplicative inverses
                assert!(f.is_zero(&f.add(a, &f.neg(a))));
                if !f.is_zero(a) {
                    assert_eq!(f.mul(a, &f.inv(a).unwrap()), f.one());
                }
                for b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for c in &els {
                        assert_eq!(
                            f.mul(a, &f.add(b, c)),
                            f.add(&f.mul(a, b), &f.mul(a, c))
                        );
                        assert_eq!(
                            f.mul(&f.mul(a, b), c),
                            f.mul(a, &f.mul(b, c))
                        );
                    }
                }
            }
            // multiplicative group is cyclic
            let n = f.size().unwrap() - 1;
            assert!(els
                .iter()
                .filter(|g| !f.is_zero(g))
                .any(|g| f.element_order(g).unwrap() == n));
        }
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let f = Field::Rationals;
        let half = f.parse_element("1/2").unwrap();
        let third = f.parse_element("1/3").unwrap();
        let sum = f.add(&half, &third);
        assert_eq!(f.format_element(&sum), "5/6");
        assert_eq!(f.mul(&half, &f.from_int(2)), f.one());
    }

    #[test]
    fn element_encoding_round_trip() {
        let f16 = Field::make(&FieldSpec::extension(2, 4)).unwrap();
        for e in f16.elements().unwrap() {
            let s = f16.format_element(&e);
            assert_eq!(f16.parse_element(&s).unwrap(), e);
        }
        let f7 = Field::prime(7);
        assert_eq!(f7.parse_element("-1").unwrap(), f7.from_int(6));
    }

    #[test]
    fn order_divides_group_order_iff_findable() {
        let f = Field::make(&FieldSpec::extension(2, 4)).unwrap();
        for m in 1..=16 {
            let found = f.find_element_of_order(m);
            if 15 % m == 0 {
                assert!(found.is_ok(), "m={m}");
            } else {
                assert!(found.is_err(), "m={m}");
            }
        }
    }
}
