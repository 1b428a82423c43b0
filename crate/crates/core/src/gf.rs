//! Arithmetic in GF(2^m) through exp/log tables.
//!
//! Elements are stored in the polynomial basis: bit `i` of the encoding is the
//! coefficient of `T^i` modulo the field's defining polynomial. Addition is XOR
//! and needs no context; everything else goes through a [`FieldContext`].

use std::fmt;
use std::ops::{Add, AddAssign};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("extension degree {0} outside 1..={MAX_DEGREE}")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus:#x} does not have degree {m}")]
    WrongDegree { m: u32, modulus: u32 },
    #[error("modulus {modulus:#x} is reducible: divisible by {factor:#x}")]
    Reducible { modulus: u32, factor: u32 },
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("subfield degree {sub} does not divide {m}")]
    NotADivisor { sub: u32, m: u32 },
    #[error("element {value:#x} does not fit in GF(2^{m})")]
    ElementOutOfRange { value: u32, m: u32 },
    #[error("invalid hex element {0:?}")]
    BadHex(String),
    #[error("set is not closed under addition: {a} + {b} is missing")]
    NotClosed { a: Elem, b: Elem },
    #[error("set does not contain zero")]
    MissingZero,
    #[error("{0} is not in the subfield")]
    NotInSubfield(Elem),
}

/// A field element in polynomial-basis encoding.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

// addition in characteristic 2 is xor
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Elem {
    type Output = Elem;
    #[inline]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Elem {
    #[inline]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elem({:#x})", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

impl Serialize for Elem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{:x}", self.0))
    }
}

impl<'de> Deserialize<'de> for Elem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_hex(&s).map(Elem).map_err(serde::de::Error::custom)
    }
}

/// Parses a hex string (optional `0x` prefix) into raw bits. Range is not checked.
pub fn parse_hex(s: &str) -> Result<u32, FieldError> {
    let t = s.trim();
    let t = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t);
    if t.is_empty() || t.len() > 8 || !t.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(FieldError::BadHex(s.to_string()));
    }
    u32::from_str_radix(t, 16).map_err(|_| FieldError::BadHex(s.to_string()))
}

// Polynomials over GF(2), bit-encoded.

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

fn clmul(a: u64, b: u64) -> u64 {
    let mut r = 0;
    let mut b = b;
    let mut i = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a << i;
        }
        b >>= 1;
        i += 1;
    }
    r
}

fn mulmod(a: u32, b: u32, modulus: u32) -> u32 {
    poly_mod(clmul(a as u64, b as u64), modulus as u64) as u32
}

fn powmod(mut base: u32, mut e: u64, modulus: u32) -> u32 {
    let mut r = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, base, modulus);
        }
        base = mulmod(base, base, modulus);
        e >>= 1;
    }
    r
}

/// Smallest nontrivial factor of `modulus` over GF(2), by trial division.
pub fn smallest_factor(modulus: u32) -> Option<u32> {
    let m = poly_degree(modulus as u64);
    if m <= 1 {
        return None;
    }
    for deg in 1..=(m / 2) {
        for low in 0..(1u32 << deg) {
            let cand = (1u32 << deg) | low;
            if poly_mod(modulus as u64, cand as u64) == 0 {
                return Some(cand);
            }
        }
    }
    None
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_primitive_element(x: u32, modulus: u32, order: u64, factors: &[u64]) -> bool {
    x != 0
        && powmod(x, order, modulus) == 1
        && factors.iter().all(|p| powmod(x, order / p, modulus) != 1)
}

/// Degree and defining polynomial of a binary extension field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub m: u32,
    /// Bit `i` is the coefficient of `T^i`; bit `m` must be set.
    #[serde(with = "hex_u32")]
    pub modulus: u32,
}

mod hex_u32 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u32, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{v:x}"))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u32, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_hex(&s).map_err(serde::de::Error::custom)
    }
}

impl FieldSpec {
    pub fn new(m: u32, modulus: u32) -> Self {
        FieldSpec { m, modulus }
    }

    /// The default modulus for degree `m`: the primitive polynomial with the
    /// smallest encoding. Gives T^4+T+1, T^5+T^2+1 and T^6+T+1 for m = 4, 5, 6.
    pub fn default_for(m: u32) -> Result<Self, FieldError> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(FieldError::DegreeOutOfRange(m));
        }
        let order = (1u64 << m) - 1;
        let factors = prime_factors(order);
        for low in 0..(1u32 << m) {
            let cand = (1u32 << m) | low;
            if smallest_factor(cand).is_some() {
                continue;
            }
            // T itself must generate the multiplicative group
            let t = if m == 1 { 1 } else { 2 };
            if is_primitive_element(t, cand, order, &factors) {
                return Ok(FieldSpec { m, modulus: cand });
            }
        }
        unreachable!("every degree has a primitive polynomial")
    }

    pub fn validate(&self) -> Result<(), FieldError> {
        if !(1..=MAX_DEGREE).contains(&self.m) {
            return Err(FieldError::DegreeOutOfRange(self.m));
        }
        if poly_degree(self.modulus as u64) != self.m as i32 {
            return Err(FieldError::WrongDegree {
                m: self.m,
                modulus: self.modulus,
            });
        }
        if let Some(factor) = smallest_factor(self.modulus) {
            return Err(FieldError::Reducible {
                modulus: self.modulus,
                factor,
            });
        }
        Ok(())
    }
}

/// A concrete GF(2^m) with exp/log tables for a fixed primitive element.
///
/// Cloning shares the tables.
#[derive(Clone)]
pub struct FieldContext {
    spec: FieldSpec,
    q: u32,
    generator: Elem,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`, doubled to skip a reduction.
    exp: Arc<[u32]>,
    /// `log[x]` for nonzero x; `log[0]` is unused.
    log: Arc<[u32]>,
    xi: Option<Elem>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("m", &self.spec.m)
            .field("modulus", &format_args!("{:#x}", self.spec.modulus))
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl FieldContext {
    pub fn new(spec: FieldSpec) -> Result<Self, FieldError> {
        spec.validate()?;
        let m = spec.m;
        let q = 1u32 << m;
        let order = (q - 1) as u64;
        let factors = prime_factors(order);

        // Prefer T when it is primitive; otherwise the smallest primitive element.
        let generator = if m == 1 {
            1
        } else if is_primitive_element(2, spec.modulus, order, &factors) {
            2
        } else {
            (2..q)
                .find(|&x| is_primitive_element(x, spec.modulus, order, &factors))
                .expect("multiplicative group is cyclic")
        };

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x;
            exp[i + n] = x;
            log[x as usize] = i as u32;
            x = mulmod(x, generator, spec.modulus);
        }
        debug_assert_eq!(x, 1);

        let xi = if m.is_multiple_of(2) {
            let r = n / 3;
            Some(Elem(exp[r].min(exp[2 * r])))
        } else {
            None
        };

        Ok(FieldContext {
            spec,
            q,
            generator: Elem(generator),
            exp: exp.into(),
            log: log.into(),
            xi,
        })
    }

    /// Field of degree `m` with the default modulus.
    pub fn with_degree(m: u32) -> Result<Self, FieldError> {
        Self::new(FieldSpec::default_for(m)?)
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn m(&self) -> u32 {
        self.spec.m
    }

    /// Number of elements.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// The root of `T^2 + T + 1` with the smaller encoding (even `m` only).
    pub fn xi(&self) -> Option<Elem> {
        self.xi
    }

    /// Both roots of `T^2 + T + 1`, smaller encoding first.
    pub fn xi_roots(&self) -> Option<[Elem; 2]> {
        self.xi.map(|x| [x, x + Elem::ONE])
    }

    pub fn elem(&self, bits: u32) -> Result<Elem, FieldError> {
        if bits < self.q {
            Ok(Elem(bits))
        } else {
            Err(FieldError::ElementOutOfRange {
                value: bits,
                m: self.spec.m,
            })
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem, FieldError> {
        self.elem(parse_hex(s)?)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(Elem)
    }

    /// `g^i` for the fixed generator.
    #[inline]
    pub fn exp(&self, i: u64) -> Elem {
        Elem(self.exp[(i % (self.q as u64 - 1)) as usize])
    }

    /// Discrete log to base the generator; `None` for zero.
    #[inline]
    pub fn log(&self, x: Elem) -> Option<u32> {
        (!x.is_zero()).then(|| self.log[x.0 as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            Elem::ZERO
        } else {
            Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
        }
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::InverseOfZero);
        }
        let n = self.q - 1;
        Ok(Elem(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (e % n)) % n;
        Elem(self.exp[l as usize])
    }

    /// Unique square root, `x^(2^(m-1))`.
    pub fn sqrt(&self, a: Elem) -> Elem {
        self.pow(a, 1u64 << (self.spec.m - 1))
    }

    /// `x^(2^k)`.
    pub fn frobenius(&self, a: Elem, k: u32) -> Elem {
        let mut x = a;
        for _ in 0..k {
            x = self.square(x);
        }
        x
    }

    /// Relative trace onto the subfield of size `2^sub_m`.
    pub fn trace_to(&self, x: Elem, sub_m: u32) -> Result<Elem, FieldError> {
        self.check_divisor(sub_m)?;
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..self.spec.m / sub_m {
            acc += y;
            y = self.frobenius(y, sub_m);
        }
        Ok(acc)
    }

    /// Absolute trace as a bit.
    pub fn trace(&self, x: Elem) -> u32 {
        self.trace_to(x, 1).expect("1 divides m").0
    }

    fn check_divisor(&self, sub_m: u32) -> Result<(), FieldError> {
        if sub_m == 0 || !self.spec.m.is_multiple_of(sub_m) {
            Err(FieldError::NotADivisor {
                sub: sub_m,
                m: self.spec.m,
            })
        } else {
            Ok(())
        }
    }

    /// Table of `c * x` over all `x`, indexed by the encoding of `x`.
    pub fn mul_table(&self, c: Elem) -> Vec<u32> {
        self.elements().map(|x| self.mul(c, x).0).collect()
    }
}

/// Injective homomorphism GF(2^s) -> GF(2^m) for `s | m`.
///
/// The small field is represented in its own polynomial basis modulo the
/// minimal polynomial of `g^((2^m-1)/(2^s-1))`, so its class of `T` maps to
/// that power of the big field's generator.
#[derive(Debug, Clone)]
pub struct SubfieldEmbedding {
    sub: FieldContext,
    image_of: Vec<Elem>,
    /// Big-field encoding to small-field encoding, `u32::MAX` outside the image.
    preimage: Vec<u32>,
    stride: u64,
}

impl SubfieldEmbedding {
    pub fn new(big: &FieldContext, sub_m: u32) -> Result<Self, FieldError> {
        big.check_divisor(sub_m)?;
        let stride = (big.q as u64 - 1) / ((1u64 << sub_m) - 1);
        let beta = big.exp(stride);

        // minimal polynomial of beta: product over the conjugates beta^(2^i), i < s
        let mut poly = vec![Elem::ONE];
        let mut conj = beta;
        for _ in 0..sub_m {
            let mut next = vec![Elem::ZERO; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] += big.mul(c, conj);
            }
            poly = next;
            conj = big.square(conj);
        }
        let mut modulus = 0u32;
        for (i, c) in poly.iter().enumerate() {
            debug_assert!(c.0 <= 1, "minimal polynomial has binary coefficients");
            if *c == Elem::ONE {
                modulus |= 1 << i;
            }
        }
        let sub = FieldContext::new(FieldSpec::new(sub_m, modulus))?;

        let mut powers = Vec::with_capacity(sub_m as usize);
        let mut p = Elem::ONE;
        for _ in 0..sub_m {
            powers.push(p);
            p = big.mul(p, beta);
        }
        let mut image_of = Vec::with_capacity(sub.q as usize);
        let mut preimage = vec![u32::MAX; big.q as usize];
        for x in 0..sub.q {
            let mut y = Elem::ZERO;
            for (i, &pw) in powers.iter().enumerate() {
                if x >> i & 1 == 1 {
                    y += pw;
                }
            }
            preimage[y.0 as usize] = x;
            image_of.push(y);
        }
        Ok(SubfieldEmbedding {
            sub,
            image_of,
            preimage,
            stride,
        })
    }

    pub fn subfield(&self) -> &FieldContext {
        &self.sub
    }

    /// Exponent `r` with `T -> g^r`.
    pub fn stride(&self) -> u64 {
        self.stride
    }

    pub fn embed(&self, x: Elem) -> Elem {
        self.image_of[x.0 as usize]
    }

    /// Inverse of [`embed`](Self::embed) on the image.
    pub fn restrict(&self, y: Elem) -> Result<Elem, FieldError> {
        match self.preimage.get(y.0 as usize) {
            Some(&x) if x != u32::MAX => Ok(Elem(x)),
            _ => Err(FieldError::NotInSubfield(y)),
        }
    }

    pub fn contains(&self, y: Elem) -> bool {
        self.preimage
            .get(y.0 as usize)
            .is_some_and(|&x| x != u32::MAX)
    }

    /// The image, in order of small-field encoding.
    pub fn image(&self) -> &[Elem] {
        &self.image_of
    }
}

/// Linearized polynomial `sum_i c_i T^(2^i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspacePolynomial {
    /// `coeffs[i]` multiplies `T^(2^i)`.
    coeffs: Vec<Elem>,
}

impl SubspacePolynomial {
    pub fn from_coeffs(coeffs: Vec<Elem>) -> Self {
        SubspacePolynomial { coeffs }
    }

    /// `prod_{h in H} (T - h)` for an additive subgroup given by its elements.
    pub fn from_subgroup(field: &FieldContext, elements: &[Elem]) -> Result<Self, FieldError> {
        let basis = check_additive_closure(elements)?;
        // L_{V+<v>}(T) = L_V(T)^2 + L_V(v) L_V(T)
        let mut poly = SubspacePolynomial {
            coeffs: vec![Elem::ONE],
        };
        for v in basis {
            let lv = poly.eval(field, v);
            let mut next = vec![Elem::ZERO; poly.coeffs.len() + 1];
            for (i, &c) in poly.coeffs.iter().enumerate() {
                next[i + 1] += field.square(c);
                next[i] += field.mul(lv, c);
            }
            poly.coeffs = next;
        }
        Ok(poly)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Ordinary degree, `2^(len-1)`.
    pub fn degree(&self) -> u64 {
        match self.coeffs.iter().rposition(|c| !c.is_zero()) {
            Some(i) => 1u64 << i,
            None => 0,
        }
    }

    /// Dense coefficient vector indexed by exponent.
    pub fn dense(&self) -> Vec<Elem> {
        let mut out = vec![Elem::ZERO; self.degree() as usize + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[1usize << i] = c;
            }
        }
        out
    }

    pub fn eval(&self, field: &FieldContext, x: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut p = x;
        for &c in &self.coeffs {
            acc += field.mul(c, p);
            p = field.square(p);
        }
        acc
    }
}

/// Verifies `elements` is an additive subgroup and returns a GF(2)-basis.
///
/// The set is a subgroup iff it contains zero, has no repeats, and its size is
/// `2^rank`: it then fills its own span.
pub(crate) fn check_additive_closure(elements: &[Elem]) -> Result<Vec<Elem>, FieldError> {
    if !elements.contains(&Elem::ZERO) {
        return Err(FieldError::MissingZero);
    }
    let mut sorted: Vec<Elem> = elements.to_vec();
    sorted.sort_unstable();
    sorted.dedup();

    let mut pivots: Vec<u32> = Vec::new();
    let mut basis = Vec::new();
    for &e in &sorted {
        let mut r = e.0;
        for &p in &pivots {
            r = r.min(r ^ p);
        }
        if r != 0 {
            pivots.push(r);
            pivots.sort_unstable_by(|a, b| b.cmp(a));
            basis.push(e);
        }
    }
    if basis.len() < 32 && sorted.len() == 1usize << basis.len() && sorted.len() == elements.len() {
        return Ok(basis);
    }
    for &a in &sorted {
        for &b in &sorted {
            if sorted.binary_search(&(a + b)).is_err() {
                return Err(FieldError::NotClosed { a, b });
            }
        }
    }
    // closed but with repeated entries
    Err(FieldError::NotClosed {
        a: sorted[0],
        b: sorted[0],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f16() -> FieldContext {
        FieldContext::new(FieldSpec::new(4, 0x13)).unwrap()
    }

    #[test]
    fn default_moduli() {
        assert_eq!(FieldSpec::default_for(4).unwrap().modulus, 0x13);
        assert_eq!(FieldSpec::default_for(5).unwrap().modulus, 0x25);
        assert_eq!(FieldSpec::default_for(6).unwrap().modulus, 0x43);
        for m in 1..=MAX_DEGREE {
            let spec = FieldSpec::default_for(m).unwrap();
            assert!(spec.validate().is_ok(), "m={m}");
        }
    }

    #[test]
    fn eta_relation() {
        let f = f16();
        let eta = f.generator();
        assert_eq!(eta, Elem(2));
        assert_eq!(f.pow(eta, 4), eta + Elem::ONE);
        assert_eq!(f.mul(eta, f.pow(eta, 14)), Elem::ONE);
    }

    #[test]
    fn omega_relation() {
        let f = FieldContext::new(FieldSpec::new(5, 0x25)).unwrap();
        let w = f.generator();
        assert_eq!(f.pow(w, 5) + f.pow(w, 2) + Elem::ONE, Elem::ZERO);
    }

    #[test]
    fn reducible_modulus_names_factor() {
        // T^4+T^2+1 = (T^2+T+1)^2
        assert_eq!(clmul(0b111, 0b111), 0b10101);
        let err = FieldContext::new(FieldSpec::new(4, 0b10101)).unwrap_err();
        assert_eq!(
            err,
            FieldError::Reducible {
                modulus: 0b10101,
                factor: 0b111
            }
        );
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(
            FieldContext::new(FieldSpec::new(0, 1)),
            Err(FieldError::DegreeOutOfRange(0))
        ));
        assert!(matches!(
            FieldContext::new(FieldSpec::new(21, (1 << 21) | 5)),
            Err(FieldError::DegreeOutOfRange(21))
        ));
        assert!(matches!(
            FieldContext::new(FieldSpec::new(4, 0x25)),
            Err(FieldError::WrongDegree { .. })
        ));
    }

    #[test]
    fn non_primitive_modulus_still_builds() {
        // T^4+T^3+T^2+T+1 is irreducible but T has order 5
        let f = FieldContext::new(FieldSpec::new(4, 0x1f)).unwrap();
        assert_ne!(f.generator(), Elem(2));
        let g = f.generator();
        assert_eq!(f.pow(g, 15), Elem::ONE);
        assert!((1..15).all(|e| f.pow(g, e) != Elem::ONE));
    }

    #[test]
    fn sqrt_and_xi() {
        let f = f16();
        let xi = f.xi().unwrap();
        assert_eq!(f.square(xi) + xi, Elem::ONE);
        assert_eq!(f.sqrt(xi + Elem::ONE), xi);
        let [a, b] = f.xi_roots().unwrap();
        assert!(a < b);
        assert_eq!(f.square(b) + b, Elem::ONE);
        assert!(FieldContext::with_degree(5).unwrap().xi().is_none());
    }

    #[test]
    fn trace_of_eta_is_zero() {
        let f = f16();
        let eta = f.generator();
        // eta + eta^2 + eta^4 + eta^8 with eta^4 = eta + 1:
        // eta^8 = eta^2 + 1, so the sum is eta + eta^2 + eta + 1 + eta^2 + 1 = 0
        let hand = eta + f.pow(eta, 2) + (eta + Elem::ONE) + (f.pow(eta, 2) + Elem::ONE);
        assert_eq!(hand, Elem::ZERO);
        assert_eq!(f.trace_to(eta, 1).unwrap(), Elem::ZERO);
    }

    #[test]
    fn trace_errors_on_non_divisor() {
        let f = f16();
        assert_eq!(
            f.trace_to(Elem::ONE, 3),
            Err(FieldError::NotADivisor { sub: 3, m: 4 })
        );
        assert!(SubfieldEmbedding::new(&f, 3).is_err());
        assert_eq!(f.inv(Elem::ZERO), Err(FieldError::InverseOfZero));
    }

    #[test]
    fn embed_f8_in_f64() {
        let big = FieldContext::with_degree(6).unwrap();
        let emb = SubfieldEmbedding::new(&big, 3).unwrap();
        assert_eq!(emb.stride(), 9);
        assert_eq!(emb.embed(Elem::ZERO), Elem::ZERO);
        assert_eq!(emb.embed(Elem::ONE), Elem::ONE);
        let t = emb.embed(Elem(2));
        assert_eq!(t, big.exp(9));
        assert!((1..7).all(|e| big.pow(t, e) != Elem::ONE));
        assert_eq!(big.pow(t, 7), Elem::ONE);

        let image = emb.image();
        for &a in image {
            for &b in image {
                assert!(emb.contains(a + b));
            }
            // fixed by the 2^3-power Frobenius
            assert_eq!(big.frobenius(a, 3), a);
        }
        let sub = emb.subfield();
        for x in sub.elements() {
            for y in sub.elements() {
                assert_eq!(
                    emb.embed(sub.mul(x, y)),
                    big.mul(emb.embed(x), emb.embed(y))
                );
                assert_eq!(emb.embed(x + y), emb.embed(x) + emb.embed(y));
            }
            assert_eq!(emb.restrict(emb.embed(x)).unwrap(), x);
        }
    }

    #[test]
    fn subspace_polynomials() {
        let f = f16();
        let l = SubspacePolynomial::from_subgroup(&f, &[Elem::ZERO]).unwrap();
        assert_eq!(l.dense(), vec![Elem::ZERO, Elem::ONE]);

        let l = SubspacePolynomial::from_subgroup(&f, &[Elem::ZERO, Elem::ONE]).unwrap();
        assert_eq!(l.dense(), vec![Elem::ZERO, Elem::ONE, Elem::ONE]);

        let eta = f.generator();
        let err = SubspacePolynomial::from_subgroup(&f, &[Elem::ZERO, Elem::ONE, eta]).unwrap_err();
        assert!(matches!(err, FieldError::NotClosed { .. }));
        assert_eq!(
            SubspacePolynomial::from_subgroup(&f, &[Elem::ONE]),
            Err(FieldError::MissingZero)
        );
    }

    #[test]
    fn subfield_polynomial_is_frobenius_minus_identity() {
        let big = FieldContext::with_degree(6).unwrap();
        let emb = SubfieldEmbedding::new(&big, 3).unwrap();
        let l = SubspacePolynomial::from_subgroup(&big, emb.image()).unwrap();
        let mut expect = vec![Elem::ZERO; 9];
        expect[1] = Elem::ONE;
        expect[8] = Elem::ONE;
        assert_eq!(l.dense(), expect);
    }

    #[test]
    fn parse_hex_forms() {
        assert_eq!(parse_hex("0x1F").unwrap(), 0x1f);
        assert_eq!(parse_hex("a").unwrap(), 10);
        assert!(parse_hex("").is_err());
        assert!(parse_hex("0x").is_err());
        assert!(parse_hex("+1").is_err());
        assert!(parse_hex("123456789").is_err());
        let f = f16();
        assert!(f.parse_elem("10").is_err());
        assert_eq!(f.parse_elem("f").unwrap(), Elem(15));
    }
}
