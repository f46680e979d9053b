//! Finite fields `F_q = F_p[x]/(f)` with `q < 2^20`.
//!
//! An element is stored as its canonical integer encoding
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` where `c_i` are the reduced
//! coefficients of the class polynomial, low degree first. The encoding is a
//! bijection onto `0..q`, so equality of encodings is coefficient-wise
//! equality, and the integer order on encodings is the fixed total order used
//! for every "smallest element" choice in the crate.
//!
//! Multiplication goes through exp/log tables built once per context;
//! addition is XOR in characteristic 2, a lookup table for `q <= 1024`, and
//! digit-wise otherwise.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field size (exclusive).
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const ADD_TABLE_LIMIT: u32 = 1024;

/// A field element in canonical encoding. Carries no reference to its field.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FEl(pub(crate) u32);

impl FEl {
    pub const ZERO: FEl = FEl(0);
    pub const ONE: FEl = FEl(1);

    /// The canonical integer encoding, in `0..q`.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
enum Adder {
    Xor,
    Table(Vec<u32>),
    Digits,
}

/// Identifies a field context; matrices record it so that mixing fields is
/// detected at module boundaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldId(u64);

/// An explicit finite field `F_p[x]/(f)` with cached tables.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    order_primes: Vec<u64>,
    generator: FEl,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    adder: Adder,
    id: FieldId,
}

/// Parsed form of `p=<int>,k=<int>,mod=<c0,...,ck>` (or `mod=AUTO`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub k: u32,
    pub modulus: Option<Vec<u32>>,
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Parse(format!(
                "field spec `{s}`: expected p=<int>,k=<int>,mod=<c0,..,ck>|AUTO"
            ))
        };
        let s = s.trim();
        let (head, modpart) = s.split_once("mod=").ok_or_else(bad)?;
        let mut p = None;
        let mut k = None;
        for item in head.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, val) = item.split_once('=').ok_or_else(bad)?;
            let val: u64 = val.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "p" => p = Some(val),
                "k" => k = Some(u32::try_from(val).map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        let modpart = modpart.trim();
        let modulus = if modpart.eq_ignore_ascii_case("auto") {
            None
        } else {
            let coeffs = modpart
                .split(',')
                .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            Some(coeffs)
        };
        Ok(FieldSpec {
            p: p.ok_or_else(bad)?,
            k: k.ok_or_else(bad)?,
            modulus,
        })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={},k={},mod=", self.p, self.k)?;
        match &self.modulus {
            None => write!(f, "AUTO"),
            Some(m) => write!(f, "{}", join(m)),
        }
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
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

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
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

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// ---- dense polynomials over F_p, low degree first, used only at setup ----

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dm = m.len() - 1;
    let p64 = p as u64;
    while r.len() > dm {
        let lead = r[r.len() - 1] % p64;
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let sub = lead * mc as u64 % p64;
                r[shift + i] = (r[shift + i] + p64 - sub) % p64;
            }
        }
        r.pop();
    }
    let mut out: Vec<u32> = r.into_iter().map(|c| (c % p64) as u32).collect();
    poly_trim(&mut out);
    out
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    poly_rem_monic(&prod, m, p)
}

fn poly_powmod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut base = poly_rem_monic(a, m, p);
    let mut acc = vec![1u32];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, m, p);
        }
        base = poly_mulmod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p
/// digits of `t`.
fn monic_from_index(t: u64, deg: usize, p: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(deg + 1);
    let mut t = t;
    for _ in 0..deg {
        out.push((t % p as u64) as u32);
        t /= p as u64;
    }
    out.push(1);
    out
}

/// Irreducibility by trial division by every monic polynomial of degree
/// `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for t in 0..count {
            let g = monic_from_index(t, d, p);
            if poly_rem_monic(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `k` (comparing
/// coefficients from the highest non-leading degree down, i.e. the integer
/// encoding of the lower coefficients).
pub fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    (0..count)
        .map(|t| monic_from_index(t, k as usize, p))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

impl FieldCtx {
    /// Builds `F_{p^k}`. With `modulus = None` the smallest monic irreducible
    /// of degree `k` is selected.
    pub fn new(p: u64, k: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: 0,
            });
        }
        let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if q >= MAX_FIELD_SIZE as u128 {
            return Err(Error::FieldTooLarge(q.min(u64::MAX as u128) as u64));
        }
        let p = p as u32;
        let q = q as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 {
                    return Err(Error::DegreeMismatch {
                        expected: k as usize,
                        got: m.len().saturating_sub(1),
                    });
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(Error::InvalidCoefficient(c as u64));
                }
                if m[k as usize] != 1 {
                    return Err(Error::NotMonic);
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m.to_vec()
            }
            None => smallest_irreducible(p, k),
        };
        Ok(Self::build(p, k, q, modulus))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        Self::new(spec.p, spec.k, spec.modulus.as_deref())
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    fn build(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Self {
        let order_primes = prime_factors(q as u64 - 1);
        let to_poly = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(k as usize);
            let mut x = x;
            for _ in 0..k {
                v.push(x % p);
                x /= p;
            }
            poly_trim(&mut v);
            v
        };
        let from_poly = |v: &[u32]| -> u32 { v.iter().rev().fold(0u32, |acc, &c| acc * p + c) };
        // smallest primitive element
        let generator = (1..q)
            .find(|&x| {
                let g = to_poly(x);
                order_primes
                    .iter()
                    .all(|&r| poly_powmod(&g, (q as u64 - 1) / r, &modulus, p) != vec![1u32])
            })
            .expect("F_q^x is cyclic");
        let gpoly = to_poly(generator);
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![1u32];
        for (i, slot) in exp.iter_mut().take(n).enumerate() {
            let v = from_poly(&cur);
            *slot = v;
            log[v as usize] = i as u32;
            cur = poly_mulmod(&cur, &gpoly, &modulus, p);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        let adder = if p == 2 {
            Adder::Xor
        } else if q <= ADD_TABLE_LIMIT {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(a, b, p, k);
                }
            }
            Adder::Table(t)
        } else {
            Adder::Digits
        };
        let neg = (0..q)
            .map(|a| {
                let mut r = 0;
                let mut pw = 1;
                let mut a = a;
                for _ in 0..k {
                    r += ((p - a % p) % p) * pw;
                    pw *= p;
                    a /= p;
                }
                r
            })
            .collect();
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for v in [p, k].iter().chain(modulus.iter()) {
            h ^= *v as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        FieldCtx {
            p,
            k,
            q,
            modulus,
            order_primes,
            generator: FEl(generator),
            exp,
            log,
            neg,
            adder,
            id: FieldId(h),
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }
    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn id(&self) -> FieldId {
        self.id
    }
    /// Distinct primes dividing `q - 1`.
    pub fn order_primes(&self) -> &[u64] {
        &self.order_primes
    }
    /// Smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> FEl {
        self.generator
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p as u64,
            k: self.k,
            modulus: Some(self.modulus.clone()),
        }
    }

    /// Bits needed to store one element encoding.
    pub fn bits_per_element(&self) -> u32 {
        32 - (self.q - 1).leading_zeros()
    }

    /// Class of `x`.
    pub fn x(&self) -> FEl {
        if self.k == 1 {
            // x reduces to minus the constant term
            FEl(self.neg[self.modulus[0] as usize])
        } else {
            FEl(self.p)
        }
    }

    pub fn element(&self, index: u32) -> Result<FEl> {
        if index < self.q {
            Ok(FEl(index))
        } else {
            Err(Error::InvalidCoefficient(index as u64))
        }
    }

    /// Every element in the fixed total order.
    pub fn elements(&self) -> impl Iterator<Item = FEl> {
        (0..self.q).map(FEl)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FEl> {
        if coeffs.len() > self.k as usize {
            return Err(Error::DegreeMismatch {
                expected: self.k as usize,
                got: coeffs.len(),
            });
        }
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::InvalidCoefficient(c as u64));
            }
            v = v * self.p + c;
        }
        Ok(FEl(v))
    }

    pub fn coeffs(&self, x: FEl) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut t = x.0;
        for _ in 0..self.k {
            v.push(t % self.p);
            t /= self.p;
        }
        v
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FEl {
        FEl(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: FEl, b: FEl) -> FEl {
        match &self.adder {
            Adder::Xor => FEl(a.0 ^ b.0),
            Adder::Table(t) => FEl(t[(a.0 * self.q + b.0) as usize]),
            Adder::Digits => FEl(digit_add(a.0, b.0, self.p, self.k)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FEl) -> FEl {
        FEl(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FEl, b: FEl) -> FEl {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FEl, b: FEl) -> FEl {
        if a.0 == 0 || b.0 == 0 {
            FEl(0)
        } else {
            FEl(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
        }
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: FEl) -> Result<FEl> {
        if a.is_zero() {
            Err(Error::ZeroElement)
        } else {
            Ok(self.inv_nonzero(a))
        }
    }

    #[inline]
    pub(crate) fn inv_nonzero(&self, a: FEl) -> FEl {
        debug_assert!(!a.is_zero());
        let n = self.q - 1;
        FEl(self.exp[((n - self.log[a.0 as usize]) % n) as usize])
    }

    pub fn div(&self, a: FEl, b: FEl) -> Result<FEl> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FEl, e: u64) -> FEl {
        if e == 0 {
            return FEl::ONE;
        }
        if a.is_zero() {
            return FEl::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64 * (e % n) % n;
        FEl(self.exp[l as usize])
    }

    /// Power with a signed exponent; zero to a negative power is an error.
    pub fn powi(&self, a: FEl, e: i64) -> Result<FEl> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    pub fn element_order(&self, x: FEl) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut ord = self.q as u64 - 1;
        for &r in &self.order_primes {
            while ord.is_multiple_of(r) && self.pow(x, ord / r) == FEl::ONE {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Smallest element (in the fixed order) of multiplicative order `m`.
    pub fn find_element_of_order(&self, m: u64) -> Result<FEl> {
        let n = self.q as u64 - 1;
        if m == 0 || !n.is_multiple_of(m) {
            return Err(Error::NoSuchOrder(m));
        }
        (1..self.q)
            .map(FEl)
            .find(|&x| n / gcd(self.log[x.0 as usize] as u64, n) == m)
            .ok_or(Error::NoSuchOrder(m))
    }

    /// `x^(p^i)`; `i` is taken modulo `k`.
    pub fn frobenius(&self, x: FEl, i: i64) -> FEl {
        let i = i.rem_euclid(self.k as i64) as u32;
        self.pow(x, (self.p as u64).pow(i))
    }

    /// The involution `x -> x^(sqrt q)`, defined for even `k`.
    pub fn conj(&self, x: FEl) -> Result<FEl> {
        if !self.k.is_multiple_of(2) {
            return Err(Error::ConjUndefined(self.k));
        }
        Ok(self.frobenius(x, (self.k / 2) as i64))
    }

    pub fn has_conj(&self) -> bool {
        self.k.is_multiple_of(2)
    }

    pub fn in_subfield(&self, x: FEl, d: u32) -> bool {
        self.frobenius(x, d as i64) == x
    }

    /// Degree over `F_p` of the field generated by `set`.
    pub fn subfield_degree_of<I: IntoIterator<Item = FEl>>(&self, set: I) -> u32 {
        let divisors: Vec<u32> = (1..=self.k).filter(|d| self.k.is_multiple_of(*d)).collect();
        // degree of the generated field is the lcm of the individual degrees
        let mut deg = 1u32;
        for x in set {
            if self.in_subfield(x, deg) {
                continue;
            }
            let dx = *divisors
                .iter()
                .find(|&&d| self.in_subfield(x, d))
                .expect("every element lies in F_q");
            deg = (deg as u64 * dx as u64 / gcd(deg as u64, dx as u64)) as u32;
        }
        deg
    }

    /// `x * conj(x)`, valued in the index-2 subfield.
    pub fn norm(&self, x: FEl) -> Result<FEl> {
        Ok(self.mul(x, self.conj(x)?))
    }

    pub fn format(&self, x: FEl) -> String {
        join(&self.coeffs(x))
    }

    pub fn parse(&self, s: &str) -> Result<FEl> {
        let coeffs = s
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("field element `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.from_coeffs(&coeffs)
    }

    /// The subfield `F_{p^d}` as its own context (smallest modulus), with an
    /// embedding into this field.
    pub fn subfield(&self, d: u32) -> Result<(FieldCtx, SubfieldEmbedding)> {
        if d == 0 || !self.k.is_multiple_of(d) {
            return Err(Error::DegreeMismatch {
                expected: self.k as usize,
                got: d as usize,
            });
        }
        let sub = FieldCtx::new(self.p as u64, d, None)?;
        // a root of the sub modulus inside this field
        let root = self
            .elements()
            .find(|&r| {
                let mut acc = FEl::ZERO;
                for &c in sub.modulus.iter().rev() {
                    acc = self.add(self.mul(acc, r), FEl(c));
                }
                acc.is_zero()
            })
            .ok_or_else(|| Error::Descent("subfield modulus has no root".into()))?;
        let mut into = Vec::with_capacity(sub.q as usize);
        for s in sub.elements() {
            let mut acc = FEl::ZERO;
            for c in sub.coeffs(s).into_iter().rev() {
                acc = self.add(self.mul(acc, root), FEl(c));
            }
            into.push(acc);
        }
        let mut back = vec![u32::MAX; self.q as usize];
        for (i, e) in into.iter().enumerate() {
            back[e.0 as usize] = i as u32;
        }
        Ok((sub, SubfieldEmbedding { into, back }))
    }
}

fn digit_add(a: u32, b: u32, p: u32, k: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut r = 0;
    let mut pw = 1;
    for _ in 0..k {
        r += ((a % p + b % p) % p) * pw;
        pw *= p;
        a /= p;
        b /= p;
    }
    r
}

/// Embedding of a subfield context into a larger one.
#[derive(Clone, Debug)]
pub struct SubfieldEmbedding {
    into: Vec<FEl>,
    back: Vec<u32>,
}

impl SubfieldEmbedding {
    pub fn embed(&self, x: FEl) -> FEl {
        self.into[x.0 as usize]
    }

    /// Preimage of `x`, if it lies in the subfield.
    pub fn restrict(&self, x: FEl) -> Option<FEl> {
        match self.back[x.0 as usize] {
            u32::MAX => None,
            v => Some(FEl(v)),
        }
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec())
    }
}
