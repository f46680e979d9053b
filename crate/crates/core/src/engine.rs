//! Exhaustive breadth-first closure of small matrix groups over `F_q`, with
//! elements stored as packed integer keys.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;

use crate::classify::PredictedGroup;
use crate::error::{Error, Result};
use crate::gf::{prime_factors, FEl, FieldCtx};
use crate::linalg::Mat;

/// Cap used when none is given.
pub const DEFAULT_CAP: u64 = 20_000_000;

/// Largest packed width that gets a dense bitset instead of a hash set.
const BITSET_MAX_BITS: u32 = 28;

const PROGRESS_EVERY: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureStatus {
    Complete,
    CapExceeded,
}

/// How visited elements were stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KeyPath {
    Bitset,
    Packed,
    Bytes,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureResult {
    pub status: ClosureStatus,
    /// Exact group order, present when `status` is `Complete`.
    pub order: Option<u64>,
    pub cap: u64,
    /// Elements recorded before the search stopped.
    pub visited: u64,
    pub key_path: KeyPath,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ClosureResult {
    pub fn is_complete(&self) -> bool {
        self.status == ClosureStatus::Complete
    }
}

/// A visited set over flattened `N×N` matrices.
trait Visited {
    type Key;
    fn encode(&self, m: &[FEl]) -> Self::Key;
    fn decode(&self, k: &Self::Key, out: &mut [FEl]);
    /// `true` if the key was new.
    fn insert(&mut self, k: &Self::Key) -> bool;
}

fn pack(bits: u32, m: &[FEl]) -> u64 {
    m.iter().enumerate().fold(0u64, |acc, (i, x)| {
        acc | (u64::from(x.index()) << (bits * i as u32))
    })
}

fn unpack(bits: u32, k: u64, out: &mut [FEl]) {
    let mask = (1u64 << bits) - 1;
    for (i, x) in out.iter_mut().enumerate() {
        *x = FEl(((k >> (bits * i as u32)) & mask) as u32);
    }
}

struct BitsetSet {
    bits: u32,
    words: Vec<u64>,
}

impl Visited for BitsetSet {
    type Key = u64;
    fn encode(&self, m: &[FEl]) -> u64 {
        pack(self.bits, m)
    }
    fn decode(&self, k: &u64, out: &mut [FEl]) {
        unpack(self.bits, *k, out)
    }
    fn insert(&mut self, k: &u64) -> bool {
        let (w, b) = ((k >> 6) as usize, k & 63);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }
}

struct PackedSet {
    bits: u32,
    set: HashSet<u64>,
}

impl Visited for PackedSet {
    type Key = u64;
    fn encode(&self, m: &[FEl]) -> u64 {
        pack(self.bits, m)
    }
    fn decode(&self, k: &u64, out: &mut [FEl]) {
        unpack(self.bits, *k, out)
    }
    fn insert(&mut self, k: &u64) -> bool {
        self.set.insert(*k)
    }
}

struct BytesSet {
    set: HashSet<Box<[FEl]>>,
}

impl Visited for BytesSet {
    type Key = Box<[FEl]>;
    fn encode(&self, m: &[FEl]) -> Box<[FEl]> {
        m.into()
    }
    fn decode(&self, k: &Box<[FEl]>, out: &mut [FEl]) {
        out.copy_from_slice(k)
    }
    fn insert(&mut self, k: &Box<[FEl]>) -> bool {
        self.set.insert(k.clone())
    }
}

fn mul_into(ctx: &FieldCtx, n: usize, a: &[FEl], b: &[FEl], out: &mut [FEl]) {
    out.fill(FEl::ZERO);
    for i in 0..n {
        for l in 0..n {
            let x = a[i * n + l];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = ctx.add(out[i * n + j], ctx.mul(x, b[l * n + j]));
            }
        }
    }
}

fn run<V: Visited>(
    ctx: &FieldCtx,
    n: usize,
    gens: &[Mat],
    cap: u64,
    mut seen: V,
) -> (ClosureStatus, u64) {
    let id = Mat::identity(ctx, n);
    let start = seen.encode(id.data());
    seen.insert(&start);
    let mut visited = 1u64;
    let mut queue = VecDeque::from([start]);
    let mut cur = vec![FEl::ZERO; n * n];
    let mut next = vec![FEl::ZERO; n * n];
    while let Some(k) = queue.pop_front() {
        seen.decode(&k, &mut cur);
        for g in gens {
            mul_into(ctx, n, &cur, g.data(), &mut next);
            let key = seen.encode(&next);
            if seen.insert(&key) {
                visited += 1;
                if visited > cap {
                    return (ClosureStatus::CapExceeded, visited);
                }
                if visited.is_multiple_of(PROGRESS_EVERY) {
                    log::info!("closure: visited {visited}, frontier {}", queue.len());
                }
                queue.push_back(key);
            }
        }
    }
    (ClosureStatus::Complete, visited)
}

/// Breadth-first closure of `⟨gens⟩` from the identity under right
/// multiplication. Stops with `CapExceeded` once more than `cap` elements are seen.
pub fn bfs_closure(ctx: &FieldCtx, gens: &[Mat], cap: u64) -> Result<ClosureResult> {
    let started = Instant::now();
    let n = gens.first().map_or(0, Mat::rows);
    for (i, g) in gens.iter().enumerate() {
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "generator {i} is not {n}×{n}"
            )));
        }
        if ctx.det(g).is_zero() {
            return Err(Error::SingularGenerator(i));
        }
    }
    let bits = ctx.bits_per_element();
    let total = bits as u64 * (n * n) as u64;
    let (key_path, (status, visited)) = if total <= u64::from(BITSET_MAX_BITS) {
        let words = vec![0u64; ((1u64 << total) as usize).div_ceil(64)];
        (
            KeyPath::Bitset,
            run(ctx, n, gens, cap, BitsetSet { bits, words }),
        )
    } else if total <= 64 {
        (
            KeyPath::Packed,
            run(
                ctx,
                n,
                gens,
                cap,
                PackedSet {
                    bits,
                    set: HashSet::new(),
                },
            ),
        )
    } else {
        (
            KeyPath::Bytes,
            run(
                ctx,
                n,
                gens,
                cap,
                BytesSet {
                    set: HashSet::new(),
                },
            ),
        )
    };
    let elapsed = started.elapsed();
    log::info!("closure: {status:?} after {visited} elements in {elapsed:.2?}");
    Ok(ClosureResult {
        status,
        order: (status == ClosureStatus::Complete).then_some(visited),
        cap,
        visited,
        key_path,
        elapsed,
    })
}

/// Prime factorization with multiplicities.
fn factorize(mut x: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    for r in prime_factors(x) {
        let mut e = 0;
        while x.is_multiple_of(r) {
            x /= r;
            e += 1;
        }
        out.insert(r, e);
    }
    out
}

/// Multiplicative order of an invertible matrix, found by shrinking the
/// exponent of `GL_N(q)` one prime at a time.
pub fn matrix_order(ctx: &FieldCtx, m: &Mat) -> Result<u64> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    if ctx.det(m).is_zero() {
        return Err(Error::Singular);
    }
    let n = m.rows() as u32;
    let q = u64::from(ctx.q());
    let p = u64::from(ctx.p());
    // exponent of GL_N(q): lcm of q^i - 1 times the least p^t ≥ N
    let mut exponent: BTreeMap<u64, u32> = BTreeMap::new();
    let mut pt = 1u32;
    while p.pow(pt) < u64::from(n) {
        pt += 1;
    }
    exponent.insert(p, pt);
    for i in 1..=n {
        let qi = q
            .checked_pow(i)
            .ok_or_else(|| Error::UnsupportedFamily(format!("q^{i} overflows")))?;
        for (r, e) in factorize(qi - 1) {
            let slot = exponent.entry(r).or_insert(0);
            *slot = (*slot).max(e);
        }
    }
    let id = Mat::identity(ctx, m.rows());
    let power = |exp: &BTreeMap<u64, u32>| {
        exp.iter()
            .fold(m.clone(), |acc, (&r, &e)| ctx.mat_pow(&acc, r.pow(e)))
    };
    let primes: Vec<u64> = exponent.keys().copied().collect();
    for r in primes {
        while exponent[&r] > 0 {
            *exponent.get_mut(&r).unwrap() -= 1;
            if power(&exponent) != id {
                *exponent.get_mut(&r).unwrap() += 1;
                break;
            }
        }
    }
    let order = exponent.iter().map(|(&r, &e)| r.pow(e)).product();
    Ok(order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum Certificate {
    Match,
    /// `divides` records whether the closure order still divides the predicted order.
    Mismatch {
        divides: bool,
    },
    Inconclusive,
}

/// Compares a closure against a predicted group order.
pub fn certify_order(closure: &ClosureResult, predicted: &PredictedGroup) -> Certificate {
    certify_against(closure, &predicted.order)
}

pub fn certify_against(closure: &ClosureResult, predicted: &BigUint) -> Certificate {
    let Some(order) = closure.order.filter(|_| closure.is_complete()) else {
        return Certificate::Inconclusive;
    };
    let order = BigUint::from(order);
    let divides = order != BigUint::ZERO && (predicted % &order) == BigUint::ZERO;
    if order == *predicted {
        Certificate::Match
    } else {
        if !divides {
            log::warn!("closure order {order} does not divide the predicted order {predicted}");
        }
        Certificate::Mismatch { divides }
    }
}
