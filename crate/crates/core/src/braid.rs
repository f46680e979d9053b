//! Braid words, the abelianization `ℓ`, and the Gorin–Lin generators and
//! relations of the commutator subgroup `B_n'`.
//!
//! Words are plain letter sequences; their only semantics is evaluation in a
//! representation, so relations are checked there and never used for
//! rewriting.

use std::fmt;
use std::ops::Mul;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// `s_gen` or its inverse. `gen` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn exponent(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }

    fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

/// A word in the Artin generators `s_1, ..., s_{n-1}` of `B_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.gen == 0 || l.gen >= n) {
            return Err(Error::IndexOutOfRange {
                index: l.gen,
                max: n.saturating_sub(1),
            });
        }
        Ok(BraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        BraidWord {
            n,
            letters: Vec::new(),
        }
    }

    /// Word from `(generator, ±1)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, i8)]) -> Result<Self> {
        Self::new(
            n,
            pairs
                .iter()
                .map(|&(gen, e)| Letter { gen, inv: e < 0 })
                .collect(),
        )
    }

    pub fn gen(n: usize, i: usize) -> Result<Self> {
        Self::from_pairs(n, &[(i, 1)])
    }

    /// `s_i s_j^{-1}`.
    pub fn pair(n: usize, i: usize, j: usize) -> Result<Self> {
        Self::from_pairs(n, &[(i, 1), (j, -1)])
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `ℓ(w)`, the exponent sum.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.exponent()).sum()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, e: i32) -> BraidWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { n: self.n, letters }
    }

    /// Free reduction: cancels adjacent inverse pairs until none remain.
    pub fn reduced(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            n: self.n,
            letters: out,
        }
    }

    /// The same word viewed in `B_m`, `m ≥ n` (fixing the extra strands).
    pub fn include(&self, m: usize) -> Result<BraidWord> {
        BraidWord::new(m, self.letters.clone())
    }

    /// Parses tokens `s3` (for `s_3`) and `S3` (for `s_3^{-1}`).
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(|tok| {
                let inv = tok.starts_with('S');
                let digits = tok.strip_prefix('s').or_else(|| tok.strip_prefix('S'));
                let gen = digits
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("braid token `{tok}`")))?;
                Ok(Letter { gen, inv })
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(n, letters)
    }
}

impl Mul for &BraidWord {
    type Output = BraidWord;

    fn mul(self, rhs: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        BraidWord {
            n: self.n.max(rhs.n),
            letters,
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|l| format!("{}{}", if l.inv { 'S' } else { 's' }, l.gen))
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// The Gorin–Lin generators `p_0, p_1, b, q_3, ..., q_{n-1}` of `B_n'`.
#[derive(Clone, Debug)]
pub struct GorinLin {
    pub n: usize,
    /// `s_2 s_1^{-1}`
    pub p0: BraidWord,
    /// `s_1 s_2 s_1^{-2}`
    pub p1: BraidWord,
    /// `s_2 s_1^{-1} s_3 s_2^{-1}`, present for `n ≥ 4`
    pub b: Option<BraidWord>,
    /// `(ℓ, s_ℓ s_1^{-1})` for `3 ≤ ℓ ≤ n-1`
    pub q: Vec<(usize, BraidWord)>,
}

impl GorinLin {
    /// Named generators in the order `p0, p1, b, q3, ...`.
    pub fn named(&self) -> Vec<(String, BraidWord)> {
        let mut out = vec![
            ("p0".to_string(), self.p0.clone()),
            ("p1".to_string(), self.p1.clone()),
        ];
        if let Some(b) = &self.b {
            out.push(("b".to_string(), b.clone()));
        }
        out.extend(self.q.iter().map(|(l, w)| (format!("q{l}"), w.clone())));
        out
    }

    pub fn words(&self) -> Vec<BraidWord> {
        self.named().into_iter().map(|(_, w)| w).collect()
    }

    fn q(&self, l: usize) -> &BraidWord {
        &self.q[l - 3].1
    }
}

pub fn gorin_lin_generators(n: usize) -> Result<GorinLin> {
    if n < 3 {
        return Err(Error::TooFewStrands { needed: 3, got: n });
    }
    let p0 = BraidWord::from_pairs(n, &[(2, 1), (1, -1)])?;
    let p1 = BraidWord::from_pairs(n, &[(1, 1), (2, 1), (1, -1), (1, -1)])?;
    let b = if n >= 4 {
        Some(BraidWord::from_pairs(
            n,
            &[(2, 1), (1, -1), (3, 1), (2, -1)],
        )?)
    } else {
        None
    };
    let q = (3..n)
        .map(|l| Ok((l, BraidWord::pair(n, l, 1)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(GorinLin { n, p0, p1, b, q })
}

/// Outcome of checking the eight defining relations; vacuous relations (empty
/// index range) hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GorinLinReport {
    pub relations: [bool; 8],
}

impl GorinLinReport {
    pub fn all_hold(&self) -> bool {
        self.relations.iter().all(|&b| b)
    }
}

/// The relations as pairs of words `(lhs, rhs)`, grouped by relation number
/// (index 0 is relation (1)).
pub fn gorin_lin_relations(n: usize) -> Result<[Vec<(BraidWord, BraidWord)>; 8]> {
    if n < 4 {
        return Err(Error::TooFewStrands { needed: 4, got: n });
    }
    let g = gorin_lin_generators(n)?;
    let (p0, p1) = (&g.p0, &g.p1);
    let b = g.b.as_ref().expect("n >= 4");
    let q3 = g.q(3);
    let inv = BraidWord::inverse;
    let cat = |ws: &[&BraidWord]| ws.iter().fold(BraidWord::identity(n), |acc, w| &acc * w);

    let q3i_b = cat(&[&inv(q3), b]);
    let mut rels: [Vec<(BraidWord, BraidWord)>; 8] = Default::default();
    rels[0].push((b.clone(), cat(&[p0, q3, &inv(p0)])));
    rels[1].push((cat(&[p0, b, &inv(p0)]), cat(&[b, b, &inv(q3), b])));
    rels[2].push((cat(&[p1, q3, &inv(p1)]), q3i_b.clone()));
    rels[3].push((
        cat(&[p1, b, &inv(p1)]),
        cat(&[&q3i_b.pow(3), &q3.pow(-2), b]),
    ));
    for i in 4..n {
        let qi = g.q(i);
        rels[4].push((cat(&[p0, qi]), cat(&[qi, p1])));
        rels[5].push((cat(&[p1, qi]), cat(&[qi, &inv(p0), p1])));
    }
    for i in 3..n.saturating_sub(1) {
        let (qi, qj) = (g.q(i), g.q(i + 1));
        rels[6].push((cat(&[qi, qj, qi]), cat(&[qj, qi, qj])));
    }
    for i in 3..n {
        for j in i + 2..n {
            let (qi, qj) = (g.q(i), g.q(j));
            rels[7].push((cat(&[qi, qj]), cat(&[qj, qi])));
        }
    }
    Ok(rels)
}

/// Checks relations (1)–(8) under `eval`.
pub fn verify_gorin_lin_relations<M, F>(n: usize, mut eval: F) -> Result<GorinLinReport>
where
    M: PartialEq,
    F: FnMut(&BraidWord) -> Result<M>,
{
    let rels = gorin_lin_relations(n)?;
    let mut relations = [true; 8];
    for (k, group) in rels.iter().enumerate() {
        for (lhs, rhs) in group {
            if eval(lhs)? != eval(rhs)? {
                relations[k] = false;
            }
        }
    }
    Ok(GorinLinReport { relations })
}

/// Words `(lhs, rhs)` equal in `B_n`, with `lhs = s_{n-1}s_1^{-1}` and `rhs`
/// a product of conjugates of elements of `B_{n-1}'`.
///
/// For `n ≥ 5`, `rhs = X (s_{n-2}s_1^{-1}) X^{-1}` with
/// `X = s_{n-2}s_1^{-1} s_{n-1}s_1^{-1}`; this uses that `s_1` commutes with
/// `s_{n-2}` and `s_{n-1}`. For `n = 4` that fails, and
/// `rhs = δ (s_2 s_1^{-1}) δ^{-1} · s_2 s_1^{-1}` with `δ = s_1 s_2 s_3`,
/// which shifts every `s_i` to `s_{i+1}`.
pub fn normal_closure_witness(n: usize) -> Result<(BraidWord, BraidWord)> {
    if n < 4 {
        return Err(Error::TooFewStrands { needed: 4, got: n });
    }
    let lhs = BraidWord::pair(n, n - 1, 1)?;
    let inner = BraidWord::pair(n, n - 2, 1)?;
    let rhs = if n >= 5 {
        let x = &inner * &lhs;
        &(&x * &inner) * &x.inverse()
    } else {
        let delta = BraidWord::from_pairs(n, &[(1, 1), (2, 1), (3, 1)])?;
        &(&(&delta * &inner) * &delta.inverse()) * &inner
    };
    Ok((lhs.reduced(), rhs.reduced()))
}

/// A reduced word of exponent sum 0 made of `length / 2` uniformly random
/// pairs `s_i s_j^{-1}`, deterministic in `seed`.
pub fn random_commutator_word(n: usize, length: usize, seed: u64) -> Result<BraidWord> {
    if !length.is_multiple_of(2) {
        return Err(Error::OddLength(length));
    }
    if n < 2 {
        return Err(Error::TooFewStrands { needed: 2, got: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut letters = Vec::with_capacity(length);
    for _ in 0..length / 2 {
        let i = rng.gen_range(1..n);
        let j = rng.gen_range(1..n);
        letters.push(Letter { gen: i, inv: false });
        letters.push(Letter { gen: j, inv: true });
    }
    Ok(BraidWord { n, letters }.reduced())
}
