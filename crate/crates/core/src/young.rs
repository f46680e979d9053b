//! Partitions, standard Young tableaux and the tableau statistics used by the
//! Hecke algebra models.
//!
//! Rows and columns are 1-based throughout, so the content exponent of the
//! cell `(i, j)` is `j - i`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{FEl, FieldCtx};

/// A partition `λ = [λ_1 ≥ λ_2 ≥ ... > 0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    /// `[n-1, 1]`.
    pub fn lambda_zero(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidPartition(format!("[{}, 1]", n as i64 - 1)));
        }
        Self::hook(n, 1)
    }

    /// `[n-r, 1^r]`.
    pub fn hook(n: usize, r: usize) -> Result<Self> {
        if r >= n {
            return Err(Error::InvalidPartition(format!(
                "hook of size {n} with leg {r}"
            )));
        }
        let mut parts = vec![n - r];
        parts.extend(std::iter::repeat_n(1, r));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn transpose(&self) -> Partition {
        let parts = (1..=self.parts[0])
            .map(|j| self.parts.iter().filter(|&&l| l >= j).count())
            .collect();
        Partition { parts }
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_hook(&self) -> bool {
        self.parts.iter().skip(1).all(|&l| l == 1)
    }

    /// Length of the diagonal `b(λ) = max{i : λ_i ≥ i}` and the sign `ν(λ)`,
    /// which is `+1` exactly when `(n - b)/2` is an even integer.
    pub fn diag_and_nu(&self) -> (usize, i8) {
        let b = self
            .parts
            .iter()
            .enumerate()
            .filter(|(i, &l)| l > *i)
            .count();
        let nu = if (self.n() - b).is_multiple_of(4) {
            1
        } else {
            -1
        };
        (b, nu)
    }

    /// `w(T) w(T')`, which depends only on the shape: `-1` to the number of
    /// pairs of cells incomparable in the product order. Agrees with `ν(λ)`
    /// on self-conjugate shapes.
    pub fn transpose_sign(&self) -> i8 {
        let cells = self.cells();
        let mut incomparable = 0usize;
        for (a, &(i1, j1)) in cells.iter().enumerate() {
            for &(i2, j2) in &cells[a + 1..] {
                let le = i1 <= i2 && j1 <= j2;
                let ge = i1 >= i2 && j1 >= j2;
                if !le && !ge {
                    incomparable += 1;
                }
            }
        }
        if incomparable.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Cells `(row, column)` in row-reading order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &l)| (1..=l).map(move |j| (i + 1, j)))
            .collect()
    }

    /// Hook length of the cell `(i, j)`.
    pub fn hook_length(&self, i: usize, j: usize) -> usize {
        let arm = self.parts[i - 1] - j;
        let leg = self.parts[i..].iter().filter(|&&l| l >= j).count();
        arm + leg + 1
    }

    /// Number of standard tableaux by the hook length formula.
    pub fn dimension(&self) -> u128 {
        let n = self.n() as u128;
        let fact: u128 = (1..=n).product();
        let hooks: u128 = self
            .cells()
            .iter()
            .map(|&(i, j)| self.hook_length(i, j) as u128)
            .product();
        fact / hooks
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `3,2,1` or `[3,2,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// The non-hook partitions of `n`, in the order of [`partitions_of`].
pub fn non_hooks(n: usize) -> Vec<Partition> {
    partitions_of(n)
        .into_iter()
        .filter(|l| !l.is_hook())
        .collect()
}

/// A standard tableau, stored as the cell of each entry `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StdTableau {
    shape: Partition,
    pos: Vec<(usize, usize)>,
}

impl StdTableau {
    /// Builds a tableau from its rows, checking standardness.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        let n = shape.n();
        let mut pos = vec![(0, 0); n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e == 0 || e > n || pos[e - 1] != (0, 0) {
                    return Err(Error::Parse(format!("tableau rows {rows:?}")));
                }
                pos[e - 1] = (i + 1, j + 1);
            }
        }
        let t = StdTableau { shape, pos };
        let rows_ok = rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(lo, hi)| hi < lo));
        if !rows_ok || !cols_ok {
            return Err(Error::Parse(format!("tableau {rows:?} is not standard")));
        }
        Ok(t)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.pos.len()
    }

    /// Cell `(row, column)` holding `k`.
    pub fn cell(&self, k: usize) -> (usize, usize) {
        self.pos[k - 1]
    }

    /// `r_k(T)`.
    pub fn row_of(&self, k: usize) -> usize {
        self.pos[k - 1].0
    }

    pub fn col_of(&self, k: usize) -> usize {
        self.pos[k - 1].1
    }

    /// `j - i` for the cell `(i, j)` holding `k`.
    pub fn content(&self, k: usize) -> i64 {
        let (i, j) = self.pos[k - 1];
        j as i64 - i as i64
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut rows: Vec<Vec<usize>> = self.shape.parts().iter().map(|&l| vec![0; l]).collect();
        for (k, &(i, j)) in self.pos.iter().enumerate() {
            rows[i - 1][j - 1] = k + 1;
        }
        rows
    }

    /// `(r_1(T), ..., r_n(T))`, the sort key of the basis order.
    pub fn row_word(&self) -> Vec<usize> {
        self.pos.iter().map(|c| c.0).collect()
    }

    pub fn transpose(&self) -> StdTableau {
        StdTableau {
            shape: self.shape.transpose(),
            pos: self.pos.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }

    pub fn same_row(&self, r: usize) -> bool {
        self.row_of(r) == self.row_of(r + 1)
    }

    pub fn same_col(&self, r: usize) -> bool {
        self.col_of(r) == self.col_of(r + 1)
    }

    /// `T` with `r` and `r + 1` interchanged.
    pub fn swap_adjacent(&self, r: usize) -> Result<StdTableau> {
        if r == 0 || r >= self.n() || self.same_row(r) || self.same_col(r) {
            return Err(Error::NotExchangeable(r, r + 1));
        }
        let mut pos = self.pos.clone();
        pos.swap(r - 1, r);
        Ok(StdTableau {
            shape: self.shape.clone(),
            pos,
        })
    }

    /// Number of pairs `i < j` with `r_i(T) > r_j(T)`.
    pub fn row_inversions(&self) -> usize {
        let w = self.row_word();
        let mut count = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `w(T) = (-1)^{#row inversions}`.
    pub fn w_sign(&self) -> i8 {
        if self.row_inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// For a hook `[n-r, 1^r]`: the entries below the first row, ascending.
    pub fn hook_subset(&self) -> Option<Vec<usize>> {
        if !self.shape.is_hook() {
            return None;
        }
        Some((1..=self.n()).filter(|&k| self.row_of(k) > 1).collect())
    }

    /// The hook tableau whose entries below the first row are `subset`.
    pub fn from_hook_subset(n: usize, subset: &[usize]) -> Result<StdTableau> {
        let bad = || Error::Parse(format!("hook subset {subset:?} of 2..={n}"));
        if subset.windows(2).any(|w| w[0] >= w[1])
            || subset.iter().any(|&k| k < 2 || k > n)
            || subset.len() >= n
        {
            return Err(bad());
        }
        let first: Vec<usize> = (1..=n).filter(|k| !subset.contains(k)).collect();
        let mut rows = vec![first];
        rows.extend(subset.iter().map(|&k| vec![k]));
        StdTableau::from_rows(&rows)
    }

    /// The weight `d(T)`: over pairs `i < j` with `r(i) > r(j)`, the product of
    /// `(α^{c(j)-r(j)+1} - α^{c(i)-r(i)}) / (α^{c(j)-r(j)} - α^{c(i)-r(i)+1})`.
    /// Each factor is the ratio `d(T_{r↔r+1}) / d(T)` for an adjacent swap.
    pub fn hermitian_weight(&self, ctx: &FieldCtx, alpha: FEl) -> Result<FEl> {
        let mut acc = FEl::ONE;
        for i in 1..=self.n() {
            for j in i + 1..=self.n() {
                if self.row_of(i) <= self.row_of(j) {
                    continue;
                }
                let ci = self.content(i);
                let cj = self.content(j);
                let num = ctx.sub(ctx.powi(alpha, cj + 1)?, ctx.powi(alpha, ci)?);
                let den = ctx.sub(ctx.powi(alpha, cj)?, ctx.powi(alpha, ci + 1)?);
                if den.is_zero() {
                    return Err(Error::DegenerateParameter(format!(
                        "d({self}) has a vanishing denominator"
                    )));
                }
                acc = ctx.mul(acc, ctx.div(num, den)?);
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for StdTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

impl FromStr for StdTableau {
    type Err = Error;

    /// Rows as comma-separated entries joined by `/`, e.g. `1,2/3`.
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split('/')
            .map(|r| {
                r.split(',')
                    .map(|e| {
                        e.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("tableau `{s}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        StdTableau::from_rows(&rows)
    }
}

/// All standard tableaux of shape `λ`, ordered lexicographically by
/// `(r_1(T), ..., r_n(T))`. This order is the basis order of `V_λ`.
pub fn standard_tableaux(shape: &Partition) -> Vec<StdTableau> {
    fn rec(
        shape: &Partition,
        fill: &mut Vec<usize>,
        pos: &mut Vec<(usize, usize)>,
        out: &mut Vec<StdTableau>,
    ) {
        if pos.len() == shape.n() {
            out.push(StdTableau {
                shape: shape.clone(),
                pos: pos.clone(),
            });
            return;
        }
        for i in 0..shape.len() {
            let addable = fill[i] < shape.parts()[i] && (i == 0 || fill[i - 1] > fill[i]);
            if addable {
                fill[i] += 1;
                pos.push((i + 1, fill[i]));
                rec(shape, fill, pos, out);
                pos.pop();
                fill[i] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(shape, &mut vec![0; shape.len()], &mut Vec::new(), &mut out);
    out
}

/// Position of each tableau in the basis of its shape.
pub fn basis_index(tableaux: &[StdTableau]) -> std::collections::HashMap<StdTableau, usize> {
    tableaux
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, t)| (t, i))
        .collect()
}
