//! Hoefsmit's matrix models of the irreducible representations of `H_n(α)`.
//!
//! Matrices act on coordinate columns: the column indexed by a tableau `T`
//! holds the coordinates of `s_r · T`. Basis order is the order of
//! [`standard_tableaux`].

mod exterior;
mod forms;

pub use exterior::{
    character_twist, exterior_power_compare, exterior_power_generators, CharacterTwist,
};
pub use forms::{
    bilinear_pairing, check_form_equivariance, duality_operator, hermitian_form, pair_generators,
    DualityOperator, PairingKind, PairingSpec,
};

use std::collections::HashMap;

use crate::braid::{BraidWord, Letter};
use crate::error::{Error, Result};
use crate::gf::{FEl, FieldCtx};
use crate::linalg::Mat;
use crate::young::{partitions_of, standard_tableaux, Partition, StdTableau};

/// `ct(T : m) = -α^{j-i}` for the cell `(i, j)` holding `m`.
pub fn content_scalar(ctx: &FieldCtx, t: &StdTableau, m: usize, alpha: FEl) -> Result<FEl> {
    Ok(ctx.neg(ctx.powi(alpha, t.content(m))?))
}

/// `m_r(T) = (α - 1) ct(T:r+1) / (ct(T:r+1) - ct(T:r))`.
pub fn mixing_coefficient(ctx: &FieldCtx, t: &StdTableau, r: usize, alpha: FEl) -> Result<FEl> {
    let c1 = content_scalar(ctx, t, r + 1, alpha)?;
    let c0 = content_scalar(ctx, t, r, alpha)?;
    let den = ctx.sub(c1, c0);
    if den.is_zero() {
        return Err(Error::DegenerateParameter(format!(
            "ct({t}:{}) = ct({t}:{r})",
            r + 1
        )));
    }
    let num = ctx.mul(ctx.sub(alpha, FEl::ONE), c1);
    ctx.div(num, den)
}

fn generator_matrix(
    ctx: &FieldCtx,
    tableaux: &[StdTableau],
    index: &HashMap<StdTableau, usize>,
    r: usize,
    alpha: FEl,
) -> Result<Mat> {
    let n = tableaux.len();
    let mut m = Mat::zeros(ctx, n, n);
    for (col, t) in tableaux.iter().enumerate() {
        if t.same_row(r) {
            m.set(col, col, alpha);
        } else if t.same_col(r) {
            m.set(col, col, ctx.neg(FEl::ONE));
        } else {
            let mr = mixing_coefficient(ctx, t, r, alpha)?;
            let swapped = index[&t.swap_adjacent(r)?];
            m.set(col, col, mr);
            m.set(swapped, col, ctx.add(FEl::ONE, mr));
        }
    }
    Ok(m)
}

/// The matrix of `s_r` on `V_λ`.
pub fn hoefsmit_generator(ctx: &FieldCtx, shape: &Partition, alpha: FEl, r: usize) -> Result<Mat> {
    let n = shape.n();
    if r == 0 || r >= n {
        return Err(Error::IndexOutOfRange {
            index: r,
            max: n.saturating_sub(1),
        });
    }
    let tableaux = standard_tableaux(shape);
    let index = crate::young::basis_index(&tableaux);
    generator_matrix(ctx, &tableaux, &index, r, alpha)
}

/// `R_λ` for fixed `(λ, α)`: the generator matrices and their inverses.
#[derive(Clone, Debug)]
pub struct HeckeRep<'a> {
    ctx: &'a FieldCtx,
    shape: Partition,
    alpha: FEl,
    tableaux: Vec<StdTableau>,
    gens: Vec<Mat>,
    gens_inv: Vec<Mat>,
}

impl<'a> HeckeRep<'a> {
    /// Builds every generator eagerly; fails on a vanishing denominator.
    pub fn new(ctx: &'a FieldCtx, shape: &Partition, alpha: FEl) -> Result<Self> {
        if alpha.is_zero() || alpha.index() >= ctx.q() {
            return Err(Error::DegenerateParameter(
                "α must be a nonzero field element".into(),
            ));
        }
        let tableaux = standard_tableaux(shape);
        let index = crate::young::basis_index(&tableaux);
        let n = shape.n();
        let gens = (1..n)
            .map(|r| generator_matrix(ctx, &tableaux, &index, r, alpha))
            .collect::<Result<Vec<_>>>()?;
        // s^2 = (α-1) s + α, so s^{-1} = (s - (α-1)) / α
        let am1 = ctx.sub(alpha, FEl::ONE);
        let ainv = ctx.inv(alpha)?;
        let dim = tableaux.len();
        let gens_inv = gens
            .iter()
            .map(|g| ctx.mat_scale(ainv, &ctx.mat_sub(g, &Mat::scalar(ctx, dim, am1))))
            .collect();
        Ok(HeckeRep {
            ctx,
            shape: shape.clone(),
            alpha,
            tableaux,
            gens,
            gens_inv,
        })
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn alpha(&self) -> FEl {
        self.alpha
    }

    /// Number of strands.
    pub fn n(&self) -> usize {
        self.shape.n()
    }

    /// `N`, the number of standard tableaux.
    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn tableaux(&self) -> &[StdTableau] {
        &self.tableaux
    }

    /// `R_λ(s_r)`, `r` 1-based.
    pub fn generator(&self, r: usize) -> &Mat {
        &self.gens[r - 1]
    }

    pub fn generator_inverse(&self, r: usize) -> &Mat {
        &self.gens_inv[r - 1]
    }

    pub fn generators(&self) -> &[Mat] {
        &self.gens
    }

    /// Ordered product of generator matrices and inverses along `w`.
    pub fn eval(&self, w: &BraidWord) -> Result<Mat> {
        eval_word(self.ctx, &self.gens, &self.gens_inv, w.letters())
    }

    /// Images of a list of words.
    pub fn eval_all(&self, words: &[BraidWord]) -> Result<Vec<Mat>> {
        words.iter().map(|w| self.eval(w)).collect()
    }

    /// `(S + 1)(S - α) = 0` for every generator.
    pub fn quadratic_relation_holds(&self) -> bool {
        let ctx = self.ctx;
        let n = self.dim();
        let one = Mat::identity(ctx, n);
        let a = Mat::scalar(ctx, n, self.alpha);
        self.gens.iter().all(|s| {
            ctx.mat_mul(&ctx.mat_add(s, &one), &ctx.mat_sub(s, &a))
                .is_zero()
        })
    }

    /// `S_r S_{r+1} S_r = S_{r+1} S_r S_{r+1}` for all `r`.
    pub fn braid_relations_hold(&self) -> bool {
        let ctx = self.ctx;
        self.gens.windows(2).all(|w| {
            let (a, b) = (&w[0], &w[1]);
            ctx.mat_mul(&ctx.mat_mul(a, b), a) == ctx.mat_mul(&ctx.mat_mul(b, a), b)
        })
    }

    /// `S_r S_t = S_t S_r` whenever `|r - t| ≥ 2`.
    pub fn distant_commutation_holds(&self) -> bool {
        let ctx = self.ctx;
        let g = &self.gens;
        (0..g.len()).all(|i| {
            (i + 2..g.len()).all(|j| ctx.mat_mul(&g[i], &g[j]) == ctx.mat_mul(&g[j], &g[i]))
        })
    }

    pub fn generators_inverse(&self) -> &[Mat] {
        &self.gens_inv
    }
}

/// Ordered product along `letters` of `gens[i-1]` or `gens_inv[i-1]`.
pub fn eval_word(
    ctx: &FieldCtx,
    gens: &[Mat],
    gens_inv: &[Mat],
    letters: &[Letter],
) -> Result<Mat> {
    let max = gens.len();
    let dim = gens.first().map_or(1, Mat::rows);
    let mut acc = Mat::identity(ctx, dim);
    for l in letters {
        if l.gen == 0 || l.gen > max {
            return Err(Error::IndexOutOfRange { index: l.gen, max });
        }
        let g = if l.inv {
            &gens_inv[l.gen - 1]
        } else {
            &gens[l.gen - 1]
        };
        acc = ctx.mat_mul(&acc, g);
    }
    Ok(acc)
}

/// `R_λ(w)`.
pub fn rep_of_word(rep: &HeckeRep, w: &BraidWord) -> Result<Mat> {
    rep.eval(w)
}

/// CSV dump of a generator matrix, row-major, under a
/// `lambda=<parts>;alpha=<FEl>;r=<gen>` header line.
pub fn matrix_csv(ctx: &FieldCtx, shape: &Partition, alpha: FEl, r: usize, m: &Mat) -> String {
    format!(
        "lambda={shape};alpha={};r={r}\n{}",
        ctx.format(alpha),
        csv_rows(ctx, m)
    )
}

/// Rows of `m` as CSV lines; entries with several coefficients are quoted.
pub fn csv_rows(ctx: &FieldCtx, m: &Mat) -> String {
    let quote = |s: String| {
        if s.contains(',') {
            format!("\"{s}\"")
        } else {
            s
        }
    };
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&x| quote(ctx.format(x))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// The multiplicity-free sum of all `V_λ`, `λ ⊢ n`.
#[derive(Clone, Debug)]
pub struct GelfandModel<'a> {
    pub blocks: Vec<HeckeRep<'a>>,
}

impl<'a> GelfandModel<'a> {
    pub fn new(ctx: &'a FieldCtx, n: usize, alpha: FEl) -> Result<Self> {
        let blocks = partitions_of(n)
            .iter()
            .map(|l| HeckeRep::new(ctx, l, alpha))
            .collect::<Result<_>>()?;
        Ok(GelfandModel { blocks })
    }

    /// Number of standard tableaux of size `n`, i.e. the number of involutions.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(HeckeRep::dim).sum()
    }

    /// `Σ N_λ²`, which is `n!`.
    pub fn regular_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim() * b.dim()).sum()
    }

    pub fn block(&self, shape: &Partition) -> Option<&HeckeRep<'a>> {
        self.blocks.iter().find(|b| b.shape() == shape)
    }
}
