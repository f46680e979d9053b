use serde::Serialize;

use super::HeckeRep;
use crate::error::{Error, Result};
use crate::gf::{FEl, FieldCtx};
use crate::linalg::Mat;
use crate::young::{basis_index, standard_tableaux, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairingKind {
    /// `λ = λ'`: a form on `V_λ` alone.
    BilinearSelf,
    /// `λ ≠ λ'`: a form on `V_λ ⊕ V_λ'` pairing the two summands.
    BilinearPair,
    Hermitian,
}

/// A gram matrix together with the scalar it picks up under each generator.
///
/// For [`PairingKind::BilinearPair`] only the `(V_λ, V_λ')` block is stored;
/// [`PairingSpec::gram`] assembles the full matrix.
#[derive(Clone, Debug)]
pub struct PairingSpec {
    pub kind: PairingKind,
    pub shape: Partition,
    pub alpha: FEl,
    block: Mat,
    /// `w(T) w(T')`, the sign relating the two off-diagonal blocks.
    pub transpose_sign: i8,
    explicit: Option<Mat>,
}

impl PairingSpec {
    /// A spec with an arbitrary full gram matrix, e.g. a perturbed one.
    pub fn from_gram(kind: PairingKind, shape: &Partition, alpha: FEl, gram: Mat) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "gram is {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        if kind == PairingKind::BilinearPair && !gram.rows().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "paired gram of odd size {}",
                gram.rows()
            )));
        }
        Ok(PairingSpec {
            kind,
            shape: shape.clone(),
            alpha,
            block: gram.clone(),
            transpose_sign: shape.transpose_sign(),
            explicit: Some(gram),
        })
    }

    /// The stored matrix: the full gram, or the `(V_λ, V_λ')` block.
    pub fn block(&self) -> &Mat {
        &self.block
    }

    pub fn dim(&self) -> usize {
        if let Some(g) = &self.explicit {
            return g.rows();
        }
        match self.kind {
            PairingKind::BilinearPair => 2 * self.block.rows(),
            _ => self.block.rows(),
        }
    }

    /// The full gram matrix; `[[0, B], [c·ᵗB, 0]]` in the paired case.
    pub fn gram(&self, ctx: &FieldCtx) -> Mat {
        if let Some(g) = &self.explicit {
            return g.clone();
        }
        match self.kind {
            PairingKind::BilinearPair => {
                let h = self.block.rows();
                let lower = if self.transpose_sign == 1 {
                    self.block.transpose()
                } else {
                    self.block.transpose().map(|x| ctx.neg(x))
                };
                Mat::from_fn(ctx, 2 * h, 2 * h, |i, j| match (i < h, j < h) {
                    (true, false) => self.block.get(i, j - h),
                    (false, true) => lower.get(i - h, j),
                    _ => FEl::ZERO,
                })
            }
            _ => self.block.clone(),
        }
    }

    /// `+1` symmetric, `-1` alternating, `0` neither; meaningful for bilinear kinds.
    pub fn symmetry(&self, ctx: &FieldCtx) -> i8 {
        let g = self.gram(ctx);
        let t = g.transpose();
        if t == g {
            1
        } else if t == g.map(|x| ctx.neg(x)) && (0..g.rows()).all(|i| g.get(i, i).is_zero()) {
            -1
        } else {
            0
        }
    }

    pub fn is_nondegenerate(&self, ctx: &FieldCtx) -> bool {
        let g = self.gram(ctx);
        ctx.rank(&g) == g.rows()
    }
}

/// The form `(T₁|T₂) = w(T₁) δ_{T₂,T₁'}`, on `V_λ` when `λ = λ'` and on
/// `V_λ ⊕ V_λ'` (basis of `V_λ` first) otherwise.
pub fn bilinear_pairing(ctx: &FieldCtx, shape: &Partition, alpha: FEl) -> PairingSpec {
    let tabs = standard_tableaux(shape);
    let conj = shape.transpose();
    let c = shape.transpose_sign();
    let sign = |s: i8| if s == 1 { FEl::ONE } else { ctx.neg(FEl::ONE) };
    if conj == *shape {
        let index = basis_index(&tabs);
        let mut g = Mat::zeros(ctx, tabs.len(), tabs.len());
        for (i, t) in tabs.iter().enumerate() {
            g.set(i, index[&t.transpose()], sign(t.w_sign()));
        }
        PairingSpec {
            kind: PairingKind::BilinearSelf,
            shape: shape.clone(),
            alpha,
            block: g,
            transpose_sign: c,
            explicit: None,
        }
    } else {
        let other = basis_index(&standard_tableaux(&conj));
        let mut b = Mat::zeros(ctx, tabs.len(), tabs.len());
        for (i, t) in tabs.iter().enumerate() {
            b.set(i, other[&t.transpose()], sign(t.w_sign()));
        }
        PairingSpec {
            kind: PairingKind::BilinearPair,
            shape: shape.clone(),
            alpha,
            block: b,
            transpose_sign: c,
            explicit: None,
        }
    }
}

/// The diagonal form `⟨T₁, T₂⟩ = d(T₁) δ_{T₁,T₂}` on `V_λ`. Needs a field
/// involution with `conj(α) = α⁻¹`.
pub fn hermitian_form(ctx: &FieldCtx, shape: &Partition, alpha: FEl) -> Result<PairingSpec> {
    if ctx.conj(alpha)? != ctx.inv(alpha)? {
        return Err(Error::InadmissibleParameter("conj(α) ≠ α⁻¹".into()));
    }
    let d = standard_tableaux(shape)
        .iter()
        .map(|t| t.hermitian_weight(ctx, alpha))
        .collect::<Result<Vec<_>>>()?;
    Ok(PairingSpec {
        kind: PairingKind::Hermitian,
        shape: shape.clone(),
        alpha,
        block: Mat::diag(ctx, &d),
        transpose_sign: shape.transpose_sign(),
        explicit: None,
    })
}

/// Generators of `R_λ ⊕ R_λ'`, block diagonal.
pub fn pair_generators(rep: &HeckeRep, dual: &HeckeRep) -> Result<Vec<Mat>> {
    if dual.shape() != &rep.shape().transpose() || rep.alpha() != dual.alpha() {
        return Err(Error::DimensionMismatch(format!(
            "{} is not paired with {}",
            rep.shape(),
            dual.shape()
        )));
    }
    Ok(rep
        .generators()
        .iter()
        .zip(dual.generators())
        .map(|(a, b)| a.direct_sum(b))
        .collect())
}

/// `ᵗS W S = (-α) W` for bilinear kinds, `ᵗS̄ D S = D` for the hermitian one,
/// over every `S` in `gens`.
pub fn check_form_equivariance(ctx: &FieldCtx, gens: &[Mat], spec: &PairingSpec) -> Result<bool> {
    let w = spec.gram(ctx);
    for s in gens {
        if s.rows() != w.rows() || !s.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "generator {}x{} vs gram {}",
                s.rows(),
                s.cols(),
                w.rows()
            )));
        }
    }
    let target = match spec.kind {
        PairingKind::Hermitian => w.clone(),
        _ => ctx.mat_scale(ctx.neg(spec.alpha), &w),
    };
    for s in gens {
        let left = match spec.kind {
            PairingKind::Hermitian => ctx.mat_conj(&s.transpose())?,
            _ => s.transpose(),
        };
        if ctx.mat_mul(&ctx.mat_mul(&left, &w), s) != target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The operator `L : T ↦ w(T) T'` on `V_λ ⊕ V_λ'` and its checked identities.
#[derive(Clone, Debug)]
pub struct DualityOperator {
    pub matrix: Mat,
    /// The scalar `c` with `L² = c·Id`; equals `w(T) w(T')`.
    pub square: i8,
    pub square_holds: bool,
    /// `L S L⁻¹ = (-α)·ᵗS⁻¹` for every generator `S` of `R_λ ⊕ R_λ'`.
    pub conjugation_holds: bool,
}

pub fn duality_operator(ctx: &FieldCtx, shape: &Partition, alpha: FEl) -> Result<DualityOperator> {
    let conj = shape.transpose();
    if conj == *shape {
        return Err(Error::SelfConjugateShape);
    }
    let rep = HeckeRep::new(ctx, shape, alpha)?;
    let dual = HeckeRep::new(ctx, &conj, alpha)?;
    let h = rep.dim();
    let idx_l = basis_index(rep.tableaux());
    let idx_d = basis_index(dual.tableaux());
    let sign = |s: i8| if s == 1 { FEl::ONE } else { ctx.neg(FEl::ONE) };
    let mut l = Mat::zeros(ctx, 2 * h, 2 * h);
    for (i, t) in rep.tableaux().iter().enumerate() {
        l.set(h + idx_d[&t.transpose()], i, sign(t.w_sign()));
    }
    for (i, t) in dual.tableaux().iter().enumerate() {
        l.set(idx_l[&t.transpose()], h + i, sign(t.w_sign()));
    }
    let c = shape.transpose_sign();
    let square_holds = ctx.mat_mul(&l, &l) == Mat::scalar(ctx, 2 * h, sign(c));
    let l_inv = ctx.mat_inverse(&l)?;
    let minus_alpha = ctx.neg(alpha);
    let mut conjugation_holds = true;
    for s in pair_generators(&rep, &dual)? {
        let lhs = ctx.mat_mul(&ctx.mat_mul(&l, &s), &l_inv);
        let rhs = ctx.mat_scale(minus_alpha, &ctx.mat_inverse(&s)?.transpose());
        conjugation_holds &= lhs == rhs;
    }
    Ok(DualityOperator {
        matrix: l,
        square: c,
        square_holds,
        conjugation_holds,
    })
}
