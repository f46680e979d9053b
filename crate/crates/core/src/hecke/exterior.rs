use crate::braid::gorin_lin_generators;
use crate::error::{Error, Result};
use crate::gf::{FEl, FieldCtx};
use crate::linalg::{algebra_span_dim, Mat};
use crate::young::{standard_tableaux, Partition};

use super::{eval_word, HeckeRep};

/// `r`-subsets of `items` in lexicographic order.
fn subsets(items: &[usize], r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    if items.len() < r {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> = subsets(&items[1..], r - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, items[0]);
            s
        })
        .collect();
    out.extend(subsets(&items[1..], r));
    out
}

/// `Λ^r` of `R_{[n-1,1]}`, written in the basis of `V_{[n-r,1^r]}` through
/// `u_I ↔ v_I`, where `I` is the set of entries below the first row.
pub fn exterior_power_generators(
    ctx: &FieldCtx,
    n: usize,
    r: usize,
    alpha: FEl,
) -> Result<Vec<Mat>> {
    if r == 0 || r + 1 > n {
        return Err(Error::IndexOutOfRange {
            index: r,
            max: n.saturating_sub(1),
        });
    }
    let base = HeckeRep::new(ctx, &Partition::hook(n, 1)?, alpha)?;
    // position of v_i in the base basis
    let mut pos = vec![usize::MAX; n + 1];
    for (k, t) in base.tableaux().iter().enumerate() {
        let i = t.hook_subset().expect("hook")[0];
        pos[i] = k;
    }
    let target: Vec<Vec<usize>> = standard_tableaux(&Partition::hook(n, r)?)
        .iter()
        .map(|t| t.hook_subset().expect("hook"))
        .collect();
    debug_assert_eq!(target.len(), subsets(&(2..=n).collect::<Vec<_>>(), r).len());
    let rows: Vec<Vec<usize>> = target
        .iter()
        .map(|s| s.iter().map(|&i| pos[i]).collect())
        .collect();
    Ok(base
        .generators()
        .iter()
        .map(|g| {
            Mat::from_fn(ctx, target.len(), target.len(), |a, b| {
                ctx.det(&g.submatrix(&rows[a], &rows[b]))
            })
        })
        .collect())
}

/// Whether `Λ^r R_{[n-1,1]}(s_k) = α^{r-1} R_{[n-r,1^r]}(s_k)` for every `k`.
pub fn exterior_power_compare(ctx: &FieldCtx, n: usize, r: usize, alpha: FEl) -> Result<bool> {
    let ext = exterior_power_generators(ctx, n, r, alpha)?;
    let hook = HeckeRep::new(ctx, &Partition::hook(n, r)?, alpha)?;
    let factor = ctx.pow(alpha, r as u64 - 1);
    Ok(ext
        .iter()
        .zip(hook.generators())
        .all(|(e, h)| *e == ctx.mat_scale(factor, h)))
}

/// The scalars `η(s_i) = R₂(s_i) R₁(s_i)⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTwist {
    pub eta: Vec<FEl>,
}

impl CharacterTwist {
    /// A character of `B_n` takes one value on all the (conjugate) generators.
    pub fn is_character(&self) -> bool {
        self.eta.windows(2).all(|w| w[0] == w[1])
    }
}

/// Given two families of generator images of `B_n` agreeing on the
/// commutator subgroup, with `R₁` absolutely irreducible there, recovers
/// the twisting character.
pub fn character_twist(ctx: &FieldCtx, r1: &[Mat], r2: &[Mat]) -> Result<CharacterTwist> {
    if r1.len() != r2.len() || r1.is_empty() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} generators",
            r1.len(),
            r2.len()
        )));
    }
    let dim = r1[0].rows();
    if r1
        .iter()
        .chain(r2)
        .any(|m| m.rows() != dim || m.cols() != dim)
    {
        return Err(Error::DimensionMismatch("generator sizes differ".into()));
    }
    let n = r1.len() + 1;
    let inv1 = r1
        .iter()
        .map(|m| ctx.mat_inverse(m))
        .collect::<Result<Vec<_>>>()?;
    let inv2 = r2
        .iter()
        .map(|m| ctx.mat_inverse(m))
        .collect::<Result<Vec<_>>>()?;
    let gl = gorin_lin_generators(n)?;
    let mut images = Vec::new();
    for (name, w) in gl.named() {
        let a = eval_word(ctx, r1, &inv1, w.letters())?;
        let b = eval_word(ctx, r2, &inv2, w.letters())?;
        if a != b {
            return Err(Error::NotAgreeingOnCommutators(name));
        }
        images.push(a);
    }
    let span = algebra_span_dim(ctx, dim, &images);
    if span != dim * dim {
        return Err(Error::NotIrreducible {
            span,
            full: dim * dim,
        });
    }
    let eta = r2
        .iter()
        .zip(&inv1)
        .enumerate()
        .map(|(i, (b, a_inv))| {
            ctx.mat_mul(b, a_inv)
                .as_scalar()
                .ok_or(Error::NotScalar(i + 1))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterTwist { eta })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(
            subsets(&[2, 3, 4], 2),
            vec![vec![2, 3], vec![2, 4], vec![3, 4]]
        );
        assert_eq!(subsets(&[2, 3], 0), vec![Vec::<usize>::new()]);
    }
}
