use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{FEl, FieldCtx};
use crate::linalg::{Mat, RowSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Bilinear,
    Sesquilinear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Alternating,
    Hermitian,
    Neither,
    Mixed,
    None,
}

/// A basis of the space of forms `W` with `ᵗg W g = c W` (bilinear) or
/// `ᵗḡ W g = c W` (sesquilinear) for every listed `g`.
#[derive(Clone, Debug)]
pub struct FormSolution {
    pub kind: FormKind,
    pub c: FEl,
    pub basis: Vec<Mat>,
    pub symmetry: Vec<Symmetry>,
}

impl FormSolution {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The common symmetry of the basis, `Mixed` if they differ, `None` if empty.
    pub fn overall(&self) -> Symmetry {
        match self.symmetry.split_first() {
            None => Symmetry::None,
            Some((first, rest)) if rest.iter().all(|s| s == first) => *first,
            _ => Symmetry::Mixed,
        }
    }
}

/// Bilinear symmetry type; alternating is tested first, as in characteristic 2
/// symmetric and skew coincide.
pub fn bilinear_symmetry(ctx: &FieldCtx, w: &Mat) -> Symmetry {
    let t = w.transpose();
    let zero_diag = (0..w.rows()).all(|i| w.get(i, i).is_zero());
    if zero_diag && t == w.map(|x| ctx.neg(x)) {
        Symmetry::Alternating
    } else if t == *w {
        Symmetry::Symmetric
    } else {
        Symmetry::Neither
    }
}

fn check_square(gens: &[Mat]) -> Result<usize> {
    let n = gens.first().map_or(0, Mat::rows);
    if gens.iter().any(|g| g.rows() != n || g.cols() != n) {
        return Err(Error::DimensionMismatch(
            "generators must be square of a common size".into(),
        ));
    }
    Ok(n)
}

/// Kernel of `W ↦ ᵗ(φ g) W g - c W`, `φ` the identity or the conjugation.
fn solve(ctx: &FieldCtx, n: usize, gens: &[Mat], c: FEl, twisted: &[Mat]) -> Vec<Mat> {
    let mut space = RowSpace::new(n * n);
    for (g, tg) in gens.iter().zip(twisted) {
        for i in 0..n {
            for j in 0..n {
                if space.dim() == n * n {
                    break;
                }
                // coefficient of W[a][b] in (ᵗtg W g)[i][j] is tg[a][i] g[b][j]
                let mut row = vec![FEl::ZERO; n * n];
                for a in 0..n {
                    let x = tg.get(a, i);
                    if x.is_zero() {
                        continue;
                    }
                    for b in 0..n {
                        row[a * n + b] = ctx.mul(x, g.get(b, j));
                    }
                }
                row[i * n + j] = ctx.sub(row[i * n + j], c);
                space.insert(ctx, row);
            }
        }
    }
    space
        .kernel(ctx)
        .into_iter()
        .map(|v| Mat::from_fn(ctx, n, n, |a, b| v[a * n + b]))
        .collect()
}

/// Forms `W` with `ᵗg W g = c W` for all `g`; use `c = 1` for generators of a
/// commutator subgroup.
pub fn invariant_bilinear_space(ctx: &FieldCtx, gens: &[Mat], c: FEl) -> Result<FormSolution> {
    let n = check_square(gens)?;
    let basis = solve(ctx, n, gens, c, gens);
    let symmetry = basis.iter().map(|w| bilinear_symmetry(ctx, w)).collect();
    Ok(FormSolution {
        kind: FormKind::Bilinear,
        c,
        basis,
        symmetry,
    })
}

/// Forms `D` with `ᵗḡ D g = c D` for all `g`, each basis element replaced by
/// a hermitian one (`D* = D`) when `c` is fixed by the conjugation.
pub fn invariant_sesquilinear_space(ctx: &FieldCtx, gens: &[Mat], c: FEl) -> Result<FormSolution> {
    if !ctx.has_conj() {
        return Err(Error::ConjUndefined(ctx.k()));
    }
    let n = check_square(gens)?;
    let conj = gens
        .iter()
        .map(|g| ctx.mat_conj(g))
        .collect::<Result<Vec<_>>>()?;
    let raw = solve(ctx, n, gens, c, &conj);
    let star = |m: &Mat| ctx.mat_conj(&m.transpose());
    let mut basis = raw.clone();
    if ctx.conj(c)? == c {
        // the solution space is stable under D ↦ D*, so it has a hermitian basis
        let theta = ctx
            .elements()
            .find(|&t| ctx.conj(t).is_ok_and(|ct| ct != t))
            .ok_or(Error::ConjUndefined(ctx.k()))?;
        let mut space = RowSpace::new(n * n);
        basis.clear();
        for d in &raw {
            for scale in [FEl::ONE, theta] {
                let s = ctx.mat_scale(scale, d);
                let h = ctx.mat_add(&s, &star(&s)?);
                if !h.is_zero() && space.insert(ctx, h.data().to_vec()) {
                    basis.push(h);
                }
            }
        }
    }
    let symmetry = basis
        .iter()
        .map(|d| {
            Ok(if star(d)? == *d {
                Symmetry::Hermitian
            } else {
                Symmetry::Neither
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FormSolution {
        kind: FormKind::Sesquilinear,
        c,
        basis,
        symmetry,
    })
}

fn sqrt(ctx: &FieldCtx, x: FEl) -> Option<FEl> {
    if x.is_zero() {
        return Some(FEl::ZERO);
    }
    if ctx.pow(x, (ctx.q() as u64 - 1) / 2) != FEl::ONE {
        return None;
    }
    ctx.elements().find(|&y| ctx.mul(y, y) == x)
}

fn bform(ctx: &FieldCtx, g: &Mat, x: &[FEl], y: &[FEl]) -> FEl {
    let mut acc = FEl::ZERO;
    for (i, &xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let mut row = FEl::ZERO;
        for (j, &yj) in y.iter().enumerate() {
            row = ctx.add(row, ctx.mul(g.get(i, j), yj));
        }
        acc = ctx.add(acc, ctx.mul(xi, row));
    }
    acc
}

/// An orthogonal basis (as coordinate vectors) for a symmetric gram, `p` odd.
fn orthogonal_basis(ctx: &FieldCtx, g: &Mat) -> Vec<Vec<FEl>> {
    let m = g.rows();
    let mut pool: Vec<Vec<FEl>> = (0..m)
        .map(|i| {
            let mut e = vec![FEl::ZERO; m];
            e[i] = FEl::ONE;
            e
        })
        .collect();
    let mut out = Vec::with_capacity(m);
    while !pool.is_empty() {
        // a vector of nonzero norm: a pool vector or a sum of two
        let pick = (0..pool.len()).find(|&i| !bform(ctx, g, &pool[i], &pool[i]).is_zero());
        let v = match pick {
            Some(i) => pool.swap_remove(i),
            None => {
                let mut found = None;
                'outer: for i in 0..pool.len() {
                    for j in i + 1..pool.len() {
                        if !bform(ctx, g, &pool[i], &pool[j]).is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                match found {
                    Some((i, j)) => {
                        let s: Vec<FEl> = pool[i]
                            .iter()
                            .zip(&pool[j])
                            .map(|(&a, &b)| ctx.add(a, b))
                            .collect();
                        pool.swap_remove(i);
                        s
                    }
                    // totally isotropic remainder: the gram was degenerate
                    None => break,
                }
            }
        };
        let qv = bform(ctx, g, &v, &v);
        let qinv = ctx.inv(qv).expect("nonzero norm");
        for u in pool.iter_mut() {
            let f = ctx.mul(bform(ctx, g, u, &v), qinv);
            for (a, &b) in u.iter_mut().zip(&v) {
                *a = ctx.sub(*a, ctx.mul(f, b));
            }
        }
        out.push(v);
    }
    out
}

/// A nonzero isotropic vector, searched inside spans of at most three
/// orthogonal basis vectors.
fn isotropic_vector(ctx: &FieldCtx, g: &Mat) -> Option<Vec<FEl>> {
    let basis = orthogonal_basis(ctx, g);
    let a: Vec<FEl> = basis.iter().map(|v| bform(ctx, g, v, v)).collect();
    let m = basis.len();
    let combine = |coeffs: &[(usize, FEl)]| {
        let mut v = vec![FEl::ZERO; g.rows()];
        for &(i, c) in coeffs {
            for (x, &b) in v.iter_mut().zip(&basis[i]) {
                *x = ctx.add(*x, ctx.mul(c, b));
            }
        }
        v
    };
    for i in 0..m {
        for j in i + 1..m {
            // a_i x² + a_j = 0
            let t = ctx.neg(ctx.div(a[j], a[i]).ok()?);
            if let Some(x) = sqrt(ctx, t) {
                return Some(combine(&[(i, x), (j, FEl::ONE)]));
            }
        }
    }
    if m >= 3 {
        // a_0 x² + a_1 y² + a_2 = 0 always has a solution
        for x in ctx.elements() {
            let rest = ctx.neg(ctx.add(a[2], ctx.mul(a[0], ctx.mul(x, x))));
            if let Some(y) = sqrt(ctx, ctx.div(rest, a[1]).ok()?) {
                return Some(combine(&[(0, x), (1, y), (2, FEl::ONE)]));
            }
        }
    }
    None
}

/// Witt index of a nondegenerate symmetric form, by splitting off hyperbolic
/// planes one isotropic vector at a time.
pub fn witt_index(ctx: &FieldCtx, w: &Mat) -> Result<usize> {
    if ctx.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if !w.is_square() || w.transpose() != *w {
        return Err(Error::InadmissibleParameter("gram is not symmetric".into()));
    }
    if ctx.rank(w) != w.rows() {
        return Err(Error::Degenerate);
    }
    let half = ctx.inv(ctx.from_int(2))?;
    let mut g = w.clone();
    let mut index = 0;
    while g.rows() >= 2 {
        let Some(v) = isotropic_vector(ctx, &g) else {
            break;
        };
        let m = g.rows();
        let unit = |i: usize| {
            let mut e = vec![FEl::ZERO; m];
            e[i] = FEl::ONE;
            e
        };
        let (k, bvk) = (0..m)
            .map(|i| (i, bform(ctx, &g, &v, &unit(i))))
            .find(|(_, b)| !b.is_zero())
            .ok_or(Error::Degenerate)?;
        // w with B(v, w) = 1, then made isotropic
        let mut u = unit(k);
        let inv = ctx.inv(bvk)?;
        u.iter_mut().for_each(|x| *x = ctx.mul(*x, inv));
        let shift = ctx.mul(half, bform(ctx, &g, &u, &u));
        let u: Vec<FEl> = u
            .iter()
            .zip(&v)
            .map(|(&a, &b)| ctx.sub(a, ctx.mul(shift, b)))
            .collect();
        let mut complement = RowSpace::new(m);
        let mut cols = Vec::with_capacity(m - 2);
        for i in 0..m {
            let e = unit(i);
            let (bu, bv) = (bform(ctx, &g, &e, &u), bform(ctx, &g, &e, &v));
            let x: Vec<FEl> = (0..m)
                .map(|t| ctx.sub(ctx.sub(e[t], ctx.mul(bu, v[t])), ctx.mul(bv, u[t])))
                .collect();
            if complement.insert(ctx, x.clone()) {
                cols.push(x);
            }
        }
        let c = Mat::from_fn(ctx, m, cols.len(), |i, j| cols[j][i]);
        g = ctx.mat_mul(&ctx.mat_mul(&c.transpose(), &g), &c);
        index += 1;
    }
    Ok(index)
}
