use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::forms::{bilinear_symmetry, Symmetry};
use crate::error::{Error, Result};
use crate::gf::{FEl, FieldCtx, SubfieldEmbedding};
use crate::linalg::{algebra_span_dim, Mat, RowSpace};

/// Retry cap for drawing an invertible `B = C + P C̄`.
pub const MAX_RETRIES: usize = 64;

/// Output of [`hilbert90_descent`].
#[derive(Clone, Debug)]
pub struct Descent {
    /// `F_u` with `u² = q`.
    pub subfield: FieldCtx,
    pub embedding: SubfieldEmbedding,
    /// `P` with `ḡ = P g P⁻¹` and `P̄ P = 1`.
    pub cocycle: Mat,
    /// `S` with `P = S̄ S⁻¹`; `S⁻¹ g S` has entries in `F_u`.
    pub conjugator: Mat,
    /// `S⁻¹ g S`, written over the subfield.
    pub gens: Vec<Mat>,
    /// The form `λ W^S + λ̄ W̄^S` over the subfield.
    pub form: Mat,
    pub lambda: FEl,
    pub symmetry: Symmetry,
}

fn to_subfield(sub: &FieldCtx, emb: &SubfieldEmbedding, m: &Mat) -> Result<Mat> {
    let mut entries = Vec::with_capacity(m.rows() * m.cols());
    for &x in m.data() {
        entries.push(
            emb.restrict(x)
                .ok_or_else(|| Error::Descent("entry outside the subfield".into()))?,
        );
    }
    Ok(Mat::from_fn(sub, m.rows(), m.cols(), |i, j| {
        entries[i * m.cols() + j]
    }))
}

/// Solves `ḡ P = P g` for every generator; returns a basis of solutions.
fn intertwiners(ctx: &FieldCtx, gens: &[Mat]) -> Result<Vec<Mat>> {
    let n = gens[0].rows();
    let mut space = RowSpace::new(n * n);
    for g in gens {
        let gb = ctx.mat_conj(g)?;
        for i in 0..n {
            for j in 0..n {
                // (ḡP)[i][j] - (Pg)[i][j] as a linear form in P[a][b]
                let mut row = vec![FEl::ZERO; n * n];
                for a in 0..n {
                    row[a * n + j] = ctx.add(row[a * n + j], gb.get(i, a));
                }
                for b in 0..n {
                    row[i * n + b] = ctx.sub(row[i * n + b], g.get(b, j));
                }
                space.insert(ctx, row);
            }
        }
    }
    Ok(space
        .kernel(ctx)
        .into_iter()
        .map(|v| Mat::from_fn(ctx, n, n, |a, b| v[a * n + b]))
        .collect())
}

/// Conjugates absolutely irreducible generators preserving the bilinear form
/// `w` (and some hermitian form, so that `R ≅ R̄`) into `GL_N(√q)`, and
/// produces an invariant form over `F_√q` of the same symmetry type.
pub fn hilbert90_descent(ctx: &FieldCtx, gens: &[Mat], w: &Mat, seed: u64) -> Result<Descent> {
    if !ctx.has_conj() {
        return Err(Error::ConjUndefined(ctx.k()));
    }
    let n = w.rows();
    if gens.is_empty() || gens.iter().any(|g| g.rows() != n || g.cols() != n) {
        return Err(Error::DimensionMismatch(
            "generators and form must share a size".into(),
        ));
    }
    let span = algebra_span_dim(ctx, n, gens);
    if span != n * n {
        return Err(Error::NotIrreducible { span, full: n * n });
    }
    for g in gens {
        if ctx.mat_mul(&ctx.mat_mul(&g.transpose(), w), g) != *w {
            return Err(Error::Descent(
                "generators do not preserve the bilinear form".into(),
            ));
        }
    }
    let mut p = intertwiners(ctx, gens)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Descent("the conjugate representation is not isomorphic".into()))?;

    // P̄P is a scalar μ fixed by conjugation; divide P by λ with λ̄λ = μ
    let pp = ctx.mat_mul(&ctx.mat_conj(&p)?, &p);
    let mu = pp
        .as_scalar()
        .ok_or_else(|| Error::Descent("P̄P is not scalar".into()))?;
    let lam = ctx
        .elements()
        .find(|&l| !l.is_zero() && ctx.norm(l).is_ok_and(|v| v == mu))
        .ok_or_else(|| Error::NormEquationFailure(ctx.format(mu)))?;
    p = ctx.mat_scale(ctx.inv(lam)?, &p);

    let s = match p.as_scalar() {
        // P = c·I: take S = s·I with s̄ = c s
        Some(c) => {
            let s = ctx
                .elements()
                .find(|&s| !s.is_zero() && ctx.conj(s).is_ok_and(|sb| sb == ctx.mul(c, s)))
                .ok_or_else(|| Error::NormEquationFailure(ctx.format(c)))?;
            Mat::scalar(ctx, n, s)
        }
        // P = B B̄⁻¹ for B = C + P C̄, so S = B̄ gives P = S̄ S⁻¹
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut found = None;
            for _ in 0..MAX_RETRIES {
                let c = Mat::from_fn(ctx, n, n, |_, _| FEl(rng.gen_range(0..ctx.q())));
                let b = ctx.mat_add(&c, &ctx.mat_mul(&p, &ctx.mat_conj(&c)?));
                if ctx.rank(&b) == n {
                    found = Some(b);
                    break;
                }
            }
            ctx.mat_conj(&found.ok_or(Error::MaxRandomRetriesExceeded(MAX_RETRIES))?)?
        }
    };
    let s_inv = ctx.mat_inverse(&s)?;

    let (subfield, embedding) = ctx.subfield(ctx.k() / 2)?;
    let conjugated: Vec<Mat> = gens
        .iter()
        .map(|g| ctx.mat_mul(&ctx.mat_mul(&s_inv, g), &s))
        .collect();
    let sub_gens = conjugated
        .iter()
        .map(|g| to_subfield(&subfield, &embedding, g))
        .collect::<Result<Vec<_>>>()?;

    let ws = ctx.mat_mul(&ctx.mat_mul(&s.transpose(), w), &s);
    let ws_bar = ctx.mat_conj(&ws)?;
    let mut chosen = None;
    for l in ctx.elements().skip(1) {
        let f = ctx.mat_add(
            &ctx.mat_scale(l, &ws),
            &ctx.mat_scale(ctx.conj(l)?, &ws_bar),
        );
        if !f.is_zero() {
            chosen = Some((l, f));
            break;
        }
    }
    let (lambda, form) =
        chosen.ok_or_else(|| Error::Descent("every λW^S + λ̄W̄^S vanishes".into()))?;
    let form = to_subfield(&subfield, &embedding, &form)?;
    let symmetry = bilinear_symmetry(&subfield, &form);
    Ok(Descent {
        subfield,
        embedding,
        cocycle: p,
        conjugator: s,
        gens: sub_gens,
        form,
        lambda,
        symmetry,
    })
}
