//! Recognition of the classical group containing `R_λ(B_n')`: invariant
//! forms, Witt index, trace fields, the predicted group and Galois descent.

mod descent;
mod forms;
mod groups;

pub use descent::{hilbert90_descent, Descent, MAX_RETRIES};
pub use forms::{
    bilinear_symmetry, invariant_bilinear_space, invariant_sesquilinear_space, witt_index,
    FormKind, FormSolution, Symmetry,
};
pub use groups::{
    classify_case, group_order, predicted_group, Case, Family, PredictedGroup, EXCLUDED_ORDERS,
};

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::gorin_lin_generators;
use crate::error::{Error, Result};
use crate::gf::{FEl, FieldCtx};
use crate::hecke::HeckeRep;
use crate::linalg::{algebra_span_dim, Mat};

/// Images of generators of `B_n'`: the Gorin–Lin words for `n ≥ 3`, nothing
/// for `n ≤ 2` (where `B_n'` is trivial).
pub fn commutator_images(rep: &HeckeRep) -> Result<Vec<Mat>> {
    if rep.n() < 3 {
        return Ok(Vec::new());
    }
    rep.eval_all(&gorin_lin_generators(rep.n())?.words())
}

/// Dimension of the matrix algebra generated by `gens`; `N²` exactly when
/// they act absolutely irreducibly.
pub fn burnside_span_dim(ctx: &FieldCtx, n: usize, gens: &[Mat]) -> usize {
    algebra_span_dim(ctx, n, gens)
}

/// How many matrices [`trace_field_degree`] inspects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceBudget {
    /// Distinct products of the generators and their inverses, breadth first.
    pub closure_products: usize,
    /// Random words of length `word_length` in the generators and inverses.
    pub random_words: usize,
    pub word_length: usize,
    pub seed: u64,
}

impl Default for TraceBudget {
    fn default() -> Self {
        TraceBudget {
            closure_products: 10_000,
            random_words: 1_000,
            word_length: 24,
            seed: 0,
        }
    }
}

/// Degree over `F_p` of the field generated by the traces of the inspected
/// group elements. A lower bound for the trace field, nondecreasing in the budget.
pub fn trace_field_degree(ctx: &FieldCtx, gens: &[Mat], budget: TraceBudget) -> Result<u32> {
    let Some(first) = gens.first() else {
        return Ok(1);
    };
    let n = first.rows();
    let mut letters = gens.to_vec();
    for g in gens {
        letters.push(ctx.mat_inverse(g)?);
    }
    let mut traces: HashSet<FEl> = HashSet::new();
    let full = ctx.k();
    let degree = |t: &HashSet<FEl>| ctx.subfield_degree_of(t.iter().copied());

    let id = Mat::identity(ctx, n);
    let mut seen: HashSet<Vec<FEl>> = HashSet::from([id.data().to_vec()]);
    let mut queue = VecDeque::from([id]);
    traces.insert(ctx.from_int(n as i64));
    while let Some(m) = queue.pop_front() {
        if seen.len() >= budget.closure_products {
            break;
        }
        for g in &letters {
            let prod = ctx.mat_mul(&m, g);
            if seen.len() < budget.closure_products && seen.insert(prod.data().to_vec()) {
                traces.insert(ctx.trace(&prod));
                queue.push_back(prod);
            }
        }
    }
    if degree(&traces) == full {
        return Ok(full);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.random_words {
        let mut m = Mat::identity(ctx, n);
        for _ in 0..budget.word_length {
            m = ctx.mat_mul(&m, &letters[rng.gen_range(0..letters.len())]);
        }
        traces.insert(ctx.trace(&m));
    }
    Ok(degree(&traces))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormsRecord {
    pub bilinear_dim: usize,
    pub symmetry: Symmetry,
    pub hermitian_dim: Option<usize>,
}

/// One classification record per shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub lambda: Vec<usize>,
    #[serde(rename = "N")]
    pub dim: usize,
    pub case: Case,
    pub family: Family,
    pub field: u64,
    pub order: String,
    pub inferred: bool,
    pub forms: FormsRecord,
    pub trace_field_degree: u32,
    pub expected_trace_field_degree: u32,
    pub burnside_dim: usize,
    /// Computed Witt index of the invariant symmetric form, when there is one and `p` is odd.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witt_index: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Runs the recognition suite on `R_λ(B_n')` and compares with the prediction.
pub fn classify_shape(ctx: &FieldCtx, rep: &HeckeRep, budget: TraceBudget) -> Result<ClassRecord> {
    let predicted = predicted_group(ctx, rep.shape(), rep.alpha())?;
    let gens = commutator_images(rep)?;
    if gens.is_empty() {
        return Err(Error::TooFewStrands {
            needed: 3,
            got: rep.n(),
        });
    }
    let n = rep.dim();
    let bilinear = invariant_bilinear_space(ctx, &gens, FEl::ONE)?;
    let hermitian_dim = if predicted.case == Case::Unitary {
        Some(invariant_sesquilinear_space(ctx, &gens, FEl::ONE)?.dim())
    } else {
        None
    };
    let mut notes = Vec::new();
    let witt = match (bilinear.dim(), bilinear.overall()) {
        (1, Symmetry::Symmetric) if ctx.p() != 2 => {
            let w = witt_index(ctx, &bilinear.basis[0])?;
            if w != 0 {
                notes.push(format!("Witt index {w} of the symmetric form; a 'Witt index 0' reading is contradicted"));
            }
            Some(w)
        }
        _ => None,
    };
    if predicted.inferred {
        notes
            .push("unitary prediction for [n-1,1] is inferred, not listed in the case tree".into());
    }
    Ok(ClassRecord {
        lambda: rep.shape().parts().to_vec(),
        dim: n,
        case: predicted.case,
        family: predicted.family,
        field: predicted.field,
        order: predicted.order.to_string(),
        inferred: predicted.inferred,
        forms: FormsRecord {
            bilinear_dim: bilinear.dim(),
            symmetry: bilinear.overall(),
            hermitian_dim,
        },
        trace_field_degree: trace_field_degree(ctx, &gens, budget)?,
        expected_trace_field_degree: predicted.expected_trace_degree(ctx.p() as u64),
        burnside_dim: burnside_span_dim(ctx, n, &gens),
        witt_index: witt,
        notes,
    })
}

#[cfg(test)]
mod tests;
