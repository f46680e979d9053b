//! Fixtures shared by the benchmarks.

use braidimg::classify::commutator_images;
use braidimg::young::Partition;
use braidimg::{FEl, FieldCtx, HeckeRep, Mat};

/// `F_q` from `(p, k)` with its smallest element of multiplicative order `ord`.
pub fn field(p: u64, k: u32, ord: u64) -> (FieldCtx, FEl) {
    let ctx = FieldCtx::new(p, k, None).expect("valid field");
    let alpha = ctx.find_element_of_order(ord).expect("order divides q - 1");
    (ctx, alpha)
}

pub fn shape(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("valid partition")
}

/// Images of the commutator-subgroup generators under `R_λ`.
pub fn commutator_gens(ctx: &FieldCtx, parts: &[usize], alpha: FEl) -> Vec<Mat> {
    let rep = HeckeRep::new(ctx, &shape(parts), alpha).expect("admissible α");
    commutator_images(&rep).expect("n ≥ 3")
}
