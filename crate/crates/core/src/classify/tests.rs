use super::*;
use crate::braid::BraidWord;
use crate::hecke::{bilinear_pairing, hermitian_form};
use crate::young::{non_hooks, partitions_of, Partition};
use proptest::prelude::*;

fn f8() -> (FieldCtx, FEl) {
    let ctx = FieldCtx::new(2, 3, None).unwrap();
    let a = ctx.x();
    (ctx, a)
}

fn f49() -> (FieldCtx, FEl) {
    let ctx = FieldCtx::new(7, 2, None).unwrap();
    let a = ctx.find_element_of_order(8).unwrap();
    (ctx, a)
}

fn f9() -> (FieldCtx, FEl) {
    let ctx = FieldCtx::new(3, 2, None).unwrap();
    let a = ctx.find_element_of_order(8).unwrap();
    (ctx, a)
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn comm(ctx: &FieldCtx, shape: &[usize], a: FEl) -> Vec<Mat> {
    commutator_images(&HeckeRep::new(ctx, &p(shape), a).unwrap()).unwrap()
}

fn is_square(ctx: &FieldCtx, x: FEl) -> bool {
    ctx.elements().any(|y| ctx.mul(y, y) == x)
}

/// Witt index of a nondegenerate symmetric form over `F_q`, `q` odd, from its
/// dimension and discriminant.
fn witt_from_discriminant(ctx: &FieldCtx, w: &Mat) -> usize {
    let m = w.rows();
    if m % 2 == 1 {
        return m / 2;
    }
    let sign = if (m / 2).is_multiple_of(2) {
        FEl::ONE
    } else {
        ctx.neg(FEl::ONE)
    };
    if is_square(ctx, ctx.mul(sign, ctx.det(w))) {
        m / 2
    } else {
        m / 2 - 1
    }
}

#[test]
fn two_two_over_f8_has_one_alternating_form() {
    let (ctx, a) = f8();
    let gens = comm(&ctx, &[2, 2], a);
    let sol = invariant_bilinear_space(&ctx, &gens, FEl::ONE).unwrap();
    assert_eq!(sol.dim(), 1);
    assert_eq!(sol.overall(), Symmetry::Alternating);
    // proportional to the explicit pairing
    let w = bilinear_pairing(&ctx, &p(&[2, 2]), a).gram(&ctx);
    let b = &sol.basis[0];
    let (i, j) = (0..4)
        .map(|k| (k / 2, k % 2))
        .find(|&(i, j)| !w.get(i, j).is_zero())
        .unwrap();
    let scale = ctx.div(b.get(i, j), w.get(i, j)).unwrap();
    assert_eq!(ctx.mat_scale(scale, &w), *b);
}

#[test]
fn non_self_conjugate_has_no_form() {
    let (ctx, a) = f8();
    let sol = invariant_bilinear_space(&ctx, &comm(&ctx, &[3, 1], a), FEl::ONE).unwrap();
    assert_eq!(sol.dim(), 0);
    assert_eq!(sol.overall(), Symmetry::None);
}

#[test]
fn identity_preserves_everything() {
    let (ctx, _) = f8();
    let sol = invariant_bilinear_space(&ctx, &[Mat::identity(&ctx, 3)], FEl::ONE).unwrap();
    assert_eq!(sol.dim(), 9);
    assert_eq!(sol.overall(), Symmetry::Mixed);
}

#[test]
fn solver_rejects_mixed_sizes() {
    let (ctx, _) = f8();
    let gens = [Mat::identity(&ctx, 2), Mat::identity(&ctx, 3)];
    assert!(matches!(
        invariant_bilinear_space(&ctx, &gens, FEl::ONE),
        Err(Error::DimensionMismatch(_))
    ));
}

#[test]
fn solutions_satisfy_the_system() {
    let (ctx, a) = f49();
    let rep = HeckeRep::new(&ctx, &p(&[2, 2]), a).unwrap();
    let c = ctx.neg(a);
    let sol = invariant_bilinear_space(&ctx, rep.generators(), c).unwrap();
    assert_eq!(sol.dim(), 1);
    for w in &sol.basis {
        for g in rep.generators() {
            assert_eq!(
                ctx.mat_mul(&ctx.mat_mul(&g.transpose(), w), g),
                ctx.mat_scale(c, w)
            );
        }
    }
}

#[test]
fn hermitian_solution_matches_weights() {
    let (ctx, a) = f49();
    let sol = invariant_sesquilinear_space(&ctx, &comm(&ctx, &[2, 1], a), FEl::ONE).unwrap();
    assert_eq!(sol.dim(), 1);
    assert_eq!(sol.overall(), Symmetry::Hermitian);
    let d = hermitian_form(&ctx, &p(&[2, 1]), a).unwrap().gram(&ctx);
    let b = &sol.basis[0];
    let scale = ctx.div(b.get(0, 0), d.get(0, 0)).unwrap();
    assert_eq!(ctx.mat_scale(scale, &d), *b);

    let sol = invariant_sesquilinear_space(&ctx, &comm(&ctx, &[3, 1], a), FEl::ONE).unwrap();
    assert_eq!(sol.dim(), 1);

    let (f, b8) = f8();
    assert!(matches!(
        invariant_sesquilinear_space(&f, &comm(&f, &[2, 1], b8), FEl::ONE),
        Err(Error::ConjUndefined(3))
    ));
}

#[test]
fn form_dimensions_across_shapes() {
    for (ctx, a) in [f8(), f9(), f49()] {
        for n in 3..=5 {
            for shape in partitions_of(n) {
                let rep = HeckeRep::new(&ctx, &shape, a).unwrap();
                if rep.dim() < 2 || (shape.is_hook() && shape.parts() != [n - 1, 1]) {
                    continue;
                }
                let gens = commutator_images(&rep).unwrap();
                let sol = invariant_bilinear_space(&ctx, &gens, FEl::ONE).unwrap();
                if shape.is_self_conjugate() {
                    assert_eq!(sol.dim(), 1, "{shape}");
                    let want = if shape.diag_and_nu().1 == -1 || ctx.p() == 2 {
                        Symmetry::Alternating
                    } else {
                        Symmetry::Symmetric
                    };
                    assert_eq!(sol.overall(), want, "{shape}");
                } else if classify_case(&ctx, a).unwrap() == Case::Linear {
                    assert_eq!(sol.dim(), 0, "{shape}");
                }
                if ctx.has_conj() && classify_case(&ctx, a).unwrap() == Case::Unitary {
                    assert_eq!(
                        invariant_sesquilinear_space(&ctx, &gens, FEl::ONE)
                            .unwrap()
                            .dim(),
                        1
                    );
                }
                assert_eq!(
                    burnside_span_dim(&ctx, rep.dim(), &gens),
                    rep.dim() * rep.dim(),
                    "{shape}"
                );
            }
        }
    }
}

#[test]
fn burnside_examples() {
    let (ctx, a) = f8();
    assert_eq!(burnside_span_dim(&ctx, 2, &comm(&ctx, &[2, 1], a)), 4);
    assert_eq!(burnside_span_dim(&ctx, 2, &[Mat::identity(&ctx, 2)]), 1);
}

#[test]
fn witt_small_forms() {
    let (ctx, _) = f9();
    let one = FEl::ONE;
    let hyp = Mat::from_rows(&ctx, &[vec![FEl::ZERO, one], vec![one, FEl::ZERO]]).unwrap();
    assert_eq!(witt_index(&ctx, &hyp).unwrap(), 1);
    for g in ctx.elements().skip(1) {
        let w = Mat::diag(&ctx, &[one, ctx.neg(g)]);
        // exhaustive search for a nonzero isotropic vector
        let iso = ctx
            .elements()
            .flat_map(|x| ctx.elements().map(move |y| (x, y)))
            .any(|(x, y)| {
                !(x.is_zero() && y.is_zero())
                    && ctx.sub(ctx.mul(x, x), ctx.mul(g, ctx.mul(y, y))).is_zero()
            });
        assert_eq!(witt_index(&ctx, &w).unwrap(), usize::from(iso));
        assert_eq!(usize::from(iso), usize::from(is_square(&ctx, g)));
    }
    let (f, _) = f8();
    assert!(matches!(
        witt_index(&f, &Mat::identity(&f, 2)),
        Err(Error::EvenCharacteristic)
    ));
    let deg = Mat::diag(&ctx, &[one, FEl::ZERO]);
    assert!(matches!(witt_index(&ctx, &deg), Err(Error::Degenerate)));
}

#[test]
fn witt_index_of_three_two_one() {
    let (ctx, a) = f9();
    let gens = comm(&ctx, &[3, 2, 1], a);
    let sol = invariant_bilinear_space(&ctx, &gens, FEl::ONE).unwrap();
    assert_eq!(sol.dim(), 1);
    assert_eq!(sol.overall(), Symmetry::Symmetric);
    let w = &sol.basis[0];
    assert_eq!(w.rows(), 16);
    assert_eq!(witt_index(&ctx, w).unwrap(), 8);
    assert_eq!(witt_from_discriminant(&ctx, w), 8);
    assert_eq!(burnside_span_dim(&ctx, 16, &gens), 256);
}

fn symmetric_matrix(m: usize, entries: Vec<u32>) -> (FieldCtx, Mat) {
    let ctx = FieldCtx::prime(5).unwrap();
    let mut k = 0;
    let mut mat = Mat::zeros(&ctx, m, m);
    for i in 0..m {
        for j in i..m {
            let v = ctx.from_int(entries[k] as i64);
            k += 1;
            mat.set(i, j, v);
            mat.set(j, i, v);
        }
    }
    (ctx, mat)
}

proptest! {
    #[test]
    fn witt_index_matches_discriminant(m in 1usize..6, entries in prop::collection::vec(0u32..5, 15)) {
        let (ctx, w) = symmetric_matrix(m, entries);
        prop_assume!(ctx.rank(&w) == m);
        prop_assert_eq!(witt_index(&ctx, &w).unwrap(), witt_from_discriminant(&ctx, &w));
    }
}

#[test]
fn trace_degree_examples() {
    let (ctx, a) = f8();
    let gens = comm(&ctx, &[2, 1], a);
    assert_eq!(
        trace_field_degree(&ctx, &gens, TraceBudget::default()).unwrap(),
        3
    );
    // trace of s1 s2 s1⁻¹ s2⁻¹ is 1 - (α + α⁻¹)
    let rep = HeckeRep::new(&ctx, &p(&[2, 1]), a).unwrap();
    let c = rep
        .eval(&BraidWord::parse(3, "s1 s2 S1 S2").unwrap())
        .unwrap();
    let want = ctx.sub(FEl::ONE, ctx.add(a, ctx.inv(a).unwrap()));
    assert_eq!(ctx.trace(&c), want);
    assert_eq!(ctx.subfield_degree_of([want]), 3);

    let (ctx, a) = f49();
    let gens = comm(&ctx, &[2, 1], a);
    assert_eq!(
        trace_field_degree(&ctx, &gens, TraceBudget::default()).unwrap(),
        1
    );
    assert_eq!(
        trace_field_degree(&ctx, &[Mat::identity(&ctx, 2)], TraceBudget::default()).unwrap(),
        1
    );
    assert_eq!(
        trace_field_degree(&ctx, &[], TraceBudget::default()).unwrap(),
        1
    );
}

#[test]
fn trace_degree_is_monotone_in_budget() {
    let (ctx, a) = f49();
    let gens = comm(&ctx, &[3, 1], a);
    let mut last = 0;
    for (closure, random) in [(1, 0), (3, 0), (20, 0), (200, 10), (2000, 100)] {
        let budget = TraceBudget {
            closure_products: closure,
            random_words: random,
            ..TraceBudget::default()
        };
        let d = trace_field_degree(&ctx, &gens, budget).unwrap();
        assert!(d >= last);
        last = d;
    }
}

fn descend(shape: &[usize]) -> (FieldCtx, Vec<Mat>, Descent) {
    let (ctx, a) = f49();
    let gens = comm(&ctx, shape, a);
    let w = invariant_bilinear_space(&ctx, &gens, FEl::ONE)
        .unwrap()
        .basis
        .remove(0);
    let d = hilbert90_descent(&ctx, &gens, &w, 0).unwrap();
    (ctx, gens, d)
}

#[test]
fn descent_of_two_two() {
    let (ctx, gens, d) = descend(&[2, 2]);
    assert_eq!(d.subfield.q(), 7);
    assert_eq!(d.symmetry, Symmetry::Alternating);
    let s_inv = ctx.mat_inverse(&d.conjugator).unwrap();
    for (g, h) in gens.iter().zip(&d.gens) {
        let conj = ctx.mat_mul(&ctx.mat_mul(&s_inv, g), &d.conjugator);
        // entries fixed by x ↦ x⁷
        assert_eq!(ctx.mat_conj(&conj).unwrap(), conj);
        assert_eq!(
            conj.map(|x| d.embedding.embed(d.embedding.restrict(x).unwrap())),
            conj
        );
        let sub = &d.subfield;
        assert_eq!(
            sub.mat_mul(&sub.mat_mul(&h.transpose(), &d.form), h),
            d.form
        );
    }
    let pb = ctx.mat_conj(&d.cocycle).unwrap();
    assert_eq!(ctx.mat_mul(&pb, &d.cocycle), Mat::identity(&ctx, 2));
}

#[test]
fn descent_keeps_symmetric_type() {
    let (ctx, a) = f49();
    let shape = (4..=7)
        .flat_map(non_hooks)
        .find(|s| s.is_self_conjugate() && s.diag_and_nu().1 == 1)
        .unwrap();
    let gens = commutator_images(&HeckeRep::new(&ctx, &shape, a).unwrap()).unwrap();
    let sol = invariant_bilinear_space(&ctx, &gens, FEl::ONE).unwrap();
    assert_eq!(sol.overall(), Symmetry::Symmetric);
    let d = hilbert90_descent(&ctx, &gens, &sol.basis[0], 3).unwrap();
    assert_eq!(d.symmetry, Symmetry::Symmetric);
}

#[test]
fn descent_of_subfield_input_is_scalar() {
    let (ctx, _) = f49();
    let (sub, emb) = ctx.subfield(1).unwrap();
    // SL_2(7) generators already over F_7, preserving the standard alternating form
    let one = FEl::ONE;
    let z = FEl::ZERO;
    let u = Mat::from_rows(&ctx, &[vec![one, one], vec![z, one]]).unwrap();
    let l = Mat::from_rows(&ctx, &[vec![one, z], vec![one, one]]).unwrap();
    let j = Mat::from_rows(&ctx, &[vec![z, one], vec![ctx.neg(one), z]]).unwrap();
    let d = hilbert90_descent(&ctx, &[u.clone(), l.clone()], &j, 0).unwrap();
    assert!(d.cocycle.as_scalar().is_some());
    let s = &d.conjugator;
    assert!(s.as_scalar().is_some());
    assert_eq!(
        d.gens[0],
        Mat::from_fn(&sub, 2, 2, |i, j| emb.restrict(u.get(i, j)).unwrap())
    );
}

#[test]
fn descent_refusals() {
    let (ctx, _) = f49();
    let id = Mat::identity(&ctx, 2);
    assert!(matches!(
        hilbert90_descent(&ctx, std::slice::from_ref(&id), &id, 0),
        Err(Error::NotIrreducible { .. })
    ));
    let (f, a) = f8();
    let gens = comm(&f, &[2, 2], a);
    assert!(matches!(
        hilbert90_descent(&f, &gens, &Mat::identity(&f, 2), 0),
        Err(Error::ConjUndefined(_))
    ));
}

#[test]
fn record_for_three_two_one() {
    let (ctx, a) = f9();
    let rep = HeckeRep::new(&ctx, &p(&[3, 2, 1]), a).unwrap();
    let budget = TraceBudget {
        closure_products: 500,
        random_words: 50,
        ..TraceBudget::default()
    };
    let rec = classify_shape(&ctx, &rep, budget).unwrap();
    assert_eq!((rec.family, rec.dim, rec.field), (Family::OmegaPlus, 16, 9));
    assert_eq!(rec.forms.bilinear_dim, 1);
    assert_eq!(rec.forms.symmetry, Symmetry::Symmetric);
    assert_eq!(rec.witt_index, Some(8));
    assert!(rec.notes.iter().any(|n| n.contains("Witt index 8")));
    assert_eq!(rec.burnside_dim, 256);
    assert_eq!(rec.trace_field_degree, 2);
}

#[test]
fn record_json_shape() {
    let (ctx, a) = f49();
    let rep = HeckeRep::new(&ctx, &p(&[2, 1]), a).unwrap();
    let rec = classify_shape(&ctx, &rep, TraceBudget::default()).unwrap();
    let v = serde_json::to_value(&rec).unwrap();
    assert_eq!(v["lambda"], serde_json::json!([2, 1]));
    assert_eq!(v["N"], 2);
    assert_eq!(v["case"], "unitary");
    assert_eq!(v["family"], "SU");
    assert_eq!(v["order"], "336");
    assert_eq!(v["forms"]["hermitian_dim"], 1);
    assert_eq!(v["trace_field_degree"], 1);
    assert_eq!(v["expected_trace_field_degree"], 1);
    assert!(rec.inferred);
}
