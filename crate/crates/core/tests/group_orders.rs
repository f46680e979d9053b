//! Closed-form group orders against exhaustive counts and closures of classical generators.

use braidimg::classify::{group_order, Family};
use braidimg::engine::{bfs_closure, ClosureStatus};
use braidimg::{FEl, FieldCtx, Mat};
use num_bigint::BigUint;

fn field(p: u64, k: u32) -> FieldCtx {
    FieldCtx::new(p, k, None).unwrap()
}

fn closure_order(ctx: &FieldCtx, gens: &[Mat]) -> u64 {
    let r = bfs_closure(ctx, gens, 1_000_000).unwrap();
    assert_eq!(r.status, ClosureStatus::Complete);
    r.order.unwrap()
}

fn transvection(ctx: &FieldCtx, n: usize, i: usize, j: usize, c: FEl) -> Mat {
    let mut m = Mat::identity(ctx, n);
    m.set(i, j, c);
    m
}

/// `E_ij(1)` and `E_ij(ω)` for every off-diagonal slot generate `SL_n(q)`.
fn sl_gens(ctx: &FieldCtx, n: usize) -> Vec<Mat> {
    let w = ctx.primitive_element();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                gens.push(transvection(ctx, n, i, j, FEl::ONE));
                gens.push(transvection(ctx, n, i, j, w));
            }
        }
    }
    gens
}

fn kron(ctx: &FieldCtx, a: &Mat, b: &Mat) -> Mat {
    let (m, n) = (a.rows(), b.rows());
    Mat::from_fn(ctx, m * n, m * n, |r, c| {
        ctx.mul(a.get(r / n, c / n), b.get(r % n, c % n))
    })
}

fn all_matrices(ctx: &FieldCtx, n: usize) -> impl Iterator<Item = Mat> + '_ {
    let q = ctx.q() as u64;
    let total = q.pow((n * n) as u32);
    (0..total).map(move |mut code| {
        Mat::from_fn(ctx, n, n, |_, _| {
            let x = ctx.element((code % q) as u32).unwrap();
            code /= q;
            x
        })
    })
}

fn anti_diagonal(ctx: &FieldCtx, n: usize, signs: impl Fn(usize) -> FEl) -> Mat {
    Mat::from_fn(
        ctx,
        n,
        n,
        |i, j| if i + j == n - 1 { signs(i) } else { FEl::ZERO },
    )
}

fn big(x: u64) -> BigUint {
    x.into()
}

#[test]
fn sl_orders_match_transvection_closures() {
    for (p, k, n) in [
        (2, 1, 2),
        (3, 1, 2),
        (2, 2, 2),
        (5, 1, 2),
        (7, 1, 2),
        (2, 3, 2),
        (3, 2, 2),
        (2, 1, 3),
        (3, 1, 3),
    ] {
        let ctx = field(p, k);
        let got = closure_order(&ctx, &sl_gens(&ctx, n));
        assert_eq!(
            big(got),
            group_order(Family::Sl, n, ctx.q() as u64).unwrap(),
            "SL_{n}({})",
            ctx.q()
        );
    }
}

#[test]
fn sp_orders_match_exhaustive_isometry_counts() {
    for (p, k, n) in [(2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 1, 4)] {
        let ctx = field(p, k);
        let j = anti_diagonal(&ctx, n, |i| {
            if i < n / 2 {
                FEl::ONE
            } else {
                ctx.neg(FEl::ONE)
            }
        });
        let count = all_matrices(&ctx, n)
            .filter(|a| ctx.mat_mul(&ctx.mat_mul(&a.transpose(), &j), a) == j)
            .count();
        assert_eq!(
            big(count as u64),
            group_order(Family::Sp, n, ctx.q() as u64).unwrap(),
            "SP_{n}({})",
            ctx.q()
        );
    }
}

#[test]
fn su_orders_match_exhaustive_isometry_counts() {
    for (p, k, n) in [(2, 2, 2), (3, 2, 2), (2, 2, 3)] {
        let ctx = field(p, k);
        let j = anti_diagonal(&ctx, n, |_| FEl::ONE);
        let count = all_matrices(&ctx, n)
            .filter(|a| ctx.det(a) == FEl::ONE)
            .filter(|a| {
                ctx.mat_mul(&ctx.mat_mul(&ctx.mat_conj(a).unwrap().transpose(), &j), a) == j
            })
            .count();
        assert_eq!(
            big(count as u64),
            group_order(Family::Su, n, ctx.q() as u64).unwrap(),
            "SU_{n}({})",
            ctx.q()
        );
    }
}

#[test]
fn omega_plus_4_is_a_central_product_of_two_sl2() {
    for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let ctx = field(p, k);
        let id = Mat::identity(&ctx, 2);
        let sl2 = sl_gens(&ctx, 2);
        let gens: Vec<Mat> = sl2
            .iter()
            .map(|g| kron(&ctx, g, &id))
            .chain(sl2.iter().map(|g| kron(&ctx, &id, g)))
            .collect();
        let got = closure_order(&ctx, &gens);
        assert_eq!(
            big(got),
            group_order(Family::OmegaPlus, 4, ctx.q() as u64).unwrap(),
            "Ω⁺_4({})",
            ctx.q()
        );
    }
}

#[test]
fn omega_plus_2_is_cyclic_of_order_half_q_minus_one() {
    for q in [3u64, 5, 7, 9, 11] {
        assert_eq!(
            group_order(Family::OmegaPlus, 2, q).unwrap(),
            big((q - 1) / 2)
        );
    }
    assert_eq!(group_order(Family::OmegaPlus, 2, 8).unwrap(), big(7));
}
