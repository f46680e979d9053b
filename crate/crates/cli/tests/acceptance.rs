//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use braidimg::braid::{normal_closure_witness, verify_gorin_lin_relations};
use braidimg::classify::{
    burnside_span_dim, classify_case, commutator_images, hilbert90_descent,
    invariant_bilinear_space, invariant_sesquilinear_space, predicted_group, trace_field_degree,
    Case, Family, Symmetry, TraceBudget,
};
use braidimg::engine::{bfs_closure, certify_against, certify_order, Certificate};
use braidimg::hecke::{
    bilinear_pairing, character_twist, check_form_equivariance, duality_operator,
    exterior_power_compare, exterior_power_generators, hermitian_form, pair_generators,
};
use braidimg::young::{partitions_of, standard_tableaux, Partition};
use braidimg::{FEl, FieldCtx, HeckeRep, Mat};
use braidimg_cli::{cmd_verify, Verdict, VerifyOptions};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(p: u64, k: u32, ord: u64) -> (FieldCtx, FEl) {
    let ctx = FieldCtx::new(p, k, None).expect("field");
    let a = ctx.find_element_of_order(ord).expect("α");
    (ctx, a)
}

fn f8() -> (FieldCtx, FEl) {
    field(2, 3, 7)
}

fn f9() -> (FieldCtx, FEl) {
    field(3, 2, 8)
}

fn f49() -> (FieldCtx, FEl) {
    field(7, 2, 8)
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("partition")
}

fn rep<'a>(ctx: &'a FieldCtx, shape: &Partition, a: FEl) -> Result<HeckeRep<'a>, String> {
    HeckeRep::new(ctx, shape, a).map_err(|e| format!("{shape}: {e}"))
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn relation_suite() -> Outcome {
    for (ctx, a) in [f8(), f49()] {
        for n in 3..=6 {
            for shape in partitions_of(n) {
                let r = rep(&ctx, &shape, a)?;
                ensure(r.quadratic_relation_holds(), || {
                    format!("quadratic relation fails in {shape} over F_{}", ctx.q())
                })?;
                ensure(r.braid_relations_hold(), || {
                    format!("braid relation fails in {shape} over F_{}", ctx.q())
                })?;
                ensure(r.distant_commutation_holds(), || {
                    format!("commutation fails in {shape} over F_{}", ctx.q())
                })?;
            }
        }
    }
    Ok(())
}

fn form_suite() -> Outcome {
    for (ctx, a) in [f8(), f9(), f49()] {
        for n in 1..=6 {
            for shape in partitions_of(n) {
                let r = rep(&ctx, &shape, a)?;
                let spec = bilinear_pairing(&ctx, &shape, a);
                let gens = if shape.is_self_conjugate() {
                    r.generators().to_vec()
                } else {
                    pair_generators(&r, &rep(&ctx, &shape.transpose(), a)?).map_err(e)?
                };
                let ok = check_form_equivariance(&ctx, &gens, &spec).map_err(e)?;
                ensure(ok, || {
                    format!("bilinear equivariance fails for {shape} over F_{}", ctx.q())
                })?;
                if !shape.is_self_conjugate() {
                    let l = duality_operator(&ctx, &shape, a).map_err(e)?;
                    ensure(l.square_holds && l.conjugation_holds, || {
                        format!("L identity fails for {shape}")
                    })?;
                }
            }
        }
    }
    let (ctx, a) = f49();
    for n in 1..=6 {
        for shape in partitions_of(n) {
            let d = hermitian_form(&ctx, &shape, a).map_err(e)?;
            let ok =
                check_form_equivariance(&ctx, rep(&ctx, &shape, a)?.generators(), &d).map_err(e)?;
            ensure(ok, || format!("hermitian invariance fails for {shape}"))?;
        }
    }
    // w(T) w(T') is a shape constant; on λ = λ' it is the diagonal-rule ν(λ)
    for n in 1..=8 {
        for shape in partitions_of(n) {
            let c = shape.transpose_sign();
            for t in standard_tableaux(&shape) {
                ensure(t.w_sign() * t.transpose().w_sign() == c, || {
                    format!("w(T)w(T') varies on {shape}")
                })?;
            }
            if shape.is_self_conjugate() {
                ensure(c == shape.diag_and_nu().1, || {
                    format!("w(T)w(T') ≠ ν on {shape}")
                })?;
            }
        }
    }
    Ok(())
}

fn hook_suite() -> Outcome {
    for (ctx, a) in [f8(), f49()] {
        for n in 3..=6 {
            for r in 1..=n - 2 {
                ensure(exterior_power_compare(&ctx, n, r, a).map_err(e)?, || {
                    format!("Λ^{r} fails at n = {n}")
                })?;
                let hook = rep(&ctx, &Partition::hook(n, r).map_err(e)?, a)?;
                let ext = exterior_power_generators(&ctx, n, r, a).map_err(e)?;
                let twist = character_twist(&ctx, hook.generators(), &ext).map_err(e)?;
                let want = ctx.pow(a, r as u64 - 1);
                ensure(twist.eta.iter().all(|&x| x == want), || {
                    format!("η ≠ α^{} at n = {n}", r - 1)
                })?;
            }
        }
    }
    Ok(())
}

fn gorin_lin_suite() -> Outcome {
    for ((ctx, a), n) in [(f8(), 6), (f9(), 7)] {
        let r = rep(&ctx, &Partition::lambda_zero(n).map_err(e)?, a)?;
        let report = verify_gorin_lin_relations(n, |w| r.eval(w)).map_err(e)?;
        ensure(report.all_hold(), || {
            format!(
                "relations {:?} at n = {n} over F_{}",
                report.relations,
                ctx.q()
            )
        })?;
        ensure(
            r.quadratic_relation_holds() && r.braid_relations_hold(),
            || format!("Hecke relations at n = {n}"),
        )?;
    }
    for (ctx, a) in [f8(), f49()] {
        for n in 4..=6 {
            let (lhs, rhs) = normal_closure_witness(n).map_err(e)?;
            for shape in partitions_of(n) {
                let r = rep(&ctx, &shape, a)?;
                let ok = r.eval(&lhs).map_err(e)? == r.eval(&rhs).map_err(e)?;
                ensure(ok, || {
                    format!("witness fails in {shape} over F_{}", ctx.q())
                })?;
            }
        }
    }
    Ok(())
}

fn comm(ctx: &FieldCtx, shape: &[usize], a: FEl) -> Result<Vec<Mat>, String> {
    commutator_images(&rep(ctx, &p(shape), a)?).map_err(e)
}

/// Closes the commutator image and checks it against the predicted order.
fn certify(ctx: &FieldCtx, shape: &[usize], a: FEl, want: u64, cap: u64) -> Outcome {
    let predicted = predicted_group(ctx, &p(shape), a).map_err(e)?;
    ensure(predicted.order == want.into(), || {
        format!("{predicted} has order {}, expected {want}", predicted.order)
    })?;
    let closure = bfs_closure(ctx, &comm(ctx, shape, a)?, cap).map_err(e)?;
    let cert = certify_order(&closure, &predicted);
    ensure(cert == Certificate::Match, || {
        format!("{predicted}: {cert:?} with closure {:?}", closure.order)
    })
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    f()?;
    let took = start.elapsed();
    ensure(took <= limit, || {
        format!("took {took:.2?}, limit {limit:?}")
    })
}

fn certification_suite() -> Outcome {
    let s = Duration::from_secs;
    timed(s(1), || {
        let (ctx, a) = f8();
        certify(&ctx, &[2, 1], a, 504, 1000)
    })
    .map_err(|m| format!("SL_2(8): {m}"))?;
    timed(s(1), || {
        let (ctx, a) = f8();
        let sol = invariant_bilinear_space(&ctx, &comm(&ctx, &[2, 2], a)?, FEl::ONE).map_err(e)?;
        ensure(
            sol.dim() == 1 && sol.overall() == Symmetry::Alternating,
            || format!("form {:?}", sol.symmetry),
        )?;
        certify(&ctx, &[2, 2], a, 504, 1000)
    })
    .map_err(|m| format!("SP_2(8): {m}"))?;
    timed(s(1), || {
        let (ctx, a) = f9();
        ensure(classify_case(&ctx, a) == Ok(Case::Linear), || {
            "F_9 should be the linear case".into()
        })?;
        certify(&ctx, &[2, 2], a, 720, 1000)
    })
    .map_err(|m| format!("SP_2(9): {m}"))?;
    timed(s(1), || {
        let (ctx, a) = f49();
        let gens = comm(&ctx, &[2, 1], a)?;
        let herm = invariant_sesquilinear_space(&ctx, &gens, FEl::ONE).map_err(e)?;
        ensure(herm.dim() == 1, || {
            format!("hermitian dimension {}", herm.dim())
        })?;
        let deg = trace_field_degree(&ctx, &gens, TraceBudget::default()).map_err(e)?;
        ensure(deg == 1, || format!("trace field degree {deg}"))?;
        let g = predicted_group(&ctx, &p(&[2, 1]), a).map_err(e)?;
        ensure(g.family == Family::Su, || format!("predicted {g}"))?;
        certify(&ctx, &[2, 1], a, 336, 1000)
    })
    .map_err(|m| format!("SU_2(49): {m}"))?;
    timed(s(5), || {
        let (ctx, a) = f49();
        let gens = comm(&ctx, &[2, 2], a)?;
        let w = invariant_bilinear_space(&ctx, &gens, FEl::ONE)
            .map_err(e)?
            .basis
            .remove(0);
        let d = hilbert90_descent(&ctx, &gens, &w, 0).map_err(e)?;
        ensure(d.subfield.q() == 7, || {
            format!("descended to F_{}", d.subfield.q())
        })?;
        let closure = bfs_closure(&d.subfield, &d.gens, 1000).map_err(e)?;
        let cert = certify_against(&closure, &336u32.into());
        ensure(cert == Certificate::Match, || {
            format!("descended closure {:?}", closure.order)
        })
    })
    .map_err(|m| format!("SP_2(7) descent: {m}"))?;
    timed(s(600), || {
        let (ctx, a) = f8();
        certify(&ctx, &[3, 1], a, 16_482_816, 20_000_000)
    })
    .map_err(|m| format!("SL_3(8): {m}"))?;
    timed(s(600), || {
        let (ctx, a) = f49();
        certify(&ctx, &[3, 1], a, 5_663_616, 20_000_000)
    })
    .map_err(|m| format!("SU_3(49): {m}"))
}

fn irreducibility_suite() -> Outcome {
    for (ctx, a) in [f8(), f49()] {
        let linear = classify_case(&ctx, a).map_err(e)? == Case::Linear;
        for n in 3..=6 {
            for shape in partitions_of(n) {
                let r = rep(&ctx, &shape, a)?;
                let dim = r.dim();
                if dim < 2 {
                    continue;
                }
                let gens = commutator_images(&r).map_err(e)?;
                let span = burnside_span_dim(&ctx, dim, &gens);
                ensure(span == dim * dim, || {
                    format!("span {span} for {shape} over F_{}", ctx.q())
                })?;
                let sol = invariant_bilinear_space(&ctx, &gens, FEl::ONE).map_err(e)?;
                if shape.is_self_conjugate() {
                    let want = if ctx.p() == 2 || shape.diag_and_nu().1 == -1 {
                        Symmetry::Alternating
                    } else {
                        Symmetry::Symmetric
                    };
                    ensure(sol.dim() == 1 && sol.overall() == want, || {
                        format!(
                            "{shape} over F_{}: dim {} {:?}",
                            ctx.q(),
                            sol.dim(),
                            sol.overall()
                        )
                    })?;
                } else if linear {
                    ensure(sol.dim() == 0, || {
                        format!("{shape} over F_{}: form of dim {}", ctx.q(), sol.dim())
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn verify_opts(n: usize, field: &str, alpha_order: u64) -> VerifyOptions {
    VerifyOptions {
        n,
        field: field.parse().expect("field spec"),
        alpha_order: Some(alpha_order),
        cap: 20_000_000,
        heavy: false,
        seed: 0,
    }
}

fn witt_report() -> Outcome {
    let report = cmd_verify(&verify_opts(6, "p=3,k=2,mod=AUTO", 8));
    ensure(report.verdict == Verdict::Pass, || {
        format!("verdict {:?}", report.verdict)
    })?;
    let shape = report.shape(&[3, 2, 1]).ok_or("no [3,2,1] record")?;
    let rec = shape.classification.as_ref().ok_or("no classification")?;
    ensure(
        rec.forms.bilinear_dim == 1 && rec.forms.symmetry == Symmetry::Symmetric,
        || format!("{:?}", rec.forms),
    )?;
    ensure(rec.witt_index == Some(8), || {
        format!("Witt index {:?}", rec.witt_index)
    })?;
    ensure(rec.family == Family::OmegaPlus && rec.dim == 16, || {
        format!("{:?} {}", rec.family, rec.dim)
    })?;
    ensure(
        shape
            .discrepancies
            .iter()
            .any(|d| d.contains("Witt index 0")),
        || "discrepancy not flagged".into(),
    )
}

fn determinism() -> Outcome {
    let args = [
        "verify",
        "--n",
        "4",
        "--field",
        "p=7,k=2,mod=AUTO",
        "--alpha-order",
        "8",
        "--seed",
        "3",
    ];
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_braidimg"))
            .args(args)
            .output()
            .map_err(e)
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.code() == Some(0), || {
        format!("exit {:?}", a.status.code())
    })?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || {
        "reports differ between runs".into()
    })
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 relation suite", Duration::from_secs(10), relation_suite),
        ("2 form suite", Duration::from_secs(30), form_suite),
        (
            "3 hook and exterior-power suite",
            Duration::from_secs(30),
            hook_suite,
        ),
        (
            "4 Gorin-Lin suite",
            Duration::from_secs(30),
            gorin_lin_suite,
        ),
        (
            "5 order certifications",
            Duration::from_secs(1200),
            certification_suite,
        ),
        (
            "6 irreducibility and form absence",
            Duration::from_secs(120),
            irreducibility_suite,
        ),
        ("7 Witt report", Duration::from_secs(60), witt_report),
        ("8 determinism", Duration::from_secs(120), determinism),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = timed(limit, f);
        let took = start.elapsed();
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({took:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({took:.2?}): {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
