use braidimg::classify::{
    classify_shape, commutator_images, hilbert90_descent, invariant_bilinear_space,
    invariant_sesquilinear_space, predicted_group, ClassRecord, FormSolution, Symmetry,
    TraceBudget,
};
use braidimg::engine::{bfs_closure, certify_order, Certificate, ClosureResult};
use braidimg::gf::FieldCtx;
use braidimg::hecke::{
    bilinear_pairing, check_form_equivariance, csv_rows, duality_operator, hermitian_form,
    matrix_csv, pair_generators, PairingKind,
};
use braidimg::young::{non_hooks, Partition};
use braidimg::{Error, FEl, HeckeRep, Mat};
use serde::Serialize;

use crate::report::Verdict;
use crate::{
    refuse, ClassifyArgs, DescendArgs, EnumerateArgs, Outcome, Parameters, RepArgs, Setup,
    ShapeArgs, EXIT_MISMATCH, EXIT_PASS, SCHEMA,
};

/// Field setup and shape shared by the single-shape commands.
fn prepare(args: &ShapeArgs) -> Result<(Setup, Partition), Outcome> {
    let setup = args.field.setup().map_err(Outcome::usage)?;
    let shape = args.shape().map_err(Outcome::usage)?;
    Ok((setup, shape))
}

pub(crate) fn rep(args: &RepArgs) -> Outcome {
    let (setup, shape) = match prepare(&args.shape) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let rep = match HeckeRep::new(&setup.ctx, &shape, setup.alpha) {
        Ok(r) => r,
        Err(e) => return refuse("rep", Some(Parameters::new(shape.n(), &setup, None)), &e),
    };
    let n = shape.n();
    let indices: Vec<usize> = match args.r {
        Some(r) if r == 0 || r >= n => {
            return Outcome::usage(format!("--r: {r} is outside 1..{}", n - 1))
        }
        Some(r) => vec![r],
        None => (1..n).collect(),
    };
    let blocks: Vec<String> = indices
        .iter()
        .map(|&r| matrix_csv(&setup.ctx, &shape, setup.alpha, r, rep.generator(r)))
        .collect();
    Outcome {
        stdout: blocks.join("\n"),
        stderr: String::new(),
        code: EXIT_PASS,
    }
}

#[derive(Serialize)]
struct SolutionRecord {
    dim: usize,
    symmetry: Symmetry,
    basis: Vec<String>,
}

impl SolutionRecord {
    fn new(ctx: &FieldCtx, sol: &FormSolution) -> Self {
        SolutionRecord {
            dim: sol.dim(),
            symmetry: sol.overall(),
            basis: sol.basis.iter().map(|m| csv_rows(ctx, m)).collect(),
        }
    }
}

#[derive(Serialize)]
struct PairingRecord {
    kind: PairingKind,
    /// `1` symmetric, `-1` skew, `0` neither.
    symmetry: i8,
    nondegenerate: bool,
    equivariant: bool,
    gram: String,
}

#[derive(Serialize)]
struct DualityRecord {
    square: i8,
    square_holds: bool,
    conjugation_holds: bool,
}

#[derive(Serialize)]
struct FormsReport {
    schema: u32,
    command: &'static str,
    parameters: Parameters,
    lambda: Partition,
    #[serde(rename = "N")]
    dim: usize,
    pairing: PairingRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    hermitian: Option<PairingRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    duality: Option<DualityRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariant_bilinear: Option<SolutionRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariant_sesquilinear: Option<SolutionRecord>,
    verdict: Verdict,
}

pub(crate) fn forms(args: &ShapeArgs) -> Outcome {
    let (setup, shape) = match prepare(args) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let params = Parameters::new(shape.n(), &setup, None);
    match forms_report(&setup, &shape, params.clone()) {
        Ok(r) => Outcome::json(&r, r.verdict.exit_code()),
        Err(e) => refuse("forms", Some(params), &e),
    }
}

fn forms_report(
    setup: &Setup,
    shape: &Partition,
    parameters: Parameters,
) -> braidimg::Result<FormsReport> {
    let (ctx, alpha) = (&setup.ctx, setup.alpha);
    let rep = HeckeRep::new(ctx, shape, alpha)?;
    let spec = bilinear_pairing(ctx, shape, alpha);
    let gens = if shape.is_self_conjugate() {
        rep.generators().to_vec()
    } else {
        pair_generators(&rep, &HeckeRep::new(ctx, &shape.transpose(), alpha)?)?
    };
    let pairing = PairingRecord {
        kind: spec.kind,
        symmetry: spec.symmetry(ctx),
        nondegenerate: spec.is_nondegenerate(ctx),
        equivariant: check_form_equivariance(ctx, &gens, &spec)?,
        gram: csv_rows(ctx, &spec.gram(ctx)),
    };
    let mut ok = pairing.equivariant && pairing.nondegenerate;
    let hermitian = match hermitian_form(ctx, shape, alpha) {
        Ok(d) => {
            let equivariant = check_form_equivariance(ctx, rep.generators(), &d)?;
            ok &= equivariant;
            Some(PairingRecord {
                kind: d.kind,
                symmetry: d.symmetry(ctx),
                nondegenerate: d.is_nondegenerate(ctx),
                equivariant,
                gram: csv_rows(ctx, &d.gram(ctx)),
            })
        }
        Err(Error::InadmissibleParameter(_) | Error::ConjUndefined(_)) => None,
        Err(e) => return Err(e),
    };
    let duality = match duality_operator(ctx, shape, alpha) {
        Ok(l) => {
            ok &= l.square_holds && l.conjugation_holds;
            Some(DualityRecord {
                square: l.square,
                square_holds: l.square_holds,
                conjugation_holds: l.conjugation_holds,
            })
        }
        Err(Error::SelfConjugateShape) => None,
        Err(e) => return Err(e),
    };
    let (invariant_bilinear, invariant_sesquilinear) = if shape.n() >= 3 {
        let comm = commutator_images(&rep)?;
        let bil = invariant_bilinear_space(ctx, &comm, FEl::ONE)?;
        let ses = if ctx.has_conj() {
            Some(SolutionRecord::new(
                ctx,
                &invariant_sesquilinear_space(ctx, &comm, FEl::ONE)?,
            ))
        } else {
            None
        };
        (Some(SolutionRecord::new(ctx, &bil)), ses)
    } else {
        (None, None)
    };
    Ok(FormsReport {
        schema: SCHEMA,
        command: "forms",
        parameters,
        lambda: shape.clone(),
        dim: rep.dim(),
        pairing,
        hermitian,
        duality,
        invariant_bilinear,
        invariant_sesquilinear,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
    })
}

#[derive(Serialize)]
struct ClassifyReport {
    schema: u32,
    command: &'static str,
    parameters: Parameters,
    partition_order: &'static str,
    records: Vec<ClassRecord>,
    verdict: Verdict,
}

pub(crate) fn classify(args: &ClassifyArgs) -> Outcome {
    let setup = match args.shape.field.setup() {
        Ok(s) => s,
        Err(e) => return Outcome::usage(e),
    };
    let n = args.shape.n;
    let params = Parameters::new(n, &setup, Some(args.seed));
    let shapes = match &args.shape.lambda {
        Some(_) => match args.shape.shape() {
            Ok(s) => vec![s],
            Err(e) => return Outcome::usage(e),
        },
        None => {
            let mut v = non_hooks(n);
            v.extend(Partition::lambda_zero(n));
            v
        }
    };
    let budget = TraceBudget {
        seed: args.seed,
        ..TraceBudget::default()
    };
    let mut records = Vec::new();
    for shape in &shapes {
        let rec = HeckeRep::new(&setup.ctx, shape, setup.alpha)
            .and_then(|rep| classify_shape(&setup.ctx, &rep, budget));
        match rec {
            Ok(r) => records.push(r),
            Err(e) => return refuse("classify", Some(params), &e),
        }
    }
    let consistent = records.iter().all(|r| {
        r.burnside_dim == r.dim * r.dim && r.trace_field_degree == r.expected_trace_field_degree
    });
    let verdict = if consistent {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let report = ClassifyReport {
        schema: SCHEMA,
        command: "classify",
        parameters: params,
        partition_order: "reverse-lexicographic",
        records,
        verdict,
    };
    Outcome::json(&report, verdict.exit_code())
}

#[derive(Serialize)]
struct EnumerateReport {
    schema: u32,
    command: &'static str,
    parameters: Parameters,
    lambda: Partition,
    predicted: String,
    predicted_order: String,
    closure: ClosureResult,
    certificate: Certificate,
}

pub(crate) fn enumerate(args: &EnumerateArgs) -> Outcome {
    let (setup, shape) = match prepare(&args.shape) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let params = Parameters::new(shape.n(), &setup, None);
    let run = || -> braidimg::Result<EnumerateReport> {
        let predicted = predicted_group(&setup.ctx, &shape, setup.alpha)?;
        let rep = HeckeRep::new(&setup.ctx, &shape, setup.alpha)?;
        let closure = bfs_closure(&setup.ctx, &commutator_images(&rep)?, args.cap)?;
        let certificate = certify_order(&closure, &predicted);
        Ok(EnumerateReport {
            schema: SCHEMA,
            command: "enumerate",
            parameters: params.clone(),
            lambda: shape.clone(),
            predicted: predicted.to_string(),
            predicted_order: predicted.order.to_string(),
            closure,
            certificate,
        })
    };
    match run() {
        Ok(r) => {
            let code = if r.certificate == Certificate::Match {
                EXIT_PASS
            } else {
                EXIT_MISMATCH
            };
            Outcome::json(&r, code)
        }
        Err(e) => refuse("enumerate", Some(params), &e),
    }
}

#[derive(Serialize)]
struct DescendReport {
    schema: u32,
    command: &'static str,
    parameters: Parameters,
    lambda: Partition,
    subfield: String,
    input_symmetry: Symmetry,
    symmetry: Symmetry,
    /// The scalar `λ` in `λ W^S + λ̄ W̄^S`.
    scalar: String,
    conjugator: String,
    generators: Vec<String>,
    form: String,
    verdict: Verdict,
}

pub(crate) fn descend(args: &DescendArgs) -> Outcome {
    let (setup, shape) = match prepare(&args.shape) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let ctx = &setup.ctx;
    let params = Parameters::new(shape.n(), &setup, Some(args.seed));
    let run = || -> braidimg::Result<DescendReport> {
        let rep = HeckeRep::new(ctx, &shape, setup.alpha)?;
        let gens = commutator_images(&rep)?;
        let sol = invariant_bilinear_space(ctx, &gens, FEl::ONE)?;
        let w: Mat = sol.basis.first().cloned().ok_or(Error::Degenerate)?;
        let d = hilbert90_descent(ctx, &gens, &w, args.seed)?;
        let sub = &d.subfield;
        let preserved = d
            .gens
            .iter()
            .all(|g| sub.mat_mul(&sub.mat_mul(&g.transpose(), &d.form), g) == d.form);
        let ok = preserved && d.symmetry == sol.overall();
        Ok(DescendReport {
            schema: SCHEMA,
            command: "descend",
            parameters: params.clone(),
            lambda: shape.clone(),
            subfield: sub.spec().to_string(),
            input_symmetry: sol.overall(),
            symmetry: d.symmetry,
            scalar: ctx.format(d.lambda),
            conjugator: csv_rows(ctx, &d.conjugator),
            generators: d.gens.iter().map(|g| csv_rows(sub, g)).collect(),
            form: csv_rows(sub, &d.form),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        })
    };
    match run() {
        Ok(r) => Outcome::json(&r, r.verdict.exit_code()),
        Err(e) => refuse("descend", Some(params), &e),
    }
}
