use braidimg::braid::{normal_closure_witness, verify_gorin_lin_relations};
use braidimg::classify::{
    classify_shape, commutator_images, hilbert90_descent, invariant_bilinear_space,
    predicted_group, Case, ClassRecord, Symmetry, TraceBudget, EXCLUDED_ORDERS,
};
use braidimg::engine::{bfs_closure, certify_order, Certificate, ClosureResult};
use braidimg::gf::{FieldCtx, FieldSpec};
use braidimg::hecke::{
    bilinear_pairing, character_twist, check_form_equivariance, duality_operator,
    exterior_power_compare, exterior_power_generators, hermitian_form, pair_generators,
};
use braidimg::young::{partitions_of, Partition};
use braidimg::{FEl, HeckeRep, Mat};
use serde::Serialize;

use crate::report::{Check, Status, Verdict};
use crate::{FieldArgs, Outcome, Parameters, Setup, VerifyArgs, SCHEMA};

/// Closures predicted to be larger than this run only with `heavy`.
pub const HEAVY_THRESHOLD: u64 = 1_000_000;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub n: usize,
    pub field: FieldSpec,
    pub alpha_order: Option<u64>,
    pub cap: u64,
    pub heavy: bool,
    pub seed: u64,
}

impl From<&VerifyArgs> for VerifyOptions {
    fn from(a: &VerifyArgs) -> Self {
        VerifyOptions {
            n: a.n,
            field: a.field.field.clone(),
            alpha_order: a.field.alpha_order,
            cap: a.cap,
            heavy: a.heavy,
            seed: a.seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    /// A non-hook shape.
    NonHook,
    /// The hook `[n-1, 1]`.
    LambdaZero,
    Hook,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureReport {
    /// Which generators were closed: the commutator images or their descent.
    pub generators: &'static str,
    pub predicted: String,
    pub result: ClosureResult,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShapeReport {
    pub lambda: Partition,
    #[serde(rename = "N")]
    pub dim: usize,
    pub role: Role,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub closures: Vec<ClosureReport>,
    /// Computed facts that contradict a published reading, reported without failing.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub discrepancies: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyOptionsRecord {
    pub enumerate_cap: u64,
    pub heavy: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameters: Option<Parameters>,
    pub options: VerifyOptionsRecord,
    pub partition_order: &'static str,
    pub shapes: Vec<ShapeReport>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refusal: Option<String>,
}

impl VerifyReport {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.shapes.iter().flat_map(|s| &s.checks)
    }

    pub fn shape(&self, parts: &[usize]) -> Option<&ShapeReport> {
        self.shapes.iter().find(|s| s.lambda.parts() == parts)
    }
}

pub(crate) fn run(args: &VerifyArgs) -> Outcome {
    let report = cmd_verify(&VerifyOptions::from(args));
    let mut out = Outcome::json(&report, report.verdict.exit_code());
    if let Some(r) = &report.refusal {
        out.stderr = format!("verify: {r}");
    }
    out
}

/// Runs the full check list for every `λ ⊢ n` with `N ≥ 2`.
pub fn cmd_verify(opts: &VerifyOptions) -> VerifyReport {
    let mut report = VerifyReport {
        schema: SCHEMA,
        command: "verify",
        parameters: None,
        options: VerifyOptionsRecord {
            enumerate_cap: opts.cap,
            heavy: opts.heavy,
        },
        partition_order: "reverse-lexicographic",
        shapes: Vec::new(),
        verdict: Verdict::Refused,
        refusal: None,
    };
    if let Some(ord) = opts.alpha_order {
        if let Err(why) = order_gate(ord, opts.n) {
            report.refusal = Some(why);
            return report;
        }
    }
    let field = FieldArgs {
        field: opts.field.clone(),
        alpha_order: opts.alpha_order,
    };
    let setup = match field.setup() {
        Ok(s) => s,
        Err(e) => {
            report.refusal = Some(e);
            return report;
        }
    };
    report.parameters = Some(Parameters::new(opts.n, &setup, Some(opts.seed)));
    if let Err(why) = admissible(&setup, opts.n) {
        report.refusal = Some(why);
        return report;
    }
    for shape in partitions_of(opts.n) {
        if shape.dimension() < 2 {
            continue;
        }
        report.shapes.push(verify_shape(&setup, &shape, opts));
    }
    report.verdict = Verdict::of(report.checks());
    report
}

fn order_gate(ord: u64, n: usize) -> Result<(), String> {
    if ord <= n as u64 {
        return Err(format!("α has order {ord}, which must exceed n = {n}"));
    }
    if EXCLUDED_ORDERS.contains(&ord) {
        return Err(format!(
            "α has order {ord}, which is excluded ({EXCLUDED_ORDERS:?})"
        ));
    }
    Ok(())
}

fn admissible(setup: &Setup, n: usize) -> Result<(), String> {
    order_gate(setup.alpha_order, n)?;
    braidimg::classify::classify_case(&setup.ctx, setup.alpha)
        .map(|_| ())
        .map_err(|e| e.to_string())
}

fn role(shape: &Partition) -> Role {
    let n = shape.n();
    if !shape.is_hook() {
        Role::NonHook
    } else if shape.parts() == [n - 1, 1] {
        Role::LambdaZero
    } else {
        Role::Hook
    }
}

fn verify_shape(setup: &Setup, shape: &Partition, opts: &VerifyOptions) -> ShapeReport {
    let (ctx, alpha) = (&setup.ctx, setup.alpha);
    let mut out = ShapeReport {
        lambda: shape.clone(),
        dim: shape.dimension() as usize,
        role: role(shape),
        checks: Vec::new(),
        classification: None,
        closures: Vec::new(),
        discrepancies: Vec::new(),
    };
    let rep = match HeckeRep::new(ctx, shape, alpha) {
        Ok(r) => r,
        Err(e) => {
            out.checks.push(Check::new(
                "representation",
                Status::Error,
                Some(e.to_string()),
            ));
            return out;
        }
    };
    let n = shape.n();
    let checks = &mut out.checks;
    checks.push(Check::from_bool(
        "quadratic-relation",
        rep.quadratic_relation_holds(),
    ));
    checks.push(Check::from_bool(
        "braid-relations",
        rep.braid_relations_hold(),
    ));
    checks.push(Check::from_bool(
        "distant-commutation",
        rep.distant_commutation_holds(),
    ));
    checks.push(Check::from_result(
        "bilinear-equivariance",
        bilinear_equivariance(ctx, &rep),
    ));
    let unitary = ctx.has_conj() && ctx.conj(alpha).ok() == ctx.inv(alpha).ok();
    if unitary {
        let r = hermitian_form(ctx, shape, alpha)
            .and_then(|d| check_form_equivariance(ctx, rep.generators(), &d));
        checks.push(Check::from_result("hermitian-invariance", r));
    }
    if !shape.is_self_conjugate() {
        let r = duality_operator(ctx, shape, alpha).map(|l| l.square_holds && l.conjugation_holds);
        checks.push(Check::from_result("duality-operator", r));
    }
    if n >= 4 {
        let r = verify_gorin_lin_relations(n, |w| rep.eval(w)).map(|g| g.all_hold());
        checks.push(Check::from_result("gorin-lin-relations", r));
        let r = normal_closure_witness(n).and_then(|(l, r)| Ok(rep.eval(&l)? == rep.eval(&r)?));
        checks.push(Check::from_result("normal-closure-witness", r));
    }
    if out.role != Role::NonHook {
        hook_checks(ctx, &rep, checks);
    }
    if n < 3 {
        return out;
    }
    let gens = match commutator_images(&rep) {
        Ok(g) => g,
        Err(e) => {
            checks.push(Check::new(
                "commutator-images",
                Status::Error,
                Some(e.to_string()),
            ));
            return out;
        }
    };
    let full = out.dim * out.dim;
    checks.push(Check::expect(
        "burnside-span",
        braidimg::classify::burnside_span_dim(ctx, out.dim, &gens),
        full,
    ));
    if out.role != Role::Hook {
        classify_checks(setup, &rep, &gens, opts, &mut out);
    }
    out
}

fn bilinear_equivariance(ctx: &FieldCtx, rep: &HeckeRep) -> braidimg::Result<bool> {
    let spec = bilinear_pairing(ctx, rep.shape(), rep.alpha());
    if rep.shape().is_self_conjugate() {
        check_form_equivariance(ctx, rep.generators(), &spec)
    } else {
        let dual = HeckeRep::new(ctx, &rep.shape().transpose(), rep.alpha())?;
        check_form_equivariance(ctx, &pair_generators(rep, &dual)?, &spec)
    }
}

fn hook_checks(ctx: &FieldCtx, rep: &HeckeRep, checks: &mut Vec<Check>) {
    let n = rep.n();
    let r = rep.shape().len() - 1;
    if r == 0 || r > n - 2 {
        return;
    }
    checks.push(Check::from_result(
        "exterior-power",
        exterior_power_compare(ctx, n, r, rep.alpha()),
    ));
    if n < 3 {
        return;
    }
    let want = ctx.pow(rep.alpha(), r as u64 - 1);
    let twist = exterior_power_generators(ctx, n, r, rep.alpha())
        .and_then(|ext| character_twist(ctx, rep.generators(), &ext))
        .map(|t| t.eta.iter().all(|&e| e == want));
    checks.push(Check::from_result("character-twist", twist));
}

fn classify_checks(
    setup: &Setup,
    rep: &HeckeRep,
    gens: &[Mat],
    opts: &VerifyOptions,
    out: &mut ShapeReport,
) {
    let ctx = &setup.ctx;
    let budget = TraceBudget {
        seed: opts.seed,
        ..TraceBudget::default()
    };
    let record = match classify_shape(ctx, rep, budget) {
        Ok(r) => r,
        Err(e) => {
            out.checks.push(Check::new(
                "classification",
                Status::Error,
                Some(e.to_string()),
            ));
            return;
        }
    };
    let shape = rep.shape();
    let p = ctx.p();
    if shape.is_self_conjugate() {
        let want = if p == 2 || shape.diag_and_nu().1 == -1 {
            Symmetry::Alternating
        } else {
            Symmetry::Symmetric
        };
        out.checks.push(Check::expect(
            "invariant-bilinear",
            (record.forms.bilinear_dim, record.forms.symmetry),
            (1, want),
        ));
    } else if record.case == Case::Linear {
        out.checks.push(Check::expect(
            "invariant-bilinear",
            record.forms.bilinear_dim,
            0,
        ));
    }
    if let Some(h) = record.forms.hermitian_dim {
        out.checks.push(Check::expect("invariant-hermitian", h, 1));
    }
    if let Some(w) = record.witt_index {
        out.checks
            .push(Check::expect("witt-index", w, record.dim / 2));
        if w != 0 {
            out.discrepancies.push(format!(
                "computed Witt index {w} for {shape}; a reading of Witt index 0 for the symmetric case is contradicted"
            ));
        }
    }
    out.checks.push(Check::expect(
        "trace-field-degree",
        record.trace_field_degree,
        record.expected_trace_field_degree,
    ));

    let predicted = predicted_group(ctx, shape, rep.alpha()).expect("classified above");
    out.closures.extend(closure(
        ctx,
        gens,
        "commutator-images",
        &predicted,
        opts,
        &mut out.checks,
    ));
    if record.case == Case::Unitary && shape.is_self_conjugate() {
        descent_checks(ctx, gens, &predicted, opts, out);
    }
    out.classification = Some(record);
}

/// Closes `gens` when the predicted order fits the cap (and the heavy gate).
fn closure(
    ctx: &FieldCtx,
    gens: &[Mat],
    label: &'static str,
    predicted: &braidimg::classify::PredictedGroup,
    opts: &VerifyOptions,
    checks: &mut Vec<Check>,
) -> Option<ClosureReport> {
    let name = format!("closure-{label}");
    let Ok(order) = u64::try_from(&predicted.order) else {
        checks.push(Check::skipped(
            &name,
            format!("predicted order {} exceeds 64 bits", predicted.order),
        ));
        return None;
    };
    if order > opts.cap {
        checks.push(Check::skipped(
            &name,
            format!("predicted order {order} exceeds the cap {}", opts.cap),
        ));
        return None;
    }
    if order > HEAVY_THRESHOLD && !opts.heavy {
        checks.push(Check::skipped(
            &name,
            format!("predicted order {order} needs --heavy"),
        ));
        return None;
    }
    match bfs_closure(ctx, gens, opts.cap) {
        Ok(result) => {
            let certificate = certify_order(&result, predicted);
            checks.push(Check::new(
                &name,
                if certificate == Certificate::Match {
                    Status::Pass
                } else {
                    Status::Fail
                },
                Some(format!(
                    "{predicted}: predicted {order}, closure {:?}",
                    result.order
                )),
            ));
            Some(ClosureReport {
                generators: label,
                predicted: predicted.to_string(),
                result,
                certificate,
            })
        }
        Err(e) => {
            checks.push(Check::new(&name, Status::Error, Some(e.to_string())));
            None
        }
    }
}

fn descent_checks(
    ctx: &FieldCtx,
    gens: &[Mat],
    predicted: &braidimg::classify::PredictedGroup,
    opts: &VerifyOptions,
    out: &mut ShapeReport,
) {
    let descended = invariant_bilinear_space(ctx, gens, FEl::ONE).and_then(|sol| {
        let w = sol
            .basis
            .first()
            .cloned()
            .ok_or(braidimg::Error::Degenerate)?;
        let d = hilbert90_descent(ctx, gens, &w, opts.seed)?;
        Ok((sol.overall(), d))
    });
    match descended {
        Ok((symmetry, d)) => {
            out.checks
                .push(Check::expect("descent-symmetry", d.symmetry, symmetry));
            let sub = d.subfield.clone();
            out.closures.extend(closure(
                &sub,
                &d.gens,
                "descended",
                predicted,
                opts,
                &mut out.checks,
            ));
        }
        Err(e) => out
            .checks
            .push(Check::new("descent", Status::Error, Some(e.to_string()))),
    }
}
