//! Theorem verification suites: seeded instance streams whose hypotheses are
//! re-checked before the conclusion is tested. A hypothesis failure causes a
//! resample inside the generator, never a vacuous pass; a
//! hypothesis-satisfying instance violating its conclusion is recorded as a
//! failure with a re-feedable payload.

use crate::generate::{self, GenError};
use crate::hilbert;
use crate::io;
use crate::linalg;
use crate::operator::{
    adjoint, bj_orthogonal, classify_linf3_case, norm_attainment_ext, operator_smoothness,
    CaseLabel,
};
use crate::oracle;
use crate::space::{Field, Scope, Space};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremId {
    Adjoint,
    SumRule,
    MrRule,
    Linf3Cases,
    Extreme,
    HilbertReal,
    HilbertComplex,
    BjHilbert,
    BjPolyhedral,
    Independence,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::Adjoint,
        TheoremId::SumRule,
        TheoremId::MrRule,
        TheoremId::Linf3Cases,
        TheoremId::Extreme,
        TheoremId::HilbertReal,
        TheoremId::HilbertComplex,
        TheoremId::BjHilbert,
        TheoremId::BjPolyhedral,
        TheoremId::Independence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Adjoint => "adjoint",
            TheoremId::SumRule => "sum-rule",
            TheoremId::MrRule => "mr-rule",
            TheoremId::Linf3Cases => "linf3-cases",
            TheoremId::Extreme => "extreme",
            TheoremId::HilbertReal => "hilbert-real",
            TheoremId::HilbertComplex => "hilbert-complex",
            TheoremId::BjHilbert => "bj-hilbert",
            TheoremId::BjPolyhedral => "bj-polyhedral",
            TheoremId::Independence => "independence",
        }
    }
}

impl std::str::FromStr for TheoremId {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| VerifyError::UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub seed: u64,
    pub message: String,
    /// Full instance payload, valid as CLI input where the instance is an
    /// operator file.
    pub payload: Value,
}

#[derive(Debug)]
pub struct VerificationReport {
    pub theorem_id: TheoremId,
    pub seeds_run: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    pub wall_time: Duration,
    /// Per-label (or per-bucket) instance counts, where the suite has a
    /// meaningful partition.
    pub histogram: BTreeMap<String, usize>,
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "theorem_id": self.theorem_id.name(),
            "seeds_run": self.seeds_run,
            "passes": self.passes,
            "failures": self.failures.iter().map(|f| json!({
                "seed": f.seed,
                "message": f.message,
                "payload": f.payload,
            })).collect::<Vec<_>>(),
            "wall_time_ms": self.wall_time.as_millis() as u64,
            "histogram": self.histogram,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "theorem {}: {}/{} passed in {:.2?}",
            self.theorem_id.name(),
            self.passes,
            self.seeds_run,
            self.wall_time
        )
        .unwrap();
        if !self.histogram.is_empty() {
            let parts: Vec<String> = self
                .histogram
                .iter()
                .map(|(k, v)| format!("{k}: {v}"))
                .collect();
            writeln!(s, "  histogram: {}", parts.join(", ")).unwrap();
        }
        for f in &self.failures {
            writeln!(s, "  FAIL seed {}: {}", f.seed, f.message).unwrap();
            writeln!(s, "    payload: {}", f.payload).unwrap();
        }
        s
    }
}

/// Outcome of one seeded instance: pass/fail plus an optional histogram
/// bucket.
struct Outcome {
    ok: bool,
    message: String,
    payload: Value,
    bucket: Option<String>,
}

fn ok(bucket: Option<String>) -> Outcome {
    Outcome {
        ok: true,
        message: String::new(),
        payload: Value::Null,
        bucket,
    }
}

fn fail(message: String, payload: Value, bucket: Option<String>) -> Outcome {
    Outcome {
        ok: false,
        message,
        payload,
        bucket,
    }
}

fn gen_fail(e: &GenError) -> Outcome {
    fail(format!("generator exhausted: {e}"), Value::Null, None)
}

pub fn verify_theorem(id: TheoremId, seeds: usize, seed0: u64) -> VerificationReport {
    let start = Instant::now();
    let scope = Scope::default();
    let mut passes = 0;
    let mut failures = Vec::new();
    let mut histogram = BTreeMap::new();
    for i in 0..seeds {
        let seed = seed0.wrapping_add(i as u64);
        let outcome = run_one(id, seed, &scope);
        if let Some(b) = &outcome.bucket {
            *histogram.entry(b.clone()).or_insert(0) += 1;
        }
        if outcome.ok {
            passes += 1;
        } else {
            failures.push(Failure {
                seed,
                message: outcome.message,
                payload: outcome.payload,
            });
        }
    }
    VerificationReport {
        theorem_id: id,
        seeds_run: seeds,
        passes,
        failures,
        wall_time: start.elapsed(),
        histogram,
    }
}

fn run_one(id: TheoremId, seed: u64, scope: &Scope) -> Outcome {
    match id {
        TheoremId::Adjoint => adjoint_case(seed, scope),
        TheoremId::SumRule => sum_rule_case(seed, scope),
        TheoremId::MrRule => mr_rule_case(seed, scope),
        TheoremId::Linf3Cases => linf3_case(seed, scope),
        TheoremId::Extreme => extreme_case(seed, scope),
        TheoremId::HilbertReal => hilbert_case(seed, Field::Real),
        TheoremId::HilbertComplex => hilbert_case(seed, Field::Complex),
        TheoremId::BjHilbert => bj_hilbert_case(seed),
        TheoremId::BjPolyhedral => bj_polyhedral_case(seed, scope),
        TheoremId::Independence => independence_case(seed),
    }
}

/// order(T) = order(T*) for random rational operators between random
/// polyhedral spaces.
fn adjoint_case(seed: u64, scope: &Scope) -> Outcome {
    let g = match generate::random_polyhedral_operator(seed, 2..=4, scope) {
        Ok(g) => g,
        Err(e) => return gen_fail(&e),
    };
    let t = g.value;
    let payload = io::operator_to_json(&t);
    let t_star = match adjoint(&t, scope) {
        Ok(a) => a,
        Err(e) => return fail(format!("adjoint failed: {e}"), payload, None),
    };
    let k = match operator_smoothness(&t) {
        Ok(r) => r.order,
        Err(e) => return fail(format!("smoothness failed: {e}"), payload, None),
    };
    let k_star = match operator_smoothness(&t_star) {
        Ok(r) => r.order,
        Err(e) => return fail(format!("adjoint smoothness failed: {e}"), payload, None),
    };
    if k == k_star {
        ok(Some(format!("order {k}")))
    } else {
        fail(
            format!("order(T) = {k} but order(T*) = {k_star}"),
            payload,
            None,
        )
    }
}

/// Σ mᵢ = k when the attainment set is ±{x₁..x_r} with independent xᵢ.
fn sum_rule_case(seed: u64, scope: &Scope) -> Outcome {
    // alternate the all-corner zonogon family with the flattened-vertex
    // variant so both m=2 and mixed m∈{1,2} hypotheses occur
    let g = if seed % 2 == 0 {
        generate::linf3_case_instance(seed, CaseLabel::Reduced, scope)
    } else {
        generate::zonogon_with_flat_vertex(seed, scope)
    };
    let t = match g {
        Ok(g) => g.value,
        Err(e) => return gen_fail(&e),
    };
    let payload = io::operator_to_json(&t);
    let att = match norm_attainment_ext(&t) {
        Ok(a) => a,
        Err(e) => return fail(format!("attainment failed: {e}"), payload, None),
    };
    let reps: Vec<_> = att
        .attaining_vertices
        .iter()
        .filter(|v| linalg::lex_positive(v))
        .cloned()
        .collect();
    // hypothesis: independent attaining representatives
    if linalg::rank(&reps) != reps.len() {
        return fail("hypothesis violated: dependent attainers".into(), payload, None);
    }
    let cod = match &t.codomain {
        Space::Polyhedral(p) => p,
        _ => return fail("unexpected codomain".into(), payload, None),
    };
    let mut predicted = 0usize;
    for x in &reps {
        match cod.point_smoothness(&t.apply(x)) {
            Ok(m) => predicted += m,
            Err(e) => return fail(format!("point smoothness failed: {e}"), payload, None),
        }
    }
    let order = match operator_smoothness(&t) {
        Ok(r) => r.order,
        Err(e) => return fail(format!("smoothness failed: {e}"), payload, None),
    };
    if order == predicted {
        ok(Some(format!("k {order}")))
    } else {
        fail(
            format!("sum rule predicts {predicted}, computed order {order}"),
            payload,
            None,
        )
    }
}

/// k = m·r when the attainment set spans {x₁..x_r} (independent), every
/// attaining vertex lies in their span, and every image has full point
/// smoothness m = dim(Y).
fn mr_rule_case(seed: u64, scope: &Scope) -> Outcome {
    let t = match generate::mr_rule_instance(seed, scope) {
        Ok(g) => g.value,
        Err(e) => return gen_fail(&e),
    };
    let payload = io::operator_to_json(&t);
    let att = match norm_attainment_ext(&t) {
        Ok(a) => a,
        Err(e) => return fail(format!("attainment failed: {e}"), payload, None),
    };
    let reps: Vec<_> = att
        .attaining_vertices
        .iter()
        .filter(|v| linalg::lex_positive(v))
        .cloned()
        .collect();
    let r = linalg::rank(&reps);
    let cod = match &t.codomain {
        Space::Polyhedral(p) => p,
        _ => return fail("unexpected codomain".into(), payload, None),
    };
    let m = cod.dim();
    // hypothesis: a maximal independent subset spans all attainers, and all
    // images have point smoothness m
    let basis: Vec<_> = linalg::independent_subset(&reps)
        .into_iter()
        .map(|i| reps[i].clone())
        .collect();
    for x in &reps {
        let mut probe = basis.clone();
        probe.push(x.clone());
        if linalg::rank(&probe) != r {
            return fail("hypothesis violated: attainer outside span".into(), payload, None);
        }
        match cod.point_smoothness(&t.apply(x)) {
            Ok(pm) if pm == m => {}
            Ok(pm) => {
                return fail(
                    format!("hypothesis violated: image smoothness {pm} ≠ {m}"),
                    payload,
                    None,
                )
            }
            Err(e) => return fail(format!("point smoothness failed: {e}"), payload, None),
        }
    }
    let order = match operator_smoothness(&t) {
        Ok(rep) => rep.order,
        Err(e) => return fail(format!("smoothness failed: {e}"), payload, None),
    };
    if order == m * r {
        ok(Some(format!("m {m} r {r}")))
    } else {
        fail(
            format!("mr rule predicts {}, computed order {order}", m * r),
            payload,
            None,
        )
    }
}

/// Classifier prediction = rank-computed order across all five ℓ∞³ labels.
fn linf3_case(seed: u64, scope: &Scope) -> Outcome {
    let label = match seed % 5 {
        0 => CaseLabel::IA,
        1 => CaseLabel::IB,
        2 => CaseLabel::II,
        3 => CaseLabel::III,
        _ => CaseLabel::IV,
    };
    let t = match generate::linf3_case_instance(seed, label, scope) {
        Ok(g) => g.value,
        Err(e) => return gen_fail(&e),
    };
    let payload = io::operator_to_json(&t);
    let report = match classify_linf3_case(&t) {
        Ok(r) => r,
        Err(e) => return fail(format!("classification failed: {e}"), payload, None),
    };
    let info = report.case.expect("classifier always labels in-scope input");
    let bucket = Some(info.label.to_string());
    let brute = match oracle::brute_rank_oracle(&t) {
        Ok(k) => k,
        Err(e) => return fail(format!("rank oracle failed: {e}"), payload, bucket),
    };
    if info.consistent && info.predicted_order == report.order && report.order == brute {
        ok(bucket)
    } else {
        fail(
            format!(
                "label {} predicts {}, rank pipeline {}, oracle {brute}",
                info.label, info.predicted_order, report.order
            ),
            payload,
            bucket,
        )
    }
}

/// Three-way agreement: LP feasibility = vertex-image criterion = (order 6).
fn extreme_case(seed: u64, scope: &Scope) -> Outcome {
    let t = match generate::extreme_instance(seed, scope) {
        Ok(g) => g.value,
        Err(e) => return gen_fail(&e),
    };
    let payload = io::operator_to_json(&t);
    let lp = match oracle::extreme_contraction_lp(&t) {
        Ok(b) => b,
        Err(e) => return fail(format!("LP oracle failed: {e}"), payload, None),
    };
    // the criterion call itself asserts agreement with order = 6
    let criterion = match oracle::extreme_contraction_smoothness(&t) {
        Ok(b) => b,
        Err(e) => return fail(format!("criterion failed: {e}"), payload, None),
    };
    let bucket = Some(if lp { "extreme" } else { "not-extreme" }.to_string());
    if lp == criterion {
        ok(bucket)
    } else {
        fail(
            format!("LP says {lp}, vertex-image criterion says {criterion}"),
            payload,
            bucket,
        )
    }
}

/// Planted multiplicity n in dimension 6: order n(n+1)/2 (real) or n²
/// (complex), cross-checked by the sampled rank oracle.
fn hilbert_case(seed: u64, field: Field) -> Outcome {
    let mult = (seed % 4 + 1) as usize;
    let t = generate::planted_hilbert(seed, 6, mult, field);
    let payload = json!({"planted_multiplicity": mult, "dim": 6});
    let order = match hilbert::hilbert_smoothness(&t, 1e-8) {
        Ok(k) => k,
        Err(e) => return fail(format!("smoothness failed: {e}"), payload, None),
    };
    let expected = match field {
        Field::Real => mult * (mult + 1) / 2,
        Field::Complex => mult * mult,
    };
    let sampled = match hilbert::sampled_rank_oracle(&t, 1e-8, 0, seed) {
        Ok(k) => k,
        Err(e) => return fail(format!("sampled oracle failed: {e}"), payload, None),
    };
    let bucket = Some(format!("n {mult}"));
    if order == expected && sampled == expected {
        ok(bucket)
    } else {
        fail(
            format!("expected {expected}, formula gave {order}, sampled rank {sampled}"),
            payload,
            bucket,
        )
    }
}

/// Numerical-range orthogonality test vs the convex line-search oracle.
fn bj_hilbert_case(seed: u64) -> Outcome {
    let field = if seed % 2 == 0 { Field::Real } else { Field::Complex };
    let (t, a) = match generate::hilbert_bj_pair(seed, 4, field, 1e-5) {
        Ok(g) => g.value,
        Err(e) => return gen_fail(&e),
    };
    let payload = json!({"seed": seed, "field": format!("{field:?}")});
    let range_test = match hilbert::bj_orthogonal_hilbert(&t, &a, 1e-8) {
        Ok(b) => b,
        Err(e) => return fail(format!("range test failed: {e}"), payload, None),
    };
    let oracle_test = match oracle::bj_line_search_oracle(&t, &a, 1e-7) {
        Ok(b) => b,
        Err(e) => return fail(format!("line search failed: {e}"), payload, None),
    };
    let bucket = Some(if range_test { "orthogonal" } else { "not-orthogonal" }.to_string());
    if range_test == oracle_test {
        ok(bucket)
    } else {
        fail(
            format!("range test {range_test}, line-search oracle {oracle_test}"),
            payload,
            bucket,
        )
    }
}

/// Exact directional-derivative test vs exact breakpoint enumeration.
fn bj_polyhedral_case(seed: u64, scope: &Scope) -> Outcome {
    let (t, a) = match generate::bj_polyhedral_pair(seed, scope) {
        Ok(g) => g.value,
        Err(e) => return gen_fail(&e),
    };
    let payload = json!({
        "op": io::operator_to_json(&t),
        "other": io::operator_to_json(&a),
    });
    let sign_test = match bj_orthogonal(&t, &a) {
        Ok(b) => b,
        Err(e) => return fail(format!("sign test failed: {e}"), payload, None),
    };
    let enum_test = match oracle::bj_breakpoint_oracle(&t, &a) {
        Ok(b) => b,
        Err(e) => return fail(format!("breakpoint oracle failed: {e}"), payload, None),
    };
    let bucket = Some(if sign_test { "orthogonal" } else { "not-orthogonal" }.to_string());
    if sign_test == enum_test {
        ok(bucket)
    } else {
        fail(
            format!("sign test {sign_test}, breakpoint enumeration {enum_test}"),
            payload,
            bucket,
        )
    }
}

/// rank{yⱼ ⊗ xᵢ} = (#x)(#y) for independent sets.
fn independence_case(seed: u64) -> Outcome {
    let (xs, ys) = match generate::independence_instance(seed) {
        Ok(g) => g.value,
        Err(e) => return gen_fail(&e),
    };
    let payload = json!({
        "xs": xs.iter().map(|v| v.iter().map(crate::scalar::rat_to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "ys": ys.iter().map(|v| v.iter().map(crate::scalar::rat_to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    let rows: Vec<_> = ys
        .iter()
        .flat_map(|y| xs.iter().map(|x| linalg::outer_flatten(y, x)))
        .collect();
    let expected = xs.len() * ys.len();
    let got = linalg::rank(&rows);
    let bucket = Some(format!("{}x{}", xs.len(), ys.len()));
    if got == expected {
        ok(bucket)
    } else {
        fail(
            format!("rank {got} ≠ {} · {}", xs.len(), ys.len()),
            payload,
            bucket,
        )
    }
}
