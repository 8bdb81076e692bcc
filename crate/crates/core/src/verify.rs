//! Seeded verification harness: each registered check exercises one of the
//! structural claims over the built-in corpus and produces a reproducible
//! report.
//!
//! Determinism contract: identical (check id, seed, samples) yield identical
//! reports. Statistical surrogates (C3) are `flagged`, never `fail`, below
//! threshold; a `fail` outcome always carries a concrete counterexample
//! witness with full exact data.

use std::time::Instant;

use serde_json::{json, Value};

use crate::corpus;
use crate::error::{Error, Result};
use crate::group::SequenceKind;
use crate::liealg::LieAlgebra;
use crate::mat::Mat;
use crate::scalar::Scalar;
use crate::seeded::mix;
use crate::subspace::Subspace;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Outcome {
    Pass,
    Fail,
    Flagged,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Flagged => "flagged",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check: String,
    pub seed: u64,
    pub samples: u64,
    pub outcome: Outcome,
    pub witnesses: Vec<Value>,
    pub runtime_ms: u64,
}

pub const CHECK_IDS: [&str; 12] = [
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12",
];

/// Default sample counts per check. Sampling checks draw 200 elements per
/// charted group; C11 interprets samples as base points (32 chart neighbors
/// each); fixed-instance checks ignore the count.
pub fn default_samples(check_id: &str) -> u64 {
    match check_id {
        "C3" | "C4" | "C6" => 200,
        "C5" | "C7" | "C10" => 100,
        "C11" => 16,
        _ => 0,
    }
}

const NEIGHBOR_COUNT: usize = 32;
const REGULAR_FRACTION_THRESHOLD: (u64, u64) = (9, 10);

struct CheckCtx {
    seed: u64,
    samples: u64,
    witnesses: Vec<Value>,
    failures: Vec<Value>,
}

impl CheckCtx {
    fn salt(&self, group_idx: u64) -> u64 {
        mix(group_idx.wrapping_add(0xc0ffee))
    }

    fn witness(&mut self, v: Value) {
        self.witnesses.push(v);
    }

    fn fail(&mut self, v: Value) {
        self.failures.push(v);
    }
}

/// Run one registered check. Unknown ids are an input error.
pub fn run_check(check_id: &str, seed: u64, samples: u64) -> Result<CheckReport> {
    let body: fn(&mut CheckCtx) -> Result<()> = match check_id {
        "C1" => check_c1_equal_cartan_dim,
        "C2" => check_c2_g0_self_normalizing,
        "C3" => check_c3_regular_dense,
        "C4" => check_c4_reg_in_c,
        "C5" => check_c5_unique_cartan,
        "C6" => check_c6_center_sequence,
        "C7" => check_c7_ideal_sequence,
        "C8" => check_c8_hull_rank_formula,
        "C9" => check_c9_root_sum,
        "C10" => check_c10_c_h_two_definitions,
        "C11" => check_c11_local_constancy,
        "C12" => check_c12_nilpotency_transfer,
        _ => return Err(Error::Input(format!("unknown check id {check_id:?}"))),
    };
    let start = Instant::now();
    let mut ctx = CheckCtx {
        seed,
        samples,
        witnesses: Vec::new(),
        failures: Vec::new(),
    };
    body(&mut ctx)?;
    let outcome = if ctx.failures.is_empty() {
        if check_id == "C3" && !ctx.witnesses.iter().all(fraction_ok) {
            Outcome::Flagged
        } else {
            Outcome::Pass
        }
    } else {
        Outcome::Fail
    };
    let samples = ctx.samples;
    let mut witnesses = ctx.failures;
    witnesses.extend(ctx.witnesses);
    Ok(CheckReport {
        check: check_id.to_string(),
        seed,
        samples,
        outcome,
        witnesses,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

fn fraction_ok(w: &Value) -> bool {
    w.get("threshold_met")
        .and_then(Value::as_bool)
        .unwrap_or(true)
}

/// Run every registered check with its default sample count. The aggregate
/// fails iff some check fails; `flagged` does not fail.
pub fn run_all(seed: u64) -> Result<Vec<CheckReport>> {
    CHECK_IDS
        .iter()
        .map(|id| run_check(id, seed, default_samples(id)))
        .collect()
}

pub fn any_failed(reports: &[CheckReport]) -> bool {
    reports.iter().any(|r| r.outcome == Outcome::Fail)
}

fn tuple_str(values: &[Scalar]) -> String {
    let parts: Vec<String> = values.iter().map(Scalar::to_string).collect();
    format!("({})", parts.join(","))
}

/// Subspaces in fail witnesses carry the canonical wire format, so a
/// counterexample can be replayed through the CLI as a "vectors" argument.
fn subspace_rows(s: &Subspace) -> Value {
    crate::json::subspace_to_value(s, crate::json::OutputOpts::default())
}

/// C1: Cartan subalgebras found under many seeds, plus conjugates by
/// sampled group elements, all have one dimension per algebra.
fn check_c1_equal_cartan_dim(ctx: &mut CheckCtx) -> Result<()> {
    for (gi, name) in corpus::NAMES.iter().enumerate() {
        let group = corpus::context(name).unwrap();
        let mut dims = Vec::new();
        let mut cartans = Vec::new();
        for k in 0..10 {
            let h = group.lie().cartan_subalgebra(ctx.seed.wrapping_add(k))?;
            dims.push(h.dim());
            cartans.push(h);
        }
        let first = dims[0];
        if dims.iter().any(|&d| d != first) {
            ctx.fail(json!({
                "algebra": name,
                "dims": dims,
                "reason": "Cartan dimension varies with the seed",
            }));
            continue;
        }
        // conjugates by validated elements are Cartan of the same dimension
        let elems = group.sample_elements(ctx.seed, ctx.salt(gi as u64), 3)?;
        let mut conj_ok = true;
        for g in &elems {
            let ad = group.ad(g)?;
            let rows: Vec<Vec<Scalar>> = cartans[0].basis_rows().map(|r| ad.apply(r)).collect();
            let conj = Subspace::from_span(group.lie().dim(), &rows);
            if conj.dim() != first || !group.lie().is_cartan(&conj) {
                conj_ok = false;
                ctx.fail(json!({
                    "algebra": name,
                    "element": mat_rows(g),
                    "reason": "conjugate of a Cartan is not a Cartan of equal dimension",
                }));
            }
        }
        if conj_ok {
            ctx.witness(json!({ "algebra": name, "dim": first, "seeds": 10 }));
        }
        ctx.samples += 10 + elems.len() as u64;
    }
    Ok(())
}

/// Elements in fail witnesses carry the Mat wire format, so a
/// counterexample can be replayed through the CLI's --element flag.
fn mat_rows(m: &Mat) -> Value {
    crate::json::mat_to_value(m, crate::json::OutputOpts::default())
}

/// Fixed nilpotent subalgebras per corpus algebra, beyond the Cartans.
fn nilpotent_subalgebras(name: &str, dim: usize) -> Vec<Subspace> {
    let sp = |rows: &[&[i64]]| {
        Subspace::from_span(
            dim,
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
    };
    match name {
        "sl2" => vec![sp(&[&[1, 0, 0]]), sp(&[&[0, 1, 0]]), sp(&[&[0, 1, -1]])],
        "gl2" => vec![
            sp(&[&[1, 0, 0, 0], &[0, 0, 0, 1]]),
            sp(&[&[0, 1, 0, 0]]),
            sp(&[&[1, 0, 0, 1]]),
        ],
        "b2" => vec![sp(&[&[1, 0, 0], &[0, 0, 1]]), sp(&[&[0, 1, 0]])],
        "heis3" => vec![Subspace::full(3), sp(&[&[1, 0, 0], &[0, 0, 1]])],
        "torus2" => vec![Subspace::full(2), sp(&[&[1, 0]])],
        _ => vec![],
    }
}

/// C2: `n_g(g^0(h)) = g^0(h)` for every corpus (algebra, nilpotent h) pair.
fn check_c2_g0_self_normalizing(ctx: &mut CheckCtx) -> Result<()> {
    for name in corpus::NAMES {
        let group = corpus::context(name).unwrap();
        let lie = group.lie();
        for (hi, h) in nilpotent_subalgebras(name, lie.dim())
            .into_iter()
            .enumerate()
        {
            let g0 = lie.g0_of(&h)?;
            let norm = lie.normalizer(&g0);
            ctx.samples += 1;
            if norm == g0 {
                ctx.witness(json!({
                    "algebra": name,
                    "h_index": hi,
                    "g0_dim": g0.dim(),
                }));
            } else {
                ctx.fail(json!({
                    "algebra": name,
                    "h_basis": subspace_rows(&h),
                    "g0_basis": subspace_rows(&g0),
                    "normalizer_basis": subspace_rows(&norm),
                    "reason": "g^0(h) is not self-normalizing",
                }));
            }
        }
    }
    Ok(())
}

/// C3: statistical density surrogate; the regular fraction per charted
/// group should reach 9/10. Below threshold the check is flagged, not
/// failed.
fn check_c3_regular_dense(ctx: &mut CheckCtx) -> Result<()> {
    let per_group = ctx.samples.max(1) as usize;
    for (gi, name) in corpus::NAMES.iter().enumerate() {
        let group = corpus::context(name).unwrap();
        let elems = group.sample_elements(ctx.seed, ctx.salt(gi as u64), per_group)?;
        let mut regular = 0u64;
        for g in &elems {
            if group.is_regular(g, ctx.seed)? {
                regular += 1;
            }
        }
        let (num, den) = REGULAR_FRACTION_THRESHOLD;
        let met = regular * den >= num * per_group as u64;
        let (rank, rank_witnessed) = group.group_rank_witnessed(ctx.seed)?;
        ctx.witness(json!({
            "group": name,
            "rank": rank,
            "rank_minimum_witnessed": rank_witnessed,
            "regular": regular,
            "samples": per_group,
            "fraction": format!("{regular}/{per_group}"),
            "threshold_met": met,
        }));
    }
    Ok(())
}

/// C4: every sampled regular g lies in the C-Cartan of its own
/// `g^1(Ad g)`. Samples whose Cartan has no root decomposition over Q(i)
/// fall outside the membership test's precondition and are counted as
/// skipped, not failed.
fn check_c4_reg_in_c(ctx: &mut CheckCtx) -> Result<()> {
    let per_group = ctx.samples.max(1) as usize;
    for (gi, name) in corpus::NAMES.iter().enumerate() {
        let group = corpus::context(name).unwrap();
        let elems = group.sample_elements(ctx.seed, ctx.salt(gi as u64), per_group)?;
        let mut decided = 0u64;
        let mut skipped_nonsplit = 0u64;
        for g in &elems {
            if !group.is_regular(g, ctx.seed)? {
                continue;
            }
            let h = group.g1_of(g)?;
            match group.in_c_h(g, &h, ctx.seed) {
                Ok(true) => decided += 1,
                Ok(false) => ctx.fail(json!({
                    "group": name,
                    "element": mat_rows(g),
                    "g1_basis": subspace_rows(&h),
                    "reason": "regular element outside C(g^1(Ad g))",
                })),
                Err(Error::Split(_)) => skipped_nonsplit += 1,
                Err(e) => return Err(e),
            }
        }
        ctx.witness(json!({
            "group": name,
            "regular_in_c": decided,
            "samples": per_group,
            "skipped_nonsplit": skipped_nonsplit,
        }));
    }
    Ok(())
}

/// C5: a regular element belongs to no other corpus-known Cartan's C-group;
/// when membership does hold the subalgebra coincides with `g^1(Ad g)`
/// (which also witnesses h <= g^1(Ad g)).
fn check_c5_unique_cartan(ctx: &mut CheckCtx) -> Result<()> {
    let per_group = ctx.samples.max(1) as usize;
    for (gi, name) in corpus::NAMES.iter().enumerate() {
        let group = corpus::context(name).unwrap();
        let known = corpus::known_cartans(name);
        let elems = group.sample_elements(ctx.seed, ctx.salt(gi as u64), per_group)?;
        let mut checked_pairs = 0u64;
        for g in &elems {
            if !group.is_regular(g, ctx.seed)? {
                continue;
            }
            let g1 = group.g1_of(g)?;
            for h in &known {
                checked_pairs += 1;
                let member = group.in_c_h(g, h, ctx.seed)?;
                if member {
                    // uniqueness: membership forces h = g^1(Ad g); the
                    // containment h <= g^1 plus equal dimensions gives it
                    if !g1.contains(h) || h != &g1 {
                        ctx.fail(json!({
                            "group": name,
                            "element": mat_rows(g),
                            "h_basis": subspace_rows(h),
                            "g1_basis": subspace_rows(&g1),
                            "reason": "element in C(h) for a Cartan other than g^1(Ad g)",
                        }));
                    }
                } else if h == &g1 {
                    ctx.fail(json!({
                        "group": name,
                        "element": mat_rows(g),
                        "reason": "regular element missing from the C-group of its own Cartan",
                    }));
                }
            }
        }
        ctx.witness(json!({ "group": name, "pairs": checked_pairs }));
    }
    Ok(())
}

/// C6: dimension additivity through the centre on GL2 and Heisenberg
/// samples.
fn check_c6_center_sequence(ctx: &mut CheckCtx) -> Result<()> {
    let per_group = ctx.samples.max(1) as usize;
    for (gi, name) in ["gl2", "heis3"].iter().enumerate() {
        let group = corpus::context(name).unwrap();
        let elems = group.sample_elements(ctx.seed, ctx.salt(gi as u64 + 0x600), per_group)?;
        let mut dims_seen = Vec::new();
        for g in &elems {
            match group.sequence_dims(&SequenceKind::Center, g) {
                Ok((k, t, q)) => {
                    if dims_seen.len() < 3 {
                        dims_seen.push(vec![k, t, q]);
                    }
                }
                Err(e) => ctx.fail(json!({
                    "group": name,
                    "element": mat_rows(g),
                    "error": e.to_string(),
                })),
            }
        }
        ctx.witness(json!({
            "group": name,
            "samples": per_group,
            "example_dims": dims_seen,
        }));
    }
    Ok(())
}

/// C7: dimension additivity for the unipotent ideal, on b2 and the Borel of
/// SL2, for elements of the corresponding normal subgroup; includes the
/// hand-derived (1, 2, 1) instance.
fn check_c7_ideal_sequence(ctx: &mut CheckCtx) -> Result<()> {
    let per_group = ctx.samples.max(1) as usize;

    let unipotent = |t: Scalar| {
        Mat::from_rows(vec![
            vec![Scalar::one(), t],
            vec![Scalar::zero(), Scalar::one()],
        ])
    };

    // hand-derived instance: Borel of SL2, n = span{E}, g = u
    let borel = corpus::borel_sl2();
    let n_ideal = Subspace::from_span(2, &[vec![Scalar::zero(), Scalar::one()]]);
    let dims = borel.sequence_dims(
        &SequenceKind::Ideal(n_ideal.clone()),
        &unipotent(Scalar::one()),
    )?;
    if dims != (1, 2, 1) {
        ctx.fail(json!({
            "group": "borel_sl2",
            "dims": vec![dims.0, dims.1, dims.2],
            "reason": "hand-derived instance expected (1, 2, 1)",
        }));
    } else {
        ctx.witness(json!({ "group": "borel_sl2", "dims": [1, 2, 1] }));
    }

    // sampled unipotent elements in both groups
    let b2 = corpus::context("b2").unwrap();
    let b2_ideal = Subspace::from_span(3, &[vec![Scalar::zero(), Scalar::one(), Scalar::zero()]]);
    let mut rng = crate::seeded::rng(ctx.seed, ctx.salt(0x700));
    use rand::Rng;
    for _ in 0..per_group {
        let t = Scalar::from_ratio(rng.gen_range(-8..=8), 1 << rng.gen_range(0..=2));
        let u = unipotent(t);
        for (gname, group, ideal) in [("borel_sl2", &borel, &n_ideal), ("b2", &b2, &b2_ideal)] {
            match group.sequence_dims(&SequenceKind::Ideal((*ideal).clone()), &u) {
                Ok((k, t_, q)) => {
                    if k + q != t_ {
                        ctx.fail(json!({
                            "group": gname,
                            "element": mat_rows(&u),
                            "dims": vec![k, t_, q],
                        }));
                    }
                }
                Err(e) => ctx.fail(json!({
                    "group": gname,
                    "element": mat_rows(&u),
                    "error": e.to_string(),
                })),
            }
        }
    }
    ctx.witness(json!({ "sampled_unipotents": per_group, "groups": ["borel_sl2", "b2"] }));
    Ok(())
}

/// C8: `rk g1 = rk g + dim g1 - dim g` on single-generator hulls.
fn check_c8_hull_rank_formula(ctx: &mut CheckCtx) -> Result<()> {
    let instances: Vec<(&str, Mat)> = vec![
        ("unipotent", Mat::from_ints(&[&[1, 1], &[0, 1]])),
        ("nilpotent", Mat::from_ints(&[&[0, 1], &[0, 0]])),
        ("diag(1,2)", Mat::from_ints(&[&[1, 0], &[0, 2]])),
        ("rotation", Mat::from_ints(&[&[0, 1], &[-1, 0]])),
        (
            "diag(2,1/2)",
            Mat::from_rows(vec![
                vec![Scalar::from_int(2), Scalar::zero()],
                vec![Scalar::zero(), Scalar::from_ratio(1, 2)],
            ]),
        ),
    ];
    for (label, x) in instances {
        ctx.samples += 1;
        let g = LieAlgebra::from_matrices(2, std::slice::from_ref(&x))?;
        let hull = crate::liealg::algebraic_hull_single(2, &x)?;
        let g1 =
            LieAlgebra::from_basis(2, hull.basis_rows().map(|r| Mat::unflatten(2, r)).collect())?;
        let (rk_g, rk_g1) = (g.rank(ctx.seed)?, g1.rank(ctx.seed)?);
        if rk_g1 != rk_g + g1.dim() - g.dim() {
            ctx.fail(json!({
                "instance": label,
                "rk_g": rk_g,
                "dim_g": g.dim(),
                "rk_g1": rk_g1,
                "dim_g1": g1.dim(),
            }));
        } else {
            ctx.witness(json!({
                "instance": label,
                "rk_g": rk_g,
                "dim_g": g.dim(),
                "rk_g1": rk_g1,
                "dim_g1": g1.dim(),
            }));
        }
    }
    Ok(())
}

/// C9: root-space dimensions sum to dim g for every corpus
/// (algebra, Cartan) pair.
fn check_c9_root_sum(ctx: &mut CheckCtx) -> Result<()> {
    for name in corpus::NAMES {
        let group = corpus::context(name).unwrap();
        let lie = group.lie();
        let mut cartans = corpus::known_cartans(name);
        cartans.push(lie.cartan_subalgebra(ctx.seed)?);
        for (hi, h) in cartans.iter().enumerate() {
            ctx.samples += 1;
            let datum = lie.roots(h)?;
            let total: usize = datum.dims().iter().sum();
            let table: Vec<Value> = datum
                .roots()
                .iter()
                .map(|r| json!({ "root": tuple_str(&r.values), "dim": r.space.dim() }))
                .collect();
            if total == lie.dim() {
                ctx.witness(json!({
                    "algebra": name,
                    "cartan_index": hi,
                    "dims": table,
                }));
            } else {
                ctx.fail(json!({
                    "algebra": name,
                    "cartan_index": hi,
                    "sum": total,
                    "expected": lie.dim(),
                    "dims": table,
                }));
            }
        }
    }
    Ok(())
}

/// C10: the two C-Cartan membership characterizations agree on all sampled
/// (g, h) pairs. `in_c_h` evaluates both internally and hard-errors on
/// disagreement, so this check counts clean evaluations.
fn check_c10_c_h_two_definitions(ctx: &mut CheckCtx) -> Result<()> {
    let per_group = ctx.samples.max(1) as usize;
    for (gi, name) in corpus::NAMES.iter().enumerate() {
        let group = corpus::context(name).unwrap();
        let mut cartans = corpus::known_cartans(name);
        cartans.push(group.lie().cartan_subalgebra(ctx.seed)?);
        cartans.dedup();
        let elems = group.sample_elements(ctx.seed, ctx.salt(gi as u64 + 0xa00), per_group)?;
        let mut pairs = 0u64;
        let mut agreements = 0u64;
        for g in &elems {
            let h = &cartans[pairs as usize % cartans.len()];
            pairs += 1;
            match group.in_c_h(g, h, ctx.seed) {
                Ok(_) => agreements += 1,
                Err(e) => ctx.fail(json!({
                    "group": name,
                    "element": mat_rows(g),
                    "h_basis": subspace_rows(h),
                    "error": e.to_string(),
                })),
            }
        }
        ctx.witness(json!({
            "group": name,
            "pairs": pairs,
            "agreements": agreements,
        }));
    }
    Ok(())
}

/// C11: at sampled regular points, all chart-box neighbors have the same r.
fn check_c11_local_constancy(ctx: &mut CheckCtx) -> Result<()> {
    let points_per_group = ctx.samples.max(1) as usize;
    for (gi, name) in corpus::NAMES.iter().enumerate() {
        let group = corpus::context(name).unwrap();
        let elems =
            group.sample_elements(ctx.seed, ctx.salt(gi as u64 + 0xb00), points_per_group)?;
        let mut regular_points = 0u64;
        for g in &elems {
            if !group.is_regular(g, ctx.seed)? {
                continue;
            }
            regular_points += 1;
            let r_g = group.r_of(g)?;
            for h in group.neighbors(g, ctx.seed, NEIGHBOR_COUNT)? {
                let r_h = group.r_of(&h)?;
                if r_h != r_g {
                    ctx.fail(json!({
                        "group": name,
                        "base_point": mat_rows(g),
                        "neighbor": mat_rows(&h),
                        "r_base": r_g,
                        "r_neighbor": r_h,
                    }));
                }
            }
        }
        ctx.witness(json!({
            "group": name,
            "regular_points": regular_points,
            "neighbors_each": NEIGHBOR_COUNT,
        }));
    }
    Ok(())
}

/// C12: group-side nilpotency/solvability knowledge matches the algebra
/// predicates.
fn check_c12_nilpotency_transfer(ctx: &mut CheckCtx) -> Result<()> {
    for name in corpus::NAMES {
        let group = corpus::context(name).unwrap();
        let (nil, solv) = corpus::known_group_facts(name).unwrap();
        let lie_nil = group.lie().is_nilpotent();
        let lie_solv = group.lie().is_solvable();
        ctx.samples += 1;
        if lie_nil == nil && lie_solv == solv {
            ctx.witness(json!({
                "group": name,
                "nilpotent": nil,
                "solvable": solv,
            }));
        } else {
            ctx.fail(json!({
                "group": name,
                "known": { "nilpotent": nil, "solvable": solv },
                "algebra": { "nilpotent": lie_nil, "solvable": lie_solv },
            }));
        }
    }
    Ok(())
}
