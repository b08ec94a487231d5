//! Command line verifier: runs the library checks for one odd prime in a
//! fixed section order, prints a human summary, and emits a deterministic
//! JSON report (timing fields aside).

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use fuscat::fusion::ty_ring;
use fuscat::group::rank2_elementary;
use fuscat::modcat::{
    dual_simples, pointed_modcat_ranks, pointed_modcats_of_dual, rank_functor_category,
    skew_diagonal_descriptor, ModCatDescriptor,
};
use fuscat::ty::{
    canonical_hyperbolic_form, coordinate_swap, f_symbols, group_theoretical_verdict,
    modcat_permutation, pentagon_check, pointed_ty_modcats, TYData,
};

const DEFAULT_MAX_GROUP_ORDER: &str = "338";

#[derive(Parser)]
#[command(
    name = "fuscat",
    version,
    about = "Exact-arithmetic checks for pointed fusion categories, their module categories, and order-two equivariantizations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Odd prime parameter; the ambient group has order 2p^2.
    #[arg(long)]
    p: usize,
    /// Refuse configurations whose ambient group exceeds this order.
    #[arg(long, default_value = DEFAULT_MAX_GROUP_ORDER)]
    max_group_order: usize,
    /// Write the JSON report to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full verification pipeline and report each section.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Skip the pentagon sweep (intended for large p where it is
        /// compute-bound; correctness is unaffected).
        #[arg(long)]
        skip_pentagon: bool,
        /// Sign of the non-monomial associator scale.
        #[arg(long, default_value = "+", value_parser = ["+", "-"])]
        tau_sign: String,
        /// Print only the JSON report, no summary lines.
        #[arg(long)]
        json_only: bool,
    },
    /// Rank of the functor category between two module-category
    /// descriptors: index 0 is the base diagonal-line descriptor, 1..=4
    /// the pointed census entries in enumeration order.
    Rank {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "0")]
        left: usize,
        #[arg(long, default_value = "0")]
        right: usize,
    },
    /// The pointed module categories of the dual category, with ranks.
    Modcats {
        #[command(flatten)]
        common: Common,
    },
    /// Pentagon sweep over the Tambara-Yamagami associator table.
    Pentagon {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "+", value_parser = ["+", "-"])]
        tau_sign: String,
    },
    /// Simple-object dimension profile of the order-two
    /// equivariantization.
    Profile {
        #[command(flatten)]
        common: Common,
    },
}

fn is_odd_prime(p: usize) -> bool {
    p >= 3 && p % 2 == 1 && (3..p).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Usage-level validation; failures here exit with code 2.
fn validate(common: &Common) -> Result<(), String> {
    if !is_odd_prime(common.p) {
        return Err(format!("--p must be an odd prime, got {}", common.p));
    }
    let order = 2 * common.p * common.p;
    if order > common.max_group_order {
        return Err(format!(
            "ambient group order {} exceeds --max-group-order {}; raise the cap to proceed",
            order, common.max_group_order
        ));
    }
    Ok(())
}

fn base_descriptor(p: usize) -> fuscat::Result<ModCatDescriptor> {
    skew_diagonal_descriptor(p)
}

fn ty_data(p: usize, tau_sign: &str) -> fuscat::Result<TYData> {
    let (g, chi) = canonical_hyperbolic_form(p)?;
    TYData::new(g, chi, tau_sign == "+")
}

fn tally(mut dims: Vec<usize>) -> Vec<(usize, usize)> {
    dims.sort_unstable();
    let mut out: Vec<(usize, usize)> = Vec::new();
    for d in dims {
        match out.last_mut() {
            Some((dim, count)) if *dim == d => *count += 1,
            _ => out.push((d, 1)),
        }
    }
    out
}

struct SectionOutcome {
    pass: bool,
    payload: Value,
    summary: String,
}

fn outcome(pass: bool, payload: Value, summary: impl Into<String>) -> SectionOutcome {
    SectionOutcome {
        pass,
        payload,
        summary: summary.into(),
    }
}

fn section_group_construction(p: usize) -> fuscat::Result<SectionOutcome> {
    let d = base_descriptor(p)?;
    let order = d.group().order();
    let line = d.subgroup().order();
    let normal = d.subgroup().is_normal();
    let pass = order == 2 * p * p && line == p && !normal;
    Ok(outcome(
        pass,
        json!({
            "group_order": order,
            "line_order": line,
            "line_members": d.subgroup().members(),
            "line_normal": normal,
        }),
        format!("ambient order {order}, non-normal line of order {line}"),
    ))
}

fn section_pointed_modcats(p: usize) -> fuscat::Result<SectionOutcome> {
    let base = base_descriptor(p)?;
    let search = pointed_modcats_of_dual(&base)?;
    let ranks = pointed_modcat_ranks(&base, &search)?;
    let mut sorted = ranks.clone();
    sorted.sort_unstable();
    let expected = vec![2, 2, 2 * p, 2 * p];
    let pass = search.exhaustive
        && search.unresolved.is_empty()
        && search.descriptors.len() == 4
        && sorted == expected;
    Ok(outcome(
        pass,
        json!({
            "search": serde_json::to_value(&search).expect("serializable"),
            "ranks": ranks,
        }),
        format!(
            "{} classes (raw {}), ranks {:?}",
            search.descriptors.len(),
            search.raw_count,
            sorted
        ),
    ))
}

fn section_census_cross_check(p: usize) -> fuscat::Result<SectionOutcome> {
    let base = base_descriptor(p)?;
    let self_rank = rank_functor_category(&base, &base)?.rank;
    let census = dual_simples(&base)?;
    let dual_dims: Vec<usize> = census
        .simples
        .iter()
        .map(|s| s.fp_dim.unwrap_or(0))
        .collect();
    let dual_tally = tally(dual_dims);
    let ring = ty_ring(&rank2_elementary(p)?)?;
    let ring_dims = ring.fp_dims().exact.unwrap_or_default();
    let ring_tally = tally(ring_dims);
    let expected = vec![(1, p * p), (p, 1)];
    let pass = self_rank == p * p + 1
        && census.degrees_complete
        && census.global_dim() == Some(2 * p * p)
        && dual_tally == expected
        && ring_tally == expected;
    Ok(outcome(
        pass,
        json!({
            "self_rank": self_rank,
            "dual_dims": dual_tally,
            "two_orbit_ring_dims": ring_tally,
            "global_dim": census.global_dim(),
        }),
        format!(
            "dual rank {self_rank}, dimension tally {:?}, global dimension {:?}",
            dual_tally,
            census.global_dim()
        ),
    ))
}

fn section_pentagon(p: usize, tau_sign: &str) -> fuscat::Result<SectionOutcome> {
    let ty = ty_data(p, tau_sign)?;
    let table = f_symbols(&ty);
    let sweep = pentagon_check(&table);
    let pass = sweep.violations.is_empty();
    let first = sweep
        .violations
        .first()
        .map(|v| format!("{:?} via ({}, {}, {}, {}, {}): {} vs {}", v.objects, v.e, v.f, v.g, v.k, v.l, v.lhs, v.rhs));
    Ok(outcome(
        pass,
        json!({
            "tau": tau_sign,
            "equations": sweep.equations,
            "violations": sweep.violations.len(),
            "first_violation": first,
        }),
        format!(
            "{} equations, {} violations (tau {tau_sign})",
            sweep.equations,
            sweep.violations.len()
        ),
    ))
}

fn section_symmetry_action(p: usize, tau_sign: &str) -> fuscat::Result<SectionOutcome> {
    let ty = ty_data(p, tau_sign)?;
    let modcats = pointed_ty_modcats(&ty)?;
    let swap = coordinate_swap(ty.group())?;
    let perm = modcat_permutation(&ty, &modcats, &swap)?;
    let fixed: Vec<usize> = perm
        .iter()
        .enumerate()
        .filter(|&(i, &img)| i == img)
        .map(|(i, _)| i)
        .collect();
    let pass = modcats.len() == 4 && perm == vec![1, 0, 3, 2] && fixed.is_empty();
    Ok(outcome(
        pass,
        json!({
            "modcats": serde_json::to_value(&modcats).expect("serializable"),
            "permutation": perm,
            "fixed_points": fixed,
        }),
        format!("permutation {perm:?}, fixed points {fixed:?}"),
    ))
}

fn section_verdict(p: usize, tau_sign: &str) -> fuscat::Result<SectionOutcome> {
    let ty = ty_data(p, tau_sign)?;
    let swap = coordinate_swap(ty.group())?;
    let verdict = group_theoretical_verdict(&ty, &swap, false)?;
    let pass = !verdict.group_theoretical && verdict.fixed_points.is_empty();
    Ok(outcome(
        pass,
        serde_json::to_value(&verdict).expect("serializable"),
        format!(
            "group-theoretical: {} (fixed points {:?})",
            verdict.group_theoretical, verdict.fixed_points
        ),
    ))
}

fn section_dimension_profile(p: usize, tau_sign: &str) -> fuscat::Result<SectionOutcome> {
    let ty = ty_data(p, tau_sign)?;
    let swap = coordinate_swap(ty.group())?;
    let verdict = group_theoretical_verdict(&ty, &swap, false)?;
    let expected = vec![(1, 2 * p), (2, p * (p - 1) / 2), (p, 2)];
    let pass = verdict.profile == expected && verdict.global_dim == 4 * p * p;
    Ok(outcome(
        pass,
        json!({
            "profile": verdict.profile,
            "global_dim": verdict.global_dim,
        }),
        format!(
            "profile {:?}, summed squares {}",
            verdict.profile, verdict.global_dim
        ),
    ))
}

fn run_section(
    name: &str,
    skipped: bool,
    f: impl FnOnce() -> fuscat::Result<SectionOutcome>,
) -> (Value, String, bool) {
    if skipped {
        let row = json!({
            "name": name,
            "status": "skipped",
            "payload": Value::Null,
            "elapsed_ms": 0,
        });
        return (row, format!("{name}: skipped"), true);
    }
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed().as_millis() as u64;
    match result {
        Ok(o) => {
            let status = if o.pass { "pass" } else { "fail" };
            let row = json!({
                "name": name,
                "status": status,
                "payload": o.payload,
                "elapsed_ms": elapsed,
            });
            (row, format!("{name}: {status} ({})", o.summary), o.pass)
        }
        Err(err) => {
            let row = json!({
                "name": name,
                "status": "fail",
                "payload": {"error": err.to_string()},
                "elapsed_ms": elapsed,
            });
            (row, format!("{name}: fail ({err})"), false)
        }
    }
}

fn emit(report: &Value, out: &Option<PathBuf>, to_stdout: bool) -> Result<(), String> {
    let text = serde_json::to_string_pretty(report).expect("report serializes");
    if let Some(path) = out {
        std::fs::write(path, format!("{text}\n"))
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    if to_stdout {
        println!("{text}");
    }
    Ok(())
}

fn cmd_verify(
    common: &Common,
    skip_pentagon: bool,
    tau_sign: &str,
    json_only: bool,
) -> Result<bool, String> {
    let p = common.p;
    let mut sections = Vec::new();
    let mut lines = Vec::new();
    let mut all_pass = true;
    let mut push = |(row, line, pass): (Value, String, bool)| {
        sections.push(row);
        lines.push(line);
        all_pass &= pass;
    };
    push(run_section("group construction", false, || {
        section_group_construction(p)
    }));
    push(run_section("pointed module categories", false, || {
        section_pointed_modcats(p)
    }));
    push(run_section("census cross-check", false, || {
        section_census_cross_check(p)
    }));
    push(run_section("pentagon coherence", skip_pentagon, || {
        section_pentagon(p, tau_sign)
    }));
    push(run_section("symmetry action", false, || {
        section_symmetry_action(p, tau_sign)
    }));
    push(run_section("verdict", false, || section_verdict(p, tau_sign)));
    push(run_section("dimension profile", false, || {
        section_dimension_profile(p, tau_sign)
    }));
    let report = json!({
        "schema": 1,
        "p": p,
        "sections": sections,
        "overall": if all_pass { "pass" } else { "fail" },
    });
    if !json_only {
        for line in &lines {
            println!("{line}");
        }
        println!("overall: {}", if all_pass { "pass" } else { "fail" });
    }
    emit(&report, &common.out, json_only)?;
    Ok(all_pass)
}

fn cmd_rank(common: &Common, left: usize, right: usize) -> Result<bool, String> {
    let base = base_descriptor(common.p).map_err(|e| e.to_string())?;
    let search = pointed_modcats_of_dual(&base).map_err(|e| e.to_string())?;
    let mut pool = vec![base];
    pool.extend(search.descriptors);
    if left >= pool.len() || right >= pool.len() {
        return Err(format!(
            "descriptor index out of range; {} descriptors are available (0 is the base)",
            pool.len()
        ));
    }
    let breakdown =
        rank_functor_category(&pool[left], &pool[right]).map_err(|e| e.to_string())?;
    let report = json!({
        "schema": 1,
        "p": common.p,
        "pair": [left, right],
        "rank": breakdown.rank,
        "coset_breakdown": serde_json::to_value(&breakdown.cosets).expect("serializable"),
    });
    emit(&report, &common.out, true)?;
    Ok(true)
}

fn cmd_modcats(common: &Common) -> Result<bool, String> {
    let base = base_descriptor(common.p).map_err(|e| e.to_string())?;
    let search = pointed_modcats_of_dual(&base).map_err(|e| e.to_string())?;
    let ranks = pointed_modcat_ranks(&base, &search).map_err(|e| e.to_string())?;
    let report = json!({
        "schema": 1,
        "p": common.p,
        "search": serde_json::to_value(&search).expect("serializable"),
        "ranks": ranks,
    });
    emit(&report, &common.out, true)?;
    Ok(true)
}

fn cmd_pentagon(common: &Common, tau_sign: &str) -> Result<bool, String> {
    let ty = ty_data(common.p, tau_sign).map_err(|e| e.to_string())?;
    let sweep = pentagon_check(&f_symbols(&ty));
    let report = json!({
        "schema": 1,
        "p": common.p,
        "tau": tau_sign,
        "equations": sweep.equations,
        "violations": sweep.violations.len(),
    });
    emit(&report, &common.out, true)?;
    Ok(sweep.violations.is_empty())
}

fn cmd_profile(common: &Common) -> Result<bool, String> {
    let ty = ty_data(common.p, "+").map_err(|e| e.to_string())?;
    let swap = coordinate_swap(ty.group()).map_err(|e| e.to_string())?;
    let verdict = group_theoretical_verdict(&ty, &swap, false).map_err(|e| e.to_string())?;
    let report = json!({
        "schema": 1,
        "p": common.p,
        "profile": verdict.profile,
        "global_dim": verdict.global_dim,
    });
    emit(&report, &common.out, true)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.cmd {
        Cmd::Verify { common, .. }
        | Cmd::Rank { common, .. }
        | Cmd::Modcats { common }
        | Cmd::Pentagon { common, .. }
        | Cmd::Profile { common } => common,
    };
    if let Err(msg) = validate(common) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let run = match &cli.cmd {
        Cmd::Verify {
            common,
            skip_pentagon,
            tau_sign,
            json_only,
        } => cmd_verify(common, *skip_pentagon, tau_sign, *json_only),
        Cmd::Rank {
            common,
            left,
            right,
        } => cmd_rank(common, *left, *right),
        Cmd::Modcats { common } => cmd_modcats(common),
        Cmd::Pentagon { common, tau_sign } => cmd_pentagon(common, tau_sign),
        Cmd::Profile { common } => cmd_profile(common),
    };
    match run {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
