//! Command dispatch for the `sigma-cover` binary. Every command produces a
//! JSON report and an exit status: 0 on success, 1 on a failed verification
//! (the report carries the witness), 2 on usage or resource errors.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use sigma_core::catalog::LoadedGroup;
use sigma_core::formulas::{self, Evaluated};
use sigma_core::solver::{self, CoverOutcome, CoverInstance, DEFAULT_SOLVER_CAP};
use sigma_core::subgroup::DEFAULT_LATTICE_CAP;
use sigma_core::unbeatable::{self, ConditionReport, DefiniteReport, IntroInstance};
use sigma_core::wreath::{bdsn_count, construct_bdsn_cover, CoverMember, WreathFamily, WreathGroup};
use sigma_core::{CycleType, Error, Permutation, SubgroupHandle};

pub mod cache;

use cache::Cache;

/// Default bound on `|S ≀ C_m|` for exhaustive cover verification.
pub const DEFAULT_WREATH_CAP: u64 = 100_000_000;

#[derive(Parser, Debug)]
#[command(name = "sigma-cover", version, about = "Covering numbers of simple groups and their cyclic wreath products")]
pub struct Cli {
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Cache directory for subgroup lattices (env SIGMA_COVER_CACHE).
    #[arg(long, global = true, env = "SIGMA_COVER_CACHE")]
    pub cache_dir: Option<PathBuf>,
    /// Never read or write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimum number of maximal subgroups covering a group or a target set.
    Sigma {
        group: String,
        /// Element set to cover: orders:K,..., cycle-types:A.B,..., file:PATH, psl2:P.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, conflicts_with = "greedy")]
        exact: bool,
        #[arg(long)]
        greedy: bool,
        #[arg(long, default_value_t = DEFAULT_SOLVER_CAP)]
        cap: usize,
    },
    /// Verified maximal-subgroup classes, with element-order statistics.
    Catalog {
        group: String,
        /// Also compute the full subgroup lattice and check catalog completeness.
        #[arg(long)]
        lattice: bool,
    },
    /// Builds the cover of S ≀ C_m induced by an optimal cover of S.
    ConstructCover {
        group: String,
        #[arg(short)]
        m: usize,
        /// Write descriptor lines to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Verify the constructed family exhaustively.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = DEFAULT_WREATH_CAP)]
        cap: u64,
    },
    /// Checks that a family of descriptors covers S ≀ C_m.
    VerifyCover {
        group: String,
        #[arg(short)]
        m: usize,
        /// Descriptor lines, one per member.
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value_t = DEFAULT_WREATH_CAP)]
        cap: u64,
    },
    /// Checks conditions (0)-(5) and that (Π, 𝓗) is definitely unbeatable.
    VerifyUnbeatable {
        group: String,
        /// Σ: orders:K,..., cycle-types:A.B,..., file:PATH, psl2:P.
        #[arg(long)]
        sigma_spec: String,
        /// Catalog class labels forming 𝓜.
        #[arg(long, num_args = 1.., required = true)]
        families: Vec<String>,
        #[arg(short)]
        m: usize,
        /// Also report B over all subgroups (needs the subgroup lattice).
        #[arg(long)]
        lattice: bool,
    },
    /// σ(M11 ≀ C_m) = α(m) + 11^m + 12^m, certified.
    VerifyC1 {
        #[arg(short)]
        m: usize,
        #[arg(long)]
        lattice: bool,
    },
    /// σ(PSL(2,p) ≀ C_m) = α(m) + (p+1)^m + (p(p−1)/2)^m, certified.
    VerifyC2 {
        #[arg(short)]
        p: u32,
        #[arg(short)]
        m: usize,
        #[arg(long)]
        lattice: bool,
    },
    /// Lower bound from 𝓜 and upper bound from an optimal cover of S.
    WreathBounds {
        group: String,
        #[arg(long)]
        sigma_spec: String,
        #[arg(long, num_args = 1.., required = true)]
        families: Vec<String>,
        #[arg(short)]
        m: usize,
    },
    /// Exact closed-form values.
    Formula {
        #[command(subcommand)]
        which: FormulaCmd,
    },
    /// Evaluates a numeric lemma over a parameter range with exact arithmetic.
    CheckInequalities {
        #[arg(long)]
        lemma: String,
        /// `a..b` (exclusive) or `a..=b` (inclusive).
        #[arg(long)]
        n_range: String,
        #[arg(long, default_value = "2..=5")]
        m_range: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum FormulaCmd {
    Alpha {
        #[arg(short)]
        m: u64,
    },
    C1 {
        #[arg(short)]
        m: u64,
    },
    C2 {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        m: u64,
    },
    Main2 {
        #[arg(short)]
        n: u64,
        #[arg(short)]
        m: u64,
    },
    Main2Lower {
        #[arg(short)]
        n: u64,
        #[arg(short)]
        m: u64,
    },
    FRatio {
        #[arg(short)]
        n: u64,
        #[arg(short)]
        m: u64,
    },
    Stirling {
        #[arg(short)]
        n: u64,
    },
}

/// A finished command: its report and exit status.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

impl Outcome {
    fn verdict(pass: bool, report: Value) -> Self {
        Outcome { code: if pass { 0 } else { 1 }, report }
    }

    fn error(e: &Error) -> Self {
        let code = if matches!(e, Error::NotACover(_)) { 1 } else { 2 };
        Outcome { code, report: json!({ "error": e.to_string() }) }
    }

    /// Report text in the requested format; deterministic for equal inputs.
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.report).expect("serializable report");
            s.push('\n');
            s
        } else {
            let mut out = String::new();
            render_text(&self.report, 0, &mut out);
            out
        }
    }
}

fn render_text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, depth + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(x, depth + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()) && a.len() <= 16,
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

type CmdResult = std::result::Result<Outcome, Error>;

/// Runs one command; parallel sections use a pool of `cli.threads` workers.
pub fn run(cli: &Cli) -> Outcome {
    let cache = if cli.no_cache { Cache::disabled() } else { Cache::new(cli.cache_dir.clone()) };
    let work = || dispatch(&cli.command, &cache).unwrap_or_else(|e| Outcome::error(&e));
    match cli.threads {
        Some(0) => Outcome { code: 2, report: json!({ "error": "--threads must be positive" }) },
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(work),
            Err(e) => Outcome { code: 2, report: json!({ "error": e.to_string() }) },
        },
        None => work(),
    }
}

fn dispatch(cmd: &Command, cache: &Cache) -> CmdResult {
    match cmd {
        Command::Sigma { group, target, greedy, cap, .. } => cmd_sigma(group, target.as_deref(), *greedy, *cap),
        Command::Catalog { group, lattice } => cmd_catalog(group, *lattice, cache),
        Command::ConstructCover { group, m, out, verify, cap } => cmd_construct(group, *m, out.as_ref(), *verify, *cap),
        Command::VerifyCover { group, m, family, cap } => cmd_verify_cover(group, *m, family, *cap),
        Command::VerifyUnbeatable { group, sigma_spec, families, m, lattice } => {
            let g = LoadedGroup::resolve(group)?;
            let sigma = parse_element_set(&g, sigma_spec)?;
            let labels: Vec<&str> = families.iter().map(String::as_str).collect();
            let inst = IntroInstance::from_labels(&g, sigma, &labels, *m)?;
            let (pass, report) = unbeatable_reports(&inst, *lattice, cache)?;
            Ok(Outcome::verdict(pass, report))
        }
        Command::VerifyC1 { m, lattice } => {
            let g = LoadedGroup::builtin("M11")?;
            let sigma = unbeatable::sigma_by_orders(&g.table, &[8, 11]);
            let expected = formulas::c1_value(*m as u64);
            certify(&g, sigma, &["M10", "PSL(2,11)"], *m, *lattice, cache, expected, Vec::new())
        }
        Command::VerifyC2 { p, m, lattice } => {
            let g = LoadedGroup::builtin(&format!("PSL(2,{p})"))?;
            let sigma = unbeatable::psl2_sigma(&g.table, *p);
            let borel = format!("{p}:{}", (p - 1) / 2);
            let dihedral = format!("D{}", p + 1);
            let e = formulas::c2_value(*p as u64, *m as u64);
            certify(&g, sigma, &[&borel, &dihedral], *m, *lattice, cache, e.value, e.warnings)
        }
        Command::WreathBounds { group, sigma_spec, families, m } => {
            let g = LoadedGroup::resolve(group)?;
            let sigma = parse_element_set(&g, sigma_spec)?;
            let labels: Vec<&str> = families.iter().map(String::as_str).collect();
            let inst = IntroInstance::from_labels(&g, sigma, &labels, *m)?;
            let (labels, cover) = optimal_cover(&g)?;
            match unbeatable::theorem_main1_bounds(&inst, &cover) {
                Ok(b) => Ok(Outcome::verdict(
                    true,
                    json!({
                        "group": g.name, "m": m, "lower": b.lower.to_string(), "upper": b.upper.to_string(),
                        "exact": b.is_exact(), "cover_of_s": labels,
                    }),
                )),
                Err(Error::Hypothesis(why)) => {
                    let report = unbeatable::check_intro_conditions(&inst, None);
                    Ok(Outcome::verdict(false, json!({ "group": g.name, "m": m, "error": why, "conditions": report })))
                }
                Err(e) => Err(e),
            }
        }
        Command::Formula { which } => Ok(cmd_formula(which)),
        Command::CheckInequalities { lemma, n_range, m_range } => {
            let n = parse_range(n_range)?;
            let m = parse_range(m_range)?;
            let r = formulas::inequality_suite(lemma, n, m)?;
            Ok(Outcome::verdict(r.pass, serde_json::to_value(&r).expect("serializable")))
        }
    }
}

/// Parses `a..b` (exclusive), `a..=b` (inclusive) or a single `a`.
pub fn parse_range(text: &str) -> Result<(u64, u64), Error> {
    let bad = || Error::Parse(format!("bad range {text:?}"));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    if let Some((a, b)) = text.split_once("..=") {
        Ok((num(a)?, num(b)?))
    } else if let Some((a, b)) = text.split_once("..") {
        let b = num(b)?;
        Ok((num(a)?, b.checked_sub(1).ok_or_else(bad)?))
    } else {
        let a = num(text)?;
        Ok((a, a))
    }
}

/// Element sets: `orders:8,11`, `cycle-types:5,2.2` (nontrivial cycle
/// lengths joined by `.`), `file:PATH` (one permutation in cycle notation
/// per line), `psl2:P`.
pub fn parse_element_set(g: &LoadedGroup, spec: &str) -> Result<fixedbitset::FixedBitSet, Error> {
    let s = &g.table;
    let (kind, rest) = spec.split_once(':').ok_or_else(|| Error::Parse(format!("element set {spec:?}")))?;
    let bad = || Error::Parse(format!("element set {spec:?}"));
    match kind {
        "order" | "orders" => {
            let orders = rest.split(',').map(|x| x.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
            Ok(unbeatable::sigma_by_orders(s, &orders))
        }
        "cycle-type" | "cycle-types" => {
            let mut ids = Vec::new();
            for t in rest.split(',') {
                let parts = t.split('.').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
                ids.extend(s.elements_with_cycle_type(&CycleType::padded(&parts, s.degree())?));
            }
            Ok(s.bitset(ids))
        }
        "file" => {
            let text = std::fs::read_to_string(rest)?;
            let mut ids = Vec::new();
            for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
                let p = Permutation::parse_cycles(line, s.degree())?;
                ids.push(s.id_of(&p).ok_or_else(|| Error::Parse(format!("{line} is not in {}", g.name)))?);
            }
            Ok(s.bitset(ids))
        }
        "psl2" => Ok(unbeatable::psl2_sigma(s, rest.trim().parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

fn cmd_sigma(group: &str, target: Option<&str>, greedy: bool, cap: usize) -> CmdResult {
    let g = LoadedGroup::resolve(group)?;
    let t = target.map(|t| parse_element_set(&g, t)).transpose()?;
    let outcome = if greedy {
        if g.table.order() > cap {
            return Err(Error::OrderCap { order: g.table.order(), cap });
        }
        solver::sigma_greedy(&CoverInstance::for_group(&g, t.as_ref()))
    } else {
        solver::sigma_exact(&g, t.as_ref(), cap)?
    };
    let witness = match &outcome {
        CoverOutcome::Infeasible { uncovered } => Some(g.table.perm(*uncovered).to_string()),
        CoverOutcome::Covered(_) => None,
    };
    let report = json!({
        "group": g.name,
        "order": g.table.order(),
        "target": target.unwrap_or("all"),
        "target_size": t.as_ref().map(|x| x.count_ones(..)).unwrap_or(g.table.order()),
        "method": if greedy { "greedy" } else { "exact" },
        "value": outcome.certificate().map(|c| c.value),
        "outcome": outcome,
        "uncovered_witness": witness,
    });
    Ok(Outcome::verdict(outcome.certificate().is_some(), report))
}

fn cmd_catalog(group: &str, lattice: bool, cache: &Cache) -> CmdResult {
    let g = LoadedGroup::resolve(group)?;
    let s = &g.table;
    let classes: Vec<Value> = g
        .maximal
        .iter()
        .map(|c| {
            let rep = &c.class.representative;
            let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
            for &x in rep.members() {
                *counts.entry(s.element_order(x)).or_default() += 1;
            }
            // largest number of conjugates through one element, per order
            let mut through: BTreeMap<u32, usize> = BTreeMap::new();
            let mut hits = vec![0usize; s.order()];
            for h in &c.class.conjugates {
                for &x in h.members() {
                    hits[x as usize] += 1;
                }
            }
            for (x, &k) in hits.iter().enumerate() {
                if k > 0 {
                    let e = through.entry(s.element_order(x as u32)).or_default();
                    *e = (*e).max(k);
                }
            }
            json!({
                "label": c.label,
                "order": rep.order(),
                "index": s.order() / rep.order(),
                "class_size": c.class.class_size(),
                "element_orders": counts,
                "max_conjugates_through_element": through,
            })
        })
        .collect();
    let mut report = json!({
        "group": g.name,
        "degree": s.degree(),
        "order": s.order(),
        "group_hash": cache::group_hash(s),
        "maximal_classes": classes,
    });
    let mut pass = true;
    if lattice {
        let lat = cache.lattice(s, DEFAULT_LATTICE_CAP)?;
        let check = g.check_against_lattice(&lat);
        pass = check.complete();
        report["lattice"] = json!({ "classes": lat.len(), "check": check });
    }
    Ok(Outcome::verdict(pass, report))
}

/// An optimal cover of `S` by maximal subgroups, as labels and subgroups.
fn optimal_cover(g: &LoadedGroup) -> Result<(Vec<String>, Vec<SubgroupHandle>), Error> {
    let out = solver::sigma_exact(g, None, DEFAULT_SOLVER_CAP)?;
    let cert = out.certificate().ok_or_else(|| Error::NotACover(format!("{} is cyclic", g.name)))?;
    let members = g.all_maximal_subgroups();
    let chosen: Vec<SubgroupHandle> =
        members.iter().filter(|x| cert.chosen.contains(&x.label())).map(|x| x.subgroup.clone()).collect();
    Ok((cert.chosen.clone(), chosen))
}

fn cmd_construct(group: &str, m: usize, out: Option<&PathBuf>, verify: bool, cap: u64) -> CmdResult {
    let g = LoadedGroup::resolve(group)?;
    let s = &g.table;
    let (labels, _) = optimal_cover(&g)?;
    let members: Vec<CoverMember> = g
        .all_maximal_subgroups()
        .into_iter()
        .filter(|x| labels.contains(&x.label()))
        .map(|x| CoverMember {
            class_label: x.class_label.to_string(),
            conjugator: x.conjugator,
            subgroup: Arc::new(x.subgroup.clone()),
        })
        .collect();
    let fam = construct_bdsn_cover(s, &members, m)?;
    let expected = bdsn_count(s.order(), members.iter().map(|c| c.subgroup.order()), m);
    let lines = fam.to_lines(s, &g.name);
    if let Some(path) = out {
        std::fs::write(path, lines.join("\n") + "\n")?;
    }
    let mut report = json!({
        "group": g.name,
        "m": m,
        "cover_of_s": labels,
        "members": fam.len(),
        "expected_members": expected.to_string(),
        "lines": if lines.len() <= 1000 { json!(lines) } else { json!(format!("{} lines", lines.len())) },
    });
    let mut pass = BigUint::from(fam.len()) == expected;
    if verify {
        let w = WreathGroup::new(s, m)?;
        let check = solver::verify_wreath_cover(&w, &fam, cap)?;
        pass &= check.covered;
        report["covered"] = json!(check.covered);
        report["first_uncovered"] = json!(check.first_uncovered.map(|x| wreath_text(&g, &x)));
    }
    Ok(Outcome::verdict(pass, report))
}

fn wreath_text(g: &LoadedGroup, w: &sigma_core::wreath::WreathElement) -> Value {
    json!({
        "base": w.base.iter().map(|&x| g.table.perm(x).to_string()).collect::<Vec<_>>(),
        "shift": w.shift,
    })
}

fn cmd_verify_cover(group: &str, m: usize, family: &PathBuf, cap: u64) -> CmdResult {
    let g = LoadedGroup::resolve(group)?;
    let text = std::fs::read_to_string(family)?;
    let fam = WreathFamily::parse_lines(&g, m, text.lines())?;
    let w = WreathGroup::new(&g.table, m)?;
    let check = solver::verify_wreath_cover(&w, &fam, cap)?;
    let report = json!({
        "group": g.name,
        "m": m,
        "members": fam.len(),
        "wreath_order": w.order_big().to_string(),
        "covered": check.covered,
        "first_uncovered": check.first_uncovered.map(|x| wreath_text(&g, &x)),
    });
    Ok(Outcome::verdict(check.covered, report))
}

fn unbeatable_reports(inst: &IntroInstance<'_>, lattice: bool, cache: &Cache) -> Result<(bool, Value), Error> {
    let lat = if lattice { Some(cache.lattice(&inst.group.table, DEFAULT_LATTICE_CAP)?) } else { None };
    let conditions: ConditionReport = unbeatable::check_intro_conditions(inst, lat.as_deref());
    let definite: DefiniteReport = unbeatable::check_definitely_unbeatable(inst, &Default::default())?;
    let cond_ok = if inst.m == 1 { conditions.structural_pass() } else { conditions.pass };
    let pass = cond_ok && definite.pass;
    Ok((pass, json!({ "conditions": conditions, "definitely_unbeatable": definite, "pass": pass })))
}

#[allow(clippy::too_many_arguments)]
fn certify(
    g: &LoadedGroup,
    sigma: fixedbitset::FixedBitSet,
    labels: &[&str],
    m: usize,
    lattice: bool,
    cache: &Cache,
    expected: BigUint,
    warnings: Vec<String>,
) -> CmdResult {
    let inst = IntroInstance::from_labels(g, sigma, labels, m)?;
    let (mut pass, mut report) = unbeatable_reports(&inst, lattice, cache)?;
    let cover: Vec<SubgroupHandle> = inst.family.iter().map(|f| (*f.subgroup).clone()).collect();
    let mut all = fixedbitset::FixedBitSet::with_capacity(g.table.order());
    all.insert_range(..);
    let cover_check = solver::verify_group_cover(&g.table, cover.iter(), &all);
    report["family_covers_s"] = json!(cover_check.covered);
    report["family_uncovered_witness"] = json!(cover_check.first_uncovered.map(|x| g.table.perm(x).to_string()));
    match unbeatable::theorem_main1_bounds(&inst, &cover) {
        Ok(b) => {
            pass &= b.is_exact() && b.lower == expected;
            report["lower"] = json!(b.lower.to_string());
            report["upper"] = json!(b.upper.to_string());
        }
        Err(e) => {
            pass = false;
            report["bounds_error"] = json!(e.to_string());
        }
    }
    report["group"] = json!(g.name);
    report["m"] = json!(m);
    report["formula_value"] = json!(expected.to_string());
    report["warnings"] = json!(warnings);
    report["pass"] = json!(pass);
    Ok(Outcome::verdict(pass, report))
}

fn rational_text(r: &num_rational::BigRational) -> Value {
    let approx = r.to_f64().map(|x| format!("{x:.6e}"));
    json!({ "exact": r.to_string(), "approx": approx })
}

fn evaluated<T>(name: &str, params: Value, e: Evaluated<T>, show: impl Fn(&T) -> Value) -> Outcome {
    Outcome::verdict(true, json!({ "formula": name, "params": params, "value": show(&e.value), "warnings": e.warnings }))
}

fn cmd_formula(which: &FormulaCmd) -> Outcome {
    let big = |v: &BigUint| json!(v.to_string());
    match *which {
        FormulaCmd::Alpha { m } => Outcome::verdict(true, json!({ "formula": "alpha", "params": { "m": m }, "value": formulas_alpha(m) })),
        FormulaCmd::C1 { m } => evaluated("c1", json!({ "m": m }), Evaluated { value: formulas::c1_value(m), warnings: vec![] }, big),
        FormulaCmd::C2 { p, m } => evaluated("c2", json!({ "p": p, "m": m }), formulas::c2_value(p, m), big),
        FormulaCmd::Main2 { n, m } => match formulas::main2_value(n, m) {
            Ok(e) => evaluated("main2", json!({ "n": n, "m": m }), e, big),
            Err(e) => Outcome::error(&e),
        },
        FormulaCmd::Main2Lower { n, m } => {
            evaluated("main2-lower", json!({ "n": n, "m": m }), formulas::main2_lower_bound(n, m), rational_text)
        }
        FormulaCmd::FRatio { n, m } => match formulas::f_ratio(n, m) {
            Ok(e) => evaluated("f-ratio", json!({ "n": n, "m": m }), e, rational_text),
            Err(e) => Outcome::error(&e),
        },
        FormulaCmd::Stirling { n } => {
            let b = formulas::stirling_bounds(n);
            Outcome::verdict(
                b.brackets(),
                json!({
                    "formula": "stirling",
                    "params": { "n": n },
                    "ln_lower": format!("{:.15e}", b.ln_lower.approx()),
                    "ln_factorial": format!("{:.15e}", b.ln_factorial.approx()),
                    "ln_upper": format!("{:.15e}", b.ln_upper.approx()),
                    "brackets": b.brackets(),
                }),
            )
        }
    }
}

fn formulas_alpha(m: u64) -> usize {
    sigma_core::numtheory::alpha(m)
}
