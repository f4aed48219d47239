//! Acceptance criteria, one pass/fail line each. All comparisons are exact;
//! each criterion also has a wall-clock budget.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::collections::HashSet;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sigma_core::catalog::LoadedGroup;
use sigma_core::formulas::{f_ratio, inequality_suite, main2_value};
use sigma_core::solver::{sigma_exact, verify_group_cover, verify_wreath_cover, CertificateKind, DEFAULT_SOLVER_CAP};
use sigma_core::unbeatable::{
    check_definitely_unbeatable, check_intro_conditions, psl2_sigma, sigma_by_orders, theorem_main1_bounds,
    IntroInstance,
};
use sigma_core::wreath::{bdsn_count, construct_bdsn_cover, CoverMember, WreathElement, WreathGroup};
use sigma_core::SubgroupHandle;
use support::oracle::min_cover_size;
use support::realization::{a5_maximal, explicit_product, normalizes_by_generators, normalizes_full, random_descriptor};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn full(n: usize) -> FixedBitSet {
    let mut u = FixedBitSet::with_capacity(n);
    u.insert_range(..);
    u
}

fn m11() -> LoadedGroup {
    LoadedGroup::builtin("M11").expect("M11 catalog verifies")
}

fn criterion_1() -> Check {
    let g = m11();
    let s = &g.table;
    ensure(s.order() == 7920, format!("|M11| = {}", s.order()))?;
    let labels = ["M10", "PSL(2,11)", "M9:2", "S5", "M8:S3"];
    let orders = [720, 660, 144, 120, 48];
    let sizes = [11, 12, 55, 66, 165];
    let eights = [180, 0, 36, 0, 12];
    let elevens = [0, 120, 0, 0, 0];
    for (i, l) in labels.iter().enumerate() {
        let c = &g.class(l).ok_or(format!("missing class {l}"))?.class;
        let rep = &c.representative;
        let count = |k: u32| rep.members().iter().filter(|&&x| s.element_order(x) == k).count();
        ensure(rep.order() == orders[i], format!("{l}: order {}", rep.order()))?;
        ensure(c.class_size() == sizes[i], format!("{l}: class size {}", c.class_size()))?;
        ensure(count(8) == eights[i], format!("{l}: {} elements of order 8", count(8)))?;
        ensure(count(11) == elevens[i], format!("{l}: {} elements of order 11", count(11)))?;
        // an element of order 8 (or 11) lies in at most one conjugate
        let mut through = vec![0u32; s.order()];
        for h in &c.conjugates {
            for &x in h.members() {
                through[x as usize] += 1;
            }
        }
        for x in s.ids() {
            let o = s.element_order(x);
            if (o == 8 || o == 11) && through[x as usize] > 1 {
                return Err(format!("{l}: {} lies in {} conjugates", s.perm(x), through[x as usize]));
            }
        }
    }
    Ok("orders, class sizes, order-8/11 counts and unique containment as listed".into())
}

fn m11_instance(g: &LoadedGroup, m: usize) -> IntroInstance<'_> {
    IntroInstance::from_labels(g, sigma_by_orders(&g.table, &[8, 11]), &["M10", "PSL(2,11)"], m).unwrap()
}

fn criterion_2() -> Check {
    let g = m11();
    let inst = m11_instance(&g, 1);
    ensure(inst.family.len() == 23, format!("|𝓜| = {}", inst.family.len()))?;
    let cover = verify_group_cover(&g.table, inst.family.iter().map(|f| &*f.subgroup), &full(7920));
    ensure(cover.covered, format!("uncovered {:?}", cover.first_uncovered))?;
    let rep = check_definitely_unbeatable(&inst, &HashSet::new()).map_err(|e| e.to_string())?;
    ensure(rep.pass, format!("unbeatability fails: {:?}", rep.conditions.iter().find(|c| !c.pass)))?;
    ensure(rep.lower_bound == Some(BigUint::from(23u32)), format!("lower bound {:?}", rep.lower_bound))?;
    Ok("upper 23 (cover verified) = lower 23 (definitely unbeatable at m = 1)".into())
}

fn criterion_3() -> Check {
    let g = m11();
    let inst = m11_instance(&g, 2);
    let r = check_intro_conditions(&inst, None);
    ensure(r.pass, format!("conditions fail: {:?}", r.conditions.iter().find(|c| !c.pass)))?;
    let want = [15840u64, 5184, 2 * 132 * 180 * 120, 79200];
    let got = [&r.a, &r.b, &r.c, &r.d];
    for (name, (w, v)) in ["A", "B", "C", "D"].iter().zip(want.iter().zip(got)) {
        ensure(v.as_ref() == Some(&BigUint::from(*w)), format!("{name} = {v:?}, expected {w}"))?;
    }
    let cover: Vec<SubgroupHandle> = inst.family.iter().map(|f| (*f.subgroup).clone()).collect();
    let b = theorem_main1_bounds(&inst, &cover).map_err(|e| e.to_string())?;
    ensure(b.lower == BigUint::from(266u32) && b.upper == BigUint::from(266u32), format!("bounds {b:?}"))?;
    Ok("A=15840 B=5184 C=5702400 D=79200, bounds 266 = 266".into())
}

fn criterion_4() -> Check {
    let g = LoadedGroup::builtin("PSL(2,11)").map_err(|e| e.to_string())?;
    let s = &g.table;
    ensure(s.order() == 660 && s.degree() == 12, format!("order {} degree {}", s.order(), s.degree()))?;
    let sigma = psl2_sigma(s, 11);
    let inst = IntroInstance::from_labels(&g, sigma.clone(), &["11:5", "D12"], 5).map_err(|e| e.to_string())?;
    let borel: Vec<_> = inst.family.iter().filter(|f| f.class_label == "11:5").collect();
    let dihedral: Vec<_> = inst.family.iter().filter(|f| f.class_label == "D12").collect();
    ensure(borel.len() == 12 && dihedral.len() == 55, format!("{} Borel, {} dihedral", borel.len(), dihedral.len()))?;
    let cover = verify_group_cover(s, inst.family.iter().map(|f| &*f.subgroup), &full(660));
    ensure(cover.covered, "𝓜 does not cover PSL(2,11)")?;
    for f in &borel {
        ensure(f.subgroup.count_in(&sigma) == 10, format!("|Σ∩Borel| = {}", f.subgroup.count_in(&sigma)))?;
    }
    for f in &dihedral {
        ensure(f.subgroup.count_in(&sigma) == 2, format!("|Σ∩D12| = {}", f.subgroup.count_in(&sigma)))?;
    }
    let r = check_intro_conditions(&inst, None);
    ensure(r.pass, format!("conditions fail: {:?}", r.conditions.iter().find(|c| !c.pass)))?;
    let cover: Vec<SubgroupHandle> = inst.family.iter().map(|f| (*f.subgroup).clone()).collect();
    let b = theorem_main1_bounds(&inst, &cover).map_err(|e| e.to_string())?;
    let want = BigUint::from(1u32) + BigUint::from(12u32).pow(5) + BigUint::from(55u32).pow(5);
    ensure(b.lower == want && b.upper == want, format!("bounds {b:?}, expected {want}"))?;
    Ok(format!("12 + 55 members cover, |Σ∩M| = 10 / 2, conditions (0)-(5) pass, bounds {want}"))
}

/// Disagreement count and tested-element count of the membership criterion
/// against the realization, for m = 2 (exhaustive) and m = 3 (sampled).
fn lemma_oracle() -> (u64, u64, u64) {
    let loaded = LoadedGroup::builtin("A5").unwrap();
    let s = &loaded.table;
    let maximal = a5_maximal(&loaded);
    let mut disagreements = 0u64;
    let g2 = WreathGroup::new(s, 2).unwrap();
    let perms: Vec<_> = (0..7200).map(|i| g2.to_permutation(&g2.element_at(i))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut exhaustive = 0u64;
    for _ in 0..30 {
        let (d, sub, reps) = random_descriptor(s, &maximal, 2, &mut rng);
        let p = explicit_product(&g2, &sub, &reps);
        for (i, wp) in perms.iter().enumerate() {
            if d.contains(s, &g2.element_at(i as u64)) != normalizes_full(&p, wp) {
                disagreements += 1;
            }
            exhaustive += 1;
        }
    }
    let g3 = WreathGroup::new(s, 3).unwrap();
    let order = g3.order().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut sampled = 0u64;
    for _ in 0..20 {
        let (d, sub, reps) = random_descriptor(s, &maximal, 3, &mut rng);
        let p = explicit_product(&g3, &sub, &reps);
        for j in 0..5000 {
            let w = if j % 2 == 0 {
                g3.element_at(rng.gen_range(0..order))
            } else {
                let k = rng.gen_range(0..3usize);
                let base = (0..3)
                    .map(|i| {
                        let mu = sub.members()[rng.gen_range(0..sub.order())];
                        s.mul(s.mul(s.inv(d.coset_rep(i)), mu), d.coset_rep((i + k) % 3))
                    })
                    .collect();
                WreathElement { base, shift: k }
            };
            if d.contains(s, &w) != normalizes_by_generators(&p, &g3.to_permutation(&w)) {
                disagreements += 1;
            }
            sampled += 1;
        }
    }
    (disagreements, exhaustive, sampled)
}

fn criterion_5() -> Check {
    let (bad, exhaustive, sampled) = lemma_oracle();
    ensure(exhaustive == 7200 * 30, format!("{exhaustive} exhaustive checks"))?;
    ensure(sampled >= 100_000, format!("{sampled} sampled checks"))?;
    ensure(bad == 0, format!("{bad} disagreements"))?;
    Ok(format!("0 disagreements over {exhaustive} (m = 2) + {sampled} (m = 3) checks"))
}

fn criterion_6() -> Check {
    let loaded = LoadedGroup::builtin("A5").unwrap();
    let s = &loaded.table;
    let out = sigma_exact(&loaded, None, DEFAULT_SOLVER_CAP).map_err(|e| e.to_string())?;
    let chosen = &out.certificate().ok_or("no cover")?.chosen;
    let n: Vec<CoverMember> = loaded
        .all_maximal_subgroups()
        .into_iter()
        .filter(|x| chosen.contains(&x.label()))
        .map(|x| CoverMember {
            class_label: x.class_label.to_string(),
            conjugator: x.conjugator,
            subgroup: Arc::new(x.subgroup.clone()),
        })
        .collect();
    ensure(n.len() == 10, format!("|N| = {}", n.len()))?;
    let fam = construct_bdsn_cover(s, &n, 2).map_err(|e| e.to_string())?;
    let expected = bdsn_count(60, n.iter().map(|c| c.subgroup.order()), 2);
    // independent count: α(2) = 1 plus one index per member
    let direct: usize = 1 + n.iter().map(|c| 60 / c.subgroup.order()).sum::<usize>();
    ensure(BigUint::from(fam.len()) == expected && fam.len() == direct, format!("{} members, expected {direct}", fam.len()))?;
    let g = WreathGroup::new(s, 2).unwrap();
    let check = verify_wreath_cover(&g, &fam, 10_000).map_err(|e| e.to_string())?;
    ensure(check.covered, format!("uncovered {:?}", check.first_uncovered))?;
    Ok(format!("{} subgroups cover all 7200 elements of A5 wr C2", fam.len()))
}

fn criterion_7() -> Check {
    for (name, want) in [("A5", 10usize), ("PSL(2,7)", 15)] {
        let g = LoadedGroup::builtin(name).map_err(|e| e.to_string())?;
        let out = sigma_exact(&g, None, DEFAULT_SOLVER_CAP).map_err(|e| e.to_string())?;
        let c = out.certificate().ok_or("no cover")?;
        ensure(c.kind == CertificateKind::ExactOptimal, format!("{name}: {:?}", c.kind))?;
        ensure(c.value == want && c.lower_bound == want, format!("{name}: value {} lower {}", c.value, c.lower_bound))?;
        let mut u = full(g.table.order());
        u.set(g.table.identity() as usize, false);
        let sets: Vec<FixedBitSet> = g.all_maximal_subgroups().iter().map(|x| x.subgroup.set().clone()).collect();
        let oracle = min_cover_size(&u, &sets, want);
        ensure(oracle == Some(want), format!("{name}: exhaustive search gives {oracle:?}"))?;
    }
    Ok("σ(A5) = 10, σ(PSL(2,7)) = 15, both confirmed by exhaustive search".into())
}

/// Sweeps as (lemma, n range, m range).
const SWEEPS: &[(&str, (u64, u64), (u64, u64))] = &[
    ("imprimitive-vs-middle", (11, 60), (2, 2)),
    ("imprimitive-order", (8, 64), (2, 2)),
    ("family-min", (5, 60), (2, 5)),
    ("diagonal", (5, 60), (2, 5)),
    ("imprimitive-product", (11, 60), (2, 5)),
    ("primitive-product", (13, 60), (2, 5)),
    ("lower-bound-odd-reduced", (15, 98), (2, 2)),
];

fn criterion_8() -> Check {
    let mut failures = Vec::new();
    let mut cases = 0;
    for &(id, n, m) in SWEEPS {
        let r = inequality_suite(id, n, m).map_err(|e| e.to_string())?;
        cases += r.cases_tested;
        if !r.pass {
            let first = r.counterexamples.first().map(|c| {
                let mut s = format!("n={}", c.n);
                for (k, v) in [("a", c.a), ("b", c.b), ("m", c.m)] {
                    if let Some(v) = v {
                        s.push_str(&format!(" {k}={v}"));
                    }
                }
                s
            });
            failures.push(format!(
                "{id}: {} counterexamples, first {}",
                r.counterexamples.len(),
                first.unwrap_or_default()
            ));
        }
    }
    ensure(failures.is_empty(), failures.join("; "))?;
    Ok(format!("{cases} cases, 0 counterexamples"))
}

fn criterion_9() -> Check {
    for n in (14..=62).step_by(4) {
        let v = main2_value(n, 1).map_err(|e| e.to_string())?.value;
        ensure(v == BigUint::one() << (n - 2), format!("n = {n}: {v}"))?;
    }
    Ok("main2_value(n, 1) = 2^(n-2) for n = 14, 18, ..., 62".into())
}

fn criterion_10() -> Check {
    let f: Vec<BigRational> =
        [16u64, 32, 64, 128].iter().map(|&n| f_ratio(n, 2).map(|e| e.value)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let shown: Vec<String> = f.iter().map(|x| format!("{:.4e}", x.to_f64().unwrap_or(f64::NAN))).collect();
    ensure(f.windows(2).all(|w| w[1] < w[0]), format!("not decreasing: {shown:?}"))?;
    let limit = &f[0] / BigRational::from_integer(1000.into());
    ensure(f[3] < limit, format!("decreasing {shown:?} but f(128,2)/f(16,2) = {:.4} is not below 1e-3", (&f[3] / &f[0]).to_f64().unwrap_or(f64::NAN)))?;
    Ok(format!("f(n,2) = {shown:?}"))
}

fn cli(args: &[&str], threads: usize) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_sigma-cover"))
        .args(["--json", "--no-cache", "--threads", &threads.to_string()])
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_11() -> Check {
    let mut runs: Vec<Vec<String>> = vec![
        vec!["catalog".into(), "M11".into()],
        vec!["verify-c1".into(), "-m".into(), "1".into()],
        vec!["verify-c1".into(), "-m".into(), "2".into()],
        vec!["verify-c2".into(), "-p".into(), "11".into(), "-m".into(), "5".into()],
        vec!["construct-cover".into(), "A5".into(), "-m".into(), "2".into(), "--verify".into()],
        vec!["sigma".into(), "A5".into(), "--exact".into()],
        vec!["sigma".into(), "PSL(2,7)".into(), "--exact".into()],
    ];
    for &(id, n, m) in SWEEPS {
        runs.push(vec![
            "check-inequalities".into(),
            "--lemma".into(),
            id.into(),
            "--n-range".into(),
            format!("{}..={}", n.0, n.1),
            "--m-range".into(),
            format!("{}..={}", m.0, m.1),
        ]);
    }
    for n in (14..=62).step_by(4) {
        runs.push(vec!["formula".into(), "main2".into(), "-n".into(), n.to_string(), "-m".into(), "1".into()]);
    }
    for n in [16, 32, 64, 128] {
        runs.push(vec!["formula".into(), "f-ratio".into(), "-n".into(), n.to_string(), "-m".into(), "2".into()]);
    }
    for args in &runs {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let (c1, o1) = cli(&a, 1);
        let (c4, o4) = cli(&a, 4);
        ensure(c1 == c4 && o1 == o4, format!("`{}` differs between 1 and 4 threads", a.join(" ")))?;
        ensure(c1 != 2, format!("`{}` exited 2: {}", a.join(" "), String::from_utf8_lossy(&o1)))?;
    }
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(lemma_oracle);
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(lemma_oracle);
    ensure(one == four, "membership oracle differs between pools")?;
    Ok(format!("{} CLI reports byte-identical at 1 and 4 threads; oracle tallies equal", runs.len()))
}

fn main() {
    let criteria: [(u32, &str, u64, fn() -> Check); 11] = [
        (1, "M11 maximal-subgroup data", 30, criterion_1),
        (2, "σ(M11) = 23", 60, criterion_2),
        (3, "M11 wr C2 pipeline", 60, criterion_3),
        (4, "PSL(2,11) wr C5 pipeline", 60, criterion_4),
        (5, "product-type membership oracle", 120, criterion_5),
        (6, "induced cover of A5 wr C2", 60, criterion_6),
        (7, "σ(A5) and σ(PSL(2,7))", 300, criterion_7),
        (8, "inequality sweeps", 60, criterion_8),
        (9, "main2 identity at m = 1", 1, criterion_9),
        (10, "f(n,2) trend", 10, criterion_10),
        (11, "determinism across thread counts", 600, criterion_11),
    ];
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = Vec::new();
    for (id, name, budget, f) in criteria {
        if filter.is_some_and(|k| k != id) {
            continue;
        }
        let t = Instant::now();
        let result = f();
        let took = t.elapsed();
        let over = took > Duration::from_secs(budget);
        let (ok, detail) = match result {
            Ok(d) if !over => (true, d),
            Ok(d) => (false, format!("{d}; over the {budget} s budget")),
            Err(e) => (false, e),
        };
        println!(
            "criterion {id:>2} {} [{:.2} s / {budget} s] {name}: {detail}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
        if !ok {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
