//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use prgraph::groups::abelian::{AbelianGroup, Residues};
use prgraph::groups::Descriptor;
use prgraph::lemmas::{
    apply_exponents, brute_force_exponents, gaschuetz_exponents, greedy_line_subset, greedy_subspace_subset,
    invariant_lines, invariant_subspaces, Matrix,
};
use prgraph::pragraph::census::components;
use prgraph::pragraph::search::{connect_to_canonical, to_redundant, SearchLimits};
use prgraph::tsystems::check_component_tsystem_map;
use prgraph::walker::{random_start, sample_many, uniformity_report, Chain, WalkConfig};
use prgraph::{build_group, make_field, FieldCtx, FiniteGroupTable};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Time budgets.
const BUDGET_PSL2_5: Duration = Duration::from_secs(120);
const BUDGET_PSL2_7: Duration = Duration::from_secs(15 * 60);
const BUDGET_PLAIN_VS_EXTENDED: Duration = Duration::from_secs(10 * 60);
const BUDGET_WITNESS: Duration = Duration::from_secs(1);
const BUDGET_TSYSTEMS: Duration = Duration::from_secs(20 * 60);
const BUDGET_GASCHUETZ: Duration = Duration::from_secs(60);
const BUDGET_CENTRALIZER: Duration = Duration::from_secs(60);

/// Empirical TV distance of the pinned walk run and its tolerance.
const PINNED_TV: f64 = 0.022_01;
const PINNED_TV_TOLERANCE: f64 = 5e-5;

/// Largest brute-force oracle search for the exponent criterion.
const GASCHUETZ_ORACLE_LIMIT: u64 = 10_000;

fn group(spec: &str) -> FiniteGroupTable {
    build_group(spec).unwrap()
}

fn within(start: Instant, budget: Duration) -> Result<String, String> {
    let t = start.elapsed();
    if t <= budget {
        Ok(format!("{:.2}s", t.as_secs_f64()))
    } else {
        Err(format!("took {:.1}s, budget {:.0}s", t.as_secs_f64(), budget.as_secs_f64()))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn connected_psl2() -> Result<String, String> {
    let mut notes = Vec::new();
    for (spec, budget) in [("psl2:5", BUDGET_PSL2_5), ("psl2:7", BUDGET_PSL2_7)] {
        let start = Instant::now();
        let r = components(&group(spec), 3, true).map_err(|e| e.to_string())?;
        ensure(r.is_connected(), || format!("{spec}: {} components", r.component_count))?;
        let t = within(start, budget)?;
        notes.push(format!("{spec}: |V_3| = {}, 1 component, {t}", r.vertex_count));
    }
    Ok(notes.join("; "))
}

/// Every buildable group of order at most 60 with `d(G) + 1 <= 3`.
fn small_groups() -> Vec<String> {
    let mut specs: Vec<String> = (1..=60).map(|n| format!("ab:{n}")).collect();
    for a in 2..=7u32 {
        for b in (a..=60 / a).filter(|b| b % a == 0) {
            specs.push(format!("ab:{a},{b}"));
        }
    }
    for s in ["sym:3", "sym:4", "alt:4", "alt:5", "psl2:2", "psl2:3", "psl2:4", "psl2:5", "sl2:2", "sl2:3", "pgl2:2", "pgl2:3"] {
        specs.push(s.to_string());
    }
    specs
}

fn plain_vs_extended() -> Result<String, String> {
    let start = Instant::now();
    let mut checked = 0;
    for spec in small_groups() {
        let g = group(&spec);
        assert!(g.order() <= 60, "{spec} is too large");
        let k = g.min_generators() + 1;
        if k > 3 {
            continue;
        }
        let plain = components(&g, k, false).map_err(|e| e.to_string())?;
        let ext = components(&g, k, true).map_err(|e| e.to_string())?;
        ensure(plain.is_connected() == ext.is_connected(), || {
            format!(
                "{spec} k={k}: plain {} vs extended {} components",
                plain.component_count, ext.component_count
            )
        })?;
        checked += 1;
    }
    let t = within(start, BUDGET_PLAIN_VS_EXTENDED)?;
    Ok(format!("{checked} groups agree, {t}"))
}

/// `det(x, y)` up to sign for a pair in `Z/5 x Z/5`.
fn det_class(g: &FiniteGroupTable, t: &[u32]) -> u32 {
    let v = |x: u32| match g.descriptor(x) {
        Descriptor::Residues(r) => r.clone(),
        _ => unreachable!(),
    };
    let (a, b) = (v(t[0]), v(t[1]));
    let d = (a[0] * b[1] + 5 * 5 - a[1] * b[0]) % 5;
    d.min(5 - d)
}

fn disconnection_witness() -> Result<String, String> {
    let start = Instant::now();
    let g = group("ab:5,5");
    let map = prgraph::pragraph::census::ComponentMap::build(&g, 2, true).map_err(|e| e.to_string())?;
    ensure(map.sizes() == [240, 240], || format!("sizes {:?}", map.sizes()))?;
    // every component carries one determinant class, and the classes differ
    let mut class_of = [None, None];
    for key in map.vertices().keys() {
        let t = map.vertices().decode(key);
        let c = map.component_of(&t).unwrap() as usize;
        let d = det_class(&g, &t);
        match class_of[c] {
            None => class_of[c] = Some(d),
            Some(e) => ensure(e == d, || format!("component {c} mixes det classes {e} and {d}"))?,
        }
    }
    ensure(class_of[0] != class_of[1], || "components share a det class".into())?;
    let t = within(start, BUDGET_WITNESS)?;
    Ok(format!("[240, 240], det classes {{±1}} / {{±2}} separate them, {t}"))
}

fn tsystem_correspondence() -> Result<String, String> {
    let start = Instant::now();
    let cases = [("sym:3", 2..=4), ("alt:4", 2..=4), ("ab:5,5", 2..=4), ("psl2:5", 2..=3)];
    let mut notes = Vec::new();
    let mut biconditionals = 0;
    for (spec, ks) in cases {
        let g = group(spec);
        for k in ks {
            let v = check_component_tsystem_map(&g, k).map_err(|e| e.to_string())?;
            ensure(v.consistent && v.well_defined && v.surjective, || format!("{spec} k={k}: {v:?}"))?;
            ensure(v.tsystem_count <= v.component_count, || format!("{spec} k={k}: more systems than components"))?;
            if v.biconditional_applies {
                ensure(v.biconditional_holds == Some(true), || format!("{spec} k={k}: biconditional fails"))?;
                biconditionals += 1;
            }
            notes.push(format!("{spec}/{k}:{}c{}t", v.component_count, v.tsystem_count));
        }
    }
    let t = within(start, BUDGET_TSYSTEMS)?;
    Ok(format!("{} ({biconditionals} with k >= 2d), {t}", notes.join(" ")))
}

fn redundancy() -> Result<String, String> {
    let g = group("psl2:5");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let limits = SearchLimits::default();
    let mut longest = 0;
    for _ in 0..1000 {
        let t = random_start(&g, 3, &mut rng).map_err(|e| e.to_string())?;
        let out = to_redundant(&g, &t, false, limits).map_err(|e| e.to_string())?;
        let w = out.word().ok_or_else(|| format!("no redundant tuple from {t:?}"))?;
        let end = w.apply(&g, &t).map_err(|e| e.to_string())?;
        ensure(end.contains(&g.identity()), || format!("word from {t:?} does not reach a redundant tuple"))?;
        longest = longest.max(w.len());
    }
    let pair = random_start(&g, 2, &mut rng).map_err(|e| e.to_string())?;
    let mut routes = HashSet::new();
    for k in [3, 4] {
        for _ in 0..20 {
            let t = random_start(&g, k, &mut rng).map_err(|e| e.to_string())?;
            let c = connect_to_canonical(&g, &t, (pair[0], pair[1]), limits).map_err(|e| e.to_string())?;
            let mut target = vec![g.identity(); k - 2];
            target.extend(&pair);
            ensure(c.target == target, || format!("unexpected target {:?}", c.target))?;
            let w = c.outcome.word().ok_or_else(|| format!("k={k}: {t:?} not connected to canonical form"))?;
            ensure(w.apply(&g, &t).map_err(|e| e.to_string())? == target, || "canonical word does not replay".into())?;
            routes.insert(format!("{:?}", c.route));
        }
    }
    let mut routes: Vec<String> = routes.into_iter().collect();
    routes.sort();
    Ok(format!(
        "1000/1000 redundant (longest word {longest}); 40 canonical connections via {}",
        routes.join(", ")
    ))
}

fn gaschuetz() -> Result<String, String> {
    let start = Instant::now();
    let shapes: [&[u32]; 6] = [&[2, 4, 8], &[3, 9], &[30], &[6, 6], &[2, 2, 2], &[5, 25]];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut oracle_checked = 0;
    for i in 0..200 {
        let k = AbelianGroup::new(shapes[i % shapes.len()].to_vec()).unwrap();
        let n = k.rank() + rng.random_range(0..3usize);
        let mut pick = || k.from_index(rng.random_range(0..k.order()));
        let a = pick();
        let b: Vec<Residues> = (0..n).map(|_| pick()).collect();
        let s = gaschuetz_exponents(&k, &a, &b).map_err(|e| e.to_string())?;
        let mut all = vec![a.clone()];
        all.extend(b.iter().cloned());
        let new = apply_exponents(&k, &a, &b, &s.exponents);
        ensure(k.span(&new) == k.span(&all), || format!("{:?}: exponents fail", k.factors()))?;
        if let Ok(found) = brute_force_exponents(&k, &a, &b, GASCHUETZ_ORACLE_LIMIT) {
            ensure(found.is_some(), || "oracle finds no exponents".into())?;
            oracle_checked += 1;
        }
    }
    let t = within(start, BUDGET_GASCHUETZ)?;
    Ok(format!("200/200 verified over {} shapes, {oracle_checked} agree with the oracle, {t}", shapes.len()))
}

/// Uniform invertible matrix, optionally upper triangular.
fn random_matrix(f: &FieldCtx, n: usize, upper: bool, rng: &mut ChaCha8Rng) -> Matrix {
    let q = f.order();
    loop {
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|i| (0..n).map(|j| if upper && j < i { 0 } else { rng.random_range(0..q) }).collect())
            .collect();
        let m = Matrix::from_indices(f, &rows).unwrap();
        if !m.det(f).is_zero() {
            return m;
        }
    }
}

/// Random invertible sets biased toward shared structure: sometimes powers
/// of one matrix, sometimes upper triangular.
fn random_set(f: &FieldCtx, n: usize, rng: &mut ChaCha8Rng) -> Vec<Matrix> {
    let size = rng.random_range(1..5usize);
    match rng.random_range(0..3) {
        0 => (0..size).map(|_| random_matrix(f, n, false, rng)).collect(),
        1 => {
            let a = random_matrix(f, n, false, rng);
            let mut p = a.clone();
            let mut out = Vec::new();
            for _ in 0..size {
                out.push(p.clone());
                p = p.mul(f, &a);
            }
            out
        }
        _ => (0..size).map(|_| random_matrix(f, n, true, rng)).collect(),
    }
}

fn greedy_lemmas() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let qs = [2u32, 3, 4, 5, 7];
    let mut nonempty = 0;
    for case in 0..100 {
        let q = qs[case % qs.len()];
        let (p, e) = if q == 4 { (2, 2) } else { (q, 1) };
        let f = make_field(p, e).unwrap();
        let n = 1 + case % 3;
        let t = random_set(&f, n, &mut rng);
        let pick = |idx: &[usize]| -> Vec<Matrix> { idx.iter().map(|&i| t[i].clone()).collect() };

        let lines = greedy_line_subset(&f, n, &t).map_err(|e| e.to_string())?;
        ensure(lines.is_valid(), || format!("case {case}: line trace {:?}", lines.w_trace))?;
        let s = pick(&lines.indices);
        ensure(
            invariant_lines(&f, n, &s).unwrap() == invariant_lines(&f, n, &t).unwrap(),
            || format!("case {case}: invariant lines differ"),
        )?;

        let subs = greedy_subspace_subset(&f, n, &t).map_err(|e| e.to_string())?;
        ensure(subs.is_valid(), || format!("case {case}: subspace trace {:?}", subs.w_trace))?;
        let s = pick(&subs.indices);
        ensure(
            invariant_subspaces(&f, n, &s).unwrap() == invariant_subspaces(&f, n, &t).unwrap(),
            || format!("case {case}: invariant subspaces differ"),
        )?;
        nonempty += usize::from(!lines.indices.is_empty());
    }
    Ok(format!("100/100 sets: strict descent, w(S) = w(T), lines and subspaces match ({nonempty} nonempty S)"))
}

fn centralizers() -> Result<String, String> {
    let start = Instant::now();
    let mut notes = Vec::new();
    for q in [5u64, 7, 9, 11, 13] {
        let g = group(&format!("psl2:{q}"));
        let gcd = if q % 2 == 1 { 2 } else { 1 };
        let allowed = [(q - 1) / gcd, (q + 1) / gcd];
        let mut seen = 0;
        for x in 0..g.order() as u32 {
            if !g.is_regular_semisimple(x).unwrap() {
                continue;
            }
            let c = g.torus_centralizer(x).unwrap().len() as u64;
            ensure(allowed.contains(&c), || format!("psl2:{q}: element {x} has centralizer order {c}"))?;
            seen += 1;
        }
        notes.push(format!("q={q}: {seen}"));
    }
    let t = within(start, BUDGET_CENTRALIZER)?;
    Ok(format!("regular semisimple elements checked ({}), {t}", notes.join(", ")))
}

fn walker() -> Result<String, String> {
    let g = group("alt:5");
    let cfg = WalkConfig::new(3, 0, 9);
    let mut chain = Chain::new(&g, &cfg, 0, None).map_err(|e| e.to_string())?;
    for step in 0..1_000_000u32 {
        chain.step();
        ensure(g.is_generating(chain.state()), || format!("left V_3 at step {step}"))?;
    }
    let cfg = WalkConfig::new(3, 10_000, 42);
    let run = || -> Result<String, String> {
        let (samples, _) = sample_many(&g, &cfg, 100_000).map_err(|e| e.to_string())?;
        let stats = uniformity_report(&samples, &g).map_err(|e| e.to_string())?;
        Ok(serde_json::to_string(&stats).unwrap())
    };
    let (a, b) = (run()?, run()?);
    ensure(a == b, || "same seed gave different stats".into())?;
    let stats: serde_json::Value = serde_json::from_str(&a).unwrap();
    let tv = stats["tv_to_uniform"].as_f64().unwrap();
    ensure((tv - PINNED_TV).abs() <= PINNED_TV_TOLERANCE, || format!("TV {tv:.6} drifted from {PINNED_TV}"))?;
    Ok(format!("1e6 steps stay in V_3; stats reproducible; TV {tv:.5} (burn-in 1e4, 1e5 samples, seed 42)"))
}

type Check = fn() -> Result<String, String>;

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("connectivity of X~_3 for psl2:5 and psl2:7", connected_psl2),
        ("plain and extended graphs agree for |G| <= 60", plain_vs_extended),
        ("disconnection witness for ab:5,5", disconnection_witness),
        ("T-system correspondence", tsystem_correspondence),
        ("redundancy and canonical form", redundancy),
        ("Gaschuetz exponents", gaschuetz),
        ("greedy line and subspace selection", greedy_lemmas),
        ("regular semisimple centralizer orders", centralizers),
        ("walker properties", walker),
    ];
    let only: Option<usize> = std::env::args().nth(1).and_then(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {n} {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {n} {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
