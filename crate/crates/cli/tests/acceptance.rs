//! Acceptance run: one pass/fail line per criterion, exit status 1 if any fails.
//!
//! All comparisons are exact. The only pinned tolerances are wall-clock limits.

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use iwachar::exactnum::{FFMatrix, LaurentPoly};
use iwachar::exec::Exec;
use iwachar::fixtures::{self, field_of_order, span_fixtures, Example, HEISENBERG_Z_KILLED};
use iwachar::groups::catalog::{builtin_groups, cyclic};
use iwachar::groups::{galois_orbits, hall_check, normal_p_subgroups};
use iwachar::reps::{ModelGN, Rep};
use iwachar::skewgraded::{
    build_module, presentations, rank_harness, vanishing_check, verify_key_formula, verify_main_formula,
    ModuleAnalysis, Presentation, Settings,
};

const HEISENBERG_LIMIT: Duration = Duration::from_secs(1);
const MAIN_SUITE_LIMIT: Duration = Duration::from_secs(60);
const TOTAL_LIMIT: Duration = Duration::from_secs(300);
const PROPERTY_SEED: u64 = 20_261_016;
const MIN_PROPERTY_INSTANCES: usize = 200;

/// Collects sub-check failures for one criterion.
struct Criterion {
    id: &'static str,
    title: &'static str,
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(id: &'static str, title: &'static str) -> Self {
        Criterion { id, title, checks: 0, failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn require<T>(&mut self, r: iwachar::Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    fn report(&self) -> bool {
        let ok = self.failures.is_empty();
        let status = if ok { "PASS" } else { "FAIL" };
        let extra = if self.notes.is_empty() { String::new() } else { format!("; {}", self.notes.join("; ")) };
        println!("criterion {} {status}: {} ({} checks{extra})", self.id, self.title, self.checks);
        for f in &self.failures {
            println!("    failure: {f}");
        }
        ok
    }
}

fn settings() -> Settings {
    Settings { exec: Exec::default(), ..Settings::default() }
}

fn analyse(model: &Arc<ModelGN>, pres: &Presentation) -> iwachar::Result<ModuleAnalysis> {
    let s = settings();
    ModuleAnalysis::run(&build_module(Arc::clone(model), pres, &s)?, &s)
}

/// `C2` acting on `F_q^2`, `q` even, by the unipotent matrix fixing the first
/// coordinate; its catalog includes the quotient by that fixed vector.
fn unipotent_c2(q: u64) -> iwachar::Result<Example> {
    let field = field_of_order(2, q)?;
    let mat = FFMatrix::from_rows(vec![vec![1, 0], vec![1, 1]], 2);
    let model = ModelGN::new(Rep::new(Arc::new(cyclic(2)), field, 2, vec![mat])?)?;
    let sym = presentations::symmetric_algebra(&model);
    let catalog = vec![
        ("free", presentations::free(0)),
        ("sym", sym.clone()),
        ("sym_shift1", sym.shifted(1)),
        ("trivial", presentations::line(&model, &[iwachar::exactnum::FFElem::ONE])),
        ("sym_mod_fixed", presentations::kill_variables(sym, 2, &[0])),
    ];
    Ok(Example {
        name: format!("unipotent_c2({q})"),
        model: Arc::new(model),
        catalog: catalog
            .into_iter()
            .map(|(n, p)| fixtures::CatalogEntry { name: n.to_string(), presentation: p })
            .collect(),
    })
}

/// Models over `F2, F3, F4` with abelian and non-abelian `H`.
fn main_catalog() -> iwachar::Result<Vec<Example>> {
    Ok(vec![
        fixtures::dihedral_abelian(3, 3)?,
        fixtures::klein_four(3, 3)?,
        fixtures::s3_reflection(2)?,
        fixtures::s3_reflection(3)?,
        fixtures::s3_reflection(4)?,
        fixtures::heisenberg(1, 3, 3)?,
        unipotent_c2(2)?,
        unipotent_c2(4)?,
    ])
}

struct Analysed {
    example: String,
    module: String,
    model: Arc<ModelGN>,
    analysis: ModuleAnalysis,
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::new("1", "Heisenberg fixture: Psi, centralizers, filtration counts, two orbits");
    let start = Instant::now();
    for r in 1..=3usize {
        for p in [3u64, 5] {
            let Some(ex) = c.require(fixtures::heisenberg(r, p, p), "heisenberg fixture") else { continue };
            let model = &ex.model;
            let m = model.m();
            let expected =
                LaurentPoly::from_ints(m, 0, &[1, 1]).pow(2 * r as u32).mul(&LaurentPoly::from_ints(m, 0, &[1, -1]));
            let g = model.orbits().representatives().into_iter().find(|&x| x != model.group().identity());
            c.check(model.orbits().len() == 2, || format!("r={r} p={p}: {} orbits", model.orbits().len()));
            let Some(g) = g else { continue };
            if let Some(psi) = c.require(model.psi(g), "psi") {
                c.check(psi == expected, || format!("r={r} p={p}: psi(g) = {psi}"));
            }
            let id = model.group().identity();
            c.check(model.centralizer_dim(g) == Ok(1), || format!("r={r} p={p}: dim C(g)"));
            c.check(model.centralizer_dim(id) == Ok(2 * r + 1), || format!("r={r} p={p}: dim C(1)"));
            for i in 0..=(2 * r as i64 + 2) {
                let want = if i == 0 {
                    0
                } else if i <= 2 * r as i64 {
                    1
                } else {
                    2
                };
                if let Some(f) = c.require(model.s_filtration(i), "s_filtration") {
                    c.check(f.count == want, || format!("r={r} p={p} i={i}: count {} != {want}", f.count));
                }
            }
            if let Some(orbits) = c.require(galois_orbits(model.group(), p, p), "galois_orbits") {
                c.check(orbits.len() == 2, || format!("r={r} p={p}: galois_orbits gave {}", orbits.len()));
            }
        }
    }
    let elapsed = start.elapsed();
    c.check(elapsed < HEISENBERG_LIMIT, || format!("took {elapsed:?}, limit {HEISENBERG_LIMIT:?}"));
    c.note(format!("{elapsed:.2?}"));
    c
}

fn analyse_catalog(c: &mut Criterion) -> Vec<Analysed> {
    let mut out = Vec::new();
    let Some(examples) = c.require(main_catalog(), "catalog") else { return out };
    for ex in examples {
        for entry in &ex.catalog {
            let what = format!("{}/{}", ex.name, entry.name);
            if let Some(analysis) = c.require(analyse(&ex.model, &entry.presentation), &what) {
                out.push(Analysed {
                    example: ex.name.clone(),
                    module: entry.name.clone(),
                    model: Arc::clone(&ex.model),
                    analysis,
                });
            }
        }
    }
    out
}

fn criterion_2(catalog: &[Analysed], elapsed: Duration) -> Criterion {
    let mut c = Criterion::new("2", "main formula on the catalog");
    let mut triples = 0;
    for a in catalog {
        if let Some(checks) = c.require(verify_main_formula(&a.analysis), "verify_main_formula") {
            for chk in checks {
                triples += 1;
                c.check(chk.holds, || {
                    format!("{}/{} at {}: {} != {}", a.example, a.module, chk.element, chk.lhs, chk.rhs)
                });
            }
        }
    }
    c.check(triples >= 12, || format!("only {triples} triples"));
    c.check(elapsed < MAIN_SUITE_LIMIT, || format!("took {elapsed:?}, limit {MAIN_SUITE_LIMIT:?}"));
    let fields: std::collections::BTreeSet<u64> = catalog.iter().map(|a| a.model.q()).collect();
    c.note(format!("{triples} triples over GF(q) for q in {fields:?}, {elapsed:.2?}"));
    c
}

fn criterion_3(catalog: &[Analysed]) -> Criterion {
    let mut c = Criterion::new("3", "key identity as a cleared-denominator Laurent identity");
    for a in catalog {
        if let Some(checks) = c.require(verify_key_formula(&a.analysis), "verify_key_formula") {
            for chk in checks {
                c.check(chk.holds, || {
                    format!("{}/{} at {}: {} != {}", a.example, a.module, chk.element, chk.lhs, chk.rhs)
                });
            }
        }
    }
    c
}

fn criterion_4(catalog: &[Analysed]) -> Criterion {
    let mut c = Criterion::new("4", "vanishing above the module dimension, and rho of Sym(V/kz) is zero");
    let mut required = 0;
    for a in catalog {
        if let Some(entries) = c.require(vanishing_check(&a.model, &a.analysis), "vanishing_check") {
            for e in entries {
                required += usize::from(e.required);
                c.check(e.holds, || format!("{}/{} at {}: rho = {}", a.example, a.module, e.element, e.rho));
            }
        }
    }
    for (r, p) in [(1usize, 3u64), (1, 5), (2, 3)] {
        let Some(ex) = c.require(fixtures::heisenberg(r, p, p), "heisenberg") else { continue };
        let Some(pres) = c.require(ex.entry("sym_mod_z").cloned(), "sym_mod_z") else { continue };
        if let Some(a) = c.require(analyse(&ex.model, &pres), "sym_mod_z analysis") {
            c.check(a.rho.iter().all(|v| v.is_zero()), || format!("r={r} p={p}: rho = {:?}", a.rho));
            c.check(a.dimension == 2 * r as i64, || format!("r={r} p={p}: dimension {}", a.dimension));
        }
    }
    c.note(format!("{required} forced zeros"));
    c
}

fn rank_of(c: &mut Criterion, ex: &Example, names: &[&str], i: i64) -> Option<(usize, usize)> {
    let mut analyses = Vec::new();
    for name in names {
        let pres = c.require(ex.entry(name).cloned(), name)?;
        analyses.push(c.require(analyse(&ex.model, &pres), name)?);
    }
    let report = c.require(rank_harness(&ex.model, &analyses, i), "rank_harness")?;
    c.check(report.holds, || format!("{}: rank {} > bound {} at i={i}", ex.name, report.rank, report.bound));
    Some((report.rank, report.bound))
}

fn criterion_5(catalog: &[Analysed]) -> Criterion {
    let mut c = Criterion::new("5", "rank bounds, attained and strict cases");
    // The bound on every run: all catalog modules of dimension <= i, for every i.
    let mut by_example: std::collections::BTreeMap<&str, Vec<&Analysed>> = Default::default();
    for a in catalog {
        by_example.entry(a.example.as_str()).or_default().push(a);
    }
    for (name, entries) in &by_example {
        let model = &entries[0].model;
        for i in 0..=model.d() as i64 {
            let chosen: Vec<ModuleAnalysis> =
                entries.iter().filter(|a| a.analysis.dimension <= i).map(|a| a.analysis.clone()).collect();
            if let Some(report) = c.require(rank_harness(model, &chosen, i), "rank_harness") {
                c.check(report.holds, || format!("{name} i={i}: rank {} > bound {}", report.rank, report.bound));
            }
        }
    }

    if let Some(ex) = c.require(fixtures::dihedral_abelian(3, 3), "dihedral_abelian") {
        if let Some((rank, bound)) = rank_of(&mut c, &ex, &["trivial", "sign"], 0) {
            c.check(rank == 1 && bound == 1, || format!("dihedral_abelian i=0: rank {rank}, bound {bound}"));
        }
    }
    for ex in [fixtures::dihedral_abelian(3, 3), fixtures::dihedral_abelian(5, 5), fixtures::heisenberg(1, 3, 3)] {
        let Some(ex) = c.require(ex, "C2 model") else { continue };
        let d = ex.model.d() as i64;
        let orbits = ex.model.orbits().len();
        if let Some((rank, bound)) = rank_of(&mut c, &ex, &["free", "sym", "trivial"], d) {
            c.check(rank == orbits && bound == orbits, || format!("{} i=d: rank {rank}, bound {bound}", ex.name));
        }
    }
    for r in [1usize, 2] {
        let Some(ex) = c.require(fixtures::heisenberg(r, 3, 3), "heisenberg") else { continue };
        if let Some((rank, bound)) = rank_of(&mut c, &ex, &HEISENBERG_Z_KILLED, r as i64) {
            c.check(rank == 0 && bound == 1, || format!("heisenberg r={r} i=r: rank {rank}, bound {bound}"));
        }
    }
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::new("6", "span ranks equal the stated orbit counts");
    let Some(fixtures) = c.require(span_fixtures(), "span fixtures") else { return c };
    let mut seen = Vec::new();
    for f in fixtures {
        if let Some((rank, orbits)) = c.require(f.measure(Exec::default()), &f.name) {
            seen.push(format!("{} {rank}/{orbits}", f.name));
            c.check(rank == f.stated_count && orbits == f.stated_count, || {
                format!("{}: rank {rank}, orbit count {orbits}, stated {}", f.name, f.stated_count)
            });
        }
    }
    c.note(format!("rank/orbits: {}", seen.join(", ")));
    c
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::new("7", "Hall bijection for every normal p-subgroup, |G| <= 48, p in {2, 3}");
    let mut pairs = 0;
    for (name, group) in builtin_groups().into_iter().filter(|(_, g)| g.order() <= 48) {
        for p in [2u64, 3] {
            for u in normal_p_subgroups(&group, p) {
                pairs += 1;
                let r = hall_check(&group, &u, p, p);
                c.check(r.is_ok(), || format!("{name}, p={p}, |U|={}: {:?}", u.order(), r.err()));
            }
        }
    }
    c.note(format!("{pairs} pairs"));
    c
}

fn criterion_8(catalog: &[Analysed]) -> Criterion {
    let mut c = Criterion::new("8", "rational zeta with denominator exponent = dimension, re-expanding over 2x guard");
    for a in catalog {
        let an = &a.analysis;
        let top = an.tor.top;
        let guard = i64::from(an.guard);
        for (r, zeta) in an.zeta.iter().enumerate() {
            let who = || format!("{}/{} at {}", a.example, a.module, an.representatives[r]);
            c.check(i64::from(zeta.den_exp) == an.dimension, || format!("{}: den_exp {}", who(), zeta.den_exp));
            let expanded = zeta.expand(top);
            let window = |s: &LaurentPoly| s.window(top - 2 * guard + 1, top);
            c.check(window(&expanded) == window(&an.series[r]), || format!("{}: guard window mismatch", who()));
            c.check(expanded == an.series[r], || format!("{}: expansion mismatch", who()));
        }
    }
    c
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::new("9", "headless property corpus via the command-line tool");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_iwachar"))
            .args(["verify", "--which", "properties", "--seed", &PROPERTY_SEED.to_string()])
            .output()
    };
    let (first, second) = match (run(), run()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            c.check(false, || format!("could not run the binary: {e}"));
            return c;
        }
    };
    c.check(first.status.code() == Some(0), || format!("exit status {:?}", first.status.code()));
    c.check(first.stdout == second.stdout, || "output differs between runs with the same seed".into());
    let doc: serde_json::Value = match serde_json::from_slice(&first.stdout) {
        Ok(v) => v,
        Err(e) => {
            c.check(false, || format!("unparseable output: {e}"));
            return c;
        }
    };
    let count = |names: &[&str]| -> usize {
        doc["checks"]
            .as_array()
            .into_iter()
            .flatten()
            .filter(|ch| names.contains(&ch["check"].as_str().unwrap_or_default()))
            .map(|ch| ch["instances"].as_u64().unwrap_or(0) as usize)
            .sum()
    };
    let exactnum =
        count(&["field_axioms", "lift_is_homomorphism", "reconstruct_inverts_expand", "eval_matches_substitution"]);
    let groups = count(&["p_regular_part_unique", "regular_set_is_image", "orbits_are_invariant", "hall_bijection"]);
    c.check(exactnum >= MIN_PROPERTY_INSTANCES, || format!("{exactnum} exactnum instances"));
    c.check(groups >= MIN_PROPERTY_INSTANCES, || format!("{groups} groups instances"));
    c.check(doc["passed"] == serde_json::Value::Bool(true), || "corpus reported failures".into());
    c.note(format!("seed {PROPERTY_SEED}: {exactnum} exactnum, {groups} groups instances"));
    c
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut results = Vec::new();
    let timed = |results: &mut Vec<Criterion>, f: &dyn Fn() -> Criterion| {
        let t = Instant::now();
        let mut c = f();
        c.note(format!("ran in {:.2?}", t.elapsed()));
        results.push(c);
    };
    timed(&mut results, &criterion_1);

    let mut setup = Criterion::new("2-5,8", "catalog analysis");
    let t = Instant::now();
    let catalog = analyse_catalog(&mut setup);
    let mut c2 = criterion_2(&catalog, t.elapsed());
    c2.failures.extend(setup.failures);
    results.push(c2);
    timed(&mut results, &|| criterion_3(&catalog));
    timed(&mut results, &|| criterion_4(&catalog));
    timed(&mut results, &|| criterion_5(&catalog));
    timed(&mut results, &criterion_6);
    timed(&mut results, &criterion_7);
    timed(&mut results, &|| criterion_8(&catalog));
    timed(&mut results, &criterion_9);

    // Report every criterion before deciding.
    let verdicts: Vec<bool> = results.iter().map(Criterion::report).collect();
    let all = verdicts.iter().all(|&ok| ok);
    let elapsed = start.elapsed();
    let in_time = elapsed < TOTAL_LIMIT;
    println!("total {elapsed:.2?} (limit {TOTAL_LIMIT:?}): {}", if in_time { "PASS" } else { "FAIL" });
    if all && in_time {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
