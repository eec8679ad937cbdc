//! Acceptance run: one line per criterion, nonzero exit on any failure.
//! `cargo test --test acceptance`; about half a minute on one core.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use iquantum::cartan::CartanDatum;
use iquantum::cli::{run_suite, GridKind, RunSpec, SUITES};
use iquantum::drinfeld::{derivative_rank, verify_classical_suite, ClassicalGrid, DoubleAlgebra, HalfComb, ZeroOracle};
use iquantum::iqg::{
    check_braid_experimental, verify_recursion, verify_serre_minimal, verify_support_lemmas, verify_vanishing, BraidGrid,
    RecursionGrid, SerreMinimalGrid, SupportGrid, VanishingGrid,
};
use iquantum::qidentities::{verify_appb_suite, verify_g_suite, verify_t_suite, AppBGrid, GGrid, TGrid};
use iquantum::qscalar::QScalar;
use iquantum::report::Report;
use iquantum::udot::{verify_idp_expansion, UdotGrid};
use iquantum::SuiteOptions;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Line {
    ok: bool,
    detail: String,
    elapsed: Duration,
}

fn opts() -> SuiteOptions {
    let jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    SuiteOptions { jobs, mutate: false }
}

fn suite(budget_s: u64, f: impl FnOnce() -> Report) -> Line {
    let t = Instant::now();
    let r = f();
    let elapsed = t.elapsed();
    let mut detail = format!("{} checked={} failed={}", r.suite, r.checked, r.failed);
    let in_time = elapsed.as_secs() < budget_s;
    if !in_time {
        detail.push_str(&format!(" over budget {budget_s}s"));
    }
    if let Some(f) = r.failures.first() {
        detail.push_str(&format!(" first witness {} {}", f.identity, f.params));
    }
    Line { ok: r.passed() && in_time, detail, elapsed }
}

fn vanishing_with_notes() -> Line {
    let t = Instant::now();
    let r = verify_vanishing(&VanishingGrid::default(), &opts());
    let below = r.notes.iter().filter(|n| n.status == "nonzero").count();
    let ok = r.passed() && below > 0 && t.elapsed().as_secs() < 180;
    Line {
        ok,
        detail: format!("{} checked={} failed={} reported nonzero below range: {below}", r.suite, r.checked, r.failed),
        elapsed: t.elapsed(),
    }
}

fn random_word(rng: &mut ChaCha8Rng, len: usize, rank: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..rank) as u8).collect()
}

/// Random flanking words around the Serre elements must be killed by the zero test,
/// the same flanks around a single word must not, and derivative ranks match
/// the Kostant partition counts.
fn oracle_soundness() -> Line {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e44e);
    let mut bad = Vec::new();
    let data = [CartanDatum::a2(), CartanDatum::b2()];
    let mut samples = 0;
    for s in 0..200 {
        let d = &data[s % 2];
        let alg = DoubleAlgebra::new(d);
        let mut oracle = ZeroOracle::new(d);
        let (i, j) = if rng.gen_bool(0.5) { (0, 1) } else { (1, 0) };
        let total = rng.gen_range(0..=8);
        let left = rng.gen_range(0..=total);
        let x = HalfComb::word(&random_word(&mut rng, left, 2), QScalar::one());
        let y = HalfComb::word(&random_word(&mut rng, total - left, 2), QScalar::one());
        let serre = alg.serre_element(i, j);
        let z = x.mul(&serre).mul(&y);
        if !oracle.half_is_zero(&z) {
            bad.push(format!("sample {s}: flanked S_{}{} not zero", i + 1, j + 1));
        }
        if s % 10 == 0 {
            let n = (1 - d.a(i, j)) as usize;
            let mut w = vec![i as u8; n];
            w.insert(rng.gen_range(0..=n), j as u8);
            let control = x.mul(&serre.add(&HalfComb::word(&w, QScalar::one()))).mul(&y);
            if oracle.half_is_zero(&control) {
                bad.push(format!("sample {s}: perturbed control reported zero"));
            }
        }
        samples += 1;
    }
    let ra = derivative_rank(&CartanDatum::a2(), &[2, 1]);
    let rb = derivative_rank(&CartanDatum::b2(), &[2, 1]);
    if ra != 2 || rb != 3 {
        bad.push(format!("weight (2,1) ranks A2 {ra} B2 {rb}, want 2 and 3"));
    }
    let ok = bad.is_empty() && t.elapsed().as_secs() < 60;
    let detail = if bad.is_empty() {
        format!("{samples} flanked samples, ranks A2 {ra} B2 {rb}")
    } else {
        bad.join("; ")
    };
    Line { ok, detail, elapsed: t.elapsed() }
}

fn braid_a2() -> Line {
    let t = Instant::now();
    let grid = BraidGrid { cases: vec![(-1, -1, 0), (-1, -1, 1)], e: vec![1], ..Default::default() };
    let r = check_braid_experimental(&grid, &opts());
    let count = |item: &str, status: &str| r.notes.iter().filter(|n| n.item == item && n.status == status).count();
    let inverse = count("mutually-inverse", "pass");
    let relations = count("relations-preserved", "pass");
    let expected = r.notes.len() / 2;
    let ok = !r.gating && r.failed == 0 && expected > 0 && inverse == expected && relations == expected;
    Line {
        ok,
        detail: format!("A2 e=+1: mutually-inverse pass {inverse}/{expected}, relations-preserved pass {relations}/{expected}, gating={}", r.gating),
        elapsed: t.elapsed(),
    }
}

fn mutations() -> Line {
    let t = Instant::now();
    let spec = RunSpec { grid: GridKind::Quick, opts: SuiteOptions { mutate: true, ..opts() }, ..Default::default() };
    let mut missed = Vec::new();
    for s in SUITES {
        match run_suite(s, &spec) {
            Ok(r) if r.failed > 0 => {}
            Ok(_) => missed.push(s.to_string()),
            Err(e) => missed.push(format!("{s} ({e})")),
        }
    }
    let detail = if missed.is_empty() {
        format!("all {} suites detect their mutation", SUITES.len())
    } else {
        format!("undetected: {}", missed.join(", "))
    };
    Line { ok: missed.is_empty(), detail, elapsed: t.elapsed() }
}

fn main() -> ExitCode {
    let o = opts();
    let criteria: Vec<(&str, Box<dyn FnOnce() -> Line>)> = vec![
        ("q-identity G suite", Box::new(|| suite(60, || verify_g_suite(&GGrid::default(), &o)))),
        ("T suite", Box::new(|| suite(60, || verify_t_suite(&TGrid::default(), &o)))),
        ("auxiliary q-binomial lemmas", Box::new(|| suite(30, || verify_appb_suite(&AppBGrid::default(), &o)))),
        ("classical higher Serre layer", Box::new(|| suite(180, || verify_classical_suite(&ClassicalGrid::default(), &o)))),
        ("minimal ıSerre relations", Box::new(|| suite(300, || verify_serre_minimal(&SerreMinimalGrid::default(), &o)))),
        ("ıSerre recursions", Box::new(|| suite(300, || verify_recursion(&RecursionGrid::default(), &o)))),
        ("ıSerre vanishing", Box::new(vanishing_with_notes)),
        ("support lemmas", Box::new(|| suite(180, || verify_support_lemmas(&SupportGrid::default(), &o)))),
        ("rank-one modified algebra", Box::new(|| suite(60, || verify_idp_expansion(&UdotGrid::default(), &o)))),
        ("zero-test soundness", Box::new(oracle_soundness)),
        ("braid report (non-gating)", Box::new(braid_a2)),
        ("mutation sensitivity", Box::new(mutations)),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.into_iter().enumerate() {
        let line = f();
        if !line.ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<4} {:<30} {:>8.1}s  {}",
            k + 1,
            if line.ok { "PASS" } else { "FAIL" },
            name,
            line.elapsed.as_secs_f64(),
            line.detail
        );
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
