//! Acceptance criteria, one line each. Run with
//! `cargo test -p brkit-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use brkit::verify::{run_suite, CheckRecord, Report, SuiteConfig};

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    note: String,
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn suite(name: &str, tweak: impl FnOnce(&mut SuiteConfig)) -> (Report, Duration) {
    let mut cfg = SuiteConfig::defaults(name).expect("known suite");
    cfg.jobs = jobs();
    tweak(&mut cfg);
    let start = Instant::now();
    let report = run_suite(&cfg).unwrap_or_else(|e| panic!("suite {name}: {e}"));
    (report, start.elapsed())
}

fn tally<'a>(records: impl Iterator<Item = &'a CheckRecord>) -> (usize, usize, Option<&'a CheckRecord>) {
    let mut total = 0;
    let mut ok = 0;
    let mut first_bad = None;
    for r in records {
        total += 1;
        if r.pass {
            ok += 1;
        } else if first_bad.is_none() {
            first_bad = Some(r);
        }
    }
    (total, ok, first_bad)
}

fn judge(id: u32, name: &'static str, records: &[&CheckRecord], took: Duration, limit: Duration) -> Outcome {
    let (total, ok, bad) = tally(records.iter().copied());
    let mut note = format!("{ok}/{total} checks, {:.1}s (limit {}s)", took.as_secs_f64(), limit.as_secs());
    if let Some(b) = bad {
        note.push_str(&format!("; first failure {} {}", b.check, b.params));
    }
    Outcome { id, name, pass: total > 0 && ok == total && took < limit, note }
}

fn named<'a>(report: &'a Report, prefix: &str) -> Vec<&'a CheckRecord> {
    report.records.iter().filter(|r| r.check.starts_with(prefix)).collect()
}

fn main() -> ExitCode {
    // Under `cargo test` extra arguments such as `--nocapture` may be passed; ignore them.
    let mut out = Vec::new();
    let secs = Duration::from_secs;

    let (r, t) = suite("formulas", |_| {});
    out.push(judge(1, "dimension formulas", &named(&r, "formulas."), t, secs(5)));

    let (r, t) = suite("urk", |_| {});
    out.push(judge(2, "model upper-ranks", &named(&r, "urk."), t, secs(120)));

    let (r, t) = suite("maximality", |_| {});
    out.push(judge(3, "maximality", &named(&r, "maximality."), t, secs(120)));

    let (r, t) = suite("convexity", |_| {});
    out.push(judge(4, "strict convexity", &named(&r, "convexity."), t, secs(1)));

    let (r, t) = suite("extraction", |_| {});
    out.push(judge(5, "extraction lemmas", &named(&r, "extraction."), t, secs(60)));

    let (r, t) = suite("schur", |_| {});
    out.push(judge(6, "Schur identity", &named(&r, "schur."), t, secs(30)));

    let (r, t) = suite("sharpness", |_| {});
    let recs = named(&r, "sharpness.");
    let covers = recs.iter().any(|x| x.params["n"] == 6 && x.params["r"] == 4 && x.params["q"] == 2);
    let mut o = judge(7, "sharpness boundary", &recs, t, secs(60));
    o.pass &= covers;
    out.push(o);

    let (r, t) = suite("recognize", |_| {});
    let auto = named(&r, "recognize.auto");
    let guided = named(&r, "recognize.guided");
    let mut both = auto.clone();
    both.extend(guided.iter().copied());
    let mut o = judge(8, "recognizer round-trip", &both, t, secs(600));
    let (inst, certified) = guided.iter().fold((0, 0), |(a, b), x| {
        (a + x.params["instances"].as_u64().unwrap_or(0), b + x.details.as_ref().map_or(0, |d| d["certified"].as_u64().unwrap_or(0)))
    });
    o.note.push_str(&format!("; guided stall rate {:.2}%", 100.0 * (inst - certified) as f64 / inst.max(1) as f64));
    out.push(o);
    let agreement = named(&r, "recognize.agreement");
    let compared: u64 = agreement.iter().map(|x| x.details.as_ref().map_or(0, |d| d["compared"].as_u64().unwrap_or(0))).sum();
    let mut o = judge(9, "oracle agreement", &agreement, t, secs(600));
    o.note.push_str(&format!("; {compared} instances compared"));
    out.push(o);

    let (r, t) = suite("dichotomy", |_| {});
    out.push(judge(10, "hyperplane dichotomy", &named(&r, "dichotomy."), t, secs(180)));

    let (r, t) = suite("char2", |_| {});
    out.push(judge(11, "char-2 alternating outcome", &named(&r, "char2."), t, secs(120)));

    let mut all = true;
    for o in &out {
        all &= o.pass;
        println!("criterion {:>2} {:<28} {}  {}", o.id, o.name, if o.pass { "PASS" } else { "FAIL" }, o.note);
    }
    println!("acceptance: {}/{} criteria passed", out.iter().filter(|o| o.pass).count(), out.len());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
