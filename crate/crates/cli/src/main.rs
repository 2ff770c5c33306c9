//! `brkit`: bounded-rank matrix spaces from the command line.
//!
//! Exit codes: 0 on success, 1 when a check or recognition comes out
//! negative, 2 on usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use brkit::models::dims_table;
use brkit::recognize::{self, write_cert, GuidedConfig, Mode, RankCheck, RecognizeConfig};
use brkit::space::{parse_matspace, write_matspace, DEFAULT_URK_BUDGET};
use brkit::verify::{run_suite, sample_bounded_space, SuiteConfig, SUITES};
use brkit::{CompressionModel, Error, Field, Hyperplane, MatSpace, ModelKind, SpaceKind};

#[derive(Parser)]
#[command(name = "brkit", version, about = "Linear spaces of bounded-rank symmetric and alternating matrices over small finite fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the model space WS_{n,s,t} or WA_{n,s,t}.
    Model(ModelArgs),
    /// Tabulate model dimensions and upper-ranks.
    Dims(DimsArgs),
    /// Upper-rank of a space, exact when affordable.
    Urk(UrkArgs),
    /// Hyperplane sections S_H of a space.
    Sh(ShArgs),
    /// S-adaptedness of hyperplanes for a symmetric space.
    Adapted(AdaptedArgs),
    /// Find a congruence into a compression model.
    Recognize(RecognizeArgs),
    /// Run a check suite.
    Verify(VerifyArgs),
    /// Random conjugated subspace of a model.
    Sample(SampleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Sym,
    Alt,
}

impl From<KindArg> for ModelKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Sym => ModelKind::Sym,
            KindArg::Alt => ModelKind::Alt,
        }
    }
}

#[derive(Args)]
struct ModelSpec {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    q: u32,
}

#[derive(Args)]
struct ModelArgs {
    #[command(flatten)]
    spec: ModelSpec,
    /// Output file (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DimsArgs {
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = 12)]
    n_max: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct UrkArgs {
    input: PathBuf,
    /// Enumeration budget (members); sampling beyond it.
    #[arg(long, default_value_t = DEFAULT_URK_BUDGET)]
    budget: u128,
    #[arg(long, default_value_t = 20_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ShArgs {
    input: PathBuf,
    /// Functional of the hyperplane, e.g. "0 1 2". Without it every
    /// hyperplane is listed.
    #[arg(long)]
    phi: Option<String>,
    /// Only report a hyperplane minimising dim S_H.
    #[arg(long)]
    min: bool,
    /// With --min: restrict to adapted hyperplanes.
    #[arg(long)]
    adapted_only: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AdaptedArgs {
    input: PathBuf,
    #[arg(long)]
    phi: Option<String>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Guided,
    Oracle,
    Auto,
}

#[derive(Args)]
struct RecognizeArgs {
    input: PathBuf,
    /// Upper bound on the rank of the members.
    #[arg(long)]
    r: usize,
    #[arg(long, value_enum, default_value = "auto")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Flag budget of the oracle.
    #[arg(long, default_value_t = recognize::DEFAULT_FLAG_BUDGET)]
    budget: u128,
    /// Skip the threshold precondition.
    #[arg(long)]
    no_threshold: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Outcome JSON (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write the certificate in text form.
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Override the trial count of randomized suites.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    budget: Option<u128>,
    /// Comma-separated field sizes, overriding the suite default.
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<u32>>,
    #[arg(long)]
    n_max: Option<usize>,
    /// JSON-lines report.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    spec: ModelSpec,
    /// Dimension of the sampled subspace.
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Ground-truth certificate.
    #[arg(long)]
    truth: Option<PathBuf>,
}

enum Failure {
    /// Exit 1.
    Negative,
    /// Exit 2.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out = std::result::Result<(), Failure>;

fn emit(path: Option<&Path>, text: &str) -> Out {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_space(path: &Path) -> std::result::Result<MatSpace, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_matspace(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn parse_phi(f: Field, text: &str, n: usize) -> std::result::Result<Hyperplane, Failure> {
    let phi: Vec<u8> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u8>().map_err(|_| Failure::Usage(format!("--phi: bad entry `{t}`"))))
        .collect::<std::result::Result<_, _>>()?;
    if phi.len() != n {
        return Err(Failure::Usage(format!("--phi: expected {n} entries, got {}", phi.len())));
    }
    Ok(Hyperplane::new(f, &phi)?)
}

fn model_of(spec: &ModelSpec) -> std::result::Result<(CompressionModel, Field), Failure> {
    let field = Field::new(spec.q)?;
    Ok((CompressionModel::new(spec.kind.into(), spec.n, spec.s, spec.t)?, field))
}

fn cmd_model(a: ModelArgs) -> Out {
    let (m, f) = model_of(&a.spec)?;
    emit(a.output.as_deref(), &write_matspace(&m.space(f)?))
}

fn cmd_dims(a: DimsArgs) -> Out {
    let kinds: Vec<ModelKind> = match a.kind {
        Some(k) => vec![k.into()],
        None => vec![ModelKind::Sym, ModelKind::Alt],
    };
    emit(a.output.as_deref(), &dims_table(&kinds, a.n_min..=a.n_max))
}

fn cmd_urk(a: UrkArgs) -> Out {
    let s = read_space(&a.input)?;
    let u = match s.urk_exact(a.budget) {
        Ok(u) => u,
        Err(Error::BudgetExceeded { .. }) => s.urk_sampled(a.samples, a.seed),
        Err(e) => return Err(e.into()),
    };
    let v = json!({
        "urk": u.value,
        "method": format!("{:?}", u.method).to_lowercase(),
        "witness": (0..u.witness.rows()).map(|i| u.witness.row(i).to_vec()).collect::<Vec<_>>(),
    });
    emit(a.output.as_deref(), &json_text(&v))
}

fn analysis_json(a: &brkit::space::HyperplaneAnalysis) -> serde_json::Value {
    json!({
        "phi": a.hyperplane.phi(),
        "dim_sh": a.m,
        "adapted": a.adapted,
        "s_h": serde_json::to_value(&a.s_h).expect("serializable"),
    })
}

fn cmd_sh(a: ShArgs) -> Out {
    let s = read_space(&a.input)?;
    let v = if let Some(phi) = &a.phi {
        analysis_json(&s.analyze(&parse_phi(s.field(), phi, s.n())?)?)
    } else if a.min {
        analysis_json(&s.min_dim_sh(a.adapted_only, a.jobs)?)
    } else {
        json!(s.scan_hyperplanes(a.jobs)?.iter().map(analysis_json).collect::<Vec<_>>())
    };
    emit(a.output.as_deref(), &json_text(&v))
}

fn cmd_adapted(a: AdaptedArgs) -> Out {
    let s = read_space(&a.input)?;
    if s.kind() != SpaceKind::Sym {
        return Err(Failure::Usage("adaptedness is defined for symmetric spaces".into()));
    }
    let v = if let Some(phi) = &a.phi {
        let h = parse_phi(s.field(), phi, s.n())?;
        json!({"phi": h.phi(), "adapted": s.is_adapted(&h)?})
    } else {
        let all = s.scan_hyperplanes(a.jobs)?;
        json!(all
            .iter()
            .filter(|x| x.adapted == Some(true))
            .map(|x| json!({"phi": x.hyperplane.phi(), "dim_sh": x.m}))
            .collect::<Vec<_>>())
    };
    emit(a.output.as_deref(), &json_text(&v))
}

fn cmd_recognize(a: RecognizeArgs) -> Out {
    let s = read_space(&a.input)?;
    if s.kind() == SpaceKind::Sym && s.field().q() == 2 {
        return Err(Failure::Usage(
            "symmetric recognition needs q > 2: the classification of symmetric spaces excludes GF(2)".into(),
        ));
    }
    let cfg = RecognizeConfig {
        mode: match a.mode {
            ModeArg::Guided => Mode::Guided,
            ModeArg::Oracle => Mode::Oracle,
            ModeArg::Auto => Mode::Auto,
        },
        flag_budget: a.budget,
        rank_check: RankCheck::Exact { budget: DEFAULT_URK_BUDGET, fallback_trials: 20_000 },
        check_threshold: !a.no_threshold,
        seed: a.seed,
        guided: GuidedConfig { jobs: a.jobs, ..GuidedConfig::default() },
    };
    let out = recognize::recognize(&s, a.r, &cfg)?;
    let v = serde_json::to_value(out.to_json()).expect("serializable");
    emit(a.output.as_deref(), &json_text(&v))?;
    if let (Some(path), Some(cert)) = (&a.cert, out.cert()) {
        emit(Some(path), &write_cert(cert))?;
    }
    if out.is_certified() {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn cmd_verify(a: VerifyArgs) -> Out {
    let names: Vec<&str> = if a.suite == "all" { SUITES.to_vec() } else { vec![a.suite.as_str()] };
    let mut jsonl = String::new();
    let mut ok = true;
    for name in names {
        let mut cfg = SuiteConfig::defaults(name)?;
        cfg.seed = a.seed;
        cfg.jobs = a.jobs;
        if let Some(t) = a.trials {
            cfg.trials = t;
            cfg.agreement_trials = cfg.agreement_trials.min(t);
        }
        if let Some(b) = a.budget {
            cfg.budget = b;
        }
        if let Some(q) = &a.q {
            cfg.fields = q.clone();
        }
        if let Some(n) = a.n_max {
            cfg.n_max = n;
        }
        let report = run_suite(&cfg)?;
        ok &= report.passed();
        jsonl.push_str(&report.to_jsonl());
        eprint!("{}", report.summary());
    }
    match &a.output {
        Some(p) => emit(Some(p), &jsonl)?,
        None => print!("{jsonl}"),
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn cmd_sample(a: SampleArgs) -> Out {
    let (m, f) = model_of(&a.spec)?;
    let sample = sample_bounded_space(&m, a.d, f, a.seed)?;
    emit(a.output.as_deref(), &write_matspace(&sample.space))?;
    if let Some(p) = &a.truth {
        emit(Some(p), &write_cert(&sample.truth))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Model(a) => cmd_model(a),
        Cmd::Dims(a) => cmd_dims(a),
        Cmd::Urk(a) => cmd_urk(a),
        Cmd::Sh(a) => cmd_sh(a),
        Cmd::Adapted(a) => cmd_adapted(a),
        Cmd::Recognize(a) => cmd_recognize(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Sample(a) => cmd_sample(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
