//! Command-line surface: parse a body, run one computation, print the
//! result as aligned text or as JSON, exit with a meaningful code.
//!
//! Exit codes: 0 success, 1 a check failed or an estimate strayed past 4
//! standard errors, 2 usage or parse problem, 3 the estimator does not
//! support the body.

mod body_expr;

pub use body_expr::{format_body, parse_body, ParseError};

use ivlab::bodies::BodySpec;
use ivlab::corpus::corpus;
use ivlab::exact::{self, IVSequence};
use ivlab::montecarlo::{
    beta_integral_check, gf_estimate, h_moment_estimates, kubota_estimate, steiner_check,
    wills_estimate, MCEstimate, SampleParams,
};
use ivlab::{bounds, ivstats, maxent, Check, Error};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPABILITY: i32 = 3;

const USAGE: &str = "\
usage: ivlab <command> [BODY] [flags]

commands
  exact BODY          intrinsic-volume sequence
  stats BODY          Wills functional, mean, variance, entropy, checks
  bounds BODY         variance bounds and moment-generating comparisons
  tails BODY          exact tail masses against the concentration bounds
  maxent BODY         entropy against the matched and uniform binomials
  mc-wills BODY       sampled Wills functional
  mc-kubota BODY      sampled projection-average intrinsic volume (--j)
  mc-steiner BODY     sampled parallel-body volume (--lambda)
  mc-gf BODY          sampled scaling integral (--lambda)
  mc-beta BODY        sampled heavy-tail integral (--lambda)
  mc-hmoments BODY    sampled information-content moments
  corpus-verify       every check on the built-in corpus

bodies
  point:N  ball:N,R  box:L1,L2,...  cube:N[,S]
  product(BODY;BODY)  scale(S;BODY)  embed(BODY;N)

flags
  --samples N   sample count for mc commands (default 10000)
  --seed S      RNG seed (default 0)
  --chunk C     samples per deterministic chunk (default 16384)
  --sigma X     proposal width override for mc-wills/mc-gf/mc-hmoments
  --j J         projection order for mc-kubota (default 1)
  --lambda L    scale for mc-steiner/mc-gf/mc-beta and tails (default 1)
  --grid A,B,.. t grid for tails (default 0.5,1,...,n)
  --theta A,B,..theta grid for bounds (default -1,-0.5,-0.1,0.1,0.5,1)
  --csv PATH    write grid rows as CSV (tails, bounds)
  --json        print a JSON object instead of text
  --threads N   worker threads (default: rayon's choice, or IV_LAB_THREADS)
";

struct Options {
    body_text: Option<String>,
    samples: u64,
    seed: u64,
    chunk: Option<u64>,
    sigma: Option<f64>,
    j: usize,
    lambda: f64,
    grid: Option<Vec<f64>>,
    theta: Option<Vec<f64>>,
    csv: Option<String>,
    json: bool,
    threads: Option<usize>,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            body_text: None,
            samples: 10_000,
            seed: 0,
            chunk: None,
            sigma: None,
            j: 1,
            lambda: 1.0,
            grid: None,
            theta: None,
            csv: None,
            json: false,
            threads: None,
        }
    }
}

fn parse_list(text: &str, flag: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("{flag}: \"{t}\" is not a number")))
        .collect()
}

fn parse_options(args: &[String]) -> Result<Options, String> {
    let mut opts = Options::default();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut value_of = |flag: &str| {
            it.next().map(String::as_str).ok_or(format!("{flag} needs a value"))
        };
        match arg.as_str() {
            "--samples" => opts.samples = value_of("--samples")?.parse().map_err(|_| "--samples: not an integer".to_string())?,
            "--seed" => opts.seed = value_of("--seed")?.parse().map_err(|_| "--seed: not an integer".to_string())?,
            "--chunk" => opts.chunk = Some(value_of("--chunk")?.parse().map_err(|_| "--chunk: not an integer".to_string())?),
            "--sigma" => opts.sigma = Some(value_of("--sigma")?.parse().map_err(|_| "--sigma: not a number".to_string())?),
            "--j" => opts.j = value_of("--j")?.parse().map_err(|_| "--j: not an integer".to_string())?,
            "--lambda" => opts.lambda = value_of("--lambda")?.parse().map_err(|_| "--lambda: not a number".to_string())?,
            "--grid" => opts.grid = Some(parse_list(value_of("--grid")?, "--grid")?),
            "--theta" => opts.theta = Some(parse_list(value_of("--theta")?, "--theta")?),
            "--csv" => opts.csv = Some(value_of("--csv")?.to_string()),
            "--json" => opts.json = true,
            "--threads" => opts.threads = Some(value_of("--threads")?.parse().map_err(|_| "--threads: not an integer".to_string())?),
            other if other.starts_with("--") => return Err(format!("unknown flag {other}")),
            other => {
                if opts.body_text.is_some() {
                    return Err(format!("unexpected extra argument \"{other}\""));
                }
                opts.body_text = Some(other.to_string());
            }
        }
    }
    Ok(opts)
}

impl Options {
    fn sample_params(&self) -> SampleParams {
        let p = SampleParams::new(self.samples, self.seed);
        match self.chunk {
            Some(c) => p.with_chunk_size(c),
            None => p,
        }
    }

    fn body(&self) -> Result<(String, BodySpec), String> {
        let text = self.body_text.as_ref().ok_or("this command needs a BODY argument")?;
        let body = parse_body(text).map_err(|e| format!("{text}: {e}"))?;
        let canonical = format_body(&body).unwrap_or_else(|_| text.clone());
        Ok((canonical, body))
    }
}

/// Run one command line (without the program name). Returns the exit code.
pub fn run(args: &[String]) -> i32 {
    let Some(command) = args.first() else {
        eprint!("{USAGE}");
        return EXIT_USAGE;
    };
    if matches!(command.as_str(), "help" | "-h" | "--help") {
        print!("{USAGE}");
        return EXIT_OK;
    }
    let opts = match parse_options(&args[1..]) {
        Ok(opts) => opts,
        Err(message) => {
            eprintln!("error: {message}");
            return EXIT_USAGE;
        }
    };
    let threads = opts.threads.or_else(|| {
        std::env::var("IV_LAB_THREADS").ok().and_then(|v| v.parse().ok())
    });
    let dispatch = || dispatch(command, &opts);
    let result = match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(dispatch),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        },
        None => dispatch(),
    };
    match result {
        Ok(code) => code,
        Err(CommandError::Usage(message)) => {
            eprintln!("error: {message}");
            EXIT_USAGE
        }
        Err(CommandError::Capability(message)) => {
            eprintln!("error: {message}");
            EXIT_CAPABILITY
        }
    }
}

enum CommandError {
    Usage(String),
    Capability(String),
}

impl From<Error> for CommandError {
    fn from(e: Error) -> CommandError {
        match e {
            Error::Unsupported { .. } => CommandError::Capability(e.to_string()),
            _ => CommandError::Usage(e.to_string()),
        }
    }
}

impl From<String> for CommandError {
    fn from(message: String) -> CommandError {
        CommandError::Usage(message)
    }
}

type CmdResult = Result<i32, CommandError>;

fn dispatch(command: &str, opts: &Options) -> CmdResult {
    match command {
        "exact" => cmd_exact(opts),
        "stats" => cmd_stats(opts),
        "bounds" => cmd_bounds(opts),
        "tails" => cmd_tails(opts),
        "maxent" => cmd_maxent(opts),
        "mc-wills" | "mc-kubota" | "mc-steiner" | "mc-gf" | "mc-beta" | "mc-hmoments" => {
            cmd_mc(command, opts)
        }
        "corpus-verify" => cmd_corpus_verify(opts),
        other => Err(CommandError::Usage(format!(
            "unknown command \"{other}\" (try \"ivlab help\")"
        ))),
    }
}

fn seq_values(seq: &IVSequence) -> Vec<Value> {
    seq.values().iter().map(|v| json!(v)).collect()
}

fn checks_json(checks: &[Check]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| json!({"id": c.id, "pass": c.pass, "lhs": c.lhs, "rhs": c.rhs}))
            .collect(),
    )
}

fn estimates_json(estimates: &[&MCEstimate]) -> Value {
    Value::Array(
        estimates
            .iter()
            .map(|e| {
                json!({
                    "id": e.estimator_id,
                    "value": e.value,
                    "se": e.std_error,
                    "samples": e.samples,
                    "seed": e.seed,
                })
            })
            .collect(),
    )
}

fn print_sequence(seq: &IVSequence) {
    let rendered: Vec<String> = seq.values().iter().map(f64::to_string).collect();
    println!("sequence  [{}]", rendered.join(", "));
}

fn print_checks(checks: &[Check]) {
    println!("checks");
    for c in checks {
        let verdict = if c.pass { "pass" } else { "FAIL" };
        println!("  {verdict}  {:<42} lhs={:<24} rhs={}", c.id, c.lhs, c.rhs);
    }
}

fn exit_for(checks: &[Check]) -> i32 {
    if checks.iter().all(|c| c.pass) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn cmd_exact(opts: &Options) -> CmdResult {
    let (name, body) = opts.body()?;
    let seq = exact::sequence_of(&body)?;
    if opts.json {
        println!("{}", json!({"body": name, "sequence": seq_values(&seq)}));
    } else {
        println!("body      {name}");
        print_sequence(&seq);
    }
    Ok(EXIT_OK)
}

fn cmd_stats(opts: &Options) -> CmdResult {
    let (name, body) = opts.body()?;
    let seq = exact::sequence_of(&body)?;
    let dist = ivstats::normalize(&seq)?;
    let wills = ivstats::wills(&seq);
    let quermass = ivstats::quermassintegrals(&seq);
    let mut checks = ivstats::ulc_check(&seq, 1e-9);
    checks.extend(ivstats::chevet_mcmullen_check(&seq));
    if opts.json {
        println!(
            "{}",
            json!({
                "body": name,
                "sequence": seq_values(&seq),
                "wills": wills,
                "delta": dist.mean,
                "variance": dist.variance,
                "entropy": dist.entropy,
                "quermassintegrals": quermass,
                "checks": checks_json(&checks),
            })
        );
    } else {
        println!("body      {name}");
        print_sequence(&seq);
        println!("wills     {wills}");
        println!("delta     {}", dist.mean);
        println!("variance  {}", dist.variance);
        println!("entropy   {}", dist.entropy);
        let rendered: Vec<String> = quermass.iter().map(f64::to_string).collect();
        println!("quermassintegrals  [{}]", rendered.join(", "));
        print_checks(&checks);
    }
    Ok(exit_for(&checks))
}

fn cmd_bounds(opts: &Options) -> CmdResult {
    let (name, body) = opts.body()?;
    let seq = exact::sequence_of(&body)?;
    let stats = bounds::h_moments_from_sequence(&seq)?;
    let (general, dimensional) = bounds::variance_bound(&stats);
    let sharp = bounds::variance_bound_sharp(&stats);
    let theta_grid = opts
        .theta
        .clone()
        .unwrap_or_else(|| vec![-1.0, -0.5, -0.1, 0.1, 0.5, 1.0]);
    let mut checks = vec![
        Check::le("var_z_le_general", stats.var_z, general, 1e-12),
        Check::le("general_le_dimensional", general, dimensional, 1e-12),
        Check::le("var_z_le_sharp", stats.var_z, sharp, 1e-12),
        Check::le("var_h_le_n", stats.var_h(), stats.n as f64, 1e-12),
    ];
    let mut rows = Vec::new();
    for &theta in &theta_grid {
        let lhs = bounds::mgf_lhs(&seq, theta)?;
        let rhs = bounds::mgf_bound(seq.n(), stats.mean_z, theta);
        checks.push(Check::le(format!("mgf[theta={theta}]"), lhs, rhs, 1e-12));
        rows.push((theta, lhs, rhs));
    }
    if let Some(path) = &opts.csv {
        let mut csv = String::from("theta,mgf_lhs,mgf_bound\n");
        for (theta, lhs, rhs) in &rows {
            csv.push_str(&format!("{theta},{lhs},{rhs}\n"));
        }
        std::fs::write(path, csv).map_err(|e| format!("{path}: {e}"))?;
    }
    if opts.json {
        println!(
            "{}",
            json!({
                "body": name,
                "sequence": seq_values(&seq),
                "delta": stats.mean_z,
                "variance": stats.var_z,
                "eh": stats.eh,
                "eh2": stats.eh2,
                "var_h": stats.var_h(),
                "variance_bounds": {"general": general, "dimensional": dimensional, "sharp": sharp},
                "checks": checks_json(&checks),
            })
        );
    } else {
        println!("body      {name}");
        print_sequence(&seq);
        println!("delta     {}", stats.mean_z);
        println!("variance  {}", stats.var_z);
        println!("eh        {}", stats.eh);
        println!("eh2       {}", stats.eh2);
        println!("var_h     {}", stats.var_h());
        println!("variance_bounds  general={general} dimensional={dimensional} sharp={sharp}");
        print_checks(&checks);
    }
    Ok(exit_for(&checks))
}

fn cmd_tails(opts: &Options) -> CmdResult {
    let (name, body) = opts.body()?;
    let seq = exact::sequence_of(&body)?;
    let n = seq.n();
    let grid = opts
        .grid
        .clone()
        .unwrap_or_else(|| (1..=2 * n).map(|k| 0.5 * k as f64).collect());
    let report = bounds::tail_report(&seq, &grid)?;
    let fmt_opt = |v: &Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    if let Some(path) = &opts.csv {
        let mut csv = String::from(
            "t,upper_mass,lower_mass,two_sided_mass,bennett_upper,bennett_lower,bernstein_upper,bernstein_lower,headline\n",
        );
        for (i, t) in report.t.iter().enumerate() {
            csv.push_str(&format!(
                "{t},{},{},{},{},{},{},{},{}\n",
                report.upper_mass[i],
                report.lower_mass[i],
                report.two_sided_mass[i],
                report.bennett_upper[i],
                fmt_opt(&report.bennett_lower[i]),
                report.bernstein_upper[i],
                fmt_opt(&report.bernstein_lower[i]),
                fmt_opt(&report.headline[i]),
            ));
        }
        std::fs::write(path, csv).map_err(|e| format!("{path}: {e}"))?;
    }
    if opts.json {
        let rows: Vec<Value> = (0..report.t.len())
            .map(|i| {
                json!({
                    "t": report.t[i],
                    "upper_mass": report.upper_mass[i],
                    "lower_mass": report.lower_mass[i],
                    "two_sided_mass": report.two_sided_mass[i],
                    "bennett_upper": report.bennett_upper[i],
                    "bennett_lower": report.bennett_lower[i],
                    "bernstein_upper": report.bernstein_upper[i],
                    "bernstein_lower": report.bernstein_lower[i],
                    "headline": report.headline[i],
                })
            })
            .collect();
        println!(
            "{}",
            json!({
                "body": name,
                "sequence": seq_values(&seq),
                "tails": rows,
                "checks": checks_json(&report.checks),
            })
        );
    } else {
        println!("body      {name}");
        print_sequence(&seq);
        println!("t         upper_mass  bennett_upper  bernstein_upper  headline");
        for (i, t) in report.t.iter().enumerate() {
            println!(
                "{t:<9} {:<11.5e} {:<14.5e} {:<16.5e} {}",
                report.upper_mass[i],
                report.bennett_upper[i],
                report.bernstein_upper[i],
                fmt_opt(&report.headline[i]),
            );
        }
        print_checks(&report.checks);
    }
    Ok(exit_for(&report.checks))
}

fn cmd_maxent(opts: &Options) -> CmdResult {
    let (name, body) = opts.body()?;
    let seq = exact::sequence_of(&body)?;
    let report = maxent::maxent_check(&seq)?;
    if opts.json {
        println!(
            "{}",
            json!({
                "body": name,
                "sequence": seq_values(&seq),
                "delta": report.delta,
                "p": report.p,
                "entropy": report.intrinsic_entropy,
                "matched_entropy": report.matched_entropy,
                "uniform_entropy": report.uniform_entropy,
                "gap_matched": report.gap_matched,
                "gap_uniform": report.gap_uniform,
                "checks": checks_json(&report.checks),
            })
        );
    } else {
        println!("body      {name}");
        print_sequence(&seq);
        println!("delta     {}", report.delta);
        println!("p         {}", report.p);
        println!("entropy   {}", report.intrinsic_entropy);
        println!("matched_entropy  {}", report.matched_entropy);
        println!("uniform_entropy  {}", report.uniform_entropy);
        println!("gap_matched      {}", report.gap_matched);
        println!("gap_uniform      {}", report.gap_uniform);
        print_checks(&report.checks);
    }
    Ok(exit_for(&report.checks))
}

/// Standard-error distance between an estimate and its exact reference.
/// A zero-variance estimate is distance 0 when it equals the reference and
/// infinity otherwise.
fn se_distance(est: &MCEstimate, exact: f64) -> f64 {
    let gap = (est.value - exact).abs();
    if est.std_error > 0.0 {
        gap / est.std_error
    } else if gap <= 1e-9 * exact.abs().max(1.0) {
        0.0
    } else {
        f64::INFINITY
    }
}

fn cmd_mc(command: &str, opts: &Options) -> CmdResult {
    let (name, body) = opts.body()?;
    let p = opts.sample_params();
    // (estimate, exact reference) pairs
    let pairs: Vec<(MCEstimate, f64)> = match command {
        "mc-wills" => {
            let exact_w = ivstats::wills(&exact::sequence_of(&body)?);
            vec![(wills_estimate(&body, &p, opts.sigma)?, exact_w)]
        }
        "mc-kubota" => {
            let seq = exact::sequence_of(&body)?;
            let est = kubota_estimate(&body, opts.j, &p)?;
            let exact_vj = seq.values()[opts.j];
            vec![(est, exact_vj)]
        }
        "mc-steiner" => {
            let (est, poly) = steiner_check(&body, opts.lambda, &p)?;
            vec![(est, poly)]
        }
        "mc-gf" => {
            let seq = exact::sequence_of(&body)?;
            let n = seq.n() as i32;
            let exact_value = opts.lambda.powi(-n) * ivstats::gf_eval(&seq, opts.lambda)?;
            vec![(gf_estimate(&body, opts.lambda, &p, opts.sigma)?, exact_value)]
        }
        "mc-beta" => {
            let (est, exact_value) = beta_integral_check(&body, opts.lambda, &p)?;
            vec![(est, exact_value)]
        }
        "mc-hmoments" => {
            let stats = bounds::h_moments_from_sequence(&exact::sequence_of(&body)?)?;
            let (eh, eh2) = h_moment_estimates(&body, &p, opts.sigma)?;
            vec![(eh, stats.eh), (eh2, stats.eh2)]
        }
        _ => unreachable!("dispatch only routes mc commands here"),
    };
    let mut worst = 0.0f64;
    if opts.json {
        let ests: Vec<&MCEstimate> = pairs.iter().map(|(e, _)| e).collect();
        let exacts: Vec<Value> = pairs
            .iter()
            .map(|(e, x)| json!({"id": e.estimator_id, "value": x, "se_distance": se_distance(e, *x)}))
            .collect();
        for (e, x) in &pairs {
            worst = worst.max(se_distance(e, *x));
        }
        println!(
            "{}",
            json!({
                "body": name,
                "estimates": estimates_json(&ests),
                "exact": exacts,
            })
        );
    } else {
        println!("body      {name}");
        for (est, exact_value) in &pairs {
            let dist = se_distance(est, *exact_value);
            worst = worst.max(dist);
            println!("estimator {}", est.estimator_id);
            println!("  value        {}", est.value);
            println!("  se           {}", est.std_error);
            println!("  samples      {}", est.samples);
            println!("  seed         {}", est.seed);
            println!("  exact        {exact_value}");
            println!("  se-distance  {dist:.3}");
        }
    }
    Ok(if worst > 4.0 { EXIT_CHECK_FAILED } else { EXIT_OK })
}

/// Every exact check on every corpus body, then seeded estimator spot
/// checks. Output is deterministic for a fixed seed.
fn cmd_corpus_verify(opts: &Options) -> CmdResult {
    let mut total = 0usize;
    let mut failures: Vec<Check> = Vec::new();
    let push = |name: &str, checks: Vec<Check>, total: &mut usize, failures: &mut Vec<Check>| {
        for mut c in checks {
            *total += 1;
            if !c.pass {
                c.id = format!("{name}: {}", c.id);
                failures.push(c);
            }
        }
    };
    for (name, body) in corpus() {
        let seq = exact::sequence_of(&body).map_err(|e| format!("{name}: {e}"))?;
        let dist = ivstats::normalize(&seq).map_err(|e| format!("{name}: {e}"))?;
        let stats = bounds::h_moments_from_sequence(&seq).map_err(|e| format!("{name}: {e}"))?;
        let mut checks = ivstats::ulc_check(&seq, 1e-9);
        checks.extend(ivstats::chevet_mcmullen_check(&seq));
        for lam in [0.1, 0.5, 1.0, 2.0, 10.0] {
            let gf = ivstats::gf_eval(&seq, lam).map_err(|e| format!("{name}: {e}"))?;
            let scaled = ivstats::wills(&exact::scale_sequence(&seq, lam).map_err(|e| format!("{name}: {e}"))?);
            checks.push(Check::eq(format!("gf_identity[lam={lam}]"), gf, scaled, 1e-12));
        }
        let n = seq.n() as f64;
        checks.push(Check::eq("mean_identity", dist.mean, n - 2.0 * stats.eh, 1e-12));
        checks.push(Check::eq(
            "variance_identity",
            stats.var_z,
            4.0 * (stats.var_h() - stats.eh),
            1e-12,
        ));
        let (general, dimensional) = bounds::variance_bound(&stats);
        checks.push(Check::le("var_z_le_general", stats.var_z, general, 1e-12));
        checks.push(Check::le("general_le_dimensional", general, dimensional, 1e-12));
        let grid: Vec<f64> = (1..=2 * seq.n()).map(|k| 0.5 * k as f64).collect();
        checks.extend(bounds::tail_report(&seq, &grid).map_err(|e| format!("{name}: {e}"))?.checks);
        checks.extend(
            maxent::maxent_check(&seq)
                .map_err(|e| format!("{name}: {e}"))?
                .checks
                .into_iter()
                .filter(|c| c.id.starts_with("entropy")),
        );
        push(&name, checks, &mut total, &mut failures);
    }
    // seeded estimator spot checks against closed forms
    let p = SampleParams::new(20_000, opts.seed);
    let box123 = BodySpec::Box { lengths: vec![1.0, 2.0, 3.0] };
    let square = BodySpec::cube(2);
    let disk = BodySpec::Ball { dim: 2, radius: 1.0 };
    let spot = |id: &str, est: &MCEstimate, exact_value: f64| -> Check {
        let dist = se_distance(est, exact_value);
        Check { id: id.into(), pass: dist <= 4.0, lhs: dist, rhs: 4.0 }
    };
    let mut mc_checks = Vec::new();
    mc_checks.push(spot("mc_wills[box:1,2,3]", &wills_estimate(&box123, &p, None)?, 24.0));
    mc_checks.push(spot("mc_kubota[cube:3,j=1]", &kubota_estimate(&BodySpec::cube(3), 1, &p)?, 3.0));
    let (est, poly) = steiner_check(&square, 1.0, &p)?;
    mc_checks.push(spot("mc_steiner[cube:2,lam=1]", &est, poly));
    let gf_exact = 0.25 * ivstats::gf_eval(&exact::sequence_of(&square)?, 2.0)?;
    mc_checks.push(spot("mc_gf[cube:2,lam=2]", &gf_estimate(&square, 2.0, &p, None)?, gf_exact));
    let (est, beta_exact) = beta_integral_check(&disk, 1.0, &p)?;
    mc_checks.push(spot("mc_beta[ball:2,1,lam=1]", &est, beta_exact));
    let (eh, _) = h_moment_estimates(&box123, &p, None)?;
    mc_checks.push(spot("mc_eh[box:1,2,3]", &eh, 13.0 / 24.0));
    push("mc", mc_checks, &mut total, &mut failures);

    let bodies = corpus().len();
    if opts.json {
        println!(
            "{}",
            json!({
                "bodies": bodies,
                "total_checks": total,
                "seed": opts.seed,
                "checks": checks_json(&failures),
            })
        );
    } else {
        println!("corpus-verify  bodies={bodies} checks={total} seed={}", opts.seed);
        for c in &failures {
            println!("FAIL  {:<60} lhs={:<24} rhs={}", c.id, c.lhs, c.rhs);
        }
        println!("failures  {}", failures.len());
    }
    Ok(if failures.is_empty() { EXIT_OK } else { EXIT_CHECK_FAILED })
}
