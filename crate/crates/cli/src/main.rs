use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sidon_core::bounds::{
    bounds_report, format_rational, format_sig6, lb_coefficient, ub_general_coefficient,
};
use sidon_core::counting::{
    count_rainbow_cyclic_fast, count_rainbow_cyclic_naive, count_rainbow_fast,
    count_rainbow_naive, non_rainbow_lower_bound, rainbow_via_energy,
};
use sidon_core::enumeration::{count_quads_by_sums, enumerate_quads, total_quads_formula};
use sidon_core::repfn::{
    additive_energy, check_energy_dominance, check_lev, check_sum_dominance,
    check_sum_dominance_on_joint_support, closed_energy4_interval, closed_rep_one_interval,
    closed_rep_two_intervals, rep_profile, IntSet,
};
use sidon_core::search::{exhaustive_ar, local_search};
use sidon_core::{mod_coloring, parse_coloring, random_coloring, Coloring, Domain, Error, Rational};

const SWEEP_HELP: &str = "\
Output CSV, one row per n in input order, header included:
  n         ground-set size
  k         number of colors
  coloring  mod | random
  rainbow   exact rainbow count of the coloring on [n]
  total     number of Sidon 4-sets in [n]
  ratio     rainbow / n^3 as a decimal
  lb_coeff  leading coefficient of the construction lower bound
  ub_coeff  leading coefficient of the best known upper bound (3/96 for k = 4)";

/// Exact counting of rainbow Sidon 4-sets under colorings of [n] and Z_n.
///
/// Exit codes: 0 success, 1 usage or IO error, 2 verification mismatch,
/// 3 search budget exceeded.
#[derive(Parser)]
#[command(name = "sidon", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of Sidon 4-sets in [n]: formula, sums oracle, enumeration.
    Total(TotalArgs),
    /// Rainbow count of a coloring read from a JSON file.
    Rainbow(RainbowArgs),
    /// Upper and lower bounds for given n and k.
    Bounds(BoundsArgs),
    /// Search for colorings with many rainbow Sidon 4-sets.
    Search(SearchArgs),
    /// Check closed forms and inequalities against direct computation.
    Verify(VerifyArgs),
    /// Rainbow counts of a fixed coloring family over several n, as CSV.
    #[command(after_help = SWEEP_HELP)]
    Sweep(SweepArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("which").required(true).args(["n", "range"])))]
struct TotalArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Inclusive range `A..B`, one line per n.
    #[arg(long)]
    range: Option<String>,
    /// Enumerate even when n > 60.
    #[arg(long)]
    brute: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RainbowMethod {
    Naive,
    Fast,
    Energy,
    All,
}

#[derive(Args)]
struct RainbowArgs {
    #[arg(long)]
    coloring: PathBuf,
    #[arg(long, value_enum, default_value = "naive")]
    method: RainbowMethod,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["exhaustive", "local"])))]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    exhaustive: bool,
    #[arg(long)]
    local: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    restarts: u64,
    /// Move cap per climb.
    #[arg(long, default_value_t = 10_000)]
    moves: u64,
    /// Write the search result and witness coloring as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Lemmas,
    Lev,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 200)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Mod,
    Random,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    k: usize,
    /// Comma-separated list of n.
    #[arg(long)]
    n_list: String,
    #[arg(long, value_enum)]
    coloring: Family,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

enum Failure {
    Usage(String),
    Mismatch(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Mismatch(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Mismatch(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Total(args) => total(args),
        Command::Rainbow(args) => rainbow(args),
        Command::Bounds(args) => bounds(args),
        Command::Search(args) => search(args),
        Command::Verify(args) => verify(args),
        Command::Sweep(args) => sweep(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn parse_range(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("expected a range A..B, got {text:?}"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn total_line(n: usize, brute: bool) -> (String, bool) {
    let formula = total_quads_formula(n);
    let sums = count_quads_by_sums(n);
    let mut values = vec![formula, sums];
    if n <= 60 || brute {
        values.push(enumerate_quads(n).count() as u64);
    }
    let ok = values.iter().all(|&v| v == formula);
    let mut line: Vec<String> = values.iter().map(u64::to_string).collect();
    line.push(if ok { "OK" } else { "MISMATCH" }.into());
    (line.join(" "), ok)
}

fn total(args: TotalArgs) -> Outcome {
    let mut all_ok = true;
    if let Some(n) = args.n {
        if n == 0 {
            return Err(Failure::Usage("n must be at least 1".into()));
        }
        let (line, ok) = total_line(n, args.brute);
        println!("{line}");
        all_ok = ok;
    } else if let Some(range) = &args.range {
        let (a, b) = parse_range(range)?;
        if a == 0 {
            return Err(Failure::Usage("n must be at least 1".into()));
        }
        for n in a..=b {
            let (line, ok) = total_line(n, args.brute);
            println!("n={n} {line}");
            all_ok &= ok;
        }
    }
    if all_ok { Ok(()) } else { Err(Failure::Mismatch("counts disagree".into())) }
}

fn read_coloring(path: &PathBuf) -> Result<Coloring, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(parse_coloring(&text)?)
}

fn rainbow(args: RainbowArgs) -> Outcome {
    let c = read_coloring(&args.coloring)?;
    let cyclic = c.domain() == Domain::Cyclic;
    let mut results: Vec<(&str, u64)> = Vec::new();
    let wants = |m: RainbowMethod| args.method == m || args.method == RainbowMethod::All;
    if wants(RainbowMethod::Naive) {
        let count =
            if cyclic { count_rainbow_cyclic_naive(&c)? } else { count_rainbow_naive(&c)?.rainbow };
        results.push(("naive", count));
    }
    if wants(RainbowMethod::Fast) {
        let count = if cyclic { count_rainbow_cyclic_fast(&c)? } else { count_rainbow_fast(&c)? };
        results.push(("fast", count));
    }
    if args.method == RainbowMethod::Energy || (args.method == RainbowMethod::All && !cyclic && c.k() == 4)
    {
        if cyclic {
            return Err(Failure::Usage("the energy method covers interval colorings only".into()));
        }
        results.push(("energy", rainbow_via_energy(&c)?));
    }
    for (name, count) in &results {
        println!("{name} {count}");
    }
    if results.windows(2).any(|w| w[0].1 != w[1].1) {
        return Err(Failure::Mismatch("methods disagree".into()));
    }
    Ok(())
}

fn bounds(args: BoundsArgs) -> Outcome {
    let report = bounds_report(args.n, args.k)?;
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(())
}

fn write_file(path: &PathBuf, contents: &str) -> Outcome {
    fs::write(path, contents).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn search(args: SearchArgs) -> Outcome {
    let result = if args.exhaustive {
        exhaustive_ar(args.n, args.k)?
    } else {
        local_search(args.n, args.k, args.seed, args.restarts, args.moves)?
    };
    println!("{}", result.best_count);
    println!("{}", result.best_coloring.to_json());
    if let Some(out) = &args.out {
        write_file(out, &format!("{}\n", result.to_json()))?;
    }
    Ok(())
}

struct Report {
    failures: usize,
}

impl Report {
    fn line(&mut self, name: &str, outcome: Result<String, String>) {
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                self.failures += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
}

fn check_two_interval_profiles() -> Result<String, String> {
    let mut checked = 0;
    for beta in 1..=30i64 {
        for alpha in 1..=beta {
            let p = rep_profile(&IntSet::symmetric(alpha), &IntSet::symmetric(beta));
            for m in -(alpha + beta + 2)..=(alpha + beta + 2) {
                let closed = closed_rep_two_intervals(alpha, beta, m).map_err(|e| e.to_string())?;
                if closed != p.get(m) {
                    return Err(format!("alpha = {alpha}, beta = {beta}, m = {m}: {closed} vs {}", p.get(m)));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} values, 1 <= alpha <= beta <= 30"))
}

fn check_one_interval_profiles() -> Result<String, String> {
    let mut checked = 0;
    for alpha in 1..=30i64 {
        let j = IntSet::symmetric(alpha);
        let p = rep_profile(&j, &j);
        for m in -(2 * alpha + 2)..=(2 * alpha + 2) {
            let closed = closed_rep_one_interval(alpha, m).map_err(|e| e.to_string())?;
            if closed != p.get(m) {
                return Err(format!("alpha = {alpha}, m = {m}: {closed} vs {}", p.get(m)));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} values, alpha <= 30"))
}

fn dominance_families() -> impl Iterator<Item = [i64; 4]> {
    (0..8i64.pow(4))
        .map(|i| [i / 512 % 8 + 1, i / 64 % 8 + 1, i / 8 % 8 + 1, i % 8 + 1])
        .filter(|a| a.iter().sum::<i64>() % 4 == 0)
}

fn check_sum_dominance_all() -> Result<String, String> {
    let (mut cases, mut violations) = (0, Vec::new());
    for alphas in dominance_families() {
        let half = alphas.iter().sum::<i64>() / 2;
        for m in -half..=half {
            if !check_sum_dominance(alphas, m).map_err(|e| e.to_string())? {
                violations.push((alphas, m));
            }
            cases += 1;
        }
    }
    match violations.first() {
        None => Ok(format!("{cases} cases, alpha_i <= 8")),
        Some((alphas, m)) => Err(format!(
            "violated in {} of {cases} cases, first at alpha = {alphas:?}, m = {m}",
            violations.len()
        )),
    }
}

fn check_sum_dominance_joint() -> Result<String, String> {
    let mut cases = 0;
    for alphas in dominance_families() {
        let half = alphas.iter().sum::<i64>() / 2;
        for m in -half..=half {
            match check_sum_dominance_on_joint_support(alphas, m).map_err(|e| e.to_string())? {
                Some(false) => return Err(format!("alpha = {alphas:?}, m = {m}")),
                Some(true) => cases += 1,
                None => {}
            }
        }
    }
    Ok(format!("{cases} cases with |m| <= min(a1 + a2, a3 + a4)"))
}

fn check_energy_dominance_all() -> Result<String, String> {
    let mut families = 0;
    for alphas in dominance_families() {
        if !check_energy_dominance(alphas).map_err(|e| e.to_string())? {
            return Err(format!("alpha = {alphas:?}"));
        }
        families += 1;
    }
    Ok(format!("{families} families, alpha_i <= 8"))
}

fn check_energy4_closed() -> Result<String, String> {
    for alpha in 1..=20 {
        let j = IntSet::symmetric(alpha);
        let direct = additive_energy(&[j.clone(), j.clone(), j.clone(), j]).map_err(|e| e.to_string())?;
        let closed = closed_energy4_interval(alpha).map_err(|e| e.to_string())?;
        if direct != closed {
            return Err(format!("alpha = {alpha}: direct {direct}, closed {closed}"));
        }
    }
    Ok("alpha <= 20".into())
}

fn check_lev_random(trials: u64, seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let t = rng.gen_range(2..=4);
        let sets: Vec<IntSet> = (0..t)
            .map(|_| {
                let size = rng.gen_range(1..=8);
                let values = sample(&mut rng, 21, size).into_iter().map(|v| v as i64 - 10).collect();
                IntSet::new(values).expect("sampled without replacement")
            })
            .collect();
        if !check_lev(&sets).map_err(|e| e.to_string())? {
            return Err(format!("trial {trial}: {sets:?}"));
        }
    }
    Ok(format!("{trials} instances, seed {seed}"))
}

fn check_non_rainbow_random(trials: u64, seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tightest: Option<Rational> = None;
    for trial in 0..trials {
        let n = rng.gen_range(4..=80);
        let k = rng.gen_range(4..=8);
        let c = random_coloring(n, k, seed.wrapping_add(trial)).map_err(|e| e.to_string())?;
        let breakdown = count_rainbow_naive(&c).map_err(|e| e.to_string())?;
        let non_rainbow = Rational::from_integer(breakdown.non_rainbow() as i128);
        let bound = non_rainbow_lower_bound(&c).map_err(|e| e.to_string())?;
        if non_rainbow < bound {
            return Err(format!("trial {trial}: {non_rainbow} < {}", format_rational(&bound)));
        }
        let slack = non_rainbow - bound;
        tightest = Some(tightest.map_or(slack, |t| t.min(slack)));
    }
    let slack = tightest.map_or("none".into(), |t| format_rational(&t));
    Ok(format!("{trials} colorings, seed {seed}, smallest slack {slack}"))
}

fn verify(args: VerifyArgs) -> Outcome {
    let mut report = Report { failures: 0 };
    if matches!(args.suite, Suite::Lemmas | Suite::All) {
        report.line("two-interval profile", check_two_interval_profiles());
        report.line("one-interval profile", check_one_interval_profiles());
        report.line("interval sum dominance", check_sum_dominance_all());
        report.line("interval sum dominance on joint support", check_sum_dominance_joint());
        report.line("interval energy dominance", check_energy_dominance_all());
        report.line("interval E_4 closed form", check_energy4_closed());
    }
    if matches!(args.suite, Suite::Lev | Suite::All) {
        report.line("Lev inequality", check_lev_random(args.trials, args.seed));
    }
    if args.suite == Suite::All {
        report.line("non-rainbow lower bound", check_non_rainbow_random(args.trials, args.seed));
    }
    if report.failures > 0 {
        return Err(Failure::Mismatch(format!("{} check(s) failed", report.failures)));
    }
    Ok(())
}

fn sweep(args: SweepArgs) -> Outcome {
    let ns: Vec<usize> = args
        .n_list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Failure::Usage(format!("bad n {s:?}"))))
        .collect::<Result<_, _>>()?;
    if ns.is_empty() {
        return Err(Failure::Usage("empty n list".into()));
    }
    if args.k < 4 {
        return Err(Failure::Usage(format!("need k >= 4, got {}", args.k)));
    }
    let lb = format_rational(&lb_coefficient(args.k));
    let ub = if args.k == 4 {
        format_rational(&Rational::new(3, 96))
    } else {
        format_rational(&ub_general_coefficient(args.k))
    };
    let family = match args.coloring {
        Family::Mod => "mod",
        Family::Random => "random",
    };
    let mut csv = String::from("n,k,coloring,rainbow,total,ratio,lb_coeff,ub_coeff\n");
    for n in ns {
        let c = match args.coloring {
            Family::Mod => mod_coloring(n, args.k)?,
            Family::Random => random_coloring(n, args.k, args.seed)?,
        };
        let rainbow = count_rainbow_fast(&c)?;
        let ratio = rainbow as f64 / (n as f64).powi(3);
        csv.push_str(&format!(
            "{n},{},{family},{rainbow},{},{},{lb},{ub}\n",
            args.k,
            total_quads_formula(n),
            format_sig6(ratio)
        ));
    }
    write_file(&args.out, &csv)
}
