use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use apolar::io::parse_field;
use apolar::linalg::Field;
use apolar::report::{load_document, normalize, reproduce, AnalysisReport, PipelineOptions, ReproduceRow};
use apolar::theorems::{check, search, ShapeSource, Subject, TheoremId, TheoremReport};
use apolar::Error;

const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;
const EXIT_INCONSISTENT: u8 = 4;
const EXIT_MISMATCH: u8 = 5;

#[derive(Parser)]
#[command(
    name = "apolar",
    version,
    about = "Annihilator ideals and genericity of forms F = G + W Z^[j-1]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Coefficient field, `q` or `p=<prime>`; overrides the file's own field line.
    #[arg(long, global = true, value_parser = field_arg)]
    field: Option<Field>,
    /// Count minimal generators through this degree (at least j + 2).
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Remove X_i Z^[j-1] terms from G (the substitution W -> W + L) instead of rejecting them.
    #[arg(long, global = true)]
    auto_normalize: bool,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a form file: Hilbert functions, generator counts, β, g, r and the verdict.
    Analyze { file: PathBuf },
    /// Run one statement's checker on a form file.
    Check {
        #[arg(value_parser = theorem_arg)]
        theorem: TheoremId,
        file: PathBuf,
    },
    /// Recompute every built-in example and compare with its stated counts.
    Reproduce,
    /// Draw random forms of a shape and run the checkers on each.
    Search {
        /// A preset (thm1, th0, tm2, converse, lem0, restrict) or `j=..,p=..,blocks=a:min-max/..`.
        #[arg(long)]
        shape: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Restrict to these checkers; repeatable. Defaults to all.
        #[arg(long = "theorem", value_parser = theorem_arg)]
        theorems: Vec<TheoremId>,
    },
}

fn field_arg(s: &str) -> Result<Field, String> {
    parse_field(s).map_err(|e| e.to_string())
}

fn theorem_arg(s: &str) -> Result<TheoremId, String> {
    s.parse()
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_input_error() { EXIT_INPUT } else { EXIT_INTERNAL };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn analyze_table(r: &AnalysisReport) -> String {
    let mut s = String::new();
    if let Some(l) = &r.input.label {
        writeln!(s, "label        {l}").unwrap();
    }
    writeln!(s, "form         {}", r.input.form).unwrap();
    for t in &r.input.removed {
        writeln!(s, "removed      {t}").unwrap();
    }
    writeln!(
        s,
        "vars         {}   field {}   shape {}",
        r.input.vars.join(" "),
        r.input.field,
        r.shape
    )
    .unwrap();
    writeln!(s, "H(R/I)       {}", join(&r.hilbert_ri)).unwrap();
    writeln!(s, "H(R'/J)      {}", join(&r.hilbert_rj)).unwrap();
    writeln!(
        s,
        "difference   {}   (ones on 1..=β: {})",
        join(&r.hilbert_diff),
        r.diff_pattern_ok
    )
    .unwrap();
    writeln!(s, "ν(I)         {}", join(&r.nu)).unwrap();
    writeln!(s, "ν(J)         {}", join(&r.nu_j)).unwrap();
    writeln!(s, "μ(I), μ(J)   {}, {}", r.mu_i, r.mu_j).unwrap();
    writeln!(s, "β            {}", r.beta).unwrap();
    writeln!(s, "g            {}", r.g).unwrap();
    let flagged: Vec<&str> = r.flags.iter().filter(|f| f.minimal).map(|f| f.var.as_str()).collect();
    writeln!(
        s,
        "r            {}   (g·x not in 𝔫J for: {})",
        r.r,
        if flagged.is_empty() {
            "none".into()
        } else {
            flagged.join(" ")
        }
    )
    .unwrap();
    writeln!(s, "generic      {}", r.generic).unwrap();
    writeln!(
        s,
        "identity     {}",
        if r.identity_ok {
            "μ(I) = μ(J) + n + 1 - r"
        } else {
            "FAILED"
        }
    )
    .unwrap();
    writeln!(s, "I_2 shape    {:?}   H(R'/J) unimodal: {}", r.i2_shape, r.j_unimodal).unwrap();
    s
}

fn run_analyze(file: &Path, opts: &PipelineOptions, json: bool) -> Result<u8, Failure> {
    let (_, report) = apolar::report::analyze_text(&read(file)?, opts)?;
    if json {
        println!("{}", to_json(&report));
    } else {
        print!("{}", analyze_table(&report));
    }
    Ok(0)
}

fn report_table(r: &TheoremReport) -> String {
    let mut s = String::new();
    writeln!(s, "{} on {}", r.theorem, r.subject).unwrap();
    writeln!(s, "  applicable   {}", r.applicable()).unwrap();
    for h in &r.hypotheses {
        writeln!(s, "  [{}] {}", if h.holds { "x" } else { " " }, h.statement).unwrap();
    }
    writeln!(s, "  prediction   {}", r.prediction).unwrap();
    writeln!(s, "  observed     {}", r.observed).unwrap();
    writeln!(s, "  consistent   {}", r.consistent).unwrap();
    for n in &r.notes {
        writeln!(s, "  note: {n}").unwrap();
    }
    s
}

fn run_check(theorem: TheoremId, file: &Path, opts: &PipelineOptions, json: bool) -> Result<u8, Failure> {
    let doc = load_document(&read(file)?, opts).map_err(Failure::from)?;
    let nf = normalize(&doc, opts)?;
    let subject = Subject::from_normal(nf, opts.analyze_options())?;
    let reports = check(theorem, &subject)?;
    if json {
        println!("{}", to_json(&reports));
    } else {
        for r in &reports {
            print!("{}", report_table(r));
        }
    }
    Ok(if reports.iter().all(|r| r.consistent) {
        0
    } else {
        EXIT_INCONSISTENT
    })
}

fn mu(m: Option<(usize, usize)>) -> String {
    m.map_or("-".into(), |(i, j)| format!("{i}/{j}"))
}

fn verdict(g: Option<bool>) -> &'static str {
    match g {
        Some(true) => "generic",
        Some(false) => "not generic",
        None => "-",
    }
}

fn run_reproduce(opts: &PipelineOptions, json: bool) -> Result<u8, Failure> {
    let rows: Vec<ReproduceRow> = reproduce(opts);
    let failed = rows.iter().filter(|r| r.binding && !r.matches()).count();
    if json {
        println!("{}", to_json(&rows));
    } else {
        println!(
            "{:<40} {:>9} {:>9} {:>12} {:>12}  status",
            "form", "expected", "computed", "expected", "computed"
        );
        for r in &rows {
            let status = match (r.matches(), r.binding) {
                (true, _) => "ok",
                (false, true) => "MISMATCH",
                (false, false) => "differs (informational)",
            };
            println!(
                "{:<40} {:>9} {:>9} {:>12} {:>12}  {status}",
                r.form,
                mu(r.expected_mu),
                mu(r.computed_mu),
                verdict(r.expected_generic),
                verdict(r.computed_generic),
            );
            if let Some(c) = &r.caveat {
                println!("    {c}");
            }
            if let Some(e) = &r.error {
                println!("    error: {e}");
            }
        }
        println!("{} forms, {failed} binding mismatches", rows.len());
    }
    Ok(if failed == 0 { 0 } else { EXIT_MISMATCH })
}

fn run_search(
    shape: &str,
    seed: u64,
    count: u64,
    theorems: &[TheoremId],
    opts: &PipelineOptions,
    json: bool,
) -> Result<u8, Failure> {
    let source: ShapeSource = shape.parse().map_err(|e: Error| Failure {
        code: EXIT_INPUT,
        message: e.to_string(),
    })?;
    let theorems = if theorems.is_empty() {
        TheoremId::ALL.to_vec()
    } else {
        theorems.to_vec()
    };
    let sum = search(&source, seed, count, &theorems, opts.analyze_options());
    if json {
        println!("{}", to_json(&sum));
    } else {
        println!("shape {shape}, seed {seed}, {} forms", sum.count);
        let analyzed = sum.count - sum.errors.len();
        println!("generic        {}/{analyzed}", sum.generic);
        let hist: Vec<String> = sum.r_histogram.iter().map(|(r, k)| format!("r={r}: {k}")).collect();
        println!("r              {}", hist.join(", "));
        println!("identity fails {}", sum.identity_failures);
        println!(
            "{:<14} {:>6} {:>10} {:>7} {:>12}",
            "checker", "runs", "applicable", "claims", "inconsistent"
        );
        for (t, k) in &sum.tallies {
            println!(
                "{:<14} {:>6} {:>10} {:>7} {:>12}",
                t.name(),
                k.runs,
                k.applicable,
                k.claims,
                k.inconsistent
            );
        }
        for i in &sum.inconsistencies {
            println!(
                "inconsistent #{} {}: predicted {}, observed {}: {}",
                i.index, i.report.theorem, i.report.prediction, i.report.observed, i.form
            );
        }
        for (i, e) in &sum.errors {
            println!("error #{i}: {e}");
        }
    }
    Ok(if !sum.errors.is_empty() {
        EXIT_INTERNAL
    } else if !sum.inconsistencies.is_empty() || sum.identity_failures > 0 {
        EXIT_INCONSISTENT
    } else {
        0
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = &cli.common;
    if let Some(n) = c.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("apolar: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    }
    let opts = PipelineOptions {
        field: c.field,
        auto_normalize: c.auto_normalize,
        max_degree: c.max_degree,
    };
    let result = match &cli.command {
        Command::Analyze { file } => run_analyze(file, &opts, c.json),
        Command::Check { theorem, file } => run_check(*theorem, file, &opts, c.json),
        Command::Reproduce => run_reproduce(&opts, c.json),
        Command::Search {
            shape,
            seed,
            count,
            theorems,
        } => run_search(shape, *seed, *count, theorems, &opts, c.json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("apolar: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
