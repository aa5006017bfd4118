//! `schubert`: build Schubert codes, their orthogonal check sets, decode
//! words, and run the verification suites.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use schubert_core::code::Code;
use schubert_core::decoder::{decode, DecoderTable};
use schubert_core::field::Field;
use schubert_core::grassmann::IndexTuple;
use schubert_core::io::{
    parse_checks, parse_generator, parse_words, write_checks, write_generator, write_words,
    CheckSetFile,
};
use schubert_core::ortho::{build_all, j_lower_bound};
use schubert_core::schubert::schubert_params;
use schubert_core::verify::{monte_carlo_decode_test, run_suite, CodeConfig, Suite, SuiteOptions};

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(
    name = "schubert",
    version,
    about = "Schubert codes and majority-logic decoding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CodeArgs {
    /// Field order.
    #[arg(long)]
    q: u32,
    /// Ambient dimension.
    #[arg(long)]
    m: usize,
    /// Subspace dimension; defaults to the length of --alpha, or 2.
    #[arg(long)]
    l: Option<usize>,
    /// Schubert index, comma separated; omit for the Grassmann code.
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print n, k, d, the orthogonal-check bound J and the radius t.
    Params(CodeArgs),
    /// Write the generator matrix.
    Build {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the orthogonal check sets for every coordinate.
    Checks {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode a file of received words.
    Decode {
        /// Generator file; built from --q/--m/--alpha when absent.
        #[arg(long)]
        gen: Option<PathBuf>,
        /// Check-set file; built from --q/--m/--alpha when absent.
        #[arg(long)]
        checks: Option<PathBuf>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-word correction and vote log.
        #[arg(long)]
        log: Option<PathBuf>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<usize>,
    },
    /// Random decoding trials with errors of weight exactly t.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        /// Error weight; defaults to the guaranteed radius.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites: params, duals, lines, geometry, disc, counts, ortho, decode, all.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Io(String),
    Verification,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Verification => 2,
            Failure::Io(_) => 3,
        }
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn config(args: &CodeArgs) -> Result<CodeConfig, Failure> {
    if Field::new(args.q).is_err() {
        return Err(usage(format!("unsupported field order {}", args.q)));
    }
    if args.alpha.is_empty() {
        let l = args.l.unwrap_or(2);
        if l == 0 || l > args.m {
            return Err(usage(format!("need 1 <= l <= m, got l={l} m={}", args.m)));
        }
        return Ok(CodeConfig::grassmann(args.q, l, args.m));
    }
    if let Some(l) = args.l {
        if l != args.alpha.len() {
            return Err(usage(format!(
                "--alpha has {} entries but --l is {l}",
                args.alpha.len()
            )));
        }
    }
    IndexTuple::new(args.alpha.clone(), args.m).map_err(usage)?;
    if args.alpha.iter().enumerate().all(|(i, &a)| a == i + 1) {
        return Err(usage("trivial code: alpha = (1, ..., l)"));
    }
    Ok(CodeConfig::schubert(args.q, &args.alpha, args.m))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn build_code(cfg: &CodeConfig) -> Result<Code, Failure> {
    cfg.build().map_err(usage)
}

fn params(args: &CodeArgs) -> Result<String, Failure> {
    let cfg = config(args)?;
    let q = cfg.q as u64;
    let (n, k, d, delta) = match &cfg.alpha {
        Some(a) => {
            let p = schubert_params(&IndexTuple::new(a.clone(), cfg.m).map_err(usage)?, cfg.m, q);
            (p.n, p.k, p.d, p.delta)
        }
        None => {
            let (n, k, d) = schubert_core::verify::formula_params(&cfg);
            (n, k, d, cfg.l * (cfg.m - cfg.l))
        }
    };
    let mut line = format!("n={n} k={k} d={d}");
    let alpha1 = cfg.alpha.as_ref().filter(|_| cfg.l == 2).map(|a| a[0]);
    match alpha1.map(|a1| j_lower_bound(q, cfg.m, a1)) {
        Some(Ok(j)) => write!(line, " J={j} t={}", &j / 2u32).unwrap(),
        _ => line.push_str(" J=none t=none"),
    }
    let dhalf = (&d - 1u32) / 2u32;
    write!(line, " delta={delta} dhalf={dhalf}").unwrap();
    line.push('\n');
    Ok(line)
}

fn schubert_code(args: &CodeArgs) -> Result<Code, Failure> {
    let cfg = config(args)?;
    if cfg.alpha.is_none() || cfg.l != 2 {
        return Err(usage("check sets need a Schubert index with l = 2"));
    }
    build_code(&cfg)
}

fn check_file(code: &Code) -> Result<CheckSetFile, Failure> {
    Ok(CheckSetFile {
        q: code.field().order() as u32,
        m: code.m(),
        l: code.l(),
        alpha: code.alpha().expect("schubert code").to_vec(),
        sets: build_all(code).map_err(usage)?,
    })
}

#[allow(clippy::too_many_arguments)]
fn decode_cmd(
    gen: Option<&Path>,
    checks: Option<&Path>,
    input: &Path,
    out: Option<&Path>,
    log: Option<&Path>,
    q: Option<u32>,
    m: Option<usize>,
    alpha: &[usize],
) -> Result<(), Failure> {
    let (generator, file) = match (gen, checks) {
        (Some(g), Some(c)) => {
            let g = parse_generator(&read(g)?)
                .map_err(|e| Failure::Io(format!("{}: {e}", g.display())))?;
            let c = parse_checks(&read(c)?)
                .map_err(|e| Failure::Io(format!("{}: {e}", c.display())))?;
            (g, c)
        }
        (None, None) => {
            let (Some(q), Some(m)) = (q, m) else {
                return Err(usage("give --gen and --checks, or --q, --m and --alpha"));
            };
            let code = schubert_code(&CodeArgs {
                q,
                m,
                l: None,
                alpha: alpha.to_vec(),
            })?;
            let file = check_file(&code)?;
            (code.generator().clone(), file)
        }
        _ => return Err(usage("--gen and --checks must be given together")),
    };
    if (file.q, file.m, file.l, Some(&file.alpha))
        != (
            generator.q,
            generator.m,
            generator.l,
            generator.alpha.as_ref(),
        )
    {
        return Err(usage(
            "generator and check-set files describe different codes",
        ));
    }
    let field = Field::new(generator.q).map_err(usage)?;
    let table =
        DecoderTable::new(&field, &generator, file.sets).map_err(|e| Failure::Io(e.to_string()))?;
    let words = parse_words(&read(input)?, generator.q, generator.n())
        .map_err(|e| Failure::Io(format!("{}: {e}", input.display())))?;
    let mut corrected = Vec::with_capacity(words.len());
    let mut log_text = String::new();
    for (i, w) in words.iter().enumerate() {
        let r = decode(w, &table).map_err(usage)?;
        let fixes: Vec<String> = r
            .estimate
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(p, e)| format!("{p}:{e}"))
            .collect();
        writeln!(
            log_text,
            "word={i} success={} corrections={}",
            r.success,
            fixes.len()
        )
        .unwrap();
        for (p, tally) in r
            .tallies
            .iter()
            .enumerate()
            .filter(|(p, _)| !r.estimate[*p].is_zero())
        {
            let votes: Vec<String> = tally.iter().map(|(v, c)| format!("{v}:{c}")).collect();
            writeln!(
                log_text,
                "  pos={p} estimate={} votes={}",
                r.estimate[p],
                votes.join(",")
            )
            .unwrap();
        }
        corrected.push(r.corrected);
    }
    emit(out, &write_words(&corrected))?;
    if let Some(path) = log {
        emit(Some(path), &log_text)?;
    }
    Ok(())
}

fn report_out(text: &str, ok: bool, out: Option<&Path>) -> Result<(), Failure> {
    print!("{text}");
    if let Some(p) = out {
        emit(Some(p), text)?;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Params(args) => {
            print!("{}", params(&args)?);
            Ok(())
        }
        Command::Build { code, out } => {
            let code = build_code(&config(&code)?)?;
            emit(out.as_deref(), &write_generator(code.generator()))
        }
        Command::Checks { code, out } => {
            let code = schubert_code(&code)?;
            emit(out.as_deref(), &write_checks(&check_file(&code)?))
        }
        Command::Decode {
            gen,
            checks,
            input,
            out,
            log,
            q,
            m,
            alpha,
        } => decode_cmd(
            gen.as_deref(),
            checks.as_deref(),
            &input,
            out.as_deref(),
            log.as_deref(),
            q,
            m,
            &alpha,
        ),
        Command::Simulate {
            code,
            t,
            trials,
            seed,
            out,
        } => {
            let code = schubert_code(&code)?;
            let table = DecoderTable::from_code(&code).map_err(usage)?;
            let t = t.unwrap_or(table.t_max());
            let rep = monte_carlo_decode_test(&code, &table, t, trials, seed);
            report_out(&rep.render(), rep.ok(), out.as_deref())
        }
        Command::Verify {
            code,
            suite,
            t,
            trials,
            seed,
            out,
        } => {
            let suite: Suite = suite.parse().map_err(Failure::Usage)?;
            let cfg = config(&code)?;
            let opts = SuiteOptions {
                seed,
                trials,
                t,
                ..SuiteOptions::default()
            };
            let rep = run_suite(suite, &cfg, &opts);
            report_out(&rep.render(), rep.ok(), out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Io(msg) => eprintln!("error: {msg}"),
                Failure::Verification => eprintln!("verification failed"),
            }
            ExitCode::from(f.code())
        }
    }
}
