//! Command-line interface over the algebra engine: Gröbner bases, normal
//! forms, ideal membership, trace spaces, correction dimensions, generator
//! tables, and the named reproduction checks.
//!
//! Every subcommand prints a human-readable report followed by stable
//! `#key:value` trailer lines. The trailers never carry timings or other
//! run-dependent data, so identical inputs give byte-identical
//! machine-readable output. Exit codes: 0 on success (all checks passed),
//! 1 on computational failure or a failed verification, 2 on usage errors.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mpa_core::groebner::{complete, Completion, GBOptions, GroebnerBasis};
use mpa_core::hh0;
use mpa_core::morphism::{self, GeneratorImages};
use mpa_core::parse::{parse_expr, Defines};
use mpa_core::poly::{Ctx, NCPoly};
use mpa_core::presentation::{self, Presentation};
use mpa_core::quiver::{bad_primes, builtin_dynkin, parse_builtin, Quiver};
use mpa_core::reproduce::{self, SuiteOptions};
use mpa_core::{
    DoubledQuiver, Error, Integers, PrimeField, Rationals, Result, ScalarDomain,
};

#[derive(Parser)]
#[command(
    name = "mpa",
    version,
    about = "Exact computations with additive and multiplicative preprojective algebras",
    long_about = "Exact computations with additive and multiplicative preprojective algebras \
                  of quivers: noncommutative Groebner bases, normal forms, trace spaces \
                  (zeroth Hochschild homology) with integer torsion, and certification of \
                  generator tables between the two quotients."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Complete a Groebner basis and report leading terms and dimensions
    Gb(GbArgs),
    /// Reduce an expression to its normal form
    Nf(ExprArgs),
    /// Decide ideal membership of an expression
    Member(ExprArgs),
    /// Trace space (zeroth Hochschild homology) of the quotient
    Hh0(Hh0Args),
    /// Dimensions N and M of the graded correction spaces
    Dims(DimsArgs),
    /// Check that a generator table descends between the two quotients
    Verify(VerifyArgs),
    /// Apply a generator table from a map file to an expression
    Apply(ApplyArgs),
    /// Run the named reproduction checks
    Reproduce(ReproduceArgs),
}

/// Coefficient domain selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FieldChoice {
    Q,
    Fp(u64),
    Z,
}

impl FieldChoice {
    fn describe(self) -> String {
        match self {
            FieldChoice::Q => "Q".into(),
            FieldChoice::Fp(p) => format!("F{p}"),
            FieldChoice::Z => "Z".into(),
        }
    }
}

fn parse_field(s: &str) -> std::result::Result<FieldChoice, String> {
    match s {
        "Q" | "q" => Ok(FieldChoice::Q),
        "Z" | "z" => Ok(FieldChoice::Z),
        _ => {
            let digits = s
                .strip_prefix('F')
                .or_else(|| s.strip_prefix('f'))
                .ok_or_else(|| format!("expected Q, Z, or F<p>, got {s:?}"))?;
            let p: u64 = digits
                .parse()
                .map_err(|_| format!("expected a prime after F, got {digits:?}"))?;
            PrimeField::new(p).map_err(|e| e.to_string())?;
            Ok(FieldChoice::Fp(p))
        }
    }
}

/// Run `$body` with `$dom` bound to the chosen coefficient domain.
macro_rules! with_domain {
    ($choice:expr, |$dom:ident| $body:expr) => {
        match *$choice {
            FieldChoice::Q => {
                let $dom = Rationals;
                $body
            }
            FieldChoice::Z => {
                let $dom = Integers;
                $body
            }
            FieldChoice::Fp(p) => {
                let $dom = PrimeField::new(p)?;
                $body
            }
        }
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algebra {
    /// Additive relations (sum of commutators of dual arrow pairs)
    Add,
    /// Multiplicative relations (cyclic products of corrected cycles)
    Mult,
}

/// Arguments shared by every subcommand that builds a presentation.
#[derive(Args)]
struct PresentationArgs {
    /// Quiver: `builtin:<name>` (A2..A26, D4..D26, E6..E8) or a file path
    #[arg(long)]
    quiver: String,
    /// Which relations to impose
    #[arg(long, value_enum, default_value_t = Algebra::Add)]
    algebra: Algebra,
    /// Drop the relation at this vertex label
    #[arg(long)]
    partial: Option<u32>,
    /// Coefficients: Q, Z, or a prime field such as F5
    #[arg(long, default_value = "Q", value_parser = parse_field)]
    field: FieldChoice,
    /// Cap completion at this overlap degree
    #[arg(long)]
    max_degree: Option<usize>,
}

#[derive(Args)]
struct GbArgs {
    #[command(flatten)]
    pres: PresentationArgs,
    /// Also list the normal-word basis by degree (finite quotients only)
    #[arg(long)]
    basis: bool,
}

#[derive(Args)]
struct ExprArgs {
    #[command(flatten)]
    pres: PresentationArgs,
    /// Expression in the quiver's letters, e.g. "a**a*b**b - 2*e_3"
    #[arg(long)]
    poly: String,
}

#[derive(Args)]
struct Hh0Args {
    #[command(flatten)]
    pres: PresentationArgs,
    /// Over Z: compare against these primes instead of running Smith forms
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
}

#[derive(Args)]
struct DimsArgs {
    /// Quiver: `builtin:<name>` or a file path
    #[arg(long)]
    quiver: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Built-in table name (D4..D8, D4-b-arm, E6, E7, E8) or a map file path
    #[arg(long)]
    table: String,
    /// Source quiver for map files; built-in tables know their quiver
    #[arg(long)]
    quiver: Option<String>,
    /// Coefficients: Q or a prime field such as F5
    #[arg(long, default_value = "Q", value_parser = parse_field)]
    field: FieldChoice,
    /// Drop image terms above this degree (graded targets only)
    #[arg(long)]
    truncation: Option<usize>,
}

#[derive(Args)]
struct ApplyArgs {
    /// Map file with vertex and arrow images
    #[arg(long)]
    map: std::path::PathBuf,
    /// Quiver the map is written over
    #[arg(long)]
    quiver: String,
    /// Expression to push through the map
    #[arg(long)]
    poly: String,
    /// Coefficients: Q, Z, or F<p>
    #[arg(long, default_value = "Q", value_parser = parse_field)]
    field: FieldChoice,
    /// Drop image terms above this degree
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Run only the checks whose name contains this substring
    #[arg(long)]
    only: Option<String>,
    /// Also verify the isomorphism tables over this good prime, e.g. F7
    #[arg(long, value_parser = parse_field)]
    field: Option<FieldChoice>,
    /// Directory to write the full report into (as reproduce.txt)
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

/// A usage problem (exit 2) as opposed to a computational failure (exit 1).
struct Usage(String);

enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u.0)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> std::result::Result<bool, Failure> {
    match cli.cmd {
        Cmd::Gb(args) => cmd_gb(args),
        Cmd::Nf(args) => cmd_nf(args),
        Cmd::Member(args) => cmd_member(args),
        Cmd::Hh0(args) => cmd_hh0(args),
        Cmd::Dims(args) => cmd_dims(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Apply(args) => cmd_apply(args),
        Cmd::Reproduce(args) => cmd_reproduce(args),
    }
}

fn load_quiver(spec: &str) -> std::result::Result<DoubledQuiver, Failure> {
    if let Some(rest) = spec.strip_prefix("builtin:") {
        let (ty, n) =
            parse_builtin(rest).map_err(|e| Usage(format!("--quiver {spec}: {e}")))?;
        let q = builtin_dynkin(ty, n).map_err(|e| Usage(format!("--quiver {spec}: {e}")))?;
        return Ok(DoubledQuiver::double(q)?);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Usage(format!("cannot read quiver file {spec}: {e}")))?;
    let (q, order) = Quiver::from_text(&text)?;
    let mut dq = DoubledQuiver::double(q)?;
    if let Some(names) = order {
        dq.apply_order(&names)?;
    }
    Ok(dq)
}

fn build_presentation<D: ScalarDomain>(
    dq: &DoubledQuiver,
    dom: &D,
    args: &PresentationArgs,
) -> Result<Presentation<D>> {
    let pres = match args.algebra {
        Algebra::Add => presentation::additive(dq, dom)?,
        Algebra::Mult => presentation::multiplicative(dq, dom)?,
    };
    match args.partial {
        Some(w) => pres.partial(w),
        None => Ok(pres),
    }
}

fn completed<D: ScalarDomain>(
    dq: &DoubledQuiver,
    dom: &D,
    args: &PresentationArgs,
) -> Result<GroebnerBasis<D>> {
    let pres = build_presentation(dq, dom, args)?;
    complete(&pres, &GBOptions { max_degree: args.max_degree })
}

fn parse_poly<D: ScalarDomain>(
    dq: &DoubledQuiver,
    dom: &D,
    text: &str,
) -> std::result::Result<NCPoly<D>, Failure> {
    parse_expr(Ctx::new(dq, dom), text, &Defines::new())
        .map_err(|e| Usage(format!("--poly: {e}")).into())
}

fn describe_inputs(args: &PresentationArgs, dq: &DoubledQuiver) -> String {
    let partial = match args.partial {
        Some(w) => format!(", relation at vertex {w} dropped"),
        None => String::new(),
    };
    format!(
        "{} ({} vertices, {} arrows); {} relations over {}{partial}",
        args.quiver,
        dq.num_vertices(),
        dq.base().arrows().len(),
        match args.algebra {
            Algebra::Add => "additive",
            Algebra::Mult => "multiplicative",
        },
        args.field.describe(),
    )
}

fn cmd_gb(args: GbArgs) -> std::result::Result<bool, Failure> {
    let dq = load_quiver(&args.pres.quiver)?;
    with_domain!(&args.pres.field, |dom| {
        let gb = completed(&dq, &dom, &args.pres)?;
        let ctx = gb.ctx();
        println!("{}", describe_inputs(&args.pres, &dq));
        let status = match &gb.outcome {
            Completion::Completed => "complete".to_string(),
            Completion::DegreeCapped(d) => format!("capped at overlap degree {d}"),
        };
        println!(
            "completion: {status}; {} elements; top degree {}",
            gb.len(),
            match gb.top_degree {
                Some(t) => t.to_string(),
                None => "unbounded or unknown".to_string(),
            }
        );
        println!("leading terms:");
        for w in gb.leading_terms() {
            println!("  {}", ctx.word_string(&w));
        }
        let mut dimension = None;
        if let Some(top) = gb.top_degree {
            if gb.is_complete() {
                let dims = gb.dimensions(top)?;
                let total: usize = dims.iter().sum();
                let per: Vec<String> =
                    dims.iter().enumerate().map(|(d, k)| format!("{d}:{k}")).collect();
                println!("dimensions by degree: {}", per.join(" "));
                println!("total dimension: {total}");
                dimension = Some(total);
                if args.basis {
                    for (d, layer) in gb.basis_words(None)?.iter().enumerate() {
                        let words: Vec<String> =
                            layer.iter().map(|w| ctx.word_string(w)).collect();
                        println!("degree {d}: {}", words.join(" "));
                    }
                }
            }
        } else if args.basis {
            println!("basis listing skipped: quotient not detected finite-dimensional");
        }
        println!("#gb.elements:{}", gb.len());
        println!("#gb.complete:{}", gb.is_complete());
        println!(
            "#gb.top_degree:{}",
            match gb.top_degree {
                Some(t) => t.to_string(),
                None => "none".to_string(),
            }
        );
        if let Some(total) = dimension {
            println!("#gb.dimension:{total}");
        }
        Ok(true)
    })
}

fn cmd_nf(args: ExprArgs) -> std::result::Result<bool, Failure> {
    let dq = load_quiver(&args.pres.quiver)?;
    with_domain!(&args.pres.field, |dom| {
        let p = parse_poly(&dq, &dom, &args.poly)?;
        let gb = completed(&dq, &dom, &args.pres)?;
        let nf = gb.normal_form(&p);
        println!("{}", describe_inputs(&args.pres, &dq));
        println!("normal form: {}", nf.display(gb.ctx()));
        println!("#nf:{}", nf.display(gb.ctx()));
        Ok(true)
    })
}

fn cmd_member(args: ExprArgs) -> std::result::Result<bool, Failure> {
    let dq = load_quiver(&args.pres.quiver)?;
    with_domain!(&args.pres.field, |dom| {
        let p = parse_poly(&dq, &dom, &args.poly)?;
        let gb = completed(&dq, &dom, &args.pres)?;
        let member = gb.is_member(&p)?;
        println!("{}", describe_inputs(&args.pres, &dq));
        println!(
            "{} the ideal generated by the relations",
            if member { "member of" } else { "not a member of" }
        );
        println!("#member:{member}");
        Ok(true)
    })
}

fn cmd_hh0(args: Hh0Args) -> std::result::Result<bool, Failure> {
    let dq = load_quiver(&args.pres.quiver)?;
    if !args.primes.is_empty() && args.pres.field != FieldChoice::Z {
        return Err(Usage("--primes only applies with --field Z".into()).into());
    }
    let report = match args.pres.field {
        FieldChoice::Z => {
            let pres = build_presentation(&dq, &Integers, &args.pres)?;
            hh0::hh0_integers(
                &pres,
                &args.primes,
                &GBOptions { max_degree: args.pres.max_degree },
            )?
        }
        _ => with_domain!(&args.pres.field, |dom| {
            let gb = completed(&dq, &dom, &args.pres)?;
            hh0::hh0_field(&gb)?
        }),
    };
    println!("{}", describe_inputs(&args.pres, &dq));
    println!("trace space of the quotient ({}):", report.summary());
    println!(
        "  degree | {:>4} | torsion",
        if report.domain == "Z" { "rank" } else { "dim" }
    );
    println!("       0 | {:>4} | -", report.vertex_rank);
    for e in &report.entries {
        let torsion = if e.torsion.is_empty() {
            "-".to_string()
        } else {
            e.torsion.iter().map(|t| t.describe()).collect::<Vec<_>>().join(" ")
        };
        println!("  {:>6} | {:>4} | {}", e.degree, e.free_rank, torsion);
    }
    if !report.graded {
        println!("  (length filtration readout; only the totals are canonical)");
    }
    let torsion_all = if report.torsion.is_empty() {
        "-".to_string()
    } else {
        report.torsion.iter().map(|t| t.describe()).collect::<Vec<_>>().join(",")
    };
    println!("total: {} | torsion: {}", report.total(), torsion_all);
    println!("#hh0.domain:{}", report.domain);
    println!("#hh0.total:{}", report.total());
    println!("#hh0.torsion:{torsion_all}");
    Ok(true)
}

fn cmd_dims(args: DimsArgs) -> std::result::Result<bool, Failure> {
    let dq = load_quiver(&args.quiver)?;
    let pres = presentation::additive(&dq, &Rationals)?;
    let gb = complete(&pres, &GBOptions::default())?;
    let (n, m) = gb.corrected_space_dims()?;
    println!("N={n} M={m}");
    println!("#dims.N:{n}");
    println!("#dims.M:{m}");
    Ok(true)
}

const BUILTIN_TABLES: [&str; 9] =
    ["D4", "D5", "D6", "D7", "D8", "D4-b-arm", "E6", "E7", "E8"];

fn cmd_verify(args: VerifyArgs) -> std::result::Result<bool, Failure> {
    fn check_table<D: ScalarDomain>(
        args: &VerifyArgs,
        dq: &DoubledQuiver,
        dom: &D,
        map: &GeneratorImages<D>,
        allowed: Option<BTreeSet<u64>>,
    ) -> Result<bool> {
        let lam = presentation::multiplicative(dq, dom)?;
        let gb = complete(&presentation::additive(dq, dom)?, &GBOptions::default())?;
        let report = map.verify_descends(&lam, &gb, args.truncation)?;
        if let Some(t) = report.truncation {
            println!("images truncated above degree {t}");
        }
        print!("{}", report.summary());
        let unitriangular = map.is_unitriangular(&gb)?;
        println!("unitriangular: {unitriangular}");
        let denominators = morphism::denominator_primes(map);
        let denoms: Vec<String> = denominators.iter().map(|p| p.to_string()).collect();
        let denominators_ok = match &allowed {
            Some(allowed) => {
                let ok = denominators.is_subset(allowed);
                let listed: Vec<String> = allowed.iter().map(|p| p.to_string()).collect();
                println!(
                    "denominator primes [{}] within bad primes [{}]: {}",
                    denoms.join(","),
                    listed.join(","),
                    ok
                );
                ok
            }
            None => {
                println!("denominator primes: [{}]", denoms.join(","));
                true
            }
        };
        let passed = report.ok && unitriangular && denominators_ok;
        println!("verdict: {}", if passed { "pass" } else { "FAIL" });
        println!("#verify.descends:{}", report.ok);
        println!("#verify.unitriangular:{unitriangular}");
        println!("#verify.denominators:[{}]", denoms.join(","));
        println!("#verify.pass:{passed}");
        Ok(passed)
    }

    let field = match args.field {
        FieldChoice::Z => {
            return Err(Usage("--field Z is not supported here; use Q or F<p>".into()).into())
        }
        f => f,
    };
    if BUILTIN_TABLES.contains(&args.table.as_str()) {
        let quiver_name = match args.table.as_str() {
            "D4-b-arm" => "D4",
            other => other,
        };
        let (ty, n) = parse_builtin(quiver_name).map_err(|e| Usage(e.to_string()))?;
        let dq = DoubledQuiver::double(builtin_dynkin(ty, n)?)?;
        let allowed: BTreeSet<u64> = bad_primes(ty, n).into_iter().collect();
        println!("table {} over {}", args.table, field.describe());
        return Ok(with_domain!(&field, |dom| {
            let map = morphism::builtin_iso(&args.table, &dom)?;
            check_table(&args, &dq, &dom, &map, Some(allowed))?
        }));
    }
    let quiver_spec = args.quiver.clone().ok_or_else(|| {
        Usage(format!(
            "--table {} is not built in ({}), so it is read as a map file and needs --quiver",
            args.table,
            BUILTIN_TABLES.join(", ")
        ))
    })?;
    let text = std::fs::read_to_string(&args.table)
        .map_err(|e| Usage(format!("cannot read map file {}: {e}", args.table)))?;
    let dq = load_quiver(&quiver_spec)?;
    println!("table {} over {}", args.table, field.describe());
    Ok(with_domain!(&field, |dom| {
        let map = morphism::parse_map(&dq, &dom, &text)?;
        check_table(&args, &dq, &dom, &map, None)?
    }))
}

fn cmd_apply(args: ApplyArgs) -> std::result::Result<bool, Failure> {
    let dq = load_quiver(&args.quiver)?;
    let text = std::fs::read_to_string(&args.map)
        .map_err(|e| Usage(format!("cannot read map file {}: {e}", args.map.display())))?;
    with_domain!(&args.field, |dom| {
        let map = morphism::parse_map(&dq, &dom, &text)?;
        let p = parse_poly(&dq, &dom, &args.poly)?;
        let image = map.apply(&p, args.cap);
        let ctx = Ctx::new(&dq, &dom);
        println!("image: {}", image.display(ctx));
        println!("#apply:{}", image.display(ctx));
        Ok(true)
    })
}

fn cmd_reproduce(args: ReproduceArgs) -> std::result::Result<bool, Failure> {
    let good_prime = match args.field {
        None | Some(FieldChoice::Q) => None,
        Some(FieldChoice::Fp(p)) => Some(p),
        Some(FieldChoice::Z) => {
            return Err(Usage("--field here takes a prime field such as F7".into()).into())
        }
    };
    let opts = SuiteOptions { only: args.only.clone(), good_prime };
    let mut transcript = String::new();
    let suite = reproduce::run_suite(&opts, |check| {
        let mut block = String::new();
        let _ = writeln!(
            block,
            "check {} ... {} ({:.2}s)",
            check.name,
            if check.passed { "pass" } else { "FAIL" },
            check.seconds
        );
        for line in &check.details {
            let _ = writeln!(block, "    {line}");
        }
        for (key, value) in &check.metrics {
            let _ = writeln!(block, "#{}.{}:{}", check.name, key, value);
        }
        print!("{block}");
        transcript.push_str(&block);
    })
    .map_err(|e| match e {
        Error::Unsupported(msg) if msg.starts_with("no check matches") => Usage(msg).into(),
        other => Failure::Engine(other),
    })?;
    let passed = suite.all_passed();
    let summary = format!(
        "{}/{} checks passed\n#reproduce.checks:{}\n#reproduce.passed:{}\n",
        suite.checks.iter().filter(|c| c.passed).count(),
        suite.checks.len(),
        suite.checks.len(),
        passed
    );
    print!("{summary}");
    transcript.push_str(&summary);
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir).map_err(Error::from)?;
        std::fs::write(dir.join("reproduce.txt"), transcript).map_err(Error::from)?;
    }
    Ok(passed)
}
