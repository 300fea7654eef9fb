use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use ingleton::catalogue::{entries, run_entry, Subset};
use ingleton::family::{family_report, supersoluble_family_with, FamilyOptions};
use ingleton::group::{build_group_with, BuildOptions, DEFAULT_ORDER_CAP};
use ingleton::record::{outcome_records, verify_record, Record};
use ingleton::search::{search_offenders, Filter, Requirement, SearchOptions};
use ingleton::{Error, GroupSpec};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "ingleton", version, about = "Find and check Ingleton offenders in finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search one group for offender classes and print JSON lines.
    Search(SearchArgs),
    /// Build and check the supersoluble family member for a field size.
    Family(FamilyArgs),
    /// Recompute every offender record in a JSON-lines file.
    Verify {
        file: PathBuf,
    },
    /// Search the built-in list of known violators and clean groups.
    Catalogue {
        #[arg(default_value = "fast")]
        subset: String,
        /// Per-group time budget in seconds.
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args)]
struct GroupArgs {
    /// Named group, e.g. `sym:5` or `direct_product:(alt:4),(alt:4)`.
    #[arg(long, group = "source")]
    named: Option<String>,
    /// Permutation generators in cycle notation, separated by `;` or `,`.
    #[arg(long, group = "source")]
    perm: Option<String>,
    /// Matrix generators `q:m1;m2;...`, each row-major and comma separated.
    #[arg(long, group = "source")]
    matrix: Option<String>,
    /// Largest group order to enumerate.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    cap: usize,
}

impl GroupArgs {
    fn spec(&self) -> Result<GroupSpec, Error> {
        match (&self.named, &self.perm, &self.matrix) {
            (Some(n), _, _) => GroupSpec::parse_named(n),
            (_, Some(p), _) => GroupSpec::parse_perms(p),
            (_, _, Some(m)) => GroupSpec::parse_matrices(m),
            _ => Err(Error::Parse("one of --named, --perm, --matrix is required".into())),
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Keep only quadruples meeting the minimal-violator generation conditions.
    #[arg(long)]
    minimal: bool,
    /// Disable a pruning filter (repeatable); `all` disables every one.
    #[arg(long = "no-filter", value_name = "NAME")]
    no_filter: Vec<String>,
    /// Time budget in seconds.
    #[arg(long, default_value_t = 1800)]
    budget: u64,
    #[arg(long, default_value = "generative", value_parser = ["none", "generative", "irreducible", "indomitable"])]
    require: String,
    /// Write records here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FamilyArgs {
    q: u32,
    /// Primitive element of the field, by encoding.
    #[arg(long)]
    zeta: Option<u8>,
    /// Allow q = 3, where the construction is not an offender.
    #[arg(long)]
    allow_small: bool,
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    cap: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::TimeBudgetExceeded { .. } => EXIT_BUDGET,
        Error::VerificationFailed(_) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

fn output(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn search(args: &SearchArgs) -> Result<u8, Error> {
    let spec = args.group.spec()?;
    let g = build_group_with(&spec, BuildOptions::with_cap(args.group.cap))?;
    let mut disable = Vec::new();
    for name in &args.no_filter {
        if name == "all" {
            disable.extend(Filter::ALL);
        } else {
            disable.push(name.parse::<Filter>()?);
        }
    }
    let opts = SearchOptions {
        require: args.require.parse::<Requirement>()?,
        minimal_mode: args.minimal,
        disable_filters: disable,
        time_budget: Some(Duration::from_secs(args.budget)),
        ..Default::default()
    };
    let out = search_offenders(&g, &opts)?;
    let mut w = output(&args.out).map_err(|e| Error::Parse(e.to_string()))?;
    for r in outcome_records(&g, &out) {
        writeln!(w, "{}", r.to_line()).map_err(|e| Error::Parse(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))?;
    eprintln!(
        "{}: order {}, {} subgroups, {} classes, {:.2}s",
        spec,
        g.order(),
        out.lattice_size,
        out.classes.len(),
        out.elapsed.as_secs_f64()
    );
    if !out.complete {
        eprintln!("time budget of {}s exhausted; results are partial", args.budget);
        return Ok(EXIT_BUDGET);
    }
    Ok(0)
}

fn family(args: &FamilyArgs) -> Result<u8, Error> {
    let opts = FamilyOptions {
        zeta: args.zeta,
        order_cap: args.cap,
        allow_small: args.allow_small,
    };
    let fq = supersoluble_family_with(args.q, &opts)?;
    let rep = family_report(&fq)?;
    if let Some(w) = &rep.warning {
        eprintln!("warning: {w}");
    }
    let mut w = output(&args.out).map_err(|e| Error::Parse(e.to_string()))?;
    writeln!(w, "{}", serde_json::to_string(&rep).expect("report serializes")).map_err(|e| Error::Parse(e.to_string()))?;
    w.flush().map_err(|e| Error::Parse(e.to_string()))?;
    match rep.first_failure() {
        Some(c) => {
            eprintln!("clause failed: {c}");
            Ok(EXIT_MISMATCH)
        }
        None => Ok(0),
    }
}

fn verify(file: &PathBuf) -> Result<u8, Error> {
    let f = File::open(file).map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
    let mut checked = 0;
    let mut failed = 0;
    for (n, line) in BufReader::new(f).lines().enumerate() {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let Record::Offender(rec) = Record::parse(&line)? else {
            continue;
        };
        checked += 1;
        let mism = verify_record(&rec)?;
        for m in &mism {
            eprintln!("line {}: {m}", n + 1);
        }
        if !mism.is_empty() {
            failed += 1;
        }
    }
    eprintln!("{checked} records checked, {failed} mismatching");
    Ok(if failed == 0 { 0 } else { EXIT_MISMATCH })
}

fn catalogue(subset: &str, budget: Option<u64>) -> Result<u8, Error> {
    let subset: Subset = subset.parse()?;
    let mut code = 0;
    for e in entries(subset) {
        let row = run_entry(e, budget.map(Duration::from_secs))?;
        println!("{row}");
        if !row.passed() {
            // a genuine mismatch outranks a budget overrun
            code = if row.complete { EXIT_MISMATCH } else if code == 0 { EXIT_BUDGET } else { code };
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Search(a) => search(a),
        Command::Family(a) => family(a),
        Command::Verify { file } => verify(file),
        Command::Catalogue { subset, budget } => catalogue(subset, *budget),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
