use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

use preprim::blocks::{is_invariant, kernel_orbit_test, DEFAULT_MAX_SYSTEMS};
use preprim::cayley::DEFAULT_TABLE_BUDGET;
use preprim::classify::{classify, section_regular_search, Caps};
use preprim::construct::{self, DEFAULT_MAX_DEGREE};
use preprim::enumerate::{export_catalog, groups_of_order, transitive_groups};
use preprim::expr::{self, BuildLimits};
use preprim::group::DEFAULT_ELEMENT_BUDGET;
use preprim::survey::{self, classify_catalog, load_catalog, reference_notes, survey_table};
use preprim::{Error, Partition, PermGroup};

#[derive(Parser, Debug)]
#[command(
    name = "preprim",
    version,
    about = "Primitivity, quasiprimitivity and pre-primitivity of permutation groups"
)]
struct Cli {
    #[command(flatten)]
    caps: CapArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CapArgs {
    /// Largest group order for element enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_BUDGET)]
    max_order: u64,
    /// Largest number of block systems per group.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SYSTEMS)]
    max_systems: usize,
    /// Largest degree for the section-regular search.
    #[arg(long, global = true, default_value_t = 12)]
    max_degree: usize,
    /// Largest degree of a constructed group.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEGREE)]
    max_build_degree: usize,
    /// Largest table whose automorphisms are enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_TABLE_BUDGET)]
    max_table: usize,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps {
            max_systems: self.max_systems,
            max_order: self.max_order,
            max_degree: self.max_degree,
            ..Caps::default()
        }
    }

    fn limits(&self) -> BuildLimits {
        BuildLimits {
            max_degree: self.max_build_degree,
            max_table: self.max_table,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the primitivity flags of one group or of every catalog entry.
    #[command(group(ArgGroup::new("source").required(true).args(["expr", "catalog"])))]
    Classify {
        #[arg(long)]
        expr: Option<String>,
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Restrict a catalog run to one entry.
        #[arg(long, requires = "catalog")]
        name: Option<String>,
        /// Test one partition, 1-based, parts separated by '|'.
        #[arg(long, requires = "expr")]
        check_partition: Option<String>,
    },
    /// Per-degree counts and association statistics over a catalog.
    Survey {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long, conflicts_with = "tsv")]
        csv: bool,
        #[arg(long)]
        tsv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a group and print its generators.
    Construct {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        export_catalog: bool,
    },
    /// Synchronization flags from the section-regular partition search.
    Sync {
        #[arg(long)]
        expr: String,
    },
    /// List transitive groups of a degree or abstract groups of an order.
    #[command(group(ArgGroup::new("what").required(true).args(["transitive", "order"])))]
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=7))]
        transitive: Option<u32>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        order: Option<u32>,
        #[arg(long)]
        export_catalog: bool,
    },
}

/// Errors in user-supplied text are usage errors; the rest are computational.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CycleSyntax { .. }
        | Error::PartitionSyntax(_)
        | Error::Expr { .. }
        | Error::Catalog { .. }
        | Error::Io(_)
        | Error::InvalidArgument(_)
        | Error::PointOutOfRange { .. }
        | Error::RepeatedPoint(_) => 2,
        _ => 1,
    }
}

fn flag(b: bool) -> u8 {
    b as u8
}

fn build(text: &str, caps: &CapArgs) -> preprim::Result<(String, PermGroup)> {
    let e = expr::parse(text)?;
    Ok((e.to_string(), e.build(&caps.limits())?))
}

fn classify_expr(text: &str, check: Option<&str>, args: &CapArgs) -> preprim::Result<String> {
    let (canonical, g) = build(text, args)?;
    let f = classify(&g, &args.caps())?;
    let mut out = String::new();
    writeln!(out, "expr: {canonical}").unwrap();
    writeln!(out, "degree: {}", g.degree()).unwrap();
    writeln!(out, "order: {}", g.order()).unwrap();
    writeln!(
        out,
        "transitive={} primitive={} quasiprimitive={} preprimitive={}",
        flag(f.transitive),
        flag(f.primitive),
        flag(f.quasiprimitive),
        flag(f.preprimitive)
    )
    .unwrap();
    writeln!(out, "block_systems: {}", f.block_systems).unwrap();
    if let Some(w) = &f.witness {
        writeln!(out, "witness: {w}").unwrap();
    }
    if let Some(text) = check {
        let pi = Partition::parse(text, g.degree())?;
        let invariant = is_invariant(&g, &pi);
        let kernel_orbits = invariant && kernel_orbit_test(&g, &pi)?;
        writeln!(
            out,
            "partition: {pi} invariant={} kernel_orbits={}",
            flag(invariant),
            flag(kernel_orbits)
        )
        .unwrap();
    }
    Ok(out)
}

/// Returns the report and whether any entry failed.
fn classify_catalog_cmd(path: &Path, name: Option<&str>, args: &CapArgs) -> preprim::Result<(String, Vec<String>)> {
    let cat = load_catalog(path)?;
    let entries: Vec<_> = cat
        .entries
        .into_iter()
        .filter(|e| name.is_none_or(|n| e.name == n))
        .collect();
    if let Some(n) = name {
        if entries.is_empty() {
            return Err(Error::InvalidArgument(format!("no catalog entry named '{n}'")));
        }
    }
    let mut out =
        String::from("name,degree,order,transitive,primitive,quasiprimitive,preprimitive,block_systems,witness\n");
    let mut errors = Vec::new();
    for r in classify_catalog(&entries, &args.caps()) {
        let order = r.order.as_ref().map(|o| o.to_string()).unwrap_or_default();
        match &r.outcome {
            Ok(f) => {
                let witness = f.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{order},{},{},\"{witness}\"",
                    r.name,
                    r.degree,
                    f.csv_fragment(),
                    f.block_systems
                )
                .unwrap();
            }
            Err(e) => errors.push(format!("{}: {e}", r.name)),
        }
    }
    Ok((out, errors))
}

fn run(cli: &Cli) -> Result<String, (u8, String)> {
    let fail = |e: Error| (exit_code(&e), e.to_string());
    let args = &cli.caps;
    match &cli.command {
        Command::Classify {
            expr: Some(text),
            check_partition,
            ..
        } => classify_expr(text, check_partition.as_deref(), args).map_err(fail),
        Command::Classify {
            catalog: Some(path),
            name,
            ..
        } => {
            let (out, errors) = classify_catalog_cmd(path, name.as_deref(), args).map_err(fail)?;
            if errors.is_empty() {
                Ok(out)
            } else {
                print!("{out}");
                Err((1, errors.join("\n")))
            }
        }
        Command::Classify { .. } => unreachable!("clap enforces a source"),
        Command::Survey { catalog, tsv, out, .. } => {
            let cat = load_catalog(catalog).map_err(fail)?;
            let records = classify_catalog(&cat.entries, &args.caps());
            for r in &records {
                if let Err(e) = &r.outcome {
                    eprintln!("{}: excluded: {e}", r.name);
                }
            }
            let rows = survey_table(&records);
            for note in reference_notes(&rows) {
                eprintln!("note: {note}");
            }
            let text = survey::render_table(&rows, if *tsv { '\t' } else { ',' });
            match out {
                Some(path) => {
                    std::fs::write(path, &text).map_err(|e| (2, format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Construct { expr, export_catalog } => {
            let (canonical, g) = build(expr, args).map_err(fail)?;
            let gens: Vec<String> = g.generators().iter().map(|x| x.to_string()).collect();
            if *export_catalog {
                Ok(format!("{canonical}|{}|{}\n", g.degree(), gens.join(";")))
            } else {
                let mut out = format!("expr: {canonical}\ndegree: {}\norder: {}\n", g.degree(), g.order());
                for x in gens {
                    writeln!(out, "gen: {x}").unwrap();
                }
                Ok(out)
            }
        }
        Command::Sync { expr } => {
            let (canonical, g) = build(expr, args).map_err(fail)?;
            let found = section_regular_search(&g, &args.caps()).map_err(fail)?;
            let sync = found.is_empty();
            let presync = found.iter().all(|w| w.invariant);
            let mut out = format!(
                "expr: {canonical}\nsynchronizing={} presynchronizing={}\n",
                flag(sync),
                flag(presync)
            );
            for w in &found {
                let section: Vec<String> = w.section.iter().map(|p| (p + 1).to_string()).collect();
                writeln!(
                    out,
                    "section_regular: {} section={} invariant={}",
                    w.partition,
                    section.join(","),
                    flag(w.invariant)
                )
                .unwrap();
            }
            Ok(out)
        }
        Command::Enumerate {
            transitive: Some(n),
            export_catalog: export,
            ..
        } => {
            let n = *n as usize;
            let groups = transitive_groups(n).map_err(fail)?;
            if *export {
                return Ok(export_catalog(n, &groups));
            }
            let mut out = String::new();
            for (k, g) in groups.iter().enumerate() {
                let gens: Vec<String> = g.generators().iter().map(|x| x.to_string()).collect();
                writeln!(out, "T{n}_{} order={} gens={}", k + 1, g.order(), gens.join(";")).unwrap();
            }
            Ok(out)
        }
        Command::Enumerate {
            order: Some(n),
            export_catalog: export,
            ..
        } => {
            let n = *n as usize;
            let tables = groups_of_order(n).map_err(fail)?;
            let mut out = String::new();
            for (k, t) in tables.iter().enumerate() {
                let name = t
                    .name()
                    .map(str::to_string)
                    .unwrap_or_else(|| format!("G{n}_{}", k + 1));
                if *export {
                    // regular actions; not a complete list of a degree
                    let g = construct::regular_action(t);
                    let gens: Vec<String> = g.generators().iter().map(|x| x.to_string()).collect();
                    writeln!(out, "{name}|{n}|{}", gens.join(";")).unwrap();
                } else {
                    writeln!(out, "{name} order={n} abelian={}", flag(t.is_abelian())).unwrap();
                }
            }
            Ok(out)
        }
        Command::Enumerate { .. } => unreachable!("clap enforces a choice"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
