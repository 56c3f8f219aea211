use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use chevalley_elim::coset::coset_index;
use chevalley_elim::elimination::{decompose_with, reconstruct, Decomposition, Options};
use chevalley_elim::harness::sample::default_length;
use chevalley_elim::harness::{enumerate_small_group, run_bench, sample_element, write_csv, BenchPlan};
use chevalley_elim::matrix::Matrix;
use chevalley_elim::spinor::omega_test;
use chevalley_elim::{Error, Field, GroupKind, Result, Word};

#[derive(Parser)]
#[command(name = "chevalley", version, about = "Gaussian elimination in Sp and O via elementary generators")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// group, e.g. sp:3, o-even:2, o-odd:4
    #[arg(long, global = true)]
    group: Option<String>,
    /// field, e.g. gf(7), gf(7^3), q
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 10)]
    trials: usize,
    /// word length for sampling (default 10·l)
    #[arg(long, global = true)]
    length: Option<usize>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// vary-l, vary-field or sweep:<group>:<field>:<l,...>
    #[arg(long, global = true, default_value = "vary-l")]
    plan: String,
    /// assert intermediate block shapes during elimination
    #[arg(long, global = true)]
    checked: bool,
    /// also print coset witness words
    #[arg(long, global = true)]
    witness: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduce a matrix to diagonal form and print the words used
    Decompose { input: Option<PathBuf> },
    /// Compare a matrix with a word or decomposition that follows it
    Verify { input: Option<PathBuf> },
    /// Spinor norm, determinant, SO and Ω membership
    Spinor { input: Option<PathBuf> },
    /// Siegel double coset index
    Coset { input: Option<PathBuf> },
    /// Random element as a matrix and the word that produced it
    Sample,
    /// Time decompositions and write CSV
    Bench,
    /// Enumerate a small group and check every element
    Enumerate,
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    let mut s = String::new();
    match path {
        Some(p) => s = fs::read_to_string(p).map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display())))?,
        None => {
            io::stdin().read_to_string(&mut s).map_err(|e| Error::InvalidArgument(format!("stdin: {e}")))?;
        }
    }
    Ok(s)
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(p) => fs::write(p, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display()))),
        None => {
            io::stdout().write_all(text.as_bytes()).map_err(|e| Error::InvalidArgument(e.to_string()))
        }
    }
}

fn group_and_field(cli: &Cli) -> Result<(GroupKind, Field)> {
    let kind: GroupKind = cli
        .group
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("--group is required".into()))?
        .parse()?;
    let field = Field::new(
        cli.field.as_deref().ok_or_else(|| Error::InvalidArgument("--field is required".into()))?.parse()?,
    )?;
    kind.check_field(&field)?;
    Ok((kind, field))
}

fn run(cli: &Cli) -> Result<()> {
    let opts = Options { checked: cli.checked };
    match &cli.cmd {
        Cmd::Decompose { input } => {
            let (kind, field) = group_and_field(cli)?;
            let g = Matrix::from_text(&field, &read_input(input)?)?;
            emit(cli, &decompose_with(kind, &g, opts)?.to_text())
        }
        Cmd::Verify { input } => {
            let (kind, field) = group_and_field(cli)?;
            let text = read_input(input)?;
            let mut lines = text.lines().peekable();
            let g = Matrix::parse_lines(&field, &mut lines)?;
            let rest: Vec<&str> = lines.collect();
            let rest = rest.join("\n");
            let first = rest.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
            let h = if first.is_some_and(|l| l.starts_with("decomposition")) {
                let dec = Decomposition::from_text(&field, &rest)?;
                if dec.kind != kind {
                    return Err(Error::WrongKind { expected: kind.to_string(), found: dec.kind.to_string() });
                }
                reconstruct(&dec)?
            } else {
                let w = Word::from_text(&field, &rest)?;
                w.validate(kind)?;
                w.evaluate(kind, &field)?
            };
            emit(cli, if h == g { "EQUAL\n" } else { "DIFFER\n" })
        }
        Cmd::Spinor { input } => {
            let (kind, field) = group_and_field(cli)?;
            let g = Matrix::from_text(&field, &read_input(input)?)?;
            let v = omega_test(kind, &g)?;
            let spinor = v.spinor.ok_or_else(|| Error::NotAMember(kind.to_string()))?;
            emit(
                cli,
                &format!("class={spinor} det={} in_SO={} in_Omega={}\n", v.det, v.in_so, v.in_omega),
            )
        }
        Cmd::Coset { input } => {
            let (kind, field) = group_and_field(cli)?;
            let g = Matrix::from_text(&field, &read_input(input)?)?;
            let res = coset_index(kind, &g)?;
            let mut s = format!("m={}\n", res.m);
            if cli.witness {
                let theta = res.theta.map_or("none".to_string(), |t| t.to_string());
                s += &format!("lambda={} theta={theta}\n", field.format_elem(&res.lambda));
                s += &format!("pword\n{}qword\n{}", res.p_word.to_text(&field), res.q_word.to_text(&field));
            }
            emit(cli, &s)
        }
        Cmd::Sample => {
            let (kind, field) = group_and_field(cli)?;
            let len = cli.length.unwrap_or_else(|| default_length(kind));
            let (w, g) = sample_element(kind, &field, len, cli.seed)?;
            emit(cli, &format!("{}word\n{}", g.to_text(), w.to_text(&field)))
        }
        Cmd::Bench => {
            let plan: BenchPlan = cli.plan.parse()?;
            let records = run_bench(&plan, cli.trials, cli.seed, cli.length)?;
            let mut buf = Vec::new();
            write_csv(&records, &mut buf)?;
            emit(cli, &String::from_utf8(buf).expect("csv is utf-8"))
        }
        Cmd::Enumerate => {
            let (kind, field) = group_and_field(cli)?;
            emit(cli, &enumerate_small_group(kind, &field)?.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::NotAMember(_) => 2,
                Error::InternalInvariantViolation(_) => 3,
                _ => 1,
            })
        }
    }
}
