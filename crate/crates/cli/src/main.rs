use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fflv_core::characters::{dim, qchar_branching, qchar_polytope, DimMethod};
use fflv_core::marked_poset::{
    chain_point_count, fflv_marked_poset, n1_family_poset, n1_formula, order_points, transfer,
    Attachment, OrderPoint,
};
use fflv_core::polytope::ehrhart_counts;
use fflv_core::{build_poset, dyck_paths, enumerate, inequalities, DominantWeight, Error, Family};

mod verify;

/// Exit code for usage errors, matching clap.
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "fflv", version, about = "FFLV polytopes for even and odd symplectic Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Even,
    Odd,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Even => Family::Even,
            FamilyArg::Odd => Family::Odd,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Polytope,
    Branching,
    Weyl,
}

impl From<MethodArg> for DimMethod {
    fn from(m: MethodArg) -> DimMethod {
        match m {
            MethodArg::Polytope => DimMethod::Polytope,
            MethodArg::Branching => DimMethod::Branching,
            MethodArg::Weyl => DimMethod::Weyl,
        }
    }
}

#[derive(Args)]
struct Rank {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// rank n ≥ 1
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct Weighted {
    #[command(flatten)]
    rank: Rank,
    /// fundamental coordinates m_1,...,m_n
    #[arg(long)]
    weight: DominantWeight,
}

#[derive(Subcommand)]
enum Command {
    /// Root poset: elements and covers
    Poset(Rank),
    /// Symplectic Dyck paths
    Paths(Rank),
    /// Path inequalities for a weight
    Ineq(Weighted),
    /// Lattice points, or their number with --count
    Points {
        #[command(flatten)]
        w: Weighted,
        #[arg(long)]
        count: bool,
    },
    /// Graded character
    Char {
        #[command(flatten)]
        w: Weighted,
        /// polytope, or branching (odd family)
        #[arg(long, value_enum, default_value_t = MethodArg::Polytope)]
        method: MethodArg,
    },
    /// Dimension
    Dim {
        #[command(flatten)]
        w: Weighted,
        /// polytope, branching (odd family) or weyl (even family)
        #[arg(long, value_enum, default_value_t = MethodArg::Polytope)]
        method: MethodArg,
    },
    /// Lattice-point counts of the dilations tλ, t = 0..=t-max
    Ehrhart {
        #[command(flatten)]
        w: Weighted,
        #[arg(long, default_value_t = 5)]
        t_max: u32,
    },
    /// Transfer map from the marked order polytope to the chain polytope
    Transfer {
        #[command(flatten)]
        w: Weighted,
        /// values on the roots in canonical order; all order points if absent
        #[arg(long)]
        point: Option<String>,
    },
    /// Chain-point counts of the n = 1 family against the product formula
    N1 {
        #[arg(long)]
        k: usize,
        /// m_1,...,m_{k-1} (empty for k = 1)
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        weight: String,
        /// `parallel`, `below:xR,C` or `above:xR,C`; all candidates if absent
        #[arg(long)]
        attachment: Option<Attachment>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exhaustive verification sweeps
    Verify(verify::VerifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match run(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    };
    if out.flush().is_err() {
        return ExitCode::FAILURE;
    }
    code
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(io::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn parse_list(s: &str) -> CliResult<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("bad integer list `{s}`"))))
        .collect()
}

fn run(command: Command, out: &mut impl Write) -> CliResult<ExitCode> {
    match command {
        Command::Poset(r) => {
            let poset = build_poset(r.family.into(), r.n)?;
            match r.format {
                Format::Json => writeln!(out, "{}", poset.to_json())?,
                Format::Csv => {
                    writeln!(out, "lower,upper")?;
                    for &(a, b) in poset.covers() {
                        writeln!(out, "\"{}\",\"{}\"", poset.label(a), poset.label(b))?;
                    }
                }
                Format::Text => {
                    for &(a, b) in poset.covers() {
                        writeln!(out, "({}) < ({})", poset.label(a), poset.label(b))?;
                    }
                }
            }
        }
        Command::Paths(r) => {
            for p in dyck_paths(&build_poset(r.family.into(), r.n)?) {
                match r.format {
                    Format::Json => writeln!(out, "{}", p.to_json())?,
                    Format::Csv => writeln!(out, "\"{}\"", join(&p.roots, ";"))?,
                    Format::Text => writeln!(out, "{p}")?,
                }
            }
        }
        Command::Ineq(w) => {
            let sys = inequalities(w.rank.family.into(), w.rank.n, &w.weight)?;
            if w.rank.format == Format::Csv {
                writeln!(out, "support,bound")?;
            }
            for row in sys.rows() {
                match w.rank.format {
                    Format::Json => writeln!(out, "{}", serde_json::to_string(row).expect("rows serialize"))?,
                    Format::Csv => writeln!(out, "\"{}\",{}", join(&row.support, ";"), row.bound)?,
                    Format::Text => {
                        let lhs: Vec<String> = row.support.iter().map(|l| format!("s[{l}]")).collect();
                        writeln!(out, "{} <= {}", lhs.join(" + "), row.bound)?
                    }
                }
            }
        }
        Command::Points { w, count } => {
            let sys = inequalities(w.rank.family.into(), w.rank.n, &w.weight)?;
            if count {
                let c = sys.count();
                match w.rank.format {
                    Format::Csv => writeln!(out, "count\n{c}")?,
                    _ => writeln!(out, "{c}")?,
                }
            } else {
                let points = enumerate(&sys);
                match w.rank.format {
                    Format::Json => write!(out, "{}", points.to_json_lines())?,
                    Format::Csv => {
                        writeln!(out, "{}", join(sys.labels(), "|").replace(',', "_").replace('|', ","))?;
                        for p in points.iter() {
                            writeln!(out, "{}", join(p, ","))?;
                        }
                    }
                    Format::Text => {
                        for p in points.iter() {
                            writeln!(out, "({})", join(p, ", "))?;
                        }
                    }
                }
            }
        }
        Command::Char { w, method } => {
            let (family, n) = (w.rank.family.into(), w.rank.n);
            let chr = match (method, family) {
                (MethodArg::Polytope, _) => qchar_polytope(family, n, &w.weight)?,
                (MethodArg::Branching, Family::Odd) => qchar_branching(n, &w.weight)?,
                _ => {
                    return Err(Error::MethodFamilyMismatch {
                        method: DimMethod::from(method).to_string(),
                        family: family.to_string(),
                    }
                    .into())
                }
            };
            match w.rank.format {
                Format::Json => writeln!(out, "{}", chr.to_json())?,
                Format::Csv => {
                    writeln!(out, "weight,degree,multiplicity")?;
                    for (wt, poly) in chr.terms() {
                        for (e, c) in poly.terms() {
                            writeln!(out, "\"{}\",{e},{c}", join(&wt.0, ","))?;
                        }
                    }
                }
                Format::Text => {
                    for (wt, poly) in chr.terms() {
                        writeln!(out, "({}): {poly}", join(&wt.0, ", "))?;
                    }
                }
            }
        }
        Command::Dim { w, method } => {
            let d = dim(w.rank.family.into(), w.rank.n, &w.weight, method.into())?;
            match w.rank.format {
                Format::Csv => writeln!(out, "dim\n{d}")?,
                _ => writeln!(out, "{d}")?,
            }
        }
        Command::Ehrhart { w, t_max } => {
            let counts = ehrhart_counts(w.rank.family.into(), w.rank.n, &w.weight, t_max)?;
            match w.rank.format {
                Format::Json => writeln!(out, "{}", serde_json::json!(counts))?,
                Format::Csv => {
                    writeln!(out, "t,count")?;
                    for (t, c) in counts.iter().enumerate() {
                        writeln!(out, "{t},{c}")?;
                    }
                }
                Format::Text => {
                    for (t, c) in counts.iter().enumerate() {
                        writeln!(out, "{t} {c}")?;
                    }
                }
            }
        }
        Command::Transfer { w, point } => {
            let poset = fflv_marked_poset(w.rank.family.into(), w.rank.n, &w.weight)?;
            let unmarked = poset.unmarked();
            let points = match point {
                Some(s) => {
                    let values = parse_list(&s)?;
                    if values.len() != unmarked.len() {
                        return Err(Error::PointLength { expected: unmarked.len(), got: values.len() }.into());
                    }
                    let mut x: Vec<i64> = (0..poset.len()).map(|k| poset.marking(k).unwrap_or(0)).collect();
                    for (&k, v) in unmarked.iter().zip(values) {
                        x[k] = v;
                    }
                    vec![OrderPoint(x)]
                }
                None => order_points(&poset)?,
            };
            if w.rank.format == Format::Csv {
                writeln!(out, "order,chain")?;
            }
            for x in points {
                let y = transfer(&poset, &x)?;
                let xs: Vec<i64> = unmarked.iter().map(|&k| x.0[k]).collect();
                match w.rank.format {
                    Format::Json => writeln!(out, "{}", serde_json::json!({ "order": xs, "chain": y }))?,
                    Format::Csv => writeln!(out, "\"{}\",\"{}\"", join(&xs, ","), join(&y, ","))?,
                    Format::Text => writeln!(out, "({}) -> ({})", join(&xs, ", "), join(&y, ", "))?,
                }
            }
        }
        Command::N1 { k, weight, attachment, format } => {
            let m: Vec<u32> = parse_list(&weight)?
                .into_iter()
                .map(|v| u32::try_from(v).map_err(|_| CliError::Usage(format!("negative coordinate in `{weight}`"))))
                .collect::<CliResult<_>>()?;
            let formula = n1_formula(k, &m)?;
            let candidates = match attachment {
                Some(a) => vec![a],
                None => Attachment::candidates(k).into_iter().filter(|a| a.applies_to(k)).collect(),
            };
            if format == Format::Csv {
                writeln!(out, "attachment,count,formula,match")?;
            }
            if candidates.is_empty() {
                match format {
                    Format::Json => writeln!(
                        out,
                        "{}",
                        serde_json::json!({ "attachment": null, "k": k, "m": m, "formula": formula.to_string() })
                    )?,
                    Format::Csv => writeln!(out, ",,{formula},")?,
                    Format::Text => writeln!(out, "no attachment at k = {k}; formula {formula}")?,
                }
            }
            for a in candidates {
                let count = chain_point_count(&n1_family_poset(k, &m, a)?)?;
                let hit = formula == num_rational::BigRational::from_integer(count.into());
                match format {
                    Format::Json => writeln!(
                        out,
                        "{}",
                        serde_json::json!({
                            "attachment": a.to_string(), "k": k, "m": m,
                            "count": count, "formula": formula.to_string(), "match": hit,
                        })
                    )?,
                    Format::Csv => writeln!(out, "{a},{count},{formula},{hit}")?,
                    Format::Text => writeln!(out, "{a}: count {count}, formula {formula}, match {hit}")?,
                }
            }
        }
        Command::Verify(args) => return verify::run(args, out),
    }
    Ok(ExitCode::SUCCESS)
}
