//! `arbor`: command-line front end for the rooted-tree Hopf algebra library.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or input error,
//! 3 internal mismatch between two independent computations.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use arbor_hopf::bseries::{self, PolyVectorField};
use arbor_hopf::characters::{self, ConvolutionContext, Named};
use arbor_hopf::hopf::{self, AntipodeMethod};
use arbor_hopf::prelie::{self, PreLie};
use arbor_hopf::qshuffle::{self, WordPoly};
use arbor_hopf::rational::{self, Rational};
use arbor_hopf::report::Report;
use arbor_hopf::suite;
use arbor_hopf::trees::{self, TreeGrading};
use arbor_hopf::{Algebra, Error, Forest, Functional, Grading, Tree};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const DEFAULT_DEGREE: usize = 5;
const DEGREE_CAP: usize = 9;

#[derive(Parser)]
#[command(name = "arbor", version, about = "Exact computations on rooted-tree Hopf algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate trees and print their statistics.
    #[command(subcommand)]
    Trees(TreesCmd),
    /// Coproducts and antipodes.
    #[command(subcommand)]
    Hopf(HopfCmd),
    /// Character tables, convolution and the character identities.
    #[command(subcommand)]
    Characters(CharactersCmd),
    /// Pre-Lie products and the Magnus expansion.
    #[command(subcommand)]
    Prelie(PrelieCmd),
    /// The quasi-shuffle image of trees.
    #[command(subcommand)]
    Qshuffle(QshuffleCmd),
    /// B-series substitution and composition checks.
    #[command(subcommand)]
    Bseries(BseriesCmd),
    /// Property suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    #[value(name = "H")]
    H,
    #[value(name = "H_sigma")]
    HSigma,
    #[value(name = "Htilde")]
    HTilde,
    #[value(name = "CK")]
    Ck,
}

impl From<Variant> for Algebra {
    fn from(v: Variant) -> Algebra {
        match v {
            Variant::H => Algebra::H,
            Variant::HSigma => Algebra::HSigma,
            Variant::HTilde => Algebra::HTilde,
            Variant::Ck => Algebra::CK,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Recursive,
    Right,
    Closed,
}

impl From<Method> for AntipodeMethod {
    fn from(m: Method) -> AntipodeMethod {
        match m {
            Method::Recursive => AntipodeMethod::Recursive,
            Method::Right => AntipodeMethod::RecursiveRight,
            Method::Closed => AntipodeMethod::ClosedForm,
        }
    }
}

#[derive(Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum TreesCmd {
    /// All trees of a given size, in canonical order.
    Enumerate {
        #[arg(long, conflicts_with = "edges", required_unless_present = "edges")]
        vertices: Option<usize>,
        #[arg(long)]
        edges: Option<usize>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Vertices, edges, tree factorial, symmetry factor and CM coefficient.
    Stats {
        /// Trees or forests such as `[[][]]` or `[]·[[]]`.
        #[arg(required = true)]
        forests: Vec<String>,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum HopfCmd {
    /// Coproduct of a forest.
    Coproduct {
        #[arg(long, value_enum, default_value_t = Variant::H)]
        variant: Variant,
        /// Drop the primitive terms.
        #[arg(long)]
        reduced: bool,
        forest: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Antipode of a forest, or of every tree up to `--max-degree`.
    Antipode {
        #[arg(long, value_enum, default_value_t = Variant::H)]
        variant: Variant,
        #[arg(long, value_enum, default_value_t = Method::Recursive)]
        method: Method,
        #[arg(long, required_unless_present = "forest")]
        max_degree: Option<usize>,
        forest: Option<String>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Coassociativity and counit on every forest up to `--max-degree`.
    VerifyCoassoc {
        #[arg(long, value_enum, default_value_t = Variant::H)]
        variant: Variant,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        max_degree: usize,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum CharactersCmd {
    /// Values of a named character on every tree up to a degree, with the
    /// values divided by the symmetry factor.
    Table {
        #[arg(long)]
        name: String,
        /// Vertices for CK characters, edges for H characters.
        #[arg(long, alias = "max-vertices", default_value_t = DEFAULT_DEGREE)]
        max_degree: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Convolution `f ⋆ g` of two named characters on the same algebra.
    Convolve {
        left: String,
        right: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        max_degree: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Character identities.
    #[command(subcommand)]
    Verify(CharVerifyCmd),
    /// `ω` computed as `log*δ` and as `L⋆δ_•`, printed when both agree.
    Omega {
        #[arg(long, alias = "max-degree", default_value_t = DEFAULT_DEGREE)]
        max_vertices: usize,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum CharVerifyCmd {
    /// CHV1 to CHV5, the composition theorem, the correspondence and the suite.
    Chv {
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        max_degree: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum PrelieCmd {
    /// `t ▷ u`, or `t ▷_σ u` with `--normalized`.
    Insert {
        t: String,
        u: String,
        #[arg(long)]
        normalized: bool,
    },
    /// `t → u`, or `t ↷ u` with `--normalized`.
    Graft {
        t: String,
        u: String,
        #[arg(long)]
        normalized: bool,
    },
    /// The fixed point `Ω′` of the pre-Lie Magnus expansion for `↷`.
    Magnus {
        #[arg(long, alias = "max-degree", default_value_t = DEFAULT_DEGREE)]
        max_vertices: usize,
    },
}

#[derive(Subcommand)]
enum QshuffleCmd {
    /// The polynomial `Λ(t)`.
    Lambda {
        forest: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// The numbers `ω_s(t)` and the resulting `ω(t)`.
    OmegaS {
        tree: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// `x^{k_1} ⋄ ⋯ ⋄ x^{k_n}`, or the coefficient of `x^r` with `--r`.
    Qsh {
        #[arg(required = true)]
        exponents: Vec<usize>,
        #[arg(long)]
        r: Option<usize>,
    },
}

#[derive(Args)]
struct BseriesArgs {
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Components separated by `;`, variables `y` (d = 1) or `y1 … yd`.
    #[arg(long, default_value = "y^2")]
    field: String,
    #[arg(long, default_value_t = 4)]
    order: usize,
    /// JSON map from trees to rationals; default `• ↦ 1, E_1 ↦ 1/2`.
    #[arg(long)]
    alpha: Option<PathBuf>,
    /// JSON map from trees to rationals; default `t ↦ 1/t!`.
    #[arg(long)]
    beta: Option<PathBuf>,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Subcommand)]
enum BseriesCmd {
    /// `B(β; h⁻¹B(α; a)) = B(α⋆β; a)`.
    VerifySubstitution {
        #[command(flatten)]
        args: BseriesArgs,
        /// Allow `α(•) ≠ 1`.
        #[arg(long)]
        general_bullet: bool,
    },
    /// `B(β; a)∘B(α; a) = B(α∗β; a)`.
    VerifyComposition {
        #[command(flatten)]
        args: BseriesArgs,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Every property suite.
    All {
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        max_degree: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// The character identities only.
    Chv {
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        max_degree: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        format: FormatArg,
    },
}

enum Failure {
    Usage(String),
    Verification,
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Mismatch(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Trees(c) => trees_cmd(c),
        Command::Hopf(c) => hopf_cmd(c),
        Command::Characters(c) => characters_cmd(c),
        Command::Prelie(c) => prelie_cmd(c),
        Command::Qshuffle(c) => qshuffle_cmd(c),
        Command::Bseries(c) => bseries_cmd(c),
        Command::Verify(c) => verify_cmd(c),
    }
}

/// Degrees above the cap are lowered to it; the work grows exponentially.
fn capped(degree: usize) -> usize {
    if degree > DEGREE_CAP {
        eprintln!("warning: degree {degree} lowered to {DEGREE_CAP}; the cost grows exponentially with the degree");
        DEGREE_CAP
    } else {
        degree
    }
}

fn parse_tree(s: &str) -> Result<Tree, Failure> {
    Ok(Tree::parse(s)?)
}

fn parse_forest(s: &str) -> Result<Forest, Failure> {
    Ok(Forest::parse(s)?)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn fmt_opt(r: &Option<Rational>) -> String {
    r.as_ref().map(rational::format).unwrap_or_else(|| "-".to_string())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn print_rows(header: &[&str], rows: &[Vec<String>], format: Format) {
    match format {
        Format::Json => {
            let arr = rows
                .iter()
                .map(|r| Value::Object(header.iter().zip(r).map(|(h, v)| (h.to_string(), json!(v))).collect()))
                .collect();
            print_json(&Value::Array(arr));
        }
        Format::Csv => {
            println!("{}", header.join(","));
            for r in rows {
                println!("{}", r.iter().map(|s| csv_field(s)).collect::<Vec<_>>().join(","));
            }
        }
        Format::Text => {
            let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
            for r in rows {
                for (w, v) in width.iter_mut().zip(r) {
                    *w = (*w).max(v.chars().count());
                }
            }
            let line = |cells: Vec<String>| {
                let mut out = String::new();
                for (i, (c, w)) in cells.iter().zip(&width).enumerate() {
                    if i > 0 {
                        out.push_str("  ");
                    }
                    let _ = write!(out, "{c:<w$}");
                }
                println!("{}", out.trim_end());
            };
            line(header.iter().map(|s| s.to_string()).collect());
            for r in rows {
                line(r.clone());
            }
        }
    }
}

fn report_outcome(report: &Report, format: Format) -> Outcome {
    match format {
        Format::Json => print_json(&report.to_json()),
        Format::Csv => {
            println!("name,passed,detail");
            for c in &report.checks {
                println!("{},{},{}", csv_field(&c.name), c.passed, csv_field(&c.detail));
            }
        }
        Format::Text => {
            print!("{report}");
            let failed = report.failures().count();
            println!("{} checks, {} failed", report.checks.len(), failed);
        }
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn trees_cmd(c: TreesCmd) -> Outcome {
    match c {
        TreesCmd::Enumerate { vertices, edges, format } => {
            let ts = match (vertices, edges) {
                (Some(n), _) => trees::enumerate_trees(capped(n), TreeGrading::Vertices),
                (None, Some(n)) => trees::enumerate_trees(capped(n), TreeGrading::Edges),
                (None, None) => return Err(Failure::Usage("give --vertices or --edges".into())),
            };
            match format.format {
                Format::Text => ts.iter().for_each(|t| println!("{t}")),
                Format::Json => print_json(&json!(ts.iter().map(|t| t.to_string()).collect::<Vec<_>>())),
                Format::Csv => {
                    println!("tree");
                    ts.iter().for_each(|t| println!("{t}"));
                }
            }
            Ok(())
        }
        TreesCmd::Stats { forests, format } => {
            let mut rows = Vec::new();
            for s in &forests {
                let f = parse_forest(s)?;
                let st = f.stats();
                rows.push(vec![
                    f.to_string(),
                    st.vertices.to_string(),
                    st.edges.to_string(),
                    st.factorial.to_string(),
                    st.sigma.to_string(),
                    fmt_opt(&st.cm),
                ]);
            }
            print_rows(&["forest", "vertices", "edges", "factorial", "sigma", "cm"], &rows, format.format);
            Ok(())
        }
    }
}

fn antipode_symbol(algebra: Algebra) -> &'static str {
    match algebra {
        Algebra::HSigma => "S_σ",
        Algebra::CK => "S_CK",
        _ => "S",
    }
}

fn hopf_cmd(c: HopfCmd) -> Outcome {
    match c {
        HopfCmd::Coproduct { variant, reduced, forest, format } => {
            let f = parse_forest(&forest)?;
            let algebra = Algebra::from(variant);
            let d = if reduced { hopf::reduced_coproduct(&f, algebra)? } else { hopf::coproduct(&f, algebra)? };
            match format.format {
                Format::Json => print_json(&json!({"forest": f.to_string(), "variant": algebra.to_string(), "coproduct": d.to_json()})),
                _ => println!("{d}"),
            }
            Ok(())
        }
        HopfCmd::Antipode { variant, method, max_degree, forest, format } => {
            let algebra = Algebra::from(variant);
            let inputs: Vec<Forest> = match forest {
                Some(s) => vec![parse_forest(&s)?],
                None => {
                    let n = capped(max_degree.unwrap_or(DEFAULT_DEGREE));
                    let lo = if algebra.grading() == Grading::Edge { 0 } else { 1 };
                    (lo..=n).flat_map(|d| algebra.trees_of_degree(d)).map(Forest::single).collect()
                }
            };
            let single = inputs.len() == 1;
            let mut out = Vec::new();
            for f in inputs {
                let s = hopf::antipode(&f, algebra, method.into())?;
                out.push((f, s));
            }
            match format.format {
                Format::Json => print_json(&Value::Array(
                    out.iter().map(|(f, s)| json!({"forest": f.to_string(), "antipode": s.to_json()})).collect(),
                )),
                Format::Csv => {
                    println!("forest,antipode");
                    for (f, s) in &out {
                        println!("{},{}", csv_field(&f.to_string()), csv_field(&s.to_string()));
                    }
                }
                Format::Text if single => println!("{}", out[0].1),
                Format::Text => {
                    for (f, s) in &out {
                        println!("{}({f}) = {s}", antipode_symbol(algebra));
                    }
                }
            }
            Ok(())
        }
        HopfCmd::VerifyCoassoc { variant, max_degree, format } => {
            let algebra = Algebra::from(variant);
            let n = capped(max_degree);
            let mut report = Report::new();
            let (k, f) = hopf::check_coassociativity(algebra, n)?;
            report.push_failures(format!("coassociativity ({algebra})"), k, f);
            let (k, f) = hopf::check_counit(algebra, n)?;
            report.push_failures(format!("counit ({algebra})"), k, f);
            report_outcome(&report, format.format)
        }
    }
}

fn parse_named(s: &str) -> Result<Named, Failure> {
    Ok(s.parse::<Named>()?)
}

/// Rows `tree, σ, value, value/σ` for every tree of degree ≤ `n`.
fn value_rows(f: &Functional, n: usize) -> Result<Vec<Vec<String>>, Failure> {
    let mut rows = Vec::new();
    for (t, v) in f.tree_table(n)? {
        let sigma = t.symmetry();
        let over = &v / rational::from_u128(sigma);
        rows.push(vec![t.to_string(), sigma.to_string(), rational::format(&v), rational::format(&over)]);
    }
    Ok(rows)
}

/// Text tables put trees in columns, one row per quantity.
fn print_value_table(name: &str, rows: &[Vec<String>], format: Format) {
    let header = ["tree", "sigma", "value", "value/sigma"];
    match format {
        Format::Text => {
            let labels = ["t".to_string(), "σ(t)".to_string(), format!("{name}(t)"), format!("{name}(t)/σ(t)")];
            let width: Vec<usize> =
                rows.iter().map(|r| r.iter().map(|c| c.chars().count()).max().unwrap_or(0)).collect();
            let label_width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
            for (i, label) in labels.iter().enumerate() {
                let mut line = format!("{label:<label_width$}");
                for (r, w) in rows.iter().zip(&width) {
                    let _ = write!(line, "  {:<w$}", r[i]);
                }
                println!("{}", line.trim_end());
            }
        }
        _ => print_rows(&header, rows, format),
    }
}

fn characters_cmd(c: CharactersCmd) -> Outcome {
    match c {
        CharactersCmd::Table { name, max_degree, format } => {
            let named = parse_named(&name)?;
            let n = capped(max_degree);
            let f = characters::named_character(named, n)?;
            print_value_table(&named.to_string(), &value_rows(&f, n)?, format.format);
            Ok(())
        }
        CharactersCmd::Convolve { left, right, max_degree, format } => {
            let (a, b) = (parse_named(&left)?, parse_named(&right)?);
            if a.algebra() != b.algebra() {
                return Err(Failure::Usage(format!("{a} lives on {}, {b} on {}", a.algebra(), b.algebra())));
            }
            let n = capped(max_degree);
            let ctx = ConvolutionContext::new(a.algebra(), n);
            let f = characters::convolve(&characters::named_character(a, n)?, &characters::named_character(b, n)?, ctx)?;
            print_value_table(&format!("{a}⋆{b}"), &value_rows(&f, n)?, format.format);
            Ok(())
        }
        CharactersCmd::Verify(CharVerifyCmd::Chv { max_degree, seed, format }) => {
            report_outcome(&characters::verify_chv(capped(max_degree), seed)?, format.format)
        }
        CharactersCmd::Omega { max_vertices, format } => {
            let n = capped(max_vertices);
            // `omega` cross-checks both computations and fails with a mismatch otherwise
            let w = characters::omega(n)?;
            print_value_table("ω", &value_rows(&w, n)?, format.format);
            Ok(())
        }
    }
}

fn prelie_cmd(c: PrelieCmd) -> Outcome {
    match c {
        PrelieCmd::Insert { t, u, normalized } => {
            let kind = if normalized { PreLie::InsertionSigma } else { PreLie::Insertion };
            println!("{}", kind.apply(&parse_tree(&t)?, &parse_tree(&u)?)?);
            Ok(())
        }
        PrelieCmd::Graft { t, u, normalized } => {
            let kind = if normalized { PreLie::GraftSigma } else { PreLie::Graft };
            println!("{}", kind.apply(&parse_tree(&t)?, &parse_tree(&u)?)?);
            Ok(())
        }
        PrelieCmd::Magnus { max_vertices } => {
            println!("{}", prelie::magnus_omega(capped(max_vertices))?);
            Ok(())
        }
    }
}

fn qshuffle_cmd(c: QshuffleCmd) -> Outcome {
    match c {
        QshuffleCmd::Lambda { forest, format } => {
            let p = qshuffle::lambda(&parse_forest(&forest)?);
            match format.format {
                Format::Json => print_json(&p.to_json()),
                _ => println!("{p}"),
            }
            Ok(())
        }
        QshuffleCmd::OmegaS { tree, format } => {
            let t = parse_tree(&tree)?;
            let ws = qshuffle::omega_s(&t);
            let omega = qshuffle::omega_via_lambda(&t);
            match format.format {
                Format::Json => print_json(&json!({
                    "tree": t.to_string(),
                    "omega_s": ws.iter().map(|(s, v)| (s.to_string(), json!(rational::format(v)))).collect::<serde_json::Map<_, _>>(),
                    "omega": rational::format(&omega),
                })),
                _ => {
                    let rows: Vec<Vec<String>> = ws.iter().map(|(s, v)| vec![s.to_string(), rational::format(v)]).collect();
                    print_rows(&["s", "omega_s"], &rows, format.format);
                    if matches!(format.format, Format::Text) {
                        println!("ω({t}) = {}", rational::format(&omega));
                    }
                }
            }
            Ok(())
        }
        QshuffleCmd::Qsh { exponents, r } => {
            match r {
                Some(r) => println!("{}", qshuffle::qsh_coefficient(&exponents, r)),
                None => {
                    let p = exponents
                        .iter()
                        .fold(WordPoly::one(), |acc, &k| acc.diamond(&WordPoly::monomial(k, Rational::from_integer(1.into()))));
                    println!("{p}");
                }
            }
            Ok(())
        }
    }
}

/// A JSON object mapping canonical tree strings to rationals (strings or integers).
fn load_character(path: &PathBuf, order: usize) -> Result<Functional, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let Value::Object(map) = value else {
        return Err(Failure::Usage(format!("{}: expected a JSON object of tree values", path.display())));
    };
    let mut tv = BTreeMap::new();
    for (k, v) in map {
        let r = match &v {
            Value::String(s) => rational::parse(s)?,
            Value::Number(n) if n.is_i64() => Rational::from_integer(n.as_i64().unwrap_or_default().into()),
            _ => return Err(Failure::Usage(format!("value for {k} must be an integer or a \"p/q\" string"))),
        };
        tv.insert(Tree::parse(&k)?, r);
    }
    Ok(Functional::character_unchecked(Grading::Vertex, order, tv))
}

fn bseries_inputs(args: &BseriesArgs) -> Result<(PolyVectorField, Functional, Functional), Failure> {
    let a = PolyVectorField::parse(&args.field, args.dim)?;
    let order = capped(args.order);
    let alpha = match &args.alpha {
        Some(p) => load_character(p, order)?,
        None => bseries::character(&[("[]", Rational::from_integer(1.into())), ("[[]]", rational::rat(1, 2))], order)?,
    };
    let beta = match &args.beta {
        Some(p) => load_character(p, order)?,
        None => bseries::exact_flow_character(order)?,
    };
    Ok((a, alpha, beta))
}

fn bseries_cmd(c: BseriesCmd) -> Outcome {
    match c {
        BseriesCmd::VerifySubstitution { args, general_bullet } => {
            let (a, alpha, beta) = bseries_inputs(&args)?;
            let report = bseries::verify_substitution(&a, &alpha, &beta, capped(args.order), general_bullet)?;
            report_outcome(&report, args.format.format)
        }
        BseriesCmd::VerifyComposition { args } => {
            let (a, alpha, beta) = bseries_inputs(&args)?;
            let report = bseries::verify_composition(&a, &alpha, &beta, capped(args.order))?;
            report_outcome(&report, args.format.format)
        }
    }
}

fn verify_cmd(c: VerifyCmd) -> Outcome {
    match c {
        VerifyCmd::All { max_degree, seed, format } => {
            report_outcome(&suite::verify_all(capped(max_degree), seed)?, format.format)
        }
        VerifyCmd::Chv { max_degree, seed, format } => {
            report_outcome(&characters::verify_chv(capped(max_degree), seed)?, format.format)
        }
    }
}
