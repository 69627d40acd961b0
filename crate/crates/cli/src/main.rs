use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use floercone::{
    box_complex, build_dual_cone, build_minus_en, c1_plus_one_surgery, c1_positive_integer_surgery,
    c1_surgery_cobordism, characterize_all_minus_two, check_complex, complex_from_json, complex_to_json,
    distinctness_pipeline, emn_pipeline, flip, g_map, mirror, negative_expansion, normal_form, parse_rational,
    positive_expansion, staircase, top_alexander, unknot, ConeRange, DgsKind, FilteredComplex, Flavor, FloerError,
    GradedRanks, JsonComplex, JsonFraction, LegendrianData, MappingCone, PipelineReport,
};

#[derive(Parser)]
#[command(name = "floer-cone", version, about = "Knot Floer mapping cones and contact surgery bookkeeping")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a model complex as JSON.
    Model {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Homology of the p/q surgery mapping cone, per Spin^c sector.
    Surgery {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, default_value_t = 1)]
        q: i64,
        #[arg(long, value_enum, default_value_t = FlavorArg::Hat)]
        flavor: FlavorArg,
        #[arg(long, value_enum, default_value_t = RangeArg::Full)]
        range: RangeArg,
        #[arg(long, allow_hyphen_values = true)]
        sector: Option<i64>,
        /// Report the vertices left after truncation.
        #[arg(long)]
        truncate: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dual knot complex from the n-framed cone.
    Dualknot {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, value_enum, default_value_t = CheckArg::Normalform)]
        check: CheckArg,
        /// Alexander grading for the G map (default: top grading).
        #[arg(long, allow_hyphen_values = true)]
        alexander: Option<i64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// DGS expansion of a contact surgery coefficient.
    Dgs {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// First Chern class evaluations.
    C1 {
        #[arg(long, value_enum)]
        formula: FormulaArg,
        #[arg(long, allow_hyphen_values = true)]
        tb: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        rot: i64,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<i64>,
        #[arg(long)]
        q: Option<i64>,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long, default_value_t = 1)]
        y: i64,
    },
    /// Distinctness argument for contact r-surgery on the twist knot E_n.
    Pipeline {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        /// Run on the generalized twist knot E(m, n) instead.
        #[arg(long)]
        m: Option<i64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Check a JSON complex or report file.
    Validate { path: Option<PathBuf> },
}

#[derive(Args)]
struct ModelArgs {
    /// Staircase plus (n-1)/2 boxes.
    #[arg(long, group = "source")]
    minus_en: Option<i64>,
    #[arg(long, group = "source")]
    staircase: bool,
    #[arg(long = "box", group = "source")]
    box_model: bool,
    #[arg(long, group = "source")]
    unknot: bool,
    /// JSON complex file, `-` for stdin.
    #[arg(long, group = "source")]
    input: Option<PathBuf>,
    #[arg(long)]
    mirror: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Hat,
    Infinity,
}

#[derive(Clone, Copy, ValueEnum)]
enum RangeArg {
    Paper,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Normalform,
    Gmap,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaArg {
    Cobordism,
    Posint,
    Plusone,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Debug)]
enum CliError {
    Domain(String),
    Input(String),
}

impl From<FloerError> for CliError {
    fn from(e: FloerError) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RankEntry {
    maslov: JsonFraction,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SectorReport {
    sector: i64,
    rank: usize,
    /// Keyed by Maslov grading; mod 2 for the infinity flavor.
    gradings: Vec<RankEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurgeryReport {
    kind: String,
    p: i64,
    q: i64,
    flavor: String,
    range: String,
    vertices: Vec<String>,
    truncated: Option<Vec<String>>,
    total_rank: usize,
    sectors: Vec<SectorReport>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Position {
    name: String,
    i: JsonFraction,
    j: JsonFraction,
    maslov: JsonFraction,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NormalFormReport {
    kind: String,
    framing: i64,
    o: usize,
    h: usize,
    v: usize,
    positions: Vec<Position>,
    /// Present when every level is integral.
    complex: Option<JsonComplex>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GMapJson {
    kind: String,
    framing: i64,
    alexander: i64,
    domain_dim: usize,
    codomain_dim: usize,
    rank: usize,
    injective: bool,
    /// Rows are codomain classes, columns domain classes.
    matrix: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DgsReport {
    kind: String,
    r: JsonFraction,
    expansion: String,
    a: Vec<i64>,
    e: u64,
    stabilizations: Vec<u64>,
    surgery_signs: Vec<i8>,
    all_minus_two: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct C1Report {
    kind: String,
    formula: String,
    value: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepJson {
    case: String,
    computed: bool,
    holds: bool,
    summary: String,
    values: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PipelineJson {
    kind: String,
    n: i64,
    r: JsonFraction,
    steps: Vec<StepJson>,
    distinct: bool,
    route: String,
    verdict: String,
}

fn read_input(path: &PathBuf) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

fn load_model(args: &ModelArgs) -> CliResult<FilteredComplex> {
    let c = if let Some(n) = args.minus_en {
        build_minus_en(n)?
    } else if args.staircase {
        staircase()
    } else if args.box_model {
        box_complex("")
    } else if args.unknot {
        unknot()
    } else if let Some(path) = &args.input {
        let c = complex_from_json(&read_input(path)?)?;
        let report = check_complex(&c);
        if !report.is_valid() {
            return Err(CliError::Domain(format!("input is not a valid complex: {}", report.violations[0])));
        }
        c
    } else {
        return Err(CliError::Input("choose a model: --minus-en, --staircase, --box, --unknot or --input".into()));
    };
    Ok(if args.mirror { mirror(&c) } else { c })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serialization");
    text.push('\n');
    text
}

fn emit(text: &str, output: &Option<PathBuf>) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn sector_report(sector: i64, ranks: &GradedRanks) -> SectorReport {
    let gradings = ranks.ranks.iter().map(|(key, &rank)| RankEntry { maslov: key[0].into(), rank }).collect();
    SectorReport { sector, rank: ranks.total(), gradings }
}

fn parse_r(text: &str) -> CliResult<BigRational> {
    parse_rational(text).map_err(|e| CliError::Input(e.to_string()))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Model { model, output } => {
            let c = load_model(&model)?;
            emit(&complex_to_json(&c)?, &output)
        }
        Command::Surgery { model, p, q, flavor, range, sector, truncate, output } => {
            let c = load_model(&model)?;
            let f = flip(&c)?;
            let range_core = match range {
                RangeArg::Paper => ConeRange::Paper,
                RangeArg::Full => ConeRange::Full,
            };
            let flavor_core = match flavor {
                FlavorArg::Hat => Flavor::Hat,
                FlavorArg::Infinity => Flavor::Infinity,
            };
            let cone = MappingCone::build(&c, &f, p, q, range_core)?;
            let sectors = match sector {
                Some(s) if s < 0 || s >= p.abs() => {
                    return Err(CliError::Domain(format!("sector {s} is outside 0..{}", p.abs())))
                }
                Some(s) => vec![s],
                None => cone.sectors(),
            };
            let sectors: Vec<SectorReport> =
                sectors.into_iter().map(|s| sector_report(s, &cone.sector_homology(s, flavor_core))).collect();
            let truncated = if truncate {
                Some(cone.truncate(flavor_core)?.vertices.iter().map(|v| v.label()).collect())
            } else {
                None
            };
            let report = SurgeryReport {
                kind: "surgery".into(),
                p,
                q,
                flavor: match flavor {
                    FlavorArg::Hat => "hat",
                    FlavorArg::Infinity => "infinity",
                }
                .into(),
                range: match range {
                    RangeArg::Paper => "paper",
                    RangeArg::Full => "full",
                }
                .into(),
                vertices: cone.vertices.iter().map(|v| v.label()).collect(),
                truncated,
                total_rank: sectors.iter().map(|s| s.rank).sum(),
                sectors,
            };
            emit(&to_json(&report), &output)
        }
        Command::Dualknot { model, n, check, alexander, output } => {
            let c = load_model(&model)?;
            let dc = build_dual_cone(&c, &flip(&c)?, n)?;
            let nf = normal_form(&dc, None)?;
            let text = match check {
                CheckArg::Normalform => {
                    let (o, h, v) = nf.summand_counts();
                    let positions = nf
                        .complex
                        .generators()
                        .iter()
                        .map(|g| Position {
                            name: g.name.clone(),
                            i: g.i.into(),
                            j: g.j.into(),
                            maslov: g.maslov.into(),
                        })
                        .collect();
                    let complex = JsonComplex::from_complex(&nf.complex).ok();
                    to_json(&NormalFormReport { kind: "normalform".into(), framing: n, o, h, v, positions, complex })
                }
                CheckArg::Gmap => {
                    let a = match alexander.or_else(|| top_alexander(&nf.complex)) {
                        Some(a) => a,
                        None => return Err(CliError::Domain("normal form has no generators".into())),
                    };
                    let report = g_map(&nf.complex, a);
                    let m = &report.map.matrix;
                    let matrix = (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c) as u8).collect()).collect();
                    to_json(&GMapJson {
                        kind: "gmap".into(),
                        framing: n,
                        alexander: a,
                        domain_dim: report.map.domain_dim(),
                        codomain_dim: report.map.codomain_dim(),
                        rank: report.map.rank,
                        injective: report.is_injective(),
                        matrix,
                    })
                }
            };
            emit(&text, &output)
        }
        Command::Dgs { r } => {
            let r = parse_r(&r)?;
            if r.is_zero() {
                return Err(CliError::Domain("contact 0-surgery is not defined".into()));
            }
            let expansion = if r.is_negative() { negative_expansion(&r)? } else { positive_expansion(&r)? };
            let report = DgsReport {
                kind: "dgs".into(),
                r: (&r).into(),
                expansion: match expansion.kind {
                    DgsKind::Negative => "negative",
                    DgsKind::Positive => "positive",
                }
                .into(),
                a: expansion.a.clone(),
                e: expansion.e,
                stabilizations: expansion.stabilizations.clone(),
                surgery_signs: expansion.surgery_signs.clone(),
                all_minus_two: r.is_negative() && characterize_all_minus_two(&r)?,
            };
            emit(&to_json(&report), &None)
        }
        Command::C1 { formula, tb, rot, p, q, n, y } => {
            let missing = |flag: &str| CliError::Input(format!("--{flag} is required for this formula"));
            let mut l = LegendrianData::new("L", tb.unwrap_or(0), rot);
            l.y = y;
            let (name, value) = match formula {
                FormulaArg::Cobordism => {
                    tb.ok_or_else(|| missing("tb"))?;
                    let p = p.ok_or_else(|| missing("p"))?;
                    let q = q.ok_or_else(|| missing("q"))?;
                    ("cobordism", c1_surgery_cobordism(&l, p, q))
                }
                FormulaArg::Posint => {
                    let n = n.ok_or_else(|| missing("n"))?;
                    if n <= 0 {
                        return Err(CliError::Domain(format!("n must be positive, got {n}")));
                    }
                    ("posint", c1_positive_integer_surgery(&l, n))
                }
                FormulaArg::Plusone => ("plusone", c1_plus_one_surgery(&l)),
            };
            emit(&to_json(&C1Report { kind: "c1".into(), formula: name.into(), value }), &None)
        }
        Command::Pipeline { n, r, m, format } => {
            let r = parse_r(&r)?;
            let report = match m {
                Some(m) => emn_pipeline(m, n, &r)?,
                None => distinctness_pipeline(n, &r)?,
            };
            let text = match format {
                FormatArg::Text => report.to_text() + "\n",
                FormatArg::Json => to_json(&pipeline_json(&report)),
            };
            emit(&text, &None)?;
            if report.distinct {
                Ok(())
            } else {
                Err(CliError::Domain("a computed step failed".into()))
            }
        }
        Command::Validate { path } => {
            let text = read_input(&path.unwrap_or_else(|| PathBuf::from("-")))?;
            let summary = validate(&text)?;
            emit(&(summary + "\n"), &None)
        }
    }
}

fn pipeline_json(report: &PipelineReport) -> PipelineJson {
    let text = report.to_text();
    PipelineJson {
        kind: "pipeline".into(),
        n: report.n,
        r: (&report.r).into(),
        steps: report
            .steps
            .iter()
            .map(|s| StepJson {
                case: s.case.label().into(),
                computed: s.computed,
                holds: s.holds,
                summary: s.summary.clone(),
                values: s.values.clone(),
            })
            .collect(),
        distinct: report.distinct,
        route: report.route.clone(),
        verdict: text.lines().last().unwrap_or_default().into(),
    }
}

fn check_report<'a, T: Deserialize<'a>>(text: &'a str, kind: &str) -> CliResult<String> {
    serde_json::from_str::<T>(text).map_err(|e| CliError::Input(format!("malformed {kind} report: {e}")))?;
    Ok(format!("valid {kind} report"))
}

fn validate(text: &str) -> CliResult<String> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    match value.get("kind").and_then(|k| k.as_str()) {
        None => {
            let c = complex_from_json(text)?;
            let report = check_complex(&c);
            if !report.is_valid() {
                let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
                return Err(CliError::Domain(format!("invalid complex:\n{}", lines.join("\n"))));
            }
            Ok(format!("valid complex: {} generators, {} differential entries", c.len(), c.entry_count()))
        }
        Some("surgery") => check_report::<SurgeryReport>(text, "surgery"),
        Some("normalform") => {
            let report: NormalFormReport =
                serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed normalform report: {e}")))?;
            if let Some(c) = &report.complex {
                let c = c.to_complex()?;
                if !check_complex(&c).is_valid() {
                    return Err(CliError::Domain("embedded complex is invalid".into()));
                }
            }
            Ok("valid normalform report".into())
        }
        Some("gmap") => check_report::<GMapJson>(text, "gmap"),
        Some("dgs") => check_report::<DgsReport>(text, "dgs"),
        Some("c1") => check_report::<C1Report>(text, "c1"),
        Some("pipeline") => check_report::<PipelineJson>(text, "pipeline"),
        Some(other) => Err(CliError::Input(format!("unknown report kind {other}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
