use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use toric_ko::ext_charts::{ext_m, ext_s0, BigradedChart};
use toric_ko::face_ring::poincare_pairing;
use toric_ko::library::{self, BUNDLED};
use toric_ko::problem::{parse_spec, render_spec, Mode, ProblemSpec, SpecError};
use toric_ko::render::{render_ascii, render_svg};
use toric_ko::report::{compute, group_table, report_json, report_text, PipelineError, Report};

const EXIT_IO: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_NO_COLLAPSE: u8 = 4;

#[derive(Parser)]
#[command(name = "toric-ko", version, about = "Mod-2 cohomology, Sq², A(1) splitting and KO-theory of quasitoric manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Manifold,
    Singular,
}

#[derive(Args)]
struct Common {
    /// Input file, `-` for stdin, or `@name` for a bundled example.
    input: String,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Require dim H^{2k} = h_k.
    #[arg(long)]
    trust_sphere: bool,
    /// Largest degree in the group tables.
    #[arg(long, value_name = "D")]
    max_degree: Option<i64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the complex and characteristic matrix.
    Validate(Common),
    /// Cohomology ring: basis, relations and Poincaré pairing.
    Cohomology(Common),
    /// Sq², spin test and A(1)-module splitting.
    Decompose(Common),
    /// Adams E2 chart of an input, or of S0 / M.
    Chart(ChartArgs),
    /// ko, KO and KO-cohomology tables.
    Ko(Common),
    /// Everything.
    Report(Common),
    /// Bundled examples and generators.
    #[command(subcommand)]
    Examples(ExamplesCommand),
}

#[derive(Args)]
struct ChartArgs {
    /// Input file, `-` or `@name`; omit with --s0 or --m.
    input: Option<String>,
    /// Chart of Ext(S0).
    #[arg(long, conflicts_with_all = ["input", "m"])]
    s0: bool,
    /// Chart of Ext(M).
    #[arg(long, conflicts_with = "input")]
    m: bool,
    #[arg(long)]
    max_stem: Option<i64>,
    #[arg(long)]
    max_filt: Option<i64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    trust_sphere: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ExamplesCommand {
    /// List bundled examples.
    List,
    /// Print a bundled example.
    Show { name: String },
    /// Write all bundled examples into a directory.
    Write { dir: PathBuf },
    /// Random m-gon with a valid matrix.
    Polygon {
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        mod2: bool,
    },
    /// Boundary of the n-simplex, giving CP^n.
    Simplex { n: usize },
    /// Product of two inputs (files or `@name`).
    Product { left: String, right: String },
}

enum Failure {
    Io(String),
    Parse(String),
    Validation(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => EXIT_IO,
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Validation(_) => EXIT_VALIDATION,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Parse(m) | Failure::Validation(m) => m,
        }
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Syntax { .. } => Failure::Parse(format!("parse error: {e}")),
            SpecError::Validation(_) => Failure::Validation(format!("invalid input: {e}")),
        }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Spec(s) => s.into(),
            other => Failure::Validation(format!("invalid input: {other}")),
        }
    }
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

fn read_input(input: &str) -> Result<String, Failure> {
    if let Some(name) = input.strip_prefix('@') {
        return library::bundled(name)
            .map(|b| b.text.to_string())
            .ok_or_else(|| Failure::Io(format!("no bundled example `{name}` (see `examples list`)")));
    }
    if input == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(input).map_err(|e| Failure::Io(format!("{input}: {e}")))
}

fn load(input: &str, mode: Option<ModeArg>, trust_sphere: bool, max_degree: Option<i64>) -> Result<ProblemSpec, Failure> {
    let mut spec = parse_spec(&read_input(input)?)?;
    if let Some(m) = mode {
        spec.mode = match m {
            ModeArg::Manifold => Mode::Manifold,
            ModeArg::Singular => Mode::Singular,
        };
    }
    spec.trust_sphere |= trust_sphere;
    if max_degree.is_some() {
        spec.max_degree = max_degree;
    }
    Ok(spec)
}

fn load_common(c: &Common) -> Result<ProblemSpec, Failure> {
    load(&c.input, c.mode, c.trust_sphere, c.max_degree)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn collapse_code(report: &Report) -> u8 {
    if report.results.collapse.established {
        0
    } else {
        EXIT_NO_COLLAPSE
    }
}

fn validate(c: &Common) -> Result<Output, Failure> {
    let spec = load_common(c)?;
    let comp = compute(&spec)?;
    let r = &comp.report.results;
    let text = match c.format {
        Format::Json => json(&serde_json::json!({
            "valid": true,
            "name": spec.name,
            "n": spec.n,
            "m": spec.m,
            "f_vector": r.f_vector,
            "h_vector": r.h_vector,
        })),
        _ => format!(
            "valid: {} (n = {}, m = {}, f = {:?}, h = {:?})\n",
            spec.name, spec.n, spec.m, r.f_vector, r.h_vector
        ),
    };
    Ok(Output::ok(text))
}

fn cohomology(c: &Common) -> Result<Output, Failure> {
    let spec = load_common(c)?;
    let comp = compute(&spec)?;
    let r = &comp.report.results;
    let a = &comp.algebra;
    let pairings: Vec<_> = (0..=a.top_degree())
        .step_by(2)
        .filter_map(|d| poincare_pairing(a, d).ok())
        .collect();
    let text = match c.format {
        Format::Json => json(&serde_json::json!({
            "name": spec.name,
            "dims": a.dims(),
            "cohomology": r.cohomology,
            "relations": r.relations,
            "poincare_pairing": pairings,
        })),
        _ => {
            let mut out = format!("cohomology of {}\n", spec.name);
            for row in &r.cohomology {
                out.push_str(&format!(
                    "  H^{:<2} = {:<6} mod-2 basis: {}\n",
                    row.degree,
                    row.integral,
                    row.basis.join(", ")
                ));
            }
            out.push_str(&format!("  monomial relations: {}\n", r.relations.monomial.join(", ")));
            out.push_str(&format!("  linear relations:   {}\n", r.relations.linear.join(", ")));
            for d in &r.relations.rewrites {
                let rules: Vec<String> = d.rules.iter().map(|w| format!("{} = {}", w.lhs, w.rhs)).collect();
                out.push_str(&format!("  degree {}: {}\n", d.degree, rules.join(", ")));
            }
            for p in &pairings {
                out.push_str(&format!(
                    "  pairing H^{} x H^{}: [{}]{}\n",
                    p.degree,
                    a.top_degree() - p.degree,
                    p.matrix.to_row_strings().join(" "),
                    if p.nondegenerate { "" } else { "  (degenerate)" }
                ));
            }
            out
        }
    };
    Ok(Output::ok(text))
}

fn decompose(c: &Common) -> Result<Output, Failure> {
    let spec = load_common(c)?;
    let report = compute(&spec)?.report;
    let r = &report.results;
    let text = match c.format {
        Format::Json => json(&serde_json::json!({
            "name": spec.name,
            "sq2": r.sq2,
            "spin": r.spin,
            "decomposition": r.decomposition,
        })),
        _ => {
            let mut out = format!("Sq² and A(1) structure of {}\n", spec.name);
            for m in &r.sq2.matrices {
                out.push_str(&format!("  Sq²: H^{} -> H^{}  rank {}  [{}]\n", m.from, m.to, m.rank, m.rows.join(" ")));
            }
            out.push_str(&format!("  Sq²-homology dims: {:?}\n", r.sq2.homology));
            match r.spin.spin {
                Some(s) => out.push_str(&format!(
                    "  spin: {} (Wu class {})\n",
                    if s { "yes" } else { "no" },
                    r.spin.wu_class.as_deref().unwrap_or("?")
                )),
                None => out.push_str(&format!("  spin: {}\n", r.spin.note.as_deref().unwrap_or("not computed"))),
            }
            out.push_str(&format!("  decomposition: {}\n", r.decomposition.formula));
            for line in &r.decomposition.summands {
                out.push_str(&format!("    {line}\n"));
            }
            for w in &r.decomposition.witnesses {
                out.push_str(&format!(
                    "  degree {}: C = [{}]  D = [{}]  B = [{}]\n",
                    w.degree,
                    w.c.join(", "),
                    w.d.join(", "),
                    w.b.join(", ")
                ));
            }
            out
        }
    };
    Ok(Output::ok(text))
}

fn draw(chart: &BigradedChart, format: Format) -> String {
    match format {
        Format::Text => render_ascii(chart),
        Format::Svg => render_svg(chart),
        Format::Json => json(chart),
    }
}

fn chart(a: &ChartArgs) -> Result<Output, Failure> {
    if a.s0 || a.m {
        let stems = a.max_stem.unwrap_or(16);
        let filt = a.max_filt.unwrap_or(8);
        let chart = if a.s0 { ext_s0(stems, filt) } else { ext_m(stems, filt) };
        return Ok(Output::ok(draw(&chart, a.format)));
    }
    let Some(input) = &a.input else {
        return Err(Failure::Io("chart needs an input, --s0 or --m".to_string()));
    };
    let spec = load(input, a.mode, a.trust_sphere, None)?;
    let comp = compute(&spec)?;
    let code = collapse_code(&comp.report);
    let mut chart = comp.report.results.chart;
    if a.max_stem.is_some() || a.max_filt.is_some() {
        chart = toric_ko::ext_charts::assemble_e2(
            &comp.decomposition,
            a.max_stem.unwrap_or(chart.max_stem),
            a.max_filt.unwrap_or(chart.max_filt),
            chart.status,
        );
    }
    Ok(Output {
        text: draw(&chart, a.format),
        code,
    })
}

fn ko(c: &Common) -> Result<Output, Failure> {
    let spec = load_common(c)?;
    let report = compute(&spec)?.report;
    let r = &report.results;
    let text = match c.format {
        Format::Json => json(&serde_json::json!({
            "name": spec.name,
            "collapse": r.collapse,
            "ko": r.ko,
            "ko_reduced": r.ko_reduced,
            "KO_homology": r.ko_periodic,
            "KO_cohomology": r.ko_cohomology,
            "e2_bound": r.e2_bound,
            "footnotes": r.footnotes,
        })),
        _ => {
            let mut out = format!("{}\n{}\n", spec.name, r.collapse.note);
            for (title, g) in [
                ("ko_* (connective)", &r.ko),
                ("reduced ko_*", &r.ko_reduced),
                ("KO_* (periodic homology)", &r.ko_periodic),
                ("KO^* (periodic cohomology)", &r.ko_cohomology),
                ("E2 bound on ko_* (differentials unresolved)", &r.e2_bound),
            ] {
                if let Some(g) = g {
                    group_table(&mut out, title, g);
                }
            }
            for (k, f) in r.footnotes.iter().enumerate() {
                out.push_str(&format!("[{}] {f}\n", k + 1));
            }
            out
        }
    };
    Ok(Output {
        text,
        code: collapse_code(&report),
    })
}

fn report(c: &Common) -> Result<Output, Failure> {
    let spec = load_common(c)?;
    let report = compute(&spec)?.report;
    let text = match c.format {
        Format::Json => report_json(&report),
        Format::Text => report_text(&report),
        Format::Svg => render_svg(&report.results.chart),
    };
    Ok(Output {
        text,
        code: collapse_code(&report),
    })
}

fn examples(cmd: &ExamplesCommand) -> Result<Output, Failure> {
    match cmd {
        ExamplesCommand::List => {
            let mut out = String::new();
            for b in BUNDLED {
                out.push_str(&format!("@{:<16} {}\n", b.name, b.description));
            }
            Ok(Output::ok(out))
        }
        ExamplesCommand::Show { name } => read_input(&format!("@{}", name.trim_start_matches('@'))).map(Output::ok),
        ExamplesCommand::Write { dir } => {
            fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
            let mut out = String::new();
            for b in BUNDLED {
                let path = dir.join(format!("{}.toric", b.name));
                fs::write(&path, b.text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                out.push_str(&format!("wrote {}\n", path.display()));
            }
            Ok(Output::ok(out))
        }
        ExamplesCommand::Polygon { m, seed, mod2 } => {
            if *m < 3 {
                return Err(Failure::Validation("invalid input: a polygon needs m >= 3".to_string()));
            }
            Ok(Output::ok(render_spec(&library::seeded_polygon(*m, *seed, *mod2))))
        }
        ExamplesCommand::Simplex { n } => {
            if *n == 0 {
                return Err(Failure::Validation("invalid input: n must be positive".to_string()));
            }
            Ok(Output::ok(render_spec(&library::simplex(*n))))
        }
        ExamplesCommand::Product { left, right } => {
            let a = parse_spec(&read_input(left)?)?;
            let b = parse_spec(&read_input(right)?)?;
            Ok(Output::ok(render_spec(&library::product(&a, &b))))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out_path) = match &cli.command {
        Command::Validate(c) => (validate(c), c.out.clone()),
        Command::Cohomology(c) => (cohomology(c), c.out.clone()),
        Command::Decompose(c) => (decompose(c), c.out.clone()),
        Command::Chart(a) => (chart(a), a.out.clone()),
        Command::Ko(c) => (ko(c), c.out.clone()),
        Command::Report(c) => (report(c), c.out.clone()),
        Command::Examples(e) => (examples(e), None),
    };
    match result {
        Ok(output) => {
            match out_path {
                Some(path) => {
                    if let Err(e) = fs::write(&path, &output.text) {
                        eprintln!("{}: {e}", path.display());
                        return ExitCode::from(EXIT_IO);
                    }
                }
                None => print!("{}", output.text),
            }
            if output.code == EXIT_NO_COLLAPSE {
                eprintln!("warning: collapse not established; output is the E2 page only");
            }
            ExitCode::from(output.code)
        }
        Err(f) => {
            eprintln!("{}", f.message());
            ExitCode::from(f.code())
        }
    }
}
