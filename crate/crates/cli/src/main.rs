//! `orjsj` — analyze one-relator presentations ⟨a, b | R⟩ from the command
//! line.
//!
//! Exit codes: 0 success, 2 malformed input, 3 input outside the supported
//! cases (not one-ended, or no hypothesis asserted), 1 internal failure.
//! In batch mode the worst code wins: 2 over 1 over 3 over 0.

use clap::{Parser, Subcommand, ValueEnum};
use orjsj_core::engine::{self, Applicability, Assumptions, Verdict};
use orjsj_core::oracle;
use orjsj_core::parse::{parse_word, ParseError};
use orjsj_core::polytope::PolytopeError;
use orjsj_core::whitehead::{self, DEFAULT_ORBIT_CAP};
use orjsj_core::word::{CyclicWord, Word};
use orjsj_core::{render_svg, EngineError};
use serde::Serialize;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "orjsj",
    version,
    about = "Splitting analysis for one-relator groups on two generators",
    after_help = "Relators use the letters a, b with uppercase for inverses, \
optional ^ powers and parentheses, e.g. \"(AABaab)^2\"; full presentations \
\"<a,b | W>\" are accepted too. Input comes from the argument, --batch FILE, \
or stdin (one relator per line)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Assert that the group is hyperbolic.
    #[arg(long, global = true)]
    assume_hyperbolic: bool,
    /// Assert that the group is residually good (RG).
    #[arg(long, global = true)]
    assume_rg: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Read relators from a file, one per line.
    #[arg(long, global = true, value_name = "FILE")]
    batch: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the group splits non-trivially (prints yes/no).
    Detect { relator: Option<String> },
    /// Compute the splitting: trivial, or an HNN extension over <a, y>.
    Jsj { relator: Option<String> },
    /// Classify the outer automorphism group.
    Out { relator: Option<String> },
    /// Compute the relator's lattice polytope (text, json, or svg).
    Polytope { relator: Option<String> },
    /// Minimize a cyclic word over the Whitehead generating set.
    Minimize { relator: Option<String> },
    /// List the shortest conjugacy classes in the relator's orbit.
    Orbit { relator: Option<String> },
    /// Full report: triage, polytope, detection, decomposition, Out class.
    Analyze { relator: Option<String> },
    /// Cross-check greedy minimization against the exhaustive oracle.
    #[command(hide = true)]
    Oracle {
        /// Check every cyclic word up to this length.
        #[arg(long, default_value_t = 6)]
        max_length: usize,
    },
}

impl Command {
    fn relator_arg(&self) -> Option<&String> {
        match self {
            Command::Detect { relator }
            | Command::Jsj { relator }
            | Command::Out { relator }
            | Command::Polytope { relator }
            | Command::Minimize { relator }
            | Command::Orbit { relator }
            | Command::Analyze { relator } => relator.as_ref(),
            Command::Oracle { .. } => None,
        }
    }
}

/// One failed input, ranked for exit-code aggregation.
enum Failure {
    Parse(String),
    Inapplicable(String),
    Internal(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Internal(_) => 1,
            Failure::Inapplicable(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Inapplicable(m) | Failure::Internal(m) => m,
        }
    }

    /// Severity order for batch aggregation: parse > internal > inapplicable.
    fn rank(&self) -> u8 {
        match self {
            Failure::Parse(_) => 3,
            Failure::Internal(_) => 2,
            Failure::Inapplicable(_) => 1,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        Failure::Parse(e.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Failure {
        match e {
            EngineError::JsjUndefined(_) | EngineError::OutUndefined(_) => {
                Failure::Inapplicable(e.to_string())
            }
            EngineError::Word(_) => Failure::Parse(e.to_string()),
            EngineError::Whitehead(_) => Failure::Internal(e.to_string()),
        }
    }
}

impl From<PolytopeError> for Failure {
    fn from(e: PolytopeError) -> Failure {
        match e {
            PolytopeError::NotInDerivedSubgroup => Failure::Inapplicable(e.to_string()),
            PolytopeError::Word(_) => Failure::Parse(e.to_string()),
            PolytopeError::EmptyInput | PolytopeError::NotASummand => {
                Failure::Internal(e.to_string())
            }
        }
    }
}

/// Output for one input line plus an optional failure; `analyze` can emit
/// a full report and still flag the input as unsupported.
struct LineResult {
    output: String,
    failure: Option<Failure>,
}

impl LineResult {
    fn ok(output: String) -> LineResult {
        LineResult {
            output,
            failure: None,
        }
    }

    fn fail(failure: Failure) -> LineResult {
        LineResult {
            output: String::new(),
            failure: Some(failure),
        }
    }
}

/// Strip an optional presentation wrapper "<a,b | W>" / "⟨a,b | W⟩" down
/// to the relator W.
fn strip_presentation(text: &str) -> Result<&str, ParseError> {
    let trimmed = text.trim();
    let inner = if let Some(rest) = trimmed.strip_prefix('<') {
        rest.strip_suffix('>')
    } else if let Some(rest) = trimmed.strip_prefix('⟨') {
        rest.strip_suffix('⟩')
    } else {
        return Ok(trimmed);
    };
    let inner = inner.ok_or_else(|| ParseError {
        position: trimmed.len(),
        message: "unclosed presentation bracket".to_string(),
    })?;
    let (generators, relator) = inner.split_once('|').ok_or_else(|| ParseError {
        position: 0,
        message: "presentation is missing the | separator".to_string(),
    })?;
    let normalized: String = generators.chars().filter(|c| !c.is_whitespace()).collect();
    if normalized != "a,b" {
        return Err(ParseError {
            position: 0,
            message: format!(
                "unsupported generator list '{}', expected a,b",
                generators.trim()
            ),
        });
    }
    Ok(relator.trim())
}

fn parse_relator(text: &str) -> Result<Word, Failure> {
    let relator_text = strip_presentation(text)?;
    let word = parse_word(relator_text)?;
    if word.is_empty() {
        return Err(Failure::Parse(format!(
            "empty relator in input '{}'",
            text.trim()
        )));
    }
    Ok(word)
}

#[derive(Serialize)]
struct MinimizeJson {
    input: String,
    minimal: String,
    length: usize,
    witness: Vec<String>,
}

#[derive(Serialize)]
struct OrbitJson {
    input: String,
    min_length: usize,
    members: Vec<String>,
}

#[derive(Serialize)]
struct OracleDisagreement {
    word: String,
    greedy: usize,
    exhaustive: usize,
}

#[derive(Serialize)]
struct OracleJson {
    max_length: usize,
    classes_checked: usize,
    disagreements: Vec<OracleDisagreement>,
}

struct Runner {
    assumptions: Assumptions,
    orbit_cap: usize,
    format: Format,
    pretty: bool,
}

impl Runner {
    fn to_json<T: Serialize>(&self, value: &T) -> String {
        let mut s = if self.pretty {
            serde_json::to_string_pretty(value).expect("serializable")
        } else {
            serde_json::to_string(value).expect("serializable")
        };
        s.push('\n');
        s
    }

    fn report(&self, input: &str, word: &Word) -> Result<engine::JsjReport, Failure> {
        let mut report = engine::analyze(word, self.assumptions, self.orbit_cap)?;
        report.input = input.trim().to_string();
        Ok(report)
    }

    fn run_one(&self, command: &Command, input: &str) -> LineResult {
        match self.try_run(command, input) {
            Ok(result) => result,
            Err(failure) => LineResult::fail(failure),
        }
    }

    fn try_run(&self, command: &Command, input: &str) -> Result<LineResult, Failure> {
        let word = parse_relator(input)?;
        match command {
            Command::Detect { .. } => {
                let (verdict, warnings) = engine::detect(&word, self.assumptions, self.orbit_cap)?;
                if self.format == Format::Json {
                    return Ok(LineResult::ok(self.to_json(&self.report(input, &word)?)));
                }
                match verdict {
                    Verdict::NonTrivial => Ok(LineResult::ok("yes\n".to_string())),
                    Verdict::Trivial => Ok(LineResult::ok("no\n".to_string())),
                    Verdict::Unknown => {
                        let reason = warnings
                            .first()
                            .cloned()
                            .unwrap_or_else(|| "undetermined".to_string());
                        Err(Failure::Inapplicable(format!("unknown: {reason}")))
                    }
                }
            }
            Command::Jsj { .. } => {
                let decomposition = engine::compute(&word, self.assumptions, self.orbit_cap)?;
                if self.format == Format::Json {
                    return Ok(LineResult::ok(self.to_json(&self.report(input, &word)?)));
                }
                match decomposition {
                    engine::JsjDecomposition::Trivial => Ok(LineResult::ok(format!(
                        "trivial: {}\n",
                        engine::JsjDecomposition::TRIVIAL_DESCRIPTION
                    ))),
                    engine::JsjDecomposition::Hnn {
                        base_relator_xy,
                        exponent,
                        representative,
                    } => Ok(LineResult::ok(format!(
                        "HNN: base <a, y | ({base_relator_xy})^{exponent}>, stable letter {}, attaching {}, representative {representative}\n",
                        engine::JsjDecomposition::STABLE_LETTER,
                        engine::JsjDecomposition::ATTACHING,
                    ))),
                }
            }
            Command::Out { .. } => {
                let class = engine::out_class(&word, self.assumptions, self.orbit_cap)?;
                if self.format == Format::Json {
                    return Ok(LineResult::ok(self.to_json(&self.report(input, &word)?)));
                }
                let text = match class {
                    engine::OutClass::Finite => "finite",
                    engine::OutClass::VirtuallyZ => "virtually-Z",
                    engine::OutClass::GL2Z => "GL2(Z)",
                };
                Ok(LineResult::ok(format!("{text}\n")))
            }
            Command::Polytope { .. } => match self.format {
                Format::Svg => Ok(LineResult::ok(render_svg(&word)?)),
                Format::Json => {
                    let polytope = orjsj_core::ft_polytope(&word)?;
                    Ok(LineResult::ok(
                        self.to_json(&engine::PolytopeJson::from_polytope(&polytope)),
                    ))
                }
                Format::Text => {
                    let polytope = orjsj_core::ft_polytope(&word)?;
                    let vertices: Vec<String> = polytope
                        .vertices()
                        .iter()
                        .map(|v| format!("({},{})", v.x, v.y))
                        .collect();
                    Ok(LineResult::ok(format!(
                        "class: {}\nvertices: {}\n",
                        polytope.classify().tag(),
                        vertices.join(" ")
                    )))
                }
            },
            Command::Minimize { .. } => {
                let (minimal, witness) = whitehead::minimize(&CyclicWord::from_word(&word));
                if self.format == Format::Json {
                    Ok(LineResult::ok(self.to_json(&MinimizeJson {
                        input: input.trim().to_string(),
                        minimal: minimal.to_string(),
                        length: minimal.len(),
                        witness: witness.iter().map(|a| a.to_string()).collect(),
                    })))
                } else {
                    Ok(LineResult::ok(format!("{minimal}\n")))
                }
            }
            Command::Orbit { .. } => {
                let core = CyclicWord::from_word(&word);
                let orbit = whitehead::shortest_orbit_set_capped(&core, self.orbit_cap)
                    .map_err(|e| Failure::Internal(e.to_string()))?;
                if self.format == Format::Json {
                    Ok(LineResult::ok(self.to_json(&OrbitJson {
                        input: input.trim().to_string(),
                        min_length: orbit.min_length(),
                        members: orbit.to_strings(),
                    })))
                } else {
                    let mut text = format!("min length: {}\n", orbit.min_length());
                    for member in orbit.to_strings() {
                        text.push_str(&member);
                        text.push('\n');
                    }
                    Ok(LineResult::ok(text))
                }
            }
            Command::Analyze { .. } => {
                let report = self.report(input, &word)?;
                let rendered = if self.format == Format::Json {
                    self.to_json(&report)
                } else {
                    render_report_text(&report)
                };
                let failure = if matches!(
                    report.applicability,
                    Applicability::NotOneEnded | Applicability::Unsupported
                ) {
                    let reason = report
                        .warnings
                        .first()
                        .cloned()
                        .unwrap_or_else(|| report.applicability.to_string());
                    Some(Failure::Inapplicable(reason))
                } else {
                    None
                };
                Ok(LineResult {
                    output: rendered,
                    failure,
                })
            }
            Command::Oracle { .. } => unreachable!("oracle takes no relator"),
        }
    }
}

fn render_report_text(report: &engine::JsjReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("input:         {}\n", report.input));
    out.push_str(&format!("relator:       {}\n", report.relator));
    out.push_str(&format!(
        "root:          {} (exponent {})\n",
        report.root, report.exponent
    ));
    out.push_str(&format!(
        "exponent sums: ({}, {})\n",
        report.exponent_sums[0], report.exponent_sums[1]
    ));
    out.push_str(&format!("applicability: {}\n", report.applicability));
    if let Some(p) = &report.polytope {
        let vertices: Vec<String> = p
            .vertices
            .iter()
            .map(|v| format!("({},{})", v[0], v[1]))
            .collect();
        out.push_str(&format!(
            "polytope:      {} [{}]\n",
            p.class,
            vertices.join(" ")
        ));
    }
    out.push_str(&format!("detection:     {:?}\n", report.detection));
    match &report.decomposition {
        Some(engine::DecompositionJson::Trivial { description }) => {
            out.push_str(&format!("decomposition: trivial ({description})\n"));
        }
        Some(engine::DecompositionJson::Hnn {
            base_relator_xy,
            exponent,
            stable_letter,
            attaching,
            representative,
        }) => {
            out.push_str(&format!(
                "decomposition: HNN base <a, y | ({base_relator_xy})^{exponent}>, stable letter {stable_letter}, attaching {attaching}, representative {representative}\n"
            ));
        }
        None => {}
    }
    if let Some(class) = &report.out_class {
        out.push_str(&format!("out class:     {class:?}\n"));
    }
    for warning in &report.warnings {
        out.push_str(&format!("warning:       {warning}\n"));
    }
    out
}

fn run_oracle(max_length: usize) -> (String, u8) {
    let mut disagreements = Vec::new();
    let mut checked = 0usize;
    for length in 1..=max_length {
        for cw in oracle::enumerate_cyclic_words(length) {
            checked += 1;
            let (greedy, _) = whitehead::minimize(&cw);
            match oracle::bfs_orbit(&cw, cw.len()) {
                Ok(result) => {
                    if result.min_length != greedy.len() {
                        disagreements.push(OracleDisagreement {
                            word: cw.to_string(),
                            greedy: greedy.len(),
                            exhaustive: result.min_length,
                        });
                    }
                }
                Err(e) => {
                    eprintln!("oracle: {e}");
                    return (String::new(), 1);
                }
            }
        }
    }
    let ok = disagreements.is_empty();
    let json = OracleJson {
        max_length,
        classes_checked: checked,
        disagreements,
    };
    let mut text = serde_json::to_string_pretty(&json).expect("serializable");
    text.push('\n');
    (text, if ok { 0 } else { 1 })
}

fn orbit_cap_from_env() -> usize {
    match std::env::var("ORJSJ_ORBIT_CAP") {
        Err(_) => DEFAULT_ORBIT_CAP,
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(value) if value > 0 => value,
            _ => {
                eprintln!(
                    "warning: ignoring invalid ORJSJ_ORBIT_CAP='{raw}', using {DEFAULT_ORBIT_CAP}"
                );
                DEFAULT_ORBIT_CAP
            }
        },
    }
}

fn gather_inputs(cli: &Cli) -> Result<Vec<String>, Failure> {
    if let Some(arg) = cli.command.relator_arg() {
        return Ok(vec![arg.clone()]);
    }
    let raw = if let Some(path) = &cli.batch {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Internal(format!("cannot read {}: {e}", path.display())))?
    } else {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| Failure::Internal(format!("cannot read stdin: {e}")))?;
        buffer
    };
    let lines: Vec<String> = raw
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect();
    if lines.is_empty() {
        return Err(Failure::Parse("no input relators given".to_string()));
    }
    Ok(lines)
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Command::Oracle { max_length } = cli.command {
        let (output, code) = run_oracle(max_length);
        return match emit(&cli, output) {
            Ok(()) => ExitCode::from(code),
            Err(f) => fail(f),
        };
    }

    if cli.format == Format::Svg && !matches!(cli.command, Command::Polytope { .. }) {
        eprintln!("error: --format svg is only available for the polytope command");
        return ExitCode::from(2);
    }

    let inputs = match gather_inputs(&cli) {
        Ok(inputs) => inputs,
        Err(f) => return fail(f),
    };
    let runner = Runner {
        assumptions: Assumptions {
            assume_hyperbolic: cli.assume_hyperbolic,
            assume_rg: cli.assume_rg,
        },
        orbit_cap: orbit_cap_from_env(),
        format: cli.format,
        pretty: inputs.len() == 1,
    };

    let mut output = String::new();
    let mut worst: Option<Failure> = None;
    for input in &inputs {
        let result = runner.run_one(&cli.command, input);
        output.push_str(&result.output);
        if let Some(failure) = result.failure {
            eprintln!("{}: {}", input, failure.message());
            let replace = worst
                .as_ref()
                .is_none_or(|current| failure.rank() > current.rank());
            if replace {
                worst = Some(failure);
            }
        }
    }

    if let Err(f) = emit(&cli, output) {
        return fail(f);
    }
    match worst {
        None => ExitCode::SUCCESS,
        Some(failure) => ExitCode::from(failure.exit_code()),
    }
}

fn emit(cli: &Cli, output: String) -> Result<(), Failure> {
    if output.is_empty() {
        return Ok(());
    }
    match &cli.out {
        None => {
            print!("{output}");
            Ok(())
        }
        Some(path) => std::fs::write(path, output)
            .map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display()))),
    }
}

fn fail(failure: Failure) -> ExitCode {
    eprintln!("{}", failure.message());
    ExitCode::from(failure.exit_code())
}
