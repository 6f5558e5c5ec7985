use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zerocap::ahlswede::AvcError;
use zerocap::avc::capacity::{CapacityError, DEFAULT_TOLERANCE};
use zerocap::avc::{cav, symmetrizer, CavError, SymmetrizeError};
use zerocap::bounds::BoundsError;
use zerocap::channel::ChannelError;
use zerocap::exact_num::{format_rational, parse_rational, pow2_neg};
use zerocap::formats::{self, FormatError};
use zerocap::graph::GraphError;
use zerocap::{
    avc_to_dmc, c0_bounds, cmax_is_zero, confusability_graph, dmc_to_avc, graph_to_channel, is_useless,
    max_zero_error_code, semidecide_c0_above, semidecide_theta_above, sign_positive, specker_real, theta_bounds,
    BoundInterval, Graph, Limits, Rational, StepPredicate, Verdict,
};

const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_CAP: u8 = 4;
const EXIT_TOLERANCE: u8 = 5;

/// Zero-error capacity bounds, 0-1 AVC constructions and budgeted
/// semi-decisions over exact rationals.
///
/// Caps on the exponential searches can be raised with ZEROCAP_PRODUCT_CAP,
/// ZEROCAP_STATE_CAP and ZEROCAP_ENUM_CAP.
#[derive(Debug, Parser)]
#[command(name = "zerocap", version)]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Confusability graph of a channel, as a graph document.
    Graph { channel: PathBuf },
    /// Interval for the Shannon capacity of a graph, or for C0 of a channel.
    Bounds {
        #[arg(long, default_value_t = 2)]
        n_max: usize,
        input: PathBuf,
    },
    /// A largest zero-error code of the given block length.
    Code {
        #[arg(long, default_value_t = 1)]
        length: usize,
        channel: PathBuf,
    },
    /// 0-1 AVC whose states pick one supported output per input.
    ToAvc { channel: PathBuf },
    /// Uniform mixture of the AVC states, as a channel document.
    ToDmc { avc: PathBuf },
    /// Channel whose confusability graph is the given graph.
    FromGraph { graph: PathBuf },
    /// Whether every pair of inputs is confusable.
    Useless { channel: PathBuf },
    /// Whether the maximal-error capacity of a 0-1 AVC is zero.
    CmaxZero { avc: PathBuf },
    /// Symmetrizability of a 0-1 AVC, with a witness when it holds.
    Symmetrizable { avc: PathBuf },
    /// Average-error capacity of a 0-1 AVC in bits.
    Cav {
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        avc: PathBuf,
    },
    /// Budgeted threshold tests; exit code 3 when the budget runs out.
    #[command(subcommand)]
    Semidecide(Semidecide),
    /// Runs the positivity test on a real hidden behind a halting pattern.
    SpeckerDemo {
        /// Step at which the hidden predicate first holds; never if absent.
        #[arg(long)]
        halt_step: Option<u64>,
        #[arg(long)]
        budget: u64,
    },
}

#[derive(Debug, Subcommand)]
enum Semidecide {
    /// Halts once some strong power certifies Θ(G) > mu.
    ThetaAbove {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        budget: u64,
        /// Graph document, or a channel document (its confusability graph).
        input: PathBuf,
    },
    /// Halts once some block length certifies C0(W) > lambda.
    C0Above {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        budget: u64,
        channel: PathBuf,
    },
}

/// What a command prints and the exit code it ends with.
struct Report {
    human: String,
    machine: Value,
    code: u8,
}

impl Report {
    fn ok(human: String, machine: Value) -> Self {
        Report { human, machine, code: 0 }
    }

    /// A document verb: both formats print the document itself.
    fn document(text: String) -> Self {
        let machine = serde_json::from_str(&text).expect("library documents are JSON");
        Report::ok(text.trim_end().to_string(), machine)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let limits = Limits::from_env();
    match run(cli.command, &limits) {
        Ok(report) => {
            match cli.format {
                Format::Human => println!("{}", report.human),
                Format::Machine => println!("{}", serde_json::to_string_pretty(&report.machine).unwrap()),
            }
            ExitCode::from(report.code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    fn graph(e: &GraphError) -> u8 {
        match e {
            GraphError::ProductTooLarge { .. } | GraphError::GraphTooLargeForExactCover { .. } => EXIT_CAP,
            _ => EXIT_INVALID,
        }
    }
    fn channel(e: &ChannelError) -> u8 {
        match e {
            ChannelError::EnumerationCapExceeded { .. } => EXIT_CAP,
            ChannelError::Graph(g) => graph(g),
            _ => EXIT_INVALID,
        }
    }
    fn capacity(e: &CapacityError) -> u8 {
        match e {
            CapacityError::ToleranceNotReached { .. } => EXIT_TOLERANCE,
            CapacityError::InvalidTolerance(_) => EXIT_INVALID,
        }
    }
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<GraphError>() {
            return graph(e);
        }
        if let Some(e) = cause.downcast_ref::<ChannelError>() {
            return channel(e);
        }
        if let Some(e) = cause.downcast_ref::<BoundsError>() {
            return match e {
                BoundsError::Graph(g) => graph(g),
                _ => EXIT_INVALID,
            };
        }
        if let Some(e) = cause.downcast_ref::<AvcError>() {
            return match e {
                AvcError::StateCapExceeded { .. } => EXIT_CAP,
                _ => EXIT_INVALID,
            };
        }
        if cause.downcast_ref::<SymmetrizeError>().is_some() {
            return EXIT_CAP;
        }
        if let Some(e) = cause.downcast_ref::<CapacityError>() {
            return capacity(e);
        }
        if let Some(e) = cause.downcast_ref::<CavError>() {
            return match e {
                CavError::Capacity(c) => capacity(c),
                CavError::ToleranceNotReached { .. } => EXIT_TOLERANCE,
            };
        }
    }
    EXIT_INVALID
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load<T>(path: &Path, parse: fn(&str) -> Result<T, FormatError>) -> Result<T> {
    let text = read(path)?;
    parse(&text).with_context(|| format!("invalid document {}", path.display()))
}

/// A graph document, or the confusability graph of a channel document.
fn load_graph_or_channel(path: &Path) -> Result<(Graph, Option<zerocap::Channel>)> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("invalid document {}", path.display()))?;
    if value.get("rows").is_some() {
        let channel = formats::parse_channel(&text).with_context(|| format!("invalid channel {}", path.display()))?;
        Ok((confusability_graph(&channel), Some(channel)))
    } else {
        let graph = formats::parse_graph(&text).with_context(|| format!("invalid graph {}", path.display()))?;
        Ok((graph, None))
    }
}

fn parse_threshold(name: &str, text: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| anyhow!(BoundsError::InvalidThreshold(format!("{name} = {text:?}: {e}"))))
}

fn run(command: Command, limits: &Limits) -> Result<Report> {
    match command {
        Command::Graph { channel } => {
            let channel = load(&channel, formats::parse_channel)?;
            Ok(Report::document(formats::write_graph(&confusability_graph(&channel))))
        }
        Command::Bounds { n_max, input } => {
            if n_max == 0 {
                return Err(anyhow!(BoundsError::InvalidThreshold("--n-max must be at least 1".into())));
            }
            let (graph, channel) = load_graph_or_channel(&input)?;
            let interval = match &channel {
                Some(ch) => c0_bounds(ch, n_max, limits)?,
                None => theta_bounds(&graph, n_max, limits)?,
            };
            Ok(bounds_report(&interval, channel.is_some()))
        }
        Command::Code { length, channel } => {
            if length == 0 {
                return Err(anyhow!("--length must be at least 1"));
            }
            let channel = load(&channel, formats::parse_channel)?;
            let code = max_zero_error_code(&channel, length, limits)?;
            let rate = (code.len() as f64).log2() / length as f64;
            let words: Vec<String> = code
                .codewords
                .iter()
                .map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            let human = format!(
                "block length {length}: {} codewords, rate ≈ {rate:.6} bits\n{}",
                code.len(),
                words.join("\n")
            );
            let machine = json!({
                "block_length": length,
                "size": code.len(),
                "rate_bits_approx": rate,
                "codewords": code.codewords,
            });
            Ok(Report::ok(human, machine))
        }
        Command::ToAvc { channel } => {
            let channel = load(&channel, formats::parse_channel)?;
            Ok(Report::document(formats::write_avc(&dmc_to_avc(&channel, limits)?)))
        }
        Command::ToDmc { avc } => {
            let avc = load(&avc, formats::parse_avc)?;
            Ok(Report::document(formats::write_channel(&avc_to_dmc(&avc))))
        }
        Command::FromGraph { graph } => {
            let graph = load(&graph, formats::parse_graph)?;
            Ok(Report::document(formats::write_channel(&graph_to_channel(&graph)?)))
        }
        Command::Useless { channel } => {
            let channel = load(&channel, formats::parse_channel)?;
            let useless = is_useless(&channel);
            Ok(Report::ok(format!("useless: {useless}"), json!({ "useless": useless })))
        }
        Command::CmaxZero { avc } => {
            let avc = load(&avc, formats::parse_avc)?;
            let zero = cmax_is_zero(&avc);
            Ok(Report::ok(format!("C_max = 0: {zero}"), json!({ "cmax_is_zero": zero })))
        }
        Command::Symmetrizable { avc } => {
            let avc = load(&avc, formats::parse_avc)?;
            Ok(match symmetrizer(&avc, limits) {
                Some(u) => {
                    let rows: Vec<Vec<String>> =
                        u.weights.iter().map(|r| r.iter().map(format_rational).collect()).collect();
                    let table: Vec<String> = rows.iter().map(|r| format!("  {}", r.join("  "))).collect();
                    Report::ok(
                        format!("symmetrizable: true\nU(s|x), rows indexed by input:\n{}", table.join("\n")),
                        json!({ "symmetrizable": true, "witness": rows }),
                    )
                }
                None => Report::ok(
                    "symmetrizable: false".into(),
                    json!({ "symmetrizable": false, "witness": null }),
                ),
            })
        }
        Command::Cav { tol, avc } => {
            let avc = load(&avc, formats::parse_avc)?;
            let result = cav(&avc, tol, limits)?;
            let est = &result.estimate;
            let kind = if est.certified { "certified" } else { "estimated, not certified" };
            let mut human = format!(
                "C_av ≈ {:.9} bits, in [{:.9}, {:.9}], error ≤ {:.3e} ({kind})\nsymmetrizable: {}",
                est.value_bits, est.lower_bits, est.upper_bits, est.certified_absolute_error, result.symmetrizable
            );
            if let Some(mix) = &result.minimizer {
                let weights: Vec<String> = mix.weights.iter().map(|w| format!("{w:.6}")).collect();
                human.push_str(&format!("\nminimizing state mixture ≈ [{}]", weights.join(", ")));
            }
            let machine = json!({
                "value_bits": est.value_bits,
                "lower_bits": est.lower_bits,
                "upper_bits": est.upper_bits,
                "certified_absolute_error": est.certified_absolute_error,
                "certified": est.certified,
                "iterations": est.iterations,
                "tolerance": tol,
                "symmetrizable": result.symmetrizable,
                "minimizer": result.minimizer.as_ref().map(|m| m.weights.clone()),
            });
            Ok(Report::ok(human, machine))
        }
        Command::Semidecide(Semidecide::ThetaAbove { mu, budget, input }) => {
            let threshold = parse_threshold("mu", &mu)?;
            let (graph, _) = load_graph_or_channel(&input)?;
            let decision = semidecide_theta_above(&graph, &threshold, budget, limits)?;
            let certificate = decision.verdict.halt_step().map(|n| {
                format!(
                    "α(G^⊠{n}) = {} > ({})^{n}",
                    decision.alpha_values[n as usize - 1],
                    format_rational(&threshold)
                )
            });
            Ok(verdict_report("Θ(G) >", &threshold, decision.verdict, &decision.alpha_values, certificate))
        }
        Command::Semidecide(Semidecide::C0Above { lambda, budget, channel }) => {
            let threshold = parse_threshold("lambda", &lambda)?;
            let channel = load(&channel, formats::parse_channel)?;
            let decision = semidecide_c0_above(&channel, &threshold, budget, limits)?;
            let certificate = decision.verdict.halt_step().map(|n| {
                format!(
                    "α(G_W^⊠{n}) = {} > 2^({} · {n})",
                    decision.alpha_values[n as usize - 1],
                    format_rational(&threshold)
                )
            });
            Ok(verdict_report("C0(W) >", &threshold, decision.verdict, &decision.alpha_values, certificate))
        }
        Command::SpeckerDemo { halt_step, budget } => specker_demo(halt_step, budget),
    }
}

fn bounds_report(b: &BoundInterval, for_channel: bool) -> Report {
    let (lo, hi) = b.theta_display();
    let mut human = format!(
        "Θ ∈ [{}, {}]  (≈ [{lo}, {hi}])\nalpha_values: {:?}\nn_used: {}",
        b.lower_symbolic(),
        b.upper,
        b.alpha_values,
        b.n_used
    );
    if for_channel {
        let (c_lo, c_hi) = b.c0_display();
        human.push_str(&format!("\nC0 ≈ [{c_lo}, {c_hi}] bits (approximate)"));
    }
    if let Some(theta) = b.exact_theta() {
        human.push_str(&format!("\nexact: Θ = {theta}"));
    }
    let mut machine = json!({
        "theta_lower": b.lower_symbolic(),
        "theta_upper": b.upper,
        "lower_alpha": b.lower_alpha,
        "lower_root": b.lower_root,
        "n_used": b.n_used,
        "alpha_values": b.alpha_values,
        "exact_theta": b.exact_theta(),
        "theta_approx": [b.lower_theta(), b.upper_theta()],
    });
    if for_channel {
        machine["c0_bits_approx"] = json!([
            (b.lower_alpha as f64).log2() / b.lower_root as f64,
            (b.upper as f64).log2()
        ]);
        machine["exact_c0_bits"] = json!(b.exact_c0_bits());
    }
    Report::ok(human, machine)
}

fn verdict_report(
    claim: &str,
    threshold: &Rational,
    verdict: Verdict,
    alpha_values: &[usize],
    certificate: Option<String>,
) -> Report {
    let mut human = format!("{claim} {}: {verdict}\nalpha_values: {alpha_values:?}", format_rational(threshold));
    if let Some(c) = &certificate {
        human.push_str(&format!("\ncertificate: {c}"));
    }
    let machine = json!({
        "threshold": format_rational(threshold),
        "verdict": verdict_json(verdict),
        "alpha_values": alpha_values,
        "certificate": certificate,
    });
    Report {
        human,
        machine,
        code: if verdict.is_halted() { 0 } else { EXIT_BUDGET },
    }
}

fn verdict_json(verdict: Verdict) -> Value {
    match verdict {
        Verdict::Halted { steps_used } => json!({ "halted": true, "steps_used": steps_used }),
        Verdict::BudgetExhausted { budget } => json!({ "halted": false, "budget": budget }),
    }
}

const DEMO_PREFIX: u64 = 12;

fn specker_demo(halt_step: Option<u64>, budget: u64) -> Result<Report> {
    if budget == 0 {
        return Err(anyhow!("--budget must be at least 1"));
    }
    if halt_step == Some(0) {
        return Err(anyhow!("--halt-step must be at least 1"));
    }
    let predicate = match halt_step {
        Some(l) => StepPredicate::halting_at(l),
        None => StepPredicate::never_halting(),
    };
    let real = specker_real(predicate);
    let shown = budget.min(DEMO_PREFIX);
    let prefix: Vec<String> = (0..=shown).map(|m| format_rational(&real.approximant(m))).collect();
    let verdict = sign_positive(&real, budget);
    let (revealed, inequality) = match verdict {
        Verdict::Halted { steps_used: k } => {
            let value = real.approximant(k);
            (
                format_rational(&value),
                format!("λ_{k} - 2^-{k} = {} > 0", format_rational(&(value.clone() - pow2_neg(k)))),
            )
        }
        Verdict::BudgetExhausted { budget } => {
            let last = real.approximant(budget);
            let revealed = match halt_step {
                Some(l) if l <= budget => format_rational(&last),
                Some(_) => "undetermined (the halt lies beyond the budget)".to_string(),
                None => "0 (never revealed to the decider)".to_string(),
            };
            let inequality = if budget <= DEMO_PREFIX {
                format!(
                    "λ_k - 2^-k <= 0 for k = 1..={budget}; at k = {budget}: {} - {} <= 0",
                    format_rational(&last),
                    format_rational(&pow2_neg(budget))
                )
            } else {
                format!("λ_k - 2^-k <= 0 for k = 1..={budget}")
            };
            (revealed, inequality)
        }
    };
    let ellipsis = if budget > DEMO_PREFIX { ", ..." } else { "" };
    let human = format!(
        "λ_0..λ_{shown}: {}{ellipsis}\nverdict: {verdict}\ntest: {inequality}\nreal: {revealed}",
        prefix.join(", ")
    );
    let machine = json!({
        "halt_step": halt_step,
        "budget": budget,
        "prefix": prefix,
        "verdict": verdict_json(verdict),
        "inequality": inequality,
        "real": revealed,
    });
    Ok(Report {
        human,
        machine,
        code: if verdict.is_halted() { 0 } else { EXIT_BUDGET },
    })
}
