//! The `splitclust` command line, callable in-process through [`run`].
//!
//! Every subcommand reads its inputs from files (`-` for stdin), writes one
//! of the library's text formats or a short answer to stdout and keeps
//! diagnostics on stderr. With `--json`, stdout carries one JSON object with
//! the keys `command`, `input`, `result` and, where meaningful, `cost`,
//! `bound` and `valid`.

mod args;

use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Map, Value};
use splitclust::{
    approximate_with_report, ccvs_to_mcvs, clustering_to_multicut_solution, decide,
    gen_coloring_gadget, gen_random, gen_vertex_cover_gadget, kernelize, lift_clustering,
    lower_bound, mcvs_to_ccvs, multicut_solution_to_clustering, parse_clustering, parse_graph,
    parse_mcsol, parse_mcvs, parse_transcript, solve_exact, verify_clustering,
    verify_multicut_solution, write_clustering, write_graph, write_mcsol, write_mcvs,
    write_transcript, ApproxPath, Clustering, CorrelationGraph, Error, KernelResult,
    MulticutInstance, PlainGraph, SearchBudget,
};

use args::{Cli, Command, GenCommand, ReduceCommand};

/// Process exit status; decision-style commands encode their answer here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    /// Success, or a "yes" answer.
    Success = 0,
    /// A "no" answer or an invalid solution.
    No = 1,
    /// Bad arguments or malformed input.
    Usage = 2,
    /// A search limit was hit.
    Exhausted = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

struct Failure {
    status: ExitStatus,
    message: String,
}

impl Failure {
    fn new(status: ExitStatus, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }

    fn from_lib(context: &str, e: Error) -> Self {
        let status = match e {
            Error::NodeLimitExceeded(_) | Error::TooManyVertices { .. } => ExitStatus::Exhausted,
            Error::InvalidClustering(_)
            | Error::MarkedCoreNotFound(_)
            | Error::UnverifiedMulticut { .. }
            | Error::ErroneousCycle => ExitStatus::No,
            _ => ExitStatus::Usage,
        };
        Self::new(status, format!("{context}: {e}"))
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// What a command produced before rendering.
struct Report {
    status: ExitStatus,
    /// Plain-mode stdout.
    text: String,
    /// Plain-mode stderr notes.
    notes: String,
    result: Value,
    extra: Map<String, Value>,
}

impl Report {
    fn new(text: String, result: Value) -> Self {
        Self {
            status: ExitStatus::Success,
            text,
            notes: String::new(),
            result,
            extra: Map::new(),
        }
    }

    fn status(mut self, status: ExitStatus) -> Self {
        self.status = status;
        self
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extra.insert(key.to_string(), value.into());
        self
    }

    fn note(mut self, note: String) -> Self {
        self.notes = note;
        self
    }
}

struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
    paths: Vec<String>,
}

impl Inputs<'_> {
    fn read(&mut self, path: &str) -> Outcome<String> {
        self.paths.push(path.to_string());
        if path == "-" {
            if std::mem::replace(&mut self.stdin_used, true) {
                return Err(Failure::new(
                    ExitStatus::Usage,
                    "stdin (`-`) can only be read once",
                ));
            }
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::new(ExitStatus::Usage, format!("<stdin>: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path)
                .map_err(|e| Failure::new(ExitStatus::Usage, format!("{path}: {e}")))
        }
    }

    fn graph(&mut self, path: &str) -> Outcome<CorrelationGraph> {
        let text = self.read(path)?;
        parse_graph(&text).map_err(|e| Failure::from_lib(path, e))
    }

    fn clustering(&mut self, path: &str) -> Outcome<Clustering> {
        let text = self.read(path)?;
        parse_clustering(&text).map_err(|e| Failure::from_lib(path, e))
    }

    fn mcvs(&mut self, path: &str) -> Outcome<MulticutInstance> {
        let text = self.read(path)?;
        parse_mcvs(&text).map_err(|e| Failure::from_lib(path, e))
    }
}

fn lib<T>(context: &str, r: splitclust::Result<T>) -> Outcome<T> {
    r.map_err(|e| Failure::from_lib(context, e))
}

fn cost_of(g: &CorrelationGraph, f: &Clustering, context: &str) -> Outcome<usize> {
    lib(context, f.cost(g.n()))
}

fn search_budget(budget: Option<usize>, node_limit: Option<u64>) -> SearchBudget {
    let mut b = SearchBudget::default();
    if let Some(k) = budget {
        b.max_cost = k;
    }
    if let Some(limit) = node_limit {
        b.node_limit = limit;
    }
    b
}

fn execute(command: Command, inputs: &mut Inputs) -> Outcome<Report> {
    match command {
        Command::Approx { graph, guess_all } => {
            let g = inputs.graph(&graph)?;
            let report = lib(&graph, approximate_with_report(&g))?;
            let f = &report.clustering;
            let violations = lib(&graph, verify_clustering(&g, f))?;
            if !violations.is_empty() {
                return Err(Failure::new(
                    ExitStatus::Usage,
                    format!("internal error: approximation failed verification\n{violations}"),
                ));
            }
            let cost = cost_of(&g, f, &graph)?;
            let mut notes = String::new();
            if guess_all {
                let _ = writeln!(notes, "path {}", path_name(report.path));
                let _ = writeln!(notes, "guess\tcost");
                for (guess, c) in &report.guess_costs {
                    let label = guess.map_or("none".to_string(), |i| i.to_string());
                    let chosen = report.chosen.as_ref().is_some_and(|p| p.guess == *guess);
                    let _ = writeln!(notes, "{label}\t{c}{}", if chosen { "\t*" } else { "" });
                }
            }
            Ok(Report::new(write_clustering(f), json!(write_clustering(f)))
                .with("cost", cost)
                .with("valid", true)
                .note(notes))
        }
        Command::Exact { graph, search } => {
            let g = inputs.graph(&graph)?;
            let budget = search_budget(search.budget, search.node_limit);
            match lib(&graph, solve_exact(&g, &budget))? {
                Some(f) => {
                    let cost = cost_of(&g, &f, &graph)?;
                    Ok(
                        Report::new(write_clustering(&f), json!(write_clustering(&f)))
                            .with("cost", cost),
                    )
                }
                None => Ok(Report::new(String::new(), Value::Null)
                    .status(ExitStatus::No)
                    .with("bound", budget.max_cost + 1)
                    .note(format!(
                        "no clustering of cost at most {}\n",
                        budget.max_cost
                    ))),
            }
        }
        Command::Decide {
            graph,
            budget,
            node_limit,
        } => {
            let g = inputs.graph(&graph)?;
            let answer = match node_limit {
                None => lib(&graph, decide(&g, budget))?,
                Some(_) => lib(
                    &graph,
                    solve_exact(&g, &search_budget(Some(budget), node_limit)),
                )?
                .is_some(),
            };
            let word = if answer { "yes" } else { "no" };
            Ok(
                Report::new(format!("{word}\n"), json!(word)).status(if answer {
                    ExitStatus::Success
                } else {
                    ExitStatus::No
                }),
            )
        }
        Command::Lb { graph } => {
            let g = inputs.graph(&graph)?;
            let lb = lib(&graph, lower_bound(&g))?;
            Ok(Report::new(format!("{lb}\n"), json!(lb)).with("bound", lb))
        }
        Command::Kernel {
            graph,
            budget,
            transcript,
        } => {
            let g = inputs.graph(&graph)?;
            match lib(&graph, kernelize(&g, budget))? {
                KernelResult::NoInstance { witness } => {
                    let mut notes = format!(
                        "no-instance: bad star forest of weight {}\n",
                        witness.weight()
                    );
                    for star in &witness.stars {
                        let leaves: Vec<String> =
                            star.leaves.iter().map(ToString::to_string).collect();
                        let _ = writeln!(notes, "star {} : {}", star.center, leaves.join(" "));
                    }
                    Ok(Report::new("no\n".into(), json!("no"))
                        .status(ExitStatus::No)
                        .with("bound", witness.weight())
                        .note(notes))
                }
                KernelResult::Kernel {
                    graph: kg,
                    transcript: t,
                } => {
                    let ktx = write_transcript(&t);
                    if let Some(path) = &transcript {
                        std::fs::write(path, &ktx)
                            .map_err(|e| Failure::new(ExitStatus::Usage, format!("{path}: {e}")))?;
                    }
                    let text = write_graph(&kg);
                    Ok(
                        Report::new(text.clone(), json!({ "graph": text, "transcript": ktx }))
                            .note(format!("kernel has {} of {} vertices\n", kg.n(), g.n())),
                    )
                }
            }
        }
        Command::Lift {
            clustering,
            transcript,
        } => {
            let f = inputs.clustering(&clustering)?;
            let text = inputs.read(&transcript)?;
            let t = lib(&transcript, parse_transcript(&text))?;
            let lifted = lib(&clustering, lift_clustering(&f, &t))?;
            let cost = lib(&clustering, lifted.cost(t.original_n))?;
            Ok(
                Report::new(write_clustering(&lifted), json!(write_clustering(&lifted)))
                    .with("cost", cost),
            )
        }
        Command::Verify { graph, clustering } => {
            let g = inputs.graph(&graph)?;
            let f = inputs.clustering(&clustering)?;
            let report = lib(&clustering, verify_clustering(&g, &f))?;
            let valid = report.is_empty();
            let rendered = report.to_string();
            let lines: Vec<&str> = rendered.lines().collect();
            let mut r = Report::new(rendered.clone(), json!(lines)).with("valid", valid);
            if valid {
                r = r.with("cost", cost_of(&g, &f, &clustering)?);
            } else {
                r = r.status(ExitStatus::No);
            }
            Ok(r)
        }
        Command::Reduce { command } => reduce(command, inputs),
        Command::Gen { command } => generate(command, inputs),
        Command::Stats { graph } => {
            let g = inputs.graph(&graph)?;
            let mut text = String::new();
            let mut obj = Map::new();
            let mut put = |key: &str, value: Value| {
                let shown = match &value {
                    Value::Bool(b) => (if *b { "yes" } else { "no" }).to_string(),
                    v => v.to_string(),
                };
                let _ = writeln!(text, "{key} {shown}");
                obj.insert(key.replace('-', "_"), value);
            };
            put("n", json!(g.n()));
            put("complete", json!(g.is_complete()));
            put("blue", json!(g.blue_count()));
            put("red", json!(g.red_count()));
            put("neutral", json!(g.neutral_count()));
            put("blue-components", json!(g.blue_components().len()));
            put("cluster-graph", json!(g.is_cluster_graph()));
            let mut report_bound = None;
            if g.is_complete() {
                let lb = lib(&graph, lower_bound(&g))?;
                put("lower-bound", json!(lb));
                report_bound = Some(lb);
            }
            let mut r = Report::new(text, Value::Object(obj));
            if let Some(lb) = report_bound {
                r = r.with("bound", lb);
            }
            Ok(r)
        }
    }
}

fn path_name(p: ApproxPath) -> &'static str {
    match p {
        ApproxPath::ClusterGraph => "cluster-graph",
        ApproxPath::Fallback => "fallback",
        ApproxPath::Simple => "simple",
    }
}

fn reduce(command: ReduceCommand, inputs: &mut Inputs) -> Outcome<Report> {
    match command {
        ReduceCommand::CcvsToMcvs { graph, budget } => {
            let g = inputs.graph(&graph)?;
            let text = write_mcvs(&ccvs_to_mcvs(&g, budget));
            Ok(Report::new(text.clone(), json!(text)))
        }
        ReduceCommand::McvsToCcvs { instance } => {
            let inst = inputs.mcvs(&instance)?;
            let (g, k) = lib(&instance, mcvs_to_ccvs(&inst))?;
            let text = write_graph(&g);
            Ok(Report::new(text.clone(), json!(text)).with("bound", k))
        }
        ReduceCommand::ClusteringToMcsol { graph, clustering } => {
            let g = inputs.graph(&graph)?;
            let f = inputs.clustering(&clustering)?;
            let sol = lib(&clustering, clustering_to_multicut_solution(&g, &f))?;
            let text = write_mcsol(g.n(), &sol);
            Ok(Report::new(text.clone(), json!(text)).with("cost", sol.cost()))
        }
        ReduceCommand::McsolToClustering { instance, solution } => {
            let inst = inputs.mcvs(&instance)?;
            let sol = read_mcsol(inputs, &solution, &inst)?;
            let f = lib(&solution, multicut_solution_to_clustering(&inst, &sol))?;
            let cost = lib(&solution, f.cost(inst.n()))?;
            Ok(Report::new(write_clustering(&f), json!(write_clustering(&f))).with("cost", cost))
        }
        ReduceCommand::Check { instance, solution } => {
            let inst = inputs.mcvs(&instance)?;
            let sol = read_mcsol(inputs, &solution, &inst)?;
            let valid = lib(&solution, verify_multicut_solution(&inst, &sol))?;
            let within = sol.cost() <= inst.k();
            let mut text = String::new();
            if !valid {
                text.push_str("connected-terminals\n");
            }
            if !within {
                let _ = writeln!(text, "over-budget {} {}", sol.cost(), inst.k());
            }
            let ok = valid && within;
            Ok(
                Report::new(text.clone(), json!(text.lines().collect::<Vec<_>>()))
                    .status(if ok {
                        ExitStatus::Success
                    } else {
                        ExitStatus::No
                    })
                    .with("valid", ok)
                    .with("cost", sol.cost()),
            )
        }
    }
}

fn read_mcsol(
    inputs: &mut Inputs,
    path: &str,
    inst: &MulticutInstance,
) -> Outcome<splitclust::MulticutSolution> {
    let text = inputs.read(path)?;
    let (n, sol) = lib(path, parse_mcsol(&text))?;
    if n != inst.n() {
        return Err(Failure::new(
            ExitStatus::Usage,
            format!(
                "{path}: solution is for {n} vertices, instance has {}",
                inst.n()
            ),
        ));
    }
    Ok(sol)
}

fn generate(command: GenCommand, inputs: &mut Inputs) -> Outcome<Report> {
    match command {
        GenCommand::Random {
            n,
            p_blue,
            p_red,
            incomplete,
            seed,
        } => {
            let complete = !incomplete;
            let p_red = p_red.unwrap_or(if complete { 1.0 - p_blue } else { 0.0 });
            let g = lib("gen random", gen_random(n, p_blue, p_red, complete, seed))?;
            let text = write_graph(&g);
            Ok(Report::new(text.clone(), json!(text)))
        }
        GenCommand::VcGadget { graph, budget } => {
            let g = inputs.graph(&graph)?;
            let gadget = lib(
                &graph,
                gen_vertex_cover_gadget(&PlainGraph::from_blue(&g), budget),
            )?;
            let text = write_graph(&gadget);
            Ok(Report::new(text.clone(), json!(text)).with("bound", budget))
        }
        GenCommand::ColoringGadget { graph, colors } => {
            let g = inputs.graph(&graph)?;
            let inst = lib(
                &graph,
                gen_coloring_gadget(&PlainGraph::from_blue(&g), colors),
            )?;
            let text = write_mcvs(&inst);
            Ok(Report::new(text.clone(), json!(text)).with("bound", inst.k()))
        }
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Approx { .. } => "approx".into(),
        Command::Exact { .. } => "exact".into(),
        Command::Decide { .. } => "decide".into(),
        Command::Lb { .. } => "lb".into(),
        Command::Kernel { .. } => "kernel".into(),
        Command::Lift { .. } => "lift".into(),
        Command::Verify { .. } => "verify".into(),
        Command::Stats { .. } => "stats".into(),
        Command::Reduce { command } => format!(
            "reduce {}",
            match command {
                ReduceCommand::CcvsToMcvs { .. } => "ccvs-to-mcvs",
                ReduceCommand::McvsToCcvs { .. } => "mcvs-to-ccvs",
                ReduceCommand::ClusteringToMcsol { .. } => "clustering-to-mcsol",
                ReduceCommand::McsolToClustering { .. } => "mcsol-to-clustering",
                ReduceCommand::Check { .. } => "check",
            }
        ),
        Command::Gen { command } => format!(
            "gen {}",
            match command {
                GenCommand::Random { .. } => "random",
                GenCommand::VcGadget { .. } => "vc-gadget",
                GenCommand::ColoringGadget { .. } => "coloring-gadget",
            }
        ),
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    ExitStatus::Success
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    ExitStatus::Usage
                }
            };
        }
    };

    let name = command_name(&cli.command);
    let mut inputs = Inputs {
        stdin,
        stdin_used: false,
        paths: Vec::new(),
    };
    match execute(cli.command, &mut inputs) {
        Ok(report) => {
            if cli.json {
                let input = match inputs.paths.as_slice() {
                    [] => Value::Null,
                    [one] => json!(one),
                    many => json!(many),
                };
                let mut obj = Map::new();
                obj.insert("command".into(), json!(name));
                obj.insert("input".into(), input);
                obj.insert("result".into(), report.result);
                obj.extend(report.extra);
                let _ = writeln!(stdout, "{}", Value::Object(obj));
            } else {
                let _ = stdout.write_all(report.text.as_bytes());
            }
            let _ = stderr.write_all(report.notes.as_bytes());
            report.status
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.status
        }
    }
}
