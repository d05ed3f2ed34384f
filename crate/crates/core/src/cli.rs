//! The `posmt` command line.
//!
//! Exit codes: 0 yes or success, 1 no, 2 parse error, 3 semantic error,
//! 4 unknown or budget exhausted.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::amalgamation::{check_basis, kind_bound, solve, solve_by_enumeration, verify_theorem, AmalgamationProblem, HarnessConfig, InstanceOutcome, Kinds, Outcome, TheoremId};
use crate::error::Error;
use crate::formula::{classify_sentence, parse_formula_in, Parsed};
use crate::morphism::{enumerate_homs, HomConstraint, MorphismKind};
use crate::structure::FiniteStructure;
use crate::text::{morphism_from_pairs, parse_pairs, PartialBudget, Workspace};
use crate::theory::{
    companion_check_bounded, diagram, is_jc_bounded, is_pc_within, is_t_complete_pair, jc_characterization_report, kaiser_hull_bounded, models, pc_models, relative_diagram, tu_ti_extremality_check, Answer, Budget, Certificate, DiagramKind, Sentence, Theory, Verdict,
};

/// Version tag of the JSON envelope.
pub const SCHEMA: &str = "posmt/1";

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;
pub const EXIT_UNKNOWN: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "posmt", version, about = "Positive model theory over finite structures")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Input file with signatures, structures, morphisms, theories, problems.
    #[arg(short = 'f', long = "file", global = true)]
    pub files: Vec<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Largest model size quantified over (default 3).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Largest continuation or apex size searched (default 6).
    #[arg(long = "N", global = true)]
    pub big_n: Option<usize>,
    /// Largest number of variables in a conjunctive query (default 3).
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Search node cap (default 1000000).
    #[arg(long = "node-cap", env = "POSMT_NODE_CAP", global = true)]
    pub node_cap: Option<u64>,
    /// Seed for generated instances.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Strong amalgamation identifies only images of one base element.
    #[arg(long = "strict-strong", global = true)]
    pub strict_strong: bool,
}

impl Global {
    fn partial(&self) -> PartialBudget {
        PartialBudget {
            n: self.n,
            big_n: self.big_n,
            k: self.k,
            node_cap: self.node_cap,
        }
    }

    fn budget(&self) -> Budget {
        self.partial().over(Budget::default())
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate every object in the given files.
    Check {
        /// Files to check (in addition to --file).
        paths: Vec<PathBuf>,
    },
    /// Models of a theory with at most n elements, up to isomorphism.
    Models {
        #[arg(long)]
        theory: String,
        /// Only bounded pc models.
        #[arg(long)]
        pc: bool,
    },
    /// Homomorphisms between two structures, with their kinds.
    Homs {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Least kind listed: h, e, i or s.
        #[arg(long, default_value = "h")]
        kind: String,
    },
    /// Kind of a morphism, or class of a sentence.
    Classify {
        #[arg(long)]
        morphism: Option<String>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        /// `a -> b, c -> d`.
        #[arg(long)]
        map: Option<String>,
        /// `<class>: <sentence>` or a plain formula.
        #[arg(long)]
        sentence: Option<String>,
        #[arg(long, default_value = "posets")]
        signature: String,
    },
    /// Whether a structure is a bounded pc model of a theory.
    Pc {
        #[arg(long)]
        structure: String,
        #[arg(long)]
        theory: String,
    },
    /// Bounded joint continuation property of a theory.
    Jc {
        #[arg(long)]
        theory: String,
    },
    /// Whether every pair of models of two theories continues jointly into a model of a third.
    Tcomplete {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        theory: String,
    },
    /// Whether two theories have the same bounded pc models.
    Companion {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// The bounded Kaiser hull of a theory.
    Hull {
        #[arg(long)]
        theory: String,
        /// Report whether this sentence holds in every bounded pc model.
        #[arg(long)]
        sentence: Option<String>,
    },
    /// Solve one amalgamation problem.
    Amalgamate {
        /// A problem declared in a file.
        #[arg(long)]
        problem: Option<String>,
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        #[arg(long, default_value = "h")]
        kinds: String,
        /// `all` or a theory name.
        #[arg(long, default_value = "all")]
        class: String,
        #[arg(long)]
        strong: bool,
        /// Use brute-force enumeration instead of the search.
        #[arg(long)]
        oracle: bool,
    },
    /// Whether a structure is an amalgamation basis, over wings of size at most n.
    Basis {
        #[arg(long)]
        structure: String,
        #[arg(long)]
        kinds: String,
        #[arg(long, default_value = "all")]
        class: String,
        #[arg(long)]
        strong: bool,
    },
    /// Harness run for an amalgamation statement.
    Verify {
        /// si-si-strong, ii-hh-strong, ih-ih-strong, h-strong-pc, inheritance, example-N.
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 50)]
        instances: usize,
        /// Theory of model classes (default T_pos).
        #[arg(long)]
        theory: Option<String>,
        /// Signature of the all-structures class (default posets).
        #[arg(long)]
        signature: Option<String>,
        /// Print every row.
        #[arg(long)]
        rows: bool,
    },
    /// The five equivalent forms of joint continuation, side by side.
    Report {
        #[arg(long)]
        theory: String,
    },
    /// A diagram or bounded sentence set of a structure.
    Diagram {
        #[arg(long)]
        structure: String,
        /// diag, diag-plus, diag-plus-star, tu, ti, tu-star, ti-star, tu-relative, ti-relative.
        #[arg(long)]
        kind: String,
        /// Elements named by relative sets, comma separated.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Minimality and maximality of pc models' bounded theories.
    Extremality {
        #[arg(long)]
        theory: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Models { .. } => "models",
            Command::Homs { .. } => "homs",
            Command::Classify { .. } => "classify",
            Command::Pc { .. } => "pc",
            Command::Jc { .. } => "jc",
            Command::Tcomplete { .. } => "tcomplete",
            Command::Companion { .. } => "companion",
            Command::Hull { .. } => "hull",
            Command::Amalgamate { .. } => "amalgamate",
            Command::Basis { .. } => "basis",
            Command::Verify { .. } => "verify",
            Command::Report { .. } => "report",
            Command::Diagram { .. } => "diagram",
            Command::Extremality { .. } => "extremality",
        }
    }
}

/// Command output: text, JSON payload, and exit code.
struct Report {
    text: String,
    json: Value,
    code: i32,
}

fn code_of(a: Answer) -> i32 {
    match a {
        Answer::Yes => EXIT_YES,
        Answer::No => EXIT_NO,
        Answer::Unknown => EXIT_UNKNOWN,
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        _ if e.is_parse_error() => EXIT_PARSE,
        Error::BudgetExhausted(_) => EXIT_UNKNOWN,
        _ => EXIT_SEMANTIC,
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Parses `args` (including the program name) and runs the command,
/// writing to `out` and `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_YES };
            let text = e.render().to_string();
            let _ = if code == EXIT_YES { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    run_cli(&cli, out, err)
}

pub fn run_cli(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Some(j) = cli.global.jobs {
        // Fails harmlessly if the pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let result = execute(cli);
    match result {
        Ok(r) => {
            let _ = if cli.global.json {
                let env = json!({ "schema": SCHEMA, "command": cli.command.name(), "result": r.json });
                writeln!(out, "{}", serde_json::to_string_pretty(&env).expect("json"))
            } else {
                write!(out, "{}", r.text)
            };
            r.code
        }
        Err(e) => {
            let code = error_code(&e);
            let _ = if cli.global.json {
                let env = json!({ "schema": SCHEMA, "command": cli.command.name(), "error": e.to_string(), "exit": code });
                writeln!(out, "{}", serde_json::to_string_pretty(&env).expect("json"))
            } else {
                writeln!(err, "error: {e}")
            };
            code
        }
    }
}

fn load(g: &Global, extra: &[PathBuf]) -> Result<(Workspace, Vec<crate::text::CheckLine>), Error> {
    let mut ws = Workspace::new();
    let mut files = g.files.clone();
    files.extend(extra.iter().cloned());
    let lines = ws.load_files(&files)?;
    Ok((ws, lines))
}

fn workspace(g: &Global) -> Result<Workspace, Error> {
    let (ws, lines) = load(g, &[])?;
    if let Some(e) = lines.iter().find_map(|l| l.error.clone()) {
        return Err(Error::Semantic(e));
    }
    Ok(ws)
}

/// A theory name, or `<diagram-kind>:<structure>` for a bounded diagram
/// read as a theory.
fn theory(ws: &Workspace, name: &str, b: &Budget) -> Result<Theory, Error> {
    if let Some((kind, s)) = name.split_once(':') {
        let kind = DiagramKind::parse(kind).ok_or_else(|| Error::Semantic(format!("unknown diagram kind `{kind}`")))?;
        let d = diagram(ws.structure(s)?, kind, b)?;
        return d.to_theory(name);
    }
    Ok(ws.theory(name)?.clone())
}

fn class(ws: &Workspace, spec: &str) -> Result<Option<String>, Error> {
    Ok(match spec {
        "all" | "all_structures" => None,
        t => {
            ws.theory(t)?;
            Some(t.to_string())
        }
    })
}

fn kind_arg(s: &str) -> Result<MorphismKind, Error> {
    let mut chars = s.chars();
    match (chars.next().and_then(MorphismKind::from_letter), chars.next()) {
        (Some(k), None) => Ok(k),
        _ => Err(Error::Semantic(format!("unknown kind `{s}`; use h, e, i or s"))),
    }
}

fn render(ws: &Workspace, name: &str, s: &FiniteStructure) -> String {
    ws.render_structure(name, s)
}

fn render_verdict(ws: &Workspace, v: &Verdict) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "{}", v.verdict);
    let _ = writeln!(t, "budget: {}", v.budget);
    match &v.certificate {
        Certificate::None => {}
        Certificate::Model { structure } => {
            let _ = writeln!(t, "model: {}", render(ws, "witness", structure));
        }
        Certificate::Refutation { steps } => {
            let _ = writeln!(t, "refutation: {steps}");
        }
        Certificate::NonImmersion { target, map } => {
            let names: Vec<&str> = map.iter().map(|&e| target.name(e)).collect();
            let _ = writeln!(t, "non-immersion into {}", render(ws, "target", target));
            let _ = writeln!(t, "map: [{}]", names.join(", "));
        }
        Certificate::Exhaustive { instances } => {
            let _ = writeln!(t, "exhaustive: {instances} instances checked");
        }
        Certificate::Pair { left, right, refuted } => {
            let _ = writeln!(t, "left: {}", render(ws, "left", left));
            let _ = writeln!(t, "right: {}", render(ws, "right", right));
            let _ = writeln!(t, "refuted by the chase: {refuted}");
        }
        Certificate::PcModels { left, right } => {
            for (side, ms) in [("left", left), ("right", right)] {
                let _ = writeln!(t, "{side} pc models: {}", ms.len());
                for (i, m) in ms.iter().enumerate() {
                    let _ = writeln!(t, "  {}", render(ws, &format!("{side}{}", i + 1), m));
                }
            }
        }
        Certificate::Extremality { pc_model, model, which } => {
            let _ = writeln!(t, "{which} extremality fails");
            let _ = writeln!(t, "pc model: {}", render(ws, "pc", pc_model));
            let _ = writeln!(t, "model: {}", render(ws, "model", model));
        }
    }
    for n in &v.notes {
        let _ = writeln!(t, "note: {n}");
    }
    t
}

fn verdict_report(ws: &Workspace, v: Verdict) -> Report {
    Report {
        text: render_verdict(ws, &v),
        code: code_of(v.verdict),
        json: to_json(&v),
    }
}

fn list_report(ws: &Workspace, what: &str, prefix: &str, ms: &[FiniteStructure], b: &Budget) -> Report {
    let mut text = format!("{} {what}\n", ms.len());
    for (i, m) in ms.iter().enumerate() {
        let _ = writeln!(text, "{}", render(ws, &format!("{prefix}{}", i + 1), m));
    }
    Report {
        text,
        code: EXIT_YES,
        json: json!({ "budget": b, "count": ms.len(), "structures": ms }),
    }
}

fn outcome_text(ws: &Workspace, p: &AmalgamationProblem, o: &Outcome) -> String {
    match o {
        Outcome::Solved { solution: s } => {
            let mut t = String::from("yes\n");
            let _ = writeln!(t, "budget: {}", p.budget);
            let _ = writeln!(t, "route: {}", s.route);
            let _ = writeln!(t, "apex: {}", render(ws, "apex", &s.apex));
            let names = |m: &[usize], src: &FiniteStructure| -> String {
                m.iter().enumerate().map(|(x, &y)| format!("{} -> {}", src.name(x), s.apex.name(y))).collect::<Vec<_>>().join(", ")
            };
            let _ = writeln!(t, "left out-map ({}): {}", s.out_left_kind.kind(), names(&s.out_left, p.left_wing()));
            let _ = writeln!(t, "right out-map ({}): {}", s.out_right_kind.kind(), names(&s.out_right, p.right_wing()));
            if let Some(d) = s.disjoint {
                let _ = writeln!(t, "disjoint: {d}");
            }
            t
        }
        Outcome::Unsolved { verdict } => render_verdict(ws, verdict),
    }
}

fn execute(cli: &Cli) -> Result<Report, Error> {
    let g = &cli.global;
    let b = g.budget();
    b.validate()?;
    match &cli.command {
        Command::Check { paths } => {
            let (_, lines) = load(g, paths)?;
            let mut text = String::new();
            for l in &lines {
                let _ = writeln!(text, "{l}");
            }
            let bad = lines.iter().filter(|l| l.error.is_some()).count();
            let _ = writeln!(text, "{} objects, {bad} with errors", lines.len());
            Ok(Report {
                text,
                code: if bad == 0 { EXIT_YES } else { EXIT_SEMANTIC },
                json: json!({ "objects": lines, "errors": bad }),
            })
        }
        Command::Models { theory: t, pc } => {
            let ws = workspace(g)?;
            let t = theory(&ws, t, &b)?;
            let ms = if *pc { pc_models(&t, &b)? } else { models(&t, &b)? };
            let what = if *pc { "bounded pc models" } else { "models" };
            Ok(list_report(&ws, what, "m", &ms, &b))
        }
        Command::Homs { from, to, kind } => {
            let ws = workspace(g)?;
            let (a, c) = (ws.structure(from)?, ws.structure(to)?);
            let k = g.k.unwrap_or_else(|| kind_bound(a, c));
            let homs = enumerate_homs(a, c, &HomConstraint::default(), kind_arg(kind)?, k, b.node_cap)?;
            let mut text = format!("{} morphisms from {from} to {to}\n", homs.len());
            let mut rows = Vec::new();
            for (m, cert) in &homs {
                let pairs: Vec<String> = m.map_names().iter().map(|(x, y)| format!("{x} -> {y}")).collect();
                let _ = writeln!(text, "{}  [{}]", pairs.join(", "), cert.kind());
                rows.push(json!({ "map": m.map, "kind": cert.kind(), "certificate": cert }));
            }
            Ok(Report {
                text,
                code: EXIT_YES,
                json: json!({ "k": k, "count": homs.len(), "morphisms": rows }),
            })
        }
        Command::Classify {
            morphism,
            from,
            to,
            map,
            sentence,
            signature,
        } => {
            let ws = workspace(g)?;
            if let Some(text) = sentence {
                let sig = ws.signature(signature)?;
                let parsed = parse_formula_in(text, &sig)?;
                let class = match &parsed {
                    Parsed::Formula(f) => classify_sentence(f),
                    other => match other.to_formula() {
                        Some(f) => classify_sentence(&f),
                        None => return Err(Error::Semantic("terms are not sentences".into())),
                    },
                };
                return Ok(Report {
                    text: format!("{class}\n"),
                    code: EXIT_YES,
                    json: json!({ "class": class.as_str(), "sentence": parsed.to_string() }),
                });
            }
            let m = match (morphism, from, to, map) {
                (Some(name), None, None, None) => ws.morphism(name)?.clone(),
                (None, Some(a), Some(c), Some(pairs)) => morphism_from_pairs(ws.structure(a)?, ws.structure(c)?, &parse_pairs(pairs)?)?,
                _ => return Err(Error::Semantic("give --morphism, or --from, --to and --map, or --sentence".into())),
            };
            let k = g.k.unwrap_or_else(|| kind_bound(&m.source, &m.target));
            let cert = m.certify(k, b.node_cap)?;
            Ok(Report {
                text: format!("{}\n", cert.kind()),
                code: EXIT_YES,
                json: json!({ "k": k, "kind": cert.kind(), "certificate": cert }),
            })
        }
        Command::Pc { structure, theory: t } => {
            let ws = workspace(g)?;
            let t = theory(&ws, t, &b)?;
            Ok(verdict_report(&ws, is_pc_within(ws.structure(structure)?, &t, &b)?))
        }
        Command::Jc { theory: t } => {
            let ws = workspace(g)?;
            let t = theory(&ws, t, &b)?;
            Ok(verdict_report(&ws, is_jc_bounded(&t, &b)?))
        }
        Command::Tcomplete { left, right, theory: t } => {
            let ws = workspace(g)?;
            let (l, r, t) = (theory(&ws, left, &b)?, theory(&ws, right, &b)?, theory(&ws, t, &b)?);
            Ok(verdict_report(&ws, is_t_complete_pair(&l, &r, &t, &b)?))
        }
        Command::Companion { left, right } => {
            let ws = workspace(g)?;
            let (l, r) = (theory(&ws, left, &b)?, theory(&ws, right, &b)?);
            Ok(verdict_report(&ws, companion_check_bounded(&l, &r, &b)?))
        }
        Command::Hull { theory: t, sentence } => {
            let ws = workspace(g)?;
            let t = theory(&ws, t, &b)?;
            let h = kaiser_hull_bounded(&t, &b)?;
            let mut text = String::new();
            let mut code = EXIT_YES;
            let mut member = Value::Null;
            if let Some(s) = sentence {
                let th = Theory::parse("query", t.signature().clone(), s)?;
                let mut all = true;
                for s in th.sentences() {
                    all &= h.contains(s)?;
                }
                let _ = writeln!(text, "{}", if all { "yes" } else { "no" });
                code = if all { EXIT_YES } else { EXIT_NO };
                member = json!(all);
            }
            let _ = writeln!(text, "budget: {}", h.budget);
            let _ = writeln!(text, "bounded pc models: {}", h.pc_models.len());
            let _ = writeln!(text, "hull ({} sentences):", h.hull.len());
            for s in &h.hull {
                let _ = writeln!(text, "  {s};");
            }
            let _ = writeln!(text, "h-universal part ({} sentences):", h.universal.len());
            for s in &h.universal {
                let _ = writeln!(text, "  {s};");
            }
            let text_of = |v: &[Sentence]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
            Ok(Report {
                text,
                code,
                json: json!({
                    "budget": h.budget, "hull": text_of(&h.hull), "universal": text_of(&h.universal),
                    "pc_models": h.pc_models, "contains": member,
                }),
            })
        }
        Command::Amalgamate {
            problem,
            left,
            right,
            kinds,
            class: cls,
            strong,
            oracle,
        } => {
            let ws = workspace(g)?;
            let p = match (problem, left, right) {
                (Some(name), None, None) => {
                    let spec = ws.problem_spec(name)?;
                    let mut spec = spec.clone();
                    spec.budget = g.partial().or(spec.budget);
                    spec.strict |= g.strict_strong;
                    ws.resolve_problem(&spec, Budget::default())?
                }
                (None, Some(l), Some(r)) => {
                    let kinds: Kinds = kinds.parse()?;
                    let class = ws.class(class(&ws, cls)?.as_deref())?;
                    AmalgamationProblem::new(ws.morphism(l)?.clone(), ws.morphism(r)?.clone(), kinds, class, *strong, b)?.with_strict(g.strict_strong)
                }
                _ => return Err(Error::Semantic("give --problem, or --left and --right".into())),
            };
            let out = if *oracle { solve_by_enumeration(&p)? } else { solve(&p)? };
            Ok(Report {
                text: outcome_text(&ws, &p, &out),
                code: code_of(out.answer()),
                json: json!({ "problem": p, "outcome": out }),
            })
        }
        Command::Basis {
            structure,
            kinds,
            class: cls,
            strong,
        } => {
            let ws = workspace(g)?;
            let kinds: Kinds = kinds.parse()?;
            let class = ws.class(class(&ws, cls)?.as_deref())?;
            let r = check_basis(ws.structure(structure)?, kinds, &class, *strong, &b)?;
            let mut text = format!("{}\nbudget: {}\n", r.verdict, r.budget);
            let solved = r.instances.iter().filter(|i| i.verdict == Answer::Yes).count();
            let _ = writeln!(text, "spans: {}, amalgamated: {solved}", r.instances.len());
            for i in r.instances.iter().filter(|i| i.verdict != Answer::Yes) {
                let _ = writeln!(
                    text,
                    "{}: {} via {:?} and {} via {:?}",
                    i.verdict,
                    render(&ws, "left", &r.wings[i.left_wing]),
                    i.left_map,
                    render(&ws, "right", &r.wings[i.right_wing]),
                    i.right_map
                );
            }
            Ok(Report {
                text,
                code: code_of(r.verdict),
                json: to_json(&r),
            })
        }
        Command::Verify {
            theorem,
            instances,
            theory: t,
            signature,
            rows,
        } => {
            let ws = workspace(g)?;
            let id: TheoremId = theorem.parse()?;
            let mut cfg = HarnessConfig::new(id, g.seed, *instances);
            cfg.budget = b;
            cfg.apex_bound = g.big_n;
            cfg.strict = g.strict_strong;
            if let Some(n) = g.n {
                cfg.max_size = n;
            }
            if let Some(t) = t {
                cfg.theory = theory(&ws, t, &b)?;
            }
            if let Some(s) = signature {
                cfg.signature = ws.signature(s)?;
            }
            let r = verify_theorem(&cfg)?;
            let mut text = format!("{}\n", r.answer());
            let _ = writeln!(text, "theorem: {} {} strong={} class={}", r.theorem, r.kinds, r.strong, r.class);
            let apex = g.big_n.map_or("2(|B|+|C|)".to_string(), |n| n.to_string());
            let _ = writeln!(text, "seed: {}  instances: {}  apex bound: {apex}", r.seed, r.total);
            let _ = writeln!(text, "witnessed: {}/{} ({:.1}%)", r.witnessed, r.total, 100.0 * r.rate());
            let _ = writeln!(text, "all witnesses re-verified: {}", r.all_verified());
            for row in &r.rows {
                let show = *rows || row.outcome != InstanceOutcome::Witnessed || !row.verified;
                if !show {
                    continue;
                }
                let status = match (row.outcome, row.exhaustive) {
                    (InstanceOutcome::Witnessed, _) if row.verified => "witnessed".to_string(),
                    (InstanceOutcome::Witnessed, _) => format!("witness rejected: {}", row.error.clone().unwrap_or_default()),
                    (_, true) => "no apex within the bound".to_string(),
                    (_, false) => format!("budget exhausted{}", row.error.as_ref().map(|e| format!(": {e}")).unwrap_or_default()),
                };
                let p = &row.problem;
                let _ = writeln!(
                    text,
                    "#{}: |A|={} |B|={} |C|={} N={}: {status}",
                    row.index,
                    p.base().size(),
                    p.left_wing().size(),
                    p.right_wing().size(),
                    p.budget.big_n
                );
            }
            Ok(Report {
                text,
                code: code_of(r.answer()),
                json: json!({ "answer": r.answer(), "rate": r.rate(), "all_verified": r.all_verified(), "report": r }),
            })
        }
        Command::Report { theory: t } => {
            let ws = workspace(g)?;
            let t = theory(&ws, t, &b)?;
            let r = jc_characterization_report(&t, &b)?;
            let mut text = format!("jc: {}\nbudget: {}\n", r.jc.verdict, r.budget);
            for (i, c) in r.conditions.iter().enumerate() {
                let agree = match r.agreement.get(i) {
                    Some(true) => "agrees",
                    Some(false) => "DISAGREES",
                    None => "-",
                };
                let _ = writeln!(text, "({}) {:<5} {agree:<9} {}", c.index, c.holds, c.statement);
            }
            let code = if r.jc.verdict == Answer::Unknown {
                EXIT_UNKNOWN
            } else if r.all_agree() {
                EXIT_YES
            } else {
                EXIT_NO
            };
            Ok(Report { text, code, json: to_json(&r) })
        }
        Command::Diagram { structure, kind, subset } => {
            let ws = workspace(g)?;
            let s = ws.structure(structure)?;
            let kind = DiagramKind::parse(kind).ok_or_else(|| Error::Semantic(format!("unknown diagram kind `{kind}`")))?;
            let d = match subset {
                None => diagram(s, kind, &b)?,
                Some(list) => {
                    let mut set = BTreeSet::new();
                    for name in list.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                        set.insert(s.element(name).ok_or_else(|| Error::Semantic(format!("unknown element `{name}`")))?);
                    }
                    relative_diagram(s, kind, &set, &b)?
                }
            };
            let mut text = format!("{} ({} sentences)\n", d.kind, d.len());
            for sentence in &d.sentences {
                let _ = writeln!(text, "  {sentence};");
            }
            let lines: Vec<String> = d.sentences.iter().map(|s| s.to_string()).collect();
            Ok(Report {
                text,
                code: EXIT_YES,
                json: json!({ "kind": d.kind.as_str(), "bound": d.bound, "signature": d.signature, "sentences": lines }),
            })
        }
        Command::Extremality { theory: t } => {
            let ws = workspace(g)?;
            let t = theory(&ws, t, &b)?;
            Ok(verdict_report(&ws, tu_ti_extremality_check(&t, &b)?))
        }
    }
}
