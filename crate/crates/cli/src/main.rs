//! Command-line front end for the type-system toolkit. Every subcommand is
//! a thin adapter over the library: it parses inputs, calls one library
//! entry point, and prints the result as text or JSON.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use vtypes::address::Address;
use vtypes::census;
use vtypes::classify::{classify, tail_points, type_graph, Classification};
use vtypes::diagram::{
    is_simple, parse_diagram, quotient_by_pair, reduce, validate, LabelDiagram, TypeSystem,
};
use vtypes::element::PrefixMap;
use vtypes::family::{
    family_type_of, identification_witness, truncated_diagram, IncreasingSeq, Tail,
};
use vtypes::membership::{
    in_fix, in_stab, induced_class_permutation, witness_conjugator, MembershipError,
};
use vtypes::semigroup::{semigroup_info, SemigroupInfo};

#[derive(Parser)]
#[command(name = "vtypes")]
#[command(
    about = "Type systems on binary addresses and the subgroups of Thompson's group V that preserve them"
)]
#[command(version)]
struct Cli {
    /// Emit a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Fix the seed for sampled outputs (reserved; the current subcommands
    /// are deterministic)
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a label diagram file is well formed and reduced
    Validate {
        /// Path to the .lts diagram file
        file: PathBuf,
    },

    /// Merge labels that agree on all but finitely many addresses
    Reduce {
        /// Path to the .lts diagram file (need not be reduced)
        file: PathBuf,
    },

    /// Print the label at one address
    Type {
        /// Path to the .lts diagram file
        file: PathBuf,
        /// Address as a {0,1}-string, or "e" for the empty address
        addr: String,
    },

    /// Long-run shape: nuclei, eventual labels, stable depth, tail points
    Classify {
        /// Path to the .lts diagram file
        file: PathBuf,
    },

    /// Decide whether the system has a proper nontrivial quotient
    Simple {
        /// Path to the .lts diagram file
        file: PathBuf,
    },

    /// Type semigroup invariants of each nucleus
    Semigroup {
        /// Path to the .lts diagram file
        file: PathBuf,
    },

    /// Test an element for type preservation and partition stabilization
    Member {
        /// Path to the .lts diagram file
        file: PathBuf,
        /// Path to the element file (.vel)
        #[arg(long, value_name = "ELT.vel")]
        element: PathBuf,
        /// Report only the type-preservation verdict
        #[arg(long, conflicts_with = "stab")]
        fix: bool,
        /// Report only the stabilization verdict
        #[arg(long)]
        stab: bool,
    },

    /// Build a type-preserving element with two prescribed cone images
    Witness {
        /// Path to the .lts diagram file
        file: PathBuf,
        /// First source cone
        alpha: String,
        /// Image of the first cone
        alpha_to: String,
        /// Second source cone
        beta: String,
        /// Image of the second cone
        beta_to: String,
        /// Search budget: maximum subdivision count
        #[arg(long, default_value_t = 24)]
        max_carets: usize,
    },

    /// Merge two named labels and close under the child maps
    Quotient {
        /// Path to the .lts diagram file
        file: PathBuf,
        /// First label name
        p: String,
        /// Second label name
        q: String,
    },

    /// Enumerate all systems with up to N labels
    Enumerate {
        /// Largest label count to include (1..=7)
        #[arg(long, value_name = "N")]
        max_labels: usize,
        /// Restrict the CSV rows to simple systems
        #[arg(long)]
        simple_only: bool,
        /// Write the full table to this CSV file
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },

    /// The infinite label family driven by an increasing integer sequence
    Family {
        /// Comma-separated sequence prefix, e.g. 1,2,3,4
        #[arg(long, value_name = "A0,A1,...")]
        seq: String,
        /// Continue the prefix arithmetically with this step
        #[arg(long, value_name = "C")]
        tail_step: Option<u64>,
        #[command(subcommand)]
        action: FamilyAction,
    },

    /// Print the child structure of a diagram
    Graph {
        /// Path to the .lts diagram file
        file: PathBuf,
        /// Emit Graphviz DOT instead of text
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand)]
enum FamilyAction {
    /// The family index reached from the root along an address
    Type {
        /// Address as a {0,1}-string, or "e"
        addr: String,
    },
    /// The common suffix collapsing indices i and j to 0 and k
    Witness { i: u64, j: u64, k: u64 },
    /// Graphviz DOT of the family truncated at a depth
    Dot { depth: usize },
}

/// Failures that terminate a subcommand: bad input (exit 2) or an honest
/// search giving up within its budget (exit 3).
enum Failure {
    Input(String),
    Exhausted(String),
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Failure {
        Failure::Input(e.to_string())
    }
}

impl From<MembershipError> for Failure {
    fn from(e: MembershipError) -> Failure {
        match e {
            MembershipError::SearchExhausted { .. } => Failure::Exhausted(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<vtypes::family::FamilyError> for Failure {
    fn from(e: vtypes::family::FamilyError) -> Failure {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    // Die silently on a closed pipe (e.g. `vtypes enumerate ... | head`)
    // instead of panicking mid-write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Exhausted(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Parses a diagram file; warnings (pruned unreachable labels) go to stderr.
fn load_diagram(path: &PathBuf) -> Result<LabelDiagram, Failure> {
    let text = read_file(path)?;
    let (diagram, warnings) = parse_diagram(&text).map_err(Failure::input)?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok(diagram)
}

fn load_system(path: &PathBuf) -> Result<TypeSystem, Failure> {
    validate(load_diagram(path)?).map_err(Failure::input)
}

fn parse_addr(s: &str) -> Result<Address, Failure> {
    s.parse().map_err(Failure::input)
}

fn big_to_json(b: &BigInt) -> Value {
    match i64::try_from(b) {
        Ok(v) => json!(v),
        Err(_) => json!(b.to_string()),
    }
}

fn report(command: &str) -> serde_json::Map<String, Value> {
    let mut map = serde_json::Map::new();
    map.insert("command".into(), json!(command));
    map.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    map
}

fn emit(map: serde_json::Map<String, Value>) {
    println!(
        "{}",
        serde_json::to_string_pretty(&Value::Object(map)).expect("report serializes")
    );
}

fn name_list(t: &TypeSystem, labels: &[usize]) -> Vec<String> {
    labels.iter().map(|&v| t.name(v).to_string()).collect()
}

fn brace_set(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json_mode = cli.json;
    // Reserved for sampled outputs; every current subcommand is
    // deterministic, so the seed has nothing to steer yet.
    let _ = cli.seed;
    match cli.command {
        Command::Validate { file } => cmd_validate(&file, json_mode),
        Command::Reduce { file } => cmd_reduce(&file, json_mode),
        Command::Type { file, addr } => cmd_type(&file, &addr, json_mode),
        Command::Classify { file } => cmd_classify(&file, json_mode),
        Command::Simple { file } => cmd_simple(&file, json_mode),
        Command::Semigroup { file } => cmd_semigroup(&file, json_mode),
        Command::Member {
            file,
            element,
            fix,
            stab,
        } => cmd_member(&file, &element, fix, stab, json_mode),
        Command::Witness {
            file,
            alpha,
            alpha_to,
            beta,
            beta_to,
            max_carets,
        } => cmd_witness(
            &file,
            [&alpha, &alpha_to, &beta, &beta_to],
            max_carets,
            json_mode,
        ),
        Command::Quotient { file, p, q } => cmd_quotient(&file, &p, &q, json_mode),
        Command::Enumerate {
            max_labels,
            simple_only,
            csv,
        } => cmd_enumerate(max_labels, simple_only, csv.as_ref(), json_mode),
        Command::Family {
            seq,
            tail_step,
            action,
        } => cmd_family(&seq, tail_step, &action, json_mode),
        Command::Graph { file, dot } => cmd_graph(&file, dot, json_mode),
    }
}

fn cmd_validate(file: &PathBuf, json_mode: bool) -> Result<(), Failure> {
    let diagram = load_diagram(file)?;
    let mut out = report("validate");
    match validate(diagram) {
        Ok(t) => {
            out.insert("valid".into(), json!(true));
            out.insert("labels".into(), json!(t.len()));
            out.insert("root".into(), json!(t.name(t.root())));
            out.insert("canonical_form".into(), json!(t.diagram().canonical_key()));
            if json_mode {
                emit(out);
            } else {
                println!("valid: {} labels, root {}", t.len(), t.name(t.root()));
            }
        }
        Err(e) => {
            out.insert("valid".into(), json!(false));
            out.insert("reason".into(), json!(e.to_string()));
            if json_mode {
                emit(out);
            } else {
                println!("invalid: {e}");
            }
        }
    }
    Ok(())
}

fn cmd_reduce(file: &PathBuf, json_mode: bool) -> Result<(), Failure> {
    let diagram = load_diagram(file)?;
    let (t, partition) = reduce(&diagram);
    let merged: Vec<Vec<String>> = partition
        .named(&diagram)
        .into_iter()
        .filter(|b| b.len() > 1)
        .collect();
    if json_mode {
        let mut out = report("reduce");
        out.insert("labels_before".into(), json!(diagram.len()));
        out.insert("labels_after".into(), json!(t.len()));
        out.insert("merged".into(), json!(merged));
        out.insert("lts".into(), json!(t.diagram().to_lts()));
        emit(out);
    } else {
        for block in &merged {
            println!("# merged: {}", brace_set(block));
        }
        print!("{}", t.diagram().to_lts());
    }
    Ok(())
}

fn cmd_type(file: &PathBuf, addr: &str, json_mode: bool) -> Result<(), Failure> {
    let t = load_system(file)?;
    let a = parse_addr(addr)?;
    let label = t.type_of(&a);
    if json_mode {
        let mut out = report("type");
        out.insert("address".into(), json!(a.to_string()));
        out.insert("label".into(), json!(t.name(label)));
        emit(out);
    } else {
        println!("{}", t.name(label));
    }
    Ok(())
}

fn classification_json(t: &TypeSystem, c: &Classification) -> serde_json::Map<String, Value> {
    let mut out = report("classify");
    out.insert("kind".into(), json!(c.kind.to_string()));
    out.insert(
        "nuclei".into(),
        json!(c.nuclei.iter().map(|n| name_list(t, n)).collect::<Vec<_>>()),
    );
    out.insert("eventual".into(), json!(name_list(t, &c.eventual)));
    out.insert("t".into(), json!(c.threshold));
    out.insert("stable_depth".into(), json!(c.stable_depth));
    let tails = tail_points(t, c)
        .ok()
        .map(|ps| ps.iter().map(ToString::to_string).collect::<Vec<_>>());
    out.insert("tail_points".into(), json!(tails));
    if let Some(parts) = &c.quasi {
        out.insert(
            "transient".into(),
            json!({
                "q": name_list(t, &parts.q),
                "r": t.name(parts.r),
                "q_dagger": name_list(t, &parts.q_dagger),
            }),
        );
    }
    out
}

fn cmd_classify(file: &PathBuf, json_mode: bool) -> Result<(), Failure> {
    let t = load_system(file)?;
    let c = classify(&t);
    if json_mode {
        emit(classification_json(&t, &c));
        return Ok(());
    }
    println!("kind: {}", c.kind);
    println!(
        "nuclei: {}",
        c.nuclei
            .iter()
            .map(|n| brace_set(&name_list(&t, n)))
            .collect::<Vec<_>>()
            .join(", ")
    );
    println!("eventual: {}", brace_set(&name_list(&t, &c.eventual)));
    println!("threshold: {}", c.threshold);
    match c.stable_depth {
        Some(d) => println!("stable depth: {d}"),
        None => println!("stable depth: n/a"),
    }
    if let Some(parts) = &c.quasi {
        println!("transient core: {}", brace_set(&name_list(&t, &parts.q)));
        println!(
            "doubly transient: {}",
            brace_set(&name_list(&t, &parts.q_dagger))
        );
    }
    if let Ok(points) = tail_points(&t, &c) {
        let shown: Vec<String> = points.iter().map(ToString::to_string).collect();
        println!("tail points: {}", shown.join(", "));
    }
    Ok(())
}

fn cmd_simple(file: &PathBuf, json_mode: bool) -> Result<(), Failure> {
    let t = load_system(file)?;
    let check = is_simple(&t).map_err(Failure::input)?;
    if json_mode {
        let mut out = report("simple");
        out.insert("simple".into(), json!(check.simple));
        let witness = check.witness.as_ref().map(|w| {
            json!({
                "merged_pair": [w.merged_pair.0, w.merged_pair.1],
                "blocks": w.partition.named(t.diagram()),
                "quotient_labels": w.quotient.len(),
            })
        });
        out.insert("witness".into(), json!(witness));
        emit(out);
        return Ok(());
    }
    match &check.witness {
        None => println!("simple: yes"),
        Some(w) => {
            println!("simple: no");
            println!(
                "witness: merging {{{}, {}}} yields a proper quotient with {} labels",
                w.merged_pair.0,
                w.merged_pair.1,
                w.quotient.len()
            );
        }
    }
    Ok(())
}

fn semigroup_block(info: &SemigroupInfo) -> serde_json::Map<String, Value> {
    let mut out = serde_json::Map::new();
    out.insert("nucleus".into(), json!(info.nucleus));
    out.insert(
        "invariant_factors".into(),
        Value::Array(info.invariant_factors.iter().map(big_to_json).collect()),
    );
    out.insert("free_rank".into(), json!(info.free_rank));
    out.insert("h1_rank".into(), json!(info.h1_rank));
    out.insert("det".into(), big_to_json(&info.det));
    out.insert(
        "abelianization".into(),
        json!(info.abelianization.to_string()),
    );
    out.insert("fix_simple".into(), json!(info.fix_simple));
    out.insert(
        "fix_virtually_simple".into(),
        json!(info.fix_virtually_simple),
    );
    out
}

fn print_semigroup_block(info: &SemigroupInfo) {
    println!("nucleus: {}", brace_set(&info.nucleus));
    let factors: Vec<String> = info
        .invariant_factors
        .iter()
        .map(ToString::to_string)
        .collect();
    println!("invariant factors: [{}]", factors.join(", "));
    println!("free rank: {}", info.free_rank);
    println!("h1 rank: {}", info.h1_rank);
    println!("det(I - A): {}", info.det);
    println!("abelianization: {}", info.abelianization);
    println!("fix simple: {}", info.fix_simple);
    println!("fix virtually simple: {}", info.fix_virtually_simple);
}

fn cmd_semigroup(file: &PathBuf, json_mode: bool) -> Result<(), Failure> {
    let t = load_system(file)?;
    let c = classify(&t);
    let infos = semigroup_info(&t, &c).map_err(|_| {
        Failure::Input(format!(
            "semigroup invariants need a nuclear or multinuclear system, got {}",
            c.kind
        ))
    })?;
    if json_mode {
        if let [info] = infos.as_slice() {
            let mut out = report("semigroup");
            out.extend(semigroup_block(info));
            emit(out);
        } else {
            let mut out = report("semigroup");
            out.insert(
                "nuclei".into(),
                Value::Array(
                    infos
                        .iter()
                        .map(|i| Value::Object(semigroup_block(i)))
                        .collect(),
                ),
            );
            emit(out);
        }
        return Ok(());
    }
    for (i, info) in infos.iter().enumerate() {
        if i > 0 {
            println!();
        }
        print_semigroup_block(info);
    }
    Ok(())
}

fn cmd_member(
    file: &PathBuf,
    element: &PathBuf,
    fix_only: bool,
    stab_only: bool,
    json_mode: bool,
) -> Result<(), Failure> {
    let t = load_system(file)?;
    let g = PrefixMap::parse(&read_file(element)?).map_err(Failure::input)?;
    let mut out = report("member");
    let mut lines = Vec::new();
    if !stab_only {
        let verdict = in_fix(&t, &g);
        out.insert("fix".into(), json!(verdict));
        lines.push(format!("fix: {}", if verdict { "yes" } else { "no" }));
    }
    if !fix_only {
        let (verdict, relation) = in_stab(&t, &g);
        out.insert("stab".into(), json!(verdict));
        out.insert(
            "relation".into(),
            json!(relation
                .named(&t)
                .into_iter()
                .map(|(p, q)| [p, q])
                .collect::<Vec<_>>()),
        );
        lines.push(format!("stab: {}", if verdict { "yes" } else { "no" }));
        if verdict {
            let perm = induced_class_permutation(&t, &g)?;
            let named: Vec<[String; 2]> = perm
                .iter()
                .map(|&(p, q)| [t.name(p).to_string(), t.name(q).to_string()])
                .collect();
            let moved: Vec<String> = named
                .iter()
                .filter(|[p, q]| p != q)
                .map(|[p, q]| format!("{p}->{q}"))
                .collect();
            lines.push(if moved.is_empty() {
                "class permutation: identity".to_string()
            } else {
                format!("class permutation: {}", moved.join(", "))
            });
            out.insert("class_permutation".into(), json!(named));
        } else {
            out.insert("class_permutation".into(), Value::Null);
        }
    }
    if json_mode {
        emit(out);
    } else {
        for line in lines {
            println!("{line}");
        }
    }
    Ok(())
}

fn cmd_witness(
    file: &PathBuf,
    addrs: [&str; 4],
    max_carets: usize,
    json_mode: bool,
) -> Result<(), Failure> {
    let t = load_system(file)?;
    let c = classify(&t);
    let [alpha, alpha_to, beta, beta_to] = addrs;
    let g = witness_conjugator(
        &t,
        &c,
        &parse_addr(alpha)?,
        &parse_addr(alpha_to)?,
        &parse_addr(beta)?,
        &parse_addr(beta_to)?,
        max_carets,
    )?;
    if json_mode {
        let mut out = report("witness");
        out.insert("element".into(), json!(g.to_string()));
        out.insert(
            "pairs".into(),
            json!(g
                .pairs()
                .iter()
                .map(|(d, r)| [d.to_string(), r.to_string()])
                .collect::<Vec<_>>()),
        );
        emit(out);
    } else {
        print!("{g}");
    }
    Ok(())
}

fn cmd_quotient(file: &PathBuf, p: &str, q: &str, json_mode: bool) -> Result<(), Failure> {
    let t = load_system(file)?;
    let find = |name: &str| {
        t.diagram()
            .label_by_name(name)
            .ok_or_else(|| Failure::Input(format!("no label named {name:?}")))
    };
    let (quotient, partition) = quotient_by_pair(&t, find(p)?, find(q)?);
    let merged: Vec<Vec<String>> = partition
        .named(t.diagram())
        .into_iter()
        .filter(|b| b.len() > 1)
        .collect();
    if json_mode {
        let mut out = report("quotient");
        out.insert("labels_before".into(), json!(t.len()));
        out.insert("labels_after".into(), json!(quotient.len()));
        out.insert("merged".into(), json!(merged));
        out.insert("proper".into(), json!(quotient.len() > 1));
        out.insert("lts".into(), json!(quotient.diagram().to_lts()));
        emit(out);
    } else {
        for block in &merged {
            println!("# merged: {}", brace_set(block));
        }
        print!("{}", quotient.diagram().to_lts());
    }
    Ok(())
}

fn cmd_enumerate(
    max_labels: usize,
    simple_only: bool,
    csv: Option<&PathBuf>,
    json_mode: bool,
) -> Result<(), Failure> {
    if !(1..=census::MAX_LABELS).contains(&max_labels) {
        return Err(Failure::Input(format!(
            "--max-labels must be between 1 and {}, got {max_labels}",
            census::MAX_LABELS
        )));
    }
    let rows = census::census(max_labels);
    let mut by_kind: std::collections::BTreeMap<String, usize> = Default::default();
    let mut by_labels: std::collections::BTreeMap<usize, usize> = Default::default();
    let mut simple = 0usize;
    for r in &rows {
        *by_kind.entry(r.kind.to_string()).or_insert(0) += 1;
        *by_labels.entry(r.labels).or_insert(0) += 1;
        simple += usize::from(r.simple);
    }
    let written = if let Some(path) = csv {
        let selected: Vec<_> = rows
            .iter()
            .filter(|r| !simple_only || r.simple)
            .cloned()
            .collect();
        fs::write(path, census::to_csv(&selected))
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        Some(selected.len())
    } else {
        None
    };
    if json_mode {
        let mut out = report("enumerate");
        out.insert("max_labels".into(), json!(max_labels));
        out.insert("total".into(), json!(rows.len()));
        out.insert("simple".into(), json!(simple));
        out.insert("by_kind".into(), json!(by_kind));
        out.insert(
            "by_labels".into(),
            json!(by_labels
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect::<std::collections::BTreeMap<_, _>>()),
        );
        out.insert("csv_rows".into(), json!(written));
        emit(out);
    } else {
        println!("systems with <= {max_labels} labels: {}", rows.len());
        println!("simple: {simple}");
        let kinds: Vec<String> = by_kind.iter().map(|(k, v)| format!("{k}: {v}")).collect();
        println!("kinds: {}", kinds.join(", "));
        if let Some(n) = written {
            println!("csv rows written: {n}");
        }
    }
    Ok(())
}

fn parse_seq(seq: &str, tail_step: Option<u64>) -> Result<IncreasingSeq, Failure> {
    let values = seq
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|e| Failure::Input(format!("bad sequence value {:?}: {e}", part.trim())))
        })
        .collect::<Result<Vec<u64>, Failure>>()?;
    let tail = match tail_step {
        Some(step) => Tail::Arithmetic { step },
        None => Tail::Explicit,
    };
    IncreasingSeq::new(values, tail).map_err(Failure::input)
}

fn cmd_family(
    seq: &str,
    tail_step: Option<u64>,
    action: &FamilyAction,
    json_mode: bool,
) -> Result<(), Failure> {
    let a = parse_seq(seq, tail_step)?;
    match action {
        FamilyAction::Type { addr } => {
            let address = parse_addr(addr)?;
            let index = family_type_of(&a, &address)?;
            if json_mode {
                let mut out = report("family type");
                out.insert("address".into(), json!(address.to_string()));
                out.insert("index".into(), json!(index));
                emit(out);
            } else {
                println!("{index}");
            }
        }
        FamilyAction::Witness { i, j, k } => {
            let w = identification_witness(&a, *i, *j, *k)?;
            if json_mode {
                let mut out = report("family witness");
                out.insert("m".into(), json!(w.m));
                out.insert("r".into(), json!(w.r));
                out.insert("i_end".into(), json!(w.i_end));
                out.insert("j_end".into(), json!(w.j_end));
                out.insert("address".into(), json!(w.address().to_string()));
                out.insert("trace".into(), json!(w.trace));
                emit(out);
            } else {
                println!("m: {}", w.m);
                println!("r: {}", w.r);
                println!("address: {}", w.address());
                let steps: Vec<String> =
                    w.trace.iter().map(|(x, y)| format!("({x},{y})")).collect();
                println!("trace: {}", steps.join(" "));
            }
        }
        FamilyAction::Dot { depth } => {
            let truncated = truncated_diagram(&a, *depth)?;
            if json_mode {
                let mut out = report("family dot");
                out.insert("nodes".into(), json!(truncated.nodes));
                out.insert("open".into(), json!(truncated.open));
                out.insert(
                    "edges".into(),
                    json!(truncated
                        .edges
                        .iter()
                        .map(|&(f, b, t)| json!([f, b, t]))
                        .collect::<Vec<_>>()),
                );
                out.insert("dot".into(), json!(truncated.to_dot()));
                emit(out);
            } else {
                print!("{}", truncated.to_dot());
            }
        }
    }
    Ok(())
}

fn cmd_graph(file: &PathBuf, dot: bool, json_mode: bool) -> Result<(), Failure> {
    let t = load_system(file)?;
    let graph = type_graph(&t);
    if json_mode {
        let mut out = report("graph");
        out.insert("lts".into(), json!(t.diagram().to_lts()));
        out.insert("dot".into(), json!(graph.to_dot()));
        emit(out);
    } else if dot {
        print!("{}", graph.to_dot());
    } else {
        print!("{}", t.diagram().to_lts());
    }
    Ok(())
}
