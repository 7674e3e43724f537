use std::fmt::Display;
use std::io::Write;
use std::path::Path as FsPath;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use stonedual::duality::{classify_symmetric, duality_roundtrip, ideal_correspondence, ultrafilter_groupoid};
use stonedual::filtercomp::{booleanization_report, distributive_completion};
use stonedual::finitesgp::{is_congruence_free, is_zero_simplifying, parse_raw, tightly_closed_ideals, MulTable};
use stonedual::graphisg::{semilattice_predicates, GraphInverseSemigroup};
use stonedual::polycyclic::{ExtPolyElement, ExtPolycyclic, PolyElement, Polycyclic};
use stonedual::thompson::{
    tp_eq, tp_from_unit, tp_inv, tp_mul, tp_reduce, tp_to_unit, CuntzElement, Params, TreePair,
};
use stonedual::words::{
    is_maximal_prefix_code, is_rooted_maximal_prefix_code, kraft_sum, parse_rooted, Alphabet, DirectedGraph,
};
use stonedual::{Error, Result};
use stonedual_cli::{corpus, selftest};

/// Exact computations with inverse semigroups, their completions and their
/// groupoids.
#[derive(Parser)]
#[command(name = "stonedual", version)]
struct Cli {
    /// Emit one JSON record per result instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Arithmetic in the polycyclic monoids P_n and P_{n,r}.
    Poly {
        #[command(subcommand)]
        op: PolyOp,
    },
    /// Maximal prefix codes.
    Mpc {
        #[command(subcommand)]
        op: MpcOp,
    },
    /// Graph inverse semigroups; GRAPH is a file of `vertex`/`edge` lines.
    Graph {
        #[command(subcommand)]
        op: GraphOp,
    },
    /// Finite inverse semigroups given by tables. TABLE is a file, or `@name`
    /// for a built-in table such as `@i3`.
    Finite {
        #[command(subcommand)]
        op: FiniteOp,
    },
    /// Tree pairs in the Thompson-Higman groups G_{n,r}.
    Thompson {
        #[command(subcommand)]
        op: ThompsonOp,
    },
    /// Run a self-test suite, or `all`.
    Selftest {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instance count for randomized suites.
        #[arg(long)]
        count: Option<usize>,
    },
}

#[derive(Args, Clone, Copy)]
struct Rank {
    /// Alphabet size.
    #[arg(short = 'n')]
    n: usize,
    /// Number of roots; elements are written (i|y,x|j) when above 1.
    #[arg(short = 'r', default_value_t = 1)]
    r: usize,
}

#[derive(Subcommand)]
enum PolyOp {
    /// Product of two or more elements.
    Mul {
        #[command(flatten)]
        rank: Rank,
        #[arg(required = true, num_args = 2.., allow_hyphen_values = true)]
        elements: Vec<String>,
    },
    /// Meet in the natural partial order.
    Meet {
        #[command(flatten)]
        rank: Rank,
        a: String,
        b: String,
    },
    /// Natural partial order a <= b.
    Leq {
        #[command(flatten)]
        rank: Rank,
        a: String,
        b: String,
    },
    /// Whether a -> {targets}.
    Arrow {
        #[command(flatten)]
        rank: Rank,
        a: String,
        targets: Vec<String>,
    },
}

#[derive(Subcommand)]
enum MpcOp {
    /// Whether a comma separated code is a maximal prefix code.
    Check {
        #[command(flatten)]
        rank: Rank,
        code: String,
    },
    /// The Kraft sum of a prefix code.
    Kraft {
        #[command(flatten)]
        rank: Rank,
        code: String,
    },
}

#[derive(Subcommand)]
enum GraphOp {
    /// Semilattice predicates of the graph inverse semigroup.
    Analyze { graph: String },
    /// Product of two `u/v` elements.
    Mul { graph: String, a: String, b: String },
    /// Whether a -> {targets}.
    Arrow { graph: String, a: String, targets: Vec<String> },
}

#[derive(Subcommand)]
enum FiniteOp {
    /// Check that the table is an inverse semigroup with zero.
    Validate { table: String },
    /// Structural predicates (Boolean, fundamental, E*-unitary, ...).
    Predicates { table: String },
    /// Whether the only congruences are equality and the universal one.
    Congfree { table: String },
    /// Whether the only tightly closed ideals are {0} and S.
    Simplifying { table: String },
    /// The distributive completion D(S) and the Booleanization report.
    Complete { table: String },
    /// The ultrafilter groupoid G(S) and, when S is Boolean, S ≅ B(G(S)).
    Dualize { table: String },
    /// Recognise the symmetric inverse monoids.
    Classify { table: String },
    /// Tightly closed ideals, matched with unions of connected components.
    Ideals { table: String },
    /// Print a built-in table.
    Gen { name: String },
}

#[derive(Subcommand)]
enum ThompsonOp {
    /// Product g·h, acting as h first.
    Mul {
        #[command(flatten)]
        rank: Rank,
        g: String,
        h: String,
    },
    /// Inverse tree pair.
    Inv {
        #[command(flatten)]
        rank: Rank,
        g: String,
    },
    /// The reduced tree pair.
    Reduce {
        #[command(flatten)]
        rank: Rank,
        g: String,
    },
    /// Whether two tree pairs define the same element.
    Eq {
        #[command(flatten)]
        rank: Rank,
        g: String,
        h: String,
    },
    /// Tree pair of a unit of C_{n,r}, written as `;`-separated parts.
    Fromunit {
        #[command(flatten)]
        rank: Rank,
        x: String,
    },
    /// Unit of C_{n,r} of a tree pair.
    Tounit {
        #[command(flatten)]
        rank: Rank,
        g: String,
    },
}

struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, op: &str, text: impl Display, value: Value) {
        if self.json {
            let mut record = json!({ "op": op });
            match value {
                Value::Object(map) => record.as_object_mut().unwrap().extend(map),
                other => {
                    record["result"] = other;
                }
            }
            let _ = writeln!(std::io::stdout().lock(), "{record}");
        } else {
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out { json: cli.json };
    let result = match cli.command {
        Command::Poly { op } => poly(&out, op),
        Command::Mpc { op } => mpc(&out, op),
        Command::Graph { op } => graph(&out, op),
        Command::Finite { op } => finite(&out, op),
        Command::Thompson { op } => thompson(&out, op),
        Command::Selftest { suite, seed, count } => return run_selftest(&out, &suite, seed, count),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn poly(out: &Out, op: PolyOp) -> Result<()> {
    let rank = match &op {
        PolyOp::Mul { rank, .. } | PolyOp::Meet { rank, .. } | PolyOp::Leq { rank, .. } | PolyOp::Arrow { rank, .. } => {
            *rank
        }
    };
    if rank.r == 1 {
        let p = Polycyclic::new(rank.n)?;
        let parse = |s: &str| p.parse(s);
        match op {
            PolyOp::Mul { elements, .. } => {
                let mut acc = PolyElement::one();
                for e in &elements {
                    acc = acc.mul(&parse(e)?);
                }
                let s = p.format(&acc);
                out.emit("poly.mul", &s, Value::String(s.clone()));
            }
            PolyOp::Meet { a, b, .. } => {
                let s = p.format(&parse(&a)?.meet(&parse(&b)?));
                out.emit("poly.meet", &s, Value::String(s.clone()));
            }
            PolyOp::Leq { a, b, .. } => {
                let v = parse(&a)?.leq(&parse(&b)?);
                out.emit("poly.leq", v, Value::Bool(v));
            }
            PolyOp::Arrow { a, targets, .. } => {
                let t: Vec<PolyElement> = targets.iter().map(|s| parse(s)).collect::<Result<_>>()?;
                let v = p.lenz_arrow(&parse(&a)?, &t)?;
                out.emit("poly.arrow", v, Value::Bool(v));
            }
        }
    } else {
        let p = ExtPolycyclic::new(rank.n, rank.r)?;
        let parse = |s: &str| p.parse(s);
        match op {
            PolyOp::Mul { elements, .. } => {
                let mut acc = parse(&elements[0])?;
                for e in &elements[1..] {
                    acc = acc.mul(&parse(e)?);
                }
                let s = p.format(&acc);
                out.emit("poly.mul", &s, Value::String(s.clone()));
            }
            PolyOp::Meet { a, b, .. } => {
                let s = p.format(&parse(&a)?.meet(&parse(&b)?));
                out.emit("poly.meet", &s, Value::String(s.clone()));
            }
            PolyOp::Leq { a, b, .. } => {
                let v = parse(&a)?.leq(&parse(&b)?);
                out.emit("poly.leq", v, Value::Bool(v));
            }
            PolyOp::Arrow { a, targets, .. } => {
                let t: Vec<ExtPolyElement> = targets.iter().map(|s| parse(s)).collect::<Result<_>>()?;
                let v = p.lenz_arrow(&parse(&a)?, &t)?;
                out.emit("poly.arrow", v, Value::Bool(v));
            }
        }
    }
    Ok(())
}

fn mpc(out: &Out, op: MpcOp) -> Result<()> {
    match op {
        MpcOp::Check { rank, code } => {
            let alphabet = Alphabet::new(rank.n)?;
            let v = if rank.r == 1 {
                is_maximal_prefix_code(&alphabet, &alphabet.parse_code(&code)?)?
            } else {
                let words = split_code(&code)
                    .iter()
                    .map(|w| parse_rooted(&alphabet, rank.r, w))
                    .collect::<Result<Vec<_>>>()?;
                is_rooted_maximal_prefix_code(&alphabet, rank.r, &words)?
            };
            out.emit("mpc.check", format!("maximal prefix code: {v}"), Value::Bool(v));
        }
        MpcOp::Kraft { rank, code } => {
            let alphabet = Alphabet::new(rank.n)?;
            let words = alphabet.parse_code(&code)?;
            let k = kraft_sum(&alphabet, &words)?;
            out.emit("mpc.kraft", format!("kraft sum: {k}"), Value::String(k.to_string()));
        }
    }
    Ok(())
}

fn split_code(code: &str) -> Vec<String> {
    let code = code.trim();
    let code = code.strip_prefix('{').and_then(|c| c.strip_suffix('}')).unwrap_or(code);
    code.split(',').map(|w| w.trim().to_string()).collect()
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!("cannot read `{path}`: {e}")))
}

fn graph(out: &Out, op: GraphOp) -> Result<()> {
    let path = match &op {
        GraphOp::Analyze { graph } | GraphOp::Mul { graph, .. } | GraphOp::Arrow { graph, .. } => graph.clone(),
    };
    let g = DirectedGraph::parse(&read_file(&path)?)?;
    let p = GraphInverseSemigroup::new(&g);
    match op {
        GraphOp::Analyze { .. } => {
            let report = semilattice_predicates(&g);
            let value = serde_json::to_value(report).expect("serializable");
            let mut lines = vec![format!("vertices: {}", g.vertex_count()), format!("edges: {}", g.edge_count())];
            for (k, v) in value.as_object().unwrap() {
                lines.push(format!("{k}: {v}"));
            }
            out.emit("graph.analyze", lines.join("\n"), value);
        }
        GraphOp::Mul { a, b, .. } => {
            let s = p.format(&p.mul(&p.parse(&a)?, &p.parse(&b)?));
            out.emit("graph.mul", &s, Value::String(s.clone()));
        }
        GraphOp::Arrow { a, targets, .. } => {
            let t = targets.iter().map(|s| p.parse(s)).collect::<Result<Vec<_>>>()?;
            let v = p.lenz_arrow(&p.parse(&a)?, &t)?;
            out.emit("graph.arrow", v, Value::Bool(v));
        }
    }
    Ok(())
}

fn max_elements() -> usize {
    std::env::var("STONEDUAL_MAX_ELEMENTS").ok().and_then(|v| v.parse().ok()).unwrap_or(2000)
}

fn load_table(arg: &str) -> Result<MulTable> {
    let limit = max_elements();
    if let Some(name) = arg.strip_prefix('@') {
        let t = corpus::named(name)?.ok_or_else(|| Error::Precondition(format!("no built-in table `{name}`")))?;
        if t.size() > limit {
            return Err(Error::SizeLimit { what: "table".into(), size: t.size(), limit });
        }
        return Ok(t);
    }
    if !FsPath::new(arg).exists() {
        return Err(Error::Precondition(format!("no such table file `{arg}`")));
    }
    let raw = parse_raw(&read_file(arg)?)?;
    if raw.size > limit {
        return Err(Error::SizeLimit { what: "table".into(), size: raw.size, limit });
    }
    Ok(raw.validate()?)
}

fn set_names(s: &MulTable, set: impl IntoIterator<Item = usize>) -> String {
    format!("{{{}}}", set.into_iter().map(|x| s.name(x)).collect::<Vec<_>>().join(","))
}

fn finite(out: &Out, op: FiniteOp) -> Result<()> {
    if let FiniteOp::Gen { name } = &op {
        let t = corpus::named(name)?.ok_or_else(|| Error::Precondition(format!("no built-in table `{name}`")))?;
        out.emit("finite.gen", t.to_text().trim_end(), json!({ "name": name, "table": t.to_text() }));
        return Ok(());
    }
    let arg = match &op {
        FiniteOp::Validate { table }
        | FiniteOp::Predicates { table }
        | FiniteOp::Congfree { table }
        | FiniteOp::Simplifying { table }
        | FiniteOp::Complete { table }
        | FiniteOp::Dualize { table }
        | FiniteOp::Classify { table }
        | FiniteOp::Ideals { table } => table.clone(),
        FiniteOp::Gen { .. } => unreachable!(),
    };
    let s = load_table(&arg)?;
    match op {
        FiniteOp::Validate { .. } => {
            let text = format!(
                "valid inverse semigroup with zero: {} elements, {}",
                s.size(),
                if s.identity().is_some() { "monoid" } else { "no identity" }
            );
            out.emit("finite.validate", text, json!({ "valid": true, "size": s.size(), "monoid": s.identity().is_some() }));
        }
        FiniteOp::Predicates { .. } => {
            let value = serde_json::to_value(s.predicates()).expect("serializable");
            let lines: Vec<String> = value.as_object().unwrap().iter().map(|(k, v)| format!("{k}: {v}")).collect();
            out.emit("finite.predicates", lines.join("\n"), value);
        }
        FiniteOp::Congfree { .. } => {
            let v = is_congruence_free(&s)?;
            out.emit("finite.congfree", format!("congruence-free: {v}"), Value::Bool(v));
        }
        FiniteOp::Simplifying { .. } => {
            let v = is_zero_simplifying(&s)?;
            out.emit("finite.simplifying", format!("0-simplifying: {v}"), Value::Bool(v));
        }
        FiniteOp::Complete { .. } => complete(out, &s)?,
        FiniteOp::Dualize { .. } => dualize(out, &s)?,
        FiniteOp::Classify { .. } => {
            let c = classify_symmetric(&s)?;
            let text = match (c.k, &c.failure) {
                (Some(k), _) => format!("I({k})"),
                (None, Some(why)) => format!("none: {why}"),
                (None, None) => "none".to_string(),
            };
            out.emit("finite.classify", text, json!({ "k": c.k, "failure": c.failure, "iso": c.iso }));
        }
        FiniteOp::Ideals { .. } => ideals(out, &s)?,
        FiniteOp::Gen { .. } => unreachable!(),
    }
    Ok(())
}

fn complete(out: &Out, s: &MulTable) -> Result<()> {
    let c = distributive_completion(s)?;
    let d = &c.table;
    out.emit(
        "finite.complete.sizes",
        format!(
            "S: {} elements\nS/<->: {} classes\nFC(S/<->): {} ideals\nD(S): {} elements\ndistributive: {}\nboolean: {}",
            s.size(),
            c.quotient.table.size(),
            c.fc.ideals.len(),
            d.size(),
            d.predicates().distributive,
            d.predicates().boolean
        ),
        json!({
            "size": s.size(),
            "quotient": c.quotient.table.size(),
            "fc": c.fc.ideals.len(),
            "completion": d.size(),
            "distributive": d.predicates().distributive,
            "boolean": d.predicates().boolean,
        }),
    );
    for (i, class) in c.classes.iter().enumerate() {
        let support = set_names(s, class.support.iter().copied());
        let generators = set_names(s, class.representative.iter().copied());
        out.emit(
            "finite.complete.class",
            format!("class {i}: support {support} generators {generators}"),
            json!({ "class": i, "support": support, "generators": generators }),
        );
    }
    let delta: Vec<String> = s.elements().map(|a| format!("{}->{}", s.name(a), c.delta[a])).collect();
    out.emit("finite.complete.delta", format!("delta: {}", delta.join(" ")), json!({ "delta": c.delta }));
    let report = booleanization_report(s)?;
    let value = serde_json::to_value(&report).expect("serializable");
    let lines: Vec<String> = value.as_object().unwrap().iter().map(|(k, v)| format!("{k}: {v}")).collect();
    out.emit("finite.complete.booleanization", lines.join("\n"), value);
    Ok(())
}

fn dualize(out: &Out, s: &MulTable) -> Result<()> {
    let g = ultrafilter_groupoid(s)?;
    let gr = &g.groupoid;
    let boolean = s.predicates().boolean;
    let text = gr.to_text();
    out.emit(
        "finite.dualize.groupoid",
        format!("objects: {}\narrows: {}\n{}", gr.objects().len(), gr.len(), text.trim_end()),
        json!({ "objects": gr.objects().len(), "arrows": gr.len(), "groupoid": text, "principal": gr.is_principal() }),
    );
    if boolean {
        let r = duality_roundtrip(s)?;
        out.emit(
            "finite.dualize.roundtrip",
            format!("round trip: S ≅ B(G(S)), {} elements", r.bisections.table.size()),
            json!({ "roundtrip": true, "size": r.bisections.table.size(), "map": r.map }),
        );
    } else {
        out.emit("finite.dualize.roundtrip", "round trip: skipped, S is not Boolean", json!({ "roundtrip": null }));
    }
    Ok(())
}

fn ideals(out: &Out, s: &MulTable) -> Result<()> {
    let p = s.predicates();
    if p.boolean && p.meet_semigroup {
        let c = ideal_correspondence(s)?;
        for (i, ideal) in c.ideals.iter().enumerate() {
            let objects = set_names(s, c.invariant[c.o_map[i]].iter().map(|&o| ultrafilter_element(s, o)));
            let ideal_names = set_names(s, ideal.iter().copied());
            out.emit(
                "finite.ideals",
                format!("ideal {ideal_names} <-> objects {objects}"),
                json!({ "ideal": ideal_names, "objects": objects }),
            );
        }
        out.emit(
            "finite.ideals.summary",
            format!("tightly closed ideals: {} (unions of components: {})", c.ideals.len(), c.invariant.len()),
            json!({ "ideals": c.ideals.len(), "invariant": c.invariant.len() }),
        );
    } else {
        let all = tightly_closed_ideals(s)?;
        for t in &all {
            let names = set_names(s, t.ones());
            out.emit("finite.ideals", format!("ideal {names}"), json!({ "ideal": names }));
        }
        out.emit("finite.ideals.summary", format!("tightly closed ideals: {}", all.len()), json!({ "ideals": all.len() }));
    }
    Ok(())
}

/// The semigroup element behind an object of `G(S)`.
fn ultrafilter_element(s: &MulTable, object: usize) -> usize {
    s.zero_minimal()[object]
}

fn thompson(out: &Out, op: ThompsonOp) -> Result<()> {
    let rank = match &op {
        ThompsonOp::Mul { rank, .. }
        | ThompsonOp::Inv { rank, .. }
        | ThompsonOp::Reduce { rank, .. }
        | ThompsonOp::Eq { rank, .. }
        | ThompsonOp::Fromunit { rank, .. }
        | ThompsonOp::Tounit { rank, .. } => *rank,
    };
    let params = Params::new(rank.n, rank.r)?;
    let tp = |s: &str| TreePair::parse(params, s);
    let emit_pair = |op: &str, g: TreePair| {
        let s = g.format();
        out.emit(op, &s, Value::String(s.clone()));
    };
    match op {
        ThompsonOp::Mul { g, h, .. } => emit_pair("thompson.mul", tp_mul(&tp(&g)?, &tp(&h)?)?),
        ThompsonOp::Inv { g, .. } => emit_pair("thompson.inv", tp_inv(&tp(&g)?)?),
        ThompsonOp::Reduce { g, .. } => emit_pair("thompson.reduce", tp_reduce(&tp(&g)?)?),
        ThompsonOp::Eq { g, h, .. } => {
            let v = tp_eq(&tp(&g)?, &tp(&h)?)?;
            out.emit("thompson.eq", v, Value::Bool(v));
        }
        ThompsonOp::Fromunit { x, .. } => emit_pair("thompson.fromunit", tp_from_unit(&CuntzElement::parse(params, &x)?)?),
        ThompsonOp::Tounit { g, .. } => {
            let s = tp_to_unit(&tp(&g)?)?.format();
            out.emit("thompson.tounit", &s, Value::String(s.clone()));
        }
    }
    Ok(())
}

fn run_selftest(out: &Out, suite: &str, seed: u64, count: Option<usize>) -> ExitCode {
    let names: Vec<&str> = if suite == "all" { selftest::SUITES.to_vec() } else { vec![suite] };
    let mut ok = true;
    for name in names {
        let Some(report) = selftest::run(name, seed, count) else {
            eprintln!("error: unknown suite `{name}`; expected one of {} or all", selftest::SUITES.join(", "));
            return ExitCode::from(2);
        };
        ok &= report.passed;
        let verdict = if report.passed { "PASS" } else { "FAIL" };
        out.emit(
            "selftest",
            format!("{verdict} {}: {} ({:.2}s)", report.suite, report.detail, report.elapsed.as_secs_f64()),
            serde_json::to_value(&report).expect("serializable"),
        );
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
