use std::path::PathBuf;
use std::process::{Command, Output};

use stonedual::finitesgp::MulTable;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stonedual")).args(args).current_dir(root()).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json_lines(args: &[&str]) -> Vec<serde_json::Value> {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    stdout(&full).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn inverse_of_generator_cancels() {
    assert_eq!(stdout(&["poly", "mul", "-n", "2", "a^-1", "a"]), "1\n");
    assert_eq!(stdout(&["poly", "mul", "-n", "2", "a^-1", "b"]), "0\n");
    assert_eq!(stdout(&["poly", "mul", "-n", "2", "a", "a^-1"]), "a.a^-1\n");
}

#[test]
fn poly_order_and_arrow() {
    assert_eq!(stdout(&["poly", "leq", "-n", "2", "aa.ba^-1", "a.b^-1"]), "true\n");
    assert_eq!(stdout(&["poly", "meet", "-n", "2", "a.b^-1", "aa.ba^-1"]), "aa.ba^-1\n");
    assert_eq!(stdout(&["poly", "arrow", "-n", "2", "1", "a.a^-1", "b.b^-1"]), "true\n");
    assert_eq!(stdout(&["poly", "arrow", "-n", "2", "1", "a.a^-1"]), "false\n");
    assert_eq!(stdout(&["poly", "mul", "-n", "2", "-r", "2", "(1|a,b|2)", "(2|b,a|1)"]), "(1|a,a|1)\n");
}

#[test]
fn prefix_codes() {
    assert_eq!(stdout(&["mpc", "check", "-n", "2", "a,ba,bb"]), "maximal prefix code: true\n");
    assert_eq!(stdout(&["mpc", "check", "-n", "2", "a,ba"]), "maximal prefix code: false\n");
    assert_eq!(stdout(&["mpc", "kraft", "-n", "2", "a,ba"]), "kraft sum: 3/4\n");
    assert_eq!(stdout(&["mpc", "kraft", "-n", "3", "a,b,c"]), "kraft sum: 1\n");
    assert_eq!(stdout(&["mpc", "check", "-n", "2", "-r", "2", "r1:1,r2:a,r2:b"]), "maximal prefix code: true\n");
}

#[test]
fn classifies_table_files() {
    assert_eq!(stdout(&["finite", "classify", "tables/i3.tbl"]), "I(3)\n");
    assert_eq!(stdout(&["finite", "classify", "tables/i1.tbl"]), "I(1)\n");
    assert_eq!(stdout(&["finite", "classify", "@b2"]), "none: not a monoid\n");
    assert_eq!(stdout(&["finite", "classify", "tables/chain3.tbl"]), "none: not Boolean\n");
}

#[test]
fn table_files_match_corpus() {
    for name in stonedual_cli::corpus::NAMES {
        let path = root().join("tables").join(format!("{name}.tbl"));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path:?}: {e}"));
        let file = MulTable::parse(&text).unwrap();
        let built = stonedual_cli::corpus::named(name).unwrap().unwrap();
        assert_eq!(file, built, "{name}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["poly", "mul", "-n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let bad = run(&["poly", "mul", "-n", "2", "c", "a"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(!bad.stderr.is_empty());
    assert_eq!(run(&["finite", "validate", "tables/missing.tbl"]).status.code(), Some(1));
    assert_eq!(run(&["mpc", "kraft", "-n", "2", "a,ab"]).status.code(), Some(1));
    assert_eq!(run(&["selftest", "nonsense"]).status.code(), Some(2));
}

#[test]
fn non_inverse_table_is_a_domain_error() {
    let dir = std::env::temp_dir().join(format!("stonedual-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // {0, a, b} with ab = ba = a: a has no inverse in the sense required
    let path = dir.join("bad.tbl");
    std::fs::write(&path, "elements 3 zero 0\n0 0 0\n0 0 1\n0 1 2\n").unwrap();
    let out = run(&["finite", "validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn size_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_stonedual"))
        .args(["finite", "validate", "tables/i3.tbl"])
        .env("STONEDUAL_MAX_ELEMENTS", "10")
        .current_dir(root())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&["finite", "validate", "tables/i3.tbl"]).contains("34 elements"));
}

#[test]
fn graph_commands() {
    assert_eq!(stdout(&["graph", "mul", "graphs/rose2.graph", "1@v/a", "a/1@v"]), "1@v/1@v\n");
    assert_eq!(stdout(&["graph", "arrow", "graphs/rose2.graph", "1@v/1@v", "a/a", "b/b"]), "true\n");
    assert_eq!(stdout(&["graph", "arrow", "graphs/rose2.graph", "1@v/1@v", "a/a"]), "false\n");
    let report = json_lines(&["graph", "analyze", "graphs/rose2.graph"]);
    assert_eq!(report[0]["pre_boolean"], true);
    assert_eq!(report[0]["no_zero_minimal"], true);
}

#[test]
fn thompson_commands() {
    let g = "{a,ba,bb}->{aa,ab,b}:perm=[0,1,2]";
    let inv = stdout(&["thompson", "inv", "-n", "2", g]);
    assert_eq!(inv, "{aa,ab,b}->{a,ba,bb}:perm=[0,1,2]\n");
    assert_eq!(stdout(&["thompson", "mul", "-n", "2", g, inv.trim()]), "{1}->{1}:perm=[0]\n");
    let unit = stdout(&["thompson", "tounit", "-n", "2", g]);
    assert_eq!(unit, "aa.a^-1;ab.ba^-1;b.bb^-1\n");
    assert_eq!(stdout(&["thompson", "fromunit", "-n", "2", unit.trim()]), format!("{g}\n"));
    assert_eq!(stdout(&["thompson", "eq", "-n", "2", g, "{aa,ab,ba,bb}->{aaa,aab,ab,b}:perm=[0,1,2,3]"]), "true\n");
    let swap = "{r1:1,r2:1}->{r1:1,r2:1}:perm=[1,0]";
    assert_eq!(stdout(&["thompson", "mul", "-n", "2", "-r", "2", swap, swap]), "{r1:1,r2:1}->{r1:1,r2:1}:perm=[0,1]\n");
    let not_unit = run(&["thompson", "fromunit", "-n", "2", "a.a^-1"]);
    assert_eq!(not_unit.status.code(), Some(1));
}

#[test]
fn json_literals_round_trip() {
    let x = json_lines(&["poly", "mul", "-n", "3", "ab.c^-1", "c.ba^-1"]);
    let lit = x[0]["result"].as_str().unwrap().to_string();
    assert_eq!(stdout(&["poly", "mul", "-n", "3", &lit, "1"]), format!("{lit}\n"));

    let g = "{aa,ab,b}->{a,ba,bb}:perm=[0,1,2]";
    let y = json_lines(&["thompson", "reduce", "-n", "2", g]);
    let lit = y[0]["result"].as_str().unwrap().to_string();
    assert_eq!(stdout(&["thompson", "eq", "-n", "2", &lit, g]), "true\n");

    let z = json_lines(&["graph", "mul", "graphs/rose2.graph", "a.b/a", "a/b"]);
    let lit = z[0]["result"].as_str().unwrap().to_string();
    assert_eq!(stdout(&["graph", "mul", "graphs/rose2.graph", &lit, "1@v/1@v"]), format!("{lit}\n"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["finite", "complete", "tables/i2_x_chain2.tbl"][..],
        &["finite", "dualize", "@i3"][..],
        &["finite", "ideals", "@b2_plus_z2"][..],
        &["selftest", "lenz", "--count", "200"][..],
    ] {
        let a = stdout(args);
        let b = stdout(args);
        // self-test reports carry timings
        let strip = |s: &str| s.lines().map(|l| l.split(" (").next().unwrap().to_string()).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b), "{args:?}");
    }
}

#[test]
fn finite_reports() {
    let sizes = json_lines(&["finite", "complete", "@b3"]);
    assert_eq!(sizes[0]["size"], 10);
    assert_eq!(sizes[0]["completion"], 34);
    assert_eq!(sizes[0]["boolean"], true);
    let last = sizes.last().unwrap();
    assert_eq!(last["op"], "finite.complete.booleanization");
    assert_eq!(last["unital"], true);
    assert_eq!(last["compactable"], true);

    let lenz = json_lines(&["finite", "complete", "@lenz"]);
    assert_eq!(lenz[0]["quotient"], 2);

    let dual = json_lines(&["finite", "dualize", "@i2"]);
    assert_eq!(dual[0]["objects"], 2);
    assert_eq!(dual[0]["arrows"], 4);
    assert_eq!(dual[1]["roundtrip"], true);

    let pred = json_lines(&["finite", "predicates", "@i3"]);
    assert_eq!(pred[0]["fundamental"], true);
    assert_eq!(stdout(&["finite", "congfree", "@i2"]), "congruence-free: false\n");
    assert_eq!(stdout(&["finite", "congfree", "@b2"]), "congruence-free: true\n");
    assert_eq!(stdout(&["finite", "simplifying", "@chain3"]), "0-simplifying: true\n");

    let ideals = json_lines(&["finite", "ideals", "@i2_plus_i1"]);
    assert_eq!(ideals.last().unwrap()["ideals"], 4);
}

#[test]
fn selftest_runs_with_seed() {
    let out = stdout(&["selftest", "codes", "--seed", "7", "--count", "300"]);
    assert!(out.starts_with("PASS codes"), "{out}");
}
