use std::path::PathBuf;

use snowteam::cli::run_cli_with;

const TOY1: &str = "st 3 2\nv 0 1 1\nv 1 0 0\nv 2 1 0\na 0 1\na 1 2\n";
const TOY2: &str = "st 3 2\nv 0 1 1\nv 1 0 0\nv 2 1 0\na 1 0\na 1 2\n";
const FIG1: &str = "sc 5 4 2\ns 1 3 4\ns 2 3\ns 2 4 5\ns 3 4 5\n";

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("snowteam-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, text: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("snowteam").chain(args.iter().copied());
    let code = run_cli_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn decision_exit_codes() {
    let s = Scratch::new("codes");
    let (toy1, toy2) = (s.file("toy1.st", TOY1), s.file("toy2.st", TOY2));
    assert_eq!(run(&["solve", "--problem", "st", "--input", &toy1]).0, 0);
    assert_eq!(run(&["solve", "--problem", "st", "--input", &toy2]).0, 1);
    assert_eq!(run(&["solve", "--problem", "st", "--input", &toy2, "--exact"]).0, 1);
    assert_eq!(run(&["solve", "--problem", "min-st", "--input", &toy2]).0, 1);
    assert_eq!(run(&["solve", "--problem", "max-st", "--input", &toy2]).0, 0);
    assert_eq!(run(&["solve", "--problem", "stu", "--input", &toy1, "--k", "1"]).0, 0);
    assert_eq!(run(&["solve", "--problem", "tpe", "--input", &toy1, "--tree", "0 1 2:++"]).0, 0);
    assert_eq!(run(&["solve", "--problem", "tpe", "--input", &toy1, "--tree", "0 1 1:--", "--exact"]).0, 1);
}

#[test]
fn usage_and_input_errors_exit_two() {
    let s = Scratch::new("errors");
    let bad = s.file("bad.st", "st 2 1\nv 0 1 0\n");
    let toy1 = s.file("toy1.st", TOY1);
    assert_eq!(run(&["solve", "--problem", "st", "--input", &bad]).0, 2);
    assert_eq!(run(&["solve", "--problem", "st", "--input", &s.path("missing.st")]).0, 2);
    assert_eq!(run(&["solve", "--problem", "stu", "--input", &toy1]).0, 2);
    assert_eq!(run(&["solve", "--problem", "tpe", "--input", &toy1]).0, 2);
    assert_eq!(run(&["solve", "--problem", "bogus", "--input", &toy1]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["gen", "--family", "fig3", "--n", "4"]).0, 2);
    let (code, _, err) = run(&["gen", "--family", "random", "--n", "3", "--arcs", "7"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn json_report_is_deterministic_and_ordered() {
    let s = Scratch::new("json");
    let toy1 = s.file("toy1.st", TOY1);
    let args = ["solve", "--problem", "min-st", "--input", &toy1, "--json", "--seed", "5"];
    let (code, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    assert!(a.starts_with(r#"{"problem":"min-st","answer":"optimum","optimum":1,"failure_bound":"#), "{a}");
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["optimum"], 1);
    let (_, exact, _) = run(&["solve", "--problem", "st", "--input", &toy1, "--json", "--exact"]);
    let v: serde_json::Value = serde_json::from_str(&exact).unwrap();
    assert_eq!(v["answer"], "yes");
    assert_eq!(v["failure_bound"], 0.0);
    assert!(v["witness"].is_array());
}

#[test]
fn gadget_pipeline() {
    let s = Scratch::new("gadget");
    let sc = s.file("fig1.sc", FIG1);
    let g = s.path("g.st");
    assert_eq!(run(&["gadget", "--input", &sc, "--output", &g]).0, 0);
    assert_eq!(run(&["solve", "--problem", "st", "--input", &g]).0, 0);
    let (code, out, _) = run(&["solve", "--problem", "st", "--input", &g, "--exact"]);
    assert_eq!(code, 0);
    let walks: String = out.lines().skip(3).map(|l| format!("{l}\n")).collect();
    let w = s.file("g.walks", &walks);
    assert_eq!(run(&["verify", "--input", &g, "--walks", &w]), (0, "valid\n".into(), String::new()));
    let (code, cover, _) = run(&["extract-cover", "--input", &g, "--walks", &w]);
    assert_eq!(code, 0);
    let sets: Vec<usize> = cover.split_whitespace().map(|t| t.parse().unwrap()).collect();
    assert!(!sets.is_empty() && sets.len() <= 2);

    let one = s.file("fig1k1.sc", &FIG1.replace("sc 5 4 2", "sc 5 4 1"));
    let g1 = s.path("g1.st");
    assert_eq!(run(&["gadget", "--input", &one, "--output", &g1]).0, 0);
    assert_eq!(run(&["solve", "--problem", "st", "--input", &g1]).0, 1);
}

#[test]
fn verify_rejects_bad_walks() {
    let s = Scratch::new("verify");
    let toy1 = s.file("toy1.st", TOY1);
    let good = s.file("good.walks", "0 1 2\n");
    let bad = s.file("bad.walks", "0 1\n");
    assert_eq!(run(&["verify", "--input", &toy1, "--walks", &good]).0, 0);
    let (code, out, _) = run(&["verify", "--input", &toy1, "--walks", &bad]);
    assert_eq!(code, 1);
    assert!(out.starts_with("invalid"));
}

#[test]
fn generators() {
    let (code, fig3, _) = run(&["gen", "--family", "fig3", "--n", "5"]);
    assert_eq!(code, 0);
    assert!(fig3.starts_with("st 5 4\n"));
    let args = ["gen", "--family", "random", "--n", "6", "--arcs", "9", "--facilities", "0.5", "--seed", "3"];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
    assert!(a.starts_with("st 6 9\n"));
    let (_, c, _) = run(&["gen", "--family", "random", "--n", "6", "--arcs", "9", "--seed", "4"]);
    assert_ne!(a, c);
}

#[test]
fn tree_listing() {
    assert_eq!(run(&["trees", "--order", "6", "--count"]).1, "6\n");
    assert_eq!(run(&["trees", "--order", "4", "--oriented", "--count"]).1, "16\n");
    let (_, listed, _) = run(&["trees", "--order", "3", "--oriented", "--dedupe"]);
    assert_eq!(listed.lines().count(), 3);
    assert_eq!(run(&["trees", "--order", "40"]).0, 2);
}
