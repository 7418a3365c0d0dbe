use std::process::Command;

use char2qf_cli::ast::{ExprKind, Stmt};
use char2qf_cli::{parse, parse_expr, run, Options, Status};

fn run_text(text: &str) -> char2qf_cli::RunOutput {
    run(&parse(text).unwrap(), &Options::default())
}

fn bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_char2qf")).args(args).output().unwrap()
}

#[test]
fn parses_grammar_examples() {
    let s = parse("let F = GF(2)(t)\nsplit [1/t, 1+t)\nlet P = pf<<t; 1]]\n").unwrap();
    assert_eq!(s.stmts.len(), 3);
    assert!(matches!(&s.stmts[0], Stmt::Let(n, e) if n == "F" && matches!(e.kind, ExprKind::Field { size: 2, var: true, .. })));
    assert!(matches!(&s.stmts[1], Stmt::Cmd(c) if c.name == "split" && matches!(c.args[0].kind, ExprKind::Symbol(..))));
    assert!(matches!(&s.stmts[2], Stmt::Let(_, e) if matches!(&e.kind, ExprKind::Pf(slots, _) if slots.len() == 1)));
}

#[test]
fn canonical_printing_round_trips() {
    let text = "let K = GF(4)(t).adj_sqrt(t+w).adj_as(sqrt#1/t)\n\
                let x = (1+t)^-2*w-t/(t+1)/t\n\
                let phi = perp(Q[x, -t^3], scale(t, pf<<t, 1+t; x]]), Q[0, 1])\n\
                let b = bil<t, 1, t^2>\n\
                let c = {[t, 1+t), [1/t, t)}\n\
                hyp phi --x 1\n\
                verify norm-rewrite --trials 3 --seed 9\n\
                eq x, -(t+1)*(t-1)\n";
    let s = parse(text).unwrap();
    let printed = s.to_string();
    assert_eq!(parse(&printed).unwrap(), s);
    assert_eq!(parse(&printed).unwrap().to_string(), printed);
}

#[test]
fn parse_errors_carry_positions() {
    let e = parse("let F = GF(2)(t)\nsplit [1/t, 1+t]\n").unwrap_err();
    assert_eq!((e.pos.line, e.pos.col), (2, 16));
    let e = parse("frobnicate t").unwrap_err();
    assert_eq!((e.pos.line, e.pos.col), (1, 1));
    assert!(parse("let x = t $ 1").is_err());
    assert!(parse_expr("Q[t, 1").is_err());
    assert!(parse("let t = 1").is_err());
}

#[test]
fn executes_spec_examples() {
    let out = run_text("let F = GF(2)\narf Q[1,1]\nlet G = GF(2)(t)\ninv [1/t,1+t)\nsplit [t, t)\n");
    let texts: Vec<&str> = out.records.iter().map(|r| r.text.as_str()).collect();
    assert_eq!(texts, ["nontrivial (rep 1)", "{t:1, t+1:1, ∞:0}", "split"]);
    assert_eq!(out.exit_code(), 0);
}

#[test]
fn evaluation_errors_are_typed() {
    let out = run_text("split t\nhyp y\nlet F = GF(3)\ninv [1/sqrt#1, t)\n");
    assert!(out.records.iter().all(|r| r.status == Status::Usage));
    assert_eq!(out.exit_code(), 1);
    let out = run_text("e2 Q[1,t]\n");
    assert_eq!(out.records[0].status, Status::Error);
    assert_eq!(out.exit_code(), 2);
}

#[test]
fn towers_and_transfers() {
    let out = run_text(
        "let K = GF(2)(t).adj_sqrt(t)\n\
         transfer pf<<sqrt#1; t]]\n\
         frob {[1/sqrt#1, 1+t)}\n\
         hyp pf<<t; 1]]\n\
         descend perp(Q[1, t], Q[1, t])\n",
    );
    assert_eq!(out.exit_code(), 0, "{:?}", out.records);
    assert_eq!(out.records[1].text, "{}");
    assert!(out.records[2].text.starts_with("yes"));
    assert!(out.records[3].text.starts_with("found"));
}

#[test]
fn binary_exit_codes_and_json() {
    let o = bin(&["-e", "split [1/t, 1+t)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "nonsplit");
    assert_eq!(bin(&["-e", "split [1/t, 1+t]"]).status.code(), Some(1));
    assert_eq!(bin(&["-e", "e2 Q[1, t]"]).status.code(), Some(2));
    let o = bin(&["--json", "-e", "eq [t, t), {}"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"], "yes");
    assert_eq!(v["status"], "ok");
}

#[test]
fn verify_reports_are_deterministic() {
    let args = ["--json", "--seed", "11", "--trials", "6", "-e", "verify lift"];
    let (a, b) = (bin(&args), bin(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["statement"], "lift");
    assert_eq!(v["seed"], 11);
    assert_eq!(v["trials"].as_array().unwrap().len(), 6);
    assert!(v["trials"][0]["millis"].is_null());
}

#[test]
fn budget_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_char2qf"))
        .env("QF2_BUDGET", "1")
        .args(["-e", "iso perp(Q[1, t], Q[1, t])"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("isotropic"));
    assert_eq!(bin(&["--budget", "x", "-e", "arf Q[1,1]"]).status.code(), Some(1));
}

#[test]
fn timeouts_are_reported() {
    let o = bin(&["--timeout-ms", "1", "-e", "verify degree8 --trials 50"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stdout).contains("timed out"));
}

#[test]
fn readme_scripts_run() {
    let readme = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md")).unwrap();
    let blocks: Vec<&str> = readme.split("```char2qf\n").skip(1).map(|b| b.split("```").next().unwrap()).collect();
    assert!(blocks.len() >= 2);
    for b in blocks {
        let out = run_text(b);
        assert_eq!(out.exit_code(), 0, "{b}\n{:?}", out.records);
    }
}
