//! Command execution and result records.

use std::sync::mpsc;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value as Json};

use char2qf::brauer::{e2, frobenius_map, split_test};
use char2qf::forms::{equivalent, is_hyperbolic, is_isotropic, Budget, Isotropy};
use char2qf::theorems::{descend_brauer_class, run_suite, Verdict};
use char2qf::transfer::{descend_form_search, transfer_bilinear, transfer_quadratic, DescentBudget, DescentCertificate, TransferFunctional};
use char2qf::Decision;

use crate::ast::{Command, Script, Stmt};
use crate::lexer::Pos;
use crate::value::{form_script, Env, Value};
use crate::EvalError;

type Result<T> = std::result::Result<T, EvalError>;

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub json: bool,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    /// Degree bound for isotropy and descent searches.
    pub budget: Option<usize>,
    pub timeout_ms: Option<u64>,
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Refuted,
    Error,
    Usage,
}

#[derive(Clone, Debug)]
pub struct Record {
    /// 0-based command index within the script.
    pub index: usize,
    pub command: String,
    pub status: Status,
    pub text: String,
    pub json: Json,
}

impl Record {
    pub fn render(&self, json_mode: bool) -> String {
        if !json_mode {
            return match self.status {
                Status::Error | Status::Usage => format!("error in command {} ({}): {}", self.index, self.command, self.text),
                _ => self.text.clone(),
            };
        }
        // suite reports are printed in their own schema
        if self.command.starts_with("verify") && self.status != Status::Error && self.status != Status::Usage {
            return serde_json::to_string(&self.json).expect("json");
        }
        let obj = json!({"index": self.index, "command": self.command, "status": self.status, "result": self.json});
        serde_json::to_string(&obj).expect("json")
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOutput {
    pub records: Vec<Record>,
}

impl RunOutput {
    /// 0 success, 1 usage error, 2 library error, 3 refutation.
    pub fn exit_code(&self) -> i32 {
        let has = |s: Status| self.records.iter().any(|r| r.status == s);
        if has(Status::Refuted) {
            3
        } else if has(Status::Error) {
            2
        } else if has(Status::Usage) {
            1
        } else {
            0
        }
    }
}

struct Outcome {
    text: String,
    json: Json,
    refuted: bool,
}

impl Outcome {
    fn plain(text: impl Into<String>) -> Self {
        let text = text.into();
        Outcome { json: Json::String(text.clone()), text, refuted: false }
    }
}

/// Executes every statement in order; a failing statement does not stop the
/// script, but a failing `let` leaves its name unbound.
pub fn run(script: &Script, opts: &Options) -> RunOutput {
    let mut env = Env::default();
    let mut out = RunOutput::default();
    for (index, stmt) in script.stmts.iter().enumerate() {
        match stmt {
            Stmt::Let(name, e) => match env.eval(e) {
                Ok(v) => env.bind(name, v),
                Err(err) => out.records.push(failure(index, format!("let {name}"), err)),
            },
            Stmt::Cmd(cmd) => {
                let rec = match with_timeout(&env, cmd, opts) {
                    Ok(o) => Record {
                        index,
                        command: cmd.to_string(),
                        status: if o.refuted { Status::Refuted } else { Status::Ok },
                        text: o.text,
                        json: o.json,
                    },
                    Err(err) => failure(index, cmd.to_string(), err),
                };
                out.records.push(rec);
            }
        }
    }
    out
}

fn failure(index: usize, command: String, err: EvalError) -> Record {
    let status = if matches!(err, EvalError::Usage { .. }) { Status::Usage } else { Status::Error };
    let text = err.to_string();
    Record { index, command, status, json: Json::String(text.clone()), text }
}

fn with_timeout(env: &Env, cmd: &Command, opts: &Options) -> Result<Outcome> {
    let Some(ms) = opts.timeout_ms else { return execute(env, cmd, opts) };
    // the worker keeps running after a timeout and is dropped at exit
    let (tx, rx) = mpsc::channel();
    let (env2, cmd2, opts2) = (env.clone(), cmd.clone(), opts.clone());
    std::thread::spawn(move || {
        let _ = tx.send(execute(&env2, &cmd2, &opts2));
    });
    rx.recv_timeout(Duration::from_millis(ms)).unwrap_or(Err(EvalError::Timeout(ms)))
}

fn arg(cmd: &Command, n: usize) -> Result<&crate::ast::Expr> {
    if cmd.args.len() != n {
        let pos = cmd.args.first().map_or(Pos { line: cmd.line, col: 1 }, |e| e.pos);
        return Err(EvalError::usage(pos, format!("{} takes {n} argument(s), got {}", cmd.name, cmd.args.len())));
    }
    Ok(&cmd.args[0])
}

fn decision_json(d: &Decision) -> Json {
    match d {
        Decision::Yes => json!("yes"),
        Decision::No => json!("no"),
        Decision::Unknown(r) => json!({"unknown": r}),
    }
}

fn search_budget(opts: &Options) -> Option<Budget> {
    opts.budget.map(Budget::with_degree)
}

fn execute(env: &Env, cmd: &Command, opts: &Options) -> Result<Outcome> {
    match cmd.name.as_str() {
        "arf" => {
            let phi = env.form(arg(cmd, 1)?)?;
            let a = phi.arf();
            Ok(if a.is_trivial() {
                Outcome { text: "trivial".into(), json: json!({"trivial": true}), refuted: false }
            } else {
                let rep = a.representative().to_string();
                Outcome { text: format!("nontrivial (rep {rep})"), json: json!({"trivial": false, "rep": rep}), refuted: false }
            })
        }
        "e2" => {
            let phi = env.form(arg(cmd, 1)?)?;
            let c = e2(&phi)?.simplify();
            let d = c.is_trivial()?;
            let text = format!("{c} (split: {d})");
            Ok(Outcome { text, json: json!({"class": c.to_script(), "split": decision_json(&d)}), refuted: false })
        }
        "split" => {
            let d = match env.eval(arg(cmd, 1)?)? {
                Value::Symbol(s) => split_test(&s)?,
                _ => env.class(&cmd.args[0])?.is_trivial()?,
            };
            let text = match &d {
                Decision::Yes => "split".to_string(),
                Decision::No => "nonsplit".to_string(),
                Decision::Unknown(r) => format!("unknown ({r})"),
            };
            Ok(Outcome { text, json: decision_json(&d), refuted: false })
        }
        "inv" => {
            let v = env.class(arg(cmd, 1)?)?.invariants()?;
            let table: serde_json::Map<String, Json> = v.entries().iter().map(|(p, x)| (p.to_string(), json!(x))).collect();
            Ok(Outcome { text: v.to_string(), json: Json::Object(table), refuted: false })
        }
        "eq" => eq(env, cmd),
        "transfer" => {
            let v = env.eval(arg(cmd, 1)?)?;
            match v {
                Value::Form(phi) => {
                    let s = TransferFunctional::new(phi.field())?;
                    Ok(Outcome::plain(form_script(&transfer_quadratic(&s, &phi)?.form)))
                }
                Value::Bilinear(b) => {
                    let s = TransferFunctional::new(b.field())?;
                    Ok(Outcome::plain(transfer_bilinear(&s, &b)?.to_string()))
                }
                v => Err(EvalError::usage(cmd.args[0].pos, format!("expected a form, found {}", v.kind()))),
            }
        }
        "frob" => {
            let c = env.class(arg(cmd, 1)?)?;
            let base = c.field().below().ok_or(char2qf::Error::NotAnExtension)?;
            Ok(Outcome::plain(frobenius_map(&c, &base)?.simplify().to_script()))
        }
        "descend" => descend(env, cmd, opts),
        "hyp" => {
            let h = is_hyperbolic(&env.form(arg(cmd, 1)?)?, search_budget(opts))?;
            Ok(Outcome { text: h.to_string(), json: json!({"decision": decision_json(&h.decision), "steps": h.steps}), refuted: false })
        }
        "iso" => {
            let phi = env.form(arg(cmd, 1)?)?;
            Ok(match is_isotropic(&phi, search_budget(opts)) {
                Isotropy::Isotropic(v) => {
                    let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    Outcome { text: format!("isotropic ({})", v.join(", ")), json: json!({"isotropic": v}), refuted: false }
                }
                Isotropy::Anisotropic(c) => {
                    Outcome { text: format!("anisotropic ({c})"), json: json!({"anisotropic": c.to_string()}), refuted: false }
                }
                Isotropy::Unknown(r) => Outcome { text: format!("unknown ({r})"), json: json!({"unknown": r}), refuted: false },
            })
        }
        "verify" => verify(cmd, opts),
        other => Err(EvalError::usage(Pos { line: cmd.line, col: 1 }, format!("unknown command {other}"))),
    }
}

fn eq(env: &Env, cmd: &Command) -> Result<Outcome> {
    if cmd.args.len() != 2 {
        return Err(EvalError::usage(Pos { line: cmd.line, col: 1 }, "eq takes 2 arguments"));
    }
    let (x, y) = (env.eval(&cmd.args[0])?, env.eval(&cmd.args[1])?);
    let d = match (&x, &y) {
        (Value::Elem(a), Value::Elem(b)) => Decision::from_bool(a == b),
        (Value::Form(a), Value::Form(b)) => equivalent(a, b, None)?,
        (Value::Symbol(_) | Value::Class(_), Value::Symbol(_) | Value::Class(_)) => {
            env.class(&cmd.args[0])?.equal(&env.class(&cmd.args[1])?)?
        }
        _ => return Err(EvalError::usage(cmd.args[1].pos, format!("cannot compare {} with {}", x.kind(), y.kind()))),
    };
    Ok(Outcome { text: d.to_string(), json: decision_json(&d), refuted: false })
}

fn descend(env: &Env, cmd: &Command, opts: &Options) -> Result<Outcome> {
    match env.eval(arg(cmd, 1)?)? {
        Value::Form(phi) => {
            let mut budget = DescentBudget::for_form(&phi);
            if let Some(d) = opts.budget {
                budget.degree = d;
            }
            Ok(match descend_form_search(&phi, Some(budget))? {
                Some(found) => {
                    let how = match found.certificate {
                        DescentCertificate::Isometry(_) => "isometry",
                        DescentCertificate::WittCancellation => "Witt cancellation",
                    };
                    let psi = form_script(&found.psi);
                    let text = format!("found {psi} (certified by {how}, {} candidates)", found.candidates);
                    Outcome { text, json: json!({"found": psi, "certificate": how, "candidates": found.candidates}), refuted: false }
                }
                None => Outcome { text: "not found within budget".into(), json: json!({"found": null}), refuted: false },
            })
        }
        Value::Symbol(_) | Value::Class(_) => {
            let cert = descend_brauer_class(&env.class(&cmd.args[0])?)?;
            let verdict = cert.verdict();
            let text = format!("{cert}: {verdict}");
            let json = json!({"symbols": cert.class()?.to_script(), "bound": cert.bound, "verdict": verdict.to_string(), "checks": cert.checks.lines()});
            Ok(Outcome { text, json, refuted: matches!(verdict, Verdict::Refuted(_)) })
        }
        v => Err(EvalError::usage(cmd.args[0].pos, format!("expected a form or class, found {}", v.kind()))),
    }
}

fn flag<T: std::str::FromStr>(cmd: &Command, name: &str) -> Result<Option<T>> {
    match cmd.flags.iter().find(|(k, _)| k == name) {
        None => Ok(None),
        Some((_, v)) => v
            .parse()
            .map(Some)
            .map_err(|_| EvalError::usage(Pos { line: cmd.line, col: 1 }, format!("bad value for --{name}: {v}"))),
    }
}

fn verify(cmd: &Command, opts: &Options) -> Result<Outcome> {
    let id = cmd.words.first().map(String::as_str).unwrap_or_default();
    let trials = flag(cmd, "trials")?.or(opts.trials).unwrap_or(100);
    let seed = flag(cmd, "seed")?.or(opts.seed).unwrap_or(0);
    let report = run_suite(id, trials, seed, opts.timing).map_err(|e| EvalError::usage(Pos { line: cmd.line, col: 1 }, e.to_string()))?;
    let verified = report.count(|t| t.is_verified());
    let refuted = report.count(|t| t.is_refuted());
    let inconclusive = trials - verified - refuted;
    let text = format!("{id}: {trials} trials, seed {seed}: {verified} verified, {refuted} refuted, {inconclusive} inconclusive");
    Ok(Outcome { text, json: serde_json::to_value(&report).expect("json"), refuted: refuted > 0 })
}
