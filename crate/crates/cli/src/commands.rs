//! Command execution, generic over the selected ring.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use intdiff::calculus::{c_mn, generalized_shuffle_expand, nested_integral, taylor_parts, x_n};
use intdiff::odes::{
    companion_right_inverse, first_order_operator, green_first_order, green_scalar, initial_conditions, is_right_inverse,
    right_inverse_first_order, scalar_operator, variation_of_constants, FirstOrderProblem, ScalarProblem,
};
use intdiff::opalg::{Env, Nf, OpAlg, Proof, Strategy, TraceStep};
use intdiff::rings::{ExpPolyRing, HurwitzRing, LaurentLogRing, MatrixRing, PolyRing, ShiftedPolyRing};
use intdiff::syntax::{eval_elem, eval_scalar, parse, Expr};
use intdiff::tenred::{check_confluence, default_instances, irreducible_words, ReductionSystem, SystemName};
use intdiff::{Error, IdRing, Result, Zp, Q};

use crate::ring_tag::{BaseRing, RingTag};
use crate::{Cli, Command, OdeArgs};

/// The result of a command: text and JSON renderings and the exit code.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }

    fn verdict(text: String, json: Value, ok: bool) -> Self {
        Output { text, json, code: if ok { 0 } else { 1 } }
    }
}

macro_rules! with_base {
    ($base:expr, |$r:ident| $body:expr) => {
        match $base {
            BaseRing::Qx => {
                let $r = PolyRing;
                $body
            }
            BaseRing::LaurentLog => {
                let $r = LaurentLogRing;
                $body
            }
            BaseRing::ExpRec => {
                let $r = ExpPolyRing::recursive();
                $body
            }
            BaseRing::ExpEval0 => {
                let $r = ExpPolyRing::eval_at_zero();
                $body
            }
            BaseRing::Shifted(c) => {
                let $r = ShiftedPolyRing::new(c.clone());
                $body
            }
            BaseRing::Hurwitz { p: 2, len } => {
                let $r = HurwitzRing::<Zp<2>>::new(*len);
                $body
            }
            BaseRing::Hurwitz { p: 3, len } => {
                let $r = HurwitzRing::<Zp<3>>::new(*len);
                $body
            }
            BaseRing::Hurwitz { p: 5, len } => {
                let $r = HurwitzRing::<Zp<5>>::new(*len);
                $body
            }
            BaseRing::Hurwitz { p: 7, len } => {
                let $r = HurwitzRing::<Zp<7>>::new(*len);
                $body
            }
            BaseRing::Hurwitz { len, .. } => {
                let $r = HurwitzRing::<Q>::new(*len);
                $body
            }
        }
    };
}

/// Runs the selected command.
pub fn dispatch(cli: &Cli) -> Result<Output> {
    if let Command::Confluence { system, max_len } = &cli.command {
        return Ok(confluence(*system, *max_len, cli.trace));
    }
    match &cli.ring {
        RingTag::Base(b) => with_base!(b, |r| run(r, cli)),
        RingTag::Matrix(n, b) => with_base!(b, |r| run(MatrixRing::new(r, *n), cli)),
    }
}

fn confluence(system: SystemName, max_len: usize, trace: bool) -> Output {
    let sys = ReductionSystem::named(system);
    let report = check_confluence(&sys, &default_instances());
    let irr = irreducible_words(&sys, max_len);
    let mut text = String::new();
    let _ = writeln!(text, "system {}: {} rules", report.system, report.rules.len());
    for rule in &report.rules {
        let _ = writeln!(text, "  {rule}");
    }
    for r in &report.results {
        let status = if r.resolved { "resolved" } else { "UNRESOLVED" };
        let _ = writeln!(text, "[{:>2}] {status:<10} {} ({} checks)", r.index, r.description, r.checks);
        if let Some(f) = &r.failure {
            let _ = writeln!(text, "       {f}");
        }
        if trace {
            for step in &r.trace {
                let _ = writeln!(text, "       {step}");
            }
        }
    }
    let _ = writeln!(
        text,
        "{} ambiguities ({} overlaps, {} inclusions), {} resolved",
        report.count(),
        report.overlaps(),
        report.inclusions(),
        report.resolved()
    );
    let _ = writeln!(text, "irreducible words up to length {max_len}: {} ({})", irr.description, if irr.matches() { "matches" } else { "differs" });
    let json = json!({"confluence": report.to_json(), "irreducible": irr.to_json()});
    Output::verdict(text, json, report.all_resolved())
}

fn split_def(s: &str) -> Result<(&str, &str)> {
    s.split_once('=').map(|(a, b)| (a.trim(), b.trim())).ok_or_else(|| Error::Elaborate(format!("expected NAME=EXPR, got '{s}'")))
}

struct Session<R: IdRing> {
    alg: OpAlg<R>,
    env: Env<R::Elem>,
}

impl<R: IdRing> Session<R> {
    fn new(ring: R, cli: &Cli) -> Result<Self> {
        let mut alg = if cli.multiplicative { OpAlg::multiplicative(ring) } else { OpAlg::new(ring) };
        let mut env = Env::new();
        for def in &cli.lets {
            let (name, text) = split_def(def)?;
            let v = eval_elem(&alg.ring, &parse(text)?, &env.elems)?;
            env.elems.insert(name.to_string(), v);
        }
        for def in &cli.phis {
            let (name, text) = split_def(def)?;
            let g = eval_elem(&alg.ring, &parse(text)?, &env.elems)?;
            let r = alg.ring.clone();
            alg.add_functional(name, Arc::new(move |f: &R::Elem| r.evaluate(&r.mul(&g, f))), false)?;
        }
        Ok(Session { alg, env })
    }

    fn elem(&self, text: &str) -> Result<R::Elem> {
        eval_elem(&self.alg.ring, &parse(text)?, &self.env.elems)
    }

    fn elems(&self, texts: &[String]) -> Result<Vec<R::Elem>> {
        texts.iter().map(|t| self.elem(t)).collect()
    }

    fn fmt(&self, a: &R::Elem) -> String {
        self.alg.ring.format(a)
    }

    fn op(&self, text: &str, trace: Option<&mut Vec<TraceStep>>) -> Result<Nf<R>> {
        let e = self.alg.parse(text, &self.env)?;
        Ok(self.alg.normalize_with(&e, Strategy::Leftmost, trace))
    }
}

fn trace_lines(steps: &[TraceStep]) -> Vec<String> {
    steps.iter().map(|s| format!("{:?}: {} -> {}", s.rule, s.before, if s.after.is_empty() { "0".into() } else { s.after.join(" + ") })).collect()
}

fn run<R: IdRing>(ring: R, cli: &Cli) -> Result<Output> {
    let s = Session::new(ring, cli)?;
    let alg = &s.alg;
    match &cli.command {
        Command::Normalize { expr } => {
            let mut steps = Vec::new();
            let nf = s.op(expr, cli.trace.then_some(&mut steps))?;
            let mut text = String::new();
            for l in trace_lines(&steps) {
                let _ = writeln!(text, "  {l}");
            }
            let _ = writeln!(text, "{}", alg.format(&nf));
            Ok(Output::ok(text, json!({"normal_form": alg.to_json(&nf), "text": alg.format(&nf), "trace": trace_lines(&steps)})))
        }
        Command::Prove { lhs, rhs } => {
            let mut steps = Vec::new();
            let a = s.op(lhs, cli.trace.then_some(&mut steps))?;
            let b = s.op(rhs, cli.trace.then_some(&mut steps))?;
            let mut text = String::new();
            for l in trace_lines(&steps) {
                let _ = writeln!(text, "  {l}");
            }
            let _ = writeln!(text, "lhs: {}\nrhs: {}", alg.format(&a), alg.format(&b));
            match alg.compare(&a, &b) {
                Proof::Equal => {
                    text.push_str("equal\n");
                    Ok(Output::verdict(text, json!({"equal": true, "lhs": alg.format(&a), "rhs": alg.format(&b)}), true))
                }
                Proof::Unequal { witness } => {
                    let _ = writeln!(text, "unequal\nwitness (lhs − rhs): {}", alg.format(&witness));
                    let json = json!({"equal": false, "lhs": alg.format(&a), "rhs": alg.format(&b), "witness": alg.to_json(&witness), "witness_text": alg.format(&witness)});
                    Ok(Output::verdict(text, json, false))
                }
            }
        }
        Command::Confluence { .. } => unreachable!("handled without a ring"),
        Command::Shuffle { f, g } => {
            let r = &alg.ring;
            let (f, g) = (s.elems(f)?, s.elems(g)?);
            let gs = generalized_shuffle_expand(r, &f, &g)?;
            let direct = r.mul(&nested_integral(r, &f), &nested_integral(r, &g));
            let expanded = gs.evaluate(r);
            let agree = direct == expanded;
            let mut text = format!("shuffle: {}\n", gs.shuffle.format(r));
            for t in &gs.eval_terms {
                let _ = writeln!(text, "evaluation term (i={}, j={}): {} · [{}]", t.i, t.j, s.fmt(&t.coeff), t.shuffle.format(r));
            }
            let _ = writeln!(text, "direct product: {}\nexpansion: {}\nagree: {agree}", s.fmt(&direct), s.fmt(&expanded));
            let json = json!({"expansion": gs.to_json(r), "direct": s.fmt(&direct), "value": s.fmt(&expanded), "agree": agree});
            Ok(Output::verdict(text, json, agree))
        }
        Command::Taylor { f, n } => {
            let r = &alg.ring;
            let f = s.elem(f)?;
            let parts = taylor_parts(r, &f, *n)?;
            let sum = r.add(&r.add(&parts.poly, &parts.remainder), &parts.correction);
            let ok = sum == f;
            let text = format!(
                "polynomial: {}\nremainder: {}\ncorrection: {}\nsum equals f: {ok}\n",
                s.fmt(&parts.poly),
                s.fmt(&parts.remainder),
                s.fmt(&parts.correction)
            );
            let mut json = parts.to_json(|e| s.fmt(e));
            json["sum_equals_f"] = json!(ok);
            Ok(Output::verdict(text, json, ok))
        }
        Command::Xn { n } => {
            let r = &alg.ring;
            let mut text = String::new();
            let xs: Vec<String> = (0..=*n).map(|k| s.fmt(&x_n(r, k))).collect();
            for (k, x) in xs.iter().enumerate() {
                let _ = writeln!(text, "x_{k} = {x}");
            }
            let mut table = Vec::new();
            for m in 1..=*n {
                let row: Vec<String> = (1..=*n).map(|k| s.fmt(&c_mn(r, m, k))).collect();
                let _ = writeln!(text, "c_{m},k: {}", row.join(", "));
                table.push(row);
            }
            Ok(Output::ok(text, json!({"x": xs, "c": table})))
        }
        Command::Voc(args) => ode(&s, args, false),
        Command::Green(args) => ode(&s, args, true),
    }
}

fn scalar_matrix<R: IdRing>(text: &str) -> Result<Vec<Vec<R::Scalar>>> {
    match parse(text)? {
        Expr::Matrix(rows) => rows
            .iter()
            .map(|row| row.iter().map(|e| eval_scalar::<R>(e).ok_or_else(|| Error::Elaborate("matrix entries must be numbers".into()))).collect())
            .collect(),
        _ => Err(Error::Elaborate("expected a matrix literal [[..],..]".into())),
    }
}

fn ode<R: IdRing>(s: &Session<R>, args: &OdeArgs, green: bool) -> Result<Output> {
    let alg = &s.alg;
    let r = &alg.ring;
    let coeffs = s.elems(&args.a)?;
    let zs = s.elems(&args.z)?;
    let inv = args.inv.as_deref().map(|t| s.elem(t)).transpose()?;
    let n = zs.len();
    if coeffs.len() != n {
        return Err(Error::SizeMismatch(format!("{} coefficients for {} solutions", coeffs.len(), n)));
    }
    let (l, op) = if n == 1 {
        let (a, z) = (coeffs[0].clone(), zs[0].clone());
        let z_inv = inv.or_else(|| r.invert(&z));
        let ez_inv = r.invert(&r.evaluate(&z));
        let p = FirstOrderProblem::with_inverses(r, a, z, z_inv, ez_inv)?;
        let l = first_order_operator(alg, &p.a);
        let op = if green { green_first_order(alg, &p)? } else { right_inverse_first_order(alg, &p)? };
        (l, op)
    } else {
        let mut p = ScalarProblem::new(r, coeffs, zs)?;
        if inv.is_some() {
            p.w_inv = inv;
            p.validate(r)?;
        }
        if let Some(c) = &args.c {
            p = p.with_c(r, scalar_matrix::<R>(c)?)?;
        }
        let l = scalar_operator(alg, &p.coeffs);
        let op = if green { green_scalar(alg, &p)? } else { variation_of_constants(alg, &p)? };
        if args.companion && !green {
            let route = companion_right_inverse(alg, &p)?;
            let right = is_right_inverse(alg, &l, &op);
            let ok = right && route.matrix_is_right_inverse && route.entry_is_right_inverse && route.derivative_column && route.matches_direct;
            let text = format!(
                "L = {}\nH = {}\nL·H = 1: {right}\ncompanion: matrix right inverse {}, L·H_1n = 1 {}, H_in = ∂^(i−1)·H_1n {}, equals Wronskian formula {}\n",
                alg.format(&l),
                alg.format(&op),
                route.matrix_is_right_inverse,
                route.entry_is_right_inverse,
                route.derivative_column,
                route.matches_direct
            );
            let json = json!({
                "operator": alg.format(&l),
                "result": alg.to_json(&op),
                "result_text": alg.format(&op),
                "right_inverse": right,
                "companion": {
                    "matrix_right_inverse": route.matrix_is_right_inverse,
                    "entry_right_inverse": route.entry_is_right_inverse,
                    "derivative_column": route.derivative_column,
                    "matches_direct": route.matches_direct,
                    "last_column": route.last_column.iter().map(|h| alg.format(h)).collect::<Vec<_>>(),
                },
            });
            return Ok(Output::verdict(text, json, ok));
        }
        (l, op)
    };
    let right = is_right_inverse(alg, &l, &op);
    let name = if green { "G" } else { "H" };
    let mut text = format!("L = {}\n{name} = {}\nL·{name} = 1: {right}\n", alg.format(&l), alg.format(&op));
    let mut json = json!({"operator": alg.format(&l), "result": alg.to_json(&op), "result_text": alg.format(&op), "right_inverse": right});
    let mut ok = right;
    if green {
        let ics = initial_conditions(alg, &op, n);
        for (i, v) in ics.iter().enumerate() {
            let _ = writeln!(text, "E·∂^{i}·G = 0: {v}");
        }
        ok &= ics.iter().all(|v| *v);
        json["initial_conditions"] = json!(ics);
    }
    Ok(Output::verdict(text, json, ok))
}
