//! Unreduced operator expressions and their elaboration from text.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ring::IdRing;
use crate::syntax::{eval_elem, eval_scalar, parse, Defs, Expr};

use super::functional::FunctionalTable;

/// A generator of the operator ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    /// The derivation `∂`.
    D,
    /// The integration `∫`.
    I,
    /// A functional by table index; index `0` is `E`.
    Phi(usize),
}

/// An operator expression tree; arbitrary unreduced input is allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpExpr<E> {
    /// Sum of the operands.
    Sum(Vec<OpExpr<E>>),
    /// Product of the operands, left to right.
    Prod(Vec<OpExpr<E>>),
    /// Multiplication by a ring element.
    Coeff(E),
    /// A generator.
    Gen(Gen),
}

impl<E> OpExpr<E> {
    /// The derivation.
    pub fn d() -> Self {
        OpExpr::Gen(Gen::D)
    }
    /// The integration.
    pub fn i() -> Self {
        OpExpr::Gen(Gen::I)
    }
    /// The evaluation.
    pub fn e() -> Self {
        OpExpr::Gen(Gen::Phi(0))
    }
}

/// Named definitions available during elaboration: ring elements and
/// operators.
#[derive(Clone, Debug)]
pub struct Env<E> {
    /// Named ring elements.
    pub elems: Defs<E>,
    /// Named operators.
    pub ops: BTreeMap<String, OpExpr<E>>,
}

impl<E> Default for Env<E> {
    fn default() -> Self {
        Env { elems: BTreeMap::new(), ops: BTreeMap::new() }
    }
}

impl<E: Clone> Env<E> {
    /// An empty environment.
    pub fn new() -> Self {
        Self::default()
    }
}

fn mentions_operators<E>(e: &Expr, env: &Env<E>) -> bool {
    match e {
        Expr::Ident(n) => matches!(n.as_str(), "d" | "i" | "e") || env.ops.contains_key(n),
        Expr::Phi(_) => true,
        Expr::Int(_) | Expr::Call(..) | Expr::Matrix(_) => false,
        Expr::Add(v) | Expr::Mul(v) => v.iter().any(|t| mentions_operators(t, env)),
        Expr::Neg(a) | Expr::Pow(a, _) | Expr::Deriv(a) | Expr::Integ(a) => mentions_operators(a, env),
        Expr::Div(a, b) => mentions_operators(a, env) || mentions_operators(b, env),
    }
}

/// Elaborates a parsed expression into an operator expression over `ring`.
///
/// Subexpressions without operator generators are evaluated as ring
/// elements; `d`, `i`, `e` and `phi:<name>` become generators.
pub fn elaborate<R: IdRing>(ring: &R, funcs: &FunctionalTable<R::Elem>, env: &Env<R::Elem>, e: &Expr) -> Result<OpExpr<R::Elem>> {
    if !mentions_operators(e, env) {
        return Ok(OpExpr::Coeff(eval_elem(ring, e, &env.elems)?));
    }
    let go = |x: &Expr| elaborate(ring, funcs, env, x);
    match e {
        Expr::Ident(n) => match n.as_str() {
            "d" => Ok(OpExpr::d()),
            "i" => Ok(OpExpr::i()),
            "e" => Ok(OpExpr::e()),
            _ => env.ops.get(n).cloned().ok_or_else(|| Error::Elaborate(format!("unknown name '{n}'"))),
        },
        Expr::Phi(name) => Ok(OpExpr::Gen(Gen::Phi(funcs.index(name)?))),
        Expr::Add(v) => Ok(OpExpr::Sum(v.iter().map(go).collect::<Result<_>>()?)),
        Expr::Mul(v) => Ok(OpExpr::Prod(v.iter().map(go).collect::<Result<_>>()?)),
        Expr::Neg(a) => Ok(OpExpr::Prod(vec![OpExpr::Coeff(ring.neg(&ring.one())), go(a)?])),
        Expr::Div(a, b) => {
            let c = eval_scalar::<R>(b).ok_or_else(|| Error::Elaborate("divisor must be a nonzero number".into()))?;
            let ci = crate::scalar::Scalar::inv(&c).ok_or_else(|| Error::NotInvertible(format!("{c}")))?;
            Ok(OpExpr::Prod(vec![OpExpr::Coeff(ring.constant(&ci)), go(a)?]))
        }
        Expr::Pow(a, k) => {
            if *k < 0 {
                return Err(Error::Elaborate("negative powers of operators are not defined".into()));
            }
            let base = go(a)?;
            Ok(OpExpr::Prod(vec![base; *k as usize]))
        }
        Expr::Deriv(_) | Expr::Integ(_) => Err(Error::Elaborate("'D' and 'I' apply to ring elements only".into())),
        Expr::Int(_) | Expr::Call(..) | Expr::Matrix(_) => unreachable!("operator-free expressions are evaluated above"),
    }
}

/// Parses and elaborates operator text.
pub fn parse_operator<R: IdRing>(ring: &R, funcs: &FunctionalTable<R::Elem>, env: &Env<R::Elem>, text: &str) -> Result<OpExpr<R::Elem>> {
    elaborate(ring, funcs, env, &parse(text)?)
}

/// Applies an expression directly to a ring element, by recursion on the
/// tree; the reference semantics for the action of normal forms.
pub fn apply_expr<R: IdRing>(ring: &R, funcs: &FunctionalTable<R::Elem>, e: &OpExpr<R::Elem>, f: &R::Elem) -> R::Elem {
    match e {
        OpExpr::Sum(v) => v.iter().fold(ring.zero(), |acc, t| ring.add(&acc, &apply_expr(ring, funcs, t, f))),
        OpExpr::Prod(v) => v.iter().rev().fold(f.clone(), |acc, t| apply_expr(ring, funcs, t, &acc)),
        OpExpr::Coeff(g) => ring.mul(g, f),
        OpExpr::Gen(Gen::D) => ring.derive(f),
        OpExpr::Gen(Gen::I) => ring.integrate(f),
        OpExpr::Gen(Gen::Phi(k)) => funcs.apply(ring, *k, f),
    }
}
