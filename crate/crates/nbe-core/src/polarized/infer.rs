//! Type inference for the polarized calculus. Binder bodies are `Add`
//! trees; checking them walks the tree against the decomposition of the
//! bound positive type, which doubles as a fringe-shape check.

use thiserror::Error;

use crate::kernel::Ctx;
use crate::stlc::{Proj, Side};

use super::{Add, Hyp, TmZ, TyN, TyP, ValZ};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeError {
    #[error("unbound variable: index {index} in a context of length {len}")]
    UnboundVariable { index: usize, len: usize },
    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch { expected: String, found: String },
    #[error("pattern tree does not decompose {ty}: unexpected {node}")]
    FringeMismatch { ty: String, node: String },
}

fn mismatch<T>(expected: impl Into<String>, found: impl std::fmt::Display) -> Result<T, TypeError> {
    Err(TypeError::TypeMismatch {
        expected: expected.into(),
        found: found.to_string(),
    })
}

fn fringe<T>(ty: &TyP, node: &str) -> Result<T, TypeError> {
    Err(TypeError::FringeMismatch {
        ty: ty.to_string(),
        node: node.to_string(),
    })
}

fn node_name<J>(t: &Add<J>) -> &'static str {
    match t {
        Add::Leaf(_) => "leaf",
        Add::HypP(_, _) => "hyp+",
        Add::HypN(_, _) => "hyp-",
        Add::Branch0 => "branch0",
        Add::Branch2(_, _) => "branch2",
        Add::Split0(_) => "split0",
        Add::Split2(_) => "split2",
    }
}

/// Walk an `Add` tree along the decomposition of `p`, calling `k` at each
/// point where `p` is fully decomposed. The continuation sees the extended
/// context and the remaining subtree (a leaf for outermost calls, a deeper
/// decomposition inside `Split2`).
pub fn walk_add<J>(
    ctx: &Ctx<Hyp>,
    p: &TyP,
    t: &Add<J>,
    k: &dyn Fn(&Ctx<Hyp>, &Add<J>) -> Result<(), TypeError>,
) -> Result<(), TypeError> {
    match (p, t) {
        (TyP::Atom(o), Add::HypP(o2, rest)) if o == o2 => {
            k(&ctx.snoc(Hyp::AtomP(o.clone())), rest)
        }
        (TyP::Thunk(n), Add::HypN(n2, rest)) if **n == *n2 => {
            k(&ctx.snoc(Hyp::Neg((**n).clone())), rest)
        }
        (TyP::Zero, Add::Branch0) => Ok(()),
        (TyP::Sum(p1, p2), Add::Branch2(l, r)) => {
            walk_add(ctx, p1, l, k)?;
            walk_add(ctx, p2, r, k)
        }
        (TyP::One, Add::Split0(rest)) => k(ctx, rest),
        (TyP::Prod(p1, p2), Add::Split2(inner)) => {
            walk_add(ctx, p1, inner, &|ctx2, rest| walk_add(ctx2, p2, rest, k))
        }
        _ => fringe(p, node_name(t)),
    }
}

/// Check that a binder body decomposes `p` and that every leaf has type
/// `expected`.
pub fn check_body(
    ctx: &Ctx<Hyp>,
    p: &TyP,
    body: &Add<TmZ>,
    expected: &TyN,
) -> Result<(), TypeError> {
    walk_add(ctx, p, body, &|ctx2, rest| match rest {
        Add::Leaf(tm) => {
            let ty = infer_tmz(ctx2, tm)?;
            if ty == *expected {
                Ok(())
            } else {
                mismatch(expected.to_string(), ty)
            }
        }
        other => fringe(p, node_name(other)),
    })
}

/// Infer the positive type of a value.
pub fn infer_valz(ctx: &Ctx<Hyp>, v: &ValZ) -> Result<TyP, TypeError> {
    match v {
        ValZ::Var(x) => match ctx.get(*x) {
            Some(Hyp::AtomP(o)) => Ok(TyP::Atom(o.clone())),
            Some(Hyp::Neg(n)) => mismatch("a positive atom", n),
            None => Err(TypeError::UnboundVariable {
                index: x.0,
                len: ctx.len(),
            }),
        },
        ValZ::Thunk(t) => Ok(TyP::thunk(infer_tmz(ctx, t)?)),
        ValZ::Unit => Ok(TyP::One),
        ValZ::Pair(a, b) => Ok(TyP::prod(infer_valz(ctx, a)?, infer_valz(ctx, b)?)),
        ValZ::Inj(Side::Inl, other, v) => Ok(TyP::sum(infer_valz(ctx, v)?, other.clone())),
        ValZ::Inj(Side::Inr, other, v) => Ok(TyP::sum(other.clone(), infer_valz(ctx, v)?)),
    }
}

/// Infer the negative type of a term.
pub fn infer_tmz(ctx: &Ctx<Hyp>, t: &TmZ) -> Result<TyN, TypeError> {
    match t {
        TmZ::VarN(x) => match ctx.get(*x) {
            Some(Hyp::Neg(n)) => Ok(n.clone()),
            Some(Hyp::AtomP(o)) => mismatch("a negative hypothesis", format!("a+ {o}")),
            None => Err(TypeError::UnboundVariable {
                index: x.0,
                len: ctx.len(),
            }),
        },
        TmZ::Ret(v) => Ok(TyN::comp(infer_valz(ctx, v)?)),
        TmZ::Abs(dom, cod, body) => {
            check_body(ctx, dom, body, cod)?;
            Ok(TyN::arr(dom.clone(), cod.clone()))
        }
        TmZ::PairN(a, b) => Ok(TyN::with(infer_tmz(ctx, a)?, infer_tmz(ctx, b)?)),
        TmZ::UnitN => Ok(TyN::Top),
        TmZ::Force(v) => match infer_valz(ctx, v)? {
            TyP::Thunk(n) => Ok(*n),
            ty => mismatch("a thunk type", ty),
        },
        TmZ::App(t, v) => match infer_tmz(ctx, t)? {
            TyN::Arr(dom, cod) => {
                let arg = infer_valz(ctx, v)?;
                if arg == *dom {
                    Ok(*cod)
                } else {
                    mismatch(dom.to_string(), arg)
                }
            }
            ty => mismatch("a function type", ty),
        },
        TmZ::Prj(p, t) => match infer_tmz(ctx, t)? {
            TyN::With(a, b) => Ok(match p {
                Proj::Fst => *a,
                Proj::Snd => *b,
            }),
            ty => mismatch("a with type", ty),
        },
        TmZ::Bind(ann, result, u, body) => {
            match infer_tmz(ctx, u)? {
                TyN::Comp(p) if *p == *ann => {}
                ty => return mismatch(format!("F ({ann})"), ty),
            }
            check_body(ctx, ann, body, result)?;
            Ok(result.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_variable() {
        let n = TyN::atom("n");
        let ctx = Ctx::from_entries(vec![Hyp::Neg(n.clone())]);
        assert_eq!(infer_tmz(&ctx, &TmZ::var_n(0)).unwrap(), n);
    }

    #[test]
    fn abs_over_sum_branches() {
        let o = TyP::atom("o");
        let dom = TyP::sum(o.clone(), o.clone());
        let cod = TyN::comp(o.clone());
        let body = Add::branch2(
            Add::hyp_p("o", Add::Leaf(TmZ::ret(ValZ::var(0)))),
            Add::hyp_p("o", Add::Leaf(TmZ::ret(ValZ::var(0)))),
        );
        let t = TmZ::abs(dom.clone(), cod.clone(), body);
        assert_eq!(infer_tmz(&Ctx::empty(), &t).unwrap(), TyN::arr(dom, cod));
    }

    #[test]
    fn abs_over_product_nests() {
        let o = TyP::atom("o");
        let dom = TyP::prod(o.clone(), o.clone());
        let cod = TyN::comp(o.clone());
        // First factor is bound outermost, so the codiagonal-ish body
        // returning the first component uses index 1.
        let body = Add::split2(Add::hyp_p(
            "o",
            Add::hyp_p("o", Add::Leaf(TmZ::ret(ValZ::var(1)))),
        ));
        let t = TmZ::abs(dom.clone(), cod.clone(), body);
        assert_eq!(infer_tmz(&Ctx::empty(), &t).unwrap(), TyN::arr(dom, cod));
    }

    #[test]
    fn wrong_fringe_is_rejected() {
        let o = TyP::atom("o");
        let dom = TyP::sum(o.clone(), o.clone());
        let cod = TyN::comp(o.clone());
        let body = Add::hyp_p("o", Add::Leaf(TmZ::ret(ValZ::var(0))));
        let t = TmZ::abs(dom, cod, body);
        assert!(matches!(
            infer_tmz(&Ctx::empty(), &t),
            Err(TypeError::FringeMismatch { .. })
        ));
    }

    #[test]
    fn empty_domain_abs_has_a_type() {
        let dom = TyP::Zero;
        let cod = TyN::Top;
        let t = TmZ::abs(dom.clone(), cod.clone(), Add::Branch0);
        assert_eq!(infer_tmz(&Ctx::empty(), &t).unwrap(), TyN::arr(dom, cod));
    }
}
