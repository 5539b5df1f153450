//! Bidirectional-free type inference for CBPV values and terms. All binders
//! are annotated, so inference is syntax-directed.

use thiserror::Error;

use crate::kernel::Ctx;
use crate::stlc::{Proj, Side};

use super::{Tm, TyN, TyP, Val};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeError {
    #[error("unbound variable: index {index} in a context of length {len}")]
    UnboundVariable { index: usize, len: usize },
    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch { expected: String, found: String },
    #[error("case branches have different types: {left} vs {right}")]
    BranchTypeDisagreement { left: String, right: String },
}

fn mismatch<T>(expected: impl Into<String>, found: impl std::fmt::Display) -> Result<T, TypeError> {
    Err(TypeError::TypeMismatch {
        expected: expected.into(),
        found: found.to_string(),
    })
}

/// Infer the positive type of a value.
pub fn infer_val(ctx: &Ctx<TyP>, v: &Val) -> Result<TyP, TypeError> {
    match v {
        Val::Var(x) => ctx.get(*x).cloned().ok_or(TypeError::UnboundVariable {
            index: x.0,
            len: ctx.len(),
        }),
        Val::Thunk(t) => Ok(TyP::thunk(infer_tm(ctx, t)?)),
        Val::Unit => Ok(TyP::One),
        Val::Pair(a, b) => Ok(TyP::prod(infer_val(ctx, a)?, infer_val(ctx, b)?)),
        Val::Inj(Side::Inl, other, v) => Ok(TyP::sum(infer_val(ctx, v)?, other.clone())),
        Val::Inj(Side::Inr, other, v) => Ok(TyP::sum(other.clone(), infer_val(ctx, v)?)),
    }
}

/// Infer the negative type of a term.
pub fn infer_tm(ctx: &Ctx<TyP>, t: &Tm) -> Result<TyN, TypeError> {
    match t {
        Tm::Ret(v) => Ok(TyN::comp(infer_val(ctx, v)?)),
        Tm::Abs(dom, body) => Ok(TyN::arr(
            dom.clone(),
            infer_tm(&ctx.snoc(dom.clone()), body)?,
        )),
        Tm::PairN(a, b) => Ok(TyN::with(infer_tm(ctx, a)?, infer_tm(ctx, b)?)),
        Tm::UnitN => Ok(TyN::Top),
        Tm::Force(v) => match infer_val(ctx, v)? {
            TyP::Thunk(n) => Ok(*n),
            ty => mismatch("a thunk type", ty),
        },
        Tm::App(t, v) => match infer_tm(ctx, t)? {
            TyN::Arr(dom, cod) => {
                let arg = infer_val(ctx, v)?;
                if arg == *dom {
                    Ok(*cod)
                } else {
                    mismatch(dom.to_string(), arg)
                }
            }
            ty => mismatch("a function type", ty),
        },
        Tm::Prj(p, t) => match infer_tm(ctx, t)? {
            TyN::With(a, b) => Ok(match p {
                Proj::Fst => *a,
                Proj::Snd => *b,
            }),
            ty => mismatch("a with type", ty),
        },
        Tm::Bind(ann, u, t) => match infer_tm(ctx, u)? {
            TyN::Comp(p) if *p == *ann => infer_tm(&ctx.snoc(ann.clone()), t),
            ty => mismatch(format!("F ({ann})"), ty),
        },
        Tm::Split(v, t) => match infer_val(ctx, v)? {
            TyP::Prod(p1, p2) => infer_tm(&ctx.snoc(*p1).snoc(*p2), t),
            ty => mismatch("a positive product type", ty),
        },
        Tm::Case(v, l, r) => match infer_val(ctx, v)? {
            TyP::Sum(p1, p2) => {
                let tl = infer_tm(&ctx.snoc(*p1), l)?;
                let tr = infer_tm(&ctx.snoc(*p2), r)?;
                if tl == tr {
                    Ok(tl)
                } else {
                    Err(TypeError::BranchTypeDisagreement {
                        left: tl.to_string(),
                        right: tr.to_string(),
                    })
                }
            }
            ty => mismatch("a sum type", ty),
        },
        Tm::Abort(result, v) => match infer_val(ctx, v)? {
            TyP::Zero => Ok(result.clone()),
            ty => mismatch("0", ty),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn force_rule() {
        let n = TyN::atom("n");
        let ctx = Ctx::from_entries(vec![TyP::thunk(n.clone())]);
        assert_eq!(infer_tm(&ctx, &Tm::force(Val::var(0))).unwrap(), n);
    }

    #[test]
    fn abs_ret() {
        let p = TyP::atom("p");
        let t = Tm::abs(p.clone(), Tm::ret(Val::var(0)));
        assert_eq!(
            infer_tm(&Ctx::empty(), &t).unwrap(),
            TyN::arr(p.clone(), TyN::comp(p))
        );
    }

    #[test]
    fn bad_bind() {
        let t = Tm::bind(TyP::One, Tm::UnitN, Tm::ret(Val::var(0)));
        assert!(matches!(
            infer_tm(&Ctx::empty(), &t),
            Err(TypeError::TypeMismatch { .. })
        ));
    }
}
