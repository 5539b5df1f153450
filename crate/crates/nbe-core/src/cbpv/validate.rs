//! Independent grammar validator for CBPV normal forms: normal values use
//! variables only at positive atoms, neutrals are rooted at forced thunk
//! variables, and cover nodes scrutinize variables of the right shapes
//! (neutrals only under `Bind`).

use thiserror::Error;

use crate::kernel::Ctx;
use crate::stlc::{Proj, Side};

use super::{CovC, NeC, NfC, TyN, TyP, VnfC};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidateError {
    #[error("grammar violation: {0}")]
    Violation(String),
}

fn violation<T>(msg: impl Into<String>) -> Result<T, ValidateError> {
    Err(ValidateError::Violation(msg.into()))
}

pub fn check_vnf(ctx: &Ctx<TyP>, p: &TyP, v: &VnfC) -> Result<(), ValidateError> {
    match v {
        VnfC::Var(x) => {
            if !matches!(p, TyP::Atom(_)) {
                return violation(format!("value variable at non-atomic type {p}"));
            }
            match ctx.get(*x) {
                Some(ty) if ty == p => Ok(()),
                Some(ty) => violation(format!("variable has type {ty}, expected {p}")),
                None => violation(format!("unbound index {}", x.0)),
            }
        }
        VnfC::Thunk(n) => match p {
            TyP::Thunk(ty) => check_nf(ctx, ty, n),
            _ => violation(format!("thunk at type {p}")),
        },
        VnfC::Unit => {
            if *p == TyP::One {
                Ok(())
            } else {
                violation(format!("unit at type {p}"))
            }
        }
        VnfC::Pair(a, b) => match p {
            TyP::Prod(p1, p2) => {
                check_vnf(ctx, p1, a)?;
                check_vnf(ctx, p2, b)
            }
            _ => violation(format!("pair at type {p}")),
        },
        VnfC::Inj(side, v) => match (side, p) {
            (Side::Inl, TyP::Sum(p1, _)) => check_vnf(ctx, p1, v),
            (Side::Inr, TyP::Sum(_, p2)) => check_vnf(ctx, p2, v),
            _ => violation(format!("injection at type {p}")),
        },
    }
}

pub fn check_ne(ctx: &Ctx<TyP>, u: &NeC) -> Result<TyN, ValidateError> {
    match u {
        NeC::Force(x) => match ctx.get(*x) {
            Some(TyP::Thunk(n)) => Ok((**n).clone()),
            Some(ty) => violation(format!("forced a variable of type {ty}")),
            None => violation(format!("unbound index {}", x.0)),
        },
        NeC::App(u, v) => match check_ne(ctx, u)? {
            TyN::Arr(dom, cod) => {
                check_vnf(ctx, &dom, v)?;
                Ok(*cod)
            }
            ty => violation(format!("application head has type {ty}")),
        },
        NeC::Prj(p, u) => match check_ne(ctx, u)? {
            TyN::With(a, b) => Ok(match p {
                Proj::Fst => *a,
                Proj::Snd => *b,
            }),
            ty => violation(format!("projection head has type {ty}")),
        },
    }
}

fn check_cov<J>(
    ctx: &Ctx<TyP>,
    c: &CovC<J>,
    leaf: &dyn Fn(&Ctx<TyP>, &J) -> Result<(), ValidateError>,
) -> Result<(), ValidateError> {
    match c {
        CovC::Return(j) => leaf(ctx, j),
        CovC::Bind { ann, scrut, body } => {
            match check_ne(ctx, scrut)? {
                TyN::Comp(p) if *p == *ann => {}
                ty => {
                    return violation(format!(
                        "bind scrutinee has type {ty}, annotation says F ({ann})"
                    ))
                }
            }
            check_cov(&ctx.snoc(ann.clone()), body, leaf)
        }
        CovC::Split { scrut, tys, body } => {
            match ctx.get(*scrut) {
                Some(TyP::Prod(p1, p2)) if **p1 == tys.0 && **p2 == tys.1 => {}
                Some(ty) => return violation(format!("split scrutinee has type {ty}")),
                None => return violation(format!("unbound index {}", scrut.0)),
            }
            check_cov(&ctx.snoc(tys.0.clone()).snoc(tys.1.clone()), body, leaf)
        }
        CovC::Case { scrut, tys, left, right } => {
            match ctx.get(*scrut) {
                Some(TyP::Sum(p1, p2)) if **p1 == tys.0 && **p2 == tys.1 => {}
                Some(ty) => return violation(format!("case scrutinee has type {ty}")),
                None => return violation(format!("unbound index {}", scrut.0)),
            }
            check_cov(&ctx.snoc(tys.0.clone()), left, leaf)?;
            check_cov(&ctx.snoc(tys.1.clone()), right, leaf)
        }
        CovC::Abort { scrut } => match ctx.get(*scrut) {
            Some(TyP::Zero) => Ok(()),
            Some(ty) => violation(format!("abort scrutinee has type {ty}")),
            None => violation(format!("unbound index {}", scrut.0)),
        },
    }
}

pub fn check_nf(ctx: &Ctx<TyP>, n: &TyN, t: &NfC) -> Result<(), ValidateError> {
    match (t, n) {
        (NfC::NeAtom(c), TyN::Atom(_)) => check_cov(ctx, c, &|ctx, u| {
            let ty = check_ne(ctx, u)?;
            if ty == *n {
                Ok(())
            } else {
                violation(format!("neutral leaf has type {ty}, expected {n}"))
            }
        }),
        (NfC::Ret(c), TyN::Comp(p)) => check_cov(ctx, c, &|ctx, v| check_vnf(ctx, p, v)),
        (NfC::UnitN, TyN::Top) => Ok(()),
        (NfC::PairN(a, b), TyN::With(n1, n2)) => {
            check_nf(ctx, n1, a)?;
            check_nf(ctx, n2, b)
        }
        (NfC::Abs(dom, b), TyN::Arr(p, cod)) if dom == &**p => {
            check_nf(&ctx.snoc(dom.clone()), cod, b)
        }
        _ => violation(format!("normal term {t:?} at type {n}")),
    }
}
