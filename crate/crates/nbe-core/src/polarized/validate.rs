//! Independent grammar and fringe validator for polarized normal forms:
//! values use variables only at atomic hypotheses, neutrals are rooted at
//! negative hypotheses, covers contain only return/bind, and every binder
//! body decomposes exactly its positive type.

use thiserror::Error;

use crate::kernel::Ctx;
use crate::stlc::{Proj, Side};

use super::infer::walk_add;
use super::{Add, CovZ, Hyp, NeZ, NfZ, TyN, TyP, VnfZ};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidateError {
    #[error("grammar violation: {0}")]
    Violation(String),
}

fn violation<T>(msg: impl Into<String>) -> Result<T, ValidateError> {
    Err(ValidateError::Violation(msg.into()))
}

pub fn check_vnfz(ctx: &Ctx<Hyp>, p: &TyP, v: &VnfZ) -> Result<(), ValidateError> {
    match v {
        VnfZ::Var(x) => {
            let TyP::Atom(o) = p else {
                return violation(format!("value variable at non-atomic type {p}"));
            };
            match ctx.get(*x) {
                Some(Hyp::AtomP(o2)) if o == o2 => Ok(()),
                Some(h) => violation(format!("variable is hypothesis {h}, expected a+ {o}")),
                None => violation(format!("unbound index {}", x.0)),
            }
        }
        VnfZ::Thunk(n) => match p {
            TyP::Thunk(ty) => check_nfz(ctx, ty, n),
            _ => violation(format!("thunk at type {p}")),
        },
        VnfZ::Unit => {
            if *p == TyP::One {
                Ok(())
            } else {
                violation(format!("unit at type {p}"))
            }
        }
        VnfZ::Pair(a, b) => match p {
            TyP::Prod(p1, p2) => {
                check_vnfz(ctx, p1, a)?;
                check_vnfz(ctx, p2, b)
            }
            _ => violation(format!("pair at type {p}")),
        },
        VnfZ::Inj(side, v) => match (side, p) {
            (Side::Inl, TyP::Sum(p1, _)) => check_vnfz(ctx, p1, v),
            (Side::Inr, TyP::Sum(_, p2)) => check_vnfz(ctx, p2, v),
            _ => violation(format!("injection at type {p}")),
        },
    }
}

pub fn check_nez(ctx: &Ctx<Hyp>, u: &NeZ) -> Result<TyN, ValidateError> {
    match u {
        NeZ::Var(x) => match ctx.get(*x) {
            Some(Hyp::Neg(n)) => Ok(n.clone()),
            Some(h) => violation(format!("neutral rooted at hypothesis {h}")),
            None => violation(format!("unbound index {}", x.0)),
        },
        NeZ::App(u, v) => match check_nez(ctx, u)? {
            TyN::Arr(dom, cod) => {
                check_vnfz(ctx, &dom, v)?;
                Ok(*cod)
            }
            ty => violation(format!("application head has type {ty}")),
        },
        NeZ::Prj(p, u) => match check_nez(ctx, u)? {
            TyN::With(a, b) => Ok(match p {
                Proj::Fst => *a,
                Proj::Snd => *b,
            }),
            ty => violation(format!("projection head has type {ty}")),
        },
    }
}

/// Check that `t` decomposes exactly `p`, running `leaf` at each fringe
/// point with the extended context.
pub fn check_add<J>(
    ctx: &Ctx<Hyp>,
    p: &TyP,
    t: &Add<J>,
    leaf: &dyn Fn(&Ctx<Hyp>, &J) -> Result<(), ValidateError>,
) -> Result<(), ValidateError> {
    walk_add(ctx, p, t, &|ctx2, rest| match rest {
        Add::Leaf(j) => leaf(ctx2, j).map_err(|e| super::infer::TypeError::TypeMismatch {
            expected: "valid leaf".to_string(),
            found: e.to_string(),
        }),
        _ => Err(super::infer::TypeError::FringeMismatch {
            ty: p.to_string(),
            node: "non-leaf below a complete decomposition".to_string(),
        }),
    })
    .map_err(|e| ValidateError::Violation(e.to_string()))
}

fn check_covz<J>(
    ctx: &Ctx<Hyp>,
    c: &CovZ<J>,
    leaf: &dyn Fn(&Ctx<Hyp>, &J) -> Result<(), ValidateError>,
) -> Result<(), ValidateError> {
    match c {
        CovZ::Return(j) => leaf(ctx, j),
        CovZ::Bind { ann, scrut, body } => {
            match check_nez(ctx, scrut)? {
                TyN::Comp(p) if *p == *ann => {}
                ty => {
                    return violation(format!(
                        "bind scrutinee has type {ty}, annotation says F ({ann})"
                    ))
                }
            }
            check_add(ctx, ann, body, &|ctx2, c2| check_covz(ctx2, c2, leaf))
        }
    }
}

pub fn check_nfz(ctx: &Ctx<Hyp>, n: &TyN, t: &NfZ) -> Result<(), ValidateError> {
    match (t, n) {
        (NfZ::NeAtom(c), TyN::Atom(_)) => check_covz(ctx, c, &|ctx, u| {
            let ty = check_nez(ctx, u)?;
            if ty == *n {
                Ok(())
            } else {
                violation(format!("neutral leaf has type {ty}, expected {n}"))
            }
        }),
        (NfZ::Ret(c), TyN::Comp(p)) => check_covz(ctx, c, &|ctx, v| check_vnfz(ctx, p, v)),
        (NfZ::UnitN, TyN::Top) => Ok(()),
        (NfZ::PairN(a, b), TyN::With(n1, n2)) => {
            check_nfz(ctx, n1, a)?;
            check_nfz(ctx, n2, b)
        }
        (NfZ::Abs(dom, body), TyN::Arr(p, cod)) if dom == &**p => {
            check_add(ctx, dom, body, &|ctx2, nf| check_nfz(ctx2, cod, nf))
        }
        _ => violation(format!("normal term {t:?} at type {n}")),
    }
}
