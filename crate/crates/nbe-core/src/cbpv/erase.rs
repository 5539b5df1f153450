//! Erasure from CBPV normal forms back to raw terms and values. Cover
//! nodes reconstruct the corresponding eliminations applied to variables
//! (or, for `Bind`, to the erased neutral); this is total because the cover
//! grammar only scrutinizes variables and neutrals.

use crate::kernel::Ctx;
use crate::stlc::{Proj, Side};

use super::infer::TypeError;
use super::{CovC, NeC, NfC, Tm, TyN, TyP, Val, VnfC};

fn mismatch<T>(expected: impl Into<String>, found: impl std::fmt::Display) -> Result<T, TypeError> {
    Err(TypeError::TypeMismatch {
        expected: expected.into(),
        found: found.to_string(),
    })
}

/// Erase a normal value against its positive type.
pub fn erase_vnf(ctx: &Ctx<TyP>, p: &TyP, v: &VnfC) -> Result<Val, TypeError> {
    match (v, p) {
        (VnfC::Var(x), TyP::Atom(_)) => Ok(Val::Var(*x)),
        (VnfC::Thunk(n), TyP::Thunk(ty)) => Ok(Val::thunk(erase_nf(ctx, ty, n)?)),
        (VnfC::Unit, TyP::One) => Ok(Val::Unit),
        (VnfC::Pair(a, b), TyP::Prod(p1, p2)) => Ok(Val::pair(
            erase_vnf(ctx, p1, a)?,
            erase_vnf(ctx, p2, b)?,
        )),
        (VnfC::Inj(Side::Inl, v), TyP::Sum(p1, p2)) => Ok(Val::inj(
            Side::Inl,
            (**p2).clone(),
            erase_vnf(ctx, p1, v)?,
        )),
        (VnfC::Inj(Side::Inr, v), TyP::Sum(p1, p2)) => Ok(Val::inj(
            Side::Inr,
            (**p1).clone(),
            erase_vnf(ctx, p2, v)?,
        )),
        _ => mismatch(p.to_string(), format!("normal value {v:?}")),
    }
}

/// Erase a neutral, synthesizing its negative type.
pub fn erase_ne(ctx: &Ctx<TyP>, u: &NeC) -> Result<(Tm, TyN), TypeError> {
    match u {
        NeC::Force(x) => match ctx.get(*x) {
            Some(TyP::Thunk(n)) => Ok((Tm::force(Val::Var(*x)), (**n).clone())),
            Some(ty) => mismatch("a thunk type", ty),
            None => Err(TypeError::UnboundVariable {
                index: x.0,
                len: ctx.len(),
            }),
        },
        NeC::App(u, v) => {
            let (tu, ty) = erase_ne(ctx, u)?;
            match ty {
                TyN::Arr(dom, cod) => {
                    Ok((Tm::app(tu, erase_vnf(ctx, &dom, v)?), *cod))
                }
                ty => mismatch("a function type", ty),
            }
        }
        NeC::Prj(p, u) => {
            let (tu, ty) = erase_ne(ctx, u)?;
            match ty {
                TyN::With(a, b) => Ok((
                    Tm::prj(*p, tu),
                    match p {
                        Proj::Fst => *a,
                        Proj::Snd => *b,
                    },
                )),
                ty => mismatch("a with type", ty),
            }
        }
    }
}

/// Erase a cover whose leaves erase through `leaf`. The result type `n` of
/// the whole term is needed for `Abort`.
fn erase_cov<J>(
    ctx: &Ctx<TyP>,
    n: &TyN,
    c: &CovC<J>,
    leaf: &dyn Fn(&Ctx<TyP>, &J) -> Result<Tm, TypeError>,
) -> Result<Tm, TypeError> {
    match c {
        CovC::Return(j) => leaf(ctx, j),
        CovC::Bind { ann, scrut, body } => {
            let (tu, _) = erase_ne(ctx, scrut)?;
            Ok(Tm::bind(
                ann.clone(),
                tu,
                erase_cov(&ctx.snoc(ann.clone()), n, body, leaf)?,
            ))
        }
        CovC::Split { scrut, tys, body } => Ok(Tm::split(
            Val::Var(*scrut),
            erase_cov(
                &ctx.snoc(tys.0.clone()).snoc(tys.1.clone()),
                n,
                body,
                leaf,
            )?,
        )),
        CovC::Case { scrut, tys, left, right } => Ok(Tm::case(
            Val::Var(*scrut),
            erase_cov(&ctx.snoc(tys.0.clone()), n, left, leaf)?,
            erase_cov(&ctx.snoc(tys.1.clone()), n, right, leaf)?,
        )),
        CovC::Abort { scrut } => Ok(Tm::abort(n.clone(), Val::Var(*scrut))),
    }
}

/// Erase a normal term against its negative type.
pub fn erase_nf(ctx: &Ctx<TyP>, n: &TyN, t: &NfC) -> Result<Tm, TypeError> {
    match (t, n) {
        (NfC::NeAtom(c), TyN::Atom(_)) => {
            erase_cov(ctx, n, c, &|ctx, u| Ok(erase_ne(ctx, u)?.0))
        }
        (NfC::Ret(c), TyN::Comp(p)) => erase_cov(ctx, n, c, &|ctx, v| {
            Ok(Tm::ret(erase_vnf(ctx, p, v)?))
        }),
        (NfC::UnitN, TyN::Top) => Ok(Tm::UnitN),
        (NfC::PairN(a, b), TyN::With(n1, n2)) => Ok(Tm::pair_n(
            erase_nf(ctx, n1, a)?,
            erase_nf(ctx, n2, b)?,
        )),
        (NfC::Abs(dom, b), TyN::Arr(p, cod)) if dom == &**p => Ok(Tm::abs(
            dom.clone(),
            erase_nf(&ctx.snoc(dom.clone()), cod, b)?,
        )),
        _ => mismatch(n.to_string(), format!("normal term {t:?}")),
    }
}
