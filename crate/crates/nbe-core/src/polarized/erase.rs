//! Erasure from polarized normal forms back to terms. Normal constructors
//! map to themselves, binder trees are kept as `Add` bodies, and neutrals
//! re-root at their negative variable.

use crate::kernel::Ctx;
use crate::stlc::{Proj, Side};

use super::infer::TypeError;
use super::{Add, CovZ, Hyp, NeZ, NfZ, TmZ, TyN, TyP, ValZ, VnfZ};

fn mismatch<T>(expected: impl Into<String>, found: impl std::fmt::Display) -> Result<T, TypeError> {
    Err(TypeError::TypeMismatch {
        expected: expected.into(),
        found: found.to_string(),
    })
}

/// Erase a normal value against its positive type.
pub fn erase_vnfz(ctx: &Ctx<Hyp>, p: &TyP, v: &VnfZ) -> Result<ValZ, TypeError> {
    match (v, p) {
        (VnfZ::Var(x), TyP::Atom(_)) => Ok(ValZ::Var(*x)),
        (VnfZ::Thunk(n), TyP::Thunk(ty)) => Ok(ValZ::thunk(erase_nfz(ctx, ty, n)?)),
        (VnfZ::Unit, TyP::One) => Ok(ValZ::Unit),
        (VnfZ::Pair(a, b), TyP::Prod(p1, p2)) => Ok(ValZ::pair(
            erase_vnfz(ctx, p1, a)?,
            erase_vnfz(ctx, p2, b)?,
        )),
        (VnfZ::Inj(Side::Inl, v), TyP::Sum(p1, p2)) => Ok(ValZ::inj(
            Side::Inl,
            (**p2).clone(),
            erase_vnfz(ctx, p1, v)?,
        )),
        (VnfZ::Inj(Side::Inr, v), TyP::Sum(p1, p2)) => Ok(ValZ::inj(
            Side::Inr,
            (**p1).clone(),
            erase_vnfz(ctx, p2, v)?,
        )),
        _ => mismatch(p.to_string(), format!("normal value {v:?}")),
    }
}

/// Erase a neutral, synthesizing its negative type.
pub fn erase_nez(ctx: &Ctx<Hyp>, u: &NeZ) -> Result<(TmZ, TyN), TypeError> {
    match u {
        NeZ::Var(x) => match ctx.get(*x) {
            Some(Hyp::Neg(n)) => Ok((TmZ::VarN(*x), n.clone())),
            Some(Hyp::AtomP(o)) => mismatch("a negative hypothesis", format!("a+ {o}")),
            None => Err(TypeError::UnboundVariable {
                index: x.0,
                len: ctx.len(),
            }),
        },
        NeZ::App(u, v) => {
            let (tu, ty) = erase_nez(ctx, u)?;
            match ty {
                TyN::Arr(dom, cod) => Ok((TmZ::app(tu, erase_vnfz(ctx, &dom, v)?), *cod)),
                ty => mismatch("a function type", ty),
            }
        }
        NeZ::Prj(p, u) => {
            let (tu, ty) = erase_nez(ctx, u)?;
            match ty {
                TyN::With(a, b) => Ok((
                    TmZ::prj(*p, tu),
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

/// Erase an `Add` tree whose leaves erase through `f`, threading the
/// hypothesis-extended context.
fn erase_add<A>(
    ctx: &Ctx<Hyp>,
    t: &Add<A>,
    f: &dyn Fn(&Ctx<Hyp>, &A) -> Result<TmZ, TypeError>,
) -> Result<Add<TmZ>, TypeError> {
    Ok(match t {
        Add::Leaf(a) => Add::Leaf(f(ctx, a)?),
        Add::HypP(o, rest) => Add::hyp_p(
            o,
            erase_add(&ctx.snoc(Hyp::AtomP(o.clone())), rest, f)?,
        ),
        Add::HypN(n, rest) => Add::hyp_n(
            n.clone(),
            erase_add(&ctx.snoc(Hyp::Neg(n.clone())), rest, f)?,
        ),
        Add::Branch0 => Add::Branch0,
        Add::Branch2(l, r) => Add::branch2(erase_add(ctx, l, f)?, erase_add(ctx, r, f)?),
        Add::Split0(rest) => Add::split0(erase_add(ctx, rest, f)?),
        Add::Split2(inner) => Add::split2(erase_add(ctx, inner, f)?),
    })
}

/// Erase a cover whose leaves erase through `leaf`; `n` is the result type
/// of the whole term, reinserted as the `Bind` annotation.
fn erase_covz<J>(
    ctx: &Ctx<Hyp>,
    n: &TyN,
    c: &CovZ<J>,
    leaf: &dyn Fn(&Ctx<Hyp>, &J) -> Result<TmZ, TypeError>,
) -> Result<TmZ, TypeError> {
    match c {
        CovZ::Return(j) => leaf(ctx, j),
        CovZ::Bind { ann, scrut, body } => {
            let (tu, _) = erase_nez(ctx, scrut)?;
            let body = erase_add(ctx, body, &|ctx2, c2| erase_covz(ctx2, n, c2, leaf))?;
            Ok(TmZ::bind(ann.clone(), n.clone(), tu, body))
        }
    }
}

/// Erase a normal term against its negative type.
pub fn erase_nfz(ctx: &Ctx<Hyp>, n: &TyN, t: &NfZ) -> Result<TmZ, TypeError> {
    match (t, n) {
        (NfZ::NeAtom(c), TyN::Atom(_)) => {
            erase_covz(ctx, n, c, &|ctx, u| Ok(erase_nez(ctx, u)?.0))
        }
        (NfZ::Ret(c), TyN::Comp(p)) => erase_covz(ctx, n, c, &|ctx, v| {
            Ok(TmZ::ret(erase_vnfz(ctx, p, v)?))
        }),
        (NfZ::UnitN, TyN::Top) => Ok(TmZ::UnitN),
        (NfZ::PairN(a, b), TyN::With(n1, n2)) => Ok(TmZ::pair_n(
            erase_nfz(ctx, n1, a)?,
            erase_nfz(ctx, n2, b)?,
        )),
        (NfZ::Abs(dom, body), TyN::Arr(p, cod)) if dom == &**p => Ok(TmZ::abs(
            dom.clone(),
            (**cod).clone(),
            erase_add(ctx, body, &|ctx2, nf| erase_nfz(ctx2, cod, nf))?,
        )),
        _ => mismatch(n.to_string(), format!("normal term {t:?}")),
    }
}
