//! Erasure from normal and neutral forms back to raw terms.
//!
//! The `ne` embedding is discarded; all other constructors are kept. Since
//! raw terms carry annotations that normal forms do not (the other summand
//! on injections, the result type on aborts), erasure is type-directed:
//! normal forms are erased against their type, neutrals synthesize theirs.

use crate::kernel::Ctx;

use super::infer::TypeError;
use super::{Ne, Nf, Proj, Side, Term, Ty};

/// Erase a normal form of type `ty` in `ctx` to a raw term.
pub fn erase_nf(ctx: &Ctx<Ty>, ty: &Ty, n: &Nf) -> Result<Term, TypeError> {
    match (n, ty) {
        (Nf::Atom(u), Ty::Atom(_)) => Ok(erase_ne(ctx, u)?.0),
        (Nf::Abs(dom, body), Ty::Arr(dom2, cod)) if dom == &**dom2 => Ok(Term::abs(
            dom.clone(),
            erase_nf(&ctx.snoc(dom.clone()), cod, body)?,
        )),
        (Nf::Unit, Ty::One) => Ok(Term::Unit),
        (Nf::Pair(a, b), Ty::Prod(ta, tb)) => Ok(Term::pair(
            erase_nf(ctx, ta, a)?,
            erase_nf(ctx, tb, b)?,
        )),
        (Nf::Inj(Side::Inl, v), Ty::Sum(ta, tb)) => Ok(Term::inj(
            Side::Inl,
            (**tb).clone(),
            erase_nf(ctx, ta, v)?,
        )),
        (Nf::Inj(Side::Inr, v), Ty::Sum(ta, tb)) => Ok(Term::inj(
            Side::Inr,
            (**ta).clone(),
            erase_nf(ctx, tb, v)?,
        )),
        (Nf::Case { scrut, tys, left, right }, _) => Ok(Term::case(
            erase_ne(ctx, scrut)?.0,
            erase_nf(&ctx.snoc(tys.0.clone()), ty, left)?,
            erase_nf(&ctx.snoc(tys.1.clone()), ty, right)?,
        )),
        (Nf::Abort(u), _) => Ok(Term::abort(ty.clone(), erase_ne(ctx, u)?.0)),
        _ => Err(TypeError::TypeMismatch {
            expected: ty.to_string(),
            found: format!("normal form {n:?}"),
        }),
    }
}

/// Erase a neutral, synthesizing its type along the way.
pub fn erase_ne(ctx: &Ctx<Ty>, u: &Ne) -> Result<(Term, Ty), TypeError> {
    match u {
        Ne::Var(x) => {
            let ty = ctx.get(*x).cloned().ok_or(TypeError::UnboundVariable {
                index: x.0,
                len: ctx.len(),
            })?;
            Ok((Term::Var(*x), ty))
        }
        Ne::App(f, arg) => {
            let (tf, ty) = erase_ne(ctx, f)?;
            match ty {
                Ty::Arr(dom, cod) => {
                    Ok((Term::app(tf, erase_nf(ctx, &dom, arg)?), *cod))
                }
                ty => Err(TypeError::TypeMismatch {
                    expected: "function type".into(),
                    found: ty.to_string(),
                }),
            }
        }
        Ne::Prj(p, u) => {
            let (tu, ty) = erase_ne(ctx, u)?;
            match ty {
                Ty::Prod(a, b) => Ok((
                    Term::prj(*p, tu),
                    match p {
                        Proj::Fst => *a,
                        Proj::Snd => *b,
                    },
                )),
                ty => Err(TypeError::TypeMismatch {
                    expected: "product type".into(),
                    found: ty.to_string(),
                }),
            }
        }
    }
}
