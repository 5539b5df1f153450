//! Independent normal-form grammar validator.
//!
//! Checks a candidate normal form against the grammar at a given type:
//! neutrals embed only at atomic type, case and abort only at positive
//! result types, and inhabitants of negative types are introductions
//! (η-long). Deliberately written as a plain checker with no dependence on
//! the normalizer.

use thiserror::Error;

use crate::kernel::Ctx;

use super::{Ne, Nf, Proj, Side, Ty};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidateError {
    #[error("grammar violation: {0}")]
    Violation(String),
}

fn violation<T>(msg: impl Into<String>) -> Result<T, ValidateError> {
    Err(ValidateError::Violation(msg.into()))
}

/// Check that `n` is a well-formed normal form of type `ty` in `ctx`.
pub fn check_nf(ctx: &Ctx<Ty>, ty: &Ty, n: &Nf) -> Result<(), ValidateError> {
    match n {
        Nf::Atom(u) => {
            if !matches!(ty, Ty::Atom(_)) {
                return violation(format!("ne embedding at non-atomic type {ty}"));
            }
            let got = check_ne(ctx, u)?;
            if &got != ty {
                return violation(format!("neutral has type {got}, expected {ty}"));
            }
            Ok(())
        }
        Nf::Abs(dom, body) => match ty {
            Ty::Arr(d, cod) if **d == *dom => check_nf(&ctx.snoc(dom.clone()), cod, body),
            _ => violation(format!("abs at type {ty}")),
        },
        Nf::Unit => {
            if *ty == Ty::One {
                Ok(())
            } else {
                violation(format!("unit at type {ty}"))
            }
        }
        Nf::Pair(a, b) => match ty {
            Ty::Prod(ta, tb) => {
                check_nf(ctx, ta, a)?;
                check_nf(ctx, tb, b)
            }
            _ => violation(format!("pair at type {ty}")),
        },
        Nf::Inj(side, v) => match (side, ty) {
            (Side::Inl, Ty::Sum(ta, _)) => check_nf(ctx, ta, v),
            (Side::Inr, Ty::Sum(_, tb)) => check_nf(ctx, tb, v),
            _ => violation(format!("injection at type {ty}")),
        },
        Nf::Case { scrut, tys, left, right } => {
            if !ty.is_positive() {
                return violation(format!("case at negative result type {ty}"));
            }
            let got = check_ne(ctx, scrut)?;
            let expected = Ty::sum(tys.0.clone(), tys.1.clone());
            if got != expected {
                return violation(format!(
                    "case scrutinee has type {got}, annotation says {expected}"
                ));
            }
            check_nf(&ctx.snoc(tys.0.clone()), ty, left)?;
            check_nf(&ctx.snoc(tys.1.clone()), ty, right)
        }
        Nf::Abort(u) => {
            if !ty.is_positive() {
                return violation(format!("abort at negative result type {ty}"));
            }
            let got = check_ne(ctx, u)?;
            if got != Ty::Zero {
                return violation(format!("abort scrutinee has type {got}, expected 0"));
            }
            Ok(())
        }
    }
}

/// Check a neutral and synthesize its type.
pub fn check_ne(ctx: &Ctx<Ty>, u: &Ne) -> Result<Ty, ValidateError> {
    match u {
        Ne::Var(x) => ctx
            .get(*x)
            .cloned()
            .ok_or_else(|| ValidateError::Violation(format!("unbound index {}", x.0))),
        Ne::App(f, arg) => match check_ne(ctx, f)? {
            Ty::Arr(dom, cod) => {
                check_nf(ctx, &dom, arg)?;
                Ok(*cod)
            }
            ty => violation(format!("application head has type {ty}")),
        },
        Ne::Prj(p, u) => match check_ne(ctx, u)? {
            Ty::Prod(a, b) => Ok(match p {
                Proj::Fst => *a,
                Proj::Snd => *b,
            }),
            ty => violation(format!("projection head has type {ty}")),
        },
    }
}
