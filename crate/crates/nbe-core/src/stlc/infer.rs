//! Syntax-directed type inference for STLC terms.

use thiserror::Error;

use crate::kernel::Ctx;

use super::{Proj, Side, Term, Ty};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeError {
    #[error("unbound variable: index {index} in context of length {len}")]
    UnboundVariable { index: usize, len: usize },
    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch { expected: String, found: String },
    #[error("case branches disagree: left has type {left}, right has type {right}")]
    BranchTypeDisagreement { left: String, right: String },
}

pub fn infer(ctx: &Ctx<Ty>, t: &Term) -> Result<Ty, TypeError> {
    match t {
        Term::Var(x) => ctx.get(*x).cloned().ok_or(TypeError::UnboundVariable {
            index: x.0,
            len: ctx.len(),
        }),
        Term::Abs(dom, body) => {
            let cod = infer(&ctx.snoc(dom.clone()), body)?;
            Ok(Ty::arr(dom.clone(), cod))
        }
        Term::App(t, u) => match infer(ctx, t)? {
            Ty::Arr(dom, cod) => {
                let arg = infer(ctx, u)?;
                if arg == *dom {
                    Ok(*cod)
                } else {
                    Err(TypeError::TypeMismatch {
                        expected: dom.to_string(),
                        found: arg.to_string(),
                    })
                }
            }
            ty => Err(TypeError::TypeMismatch {
                expected: "function type".into(),
                found: ty.to_string(),
            }),
        },
        Term::Unit => Ok(Ty::One),
        Term::Pair(a, b) => Ok(Ty::prod(infer(ctx, a)?, infer(ctx, b)?)),
        Term::Prj(p, t) => match infer(ctx, t)? {
            Ty::Prod(a, b) => Ok(match p {
                Proj::Fst => *a,
                Proj::Snd => *b,
            }),
            ty => Err(TypeError::TypeMismatch {
                expected: "product type".into(),
                found: ty.to_string(),
            }),
        },
        Term::Inj(s, other, t) => {
            let mine = infer(ctx, t)?;
            Ok(match s {
                Side::Inl => Ty::sum(mine, other.clone()),
                Side::Inr => Ty::sum(other.clone(), mine),
            })
        }
        Term::Case(scrut, l, r) => match infer(ctx, scrut)? {
            Ty::Sum(a1, a2) => {
                let bl = infer(&ctx.snoc(*a1), l)?;
                let br = infer(&ctx.snoc(*a2), r)?;
                if bl == br {
                    Ok(bl)
                } else {
                    Err(TypeError::BranchTypeDisagreement {
                        left: bl.to_string(),
                        right: br.to_string(),
                    })
                }
            }
            ty => Err(TypeError::TypeMismatch {
                expected: "sum type".into(),
                found: ty.to_string(),
            }),
        },
        Term::Abort(result, t) => match infer(ctx, t)? {
            Ty::Zero => Ok(result.clone()),
            ty => Err(TypeError::TypeMismatch {
                expected: "0".into(),
                found: ty.to_string(),
            }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Idx;

    fn o() -> Ty {
        Ty::atom()
    }

    #[test]
    fn codiagonal() {
        // \x:o+o. case x of {inl y -> y; inr z -> z} : (o+o) -> o
        let t = Term::abs(
            Ty::sum(o(), o()),
            Term::case(Term::var(0), Term::var(0), Term::var(0)),
        );
        assert_eq!(
            infer(&Ctx::empty(), &t).unwrap(),
            Ty::arr(Ty::sum(o(), o()), o())
        );
    }

    #[test]
    fn var_axiom() {
        let ctx = Ctx::from_entries(vec![o()]);
        assert_eq!(infer(&ctx, &Term::Var(Idx(0))).unwrap(), o());
    }

    #[test]
    fn paper_pair_term() {
        // \x:A.\y:B.(x, \z:C. y z) with B = C -> D, types to A -> B -> (A * (C -> D))
        let a = o();
        let c = o();
        let d = Ty::sum(o(), o());
        let b = Ty::arr(c.clone(), d.clone());
        let t = Term::abs(
            a.clone(),
            Term::abs(
                b.clone(),
                Term::pair(
                    Term::var(1),
                    Term::abs(c.clone(), Term::app(Term::var(1), Term::var(0))),
                ),
            ),
        );
        let expected = Ty::arr(
            a.clone(),
            Ty::arr(b.clone(), Ty::prod(a, Ty::arr(c, d))),
        );
        assert_eq!(infer(&Ctx::empty(), &t).unwrap(), expected);
    }

    #[test]
    fn branch_disagreement() {
        let t = Term::case(
            Term::inj(Side::Inl, o(), Term::Unit),
            Term::Unit,
            Term::pair(Term::Unit, Term::Unit),
        );
        // scrutinee: 1 + o; branches 1 vs 1*1
        assert!(matches!(
            infer(&Ctx::empty(), &t),
            Err(TypeError::BranchTypeDisagreement { .. })
        ));
    }
}
