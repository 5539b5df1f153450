//! Simply-typed lambda calculus with weak sums: syntax, typing, normal
//! forms, cover monads, and normalization by evaluation.

pub mod admissible;
pub mod cover;
pub mod erase;
pub mod infer;
pub mod sem;
pub mod validate;

use std::fmt;

use crate::kernel::{Ctx, Idx, Ope, Renameable};

/// Simple types. Polarity is derived from the root former: `Atom`, `Zero`
/// and `Sum` are positive; `One`, `Prod` and `Arr` are negative.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Ty {
    /// Base type `o`, optionally carrying a name to distinguish several atoms.
    Atom(String),
    Zero,
    One,
    Sum(Box<Ty>, Box<Ty>),
    Prod(Box<Ty>, Box<Ty>),
    Arr(Box<Ty>, Box<Ty>),
}

impl Ty {
    pub fn atom() -> Ty {
        Ty::Atom(String::new())
    }

    pub fn sum(a: Ty, b: Ty) -> Ty {
        Ty::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: Ty, b: Ty) -> Ty {
        Ty::Prod(Box::new(a), Box::new(b))
    }

    pub fn arr(a: Ty, b: Ty) -> Ty {
        Ty::Arr(Box::new(a), Box::new(b))
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, Ty::Atom(_) | Ty::Zero | Ty::Sum(_, _))
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Precedence: -> loosest (right assoc), then +, then *, atoms tightest.
        fn go(ty: &Ty, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let (my_prec, open) = match ty {
                Ty::Arr(_, _) => (0, prec > 0),
                Ty::Sum(_, _) => (1, prec > 1),
                Ty::Prod(_, _) => (2, prec > 2),
                _ => (3, false),
            };
            if open {
                write!(f, "(")?;
            }
            match ty {
                Ty::Atom(name) if name.is_empty() => write!(f, "o")?,
                Ty::Atom(name) => write!(f, "o {name}")?,
                Ty::Zero => write!(f, "0")?,
                Ty::One => write!(f, "1")?,
                Ty::Sum(a, b) => {
                    go(a, my_prec + 1, f)?;
                    write!(f, " + ")?;
                    go(b, my_prec + 1, f)?;
                }
                Ty::Prod(a, b) => {
                    go(a, my_prec + 1, f)?;
                    write!(f, " * ")?;
                    go(b, my_prec + 1, f)?;
                }
                Ty::Arr(a, b) => {
                    go(a, my_prec + 1, f)?;
                    write!(f, " -> ")?;
                    go(b, my_prec, f)?;
                }
            }
            if open {
                write!(f, ")")?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

/// Projection index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Proj {
    Fst,
    Snd,
}

/// Injection side.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    Inl,
    Inr,
}

/// Raw de Bruijn terms. Annotations on `Abs`, `Inj` and `Abort` make type
/// inference syntax-directed; `Inj` carries the *other* summand.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Term {
    Var(Idx),
    Abs(Ty, Box<Term>),
    App(Box<Term>, Box<Term>),
    Unit,
    Pair(Box<Term>, Box<Term>),
    Prj(Proj, Box<Term>),
    Inj(Side, Ty, Box<Term>),
    Case(Box<Term>, Box<Term>, Box<Term>),
    Abort(Ty, Box<Term>),
}

impl Term {
    pub fn var(n: usize) -> Term {
        Term::Var(Idx(n))
    }

    pub fn abs(dom: Ty, body: Term) -> Term {
        Term::Abs(dom, Box::new(body))
    }

    pub fn app(t: Term, u: Term) -> Term {
        Term::App(Box::new(t), Box::new(u))
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Box::new(a), Box::new(b))
    }

    pub fn prj(p: Proj, t: Term) -> Term {
        Term::Prj(p, Box::new(t))
    }

    pub fn inj(s: Side, other: Ty, t: Term) -> Term {
        Term::Inj(s, other, Box::new(t))
    }

    pub fn case(scrut: Term, l: Term, r: Term) -> Term {
        Term::Case(Box::new(scrut), Box::new(l), Box::new(r))
    }

    pub fn abort(result: Ty, t: Term) -> Term {
        Term::Abort(result, Box::new(t))
    }

    /// Size in constructors, used to bound generators and tests.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Unit => 1,
            Term::Abs(_, t) | Term::Prj(_, t) | Term::Inj(_, _, t) | Term::Abort(_, t) => {
                1 + t.size()
            }
            Term::App(t, u) | Term::Pair(t, u) => 1 + t.size() + u.size(),
            Term::Case(s, l, r) => 1 + s.size() + l.size() + r.size(),
        }
    }
}

/// Rename a raw term under a typing context. Case branches extend the
/// context by the scrutinee's summands, which the raw syntax does not
/// store, so they are recovered by inference.
pub fn rename_term(ctx: &Ctx<Ty>, t: &Term, ope: &Ope<Ty>) -> Result<Term, infer::TypeError> {
    Ok(match t {
        Term::Var(x) => Term::Var(ope.apply(*x)),
        Term::Abs(dom, body) => Term::abs(
            dom.clone(),
            rename_term(&ctx.snoc(dom.clone()), body, &ope.lift(dom.clone()))?,
        ),
        Term::App(t, u) => Term::app(rename_term(ctx, t, ope)?, rename_term(ctx, u, ope)?),
        Term::Unit => Term::Unit,
        Term::Pair(a, b) => Term::pair(rename_term(ctx, a, ope)?, rename_term(ctx, b, ope)?),
        Term::Prj(p, t) => Term::prj(*p, rename_term(ctx, t, ope)?),
        Term::Inj(s, other, t) => Term::inj(*s, other.clone(), rename_term(ctx, t, ope)?),
        Term::Case(s, l, r) => {
            let (a1, a2) = match infer::infer(ctx, s)? {
                Ty::Sum(a1, a2) => (*a1, *a2),
                ty => {
                    return Err(infer::TypeError::TypeMismatch {
                        expected: "sum type".into(),
                        found: ty.to_string(),
                    })
                }
            };
            Term::case(
                rename_term(ctx, s, ope)?,
                rename_term(&ctx.snoc(a1.clone()), l, &ope.lift(a1))?,
                rename_term(&ctx.snoc(a2.clone()), r, &ope.lift(a2))?,
            )
        }
        Term::Abort(b, t) => Term::abort(b.clone(), rename_term(ctx, t, ope)?),
    })
}

/// Neutral normal forms: elimination chains blocked on a variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Ne {
    Var(Idx),
    App(Box<Ne>, Box<Nf>),
    Prj(Proj, Box<Ne>),
}

impl Ne {
    pub fn app(u: Ne, n: Nf) -> Ne {
        Ne::App(Box::new(u), Box::new(n))
    }

    pub fn prj(p: Proj, u: Ne) -> Ne {
        Ne::Prj(p, Box::new(u))
    }
}

/// Normal forms, mutually defined with `Ne`. `Atom` embeds a neutral only at
/// base type; `Case`/`Abort` are restricted to positive result types.
///
/// `Abs` and `Case` carry the types of the variables they bind so that
/// renaming can lift the embedding across the binder.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Nf {
    Atom(Ne),
    Abs(Ty, Box<Nf>),
    Unit,
    Pair(Box<Nf>, Box<Nf>),
    Inj(Side, Box<Nf>),
    Case {
        scrut: Ne,
        tys: (Ty, Ty),
        left: Box<Nf>,
        right: Box<Nf>,
    },
    Abort(Ne),
}

impl Nf {
    pub fn abs(dom: Ty, body: Nf) -> Nf {
        Nf::Abs(dom, Box::new(body))
    }

    pub fn pair(a: Nf, b: Nf) -> Nf {
        Nf::Pair(Box::new(a), Box::new(b))
    }

    pub fn inj(s: Side, n: Nf) -> Nf {
        Nf::Inj(s, Box::new(n))
    }

    pub fn case(scrut: Ne, tys: (Ty, Ty), left: Nf, right: Nf) -> Nf {
        Nf::Case {
            scrut,
            tys,
            left: Box::new(left),
            right: Box::new(right),
        }
    }
}

impl Renameable<Ty> for Ne {
    fn rename(&self, ope: &Ope<Ty>) -> Self {
        match self {
            Ne::Var(x) => Ne::Var(ope.apply(*x)),
            Ne::App(u, n) => Ne::app(u.rename(ope), n.rename(ope)),
            Ne::Prj(p, u) => Ne::prj(*p, u.rename(ope)),
        }
    }
}

impl Renameable<Ty> for Nf {
    fn rename(&self, ope: &Ope<Ty>) -> Self {
        match self {
            Nf::Atom(u) => Nf::Atom(u.rename(ope)),
            Nf::Abs(dom, body) => Nf::abs(dom.clone(), body.rename(&ope.lift(dom.clone()))),
            Nf::Unit => Nf::Unit,
            Nf::Pair(a, b) => Nf::pair(a.rename(ope), b.rename(ope)),
            Nf::Inj(s, n) => Nf::inj(*s, n.rename(ope)),
            Nf::Case { scrut, tys, left, right } => Nf::case(
                scrut.rename(ope),
                tys.clone(),
                left.rename(&ope.lift(tys.0.clone())),
                right.rename(&ope.lift(tys.1.clone())),
            ),
            Nf::Abort(u) => Nf::Abort(u.rename(ope)),
        }
    }
}
