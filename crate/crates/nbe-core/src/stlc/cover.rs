//! Cover monads: the free case-tree monad and the Nf-valued continuation
//! monad, behind a common service interface.

use std::sync::Arc;

use thiserror::Error;

use crate::kernel::{Ctx, Ope, Renameable};

use super::{Ne, Nf, Ty};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("cannot run a case tree into a normal form at negative type {ty}")]
    PolarityViolation { ty: String },
}

/// The free cover monad: a binary case tree over neutrals of sum type, with
/// `Abort` leaves on neutrals of empty type and `Return` leaves carrying the
/// judgement. `Case` stores the summand types so that renaming and stmap can
/// track the context extensions of the branches.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Cover<J> {
    Return(J),
    Case {
        scrut: Ne,
        tys: (Ty, Ty),
        left: Box<Cover<J>>,
        right: Box<Cover<J>>,
    },
    Abort(Ne),
}

impl<J> Cover<J> {
    pub fn case(scrut: Ne, tys: (Ty, Ty), left: Cover<J>, right: Cover<J>) -> Cover<J> {
        Cover::Case {
            scrut,
            tys,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// Functorial action on leaves (a context-polymorphic morphism).
    pub fn map<K>(self, f: &dyn Fn(J) -> K) -> Cover<K> {
        match self {
            Cover::Return(j) => Cover::Return(f(j)),
            Cover::Case { scrut, tys, left, right } => {
                Cover::case(scrut, tys, left.map(f), right.map(f))
            }
            Cover::Abort(u) => Cover::Abort(u),
        }
    }

}

impl<J> Cover<Cover<J>> {
    /// Flatten a two-level case tree by grafting inner trees onto the leaves.
    pub fn flatten(self) -> Cover<J> {
        match self {
            Cover::Return(inner) => inner,
            Cover::Case { scrut, tys, left, right } => {
                Cover::case(scrut, tys, left.flatten(), right.flatten())
            }
            Cover::Abort(u) => Cover::Abort(u),
        }
    }
}

impl<J: Renameable<Ty>> Cover<J> {
    /// Strong functorial action: the local morphism receives the OPE from
    /// the tree's root context to the leaf's path-extended context.
    pub fn stmap<K>(self, ctx: &Ctx<Ty>, l: &dyn Fn(&Ope<Ty>, J) -> K) -> Cover<K> {
        fn go<J, K>(acc: &Ope<Ty>, l: &dyn Fn(&Ope<Ty>, J) -> K, c: Cover<J>) -> Cover<K> {
            match c {
                Cover::Return(j) => Cover::Return(l(acc, j)),
                Cover::Case { scrut, tys, left, right } => {
                    let acc_l = acc.weak(tys.0.clone());
                    let acc_r = acc.weak(tys.1.clone());
                    Cover::case(scrut, tys, go(&acc_l, l, *left), go(&acc_r, l, *right))
                }
                Cover::Abort(u) => Cover::Abort(u),
            }
        }
        go(&Ope::id(ctx), l, self)
    }

    /// Replace the tree's `Case`/`Abort` nodes by the corresponding normal
    /// form constructors. Only legal when the leaves' type is positive (or
    /// the tree is a bare `Return`).
    pub fn run_nf(self, ty: &Ty) -> Result<Nf, CoverError>
    where
        J: Into<Nf>,
    {
        match self {
            Cover::Return(n) => Ok(n.into()),
            Cover::Case { scrut, tys, left, right } if ty.is_positive() => Ok(Nf::case(
                scrut,
                tys.clone(),
                left.run_nf(ty)?,
                right.run_nf(ty)?,
            )),
            Cover::Abort(u) if ty.is_positive() => Ok(Nf::Abort(u)),
            _ => Err(CoverError::PolarityViolation { ty: ty.to_string() }),
        }
    }
}

impl<J: Renameable<Ty>> Renameable<Ty> for Cover<J> {
    fn rename(&self, ope: &Ope<Ty>) -> Self {
        match self {
            Cover::Return(j) => Cover::Return(j.rename(ope)),
            Cover::Case { scrut, tys, left, right } => Cover::case(
                scrut.rename(ope),
                tys.clone(),
                left.rename(&ope.lift(tys.0.clone())),
                right.rename(&ope.lift(tys.1.clone())),
            ),
            Cover::Abort(u) => Cover::Abort(u.rename(ope)),
        }
    }
}

/// The Nf-valued continuation monad `CC J = ∀A. (J ⇒̂ Nf A) ⇒̂ Nf A`.
/// Since normal forms are untyped data here, the answer-type quantifier is
/// implicit; the continuation is OPE-indexed.
#[derive(Clone)]
pub struct Cc<J> {
    run: Arc<dyn Fn(&Ope<Ty>, &dyn Fn(&Ope<Ty>, J) -> Nf) -> Nf + Send + Sync>,
}

impl<J: Renameable<Ty>> Cc<J> {
    pub fn new(
        run: impl Fn(&Ope<Ty>, &dyn Fn(&Ope<Ty>, J) -> Nf) -> Nf + Send + Sync + 'static,
    ) -> Cc<J> {
        Cc { run: Arc::new(run) }
    }

    pub fn run(&self, tau: &Ope<Ty>, k: &dyn Fn(&Ope<Ty>, J) -> Nf) -> Nf {
        (self.run)(tau, k)
    }

    pub fn ret(j: J) -> Cc<J> {
        Cc::new(move |tau, k| k(&Ope::id(tau.target()), j.rename(tau)))
    }

    pub fn map<K: Renameable<Ty>>(self, f: Arc<dyn Fn(J) -> K + Send + Sync>) -> Cc<K> {
        Cc::new(move |tau, k| self.run(tau, &|tau2, j| k(tau2, f(j))))
    }

    pub fn stmap<K: Renameable<Ty>>(
        self,
        l: Arc<dyn Fn(&Ope<Ty>, J) -> K + Send + Sync>,
    ) -> Cc<K> {
        Cc::new(move |tau, k| self.run(tau, &|tau2, j| k(tau2, l(&tau.then(tau2), j))))
    }

    pub fn abort(u: Ne) -> Cc<J> {
        Cc::new(move |tau, _k| Nf::Abort(u.rename(tau)))
    }

    /// Case on a neutral of sum type; branch continuations are pre-composed
    /// with `wk ⨾ τ'` so the original continuation is invoked in the branch
    /// contexts.
    pub fn case(u: Ne, tys: (Ty, Ty), c1: Cc<J>, c2: Cc<J>) -> Cc<J> {
        Cc::new(move |tau, k| {
            let delta = tau.target().clone();
            let mk = |side: &Cc<J>, ty: &Ty| {
                let wk = Ope::wk(&delta, ty.clone());
                side.run(&tau.lift(ty.clone()), &|tau2: &Ope<Ty>, j| {
                    k(&wk.then(tau2), j)
                })
            };
            Nf::case(
                u.rename(tau),
                tys.clone(),
                mk(&c1, &tys.0),
                mk(&c2, &tys.1),
            )
        })
    }

    pub fn run_nf(self, ctx: &Ctx<Ty>) -> Nf
    where
        J: Into<Nf>,
    {
        self.run(&Ope::id(ctx), &|_tau, j| j.into())
    }
}

impl<J: Renameable<Ty>> Cc<Cc<J>> {
    pub fn flatten(self) -> Cc<J> {
        Cc::new(move |tau, k| {
            self.run(tau, &|tau2, inner: Cc<J>| {
                inner.run(&Ope::id(tau2.target()), &|tau3, j| k(&tau2.then(tau3), j))
            })
        })
    }
}

impl<J: Renameable<Ty>> Renameable<Ty> for Cc<J> {
    fn rename(&self, ope: &Ope<Ty>) -> Self {
        let me = self.clone();
        let ope = ope.clone();
        Cc::new(move |tau, k| me.run(&ope.then(tau), k))
    }
}

/// The services any cover monad offers: unit, functorial and strong
/// functorial action, multiplication, case analysis on neutrals, and a
/// final run into normal forms.
pub trait CoverMonad: 'static {
    type C<J: Renameable<Ty>>: Renameable<Ty>;

    fn ret<J: Renameable<Ty>>(ctx: &Ctx<Ty>, j: J) -> Self::C<J>;
    fn map<J: Renameable<Ty>, K: Renameable<Ty>>(
        f: Arc<dyn Fn(J) -> K + Send + Sync>,
        c: Self::C<J>,
    ) -> Self::C<K>;
    fn stmap<J: Renameable<Ty>, K: Renameable<Ty>>(
        ctx: &Ctx<Ty>,
        l: Arc<dyn Fn(&Ope<Ty>, J) -> K + Send + Sync>,
        c: Self::C<J>,
    ) -> Self::C<K>;
    fn join<J: Renameable<Ty>>(c: Self::C<Self::C<J>>) -> Self::C<J>;
    fn abort<J: Renameable<Ty>>(ctx: &Ctx<Ty>, u: Ne) -> Self::C<J>;
    fn case<J: Renameable<Ty>>(
        ctx: &Ctx<Ty>,
        u: Ne,
        tys: (Ty, Ty),
        left: Self::C<J>,
        right: Self::C<J>,
    ) -> Self::C<J>;
    fn run_nf(ctx: &Ctx<Ty>, ty: &Ty, c: Self::C<Nf>) -> Result<Nf, CoverError>;
}

/// The free cover monad as a `CoverMonad` instance.
pub struct FreeCover;

impl CoverMonad for FreeCover {
    type C<J: Renameable<Ty>> = Cover<J>;

    fn ret<J: Renameable<Ty>>(_ctx: &Ctx<Ty>, j: J) -> Cover<J> {
        Cover::Return(j)
    }

    fn map<J: Renameable<Ty>, K: Renameable<Ty>>(
        f: Arc<dyn Fn(J) -> K + Send + Sync>,
        c: Cover<J>,
    ) -> Cover<K> {
        c.map(&*f)
    }

    fn stmap<J: Renameable<Ty>, K: Renameable<Ty>>(
        ctx: &Ctx<Ty>,
        l: Arc<dyn Fn(&Ope<Ty>, J) -> K + Send + Sync>,
        c: Cover<J>,
    ) -> Cover<K> {
        c.stmap(ctx, &*l)
    }

    fn join<J: Renameable<Ty>>(c: Cover<Cover<J>>) -> Cover<J> {
        c.flatten()
    }

    fn abort<J: Renameable<Ty>>(_ctx: &Ctx<Ty>, u: Ne) -> Cover<J> {
        Cover::Abort(u)
    }

    fn case<J: Renameable<Ty>>(
        _ctx: &Ctx<Ty>,
        u: Ne,
        tys: (Ty, Ty),
        left: Cover<J>,
        right: Cover<J>,
    ) -> Cover<J> {
        Cover::case(u, tys, left, right)
    }

    fn run_nf(_ctx: &Ctx<Ty>, ty: &Ty, c: Cover<Nf>) -> Result<Nf, CoverError> {
        c.run_nf(ty)
    }
}

/// The continuation monad as a `CoverMonad` instance.
pub struct ContCover;

impl CoverMonad for ContCover {
    type C<J: Renameable<Ty>> = Cc<J>;

    fn ret<J: Renameable<Ty>>(_ctx: &Ctx<Ty>, j: J) -> Cc<J> {
        Cc::ret(j)
    }

    fn map<J: Renameable<Ty>, K: Renameable<Ty>>(
        f: Arc<dyn Fn(J) -> K + Send + Sync>,
        c: Cc<J>,
    ) -> Cc<K> {
        c.map(f)
    }

    fn stmap<J: Renameable<Ty>, K: Renameable<Ty>>(
        _ctx: &Ctx<Ty>,
        l: Arc<dyn Fn(&Ope<Ty>, J) -> K + Send + Sync>,
        c: Cc<J>,
    ) -> Cc<K> {
        c.stmap(l)
    }

    fn join<J: Renameable<Ty>>(c: Cc<Cc<J>>) -> Cc<J> {
        c.flatten()
    }

    fn abort<J: Renameable<Ty>>(_ctx: &Ctx<Ty>, u: Ne) -> Cc<J> {
        Cc::abort(u)
    }

    fn case<J: Renameable<Ty>>(
        _ctx: &Ctx<Ty>,
        u: Ne,
        tys: (Ty, Ty),
        left: Cc<J>,
        right: Cc<J>,
    ) -> Cc<J> {
        Cc::case(u, tys, left, right)
    }

    fn run_nf(ctx: &Ctx<Ty>, _ty: &Ty, c: Cc<Nf>) -> Result<Nf, CoverError> {
        Ok(c.run_nf(ctx))
    }
}
