//! The presheaf semantics: tagged semantic values, reflection, reification,
//! weak pasting, evaluation, and the normalization function, all parametric
//! in the cover monad.

use std::sync::Arc;

use crate::kernel::{Ctx, Idx, Ope, Renameable};

use super::cover::CoverMonad;
use super::infer::{infer, TypeError};
use super::{Ne, Nf, Proj, Side, Term, Ty};

/// Leaves of the cover trees sitting at positive types: a neutral (at atomic
/// type) or an injected semantic value (at sum types). Trees at type `0`
/// have no leaves at all.
pub enum PosLeaf<M: CoverMonad> {
    Ne(Ne),
    Inl(Box<SemVal<M>>),
    Inr(Box<SemVal<M>>),
}

/// Semantic values. The shape tracks the type: `Unit` at `1`, `Pair` at
/// products, `Fun` at arrows, and `Pos` (a cover tree) at positive types.
pub enum SemVal<M: CoverMonad> {
    Unit,
    Pair(Box<SemVal<M>>, Box<SemVal<M>>),
    Fun(KripkeFn<M>),
    Pos(M::C<PosLeaf<M>>),
}

/// A Kripke function: applicable in any future context, taking an OPE
/// alongside its argument. Renaming accumulates into the stored embedding
/// and pre-composes it at application time.
pub struct KripkeFn<M: CoverMonad> {
    ope: Ope<Ty>,
    f: Arc<dyn Fn(&Ope<Ty>, SemVal<M>) -> SemVal<M> + Send + Sync>,
}

impl<M: CoverMonad> Clone for PosLeaf<M> {
    fn clone(&self) -> Self {
        match self {
            PosLeaf::Ne(u) => PosLeaf::Ne(u.clone()),
            PosLeaf::Inl(a) => PosLeaf::Inl(a.clone()),
            PosLeaf::Inr(a) => PosLeaf::Inr(a.clone()),
        }
    }
}

impl<M: CoverMonad> Clone for SemVal<M> {
    fn clone(&self) -> Self {
        match self {
            SemVal::Unit => SemVal::Unit,
            SemVal::Pair(a, b) => SemVal::Pair(a.clone(), b.clone()),
            SemVal::Fun(f) => SemVal::Fun(f.clone()),
            SemVal::Pos(c) => SemVal::Pos(c.clone()),
        }
    }
}

impl<M: CoverMonad> Clone for KripkeFn<M> {
    fn clone(&self) -> Self {
        KripkeFn {
            ope: self.ope.clone(),
            f: self.f.clone(),
        }
    }
}

impl<M: CoverMonad> KripkeFn<M> {
    /// Wrap a raw Kripke body born at `ctx`. The body receives the total
    /// embedding from `ctx` to the application site.
    pub fn new(
        ctx: &Ctx<Ty>,
        f: impl Fn(&Ope<Ty>, SemVal<M>) -> SemVal<M> + Send + Sync + 'static,
    ) -> Self {
        KripkeFn {
            ope: Ope::id(ctx),
            f: Arc::new(f),
        }
    }

    pub fn apply(&self, tau: &Ope<Ty>, a: SemVal<M>) -> SemVal<M> {
        (self.f)(&self.ope.then(tau), a)
    }
}

impl<M: CoverMonad> Renameable<Ty> for KripkeFn<M> {
    fn rename(&self, ope: &Ope<Ty>) -> Self {
        KripkeFn {
            ope: self.ope.then(ope),
            f: self.f.clone(),
        }
    }
}

impl<M: CoverMonad> Renameable<Ty> for PosLeaf<M> {
    fn rename(&self, ope: &Ope<Ty>) -> Self {
        match self {
            PosLeaf::Ne(u) => PosLeaf::Ne(u.rename(ope)),
            PosLeaf::Inl(a) => PosLeaf::Inl(Box::new(a.rename(ope))),
            PosLeaf::Inr(a) => PosLeaf::Inr(Box::new(a.rename(ope))),
        }
    }
}

impl<M: CoverMonad> Renameable<Ty> for SemVal<M> {
    fn rename(&self, ope: &Ope<Ty>) -> Self {
        match self {
            SemVal::Unit => SemVal::Unit,
            SemVal::Pair(a, b) => {
                SemVal::Pair(Box::new(a.rename(ope)), Box::new(b.rename(ope)))
            }
            SemVal::Fun(f) => SemVal::Fun(f.rename(ope)),
            SemVal::Pos(c) => SemVal::Pos(c.rename(ope)),
        }
    }
}

impl<M: CoverMonad> SemVal<M> {
    fn into_fun(self) -> KripkeFn<M> {
        match self {
            SemVal::Fun(f) => f,
            _ => panic!("shape mismatch: expected a semantic function"),
        }
    }

    fn into_pair(self) -> (SemVal<M>, SemVal<M>) {
        match self {
            SemVal::Pair(a, b) => (*a, *b),
            _ => panic!("shape mismatch: expected a semantic pair"),
        }
    }

    fn into_pos(self) -> M::C<PosLeaf<M>> {
        match self {
            SemVal::Pos(c) => c,
            _ => panic!("shape mismatch: expected a covered positive value"),
        }
    }
}

/// Reflection: map a neutral of type `ty` to a semantic unknown.
pub fn reflect<M: CoverMonad>(ctx: &Ctx<Ty>, ty: &Ty, u: Ne) -> SemVal<M> {
    match ty {
        Ty::One => SemVal::Unit,
        Ty::Prod(a, b) => SemVal::Pair(
            Box::new(reflect(ctx, a, Ne::prj(Proj::Fst, u.clone()))),
            Box::new(reflect(ctx, b, Ne::prj(Proj::Snd, u))),
        ),
        Ty::Arr(a, b) => {
            let (a, b) = (a.clone(), b.clone());
            SemVal::Fun(KripkeFn::new(ctx, move |tau, arg| {
                let delta = tau.target().clone();
                let arg_nf = reify(&delta, &a, arg);
                reflect(&delta, &b, Ne::app(u.rename(tau), arg_nf))
            }))
        }
        Ty::Atom(_) => SemVal::Pos(M::ret(ctx, PosLeaf::Ne(u))),
        Ty::Zero => SemVal::Pos(M::abort(ctx, u)),
        Ty::Sum(a, b) => {
            let ctx_a = ctx.snoc((**a).clone());
            let ctx_b = ctx.snoc((**b).clone());
            let left = M::ret(&ctx_a, PosLeaf::Inl(Box::new(fresh(ctx, a))));
            let right = M::ret(&ctx_b, PosLeaf::Inr(Box::new(fresh(ctx, b))));
            SemVal::Pos(M::case(ctx, u, ((**a).clone(), (**b).clone()), left, right))
        }
    }
}

/// The fresh unknown of type `ty` in `ctx` extended by `ty`.
pub fn fresh<M: CoverMonad>(ctx: &Ctx<Ty>, ty: &Ty) -> SemVal<M> {
    reflect(&ctx.snoc(ty.clone()), ty, Ne::Var(Idx::ZERO))
}

/// Reification: extract a normal form of type `ty` from a semantic value.
pub fn reify<M: CoverMonad>(ctx: &Ctx<Ty>, ty: &Ty, a: SemVal<M>) -> Nf {
    match ty {
        Ty::One => Nf::Unit,
        Ty::Prod(t1, t2) => {
            let (a1, a2) = a.into_pair();
            Nf::pair(reify(ctx, t1, a1), reify(ctx, t2, a2))
        }
        Ty::Arr(dom, cod) => {
            let f = a.into_fun();
            let ctx2 = ctx.snoc((**dom).clone());
            let body = f.apply(&Ope::wk(ctx, (**dom).clone()), fresh(ctx, dom));
            Nf::abs((**dom).clone(), reify(&ctx2, cod, body))
        }
        Ty::Atom(_) => {
            let c = M::map(
                Arc::new(|leaf| match leaf {
                    PosLeaf::Ne(u) => Nf::Atom(u),
                    _ => panic!("shape mismatch: injection leaf at atomic type"),
                }),
                a.into_pos(),
            );
            M::run_nf(ctx, ty, c).expect("run_nf at atomic type")
        }
        Ty::Zero => {
            let c = M::map(
                Arc::new(|_: PosLeaf<M>| -> Nf {
                    panic!("shape mismatch: value leaf at empty type")
                }),
                a.into_pos(),
            );
            M::run_nf(ctx, ty, c).expect("run_nf at empty type")
        }
        Ty::Sum(t1, t2) => {
            let (t1c, t2c) = ((**t1).clone(), (**t2).clone());
            let c = M::stmap(
                ctx,
                Arc::new(move |tau: &Ope<Ty>, leaf| match leaf {
                    PosLeaf::Inl(v) => Nf::inj(Side::Inl, reify(tau.target(), &t1c, *v)),
                    PosLeaf::Inr(v) => Nf::inj(Side::Inr, reify(tau.target(), &t2c, *v)),
                    PosLeaf::Ne(_) => panic!("shape mismatch: neutral leaf at sum type"),
                }),
                a.into_pos(),
            );
            M::run_nf(ctx, ty, c).expect("run_nf at sum type")
        }
    }
}

/// Weak pasting: push a cover of semantic values at type `ty` into a single
/// semantic value.
pub fn run_sem<M: CoverMonad>(ctx: &Ctx<Ty>, ty: &Ty, c: M::C<SemVal<M>>) -> SemVal<M> {
    if ty.is_positive() {
        return SemVal::Pos(M::join(M::map(Arc::new(SemVal::into_pos), c)));
    }
    match ty {
        Ty::One => SemVal::Unit,
        Ty::Prod(a, b) => SemVal::Pair(
            Box::new(run_sem(
                ctx,
                a,
                M::map(Arc::new(|v: SemVal<M>| v.into_pair().0), c.clone()),
            )),
            Box::new(run_sem(
                ctx,
                b,
                M::map(Arc::new(|v: SemVal<M>| v.into_pair().1), c),
            )),
        ),
        Ty::Arr(_, cod) => {
            let cod = cod.clone();
            SemVal::Fun(KripkeFn::new(ctx, move |tau, arg| {
                let delta = tau.target().clone();
                let c2 = c.rename(tau);
                let arg = arg.clone();
                let applied = M::stmap(
                    &delta,
                    Arc::new(move |tau2: &Ope<Ty>, f: SemVal<M>| {
                        f.into_fun()
                            .apply(&Ope::id(tau2.target()), arg.rename(tau2))
                    }),
                    c2,
                );
                run_sem(&delta, &cod, applied)
            }))
        }
        _ => unreachable!(),
    }
}

/// Interpret a binder: the body is closed over the environment and becomes
/// a Kripke function.
///
/// `tyctx` types the term's free variables, `semctx` is where the
/// environment's values live; under a Kripke binder the two diverge.
fn close_binder<M: CoverMonad>(
    tyctx: &Ctx<Ty>,
    semctx: &Ctx<Ty>,
    dom: Ty,
    body: Term,
    env: &[SemVal<M>],
) -> KripkeFn<M> {
    let env = env.to_vec();
    let tyctx = tyctx.clone();
    KripkeFn::new(semctx, move |tau, a| {
        let mut e2 = env.rename(tau);
        e2.push(a);
        eval(&tyctx.snoc(dom.clone()), tau.target(), &body, &e2)
    })
}

/// Evaluation of a term typed in `tyctx` in an environment of values living
/// at `semctx`.
///
/// Case and abort targeting arbitrary semantic types go through `run_sem`,
/// the weak pasting operation.
pub fn eval<M: CoverMonad>(
    tyctx: &Ctx<Ty>,
    semctx: &Ctx<Ty>,
    t: &Term,
    env: &[SemVal<M>],
) -> SemVal<M> {
    match t {
        Term::Var(x) => {
            let n = env.len();
            env[n - 1 - x.0].clone()
        }
        Term::Abs(dom, body) => SemVal::Fun(close_binder(
            tyctx,
            semctx,
            dom.clone(),
            (**body).clone(),
            env,
        )),
        Term::App(t, u) => {
            let f = eval(tyctx, semctx, t, env).into_fun();
            let a = eval(tyctx, semctx, u, env);
            f.apply(&Ope::id(semctx), a)
        }
        Term::Unit => SemVal::Unit,
        Term::Pair(a, b) => SemVal::Pair(
            Box::new(eval(tyctx, semctx, a, env)),
            Box::new(eval(tyctx, semctx, b, env)),
        ),
        Term::Prj(p, t) => {
            let (a, b) = eval(tyctx, semctx, t, env).into_pair();
            match p {
                Proj::Fst => a,
                Proj::Snd => b,
            }
        }
        Term::Inj(s, _, t) => {
            let v = Box::new(eval(tyctx, semctx, t, env));
            let leaf = match s {
                Side::Inl => PosLeaf::Inl(v),
                Side::Inr => PosLeaf::Inr(v),
            };
            SemVal::Pos(M::ret(semctx, leaf))
        }
        Term::Case(scrut, l, r) => {
            // The scrutinee's summands and the result type are recovered by
            // inference; eval's precondition guarantees success.
            let (a1, a2) = match infer(tyctx, scrut).expect("eval: ill-typed scrutinee") {
                Ty::Sum(a1, a2) => (*a1, *a2),
                _ => panic!("shape mismatch: case on non-sum"),
            };
            let result_ty =
                infer(&tyctx.snoc(a1.clone()), l).expect("eval: ill-typed case branch");
            let f1 = close_binder(tyctx, semctx, a1, (**l).clone(), env);
            let f2 = close_binder(tyctx, semctx, a2, (**r).clone(), env);
            let c = eval(tyctx, semctx, scrut, env).into_pos();
            let dispatched = M::stmap(
                semctx,
                Arc::new(move |tau: &Ope<Ty>, leaf| match leaf {
                    PosLeaf::Inl(v) => f1.apply(tau, *v),
                    PosLeaf::Inr(v) => f2.apply(tau, *v),
                    PosLeaf::Ne(_) => panic!("shape mismatch: neutral leaf at sum type"),
                }),
                c,
            );
            run_sem(semctx, &result_ty, dispatched)
        }
        Term::Abort(result_ty, t) => {
            let c = eval(tyctx, semctx, t, env).into_pos();
            let empty = M::map(
                Arc::new(|_: PosLeaf<M>| -> SemVal<M> {
                    panic!("shape mismatch: value leaf at empty type")
                }),
                c,
            );
            run_sem(semctx, result_ty, empty)
        }
    }
}

/// The identity environment: maps each free index to its reflected unknown.
pub fn id_env<M: CoverMonad>(ctx: &Ctx<Ty>) -> Vec<SemVal<M>> {
    let mut env: Vec<SemVal<M>> = Vec::new();
    let mut cur = Ctx::empty();
    for entry in ctx.entries() {
        let wk = Ope::wk(&cur, entry.clone());
        env = env.rename(&wk);
        env.push(fresh(&cur, entry));
        cur = cur.snoc(entry.clone());
    }
    env
}

/// Normalization by evaluation: reify the evaluation of `t` in the identity
/// environment.
pub fn norm<M: CoverMonad>(ctx: &Ctx<Ty>, t: &Term) -> Result<Nf, TypeError> {
    let ty = infer(ctx, t)?;
    let v = eval::<M>(ctx, ctx, t, &id_env::<M>(ctx));
    Ok(reify(ctx, &ty, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stlc::cover::{ContCover, FreeCover};
    use crate::stlc::erase::erase_nf;
    use crate::stlc::validate::check_nf;

    fn o() -> Ty {
        Ty::atom()
    }

    #[test]
    fn eta_expands_function_variable() {
        let ctx = Ctx::from_entries(vec![Ty::arr(o(), o())]);
        let t = Term::var(0);
        let nf = norm::<FreeCover>(&ctx, &t).unwrap();
        let expected = Nf::abs(
            o(),
            Nf::Atom(Ne::app(Ne::Var(Idx(1)), Nf::Atom(Ne::Var(Idx(0))))),
        );
        assert_eq!(nf, expected);
    }

    #[test]
    fn beta_reduces_under_neutral_argument() {
        // (\x:o. x) y  with  y : o  in scope
        let ctx = Ctx::from_entries(vec![o()]);
        let t = Term::app(Term::abs(o(), Term::var(0)), Term::var(0));
        let nf = norm::<FreeCover>(&ctx, &t).unwrap();
        assert_eq!(nf, Nf::Atom(Ne::Var(Idx(0))));
    }

    #[test]
    fn codiagonal_normal_form() {
        // \x:o+o. case x of { inl y -> y ; inr z -> z }
        let t = Term::abs(
            Ty::sum(o(), o()),
            Term::case(Term::var(0), Term::var(0), Term::var(0)),
        );
        let nf = norm::<FreeCover>(&Ctx::empty(), &t).unwrap();
        let expected = Nf::abs(
            Ty::sum(o(), o()),
            Nf::case(
                Ne::Var(Idx(0)),
                (o(), o()),
                Nf::Atom(Ne::Var(Idx(0))),
                Nf::Atom(Ne::Var(Idx(0))),
            ),
        );
        assert_eq!(nf, expected);
    }

    #[test]
    fn neutral_function_keeps_case_argument() {
        // f (case x of { inl y -> y ; inr z -> z }): the argument is a case
        // tree at atomic type, which the grammar admits as a normal form, so
        // no commuting conversion fires against a neutral head.
        let ctx = Ctx::from_entries(vec![Ty::arr(o(), o()), Ty::sum(o(), o())]);
        let t = Term::app(
            Term::var(1),
            Term::case(Term::var(0), Term::var(0), Term::var(0)),
        );
        let nf = norm::<FreeCover>(&ctx, &t).unwrap();
        let expected = Nf::Atom(Ne::app(
            Ne::Var(Idx(1)),
            Nf::case(
                Ne::Var(Idx(0)),
                (o(), o()),
                Nf::Atom(Ne::Var(Idx(0))),
                Nf::Atom(Ne::Var(Idx(0))),
            ),
        ));
        assert_eq!(nf, expected);
    }

    #[test]
    fn case_function_commutes_out() {
        // (case x of { inl y -> \z:o. z ; inr y -> \z:o. y }) w: pasting a
        // cover of functions makes the case float outside the application.
        let ctx = Ctx::from_entries(vec![o(), Ty::sum(o(), o())]);
        let t = Term::app(
            Term::case(
                Term::var(0),
                Term::abs(o(), Term::var(0)),
                Term::abs(o(), Term::var(1)),
            ),
            Term::var(1),
        );
        let nf = norm::<FreeCover>(&ctx, &t).unwrap();
        let expected = Nf::case(
            Ne::Var(Idx(0)),
            (o(), o()),
            Nf::Atom(Ne::Var(Idx(2))),
            Nf::Atom(Ne::Var(Idx(0))),
        );
        assert_eq!(nf, expected);
    }

    #[test]
    fn free_and_continuation_monads_agree() {
        let terms = vec![
            (
                Ctx::empty(),
                Term::abs(
                    Ty::sum(o(), o()),
                    Term::case(Term::var(0), Term::var(0), Term::var(0)),
                ),
            ),
            (
                Ctx::from_entries(vec![Ty::arr(o(), o()), Ty::sum(o(), o())]),
                Term::app(
                    Term::var(1),
                    Term::case(Term::var(0), Term::var(0), Term::var(0)),
                ),
            ),
            (
                Ctx::from_entries(vec![Ty::sum(Ty::Zero, o())]),
                Term::case(
                    Term::var(0),
                    Term::abort(o(), Term::var(0)),
                    Term::var(0),
                ),
            ),
        ];
        for (ctx, t) in terms {
            let a = norm::<FreeCover>(&ctx, &t).unwrap();
            let b = norm::<ContCover>(&ctx, &t).unwrap();
            assert_eq!(a, b, "disagreement on {t:?}");
        }
    }

    #[test]
    fn normal_forms_pass_validator_and_erase() {
        let ctx = Ctx::from_entries(vec![Ty::arr(o(), o())]);
        let t = Term::abs(
            Ty::sum(o(), Ty::prod(o(), o())),
            Term::case(
                Term::var(0),
                Term::var(0),
                Term::prj(Proj::Snd, Term::var(0)),
            ),
        );
        let ty = infer(&ctx, &t).unwrap();
        let nf = norm::<FreeCover>(&ctx, &t).unwrap();
        check_nf(&ctx, &ty, &nf).unwrap();
        let back = erase_nf(&ctx, &ty, &nf).unwrap();
        assert_eq!(infer(&ctx, &back).unwrap(), ty);
        // erased normal forms are already normal
        assert_eq!(norm::<FreeCover>(&ctx, &back).unwrap(), nf);
    }

    #[test]
    fn norm_is_idempotent_via_erasure() {
        let ctx = Ctx::from_entries(vec![Ty::arr(o(), Ty::sum(o(), o()))]);
        let t = Term::abs(
            o(),
            Term::case(
                Term::app(Term::var(1), Term::var(0)),
                Term::inj(Side::Inr, o(), Term::var(0)),
                Term::inj(Side::Inl, o(), Term::var(0)),
            ),
        );
        let ty = infer(&ctx, &t).unwrap();
        let nf = norm::<FreeCover>(&ctx, &t).unwrap();
        let back = erase_nf(&ctx, &ty, &nf).unwrap();
        assert_eq!(norm::<FreeCover>(&ctx, &back).unwrap(), nf);
    }
}
