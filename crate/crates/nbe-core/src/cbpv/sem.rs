//! CBPV semantics: cover-monad services for the inductive `CovC`, semantic
//! values, monadic positive reflection, reification, weak pasting over
//! negative types, evaluation, and normalization.

use std::sync::Arc;

use crate::kernel::{Ctx, Idx, Ope, Renameable};
use crate::stlc::{Proj, Side};

use super::infer::{infer_tm, infer_val, TypeError};
use super::{CovC, NeC, NfC, Tm, TyN, TyP, Val, VnfC};

impl<J> CovC<J> {
    /// Functorial action on leaves.
    pub fn map<K>(self, f: &dyn Fn(J) -> K) -> CovC<K> {
        match self {
            CovC::Return(j) => CovC::Return(f(j)),
            CovC::Bind { ann, scrut, body } => CovC::bind(ann, scrut, body.map(f)),
            CovC::Split { scrut, tys, body } => CovC::split(scrut, tys, body.map(f)),
            CovC::Case { scrut, tys, left, right } => {
                CovC::case(scrut, tys, left.map(f), right.map(f))
            }
            CovC::Abort { scrut } => CovC::Abort { scrut },
        }
    }
}

impl<J> CovC<CovC<J>> {
    /// Monad multiplication: graft inner trees onto the leaves.
    pub fn flatten(self) -> CovC<J> {
        match self {
            CovC::Return(inner) => inner,
            CovC::Bind { ann, scrut, body } => CovC::bind(ann, scrut, body.flatten()),
            CovC::Split { scrut, tys, body } => CovC::split(scrut, tys, body.flatten()),
            CovC::Case { scrut, tys, left, right } => {
                CovC::case(scrut, tys, left.flatten(), right.flatten())
            }
            CovC::Abort { scrut } => CovC::Abort { scrut },
        }
    }
}

impl<J: Renameable<TyP>> CovC<J> {
    /// Strong functorial action; the morphism sees the OPE from the root
    /// context to the leaf's path-extended context.
    pub fn stmap<K>(self, ctx: &Ctx<TyP>, l: &dyn Fn(&Ope<TyP>, J) -> K) -> CovC<K> {
        fn go<J, K>(acc: &Ope<TyP>, l: &dyn Fn(&Ope<TyP>, J) -> K, c: CovC<J>) -> CovC<K> {
            match c {
                CovC::Return(j) => CovC::Return(l(acc, j)),
                CovC::Bind { ann, scrut, body } => {
                    let acc2 = acc.weak(ann.clone());
                    CovC::bind(ann, scrut, go(&acc2, l, *body))
                }
                CovC::Split { scrut, tys, body } => {
                    let acc2 = acc.weak(tys.0.clone()).weak(tys.1.clone());
                    CovC::split(scrut, tys, go(&acc2, l, *body))
                }
                CovC::Case { scrut, tys, left, right } => {
                    let acc_l = acc.weak(tys.0.clone());
                    let acc_r = acc.weak(tys.1.clone());
                    CovC::case(scrut, tys, go(&acc_l, l, *left), go(&acc_r, l, *right))
                }
                CovC::Abort { scrut } => CovC::Abort { scrut },
            }
        }
        go(&Ope::id(ctx), l, self)
    }
}

/// Monoidal functoriality: pair up the leaves of two covers, renaming the
/// second along the first's paths.
pub fn star<A, B>(ctx: &Ctx<TyP>, c1: CovC<A>, c2: &CovC<B>) -> CovC<(A, B)>
where
    A: Renameable<TyP>,
    B: Renameable<TyP>,
{
    c1.stmap(ctx, &|tau, a| {
        c2.rename(tau)
            .stmap(tau.target(), &|tau2, b| (a.rename(tau2), b))
    })
    .flatten()
}

/// Semantic values for both polarities. Positive values are direct data
/// (sums are plain injections, no cover); `Thunk` is semantically
/// transparent, so a thunk value is just a negative value. Covers sit only
/// under `VComp` and `VAtomN`.
#[derive(Clone)]
pub enum SemValC {
    VAtomP(Idx),
    VUnit,
    VPair(Box<SemValC>, Box<SemValC>),
    VInl(Box<SemValC>),
    VInr(Box<SemValC>),
    VUnitN,
    VPairN(Box<SemValC>, Box<SemValC>),
    VFun(KripkeFnC),
    VComp(Box<CovC<SemValC>>),
    VAtomN(CovC<NeC>),
}

/// Kripke function over positive arguments, as in the STLC module.
#[derive(Clone)]
pub struct KripkeFnC {
    ope: Ope<TyP>,
    f: Arc<dyn Fn(&Ope<TyP>, SemValC) -> SemValC + Send + Sync>,
}

impl KripkeFnC {
    pub fn new(
        ctx: &Ctx<TyP>,
        f: impl Fn(&Ope<TyP>, SemValC) -> SemValC + Send + Sync + 'static,
    ) -> Self {
        KripkeFnC {
            ope: Ope::id(ctx),
            f: Arc::new(f),
        }
    }

    pub fn apply(&self, tau: &Ope<TyP>, a: SemValC) -> SemValC {
        (self.f)(&self.ope.then(tau), a)
    }
}

impl Renameable<TyP> for KripkeFnC {
    fn rename(&self, ope: &Ope<TyP>) -> Self {
        KripkeFnC {
            ope: self.ope.then(ope),
            f: self.f.clone(),
        }
    }
}

impl Renameable<TyP> for SemValC {
    fn rename(&self, ope: &Ope<TyP>) -> Self {
        match self {
            SemValC::VAtomP(x) => SemValC::VAtomP(ope.apply(*x)),
            SemValC::VUnit => SemValC::VUnit,
            SemValC::VPair(a, b) => {
                SemValC::VPair(Box::new(a.rename(ope)), Box::new(b.rename(ope)))
            }
            SemValC::VInl(a) => SemValC::VInl(Box::new(a.rename(ope))),
            SemValC::VInr(a) => SemValC::VInr(Box::new(a.rename(ope))),
            SemValC::VUnitN => SemValC::VUnitN,
            SemValC::VPairN(a, b) => {
                SemValC::VPairN(Box::new(a.rename(ope)), Box::new(b.rename(ope)))
            }
            SemValC::VFun(f) => SemValC::VFun(f.rename(ope)),
            SemValC::VComp(c) => SemValC::VComp(Box::new(c.rename(ope))),
            SemValC::VAtomN(c) => SemValC::VAtomN(c.rename(ope)),
        }
    }
}

impl SemValC {
    fn into_fun(self) -> KripkeFnC {
        match self {
            SemValC::VFun(f) => f,
            _ => panic!("shape mismatch: expected a semantic function"),
        }
    }

    fn into_pair_n(self) -> (SemValC, SemValC) {
        match self {
            SemValC::VPairN(a, b) => (*a, *b),
            _ => panic!("shape mismatch: expected a negative pair"),
        }
    }

    fn into_pair_p(self) -> (SemValC, SemValC) {
        match self {
            SemValC::VPair(a, b) => (*a, *b),
            _ => panic!("shape mismatch: expected a positive pair"),
        }
    }

    fn into_comp(self) -> CovC<SemValC> {
        match self {
            SemValC::VComp(c) => *c,
            _ => panic!("shape mismatch: expected a computation"),
        }
    }

    fn into_atom_n(self) -> CovC<NeC> {
        match self {
            SemValC::VAtomN(c) => c,
            _ => panic!("shape mismatch: expected a negative atom"),
        }
    }
}

/// Positive reflection: break a variable of positive type down to atoms and
/// thunks. Runs in the cover monad because sums and products require
/// pattern matching.
pub fn reflect_pos(ctx: &Ctx<TyP>, p: &TyP, x: Idx) -> CovC<SemValC> {
    match p {
        TyP::Atom(_) => CovC::Return(SemValC::VAtomP(x)),
        TyP::One => CovC::Return(SemValC::VUnit),
        TyP::Prod(p1, p2) => {
            let ctx2 = ctx.snoc((**p1).clone()).snoc((**p2).clone());
            let c1 = reflect_pos(&ctx2, p1, Idx(1));
            let c2 = reflect_pos(&ctx2, p2, Idx(0));
            let body = star(&ctx2, c1, &c2)
                .map(&|(a, b)| SemValC::VPair(Box::new(a), Box::new(b)));
            CovC::split(x, ((**p1).clone(), (**p2).clone()), body)
        }
        TyP::Zero => CovC::Abort { scrut: x },
        TyP::Sum(p1, p2) => CovC::case(
            x,
            ((**p1).clone(), (**p2).clone()),
            fresh(ctx, p1).map(&|a| SemValC::VInl(Box::new(a))),
            fresh(ctx, p2).map(&|a| SemValC::VInr(Box::new(a))),
        ),
        TyP::Thunk(n) => CovC::Return(reflect_neg(ctx, n, NeC::Force(x))),
    }
}

/// The fresh unknown: reflect the innermost variable of `ctx` extended by
/// `p`.
pub fn fresh(ctx: &Ctx<TyP>, p: &TyP) -> CovC<SemValC> {
    reflect_pos(&ctx.snoc(p.clone()), p, Idx(0))
}

/// Negative reflection of a neutral.
pub fn reflect_neg(ctx: &Ctx<TyP>, n: &TyN, u: NeC) -> SemValC {
    match n {
        TyN::Comp(p) => SemValC::VComp(Box::new(CovC::bind((**p).clone(), u, fresh(ctx, p)))),
        TyN::Atom(_) => SemValC::VAtomN(CovC::Return(u)),
        TyN::Top => SemValC::VUnitN,
        TyN::With(n1, n2) => SemValC::VPairN(
            Box::new(reflect_neg(ctx, n1, NeC::prj(Proj::Fst, u.clone()))),
            Box::new(reflect_neg(ctx, n2, NeC::prj(Proj::Snd, u))),
        ),
        TyN::Arr(p, n2) => {
            let (p, n2) = (p.clone(), n2.clone());
            SemValC::VFun(KripkeFnC::new(ctx, move |tau, a| {
                let delta = tau.target().clone();
                let arg = reify_pos(&delta, &p, a);
                reflect_neg(&delta, &n2, NeC::app(u.rename(tau), arg))
            }))
        }
    }
}

/// Positive reification: semantic value to normal value.
pub fn reify_pos(ctx: &Ctx<TyP>, p: &TyP, a: SemValC) -> VnfC {
    match p {
        TyP::Atom(_) => match a {
            SemValC::VAtomP(x) => VnfC::Var(x),
            _ => panic!("shape mismatch: expected an atomic variable"),
        },
        TyP::One => VnfC::Unit,
        TyP::Prod(p1, p2) => {
            let (a1, a2) = a.into_pair_p();
            VnfC::pair(reify_pos(ctx, p1, a1), reify_pos(ctx, p2, a2))
        }
        TyP::Zero => panic!("shape mismatch: value at empty type"),
        TyP::Sum(p1, p2) => match a {
            SemValC::VInl(v) => VnfC::inj(Side::Inl, reify_pos(ctx, p1, *v)),
            SemValC::VInr(v) => VnfC::inj(Side::Inr, reify_pos(ctx, p2, *v)),
            _ => panic!("shape mismatch: expected an injection"),
        },
        TyP::Thunk(n) => VnfC::thunk(reify_neg(ctx, n, a)),
    }
}

/// Negative reification: semantic value to normal term.
pub fn reify_neg(ctx: &Ctx<TyP>, n: &TyN, b: SemValC) -> NfC {
    match n {
        TyN::Comp(p) => NfC::Ret(
            b.into_comp()
                .stmap(ctx, &|tau, a| reify_pos(tau.target(), p, a)),
        ),
        TyN::Atom(_) => NfC::NeAtom(b.into_atom_n()),
        TyN::Top => NfC::UnitN,
        TyN::With(n1, n2) => {
            let (b1, b2) = b.into_pair_n();
            NfC::pair_n(reify_neg(ctx, n1, b1), reify_neg(ctx, n2, b2))
        }
        TyN::Arr(p, n2) => {
            let f = b.into_fun();
            let ctx2 = ctx.snoc((**p).clone());
            let wk = Ope::wk(ctx, (**p).clone());
            let applied = fresh(ctx, p).stmap(&ctx2, &|tau2, a| f.apply(&wk.then(tau2), a));
            let body = run_sem_n(&ctx2, n2, applied);
            NfC::abs((**p).clone(), reify_neg(&ctx2, n2, body))
        }
    }
}

/// Weak pasting over a negative type: every negative type is monadic.
pub fn run_sem_n(ctx: &Ctx<TyP>, n: &TyN, c: CovC<SemValC>) -> SemValC {
    match n {
        TyN::Comp(_) => SemValC::VComp(Box::new(c.map(&SemValC::into_comp).flatten())),
        TyN::Atom(_) => SemValC::VAtomN(c.map(&SemValC::into_atom_n).flatten()),
        TyN::Top => SemValC::VUnitN,
        TyN::With(n1, n2) => SemValC::VPairN(
            Box::new(run_sem_n(
                ctx,
                n1,
                c.clone().map(&|v: SemValC| v.into_pair_n().0),
            )),
            Box::new(run_sem_n(ctx, n2, c.map(&|v: SemValC| v.into_pair_n().1))),
        ),
        TyN::Arr(_, n2) => {
            let n2 = n2.clone();
            SemValC::VFun(KripkeFnC::new(ctx, move |tau, a| {
                let delta = tau.target().clone();
                let applied = c.rename(tau).stmap(&delta, &|tau2: &Ope<TyP>, fv: SemValC| {
                    fv.into_fun()
                        .apply(&Ope::id(tau2.target()), a.rename(tau2))
                });
                run_sem_n(&delta, &n2, applied)
            }))
        }
    }
}

/// Interpret a one-variable binder as a Kripke function.
fn close_binder(
    tyctx: &Ctx<TyP>,
    semctx: &Ctx<TyP>,
    dom: TyP,
    body: Tm,
    env: &[SemValC],
) -> KripkeFnC {
    let env = env.to_vec();
    let tyctx = tyctx.clone();
    KripkeFnC::new(semctx, move |tau, a| {
        let mut e2 = env.rename(tau);
        e2.push(a);
        eval_tm(&tyctx.snoc(dom.clone()), tau.target(), &body, &e2)
    })
}

/// Evaluate a value. `tyctx` types the free variables; `semctx` is where
/// the environment's values live.
pub fn eval_val(
    tyctx: &Ctx<TyP>,
    semctx: &Ctx<TyP>,
    v: &Val,
    env: &[SemValC],
) -> SemValC {
    match v {
        Val::Var(x) => {
            let n = env.len();
            env[n - 1 - x.0].clone()
        }
        Val::Thunk(t) => eval_tm(tyctx, semctx, t, env),
        Val::Unit => SemValC::VUnit,
        Val::Pair(a, b) => SemValC::VPair(
            Box::new(eval_val(tyctx, semctx, a, env)),
            Box::new(eval_val(tyctx, semctx, b, env)),
        ),
        Val::Inj(Side::Inl, _, v) => {
            SemValC::VInl(Box::new(eval_val(tyctx, semctx, v, env)))
        }
        Val::Inj(Side::Inr, _, v) => {
            SemValC::VInr(Box::new(eval_val(tyctx, semctx, v, env)))
        }
    }
}

/// Evaluate a term. Positive eliminations act directly on value shapes; the
/// monad only appears at `Ret` and `Bind`.
pub fn eval_tm(tyctx: &Ctx<TyP>, semctx: &Ctx<TyP>, t: &Tm, env: &[SemValC]) -> SemValC {
    match t {
        Tm::Ret(v) => SemValC::VComp(Box::new(CovC::Return(eval_val(tyctx, semctx, v, env)))),
        Tm::Abs(dom, body) => SemValC::VFun(close_binder(
            tyctx,
            semctx,
            dom.clone(),
            (**body).clone(),
            env,
        )),
        Tm::PairN(a, b) => SemValC::VPairN(
            Box::new(eval_tm(tyctx, semctx, a, env)),
            Box::new(eval_tm(tyctx, semctx, b, env)),
        ),
        Tm::UnitN => SemValC::VUnitN,
        Tm::Force(v) => eval_val(tyctx, semctx, v, env),
        Tm::App(t, v) => {
            let f = eval_tm(tyctx, semctx, t, env).into_fun();
            let a = eval_val(tyctx, semctx, v, env);
            f.apply(&Ope::id(semctx), a)
        }
        Tm::Prj(p, t) => {
            let (a, b) = eval_tm(tyctx, semctx, t, env).into_pair_n();
            match p {
                Proj::Fst => a,
                Proj::Snd => b,
            }
        }
        Tm::Bind(ann, u, t) => {
            let n = infer_tm(&tyctx.snoc(ann.clone()), t).expect("eval: ill-typed bind body");
            let c = eval_tm(tyctx, semctx, u, env).into_comp();
            let f = close_binder(tyctx, semctx, ann.clone(), (**t).clone(), env);
            let dispatched = c.stmap(semctx, &|tau, a| f.apply(tau, a));
            run_sem_n(semctx, &n, dispatched)
        }
        Tm::Split(v, t) => {
            let (p1, p2) = match infer_val(tyctx, v).expect("eval: ill-typed split scrutinee")
            {
                TyP::Prod(p1, p2) => (*p1, *p2),
                _ => panic!("shape mismatch: split on non-product"),
            };
            let (a1, a2) = eval_val(tyctx, semctx, v, env).into_pair_p();
            let mut e2 = env.to_vec();
            e2.push(a1);
            e2.push(a2);
            eval_tm(&tyctx.snoc(p1).snoc(p2), semctx, t, &e2)
        }
        Tm::Case(v, l, r) => {
            let (p1, p2) = match infer_val(tyctx, v).expect("eval: ill-typed case scrutinee")
            {
                TyP::Sum(p1, p2) => (*p1, *p2),
                _ => panic!("shape mismatch: case on non-sum"),
            };
            match eval_val(tyctx, semctx, v, env) {
                SemValC::VInl(a) => {
                    let mut e2 = env.to_vec();
                    e2.push(*a);
                    eval_tm(&tyctx.snoc(p1), semctx, l, &e2)
                }
                SemValC::VInr(a) => {
                    let mut e2 = env.to_vec();
                    e2.push(*a);
                    eval_tm(&tyctx.snoc(p2), semctx, r, &e2)
                }
                _ => panic!("shape mismatch: case on a non-injection"),
            }
        }
        Tm::Abort(_, _) => panic!("shape mismatch: value at empty type"),
    }
}

/// The identity environment, necessarily monadic because of positive
/// reflection.
pub fn id_env(ctx: &Ctx<TyP>) -> CovC<Vec<SemValC>> {
    let mut c: CovC<Vec<SemValC>> = CovC::Return(Vec::new());
    let mut cur = Ctx::empty();
    for p in ctx.entries() {
        let cur2 = cur.snoc(p.clone());
        let wk = Ope::wk(&cur, p.clone());
        let renamed = c.rename(&wk);
        let fr = fresh(&cur, p);
        c = star(&cur2, renamed, &fr).map(&|(env, a): (Vec<SemValC>, SemValC)| {
            let mut env = env;
            env.push(a);
            env
        });
        cur = cur2;
    }
    c
}

/// Normalization by evaluation for CBPV terms.
pub fn norm_cbpv(ctx: &Ctx<TyP>, t: &Tm) -> Result<NfC, TypeError> {
    let n = infer_tm(ctx, t)?;
    let evald = id_env(ctx).stmap(ctx, &|tau, env| eval_tm(ctx, tau.target(), t, &env));
    let v = run_sem_n(ctx, &n, evald);
    Ok(reify_neg(ctx, &n, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(name: &str) -> TyP {
        TyP::atom(name)
    }

    #[test]
    fn force_at_negative_atom() {
        let ctx = Ctx::from_entries(vec![TyP::thunk(TyN::atom("n"))]);
        let t = Tm::force(Val::var(0));
        let nf = norm_cbpv(&ctx, &t).unwrap();
        assert_eq!(nf, NfC::NeAtom(CovC::Return(NeC::Force(Idx(0)))));
    }

    #[test]
    fn force_at_comp_one() {
        let ctx = Ctx::from_entries(vec![TyP::thunk(TyN::comp(TyP::One))]);
        let t = Tm::force(Val::var(0));
        let nf = norm_cbpv(&ctx, &t).unwrap();
        let expected = NfC::Ret(CovC::bind(
            TyP::One,
            NeC::Force(Idx(0)),
            CovC::Return(VnfC::Unit),
        ));
        assert_eq!(nf, expected);
    }

    #[test]
    fn identity_on_unit() {
        let t = Tm::abs(TyP::One, Tm::ret(Val::var(0)));
        let nf = norm_cbpv(&Ctx::empty(), &t).unwrap();
        let expected = NfC::abs(TyP::One, NfC::Ret(CovC::Return(VnfC::Unit)));
        assert_eq!(nf, expected);
    }

    #[test]
    fn bind_of_ret_collapses() {
        // bind (ret x) (ret v0)  ==  ret x
        let p = op("p");
        let ctx = Ctx::from_entries(vec![p.clone()]);
        let t = Tm::bind(p.clone(), Tm::ret(Val::var(0)), Tm::ret(Val::var(0)));
        let nf = norm_cbpv(&ctx, &t).unwrap();
        assert_eq!(nf, NfC::Ret(CovC::Return(VnfC::Var(Idx(0)))));
    }

    #[test]
    fn case_on_injection_dispatches() {
        let p = op("p");
        let ctx = Ctx::from_entries(vec![p.clone()]);
        let t = Tm::case(
            Val::inj(Side::Inl, TyP::One, Val::var(0)),
            Tm::ret(Val::var(0)),
            Tm::ret(Val::var(1)),
        );
        let nf = norm_cbpv(&ctx, &t).unwrap();
        assert_eq!(nf, NfC::Ret(CovC::Return(VnfC::Var(Idx(0)))));
    }

    #[test]
    fn sum_variable_splits_into_case_tree() {
        // \x : p + 1. ret x
        let p = op("p");
        let dom = TyP::sum(p.clone(), TyP::One);
        let t = Tm::abs(dom.clone(), Tm::ret(Val::var(0)));
        let nf = norm_cbpv(&Ctx::empty(), &t).unwrap();
        let expected = NfC::abs(
            dom,
            NfC::Ret(CovC::case(
                Idx(0),
                (p, TyP::One),
                CovC::Return(VnfC::inj(Side::Inl, VnfC::Var(Idx(0)))),
                CovC::Return(VnfC::inj(Side::Inr, VnfC::Unit)),
            )),
        );
        assert_eq!(nf, expected);
    }

    #[test]
    fn product_variable_splits() {
        // \x : p * p'. ret x
        let p = op("p");
        let q = op("q");
        let dom = TyP::prod(p.clone(), q.clone());
        let t = Tm::abs(dom.clone(), Tm::ret(Val::var(0)));
        let nf = norm_cbpv(&Ctx::empty(), &t).unwrap();
        let expected = NfC::abs(
            dom,
            NfC::Ret(CovC::split(
                Idx(0),
                (p, q),
                CovC::Return(VnfC::pair(VnfC::Var(Idx(1)), VnfC::Var(Idx(0)))),
            )),
        );
        assert_eq!(nf, expected);
    }

    #[test]
    fn eta_for_functions() {
        // a variable f : U (p -> F p), forced, is eta-expanded
        let p = op("p");
        let n = TyN::arr(p.clone(), TyN::comp(p.clone()));
        let ctx = Ctx::from_entries(vec![TyP::thunk(n)]);
        let t = Tm::force(Val::var(0));
        let nf = norm_cbpv(&ctx, &t).unwrap();
        let expected = NfC::abs(
            p.clone(),
            NfC::Ret(CovC::bind(
                p,
                NeC::app(NeC::Force(Idx(1)), VnfC::Var(Idx(0))),
                CovC::Return(VnfC::Var(Idx(0))),
            )),
        );
        assert_eq!(nf, expected);
    }
}
