//! Polarized semantics: services for the `Add` trees and the slim cover
//! monad, continuation-style positive reflection, matching against pattern
//! trees, evaluation, and normalization.

use std::sync::Arc;

use crate::kernel::{Ctx, Idx, Ope, Renameable};
use crate::stlc::{Proj, Side};

use super::infer::{infer_tmz, TypeError};
use super::{Add, CovZ, Hyp, NeZ, NfZ, TmZ, TyN, TyP, ValZ, VnfZ};

impl<J> Add<J> {
    /// Strong functorial action; the morphism sees the OPE from `acc`'s
    /// source into the leaf's hypothesis-extended context.
    pub fn stmap_from<K>(&self, acc: &Ope<Hyp>, l: &dyn Fn(&Ope<Hyp>, &J) -> K) -> Add<K> {
        match self {
            Add::Leaf(j) => Add::Leaf(l(acc, j)),
            Add::HypP(o, rest) => {
                Add::hyp_p(o, rest.stmap_from(&acc.weak(Hyp::AtomP(o.clone())), l))
            }
            Add::HypN(n, rest) => {
                Add::hyp_n(n.clone(), rest.stmap_from(&acc.weak(Hyp::Neg(n.clone())), l))
            }
            Add::Branch0 => Add::Branch0,
            Add::Branch2(a, b) => Add::branch2(a.stmap_from(acc, l), b.stmap_from(acc, l)),
            Add::Split0(rest) => Add::split0(rest.stmap_from(acc, l)),
            Add::Split2(inner) => Add::split2(inner.stmap_from(acc, l)),
        }
    }

    pub fn stmap<K>(&self, ctx: &Ctx<Hyp>, l: &dyn Fn(&Ope<Hyp>, &J) -> K) -> Add<K> {
        self.stmap_from(&Ope::id(ctx), l)
    }
}

impl<J> CovZ<J> {
    /// Functorial action on leaves.
    pub fn map<K>(&self, f: &dyn Fn(&J) -> K) -> CovZ<K> {
        match self {
            CovZ::Return(j) => CovZ::Return(f(j)),
            CovZ::Bind { ann, scrut, body } => CovZ::bind(
                ann.clone(),
                scrut.clone(),
                body.map(&|c| c.map(f)),
            ),
        }
    }

    /// Strong functorial action, as for `Add`.
    pub fn stmap_from<K>(&self, acc: &Ope<Hyp>, l: &dyn Fn(&Ope<Hyp>, &J) -> K) -> CovZ<K> {
        match self {
            CovZ::Return(j) => CovZ::Return(l(acc, j)),
            CovZ::Bind { ann, scrut, body } => CovZ::bind(
                ann.clone(),
                scrut.clone(),
                body.stmap_from(acc, &|acc2, c: &CovZ<J>| c.stmap_from(acc2, l)),
            ),
        }
    }

    pub fn stmap<K>(&self, ctx: &Ctx<Hyp>, l: &dyn Fn(&Ope<Hyp>, &J) -> K) -> CovZ<K> {
        self.stmap_from(&Ope::id(ctx), l)
    }
}

/// Monad multiplication. The nested recursion through `Add::map` descends
/// the outer tree structurally, which replaces the sized-type argument for
/// termination.
pub fn cov_join<J: Clone>(c: &CovZ<CovZ<J>>) -> CovZ<J> {
    match c {
        CovZ::Return(inner) => inner.clone(),
        CovZ::Bind { ann, scrut, body } => CovZ::bind(
            ann.clone(),
            scrut.clone(),
            body.map(&|c2| cov_join(c2)),
        ),
    }
}

/// Semantic values; covers appear only under `VComp` and `VAtomN`, and the
/// cover monad is the slim one.
#[derive(Clone)]
pub enum SemValZ {
    VAtomP(Idx),
    VUnit,
    VPair(Box<SemValZ>, Box<SemValZ>),
    VInl(Box<SemValZ>),
    VInr(Box<SemValZ>),
    VUnitN,
    VPairN(Box<SemValZ>, Box<SemValZ>),
    VFun(KripkeFnZ),
    VComp(Box<CovZ<SemValZ>>),
    VAtomN(CovZ<NeZ>),
}

/// Kripke function over positive arguments.
#[derive(Clone)]
pub struct KripkeFnZ {
    ope: Ope<Hyp>,
    f: Arc<dyn Fn(&Ope<Hyp>, SemValZ) -> SemValZ + Send + Sync>,
}

impl KripkeFnZ {
    pub fn new(
        ctx: &Ctx<Hyp>,
        f: impl Fn(&Ope<Hyp>, SemValZ) -> SemValZ + Send + Sync + 'static,
    ) -> Self {
        KripkeFnZ {
            ope: Ope::id(ctx),
            f: Arc::new(f),
        }
    }

    pub fn apply(&self, tau: &Ope<Hyp>, a: SemValZ) -> SemValZ {
        (self.f)(&self.ope.then(tau), a)
    }
}

impl Renameable<Hyp> for KripkeFnZ {
    fn rename(&self, ope: &Ope<Hyp>) -> Self {
        KripkeFnZ {
            ope: self.ope.then(ope),
            f: self.f.clone(),
        }
    }
}

impl Renameable<Hyp> for SemValZ {
    fn rename(&self, ope: &Ope<Hyp>) -> Self {
        match self {
            SemValZ::VAtomP(x) => SemValZ::VAtomP(ope.apply(*x)),
            SemValZ::VUnit => SemValZ::VUnit,
            SemValZ::VPair(a, b) => {
                SemValZ::VPair(Box::new(a.rename(ope)), Box::new(b.rename(ope)))
            }
            SemValZ::VInl(a) => SemValZ::VInl(Box::new(a.rename(ope))),
            SemValZ::VInr(a) => SemValZ::VInr(Box::new(a.rename(ope))),
            SemValZ::VUnitN => SemValZ::VUnitN,
            SemValZ::VPairN(a, b) => {
                SemValZ::VPairN(Box::new(a.rename(ope)), Box::new(b.rename(ope)))
            }
            SemValZ::VFun(f) => SemValZ::VFun(f.rename(ope)),
            SemValZ::VComp(c) => SemValZ::VComp(Box::new(c.rename(ope))),
            SemValZ::VAtomN(c) => SemValZ::VAtomN(c.rename(ope)),
        }
    }
}

impl SemValZ {
    fn into_fun(self) -> KripkeFnZ {
        match self {
            SemValZ::VFun(f) => f,
            _ => panic!("shape mismatch: expected a semantic function"),
        }
    }

    fn into_pair_n(self) -> (SemValZ, SemValZ) {
        match self {
            SemValZ::VPairN(a, b) => (*a, *b),
            _ => panic!("shape mismatch: expected a negative pair"),
        }
    }

    fn into_comp(self) -> CovZ<SemValZ> {
        match self {
            SemValZ::VComp(c) => *c,
            _ => panic!("shape mismatch: expected a computation"),
        }
    }

    fn into_atom_n(self) -> CovZ<NeZ> {
        match self {
            SemValZ::VAtomN(c) => c,
            _ => panic!("shape mismatch: expected a negative atom"),
        }
    }
}

/// Continuation-style positive reflection: decompose `p` into a pattern
/// tree, calling `k` once per branch with the OPE into the branch's context
/// and the semantic value assembled from the new hypotheses. `k` returns
/// the subtree grafted at that point.
pub fn reflect_add<J>(
    ctx: &Ctx<Hyp>,
    p: &TyP,
    k: &dyn Fn(&Ope<Hyp>, SemValZ) -> Add<J>,
) -> Add<J> {
    match p {
        TyP::Atom(o) => {
            let wk = Ope::wk(ctx, Hyp::AtomP(o.clone()));
            Add::hyp_p(o, k(&wk, SemValZ::VAtomP(Idx(0))))
        }
        TyP::Thunk(n) => {
            let h = Hyp::Neg((**n).clone());
            let ctx2 = ctx.snoc(h.clone());
            let wk = Ope::wk(ctx, h);
            let b = reflect_neg(&ctx2, n, NeZ::Var(Idx(0)));
            Add::hyp_n((**n).clone(), k(&wk, b))
        }
        TyP::Zero => Add::Branch0,
        TyP::Sum(p1, p2) => Add::branch2(
            reflect_add(ctx, p1, &|tau, a| k(tau, SemValZ::VInl(Box::new(a)))),
            reflect_add(ctx, p2, &|tau, a| k(tau, SemValZ::VInr(Box::new(a)))),
        ),
        TyP::One => Add::split0(k(&Ope::id(ctx), SemValZ::VUnit)),
        TyP::Prod(p1, p2) => Add::split2(reflect_add(ctx, p1, &|tau1, a1| {
            reflect_add(tau1.target(), p2, &|tau2, a2| {
                let pair = SemValZ::VPair(Box::new(a1.rename(tau2)), Box::new(a2));
                k(&tau1.then(tau2), pair)
            })
        })),
    }
}

/// `reflect_add` with plain leaves.
pub fn reflect_cont<J>(
    ctx: &Ctx<Hyp>,
    p: &TyP,
    k: &dyn Fn(&Ope<Hyp>, SemValZ) -> J,
) -> Add<J> {
    reflect_add(ctx, p, &|tau, a| Add::Leaf(k(tau, a)))
}

/// Negative reflection of a neutral.
pub fn reflect_neg(ctx: &Ctx<Hyp>, n: &TyN, u: NeZ) -> SemValZ {
    match n {
        TyN::Comp(p) => SemValZ::VComp(Box::new(CovZ::bind(
            (**p).clone(),
            u,
            reflect_cont(ctx, p, &|_, a| CovZ::Return(a)),
        ))),
        TyN::Atom(_) => SemValZ::VAtomN(CovZ::Return(u)),
        TyN::Top => SemValZ::VUnitN,
        TyN::With(n1, n2) => SemValZ::VPairN(
            Box::new(reflect_neg(ctx, n1, NeZ::prj(Proj::Fst, u.clone()))),
            Box::new(reflect_neg(ctx, n2, NeZ::prj(Proj::Snd, u))),
        ),
        TyN::Arr(p, n2) => {
            let (p, n2) = (p.clone(), n2.clone());
            SemValZ::VFun(KripkeFnZ::new(ctx, move |tau, a| {
                let delta = tau.target().clone();
                let arg = reify_pos(&delta, &p, a);
                reflect_neg(&delta, &n2, NeZ::app(u.rename(tau), arg))
            }))
        }
    }
}

/// Positive reification: semantic value to normal value.
pub fn reify_pos(ctx: &Ctx<Hyp>, p: &TyP, a: SemValZ) -> VnfZ {
    match p {
        TyP::Atom(_) => match a {
            SemValZ::VAtomP(x) => VnfZ::Var(x),
            _ => panic!("shape mismatch: expected an atomic variable"),
        },
        TyP::One => VnfZ::Unit,
        TyP::Prod(p1, p2) => match a {
            SemValZ::VPair(a1, a2) => {
                VnfZ::pair(reify_pos(ctx, p1, *a1), reify_pos(ctx, p2, *a2))
            }
            _ => panic!("shape mismatch: expected a positive pair"),
        },
        TyP::Zero => panic!("shape mismatch: value at empty type"),
        TyP::Sum(p1, p2) => match a {
            SemValZ::VInl(v) => VnfZ::inj(Side::Inl, reify_pos(ctx, p1, *v)),
            SemValZ::VInr(v) => VnfZ::inj(Side::Inr, reify_pos(ctx, p2, *v)),
            _ => panic!("shape mismatch: expected an injection"),
        },
        TyP::Thunk(n) => VnfZ::thunk(reify_neg(ctx, n, a)),
    }
}

/// Negative reification: semantic value to normal term. At `Arr`, the body
/// is built by reflecting the domain into a pattern tree.
pub fn reify_neg(ctx: &Ctx<Hyp>, n: &TyN, b: SemValZ) -> NfZ {
    match n {
        TyN::Comp(p) => NfZ::Ret(
            b.into_comp()
                .stmap(ctx, &|tau, a| reify_pos(tau.target(), p, a.clone())),
        ),
        TyN::Atom(_) => NfZ::NeAtom(b.into_atom_n()),
        TyN::Top => NfZ::UnitN,
        TyN::With(n1, n2) => {
            let (b1, b2) = b.into_pair_n();
            NfZ::pair_n(reify_neg(ctx, n1, b1), reify_neg(ctx, n2, b2))
        }
        TyN::Arr(p, n2) => {
            let f = b.into_fun();
            NfZ::abs(
                (**p).clone(),
                reflect_cont(ctx, p, &|tau, a| reify_neg(tau.target(), n2, f.apply(tau, a))),
            )
        }
    }
}

/// Weak pasting over a negative type.
pub fn run_sem_n(ctx: &Ctx<Hyp>, n: &TyN, c: CovZ<SemValZ>) -> SemValZ {
    match n {
        TyN::Comp(_) => {
            SemValZ::VComp(Box::new(cov_join(&c.map(&|v| v.clone().into_comp()))))
        }
        TyN::Atom(_) => {
            SemValZ::VAtomN(cov_join(&c.map(&|v| v.clone().into_atom_n())))
        }
        TyN::Top => SemValZ::VUnitN,
        TyN::With(n1, n2) => SemValZ::VPairN(
            Box::new(run_sem_n(ctx, n1, c.map(&|v| v.clone().into_pair_n().0))),
            Box::new(run_sem_n(ctx, n2, c.map(&|v| v.clone().into_pair_n().1))),
        ),
        TyN::Arr(_, n2) => {
            let n2 = n2.clone();
            SemValZ::VFun(KripkeFnZ::new(ctx, move |tau, a| {
                let delta = tau.target().clone();
                let applied = c.rename(tau).stmap(&delta, &|tau2: &Ope<Hyp>, fv: &SemValZ| {
                    fv.clone()
                        .into_fun()
                        .apply(&Ope::id(tau2.target()), a.rename(tau2))
                });
                run_sem_n(&delta, &n2, applied)
            }))
        }
    }
}

/// Complete matching of a semantic value against a pattern tree,
/// accumulating the bound crumbs into the environment. The continuation
/// receives the extended typing context, the environment, and the subtree
/// at the point where the value is consumed.
pub fn match_add<J, R>(
    tyctx: &Ctx<Hyp>,
    a: &SemValZ,
    t: &Add<J>,
    env: &[SemValZ],
    k: &dyn Fn(&Ctx<Hyp>, Vec<SemValZ>, &Add<J>) -> R,
) -> R {
    match (t, a) {
        (Add::HypP(o, rest), _) => {
            let mut e2 = env.to_vec();
            e2.push(a.clone());
            k(&tyctx.snoc(Hyp::AtomP(o.clone())), e2, rest)
        }
        (Add::HypN(n, rest), _) => {
            let mut e2 = env.to_vec();
            e2.push(a.clone());
            k(&tyctx.snoc(Hyp::Neg(n.clone())), e2, rest)
        }
        (Add::Split0(rest), _) => k(tyctx, env.to_vec(), rest),
        (Add::Split2(inner), SemValZ::VPair(a1, a2)) => {
            match_add(tyctx, a1, inner, env, &|tyctx2, env2, rest| {
                match_add(tyctx2, a2, rest, &env2, k)
            })
        }
        (Add::Branch2(l, _), SemValZ::VInl(a1)) => match_add(tyctx, a1, l, env, k),
        (Add::Branch2(_, r), SemValZ::VInr(a2)) => match_add(tyctx, a2, r, env, k),
        (Add::Branch0, _) => panic!("shape mismatch: matched a value of the empty type"),
        (Add::Leaf(_), _) => panic!("shape mismatch: pattern tree exhausted early"),
        _ => panic!("shape mismatch: value does not fit the pattern tree"),
    }
}

/// Match a value against a binder body and evaluate the selected leaf.
pub fn match_eval(
    tyctx: &Ctx<Hyp>,
    semctx: &Ctx<Hyp>,
    a: &SemValZ,
    body: &Add<TmZ>,
    env: &[SemValZ],
) -> SemValZ {
    match_add(tyctx, a, body, env, &|tyctx2, env2, rest| match rest {
        Add::Leaf(tm) => eval_tmz(tyctx2, semctx, tm, &env2),
        _ => panic!("shape mismatch: incomplete pattern tree"),
    })
}

/// Interpret a binder body as a Kripke function: rename the environment,
/// then match the argument against the tree.
fn close_body(
    tyctx: &Ctx<Hyp>,
    semctx: &Ctx<Hyp>,
    body: Add<TmZ>,
    env: &[SemValZ],
) -> KripkeFnZ {
    let env = env.to_vec();
    let tyctx = tyctx.clone();
    KripkeFnZ::new(semctx, move |tau, a| {
        let e2 = env.rename(tau);
        match_eval(&tyctx, tau.target(), &a, &body, &e2)
    })
}

/// Evaluate a value. `tyctx` types the free variables; `semctx` is where
/// the environment's values live.
pub fn eval_valz(
    tyctx: &Ctx<Hyp>,
    semctx: &Ctx<Hyp>,
    v: &ValZ,
    env: &[SemValZ],
) -> SemValZ {
    match v {
        ValZ::Var(x) => {
            let n = env.len();
            env[n - 1 - x.0].clone()
        }
        ValZ::Thunk(t) => eval_tmz(tyctx, semctx, t, env),
        ValZ::Unit => SemValZ::VUnit,
        ValZ::Pair(a, b) => SemValZ::VPair(
            Box::new(eval_valz(tyctx, semctx, a, env)),
            Box::new(eval_valz(tyctx, semctx, b, env)),
        ),
        ValZ::Inj(Side::Inl, _, v) => {
            SemValZ::VInl(Box::new(eval_valz(tyctx, semctx, v, env)))
        }
        ValZ::Inj(Side::Inr, _, v) => {
            SemValZ::VInr(Box::new(eval_valz(tyctx, semctx, v, env)))
        }
    }
}

/// Evaluate a term. Binder application goes through `match_eval`.
pub fn eval_tmz(
    tyctx: &Ctx<Hyp>,
    semctx: &Ctx<Hyp>,
    t: &TmZ,
    env: &[SemValZ],
) -> SemValZ {
    match t {
        TmZ::VarN(x) => {
            let n = env.len();
            env[n - 1 - x.0].clone()
        }
        TmZ::Ret(v) => {
            SemValZ::VComp(Box::new(CovZ::Return(eval_valz(tyctx, semctx, v, env))))
        }
        TmZ::Abs(_, _, body) => {
            SemValZ::VFun(close_body(tyctx, semctx, (**body).clone(), env))
        }
        TmZ::PairN(a, b) => SemValZ::VPairN(
            Box::new(eval_tmz(tyctx, semctx, a, env)),
            Box::new(eval_tmz(tyctx, semctx, b, env)),
        ),
        TmZ::UnitN => SemValZ::VUnitN,
        TmZ::Force(v) => eval_valz(tyctx, semctx, v, env),
        TmZ::App(t, v) => {
            let f = eval_tmz(tyctx, semctx, t, env).into_fun();
            let a = eval_valz(tyctx, semctx, v, env);
            f.apply(&Ope::id(semctx), a)
        }
        TmZ::Prj(p, t) => {
            let (a, b) = eval_tmz(tyctx, semctx, t, env).into_pair_n();
            match p {
                Proj::Fst => a,
                Proj::Snd => b,
            }
        }
        TmZ::Bind(_, result, u, body) => {
            let c = eval_tmz(tyctx, semctx, u, env).into_comp();
            let f = close_body(tyctx, semctx, (**body).clone(), env);
            let dispatched = c.stmap(semctx, &|tau, a: &SemValZ| f.apply(tau, a.clone()));
            run_sem_n(semctx, result, dispatched)
        }
    }
}

/// The identity environment. Unlike CBPV it is not monadic: contexts hold
/// only atoms and negative types, which reflect directly.
pub fn id_env_pol(ctx: &Ctx<Hyp>) -> Vec<SemValZ> {
    let mut env: Vec<SemValZ> = Vec::new();
    let mut cur = Ctx::empty();
    for h in ctx.entries() {
        let wk = Ope::wk(&cur, h.clone());
        let cur2 = cur.snoc(h.clone());
        env = env.rename(&wk);
        match h {
            Hyp::AtomP(_) => env.push(SemValZ::VAtomP(Idx(0))),
            Hyp::Neg(n) => env.push(reflect_neg(&cur2, n, NeZ::Var(Idx(0)))),
        }
        cur = cur2;
    }
    env
}

/// Normalization by evaluation for polarized terms.
pub fn norm_pol(ctx: &Ctx<Hyp>, t: &TmZ) -> Result<NfZ, TypeError> {
    let n = infer_tmz(ctx, t)?;
    let v = eval_tmz(ctx, ctx, t, &id_env_pol(ctx));
    Ok(reify_neg(ctx, &n, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o() -> TyP {
        TyP::atom("o")
    }

    #[test]
    fn reflect_zero_and_one() {
        let t: Add<VnfZ> = reflect_cont(&Ctx::empty(), &TyP::Zero, &|_, _| unreachable!());
        assert_eq!(t, Add::Branch0);
        let t = reflect_cont(&Ctx::empty(), &TyP::One, &|tau, a| {
            reify_pos(tau.target(), &TyP::One, a)
        });
        assert_eq!(t, Add::split0(Add::Leaf(VnfZ::Unit)));
    }

    #[test]
    fn reflect_product_of_atoms() {
        let p = TyP::prod(o(), o());
        let t = reflect_cont(&Ctx::empty(), &p, &|tau, a| reify_pos(tau.target(), &p, a));
        let expected = Add::split2(Add::hyp_p(
            "o",
            Add::hyp_p(
                "o",
                Add::Leaf(VnfZ::pair(VnfZ::Var(Idx(1)), VnfZ::Var(Idx(0)))),
            ),
        ));
        assert_eq!(t, expected);
    }

    #[test]
    fn eta_expands_with_variable() {
        let n = TyN::with(TyN::Top, TyN::Top);
        let ctx = Ctx::from_entries(vec![Hyp::Neg(n)]);
        let nf = norm_pol(&ctx, &TmZ::var_n(0)).unwrap();
        assert_eq!(nf, NfZ::pair_n(NfZ::UnitN, NfZ::UnitN));
    }

    #[test]
    fn eta_expands_function_variable() {
        let n = TyN::arr(o(), TyN::atom("n"));
        let ctx = Ctx::from_entries(vec![Hyp::Neg(n)]);
        let nf = norm_pol(&ctx, &TmZ::var_n(0)).unwrap();
        let expected = NfZ::abs(
            o(),
            Add::hyp_p(
                "o",
                Add::Leaf(NfZ::NeAtom(CovZ::Return(NeZ::app(
                    NeZ::Var(Idx(1)),
                    VnfZ::Var(Idx(0)),
                )))),
            ),
        );
        assert_eq!(nf, expected);
    }

    #[test]
    fn abs_over_sum_splits_branches() {
        // \b. case b of inl a -> ret a | inr () -> ret x0, over o + 1.
        let dom = TyP::sum(o(), TyP::One);
        let cod = TyN::comp(o());
        let ctx = Ctx::from_entries(vec![Hyp::AtomP("o".to_string())]);
        let body = Add::branch2(
            Add::hyp_p("o", Add::Leaf(TmZ::ret(ValZ::var(0)))),
            Add::split0(Add::Leaf(TmZ::ret(ValZ::var(0)))),
        );
        let t = TmZ::abs(dom.clone(), cod, body);
        let nf = norm_pol(&ctx, &t).unwrap();
        let expected = NfZ::abs(
            dom,
            Add::branch2(
                Add::hyp_p("o", Add::Leaf(NfZ::Ret(CovZ::Return(VnfZ::Var(Idx(0)))))),
                Add::split0(Add::Leaf(NfZ::Ret(CovZ::Return(VnfZ::Var(Idx(0)))))),
            ),
        );
        assert_eq!(nf, expected);
    }

    #[test]
    fn bind_of_ret_collapses() {
        let ctx = Ctx::from_entries(vec![Hyp::AtomP("o".to_string())]);
        let t = TmZ::bind(
            o(),
            TyN::comp(o()),
            TmZ::ret(ValZ::var(0)),
            Add::hyp_p("o", Add::Leaf(TmZ::ret(ValZ::var(0)))),
        );
        let nf = norm_pol(&ctx, &t).unwrap();
        assert_eq!(nf, NfZ::Ret(CovZ::Return(VnfZ::Var(Idx(0)))));
    }

    #[test]
    fn neutral_bind_forms_a_cover() {
        // A variable of type F o: eta-expanding it binds and returns.
        let ctx = Ctx::from_entries(vec![Hyp::Neg(TyN::comp(o()))]);
        let nf = norm_pol(&ctx, &TmZ::var_n(0)).unwrap();
        let expected = NfZ::Ret(CovZ::bind(
            o(),
            NeZ::Var(Idx(0)),
            Add::hyp_p("o", Add::Leaf(CovZ::Return(VnfZ::Var(Idx(0))))),
        ));
        assert_eq!(nf, expected);
    }

    #[test]
    fn join_laws_on_small_trees() {
        // join (return c) = c and the bind clause, on a hand-built tree.
        let u = NeZ::Var(Idx(0));
        let inner: CovZ<u32> = CovZ::Return(7);
        assert_eq!(cov_join(&CovZ::Return(inner.clone())), inner);
        let nested: CovZ<CovZ<u32>> = CovZ::bind(
            TyP::One,
            u.clone(),
            Add::split0(Add::Leaf(CovZ::Return(CovZ::Return(7)))),
        );
        let expected = CovZ::bind(
            TyP::One,
            u,
            Add::split0(Add::Leaf(CovZ::Return(7))),
        );
        assert_eq!(cov_join(&nested), expected);
    }

    #[test]
    fn match_recovers_continuation_result() {
        // Matching a concrete value against a reflected tree selects the
        // branch whose symbolic value realizes to the concrete one.
        let p = TyP::sum(TyP::One, TyP::One);
        let tree: Add<&'static str> = {
            let l: Add<&'static str> = Add::branch2(
                Add::split0(Add::Leaf("left")),
                Add::split0(Add::Leaf("right")),
            );
            l
        };
        let a = SemValZ::VInr(Box::new(SemValZ::VUnit));
        let picked = match_add(&Ctx::empty(), &a, &tree, &[], &|_, _, rest| match rest {
            Add::Leaf(s) => *s,
            _ => panic!("not a leaf"),
        });
        assert_eq!(picked, "right");
        let _ = p;
    }
}
