//! Finite standard model and term generator for the polarized calculus.
//! Hypotheses denote atoms or negative values; pattern trees are matched
//! against concrete finite values.

use rand::prelude::*;

use crate::kernel::{Ctx, Idx};
use crate::polarized::infer::infer_tmz;
use crate::polarized::{Add, Hyp, TmZ, TyN, TyP, ValZ};
use crate::stlc::{Proj, Side};

use super::fincbpv::{card_n, enum_vals_p};
use super::finmodel::{FinVal, DOMAIN_BOUND};
use super::gen::Gen;
use super::{GenerationExhausted, OracleError, Verdict};

fn too_large(points: u128) -> OracleError {
    OracleError::DomainTooLarge {
        points,
        bound: DOMAIN_BOUND,
    }
}

fn type_err(e: impl std::fmt::Display) -> OracleError {
    OracleError::Type(e.to_string())
}

pub fn card_hyp(h: &Hyp, base_size: usize) -> Result<u128, OracleError> {
    match h {
        Hyp::AtomP(_) => Ok(base_size as u128),
        Hyp::Neg(n) => card_n(n, base_size),
    }
}

pub fn enum_vals_hyp(h: &Hyp, base_size: usize) -> Result<Vec<FinVal>, OracleError> {
    match h {
        Hyp::AtomP(_) => Ok((0..base_size).map(FinVal::Atom).collect()),
        Hyp::Neg(n) => super::fincbpv::enum_vals_n(n, base_size),
    }
}

/// Every environment for a polarized context, oldest entry first.
pub fn enum_envs_pol(
    ctx: &Ctx<Hyp>,
    base_size: usize,
) -> Result<Vec<Vec<FinVal>>, OracleError> {
    let mut total: u128 = 1;
    for h in ctx.entries() {
        total = total
            .checked_mul(card_hyp(h, base_size)?)
            .filter(|n| *n <= DOMAIN_BOUND)
            .ok_or_else(|| too_large(u128::MAX))?;
    }
    let mut envs = vec![Vec::new()];
    for h in ctx.entries() {
        let vals = enum_vals_hyp(h, base_size)?;
        let mut next = Vec::new();
        for env in &envs {
            for v in &vals {
                let mut e2 = env.clone();
                e2.push(v.clone());
                next.push(e2);
            }
        }
        envs = next;
    }
    Ok(envs)
}

fn val_index_p(p: &TyP, v: &FinVal, base_size: usize) -> Result<usize, OracleError> {
    enum_vals_p(p, base_size)?
        .iter()
        .position(|w| w == v)
        .ok_or_else(|| type_err("value outside its type's enumeration"))
}

pub fn fin_eval_valz(
    ctx: &Ctx<Hyp>,
    v: &ValZ,
    base_size: usize,
    env: &[FinVal],
) -> Result<FinVal, OracleError> {
    match v {
        ValZ::Var(x) => env
            .get(env.len().checked_sub(1 + x.0).ok_or_else(|| type_err("unbound index"))?)
            .cloned()
            .ok_or_else(|| type_err("unbound index")),
        ValZ::Thunk(t) => fin_eval_tmz(ctx, t, base_size, env),
        ValZ::Unit => Ok(FinVal::Unit),
        ValZ::Pair(a, b) => Ok(FinVal::Pair(
            Box::new(fin_eval_valz(ctx, a, base_size, env)?),
            Box::new(fin_eval_valz(ctx, b, base_size, env)?),
        )),
        ValZ::Inj(Side::Inl, _, v) => {
            Ok(FinVal::Inl(Box::new(fin_eval_valz(ctx, v, base_size, env)?)))
        }
        ValZ::Inj(Side::Inr, _, v) => {
            Ok(FinVal::Inr(Box::new(fin_eval_valz(ctx, v, base_size, env)?)))
        }
    }
}

/// Match a concrete value against a pattern tree, extending the context and
/// environment with the bound crumbs, then evaluate the selected leaf.
fn fin_match(
    ctx: &Ctx<Hyp>,
    a: &FinVal,
    t: &Add<TmZ>,
    base_size: usize,
    env: &[FinVal],
) -> Result<FinVal, OracleError> {
    fin_match_seq(ctx, &[a.clone()], t, base_size, env)
}

/// Match a sequence of values against a flattened nesting: the tree
/// consumes the first value, then continues with the rest at each fringe.
fn fin_match_seq(
    ctx: &Ctx<Hyp>,
    vals: &[FinVal],
    t: &Add<TmZ>,
    base_size: usize,
    env: &[FinVal],
) -> Result<FinVal, OracleError> {
    match vals.split_first() {
        None => match t {
            Add::Leaf(tm) => fin_eval_tmz(ctx, tm, base_size, env),
            _ => Err(type_err("pattern tree deeper than its type")),
        },
        Some((a, rest_vals)) => match (t, a) {
            (Add::HypP(o, rest), _) => {
                let mut e2 = env.to_vec();
                e2.push(a.clone());
                fin_match_seq(&ctx.snoc(Hyp::AtomP(o.clone())), rest_vals, rest, base_size, &e2)
            }
            (Add::HypN(n, rest), _) => {
                let mut e2 = env.to_vec();
                e2.push(a.clone());
                fin_match_seq(&ctx.snoc(Hyp::Neg(n.clone())), rest_vals, rest, base_size, &e2)
            }
            (Add::Split0(rest), _) => fin_match_seq(ctx, rest_vals, rest, base_size, env),
            (Add::Split2(inner), FinVal::Pair(a1, a2)) => {
                let mut seq = vec![(**a1).clone(), (**a2).clone()];
                seq.extend_from_slice(rest_vals);
                fin_match_seq(ctx, &seq, inner, base_size, env)
            }
            (Add::Branch2(l, _), FinVal::Inl(a1)) => {
                let mut seq = vec![(**a1).clone()];
                seq.extend_from_slice(rest_vals);
                fin_match_seq(ctx, &seq, l, base_size, env)
            }
            (Add::Branch2(_, r), FinVal::Inr(a2)) => {
                let mut seq = vec![(**a2).clone()];
                seq.extend_from_slice(rest_vals);
                fin_match_seq(ctx, &seq, r, base_size, env)
            }
            (Add::Branch0, _) => Err(type_err("matched a value of the empty type")),
            _ => Err(type_err("value does not fit the pattern tree")),
        },
    }
}

pub fn fin_eval_tmz(
    ctx: &Ctx<Hyp>,
    t: &TmZ,
    base_size: usize,
    env: &[FinVal],
) -> Result<FinVal, OracleError> {
    match t {
        TmZ::VarN(x) => env
            .get(env.len().checked_sub(1 + x.0).ok_or_else(|| type_err("unbound index"))?)
            .cloned()
            .ok_or_else(|| type_err("unbound index")),
        TmZ::Ret(v) | TmZ::Force(v) => fin_eval_valz(ctx, v, base_size, env),
        TmZ::Abs(dom, _, body) => {
            let mut table = Vec::new();
            for v in enum_vals_p(dom, base_size)? {
                table.push(fin_match(ctx, &v, body, base_size, env)?);
            }
            Ok(FinVal::Fun(table))
        }
        TmZ::PairN(a, b) => Ok(FinVal::Pair(
            Box::new(fin_eval_tmz(ctx, a, base_size, env)?),
            Box::new(fin_eval_tmz(ctx, b, base_size, env)?),
        )),
        TmZ::UnitN => Ok(FinVal::Unit),
        TmZ::App(f, u) => {
            let dom = match infer_tmz(ctx, f).map_err(type_err)? {
                TyN::Arr(dom, _) => *dom,
                ty => return Err(type_err(format!("applied non-function of type {ty}"))),
            };
            let fv = fin_eval_tmz(ctx, f, base_size, env)?;
            let uv = fin_eval_valz(ctx, u, base_size, env)?;
            match fv {
                FinVal::Fun(table) => {
                    let i = val_index_p(&dom, &uv, base_size)?;
                    Ok(table[i].clone())
                }
                _ => Err(type_err("applied a non-function value")),
            }
        }
        TmZ::Prj(p, t) => match fin_eval_tmz(ctx, t, base_size, env)? {
            FinVal::Pair(a, b) => Ok(match p {
                Proj::Fst => *a,
                Proj::Snd => *b,
            }),
            _ => Err(type_err("projected a non-pair value")),
        },
        TmZ::Bind(_, _, u, body) => {
            let uv = fin_eval_tmz(ctx, u, base_size, env)?;
            fin_match(ctx, &uv, body, base_size, env)
        }
    }
}

/// Extensional equivalence of polarized terms in the finite model.
pub fn oracle_equiv_pol(
    ctx: &Ctx<Hyp>,
    t1: &TmZ,
    t2: &TmZ,
    base_size: usize,
) -> Result<Verdict, OracleError> {
    let ty1 = infer_tmz(ctx, t1).map_err(type_err)?;
    let ty2 = infer_tmz(ctx, t2).map_err(type_err)?;
    if ty1 != ty2 {
        return Err(type_err(format!("compared terms of types {ty1} and {ty2}")));
    }
    for env in enum_envs_pol(ctx, base_size)? {
        if fin_eval_tmz(ctx, t1, base_size, &env)? != fin_eval_tmz(ctx, t2, base_size, &env)? {
            return Ok(Verdict::NotEqual);
        }
    }
    Ok(Verdict::Equal)
}

impl Gen {
    pub fn ctx_pol(&mut self, max_vars: usize, depth: usize) -> Ctx<Hyp> {
        let n = self.rng().gen_range(0..=max_vars);
        Ctx::from_entries(
            (0..n)
                .map(|_| {
                    if self.rng().gen_bool(0.4) {
                        Hyp::AtomP("p".to_string())
                    } else {
                        Hyp::Neg(self.ty_n(depth))
                    }
                })
                .collect(),
        )
    }

    fn pick_var_atom(&mut self, ctx: &Ctx<Hyp>, o: &str) -> Option<ValZ> {
        let hits: Vec<usize> = ctx
            .entries()
            .iter()
            .rev()
            .enumerate()
            .filter(|(_, h)| matches!(h, Hyp::AtomP(o2) if o2 == o))
            .map(|(i, _)| i)
            .collect();
        if hits.is_empty() {
            None
        } else {
            let i = hits[self.rng().gen_range(0..hits.len())];
            Some(ValZ::Var(Idx(i)))
        }
    }

    fn pick_var_neg(&mut self, ctx: &Ctx<Hyp>, goal: &TyN) -> Option<TmZ> {
        let hits: Vec<usize> = ctx
            .entries()
            .iter()
            .rev()
            .enumerate()
            .filter(|(_, h)| matches!(h, Hyp::Neg(n) if n == goal))
            .map(|(i, _)| i)
            .collect();
        if hits.is_empty() {
            None
        } else {
            let i = hits[self.rng().gen_range(0..hits.len())];
            Some(TmZ::VarN(Idx(i)))
        }
    }

    /// A pattern tree decomposing the pending stack of positive types, with
    /// generated leaves of type `cod`.
    fn gen_add(
        &mut self,
        ctx: &Ctx<Hyp>,
        pending: &[TyP],
        cod: &TyN,
        fuel: usize,
    ) -> Option<Add<TmZ>> {
        match pending.split_first() {
            None => Some(Add::Leaf(self.tmz_of(ctx, cod, fuel)?)),
            Some((p, rest)) => match p {
                TyP::Atom(o) => {
                    let ctx2 = ctx.snoc(Hyp::AtomP(o.clone()));
                    Some(Add::hyp_p(o, self.gen_add(&ctx2, rest, cod, fuel)?))
                }
                TyP::Thunk(n) => {
                    let ctx2 = ctx.snoc(Hyp::Neg((**n).clone()));
                    Some(Add::hyp_n((**n).clone(), self.gen_add(&ctx2, rest, cod, fuel)?))
                }
                TyP::Zero => Some(Add::Branch0),
                TyP::Sum(p1, p2) => {
                    let mut left = vec![(**p1).clone()];
                    left.extend_from_slice(rest);
                    let mut right = vec![(**p2).clone()];
                    right.extend_from_slice(rest);
                    Some(Add::branch2(
                        self.gen_add(ctx, &left, cod, fuel)?,
                        self.gen_add(ctx, &right, cod, fuel)?,
                    ))
                }
                TyP::One => Some(Add::split0(self.gen_add(ctx, rest, cod, fuel)?)),
                TyP::Prod(p1, p2) => {
                    let mut seq = vec![(**p1).clone(), (**p2).clone()];
                    seq.extend_from_slice(rest);
                    Some(Add::split2(self.gen_add(ctx, &seq, cod, fuel)?))
                }
            },
        }
    }

    pub fn valz_of(&mut self, ctx: &Ctx<Hyp>, goal: &TyP, fuel: usize) -> Option<ValZ> {
        for _ in 0..4 {
            let v = match goal {
                TyP::Atom(o) => self.pick_var_atom(ctx, o),
                TyP::One => Some(ValZ::Unit),
                TyP::Prod(a, b) => (|| {
                    Some(ValZ::pair(
                        self.valz_of(ctx, a, fuel.saturating_sub(1))?,
                        self.valz_of(ctx, b, fuel.saturating_sub(1))?,
                    ))
                })(),
                TyP::Sum(a, b) => {
                    let left = self.rng().gen_bool(0.5);
                    let (mine, other) = if left { (a, b) } else { (b, a) };
                    let side = if left { Side::Inl } else { Side::Inr };
                    self.valz_of(ctx, mine, fuel.saturating_sub(1))
                        .map(|v| ValZ::inj(side, (**other).clone(), v))
                }
                TyP::Thunk(n) => self
                    .tmz_of(ctx, n, fuel.saturating_sub(1))
                    .map(ValZ::thunk),
                TyP::Zero => None,
            };
            if v.is_some() {
                return v;
            }
        }
        None
    }

    pub fn tmz_of(&mut self, ctx: &Ctx<Hyp>, goal: &TyN, fuel: usize) -> Option<TmZ> {
        if fuel == 0 {
            return self.smallest_tmz(ctx, goal);
        }
        for _ in 0..4 {
            let choice = self.rng().gen_range(0..10);
            let t = if choice < 2 {
                self.pick_var_neg(ctx, goal)
            } else if choice < 7 {
                match goal {
                    TyN::Top => Some(TmZ::UnitN),
                    TyN::With(a, b) => (|| {
                        Some(TmZ::pair_n(
                            self.tmz_of(ctx, a, fuel - 1)?,
                            self.tmz_of(ctx, b, fuel - 1)?,
                        ))
                    })(),
                    TyN::Arr(a, b) => {
                        let pending = vec![(**a).clone()];
                        let body = self.gen_add(ctx, &pending, b, fuel - 1)?;
                        Some(TmZ::abs((**a).clone(), (**b).clone(), body))
                    }
                    TyN::Comp(p) => self.valz_of(ctx, p, fuel - 1).map(TmZ::ret),
                    TyN::Atom(_) => None,
                }
            } else {
                self.elim_tmz(ctx, goal, fuel)
            };
            if t.is_some() {
                return t;
            }
        }
        self.smallest_tmz(ctx, goal)
    }

    fn elim_tmz(&mut self, ctx: &Ctx<Hyp>, goal: &TyN, fuel: usize) -> Option<TmZ> {
        match self.rng().gen_range(0..4) {
            0 => {
                let dom = self.ty_p(1);
                let f = self.tmz_of(ctx, &TyN::arr(dom.clone(), goal.clone()), fuel - 1)?;
                let v = self.valz_of(ctx, &dom, fuel - 1)?;
                Some(TmZ::app(f, v))
            }
            1 => {
                let other = self.ty_n(1);
                let fst = self.rng().gen_bool(0.5);
                let with = if fst {
                    TyN::with(goal.clone(), other)
                } else {
                    TyN::with(other, goal.clone())
                };
                let t = self.tmz_of(ctx, &with, fuel - 1)?;
                Some(TmZ::prj(if fst { Proj::Fst } else { Proj::Snd }, t))
            }
            2 => {
                let ann = self.ty_p(1);
                let u = self.tmz_of(ctx, &TyN::comp(ann.clone()), fuel - 1)?;
                let pending = vec![ann.clone()];
                let body = self.gen_add(ctx, &pending, goal, fuel - 1)?;
                Some(TmZ::bind(ann, goal.clone(), u, body))
            }
            _ => {
                let v = self.valz_of(ctx, &TyP::thunk(goal.clone()), fuel - 1)?;
                Some(TmZ::force(v))
            }
        }
    }

    fn smallest_tmz(&mut self, ctx: &Ctx<Hyp>, goal: &TyN) -> Option<TmZ> {
        if let Some(t) = self.pick_var_neg(ctx, goal) {
            return Some(t);
        }
        match goal {
            TyN::Top => Some(TmZ::UnitN),
            TyN::With(a, b) => Some(TmZ::pair_n(
                self.smallest_tmz(ctx, a)?,
                self.smallest_tmz(ctx, b)?,
            )),
            TyN::Arr(a, b) => {
                let pending = vec![(**a).clone()];
                let body = self.gen_add(ctx, &pending, b, 0)?;
                Some(TmZ::abs((**a).clone(), (**b).clone(), body))
            }
            TyN::Comp(p) => self.valz_of(ctx, p, 0).map(TmZ::ret),
            TyN::Atom(_) => None,
        }
    }
}

/// Generate a random well-typed polarized term. Deterministic in `seed`.
pub fn gen_term_pol(
    seed: u64,
    size_bound: usize,
    type_depth_bound: usize,
) -> Result<(Ctx<Hyp>, TmZ), GenerationExhausted> {
    let fuel = size_bound.max(1).min(6);
    for attempt in 0..64u64 {
        let mut g = Gen::new(seed.wrapping_mul(0x2545_f491_4f6c_dd1d).wrapping_add(attempt));
        let ctx = g.ctx_pol(3, type_depth_bound);
        let goal = g.ty_n(type_depth_bound);
        if let Some(t) = g.tmz_of(&ctx, &goal, fuel) {
            return Ok((ctx, t));
        }
    }
    Err(GenerationExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarized::erase::erase_nfz;
    use crate::polarized::sem::norm_pol;
    use crate::polarized::validate::check_nfz;

    #[test]
    fn generated_terms_are_well_typed_and_deterministic() {
        for seed in 0..200 {
            let (ctx, t) = gen_term_pol(seed, 12, 2).unwrap();
            infer_tmz(&ctx, &t).unwrap_or_else(|e| panic!("seed {seed}: {e} on {t:?}"));
            let (ctx2, t2) = gen_term_pol(seed, 12, 2).unwrap();
            assert_eq!((ctx.entries(), &t), (ctx2.entries(), &t2));
        }
    }

    #[test]
    fn abs_matches_its_pattern_tree() {
        // \v. case v of inl a -> ret a | inr a -> ret a  at  o+o -> F o.
        let o = TyP::atom("o");
        let dom = TyP::sum(o.clone(), o.clone());
        let body = Add::branch2(
            Add::hyp_p("o", Add::Leaf(TmZ::ret(ValZ::var(0)))),
            Add::hyp_p("o", Add::Leaf(TmZ::ret(ValZ::var(0)))),
        );
        let t = TmZ::abs(dom, TyN::comp(o), body);
        let v = fin_eval_tmz(&Ctx::empty(), &t, 2, &[]).unwrap();
        let expected = FinVal::Fun(vec![
            FinVal::Atom(0),
            FinVal::Atom(1),
            FinVal::Atom(0),
            FinVal::Atom(1),
        ]);
        assert_eq!(v, expected);
    }

    #[test]
    fn norm_preserves_meaning_on_generated_terms() {
        let mut checked = 0;
        for seed in 0..100 {
            let (ctx, t) = gen_term_pol(seed, 12, 2).unwrap();
            let ty = infer_tmz(&ctx, &t).unwrap();
            let nf = norm_pol(&ctx, &t).unwrap_or_else(|e| panic!("seed {seed}: {e} on {t:?}"));
            check_nfz(&ctx, &ty, &nf).unwrap_or_else(|e| panic!("seed {seed}: {e} on {nf:?}"));
            let back = erase_nfz(&ctx, &ty, &nf).unwrap();
            match oracle_equiv_pol(&ctx, &t, &back, 2) {
                Ok(v) => {
                    assert_eq!(v, Verdict::Equal, "seed {seed}: {t:?} vs {back:?}");
                    checked += 1;
                }
                Err(OracleError::DomainTooLarge { .. }) => {}
                Err(e) => panic!("seed {seed}: {e}"),
            }
        }
        assert!(checked >= 50, "only {checked} cases were enumerable");
    }

    #[test]
    fn norm_is_idempotent_on_generated_terms() {
        for seed in 0..100 {
            let (ctx, t) = gen_term_pol(seed, 12, 2).unwrap();
            let ty = infer_tmz(&ctx, &t).unwrap();
            let nf = norm_pol(&ctx, &t).unwrap();
            let back = erase_nfz(&ctx, &ty, &nf).unwrap();
            let nf2 = norm_pol(&ctx, &back).unwrap();
            assert_eq!(nf, nf2, "seed {seed}");
        }
    }
}
