//! Finite standard model and term generator for CBPV. Thunk and Comp are
//! semantically transparent, so `FinVal` is reused unchanged: negative atoms
//! get `base_size` points, Top is a unit, With is a pair, and functions are
//! tables over the enumerated positive domain.

use rand::prelude::*;

use crate::cbpv::infer::{infer_tm, infer_val};
use crate::cbpv::{Tm, TyN, TyP, Val};
use crate::kernel::{Ctx, Idx};
use crate::stlc::{Proj, Side};

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

/// Number of inhabitants of a positive type.
pub fn card_p(p: &TyP, base_size: usize) -> Result<u128, OracleError> {
    let n = match p {
        TyP::Atom(_) => base_size as u128,
        TyP::Zero => 0,
        TyP::One => 1,
        TyP::Sum(a, b) => card_p(a, base_size)?
            .checked_add(card_p(b, base_size)?)
            .ok_or_else(|| too_large(u128::MAX))?,
        TyP::Prod(a, b) => card_p(a, base_size)?
            .checked_mul(card_p(b, base_size)?)
            .ok_or_else(|| too_large(u128::MAX))?,
        TyP::Thunk(n) => card_n(n, base_size)?,
    };
    if n > DOMAIN_BOUND {
        return Err(too_large(n));
    }
    Ok(n)
}

/// Number of inhabitants of a negative type.
pub fn card_n(n: &TyN, base_size: usize) -> Result<u128, OracleError> {
    let c = match n {
        TyN::Atom(_) => base_size as u128,
        TyN::Top => 1,
        TyN::With(a, b) => card_n(a, base_size)?
            .checked_mul(card_n(b, base_size)?)
            .ok_or_else(|| too_large(u128::MAX))?,
        TyN::Arr(a, b) => {
            let ca = card_p(a, base_size)?;
            let cb = card_n(b, base_size)?;
            if ca == 0 {
                1
            } else if cb == 0 {
                0
            } else {
                let mut acc: u128 = 1;
                for _ in 0..ca {
                    acc = acc
                        .checked_mul(cb)
                        .filter(|n| *n <= DOMAIN_BOUND)
                        .ok_or_else(|| too_large(u128::MAX))?;
                }
                acc
            }
        }
        TyN::Comp(p) => card_p(p, base_size)?,
    };
    if c > DOMAIN_BOUND {
        return Err(too_large(c));
    }
    Ok(c)
}

/// All inhabitants of a positive type, in a fixed canonical order.
pub fn enum_vals_p(p: &TyP, base_size: usize) -> Result<Vec<FinVal>, OracleError> {
    card_p(p, base_size)?;
    Ok(match p {
        TyP::Atom(_) => (0..base_size).map(FinVal::Atom).collect(),
        TyP::Zero => Vec::new(),
        TyP::One => vec![FinVal::Unit],
        TyP::Sum(a, b) => {
            let mut vals: Vec<FinVal> = enum_vals_p(a, base_size)?
                .into_iter()
                .map(|v| FinVal::Inl(Box::new(v)))
                .collect();
            vals.extend(
                enum_vals_p(b, base_size)?
                    .into_iter()
                    .map(|v| FinVal::Inr(Box::new(v))),
            );
            vals
        }
        TyP::Prod(a, b) => {
            let vb = enum_vals_p(b, base_size)?;
            let mut vals = Vec::new();
            for x in enum_vals_p(a, base_size)? {
                for y in &vb {
                    vals.push(FinVal::Pair(Box::new(x.clone()), Box::new(y.clone())));
                }
            }
            vals
        }
        TyP::Thunk(n) => enum_vals_n(n, base_size)?,
    })
}

/// All inhabitants of a negative type, in a fixed canonical order.
pub fn enum_vals_n(n: &TyN, base_size: usize) -> Result<Vec<FinVal>, OracleError> {
    card_n(n, base_size)?;
    Ok(match n {
        TyN::Atom(_) => (0..base_size).map(FinVal::Atom).collect(),
        TyN::Top => vec![FinVal::Unit],
        TyN::With(a, b) => {
            let vb = enum_vals_n(b, base_size)?;
            let mut vals = Vec::new();
            for x in enum_vals_n(a, base_size)? {
                for y in &vb {
                    vals.push(FinVal::Pair(Box::new(x.clone()), Box::new(y.clone())));
                }
            }
            vals
        }
        TyN::Arr(a, b) => {
            let dom = card_p(a, base_size)? as usize;
            let cod = enum_vals_n(b, base_size)?;
            let mut tables = vec![Vec::new()];
            for _ in 0..dom {
                let mut next = Vec::new();
                for t in &tables {
                    for v in &cod {
                        let mut t2 = t.clone();
                        t2.push(v.clone());
                        next.push(t2);
                    }
                }
                tables = next;
            }
            tables.into_iter().map(FinVal::Fun).collect()
        }
        TyN::Comp(p) => enum_vals_p(p, base_size)?,
    })
}

/// Every environment for a CBPV context, oldest entry first.
pub fn enum_envs_cbpv(
    ctx: &Ctx<TyP>,
    base_size: usize,
) -> Result<Vec<Vec<FinVal>>, OracleError> {
    let mut total: u128 = 1;
    for ty in ctx.entries() {
        total = total
            .checked_mul(card_p(ty, base_size)?)
            .filter(|n| *n <= DOMAIN_BOUND)
            .ok_or_else(|| too_large(u128::MAX))?;
    }
    let mut envs = vec![Vec::new()];
    for ty in ctx.entries() {
        let vals = enum_vals_p(ty, base_size)?;
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

/// Compositional evaluation of a CBPV value in the finite model.
pub fn fin_eval_val(
    ctx: &Ctx<TyP>,
    v: &Val,
    base_size: usize,
    env: &[FinVal],
) -> Result<FinVal, OracleError> {
    match v {
        Val::Var(x) => env
            .get(env.len().checked_sub(1 + x.0).ok_or_else(|| type_err("unbound index"))?)
            .cloned()
            .ok_or_else(|| type_err("unbound index")),
        Val::Thunk(t) => fin_eval_tm(ctx, t, base_size, env),
        Val::Unit => Ok(FinVal::Unit),
        Val::Pair(a, b) => Ok(FinVal::Pair(
            Box::new(fin_eval_val(ctx, a, base_size, env)?),
            Box::new(fin_eval_val(ctx, b, base_size, env)?),
        )),
        Val::Inj(Side::Inl, _, v) => {
            Ok(FinVal::Inl(Box::new(fin_eval_val(ctx, v, base_size, env)?)))
        }
        Val::Inj(Side::Inr, _, v) => {
            Ok(FinVal::Inr(Box::new(fin_eval_val(ctx, v, base_size, env)?)))
        }
    }
}

/// Compositional evaluation of a CBPV term in the finite model.
pub fn fin_eval_tm(
    ctx: &Ctx<TyP>,
    t: &Tm,
    base_size: usize,
    env: &[FinVal],
) -> Result<FinVal, OracleError> {
    match t {
        Tm::Ret(v) | Tm::Force(v) => fin_eval_val(ctx, v, base_size, env),
        Tm::Abs(dom, body) => {
            let ctx2 = ctx.snoc(dom.clone());
            let mut table = Vec::new();
            for v in enum_vals_p(dom, base_size)? {
                let mut e2 = env.to_vec();
                e2.push(v);
                table.push(fin_eval_tm(&ctx2, body, base_size, &e2)?);
            }
            Ok(FinVal::Fun(table))
        }
        Tm::PairN(a, b) => Ok(FinVal::Pair(
            Box::new(fin_eval_tm(ctx, a, base_size, env)?),
            Box::new(fin_eval_tm(ctx, b, base_size, env)?),
        )),
        Tm::UnitN => Ok(FinVal::Unit),
        Tm::App(f, u) => {
            let dom = match infer_tm(ctx, f).map_err(type_err)? {
                TyN::Arr(dom, _) => *dom,
                ty => return Err(type_err(format!("applied non-function of type {ty}"))),
            };
            let fv = fin_eval_tm(ctx, f, base_size, env)?;
            let uv = fin_eval_val(ctx, u, base_size, env)?;
            match fv {
                FinVal::Fun(table) => {
                    let i = val_index_p(&dom, &uv, base_size)?;
                    Ok(table[i].clone())
                }
                _ => Err(type_err("applied a non-function value")),
            }
        }
        Tm::Prj(p, t) => match fin_eval_tm(ctx, t, base_size, env)? {
            FinVal::Pair(a, b) => Ok(match p {
                Proj::Fst => *a,
                Proj::Snd => *b,
            }),
            _ => Err(type_err("projected a non-pair value")),
        },
        Tm::Bind(ann, u, t) => {
            let uv = fin_eval_tm(ctx, u, base_size, env)?;
            let mut e2 = env.to_vec();
            e2.push(uv);
            fin_eval_tm(&ctx.snoc(ann.clone()), t, base_size, &e2)
        }
        Tm::Split(v, t) => {
            let (p1, p2) = match infer_val(ctx, v).map_err(type_err)? {
                TyP::Prod(p1, p2) => (*p1, *p2),
                ty => return Err(type_err(format!("split on non-product of type {ty}"))),
            };
            match fin_eval_val(ctx, v, base_size, env)? {
                FinVal::Pair(a, b) => {
                    let mut e2 = env.to_vec();
                    e2.push(*a);
                    e2.push(*b);
                    fin_eval_tm(&ctx.snoc(p1).snoc(p2), t, base_size, &e2)
                }
                _ => Err(type_err("split on a non-pair value")),
            }
        }
        Tm::Case(v, l, r) => {
            let (p1, p2) = match infer_val(ctx, v).map_err(type_err)? {
                TyP::Sum(p1, p2) => (*p1, *p2),
                ty => return Err(type_err(format!("case on non-sum of type {ty}"))),
            };
            match fin_eval_val(ctx, v, base_size, env)? {
                FinVal::Inl(a) => {
                    let mut e2 = env.to_vec();
                    e2.push(*a);
                    fin_eval_tm(&ctx.snoc(p1), l, base_size, &e2)
                }
                FinVal::Inr(a) => {
                    let mut e2 = env.to_vec();
                    e2.push(*a);
                    fin_eval_tm(&ctx.snoc(p2), r, base_size, &e2)
                }
                _ => Err(type_err("case on a non-injection value")),
            }
        }
        Tm::Abort(_, _) => {
            // The scrutinee has the empty type; enum_envs_cbpv never builds
            // an environment that reaches this point.
            Err(type_err("abort evaluated under an impossible environment"))
        }
    }
}

/// Extensional equivalence of CBPV terms in the finite model.
pub fn oracle_equiv_cbpv(
    ctx: &Ctx<TyP>,
    t1: &Tm,
    t2: &Tm,
    base_size: usize,
) -> Result<Verdict, OracleError> {
    let ty1 = infer_tm(ctx, t1).map_err(type_err)?;
    let ty2 = infer_tm(ctx, t2).map_err(type_err)?;
    if ty1 != ty2 {
        return Err(type_err(format!("compared terms of types {ty1} and {ty2}")));
    }
    for env in enum_envs_cbpv(ctx, base_size)? {
        if fin_eval_tm(ctx, t1, base_size, &env)? != fin_eval_tm(ctx, t2, base_size, &env)? {
            return Ok(Verdict::NotEqual);
        }
    }
    Ok(Verdict::Equal)
}

impl Gen {
    /// A random positive type of depth at most `depth`.
    pub fn ty_p(&mut self, depth: usize) -> TyP {
        if depth == 0 {
            return match self.rng().gen_range(0..3) {
                0 | 1 => TyP::atom("p"),
                _ => TyP::One,
            };
        }
        match self.rng().gen_range(0..12) {
            0..=2 => TyP::atom("p"),
            3 => TyP::One,
            4 => TyP::Zero,
            5..=6 => TyP::sum(self.ty_p(depth - 1), self.ty_p(depth - 1)),
            7..=8 => TyP::prod(self.ty_p(depth - 1), self.ty_p(depth - 1)),
            _ => TyP::thunk(self.ty_n(depth - 1)),
        }
    }

    /// A random negative type of depth at most `depth`.
    pub fn ty_n(&mut self, depth: usize) -> TyN {
        if depth == 0 {
            return match self.rng().gen_range(0..3) {
                0 | 1 => TyN::atom("n"),
                _ => TyN::Top,
            };
        }
        match self.rng().gen_range(0..10) {
            0..=1 => TyN::atom("n"),
            2 => TyN::Top,
            3..=4 => TyN::with(self.ty_n(depth - 1), self.ty_n(depth - 1)),
            5..=7 => TyN::arr(self.ty_p(depth - 1), self.ty_n(depth - 1)),
            _ => TyN::comp(self.ty_p(depth - 1)),
        }
    }

    pub fn ctx_cbpv(&mut self, max_vars: usize, depth: usize) -> Ctx<TyP> {
        let n = self.rng().gen_range(0..=max_vars);
        Ctx::from_entries((0..n).map(|_| self.ty_p(depth)).collect())
    }

    fn pick_var_p(&mut self, ctx: &Ctx<TyP>, goal: &TyP) -> Option<Val> {
        let hits: Vec<usize> = ctx
            .entries()
            .iter()
            .rev()
            .enumerate()
            .filter(|(_, ty)| *ty == goal)
            .map(|(i, _)| i)
            .collect();
        if hits.is_empty() {
            None
        } else {
            let i = hits[self.rng().gen_range(0..hits.len())];
            Some(Val::Var(Idx(i)))
        }
    }

    /// Try to build a value of type `goal` within `fuel` steps.
    pub fn val_of(&mut self, ctx: &Ctx<TyP>, goal: &TyP, fuel: usize) -> Option<Val> {
        if fuel == 0 {
            return self.smallest_val(ctx, goal);
        }
        for _ in 0..4 {
            let t = if self.rng().gen_bool(0.3) {
                self.pick_var_p(ctx, goal)
            } else {
                match goal {
                    TyP::One => Some(Val::Unit),
                    TyP::Prod(a, b) => Some(Val::pair(
                        self.val_of(ctx, a, fuel - 1)?,
                        self.val_of(ctx, b, fuel - 1)?,
                    )),
                    TyP::Sum(a, b) => {
                        let left = self.rng().gen_bool(0.5);
                        let (mine, other) = if left { (a, b) } else { (b, a) };
                        let side = if left { Side::Inl } else { Side::Inr };
                        let v = self.val_of(ctx, mine, fuel - 1)?;
                        Some(Val::inj(side, (**other).clone(), v))
                    }
                    TyP::Thunk(n) => Some(Val::thunk(self.tm_of(ctx, n, fuel - 1)?)),
                    TyP::Atom(_) | TyP::Zero => self.pick_var_p(ctx, goal),
                }
            };
            if t.is_some() {
                return t;
            }
        }
        self.smallest_val(ctx, goal)
    }

    /// Try to build a term of type `goal` within `fuel` steps.
    pub fn tm_of(&mut self, ctx: &Ctx<TyP>, goal: &TyN, fuel: usize) -> Option<Tm> {
        if fuel == 0 {
            return self.smallest_tm(ctx, goal);
        }
        for _ in 0..4 {
            let choice = self.rng().gen_range(0..10);
            let t = if choice < 5 {
                match goal {
                    TyN::Top => Some(Tm::UnitN),
                    TyN::With(a, b) => Some(Tm::pair_n(
                        self.tm_of(ctx, a, fuel - 1)?,
                        self.tm_of(ctx, b, fuel - 1)?,
                    )),
                    TyN::Arr(a, b) => Some(Tm::abs(
                        (**a).clone(),
                        self.tm_of(&ctx.snoc((**a).clone()), b, fuel - 1)?,
                    )),
                    TyN::Comp(p) => Some(Tm::ret(self.val_of(ctx, p, fuel - 1)?)),
                    TyN::Atom(_) => None,
                }
            } else {
                self.elim_tm(ctx, goal, fuel)
            };
            if t.is_some() {
                return t;
            }
        }
        self.smallest_tm(ctx, goal)
    }

    fn elim_tm(&mut self, ctx: &Ctx<TyP>, goal: &TyN, fuel: usize) -> Option<Tm> {
        match self.rng().gen_range(0..5) {
            0 => {
                let v = self.val_of(ctx, &TyP::thunk(goal.clone()), fuel - 1)?;
                Some(Tm::force(v))
            }
            1 => {
                let dom = self.ty_p(1);
                let f = self.tm_of(ctx, &TyN::arr(dom.clone(), goal.clone()), fuel - 1)?;
                let v = self.val_of(ctx, &dom, fuel - 1)?;
                Some(Tm::app(f, v))
            }
            2 => {
                let other = self.ty_n(1);
                let fst = self.rng().gen_bool(0.5);
                let with = if fst {
                    TyN::with(goal.clone(), other)
                } else {
                    TyN::with(other, goal.clone())
                };
                let t = self.tm_of(ctx, &with, fuel - 1)?;
                Some(Tm::prj(if fst { Proj::Fst } else { Proj::Snd }, t))
            }
            3 => {
                let ann = self.ty_p(1);
                let u = self.tm_of(ctx, &TyN::comp(ann.clone()), fuel - 1)?;
                let t = self.tm_of(&ctx.snoc(ann.clone()), goal, fuel - 1)?;
                Some(Tm::bind(ann, u, t))
            }
            _ => {
                let a = self.ty_p(1);
                let b = self.ty_p(1);
                if self.rng().gen_bool(0.5) {
                    let scrut = self.val_of(ctx, &TyP::sum(a.clone(), b.clone()), fuel - 1)?;
                    let l = self.tm_of(&ctx.snoc(a), goal, fuel - 1)?;
                    let r = self.tm_of(&ctx.snoc(b), goal, fuel - 1)?;
                    Some(Tm::case(scrut, l, r))
                } else {
                    let scrut = self.val_of(ctx, &TyP::prod(a.clone(), b.clone()), fuel - 1)?;
                    let t = self.tm_of(&ctx.snoc(a).snoc(b), goal, fuel - 1)?;
                    Some(Tm::split(scrut, t))
                }
            }
        }
    }

    fn smallest_val(&mut self, ctx: &Ctx<TyP>, goal: &TyP) -> Option<Val> {
        if let Some(v) = self.pick_var_p(ctx, goal) {
            return Some(v);
        }
        match goal {
            TyP::One => Some(Val::Unit),
            TyP::Prod(a, b) => Some(Val::pair(
                self.smallest_val(ctx, a)?,
                self.smallest_val(ctx, b)?,
            )),
            TyP::Sum(a, b) => {
                if let Some(v) = self.smallest_val(ctx, a) {
                    Some(Val::inj(Side::Inl, (**b).clone(), v))
                } else {
                    Some(Val::inj(
                        Side::Inr,
                        (**a).clone(),
                        self.smallest_val(ctx, b)?,
                    ))
                }
            }
            TyP::Thunk(n) => Some(Val::thunk(self.smallest_tm(ctx, n)?)),
            TyP::Atom(_) | TyP::Zero => None,
        }
    }

    fn smallest_tm(&mut self, ctx: &Ctx<TyP>, goal: &TyN) -> Option<Tm> {
        match goal {
            TyN::Top => Some(Tm::UnitN),
            TyN::With(a, b) => Some(Tm::pair_n(
                self.smallest_tm(ctx, a)?,
                self.smallest_tm(ctx, b)?,
            )),
            TyN::Arr(a, b) => Some(Tm::abs(
                (**a).clone(),
                self.smallest_tm(&ctx.snoc((**a).clone()), b)?,
            )),
            TyN::Comp(p) => Some(Tm::ret(self.smallest_val(ctx, p)?)),
            TyN::Atom(_) => {
                // Only a forced thunk variable can produce a negative atom.
                let thunked = TyP::thunk(goal.clone());
                self.pick_var_p(ctx, &thunked).map(Tm::force)
            }
        }
    }
}

fn tm_size(t: &Tm) -> usize {
    fn val(v: &Val) -> usize {
        1 + match v {
            Val::Var(_) | Val::Unit => 0,
            Val::Thunk(t) => tm_size(t),
            Val::Pair(a, b) => val(a) + val(b),
            Val::Inj(_, _, v) => val(v),
        }
    }
    1 + match t {
        Tm::Ret(v) | Tm::Force(v) => val(v),
        Tm::Abs(_, t) | Tm::Prj(_, t) => tm_size(t),
        Tm::PairN(a, b) | Tm::Bind(_, a, b) => tm_size(a) + tm_size(b),
        Tm::UnitN => 0,
        Tm::App(t, v) => tm_size(t) + val(v),
        Tm::Split(v, t) => val(v) + tm_size(t),
        Tm::Case(v, l, r) => val(v) + tm_size(l) + tm_size(r),
        Tm::Abort(_, v) => val(v),
    }
}

/// Generate a random well-typed CBPV term. Deterministic in `seed`.
pub fn gen_term_cbpv(
    seed: u64,
    size_bound: usize,
    type_depth_bound: usize,
) -> Result<(Ctx<TyP>, Tm), GenerationExhausted> {
    let fuel = size_bound.max(1).min(8);
    for attempt in 0..64u64 {
        let mut g = Gen::new(seed.wrapping_mul(0xa24b_aed4_963e_e407).wrapping_add(attempt));
        let ctx = g.ctx_cbpv(3, type_depth_bound);
        let goal = g.ty_n(type_depth_bound);
        if let Some(t) = g.tm_of(&ctx, &goal, fuel) {
            if tm_size(&t) <= size_bound.max(4) {
                return Ok((ctx, t));
            }
        }
    }
    Err(GenerationExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cbpv::erase::erase_nf;
    use crate::cbpv::sem::norm_cbpv;
    use crate::cbpv::validate::check_nf;

    fn p() -> TyP {
        TyP::atom("p")
    }

    #[test]
    fn cardinalities() {
        assert_eq!(card_p(&TyP::thunk(TyN::atom("n")), 2).unwrap(), 2);
        assert_eq!(card_n(&TyN::comp(TyP::sum(p(), p())), 2).unwrap(), 4);
        assert_eq!(card_n(&TyN::arr(p(), TyN::atom("n")), 2).unwrap(), 4);
        assert_eq!(card_n(&TyN::with(TyN::Top, TyN::Top), 2).unwrap(), 1);
        assert_eq!(card_n(&TyN::arr(TyP::Zero, TyN::atom("n")), 2).unwrap(), 1);
    }

    #[test]
    fn thunks_are_transparent() {
        // `ret (thunk t)` and `t` denote the same point.
        let t = Tm::abs(p(), Tm::ret(Val::var(0)));
        let wrapped = Tm::ret(Val::thunk(t.clone()));
        let v1 = fin_eval_tm(&Ctx::empty(), &t, 2, &[]).unwrap();
        let v2 = fin_eval_tm(&Ctx::empty(), &wrapped, 2, &[]).unwrap();
        assert_eq!(v1, v2);
    }

    #[test]
    fn force_thunk_is_identity_in_the_model() {
        let ctx = Ctx::from_entries(vec![TyP::thunk(TyN::comp(p()))]);
        let t1 = Tm::force(Val::var(0));
        let t2 = Tm::bind(p(), Tm::force(Val::var(0)), Tm::ret(Val::var(0)));
        assert_eq!(oracle_equiv_cbpv(&ctx, &t1, &t2, 2).unwrap(), Verdict::Equal);
    }

    #[test]
    fn generated_terms_are_well_typed_and_deterministic() {
        for seed in 0..200 {
            let (ctx, t) = gen_term_cbpv(seed, 12, 2).unwrap();
            infer_tm(&ctx, &t).unwrap_or_else(|e| panic!("seed {seed}: {e} on {t:?}"));
            let (ctx2, t2) = gen_term_cbpv(seed, 12, 2).unwrap();
            assert_eq!((ctx.entries(), &t), (ctx2.entries(), &t2));
        }
    }

    #[test]
    fn norm_preserves_meaning_on_generated_terms() {
        let mut checked = 0;
        for seed in 0..100 {
            let (ctx, t) = gen_term_cbpv(seed, 12, 2).unwrap();
            let ty = infer_tm(&ctx, &t).unwrap();
            let nf = norm_cbpv(&ctx, &t).unwrap_or_else(|e| panic!("seed {seed}: {e} on {t:?}"));
            check_nf(&ctx, &ty, &nf).unwrap_or_else(|e| panic!("seed {seed}: {e} on {nf:?}"));
            let back = erase_nf(&ctx, &ty, &nf).unwrap();
            match oracle_equiv_cbpv(&ctx, &t, &back, 2) {
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
            let (ctx, t) = gen_term_cbpv(seed, 12, 2).unwrap();
            let ty = infer_tm(&ctx, &t).unwrap();
            let nf = norm_cbpv(&ctx, &t).unwrap();
            let back = erase_nf(&ctx, &ty, &nf).unwrap();
            let nf2 = norm_cbpv(&ctx, &back).unwrap();
            assert_eq!(nf, nf2, "seed {seed}");
        }
    }
}
