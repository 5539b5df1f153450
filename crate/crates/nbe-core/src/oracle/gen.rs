//! Deterministic, type-directed random generation of well-typed terms.
//!
//! The generator picks a goal type and builds an inhabitant from variables,
//! introductions, and size-bounded eliminations, backtracking on dead ends.
//! Everything is a pure function of the seed.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::kernel::{Ctx, Idx};
use crate::stlc::{Side, Term, Ty};

use super::GenerationExhausted;

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A random type of depth at most `depth`. `Zero` is rare: it makes
    /// most goals uninhabitable and most environments empty.
    pub fn ty(&mut self, depth: usize) -> Ty {
        if depth == 0 {
            return match self.rng.gen_range(0..4) {
                0 | 1 => Ty::atom(),
                2 => Ty::One,
                _ => Ty::atom(),
            };
        }
        match self.rng.gen_range(0..12) {
            0..=2 => Ty::atom(),
            3 => Ty::One,
            4 => Ty::Zero,
            5..=6 => Ty::sum(self.ty(depth - 1), self.ty(depth - 1)),
            7..=8 => Ty::prod(self.ty(depth - 1), self.ty(depth - 1)),
            _ => Ty::arr(self.ty(depth - 1), self.ty(depth - 1)),
        }
    }

    /// A random context of at most `max_vars` entries.
    pub fn ctx(&mut self, max_vars: usize, depth: usize) -> Ctx<Ty> {
        let n = self.rng.gen_range(0..=max_vars);
        Ctx::from_entries((0..n).map(|_| self.ty(depth)).collect())
    }

    /// Try to build a term of type `goal` in `ctx` within `fuel` recursive
    /// steps. Returns `None` when the budget runs out.
    pub fn term_of(&mut self, ctx: &Ctx<Ty>, goal: &Ty, fuel: usize) -> Option<Term> {
        if fuel == 0 {
            return self.smallest(ctx, goal);
        }
        // A few attempts at a random production, then the fallback.
        for _ in 0..4 {
            let choice = self.rng.gen_range(0..10);
            let t = match choice {
                0 | 1 => self.pick_var(ctx, goal),
                2..=6 => self.intro(ctx, goal, fuel),
                _ => self.elim(ctx, goal, fuel),
            };
            if t.is_some() {
                return t;
            }
        }
        self.smallest(ctx, goal)
    }

    fn pick_var(&mut self, ctx: &Ctx<Ty>, goal: &Ty) -> Option<Term> {
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
            let i = hits[self.rng.gen_range(0..hits.len())];
            Some(Term::Var(Idx(i)))
        }
    }

    fn intro(&mut self, ctx: &Ctx<Ty>, goal: &Ty, fuel: usize) -> Option<Term> {
        match goal {
            Ty::One => Some(Term::Unit),
            Ty::Prod(a, b) => Some(Term::pair(
                self.term_of(ctx, a, fuel - 1)?,
                self.term_of(ctx, b, fuel - 1)?,
            )),
            Ty::Arr(a, b) => Some(Term::abs(
                (**a).clone(),
                self.term_of(&ctx.snoc((**a).clone()), b, fuel - 1)?,
            )),
            Ty::Sum(a, b) => {
                let left = self.rng.gen_bool(0.5);
                let (mine, other) = if left { (a, b) } else { (b, a) };
                let side = if left { Side::Inl } else { Side::Inr };
                let t = self.term_of(ctx, mine, fuel - 1)?;
                Some(Term::inj(side, (**other).clone(), t))
            }
            Ty::Atom(_) | Ty::Zero => None,
        }
    }

    fn elim(&mut self, ctx: &Ctx<Ty>, goal: &Ty, fuel: usize) -> Option<Term> {
        match self.rng.gen_range(0..3) {
            0 => {
                // Application at a small random domain.
                let dom = self.ty(1);
                let f = self.term_of(ctx, &Ty::arr(dom.clone(), goal.clone()), fuel - 1)?;
                let u = self.term_of(ctx, &dom, fuel - 1)?;
                Some(Term::app(f, u))
            }
            1 => {
                // Case on a small random sum.
                let a = self.ty(1);
                let b = self.ty(1);
                let scrut = self.term_of(ctx, &Ty::sum(a.clone(), b.clone()), fuel - 1)?;
                let l = self.term_of(&ctx.snoc(a), goal, fuel - 1)?;
                let r = self.term_of(&ctx.snoc(b), goal, fuel - 1)?;
                Some(Term::case(scrut, l, r))
            }
            _ => {
                // Projection from a product with a small random partner.
                let other = self.ty(1);
                let fst = self.rng.gen_bool(0.5);
                let prod = if fst {
                    Ty::prod(goal.clone(), other)
                } else {
                    Ty::prod(other, goal.clone())
                };
                let t = self.term_of(ctx, &prod, fuel - 1)?;
                Some(Term::prj(
                    if fst {
                        crate::stlc::Proj::Fst
                    } else {
                        crate::stlc::Proj::Snd
                    },
                    t,
                ))
            }
        }
    }

    /// The least-effort inhabitant: a variable or a canonical introduction
    /// built from canonical subterms.
    fn smallest(&mut self, ctx: &Ctx<Ty>, goal: &Ty) -> Option<Term> {
        if let Some(t) = self.pick_var(ctx, goal) {
            return Some(t);
        }
        match goal {
            Ty::One => Some(Term::Unit),
            Ty::Prod(a, b) => Some(Term::pair(
                self.smallest(ctx, a)?,
                self.smallest(ctx, b)?,
            )),
            Ty::Arr(a, b) => Some(Term::abs(
                (**a).clone(),
                self.smallest(&ctx.snoc((**a).clone()), b)?,
            )),
            Ty::Sum(a, b) => {
                if let Some(t) = self.smallest(ctx, a) {
                    Some(Term::inj(Side::Inl, (**b).clone(), t))
                } else {
                    Some(Term::inj(Side::Inr, (**a).clone(), self.smallest(ctx, b)?))
                }
            }
            Ty::Atom(_) | Ty::Zero => None,
        }
    }
}

/// Generate a random well-typed STLC term. Deterministic in `seed`; retries
/// with derived sub-seeds when a draw dead-ends.
pub fn gen_term_stlc(
    seed: u64,
    size_bound: usize,
    type_depth_bound: usize,
) -> Result<(Ctx<Ty>, Term), GenerationExhausted> {
    let fuel = size_bound.max(1).min(8);
    for attempt in 0..64u64 {
        let mut g = Gen::new(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(attempt));
        let ctx = g.ctx(3, type_depth_bound);
        let goal = g.ty(type_depth_bound);
        if let Some(t) = g.term_of(&ctx, &goal, fuel) {
            if t.size() <= size_bound.max(4) {
                return Ok((ctx, t));
            }
        }
    }
    Err(GenerationExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stlc::infer::infer;

    #[test]
    fn generated_terms_are_well_typed_and_deterministic() {
        for seed in 0..200 {
            let (ctx, t) = gen_term_stlc(seed, 12, 2).unwrap();
            infer(&ctx, &t).unwrap_or_else(|e| panic!("seed {seed}: {e} on {t:?}"));
            let (ctx2, t2) = gen_term_stlc(seed, 12, 2).unwrap();
            assert_eq!((ctx.entries(), &t), (ctx2.entries(), &t2));
        }
    }

    #[test]
    fn smallest_closed_unit() {
        let mut g = Gen::new(0);
        let t = g.term_of(&Ctx::empty(), &Ty::One, 0).unwrap();
        assert_eq!(t, Term::Unit);
    }
}
