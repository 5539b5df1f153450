//! Instance generators for the sixteen equational axiom schemas of the
//! theory the normalizer decides: beta (computation), eta (extensionality)
//! and pi (permutation) rules.
//!
//! Substitution and shifting live here as test infrastructure only; the
//! library proper renames exclusively along OPEs.

use rand::Rng;

use crate::kernel::{Ctx, Idx};
use crate::stlc::{Proj, Side, Term, Ty};

use super::gen::Gen;
use super::GenerationExhausted;

/// Shift free indices `>= cutoff` up by `amount`.
pub fn shift_term(t: &Term, cutoff: usize, amount: usize) -> Term {
    match t {
        Term::Var(x) => Term::Var(Idx(if x.0 >= cutoff { x.0 + amount } else { x.0 })),
        Term::Abs(dom, b) => Term::abs(dom.clone(), shift_term(b, cutoff + 1, amount)),
        Term::App(a, b) => Term::app(shift_term(a, cutoff, amount), shift_term(b, cutoff, amount)),
        Term::Unit => Term::Unit,
        Term::Pair(a, b) => {
            Term::pair(shift_term(a, cutoff, amount), shift_term(b, cutoff, amount))
        }
        Term::Prj(p, a) => Term::prj(*p, shift_term(a, cutoff, amount)),
        Term::Inj(s, other, a) => Term::inj(*s, other.clone(), shift_term(a, cutoff, amount)),
        Term::Case(s, l, r) => Term::case(
            shift_term(s, cutoff, amount),
            shift_term(l, cutoff + 1, amount),
            shift_term(r, cutoff + 1, amount),
        ),
        Term::Abort(ty, a) => Term::abort(ty.clone(), shift_term(a, cutoff, amount)),
    }
}

fn subst(t: &Term, depth: usize, u: &Term) -> Term {
    match t {
        Term::Var(x) => {
            if x.0 == depth {
                shift_term(u, 0, depth)
            } else if x.0 > depth {
                Term::Var(Idx(x.0 - 1))
            } else {
                Term::Var(*x)
            }
        }
        Term::Abs(dom, b) => Term::abs(dom.clone(), subst(b, depth + 1, u)),
        Term::App(a, b) => Term::app(subst(a, depth, u), subst(b, depth, u)),
        Term::Unit => Term::Unit,
        Term::Pair(a, b) => Term::pair(subst(a, depth, u), subst(b, depth, u)),
        Term::Prj(p, a) => Term::prj(*p, subst(a, depth, u)),
        Term::Inj(s, other, a) => Term::inj(*s, other.clone(), subst(a, depth, u)),
        Term::Case(s, l, r) => Term::case(
            subst(s, depth, u),
            subst(l, depth + 1, u),
            subst(r, depth + 1, u),
        ),
        Term::Abort(ty, a) => Term::abort(ty.clone(), subst(a, depth, u)),
    }
}

/// Single substitution of the innermost variable: `t[u]`.
pub fn subst0(t: &Term, u: &Term) -> Term {
    subst(t, 0, u)
}

/// The sixteen axiom schemas of the equational theory.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AxiomSchema {
    BetaArr,
    BetaProd,
    BetaSum,
    EtaArr,
    EtaProd,
    EtaOne,
    EtaSum,
    EtaZero,
    PiArrZero,
    PiArrSum,
    PiProdZero,
    PiProdSum,
    PiSumZero,
    PiSumSum,
    PiZeroZero,
    PiZeroSum,
}

pub const ALL_SCHEMAS: [AxiomSchema; 16] = [
    AxiomSchema::BetaArr,
    AxiomSchema::BetaProd,
    AxiomSchema::BetaSum,
    AxiomSchema::EtaArr,
    AxiomSchema::EtaProd,
    AxiomSchema::EtaOne,
    AxiomSchema::EtaSum,
    AxiomSchema::EtaZero,
    AxiomSchema::PiArrZero,
    AxiomSchema::PiArrSum,
    AxiomSchema::PiProdZero,
    AxiomSchema::PiProdSum,
    AxiomSchema::PiSumZero,
    AxiomSchema::PiSumSum,
    AxiomSchema::PiZeroZero,
    AxiomSchema::PiZeroSum,
];

impl AxiomSchema {
    pub fn name(self) -> &'static str {
        match self {
            AxiomSchema::BetaArr => "beta-arr",
            AxiomSchema::BetaProd => "beta-prod",
            AxiomSchema::BetaSum => "beta-sum",
            AxiomSchema::EtaArr => "eta-arr",
            AxiomSchema::EtaProd => "eta-prod",
            AxiomSchema::EtaOne => "eta-one",
            AxiomSchema::EtaSum => "eta-sum",
            AxiomSchema::EtaZero => "eta-zero",
            AxiomSchema::PiArrZero => "pi-arr-zero",
            AxiomSchema::PiArrSum => "pi-arr-sum",
            AxiomSchema::PiProdZero => "pi-prod-zero",
            AxiomSchema::PiProdSum => "pi-prod-sum",
            AxiomSchema::PiSumZero => "pi-sum-zero",
            AxiomSchema::PiSumSum => "pi-sum-sum",
            AxiomSchema::PiZeroZero => "pi-zero-zero",
            AxiomSchema::PiZeroSum => "pi-zero-sum",
        }
    }
}

const FUEL: usize = 4;

/// Instantiate a schema with randomly generated metavariables. Returns the
/// context and the two sides; both sides are well-typed at a common type.
pub fn gen_axiom_instance(
    schema: AxiomSchema,
    seed: u64,
) -> Result<(Ctx<Ty>, Term, Term), GenerationExhausted> {
    for attempt in 0..64u64 {
        let mut g = Gen::new(
            seed.wrapping_mul(0xd1b5_4a32_d192_ed03)
                .wrapping_add(attempt)
                .wrapping_add(schema as u64),
        );
        if let Some(result) = try_instance(schema, &mut g) {
            return Ok(result);
        }
    }
    Err(GenerationExhausted)
}

fn try_instance(schema: AxiomSchema, g: &mut Gen) -> Option<(Ctx<Ty>, Term, Term)> {
    let ctx = g.ctx(2, 1);
    Some(match schema {
        AxiomSchema::BetaArr => {
            let a = g.ty(1);
            let b = g.ty(1);
            let t = g.term_of(&ctx.snoc(a.clone()), &b, FUEL)?;
            let u = g.term_of(&ctx, &a, FUEL)?;
            (
                ctx,
                Term::app(Term::abs(a, t.clone()), u.clone()),
                subst0(&t, &u),
            )
        }
        AxiomSchema::BetaProd => {
            let a = g.ty(1);
            let b = g.ty(1);
            let t1 = g.term_of(&ctx, &a, FUEL)?;
            let t2 = g.term_of(&ctx, &b, FUEL)?;
            let fst = g.rng().gen_bool(0.5);
            let (p, keep) = if fst {
                (Proj::Fst, t1.clone())
            } else {
                (Proj::Snd, t2.clone())
            };
            (ctx, Term::prj(p, Term::pair(t1, t2)), keep)
        }
        AxiomSchema::BetaSum => {
            let a1 = g.ty(1);
            let a2 = g.ty(1);
            let c = g.ty(1);
            let t1 = g.term_of(&ctx.snoc(a1.clone()), &c, FUEL)?;
            let t2 = g.term_of(&ctx.snoc(a2.clone()), &c, FUEL)?;
            let left = g.rng().gen_bool(0.5);
            let (scrut, keep) = if left {
                let t = g.term_of(&ctx, &a1, FUEL)?;
                (Term::inj(Side::Inl, a2.clone(), t.clone()), subst0(&t1, &t))
            } else {
                let t = g.term_of(&ctx, &a2, FUEL)?;
                (Term::inj(Side::Inr, a1.clone(), t.clone()), subst0(&t2, &t))
            };
            (ctx, Term::case(scrut, t1.clone(), t2.clone()), keep)
        }
        AxiomSchema::EtaArr => {
            let a = g.ty(1);
            let b = g.ty(1);
            let t = g.term_of(&ctx, &Ty::arr(a.clone(), b), FUEL)?;
            let eta = Term::abs(a, Term::app(shift_term(&t, 0, 1), Term::var(0)));
            (ctx, t, eta)
        }
        AxiomSchema::EtaProd => {
            let a = g.ty(1);
            let b = g.ty(1);
            let t = g.term_of(&ctx, &Ty::prod(a, b), FUEL)?;
            let eta = Term::pair(
                Term::prj(Proj::Fst, t.clone()),
                Term::prj(Proj::Snd, t.clone()),
            );
            (ctx, t, eta)
        }
        AxiomSchema::EtaOne => {
            let t = g.term_of(&ctx, &Ty::One, FUEL)?;
            (ctx, t, Term::Unit)
        }
        AxiomSchema::EtaSum => {
            let a = g.ty(1);
            let b = g.ty(1);
            let t = g.term_of(&ctx, &Ty::sum(a.clone(), b.clone()), FUEL)?;
            let eta = Term::case(
                t.clone(),
                Term::inj(Side::Inl, b, Term::var(0)),
                Term::inj(Side::Inr, a, Term::var(0)),
            );
            (ctx, t, eta)
        }
        AxiomSchema::EtaZero => {
            let ctx = ctx.snoc(Ty::Zero);
            let t = Term::var(0);
            (ctx.clone(), t.clone(), Term::abort(Ty::Zero, t))
        }
        AxiomSchema::PiArrZero => {
            let ctx = ctx.snoc(Ty::Zero);
            let a = g.ty(1);
            let b = g.ty(1);
            let t = Term::var(0);
            let u = g.term_of(&ctx, &a, FUEL)?;
            (
                ctx,
                Term::app(Term::abort(Ty::arr(a, b.clone()), t.clone()), u),
                Term::abort(b, t),
            )
        }
        AxiomSchema::PiArrSum => {
            let s1 = g.ty(1);
            let s2 = g.ty(1);
            let a = g.ty(1);
            let b = g.ty(1);
            let fun = Ty::arr(a.clone(), b);
            let t = g.term_of(&ctx, &Ty::sum(s1.clone(), s2.clone()), FUEL)?;
            let t1 = g.term_of(&ctx.snoc(s1), &fun, FUEL)?;
            let t2 = g.term_of(&ctx.snoc(s2), &fun, FUEL)?;
            let u = g.term_of(&ctx, &a, FUEL)?;
            let lhs = Term::app(Term::case(t.clone(), t1.clone(), t2.clone()), u.clone());
            let rhs = Term::case(
                t,
                Term::app(t1, shift_term(&u, 0, 1)),
                Term::app(t2, shift_term(&u, 0, 1)),
            );
            (ctx, lhs, rhs)
        }
        AxiomSchema::PiProdZero => {
            let ctx = ctx.snoc(Ty::Zero);
            let a = g.ty(1);
            let b = g.ty(1);
            let t = Term::var(0);
            let fst = g.rng().gen_bool(0.5);
            let (p, keep) = if fst {
                (Proj::Fst, a.clone())
            } else {
                (Proj::Snd, b.clone())
            };
            (
                ctx,
                Term::prj(p, Term::abort(Ty::prod(a, b), t.clone())),
                Term::abort(keep, t),
            )
        }
        AxiomSchema::PiProdSum => {
            let s1 = g.ty(1);
            let s2 = g.ty(1);
            let a = g.ty(1);
            let b = g.ty(1);
            let prod = Ty::prod(a, b);
            let t = g.term_of(&ctx, &Ty::sum(s1.clone(), s2.clone()), FUEL)?;
            let t1 = g.term_of(&ctx.snoc(s1), &prod, FUEL)?;
            let t2 = g.term_of(&ctx.snoc(s2), &prod, FUEL)?;
            let p = if g.rng().gen_bool(0.5) {
                Proj::Fst
            } else {
                Proj::Snd
            };
            let lhs = Term::prj(p, Term::case(t.clone(), t1.clone(), t2.clone()));
            let rhs = Term::case(t, Term::prj(p, t1), Term::prj(p, t2));
            (ctx, lhs, rhs)
        }
        AxiomSchema::PiSumZero => {
            let ctx = ctx.snoc(Ty::Zero);
            let x1 = g.ty(1);
            let x2 = g.ty(1);
            let c = g.ty(1);
            let t = Term::var(0);
            let u1 = g.term_of(&ctx.snoc(x1.clone()), &c, FUEL)?;
            let u2 = g.term_of(&ctx.snoc(x2.clone()), &c, FUEL)?;
            let lhs = Term::case(Term::abort(Ty::sum(x1, x2), t.clone()), u1, u2);
            (ctx, lhs, Term::abort(c, t))
        }
        AxiomSchema::PiSumSum => {
            let b1 = g.ty(1);
            let b2 = g.ty(1);
            let x1 = g.ty(1);
            let x2 = g.ty(1);
            let c = g.ty(1);
            let inner = Ty::sum(x1.clone(), x2.clone());
            let t = g.term_of(&ctx, &Ty::sum(b1.clone(), b2.clone()), FUEL)?;
            let t1 = g.term_of(&ctx.snoc(b1), &inner, FUEL)?;
            let t2 = g.term_of(&ctx.snoc(b2), &inner, FUEL)?;
            let u1 = g.term_of(&ctx.snoc(x1), &c, FUEL)?;
            let u2 = g.term_of(&ctx.snoc(x2), &c, FUEL)?;
            let lhs = Term::case(
                Term::case(t.clone(), t1.clone(), t2.clone()),
                u1.clone(),
                u2.clone(),
            );
            let u1s = shift_term(&u1, 1, 1);
            let u2s = shift_term(&u2, 1, 1);
            let rhs = Term::case(
                t,
                Term::case(t1, u1s.clone(), u2s.clone()),
                Term::case(t2, u1s, u2s),
            );
            (ctx, lhs, rhs)
        }
        AxiomSchema::PiZeroZero => {
            let ctx = ctx.snoc(Ty::Zero);
            let c = g.ty(1);
            let t = Term::var(0);
            (
                ctx,
                Term::abort(c.clone(), Term::abort(Ty::Zero, t.clone())),
                Term::abort(c, t),
            )
        }
        AxiomSchema::PiZeroSum => {
            let s1 = g.ty(1);
            let s2 = g.ty(1);
            let c = g.ty(1);
            let t = g.term_of(&ctx, &Ty::sum(s1.clone(), s2.clone()), FUEL)?;
            let t1 = g.term_of(&ctx.snoc(s1), &Ty::Zero, FUEL)?;
            let t2 = g.term_of(&ctx.snoc(s2), &Ty::Zero, FUEL)?;
            let lhs = Term::abort(c.clone(), Term::case(t.clone(), t1.clone(), t2.clone()));
            let rhs = Term::case(t, Term::abort(c.clone(), t1), Term::abort(c, t2));
            (ctx, lhs, rhs)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::finmodel::oracle_equiv;
    use crate::oracle::Verdict;
    use crate::stlc::infer::infer;

    #[test]
    fn instances_are_well_typed_at_a_common_type() {
        for schema in ALL_SCHEMAS {
            for seed in 0..20 {
                let (ctx, lhs, rhs) = gen_axiom_instance(schema, seed)
                    .unwrap_or_else(|_| panic!("{}: exhausted at seed {seed}", schema.name()));
                let tl = infer(&ctx, &lhs)
                    .unwrap_or_else(|e| panic!("{} lhs seed {seed}: {e}", schema.name()));
                let tr = infer(&ctx, &rhs)
                    .unwrap_or_else(|e| panic!("{} rhs seed {seed}: {e}", schema.name()));
                assert_eq!(tl, tr, "{} seed {seed}", schema.name());
            }
        }
    }

    #[test]
    fn axioms_hold_in_the_finite_model() {
        for schema in ALL_SCHEMAS {
            for seed in 0..10 {
                let (ctx, lhs, rhs) = gen_axiom_instance(schema, seed).unwrap();
                match oracle_equiv(&ctx, &lhs, &rhs, 2) {
                    Ok(v) => assert_eq!(v, Verdict::Equal, "{} seed {seed}", schema.name()),
                    Err(crate::oracle::OracleError::DomainTooLarge { .. }) => {}
                    Err(e) => panic!("{} seed {seed}: {e}", schema.name()),
                }
            }
        }
    }

    #[test]
    fn subst_examples() {
        // (\x. x) y  ~  y
        let t = Term::var(0);
        let u = Term::var(3);
        assert_eq!(subst0(&t, &u), Term::var(3));
        // binder shifts the replacement
        let t = Term::abs(Ty::atom(), Term::var(1));
        assert_eq!(subst0(&t, &u), Term::abs(Ty::atom(), Term::var(4)));
        // unrelated indices drop by one
        assert_eq!(subst0(&Term::var(2), &u), Term::var(1));
    }
}
