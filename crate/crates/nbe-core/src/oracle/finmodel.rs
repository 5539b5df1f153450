//! The finite standard model: atoms are interpreted as sets of `base_size`
//! elements, functions as exhaustive tables, and terms compositionally.

use crate::kernel::Ctx;
use crate::stlc::infer::infer;
use crate::stlc::{Proj, Side, Term, Ty};

use super::{OracleError, Verdict};

/// Largest number of points any enumerated domain may have.
pub const DOMAIN_BOUND: u128 = 1_000_000;

/// A value in the finite model. Functions are stored as result tables
/// indexed by the canonical enumeration order of their domain, which makes
/// derived equality extensional.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FinVal {
    Atom(usize),
    Unit,
    Pair(Box<FinVal>, Box<FinVal>),
    Inl(Box<FinVal>),
    Inr(Box<FinVal>),
    Fun(Vec<FinVal>),
}

fn too_large(points: u128) -> OracleError {
    OracleError::DomainTooLarge {
        points,
        bound: DOMAIN_BOUND,
    }
}

/// Number of inhabitants of `ty`, guarded by `DOMAIN_BOUND`.
pub fn card(ty: &Ty, base_size: usize) -> Result<u128, OracleError> {
    let n = match ty {
        Ty::Atom(_) => base_size as u128,
        Ty::Zero => 0,
        Ty::One => 1,
        Ty::Sum(a, b) => card(a, base_size)?
            .checked_add(card(b, base_size)?)
            .ok_or_else(|| too_large(u128::MAX))?,
        Ty::Prod(a, b) => card(a, base_size)?
            .checked_mul(card(b, base_size)?)
            .ok_or_else(|| too_large(u128::MAX))?,
        Ty::Arr(a, b) => {
            let ca = card(a, base_size)?;
            let cb = card(b, base_size)?;
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
    };
    if n > DOMAIN_BOUND {
        return Err(too_large(n));
    }
    Ok(n)
}

/// All inhabitants of `ty`, in a fixed canonical order.
pub fn enum_vals(ty: &Ty, base_size: usize) -> Result<Vec<FinVal>, OracleError> {
    card(ty, base_size)?;
    Ok(match ty {
        Ty::Atom(_) => (0..base_size).map(FinVal::Atom).collect(),
        Ty::Zero => Vec::new(),
        Ty::One => vec![FinVal::Unit],
        Ty::Sum(a, b) => {
            let mut vals: Vec<FinVal> = enum_vals(a, base_size)?
                .into_iter()
                .map(|v| FinVal::Inl(Box::new(v)))
                .collect();
            vals.extend(
                enum_vals(b, base_size)?
                    .into_iter()
                    .map(|v| FinVal::Inr(Box::new(v))),
            );
            vals
        }
        Ty::Prod(a, b) => {
            let vb = enum_vals(b, base_size)?;
            let mut vals = Vec::new();
            for x in enum_vals(a, base_size)? {
                for y in &vb {
                    vals.push(FinVal::Pair(Box::new(x.clone()), Box::new(y.clone())));
                }
            }
            vals
        }
        Ty::Arr(a, b) => {
            let dom = card(a, base_size)? as usize;
            let cod = enum_vals(b, base_size)?;
            // All result tables, by mixed-radix counting over the codomain.
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
    })
}

/// Every environment for `ctx`, oldest entry first (matching the `eval`
/// convention that index zero is the last element).
pub fn enum_envs(ctx: &Ctx<Ty>, base_size: usize) -> Result<Vec<Vec<FinVal>>, OracleError> {
    let mut total: u128 = 1;
    for ty in ctx.entries() {
        total = total
            .checked_mul(card(ty, base_size)?)
            .filter(|n| *n <= DOMAIN_BOUND)
            .ok_or_else(|| too_large(u128::MAX))?;
    }
    let mut envs = vec![Vec::new()];
    for ty in ctx.entries() {
        let vals = enum_vals(ty, base_size)?;
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

fn type_err(e: impl std::fmt::Display) -> OracleError {
    OracleError::Type(e.to_string())
}

/// Position of `v` in the canonical enumeration of `ty`.
fn val_index(ty: &Ty, v: &FinVal, base_size: usize) -> Result<usize, OracleError> {
    enum_vals(ty, base_size)?
        .iter()
        .position(|w| w == v)
        .ok_or_else(|| type_err("value outside its type's enumeration"))
}

/// Compositional evaluation of an STLC term in the finite model.
pub fn fin_eval(
    ctx: &Ctx<Ty>,
    t: &Term,
    base_size: usize,
    env: &[FinVal],
) -> Result<FinVal, OracleError> {
    match t {
        Term::Var(x) => env
            .get(env.len().checked_sub(1 + x.0).ok_or_else(|| type_err("unbound index"))?)
            .cloned()
            .ok_or_else(|| type_err("unbound index")),
        Term::Abs(dom, body) => {
            let ctx2 = ctx.snoc(dom.clone());
            let mut table = Vec::new();
            for v in enum_vals(dom, base_size)? {
                let mut e2 = env.to_vec();
                e2.push(v);
                table.push(fin_eval(&ctx2, body, base_size, &e2)?);
            }
            Ok(FinVal::Fun(table))
        }
        Term::App(f, u) => {
            let dom = match infer(ctx, f).map_err(type_err)? {
                Ty::Arr(dom, _) => *dom,
                ty => return Err(type_err(format!("applied non-function of type {ty}"))),
            };
            let fv = fin_eval(ctx, f, base_size, env)?;
            let uv = fin_eval(ctx, u, base_size, env)?;
            match fv {
                FinVal::Fun(table) => {
                    let i = val_index(&dom, &uv, base_size)?;
                    Ok(table[i].clone())
                }
                _ => Err(type_err("applied a non-function value")),
            }
        }
        Term::Unit => Ok(FinVal::Unit),
        Term::Pair(a, b) => Ok(FinVal::Pair(
            Box::new(fin_eval(ctx, a, base_size, env)?),
            Box::new(fin_eval(ctx, b, base_size, env)?),
        )),
        Term::Prj(p, t) => match fin_eval(ctx, t, base_size, env)? {
            FinVal::Pair(a, b) => Ok(match p {
                Proj::Fst => *a,
                Proj::Snd => *b,
            }),
            _ => Err(type_err("projected a non-pair value")),
        },
        Term::Inj(Side::Inl, _, t) => {
            Ok(FinVal::Inl(Box::new(fin_eval(ctx, t, base_size, env)?)))
        }
        Term::Inj(Side::Inr, _, t) => {
            Ok(FinVal::Inr(Box::new(fin_eval(ctx, t, base_size, env)?)))
        }
        Term::Case(scrut, l, r) => {
            let (a1, a2) = match infer(ctx, scrut).map_err(type_err)? {
                Ty::Sum(a1, a2) => (*a1, *a2),
                ty => return Err(type_err(format!("case on non-sum of type {ty}"))),
            };
            match fin_eval(ctx, scrut, base_size, env)? {
                FinVal::Inl(v) => {
                    let mut e2 = env.to_vec();
                    e2.push(*v);
                    fin_eval(&ctx.snoc(a1), l, base_size, &e2)
                }
                FinVal::Inr(v) => {
                    let mut e2 = env.to_vec();
                    e2.push(*v);
                    fin_eval(&ctx.snoc(a2), r, base_size, &e2)
                }
                _ => Err(type_err("case on a non-injection value")),
            }
        }
        Term::Abort(_, _) => {
            // The scrutinee has the empty type, so no environment can reach
            // this point; environments are only built by enum_envs.
            Err(type_err("abort evaluated under an impossible environment"))
        }
    }
}

/// Extensional equivalence in the finite model: equal values under every
/// enumerable environment.
pub fn oracle_equiv(
    ctx: &Ctx<Ty>,
    t1: &Term,
    t2: &Term,
    base_size: usize,
) -> Result<Verdict, OracleError> {
    let ty1 = infer(ctx, t1).map_err(type_err)?;
    let ty2 = infer(ctx, t2).map_err(type_err)?;
    if ty1 != ty2 {
        return Err(type_err(format!("compared terms of types {ty1} and {ty2}")));
    }
    for env in enum_envs(ctx, base_size)? {
        if fin_eval(ctx, t1, base_size, &env)? != fin_eval(ctx, t2, base_size, &env)? {
            return Ok(Verdict::NotEqual);
        }
    }
    Ok(Verdict::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stlc::cover::FreeCover;
    use crate::stlc::erase::erase_nf;
    use crate::stlc::sem::norm;

    fn o() -> Ty {
        Ty::atom()
    }

    #[test]
    fn cardinalities() {
        assert_eq!(card(&o(), 2).unwrap(), 2);
        assert_eq!(card(&Ty::Zero, 2).unwrap(), 0);
        assert_eq!(card(&Ty::sum(o(), o()), 2).unwrap(), 4);
        assert_eq!(card(&Ty::arr(Ty::sum(o(), o()), o()), 2).unwrap(), 16);
        assert_eq!(card(&Ty::arr(Ty::Zero, Ty::Zero), 2).unwrap(), 1);
        assert!(card(&Ty::arr(Ty::arr(o(), Ty::arr(o(), o())), o()), 4).is_err());
    }

    #[test]
    fn env_counts() {
        assert_eq!(enum_envs(&Ctx::empty(), 2).unwrap().len(), 1);
        assert_eq!(enum_envs(&Ctx::from_entries(vec![o()]), 2).unwrap().len(), 2);
        assert_eq!(
            enum_envs(&Ctx::from_entries(vec![Ty::sum(o(), o()), Ty::One]), 2)
                .unwrap()
                .len(),
            4
        );
    }

    #[test]
    fn codiagonal_table() {
        let t = Term::abs(
            Ty::sum(o(), o()),
            Term::case(Term::var(0), Term::var(0), Term::var(0)),
        );
        let v = fin_eval(&Ctx::empty(), &t, 2, &[]).unwrap();
        let expected = FinVal::Fun(vec![
            FinVal::Atom(0),
            FinVal::Atom(1),
            FinVal::Atom(0),
            FinVal::Atom(1),
        ]);
        assert_eq!(v, expected);
    }

    #[test]
    fn eta_holds_in_the_model() {
        let ctx = Ctx::from_entries(vec![Ty::arr(o(), o())]);
        let t1 = Term::var(0);
        let t2 = Term::abs(o(), Term::app(Term::var(1), Term::var(0)));
        assert_eq!(oracle_equiv(&ctx, &t1, &t2, 2).unwrap(), Verdict::Equal);
    }

    #[test]
    fn distinct_injections_differ() {
        let t1 = Term::inj(Side::Inl, Ty::One, Term::Unit);
        let t2 = Term::inj(Side::Inr, Ty::One, Term::Unit);
        assert_eq!(
            oracle_equiv(&Ctx::empty(), &t1, &t2, 2).unwrap(),
            Verdict::NotEqual
        );
    }

    #[test]
    fn norm_preserves_meaning_on_generated_terms() {
        use crate::oracle::gen::gen_term_stlc;
        use crate::stlc::validate::check_nf;
        let mut checked = 0;
        for seed in 0..100 {
            let (ctx, t) = gen_term_stlc(seed, 12, 2).unwrap();
            let ty = infer(&ctx, &t).unwrap();
            let nf = norm::<FreeCover>(&ctx, &t)
                .unwrap_or_else(|e| panic!("seed {seed}: {e} on {t:?}"));
            check_nf(&ctx, &ty, &nf).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            let back = erase_nf(&ctx, &ty, &nf).unwrap();
            match oracle_equiv(&ctx, &t, &back, 2) {
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
    fn norm_preserves_meaning() {
        let ctx = Ctx::from_entries(vec![Ty::arr(o(), Ty::sum(o(), o())), o()]);
        let t = Term::case(
            Term::app(Term::var(1), Term::var(0)),
            Term::var(0),
            Term::var(1),
        );
        let ty = infer(&ctx, &t).unwrap();
        let nf = norm::<FreeCover>(&ctx, &t).unwrap();
        let back = erase_nf(&ctx, &ty, &nf).unwrap();
        assert_eq!(oracle_equiv(&ctx, &t, &back, 2).unwrap(), Verdict::Equal);
    }
}
