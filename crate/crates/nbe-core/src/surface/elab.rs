//! Elaboration: names to de Bruijn indices, pattern clauses to `Add`
//! trees, then a type-check through the calculus's inference.

use std::collections::VecDeque;

use thiserror::Error;

use crate::cbpv::{self, TyN, TyP};
use crate::kernel::{Ctx, Idx};
use crate::oracle::Calculus;
use crate::polarized::infer::infer_tmz;
use crate::polarized::{Add, Hyp, TmZ, ValZ};
use crate::stlc::{self, Proj, Side, Ty};

use super::{Clause, Pattern, SourceFile, SurfaceTerm, SurfaceType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElabError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("duplicate declaration of `{0}`")]
    DuplicateDeclaration(String),
    #[error("type error: {0}")]
    TypeMismatch(String),
    #[error("non-exhaustive patterns")]
    NonExhaustivePatterns,
    #[error("overlapping patterns")]
    OverlappingPatterns,
    #[error("variable pattern `{0}` at a non-atomic type")]
    NonAtomicVarPattern(String),
    #[error("construct not available in this calculus: {0}")]
    UnsupportedConstruct(String),
    #[error("cannot infer a result type for a binder without clause bodies; annotate it")]
    AnnotationRequired,
}

/// An elaborated file, paired with the context its declarations build.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Elaborated {
    Stlc(Ctx<Ty>, stlc::Term),
    Cbpv(Ctx<TyP>, cbpv::Tm),
    Polarized(Ctx<Hyp>, TmZ),
}

fn mismatch<T>(msg: impl Into<String>) -> Result<T, ElabError> {
    Err(ElabError::TypeMismatch(msg.into()))
}

fn unsupported<T>(what: &str) -> Result<T, ElabError> {
    Err(ElabError::UnsupportedConstruct(what.to_string()))
}

fn lookup(scope: &[String], name: &str) -> Result<Idx, ElabError> {
    scope
        .iter()
        .rev()
        .position(|n| n == name)
        .map(Idx)
        .ok_or_else(|| ElabError::UnboundVariable(name.to_string()))
}

fn as_stlc(ty: &SurfaceType) -> Result<Ty, ElabError> {
    match ty {
        SurfaceType::Stlc(t) => Ok(t.clone()),
        _ => mismatch("expected a simple type annotation"),
    }
}

fn as_pos(ty: &SurfaceType) -> Result<TyP, ElabError> {
    match ty {
        SurfaceType::Pos(t) => Ok(t.clone()),
        _ => mismatch("expected a positive type annotation"),
    }
}

fn as_neg(ty: &SurfaceType) -> Result<TyN, ElabError> {
    match ty {
        SurfaceType::Neg(t) => Ok(t.clone()),
        _ => mismatch("expected a negative type annotation"),
    }
}

fn check_unique(decls: &[(String, SurfaceType)]) -> Result<(), ElabError> {
    for (i, (name, _)) in decls.iter().enumerate() {
        if decls[..i].iter().any(|(n, _)| n == name) {
            return Err(ElabError::DuplicateDeclaration(name.clone()));
        }
    }
    Ok(())
}

// STLC.

fn go_stlc(scope: &mut Vec<String>, t: &SurfaceTerm) -> Result<stlc::Term, ElabError> {
    use stlc::Term;
    match t {
        SurfaceTerm::Var(x) => Ok(Term::Var(lookup(scope, x)?)),
        SurfaceTerm::Abs(x, ty, b) => {
            let dom = as_stlc(ty)?;
            scope.push(x.clone());
            let body = go_stlc(scope, b)?;
            scope.pop();
            Ok(Term::abs(dom, body))
        }
        SurfaceTerm::App(f, u) => Ok(Term::app(go_stlc(scope, f)?, go_stlc(scope, u)?)),
        SurfaceTerm::Unit => Ok(Term::Unit),
        SurfaceTerm::Pair(a, b) => Ok(Term::pair(go_stlc(scope, a)?, go_stlc(scope, b)?)),
        SurfaceTerm::Fst(t) => Ok(Term::prj(Proj::Fst, go_stlc(scope, t)?)),
        SurfaceTerm::Snd(t) => Ok(Term::prj(Proj::Snd, go_stlc(scope, t)?)),
        SurfaceTerm::Inl(ty, t) => Ok(Term::inj(Side::Inl, as_stlc(ty)?, go_stlc(scope, t)?)),
        SurfaceTerm::Inr(ty, t) => Ok(Term::inj(Side::Inr, as_stlc(ty)?, go_stlc(scope, t)?)),
        SurfaceTerm::Case(s, x, l, y, r) => {
            let scrut = go_stlc(scope, s)?;
            scope.push(x.clone());
            let left = go_stlc(scope, l)?;
            scope.pop();
            scope.push(y.clone());
            let right = go_stlc(scope, r)?;
            scope.pop();
            Ok(Term::case(scrut, left, right))
        }
        SurfaceTerm::Abort(ty, t) => Ok(Term::abort(as_stlc(ty)?, go_stlc(scope, t)?)),
        _ => unsupported("this form is not simply-typed syntax"),
    }
}

pub fn elaborate_stlc(file: &SourceFile) -> Result<(Ctx<Ty>, stlc::Term), ElabError> {
    check_unique(&file.decls)?;
    let mut scope = Vec::new();
    let mut entries = Vec::new();
    for (name, ty) in &file.decls {
        scope.push(name.clone());
        entries.push(as_stlc(ty)?);
    }
    let ctx = Ctx::from_entries(entries);
    let t = go_stlc(&mut scope, &file.term)?;
    stlc::infer::infer(&ctx, &t).map_err(|e| ElabError::TypeMismatch(e.to_string()))?;
    Ok((ctx, t))
}

// CBPV: values and computations are separate syntactic classes.

fn val_cbpv(scope: &mut Vec<String>, t: &SurfaceTerm) -> Result<cbpv::Val, ElabError> {
    use cbpv::Val;
    match t {
        SurfaceTerm::Var(x) => Ok(Val::Var(lookup(scope, x)?)),
        SurfaceTerm::Unit => Ok(Val::Unit),
        SurfaceTerm::Pair(a, b) => Ok(Val::pair(val_cbpv(scope, a)?, val_cbpv(scope, b)?)),
        SurfaceTerm::Inl(ty, v) => Ok(Val::inj(Side::Inl, as_pos(ty)?, val_cbpv(scope, v)?)),
        SurfaceTerm::Inr(ty, v) => Ok(Val::inj(Side::Inr, as_pos(ty)?, val_cbpv(scope, v)?)),
        SurfaceTerm::Thunk(t) => Ok(Val::thunk(tm_cbpv(scope, t)?)),
        _ => mismatch("expected a value in this position"),
    }
}

fn tm_cbpv(scope: &mut Vec<String>, t: &SurfaceTerm) -> Result<cbpv::Tm, ElabError> {
    use cbpv::Tm;
    match t {
        SurfaceTerm::Ret(v) => Ok(Tm::ret(val_cbpv(scope, v)?)),
        SurfaceTerm::Abs(x, ty, b) => {
            let dom = as_pos(ty)?;
            scope.push(x.clone());
            let body = tm_cbpv(scope, b)?;
            scope.pop();
            Ok(Tm::abs(dom, body))
        }
        SurfaceTerm::PairN(a, b) => Ok(Tm::pair_n(tm_cbpv(scope, a)?, tm_cbpv(scope, b)?)),
        SurfaceTerm::UnitN => Ok(Tm::UnitN),
        SurfaceTerm::Force(v) => Ok(Tm::force(val_cbpv(scope, v)?)),
        SurfaceTerm::App(f, v) => Ok(Tm::app(tm_cbpv(scope, f)?, val_cbpv(scope, v)?)),
        SurfaceTerm::Fst(t) => Ok(Tm::prj(Proj::Fst, tm_cbpv(scope, t)?)),
        SurfaceTerm::Snd(t) => Ok(Tm::prj(Proj::Snd, tm_cbpv(scope, t)?)),
        SurfaceTerm::Let(x, ty, t, u) => {
            let ann = as_pos(ty)?;
            let scrut = tm_cbpv(scope, t)?;
            scope.push(x.clone());
            let body = tm_cbpv(scope, u)?;
            scope.pop();
            Ok(Tm::bind(ann, scrut, body))
        }
        SurfaceTerm::Split(v, x, y, t) => {
            let scrut = val_cbpv(scope, v)?;
            scope.push(x.clone());
            scope.push(y.clone());
            let body = tm_cbpv(scope, t)?;
            scope.pop();
            scope.pop();
            Ok(Tm::split(scrut, body))
        }
        SurfaceTerm::Case(s, x, l, y, r) => {
            let scrut = val_cbpv(scope, s)?;
            scope.push(x.clone());
            let left = tm_cbpv(scope, l)?;
            scope.pop();
            scope.push(y.clone());
            let right = tm_cbpv(scope, r)?;
            scope.pop();
            Ok(Tm::case(scrut, left, right))
        }
        SurfaceTerm::Abort(ty, v) => Ok(Tm::abort(as_neg(ty)?, val_cbpv(scope, v)?)),
        SurfaceTerm::Var(x) => {
            // Variables are values; computations use them through `force`.
            lookup(scope, x)?;
            mismatch(format!("variable `{x}` used as a computation"))
        }
        _ => mismatch("expected a computation in this position"),
    }
}

pub fn elaborate_cbpv(file: &SourceFile) -> Result<(Ctx<TyP>, cbpv::Tm), ElabError> {
    check_unique(&file.decls)?;
    let mut scope = Vec::new();
    let mut entries = Vec::new();
    for (name, ty) in &file.decls {
        scope.push(name.clone());
        entries.push(as_pos(ty)?);
    }
    let ctx = Ctx::from_entries(entries);
    let t = tm_cbpv(&mut scope, &file.term)?;
    cbpv::infer::infer_tm(&ctx, &t).map_err(|e| ElabError::TypeMismatch(e.to_string()))?;
    Ok((ctx, t))
}

// Polarized: pattern clauses compile to Add trees. Each row carries the
// patterns still to be consumed (aligned with a pending stack of positive
// types) and the names it has bound so far along its branch.

struct Row {
    pats: VecDeque<Pattern>,
    binds: Vec<String>,
    rhs: SurfaceTerm,
}

fn compile(
    scope: &[String],
    ctx: &Ctx<Hyp>,
    pending: &[TyP],
    mut rows: Vec<Row>,
) -> Result<Add<TmZ>, ElabError> {
    let Some((p, rest)) = pending.split_first() else {
        return match rows.len() {
            0 => Err(ElabError::NonExhaustivePatterns),
            1 => {
                let row = rows.pop().unwrap();
                let mut scope2 = scope.to_vec();
                scope2.extend(row.binds);
                Ok(Add::Leaf(tmz(&scope2, ctx, &row.rhs)?))
            }
            _ => Err(ElabError::OverlappingPatterns),
        };
    };
    match p {
        TyP::Atom(o) => {
            for row in &mut rows {
                match row.pats.pop_front() {
                    Some(Pattern::Var(name)) => row.binds.push(name),
                    Some(_) => return mismatch(format!("non-variable pattern at atom a+ {o}")),
                    None => return mismatch("pattern is too shallow for its type"),
                }
            }
            let ctx2 = ctx.snoc(Hyp::AtomP(o.clone()));
            Ok(Add::hyp_p(o, compile(scope, &ctx2, rest, rows)?))
        }
        TyP::Thunk(n) => {
            for row in &mut rows {
                match row.pats.pop_front() {
                    Some(Pattern::Var(name)) => row.binds.push(name),
                    Some(_) => return mismatch("non-variable pattern at a thunk type"),
                    None => return mismatch("pattern is too shallow for its type"),
                }
            }
            let ctx2 = ctx.snoc(Hyp::Neg((**n).clone()));
            Ok(Add::hyp_n((**n).clone(), compile(scope, &ctx2, rest, rows)?))
        }
        TyP::Zero => match rows.first_mut().and_then(|r| r.pats.pop_front()) {
            None if rows.is_empty() => Ok(Add::Branch0),
            None => mismatch("pattern is too shallow for its type"),
            Some(Pattern::Var(name)) => Err(ElabError::NonAtomicVarPattern(name)),
            Some(_) => mismatch("no pattern matches the empty type 0"),
        },
        TyP::One => {
            for row in &mut rows {
                match row.pats.pop_front() {
                    Some(Pattern::Unit) => {}
                    Some(Pattern::Var(name)) => {
                        return Err(ElabError::NonAtomicVarPattern(name))
                    }
                    Some(_) => return mismatch("expected a `()` pattern at type 1"),
                    None => return mismatch("pattern is too shallow for its type"),
                }
            }
            Ok(Add::split0(compile(scope, ctx, rest, rows)?))
        }
        TyP::Sum(p1, p2) => {
            let mut lefts = Vec::new();
            let mut rights = Vec::new();
            for mut row in rows {
                match row.pats.pop_front() {
                    Some(Pattern::Inl(q)) => {
                        row.pats.push_front(*q);
                        lefts.push(row);
                    }
                    Some(Pattern::Inr(q)) => {
                        row.pats.push_front(*q);
                        rights.push(row);
                    }
                    Some(Pattern::Var(name)) => {
                        return Err(ElabError::NonAtomicVarPattern(name))
                    }
                    Some(_) => return mismatch("expected an injection pattern at a sum type"),
                    None => return mismatch("pattern is too shallow for its type"),
                }
            }
            let mut left_pending = vec![(**p1).clone()];
            left_pending.extend_from_slice(rest);
            let mut right_pending = vec![(**p2).clone()];
            right_pending.extend_from_slice(rest);
            Ok(Add::branch2(
                compile(scope, ctx, &left_pending, lefts)?,
                compile(scope, ctx, &right_pending, rights)?,
            ))
        }
        TyP::Prod(p1, p2) => {
            for row in &mut rows {
                match row.pats.pop_front() {
                    Some(Pattern::Pair(q1, q2)) => {
                        row.pats.push_front(*q2);
                        row.pats.push_front(*q1);
                    }
                    Some(Pattern::Var(name)) => {
                        return Err(ElabError::NonAtomicVarPattern(name))
                    }
                    Some(_) => return mismatch("expected a pair pattern at a product type"),
                    None => return mismatch("pattern is too shallow for its type"),
                }
            }
            let mut inner_pending = vec![(**p1).clone(), (**p2).clone()];
            inner_pending.extend_from_slice(rest);
            Ok(Add::split2(compile(scope, ctx, &inner_pending, rows)?))
        }
    }
}

/// The type of the leftmost leaf of a binder body, inferred in the
/// hypothesis-extended context; `None` when the body has no leaves.
fn first_leaf_ty(ctx: &Ctx<Hyp>, t: &Add<TmZ>) -> Option<Result<TyN, ElabError>> {
    match t {
        Add::Leaf(tm) => Some(
            infer_tmz(ctx, tm).map_err(|e| ElabError::TypeMismatch(e.to_string())),
        ),
        Add::HypP(o, rest) => first_leaf_ty(&ctx.snoc(Hyp::AtomP(o.clone())), rest),
        Add::HypN(n, rest) => first_leaf_ty(&ctx.snoc(Hyp::Neg(n.clone())), rest),
        Add::Branch0 => None,
        Add::Branch2(l, r) => first_leaf_ty(ctx, l).or_else(|| first_leaf_ty(ctx, r)),
        Add::Split0(rest) => first_leaf_ty(ctx, rest),
        Add::Split2(inner) => first_leaf_ty(ctx, inner),
    }
}

fn rows_of(clauses: &[Clause]) -> Vec<Row> {
    clauses
        .iter()
        .map(|c| Row {
            pats: VecDeque::from([c.pat.clone()]),
            binds: Vec::new(),
            rhs: c.body.clone(),
        })
        .collect()
}

fn valz(scope: &[String], ctx: &Ctx<Hyp>, t: &SurfaceTerm) -> Result<ValZ, ElabError> {
    match t {
        SurfaceTerm::Var(x) => Ok(ValZ::Var(lookup(scope, x)?)),
        SurfaceTerm::Unit => Ok(ValZ::Unit),
        SurfaceTerm::Pair(a, b) => Ok(ValZ::pair(valz(scope, ctx, a)?, valz(scope, ctx, b)?)),
        SurfaceTerm::Inl(ty, v) => Ok(ValZ::inj(Side::Inl, as_pos(ty)?, valz(scope, ctx, v)?)),
        SurfaceTerm::Inr(ty, v) => Ok(ValZ::inj(Side::Inr, as_pos(ty)?, valz(scope, ctx, v)?)),
        SurfaceTerm::Thunk(t) => Ok(ValZ::thunk(tmz(scope, ctx, t)?)),
        _ => mismatch("expected a value in this position"),
    }
}

fn tmz(scope: &[String], ctx: &Ctx<Hyp>, t: &SurfaceTerm) -> Result<TmZ, ElabError> {
    match t {
        SurfaceTerm::Var(x) => Ok(TmZ::VarN(lookup(scope, x)?)),
        SurfaceTerm::Ret(v) => Ok(TmZ::ret(valz(scope, ctx, v)?)),
        SurfaceTerm::PairN(a, b) => Ok(TmZ::pair_n(tmz(scope, ctx, a)?, tmz(scope, ctx, b)?)),
        SurfaceTerm::UnitN => Ok(TmZ::UnitN),
        SurfaceTerm::Force(v) => Ok(TmZ::force(valz(scope, ctx, v)?)),
        SurfaceTerm::App(f, v) => Ok(TmZ::app(tmz(scope, ctx, f)?, valz(scope, ctx, v)?)),
        SurfaceTerm::Fst(t) => Ok(TmZ::prj(Proj::Fst, tmz(scope, ctx, t)?)),
        SurfaceTerm::Snd(t) => Ok(TmZ::prj(Proj::Snd, tmz(scope, ctx, t)?)),
        SurfaceTerm::AbsPat(dom, cod, clauses) => {
            let body = compile(scope, ctx, &[dom.clone()], rows_of(clauses))?;
            let cod = match cod {
                Some(n) => n.clone(),
                None => match first_leaf_ty(ctx, &body) {
                    Some(ty) => ty?,
                    None => return Err(ElabError::AnnotationRequired),
                },
            };
            Ok(TmZ::abs(dom.clone(), cod, body))
        }
        SurfaceTerm::BindPat(ann, scrut, clauses) => {
            let scrut = tmz(scope, ctx, scrut)?;
            let p = match infer_tmz(ctx, &scrut) {
                Ok(TyN::Comp(p)) => *p,
                Ok(ty) => return mismatch(format!("bind scrutinee has type {ty}, expected F")),
                Err(e) => return Err(ElabError::TypeMismatch(e.to_string())),
            };
            let body = compile(scope, ctx, &[p.clone()], rows_of(clauses))?;
            let result = match ann {
                Some(n) => n.clone(),
                None => match first_leaf_ty(ctx, &body) {
                    Some(ty) => ty?,
                    None => return Err(ElabError::AnnotationRequired),
                },
            };
            Ok(TmZ::bind(p, result, scrut, body))
        }
        _ => mismatch("expected a computation in this position"),
    }
}

pub fn elaborate_pol(file: &SourceFile) -> Result<(Ctx<Hyp>, TmZ), ElabError> {
    check_unique(&file.decls)?;
    let mut scope = Vec::new();
    let mut entries = Vec::new();
    for (name, ty) in &file.decls {
        scope.push(name.clone());
        entries.push(match ty {
            SurfaceType::HypAtom(o) => Hyp::AtomP(o.clone()),
            SurfaceType::Neg(n) => Hyp::Neg(n.clone()),
            _ => return mismatch("polarized declarations are atoms or negative types"),
        });
    }
    let ctx = Ctx::from_entries(entries);
    let t = tmz(&scope, &ctx, &file.term)?;
    infer_tmz(&ctx, &t).map_err(|e| ElabError::TypeMismatch(e.to_string()))?;
    Ok((ctx, t))
}

/// Elaborate a parsed file for the given calculus.
pub fn elaborate(file: &SourceFile, calculus: Calculus) -> Result<Elaborated, ElabError> {
    Ok(match calculus {
        Calculus::Stlc => {
            let (ctx, t) = elaborate_stlc(file)?;
            Elaborated::Stlc(ctx, t)
        }
        Calculus::Cbpv => {
            let (ctx, t) = elaborate_cbpv(file)?;
            Elaborated::Cbpv(ctx, t)
        }
        Calculus::Polarized => {
            let (ctx, t) = elaborate_pol(file)?;
            Elaborated::Polarized(ctx, t)
        }
    })
}
