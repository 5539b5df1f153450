//! Concrete syntax for the three calculi: lexer, parser, elaborator and
//! pretty-printer. Surface terms carry names; elaboration resolves them to
//! de Bruijn indices and hands off to the calculus's type checker.

pub mod elab;
pub mod lex;
pub mod parse;
pub mod pretty;

use crate::cbpv::{TyN, TyP};
use crate::stlc::Ty;

pub use elab::{ElabError, Elaborated};
pub use parse::{parse, ParseError};

/// A type annotation as written; which variants can appear depends on the
/// calculus the file was parsed for.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SurfaceType {
    Stlc(Ty),
    Pos(TyP),
    Neg(TyN),
    /// A positive atom hypothesis in a polarized declaration.
    HypAtom(String),
}

/// Patterns for polarized clause binders.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Pattern {
    Var(String),
    Unit,
    Pair(Box<Pattern>, Box<Pattern>),
    Inl(Box<Pattern>),
    Inr(Box<Pattern>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Clause {
    pub pat: Pattern,
    pub body: SurfaceTerm,
}

/// Named-variable terms covering all three calculi; the parser only
/// produces the constructs of the requested calculus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SurfaceTerm {
    Var(String),
    Abs(String, SurfaceType, Box<SurfaceTerm>),
    App(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Unit,
    Pair(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Fst(Box<SurfaceTerm>),
    Snd(Box<SurfaceTerm>),
    /// Annotation is the other summand.
    Inl(SurfaceType, Box<SurfaceTerm>),
    Inr(SurfaceType, Box<SurfaceTerm>),
    Case(
        Box<SurfaceTerm>,
        String,
        Box<SurfaceTerm>,
        String,
        Box<SurfaceTerm>,
    ),
    /// Annotation is the result type.
    Abort(SurfaceType, Box<SurfaceTerm>),
    Thunk(Box<SurfaceTerm>),
    Force(Box<SurfaceTerm>),
    Ret(Box<SurfaceTerm>),
    /// `let x : P <- t in u`.
    Let(String, SurfaceType, Box<SurfaceTerm>, Box<SurfaceTerm>),
    /// `split v as (x, y) in t`.
    Split(Box<SurfaceTerm>, String, String, Box<SurfaceTerm>),
    PairN(Box<SurfaceTerm>, Box<SurfaceTerm>),
    UnitN,
    /// `\[P]{ clauses }` or `\[P -> N]{ clauses }`; the codomain may be
    /// omitted when the clause set has at least one body to infer it from.
    AbsPat(TyP, Option<TyN>, Vec<Clause>),
    /// `bind t { clauses }` or `bind[N] t { clauses }`.
    BindPat(Option<TyN>, Box<SurfaceTerm>, Vec<Clause>),
}

/// A parsed source file: declarations building the context left to right,
/// then the term to process.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SourceFile {
    pub decls: Vec<(String, SurfaceType)>,
    pub term: SurfaceTerm,
}

#[cfg(test)]
mod tests {
    use super::elab::{elaborate_cbpv, elaborate_pol, elaborate_stlc, ElabError};
    use super::parse::parse;
    use super::pretty::{pretty_file_cbpv, pretty_file_pol, pretty_file_stlc, pretty_stlc};
    use crate::oracle::fincbpv::gen_term_cbpv;
    use crate::oracle::finpol::gen_term_pol;
    use crate::oracle::gen::gen_term_stlc;
    use crate::oracle::Calculus;
    use crate::stlc::{sem, Term, Ty};
    use crate::stlc::cover::FreeCover;
    use crate::stlc::erase::erase_nf;
    use crate::kernel::Ctx;

    #[test]
    fn parses_case_abstraction() {
        let file = parse(
            "term \\x:o+o. case x of { inl y -> y ; inr z -> z }",
            Calculus::Stlc,
        )
        .unwrap();
        let (ctx, t) = elaborate_stlc(&file).unwrap();
        assert_eq!(ctx.len(), 0);
        let dom = Ty::sum(Ty::atom(), Ty::atom());
        let expected = Term::abs(dom, Term::case(Term::var(0), Term::var(0), Term::var(0)));
        assert_eq!(t, expected);
    }

    #[test]
    fn parses_unit() {
        let file = parse("term ()", Calculus::Stlc).unwrap();
        let (_, t) = elaborate_stlc(&file).unwrap();
        assert_eq!(t, Term::Unit);
    }

    #[test]
    fn unbound_variable_is_reported() {
        let file = parse("term \\x:o. y", Calculus::Stlc).unwrap();
        assert_eq!(
            elaborate_stlc(&file),
            Err(ElabError::UnboundVariable("y".to_string()))
        );
    }

    #[test]
    fn parse_error_carries_location() {
        let err = parse("term \\x:o.\n  )", Calculus::Stlc).unwrap_err();
        assert_eq!((err.line, err.col), (2, 3));
    }

    #[test]
    fn comments_and_declarations() {
        let text = "-- a declaration\nvar f : o -> o ; -- the function\nterm \\x:o. f x";
        let file = parse(text, Calculus::Stlc).unwrap();
        let (ctx, t) = elaborate_stlc(&file).unwrap();
        assert_eq!(ctx.len(), 1);
        assert_eq!(
            t,
            Term::abs(Ty::atom(), Term::app(Term::var(1), Term::var(0)))
        );
    }

    #[test]
    fn codiagonal_normal_form_prints_to_golden() {
        let dom = Ty::sum(Ty::atom(), Ty::atom());
        let t = Term::abs(
            dom.clone(),
            Term::case(Term::var(0), Term::var(0), Term::var(0)),
        );
        let ctx = Ctx::empty();
        let nf = sem::norm::<FreeCover>(&ctx, &t).unwrap();
        let back = erase_nf(&ctx, &Ty::arr(dom, Ty::atom()), &nf).unwrap();
        assert_eq!(
            pretty_stlc(&[], &back),
            "\\x0:o+o. case x0 of { inl x1 -> x1 ; inr x2 -> x2 }"
        );
    }

    #[test]
    fn polarized_clauses_compile_to_branches() {
        let text =
            "term \\[a+ p + a+ p]{ inl y -> ret y | inr z -> ret z }";
        let file = parse(text, Calculus::Polarized).unwrap();
        let (_, t) = elaborate_pol(&file).unwrap();
        use crate::polarized::{Add, TmZ, TyN, TyP, ValZ};
        let o = TyP::atom("p");
        let expected = TmZ::abs(
            TyP::sum(o.clone(), o.clone()),
            TyN::comp(o),
            Add::branch2(
                Add::hyp_p("p", Add::Leaf(TmZ::ret(ValZ::var(0)))),
                Add::hyp_p("p", Add::Leaf(TmZ::ret(ValZ::var(0)))),
            ),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn variable_pattern_at_product_is_rejected() {
        let text = "term \\[a+ p * a+ p]{ w -> ret w }";
        let file = parse(text, Calculus::Polarized).unwrap();
        assert_eq!(
            elaborate_pol(&file),
            Err(ElabError::NonAtomicVarPattern("w".to_string()))
        );
    }

    #[test]
    fn missing_branch_is_non_exhaustive() {
        let text = "term \\[a+ p + a+ p]{ inl y -> ret y }";
        let file = parse(text, Calculus::Polarized).unwrap();
        assert_eq!(elaborate_pol(&file), Err(ElabError::NonExhaustivePatterns));
    }

    #[test]
    fn duplicate_thunk_clauses_overlap() {
        let text = "term \\[U Top]{ x -> force x | y -> force y }";
        let file = parse(text, Calculus::Polarized).unwrap();
        assert_eq!(elaborate_pol(&file), Err(ElabError::OverlappingPatterns));
    }

    #[test]
    fn round_trip_stlc() {
        for seed in 0..200 {
            let (ctx, t) = gen_term_stlc(seed, 12, 2).unwrap();
            let text = pretty_file_stlc(&ctx, &t);
            let file = parse(&text, Calculus::Stlc)
                .unwrap_or_else(|e| panic!("seed {seed}: {e}\n{text}"));
            let (ctx2, t2) = elaborate_stlc(&file)
                .unwrap_or_else(|e| panic!("seed {seed}: {e}\n{text}"));
            assert_eq!(ctx2.entries(), ctx.entries(), "seed {seed}\n{text}");
            assert_eq!(t2, t, "seed {seed}\n{text}");
        }
    }

    #[test]
    fn round_trip_cbpv() {
        for seed in 0..200 {
            let (ctx, t) = gen_term_cbpv(seed, 12, 2).unwrap();
            let text = pretty_file_cbpv(&ctx, &t);
            let file = parse(&text, Calculus::Cbpv)
                .unwrap_or_else(|e| panic!("seed {seed}: {e}\n{text}"));
            let (ctx2, t2) = elaborate_cbpv(&file)
                .unwrap_or_else(|e| panic!("seed {seed}: {e}\n{text}"));
            assert_eq!(ctx2.entries(), ctx.entries(), "seed {seed}\n{text}");
            assert_eq!(t2, t, "seed {seed}\n{text}");
        }
    }

    #[test]
    fn round_trip_polarized() {
        for seed in 0..200 {
            let (ctx, t) = gen_term_pol(seed, 12, 2).unwrap();
            let text = pretty_file_pol(&ctx, &t);
            let file = parse(&text, Calculus::Polarized)
                .unwrap_or_else(|e| panic!("seed {seed}: {e}\n{text}"));
            let (ctx2, t2) = elaborate_pol(&file)
                .unwrap_or_else(|e| panic!("seed {seed}: {e}\n{text}"));
            assert_eq!(ctx2.entries(), ctx.entries(), "seed {seed}\n{text}");
            assert_eq!(t2, t, "seed {seed}\n{text}");
        }
    }

    #[test]
    fn fuzzing_never_panics() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..2000 {
            let len = rng.gen_range(0..256);
            let bytes: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
            let text = String::from_utf8_lossy(&bytes).to_string();
            for calculus in [Calculus::Stlc, Calculus::Cbpv, Calculus::Polarized] {
                let _ = parse(&text, calculus).map(|f| super::elab::elaborate(&f, calculus));
            }
        }
    }
}
