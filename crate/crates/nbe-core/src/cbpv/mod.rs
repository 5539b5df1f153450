//! Pure call-by-push-value: polarized types, values and computations,
//! normal forms with an inductive cover monad at computation positions, and
//! normalization by evaluation.

pub mod erase;
pub mod infer;
pub mod sem;
pub mod validate;

use std::fmt;

use crate::kernel::{Idx, Ope, Renameable};
use crate::stlc::{Proj, Side};

/// Positive (value) types. Contexts contain only these.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TyP {
    Atom(String),
    Zero,
    One,
    Sum(Box<TyP>, Box<TyP>),
    Prod(Box<TyP>, Box<TyP>),
    Thunk(Box<TyN>),
}

/// Negative (computation) types.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TyN {
    Atom(String),
    Top,
    With(Box<TyN>, Box<TyN>),
    Arr(Box<TyP>, Box<TyN>),
    Comp(Box<TyP>),
}

impl TyP {
    pub fn atom(name: &str) -> TyP {
        TyP::Atom(name.to_string())
    }

    pub fn sum(a: TyP, b: TyP) -> TyP {
        TyP::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: TyP, b: TyP) -> TyP {
        TyP::Prod(Box::new(a), Box::new(b))
    }

    pub fn thunk(n: TyN) -> TyP {
        TyP::Thunk(Box::new(n))
    }
}

impl TyN {
    pub fn atom(name: &str) -> TyN {
        TyN::Atom(name.to_string())
    }

    pub fn with(a: TyN, b: TyN) -> TyN {
        TyN::With(Box::new(a), Box::new(b))
    }

    pub fn arr(p: TyP, n: TyN) -> TyN {
        TyN::Arr(Box::new(p), Box::new(n))
    }

    pub fn comp(p: TyP) -> TyN {
        TyN::Comp(Box::new(p))
    }
}

impl fmt::Display for TyP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Precedence: + loosest, then *, then atoms and prefix U.
        fn go(ty: &TyP, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let (_my_prec, open) = match ty {
                TyP::Sum(_, _) => (0, prec > 0),
                TyP::Prod(_, _) => (1, prec > 1),
                _ => (2, false),
            };
            if open {
                write!(f, "(")?;
            }
            match ty {
                TyP::Atom(name) if name.is_empty() => write!(f, "a+")?,
                TyP::Atom(name) => write!(f, "a+ {name}")?,
                TyP::Zero => write!(f, "0")?,
                TyP::One => write!(f, "1")?,
                TyP::Sum(a, b) => {
                    go(a, 1, f)?;
                    write!(f, " + ")?;
                    go(b, 1, f)?;
                }
                TyP::Prod(a, b) => {
                    go(a, 2, f)?;
                    write!(f, " * ")?;
                    go(b, 2, f)?;
                }
                TyP::Thunk(n) => write!(f, "U ({n})")?,
            }
            if open {
                write!(f, ")")?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

impl fmt::Display for TyN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Precedence: -> loosest (right assoc), then &, then atoms and F.
        fn go(ty: &TyN, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let (my_prec, open) = match ty {
                TyN::Arr(_, _) => (0, prec > 0),
                TyN::With(_, _) => (1, prec > 1),
                _ => (2, false),
            };
            if open {
                write!(f, "(")?;
            }
            match ty {
                TyN::Atom(name) if name.is_empty() => write!(f, "a-")?,
                TyN::Atom(name) => write!(f, "a- {name}")?,
                TyN::Top => write!(f, "Top")?,
                TyN::With(a, b) => {
                    go(a, 2, f)?;
                    write!(f, " & ")?;
                    go(b, 2, f)?;
                }
                TyN::Arr(p, n) => {
                    write!(f, "{p} -> ")?;
                    go(n, my_prec, f)?;
                }
                TyN::Comp(p) => write!(f, "F ({p})")?,
            }
            if open {
                write!(f, ")")?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

/// Values of positive type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Val {
    Var(Idx),
    Thunk(Box<Tm>),
    Unit,
    Pair(Box<Val>, Box<Val>),
    /// Carries the other summand, as in STLC.
    Inj(Side, TyP, Box<Val>),
}

/// Terms of negative type. Application is restricted to values; `Bind`
/// carries the bound positive type so inference is syntax-directed, and
/// `Abort` its result type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Tm {
    Ret(Box<Val>),
    Abs(TyP, Box<Tm>),
    PairN(Box<Tm>, Box<Tm>),
    UnitN,
    Force(Box<Val>),
    App(Box<Tm>, Box<Val>),
    Prj(Proj, Box<Tm>),
    Bind(TyP, Box<Tm>, Box<Tm>),
    Split(Box<Val>, Box<Tm>),
    Case(Box<Val>, Box<Tm>, Box<Tm>),
    Abort(TyN, Box<Val>),
}

impl Val {
    pub fn var(n: usize) -> Val {
        Val::Var(Idx(n))
    }

    pub fn thunk(t: Tm) -> Val {
        Val::Thunk(Box::new(t))
    }

    pub fn pair(a: Val, b: Val) -> Val {
        Val::Pair(Box::new(a), Box::new(b))
    }

    pub fn inj(s: Side, other: TyP, v: Val) -> Val {
        Val::Inj(s, other, Box::new(v))
    }
}

impl Tm {
    pub fn ret(v: Val) -> Tm {
        Tm::Ret(Box::new(v))
    }

    pub fn abs(dom: TyP, t: Tm) -> Tm {
        Tm::Abs(dom, Box::new(t))
    }

    pub fn pair_n(a: Tm, b: Tm) -> Tm {
        Tm::PairN(Box::new(a), Box::new(b))
    }

    pub fn force(v: Val) -> Tm {
        Tm::Force(Box::new(v))
    }

    pub fn app(t: Tm, v: Val) -> Tm {
        Tm::App(Box::new(t), Box::new(v))
    }

    pub fn prj(p: Proj, t: Tm) -> Tm {
        Tm::Prj(p, Box::new(t))
    }

    pub fn bind(ann: TyP, u: Tm, t: Tm) -> Tm {
        Tm::Bind(ann, Box::new(u), Box::new(t))
    }

    pub fn split(v: Val, t: Tm) -> Tm {
        Tm::Split(Box::new(v), Box::new(t))
    }

    pub fn case(v: Val, l: Tm, r: Tm) -> Tm {
        Tm::Case(Box::new(v), Box::new(l), Box::new(r))
    }

    pub fn abort(result: TyN, v: Val) -> Tm {
        Tm::Abort(result, Box::new(v))
    }
}

/// Normal values: variables only at positive atoms, thunks only of normal
/// terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum VnfC {
    Var(Idx),
    Thunk(Box<NfC>),
    Unit,
    Pair(Box<VnfC>, Box<VnfC>),
    Inj(Side, Box<VnfC>),
}

/// Neutrals: negative elimination chains rooted at a forced thunk variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NeC {
    Force(Idx),
    App(Box<NeC>, Box<VnfC>),
    Prj(Proj, Box<NeC>),
}

/// The inductive cover monad of CBPV normal forms: positive eliminations
/// scrutinizing variables, plus `Bind` scrutinizing a neutral computation.
/// Binder types are stored for renaming.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CovC<J> {
    Return(J),
    Bind {
        ann: TyP,
        scrut: NeC,
        body: Box<CovC<J>>,
    },
    Split {
        scrut: Idx,
        tys: (TyP, TyP),
        body: Box<CovC<J>>,
    },
    Case {
        scrut: Idx,
        tys: (TyP, TyP),
        left: Box<CovC<J>>,
        right: Box<CovC<J>>,
    },
    Abort {
        scrut: Idx,
    },
}

/// Normal terms: maximal negative introduction down to a negative atom or
/// `Comp`, where the cover monad takes over.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NfC {
    NeAtom(CovC<NeC>),
    Ret(CovC<VnfC>),
    UnitN,
    PairN(Box<NfC>, Box<NfC>),
    Abs(TyP, Box<NfC>),
}

impl VnfC {
    pub fn thunk(n: NfC) -> VnfC {
        VnfC::Thunk(Box::new(n))
    }

    pub fn pair(a: VnfC, b: VnfC) -> VnfC {
        VnfC::Pair(Box::new(a), Box::new(b))
    }

    pub fn inj(s: Side, v: VnfC) -> VnfC {
        VnfC::Inj(s, Box::new(v))
    }
}

impl NeC {
    pub fn app(u: NeC, v: VnfC) -> NeC {
        NeC::App(Box::new(u), Box::new(v))
    }

    pub fn prj(p: Proj, u: NeC) -> NeC {
        NeC::Prj(p, Box::new(u))
    }
}

impl<J> CovC<J> {
    pub fn bind(ann: TyP, scrut: NeC, body: CovC<J>) -> CovC<J> {
        CovC::Bind {
            ann,
            scrut,
            body: Box::new(body),
        }
    }

    pub fn split(scrut: Idx, tys: (TyP, TyP), body: CovC<J>) -> CovC<J> {
        CovC::Split {
            scrut,
            tys,
            body: Box::new(body),
        }
    }

    pub fn case(scrut: Idx, tys: (TyP, TyP), left: CovC<J>, right: CovC<J>) -> CovC<J> {
        CovC::Case {
            scrut,
            tys,
            left: Box::new(left),
            right: Box::new(right),
        }
    }
}

impl NfC {
    pub fn pair_n(a: NfC, b: NfC) -> NfC {
        NfC::PairN(Box::new(a), Box::new(b))
    }

    pub fn abs(dom: TyP, b: NfC) -> NfC {
        NfC::Abs(dom, Box::new(b))
    }
}

impl Renameable<TyP> for VnfC {
    fn rename(&self, ope: &Ope<TyP>) -> Self {
        match self {
            VnfC::Var(x) => VnfC::Var(ope.apply(*x)),
            VnfC::Thunk(n) => VnfC::thunk(n.rename(ope)),
            VnfC::Unit => VnfC::Unit,
            VnfC::Pair(a, b) => VnfC::pair(a.rename(ope), b.rename(ope)),
            VnfC::Inj(s, v) => VnfC::inj(*s, v.rename(ope)),
        }
    }
}

impl Renameable<TyP> for NeC {
    fn rename(&self, ope: &Ope<TyP>) -> Self {
        match self {
            NeC::Force(x) => NeC::Force(ope.apply(*x)),
            NeC::App(u, v) => NeC::app(u.rename(ope), v.rename(ope)),
            NeC::Prj(p, u) => NeC::prj(*p, u.rename(ope)),
        }
    }
}

impl<J: Renameable<TyP>> Renameable<TyP> for CovC<J> {
    fn rename(&self, ope: &Ope<TyP>) -> Self {
        match self {
            CovC::Return(j) => CovC::Return(j.rename(ope)),
            CovC::Bind { ann, scrut, body } => CovC::bind(
                ann.clone(),
                scrut.rename(ope),
                body.rename(&ope.lift(ann.clone())),
            ),
            CovC::Split { scrut, tys, body } => CovC::split(
                ope.apply(*scrut),
                tys.clone(),
                body.rename(&ope.lift(tys.0.clone()).lift(tys.1.clone())),
            ),
            CovC::Case { scrut, tys, left, right } => CovC::case(
                ope.apply(*scrut),
                tys.clone(),
                left.rename(&ope.lift(tys.0.clone())),
                right.rename(&ope.lift(tys.1.clone())),
            ),
            CovC::Abort { scrut } => CovC::Abort {
                scrut: ope.apply(*scrut),
            },
        }
    }
}

impl Renameable<TyP> for NfC {
    fn rename(&self, ope: &Ope<TyP>) -> Self {
        match self {
            NfC::NeAtom(c) => NfC::NeAtom(c.rename(ope)),
            NfC::Ret(c) => NfC::Ret(c.rename(ope)),
            NfC::UnitN => NfC::UnitN,
            NfC::PairN(a, b) => NfC::pair_n(a.rename(ope), b.rename(ope)),
            NfC::Abs(dom, b) => NfC::abs(dom.clone(), b.rename(&ope.lift(dom.clone()))),
        }
    }
}
