//! The polarized (focused) lambda calculus: hypotheses are atomic or
//! negative, positive types are decomposed eagerly by maximal pattern
//! matching, expressed as the graded tree functor `Add`, and the cover
//! monad shrinks to return/bind.

pub mod erase;
pub mod infer;
pub mod sem;
pub mod validate;

use std::fmt;

use crate::kernel::{Idx, Ope, Renameable};
use crate::stlc::{Proj, Side};

pub use crate::cbpv::{TyN, TyP};

/// A context entry: a positive atom or a negative type. Composite positive
/// types never enter the context; they are split apart by `Add` trees.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Hyp {
    AtomP(String),
    Neg(TyN),
}

impl fmt::Display for Hyp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hyp::AtomP(name) if name.is_empty() => write!(f, "a+"),
            Hyp::AtomP(name) => write!(f, "a+ {name}"),
            Hyp::Neg(n) => write!(f, "{n}"),
        }
    }
}

/// Maximal pattern matching on one positive type, as a tree whose inner
/// nodes mirror the type structure and whose fringe holds judgements in
/// contexts extended by the atomic/negative crumbs.
///
/// The faithful version is a nested datatype (the product node holds an
/// `Add` of `Add`s); here the nesting is flattened into one leaf-generic
/// tree, `Split2`'s child decomposing the first factor and continuing with
/// the second at each of its fringe positions. The fringe validator
/// restores the shape invariant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Add<J> {
    Leaf(J),
    /// Decomposes a positive atom: one new hypothesis.
    HypP(String, Box<Add<J>>),
    /// Decomposes a thunk: one new negative hypothesis.
    HypN(TyN, Box<Add<J>>),
    /// Decomposes the empty type: no branches.
    Branch0,
    /// Decomposes a sum.
    Branch2(Box<Add<J>>, Box<Add<J>>),
    /// Decomposes the unit type: no new hypotheses.
    Split0(Box<Add<J>>),
    /// Decomposes a product, first factor outermost.
    Split2(Box<Add<J>>),
}

impl<J> Add<J> {
    pub fn hyp_p(name: &str, rest: Add<J>) -> Add<J> {
        Add::HypP(name.to_string(), Box::new(rest))
    }

    pub fn hyp_n(n: TyN, rest: Add<J>) -> Add<J> {
        Add::HypN(n, Box::new(rest))
    }

    pub fn branch2(l: Add<J>, r: Add<J>) -> Add<J> {
        Add::Branch2(Box::new(l), Box::new(r))
    }

    pub fn split0(rest: Add<J>) -> Add<J> {
        Add::Split0(Box::new(rest))
    }

    pub fn split2(inner: Add<J>) -> Add<J> {
        Add::Split2(Box::new(inner))
    }

    /// Functorial action on leaves.
    pub fn map<K>(&self, f: &dyn Fn(&J) -> K) -> Add<K> {
        match self {
            Add::Leaf(j) => Add::Leaf(f(j)),
            Add::HypP(o, rest) => Add::hyp_p(o, rest.map(f)),
            Add::HypN(n, rest) => Add::hyp_n(n.clone(), rest.map(f)),
            Add::Branch0 => Add::Branch0,
            Add::Branch2(l, r) => Add::branch2(l.map(f), r.map(f)),
            Add::Split0(rest) => Add::split0(rest.map(f)),
            Add::Split2(inner) => Add::split2(inner.map(f)),
        }
    }
}

/// The slim cover monad: only return and bind. All positive eliminations
/// live inside the `Add` body of the bind.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CovZ<J> {
    Return(J),
    Bind {
        ann: TyP,
        scrut: NeZ,
        body: Box<Add<CovZ<J>>>,
    },
}

impl<J> CovZ<J> {
    pub fn bind(ann: TyP, scrut: NeZ, body: Add<CovZ<J>>) -> CovZ<J> {
        CovZ::Bind {
            ann,
            scrut,
            body: Box::new(body),
        }
    }
}

/// Terms: CBPV terms minus the positive eliminations, with a negative
/// variable rule and `Add` trees as binder bodies.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ValZ {
    /// A positive atomic hypothesis.
    Var(Idx),
    Thunk(Box<TmZ>),
    Unit,
    Pair(Box<ValZ>, Box<ValZ>),
    /// Carries the other summand.
    Inj(Side, TyP, Box<ValZ>),
}

/// Binder bodies are `Add` trees; when the bound positive type is
/// uninhabited the tree has no leaves, so `Abs` and `Bind` also carry their
/// result type to keep inference total.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TmZ {
    /// A negative hypothesis.
    VarN(Idx),
    Ret(Box<ValZ>),
    /// Domain, codomain, and a body decomposing the domain.
    Abs(TyP, TyN, Box<Add<TmZ>>),
    PairN(Box<TmZ>, Box<TmZ>),
    UnitN,
    Force(Box<ValZ>),
    App(Box<TmZ>, Box<ValZ>),
    Prj(Proj, Box<TmZ>),
    /// Bound positive type, result type, scrutinee, body.
    Bind(TyP, TyN, Box<TmZ>, Box<Add<TmZ>>),
}

impl ValZ {
    pub fn var(n: usize) -> ValZ {
        ValZ::Var(Idx(n))
    }

    pub fn thunk(t: TmZ) -> ValZ {
        ValZ::Thunk(Box::new(t))
    }

    pub fn pair(a: ValZ, b: ValZ) -> ValZ {
        ValZ::Pair(Box::new(a), Box::new(b))
    }

    pub fn inj(s: Side, other: TyP, v: ValZ) -> ValZ {
        ValZ::Inj(s, other, Box::new(v))
    }
}

impl TmZ {
    pub fn var_n(n: usize) -> TmZ {
        TmZ::VarN(Idx(n))
    }

    pub fn ret(v: ValZ) -> TmZ {
        TmZ::Ret(Box::new(v))
    }

    pub fn abs(dom: TyP, cod: TyN, body: Add<TmZ>) -> TmZ {
        TmZ::Abs(dom, cod, Box::new(body))
    }

    pub fn pair_n(a: TmZ, b: TmZ) -> TmZ {
        TmZ::PairN(Box::new(a), Box::new(b))
    }

    pub fn force(v: ValZ) -> TmZ {
        TmZ::Force(Box::new(v))
    }

    pub fn app(t: TmZ, v: ValZ) -> TmZ {
        TmZ::App(Box::new(t), Box::new(v))
    }

    pub fn prj(p: Proj, t: TmZ) -> TmZ {
        TmZ::Prj(p, Box::new(t))
    }

    pub fn bind(ann: TyP, result: TyN, u: TmZ, body: Add<TmZ>) -> TmZ {
        TmZ::Bind(ann, result, Box::new(u), Box::new(body))
    }
}

/// Normal values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum VnfZ {
    Var(Idx),
    Thunk(Box<NfZ>),
    Unit,
    Pair(Box<VnfZ>, Box<VnfZ>),
    Inj(Side, Box<VnfZ>),
}

/// Neutrals: elimination chains rooted at a negative variable (there is no
/// force node; forcing happened when the hypothesis was added).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NeZ {
    Var(Idx),
    App(Box<NeZ>, Box<VnfZ>),
    Prj(Proj, Box<NeZ>),
}

/// Normal terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NfZ {
    NeAtom(CovZ<NeZ>),
    Ret(CovZ<VnfZ>),
    UnitN,
    PairN(Box<NfZ>, Box<NfZ>),
    Abs(TyP, Box<Add<NfZ>>),
}

impl VnfZ {
    pub fn thunk(n: NfZ) -> VnfZ {
        VnfZ::Thunk(Box::new(n))
    }

    pub fn pair(a: VnfZ, b: VnfZ) -> VnfZ {
        VnfZ::Pair(Box::new(a), Box::new(b))
    }

    pub fn inj(s: Side, v: VnfZ) -> VnfZ {
        VnfZ::Inj(s, Box::new(v))
    }
}

impl NeZ {
    pub fn app(u: NeZ, v: VnfZ) -> NeZ {
        NeZ::App(Box::new(u), Box::new(v))
    }

    pub fn prj(p: Proj, u: NeZ) -> NeZ {
        NeZ::Prj(p, Box::new(u))
    }
}

impl NfZ {
    pub fn pair_n(a: NfZ, b: NfZ) -> NfZ {
        NfZ::PairN(Box::new(a), Box::new(b))
    }

    pub fn abs(dom: TyP, body: Add<NfZ>) -> NfZ {
        NfZ::Abs(dom, Box::new(body))
    }
}

impl<J: Renameable<Hyp>> Renameable<Hyp> for Add<J> {
    fn rename(&self, ope: &Ope<Hyp>) -> Self {
        match self {
            Add::Leaf(j) => Add::Leaf(j.rename(ope)),
            Add::HypP(o, rest) => Add::hyp_p(o, rest.rename(&ope.lift(Hyp::AtomP(o.clone())))),
            Add::HypN(n, rest) => {
                Add::hyp_n(n.clone(), rest.rename(&ope.lift(Hyp::Neg(n.clone()))))
            }
            Add::Branch0 => Add::Branch0,
            Add::Branch2(l, r) => Add::branch2(l.rename(ope), r.rename(ope)),
            Add::Split0(rest) => Add::split0(rest.rename(ope)),
            Add::Split2(inner) => Add::split2(inner.rename(ope)),
        }
    }
}

impl<J: Renameable<Hyp>> Renameable<Hyp> for CovZ<J> {
    fn rename(&self, ope: &Ope<Hyp>) -> Self {
        match self {
            CovZ::Return(j) => CovZ::Return(j.rename(ope)),
            CovZ::Bind { ann, scrut, body } => {
                CovZ::bind(ann.clone(), scrut.rename(ope), body.rename(ope))
            }
        }
    }
}

impl Renameable<Hyp> for VnfZ {
    fn rename(&self, ope: &Ope<Hyp>) -> Self {
        match self {
            VnfZ::Var(x) => VnfZ::Var(ope.apply(*x)),
            VnfZ::Thunk(n) => VnfZ::thunk(n.rename(ope)),
            VnfZ::Unit => VnfZ::Unit,
            VnfZ::Pair(a, b) => VnfZ::pair(a.rename(ope), b.rename(ope)),
            VnfZ::Inj(s, v) => VnfZ::inj(*s, v.rename(ope)),
        }
    }
}

impl Renameable<Hyp> for NeZ {
    fn rename(&self, ope: &Ope<Hyp>) -> Self {
        match self {
            NeZ::Var(x) => NeZ::Var(ope.apply(*x)),
            NeZ::App(u, v) => NeZ::app(u.rename(ope), v.rename(ope)),
            NeZ::Prj(p, u) => NeZ::prj(*p, u.rename(ope)),
        }
    }
}

impl Renameable<Hyp> for NfZ {
    fn rename(&self, ope: &Ope<Hyp>) -> Self {
        match self {
            NfZ::NeAtom(c) => NfZ::NeAtom(c.rename(ope)),
            NfZ::Ret(c) => NfZ::Ret(c.rename(ope)),
            NfZ::UnitN => NfZ::UnitN,
            NfZ::PairN(a, b) => NfZ::pair_n(a.rename(ope), b.rename(ope)),
            NfZ::Abs(dom, body) => NfZ::abs(dom.clone(), body.rename(ope)),
        }
    }
}
