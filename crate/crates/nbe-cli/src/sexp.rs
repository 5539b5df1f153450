//! Stable s-expression dumps of normal forms for `--ast` and golden tests.
//! One token per constructor, parenthesized children; types are rendered
//! with the concrete-syntax printer and quoted.

use nbe_core::cbpv::{CovC, NeC, NfC, VnfC};
use nbe_core::polarized::{Add, CovZ, NeZ, NfZ, TyN, VnfZ};
use nbe_core::stlc::{Ne, Nf, Proj, Side};
use nbe_core::surface::pretty::{ty_neg, ty_pos, ty_stlc};

fn proj(p: &Proj) -> &'static str {
    match p {
        Proj::Fst => "fst",
        Proj::Snd => "snd",
    }
}

fn side(s: &Side) -> &'static str {
    match s {
        Side::Inl => "inl",
        Side::Inr => "inr",
    }
}

pub fn sexp_stlc_nf(n: &Nf) -> String {
    match n {
        Nf::Atom(u) => format!("(atom {})", sexp_stlc_ne(u)),
        Nf::Abs(dom, b) => format!("(abs \"{}\" {})", ty_stlc(dom), sexp_stlc_nf(b)),
        Nf::Unit => "unit".into(),
        Nf::Pair(a, b) => format!("(pair {} {})", sexp_stlc_nf(a), sexp_stlc_nf(b)),
        Nf::Inj(s, b) => format!("({} {})", side(s), sexp_stlc_nf(b)),
        Nf::Case {
            scrut,
            tys,
            left,
            right,
        } => format!(
            "(case {} \"{}\" \"{}\" {} {})",
            sexp_stlc_ne(scrut),
            ty_stlc(&tys.0),
            ty_stlc(&tys.1),
            sexp_stlc_nf(left),
            sexp_stlc_nf(right)
        ),
        Nf::Abort(u) => format!("(abort {})", sexp_stlc_ne(u)),
    }
}

fn sexp_stlc_ne(u: &Ne) -> String {
    match u {
        Ne::Var(x) => format!("(var {})", x.0),
        Ne::App(u, n) => format!("(app {} {})", sexp_stlc_ne(u), sexp_stlc_nf(n)),
        Ne::Prj(p, u) => format!("({} {})", proj(p), sexp_stlc_ne(u)),
    }
}

pub fn sexp_cbpv_nf(n: &NfC) -> String {
    match n {
        NfC::NeAtom(c) => format!("(ne-atom {})", sexp_cbpv_cov(c, &sexp_cbpv_ne)),
        NfC::Ret(c) => format!("(ret {})", sexp_cbpv_cov(c, &sexp_cbpv_vnf)),
        NfC::UnitN => "unit-n".into(),
        NfC::PairN(a, b) => format!("(pair-n {} {})", sexp_cbpv_nf(a), sexp_cbpv_nf(b)),
        NfC::Abs(dom, b) => format!("(abs \"{}\" {})", ty_pos(dom), sexp_cbpv_nf(b)),
    }
}

fn sexp_cbpv_vnf(v: &VnfC) -> String {
    match v {
        VnfC::Var(x) => format!("(var {})", x.0),
        VnfC::Thunk(n) => format!("(thunk {})", sexp_cbpv_nf(n)),
        VnfC::Unit => "unit".into(),
        VnfC::Pair(a, b) => format!("(pair {} {})", sexp_cbpv_vnf(a), sexp_cbpv_vnf(b)),
        VnfC::Inj(s, v) => format!("({} {})", side(s), sexp_cbpv_vnf(v)),
    }
}

fn sexp_cbpv_ne(u: &NeC) -> String {
    match u {
        NeC::Force(x) => format!("(force {})", x.0),
        NeC::App(u, v) => format!("(app {} {})", sexp_cbpv_ne(u), sexp_cbpv_vnf(v)),
        NeC::Prj(p, u) => format!("({} {})", proj(p), sexp_cbpv_ne(u)),
    }
}

fn sexp_cbpv_cov<J>(c: &CovC<J>, leaf: &dyn Fn(&J) -> String) -> String {
    match c {
        CovC::Return(j) => format!("(return {})", leaf(j)),
        CovC::Bind { ann, scrut, body } => format!(
            "(bind \"{}\" {} {})",
            ty_pos(ann),
            sexp_cbpv_ne(scrut),
            sexp_cbpv_cov(body, leaf)
        ),
        CovC::Split { scrut, tys, body } => format!(
            "(split {} \"{}\" \"{}\" {})",
            scrut.0,
            ty_pos(&tys.0),
            ty_pos(&tys.1),
            sexp_cbpv_cov(body, leaf)
        ),
        CovC::Case {
            scrut,
            tys,
            left,
            right,
        } => format!(
            "(case {} \"{}\" \"{}\" {} {})",
            scrut.0,
            ty_pos(&tys.0),
            ty_pos(&tys.1),
            sexp_cbpv_cov(left, leaf),
            sexp_cbpv_cov(right, leaf)
        ),
        CovC::Abort { scrut } => format!("(abort {})", scrut.0),
    }
}

pub fn sexp_pol_nf(n: &NfZ) -> String {
    match n {
        NfZ::NeAtom(c) => format!("(ne-atom {})", sexp_pol_cov(c, &sexp_pol_ne)),
        NfZ::Ret(c) => format!("(ret {})", sexp_pol_cov(c, &sexp_pol_vnf)),
        NfZ::UnitN => "unit-n".into(),
        NfZ::PairN(a, b) => format!("(pair-n {} {})", sexp_pol_nf(a), sexp_pol_nf(b)),
        NfZ::Abs(dom, b) => format!(
            "(abs \"{}\" {})",
            ty_pos(dom),
            sexp_pol_add(b, &sexp_pol_nf)
        ),
    }
}

fn sexp_pol_vnf(v: &VnfZ) -> String {
    match v {
        VnfZ::Var(x) => format!("(var {})", x.0),
        VnfZ::Thunk(n) => format!("(thunk {})", sexp_pol_nf(n)),
        VnfZ::Unit => "unit".into(),
        VnfZ::Pair(a, b) => format!("(pair {} {})", sexp_pol_vnf(a), sexp_pol_vnf(b)),
        VnfZ::Inj(s, v) => format!("({} {})", side(s), sexp_pol_vnf(v)),
    }
}

fn sexp_pol_ne(u: &NeZ) -> String {
    match u {
        NeZ::Var(x) => format!("(var {})", x.0),
        NeZ::App(u, v) => format!("(app {} {})", sexp_pol_ne(u), sexp_pol_vnf(v)),
        NeZ::Prj(p, u) => format!("({} {})", proj(p), sexp_pol_ne(u)),
    }
}

fn sexp_pol_add<J>(t: &Add<J>, leaf: &dyn Fn(&J) -> String) -> String {
    match t {
        Add::Leaf(j) => format!("(leaf {})", leaf(j)),
        Add::HypP(o, rest) => format!("(hyp+ {o} {})", sexp_pol_add(rest, leaf)),
        Add::HypN(n, rest) => {
            format!("(hyp- \"{}\" {})", ty_neg_str(n), sexp_pol_add(rest, leaf))
        }
        Add::Branch0 => "branch0".into(),
        Add::Branch2(l, r) => format!(
            "(branch2 {} {})",
            sexp_pol_add(l, leaf),
            sexp_pol_add(r, leaf)
        ),
        Add::Split0(rest) => format!("(split0 {})", sexp_pol_add(rest, leaf)),
        Add::Split2(inner) => format!("(split2 {})", sexp_pol_add(inner, leaf)),
    }
}

fn ty_neg_str(n: &TyN) -> String {
    ty_neg(n)
}

fn sexp_pol_cov<J>(c: &CovZ<J>, leaf: &dyn Fn(&J) -> String) -> String {
    match c {
        CovZ::Return(j) => format!("(return {})", leaf(j)),
        CovZ::Bind { ann, scrut, body } => format!(
            "(bind \"{}\" {} {})",
            ty_pos(ann),
            sexp_pol_ne(scrut),
            sexp_pol_add(body, &|c2| sexp_pol_cov(c2, leaf))
        ),
    }
}
