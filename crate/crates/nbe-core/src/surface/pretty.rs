//! Pretty-printing core terms back to concrete syntax with minimal
//! parentheses. Binders get fresh names x0, x1, ... in print order;
//! `parse` then `elaborate` of the output reproduces the printed term.

use std::collections::VecDeque;

use crate::cbpv::{self, TyN, TyP};
use crate::kernel::Ctx;
use crate::polarized::{Add, Hyp, TmZ, ValZ};
use crate::stlc::{self, Proj, Side, Ty};

use super::Pattern;

fn wrap(cond: bool, s: String) -> String {
    if cond {
        format!("({s})")
    } else {
        s
    }
}

/// True when `left` ends with the standalone identifier `a`, which would
/// fuse with a following `+` into the atom token `a+`.
fn plus_hazard(left: &str) -> bool {
    if !left.ends_with('a') {
        return false;
    }
    let chars: Vec<char> = left.chars().collect();
    match chars.len().checked_sub(2).map(|i| chars[i]) {
        None => true,
        Some(c) => !(c.is_alphanumeric() || c == '_' || c == '\''),
    }
}

fn join_plus(l: &str, r: &str) -> String {
    if plus_hazard(l) {
        format!("{l} + {r}")
    } else {
        format!("{l}+{r}")
    }
}

// Types. Precedences: arrows loosest, then sums / withs, then products,
// then atoms and prefix formers.

pub fn ty_stlc(t: &Ty) -> String {
    go_stlc_ty(t, 0)
}

fn go_stlc_ty(t: &Ty, prec: u8) -> String {
    match t {
        Ty::Atom(name) if name.is_empty() => "o".into(),
        Ty::Atom(name) => format!("o {name}"),
        Ty::Zero => "0".into(),
        Ty::One => "1".into(),
        Ty::Sum(a, b) => wrap(
            prec > 1,
            join_plus(&go_stlc_ty(a, 2), &go_stlc_ty(b, 2)),
        ),
        Ty::Prod(a, b) => wrap(
            prec > 2,
            format!("{}*{}", go_stlc_ty(a, 3), go_stlc_ty(b, 3)),
        ),
        Ty::Arr(a, b) => wrap(
            prec > 0,
            format!("{} -> {}", go_stlc_ty(a, 1), go_stlc_ty(b, 0)),
        ),
    }
}

pub fn ty_pos(p: &TyP) -> String {
    go_pos(p, 0)
}

fn go_pos(p: &TyP, prec: u8) -> String {
    match p {
        TyP::Atom(name) => format!("a+ {name}"),
        TyP::Zero => "0".into(),
        TyP::One => "1".into(),
        TyP::Sum(a, b) => wrap(prec > 1, join_plus(&go_pos(a, 2), &go_pos(b, 2))),
        TyP::Prod(a, b) => wrap(prec > 2, format!("{}*{}", go_pos(a, 3), go_pos(b, 3))),
        TyP::Thunk(n) => format!("U {}", go_neg(n, 2)),
    }
}

pub fn ty_neg(n: &TyN) -> String {
    go_neg(n, 0)
}

fn go_neg(n: &TyN, prec: u8) -> String {
    match n {
        TyN::Atom(name) => format!("a- {name}"),
        TyN::Top => "Top".into(),
        TyN::With(a, b) => wrap(prec > 1, format!("{}&{}", go_neg(a, 2), go_neg(b, 2))),
        TyN::Arr(p, m) => wrap(
            prec > 0,
            format!("{} -> {}", go_pos(p, 0), go_neg(m, 0)),
        ),
        TyN::Comp(p) => format!("F {}", go_pos(p, 3)),
    }
}

/// How a polarized hypothesis reads in a declaration.
pub fn ty_hyp(h: &Hyp) -> String {
    match h {
        Hyp::AtomP(o) => format!("a+ {o}"),
        Hyp::Neg(n) => ty_neg(n),
    }
}

// Terms. Precedences: 0 binders, 1 application and prefix forms, 2 atoms.

struct Pr {
    next: usize,
}

impl Pr {
    fn fresh(&mut self, env: &[String]) -> String {
        loop {
            let s = format!("x{}", self.next);
            self.next += 1;
            if !env.contains(&s) {
                return s;
            }
        }
    }

    fn var(&self, env: &[String], idx: usize) -> String {
        env.len()
            .checked_sub(1 + idx)
            .and_then(|i| env.get(i).cloned())
            .unwrap_or_else(|| format!("_free{idx}"))
    }

    // STLC.

    fn stlc(&mut self, env: &mut Vec<String>, t: &stlc::Term, prec: u8) -> String {
        use stlc::Term;
        match t {
            Term::Var(x) => self.var(env, x.0),
            Term::Abs(dom, b) => {
                let x = self.fresh(env);
                env.push(x.clone());
                let body = self.stlc(env, b, 0);
                env.pop();
                wrap(prec > 0, format!("\\{x}:{}. {body}", ty_stlc(dom)))
            }
            Term::App(f, u) => wrap(
                prec > 1,
                format!("{} {}", self.stlc(env, f, 1), self.stlc(env, u, 2)),
            ),
            Term::Unit => "()".into(),
            Term::Pair(a, b) => {
                format!("({}, {})", self.stlc(env, a, 0), self.stlc(env, b, 0))
            }
            Term::Prj(p, t) => wrap(
                prec > 1,
                format!(
                    "{} {}",
                    match p {
                        Proj::Fst => "fst",
                        Proj::Snd => "snd",
                    },
                    self.stlc(env, t, 2)
                ),
            ),
            Term::Inj(s, other, t) => wrap(
                prec > 1,
                format!(
                    "{}[{}] {}",
                    match s {
                        Side::Inl => "inl",
                        Side::Inr => "inr",
                    },
                    ty_stlc(other),
                    self.stlc(env, t, 2)
                ),
            ),
            Term::Case(s, l, r) => {
                let scrut = self.stlc(env, s, 0);
                let x = self.fresh(env);
                env.push(x.clone());
                let left = self.stlc(env, l, 0);
                env.pop();
                let y = self.fresh(env);
                env.push(y.clone());
                let right = self.stlc(env, r, 0);
                env.pop();
                wrap(
                    prec > 0,
                    format!("case {scrut} of {{ inl {x} -> {left} ; inr {y} -> {right} }}"),
                )
            }
            Term::Abort(result, t) => wrap(
                prec > 1,
                format!("abort[{}] {}", ty_stlc(result), self.stlc(env, t, 2)),
            ),
        }
    }

    // CBPV.

    fn cval(&mut self, env: &mut Vec<String>, v: &cbpv::Val, prec: u8) -> String {
        use cbpv::Val;
        match v {
            Val::Var(x) => self.var(env, x.0),
            Val::Thunk(t) => wrap(prec > 1, format!("thunk {}", self.ctm(env, t, 2))),
            Val::Unit => "()".into(),
            Val::Pair(a, b) => {
                format!("({}, {})", self.cval(env, a, 0), self.cval(env, b, 0))
            }
            Val::Inj(s, other, v) => wrap(
                prec > 1,
                format!(
                    "{}[{}] {}",
                    match s {
                        Side::Inl => "inl",
                        Side::Inr => "inr",
                    },
                    ty_pos(other),
                    self.cval(env, v, 2)
                ),
            ),
        }
    }

    fn ctm(&mut self, env: &mut Vec<String>, t: &cbpv::Tm, prec: u8) -> String {
        use cbpv::Tm;
        match t {
            Tm::Ret(v) => wrap(prec > 1, format!("ret {}", self.cval(env, v, 2))),
            Tm::Abs(dom, b) => {
                let x = self.fresh(env);
                env.push(x.clone());
                let body = self.ctm(env, b, 0);
                env.pop();
                wrap(prec > 0, format!("\\{x}:{}. {body}", ty_pos(dom)))
            }
            Tm::PairN(a, b) => format!("<{}, {}>", self.ctm(env, a, 0), self.ctm(env, b, 0)),
            Tm::UnitN => "<>".into(),
            Tm::Force(v) => wrap(prec > 1, format!("force {}", self.cval(env, v, 2))),
            Tm::App(f, v) => wrap(
                prec > 1,
                format!("{} {}", self.ctm(env, f, 1), self.cval(env, v, 2)),
            ),
            Tm::Prj(p, t) => wrap(
                prec > 1,
                format!(
                    "{} {}",
                    match p {
                        Proj::Fst => "fst",
                        Proj::Snd => "snd",
                    },
                    self.ctm(env, t, 2)
                ),
            ),
            Tm::Bind(ann, u, t) => {
                let scrut = self.ctm(env, u, 0);
                let x = self.fresh(env);
                env.push(x.clone());
                let body = self.ctm(env, t, 0);
                env.pop();
                wrap(
                    prec > 0,
                    format!("let {x} : {} <- {scrut} in {body}", ty_pos(ann)),
                )
            }
            Tm::Split(v, t) => {
                let scrut = self.cval(env, v, 0);
                let x = self.fresh(env);
                env.push(x.clone());
                let y = self.fresh(env);
                env.push(y.clone());
                let body = self.ctm(env, t, 0);
                env.pop();
                env.pop();
                wrap(
                    prec > 0,
                    format!("split {scrut} as ({x}, {y}) in {body}"),
                )
            }
            Tm::Case(v, l, r) => {
                let scrut = self.cval(env, v, 0);
                let x = self.fresh(env);
                env.push(x.clone());
                let left = self.ctm(env, l, 0);
                env.pop();
                let y = self.fresh(env);
                env.push(y.clone());
                let right = self.ctm(env, r, 0);
                env.pop();
                wrap(
                    prec > 0,
                    format!("case {scrut} of {{ inl {x} -> {left} ; inr {y} -> {right} }}"),
                )
            }
            Tm::Abort(result, v) => wrap(
                prec > 1,
                format!("abort[{}] {}", ty_neg(result), self.cval(env, v, 2)),
            ),
        }
    }

    // Polarized.

    fn pval(&mut self, env: &mut Vec<String>, v: &ValZ, prec: u8) -> String {
        match v {
            ValZ::Var(x) => self.var(env, x.0),
            ValZ::Thunk(t) => wrap(prec > 1, format!("thunk {}", self.ptm(env, t, 2))),
            ValZ::Unit => "()".into(),
            ValZ::Pair(a, b) => {
                format!("({}, {})", self.pval(env, a, 0), self.pval(env, b, 0))
            }
            ValZ::Inj(s, other, v) => wrap(
                prec > 1,
                format!(
                    "{}[{}] {}",
                    match s {
                        Side::Inl => "inl",
                        Side::Inr => "inr",
                    },
                    ty_pos(other),
                    self.pval(env, v, 2)
                ),
            ),
        }
    }

    /// Clause reconstruction: walk an `Add` body, consuming `pending`
    /// decompositions and returning one (patterns, printed body) per leaf.
    fn collect(
        &mut self,
        env: &mut Vec<String>,
        t: &Add<TmZ>,
        pending: usize,
    ) -> Vec<(VecDeque<Pattern>, String)> {
        if pending == 0 {
            return match t {
                Add::Leaf(tm) => vec![(VecDeque::new(), self.ptm(env, tm, 0))],
                _ => Vec::new(),
            };
        }
        match t {
            Add::Leaf(_) => Vec::new(),
            Add::HypP(_, rest) | Add::HypN(_, rest) => {
                let x = self.fresh(env);
                env.push(x.clone());
                let mut res = self.collect(env, rest, pending - 1);
                env.pop();
                for (pats, _) in &mut res {
                    pats.push_front(Pattern::Var(x.clone()));
                }
                res
            }
            Add::Branch0 => Vec::new(),
            Add::Branch2(l, r) => {
                let mut out = self.collect(env, l, pending);
                for (pats, _) in &mut out {
                    let q = pats.pop_front().expect("branch under-consumed");
                    pats.push_front(Pattern::Inl(Box::new(q)));
                }
                let mut right = self.collect(env, r, pending);
                for (pats, _) in &mut right {
                    let q = pats.pop_front().expect("branch under-consumed");
                    pats.push_front(Pattern::Inr(Box::new(q)));
                }
                out.extend(right);
                out
            }
            Add::Split0(rest) => {
                let mut res = self.collect(env, rest, pending - 1);
                for (pats, _) in &mut res {
                    pats.push_front(Pattern::Unit);
                }
                res
            }
            Add::Split2(inner) => {
                let mut res = self.collect(env, inner, pending + 1);
                for (pats, _) in &mut res {
                    let q1 = pats.pop_front().expect("split under-consumed");
                    let q2 = pats.pop_front().expect("split under-consumed");
                    pats.push_front(Pattern::Pair(Box::new(q1), Box::new(q2)));
                }
                res
            }
        }
    }

    fn clauses(&mut self, env: &mut Vec<String>, body: &Add<TmZ>) -> String {
        let cls = self.collect(env, body, 1);
        if cls.is_empty() {
            return "{ }".into();
        }
        let rendered: Vec<String> = cls
            .iter()
            .map(|(pats, body)| format!("{} -> {body}", pat_str(&pats[0])))
            .collect();
        format!("{{ {} }}", rendered.join(" | "))
    }

    fn ptm(&mut self, env: &mut Vec<String>, t: &TmZ, prec: u8) -> String {
        match t {
            TmZ::VarN(x) => self.var(env, x.0),
            TmZ::Ret(v) => wrap(prec > 1, format!("ret {}", self.pval(env, v, 2))),
            TmZ::Abs(dom, cod, body) => {
                let ann = if has_leaf(body) {
                    ty_pos(dom)
                } else {
                    format!("{} -> {}", go_pos(dom, 0), ty_neg(cod))
                };
                let cls = self.clauses(env, body);
                wrap(prec > 0, format!("\\[{ann}]{cls}"))
            }
            TmZ::PairN(a, b) => format!("<{}, {}>", self.ptm(env, a, 0), self.ptm(env, b, 0)),
            TmZ::UnitN => "<>".into(),
            TmZ::Force(v) => wrap(prec > 1, format!("force {}", self.pval(env, v, 2))),
            TmZ::App(f, v) => wrap(
                prec > 1,
                format!("{} {}", self.ptm(env, f, 1), self.pval(env, v, 2)),
            ),
            TmZ::Prj(p, t) => wrap(
                prec > 1,
                format!(
                    "{} {}",
                    match p {
                        Proj::Fst => "fst",
                        Proj::Snd => "snd",
                    },
                    self.ptm(env, t, 2)
                ),
            ),
            TmZ::Bind(_, result, u, body) => {
                let ann = if has_leaf(body) {
                    String::new()
                } else {
                    format!("[{}]", ty_neg(result))
                };
                let scrut = self.ptm(env, u, 0);
                let cls = self.clauses(env, body);
                wrap(prec > 0, format!("bind{ann} {scrut} {cls}"))
            }
        }
    }
}

fn has_leaf(t: &Add<TmZ>) -> bool {
    match t {
        Add::Leaf(_) => true,
        Add::HypP(_, rest) | Add::HypN(_, rest) | Add::Split0(rest) | Add::Split2(rest) => {
            has_leaf(rest)
        }
        Add::Branch0 => false,
        Add::Branch2(l, r) => has_leaf(l) || has_leaf(r),
    }
}

fn pat_str(p: &Pattern) -> String {
    match p {
        Pattern::Var(x) => x.clone(),
        Pattern::Unit => "()".into(),
        Pattern::Pair(a, b) => format!("({}, {})", pat_str(a), pat_str(b)),
        Pattern::Inl(q) => format!("inl {}", pat_str(q)),
        Pattern::Inr(q) => format!("inr {}", pat_str(q)),
    }
}

pub fn pretty_stlc(names: &[String], t: &stlc::Term) -> String {
    let mut env = names.to_vec();
    Pr { next: 0 }.stlc(&mut env, t, 0)
}

pub fn pretty_cbpv(names: &[String], t: &cbpv::Tm) -> String {
    let mut env = names.to_vec();
    Pr { next: 0 }.ctm(&mut env, t, 0)
}

pub fn pretty_cbpv_val(names: &[String], v: &cbpv::Val) -> String {
    let mut env = names.to_vec();
    Pr { next: 0 }.cval(&mut env, v, 0)
}

pub fn pretty_pol(names: &[String], t: &TmZ) -> String {
    let mut env = names.to_vec();
    Pr { next: 0 }.ptm(&mut env, t, 0)
}

/// Default declaration names for a generated context: v0, v1, ...
pub fn decl_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

pub fn pretty_file_stlc(ctx: &Ctx<Ty>, t: &stlc::Term) -> String {
    let names = decl_names(ctx.len());
    let mut out = String::new();
    for (name, ty) in names.iter().zip(ctx.entries()) {
        out.push_str(&format!("var {name} : {} ;\n", ty_stlc(ty)));
    }
    out.push_str(&format!("term {}\n", pretty_stlc(&names, t)));
    out
}

pub fn pretty_file_cbpv(ctx: &Ctx<TyP>, t: &cbpv::Tm) -> String {
    let names = decl_names(ctx.len());
    let mut out = String::new();
    for (name, ty) in names.iter().zip(ctx.entries()) {
        out.push_str(&format!("var {name} : {} ;\n", ty_pos(ty)));
    }
    out.push_str(&format!("term {}\n", pretty_cbpv(&names, t)));
    out
}

pub fn pretty_file_pol(ctx: &Ctx<Hyp>, t: &TmZ) -> String {
    let names = decl_names(ctx.len());
    let mut out = String::new();
    for (name, h) in names.iter().zip(ctx.entries()) {
        out.push_str(&format!("var {name} : {} ;\n", ty_hyp(h)));
    }
    out.push_str(&format!("term {}\n", pretty_pol(&names, t)));
    out
}
