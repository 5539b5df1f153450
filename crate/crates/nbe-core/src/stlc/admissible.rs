//! Admissible extensions of case and abort to negative result types,
//! defined by recursion on the result type.

use crate::kernel::{Ctx, Ope, Renameable};

use super::{Ne, Nf, Ty};

/// `abort` at an arbitrary result type.
pub fn abort_any(ctx: &Ctx<Ty>, result: &Ty, u: &Ne) -> Nf {
    match result {
        Ty::One => Nf::Unit,
        Ty::Prod(a, b) => Nf::pair(abort_any(ctx, a, u), abort_any(ctx, b, u)),
        Ty::Arr(dom, cod) => {
            let wk = Ope::wk(ctx, (**dom).clone());
            Nf::abs(
                (**dom).clone(),
                abort_any(&ctx.snoc((**dom).clone()), cod, &u.rename(&wk)),
            )
        }
        _ => Nf::Abort(u.clone()),
    }
}

/// `case` at an arbitrary result type. The branches live in `ctx` extended
/// by the respective summand.
pub fn case_any(ctx: &Ctx<Ty>, result: &Ty, u: &Ne, tys: &(Ty, Ty), n1: &Nf, n2: &Nf) -> Nf {
    match result {
        Ty::One => Nf::Unit,
        Ty::Prod(a, b) => {
            let (l1, r1) = expect_pair(n1);
            let (l2, r2) = expect_pair(n2);
            Nf::pair(
                case_any(ctx, a, u, tys, l1, l2),
                case_any(ctx, b, u, tys, r1, r2),
            )
        }
        Ty::Arr(dom, cod) => {
            // η-longness gives branches of the shape `abs b_i` with bodies in
            // Γ.A_i.dom; transposing the top two entries moves them to
            // Γ.dom.A_i. The transposition is not order-preserving, so it is
            // done by a raw index swap rather than an OPE.
            let b1 = expect_abs(n1);
            let b2 = expect_abs(n2);
            let ctx2 = ctx.snoc((**dom).clone());
            let wk = Ope::wk(ctx, (**dom).clone());
            Nf::abs(
                (**dom).clone(),
                case_any(
                    &ctx2,
                    cod,
                    &u.rename(&wk),
                    tys,
                    &swap_top_nf(b1, 0),
                    &swap_top_nf(b2, 0),
                ),
            )
        }
        _ => Nf::case(u.clone(), tys.clone(), n1.clone(), n2.clone()),
    }
}

fn expect_pair(n: &Nf) -> (&Nf, &Nf) {
    match n {
        Nf::Pair(a, b) => (a, b),
        _ => panic!("case_any: branch at product type is not a pair"),
    }
}

fn expect_abs(n: &Nf) -> &Nf {
    match n {
        Nf::Abs(_, body) => body,
        _ => panic!("case_any: branch at function type is not an abstraction"),
    }
}

/// Swap the indices `depth` and `depth + 1` throughout a normal form.
fn swap_top_nf(n: &Nf, depth: usize) -> Nf {
    match n {
        Nf::Atom(u) => Nf::Atom(swap_top_ne(u, depth)),
        Nf::Abs(dom, body) => Nf::abs(dom.clone(), swap_top_nf(body, depth + 1)),
        Nf::Unit => Nf::Unit,
        Nf::Pair(a, b) => Nf::pair(swap_top_nf(a, depth), swap_top_nf(b, depth)),
        Nf::Inj(s, v) => Nf::inj(*s, swap_top_nf(v, depth)),
        Nf::Case { scrut, tys, left, right } => Nf::case(
            swap_top_ne(scrut, depth),
            tys.clone(),
            swap_top_nf(left, depth + 1),
            swap_top_nf(right, depth + 1),
        ),
        Nf::Abort(u) => Nf::Abort(swap_top_ne(u, depth)),
    }
}

fn swap_top_ne(u: &Ne, depth: usize) -> Ne {
    match u {
        Ne::Var(x) => Ne::Var(crate::kernel::Idx(if x.0 == depth {
            depth + 1
        } else if x.0 == depth + 1 {
            depth
        } else {
            x.0
        })),
        Ne::App(f, arg) => Ne::app(swap_top_ne(f, depth), swap_top_nf(arg, depth)),
        Ne::Prj(p, u) => Ne::prj(*p, swap_top_ne(u, depth)),
    }
}
