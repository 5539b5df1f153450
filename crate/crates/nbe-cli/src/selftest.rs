//! Generator-driven property suites behind `nbe selftest`.

use nbe_core::kernel::Ctx;
use nbe_core::oracle::axioms::{gen_axiom_instance, ALL_SCHEMAS};
use nbe_core::oracle::fincbpv::{gen_term_cbpv, oracle_equiv_cbpv};
use nbe_core::oracle::finpol::{gen_term_pol, oracle_equiv_pol};
use nbe_core::oracle::gen::gen_term_stlc;
use nbe_core::oracle::{finmodel, Calculus, OracleError, Verdict};
use nbe_core::stlc::cover::{ContCover, FreeCover};
use nbe_core::{cbpv, polarized, stlc};

pub struct SuiteResult {
    pub name: &'static str,
    pub pass: usize,
    pub total: usize,
    pub skipped: usize,
}

impl SuiteResult {
    fn ok(&self) -> bool {
        self.pass + self.skipped == self.total
    }

    fn report(&self) {
        if self.skipped > 0 {
            println!(
                "{}: {}/{} pass ({} skipped: domain too large)",
                self.name,
                self.pass,
                self.total - self.skipped,
                self.skipped
            );
        } else {
            println!("{}: {}/{} pass", self.name, self.pass, self.total);
        }
    }
}

fn stlc_norm_round(ctx: &Ctx<stlc::Ty>, t: &stlc::Term) -> Result<(stlc::Nf, stlc::Term), String> {
    let ty = stlc::infer::infer(ctx, t).map_err(|e| e.to_string())?;
    let nf = stlc::sem::norm::<FreeCover>(ctx, t).map_err(|e| e.to_string())?;
    stlc::validate::check_nf(ctx, &ty, &nf).map_err(|e| e.to_string())?;
    let back = stlc::erase::erase_nf(ctx, &ty, &nf).map_err(|e| e.to_string())?;
    Ok((nf, back))
}

fn axioms_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut pass = 0;
    for i in 0..cases {
        let schema = ALL_SCHEMAS[i % ALL_SCHEMAS.len()];
        let Ok((ctx, lhs, rhs)) = gen_axiom_instance(schema, seed.wrapping_add(i as u64)) else {
            continue;
        };
        let n1 = stlc::sem::norm::<FreeCover>(&ctx, &lhs);
        let n2 = stlc::sem::norm::<FreeCover>(&ctx, &rhs);
        match (n1, n2) {
            (Ok(a), Ok(b)) if a == b => pass += 1,
            _ => eprintln!("axiom failure: {} seed {}", schema.name(), i),
        }
    }
    SuiteResult {
        name: "stlc axiom soundness",
        pass,
        total: cases,
        skipped: 0,
    }
}

fn idempotence_stlc(seed: u64, cases: usize) -> SuiteResult {
    let mut pass = 0;
    for i in 0..cases {
        let Ok((ctx, t)) = gen_term_stlc(seed.wrapping_add(i as u64), 12, 2) else {
            continue;
        };
        if let Ok((nf, back)) = stlc_norm_round(&ctx, &t) {
            if let Ok((nf2, _)) = stlc_norm_round(&ctx, &back) {
                if nf == nf2 {
                    pass += 1;
                    continue;
                }
            }
        }
        eprintln!("stlc idempotence failure at seed offset {i}");
    }
    SuiteResult {
        name: "stlc idempotence",
        pass,
        total: cases,
        skipped: 0,
    }
}

fn soundness_stlc(seed: u64, cases: usize, base_size: usize) -> SuiteResult {
    let (mut pass, mut skipped) = (0, 0);
    for i in 0..cases {
        let Ok((ctx, t)) = gen_term_stlc(seed.wrapping_add(i as u64), 12, 2) else {
            continue;
        };
        match stlc_norm_round(&ctx, &t) {
            Ok((_, back)) => match finmodel::oracle_equiv(&ctx, &t, &back, base_size) {
                Ok(Verdict::Equal) => pass += 1,
                Ok(Verdict::NotEqual) => {
                    eprintln!("stlc soundness failure at seed offset {i}")
                }
                Err(OracleError::DomainTooLarge { .. }) => skipped += 1,
                Err(e) => eprintln!("stlc soundness error at seed offset {i}: {e}"),
            },
            Err(e) => eprintln!("stlc normalization error at seed offset {i}: {e}"),
        }
    }
    SuiteResult {
        name: "stlc finite-model soundness",
        pass,
        total: cases,
        skipped,
    }
}

fn monad_agreement(seed: u64, cases: usize, base_size: usize) -> SuiteResult {
    let (mut pass, mut skipped) = (0, 0);
    let mut structural = 0;
    for i in 0..cases {
        let Ok((ctx, t)) = gen_term_stlc(seed.wrapping_add(i as u64), 12, 2) else {
            continue;
        };
        let ty = match stlc::infer::infer(&ctx, &t) {
            Ok(ty) => ty,
            Err(_) => continue,
        };
        let (Ok(n1), Ok(n2)) = (
            stlc::sem::norm::<FreeCover>(&ctx, &t),
            stlc::sem::norm::<ContCover>(&ctx, &t),
        ) else {
            eprintln!("monad agreement: normalization error at seed offset {i}");
            continue;
        };
        if n1 == n2 {
            structural += 1;
            pass += 1;
            continue;
        }
        let (Ok(b1), Ok(b2)) = (
            stlc::erase::erase_nf(&ctx, &ty, &n1),
            stlc::erase::erase_nf(&ctx, &ty, &n2),
        ) else {
            eprintln!("monad agreement: erasure error at seed offset {i}");
            continue;
        };
        match finmodel::oracle_equiv(&ctx, &b1, &b2, base_size) {
            Ok(Verdict::Equal) => pass += 1,
            Ok(Verdict::NotEqual) => {
                eprintln!("monad agreement failure at seed offset {i}")
            }
            Err(OracleError::DomainTooLarge { .. }) => skipped += 1,
            Err(e) => eprintln!("monad agreement error at seed offset {i}: {e}"),
        }
    }
    println!(
        "stlc free/cc structural agreement: {structural}/{cases}"
    );
    SuiteResult {
        name: "stlc free/cc oracle agreement",
        pass,
        total: cases,
        skipped,
    }
}

fn cbpv_norm_round(ctx: &Ctx<cbpv::TyP>, t: &cbpv::Tm) -> Result<(cbpv::NfC, cbpv::Tm), String> {
    let ty = cbpv::infer::infer_tm(ctx, t).map_err(|e| e.to_string())?;
    let nf = cbpv::sem::norm_cbpv(ctx, t).map_err(|e| e.to_string())?;
    cbpv::validate::check_nf(ctx, &ty, &nf).map_err(|e| e.to_string())?;
    let back = cbpv::erase::erase_nf(ctx, &ty, &nf).map_err(|e| e.to_string())?;
    Ok((nf, back))
}

fn idempotence_cbpv(seed: u64, cases: usize) -> SuiteResult {
    let mut pass = 0;
    for i in 0..cases {
        let Ok((ctx, t)) = gen_term_cbpv(seed.wrapping_add(i as u64), 12, 2) else {
            continue;
        };
        if let Ok((nf, back)) = cbpv_norm_round(&ctx, &t) {
            if let Ok((nf2, _)) = cbpv_norm_round(&ctx, &back) {
                if nf == nf2 {
                    pass += 1;
                    continue;
                }
            }
        }
        eprintln!("cbpv idempotence failure at seed offset {i}");
    }
    SuiteResult {
        name: "cbpv idempotence",
        pass,
        total: cases,
        skipped: 0,
    }
}

fn soundness_cbpv(seed: u64, cases: usize, base_size: usize) -> SuiteResult {
    let (mut pass, mut skipped) = (0, 0);
    for i in 0..cases {
        let Ok((ctx, t)) = gen_term_cbpv(seed.wrapping_add(i as u64), 12, 2) else {
            continue;
        };
        match cbpv_norm_round(&ctx, &t) {
            Ok((_, back)) => match oracle_equiv_cbpv(&ctx, &t, &back, base_size) {
                Ok(Verdict::Equal) => pass += 1,
                Ok(Verdict::NotEqual) => {
                    eprintln!("cbpv soundness failure at seed offset {i}")
                }
                Err(OracleError::DomainTooLarge { .. }) => skipped += 1,
                Err(e) => eprintln!("cbpv soundness error at seed offset {i}: {e}"),
            },
            Err(e) => eprintln!("cbpv normalization error at seed offset {i}: {e}"),
        }
    }
    SuiteResult {
        name: "cbpv finite-model soundness",
        pass,
        total: cases,
        skipped,
    }
}

fn pol_norm_round(
    ctx: &Ctx<polarized::Hyp>,
    t: &polarized::TmZ,
) -> Result<(polarized::NfZ, polarized::TmZ), String> {
    let ty = polarized::infer::infer_tmz(ctx, t).map_err(|e| e.to_string())?;
    let nf = polarized::sem::norm_pol(ctx, t).map_err(|e| e.to_string())?;
    polarized::validate::check_nfz(ctx, &ty, &nf).map_err(|e| e.to_string())?;
    let back = polarized::erase::erase_nfz(ctx, &ty, &nf).map_err(|e| e.to_string())?;
    Ok((nf, back))
}

fn idempotence_pol(seed: u64, cases: usize) -> SuiteResult {
    let mut pass = 0;
    for i in 0..cases {
        let Ok((ctx, t)) = gen_term_pol(seed.wrapping_add(i as u64), 12, 2) else {
            continue;
        };
        if let Ok((nf, back)) = pol_norm_round(&ctx, &t) {
            if let Ok((nf2, _)) = pol_norm_round(&ctx, &back) {
                if nf == nf2 {
                    pass += 1;
                    continue;
                }
            }
        }
        eprintln!("polarized idempotence failure at seed offset {i}");
    }
    SuiteResult {
        name: "polarized idempotence",
        pass,
        total: cases,
        skipped: 0,
    }
}

fn soundness_pol(seed: u64, cases: usize, base_size: usize) -> SuiteResult {
    let (mut pass, mut skipped) = (0, 0);
    for i in 0..cases {
        let Ok((ctx, t)) = gen_term_pol(seed.wrapping_add(i as u64), 12, 2) else {
            continue;
        };
        match pol_norm_round(&ctx, &t) {
            Ok((_, back)) => match oracle_equiv_pol(&ctx, &t, &back, base_size) {
                Ok(Verdict::Equal) => pass += 1,
                Ok(Verdict::NotEqual) => {
                    eprintln!("polarized soundness failure at seed offset {i}")
                }
                Err(OracleError::DomainTooLarge { .. }) => skipped += 1,
                Err(e) => eprintln!("polarized soundness error at seed offset {i}: {e}"),
            },
            Err(e) => eprintln!("polarized normalization error at seed offset {i}: {e}"),
        }
    }
    SuiteResult {
        name: "polarized finite-model soundness",
        pass,
        total: cases,
        skipped,
    }
}

/// Run the suites, restricted to one calculus when requested. Returns
/// whether everything passed.
pub fn run(calculus: Option<Calculus>, seed: u64, cases: usize, base_size: usize) -> bool {
    let mut results = Vec::new();
    if calculus.is_none() || calculus == Some(Calculus::Stlc) {
        results.push(axioms_suite(seed, cases));
        results.push(idempotence_stlc(seed, cases));
        results.push(soundness_stlc(seed, cases, base_size));
        results.push(monad_agreement(seed, cases, base_size));
    }
    if calculus.is_none() || calculus == Some(Calculus::Cbpv) {
        results.push(idempotence_cbpv(seed, cases));
        results.push(soundness_cbpv(seed, cases, base_size));
    }
    if calculus.is_none() || calculus == Some(Calculus::Polarized) {
        results.push(idempotence_pol(seed, cases));
        results.push(soundness_pol(seed, cases, base_size));
    }
    let mut ok = true;
    for r in &results {
        r.report();
        ok &= r.ok();
    }
    ok
}
