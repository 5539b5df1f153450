//! Command-line front end: parse, elaborate, normalize, print, plus the
//! finite-model oracle and the self-test suites.
//!
//! Exit codes: 0 success or equal, 1 not equal, 2 type or elaboration
//! error, 3 parse error, 4 internal invariant violation.

mod selftest;
mod sexp;

use std::io::{IsTerminal, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nbe_core::kernel::Ctx;
use nbe_core::oracle::fincbpv::oracle_equiv_cbpv;
use nbe_core::oracle::finpol::oracle_equiv_pol;
use nbe_core::oracle::{finmodel, Calculus, Verdict};
use nbe_core::stlc::cover::{ContCover, FreeCover};
use nbe_core::surface::elab::{elaborate_cbpv, elaborate_pol, elaborate_stlc};
use nbe_core::surface::parse::parse;
use nbe_core::surface::pretty;
use nbe_core::surface::SourceFile;
use nbe_core::{cbpv, polarized, stlc};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CalcArg {
    Stlc,
    Cbpv,
    Polarized,
}

impl From<CalcArg> for Calculus {
    fn from(c: CalcArg) -> Calculus {
        match c {
            CalcArg::Stlc => Calculus::Stlc,
            CalcArg::Cbpv => Calculus::Cbpv,
            CalcArg::Polarized => Calculus::Polarized,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MonadArg {
    Free,
    #[value(alias = "cont")]
    Cc,
}

#[derive(Parser)]
#[command(name = "nbe", about = "Normalization by evaluation for three lambda calculi")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Type-check a file and print the inferred type.
    Check {
        #[arg(long)]
        calculus: CalcArg,
        /// Cover monad implementation (STLC only).
        #[arg(long)]
        monad: Option<MonadArg>,
        /// Input path, or `-` for stdin.
        file: String,
    },
    /// Normalize a file and print the normal form.
    Norm {
        #[arg(long)]
        calculus: CalcArg,
        #[arg(long)]
        monad: Option<MonadArg>,
        /// Print an s-expression constructor dump instead of concrete syntax.
        #[arg(long)]
        ast: bool,
        file: String,
    },
    /// Normalize two files and compare the results structurally.
    Eq {
        #[arg(long)]
        calculus: CalcArg,
        #[arg(long)]
        monad: Option<MonadArg>,
        file1: String,
        file2: String,
    },
    /// Compare two files in the finite standard model.
    Oracle {
        #[arg(long)]
        calculus: CalcArg,
        #[arg(long, default_value_t = 2)]
        base_size: usize,
        file1: String,
        file2: String,
    },
    /// Run the generator-driven property suites.
    Selftest {
        #[arg(long)]
        calculus: Option<CalcArg>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 2)]
        base_size: usize,
    },
}

fn use_color() -> bool {
    match std::env::var("NBE_COLOR").as_deref() {
        Ok("always") => true,
        Ok("never") => false,
        _ => std::io::stderr().is_terminal(),
    }
}

fn diag(msg: &str) {
    if use_color() {
        eprintln!("\x1b[31merror\x1b[0m: {msg}");
    } else {
        eprintln!("error: {msg}");
    }
}

const EXIT_NOT_EQUAL: u8 = 1;
const EXIT_TYPE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

struct Failure {
    code: u8,
    msg: String,
}

fn fail<T>(code: u8, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure {
        code,
        msg: msg.into(),
    })
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        match std::io::stdin().read_to_string(&mut buf) {
            Ok(_) => Ok(buf),
            Err(e) => fail(EXIT_PARSE, format!("cannot read stdin: {e}")),
        }
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure {
                code: EXIT_PARSE,
                msg: format!("cannot read {path}: {e}"),
            })
    }
}

fn load(path: &str, calculus: Calculus) -> Result<SourceFile, Failure> {
    let text = read_input(path)?;
    parse(&text, calculus).map_err(|e| Failure {
        code: EXIT_PARSE,
        msg: e.to_string(),
    })
}

fn check_monad_flag(monad: Option<MonadArg>, calculus: CalcArg) -> Result<MonadArg, Failure> {
    match monad {
        Some(m) if calculus == CalcArg::Stlc => Ok(m),
        Some(_) => fail(
            EXIT_TYPE,
            "--monad selects the STLC cover monad and is rejected for other calculi",
        ),
        None => Ok(MonadArg::Free),
    }
}

fn elab_err(e: nbe_core::surface::ElabError) -> Failure {
    Failure {
        code: EXIT_TYPE,
        msg: e.to_string(),
    }
}

fn decl_names(file: &SourceFile) -> Vec<String> {
    file.decls.iter().map(|(n, _)| n.clone()).collect()
}

fn norm_stlc_with(
    monad: MonadArg,
    ctx: &Ctx<stlc::Ty>,
    t: &stlc::Term,
) -> Result<stlc::Nf, stlc::infer::TypeError> {
    match monad {
        MonadArg::Free => stlc::sem::norm::<FreeCover>(ctx, t),
        MonadArg::Cc => stlc::sem::norm::<ContCover>(ctx, t),
    }
}

/// Normalize one file; returns the pretty or dumped normal form.
fn run_norm(
    calculus: CalcArg,
    monad: Option<MonadArg>,
    ast: bool,
    path: &str,
) -> Result<String, Failure> {
    let monad = check_monad_flag(monad, calculus)?;
    let file = load(path, calculus.into())?;
    let names = decl_names(&file);
    match calculus {
        CalcArg::Stlc => {
            let (ctx, t) = elaborate_stlc(&file).map_err(elab_err)?;
            let ty = stlc::infer::infer(&ctx, &t)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            let nf = norm_stlc_with(monad, &ctx, &t)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            if let Err(e) = stlc::validate::check_nf(&ctx, &ty, &nf) {
                return fail(EXIT_INTERNAL, format!("invariant violation: {e}"));
            }
            if ast {
                return Ok(sexp::sexp_stlc_nf(&nf));
            }
            let back = stlc::erase::erase_nf(&ctx, &ty, &nf)
                .map_err(|e| Failure { code: EXIT_INTERNAL, msg: e.to_string() })?;
            Ok(pretty::pretty_stlc(&names, &back))
        }
        CalcArg::Cbpv => {
            let (ctx, t) = elaborate_cbpv(&file).map_err(elab_err)?;
            let ty = cbpv::infer::infer_tm(&ctx, &t)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            let nf = cbpv::sem::norm_cbpv(&ctx, &t)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            if let Err(e) = cbpv::validate::check_nf(&ctx, &ty, &nf) {
                return fail(EXIT_INTERNAL, format!("invariant violation: {e}"));
            }
            if ast {
                return Ok(sexp::sexp_cbpv_nf(&nf));
            }
            let back = cbpv::erase::erase_nf(&ctx, &ty, &nf)
                .map_err(|e| Failure { code: EXIT_INTERNAL, msg: e.to_string() })?;
            Ok(pretty::pretty_cbpv(&names, &back))
        }
        CalcArg::Polarized => {
            let (ctx, t) = elaborate_pol(&file).map_err(elab_err)?;
            let ty = polarized::infer::infer_tmz(&ctx, &t)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            let nf = polarized::sem::norm_pol(&ctx, &t)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            if let Err(e) = polarized::validate::check_nfz(&ctx, &ty, &nf) {
                return fail(EXIT_INTERNAL, format!("invariant violation: {e}"));
            }
            if ast {
                return Ok(sexp::sexp_pol_nf(&nf));
            }
            let back = polarized::erase::erase_nfz(&ctx, &ty, &nf)
                .map_err(|e| Failure { code: EXIT_INTERNAL, msg: e.to_string() })?;
            Ok(pretty::pretty_pol(&names, &back))
        }
    }
}

fn run_check(calculus: CalcArg, monad: Option<MonadArg>, path: &str) -> Result<String, Failure> {
    check_monad_flag(monad, calculus)?;
    let file = load(path, calculus.into())?;
    match calculus {
        CalcArg::Stlc => {
            let (ctx, t) = elaborate_stlc(&file).map_err(elab_err)?;
            let ty = stlc::infer::infer(&ctx, &t)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            Ok(pretty::ty_stlc(&ty))
        }
        CalcArg::Cbpv => {
            let (ctx, t) = elaborate_cbpv(&file).map_err(elab_err)?;
            let ty = cbpv::infer::infer_tm(&ctx, &t)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            Ok(pretty::ty_neg(&ty))
        }
        CalcArg::Polarized => {
            let (ctx, t) = elaborate_pol(&file).map_err(elab_err)?;
            let ty = polarized::infer::infer_tmz(&ctx, &t)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            Ok(pretty::ty_neg(&ty))
        }
    }
}

/// `eq`: normalize both files and compare structurally. Returns the verdict.
fn run_eq(
    calculus: CalcArg,
    monad: Option<MonadArg>,
    path1: &str,
    path2: &str,
) -> Result<bool, Failure> {
    let monad = check_monad_flag(monad, calculus)?;
    let f1 = load(path1, calculus.into())?;
    let f2 = load(path2, calculus.into())?;
    match calculus {
        CalcArg::Stlc => {
            let (ctx1, t1) = elaborate_stlc(&f1).map_err(elab_err)?;
            let (ctx2, t2) = elaborate_stlc(&f2).map_err(elab_err)?;
            if ctx1.entries() != ctx2.entries() {
                return fail(EXIT_TYPE, "files declare different contexts");
            }
            let ty1 = stlc::infer::infer(&ctx1, &t1)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            let ty2 = stlc::infer::infer(&ctx1, &t2)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            if ty1 != ty2 {
                return fail(EXIT_TYPE, "terms have different types");
            }
            let n1 = norm_stlc_with(monad, &ctx1, &t1)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            let n2 = norm_stlc_with(monad, &ctx1, &t2)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            Ok(n1 == n2)
        }
        CalcArg::Cbpv => {
            let (ctx1, t1) = elaborate_cbpv(&f1).map_err(elab_err)?;
            let (ctx2, t2) = elaborate_cbpv(&f2).map_err(elab_err)?;
            if ctx1.entries() != ctx2.entries() {
                return fail(EXIT_TYPE, "files declare different contexts");
            }
            let ty1 = cbpv::infer::infer_tm(&ctx1, &t1)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            let ty2 = cbpv::infer::infer_tm(&ctx1, &t2)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            if ty1 != ty2 {
                return fail(EXIT_TYPE, "terms have different types");
            }
            let n1 = cbpv::sem::norm_cbpv(&ctx1, &t1)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            let n2 = cbpv::sem::norm_cbpv(&ctx1, &t2)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            Ok(n1 == n2)
        }
        CalcArg::Polarized => {
            let (ctx1, t1) = elaborate_pol(&f1).map_err(elab_err)?;
            let (ctx2, t2) = elaborate_pol(&f2).map_err(elab_err)?;
            if ctx1.entries() != ctx2.entries() {
                return fail(EXIT_TYPE, "files declare different contexts");
            }
            let ty1 = polarized::infer::infer_tmz(&ctx1, &t1)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            let ty2 = polarized::infer::infer_tmz(&ctx1, &t2)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            if ty1 != ty2 {
                return fail(EXIT_TYPE, "terms have different types");
            }
            let n1 = polarized::sem::norm_pol(&ctx1, &t1)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            let n2 = polarized::sem::norm_pol(&ctx1, &t2)
                .map_err(|e| Failure { code: EXIT_TYPE, msg: e.to_string() })?;
            Ok(n1 == n2)
        }
    }
}

fn run_oracle(
    calculus: CalcArg,
    base_size: usize,
    path1: &str,
    path2: &str,
) -> Result<Verdict, Failure> {
    let f1 = load(path1, calculus.into())?;
    let f2 = load(path2, calculus.into())?;
    let verdict = match calculus {
        CalcArg::Stlc => {
            let (ctx1, t1) = elaborate_stlc(&f1).map_err(elab_err)?;
            let (ctx2, t2) = elaborate_stlc(&f2).map_err(elab_err)?;
            if ctx1.entries() != ctx2.entries() {
                return fail(EXIT_TYPE, "files declare different contexts");
            }
            finmodel::oracle_equiv(&ctx1, &t1, &t2, base_size)
        }
        CalcArg::Cbpv => {
            let (ctx1, t1) = elaborate_cbpv(&f1).map_err(elab_err)?;
            let (ctx2, t2) = elaborate_cbpv(&f2).map_err(elab_err)?;
            if ctx1.entries() != ctx2.entries() {
                return fail(EXIT_TYPE, "files declare different contexts");
            }
            oracle_equiv_cbpv(&ctx1, &t1, &t2, base_size)
        }
        CalcArg::Polarized => {
            let (ctx1, t1) = elaborate_pol(&f1).map_err(elab_err)?;
            let (ctx2, t2) = elaborate_pol(&f2).map_err(elab_err)?;
            if ctx1.entries() != ctx2.entries() {
                return fail(EXIT_TYPE, "files declare different contexts");
            }
            oracle_equiv_pol(&ctx1, &t1, &t2, base_size)
        }
    };
    verdict.map_err(|e| Failure {
        code: EXIT_TYPE,
        msg: e.to_string(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome: Result<u8, Failure> = match cli.cmd {
        Cmd::Check {
            calculus,
            monad,
            file,
        } => run_check(calculus, monad, &file).map(|ty| {
            println!("{ty}");
            0
        }),
        Cmd::Norm {
            calculus,
            monad,
            ast,
            file,
        } => run_norm(calculus, monad, ast, &file).map(|out| {
            println!("{out}");
            0
        }),
        Cmd::Eq {
            calculus,
            monad,
            file1,
            file2,
        } => run_eq(calculus, monad, &file1, &file2).map(|equal| {
            if equal {
                println!("equal");
                0
            } else {
                println!("not equal");
                EXIT_NOT_EQUAL
            }
        }),
        Cmd::Oracle {
            calculus,
            base_size,
            file1,
            file2,
        } => run_oracle(calculus, base_size, &file1, &file2).map(|verdict| match verdict {
            Verdict::Equal => {
                println!("equal");
                0
            }
            Verdict::NotEqual => {
                println!("not equal");
                EXIT_NOT_EQUAL
            }
        }),
        Cmd::Selftest {
            calculus,
            seed,
            cases,
            base_size,
        } => {
            if selftest::run(calculus.map(Into::into), seed, cases, base_size) {
                Ok(0)
            } else {
                Ok(EXIT_NOT_EQUAL)
            }
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            diag(&f.msg);
            ExitCode::from(f.code)
        }
    }
}
