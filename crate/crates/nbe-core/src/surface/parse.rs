//! Recursive-descent parser. The grammar accepted depends on the calculus:
//! STLC and CBPV share the `\x:T. t` binder family, the polarized calculus
//! uses clause binders `\[P]{ ... }` and `bind t { ... }`.

use std::fmt;

use crate::cbpv::{TyN, TyP};
use crate::oracle::Calculus;
use crate::stlc::Ty;

use super::lex::{lex, Tok, Token};
use super::{Clause, Pattern, SourceFile, SurfaceTerm, SurfaceType};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at {}:{}: expected {}, found {}",
            self.line,
            self.col,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    calculus: Calculus,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> PResult<T> {
        let here = &self.toks[self.pos];
        Err(ParseError {
            line: here.line,
            col: here.col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: here.tok.describe(),
        })
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            self.fail(&[&tok.describe()])
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Tok::Ident(_) => {
                let Tok::Ident(s) = self.next() else {
                    unreachable!()
                };
                Ok(s)
            }
            _ => self.fail(&["an identifier"]),
        }
    }

    // Types: STLC.

    fn ty_stlc(&mut self) -> PResult<Ty> {
        let a = self.ty_stlc_sum()?;
        if *self.peek() == Tok::Arrow {
            self.next();
            let b = self.ty_stlc()?;
            Ok(Ty::arr(a, b))
        } else {
            Ok(a)
        }
    }

    fn ty_stlc_sum(&mut self) -> PResult<Ty> {
        let mut a = self.ty_stlc_prod()?;
        while *self.peek() == Tok::Plus {
            self.next();
            a = Ty::sum(a, self.ty_stlc_prod()?);
        }
        Ok(a)
    }

    fn ty_stlc_prod(&mut self) -> PResult<Ty> {
        let mut a = self.ty_stlc_atom()?;
        while *self.peek() == Tok::Star {
            self.next();
            a = Ty::prod(a, self.ty_stlc_atom()?);
        }
        Ok(a)
    }

    fn ty_stlc_atom(&mut self) -> PResult<Ty> {
        match self.peek() {
            Tok::KwO => {
                self.next();
                match self.peek() {
                    Tok::Ident(_) => Ok(Ty::Atom(self.ident()?)),
                    _ => Ok(Ty::atom()),
                }
            }
            Tok::ZeroTy => {
                self.next();
                Ok(Ty::Zero)
            }
            Tok::OneTy => {
                self.next();
                Ok(Ty::One)
            }
            Tok::LParen => {
                self.next();
                let t = self.ty_stlc()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => self.fail(&["a type"]),
        }
    }

    // Types: positive and negative (CBPV and polarized).

    fn ty_p(&mut self) -> PResult<TyP> {
        let mut a = self.ty_p_prod()?;
        while *self.peek() == Tok::Plus {
            self.next();
            a = TyP::sum(a, self.ty_p_prod()?);
        }
        Ok(a)
    }

    fn ty_p_prod(&mut self) -> PResult<TyP> {
        let mut a = self.ty_p_atom()?;
        while *self.peek() == Tok::Star {
            self.next();
            a = TyP::prod(a, self.ty_p_atom()?);
        }
        Ok(a)
    }

    fn ty_p_atom(&mut self) -> PResult<TyP> {
        match self.peek() {
            Tok::AtomPos => {
                self.next();
                Ok(TyP::atom(&self.ident()?))
            }
            Tok::ZeroTy => {
                self.next();
                Ok(TyP::Zero)
            }
            Tok::OneTy => {
                self.next();
                Ok(TyP::One)
            }
            Tok::KwU => {
                self.next();
                Ok(TyP::thunk(self.ty_n_atom()?))
            }
            Tok::LParen => {
                self.next();
                let t = self.ty_p()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => self.fail(&["a positive type"]),
        }
    }

    fn starts_ty_p(&self) -> bool {
        matches!(
            self.peek(),
            Tok::AtomPos | Tok::ZeroTy | Tok::OneTy | Tok::KwU | Tok::LParen
        )
    }

    fn ty_n(&mut self) -> PResult<TyN> {
        // `P -> N` vs a plain negative type: try the domain first.
        if self.starts_ty_p() {
            let save = self.pos;
            if let Ok(p) = self.ty_p() {
                if *self.peek() == Tok::Arrow {
                    self.next();
                    let n = self.ty_n()?;
                    return Ok(TyN::arr(p, n));
                }
            }
            self.pos = save;
        }
        let mut a = self.ty_n_atom()?;
        while *self.peek() == Tok::Amp {
            self.next();
            a = TyN::with(a, self.ty_n_atom()?);
        }
        Ok(a)
    }

    fn ty_n_atom(&mut self) -> PResult<TyN> {
        match self.peek() {
            Tok::AtomNeg => {
                self.next();
                Ok(TyN::atom(&self.ident()?))
            }
            Tok::KwTop => {
                self.next();
                Ok(TyN::Top)
            }
            Tok::KwF => {
                self.next();
                Ok(TyN::comp(self.ty_p_atom()?))
            }
            Tok::LParen => {
                self.next();
                let t = self.ty_n()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => self.fail(&["a negative type"]),
        }
    }

    /// Type annotation on `\x:T.` / `let x : P` / `inl[T]` etc.
    fn annot(&mut self) -> PResult<SurfaceType> {
        match self.calculus {
            Calculus::Stlc => Ok(SurfaceType::Stlc(self.ty_stlc()?)),
            Calculus::Cbpv | Calculus::Polarized => Ok(SurfaceType::Pos(self.ty_p()?)),
        }
    }

    /// The annotation of `abort[T]`: a result type, so negative for CBPV.
    fn annot_result(&mut self) -> PResult<SurfaceType> {
        match self.calculus {
            Calculus::Stlc => Ok(SurfaceType::Stlc(self.ty_stlc()?)),
            Calculus::Cbpv | Calculus::Polarized => Ok(SurfaceType::Neg(self.ty_n()?)),
        }
    }

    // Terms.

    fn term(&mut self) -> PResult<SurfaceTerm> {
        match self.peek() {
            Tok::Lambda => {
                self.next();
                if self.calculus == Calculus::Polarized {
                    self.expect(Tok::LBracket)?;
                    let dom = self.ty_p()?;
                    let cod = if *self.peek() == Tok::Arrow {
                        self.next();
                        Some(self.ty_n()?)
                    } else {
                        None
                    };
                    self.expect(Tok::RBracket)?;
                    let clauses = self.clauses()?;
                    Ok(SurfaceTerm::AbsPat(dom, cod, clauses))
                } else {
                    let x = self.ident()?;
                    self.expect(Tok::Colon)?;
                    let ty = self.annot()?;
                    self.expect(Tok::Dot)?;
                    let body = self.term()?;
                    Ok(SurfaceTerm::Abs(x, ty, Box::new(body)))
                }
            }
            Tok::KwCase if self.calculus != Calculus::Polarized => {
                self.next();
                let scrut = self.term()?;
                self.expect(Tok::KwOf)?;
                self.expect(Tok::LBrace)?;
                self.expect(Tok::KwInl)?;
                let x = self.ident()?;
                self.expect(Tok::Arrow)?;
                let l = self.term()?;
                self.expect(Tok::Semi)?;
                self.expect(Tok::KwInr)?;
                let y = self.ident()?;
                self.expect(Tok::Arrow)?;
                let r = self.term()?;
                self.expect(Tok::RBrace)?;
                Ok(SurfaceTerm::Case(
                    Box::new(scrut),
                    x,
                    Box::new(l),
                    y,
                    Box::new(r),
                ))
            }
            Tok::KwLet if self.calculus == Calculus::Cbpv => {
                self.next();
                let x = self.ident()?;
                self.expect(Tok::Colon)?;
                let ty = self.annot()?;
                self.expect(Tok::BackArrow)?;
                let t = self.term()?;
                self.expect(Tok::KwIn)?;
                let u = self.term()?;
                Ok(SurfaceTerm::Let(x, ty, Box::new(t), Box::new(u)))
            }
            Tok::KwSplit if self.calculus == Calculus::Cbpv => {
                self.next();
                let v = self.term()?;
                self.expect(Tok::KwAs)?;
                self.expect(Tok::LParen)?;
                let x = self.ident()?;
                self.expect(Tok::Comma)?;
                let y = self.ident()?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::KwIn)?;
                let t = self.term()?;
                Ok(SurfaceTerm::Split(Box::new(v), x, y, Box::new(t)))
            }
            Tok::KwBind if self.calculus == Calculus::Polarized => {
                self.next();
                let ann = if *self.peek() == Tok::LBracket {
                    self.next();
                    let n = self.ty_n()?;
                    self.expect(Tok::RBracket)?;
                    Some(n)
                } else {
                    None
                };
                let scrut = self.term()?;
                let clauses = self.clauses()?;
                Ok(SurfaceTerm::BindPat(ann, Box::new(scrut), clauses))
            }
            _ => self.app_term(),
        }
    }

    fn app_term(&mut self) -> PResult<SurfaceTerm> {
        let mut head = self.prefix_term()?;
        while self.starts_atom() {
            let arg = self.atom_term()?;
            head = SurfaceTerm::App(Box::new(head), Box::new(arg));
        }
        Ok(head)
    }

    fn prefix_term(&mut self) -> PResult<SurfaceTerm> {
        match self.peek() {
            Tok::KwFst => {
                self.next();
                Ok(SurfaceTerm::Fst(Box::new(self.atom_term()?)))
            }
            Tok::KwSnd => {
                self.next();
                Ok(SurfaceTerm::Snd(Box::new(self.atom_term()?)))
            }
            Tok::KwInl | Tok::KwInr => {
                let left = *self.peek() == Tok::KwInl;
                self.next();
                self.expect(Tok::LBracket)?;
                let ty = self.annot()?;
                self.expect(Tok::RBracket)?;
                let t = Box::new(self.atom_term()?);
                Ok(if left {
                    SurfaceTerm::Inl(ty, t)
                } else {
                    SurfaceTerm::Inr(ty, t)
                })
            }
            Tok::KwAbort if self.calculus != Calculus::Polarized => {
                self.next();
                self.expect(Tok::LBracket)?;
                let ty = self.annot_result()?;
                self.expect(Tok::RBracket)?;
                Ok(SurfaceTerm::Abort(ty, Box::new(self.atom_term()?)))
            }
            Tok::KwThunk if self.calculus != Calculus::Stlc => {
                self.next();
                Ok(SurfaceTerm::Thunk(Box::new(self.atom_term()?)))
            }
            Tok::KwForce if self.calculus != Calculus::Stlc => {
                self.next();
                Ok(SurfaceTerm::Force(Box::new(self.atom_term()?)))
            }
            Tok::KwRet if self.calculus != Calculus::Stlc => {
                self.next();
                Ok(SurfaceTerm::Ret(Box::new(self.atom_term()?)))
            }
            _ => self.atom_term(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::LParen)
            || (self.calculus != Calculus::Stlc && matches!(self.peek(), Tok::LAngle))
    }

    fn atom_term(&mut self) -> PResult<SurfaceTerm> {
        match self.peek() {
            Tok::Ident(_) => Ok(SurfaceTerm::Var(self.ident()?)),
            Tok::LParen => {
                self.next();
                if *self.peek() == Tok::RParen {
                    self.next();
                    return Ok(SurfaceTerm::Unit);
                }
                let t = self.term()?;
                if *self.peek() == Tok::Comma {
                    self.next();
                    let u = self.term()?;
                    self.expect(Tok::RParen)?;
                    Ok(SurfaceTerm::Pair(Box::new(t), Box::new(u)))
                } else {
                    self.expect(Tok::RParen)?;
                    Ok(t)
                }
            }
            Tok::LAngle if self.calculus != Calculus::Stlc => {
                self.next();
                if *self.peek() == Tok::RAngle {
                    self.next();
                    return Ok(SurfaceTerm::UnitN);
                }
                let t = self.term()?;
                self.expect(Tok::Comma)?;
                let u = self.term()?;
                self.expect(Tok::RAngle)?;
                Ok(SurfaceTerm::PairN(Box::new(t), Box::new(u)))
            }
            _ => self.fail(&["a term"]),
        }
    }

    // Polarized clause binders.

    fn clauses(&mut self) -> PResult<Vec<Clause>> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        if *self.peek() != Tok::RBrace {
            loop {
                let pat = self.pattern()?;
                self.expect(Tok::Arrow)?;
                let body = self.term()?;
                out.push(Clause { pat, body });
                if *self.peek() == Tok::Pipe {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(out)
    }

    fn pattern(&mut self) -> PResult<Pattern> {
        match self.peek() {
            Tok::KwInl => {
                self.next();
                Ok(Pattern::Inl(Box::new(self.pattern()?)))
            }
            Tok::KwInr => {
                self.next();
                Ok(Pattern::Inr(Box::new(self.pattern()?)))
            }
            _ => self.pattern_atom(),
        }
    }

    fn pattern_atom(&mut self) -> PResult<Pattern> {
        match self.peek() {
            Tok::Ident(_) => Ok(Pattern::Var(self.ident()?)),
            Tok::LParen => {
                self.next();
                if *self.peek() == Tok::RParen {
                    self.next();
                    return Ok(Pattern::Unit);
                }
                let p = self.pattern()?;
                if *self.peek() == Tok::Comma {
                    self.next();
                    let q = self.pattern()?;
                    self.expect(Tok::RParen)?;
                    Ok(Pattern::Pair(Box::new(p), Box::new(q)))
                } else {
                    self.expect(Tok::RParen)?;
                    Ok(p)
                }
            }
            _ => self.fail(&["a pattern"]),
        }
    }

    // Declarations and files.

    fn decl_type(&mut self) -> PResult<SurfaceType> {
        match self.calculus {
            Calculus::Stlc => Ok(SurfaceType::Stlc(self.ty_stlc()?)),
            Calculus::Cbpv => Ok(SurfaceType::Pos(self.ty_p()?)),
            Calculus::Polarized => {
                // `a+ NAME` alone is an atom hypothesis, but a leading
                // `a+` can also open the domain of an arrow type.
                let save = self.pos;
                if let Ok(n) = self.ty_n() {
                    if *self.peek() == Tok::Semi {
                        return Ok(SurfaceType::Neg(n));
                    }
                }
                self.pos = save;
                if *self.peek() == Tok::AtomPos {
                    self.next();
                    Ok(SurfaceType::HypAtom(self.ident()?))
                } else {
                    Ok(SurfaceType::Neg(self.ty_n()?))
                }
            }
        }
    }

    fn file(&mut self) -> PResult<SourceFile> {
        let mut decls = Vec::new();
        while *self.peek() == Tok::KwVar {
            self.next();
            let name = self.ident()?;
            self.expect(Tok::Colon)?;
            let ty = self.decl_type()?;
            self.expect(Tok::Semi)?;
            decls.push((name, ty));
        }
        self.expect(Tok::KwTerm)?;
        let term = self.term()?;
        self.expect(Tok::Eof)?;
        Ok(SourceFile { decls, term })
    }
}

/// Parse a source file for the given calculus.
pub fn parse(text: &str, calculus: Calculus) -> Result<SourceFile, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        calculus,
    };
    p.file()
}

/// Parse a bare term (no declarations), used by tests and tools.
pub fn parse_term(text: &str, calculus: Calculus) -> Result<SurfaceTerm, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        calculus,
    };
    let t = p.term()?;
    p.expect(Tok::Eof)?;
    Ok(t)
}
