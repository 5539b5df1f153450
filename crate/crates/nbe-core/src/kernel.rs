//! Contexts, de Bruijn indices, and order-preserving embeddings (OPEs).
//!
//! An OPE witnesses that one context is a sublist of another; it is the only
//! renaming currency used anywhere in this crate. OPEs are reified spines of
//! `Lift`/`Weak` steps over an `Empty` base, so they have decidable equality,
//! and they carry their source and target contexts for error reporting.

use std::fmt;

use thiserror::Error;

/// Anything that can serve as a context entry (a type code of some calculus).
pub trait Entry: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {}
impl<T: Clone + PartialEq + fmt::Debug + Send + Sync + 'static> Entry for T {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("context mismatch: target of first embedding differs from source of second")]
    ContextMismatch,
    #[error("index {index} out of range for context of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

/// A typing context: a snoc list of entries. The most recently added entry
/// has de Bruijn index zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ctx<T> {
    entries: Vec<T>,
}

impl<T: Entry> Ctx<T> {
    pub fn empty() -> Self {
        Ctx { entries: Vec::new() }
    }

    pub fn from_entries(entries: Vec<T>) -> Self {
        Ctx { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Context extended by one entry (which becomes index zero).
    pub fn snoc(&self, entry: T) -> Self {
        let mut entries = self.entries.clone();
        entries.push(entry);
        Ctx { entries }
    }

    /// Look up the entry at a de Bruijn index.
    pub fn get(&self, x: Idx) -> Option<&T> {
        let n = self.entries.len();
        if x.0 < n {
            Some(&self.entries[n - 1 - x.0])
        } else {
            None
        }
    }

    /// Entries from the outside in: index `len-1` first, index zero last.
    pub fn entries(&self) -> &[T] {
        &self.entries
    }
}

/// A de Bruijn index; valid for a context iff it is less than its length.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Idx(pub usize);

impl Idx {
    pub const ZERO: Idx = Idx(0);

    pub fn suc(self) -> Idx {
        Idx(self.0 + 1)
    }
}

/// One step of an OPE spine.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Step {
    /// Keep an entry present in both source and target.
    Lift,
    /// Skip an entry present only in the target.
    Weak,
}

/// An order-preserving embedding from `source` into `target`.
///
/// The spine is stored innermost-first: the last element acts on the
/// index-zero end of the contexts. Folding the spine over the empty
/// embedding reconstructs source and target.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ope<T> {
    steps: Vec<Step>,
    source: Ctx<T>,
    target: Ctx<T>,
}

impl<T: Entry> Ope<T> {
    /// The identity embedding: an all-`Lift` spine.
    pub fn id(ctx: &Ctx<T>) -> Self {
        Ope {
            steps: vec![Step::Lift; ctx.len()],
            source: ctx.clone(),
            target: ctx.clone(),
        }
    }

    /// Singleton weakening `wk`: the identity followed by one `Weak` step.
    pub fn wk(ctx: &Ctx<T>, entry: T) -> Self {
        Self::id(ctx).weak(entry)
    }

    /// Extend both ends by `entry`, keeping it (`Lift`).
    pub fn lift(&self, entry: T) -> Self {
        let mut steps = self.steps.clone();
        steps.push(Step::Lift);
        Ope {
            steps,
            source: self.source.snoc(entry.clone()),
            target: self.target.snoc(entry),
        }
    }

    /// Extend the target by `entry`, skipping it (`Weak`).
    pub fn weak(&self, entry: T) -> Self {
        let mut steps = self.steps.clone();
        steps.push(Step::Weak);
        Ope {
            steps,
            source: self.source.clone(),
            target: self.target.snoc(entry),
        }
    }

    pub fn source(&self) -> &Ctx<T> {
        &self.source
    }

    pub fn target(&self) -> &Ctx<T> {
        &self.target
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn is_id(&self) -> bool {
        self.steps.iter().all(|s| *s == Step::Lift)
    }

    /// Composition in diagram order: `self : Γ ⊆ Δ`, `other : Δ ⊆ Φ`,
    /// result `Γ ⊆ Φ`.
    pub fn compose(&self, other: &Ope<T>) -> Result<Ope<T>, KernelError> {
        if self.target != other.source {
            return Err(KernelError::ContextMismatch);
        }
        fn comp(a: &[Step], b: &[Step]) -> Vec<Step> {
            match b.split_last() {
                None => Vec::new(),
                Some((Step::Weak, brest)) => {
                    let mut v = comp(a, brest);
                    v.push(Step::Weak);
                    v
                }
                Some((Step::Lift, brest)) => match a.split_last() {
                    Some((Step::Lift, arest)) => {
                        let mut v = comp(arest, brest);
                        v.push(Step::Lift);
                        v
                    }
                    Some((Step::Weak, arest)) => {
                        let mut v = comp(arest, brest);
                        v.push(Step::Weak);
                        v
                    }
                    None => unreachable!("spine shorter than its target context"),
                },
            }
        }
        Ok(Ope {
            steps: comp(&self.steps, &other.steps),
            source: self.source.clone(),
            target: other.target.clone(),
        })
    }

    /// `compose` for internal call sites where a mismatch is a bug.
    pub fn then(&self, other: &Ope<T>) -> Ope<T> {
        self.compose(other).expect("ope composition: context mismatch")
    }

    /// Transport an index along the embedding.
    pub fn reindex(&self, x: Idx) -> Result<Idx, KernelError> {
        fn go(steps: &[Step], x: usize) -> Option<usize> {
            match steps.split_last() {
                None => None,
                Some((Step::Weak, rest)) => go(rest, x).map(|i| i + 1),
                Some((Step::Lift, rest)) => {
                    if x == 0 {
                        Some(0)
                    } else {
                        go(rest, x - 1).map(|i| i + 1)
                    }
                }
            }
        }
        go(&self.steps, x.0).map(Idx).ok_or(KernelError::IndexOutOfRange {
            index: x.0,
            len: self.source.len(),
        })
    }

    /// `reindex` for internal call sites where failure is a bug.
    pub fn apply(&self, x: Idx) -> Idx {
        self.reindex(x).expect("reindex: index out of range")
    }
}

/// The renaming contract: a structure-preserving action of OPEs, satisfying
/// the functor laws.
pub trait Renameable<T: Entry>: Clone + Send + Sync + 'static {
    fn rename(&self, ope: &Ope<T>) -> Self;
}

impl<T: Entry> Renameable<T> for Idx {
    fn rename(&self, ope: &Ope<T>) -> Self {
        ope.apply(*self)
    }
}

impl<T: Entry, A: Renameable<T>> Renameable<T> for Vec<A> {
    fn rename(&self, ope: &Ope<T>) -> Self {
        self.iter().map(|a| a.rename(ope)).collect()
    }
}

impl<T: Entry, A: Renameable<T>, B: Renameable<T>> Renameable<T> for (A, B) {
    fn rename(&self, ope: &Ope<T>) -> Self {
        (self.0.rename(ope), self.1.rename(ope))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Ctx<u8>;

    fn ctx(entries: &[u8]) -> C {
        Ctx::from_entries(entries.to_vec())
    }

    #[test]
    fn identity_spines() {
        assert_eq!(Ope::id(&ctx(&[])).steps(), &[] as &[Step]);
        assert_eq!(Ope::id(&ctx(&[0])).steps(), &[Step::Lift]);
        assert_eq!(Ope::id(&ctx(&[0, 1])).steps(), &[Step::Lift, Step::Lift]);
    }

    #[test]
    fn compose_identity_laws() {
        let tau = Ope::id(&ctx(&[0])).weak(1).lift(2);
        assert_eq!(Ope::id(tau.source()).compose(&tau).unwrap(), tau);
        assert_eq!(tau.compose(&Ope::id(tau.target())).unwrap(), tau);
    }

    #[test]
    fn compose_example() {
        // (Weak·Empty : []⊆[o]) ⨾ (Weak·Lift·Empty : [o]⊆[o,1]) = Weak·Weak·Empty
        let t1 = Ope::id(&ctx(&[])).weak(0);
        let t2 = Ope::id(&ctx(&[])).lift(0).weak(1);
        let c = t1.compose(&t2).unwrap();
        assert_eq!(c.steps(), &[Step::Weak, Step::Weak]);
        assert_eq!(c.source(), &ctx(&[]));
        assert_eq!(c.target(), &ctx(&[0, 1]));
    }

    #[test]
    fn compose_mismatch() {
        let t1 = Ope::id(&ctx(&[0]));
        let t2 = Ope::id(&ctx(&[1]));
        assert_eq!(t1.compose(&t2), Err(KernelError::ContextMismatch));
    }

    #[test]
    fn reindex_examples() {
        let g = ctx(&[0]);
        assert_eq!(Ope::id(&g).reindex(Idx(0)).unwrap(), Idx(0));
        // wk shifts by one
        assert_eq!(Ope::wk(&g, 7).reindex(Idx(0)).unwrap(), Idx(1));
        // Lift·Weak·Empty : [o] ⊆ [1,o], keeping the top entry
        let tau = Ope::id(&ctx(&[])).weak(1).lift(0);
        assert_eq!(tau.reindex(Idx(0)).unwrap(), Idx(0));
        assert_eq!(
            tau.reindex(Idx(1)),
            Err(KernelError::IndexOutOfRange { index: 1, len: 1 })
        );
    }

    #[test]
    fn ctx_lookup() {
        let g = ctx(&[10, 20, 30]);
        assert_eq!(g.get(Idx(0)), Some(&30));
        assert_eq!(g.get(Idx(2)), Some(&10));
        assert_eq!(g.get(Idx(3)), None);
    }
}
