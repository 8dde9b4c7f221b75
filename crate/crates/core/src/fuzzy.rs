//! Lattice-graded ambiguous representations.
//!
//! A representation is a dense grade table `v(A, B) ∈ L` over nonempty
//! `A ⊆ X`, `B ⊆ Y`. Its subgraph `{(A, B, α) : α ≤ v(A, B)}` is the
//! relational form; `cut(α)` is the crisp relation `{v ≥ α}`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::crisp::{check_same, CrispAmbRep, CrispError};
use crate::hyperspace::{FiniteSpace, SetFamily, Subset};
use crate::lattice::{Elem, FiniteLattice, TNorm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FuzzyError {
    #[error("v({a:?}, {b:?}) = {grade} exceeds v({subset:?}, {b:?}) = {smaller}")]
    NotAntitoneInA {
        a: Vec<String>,
        subset: Vec<String>,
        b: Vec<String>,
        grade: String,
        smaller: String,
    },
    #[error("v({a:?}, {b:?}) = {grade} exceeds v({a:?}, {superset:?}) = {larger}")]
    NotIsotoneInB {
        a: Vec<String>,
        b: Vec<String>,
        superset: Vec<String>,
        grade: String,
        larger: String,
    },
    #[error("v({a:?}, Y) = {grade}, expected top")]
    FullTargetNotTop { a: Vec<String>, grade: String },
    #[error("grade given twice for ({a:?}, {b:?})")]
    DuplicateGrade { a: Vec<String>, b: Vec<String> },
    #[error("cut family inconsistent at {alpha} for ({a:?}, {b:?})")]
    CutFamilyInconsistent {
        alpha: String,
        a: Vec<String>,
        b: Vec<String>,
    },
    #[error("expected {expected} cuts, got {found}")]
    CutCount { expected: usize, found: usize },
    #[error("lattices differ")]
    LatticeMismatch,
    #[error("t-norm has {found} elements, lattice has {expected}")]
    TNormMismatch { expected: usize, found: usize },
    #[error("lattice is a chain: every pair of grades is comparable")]
    LatticeIsChain,
    #[error("target needs at least two points")]
    SpaceTooSmall,
    #[error("triple set misses the floor at ({a:?}, {b:?})")]
    MissingFloor { a: Vec<String>, b: Vec<String> },
    #[error("grades at ({a:?}, {b:?}) are not a principal down-set")]
    NotPrincipal { a: Vec<String>, b: Vec<String> },
    #[error(transparent)]
    Crisp(#[from] CrispError),
}

/// An `L`-ambiguous representation `X → Y` as a dense grade table.
#[derive(Clone, PartialEq, Eq)]
pub struct LFuzzyAmbRep {
    source: FiniteSpace,
    target: FiniteSpace,
    lattice: FiniteLattice,
    grades: Vec<Elem>,
}

impl fmt::Debug for LFuzzyAmbRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (a, b) in self.cells() {
            m.entry(&(a, b), &self.lattice.label(self.grade(a, b)));
        }
        m.finish()
    }
}

impl LFuzzyAmbRep {
    pub(crate) fn from_fn_unchecked(
        source: FiniteSpace,
        target: FiniteSpace,
        lattice: FiniteLattice,
        mut grade: impl FnMut(Subset, Subset) -> Elem,
    ) -> Self {
        let (sm, tm) = (source.mask_count(), target.mask_count());
        let mut grades = vec![lattice.bottom(); sm * tm];
        for a in source.subsets() {
            for b in target.subsets() {
                grades[a.0 as usize * tm + b.0 as usize] = grade(a, b);
            }
        }
        Self {
            source,
            target,
            lattice,
            grades,
        }
    }

    /// Builds a table from a grade function and checks the axioms.
    pub fn from_fn(
        source: FiniteSpace,
        target: FiniteSpace,
        lattice: FiniteLattice,
        grade: impl FnMut(Subset, Subset) -> Elem,
    ) -> Result<Self, FuzzyError> {
        let r = Self::from_fn_unchecked(source, target, lattice, grade);
        r.check()?;
        Ok(r)
    }

    /// Validates explicit grades; omitted cells default to 0, or 1 when
    /// `B = Y`.
    pub fn validate(
        source: FiniteSpace,
        target: FiniteSpace,
        lattice: FiniteLattice,
        entries: impl IntoIterator<Item = (Subset, Subset, Elem)>,
    ) -> Result<Self, FuzzyError> {
        let full = target.full();
        let (top, bottom) = (lattice.top(), lattice.bottom());
        let mut r = Self::from_fn_unchecked(source, target, lattice, |_, b| {
            if b == full {
                top
            } else {
                bottom
            }
        });
        let mut seen = BTreeSet::new();
        for (a, b, g) in entries {
            for (s, space) in [(a, &r.source), (b, &r.target)] {
                if s.is_empty() {
                    return Err(CrispError::EmptySubset.into());
                }
                if !s.is_subset_of(space.full()) {
                    return Err(CrispError::OutOfRange {
                        mask: s.0,
                        size: space.size(),
                    }
                    .into());
                }
            }
            if !seen.insert((a, b)) {
                return Err(FuzzyError::DuplicateGrade {
                    a: r.source.subset_labels(a),
                    b: r.target.subset_labels(b),
                });
            }
            let i = r.index(a, b);
            r.grades[i] = g;
        }
        r.check()?;
        Ok(r)
    }

    /// Checks c′), then b′), then a′), reporting the first witness.
    pub fn check(&self) -> Result<(), FuzzyError> {
        let (x, y, l) = (&self.source, &self.target, &self.lattice);
        for a in x.subsets() {
            let g = self.grade(a, y.full());
            if g != l.top() {
                return Err(FuzzyError::FullTargetNotTop {
                    a: x.subset_labels(a),
                    grade: l.label(g).into(),
                });
            }
        }
        for (a, b) in self.cells() {
            let g = self.grade(a, b);
            for p in 0..y.size() {
                let bigger = b.union(Subset::singleton(p));
                let h = self.grade(a, bigger);
                if !l.leq(g, h) {
                    return Err(FuzzyError::NotIsotoneInB {
                        a: x.subset_labels(a),
                        b: y.subset_labels(b),
                        superset: y.subset_labels(bigger),
                        grade: l.label(g).into(),
                        larger: l.label(h).into(),
                    });
                }
            }
        }
        for (a, b) in self.cells() {
            let g = self.grade(a, b);
            for p in a.points() {
                let smaller = Subset(a.0 & !(1 << p));
                if smaller.is_empty() {
                    continue;
                }
                let h = self.grade(smaller, b);
                if !l.leq(g, h) {
                    return Err(FuzzyError::NotAntitoneInA {
                        a: x.subset_labels(a),
                        subset: x.subset_labels(smaller),
                        b: y.subset_labels(b),
                        grade: l.label(g).into(),
                        smaller: l.label(h).into(),
                    });
                }
            }
        }
        Ok(())
    }

    #[inline]
    fn index(&self, a: Subset, b: Subset) -> usize {
        a.0 as usize * self.target.mask_count() + b.0 as usize
    }

    pub fn source(&self) -> &FiniteSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteSpace {
        &self.target
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    #[inline]
    pub fn grade(&self, a: Subset, b: Subset) -> Elem {
        self.grades[self.index(a, b)]
    }

    /// All `(A, B)` cells in ascending mask order.
    pub fn cells(&self) -> impl Iterator<Item = (Subset, Subset)> + '_ {
        self.source
            .subsets()
            .flat_map(move |a| self.target.subsets().map(move |b| (a, b)))
    }

    /// `{(A, B, α) : α ≤ v(A, B)}`.
    pub fn subgraph(&self) -> BTreeSet<(Subset, Subset, Elem)> {
        self.cells()
            .flat_map(|(a, b)| {
                let g = self.grade(a, b);
                self.lattice
                    .elements()
                    .filter(move |&e| self.lattice.leq(e, g))
                    .map(move |e| (a, b, e))
            })
            .collect()
    }

    /// Recovers a representation from a triple set, which must contain the
    /// floor `exp X × exp Y × {0}` and have a principal down-set of grades
    /// at every cell.
    pub fn from_subgraph(
        source: FiniteSpace,
        target: FiniteSpace,
        lattice: FiniteLattice,
        triples: &BTreeSet<(Subset, Subset, Elem)>,
    ) -> Result<Self, FuzzyError> {
        let mut grades = Vec::new();
        for a in source.subsets() {
            for b in target.subsets() {
                let present: Vec<Elem> = lattice
                    .elements()
                    .filter(|&e| triples.contains(&(a, b, e)))
                    .collect();
                if !present.contains(&lattice.bottom()) {
                    return Err(FuzzyError::MissingFloor {
                        a: source.subset_labels(a),
                        b: target.subset_labels(b),
                    });
                }
                let g = lattice.family_join(present.iter().copied());
                let principal = lattice
                    .elements()
                    .all(|e| lattice.leq(e, g) == present.contains(&e));
                if !principal {
                    return Err(FuzzyError::NotPrincipal {
                        a: source.subset_labels(a),
                        b: target.subset_labels(b),
                    });
                }
                grades.push(((a, b), g));
            }
        }
        let tm = target.mask_count();
        Self::from_fn(source, target, lattice, |a, b| {
            let i = (a.0 as usize - 1) * (tm - 1) + b.0 as usize - 1;
            grades[i].1
        })
    }

    /// The crisp `α`-cut `{(A, B) : v(A, B) ≥ α}`.
    pub fn cut(&self, alpha: Elem) -> CrispAmbRep {
        let mut rows = vec![SetFamily::EMPTY; self.source.mask_count()];
        for (a, b) in self.cells() {
            if self.lattice.leq(alpha, self.grade(a, b)) {
                rows[a.0 as usize].insert(b);
            }
        }
        CrispAmbRep::from_rows_unchecked(self.source.clone(), self.target.clone(), rows)
    }

    /// All cuts, indexed by lattice element.
    pub fn cuts(&self) -> Vec<CrispAmbRep> {
        self.lattice.elements().map(|e| self.cut(e)).collect()
    }

    /// Reassembles a representation from its cuts via
    /// `v(A, B) = ⋁{α : (A, B) ∈ cut_α}`. The bottom cut is not consulted:
    /// every grade is at least 0.
    pub fn from_cuts(
        source: FiniteSpace,
        target: FiniteSpace,
        lattice: FiniteLattice,
        cuts: &[CrispAmbRep],
    ) -> Result<Self, FuzzyError> {
        if cuts.len() != lattice.len() {
            return Err(FuzzyError::CutCount {
                expected: lattice.len(),
                found: cuts.len(),
            });
        }
        for c in cuts {
            check_same(c.source(), &source)?;
            check_same(c.target(), &target)?;
        }
        let nonzero: Vec<Elem> = lattice
            .elements()
            .filter(|&e| e != lattice.bottom())
            .collect();
        let inconsistent = |alpha: Elem, a: Subset, b: Subset| FuzzyError::CutFamilyInconsistent {
            alpha: lattice.label(alpha).into(),
            a: source.subset_labels(a),
            b: target.subset_labels(b),
        };
        for &alpha in &nonzero {
            for &beta in &nonzero {
                if alpha != beta && lattice.leq(alpha, beta) {
                    if let Some((a, b)) = cuts[beta.0]
                        .pairs()
                        .find(|&(a, b)| !cuts[alpha.0].contains(a, b))
                    {
                        return Err(inconsistent(alpha, a, b));
                    }
                }
            }
        }
        let r = Self::from_fn_unchecked(source.clone(), target.clone(), lattice.clone(), |a, b| {
            lattice.family_join(nonzero.iter().copied().filter(|e| cuts[e.0].contains(a, b)))
        });
        for &alpha in &nonzero {
            let got = r.cut(alpha);
            if got != cuts[alpha.0] {
                let (a, b) = r
                    .cells()
                    .find(|&(a, b)| got.contains(a, b) != cuts[alpha.0].contains(a, b))
                    .expect("cuts differ somewhere");
                return Err(inconsistent(alpha, a, b));
            }
        }
        r.check()?;
        Ok(r)
    }

    /// `R_L`: grade 1 on the pairs of `R`, 0 elsewhere.
    pub fn embed_crisp(r: &CrispAmbRep, lattice: &FiniteLattice) -> Self {
        Self::from_fn_unchecked(
            r.source().clone(),
            r.target().clone(),
            lattice.clone(),
            |a, b| {
                if r.contains(a, b) {
                    lattice.top()
                } else {
                    lattice.bottom()
                }
            },
        )
    }

    /// Grade 1 when `A ⊆ B`, else 0.
    pub fn identity(space: &FiniteSpace, lattice: &FiniteLattice) -> Self {
        Self::embed_crisp(&CrispAmbRep::identity(space), lattice)
    }

    /// Grade 1 everywhere.
    pub fn top(source: &FiniteSpace, target: &FiniteSpace, lattice: &FiniteLattice) -> Self {
        Self::from_fn_unchecked(source.clone(), target.clone(), lattice.clone(), |_, _| {
            lattice.top()
        })
    }

    /// Grade 1 only at `B = Y`.
    pub fn bottom(source: &FiniteSpace, target: &FiniteSpace, lattice: &FiniteLattice) -> Self {
        Self::embed_crisp(&CrispAmbRep::bottom(source, target), lattice)
    }

    fn check_lattice(&self, other: &FiniteLattice) -> Result<(), FuzzyError> {
        if self.lattice == *other {
            Ok(())
        } else {
            Err(FuzzyError::LatticeMismatch)
        }
    }

    fn check_tnorm(&self, tnorm: &TNorm) -> Result<(), FuzzyError> {
        if tnorm.size() == self.lattice.len() {
            Ok(())
        } else {
            Err(FuzzyError::TNormMismatch {
                expected: self.lattice.len(),
                found: tnorm.size(),
            })
        }
    }

    /// `v(A, C) = ⋁_B v_R(A, B) ∗ v_S(B, C)`.
    pub fn compose(&self, other: &Self, tnorm: &TNorm) -> Result<Self, FuzzyError> {
        check_same(&self.target, &other.source)?;
        self.check_lattice(&other.lattice)?;
        self.check_tnorm(tnorm)?;
        let l = &self.lattice;
        Ok(Self::from_fn_unchecked(
            self.source.clone(),
            other.target.clone(),
            l.clone(),
            |a, c| {
                l.family_join(
                    self.target
                        .subsets()
                        .map(|b| tnorm.apply(self.grade(a, b), other.grade(b, c))),
                )
            },
        ))
    }

    /// The cutwise pseudo-inverse: `(R^⊥)_α = ⋂_{β ≪ α} (R_β)^⊥`, with
    /// `≪` equal to `≤` on a finite lattice.
    pub fn sms(&self) -> Self {
        let l = &self.lattice;
        let inverted: Vec<CrispAmbRep> = self.cuts().iter().map(CrispAmbRep::sms).collect();
        let cuts: Vec<CrispAmbRep> = l
            .elements()
            .map(|alpha| {
                l.elements()
                    .filter(|&beta| l.way_below(beta, alpha))
                    .map(|beta| inverted[beta.0].clone())
                    .reduce(|acc, r| acc.meet(&r).expect("cuts share spaces"))
                    .expect("bottom is way below everything")
            })
            .collect();
        Self::from_cuts(self.target.clone(), self.source.clone(), l.clone(), &cuts)
            .expect("cutwise pseudo-inverse is consistent")
    }

    pub fn is_pseudo_invertible(&self) -> bool {
        self.sms().sms() == *self
    }

    fn zip(&self, other: &Self, op: impl Fn(Elem, Elem) -> Elem) -> Result<Self, FuzzyError> {
        check_same(&self.source, &other.source)?;
        check_same(&self.target, &other.target)?;
        self.check_lattice(&other.lattice)?;
        let grades = self
            .grades
            .iter()
            .zip(&other.grades)
            .map(|(&a, &b)| op(a, b))
            .collect();
        Ok(Self {
            grades,
            ..self.clone()
        })
    }

    /// Pointwise join.
    pub fn join(&self, other: &Self) -> Result<Self, FuzzyError> {
        self.zip(other, |a, b| self.lattice.join(a, b))
    }

    /// Pointwise meet, i.e. subgraph intersection.
    pub fn meet(&self, other: &Self) -> Result<Self, FuzzyError> {
        self.zip(other, |a, b| self.lattice.meet(a, b))
    }

    pub fn is_below(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.lattice == other.lattice
            && self
                .grades
                .iter()
                .zip(&other.grades)
                .all(|(&a, &b)| self.lattice.leq(a, b))
    }

    /// Least upper bound of a family; `⊥` for the empty family.
    pub fn sup_family(
        source: &FiniteSpace,
        target: &FiniteSpace,
        lattice: &FiniteLattice,
        family: &[Self],
    ) -> Result<Self, FuzzyError> {
        family
            .iter()
            .try_fold(Self::bottom(source, target, lattice), |acc, r| acc.join(r))
    }

    /// Greatest lower bound of a family; `⊤` for the empty family.
    pub fn inf_family(
        source: &FiniteSpace,
        target: &FiniteSpace,
        lattice: &FiniteLattice,
        family: &[Self],
    ) -> Result<Self, FuzzyError> {
        family
            .iter()
            .try_fold(Self::top(source, target, lattice), |acc, r| acc.meet(r))
    }
}

/// Two representations whose subgraph union is not a representation.
#[derive(Debug, Clone)]
pub struct UnionCounterexample {
    pub left: LFuzzyAmbRep,
    pub right: LFuzzyAmbRep,
    pub a: Subset,
    pub b: Subset,
    pub alpha: Elem,
    pub beta: Elem,
}

impl UnionCounterexample {
    /// The subgraph union of the two representations.
    pub fn union(&self) -> BTreeSet<(Subset, Subset, Elem)> {
        let mut u = self.left.subgraph();
        u.extend(self.right.subgraph());
        u
    }

    /// Checks that both grades occur at the witness cell of the union while
    /// their join does not, and that the union is rejected.
    pub fn verify(&self) -> bool {
        let l = self.left.lattice();
        let u = self.union();
        let j = l.join(self.alpha, self.beta);
        u.contains(&(self.a, self.b, self.alpha))
            && u.contains(&(self.a, self.b, self.beta))
            && !u.contains(&(self.a, self.b, j))
            && LFuzzyAmbRep::from_subgraph(
                self.left.source().clone(),
                self.left.target().clone(),
                l.clone(),
                &u,
            )
            .is_err()
    }
}

/// Builds `⊥ ∪ {({x₁}, F, γ) : y ∈ F, γ ≤ α}` and its twin with grade `β`
/// through the same point, for incomparable `α, β`.
pub fn union_counterexample(
    source: &FiniteSpace,
    target: &FiniteSpace,
    lattice: &FiniteLattice,
) -> Result<UnionCounterexample, FuzzyError> {
    let (alpha, beta) = lattice.incomparable_pair().ok_or(FuzzyError::LatticeIsChain)?;
    if target.size() < 2 {
        return Err(FuzzyError::SpaceTooSmall);
    }
    let x1 = Subset::singleton(0);
    let y = 0;
    let graded = |g: Elem| {
        LFuzzyAmbRep::from_fn(source.clone(), target.clone(), lattice.clone(), |a, b| {
            if b == target.full() {
                lattice.top()
            } else if a == x1 && b.contains(y) {
                g
            } else {
                lattice.bottom()
            }
        })
    };
    Ok(UnionCounterexample {
        left: graded(alpha)?,
        right: graded(beta)?,
        a: x1,
        b: Subset::singleton(y),
        alpha,
        beta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x2() -> FiniteSpace {
        FiniteSpace::numbered("x", 2)
    }

    fn chain3() -> FiniteLattice {
        FiniteLattice::chain(3)
    }

    const S1: Subset = Subset(0b01);
    const S2: Subset = Subset(0b10);
    const S12: Subset = Subset(0b11);

    #[test]
    fn bounds_and_identity_validate() {
        let (x, l) = (x2(), chain3());
        for r in [
            LFuzzyAmbRep::identity(&x, &l),
            LFuzzyAmbRep::top(&x, &x, &l),
            LFuzzyAmbRep::bottom(&x, &x, &l),
        ] {
            r.check().unwrap();
        }
        let bot = LFuzzyAmbRep::validate(x.clone(), x.clone(), l.clone(), []).unwrap();
        assert_eq!(bot, LFuzzyAmbRep::bottom(&x, &x, &l));
    }

    #[test]
    fn validation_witnesses() {
        let (x, l) = (x2(), chain3());
        let m = l.find("1/2").unwrap();
        let err = LFuzzyAmbRep::validate(x.clone(), x.clone(), l.clone(), [(S1, S12, m)]);
        assert!(matches!(err, Err(FuzzyError::FullTargetNotTop { .. })));
        let err = LFuzzyAmbRep::validate(x.clone(), x.clone(), l.clone(), [(S12, S1, m)]);
        assert!(matches!(err, Err(FuzzyError::NotAntitoneInA { .. })));
        let err = LFuzzyAmbRep::validate(
            x.clone(),
            FiniteSpace::numbered("y", 3),
            l.clone(),
            [(S1, Subset(0b001), m)],
        );
        assert!(matches!(err, Err(FuzzyError::NotIsotoneInB { .. })));
        let err = LFuzzyAmbRep::validate(x.clone(), x.clone(), l, [(S1, S1, m), (S1, S1, m)]);
        assert!(matches!(err, Err(FuzzyError::DuplicateGrade { .. })));
    }

    #[test]
    fn cuts_of_identity_and_bounds() {
        let (x, l) = (x2(), chain3());
        let id = LFuzzyAmbRep::identity(&x, &l);
        assert_eq!(id.cut(l.find("1/2").unwrap()), CrispAmbRep::identity(&x));
        assert_eq!(id.cut(l.bottom()), CrispAmbRep::top(&x, &x));
        assert_eq!(
            LFuzzyAmbRep::bottom(&x, &x, &l).cut(l.top()),
            CrispAmbRep::bottom(&x, &x)
        );
        let back = LFuzzyAmbRep::from_cuts(x.clone(), x.clone(), l.clone(), &id.cuts()).unwrap();
        assert_eq!(back, id);
    }

    #[test]
    fn inconsistent_cut_family() {
        let x = x2();
        let l = FiniteLattice::boolean_square();
        let (a, b) = (l.find("a").unwrap(), l.find("b").unwrap());
        let mut cuts = vec![CrispAmbRep::bottom(&x, &x); 4];
        cuts[l.bottom().0] = CrispAmbRep::top(&x, &x);
        cuts[a.0] = CrispAmbRep::top(&x, &x);
        cuts[b.0] = CrispAmbRep::top(&x, &x);
        let err = LFuzzyAmbRep::from_cuts(x.clone(), x, l, &cuts).unwrap_err();
        assert!(matches!(err, FuzzyError::CutFamilyInconsistent { .. }), "{err}");
    }

    #[test]
    fn composition_examples() {
        let (x, l) = (x2(), chain3());
        let m = l.find("1/2").unwrap();
        let meet = TNorm::meet(&l);
        let half = LFuzzyAmbRep::from_fn(x.clone(), x.clone(), l.clone(), |_, b| {
            if b == S12 {
                l.top()
            } else {
                m
            }
        })
        .unwrap();
        let sq = half.compose(&half, &meet).unwrap();
        assert_eq!(sq, half);
        let id = LFuzzyAmbRep::identity(&x, &l);
        assert_eq!(id.compose(&half, &meet).unwrap(), half);
        assert_eq!(
            half.compose(&LFuzzyAmbRep::bottom(&x, &x, &l), &meet)
                .unwrap(),
            LFuzzyAmbRep::bottom(&x, &x, &l)
        );
        let luk = TNorm::lukasiewicz(&l).unwrap();
        let sq = half.compose(&half, &luk).unwrap();
        assert_eq!(sq.grade(S1, S2), m);
    }

    #[test]
    fn sms_examples() {
        let (x, l) = (x2(), chain3());
        let id = LFuzzyAmbRep::identity(&x, &l);
        assert_eq!(id.sms(), id);
        let top = LFuzzyAmbRep::top(&x, &x, &l);
        let crisp = CrispAmbRep::top(&x, &x).sms();
        for alpha in l.elements().filter(|&e| e != l.bottom()) {
            assert_eq!(top.sms().cut(alpha), crisp);
        }
    }

    #[test]
    fn union_counterexample_square_and_chain() {
        let x = x2();
        let sq = FiniteLattice::boolean_square();
        let w = union_counterexample(&x, &x, &sq).unwrap();
        assert!(w.verify());
        assert_eq!(w.a, S1);
        assert_eq!(sq.join(w.alpha, w.beta), sq.top());
        w.left.join(&w.right).unwrap().check().unwrap();
        assert_eq!(
            union_counterexample(&x, &x, &chain3()).unwrap_err(),
            FuzzyError::LatticeIsChain
        );
        let one = FiniteSpace::numbered("y", 1);
        assert_eq!(
            union_counterexample(&x, &one, &sq).unwrap_err(),
            FuzzyError::SpaceTooSmall
        );
    }

    #[test]
    fn subgraph_round_trip() {
        let (x, l) = (x2(), chain3());
        let id = LFuzzyAmbRep::identity(&x, &l);
        let back =
            LFuzzyAmbRep::from_subgraph(x.clone(), x.clone(), l.clone(), &id.subgraph()).unwrap();
        assert_eq!(back, id);
        let mut holes = id.subgraph();
        holes.remove(&(S1, S2, l.bottom()));
        assert!(matches!(
            LFuzzyAmbRep::from_subgraph(x.clone(), x, l, &holes),
            Err(FuzzyError::MissingFloor { .. })
        ));
    }

    #[test]
    fn family_bounds() {
        let (x, l) = (x2(), chain3());
        let id = LFuzzyAmbRep::identity(&x, &l);
        let sup = LFuzzyAmbRep::sup_family(&x, &x, &l, std::slice::from_ref(&id)).unwrap();
        assert_eq!(sup, id);
        let inf = LFuzzyAmbRep::inf_family(&x, &x, &l, &[]).unwrap();
        assert_eq!(inf, LFuzzyAmbRep::top(&x, &x, &l));
        assert!(id.is_below(&inf));
    }
}
