//! Crisp ambiguous representations between finite spaces.
//!
//! A representation `R ⊆ exp X × exp Y` is stored as its map view
//! `A ↦ AR`: one [`SetFamily`] per nonempty `A ⊆ X`, indexed by the mask of
//! `A`. Every row is an inclusion hyperspace over `Y` containing `Y`, and the
//! rows shrink as `A` grows.

use std::fmt;

use thiserror::Error;

use crate::hyperspace::{FiniteSpace, InclusionHyperspace, SetFamily, SpaceError, Subset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrispError {
    #[error("pair uses an empty subset")]
    EmptySubset,
    #[error("subset mask {mask:#b} is outside a {size}-point space")]
    OutOfRange { mask: u32, size: usize },
    #[error("({a:?}, {b:?}) is related but ({a:?}, {superset:?}) is not")]
    NotUpwardClosedInB {
        a: Vec<String>,
        b: Vec<String>,
        superset: Vec<String>,
    },
    #[error("({a:?}, {b:?}) is related but ({subset:?}, {b:?}) is not")]
    NotAntitoneInA {
        a: Vec<String>,
        subset: Vec<String>,
        b: Vec<String>,
    },
    #[error("{a:?} is not related to the full target")]
    MissingFullTarget { a: Vec<String> },
    #[error("space mismatch: {left:?} vs {right:?}")]
    SpaceMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("point map has {found} entries for a {expected}-point space, or maps outside the target")]
    BadMap { expected: usize, found: usize },
    #[error("not a partition: {0}")]
    BadPartition(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// A crisp ambiguous representation `X → Y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CrispAmbRep {
    source: FiniteSpace,
    target: FiniteSpace,
    rows: Vec<SetFamily>,
}

impl fmt::Debug for CrispAmbRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for a in self.source.subsets() {
            m.entry(&a, &self.rows[a.0 as usize]);
        }
        m.finish()
    }
}

/// Closure in the Vietoris topology of a finite discrete hyperspace, where
/// every family is closed.
#[inline]
pub fn vietoris_closure(family: SetFamily) -> SetFamily {
    family
}

pub(crate) fn check_same(left: &FiniteSpace, right: &FiniteSpace) -> Result<(), CrispError> {
    if left == right {
        Ok(())
    } else {
        Err(CrispError::SpaceMismatch {
            left: left.labels().to_vec(),
            right: right.labels().to_vec(),
        })
    }
}

fn check_subset(space: &FiniteSpace, s: Subset) -> Result<(), CrispError> {
    if s.is_empty() {
        return Err(CrispError::EmptySubset);
    }
    if !s.is_subset_of(space.full()) {
        return Err(CrispError::OutOfRange {
            mask: s.0,
            size: space.size(),
        });
    }
    Ok(())
}

impl CrispAmbRep {
    pub(crate) fn from_rows_unchecked(
        source: FiniteSpace,
        target: FiniteSpace,
        rows: Vec<SetFamily>,
    ) -> Self {
        debug_assert_eq!(rows.len(), source.mask_count());
        Self {
            source,
            target,
            rows,
        }
    }

    fn gather(
        source: &FiniteSpace,
        target: &FiniteSpace,
        pairs: impl IntoIterator<Item = (Subset, Subset)>,
    ) -> Result<Vec<SetFamily>, CrispError> {
        let mut rows = vec![SetFamily::EMPTY; source.mask_count()];
        for (a, b) in pairs {
            check_subset(source, a)?;
            check_subset(target, b)?;
            rows[a.0 as usize].insert(b);
        }
        Ok(rows)
    }

    /// Checks the axioms on an explicit pair set and returns the
    /// representation, or the first violated axiom with a witness.
    /// Closedness of the rows holds vacuously on finite spaces.
    pub fn validate(
        source: FiniteSpace,
        target: FiniteSpace,
        pairs: impl IntoIterator<Item = (Subset, Subset)>,
    ) -> Result<Self, CrispError> {
        let rows = Self::gather(&source, &target, pairs)?;
        let sl = |s: Subset| source.subset_labels(s);
        let tl = |s: Subset| target.subset_labels(s);
        let full = target.full();
        for a in source.subsets() {
            if !rows[a.0 as usize].contains(full) {
                return Err(CrispError::MissingFullTarget { a: sl(a) });
            }
        }
        for a in source.subsets() {
            let row = rows[a.0 as usize];
            for b in row.iter() {
                for y in 0..target.size() {
                    let bigger = b.union(Subset::singleton(y));
                    if !row.contains(bigger) {
                        return Err(CrispError::NotUpwardClosedInB {
                            a: sl(a),
                            b: tl(b),
                            superset: tl(bigger),
                        });
                    }
                }
            }
        }
        for a in source.subsets() {
            for x in a.points() {
                let smaller = Subset(a.0 & !(1 << x));
                if smaller.is_empty() {
                    continue;
                }
                let missing = rows[a.0 as usize].difference(rows[smaller.0 as usize]);
                if let Some(b) = missing.iter().next() {
                    return Err(CrispError::NotAntitoneInA {
                        a: sl(a),
                        subset: sl(smaller),
                        b: tl(b),
                    });
                }
            }
        }
        Ok(Self::from_rows_unchecked(source, target, rows))
    }

    /// The least representation containing the seed pairs.
    pub fn from_seed(
        source: FiniteSpace,
        target: FiniteSpace,
        pairs: impl IntoIterator<Item = (Subset, Subset)>,
    ) -> Result<Self, CrispError> {
        let mut rows = Self::gather(&source, &target, pairs)?;
        // push rows down to subsets, largest sets first
        let mut order: Vec<Subset> = source.subsets().collect();
        order.sort_by_key(|s| std::cmp::Reverse(s.len()));
        for &a in &order {
            let inherited = (0..source.size())
                .filter(|&x| !a.contains(x))
                .map(|x| rows[(a.0 | (1 << x)) as usize])
                .fold(SetFamily::EMPTY, SetFamily::union);
            let row = rows[a.0 as usize].union(inherited);
            let mut closed = target.upward_closure(row);
            closed.insert(target.full());
            rows[a.0 as usize] = closed;
        }
        Ok(Self::from_rows_unchecked(source, target, rows))
    }

    /// Builds a representation from its map view `A ↦ AR`.
    pub fn from_map<F>(source: FiniteSpace, target: FiniteSpace, mut row: F) -> Result<Self, CrispError>
    where
        F: FnMut(Subset) -> SetFamily,
    {
        let pairs: Vec<(Subset, Subset)> = source
            .subsets()
            .flat_map(|a| row(a).iter().map(move |b| (a, b)).collect::<Vec<_>>())
            .collect();
        Self::validate(source, target, pairs)
    }

    pub fn source(&self) -> &FiniteSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteSpace {
        &self.target
    }

    pub fn contains(&self, a: Subset, b: Subset) -> bool {
        self.rows[a.0 as usize].contains(b)
    }

    /// All related pairs in ascending `(A, B)` mask order.
    pub fn pairs(&self) -> impl Iterator<Item = (Subset, Subset)> + '_ {
        self.source
            .subsets()
            .flat_map(move |a| self.rows[a.0 as usize].iter().map(move |b| (a, b)))
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// `AR` as an inclusion hyperspace over the target.
    pub fn row(&self, a: Subset) -> InclusionHyperspace {
        self.target
            .inclusion_hyperspace(self.rows[a.0 as usize])
            .expect("rows of a valid representation are inclusion hyperspaces")
    }

    /// `RB = {A : (A, B) ∈ R}`.
    pub fn column(&self, b: Subset) -> SetFamily {
        SetFamily::from_subsets(self.source.subsets().filter(|&a| self.contains(a, b)))
    }

    /// The `R`-admissible sets for `A`, i.e. `AR`.
    pub fn admissible(&self, a: Subset) -> SetFamily {
        self.rows[a.0 as usize]
    }

    /// The `R`-unavoidable sets for `A`: those meeting every admissible set.
    pub fn unavoidable(&self, a: Subset) -> InclusionHyperspace {
        self.target.traversal(self.admissible(a))
    }

    /// The pseudo-inverse `R^⊥ : Y → X`, with
    /// `B̃R^⊥ = {A : B̃ is unavoidable for A}^⊥`.
    pub fn sms(&self) -> CrispAmbRep {
        let unavoidable: Vec<SetFamily> = self
            .source
            .subsets()
            .map(|a| self.unavoidable(a).family())
            .collect();
        let mut rows = vec![SetFamily::EMPTY; self.target.mask_count()];
        for bt in self.target.subsets() {
            let witnesses = SetFamily::from_subsets(
                self.source
                    .subsets()
                    .zip(&unavoidable)
                    .filter(|(_, u)| u.contains(bt))
                    .map(|(a, _)| a),
            );
            rows[bt.0 as usize] = self.source.traversal(witnesses).family();
        }
        CrispAmbRep::from_rows_unchecked(self.target.clone(), self.source.clone(), rows)
    }

    /// Plain relational composition `R ⊚ S`.
    pub fn relational_compose(&self, other: &CrispAmbRep) -> Result<CrispAmbRep, CrispError> {
        check_same(&self.target, &other.source)?;
        let mut rows = vec![SetFamily::EMPTY; self.source.mask_count()];
        for a in self.source.subsets() {
            rows[a.0 as usize] = self.rows[a.0 as usize]
                .iter()
                .map(|b| other.rows[b.0 as usize])
                .fold(SetFamily::EMPTY, SetFamily::union);
        }
        Ok(CrispAmbRep::from_rows_unchecked(
            self.source.clone(),
            other.target.clone(),
            rows,
        ))
    }

    /// The closed composition: relational composition followed by the
    /// Vietoris closure of every row. On finite spaces the two agree.
    pub fn compose(&self, other: &CrispAmbRep) -> Result<CrispAmbRep, CrispError> {
        let mut r = self.relational_compose(other)?;
        for row in r.rows.iter_mut() {
            *row = vietoris_closure(*row);
        }
        Ok(r)
    }

    /// The identity arrow `{(A, B) : A ⊆ B}`.
    pub fn identity(space: &FiniteSpace) -> CrispAmbRep {
        let rows = (0..space.mask_count() as u32)
            .map(|a| {
                if a == 0 {
                    SetFamily::EMPTY
                } else {
                    space.supersets(Subset(a))
                }
            })
            .collect();
        CrispAmbRep::from_rows_unchecked(space.clone(), space.clone(), rows)
    }

    /// `⊤ = exp X × exp Y`.
    pub fn top(source: &FiniteSpace, target: &FiniteSpace) -> CrispAmbRep {
        let rows = Self::constant_rows(source, target.exp());
        CrispAmbRep::from_rows_unchecked(source.clone(), target.clone(), rows)
    }

    /// `⊥ = exp X × {Y}`.
    pub fn bottom(source: &FiniteSpace, target: &FiniteSpace) -> CrispAmbRep {
        let rows = Self::constant_rows(source, target.smallest_hyperspace().family());
        CrispAmbRep::from_rows_unchecked(source.clone(), target.clone(), rows)
    }

    fn constant_rows(source: &FiniteSpace, row: SetFamily) -> Vec<SetFamily> {
        let mut rows = vec![row; source.mask_count()];
        rows[0] = SetFamily::EMPTY;
        rows
    }

    fn zip_rows(
        &self,
        other: &CrispAmbRep,
        op: impl Fn(SetFamily, SetFamily) -> SetFamily,
    ) -> Result<CrispAmbRep, CrispError> {
        check_same(&self.source, &other.source)?;
        check_same(&self.target, &other.target)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(&a, &b)| op(a, b))
            .collect();
        Ok(CrispAmbRep::from_rows_unchecked(
            self.source.clone(),
            self.target.clone(),
            rows,
        ))
    }

    /// `R ∩ S`.
    pub fn meet(&self, other: &CrispAmbRep) -> Result<CrispAmbRep, CrispError> {
        self.zip_rows(other, SetFamily::intersection)
    }

    /// `R ∪ S`.
    pub fn join(&self, other: &CrispAmbRep) -> Result<CrispAmbRep, CrispError> {
        self.zip_rows(other, SetFamily::union)
    }

    pub fn is_subrelation_of(&self, other: &CrispAmbRep) -> bool {
        self.source == other.source
            && self.target == other.target
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.is_subfamily_of(*b))
    }

    /// `R_f` for a point map `f : X → Y`, relating `A` to every `B ⊇ f(A)`.
    pub fn mapping_rep(
        source: &FiniteSpace,
        target: &FiniteSpace,
        map: &[usize],
    ) -> Result<CrispAmbRep, CrispError> {
        if map.len() != source.size() || map.iter().any(|&y| y >= target.size()) {
            return Err(CrispError::BadMap {
                expected: source.size(),
                found: map.len(),
            });
        }
        let mut rows = vec![SetFamily::EMPTY; source.mask_count()];
        for a in source.subsets() {
            rows[a.0 as usize] = target.supersets(image(map, a));
        }
        Ok(CrispAmbRep::from_rows_unchecked(
            source.clone(),
            target.clone(),
            rows,
        ))
    }

    /// The indiscernibility representation of a partition: `A` represents
    /// `B` when the upper approximation of `A` lies in that of `B`.
    pub fn rough_rep(partition: &Partition) -> CrispAmbRep {
        let space = partition.space();
        let mut rows = vec![SetFamily::EMPTY; space.mask_count()];
        for a in space.subsets() {
            let ua = partition.upper_approx(a);
            rows[a.0 as usize] = SetFamily::from_subsets(
                space
                    .subsets()
                    .filter(|&b| ua.is_subset_of(partition.upper_approx(b))),
            );
        }
        CrispAmbRep::from_rows_unchecked(space.clone(), space.clone(), rows)
    }

    /// `(R^⊥)^⊥ = R`.
    pub fn is_pseudo_invertible(&self) -> bool {
        self.sms().sms() == *self
    }

    /// Every fibre `RB` is Vietoris-closed.
    pub fn is_strict(&self) -> bool {
        self.target.subsets().all(|b| {
            let col = self.column(b);
            vietoris_closure(col) == col
        })
    }

    /// Strict, pseudo-invertible, and with a strict pseudo-inverse.
    pub fn is_open(&self) -> bool {
        self.is_strict() && self.is_pseudo_invertible() && self.sms().is_strict()
    }

    /// Openness in unavoidable-set form: for every `Ã`, the complement of
    /// `R^⊥Ã` is exactly the set of sets unavoidable for some `A ⊆ X∖Ã`, and
    /// that set is open (every family is open in a finite discrete
    /// hyperspace).
    pub fn satisfies_unavoidable_openness(&self) -> bool {
        let inverse = self.sms();
        self.source.subsets().all(|at| {
            let outside = self.source.complement(at);
            let reachable = self
                .source
                .subsets_of(outside)
                .map(|a| self.unavoidable(a).family())
                .fold(SetFamily::EMPTY, SetFamily::union);
            let complement = self.target.exp().difference(inverse.column(at));
            complement == reachable && vietoris_closure(complement) == complement
        })
    }

    /// Every representation between the two spaces, enumerated as antitone
    /// maps from `exp X` into the inclusion hyperspaces over `Y`.
    pub fn enumerate_all(source: &FiniteSpace, target: &FiniteSpace) -> Vec<CrispAmbRep> {
        let hyperspaces: Vec<SetFamily> = target
            .inclusion_hyperspaces()
            .into_iter()
            .map(InclusionHyperspace::family)
            .collect();
        let mut order: Vec<Subset> = source.subsets().collect();
        order.sort_by_key(|s| std::cmp::Reverse(s.len()));
        let mut rows = vec![SetFamily::EMPTY; source.mask_count()];
        let mut out = Vec::new();
        enumerate_rows(source, target, &hyperspaces, &order, 0, &mut rows, &mut out);
        out
    }
}

fn enumerate_rows(
    source: &FiniteSpace,
    target: &FiniteSpace,
    hyperspaces: &[SetFamily],
    order: &[Subset],
    i: usize,
    rows: &mut Vec<SetFamily>,
    out: &mut Vec<CrispAmbRep>,
) {
    let Some(&a) = order.get(i) else {
        out.push(CrispAmbRep::from_rows_unchecked(
            source.clone(),
            target.clone(),
            rows.clone(),
        ));
        return;
    };
    let floor = (0..source.size())
        .filter(|&x| !a.contains(x))
        .map(|x| rows[(a.0 | (1 << x)) as usize])
        .fold(SetFamily::EMPTY, SetFamily::union);
    for &h in hyperspaces {
        if floor.is_subfamily_of(h) {
            rows[a.0 as usize] = h;
            enumerate_rows(source, target, hyperspaces, order, i + 1, rows, out);
        }
    }
    rows[a.0 as usize] = SetFamily::EMPTY;
}

/// `f(A)` for a point map given as a lookup table.
pub fn image(map: &[usize], a: Subset) -> Subset {
    Subset::from_points(a.points().map(|x| map[x]))
}

/// `f⁻¹(B)`; may be empty.
pub fn preimage(map: &[usize], b: Subset) -> Subset {
    Subset::from_points((0..map.len()).filter(|&x| b.contains(map[x])))
}

/// A partition of a finite space into indiscernibility classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    space: FiniteSpace,
    classes: Vec<Subset>,
}

impl Partition {
    pub fn new(space: FiniteSpace, classes: Vec<Subset>) -> Result<Self, CrispError> {
        let mut seen = Subset::EMPTY;
        for &c in &classes {
            if c.is_empty() {
                return Err(CrispError::BadPartition("empty class".into()));
            }
            if c.meets(seen) {
                return Err(CrispError::BadPartition("overlapping classes".into()));
            }
            seen = seen.union(c);
        }
        if seen != space.full() {
            return Err(CrispError::BadPartition("classes do not cover the space".into()));
        }
        Ok(Self { space, classes })
    }

    /// All singletons.
    pub fn discrete(space: &FiniteSpace) -> Self {
        let classes = (0..space.size()).map(Subset::singleton).collect();
        Self {
            space: space.clone(),
            classes,
        }
    }

    /// Every partition of the space (restricted growth strings).
    pub fn all(space: &FiniteSpace) -> Vec<Partition> {
        fn rec(n: usize, i: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == n {
                out.push(labels.clone());
                return;
            }
            let max = labels.iter().copied().max().map_or(0, |m| m + 1);
            for c in 0..=max {
                labels.push(c);
                rec(n, i + 1, labels, out);
                labels.pop();
            }
        }
        let mut strings = Vec::new();
        rec(space.size(), 0, &mut Vec::new(), &mut strings);
        strings
            .into_iter()
            .map(|s| {
                let k = s.iter().max().map_or(0, |m| m + 1);
                let classes = (0..k)
                    .map(|c| Subset::from_points((0..s.len()).filter(|&p| s[p] == c)))
                    .collect();
                Partition {
                    space: space.clone(),
                    classes,
                }
            })
            .collect()
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn classes(&self) -> &[Subset] {
        &self.classes
    }

    pub fn class_of(&self, point: usize) -> Subset {
        *self
            .classes
            .iter()
            .find(|c| c.contains(point))
            .expect("partition covers the space")
    }

    /// Points indiscernible from some point of `a`.
    pub fn upper_approx(&self, a: Subset) -> Subset {
        self.classes
            .iter()
            .filter(|c| c.meets(a))
            .fold(Subset::EMPTY, |acc, &c| acc.union(c))
    }

    /// Points whose whole class lies in `a`.
    pub fn lower_approx(&self, a: Subset) -> Subset {
        self.classes
            .iter()
            .filter(|c| c.is_subset_of(a))
            .fold(Subset::EMPTY, |acc, &c| acc.union(c))
    }
}
