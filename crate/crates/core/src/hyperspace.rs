//! Finite universes, their powerset hyperspaces, set families and
//! inclusion hyperspaces.
//!
//! A subset of an `n`-point space is a bitmask over the points. A family of
//! subsets is a bitmask over *subset masks*: bit `s` of a [`SetFamily`] is
//! set when the subset with mask `s` belongs to the family. With at most
//! [`MAX_POINTS`] points every family fits in one `u64`, which makes family
//! equality, union and intersection single machine operations and gives a
//! canonical form for free.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Largest supported universe; `2^6 = 64` subset masks fill a `u64` family.
pub const MAX_POINTS: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("a space needs at least one point")]
    Empty,
    #[error("space has {size} points, limit is {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown point label `{0}`")]
    UnknownLabel(String),
    #[error("empty subset where a nonempty one is required")]
    EmptySubset,
}

/// A subset of a [`FiniteSpace`] as a bitmask over its points.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn singleton(point: usize) -> Self {
        Subset(1 << point)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        Subset(points.into_iter().fold(0, |m, p| m | (1 << p)))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn contains(self, point: usize) -> bool {
        self.0 & (1 << point) != 0
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn meets(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn points(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&p| self.contains(p))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points()).finish()
    }
}

/// A family of subsets of one space.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SetFamily(pub u64);

impl SetFamily {
    pub const EMPTY: SetFamily = SetFamily(0);

    pub fn from_subsets<I: IntoIterator<Item = Subset>>(subsets: I) -> Self {
        SetFamily(subsets.into_iter().fold(0, |m, s| m | (1u64 << s.0)))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn contains(self, s: Subset) -> bool {
        self.0 & (1u64 << s.0) != 0
    }

    pub fn insert(&mut self, s: Subset) {
        self.0 |= 1u64 << s.0;
    }

    pub fn remove(&mut self, s: Subset) {
        self.0 &= !(1u64 << s.0);
    }

    #[inline]
    pub fn union(self, other: SetFamily) -> SetFamily {
        SetFamily(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: SetFamily) -> SetFamily {
        SetFamily(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: SetFamily) -> SetFamily {
        SetFamily(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subfamily_of(self, other: SetFamily) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending mask order, the canonical order used for output.
    pub fn iter(self) -> impl Iterator<Item = Subset> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let s = bits.trailing_zeros();
            bits &= bits - 1;
            Some(Subset(s))
        })
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A nonempty upward-closed family of nonempty subsets. On a finite space
/// such a family always contains the full set.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InclusionHyperspace(SetFamily);

impl InclusionHyperspace {
    pub fn family(self) -> SetFamily {
        self.0
    }

    pub fn contains(self, s: Subset) -> bool {
        self.0.contains(s)
    }

    /// The inclusion-minimal members, from which the family is the upward
    /// closure.
    pub fn minimal(self) -> Vec<Subset> {
        minimal_elements(self.0)
    }
}

impl fmt::Debug for InclusionHyperspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{:?}", self.0)
    }
}

struct Tables {
    /// `supersets[s]`: family of all supersets of `s`.
    supersets: Vec<u64>,
    /// `meeting[s]`: family of all subsets meeting `s`.
    meeting: Vec<u64>,
}

fn tables(n: usize) -> &'static Tables {
    static TABLES: OnceLock<Vec<Tables>> = OnceLock::new();
    &TABLES.get_or_init(|| {
        (0..=MAX_POINTS)
            .map(|n| {
                let count = 1u32 << n;
                let supersets = (0..count)
                    .map(|s| {
                        (0..count)
                            .filter(|&t| s & !t == 0)
                            .fold(0u64, |m, t| m | (1 << t))
                    })
                    .collect();
                let meeting = (0..count)
                    .map(|s| {
                        (0..count)
                            .filter(|&t| s & t != 0)
                            .fold(0u64, |m, t| m | (1 << t))
                    })
                    .collect();
                Tables { supersets, meeting }
            })
            .collect()
    })[n]
}

fn minimal_elements(family: SetFamily) -> Vec<Subset> {
    family
        .iter()
        .filter(|&s| !family.iter().any(|t| t != s && t.is_subset_of(s)))
        .collect()
}

/// A finite discrete universe with labelled points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    labels: Vec<String>,
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

impl FiniteSpace {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(labels: I) -> Result<Self, SpaceError> {
        Self::bounded(labels, MAX_POINTS)
    }

    pub fn bounded<S: Into<String>, I: IntoIterator<Item = S>>(
        labels: I,
        limit: usize,
    ) -> Result<Self, SpaceError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(SpaceError::Empty);
        }
        let limit = limit.min(MAX_POINTS);
        if labels.len() > limit {
            return Err(SpaceError::TooLarge {
                size: labels.len(),
                limit,
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(SpaceError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels })
    }

    /// Points labelled `{prefix}1 … {prefix}n`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("{prefix}{i}"))).expect("valid numbered space")
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, point: usize) -> &str {
        &self.labels[point]
    }

    pub fn find(&self, label: &str) -> Result<usize, SpaceError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| SpaceError::UnknownLabel(label.to_string()))
    }

    pub fn subset_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset, SpaceError> {
        labels
            .iter()
            .map(|l| self.find(l.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(Subset::from_points)
    }

    pub fn subset_labels(&self, s: Subset) -> Vec<String> {
        s.points().map(|p| self.labels[p].clone()).collect()
    }

    pub fn full(&self) -> Subset {
        Subset((1u32 << self.size()) - 1)
    }

    /// Number of subset masks including the empty one, `2^n`.
    pub fn mask_count(&self) -> usize {
        1 << self.size()
    }

    pub fn complement(&self, s: Subset) -> Subset {
        Subset(self.full().0 & !s.0)
    }

    /// All nonempty subsets in ascending mask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> + Clone {
        (1..(1u32 << self.size())).map(Subset)
    }

    /// Nonempty subsets of `s`.
    pub fn subsets_of(&self, s: Subset) -> impl Iterator<Item = Subset> {
        self.subsets().filter(move |t| t.is_subset_of(s))
    }

    /// The hyperspace `exp X` as a family.
    pub fn exp(&self) -> SetFamily {
        SetFamily(self.all_masks_family() & !1)
    }

    fn all_masks_family(&self) -> u64 {
        if self.mask_count() == 64 {
            u64::MAX
        } else {
            (1u64 << self.mask_count()) - 1
        }
    }

    /// Family of all supersets of `s` (within the space).
    pub fn supersets(&self, s: Subset) -> SetFamily {
        SetFamily(tables(self.size()).supersets[s.0 as usize])
    }

    /// Family of all subsets meeting `s`.
    pub fn meeting(&self, s: Subset) -> SetFamily {
        SetFamily(tables(self.size()).meeting[s.0 as usize])
    }

    /// The traversal `{B ∈ exp X : B ∩ A ≠ ∅ for all A ∈ family}`. The empty
    /// family has the whole hyperspace as its traversal.
    pub fn traversal(&self, family: SetFamily) -> InclusionHyperspace {
        let t = tables(self.size());
        let bits = family
            .iter()
            .fold(self.exp().0, |acc, a| acc & t.meeting[a.0 as usize]);
        InclusionHyperspace(SetFamily(bits))
    }

    pub fn upward_closure(&self, family: SetFamily) -> SetFamily {
        let t = tables(self.size());
        SetFamily(
            family
                .iter()
                .fold(0, |acc, a| acc | t.supersets[a.0 as usize]),
        )
    }

    /// Nonempty, upward-closed and free of the empty set.
    pub fn is_inclusion_hyperspace(&self, family: SetFamily) -> bool {
        !family.is_empty()
            && !family.contains(Subset::EMPTY)
            && family.is_subfamily_of(self.exp())
            && self.upward_closure(family) == family
    }

    pub fn inclusion_hyperspace(&self, family: SetFamily) -> Option<InclusionHyperspace> {
        self.is_inclusion_hyperspace(family)
            .then_some(InclusionHyperspace(family))
    }

    /// The upward closure of an antichain (or any nonempty family of
    /// nonempty subsets).
    pub fn generated_hyperspace(&self, generators: &[Subset]) -> Option<InclusionHyperspace> {
        if generators.is_empty() || generators.iter().any(|s| s.is_empty()) {
            return None;
        }
        let fam = self.upward_closure(SetFamily::from_subsets(generators.iter().copied()));
        self.inclusion_hyperspace(fam)
    }

    /// The smallest inclusion hyperspace, `{X}`.
    pub fn smallest_hyperspace(&self) -> InclusionHyperspace {
        InclusionHyperspace(self.supersets(self.full()))
    }

    /// Every inclusion hyperspace over the space, in ascending bit order.
    /// Only practical for up to four points.
    pub fn inclusion_hyperspaces(&self) -> Vec<InclusionHyperspace> {
        assert!(self.size() <= 4, "enumeration limited to 4 points");
        let mut order: Vec<Subset> = self.subsets().collect();
        order.sort_by_key(|s| std::cmp::Reverse(s.len()));
        let mut out = Vec::new();
        self.collect_upsets(&order, 0, SetFamily::EMPTY, &mut out);
        out.sort();
        out
    }

    // Subsets are visited largest first, so a subset may join the family
    // only once all of its proper supersets have.
    fn collect_upsets(
        &self,
        order: &[Subset],
        i: usize,
        fam: SetFamily,
        out: &mut Vec<InclusionHyperspace>,
    ) {
        let Some(&s) = order.get(i) else {
            if !fam.is_empty() {
                out.push(InclusionHyperspace(fam));
            }
            return;
        };
        self.collect_upsets(order, i + 1, fam, out);
        let mut proper = self.supersets(s);
        proper.remove(s);
        if proper.is_subfamily_of(fam) {
            let mut with = fam;
            with.insert(s);
            self.collect_upsets(order, i + 1, with, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x2() -> FiniteSpace {
        FiniteSpace::numbered("x", 2)
    }

    const S1: Subset = Subset(0b01);
    const S2: Subset = Subset(0b10);
    const S12: Subset = Subset(0b11);

    #[test]
    fn traversal_of_empty_family_is_everything() {
        let x = x2();
        assert_eq!(x.traversal(SetFamily::EMPTY).family(), x.exp());
        assert_eq!(x.exp().len(), 3);
    }

    #[test]
    fn traversal_examples() {
        let x = x2();
        assert_eq!(
            x.traversal(SetFamily::from_subsets([S1])).family(),
            SetFamily::from_subsets([S1, S12])
        );
        assert_eq!(
            x.traversal(x.exp()).family(),
            SetFamily::from_subsets([S12])
        );
    }

    #[test]
    fn upward_closure_examples() {
        let x = x2();
        assert_eq!(
            x.upward_closure(SetFamily::from_subsets([S1])),
            SetFamily::from_subsets([S1, S12])
        );
        assert_eq!(x.upward_closure(SetFamily::EMPTY), SetFamily::EMPTY);
    }

    #[test]
    fn inclusion_hyperspace_predicate() {
        let x = x2();
        assert!(x.is_inclusion_hyperspace(SetFamily::from_subsets([S12])));
        assert!(!x.is_inclusion_hyperspace(SetFamily::from_subsets([S1])));
        assert!(!x.is_inclusion_hyperspace(SetFamily::EMPTY));
        assert!(!x.is_inclusion_hyperspace(SetFamily::from_subsets([Subset::EMPTY, S1, S2, S12])));
    }

    #[test]
    fn double_traversal_is_upward_closure_up_to_four_points() {
        for n in 1..=4 {
            let x = FiniteSpace::numbered("x", n);
            let total = x.exp().len();
            for bits in 0u64..(1 << total) {
                // spread the compact index over masks 1..2^n
                let fam = SetFamily(bits << 1);
                let twice = x.traversal(x.traversal(fam).family()).family();
                let up = x.upward_closure(fam);
                if fam.is_empty() {
                    // ∅ traverses to exp X, which traverses to {X}
                    assert_eq!(twice, x.supersets(x.full()));
                } else {
                    assert_eq!(twice, up, "n={n} family={fam:?}");
                }
            }
        }
    }

    #[test]
    fn inclusion_hyperspace_counts() {
        // nonempty up-sets of the nonempty-subset poset
        assert_eq!(FiniteSpace::numbered("x", 1).inclusion_hyperspaces().len(), 1);
        assert_eq!(x2().inclusion_hyperspaces().len(), 4);
        assert_eq!(FiniteSpace::numbered("x", 3).inclusion_hyperspaces().len(), 18);
    }

    #[test]
    fn minimal_antichain_round_trip() {
        let x = FiniteSpace::numbered("x", 3);
        for h in x.inclusion_hyperspaces() {
            let gen = x.generated_hyperspace(&h.minimal()).unwrap();
            assert_eq!(gen, h);
        }
    }

    #[test]
    fn space_validation() {
        assert_eq!(FiniteSpace::new(Vec::<String>::new()), Err(SpaceError::Empty));
        assert!(matches!(
            FiniteSpace::new(["a", "a"]),
            Err(SpaceError::DuplicateLabel(_))
        ));
        assert!(matches!(
            FiniteSpace::new((0..7).map(|i| i.to_string())),
            Err(SpaceError::TooLarge { size: 7, limit: 6 })
        ));
        let six = FiniteSpace::numbered("p", 6);
        assert_eq!(six.exp().len(), 63);
    }
}
