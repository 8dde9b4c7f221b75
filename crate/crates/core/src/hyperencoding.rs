//! Encoding of representations as ternary relations `T ⊆ exp²X × exp Y × L`
//! and the saturation operators `T^⊂`, `T^sup`, `T^+`.
//!
//! Families over a space of at most three points have at most seven
//! members, so a family is identified by the compact index
//! `family.bits() >> 1` (1..=127) and a set of families fits in a `u128`.

use std::sync::OnceLock;

use thiserror::Error;

use crate::crisp::{check_same, CrispError};
use crate::fuzzy::{FuzzyError, LFuzzyAmbRep};
use crate::hyperspace::{FiniteSpace, SetFamily, Subset};
use crate::lattice::{Elem, FiniteLattice};

pub const MAX_SOURCE_POINTS: usize = 3;
pub const MAX_LATTICE_SIZE: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperError {
    #[error("source space has {size} points, limit is {limit}")]
    SpaceTooLarge { size: usize, limit: usize },
    #[error("lattice has {size} elements, limit is {limit}")]
    LatticeTooLarge { size: usize, limit: usize },
    #[error("empty family or subset in a triple")]
    EmptyCoordinate,
    #[error("triple sets live over different spaces or lattices")]
    Mismatch,
    #[error(transparent)]
    Fuzzy(Box<FuzzyError>),
}

impl From<FuzzyError> for HyperError {
    fn from(e: FuzzyError) -> Self {
        HyperError::Fuzzy(Box::new(e))
    }
}

impl From<CrispError> for HyperError {
    fn from(e: CrispError) -> Self {
        FuzzyError::from(e).into()
    }
}

fn gate(source: &FiniteSpace, lattice: &FiniteLattice) -> Result<(), HyperError> {
    if source.size() > MAX_SOURCE_POINTS {
        return Err(HyperError::SpaceTooLarge {
            size: source.size(),
            limit: MAX_SOURCE_POINTS,
        });
    }
    if lattice.len() > MAX_LATTICE_SIZE {
        return Err(HyperError::LatticeTooLarge {
            size: lattice.len(),
            limit: MAX_LATTICE_SIZE,
        });
    }
    Ok(())
}

/// A set of nonempty families over `exp X`, bit `k` standing for the family
/// with compact index `k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct FamilySet(pub u128);

impl FamilySet {
    pub fn contains(self, family: SetFamily) -> bool {
        self.0 >> compact(family) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = SetFamily> {
        (1..128u32)
            .filter(move |&k| self.0 >> k & 1 == 1)
            .map(expand)
    }
}

#[inline]
fn compact(family: SetFamily) -> u32 {
    (family.bits() >> 1) as u32
}

#[inline]
fn expand(k: u32) -> SetFamily {
    SetFamily((k as u64) << 1)
}

fn family_count(source: &FiniteSpace) -> u32 {
    1 << (source.mask_count() - 1)
}

/// `refinements(n)[k]`: the families `ℬ` refining family `k`.
fn refinements(source: &FiniteSpace) -> &'static [u128] {
    static TABLES: OnceLock<Vec<Vec<u128>>> = OnceLock::new();
    &TABLES.get_or_init(|| {
        (0..=MAX_SOURCE_POINTS)
            .map(|n| {
                let space = FiniteSpace::numbered("p", n.max(1));
                let count = if n == 0 { 1 } else { family_count(&space) };
                let ups: Vec<SetFamily> = (0..count)
                    .map(|j| space.upward_closure(expand(j)))
                    .collect();
                (0..count)
                    .map(|k| {
                        let fam = expand(k);
                        (1..count)
                            .filter(|&j| fam.is_subfamily_of(ups[j as usize]))
                            .fold(0u128, |m, j| m | 1 << j)
                    })
                    .collect()
            })
            .collect()
    })[source.size()]
}

/// `𝒜^⊂ = {ℬ : every A ∈ 𝒜 contains some B ∈ ℬ}`.
pub fn refinement_hyperspace(
    source: &FiniteSpace,
    family: SetFamily,
) -> Result<FamilySet, HyperError> {
    if source.size() > MAX_SOURCE_POINTS {
        return Err(HyperError::SpaceTooLarge {
            size: source.size(),
            limit: MAX_SOURCE_POINTS,
        });
    }
    if family.is_empty() {
        return Err(HyperError::EmptyCoordinate);
    }
    Ok(FamilySet(refinements(source)[compact(family) as usize]))
}

/// A finite set of triples `(𝒜, B, α)`.
#[derive(Clone, PartialEq, Eq)]
pub struct TripleSet {
    source: FiniteSpace,
    target: FiniteSpace,
    lattice: FiniteLattice,
    bits: Vec<u64>,
}

impl std::fmt::Debug for TripleSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set()
            .entries(
                self.iter()
                    .map(|(a, b, e)| (a, b, self.lattice.label(e).to_string())),
            )
            .finish()
    }
}

type Triple = (u32, u32, usize);

impl TripleSet {
    pub fn empty(
        source: &FiniteSpace,
        target: &FiniteSpace,
        lattice: &FiniteLattice,
    ) -> Result<Self, HyperError> {
        gate(source, lattice)?;
        let slots = family_count(source) as usize * target.mask_count() * lattice.len();
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            lattice: lattice.clone(),
            bits: vec![0; slots.div_ceil(64)],
        })
    }

    pub fn from_triples(
        source: &FiniteSpace,
        target: &FiniteSpace,
        lattice: &FiniteLattice,
        triples: impl IntoIterator<Item = (SetFamily, Subset, Elem)>,
    ) -> Result<Self, HyperError> {
        let mut t = Self::empty(source, target, lattice)?;
        for (fam, b, e) in triples {
            let valid_fam = !fam.is_empty() && fam.iter().all(|s| s.is_subset_of(source.full()));
            if !valid_fam || b.is_empty() || !b.is_subset_of(target.full()) || e.0 >= lattice.len()
            {
                return Err(HyperError::EmptyCoordinate);
            }
            t.insert(fam, b, e);
        }
        Ok(t)
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
    fn slot(&self, (k, b, e): Triple) -> usize {
        (k as usize * self.target.mask_count() + b as usize) * self.lattice.len() + e
    }

    #[inline]
    fn has(&self, t: Triple) -> bool {
        let i = self.slot(t);
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns true when the triple was new.
    #[inline]
    fn put(&mut self, t: Triple) -> bool {
        let i = self.slot(t);
        let fresh = self.bits[i / 64] >> (i % 64) & 1 == 0;
        self.bits[i / 64] |= 1 << (i % 64);
        fresh
    }

    pub fn contains(&self, family: SetFamily, b: Subset, e: Elem) -> bool {
        !family.is_empty() && self.has((compact(family), b.0, e.0))
    }

    pub fn insert(&mut self, family: SetFamily, b: Subset, e: Elem) -> bool {
        self.put((compact(family), b.0, e.0))
    }

    fn raw(&self) -> impl Iterator<Item = Triple> + '_ {
        let (ym, l) = (self.target.mask_count(), self.lattice.len());
        self.bits.iter().enumerate().flat_map(move |(w, &word)| {
            (0..64)
                .filter(move |i| word >> i & 1 == 1)
                .map(move |i| {
                    let slot = w * 64 + i;
                    let e = slot % l;
                    let b = (slot / l) % ym;
                    let k = slot / l / ym;
                    (k as u32, b as u32, e)
                })
        })
    }

    /// Triples in ascending `(𝒜, B, α)` index order.
    pub fn iter(&self) -> impl Iterator<Item = (SetFamily, Subset, Elem)> + '_ {
        self.raw().map(|(k, b, e)| (expand(k), Subset(b), Elem(e)))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    fn same_shape(&self, other: &Self) -> Result<(), HyperError> {
        if self.source == other.source
            && self.target == other.target
            && self.lattice == other.lattice
        {
            Ok(())
        } else {
            Err(HyperError::Mismatch)
        }
    }

    pub fn union(&self, other: &Self) -> Result<Self, HyperError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (w, o) in out.bits.iter_mut().zip(&other.bits) {
            *w |= o;
        }
        Ok(out)
    }

    fn blank(&self) -> Self {
        Self {
            bits: vec![0; self.bits.len()],
            ..self.clone()
        }
    }

    /// `T^⊂ = ⋃ 𝒜^⊂ × {B} × ↓α`.
    pub fn subset_saturate(&self) -> Self {
        let table = refinements(&self.source);
        let l = &self.lattice;
        let mut out = self.blank();
        for (k, b, e) in self.raw() {
            let refined = FamilySet(table[k as usize]);
            for j in refined.iter().map(compact) {
                for d in l.elements().filter(|&d| l.leq(d, Elem(e))) {
                    out.put((j, b, d.0));
                }
            }
        }
        out
    }

    /// The least superset closed under
    /// `(𝒜₁, B₁, α₁), (𝒜₂, B₂, α₂) ↦ (𝒜₁ ∪ 𝒜₂, B₁ ∪ B₂, α₁ ∨ α₂)`.
    ///
    /// Generators are added one at a time; a closed set that already holds a
    /// generator is closed under merging with it and is left unchanged.
    pub fn sup_saturate(&self) -> Self {
        let l = &self.lattice;
        let mut generators: Vec<Triple> = self.raw().collect();
        generators.sort_by_key(|&(k, b, e)| {
            let height = l.elements().filter(|&d| l.leq(d, Elem(e))).count();
            k.count_ones() as usize + b.count_ones() as usize + height
        });
        let mut out = self.blank();
        let mut members: Vec<Triple> = Vec::new();
        for g in generators {
            if out.has(g) {
                continue;
            }
            let merged: Vec<Triple> = members
                .iter()
                .map(|&(k, b, e)| (k | g.0, b | g.1, l.join(Elem(e), Elem(g.2)).0))
                .collect();
            for t in std::iter::once(g).chain(merged) {
                if out.put(t) {
                    members.push(t);
                }
            }
        }
        out
    }

    /// `exp²X × {Y} × L ∪ exp²X × exp Y × {0}`.
    pub fn floor(
        source: &FiniteSpace,
        target: &FiniteSpace,
        lattice: &FiniteLattice,
    ) -> Result<Self, HyperError> {
        let mut t = Self::empty(source, target, lattice)?;
        let y = target.full().0;
        for k in 1..family_count(source) {
            for e in lattice.elements() {
                t.put((k, y, e.0));
            }
            for b in target.subsets() {
                t.put((k, b.0, lattice.bottom().0));
            }
        }
        Ok(t)
    }

    /// `T^+ = ((T ∪ floor)^⊂)^sup`.
    pub fn plus(&self) -> Self {
        let floor = Self::floor(&self.source, &self.target, &self.lattice)
            .expect("shape already gated");
        self.union(&floor)
            .expect("same shape")
            .subset_saturate()
            .sup_saturate()
    }

    /// Triples whose first coordinate is a singleton family.
    pub fn singletons(&self) -> Self {
        let mut out = self.blank();
        for (k, b, e) in self.raw() {
            if k.count_ones() == 1 {
                out.put((k, b, e));
            }
        }
        out
    }

    /// `T = T^+ = (T ∩ singleton triples)^+`.
    pub fn is_encoded(&self) -> bool {
        let plus = self.plus();
        plus == *self && self.singletons().plus() == *self
    }

    /// Reads grades off the singleton triples.
    pub fn decode(&self) -> Result<LFuzzyAmbRep, HyperError> {
        let l = &self.lattice;
        let rep = LFuzzyAmbRep::from_fn(
            self.source.clone(),
            self.target.clone(),
            l.clone(),
            |a, b| {
                let k = compact(SetFamily::from_subsets([a]));
                l.family_join(l.elements().filter(|e| self.has((k, b.0, e.0))))
            },
        )?;
        Ok(rep)
    }
}

/// `R^∪ = {(𝒜, B, γ) : γ ≤ ⋁_{A ∈ 𝒜} v(A, B)}`.
pub fn encode(rep: &LFuzzyAmbRep) -> Result<TripleSet, HyperError> {
    let (x, y, l) = (rep.source(), rep.target(), rep.lattice());
    let mut t = TripleSet::empty(x, y, l)?;
    for k in 1..family_count(x) {
        let fam = expand(k);
        for b in y.subsets() {
            let g = l.family_join(fam.iter().map(|a| rep.grade(a, b)));
            for e in l.elements().filter(|&e| l.leq(e, g)) {
                t.put((k, b.0, e.0));
            }
        }
    }
    Ok(t)
}

/// `(R_•)^sup` with `R_• = {({A}, B, α) : α ≤ v(A, B)}`.
pub fn encode_via_sup(rep: &LFuzzyAmbRep) -> Result<TripleSet, HyperError> {
    let (x, y, l) = (rep.source(), rep.target(), rep.lattice());
    let singletons = rep
        .subgraph()
        .into_iter()
        .map(|(a, b, e)| (SetFamily::from_subsets([a]), b, e));
    Ok(TripleSet::from_triples(x, y, l, singletons)?.sup_saturate())
}

/// The least upper bound of a family, computed as `(⋃ R^∪)^+` and decoded.
pub fn family_sup(
    source: &FiniteSpace,
    target: &FiniteSpace,
    lattice: &FiniteLattice,
    family: &[LFuzzyAmbRep],
) -> Result<LFuzzyAmbRep, HyperError> {
    let mut acc = TripleSet::empty(source, target, lattice)?;
    for r in family {
        check_same(r.source(), source)?;
        check_same(r.target(), target)?;
        if r.lattice() != lattice {
            return Err(FuzzyError::LatticeMismatch.into());
        }
        acc = acc.union(&encode(r)?)?;
    }
    acc.plus().decode()
}
