//! Lattice-valued capacities and their subgraphs.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::fuzzy::LFuzzyAmbRep;
use crate::hyperspace::{FiniteSpace, Subset};
use crate::lattice::{Elem, FiniteLattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CapacityError {
    #[error("table has {found} entries, expected {expected}")]
    Malformed { expected: usize, found: usize },
    #[error("c(∅) = {empty} and c(Y) = {full}; expected 0 and 1")]
    BadBounds { empty: String, full: String },
    #[error("c({f:?}) = {cf} exceeds c({g:?}) = {cg}")]
    NotMonotone {
        f: Vec<String>,
        g: Vec<String>,
        cf: String,
        cg: String,
    },
    #[error("subgraph misses floor triple ({f:?}, {alpha})")]
    MissingFloor { f: Vec<String>, alpha: String },
    #[error("({f:?}, {alpha}) present but ({g:?}, {beta}) absent")]
    NotDownSetInAlpha {
        f: Vec<String>,
        alpha: String,
        g: Vec<String>,
        beta: String,
    },
    #[error("({f:?}, {alpha}) and ({g:?}, {beta}) present but their union with the joined grade is absent")]
    UnionJoinViolated {
        f: Vec<String>,
        alpha: String,
        g: Vec<String>,
        beta: String,
    },
    #[error("subgraph contains the empty set")]
    EmptyInSubgraph,
}

/// A monotone `c : P(Y) → L` with `c(∅) = 0`, `c(Y) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LCapacity {
    space: FiniteSpace,
    lattice: FiniteLattice,
    values: Vec<Elem>,
}

impl LCapacity {
    /// `values[s]` is the value on the subset with mask `s`, `∅` included.
    pub fn validate(
        space: FiniteSpace,
        lattice: FiniteLattice,
        values: Vec<Elem>,
    ) -> Result<Self, CapacityError> {
        if values.len() != space.mask_count() {
            return Err(CapacityError::Malformed {
                expected: space.mask_count(),
                found: values.len(),
            });
        }
        let (empty, full) = (values[0], values[space.full().0 as usize]);
        if empty != lattice.bottom() || full != lattice.top() {
            return Err(CapacityError::BadBounds {
                empty: lattice.label(empty).into(),
                full: lattice.label(full).into(),
            });
        }
        for f in 0..space.mask_count() as u32 {
            for p in 0..space.size() {
                let g = f | (1 << p);
                let (cf, cg) = (values[f as usize], values[g as usize]);
                if !lattice.leq(cf, cg) {
                    return Err(CapacityError::NotMonotone {
                        f: space.subset_labels(Subset(f)),
                        g: space.subset_labels(Subset(g)),
                        cf: lattice.label(cf).into(),
                        cg: lattice.label(cg).into(),
                    });
                }
            }
        }
        Ok(Self {
            space,
            lattice,
            values,
        })
    }

    /// The least capacity: 1 on `Y`, 0 elsewhere.
    pub fn minimal(space: &FiniteSpace, lattice: &FiniteLattice) -> Self {
        let mut values = vec![lattice.bottom(); space.mask_count()];
        values[space.full().0 as usize] = lattice.top();
        Self {
            space: space.clone(),
            lattice: lattice.clone(),
            values,
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn value(&self, s: Subset) -> Elem {
        self.values[s.0 as usize]
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    /// Pointwise `self ≥ other`.
    pub fn dominates(&self, other: &Self) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(&a, &b)| self.lattice.leq(b, a))
    }

    /// `{(F, α) : F ≠ ∅, α ≤ c(F)}`.
    pub fn subgraph(&self) -> BTreeSet<(Subset, Elem)> {
        self.space
            .subsets()
            .flat_map(|f| {
                let c = self.value(f);
                self.lattice
                    .elements()
                    .filter(move |&e| self.lattice.leq(e, c))
                    .map(move |e| (f, e))
            })
            .collect()
    }

    /// Recovers a capacity from a subgraph, checking the floor, closure
    /// under larger sets and smaller grades, and closure under
    /// `(F ∪ G, α ∨ β)`.
    pub fn from_subgraph(
        space: FiniteSpace,
        lattice: FiniteLattice,
        set: &BTreeSet<(Subset, Elem)>,
    ) -> Result<Self, CapacityError> {
        let sl = |s: Subset| space.subset_labels(s);
        let ll = |e: Elem| lattice.label(e).to_string();
        if set.iter().any(|(f, _)| f.is_empty()) {
            return Err(CapacityError::EmptyInSubgraph);
        }
        let floor = space
            .subsets()
            .map(|f| (f, lattice.bottom()))
            .chain(lattice.elements().map(|e| (space.full(), e)));
        for (f, alpha) in floor {
            if !set.contains(&(f, alpha)) {
                return Err(CapacityError::MissingFloor {
                    f: sl(f),
                    alpha: ll(alpha),
                });
            }
        }
        for &(f, alpha) in set {
            for g in space.subsets().filter(|g| f.is_subset_of(*g)) {
                for beta in lattice.elements().filter(|&b| lattice.leq(b, alpha)) {
                    if !set.contains(&(g, beta)) {
                        return Err(CapacityError::NotDownSetInAlpha {
                            f: sl(f),
                            alpha: ll(alpha),
                            g: sl(g),
                            beta: ll(beta),
                        });
                    }
                }
            }
        }
        for &(f, alpha) in set {
            for &(g, beta) in set {
                if !set.contains(&(f.union(g), lattice.join(alpha, beta))) {
                    return Err(CapacityError::UnionJoinViolated {
                        f: sl(f),
                        alpha: ll(alpha),
                        g: sl(g),
                        beta: ll(beta),
                    });
                }
            }
        }
        let mut values = vec![lattice.bottom(); space.mask_count()];
        for f in space.subsets() {
            values[f.0 as usize] =
                lattice.family_join(set.iter().filter(|(g, _)| *g == f).map(|&(_, e)| e));
        }
        Self::validate(space, lattice, values)
    }
}

/// `c_{AR}(B) = v(A, B)` with `c(∅) = 0`.
pub fn capacity_of(rep: &LFuzzyAmbRep, a: Subset) -> LCapacity {
    let y = rep.target();
    let l = rep.lattice();
    let mut values = vec![l.bottom(); y.mask_count()];
    for b in y.subsets() {
        values[b.0 as usize] = rep.grade(a, b);
    }
    LCapacity {
        space: y.clone(),
        lattice: l.clone(),
        values,
    }
}

/// `A ↦ c_{AR}` is antitone: `A′ ⊆ A` implies `c_{A′R} ≥ c_{AR}`.
pub fn capacities_antitone(rep: &LFuzzyAmbRep) -> bool {
    let x = rep.source();
    let caps: Vec<LCapacity> = x.subsets().map(|a| capacity_of(rep, a)).collect();
    let at = |s: Subset| &caps[s.0 as usize - 1];
    x.subsets().all(|a| {
        x.subsets()
            .filter(|s| s.is_subset_of(a))
            .all(|s| at(s).dominates(at(a)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y2() -> FiniteSpace {
        FiniteSpace::numbered("y", 2)
    }

    #[test]
    fn validation() {
        let (y, l) = (y2(), FiniteLattice::chain(3));
        let (z, m, o) = (l.bottom(), l.find("1/2").unwrap(), l.top());
        assert!(LCapacity::validate(y.clone(), l.clone(), vec![z, z, z, o]).is_ok());
        assert!(LCapacity::validate(y.clone(), l.clone(), vec![z, o, o, o]).is_ok());
        assert!(matches!(
            LCapacity::validate(y.clone(), l.clone(), vec![z, o, z, m]),
            Err(CapacityError::BadBounds { .. })
        ));
        assert!(matches!(
            LCapacity::validate(y.clone(), l.clone(), vec![m, z, z, o]),
            Err(CapacityError::BadBounds { .. })
        ));
        let y3 = FiniteSpace::numbered("y", 3);
        let mut v = vec![z; 8];
        v[7] = o;
        v[1] = o;
        assert!(matches!(
            LCapacity::validate(y3, l, v),
            Err(CapacityError::NotMonotone { .. })
        ));
    }

    #[test]
    fn minimal_subgraph() {
        let (y, l) = (y2(), FiniteLattice::chain(3));
        let c = LCapacity::minimal(&y, &l);
        let sub = c.subgraph();
        let expected: BTreeSet<_> = y
            .subsets()
            .map(|f| (f, l.bottom()))
            .chain(l.elements().map(|e| (y.full(), e)))
            .collect();
        assert_eq!(sub, expected);
        assert_eq!(LCapacity::from_subgraph(y, l, &sub).unwrap(), c);
    }

    #[test]
    fn union_join_violation() {
        let y = FiniteSpace::numbered("y", 3);
        let l = FiniteLattice::boolean_square();
        let (a, b) = (l.find("a").unwrap(), l.find("b").unwrap());
        let mut values = vec![l.bottom(); 8];
        values[7] = l.top();
        for s in [0b011, 0b101, 0b110] {
            values[s] = a;
        }
        values[0b011] = l.top();
        values[0b101] = b;
        let c = LCapacity::validate(y.clone(), l.clone(), values).unwrap();
        let mut sub = c.subgraph();
        sub.insert((Subset(0b001), a));
        sub.insert((Subset(0b001), b));
        let err = LCapacity::from_subgraph(y, l, &sub).unwrap_err();
        assert!(
            matches!(err, CapacityError::NotDownSetInAlpha { .. } | CapacityError::UnionJoinViolated { .. }),
            "{err}"
        );
    }

    #[test]
    fn union_without_join() {
        let y = y2();
        let l = FiniteLattice::chain(2);
        let (z, o) = (l.bottom(), l.top());
        let sub: BTreeSet<_> = [
            (Subset(1), z),
            (Subset(1), o),
            (Subset(2), z),
            (Subset(2), o),
            (Subset(3), z),
        ]
        .into_iter()
        .collect();
        assert!(matches!(
            LCapacity::from_subgraph(y, l, &sub),
            Err(CapacityError::MissingFloor { .. })
        ));
    }

    #[test]
    fn identity_capacities() {
        let (x, l) = (y2(), FiniteLattice::chain(3));
        let id = LFuzzyAmbRep::identity(&x, &l);
        let c = capacity_of(&id, Subset(1));
        for b in x.subsets() {
            let expected = if b.contains(0) { l.top() } else { l.bottom() };
            assert_eq!(c.value(b), expected);
        }
        assert!(capacities_antitone(&id));
        let bot = LFuzzyAmbRep::bottom(&x, &x, &l);
        for a in x.subsets() {
            assert_eq!(capacity_of(&bot, a), LCapacity::minimal(&x, &l));
        }
    }
}
