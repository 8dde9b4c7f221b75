//! Literal transcriptions of the defining formulas, kept apart from the fast
//! paths: subsets are `BTreeSet<usize>`, families are `Vec`s, and every
//! quantifier is an explicit loop.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::crisp::CrispAmbRep;
use crate::fuzzy::LFuzzyAmbRep;
use crate::hyperspace::{FiniteSpace, SetFamily, Subset};
use crate::lattice::{Elem, FiniteLattice, TNorm};

pub const MAX_DIRECTED_LATTICE: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("lattice has {size} elements, directed-set enumeration allows {limit}")]
    LatticeTooLarge { size: usize, limit: usize },
}

type Set = BTreeSet<usize>;

fn nonempty_subsets(n: usize) -> Vec<Set> {
    let mut out: Vec<Set> = vec![Set::new()];
    for p in 0..n {
        let with: Vec<Set> = out
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.insert(p);
                t
            })
            .collect();
        out.extend(with);
    }
    out.retain(|s| !s.is_empty());
    out
}

fn disjoint(a: &Set, b: &Set) -> bool {
    a.intersection(b).next().is_none()
}

fn mask(s: &Set) -> Subset {
    Subset(s.iter().map(|&p| 1u32 << p).sum())
}

fn unmask(s: Subset) -> Set {
    (0..32).filter(|&p| s.0 >> p & 1 == 1).collect()
}

/// `{B : B ∩ A ≠ ∅ for all A ∈ family}`.
pub fn traversal(space: &FiniteSpace, family: &[Set]) -> Vec<Set> {
    nonempty_subsets(space.size())
        .into_iter()
        .filter(|b| family.iter().all(|a| !disjoint(a, b)))
        .collect()
}

fn to_family(sets: &[Set]) -> SetFamily {
    SetFamily::from_subsets(sets.iter().map(mask))
}

fn from_family(family: SetFamily) -> Vec<Set> {
    family.iter().map(unmask).collect()
}

/// Applies the traversal formula twice.
pub fn double_traversal(space: &FiniteSpace, family: SetFamily) -> SetFamily {
    let once = traversal(space, &from_family(family));
    to_family(&traversal(space, &once))
}

/// All supersets of members.
pub fn upward_closure(space: &FiniteSpace, family: SetFamily) -> SetFamily {
    let members = from_family(family);
    to_family(
        &nonempty_subsets(space.size())
            .into_iter()
            .filter(|b| members.iter().any(|a| a.is_subset(b)))
            .collect::<Vec<_>>(),
    )
}

/// `C` is unavoidable for `A` iff it meets every admissible set.
pub fn is_unavoidable(r: &CrispAmbRep, a: Subset, c: Subset) -> bool {
    let c = unmask(c);
    nonempty_subsets(r.target().size())
        .iter()
        .filter(|b| r.contains(a, mask(b)))
        .all(|b| !disjoint(b, &c))
}

/// `(B̃, Ã) ∈ R^⊥` iff every `A` missing `Ã` has an admissible set missing `B̃`.
pub fn sms_definitional(r: &CrispAmbRep) -> CrispAmbRep {
    let xs = nonempty_subsets(r.source().size());
    let ys = nonempty_subsets(r.target().size());
    let mut pairs = Vec::new();
    for bt in &ys {
        for at in &xs {
            let related = xs.iter().filter(|a| disjoint(a, at)).all(|a| {
                ys.iter()
                    .any(|b| r.contains(mask(a), mask(b)) && disjoint(b, bt))
            });
            if related {
                pairs.push((mask(bt), mask(at)));
            }
        }
    }
    CrispAmbRep::validate(r.target().clone(), r.source().clone(), pairs)
        .expect("the pseudo-inverse is an ambiguous representation")
}

/// `(A, C)` related iff some `B` has `(A, B) ∈ R` and `(B, C) ∈ S`.
pub fn compose_definitional(r: &CrispAmbRep, s: &CrispAmbRep) -> CrispAmbRep {
    let xs = nonempty_subsets(r.source().size());
    let ys = nonempty_subsets(r.target().size());
    let zs = nonempty_subsets(s.target().size());
    let mut pairs = Vec::new();
    for a in &xs {
        for c in &zs {
            if ys
                .iter()
                .any(|b| r.contains(mask(a), mask(b)) && s.contains(mask(b), mask(c)))
            {
                pairs.push((mask(a), mask(c)));
            }
        }
    }
    CrispAmbRep::validate(r.source().clone(), s.target().clone(), pairs)
        .expect("composition of representations is a representation")
}

fn lattice_max(lattice: &FiniteLattice, grades: &[Elem]) -> Option<Elem> {
    grades
        .iter()
        .copied()
        .find(|&g| grades.iter().all(|&h| lattice.leq(h, g)))
}

/// `{(A, C, α) : α ≤ sup{β ∗ γ : (A, B, β) ∈ R, (B, C, γ) ∈ S}}`, read back
/// through the largest grade at each cell.
pub fn compose_subgraph(r: &LFuzzyAmbRep, s: &LFuzzyAmbRep, tnorm: &TNorm) -> LFuzzyAmbRep {
    let l = r.lattice();
    let sub_r = r.subgraph();
    let sub_s = s.subgraph();
    let mut triples: BTreeSet<(Subset, Subset, Elem)> = BTreeSet::new();
    for a in nonempty_subsets(r.source().size()).iter().map(mask) {
        for c in nonempty_subsets(s.target().size()).iter().map(mask) {
            let products: Vec<Elem> = sub_r
                .iter()
                .filter(|t| t.0 == a)
                .flat_map(|&(_, b, beta)| {
                    sub_s
                        .iter()
                        .filter(move |t| t.0 == b && t.1 == c)
                        .map(move |&(_, _, gamma)| tnorm.apply(beta, gamma))
                })
                .collect();
            let sup = l.family_join(products);
            for alpha in l.elements().filter(|&e| l.leq(e, sup)) {
                triples.insert((a, c, alpha));
            }
        }
    }
    LFuzzyAmbRep::from_fn(r.source().clone(), s.target().clone(), l.clone(), |a, c| {
        let grades: Vec<Elem> = triples
            .iter()
            .filter(|t| t.0 == a && t.1 == c)
            .map(|t| t.2)
            .collect();
        lattice_max(l, &grades).expect("down-sets of a sup are principal")
    })
    .expect("composition of representations is a representation")
}

/// `(B, A, α) ∈ R^⊥` for `α ≠ 0` iff `A` meets every `A′` for which `B` is
/// `R_β`-unavoidable for some `β ≤ α`.
pub fn fuzzy_sms_definitional(r: &LFuzzyAmbRep) -> LFuzzyAmbRep {
    let l = r.lattice();
    let xs = nonempty_subsets(r.source().size());
    let ys = nonempty_subsets(r.target().size());
    let unavoidable = |a: &Set, bt: &Set, beta: Elem| {
        ys.iter()
            .filter(|b| l.leq(beta, r.grade(mask(a), mask(b))))
            .all(|b| !disjoint(b, bt))
    };
    LFuzzyAmbRep::from_fn(r.target().clone(), r.source().clone(), l.clone(), |b, a| {
        let (bt, at) = (unmask(b), unmask(a));
        let grades: Vec<Elem> = l
            .elements()
            .filter(|&alpha| alpha != l.bottom())
            .filter(|&alpha| {
                xs.iter().all(|a2| {
                    let hit = l
                        .elements()
                        .filter(|&beta| l.leq(beta, alpha))
                        .any(|beta| unavoidable(a2, &bt, beta));
                    !hit || !disjoint(a2, &at)
                })
            })
            .collect();
        l.family_join(grades)
    })
    .expect("the pseudo-inverse is a representation")
}

/// `a ≪ b` iff every directed `D` with `sup D ≥ b` has some `d ≥ a`.
pub fn way_below_definitional(
    lattice: &FiniteLattice,
    a: Elem,
    b: Elem,
) -> Result<bool, OracleError> {
    let n = lattice.len();
    if n > MAX_DIRECTED_LATTICE {
        return Err(OracleError::LatticeTooLarge {
            size: n,
            limit: MAX_DIRECTED_LATTICE,
        });
    }
    let elems: Vec<Elem> = lattice.elements().collect();
    for d in nonempty_subsets(n) {
        let members: Vec<Elem> = d.iter().map(|&i| elems[i]).collect();
        let directed = members.iter().all(|&x| {
            members.iter().all(|&y| {
                members
                    .iter()
                    .any(|&z| lattice.leq(x, z) && lattice.leq(y, z))
            })
        });
        if !directed {
            continue;
        }
        let sup = members
            .iter()
            .copied()
            .find(|&s| members.iter().all(|&m| lattice.leq(m, s)));
        let Some(sup) = sup else { continue };
        if lattice.leq(b, sup) && !members.iter().any(|&m| lattice.leq(a, m)) {
            return Ok(false);
        }
    }
    Ok(true)
}
