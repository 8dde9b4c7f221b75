//! Finite bounded distributive lattices and t-norm tables over them.
//!
//! A lattice is supplied as a full `≤` matrix over opaque labels. Validation
//! derives the join and meet tables and rejects anything that is not a
//! bounded distributive lattice, naming the first violated axiom together
//! with a witness.

use std::fmt;

use thiserror::Error;

/// Default upper bound on the number of lattice elements.
pub const DEFAULT_MAX_ELEMENTS: usize = 16;

/// An element of a [`FiniteLattice`], addressed by its position in the
/// lattice's label list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub usize);

impl Elem {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderAxiom {
    Reflexivity,
    Antisymmetry,
    Transitivity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Join,
    Meet,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("order matrix is not {n}x{n}")]
    Malformed { n: usize },
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("lattice has {size} elements, limit is {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("not a partial order: {axiom:?} fails at {witness:?}")]
    NotAPartialOrder {
        axiom: OrderAxiom,
        witness: Vec<String>,
    },
    #[error("no bottom element")]
    NoBottom,
    #[error("no top element")]
    NoTop,
    #[error("no unique {kind:?} for ({a}, {b})")]
    MissingBound { kind: BoundKind, a: String, b: String },
    #[error("not distributive: {a} ∧ ({b} ∨ {c}) ≠ ({a} ∧ {b}) ∨ ({a} ∧ {c})")]
    NotDistributive { a: String, b: String, c: String },
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
}

/// A validated finite bounded distributive lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    labels: Vec<String>,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Validates `leq` (row `i`, column `j` means `labels[i] ≤ labels[j]`)
    /// with the default size limit.
    pub fn validate(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, LatticeError> {
        Self::validate_bounded(labels, leq, DEFAULT_MAX_ELEMENTS)
    }

    pub fn validate_bounded(
        labels: Vec<String>,
        leq: Vec<Vec<bool>>,
        max_elements: usize,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(LatticeError::Malformed { n });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        if n > max_elements {
            return Err(LatticeError::TooLarge {
                size: n,
                limit: max_elements,
            });
        }
        let name = |i: usize| labels[i].clone();
        let le = |i: usize, j: usize| leq[i][j];

        for i in 0..n {
            if !le(i, i) {
                return Err(LatticeError::NotAPartialOrder {
                    axiom: OrderAxiom::Reflexivity,
                    witness: vec![name(i)],
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le(i, j) && le(j, i) {
                    return Err(LatticeError::NotAPartialOrder {
                        axiom: OrderAxiom::Antisymmetry,
                        witness: vec![name(i), name(j)],
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if le(i, j) && le(j, k) && !le(i, k) {
                        return Err(LatticeError::NotAPartialOrder {
                            axiom: OrderAxiom::Transitivity,
                            witness: vec![name(i), name(j), name(k)],
                        });
                    }
                }
            }
        }

        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| le(b, x)))
            .ok_or(LatticeError::NoBottom)?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| le(x, t)))
            .ok_or(LatticeError::NoTop)?;

        // least upper / greatest lower bounds by scanning the bound sets
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let uppers: Vec<usize> = (0..n).filter(|&u| le(a, u) && le(b, u)).collect();
                let lub = uppers
                    .iter()
                    .copied()
                    .find(|&u| uppers.iter().all(|&v| le(u, v)))
                    .ok_or_else(|| LatticeError::MissingBound {
                        kind: BoundKind::Join,
                        a: name(a),
                        b: name(b),
                    })?;
                let lowers: Vec<usize> = (0..n).filter(|&l| le(l, a) && le(l, b)).collect();
                let glb = lowers
                    .iter()
                    .copied()
                    .find(|&l| lowers.iter().all(|&v| le(v, l)))
                    .ok_or_else(|| LatticeError::MissingBound {
                        kind: BoundKind::Meet,
                        a: name(a),
                        b: name(b),
                    })?;
                join[a * n + b] = lub;
                meet[a * n + b] = glb;
            }
        }

        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = meet[a * n + join[b * n + c]];
                    let rhs = join[meet[a * n + b] * n + meet[a * n + c]];
                    if lhs != rhs {
                        return Err(LatticeError::NotDistributive {
                            a: name(a),
                            b: name(b),
                            c: name(c),
                        });
                    }
                }
            }
        }

        let flat = leq.into_iter().flatten().collect();
        Ok(Self {
            labels,
            leq: flat,
            join,
            meet,
            bottom,
            top,
        })
    }

    /// The chain `0 < 1/(n-1) < … < 1` with `n` elements.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1, "a chain needs at least one element");
        let labels = (0..n)
            .map(|i| match (i, n - 1) {
                (0, _) => "0".to_string(),
                (i, d) if i == d => "1".to_string(),
                (i, d) => {
                    let g = gcd(i, d);
                    format!("{}/{}", i / g, d / g)
                }
            })
            .collect();
        let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        Self::validate_bounded(labels, leq, usize::MAX).expect("chains are distributive")
    }

    /// The four-element Boolean lattice `{0, a, b, 1}` with `a`, `b` incomparable.
    pub fn boolean_square() -> Self {
        let labels = ["0", "a", "b", "1"].map(String::from).to_vec();
        let leq = vec![
            vec![true, true, true, true],
            vec![false, true, false, true],
            vec![false, false, true, true],
            vec![false, false, false, true],
        ];
        Self::validate(labels, leq).expect("the Boolean square is distributive")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.len()).map(Elem)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e.0]
    }

    pub fn find(&self, label: &str) -> Result<Elem, LatticeError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(Elem)
            .ok_or_else(|| LatticeError::UnknownLabel(label.to_string()))
    }

    pub fn bottom(&self) -> Elem {
        Elem(self.bottom)
    }

    pub fn top(&self) -> Elem {
        Elem(self.top)
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.0 * self.len() + b.0]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.join[a.0 * self.len() + b.0])
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.meet[a.0 * self.len() + b.0])
    }

    /// Least upper bound of a family; the empty join is bottom.
    pub fn family_join<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items
            .into_iter()
            .fold(self.bottom(), |acc, e| self.join(acc, e))
    }

    /// Greatest lower bound of a family; the empty meet is top.
    pub fn family_meet<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.top(), |acc, e| self.meet(acc, e))
    }

    /// `a ≪ b`. Every directed subset of a finite lattice contains its
    /// supremum, so way-below coincides with `≤`; the directed-set
    /// definition lives in [`crate::oracle::way_below_definitional`].
    pub fn way_below(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b)
    }

    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.len()).map(|r| r.to_vec()).collect()
    }

    pub fn is_chain(&self) -> bool {
        self.incomparable_pair().is_none()
    }

    pub fn incomparable_pair(&self) -> Option<(Elem, Elem)> {
        self.elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .find(|&(a, b)| !self.leq(a, b) && !self.leq(b, a))
    }

    /// Elements listed bottom to top when the lattice is a chain.
    pub fn chain_levels(&self) -> Option<Vec<Elem>> {
        if !self.is_chain() {
            return None;
        }
        let mut levels: Vec<Elem> = self.elements().collect();
        levels.sort_by_key(|&e| self.elements().filter(|&x| self.leq(x, e)).count());
        Some(levels)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TNormError {
    #[error("t-norm table is not {n}x{n}")]
    Malformed { n: usize },
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("not commutative at ({0}, {1})")]
    NotCommutative(String, String),
    #[error("top is not neutral: 1 * {0} ≠ {0}")]
    TopNotNeutral(String),
    #[error("not monotone: {0} ≤ {1} but {0} * {2} ≰ {1} * {2}")]
    NotMonotone(String, String, String),
    #[error("does not distribute over join at ({0}, {1}, {2})")]
    NotJoinDistributive(String, String, String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A commutative lattice-ordered semigroup operation on a [`FiniteLattice`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TNorm {
    n: usize,
    table: Vec<usize>,
}

impl TNorm {
    /// The lattice meet, always a valid t-norm.
    pub fn meet(lattice: &FiniteLattice) -> Self {
        let n = lattice.len();
        let table = (0..n * n).map(|i| lattice.meet[i]).collect();
        Self { n, table }
    }

    /// `i * j = max(0, i + j - top)` on the levels of a chain.
    pub fn lukasiewicz(lattice: &FiniteLattice) -> Option<Self> {
        let levels = lattice.chain_levels()?;
        let top = levels.len() - 1;
        let rank = |e: Elem| levels.iter().position(|&l| l == e).unwrap();
        let table = lattice
            .elements()
            .flat_map(|a| lattice.elements().map(move |b| (a, b)))
            .map(|(a, b)| {
                let r = (rank(a) + rank(b)).saturating_sub(top);
                levels[r]
            })
            .collect::<Vec<_>>();
        let rows = table.chunks(lattice.len()).map(|r| r.to_vec()).collect();
        Some(Self::validate(lattice, rows).expect("Łukasiewicz on a chain is a t-norm"))
    }

    pub fn validate(lattice: &FiniteLattice, table: Vec<Vec<Elem>>) -> Result<Self, TNormError> {
        let n = lattice.len();
        if table.len() != n
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|e| e.0 >= n))
        {
            return Err(TNormError::Malformed { n });
        }
        let t = Self {
            n,
            table: table.into_iter().flatten().map(|e| e.0).collect(),
        };
        let l = |e: Elem| lattice.label(e).to_string();
        let els: Vec<Elem> = lattice.elements().collect();
        for &a in &els {
            if t.apply(lattice.top(), a) != a || t.apply(a, lattice.top()) != a {
                return Err(TNormError::TopNotNeutral(l(a)));
            }
            for &b in &els {
                if t.apply(a, b) != t.apply(b, a) {
                    return Err(TNormError::NotCommutative(l(a), l(b)));
                }
            }
        }
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    if t.apply(t.apply(a, b), c) != t.apply(a, t.apply(b, c)) {
                        return Err(TNormError::NotAssociative(l(a), l(b), l(c)));
                    }
                    if lattice.leq(a, b) && !lattice.leq(t.apply(a, c), t.apply(b, c)) {
                        return Err(TNormError::NotMonotone(l(a), l(b), l(c)));
                    }
                    let lhs = t.apply(a, lattice.join(b, c));
                    let rhs = lattice.join(t.apply(a, b), t.apply(a, c));
                    if lhs != rhs {
                        return Err(TNormError::NotJoinDistributive(l(a), l(b), l(c)));
                    }
                }
            }
        }
        Ok(t)
    }

    /// Parses a table given by element labels.
    pub fn from_labels(lattice: &FiniteLattice, rows: &[Vec<String>]) -> Result<Self, TNormError> {
        let table = rows
            .iter()
            .map(|r| r.iter().map(|s| lattice.find(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::validate(lattice, table)
    }

    #[inline]
    pub fn apply(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.table[a.0 * self.n + b.0])
    }

    pub fn is_meet_of(&self, lattice: &FiniteLattice) -> bool {
        *self == Self::meet(lattice)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.table
            .chunks(self.n)
            .map(|r| r.iter().map(|&i| Elem(i)).collect())
            .collect()
    }
}
