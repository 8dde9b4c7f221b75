//! Builders for worked examples and seeded random representations.

use num_traits::Num;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::capacity::LCapacity;
use crate::crisp::CrispAmbRep;
use crate::fuzzy::LFuzzyAmbRep;
use crate::hyperspace::{FiniteSpace, SetFamily, SpaceError, Subset};
use crate::lattice::{Elem, FiniteLattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("lattice is not a chain")]
    NotAChain,
    #[error("chain has {found} levels, the grid needs {needed}")]
    ChainLength { needed: usize, found: usize },
    #[error("bad window: {0}")]
    BadWindow(String),
    #[error("bad metric: {0}")]
    BadMetric(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// A finite metric space with distances in `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTable<T> {
    space: FiniteSpace,
    dist: Vec<Vec<T>>,
    diameter: T,
}

impl<T: Num + PartialOrd + Copy> MetricTable<T> {
    pub fn new(space: FiniteSpace, dist: Vec<Vec<T>>) -> Result<Self, GenError> {
        let n = space.size();
        if dist.len() != n || dist.iter().any(|r| r.len() != n) {
            return Err(GenError::BadMetric(format!("distance table is not {n}x{n}")));
        }
        let zero = T::zero();
        for i in 0..n {
            if dist[i][i] != zero {
                return Err(GenError::BadMetric(format!("d({0}, {0}) ≠ 0", space.label(i))));
            }
            for j in 0..n {
                if dist[i][j] < zero || dist[i][j] != dist[j][i] {
                    return Err(GenError::BadMetric(format!(
                        "d({}, {}) is negative or asymmetric",
                        space.label(i),
                        space.label(j)
                    )));
                }
                if i != j && dist[i][j] == zero {
                    return Err(GenError::BadMetric(format!(
                        "distinct points {} and {} at distance 0",
                        space.label(i),
                        space.label(j)
                    )));
                }
                for k in 0..n {
                    if dist[i][k] > dist[i][j] + dist[j][k] {
                        return Err(GenError::BadMetric(format!(
                            "triangle inequality fails via {}",
                            space.label(j)
                        )));
                    }
                }
            }
        }
        let diameter = dist
            .iter()
            .flatten()
            .copied()
            .fold(zero, |m, d| if d > m { d } else { m });
        if diameter <= zero {
            return Err(GenError::BadMetric("diameter is 0".into()));
        }
        Ok(Self {
            space,
            dist,
            diameter,
        })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn diameter(&self) -> T {
        self.diameter
    }

    pub fn distance(&self, a: usize, b: usize) -> T {
        self.dist[a][b]
    }

    /// `max_{a ∈ A} min_{b ∈ B} d(a, b)`.
    pub fn excess(&self, a: Subset, b: Subset) -> T {
        a.points()
            .map(|p| {
                b.points()
                    .map(|q| self.dist[p][q])
                    .reduce(|m, d| if d < m { d } else { m })
                    .expect("nonempty target set")
            })
            .fold(T::zero(), |m, d| if d > m { d } else { m })
    }
}

fn from_usize<T: Num>(n: usize) -> T {
    (0..n).fold(T::zero(), |acc, _| acc + T::one())
}

/// `v(A, B) = 1 − excess(A, B) / diam`, floored onto the levels of a chain.
pub fn metric_rep<T: Num + PartialOrd + Copy>(
    metric: &MetricTable<T>,
    chain: &FiniteLattice,
) -> Result<LFuzzyAmbRep, GenError> {
    let levels = chain.chain_levels().ok_or(GenError::NotAChain)?;
    let top = levels.len() - 1;
    let steps: T = from_usize(top);
    let diam = metric.diameter;
    let x = metric.space.clone();
    Ok(LFuzzyAmbRep::from_fn(x.clone(), x, chain.clone(), |a, b| {
        let slack = diam - metric.excess(a, b);
        // largest k with k / top ≤ slack / diam
        let k = (0..=top)
            .rev()
            .find(|&k| from_usize::<T>(k) * diam <= steps * slack)
            .unwrap_or(0);
        levels[k]
    })
    .expect("floored metric grades satisfy the axioms"))
}

/// A `width × height` grid `Y` with a sub-window `X` placed at `origin`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridWindow {
    pub width: usize,
    pub height: usize,
    pub origin: (usize, usize),
    pub inner: (usize, usize),
}

impl GridWindow {
    pub fn new(
        width: usize,
        height: usize,
        origin: (usize, usize),
        inner: (usize, usize),
    ) -> Result<Self, GenError> {
        if width == 0 || height == 0 || inner.0 == 0 || inner.1 == 0 {
            return Err(GenError::BadWindow("dimensions must be positive".into()));
        }
        if origin.0 + inner.0 > width || origin.1 + inner.1 > height {
            return Err(GenError::BadWindow("sub-window leaves the grid".into()));
        }
        let g = Self {
            width,
            height,
            origin,
            inner,
        };
        FiniteSpace::new(g.outer_cells().map(cell_label))?;
        Ok(g)
    }

    /// The whole grid as its own window.
    pub fn full(width: usize, height: usize) -> Result<Self, GenError> {
        Self::new(width, height, (0, 0), (width, height))
    }

    fn outer_cells(&self) -> impl Iterator<Item = (usize, usize)> {
        let w = self.width;
        (0..self.height).flat_map(move |r| (0..w).map(move |c| (c, r)))
    }

    fn inner_cells(&self) -> impl Iterator<Item = (usize, usize)> {
        let (ox, oy) = self.origin;
        let (w, h) = self.inner;
        (0..h).flat_map(move |r| (0..w).map(move |c| (ox + c, oy + r)))
    }

    pub fn source(&self) -> FiniteSpace {
        FiniteSpace::new(self.inner_cells().map(cell_label)).expect("checked in new")
    }

    pub fn target(&self) -> FiniteSpace {
        FiniteSpace::new(self.outer_cells().map(cell_label)).expect("checked in new")
    }

    fn source_coords(&self) -> Vec<(usize, usize)> {
        self.inner_cells().collect()
    }

    fn target_index(&self, (c, r): (usize, usize)) -> usize {
        r * self.width + c
    }

    /// Largest Chebyshev shift inside the grid.
    pub fn radius(&self) -> usize {
        self.width.max(self.height) - 1
    }

    /// Column set of a subset of the sub-window.
    pub fn source_columns(&self, a: Subset) -> u32 {
        let coords = self.source_coords();
        a.points().fold(0, |m, p| m | 1 << coords[p].0)
    }

    /// Column set of a subset of the grid.
    pub fn target_columns(&self, b: Subset) -> u32 {
        b.points().fold(0, |m, p| m | 1 << (p % self.width))
    }
}

fn cell_label((c, r): (usize, usize)) -> String {
    format!("c{c}r{r}")
}

/// `v(A, B) = r − min{‖m‖∞ : A + m ⊆ B}`, and 0 when no shift embeds `A`.
pub fn translation_rep(grid: &GridWindow, chain: &FiniteLattice) -> Result<LFuzzyAmbRep, GenError> {
    let levels = chain.chain_levels().ok_or(GenError::NotAChain)?;
    let r = grid.radius();
    if levels.len() != r + 1 {
        return Err(GenError::ChainLength {
            needed: r + 1,
            found: levels.len(),
        });
    }
    let coords = grid.source_coords();
    let (w, h) = (grid.width as isize, grid.height as isize);
    let shifted = |a: Subset, dx: isize, dy: isize| -> Option<Subset> {
        a.points()
            .map(|p| {
                let (c, row) = (coords[p].0 as isize + dx, coords[p].1 as isize + dy);
                ((0..w).contains(&c) && (0..h).contains(&row))
                    .then(|| grid.target_index((c as usize, row as usize)))
            })
            .collect::<Option<Vec<_>>>()
            .map(Subset::from_points)
    };
    let reach = r as isize;
    Ok(LFuzzyAmbRep::from_fn(grid.source(), grid.target(), chain.clone(), |a, b| {
        let best = (-reach..=reach)
            .flat_map(|dx| (-reach..=reach).map(move |dy| (dx, dy)))
            .filter(|&(dx, dy)| shifted(a, dx, dy).is_some_and(|s| s.is_subset_of(b)))
            .map(|(dx, dy)| dx.unsigned_abs().max(dy.unsigned_abs()))
            .min();
        levels[best.map_or(0, |m| r - m)]
    })
    .expect("translation grades satisfy the axioms"))
}

/// `(A, B) ∈ R` iff the columns of `A` lie among the columns of `B`.
pub fn projection_rep(grid: &GridWindow) -> CrispAmbRep {
    let (x, y) = (grid.source(), grid.target());
    CrispAmbRep::from_map(x, y.clone(), |a| {
        let cols = grid.source_columns(a);
        SetFamily::from_subsets(y.subsets().filter(|&b| cols & !grid.target_columns(b) == 0))
    })
    .expect("column inclusion is an ambiguous representation")
}

/// A deterministic RNG for trial `stream` of a sweep seeded with `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// The closure of a random seed: each pair `(A, B)` is seeded with
/// probability `density`.
pub fn random_rep_with<R: Rng>(
    rng: &mut R,
    source: &FiniteSpace,
    target: &FiniteSpace,
    density: f64,
) -> CrispAmbRep {
    let mut seed = Vec::new();
    for a in source.subsets() {
        for b in target.subsets() {
            if rng.gen_bool(density.clamp(0.0, 1.0)) {
                seed.push((a, b));
            }
        }
    }
    CrispAmbRep::from_seed(source.clone(), target.clone(), seed).expect("seed pairs are in range")
}

pub fn random_rep(source: &FiniteSpace, target: &FiniteSpace, seed: u64, density: f64) -> CrispAmbRep {
    random_rep_with(&mut ChaCha8Rng::seed_from_u64(seed), source, target, density)
}

fn random_grade<R: Rng>(rng: &mut R, lattice: &FiniteLattice, density: f64) -> Elem {
    lattice.family_join(
        lattice
            .elements()
            .filter(|&e| e != lattice.bottom())
            .filter(|_| rng.gen_bool(density.clamp(0.0, 1.0)))
            .collect::<Vec<_>>(),
    )
}

/// Random grades, then the least valid majorant: `v(A, Y) = 1`, then
/// upward propagation in `B`, then downward propagation in `A`.
pub fn random_fuzzy_rep_with<R: Rng>(
    rng: &mut R,
    source: &FiniteSpace,
    target: &FiniteSpace,
    lattice: &FiniteLattice,
    density: f64,
) -> LFuzzyAmbRep {
    let (sm, tm) = (source.mask_count(), target.mask_count());
    let mut v = vec![lattice.bottom(); sm * tm];
    for a in source.subsets() {
        for b in target.subsets() {
            v[a.0 as usize * tm + b.0 as usize] = random_grade(rng, lattice, density);
        }
        v[a.0 as usize * tm + target.full().0 as usize] = lattice.top();
    }
    let mut by_size: Vec<Subset> = target.subsets().collect();
    by_size.sort_by_key(|s| s.len());
    for a in source.subsets() {
        for &b in &by_size {
            let below = b
                .points()
                .map(|p| Subset(b.0 & !(1 << p)))
                .filter(|s| !s.is_empty())
                .map(|s| v[a.0 as usize * tm + s.0 as usize]);
            let i = a.0 as usize * tm + b.0 as usize;
            v[i] = lattice.family_join(below.chain([v[i]]).collect::<Vec<_>>());
        }
    }
    let mut by_size: Vec<Subset> = source.subsets().collect();
    by_size.sort_by_key(|s| std::cmp::Reverse(s.len()));
    for &a in &by_size {
        for b in target.subsets() {
            let above = (0..source.size())
                .filter(|&p| !a.contains(p))
                .map(|p| v[(a.0 | 1 << p) as usize * tm + b.0 as usize]);
            let i = a.0 as usize * tm + b.0 as usize;
            v[i] = lattice.family_join(above.chain([v[i]]).collect::<Vec<_>>());
        }
    }
    LFuzzyAmbRep::from_fn(source.clone(), target.clone(), lattice.clone(), |a, b| {
        v[a.0 as usize * tm + b.0 as usize]
    })
    .expect("repaired grades satisfy the axioms")
}

pub fn random_fuzzy_rep(
    source: &FiniteSpace,
    target: &FiniteSpace,
    lattice: &FiniteLattice,
    seed: u64,
    density: f64,
) -> LFuzzyAmbRep {
    random_fuzzy_rep_with(
        &mut ChaCha8Rng::seed_from_u64(seed),
        source,
        target,
        lattice,
        density,
    )
}

/// Random values made monotone by upward propagation, with `c(∅) = 0` and
/// `c(Y) = 1`.
pub fn random_capacity_with<R: Rng>(
    rng: &mut R,
    space: &FiniteSpace,
    lattice: &FiniteLattice,
    density: f64,
) -> LCapacity {
    let mut values: Vec<Elem> = (0..space.mask_count())
        .map(|_| random_grade(rng, lattice, density))
        .collect();
    values[0] = lattice.bottom();
    values[space.full().0 as usize] = lattice.top();
    let mut order: Vec<Subset> = space.subsets().collect();
    order.sort_by_key(|s| s.len());
    for s in order {
        let below: Vec<Elem> = s
            .points()
            .map(|p| values[(s.0 & !(1 << p)) as usize])
            .chain([values[s.0 as usize]])
            .collect();
        values[s.0 as usize] = lattice.family_join(below);
    }
    LCapacity::validate(space.clone(), lattice.clone(), values).expect("propagated values are monotone")
}
