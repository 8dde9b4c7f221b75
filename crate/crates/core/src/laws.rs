//! Law suites and counterexample searches over crisp and fuzzy
//! representations.
//!
//! Every law is a closure over a slice of inputs that returns a witness
//! object on failure. Inputs are either all representations of the given
//! shapes (exhaustive mode) or seeded random ones. Sweeps run in parallel
//! and report the lowest failing trial, so results do not depend on
//! scheduling.

use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::crisp::CrispAmbRep;
use crate::fuzzy::LFuzzyAmbRep;
use crate::generators::{random_fuzzy_rep_with, random_rep_with, trial_rng};
use crate::hyperspace::{FiniteSpace, SetFamily};
use crate::json::{crisp_to_json, fuzzy_to_json};
use crate::lattice::{FiniteLattice, TNorm};
use crate::oracle;

/// Upper bound on the number of input tuples an exhaustive run may visit.
pub const EXHAUSTIVE_LIMIT: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LawError {
    #[error("exhaustive run would visit {0} input tuples, limit is {EXHAUSTIVE_LIMIT}")]
    TooLarge(usize),
    #[error("exhaustive enumeration needs spaces of at most 3 points")]
    SpaceTooLarge,
    #[error("expected 3 sizes, got {0}")]
    Sizes(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    Counterexample,
}

#[derive(Debug, Clone, Serialize)]
pub struct LawResult {
    pub law: String,
    /// `asserted` laws decide the suite verdict; `exploratory` ones are
    /// reported only.
    pub status: &'static str,
    pub scope: String,
    pub checked: usize,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl LawResult {
    pub fn asserted(&self) -> bool {
        self.status == "asserted"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub sizes: Vec<usize>,
    pub exhaustive: bool,
    pub seed: u64,
    pub laws: Vec<LawResult>,
    pub verdict: Verdict,
}

impl SuiteReport {
    fn new(suite: &str, cfg: &Config, laws: Vec<LawResult>) -> Self {
        let failed = laws
            .iter()
            .any(|l| l.asserted() && l.verdict == Verdict::Counterexample);
        Self {
            suite: suite.into(),
            sizes: cfg.sizes.to_vec(),
            exhaustive: cfg.exhaustive,
            seed: cfg.seed,
            laws,
            verdict: if failed {
                Verdict::Counterexample
            } else {
                Verdict::Verified
            },
        }
    }

    pub fn summary(&self) -> String {
        let mut s = format!("suite {}: {:?}\n", self.suite, self.verdict);
        for l in &self.laws {
            s += &format!(
                "  [{}] {} ({}; {} checked): {:?}\n",
                l.status, l.law, l.scope, l.checked, l.verdict
            );
        }
        s
    }
}

/// Sweep configuration shared by all suites.
#[derive(Debug, Clone)]
pub struct Config {
    pub sizes: [usize; 3],
    pub trials: usize,
    pub seed: u64,
    pub exhaustive: bool,
}

impl Config {
    pub fn new(sizes: &[usize], trials: usize, seed: u64, exhaustive: bool) -> Result<Self, LawError> {
        let sizes: [usize; 3] = sizes.try_into().map_err(|_| LawError::Sizes(sizes.len()))?;
        Ok(Self {
            sizes,
            trials,
            seed,
            exhaustive,
        })
    }

    fn spaces(&self) -> [FiniteSpace; 3] {
        [
            FiniteSpace::numbered("x", self.sizes[0]),
            FiniteSpace::numbered("y", self.sizes[1]),
            FiniteSpace::numbered("z", self.sizes[2]),
        ]
    }
}

type Witness = Result<(), Value>;

fn fail(detail: &str) -> Witness {
    Err(json!({ "detail": detail }))
}

fn check(ok: bool, detail: &str) -> Witness {
    if ok {
        Ok(())
    } else {
        fail(detail)
    }
}

/// First failing index of `0..n`, searched in parallel.
fn first_failure(n: usize, f: impl Fn(usize) -> Option<Value> + Sync) -> Option<Value> {
    (0..n)
        .into_par_iter()
        .filter_map(|i| f(i).map(|w| (i, w)))
        .min_by_key(|(i, _)| *i)
        .map(|(_, w)| w)
}

fn stream_of(name: &str) -> u64 {
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

/// One input slot of a crisp law: a representation between two of the
/// configured spaces.
#[derive(Clone, Copy)]
struct Shape(usize, usize);

const XY: Shape = Shape(0, 1);
const YZ: Shape = Shape(1, 2);
const ZX: Shape = Shape(2, 0);
const XZ: Shape = Shape(0, 2);

type CrispCheck = Box<dyn Fn(&[CrispAmbRep]) -> Witness + Sync>;

struct CrispLaw {
    name: &'static str,
    status: &'static str,
    pseudo_invertible: bool,
    shapes: Vec<Shape>,
    check: CrispCheck,
}

impl CrispLaw {
    fn new(
        name: &'static str,
        shapes: &[Shape],
        check: impl Fn(&[CrispAmbRep]) -> Witness + Sync + 'static,
    ) -> Self {
        Self {
            name,
            status: "asserted",
            pseudo_invertible: false,
            shapes: shapes.to_vec(),
            check: Box::new(check),
        }
    }

    fn pseudo_invertible(mut self) -> Self {
        self.pseudo_invertible = true;
        self
    }

    fn exploratory(mut self) -> Self {
        self.status = "exploratory";
        self
    }
}

/// Enumerated representations per (source index, target index, restricted).
#[derive(Default)]
struct Pools(HashMap<(usize, usize, bool), Vec<CrispAmbRep>>);

impl Pools {
    fn get(&mut self, spaces: &[FiniteSpace; 3], shape: Shape, pinv: bool) -> Result<&[CrispAmbRep], LawError> {
        let (s, t) = (&spaces[shape.0], &spaces[shape.1]);
        if s.size() > 3 || t.size() > 3 {
            return Err(LawError::SpaceTooLarge);
        }
        let key = (shape.0, shape.1, pinv);
        Ok(self.0.entry(key).or_insert_with(|| {
            let mut all = CrispAmbRep::enumerate_all(s, t);
            if pinv {
                all.retain(CrispAmbRep::is_pseudo_invertible);
            }
            all
        }))
    }
}

fn random_crisp<R: Rng>(rng: &mut R, source: &FiniteSpace, target: &FiniteSpace) -> CrispAmbRep {
    let density = rng.gen_range(0.02..0.5);
    random_rep_with(rng, source, target, density)
}

fn run_crisp_law(law: &CrispLaw, cfg: &Config, pools: &mut Pools) -> Result<LawResult, LawError> {
    let spaces = cfg.spaces();
    let witness_of = |inputs: &[CrispAmbRep], mut w: Value| {
        w["inputs"] = inputs.iter().map(crisp_to_json).collect();
        w
    };
    let (checked, witness) = if cfg.exhaustive {
        let lists: Vec<Vec<CrispAmbRep>> = law
            .shapes
            .iter()
            .map(|&s| pools.get(&spaces, s, law.pseudo_invertible).map(<[_]>::to_vec))
            .collect::<Result<_, _>>()?;
        let total = lists
            .iter()
            .try_fold(1usize, |acc, l| acc.checked_mul(l.len()))
            .filter(|&t| t <= EXHAUSTIVE_LIMIT)
            .ok_or(LawError::TooLarge(
                lists.iter().map(Vec::len).fold(1usize, usize::saturating_mul),
            ))?;
        let witness = first_failure(total, |mut i| {
            let inputs: Vec<CrispAmbRep> = lists
                .iter()
                .map(|l| {
                    let r = l[i % l.len()].clone();
                    i /= l.len();
                    r
                })
                .collect();
            (law.check)(&inputs).err().map(|w| witness_of(&inputs, w))
        });
        (total, witness)
    } else {
        let stream = stream_of(law.name);
        let witness = first_failure(cfg.trials, |i| {
            let mut rng = trial_rng(cfg.seed, stream.wrapping_add(i as u64));
            let inputs: Vec<CrispAmbRep> = law
                .shapes
                .iter()
                .map(|&Shape(s, t)| {
                    let r = random_crisp(&mut rng, &spaces[s], &spaces[t]);
                    if law.pseudo_invertible {
                        r.sms().sms()
                    } else {
                        r
                    }
                })
                .collect();
            (law.check)(&inputs).err().map(|w| witness_of(&inputs, w))
        });
        (cfg.trials, witness)
    };
    Ok(LawResult {
        law: law.name.into(),
        status: law.status,
        scope: if law.pseudo_invertible {
            "pseudo-invertible inputs".into()
        } else {
            "all inputs".into()
        },
        checked,
        verdict: if witness.is_some() {
            Verdict::Counterexample
        } else {
            Verdict::Verified
        },
        witness,
    })
}

fn crisp_laws() -> Vec<CrispLaw> {
    vec![
        CrispLaw::new("anti-involution", &[XY], |r| {
            check(r[0].sms().sms() == r[0], "sms(sms(R)) ≠ R")
        })
        .pseudo_invertible(),
        CrispLaw::new("double inversion resets only the full-source row", &[XY], |r| {
            let (x, y) = (r[0].source(), r[0].target());
            let twice = r[0].sms().sms();
            let trivial = y.smallest_hyperspace().family();
            check(
                x.subsets().all(|a| {
                    let expected = if a == x.full() { trivial } else { r[0].admissible(a) };
                    twice.admissible(a) == expected
                }),
                "sms(sms(R)) differs from R off the full-source row",
            )
        }),
        CrispLaw::new("inclusion sms(sms(R)) ⊆ R", &[XY], |r| {
            check(r[0].sms().sms().is_subrelation_of(&r[0]), "sms(sms(R)) ⊄ R")
        }),
        CrispLaw::new("contravariance", &[XY, YZ], |r| {
            let lhs = r[0].compose(&r[1]).unwrap().sms();
            let rhs = r[1].sms().compose(&r[0].sms()).unwrap();
            check(lhs == rhs, "sms(R⊚S) ≠ sms(S)⊚sms(R)")
        })
        .pseudo_invertible(),
        CrispLaw::new("contravariance inclusion sms(S)⊚sms(R) ⊆ sms(R⊚S)", &[XY, YZ], |r| {
            let lhs = r[0].compose(&r[1]).unwrap().sms();
            let rhs = r[1].sms().compose(&r[0].sms()).unwrap();
            check(rhs.is_subrelation_of(&lhs), "sms(S)⊚sms(R) ⊄ sms(R⊚S)")
        }),
        CrispLaw::new("associativity", &[XY, YZ, ZX], |r| {
            let lhs = r[0].compose(&r[1]).unwrap().compose(&r[2]).unwrap();
            let rhs = r[0].compose(&r[1].compose(&r[2]).unwrap()).unwrap();
            check(lhs == rhs, "(R⊚S)⊚T ≠ R⊚(S⊚T)")
        }),
        CrispLaw::new("identity laws", &[XY], |r| {
            let (x, y) = (r[0].source(), r[0].target());
            let left = CrispAmbRep::identity(x).compose(&r[0]).unwrap();
            let right = r[0].compose(&CrispAmbRep::identity(y)).unwrap();
            check(left == r[0] && right == r[0], "identity is not a unit")
        }),
        CrispLaw::new("composition monotone", &[XY, XY, YZ, YZ], |r| {
            let small = r[0].meet(&r[1]).unwrap();
            let left = small.compose(&r[2]).unwrap().is_subrelation_of(&r[0].compose(&r[2]).unwrap());
            let small = r[2].meet(&r[3]).unwrap();
            let right = r[0].compose(&small).unwrap().is_subrelation_of(&r[0].compose(&r[2]).unwrap());
            check(left && right, "composition is not monotone")
        }),
        CrispLaw::new("composition distributes over join", &[XY, XY, YZ, YZ], |r| {
            let left = r[0].join(&r[1]).unwrap().compose(&r[2]).unwrap()
                == r[0].compose(&r[2]).unwrap().join(&r[1].compose(&r[2]).unwrap()).unwrap();
            let right = r[0].compose(&r[2].join(&r[3]).unwrap()).unwrap()
                == r[0].compose(&r[2]).unwrap().join(&r[0].compose(&r[3]).unwrap()).unwrap();
            check(left && right, "composition does not distribute over join")
        }),
        CrispLaw::new("sms preserves join", &[XY, XY], |r| {
            let lhs = r[0].join(&r[1]).unwrap().sms();
            check(lhs == r[0].sms().join(&r[1].sms()).unwrap(), "(R∪S)^⊥ ≠ R^⊥∪S^⊥")
        }),
        CrispLaw::new("sms preserves meet", &[XY, XY], |r| {
            let lhs = r[0].meet(&r[1]).unwrap().sms();
            check(lhs == r[0].sms().meet(&r[1].sms()).unwrap(), "(R∩S)^⊥ ≠ R^⊥∩S^⊥")
        }),
        CrispLaw::new("composition distributes over meet", &[XY, XY, YZ, YZ], meet_distributivity).exploratory(),
        CrispLaw::new("modular law", &[XY, YZ, XZ], modular).exploratory(),
    ]
}

fn meet_distributivity(r: &[CrispAmbRep]) -> Witness {
    let left = r[0].meet(&r[1]).unwrap().compose(&r[2]).unwrap();
    let left_rhs = r[0].compose(&r[2]).unwrap().meet(&r[1].compose(&r[2]).unwrap()).unwrap();
    if left != left_rhs {
        return fail("(R∩R′)⊚S ≠ (R⊚S)∩(R′⊚S)");
    }
    let right = r[0].compose(&r[2].meet(&r[3]).unwrap()).unwrap();
    let right_rhs = r[0].compose(&r[2]).unwrap().meet(&r[0].compose(&r[3]).unwrap()).unwrap();
    check(right == right_rhs, "R⊚(S∩S′) ≠ (R⊚S)∩(R⊚S′)")
}

fn modular(r: &[CrispAmbRep]) -> Witness {
    let (f, g, h) = (&r[0], &r[1], &r[2]);
    let lhs = f.compose(g).unwrap().meet(h).unwrap();
    let inner = g.meet(&f.sms().compose(h).unwrap()).unwrap();
    let rhs = f.compose(&inner).unwrap();
    if lhs.is_subrelation_of(&rhs) {
        return Ok(());
    }
    let (a, c) = lhs
        .pairs()
        .find(|&(a, c)| !rhs.contains(a, c))
        .expect("some pair escapes");
    Err(json!({
        "detail": "(f⊚g)∩h ⊄ f⊚(g∩(f^⊥⊚h))",
        "pair": [f.source().subset_labels(a), h.target().subset_labels(c)],
    }))
}

pub fn crisp_suite(cfg: &Config) -> Result<SuiteReport, LawError> {
    let mut pools = Pools::default();
    let laws = crisp_laws()
        .iter()
        .map(|law| run_crisp_law(law, cfg, &mut pools))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SuiteReport::new("crisp", cfg, laws))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchLaw {
    Modular,
    MeetDistributivity,
}

impl SearchLaw {
    pub fn name(self) -> &'static str {
        match self {
            SearchLaw::Modular => "modular law",
            SearchLaw::MeetDistributivity => "composition distributes over meet",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub law: SearchLaw,
    pub sizes: Vec<usize>,
    pub exhaustive: bool,
    pub seed: u64,
    pub checked: usize,
    /// `counterexample` with a witness, or `exhausted` (every input checked)
    /// or `no-counterexample-in-sample`.
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

/// Searches for a counterexample, exhaustively or over seeded samples.
pub fn search(law: SearchLaw, cfg: &Config) -> Result<SearchReport, LawError> {
    let target = crisp_laws()
        .into_iter()
        .find(|l| l.name == law.name())
        .expect("searchable laws are in the crisp catalogue");
    let result = run_crisp_law(&target, cfg, &mut Pools::default())?;
    let verdict = match (&result.witness, cfg.exhaustive) {
        (Some(_), _) => "counterexample",
        (None, true) => "exhausted",
        (None, false) => "no-counterexample-in-sample",
    };
    Ok(SearchReport {
        law,
        sizes: cfg.sizes.to_vec(),
        exhaustive: cfg.exhaustive,
        seed: cfg.seed,
        checked: result.checked,
        verdict,
        witness: result.witness,
    })
}

/// Lattices and t-norms a fuzzy suite runs over.
#[derive(Debug, Clone)]
pub struct FuzzySetting {
    pub lattice: FiniteLattice,
    pub tnorms: Vec<(String, TNorm)>,
}

impl FuzzySetting {
    /// Meet plus Łukasiewicz when the lattice is a chain.
    pub fn standard(lattice: FiniteLattice) -> Self {
        let mut tnorms = vec![("meet".to_string(), TNorm::meet(&lattice))];
        if let Some(l) = TNorm::lukasiewicz(&lattice).filter(|t| !t.is_meet_of(&lattice)) {
            tnorms.push(("lukasiewicz".into(), l));
        }
        Self { lattice, tnorms }
    }

    fn label(&self) -> String {
        format!("L = {{{}}}", self.lattice.labels().join(", "))
    }
}

type FuzzyCheck = Box<dyn Fn(&[LFuzzyAmbRep], &TNorm) -> Witness + Sync>;

struct FuzzyLaw {
    name: &'static str,
    status: &'static str,
    pseudo_invertible: bool,
    per_tnorm: bool,
    shapes: Vec<Shape>,
    check: FuzzyCheck,
}

impl FuzzyLaw {
    fn new(
        name: &'static str,
        shapes: &[Shape],
        check: impl Fn(&[LFuzzyAmbRep], &TNorm) -> Witness + Sync + 'static,
    ) -> Self {
        Self {
            name,
            status: "asserted",
            pseudo_invertible: false,
            per_tnorm: false,
            shapes: shapes.to_vec(),
            check: Box::new(check),
        }
    }

    fn pseudo_invertible(mut self) -> Self {
        self.pseudo_invertible = true;
        self
    }

    fn per_tnorm(mut self) -> Self {
        self.per_tnorm = true;
        self
    }

    fn exploratory(mut self) -> Self {
        self.status = "exploratory";
        self
    }
}

fn fuzzy_laws() -> Vec<FuzzyLaw> {
    vec![
        FuzzyLaw::new("anti-involution", &[XY], |r, _| {
            check(r[0].sms().sms() == r[0], "sms(sms(R)) ≠ R")
        })
        .pseudo_invertible(),
        FuzzyLaw::new("double inversion resets only the full-source row", &[XY], |r, _| {
            let (x, y, l) = (r[0].source(), r[0].target(), r[0].lattice());
            let twice = r[0].sms().sms();
            check(
                r[0].cells().all(|(a, b)| {
                    let expected = if a != x.full() {
                        r[0].grade(a, b)
                    } else if b == y.full() {
                        l.top()
                    } else {
                        l.bottom()
                    };
                    twice.grade(a, b) == expected
                }),
                "sms(sms(R)) differs from R off the full-source row",
            )
        }),
        FuzzyLaw::new("associativity", &[XY, YZ, ZX], |r, t| {
            let lhs = r[0].compose(&r[1], t).unwrap().compose(&r[2], t).unwrap();
            let rhs = r[0].compose(&r[1].compose(&r[2], t).unwrap(), t).unwrap();
            check(lhs == rhs, "(R⊚S)⊚T ≠ R⊚(S⊚T)")
        })
        .per_tnorm(),
        FuzzyLaw::new("identity laws", &[XY], |r, t| {
            let (x, y, l) = (r[0].source(), r[0].target(), r[0].lattice());
            let left = LFuzzyAmbRep::identity(x, l).compose(&r[0], t).unwrap();
            let right = r[0].compose(&LFuzzyAmbRep::identity(y, l), t).unwrap();
            check(left == r[0] && right == r[0], "identity is not a unit")
        })
        .per_tnorm(),
        FuzzyLaw::new("contravariance", &[XY, YZ], |r, t| {
            let lhs = r[0].compose(&r[1], t).unwrap().sms();
            let rhs = r[1].sms().compose(&r[0].sms(), t).unwrap();
            check(lhs == rhs, "sms(R⊚S) ≠ sms(S)⊚sms(R)")
        })
        .pseudo_invertible()
        .per_tnorm(),
        FuzzyLaw::new("sms preserves join", &[XY, XY], |r, _| {
            let lhs = r[0].join(&r[1]).unwrap().sms();
            check(lhs == r[0].sms().join(&r[1].sms()).unwrap(), "(R∨S)^⊥ ≠ R^⊥∨S^⊥")
        }),
        FuzzyLaw::new("sms preserves meet", &[XY, XY], |r, _| {
            let lhs = r[0].meet(&r[1]).unwrap().sms();
            check(lhs == r[0].sms().meet(&r[1].sms()).unwrap(), "(R∧S)^⊥ ≠ R^⊥∧S^⊥")
        }),
        FuzzyLaw::new("cuts reassemble", &[XY], |r, _| {
            let (x, y, l) = (r[0].source(), r[0].target(), r[0].lattice());
            let back = LFuzzyAmbRep::from_cuts(x.clone(), y.clone(), l.clone(), &r[0].cuts());
            let antitone = l.elements().all(|a| {
                l.elements()
                    .filter(|&b| l.leq(a, b))
                    .all(|b| r[0].cut(b).is_subrelation_of(&r[0].cut(a)))
            });
            check(back.as_ref() == Ok(&r[0]) && antitone, "cuts do not reassemble")
        }),
        FuzzyLaw::new("embedding is functorial", &[XY, YZ], |r, t| {
            let l = r[0].lattice();
            let (cr, cs) = (r[0].cut(l.top()), r[1].cut(l.top()));
            let lhs = LFuzzyAmbRep::embed_crisp(&cr.compose(&cs).unwrap(), l);
            let rhs = LFuzzyAmbRep::embed_crisp(&cr, l)
                .compose(&LFuzzyAmbRep::embed_crisp(&cs, l), t)
                .unwrap();
            check(lhs == rhs, "(R⊚S)_L ≠ R_L⊚S_L")
        })
        .per_tnorm(),
        FuzzyLaw::new("outputs validate", &[XY, YZ], |r, t| {
            let ok = r[0].compose(&r[1], t).unwrap().check().is_ok()
                && r[0].sms().check().is_ok()
                && r[0].join(&r[0].sms().sms()).unwrap().check().is_ok();
            check(ok, "an operation produced an invalid representation")
        })
        .per_tnorm(),
        FuzzyLaw::new("cuts commute with composition", &[XY, YZ], |r, t| {
            let l = r[0].lattice();
            let composed = r[0].compose(&r[1], t).unwrap();
            check(
                l.elements().all(|a| {
                    composed.cut(a) == r[0].cut(a).compose(&r[1].cut(a)).unwrap()
                }),
                "(R⊚S)_α ≠ R_α⊚S_α",
            )
        })
        .per_tnorm()
        .exploratory(),
    ]
}

fn random_fuzzy<R: Rng>(rng: &mut R, source: &FiniteSpace, target: &FiniteSpace, l: &FiniteLattice) -> LFuzzyAmbRep {
    let density = rng.gen_range(0.05..0.5);
    random_fuzzy_rep_with(rng, source, target, l, density)
}

fn run_fuzzy_law(law: &FuzzyLaw, cfg: &Config, setting: &FuzzySetting) -> Vec<LawResult> {
    let spaces = cfg.spaces();
    let tnorms: Vec<&(String, TNorm)> = if law.per_tnorm {
        setting.tnorms.iter().collect()
    } else {
        setting.tnorms.iter().take(1).collect()
    };
    tnorms
        .into_iter()
        .map(|(tname, tnorm)| {
            let stream = stream_of(law.name) ^ stream_of(tname);
            let witness = first_failure(cfg.trials, |i| {
                let mut rng = trial_rng(cfg.seed, stream.wrapping_add(i as u64));
                let inputs: Vec<LFuzzyAmbRep> = law
                    .shapes
                    .iter()
                    .map(|&Shape(s, t)| {
                        let r = random_fuzzy(&mut rng, &spaces[s], &spaces[t], &setting.lattice);
                        if law.pseudo_invertible {
                            r.sms().sms()
                        } else {
                            r
                        }
                    })
                    .collect();
                (law.check)(&inputs, tnorm).err().map(|mut w| {
                    w["inputs"] = inputs.iter().map(fuzzy_to_json).collect();
                    w["tnorm"] = json!(tname);
                    w
                })
            });
            let mut scope = setting.label();
            if law.per_tnorm {
                scope += &format!(", ∗ = {tname}");
            }
            if law.pseudo_invertible {
                scope += ", pseudo-invertible inputs";
            }
            LawResult {
                law: law.name.into(),
                status: law.status,
                scope,
                checked: cfg.trials,
                verdict: if witness.is_some() {
                    Verdict::Counterexample
                } else {
                    Verdict::Verified
                },
                witness,
            }
        })
        .collect()
}

pub fn fuzzy_suite(cfg: &Config, settings: &[FuzzySetting]) -> SuiteReport {
    let laws = fuzzy_laws();
    let results = settings
        .iter()
        .flat_map(|s| laws.iter().flat_map(move |law| run_fuzzy_law(law, cfg, s)))
        .collect();
    SuiteReport::new("fuzzy", cfg, results)
}

/// Agreement of the fast paths with the literal oracles.
pub fn oracle_suite(cfg: &Config, settings: &[FuzzySetting]) -> SuiteReport {
    let spaces = cfg.spaces();
    let sample = |name: &str, f: &(dyn Fn(&mut rand_chacha::ChaCha8Rng) -> Witness + Sync)| {
        let stream = stream_of(name);
        let witness = first_failure(cfg.trials, |i| {
            let mut rng = trial_rng(cfg.seed, stream.wrapping_add(i as u64));
            f(&mut rng).err()
        });
        result(name, "sampled", cfg.trials, witness)
    };
    let mut laws = vec![
        sample("crisp sms = definitional sms", &|rng| {
            let r = random_crisp(rng, &spaces[0], &spaces[1]);
            let ok = r.sms() == oracle::sms_definitional(&r);
            check(ok, "sms differs").map_err(|_| json!({ "inputs": [crisp_to_json(&r)] }))
        }),
        sample("crisp composition = definitional composition", &|rng| {
            let r = random_crisp(rng, &spaces[0], &spaces[1]);
            let s = random_crisp(rng, &spaces[1], &spaces[2]);
            let ok = r.compose(&s).unwrap() == oracle::compose_definitional(&r, &s);
            check(ok, "composition differs")
                .map_err(|_| json!({ "inputs": [crisp_to_json(&r), crisp_to_json(&s)] }))
        }),
        sample("unavoidable sets = definitional unavoidable sets", &|rng| {
            let r = random_crisp(rng, &spaces[0], &spaces[1]);
            let ok = spaces[0].subsets().all(|a| {
                spaces[1]
                    .subsets()
                    .all(|c| r.unavoidable(a).contains(c) == oracle::is_unavoidable(&r, a, c))
            });
            check(ok, "unavoidable sets differ").map_err(|_| json!({ "inputs": [crisp_to_json(&r)] }))
        }),
    ];
    for setting in settings {
        for (tname, tnorm) in &setting.tnorms {
            let name = format!("fuzzy composition = subgraph composition ({}, ∗ = {tname})", setting.label());
            laws.push(sample(&name, &|rng| {
                let r = random_fuzzy(rng, &spaces[0], &spaces[1], &setting.lattice);
                let s = random_fuzzy(rng, &spaces[1], &spaces[2], &setting.lattice);
                let ok = r.compose(&s, tnorm).unwrap() == oracle::compose_subgraph(&r, &s, tnorm);
                check(ok, "composition differs")
                    .map_err(|_| json!({ "inputs": [fuzzy_to_json(&r), fuzzy_to_json(&s)] }))
            }));
        }
        let name = format!("fuzzy sms = definitional sms ({})", setting.label());
        laws.push(sample(&name, &|rng| {
            let r = random_fuzzy(rng, &spaces[0], &spaces[1], &setting.lattice);
            check(r.sms() == oracle::fuzzy_sms_definitional(&r), "sms differs")
                .map_err(|_| json!({ "inputs": [fuzzy_to_json(&r)] }))
        }));
        let l = &setting.lattice;
        let table_ok = l.len() > oracle::MAX_DIRECTED_LATTICE
            || l.elements().all(|a| {
                l.elements()
                    .all(|b| oracle::way_below_definitional(l, a, b) == Ok(l.way_below(a, b)))
            });
        laws.push(result(
            &format!("way-below = definitional way-below ({})", setting.label()),
            "exhaustive",
            l.len() * l.len(),
            (!table_ok).then(|| json!({ "detail": "way-below table differs" })),
        ));
    }
    for space in &spaces {
        let (ok, checked) = double_traversal_agrees(space);
        laws.push(result(
            &format!("double traversal = upward closure, nonempty families, |X| = {}", space.size()),
            "exhaustive",
            checked,
            (!ok).then(|| json!({ "detail": "double traversal differs" })),
        ));
    }
    SuiteReport::new("oracle", cfg, laws)
}

/// Compares the fast traversal against the literal one on every nonempty
/// family when that is affordable (at most 4 points).
pub fn double_traversal_agrees(space: &FiniteSpace) -> (bool, usize) {
    if space.size() > 4 {
        return (true, 0);
    }
    let families = 1u64 << (space.mask_count() - 1);
    let ok = (1..families).into_par_iter().all(|k| {
        let f = SetFamily(k << 1);
        let fast = space.traversal(space.traversal(f).family()).family();
        fast == oracle::double_traversal(space, f) && fast == oracle::upward_closure(space, f)
    });
    (ok, families as usize - 1)
}

fn result(name: &str, scope: &str, checked: usize, witness: Option<Value>) -> LawResult {
    LawResult {
        law: name.into(),
        status: "asserted",
        scope: scope.into(),
        checked,
        verdict: if witness.is_some() {
            Verdict::Counterexample
        } else {
            Verdict::Verified
        },
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crisp_suite_small_exhaustive() {
        let cfg = Config::new(&[1, 2, 1], 0, 0, true).unwrap();
        let report = crisp_suite(&cfg).unwrap();
        assert_eq!(report.verdict, Verdict::Verified, "{}", report.summary());
    }

    #[test]
    fn sampled_runs_are_reproducible() {
        let cfg = Config::new(&[2, 2, 2], 20, 9, false).unwrap();
        let a = serde_json::to_value(crisp_suite(&cfg).unwrap()).unwrap();
        let b = serde_json::to_value(crisp_suite(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exhaustive_limit() {
        let cfg = Config::new(&[3, 3, 3], 0, 0, true).unwrap();
        assert!(matches!(
            search(SearchLaw::Modular, &cfg),
            Err(LawError::TooLarge(_))
        ));
        assert!(Config::new(&[2, 2], 1, 0, false).is_err());
    }
}
