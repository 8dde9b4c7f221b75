//! JSON documents for lattices, representations, capacities and triple
//! sets. Output is canonical: subsets list points in space order, pairs and
//! families are sorted by mask, and default grades are omitted.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::capacity::{CapacityError, LCapacity};
use crate::crisp::{CrispAmbRep, CrispError};
use crate::fuzzy::{FuzzyError, LFuzzyAmbRep};
use crate::hyperencoding::{HyperError, TripleSet};
use crate::hyperspace::{FiniteSpace, SetFamily, SpaceError, Subset};
use crate::lattice::{FiniteLattice, LatticeError, TNorm, TNormError};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("malformed document: {0}")]
    Shape(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    TNorm(#[from] TNormError),
    #[error(transparent)]
    Crisp(Box<CrispError>),
    #[error(transparent)]
    Fuzzy(Box<FuzzyError>),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error(transparent)]
    Hyper(#[from] HyperError),
}

impl From<CrispError> for JsonError {
    fn from(e: CrispError) -> Self {
        JsonError::Crisp(Box::new(e))
    }
}

impl From<FuzzyError> for JsonError {
    fn from(e: FuzzyError) -> Self {
        JsonError::Fuzzy(Box::new(e))
    }
}

impl JsonError {
    /// True when the input could not be read as the claimed structure, as
    /// opposed to parsing fine and failing an axiom.
    pub fn is_malformed(&self) -> bool {
        match self {
            JsonError::Parse(_) | JsonError::Shape(_) | JsonError::Space(_) => true,
            JsonError::Lattice(e) => matches!(
                e,
                LatticeError::Empty
                    | LatticeError::Malformed { .. }
                    | LatticeError::DuplicateLabel(_)
                    | LatticeError::TooLarge { .. }
                    | LatticeError::UnknownLabel(_)
            ),
            JsonError::TNorm(e) => matches!(e, TNormError::Malformed { .. } | TNormError::Lattice(_)),
            JsonError::Crisp(e) => crisp_malformed(e),
            JsonError::Fuzzy(e) => match e.as_ref() {
                FuzzyError::Crisp(c) => crisp_malformed(c),
                FuzzyError::DuplicateGrade { .. }
                | FuzzyError::CutCount { .. }
                | FuzzyError::LatticeMismatch
                | FuzzyError::TNormMismatch { .. } => true,
                _ => false,
            },
            JsonError::Capacity(e) => matches!(e, CapacityError::Malformed { .. }),
            JsonError::Hyper(e) => !matches!(e, HyperError::Fuzzy(_)),
        }
    }
}

fn crisp_malformed(e: &CrispError) -> bool {
    !matches!(
        e,
        CrispError::NotUpwardClosedInB { .. }
            | CrispError::NotAntitoneInA { .. }
            | CrispError::MissingFullTarget { .. }
    )
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub elements: Vec<String>,
    /// `leq[i][j]` iff `elements[i] ≤ elements[j]`.
    pub leq: Vec<Vec<bool>>,
    #[serde(default)]
    pub tnorm: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CrispDoc {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub pairs: Vec<(Vec<String>, Vec<String>)>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub seed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FuzzyDoc {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub lattice: LatticeDoc,
    pub grades: Vec<(Vec<String>, Vec<String>, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CapacityDoc {
    pub space: Vec<String>,
    pub lattice: LatticeDoc,
    pub values: Vec<(Vec<String>, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TripleDoc {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub lattice: LatticeDoc,
    pub triples: Vec<(Vec<Vec<String>>, Vec<String>, String)>,
}

/// A lattice together with the t-norm its document declares (meet when
/// absent).
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    pub lattice: FiniteLattice,
    pub tnorm: TNorm,
}

/// Any document the CLI accepts.
#[derive(Debug, Clone)]
pub enum Document {
    Lattice(LatticeSpec),
    Crisp(CrispAmbRep),
    Fuzzy(LFuzzyAmbRep),
    Capacity(LCapacity),
    Triples(TripleSet),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Lattice(_) => "lattice",
            Document::Crisp(_) => "crisp",
            Document::Fuzzy(_) => "fuzzy",
            Document::Capacity(_) => "capacity",
            Document::Triples(_) => "triples",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Document::Lattice(s) => {
                let tnorm = (!s.tnorm.is_meet_of(&s.lattice)).then_some(&s.tnorm);
                serde_json::to_value(lattice_doc(&s.lattice, tnorm)).expect("serializable")
            }
            Document::Crisp(r) => crisp_to_json(r),
            Document::Fuzzy(r) => fuzzy_to_json(r),
            Document::Capacity(c) => capacity_to_json(c),
            Document::Triples(t) => triples_to_json(t),
        }
    }
}

/// Reads a document, deciding its kind from its fields.
pub fn parse_document(text: &str) -> Result<Document, JsonError> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| JsonError::Shape("top level must be an object".into()))?;
    let doc = if obj.contains_key("pairs") {
        Document::Crisp(crisp_from_doc(serde_json::from_value(value)?)?)
    } else if obj.contains_key("grades") {
        Document::Fuzzy(fuzzy_from_doc(serde_json::from_value(value)?)?)
    } else if obj.contains_key("values") {
        Document::Capacity(capacity_from_doc(serde_json::from_value(value)?)?)
    } else if obj.contains_key("triples") {
        Document::Triples(triples_from_doc(serde_json::from_value(value)?)?)
    } else if obj.contains_key("elements") {
        Document::Lattice(lattice_from_doc(&serde_json::from_value(value)?)?)
    } else {
        return Err(JsonError::Shape(
            "expected one of `pairs`, `grades`, `values`, `triples`, `elements`".into(),
        ));
    };
    Ok(doc)
}

pub fn lattice_from_doc(doc: &LatticeDoc) -> Result<LatticeSpec, JsonError> {
    let lattice = FiniteLattice::validate(doc.elements.clone(), doc.leq.clone())?;
    let tnorm = match &doc.tnorm {
        Some(rows) => TNorm::from_labels(&lattice, rows)?,
        None => TNorm::meet(&lattice),
    };
    Ok(LatticeSpec { lattice, tnorm })
}

pub fn lattice_doc(lattice: &FiniteLattice, tnorm: Option<&TNorm>) -> LatticeDoc {
    LatticeDoc {
        elements: lattice.labels().to_vec(),
        leq: lattice.leq_matrix(),
        tnorm: tnorm.map(|t| {
            t.rows()
                .into_iter()
                .map(|r| r.into_iter().map(|e| lattice.label(e).to_string()).collect())
                .collect()
        }),
    }
}

fn space(labels: &[String]) -> Result<FiniteSpace, JsonError> {
    Ok(FiniteSpace::new(labels.iter().cloned())?)
}

fn subset(space: &FiniteSpace, labels: &[String]) -> Result<Subset, JsonError> {
    let s = space.subset_from_labels(labels)?;
    if s.len() != labels.len() {
        return Err(JsonError::Shape(format!("repeated point in {labels:?}")));
    }
    Ok(s)
}

pub fn crisp_from_doc(doc: CrispDoc) -> Result<CrispAmbRep, JsonError> {
    let (x, y) = (space(&doc.source)?, space(&doc.target)?);
    let pairs = doc
        .pairs
        .iter()
        .map(|(a, b)| Ok((subset(&x, a)?, subset(&y, b)?)))
        .collect::<Result<Vec<_>, JsonError>>()?;
    let rep = if doc.seed {
        CrispAmbRep::from_seed(x, y, pairs)?
    } else {
        CrispAmbRep::validate(x, y, pairs)?
    };
    Ok(rep)
}

pub fn crisp_to_doc(r: &CrispAmbRep) -> CrispDoc {
    let (x, y) = (r.source(), r.target());
    CrispDoc {
        source: x.labels().to_vec(),
        target: y.labels().to_vec(),
        pairs: r
            .pairs()
            .map(|(a, b)| (x.subset_labels(a), y.subset_labels(b)))
            .collect(),
        seed: false,
    }
}

pub fn crisp_to_json(r: &CrispAmbRep) -> Value {
    serde_json::to_value(crisp_to_doc(r)).expect("serializable")
}

pub fn fuzzy_from_doc(doc: FuzzyDoc) -> Result<LFuzzyAmbRep, JsonError> {
    let (x, y) = (space(&doc.source)?, space(&doc.target)?);
    let spec = lattice_from_doc(&doc.lattice)?;
    let l = spec.lattice;
    let entries = doc
        .grades
        .iter()
        .map(|(a, b, g)| Ok((subset(&x, a)?, subset(&y, b)?, l.find(g)?)))
        .collect::<Result<Vec<_>, JsonError>>()?;
    Ok(LFuzzyAmbRep::validate(x, y, l, entries)?)
}

pub fn fuzzy_to_doc(r: &LFuzzyAmbRep, tnorm: Option<&TNorm>) -> FuzzyDoc {
    let (x, y, l) = (r.source(), r.target(), r.lattice());
    let grades = r
        .cells()
        .filter_map(|(a, b)| {
            let g = r.grade(a, b);
            let default = if b == y.full() { l.top() } else { l.bottom() };
            (g != default).then(|| {
                (
                    x.subset_labels(a),
                    y.subset_labels(b),
                    l.label(g).to_string(),
                )
            })
        })
        .collect();
    FuzzyDoc {
        source: x.labels().to_vec(),
        target: y.labels().to_vec(),
        lattice: lattice_doc(l, tnorm),
        grades,
    }
}

pub fn fuzzy_to_json(r: &LFuzzyAmbRep) -> Value {
    serde_json::to_value(fuzzy_to_doc(r, None)).expect("serializable")
}

pub fn capacity_from_doc(doc: CapacityDoc) -> Result<LCapacity, JsonError> {
    let y = space(&doc.space)?;
    let l = lattice_from_doc(&doc.lattice)?.lattice;
    let mut values = vec![None; y.mask_count()];
    for (s, g) in &doc.values {
        let s = if s.is_empty() {
            Subset::EMPTY
        } else {
            subset(&y, s)?
        };
        if values[s.0 as usize].replace(l.find(g)?).is_some() {
            return Err(JsonError::Shape(format!(
                "value given twice for {:?}",
                y.subset_labels(s)
            )));
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(m, v)| {
            v.ok_or_else(|| {
                JsonError::Shape(format!(
                    "no value for {:?}",
                    y.subset_labels(Subset(m as u32))
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LCapacity::validate(y, l, values)?)
}

pub fn capacity_to_json(c: &LCapacity) -> Value {
    let (y, l) = (c.space(), c.lattice());
    let doc = CapacityDoc {
        space: y.labels().to_vec(),
        lattice: lattice_doc(l, None),
        values: (0..y.mask_count() as u32)
            .map(|m| {
                let s = Subset(m);
                (y.subset_labels(s), l.label(c.value(s)).to_string())
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("serializable")
}

pub fn triples_from_doc(doc: TripleDoc) -> Result<TripleSet, JsonError> {
    let (x, y) = (space(&doc.source)?, space(&doc.target)?);
    let l = lattice_from_doc(&doc.lattice)?.lattice;
    let triples = doc
        .triples
        .iter()
        .map(|(fam, b, g)| {
            let members = fam
                .iter()
                .map(|a| subset(&x, a))
                .collect::<Result<Vec<_>, _>>()?;
            let family = SetFamily::from_subsets(members.iter().copied());
            if members.iter().any(|s| s.is_empty()) || family.len() != members.len() {
                return Err(JsonError::Shape("family with empty or repeated members".into()));
            }
            Ok((family, subset(&y, b)?, l.find(g)?))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    Ok(TripleSet::from_triples(&x, &y, &l, triples)?)
}

pub fn triples_to_json(t: &TripleSet) -> Value {
    let (x, y, l) = (t.source(), t.target(), t.lattice());
    let doc = TripleDoc {
        source: x.labels().to_vec(),
        target: y.labels().to_vec(),
        lattice: lattice_doc(l, None),
        triples: t
            .iter()
            .map(|(fam, b, e)| {
                (
                    fam.iter().map(|a| x.subset_labels(a)).collect(),
                    y.subset_labels(b),
                    l.label(e).to_string(),
                )
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crisp_round_trip() {
        let x = FiniteSpace::numbered("x", 2);
        let id = CrispAmbRep::identity(&x);
        let text = crisp_to_json(&id).to_string();
        match parse_document(&text).unwrap() {
            Document::Crisp(r) => assert_eq!(r, id),
            other => panic!("wrong kind {}", other.kind()),
        }
    }

    #[test]
    fn seeded_document() {
        let text = r#"{"source":["x1","x2"],"target":["y1","y2"],
            "pairs":[[["x1","x2"],["y1"]]],"seed":true}"#;
        let Document::Crisp(r) = parse_document(text).unwrap() else {
            panic!()
        };
        assert_eq!(r.pair_count(), 6);
    }

    #[test]
    fn fuzzy_defaults_and_round_trip() {
        let text = r#"{"source":["x1"],"target":["y1","y2"],
            "lattice":{"elements":["0","1"],"leq":[[true,true],[false,true]]},
            "grades":[]}"#;
        let Document::Fuzzy(r) = parse_document(text).unwrap() else {
            panic!()
        };
        assert_eq!(r, LFuzzyAmbRep::bottom(r.source(), r.target(), r.lattice()));
        let again = fuzzy_to_json(&r);
        assert_eq!(again["grades"], serde_json::json!([]));
        assert!(again["lattice"]["tnorm"].is_null());
    }

    #[test]
    fn error_classes() {
        let broken = r#"{"source":["x1"],"target":["y1","y2"],"pairs":[[["x1"],["y1"]]]}"#;
        let e = parse_document(broken).unwrap_err();
        assert!(!e.is_malformed(), "{e}");
        let unknown = r#"{"source":["x1"],"target":["y1"],"pairs":[[["x9"],["y1"]]]}"#;
        assert!(parse_document(unknown).unwrap_err().is_malformed());
        assert!(parse_document("[1,2]").unwrap_err().is_malformed());
        assert!(parse_document("{").unwrap_err().is_malformed());
        assert!(parse_document(r#"{"foo":1}"#).unwrap_err().is_malformed());
    }

    #[test]
    fn capacity_requires_every_subset() {
        let text = r#"{"space":["y1"],
            "lattice":{"elements":["0","1"],"leq":[[true,true],[false,true]]},
            "values":[[[],"0"]]}"#;
        assert!(parse_document(text).unwrap_err().is_malformed());
        let ok = r#"{"space":["y1"],
            "lattice":{"elements":["0","1"],"leq":[[true,true],[false,true]]},
            "values":[[[],"0"],[["y1"],"1"]]}"#;
        assert!(matches!(parse_document(ok).unwrap(), Document::Capacity(_)));
    }
}
