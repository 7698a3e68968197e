//! Multi-adjoint frames and their contexts, with the JSON file formats.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::lattice::{FiniteLattice, LatticeError, LatticeSpec};
use crate::triple::{AdjointTriple, TripleError};

/// Which kind of frame, and so which concept lattice, is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Formal,
    #[serde(alias = "property")]
    PropertyOriented,
    #[serde(alias = "object")]
    ObjectOriented,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Formal, Mode::PropertyOriented, Mode::ObjectOriented];
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Formal => "formal",
            Mode::PropertyOriented => "property_oriented",
            Mode::ObjectOriented => "object_oriented",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "formal" => Ok(Mode::Formal),
            "property" | "property_oriented" => Ok(Mode::PropertyOriented),
            "object" | "object_oriented" => Ok(Mode::ObjectOriented),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrameError {
    #[error("{0}")]
    Parse(String),
    #[error("lattice {which}: {source}")]
    Lattice { which: &'static str, source: LatticeError },
    #[error("triple {index}: {source}")]
    Triple { index: usize, source: TripleError },
    #[error("a frame needs at least one triple")]
    NoTriples,
    #[error("object `{object}` has type {ty}, outside 1..={n}")]
    TypeOutOfRange { object: String, ty: usize, n: usize },
}

impl FrameError {
    /// Structural problems in the input files, as opposed to law failures.
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            FrameError::Parse(_)
                | FrameError::Triple {
                    source: TripleError::Shape { .. } | TripleError::Lattice(LatticeError::UnknownElement(_)),
                    ..
                }
                | FrameError::Lattice {
                    source: LatticeError::BadMatrix { .. } | LatticeError::DuplicateElement(_),
                    ..
                }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSpec {
    /// Rows follow the triple's left lattice, columns its right lattice,
    /// entries name elements of its value lattice.
    pub conjunction: Vec<Vec<String>>,
}

/// Frame file: `{"mode", "L1", "L2", "P", "triples": [{"conjunction"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameSpec {
    pub mode: Mode,
    #[serde(rename = "L1")]
    pub l1: LatticeSpec,
    #[serde(rename = "L2")]
    pub l2: LatticeSpec,
    #[serde(rename = "P")]
    pub p: LatticeSpec,
    pub triples: Vec<TripleSpec>,
}

/// Lattices `L1, L2, P` with `n >= 1` adjoint triples whose roles depend on
/// the mode: `(L1, L2, P)` formal, `(P, L2, L1)` property-oriented,
/// `(L1, P, L2)` object-oriented.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiAdjointFrame {
    mode: Mode,
    l1: Arc<FiniteLattice>,
    l2: Arc<FiniteLattice>,
    p: Arc<FiniteLattice>,
    triples: Vec<AdjointTriple>,
}

impl MultiAdjointFrame {
    pub fn new(
        mode: Mode,
        l1: Arc<FiniteLattice>,
        l2: Arc<FiniteLattice>,
        p: Arc<FiniteLattice>,
        conjunctions: &[Vec<Vec<String>>],
    ) -> Result<Self, FrameError> {
        if conjunctions.is_empty() {
            return Err(FrameError::NoTriples);
        }
        let (left, right, value) = Self::roles(mode, &l1, &l2, &p);
        let triples = conjunctions
            .iter()
            .enumerate()
            .map(|(i, rows)| {
                AdjointTriple::from_names(left.clone(), right.clone(), value.clone(), rows)
                    .map_err(|source| FrameError::Triple { index: i + 1, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            mode,
            l1,
            l2,
            p,
            triples,
        })
    }

    /// Builds a frame whose conjunctions are given on element indices.
    pub fn from_fns(
        mode: Mode,
        l1: Arc<FiniteLattice>,
        l2: Arc<FiniteLattice>,
        p: Arc<FiniteLattice>,
        conjunctions: &[&dyn Fn(usize, usize) -> usize],
    ) -> Result<Self, FrameError> {
        if conjunctions.is_empty() {
            return Err(FrameError::NoTriples);
        }
        let (left, right, value) = Self::roles(mode, &l1, &l2, &p);
        let triples = conjunctions
            .iter()
            .enumerate()
            .map(|(i, f)| {
                AdjointTriple::from_fn(left.clone(), right.clone(), value.clone(), f)
                    .map_err(|source| FrameError::Triple { index: i + 1, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            mode,
            l1,
            l2,
            p,
            triples,
        })
    }

    pub fn from_spec(spec: &FrameSpec) -> Result<Self, FrameError> {
        let lattice = |which: &'static str, s: &LatticeSpec| {
            FiniteLattice::validate(s)
                .map(Arc::new)
                .map_err(|source| FrameError::Lattice { which, source })
        };
        let (l1, l2, p) = (
            lattice("L1", &spec.l1)?,
            lattice("L2", &spec.l2)?,
            lattice("P", &spec.p)?,
        );
        let tables: Vec<Vec<Vec<String>>> = spec.triples.iter().map(|t| t.conjunction.clone()).collect();
        Self::new(spec.mode, l1, l2, p, &tables)
    }

    pub fn from_json(text: &str) -> Result<Self, FrameError> {
        let spec: FrameSpec = serde_json::from_str(text).map_err(|e| FrameError::Parse(format!("frame: {e}")))?;
        Self::from_spec(&spec)
    }

    pub fn to_spec(&self) -> FrameSpec {
        FrameSpec {
            mode: self.mode,
            l1: self.l1.to_spec(),
            l2: self.l2.to_spec(),
            p: self.p.to_spec(),
            triples: self
                .triples
                .iter()
                .map(|t| TripleSpec {
                    conjunction: t.table_names(),
                })
                .collect(),
        }
    }

    /// Reinterprets the same tables under another mode.
    pub fn with_mode(&self, mode: Mode) -> Result<Self, FrameError> {
        let mut spec = self.to_spec();
        spec.mode = mode;
        Self::from_spec(&spec)
    }

    fn roles(
        mode: Mode,
        l1: &Arc<FiniteLattice>,
        l2: &Arc<FiniteLattice>,
        p: &Arc<FiniteLattice>,
    ) -> (Arc<FiniteLattice>, Arc<FiniteLattice>, Arc<FiniteLattice>) {
        match mode {
            Mode::Formal => (l1.clone(), l2.clone(), p.clone()),
            Mode::PropertyOriented => (p.clone(), l2.clone(), l1.clone()),
            Mode::ObjectOriented => (l1.clone(), p.clone(), l2.clone()),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn l1(&self) -> &Arc<FiniteLattice> {
        &self.l1
    }

    pub fn l2(&self) -> &Arc<FiniteLattice> {
        &self.l2
    }

    pub fn p(&self) -> &Arc<FiniteLattice> {
        &self.p
    }

    pub fn triples(&self) -> &[AdjointTriple] {
        &self.triples
    }

    /// Number of triples, `n`.
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectSpec {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: usize,
}

/// Context file: `{"attributes", "objects": [{"name", "type"}], "phi"}` with
/// `phi` rows indexed by attributes and entries naming elements of `P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextSpec {
    pub attributes: Vec<String>,
    pub objects: Vec<ObjectSpec>,
    pub phi: Vec<Vec<String>>,
}

/// A `P`-valued relation between attributes `X` and objects `Y`, with each
/// object typed by a triple index in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    attributes: Vec<String>,
    objects: Vec<String>,
    types: Vec<usize>,
    phi: Vec<usize>,
}

impl Context {
    /// `phi[x * |Y| + y]` indexes an element of `P`; `types` are 1-based.
    pub fn new(
        attributes: Vec<String>,
        objects: Vec<String>,
        types: Vec<usize>,
        phi: Vec<usize>,
    ) -> Result<Self, FrameError> {
        if types.len() != objects.len() {
            return Err(FrameError::Parse(format!(
                "{} objects but {} types",
                objects.len(),
                types.len()
            )));
        }
        if phi.len() != attributes.len() * objects.len() {
            return Err(FrameError::Parse(format!(
                "phi has {} cells, expected {}",
                phi.len(),
                attributes.len() * objects.len()
            )));
        }
        Ok(Self {
            attributes,
            objects,
            types,
            phi,
        })
    }

    pub fn from_spec(spec: &ContextSpec, p: &FiniteLattice) -> Result<Self, FrameError> {
        if spec.phi.len() != spec.attributes.len() {
            return Err(FrameError::Parse(format!(
                "phi has {} rows for {} attributes",
                spec.phi.len(),
                spec.attributes.len()
            )));
        }
        let mut phi = Vec::with_capacity(spec.attributes.len() * spec.objects.len());
        for (attr, row) in spec.attributes.iter().zip(&spec.phi) {
            if row.len() != spec.objects.len() {
                return Err(FrameError::Parse(format!(
                    "phi row for `{attr}` has {} cells for {} objects",
                    row.len(),
                    spec.objects.len()
                )));
            }
            for (obj, cell) in spec.objects.iter().zip(row) {
                let v = p.index_of(cell).ok_or_else(|| {
                    FrameError::Parse(format!(
                        "phi(`{attr}`, `{}`) = `{cell}` is not an element of P",
                        obj.name
                    ))
                })?;
                phi.push(v);
            }
        }
        Self::new(
            spec.attributes.clone(),
            spec.objects.iter().map(|o| o.name.clone()).collect(),
            spec.objects.iter().map(|o| o.ty).collect(),
            phi,
        )
    }

    pub fn from_json(text: &str, frame: &MultiAdjointFrame) -> Result<Self, FrameError> {
        let spec: ContextSpec = serde_json::from_str(text).map_err(|e| FrameError::Parse(format!("context: {e}")))?;
        Self::from_spec(&spec, frame.p())
    }

    pub fn to_spec(&self, p: &FiniteLattice) -> ContextSpec {
        ContextSpec {
            attributes: self.attributes.clone(),
            objects: self
                .objects
                .iter()
                .zip(&self.types)
                .map(|(name, &ty)| ObjectSpec { name: name.clone(), ty })
                .collect(),
            phi: (0..self.attributes.len())
                .map(|x| {
                    (0..self.objects.len())
                        .map(|y| p.name(self.phi(x, y)).to_string())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    /// 1-based triple index of object `y`.
    pub fn type_of(&self, y: usize) -> usize {
        self.types[y]
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    pub fn phi(&self, x: usize, y: usize) -> usize {
        self.phi[x * self.objects.len() + y]
    }

    /// Checks every object type lies in `1..=n`.
    pub fn check_types(&self, n: usize) -> Result<(), FrameError> {
        for (name, &ty) in self.objects.iter().zip(&self.types) {
            if ty == 0 || ty > n {
                return Err(FrameError::TypeOutOfRange {
                    object: name.clone(),
                    ty,
                    n,
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GODEL: &str = r#"{
        "mode": "formal",
        "L1": {"elements": ["0","h","1"], "leq": [[true,true,true],[false,true,true],[false,false,true]]},
        "L2": {"elements": ["0","h","1"], "leq": [[true,true,true],[false,true,true],[false,false,true]]},
        "P":  {"elements": ["0","h","1"], "leq": [[true,true,true],[false,true,true],[false,false,true]]},
        "triples": [{"conjunction": [["0","0","0"],["0","h","h"],["0","h","1"]]}]
    }"#;

    #[test]
    fn parses_frame() {
        let f = MultiAdjointFrame::from_json(GODEL).unwrap();
        assert_eq!(f.mode(), Mode::Formal);
        assert_eq!(f.len(), 1);
        assert_eq!(MultiAdjointFrame::from_spec(&f.to_spec()).unwrap(), f);
    }

    #[test]
    fn malformed_json_is_parse_error() {
        let err = MultiAdjointFrame::from_json("{ not json").unwrap_err();
        assert!(err.is_parse());
    }

    #[test]
    fn non_join_preserving_is_not_parse_error() {
        let bad = GODEL.replace(r#"[["0","0","0"]"#, r#"[["0","0","h"]"#);
        let err = MultiAdjointFrame::from_json(&bad).unwrap_err();
        assert!(matches!(
            err,
            FrameError::Triple {
                index: 1,
                source: TripleError::NotJoinPreserving { .. }
            }
        ));
        assert!(!err.is_parse());
    }

    #[test]
    fn context_unknown_cell() {
        let f = MultiAdjointFrame::from_json(GODEL).unwrap();
        let text = r#"{"attributes": ["a"], "objects": [{"name": "o", "type": 1}], "phi": [["q"]]}"#;
        let err = Context::from_json(text, &f).unwrap_err();
        assert_eq!(
            err,
            FrameError::Parse("phi(`a`, `o`) = `q` is not an element of P".into())
        );
    }

    #[test]
    fn context_type_range() {
        let c = Context::new(vec![], vec!["o".into()], vec![2], vec![]).unwrap();
        assert!(matches!(
            c.check_types(1),
            Err(FrameError::TypeOutOfRange { ty: 2, .. })
        ));
        assert!(c.check_types(2).is_ok());
    }

    #[test]
    fn mode_aliases() {
        assert_eq!("property".parse::<Mode>().unwrap(), Mode::PropertyOriented);
        let m: Mode = serde_json::from_str("\"object\"").unwrap();
        assert_eq!(m, Mode::ObjectOriented);
    }
}
