//! From a frame and a context to a concept lattice.
//!
//! | mode     | quantaloid | attributes typed | adjunction | fibre |
//! |----------|------------|------------------|------------|-------|
//! | formal   | `Q_F`      | `-1`             | Isbell     | `0`   |
//! | property | `Q_P`      | `0`              | Kan        | `inf` |
//! | object   | `Q_O`      | `0`              | dual Kan   | `-1`  |
//!
//! An object of type `i` is typed by the object `i` of the quantaloid.

use std::sync::Arc;

use crate::adjunctions::{fibre_adjunction, fixed_point_set, AdjunctionKind, FibreAdjunction, FixedPointSet, Strategy};
use crate::concept::{Concept, ConceptLattice};
use crate::frame::{Context, Mode, MultiAdjointFrame};
use crate::lattice::Lattice;
use crate::qrel::{QRelation, TypedSet, DEFAULT_FIBRE_LIMIT};
use crate::quantaloid::{build_qf, build_qo, build_qp, FiniteQuantaloid, QuantaloidError};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub strategy: Strategy,
    /// Largest fibre the engine will materialize.
    pub limit: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            strategy: Strategy::Auto,
            limit: DEFAULT_FIBRE_LIMIT,
        }
    }
}

pub fn frame_to_quantaloid(frame: &MultiAdjointFrame) -> Result<FiniteQuantaloid, QuantaloidError> {
    match frame.mode() {
        Mode::Formal => build_qf(frame.triples()),
        Mode::PropertyOriented => build_qp(frame.triples()),
        Mode::ObjectOriented => build_qo(frame.triples()),
    }
}

pub fn adjunction_kind(mode: Mode) -> AdjunctionKind {
    match mode {
        Mode::Formal => AdjunctionKind::Isbell,
        Mode::PropertyOriented => AdjunctionKind::Kan,
        Mode::ObjectOriented => AdjunctionKind::DualKan,
    }
}

pub fn fibre_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Formal => "0",
        Mode::PropertyOriented => "inf",
        Mode::ObjectOriented => "-1",
    }
}

fn attribute_type(mode: Mode) -> &'static str {
    match mode {
        Mode::Formal => "-1",
        Mode::PropertyOriented | Mode::ObjectOriented => "0",
    }
}

fn position(qu: &FiniteQuantaloid, name: &str) -> usize {
    qu.object_index(name)
        .unwrap_or_else(|| panic!("frame quantaloid has no object `{name}`"))
}

/// Types attributes and objects and reads `phi` as a relation `X -|-> Y`.
pub fn context_to_qrelation(
    frame: &MultiAdjointFrame,
    quantaloid: &FiniteQuantaloid,
    context: &Context,
) -> Result<QRelation, Error> {
    context.check_types(frame.len())?;
    let a = position(quantaloid, attribute_type(frame.mode()));
    let xs = TypedSet::uniform(quantaloid, context.attributes().to_vec(), a)?;
    let types = context
        .types()
        .iter()
        .map(|i| position(quantaloid, &i.to_string()))
        .collect();
    let ys = TypedSet::new(quantaloid, context.objects().to_vec(), types)?;
    let phi = QRelation::from_fn(quantaloid, xs, ys, |x, y| context.phi(x, y))?;
    Ok(phi)
}

/// The restricted adjunction whose fixed points are the concepts.
pub fn concept_adjunction(
    frame: &MultiAdjointFrame,
    context: &Context,
    limit: usize,
) -> Result<FibreAdjunction, Error> {
    let quantaloid = Arc::new(frame_to_quantaloid(frame)?);
    let phi = context_to_qrelation(frame, &quantaloid, context)?;
    let q = position(&quantaloid, fibre_name(frame.mode()));
    Ok(fibre_adjunction(
        adjunction_kind(frame.mode()),
        quantaloid,
        phi,
        q,
        limit,
    )?)
}

/// Pairs each fixed point with its image under the left adjoint.
pub fn lattice_from_fixed_points(
    frame: &MultiAdjointFrame,
    context: &Context,
    adj: &FibreAdjunction,
    fixed: &FixedPointSet,
) -> ConceptLattice {
    let (dom, cod) = (adj.domain(), adj.codomain());
    let names = |l: &crate::lattice::ProductLattice, a: usize| -> Vec<String> {
        l.decode(a)
            .iter()
            .enumerate()
            .map(|(k, &v)| l.components()[k].name(v).to_string())
            .collect()
    };
    let concepts = fixed
        .points()
        .iter()
        .map(|&a| {
            let (fixed_side, partner) = (names(dom, a), names(cod, adj.apply_left(a)));
            match frame.mode() {
                Mode::Formal => Concept {
                    attributes: fixed_side,
                    objects: partner,
                },
                Mode::PropertyOriented | Mode::ObjectOriented => Concept {
                    attributes: partner,
                    objects: fixed_side,
                },
            }
        })
        .collect();
    let order = fixed
        .points()
        .iter()
        .map(|&a| fixed.points().iter().map(|&b| dom.leq(a, b)).collect())
        .collect();
    ConceptLattice {
        mode: frame.mode(),
        fibre: fibre_name(frame.mode()).to_string(),
        attributes: context.attributes().to_vec(),
        objects: context.objects().to_vec(),
        concepts,
        order,
    }
}

/// Concept lattice of the frame's own mode.
pub fn compute(frame: &MultiAdjointFrame, context: &Context, options: Options) -> Result<ConceptLattice, Error> {
    let adj = concept_adjunction(frame, context, options.limit)?;
    let fixed = fixed_point_set(&adj, options.strategy)?;
    Ok(lattice_from_fixed_points(frame, context, &adj, &fixed))
}

fn expect_mode(frame: &MultiAdjointFrame, mode: Mode) -> Result<(), Error> {
    if frame.mode() != mode {
        return Err(Error::ModeMismatch {
            frame: frame.mode(),
            requested: mode,
        });
    }
    Ok(())
}

/// Fixed points of the Isbell closure on `(PX)_0`.
pub fn concept_lattice(
    frame: &MultiAdjointFrame,
    context: &Context,
    options: Options,
) -> Result<ConceptLattice, Error> {
    expect_mode(frame, Mode::Formal)?;
    compute(frame, context, options)
}

/// Fixed points of the Kan closure on `(PY)_inf`.
pub fn property_oriented_lattice(
    frame: &MultiAdjointFrame,
    context: &Context,
    options: Options,
) -> Result<ConceptLattice, Error> {
    expect_mode(frame, Mode::PropertyOriented)?;
    compute(frame, context, options)
}

/// Fixed points of the dual Kan closure on `(P'Y)_-1`.
pub fn object_oriented_lattice(
    frame: &MultiAdjointFrame,
    context: &Context,
    options: Options,
) -> Result<ConceptLattice, Error> {
    expect_mode(frame, Mode::ObjectOriented)?;
    compute(frame, context, options)
}
