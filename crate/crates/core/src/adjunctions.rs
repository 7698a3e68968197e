//! Isbell, Kan and dual Kan adjunctions induced by a Q-relation between
//! discrete Q-categories, their restrictions to a single fibre, and the
//! fixed-point sets of the induced closure operators.
//!
//! | kind     | left adjoint            | right adjoint           | closure carrier |
//! |----------|-------------------------|-------------------------|-----------------|
//! | Isbell   | `phi_up : PX -> P'Y`    | `phi_down : P'Y -> PX`  | `(PX)_q`        |
//! | Kan      | `phi^* : PY -> PX`      | `phi_* : PX -> PY`      | `(PY)_q`        |
//! | dual Kan | `phi_dag : P'Y -> P'X`  | `phi^dag : P'X -> P'Y`  | `(P'Y)_q`       |
//!
//! `P'` denotes copresheaves; their fibres carry the reversed pointwise order.
//! In every row the closure is `right . left` on the left adjoint's domain and
//! its fixed points are the image of the right adjoint.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::lattice::{close_under, ClosureOperator, Lattice, LatticeError, MonotoneMap, ProductLattice};
use crate::qrel::{copresheaf_fibre, presheaf_fibre, Copresheaf, Presheaf, QRelError, QRelation};
use crate::quantaloid::FiniteQuantaloid;

/// Carriers up to this size are always brute-force checked in `Auto` mode.
pub const BRUTE_CHECK_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AdjunctionError {
    #[error("fibre has {size} elements, above the limit of {limit}")]
    FibreTooLarge { size: u128, limit: usize },
    #[error("{kind} adjunction at fibre `{fibre}` is not a Galois connection: {detail}")]
    GaloisFailure {
        kind: AdjunctionKind,
        fibre: String,
        detail: String,
    },
    #[error("fixed-point strategies disagree: brute force found {brute}, generators found {generators}")]
    StrategyMismatch { brute: usize, generators: usize },
    #[error(transparent)]
    QRel(QRelError),
}

impl From<QRelError> for AdjunctionError {
    fn from(e: QRelError) -> Self {
        match e {
            QRelError::Lattice(LatticeError::TooLarge { size, limit }) => {
                AdjunctionError::FibreTooLarge { size, limit }
            }
            other => AdjunctionError::QRel(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdjunctionKind {
    Isbell,
    Kan,
    DualKan,
}

impl fmt::Display for AdjunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdjunctionKind::Isbell => "isbell",
            AdjunctionKind::Kan => "kan",
            AdjunctionKind::DualKan => "dual_kan",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Apply the closure to every carrier element.
    Brute,
    /// Meet-close the images of single-coordinate generators.
    Generators,
    /// Run both and fail if they disagree.
    Both,
    /// Generators, cross-checked by brute force on small carriers.
    #[default]
    Auto,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(Strategy::Brute),
            "generators" => Ok(Strategy::Generators),
            "both" => Ok(Strategy::Both),
            "auto" => Ok(Strategy::Auto),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

fn check_relation_source(phi: &QRelation, len: usize, side: &str) -> Result<(), QRelError> {
    if len != phi.source().len() {
        return Err(QRelError::TypeMismatch(format!(
            "{side} vector has length {len}, relation source has {}",
            phi.source().len()
        )));
    }
    Ok(())
}

fn check_relation_target(phi: &QRelation, len: usize, side: &str) -> Result<(), QRelError> {
    if len != phi.target().len() {
        return Err(QRelError::TypeMismatch(format!(
            "{side} vector has length {len}, relation target has {}",
            phi.target().len()
        )));
    }
    Ok(())
}

// Raw operators on value vectors; callers guarantee typing.

fn up_raw(qu: &FiniteQuantaloid, phi: &QRelation, q: usize, mu: &[usize]) -> Vec<usize> {
    let (xs, ys) = (phi.source(), phi.target());
    (0..ys.len())
        .map(|y| {
            let r = ys.type_of(y);
            let terms: Vec<usize> = (0..xs.len())
                .map(|x| qu.ldd_idx(xs.type_of(x), q, r, phi.get(x, y), mu[x]))
                .collect();
            qu.hom(q, r).meet(&terms)
        })
        .collect()
}

fn down_raw(qu: &FiniteQuantaloid, phi: &QRelation, q: usize, lam: &[usize]) -> Vec<usize> {
    let (xs, ys) = (phi.source(), phi.target());
    (0..xs.len())
        .map(|x| {
            let p = xs.type_of(x);
            let terms: Vec<usize> = (0..ys.len())
                .map(|y| qu.rdd_idx(p, q, ys.type_of(y), lam[y], phi.get(x, y)))
                .collect();
            qu.hom(p, q).meet(&terms)
        })
        .collect()
}

fn kan_star_raw(qu: &FiniteQuantaloid, phi: &QRelation, q: usize, lam: &[usize]) -> Vec<usize> {
    let (xs, ys) = (phi.source(), phi.target());
    (0..xs.len())
        .map(|x| {
            let p = xs.type_of(x);
            let terms: Vec<usize> = (0..ys.len())
                .map(|y| qu.compose_idx(p, ys.type_of(y), q, lam[y], phi.get(x, y)))
                .collect();
            qu.hom(p, q).join(&terms)
        })
        .collect()
}

fn kan_lower_raw(qu: &FiniteQuantaloid, phi: &QRelation, q: usize, mu: &[usize]) -> Vec<usize> {
    let (xs, ys) = (phi.source(), phi.target());
    (0..ys.len())
        .map(|y| {
            let t = ys.type_of(y);
            let terms: Vec<usize> = (0..xs.len())
                .map(|x| qu.ldd_idx(xs.type_of(x), t, q, mu[x], phi.get(x, y)))
                .collect();
            qu.hom(t, q).meet(&terms)
        })
        .collect()
}

fn dual_kan_lower_raw(qu: &FiniteQuantaloid, phi: &QRelation, q: usize, lam: &[usize]) -> Vec<usize> {
    let (xs, ys) = (phi.source(), phi.target());
    (0..xs.len())
        .map(|x| {
            let s = xs.type_of(x);
            let terms: Vec<usize> = (0..ys.len())
                .map(|y| qu.rdd_idx(q, s, ys.type_of(y), phi.get(x, y), lam[y]))
                .collect();
            qu.hom(q, s).meet(&terms)
        })
        .collect()
}

fn dual_kan_upper_raw(qu: &FiniteQuantaloid, phi: &QRelation, q: usize, mu: &[usize]) -> Vec<usize> {
    let (xs, ys) = (phi.source(), phi.target());
    (0..ys.len())
        .map(|y| {
            let r = ys.type_of(y);
            let terms: Vec<usize> = (0..xs.len())
                .map(|x| qu.compose_idx(q, xs.type_of(x), r, phi.get(x, y), mu[x]))
                .collect();
            qu.hom(q, r).join(&terms)
        })
        .collect()
}

/// `(phi_up mu)(y) = /\_x phi(x, y) <| mu(x)`
pub fn isbell_up(qu: &FiniteQuantaloid, phi: &QRelation, mu: &Presheaf) -> Result<Copresheaf, QRelError> {
    check_relation_source(phi, mu.values.len(), "presheaf")?;
    mu.check(qu, phi.source())?;
    Ok(Copresheaf {
        ty: mu.ty,
        values: up_raw(qu, phi, mu.ty, &mu.values),
    })
}

/// `(phi_down lam)(x) = /\_y lam(y) |> phi(x, y)`
pub fn isbell_down(qu: &FiniteQuantaloid, phi: &QRelation, lam: &Copresheaf) -> Result<Presheaf, QRelError> {
    check_relation_target(phi, lam.values.len(), "copresheaf")?;
    lam.check(qu, phi.target())?;
    Ok(Presheaf {
        ty: lam.ty,
        values: down_raw(qu, phi, lam.ty, &lam.values),
    })
}

/// `(phi^* lam)(x) = V_y lam(y) . phi(x, y)`
pub fn kan_star(qu: &FiniteQuantaloid, phi: &QRelation, lam: &Presheaf) -> Result<Presheaf, QRelError> {
    check_relation_target(phi, lam.values.len(), "presheaf")?;
    lam.check(qu, phi.target())?;
    Ok(Presheaf {
        ty: lam.ty,
        values: kan_star_raw(qu, phi, lam.ty, &lam.values),
    })
}

/// `(phi_* mu)(y) = /\_x mu(x) <| phi(x, y)`
pub fn kan_lower(qu: &FiniteQuantaloid, phi: &QRelation, mu: &Presheaf) -> Result<Presheaf, QRelError> {
    check_relation_source(phi, mu.values.len(), "presheaf")?;
    mu.check(qu, phi.source())?;
    Ok(Presheaf {
        ty: mu.ty,
        values: kan_lower_raw(qu, phi, mu.ty, &mu.values),
    })
}

/// `(phi_dag lam)(x) = /\_y phi(x, y) |> lam(y)`
pub fn dual_kan_lower(qu: &FiniteQuantaloid, phi: &QRelation, lam: &Copresheaf) -> Result<Copresheaf, QRelError> {
    check_relation_target(phi, lam.values.len(), "copresheaf")?;
    lam.check(qu, phi.target())?;
    Ok(Copresheaf {
        ty: lam.ty,
        values: dual_kan_lower_raw(qu, phi, lam.ty, &lam.values),
    })
}

/// `(phi^dag mu)(y) = V_x phi(x, y) . mu(x)`
pub fn dual_kan_upper(qu: &FiniteQuantaloid, phi: &QRelation, mu: &Copresheaf) -> Result<Copresheaf, QRelError> {
    check_relation_source(phi, mu.values.len(), "copresheaf")?;
    mu.check(qu, phi.source())?;
    Ok(Copresheaf {
        ty: mu.ty,
        values: dual_kan_upper_raw(qu, phi, mu.ty, &mu.values),
    })
}

/// An adjunction restricted to the `q`-fibres, with both maps materialized.
#[derive(Debug, Clone)]
pub struct FibreAdjunction {
    kind: AdjunctionKind,
    fibre: usize,
    quantaloid: Arc<FiniteQuantaloid>,
    relation: QRelation,
    domain: ProductLattice,
    codomain: ProductLattice,
    left: Vec<usize>,
    right: Vec<usize>,
}

/// Restricts the `kind` adjunction of `phi` to the fibres over `q` and checks
/// that the restriction is a Galois connection.
pub fn fibre_adjunction(
    kind: AdjunctionKind,
    quantaloid: Arc<FiniteQuantaloid>,
    relation: QRelation,
    q: usize,
    limit: usize,
) -> Result<FibreAdjunction, AdjunctionError> {
    let (xs, ys) = (relation.source(), relation.target());
    let (domain, codomain) = match kind {
        AdjunctionKind::Isbell => (
            presheaf_fibre(&quantaloid, xs, q, limit)?,
            copresheaf_fibre(&quantaloid, ys, q, limit)?,
        ),
        AdjunctionKind::Kan => (
            presheaf_fibre(&quantaloid, ys, q, limit)?,
            presheaf_fibre(&quantaloid, xs, q, limit)?,
        ),
        AdjunctionKind::DualKan => (
            copresheaf_fibre(&quantaloid, ys, q, limit)?,
            copresheaf_fibre(&quantaloid, xs, q, limit)?,
        ),
    };
    let mut adj = FibreAdjunction {
        kind,
        fibre: q,
        quantaloid,
        relation,
        domain,
        codomain,
        left: Vec::new(),
        right: Vec::new(),
    };
    adj.left = (0..adj.domain.size())
        .map(|a| adj.codomain.encode(&adj.eval_left(&adj.domain.decode(a))))
        .collect();
    adj.right = (0..adj.codomain.size())
        .map(|b| adj.domain.encode(&adj.eval_right(&adj.codomain.decode(b))))
        .collect();
    adj.validate()?;
    Ok(adj)
}

impl FibreAdjunction {
    pub fn kind(&self) -> AdjunctionKind {
        self.kind
    }

    pub fn fibre(&self) -> usize {
        self.fibre
    }

    pub fn quantaloid(&self) -> &FiniteQuantaloid {
        &self.quantaloid
    }

    pub fn relation(&self) -> &QRelation {
        &self.relation
    }

    /// The left adjoint's domain, which carries the closure operator.
    pub fn domain(&self) -> &ProductLattice {
        &self.domain
    }

    pub fn codomain(&self) -> &ProductLattice {
        &self.codomain
    }

    pub fn apply_left(&self, a: usize) -> usize {
        self.left[a]
    }

    pub fn apply_right(&self, b: usize) -> usize {
        self.right[b]
    }

    /// Evaluates the left adjoint's defining formula on a value vector.
    pub fn eval_left(&self, values: &[usize]) -> Vec<usize> {
        let (qu, phi, q) = (&*self.quantaloid, &self.relation, self.fibre);
        match self.kind {
            AdjunctionKind::Isbell => up_raw(qu, phi, q, values),
            AdjunctionKind::Kan => kan_star_raw(qu, phi, q, values),
            AdjunctionKind::DualKan => dual_kan_lower_raw(qu, phi, q, values),
        }
    }

    /// Evaluates the right adjoint's defining formula on a value vector.
    pub fn eval_right(&self, values: &[usize]) -> Vec<usize> {
        let (qu, phi, q) = (&*self.quantaloid, &self.relation, self.fibre);
        match self.kind {
            AdjunctionKind::Isbell => down_raw(qu, phi, q, values),
            AdjunctionKind::Kan => kan_lower_raw(qu, phi, q, values),
            AdjunctionKind::DualKan => dual_kan_upper_raw(qu, phi, q, values),
        }
    }

    pub fn left_map(&self) -> Result<MonotoneMap<'_, ProductLattice, ProductLattice>, LatticeError> {
        MonotoneMap::new(&self.domain, &self.codomain, self.left.clone())
    }

    pub fn right_map(&self) -> Result<MonotoneMap<'_, ProductLattice, ProductLattice>, LatticeError> {
        MonotoneMap::new(&self.codomain, &self.domain, self.right.clone())
    }

    /// `right . left` on the domain.
    pub fn closure(&self) -> Result<ClosureOperator<'_, ProductLattice>, LatticeError> {
        let table = self.left.iter().map(|&b| self.right[b]).collect();
        ClosureOperator::new(&self.domain, table)
    }

    fn failure(&self, detail: String) -> AdjunctionError {
        AdjunctionError::GaloisFailure {
            kind: self.kind,
            fibre: self.quantaloid.objects()[self.fibre].clone(),
            detail,
        }
    }

    // Monotone maps with a <= right(left(a)) and left(right(b)) <= b form a
    // Galois connection; this avoids the quadratic pairwise check.
    fn validate(&self) -> Result<(), AdjunctionError> {
        self.left_map()
            .map_err(|e| self.failure(format!("left adjoint: {e}")))?;
        self.right_map()
            .map_err(|e| self.failure(format!("right adjoint: {e}")))?;
        for a in 0..self.domain.size() {
            if !self.domain.leq(a, self.right[self.left[a]]) {
                return Err(self.failure(format!("unit fails at {}", self.domain.label(a))));
            }
        }
        for b in 0..self.codomain.size() {
            if !self.codomain.leq(self.left[self.right[b]], b) {
                return Err(self.failure(format!("counit fails at {}", self.codomain.label(b))));
            }
        }
        Ok(())
    }

    fn brute_points(&self) -> Vec<usize> {
        (0..self.domain.size())
            .filter(|&a| self.right[self.left[a]] == a)
            .collect()
    }

    fn generator_points(&self) -> Vec<usize> {
        let cod = &self.codomain;
        let mut seeds = vec![self.domain.top()];
        for k in 0..cod.arity() {
            for v in 0..cod.components()[k].size() {
                let g = cod.decode(cod.coordinate_generator(k, v));
                seeds.push(self.domain.encode(&self.eval_right(&g)));
            }
        }
        close_under(seeds, |a, b| self.domain.meet2(a, b))
    }
}

/// Fixed points of a fibre adjunction's closure, in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointSet {
    carrier: ProductLattice,
    points: Vec<usize>,
}

impl FixedPointSet {
    pub fn carrier(&self) -> &ProductLattice {
        &self.carrier
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.points.binary_search(&a).is_ok()
    }

    pub fn is_meet_closed(&self) -> bool {
        self.contains(self.carrier.top())
            && self
                .points
                .iter()
                .all(|&a| self.points.iter().all(|&b| self.contains(self.carrier.meet2(a, b))))
    }
}

pub fn fixed_point_set(adj: &FibreAdjunction, strategy: Strategy) -> Result<FixedPointSet, AdjunctionError> {
    let points = match strategy {
        Strategy::Brute => adj.brute_points(),
        Strategy::Generators => adj.generator_points(),
        Strategy::Both => agree(adj.brute_points(), adj.generator_points())?,
        Strategy::Auto => {
            let generated = adj.generator_points();
            if adj.domain.size() <= BRUTE_CHECK_LIMIT {
                agree(adj.brute_points(), generated)?
            } else {
                generated
            }
        }
    };
    Ok(FixedPointSet {
        carrier: adj.domain.clone(),
        points,
    })
}

fn agree(brute: Vec<usize>, generators: Vec<usize>) -> Result<Vec<usize>, AdjunctionError> {
    if brute != generators {
        return Err(AdjunctionError::StrategyMismatch {
            brute: brute.len(),
            generators: generators.len(),
        });
    }
    Ok(brute)
}
