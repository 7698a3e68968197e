//! Finite quantaloids: law validation, left/right implications, and the
//! quantaloids built from adjoint triples and multi-adjoint frames.
//!
//! Composition tables are stored per composable triple of objects `(p, q, r)`
//! as `hom(q, r) x hom(p, q) -> hom(p, r)`. Implications are always derived
//! by maximization over the relevant hom-lattice:
//!
//! ```text
//! v . u <= w  <=>  v <= w <| u  <=>  u <= v |> w
//! ```

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::lattice::{FiniteLattice, Lattice, LatticeError, LatticeSpec};
use crate::triple::AdjointTriple;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuantaloidError {
    #[error("quantaloid has no objects")]
    NoObjects,
    #[error("malformed quantaloid: {0}")]
    Malformed(String),
    #[error("composition is not associative: {0}")]
    NotAssociative(String),
    #[error("identity law fails: {0}")]
    IdentityFailure(String),
    #[error("composition does not preserve joins: {0}")]
    NotJoinPreserving(String),
    #[error("arrow types do not match: {0}")]
    TypeMismatch(String),
    #[error("frame triples do not share lattices: {0}")]
    FrameMismatch(String),
    #[error("composition {0} is not forced by the quantaloid laws")]
    UnforcedComposition(String),
    #[error("residuation: {0}")]
    Residuation(String),
    #[error("designated hom disagrees with its adjoint triple: {0}")]
    DesignatedMismatch(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Unvalidated quantaloid data, indexed by object positions.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantaloidData {
    pub objects: Vec<String>,
    /// `homs[p * n + q]` is `hom(p, q)`.
    pub homs: Vec<Arc<FiniteLattice>>,
    pub identities: Vec<usize>,
    /// `compose[(p * n + q) * n + r][v * |hom(p, q)| + u]` is `v . u`.
    pub compose: Vec<Vec<usize>>,
}

/// A typed arrow `value : source -> target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QArrow {
    pub source: usize,
    pub target: usize,
    pub value: usize,
}

/// The composable triple `(p, q, r)` whose composition is an adjoint
/// triple's conjunction, with `v . u = u & v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Designated {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub triple: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteQuantaloid {
    data: QuantaloidData,
    ldd: Vec<Vec<usize>>,
    rdd: Vec<Vec<usize>>,
    designated: Vec<Designated>,
}

impl FiniteQuantaloid {
    pub fn object_count(&self) -> usize {
        self.data.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.data.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.data.objects.iter().position(|o| o == name)
    }

    pub fn hom(&self, p: usize, q: usize) -> &Arc<FiniteLattice> {
        &self.data.homs[p * self.object_count() + q]
    }

    pub fn identity(&self, q: usize) -> usize {
        self.data.identities[q]
    }

    pub fn bottom(&self, p: usize, q: usize) -> usize {
        self.hom(p, q).bottom()
    }

    pub fn designated(&self) -> &[Designated] {
        &self.designated
    }

    pub fn data(&self) -> &QuantaloidData {
        &self.data
    }

    fn slot(&self, p: usize, q: usize, r: usize) -> usize {
        let n = self.object_count();
        (p * n + q) * n + r
    }

    /// `v . u` for `u : p -> q`, `v : q -> r`.
    pub fn compose_idx(&self, p: usize, q: usize, r: usize, v: usize, u: usize) -> usize {
        self.data.compose[self.slot(p, q, r)][v * self.hom(p, q).size() + u]
    }

    /// `w <| u : q -> r` for `w : p -> r`, `u : p -> q`.
    pub fn ldd_idx(&self, p: usize, q: usize, r: usize, w: usize, u: usize) -> usize {
        self.ldd[self.slot(p, q, r)][w * self.hom(p, q).size() + u]
    }

    /// `v |> w : p -> q` for `v : q -> r`, `w : p -> r`.
    pub fn rdd_idx(&self, p: usize, q: usize, r: usize, v: usize, w: usize) -> usize {
        self.rdd[self.slot(p, q, r)][v * self.hom(p, r).size() + w]
    }

    pub fn arrow(&self, source: usize, target: usize, value: usize) -> Result<QArrow, QuantaloidError> {
        let n = self.object_count();
        if source >= n || target >= n || value >= self.hom(source, target).size() {
            return Err(QuantaloidError::TypeMismatch(format!(
                "no arrow {value} in hom({source}, {target})"
            )));
        }
        Ok(QArrow { source, target, value })
    }

    /// Arrow by object and element names.
    pub fn arrow_named(&self, source: &str, target: &str, value: &str) -> Result<QArrow, QuantaloidError> {
        let unknown = |s: &str| QuantaloidError::TypeMismatch(format!("unknown object `{s}`"));
        let p = self.object_index(source).ok_or_else(|| unknown(source))?;
        let q = self.object_index(target).ok_or_else(|| unknown(target))?;
        let v = self
            .hom(p, q)
            .index_of(value)
            .ok_or_else(|| LatticeError::UnknownElement(value.to_string()))?;
        self.arrow(p, q, v)
    }

    pub fn compose(&self, v: QArrow, u: QArrow) -> Result<QArrow, QuantaloidError> {
        if u.target != v.source {
            return Err(QuantaloidError::TypeMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.data.objects[v.source],
                self.data.objects[v.target],
                self.data.objects[u.source],
                self.data.objects[u.target]
            )));
        }
        let value = self.compose_idx(u.source, u.target, v.target, v.value, u.value);
        Ok(QArrow {
            source: u.source,
            target: v.target,
            value,
        })
    }

    /// Left implication: the greatest `v : q -> r` with `v . u <= w`.
    pub fn ldd(&self, w: QArrow, u: QArrow) -> Result<QArrow, QuantaloidError> {
        if w.source != u.source {
            return Err(QuantaloidError::TypeMismatch(format!(
                "left implication needs a shared source, got {} and {}",
                self.data.objects[w.source], self.data.objects[u.source]
            )));
        }
        let (p, q, r) = (u.source, u.target, w.target);
        Ok(QArrow {
            source: q,
            target: r,
            value: self.ldd_idx(p, q, r, w.value, u.value),
        })
    }

    /// Right implication: the greatest `u : p -> q` with `v . u <= w`.
    pub fn rdd(&self, v: QArrow, w: QArrow) -> Result<QArrow, QuantaloidError> {
        if v.target != w.target {
            return Err(QuantaloidError::TypeMismatch(format!(
                "right implication needs a shared target, got {} and {}",
                self.data.objects[v.target], self.data.objects[w.target]
            )));
        }
        let (p, q, r) = (w.source, v.source, v.target);
        Ok(QArrow {
            source: p,
            target: q,
            value: self.rdd_idx(p, q, r, v.value, w.value),
        })
    }

    pub fn leq(&self, a: QArrow, b: QArrow) -> bool {
        a.source == b.source && a.target == b.target && self.hom(a.source, a.target).leq(a.value, b.value)
    }

    pub fn is_nontrivial(&self) -> bool {
        (0..self.object_count()).all(|q| self.hom(q, q).lt(self.bottom(q, q), self.identity(q)))
    }

    pub fn to_dump(&self) -> QuantaloidDump {
        let n = self.object_count();
        let obj = |i: usize| self.data.objects[i].clone();
        let mut homs = Vec::new();
        let mut compositions = Vec::new();
        for p in 0..n {
            for q in 0..n {
                homs.push(HomDump {
                    source: obj(p),
                    target: obj(q),
                    lattice: self.hom(p, q).to_spec(),
                });
                for r in 0..n {
                    let (pq, qr, pr) = (self.hom(p, q), self.hom(q, r), self.hom(p, r));
                    let table = (0..qr.size())
                        .map(|v| {
                            (0..pq.size())
                                .map(|u| pr.name(self.compose_idx(p, q, r, v, u)).to_string())
                                .collect()
                        })
                        .collect();
                    compositions.push(CompositionDump {
                        p: obj(p),
                        q: obj(q),
                        r: obj(r),
                        table,
                    });
                }
            }
        }
        QuantaloidDump {
            objects: self.data.objects.clone(),
            homs,
            identities: (0..n)
                .map(|q| (obj(q), self.hom(q, q).name(self.identity(q)).to_string()))
                .collect(),
            compositions,
        }
    }
}

/// Debug dump of a quantaloid. Best-effort format, not a stable surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantaloidDump {
    pub objects: Vec<String>,
    pub homs: Vec<HomDump>,
    pub identities: Vec<(String, String)>,
    pub compositions: Vec<CompositionDump>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomDump {
    pub source: String,
    pub target: String,
    pub lattice: LatticeSpec,
}

/// `table[v][u]` is the name of `v . u` for `u : p -> q`, `v : q -> r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositionDump {
    pub p: String,
    pub q: String,
    pub r: String,
    pub table: Vec<Vec<String>>,
}

impl QuantaloidDump {
    pub fn to_data(&self) -> Result<QuantaloidData, QuantaloidError> {
        let n = self.objects.len();
        let idx = |name: &str| {
            self.objects
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| QuantaloidError::Malformed(format!("unknown object `{name}`")))
        };
        let mut homs: Vec<Option<Arc<FiniteLattice>>> = vec![None; n * n];
        for h in &self.homs {
            let (p, q) = (idx(&h.source)?, idx(&h.target)?);
            homs[p * n + q] = Some(Arc::new(FiniteLattice::validate(&h.lattice)?));
        }
        let homs: Vec<Arc<FiniteLattice>> = homs
            .into_iter()
            .enumerate()
            .map(|(i, h)| {
                h.ok_or_else(|| {
                    QuantaloidError::Malformed(format!("missing hom({}, {})", self.objects[i / n], self.objects[i % n]))
                })
            })
            .collect::<Result<_, _>>()?;
        let mut identities = vec![usize::MAX; n];
        for (o, e) in &self.identities {
            let q = idx(o)?;
            identities[q] = homs[q * n + q]
                .index_of(e)
                .ok_or_else(|| LatticeError::UnknownElement(e.clone()))?;
        }
        let mut compose = vec![Vec::new(); n * n * n];
        for c in &self.compositions {
            let (p, q, r) = (idx(&c.p)?, idx(&c.q)?, idx(&c.r)?);
            let pr = &homs[p * n + r];
            let mut table = Vec::new();
            for row in &c.table {
                for name in row {
                    table.push(
                        pr.index_of(name)
                            .ok_or_else(|| LatticeError::UnknownElement(name.clone()))?,
                    );
                }
            }
            compose[(p * n + q) * n + r] = table;
        }
        Ok(QuantaloidData {
            objects: self.objects.clone(),
            homs,
            identities,
            compose,
        })
    }
}

/// Checks every quantaloid law exhaustively and derives both implications.
pub fn validate_quantaloid(data: QuantaloidData) -> Result<FiniteQuantaloid, QuantaloidError> {
    let n = data.objects.len();
    if n == 0 {
        return Err(QuantaloidError::NoObjects);
    }
    if data.homs.len() != n * n || data.identities.len() != n || data.compose.len() != n * n * n {
        return Err(QuantaloidError::Malformed(
            "hom, identity or composition tables have the wrong number of entries".into(),
        ));
    }
    let hom = |p: usize, q: usize| &data.homs[p * n + q];
    let name = |i: usize| data.objects[i].as_str();
    for q in 0..n {
        if data.identities[q] >= hom(q, q).size() {
            return Err(QuantaloidError::Malformed(format!(
                "identity of {} is not an element of its hom",
                name(q)
            )));
        }
    }
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let t = &data.compose[(p * n + q) * n + r];
                if t.len() != hom(q, r).size() * hom(p, q).size() {
                    return Err(QuantaloidError::Malformed(format!(
                        "composition table for ({}, {}, {}) is not total",
                        name(p),
                        name(q),
                        name(r)
                    )));
                }
                if t.iter().any(|&x| x >= hom(p, r).size()) {
                    return Err(QuantaloidError::Malformed(format!(
                        "composition table for ({}, {}, {}) leaves hom({}, {})",
                        name(p),
                        name(q),
                        name(r),
                        name(p),
                        name(r)
                    )));
                }
            }
        }
    }
    let comp =
        |p: usize, q: usize, r: usize, v: usize, u: usize| data.compose[(p * n + q) * n + r][v * hom(p, q).size() + u];

    for p in 0..n {
        for q in 0..n {
            let pq = hom(p, q);
            for u in 0..pq.size() {
                let left = comp(p, q, q, data.identities[q], u);
                let right = comp(p, p, q, u, data.identities[p]);
                if left != u || right != u {
                    return Err(QuantaloidError::IdentityFailure(format!(
                        "u = {} in hom({}, {}): id . u = {}, u . id = {}",
                        pq.name(u),
                        name(p),
                        name(q),
                        pq.name(left),
                        pq.name(right)
                    )));
                }
            }
        }
    }

    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let (pq, qr, pr) = (hom(p, q), hom(q, r), hom(p, r));
                let witness = |v: usize, u: usize| {
                    format!(
                        "({}, {}, {}) at v = {}, u = {}",
                        name(p),
                        name(q),
                        name(r),
                        qr.name(v),
                        pq.name(u)
                    )
                };
                for v in 0..qr.size() {
                    if comp(p, q, r, v, pq.bottom()) != pr.bottom() {
                        return Err(QuantaloidError::NotJoinPreserving(format!(
                            "v . bottom is not bottom {}",
                            witness(v, pq.bottom())
                        )));
                    }
                    for u1 in 0..pq.size() {
                        for u2 in u1 + 1..pq.size() {
                            let lhs = comp(p, q, r, v, pq.join2(u1, u2));
                            let rhs = pr.join2(comp(p, q, r, v, u1), comp(p, q, r, v, u2));
                            if lhs != rhs {
                                return Err(QuantaloidError::NotJoinPreserving(format!(
                                    "v . (u1 v u2) {} with u2 = {}",
                                    witness(v, u1),
                                    pq.name(u2)
                                )));
                            }
                        }
                    }
                }
                for u in 0..pq.size() {
                    if comp(p, q, r, qr.bottom(), u) != pr.bottom() {
                        return Err(QuantaloidError::NotJoinPreserving(format!(
                            "bottom . u is not bottom {}",
                            witness(qr.bottom(), u)
                        )));
                    }
                    for v1 in 0..qr.size() {
                        for v2 in v1 + 1..qr.size() {
                            let lhs = comp(p, q, r, qr.join2(v1, v2), u);
                            let rhs = pr.join2(comp(p, q, r, v1, u), comp(p, q, r, v2, u));
                            if lhs != rhs {
                                return Err(QuantaloidError::NotJoinPreserving(format!(
                                    "(v1 v v2) . u {} with v2 = {}",
                                    witness(v1, u),
                                    qr.name(v2)
                                )));
                            }
                        }
                    }
                }
            }
        }
    }

    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let (pq, qr, rs) = (hom(p, q), hom(q, r), hom(r, s));
                    for u in 0..pq.size() {
                        for v in 0..qr.size() {
                            let vu = comp(p, q, r, v, u);
                            for w in 0..rs.size() {
                                let a = comp(p, r, s, w, vu);
                                let b = comp(p, q, s, comp(q, r, s, w, v), u);
                                if a != b {
                                    return Err(QuantaloidError::NotAssociative(format!(
                                        "objects ({}, {}, {}, {}) with u = {}, v = {}, w = {}",
                                        name(p),
                                        name(q),
                                        name(r),
                                        name(s),
                                        pq.name(u),
                                        qr.name(v),
                                        rs.name(w)
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let mut ldd = vec![Vec::new(); n * n * n];
    let mut rdd = vec![Vec::new(); n * n * n];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let (pq, qr, pr) = (hom(p, q), hom(q, r), hom(p, r));
                let slot = (p * n + q) * n + r;
                let mut l = Vec::with_capacity(pr.size() * pq.size());
                for w in 0..pr.size() {
                    for u in 0..pq.size() {
                        let ok: Vec<usize> = (0..qr.size()).filter(|&v| pr.leq(comp(p, q, r, v, u), w)).collect();
                        l.push(qr.join(&ok));
                    }
                }
                let mut rr = Vec::with_capacity(qr.size() * pr.size());
                for v in 0..qr.size() {
                    for w in 0..pr.size() {
                        let ok: Vec<usize> = (0..pq.size()).filter(|&u| pr.leq(comp(p, q, r, v, u), w)).collect();
                        rr.push(pq.join(&ok));
                    }
                }
                ldd[slot] = l;
                rdd[slot] = rr;
            }
        }
    }

    Ok(FiniteQuantaloid {
        data,
        ldd,
        rdd,
        designated: Vec::new(),
    })
}

/// The one-object quantaloid (a quantale) on `lattice` with unit `unit`.
pub fn quantale(
    name: &str,
    lattice: Arc<FiniteLattice>,
    unit: usize,
    mul: impl Fn(usize, usize) -> usize,
) -> Result<FiniteQuantaloid, QuantaloidError> {
    let m = lattice.size();
    let mut table = Vec::with_capacity(m * m);
    for v in 0..m {
        for u in 0..m {
            table.push(mul(v, u));
        }
    }
    validate_quantaloid(QuantaloidData {
        objects: vec![name.to_string()],
        homs: vec![lattice],
        identities: vec![unit],
        compose: vec![table],
    })
}

/// How a hom-set of a constructed quantaloid is populated.
enum HomKind {
    /// `{bot, id}`
    Unit,
    /// `{bot}`
    Trivial,
    Carrier(Arc<FiniteLattice>),
}

fn unit_hom() -> Arc<FiniteLattice> {
    Arc::new(FiniteLattice::chain(&["bot", "id"]).expect("two-element chain"))
}

fn trivial_hom() -> Arc<FiniteLattice> {
    Arc::new(FiniteLattice::chain(&["bot"]).expect("one-element chain"))
}

/// Assembles a quantaloid from a hom layout and designated compositions,
/// filling every other composition with the value the laws force:
/// identities act as identities, bottom arrows absorb, and one-element
/// homs have only one possible value.
fn assemble(
    objects: Vec<String>,
    kind: impl Fn(usize, usize) -> HomKind,
    designated: Vec<Designated>,
    triples: &[AdjointTriple],
) -> Result<FiniteQuantaloid, QuantaloidError> {
    let n = objects.len();
    let (unit, trivial) = (unit_hom(), trivial_hom());
    let mut homs = Vec::with_capacity(n * n);
    let mut is_unit = vec![false; n * n];
    for p in 0..n {
        for q in 0..n {
            homs.push(match kind(p, q) {
                HomKind::Unit => {
                    is_unit[p * n + q] = true;
                    unit.clone()
                }
                HomKind::Trivial => trivial.clone(),
                HomKind::Carrier(l) => l,
            });
        }
    }
    for q in 0..n {
        if !is_unit[q * n + q] {
            return Err(QuantaloidError::Malformed(format!(
                "hom({0}, {0}) must be the unit hom",
                objects[q]
            )));
        }
    }
    // index of `id` in the unit hom
    let id = 1;
    let lookup: HashMap<(usize, usize, usize), usize> =
        designated.iter().map(|d| ((d.p, d.q, d.r), d.triple)).collect();

    let mut compose = vec![Vec::new(); n * n * n];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let (pq, qr, pr) = (&homs[p * n + q], &homs[q * n + r], &homs[p * n + r]);
                let mut table = Vec::with_capacity(pq.size() * qr.size());
                for v in 0..qr.size() {
                    for u in 0..pq.size() {
                        let value = if let Some(&t) = lookup.get(&(p, q, r)) {
                            triples[t].conj(u, v)
                        } else if p == q {
                            if u == id {
                                v
                            } else {
                                pr.bottom()
                            }
                        } else if q == r {
                            if v == id {
                                u
                            } else {
                                pr.bottom()
                            }
                        } else if u == pq.bottom() || v == qr.bottom() || pr.size() == 1 {
                            pr.bottom()
                        } else {
                            return Err(QuantaloidError::UnforcedComposition(format!(
                                "({}, {}, {})",
                                objects[p], objects[q], objects[r]
                            )));
                        };
                        table.push(value);
                    }
                }
                compose[(p * n + q) * n + r] = table;
            }
        }
    }
    let mut quantaloid = validate_quantaloid(QuantaloidData {
        objects,
        homs,
        identities: vec![id; n],
        compose,
    })?;
    quantaloid.designated = designated;
    Ok(quantaloid)
}

fn shared_lattices(triples: &[AdjointTriple]) -> Result<(), QuantaloidError> {
    let first = triples
        .first()
        .ok_or_else(|| QuantaloidError::FrameMismatch("a frame needs at least one triple".into()))?;
    for (i, t) in triples.iter().enumerate().skip(1) {
        if t.left() != first.left() || t.right() != first.right() || t.value() != first.value() {
            return Err(QuantaloidError::FrameMismatch(format!(
                "triple {} uses different lattices than triple 1",
                i + 1
            )));
        }
    }
    Ok(())
}

/// The three-object quantaloid of a single adjoint triple, objects
/// `-1, 0, 1`.
pub fn build_qw(triple: &AdjointTriple) -> Result<FiniteQuantaloid, QuantaloidError> {
    let objects = vec!["-1".to_string(), "0".to_string(), "1".to_string()];
    let kind = |p: usize, q: usize| match (p, q) {
        _ if p == q => HomKind::Unit,
        (0, 1) => HomKind::Carrier(triple.left().clone()),
        (1, 2) => HomKind::Carrier(triple.right().clone()),
        (0, 2) => HomKind::Carrier(triple.value().clone()),
        _ => HomKind::Trivial,
    };
    let designated = vec![Designated {
        p: 0,
        q: 1,
        r: 2,
        triple: 0,
    }];
    assemble(objects, kind, designated, std::slice::from_ref(triple))
}

/// Objects `-1, 0, 1, ..., n` with `hom(-1, 0) = A`, `hom(0, i) = B`,
/// `hom(-1, i) = C` and `v . u = u &_i v` on `(-1, 0, i)`.
fn build_minus_one_layout(triples: &[AdjointTriple]) -> Result<FiniteQuantaloid, QuantaloidError> {
    shared_lattices(triples)?;
    let n = triples.len();
    let t = &triples[0];
    let mut objects = vec!["-1".to_string(), "0".to_string()];
    objects.extend((1..=n).map(|i| i.to_string()));
    // position k holds object k - 1
    let kind = |p: usize, q: usize| match (p, q) {
        _ if p == q => HomKind::Unit,
        (0, 1) => HomKind::Carrier(t.left().clone()),
        (1, q) if q >= 2 => HomKind::Carrier(t.right().clone()),
        (0, q) if q >= 2 => HomKind::Carrier(t.value().clone()),
        _ => HomKind::Trivial,
    };
    let designated = (0..n)
        .map(|i| Designated {
            p: 0,
            q: 1,
            r: i + 2,
            triple: i,
        })
        .collect();
    assemble(objects, kind, designated, triples)
}

/// Quantaloid of a multi-adjoint frame; triples have roles `(L1, L2, P)`.
pub fn build_qf(triples: &[AdjointTriple]) -> Result<FiniteQuantaloid, QuantaloidError> {
    build_minus_one_layout(triples)
}

/// Quantaloid of a multi-adjoint object-oriented frame; triples have roles
/// `(L1, P, L2)`, so `hom(0, i) = P` and `hom(-1, i) = L2`.
pub fn build_qo(triples: &[AdjointTriple]) -> Result<FiniteQuantaloid, QuantaloidError> {
    build_minus_one_layout(triples)
}

/// Quantaloid of a multi-adjoint property-oriented frame; triples have roles
/// `(P, L2, L1)`. Objects `0, 1, ..., n, inf` with `hom(0, i) = P`,
/// `hom(i, inf) = L2`, `hom(0, inf) = L1`.
pub fn build_qp(triples: &[AdjointTriple]) -> Result<FiniteQuantaloid, QuantaloidError> {
    shared_lattices(triples)?;
    let n = triples.len();
    let t = &triples[0];
    let mut objects: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    objects.push("inf".to_string());
    let inf = n + 1;
    let kind = |p: usize, q: usize| match (p, q) {
        _ if p == q => HomKind::Unit,
        (0, q) if (1..=n).contains(&q) => HomKind::Carrier(t.left().clone()),
        (p, q) if (1..=n).contains(&p) && q == inf => HomKind::Carrier(t.right().clone()),
        (0, q) if q == inf => HomKind::Carrier(t.value().clone()),
        _ => HomKind::Trivial,
    };
    let designated = (0..n)
        .map(|i| Designated {
            p: 0,
            q: i + 1,
            r: inf,
            triple: i,
        })
        .collect();
    assemble(objects, kind, designated, triples)
}

/// Checks that a designated hom triple composes by the triple's conjunction
/// and that its implications are the triple's residuals:
/// `w <| u = w -> u` and `v |> w = w <- v`.
pub fn check_designated(
    quantaloid: &FiniteQuantaloid,
    d: Designated,
    triple: &AdjointTriple,
) -> Result<(), QuantaloidError> {
    let (p, q, r) = (d.p, d.q, d.r);
    let (pq, qr, pr) = (quantaloid.hom(p, q), quantaloid.hom(q, r), quantaloid.hom(p, r));
    if **pq != **triple.left() || **qr != **triple.right() || **pr != **triple.value() {
        return Err(QuantaloidError::DesignatedMismatch(format!(
            "homs of ({}, {}, {}) are not the triple's lattices",
            quantaloid.objects()[p],
            quantaloid.objects()[q],
            quantaloid.objects()[r]
        )));
    }
    let at = |what: &str, a: &str, b: &str| {
        QuantaloidError::DesignatedMismatch(format!(
            "({}, {}, {}) {what} at ({a}, {b})",
            quantaloid.objects()[p],
            quantaloid.objects()[q],
            quantaloid.objects()[r]
        ))
    };
    for u in 0..pq.size() {
        for v in 0..qr.size() {
            if quantaloid.compose_idx(p, q, r, v, u) != triple.conj(u, v) {
                return Err(at("composition", pq.name(u), qr.name(v)));
            }
        }
    }
    for w in 0..pr.size() {
        for u in 0..pq.size() {
            if quantaloid.ldd_idx(p, q, r, w, u) != triple.residual_lua(w, u) {
                return Err(at("left implication", pr.name(w), pq.name(u)));
            }
        }
        for v in 0..qr.size() {
            if quantaloid.rdd_idx(p, q, r, v, w) != triple.residual_lda(w, v) {
                return Err(at("right implication", qr.name(v), pr.name(w)));
            }
        }
    }
    Ok(())
}

/// Exhaustive check of `v . u <= w <=> v <= w <| u <=> u <= v |> w` over
/// every composable triple of objects.
pub fn check_residuation(q: &FiniteQuantaloid) -> Result<(), QuantaloidError> {
    let n = q.object_count();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (ab, bc, ac) = (q.hom(a, b), q.hom(b, c), q.hom(a, c));
                for u in 0..ab.size() {
                    for v in 0..bc.size() {
                        for w in 0..ac.size() {
                            let x = ac.leq(q.compose_idx(a, b, c, v, u), w);
                            let y = bc.leq(v, q.ldd_idx(a, b, c, w, u));
                            let z = ab.leq(u, q.rdd_idx(a, b, c, v, w));
                            if x != y || y != z {
                                return Err(QuantaloidError::Residuation(format!(
                                    "fails on ({}, {}, {})",
                                    q.objects()[a],
                                    q.objects()[b],
                                    q.objects()[c]
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> Arc<FiniteLattice> {
        Arc::new(FiniteLattice::chain(&["0", "h", "1"]).unwrap())
    }

    fn godel() -> AdjointTriple {
        let c = c3();
        AdjointTriple::from_fn(c.clone(), c.clone(), c, |x, y| x.min(y)).unwrap()
    }

    fn lukasiewicz() -> AdjointTriple {
        let c = c3();
        AdjointTriple::from_fn(c.clone(), c.clone(), c, |x, y| (x + y).saturating_sub(2)).unwrap()
    }

    #[test]
    fn boolean_quantale() {
        let two = Arc::new(FiniteLattice::chain(&["0", "1"]).unwrap());
        let q = quantale("*", two, 1, |v, u| v.min(u)).unwrap();
        assert!(q.is_nontrivial());
    }

    #[test]
    fn one_element_quantale_is_trivial() {
        let one = Arc::new(FiniteLattice::chain(&["0"]).unwrap());
        let q = quantale("*", one, 0, |_, _| 0).unwrap();
        assert!(!q.is_nontrivial());
    }

    #[test]
    fn qw_from_godel() {
        let q = build_qw(&godel()).unwrap();
        assert_eq!(q.objects(), &["-1", "0", "1"]);
        assert_eq!(q.hom(0, 2).size(), 3);
        assert_eq!(q.hom(2, 0).size(), 1);
        assert!(q.is_nontrivial());
        check_residuation(&q).unwrap();
        check_designated(&q, q.designated()[0], &godel()).unwrap();
    }

    // Setting 1 & 1 := h on the designated triple still gives a lawful
    // quantaloid (it is again monotone and bottom-preserving on a chain), so
    // only the comparison with the frame's own triple can reject it.
    #[test]
    fn lawful_mutation_needs_the_frame_to_be_caught() {
        let q = build_qw(&godel()).unwrap();
        let mut data = q.data().clone();
        let (p, q_, r) = (0, 1, 2);
        let slot = (p * 3 + q_) * 3 + r;
        data.compose[slot][2 * 3 + 2] = 1;
        let mutated = validate_quantaloid(data).unwrap();
        assert!(matches!(
            check_designated(&mutated, q.designated()[0], &godel()),
            Err(QuantaloidError::DesignatedMismatch(_))
        ));
    }

    #[test]
    fn ldd_rdd_examples() {
        let q = build_qw(&godel()).unwrap();
        let w = q.arrow_named("-1", "1", "h").unwrap();
        let u = q.arrow_named("-1", "0", "1").unwrap();
        let v = q.ldd(w, u).unwrap();
        assert_eq!((v.source, v.target), (1, 2));
        assert_eq!(q.hom(1, 2).name(v.value), "h");

        let top = q.arrow_named("-1", "1", "1").unwrap();
        assert_eq!(q.ldd(top, u).unwrap().value, q.hom(1, 2).top());
        let bot = q.arrow_named("-1", "0", "0").unwrap();
        assert_eq!(q.ldd(w, bot).unwrap().value, q.hom(1, 2).top());

        let q = build_qw(&lukasiewicz()).unwrap();
        let v = q.arrow_named("0", "1", "h").unwrap();
        let w = q.arrow_named("-1", "1", "0").unwrap();
        let u = q.rdd(v, w).unwrap();
        assert_eq!((u.source, u.target), (0, 1));
        assert_eq!(q.hom(0, 1).name(u.value), "h");
        let vbot = q.arrow_named("0", "1", "0").unwrap();
        assert_eq!(q.rdd(vbot, w).unwrap().value, q.hom(0, 1).top());
        assert_eq!(q.rdd(v, top).unwrap().value, q.hom(0, 1).top());
    }

    #[test]
    fn type_mismatch() {
        let q = build_qw(&godel()).unwrap();
        let w = q.arrow_named("-1", "1", "h").unwrap();
        let u = q.arrow_named("0", "1", "1").unwrap();
        assert!(matches!(q.ldd(w, u), Err(QuantaloidError::TypeMismatch(_))));
        assert!(matches!(q.compose(w, w), Err(QuantaloidError::TypeMismatch(_))));
    }

    #[test]
    fn qf_two_triples() {
        let q = build_qf(&[godel(), lukasiewicz()]).unwrap();
        assert_eq!(q.objects(), &["-1", "0", "1", "2"]);
        assert_eq!(q.hom(1, 2).size(), 3);
        assert_eq!(q.hom(1, 3).size(), 3);
        assert_eq!(q.hom(2, 3).size(), 1);
        // z = 0, x = h: Goedel gives 0, Lukasiewicz gives h
        assert_eq!(q.ldd_idx(0, 1, 2, 0, 1), 0);
        assert_eq!(q.ldd_idx(0, 1, 3, 0, 1), 1);
        assert!(q.is_nontrivial());
    }

    #[test]
    fn frame_mismatch() {
        let two = Arc::new(FiniteLattice::chain(&["0", "1"]).unwrap());
        let crisp = AdjointTriple::from_fn(two.clone(), two.clone(), two, |x, y| x.min(y)).unwrap();
        assert!(matches!(
            build_qf(&[godel(), crisp]),
            Err(QuantaloidError::FrameMismatch(_))
        ));
        assert!(matches!(build_qf(&[]), Err(QuantaloidError::FrameMismatch(_))));
    }

    #[test]
    fn qp_objects() {
        let q = build_qp(&[godel(), godel()]).unwrap();
        assert_eq!(q.objects(), &["0", "1", "2", "inf"]);
        assert_eq!(q.hom(3, 0).size(), 1);
        assert_eq!(q.hom(1, 2).size(), 1);
        check_residuation(&q).unwrap();
    }

    #[test]
    fn corrupted_identity_is_detected() {
        let q = build_qw(&godel()).unwrap();
        let mut data = q.data().clone();
        // id_0 . id_0 := bot
        let slot = (3 + 1) * 3 + 1;
        data.compose[slot][3] = 0;
        assert!(validate_quantaloid(data).is_err());
    }

    #[test]
    fn dump_round_trip() {
        let q = build_qf(&[godel(), lukasiewicz()]).unwrap();
        let dump = q.to_dump();
        let json = serde_json::to_string(&dump).unwrap();
        let back: QuantaloidDump = serde_json::from_str(&json).unwrap();
        let again = validate_quantaloid(back.to_data().unwrap()).unwrap();
        assert_eq!(again.data(), q.data());
    }
}
