//! Typed sets, Q-relations, Q-category structures and (co)presheaf fibres.

use std::sync::Arc;

use crate::lattice::{FiniteLattice, Lattice, LatticeError, ProductLattice};
use crate::quantaloid::FiniteQuantaloid;

/// Default cap on materialized fibre sizes.
pub const DEFAULT_FIBRE_LIMIT: usize = 65536;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QRelError {
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("not transitive at (`{0}`, `{1}`, `{2}`)")]
    NotTransitive(String, String, String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A set whose elements carry quantaloid objects (by index) as types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedSet {
    names: Vec<String>,
    types: Vec<usize>,
}

impl TypedSet {
    pub fn new(quantaloid: &FiniteQuantaloid, names: Vec<String>, types: Vec<usize>) -> Result<Self, QRelError> {
        if names.len() != types.len() {
            return Err(QRelError::TypeMismatch(format!(
                "{} names but {} types",
                names.len(),
                types.len()
            )));
        }
        if let Some((n, _)) = names.iter().zip(&types).find(|(_, &t)| t >= quantaloid.object_count()) {
            return Err(QRelError::TypeMismatch(format!("`{n}` has no valid type")));
        }
        Ok(Self { names, types })
    }

    /// Every element gets the same type.
    pub fn uniform(quantaloid: &FiniteQuantaloid, names: Vec<String>, ty: usize) -> Result<Self, QRelError> {
        let types = vec![ty; names.len()];
        Self::new(quantaloid, names, types)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    pub fn type_of(&self, i: usize) -> usize {
        self.types[i]
    }

    /// Indices of the elements of type `q`.
    pub fn fibre(&self, q: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.types[i] == q).collect()
    }
}

/// A Q-relation `X -|-> Y`, values stored row-major by `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRelation {
    source: TypedSet,
    target: TypedSet,
    values: Vec<usize>,
}

impl QRelation {
    pub fn new(
        quantaloid: &FiniteQuantaloid,
        source: TypedSet,
        target: TypedSet,
        values: Vec<usize>,
    ) -> Result<Self, QRelError> {
        if values.len() != source.len() * target.len() {
            return Err(QRelError::TypeMismatch(format!(
                "{} values for a {}x{} relation",
                values.len(),
                source.len(),
                target.len()
            )));
        }
        for x in 0..source.len() {
            for y in 0..target.len() {
                let hom = quantaloid.hom(source.type_of(x), target.type_of(y));
                if values[x * target.len() + y] >= hom.size() {
                    return Err(QRelError::TypeMismatch(format!(
                        "value at (`{}`, `{}`) is not in its hom",
                        source.names[x], target.names[y]
                    )));
                }
            }
        }
        Ok(Self { source, target, values })
    }

    pub fn from_fn(
        quantaloid: &FiniteQuantaloid,
        source: TypedSet,
        target: TypedSet,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, QRelError> {
        let values = (0..source.len())
            .flat_map(|x| (0..target.len()).map(move |y| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        Self::new(quantaloid, source, target, values)
    }

    pub fn source(&self) -> &TypedSet {
        &self.source
    }

    pub fn target(&self) -> &TypedSet {
        &self.target
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.values[x * self.target.len() + y]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// Pointwise local order `phi <= psi`.
pub fn leq_rel(quantaloid: &FiniteQuantaloid, a: &QRelation, b: &QRelation) -> Result<bool, QRelError> {
    if a.source != b.source || a.target != b.target {
        return Err(QRelError::TypeMismatch("relations have different carriers".into()));
    }
    Ok((0..a.source.len()).all(|x| {
        (0..a.target.len()).all(|y| {
            quantaloid
                .hom(a.source.type_of(x), a.target.type_of(y))
                .leq(a.get(x, y), b.get(x, y))
        })
    }))
}

/// `(psi . phi)(x, z) = V_y psi(y, z) . phi(x, y)`
pub fn compose_rel(quantaloid: &FiniteQuantaloid, psi: &QRelation, phi: &QRelation) -> Result<QRelation, QRelError> {
    if psi.source != phi.target {
        return Err(QRelError::TypeMismatch(
            "middle typed sets of the composite differ".into(),
        ));
    }
    let (xs, ys, zs) = (&phi.source, &phi.target, &psi.target);
    QRelation::from_fn(quantaloid, xs.clone(), zs.clone(), |x, z| {
        let (p, r) = (xs.type_of(x), zs.type_of(z));
        let terms: Vec<usize> = (0..ys.len())
            .map(|y| quantaloid.compose_idx(p, ys.type_of(y), r, psi.get(y, z), phi.get(x, y)))
            .collect();
        quantaloid.hom(p, r).join(&terms)
    })
}

/// `(xi <| phi)(y, z) = /\_x xi(x, z) <| phi(x, y)`
pub fn ldd_rel(quantaloid: &FiniteQuantaloid, xi: &QRelation, phi: &QRelation) -> Result<QRelation, QRelError> {
    if xi.source != phi.source {
        return Err(QRelError::TypeMismatch(
            "left implication needs relations with a shared source".into(),
        ));
    }
    let (xs, ys, zs) = (&phi.source, &phi.target, &xi.target);
    QRelation::from_fn(quantaloid, ys.clone(), zs.clone(), |y, z| {
        let (q, r) = (ys.type_of(y), zs.type_of(z));
        let terms: Vec<usize> = (0..xs.len())
            .map(|x| quantaloid.ldd_idx(xs.type_of(x), q, r, xi.get(x, z), phi.get(x, y)))
            .collect();
        quantaloid.hom(q, r).meet(&terms)
    })
}

/// `(psi |> xi)(x, y) = /\_z psi(y, z) |> xi(x, z)`
pub fn rdd_rel(quantaloid: &FiniteQuantaloid, psi: &QRelation, xi: &QRelation) -> Result<QRelation, QRelError> {
    if psi.target != xi.target {
        return Err(QRelError::TypeMismatch(
            "right implication needs relations with a shared target".into(),
        ));
    }
    let (xs, ys, zs) = (&xi.source, &psi.source, &psi.target);
    QRelation::from_fn(quantaloid, xs.clone(), ys.clone(), |x, y| {
        let (p, q) = (xs.type_of(x), ys.type_of(y));
        let terms: Vec<usize> = (0..zs.len())
            .map(|z| quantaloid.rdd_idx(p, q, zs.type_of(z), psi.get(y, z), xi.get(x, z)))
            .collect();
        quantaloid.hom(p, q).meet(&terms)
    })
}

/// The identity relation: `id` on the diagonal, bottom elsewhere.
pub fn identity_rel(quantaloid: &FiniteQuantaloid, set: &TypedSet) -> QRelation {
    QRelation::from_fn(quantaloid, set.clone(), set.clone(), |x, y| {
        if x == y {
            quantaloid.identity(set.type_of(x))
        } else {
            quantaloid.bottom(set.type_of(x), set.type_of(y))
        }
    })
    .expect("identity relation is well typed")
}

/// A typed set with a hom relation; a Q-category once validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QCategoryStructure {
    pub carrier: TypedSet,
    pub hom_rel: QRelation,
}

impl QCategoryStructure {
    pub fn discrete(quantaloid: &FiniteQuantaloid, carrier: TypedSet) -> Self {
        let hom_rel = identity_rel(quantaloid, &carrier);
        Self { carrier, hom_rel }
    }
}

/// Checks reflexivity `id <= 1(x, x)` and transitivity
/// `1(y, z) . 1(x, y) <= 1(x, z)`.
pub fn validate_qcategory(quantaloid: &FiniteQuantaloid, c: &QCategoryStructure) -> Result<(), QRelError> {
    let set = &c.carrier;
    if c.hom_rel.source != *set || c.hom_rel.target != *set {
        return Err(QRelError::TypeMismatch(
            "hom relation does not live on the carrier".into(),
        ));
    }
    let h = &c.hom_rel;
    for x in 0..set.len() {
        let q = set.type_of(x);
        if !quantaloid.hom(q, q).leq(quantaloid.identity(q), h.get(x, x)) {
            return Err(QRelError::NotReflexive(set.names[x].clone()));
        }
    }
    for x in 0..set.len() {
        for y in 0..set.len() {
            for z in 0..set.len() {
                let (p, q, r) = (set.type_of(x), set.type_of(y), set.type_of(z));
                let through = quantaloid.compose_idx(p, q, r, h.get(y, z), h.get(x, y));
                if !quantaloid.hom(p, r).leq(through, h.get(x, z)) {
                    return Err(QRelError::NotTransitive(
                        set.names[x].clone(),
                        set.names[y].clone(),
                        set.names[z].clone(),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// `1_Y . phi . 1_X = phi`
pub fn is_distributor(
    quantaloid: &FiniteQuantaloid,
    phi: &QRelation,
    cx: &QCategoryStructure,
    cy: &QCategoryStructure,
) -> Result<bool, QRelError> {
    let composite = compose_rel(quantaloid, &cy.hom_rel, &compose_rel(quantaloid, phi, &cx.hom_rel)?)?;
    Ok(composite == *phi)
}

/// `a <= b` iff both have type `q` and `id_q <= 1(a, b)`.
pub fn underlying_leq(quantaloid: &FiniteQuantaloid, c: &QCategoryStructure, a: usize, b: usize) -> bool {
    let q = c.carrier.type_of(a);
    q == c.carrier.type_of(b) && quantaloid.hom(q, q).leq(quantaloid.identity(q), c.hom_rel.get(a, b))
}

/// A presheaf `X -|-> {q}`: `values[x]` lies in `hom(|x|, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presheaf {
    pub ty: usize,
    pub values: Vec<usize>,
}

/// A copresheaf `{q} -|-> X`: `values[x]` lies in `hom(q, |x|)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Copresheaf {
    pub ty: usize,
    pub values: Vec<usize>,
}

impl Presheaf {
    pub fn check(&self, quantaloid: &FiniteQuantaloid, set: &TypedSet) -> Result<(), QRelError> {
        check_vector(&self.values, set, |x| quantaloid.hom(set.type_of(x), self.ty))
    }
}

impl Copresheaf {
    pub fn check(&self, quantaloid: &FiniteQuantaloid, set: &TypedSet) -> Result<(), QRelError> {
        check_vector(&self.values, set, |x| quantaloid.hom(self.ty, set.type_of(x)))
    }
}

fn check_vector<'a>(
    values: &[usize],
    set: &TypedSet,
    hom: impl Fn(usize) -> &'a Arc<FiniteLattice>,
) -> Result<(), QRelError> {
    if values.len() != set.len() {
        return Err(QRelError::TypeMismatch(format!(
            "vector of length {} on a set of {} elements",
            values.len(),
            set.len()
        )));
    }
    for (x, &v) in values.iter().enumerate() {
        if v >= hom(x).size() {
            return Err(QRelError::TypeMismatch(format!(
                "value at `{}` is outside its hom",
                set.names[x]
            )));
        }
    }
    Ok(())
}

/// `(PX)_q`: the product of `hom(|x|, q)` over `x`, ordered pointwise.
pub fn presheaf_fibre(
    quantaloid: &FiniteQuantaloid,
    set: &TypedSet,
    q: usize,
    limit: usize,
) -> Result<ProductLattice, QRelError> {
    let components = set.types.iter().map(|&p| quantaloid.hom(p, q).clone()).collect();
    Ok(ProductLattice::new(components, false, limit)?)
}

/// `(P^dag X)_q`: the product of `hom(q, |x|)` over `x`, carrying the
/// underlying order of the copresheaf category, which is the reverse of the
/// pointwise order.
pub fn copresheaf_fibre(
    quantaloid: &FiniteQuantaloid,
    set: &TypedSet,
    q: usize,
    limit: usize,
) -> Result<ProductLattice, QRelError> {
    let components = set.types.iter().map(|&p| quantaloid.hom(q, p).clone()).collect();
    Ok(ProductLattice::new(components, true, limit)?)
}

/// The presheaves of type `q` on `set` as a Q-category with
/// `1(mu, mu') = /\_x mu'(x) <| mu(x)`.
pub fn presheaf_category(
    quantaloid: &FiniteQuantaloid,
    set: &TypedSet,
    q: usize,
    limit: usize,
) -> Result<(QCategoryStructure, Vec<Presheaf>), QRelError> {
    let fibre = presheaf_fibre(quantaloid, set, q, limit)?;
    let all: Vec<Presheaf> = (0..fibre.size())
        .map(|a| Presheaf {
            ty: q,
            values: fibre.decode(a),
        })
        .collect();
    let carrier = TypedSet::uniform(quantaloid, (0..fibre.size()).map(|a| fibre.label(a)).collect(), q)?;
    let hom_rel = QRelation::from_fn(quantaloid, carrier.clone(), carrier.clone(), |a, b| {
        let terms: Vec<usize> = (0..set.len())
            .map(|x| quantaloid.ldd_idx(set.type_of(x), q, q, all[b].values[x], all[a].values[x]))
            .collect();
        quantaloid.hom(q, q).meet(&terms)
    })?;
    Ok((QCategoryStructure { carrier, hom_rel }, all))
}

/// The copresheaves of type `q` on `set` as a Q-category with
/// `1(lam, lam') = /\_x lam'(x) |> lam(x)`.
pub fn copresheaf_category(
    quantaloid: &FiniteQuantaloid,
    set: &TypedSet,
    q: usize,
    limit: usize,
) -> Result<(QCategoryStructure, Vec<Copresheaf>), QRelError> {
    let fibre = copresheaf_fibre(quantaloid, set, q, limit)?;
    let all: Vec<Copresheaf> = (0..fibre.size())
        .map(|a| Copresheaf {
            ty: q,
            values: fibre.decode(a),
        })
        .collect();
    let carrier = TypedSet::uniform(quantaloid, (0..fibre.size()).map(|a| fibre.label(a)).collect(), q)?;
    let hom_rel = QRelation::from_fn(quantaloid, carrier.clone(), carrier.clone(), |a, b| {
        let terms: Vec<usize> = (0..set.len())
            .map(|x| quantaloid.rdd_idx(q, q, set.type_of(x), all[b].values[x], all[a].values[x]))
            .collect();
        quantaloid.hom(q, q).meet(&terms)
    })?;
    Ok((QCategoryStructure { carrier, hom_rel }, all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantaloid::{build_qf, build_qw, quantale};
    use crate::triple::AdjointTriple;

    fn c3() -> Arc<FiniteLattice> {
        Arc::new(FiniteLattice::chain(&["0", "h", "1"]).unwrap())
    }

    fn godel_qw() -> FiniteQuantaloid {
        let c = c3();
        build_qw(&AdjointTriple::from_fn(c.clone(), c.clone(), c, |x, y| x.min(y)).unwrap()).unwrap()
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn single_term_composite() {
        let q = godel_qw();
        let x = TypedSet::uniform(&q, names(&["x"]), 0).unwrap();
        let y = TypedSet::uniform(&q, names(&["y"]), 1).unwrap();
        let z = TypedSet::uniform(&q, names(&["z"]), 2).unwrap();
        let phi = QRelation::new(&q, x.clone(), y.clone(), vec![1]).unwrap();
        let psi = QRelation::new(&q, y, z, vec![2]).unwrap();
        let c = compose_rel(&q, &psi, &phi).unwrap();
        assert_eq!(c.values(), &[1]);
        assert_eq!(compose_rel(&q, &phi, &identity_rel(&q, &x)).unwrap(), phi);
    }

    #[test]
    fn empty_middle_gives_bottom() {
        let q = godel_qw();
        let x = TypedSet::uniform(&q, names(&["x"]), 0).unwrap();
        let y = TypedSet::uniform(&q, vec![], 1).unwrap();
        let z = TypedSet::uniform(&q, names(&["z"]), 2).unwrap();
        let phi = QRelation::new(&q, x.clone(), y.clone(), vec![]).unwrap();
        let psi = QRelation::new(&q, y.clone(), z.clone(), vec![]).unwrap();
        assert_eq!(compose_rel(&q, &psi, &phi).unwrap().values(), &[0]);
        // empty meet over X
        let xe = TypedSet::uniform(&q, vec![], 0).unwrap();
        let xi = QRelation::new(&q, xe.clone(), z.clone(), vec![]).unwrap();
        let phi = QRelation::new(&q, xe, x, vec![]).unwrap();
        let top = ldd_rel(&q, &xi, &phi).unwrap();
        assert_eq!(top.values(), &[q.hom(0, 2).top()]);
    }

    #[test]
    fn identity_off_diagonal_bottoms() {
        let q = godel_qw();
        let x = TypedSet::new(&q, names(&["a", "b"]), vec![0, 2]).unwrap();
        let k = identity_rel(&q, &x);
        assert_eq!(k.get(0, 0), q.identity(0));
        assert_eq!(k.get(0, 1), q.bottom(0, 2));
        assert_eq!(k.get(1, 0), q.bottom(2, 0));
        assert_eq!(compose_rel(&q, &k, &k).unwrap(), k);
    }

    #[test]
    fn discrete_category_and_reflexivity() {
        let q = godel_qw();
        let x = TypedSet::new(&q, names(&["a", "b"]), vec![0, 1]).unwrap();
        let d = QCategoryStructure::discrete(&q, x.clone());
        validate_qcategory(&q, &d).unwrap();
        assert!(underlying_leq(&q, &d, 0, 0));
        assert!(!underlying_leq(&q, &d, 0, 1));
        let mut bad = d.clone();
        bad.hom_rel = QRelation::new(&q, x.clone(), x, vec![0, 0, 0, 1]).unwrap();
        assert_eq!(validate_qcategory(&q, &bad), Err(QRelError::NotReflexive("a".into())));
    }

    #[test]
    fn crisp_categories_are_preorders() {
        let two = Arc::new(FiniteLattice::chain(&["0", "1"]).unwrap());
        let q = quantale("*", two, 1, |v, u| v.min(u)).unwrap();
        let x = TypedSet::uniform(&q, names(&["a", "b", "c"]), 0).unwrap();
        // every relation on three points
        for bits in 0u32..512 {
            let values: Vec<usize> = (0..9).map(|i| ((bits >> i) & 1) as usize).collect();
            let rel = QRelation::new(&q, x.clone(), x.clone(), values.clone()).unwrap();
            let c = QCategoryStructure {
                carrier: x.clone(),
                hom_rel: rel,
            };
            let r = |i: usize, j: usize| values[i * 3 + j] == 1;
            let reflexive = (0..3).all(|i| r(i, i));
            let transitive = (0..3).all(|i| (0..3).all(|j| (0..3).all(|k| !(r(i, j) && r(j, k)) || r(i, k))));
            assert_eq!(validate_qcategory(&q, &c).is_ok(), reflexive && transitive);
        }
    }

    #[test]
    fn fibre_shapes() {
        let c = c3();
        let t = AdjointTriple::from_fn(c.clone(), c.clone(), c, |x, y| x.min(y)).unwrap();
        let q = build_qf(&[t.clone(), t]).unwrap();
        let x = TypedSet::uniform(&q, names(&["x1", "x2"]), 0).unwrap();
        let f = presheaf_fibre(&q, &x, 1, DEFAULT_FIBRE_LIMIT).unwrap();
        assert_eq!(f.size(), 9);
        let empty = TypedSet::uniform(&q, vec![], 0).unwrap();
        assert_eq!(presheaf_fibre(&q, &empty, 1, 1).unwrap().size(), 1);

        let y = TypedSet::new(&q, names(&["y1", "y2"]), vec![2, 3]).unwrap();
        let g = copresheaf_fibre(&q, &y, 1, DEFAULT_FIBRE_LIMIT).unwrap();
        assert_eq!(g.size(), 9);
        assert!(g.is_reversed());
        assert_eq!(g.decode(g.top()), vec![0, 0]);
    }
}
