//! Finite complete lattices, monotone maps, Galois connections and closure
//! operators.
//!
//! Elements are addressed by their index in the lattice's canonical element
//! list. [`FiniteLattice`] is given extensionally by an order matrix and keeps
//! precomputed join/meet tables. [`ProductLattice`] is a pointwise product of
//! finite lattices (optionally order-reversed) whose elements are encoded in
//! mixed radix, so that function spaces such as `L^X` never need tables.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("order matrix must be {expected}x{expected}, row {row} has length {found}")]
    BadMatrix { expected: usize, row: usize, found: usize },
    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),
    #[error("not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("not a lattice: `{a}` and `{b}` have no {which}")]
    NotALattice { a: String, b: String, which: &'static str },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("map is not monotone: {a} <= {b} but images are not ordered")]
    NotMonotone { a: String, b: String },
    #[error("not a closure operator at `{element}`: {reason}")]
    NotAClosure { element: String, reason: &'static str },
    #[error("product lattice would have {size} elements, above the limit of {limit}")]
    TooLarge { size: u128, limit: usize },
}

/// Read access to a finite lattice whose elements are `0..size()`.
pub trait Lattice {
    fn size(&self) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool;
    fn join2(&self, a: usize, b: usize) -> usize;
    fn meet2(&self, a: usize, b: usize) -> usize;
    fn top(&self) -> usize;
    fn bottom(&self) -> usize;
    /// Elements covering `a`. The order is the reflexive-transitive closure
    /// of the covering relation, which makes cover-wise monotonicity checks
    /// sufficient.
    fn upper_covers(&self, a: usize) -> Vec<usize>;
    fn label(&self, a: usize) -> String;

    /// Least upper bound of `s`; the empty join is bottom.
    fn join(&self, s: &[usize]) -> usize {
        s.iter().fold(self.bottom(), |acc, &x| self.join2(acc, x))
    }

    /// Greatest lower bound of `s`; the empty meet is top.
    fn meet(&self, s: &[usize]) -> usize {
        s.iter().fold(self.top(), |acc, &x| self.meet2(acc, x))
    }

    fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }
}

/// Order data as it appears in JSON files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
}

/// A validated finite lattice with precomputed join and meet tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    elements: Vec<String>,
    order: Vec<bool>,
    joins: Vec<usize>,
    meets: Vec<usize>,
    top: usize,
    bottom: usize,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("elements", &self.elements)
            .field("top", &self.elements[self.top])
            .field("bottom", &self.elements[self.bottom])
            .finish()
    }
}

impl FiniteLattice {
    /// Validates raw order data and precomputes the lattice operations.
    pub fn validate(spec: &LatticeSpec) -> Result<Self, LatticeError> {
        let n = spec.elements.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if spec.leq.len() != n {
            return Err(LatticeError::BadMatrix {
                expected: n,
                row: spec.leq.len().min(n),
                found: spec.leq.len(),
            });
        }
        for (row, r) in spec.leq.iter().enumerate() {
            if r.len() != n {
                return Err(LatticeError::BadMatrix {
                    expected: n,
                    row,
                    found: r.len(),
                });
            }
        }
        for (i, e) in spec.elements.iter().enumerate() {
            if spec.elements[..i].contains(e) {
                return Err(LatticeError::DuplicateElement(e.clone()));
            }
        }
        Self::from_fn(spec.elements.clone(), |i, j| spec.leq[i][j])
    }

    /// Builds a lattice from element names and an order predicate on indices.
    pub fn from_fn(elements: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, LatticeError> {
        let n = elements.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut order = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                order[i * n + j] = leq(i, j);
            }
        }
        let le = |i: usize, j: usize| order[i * n + j];
        if let Some(i) = (0..n).find(|&i| !le(i, i)) {
            return Err(LatticeError::NotAPartialOrder(format!(
                "`{}` is not below itself",
                elements[i]
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le(i, j) && le(j, i) {
                    return Err(LatticeError::NotAPartialOrder(format!(
                        "`{}` and `{}` violate antisymmetry",
                        elements[i], elements[j]
                    )));
                }
                if !le(i, j) {
                    continue;
                }
                for k in 0..n {
                    if le(j, k) && !le(i, k) {
                        return Err(LatticeError::NotAPartialOrder(format!(
                            "`{}` <= `{}` <= `{}` violates transitivity",
                            elements[i], elements[j], elements[k]
                        )));
                    }
                }
            }
        }

        let mut joins = vec![0; n * n];
        let mut meets = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let upper: Vec<usize> = (0..n).filter(|&u| le(a, u) && le(b, u)).collect();
                let join = upper
                    .iter()
                    .copied()
                    .find(|&u| upper.iter().all(|&v| le(u, v)))
                    .ok_or_else(|| LatticeError::NotALattice {
                        a: elements[a].clone(),
                        b: elements[b].clone(),
                        which: "join",
                    })?;
                let lower: Vec<usize> = (0..n).filter(|&l| le(l, a) && le(l, b)).collect();
                let meet = lower
                    .iter()
                    .copied()
                    .find(|&l| lower.iter().all(|&v| le(v, l)))
                    .ok_or_else(|| LatticeError::NotALattice {
                        a: elements[a].clone(),
                        b: elements[b].clone(),
                        which: "meet",
                    })?;
                joins[a * n + b] = join;
                joins[b * n + a] = join;
                meets[a * n + b] = meet;
                meets[b * n + a] = meet;
            }
        }
        let top = (0..n)
            .find(|&t| (0..n).all(|x| le(x, t)))
            .ok_or_else(|| LatticeError::NotALattice {
                a: elements[0].clone(),
                b: elements[n - 1].clone(),
                which: "top",
            })?;
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| le(b, x)))
            .ok_or_else(|| LatticeError::NotALattice {
                a: elements[0].clone(),
                b: elements[n - 1].clone(),
                which: "bottom",
            })?;

        let strictly = |i: usize, j: usize| i != j && le(i, j);
        let covers = |i: usize, j: usize| strictly(i, j) && !(0..n).any(|k| strictly(i, k) && strictly(k, j));
        let upper = (0..n).map(|i| (0..n).filter(|&j| covers(i, j)).collect()).collect();
        let lower = (0..n).map(|i| (0..n).filter(|&j| covers(j, i)).collect()).collect();

        Ok(Self {
            elements,
            order,
            joins,
            meets,
            top,
            bottom,
            upper,
            lower,
        })
    }

    /// The chain `names[0] < names[1] < ...`.
    pub fn chain<S: AsRef<str>>(names: &[S]) -> Result<Self, LatticeError> {
        let elements = names.iter().map(|s| s.as_ref().to_string()).collect();
        Self::from_fn(elements, |i, j| i <= j)
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower[a]
    }

    pub fn to_spec(&self) -> LatticeSpec {
        let n = self.elements.len();
        LatticeSpec {
            elements: self.elements.clone(),
            leq: (0..n)
                .map(|i| (0..n).map(|j| self.order[i * n + j]).collect())
                .collect(),
        }
    }
}

impl Lattice for FiniteLattice {
    fn size(&self) -> usize {
        self.elements.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.order[a * self.elements.len() + b]
    }

    fn join2(&self, a: usize, b: usize) -> usize {
        self.joins[a * self.elements.len() + b]
    }

    fn meet2(&self, a: usize, b: usize) -> usize {
        self.meets[a * self.elements.len() + b]
    }

    fn top(&self) -> usize {
        self.top
    }

    fn bottom(&self) -> usize {
        self.bottom
    }

    fn upper_covers(&self, a: usize) -> Vec<usize> {
        self.upper[a].clone()
    }

    fn label(&self, a: usize) -> String {
        self.elements[a].clone()
    }
}

impl Serialize for FiniteLattice {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_spec().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiniteLattice {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let spec = LatticeSpec::deserialize(deserializer)?;
        FiniteLattice::validate(&spec).map_err(serde::de::Error::custom)
    }
}

/// Pointwise product of finite lattices, encoded in mixed radix with the first
/// coordinate most significant, so index order is lexicographic vector order.
///
/// When `reversed` is set the order (and with it joins, meets, top and bottom)
/// is the reverse of the pointwise order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductLattice {
    components: Vec<Arc<FiniteLattice>>,
    strides: Vec<usize>,
    size: usize,
    reversed: bool,
}

impl ProductLattice {
    pub fn new(components: Vec<Arc<FiniteLattice>>, reversed: bool, limit: usize) -> Result<Self, LatticeError> {
        let size: u128 = components.iter().map(|c| c.size() as u128).product();
        if size > limit as u128 {
            return Err(LatticeError::TooLarge { size, limit });
        }
        let mut strides = vec![1; components.len()];
        for k in (0..components.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * components[k + 1].size();
        }
        Ok(Self {
            components,
            strides,
            size: size as usize,
            reversed,
        })
    }

    pub fn components(&self) -> &[Arc<FiniteLattice>] {
        &self.components
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    pub fn coord(&self, a: usize, k: usize) -> usize {
        (a / self.strides[k]) % self.components[k].size()
    }

    pub fn decode(&self, a: usize) -> Vec<usize> {
        (0..self.arity()).map(|k| self.coord(a, k)).collect()
    }

    pub fn encode(&self, values: &[usize]) -> usize {
        debug_assert_eq!(values.len(), self.arity());
        values.iter().zip(&self.strides).map(|(v, s)| v * s).sum()
    }

    pub fn with_coord(&self, a: usize, k: usize, v: usize) -> usize {
        a - self.coord(a, k) * self.strides[k] + v * self.strides[k]
    }

    /// The element equal to `v` at coordinate `k` and to this lattice's top
    /// everywhere else. Every element is the meet of such elements.
    pub fn coordinate_generator(&self, k: usize, v: usize) -> usize {
        self.with_coord(self.top(), k, v)
    }

    /// Materializes the product as a [`FiniteLattice`]; only sensible for
    /// small products.
    pub fn to_finite(&self) -> Result<FiniteLattice, LatticeError> {
        let names = (0..self.size).map(|a| self.label(a)).collect();
        FiniteLattice::from_fn(names, |a, b| self.leq(a, b))
    }

    fn pointwise_leq(&self, a: usize, b: usize) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(k, c)| c.leq(self.coord(a, k), self.coord(b, k)))
    }

    fn pointwise(&self, a: usize, b: usize, op: impl Fn(&FiniteLattice, usize, usize) -> usize) -> usize {
        self.components
            .iter()
            .enumerate()
            .map(|(k, c)| op(c, self.coord(a, k), self.coord(b, k)) * self.strides[k])
            .sum()
    }

    fn pointwise_top(&self) -> usize {
        self.components
            .iter()
            .enumerate()
            .map(|(k, c)| c.top() * self.strides[k])
            .sum()
    }

    fn pointwise_bottom(&self) -> usize {
        self.components
            .iter()
            .enumerate()
            .map(|(k, c)| c.bottom() * self.strides[k])
            .sum()
    }
}

impl Lattice for ProductLattice {
    fn size(&self) -> usize {
        self.size
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        if self.reversed {
            self.pointwise_leq(b, a)
        } else {
            self.pointwise_leq(a, b)
        }
    }

    fn join2(&self, a: usize, b: usize) -> usize {
        if self.reversed {
            self.pointwise(a, b, |c, x, y| c.meet2(x, y))
        } else {
            self.pointwise(a, b, |c, x, y| c.join2(x, y))
        }
    }

    fn meet2(&self, a: usize, b: usize) -> usize {
        if self.reversed {
            self.pointwise(a, b, |c, x, y| c.join2(x, y))
        } else {
            self.pointwise(a, b, |c, x, y| c.meet2(x, y))
        }
    }

    fn top(&self) -> usize {
        if self.reversed {
            self.pointwise_bottom()
        } else {
            self.pointwise_top()
        }
    }

    fn bottom(&self) -> usize {
        if self.reversed {
            self.pointwise_top()
        } else {
            self.pointwise_bottom()
        }
    }

    fn upper_covers(&self, a: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, c) in self.components.iter().enumerate() {
            let x = self.coord(a, k);
            let next: &[usize] = if self.reversed { c.lower_covers(x) } else { &c.upper[x] };
            out.extend(next.iter().map(|&y| self.with_coord(a, k, y)));
        }
        out
    }

    fn label(&self, a: usize) -> String {
        let parts: Vec<&str> = (0..self.arity())
            .map(|k| self.components[k].name(self.coord(a, k)))
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// A monotone map between two lattices, stored as an image table.
#[derive(Debug, Clone)]
pub struct MonotoneMap<'a, S: ?Sized, T: ?Sized> {
    source: &'a S,
    target: &'a T,
    table: Vec<usize>,
}

impl<'a, S: Lattice + ?Sized, T: Lattice + ?Sized> MonotoneMap<'a, S, T> {
    pub fn new(source: &'a S, target: &'a T, table: Vec<usize>) -> Result<Self, LatticeError> {
        if table.len() != source.size() {
            return Err(LatticeError::ShapeMismatch(format!(
                "table has {} entries for a source of size {}",
                table.len(),
                source.size()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= target.size()) {
            return Err(LatticeError::ShapeMismatch(format!(
                "image index {bad} outside a target of size {}",
                target.size()
            )));
        }
        for a in 0..source.size() {
            for b in source.upper_covers(a) {
                if !target.leq(table[a], table[b]) {
                    return Err(LatticeError::NotMonotone {
                        a: source.label(a),
                        b: source.label(b),
                    });
                }
            }
        }
        Ok(Self { source, target, table })
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn source(&self) -> &'a S {
        self.source
    }

    pub fn target(&self) -> &'a T {
        self.target
    }
}

/// Exhaustively checks `left(a) <= b <=> a <= right(b)` for all pairs.
pub fn is_galois<A, B>(left: &MonotoneMap<'_, A, B>, right: &MonotoneMap<'_, B, A>) -> Result<bool, LatticeError>
where
    A: Lattice + PartialEq + ?Sized,
    B: Lattice + PartialEq + ?Sized,
{
    if left.source != right.target || left.target != right.source {
        return Err(LatticeError::ShapeMismatch(
            "left and right maps do not run between the same lattices".into(),
        ));
    }
    let (a_lat, b_lat) = (left.source, left.target);
    for a in 0..a_lat.size() {
        let fa = left.apply(a);
        for b in 0..b_lat.size() {
            if b_lat.leq(fa, b) != a_lat.leq(a, right.apply(b)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A validated closure operator: monotone, inflationary and idempotent.
#[derive(Debug, Clone)]
pub struct ClosureOperator<'a, L: ?Sized> {
    carrier: &'a L,
    table: Vec<usize>,
}

impl<'a, L: Lattice + ?Sized> ClosureOperator<'a, L> {
    pub fn new(carrier: &'a L, table: Vec<usize>) -> Result<Self, LatticeError> {
        let map = MonotoneMap::new(carrier, carrier, table)?;
        let table = map.table;
        for a in 0..carrier.size() {
            if !carrier.leq(a, table[a]) {
                return Err(LatticeError::NotAClosure {
                    element: carrier.label(a),
                    reason: "not inflationary",
                });
            }
            if table[table[a]] != table[a] {
                return Err(LatticeError::NotAClosure {
                    element: carrier.label(a),
                    reason: "not idempotent",
                });
            }
        }
        Ok(Self { carrier, table })
    }

    pub fn carrier(&self) -> &'a L {
        self.carrier
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    /// `{a | c(a) = a}` in canonical element order.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.carrier.size()).filter(|&a| self.table[a] == a).collect()
    }
}

/// Smallest superset of `seeds` closed under `op`, in ascending order.
pub fn close_under(seeds: impl IntoIterator<Item = usize>, op: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut set = std::collections::BTreeSet::new();
    let mut frontier: Vec<usize> = Vec::new();
    for s in seeds {
        if set.insert(s) {
            frontier.push(s);
        }
    }
    while !frontier.is_empty() {
        let current: Vec<usize> = set.iter().copied().collect();
        let mut next = Vec::new();
        for &f in &frontier {
            for &c in &current {
                let m = op(f, c);
                if set.insert(m) {
                    next.push(m);
                }
            }
        }
        frontier = next;
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> FiniteLattice {
        FiniteLattice::chain(&["0", "1"]).unwrap()
    }

    fn c3() -> FiniteLattice {
        FiniteLattice::chain(&["0", "h", "1"]).unwrap()
    }

    fn m3() -> FiniteLattice {
        let names = ["bot", "a", "b", "c", "top"];
        FiniteLattice::from_fn(names.iter().map(|s| s.to_string()).collect(), |i, j| {
            i == j || i == 0 || j == 4
        })
        .unwrap()
    }

    #[test]
    fn two_chain_bounds() {
        let l = two();
        assert_eq!(l.name(l.top()), "1");
        assert_eq!(l.name(l.bottom()), "0");
        assert_eq!(l.join(&[]), 0);
        assert_eq!(l.meet(&[]), 1);
    }

    #[test]
    fn diamond_joins_and_meets() {
        let l = m3();
        let (a, b) = (1, 2);
        assert_eq!(l.name(l.join(&[a, b])), "top");
        assert_eq!(l.name(l.meet(&[a, b])), "bot");
    }

    #[test]
    fn chain_join_meet() {
        let l = c3();
        assert_eq!(l.name(l.join(&[0, 1])), "h");
        assert_eq!(l.name(l.meet(&[1, 2])), "h");
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let spec = LatticeSpec {
            elements: vec!["a".into(), "b".into()],
            leq: vec![vec![true, false], vec![false, true]],
        };
        assert!(matches!(
            FiniteLattice::validate(&spec),
            Err(LatticeError::NotALattice { .. })
        ));
    }

    #[test]
    fn rejects_non_orders() {
        let cyclic = LatticeSpec {
            elements: vec!["a".into(), "b".into()],
            leq: vec![vec![true, true], vec![true, true]],
        };
        assert!(matches!(
            FiniteLattice::validate(&cyclic),
            Err(LatticeError::NotAPartialOrder(_))
        ));
        let irreflexive = LatticeSpec {
            elements: vec!["a".into()],
            leq: vec![vec![false]],
        };
        assert!(matches!(
            FiniteLattice::validate(&irreflexive),
            Err(LatticeError::NotAPartialOrder(_))
        ));
        let intransitive = LatticeSpec {
            elements: vec!["a".into(), "b".into(), "c".into()],
            leq: vec![
                vec![true, true, false],
                vec![false, true, true],
                vec![false, false, true],
            ],
        };
        assert!(matches!(
            FiniteLattice::validate(&intransitive),
            Err(LatticeError::NotAPartialOrder(_))
        ));
        let empty = LatticeSpec {
            elements: vec![],
            leq: vec![],
        };
        assert_eq!(FiniteLattice::validate(&empty), Err(LatticeError::Empty));
    }

    #[test]
    fn galois_examples() {
        let l = two();
        let id = MonotoneMap::new(&l, &l, vec![0, 1]).unwrap();
        assert!(is_galois(&id, &id).unwrap());

        let c = c3();
        let bot = MonotoneMap::new(&l, &c, vec![0, 0]).unwrap();
        let top = MonotoneMap::new(&c, &l, vec![1, 1, 1]).unwrap();
        assert!(is_galois(&bot, &top).unwrap());

        // x -> min(x, h) and its Goedel residual y -> (h -> y)
        let h = 1;
        let left: Vec<usize> = (0..3).map(|x| c.meet2(x, h)).collect();
        let right: Vec<usize> = (0..3)
            .map(|y| c.join(&(0..3).filter(|&x| c.meet2(x, h) <= y).collect::<Vec<_>>()))
            .collect();
        let left = MonotoneMap::new(&c, &c, left).unwrap();
        let right = MonotoneMap::new(&c, &c, right).unwrap();
        assert!(is_galois(&left, &right).unwrap());
        assert!(!is_galois(&left, &left).unwrap());
    }

    #[test]
    fn galois_shape_mismatch() {
        let l = two();
        let c = c3();
        let f = MonotoneMap::new(&l, &c, vec![0, 2]).unwrap();
        let g = MonotoneMap::new(&l, &l, vec![0, 1]).unwrap();
        assert!(matches!(is_galois(&f, &g), Err(LatticeError::ShapeMismatch(_))));
    }

    #[test]
    fn monotone_map_rejects_antitone_table() {
        let c = c3();
        assert!(matches!(
            MonotoneMap::new(&c, &c, vec![2, 1, 0]),
            Err(LatticeError::NotMonotone { .. })
        ));
    }

    #[test]
    fn closure_fixed_points() {
        let c = c3();
        let id = ClosureOperator::new(&c, vec![0, 1, 2]).unwrap();
        assert_eq!(id.fixed_points(), vec![0, 1, 2]);
        let top = ClosureOperator::new(&c, vec![2, 2, 2]).unwrap();
        assert_eq!(top.fixed_points(), vec![2]);
        let join_h: Vec<usize> = (0..3).map(|a| c.join2(a, 1)).collect();
        let up = ClosureOperator::new(&c, join_h).unwrap();
        assert_eq!(up.fixed_points(), vec![1, 2]);
    }

    #[test]
    fn closure_rejects_bad_operators() {
        let c = c3();
        assert!(matches!(
            ClosureOperator::new(&c, vec![0, 0, 2]),
            Err(LatticeError::NotAClosure {
                reason: "not inflationary",
                ..
            })
        ));
        // monotone and inflationary but c(c(0)) = 2 != c(0) = 1
        assert!(matches!(
            ClosureOperator::new(&c, vec![1, 2, 2]),
            Err(LatticeError::NotAClosure {
                reason: "not idempotent",
                ..
            })
        ));
    }

    #[test]
    fn product_encoding_is_lexicographic() {
        let c = Arc::new(c3());
        let two = Arc::new(two());
        let p = ProductLattice::new(vec![c.clone(), two.clone()], false, 100).unwrap();
        assert_eq!(p.size(), 6);
        assert_eq!(p.decode(0), vec![0, 0]);
        assert_eq!(p.decode(1), vec![0, 1]);
        assert_eq!(p.decode(5), vec![2, 1]);
        for a in 0..6 {
            assert_eq!(p.encode(&p.decode(a)), a);
        }
        assert_eq!(p.label(3), "(h, 1)");
        assert!(p.to_finite().is_ok());
    }

    #[test]
    fn reversed_product_swaps_bounds() {
        let c = Arc::new(c3());
        let p = ProductLattice::new(vec![c.clone(), c.clone()], true, 100).unwrap();
        assert_eq!(p.decode(p.top()), vec![0, 0]);
        assert_eq!(p.decode(p.bottom()), vec![2, 2]);
        let a = p.encode(&[0, 2]);
        let b = p.encode(&[1, 1]);
        assert_eq!(p.decode(p.join2(a, b)), vec![0, 1]);
        assert!(p.to_finite().is_ok());
    }

    #[test]
    fn product_size_guard() {
        let c = Arc::new(c3());
        let err = ProductLattice::new(vec![c; 5], false, 100).unwrap_err();
        assert_eq!(err, LatticeError::TooLarge { size: 243, limit: 100 });
    }

    #[test]
    fn empty_product_is_one_point() {
        let p = ProductLattice::new(vec![], false, 1).unwrap();
        assert_eq!(p.size(), 1);
        assert_eq!(p.top(), p.bottom());
    }
}
