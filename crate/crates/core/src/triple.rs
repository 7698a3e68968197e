//! Adjoint triples `(&, <-, ->)` over three finite lattices.
//!
//! Only the conjunction is supplied. Both residuals are derived from it by
//! exhaustive maximization once join preservation has been checked:
//!
//! ```text
//! x & y <= z  <=>  x <= z <- y  <=>  y <= z -> x
//! ```
//!
//! The three lattices are roles (`left`, `right`, `value`); frames decide which
//! of `L1`, `L2`, `P` plays which role.

use std::fmt;
use std::sync::Arc;

use crate::lattice::{FiniteLattice, Lattice, LatticeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Argument {
    Left,
    Right,
}

impl fmt::Display for Argument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Argument::Left => f.write_str("left"),
            Argument::Right => f.write_str("right"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TripleError {
    #[error("conjunction table must be {rows}x{cols}: {detail}")]
    Shape { rows: usize, cols: usize, detail: String },
    #[error("conjunction does not preserve joins in the {position} argument: {witness}")]
    NotJoinPreserving { position: Argument, witness: String },
    #[error("residuation fails at x={x}, y={y}, z={z}")]
    Residuation { x: String, y: String, z: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct AdjointTriple {
    left: Arc<FiniteLattice>,
    right: Arc<FiniteLattice>,
    value: Arc<FiniteLattice>,
    conj: Vec<usize>,
    // (z, y) -> greatest x with x & y <= z
    lda: Vec<usize>,
    // (z, x) -> greatest y with x & y <= z
    lua: Vec<usize>,
}

impl fmt::Debug for AdjointTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<&str>> = (0..self.left.size())
            .map(|x| {
                (0..self.right.size())
                    .map(|y| self.value.name(self.conj(x, y)))
                    .collect()
            })
            .collect();
        f.debug_struct("AdjointTriple").field("conjunction", &rows).finish()
    }
}

impl AdjointTriple {
    pub fn from_fn(
        left: Arc<FiniteLattice>,
        right: Arc<FiniteLattice>,
        value: Arc<FiniteLattice>,
        conj: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, TripleError> {
        let (nl, nr) = (left.size(), right.size());
        let mut table = Vec::with_capacity(nl * nr);
        for x in 0..nl {
            for y in 0..nr {
                let z = conj(x, y);
                if z >= value.size() {
                    return Err(TripleError::Shape {
                        rows: nl,
                        cols: nr,
                        detail: format!("entry ({x}, {y}) = {z} is outside the value lattice"),
                    });
                }
                table.push(z);
            }
        }
        Self::validate(left, right, value, table)
    }

    /// Builds a triple from a table of value-lattice element names, rows
    /// indexed by `left`, columns by `right`.
    pub fn from_names<S: AsRef<str>>(
        left: Arc<FiniteLattice>,
        right: Arc<FiniteLattice>,
        value: Arc<FiniteLattice>,
        rows: &[Vec<S>],
    ) -> Result<Self, TripleError> {
        let (nl, nr) = (left.size(), right.size());
        if rows.len() != nl {
            return Err(TripleError::Shape {
                rows: nl,
                cols: nr,
                detail: format!("found {} rows", rows.len()),
            });
        }
        let mut table = Vec::with_capacity(nl * nr);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != nr {
                return Err(TripleError::Shape {
                    rows: nl,
                    cols: nr,
                    detail: format!("row {i} has {} entries", row.len()),
                });
            }
            for name in row {
                let name = name.as_ref();
                table.push(
                    value
                        .index_of(name)
                        .ok_or_else(|| LatticeError::UnknownElement(name.to_string()))?,
                );
            }
        }
        Self::validate(left, right, value, table)
    }

    /// Checks that `table` preserves binary joins and the empty join in each
    /// argument, then derives both residuals.
    pub fn validate(
        left: Arc<FiniteLattice>,
        right: Arc<FiniteLattice>,
        value: Arc<FiniteLattice>,
        table: Vec<usize>,
    ) -> Result<Self, TripleError> {
        let (nl, nr) = (left.size(), right.size());
        if table.len() != nl * nr {
            return Err(TripleError::Shape {
                rows: nl,
                cols: nr,
                detail: format!("found {} entries", table.len()),
            });
        }
        let at = |x: usize, y: usize| table[x * nr + y];

        for y in 0..nr {
            if at(left.bottom(), y) != value.bottom() {
                return Err(TripleError::NotJoinPreserving {
                    position: Argument::Left,
                    witness: format!(
                        "{} & {} = {}, expected bottom",
                        left.name(left.bottom()),
                        right.name(y),
                        value.name(at(left.bottom(), y))
                    ),
                });
            }
            for x1 in 0..nl {
                for x2 in x1 + 1..nl {
                    let lhs = at(left.join2(x1, x2), y);
                    let rhs = value.join2(at(x1, y), at(x2, y));
                    if lhs != rhs {
                        return Err(TripleError::NotJoinPreserving {
                            position: Argument::Left,
                            witness: format!(
                                "({} v {}) & {} = {} but joins of parts give {}",
                                left.name(x1),
                                left.name(x2),
                                right.name(y),
                                value.name(lhs),
                                value.name(rhs)
                            ),
                        });
                    }
                }
            }
        }
        for x in 0..nl {
            if at(x, right.bottom()) != value.bottom() {
                return Err(TripleError::NotJoinPreserving {
                    position: Argument::Right,
                    witness: format!(
                        "{} & {} = {}, expected bottom",
                        left.name(x),
                        right.name(right.bottom()),
                        value.name(at(x, right.bottom()))
                    ),
                });
            }
            for y1 in 0..nr {
                for y2 in y1 + 1..nr {
                    let lhs = at(x, right.join2(y1, y2));
                    let rhs = value.join2(at(x, y1), at(x, y2));
                    if lhs != rhs {
                        return Err(TripleError::NotJoinPreserving {
                            position: Argument::Right,
                            witness: format!(
                                "{} & ({} v {}) = {} but joins of parts give {}",
                                left.name(x),
                                right.name(y1),
                                right.name(y2),
                                value.name(lhs),
                                value.name(rhs)
                            ),
                        });
                    }
                }
            }
        }

        let nv = value.size();
        let mut lda = Vec::with_capacity(nv * nr);
        for z in 0..nv {
            for y in 0..nr {
                let below: Vec<usize> = (0..nl).filter(|&x| value.leq(at(x, y), z)).collect();
                lda.push(left.join(&below));
            }
        }
        let mut lua = Vec::with_capacity(nv * nl);
        for z in 0..nv {
            for x in 0..nl {
                let below: Vec<usize> = (0..nr).filter(|&y| value.leq(at(x, y), z)).collect();
                lua.push(right.join(&below));
            }
        }

        Ok(Self {
            left,
            right,
            value,
            conj: table,
            lda,
            lua,
        })
    }

    pub fn left(&self) -> &Arc<FiniteLattice> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FiniteLattice> {
        &self.right
    }

    pub fn value(&self) -> &Arc<FiniteLattice> {
        &self.value
    }

    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.conj[x * self.right.size() + y]
    }

    /// Greatest `x` with `x & y <= z`.
    pub fn residual_lda(&self, z: usize, y: usize) -> usize {
        self.lda[z * self.right.size() + y]
    }

    /// Greatest `y` with `x & y <= z`.
    pub fn residual_lua(&self, z: usize, x: usize) -> usize {
        self.lua[z * self.left.size() + x]
    }

    /// Conjunction as rows of value-element names.
    pub fn table_names(&self) -> Vec<Vec<String>> {
        (0..self.left.size())
            .map(|x| {
                (0..self.right.size())
                    .map(|y| self.value.name(self.conj(x, y)).to_string())
                    .collect()
            })
            .collect()
    }

    /// Exhaustive check of the three-way residuation equivalence.
    pub fn verify_residuation(&self) -> Result<(), TripleError> {
        for x in 0..self.left.size() {
            for y in 0..self.right.size() {
                for z in 0..self.value.size() {
                    let a = self.value.leq(self.conj(x, y), z);
                    let b = self.left.leq(x, self.residual_lda(z, y));
                    let c = self.right.leq(y, self.residual_lua(z, x));
                    if a != b || b != c {
                        return Err(TripleError::Residuation {
                            x: self.left.name(x).to_string(),
                            y: self.right.name(y).to_string(),
                            z: self.value.name(z).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}
