//! Concept lattices as plain data: serialization, comparison and DOT export.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::frame::Mode;

/// One concept: a value for every attribute and a value for every object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Concept {
    pub attributes: Vec<String>,
    pub objects: Vec<String>,
}

/// Concepts listed in canonical order of their fixed side, with the
/// concept order as a matrix: `order[i][j]` iff concept `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptLattice {
    pub mode: Mode,
    pub fibre: String,
    pub attributes: Vec<String>,
    pub objects: Vec<String>,
    pub concepts: Vec<Concept>,
    pub order: Vec<Vec<bool>>,
}

/// Outcome of comparing two concept lattices up to the listing order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Comparison {
    pub differences: Vec<String>,
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        self.differences.is_empty()
    }
}

impl ConceptLattice {
    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order[i][j]
    }

    /// Index of the least concept, if there is one.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.order[i][j]))
    }

    /// Index of the greatest concept, if there is one.
    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.order[j][i]))
    }

    /// Pairs `(i, j)` with `j` covering `i`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.order[i][j] {
                    continue;
                }
                let covered = (0..n).all(|k| k == i || k == j || !(self.order[i][k] && self.order[k][j]));
                if covered {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// Checks that the order matrix is a partial order with all binary joins
    /// and meets, and returns a description of the first failure.
    pub fn check_lattice(&self) -> Result<(), String> {
        let n = self.len();
        if self.order.len() != n || self.order.iter().any(|r| r.len() != n) {
            return Err("order matrix has the wrong shape".into());
        }
        for i in 0..n {
            if !self.order[i][i] {
                return Err(format!("order is not reflexive at {i}"));
            }
            for j in 0..n {
                if i != j && self.order[i][j] && self.order[j][i] {
                    return Err(format!("order is not antisymmetric at {i}, {j}"));
                }
                for k in 0..n {
                    if self.order[i][j] && self.order[j][k] && !self.order[i][k] {
                        return Err(format!("order is not transitive at {i}, {j}, {k}"));
                    }
                }
            }
        }
        let bound = |i: usize, j: usize, upper: bool| {
            let rel = |a: usize, b: usize| if upper { self.order[a][b] } else { self.order[b][a] };
            let bounds: Vec<usize> = (0..n).filter(|&k| rel(i, k) && rel(j, k)).collect();
            bounds.iter().copied().find(|&b| bounds.iter().all(|&c| rel(b, c)))
        };
        for i in 0..n {
            for j in i + 1..n {
                if bound(i, j, true).is_none() {
                    return Err(format!("concepts {i} and {j} have no join"));
                }
                if bound(i, j, false).is_none() {
                    return Err(format!("concepts {i} and {j} have no meet"));
                }
            }
        }
        Ok(())
    }

    /// Compares concept sets and orders, ignoring listing order.
    pub fn compare(&self, other: &ConceptLattice) -> Comparison {
        let mut differences = Vec::new();
        if self.mode != other.mode {
            differences.push(format!("mode {} vs {}", self.mode, other.mode));
        }
        if self.fibre != other.fibre {
            differences.push(format!("fibre `{}` vs `{}`", self.fibre, other.fibre));
        }
        if self.attributes != other.attributes || self.objects != other.objects {
            differences.push("attribute or object lists differ".into());
        }
        if self.len() != other.len() {
            differences.push(format!("{} concepts vs {}", self.len(), other.len()));
        }
        let index: HashMap<&Concept, usize> = other.concepts.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let own: HashMap<&Concept, usize> = self.concepts.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut sigma = Vec::with_capacity(self.len());
        for c in &self.concepts {
            match index.get(c) {
                Some(&j) => sigma.push(Some(j)),
                None => {
                    differences.push(format!("only in first: {}", label(c)));
                    sigma.push(None);
                }
            }
        }
        for c in &other.concepts {
            if !own.contains_key(c) {
                differences.push(format!("only in second: {}", label(c)));
            }
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                if let (Some(a), Some(b)) = (sigma[i], sigma[j]) {
                    if self.order[i][j] != other.order[a][b] {
                        differences.push(format!(
                            "order between {} and {} differs",
                            label(&self.concepts[i]),
                            label(&self.concepts[j])
                        ));
                    }
                }
            }
        }
        Comparison { differences }
    }

    /// Hasse diagram in Graphviz syntax, bottom concept at the bottom.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph concepts {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, c) in self.concepts.iter().enumerate() {
            let _ = writeln!(out, "  c{i} [label=\"{}\"];", escape(&label(c)));
        }
        for (i, j) in self.hasse_edges() {
            let _ = writeln!(out, "  c{i} -> c{j};");
        }
        out.push_str("}\n");
        out
    }
}

fn label(c: &Concept) -> String {
    format!("⟨{} | {}⟩", c.attributes.join(", "), c.objects.join(", "))
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn concept(a: &[&str], o: &[&str]) -> Concept {
        Concept {
            attributes: a.iter().map(|s| s.to_string()).collect(),
            objects: o.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn diamond() -> ConceptLattice {
        ConceptLattice {
            mode: Mode::Formal,
            fibre: "0".into(),
            attributes: vec!["a".into(), "b".into()],
            objects: vec!["o".into()],
            concepts: vec![
                concept(&["0", "0"], &["1"]),
                concept(&["0", "1"], &["0"]),
                concept(&["1", "0"], &["0"]),
                concept(&["1", "1"], &["0"]),
            ],
            order: vec![
                vec![true, true, true, true],
                vec![false, true, false, true],
                vec![false, false, true, true],
                vec![false, false, false, true],
            ],
        }
    }

    #[test]
    fn hasse_of_diamond() {
        let l = diamond();
        assert_eq!(l.hasse_edges(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(l.bottom(), Some(0));
        assert_eq!(l.top(), Some(3));
        l.check_lattice().unwrap();
    }

    #[test]
    fn compare_ignores_listing_order() {
        let a = diamond();
        let mut b = diamond();
        b.concepts.swap(1, 2);
        for row in b.order.iter_mut() {
            row.swap(1, 2);
        }
        b.order.swap(1, 2);
        assert!(a.compare(&b).is_equal());

        b.order[1][2] = true;
        assert!(!a.compare(&b).is_equal());
    }

    #[test]
    fn compare_reports_missing() {
        let a = diamond();
        let mut b = diamond();
        b.concepts[3] = concept(&["1", "1"], &["1"]);
        let cmp = a.compare(&b);
        assert_eq!(cmp.differences.len(), 2);
        assert!(cmp.differences[0].starts_with("only in first"));
    }

    #[test]
    fn json_round_trip() {
        let l = diamond();
        let text = serde_json::to_string(&l).unwrap();
        assert!(text.contains("\"mode\":\"formal\""));
        assert_eq!(serde_json::from_str::<ConceptLattice>(&text).unwrap(), l);
    }

    #[test]
    fn dot_output() {
        let dot = diamond().to_dot();
        assert!(dot.contains("rankdir=BT"));
        assert!(dot.contains("c0 [label=\"⟨0, 0 | 1⟩\"]"));
        assert!(dot.contains("c1 -> c3;"));
        assert_eq!(dot.matches("->").count(), 4);
    }

    #[test]
    fn non_lattice_detected() {
        let mut l = diamond();
        l.order[0][3] = false;
        assert!(l.check_lattice().is_err());
    }
}
