//! Direct computation of concept lattices from the triples alone.
//!
//! Nothing here touches quantaloids, Q-relations or product lattices: each
//! candidate vector is enumerated, both derivation operators are evaluated
//! with the residuals of the triple of each object, and closed vectors are
//! kept. It exists to cross-check the engine.

use crate::concept::{Concept, ConceptLattice};
use crate::engine::fibre_name;
use crate::frame::{Context, Mode, MultiAdjointFrame};
use crate::lattice::{FiniteLattice, Lattice};
use crate::Error;

/// Default bound on the number of candidate vectors.
pub const ORACLE_LIMIT: usize = 1 << 20;

/// All vectors of length `len` over `0..base`, first coordinate slowest.
fn odometer(base: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = Some(vec![0; len]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        let mut k = len;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            succ[k] += 1;
            if succ[k] < base {
                next = Some(succ);
                break;
            }
            succ[k] = 0;
        }
        Some(current)
    })
}

fn meet_all(l: &FiniteLattice, it: impl Iterator<Item = usize>) -> usize {
    it.fold(l.top(), |a, b| l.meet2(a, b))
}

fn join_all(l: &FiniteLattice, it: impl Iterator<Item = usize>) -> usize {
    it.fold(l.bottom(), |a, b| l.join2(a, b))
}

fn names(l: &FiniteLattice, v: &[usize]) -> Vec<String> {
    v.iter().map(|&a| l.name(a).to_string()).collect()
}

/// The concept lattice of `frame.mode()`, computed by enumeration.
pub fn oracle_direct(frame: &MultiAdjointFrame, context: &Context, limit: usize) -> Result<ConceptLattice, Error> {
    context.check_types(frame.len())?;
    let (nx, ny) = (context.attributes().len(), context.objects().len());
    let (l1, l2) = (frame.l1().as_ref(), frame.l2().as_ref());
    let t = |y: usize| &frame.triples()[context.type_of(y) - 1];
    let phi = |x: usize, y: usize| context.phi(x, y);

    let (carrier, len) = match frame.mode() {
        Mode::Formal => (l1, nx),
        Mode::PropertyOriented | Mode::ObjectOriented => (l2, ny),
    };
    let size = (carrier.size() as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if size > limit as u128 {
        return Err(Error::OracleTooLarge { size, limit });
    }

    // (fixed vector, partner vector)
    let mut found: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    match frame.mode() {
        Mode::Formal => {
            for mu in odometer(l1.size(), nx) {
                let up: Vec<usize> = (0..ny)
                    .map(|y| meet_all(l2, (0..nx).map(|x| t(y).residual_lua(phi(x, y), mu[x]))))
                    .collect();
                let down: Vec<usize> = (0..nx)
                    .map(|x| meet_all(l1, (0..ny).map(|y| t(y).residual_lda(phi(x, y), up[y]))))
                    .collect();
                if down == mu {
                    found.push((mu, up));
                }
            }
        }
        Mode::PropertyOriented => {
            for lam in odometer(l2.size(), ny) {
                let star: Vec<usize> = (0..nx)
                    .map(|x| join_all(l1, (0..ny).map(|y| t(y).conj(phi(x, y), lam[y]))))
                    .collect();
                let back: Vec<usize> = (0..ny)
                    .map(|y| meet_all(l2, (0..nx).map(|x| t(y).residual_lua(star[x], phi(x, y)))))
                    .collect();
                if back == lam {
                    found.push((lam, star));
                }
            }
        }
        Mode::ObjectOriented => {
            for lam in odometer(l2.size(), ny) {
                let lower: Vec<usize> = (0..nx)
                    .map(|x| meet_all(l1, (0..ny).map(|y| t(y).residual_lda(lam[y], phi(x, y)))))
                    .collect();
                let back: Vec<usize> = (0..ny)
                    .map(|y| join_all(l2, (0..nx).map(|x| t(y).conj(lower[x], phi(x, y)))))
                    .collect();
                if back == lam {
                    found.push((lam, lower));
                }
            }
        }
    }

    let pointwise = |a: &[usize], b: &[usize]| a.iter().zip(b).all(|(&u, &v)| carrier.leq(u, v));
    let order = found
        .iter()
        .map(|(a, _)| {
            found
                .iter()
                .map(|(b, _)| match frame.mode() {
                    Mode::ObjectOriented => pointwise(b, a),
                    _ => pointwise(a, b),
                })
                .collect()
        })
        .collect();
    let concepts = found
        .iter()
        .map(|(fixed, partner)| match frame.mode() {
            Mode::Formal => Concept {
                attributes: names(l1, fixed),
                objects: names(l2, partner),
            },
            _ => Concept {
                attributes: names(l1, partner),
                objects: names(l2, fixed),
            },
        })
        .collect();
    Ok(ConceptLattice {
        mode: frame.mode(),
        fibre: fibre_name(frame.mode()).to_string(),
        attributes: context.attributes().to_vec(),
        objects: context.objects().to_vec(),
        concepts,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn odometer_order() {
        let all: Vec<Vec<usize>> = odometer(3, 2).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[3], vec![1, 0]);
        assert_eq!(all[8], vec![2, 2]);
        assert_eq!(odometer(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn crisp_formal_identity() {
        let two = Arc::new(FiniteLattice::chain(&["0", "1"]).unwrap());
        let frame =
            MultiAdjointFrame::from_fns(Mode::Formal, two.clone(), two.clone(), two, &[&|x, y| x.min(y)]).unwrap();
        let ctx = Context::new(
            vec!["a".into(), "b".into()],
            vec!["p".into(), "q".into()],
            vec![1, 1],
            vec![1, 0, 0, 1],
        )
        .unwrap();
        let l = oracle_direct(&frame, &ctx, ORACLE_LIMIT).unwrap();
        // the powerset of {a, b}
        assert_eq!(l.len(), 4);
        assert_eq!(l.concepts[0].attributes, vec!["0", "0"]);
        assert_eq!(l.concepts[0].objects, vec!["1", "1"]);
        assert_eq!(l.concepts[3].objects, vec!["0", "0"]);
        l.check_lattice().unwrap();
    }

    #[test]
    fn limit() {
        let two = Arc::new(FiniteLattice::chain(&["0", "1"]).unwrap());
        let frame =
            MultiAdjointFrame::from_fns(Mode::Formal, two.clone(), two.clone(), two, &[&|x, y| x.min(y)]).unwrap();
        let ctx = Context::new((0..5).map(|i| i.to_string()).collect(), vec![], vec![], vec![]).unwrap();
        assert!(matches!(
            oracle_direct(&frame, &ctx, 16),
            Err(Error::OracleTooLarge { size: 32, limit: 16 })
        ));
    }
}
