//! Breaking ties in the ground state of `H_w` by moving `w` inside a small
//! L1 ball.
//!
//! If the minimum of `<f(x), w>` is shared by several non-equivalent Pareto
//! points, some `w'` with `||w - w'||_1 <= <lambda, w> / (m d)` makes exactly
//! one of them the unique minimizer, where `m` is the largest table entry.
//! The search below is deterministic: for each ordered coordinate pair
//! `(i, j)` it tries `w' = w + eps (e_i - e_j)` for `eps = r/4, r/8, ...` and
//! accepts the first candidate whose minimum is unique and belongs to the
//! originally tied set.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mco::{scalarize, Linearization, McoInstance};
use crate::scalar::Scalar;
use crate::spectral::diagonal_degeneracy;

/// Step sizes tried per coordinate pair.
pub const MAX_HALVINGS: u32 = 40;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ResolutionCertificate<T> {
    pub original_w: Linearization<T>,
    pub resolved_w: Linearization<T>,
    pub l1_distance: T,
    /// `<lambda, w> / (m d)`.
    pub radius: T,
    pub chosen_index: usize,
    pub tied_indices: Vec<usize>,
    pub m_value: T,
    pub candidates_tried: usize,
}

impl<T: Scalar> ResolutionCertificate<T> {
    pub fn is_identity(&self) -> bool {
        self.original_w == self.resolved_w
    }
}

/// `<lambda, w> / (m d)` with `m = max_{x,i} f_i(x)`.
pub fn l1_radius<T: Scalar>(inst: &McoInstance<T>, w: &Linearization<T>) -> Result<T> {
    let lambda = inst.lambda().ok_or(Error::MissingLambda)?;
    w.check_dim(inst.d())?;
    let m = inst.max_value();
    if m.is_zero() {
        return Err(Error::InvalidInstance(
            "all objective values are zero".into(),
        ));
    }
    let d = T::from_usize(inst.d()).unwrap();
    Ok(w.apply(lambda) / (m * d))
}

/// Finds `w'` whose scalarization has a unique minimizer from the tie at `w`.
pub fn resolve<T: Scalar>(
    inst: &McoInstance<T>,
    w: &Linearization<T>,
    tol: T,
) -> Result<ResolutionCertificate<T>> {
    let radius = l1_radius(inst, w)?;
    let m_value = inst.max_value();
    let values = scalarize(inst, w)?;
    let deg = diagonal_degeneracy(&values, tol);
    let tied = deg.witness_indices;

    if tied.len() == 1 {
        return Ok(ResolutionCertificate {
            original_w: w.clone(),
            resolved_w: w.clone(),
            l1_distance: T::zero(),
            radius,
            chosen_index: tied[0],
            tied_indices: tied,
            m_value,
            candidates_tried: 0,
        });
    }

    for (k, &x) in tied.iter().enumerate() {
        for &y in &tied[k + 1..] {
            if inst.row(x) == inst.row(y) {
                return Err(Error::Unresolvable(x, y));
            }
        }
    }

    let d = inst.d();
    let two = T::one() + T::one();
    let mut tried = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            // |eps| on two coordinates: start at r/4 so rounding cannot push
            // the candidate onto the boundary of the ball
            let mut eps = radius / two;
            for _ in 0..MAX_HALVINGS {
                eps = eps / two;
                let mut cand = w.weights().to_vec();
                cand[i] = cand[i] + eps;
                cand[j] = cand[j] - eps;
                let Ok(cand_w) = Linearization::new(cand.clone()) else {
                    tried.push(cand.iter().map(|v| v.as_f64()).collect());
                    continue;
                };
                tried.push(cand.iter().map(|v| v.as_f64()).collect());
                let vals = scalarize(inst, &cand_w)?;
                let report = diagonal_degeneracy(&vals, tol);
                if report.multiplicity == 1 && tied.contains(&report.witness_indices[0]) {
                    return Ok(ResolutionCertificate {
                        l1_distance: w.l1_distance(&cand_w),
                        original_w: w.clone(),
                        resolved_w: cand_w,
                        radius,
                        chosen_index: report.witness_indices[0],
                        tied_indices: tied,
                        m_value,
                        candidates_tried: tried.len(),
                    });
                }
            }
        }
    }
    Err(Error::ResolutionFailed { tried })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn tie_instance() -> McoInstance<f64> {
        // a = (1, 3), b = (3, 1) tie at w = (1/2, 1/2); the others sit above.
        McoInstance::from_rows(&[
            vec![1.0, 3.0],
            vec![3.0, 1.0],
            vec![0.0, 6.0],
            vec![6.0, 0.0],
        ])
        .unwrap()
        .with_lambda(vec![0.5, 0.5])
        .unwrap()
    }

    #[test]
    fn radius_formula() {
        let inst = McoInstance::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])
            .unwrap()
            .with_lambda(vec![1.0, 1.0])
            .unwrap();
        let w = Linearization::pair(0.5).unwrap();
        assert_eq!(l1_radius(&inst, &w).unwrap(), 0.5);
        assert!(matches!(
            l1_radius(&inst.without_lambda(), &w),
            Err(Error::MissingLambda)
        ));
    }

    #[test]
    fn two_way_tie_is_broken_toward_first_coordinate() {
        let inst = tie_instance();
        let w = Linearization::pair(0.5).unwrap();
        let cert = resolve(&inst, &w, 1e-9).unwrap();
        assert_eq!(cert.tied_indices, vec![0, 1]);
        // radius = (0.25 + 0.25) / (6 * 2)
        assert!((cert.radius - 0.5 / 12.0).abs() < 1e-15);
        // w1 grows, so the point with the smaller f1 wins
        assert_eq!(cert.chosen_index, 0);
        assert!(cert.l1_distance <= cert.radius);
        assert!((cert.resolved_w.weights()[0] - (0.5 + cert.radius / 4.0)).abs() < 1e-15);
    }

    #[test]
    fn exact_rational_resolution() {
        let r = |a: i64| Rational64::from_integer(a);
        let inst = McoInstance::from_rows(&[
            vec![r(1), r(3)],
            vec![r(3), r(1)],
            vec![r(0), r(6)],
            vec![r(6), r(0)],
        ])
        .unwrap()
        .with_lambda(vec![Rational64::new(1, 2); 2])
        .unwrap();
        let w = Linearization::pair(Rational64::new(1, 2)).unwrap();
        let cert = resolve(&inst, &w, r(0)).unwrap();
        assert_eq!(cert.radius, Rational64::new(1, 24));
        assert_eq!(
            cert.resolved_w.weights()[0],
            Rational64::new(1, 2) + Rational64::new(1, 96)
        );
        assert_eq!(cert.chosen_index, 0);
    }

    #[test]
    fn unique_minimum_is_identity() {
        let inst = tie_instance();
        let w = Linearization::pair(0.3).unwrap();
        let cert = resolve(&inst, &w, 1e-9).unwrap();
        assert!(cert.is_identity());
        assert_eq!(cert.l1_distance, 0.0);
    }

    #[test]
    fn equivalent_rows_are_unresolvable() {
        let inst = McoInstance::from_rows(&[
            vec![1.0, 1.0],
            vec![1.0, 1.0],
            vec![0.0, 6.0],
            vec![6.0, 0.0],
        ])
        .unwrap()
        .with_lambda(vec![0.1, 0.1])
        .unwrap();
        let w = Linearization::pair(0.5).unwrap();
        assert_eq!(resolve(&inst, &w, 1e-9), Err(Error::Unresolvable(0, 1)));
    }
}
