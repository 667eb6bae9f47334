use crate::error::Result;
use crate::mco::dominance::{compare, Dominance};
use crate::mco::instance::{Linearization, McoInstance};
use crate::scalar::Scalar;

/// Indices of the minimal points of `points` under the Pareto order, ascending.
///
/// Pairwise dominance, `O(N^2 d)`. Equal points do not dominate each other, so
/// duplicated minimal rows all appear.
pub fn pareto_front_of<T: Scalar, P: AsRef<[T]>>(points: &[P]) -> Vec<usize> {
    (0..points.len())
        .filter(|&x| {
            let fx = points[x].as_ref();
            !points
                .iter()
                .any(|p| compare(p.as_ref(), fx) == Dominance::Precedes)
        })
        .collect()
}

/// Pareto-optimal domain indices `P(Pi)`.
pub fn pareto_front<T: Scalar>(inst: &McoInstance<T>) -> Vec<usize> {
    let rows: Vec<&[T]> = inst.rows().collect();
    pareto_front_of(&rows)
}

/// Pareto-optimal indices that minimize at least one single objective.
pub fn trivial_solutions<T: Scalar>(inst: &McoInstance<T>) -> Vec<usize> {
    let minima = objective_minima(inst);
    pareto_front(inst)
        .into_iter()
        .filter(|&x| inst.row(x).iter().zip(&minima).any(|(v, m)| v == m))
        .collect()
}

pub(crate) fn objective_minima<T: Scalar>(inst: &McoInstance<T>) -> Vec<T> {
    let mut minima = inst.row(0).to_vec();
    for row in inst.rows() {
        for (m, &v) in minima.iter_mut().zip(row) {
            if v < *m {
                *m = v;
            }
        }
    }
    minima
}

/// `<f(x), w>` for every domain element.
pub fn scalarize<T: Scalar>(inst: &McoInstance<T>, w: &Linearization<T>) -> Result<Vec<T>> {
    w.check_dim(inst.d())?;
    Ok(inst.rows().map(|row| w.apply(row)).collect())
}

/// Every `x` with `values[x] <= min + tol`, plus the minimum itself.
pub(crate) fn argmin_within<T: Scalar>(values: &[T], tol: T) -> (T, Vec<usize>) {
    let min = values.iter().copied().fold(values[0], |a, b| a.min_of(b));
    let idx = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v - min <= tol)
        .map(|(x, _)| x)
        .collect();
    (min, idx)
}

/// True iff `f(x) = f(y)` componentwise (equal scalarizations for every `w`).
pub fn equivalent<T: Scalar>(inst: &McoInstance<T>, x: usize, y: usize) -> Result<bool> {
    inst.check_index(x)?;
    inst.check_index(y)?;
    Ok(inst.row(x) == inst.row(y))
}

/// Some `w` in `W_d` with `<f(x), w> = <f(y), w>`, if one exists.
pub fn weak_equivalence_witness<T: Scalar>(
    inst: &McoInstance<T>,
    x: usize,
    y: usize,
) -> Result<Option<Linearization<T>>> {
    inst.check_index(x)?;
    inst.check_index(y)?;
    Ok(equalizing_weights(inst.row(x), inst.row(y)))
}

/// Finds `w` in `W_d` with `<u - v, w> = 0`.
///
/// For `d = 2` this is the closed form `w_1 = b / (b - a)` with
/// `a = u_1 - v_1`, `b = u_2 - v_2`, accepted iff `w_1` lies in `(0, 1)`.
///
/// For larger `d` the feasible set `{w in simplex : <a, w> = 0}` is the convex
/// hull of the vertices `e_k` with `a_k = 0` and of the edge points
/// `(|a_q| e_p + a_p e_q) / (a_p + |a_q|)` for `a_p > 0 > a_q`. Edge points
/// have every coordinate below one, so a witness exists iff there is an edge
/// point or at least two zero coordinates; the centroid of the generators is
/// returned.
pub fn equalizing_weights<T: Scalar>(u: &[T], v: &[T]) -> Option<Linearization<T>> {
    let d = u.len();
    debug_assert_eq!(d, v.len());
    let a: Vec<T> = u.iter().zip(v).map(|(&p, &q)| p - q).collect();
    if a.iter().all(|c| c.is_zero()) {
        return Linearization::uniform(d).ok();
    }
    if d == 2 {
        let denom = a[1] - a[0];
        if denom.is_zero() {
            return None;
        }
        let w1 = a[1] / denom;
        if w1 > T::zero() && w1 < T::one() {
            return Linearization::pair(w1).ok();
        }
        return None;
    }

    let zeros: Vec<usize> = (0..d).filter(|&k| a[k].is_zero()).collect();
    let pos: Vec<usize> = (0..d).filter(|&k| a[k] > T::zero()).collect();
    let neg: Vec<usize> = (0..d).filter(|&k| a[k] < T::zero()).collect();
    let edges = pos.len() * neg.len();
    if edges == 0 && zeros.len() < 2 {
        return None;
    }

    let mut acc = vec![T::zero(); d];
    for &z in &zeros {
        acc[z] = acc[z] + T::one();
    }
    for &p in &pos {
        for &q in &neg {
            let span = a[p] - a[q];
            acc[p] = acc[p] + (-a[q]) / span;
            acc[q] = acc[q] + a[p] / span;
        }
    }
    let count = T::from_usize(zeros.len() + edges).expect("generator count fits scalar");
    let mut w: Vec<T> = acc.into_iter().map(|c| c / count).collect();
    // Floating-point rounding can leave the sum a hair off one; fold the
    // residue into the largest coordinate.
    let sum = w.iter().fold(T::zero(), |s, &c| s + c);
    let big = (0..d)
        .max_by(|&i, &j| w[i].partial_cmp(&w[j]).unwrap())
        .unwrap();
    w[big] = w[big] + (T::one() - sum);
    Linearization::new(w).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn inst(rows: &[[f64; 2]]) -> McoInstance<f64> {
        McoInstance::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn single_point_front() {
        assert_eq!(pareto_front_of(&[vec![3.0, 4.0]]), vec![0]);
    }

    #[test]
    fn identical_rows_both_in_front() {
        let i = inst(&[[1.0, 1.0], [1.0, 1.0]]);
        assert_eq!(pareto_front(&i), vec![0, 1]);
    }

    #[test]
    fn trivial_examples() {
        let i = inst(&[[0.0, 5.0], [5.0, 0.0], [1.0, 1.0], [6.0, 6.0]]);
        assert_eq!(trivial_solutions(&i), vec![0, 1]);
        let i = inst(&[[0.0, 0.0], [5.0, 1.0], [1.0, 3.0], [6.0, 6.0]]);
        assert_eq!(trivial_solutions(&i), vec![0]);
    }

    #[test]
    fn constant_rows_scalarize_to_constant() {
        let i = inst(&[[2.5, 2.5], [1.0, 3.0]]);
        for w1 in [0.1, 0.57, 0.99] {
            let s = scalarize(&i, &Linearization::pair(w1).unwrap()).unwrap();
            assert!((s[0] - 2.5).abs() < 1e-15);
        }
    }

    #[test]
    fn scalarize_rejects_wrong_dimension() {
        let i = inst(&[[2.5, 2.5], [1.0, 3.0]]);
        let w = Linearization::uniform(3).unwrap();
        assert!(scalarize(&i, &w).is_err());
    }

    #[test]
    fn equivalence() {
        let i = McoInstance::<f64>::from_rows(&[vec![1.0, 2.0, 3.0], vec![1.0, 3.0, 2.0]]).unwrap();
        assert!(!equivalent(&i, 0, 1).unwrap());
        assert!(equivalent(&i, 1, 1).unwrap());
        assert!(equivalent(&i, 0, 2).is_err());
    }

    #[test]
    fn three_objective_witness() {
        let i = McoInstance::<f64>::from_rows(&[vec![1.0, 2.0, 3.0], vec![1.0, 3.0, 2.0]]).unwrap();
        let w = weak_equivalence_witness(&i, 0, 1).unwrap().unwrap();
        let (a, b) = (w.apply(i.row(0)), w.apply(i.row(1)));
        assert!((a - b).abs() < 1e-12);

        let r = |k| Rational64::from_integer(k);
        let u = [r(1), r(2), r(3)];
        let v = [r(1), r(3), r(2)];
        let w = equalizing_weights(&u, &v).unwrap();
        assert_eq!(w.apply(&u), w.apply(&v));
    }

    #[test]
    fn equivalent_rows_get_uniform_witness() {
        let w = equalizing_weights(&[2.0, 2.0, 2.0], &[2.0, 2.0, 2.0]).unwrap();
        assert_eq!(w, Linearization::uniform(3).unwrap());
    }

    #[test]
    fn dominated_pair_has_no_witness() {
        assert!(equalizing_weights(&[0.0, 5.0], &[1.0, 6.0]).is_none());
        // only a single zero coordinate: the equalizer would be a unit vector
        assert!(equalizing_weights(&[0.0, 5.0, 1.0], &[0.0, 6.0, 2.0]).is_none());
        // two zero coordinates: (1/2, 1/2, 0) works
        let w = equalizing_weights(&[1.0, 1.0, 1.0], &[1.0, 1.0, 4.0]).unwrap();
        assert_eq!(w.weights(), &[0.5, 0.5, 0.0]);
    }

    #[test]
    fn dominated_pair_grid_sweep() {
        // Strict ordering over w_1 in (0,1), step 1e-4.
        let (u, v) = ([0.0, 5.0], [1.0, 6.0]);
        for k in 1..10_000 {
            let w1 = k as f64 * 1e-4;
            let su = w1 * u[0] + (1.0 - w1) * u[1];
            let sv = w1 * v[0] + (1.0 - w1) * v[1];
            assert!(su < sv);
        }
    }

    #[test]
    fn two_objective_closed_form() {
        let w = equalizing_weights(&[1.0, 3.0], &[3.0, 1.0]).unwrap();
        assert_eq!(w.weights(), &[0.5, 0.5]);
        let w = equalizing_weights::<f64>(&[10.47, 15.91], &[11.27, 14.869]).unwrap();
        let diff = w.apply(&[10.47, 15.91]) - w.apply(&[11.27, 14.869]);
        assert!(diff.abs() < 1e-12);
    }
}
