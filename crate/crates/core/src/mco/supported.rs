//! Supported / non-supported split of the Pareto set.

use serde::Serialize;

use crate::mco::instance::McoInstance;
use crate::mco::pareto::{argmin_within, pareto_front, trivial_solutions};
use crate::scalar::Scalar;

/// How the supported set was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum SupportMethod {
    /// Lower-left convex hull in objective space; exact.
    Hull,
    /// Weight-grid sweep with step `1/divisions`; may miss supported points
    /// whose optimality region falls between grid weights.
    Grid { divisions: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SolutionClassification {
    pub pareto: Vec<usize>,
    pub trivial: Vec<usize>,
    pub supported: Vec<usize>,
    pub nonsupported: Vec<usize>,
    pub method: SupportMethod,
}

/// Default weight-grid resolution for `d >= 3`.
pub const DEFAULT_GRID_DIVISIONS: usize = 48;

/// Classifies the Pareto set. Exact for `d = 2`; for more objectives a weight
/// grid with [`DEFAULT_GRID_DIVISIONS`] is swept.
pub fn supported_solutions<T: Scalar>(inst: &McoInstance<T>) -> SolutionClassification {
    if inst.d() == 2 {
        classify(inst, SupportMethod::Hull)
    } else {
        classify(
            inst,
            SupportMethod::Grid {
                divisions: DEFAULT_GRID_DIVISIONS,
            },
        )
    }
}

pub fn classify<T: Scalar>(inst: &McoInstance<T>, method: SupportMethod) -> SolutionClassification {
    let pareto = pareto_front(inst);
    let trivial = trivial_solutions(inst);
    let supported = match method {
        SupportMethod::Hull => {
            assert_eq!(inst.d(), 2, "hull classification needs two objectives");
            hull_supported(inst, &pareto)
        }
        SupportMethod::Grid { divisions } => grid_supported(inst, &pareto, divisions, T::lit(1e-9)),
    };
    let nonsupported = pareto
        .iter()
        .copied()
        .filter(|x| supported.binary_search(x).is_err())
        .collect();
    SolutionClassification {
        pareto,
        trivial,
        supported,
        nonsupported,
        method,
    }
}

/// `(b - a) x (c - a)`; negative when `a -> b -> c` turns clockwise.
fn cross<T: Scalar>(a: &[T], b: &[T], c: &[T]) -> T {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn hull_supported<T: Scalar>(inst: &McoInstance<T>, pareto: &[usize]) -> Vec<usize> {
    // Distinct Pareto points sorted by f1; f2 is then strictly decreasing.
    let mut pts: Vec<&[T]> = pareto.iter().map(|&x| inst.row(x)).collect();
    pts.sort_by(|a, b| a[0].partial_cmp(&b[0]).unwrap());
    pts.dedup();

    // Lower hull by monotone chain, dropping collinear middle points.
    let mut hull: Vec<&[T]> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= T::zero() {
            hull.pop();
        }
        hull.push(p);
    }

    let on_hull = |p: &[T]| -> bool {
        if hull.contains(&p) {
            return true;
        }
        hull.windows(2)
            .any(|e| e[0][0] < p[0] && p[0] < e[1][0] && cross(e[0], e[1], p).is_zero())
    };
    pareto
        .iter()
        .copied()
        .filter(|&x| on_hull(inst.row(x)))
        .collect()
}

/// All weight vectors `c / divisions` with integer `c_i < divisions`.
pub fn simplex_grid(d: usize, divisions: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, left: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if d == 1 {
            if left < cap {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for c in 0..=left.min(cap - 1) {
            cur.push(c);
            rec(d - 1, left - c, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(
        d,
        divisions,
        divisions,
        &mut Vec::with_capacity(d),
        &mut out,
    );
    out
}

fn grid_supported<T: Scalar>(
    inst: &McoInstance<T>,
    pareto: &[usize],
    divisions: usize,
    tol: T,
) -> Vec<usize> {
    let div = T::from_usize(divisions).expect("grid size fits scalar");
    let mut hit = vec![false; inst.len()];
    let mut values = vec![T::zero(); inst.len()];
    for counts in simplex_grid(inst.d(), divisions) {
        let w: Vec<T> = counts
            .iter()
            .map(|&c| T::from_usize(c).unwrap() / div)
            .collect();
        for (v, row) in values.iter_mut().zip(inst.rows()) {
            *v = row
                .iter()
                .zip(&w)
                .fold(T::zero(), |a, (&f, &wi)| a + f * wi);
        }
        let (min, _) = argmin_within(&values, T::zero());
        let slack = tol * T::one().max_of(min.abs());
        for (x, &v) in values.iter().enumerate() {
            if v - min <= slack {
                hit[x] = true;
            }
        }
    }
    // Trivial points minimize at a vertex of the simplex, which the grid
    // leaves out; the hull counts them, so the grid does too.
    for x in trivial_solutions(inst) {
        hit[x] = true;
    }
    pareto.iter().copied().filter(|&x| hit[x]).collect()
}
