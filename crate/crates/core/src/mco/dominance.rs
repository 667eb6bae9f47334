use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Outcome of comparing two objective vectors under the Pareto order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Dominance {
    Equal,
    /// `u` is componentwise `<=` `v` and differs somewhere.
    Precedes,
    Preceded,
    Incomparable,
}

impl Dominance {
    pub fn reversed(self) -> Self {
        match self {
            Dominance::Precedes => Dominance::Preceded,
            Dominance::Preceded => Dominance::Precedes,
            other => other,
        }
    }
}

/// Compares `u` and `v` with exact equality; no epsilon, so the relation stays
/// transitive.
pub fn dominance<T: Scalar>(u: &[T], v: &[T]) -> Result<Dominance> {
    if u.len() != v.len() {
        return Err(Error::Dimension {
            expected: u.len(),
            got: v.len(),
        });
    }
    Ok(compare(u, v))
}

pub(crate) fn compare<T: Scalar>(u: &[T], v: &[T]) -> Dominance {
    let mut some_less = false;
    let mut some_greater = false;
    for (a, b) in u.iter().zip(v) {
        if a < b {
            some_less = true;
        } else if a > b {
            some_greater = true;
        }
    }
    match (some_less, some_greater) {
        (false, false) => Dominance::Equal,
        (true, false) => Dominance::Precedes,
        (false, true) => Dominance::Preceded,
        (true, true) => Dominance::Incomparable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn published_pairs() {
        assert_eq!(
            dominance(&[0.0, 46.139], &[0.401, 48.42]).unwrap(),
            Dominance::Precedes
        );
        assert_eq!(
            dominance(&[1.0, 2.0], &[1.0, 2.0]).unwrap(),
            Dominance::Equal
        );
        assert_eq!(
            dominance(&[10.47, 15.91], &[11.27, 14.869]).unwrap(),
            Dominance::Incomparable
        );
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(
            dominance(&[1.0], &[1.0, 2.0]),
            Err(Error::Dimension { .. })
        ));
    }

    fn vec3() -> impl Strategy<Value = Vec<f64>> {
        // small integer grid so Equal/Precedes actually occur
        prop::collection::vec((0u8..4).prop_map(f64::from), 3)
    }

    proptest! {
        #[test]
        fn antisymmetric(u in vec3(), v in vec3()) {
            prop_assert_eq!(compare(&u, &v), compare(&v, &u).reversed());
            prop_assert_eq!(compare(&u, &v) == Dominance::Equal, u == v);
        }

        #[test]
        fn reflexive_as_equal(u in vec3()) {
            prop_assert_eq!(compare(&u, &u), Dominance::Equal);
        }

        #[test]
        fn transitive(u in vec3(), v in vec3(), w in vec3()) {
            let weak = |a: &[f64], b: &[f64]| matches!(compare(a, b), Dominance::Precedes | Dominance::Equal);
            if weak(&u, &v) && weak(&v, &w) {
                prop_assert!(weak(&u, &w));
                if compare(&u, &v) == Dominance::Precedes || compare(&v, &w) == Dominance::Precedes {
                    prop_assert_eq!(compare(&u, &w), Dominance::Precedes);
                }
            }
        }
    }
}
