use serde::Serialize;

use crate::mco::instance::McoInstance;
use crate::scalar::Scalar;

/// Objectives are numbered from 1 in every witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WellFormedCheck {
    pub ok: bool,
    pub zero_counts: Vec<usize>,
    /// Domain indices where each objective is zero.
    pub zero_witnesses: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum NormalWitness {
    /// Normality presupposes well-formedness.
    NotWellFormed,
    /// Objectives `i` and `j` are both zero at `x`.
    #[serde(rename_all = "camelCase")]
    SharedZero { i: usize, j: usize, x: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NormalCheck {
    pub ok: bool,
    pub witnesses: Vec<NormalWitness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Collision {
    pub objective: usize,
    pub x: usize,
    pub y: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CollisionCheck {
    /// False when the instance carries no gap vector.
    pub evaluated: bool,
    pub ok: Option<bool>,
    pub witness: Option<Collision>,
    /// Weaker check over consecutive domain elements `(x, x + 1)` only.
    pub adjacent_ok: Option<bool>,
    pub adjacent_witness: Option<Collision>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationReport {
    pub well_formed: WellFormedCheck,
    pub normal: NormalCheck,
    pub collision_free: CollisionCheck,
    pub messages: Vec<String>,
}

impl ValidationReport {
    /// True when every evaluated check passed.
    pub fn passed(&self) -> bool {
        self.well_formed.ok && self.normal.ok && self.collision_free.ok != Some(false)
    }
}

/// Checks well-formedness, normality and (if `lambda` is set) collision-freeness.
pub fn validate<T: Scalar>(inst: &McoInstance<T>) -> ValidationReport {
    let d = inst.d();
    let mut messages = Vec::new();

    let mut zero_witnesses = vec![Vec::new(); d];
    for (x, row) in inst.rows().enumerate() {
        for (i, v) in row.iter().enumerate() {
            if v.is_zero() {
                zero_witnesses[i].push(x);
            }
        }
    }
    let zero_counts: Vec<usize> = zero_witnesses.iter().map(Vec::len).collect();
    let well_formed_ok = zero_counts.iter().all(|&c| c == 1);
    for (i, zs) in zero_witnesses.iter().enumerate() {
        match zs.len() {
            1 => {}
            0 => messages.push(format!("f{} has no zero", i + 1)),
            _ => messages.push(format!(
                "f{} is zero at {} points: {:?}",
                i + 1,
                zs.len(),
                zs
            )),
        }
    }

    let mut normal_witnesses = Vec::new();
    if !well_formed_ok {
        normal_witnesses.push(NormalWitness::NotWellFormed);
    }
    for i in 0..d {
        for j in i + 1..d {
            for &x in &zero_witnesses[i] {
                if zero_witnesses[j].contains(&x) {
                    normal_witnesses.push(NormalWitness::SharedZero {
                        i: i + 1,
                        j: j + 1,
                        x,
                    });
                    messages.push(format!("f{} and f{} are both zero at {x}", i + 1, j + 1));
                }
            }
        }
    }

    let collision_free = match inst.lambda() {
        None => {
            messages.push("collision-freeness not evaluated: no gap vector".into());
            CollisionCheck {
                evaluated: false,
                ok: None,
                witness: None,
                adjacent_ok: None,
                adjacent_witness: None,
            }
        }
        Some(lambda) => {
            let witness = first_collision(inst, lambda);
            if let Some(c) = witness {
                messages.push(format!(
                    "|f{}({}) - f{}({})| <= lambda_{} = {}",
                    c.objective,
                    c.x,
                    c.objective,
                    c.y,
                    c.objective,
                    lambda[c.objective - 1]
                ));
            }
            let adjacent_witness = first_adjacent_collision(inst, lambda);
            CollisionCheck {
                evaluated: true,
                ok: Some(witness.is_none()),
                witness,
                adjacent_ok: Some(adjacent_witness.is_none()),
                adjacent_witness,
            }
        }
    };

    ValidationReport {
        well_formed: WellFormedCheck {
            ok: well_formed_ok,
            zero_counts,
            zero_witnesses,
        },
        normal: NormalCheck {
            ok: normal_witnesses.is_empty(),
            witnesses: normal_witnesses,
        },
        collision_free,
        messages,
    }
}

/// Smallest `(objective, x, y)` with `x < y` and `|f_i(x) - f_i(y)| <= lambda_i`.
fn first_collision<T: Scalar>(inst: &McoInstance<T>, lambda: &[T]) -> Option<Collision> {
    for (i, &li) in lambda.iter().enumerate() {
        let mut column: Vec<T> = inst.rows().map(|r| r[i]).collect();
        column.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // The closest pair in a column is adjacent after sorting.
        if column.windows(2).all(|p| p[1] - p[0] > li) {
            continue;
        }
        for x in 0..inst.len() {
            let fx = inst.row(x)[i];
            for y in x + 1..inst.len() {
                if (fx - inst.row(y)[i]).abs() <= li {
                    return Some(Collision {
                        objective: i + 1,
                        x,
                        y,
                    });
                }
            }
        }
    }
    None
}

fn first_adjacent_collision<T: Scalar>(inst: &McoInstance<T>, lambda: &[T]) -> Option<Collision> {
    for (i, &li) in lambda.iter().enumerate() {
        for x in 0..inst.len().saturating_sub(1) {
            if (inst.row(x)[i] - inst.row(x + 1)[i]).abs() <= li {
                return Some(Collision {
                    objective: i + 1,
                    x,
                    y: x + 1,
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(rows: &[[f64; 2]]) -> McoInstance<f64> {
        McoInstance::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn double_zero_is_not_well_formed() {
        let r = validate(&inst(&[[0.0, 3.0], [0.0, 5.0], [2.0, 0.0], [4.0, 1.0]]));
        assert!(!r.well_formed.ok);
        assert_eq!(r.well_formed.zero_witnesses[0], vec![0, 1]);
        assert!(!r.normal.ok);
        assert!(!r.collision_free.evaluated);
        assert_eq!(r.collision_free.ok, None);
    }

    #[test]
    fn shared_zero_is_not_normal() {
        let r = validate(&inst(&[[0.0, 0.0], [1.0, 5.0]]));
        assert!(r.well_formed.ok);
        assert!(!r.normal.ok);
        assert_eq!(
            r.normal.witnesses,
            vec![NormalWitness::SharedZero { i: 1, j: 2, x: 0 }]
        );
    }

    #[test]
    fn collision_witness() {
        let i = inst(&[[0.0, 1.0], [0.1, 2.0]])
            .with_lambda(vec![0.2, 0.2])
            .unwrap();
        let r = validate(&i);
        assert_eq!(r.collision_free.ok, Some(false));
        assert_eq!(
            r.collision_free.witness,
            Some(Collision {
                objective: 1,
                x: 0,
                y: 1
            })
        );
        assert!(!r.passed());
    }

    #[test]
    fn false_flags_carry_witnesses() {
        let r = validate(&inst(&[[1.0, 3.0], [2.0, 5.0]]));
        assert!(!r.well_formed.ok && r.well_formed.zero_counts.contains(&0));
        assert!(!r.normal.ok && !r.normal.witnesses.is_empty());
    }
}
