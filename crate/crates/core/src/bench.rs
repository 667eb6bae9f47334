//! The seven-qubit Two-Parabolas benchmark, a generator for synthetic
//! instances of the same shape, and a checker for its monotonicity conditions.

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::mco::{validate, McoInstance};

/// Table rows are numbered from 1; domain index = row - 1.
pub const BUILTIN_LABEL_OFFSET: usize = 1;
pub const BUILTIN_LAMBDA: [f64; 2] = [0.2, 0.4];
/// SHA-256 of the table as little-endian `u32` thousandths, row by row.
pub const BUILTIN_SHA256: &str = "a920c7e216bc6d006fdc1db9175d8b8f28d98b40557f44aba7901b53c73b830c";

/// `(f1, f2)` in thousandths, in table order.
pub static BUILTIN_TABLE: [[u32; 2]; 128] = [
    [36140, 214879],
    [34219, 208038],
    [32375, 201354],
    [30606, 194825],
    [28910, 188449],
    [27285, 182224],
    [25729, 176148],
    [24240, 170219],
    [22816, 164435],
    [21455, 158794],
    [20155, 153294],
    [18914, 147933],
    [17730, 142709],
    [16601, 137620],
    [15525, 132664],
    [14500, 127839],
    [13524, 123143],
    [12595, 118574],
    [11711, 114130],
    [10870, 109809],
    [10070, 105609],
    [9309, 101528],
    [8585, 97564],
    [7896, 93715],
    [7240, 89979],
    [6615, 86354],
    [6019, 82838],
    [5450, 79429],
    [4906, 76125],
    [4385, 72924],
    [3885, 69824],
    [3404, 66823],
    [2940, 63919],
    [2491, 61110],
    [2055, 58394],
    [1630, 55769],
    [1214, 53233],
    [805, 50784],
    [401, 48420],
    [0, 46139],
    [801, 43939],
    [1205, 41818],
    [1614, 39774],
    [2030, 37805],
    [2455, 35909],
    [2891, 34084],
    [3340, 32328],
    [3804, 30639],
    [4285, 29015],
    [4785, 27454],
    [5306, 25954],
    [5850, 24513],
    [6419, 23129],
    [7015, 21800],
    [7640, 20524],
    [8296, 19299],
    [8985, 18123],
    [9709, 16994],
    [10470, 15910],
    [11270, 14869],
    [12111, 13869],
    [12995, 12908],
    [13924, 11984],
    [14900, 11095],
    [15925, 10239],
    [17001, 9414],
    [18130, 8618],
    [19314, 7849],
    [20555, 7105],
    [21855, 6384],
    [23216, 5684],
    [24640, 5003],
    [26129, 4339],
    [27685, 3690],
    [29310, 3054],
    [31006, 2429],
    [32775, 1813],
    [34619, 1204],
    [36540, 600],
    [38540, 0],
    [40621, 1200],
    [42785, 1804],
    [45034, 2413],
    [47370, 3029],
    [49795, 3654],
    [52311, 4290],
    [54920, 4939],
    [57624, 5603],
    [60425, 6284],
    [63325, 6984],
    [66326, 7705],
    [69430, 8449],
    [72639, 9218],
    [75955, 10014],
    [79380, 10839],
    [82916, 11695],
    [86565, 12584],
    [90329, 13508],
    [94210, 14469],
    [98210, 15469],
    [102331, 16510],
    [106575, 17594],
    [110944, 18723],
    [115440, 19899],
    [120065, 21124],
    [124821, 22400],
    [129710, 23729],
    [134734, 25113],
    [139895, 26554],
    [145195, 28054],
    [150636, 29615],
    [156220, 31239],
    [161949, 32928],
    [167825, 34684],
    [173850, 36509],
    [180026, 38405],
    [186355, 40374],
    [192839, 42418],
    [199480, 44539],
    [206280, 46739],
    [213241, 49020],
    [220365, 51384],
    [227654, 53833],
    [235110, 56369],
    [242735, 58994],
    [250531, 61710],
    [258500, 64519],
    [266644, 67423],
];

pub fn builtin_checksum() -> String {
    let mut hasher = Sha256::new();
    for row in &BUILTIN_TABLE {
        for v in row {
            hasher.update(v.to_le_bytes());
        }
    }
    hex::encode(hasher.finalize())
}

/// The published instance: `n = 7`, `lambda = (0.2, 0.4)`.
pub fn builtin_instance() -> McoInstance<f64> {
    let values = BUILTIN_TABLE
        .iter()
        .flat_map(|r| r.iter().map(|&v| f64::from(v) / 1000.0))
        .collect();
    McoInstance::new(7, 2, values)
        .and_then(|i| i.with_lambda(BUILTIN_LAMBDA.to_vec()))
        .expect("embedded table is valid")
        .with_label_offset(BUILTIN_LABEL_OFFSET)
}

/// Same table with exact rational entries.
pub fn builtin_instance_exact() -> McoInstance<Rational64> {
    let values = BUILTIN_TABLE
        .iter()
        .flat_map(|r| r.iter().map(|&v| Rational64::new(i64::from(v), 1000)))
        .collect();
    McoInstance::new(7, 2, values)
        .and_then(|i| i.with_lambda(vec![Rational64::new(1, 5), Rational64::new(2, 5)]))
        .expect("embedded table is valid")
        .with_label_offset(BUILTIN_LABEL_OFFSET)
}

/// One arm of an objective grows like `slope * k + curvature * k^2` at
/// distance `k` from its zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ParabolaShape {
    pub left_slope: f64,
    pub left_curvature: f64,
    pub right_slope: f64,
    pub right_curvature: f64,
}

impl ParabolaShape {
    pub fn symmetric(slope: f64, curvature: f64) -> Self {
        Self {
            left_slope: slope,
            left_curvature: curvature,
            right_slope: slope,
            right_curvature: curvature,
        }
    }

    fn target(&self, k: usize, left: bool) -> f64 {
        let k = k as f64;
        if left {
            self.left_slope * k + self.left_curvature * k * k
        } else {
            self.right_slope * k + self.right_curvature * k * k
        }
    }

    fn check(&self) -> Result<()> {
        let ok = [self.left_slope, self.right_slope]
            .iter()
            .all(|s| s.is_finite() && *s > 0.0)
            && [self.left_curvature, self.right_curvature]
                .iter()
                .all(|c| c.is_finite() && *c >= 0.0);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "slopes must be positive and curvatures nonnegative: {self:?}"
            )))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TwoParabolasParams {
    pub n: u32,
    pub x0: usize,
    pub x0p: usize,
    pub f1: ParabolaShape,
    pub f2: ParabolaShape,
    pub lambda: [f64; 2],
    /// Extra spacing on top of `lambda` between neighbouring values.
    pub margin: f64,
    /// Upper bound of the uniform jitter added to each spacing.
    pub jitter: f64,
    /// Largest admissible objective value.
    pub value_cap: Option<f64>,
    pub seed: u64,
    pub max_retries: u32,
}

impl TwoParabolasParams {
    /// Roughly the shape of the published seven-qubit table.
    pub fn table_like(seed: u64) -> Self {
        Self {
            n: 7,
            x0: 39,
            x0p: 79,
            f1: ParabolaShape {
                left_slope: 0.35,
                left_curvature: 0.015,
                right_slope: 0.4,
                right_curvature: 0.03,
            },
            f2: ParabolaShape {
                left_slope: 0.4,
                left_curvature: 0.029,
                right_slope: 0.6,
                right_curvature: 0.0167,
            },
            lambda: BUILTIN_LAMBDA,
            margin: 0.01,
            jitter: 0.05,
            value_cap: None,
            seed,
            max_retries: 16,
        }
    }

    /// A 16-point instance small enough for dense time evolution.
    pub fn four_qubit(seed: u64) -> Self {
        Self {
            n: 4,
            x0: 3,
            x0p: 12,
            f1: ParabolaShape::symmetric(4.0, 0.5),
            f2: ParabolaShape::symmetric(4.0, 0.5),
            lambda: [2.0, 2.0],
            margin: 0.05,
            jitter: 0.3,
            value_cap: None,
            seed,
            max_retries: 16,
        }
    }

    fn check(&self) -> Result<()> {
        if self.n == 0 || self.n > 24 {
            return Err(Error::InvalidArgument(format!(
                "qubit count {} out of range",
                self.n
            )));
        }
        let last = (1usize << self.n) - 1;
        if !(self.x0 < self.x0p && self.x0p <= last && self.x0p - self.x0 > 1) {
            return Err(Error::InvalidArgument(format!(
                "need 0 <= x0 < x0p <= {last} and x0p - x0 > 1, got x0={}, x0p={}",
                self.x0, self.x0p
            )));
        }
        if !self.lambda.iter().all(|l| l.is_finite() && *l > 0.0) {
            return Err(Error::InvalidArgument("gap vector must be positive".into()));
        }
        if !(self.margin.is_finite() && self.margin >= 1e-3) {
            return Err(Error::InvalidArgument(
                "margin must be at least 0.001".into(),
            ));
        }
        if !(self.jitter.is_finite() && self.jitter >= 0.0) {
            return Err(Error::InvalidArgument("jitter must be nonnegative".into()));
        }
        self.f1.check()?;
        self.f2.check()
    }
}

/// Builds one objective column in thousandths. Values of both arms are
/// merged into a single increasing sequence whose spacing exceeds `lambda`,
/// so the column is collision-free by construction.
fn objective_column(
    len: usize,
    center: usize,
    shape: &ParabolaShape,
    lambda: f64,
    margin: f64,
    jitter: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<u64> {
    let mut targets: Vec<(f64, usize)> = Vec::with_capacity(len - 1);
    for k in 1..=center {
        targets.push((shape.target(k, true), center - k));
    }
    for k in 1..len - center {
        targets.push((shape.target(k, false), center + k));
    }
    targets.sort_by(|a, b| a.0.total_cmp(&b.0));

    let min_step = (lambda * 1000.0).floor() as u64 + (margin * 1000.0).ceil().max(1.0) as u64;
    let jitter_th = (jitter * 1000.0).floor() as u64;
    let mut column = vec![0u64; len];
    let mut prev = 0u64;
    for (t, x) in targets {
        let t = (t * 1000.0).round() as u64;
        let extra = if jitter_th == 0 {
            0
        } else {
            rng.random_range(0..=jitter_th)
        };
        let v = t.max(prev + min_step) + extra;
        column[x] = v;
        prev = v;
    }
    column
}

/// Draws a synthetic Two-Parabolas instance. Deterministic per seed.
pub fn generate(params: &TwoParabolasParams) -> Result<McoInstance<f64>> {
    params.check()?;
    let len = 1usize << params.n;
    let mut last_reason = String::new();
    for attempt in 0..=params.max_retries {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed.wrapping_add(u64::from(attempt)));
        let c1 = objective_column(
            len,
            params.x0,
            &params.f1,
            params.lambda[0],
            params.margin,
            params.jitter,
            &mut rng,
        );
        let c2 = objective_column(
            len,
            params.x0p,
            &params.f2,
            params.lambda[1],
            params.margin,
            params.jitter,
            &mut rng,
        );
        let values: Vec<f64> = c1
            .iter()
            .zip(&c2)
            .flat_map(|(a, b)| [*a as f64 / 1000.0, *b as f64 / 1000.0])
            .collect();
        if let Some(cap) = params.value_cap {
            let max = values.iter().copied().fold(0.0, f64::max);
            if max > cap {
                last_reason = format!("largest value {max} exceeds cap {cap}");
                continue;
            }
        }
        let inst = McoInstance::new(params.n, 2, values)?.with_lambda(params.lambda.to_vec())?;
        let report = validate(&inst);
        if !report.passed() {
            last_reason = report.messages.join("; ");
            continue;
        }
        if !verify_two_parabolas(&inst, params.x0, params.x0p).holds() {
            last_reason = "monotonicity conditions violated".into();
            continue;
        }
        return Ok(inst);
    }
    Err(Error::Generation(format!(
        "no valid instance after {} attempts: {last_reason}",
        params.max_retries + 1
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionViolation {
    /// 1: both decreasing up to `x0`; 2: both increasing from `x0p`;
    /// 3: `f1` increasing, `f2` decreasing strictly between them.
    pub condition: u8,
    /// 1-based objective number.
    pub objective: usize,
    pub x: usize,
    pub y: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TwoParabolasReport {
    pub x0: usize,
    pub x0p: usize,
    pub condition1: bool,
    pub condition2: bool,
    pub condition3: bool,
    pub violations: Vec<ConditionViolation>,
}

impl TwoParabolasReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the three segment-wise monotonicity conditions on consecutive
/// domain elements.
pub fn verify_two_parabolas(inst: &McoInstance<f64>, x0: usize, x0p: usize) -> TwoParabolasReport {
    let mut violations = Vec::new();
    let last = inst.len() - 1;
    let mut scan = |condition: u8, lo: usize, hi: usize, increasing: [bool; 2]| {
        for x in lo..hi.min(last) {
            for (i, &inc) in increasing.iter().enumerate().take(inst.d().min(2)) {
                let (a, b) = (inst.row(x)[i], inst.row(x + 1)[i]);
                let ok = if inc { a < b } else { a > b };
                if !ok {
                    violations.push(ConditionViolation {
                        condition,
                        objective: i + 1,
                        x,
                        y: x + 1,
                    });
                }
            }
        }
    };
    if inst.d() == 2 && x0 < x0p && x0p <= last {
        scan(1, 0, x0, [false, false]);
        scan(2, x0p, last, [true, true]);
        scan(3, x0 + 1, x0p - 1, [true, false]);
    } else {
        violations.push(ConditionViolation {
            condition: 0,
            objective: 0,
            x: x0,
            y: x0p,
        });
    }
    let has = |c: u8| {
        !violations
            .iter()
            .any(|v| v.condition == c || v.condition == 0)
    };
    TwoParabolasReport {
        x0,
        x0p,
        condition1: has(1),
        condition2: has(2),
        condition3: has(3),
        violations,
    }
}
