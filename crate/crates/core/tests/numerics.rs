use adiabatic_mco::eigen::eigh;
use adiabatic_mco::hamiltonian::{
    assemble, build_final, build_initial, DiagonalHamiltonian, ScheduleGrid,
};
use adiabatic_mco::spectral::{gap_scan, operator_norm, smallest_two};
use adiabatic_mco::{HermitianOperator, Instance, Linearization};
use nalgebra::DMatrix;
use num_complex::Complex;
use proptest::prelude::*;

fn hermitian(dim: usize, seed: &[f64]) -> Vec<Complex<f64>> {
    let mut a = vec![Complex::new(0.0, 0.0); dim * dim];
    let mut k = 0;
    let mut next = || {
        k += 1;
        seed[k % seed.len()]
    };
    for i in 0..dim {
        a[i * dim + i] = Complex::new(next(), 0.0);
        for j in i + 1..dim {
            let z = Complex::new(next(), next());
            a[i * dim + j] = z;
            a[j * dim + i] = z.conj();
        }
    }
    a
}

fn residual(op: &HermitianOperator<f64>, value: f64, v: &[Complex<f64>]) -> f64 {
    let hv = op.apply(v).unwrap();
    hv.iter()
        .zip(v)
        .map(|(a, b)| (a - b * value).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn complex_spectrum_matches_oracle(log_dim in 1u32..6, seed in prop::collection::vec(-1.0f64..1.0, 64)) {
        let dim = 1usize << log_dim;
        let entries = hermitian(dim, &seed);
        let op = HermitianOperator::from_entries(dim, entries.clone()).unwrap();
        let ours = eigh(&op, true).unwrap();
        let mut oracle: Vec<f64> = DMatrix::from_row_slice(dim, dim, &entries)
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        oracle.sort_by(f64::total_cmp);
        for (a, b) in ours.values.iter().zip(&oracle) {
            prop_assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
        for (k, v) in ours.vectors.unwrap().iter().enumerate() {
            prop_assert!(residual(&op, ours.values[k], v) < 1e-9);
        }
    }

    #[test]
    fn real_spectrum_matches_oracle(log_dim in 1u32..7, seed in prop::collection::vec(-1.0f64..1.0, 64)) {
        let dim = 1usize << log_dim;
        let entries: Vec<f64> = hermitian(dim, &seed).iter().map(|z| z.re).collect();
        let sym: Vec<f64> = (0..dim * dim).map(|k| {
            let (i, j) = (k / dim, k % dim);
            if i <= j { entries[i * dim + j] } else { entries[j * dim + i] }
        }).collect();
        let op = HermitianOperator::from_real_symmetric(dim, sym.clone()).unwrap();
        let (a, b) = smallest_two(&op).unwrap();
        let mut oracle: Vec<f64> = DMatrix::from_row_slice(dim, dim, &sym)
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        oracle.sort_by(f64::total_cmp);
        prop_assert!((a.value - oracle[0]).abs() < 1e-10);
        prop_assert!((b.value - oracle[1]).abs() < 1e-10);
        prop_assert!(residual(&op, a.value, &a.vector) < 1e-10);
    }

    #[test]
    fn interpolation_is_affine(
        diag in prop::collection::vec(0.0f64..20.0, 8),
        s in 0.0f64..=1.0,
        t in 0.0f64..=1.0,
    ) {
        let h0 = build_initial(3, 8.0, None).unwrap();
        let hw = DiagonalHamiltonian::new(diag).unwrap();
        let hs = assemble(&h0, &hw, s).unwrap();
        let direct = h0.dense().lin_comb(1.0 - s, &hw.dense(), s).unwrap();
        for (a, b) in hs.entries().iter().zip(direct.entries()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
        let mid = assemble(&h0, &hw, (s + t) / 2.0).unwrap();
        let ht = assemble(&h0, &hw, t).unwrap();
        let avg = hs.lin_comb(0.5, &ht, 0.5).unwrap();
        for (a, b) in mid.entries().iter().zip(avg.entries()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }
}

#[test]
fn initial_operator_norm_is_the_scale() {
    for (n, c) in [(1, 8.0), (4, 3.5), (7, 8.0)] {
        let h0 = build_initial::<f64>(n, c, None).unwrap();
        assert!((operator_norm(&h0.dense()).unwrap() - c).abs() < 1e-10);
    }
}

#[test]
fn single_precision_gap_scan_tracks_double() {
    let inst = Instance::from_rows(&[
        vec![0.0, 9.0],
        vec![1.5, 6.0],
        vec![3.5, 2.5],
        vec![7.0, 0.0],
    ])
    .unwrap();
    let w = Linearization::pair(0.5).unwrap();
    let h64 = gap_scan(
        &build_initial(2, 8.0, None).unwrap(),
        &build_final(&inst, &w).unwrap(),
        &ScheduleGrid::uniform(33).unwrap(),
    )
    .unwrap();
    let inst32 = inst.map_scalar::<f32>().unwrap();
    let h32 = gap_scan(
        &build_initial(2, 8.0f32, None).unwrap(),
        &build_final(&inst32, &Linearization::pair(0.5f32).unwrap()).unwrap(),
        &ScheduleGrid::uniform(33).unwrap(),
    )
    .unwrap();
    for (a, b) in h64.samples.iter().zip(&h32.samples) {
        assert!((a.gap - f64::from(b.gap)).abs() < 1e-4);
    }
}
