use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsfem::solver::{gmres, quadratic_form, DenseMatrix, GmresOptions, Preconditioner, SparseMatrix};

/// Random nonsymmetric system with a dominant diagonal of mixed sign.
fn random_system(n: usize, seed: u64) -> (SparseMatrix, DenseMatrix, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dense = DenseMatrix::zeros(n);
    let mut trip = Vec::new();
    for i in 0..n {
        let mut off = 0.0;
        for _ in 0..6 {
            let j = rng.random_range(0..n);
            if j == i {
                continue;
            }
            let v: f64 = rng.random_range(-1.0..1.0);
            off += v.abs();
            trip.push((i, j, v));
            *dense.at_mut(i, j) += v;
        }
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let d = sign * (off + rng.random_range(0.5..2.0));
        trip.push((i, i, d));
        *dense.at_mut(i, i) += d;
    }
    let b = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    (SparseMatrix::from_triplets(n, &trip).unwrap(), dense, b)
}

#[test]
fn gmres_matches_dense_lu() {
    for seed in 0..5 {
        let (a, dense, b) = random_system(50, seed);
        let (x, rep) = gmres(&a, &b, &GmresOptions { tol: 1e-12, restart: 50, max_iters: 500, ..Default::default() }).unwrap();
        assert!(rep.converged);
        assert!(rep.residual <= 1e-12);
        let exact = dense.lu().unwrap().solve(&b);
        let err = x.iter().zip(&exact).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        assert!(err < 1e-8, "seed {seed}: {err}");
    }
}

#[test]
fn residual_history_decreases_within_each_cycle() {
    let (a, _, b) = random_system(80, 11);
    let restart = 7;
    let opts = GmresOptions { tol: 1e-10, restart, max_iters: 400, preconditioner: Preconditioner::None };
    let (_, rep) = gmres(&a, &b, &opts).unwrap();
    assert!(rep.converged);
    assert_eq!(rep.history.len(), rep.iterations);
    for k in 0..rep.history.len() - 1 {
        if (k + 1) % restart != 0 {
            assert!(rep.history[k + 1] <= rep.history[k] * (1.0 + 1e-10), "step {k}");
        }
    }
}

#[test]
fn preconditioning_does_not_change_the_solution() {
    let (a, _, b) = random_system(60, 3);
    let base = GmresOptions { tol: 1e-12, restart: 60, max_iters: 600, preconditioner: Preconditioner::None };
    let (x0, _) = gmres(&a, &b, &base).unwrap();
    let (x1, _) = gmres(&a, &b, &GmresOptions { preconditioner: Preconditioner::Jacobi, ..base }).unwrap();
    for (p, q) in x0.iter().zip(&x1) {
        assert!((p - q).abs() < 1e-9);
    }
}

#[test]
fn iteration_cap_is_reported_not_raised() {
    let (a, _, b) = random_system(60, 5);
    let (_, rep) = gmres(&a, &b, &GmresOptions { tol: 1e-14, restart: 3, max_iters: 4, ..Default::default() }).unwrap();
    assert!(!rep.converged);
    assert_eq!(rep.iterations, 4);
}

#[test]
fn zero_diagonal_rejects_jacobi() {
    let a = SparseMatrix::from_triplets(2, &[(0, 1, 1.0), (1, 0, 1.0)]).unwrap();
    assert!(gmres(&a, &[1.0, 1.0], &GmresOptions::default()).is_err());
    let (x, rep) = gmres(&a, &[1.0, 2.0], &GmresOptions { preconditioner: Preconditioner::None, ..Default::default() }).unwrap();
    assert!(rep.converged);
    assert!((x[0] - 2.0).abs() < 1e-12 && (x[1] - 1.0).abs() < 1e-12);
}

proptest! {
    #[test]
    fn triplets_give_sorted_unique_rows(entries in proptest::collection::vec((0usize..12, 0usize..12, -5.0..5.0f64), 0..80)) {
        let a = SparseMatrix::from_triplets(12, &entries).unwrap();
        for i in 0..12 {
            let (cols, _) = a.row(i);
            prop_assert!(cols.windows(2).all(|w| w[0] < w[1]));
        }
        for i in 0..12 {
            for j in 0..12 {
                let sum: f64 = entries.iter().filter(|e| e.0 == i && e.1 == j).map(|e| e.2).sum();
                prop_assert!((a.get(i, j) - sum).abs() < 1e-12);
            }
        }
        prop_assert_eq!(quadratic_form(&a, &[0.0; 12]), 0.0);
    }
}
