use nalgebra::DMatrix;
use proptest::prelude::*;

use qudit_entropy::linalg::{eigh_hermitian, eigvals_hermitian, Complex64, ComplexMatrix, HERMITIAN_TOL};

fn hermitian(dim: usize, parts: &[f64]) -> ComplexMatrix {
    let raw = ComplexMatrix::from_fn(dim, |i, j| {
        let k = 2 * (i * dim + j);
        Complex64::new(parts[k], parts[k + 1])
    });
    raw.add(&raw.conj_transpose()).unwrap().scale(Complex64::new(0.5, 0.0))
}

fn arb_hermitian() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=16).prop_flat_map(|dim| {
        prop::collection::vec(-5.0f64..5.0, 2 * dim * dim).prop_map(move |parts| hermitian(dim, &parts))
    })
}

fn permutation(dim: usize, perm: &[usize]) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |i, j| {
        if perm[i] == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn nalgebra_eigvals(a: &ComplexMatrix) -> Vec<f64> {
    let n = a.dim();
    let m = DMatrix::from_fn(n, n, |i, j| {
        let z = a.get(i, j);
        nalgebra::Complex::new(z.re, z.im)
    });
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn agrees_with_nalgebra(a in arb_hermitian()) {
        let ours = eigvals_hermitian(&a, HERMITIAN_TOL).unwrap();
        let theirs = nalgebra_eigvals(&a);
        for (x, y) in ours.iter().zip(&theirs) {
            prop_assert!((x - y).abs() < 1e-9 * (1.0 + a.max_norm()), "{x} vs {y}");
        }
    }

    #[test]
    fn ascending_and_trace_preserving(a in arb_hermitian()) {
        let ev = eigvals_hermitian(&a, HERMITIAN_TOL).unwrap();
        prop_assert!(ev.windows(2).all(|w| w[0] <= w[1]));
        let sum: f64 = ev.iter().sum();
        prop_assert!((sum - a.trace().re).abs() <= 1e-9 * a.dim() as f64);
    }

    #[test]
    fn squared_eigenvalues_give_frobenius_norm(a in arb_hermitian()) {
        let ev = eigvals_hermitian(&a, HERMITIAN_TOL).unwrap();
        let sq: f64 = ev.iter().map(|x| x * x).sum();
        prop_assert!((sq - a.frobenius_norm_sqr()).abs() < 1e-9 * (1.0 + a.frobenius_norm_sqr()));
    }

    #[test]
    fn residual_contract(a in arb_hermitian()) {
        let eig = eigh_hermitian(&a, HERMITIAN_TOL).unwrap();
        let bound = 1e-10 * (1.0 + a.max_norm() * a.dim() as f64);
        for (lambda, v) in eig.values.iter().zip(&eig.vectors) {
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            prop_assert!((norm - 1.0).abs() < 1e-12);
            let av = a.mat_vec(v);
            let r: f64 = av.iter().zip(v).map(|(x, y)| (x - y * lambda).norm_sqr()).sum::<f64>().sqrt();
            prop_assert!(r <= bound, "residual {r} > {bound}");
        }
    }

    #[test]
    fn permutation_invariant(
        (a, perm) in arb_hermitian().prop_flat_map(|a| {
            let n = a.dim();
            (Just(a), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let p = permutation(a.dim(), &perm);
        let conj = p.mul(&a).unwrap().mul(&p.conj_transpose()).unwrap();
        let x = eigvals_hermitian(&a, HERMITIAN_TOL).unwrap();
        let y = eigvals_hermitian(&conj, HERMITIAN_TOL).unwrap();
        for (u, v) in x.iter().zip(&y) {
            prop_assert!((u - v).abs() < 1e-9);
        }
    }
}

#[test]
fn degenerate_and_diagonal_spectra() {
    let d = ComplexMatrix::diag(&[3.0, -1.0, 3.0, 0.0, 3.0]);
    assert_eq!(eigvals_hermitian(&d, HERMITIAN_TOL).unwrap(), vec![-1.0, 0.0, 3.0, 3.0, 3.0]);

    let ones = ComplexMatrix::from_fn(6, |_, _| Complex64::new(1.0, 0.0));
    let ev = eigvals_hermitian(&ones, HERMITIAN_TOL).unwrap();
    assert!(ev[..5].iter().all(|x| x.abs() < 1e-14));
    assert!((ev[5] - 6.0).abs() < 1e-14);
}

#[test]
fn larger_matrix_meets_residual_contract() {
    let dim = 96;
    let parts: Vec<f64> = (0..2 * dim * dim).map(|k| ((k * 7919) % 1000) as f64 / 500.0 - 1.0).collect();
    let a = hermitian(dim, &parts);
    let eig = eigh_hermitian(&a, HERMITIAN_TOL).unwrap();
    let bound = 1e-10 * (1.0 + a.max_norm() * dim as f64);
    for (lambda, v) in eig.values.iter().zip(&eig.vectors) {
        let av = a.mat_vec(v);
        let r: f64 = av.iter().zip(v).map(|(x, y)| (x - y * lambda).norm_sqr()).sum::<f64>().sqrt();
        assert!(r <= bound);
    }
}
