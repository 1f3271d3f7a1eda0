use misub_core::linalg::{generalized_sym_eig, sym_eig};
use misub_core::transforms::{dct_basis, lda_basis, pca_basis, rp_basis, scatter_matrices};
use misub_core::Matrix;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn symmetric(n: usize, seed: Vec<f64>) -> Matrix {
    let mut a = Matrix::zeros(n, n);
    let mut it = seed.into_iter().cycle();
    for i in 0..n {
        for j in i..n {
            let v = it.next().unwrap();
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    a
}

fn sym_strategy(max_n: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_n, prop::collection::vec(-50.0..50.0f64, 1..64)).prop_map(|(n, s)| symmetric(n, s))
}

fn to_na(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigen_reconstructs_and_is_orthonormal(a in sym_strategy(24)) {
        let e = sym_eig(&a).unwrap();
        let n = a.rows();
        let err = e.reconstruct().sub(&a).unwrap().frobenius_norm();
        prop_assert!(err <= 1e-9 * (1.0 + a.frobenius_norm()));
        let ete = e.eigenvectors.transpose().matmul(&e.eigenvectors).unwrap();
        prop_assert!(ete.max_abs_diff(&Matrix::identity(n)).unwrap() < 1e-10);
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn trace_equals_eigenvalue_sum(a in sym_strategy(24)) {
        let e = sym_eig(&a).unwrap();
        let sum: f64 = e.eigenvalues.iter().sum();
        prop_assert!((sum - a.trace()).abs() <= 1e-9 * (1.0 + a.frobenius_norm()));
    }

    #[test]
    fn eigenvalues_match_nalgebra(a in sym_strategy(20)) {
        let ours = sym_eig(&a).unwrap().eigenvalues;
        let mut theirs: Vec<f64> = to_na(&a).symmetric_eigen().eigenvalues.iter().copied().collect();
        theirs.sort_by(|x, y| y.total_cmp(x));
        for (x, y) in ours.iter().zip(&theirs) {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + a.frobenius_norm()));
        }
    }

    #[test]
    fn matmul_is_associative(
        (p, q, r, s) in (1..6usize, 1..6usize, 1..6usize, 1..6usize),
        vals in prop::collection::vec(-5.0..5.0f64, 90),
    ) {
        let take = |rows: usize, cols: usize, off: usize| {
            Matrix::new(rows, cols, (0..rows * cols).map(|i| vals[(off + i) % vals.len()]).collect()).unwrap()
        };
        let a = take(p, q, 0);
        let b = take(q, r, 30);
        let c = take(r, s, 60);
        let left = a.matmul(&b).unwrap().matmul(&c).unwrap();
        let right = a.matmul(&b.matmul(&c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right).unwrap() < 1e-9);
    }

    #[test]
    fn generalized_with_identity_is_standard(a in sym_strategy(16)) {
        let n = a.rows();
        let g = generalized_sym_eig(&a, &Matrix::identity(n), 0.0).unwrap();
        let s = sym_eig(&a).unwrap();
        for (x, y) in g.eigenvalues.iter().zip(&s.eigenvalues) {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + a.frobenius_norm()));
        }
    }

    #[test]
    fn rp_entries_are_ternary(d in 1..40usize, seed in any::<u64>()) {
        let rp = rp_basis(d, seed).unwrap();
        prop_assert_eq!(rp.bases.shape(), (d, d));
        prop_assert!(rp.bases.as_slice().iter().all(|&v| v == -1.0 || v == 0.0 || v == 1.0));
        prop_assert_eq!(rp, rp_basis(d, seed).unwrap());
    }
}

/// Generalized eigenvalues of `(S_b, S_w)` against nalgebra, through
/// `L⁻¹·S_b·L⁻ᵀ` with its own Cholesky factor.
#[test]
fn generalized_eigenvalues_match_nalgebra() {
    let sb = Matrix::from_rows(&[[4.0, 1.0, 0.5], [1.0, 3.0, 0.2], [0.5, 0.2, 1.0]]).unwrap();
    let sw = Matrix::from_rows(&[[2.0, 0.3, 0.0], [0.3, 1.5, 0.1], [0.0, 0.1, 0.8]]).unwrap();
    let ours = generalized_sym_eig(&sb, &sw, 0.0).unwrap();

    let l = to_na(&sw).cholesky().unwrap().l();
    let l_inv = l.try_inverse().unwrap();
    let c = &l_inv * to_na(&sb) * l_inv.transpose();
    let mut theirs: Vec<f64> = c.symmetric_eigen().eigenvalues.iter().copied().collect();
    theirs.sort_by(|x, y| y.total_cmp(x));
    for (x, y) in ours.eigenvalues.iter().zip(&theirs) {
        assert!((x - y).abs() < 1e-10, "{x} vs {y}");
    }
    // S_b·v = λ·S_w·v
    for (i, &lambda) in ours.eigenvalues.iter().enumerate() {
        let v = Matrix::from_columns(&[ours.vector(i)]).unwrap();
        let lhs = sb.matmul(&v).unwrap();
        let rhs = sw.matmul(&v).unwrap().scale(lambda);
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-10);
    }
}

#[test]
fn dct_and_pca_are_orthonormal() {
    for d in [2, 16, 60, 256] {
        let g = dct_basis(d).unwrap().bases;
        let gg = g.matmul(&g.transpose()).unwrap();
        assert!(
            gg.max_abs_diff(&Matrix::identity(d)).unwrap() < 1e-8,
            "d = {d}"
        );
    }
    let x = Matrix::new(
        5,
        8,
        (0..40).map(|i| ((i * 37) % 11) as f64 - 5.0).collect(),
    )
    .unwrap();
    let g = pca_basis(&x).unwrap().bases;
    let gg = g.matmul(&g.transpose()).unwrap();
    assert!(gg.max_abs_diff(&Matrix::identity(5)).unwrap() < 1e-10);
}

#[test]
fn lda_bases_diagonalize_the_scatters() {
    let x = Matrix::from_rows(&[
        [1.0, 2.0, 1.5, 5.0, 6.0, 5.5, 9.0, 9.5, 8.0],
        [0.5, 1.0, 0.0, 2.0, 2.5, 1.5, 0.0, 0.5, 1.0],
        [3.0, 2.0, 2.5, 2.0, 3.5, 3.0, 1.0, 1.5, 2.0],
    ])
    .unwrap();
    let y = [0, 0, 0, 1, 1, 1, 2, 2, 2];
    let lda = lda_basis(&x, &y, 3, Some(0.0)).unwrap();
    let (sw, sb) = scatter_matrices(&x, &y, 3).unwrap();
    let w = lda.bases.transpose();
    let wsw = lda.bases.matmul(&sw).unwrap().matmul(&w).unwrap();
    let wsb = lda.bases.matmul(&sb).unwrap().matmul(&w).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                assert!(wsw[(i, j)].abs() < 1e-9 * (1.0 + wsw[(i, i)].abs()));
                assert!(wsb[(i, j)].abs() < 1e-9 * (1.0 + wsb[(i, i)].abs()));
            }
        }
    }
    // between-class rank is C - 1, so the last discriminant carries nothing
    assert!(lda.scores[2].abs() < 1e-9);
    assert!(lda.scores[0] >= lda.scores[1]);
}
