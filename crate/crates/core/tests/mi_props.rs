use misub_core::mi::{
    entropy_of_counts, fano_lower_bound, mi_fluctuation, mi_order, mutual_information,
    poisson_fluctuations, rank_bases, Discretizer, JointHistogram,
};
use misub_core::transforms::{BasisSet, TransformKind};
use misub_core::Matrix;
use proptest::prelude::*;

fn grid() -> impl Strategy<Value = JointHistogram> {
    (1..=6usize, 1..=4usize).prop_flat_map(|(b, c)| {
        prop::collection::vec(0..30u64, b * c)
            .prop_filter("non-empty", |v| v.iter().any(|&n| n > 0))
            .prop_map(move |counts| JointHistogram::from_counts(b, c, counts).unwrap())
    })
}

/// `H(X) + H(Y) − H(X,Y)`: an independent route to the same quantity.
fn mi_from_entropies(h: &JointHistogram) -> f64 {
    entropy_of_counts(h.row_marginals()) + entropy_of_counts(h.col_marginals())
        - entropy_of_counts(h.counts())
}

proptest! {
    #[test]
    fn mi_equals_entropy_identity(h in grid()) {
        prop_assert!((mutual_information(&h) - mi_from_entropies(&h).max(0.0)).abs() < 1e-12);
    }

    #[test]
    fn mi_is_bounded(h in grid()) {
        let mi = mutual_information(&h);
        let hx = entropy_of_counts(h.row_marginals());
        let hy = entropy_of_counts(h.col_marginals());
        prop_assert!(mi >= 0.0);
        prop_assert!(mi <= hx.min(hy) + 1e-12);
    }

    #[test]
    fn product_form_has_zero_mi(
        a in prop::collection::vec(1..15u64, 1..6),
        b in prop::collection::vec(1..15u64, 1..4),
    ) {
        let counts = a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect();
        let h = JointHistogram::from_counts(a.len(), b.len(), counts).unwrap();
        prop_assert!(mutual_information(&h) < 1e-12);
    }

    #[test]
    fn mi_ignores_bin_permutation(h in grid(), rot in 0..6usize) {
        let (b, c) = (h.bins(), h.classes());
        let counts = (0..b)
            .flat_map(|x| (0..c).map(move |y| (x, y)))
            .map(|(x, y)| h.count((x + rot) % b, y))
            .collect();
        let shuffled = JointHistogram::from_counts(b, c, counts).unwrap();
        prop_assert!((mutual_information(&h) - mutual_information(&shuffled)).abs() < 1e-12);
    }

    #[test]
    fn fano_is_monotone(h in 0.0..3.0f64, i in 0.0..3.0f64, step in 1e-6..1.0f64, c in 2..10usize) {
        let f = |h, i| fano_lower_bound(h, i, c).unwrap().value;
        prop_assert!(f(h, i + step) < f(h, i));
        prop_assert!(f(h + step, i) > f(h, i));
    }

    #[test]
    fn discretizer_bins_are_in_range(values in prop::collection::vec(-1e3..1e3f64, 1..50), bins in 2..20usize) {
        let d = Discretizer::fit(&values, bins).unwrap();
        let ids = d.assign(&values);
        prop_assert!(ids.iter().all(|&b| b < bins));
        let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        prop_assert_eq!(d.bin(lo), 0);
        prop_assert_eq!(d.bin(hi), if hi > lo { bins - 1 } else { 0 });
    }

    #[test]
    fn zero_fluctuation_gives_zero(h in grid()) {
        let zeros = vec![0.0; h.counts().len()];
        prop_assert_eq!(mi_fluctuation(&h, &zeros).unwrap(), 0.0);
        prop_assert!(mi_fluctuation(&h, &poisson_fluctuations(&h)).unwrap().is_finite());
    }

    #[test]
    fn mi_order_is_a_descending_permutation(scores in prop::collection::vec(0.0..2.0f64, 1..40)) {
        let order = mi_order(&scores);
        let mut seen = order.clone();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..scores.len()).collect::<Vec<_>>());
        for w in order.windows(2) {
            prop_assert!(scores[w[0]] > scores[w[1]] || (scores[w[0]] == scores[w[1]] && w[0] < w[1]));
        }
    }

    #[test]
    fn affine_maps_keep_bins_and_ranking(
        cols in prop::collection::vec(prop::collection::vec(-10.0..10.0f64, 3), 8..30),
        a in prop::collection::vec(0.01..100.0f64, 3),
        b in prop::collection::vec(-50.0..50.0f64, 3),
    ) {
        let n = cols.len();
        let labels: Vec<usize> = (0..n).map(|j| j % 2).collect();
        let x = Matrix::from_columns(&cols).unwrap();
        let mut y = x.clone();
        for i in 0..3 {
            for j in 0..n {
                y[(i, j)] = a[i] * x[(i, j)] + b[i];
            }
        }
        let basis = BasisSet {
            kind: TransformKind::Dct,
            bases: Matrix::identity(3),
            scores: vec![0.0; 3],
            fitted_on: "identity".into(),
        };
        let r0 = rank_bases(&basis, &x, &labels, 2, 5).unwrap();
        let r1 = rank_bases(&basis, &y, &labels, 2, 5).unwrap();
        for i in 0..3 {
            prop_assert_eq!(r0.discretizers[i].assign(x.row(i)), r1.discretizers[i].assign(y.row(i)));
        }
        prop_assert_eq!(r0.mi_bits, r1.mi_bits);
        prop_assert_eq!(r0.order, r1.order);
    }
}

#[test]
fn perfectly_informative_grid_reaches_label_entropy() {
    let h = JointHistogram::from_counts(3, 3, vec![5, 0, 0, 0, 7, 0, 0, 0, 4]).unwrap();
    let hy = entropy_of_counts(h.col_marginals());
    assert!((mutual_information(&h) - hy).abs() < 1e-12);
}
