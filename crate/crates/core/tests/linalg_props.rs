use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use threepi::linalg::{
    hermitian_eig, hermitian_eigenvalues, kron, matrix_sqrt_psd, partial_trace, partial_transpose,
    trace_norm_hermitian,
};
use threepi::rng::seeded;
use threepi::states::haar_unitary;
use threepi::{Complex, ComplexMatrix};

fn hermitian(dim: usize, entries: &[(f64, f64)]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    let mut it = entries.iter();
    for i in 0..dim {
        for j in i..dim {
            let &(re, im) = it.next().unwrap();
            if i == j {
                m[(i, i)] = Complex::new(re, 0.0);
            } else {
                m[(i, j)] = Complex::new(re, im);
                m[(j, i)] = Complex::new(re, -im);
            }
        }
    }
    m
}

fn arb_hermitian() -> impl Strategy<Value = ComplexMatrix> {
    prop_oneof![Just(2usize), Just(4), Just(8)].prop_flat_map(|dim| {
        prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), dim * (dim + 1) / 2)
            .prop_map(move |e| hermitian(dim, &e))
    })
}

fn arb_density(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim).prop_map(move |e| {
        let g = ComplexMatrix::new(
            dim,
            dim,
            e.into_iter().map(|(a, b)| Complex::new(a, b)).collect(),
        )
        .unwrap();
        let ggd = (&g * &g.dagger()).hermitian_part();
        let tr = ggd.trace().re;
        ggd.scale_real(1.0 / tr)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eig_reconstructs_and_is_unitary(m in arb_hermitian()) {
        let d = hermitian_eig(&m).unwrap();
        let scale = 1.0 + m.frobenius();
        prop_assert!(d.reconstruct().max_abs_diff(&m) < 1e-10 * scale);
        let v = &d.eigenvectors;
        prop_assert!((&v.dagger() * v).max_abs_diff(&ComplexMatrix::identity(m.rows())) < 1e-10);
        prop_assert!(d.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn eig_matches_spectral_sums(m in arb_hermitian()) {
        let ev = hermitian_eigenvalues(&m).unwrap();
        let scale = 1.0 + m.frobenius() * m.frobenius();
        prop_assert!((ev.iter().sum::<f64>() - m.trace().re).abs() < 1e-10 * scale);
        let sq: f64 = ev.iter().map(|x| x * x).sum();
        prop_assert!((sq - m.frobenius().powi(2)).abs() < 1e-10 * scale);
    }

    #[test]
    fn two_by_two_eigenvalues_match_quadratic(a in -3.0..3.0f64, d in -3.0..3.0f64, re in -3.0..3.0f64, im in -3.0..3.0f64) {
        let m = hermitian(2, &[(a, 0.0), (re, im), (d, 0.0)]);
        let mid = 0.5 * (a + d);
        let r = (0.25 * (a - d).powi(2) + re * re + im * im).sqrt();
        let ev = hermitian_eigenvalues(&m).unwrap();
        prop_assert!((ev[0] - (mid - r)).abs() < 1e-12 * (1.0 + r));
        prop_assert!((ev[1] - (mid + r)).abs() < 1e-12 * (1.0 + r));
    }

    #[test]
    fn trace_norm_is_unitarily_invariant(m in arb_hermitian(), seed in any::<u64>()) {
        let u = haar_unitary(m.rows(), &mut seeded(seed));
        let rotated = (&(&u * &m) * &u.dagger()).hermitian_part();
        let a = trace_norm_hermitian(&m).unwrap();
        let b = trace_norm_hermitian(&rotated).unwrap();
        prop_assert!((a - b).abs() < 1e-9 * (1.0 + a));
    }

    #[test]
    fn sqrt_of_density_squares_back(rho in arb_density(4)) {
        let s = matrix_sqrt_psd(&rho).unwrap();
        prop_assert!((&s * &s).max_abs_diff(&rho) < 1e-10);
        prop_assert!(s.hermitian_deviation() < 1e-12);
    }

    #[test]
    fn partial_trace_preserves_trace(rho in arb_density(8), keep in prop::sample::subsequence(vec![0usize, 1, 2], 1..=3)) {
        let r = partial_trace(&rho, 3, &keep).unwrap();
        prop_assert_eq!(r.rows(), 1 << keep.len());
        prop_assert!((r.trace() - rho.trace()).norm() < 1e-12);
        prop_assert!(r.hermitian_deviation() < 1e-14);
    }

    #[test]
    fn partial_transpose_is_involution_and_keeps_trace(rho in arb_density(8), part in prop::sample::subsequence(vec![0usize, 1, 2], 0..=3)) {
        let t = partial_transpose(&rho, 3, &part).unwrap();
        prop_assert_eq!(partial_transpose(&t, 3, &part).unwrap(), rho.clone());
        prop_assert!((t.trace() - rho.trace()).norm() < 1e-14);
    }
}

#[test]
fn partial_trace_of_product_recovers_factors() {
    let mut rng = seeded(17);
    let pick = |rng: &mut threepi::rng::Rng64| {
        let u = haar_unitary(2, rng);
        let col = u.column(0);
        ComplexMatrix::outer(&col)
    };
    let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
    let abc = kron(&kron(&a, &b), &c);
    assert!(partial_trace(&abc, 3, &[1]).unwrap().max_abs_diff(&b) < 1e-14);
    assert!(
        partial_trace(&abc, 3, &[0, 2])
            .unwrap()
            .max_abs_diff(&kron(&a, &c))
            < 1e-14
    );
}

#[test]
fn full_transpose_is_transpose() {
    let rho = hermitian(
        4,
        &[
            (1.0, 0.0),
            (0.2, 0.3),
            (0.0, -0.1),
            (0.4, 0.0),
            (2.0, 0.0),
            (0.1, 0.1),
            (0.3, 0.2),
            (0.5, 0.0),
            (0.0, 0.7),
            (1.5, 0.0),
        ],
    );
    let t = partial_transpose(&rho, 2, &[0, 1]).unwrap();
    assert_eq!(t, rho.transpose());
    assert_abs_diff_eq!(
        trace_norm_hermitian(&t).unwrap(),
        trace_norm_hermitian(&rho).unwrap(),
        epsilon = 1e-12
    );
}
