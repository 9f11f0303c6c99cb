use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spin_hierarchy::{
    adjoint, build_cyclic, build_heisenberg, frobenius_distance, hermitian_eig, kron, matmul,
    synthesize_gate, trace, CMatrix, Complex, HalfInteger,
};

fn square(n: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
        .prop_map(move |v| CMatrix::new(n, n, v.into_iter().map(|(re, im)| Complex::new(re, im)).collect()).unwrap())
}

fn random_hermitian(rng: &mut impl Rng, n: usize) -> CMatrix {
    let mut rows = vec![vec![Complex::new(0.0, 0.0); n]; n];
    for i in 0..n {
        rows[i][i] = Complex::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in i + 1..n {
            let z = Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            rows[i][j] = z;
            rows[j][i] = z.conj();
        }
    }
    CMatrix::from_rows(&rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_mixed_product(n in 2usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || {
            let v = (0..n * n).map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            CMatrix::new(n, n, v).unwrap()
        };
        let (a, b, c, d) = (draw(), draw(), draw(), draw());
        let lhs = matmul(&kron(&a, &b), &kron(&c, &d)).unwrap();
        let rhs = kron(&matmul(&a, &c).unwrap(), &matmul(&b, &d).unwrap());
        prop_assert!(frobenius_distance(&lhs, &rhs).unwrap() <= 1e-12 * (n * n) as f64);
    }

    #[test]
    fn kron_trace_multiplicative(m in square(3), n in square(3)) {
        let lhs = trace(&kron(&m, &n)).unwrap();
        let rhs = trace(&m).unwrap() * trace(&n).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12);
    }

    #[test]
    fn adjoint_reverses_products(a in square(3), b in square(3)) {
        let lhs = adjoint(&matmul(&a, &b).unwrap());
        let rhs = matmul(&adjoint(&b), &adjoint(&a)).unwrap();
        prop_assert!(frobenius_distance(&lhs, &rhs).unwrap() <= 1e-12);
        prop_assert_eq!(adjoint(&adjoint(&a)), a);
    }

    #[test]
    fn trace_cyclic(a in square(4), b in square(4)) {
        let ab = trace(&matmul(&a, &b).unwrap()).unwrap();
        let ba = trace(&matmul(&b, &a).unwrap()).unwrap();
        prop_assert!((ab - ba).norm() <= 1e-12);
    }

    #[test]
    fn gate_group_law(twice in 1u32..=4, t1 in -std::f64::consts::PI..std::f64::consts::PI,
                      t2 in -std::f64::consts::PI..std::f64::consts::PI, cyclic in any::<bool>()) {
        let s = HalfInteger::new(twice).unwrap();
        let h = if cyclic { build_cyclic(s) } else { build_heisenberg(s) };
        let g1 = synthesize_gate(&h, t1).unwrap();
        let g2 = synthesize_gate(&h, t2).unwrap();
        let g12 = synthesize_gate(&h, t1 + t2).unwrap();
        let prod = g1.then_after(&g2).unwrap();
        let dim = h.dimension() as f64;
        prop_assert!(frobenius_distance(prod.matrix(), g12.matrix()).unwrap() <= 1e-9 * dim);
        prop_assert!(g12.unitarity_residual() <= 1e-10 * dim);
    }
}

#[test]
fn eigensolver_contract_on_random_hermitian() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..100 {
        let n = 1 + case % 32;
        let m = random_hermitian(&mut rng, n);
        let e = hermitian_eig(&m, 1e-12).unwrap();
        let dim = n as f64;
        let norm = m.frobenius_norm();
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        assert!(e.orthonormality_error() <= 1e-10 * dim, "case {case}");
        assert!(frobenius_distance(&e.reconstruct(), &m).unwrap() <= 1e-9 * dim * norm.max(1.0));
        assert!(e.residual <= 1e-10 * dim * norm.max(1.0));
        let tr: f64 = e.values.iter().sum();
        assert!((tr - trace(&m).unwrap().re).abs() <= 1e-10 * dim);
    }
}
