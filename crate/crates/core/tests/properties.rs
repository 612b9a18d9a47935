//! Bulk randomized invariants of the operator machinery and the classical
//! oracle, at the counts the library is specified to survive.

use choquetq_core::bounds::{
    expectation_bound, partition_bounds, product_bound, subadditivity_convexity, trace_bounds,
};
use choquetq_core::capacity::{choquet, choquet_via_mobius, comonotonic, Capacity};
use choquetq_core::choquet::{
    choquet_integral, choquet_via_mobius_ops_with, mobius_operators, mobius_pair,
    weak_resolution_residual,
};
use choquetq_core::comonotone::{additivity_residual, class_count};
use choquetq_core::hilbert::{CoherentFamily, FiducialVector, HilbertContext, PhasePoint};
use choquetq_core::phase_space::{q_function, wehrl_entropy, HermitianPsd};
use choquetq_core::sampling::{random_capacity, random_psd};
use choquetq_core::{CMatrix, Complex};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn family3() -> CoherentFamily {
    CoherentFamily::new(
        HilbertContext::new(3).unwrap(),
        FiducialVector::default_for(3).unwrap(),
    )
    .unwrap()
}

#[test]
fn resolution_of_identity_holds() {
    let fam = family3();
    let mut sum = CMatrix::zeros(3, 3);
    for p in fam.points() {
        sum += fam.projector(p);
    }
    sum /= Complex::new(3.0, 0.0);
    assert!((sum - CMatrix::identity(3, 3)).norm() < 1e-10);
}

#[test]
fn q_sums_to_trace_on_thousand_instances() {
    let fam = family3();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..1000 {
        let theta = random_psd(&mut rng, 3);
        let q = q_function(&fam, &theta).unwrap();
        let total: f64 = q.values().iter().sum();
        assert!((total - theta.trace()).abs() < 1e-9);
        assert!(q.values().iter().all(|&v| v >= -1e-12));
    }
}

#[test]
fn choquet_displacement_covariance_on_hundred_instances() {
    let fam = family3();
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..100 {
        let theta = random_psd(&mut rng, 3);
        let c = choquet_integral(&fam, &theta).unwrap();
        for g in fam.points() {
            let dg = fam.displacement(g);
            let moved = HermitianPsd::new(dg * theta.matrix() * dg.adjoint()).unwrap();
            let cm = choquet_integral(&fam, &moved).unwrap();
            let target = dg * c.operator() * dg.adjoint();
            assert!((cm.operator() - target).norm() < 1e-9);
        }
    }
}

#[test]
fn wehrl_entropy_never_exceeds_uniform_bound() {
    let fam = family3();
    let cap = (9.0f64).ln();
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    for _ in 0..1000 {
        let theta = random_psd(&mut rng, 3);
        let q = q_function(&fam, &theta).unwrap();
        let e = wehrl_entropy(&q).unwrap();
        assert!(e <= cap + 1e-12, "entropy {e} above ln(d^2) = {cap}");
        assert!(e >= 0.0);
    }
}

#[test]
fn expectation_and_product_bounds_no_violations() {
    let fam = family3();
    let mut rng = ChaCha8Rng::seed_from_u64(112);
    for _ in 0..1000 {
        let theta = random_psd(&mut rng, 3);
        let raw = random_psd(&mut rng, 3);
        let rho = raw.scaled(1.0 / raw.trace());
        assert!(expectation_bound(&fam, &rho, &theta).unwrap().satisfied);
        let phi = random_psd(&mut rng, 3);
        assert!(product_bound(&fam, &theta, &phi).unwrap().satisfied);
    }
}

#[test]
fn trace_bounds_no_violations_on_thousand_instances() {
    let fam = family3();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..1000 {
        let theta = random_psd(&mut rng, 3);
        let report = trace_bounds(&fam, &theta).unwrap();
        assert!(report.lower.satisfied && report.upper.satisfied);
        assert!(report.lower.slack > 1e-12, "left bound must stay strict");
    }
}

#[test]
fn subadditivity_no_violations_on_thousand_pairs() {
    let fam = family3();
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..1000 {
        let theta = random_psd(&mut rng, 3);
        let phi = random_psd(&mut rng, 3);
        let report = subadditivity_convexity(&fam, &theta, &phi, 0.5).unwrap();
        assert!(report.subadditivity.satisfied);
        assert!(report.convexity.satisfied);
    }
}

#[test]
fn bogoliubov_pointwise_no_violations() {
    let fam = family3();
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for _ in 0..200 {
        let h = choquetq_core::sampling::random_hermitian(&mut rng, 3);
        for lambda in [0.1, 1.0, 10.0] {
            let report = partition_bounds(&fam, &h, lambda).unwrap();
            assert!(report.bogoliubov_min_slack >= -1e-12);
            assert!(report.upper_holds && report.lower_holds);
        }
    }
}

#[test]
fn comonotonic_additivity_on_constructed_pairs() {
    // Scalar multiples and identity shifts are comonotonic by construction.
    let fam = family3();
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for _ in 0..200 {
        let theta = random_psd(&mut rng, 3);
        let a = rng.random_range(0.1..3.0);
        let b = rng.random_range(0.1..3.0);
        let scaled = theta.scaled(rng.random_range(0.1..2.0));
        assert!(additivity_residual(&fam, &theta, &scaled, a, b).unwrap() < 1e-9);
        let shifted = theta.shifted(rng.random_range(0.0..2.0));
        assert!(additivity_residual(&fam, &theta, &shifted, a, b).unwrap() < 1e-9);
    }
}

#[test]
fn mobius_oracle_identities_and_route_agreement() {
    let fam = family3();
    let table = mobius_operators(&fam).unwrap();

    let report = weak_resolution_residual(&table, 20, 2024);
    assert!(report.full_residual < 1e-8);
    assert!(report.higher_order_residual < 1e-8);
    for r in &report.sampled_subset_residuals {
        assert!(*r < 1e-8);
    }

    // Displaced-pair sums cancel for a sample of base pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for _ in 0..5 {
        let p1 = PhasePoint::new(rng.random_range(0..3), rng.random_range(0..3), 3);
        let mut p2 = p1;
        while p2 == p1 {
            p2 = PhasePoint::new(rng.random_range(0..3), rng.random_range(0..3), 3);
        }
        let mut acc = CMatrix::zeros(3, 3);
        for shift in fam.points() {
            acc += mobius_pair(&fam, p1.offset(shift, 3), p2.offset(shift, 3));
        }
        assert!(acc.norm() < 1e-8);
    }

    for _ in 0..100 {
        let theta = random_psd(&mut rng, 3);
        let direct = choquet_integral(&fam, &theta).unwrap();
        let via = choquet_via_mobius_ops_with(&table, &fam, &theta).unwrap();
        assert!((direct.operator() - via).norm() < 1e-7);
    }
}

#[test]
fn classical_routes_agree_on_thousand_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    for trial in 0..1000 {
        let n = rng.random_range(2..=6usize);
        let mu = random_capacity(&mut rng, n);
        let f: Vec<f64> = (0..n).map(|_| rng.random_range(-10.0..10.0)).collect();
        let via_rank = choquet(&f, &mu).unwrap();
        let via_mobius = choquet_via_mobius(&f, &mu.mobius_transform()).unwrap();
        assert!(
            (via_rank - via_mobius).abs() < 1e-12,
            "trial {trial}: {via_rank} vs {via_mobius}"
        );
    }
}

#[test]
fn classical_mixture_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    for _ in 0..200 {
        let n = rng.random_range(2..=5usize);
        let mu1 = random_capacity(&mut rng, n);
        let mu2 = random_capacity(&mut rng, n);
        let p: f64 = rng.random_range(0.0..1.0);
        let mixed: Vec<f64> = mu1
            .values()
            .iter()
            .zip(mu2.values())
            .map(|(a, b)| p * a + (1.0 - p) * b)
            .collect();
        let mu = Capacity::new(n, mixed).unwrap();
        let f: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..100.0)).collect();
        let direct = choquet(&f, &mu).unwrap();
        let combined =
            p * choquet(&f, &mu1).unwrap() + (1.0 - p) * choquet(&f, &mu2).unwrap();
        assert!((direct - combined).abs() < 1e-12);
    }
}

#[test]
fn class_count_exact_values() {
    assert_eq!(class_count(3), BigUint::from(504u32));
    assert_eq!(class_count(5), BigUint::from(6_375_600u32));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Classical comonotonic additivity (Eq.-level): same-ranking pairs add.
    #[test]
    fn classical_comonotonic_additivity(
        base in proptest::collection::vec(-50.0f64..50.0, 4),
        scale in 0.01f64..4.0,
        shift in -10.0f64..10.0,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu = random_capacity(&mut rng, base.len());
        // g = scale·f + shift is comonotonic with f.
        let g: Vec<f64> = base.iter().map(|x| scale * x + shift).collect();
        prop_assert!(comonotonic(&base, &g));
        let sum: Vec<f64> = base.iter().zip(&g).map(|(a, b)| a + b).collect();
        let lhs = choquet(&sum, &mu).unwrap();
        let rhs = choquet(&base, &mu).unwrap() + choquet(&g, &mu).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-9 * lhs.abs().max(1.0));
    }

    /// Möbius and zeta transforms invert each other on arbitrary set data.
    #[test]
    fn mobius_zeta_roundtrip(values in proptest::collection::vec(-1.0f64..1.0, 16)) {
        let mut v = values.clone();
        v[0] = 0.0;
        // Build a valid capacity shape on 4 elements by cumulative maxima.
        let mut cap = vec![0.0f64; 16];
        for mask in 1usize..16 {
            let mut floor: f64 = 0.0;
            for i in 0..4 {
                if mask & (1 << i) != 0 {
                    floor = floor.max(cap[mask ^ (1 << i)]);
                }
            }
            cap[mask] = floor.max(v[mask].abs().min(1.0));
        }
        cap[15] = 1.0;
        let mu = Capacity::new(4, cap).unwrap();
        // f64 round trip is exact only up to rounding; the rational route in
        // the unit tests covers bit-exactness.
        let back = mu.mobius_transform().inverse_values();
        for (a, b) in mu.values().iter().zip(&back) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    /// Phase-point arithmetic stays reduced and offsets compose mod d.
    #[test]
    fn phase_point_modular_arithmetic(a in -20i64..20, b in -20i64..20, c in -20i64..20, e in -20i64..20) {
        let d = 5usize;
        let p = PhasePoint::new(a, b, d);
        let q = PhasePoint::new(c, e, d);
        prop_assert!(p.alpha() < d && p.beta() < d);
        let r = p.offset(q, d);
        prop_assert_eq!(r.alpha(), ((a + c).rem_euclid(d as i64)) as usize);
        prop_assert_eq!(r.beta(), ((b + e).rem_euclid(d as i64)) as usize);
        let idx = p.index(d);
        prop_assert_eq!(PhasePoint::from_index(idx, d), p);
    }
}

/// Scalar homogeneity of C_Q on random instances, plus PSD of the result.
#[test]
fn choquet_homogeneity_and_psd_output() {
    let fam = family3();
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    for _ in 0..100 {
        let theta = random_psd(&mut rng, 3);
        let a = rng.random_range(0.0..3.0);
        let c1 = choquet_integral(&fam, &theta).unwrap();
        let c2 = choquet_integral(&fam, &theta.scaled(a)).unwrap();
        assert!((c1.operator() * Complex::new(a, 0.0) - c2.operator()).norm() < 1e-8);
        // result is Hermitian PSD
        HermitianPsd::new(c1.operator().clone()).unwrap();
    }
}
