//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Every tolerance is pinned here; a criterion fails loudly rather than
//! silently loosening.

use choquetq_cli::noise::NoiseSpec;
use choquetq_cli::{reproduce, scenarios};
use choquetq_core::bounds::{partition_bounds, subadditivity_convexity, trace_bounds};
use choquetq_core::capacity::{choquet, choquet_via_mobius, Capacity};
use choquetq_core::choquet::{
    choquet_integral, choquet_via_mobius_ops_with, mobius_operators, mobius_pair,
    weak_resolution_residual,
};
use choquetq_core::comonotone::{additivity_residual, class_count};
use choquetq_core::phase_space::{q_function, HermitianPsd};
use choquetq_core::sampling::{random_hermitian, random_psd};
use choquetq_core::{CMatrix, Complex, PhasePoint};
use num_bigint::BigUint;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

/// Runs one criterion body, printing its PASS/FAIL line and enforcing the
/// stated wall-clock budget.
fn criterion<F: FnOnce() -> Result<(), String>>(number: u32, label: &str, budget_s: f64, body: F) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed().as_secs_f64();
    match outcome {
        Ok(()) => {
            println!("criterion {number:2} PASS ({elapsed:7.3}s)  {label}");
            assert!(
                elapsed < budget_s,
                "criterion {number} exceeded its {budget_s}s budget: {elapsed:.3}s"
            );
        }
        Err(message) => {
            println!("criterion {number:2} FAIL ({elapsed:7.3}s)  {label}: {message}");
            panic!("criterion {number} failed: {message}");
        }
    }
}

fn ensure(cond: bool, message: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message.into())
    }
}

#[test]
fn criterion_01_students_example() {
    criterion(1, "classical assessment example, exact", 1.0, || {
        let report = reproduce::students().map_err(|e| e.to_string())?;
        ensure(report.matched(), format!("{:?}", report.failures))?;
        let values: Vec<f64> = report.rows.iter().map(|r| r.choquet).collect();
        ensure(values == [70.0, 65.0, 64.0, 63.0], format!("values {values:?}"))?;
        ensure(
            report.layers == [48.0, 22.0, 0.0],
            format!("layers {:?}", report.layers),
        )
    });
}

#[test]
fn criterion_02_table1_noiseless_row() {
    criterion(2, "benchmark row: dominant triple, spectrum, ratio @ 2e-3", 1.0, || {
        let spec = NoiseSpec {
            seed: 1,
            trials: 0,
            amplitude: 1.0,
        };
        let report = reproduce::table1(&spec, Some(0.002)).map_err(|e| e.to_string())?;
        ensure(report.matched(), format!("{:?}", report.failures))?;
        let labels: Vec<(usize, usize)> =
            report.noiseless.dominant.iter().map(|(p, _)| *p).collect();
        ensure(
            labels == [(1, 2), (1, 1), (0, 2)],
            format!("dominant labels {labels:?}"),
        )
    });
}

#[test]
fn criterion_03_table2_intervals() {
    criterion(3, "five comonotonicity intervals, ratio law, commuting parts", 5.0, || {
        let report = reproduce::table2().map_err(|e| e.to_string())?;
        ensure(report.matched(), format!("{:?}", report.failures))?;
        ensure(
            report.intervals.len() == 5 && report.boundaries.len() == 4,
            "interval structure",
        )?;
        ensure(
            report.intervals.iter().all(|iv| iv.commutator_norm < 1e-8),
            "commutator norms",
        )
    });
}

#[test]
fn criterion_04_table3_ground_state_study() {
    criterion(4, "nondegenerate ground-state table @ 5e-3 + boundaries", 10.0, || {
        let report = reproduce::table3(Some(0.005)).map_err(|e| e.to_string())?;
        ensure(report.matched(), format!("{:?}", report.failures))?;
        for target in [0.3, 0.4, 0.7] {
            ensure(
                report.boundaries.iter().any(|b| (b - target).abs() <= 0.08),
                format!("missing boundary near {target}"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_05_table4_degenerate_study() {
    criterion(5, "degenerate ground-state table @ 5e-3, overlap 0.5", 5.0, || {
        let report = reproduce::table4(Some(0.005)).map_err(|e| e.to_string())?;
        ensure(report.matched(), format!("{:?}", report.failures))?;
        ensure(
            (report.cross_overlap - 0.5).abs() <= 0.01,
            format!("cross overlap {}", report.cross_overlap),
        )
    });
}

#[test]
fn criterion_06_partition_bounds() {
    criterion(6, "partition-function bounds: worked example + analytic case", 1.0, || {
        let family = reproduce::default_family();
        let report = partition_bounds(&family, &scenarios::section8_matrix(), 1.0)
            .map_err(|e| e.to_string())?;
        ensure((report.z - 0.440).abs() <= 0.002, format!("Z = {}", report.z))?;
        // The reference prints the Choquet lower bound per dominant state,
        // i.e. (1/d)·TrC divided once more by d.
        let per_state = report.choquet_lower / 3.0;
        ensure(
            (per_state - 0.073).abs() <= 0.002,
            format!("choquet lower/d = {per_state}"),
        )?;
        ensure(
            (report.q_exp_lower - 0.013).abs() <= 0.002,
            format!("q lower = {}", report.q_exp_lower),
        )?;
        ensure(report.upper_holds && report.lower_holds, "bounds violated")?;

        // θ = 1: everything reduces to e^{-λ} factors, exact to 1e-10.
        for lambda in [0.3, 1.0] {
            let report = partition_bounds(&family, &CMatrix::identity(3, 3), lambda)
                .map_err(|e| e.to_string())?;
            let e = (-lambda).exp();
            ensure((report.z - 3.0 * e).abs() < 1e-10, "identity Z")?;
            ensure((report.choquet_upper - 3.0 * e).abs() < 1e-10, "identity upper")?;
            ensure((report.choquet_lower - e).abs() < 1e-10, "identity choquet lower")?;
            ensure((report.q_exp_lower - 3.0 * e).abs() < 1e-10, "identity q lower")?;
        }
        Ok(())
    });
}

#[test]
fn criterion_07_property_suite() {
    criterion(7, "randomized invariant suite, 1000 PSD instances", 60.0, || {
        let family = reproduce::default_family();

        // Resolution of the identity.
        let mut sum = CMatrix::zeros(3, 3);
        for p in family.points() {
            sum += family.projector(p);
        }
        sum /= Complex::new(3.0, 0.0);
        ensure(
            (sum - CMatrix::identity(3, 3)).norm() < 1e-10,
            "resolution of identity",
        )?;

        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);
        let mut previous: Option<HermitianPsd> = None;
        for i in 0..1000 {
            let theta = random_psd(&mut rng, 3);
            let q = q_function(&family, &theta).map_err(|e| e.to_string())?;
            let total: f64 = q.values().iter().sum();
            ensure(
                (total - theta.trace()).abs() < 1e-9,
                format!("instance {i}: sum Q vs trace"),
            )?;

            let tb = trace_bounds(&family, &theta).map_err(|e| e.to_string())?;
            ensure(
                tb.lower.satisfied && tb.upper.satisfied && tb.lower.slack > 1e-12,
                format!("instance {i}: trace bounds"),
            )?;

            if let Some(phi) = previous.take() {
                let sr = subadditivity_convexity(&family, &theta, &phi, 0.5)
                    .map_err(|e| e.to_string())?;
                ensure(
                    sr.subadditivity.satisfied && sr.convexity.satisfied,
                    format!("instance {i}: subadditivity"),
                )?;
            }

            // Constructed comonotonic pairs: scalar multiple and 1-shift.
            let a = rng.random_range(0.1..2.0);
            let r1 = additivity_residual(&family, &theta, &theta.scaled(a), 1.0, 1.0)
                .map_err(|e| e.to_string())?;
            let r2 = additivity_residual(&family, &theta, &theta.shifted(0.5), 1.0, 1.0)
                .map_err(|e| e.to_string())?;
            ensure(
                r1 < 1e-9 && r2 < 1e-9,
                format!("instance {i}: comonotonic additivity {r1:.2e}/{r2:.2e}"),
            )?;

            // Choquet displacement covariance on every tenth instance.
            if i % 10 == 0 {
                let c = choquet_integral(&family, &theta).map_err(|e| e.to_string())?;
                for g in family.points() {
                    let dg = family.displacement(g);
                    let moved = HermitianPsd::new(dg * theta.matrix() * dg.adjoint())
                        .map_err(|e| e.to_string())?;
                    let cm = choquet_integral(&family, &moved).map_err(|e| e.to_string())?;
                    let target = dg * c.operator() * dg.adjoint();
                    ensure(
                        (cm.operator() - target).norm() < 1e-9,
                        format!("instance {i}: covariance at {g}"),
                    )?;
                }
            }

            // Bogoliubov pointwise on every fifth instance.
            if i % 5 == 0 {
                let h = random_hermitian(&mut rng, 3);
                for lambda in [0.1, 1.0, 10.0] {
                    let pb =
                        partition_bounds(&family, &h, lambda).map_err(|e| e.to_string())?;
                    ensure(
                        pb.bogoliubov_min_slack >= -1e-12,
                        format!("instance {i}: Bogoliubov at λ = {lambda}"),
                    )?;
                }
            }
            previous = Some(theta);
        }
        Ok(())
    });
}

#[test]
fn criterion_08_mobius_oracle() {
    criterion(8, "full 512-subset Möbius table + route agreement", 120.0, || {
        let family = reproduce::default_family();
        let table = mobius_operators(&family).map_err(|e| e.to_string())?;

        let report = weak_resolution_residual(&table, 20, 0xACCE98);
        ensure(
            report.full_residual < 1e-8,
            format!("weak resolution residual {}", report.full_residual),
        )?;
        ensure(
            report.higher_order_residual < 1e-8,
            format!("higher-order residual {}", report.higher_order_residual),
        )?;
        ensure(
            report.sampled_subset_residuals.iter().all(|r| *r < 1e-8),
            "sampled d-subset identities",
        )?;

        // Displaced-pair sums vanish for every base pair of distinct points.
        for i in 0..9usize {
            for j in (i + 1)..9 {
                let p1 = PhasePoint::from_index(i, 3);
                let p2 = PhasePoint::from_index(j, 3);
                let mut acc = CMatrix::zeros(3, 3);
                for shift in family.points() {
                    acc += mobius_pair(&family, p1.offset(shift, 3), p2.offset(shift, 3));
                }
                ensure(
                    acc.norm() < 1e-8,
                    format!("displaced-pair sum for ({i},{j}): {}", acc.norm()),
                )?;
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE99);
        for i in 0..100 {
            let theta = random_psd(&mut rng, 3);
            let direct = choquet_integral(&family, &theta).map_err(|e| e.to_string())?;
            let via = choquet_via_mobius_ops_with(&table, &family, &theta)
                .map_err(|e| e.to_string())?;
            ensure(
                (direct.operator() - via).norm() < 1e-7,
                format!("instance {i}: Möbius route deviates"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_09_classical_oracle() {
    criterion(9, "classical rank/Möbius agreement + exact mixture law", 60.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE9A);
        for i in 0..1000 {
            let n = rng.random_range(2..=6usize);
            let mu = choquetq_core::sampling::random_capacity(&mut rng, n);
            let f: Vec<f64> = (0..n).map(|_| rng.random_range(-10.0..10.0)).collect();
            let rank_route = choquet(&f, &mu).map_err(|e| e.to_string())?;
            let mobius_route =
                choquet_via_mobius(&f, &mu.mobius_transform()).map_err(|e| e.to_string())?;
            ensure(
                (rank_route - mobius_route).abs() < 1e-12,
                format!("instance {i}: {rank_route} vs {mobius_route}"),
            )?;
        }

        // Mixture law, exact over rationals.
        let r = Rational64::new;
        for trial in 0..50 {
            let n = 3 + (trial % 3) as usize;
            let mu1 = random_rational_capacity(&mut rng, n);
            let mu2 = random_rational_capacity(&mut rng, n);
            let p = r(rng.random_range(0..=1000), 1000);
            let mixed: Vec<Rational64> = mu1
                .values()
                .iter()
                .zip(mu2.values())
                .map(|(a, b)| p * *a + (r(1, 1) - p) * *b)
                .collect();
            let mu = Capacity::new(n, mixed).map_err(|e| e.to_string())?;
            let f: Vec<Rational64> =
                (0..n).map(|_| r(rng.random_range(-1000..1000), 10)).collect();
            let lhs = choquet(&f, &mu).map_err(|e| e.to_string())?;
            let rhs = p * choquet(&f, &mu1).map_err(|e| e.to_string())?
                + (r(1, 1) - p) * choquet(&f, &mu2).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, format!("trial {trial}: mixture law broke exactness"))?;
        }
        Ok(())
    });
}

/// Monotone capacity with small-denominator rational values.
fn random_rational_capacity(rng: &mut impl Rng, n: usize) -> Capacity<Rational64> {
    let size = 1usize << n;
    let mut values = vec![Rational64::from_integer(0); size];
    let one = Rational64::from_integer(1);
    for mask in 1..size {
        let mut floor = Rational64::from_integer(0);
        for i in 0..n {
            let bit = 1usize << i;
            if mask & bit != 0 && values[mask ^ bit] > floor {
                floor = values[mask ^ bit];
            }
        }
        let share = Rational64::new(rng.random_range(0..=100), 100);
        values[mask] = floor + share * (one - floor);
    }
    values[size - 1] = one;
    Capacity::new(n, values).expect("monotone by construction")
}

#[test]
fn criterion_10_class_count() {
    criterion(10, "equivalence-class counts, exact integers", 1.0, || {
        ensure(class_count(3) == BigUint::from(504u32), "d = 3")?;
        ensure(class_count(5) == BigUint::from(6_375_600u32), "d = 5")
    });
}

/// Distributional stability of the noise study at the full trial count
/// (supplementary to criterion 2, which pins the noiseless row).
#[test]
fn table1_monte_carlo_distribution() {
    let spec = NoiseSpec {
        seed: 1,
        trials: 1000,
        amplitude: 1.0,
    };
    let report = reproduce::table1(&spec, Some(0.002)).expect("table1");
    assert!(report.matched(), "failures: {:?}", report.failures);
    println!(
        "table1 Monte-Carlo: ratio in [0.40, 0.47] for {:.1}% of trials, top pair kept {:.1}%",
        100.0 * report.ratio_in_band_fraction,
        100.0 * report.top_pair_match_fraction,
    );
    assert!(report.ratio_in_band_fraction >= 0.90);
    assert!(report.top_pair_match_fraction >= 0.80);
}
