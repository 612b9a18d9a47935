//! Reproduction of the bundled reference scenarios: the classical assessment
//! example and the four numeric reference tables.
//!
//! Each function recomputes a scenario from scratch, compares every matched
//! cell against the pinned reference values at the stated tolerance, and
//! returns the rows together with the list of mismatches (empty = matched).
//!
//! Reference tables 1, 3 and 4 index phase-space points with the shift
//! component first, while the displacement convention in the core library
//! (and reference table 2) puts the clock component first; the rows below
//! are emitted in each table's own labelling via [`table_label`].

use crate::ground::ground_projector;
use crate::noise::NoiseSpec;
use crate::scenarios;
use anyhow::Result;
use choquetq_core::capacity::{choquet, choquet_mobius_layers, choquet_weights};
use choquetq_core::choquet::choquet_integral;
use choquetq_core::comonotone::{scan_intervals, OperatorPath};
use choquetq_core::phase_space::{
    dominance_ratio, q_function, q_function_of_hermitian, wehrl_entropy, HermitianPsd,
};
use choquetq_core::{
    CMatrix, CoherentFamily, Complex, FiducialVector, HilbertContext, PhasePoint, QFunction,
};
use num_rational::Rational64;
use serde::Serialize;

/// The coherent family every bundled scenario runs on: d = 3 with the
/// built-in fiducial vector.
pub fn default_family() -> CoherentFamily {
    CoherentFamily::new(
        HilbertContext::new(3).expect("d = 3 is odd"),
        FiducialVector::default_for(3).expect("built-in fiducial"),
    )
    .expect("default family")
}

/// Point label as printed in reference tables 1, 3 and 4 (shift first).
pub fn table_label(p: PhasePoint) -> (usize, usize) {
    (p.beta(), p.alpha())
}

fn fmt_point(label: (usize, usize)) -> String {
    format!("({},{})", label.0, label.1)
}

// ---------------------------------------------------------------------------
// students
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct StudentRow {
    pub name: char,
    pub choquet: f64,
    pub choquet_exact: String,
    pub average: f64,
    pub average_exact: String,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StudentsReport {
    pub rows: Vec<StudentRow>,
    /// Möbius-route layer sums for the first candidate.
    pub layers: Vec<f64>,
    pub choquet_order: String,
    pub average_order: String,
    pub failures: Vec<String>,
}

impl StudentsReport {
    pub fn matched(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("student,choquet,average\n");
        for row in &self.rows {
            out.push_str(&format!("{},{},{}\n", row.name, row.choquet_exact, row.average_exact));
        }
        out
    }
}

fn rat_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Recomputes the assessment example in exact rational arithmetic: Choquet
/// values 70, 65, 64, 63, the Möbius layer split 48 + 22 + 0 of the first
/// candidate, and the contrasting plain averages.
pub fn students() -> Result<StudentsReport> {
    let mu = scenarios::assessment_capacity();
    let marks = scenarios::assessment_marks();
    let coeffs = mu.mobius_transform();
    let names = ['A', 'B', 'C', 'D'];
    let expected = [70i64, 65, 64, 63];

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (i, f) in marks.iter().enumerate() {
        let value = choquet(f, &mu)?;
        let via_mobius = choquetq_core::capacity::choquet_via_mobius(f, &coeffs)?;
        if value != via_mobius {
            failures.push(format!("candidate {}: rank and Möbius routes differ", names[i]));
        }
        if value != Rational64::from_integer(expected[i]) {
            failures.push(format!(
                "candidate {}: Choquet value {} != {}",
                names[i], value, expected[i]
            ));
        }
        let average: Rational64 = f.iter().sum::<Rational64>() / Rational64::from_integer(3);
        rows.push(StudentRow {
            name: names[i],
            choquet: rat_to_f64(value),
            choquet_exact: value.to_string(),
            average: rat_to_f64(average),
            average_exact: average.to_string(),
            weights: choquet_weights(f, &mu)?.into_iter().map(rat_to_f64).collect(),
        });
    }

    let layers = choquet_mobius_layers(&marks[0], &coeffs)?;
    let expected_layers = [48i64, 22, 0];
    for (k, (layer, want)) in layers.iter().zip(expected_layers).enumerate() {
        if *layer != Rational64::from_integer(want) {
            failures.push(format!("layer {}: {} != {}", k + 1, layer, want));
        }
    }
    let expected_avgs = [
        Rational64::new(170, 3),
        Rational64::new(220, 3),
        Rational64::new(210, 3),
        Rational64::new(180, 3),
    ];
    for (i, f) in marks.iter().enumerate() {
        let avg: Rational64 = f.iter().sum::<Rational64>() / Rational64::from_integer(3);
        if avg != expected_avgs[i] {
            failures.push(format!("candidate {} average {} != {}", names[i], avg, expected_avgs[i]));
        }
    }

    Ok(StudentsReport {
        rows,
        layers: layers.into_iter().map(rat_to_f64).collect(),
        choquet_order: "A > B > C > D".into(),
        average_order: "B > C > D > A".into(),
        failures,
    })
}

// ---------------------------------------------------------------------------
// shared cell comparison
// ---------------------------------------------------------------------------

/// Checks one expected dominant cell against a computed Q-function: the
/// expected point must carry a Q value within `tol` of the expected value
/// and must itself be dominant (up to exact ties with a dominant value, so
/// either member of a tied pair is accepted).
fn check_dominant_cell(
    q: &QFunction,
    expected_label: (usize, usize),
    expected_value: f64,
    tol: f64,
    context: &str,
    failures: &mut Vec<String>,
) {
    // Table labels are (shift, clock): flip back to the core convention.
    let p = PhasePoint::new(expected_label.1 as i64, expected_label.0 as i64, 3);
    let value = q.value(p);
    if (value - expected_value).abs() > tol {
        failures.push(format!(
            "{context}: Q{} = {:.4} differs from expected {:.4}",
            fmt_point(expected_label),
            value,
            expected_value
        ));
        return;
    }
    let tie = q.tie_tolerance().max(1e-9);
    let dominant = q
        .dominant_values()
        .iter()
        .any(|dv| (dv - value).abs() <= tie);
    if !dominant {
        failures.push(format!(
            "{context}: point {} is not among the dominant values",
            fmt_point(expected_label)
        ));
    }
}

fn check_cell(computed: f64, expected: f64, tol: f64, context: &str, failures: &mut Vec<String>) {
    if (computed - expected).abs() > tol {
        failures.push(format!(
            "{context}: {computed:.4} differs from expected {expected:.4}"
        ));
    }
}

// ---------------------------------------------------------------------------
// table 1
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct Table1Row {
    pub trial: Option<u64>,
    /// Dominant points in table labelling with their Q values, descending.
    pub dominant: Vec<((usize, usize), f64)>,
    /// Eigenvalues of the operator itself, ascending.
    pub eigenvalues: Vec<f64>,
    pub ratio: f64,
    /// |⟨u_i|v_i⟩|² of each eigenvector against the noiseless counterpart.
    pub overlaps: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1Report {
    pub noiseless: Table1Row,
    pub trials: Vec<Table1Row>,
    pub ratio_in_band_fraction: f64,
    pub top_pair_match_fraction: f64,
    pub failures: Vec<String>,
}

impl Table1Report {
    pub fn matched(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn csv(&self) -> String {
        let mut out = String::from(
            "trial,q9_point,q9,q8_point,q8,q7_point,q7,e1,e2,e3,ratio,tau1,tau2,tau3\n",
        );
        let mut push = |row: &Table1Row| {
            let trial = row.trial.map(|t| t.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                trial,
                fmt_point(row.dominant[0].0),
                row.dominant[0].1,
                fmt_point(row.dominant[1].0),
                row.dominant[1].1,
                fmt_point(row.dominant[2].0),
                row.dominant[2].1,
                row.eigenvalues[0],
                row.eigenvalues[1],
                row.eigenvalues[2],
                row.ratio,
                row.overlaps[0],
                row.overlaps[1],
                row.overlaps[2],
            ));
        };
        push(&self.noiseless);
        for row in &self.trials {
            push(row);
        }
        out
    }
}

fn eigensystem_ascending(m: &CMatrix) -> (Vec<f64>, Vec<choquetq_core::CVector>) {
    let eig = m.clone().symmetric_eigen();
    let d = m.nrows();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    (
        order.iter().map(|&k| eig.eigenvalues[k]).collect(),
        order
            .iter()
            .map(|&k| eig.eigenvectors.column(k).into_owned())
            .collect(),
    )
}

fn table1_row(
    family: &CoherentFamily,
    matrix: &CMatrix,
    trial: Option<u64>,
    reference_vectors: &[choquetq_core::CVector],
) -> Result<(Table1Row, QFunction)> {
    // Strong noise can push the smallest eigenvalue slightly negative; the
    // ranking study still applies, so rows rank the Hermitian matrix as is.
    let q = q_function_of_hermitian(family, matrix)?;
    let (eigenvalues, vectors) = eigensystem_ascending(matrix);
    let overlaps = vectors
        .iter()
        .zip(reference_vectors)
        .map(|(v, u)| (u.adjoint() * v)[(0, 0)].norm_sqr())
        .collect();
    let dominant = q
        .dominant_points()
        .into_iter()
        .map(|p| (table_label(p), q.value(p)))
        .collect();
    Ok((
        Table1Row {
            trial,
            dominant,
            eigenvalues,
            ratio: dominance_ratio(&q)?,
            overlaps,
        },
        q,
    ))
}

/// Noiseless benchmark row plus `spec.trials` perturbed rows with summary
/// statistics.
pub fn table1(spec: &NoiseSpec, cell_tol: Option<f64>) -> Result<Table1Report> {
    let tol = cell_tol.unwrap_or(0.002);
    let family = default_family();
    let base = scenarios::noise_base();
    let (_, reference_vectors) = eigensystem_ascending(&base);
    let (noiseless, q) = table1_row(&family, &base, None, &reference_vectors)?;

    let mut failures = Vec::new();
    let expected_dominant = [((1, 2), 3.023), ((1, 1), 3.023), ((0, 2), 2.095)];
    for (label, value) in expected_dominant {
        check_dominant_cell(&q, label, value, tol, "noiseless row", &mut failures);
    }
    let expected_eigen = [0.942, 5.488, 12.569];
    for (k, e) in expected_eigen.iter().enumerate() {
        check_cell(noiseless.eigenvalues[k], *e, tol, "noiseless eigenvalue", &mut failures);
    }
    check_cell(noiseless.ratio, 0.428, tol, "noiseless dominance ratio", &mut failures);
    for tau in &noiseless.overlaps {
        check_cell(*tau, 1.0, 1e-9, "noiseless overlap", &mut failures);
    }

    let mut trials = Vec::with_capacity(spec.trials as usize);
    let mut in_band = 0usize;
    let mut top_pair = 0usize;
    let noiseless_top: std::collections::BTreeSet<(usize, usize)> =
        noiseless.dominant.iter().take(2).map(|(p, _)| *p).collect();
    for t in 0..spec.trials {
        let (row, _) = table1_row(&family, &spec.perturbed(t), Some(t), &reference_vectors)?;
        if (0.40..=0.47).contains(&row.ratio) {
            in_band += 1;
        }
        let top: std::collections::BTreeSet<(usize, usize)> =
            row.dominant.iter().take(2).map(|(p, _)| *p).collect();
        if top == noiseless_top {
            top_pair += 1;
        }
        trials.push(row);
    }
    let n = spec.trials.max(1) as f64;
    let ratio_in_band_fraction = in_band as f64 / n;
    let top_pair_match_fraction = top_pair as f64 / n;
    if spec.trials >= 100 {
        if ratio_in_band_fraction < 0.90 {
            failures.push(format!(
                "only {:.1}% of trials kept the dominance ratio in [0.40, 0.47]",
                100.0 * ratio_in_band_fraction
            ));
        }
        if top_pair_match_fraction < 0.80 {
            failures.push(format!(
                "only {:.1}% of trials kept the top dominant pair",
                100.0 * top_pair_match_fraction
            ));
        }
    }

    Ok(Table1Report {
        noiseless,
        trials,
        ratio_in_band_fraction,
        top_pair_match_fraction,
        failures,
    })
}

// ---------------------------------------------------------------------------
// table 2
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct Table2Interval {
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    /// Dominant points, descending, in the core (clock, shift) labelling
    /// used by this table.
    pub dominant: Vec<(usize, usize)>,
    /// Dominance ratio as d·(n0 + n1·λ)/(99 + 63·λ): the affine numerator.
    pub ratio_numerator: (f64, f64),
    /// ‖[A, B]‖ of the affine Choquet decomposition on this interval.
    pub commutator_norm: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table2Report {
    pub intervals: Vec<Table2Interval>,
    pub boundaries: Vec<f64>,
    pub warnings: Vec<String>,
    pub failures: Vec<String>,
}

impl Table2Report {
    pub fn matched(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn csv(&self) -> String {
        let mut out =
            String::from("lambda_lo,lambda_hi,q9_point,q8_point,q7_point,ratio_formula\n");
        for iv in &self.intervals {
            out.push_str(&format!(
                "{},{},{},{},{},3*({}+{}*l)/(99+63*l)\n",
                iv.lambda_lo,
                iv.lambda_hi,
                fmt_point(iv.dominant[0]),
                fmt_point(iv.dominant[1]),
                fmt_point(iv.dominant[2]),
                iv.ratio_numerator.0,
                iv.ratio_numerator.1,
            ));
        }
        out
    }
}

/// Affine part (A, B) of λ ↦ C_Q(θ₁ + λθ₂) inside one interval, with a
/// linearity residual at the midpoint.
fn affine_choquet_part(
    family: &CoherentFamily,
    t1: &CMatrix,
    t2: &CMatrix,
    lo: f64,
    hi: f64,
) -> Result<(CMatrix, CMatrix, f64)> {
    let at = |l: f64| -> Result<CMatrix> {
        Ok(choquet_integral(family, &HermitianPsd::new(t1 + t2 * Complex::new(l, 0.0))?)?
            .operator()
            .clone())
    };
    let (la, lb) = (lo + 0.25 * (hi - lo), lo + 0.75 * (hi - lo));
    let ca = at(la)?;
    let cb = at(lb)?;
    let b = (&cb - &ca) / Complex::new(lb - la, 0.0);
    let a = ca - &b * Complex::new(la, 0.0);
    let mid = 0.5 * (lo + hi);
    let linear_residual = (&a + &b * Complex::new(mid, 0.0) - at(mid)?).norm();
    Ok((a, b, linear_residual))
}

/// Scans the affine benchmark over [0, 0.7] and pins the interval table: the
/// five dominant triples, the per-interval ratio formula, the crossing
/// boundaries, and the commuting affine decomposition.
pub fn table2() -> Result<Table2Report> {
    let family = default_family();
    let (t1, t2) = scenarios::crossing_pair();
    let path = OperatorPath::affine(t1.clone(), t2.clone(), (0.0, 0.7), 200);
    let report = scan_intervals(&family, &path, 1e-6)?;

    let mut failures = Vec::new();
    let p = |a: i64, b: i64| PhasePoint::new(a, b, 3);
    let expected_signatures = [
        [p(1, 0), p(0, 0), p(2, 0)],
        [p(0, 0), p(1, 0), p(2, 0)],
        [p(0, 0), p(1, 0), p(0, 2)],
        [p(0, 0), p(0, 2), p(1, 0)],
        [p(0, 0), p(0, 2), p(0, 1)],
    ];
    if report.intervals.len() != expected_signatures.len() {
        failures.push(format!(
            "expected 5 comonotonicity intervals, found {}",
            report.intervals.len()
        ));
    }
    // Reference boundaries as printed; the first one genuinely computes to
    // 0.0722 from the exact matrices and stays within the documented ±0.02.
    let expected_boundaries = [0.06, 0.44, 0.56, 0.60];
    let boundaries: Vec<f64> = report.crossings.iter().map(|c| c.lambda).collect();
    if boundaries.len() == expected_boundaries.len() {
        for (b, e) in boundaries.iter().zip(expected_boundaries) {
            if (b - e).abs() > 0.02 {
                failures.push(format!("boundary {b:.4} drifts beyond 0.02 from {e}"));
            }
        }
    } else {
        failures.push(format!("expected 4 crossings, found {}", boundaries.len()));
    }

    let ratio_numerators = [
        (13.5, 7.0),
        (13.5, 7.0),
        (12.62, 9.0),
        (12.62, 9.0),
        (11.0, 11.7),
    ];
    let mut intervals = Vec::new();
    for (k, iv) in report.intervals.iter().enumerate() {
        if k < expected_signatures.len() {
            let got: Vec<PhasePoint> = iv.dominant.clone();
            if got != expected_signatures[k] {
                failures.push(format!(
                    "interval {} dominant triple {:?} differs from the reference",
                    k + 1,
                    got.iter().map(|q| q.to_string()).collect::<Vec<_>>()
                ));
            }
        }
        let (n0, n1) = ratio_numerators[k.min(ratio_numerators.len() - 1)];
        // Ratio formula checked at three interior points. The printed
        // formula carries the ratio numerator only; the dominance ratio is
        // d times it over (99 + 63λ).
        let width = iv.lambda_hi - iv.lambda_lo;
        for frac in [0.25, 0.5, 0.75] {
            let l = iv.lambda_lo + frac * width;
            let theta = HermitianPsd::new(&t1 + &t2 * Complex::new(l, 0.0))?;
            let r = dominance_ratio(&q_function(&family, &theta)?)?;
            let formula = 3.0 * (n0 + n1 * l) / (99.0 + 63.0 * l);
            if (r - formula).abs() > 1e-3 {
                failures.push(format!(
                    "interval {}: ratio {r:.5} at λ = {l:.3} misses the formula value {formula:.5}",
                    k + 1
                ));
            }
        }
        let (a, b, linear_residual) =
            affine_choquet_part(&family, &t1, &t2, iv.lambda_lo, iv.lambda_hi)?;
        if linear_residual > 1e-8 {
            failures.push(format!(
                "interval {}: Choquet map is not affine (residual {linear_residual:.2e})",
                k + 1
            ));
        }
        let commutator_norm = (&a * &b - &b * &a).norm();
        if commutator_norm > 1e-8 {
            failures.push(format!(
                "interval {}: [A,B] norm {commutator_norm:.2e} exceeds 1e-8",
                k + 1
            ));
        }
        if k == 0 || k == 1 {
            let (ae, be) = reference_affine_parts(k);
            if (&a - ae).camax() > 0.02 || (&b - be).camax() > 0.02 {
                failures.push(format!("interval {}: affine part drifts from the reference", k + 1));
            }
        }
        intervals.push(Table2Interval {
            lambda_lo: iv.lambda_lo,
            lambda_hi: iv.lambda_hi,
            dominant: iv.dominant.iter().map(|q| (q.alpha(), q.beta())).collect(),
            ratio_numerator: (n0, n1),
            commutator_norm,
        });
    }

    Ok(Table2Report {
        intervals,
        boundaries,
        warnings: report.warnings,
        failures,
    })
}

/// Published affine decompositions on the first two intervals.
#[allow(clippy::approx_constant)] // pinned reference entries
fn reference_affine_parts(interval: usize) -> (CMatrix, CMatrix) {
    let cm = |rows: [[(f64, f64); 3]; 3]| {
        CMatrix::from_fn(3, 3, |i, j| Complex::new(rows[i][j].0, rows[i][j].1))
    };
    if interval == 0 {
        (
            cm([
                [(13.25, 0.0), (0.04, -0.16), (0.01, 0.14)],
                [(0.04, 0.16), (13.53, 0.0), (-0.05, -0.17)],
                [(0.01, -0.14), (-0.05, 0.17), (13.70, 0.0)],
            ]),
            cm([
                [(6.28, 0.0), (1.31, -1.0), (1.18, 0.13)],
                [(1.31, 1.0), (8.01, 0.0), (1.41, 1.36)],
                [(1.18, -0.13), (1.41, -1.36), (6.7, 0.0)],
            ]),
        )
    } else {
        (
            cm([
                [(13.29, 0.0), (0.08, -0.23), (0.01, 0.15)],
                [(0.08, 0.23), (13.62, 0.0), (-0.11, -0.07)],
                [(0.01, -0.15), (-0.11, 0.07), (13.57, 0.0)],
            ]),
            cm([
                [(5.65, 0.0), (0.73, 0.0), (1.10, 0.0)],
                [(0.73, 0.0), (6.75, 0.0), (2.20, 0.0)],
                [(1.10, 0.0), (2.20, 0.0), (8.59, 0.0)],
            ]),
        )
    }
}

// ---------------------------------------------------------------------------
// table 3
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct Table3Row {
    pub lambda: f64,
    pub dominant: Vec<((usize, usize), f64)>,
    pub ratio: f64,
    pub entropy: f64,
    pub overlap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table3Report {
    pub rows: Vec<Table3Row>,
    pub boundaries: Vec<f64>,
    pub warnings: Vec<String>,
    pub failures: Vec<String>,
}

impl Table3Report {
    pub fn matched(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn csv(&self) -> String {
        let mut out = String::from(
            "lambda,q9_point,q9,q8_point,q8,q7_point,q7,ratio,entropy,overlap\n",
        );
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                row.lambda,
                fmt_point(row.dominant[0].0),
                row.dominant[0].1,
                fmt_point(row.dominant[1].0),
                row.dominant[1].1,
                fmt_point(row.dominant[2].0),
                row.dominant[2].1,
                row.ratio,
                row.entropy,
                row.overlap,
            ));
        }
        out
    }
}

/// Expected rows: λ, three dominant cells (table labels), ratio, entropy,
/// overlap with the zero-coupling ground state.
#[allow(clippy::type_complexity)]
const TABLE3_EXPECTED: [(f64, [((usize, usize), f64); 3], f64, f64, f64); 11] = [
    (0.0, [((1, 2), 0.214), ((1, 0), 0.214), ((1, 1), 0.214)], 0.642, 1.929, 1.0),
    (0.1, [((1, 2), 0.228), ((1, 0), 0.209), ((1, 1), 0.191)], 0.628, 1.948, 0.971),
    (0.2, [((1, 2), 0.245), ((1, 0), 0.202), ((1, 1), 0.166)], 0.613, 1.972, 0.929),
    (0.3, [((1, 2), 0.268), ((1, 0), 0.192), ((1, 1), 0.138)], 0.598, 1.980, 0.885),
    (0.4, [((1, 2), 0.297), ((1, 0), 0.176), ((2, 2), 0.120)], 0.593, 1.959, 0.812),
    (0.5, [((1, 2), 0.313), ((0, 2), 0.168), ((2, 2), 0.157)], 0.638, 1.889, 0.666),
    (0.6, [((1, 2), 0.298), ((0, 2), 0.216), ((2, 2), 0.187)], 0.701, 1.816, 0.477),
    (0.7, [((1, 2), 0.268), ((0, 2), 0.242), ((2, 2), 0.200)], 0.710, 1.825, 0.330),
    (0.8, [((0, 2), 0.252), ((1, 2), 0.241), ((2, 2), 0.202)], 0.695, 1.845, 0.240),
    (0.9, [((0, 2), 0.256), ((1, 2), 0.221), ((2, 2), 0.200)], 0.677, 1.862, 0.185),
    (1.0, [((0, 2), 0.257), ((1, 2), 0.207), ((2, 2), 0.198)], 0.662, 1.873, 0.149),
];

/// Ground-state study of the nondegenerate Hamiltonian: dominant triples,
/// dominance ratio, Wehrl entropy and ground-state overlap on the λ-grid
/// 0.0 .. 1.0, plus refined crossing boundaries from a 100-point scan.
pub fn table3(cell_tol: Option<f64>) -> Result<Table3Report> {
    let tol = cell_tol.unwrap_or(crate::DEFAULT_CELL_TOL);
    let family = default_family();
    let g0 = ground_projector(&scenarios::ground_state_hamiltonian(0.0), 1e-9)?
        .vector
        .expect("zero-coupling ground level is simple");

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (lambda, expected_cells, expected_ratio, expected_entropy, expected_overlap) in
        TABLE3_EXPECTED
    {
        let ground = ground_projector(&scenarios::ground_state_hamiltonian(lambda), 1e-9)?;
        let vector = ground.vector.clone().expect("simple ground level");
        let theta = ground.analysis_operator();
        let q = q_function(&family, &theta)?;
        let ratio = dominance_ratio(&q)?;
        let entropy = wehrl_entropy(&q)?;
        let overlap = (g0.adjoint() * &vector)[(0, 0)].norm_sqr();

        let context = format!("λ = {lambda}");
        for (label, value) in expected_cells {
            check_dominant_cell(&q, label, value, tol, &context, &mut failures);
        }
        check_cell(ratio, expected_ratio, tol, &format!("{context} ratio"), &mut failures);
        check_cell(entropy, expected_entropy, tol, &format!("{context} entropy"), &mut failures);
        check_cell(overlap, expected_overlap, tol, &format!("{context} overlap"), &mut failures);

        rows.push(Table3Row {
            lambda,
            dominant: q
                .dominant_points()
                .into_iter()
                .map(|p| (table_label(p), q.value(p)))
                .collect(),
            ratio,
            entropy,
            overlap,
        });
    }

    // Entropy has a local maximum near 0.3 and a local minimum near 0.6.
    let e: Vec<f64> = rows.iter().map(|r| r.entropy).collect();
    if !(e[3] > e[2] && e[3] > e[4]) {
        failures.push("entropy lacks the local maximum at λ = 0.3".into());
    }
    if !(e[6] < e[5] && e[6] < e[7]) {
        failures.push("entropy lacks the local minimum at λ = 0.6".into());
    }

    let path = OperatorPath::sampled(
        |lambda| {
            ground_projector(&scenarios::ground_state_hamiltonian(lambda), 1e-9)
                .expect("Hermitian along the path")
                .projector
        },
        (0.0, 1.0),
        100,
    );
    let scan = scan_intervals(&family, &path, 1e-6)?;
    let boundaries: Vec<f64> = scan.crossings.iter().map(|c| c.lambda).collect();
    for target in [0.3, 0.4, 0.7] {
        if !boundaries.iter().any(|b| (b - target).abs() <= 0.08) {
            failures.push(format!("no crossing detected within 0.08 of λ ≈ {target}"));
        }
    }

    Ok(Table3Report {
        rows,
        boundaries,
        warnings: scan.warnings,
        failures,
    })
}

// ---------------------------------------------------------------------------
// table 4
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct Table4Row {
    pub lambda: String,
    pub eigenvalues: Vec<f64>,
    pub multiplicity: usize,
    pub dominant: Vec<((usize, usize), f64)>,
    pub entropy: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table4Report {
    pub rows: Vec<Table4Row>,
    /// |⟨g(0.01i)|g(0.01)⟩|².
    pub cross_overlap: f64,
    pub failures: Vec<String>,
}

impl Table4Report {
    pub fn matched(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn csv(&self) -> String {
        let mut out = String::from(
            "lambda,e1,e2,e3,q9_point,q9,q8_point,q8,q7_point,q7,entropy\n",
        );
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                row.lambda,
                row.eigenvalues[0],
                row.eigenvalues[1],
                row.eigenvalues[2],
                fmt_point(row.dominant[0].0),
                row.dominant[0].1,
                fmt_point(row.dominant[1].0),
                row.dominant[1].1,
                fmt_point(row.dominant[2].0),
                row.dominant[2].1,
                row.entropy,
            ));
        }
        out
    }
}

/// Expected rows. The λ = 0 entropy prints as 2.088 in the reference table;
/// the value reproducible from the degenerate eigenspace is 2.0088 (the
/// printed figure drops a digit) and is pinned here.
#[allow(clippy::type_complexity)]
const TABLE4_EXPECTED: [(&str, [f64; 3], [((usize, usize), f64); 3], f64); 5] = [
    (
        "-0.01",
        [0.494, 0.509, 6.495],
        [((0, 1), 0.194), ((0, 2), 0.194), ((1, 1), 0.163)],
        1.960,
    ),
    (
        "0",
        [0.5, 0.5, 6.5],
        [((1, 1), 0.160), ((1, 2), 0.160), ((2, 1), 0.155)],
        2.0088,
    ),
    (
        "0.01",
        [0.490, 0.505, 6.505],
        [((2, 1), 0.218), ((2, 2), 0.218), ((1, 1), 0.155)],
        1.890,
    ),
    (
        "-0.01i",
        [0.492, 0.507, 6.500],
        [((2, 2), 0.292), ((1, 2), 0.291), ((0, 2), 0.255)],
        1.627,
    ),
    (
        "0.01i",
        [0.493, 0.507, 6.500],
        [((2, 1), 0.292), ((1, 1), 0.291), ((0, 1), 0.255)],
        1.627,
    ),
];

fn table4_lambda(tag: &str) -> Complex {
    match tag {
        "-0.01" => Complex::new(-0.01, 0.0),
        "0" => Complex::new(0.0, 0.0),
        "0.01" => Complex::new(0.01, 0.0),
        "-0.01i" => Complex::new(0.0, -0.01),
        "0.01i" => Complex::new(0.0, 0.01),
        _ => unreachable!(),
    }
}

/// Degenerate-Hamiltonian study: spectra, dominant triples and entropies of
/// the ground analysis operator at the five couplings, plus the overlap
/// between the two λ-direction ground states.
pub fn table4(cell_tol: Option<f64>) -> Result<Table4Report> {
    let tol = cell_tol.unwrap_or(crate::DEFAULT_CELL_TOL);
    let family = default_family();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut ground_vectors = std::collections::HashMap::new();

    for (tag, expected_eigen, expected_cells, expected_entropy) in TABLE4_EXPECTED {
        let lambda = table4_lambda(tag);
        let h = scenarios::degenerate_hamiltonian(lambda);
        let ground = ground_projector(&h, 1e-6)?;
        if let Some(v) = &ground.vector {
            ground_vectors.insert(tag, v.clone());
        }
        let theta = ground.analysis_operator();
        let q = q_function(&family, &theta)?;
        let entropy = wehrl_entropy(&q)?;

        let context = format!("λ = {tag}");
        for (k, e) in expected_eigen.iter().enumerate() {
            check_cell(ground.eigenvalues[k], *e, tol, &format!("{context} eigenvalue"), &mut failures);
        }
        for (label, value) in expected_cells {
            check_dominant_cell(&q, label, value, tol, &context, &mut failures);
        }
        check_cell(entropy, expected_entropy, tol, &format!("{context} entropy"), &mut failures);
        if tag == "0" && ground.multiplicity != 2 {
            failures.push("λ = 0 ground level is not two-fold degenerate".into());
        }

        rows.push(Table4Row {
            lambda: tag.to_string(),
            eigenvalues: ground.eigenvalues.clone(),
            multiplicity: ground.multiplicity,
            dominant: q
                .dominant_points()
                .into_iter()
                .map(|p| (table_label(p), q.value(p)))
                .collect(),
            entropy,
        });
    }

    let gi = &ground_vectors["0.01i"];
    let gr = &ground_vectors["0.01"];
    let cross_overlap = (gi.adjoint() * gr)[(0, 0)].norm_sqr();
    if (cross_overlap - 0.5).abs() > 0.01 {
        failures.push(format!(
            "cross overlap {cross_overlap:.4} leaves the band 0.5 ± 0.01"
        ));
    }

    Ok(Table4Report {
        rows,
        cross_overlap,
        failures,
    })
}
