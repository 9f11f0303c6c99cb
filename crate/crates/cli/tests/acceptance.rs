//! Acceptance suite. Runs each criterion in isolation and prints one
//! `PASS`/`FAIL` line per criterion; exits nonzero if any fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spin_hierarchy::eigen::EigSettings;
use spin_hierarchy::gate::exp_from_eig;
use spin_hierarchy::spin::{square_trace_value, trace_power};
use spin_hierarchy::{
    build_cyclic, build_heisenberg, certify_spin, closed_form_spectrum, cluster_spectrum, default_cluster_tol,
    frobenius_distance, gate_fidelity, hermitian_eig, make_spin_triple, matmul, moments, newton_check,
    synthesize_gate, trace, verify_eigenpair, verify_su2, CMatrix, Complex, EigDecomposition, Gate, HalfInteger,
};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn spin(twice: u32) -> HalfInteger {
    HalfInteger::new(twice).unwrap()
}

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn dist(a: &CMatrix, b: &CMatrix) -> f64 {
    frobenius_distance(a, b).unwrap()
}

fn clusters_of(m: &CMatrix) -> Vec<(f64, usize)> {
    let e = hermitian_eig(m, 1e-12).unwrap();
    cluster_spectrum(&e.values, default_cluster_tol(m)).clusters.iter().map(|c| (c.value, c.multiplicity)).collect()
}

fn same_clusters(got: &[(f64, usize)], want: &[(f64, usize)], tol: f64) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|((gv, gm), (wv, wm))| (gv - wv).abs() <= tol && gm == wm)
}

fn golden_matrices() -> Check {
    let h_gold = CMatrix::from_real_rows(&[
        vec![1.0, 0.0, 0.0, 0.0],
        vec![0.0, -1.0, 2.0, 0.0],
        vec![0.0, 2.0, -1.0, 0.0],
        vec![0.0, 0.0, 0.0, 1.0],
    ])
    .unwrap()
    .scale_real(0.25);
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    let k_gold = CMatrix::from_rows(&[vec![o, l, -i, -i], vec![l, o, i, i], vec![i, -i, o, -l], vec![i, -i, -l, o]])
        .unwrap()
        .scale_real(0.25);
    let mut worst: f64 = 0.0;
    for (built, gold) in [(build_heisenberg(HalfInteger::HALF), &h_gold), (build_cyclic(HalfInteger::HALF), &k_gold)] {
        let m = built.matrix();
        for r in 0..4 {
            for col in 0..4 {
                let d = (m[(r, col)] - gold[(r, col)]).norm();
                ensure!(d <= 1e-14, "{} entry ({r},{col}) off by {d:e}", built.kind());
                worst = worst.max(d);
            }
        }
    }
    Ok(format!("max entry error {worst:e}"))
}

fn tabulated_spectra() -> Check {
    let table: [(u32, Vec<(f64, usize)>); 3] = [
        (1, vec![(-0.75, 1), (0.25, 3)]),
        (2, vec![(-2.0, 1), (-1.0, 3), (1.0, 5)]),
        (4, vec![(-6.0, 1), (-5.0, 3), (-3.0, 5), (0.0, 7), (4.0, 9)]),
    ];
    for (twice, want) in &table {
        let s = spin(*twice);
        for h in [build_heisenberg(s), build_cyclic(s)] {
            let got = clusters_of(h.matrix());
            ensure!(same_clusters(&got, want, 1e-9), "{} s={s}: {got:?}", h.kind());
        }
    }
    Ok("s = 1/2, 1, 2 for H and K".into())
}

fn spin_three_halves() -> Check {
    let s = spin(3);
    let want = [(-3.75, 1), (-2.75, 3), (-0.75, 5), (2.25, 7)];
    for h in [build_heisenberg(s), build_cyclic(s)] {
        let got = clusters_of(h.matrix());
        ensure!(same_clusters(&got, &want, 1e-9), "{} computed {got:?}", h.kind());
        ensure!(got.iter().map(|c| c.1).sum::<usize>() == 16, "multiplicities do not sum to 16");
    }
    let oracle = closed_form_spectrum(s);
    let oracle: Vec<(f64, usize)> = oracle.clusters.iter().map(|c| (c.value, c.multiplicity)).collect();
    ensure!(same_clusters(&oracle, &want, 1e-12), "closed form {oracle:?}");
    Ok("multiplicities 1,3,5,7 (9/4 has 7, not 1)".into())
}

fn moment_identity() -> Check {
    let eig = EigSettings::default();
    let mut worst: f64 = 0.0;
    for twice in 1..=8 {
        let s = spin(twice);
        let d = s.dimension();
        let r = certify_spin(s, Some(d * d), 1e-8, &eig).map_err(|e| format!("s={s}: {e}"))?;
        ensure!(r.moments.powers.len() == d * d, "s={s}: only {} powers", r.moments.powers.len());
        ensure!(r.moments.pass, "s={s}: first mismatch at k={:?}", r.moments.first_mismatch().map(|i| i + 1));
        ensure!(r.moments.prefix_len == Some(d) && r.moments.prefix_pass == Some(true), "s={s}: prefix");
        worst = worst.max(r.moments.max_scaled_diff);
    }
    Ok(format!("k up to (2s+1)^2, max scaled diff {worst:e} (tol 1e-8)"))
}

fn algebra_suite() -> Check {
    for twice in 1..=12 {
        let s = spin(twice);
        let t = make_spin_triple(s);
        let r = verify_su2(&t, 1e-12);
        let bound = 1e-12 * r.dimension as f64;
        let identities = r
            .commutator
            .iter()
            .chain(std::iter::once(&r.casimir))
            .chain(&r.square_trace)
            .chain(&r.cross_trace)
            .chain(std::iter::once(&r.kron_cross_trace))
            .fold(0.0_f64, |a, &b| a.max(b));
        ensure!(identities <= bound, "s={s}: identity residual {identities:e} > {bound:e}");
        for (p, row) in &r.odd_power_trace {
            ensure!(row.iter().all(|&x| x <= 1e-10), "s={s}: tr(S^{p}) = {row:?}");
        }
    }
    // The even-power formula only holds at n = 2; n = 4 at s = 3/2 must disagree.
    let s = spin(3);
    let s3 = make_spin_triple(s).s3().clone();
    let formula = square_trace_value(s);
    let n2 = trace_power(&s3, 2).unwrap().re;
    let n4 = trace_power(&s3, 4).unwrap().re;
    ensure!((n2 - formula).abs() <= 1e-12, "n=2: {n2} vs {formula}");
    ensure!((n4 - 41.0 / 4.0).abs() <= 1e-12, "tr(S3^4) = {n4}");
    ensure!((n4 - formula).abs() > 1.0, "n=4 unexpectedly matches the n=2 formula");
    Ok(format!("2s <= 12; at s=3/2 tr(S3^4) = {n4} differs from {formula}"))
}

fn listed_eigenvectors() -> Check {
    let r = FRAC_1_SQRT_2;
    let h_vectors = [
        [c(0.0, 0.0), c(r, 0.0), c(-r, 0.0), c(0.0, 0.0)],
        [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(r, 0.0), c(r, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
    ];
    let k_vectors = [
        [c(0.5, 0.0), c(-0.5, 0.0), c(0.0, -0.5), c(0.0, -0.5)],
        [c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, r)],
        [c(0.0, 0.0), c(r, 0.0), c(0.0, 0.0), c(0.0, -r)],
        [c(0.0, 0.0), c(0.0, 0.0), c(r, 0.0), c(-r, 0.0)],
    ];
    let mut worst: f64 = 0.0;
    for (h, vs) in [(build_heisenberg(HalfInteger::HALF), &h_vectors), (build_cyclic(HalfInteger::HALF), &k_vectors)] {
        for (i, v) in vs.iter().enumerate() {
            let lambda = if i == 0 { -0.75 } else { 0.25 };
            let res = verify_eigenpair(h.matrix(), v, lambda).map_err(|e| e.to_string())?;
            ensure!(res <= 1e-10, "{} vector {i}: residual {res:e}", h.kind());
            worst = worst.max(res);
        }
    }
    Ok(format!("8 vectors, max residual {worst:e}"))
}

fn newton_identity() -> Check {
    for twice in 1..=6 {
        let s = spin(twice);
        for h in [build_heisenberg(s), build_cyclic(s)] {
            let n = h.dimension();
            let e = hermitian_eig(h.matrix(), 1e-12).map_err(|e| e.to_string())?;
            let traces = moments(h.matrix(), n).map_err(|e| e.to_string())?;
            ensure!(newton_check(&e.values, &traces, 1e-8), "{} s={s}", h.kind());
        }
    }
    Ok("k up to dim for 2s <= 6".into())
}

/// Σ (−iθM)^k / k!, summed until the terms vanish.
fn taylor_exp(m: &CMatrix, theta: f64) -> CMatrix {
    let a = m.scale(c(0.0, -theta));
    let mut term = CMatrix::identity(m.rows());
    let mut sum = term.clone();
    for k in 1..200 {
        term = matmul(&term, &a).unwrap().scale_real(1.0 / k as f64);
        sum = &sum + &term;
        if term.frobenius_norm() < 1e-18 {
            break;
        }
    }
    sum
}

fn gate_properties() -> Check {
    let mut worst_unitarity: f64 = 0.0;
    for twice in 1..=4 {
        let s = spin(twice);
        for h in [build_heisenberg(s), build_cyclic(s)] {
            let eig = hermitian_eig(h.matrix(), 1e-12).map_err(|e| e.to_string())?;
            for theta in [-2.3, 0.0, 0.7, PI, 5.1] {
                let g = synthesize_gate(&h, theta).map_err(|e| e.to_string())?;
                worst_unitarity = worst_unitarity.max(g.unitarity_residual());
                ensure!(g.unitarity_residual() <= 1e-10, "{} s={s} θ={theta}: unitarity", h.kind());
            }
            for (a, b) in [(0.3, 1.1), (-0.8, 2.5), (1.7, 1.7)] {
                let ga = synthesize_gate(&h, a).unwrap();
                let gb = synthesize_gate(&h, b).unwrap();
                let gab = synthesize_gate(&h, a + b).unwrap();
                let d = dist(ga.then_after(&gb).unwrap().matrix(), gab.matrix());
                ensure!(d <= 1e-9, "{} s={s}: group law off by {d:e}", h.kind());
            }
            let norm = h.matrix().frobenius_norm();
            for frac in [-1.0, -0.4, 0.5, 1.0] {
                let theta = 2.0 * frac / norm;
                let d = dist(&exp_from_eig(&eig, theta), &taylor_exp(h.matrix(), theta));
                ensure!(d <= 1e-9, "{} s={s} θ={theta}: Taylor mismatch {d:e}", h.kind());
            }
        }
    }

    let h = build_heisenberg(HalfInteger::HALF);
    let swap = CMatrix::from_real_rows(&[
        vec![1.0, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, 1.0, 0.0],
        vec![0.0, 1.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 1.0],
    ])
    .unwrap();
    let from_h = &h.matrix().scale_real(2.0) + &CMatrix::identity(4).scale_real(0.5);
    let d = dist(&from_h, &swap);
    ensure!(d <= 1e-12, "SWAP vs 2H + I/2: {d:e}");

    let full = synthesize_gate(&h, 2.0 * PI).unwrap();
    let expected = Gate::from_unitary(CMatrix::identity(4).scale(Complex::from_polar(1.0, -PI / 2.0))).unwrap();
    let f = gate_fidelity(&full, &expected).unwrap();
    ensure!(f >= 1.0 - 1e-9, "U_H(2π) fidelity {f}");
    let phase_err = (full.trace_phase() + PI / 2.0).abs();
    ensure!(phase_err <= 1e-9, "U_H(2π) phase off by {phase_err:e}");
    Ok(format!("max unitarity residual {worst_unitarity:e}, U_H(2π) fidelity {f}"))
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let mut rows = vec![vec![c(0.0, 0.0); n]; n];
    for i in 0..n {
        rows[i][i] = c(rng.gen_range(-1.0..1.0), 0.0);
        for j in i + 1..n {
            let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            rows[i][j] = z;
            rows[j][i] = z.conj();
        }
    }
    CMatrix::from_rows(&rows).unwrap()
}

fn contract(m: &CMatrix, e: &EigDecomposition) -> Result<(), String> {
    let n = m.rows() as f64;
    let norm = m.frobenius_norm().max(1.0);
    let rec = dist(&e.reconstruct(), m);
    if rec > 1e-9 * n * norm {
        return Err(format!("reconstruction {rec:e}"));
    }
    let orth = e.orthonormality_error();
    if orth > 1e-10 * n {
        return Err(format!("orthonormality {orth:e}"));
    }
    let sum: f64 = e.values.iter().sum();
    let tr = trace(m).unwrap().re;
    if (sum - tr).abs() > 1e-10 * n * norm {
        return Err(format!("trace {sum} vs {tr}"));
    }
    if e.values.windows(2).any(|w| w[0] > w[1]) {
        return Err("eigenvalues not ascending".into());
    }
    Ok(())
}

fn eigensolver_contract() -> Check {
    for twice in 1..=8 {
        let s = spin(twice);
        for h in [build_heisenberg(s), build_cyclic(s)] {
            let e = hermitian_eig(h.matrix(), 1e-12).map_err(|e| e.to_string())?;
            contract(h.matrix(), &e).map_err(|msg| format!("{} s={s}: {msg}", h.kind()))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..100 {
        let n = rng.gen_range(1..=32);
        let m = random_hermitian(&mut rng, n);
        let e = hermitian_eig(&m, 1e-12).map_err(|e| format!("case {case}: {e}"))?;
        contract(&m, &e).map_err(|msg| format!("random case {case} (dim {n}): {msg}"))?;
    }
    Ok("16 Hamiltonians and 100 random matrices".into())
}

fn tool(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_spin-tool")).args(args).env_remove("SPIN_TOOL_TOL").output().unwrap()
}

fn cli_contract() -> Check {
    let out = tool(&["table", "--max-spin", "2", "--format", "json"]);
    ensure!(out.status.code() == Some(0), "table exit {:?}", out.status.code());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let schema: serde_json::Value = serde_json::from_str(spin_tool::SCHEMA).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).map_err(|e| e.to_string())?;
    let errors: Vec<String> = match compiled.validate(&doc) {
        Ok(()) => Vec::new(),
        Err(it) => it.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    ensure!(errors.is_empty(), "schema violations: {errors:?}");
    let rows = doc["rows"].as_array().map_or(0, Vec::len);
    ensure!(rows == 4, "expected 4 rows, got {rows}");

    let write = |text: &str| {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    };
    let garbled = write("0 1 -i -i\n1 0 i i\ni -i 0 -1\ni -i -1 0.0.0\n");
    let code = tool(&["spectrum", "--hamiltonian", "file", "--file", garbled.path().to_str().unwrap()]).status.code();
    ensure!(code == Some(2), "unparsable file exit {code:?}");
    let skewed = write("0 1 -i -i\n1 0 i i\ni -i 0 -1\ni i -1 0\n");
    let code = tool(&["spectrum", "--hamiltonian", "file", "--file", skewed.path().to_str().unwrap()]).status.code();
    ensure!(code == Some(3), "non-Hermitian file exit {code:?}");
    Ok("table JSON valid; corrupted files exit 2 and 3".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("spin-1/2 golden matrices", golden_matrices),
        ("tabulated spectra", tabulated_spectra),
        ("spin-3/2 spectrum", spin_three_halves),
        ("moment identity", moment_identity),
        ("su(2) algebra", algebra_suite),
        ("spin-1/2 eigenvectors", listed_eigenvectors),
        ("Newton power sums", newton_identity),
        ("gate properties", gate_properties),
        ("eigensolver contract", eigensolver_contract),
        ("command-line tool", cli_contract),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
