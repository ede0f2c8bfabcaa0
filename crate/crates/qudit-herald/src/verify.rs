//! Self-check suites behind the `verify` command.
//!
//! Each suite bundles related invariants into named checks. A check never
//! panics; unexpected errors are reported as failures so the command can
//! always print a full report and exit nonzero on any red line.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use nalgebra::Matrix4;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::corpus_documents;
use crate::elements::{apply_bs, apply_hwp45, apply_pbs, run_circuit_at};
use crate::metrics::{efficiency, fidelity, herald_failure};
use crate::netlist::{parse_netlist, print_netlist};
use crate::scattering::{
    reflection_coefficient, ReflectionCoefficients, ScatteringError, ScatteringParams,
};
use crate::schemes::{
    apply_x_gate, apply_z_gate, compose_table2_at, direct_circuit, encoded_amplitude,
    generate_entangled_at, ideal_state, ideal_state_on, table2_operation, SchemeSpec, TABLE2,
};
use crate::state::{HybridState, RegisterLayout};

/// One named invariant with its outcome.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// All checks of one suite plus its wall-clock time.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<CheckResult>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let good = self.checks.iter().filter(|c| c.passed).count();
        writeln!(
            f,
            "suite {}: {}/{} passed ({:.2} s)",
            self.suite,
            good,
            self.checks.len(),
            self.seconds
        )?;
        for check in &self.checks {
            let tag = if check.passed { "[PASS]" } else { "[FAIL]" };
            writeln!(f, "  {tag} {}: {}", check.name, check.detail)?;
        }
        Ok(())
    }
}

/// Which suite to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Gates,
    Table2,
    Oracle,
    Props,
    Corpus,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        match s {
            "all" => Ok(Suite::All),
            "gates" => Ok(Suite::Gates),
            "table2" => Ok(Suite::Table2),
            "oracle" => Ok(Suite::Oracle),
            "props" => Ok(Suite::Props),
            "corpus" => Ok(Suite::Corpus),
            other => Err(format!(
                "unknown suite {other:?} (expected all, gates, table2, oracle, props, corpus)"
            )),
        }
    }
}

/// Reflection model used by the oracle suite for the circuit side. The
/// closed-form side always uses the true model, so substituting a broken
/// function here must turn the suite red.
pub type ReflectFn = fn(&ScatteringParams) -> Result<ReflectionCoefficients, ScatteringError>;

/// Run one suite (or, for [`Suite::All`], every suite in order).
pub fn run_suite(suite: Suite) -> Vec<SuiteReport> {
    match suite {
        Suite::All => run_all_suites(),
        Suite::Gates => vec![gates_suite()],
        Suite::Table2 => vec![table2_suite()],
        Suite::Oracle => vec![oracle_suite()],
        Suite::Props => vec![props_suite()],
        Suite::Corpus => vec![corpus_suite()],
    }
}

pub fn run_all_suites() -> Vec<SuiteReport> {
    vec![
        gates_suite(),
        table2_suite(),
        oracle_suite(),
        props_suite(),
        corpus_suite(),
        detuned_suite(),
    ]
}

fn check<F>(checks: &mut Vec<CheckResult>, name: &str, f: F)
where
    F: FnOnce() -> Result<(bool, String), String>,
{
    let (passed, detail) = match f() {
        Ok(pair) => pair,
        Err(message) => (false, message),
    };
    checks.push(CheckResult {
        name: name.to_string(),
        passed,
        detail,
    });
}

fn finish(suite: &'static str, checks: Vec<CheckResult>, start: Instant) -> SuiteReport {
    SuiteReport {
        suite,
        checks,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn shift_matrix() -> Matrix4<C64> {
    // |l> -> |l+1 mod 4| as a matrix on column vectors
    Matrix4::from_fn(|row, col| {
        if row == (col + 1) % 4 {
            C64::new(1.0, 0.0)
        } else {
            C64::ZERO
        }
    })
}

fn phase_matrix() -> Matrix4<C64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(
        C64::new(1.0, 0.0),
        C64::new(0.0, 1.0),
        C64::new(-1.0, 0.0),
        C64::new(0.0, -1.0),
    ))
}

fn matrix_deviation(a: &Matrix4<C64>, b: &Matrix4<C64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn state_deviation(a: &HybridState, b: &HybridState) -> Result<f64, String> {
    if a.dim() != b.dim() {
        return Err(format!("dimension mismatch: {} vs {}", a.dim(), b.dim()));
    }
    Ok(a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}

fn bound(passed: bool, what: &str, dev: f64, tol: f64) -> (bool, String) {
    (passed, format!("{what} {dev:.2e} (tolerance {tol:.0e})"))
}

/// Gate algebra: closed matrix identities and their physical circuits.
pub fn gates_suite() -> SuiteReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    let x = shift_matrix();
    let z = phase_matrix();
    let id = Matrix4::identity();
    let i = C64::new(0.0, 1.0);

    check(&mut checks, "X^4 = I and Z^4 = I", || {
        let dev = matrix_deviation(&(x * x * x * x), &id)
            .max(matrix_deviation(&(z * z * z * z), &id));
        Ok(bound(dev < 1e-14, "max deviation", dev, 1e-14))
    });
    check(&mut checks, "Z X = i X Z", || {
        let dev = matrix_deviation(&(z * x), &(x * z * i));
        Ok(bound(dev < 1e-14, "max deviation", dev, 1e-14))
    });
    check(&mut checks, "X^3 = X^dag and Z^3 = Z^dag", || {
        let dev = matrix_deviation(&(x * x * x), &x.adjoint())
            .max(matrix_deviation(&(z * z * z), &z.adjoint()));
        Ok(bound(dev < 1e-14, "max deviation", dev, 1e-14))
    });
    check(&mut checks, "shift then unshift circuit at r = -1", || {
        let coeffs = ReflectionCoefficients::ideal();
        let spec = SchemeSpec::direct(4, 3, 0).map_err(|e| e.to_string())?;
        let input = ideal_state(&spec).map_err(|e| e.to_string())?;
        let mut worst: f64 = 0.0;
        for m in 1..4usize {
            let forward = apply_x_gate(&input, 3, m, &coeffs).map_err(|e| e.to_string())?;
            let back = apply_x_gate(&forward, 3, 4 - m, &coeffs).map_err(|e| e.to_string())?;
            let reference = ideal_state_on(back.layout(), &spec).map_err(|e| e.to_string())?;
            worst = worst.max(state_deviation(&back, &reference)?);
        }
        Ok(bound(worst < 1e-12, "max amplitude deviation", worst, 1e-12))
    });
    check(&mut checks, "photon Z commutes with the emitter shift", || {
        // the two circuits address different qudits, so order is irrelevant
        let coeffs = ReflectionCoefficients::ideal();
        let spec = SchemeSpec::direct(4, 3, 0).map_err(|e| e.to_string())?;
        let input = ideal_state(&spec).map_err(|e| e.to_string())?;
        let zx = apply_z_gate(&apply_x_gate(&input, 3, 1, &coeffs).map_err(|e| e.to_string())?, 1)
            .map_err(|e| e.to_string())?;
        let xz = apply_x_gate(&apply_z_gate(&input, 1).map_err(|e| e.to_string())?, 3, 1, &coeffs)
            .map_err(|e| e.to_string())?;
        let dev = state_deviation(&zx, &xz)?;
        Ok(bound(dev < 1e-12, "max amplitude deviation", dev, 1e-12))
    });
    check(&mut checks, "four phase stages compose to the identity", || {
        let spec = SchemeSpec::direct(4, 2, 0).map_err(|e| e.to_string())?;
        let input = ideal_state(&spec).map_err(|e| e.to_string())?;
        let mut state = input.clone();
        for _ in 0..4 {
            state = apply_z_gate(&state, 1).map_err(|e| e.to_string())?;
        }
        let dev = state_deviation(&state, &input)?;
        Ok(bound(dev < 1e-14, "max amplitude deviation", dev, 1e-14))
    });

    finish("gates", checks, start)
}

/// The 64 stored compositions: every target reached at r = -1 and the
/// printed operations consistent with the closed rule.
pub fn table2_suite() -> SuiteReport {
    let start = Instant::now();
    let mut checks = Vec::new();

    check(&mut checks, "all 64 compositions reach their targets", || {
        let coeffs = ReflectionCoefficients::ideal();
        let mut worst: f64 = 0.0;
        let mut reached = 0usize;
        for k in 0..4usize {
            for p in 0..4usize {
                for q in 0..4usize {
                    let out = compose_table2_at(k, p, q, &coeffs).map_err(|e| e.to_string())?;
                    let spec = SchemeSpec::composed(k, p, q).map_err(|e| e.to_string())?;
                    let target = ideal_state_on(out.layout(), &spec).map_err(|e| e.to_string())?;
                    let dev = state_deviation(&out, &target)?;
                    worst = worst.max(dev);
                    if dev < 1e-12 {
                        reached += 1;
                    }
                }
            }
        }
        if reached == 64 {
            Ok((true, "64/64 Table-2 targets reached, max deviation < 1e-12".into()))
        } else {
            Ok((
                false,
                format!("{reached}/64 targets reached, max deviation {worst:.2e}"),
            ))
        }
    });
    check(&mut checks, "stored operations match the closed rule", || {
        let mut bad = Vec::new();
        for k in 0..4usize {
            for p in 0..4usize {
                for q in 0..4usize {
                    let stored = TABLE2[k][p * 4 + q];
                    let rule = table2_operation(k, p, q);
                    if stored != rule {
                        bad.push(format!("(k={k},p={p},q={q}): {stored} vs {rule}"));
                    }
                }
            }
        }
        if bad.is_empty() {
            Ok((true, "64/64 cells equal X^((q-p) mod 4) then Z^k".into()))
        } else {
            Ok((false, bad.join("; ")))
        }
    });

    finish("table2", checks, start)
}

fn oracle_schemes() -> Vec<SchemeSpec> {
    let mut specs = Vec::new();
    for n in 2..=5usize {
        for b in 0..4usize {
            specs.push(SchemeSpec::direct(4, n, b).expect("valid spec"));
        }
    }
    for b in 0..8usize {
        specs.push(SchemeSpec::direct(8, 2, b).expect("valid spec"));
    }
    specs
}

/// Closed-form output of a generation circuit: amplitude
/// (1/sqrt d) (-r)^((n-1) w(tau)) on |l>|tau..tau>, tau = (l+b) mod d.
fn law_state(spec: &SchemeSpec, layout: &Arc<RegisterLayout>, r: C64) -> Result<HybridState, String> {
    let enc = spec.encoding();
    let mut expected = HybridState::zero(layout.clone());
    let scale = 1.0 / (spec.d as f64).sqrt();
    for l in 0..spec.d {
        let (pol, path) = enc.photon_slot(l).map_err(|e| e.to_string())?;
        let tau = (l + spec.base) % spec.d;
        let bits = enc
            .emitter_bits(&vec![tau; spec.n - 1])
            .map_err(|e| e.to_string())?;
        let w = (tau.count_ones() as usize) * (spec.n - 1);
        *expected.amplitude_mut(pol, path, bits) = (-r).powu(w as u32) * scale;
    }
    Ok(expected)
}

pub fn oracle_suite() -> SuiteReport {
    oracle_suite_with_reflection(reflection_coefficient)
}

/// Element-level circuits against the closed-form law at random operating
/// points. `reflect` feeds the circuit; the law always uses the true
/// reflection model.
pub fn oracle_suite_with_reflection(reflect: ReflectFn) -> SuiteReport {
    let start = Instant::now();
    let mut checks = Vec::new();

    for spec in oracle_schemes() {
        let name = format!("d{} n{} b{} circuit = closed-form law", spec.d, spec.n, spec.base);
        check(&mut checks, &name, || {
            let seed = 0x51EED ^ (spec.d as u64 * 1009) ^ (spec.n as u64 * 101) ^ (spec.base as u64 * 7);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (circuit, initial) = direct_circuit(&spec).map_err(|e| e.to_string())?;
            let mut worst: f64 = 0.0;
            for _ in 0..20 {
                let purcell = 10f64.powf(rng.gen::<f64>() * 2.0);
                let detuning = rng.gen::<f64>() * 0.2;
                let params =
                    ScatteringParams::new(purcell, detuning).map_err(|e| e.to_string())?;
                let coeffs = reflect(&params).map_err(|e| e.to_string())?;
                let state =
                    run_circuit_at(&circuit, &coeffs, &initial).map_err(|e| e.to_string())?;
                let truth = reflection_coefficient(&params).map_err(|e| e.to_string())?;
                let expected = law_state(&spec, circuit.layout(), truth.r)?;
                worst = worst.max(state_deviation(&state, &expected)?);
            }
            Ok(bound(
                worst < 1e-12,
                "20 random points, max amplitude deviation",
                worst,
                1e-12,
            ))
        });
    }

    finish("oracle", checks, start)
}

fn scrambled_state() -> Result<HybridState, String> {
    let layout = Arc::new(
        RegisterLayout::from_names(&["a1", "a2", "w"], &["a", "b"]).map_err(|e| e.to_string())?,
    );
    let mut state = HybridState::zero(layout.clone());
    let dim = state.dim();
    for i in 0..dim {
        let c = layout.decode(i);
        *state.amplitude_mut(c.pol, c.path, c.bits) = C64::new(
            (0.37 * i as f64 + 0.2).sin(),
            (0.61 * i as f64).cos(),
        ) / (dim as f64).sqrt();
    }
    Ok(state)
}

/// Structural invariants: element involutions, unitarity, norm behavior,
/// monotonicity, and netlist round-trips.
pub fn props_suite() -> SuiteReport {
    let start = Instant::now();
    let mut checks = Vec::new();

    check(&mut checks, "BS and HWP are involutions", || {
        let state = scrambled_state()?;
        let bs2 = apply_bs(
            &apply_bs(&state, "a1", "a2").map_err(|e| e.to_string())?,
            "a1",
            "a2",
        )
        .map_err(|e| e.to_string())?;
        let hwp2 = apply_hwp45(
            &apply_hwp45(&state, "a1").map_err(|e| e.to_string())?,
            "a1",
        )
        .map_err(|e| e.to_string())?;
        let dev = state_deviation(&bs2, &state)?.max(state_deviation(&hwp2, &state)?);
        Ok(bound(dev < 1e-12, "max amplitude deviation", dev, 1e-12))
    });
    check(&mut checks, "PBS preserves norm and inverts itself", || {
        let state = scrambled_state()?;
        let once = apply_pbs(&state, "a1", "w", "a1", "w").map_err(|e| e.to_string())?;
        let norm_dev = (once.norm_sqr() - state.norm_sqr()).abs();
        let twice = apply_pbs(&once, "a1", "w", "a1", "w").map_err(|e| e.to_string())?;
        let dev = state_deviation(&twice, &state)?.max(norm_dev);
        Ok(bound(dev < 1e-12, "max deviation", dev, 1e-12))
    });
    check(&mut checks, "reflection stays inside the unit budget", || {
        let mut ok = true;
        let mut worst: f64 = 0.0;
        for &p in &[0.3, 1.0, 5.0, 25.0, 40.0, 100.0, 1e4] {
            for &d in &[0.0, 0.02, 0.05, 0.1, 0.2] {
                let rc = reflection_coefficient(
                    &ScatteringParams::new(p, d).map_err(|e| e.to_string())?,
                )
                .map_err(|e| e.to_string())?;
                let budget = rc.r.norm_sqr() + rc.t.norm_sqr();
                worst = worst.max(budget);
                ok &= budget < 1.0 && rc.r.norm() < 1.0;
            }
        }
        Ok((ok, format!("max |r|^2 + |t|^2 = {worst:.6} over the grid")))
    });
    check(&mut checks, "reflectance monotonic in P and |detuning|", || {
        let ps = [0.5, 1.0, 2.0, 5.0, 10.0, 40.0, 100.0];
        let mut ok = true;
        for pair in ps.windows(2) {
            let lo = reflection_coefficient(
                &ScatteringParams::new(pair[0], 0.07).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?
            .r
            .norm_sqr();
            let hi = reflection_coefficient(
                &ScatteringParams::new(pair[1], 0.07).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?
            .r
            .norm_sqr();
            ok &= hi > lo;
        }
        let ds = [0.0, 0.02, 0.05, 0.1, 0.2];
        for pair in ds.windows(2) {
            let lo = reflection_coefficient(
                &ScatteringParams::new(40.0, pair[0]).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?
            .r
            .norm_sqr();
            let hi = reflection_coefficient(
                &ScatteringParams::new(40.0, pair[1]).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?
            .r
            .norm_sqr();
            ok &= hi < lo;
        }
        Ok((ok, "|r|^2 rises with P, falls with |detuning|".into()))
    });
    check(&mut checks, "norm never grows along a circuit", || {
        let spec = SchemeSpec::direct(4, 2, 0).map_err(|e| e.to_string())?;
        let (circuit, initial) = direct_circuit(&spec).map_err(|e| e.to_string())?;
        let coeffs = reflection_coefficient(
            &ScatteringParams::new(7.0, 0.04).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let mut state = initial;
        let mut previous = state.norm_sqr();
        let mut ok = true;
        for element in circuit.elements() {
            let partial = crate::elements::Circuit::new(
                circuit.layout().clone(),
                vec![element.clone()],
            )
            .map_err(|e| e.to_string())?;
            state = run_circuit_at(&partial, &coeffs, &state).map_err(|e| e.to_string())?;
            let now = state.norm_sqr();
            ok &= now <= previous + 1e-12;
            previous = now;
        }
        Ok((ok, format!("final norm^2 = {previous:.6}")))
    });
    check(&mut checks, "fidelity nondecreasing in P on resonance", || {
        let spec = SchemeSpec::direct(4, 2, 0).map_err(|e| e.to_string())?;
        let ideal = ideal_state(&spec).map_err(|e| e.to_string())?;
        let mut last = -1.0f64;
        let mut ok = true;
        for &p in &[1.0, 5.0, 10.0, 20.0, 40.0, 80.0] {
            let coeffs = reflection_coefficient(
                &ScatteringParams::new(p, 0.0).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            let raw = generate_entangled_at(&spec, &coeffs).map_err(|e| e.to_string())?;
            let f = fidelity(&raw, &ideal).map_err(|e| e.to_string())?;
            ok &= f >= last - 1e-12;
            last = f;
        }
        Ok((ok, format!("fidelity reaches {last:.6} at P = 80")))
    });
    check(&mut checks, "netlist print/parse is a fixed point", || {
        let mut worst_name = String::new();
        for (name, doc) in corpus_documents().map_err(|e| e.to_string())? {
            let text = print_netlist(&doc);
            let reparsed = parse_netlist(&text).map_err(|e| format!("{name}: {e}"))?;
            if print_netlist(&reparsed) != text {
                worst_name = name.to_string();
            }
        }
        if worst_name.is_empty() {
            Ok((true, "all bundled documents reparse to themselves".into()))
        } else {
            Ok((false, format!("{worst_name} drifts under print/parse")))
        }
    });
    check(&mut checks, "amplitude multiset independent of base shift", || {
        let coeffs = reflection_coefficient(
            &ScatteringParams::new(13.0, 0.03).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let mut reference: Option<Vec<u64>> = None;
        let mut ok = true;
        for b in 0..4usize {
            let spec = SchemeSpec::direct(4, 2, b).map_err(|e| e.to_string())?;
            let state = generate_entangled_at(&spec, &coeffs).map_err(|e| e.to_string())?;
            let mut magnitudes: Vec<u64> = state
                .amplitudes()
                .iter()
                .filter(|a| a.norm() > 1e-13)
                .map(|a| (a.norm() * 1e12).round() as u64)
                .collect();
            magnitudes.sort_unstable();
            match &reference {
                None => reference = Some(magnitudes),
                Some(r) => ok &= r == &magnitudes,
            }
        }
        Ok((ok, "the base shift only permutes amplitudes".into()))
    });

    finish("props", checks, start)
}

/// The bundled documents replay their builders and herald exact targets.
pub fn corpus_suite() -> SuiteReport {
    let start = Instant::now();
    let mut checks = Vec::new();

    check(&mut checks, "documents herald exact targets at r = -1", || {
        let coeffs = ReflectionCoefficients::ideal();
        let mut worst: f64 = 0.0;
        for (name, doc) in corpus_documents().map_err(|e| e.to_string())? {
            let (_, metrics) = doc.execute(&coeffs).map_err(|e| format!("{name}: {e}"))?;
            let metrics = metrics.ok_or_else(|| format!("{name}: no measure target"))?;
            worst = worst.max((metrics.fidelity - 1.0).abs());
        }
        Ok(bound(worst < 1e-12, "max |1 - fidelity|", worst, 1e-12))
    });
    check(&mut checks, "pair generation at P = 40 weights branches by r", || {
        let coeffs = reflection_coefficient(
            &ScatteringParams::new(40.0, 0.0).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let docs = corpus_documents().map_err(|e| e.to_string())?;
        let (_, doc) = docs
            .iter()
            .find(|(n, _)| *n == "fig2_q0")
            .ok_or("fig2_q0 missing")?;
        let (state, _) = doc.execute(&coeffs).map_err(|e| e.to_string())?;
        let rho: f64 = 40.0 / 41.0;
        let mut worst: f64 = 0.0;
        for l in 0..4usize {
            let amp = encoded_amplitude(&state, 4, l, &[l]).map_err(|e| e.to_string())?;
            let want = C64::new(rho.powi(l.count_ones() as i32) / 2.0, 0.0);
            worst = worst.max((amp - want).norm());
        }
        Ok(bound(worst < 1e-12, "max amplitude deviation", worst, 1e-12))
    });

    finish("corpus", checks, start)
}

/// Detuned operating point: the circuit must match its own closed form;
/// the difference from the quoted percentages is reported, not patched.
pub fn detuned_suite() -> SuiteReport {
    let start = Instant::now();
    let mut checks = Vec::new();

    check(&mut checks, "detuned point matches the closed form", || {
        let spec = SchemeSpec::direct(4, 2, 0).map_err(|e| e.to_string())?;
        let params = ScatteringParams::new(25.0, 0.05).map_err(|e| e.to_string())?;
        let coeffs = reflection_coefficient(&params).map_err(|e| e.to_string())?;
        let raw = generate_entangled_at(&spec, &coeffs).map_err(|e| e.to_string())?;
        let ideal = ideal_state(&spec).map_err(|e| e.to_string())?;
        let f = fidelity(&raw, &ideal).map_err(|e| e.to_string())?;
        let e = efficiency(&raw, &ideal).map_err(|e| e.to_string())?;
        let _hf = herald_failure(&raw).map_err(|e| e.to_string())?;
        let rho = -coeffs.r;
        let one = C64::new(1.0, 0.0);
        let f_closed =
            (one + rho).norm_sqr().powi(2) / (4.0 * (1.0 + rho.norm_sqr()).powi(2));
        let matches = (f - f_closed).abs() < 1e-6;
        Ok((
            matches,
            format!(
                "P=25, detuning=0.05: F={f:.5}, E={e:.5} (closed form F={f_closed:.5}); \
                 known discrepancy: the quoted operating-point values F=98.23%, E=91.70% \
                 are not reproduced by this reflection model"
            ),
        ))
    });

    finish("detuned", checks, start)
}
