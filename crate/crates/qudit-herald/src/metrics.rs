//! Figures of merit for heralded states.
//!
//! Raw circuit output is sub-normalized: its missing weight was heralded
//! away. Fidelity therefore conditions on success,
//! F = |<ideal|raw>|^2 / <raw|raw>, while efficiency keeps the herald in,
//! E = |<ideal|raw>|^2.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::scattering::heralded_failure_probability;
use crate::state::{inner_product, HybridState, StateError, StateResult};

/// Bipartition for a Schmidt decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cut {
    /// Photon (polarization and path) against all emitters.
    Photon,
    /// The listed emitters (by index) against the photon plus the rest.
    EmitterSubset(Vec<usize>),
}

/// Overlap-squared with the target, conditioned on the herald succeeding.
pub fn fidelity(raw: &HybridState, ideal: &HybridState) -> StateResult<f64> {
    let norm = raw.norm_sqr();
    if norm == 0.0 {
        return Err(StateError::ZeroNorm);
    }
    Ok(inner_product(ideal, raw)?.norm_sqr() / norm)
}

/// Overlap-squared with the target including the success probability.
pub fn efficiency(raw: &HybridState, ideal: &HybridState) -> StateResult<f64> {
    Ok(inner_product(ideal, raw)?.norm_sqr())
}

/// Probability that a herald fired along the way, one minus the surviving
/// weight.
pub fn herald_failure(raw: &HybridState) -> StateResult<f64> {
    heralded_failure_probability(raw)
}

fn partition_dims(state: &HybridState, cut: &Cut) -> StateResult<(usize, usize)> {
    let layout = state.layout();
    match cut {
        Cut::Photon => {
            let rows = 2 * layout.n_paths();
            Ok((rows, state.dim() / rows))
        }
        Cut::EmitterSubset(subset) => {
            for &e in subset {
                if e >= layout.n_emitters() {
                    return Err(StateError::UnknownEmitter(format!("index {e}")));
                }
            }
            let rows = 1usize << subset.len();
            Ok((rows, state.dim() >> subset.len()))
        }
    }
}

fn partition_index(state: &HybridState, cut: &Cut, flat: usize) -> (usize, usize) {
    let layout = state.layout();
    let component = state.layout().decode(flat);
    match cut {
        Cut::Photon => {
            let row = component.pol.bit() * layout.n_paths() + component.path;
            (row, component.bits)
        }
        Cut::EmitterSubset(subset) => {
            let mut row = 0usize;
            for &e in subset {
                row = (row << 1)
                    | ((component.bits >> (layout.n_emitters() - 1 - e)) & 1);
            }
            let mut rest = 0usize;
            for e in 0..layout.n_emitters() {
                if !subset.contains(&e) {
                    rest = (rest << 1)
                        | ((component.bits >> (layout.n_emitters() - 1 - e)) & 1);
                }
            }
            let slot = component.pol.bit() * layout.n_paths() + component.path;
            (row, slot * (1 << (layout.n_emitters() - subset.len())) + rest)
        }
    }
}

/// Schmidt coefficients of the normalized state across the cut, sorted
/// descending. Their squares sum to one.
pub fn schmidt_spectrum(state: &HybridState, cut: &Cut) -> StateResult<Vec<f64>> {
    let norm = state.norm_sqr();
    if norm == 0.0 {
        return Err(StateError::ZeroNorm);
    }
    let (rows, cols) = partition_dims(state, cut)?;
    let scale = norm.sqrt().recip();
    let mut matrix = DMatrix::<C64>::zeros(rows, cols);
    for (flat, &amp) in state.amplitudes().iter().enumerate() {
        if amp == C64::ZERO {
            continue;
        }
        let (row, col) = partition_index(state, cut, flat);
        matrix[(row, col)] += amp * scale;
    }
    let mut values: Vec<f64> = matrix
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .filter(|&s| s > 1e-12)
        .collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Entanglement entropy across the cut in bits.
pub fn entanglement_entropy(state: &HybridState, cut: &Cut) -> StateResult<f64> {
    let spectrum = schmidt_spectrum(state, cut)?;
    Ok(spectrum
        .iter()
        .map(|&s| {
            let p = s * s;
            if p > 0.0 {
                -p * p.log2()
            } else {
                0.0
            }
        })
        .sum())
}

/// Bundle of every figure of merit for one (raw, ideal) pair. The Schmidt
/// spectrum and entropy are taken across the photon cut.
#[derive(Debug, Clone, Serialize)]
pub struct MetricsReport {
    pub fidelity: f64,
    pub efficiency: f64,
    pub herald_failure: f64,
    pub schmidt: Vec<f64>,
    pub entropy_bits: f64,
}

pub fn report(raw: &HybridState, ideal: &HybridState) -> StateResult<MetricsReport> {
    Ok(MetricsReport {
        fidelity: fidelity(raw, ideal)?,
        efficiency: efficiency(raw, ideal)?,
        herald_failure: herald_failure(raw)?,
        schmidt: schmidt_spectrum(raw, &Cut::Photon)?,
        entropy_bits: entanglement_entropy(raw, &Cut::Photon)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::ReflectionCoefficients;
    use crate::schemes::{generate_entangled_at, ideal_state, SchemeSpec};
    use crate::state::{EmitterInit, Pol, PolInit, RegisterLayout};
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn tiny_layout() -> Arc<RegisterLayout> {
        Arc::new(RegisterLayout::new(vec!["p".into()], vec!["e".into()]).unwrap())
    }

    #[test]
    fn fidelity_and_efficiency_match_hand_computation() {
        let layout = tiny_layout();
        let mut ideal = HybridState::zero(layout.clone());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        *ideal.amplitude_mut(Pol::H, 0, 0) = c(s, 0.0);
        *ideal.amplitude_mut(Pol::V, 0, 0) = c(s, 0.0);
        let mut raw = HybridState::zero(layout);
        *raw.amplitude_mut(Pol::H, 0, 0) = c(0.6, 0.0);
        *raw.amplitude_mut(Pol::V, 0, 0) = c(0.48, 0.0);
        // overlap = (0.6 + 0.48)/sqrt 2, norm^2 = 0.5904
        let eff = efficiency(&raw, &ideal).unwrap();
        assert!((eff - 1.08f64.powi(2) / 2.0).abs() < 1e-14);
        let fid = fidelity(&raw, &ideal).unwrap();
        assert!((fid - 0.5832 / 0.5904).abs() < 1e-14);
        assert!((herald_failure(&raw).unwrap() - (1.0 - 0.5904)).abs() < 1e-14);
    }

    #[test]
    fn fidelity_ignores_scale_efficiency_keeps_it() {
        let spec = SchemeSpec::direct(4, 2, 1).unwrap();
        let raw = generate_entangled_at(
            &spec,
            &ReflectionCoefficients::from_reflection(c(-0.8, 0.1)),
        )
        .unwrap();
        let ideal = ideal_state(&spec).unwrap();
        let f0 = fidelity(&raw, &ideal).unwrap();
        let e0 = efficiency(&raw, &ideal).unwrap();
        let scaled = raw.scaled(c(0.0, 0.5));
        assert!((fidelity(&scaled, &ideal).unwrap() - f0).abs() < 1e-12);
        assert!((efficiency(&scaled, &ideal).unwrap() - 0.25 * e0).abs() < 1e-12);
    }

    #[test]
    fn product_state_has_trivial_spectrum() {
        let layout = tiny_layout();
        let state = HybridState::product(
            layout,
            PolInit::Superposition,
            "p",
            &[EmitterInit::Plus],
        )
        .unwrap();
        let spectrum = schmidt_spectrum(&state, &Cut::Photon).unwrap();
        assert_eq!(spectrum.len(), 1);
        assert!((spectrum[0] - 1.0).abs() < 1e-12);
        assert!(entanglement_entropy(&state, &Cut::Photon).unwrap().abs() < 1e-12);
    }

    #[test]
    fn maximally_entangled_pair_gives_one_bit() {
        let layout = tiny_layout();
        let mut state = HybridState::zero(layout);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        *state.amplitude_mut(Pol::H, 0, 0) = c(s, 0.0);
        *state.amplitude_mut(Pol::V, 0, 1) = c(0.0, s);
        let spectrum = schmidt_spectrum(&state, &Cut::Photon).unwrap();
        assert_eq!(spectrum.len(), 2);
        assert!((spectrum[0] - s).abs() < 1e-12);
        assert!((spectrum[1] - s).abs() < 1e-12);
        assert!((entanglement_entropy(&state, &Cut::Photon).unwrap() - 1.0).abs() < 1e-12);
        let flipped = entanglement_entropy(&state, &Cut::EmitterSubset(vec![0])).unwrap();
        assert!((flipped - 1.0).abs() < 1e-12);
    }

    #[test]
    fn generated_pair_spectrum_matches_diagonal_singular_values() {
        let rho: f64 = 40.0 / 41.0;
        let spec = SchemeSpec::direct(4, 2, 0).unwrap();
        let raw = generate_entangled_at(
            &spec,
            &ReflectionCoefficients::from_reflection(c(-rho, 0.0)),
        )
        .unwrap();
        // reduced amplitudes are diag(1, rho, rho, rho^2)/2 before
        // normalization
        let norm = (1.0 + rho * rho) / 2.0;
        let expected = [
            0.5 / norm,
            0.5 * rho / norm,
            0.5 * rho / norm,
            0.5 * rho * rho / norm,
        ];
        let spectrum = schmidt_spectrum(&raw, &Cut::Photon).unwrap();
        assert_eq!(spectrum.len(), 4);
        for (got, want) in spectrum.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
        let emitter_side = schmidt_spectrum(&raw, &Cut::EmitterSubset(vec![0, 1])).unwrap();
        for (a, b) in spectrum.iter().zip(&emitter_side) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn ideal_states_reach_full_entropy() {
        for (d, n) in [(4usize, 2usize), (4, 3), (8, 2)] {
            let spec = SchemeSpec::direct(d, n, 0).unwrap();
            let state = ideal_state(&spec).unwrap();
            let entropy = entanglement_entropy(&state, &Cut::Photon).unwrap();
            assert!(
                (entropy - (d as f64).log2()).abs() < 1e-12,
                "d={d} n={n} entropy={entropy}"
            );
        }
    }

    #[test]
    fn report_bundles_all_quantities() {
        let spec = SchemeSpec::direct(4, 2, 0).unwrap();
        let rho = 40.0 / 41.0;
        let raw = generate_entangled_at(
            &spec,
            &ReflectionCoefficients::from_reflection(c(-rho, 0.0)),
        )
        .unwrap();
        let ideal = ideal_state(&spec).unwrap();
        let report = report(&raw, &ideal).unwrap();
        // closed forms: overlap = (1+rho)^2/4, norm = ((1+rho^2)/2)^2
        let norm = ((1.0 + rho * rho) / 2.0).powi(2);
        let eff = (((1.0 + rho) * (1.0 + rho)) / 4.0).powi(2);
        assert!((report.efficiency - eff).abs() < 1e-12);
        assert!((report.fidelity - eff / norm).abs() < 1e-12);
        assert!((report.herald_failure - (1.0 - norm)).abs() < 1e-12);
        assert_eq!(report.schmidt.len(), 4);
        let json = serde_json::to_value(&report).unwrap();
        assert!(json.get("fidelity").is_some());
        assert!(json.get("entropy_bits").is_some());
        assert!(json.get("schmidt").is_some());
    }

    #[test]
    fn zero_states_are_rejected() {
        let layout = tiny_layout();
        let zero = HybridState::zero(layout.clone());
        let ideal = HybridState::product(
            layout,
            PolInit::H,
            "p",
            &[EmitterInit::Plus],
        )
        .unwrap();
        assert!(matches!(
            fidelity(&zero, &ideal),
            Err(StateError::ZeroNorm)
        ));
        assert!(matches!(
            schmidt_spectrum(&zero, &Cut::Photon),
            Err(StateError::ZeroNorm)
        ));
    }
}
