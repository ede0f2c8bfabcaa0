//! Photon scattering off a waveguide-coupled emitter.
//!
//! A two-level emitter sits at the end of a single-sided waveguide. On
//! resonance with coupling efficiency P = gamma_1D / gamma' and detuning
//! delta = Delta / gamma_1D, a guided photon is reflected with amplitude
//!
//! ```text
//! r(P, delta) = -1 / (1 + 1/P - 2 i delta),      t = 1 + r.
//! ```
//!
//! In the limit P -> infinity, delta = 0 the emitter acts as a perfect
//! mirror, r = -1. The transmitted amplitude t and the free-space loss
//! 1 - |r|^2 - |t|^2 are the error channels that heralding removes: the
//! error-detected union keeps only the reflected branch, so each pass
//! multiplies the surviving amplitude by +-r and the lost weight shows up
//! as a heralded failure, never as infidelity.
//!
//! The union acts on one photon path. In the emitter's ground-state basis
//! it is r * sigma_z(emitter) with a polarization flip; conjugated into
//! the |+-> storage basis it flips the emitter and multiplies by -r:
//!
//! ```text
//! |+->|H>  ->  -r |-+>|V>,      |+->|V>  ->  -r |-+>|H>.
//! ```

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::state::{HybridState, StateError, StateResult};

/// Errors for scattering-parameter validation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatteringError {
    /// The Purcell factor must be finite and strictly positive.
    #[error("purcell factor must be finite and > 0 (got {0})")]
    BadPurcell(f64),
    /// The detuning must be finite.
    #[error("detuning must be finite (got {0})")]
    BadDetuning(f64),
}

/// Physical knobs of one emitter-waveguide interface: the Purcell factor
/// P = gamma_1D / gamma' and the normalized detuning Delta / gamma_1D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringParams {
    pub purcell: f64,
    pub detuning: f64,
}

impl ScatteringParams {
    pub fn new(purcell: f64, detuning: f64) -> Result<ScatteringParams, ScatteringError> {
        if !purcell.is_finite() || purcell <= 0.0 {
            return Err(ScatteringError::BadPurcell(purcell));
        }
        if !detuning.is_finite() {
            return Err(ScatteringError::BadDetuning(detuning));
        }
        Ok(ScatteringParams { purcell, detuning })
    }
}

/// Reflection and transmission amplitudes of one emitter pass.
///
/// Invariant: `t - r == 1` exactly, by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionCoefficients {
    pub r: C64,
    pub t: C64,
}

impl ReflectionCoefficients {
    pub fn from_reflection(r: C64) -> ReflectionCoefficients {
        ReflectionCoefficients { r, t: r + 1.0 }
    }

    /// Perfect-mirror limit (infinite Purcell factor, zero detuning).
    pub fn ideal() -> ReflectionCoefficients {
        ReflectionCoefficients::from_reflection(C64::new(-1.0, 0.0))
    }
}

/// r and t for the given emitter parameters.
pub fn reflection_coefficient(
    params: &ScatteringParams,
) -> Result<ReflectionCoefficients, ScatteringError> {
    // revalidate so raw struct literals cannot smuggle bad values through
    let params = ScatteringParams::new(params.purcell, params.detuning)?;
    let denom = C64::new(1.0 + 1.0 / params.purcell, -2.0 * params.detuning);
    Ok(ReflectionCoefficients::from_reflection(-denom.inv()))
}

/// Heralded emitter-photon union on one path: every component occupying
/// `path` has its polarization flipped, the emitter's |+-> bit flipped,
/// and its amplitude multiplied by -r. Components elsewhere are untouched.
/// Sub-unity norm afterwards is the heralded failure weight.
pub fn union_scatter(
    state: &HybridState,
    emitter: &str,
    path: &str,
    r: C64,
) -> StateResult<HybridState> {
    let e = state.layout().emitter_index(emitter)?;
    let p = state.layout().path_index(path)?;
    Ok(state.map_component(|c| c.path == p, -r, true, &[e]))
}

/// Probability that a detector click already discarded this attempt,
/// `1 - <s|s>`. Errors if the norm exceeds unity beyond 1e-12.
pub fn heralded_failure_probability(state: &HybridState) -> StateResult<f64> {
    let n2 = state.norm_sqr();
    if n2 > 1.0 + 1e-12 {
        return Err(StateError::NormExceedsUnity(n2));
    }
    Ok((1.0 - n2).max(0.0))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::state::{EmitterInit, Pol, PolInit, RegisterLayout};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    // independent oracle: r = -1/w = (-Re w + i Im w)/|w|^2, w = 1 + 1/P - 2i*delta
    fn reflection_oracle(p: f64, delta: f64) -> C64 {
        let wr = 1.0 + 1.0 / p;
        let wi = -2.0 * delta;
        let n2 = wr * wr + wi * wi;
        c(-wr / n2, wi / n2)
    }

    #[test]
    fn resonant_reflection_matches_closed_forms() {
        let rc = reflection_coefficient(&ScatteringParams::new(40.0, 0.0).unwrap()).unwrap();
        assert!((rc.r - c(-40.0 / 41.0, 0.0)).norm() < 1e-15);
        assert!((rc.t - c(1.0 / 41.0, 0.0)).norm() < 1e-15);

        let rc1 = reflection_coefficient(&ScatteringParams::new(1.0, 0.0).unwrap()).unwrap();
        assert!((rc1.r - c(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn detuned_reflection_matches_complex_division_oracle() {
        let rc = reflection_coefficient(&ScatteringParams::new(25.0, 0.05).unwrap()).unwrap();
        let expect = reflection_oracle(25.0, 0.05);
        assert!((rc.r - expect).norm() < 1e-15);
        // frozen reference point
        assert!((rc.r.re - -0.952730).abs() < 1e-6);
        assert!((rc.r.im - -0.091609).abs() < 1e-6);
    }

    #[test]
    fn transmission_minus_reflection_is_exactly_one() {
        for &(p, d) in &[(0.5, 0.0), (3.0, 0.1), (40.0, 0.0), (25.0, 0.05), (1e6, 0.2)] {
            let rc = reflection_coefficient(&ScatteringParams::new(p, d).unwrap()).unwrap();
            assert_eq!(rc.t - rc.r, c(1.0, 0.0));
            assert!(rc.r.norm() <= 1.0 + 1e-15);
            assert!(rc.t.norm() <= 1.0 + 1e-15);
        }
    }

    #[test]
    fn reflectance_is_monotonic_in_purcell_and_detuning() {
        let grid_p = [0.5, 1.0, 2.0, 5.0, 10.0, 40.0, 100.0];
        for pair in grid_p.windows(2) {
            let lo = reflection_coefficient(&ScatteringParams::new(pair[0], 0.07).unwrap())
                .unwrap()
                .r
                .norm_sqr();
            let hi = reflection_coefficient(&ScatteringParams::new(pair[1], 0.07).unwrap())
                .unwrap()
                .r
                .norm_sqr();
            assert!(hi > lo);
        }
        let grid_d = [0.0, 0.02, 0.05, 0.1, 0.2];
        for pair in grid_d.windows(2) {
            let lo = reflection_coefficient(&ScatteringParams::new(40.0, pair[0]).unwrap())
                .unwrap()
                .r
                .norm_sqr();
            let hi = reflection_coefficient(&ScatteringParams::new(40.0, pair[1]).unwrap())
                .unwrap()
                .r
                .norm_sqr();
            assert!(hi < lo);
        }
    }

    #[test]
    fn invalid_parameters_are_domain_errors() {
        assert!(matches!(
            ScatteringParams::new(0.0, 0.0),
            Err(ScatteringError::BadPurcell(_))
        ));
        assert!(matches!(
            ScatteringParams::new(-3.0, 0.0),
            Err(ScatteringError::BadPurcell(_))
        ));
        assert!(matches!(
            ScatteringParams::new(f64::NAN, 0.0),
            Err(ScatteringError::BadPurcell(_))
        ));
        assert!(matches!(
            ScatteringParams::new(1.0, f64::INFINITY),
            Err(ScatteringError::BadDetuning(_))
        ));
    }

    #[test]
    fn union_flips_and_scales_only_the_given_path() {
        let layout = Arc::new(RegisterLayout::from_names(&["a1", "a2"], &["a"]).unwrap());
        let state = HybridState::product(
            layout,
            PolInit::Superposition,
            "a1",
            &[EmitterInit::Plus],
        )
        .unwrap();
        let r = c(-40.0 / 41.0, 0.0);
        let out = union_scatter(&state, "a", "a1", r).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // |+>|H(a1)> -> -r |->|V(a1)>, and the V input likewise lands on H
        assert!((out.amplitude(Pol::V, 0, 1) - c(s, 0.0) * (-r)).norm() < 1e-15);
        assert!((out.amplitude(Pol::H, 0, 1) - c(s, 0.0) * (-r)).norm() < 1e-15);
        assert_eq!(out.amplitude(Pol::H, 0, 0), c(0.0, 0.0));
        assert_eq!(out.amplitude(Pol::V, 1, 0), c(0.0, 0.0));
    }

    #[test]
    fn union_in_the_ground_state_basis_gives_plus_minus_r() {
        // |g+>|H> -> r |g+>|V> and |g->|H> -> -r |g->|V>
        let layout = Arc::new(RegisterLayout::from_names(&["a1"], &["a"]).unwrap());
        let r = c(-0.8, 0.1);
        for (init, sign) in [(EmitterInit::GPlus, 1.0), (EmitterInit::GMinus, -1.0)] {
            let state =
                HybridState::product(layout.clone(), PolInit::H, "a1", &[init]).unwrap();
            let out = union_scatter(&state, "a", "a1", r).unwrap();
            let expect = state
                .map_component(|_| true, sign * r, true, &[])
                .amplitudes()
                .to_vec();
            for (got, want) in out.amplitudes().iter().zip(expect) {
                assert!((got - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn union_is_linear() {
        let layout = Arc::new(RegisterLayout::from_names(&["a1", "a2"], &["a", "b"]).unwrap());
        let u = HybridState::product(
            layout.clone(),
            PolInit::H,
            "a1",
            &[EmitterInit::Plus, EmitterInit::Minus],
        )
        .unwrap();
        let v = HybridState::product(
            layout,
            PolInit::Superposition,
            "a2",
            &[EmitterInit::GMinus, EmitterInit::Plus],
        )
        .unwrap();
        let r = c(-0.7, -0.2);
        let alpha = c(0.3, 0.4);
        let combined = u.scaled(alpha).add(&v).unwrap();
        let lhs = union_scatter(&combined, "b", "a2", r).unwrap();
        let rhs = union_scatter(&u, "b", "a2", r)
            .unwrap()
            .scaled(alpha)
            .add(&union_scatter(&v, "b", "a2", r).unwrap())
            .unwrap();
        for (x, y) in lhs.amplitudes().iter().zip(rhs.amplitudes()) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn heralded_failure_after_one_and_two_passes() {
        let layout = Arc::new(RegisterLayout::from_names(&["a1"], &["a", "b"]).unwrap());
        let state = HybridState::product(
            layout,
            PolInit::H,
            "a1",
            &[EmitterInit::Plus, EmitterInit::Plus],
        )
        .unwrap();
        let r = reflection_coefficient(&ScatteringParams::new(40.0, 0.0).unwrap())
            .unwrap()
            .r;
        let once = union_scatter(&state, "a", "a1", r).unwrap();
        let fail1 = heralded_failure_probability(&once).unwrap();
        assert!((fail1 - (1.0 - (40.0f64 / 41.0).powi(2))).abs() < 1e-12);
        assert!((fail1 - 0.048186).abs() < 1e-6);
        let twice = union_scatter(&once, "b", "a1", r).unwrap();
        let fail2 = heralded_failure_probability(&twice).unwrap();
        assert!((fail2 - (1.0 - (40.0f64 / 41.0).powi(4))).abs() < 1e-12);
        assert!((fail2 - 0.094050).abs() < 1e-6);
    }

    #[test]
    fn norm_above_unity_is_a_consistency_error() {
        let layout = Arc::new(RegisterLayout::from_names(&["a1"], &[]).unwrap());
        let state = HybridState::product(layout, PolInit::H, "a1", &[])
            .unwrap()
            .scaled(c(1.5, 0.0));
        assert!(matches!(
            heralded_failure_probability(&state),
            Err(StateError::NormExceedsUnity(_))
        ));
    }
}
