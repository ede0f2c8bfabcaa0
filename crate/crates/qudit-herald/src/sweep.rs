//! Fidelity and efficiency surfaces over (Purcell, detuning) grids.
//!
//! Grid points are independent pure computations, so they are evaluated
//! in parallel and reassembled in a fixed Purcell-major order.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::metrics::{efficiency, fidelity, herald_failure};
use crate::scattering::{reflection_coefficient, ScatteringError, ScatteringParams};
use crate::schemes::{
    compose_table2, generate_entangled, ideal_state, ideal_state_on, x_gate_benchmark,
    SchemeError, SchemeSpec,
};
use crate::state::StateError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
    #[error("sweep grid: {0}")]
    BadGrid(&'static str),
    #[error("unknown scheme id {0:?} (expected d<d>n<n>b<b>[k<k>], table2_k<k>_p<p>_q<q>, or xgate_m<m>)")]
    UnknownScheme(String),
}

pub type SweepResult<T> = Result<T, SweepError>;

/// What a sweep evaluates at each grid point.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepTarget {
    /// Direct generation of the scheme's target state.
    Generate(SchemeSpec),
    /// Generation at base p composed with X^((q-p) mod 4) and Z^k.
    Compose { k: usize, p: usize, q: usize },
    /// X^m applied to the exact input state, measured against the exact
    /// shifted target.
    XGate { target_qudit: usize, m: usize },
}

impl SweepTarget {
    /// Stable identifier used in output rows and file names.
    pub fn id(&self) -> String {
        match self {
            SweepTarget::Generate(spec) => {
                let mut id = format!("d{}n{}b{}", spec.d, spec.n, spec.base);
                if spec.phase != 0 {
                    id.push_str(&format!("k{}", spec.phase));
                }
                id
            }
            SweepTarget::Compose { k, p, q } => format!("table2_k{k}_p{p}_q{q}"),
            SweepTarget::XGate { target_qudit, m } => {
                if *target_qudit == 3 {
                    format!("xgate_m{m}")
                } else {
                    format!("xgate_t{target_qudit}_m{m}")
                }
            }
        }
    }

    /// Parse an identifier in the same shape [`SweepTarget::id`] prints.
    pub fn parse(id: &str) -> SweepResult<SweepTarget> {
        fn number(s: &str) -> Option<(usize, &str)> {
            let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
            if end == 0 {
                return None;
            }
            Some((s[..end].parse().ok()?, &s[end..]))
        }
        let bad = || SweepError::UnknownScheme(id.to_string());

        if let Some(rest) = id.strip_prefix("table2_k") {
            let (k, rest) = number(rest).ok_or_else(bad)?;
            let rest = rest.strip_prefix("_p").ok_or_else(bad)?;
            let (p, rest) = number(rest).ok_or_else(bad)?;
            let rest = rest.strip_prefix("_q").ok_or_else(bad)?;
            let (q, rest) = number(rest).ok_or_else(bad)?;
            if !rest.is_empty() || k >= 4 || p >= 4 || q >= 4 {
                return Err(bad());
            }
            return Ok(SweepTarget::Compose { k, p, q });
        }
        if let Some(rest) = id.strip_prefix("xgate_") {
            let (target_qudit, rest) = match rest.strip_prefix('t') {
                Some(rest) => {
                    let (t, rest) = number(rest).ok_or_else(bad)?;
                    (t, rest.strip_prefix('_').ok_or_else(bad)?)
                }
                None => (3, rest),
            };
            let rest = rest.strip_prefix('m').ok_or_else(bad)?;
            let (m, rest) = number(rest).ok_or_else(bad)?;
            if !rest.is_empty() || m >= 4 {
                return Err(bad());
            }
            return Ok(SweepTarget::XGate { target_qudit, m });
        }
        let rest = id.strip_prefix('d').ok_or_else(bad)?;
        let (d, rest) = number(rest).ok_or_else(bad)?;
        let rest = rest.strip_prefix('n').ok_or_else(bad)?;
        let (n, rest) = number(rest).ok_or_else(bad)?;
        let rest = rest.strip_prefix('b').ok_or_else(bad)?;
        let (b, rest) = number(rest).ok_or_else(bad)?;
        let (k, rest) = match rest.strip_prefix('k') {
            Some(rest) => number(rest).ok_or_else(bad)?,
            None => (0, rest),
        };
        if !rest.is_empty() {
            return Err(bad());
        }
        Ok(SweepTarget::Generate(SchemeSpec::direct_with_phase(
            d, n, b, k,
        )?))
    }

    fn metadata(&self) -> (usize, usize, usize, String) {
        match self {
            SweepTarget::Generate(spec) => (
                spec.d,
                spec.n,
                spec.phase,
                join_shifts(&spec.shifts),
            ),
            SweepTarget::Compose { k, p, q } => (4, 3, *k, format!("{p};{q}")),
            SweepTarget::XGate { target_qudit, m } => {
                let n = (*target_qudit).max(3);
                let mut shifts = vec![0usize; n - 1];
                shifts[target_qudit - 2] = m % 4;
                (4, n, 0, join_shifts(&shifts))
            }
        }
    }
}

fn join_shifts(shifts: &[usize]) -> String {
    shifts
        .iter()
        .map(|q| q.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

/// Strictly increasing Purcell and detuning axes.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    purcell: Vec<f64>,
    detuning: Vec<f64>,
}

impl SweepGrid {
    pub fn new(purcell: Vec<f64>, detuning: Vec<f64>) -> SweepResult<SweepGrid> {
        if purcell.is_empty() || detuning.is_empty() {
            return Err(SweepError::BadGrid("both axes must be non-empty"));
        }
        if purcell.iter().any(|&p| !(p > 0.0)) {
            return Err(SweepError::BadGrid("purcell values must be positive"));
        }
        if !strictly_increasing(&purcell) || !strictly_increasing(&detuning) {
            return Err(SweepError::BadGrid("axes must be strictly increasing"));
        }
        Ok(SweepGrid { purcell, detuning })
    }

    /// 40 log-spaced Purcell points in [1, 100] by 41 linear detuning
    /// points in [0, 0.2], bracketing every quoted operating point.
    pub fn default_grid() -> SweepGrid {
        let purcell = (0..40)
            .map(|i| 10f64.powf(2.0 * i as f64 / 39.0))
            .collect();
        let detuning = (0..41).map(|i| 0.2 * i as f64 / 40.0).collect();
        SweepGrid { purcell, detuning }
    }

    pub fn single_point(purcell: f64, detuning: f64) -> SweepResult<SweepGrid> {
        SweepGrid::new(vec![purcell], vec![detuning])
    }

    pub fn purcell(&self) -> &[f64] {
        &self.purcell
    }

    pub fn detuning(&self) -> &[f64] {
        &self.detuning
    }

    pub fn len(&self) -> usize {
        self.purcell.len() * self.detuning.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn strictly_increasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] < w[1])
}

fn nine_digits<S: Serializer>(value: &f64, ser: S) -> Result<S::Ok, S::Error> {
    let rounded: f64 = format!("{value:.8e}").parse().expect("formatted float");
    ser.serialize_f64(rounded)
}

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub scheme: String,
    pub d: usize,
    pub n: usize,
    pub k: usize,
    pub q: String,
    #[serde(serialize_with = "nine_digits")]
    pub purcell: f64,
    #[serde(serialize_with = "nine_digits")]
    pub detuning: f64,
    #[serde(serialize_with = "nine_digits")]
    pub fidelity: f64,
    #[serde(serialize_with = "nine_digits")]
    pub efficiency: f64,
    #[serde(serialize_with = "nine_digits")]
    pub herald_failure: f64,
}

fn evaluate_point(target: &SweepTarget, params: &ScatteringParams) -> SweepResult<(f64, f64, f64)> {
    let (raw, ideal) = match target {
        SweepTarget::Generate(spec) => {
            (generate_entangled(spec, params)?, ideal_state(spec)?)
        }
        SweepTarget::Compose { k, p, q } => {
            let raw = compose_table2(*k, *p, *q, params)?;
            let spec = SchemeSpec::composed(*k, *p, *q)?;
            let ideal = ideal_state_on(raw.layout(), &spec)?;
            (raw, ideal)
        }
        SweepTarget::XGate { target_qudit, m } => {
            let coeffs = reflection_coefficient(params)?;
            x_gate_benchmark(*target_qudit, *m, &coeffs)?
        }
    };
    Ok((
        fidelity(&raw, &ideal)?,
        efficiency(&raw, &ideal)?,
        herald_failure(&raw)?,
    ))
}

/// Evaluate the target over the grid. Rows come back Purcell-major: all
/// detunings of the first Purcell value, then the next.
pub fn run_sweep(target: &SweepTarget, grid: &SweepGrid) -> SweepResult<Vec<SweepRow>> {
    let scheme = target.id();
    let (d, n, k, q) = target.metadata();
    let nd = grid.detuning.len();
    (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let purcell = grid.purcell[idx / nd];
            let detuning = grid.detuning[idx % nd];
            let params = ScatteringParams::new(purcell, detuning)?;
            let (fidelity, efficiency, herald_failure) = evaluate_point(target, &params)?;
            Ok(SweepRow {
                scheme: scheme.clone(),
                d,
                n,
                k,
                q: q.clone(),
                purcell,
                detuning,
                fidelity,
                efficiency,
                herald_failure,
            })
        })
        .collect()
}

pub const CSV_HEADER: &str =
    "scheme,d,n,k,q,purcell,detuning,fidelity,efficiency,herald_failure";

/// Write rows as CSV, floats at nine significant digits.
pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{:.8e},{:.8e},{:.8e},{:.8e},{:.8e}",
            row.scheme,
            row.d,
            row.n,
            row.k,
            row.q,
            row.purcell,
            row.detuning,
            row.fidelity,
            row.efficiency,
            row.herald_failure
        )?;
    }
    Ok(())
}

/// Write rows as a JSON array of row objects.
pub fn write_json<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    let text = serde_json::to_string_pretty(rows).map_err(io::Error::other)?;
    writeln!(out, "{text}")
}

/// Parse CSV produced by [`write_csv`] back into rows.
pub fn parse_csv(text: &str) -> SweepResult<Vec<SweepRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header == CSV_HEADER => {}
        _ => return Err(SweepError::BadGrid("missing CSV header")),
    }
    lines
        .map(|line| {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 10 {
                return Err(SweepError::BadGrid("row must have 10 fields"));
            }
            let int = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| SweepError::BadGrid("bad integer field"))
            };
            let float = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| SweepError::BadGrid("bad float field"))
            };
            Ok(SweepRow {
                scheme: fields[0].to_string(),
                d: int(fields[1])?,
                n: int(fields[2])?,
                k: int(fields[3])?,
                q: fields[4].to_string(),
                purcell: float(fields[5])?,
                detuning: float(fields[6])?,
                fidelity: float(fields[7])?,
                efficiency: float(fields[8])?,
                herald_failure: float(fields[9])?,
            })
        })
        .collect()
}
