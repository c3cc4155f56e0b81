//! JSON and CSV renderings of the computed objects.
//!
//! Forms are written as lists of `[exponents, value]` pairs over the nonzero
//! coefficients, in the crate's monomial order (graded, then lexicographic
//! with `z_0 > z_1 > …`); values are canonical residues in `[0, p)`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bundle::{SweepKind, SweepRow};
use crate::cone::{ConeCertificate, CubicPolar, PolarCertificate, QuarticCone};
use crate::field::PrimeField;
use crate::forms::Form;
use crate::spanlab::SpanAccumulator;

/// Version tag embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub type Terms = Vec<(Vec<u32>, u64)>;

pub fn form_terms<F: PrimeField>(form: &Form<F>) -> Terms {
    form.terms().into_iter().map(|(e, c)| (e, c.value())).collect()
}

pub fn vector_values<F: PrimeField>(v: &[F]) -> Vec<u64> {
    v.iter().map(|c| c.value()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeJson {
    #[serde(rename = "W")]
    pub w: Vec<Vec<u64>>,
    pub vertex: Vec<Vec<u64>>,
    pub in_d: bool,
    pub coeffs: Terms,
    pub certificate: ConeCertificate,
}

impl ConeJson {
    pub fn new<F: PrimeField>(cone: &QuarticCone<F>) -> Self {
        Self {
            w: cone.net.rows().iter().map(|r| vector_values(r)).collect(),
            vertex: cone.net.vertex.iter().map(|r| vector_values(r)).collect(),
            in_d: cone.net.in_d,
            coeffs: form_terms(&cone.form),
            certificate: cone.certificate.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PolarJson {
    pub x: Vec<u64>,
    pub coeffs: Terms,
    pub certificate: PolarCertificate,
}

impl PolarJson {
    pub fn new<F: PrimeField>(polar: &CubicPolar<F>) -> Self {
        Self {
            x: vector_values(&polar.x),
            coeffs: form_terms(&polar.form),
            certificate: polar.certificate.clone(),
        }
    }
}

/// A report with its configuration and version.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope<C, B> {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: C,
    #[serde(flatten)]
    pub body: B,
}

impl<C, B> Envelope<C, B> {
    pub fn new(config: C, body: B) -> Self {
        Self {
            tool: "qcone",
            version: VERSION,
            config,
            body,
        }
    }
}

fn kind_name(kind: SweepKind) -> &'static str {
    match kind {
        SweepKind::CurveImage => "curve-image",
        SweepKind::GammaPoint => "gamma-point",
        SweepKind::Random => "random",
    }
}

/// `kind,u0,u1,u2,gamma,det,kernel_match`; `kernel_match` is empty when not applicable.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("kind,u0,u1,u2,gamma,det,kernel_match\n");
    for r in rows {
        let km = match r.kernel_match {
            Some(true) => "true",
            Some(false) => "false",
            None => "",
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            kind_name(r.kind),
            r.u[0],
            r.u[1],
            r.u[2],
            r.gamma,
            r.det,
            km
        );
    }
    out
}

/// `batch,f4_rank,f3_rank`.
pub fn trajectory_csv<F>(f4: &SpanAccumulator<F>, f3: &SpanAccumulator<F>) -> String {
    let mut out = String::from("batch,f4_rank,f3_rank\n");
    for (i, (a, b)) in f4.trajectory.iter().zip(&f3.trajectory).enumerate() {
        let _ = writeln!(out, "{},{},{}", i + 1, a, b);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_csv_leaves_missing_flags_empty() {
        let rows = vec![SweepRow {
            kind: SweepKind::Random,
            u: vec![1, 2, 3],
            gamma: 4,
            det: 5,
            kernel_match: None,
        }];
        assert_eq!(
            sweep_csv(&rows),
            "kind,u0,u1,u2,gamma,det,kernel_match\nrandom,1,2,3,4,5,\n"
        );
    }
}
