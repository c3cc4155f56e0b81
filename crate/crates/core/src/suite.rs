//! The acceptance suite: thirteen numbered criteria evaluated on one curve.
//!
//! Each criterion yields named checks; a criterion passes when all of its
//! checks do. Errors inside a criterion are recorded as failed checks so the
//! remaining criteria still run.

use serde::{Deserialize, Serialize};

use crate::bundle::{expected_nodes, hessian_sweep, node_count};
use crate::canring::{CurveContext, PanelConfig};
use crate::cone::{
    bitangent_partner, double_quadric_quartic, double_section_net, lw_space, polar_cubic,
    reconstruct_quartic, secant_criterion, vertex_secant_net, QuarticCone, ReconstructOptions,
};
use crate::error::{Error, Result};
use crate::field::{normalize_first_nonzero, PrimeField};
use crate::forms::Form;
use crate::net::{build_net, d_net, random_net};
use crate::pencil::{build_pencil, cup_gram, hessian_psi_membership};
use crate::rng::{stream, stream_indexed};
use crate::spanlab::{accumulate_spans, base_locus_probe, squares_containment, SpanOptions, Spans};

/// Sample counts and caps for a suite run. Together with the curve this
/// determines the run completely.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Points per panel; `None` for `4 · dim Sym⁴`.
    pub panel_size: Option<usize>,
    pub k_max: usize,
    pub oracle_points: usize,
    pub corank_samples: usize,
    pub d_samples: usize,
    pub reconstructions: usize,
    pub polar_nets: usize,
    pub sweep: usize,
    pub node_nets: usize,
    pub secant_pairs: usize,
    pub engineered_pairs: usize,
    pub span_batch: usize,
    pub span_stable_batches: usize,
    pub span_max_batches: usize,
    pub span_extra_nets: usize,
    pub off_curve_probes: usize,
    pub structured_probes: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            panel_size: None,
            k_max: 20,
            oracle_points: 50,
            corank_samples: 50,
            d_samples: 5,
            reconstructions: 10,
            polar_nets: 3,
            sweep: 200,
            node_nets: 3,
            secant_pairs: 100,
            engineered_pairs: 5,
            span_batch: 5,
            span_stable_batches: 3,
            span_max_batches: 40,
            span_extra_nets: 10,
            off_curve_probes: 500,
            structured_probes: 30,
        }
    }
}

impl SuiteConfig {
    /// Smaller counts for a fast smoke run; thresholds are not all met.
    pub fn quick() -> Self {
        Self {
            oracle_points: 10,
            corank_samples: 10,
            d_samples: 2,
            reconstructions: 2,
            polar_nets: 1,
            sweep: 40,
            node_nets: 1,
            secant_pairs: 20,
            engineered_pairs: 1,
            span_extra_nets: 2,
            off_curve_probes: 50,
            structured_probes: 5,
            ..Self::default()
        }
    }

    /// Rejects settings no run could satisfy, naming the offending field.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let positive = [
            ("oracle_points", self.oracle_points),
            ("corank_samples", self.corank_samples),
            ("d_samples", self.d_samples),
            ("reconstructions", self.reconstructions),
            ("polar_nets", self.polar_nets),
            ("node_nets", self.node_nets),
            ("secant_pairs", self.secant_pairs),
            ("engineered_pairs", self.engineered_pairs),
            ("span_batch", self.span_batch),
            ("span_stable_batches", self.span_stable_batches),
            ("span_max_batches", self.span_max_batches),
            ("off_curve_probes", self.off_curve_probes),
            ("structured_probes", self.structured_probes),
        ];
        for (name, v) in positive {
            if v == 0 {
                return Err(format!("{name} must be positive"));
            }
        }
        if self.k_max < 6 {
            return Err(format!("k_max must be at least 6, got {}", self.k_max));
        }
        if self.sweep < 4 {
            return Err(format!("sweep must be at least 4, got {}", self.sweep));
        }
        if self.polar_nets > self.reconstructions || self.node_nets > self.reconstructions {
            return Err("polar_nets and node_nets must not exceed reconstructions".into());
        }
        if let Some(n) = self.panel_size {
            if n < 140 {
                return Err(format!("panel_size must be at least 140, got {n}"));
            }
        }
        Ok(())
    }

    pub fn panel(&self) -> PanelConfig {
        PanelConfig {
            panel_size: self.panel_size,
        }
    }

    fn reconstruct_options(&self, seed: u64) -> ReconstructOptions {
        ReconstructOptions {
            seed,
            k_max: self.k_max,
            oracle_points: self.oracle_points,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Values measured but not asserted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Observations {
    pub f4_rank: Option<usize>,
    pub f3_rank: Option<usize>,
    /// `dim {F ∈ I(4) : F singular along the vertex}` per reconstruction.
    pub constrained_dims: Vec<usize>,
    pub pencils_used: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub genus: usize,
    pub prime: u64,
    pub curve_seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub observations: Observations,
    pub budget_exhausted: bool,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn failed_ids(&self) -> Vec<u8> {
        self.criteria.iter().filter(|c| !c.passed).map(|c| c.id).collect()
    }

    /// One line per criterion.
    pub fn summary_lines(&self) -> Vec<String> {
        self.criteria
            .iter()
            .map(|c| {
                let failing: Vec<&str> = c
                    .checks
                    .iter()
                    .filter(|k| !k.passed)
                    .map(|k| k.name.as_str())
                    .collect();
                let tail = if failing.is_empty() {
                    String::new()
                } else {
                    format!(" (failing: {})", failing.join(", "))
                };
                format!(
                    "criterion {:>2} [g={}] {:<32} {}{}",
                    c.id,
                    self.genus,
                    c.title,
                    if c.passed { "PASS" } else { "FAIL" },
                    tail
                )
            })
            .collect()
    }
}

struct Criterion {
    id: u8,
    title: &'static str,
    checks: Vec<Check>,
}

impl Criterion {
    fn new(id: u8, title: &'static str) -> Self {
        Self {
            id,
            title,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    fn finish(mut self, outcome: Result<()>, budget: &mut bool) -> CriterionResult {
        if let Err(e) = outcome {
            *budget |= matches!(e, Error::BudgetExhausted(_));
            self.check("completed", false, e.to_string());
        }
        let passed = !self.checks.is_empty() && self.checks.iter().all(|c| c.passed);
        CriterionResult {
            id: self.id,
            title: self.title.to_string(),
            passed,
            checks: self.checks,
        }
    }
}

/// Ideal dimensions fixed by Riemann–Roch, for `n = 2, 3, 4`.
pub fn expected_ideal_dims(g: usize) -> Option<[usize; 3]> {
    match g {
        4 => Some([1, 5, 14]),
        5 => Some([3, 15, 42]),
        _ => None,
    }
}

/// Expected rank of the span of all `F_W`.
pub fn expected_f4_rank(g: usize) -> Option<usize> {
    match g {
        4 => Some(5),
        5 => Some(16),
        _ => None,
    }
}

struct State<F> {
    cones: Vec<QuarticCone<F>>,
    spans: Option<Spans<F>>,
}

/// Runs criteria 1–12.
pub fn run_suite<F: PrimeField>(ctx: &CurveContext<F>, cfg: &SuiteConfig) -> SuiteReport {
    let g = ctx.genus();
    let mut budget = false;
    let mut obs = Observations::default();
    let mut state = State {
        cones: Vec::new(),
        spans: None,
    };
    let mut criteria = Vec::new();

    let mut c = Criterion::new(1, "ideal dimensions");
    let r = criterion_ideals(ctx, &mut c);
    criteria.push(c.finish(r, &mut budget));

    let mut c = Criterion::new(2, "quadric generation in degree 3");
    let r = criterion_petri(ctx, &mut c);
    criteria.push(c.finish(r, &mut budget));

    let mut c = Criterion::new(3, "plane image degree");
    let r = criterion_gamma(ctx, cfg, &mut c);
    criteria.push(c.finish(r, &mut budget));

    let mut c = Criterion::new(4, "cup-product corank law");
    let r = criterion_corank(ctx, cfg, &mut c);
    criteria.push(c.finish(r, &mut budget));

    let mut c = Criterion::new(5, "reconstruction certificate");
    let r = criterion_reconstruction(ctx, cfg, &mut c, &mut state, &mut obs);
    criteria.push(c.finish(r, &mut budget));

    let mut c = Criterion::new(6, "double quadrics on D");
    let r = criterion_double_quadric(ctx, cfg, &mut c);
    criteria.push(c.finish(r, &mut budget));

    let mut c = Criterion::new(7, "polar cubics");
    let r = criterion_polars(ctx, cfg, &mut c, &state);
    criteria.push(c.finish(r, &mut budget));

    let mut c = Criterion::new(8, "hessian and steinerian");
    let r = criterion_hessian(ctx, cfg, &mut c, &state);
    criteria.push(c.finish(r, &mut budget));

    let mut c = Criterion::new(9, "node count");
    let r = criterion_nodes(cfg, &mut c, &state, g);
    criteria.push(c.finish(r, &mut budget));

    let mut c = Criterion::new(10, "secant criterion");
    let r = criterion_secants(ctx, cfg, &mut c, &state);
    criteria.push(c.finish(r, &mut budget));

    let mut c = Criterion::new(11, "span dimensions");
    let r = criterion_spans(ctx, cfg, &mut c, &mut state, &mut obs);
    criteria.push(c.finish(r, &mut budget));

    let mut c = Criterion::new(12, "base locus");
    let r = criterion_base_locus(ctx, cfg, &mut c, &state);
    criteria.push(c.finish(r, &mut budget));

    SuiteReport {
        genus: g,
        prime: F::MODULUS,
        curve_seed: ctx.curve().seed(),
        criteria,
        observations: obs,
        budget_exhausted: budget,
    }
}

/// Runs criteria 1–12 twice and adds criterion 13, byte equality of the two reports.
pub fn run_full_suite<F: PrimeField>(ctx: &CurveContext<F>, cfg: &SuiteConfig) -> SuiteReport {
    let mut first = run_suite(ctx, cfg);
    let second = run_suite(ctx, cfg);
    let a = serde_json::to_string(&first).expect("report serializes");
    let b = serde_json::to_string(&second).expect("report serializes");
    let mut c = Criterion::new(13, "determinism");
    c.check(
        "identical reports",
        a == b,
        format!("{} bytes vs {} bytes", a.len(), b.len()),
    );
    let mut budget = first.budget_exhausted;
    first.criteria.push(c.finish(Ok(()), &mut budget));
    first
}

fn criterion_ideals<F: PrimeField>(ctx: &CurveContext<F>, c: &mut Criterion) -> Result<()> {
    let g = ctx.genus();
    let expected = expected_ideal_dims(g).ok_or(Error::UnsupportedGenus(g))?;
    for (n, want) in (2..=4).zip(expected) {
        let got = ctx.ideal(n).dim();
        c.check(&format!("dim I({n})"), got == want, format!("{got} (expected {want})"));
        let again = ctx.compute_ideal(n, true)?;
        c.check(
            &format!("holdout I({n})"),
            &again == ctx.ideal(n),
            "kernel on the holdout panel equals the main panel's",
        );
    }
    Ok(())
}

fn criterion_petri<F: PrimeField>(ctx: &CurveContext<F>, c: &mut Criterion) -> Result<()> {
    let g = ctx.genus();
    let rank = ctx.petri_rank();
    let dim = ctx.ideal(3).dim();
    let surjective = rank == dim;
    c.check(
        "surjectivity",
        surjective == (g == 5),
        format!("rank of H0(w)*I(2) = {rank}, dim I(3) = {dim}"),
    );
    Ok(())
}

fn criterion_gamma<F: PrimeField>(ctx: &CurveContext<F>, cfg: &SuiteConfig, c: &mut Criterion) -> Result<()> {
    let g = ctx.genus();
    for i in 0..3 {
        let mut rng = stream_indexed(cfg.seed, "gamma", i);
        let net = random_net(ctx, &mut rng)?;
        let gamma = net.gamma.as_ref().ok_or(Error::NetHasBasePoint)?;
        c.check(
            &format!("net {i} degree"),
            gamma.degree() == 2 * g - 2,
            format!("degree {}", gamma.degree()),
        );
        let off = ctx
            .holdout()
            .iter()
            .filter(|p| !gamma.eval(&net.project(p.coords())).is_zero())
            .count();
        c.check(
            &format!("net {i} holdout"),
            off == 0,
            format!("{off} of {} holdout points off the curve", ctx.holdout().len()),
        );
    }
    Ok(())
}

struct CorankTally {
    samples: usize,
    in_d: usize,
    disagreements: usize,
}

fn corank_sample<F: PrimeField>(
    ctx: &CurveContext<F>,
    v: &[Vec<F>],
    w: &[F],
    tally: &mut CorankTally,
) -> Result<bool> {
    let pencil = match build_pencil(ctx, v) {
        Ok(p) => p,
        Err(Error::InadmissiblePencil { .. }) => return Ok(false),
        Err(e) => return Err(e),
    };
    let net = match build_net(ctx, &[v[0].clone(), v[1].clone(), w.to_vec()]) {
        Ok(n) => n,
        Err(Error::RankDeficientW(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let corank = cup_gram(&pencil, w)?.corank();
    let hess = hessian_psi_membership(&pencil, w)?;
    tally.samples += 1;
    tally.in_d += net.in_d as usize;
    let agree = (corank == 2) != net.in_d && (corank >= 3) == net.in_d && hess == net.in_d;
    tally.disagreements += (!agree) as usize;
    Ok(true)
}

fn criterion_corank<F: PrimeField>(ctx: &CurveContext<F>, cfg: &SuiteConfig, c: &mut Criterion) -> Result<()> {
    let g = ctx.genus();
    let mut rng = stream(cfg.seed, "corank");
    let mut random = CorankTally {
        samples: 0,
        in_d: 0,
        disagreements: 0,
    };
    let mut tries = 0;
    while random.samples < cfg.corank_samples {
        tries += 1;
        if tries > 20 * cfg.corank_samples {
            return Err(Error::BudgetExhausted("admissible pencils".into()));
        }
        let mut vec = || (0..g).map(|_| F::random(&mut rng)).collect::<Vec<F>>();
        let v = vec![vec(), vec()];
        let w = vec();
        corank_sample(ctx, &v, &w, &mut random)?;
    }
    c.check(
        "random pencils",
        random.disagreements == 0 && random.samples >= cfg.corank_samples,
        format!(
            "{} samples, {} in D, {} disagreements",
            random.samples, random.in_d, random.disagreements
        ),
    );

    let mut engineered = CorankTally {
        samples: 0,
        in_d: 0,
        disagreements: 0,
    };
    let mut nets = 0;
    while engineered.samples < cfg.d_samples {
        nets += 1;
        if nets > 20 * cfg.d_samples {
            return Err(Error::BudgetExhausted("pencils in D nets".into()));
        }
        let mut nrng = stream_indexed(cfg.seed, "corank-d", nets as u64);
        let net = d_net(ctx, &mut nrng)?;
        let u: Vec<F> = (0..3).map(|_| F::random(&mut nrng)).collect();
        let Ok(v) = net.pencil_of(&u) else { continue };
        let pencil_span = build_pencil(ctx, &v);
        let Some(w) = net
            .rows()
            .into_iter()
            .find(|r| pencil_span.as_ref().map(|p| !p.contains(r)).unwrap_or(true))
        else {
            continue;
        };
        corank_sample(ctx, &v, &w, &mut engineered)?;
    }
    c.check(
        "pencils in D nets",
        engineered.disagreements == 0 && engineered.in_d == engineered.samples,
        format!(
            "{} samples, {} in D, {} disagreements",
            engineered.samples, engineered.in_d, engineered.disagreements
        ),
    );
    Ok(())
}

fn criterion_reconstruction<F: PrimeField>(
    ctx: &CurveContext<F>,
    cfg: &SuiteConfig,
    c: &mut Criterion,
    state: &mut State<F>,
    obs: &mut Observations,
) -> Result<()> {
    let mut index = 0u64;
    while state.cones.len() < cfg.reconstructions {
        index += 1;
        if index > 5 * cfg.reconstructions as u64 + 10 {
            return Err(Error::BudgetExhausted("nets outside D".into()));
        }
        let mut rng = stream_indexed(cfg.seed, "reconstruct", index);
        let net = random_net(ctx, &mut rng)?;
        if net.in_d {
            continue;
        }
        let i = state.cones.len();
        match reconstruct_quartic(ctx, &net, &cfg.reconstruct_options(cfg.seed ^ index)) {
            Ok(cone) => {
                let k = &cone.certificate;
                let ok = k.solution_dim == 1
                    && k.curve_points_checked >= 200
                    && k.curve_points_vanishing == k.curve_points_checked
                    && k.vertex_singular
                    && k.oracle_checked == cfg.oracle_points
                    && k.oracle_agree == k.oracle_checked
                    && k.holdout_pencil_match == Some(true);
                c.check(
                    &format!("net {i}"),
                    ok,
                    format!(
                        "pencils {}, curve points {}/{}, oracle {}/{} ({} on the cone), holdout pencil {:?}",
                        k.pencils_used,
                        k.curve_points_vanishing,
                        k.curve_points_checked,
                        k.oracle_agree,
                        k.oracle_checked,
                        k.oracle_on_cone,
                        k.holdout_pencil_match
                    ),
                );
                obs.constrained_dims.extend(k.constrained_dim);
                obs.pencils_used.push(k.pencils_used);
                state.cones.push(cone);
            }
            Err(e @ Error::VerificationFailed(_)) => {
                c.check(&format!("net {i}"), false, e.to_string());
                return Ok(());
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn criterion_double_quadric<F: PrimeField>(
    ctx: &CurveContext<F>,
    cfg: &SuiteConfig,
    c: &mut Criterion,
) -> Result<()> {
    for i in 0..cfg.d_samples {
        let mut rng = stream_indexed(cfg.seed, "double-quadric", i as u64);
        let net = d_net(ctx, &mut rng)?;
        let kernel = net.vertex_quadrics.len();
        let cone = double_quadric_quartic(ctx, &net)?;
        let q = net.d_quadric().expect("kernel is one-dimensional");
        let mut square = q.pow(2).into_coeffs();
        normalize_first_nonzero(&mut square);
        let refused = matches!(
            reconstruct_quartic(ctx, &net, &cfg.reconstruct_options(cfg.seed)),
            Err(Error::NetInD)
        );
        c.check(
            &format!("net {i}"),
            kernel == 1
                && cone.form.coeffs() == square.as_slice()
                && ctx.ideal(4).contains(cone.form.coeffs())
                && cone.certificate.passed()
                && refused,
            format!("ker(res) dim {kernel}, vertex singular {}", cone.certificate.vertex_singular),
        );
    }
    Ok(())
}

fn criterion_polars<F: PrimeField>(
    ctx: &CurveContext<F>,
    cfg: &SuiteConfig,
    c: &mut Criterion,
    state: &State<F>,
) -> Result<()> {
    let g = ctx.genus();
    if state.cones.len() < cfg.polar_nets {
        return Err(Error::Invalid("reconstructions unavailable".into()));
    }
    for (i, cone) in state.cones.iter().take(cfg.polar_nets).enumerate() {
        for (j, x) in cone.net.vertex.iter().enumerate() {
            let polar = polar_cubic(ctx, cone, x, cfg.seed ^ (i * 31 + j) as u64, cfg.oracle_points)?;
            let k = &polar.certificate;
            c.check(
                &format!("net {i} polar {j}"),
                k.passed() && k.oracle_checked == cfg.oracle_points,
                format!(
                    "in I(3) {}, singular on vertex {}, oracle {}/{} ({} on the polar)",
                    k.in_i3, k.vertex_singular, k.oracle_agree, k.oracle_checked, k.oracle_on_polar
                ),
            );
        }
        if cone.net.vertex.len() >= 2 {
            let (x, y) = (&cone.net.vertex[0], &cone.net.vertex[1]);
            let sum: Vec<F> = x.iter().zip(y).map(|(&a, &b)| a + b).collect();
            c.check(
                &format!("net {i} linearity"),
                cone.polar(&sum) == cone.polar(x).add(&cone.polar(y)),
                "P_(x+y) = P_x + P_y",
            );
        }
        let lw = lw_space(ctx, cone)?;
        c.check(
            &format!("net {i} L_W"),
            lw.dim() == g - 3 && lw.polar_rank == g - 3 && lw.polars_inside,
            format!("dim {}, polar rank {}", lw.dim(), lw.polar_rank),
        );
    }
    Ok(())
}

fn criterion_hessian<F: PrimeField>(
    ctx: &CurveContext<F>,
    cfg: &SuiteConfig,
    c: &mut Criterion,
    state: &State<F>,
) -> Result<()> {
    let cone = state
        .cones
        .first()
        .ok_or_else(|| Error::Invalid("reconstructions unavailable".into()))?;
    let rows = hessian_sweep(ctx, &cone.net, cone, cfg.sweep, cfg.seed)?;
    let mismatches = rows.iter().filter(|r| r.on_gamma() != r.singular_fiber()).count();
    let on = rows.iter().filter(|r| r.on_gamma()).count();
    let off = rows.len() - on;
    c.check(
        "discriminant vanishes exactly on the plane curve",
        mismatches == 0 && on > 0 && off > 0 && rows.len() >= cfg.sweep.min(100),
        format!("{} fibers, {on} on the curve, {off} off, {mismatches} mismatches", rows.len()),
    );
    let matched = rows.iter().filter(|r| r.kernel_match == Some(true)).count();
    let wrong = rows.iter().filter(|r| r.kernel_match == Some(false)).count();
    let needed = (cfg.sweep / 4).min(50);
    c.check(
        "singular point of the fiber is the curve point",
        wrong == 0 && matched >= needed,
        format!("{matched} smooth fibers matched, {wrong} mismatched"),
    );
    Ok(())
}

fn criterion_nodes<F: PrimeField>(
    cfg: &SuiteConfig,
    c: &mut Criterion,
    state: &State<F>,
    g: usize,
) -> Result<()> {
    let want = expected_nodes(g);
    for (i, cone) in state.cones.iter().take(cfg.node_nets).enumerate() {
        let gamma = cone.net.gamma.as_ref().ok_or(Error::NetHasBasePoint)?;
        let mut rng = stream_indexed(cfg.seed, "nodes", i as u64);
        let n = node_count(gamma, &mut rng)?;
        c.check(&format!("net {i}"), n == want, format!("{n} nodes (expected {want})"));
    }
    Ok(())
}

fn criterion_secants<F: PrimeField>(
    ctx: &CurveContext<F>,
    cfg: &SuiteConfig,
    c: &mut Criterion,
    state: &State<F>,
) -> Result<()> {
    let cone = state
        .cones
        .first()
        .ok_or_else(|| Error::Invalid("reconstructions unavailable".into()))?;
    let panel = ctx.panel();
    let mut rng = stream(cfg.seed, "secants");
    let mut bad = 0;
    for _ in 0..cfg.secant_pairs {
        let i = rand::Rng::gen_range(&mut rng, 0..panel.len());
        let mut j = rand::Rng::gen_range(&mut rng, 0..panel.len() - 1);
        if j >= i {
            j += 1;
        }
        let r = secant_criterion(ctx, &cone.net, cone, &panel[i], &panel[j])?;
        bad += (r != (false, false)) as usize;
    }
    c.check(
        "random pairs",
        bad == 0,
        format!("{} pairs, {bad} not (false, false)", cfg.secant_pairs),
    );

    let mut outcomes = Vec::new();
    for k in 0..cfg.engineered_pairs {
        let (p, q) = (&panel[2 * k], &panel[2 * k + 1]);
        let net = vertex_secant_net(ctx, p, q, &mut rng)?;
        let cone = reconstruct_quartic(ctx, &net, &cfg.reconstruct_options(cfg.seed ^ 0x5ec))?;
        outcomes.push(secant_criterion(ctx, &net, &cone, p, q)?);
    }
    c.check(
        "secant through the vertex",
        outcomes.iter().all(|&r| r == (true, true)),
        format!("{outcomes:?}"),
    );

    let mut outcomes = Vec::new();
    let mut scan = panel.iter();
    while outcomes.len() < cfg.engineered_pairs {
        let Some(p) = scan.next() else {
            return Err(Error::BudgetExhausted("pairs with a double section".into()));
        };
        let q = if ctx.genus() == 4 {
            match bitangent_partner(ctx, p, &mut rng)? {
                Some(q) => q,
                None => continue,
            }
        } else {
            panel[(panel.len() / 2 + outcomes.len()) % panel.len()].clone()
        };
        let net = double_section_net(ctx, p, &q, &mut rng)?;
        let cone = reconstruct_quartic(ctx, &net, &cfg.reconstruct_options(cfg.seed ^ 0xd5))?;
        outcomes.push(secant_criterion(ctx, &net, &cone, p, &q)?);
    }
    c.check(
        "section vanishing doubly at both points",
        outcomes.iter().all(|&r| r == (true, true)),
        format!("{outcomes:?}"),
    );
    Ok(())
}

fn criterion_spans<F: PrimeField>(
    ctx: &CurveContext<F>,
    cfg: &SuiteConfig,
    c: &mut Criterion,
    state: &mut State<F>,
    obs: &mut Observations,
) -> Result<()> {
    let g = ctx.genus();
    let opts = SpanOptions {
        seed: cfg.seed,
        batch: cfg.span_batch,
        stable_batches: cfg.span_stable_batches,
        max_batches: cfg.span_max_batches,
    };
    let mut spans = accumulate_spans(ctx, &opts)?;
    let want = expected_f4_rank(g).ok_or(Error::UnsupportedGenus(g))?;
    let (r4, r3) = (spans.f4.rank(), spans.f3.rank());
    obs.f4_rank = Some(r4);
    obs.f3_rank = Some(r3);
    c.check(
        "rank of the quartic span",
        r4 == want,
        format!("{r4} (expected {want}), trajectory {:?}", spans.f4.trajectory),
    );
    let dim_i4 = ctx.ideal(4).dim();
    c.check("strictly inside I(4)", r4 < dim_i4, format!("{r4} < {dim_i4}"));
    let squares = squares_containment(ctx, &spans.f4, 20, cfg.seed);
    c.check(
        "squares of quadrics",
        squares.passed() && squares.random_quartic_contained != Some(true),
        format!(
            "basis {}/{}, random {}/{}, random quartic contained {:?}",
            squares.basis_squares_contained,
            squares.basis_size,
            squares.random_contained,
            squares.random_checked,
            squares.random_quartic_contained
        ),
    );
    for _ in 0..cfg.span_extra_nets {
        spans.add_next(ctx, cfg.seed)?;
    }
    c.check(
        "stable after saturation",
        (spans.f4.rank(), spans.f3.rank()) == (r4, r3),
        format!("{} further nets", cfg.span_extra_nets),
    );
    let cubics_ok = spans.f3.basis().iter().all(|f: &Form<F>| ctx.ideal(3).contains(f.coeffs()));
    c.check("polars lie in I(3)", cubics_ok, format!("span rank {r3}"));
    state.spans = Some(spans);
    Ok(())
}

fn criterion_base_locus<F: PrimeField>(
    ctx: &CurveContext<F>,
    cfg: &SuiteConfig,
    c: &mut Criterion,
    state: &State<F>,
) -> Result<()> {
    let spans = state
        .spans
        .as_ref()
        .ok_or_else(|| Error::Invalid("spans unavailable".into()))?;
    for (name, acc) in [("quartic span", &spans.f4), ("cubic span", &spans.f3)] {
        let rep = base_locus_probe(ctx, acc, cfg.off_curve_probes, cfg.structured_probes, cfg.seed)?;
        let probes: Vec<String> = rep
            .probes
            .iter()
            .map(|p| format!("{:?} {}/{}", p.kind, p.violations, p.probes))
            .collect();
        c.check(
            name,
            rep.passed(),
            format!(
                "curve points {}/{}, violations by probe: {}",
                rep.curve_points_contained,
                rep.curve_points_checked,
                probes.join(", ")
            ),
        );
    }
    Ok(())
}

/// Builds the context for a run from a model and stored points.
pub fn context_for<F: PrimeField>(
    curve: crate::curve::CurveModel<F>,
    points: Vec<crate::curve::ProjPoint<F>>,
    cfg: &SuiteConfig,
) -> Result<CurveContext<F>> {
    CurveContext::with_points(curve, points, cfg.panel())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        assert_eq!(SuiteConfig::default().validate(), Ok(()));
        assert_eq!(SuiteConfig::quick().validate(), Ok(()));
    }

    #[test]
    fn validation_names_the_field() {
        let cfg = SuiteConfig {
            secant_pairs: 0,
            ..Default::default()
        };
        assert!(cfg.validate().unwrap_err().contains("secant_pairs"));
        let cfg = SuiteConfig {
            polar_nets: 11,
            ..Default::default()
        };
        assert!(cfg.validate().unwrap_err().contains("polar_nets"));
    }

    #[test]
    fn partial_json_fills_defaults_and_rejects_unknown_fields() {
        let cfg: SuiteConfig = serde_json::from_str(r#"{"seed": 3}"#).unwrap();
        assert_eq!(cfg, SuiteConfig { seed: 3, ..Default::default() });
        let err = serde_json::from_str::<SuiteConfig>(r#"{"seeds": 3}"#).unwrap_err();
        assert!(err.to_string().contains("seeds"));
    }

    #[test]
    fn expected_values() {
        assert_eq!(expected_ideal_dims(4), Some([1, 5, 14]));
        assert_eq!(expected_ideal_dims(6), None);
        assert_eq!(expected_f4_rank(5), Some(16));
    }
}
