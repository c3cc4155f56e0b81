//! Linear systems spanned by many `F_W` and their polars, and probes of
//! their common zero locus.

use serde::Serialize;

use crate::canring::CurveContext;
use crate::cone::{reconstruct_quartic, ReconstructOptions};
use crate::curve::ProjPoint;
use crate::error::{Error, Result};
use crate::field::{normalize_first_nonzero, PrimeField};
use crate::forms::{num_monomials, Form};
use crate::matrix::EchelonBasis;
use crate::net::{combine, point_on_quadric, random_net};
use crate::rng::{stream, stream_indexed};

/// Where an accumulated row came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    /// Index of the net in the sampling sequence.
    pub net_index: usize,
    /// The vertex vector for a polar, `None` for a quartic.
    pub x: Option<Vec<u64>>,
    /// Whether the row raised the rank.
    pub new_direction: bool,
}

#[derive(Clone, Debug)]
pub struct SpanAccumulator<F> {
    pub degree: usize,
    pub nvars: usize,
    span: EchelonBasis<F>,
    pub provenance: Vec<Provenance>,
    /// Rank after each batch.
    pub trajectory: Vec<usize>,
}

impl<F: PrimeField> SpanAccumulator<F> {
    pub fn new(nvars: usize, degree: usize) -> Self {
        Self {
            degree,
            nvars,
            span: EchelonBasis::new(num_monomials(nvars, degree)),
            provenance: Vec::new(),
            trajectory: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    /// Echelon basis of the span, as forms.
    pub fn basis(&self) -> Vec<Form<F>> {
        self.span
            .rows()
            .iter()
            .map(|r| Form::new(self.nvars, self.degree, r.clone()))
            .collect()
    }

    pub fn contains(&self, form: &Form<F>) -> bool {
        self.span.contains(form.coeffs())
    }

    pub fn insert(&mut self, form: &Form<F>, provenance: Provenance) -> bool {
        let mut c = form.coeffs().to_vec();
        normalize_first_nonzero(&mut c);
        let grew = self.span.insert(&c);
        self.provenance.push(Provenance {
            new_direction: grew,
            ..provenance
        });
        grew
    }

    /// Whether every basis row vanishes at `b`.
    pub fn vanishes_at(&self, b: &[F]) -> bool {
        self.basis().iter().all(|f| f.eval(b).is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanOptions {
    pub seed: u64,
    pub batch: usize,
    /// Consecutive rank-stable batches that count as saturation.
    pub stable_batches: usize,
    pub max_batches: usize,
}

impl Default for SpanOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            batch: 5,
            stable_batches: 3,
            max_batches: 40,
        }
    }
}

/// `|F_4|` and `|F_3|` accumulated together.
#[derive(Clone, Debug)]
pub struct Spans<F> {
    pub f4: SpanAccumulator<F>,
    pub f3: SpanAccumulator<F>,
    pub nets_used: usize,
    /// Nets skipped because they fell in `𝒟` or a reconstruction failed.
    pub nets_skipped: usize,
    next_net: usize,
}

impl<F: PrimeField> Spans<F> {
    pub fn new(g: usize) -> Self {
        Self {
            f4: SpanAccumulator::new(g, 4),
            f3: SpanAccumulator::new(g, 3),
            nets_used: 0,
            nets_skipped: 0,
            next_net: 0,
        }
    }

    /// Reconstructs the next net of the sequence and adds `F_W` and its polars.
    /// Returns whether either rank grew.
    pub fn add_next(&mut self, ctx: &CurveContext<F>, seed: u64) -> Result<bool> {
        for _ in 0..50 {
            let index = self.next_net;
            self.next_net += 1;
            let mut rng = stream_indexed(seed, "span-net", index as u64);
            let net = match random_net(ctx, &mut rng) {
                Ok(net) if !net.in_d => net,
                Ok(_) | Err(Error::AmbiguousFit(_)) => {
                    self.nets_skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let opts = ReconstructOptions {
                seed: seed.wrapping_mul(1_000_003).wrapping_add(index as u64),
                oracle_points: 10,
                ..Default::default()
            };
            let cone = match reconstruct_quartic(ctx, &net, &opts) {
                Ok(c) => c,
                Err(Error::BudgetExhausted(_))
                | Err(Error::UnderdeterminedReconstruction(_))
                | Err(Error::InconsistentReconstruction) => {
                    self.nets_skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            self.nets_used += 1;
            let mut grew = self.f4.insert(
                &cone.form,
                Provenance {
                    net_index: index,
                    x: None,
                    new_direction: false,
                },
            );
            for x in &net.vertex {
                grew |= self.f3.insert(
                    &cone.polar(x),
                    Provenance {
                        net_index: index,
                        x: Some(x.iter().map(|c| c.value()).collect()),
                        new_direction: false,
                    },
                );
            }
            return Ok(grew);
        }
        Err(Error::BudgetExhausted("nets outside D".into()))
    }
}

/// Accumulates until neither rank changes for `stable_batches` consecutive batches.
pub fn accumulate_spans<F: PrimeField>(ctx: &CurveContext<F>, opts: &SpanOptions) -> Result<Spans<F>> {
    let mut spans = Spans::new(ctx.genus());
    let mut stable = 0;
    for _ in 0..opts.max_batches {
        let before = (spans.f4.rank(), spans.f3.rank());
        for _ in 0..opts.batch {
            spans.add_next(ctx, opts.seed)?;
        }
        spans.f4.trajectory.push(spans.f4.rank());
        spans.f3.trajectory.push(spans.f3.rank());
        if (spans.f4.rank(), spans.f3.rank()) == before {
            stable += 1;
            if stable >= opts.stable_batches {
                return Ok(spans);
            }
        } else {
            stable = 0;
        }
    }
    Err(Error::BudgetExhausted("span saturation".into()))
}

pub fn accumulate_f4<F: PrimeField>(ctx: &CurveContext<F>, opts: &SpanOptions) -> Result<SpanAccumulator<F>> {
    Ok(accumulate_spans(ctx, opts)?.f4)
}

pub fn accumulate_f3<F: PrimeField>(ctx: &CurveContext<F>, opts: &SpanOptions) -> Result<SpanAccumulator<F>> {
    Ok(accumulate_spans(ctx, opts)?.f3)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquaresReport {
    pub basis_squares_contained: usize,
    pub basis_size: usize,
    pub random_checked: usize,
    pub random_contained: usize,
    /// A random element of `I(4)`; `None` when the span is all of `I(4)`.
    pub random_quartic_contained: Option<bool>,
}

impl SquaresReport {
    pub fn passed(&self) -> bool {
        self.basis_squares_contained == self.basis_size && self.random_contained == self.random_checked
    }
}

/// Whether squares of elements of `I(2)` lie in `|F_4|`.
pub fn squares_containment<F: PrimeField>(
    ctx: &CurveContext<F>,
    f4: &SpanAccumulator<F>,
    random: usize,
    seed: u64,
) -> SquaresReport {
    let quadrics = ctx.ideal(2).forms();
    let g = ctx.genus();
    let mut rng = stream(seed, "squares");
    let basis_squares_contained = quadrics.iter().filter(|q| f4.contains(&q.pow(2))).count();
    let mut random_contained = 0;
    for _ in 0..random {
        let mut q = Form::zero(g, 2);
        for f in &quadrics {
            q = q.add(&f.scale(F::random(&mut rng)));
        }
        random_contained += f4.contains(&q.pow(2)) as usize;
    }
    let quartics = ctx.ideal(4).forms();
    let random_quartic_contained = (f4.rank() < quartics.len()).then(|| {
        let mut f = Form::zero(g, 4);
        for b in &quartics {
            f = f.add(&b.scale(F::random(&mut rng)));
        }
        f4.contains(&f)
    });
    SquaresReport {
        basis_squares_contained,
        basis_size: quadrics.len(),
        random_checked: random,
        random_contained,
        random_quartic_contained,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeKind {
    Random,
    /// On the quadric of `I(2)` (g = 4) but off the curve.
    Quadric,
    /// On the vertex of a random net.
    Vertex,
    /// On a secant line, off the curve.
    Secant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeCount {
    pub kind: ProbeKind,
    pub probes: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseLocusReport {
    pub degree: usize,
    pub curve_points_checked: usize,
    pub curve_points_contained: usize,
    pub probes: Vec<ProbeCount>,
    /// Off-curve points at which every row vanishes.
    pub violation_candidates: Vec<Vec<u64>>,
}

impl BaseLocusReport {
    pub fn passed(&self) -> bool {
        self.curve_points_contained == self.curve_points_checked && self.violation_candidates.is_empty()
    }
}

/// Checks that the span vanishes on the curve and nowhere else among the probes.
pub fn base_locus_probe<F: PrimeField>(
    ctx: &CurveContext<F>,
    span: &SpanAccumulator<F>,
    off_curve: usize,
    structured: usize,
    seed: u64,
) -> Result<BaseLocusReport> {
    let g = ctx.genus();
    let curve = ctx.curve();
    let basis = span.basis();
    let vanish = |b: &[F]| basis.iter().all(|f| f.eval(b).is_zero());
    let mut rng = stream(seed, "base-locus");

    let mut curve_points_checked = 0;
    let mut curve_points_contained = 0;
    for p in ctx.all_points() {
        curve_points_checked += 1;
        curve_points_contained += vanish(p.coords()) as usize;
    }

    let mut probes = Vec::new();
    let mut violation_candidates = Vec::new();
    let mut run = |kind: ProbeKind, points: Vec<Vec<F>>| {
        let mut count = ProbeCount {
            kind,
            probes: 0,
            violations: 0,
        };
        for b in points {
            if b.iter().all(|x| x.is_zero()) || curve.contains(&b) {
                continue;
            }
            count.probes += 1;
            if vanish(&b) {
                count.violations += 1;
                let p = ProjPoint::new(b).expect("nonzero");
                violation_candidates.push(p.coords().iter().map(|x| x.value()).collect());
            }
        }
        probes.push(count);
    };

    let random: Vec<Vec<F>> = (0..off_curve)
        .map(|_| (0..g).map(|_| F::random(&mut rng)).collect())
        .collect();
    run(ProbeKind::Random, random);

    if g == 4 {
        let q = &ctx.ideal(2).forms()[0];
        let unit: Vec<Vec<F>> = (0..g)
            .map(|i| (0..g).map(|j| if i == j { F::one() } else { F::zero() }).collect())
            .collect();
        let mut pts = Vec::with_capacity(structured);
        for _ in 0..structured {
            pts.push(point_on_quadric(q, &unit, &mut rng, 200)?);
        }
        run(ProbeKind::Quadric, pts);
    }

    let mut pts = Vec::with_capacity(structured);
    while pts.len() < structured {
        let net = random_net(ctx, &mut rng)?;
        let c: Vec<F> = (0..net.vertex.len()).map(|_| F::random(&mut rng)).collect();
        pts.push(combine(&net.vertex, &c));
    }
    run(ProbeKind::Vertex, pts);

    let panel = ctx.panel();
    let mut pts = Vec::with_capacity(structured);
    for i in 0..structured {
        let p = panel[i % panel.len()].coords();
        let q = panel[(7 * i + 3) % panel.len()].coords();
        let t = F::random_nonzero(&mut rng);
        pts.push(p.iter().zip(q).map(|(&a, &b)| a + t * b).collect());
    }
    run(ProbeKind::Secant, pts);

    Ok(BaseLocusReport {
        degree: span.degree,
        curve_points_checked,
        curve_points_contained,
        probes,
        violation_candidates,
    })
}
