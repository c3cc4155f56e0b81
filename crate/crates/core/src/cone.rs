//! The quartic `F_W` as an explicit form, rebuilt from the splitting of its
//! restrictions to the planes `ℙV⊥` (`V ⊂ W` a pencil), together with its
//! cubic polars and the geometric checks on secants, tangents and `L_W`.

use rand::Rng;
use serde::Serialize;

use crate::canring::CurveContext;
use crate::curve::{proportional, ProjPoint};
use crate::error::{Error, Result};
use crate::field::{dot, normalize_first_nonzero, PrimeField};
use crate::forms::{num_monomials, Form};
use crate::matrix::{rank_of, DenseMatrix, EchelonBasis};
use crate::net::{combine, fw_oracle, net_with_vertex, polar_oracle, Net};
use crate::pencil::{build_pencil, cup_gram, PencilData};
use crate::poly::{resultant_formal, UniPoly};
use crate::rng::{stream, StreamRng};

/// `F_W |_{ℙV⊥} = c · ℓ² · βᵀ G β` in coordinates `β` on `V⊥`.
#[derive(Clone, Debug)]
pub struct SplitFiber<F> {
    pub pencil: PencilData<F>,
    /// The lift `w ∈ W \ V` used for the Gram.
    pub w: Vec<F>,
    /// Basis of `ann(V)`, `g − 2` vectors.
    pub basis: Vec<Vec<F>>,
    /// `ℓ(β) = w(Σ β_j v_j)`.
    pub ell: Vec<F>,
    pub g_matrix: DenseMatrix<F>,
}

impl<F: PrimeField> SplitFiber<F> {
    pub fn point(&self, beta: &[F]) -> Vec<F> {
        combine(&self.basis, beta)
    }

    pub fn ell_at(&self, beta: &[F]) -> F {
        dot(&self.ell, beta)
    }

    pub fn quadric_at(&self, beta: &[F]) -> F {
        dot(beta, &self.g_matrix.mul_vec(beta))
    }

    pub fn quadric(&self) -> Form<F> {
        quadric_from_gram(&self.g_matrix)
    }

    /// `ℓ² · Q` as a quartic in `g − 2` variables.
    pub fn model(&self) -> Form<F> {
        Form::linear(&self.ell).pow(2).mul(&self.quadric())
    }
}

/// The quadratic form `βᵀ G β`.
pub fn quadric_from_gram<F: PrimeField>(g: &DenseMatrix<F>) -> Form<F> {
    let n = g.rows();
    let mut q = Form::zero(n, 2);
    for i in 0..n {
        for j in i..n {
            let mut e = vec![0u32; n];
            e[i] += 1;
            e[j] += 1;
            let c = if i == j { g[(i, j)] } else { g[(i, j)] + g[(j, i)] };
            q = q.add(&Form::monomial(n, &e, c));
        }
    }
    q
}

/// Splitting data for a pencil `V ⊂ W`.
pub fn split_fiber<F: PrimeField>(
    ctx: &CurveContext<F>,
    net: &Net<F>,
    v: &[Vec<F>],
) -> Result<SplitFiber<F>> {
    if net.in_d {
        return Err(Error::NetInD);
    }
    let g = ctx.genus();
    let mut span = EchelonBasis::new(g);
    for r in net.rows() {
        span.insert(&r);
    }
    if v.iter().any(|s| !span.contains(s)) {
        return Err(Error::Invalid("pencil is not inside the net".into()));
    }
    let pencil = build_pencil(ctx, v)?;
    let w = net
        .rows()
        .into_iter()
        .find(|r| !pencil.contains(r))
        .expect("a net is not contained in a pencil");
    let cup = cup_gram(&pencil, &w)?;
    let corank = cup.corank();
    if corank != 2 {
        return Err(Error::CorankJump(corank));
    }
    let basis = DenseMatrix::from_rows(&pencil.basis, g).kernel_basis();
    let k = basis.len();
    let mut ys = Vec::with_capacity(k);
    for vj in &basis {
        ys.push(cup.gram.solve_consistent(vj)?.0);
    }
    let mut gm = DenseMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gm[(i, j)] = dot(&basis[i], &ys[j]);
        }
    }
    let ell = basis.iter().map(|vj| dot(&w, vj)).collect();
    Ok(SplitFiber {
        pencil,
        w,
        basis,
        ell,
        g_matrix: gm,
    })
}

/// Verification record of a quartic cone.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConeCertificate {
    /// Dimension of `{F ∈ I(4) : F singular along the vertex}`.
    pub constrained_dim: Option<usize>,
    pub pencils_used: usize,
    pub pencils_rejected: usize,
    pub solution_dim: usize,
    pub curve_points_checked: usize,
    pub curve_points_vanishing: usize,
    pub vertex_singular: bool,
    pub euler_identity: bool,
    pub oracle_checked: usize,
    pub oracle_agree: usize,
    pub oracle_on_cone: usize,
    pub oracle_skipped: usize,
    pub holdout_pencil_match: Option<bool>,
}

impl ConeCertificate {
    pub fn passed(&self) -> bool {
        self.curve_points_vanishing == self.curve_points_checked
            && self.vertex_singular
            && self.euler_identity
            && self.oracle_agree == self.oracle_checked
            && self.holdout_pencil_match != Some(false)
    }
}

#[derive(Clone, Debug)]
pub struct QuarticCone<F> {
    pub net: Net<F>,
    pub form: Form<F>,
    pub certificate: ConeCertificate,
}

impl<F: PrimeField> QuarticCone<F> {
    pub fn eval(&self, b: &[F]) -> F {
        self.form.eval(b)
    }

    /// The cubic polar `Σ x_i ∂F/∂z_i`.
    pub fn polar(&self, x: &[F]) -> Form<F> {
        self.form.polar(x)
    }
}

/// Tuning for [`reconstruct_quartic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReconstructOptions {
    pub seed: u64,
    pub k_start: usize,
    pub k_max: usize,
    pub oracle_points: usize,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            k_start: 6,
            k_max: 20,
            oracle_points: 50,
        }
    }
}

/// Sample points imposed per pencil. A quartic on `ℙV⊥ = ℙ^{g−3}` has
/// `C(g+1, 4)` coefficients; two extra points keep the restriction exact.
pub fn points_per_pencil(g: usize) -> usize {
    (2 * (g - 2) + 3).max(num_monomials(g - 2, 4) + 2)
}

/// Rows `(i, k) ↦ [coefficient k of ∂_i f_j |_{vertex}]_j` forcing singularity along the vertex.
pub fn vertex_singularity_rows<F: PrimeField>(forms: &[Form<F>], vertex: &[Vec<F>]) -> Vec<Vec<F>> {
    let Some(first) = forms.first() else {
        return Vec::new();
    };
    let g = first.nvars();
    let restricted: Vec<Vec<Form<F>>> = forms
        .iter()
        .map(|f| (0..g).map(|i| f.partial(i).restrict(vertex)).collect())
        .collect();
    let width = num_monomials(vertex.len(), first.degree() - 1);
    let mut rows = Vec::new();
    for i in 0..g {
        for k in 0..width {
            rows.push(restricted.iter().map(|r| r[i].coeffs()[k]).collect());
        }
    }
    rows
}

/// Whether every first partial of `f` vanishes identically on the span of `vertex`.
pub fn singular_along<F: PrimeField>(f: &Form<F>, vertex: &[Vec<F>]) -> bool {
    (0..f.nvars()).all(|i| f.partial(i).restrict(vertex).is_zero())
}

fn random_vec<F: PrimeField, R: Rng>(n: usize, rng: &mut R) -> Vec<F> {
    (0..n).map(|_| F::random(rng)).collect()
}

/// Draws pencils `V_u` until one admits splitting data.
fn next_fiber<F: PrimeField>(
    ctx: &CurveContext<F>,
    net: &Net<F>,
    rng: &mut StreamRng,
    rejected: &mut usize,
) -> Result<SplitFiber<F>> {
    loop {
        if *rejected > 200 {
            return Err(Error::BudgetExhausted("admissible pencils".into()));
        }
        let u: Vec<F> = random_vec(3, rng);
        if u.iter().all(|x| x.is_zero()) {
            continue;
        }
        let v = net.pencil_of(&u)?;
        match split_fiber(ctx, net, &v) {
            Ok(f) => return Ok(f),
            Err(Error::InadmissiblePencil { .. }) | Err(Error::CorankJump(_)) => *rejected += 1,
            Err(e) => return Err(e),
        }
    }
}

/// Reconstructs `F_W` for a net outside `𝒟`.
pub fn reconstruct_quartic<F: PrimeField>(
    ctx: &CurveContext<F>,
    net: &Net<F>,
    opts: &ReconstructOptions,
) -> Result<QuarticCone<F>> {
    if net.in_b {
        return Err(Error::NetHasBasePoint);
    }
    if net.in_d {
        return Err(Error::NetInD);
    }
    let g = ctx.genus();
    let basis = ctx.ideal(4).forms();
    let m = basis.len();
    let vertex_rows = vertex_singularity_rows(&basis, &net.vertex);
    let constrained_dim = m - DenseMatrix::from_rows(&vertex_rows, m).rank();

    let mut rng = stream(opts.seed, "pencils");
    let mut fibers: Vec<SplitFiber<F>> = Vec::new();
    // per pencil: rows of [B_j(b)] and the coefficient of c_k
    let mut pencil_rows: Vec<Vec<(Vec<F>, F)>> = Vec::new();
    let mut rejected = 0;
    let npts = points_per_pencil(g);
    let solution = loop {
        let fiber = next_fiber(ctx, net, &mut rng, &mut rejected)?;
        let mut rows = Vec::with_capacity(npts);
        for _ in 0..npts {
            let beta: Vec<F> = random_vec(g - 2, &mut rng);
            let b = fiber.point(&beta);
            let l = fiber.ell_at(&beta);
            rows.push((
                basis.iter().map(|f| f.eval(&b)).collect(),
                -(l * l * fiber.quadric_at(&beta)),
            ));
        }
        fibers.push(fiber);
        pencil_rows.push(rows);
        let k = fibers.len();
        if k < opts.k_start {
            continue;
        }
        let width = m + k;
        let mut system: Vec<Vec<F>> = vertex_rows
            .iter()
            .map(|r| {
                let mut row = r.clone();
                row.resize(width, F::zero());
                row
            })
            .collect();
        for (idx, rows) in pencil_rows.iter().enumerate() {
            for (a, c) in rows {
                let mut row = a.clone();
                row.resize(width, F::zero());
                row[m + idx] = *c;
                system.push(row);
            }
        }
        let kernel = DenseMatrix::from_rows(&system, width).kernel_basis();
        match kernel.len() {
            0 => return Err(Error::InconsistentReconstruction),
            1 => break kernel.into_iter().next().expect("one vector"),
            d if k >= opts.k_max => return Err(Error::UnderdeterminedReconstruction(d)),
            _ => {}
        }
    };
    let mut coeffs = vec![F::zero(); num_monomials(g, 4)];
    for (a, f) in solution[..m].iter().zip(&basis) {
        for (x, &y) in coeffs.iter_mut().zip(f.coeffs()) {
            *x += *a * y;
        }
    }
    if !normalize_first_nonzero(&mut coeffs) {
        return Err(Error::InconsistentReconstruction);
    }
    let form = Form::new(g, 4, coeffs);

    let mut cert = ConeCertificate {
        constrained_dim: Some(constrained_dim),
        pencils_used: fibers.len(),
        pencils_rejected: rejected,
        solution_dim: 1,
        ..Default::default()
    };
    static_checks(ctx, net, &form, &mut cert);
    oracle_checks(ctx, net, &form, opts, &mut cert)?;
    let holdout = next_fiber(ctx, net, &mut rng, &mut rejected)?;
    cert.holdout_pencil_match = Some(fiber_matches(&form, &holdout));

    if !cert.passed() {
        return Err(Error::VerificationFailed(format!("{cert:?}")));
    }
    Ok(QuarticCone {
        net: net.clone(),
        form,
        certificate: cert,
    })
}

/// Whether `F|_{ℙV⊥}` is a nonzero multiple of `ℓ² · Q` for the fiber.
pub fn fiber_matches<F: PrimeField>(form: &Form<F>, fiber: &SplitFiber<F>) -> bool {
    let restricted = form.restrict(&fiber.basis);
    let model = fiber.model();
    !restricted.is_zero()
        && !model.is_zero()
        && rank_of(
            &[restricted.coeffs().to_vec(), model.coeffs().to_vec()],
            restricted.coeffs().len(),
        ) == 1
}

fn static_checks<F: PrimeField>(
    ctx: &CurveContext<F>,
    net: &Net<F>,
    form: &Form<F>,
    cert: &mut ConeCertificate,
) {
    cert.curve_points_checked = 0;
    cert.curve_points_vanishing = 0;
    for p in ctx.all_points() {
        cert.curve_points_checked += 1;
        if form.eval(p.coords()).is_zero() {
            cert.curve_points_vanishing += 1;
        }
    }
    cert.vertex_singular = singular_along(form, &net.vertex);
    cert.euler_identity = euler_identity(form);
}

/// `Σ z_i ∂F/∂z_i = deg(F) · F`, checked coefficientwise.
pub fn euler_identity<F: PrimeField>(form: &Form<F>) -> bool {
    let g = form.nvars();
    let mut acc = Form::zero(g, form.degree());
    for i in 0..g {
        let mut e = vec![F::zero(); g];
        e[i] = F::one();
        acc = acc.add(&Form::linear(&e).mul(&form.partial(i)));
    }
    acc == form.scale(F::from_u64(form.degree() as u64))
}

/// Zeros of `form` on a random line, as points of the ambient space.
pub fn zeros_on_random_line<F: PrimeField, R: Rng>(form: &Form<F>, rng: &mut R) -> Vec<Vec<F>> {
    let g = form.nvars();
    let p: Vec<F> = random_vec(g, rng);
    let d: Vec<F> = random_vec(g, rng);
    let f = form.on_line(&p, &d);
    if f.is_zero() {
        return Vec::new();
    }
    f.distinct_roots()
        .into_iter()
        .map(|t| p.iter().zip(&d).map(|(&a, &b)| a + t * b).collect())
        .collect()
}

/// Oracle test points: alternately random points and zeros of `form` on random lines.
fn oracle_candidates<F: PrimeField>(
    form: &Form<F>,
    rng: &mut StreamRng,
    i: usize,
) -> Vec<Vec<F>> {
    if i % 2 == 0 {
        vec![random_vec(form.nvars(), rng)]
    } else {
        zeros_on_random_line(form, rng)
    }
}

fn oracle_checks<F: PrimeField>(
    ctx: &CurveContext<F>,
    net: &Net<F>,
    form: &Form<F>,
    opts: &ReconstructOptions,
    cert: &mut ConeCertificate,
) -> Result<()> {
    let mut rng = stream(opts.seed, "oracle");
    let budget = 20 * opts.oracle_points + 100;
    let mut i = 0;
    while cert.oracle_checked < opts.oracle_points {
        if i > budget {
            return Err(Error::BudgetExhausted("oracle test points".into()));
        }
        for b in oracle_candidates(form, &mut rng, i) {
            if cert.oracle_checked >= opts.oracle_points {
                break;
            }
            match fw_oracle(ctx, net, &b) {
                Ok(value) => {
                    let on = form.eval(&b).is_zero();
                    cert.oracle_checked += 1;
                    cert.oracle_on_cone += on as usize;
                    cert.oracle_agree += (on == value) as usize;
                }
                Err(
                    Error::InVertex
                    | Error::OnGammaFiber
                    | Error::InadmissiblePencil { .. }
                    | Error::CorankJump(_),
                ) => cert.oracle_skipped += 1,
                Err(e) => return Err(e),
            }
        }
        i += 1;
    }
    Ok(())
}

/// `F_W = Q_E²` for a generic net of `𝒟`.
pub fn double_quadric_quartic<F: PrimeField>(
    ctx: &CurveContext<F>,
    net: &Net<F>,
) -> Result<QuarticCone<F>> {
    let q = net
        .d_quadric()
        .ok_or(Error::NonGenericD(net.vertex_quadrics.len()))?;
    let mut form = q.pow(2);
    let mut coeffs = form.coeffs().to_vec();
    normalize_first_nonzero(&mut coeffs);
    form = Form::new(ctx.genus(), 4, coeffs);
    let mut cert = ConeCertificate {
        solution_dim: 1,
        ..Default::default()
    };
    static_checks(ctx, net, &form, &mut cert);
    if !cert.passed() {
        return Err(Error::VerificationFailed(format!("{cert:?}")));
    }
    Ok(QuarticCone {
        net: net.clone(),
        form,
        certificate: cert,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PolarCertificate {
    pub in_i3: bool,
    pub vertex_singular: bool,
    pub oracle_checked: usize,
    pub oracle_agree: usize,
    pub oracle_on_polar: usize,
    pub oracle_skipped: usize,
}

impl PolarCertificate {
    pub fn passed(&self) -> bool {
        self.in_i3 && self.vertex_singular && self.oracle_agree == self.oracle_checked
    }
}

#[derive(Clone, Debug)]
pub struct CubicPolar<F> {
    pub x: Vec<F>,
    pub form: Form<F>,
    pub certificate: PolarCertificate,
}

/// `P_x(F_W)` with its certificate; the oracle points come from `seed`.
pub fn polar_cubic<F: PrimeField>(
    ctx: &CurveContext<F>,
    cone: &QuarticCone<F>,
    x: &[F],
    seed: u64,
    oracle_points: usize,
) -> Result<CubicPolar<F>> {
    let net = &cone.net;
    if x.iter().all(|c| c.is_zero()) || !net.in_vertex(x) {
        return Err(Error::NotVertexVector);
    }
    let form = cone.polar(x);
    let mut cert = PolarCertificate {
        in_i3: ctx.ideal(3).contains(form.coeffs()),
        vertex_singular: singular_along(&form, &net.vertex),
        ..Default::default()
    };
    if !net.in_d {
        let mut rng = stream(seed, "polar-oracle");
        let mut i = 0;
        while cert.oracle_checked < oracle_points {
            if i > 20 * oracle_points + 100 {
                return Err(Error::BudgetExhausted("polar test points".into()));
            }
            for b in oracle_candidates(&form, &mut rng, i) {
                if cert.oracle_checked >= oracle_points {
                    break;
                }
                match polar_oracle(ctx, net, x, &b) {
                    Ok(value) => {
                        let on = form.eval(&b).is_zero();
                        cert.oracle_checked += 1;
                        cert.oracle_on_polar += on as usize;
                        cert.oracle_agree += (on == value) as usize;
                    }
                    Err(
                        Error::InVertex
                        | Error::OnGammaFiber
                        | Error::InadmissiblePencil { .. }
                        | Error::CorankJump(_),
                    ) => cert.oracle_skipped += 1,
                    Err(e) => return Err(e),
                }
            }
            i += 1;
        }
    }
    Ok(CubicPolar {
        x: x.to_vec(),
        form,
        certificate: cert,
    })
}

/// Returns `(contained, predicted)` for the secant line through `p` and `q`.
pub fn secant_criterion<F: PrimeField>(
    ctx: &CurveContext<F>,
    net: &Net<F>,
    cone: &QuarticCone<F>,
    p: &ProjPoint<F>,
    q: &ProjPoint<F>,
) -> Result<(bool, bool)> {
    if p == q {
        return Err(Error::Invalid("secant needs two distinct points".into()));
    }
    let g = ctx.genus();
    let tp = ctx.curve().tangent_vector(p)?;
    let tq = ctx.curve().tangent_vector(q)?;
    let contained = cone.form.on_line(p.coords(), q.coords()).is_zero();

    let mut rows = vec![p.coords().to_vec(), q.coords().to_vec()];
    rows.extend(net.vertex.iter().cloned());
    let meets_vertex = rank_of(&rows, g) <= g - 2;
    let conditions: Vec<Vec<F>> = [p.coords(), tp.direction.coords(), q.coords(), tq.direction.coords()]
        .iter()
        .map(|b| net.project(b))
        .collect();
    let double_section = rank_of(&conditions, 3) < 3;
    Ok((contained, meets_vertex || double_section))
}

/// Whether the tangent hyperplane of `F` at `p` is spanned by `p`, `τ_p` and the vertex.
pub fn tangent_space_check<F: PrimeField>(
    ctx: &CurveContext<F>,
    net: &Net<F>,
    cone: &QuarticCone<F>,
    p: &ProjPoint<F>,
) -> Result<bool> {
    let g = ctx.genus();
    let t = ctx.curve().tangent_vector(p)?;
    let mut span = vec![p.coords().to_vec(), t.direction.coords().to_vec()];
    span.extend(net.vertex.iter().cloned());
    if rank_of(&span, g) != g - 1 {
        return Err(Error::SigmaPoint);
    }
    let grad = cone.form.gradient(p.coords());
    if grad.iter().all(|x| x.is_zero()) {
        return Ok(false);
    }
    Ok(span.iter().all(|s| dot(&grad, s).is_zero()))
}

/// `L_W` and the polar map `W⊥ → L_W`.
#[derive(Clone, Debug)]
pub struct LwSpace<F> {
    pub basis: Vec<Form<F>>,
    pub polar_rank: usize,
    /// Every polar `P_x(F)`, `x` in the vertex, lies in `L_W`.
    pub polars_inside: bool,
}

impl<F> LwSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn lw_space<F: PrimeField>(
    ctx: &CurveContext<F>,
    cone: &QuarticCone<F>,
) -> Result<LwSpace<F>> {
    let net = &cone.net;
    if net.in_d {
        return Err(Error::NetInD);
    }
    let g = ctx.genus();
    let i3 = ctx.ideal(3).forms();
    let rows = vertex_singularity_rows(&i3, &net.vertex);
    let kernel = DenseMatrix::from_rows(&rows, i3.len()).kernel_basis();
    let m3 = num_monomials(g, 3);
    let basis: Vec<Form<F>> = kernel
        .iter()
        .map(|c| {
            let mut coeffs = vec![F::zero(); m3];
            for (a, f) in c.iter().zip(&i3) {
                for (x, &y) in coeffs.iter_mut().zip(f.coeffs()) {
                    *x += *a * y;
                }
            }
            Form::new(g, 3, coeffs)
        })
        .collect();
    let polars: Vec<Vec<F>> = net
        .vertex
        .iter()
        .map(|x| cone.polar(x).into_coeffs())
        .collect();
    let polar_rank = rank_of(&polars, m3);
    let mut span = EchelonBasis::new(m3);
    for f in &basis {
        span.insert(f.coeffs());
    }
    let polars_inside = polars.iter().all(|p| span.contains(p));
    Ok(LwSpace {
        basis,
        polar_rank,
        polars_inside,
    })
}

/// A net whose vertex meets the secant line `pq`.
pub fn vertex_secant_net<F: PrimeField, R: Rng>(
    ctx: &CurveContext<F>,
    p: &ProjPoint<F>,
    q: &ProjPoint<F>,
    rng: &mut R,
) -> Result<Net<F>> {
    let g = ctx.genus();
    for _ in 0..20 {
        let lambda = F::random_nonzero(rng);
        let x: Vec<F> = p
            .coords()
            .iter()
            .zip(q.coords())
            .map(|(&a, &b)| a + lambda * b)
            .collect();
        let mut vertex = vec![x];
        for _ in 0..g - 4 {
            vertex.push(random_vec(g, rng));
        }
        match net_with_vertex(ctx, &vertex) {
            Ok(net) if !net.in_d => return Ok(net),
            Ok(_) | Err(Error::RankDeficientW(_)) | Err(Error::AmbiguousFit(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::BudgetExhausted("net through a secant".into()))
}

/// A net containing a section vanishing doubly at `p` and at `q`.
pub fn double_section_net<F: PrimeField, R: Rng>(
    ctx: &CurveContext<F>,
    p: &ProjPoint<F>,
    q: &ProjPoint<F>,
    rng: &mut R,
) -> Result<Net<F>> {
    let g = ctx.genus();
    let tp = ctx.curve().tangent_vector(p)?;
    let tq = ctx.curve().tangent_vector(q)?;
    let conditions = vec![
        p.coords().to_vec(),
        tp.direction.coords().to_vec(),
        q.coords().to_vec(),
        tq.direction.coords().to_vec(),
    ];
    let sections = DenseMatrix::from_rows(&conditions, g).kernel_basis();
    let Some(s) = sections.first() else {
        return Err(Error::Invalid("no section vanishes doubly at p and q".into()));
    };
    for _ in 0..20 {
        let w = vec![s.clone(), random_vec(g, rng), random_vec(g, rng)];
        match crate::net::build_net(ctx, &w) {
            Ok(net) if !net.in_d => return Ok(net),
            Ok(_) | Err(Error::RankDeficientW(_)) | Err(Error::AmbiguousFit(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::BudgetExhausted("net with a double section".into()))
}

/// For g = 4: a second curve point `q` such that one plane is tangent to the
/// curve at both `p` and `q`.
///
/// Planes through the tangent line at `p` form a pencil `H_λ`. Each meets the
/// quadric in a conic through `p`, parametrized from `p`; the cubic pulls back
/// to a binary sextic divisible by `α²`, and `H_λ` is tangent again exactly
/// when the remaining quartic has a double root. The discriminant in `λ` is
/// recovered by interpolation.
pub fn bitangent_partner<F: PrimeField, R: Rng>(
    ctx: &CurveContext<F>,
    p: &ProjPoint<F>,
    rng: &mut R,
) -> Result<Option<ProjPoint<F>>> {
    let g = ctx.genus();
    if g != 4 {
        return Err(Error::UnsupportedGenus(g));
    }
    let quad = &ctx.curve().generators()[0];
    let cubic = &ctx.curve().generators()[1];
    let tau = ctx.curve().tangent_vector(p)?.direction.into_coords();
    let pc = p.coords().to_vec();
    let (r1, r2) = loop {
        let r1: Vec<F> = random_vec(g, rng);
        let r2: Vec<F> = random_vec(g, rng);
        if rank_of(&[pc.clone(), tau.clone(), r1.clone(), r2.clone()], g) == 4 {
            break (r1, r2);
        }
    };
    let bilinear = |a: &[F], b: &[F]| {
        let half = F::from_u64(2).inv().expect("odd characteristic");
        (quad.eval(&add(a, b)) - quad.eval(a) - quad.eval(b)) * half
    };
    // point on the conic of H_λ with direction d = τ + α r_λ, scaled so α² divides the sextic
    let conic_point = |lambda: F, alpha: F| -> Vec<F> {
        let r: Vec<F> = r1.iter().zip(&r2).map(|(&a, &b)| a + lambda * b).collect();
        let d: Vec<F> = tau.iter().zip(&r).map(|(&t, &x)| t + alpha * x).collect();
        let qd = quad.eval(&d);
        let bpd = bilinear(&pc, &d);
        pc.iter()
            .zip(&d)
            .map(|(&a, &b)| qd * a - (bpd + bpd) * b)
            .collect()
    };
    // residual quartic in α for fixed λ
    let residual = |lambda: F| -> UniPoly<F> {
        let xs: Vec<F> = (0..9u64).map(|i| F::from_u64(i + 1)).collect();
        let ys: Vec<F> = xs
            .iter()
            .map(|&a| cubic.eval(&conic_point(lambda, a)))
            .collect();
        let sextic = UniPoly::interpolate(&xs, &ys);
        let (quo, rem) = sextic.div_rem(&UniPoly::monomial(F::one(), 2));
        debug_assert!(rem.is_zero());
        quo
    };
    let npts = 60u64;
    let ls: Vec<F> = (0..npts).map(|i| F::from_u64(i + 2)).collect();
    let ds: Vec<F> = ls
        .iter()
        .map(|&l| {
            let k = residual(l);
            resultant_formal(&k, 4, &k.derivative(), 3)
        })
        .collect();
    let disc = UniPoly::interpolate(&ls, &ds);
    if disc.is_zero() {
        return Ok(None);
    }
    for lambda in disc.distinct_roots() {
        let k = residual(lambda);
        let dbl = k.gcd(&k.derivative());
        if dbl.degree() != Some(1) {
            continue;
        }
        let alpha = -dbl.coeff(0);
        let Some(q) = ProjPoint::new(conic_point(lambda, alpha)) else {
            continue;
        };
        if &q == p || !ctx.curve().contains(q.coords()) {
            continue;
        }
        let Ok(tq) = ctx.curve().tangent_vector(&q) else {
            continue;
        };
        let rows = vec![
            pc.clone(),
            tau.clone(),
            q.coords().to_vec(),
            tq.direction.into_coords(),
        ];
        if rank_of(&rows, g) == 3 && !proportional(&pc, q.coords()) {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

fn add<F: PrimeField>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}
