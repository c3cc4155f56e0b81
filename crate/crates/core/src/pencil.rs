//! Pencils `V ⊂ H⁰(ω)`: the functional `v̄` on `R_3` cutting out `V · R_2`,
//! the cubic `Ψ_V`, and the cup-product Grams `(s, t) ↦ v̄(w s t)`.
//!
//! `v̄` is stored as a functional on cubic coefficient vectors that kills
//! `I(3)`, so `v̄(c)` is well defined on classes.


use crate::canring::{CurveContext, RingClass};
use crate::error::{Error, Result};
use crate::field::{dot, normalize_first_nonzero, PrimeField};
use crate::forms::{monomial_index, monomials, multinomial, num_monomials, Form};
use crate::matrix::{DenseMatrix, EchelonBasis};

/// A pencil with its extension functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilData<F> {
    /// Reduced echelon basis of `V`, two rows of length `g`.
    pub basis: [Vec<F>; 2],
    /// Functional on cubic coefficient vectors, first nonzero entry 1.
    pub vbar: Vec<F>,
    /// Codimension of `V · R_2` in `R_3`.
    pub codim: usize,
    /// Coordinates used as the complement of `V` (non-pivot columns).
    pub complement: Vec<usize>,
}

/// The symmetric Gram `(s, t) ↦ v̄(w s t)` for a lift `w ∉ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupGram<F> {
    pub w: Vec<F>,
    pub gram: DenseMatrix<F>,
}

impl<F: PrimeField> CupGram<F> {
    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn corank(&self) -> usize {
        self.gram.rows() - self.rank()
    }
}

/// `Ψ_V` restricted to the complement coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiCubic<F> {
    pub complement: Vec<usize>,
    pub form: Form<F>,
}

fn unit<F: PrimeField>(g: usize, i: usize) -> Vec<F> {
    let mut e = vec![F::zero(); g];
    e[i] = F::one();
    e
}

/// Builds the pencil spanned by the two rows of `v`.
pub fn build_pencil<F: PrimeField>(ctx: &CurveContext<F>, v: &[Vec<F>]) -> Result<PencilData<F>> {
    let g = ctx.genus();
    if v.len() != 2 || v.iter().any(|r| r.len() != g) {
        return Err(Error::Invalid("a pencil needs two vectors of length g".into()));
    }
    let ech = DenseMatrix::from_rows(v, g).rref();
    if ech.pivots.len() != 2 {
        return Err(Error::Invalid(format!(
            "pencil has rank {}",
            ech.pivots.len()
        )));
    }
    let basis = [ech.matrix.row(0).to_vec(), ech.matrix.row(1).to_vec()];
    let complement: Vec<usize> = (0..g).filter(|c| !ech.pivots.contains(c)).collect();

    let m3 = num_monomials(g, 3);
    let mut rows: Vec<Vec<F>> = ctx.ideal(3).basis.clone();
    let quad_monos = monomials(g, 2);
    for b in &basis {
        let lin = Form::linear(b);
        for e in quad_monos.iter() {
            rows.push(lin.mul(&Form::monomial(g, e, F::one())).into_coeffs());
        }
    }
    let annihilator = DenseMatrix::from_rows(&rows, m3).kernel_basis();
    let codim = annihilator.len();
    if codim != 1 {
        return Err(Error::InadmissiblePencil { codim });
    }
    let mut vbar = annihilator.into_iter().next().expect("one vector");
    normalize_first_nonzero(&mut vbar);
    Ok(PencilData {
        basis,
        vbar,
        codim,
        complement,
    })
}

impl<F: PrimeField> PencilData<F> {
    pub fn genus(&self) -> usize {
        self.basis[0].len()
    }

    /// `v̄` applied to a cubic form.
    pub fn apply(&self, cubic: &Form<F>) -> F {
        dot(&self.vbar, cubic.coeffs())
    }

    /// The symmetric trilinear form `(s, t, u) ↦ v̄(s t u)` on linear forms.
    pub fn trilinear(&self, s: &[F], t: &[F], u: &[F]) -> F {
        self.apply(&Form::linear(s).mul(&Form::linear(t)).mul(&Form::linear(u)))
    }

    pub fn contains(&self, w: &[F]) -> bool {
        let mut span = EchelonBasis::new(self.genus());
        span.insert(&self.basis[0]);
        span.insert(&self.basis[1]);
        span.contains(w)
    }

    /// Representative of `w mod V` supported on the complement coordinates.
    pub fn reduce_mod_pencil(&self, w: &[F]) -> Vec<F> {
        let mut r = w.to_vec();
        for b in &self.basis {
            let p = b.iter().position(|x| !x.is_zero()).expect("nonzero row");
            let f = r[p];
            for (x, &y) in r.iter_mut().zip(b) {
                *x -= f * y;
            }
        }
        r
    }
}

/// `Ψ_V(s) = v̄(s³)` on the complement of `V`.
pub fn psi_cubic<F: PrimeField>(pencil: &PencilData<F>) -> PsiCubic<F> {
    let g = pencil.genus();
    // v̄(s³) = Σ_m v̄_m · multinomial(m) · s^m
    let full = Form::new(
        g,
        3,
        monomials(g, 3)
            .iter()
            .zip(&pencil.vbar)
            .map(|(e, &v)| v * multinomial::<F>(e))
            .collect(),
    );
    let basis: Vec<Vec<F>> = pencil.complement.iter().map(|&i| unit(g, i)).collect();
    PsiCubic {
        complement: pencil.complement.clone(),
        form: full.restrict(&basis),
    }
}

/// `gram(s, t) = v̄(w · s · t)` on the coordinate basis of `H⁰(ω)`.
pub fn cup_gram<F: PrimeField>(pencil: &PencilData<F>, w: &[F]) -> Result<CupGram<F>> {
    let g = pencil.genus();
    if w.len() != g {
        return Err(Error::Invalid("lift has the wrong length".into()));
    }
    if pencil.contains(w) {
        return Err(Error::LiftInPencil);
    }
    let mut gram = DenseMatrix::zeros(g, g);
    let mut e = vec![0u32; g];
    for i in 0..g {
        for j in i..g {
            let mut acc = F::zero();
            for (k, &wk) in w.iter().enumerate() {
                if wk.is_zero() {
                    continue;
                }
                e.iter_mut().for_each(|x| *x = 0);
                e[i] += 1;
                e[j] += 1;
                e[k] += 1;
                acc += wk * pencil.vbar[monomial_index(&e)];
            }
            gram[(i, j)] = acc;
            gram[(j, i)] = acc;
        }
    }
    Ok(CupGram {
        w: w.to_vec(),
        gram,
    })
}

/// Hessian matrix of `Ψ_V` at the class of `w`, in complement coordinates.
pub fn psi_hessian_at<F: PrimeField>(pencil: &PencilData<F>, w: &[F]) -> DenseMatrix<F> {
    let psi = psi_cubic(pencil);
    let red = pencil.reduce_mod_pencil(w);
    let c: Vec<F> = pencil.complement.iter().map(|&i| red[i]).collect();
    let k = c.len();
    let mut h = DenseMatrix::zeros(k, k);
    for a in 0..k {
        let da = psi.form.partial(a);
        for b in 0..k {
            h[(a, b)] = da.partial(b).eval(&c);
        }
    }
    h
}

/// Whether `V ⊕ ⟨w⟩` lies on the Hessian of `Ψ_V`, i.e. the Hessian matrix is singular.
pub fn hessian_psi_membership<F: PrimeField>(pencil: &PencilData<F>, w: &[F]) -> Result<bool> {
    if pencil.contains(w) {
        return Err(Error::LiftInPencil);
    }
    Ok(psi_hessian_at(pencil, w).determinant().is_zero())
}

/// Gram `(s, t) ↦ λ(w · s · t)` built entirely in the evaluation model.
///
/// `λ` is a panel functional vanishing on the evaluation classes of `V · R_2`
/// and not on all of `R_3`; it is found without reference to `I(3)` or to the
/// coefficient-space functional of [`build_pencil`].
pub fn gram_by_evaluation<F: PrimeField>(
    ctx: &CurveContext<F>,
    v: &[Vec<F>],
    w: &[F],
) -> Result<DenseMatrix<F>> {
    let g = ctx.genus();
    let n = ctx.panel().len();
    let mut products: Vec<Vec<F>> = Vec::new();
    for b in v {
        let lin = ctx.class_of(&Form::linear(b));
        for e in monomials(g, 2).iter() {
            let q = ctx.class_of(&Form::monomial(g, e, F::one()));
            products.push(ctx.multiply(&lin, &q).values);
        }
    }
    // functionals on the panel killing V·R_2
    let killers = DenseMatrix::from_rows(&products, n).kernel_basis();
    let cubic_classes: Vec<RingClass<F>> = monomials(g, 3)
        .iter()
        .map(|e| ctx.class_of(&Form::monomial(g, e, F::one())))
        .collect();
    let lambda = killers
        .into_iter()
        .find(|l| cubic_classes.iter().any(|c| !dot(l, &c.values).is_zero()))
        .ok_or(Error::InadmissiblePencil { codim: 0 })?;
    let lin = |u: &[F]| ctx.class_of(&Form::linear(u));
    let wc = lin(w);
    let mut gram = DenseMatrix::zeros(g, g);
    for i in 0..g {
        let zi = ctx.multiply(&wc, &lin(&unit(g, i)));
        for j in 0..g {
            let zij = ctx.multiply(&zi, &lin(&unit(g, j)));
            gram[(i, j)] = dot(&lambda, &zij.values);
        }
    }
    Ok(gram)
}
