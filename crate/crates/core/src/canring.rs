//! Evaluation model of the canonical ring.
//!
//! A degree-`n` class of the coordinate ring is represented by its values on
//! a fixed panel of curve points. Because canonical curves are projectively
//! normal, the evaluation matrix of degree-`n` monomials has rank
//! `dim R_n = (2n − 1)(g − 1)` (or `g` for `n = 1`), and its kernel is the
//! ideal piece `I(n)`. A second, disjoint panel is kept for round-trip checks.

use crate::curve::{CurveModel, ProjPoint};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::forms::{binomial, monomial_values, num_monomials, Form};
use crate::matrix::{DenseMatrix, EchelonBasis};
use crate::rng::stream;

/// Highest degree for which the context precomputes evaluation data.
pub const MAX_DEGREE: usize = 4;

/// `dim R_n` for a canonical curve of genus `g`.
pub fn graded_dimension(g: usize, n: usize) -> usize {
    match n {
        0 => 1,
        1 => g,
        _ => (2 * n - 1) * (g - 1),
    }
}

/// `dim I(n) = dim Sym^n − dim R_n`.
pub fn ideal_dimension(g: usize, n: usize) -> usize {
    num_monomials(g, n) - graded_dimension(g, n)
}

/// Evaluation data for `R_n`.
#[derive(Clone, Debug)]
pub struct GradedPiece<F> {
    pub degree: usize,
    /// Rows are panel points, columns are degree-`n` monomials.
    pub eval: DenseMatrix<F>,
    pub rank: usize,
    /// Monomials whose columns form a basis of the column space.
    pub basis_monomials: Vec<usize>,
}

/// Basis of `I(n)` as coefficient vectors, in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPiece<F> {
    pub degree: usize,
    pub nvars: usize,
    pub basis: Vec<Vec<F>>,
}

impl<F: PrimeField> IdealPiece<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn forms(&self) -> Vec<Form<F>> {
        self.basis
            .iter()
            .map(|c| Form::new(self.nvars, self.degree, c.clone()))
            .collect()
    }

    pub fn contains(&self, coeffs: &[F]) -> bool {
        let mut span = EchelonBasis::new(coeffs.len());
        for b in &self.basis {
            span.insert(b);
        }
        span.contains(coeffs)
    }
}

/// A class in `R_n`: its values on the panel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingClass<F> {
    pub degree: usize,
    pub values: Vec<F>,
}

/// Panel sizes for a context.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PanelConfig {
    /// Points per panel; `None` means `4 · dim Sym⁴`.
    pub panel_size: Option<usize>,
}

impl Default for PanelConfig {
    fn default() -> Self {
        Self { panel_size: None }
    }
}

/// The shared, immutable per-curve state.
#[derive(Clone, Debug)]
pub struct CurveContext<F> {
    curve: CurveModel<F>,
    panel: Vec<ProjPoint<F>>,
    holdout: Vec<ProjPoint<F>>,
    pieces: Vec<GradedPiece<F>>,
    ideals: Vec<IdealPiece<F>>,
}

impl<F: PrimeField> CurveContext<F> {
    pub fn new(curve: CurveModel<F>, config: PanelConfig) -> Result<Self> {
        Self::with_points(curve, Vec::new(), config)
    }

    /// Uses `points` first (e.g. those stored in a curve file) and tops the
    /// panels up with freshly sampled points.
    pub fn with_points(
        curve: CurveModel<F>,
        points: Vec<ProjPoint<F>>,
        config: PanelConfig,
    ) -> Result<Self> {
        let g = curve.genus();
        let n = config
            .panel_size
            .unwrap_or(4 * num_monomials(g, MAX_DEGREE));
        let mut all: Vec<ProjPoint<F>> = points;
        all.sort();
        all.dedup();
        if all.len() < 2 * n {
            let mut rng = stream(curve.seed(), "panel");
            let extra = curve.sample_points_with(2 * n + all.len(), &mut rng)?;
            for p in extra {
                if all.len() >= 2 * n {
                    break;
                }
                if all.binary_search(&p).is_err() {
                    let at = all.partition_point(|q| q < &p);
                    all.insert(at, p);
                }
            }
        }
        all.truncate(2 * n);
        // interleave so both panels spread over the sorted list
        let mut panel = Vec::with_capacity(n);
        let mut holdout = Vec::with_capacity(n);
        for (i, p) in all.into_iter().enumerate() {
            if i % 2 == 0 {
                panel.push(p);
            } else {
                holdout.push(p);
            }
        }
        let mut pieces = Vec::new();
        for d in 0..=MAX_DEGREE {
            pieces.push(graded_piece(&panel, g, d));
        }
        let mut ctx = Self {
            curve,
            panel,
            holdout,
            pieces,
            ideals: Vec::new(),
        };
        for d in 2..=MAX_DEGREE {
            let ideal = ctx.compute_ideal(d, false)?;
            ctx.ideals.push(ideal);
        }
        Ok(ctx)
    }

    pub fn curve(&self) -> &CurveModel<F> {
        &self.curve
    }

    pub fn genus(&self) -> usize {
        self.curve.genus()
    }

    pub fn panel(&self) -> &[ProjPoint<F>] {
        &self.panel
    }

    pub fn holdout(&self) -> &[ProjPoint<F>] {
        &self.holdout
    }

    /// Both panels, panel first.
    pub fn all_points(&self) -> impl Iterator<Item = &ProjPoint<F>> {
        self.panel.iter().chain(&self.holdout)
    }

    pub fn graded_piece(&self, n: usize) -> &GradedPiece<F> {
        &self.pieces[n]
    }

    /// `I(n)` for `2 ≤ n ≤ 4`.
    pub fn ideal(&self, n: usize) -> &IdealPiece<F> {
        assert!((2..=MAX_DEGREE).contains(&n), "ideal degree {n} out of range");
        &self.ideals[n - 2]
    }

    /// Recomputes `I(n)` as the kernel of the evaluation matrix on the main
    /// panel, or on the holdout panel when `holdout` is set.
    pub fn compute_ideal(&self, n: usize, holdout: bool) -> Result<IdealPiece<F>> {
        if !(2..=MAX_DEGREE).contains(&n) {
            return Err(Error::UnsupportedDegree(n));
        }
        let g = self.genus();
        let points = if holdout { &self.holdout } else { &self.panel };
        if points.len() < 2 * num_monomials(g, n) {
            return Err(Error::RankDeficiency {
                degree: n,
                rank: 0,
                expected: graded_dimension(g, n),
            });
        }
        let piece = if holdout {
            graded_piece(points, g, n)
        } else {
            self.pieces[n].clone()
        };
        let expected = graded_dimension(g, n);
        if piece.rank != expected {
            return Err(Error::RankDeficiency {
                degree: n,
                rank: piece.rank,
                expected,
            });
        }
        let kernel = piece.eval.kernel_basis();
        let m = num_monomials(g, n);
        let ech = DenseMatrix::from_rows(&kernel, m).rref();
        let basis = (0..ech.pivots.len())
            .map(|r| ech.matrix.row(r).to_vec())
            .collect();
        Ok(IdealPiece {
            degree: n,
            nvars: g,
            basis,
        })
    }

    /// Class of a form in `R_n`.
    pub fn class_of(&self, form: &Form<F>) -> RingClass<F> {
        RingClass {
            degree: form.degree(),
            values: self.panel.iter().map(|p| form.eval(p.coords())).collect(),
        }
    }

    pub fn one(&self) -> RingClass<F> {
        RingClass {
            degree: 0,
            values: vec![F::one(); self.panel.len()],
        }
    }

    /// Pointwise product of classes.
    pub fn multiply(&self, a: &RingClass<F>, b: &RingClass<F>) -> RingClass<F> {
        assert_eq!(a.values.len(), b.values.len());
        RingClass {
            degree: a.degree + b.degree,
            values: a
                .values
                .iter()
                .zip(&b.values)
                .map(|(&x, &y)| x * y)
                .collect(),
        }
    }

    /// Whether `class` lies in the column space of the evaluation matrix of its degree.
    pub fn in_graded_piece(&self, class: &RingClass<F>) -> bool {
        if class.degree > MAX_DEGREE {
            return false;
        }
        let piece = &self.pieces[class.degree];
        let mut span = EchelonBasis::new(self.panel.len());
        for &j in &piece.basis_monomials {
            span.insert(&piece.eval.column(j));
        }
        span.contains(&class.values)
    }

    /// Whether `H⁰(ω) · I(2)` spans `I(3)` (Petri's degree-2 generation in degree 3).
    pub fn petri_check(&self) -> bool {
        self.petri_rank() == self.ideal(3).dim()
    }

    /// Rank of the products `z_i · q` for `q` in a basis of `I(2)`.
    pub fn petri_rank(&self) -> usize {
        let g = self.genus();
        let mut span = EchelonBasis::new(num_monomials(g, 3));
        for q in self.ideal(2).forms() {
            for i in 0..g {
                let mut e = vec![F::zero(); g];
                e[i] = F::one();
                span.insert(q.mul(&Form::linear(&e)).coeffs());
            }
        }
        span.rank()
    }
}

fn graded_piece<F: PrimeField>(points: &[ProjPoint<F>], g: usize, d: usize) -> GradedPiece<F> {
    let m = num_monomials(g, d);
    let rows: Vec<Vec<F>> = points
        .iter()
        .map(|p| monomial_values(d, p.coords()))
        .collect();
    let eval = DenseMatrix::from_rows(&rows, m);
    let ech = eval.rref();
    GradedPiece {
        degree: d,
        rank: ech.pivots.len(),
        basis_monomials: ech.pivots,
        eval,
    }
}

/// `dim H⁰(P^{k−1}, O(2)) = C(k + 1, 2)`; used for the restriction to the vertex.
pub fn quadrics_on_projective_space(k: usize) -> usize {
    binomial(k + 1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn riemann_roch_counts() {
        assert_eq!(ideal_dimension(4, 2), 1);
        assert_eq!(ideal_dimension(4, 3), 5);
        assert_eq!(ideal_dimension(4, 4), 14);
        assert_eq!(ideal_dimension(5, 2), 3);
        assert_eq!(ideal_dimension(5, 3), 15);
        assert_eq!(ideal_dimension(5, 4), 42);
    }
}
