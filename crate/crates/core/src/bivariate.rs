//! Bivariate polynomials as polynomials in `y` over `F[x]`, and elimination of `y`.

use crate::field::Field;
use crate::poly::{resultant_formal, UniPoly};

/// `Σ_j c_j(x) y^j`, with trailing zero coefficients trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bivariate<F> {
    in_y: Vec<UniPoly<F>>,
}

impl<F: Field> Bivariate<F> {
    pub fn new(mut in_y: Vec<UniPoly<F>>) -> Self {
        while in_y.last().is_some_and(|c| c.is_zero()) {
            in_y.pop();
        }
        Self { in_y }
    }

    /// From a dense table `table[i][j]` = coefficient of `x^i y^j`.
    pub fn from_table(table: &[Vec<F>]) -> Self {
        let dy = table.iter().map(|r| r.len()).max().unwrap_or(0);
        Self::new(
            (0..dy)
                .map(|j| {
                    UniPoly::new(
                        table
                            .iter()
                            .map(|r| r.get(j).copied().unwrap_or_else(F::zero))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self { in_y: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![UniPoly::constant(c)])
    }

    pub fn is_zero(&self) -> bool {
        self.in_y.is_empty()
    }

    /// Coefficient of `y^j` as a polynomial in `x`.
    pub fn coeff_y(&self, j: usize) -> UniPoly<F> {
        self.in_y.get(j).cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.in_y.len().checked_sub(1)
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.in_y.iter().filter_map(|c| c.degree()).max()
    }

    /// Specialise `x = x0`, leaving a polynomial in `y`.
    pub fn eval_x(&self, x0: F) -> UniPoly<F> {
        UniPoly::new(self.in_y.iter().map(|c| c.eval(x0)).collect())
    }

    pub fn eval(&self, x: F, y: F) -> F {
        self.eval_x(x).eval(y)
    }

    pub fn partial_x(&self) -> Self {
        Self::new(self.in_y.iter().map(|c| c.derivative()).collect())
    }

    pub fn partial_y(&self) -> Self {
        Self::new(
            self.in_y
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(F::from_i64(j as i64)))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.in_y.len().max(other.in_y.len());
        Self::new((0..n).map(|j| &self.coeff_y(j) + &other.coeff_y(j)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.in_y.len().max(other.in_y.len());
        Self::new((0..n).map(|j| &self.coeff_y(j) - &other.coeff_y(j)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![UniPoly::zero(); self.in_y.len() + other.in_y.len() - 1];
        for (i, a) in self.in_y.iter().enumerate() {
            for (j, b) in other.in_y.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }
}

/// `Res_y(f, g)` as a polynomial in `x`, by evaluation at consecutive integers and
/// interpolation. The field must have more elements than the degree bound.
pub fn resultant_y<F: Field>(f: &Bivariate<F>, g: &Bivariate<F>) -> UniPoly<F> {
    let (Some(df), Some(dg)) = (f.degree_y(), g.degree_y()) else {
        return UniPoly::zero();
    };
    let bound = dg * f.degree_x().unwrap_or(0) + df * g.degree_x().unwrap_or(0);
    let xs: Vec<F> = (0..=bound as i64).map(F::from_i64).collect();
    let ys: Vec<F> = xs
        .iter()
        .map(|&x| resultant_formal(&f.eval_x(x), df, &g.eval_x(x), dg))
        .collect();
    UniPoly::interpolate(&xs, &ys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::poly::resultant;

    type F = Fp<1_000_003>;

    fn f(v: i64) -> F {
        F::from_i64(v)
    }

    #[test]
    fn resultant_of_circle_and_line() {
        // x^2 + y^2 - 1 and y - x: common points where 2x^2 = 1.
        let circle = Bivariate::from_table(&[
            vec![f(-1), f(0), f(1)],
            vec![],
            vec![f(1)],
        ]);
        let line = Bivariate::from_table(&[vec![f(0), f(1)], vec![f(-1)]]);
        let r = resultant_y(&circle, &line);
        assert_eq!(r.degree(), Some(2));
        // scalar multiple of 2x^2 - 1
        assert_eq!(r.coeff(0) * f(2), -r.coeff(2));
        assert_eq!(r.coeff(1), f(0));
    }

    #[test]
    fn specialisation_commutes_with_resultant() {
        let a = Bivariate::from_table(&[
            vec![f(3), f(1), f(4)],
            vec![f(1), f(5)],
            vec![f(9), f(0), f(2)],
        ]);
        let b = Bivariate::from_table(&[vec![f(6), f(5), f(3), f(5)], vec![f(8), f(9)]]);
        let r = resultant_y(&a, &b);
        for x0 in [0i64, 7, 123, 99_999] {
            let direct = resultant(&a.eval_x(f(x0)), &b.eval_x(f(x0)));
            assert_eq!(r.eval(f(x0)), direct);
        }
    }
}
