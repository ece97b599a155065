use num_traits::{One, Zero};

use super::mpoly::MPoly;
use crate::error::{check_dim, Error, Result};
use crate::rational::{int, Rational};
use crate::rootgeom::RationalVector;

/// An exact N x N matrix, used only as the substitution x -> A x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    rows: Vec<Vec<Rational>>,
}

impl LinearMap {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::invalid("linear map needs at least one row"));
        }
        for r in &rows {
            check_dim(n, r.len())?;
        }
        Ok(Self { rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows =
            (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
        Self { rows }
    }

    /// I - c * alpha alpha^T / |alpha|^2. c = 1 gives tau_alpha, c = 2 gives s_alpha.
    fn householder_like(alpha: &RationalVector, c: Rational) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroRoot { index: 1 });
        }
        let n = alpha.dim();
        let scale = c / alpha.norm_sq();
        let a = alpha.coords();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let delta = if i == j { Rational::one() } else { Rational::zero() };
                        delta - &scale * &a[i] * &a[j]
                    })
                    .collect()
            })
            .collect();
        Ok(Self { rows })
    }

    /// The projection tau_alpha onto alpha^perp.
    pub fn projection(alpha: &RationalVector) -> Result<Self> {
        Self::householder_like(alpha, int(1))
    }

    /// The reflection s_alpha.
    pub fn reflection(alpha: &RationalVector) -> Result<Self> {
        Self::householder_like(alpha, int(2))
    }

    /// Permutation matrix with (u x)_{perm[i]} = x_i.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || seen[p] {
                return Err(Error::invalid("not a permutation"));
            }
            seen[p] = true;
            rows[p][i] = Rational::one();
        }
        Ok(Self { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn apply(&self, x: &RationalVector) -> Result<RationalVector> {
        check_dim(self.dim(), x.dim())?;
        RationalVector::new(
            self.rows
                .iter()
                .map(|r| r.iter().zip(x.coords()).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
                .collect(),
        )
    }

    pub fn compose(&self, inner: &Self) -> Result<Self> {
        check_dim(self.dim(), inner.dim())?;
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &self.rows[i][k] * &inner.rows[k][j]))
                    .collect()
            })
            .collect();
        Ok(Self { rows })
    }

    /// Transpose; the inverse of an orthogonal (e.g. permutation) matrix.
    pub fn transpose(&self) -> Self {
        let n = self.dim();
        Self { rows: (0..n).map(|i| (0..n).map(|j| self.rows[j][i].clone()).collect()).collect() }
    }

    /// The images (A x)_i as linear polynomials.
    pub(crate) fn coordinate_images(&self) -> Vec<MPoly> {
        self.rows.iter().map(|r| MPoly::linear_form(&RationalVector::new(r.clone()).expect("non-empty row"))).collect()
    }
}

/// p o A, expanded exactly.
pub fn compose_linear(p: &MPoly, map: &LinearMap) -> Result<MPoly> {
    check_dim(p.dim(), map.dim())?;
    p.substitute(&map.coordinate_images())
}
