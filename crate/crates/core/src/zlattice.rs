//! Full-rank Z-lattices in Q^n by canonical Hermite normal form, used for
//! exact equality and membership tests on orders and hermitian lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rat;
use crate::{Error, Result};

/// A full-rank lattice (1/den) * rowspace(basis) with `basis` a square
/// integer matrix in row-style HNF: lower-triangular, positive diagonal,
/// entries below the diagonal reduced modulo the diagonal of their column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZLattice {
    basis: Vec<Vec<BigInt>>,
    den: BigInt,
}

impl ZLattice {
    /// Builds the lattice generated by rational row vectors.
    pub fn from_rows(rows: &[Vec<Rat>]) -> Result<Self> {
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("empty or ragged generator matrix".into()));
        }
        let mut den = BigInt::one();
        for r in rows {
            for q in r {
                den = den.lcm(q.denom());
            }
        }
        let int_rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|q| (q * Rat::from_integer(den.clone())).to_integer())
                    .collect()
            })
            .collect();
        let basis = hnf(int_rows, n)?;
        let mut lat = ZLattice { basis, den };
        lat.normalize();
        Ok(lat)
    }

    fn normalize(&mut self) {
        let mut g = self.den.clone();
        for row in &self.basis {
            for x in row {
                g = g.gcd(x);
            }
        }
        if g > BigInt::one() {
            for row in &mut self.basis {
                for x in row.iter_mut() {
                    *x /= &g;
                }
            }
            self.den /= &g;
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Membership of a rational vector.
    pub fn contains(&self, v: &[Rat]) -> bool {
        if v.len() != self.rank() {
            return false;
        }
        // Back-substitution against the triangular basis over Q,
        // demanding integer coefficients.
        let mut rem: Vec<Rat> = v
            .iter()
            .map(|q| q * Rat::from_integer(self.den.clone()))
            .collect();
        for i in (0..self.rank()).rev() {
            let coef = &rem[i] / Rat::from_integer(self.basis[i][i].clone());
            if !coef.denom().is_one() {
                return false;
            }
            for j in 0..=i {
                rem[j] -= &coef * Rat::from_integer(self.basis[i][j].clone());
            }
        }
        rem.iter().all(|q| q.is_zero())
    }

    pub fn is_sublattice_of(&self, other: &ZLattice) -> bool {
        self.basis.iter().all(|row| {
            let v: Vec<Rat> = row
                .iter()
                .map(|x| Rat::new(x.clone(), self.den.clone()))
                .collect();
            other.contains(&v)
        })
    }

    /// |det| of the basis over the denominator: the covolume relative to Z^n.
    pub fn covolume(&self) -> Rat {
        let mut det = BigInt::one();
        for (i, row) in self.basis.iter().enumerate() {
            det *= &row[i];
        }
        let mut den_pow = BigInt::one();
        for _ in 0..self.rank() {
            den_pow *= &self.den;
        }
        Rat::new(det, den_pow)
    }
}

/// Determinant of a square rational matrix by fraction-free elimination is
/// overkill at these sizes; plain Gaussian elimination over Q is exact.
pub fn rat_det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= &a[col][col];
        let inv = a[col][col].clone().recip();
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// Inverse of a square rational matrix, or None if singular.
pub fn rat_inverse(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        inv.swap(p, col);
        let piv = a[col][col].clone().recip();
        for c in 0..n {
            a[col][c] *= &piv;
            inv[col][c] *= &piv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let d1 = &f * &a[col][c];
                a[r][c] -= d1;
                let d2 = &f * &inv[col][c];
                inv[r][c] -= d2;
            }
        }
    }
    Some(inv)
}

/// Row-style HNF of an integer generator matrix; requires full column rank n.
/// Returns n rows, lower-triangular with positive diagonal and reduced
/// off-diagonal entries.
fn hnf(mut rows: Vec<Vec<BigInt>>, n: usize) -> Result<Vec<Vec<BigInt>>> {
    // Eliminate column by column from the right so the result comes out
    // lower-triangular in the natural order.
    let mut result: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for col in (0..n).rev() {
        // Gcd-combine all rows with a nonzero entry in `col` into one pivot.
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest: Vec<Vec<BigInt>> = Vec::new();
        for row in rows {
            if row[col].is_zero() {
                rest.push(row);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(row),
                Some(p) => {
                    let (g, x, y) = crate::arith::ext_gcd(&p[col], &row[col]);
                    let q1 = &p[col] / &g;
                    let q2 = &row[col] / &g;
                    let combined: Vec<BigInt> = p
                        .iter()
                        .zip(row.iter())
                        .map(|(a, b)| &x * a + &y * b)
                        .collect();
                    let reduced: Vec<BigInt> = p
                        .iter()
                        .zip(row.iter())
                        .map(|(a, b)| &q2 * a - &q1 * b)
                        .collect();
                    debug_assert_eq!(combined[col], g);
                    debug_assert!(reduced[col].is_zero());
                    pivot = Some(combined);
                    rest.push(reduced);
                }
            }
        }
        let mut pivot = pivot.ok_or_else(|| {
            Error::InvalidInput("generators do not span a full-rank lattice".into())
        })?;
        if pivot[col].is_negative() {
            for x in pivot.iter_mut() {
                *x = -x.clone();
            }
        }
        result.push(pivot);
        rows = rest;
    }
    result.reverse();
    // Reduce sub-diagonal entries against the pivot rows; descending j so a
    // reduction never disturbs a column already reduced.
    for i in 0..n {
        for j in (0..i).rev() {
            let (head, tail) = result.split_at_mut(i);
            let pivot_row = &head[j];
            let row = &mut tail[0];
            let q = row[j].div_floor(&pivot_row[j]);
            if !q.is_zero() {
                for k in 0..=j {
                    let delta = &q * &pivot_row[k];
                    row[k] -= delta;
                }
            }
        }
    }
    Ok(result)
}
