use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{common_denominator, RatMatrix, RatVec, Rational};
use crate::{Error, Result};

/// A lattice in `Q^d` given by its Hermite normal form basis.
///
/// The basis is canonical: two generator sets span the same lattice exactly
/// when their `LatticeBasis` values compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    dim: usize,
    /// HNF rows divided by `scale`.
    basis: Vec<RatVec>,
    /// Common denominator that was cleared before the integer HNF.
    scale: BigInt,
    pivots: Vec<usize>,
}

impl LatticeBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn basis(&self) -> &[RatVec] {
        &self.basis
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// Matrix whose columns are the basis vectors (`Λ`).
    pub fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(&self.basis).expect("basis vectors share a dimension")
    }

    /// Covolume of a full-rank lattice (product of the HNF pivots).
    pub fn determinant(&self) -> Option<Rational> {
        self.is_full_rank().then(|| {
            self.basis
                .iter()
                .zip(&self.pivots)
                .map(|(row, &p)| row[p].clone())
                .product()
        })
    }

    /// Integer coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<BigInt>> {
        if v.len() != self.dim {
            return None;
        }
        // Echelon structure: solve pivot by pivot.
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = &rest[p] / &row[p];
            if !c.denom().is_one() {
                return None;
            }
            for (x, b) in rest.iter_mut().zip(row) {
                *x -= &c * b;
            }
            coords.push(c.to_integer());
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }
}

/// Row-style Hermite normal form of an integer matrix.
///
/// Returns the nonzero rows (upper echelon, positive pivots, entries above
/// each pivot reduced into `[0, pivot)`) and their pivot columns.
pub fn hermite_normal_form(rows: &[Vec<BigInt>], cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        // Euclid on column c over rows r.. until one nonzero entry is left.
        loop {
            let nonzero: Vec<usize> = (r..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            let Some(&best) = nonzero.iter().min_by_key(|&&i| a[i][c].abs()) else {
                break;
            };
            a.swap(r, best);
            if nonzero.len() == 1 {
                break;
            }
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = a[r].clone();
        for row in a.iter_mut().take(r) {
            let q = row[c].div_floor(&pivot_row[c]);
            if !q.is_zero() {
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// ℤ-span of rational vectors.
///
/// Denominators are cleared to a common scale, the integer HNF is taken, and
/// the result is scaled back. Rank deficiency is reported through
/// [`LatticeBasis::rank`].
pub fn lattice_span(vectors: &[RatVec]) -> Result<LatticeBasis> {
    let Some(first) = vectors.first() else {
        return Err(Error::usage("lattice span of an empty vector set"));
    };
    let dim = first.len();
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(Error::usage("lattice generators have mixed dimensions"));
    }
    let scale = common_denominator(vectors.iter().flatten());
    let ints: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| (x * Rational::from_integer(scale.clone())).to_integer())
                .collect()
        })
        .collect();
    let (hnf, pivots) = hermite_normal_form(&ints, dim);
    let basis = hnf
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| Rational::new(x, scale.clone()))
                .collect()
        })
        .collect();
    Ok(LatticeBasis {
        dim,
        basis,
        scale,
        pivots,
    })
}

/// LLL-reduced basis (`δ = 3/4`) of the lattice spanned by the independent
/// columns of `basis`, for the inner product `⟨u, v⟩ = uᵗ G v` (identity when
/// `gram` is `None`). Returns the new basis as columns.
///
/// The HNF basis of a lattice with many generators is usually very skewed;
/// reducing it keeps coordinates and edge shifts small.
pub fn lll_reduce(basis: &RatMatrix, gram: Option<&RatMatrix>) -> Result<RatMatrix> {
    let n = basis.cols();
    if gram.is_some_and(|g| g.rows() != basis.rows() || g.cols() != basis.rows()) {
        return Err(Error::usage("inner product has the wrong size"));
    }
    if basis.rank() != n {
        return Err(Error::usage("lattice reduction needs independent vectors"));
    }
    let inner = |u: &[Rational], v: &[Rational]| match gram {
        Some(g) => g.bilinear(u, v),
        None => u.iter().zip(v).map(|(x, y)| x * y).sum(),
    };
    let mut b: Vec<RatVec> = (0..n).map(|j| basis.column(j)).collect();
    // Gram–Schmidt coefficients and squared norms, recomputed after each
    // change; dimensions here are tiny.
    let gso = |b: &[RatVec]| {
        let mut star: Vec<RatVec> = Vec::new();
        let mut norms: Vec<Rational> = Vec::new();
        let mut mu = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            let mut v = b[i].clone();
            for j in 0..i {
                mu[i][j] = inner(&b[i], &star[j]) / &norms[j];
                for (x, y) in v.iter_mut().zip(&star[j]) {
                    *x -= &mu[i][j] * y;
                }
            }
            norms.push(inner(&v, &v));
            star.push(v);
        }
        (mu, norms)
    };
    let delta = Rational::new(3.into(), 4.into());
    let half = Rational::new(1.into(), 2.into());
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gso(&b);
            let q = (&mu[k][j] + &half).floor();
            if !q.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
            }
        }
        let (mu, norms) = gso(&b);
        if norms[k] >= (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    RatMatrix::from_columns(&b)
}
