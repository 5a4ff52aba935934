use num_traits::{One, Zero};

use super::{nullspace_exact, RatMatrix, RatVec, Rational};
use crate::{Error, Result};

/// Quadric monomials at a point, in the fixed coefficient order:
///
/// - `d = 2`: `(x², xy, y², x, y, 1)`
/// - `d = 3`: `(x², y², z², xy, xz, yz, x, y, z, 1)`
pub fn monomials(p: &[Rational]) -> Result<RatVec> {
    match p {
        [x, y] => Ok(vec![x * x, x * y, y * y, x.clone(), y.clone(), Rational::one()]),
        [x, y, z] => Ok(vec![
            x * x,
            y * y,
            z * z,
            x * y,
            x * z,
            y * z,
            x.clone(),
            y.clone(),
            z.clone(),
            Rational::one(),
        ]),
        _ => Err(Error::usage(format!(
            "quadric fitting needs d in {{2, 3}}, got d = {}",
            p.len()
        ))),
    }
}

/// A conic (`d = 2`) or quadric surface (`d = 3`) as a symmetric
/// `(d+1)×(d+1)` matrix in homogeneous coordinates `(x, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricForm {
    matrix: RatMatrix,
}

impl QuadricForm {
    pub fn from_matrix(matrix: RatMatrix) -> Result<Self> {
        let d = matrix.rows().saturating_sub(1);
        if !matrix.is_symmetric() || !(2..=3).contains(&d) {
            return Err(Error::usage("quadric matrix must be symmetric 3x3 or 4x4"));
        }
        if matrix.is_zero() {
            return Err(Error::usage("quadric form is identically zero"));
        }
        Ok(QuadricForm { matrix })
    }

    /// From a coefficient vector in the order of [`monomials`].
    pub fn from_coefficients(dim: usize, c: &[Rational]) -> Result<Self> {
        let half = |x: &Rational| x / Rational::from_integer(2.into());
        let m = match (dim, c.len()) {
            (2, 6) => RatMatrix::from_rows(vec![
                vec![c[0].clone(), half(&c[1]), half(&c[3])],
                vec![half(&c[1]), c[2].clone(), half(&c[4])],
                vec![half(&c[3]), half(&c[4]), c[5].clone()],
            ])?,
            (3, 10) => RatMatrix::from_rows(vec![
                vec![c[0].clone(), half(&c[3]), half(&c[4]), half(&c[6])],
                vec![half(&c[3]), c[1].clone(), half(&c[5]), half(&c[7])],
                vec![half(&c[4]), half(&c[5]), c[2].clone(), half(&c[8])],
                vec![half(&c[6]), half(&c[7]), half(&c[8]), c[9].clone()],
            ])?,
            _ => {
                return Err(Error::usage(format!(
                    "{} coefficients do not describe a quadric in dimension {dim}",
                    c.len()
                )))
            }
        };
        Self::from_matrix(m)
    }

    /// Quadric `⟨A x, x⟩ + 2⟨b, x⟩ + c` with symmetric `A`.
    pub fn from_parts(a: &RatMatrix, b: &[Rational], c: &Rational) -> Result<Self> {
        let d = a.rows();
        let m = RatMatrix::from_fn(d + 1, d + 1, |i, j| match (i < d, j < d) {
            (true, true) => a[(i, j)].clone(),
            (true, false) => b[i].clone(),
            (false, true) => b[j].clone(),
            (false, false) => c.clone(),
        });
        Self::from_matrix(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows() - 1
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn coefficients(&self) -> RatVec {
        let m = &self.matrix;
        let two = Rational::from_integer(2.into());
        match self.dim() {
            2 => vec![
                m[(0, 0)].clone(),
                &m[(0, 1)] * &two,
                m[(1, 1)].clone(),
                &m[(0, 2)] * &two,
                &m[(1, 2)] * &two,
                m[(2, 2)].clone(),
            ],
            _ => vec![
                m[(0, 0)].clone(),
                m[(1, 1)].clone(),
                m[(2, 2)].clone(),
                &m[(0, 1)] * &two,
                &m[(0, 2)] * &two,
                &m[(1, 2)] * &two,
                &m[(0, 3)] * &two,
                &m[(1, 3)] * &two,
                &m[(2, 3)] * &two,
                m[(3, 3)].clone(),
            ],
        }
    }

    /// The `d×d` quadratic part.
    pub fn quadratic_part(&self) -> RatMatrix {
        let d = self.dim();
        self.matrix.submatrix(&(0..d).collect::<Vec<_>>(), &(0..d).collect::<Vec<_>>())
    }

    /// Half the linear part, `b` in `⟨A x, x⟩ + 2⟨b, x⟩ + c`.
    pub fn linear_half(&self) -> RatVec {
        let d = self.dim();
        (0..d).map(|i| self.matrix[(i, d)].clone()).collect()
    }

    pub fn constant(&self) -> Rational {
        let d = self.dim();
        self.matrix[(d, d)].clone()
    }

    pub fn evaluate(&self, p: &[Rational]) -> Rational {
        let mut h = p.to_vec();
        h.push(Rational::one());
        self.matrix.quadratic_form(&h)
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.evaluate(p).is_zero()
    }

    /// `self + t · other`.
    pub fn combine(&self, t: &Rational, other: &QuadricForm) -> Result<QuadricForm> {
        QuadricForm::from_matrix(self.matrix.add(&other.matrix.scale(t)))
    }

    pub fn scale(&self, s: &Rational) -> Result<QuadricForm> {
        QuadricForm::from_matrix(self.matrix.scale(s))
    }

    /// The same point set after translating coordinates by `shift`
    /// (`x ↦ x + shift`), i.e. the form `Q(x + shift)`.
    pub fn translated(&self, shift: &[Rational]) -> QuadricForm {
        let d = self.dim();
        // T maps homogeneous x to x + shift.
        let t = RatMatrix::from_fn(d + 1, d + 1, |i, j| {
            if i == j {
                Rational::one()
            } else if j == d && i < d {
                shift[i].clone()
            } else {
                Rational::zero()
            }
        });
        QuadricForm {
            matrix: t.transpose().mul(&self.matrix).mul(&t),
        }
    }
}

/// Basis of the linear space of quadrics through all `points`, as
/// coefficient vectors in the fixed monomial order.
///
/// The basis is the null space of the incidence matrix computed from its
/// reduced row echelon form, so it is deterministic.
pub fn quadric_space_through(points: &[RatVec]) -> Result<Vec<RatVec>> {
    let dim = points
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::usage("no points given"))?;
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::usage("points have mixed dimensions"));
    }
    let rows = points.iter().map(|p| monomials(p)).collect::<Result<Vec<_>>>()?;
    Ok(nullspace_exact(&RatMatrix::from_rows(rows)?))
}
