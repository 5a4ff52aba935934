use num_traits::{Signed, Zero};

use crate::model::PeriodicFramework;
use crate::ratmath::{
    is_positive_definite_exact, nullspace_exact, sub, zero_vec, RatMatrix, RatVec, Rational,
};
use crate::{Error, Result};

/// Number of `ω̇` unknowns, `d(d+1)/2`.
pub fn sym_count(d: usize) -> usize {
    d * (d + 1) / 2
}

/// Position of `ω̇[a][b]` (`a ≤ b`) in the row-major upper triangle.
pub fn sym_index(d: usize, a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    a * d - a * a.saturating_sub(1) / 2 + (b - a)
}

/// Unknown count `d(n−1) + d(d+1)/2`: `q̇_1 … q̇_{n−1}`, then `ω̇`.
pub fn unknown_count(d: usize, n: usize) -> usize {
    d * (n - 1) + sym_count(d)
}

/// Infinitesimal deformation `(q̇, ω̇)` with `q̇_0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfDeformation {
    pub qdot: Vec<RatVec>,
    pub omegadot: RatMatrix,
}

impl InfDeformation {
    /// Unpacks a solution vector in the rigidity-system column order.
    pub fn from_vector(d: usize, n: usize, x: &[Rational]) -> Result<Self> {
        if x.len() != unknown_count(d, n) {
            return Err(Error::usage("deformation vector has the wrong length"));
        }
        let mut qdot = vec![zero_vec(d)];
        for v in 1..n {
            qdot.push(x[(v - 1) * d..v * d].to_vec());
        }
        let off = d * (n - 1);
        let omegadot = RatMatrix::from_fn(d, d, |a, b| x[off + sym_index(d, a, b)].clone());
        Ok(InfDeformation { qdot, omegadot })
    }

    pub fn to_vector(&self) -> RatVec {
        let d = self.omegadot.rows();
        let mut x: RatVec = self.qdot[1..].iter().flatten().cloned().collect();
        for a in 0..d {
            for b in a..d {
                x.push(self.omegadot[(a, b)].clone());
            }
        }
        x
    }

    pub fn dim(&self) -> usize {
        self.omegadot.rows()
    }

    /// Left-hand side of the linearized length equation, one entry per orbit:
    /// `⟨ω̇ e, e⟩ + 2⟨ω(q̇_j − q̇_i), e⟩`.
    pub fn residuals(&self, fw: &PeriodicFramework) -> Vec<Rational> {
        let two = Rational::from_integer(2.into());
        (0..fw.m())
            .map(|k| {
                let e = fw.edge_vector(k);
                let orbit = fw.edge(k);
                let dq = sub(&self.qdot[orbit.to], &self.qdot[orbit.from]);
                self.omegadot.quadratic_form(&e) + &two * fw.gram().bilinear(&dq, &e)
            })
            .collect()
    }

    pub fn satisfies(&self, fw: &PeriodicFramework) -> bool {
        self.qdot.len() == fw.n()
            && self.dim() == fw.dim()
            && self.residuals(fw).iter().all(Zero::is_zero)
    }

    pub fn is_strict(&self) -> bool {
        is_positive_definite_exact(&self.omegadot).unwrap_or(false)
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        InfDeformation {
            qdot: self.qdot.iter().map(|v| v.iter().map(|x| x * s).collect()).collect(),
            omegadot: self.omegadot.scale(s),
        }
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-Rational::from_integer(1.into()))
    }

    /// `s` with `self == s · other`, `s > 0`, if one exists.
    pub fn positive_multiple_of(&self, other: &InfDeformation) -> Option<Rational> {
        let a = self.to_vector();
        let b = other.to_vector();
        if a.len() != b.len() {
            return None;
        }
        let k = b.iter().position(|x| !x.is_zero())?;
        let s = &a[k] / &b[k];
        (s.is_positive() && a.iter().zip(&b).all(|(x, y)| *x == &s * y)).then_some(s)
    }

    /// Expresses the deformation in the lattice basis `ΛB`: `q̇ ↦ B⁻¹q̇`,
    /// `ω̇ ↦ Bᵗω̇B`.
    pub fn change_basis(&self, b: &RatMatrix) -> Result<Self> {
        let inv = b
            .inverse()
            .ok_or_else(|| Error::usage("basis change is singular"))?;
        Ok(InfDeformation {
            qdot: self.qdot.iter().map(|v| inv.mul_vec(v)).collect(),
            omegadot: b.transpose().mul(&self.omegadot).mul(b),
        })
    }

    /// Deformation after renaming vertex orbit `v` to `perm[v]` (velocities
    /// re-anchored so the new orbit 0 is at rest).
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let origin = perm.iter().position(|&p| p == 0).expect("permutation");
        let mut qdot = vec![Vec::new(); self.qdot.len()];
        for (v, qv) in self.qdot.iter().enumerate() {
            qdot[perm[v]] = sub(qv, &self.qdot[origin]);
        }
        InfDeformation {
            qdot,
            omegadot: self.omegadot.clone(),
        }
    }
}

/// Rigidity matrix: one row per edge orbit, columns `q̇_1 … q̇_{n−1}` then
/// the upper triangle of `ω̇` (diagonal coefficient `e_a²`, off-diagonal
/// `2 e_a e_b`).
pub fn rigidity_system(fw: &PeriodicFramework) -> RatMatrix {
    let (d, n) = (fw.dim(), fw.n());
    let cols = unknown_count(d, n);
    let two = Rational::from_integer(2.into());
    let rows = (0..fw.m())
        .map(|k| {
            let e = fw.edge_vector(k);
            let we = fw.gram().mul_vec(&e);
            let orbit = fw.edge(k);
            let mut row = zero_vec(cols);
            for a in 0..d {
                if orbit.to > 0 {
                    row[(orbit.to - 1) * d + a] += &two * &we[a];
                }
                if orbit.from > 0 {
                    row[(orbit.from - 1) * d + a] -= &two * &we[a];
                }
            }
            let off = d * (n - 1);
            for a in 0..d {
                for b in a..d {
                    let c = &e[a] * &e[b];
                    row[off + sym_index(d, a, b)] = if a == b { c } else { &two * c };
                }
            }
            row
        })
        .collect();
    RatMatrix::from_rows(rows).unwrap_or_else(|_| RatMatrix::zeros(0, cols))
}

/// Linear constraints on the unknown vector that pin `ω̇ = 0`.
pub fn lattice_pins(d: usize, n: usize) -> RatMatrix {
    let off = d * (n - 1);
    let cols = unknown_count(d, n);
    RatMatrix::from_fn(sym_count(d), cols, |r, c| {
        if c == off + r {
            Rational::from_integer(1.into())
        } else {
            Rational::zero()
        }
    })
}

/// Exact space of infinitesimal deformations.
#[derive(Clone, Debug)]
pub struct DeformationSpace {
    pub basis: Vec<InfDeformation>,
    pub rank: usize,
    pub columns: usize,
}

impl DeformationSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn deformation_space(fw: &PeriodicFramework) -> DeformationSpace {
    deformation_space_pinned(fw, None).expect("unpinned system is well formed")
}

/// Deformation space with extra linear constraints appended to the rigidity
/// system (rows over the same unknowns).
pub fn deformation_space_pinned(fw: &PeriodicFramework, pins: Option<&RatMatrix>) -> Result<DeformationSpace> {
    let mut system = rigidity_system(fw);
    if let Some(p) = pins {
        if p.cols() != system.cols() {
            return Err(Error::usage("pin rows have the wrong number of columns"));
        }
        system = if system.rows() == 0 { p.clone() } else { system.vstack(p)? };
    }
    let (d, n) = (fw.dim(), fw.n());
    let basis = nullspace_exact(&system)
        .iter()
        .map(|x| InfDeformation::from_vector(d, n, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(DeformationSpace {
        rank: system.rank(),
        columns: system.cols(),
        basis,
    })
}

/// Linear combination `Σ x_t · basis_t`.
pub fn combine(basis: &[InfDeformation], x: &[Rational]) -> InfDeformation {
    let mut acc = basis[0].scaled(&x[0]);
    for (b, c) in basis.iter().zip(x).skip(1) {
        let t = b.scaled(c);
        acc = InfDeformation {
            qdot: acc
                .qdot
                .iter()
                .zip(&t.qdot)
                .map(|(u, v)| u.iter().zip(v).map(|(p, q)| p + q).collect())
                .collect(),
            omegadot: acc.omegadot.add(&t.omegadot),
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upper_triangle_indexing() {
        let d = 3;
        let mut seen = Vec::new();
        for a in 0..d {
            for b in a..d {
                seen.push(sym_index(d, a, b));
            }
        }
        assert_eq!(seen, (0..6).collect::<Vec<_>>());
        assert_eq!(sym_index(2, 1, 0), 1);
        assert_eq!(sym_index(2, 1, 1), 2);
    }
}
