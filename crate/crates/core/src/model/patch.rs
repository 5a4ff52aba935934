use std::collections::HashMap;

use super::framework::PeriodicFramework;
use crate::ratmath::{int, to_f64, RatVec};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PatchVertex {
    pub orbit: usize,
    pub shift: Vec<i64>,
    /// Cartesian position `Λ(q_i + shift)`.
    pub position: Vec<f64>,
    /// Exact Cartesian position, when the framework stores a rational basis.
    pub exact: Option<RatVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchBar {
    pub a: usize,
    pub b: usize,
    pub orbit: usize,
}

/// Finite piece of a periodic framework.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameworkPatch {
    pub dim: usize,
    pub vertices: Vec<PatchVertex>,
    pub bars: Vec<PatchBar>,
    /// Cartesian periodicity generators (columns of the basis).
    pub generators: Vec<Vec<f64>>,
}

impl FrameworkPatch {
    pub fn bar_length_sq(&self, bar: &PatchBar) -> f64 {
        let (p, q) = (&self.vertices[bar.a].position, &self.vertices[bar.b].position);
        p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum()
    }
}

/// Places every vertex orbit at every shift of the inclusive box
/// `ranges[axis] = (lo, hi)` and keeps every bar with both ends placed.
pub fn patch_expand(fw: &PeriodicFramework, ranges: &[(i64, i64)]) -> Result<FrameworkPatch> {
    let d = fw.dim();
    if ranges.len() != d {
        return Err(Error::usage(format!("patch box needs {d} ranges")));
    }
    if ranges.iter().any(|&(lo, hi)| lo > hi) {
        return Err(Error::usage("patch box is empty"));
    }
    let basis = fw.cartesian_basis()?;
    let mut shifts: Vec<Vec<i64>> = vec![Vec::new()];
    for &(lo, hi) in ranges {
        shifts = shifts
            .into_iter()
            .flat_map(|s| {
                (lo..=hi).map(move |x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }

    let mut vertices = Vec::new();
    let mut index: HashMap<(usize, Vec<i64>), usize> = HashMap::new();
    for s in &shifts {
        for i in 0..fw.n() {
            let lat: RatVec = fw.q(i).iter().zip(s).map(|(q, &k)| q + int(k)).collect();
            let lat_f: Vec<f64> = lat.iter().map(to_f64).collect();
            let position: Vec<f64> = (0..d)
                .map(|r| (0..d).map(|c| basis[(r, c)] * lat_f[c]).sum())
                .collect();
            let exact = fw.lattice().map(|l| l.mul_vec(&lat));
            index.insert((i, s.clone()), vertices.len());
            vertices.push(PatchVertex {
                orbit: i,
                shift: s.clone(),
                position,
                exact,
            });
        }
    }

    let mut bars = Vec::new();
    for (a, v) in vertices.iter().enumerate() {
        for (k, e) in fw.edges().iter().enumerate() {
            if e.from != v.orbit {
                continue;
            }
            let target: Vec<i64> = v.shift.iter().zip(&e.shift).map(|(x, y)| x + y).collect();
            if let Some(&b) = index.get(&(e.to, target)) {
                bars.push(PatchBar { a, b, orbit: k });
            }
        }
    }

    let generators = (0..d).map(|c| (0..d).map(|r| basis[(r, c)]).collect()).collect();
    Ok(FrameworkPatch {
        dim: d,
        vertices,
        bars,
        generators,
    })
}
