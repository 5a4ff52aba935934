use num_traits::{One, Signed};

use super::{RatMatrix, RatVec, Rational};

/// Whether `p` lies in the convex hull of `others` (boundary included).
///
/// By Carathéodory it suffices to look at affinely independent subsets of at
/// most `d + 1` points; each such subset has unique barycentric coordinates.
pub fn in_convex_hull(p: &[Rational], others: &[RatVec]) -> bool {
    let d = p.len();
    let max_k = (d + 1).min(others.len());
    (1..=max_k).any(|k| {
        subsets(others.len(), k).any(|subset| {
            let pts: Vec<&RatVec> = subset.iter().map(|&i| &others[i]).collect();
            barycentric(p, &pts).is_some_and(|l| l.iter().all(|x| !x.is_negative()))
        })
    })
}

/// Every point is a vertex of the convex hull of the set: no point lies in
/// the hull of the others. Repeated points fail.
pub fn strictly_convex_position(points: &[RatVec]) -> bool {
    (0..points.len()).all(|i| {
        let others: Vec<RatVec> = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        !in_convex_hull(&points[i], &others)
    })
}

/// Barycentric coordinates of `p` w.r.t. affinely independent `pts`, when `p`
/// lies in their affine span.
fn barycentric(p: &[Rational], pts: &[&RatVec]) -> Option<Vec<Rational>> {
    let d = p.len();
    let k = pts.len();
    // Rows: the d coordinates plus the affine constraint Σλ = 1.
    let a = RatMatrix::from_fn(d + 1, k, |i, j| {
        if i < d {
            pts[j][i].clone()
        } else {
            Rational::one()
        }
    });
    if a.rank() < k {
        return None;
    }
    let mut b: RatVec = p.to_vec();
    b.push(Rational::one());
    match super::solve_linear_exact(&a, &b).ok()? {
        super::LinearSolution::Consistent { particular, .. } => Some(particular),
        super::LinearSolution::Inconsistent => None,
    }
}

fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = idx.clone();
        // Advance to the next combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}
