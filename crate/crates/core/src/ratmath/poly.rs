use num_traits::{One, Signed, Zero};

use super::Rational;

/// Dense univariate polynomial over the rationals, coefficients in ascending
/// degree order. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn lead(&self) -> &Rational {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Newton interpolation through `(xs[k], ys[k])`.
    pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Poly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd: Vec<Rational> = ys.to_vec();
        for level in 1..n {
            for k in (level..n).rev() {
                dd[k] = (&dd[k] - &dd[k - 1]) / (&xs[k] - &xs[k - level]);
            }
        }
        // Expand the Newton form.
        let mut result = Poly::zero();
        let mut basis = Poly::new(vec![Rational::one()]);
        for k in 0..n {
            result = result.add(&basis.scale(&dd[k]));
            basis = basis.mul(&Poly::new(vec![-xs[k].clone(), Rational::one()]));
        }
        result
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
                    let b = other.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / divisor.lead();
            for (k, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] -= &f * c;
            }
            quot[shift] = f;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = std::mem::replace(&mut b, r);
        }
        if a.is_zero() {
            a
        } else {
            let l = a.lead().recip();
            a.scale(&l)
        }
    }

    /// Same roots, each with multiplicity one.
    pub fn square_free(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            self.clone()
        } else {
            self.div_rem(&g).0
        }
    }

    fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            // Positive rescaling keeps every sign and tames coefficient growth.
            chain.push(r.primitive().scale(&-Rational::one()));
        }
        chain
    }

    fn sign_changes(chain: &[Poly], t: &Rational) -> usize {
        let signs: Vec<i8> = chain
            .iter()
            .map(|p| {
                let v = p.eval(t);
                if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Cauchy bound: every real root has absolute value below it.
    pub fn root_bound(&self) -> Rational {
        let Some(deg) = self.degree() else {
            return Rational::one();
        };
        if deg == 0 {
            return Rational::one();
        }
        let lead = self.lead().abs();
        let max = self.coeffs[..deg]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Rational::zero);
        // Rounded up to a power of two so bisection midpoints stay dyadic.
        let cauchy = max + Rational::one();
        let mut b = Rational::one();
        while b < cauchy {
            b *= Rational::from_integer(2.into());
        }
        b
    }

    /// Positive multiple with coprime integer coefficients.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let den = super::common_denominator(&self.coeffs);
        let ints: Vec<num_bigint::BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(num_bigint::BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c));
        Poly::new(ints.into_iter().map(|c| Rational::new(c, g.clone())).collect())
    }

    /// Isolating intervals `[lo, hi]` for the distinct real roots, in
    /// increasing order, pairwise disjoint, each of width at most
    /// `resolution`. Intervals with `lo == hi` are exact rational roots.
    pub fn isolate_real_roots(&self, resolution: &Rational) -> Vec<(Rational, Rational)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let p = self.square_free().primitive();
        let chain = p.sturm_chain();
        let b = p.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        // Count of roots in (lo, hi]; endpoints are checked separately.
        while let Some((lo, hi)) = stack.pop() {
            if p.eval(&lo).is_zero() {
                out.push((lo.clone(), lo.clone()));
            }
            let count = Self::sign_changes(&chain, &lo) - Self::sign_changes(&chain, &hi);
            let hi_root = p.eval(&hi).is_zero();
            let open_count = count - usize::from(hi_root);
            if open_count == 0 {
                continue;
            }
            let two = Rational::from_integer(2.into());
            if open_count == 1 && &hi - &lo <= *resolution {
                out.push((lo, hi));
                continue;
            }
            let mid = (&lo + &hi) / &two;
            // Split into (lo, mid] and (mid, hi); roots at mid are reported
            // as exact by the upper half.
            if p.eval(&mid).is_zero() {
                out.push((mid.clone(), mid.clone()));
            }
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out.dedup();
        // Shrink open intervals until closed intervals are pairwise disjoint.
        for i in 0..out.len() {
            loop {
                let touches_prev = i > 0 && out[i - 1].1 >= out[i].0;
                let touches_next = i + 1 < out.len() && out[i].1 >= out[i + 1].0;
                if !(touches_prev || touches_next) {
                    break;
                }
                let k = if out[i].0 != out[i].1 { i } else if touches_next { i + 1 } else { i - 1 };
                let (lo, hi) = out[k].clone();
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                out[k] = if p.eval(&mid).is_zero() {
                    (mid.clone(), mid)
                } else if Self::sign_changes(&chain, &lo) > Self::sign_changes(&chain, &mid) {
                    (lo, mid)
                } else {
                    (mid, hi)
                };
            }
        }
        out
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_roots(&self, lo: &Rational, hi: &Rational) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let p = self.square_free().primitive();
        let chain = p.sturm_chain();
        Self::sign_changes(&chain, lo) - Self::sign_changes(&chain, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::{int, rat};

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.eval(&int(3)), int(8));
        assert_eq!(a.derivative(), p(&[0, 2]));
        assert_eq!(a.gcd(&p(&[1, 2, 1])), p(&[1, 1]));
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let cubic = Poly::new(vec![rat(1, 2), int(-3), int(0), rat(2, 3)]);
        let xs: Vec<Rational> = (0..4).map(int).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| cubic.eval(x)).collect();
        assert_eq!(Poly::interpolate(&xs, &ys), cubic);
    }

    #[test]
    fn isolates_roots() {
        // (t - 2)(t + 2)(t - 1/3) with a double root at 2 added.
        let f = p(&[-2, 1]).mul(&p(&[2, 1])).mul(&Poly::new(vec![rat(-1, 3), int(1)])).mul(&p(&[-2, 1]));
        let res = rat(1, 1000);
        let roots = f.isolate_real_roots(&res);
        assert_eq!(roots.len(), 3);
        let targets = [int(-2), rat(1, 3), int(2)];
        for ((lo, hi), t) in roots.iter().zip(&targets) {
            assert!(lo <= t && t <= hi, "{lo} {hi} {t}");
            assert!(hi - lo <= res);
        }
        assert!(roots.windows(2).all(|w| w[0].1 < w[1].0));
    }

    #[test]
    fn touching_intervals_are_separated() {
        // Roots 0 and 1/1000: bisection from the Cauchy bound meets both
        // near a shared endpoint.
        let f = p(&[0, 1]).mul(&Poly::new(vec![rat(-1, 1000), int(1)]));
        let roots = f.isolate_real_roots(&int(1));
        assert_eq!(roots.len(), 2);
        assert!(roots[0].1 < roots[1].0);
        assert_eq!(f.count_roots(&int(-1), &int(1)), 2);
    }

    #[test]
    fn irrational_roots() {
        let f = p(&[-2, 0, 1]);
        let res = rat(1, 1_000_000);
        let roots = f.isolate_real_roots(&res);
        assert_eq!(roots.len(), 2);
        let (lo, hi) = &roots[1];
        assert!(lo * lo < int(2) && hi * hi > int(2));
        assert!(p(&[1, 0, 1]).isolate_real_roots(&res).is_empty());
        assert!(p(&[5]).isolate_real_roots(&res).is_empty());
    }
}
