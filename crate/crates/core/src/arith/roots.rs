//! Roots in `Q(i)` of polynomials over `Q(i)`.
//!
//! Floating-point Aberth iteration proposes candidates; every candidate is
//! rationalised by continued fractions and accepted only after exact
//! evaluation. Whatever cannot be split off is returned untouched.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::{GaussianRational, Polynomial};

#[derive(Debug, Clone, PartialEq)]
pub struct Roots {
    /// Distinct roots with multiplicity, sorted.
    pub roots: Vec<(GaussianRational, usize)>,
    /// Monic cofactor with no root in `Q(i)` that was found; `1` when the
    /// polynomial splits completely.
    pub unfactored: Polynomial,
}

impl Roots {
    pub fn splits(&self) -> bool {
        self.unfactored.degree() == Some(0)
    }

    /// Roots listed with repetition, sorted.
    pub fn multiset(&self) -> Vec<GaussianRational> {
        self.roots
            .iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m))
            .collect()
    }
}

/// Panics on the zero polynomial.
pub fn roots(p: &Polynomial) -> Roots {
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let mut rest = p.monic();
    let mut found: Vec<(GaussianRational, usize)> = Vec::new();

    let zeros = rest.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        rest = Polynomial::new(rest.coeffs()[zeros..].to_vec());
        found.push((GaussianRational::zero(), zeros));
    }

    if rest.degree().unwrap_or(0) > 0 {
        let squarefree = rest.div_rem(&rest.gcd(&rest.derivative())).0.monic();
        for candidate in exact_roots_of_squarefree(&squarefree) {
            let lin = Polynomial::linear_root(&candidate);
            let mut m = 0;
            while let Some(q) = rest.div_exact(&lin) {
                rest = q;
                m += 1;
            }
            if m > 0 {
                found.push((candidate, m));
            }
        }
    }
    found.sort();
    Roots {
        roots: found,
        unfactored: rest.monic(),
    }
}

fn exact_roots_of_squarefree(q: &Polynomial) -> Vec<GaussianRational> {
    let Some(deg) = q.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        return vec![-&q.coeff(0)];
    }
    let approx = aberth(q);
    let mut out: Vec<GaussianRational> = Vec::new();
    for z in approx {
        if let Some(r) = rationalise(q, z) {
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

fn to_complex(c: &GaussianRational) -> Complex64 {
    let (re, im) = c.to_f64_pair();
    Complex64::new(re, im)
}

fn aberth(q: &Polynomial) -> Vec<Complex64> {
    let cs: Vec<Complex64> = q.coeffs().iter().map(to_complex).collect();
    let n = cs.len() - 1;
    let dcs: Vec<Complex64> = (1..=n).map(|k| cs[k] * k as f64).collect();
    let eval = |c: &[Complex64], z: Complex64| c.iter().rev().fold(Complex64::zero(), |a, &b| a * z + b);

    // Cauchy bound for the initial circle.
    let lead = cs[n].norm();
    let radius = 1.0
        + cs[..n]
            .iter()
            .map(|c| c.norm() / lead)
            .fold(0.0_f64, f64::max);
    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64;
            Complex64::from_polar(radius * 0.5, theta)
        })
        .collect();

    for _ in 0..500 {
        let mut moved = 0.0_f64;
        for i in 0..n {
            let z = zs[i];
            let pz = eval(&cs, z);
            if pz.norm() == 0.0 {
                continue;
            }
            let ratio = pz / eval(&dcs, z);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z - zs[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                zs[i] = z - step;
                moved = moved.max(step.norm() / (1.0 + z.norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    zs
}

/// Continued-fraction convergents of `x` with denominators up to `max_den`.
fn convergents(x: f64, max_den: i64) -> Vec<BigRational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (0_i128, 1_i128);
    let (mut k0, mut k1) = (1_i128, 0_i128);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a_i = a as i128;
        let h2 = a_i * h1 + h0;
        let k2 = a_i * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        out.push(BigRational::new(BigInt::from(h2), BigInt::from(k2)));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-13 {
            break;
        }
        v = 1.0 / frac;
    }
    out
}

fn rationalise(q: &Polynomial, z: Complex64) -> Option<GaussianRational> {
    const MAX_DEN: i64 = 1_000_000;
    let mut res = convergents(z.re, MAX_DEN);
    let mut ims = convergents(z.im, MAX_DEN);
    // Prefer the most precise convergents first.
    res.reverse();
    ims.reverse();
    if z.im.abs() < 1e-9 {
        ims.insert(0, BigRational::zero());
    }
    if z.re.abs() < 1e-9 {
        res.insert(0, BigRational::zero());
    }
    for re in res.iter().take(6) {
        for im in ims.iter().take(6) {
            let cand = GaussianRational::new(re.clone(), im.clone());
            let err = to_complex(&cand) - z;
            if err.norm() > 1e-6 * (1.0 + z.norm()) {
                continue;
            }
            if q.eval(&cand).is_zero() {
                return Some(cand);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn from_roots(rs: &[&str]) -> Polynomial {
        rs.iter()
            .fold(Polynomial::one(), |acc, r| &acc * &Polynomial::linear_root(&g(r)))
    }

    #[test]
    fn splits_gaussian_rational_roots_with_multiplicity() {
        let p = from_roots(&["1/3", "1/3", "-2+i", "0", "5/7*i", "13/18"]);
        let r = roots(&p);
        assert!(r.splits());
        let mut expect: Vec<_> = ["1/3", "1/3", "-2+i", "0", "5/7*i", "13/18"]
            .iter()
            .map(|s| g(s))
            .collect();
        expect.sort();
        assert_eq!(r.multiset(), expect);
    }

    #[test]
    fn irreducible_part_is_reported() {
        // (x - 1/2)(x^2 - 2)
        let p = &from_roots(&["1/2"]) * &Polynomial::new(vec![g("-2"), g("0"), g("1")]);
        let r = roots(&p);
        assert_eq!(r.roots, vec![(g("1/2"), 1)]);
        assert_eq!(r.unfactored, Polynomial::new(vec![g("-2"), g("0"), g("1")]));
        assert!(!r.splits());
    }

    #[test]
    fn constant_polynomial() {
        let r = roots(&Polynomial::constant(g("3")));
        assert!(r.roots.is_empty());
        assert!(r.splits());
    }
}
