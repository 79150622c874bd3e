use crate::arith::Field;

/// A vector-valued rational function with poles only at the singular
/// points: `Σ_j Σ_m t_{j,m}/(x - p_j)^m + Σ_k c_k x^k`.
///
/// `poles[j][m - 1]` is the coefficient of `(x - p_j)^{-m}` and `poly[k]`
/// that of `x^k`; every coefficient is a vector of length `rank`. Trailing
/// zero coefficients are trimmed, so equality is structural.
#[derive(Debug, Clone, PartialEq)]
pub struct MeromorphicSection<F> {
    rank: usize,
    poles: Vec<Vec<Vec<F>>>,
    poly: Vec<Vec<F>>,
}

fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(F::is_zero)
}

fn add_into<F: Field>(target: &mut [F], v: &[F]) {
    for (a, b) in target.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = a.clone() + b;
        }
    }
}

impl<F: Field> MeromorphicSection<F> {
    pub fn zero(rank: usize, points: usize) -> Self {
        Self {
            rank,
            poles: vec![Vec::new(); points],
            poly: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn points(&self) -> usize {
        self.poles.len()
    }

    /// Adds `v/(x - p_j)^m`, `m >= 1`.
    pub fn add_pole(&mut self, j: usize, m: usize, v: &[F]) {
        assert!(m >= 1 && v.len() == self.rank);
        let slot = &mut self.poles[j];
        while slot.len() < m {
            slot.push(vec![F::zero(); self.rank]);
        }
        add_into(&mut slot[m - 1], v);
        self.trim();
    }

    /// Adds `v·x^k`.
    pub fn add_poly(&mut self, k: usize, v: &[F]) {
        assert_eq!(v.len(), self.rank);
        while self.poly.len() <= k {
            self.poly.push(vec![F::zero(); self.rank]);
        }
        add_into(&mut self.poly[k], v);
        self.trim();
    }

    pub fn pole(&self, j: usize, m: usize) -> Option<&[F]> {
        self.poles[j].get(m - 1).map(Vec::as_slice)
    }

    pub fn poly(&self, k: usize) -> Option<&[F]> {
        self.poly.get(k).map(Vec::as_slice)
    }

    /// Highest pole order at `p_j`, 0 if regular there.
    pub fn pole_order(&self, j: usize) -> usize {
        self.poles[j].len()
    }

    /// Number of polynomial coefficients (degree + 1), 0 if none.
    pub fn poly_len(&self) -> usize {
        self.poly.len()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty() && self.poles.iter().all(Vec::is_empty)
    }

    fn trim(&mut self) {
        for slot in &mut self.poles {
            while slot.last().is_some_and(|v| is_zero_vec(v)) {
                slot.pop();
            }
        }
        while self.poly.last().is_some_and(|v| is_zero_vec(v)) {
            self.poly.pop();
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (j, slot) in other.poles.iter().enumerate() {
            for (m, v) in slot.iter().enumerate() {
                out.add_pole(j, m + 1, v);
            }
        }
        for (k, v) in other.poly.iter().enumerate() {
            out.add_poly(k, v);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> MeromorphicSection<G> {
        let vec = |v: &Vec<F>| v.iter().map(&f).collect::<Vec<G>>();
        let mut out = MeromorphicSection {
            rank: self.rank,
            poles: self.poles.iter().map(|s| s.iter().map(vec).collect()).collect(),
            poly: self.poly.iter().map(vec).collect(),
        };
        out.trim();
        out
    }

    /// Every `(kind, index, order, vector)` term, for term-by-term display.
    pub fn terms(&self) -> impl Iterator<Item = SectionTerm<'_, F>> {
        let poles = self.poles.iter().enumerate().flat_map(|(j, slot)| {
            slot.iter()
                .enumerate()
                .filter(|(_, v)| !is_zero_vec(v))
                .map(move |(m, v)| SectionTerm::Pole {
                    point: j,
                    order: m + 1,
                    coefficient: v,
                })
        });
        let poly = self
            .poly
            .iter()
            .enumerate()
            .filter(|(_, v)| !is_zero_vec(v))
            .map(|(k, v)| SectionTerm::Power {
                degree: k,
                coefficient: v,
            });
        poles.chain(poly)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SectionTerm<'a, F> {
    Pole {
        point: usize,
        order: usize,
        coefficient: &'a [F],
    },
    Power {
        degree: usize,
        coefficient: &'a [F],
    },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::GaussianRational;

    #[test]
    fn trimming_makes_cancellation_zero() {
        let v = vec![GaussianRational::one(), GaussianRational::zero()];
        let mut s = MeromorphicSection::zero(2, 2);
        s.add_pole(1, 3, &v);
        s.add_poly(2, &v);
        assert_eq!(s.pole_order(1), 3);
        assert!(s.sub(&s).is_zero());
        assert_eq!(s.terms().count(), 2);
    }
}
