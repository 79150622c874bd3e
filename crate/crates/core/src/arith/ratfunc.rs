//! Rational functions in one variable over `Q(i)`.

use std::fmt;

use num_traits::Zero;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::split_sign;
use super::{roots, Field, GaussianRational, Polynomial};

/// A point of the projective line over `Q(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(GaussianRational),
    Infinity,
}

/// `numerator / denominator` with a monic denominator and no common factor.
/// Zero is `0/1`. Equality is structural because the form is canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Panics when `den` is zero.
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        Self::from_coprime(num, den)
    }

    /// Skips the gcd; the caller guarantees coprimality.
    fn from_coprime(num: Polynomial, den: Polynomial) -> Self {
        let lead = den.leading();
        if lead == GaussianRational::one() {
            return Self { num, den };
        }
        let inv = lead.inv().expect("nonzero leading coefficient");
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self {
            num: Polynomial::constant(c),
            den: Polynomial::one(),
        }
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// The variable itself.
    pub fn variable() -> Self {
        Self::polynomial(Polynomial::x())
    }

    /// `1 / (x - a)`.
    pub fn simple_pole(a: &GaussianRational) -> Self {
        Self {
            num: Polynomial::one(),
            den: Polynomial::linear_root(a),
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value when `self` is constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &GaussianRational) -> Option<GaussianRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(x) / &d)
    }

    /// `f(-x)`.
    pub fn negate_variable(&self) -> Self {
        Self::from_coprime(self.num.negate_variable(), self.den.negate_variable())
    }

    /// Order of vanishing at `point`; negative at a pole, `None` for zero.
    pub fn valuation_at(&self, point: &Point) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(match point {
            Point::Finite(a) => {
                let lin = Polynomial::linear_root(a);
                multiplicity(&self.num, &lin) as i64 - multiplicity(&self.den, &lin) as i64
            }
            Point::Infinity => {
                self.den.degree().unwrap_or(0) as i64 - self.num.degree().unwrap_or(0) as i64
            }
        })
    }

    /// Pole order at `point`, 0 when regular.
    pub fn pole_order_at(&self, point: &Point) -> usize {
        self.valuation_at(point).map_or(0, |v| (-v).max(0) as usize)
    }

    /// Laurent coefficients at `point` for each order in `orders`, in the
    /// local parameter `x - a` (or `1/x` at infinity). Orders below the
    /// actual valuation give zeros.
    pub fn laurent_coefficients(
        &self,
        point: &Point,
        orders: std::ops::RangeInclusive<i64>,
    ) -> Vec<GaussianRational> {
        let (lo, hi) = (*orders.start(), *orders.end());
        if self.is_zero() || hi < lo {
            return vec![GaussianRational::zero(); (hi - lo + 1).max(0) as usize];
        }
        // Reduce to a quotient of polynomials in the local parameter u with
        // nonvanishing denominator at u = 0, times u^offset.
        let (n, d, offset) = match point {
            Point::Finite(a) => {
                let n = self.num.shift(a);
                let d = self.den.shift(a);
                let (n, kn) = strip_low_zeros(&n);
                let (d, kd) = strip_low_zeros(&d);
                (n, d, kn as i64 - kd as i64)
            }
            Point::Infinity => {
                let dn = self.num.degree().unwrap_or(0);
                let dd = self.den.degree().unwrap_or(0);
                (self.num.reversed(dn), self.den.reversed(dd), dd as i64 - dn as i64)
            }
        };
        let terms = hi - offset;
        let series = if terms < 0 {
            Vec::new()
        } else {
            power_series_quotient(&n, &d, terms as usize + 1)
        };
        orders
            .map(|k| {
                let idx = k - offset;
                if idx < 0 {
                    GaussianRational::zero()
                } else {
                    series[idx as usize].clone()
                }
            })
            .collect()
    }

    /// Principal part at a finite point, as a rational function.
    pub fn principal_part(&self, a: &GaussianRational) -> Self {
        let m = self.pole_order_at(&Point::Finite(a.clone())) as i64;
        if m == 0 {
            return Self::zero();
        }
        let cs = self.laurent_coefficients(&Point::Finite(a.clone()), -m..=-1);
        let lin = Polynomial::linear_root(a);
        // Σ_k c_{-k} (x-a)^{m-k} / (x-a)^m
        let mut num = Polynomial::zero();
        for (idx, c) in cs.iter().enumerate() {
            let k = m - idx as i64;
            num = &num + &lin.pow((m - k) as u32).scale(c);
        }
        Self::new(num, lin.pow(m as u32))
    }

    /// Formats as a polynomial part plus principal parts at each pole when
    /// the denominator splits over `Q(i)`, otherwise as `(num)/(den)`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_polynomial() {
            return self.num.display_with(var);
        }
        let split = roots(&self.den);
        if !split.splits() {
            return format!(
                "({})/({})",
                self.num.display_with(var),
                self.den.display_with(var)
            );
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let (poly, _) = self.num.div_rem(&self.den);
        if !poly.is_zero() {
            terms.push((false, poly.display_with(var)));
        }
        for (a, m) in &split.roots {
            let base = Polynomial::linear_root(a).display_with(var);
            let cs = self.laurent_coefficients(&Point::Finite(a.clone()), -(*m as i64)..=-1);
            for (idx, c) in cs.iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let order = *m - idx;
                let (negative, mag) = split_sign(c);
                let coeff = if mag.is_integer() || (mag.re().is_zero() && mag.im().is_integer()) {
                    mag.to_string()
                } else {
                    format!("({mag})")
                };
                let denom = if order == 1 {
                    format!("({base})")
                } else {
                    format!("({base})^{order}")
                };
                terms.push((negative, format!("{coeff}/{denom}")));
            }
        }
        let mut out = String::new();
        for (k, (negative, t)) in terms.iter().enumerate() {
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(t);
        }
        out
    }
}

fn multiplicity(p: &Polynomial, lin: &Polynomial) -> usize {
    let mut p = p.clone();
    let mut k = 0;
    while !p.is_zero() {
        match p.div_exact(lin) {
            Some(q) => {
                p = q;
                k += 1;
            }
            None => break,
        }
    }
    k
}

fn strip_low_zeros(p: &Polynomial) -> (Polynomial, usize) {
    let k = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    (Polynomial::new(p.coeffs()[k..].to_vec()), k)
}

/// First `len` coefficients of `n/d` as a power series; `d(0) != 0`.
fn power_series_quotient(n: &Polynomial, d: &Polynomial, len: usize) -> Vec<GaussianRational> {
    let d0_inv = d.coeff(0).inv().expect("denominator regular at expansion point");
    let mut out: Vec<GaussianRational> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = n.coeff(k);
        for i in 1..=k.min(d.degree().unwrap_or(0)) {
            acc -= &(&d.coeff(i) * &out[k - i]);
        }
        out.push(&acc * &d0_inv);
    }
    out
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let lhs_cof = self.den.div_rem(&g).0;
        let rhs_cof = rhs.den.div_rem(&g).0;
        let num = &(&self.num * &rhs_cof) + &(&rhs.num * &lhs_cof);
        RationalFunction::new(num, &self.den * &rhs_cof)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cancel = |p: &Polynomial, g: &Polynomial| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_rem(g).0
            }
        };
        let num = &cancel(&self.num, &g1) * &cancel(&rhs.num, &g2);
        let den = &cancel(&self.den, &g2) * &cancel(&rhs.den, &g1);
        RationalFunction::from_coprime(num, den)
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.inv().expect("rational function division by zero")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &'a RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Field for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn from_gaussian(c: &GaussianRational) -> Self {
        RationalFunction::constant(c.clone())
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

impl From<GaussianRational> for RationalFunction {
    fn from(c: GaussianRational) -> Self {
        RationalFunction::constant(c)
    }
}
