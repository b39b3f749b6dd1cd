//! Terminating Gauss series and the separated radial equation in the variable u.
//!
//! For a homogeneous wave polynomial y_k of degree k the ansatz φ = f_k(u)·y_k
//! turns the field equation into
//!
//! ```text
//! 4u f'' − (2n − 8 + 4k) f' − n(n+2)/(1−u)² f = 0,
//! ```
//!
//! and f = (1−u)^{1+n/2} g with g solving Gauss' equation for a = 2 − k,
//! b = 1 + n/2, c = 2 − k − n/2. For even n the solutions g₁, g₂ and g₁₂ are
//! rational in u, so the ODE check is an exact rational-function identity.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::superscript;
use crate::rational::{self, int, Rational};

/// Univariate polynomial over ℚ in u, coefficients in ascending powers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::from_coeffs(vec![c])
    }

    /// The variable u.
    pub fn u() -> Self {
        UPoly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `1 − u`
    pub fn one_minus_u() -> Self {
        UPoly::from_coeffs(vec![Rational::one(), -Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(i, a)| a * int(i as i64)).collect())
    }

    pub fn pow(&self, e: u32) -> UPoly {
        (0..e).fold(UPoly::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] / &lead;
            let shift = top - dd;
            for (i, b) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= &c * b;
            }
            quot[shift] = c;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UPoly::from_coeffs(quot), UPoly::from_coeffs(rem))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UPoly {
        match self.leading() {
            None => UPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn eval_exact(&self, u: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * u + c)
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * u + rational::to_f64(c))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            if i >= 1 {
                write!(f, "u")?;
            }
            if i >= 2 {
                write!(f, "{}", superscript(i as u32))?;
            }
        }
        Ok(())
    }
}

/// Ratio of univariate polynomials, kept in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction1D {
    num: UPoly,
    den: UPoly,
}

impl RationalFunction1D {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RationalFunction1D::zero());
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let lead = den.leading().expect("nonzero").recip();
        Ok(RationalFunction1D { num: num.scale(&lead), den: den.scale(&lead) })
    }

    pub fn zero() -> Self {
        RationalFunction1D { num: UPoly::zero(), den: UPoly::one() }
    }

    pub fn one() -> Self {
        RationalFunction1D::from_poly(UPoly::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction1D::from_poly(UPoly::constant(c))
    }

    pub fn from_poly(p: UPoly) -> Self {
        RationalFunction1D { num: p, den: UPoly::one() }
    }

    pub fn u() -> Self {
        RationalFunction1D::from_poly(UPoly::u())
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        RationalFunction1D::new(self.den.clone(), self.num.clone())
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RationalFunction1D { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RationalFunction1D::zero();
        }
        RationalFunction1D { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalFunction1D::new(num, self.den.pow(2)).expect("nonzero denominator")
    }

    /// Substitutes u → 1/u.
    pub fn invert_variable(&self) -> Self {
        let (dn, dd) = (self.num.degree().unwrap_or(0), self.den.degree().unwrap_or(0));
        let flip = |p: &UPoly, pad: usize| {
            let mut c = vec![Rational::zero(); pad];
            c.extend(p.coeffs.iter().rev().cloned());
            UPoly::from_coeffs(c)
        };
        let (num, den) = if dn >= dd {
            (flip(&self.num, 0), flip(&self.den, dn - dd))
        } else {
            (flip(&self.num, dd - dn), flip(&self.den, 0))
        };
        RationalFunction1D::new(num, den).expect("nonzero denominator")
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.num.eval(u) / self.den.eval(u)
    }
}

impl Add for &RationalFunction1D {
    type Output = RationalFunction1D;
    fn add(self, rhs: &RationalFunction1D) -> RationalFunction1D {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction1D::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Sub for &RationalFunction1D {
    type Output = RationalFunction1D;
    fn sub(self, rhs: &RationalFunction1D) -> RationalFunction1D {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction1D {
    type Output = RationalFunction1D;
    fn mul(self, rhs: &RationalFunction1D) -> RationalFunction1D {
        RationalFunction1D::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

/// Panics when dividing by the zero function.
impl Div for &RationalFunction1D {
    type Output = RationalFunction1D;
    fn div(self, rhs: &RationalFunction1D) -> RationalFunction1D {
        self * &rhs.recip().expect("division by the zero rational function")
    }
}

impl Neg for &RationalFunction1D {
    type Output = RationalFunction1D;
    fn neg(self) -> RationalFunction1D {
        RationalFunction1D { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl GaussParams {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        GaussParams { a, b, c }
    }

    /// The parameters of the radial equation: a = 2 − k, b = 1 + n/2, c = 2 − k − n/2.
    pub fn radial(n: usize, k: u32) -> Self {
        let half = Rational::new((n as i64).into(), 2.into());
        let k = int(k as i64);
        GaussParams { a: int(2) - &k, b: int(1) + &half, c: int(2) - k - half }
    }

    /// Number of nonzero terms minus one, if some upper parameter is a non-positive integer.
    pub fn truncation(&self) -> Option<u64> {
        [&self.a, &self.b]
            .into_iter()
            .filter(|p| rational::is_integer(p) && !p.is_positive())
            .map(|p| (-p).to_integer().try_into().unwrap_or(u64::MAX))
            .min()
    }
}

/// Argument of the series: the formal variable itself or its reciprocal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesArg {
    U,
    InvU,
}

/// Exact finite ₂F₁(a, b; c; z) with z = u or z = 1/u.
pub fn hyp2f1_terminating(p: &GaussParams, arg: SeriesArg) -> Result<RationalFunction1D> {
    let n = p.truncation().ok_or(Error::NonTerminating)?;
    let mut coeffs = vec![Rational::one()];
    let mut term = Rational::one();
    for j in 0..n {
        let j = int(j as i64);
        let den = &p.c + &j;
        if den.is_zero() {
            return Err(Error::BadC { c: rational::to_fraction_string(&p.c) });
        }
        term = term * (&p.a + &j) * (&p.b + &j) / (den * (j + int(1)));
        coeffs.push(term.clone());
    }
    let series = RationalFunction1D::from_poly(UPoly::from_coeffs(coeffs));
    Ok(match arg {
        SeriesArg::U => series,
        SeriesArg::InvU => series.invert_variable(),
    })
}

/// z(1−z)y'' + (c − (a+b+1)z)y' − ab·y in the variable z = u.
pub fn gauss_ode_residual(p: &GaussParams, y: &RationalFunction1D) -> RationalFunction1D {
    let u = RationalFunction1D::u();
    let one_minus = RationalFunction1D::from_poly(UPoly::one_minus_u());
    let d1 = y.derivative();
    let d2 = d1.derivative();
    let lin = &RationalFunction1D::constant(p.c.clone())
        - &u.scale(&(&p.a + &p.b + int(1)));
    let t2 = &(&u * &one_minus) * &d2;
    let t1 = &lin * &d1;
    let t0 = y.scale(&(&p.a * &p.b));
    &(&t2 + &t1) - &t0
}

fn check_even(n: usize) -> Result<Rational> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::UnsupportedDim { dim: n, reason: "the radial solutions are rational only for even n ≥ 2" });
    }
    Ok(int((n / 2) as i64))
}

/// g₁ = F[2 − k, 1 + n/2, 2 − k − n/2, u]
pub fn g1(n: usize, k: u32) -> Result<RationalFunction1D> {
    check_even(n)?;
    hyp2f1_terminating(&GaussParams::radial(n, k), SeriesArg::U)
}

/// g₂ = u^{k−1+n/2} F[1 + n/2, k + n, k + n/2, u], made finite by Euler's
/// transformation F[a,b,c,u] = (1−u)^{c−a−b} F[c−a, c−b, c, u].
pub fn g2(n: usize, k: u32) -> Result<RationalFunction1D> {
    let h = check_even(n)?;
    let k = int(k as i64);
    let euler = GaussParams::new(&k - int(1), -h.clone(), &k + &h);
    let f = hyp2f1_terminating(&euler, SeriesArg::U)?;
    let e = rational::to_f64(&(&k - int(1) + &h)) as i32;
    let pref = &RationalFunction1D::u().powi(e)?
        * &RationalFunction1D::from_poly(UPoly::one_minus_u()).powi(-1 - n as i32)?;
    Ok(&pref * &f)
}

/// g₁₂ = (−u)^{n/2} (1−u)^{−1−n} F[−n/2, k − 1, k + n/2, 1/u]
pub fn g12(n: usize, k: u32) -> Result<RationalFunction1D> {
    let h = check_even(n)?;
    let kk = int(k as i64);
    let params = GaussParams::new(-h.clone(), &kk - int(1), &kk + &h);
    let f = hyp2f1_terminating(&params, SeriesArg::InvU)?;
    let minus_u = RationalFunction1D::u().scale(&-Rational::one());
    let pref = &minus_u.powi((n / 2) as i32)?
        * &RationalFunction1D::from_poly(UPoly::one_minus_u()).powi(-1 - n as i32)?;
    Ok(&pref * &f)
}

/// f = (1−u)^{1+n/2} g, undoing the substitution that produced Gauss' equation.
pub fn radial_from_gauss(n: usize, g: &RationalFunction1D) -> Result<RationalFunction1D> {
    check_even(n)?;
    let pref = RationalFunction1D::from_poly(UPoly::one_minus_u()).powi(1 + (n / 2) as i32)?;
    Ok(&pref * g)
}

/// f_k = (1−u)^{1+n/2} g₁₂
pub fn fk(n: usize, k: u32) -> Result<RationalFunction1D> {
    radial_from_gauss(n, &g12(n, k)?)
}

/// 4u f'' − (2n − 8 + 4k) f' − n(n+2)/(1−u)² f
pub fn radial_ode_residual(f: &RationalFunction1D, n: usize, k: u32) -> RationalFunction1D {
    let (n, k) = (n as i64, k as i64);
    let d1 = f.derivative();
    let d2 = d1.derivative();
    let pot = RationalFunction1D::new(UPoly::constant(int(n * (n + 2))), UPoly::one_minus_u().pow(2))
        .expect("nonzero denominator");
    let a = &RationalFunction1D::u().scale(&int(4)) * &d2;
    let b = d1.scale(&int(2 * n - 8 + 4 * k));
    let c = &pot * f;
    &(&a - &b) - &c
}

/// The radial equation applied to f_k; identically zero when the construction is right.
pub fn fk_ode_residual(n: usize, k: u32) -> Result<RationalFunction1D> {
    Ok(radial_ode_residual(&fk(n, k)?, n, k))
}
