use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::QPoly;
use super::{gcd_u64, rational_json, ExactError};

/// The n-th cyclotomic polynomial, integer coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicPolynomial {
    order: u64,
    coeffs: Vec<i64>,
}

impl CyclotomicPolynomial {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn to_qpoly(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }
}

/// Everything needed to do arithmetic in Q(zeta_n): the modulus and the
/// reduction of every power x^k, 0 <= k < n.
#[derive(Debug)]
struct FieldCtx {
    phi: CyclotomicPolynomial,
    powers: Vec<Vec<i64>>,
}

impl FieldCtx {
    fn degree(&self) -> usize {
        self.phi.degree()
    }
}

fn phi_cache() -> &'static RwLock<HashMap<u64, CyclotomicPolynomial>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, CyclotomicPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn field_cache() -> &'static RwLock<HashMap<u64, Arc<FieldCtx>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<FieldCtx>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Exact division of integer polynomials by a monic divisor.
fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    debug_assert_eq!(*den.last().unwrap(), 1);
    let mut rem = num.to_vec();
    let dl = den.len();
    let mut quot = vec![0i64; num.len() + 1 - dl];
    for shift in (0..quot.len()).rev() {
        let c = rem[shift + dl - 1];
        if c == 0 {
            continue;
        }
        for (k, &d) in den.iter().enumerate() {
            rem[shift + k] -= c * d;
        }
        quot[shift] = c;
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Phi_n(x) = (x^n - 1) / prod_{d | n, d < n} Phi_d(x), memoized.
pub fn cyclotomic_polynomial(n: u64) -> Result<CyclotomicPolynomial, ExactError> {
    if n == 0 {
        return Err(ExactError::ZeroOrder);
    }
    if let Some(p) = phi_cache().read().unwrap().get(&n) {
        return Ok(p.clone());
    }
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let phi_d = cyclotomic_polynomial(d)?;
        poly = div_exact_monic(&poly, &phi_d.coeffs);
    }
    let out = CyclotomicPolynomial {
        order: n,
        coeffs: poly,
    };
    phi_cache().write().unwrap().insert(n, out.clone());
    Ok(out)
}

fn field(n: u64) -> Result<Arc<FieldCtx>, ExactError> {
    if let Some(f) = field_cache().read().unwrap().get(&n) {
        return Ok(f.clone());
    }
    let phi = cyclotomic_polynomial(n)?;
    let deg = phi.degree();
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; deg];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x, then fold x^deg = -(phi_0 + ... + phi_{deg-1} x^{deg-1})
        let top = cur[deg - 1];
        for i in (1..deg).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for (c, &p) in cur.iter_mut().zip(&phi.coeffs) {
                *c -= top * p;
            }
        }
    }
    let ctx = Arc::new(FieldCtx { phi, powers });
    field_cache().write().unwrap().insert(n, ctx.clone());
    Ok(ctx)
}

/// An exact element of Q(zeta_n), stored in the power basis
/// 1, zeta, ..., zeta^{phi(n)-1}.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCyclotomic")]
pub struct CyclotomicNumber {
    order: u64,
    #[serde(with = "rational_json::vec")]
    coeffs: Vec<BigRational>,
}

#[derive(Deserialize)]
struct RawCyclotomic {
    order: u64,
    #[serde(with = "rational_json::vec")]
    coeffs: Vec<BigRational>,
}

impl TryFrom<RawCyclotomic> for CyclotomicNumber {
    type Error = ExactError;
    fn try_from(raw: RawCyclotomic) -> Result<Self, Self::Error> {
        CyclotomicNumber::from_coeffs(raw.order, raw.coeffs)
    }
}

impl CyclotomicNumber {
    pub fn zero(n: u64) -> Result<Self, ExactError> {
        let deg = field(n)?.degree();
        Ok(CyclotomicNumber {
            order: n,
            coeffs: vec![BigRational::zero(); deg],
        })
    }

    pub fn one(n: u64) -> Result<Self, ExactError> {
        Self::from_rational(n, BigRational::one())
    }

    pub fn from_rational(n: u64, r: BigRational) -> Result<Self, ExactError> {
        let mut z = Self::zero(n)?;
        z.coeffs[0] = r;
        Ok(z)
    }

    /// Coefficients must already be in the reduced power basis.
    pub fn from_coeffs(n: u64, coeffs: Vec<BigRational>) -> Result<Self, ExactError> {
        let deg = field(n)?.degree();
        if coeffs.len() != deg {
            return Err(ExactError::CoefficientCount {
                order: n,
                expected: deg,
                got: coeffs.len(),
            });
        }
        Ok(CyclotomicNumber { order: n, coeffs })
    }

    /// `sum_k c_k zeta_n^k` for arbitrary integer exponents.
    pub fn from_power_sum<I>(n: u64, terms: I) -> Result<Self, ExactError>
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let ctx = field(n)?;
        let mut full = vec![BigRational::zero(); n as usize];
        for (k, c) in terms {
            full[k.rem_euclid(n as i64) as usize] += c;
        }
        Ok(CyclotomicNumber {
            order: n,
            coeffs: reduce(&ctx, &full),
        })
    }

    /// zeta_n^k.
    pub fn root(n: u64, k: i64) -> Result<Self, ExactError> {
        Self::from_power_sum(n, [(k, BigRational::one())])
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if every non-constant coefficient vanishes.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), ExactError> {
        if self.order != other.order {
            return Err(ExactError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_order(other)?;
        Ok(CyclotomicNumber {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_order(other)?;
        Ok(CyclotomicNumber {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_order(other)?;
        let ctx = field(self.order)?;
        let n = self.order as usize;
        let mut full = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[(i + j) % n] += a * b;
                }
            }
        }
        Ok(CyclotomicNumber {
            order: self.order,
            coeffs: reduce(&ctx, &full),
        })
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let ctx = field(self.order)?;
        let inv = QPoly::new(self.coeffs.clone())
            .inverse_mod(&ctx.phi.to_qpoly())
            .ok_or(ExactError::DivisionByZero)?;
        let mut coeffs = inv.0;
        coeffs.resize(ctx.degree(), BigRational::zero());
        Ok(CyclotomicNumber {
            order: self.order,
            coeffs,
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order).expect("order already validated");
        for _ in 0..e {
            acc = acc.try_mul(self).expect("same order");
        }
        acc
    }

    /// The automorphism zeta -> zeta^k. `k = n - 1` is complex conjugation.
    pub fn galois(&self, k: i64) -> Result<Self, ExactError> {
        let n = self.order;
        let km = k.rem_euclid(n as i64) as u64;
        if gcd_u64(km, n) != 1 {
            return Err(ExactError::NotCoprime { k, n });
        }
        Self::from_power_sum(
            n,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u64 * km) as i64, c.clone())),
        )
    }

    pub fn conj(&self) -> Self {
        self.galois(self.order as i64 - 1)
            .expect("n - 1 is always a unit")
    }

    /// The same number viewed in Q(zeta_{n m}), via zeta_n = zeta_{nm}^m.
    pub fn lift(&self, m: u64) -> Result<Self, ExactError> {
        if m == 0 {
            return Err(ExactError::ZeroOrder);
        }
        Self::from_power_sum(
            self.order * m,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u64 * m) as i64, c.clone())),
        )
    }

    /// Double-precision value at zeta = e^{2 pi i / n}. Display only.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let v = c.to_f64().unwrap_or(f64::NAN);
                Complex64::from_polar(v, 2.0 * std::f64::consts::PI * i as f64 / n)
            })
            .sum()
    }
}

fn reduce(ctx: &FieldCtx, full: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); ctx.degree()];
    for (k, c) in full.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (o, &p) in out.iter_mut().zip(&ctx.powers[k]) {
            if p != 0 {
                *o += c * BigRational::from_integer(p.into());
            }
        }
    }
    out
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z{})[{}]", self.order, self)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z")?,
                (_, false) => write!(f, "{mag}*z")?,
            }
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! panicking_op {
    ($tr:ident, $m:ident, $try:ident) => {
        /// Panics on an order mismatch; use the `try_` method to get a `Result`.
        impl $tr<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
    };
}

panicking_op!(Add, add, try_add);
panicking_op!(Sub, sub, try_sub);
panicking_op!(Mul, mul, try_mul);

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    fn z(n: u64, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::root(n, k).unwrap()
    }

    fn q(n: u64, r: BigRational) -> CyclotomicNumber {
        CyclotomicNumber::from_rational(n, r).unwrap()
    }

    fn cyc(n: u64, c: &[(i64, i64)]) -> CyclotomicNumber {
        CyclotomicNumber::from_coeffs(n, c.iter().map(|&(a, b)| rat(a, b)).collect()).unwrap()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).unwrap().coeffs(), &[-1, 1]);
        assert_eq!(cyclotomic_polynomial(5).unwrap().coeffs(), &[1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(6).unwrap().coeffs(), &[1, -1, 1]);
        assert_eq!(
            cyclotomic_polynomial(12).unwrap().coeffs(),
            &[1, 0, -1, 0, 1]
        );
        assert!(cyclotomic_polynomial(0).is_err());
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        // first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
        let phi = cyclotomic_polynomial(105).unwrap();
        assert_eq!(phi.degree(), 48);
        assert!(phi.coeffs().contains(&-2));
    }

    #[test]
    fn roots() {
        assert_eq!(z(2, 1).as_rational(), Some(rat_int(-1)));
        assert_eq!(z(3, 3), q(3, rat_int(1)));
        assert_eq!(z(3, 2), cyc(3, &[(-1, 1), (-1, 1)]));
        assert_eq!(z(5, -1), z(5, 4));
        assert!(z(5, 1).as_rational().is_none());
    }

    #[test]
    fn products() {
        let one = q(3, rat_int(1));
        let a = &one - &z(3, 1);
        let b = &one - &z(3, 2);
        assert_eq!((&a * &b).as_rational(), Some(rat_int(3)));
        assert_eq!(&z(3, 1) * &z(3, 2), one);
        assert_eq!(a.pow(3), cyc(3, &[(-3, 1), (-6, 1)]));
    }

    #[test]
    fn inverses() {
        assert_eq!(q(3, rat_int(2)).inv().unwrap(), q(3, rat(1, 2)));
        let a = &q(3, rat_int(1)) - &z(3, 1);
        assert_eq!(a.inv().unwrap(), cyc(3, &[(2, 3), (1, 3)]));
        assert_eq!(
            CyclotomicNumber::zero(3).unwrap().inv(),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        assert_eq!(
            z(3, 1).try_add(&z(5, 1)),
            Err(ExactError::OrderMismatch { left: 3, right: 5 })
        );
        assert!(z(3, 1).try_mul(&z(6, 1)).is_err());
    }

    #[test]
    fn galois_action() {
        let x = cyc(3, &[(1, 1), (2, 1)]);
        assert_eq!(x.galois(1).unwrap(), x);
        assert_eq!(x.galois(2).unwrap(), cyc(3, &[(-1, 1), (-2, 1)]));
        assert_eq!(q(3, rat(7, 2)).galois(2).unwrap(), q(3, rat(7, 2)));
        assert_eq!(
            z(6, 1).galois(2),
            Err(ExactError::NotCoprime { k: 2, n: 6 })
        );
    }

    #[test]
    fn lift_embeds() {
        let a = z(3, 1);
        assert_eq!(a.lift(2).unwrap(), z(6, 2));
        let b = cyc(3, &[(1, 2), (-1, 3)]);
        assert_eq!(
            (&a * &b).lift(4).unwrap(),
            &a.lift(4).unwrap() * &b.lift(4).unwrap()
        );
    }

    #[test]
    fn float_embedding() {
        let w = z(3, 1).to_complex();
        assert!((w.re + 0.5).abs() < 1e-12 && (w.im - 0.75f64.sqrt()).abs() < 1e-12);
        let m = q(7, rat_int(-1)).to_complex();
        assert!((m.re + 1.0).abs() < 1e-12 && m.im.abs() < 1e-12);
        let x = cyc(3, &[(1, 9), (2, 9)]).to_complex();
        assert!(x.re.abs() < 1e-12 && (x.im - 3f64.sqrt() / 9.0).abs() < 1e-12);
    }

    #[test]
    fn display_and_serde() {
        let x = cyc(3, &[(2, 3), (-1, 3)]);
        assert_eq!(x.to_string(), "2/3 - 1/3*z");
        assert_eq!(CyclotomicNumber::zero(5).unwrap().to_string(), "0");
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"order":3,"coeffs":[[2,3],[-1,3]]}"#);
        assert_eq!(serde_json::from_str::<CyclotomicNumber>(&s).unwrap(), x);
        assert!(
            serde_json::from_str::<CyclotomicNumber>(r#"{"order":3,"coeffs":[[1,1]]}"#).is_err()
        );
    }
}
