//! Exact rational functions in t1, t2, u1..ur.
//!
//! A [`RingElem`] is kept as `coeff * num / prod(den_i ^ e_i)` with a
//! primitive, sign-normalized numerator and a sorted list of primitive,
//! sign-normalized, non-constant denominator factors. Denominators arising
//! in the transition formulas are products of linear forms, so keeping the
//! factored shape makes fraction addition and cancellation cheap without a
//! full multivariate gcd.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use super::mono::MPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("division by zero element")]
    DivisionByZero,
    #[error("non-generic assignment: a denominator vanished, retry with new random rationals")]
    NonGenericAssignment,
    #[error("denominator vanishes identically on t1 + t2 = 0")]
    PoleOnHyperplane,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
}

/// Exact rational values for t1, t2, u1..ur (the fast evaluation mode).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub rank: usize,
    /// Values indexed like ring variables: t1, t2, u1..ur.
    pub values: Vec<BigRational>,
}

impl Assignment {
    pub fn new(rank: usize, values: Vec<BigRational>) -> Self {
        assert_eq!(values.len(), rank + 2);
        assert!(!values[0].is_zero() && !values[1].is_zero(), "t1, t2 must be nonzero");
        Assignment { rank, values }
    }

    /// Random small rationals; genericity is enforced dynamically by the
    /// consumers (retry on a vanishing denominator).
    pub fn random<R: Rng>(rank: usize, rng: &mut R) -> Self {
        let mut values = Vec::with_capacity(rank + 2);
        for _ in 0..rank + 2 {
            let mut n: i64 = 0;
            while n == 0 {
                n = rng.gen_range(-199..=199);
            }
            let d: i64 = rng.gen_range(1..=13);
            values.push(BigRational::new(BigInt::from(n), BigInt::from(d)));
        }
        Assignment { rank, values }
    }
}

/// An exact rational function over the integers in t1, t2, u1..ur.
#[derive(Debug, Clone)]
pub struct RingElem {
    nvars: usize,
    coeff: BigRational,
    num: MPoly,
    den: Vec<(MPoly, u32)>,
}

impl RingElem {
    fn normalized(nvars: usize, mut coeff: BigRational, num: MPoly, den: Vec<(MPoly, u32)>) -> Self {
        if coeff.is_zero() || num.is_zero() {
            return Self::zero(nvars);
        }
        // Primitive, positive-leading numerator; fold the rest into coeff.
        let content = num.content();
        let mut num = num.div_scalar_exact(&content);
        coeff *= BigRational::from(content);
        let (n, sign) = num.normalize_sign();
        num = n;
        if sign < 0 {
            coeff = -coeff;
        }
        // Cancel denominator factors that divide the numerator.
        let mut out_den: Vec<(MPoly, u32)> = Vec::with_capacity(den.len());
        for (f, mut e) in den {
            debug_assert!(!f.is_constant());
            while e > 0 {
                match num.exact_div(&f) {
                    Some(q) => {
                        num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                out_den.push((f, e));
            }
        }
        out_den.sort_by(|a, b| a.0.cmp(&b.0));
        // Merge equal factors (possible after sorting inputs from both sides).
        let mut merged: Vec<(MPoly, u32)> = Vec::with_capacity(out_den.len());
        for (f, e) in out_den {
            match merged.last_mut() {
                Some((g, ge)) if *g == f => *ge += e,
                _ => merged.push((f, e)),
            }
        }
        RingElem {
            nvars,
            coeff,
            num,
            den: merged,
        }
    }

    /// Builds `coeff * num / prod(den)` and normalizes. Denominator factors
    /// must be nonzero polynomials; constant factors are folded into coeff.
    pub fn fraction(nvars: usize, mut coeff: BigRational, num: MPoly, den: Vec<MPoly>) -> Self {
        let mut factors = Vec::with_capacity(den.len());
        for f in den {
            assert!(!f.is_zero(), "zero denominator factor");
            if f.is_constant() {
                let c = f.terms.values().next().unwrap().clone();
                coeff /= BigRational::from(c);
                continue;
            }
            let content = f.content();
            let (g, sign) = f.div_scalar_exact(&content).normalize_sign();
            let mut scale = BigRational::from(content);
            if sign < 0 {
                scale = -scale;
            }
            coeff /= scale;
            factors.push((g, 1));
        }
        Self::normalized(nvars, coeff, num, factors)
    }

    pub fn zero(nvars: usize) -> Self {
        RingElem {
            nvars,
            coeff: BigRational::zero(),
            num: MPoly::one(nvars),
            den: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_int(nvars, 1)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::from_rational(nvars, BigRational::from(BigInt::from(c)))
    }

    pub fn from_rational(nvars: usize, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        RingElem {
            nvars,
            coeff: c,
            num: MPoly::one(nvars),
            den: Vec::new(),
        }
    }

    pub fn from_poly(p: MPoly) -> Self {
        let nvars = p.nvars;
        Self::normalized(nvars, BigRational::one(), p, Vec::new())
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        Self::from_poly(MPoly::var(nvars, idx))
    }

    /// t1 + t2.
    pub fn hbar(nvars: usize) -> Self {
        Self::from_poly(MPoly::var(nvars, 0).add(&MPoly::var(nvars, 1)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den_factors(&self) -> &[(MPoly, u32)] {
        &self.den
    }

    /// Rational constant value, if the element is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.is_one() && self.den.is_empty() {
            Some(self.coeff.clone())
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.coeff = -out.coeff;
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Common denominator: factor-wise max of exponents.
        let mut union: Vec<(MPoly, u32)> = Vec::new();
        {
            let (mut i, mut j) = (0, 0);
            while i < self.den.len() || j < other.den.len() {
                if j >= other.den.len() {
                    union.push(self.den[i].clone());
                    i += 1;
                } else if i >= self.den.len() {
                    union.push(other.den[j].clone());
                    j += 1;
                } else {
                    match self.den[i].0.cmp(&other.den[j].0) {
                        std::cmp::Ordering::Less => {
                            union.push(self.den[i].clone());
                            i += 1;
                        }
                        std::cmp::Ordering::Greater => {
                            union.push(other.den[j].clone());
                            j += 1;
                        }
                        std::cmp::Ordering::Equal => {
                            union.push((self.den[i].0.clone(), self.den[i].1.max(other.den[j].1)));
                            i += 1;
                            j += 1;
                        }
                    }
                }
            }
        }
        let extra = |own: &[(MPoly, u32)]| -> MPoly {
            let mut p = MPoly::one(self.nvars);
            for (f, e) in &union {
                let have = own
                    .iter()
                    .find(|(g, _)| g == f)
                    .map(|(_, ge)| *ge)
                    .unwrap_or(0);
                if *e > have {
                    p = p.mul(&f.pow(e - have));
                }
            }
            p
        };
        let e1 = extra(&self.den);
        let e2 = extra(&other.den);
        let s1 = self.coeff.numer() * other.coeff.denom();
        let s2 = other.coeff.numer() * self.coeff.denom();
        let num = self
            .num
            .mul(&e1)
            .mul_scalar(&s1)
            .add(&other.num.mul(&e2).mul_scalar(&s2));
        let coeff = BigRational::new(BigInt::one(), self.coeff.denom() * other.coeff.denom());
        Self::normalized(self.nvars, coeff, num, union)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut den = self.den.clone();
        den.extend(other.den.iter().cloned());
        Self::normalized(
            self.nvars,
            &self.coeff * &other.coeff,
            self.num.mul(&other.num),
            den,
        )
    }

    pub fn inverse(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let mut num = MPoly::one(self.nvars);
        for (f, e) in &self.den {
            num = num.mul(&f.pow(*e));
        }
        let den = if self.num.is_one() {
            Vec::new()
        } else {
            vec![(self.num.clone(), 1)]
        };
        Ok(Self::normalized(self.nvars, self.coeff.recip(), num, den))
    }

    pub fn div(&self, other: &Self) -> Result<Self, RingError> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact evaluation at an assignment of rational values.
    pub fn evaluate(&self, a: &Assignment) -> Result<BigRational, RingError> {
        if a.values.len() != self.nvars {
            return Err(RingError::RankMismatch(a.values.len(), self.nvars));
        }
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let mut acc = &self.coeff * self.num.eval(&a.values);
        for (f, e) in &self.den {
            let v = f.eval(&a.values);
            if v.is_zero() {
                return Err(RingError::NonGenericAssignment);
            }
            for _ in 0..*e {
                acc /= &v;
            }
        }
        Ok(acc)
    }

    /// Substitutes t2 -> -t1.
    pub fn specialize_hplane(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let num = self.num.subst_t2_neg_t1();
        let mut den = Vec::new();
        let mut coeff = self.coeff.clone();
        for (f, e) in &self.den {
            let g = f.subst_t2_neg_t1();
            if g.is_zero() {
                return Err(RingError::PoleOnHyperplane);
            }
            if g.is_constant() {
                let c = BigRational::from(g.terms.values().next().unwrap().clone());
                for _ in 0..*e {
                    coeff /= &c;
                }
            } else {
                for _ in 0..*e {
                    den.push(g.clone());
                }
            }
        }
        let mut out = Self::fraction(self.nvars, coeff, num, den);
        if out.is_zero() {
            out = Self::zero(self.nvars);
        }
        Ok(out)
    }

    fn map_polys(&self, f: impl Fn(&MPoly) -> MPoly) -> Self {
        let num = f(&self.num);
        let mut den = Vec::new();
        for (g, e) in &self.den {
            let h = f(g);
            for _ in 0..*e {
                den.push(h.clone());
            }
        }
        Self::fraction(self.nvars, self.coeff.clone(), num, den)
    }

    /// Swaps t1 and t2 everywhere.
    pub fn swap_t(&self) -> Self {
        self.map_polys(|p| p.swap_t())
    }

    /// Relabels u_i -> u_{r+1-i} everywhere.
    pub fn reverse_u(&self) -> Self {
        self.map_polys(|p| p.reverse_u())
    }

    /// The expanded `(numerator, denominator)` pair with integer content
    /// folded in; denominator has positive leading coefficient.
    pub fn to_num_den(&self) -> (MPoly, MPoly) {
        let num = self.num.mul_scalar(self.coeff.numer());
        let mut den = MPoly::constant(self.nvars, self.coeff.denom().clone());
        for (f, e) in &self.den {
            den = den.mul(&f.pow(*e));
        }
        (num, den)
    }
}

/// Semantic equality (equality of rational functions).
impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars == other.nvars
            && self.coeff == other.coeff
            && self.num == other.num
            && self.den == other.den
        {
            return true;
        }
        self.sub(other).is_zero()
    }
}

impl Eq for RingElem {}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.to_num_den();
        if den.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/({den})")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::mono::{VAR_T1, VAR_T2};

    const NV: usize = 4; // rank 2

    fn t1() -> RingElem {
        RingElem::var(NV, VAR_T1)
    }
    fn t2() -> RingElem {
        RingElem::var(NV, VAR_T2)
    }
    fn u(i: usize) -> RingElem {
        RingElem::var(NV, 1 + i)
    }

    #[test]
    fn field_ops() {
        // (t1+t2) - t1 - t2 = 0
        assert!(t1().add(&t2()).sub(&t1()).sub(&t2()).is_zero());
        // (t1^2 - t2^2)/(t1 - t2) = t1 + t2
        let q = t1()
            .mul(&t1())
            .sub(&t2().mul(&t2()))
            .div(&t1().sub(&t2()))
            .unwrap();
        assert_eq!(q, t1().add(&t2()));
        // (u1 - u2)(u1 + u2) = u1^2 - u2^2
        let lhs = u(1).sub(&u(2)).mul(&u(1).add(&u(2)));
        let rhs = u(1).mul(&u(1)).sub(&u(2).mul(&u(2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn is_zero_exact() {
        assert!(t1().add(&t2()).sub(&RingElem::hbar(NV)).is_zero());
        assert!(!u(1).sub(&u(2)).is_zero());
        let x = u(1).div(&t1().sub(&t2())).unwrap().add(&t2());
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn evaluate_homomorphism() {
        use num_bigint::BigInt;
        let a = Assignment::new(
            2,
            vec![2, 3, 5, 7]
                .into_iter()
                .map(|n| BigRational::from(BigInt::from(n)))
                .collect(),
        );
        assert_eq!(t2().evaluate(&a).unwrap(), BigRational::from(BigInt::from(3)));
        let x = t1().add(&t2()).mul(&u(1));
        let y = u(2).sub(&t1());
        assert_eq!(
            x.mul(&y).evaluate(&a).unwrap(),
            x.evaluate(&a).unwrap() * y.evaluate(&a).unwrap()
        );
        assert_eq!(
            x.add(&y).evaluate(&a).unwrap(),
            x.evaluate(&a).unwrap() + y.evaluate(&a).unwrap()
        );
        // Pole detection.
        let b = Assignment::new(
            2,
            vec![1, 1, 5, 5]
                .into_iter()
                .map(|n| BigRational::from(BigInt::from(n)))
                .collect(),
        );
        let pole = RingElem::one(NV).div(&u(1).sub(&u(2))).unwrap();
        assert_eq!(pole.evaluate(&b), Err(RingError::NonGenericAssignment));
    }

    #[test]
    fn evaluate_with_t_cancellation() {
        use num_bigint::BigInt;
        let a = Assignment::new(
            2,
            vec![1, -1, 5, 7]
                .into_iter()
                .map(|n| BigRational::from(BigInt::from(n)))
                .collect(),
        );
        let x = t1().add(&t2()).mul(&t2());
        assert!(x.evaluate(&a).unwrap().is_zero());
    }

    #[test]
    fn hyperplane_specialization() {
        assert!(RingElem::hbar(NV).specialize_hplane().unwrap().is_zero());
        assert_eq!(
            t1().sub(&t2()).specialize_hplane().unwrap(),
            t1().mul(&RingElem::from_int(NV, 2))
        );
        let w = u(1).sub(&u(2));
        assert_eq!(w.specialize_hplane().unwrap(), w);
        // A pole on the hyperplane is reported.
        let pole = RingElem::one(NV).div(&RingElem::hbar(NV)).unwrap();
        assert_eq!(pole.specialize_hplane(), Err(RingError::PoleOnHyperplane));
    }

    #[test]
    fn display_forms() {
        assert_eq!(t1().add(&t2()).to_string(), "t1 + t2");
        assert_eq!(
            u(1).div(&t1().sub(&t2())).unwrap().to_string(),
            "(u1)/(t1 - t2)"
        );
        assert_eq!(RingElem::zero(NV).to_string(), "0");
        let half = RingElem::from_rational(
            NV,
            BigRational::new(num_bigint::BigInt::from(1), num_bigint::BigInt::from(2)),
        );
        assert_eq!(half.mul(&t1()).to_string(), "(t1)/(2)");
    }
}
