//! Sparse multivariate polynomials with exact integer coefficients.
//!
//! Variables are indexed 0 = t1, 1 = t2, 2.. = u1, u2, ... The monomial
//! order is graded lexicographic in that variable order; it is fixed once
//! and used for normal forms and bit-exact serialization.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

pub const VAR_T1: usize = 0;
pub const VAR_T2: usize = 1;

pub fn var_name(idx: usize) -> String {
    match idx {
        VAR_T1 => "t1".to_string(),
        VAR_T2 => "t2".to_string(),
        i => format!("u{}", i - 1),
    }
}

/// Exponent vector. Ordered by total degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub SmallVec<[u16; 6]>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(smallvec::smallvec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[idx] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        debug_assert_eq!(self.0.len(), other.0.len());
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise quotient, if `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Mono(out))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse polynomial over the integers. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Mono, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(Mono::var(nvars, idx), BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        // Multiply the smaller polynomial into the larger one.
        let (a, b) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// GCD of all coefficients (positive); zero polynomial has content 0.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides all coefficients by `d`; panics if not exact.
    pub fn div_scalar_exact(&self, d: &BigInt) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let (q, r) = c.div_rem(d);
                    assert!(r.is_zero(), "non-exact scalar division");
                    (m.clone(), q)
                })
                .collect(),
        }
    }

    /// Exact polynomial division; returns None unless `self = q * div` exactly.
    pub fn exact_div(&self, div: &MPoly) -> Option<MPoly> {
        assert!(!div.is_zero(), "division by zero polynomial");
        let (dm, dc) = div.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.div(dm)?;
            let (qc, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            quot.add_term(qm.clone(), qc.clone());
            for (m, c) in &div.terms {
                rem.add_term(qm.mul(m), -(c * &qc));
            }
        }
        Some(quot)
    }

    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from(c.clone());
            for (idx, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term *= &values[idx];
                }
            }
            acc += term;
        }
        acc
    }

    /// Applies a substitution sending each variable to a polynomial.
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        let nv = images.first().map(|p| p.nvars).unwrap_or(self.nvars);
        let mut acc = MPoly::zero(nv);
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(nv, c.clone());
            for (idx, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[idx].pow(e as u32));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitutes t2 -> -t1.
    pub fn subst_t2_neg_t1(&self) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e2 = m.0[VAR_T2];
            let mut nm = m.clone();
            nm.0[VAR_T1] += e2;
            nm.0[VAR_T2] = 0;
            let sign = if e2 % 2 == 1 { -c } else { c.clone() };
            out.add_term(nm, sign);
        }
        out
    }

    /// Swaps the variables t1 and t2.
    pub fn swap_t(&self) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut nm = m.clone();
            nm.0.swap(VAR_T1, VAR_T2);
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Relabels u_i -> u_{r+1-i}.
    pub fn reverse_u(&self) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut nm = m.clone();
            nm.0[2..].reverse();
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Makes the leading coefficient positive; returns the sign applied.
    pub fn normalize_sign(&self) -> (MPoly, i8) {
        match self.leading() {
            Some((_, c)) if c.is_negative() => (self.neg(), -1),
            _ => (self.clone(), 1),
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest monomial first.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut wrote_var = false;
            if !abs.is_one() || m.is_one() {
                write!(f, "{abs}")?;
                wrote_var = true;
            }
            for (idx, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_var {
                    write!(f, "*")?;
                }
                write!(f, "{}", var_name(idx))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote_var = true;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1() -> MPoly {
        MPoly::var(4, VAR_T1)
    }
    fn t2() -> MPoly {
        MPoly::var(4, VAR_T2)
    }
    fn u(i: usize) -> MPoly {
        MPoly::var(4, 1 + i)
    }

    #[test]
    fn arithmetic_basics() {
        let p = t1().add(&t2());
        assert!(p.sub(&t1()).sub(&t2()).is_zero());
        let q = u(1).sub(&u(2)).mul(&u(1).add(&u(2)));
        let expect = u(1).mul(&u(1)).sub(&u(2).mul(&u(2)));
        assert_eq!(q, expect);
    }

    #[test]
    fn exact_division() {
        // (t1^2 - t2^2) / (t1 - t2) = t1 + t2
        let num = t1().mul(&t1()).sub(&t2().mul(&t2()));
        let den = t1().sub(&t2());
        assert_eq!(num.exact_div(&den), Some(t1().add(&t2())));
        // Non-exact case.
        assert_eq!(t1().add(&t2()).exact_div(&t1()), None);
    }

    #[test]
    fn substitution_t2_neg_t1() {
        assert!(t1().add(&t2()).subst_t2_neg_t1().is_zero());
        let p = t1().sub(&t2()).subst_t2_neg_t1();
        assert_eq!(p, t1().mul_scalar(&BigInt::from(2)));
        let q = u(1).sub(&u(2));
        assert_eq!(q.subst_t2_neg_t1(), q);
    }

    #[test]
    fn display_sorted_with_signs() {
        let p = t1().mul(&t1()).sub(&t2()).add(&MPoly::one(4));
        assert_eq!(p.to_string(), "t1^2 - t2 + 1");
    }
}
