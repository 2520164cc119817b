//! Polynomials in finitely many variables x_m^(i), colored by i.
//!
//! Used to check identities stated in actual variables rather than power
//! sums: substituting p_k^(i) = sum_m (x_m^(i))^k turns a [`ColoredPoly`]
//! into an [`XPoly`].

use std::collections::BTreeMap;
use std::fmt;

use crate::ring::RingElem;

use super::colored::ColoredPoly;

/// The variable layout: how many x-variables each color gets. Variables are
/// flattened color by color: color 0 first, then color 1, and so on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XVars {
    per_color: Vec<usize>,
}

impl XVars {
    pub fn new(per_color: Vec<usize>) -> Self {
        XVars { per_color }
    }

    pub fn uniform(colors: usize, count: usize) -> Self {
        XVars {
            per_color: vec![count; colors],
        }
    }

    pub fn colors(&self) -> usize {
        self.per_color.len()
    }

    pub fn total(&self) -> usize {
        self.per_color.iter().sum()
    }

    /// Flat index of variable `m` (0-based) of `color`.
    pub fn index(&self, color: usize, m: usize) -> usize {
        debug_assert!(m < self.per_color[color]);
        self.per_color[..color].iter().sum::<usize>() + m
    }

    pub fn count(&self, color: usize) -> usize {
        self.per_color[color]
    }
}

/// A polynomial in the x-variables with coefficients in Q(t1,t2,u).
/// Keys are exponent vectors over the flat variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XPoly {
    nxvars: usize,
    nvars: usize,
    terms: BTreeMap<Vec<u16>, RingElem>,
}

impl XPoly {
    pub fn zero(nxvars: usize, nvars: usize) -> Self {
        XPoly {
            nxvars,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nxvars: usize, c: RingElem) -> Self {
        let nvars = c.nvars();
        let mut p = Self::zero(nxvars, nvars);
        p.add_term(vec![0; nxvars], c);
        p
    }

    pub fn one(nxvars: usize, nvars: usize) -> Self {
        Self::constant(nxvars, RingElem::one(nvars))
    }

    /// The monomial prod x_i^(e_i).
    pub fn monomial(nxvars: usize, exps: Vec<u16>, c: RingElem) -> Self {
        assert_eq!(exps.len(), nxvars);
        let nvars = c.nvars();
        let mut p = Self::zero(nxvars, nvars);
        p.add_term(exps, c);
        p
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u16>, RingElem> {
        &self.terms
    }

    pub fn coeff(&self, exps: &[u16]) -> RingElem {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| RingElem::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u16>, c: RingElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nxvars, other.nxvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.nxvars, self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nxvars, other.nxvars);
        let mut out = Self::zero(self.nxvars, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        let mut out = Self::zero(self.nxvars, self.nvars);
        for (e, k) in &self.terms {
            out.add_term(e.clone(), k.mul(c));
        }
        out
    }

    /// Drops all terms with total x-degree above `max_deg`.
    pub fn truncate(&self, max_deg: u16) -> Self {
        let mut out = Self::zero(self.nxvars, self.nvars);
        for (e, c) in &self.terms {
            if e.iter().map(|&x| x as u32).sum::<u32>() <= max_deg as u32 {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    write!(f, "*x{v}")?;
                    if exp > 1 {
                        write!(f, "^{exp}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The power sum p_k of a single color in its finite variable set:
/// sum_m (x_m^(color))^k.
pub fn powersum_x(vars: &XVars, color: usize, k: u16, nvars: usize) -> XPoly {
    let mut out = XPoly::zero(vars.total(), nvars);
    for m in 0..vars.count(color) {
        let mut exps = vec![0u16; vars.total()];
        exps[vars.index(color, m)] = k;
        out.add_term(exps, RingElem::one(nvars));
    }
    out
}

/// Substitutes p_k^(i) = sum_m (x_m^(i))^k into a colored power-sum
/// polynomial. Color i of `f` maps to variable block i of `vars`.
pub fn to_xpoly(f: &ColoredPoly, vars: &XVars) -> XPoly {
    assert_eq!(f.rank(), vars.colors());
    let nvars = f.nvars();
    let mut out = XPoly::zero(vars.total(), nvars);
    for (mp, c) in f.terms() {
        let mut prod = XPoly::one(vars.total(), nvars);
        for (color, comp) in mp.components().iter().enumerate() {
            for &k in comp.parts() {
                prod = prod.mul(&powersum_x(vars, color, k as u16, nvars));
            }
        }
        out = out.add(&prod.scale(c));
    }
    out
}
