//! The colored Fock space: polynomials in power sums p_k^(i), one family of
//! generators per color i = 1..r.
//!
//! A monomial prod_i prod_j p_((mu_i)_j)^(i) is indexed by the multipartition
//! mu-bar, so a [`ColoredPoly`] is a map from multipartitions to coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::partition::{MultiPartition, Partition};
use crate::ring::{Assignment, RingElem, RingError, VAR_T1, VAR_T2};

use super::characters::{chi, z_factor};

/// An element of the colored power-sum algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPoly {
    rank: usize,
    nvars: usize,
    terms: BTreeMap<MultiPartition, RingElem>,
}

fn merge_keys(a: &MultiPartition, b: &MultiPartition) -> MultiPartition {
    debug_assert_eq!(a.rank(), b.rank());
    let components = a
        .components()
        .iter()
        .zip(b.components())
        .map(|(pa, pb)| {
            let mut parts: Vec<u32> = pa.parts().iter().chain(pb.parts()).copied().collect();
            parts.sort_unstable_by(|x, y| y.cmp(x));
            Partition::new(parts).unwrap()
        })
        .collect();
    MultiPartition::new(components)
}

/// Total number of parts of a multipartition.
pub fn total_parts(mp: &MultiPartition) -> u32 {
    mp.components().iter().map(|p| p.rows() as u32).sum()
}

/// z_mubar = prod_i z_(mu_i).
pub fn z_multi(mp: &MultiPartition) -> BigInt {
    mp.components().iter().map(z_factor).product()
}

impl ColoredPoly {
    pub fn zero(rank: usize, nvars: usize) -> Self {
        ColoredPoly {
            rank,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize, nvars: usize) -> Self {
        Self::monomial(MultiPartition::empty(rank), RingElem::one(nvars))
    }

    pub fn monomial(mp: MultiPartition, coeff: RingElem) -> Self {
        let rank = mp.rank();
        let nvars = coeff.nvars();
        let mut p = Self::zero(rank, nvars);
        p.add_term(mp, coeff);
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<MultiPartition, RingElem> {
        &self.terms
    }

    pub fn coeff(&self, mp: &MultiPartition) -> RingElem {
        self.terms
            .get(mp)
            .cloned()
            .unwrap_or_else(|| RingElem::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|mp| mp.size()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut sizes = self.terms.keys().map(|mp| mp.size());
        match sizes.next() {
            None => true,
            Some(first) => sizes.all(|s| s == first),
        }
    }

    pub fn add_term(&mut self, mp: MultiPartition, coeff: RingElem) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&coeff);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = self.clone();
        for (mp, c) in &other.terms {
            out.add_term(mp.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = Self::zero(self.rank, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(merge_keys(ma, mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank, self.nvars);
        }
        self.map_coeffs(|k| k.mul(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&RingElem) -> RingElem) -> Self {
        let mut out = Self::zero(self.rank, self.nvars);
        for (mp, c) in &self.terms {
            out.add_term(mp.clone(), f(c));
        }
        out
    }

    /// Substitutes p_k^(i) -> c * p_k^(i) for all k, i.
    pub fn scale_powersums(&self, c: &RingElem) -> Self {
        let mut out = Self::zero(self.rank, self.nvars);
        for (mp, coeff) in &self.terms {
            out.add_term(mp.clone(), coeff.mul(&c.pow(total_parts(mp))));
        }
        out
    }

    /// Re-embeds into a Fock space with more colors, shifting every color up
    /// by `offset`. Coefficients are untouched.
    pub fn embed(&self, total_rank: usize, offset: usize) -> Self {
        assert!(offset + self.rank <= total_rank);
        let mut out = Self::zero(total_rank, self.nvars);
        for (mp, c) in &self.terms {
            let mut components = vec![Partition::empty(); total_rank];
            for (i, p) in mp.components().iter().enumerate() {
                components[offset + i] = p.clone();
            }
            out.add_term(MultiPartition::new(components), c.clone());
        }
        out
    }

    /// Relabels colors i -> r+1-i; an involution. Coefficients are untouched.
    pub fn color_reverse(&self) -> Self {
        let mut out = Self::zero(self.rank, self.nvars);
        for (mp, c) in &self.terms {
            out.add_term(mp.reverse(), c.clone());
        }
        out
    }

    /// Partial derivative with respect to p_k^(color) (0-based color).
    pub fn derivative(&self, color: usize, k: u32) -> Self {
        let mut out = Self::zero(self.rank, self.nvars);
        for (mp, c) in &self.terms {
            let comp = mp.component(color);
            let mult = comp.parts().iter().filter(|&&p| p == k).count() as i64;
            if mult == 0 {
                continue;
            }
            let mut parts = comp.parts().to_vec();
            let pos = parts.iter().position(|&p| p == k).unwrap();
            parts.remove(pos);
            let mut components = mp.components().to_vec();
            components[color] = Partition::new(parts).unwrap();
            out.add_term(
                MultiPartition::new(components),
                c.mul(&RingElem::from_int(self.nvars, mult)),
            );
        }
        out
    }

    /// Exact evaluation of all coefficients at an assignment; the result has
    /// constant coefficients in the same ring.
    pub fn evaluate_coeffs(&self, a: &Assignment) -> Result<Self, RingError> {
        let mut out = Self::zero(self.rank, self.nvars);
        for (mp, c) in &self.terms {
            out.add_term(mp.clone(), RingElem::from_rational(self.nvars, c.evaluate(a)?));
        }
        Ok(out)
    }
}

impl fmt::Display for ColoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mp, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*p_{{{mp}}}")?;
        }
        Ok(())
    }
}

/// The Schur polynomial s_lambda in a single color of a rank-r Fock space:
/// s_lambda = sum_mu chi^lambda(mu) p_mu / z_mu.
pub fn schur(lambda: &Partition, color: usize, rank: usize, nvars: usize) -> ColoredPoly {
    let n = lambda.size();
    let mut out = ColoredPoly::zero(rank, nvars);
    for mu in Partition::all_of(n) {
        let ch = chi(lambda, &mu);
        if ch == 0 {
            continue;
        }
        let coeff = BigRational::new(BigInt::from(ch), z_factor(&mu));
        let mut components = vec![Partition::empty(); rank];
        components[color] = mu;
        out.add_term(
            MultiPartition::new(components),
            RingElem::from_rational(nvars, coeff),
        );
    }
    out
}

/// s_lbar = s_(lambda_1)(p^(1)) ... s_(lambda_r)(p^(r)).
pub fn colored_schur(mp: &MultiPartition, nvars: usize) -> ColoredPoly {
    let rank = mp.rank();
    let mut out = ColoredPoly::one(rank, nvars);
    for (color, lambda) in mp.components().iter().enumerate() {
        if lambda.size() > 0 {
            out = out.mul(&schur(lambda, color, rank, nvars));
        }
    }
    out
}

/// Dual Schur basis: s*_lbar(p_k) = s_lbar(-t2/t1 p_k).
pub fn dual_schur(mp: &MultiPartition, nvars: usize) -> ColoredPoly {
    let ratio = RingElem::var(nvars, VAR_T2)
        .neg()
        .div(&RingElem::var(nvars, VAR_T1))
        .unwrap();
    colored_schur(mp, nvars).scale_powersums(&ratio)
}

/// (-t1/t2)^e as a ring element.
fn minus_t1_over_t2(nvars: usize, e: u32) -> RingElem {
    RingElem::var(nvars, VAR_T1)
        .neg()
        .div(&RingElem::var(nvars, VAR_T2))
        .unwrap()
        .pow(e)
}

/// The Fock-space scalar product, on the monomial formula
/// <p_mubar, p_nubar> = delta * z_mubar * (-t1/t2)^(total parts).
pub fn scalar_product(f: &ColoredPoly, g: &ColoredPoly) -> RingElem {
    assert_eq!(f.rank(), g.rank(), "rank mismatch in scalar product");
    let nvars = f.nvars();
    let mut acc = RingElem::zero(nvars);
    for (mp, cf) in f.terms() {
        let cg = match g.terms().get(mp) {
            Some(c) => c,
            None => continue,
        };
        let z = RingElem::from_rational(nvars, BigRational::from(z_multi(mp)));
        acc = acc.add(
            &cf.mul(cg)
                .mul(&z)
                .mul(&minus_t1_over_t2(nvars, total_parts(mp))),
        );
    }
    acc
}

/// The scalar product in its differential-operator form: substitute
/// p_n^(i) -> (-n t1/t2) d/dp_n^(i) in f, apply to g, set all p = 0.
/// Retained as an independent cross-check of [`scalar_product`].
pub fn scalar_product_diff(f: &ColoredPoly, g: &ColoredPoly) -> RingElem {
    assert_eq!(f.rank(), g.rank(), "rank mismatch in scalar product");
    let nvars = f.nvars();
    let mut acc = RingElem::zero(nvars);
    for (mp, cf) in f.terms() {
        let mut h = g.clone();
        for (color, comp) in mp.components().iter().enumerate() {
            for &k in comp.parts() {
                h = h
                    .derivative(color, k)
                    .scale(&minus_t1_over_t2(nvars, 1).mul(&RingElem::from_int(nvars, k as i64)));
            }
        }
        acc = acc.add(&cf.mul(&h.coeff(&MultiPartition::empty(f.rank()))));
    }
    acc
}

/// Truncation of the Cauchy kernel
/// exp(-t2/t1 sum_n (p_n^(1) q_n^(1) + ... + p_n^(r) q_n^(r)) / n)
/// to total p-degree <= max_deg. The result lives in a rank-2r Fock space:
/// colors 1..r are the p's, colors r+1..2r the q's.
pub fn cauchy_kernel(max_deg: u32, rank: usize, nvars: usize) -> ColoredPoly {
    let ratio = RingElem::var(nvars, VAR_T2)
        .neg()
        .div(&RingElem::var(nvars, VAR_T1))
        .unwrap();
    let mut lin = ColoredPoly::zero(2 * rank, nvars);
    for n in 1..=max_deg {
        for i in 0..rank {
            let mut components = vec![Partition::empty(); 2 * rank];
            components[i] = Partition::new(vec![n]).unwrap();
            components[rank + i] = Partition::new(vec![n]).unwrap();
            let c = ratio.mul(&RingElem::from_rational(
                nvars,
                BigRational::new(BigInt::one(), BigInt::from(n)),
            ));
            lin.add_term(MultiPartition::new(components), c);
        }
    }
    let mut out = ColoredPoly::one(2 * rank, nvars);
    let mut power = ColoredPoly::one(2 * rank, nvars);
    let mut factorial = BigInt::one();
    for k in 1..=max_deg {
        power = power.mul(&lin);
        // Drop monomials beyond the truncation degree (p- and q-degree agree).
        power = ColoredPoly {
            rank: power.rank,
            nvars,
            terms: power
                .terms
                .into_iter()
                .filter(|(mp, _)| mp.size() <= 2 * max_deg)
                .collect(),
        };
        factorial *= BigInt::from(k);
        let inv = RingElem::from_rational(nvars, BigRational::new(BigInt::one(), factorial.clone()));
        out = out.add(&power.scale(&inv));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_elem;

    fn mp(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    fn elem(s: &str, rank: usize) -> RingElem {
        parse_elem(s, rank).unwrap()
    }

    const NV1: usize = 3; // rank 1

    #[test]
    fn classical_schur_in_power_sums() {
        // s_[1] = p1
        let s1 = schur(&"[1]".parse().unwrap(), 0, 1, NV1);
        assert_eq!(s1.coeff(&mp("[1]")), RingElem::one(NV1));
        // s_[2] = p1^2/2 + p2/2, s_[1,1] = p1^2/2 - p2/2
        let s2 = schur(&"[2]".parse().unwrap(), 0, 1, NV1);
        assert_eq!(s2.coeff(&mp("[1,1]")), elem("1/2", 1));
        assert_eq!(s2.coeff(&mp("[2]")), elem("1/2", 1));
        let s11 = schur(&"[1,1]".parse().unwrap(), 0, 1, NV1);
        assert_eq!(s11.coeff(&mp("[1,1]")), elem("1/2", 1));
        assert_eq!(s11.coeff(&mp("[2]")), elem("-1/2", 1));
        // s_[2,1] = p1^3/3 - p3/3
        let s21 = schur(&"[2,1]".parse().unwrap(), 0, 1, NV1);
        assert_eq!(s21.coeff(&mp("[1,1,1]")), elem("1/3", 1));
        assert_eq!(s21.coeff(&mp("[3]")), elem("-1/3", 1));
        assert!(s21.coeff(&mp("[2,1]")).is_zero());
    }

    #[test]
    fn colored_schur_products() {
        // [emptyset, ..., emptyset] -> 1
        let one = colored_schur(&mp("[],[]"), 4);
        assert_eq!(one.coeff(&mp("[],[]")), RingElem::one(4));
        assert_eq!(one.terms().len(), 1);
        // [[1],[1]] -> p1^(1) p1^(2)
        let s = colored_schur(&mp("[1],[1]"), 4);
        assert_eq!(s.coeff(&mp("[1],[1]")), RingElem::one(4));
        assert_eq!(s.terms().len(), 1);
        // [[2], emptyset] -> (p1^(1))^2/2 + p2^(1)/2
        let s = colored_schur(&mp("[2],[]"), 4);
        assert_eq!(s.coeff(&mp("[1,1],[]")), elem("1/2", 2));
        assert_eq!(s.coeff(&mp("[2],[]")), elem("1/2", 2));
    }

    #[test]
    fn dual_schur_examples() {
        // s*_[1] = (-t2/t1) p1
        let d = dual_schur(&mp("[1]"), NV1);
        assert_eq!(d.coeff(&mp("[1]")), elem("-t2/t1", 1));
        // s*_[2] = (t2/t1)^2 p1^2/2 + (-t2/t1) p2/2
        let d = dual_schur(&mp("[2]"), NV1);
        assert_eq!(d.coeff(&mp("[1,1]")), elem("t2^2/(2*t1^2)", 1));
        assert_eq!(d.coeff(&mp("[2]")), elem("-t2/(2*t1)", 1));
    }

    #[test]
    fn scalar_product_on_power_sums() {
        let p1 = ColoredPoly::monomial(mp("[1]"), RingElem::one(NV1));
        let p2 = ColoredPoly::monomial(mp("[2]"), RingElem::one(NV1));
        let p11 = ColoredPoly::monomial(mp("[1,1]"), RingElem::one(NV1));
        assert_eq!(scalar_product(&p1, &p1), elem("-t1/t2", 1));
        assert_eq!(scalar_product(&p2, &p2), elem("-2*t1/t2", 1));
        assert_eq!(scalar_product(&p11, &p11), elem("2*t1^2/t2^2", 1));
        assert!(scalar_product(&p2, &p11).is_zero());
    }

    #[test]
    fn schur_dual_schur_orthonormal() {
        // <s_lambda, s*_mu> = delta, |lambda|,|mu| <= 4 (rank 1) and
        // multipartitions of size <= 3 at rank 2.
        for n in 0..=4u32 {
            for a in Partition::all_of(n) {
                for m in 0..=4u32 {
                    for b in Partition::all_of(m) {
                        let sa = schur(&a, 0, 1, NV1);
                        let sb = dual_schur(&MultiPartition::new(vec![b.clone()]), NV1);
                        let got = scalar_product(&sa, &sb);
                        let expect = if a == b && n == m {
                            RingElem::one(NV1)
                        } else {
                            RingElem::zero(NV1)
                        };
                        assert_eq!(got, expect, "<s_{a}, s*_{b}>");
                    }
                }
            }
        }
        for n in 0..=3u32 {
            for a in MultiPartition::all_of(2, n) {
                for b in MultiPartition::all_of(2, n) {
                    let got = scalar_product(&colored_schur(&a, 4), &dual_schur(&b, 4));
                    let expect = if a == b {
                        RingElem::one(4)
                    } else {
                        RingElem::zero(4)
                    };
                    assert_eq!(got, expect, "<s_{a}, s*_{b}>");
                }
            }
        }
    }

    #[test]
    fn diff_form_agrees_with_monomial_form() {
        let f = colored_schur(&mp("[2],[1]"), 4);
        let g = dual_schur(&mp("[2],[1]"), 4).add(&colored_schur(&mp("[1,1],[1]"), 4));
        assert_eq!(scalar_product(&f, &g), scalar_product_diff(&f, &g));
        let h = colored_schur(&mp("[3],[]"), 4);
        assert_eq!(scalar_product(&f, &h), scalar_product_diff(&f, &h));
    }

    #[test]
    fn scale_and_reverse() {
        let f = colored_schur(&mp("[2],[1]"), 4);
        let c = elem("u1 - t2", 2);
        // scale(p1 p2, c) has c^2 on a two-part monomial.
        let scaled = f.scale_powersums(&c);
        assert_eq!(scaled.coeff(&mp("[2],[1]")), f.coeff(&mp("[2],[1]")).mul(&c.pow(2)));
        assert_eq!(f.scale_powersums(&RingElem::one(4)), f);
        // Color reversal is an involution; trivial at rank 1.
        assert_eq!(f.color_reverse().color_reverse(), f);
        let g = schur(&"[2,1]".parse().unwrap(), 0, 1, NV1);
        assert_eq!(g.color_reverse(), g);
        let p1c1 = ColoredPoly::monomial(mp("[1],[]"), RingElem::one(4));
        assert_eq!(p1c1.color_reverse().coeff(&mp("[],[1]")), RingElem::one(4));
    }

    #[test]
    fn cauchy_kernel_low_degrees() {
        let k = cauchy_kernel(2, 1, NV1);
        // degree 0
        assert_eq!(k.coeff(&mp("[],[]")), RingElem::one(NV1));
        // degree 1: (-t2/t1) p1 q1
        assert_eq!(k.coeff(&mp("[1],[1]")), elem("-t2/t1", 1));
        // degree 2: (t2^2/t1^2)/2 p1^2 q1^2 + (-t2/t1)/2 p2 q2
        assert_eq!(k.coeff(&mp("[1,1],[1,1]")), elem("t2^2/(2*t1^2)", 1));
        assert_eq!(k.coeff(&mp("[2],[2]")), elem("-t2/(2*t1)", 1));
    }

    #[test]
    fn grading_multiplicative() {
        let f = colored_schur(&mp("[2],[]"), 4);
        let g = colored_schur(&mp("[1],[1]"), 4);
        assert!(f.is_homogeneous() && g.is_homogeneous());
        let fg = f.mul(&g);
        assert!(fg.is_homogeneous());
        assert_eq!(fg.degree(), f.degree() + g.degree());
    }
}
