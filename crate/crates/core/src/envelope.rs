//! Transition matrices between the Jack and Schur bases.
//!
//! The four matrices T, T*, U, U* are permutation sums: boxes of one diagram
//! (the rho side) fix an ordered list of positions, boxes of the other (the
//! phi side) are distributed over those positions by a permutation, and each
//! permutation contributes a product of linear forms in t1, t2, u1..ur. The
//! sign pattern of the factors is dictated by a chamber, and coincident
//! rho-values (same component and content) contribute a symmetry factor.
//!
//! Every linear form that appears has integer coordinates in (t1, t2, u), so
//! the engine works with a compact [`LinForm`] representation and only
//! expands to polynomials (symbolic mode) or rational numbers (specialized
//! mode) when accumulating.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::partition::{boxes, BoxPos, MultiPartition, Partition};
use crate::ring::{nvars_for_rank, var_u, Assignment, MPoly, RingElem, RingError, VAR_T1, VAR_T2};
use crate::symfunc::{colored_schur, dual_schur, ColoredPoly};

/// Which transition matrix to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// J = sum T s: straight Jack in straight Schur.
    T,
    /// J* = sum T* s*: dual Jack in dual Schur.
    TStar,
    /// s = sum U J / E: straight Schur in normalized straight Jack.
    U,
    /// s* = sum U* J* / E: dual Schur in normalized dual Jack.
    UStar,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::T => "T",
            Kind::TStar => "Tstar",
            Kind::U => "U",
            Kind::UStar => "Ustar",
        }
    }
}

/// Which family of Jack polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    J,
    JStar,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::J => "J",
            Variant::JStar => "Jstar",
        }
    }
}

/// Computation mode: full symbolic coefficients, or exact rational values at
/// a (generic) assignment of the parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Specialized(Assignment),
}

/// Engine switches; both default to on. Turning them off reproduces the
/// naive double-checkable enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOpts {
    /// Abandon a partial assignment as soon as a numerator factor vanishes
    /// identically (the whole subtree contributes 0).
    pub prune: bool,
    /// Enumerate one representative per coset of the stabilizer of the
    /// rho-values instead of all permutations, dropping the 1/z prefactor.
    /// Requires equal-rho position classes to be consecutive, which the
    /// canonical box order guarantees.
    pub symmetry_quotient: bool,
}

impl Default for EngineOpts {
    fn default() -> Self {
        EngineOpts {
            prune: true,
            symmetry_quotient: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Chamber {
    Plus,
    Minus,
}

/// An integer linear form a*t1 + b*t2 + sum_k c_k u_k.
#[derive(Debug, Clone, PartialEq, Eq)]
struct LinForm {
    t1: i64,
    t2: i64,
    u: Vec<i64>,
}

impl LinForm {
    fn zero(rank: usize) -> Self {
        LinForm {
            t1: 0,
            t2: 0,
            u: vec![0; rank],
        }
    }

    fn t1_unit(rank: usize) -> Self {
        LinForm {
            t1: 1,
            ..Self::zero(rank)
        }
    }

    fn u_unit(rank: usize, d: usize) -> Self {
        let mut f = Self::zero(rank);
        f.u[d] = 1;
        f
    }

    fn is_zero(&self) -> bool {
        self.t1 == 0 && self.t2 == 0 && self.u.iter().all(|&c| c == 0)
    }

    fn add(&self, other: &Self) -> Self {
        LinForm {
            t1: self.t1 + other.t1,
            t2: self.t2 + other.t2,
            u: self.u.iter().zip(&other.u).map(|(a, b)| a + b).collect(),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        LinForm {
            t1: self.t1 - other.t1,
            t2: self.t2 - other.t2,
            u: self.u.iter().zip(&other.u).map(|(a, b)| a - b).collect(),
        }
    }

    /// hbar - self, with hbar = t1 + t2.
    fn hbar_minus(&self) -> Self {
        LinForm {
            t1: 1 - self.t1,
            t2: 1 - self.t2,
            u: self.u.iter().map(|&c| -c).collect(),
        }
    }

    /// self + hbar.
    fn plus_hbar(&self) -> Self {
        LinForm {
            t1: self.t1 + 1,
            t2: self.t2 + 1,
            u: self.u.clone(),
        }
    }

    fn to_mpoly(&self, nvars: usize) -> MPoly {
        let mut p = MPoly::zero(nvars);
        if self.t1 != 0 {
            p = p.add(&MPoly::var(nvars, VAR_T1).mul_scalar(&BigInt::from(self.t1)));
        }
        if self.t2 != 0 {
            p = p.add(&MPoly::var(nvars, VAR_T2).mul_scalar(&BigInt::from(self.t2)));
        }
        for (k, &c) in self.u.iter().enumerate() {
            if c != 0 {
                p = p.add(&MPoly::var(nvars, var_u(k + 1)).mul_scalar(&BigInt::from(c)));
            }
        }
        p
    }

    /// The form over the reduced variable set (t1, t2, u_1 - u_r, ...,
    /// u_{r-1} - u_r). Every engine factor is a difference of box
    /// characters, so its u-coefficients sum to zero and it lives in the
    /// span of the u-differences; dropping the redundant coordinate keeps
    /// the symbolic partial products one variable smaller.
    fn to_mpoly_reduced(&self, nred: usize) -> MPoly {
        debug_assert_eq!(self.u.iter().sum::<i64>(), 0);
        let mut p = MPoly::zero(nred);
        if self.t1 != 0 {
            p = p.add(&MPoly::var(nred, VAR_T1).mul_scalar(&BigInt::from(self.t1)));
        }
        if self.t2 != 0 {
            p = p.add(&MPoly::var(nred, VAR_T2).mul_scalar(&BigInt::from(self.t2)));
        }
        for (k, &c) in self.u[..self.u.len() - 1].iter().enumerate() {
            if c != 0 {
                p = p.add(&MPoly::var(nred, 2 + k).mul_scalar(&BigInt::from(c)));
            }
        }
        p
    }

    fn eval(&self, a: &Assignment) -> BigRational {
        let mut acc = &a.values[0] * BigRational::from(BigInt::from(self.t1))
            + &a.values[1] * BigRational::from(BigInt::from(self.t2));
        for (k, &c) in self.u.iter().enumerate() {
            if c != 0 {
                acc += &a.values[2 + k] * BigRational::from(BigInt::from(c));
            }
        }
        acc
    }
}

/// phi of a box: u_k + x t1 + y t2.
fn phi_form(b: &BoxPos, rank: usize) -> LinForm {
    let mut f = LinForm::u_unit(rank, b.comp);
    f.t1 = b.x as i64;
    f.t2 = b.y as i64;
    f
}

/// rho of a box: its projection to t1 + t2 = 0, namely u_k + (x - y) t1.
fn rho_form(b: &BoxPos, rank: usize) -> LinForm {
    let mut f = LinForm::u_unit(rank, b.comp);
    f.t1 = b.content();
    f
}

/// Sign of a linear form in (u, t1) on a chamber. On the plus chamber
/// (u1 >> u2 >> ... >> ur >> t1 > 0, differences large against t1) the sign
/// is that of the lowest-index nonzero u coordinate, falling back to the t1
/// coordinate; the minus chamber is its negation. Only forms built from rho
/// values and u's arrive here, so the t2 coordinate is always zero and the u
/// coordinates sum to zero (differences of characters).
fn chamber_sign(chamber: Chamber, f: &LinForm) -> i8 {
    debug_assert_eq!(f.t2, 0);
    debug_assert_eq!(f.u.iter().sum::<i64>(), 0);
    let base = match f.u.iter().find(|&&c| c != 0) {
        Some(&c) => c.signum() as i8,
        None => f.t1.signum() as i8,
    };
    match chamber {
        Chamber::Plus => base,
        Chamber::Minus => -base,
    }
}

/// Shenfeld's star: (x)^{*a} is x for a > 0, hbar - x for a < 0, and the
/// empty factor (None) for a = 0.
fn star(x: LinForm, a: i8) -> Option<LinForm> {
    match a.cmp(&0) {
        std::cmp::Ordering::Greater => Some(x),
        std::cmp::Ordering::Less => Some(x.hbar_minus()),
        std::cmp::Ordering::Equal => None,
    }
}

/// Accumulates permutation terms, either as symbolic rational functions or
/// as exact rational numbers at an assignment.
enum Accum<'a> {
    Sym {
        /// Reduced variable count: t1, t2, and the rank - 1 u-differences.
        nred: usize,
        num_stack: Vec<MPoly>,
        den: Vec<MPoly>,
        den_marks: Vec<usize>,
        /// Numerator sums keyed by sorted denominator factor list: terms
        /// sharing a denominator merge with a cheap polynomial add, and the
        /// expensive rational-function adds happen once per distinct
        /// denominator in `finish`.
        groups: BTreeMap<Vec<MPoly>, MPoly>,
    },
    Spec {
        assignment: &'a Assignment,
        num_stack: Vec<BigRational>,
        den_stack: Vec<BigRational>,
        total: BigRational,
    },
}

impl<'a> Accum<'a> {
    fn new(rank: usize, mode: &'a Mode) -> Self {
        match mode {
            Mode::Symbolic => Accum::Sym {
                nred: rank + 1,
                num_stack: vec![MPoly::one(rank + 1)],
                den: Vec::new(),
                den_marks: Vec::new(),
                groups: BTreeMap::new(),
            },
            Mode::Specialized(a) => Accum::Spec {
                assignment: a,
                num_stack: vec![BigRational::one()],
                den_stack: vec![BigRational::one()],
                total: BigRational::zero(),
            },
        }
    }

    /// Extends the partial term by one position's worth of factors. When
    /// `dead` the term is already known to vanish and only stack alignment
    /// is maintained.
    fn push(&mut self, nforms: &[LinForm], dforms: &[LinForm], dead: bool) -> Result<(), RingError> {
        match self {
            Accum::Sym {
                nred,
                num_stack,
                den,
                den_marks,
                ..
            } => {
                den_marks.push(den.len());
                let last = num_stack.last().unwrap();
                let p = if dead || nforms.is_empty() {
                    last.clone()
                } else {
                    let mut p = last.mul(&nforms[0].to_mpoly_reduced(*nred));
                    for f in &nforms[1..] {
                        p = p.mul(&f.to_mpoly_reduced(*nred));
                    }
                    p
                };
                if !dead {
                    for f in dforms {
                        if !f.is_zero() {
                            den.push(f.to_mpoly_reduced(*nred));
                        }
                    }
                }
                num_stack.push(p);
                Ok(())
            }
            Accum::Spec {
                assignment,
                num_stack,
                den_stack,
                ..
            } => {
                let mut nv = num_stack.last().unwrap().clone();
                let mut dv = den_stack.last().unwrap().clone();
                if !dead {
                    for f in nforms {
                        nv *= f.eval(assignment);
                    }
                    for f in dforms {
                        if f.is_zero() {
                            continue; // structurally zero; leaf() is never reached
                        }
                        let v = f.eval(assignment);
                        if v.is_zero() {
                            return Err(RingError::NonGenericAssignment);
                        }
                        dv *= v;
                    }
                }
                num_stack.push(nv);
                den_stack.push(dv);
                Ok(())
            }
        }
    }

    fn pop(&mut self) {
        match self {
            Accum::Sym {
                num_stack,
                den,
                den_marks,
                ..
            } => {
                num_stack.pop();
                den.truncate(den_marks.pop().unwrap());
            }
            Accum::Spec {
                num_stack,
                den_stack,
                ..
            } => {
                num_stack.pop();
                den_stack.pop();
            }
        }
    }

    fn leaf(&mut self) {
        match self {
            Accum::Sym {
                num_stack,
                den,
                groups,
                ..
            } => {
                let mut key = den.clone();
                key.sort_unstable();
                let num = num_stack.last().unwrap();
                groups
                    .entry(key)
                    .and_modify(|acc| *acc = acc.add(num))
                    .or_insert_with(|| num.clone());
            }
            Accum::Spec {
                num_stack,
                den_stack,
                total,
                ..
            } => {
                *total += num_stack.last().unwrap() / den_stack.last().unwrap();
            }
        }
    }

    fn finish(self, nvars: usize, z: u64) -> RingElem {
        let zinv = BigRational::new(BigInt::one(), BigInt::from(z));
        match self {
            Accum::Sym { nred, groups, .. } => {
                // Balanced pairwise reduction: early normalization keeps the
                // intermediates small (entries collapse to low degree), and
                // small+small adds beat folding into one growing total.
                let mut terms: Vec<RingElem> = groups
                    .into_iter()
                    .map(|(den, num)| RingElem::fraction(nred, BigRational::one(), num, den))
                    .collect();
                while terms.len() > 1 {
                    let mut next = Vec::with_capacity(terms.len() / 2 + 1);
                    let mut it = terms.into_iter();
                    while let Some(a) = it.next() {
                        match it.next() {
                            Some(b) => next.push(a.add(&b)),
                            None => next.push(a),
                        }
                    }
                    terms = next;
                }
                let total = terms.pop().unwrap_or_else(|| RingElem::zero(nred));
                let total = total.mul(&RingElem::from_rational(nred, zinv));
                // Back to the full variable set: the k-th u-difference is
                // u_{k+1} - u_r. Entries are small by now, so expanding the
                // substituted powers is cheap.
                let rank = nred - 1;
                let mut images: Vec<MPoly> = vec![
                    MPoly::var(nvars, VAR_T1),
                    MPoly::var(nvars, VAR_T2),
                ];
                for k in 0..rank - 1 {
                    images.push(
                        MPoly::var(nvars, var_u(k + 1)).sub(&MPoly::var(nvars, var_u(rank))),
                    );
                }
                let num = total.num().substitute(&images);
                let den: Vec<MPoly> = total
                    .den_factors()
                    .iter()
                    .flat_map(|(f, m)| {
                        std::iter::repeat(f.substitute(&images)).take(*m as usize)
                    })
                    .collect();
                RingElem::fraction(nvars, total.coeff().clone(), num, den)
            }
            Accum::Spec { total, .. } => RingElem::from_rational(nvars, total * zinv),
        }
    }
}

struct Engine {
    n: usize,
    rank: usize,
    phi: Vec<LinForm>,
    rho: Vec<LinForm>,
    /// pair_sign[i][j]: chamber sign of rho_j - rho_i + t1, the exponent of
    /// the numerator factor phi_{s(j)} - phi_{s(i)} + t1.
    pair_sign: Vec<Vec<i8>>,
    /// color_sign[d][a]: chamber sign of u_d - rho_a.
    color_sign: Vec<Vec<i8>>,
    class_id: Vec<usize>,
    denom_desc: bool,
    opts: EngineOpts,
    assign: Vec<usize>,
    used: Vec<bool>,
}

impl Engine {
    fn go(&mut self, depth: usize, dead: bool, zero_den: u32, acc: &mut Accum) -> Result<(), RingError> {
        if depth == self.n {
            if !dead {
                assert_eq!(
                    zero_den, 0,
                    "a denominator factor vanishes identically on a term with nonzero numerator"
                );
                acc.leaf();
            }
            return Ok(());
        }
        for p in 0..self.n {
            if self.used[p] {
                continue;
            }
            // Coset representatives: phi indices increase along each run of
            // equal rho positions.
            if self.opts.symmetry_quotient
                && depth > 0
                && self.class_id[depth] == self.class_id[depth - 1]
                && p < self.assign[depth - 1]
            {
                continue;
            }
            let mut nforms: Vec<LinForm> = Vec::with_capacity(2 * depth + self.rank + 1);
            let mut dforms: Vec<LinForm> = Vec::with_capacity(2 * depth);
            // Diagonal pair (a, a): the form is plain t1.
            if let Some(f) = star(LinForm::t1_unit(self.rank), self.pair_sign[depth][depth]) {
                nforms.push(f);
            }
            for b in 0..depth {
                let q = self.assign[b];
                let diff = self.phi[p].sub(&self.phi[q]); // phi at new position minus phi at b
                if let Some(f) = star(
                    diff.add(&LinForm::t1_unit(self.rank)),
                    self.pair_sign[b][depth],
                ) {
                    nforms.push(f);
                }
                if let Some(f) = star(
                    LinForm::t1_unit(self.rank).sub(&diff),
                    self.pair_sign[depth][b],
                ) {
                    nforms.push(f);
                }
                if self.rho[depth] != self.rho[b] {
                    let d = if self.denom_desc {
                        diff.clone()
                    } else {
                        LinForm::zero(self.rank).sub(&diff)
                    };
                    dforms.push(d.plus_hbar());
                    dforms.push(d);
                }
            }
            for d in 0..self.rank {
                if let Some(f) = star(
                    LinForm::u_unit(self.rank, d).sub(&self.phi[p]),
                    self.color_sign[d][depth],
                ) {
                    nforms.push(f);
                }
            }
            let new_zero = nforms.iter().any(|f| f.is_zero());
            if new_zero && self.opts.prune {
                continue;
            }
            let now_dead = dead || new_zero;
            let zd = zero_den + dforms.iter().filter(|f| f.is_zero()).count() as u32;
            acc.push(&nforms, &dforms, now_dead)?;
            self.used[p] = true;
            self.assign.push(p);
            let r = self.go(depth + 1, now_dead, zd, acc);
            self.assign.pop();
            self.used[p] = false;
            acc.pop();
            r?;
        }
        Ok(())
    }
}

/// One pre-evaluated factor of the specialized permutation sum, at the
/// integer-scaled assignment.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Fac {
    /// Star exponent zero: the factor is an empty product.
    Absent,
    /// The form vanishes identically (independent of the assignment).
    StructuralZero,
    /// Integer value of the form at the scaled assignment.
    Val(i64),
}

/// Specialized-mode engine working over pre-evaluated integer factor tables.
///
/// The assignment is scaled by the lcm `l` of its denominators so every
/// linear form takes an integer value; partial products stay raw `BigInt`s
/// (one gcd per leaf instead of one per factor), with the net power of `l`
/// tracked per branch. Mirrors `Engine::go` exactly, but assumes
/// `opts.prune` (structurally dead branches are skipped, never carried).
struct SpecEngine {
    n: usize,
    rank: usize,
    pair_sign: Vec<Vec<i8>>,
    color_sign: Vec<Vec<i8>>,
    class_id: Vec<usize>,
    opts: EngineOpts,
    /// Indexed [q * n + p]: numerator factor for the pair (earlier box q,
    /// new box p) under positive / negative star exponent.
    plus_pos: Vec<Fac>,
    plus_neg: Vec<Fac>,
    minus_pos: Vec<Fac>,
    minus_neg: Vec<Fac>,
    /// Denominator factors for the pair, already oriented by `denom_desc`.
    den0: Vec<Fac>,
    denh: Vec<Fac>,
    /// Color factors indexed [d * n + p].
    col_pos: Vec<Fac>,
    col_neg: Vec<Fac>,
    /// star(t1, sign) by sign + 1.
    diag: [Fac; 3],
    scale: BigInt,
    assign: Vec<usize>,
    used: Vec<bool>,
    num_stack: Vec<BigInt>,
    den_stack: Vec<BigInt>,
    /// Net count of scaled factors (numerator minus denominator) per depth.
    pow_stack: Vec<i64>,
    total: BigRational,
}

/// Multiplies a small factor into an i128 chunk, spilling to a BigInt
/// accumulator on overflow.
fn mul_small(chunk: &mut i128, spill: &mut Option<BigInt>, v: i64) {
    match chunk.checked_mul(v as i128) {
        Some(c) => *chunk = c,
        None => {
            let b = spill.get_or_insert_with(BigInt::one);
            *b *= BigInt::from(*chunk);
            *chunk = v as i128;
        }
    }
}

impl SpecEngine {
    fn go(&mut self, depth: usize, zero_den: u32) -> Result<(), RingError> {
        if depth == self.n {
            assert_eq!(
                zero_den, 0,
                "a denominator factor vanishes identically on a term with nonzero numerator"
            );
            let e = *self.pow_stack.last().unwrap();
            let mut num = self.num_stack.last().unwrap().clone();
            let mut den = self.den_stack.last().unwrap().clone();
            if e >= 0 {
                den *= self.scale.pow(e as u32);
            } else {
                num *= self.scale.pow((-e) as u32);
            }
            self.total += BigRational::new(num, den);
            return Ok(());
        }
        'candidates: for p in 0..self.n {
            if self.used[p] {
                continue;
            }
            if self.opts.symmetry_quotient
                && depth > 0
                && self.class_id[depth] == self.class_id[depth - 1]
                && p < self.assign[depth - 1]
            {
                continue;
            }
            let mut cn: i128 = 1;
            let mut cd: i128 = 1;
            let mut spill_n: Option<BigInt> = None;
            let mut spill_d: Option<BigInt> = None;
            let mut pow: i64 = 0;
            match self.diag[(self.pair_sign[depth][depth] + 1) as usize] {
                Fac::Absent => {}
                Fac::StructuralZero => continue,
                Fac::Val(v) => {
                    mul_small(&mut cn, &mut spill_n, v);
                    pow += 1;
                }
            }
            for b in 0..depth {
                let qp = self.assign[b] * self.n + p;
                let pair_facs = [
                    match self.pair_sign[b][depth].cmp(&0) {
                        std::cmp::Ordering::Greater => self.plus_pos[qp],
                        std::cmp::Ordering::Less => self.plus_neg[qp],
                        std::cmp::Ordering::Equal => Fac::Absent,
                    },
                    match self.pair_sign[depth][b].cmp(&0) {
                        std::cmp::Ordering::Greater => self.minus_pos[qp],
                        std::cmp::Ordering::Less => self.minus_neg[qp],
                        std::cmp::Ordering::Equal => Fac::Absent,
                    },
                ];
                for fac in pair_facs {
                    match fac {
                        Fac::Absent => {}
                        Fac::StructuralZero => continue 'candidates,
                        Fac::Val(v) => {
                            mul_small(&mut cn, &mut spill_n, v);
                            pow += 1;
                        }
                    }
                }
            }
            for d in 0..self.rank {
                let table = match self.color_sign[d][depth].cmp(&0) {
                    std::cmp::Ordering::Greater => &self.col_pos,
                    std::cmp::Ordering::Less => &self.col_neg,
                    std::cmp::Ordering::Equal => continue,
                };
                match table[d * self.n + p] {
                    Fac::Absent => {}
                    Fac::StructuralZero => continue 'candidates,
                    Fac::Val(v) => {
                        mul_small(&mut cn, &mut spill_n, v);
                        pow += 1;
                    }
                }
            }
            // Denominator factors only after the prune decision, matching
            // the generic engine's order of pole detection. A structurally
            // vanishing factor (diagonal-neighbor boxes) is counted; such a
            // branch must die on a later numerator zero before the leaf.
            let mut zd = zero_den;
            for b in 0..depth {
                if self.class_id[depth] == self.class_id[b] {
                    continue;
                }
                let qp = self.assign[b] * self.n + p;
                for table in [&self.den0, &self.denh] {
                    match table[qp] {
                        Fac::Absent => unreachable!("denominator factors carry no star"),
                        Fac::StructuralZero => zd += 1,
                        Fac::Val(0) => return Err(RingError::NonGenericAssignment),
                        Fac::Val(v) => {
                            mul_small(&mut cd, &mut spill_d, v);
                            pow -= 1;
                        }
                    }
                }
            }
            let mut num = self.num_stack.last().unwrap() * BigInt::from(cn);
            if let Some(s) = spill_n {
                num *= s;
            }
            let mut den = self.den_stack.last().unwrap() * BigInt::from(cd);
            if let Some(s) = spill_d {
                den *= s;
            }
            let pow = self.pow_stack.last().unwrap() + pow;
            self.num_stack.push(num);
            self.den_stack.push(den);
            self.pow_stack.push(pow);
            self.used[p] = true;
            self.assign.push(p);
            let r = self.go(depth + 1, zd);
            self.assign.pop();
            self.used[p] = false;
            self.num_stack.pop();
            self.den_stack.pop();
            self.pow_stack.pop();
            r?;
        }
        Ok(())
    }
}

/// Builds the integer factor tables and runs the fast specialized sum.
/// Returns None when the assignment does not scale to i64-sized integers.
#[allow(clippy::too_many_arguments)]
fn spec_permutation_sum(
    rank: usize,
    n: usize,
    phi: &[LinForm],
    pair_sign: &[Vec<i8>],
    color_sign: &[Vec<i8>],
    class_id: &[usize],
    denom_desc: bool,
    opts: EngineOpts,
    a: &Assignment,
    z: u64,
) -> Option<Result<RingElem, RingError>> {
    let nvars = nvars_for_rank(rank);
    let mut scale = BigInt::one();
    for v in &a.values {
        scale = scale.lcm(v.denom());
    }
    let scaled: Vec<i64> = a
        .values
        .iter()
        .map(|v| i64::try_from((v * BigRational::from(scale.clone())).to_integer()).ok())
        .collect::<Option<_>>()?;
    let eval = |f: &LinForm| -> Option<Fac> {
        if f.is_zero() {
            return Some(Fac::StructuralZero);
        }
        let mut acc: i128 = f.t1 as i128 * scaled[0] as i128 + f.t2 as i128 * scaled[1] as i128;
        for (k, &c) in f.u.iter().enumerate() {
            acc += c as i128 * scaled[2 + k] as i128;
        }
        i64::try_from(acc).ok().map(Fac::Val)
    };
    let star_fac = |x: LinForm, sign: i8| -> Option<Fac> {
        match star(x, sign) {
            Some(f) => eval(&f),
            None => Some(Fac::Absent),
        }
    };
    let t1 = LinForm::t1_unit(rank);
    let mut plus_pos = vec![Fac::Absent; n * n];
    let mut plus_neg = vec![Fac::Absent; n * n];
    let mut minus_pos = vec![Fac::Absent; n * n];
    let mut minus_neg = vec![Fac::Absent; n * n];
    let mut den0 = vec![Fac::Absent; n * n];
    let mut denh = vec![Fac::Absent; n * n];
    for q in 0..n {
        for p in 0..n {
            let diff = phi[p].sub(&phi[q]);
            let qp = q * n + p;
            plus_pos[qp] = star_fac(diff.add(&t1), 1)?;
            plus_neg[qp] = star_fac(diff.add(&t1), -1)?;
            minus_pos[qp] = star_fac(t1.sub(&diff), 1)?;
            minus_neg[qp] = star_fac(t1.sub(&diff), -1)?;
            let d = if denom_desc {
                diff.clone()
            } else {
                LinForm::zero(rank).sub(&diff)
            };
            denh[qp] = eval(&d.plus_hbar())?;
            den0[qp] = eval(&d)?;
        }
    }
    let mut col_pos = vec![Fac::Absent; rank * n];
    let mut col_neg = vec![Fac::Absent; rank * n];
    for d in 0..rank {
        for p in 0..n {
            let f = LinForm::u_unit(rank, d).sub(&phi[p]);
            col_pos[d * n + p] = star_fac(f.clone(), 1)?;
            col_neg[d * n + p] = star_fac(f, -1)?;
        }
    }
    let diag = [star_fac(t1.clone(), -1)?, Fac::Absent, star_fac(t1, 1)?];
    let mut engine = SpecEngine {
        n,
        rank,
        pair_sign: pair_sign.to_vec(),
        color_sign: color_sign.to_vec(),
        class_id: class_id.to_vec(),
        opts,
        plus_pos,
        plus_neg,
        minus_pos,
        minus_neg,
        den0,
        denh,
        col_pos,
        col_neg,
        diag,
        scale,
        assign: Vec::with_capacity(n),
        used: vec![false; n],
        num_stack: vec![BigInt::one()],
        den_stack: vec![BigInt::one()],
        pow_stack: vec![0],
        total: BigRational::zero(),
    };
    if let Err(e) = engine.go(0, 0) {
        return Some(Err(e));
    }
    let zinv = BigRational::new(BigInt::one(), BigInt::from(z));
    Some(Ok(RingElem::from_rational(nvars, engine.total * zinv)))
}

/// The permutation sum over assignments of phi-side boxes to rho-side
/// positions, with the chamber fixing the sign pattern and `denom_desc`
/// selecting which ordered pairs enter the denominator (descending position
/// pairs when true, ascending when false). The 1/z prefactor for coincident
/// rho-values is included.
fn permutation_sum(
    rank: usize,
    rho_boxes: &[BoxPos],
    phi_boxes: &[BoxPos],
    chamber: Chamber,
    denom_desc: bool,
    mode: &Mode,
    opts: EngineOpts,
) -> Result<RingElem, RingError> {
    assert_eq!(rho_boxes.len(), phi_boxes.len(), "degree mismatch");
    let n = rho_boxes.len();
    let nvars = nvars_for_rank(rank);
    if let Mode::Specialized(a) = mode {
        if a.rank != rank {
            return Err(RingError::RankMismatch(a.rank, rank));
        }
    }
    let phi: Vec<LinForm> = phi_boxes.iter().map(|b| phi_form(b, rank)).collect();
    let rho: Vec<LinForm> = rho_boxes.iter().map(|b| rho_form(b, rank)).collect();
    let t1 = LinForm::t1_unit(rank);
    let pair_sign: Vec<Vec<i8>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| chamber_sign(chamber, &rho[j].sub(&rho[i]).add(&t1)))
                .collect()
        })
        .collect();
    let color_sign: Vec<Vec<i8>> = (0..rank)
        .map(|d| {
            (0..n)
                .map(|a| chamber_sign(chamber, &LinForm::u_unit(rank, d).sub(&rho[a])))
                .collect()
        })
        .collect();
    // Positions with equal rho form a class; the canonical order keeps
    // classes consecutive, which the symmetry quotient relies on.
    let mut class_id = Vec::with_capacity(n);
    let mut reps: Vec<LinForm> = Vec::new();
    for r in &rho {
        let id = match reps.iter().position(|f| f == r) {
            Some(i) => i,
            None => {
                reps.push(r.clone());
                reps.len() - 1
            }
        };
        class_id.push(id);
    }
    let mut class_sizes = vec![0u64; reps.len()];
    for &c in &class_id {
        class_sizes[c] += 1;
    }
    if opts.symmetry_quotient {
        let consecutive = (1..n).all(|a| {
            class_id[a] == class_id[a - 1] || !class_id[..a].contains(&class_id[a])
        });
        assert!(consecutive, "symmetry quotient needs consecutive rho classes");
    }
    let z: u64 = if opts.symmetry_quotient {
        1
    } else {
        class_sizes.iter().map(|&s| (1..=s).product::<u64>()).product()
    };
    if let Mode::Specialized(a) = mode {
        // Fast integer-table path; falls back to the generic accumulator
        // for pruning-off runs or assignments that do not fit i64.
        if opts.prune {
            if let Some(res) = spec_permutation_sum(
                rank, n, &phi, &pair_sign, &color_sign, &class_id, denom_desc, opts, a, z,
            ) {
                return res;
            }
        }
    }
    let mut engine = Engine {
        n,
        rank,
        phi,
        rho,
        pair_sign,
        color_sign,
        class_id,
        denom_desc,
        opts,
        assign: Vec::with_capacity(n),
        used: vec![false; n],
    };
    let mut acc = Accum::new(rank, mode);
    engine.go(0, false, 0, &mut acc)?;
    Ok(acc.finish(nvars, z))
}

/// One matrix entry M_{lam, mu} with an explicit box order on both sides.
/// Exposed so the tie-break invariance (entries do not depend on the order
/// of equal-content boxes) can be tested directly; `opts.symmetry_quotient`
/// must be off unless the rho-side order keeps equal-rho boxes consecutive.
pub fn entry_with_boxes(
    kind: Kind,
    lam: &MultiPartition,
    mu: &MultiPartition,
    rho_boxes: &[BoxPos],
    phi_boxes: &[BoxPos],
    mode: &Mode,
    opts: EngineOpts,
) -> Result<RingElem, RingError> {
    let rank = lam.rank();
    assert_eq!(rank, mu.rank());
    let (chamber, denom_desc) = match kind {
        Kind::T => (Chamber::Minus, true),
        Kind::TStar => (Chamber::Plus, false),
        Kind::U => (Chamber::Plus, false),
        Kind::UStar => (Chamber::Minus, true),
    };
    permutation_sum(rank, rho_boxes, phi_boxes, chamber, denom_desc, mode, opts)
}

/// One transition-matrix entry M_{lam, mu} in the canonical box order.
pub fn entry_with(
    kind: Kind,
    lam: &MultiPartition,
    mu: &MultiPartition,
    mode: &Mode,
    opts: EngineOpts,
) -> Result<RingElem, RingError> {
    assert_eq!(lam.size(), mu.size(), "entries pair diagrams of equal size");
    // T and T* permute the boxes of lam over positions fixed by mu;
    // U and U* are the other way around.
    let (rho_mp, phi_mp) = match kind {
        Kind::T | Kind::TStar => (mu, lam),
        Kind::U | Kind::UStar => (lam, mu),
    };
    entry_with_boxes(kind, lam, mu, &boxes(rho_mp), &boxes(phi_mp), mode, opts)
}

/// One transition-matrix entry with default engine options.
pub fn entry(
    kind: Kind,
    lam: &MultiPartition,
    mu: &MultiPartition,
    mode: &Mode,
) -> Result<RingElem, RingError> {
    entry_with(kind, lam, mu, mode, EngineOpts::default())
}

/// A full degree-n block of a transition matrix, rows and columns indexed by
/// all rank-r multipartitions of n in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub kind: Kind,
    pub rank: usize,
    pub n: u32,
    pub labels: Vec<MultiPartition>,
    /// entries[i][j] = M_{labels[i], labels[j]}.
    pub entries: Vec<Vec<RingElem>>,
}

impl TransitionMatrix {
    pub fn get(&self, lam: &MultiPartition, mu: &MultiPartition) -> &RingElem {
        let i = self.labels.iter().position(|l| l == lam).expect("row label");
        let j = self.labels.iter().position(|l| l == mu).expect("column label");
        &self.entries[i][j]
    }
}

/// Computes a full transition block, entries in parallel.
pub fn transition(kind: Kind, rank: usize, n: u32, mode: &Mode) -> Result<TransitionMatrix, RingError> {
    let labels = MultiPartition::all_of(rank, n);
    let entries: Result<Vec<Vec<RingElem>>, RingError> = labels
        .par_iter()
        .map(|lam| {
            labels
                .par_iter()
                .map(|mu| entry(kind, lam, mu, mode))
                .collect()
        })
        .collect();
    Ok(TransitionMatrix {
        kind,
        rank,
        n,
        labels,
        entries: entries?,
    })
}

/// Which Schur family an expansion refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchurBasis {
    Straight,
    Dual,
}

/// A Jack polynomial as a map from Schur labels to coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurExpansion {
    pub basis: SchurBasis,
    pub rank: usize,
    pub label: MultiPartition,
    pub coeffs: BTreeMap<MultiPartition, RingElem>,
}

impl SchurExpansion {
    pub fn coeff(&self, mu: &MultiPartition) -> RingElem {
        self.coeffs
            .get(mu)
            .cloned()
            .unwrap_or_else(|| RingElem::zero(nvars_for_rank(self.rank)))
    }

    /// Expands into the colored power-sum algebra.
    pub fn to_colored(&self) -> ColoredPoly {
        let nvars = nvars_for_rank(self.rank);
        let mut out = ColoredPoly::zero(self.rank, nvars);
        for (mu, c) in &self.coeffs {
            let s = match self.basis {
                SchurBasis::Straight => colored_schur(mu, nvars),
                SchurBasis::Dual => dual_schur(mu, nvars),
            };
            out = out.add(&s.scale(c));
        }
        out
    }
}

/// The generalized Jack polynomial J (or J*) of a multipartition, as a Schur
/// (or dual Schur) expansion.
pub fn jack(lam: &MultiPartition, variant: Variant, mode: &Mode) -> Result<SchurExpansion, RingError> {
    let rank = lam.rank();
    let n = lam.size();
    let (kind, basis) = match variant {
        Variant::J => (Kind::T, SchurBasis::Straight),
        Variant::JStar => (Kind::TStar, SchurBasis::Dual),
    };
    let mus = MultiPartition::all_of(rank, n);
    let coeffs: Result<Vec<(MultiPartition, RingElem)>, RingError> = mus
        .into_par_iter()
        .map(|mu| entry(kind, lam, &mu, mode).map(|c| (mu, c)))
        .collect();
    // J* is normalized with an extra (-1)^n relative to the raw T* rows so
    // that J and J* coincide at rank 1 (both reduce to the classical Jack
    // polynomial) and <J, J*> = (-1)^n E.
    let sign = if matches!(variant, Variant::JStar) && n % 2 == 1 {
        -1
    } else {
        1
    };
    let coeffs = coeffs?
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(mu, c)| {
            let c = if sign < 0 { c.neg() } else { c };
            (mu, c)
        })
        .collect();
    Ok(SchurExpansion {
        basis,
        rank,
        label: lam.clone(),
        coeffs,
    })
}

/// The pairing factor e_{lam, mu}(u) =
/// prod_{box in lam} (u + (a_lam + 1) t1 - l_mu t2) *
/// prod_{box in mu} (u - a_mu t1 + (l_lam + 1) t2),
/// where arms and legs of a box are measured in the indicated diagram and
/// may be negative for boxes outside it.
pub fn euler_factor(lam: &Partition, mu: &Partition, u: &RingElem) -> RingElem {
    let nvars = u.nvars();
    let t1 = RingElem::var(nvars, VAR_T1);
    let t2 = RingElem::var(nvars, VAR_T2);
    let lin = |u0: &RingElem, a: i64, l: i64| {
        u0.add(&t1.mul(&RingElem::from_int(nvars, a)))
            .add(&t2.mul(&RingElem::from_int(nvars, l)))
    };
    let mut acc = RingElem::one(nvars);
    for (x, y) in lam.cells() {
        acc = acc.mul(&lin(u, lam.arm(x, y) + 1, -mu.leg(x, y)));
    }
    for (x, y) in mu.cells() {
        acc = acc.mul(&lin(u, -mu.arm(x, y), lam.leg(x, y) + 1));
    }
    acc
}

/// E_{lam, mu} = prod_{i,j} e_{lam_i, mu_j}(u_i - u_j): the Euler class of
/// the tangent space at a fixed point when lam = mu, zero otherwise.
pub fn euler_norm(lam: &MultiPartition, mu: &MultiPartition) -> RingElem {
    let rank = lam.rank();
    assert_eq!(rank, mu.rank());
    let nvars = nvars_for_rank(rank);
    let mut acc = RingElem::one(nvars);
    for i in 0..rank {
        for j in 0..rank {
            let u = RingElem::var(nvars, var_u(i + 1)).sub(&RingElem::var(nvars, var_u(j + 1)));
            acc = acc.mul(&euler_factor(lam.component(i), mu.component(j), &u));
        }
    }
    acc
}

/// The sum of phi over all boxes of the diagram: the eigenvalue of the
/// coupled Calogero-Moser hamiltonian on J.
pub fn phi_sum(lam: &MultiPartition) -> RingElem {
    let rank = lam.rank();
    let nvars = nvars_for_rank(rank);
    let mut acc = MPoly::zero(nvars);
    for b in boxes(lam) {
        acc = acc.add(&phi_form(&b, rank).to_mpoly(nvars));
    }
    RingElem::from_poly(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_elem;
    use rand::SeedableRng;

    fn mp(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    fn sym(kind: Kind, l: &str, m: &str) -> RingElem {
        entry(kind, &mp(l), &mp(m), &Mode::Symbolic).unwrap()
    }

    fn e(s: &str, rank: usize) -> RingElem {
        parse_elem(s, rank).unwrap()
    }

    #[test]
    fn empty_diagram_entry_is_one() {
        for kind in [Kind::T, Kind::TStar, Kind::U, Kind::UStar] {
            assert_eq!(sym(kind, "[],[]", "[],[]"), RingElem::one(4));
        }
    }

    #[test]
    fn rank_one_degree_one() {
        assert_eq!(sym(Kind::T, "[1]", "[1]"), e("t2", 1));
        assert_eq!(sym(Kind::TStar, "[1]", "[1]"), e("t1", 1));
    }

    #[test]
    fn rank_one_degree_two_t_block() {
        // Rows of T at n = 2, matching J_[1,1] and J_[2].
        assert_eq!(sym(Kind::T, "[1,1]", "[1,1]"), e("2*t2^2", 1));
        assert!(sym(Kind::T, "[1,1]", "[2]").is_zero());
        assert_eq!(sym(Kind::T, "[2]", "[1,1]"), e("(t1+t2)*t2", 1));
        assert_eq!(sym(Kind::T, "[2]", "[2]"), e("-(t1-t2)*t2", 1));
    }

    #[test]
    fn rank_two_degree_one_t_block() {
        assert_eq!(
            sym(Kind::T, "[],[1]", "[],[1]"),
            e("(t1+t2-u1+u2)*t2", 2)
        );
        assert!(sym(Kind::T, "[],[1]", "[1],[]").is_zero());
        assert_eq!(sym(Kind::T, "[1],[]", "[],[1]"), e("(t1+t2)*t2", 2));
        assert_eq!(sym(Kind::T, "[1],[]", "[1],[]"), e("-t2*(u1-u2)", 2));
    }

    #[test]
    fn engine_options_agree() {
        let all_off = EngineOpts {
            prune: false,
            symmetry_quotient: false,
        };
        let prune_only = EngineOpts {
            prune: true,
            symmetry_quotient: false,
        };
        for kind in [Kind::T, Kind::TStar, Kind::U, Kind::UStar] {
            for l in ["[2,1]", "[3]", "[2,2]"] {
                for m in ["[2,1]", "[1,1,1]", "[2,2]", "[3,1]"] {
                    if mp(l).size() != mp(m).size() {
                        continue;
                    }
                    let fast = entry(kind, &mp(l), &mp(m), &Mode::Symbolic).unwrap();
                    let naive =
                        entry_with(kind, &mp(l), &mp(m), &Mode::Symbolic, all_off).unwrap();
                    let pruned =
                        entry_with(kind, &mp(l), &mp(m), &Mode::Symbolic, prune_only).unwrap();
                    assert_eq!(fast, naive, "{kind:?} {l} {m}");
                    assert_eq!(fast, pruned, "{kind:?} {l} {m}");
                }
            }
        }
    }

    #[test]
    fn specialized_matches_symbolic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let a = Assignment::random(2, &mut rng);
        let mode = Mode::Specialized(a.clone());
        for kind in [Kind::T, Kind::U] {
            for l in ["[1],[1]", "[2],[]", "[],[1,1]"] {
                for m in ["[1],[1]", "[1,1],[]", "[],[2]"] {
                    let s = entry(kind, &mp(l), &mp(m), &Mode::Symbolic).unwrap();
                    let v = entry(kind, &mp(l), &mp(m), &mode).unwrap();
                    assert_eq!(
                        v.as_rational().unwrap(),
                        s.evaluate(&a).unwrap(),
                        "{kind:?} {l} {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn tie_break_invariance() {
        // Permuting equal-content boxes leaves entries unchanged. [2,2] has
        // two content-0 boxes; [2,1,1] has all contents distinct.
        let sq = mp("[2,2]");
        let hook = mp("[2,1,1]");
        let no_quotient = EngineOpts {
            prune: true,
            symmetry_quotient: false,
        };
        let swap_content_zero = |bs: &mut Vec<BoxPos>| {
            let c0: Vec<usize> = (0..bs.len()).filter(|&i| bs[i].content() == 0).collect();
            assert_eq!(c0.len(), 2);
            bs.swap(c0[0], c0[1]);
        };
        // mu is the rho side of T: swap within mu = [2,2].
        let base = entry(Kind::T, &hook, &sq, &Mode::Symbolic).unwrap();
        let mut rho = boxes(&sq);
        swap_content_zero(&mut rho);
        let swapped = entry_with_boxes(
            Kind::T,
            &hook,
            &sq,
            &rho,
            &boxes(&hook),
            &Mode::Symbolic,
            no_quotient,
        )
        .unwrap();
        assert_eq!(base, swapped);
        // lam is the phi side of T: swap within lam = [2,2].
        let base = entry(Kind::T, &sq, &hook, &Mode::Symbolic).unwrap();
        let mut phi = boxes(&sq);
        swap_content_zero(&mut phi);
        let swapped = entry_with_boxes(
            Kind::T,
            &sq,
            &hook,
            &boxes(&hook),
            &phi,
            &Mode::Symbolic,
            no_quotient,
        )
        .unwrap();
        assert_eq!(base, swapped);
    }

    #[test]
    fn euler_factor_values() {
        // e_{[1],[1]}(0) = t1 t2: the tangent space of one point on the plane.
        let zero = RingElem::zero(3);
        let p1: Partition = "[1]".parse().unwrap();
        assert_eq!(euler_factor(&p1, &p1, &zero), e("t1*t2", 1));
        // e_{[],[]} = 1.
        assert_eq!(
            euler_factor(&Partition::empty(), &Partition::empty(), &zero),
            RingElem::one(3)
        );
        // e_{[2],[2]}(0) = 2 t1^2 t2 (t2 - t1): hooks (2,0) and (1,0) paired.
        let p2: Partition = "[2]".parse().unwrap();
        assert_eq!(
            euler_factor(&p2, &p2, &zero),
            e("(2*t1)*(t2-t1)*t1*t2*2", 1).div(&e("2", 1)).unwrap()
        );
    }

    #[test]
    fn euler_norm_rank_two() {
        // e_{[1],[1]}(0) * e_{[1],[]}(u1-u2) * e_{[],[1]}(u2-u1)
        // = t1 t2 * (u1-u2+t1+t2) * (u2-u1).
        let lam = mp("[1],[]");
        let expect = e("-t1*t2*(u1-u2+t1+t2)*(u1-u2)", 2);
        assert_eq!(euler_norm(&lam, &lam), expect);
    }

    #[test]
    fn phi_sum_values() {
        assert_eq!(phi_sum(&mp("[2,1]")), e("u1*3 + t1 + t2", 1));
        assert_eq!(phi_sum(&mp("[1],[1]")), e("u1 + u2", 2));
        assert!(phi_sum(&mp("[],[]")).is_zero());
    }

    #[test]
    fn jack_expansion_rank_one() {
        // J_[2] = (t1+t2) t2 s_[1,1] - (t1-t2) t2 s_[2].
        let j = jack(&mp("[2]"), Variant::J, &Mode::Symbolic).unwrap();
        assert_eq!(j.coeff(&mp("[1,1]")), e("(t1+t2)*t2", 1));
        assert_eq!(j.coeff(&mp("[2]")), e("(t2-t1)*t2", 1));
        assert_eq!(j.coeffs.len(), 2);
    }
}
