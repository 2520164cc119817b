//! Independent verification of the transition-matrix engine.
//!
//! Nothing here reuses the permutation-sum formulas: the checks go through
//! the coupled Calogero-Moser hamiltonian, the Fock-space scalar product, a
//! Gram-Schmidt construction of classical Jack polynomials, Cauchy kernels,
//! symmetry involutions, the Schur degeneration at t1 + t2 = 0, matrix
//! algebra between the four transition blocks, and a table of hand-checked
//! low-degree expansions.
//!
//! Every suite returns a structured [`Report`]; all comparisons are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::envelope::{
    entry, euler_factor, euler_norm, jack, phi_sum, transition, Kind, Mode, Variant,
};
use crate::partition::{MultiPartition, Partition};
use crate::ring::{nvars_for_rank, var_u, Assignment, RingElem, RingError, VAR_T1, VAR_T2};
use crate::symfunc::{
    cauchy_kernel, colored_schur, dual_schur, scalar_product, schur, to_xpoly, total_parts,
    z_multi, ColoredPoly, XPoly, XVars,
};

/// The single global sign relating the computed pairings to the Euler
/// classes: <J, J*> = sign^|diagram| * E. Fixed once by the smallest case
/// (<J_[1], J*_[1]> = -t1 t2 against E = t1 t2); a polarization choice
/// folded into the normalization of J*, not a tolerance.
pub const DUALITY_SIGN: i64 = -1;

fn sign_pow(nvars: usize, n: u32) -> RingElem {
    RingElem::from_int(nvars, if n % 2 == 0 { 1 } else { DUALITY_SIGN })
}

/// Outcome of a verification suite.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub parameters: serde_json::Value,
    pub status: String,
    pub witnesses: Vec<String>,
}

impl Report {
    fn new(suite: &str, parameters: serde_json::Value, witnesses: Vec<String>) -> Self {
        Report {
            suite: suite.to_string(),
            parameters,
            status: if witnesses.is_empty() { "pass" } else { "fail" }.to_string(),
            witnesses,
        }
    }

    /// A report whose witnesses are informational rather than failures.
    fn passing_with_notes(suite: &str, parameters: serde_json::Value, notes: Vec<String>) -> Self {
        Report {
            suite: suite.to_string(),
            parameters,
            status: "pass".to_string(),
            witnesses: notes,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Coefficients of the hamiltonian: symbolic variables or their exact values
/// at an assignment.
pub struct HamParams {
    nvars: usize,
    t1: RingElem,
    t2: RingElem,
    u: Vec<RingElem>,
}

impl HamParams {
    pub fn symbolic(rank: usize) -> Self {
        let nvars = nvars_for_rank(rank);
        HamParams {
            nvars,
            t1: RingElem::var(nvars, VAR_T1),
            t2: RingElem::var(nvars, VAR_T2),
            u: (1..=rank).map(|k| RingElem::var(nvars, var_u(k))).collect(),
        }
    }

    pub fn at(a: &Assignment) -> Self {
        let nvars = a.values.len();
        HamParams {
            nvars,
            t1: RingElem::from_rational(nvars, a.values[0].clone()),
            t2: RingElem::from_rational(nvars, a.values[1].clone()),
            u: a.values[2..]
                .iter()
                .map(|v| RingElem::from_rational(nvars, v.clone()))
                .collect(),
        }
    }

    fn hbar(&self) -> RingElem {
        self.t1.add(&self.t2)
    }

    fn rank(&self) -> usize {
        self.u.len()
    }
}

fn mult_by(f: &ColoredPoly, color: usize, k: u32, rank: usize, nvars: usize) -> ColoredPoly {
    let mut components = vec![Partition::empty(); rank];
    components[color] = Partition::new(vec![k]).unwrap();
    f.mul(&ColoredPoly::monomial(
        MultiPartition::new(components),
        RingElem::one(nvars),
    ))
}

/// The coupled Calogero-Moser hamiltonian acting on a degree-homogeneous
/// polynomial in the colored power sums. Per color i it is
///   (1/2) sum_{m,n>=1} [t1 p_{n+m} (n d_n)(m d_m) - t2 p_n p_m (n+m) d_{n+m}]
///   + sum_{n>=1} (u_i + hbar (n-1)/2) p_n n d_n,
/// and the colors are coupled by
///   hbar sum_{i<j} sum_k (-1)^{k(j-i)} k^2 p_k^{(high)} d/dp_k^{(low)}.
/// For the J family the coupling multiplies the higher color and
/// differentiates the lower; the J* family is its image under the color
/// reversal i -> r+1-i, so the roles swap. The infinite sums truncate to the
/// terms that act nontrivially on deg(f).
pub fn apply_hamiltonian(f: &ColoredPoly, variant: Variant, params: &HamParams) -> ColoredPoly {
    let rank = f.rank();
    assert_eq!(rank, params.rank());
    let nvars = params.nvars;
    let deg = f.degree();
    let hbar = params.hbar();
    let mut out = ColoredPoly::zero(rank, nvars);
    let half = RingElem::from_rational(nvars, BigRational::new(BigInt::from(1), BigInt::from(2)));
    for i in 0..rank {
        for n in 1..=deg {
            // (u_i + hbar (n-1)/2) p_n n d_n
            let g = f.derivative(i, n);
            if !g.is_zero() {
                let c = params.u[i]
                    .add(&hbar.mul(&half).mul(&RingElem::from_int(nvars, n as i64 - 1)))
                    .mul(&RingElem::from_int(nvars, n as i64));
                out = out.add(&mult_by(&g, i, n, rank, nvars).scale(&c));
            }
            for m in 1..=deg.saturating_sub(n) {
                // (1/2) t1 p_{n+m} (n d_n)(m d_m)
                let g = f.derivative(i, m).derivative(i, n);
                if !g.is_zero() {
                    let c = params
                        .t1
                        .mul(&half)
                        .mul(&RingElem::from_int(nvars, (n as i64) * (m as i64)));
                    out = out.add(&mult_by(&g, i, n + m, rank, nvars).scale(&c));
                }
                // -(1/2) t2 p_n p_m (n+m) d_{n+m}
                let g = f.derivative(i, n + m);
                if !g.is_zero() {
                    let c = params
                        .t2
                        .neg()
                        .mul(&half)
                        .mul(&RingElem::from_int(nvars, (n + m) as i64));
                    let h = mult_by(&mult_by(&g, i, n, rank, nvars), i, m, rank, nvars);
                    out = out.add(&h.scale(&c));
                }
            }
        }
    }
    for i in 0..rank {
        for j in i + 1..rank {
            let (low, high) = (i, j);
            let (src, dst) = match variant {
                Variant::J => (low, high),
                Variant::JStar => (high, low),
            };
            for k in 1..=deg {
                let g = f.derivative(src, k);
                if g.is_zero() {
                    continue;
                }
                let sign = if (k as usize * (j - i)) % 2 == 0 { 1 } else { -1 };
                let c = hbar.mul(&RingElem::from_int(nvars, sign * (k as i64) * (k as i64)));
                out = out.add(&mult_by(&g, dst, k, rank, nvars).scale(&c));
            }
        }
    }
    out
}

/// Checks that J (or J*) is an eigenvector of the hamiltonian with
/// eigenvalue sum of phi over the diagram.
pub fn eigen_check(lam: &MultiPartition, variant: Variant, mode: &Mode) -> Result<Report, RingError> {
    let rank = lam.rank();
    let mut j = jack(lam, variant, mode)?.to_colored();
    let (params, eig) = match mode {
        Mode::Symbolic => (HamParams::symbolic(rank), phi_sum(lam)),
        Mode::Specialized(a) => {
            // The dual Schur basis carries symbolic -t2/t1 factors even for
            // a specialized expansion; push the assignment through.
            j = j.evaluate_coeffs(a)?;
            (
                HamParams::at(a),
                RingElem::from_rational(nvars_for_rank(rank), phi_sum(lam).evaluate(a)?),
            )
        }
    };
    let residual = apply_hamiltonian(&j, variant, &params).sub(&j.scale(&eig));
    let mut witnesses = Vec::new();
    if j.is_zero() {
        witnesses.push(format!("{lam}: polynomial is zero"));
    }
    if !residual.is_zero() {
        witnesses.push(format!("{lam}: residual {residual}"));
    }
    Ok(Report::new(
        "eigenvector",
        json!({"diagram": lam.to_string(), "variant": variant.as_str(),
               "mode": if matches!(mode, Mode::Symbolic) {"symbolic"} else {"specialized"}}),
        witnesses,
    ))
}

/// Eigenvector check at a random assignment, redrawing when the assignment
/// lands on a pole of some transition entry.
pub fn eigen_check_random(
    lam: &MultiPartition,
    variant: Variant,
    rng: &mut impl rand::Rng,
) -> Result<Report, RingError> {
    for _ in 0..32 {
        let a = Assignment::random(lam.rank(), rng);
        match eigen_check(lam, variant, &Mode::Specialized(a)) {
            Err(RingError::NonGenericAssignment) => continue,
            other => return other,
        }
    }
    Err(RingError::NonGenericAssignment)
}

/// Classical (r = 1) Jack polynomial by Gram-Schmidt over the Schur basis in
/// a dominance-compatible order, normalized to agree with the transition
/// matrix on the leading Schur coefficient. Fully independent of the
/// permutation-sum engine except for that one normalization factor.
pub fn jack_oracle_r1(lam: &Partition) -> Result<ColoredPoly, RingError> {
    let nvars = nvars_for_rank(1);
    let parts = Partition::all_of(lam.size());
    let mut ortho: Vec<ColoredPoly> = Vec::new();
    let mut target = None;
    for p in &parts {
        let mut v = schur(p, 0, 1, nvars);
        for w in &ortho {
            let c = scalar_product(&v, w).div(&scalar_product(w, w))?;
            v = v.sub(&w.scale(&c));
        }
        if p == lam {
            target = Some(ortho.len());
        }
        ortho.push(v);
    }
    let idx = target.expect("lam appears in its own degree");
    let mp = MultiPartition::new(vec![lam.clone()]);
    let norm = entry(Kind::T, &mp, &mp, &Mode::Symbolic)?;
    Ok(ortho[idx].scale(&norm))
}

/// <J_lam, J*_mu> = delta * sign^n * E_{lam,lam} for all diagrams of size up
/// to `nmax`.
pub fn verify_duality(rank: usize, nmax: u32) -> Result<Report, RingError> {
    let nvars = nvars_for_rank(rank);
    let mut witnesses = Vec::new();
    for n in 0..=nmax {
        let mps = MultiPartition::all_of(rank, n);
        let js: Vec<ColoredPoly> = mps
            .iter()
            .map(|l| jack(l, Variant::J, &Mode::Symbolic).map(|e| e.to_colored()))
            .collect::<Result<_, _>>()?;
        let jstars: Vec<ColoredPoly> = mps
            .iter()
            .map(|l| jack(l, Variant::JStar, &Mode::Symbolic).map(|e| e.to_colored()))
            .collect::<Result<_, _>>()?;
        for (a, la) in mps.iter().enumerate() {
            for (b, lb) in mps.iter().enumerate() {
                let got = scalar_product(&js[a], &jstars[b]);
                let expect = if a == b {
                    euler_norm(la, la).mul(&sign_pow(nvars, n))
                } else {
                    RingElem::zero(nvars)
                };
                if got != expect {
                    witnesses.push(format!("<J_{la}, J*_{lb}> = {got}, expected {expect}"));
                }
            }
        }
    }
    Ok(Report::new(
        "duality",
        json!({"rank": rank, "max_degree": nmax, "sign": DUALITY_SIGN}),
        witnesses,
    ))
}

/// Pairs the q-colors (r..2r) of a rank-2r polynomial against a rank-r
/// polynomial under the Fock scalar product, leaving a rank-r polynomial in
/// the p-colors (0..r).
fn pair_q(kernel: &ColoredPoly, g: &ColoredPoly, rank: usize) -> ColoredPoly {
    let nvars = kernel.nvars();
    let t1 = RingElem::var(nvars, VAR_T1);
    let t2 = RingElem::var(nvars, VAR_T2);
    let ratio = t1.neg().div(&t2).expect("t2 is a variable");
    let mut out = ColoredPoly::zero(rank, nvars);
    for (mp, c) in kernel.terms() {
        let comps = mp.components();
        let mp_p = MultiPartition::new(comps[..rank].to_vec());
        let mp_q = MultiPartition::new(comps[rank..].to_vec());
        let d = g.coeff(&mp_q);
        if d.is_zero() {
            continue;
        }
        let weight = RingElem::from_rational(nvars, BigRational::from(z_multi(&mp_q)))
            .mul(&ratio.pow(total_parts(&mp_q) as u32));
        out = out.add(&ColoredPoly::monomial(mp_p, c.mul(&d).mul(&weight)));
    }
    out
}

/// Degree-truncated Cauchy identity in power sums: the sum over diagrams of
/// sign^n J(p) J*(q) / E equals exp(-t2/t1 sum_n (p_n q_n summed over
/// colors) / n) up to degree D.
///
/// Three exact checks that jointly prove the truncated identity:
/// 1. the kernel equals sum_mu s_mu(p) s*_mu(q) (classical Cauchy per color);
/// 2. pairing the kernel in q against J_mu reproduces J_mu(p) (the sign^n of
///    the sum and the sign^n of <J, J*> = sign^n E cancel) for every diagram
///    of size <= D — since the J's span each degree and the pairing is the
///    one of the duality suite, a bilinear form is determined by these
///    pairings, so the kernel and the sum agree;
/// 3. the sum of fractions itself, term by term against the kernel, on the
///    degrees where the common-denominator arithmetic stays small.
pub fn verify_cauchy(rank: usize, max_deg: u32) -> Result<Report, RingError> {
    let nvars = nvars_for_rank(rank);
    let kernel = cauchy_kernel(max_deg, rank, nvars);
    let mut witnesses = Vec::new();
    // Check 1: kernel as a sum of Schur times dual Schur.
    let mut schur_form = ColoredPoly::zero(2 * rank, nvars);
    for n in 0..=max_deg {
        for mu in MultiPartition::all_of(rank, n) {
            let s = colored_schur(&mu, nvars).embed(2 * rank, 0);
            let sd = dual_schur(&mu, nvars).embed(2 * rank, rank);
            schur_form = schur_form.add(&s.mul(&sd));
        }
    }
    if schur_form != kernel {
        witnesses.push("kernel does not match the Schur expansion".to_string());
    }
    // Check 2: the kernel reproduces J under the q-pairing.
    for n in 0..=max_deg {
        for mu in MultiPartition::all_of(rank, n) {
            let j = jack(&mu, Variant::J, &Mode::Symbolic)?.to_colored();
            let got = pair_q(&kernel, &j, rank);
            if got != j {
                witnesses.push(format!("kernel does not reproduce J_{mu}"));
            }
        }
    }
    // Check 3: the literal sum of fractions, where the denominators stay
    // small enough for exact common-denominator arithmetic.
    let direct_deg = if rank <= 1 { max_deg } else { max_deg.min(2) };
    let mut lhs = ColoredPoly::zero(2 * rank, nvars);
    for n in 0..=direct_deg {
        for lam in MultiPartition::all_of(rank, n) {
            let j = jack(&lam, Variant::J, &Mode::Symbolic)?.to_colored();
            let jstar = jack(&lam, Variant::JStar, &Mode::Symbolic)?.to_colored();
            let c = sign_pow(nvars, n).div(&euler_norm(&lam, &lam))?;
            lhs = lhs.add(&j.embed(2 * rank, 0).mul(&jstar.embed(2 * rank, rank)).scale(&c));
        }
    }
    let truncated = cauchy_kernel(direct_deg, rank, nvars);
    if lhs != truncated {
        witnesses.push(format!(
            "direct sum differs from the kernel at degree <= {direct_deg}"
        ));
    }
    Ok(Report::new(
        "cauchy",
        json!({"rank": rank, "max_degree": max_deg, "direct_degree": direct_deg,
               "sign": DUALITY_SIGN}),
        witnesses,
    ))
}

/// The Cauchy identity in finitely many variables:
/// prod_{k,i,j} (1 - x_i^(k) y_j^(k)) =
/// sum sign^n J^{t1,t2}_lam(x) J*^{t2,t1}_{lam'}(y) / E_{lam,lam},
/// both sides truncated to total degree 2 * max_deg.
pub fn verify_cauchy_finite(
    rank: usize,
    max_deg: u32,
    vars_per_color: usize,
) -> Result<Report, RingError> {
    let nvars = nvars_for_rank(rank);
    let xv = XVars::uniform(2 * rank, vars_per_color);
    // Product side: x's are color blocks 0..r, y's are blocks r..2r.
    let mut product = XPoly::one(xv.total(), nvars);
    for k in 0..rank {
        for i in 0..vars_per_color {
            for j in 0..vars_per_color {
                let mut exps = vec![0u16; xv.total()];
                exps[xv.index(k, i)] = 1;
                exps[xv.index(rank + k, j)] = 1;
                let factor = XPoly::one(xv.total(), nvars)
                    .sub(&XPoly::monomial(xv.total(), exps, RingElem::one(nvars)));
                product = product.mul(&factor);
            }
        }
    }
    let product = product.truncate(2 * max_deg as u16);
    let mut rhs = XPoly::zero(xv.total(), nvars);
    for n in 0..=max_deg {
        for lam in MultiPartition::all_of(rank, n) {
            let j = jack(&lam, Variant::J, &Mode::Symbolic)?.to_colored();
            let jstar_t = jack(&lam.transpose(), Variant::JStar, &Mode::Symbolic)?
                .to_colored()
                .map_coeffs(|c| c.swap_t());
            let c = sign_pow(nvars, n).div(&euler_norm(&lam, &lam))?;
            let term = j.embed(2 * rank, 0).mul(&jstar_t.embed(2 * rank, rank)).scale(&c);
            rhs = rhs.add(&to_xpoly(&term, &xv));
        }
    }
    let mut witnesses = Vec::new();
    let diff = product.sub(&rhs);
    if !diff.is_zero() {
        witnesses.push(format!("difference against product form: {diff}"));
    }
    Ok(Report::new(
        "cauchy-finite",
        json!({"rank": rank, "max_degree": max_deg, "vars_per_color": vars_per_color,
               "sign": DUALITY_SIGN}),
        witnesses,
    ))
}

/// The u-symmetry (color reversal exchanges J and J*, r >= 2) and the
/// t-symmetry (transposing all diagrams and swapping t1, t2 rescales the
/// power sums by t2/t1), for all diagrams of size up to `nmax`.
pub fn verify_symmetries(rank: usize, nmax: u32) -> Result<Report, RingError> {
    let nvars = nvars_for_rank(rank);
    let ratio = RingElem::var(nvars, VAR_T2).div(&RingElem::var(nvars, VAR_T1))?;
    let mut witnesses = Vec::new();
    for n in 0..=nmax {
        for lam in MultiPartition::all_of(rank, n) {
            // J^{u1..ur}_lam(p^(i)) = J*^{ur..u1}_{rev lam}(p^(r+1-i)): the
            // (-1)^n of the raw transition rows is already folded into the
            // normalization of J*. The color reversal is vacuous at rank 1,
            // where J = J* makes the statement empty, so it is exercised for
            // rank >= 2 only.
            if rank >= 2 {
                let lhs = jack(&lam, Variant::J, &Mode::Symbolic)?.to_colored();
                let rhs = jack(&lam.reverse(), Variant::JStar, &Mode::Symbolic)?
                    .to_colored()
                    .map_coeffs(|c| c.reverse_u())
                    .color_reverse();
                if lhs != rhs {
                    witnesses.push(format!("u-symmetry fails for {lam}"));
                }
            }
            // J^{t1,t2}_lam(p) = J^{t2,t1}_{lam'}(p t2/t1), and the same for J*.
            for variant in [Variant::J, Variant::JStar] {
                let lhs = jack(&lam, variant, &Mode::Symbolic)?.to_colored();
                let rhs = jack(&lam.transpose(), variant, &Mode::Symbolic)?
                    .to_colored()
                    .map_coeffs(|c| c.swap_t())
                    .scale_powersums(&ratio);
                if lhs != rhs {
                    witnesses.push(format!("t-symmetry fails for {} {lam}", variant.as_str()));
                }
            }
        }
    }
    Ok(Report::new(
        "symmetries",
        json!({"rank": rank, "max_degree": nmax}),
        witnesses,
    ))
}

/// At t1 + t2 = 0 the polynomial J collapses to a multiple of the Schur
/// product s_lam. The proportionality is asserted strictly; the scalar is
/// compared against the candidate readings of the degeneration coefficient
/// and the matching one is reported.
pub fn verify_degeneration(lam: &MultiPartition) -> Result<Report, RingError> {
    let rank = lam.rank();
    let nvars = nvars_for_rank(rank);
    let n = lam.size();
    let j = jack(lam, Variant::J, &Mode::Symbolic)?;
    let mut witnesses = Vec::new();
    let mut scalar = RingElem::zero(nvars);
    for (mu, c) in &j.coeffs {
        let spec = c.specialize_hplane()?;
        if mu == lam {
            scalar = spec;
        } else if !spec.is_zero() {
            witnesses.push(format!(
                "{lam}: coefficient of s_{mu} survives the specialization: {spec}"
            ));
        }
    }
    if scalar.is_zero() && n > 0 {
        witnesses.push(format!("{lam}: leading coefficient vanishes"));
    }
    // Candidate coefficient readings, all specialized to t2 = -t1 and carrying
    // the (-1)^n sign. Hooks are either the equivariant (a+1)t1 - l t2 as a
    // factor, or the integer a + l + 1 as a divisor; the cross-component
    // pairing runs over components in one order or the other.
    let mut hooks_eq = RingElem::one(nvars);
    let mut hooks_int = BigRational::from(BigInt::from(1));
    let t1 = RingElem::var(nvars, VAR_T1);
    let t2 = RingElem::var(nvars, VAR_T2);
    for p in lam.components() {
        for (x, y) in p.cells() {
            let (a1, l) = p.hook(x, y).unwrap();
            hooks_eq = hooks_eq.mul(
                &t1.mul(&RingElem::from_int(nvars, a1))
                    .sub(&t2.mul(&RingElem::from_int(nvars, l))),
            );
            hooks_int *= BigRational::from(BigInt::from(a1 + l));
        }
    }
    let mut e_fwd = RingElem::one(nvars);
    let mut e_rev = RingElem::one(nvars);
    for i in 0..rank {
        for jx in i + 1..rank {
            let u_ij = RingElem::var(nvars, var_u(i + 1)).sub(&RingElem::var(nvars, var_u(jx + 1)));
            e_fwd = e_fwd.mul(&euler_factor(lam.component(i), lam.component(jx), &u_ij));
            e_rev = e_rev.mul(&euler_factor(
                lam.component(jx),
                lam.component(i),
                &u_ij.neg(),
            ));
        }
    }
    let sign = RingElem::from_int(nvars, if n % 2 == 0 { 1 } else { -1 });
    let candidates = [
        (
            "reversed pairs, equivariant hooks as factor",
            sign.mul(&e_rev.specialize_hplane()?)
                .mul(&hooks_eq.specialize_hplane()?),
        ),
        (
            "forward pairs, equivariant hooks as factor",
            sign.mul(&e_fwd.specialize_hplane()?)
                .mul(&hooks_eq.specialize_hplane()?),
        ),
        (
            "reversed pairs, integer hooks as divisor",
            sign.mul(&e_rev.specialize_hplane()?)
                .mul(&RingElem::from_rational(nvars, hooks_int.clone()).inverse()?),
        ),
        (
            "forward pairs, integer hooks as divisor",
            sign.mul(&e_fwd.specialize_hplane()?)
                .mul(&RingElem::from_rational(nvars, hooks_int).inverse()?),
        ),
    ];
    let matched: Vec<&str> = candidates
        .iter()
        .filter(|(_, v)| *v == scalar)
        .map(|(name, _)| *name)
        .collect();
    if !matched.iter().any(|m| *m == candidates[0].0) {
        witnesses.push(format!(
            "{lam}: scalar {scalar} does not match the expected coefficient reading"
        ));
    }
    let params = json!({"diagram": lam.to_string(), "matched_readings": matched});
    if witnesses.is_empty() {
        Ok(Report::passing_with_notes("degeneration", params, Vec::new()))
    } else {
        Ok(Report::new("degeneration", params, witnesses))
    }
}

/// Runs the degeneration check over all diagrams of size up to `nmax`.
pub fn verify_degeneration_range(rank: usize, nmax: u32) -> Result<Report, RingError> {
    let mut witnesses = Vec::new();
    for n in 0..=nmax {
        for lam in MultiPartition::all_of(rank, n) {
            let r = verify_degeneration(&lam)?;
            if !r.passed() {
                witnesses.extend(r.witnesses);
            }
        }
    }
    Ok(Report::new(
        "degeneration",
        json!({"rank": rank, "max_degree": nmax}),
        witnesses,
    ))
}

/// Matrix algebra between the four transition blocks at fixed degree:
/// T is the transpose of U*, T* the transpose of U, and both
/// U E^{-1} (U*)^t and U E^{-1} T are the identity (the round trip
/// s -> J's -> s), with E the diagonal of Euler classes.
pub fn verify_matrix_identities(rank: usize, n: u32) -> Result<Report, RingError> {
    let nvars = nvars_for_rank(rank);
    let t = transition(Kind::T, rank, n, &Mode::Symbolic)?;
    let tstar = transition(Kind::TStar, rank, n, &Mode::Symbolic)?;
    let u = transition(Kind::U, rank, n, &Mode::Symbolic)?;
    let ustar = transition(Kind::UStar, rank, n, &Mode::Symbolic)?;
    let labels = &t.labels;
    let dim = labels.len();
    let mut witnesses = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if t.entries[i][j] != ustar.entries[j][i] {
                witnesses.push(format!(
                    "T[{},{}] differs from transposed U*",
                    labels[i], labels[j]
                ));
            }
            if tstar.entries[i][j] != u.entries[j][i] {
                witnesses.push(format!(
                    "T*[{},{}] differs from transposed U",
                    labels[i], labels[j]
                ));
            }
        }
    }
    let einv: Vec<RingElem> = labels
        .iter()
        .map(|l| euler_norm(l, l).inverse())
        .collect::<Result<_, _>>()?;
    for i in 0..dim {
        for j in 0..dim {
            let mut via_ustar = RingElem::zero(nvars);
            let mut via_t = RingElem::zero(nvars);
            for k in 0..dim {
                let left = u.entries[i][k].mul(&einv[k]);
                via_ustar = via_ustar.add(&left.mul(&ustar.entries[j][k]));
                via_t = via_t.add(&left.mul(&t.entries[k][j]));
            }
            let expect = if i == j {
                RingElem::one(nvars)
            } else {
                RingElem::zero(nvars)
            };
            if via_ustar != expect {
                witnesses.push(format!(
                    "(U E^-1 U*^t)[{},{}] is not the identity entry",
                    labels[i], labels[j]
                ));
            }
            if via_t != expect {
                witnesses.push(format!(
                    "(U E^-1 T)[{},{}] is not the identity entry",
                    labels[i], labels[j]
                ));
            }
        }
    }
    Ok(Report::new(
        "matrix-identities",
        json!({"rank": rank, "degree": n}),
        witnesses,
    ))
}

/// One row of the table of hand-checked low-degree expansions.
struct KnownExpansion {
    rank: usize,
    diagram: &'static str,
    coeffs: &'static [(&'static str, &'static str)],
}

/// Hand-checked expansions of J in the Schur basis: all of r = 1 up to
/// degree 3, r = 2 up to degree 2, r = 3 at degree 1.
const KNOWN_EXPANSIONS: &[KnownExpansion] = &[
    KnownExpansion {
        rank: 1,
        diagram: "[1]",
        coeffs: &[("[1]", "t2")],
    },
    KnownExpansion {
        rank: 1,
        diagram: "[1,1]",
        coeffs: &[("[1,1]", "2*t2^2")],
    },
    KnownExpansion {
        rank: 1,
        diagram: "[2]",
        coeffs: &[("[1,1]", "(t1+t2)*t2"), ("[2]", "-(t1-t2)*t2")],
    },
    KnownExpansion {
        rank: 1,
        diagram: "[1,1,1]",
        coeffs: &[("[1,1,1]", "6*t2^3")],
    },
    KnownExpansion {
        rank: 1,
        diagram: "[2,1]",
        coeffs: &[
            ("[1,1,1]", "2*t2^2*(t1+t2)"),
            ("[2,1]", "-t2^2*(t1-2*t2)"),
        ],
    },
    KnownExpansion {
        rank: 1,
        diagram: "[3]",
        coeffs: &[
            ("[1,1,1]", "t2*(2*t1+t2)*(t1+t2)"),
            ("[2,1]", "-2*t2*(t1+t2)*(t1-t2)"),
            ("[3]", "t2*(t1-t2)*(2*t1-t2)"),
        ],
    },
    KnownExpansion {
        rank: 2,
        diagram: "[],[1]",
        coeffs: &[("[],[1]", "(t1+t2-u1+u2)*t2")],
    },
    KnownExpansion {
        rank: 2,
        diagram: "[1],[]",
        coeffs: &[("[],[1]", "(t1+t2)*t2"), ("[1],[]", "-t2*(u1-u2)")],
    },
    KnownExpansion {
        rank: 2,
        diagram: "[],[1,1]",
        coeffs: &[("[],[1,1]", "2*t2^2*(t1+t2-u1+u2)*(t1+2*t2-u1+u2)")],
    },
    KnownExpansion {
        rank: 2,
        diagram: "[],[2]",
        coeffs: &[
            ("[],[1,1]", "t2*(2*t1+t2-u1+u2)*(t1+t2-u1+u2)*(t1+t2)"),
            ("[],[2]", "-t2*(t1-t2)*(2*t1+t2-u1+u2)*(t1+t2-u1+u2)"),
        ],
    },
    KnownExpansion {
        rank: 2,
        diagram: "[1],[1]",
        coeffs: &[
            ("[],[1,1]", "(2*t1+t2-u1+u2)*t2^2*(t1+t2)"),
            ("[],[2]", "t2^2*(t2-u1+u2)*(t1+t2)"),
            ("[1],[1]", "t2^2*(t2-u1+u2)*(u2-u1+t1)"),
        ],
    },
    KnownExpansion {
        rank: 2,
        diagram: "[1,1],[]",
        coeffs: &[
            ("[],[1,1]", "2*t2^2*(t1+t2)*(t1+2*t2-u2+u1)"),
            ("[],[2]", "-2*t2^2*(t1+t2)*(u1-u2)"),
            ("[1],[1]", "-2*t2^2*(t1+t2)*(u1-u2)"),
            ("[1,1],[]", "2*t2^2*(u1-u2)*(t2-u2+u1)"),
        ],
    },
    KnownExpansion {
        rank: 2,
        diagram: "[2],[]",
        coeffs: &[
            (
                "[],[1,1]",
                "(t1+t2)*t2*(2*t1*u1-2*t1*u2+2*t1^2+3*t2*t1+t2^2)",
            ),
            (
                "[],[2]",
                "-(t1+t2)*t2*(2*t1*u1-2*t1*u2+2*t1^2-t2*t1-t2^2)",
            ),
            ("[1],[1]", "-2*t2^2*(t1+t2)*(u1-u2)"),
            ("[1,1],[]", "t2*(t1+t2)*(u1-u2+t1)*(u1-u2)"),
            ("[2],[]", "-t2*(t1-t2)*(u1-u2+t1)*(u1-u2)"),
        ],
    },
    KnownExpansion {
        rank: 3,
        diagram: "[],[],[1]",
        coeffs: &[("[],[],[1]", "t2*(t1+t2-u1+u3)*(t1+t2-u2+u3)")],
    },
    KnownExpansion {
        rank: 3,
        diagram: "[],[1],[]",
        coeffs: &[
            ("[],[],[1]", "t2*(t1+t2)*(t1+t2-u1+u2)"),
            ("[],[1],[]", "-t2*(t1+t2-u1+u2)*(u2-u3)"),
        ],
    },
    KnownExpansion {
        rank: 3,
        diagram: "[1],[],[]",
        coeffs: &[
            ("[],[],[1]", "(t1+t2)*(u1-u2+t1+t2)*t2"),
            ("[],[1],[]", "-t2*(t1+t2)*(u1-u3)"),
            ("[1],[],[]", "t2*(u1-u2)*(u1-u3)"),
        ],
    },
];

/// The engine against the table of hand-checked expansions, coefficient by
/// coefficient, including the vanishing of every unlisted coefficient.
pub fn verify_known_expansions() -> Result<Report, RingError> {
    use crate::ring::parse_elem;
    let mut witnesses = Vec::new();
    for row in KNOWN_EXPANSIONS {
        let lam: MultiPartition = row.diagram.parse().expect("table diagram");
        let j = jack(&lam, Variant::J, &Mode::Symbolic)?;
        let mut expected: std::collections::BTreeMap<MultiPartition, RingElem> =
            std::collections::BTreeMap::new();
        for (mu, expr) in row.coeffs {
            expected.insert(
                mu.parse().expect("table diagram"),
                parse_elem(expr, row.rank).expect("table expression"),
            );
        }
        for mu in MultiPartition::all_of(row.rank, lam.size()) {
            let got = j.coeff(&mu);
            let want = expected
                .remove(&mu)
                .unwrap_or_else(|| RingElem::zero(nvars_for_rank(row.rank)));
            if got != want {
                witnesses.push(format!(
                    "J_{lam}: coefficient of s_{mu} is {got}, expected {want}"
                ));
            }
        }
    }
    Ok(Report::new(
        "known-expansions",
        json!({"rows": KNOWN_EXPANSIONS.len()}),
        witnesses,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_elem;

    fn mp(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    fn p1(rank: usize, color: usize) -> ColoredPoly {
        let mut components = vec![Partition::empty(); rank];
        components[color] = Partition::new(vec![1]).unwrap();
        ColoredPoly::monomial(
            MultiPartition::new(components),
            RingElem::one(nvars_for_rank(rank)),
        )
    }

    #[test]
    fn hamiltonian_on_small_states() {
        // H 1 = 0.
        let one = ColoredPoly::one(1, 3);
        assert!(apply_hamiltonian(&one, Variant::J, &HamParams::symbolic(1)).is_zero());
        // r=1: H p1 = u1 p1.
        let f = p1(1, 0);
        let h = apply_hamiltonian(&f, Variant::J, &HamParams::symbolic(1));
        assert_eq!(h, f.scale(&parse_elem("u1", 1).unwrap()));
        // r=2: H p1^(1) = u1 p1^(1) - hbar p1^(2); H p1^(2) = u2 p1^(2).
        let f = p1(2, 0);
        let h = apply_hamiltonian(&f, Variant::J, &HamParams::symbolic(2));
        let expect = f
            .scale(&parse_elem("u1", 2).unwrap())
            .sub(&p1(2, 1).scale(&parse_elem("t1+t2", 2).unwrap()));
        assert_eq!(h, expect);
        let g = p1(2, 1);
        let h = apply_hamiltonian(&g, Variant::J, &HamParams::symbolic(2));
        assert_eq!(h, g.scale(&parse_elem("u2", 2).unwrap()));
    }

    #[test]
    fn eigen_small_cases() {
        for (lam, variant) in [
            ("[1]", Variant::J),
            ("[2,1]", Variant::J),
            ("[1],[]", Variant::J),
            ("[],[1]", Variant::J),
            ("[1],[1]", Variant::J),
            ("[1],[]", Variant::JStar),
            ("[2],[1]", Variant::JStar),
        ] {
            let r = eigen_check(&mp(lam), variant, &Mode::Symbolic).unwrap();
            assert!(r.passed(), "{lam} {variant:?}: {:?}", r.witnesses);
        }
    }

    #[test]
    fn oracle_matches_engine_small() {
        for s in ["[1]", "[1,1]", "[2]", "[2,1]"] {
            let lam: Partition = s.parse().unwrap();
            let oracle = jack_oracle_r1(&lam).unwrap();
            let engine = jack(&mp(s), Variant::J, &Mode::Symbolic)
                .unwrap()
                .to_colored();
            assert_eq!(oracle, engine, "{s}");
        }
    }

    #[test]
    fn duality_smallest_cases() {
        // <J_[1], J*_[1]> = -t1 t2 while E = t1 t2: the case that froze the
        // sign at -1.
        let j = jack(&mp("[1]"), Variant::J, &Mode::Symbolic)
            .unwrap()
            .to_colored();
        let jstar = jack(&mp("[1]"), Variant::JStar, &Mode::Symbolic)
            .unwrap()
            .to_colored();
        let got = scalar_product(&j, &jstar);
        assert_eq!(got, parse_elem("-t1*t2", 1).unwrap());
        assert_eq!(euler_norm(&mp("[1]"), &mp("[1]")), parse_elem("t1*t2", 1).unwrap());
        let r = verify_duality(1, 2).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses);
    }

    #[test]
    fn cauchy_degree_two_rank_one() {
        let r = verify_cauchy(1, 2).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses);
    }

    #[test]
    fn degeneration_known_scalars() {
        // J_[1] -> -t1 s_[1], J_[2] -> 2 t1^2 s_[2],
        // J_{[1],[]} -> t1 (u1-u2) s_{[1],[]}.
        for (lam, scalar, rank) in [
            ("[1]", "-t1", 1),
            ("[2]", "2*t1^2", 1),
            ("[1],[]", "t1*(u1-u2)", 2),
        ] {
            let j = jack(&mp(lam), Variant::J, &Mode::Symbolic).unwrap();
            let got = j.coeff(&mp(lam)).specialize_hplane().unwrap();
            assert_eq!(got, parse_elem(scalar, rank).unwrap(), "{lam}");
            let r = verify_degeneration(&mp(lam)).unwrap();
            assert!(r.passed(), "{lam}: {:?}", r.witnesses);
        }
    }

    #[test]
    fn matrix_identities_degree_zero_and_one() {
        for n in 0..=1 {
            let r = verify_matrix_identities(2, n).unwrap();
            assert!(r.passed(), "n={n}: {:?}", r.witnesses);
        }
    }

    #[test]
    fn known_expansion_single_row() {
        let r = verify_known_expansions().unwrap();
        assert!(r.passed(), "{:?}", r.witnesses);
    }

    #[test]
    fn report_serializes() {
        let r = Report::new("demo", json!({"rank": 1}), vec![]);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"status\":\"pass\""));
    }
}
