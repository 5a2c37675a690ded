//! The factored determinant `D(λ; μ) = c · D1 · D2 · D3` and its comparison
//! with the brute-force Gram determinant.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{RootSystem, Weight};
use crate::character::ParabolicDatum;
use crate::error::{Error, Result};
use crate::linalg::{int, interpolate, degree, pow, rat, Rat, RatMatrix};
use crate::verma::ParabolicVerma;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    /// `α ∈ Δ̄_{n,0}`
    EvenBar,
    /// `α ∈ Δ₁⁺ \ Δ̄₁⁺`
    OddNonIso,
    /// `α ∈ Δ̄₁⁺`
    OddIso,
}

impl FactorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FactorKind::EvenBar => "even_bar",
            FactorKind::OddNonIso => "odd_noniso",
            FactorKind::OddIso => "odd_iso",
        }
    }
}

/// Affine function `λ ↦ (λ, α) + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    pub alpha: Weight,
    pub constant: Rat,
}

impl LinearForm {
    pub fn eval(&self, rs: &RootSystem, lam: &Weight) -> Rat {
        rs.form(lam, &self.alpha) + &self.constant
    }

    /// Representative of the proportionality class and the scale `s` with
    /// `self = s · canonical`.
    pub fn canonical(&self) -> (LinearForm, Rat) {
        let lead = self.alpha.0.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(Rat::one);
        let inv = lead.recip();
        (LinearForm { alpha: self.alpha.scale(&inv), constant: &self.constant * &inv }, lead)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub root: usize,
    pub kind: FactorKind,
    /// The paper's `r`; absent for isotropic roots.
    pub r: Option<u32>,
    /// Multiple `s` of the root in the shift: `r`, `2r − 1`, or `0`.
    pub multiple: u32,
    pub exponent: i64,
    pub value: Rat,
    pub form: LinearForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergedFactor {
    pub form: LinearForm,
    pub exponent: i64,
    pub value: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaResult {
    pub factors: Vec<Factor>,
    pub merged: Vec<MergedFactor>,
    pub value: Rat,
    pub is_zero: bool,
}

impl FormulaResult {
    /// Total degree in `λ`: the number of linear factors with multiplicity.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|f| f.exponent).sum()
    }
}

fn check_pair(pd: &ParabolicDatum, lam: &Weight, mu: &Weight) -> Result<usize> {
    pd.require_dominant(lam)?;
    pd.rs().check_weight(mu)?;
    let c = pd
        .qplus_coords(&(lam - mu))
        .ok_or_else(|| Error::Domain(format!("μ = {mu} is not below λ = {lam}")))?;
    Ok(c.iter().sum::<i64>() as usize)
}

/// `(λ + ρ, α) − (s/2)(α, α)` as an affine form.
fn shifted_form(rs: &RootSystem, root: usize, s: u32) -> LinearForm {
    let a = &rs.root(root).weight;
    let constant = rs.form(rs.rho(), a) - rat(s as i64, 2) * rs.form(a, a);
    LinearForm { alpha: a.clone(), constant }
}

pub fn enumerate_factors(pd: &ParabolicDatum, lam: &Weight, mu: &Weight) -> Result<Vec<Factor>> {
    let ht = check_pair(pd, lam, mu)?;
    let rs = pd.rs();
    let mut out = Vec::new();
    let mut push = |root: usize, kind, r: Option<u32>, s: u32, exponent: i64| {
        if exponent != 0 {
            let form = shifted_form(rs, root, s);
            out.push(Factor { root, kind, r, multiple: s, exponent, value: form.eval(rs, lam), form });
        }
    };
    for a in pd.delta_n_0bar() {
        let w = &rs.root(a).weight;
        for r in 1..=ht as u32 {
            let nu = lam - &w.scale(&int(r as i64));
            push(a, FactorKind::EvenBar, Some(r), r, pd.chi_p(&nu, mu));
        }
    }
    for a in pd.odd_nonisotropic() {
        let w = &rs.root(a).weight;
        for r in 1..=ht as u32 {
            let s = 2 * r - 1;
            if s as usize > ht {
                break;
            }
            let nu = lam - &w.scale(&int(s as i64));
            push(a, FactorKind::OddNonIso, Some(r), s, pd.chi_p(&nu, mu));
        }
    }
    for a in pd.isotropic() {
        let nu = lam - &rs.root(a).weight;
        push(a, FactorKind::OddIso, None, 0, pd.chi_p_alpha(&nu, a, mu)?);
    }
    Ok(out)
}

/// `f` restricted to the affine slice of weights sharing the `Π_l` pairings
/// of `λ`: the `Π_l` components of `α` are absorbed into the constant.
pub fn restrict_to_slice(pd: &ParabolicDatum, lam: &Weight, f: &LinearForm) -> Result<LinearForm> {
    let rs = pd.rs();
    let roots: Vec<Weight> = pd.pi_l_roots().iter().map(|&r| rs.root(r).weight.clone()).collect();
    if roots.is_empty() {
        return Ok(f.clone());
    }
    let gram = RatMatrix::from_fn(roots.len(), roots.len(), |i, j| rs.form(&roots[i], &roots[j]));
    let rhs: Vec<Rat> = roots.iter().map(|b| rs.form(&f.alpha, b)).collect();
    let c = gram.solve(&rhs)?;
    let mut alpha = f.alpha.clone();
    for (b, cj) in roots.iter().zip(&c) {
        alpha = &alpha - &b.scale(cj);
    }
    let constant = f.eval(rs, lam) - rs.form(lam, &alpha);
    Ok(LinearForm { alpha, constant })
}

/// Merges forms that are proportional on the `Π_l`-slice through `λ` and
/// evaluates the product at `λ`. The exponents are constant on that slice,
/// where the product is a polynomial.
pub fn combine(pd: &ParabolicDatum, lam: &Weight, factors: Vec<Factor>) -> Result<FormulaResult> {
    let mut groups: BTreeMap<LinearForm, (i64, Rat, Rat)> = BTreeMap::new();
    for f in &factors {
        let (canon, scale) = restrict_to_slice(pd, lam, &f.form)?.canonical();
        let v = &f.value / &scale;
        let g = groups.entry(canon).or_insert((0, Rat::one(), v));
        g.0 += f.exponent;
        g.1 *= pow(&scale, f.exponent);
    }
    let mut merged = Vec::new();
    let mut value = Rat::one();
    let mut is_zero = false;
    for (form, (exponent, scale_product, v)) in groups {
        if v.is_zero() {
            if exponent > 0 {
                is_zero = true;
            } else if exponent < 0 {
                return Err(Error::Consistency(format!(
                    "factor (λ, {}) + {} vanishes with net exponent {exponent}",
                    form.alpha,
                    crate::linalg::fmt_rat(&form.constant)
                )));
            }
        }
        value *= &scale_product;
        if exponent != 0 && !v.is_zero() {
            value *= pow(&v, exponent);
        }
        merged.push(MergedFactor { form, exponent, value: v });
    }
    if is_zero {
        value = Rat::zero();
    }
    Ok(FormulaResult { factors, merged, value, is_zero })
}

pub fn eval_formula(pd: &ParabolicDatum, lam: &Weight, mu: &Weight) -> Result<FormulaResult> {
    combine(pd, lam, enumerate_factors(pd, lam, mu)?)
}

/// Quasi-roots `β = rα` (α ∈ Δ⁺, `ht(β) ≤ bound`) with `F_β(λ) = (λ+ρ, β) − ½(β, β)`.
pub fn quasi_root_zero_locus(pd: &ParabolicDatum, lam: &Weight, bound: usize) -> Vec<(Weight, Rat)> {
    let rs = pd.rs();
    let mut seen: BTreeMap<Weight, Rat> = BTreeMap::new();
    for (i, root) in rs.positive().iter().enumerate() {
        let ht: i64 = rs.positive_simple_coords(i).iter().sum();
        let mut r = 1;
        while r * ht <= bound as i64 {
            let beta = root.weight.scale(&int(r));
            let residual = rs.form(&(lam + rs.rho()), &beta) - rat(1, 2) * rs.form(&beta, &beta);
            seen.entry(beta).or_insert(residual);
            r += 1;
        }
    }
    seen.into_iter().collect()
}

/// Draws λ with prescribed Π_l pairings: `x + Σ t_i α_i` with the `t_i`
/// fixed by `⟨λ, α_i^∨⟩ = pairings[i]`.
pub fn with_pairings(pd: &ParabolicDatum, x: &Weight, pairings: &[Rat]) -> Result<Weight> {
    let rs = pd.rs();
    let roots = pd.pi_l_roots();
    if roots.is_empty() {
        return Ok(x.clone());
    }
    let cartan = RatMatrix::from_fn(roots.len(), roots.len(), |i, j| {
        rs.coroot_pairing(&rs.root(roots[j]).weight, rs.root(roots[i])).expect("even root")
    });
    let rhs: Vec<Rat> = roots
        .iter()
        .zip(pairings)
        .map(|(&r, p)| p - rs.coroot_pairing(x, rs.root(r)).expect("even root"))
        .collect();
    let t = cartan.solve(&rhs)?;
    let mut lam = x.clone();
    for (j, &r) in roots.iter().enumerate() {
        lam = &lam + &rs.root(r).weight.scale(&t[j]);
    }
    Ok(lam)
}

pub fn random_grid_weight(rng: &mut ChaCha8Rng, rank: usize) -> Weight {
    Weight((0..rank).map(|_| rat(rng.gen_range(-12..=12), rng.gen_range(1..=3))).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub lambda: Weight,
    pub brute: Rat,
    pub formula: Rat,
    pub ratio: Option<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub algebra: String,
    pub pi_l: Vec<usize>,
    pub eta: Weight,
    pub pairings: Vec<Rat>,
    pub samples: Vec<Sample>,
    /// Sampled λ on the formula's zero locus; each needs `brute = 0`.
    pub zero_samples: Vec<Sample>,
    pub constant_c: Option<Rat>,
    pub pass: bool,
    pub seed: u64,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    /// Test-only: add one to the exponent of the first factor.
    pub corrupt_exponent: bool,
    /// Fixed Π_l pairings instead of seeded draws.
    pub pairings: Option<Vec<Rat>>,
}

fn evaluate_pair(pd: &ParabolicDatum, lam: &Weight, eta: &Weight, corrupt: bool) -> Result<(Rat, FormulaResult)> {
    let mu = lam - eta;
    let mut factors = enumerate_factors(pd, lam, &mu)?;
    if corrupt {
        if let Some(f) = factors.first_mut() {
            f.exponent += 1;
        }
    }
    let formula = combine(pd, lam, factors)?;
    let ht = pd.qplus_coords(eta).map(|c| c.iter().sum::<i64>() as usize).unwrap_or(0);
    let mp = ParabolicVerma::new(pd, lam, ht)?;
    let brute = mp.brute_determinant(&mu)?;
    Ok((brute, formula))
}

pub fn verify_offset(pd: &ParabolicDatum, eta: &Weight, opts: &VerifyOptions) -> Result<VerificationReport> {
    pd.rs().check_weight(eta)?;
    if pd.qplus_coords(eta).is_none() {
        return Err(Error::Domain(format!("η = {eta} is not in Q⁺(Δ)")));
    }
    let k = opts.samples.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let pairings: Vec<Rat> = match &opts.pairings {
        Some(p) => p.clone(),
        None => pd.pi_l().iter().map(|_| int(rng.gen_range(0..=2))).collect(),
    };
    let mut samples = Vec::new();
    let mut zero_samples = Vec::new();
    let mut tried = Vec::new();
    let budget = 40 * k + 40;
    for _ in 0..budget {
        if samples.len() == k {
            break;
        }
        let x = random_grid_weight(&mut rng, pd.rs().rank());
        let lam = with_pairings(pd, &x, &pairings)?;
        if tried.contains(&lam) {
            continue;
        }
        tried.push(lam.clone());
        let (brute, formula) = evaluate_pair(pd, &lam, eta, opts.corrupt_exponent)?;
        let sample = Sample {
            ratio: (!formula.value.is_zero()).then(|| &brute / &formula.value),
            lambda: lam,
            brute,
            formula: formula.value.clone(),
        };
        if formula.is_zero {
            zero_samples.push(sample);
        } else {
            samples.push(sample);
        }
    }
    if samples.len() < k {
        return Err(Error::Sampling(format!(
            "only {} of {k} samples avoid the zero locus after {budget} draws",
            samples.len()
        )));
    }
    let first = samples[0].ratio.clone();
    let ratios_agree = samples.iter().all(|s| s.ratio == first);
    let nonzero = first.as_ref().is_some_and(|r| !r.is_zero());
    let zeros_ok = zero_samples.iter().all(|s| s.brute.is_zero());
    let pass = ratios_agree && nonzero && zeros_ok;
    Ok(VerificationReport {
        algebra: pd.rs().name(),
        pi_l: pd.pi_l().to_vec(),
        eta: eta.clone(),
        pairings,
        samples,
        zero_samples,
        constant_c: if ratios_agree { first } else { None },
        pass,
        seed: opts.seed,
    })
}

/// A direction `d` keeping Π_l pairings fixed with `(d, α) ≠ 0` on `Δ_n`.
pub fn generic_direction(pd: &ParabolicDatum, rng: &mut ChaCha8Rng) -> Result<Weight> {
    let zeros = vec![Rat::zero(); pd.pi_l().len()];
    for _ in 0..200 {
        let x = Weight((0..pd.rs().rank()).map(|_| int(rng.gen_range(-7..=7))).collect());
        let d = with_pairings(pd, &x, &zeros)?;
        if is_generic_direction(pd, &d) {
            return Ok(d);
        }
    }
    Err(Error::Sampling("no generic direction found".into()))
}

pub fn is_generic_direction(pd: &ParabolicDatum, d: &Weight) -> bool {
    let rs = pd.rs();
    let keeps_pairings = pd
        .pi_l_roots()
        .iter()
        .all(|&r| rs.coroot_pairing(d, rs.root(r)).map(|c| c.is_zero()).unwrap_or(false));
    keeps_pairings && pd.delta_n().iter().all(|&a| !rs.form(d, &rs.root(a).weight).is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub expected: i64,
    pub observed: Option<usize>,
    pub points: usize,
    pub pass: bool,
}

/// Interpolates `t ↦ brute(λ₀ + t·d; μ = λ₀ + t·d − η)` and compares its
/// degree with the formula's factor count.
pub fn degree_check(
    pd: &ParabolicDatum,
    eta: &Weight,
    base: &Weight,
    direction: &Weight,
    points: Option<usize>,
) -> Result<DegreeReport> {
    if !is_generic_direction(pd, direction) {
        return Err(Error::Domain(format!("direction {direction} is not generic")));
    }
    let expected = eval_formula(pd, base, &(base - eta))?.degree();
    if expected < 0 {
        return Err(Error::Consistency(format!("negative total degree {expected}")));
    }
    let n = points.unwrap_or(expected as usize + 2);
    if n < expected as usize + 2 {
        return Err(Error::Domain(format!("{n} points cannot certify degree {expected}")));
    }
    let ht = pd.qplus_coords(eta).map(|c| c.iter().sum::<i64>() as usize).unwrap_or(0);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for t in 0..n {
        let t = int(t as i64);
        let lam = base + &direction.scale(&t);
        let mp = ParabolicVerma::new(pd, &lam, ht)?;
        ys.push(mp.brute_determinant(&(&lam - eta))?);
        xs.push(t);
    }
    let observed = degree(&interpolate(&xs, &ys));
    Ok(DegreeReport { expected, observed, points: n, pass: observed == Some(expected as usize) })
}
