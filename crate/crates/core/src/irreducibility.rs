//! Irreducibility of `M_p(λ)`: the sets `Ψ_λ`, the classes `Δ^i`, the
//! exact character criteria and the simplified conditions M, M+ and M++.
//!
//! The criterion sums are kept as integer combinations of Verma characters
//! `ch M(ν)`, keyed by the exact highest weight `ν`. The isotropic terms
//! `χ^p_α(λ − α)` are infinite alternating series; each `(α, w)` pair
//! contributes a ladder `Σ_n (−1)^n det(w) ch M(w.(λ − α) − n·w(α))`.
//! Ladders with the same step on the same `Z`-line are summed exactly: if
//! their tail coefficient cancels, the remainder is a finite combination
//! that joins the finite part; otherwise the tail survives and the sum
//! cannot vanish. No decision depends on a truncation depth.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::catalog::{RootSystem, Weight};
use crate::character::{FormalChar, ParabolicDatum};
use crate::error::{Error, Result};
use crate::linalg::{int, Rat};
use crate::verma::ParabolicVerma;

/// `Ψ_λ` split into its non-isotropic part (with levels `n_α`) and its
/// isotropic part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiSets {
    pub noniso: Vec<(usize, i64)>,
    pub iso: Vec<usize>,
}

impl PsiSets {
    pub fn is_empty(&self) -> bool {
        self.noniso.is_empty() && self.iso.is_empty()
    }
}

/// `n_α = 2(λ + ρ, α) / (α, α)`
pub fn n_alpha(rs: &RootSystem, lam: &Weight, root: usize) -> Result<Rat> {
    rs.coroot_pairing(&(lam + rs.rho()), rs.root(root))
}

pub fn psi_sets(pd: &ParabolicDatum, lam: &Weight) -> Result<PsiSets> {
    pd.require_dominant(lam)?;
    let rs = pd.rs();
    let shifted = lam + rs.rho();
    let mut noniso = Vec::new();
    let mut iso = Vec::new();
    for &a in pd.delta_n() {
        if rs.is_isotropic(a) {
            if rs.form(&shifted, &rs.root(a).weight).is_zero() {
                iso.push(a);
            }
            continue;
        }
        let odd = rs.is_odd(a);
        if !odd && !rs.is_even_bar(a) {
            continue;
        }
        let n = n_alpha(rs, lam, a)?;
        if !n.is_integer() || !n.is_positive() {
            continue;
        }
        let n = i64::try_from(n.to_integer()).map_err(|_| Error::Resource("n_α overflows i64".into()))?;
        if !odd || n.is_odd() {
            noniso.push((a, n));
        }
    }
    Ok(PsiSets { noniso, iso })
}

/// One class `Δ^i ∩ Δ_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaClass {
    pub index: usize,
    pub members: Vec<usize>,
    pub span_witness: usize,
}

/// Π-coordinates of a positive root outside `Π_l`.
fn transverse(pd: &ParabolicDatum, root: usize) -> Vec<i64> {
    pd.rs()
        .positive_simple_coords(root)
        .iter()
        .enumerate()
        .map(|(j, &c)| if pd.pi_l().contains(&j) { 0 } else { c })
        .collect()
}

fn proportional(a: &[i64], b: &[i64]) -> bool {
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

/// `β ∈ QΔ_l + Qα` for positive roots; `QΔ_l` is the span of the simple
/// coordinates indexed by `Π_l`.
pub fn in_class_span(pd: &ParabolicDatum, alpha: usize, beta: usize) -> bool {
    proportional(&transverse(pd, alpha), &transverse(pd, beta))
}

pub fn delta_classes(pd: &ParabolicDatum) -> Vec<DeltaClass> {
    let mut classes: Vec<DeltaClass> = Vec::new();
    for &a in pd.delta_n() {
        match classes.iter_mut().find(|c| in_class_span(pd, c.span_witness, a)) {
            Some(c) => c.members.push(a),
            None => {
                let index = classes.len();
                classes.push(DeltaClass { index, members: vec![a], span_witness: a });
            }
        }
    }
    classes
}

/// Index of the class containing `root`.
pub fn class_of(classes: &[DeltaClass], root: usize) -> Option<usize> {
    classes.iter().position(|c| c.members.contains(&root))
}

/// Surviving tail `Σ_{n≥0} (−1)^n c · ch M(start − n·step)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ladder {
    pub start: Weight,
    pub step: Weight,
    pub coefficient: i64,
}

/// An exact integer combination of Verma characters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharSum {
    pub finite: BTreeMap<Weight, i64>,
    pub ladders: Vec<Ladder>,
}

impl CharSum {
    pub fn vanishes(&self) -> bool {
        self.finite.is_empty() && self.ladders.is_empty()
    }

    fn add(&mut self, nu: Weight, c: i64) {
        if c == 0 {
            return;
        }
        let next = self.finite.get(&nu).copied().unwrap_or(0) + c;
        if next == 0 {
            self.finite.remove(&nu);
        } else {
            self.finite.insert(nu, next);
        }
    }

    /// Coefficient of `ch M(ν)`.
    pub fn coefficient(&self, nu: &Weight) -> i64 {
        let mut c = self.finite.get(nu).copied().unwrap_or(0);
        for l in &self.ladders {
            let diff = &l.start - nu;
            let j = l.step.0.iter().position(|x| !x.is_zero()).expect("non-zero step");
            let n = &diff.0[j] / &l.step.0[j];
            if n.is_integer() && !n.is_negative() && l.step.scale(&n) == diff {
                c += if n.to_integer().is_even() { l.coefficient } else { -l.coefficient };
            }
        }
        c
    }

    /// Smallest `ht(λ − ν)` over the highest weights with non-zero
    /// coefficient. Such a `ν` is maximal in the support, so the character
    /// itself is non-zero at `e^ν`.
    ///
    /// Ladders on distinct lines meet in at most one point, so each ladder
    /// has a point of non-zero coefficient among its first
    /// `|ladders| + |finite| + 1` terms.
    pub fn leading_depth(&self, pd: &ParabolicDatum, lam: &Weight) -> Option<usize> {
        let reach = self.ladders.len() + self.finite.len() + 1;
        let mut candidates: Vec<Weight> = self.finite.keys().cloned().collect();
        for l in &self.ladders {
            for n in 0..reach {
                candidates.push(&l.start - &l.step.scale(&int(n as i64)));
            }
        }
        candidates
            .into_iter()
            .filter(|nu| self.coefficient(nu) != 0)
            .filter_map(|nu| pd.height(&(lam - &nu)).ok())
            .filter(|h| h.is_integer() && !h.is_negative())
            .filter_map(|h| usize::try_from(h.to_integer()).ok())
            .min()
    }

    /// Expansion into a truncated formal character.
    pub fn to_formal(&self, pd: &ParabolicDatum, lam: &Weight, depth: usize) -> FormalChar {
        let mut fc = FormalChar::new(lam.clone(), depth);
        for (nu, &c) in &self.finite {
            pd.add_verma(&mut fc, nu, c, crate::character::Over::Full);
        }
        for l in &self.ladders {
            let mut nu = l.start.clone();
            let mut c = l.coefficient;
            while pd.height(&(lam - &nu)).is_ok_and(|h| h <= int(depth as i64)) {
                pd.add_verma(&mut fc, &nu, c, crate::character::Over::Full);
                nu = &nu - &l.step;
                c = -c;
            }
        }
        fc
    }
}

/// Position of `x` on the line `base + Z·step`, with `base` canonical.
fn line_position(x: &Weight, step: &Weight) -> (Weight, i64) {
    let j = step.0.iter().position(|c| !c.is_zero()).expect("non-zero step");
    let t = (&x.0[j] / &step.0[j]).floor();
    let base = x - &step.scale(&t);
    (base, i64::try_from(t.to_integer()).expect("ladder position fits i64"))
}

/// Sums alternating ladders on one line. A ladder entered at position `t`
/// with sign `s` contributes `(−1)^{t−p} s` at every position `p ≤ t`.
/// Returns the non-zero coefficients above the lowest entry and, if it does
/// not cancel, the tail starting there.
fn collect_line(entries: &[(i64, i64)]) -> (Vec<(i64, i64)>, Option<(i64, i64)>) {
    let lo = entries.iter().map(|e| e.0).min().expect("non-empty");
    let hi = entries.iter().map(|e| e.0).max().expect("non-empty");
    let coeff = |p: i64| -> i64 {
        entries
            .iter()
            .filter(|&&(t, _)| t >= p)
            .map(|&(t, s)| if (t - p).is_even() { s } else { -s })
            .sum()
    };
    let finite = (lo + 1..=hi).map(|p| (p, coeff(p))).filter(|&(_, c)| c != 0).collect();
    let tail = coeff(lo);
    (finite, (tail != 0).then_some((lo, tail)))
}

/// `Σ_{α ∈ noniso} χ^p(s_α.λ) + Σ_{α ∈ iso} χ^p_α(λ − α)`, collected exactly.
pub fn criterion_sum(pd: &ParabolicDatum, lam: &Weight, noniso: &[(usize, i64)], iso: &[usize]) -> CharSum {
    let rs = pd.rs();
    let mut sum = CharSum::default();
    for &(a, n) in noniso {
        let reflected = lam - &rs.root(a).weight.scale(&int(n));
        for w in pd.weyl_group_l() {
            sum.add(pd.dot_action(w, &reflected), w.sign);
        }
    }
    // (step, base) -> [(position, sign)]
    let mut groups: BTreeMap<(Weight, Weight), Vec<(i64, i64)>> = BTreeMap::new();
    for &a in iso {
        let alpha = &rs.root(a).weight;
        let first = lam - alpha;
        for w in pd.weyl_group_l() {
            let step = w.apply(alpha);
            let (base, t) = line_position(&pd.dot_action(w, &first), &step);
            groups.entry((step, base)).or_default().push((t, w.sign));
        }
    }
    for ((step, base), entries) in groups {
        let (finite, tail) = collect_line(&entries);
        for (p, c) in finite {
            sum.add(&base + &step.scale(&int(p)), c);
        }
        if let Some((p, c)) = tail {
            sum.ladders.push(Ladder { start: &base + &step.scale(&int(p)), step, coefficient: c });
        }
    }
    // Steps are positive roots of Δ_n, so tails of distinct groups run to
    // distinct infinities and the finite part cannot absorb them.
    sum
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalCriterion {
    pub irreducible: bool,
    /// Decided by a non-empty `Ψ_iso` without evaluating the sum.
    pub shortcut: bool,
    pub sum: CharSum,
}

pub fn criterion_global(pd: &ParabolicDatum, lam: &Weight) -> Result<GlobalCriterion> {
    let psi = psi_sets(pd, lam)?;
    if !psi.iso.is_empty() {
        let sum = criterion_sum(pd, lam, &psi.noniso, &psi.iso);
        return Ok(GlobalCriterion { irreducible: false, shortcut: true, sum });
    }
    let sum = criterion_sum(pd, lam, &psi.noniso, &[]);
    Ok(GlobalCriterion { irreducible: sum.vanishes(), shortcut: false, sum })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCriterion {
    pub class: DeltaClass,
    pub psi: PsiSets,
    pub sum: CharSum,
    pub satisfied: bool,
}

/// The per-class sum for `Ψ^i_λ`, evaluated in full (no shortcut).
pub fn criterion_per_class(pd: &ParabolicDatum, lam: &Weight, class: &DeltaClass) -> Result<ClassCriterion> {
    let psi = psi_sets(pd, lam)?;
    let local = PsiSets {
        noniso: psi.noniso.iter().copied().filter(|(a, _)| class.members.contains(a)).collect(),
        iso: psi.iso.iter().copied().filter(|a| class.members.contains(a)).collect(),
    };
    let sum = criterion_sum(pd, lam, &local.noniso, &local.iso);
    Ok(ClassCriterion { class: class.clone(), satisfied: sum.vanishes(), psi: local, sum })
}

/// Positive even roots `β ∈ Δ^{i(α)}` with `(λ + ρ, β) = 0`.
fn vanishing_even_roots(pd: &ParabolicDatum, lam: &Weight, alpha: usize) -> Vec<usize> {
    let rs = pd.rs();
    let shifted = lam + rs.rho();
    (0..rs.positive().len())
        .filter(|&b| !rs.is_odd(b))
        .filter(|&b| rs.form(&shifted, &rs.root(b).weight).is_zero())
        .filter(|&b| pd.is_in_l(b) || in_class_span(pd, alpha, b))
        .collect()
}

fn reflect(rs: &RootSystem, alpha: usize, beta: &Weight) -> Weight {
    let a = &rs.root(alpha).weight;
    let c = int(2) * rs.form(beta, a) / rs.form(a, a);
    beta - &a.scale(&c)
}

fn in_delta_l(pd: &ParabolicDatum, w: &Weight) -> bool {
    let rs = pd.rs();
    rs.positive_index(w).or_else(|| rs.positive_index(&-w)).is_some_and(|i| pd.is_in_l(i))
}

pub fn condition_m(pd: &ParabolicDatum, lam: &Weight) -> Result<bool> {
    let psi = psi_sets(pd, lam)?;
    Ok(psi.iso.is_empty() && psi.noniso.iter().all(|&(a, _)| !vanishing_even_roots(pd, lam, a).is_empty()))
}

pub fn condition_m_plus(pd: &ParabolicDatum, lam: &Weight) -> Result<bool> {
    let psi = psi_sets(pd, lam)?;
    let rs = pd.rs();
    Ok(psi.iso.is_empty()
        && psi.noniso.iter().all(|&(a, _)| {
            vanishing_even_roots(pd, lam, a)
                .into_iter()
                .any(|b| in_delta_l(pd, &reflect(rs, a, &rs.root(b).weight)))
        }))
}

/// `(λ + ρ, α) ≠ 0` for every even root.
pub fn is_regular(pd: &ParabolicDatum, lam: &Weight) -> bool {
    let rs = pd.rs();
    let shifted = lam + rs.rho();
    (0..rs.positive().len()).all(|a| rs.is_odd(a) || !rs.form(&shifted, &rs.root(a).weight).is_zero())
}

/// `None` when `λ` is not regular.
pub fn condition_m_plus_plus(pd: &ParabolicDatum, lam: &Weight) -> Result<Option<bool>> {
    let psi = psi_sets(pd, lam)?;
    Ok(is_regular(pd, lam).then(|| psi.is_empty()))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Irreducible,
    Reducible,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Irreducible => "irreducible",
            Verdict::Reducible => "reducible",
        }
    }
}

/// Weight spaces `μ` with `ht(λ − μ) ≤ depth` whose Gram block is singular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteCheck {
    pub depth: usize,
    pub kernels: Vec<Weight>,
    pub agrees: bool,
}

pub fn brute_kernels(pd: &ParabolicDatum, lam: &Weight, depth: usize) -> Result<Vec<Weight>> {
    let mp = ParabolicVerma::new(pd, lam, depth)?;
    let mut out = Vec::new();
    for mu in pd.window(lam, depth) {
        let block = mp.gram_block(&mu)?;
        if block.basis.is_empty() {
            continue;
        }
        if block.matrix.det()?.is_zero() {
            out.push(mu);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrredReport {
    pub algebra: String,
    pub pi_l: Vec<usize>,
    pub lambda: Weight,
    pub verdict: Verdict,
    pub psi: PsiSets,
    pub global: GlobalCriterion,
    pub classes: Vec<ClassCriterion>,
    /// Depth of the highest term of the criterion sum, when it is non-zero.
    pub witness_depth: Option<usize>,
    pub m: bool,
    pub m_plus: bool,
    pub m_plus_plus: Option<bool>,
    pub brute_check: Option<BruteCheck>,
}

pub fn irreducibility_report(pd: &ParabolicDatum, lam: &Weight, brute_depth: Option<usize>) -> Result<IrredReport> {
    let psi = psi_sets(pd, lam)?;
    let global = criterion_global(pd, lam)?;
    let verdict = if global.irreducible { Verdict::Irreducible } else { Verdict::Reducible };
    let classes = delta_classes(pd)
        .iter()
        .map(|c| criterion_per_class(pd, lam, c))
        .collect::<Result<Vec<_>>>()?;
    let witness_depth = classes.iter().filter_map(|c| c.sum.leading_depth(pd, lam)).min();
    let brute_check = match brute_depth {
        None => None,
        Some(depth) => {
            let kernels = brute_kernels(pd, lam, depth)?;
            let agrees = match verdict {
                Verdict::Irreducible => kernels.is_empty(),
                Verdict::Reducible => witness_depth.is_none_or(|w| w > depth || !kernels.is_empty()),
            };
            Some(BruteCheck { depth, kernels, agrees })
        }
    };
    Ok(IrredReport {
        algebra: pd.rs().name(),
        pi_l: pd.pi_l().to_vec(),
        lambda: lam.clone(),
        verdict,
        m: condition_m(pd, lam)?,
        m_plus: condition_m_plus(pd, lam)?,
        m_plus_plus: condition_m_plus_plus(pd, lam)?,
        psi,
        global,
        classes,
        witness_depth,
        brute_check,
    })
}
