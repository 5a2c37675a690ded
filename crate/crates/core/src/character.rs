//! Truncated characters, partition functions and the Weyl group of the Levi.
//!
//! Everything is computed in Π-coordinates: since Π is linearly independent,
//! a weight difference `η` lies in `Q⁺(Δ)` iff its simple coordinates are
//! non-negative integers, and partitions of `η` are partitions of that
//! integer vector into the coordinate vectors of positive roots.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::Mutex;

use num_traits::{Signed, Zero};

use crate::catalog::{Root, RootSystem, Weight};
use crate::error::{Error, Result};
use crate::linalg::{int, Rat, RatMatrix};

pub const WEYL_GROUP_CAP: usize = 1_000_000;

/// Which positive roots a partition may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Over {
    Full,
    L,
    N,
}

#[derive(Clone, Debug)]
pub struct WeylElement {
    pub matrix: RatMatrix,
    pub sign: i64,
}

impl WeylElement {
    pub fn apply(&self, w: &Weight) -> Weight {
        Weight(self.matrix.mul_vec(w.coords()).expect("rank"))
    }
}

/// A partition `π`, as `(positive root index, multiplicity)` pairs with
/// non-zero multiplicity, listed in the order of the root set it was drawn from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    pub parts: Vec<(usize, u32)>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().map(|p| p.1).sum()
    }

    pub fn multiplicity(&self, root: usize) -> u32 {
        self.parts.iter().find(|p| p.0 == root).map_or(0, |p| p.1)
    }

    pub fn sum(&self, rs: &RootSystem) -> Weight {
        let mut w = Weight::zero(rs.rank());
        for &(r, m) in &self.parts {
            w = &w + &rs.root(r).weight.scale(&int(m as i64));
        }
        w
    }

    /// Root indices with repetition, in listing order.
    pub fn word(&self) -> Vec<usize> {
        self.parts.iter().flat_map(|&(r, m)| std::iter::repeat_n(r, m as usize)).collect()
    }
}

/// Finitely supported integer function on weights below `top`, truncated at
/// height `depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalChar {
    pub top: Weight,
    pub depth: usize,
    terms: BTreeMap<Weight, i64>,
}

impl FormalChar {
    pub fn new(top: Weight, depth: usize) -> Self {
        FormalChar { top, depth, terms: BTreeMap::new() }
    }

    pub fn coeff(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Weight, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.terms.get(&w).copied().unwrap_or(0) + c;
        if v == 0 {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, v);
        }
    }

    pub fn add_scaled(&mut self, other: &FormalChar, c: i64) {
        for (w, v) in &other.terms {
            self.add_term(w.clone(), c * v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.terms.iter()
    }
}

type MemoKey = (Over, Option<usize>, usize, Vec<i64>);

/// A parabolic subalgebra `p = l ⊕ n` chosen by `Π_l ⊂ Π ∩ Δ₀`.
#[derive(Debug)]
pub struct ParabolicDatum {
    rs: RootSystem,
    pi_l: Vec<usize>,
    delta_l_plus: Vec<usize>,
    delta_n: Vec<usize>,
    full: Vec<usize>,
    weyl: Vec<WeylElement>,
    memo: Mutex<HashMap<MemoKey, i64>>,
}

impl Clone for ParabolicDatum {
    fn clone(&self) -> Self {
        ParabolicDatum {
            rs: self.rs.clone(),
            pi_l: self.pi_l.clone(),
            delta_l_plus: self.delta_l_plus.clone(),
            delta_n: self.delta_n.clone(),
            full: self.full.clone(),
            weyl: self.weyl.clone(),
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl ParabolicDatum {
    /// `pi_l` holds positions in the Π order of [`RootSystem::simple_indices`].
    pub fn new(rs: RootSystem, pi_l: &[usize]) -> Result<Self> {
        let simple = rs.simple_indices().to_vec();
        let mut pi = pi_l.to_vec();
        pi.sort_unstable();
        pi.dedup();
        for &p in &pi {
            let Some(&root) = simple.get(p) else {
                return Err(Error::Spec(format!("Π_l index {p} out of range (|Π| = {})", simple.len())));
            };
            if rs.is_odd(root) {
                return Err(Error::Spec(format!(
                    "Π_l index {p} is the odd simple root {}",
                    rs.weight_label(&rs.root(root).weight)
                )));
            }
        }
        let in_l: Vec<bool> = (0..rs.positive().len())
            .map(|i| {
                rs.positive_simple_coords(i)
                    .iter()
                    .enumerate()
                    .all(|(j, &c)| c == 0 || pi.contains(&j))
            })
            .collect();
        let delta_l_plus: Vec<usize> = (0..in_l.len()).filter(|&i| in_l[i]).collect();
        let delta_n: Vec<usize> = (0..in_l.len()).filter(|&i| !in_l[i]).collect();
        let full = (0..in_l.len()).collect();
        let weyl = weyl_closure(&rs, &pi.iter().map(|&p| simple[p]).collect::<Vec<_>>(), WEYL_GROUP_CAP)?;
        Ok(ParabolicDatum { rs, pi_l: pi, delta_l_plus, delta_n, full, weyl, memo: Mutex::new(HashMap::new()) })
    }

    pub fn borel(rs: RootSystem) -> Result<Self> {
        Self::new(rs, &[])
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    pub fn pi_l(&self) -> &[usize] {
        &self.pi_l
    }

    /// `Π_l` as positive-root indices.
    pub fn pi_l_roots(&self) -> Vec<usize> {
        self.pi_l.iter().map(|&p| self.rs.simple_indices()[p]).collect()
    }

    pub fn delta_l_plus(&self) -> &[usize] {
        &self.delta_l_plus
    }

    pub fn delta_n(&self) -> &[usize] {
        &self.delta_n
    }

    pub fn is_in_l(&self, i: usize) -> bool {
        self.delta_l_plus.contains(&i)
    }

    /// `Δ̄_{n,0} = Δ_n ∩ Δ̄₀`
    pub fn delta_n_0bar(&self) -> Vec<usize> {
        self.delta_n.iter().copied().filter(|&i| self.rs.is_even_bar(i)).collect()
    }

    pub fn odd_nonisotropic(&self) -> Vec<usize> {
        self.delta_n.iter().copied().filter(|&i| self.rs.is_odd_nonisotropic(i)).collect()
    }

    pub fn isotropic(&self) -> Vec<usize> {
        self.delta_n.iter().copied().filter(|&i| self.rs.is_isotropic(i)).collect()
    }

    pub fn root_set(&self, over: Over) -> &[usize] {
        match over {
            Over::Full => &self.full,
            Over::L => &self.delta_l_plus,
            Over::N => &self.delta_n,
        }
    }

    pub fn weyl_group_l(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn height(&self, eta: &Weight) -> Result<Rat> {
        self.rs.height(eta)
    }

    pub fn dot_action(&self, w: &WeylElement, lam: &Weight) -> Weight {
        let rho = self.rs.rho();
        &w.apply(&(lam + rho)) - rho
    }

    pub fn is_dominant(&self, lam: &Weight) -> bool {
        self.pi_l_roots().iter().all(|&i| {
            let c = self.rs.coroot_pairing(lam, self.rs.root(i)).expect("even root");
            c.is_integer() && !c.is_negative()
        })
    }

    pub fn require_dominant(&self, lam: &Weight) -> Result<()> {
        self.rs.check_weight(lam)?;
        for i in self.pi_l_roots() {
            let c = self.rs.coroot_pairing(lam, self.rs.root(i))?;
            if !c.is_integer() || c.is_negative() {
                return Err(Error::Domain(format!(
                    "λ = {lam} is not dominant integral for Π_l: ⟨λ, {}^∨⟩ = {}",
                    self.rs.weight_label(&self.rs.root(i).weight),
                    crate::linalg::fmt_rat(&c)
                )));
            }
        }
        Ok(())
    }

    /// Non-negative integral Π-coordinates of `eta`, if `eta ∈ Q⁺(Δ)`.
    pub fn qplus_coords(&self, eta: &Weight) -> Option<Vec<i64>> {
        let c = self.rs.simple_coords(eta)?;
        c.iter()
            .map(|x| {
                if x.is_integer() && !x.is_negative() {
                    i64::try_from(x.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn weight_from_coords(&self, coords: &[i64]) -> Weight {
        let mut w = Weight::zero(self.rs.rank());
        for (j, &s) in self.rs.simple_indices().iter().enumerate() {
            if coords[j] != 0 {
                w = &w + &self.rs.root(s).weight.scale(&int(coords[j]));
            }
        }
        w
    }

    /// All `η ∈ Q⁺(Π)` with `ht(η) ≤ depth`, ordered by height then coordinates.
    pub fn qplus_window(&self, depth: usize) -> Vec<Vec<i64>> {
        let k = self.rs.simple_indices().len();
        let mut out = Vec::new();
        let mut cur = vec![0i64; k];
        fn rec(pos: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if pos == cur.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..=left {
                cur[pos] = v;
                rec(pos + 1, left - v, cur, out);
            }
            cur[pos] = 0;
        }
        rec(0, depth as i64, &mut cur, &mut out);
        out.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| b.cmp(a)));
        out
    }

    /// Weights `top - η` for `η` in the window.
    pub fn window(&self, top: &Weight, depth: usize) -> Vec<Weight> {
        self.qplus_window(depth).iter().map(|c| top - &self.weight_from_coords(c)).collect()
    }

    pub fn partition_count(&self, eta: &Weight, over: Over, excluded: Option<usize>) -> i64 {
        match self.qplus_coords(eta) {
            Some(c) => self.count_coords(over, excluded, 0, &c),
            None => 0,
        }
    }

    fn count_coords(&self, over: Over, excluded: Option<usize>, k: usize, c: &[i64]) -> i64 {
        if c.iter().all(|&x| x == 0) {
            return 1;
        }
        let roots = self.root_set(over);
        if k == roots.len() {
            return 0;
        }
        let key = (over, excluded, k, c.to_vec());
        if let Some(v) = self.memo.lock().expect("memo").get(&key) {
            return *v;
        }
        let r = roots[k];
        let total = if Some(r) == excluded {
            self.count_coords(over, excluded, k + 1, c)
        } else {
            let rc = self.rs.positive_simple_coords(r);
            let cap = if self.rs.is_odd(r) { 1 } else { i64::MAX };
            let mut rest = c.to_vec();
            let mut total = 0;
            let mut m = 0;
            loop {
                total += self.count_coords(over, excluded, k + 1, &rest);
                m += 1;
                if m > cap {
                    break;
                }
                for (x, y) in rest.iter_mut().zip(rc) {
                    *x -= y;
                }
                if rest.iter().any(|&x| x < 0) {
                    break;
                }
            }
            total
        };
        self.memo.lock().expect("memo").insert(key, total);
        total
    }

    /// All partitions of `eta` over the chosen root set, ordered
    /// lexicographically by multiplicity vector in the root-set order.
    pub fn enumerate_partitions(&self, eta: &Weight, over: Over) -> Vec<Partition> {
        let Some(c) = self.qplus_coords(eta) else { return Vec::new() };
        self.enumerate_with_order(&c, self.root_set(over))
    }

    /// As [`enumerate_partitions`](Self::enumerate_partitions) with an
    /// explicit root order.
    pub fn enumerate_with_order(&self, coords: &[i64], order: &[usize]) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enum_rec(order, 0, coords.to_vec(), &mut cur, &mut out);
        out
    }

    fn enum_rec(&self, order: &[usize], k: usize, c: Vec<i64>, cur: &mut Vec<(usize, u32)>, out: &mut Vec<Partition>) {
        if c.iter().all(|&x| x == 0) {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if k == order.len() {
            return;
        }
        let r = order[k];
        let rc = self.rs.positive_simple_coords(r);
        let cap = if self.rs.is_odd(r) { 1 } else { u32::MAX };
        let mut rest = c;
        let mut m = 0u32;
        loop {
            if m > 0 {
                cur.push((r, m));
            }
            self.enum_rec(order, k + 1, rest.clone(), cur, out);
            if m > 0 {
                cur.pop();
            }
            m += 1;
            if m > cap {
                break;
            }
            for (x, y) in rest.iter_mut().zip(rc) {
                *x -= y;
            }
            if rest.iter().any(|&x| x < 0) {
                break;
            }
        }
    }

    /// Adds `coef · ch M(hw)` (over the chosen root set) into `fc`.
    pub fn add_verma(&self, fc: &mut FormalChar, hw: &Weight, coef: i64, over: Over) {
        if coef == 0 {
            return;
        }
        for mu in self.window(&fc.top, fc.depth) {
            let p = self.partition_count(&(hw - &mu), over, None);
            fc.add_term(mu, coef * p);
        }
    }

    pub fn ch_verma(&self, lam: &Weight, depth: usize) -> FormalChar {
        let mut fc = FormalChar::new(lam.clone(), depth);
        self.add_verma(&mut fc, lam, 1, Over::Full);
        fc
    }

    pub fn ch_irrep_l(&self, lam: &Weight, depth: usize) -> Result<FormalChar> {
        self.require_dominant(lam)?;
        let mut fc = FormalChar::new(lam.clone(), depth);
        for w in &self.weyl {
            self.add_verma(&mut fc, &self.dot_action(w, lam), w.sign, Over::L);
        }
        Ok(fc)
    }

    pub fn ch_parabolic_verma(&self, lam: &Weight, depth: usize) -> Result<FormalChar> {
        self.require_dominant(lam)?;
        let mut fc = FormalChar::new(lam.clone(), depth);
        for w in &self.weyl {
            self.add_verma(&mut fc, &self.dot_action(w, lam), w.sign, Over::Full);
        }
        Ok(fc)
    }

    /// `𝔓_over · fc`, truncated to the window of `fc`.
    pub fn multiply_partition(&self, fc: &FormalChar, over: Over) -> FormalChar {
        let mut out = FormalChar::new(fc.top.clone(), fc.depth);
        for mu in self.window(&fc.top, fc.depth) {
            let mut acc = 0;
            for (nu, c) in fc.iter() {
                acc += c * self.partition_count(&(nu - &mu), over, None);
            }
            out.add_term(mu, acc);
        }
        out
    }

    /// `χ^p(ν)_μ = Σ_w det(w) P(w.ν − μ)`
    pub fn chi_p(&self, nu: &Weight, mu: &Weight) -> i64 {
        self.weyl
            .iter()
            .map(|w| w.sign * self.partition_count(&(&self.dot_action(w, nu) - mu), Over::Full, None))
            .sum()
    }

    /// `χ^p_α(ν)_μ = Σ_{n≥0} (−1)^n χ^p(ν − nα)_μ`
    pub fn chi_p_alpha(&self, nu: &Weight, alpha: usize, mu: &Weight) -> Result<i64> {
        if !self.rs.is_isotropic(alpha) {
            return Err(Error::Domain(format!(
                "{} is not an isotropic odd root",
                self.rs.weight_label(&self.rs.root(alpha).weight)
            )));
        }
        let a = &self.rs.root(alpha).weight;
        let bound = self.max_dot_height(nu, mu);
        let mut total = 0;
        let mut shifted = nu.clone();
        for n in 0..=bound {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            total += sign * self.chi_p(&shifted, mu);
            shifted = &shifted - a;
        }
        Ok(total)
    }

    /// `max_w ht(w.ν − μ)`, or −1 if every difference leaves the root span.
    pub fn max_dot_height(&self, nu: &Weight, mu: &Weight) -> i64 {
        self.weyl
            .iter()
            .filter_map(|w| self.rs.height(&(&self.dot_action(w, nu) - mu)).ok())
            .map(|h| h.floor().to_integer())
            .filter_map(|h| i64::try_from(h).ok())
            .max()
            .unwrap_or(-1)
    }

    /// Some `w ≠ e` with `w.ν = ν`.
    pub fn dot_stabilized(&self, nu: &Weight) -> bool {
        self.weyl.iter().any(|w| !is_identity(&w.matrix) && self.dot_action(w, nu) == *nu)
    }

    pub fn root(&self, i: usize) -> &Root {
        self.rs.root(i)
    }
}

fn is_identity(m: &RatMatrix) -> bool {
    *m == RatMatrix::identity(m.rows())
}

fn reflection(rs: &RootSystem, i: usize) -> RatMatrix {
    let a = &rs.root(i).weight;
    let n = rs.rank();
    let aa = rs.form(a, a);
    // s(λ) = λ − 2(λ,α)/(α,α) α ; (λ,α) = Σ_j λ_j (B α)_j
    let ba: Vec<Rat> = (0..n)
        .map(|j| (0..n).fold(Rat::zero(), |acc, k| acc + &rs.form_matrix()[(j, k)] * &a.0[k]))
        .collect();
    RatMatrix::from_fn(n, n, |r, c| {
        let delta = if r == c { int(1) } else { Rat::zero() };
        delta - int(2) * &a.0[r] * &ba[c] / &aa
    })
}

fn weyl_closure(rs: &RootSystem, gens: &[usize], cap: usize) -> Result<Vec<WeylElement>> {
    let n = rs.rank();
    let refl: Vec<RatMatrix> = gens.iter().map(|&g| reflection(rs, g)).collect();
    let mut seen: HashSet<Vec<Rat>> = HashSet::new();
    let id = RatMatrix::identity(n);
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(id.to_rows().concat());
    queue.push_back((id, 1i64));
    while let Some((m, sign)) = queue.pop_front() {
        for r in &refl {
            let next = r.mul(&m)?;
            let key = next.to_rows().concat();
            if seen.insert(key) {
                if seen.len() > cap {
                    return Err(Error::Resource(format!("W_l exceeds {cap} elements")));
                }
                queue.push_back((next, -sign));
            }
        }
        out.push(WeylElement { matrix: m, sign });
    }
    Ok(out)
}
