//! Root data and concrete realizations of gl(m|n), osp(M|2n) and D(2,1;α).
//!
//! A [`RootSystem`] owns everything downstream code needs about one algebra:
//! the positive system selected by a regular element, the simple roots Π,
//! the form on `h*`, ρ, and a normalized Chevalley-type basis with structure
//! constants and the anti-involution σ.
//!
//! Basis convention: index `k < rank` is the Cartan element `H_k` dual to the
//! k-th coordinate, `rank + 2i` is `x_{α_i}` and `rank + 2i + 1` is
//! `x_{-α_i}` for the i-th positive root. Root vectors are normalized so that
//! σ(x_α) = x_{-α} is an anti-automorphism over ℚ and
//! `[x_α, x_{-α}] = k_α h_α`, with `k_α = 1` on simple roots.

mod raw;
mod weight;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, fmt_rat, int, rat, Rat, RatMatrix};
use raw::RawAlgebra;

pub use weight::{Parity, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gl,
    Osp,
    D21a,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Family::Gl),
            "osp" => Ok(Family::Osp),
            "d21a" | "d21" => Ok(Family::D21a),
            other => Err(Error::Spec(format!("unknown algebra family `{other}` (expected gl, osp or d21a)"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Gl => "gl",
            Family::Osp => "osp",
            Family::D21a => "d21a",
        }
    }
}

/// Which algebra to build. For osp, `m` is `M` and `n` is half the symplectic
/// dimension, so `osp(3|2)` is `m = 3, n = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub alpha: Option<Rat>,
}

impl AlgebraSpec {
    pub fn gl(m: usize, n: usize) -> Self {
        AlgebraSpec { family: Family::Gl, m, n, alpha: None }
    }

    pub fn osp(big_m: usize, n: usize) -> Self {
        AlgebraSpec { family: Family::Osp, m: big_m, n, alpha: None }
    }

    pub fn d21(alpha: Rat) -> Self {
        AlgebraSpec { family: Family::D21a, m: 0, n: 0, alpha: Some(alpha) }
    }

    pub fn validate(&self) -> Result<()> {
        match self.family {
            Family::Gl if self.m == 0 || self.n == 0 => {
                Err(Error::Spec(format!("gl(m|n) requires m, n >= 1, got m={}, n={}", self.m, self.n)))
            }
            Family::Osp if self.m == 0 || self.n == 0 => {
                Err(Error::Spec(format!("osp(M|2n) requires M, n >= 1, got M={}, n={}", self.m, self.n)))
            }
            Family::D21a => match &self.alpha {
                None => Err(Error::Spec("d21a requires an alpha parameter".into())),
                Some(a) if a.is_zero() || *a == -Rat::one() => {
                    Err(Error::Spec(format!("D(2,1;α) requires α ∉ {{0, -1}}, got {}", fmt_rat(a))))
                }
                Some(_) => Ok(()),
            },
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::Gl => format!("gl({}|{})", self.m, self.n),
            Family::Osp => format!("osp({}|{})", self.m, 2 * self.n),
            Family::D21a => {
                format!("D(2,1;{})", self.alpha.as_ref().map(fmt_rat).unwrap_or_default())
            }
        }
    }

    fn coordinate_labels(&self) -> Vec<String> {
        let eps = |k: usize| (1..=k).map(|i| format!("ε{i}"));
        let del = |k: usize| (1..=k).map(|i| format!("δ{i}"));
        match self.family {
            Family::Gl => eps(self.m).chain(del(self.n)).collect(),
            Family::Osp => eps(self.m / 2).chain(del(self.n)).collect(),
            Family::D21a => eps(3).collect(),
        }
    }

    fn realize(&self) -> Result<RawAlgebra> {
        match self.family {
            Family::Gl => raw::general_linear(self.m, self.n),
            Family::Osp => raw::orthosymplectic(self.m, self.n),
            Family::D21a => raw::d21(self.alpha.as_ref().expect("validated")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Positivity {
    /// ε₁ > … > δ₁ > …, realized by `h_k = 2^{rank-1-k}`.
    #[default]
    Standard,
    Regular(Vec<Rat>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub weight: Weight,
    pub parity: Parity,
    /// Basis index of `x_α` in the normalized realization.
    pub vector_index: usize,
}

/// Sparse element of the realization, keyed by basis index.
pub type Element = BTreeMap<usize, Rat>;

#[derive(Clone, Debug)]
pub struct RootSystem {
    spec: AlgebraSpec,
    even_only: bool,
    labels: Vec<String>,
    form: RatMatrix,
    regular: Vec<Rat>,
    positive: Vec<Root>,
    simple: Vec<usize>,
    simple_weights: Vec<Weight>,
    positive_coords: Vec<Vec<i64>>,
    solver_rows: Vec<usize>,
    solver: RatMatrix,
    rho: Weight,
    root_index: HashMap<Weight, usize>,
    elem_weights: Vec<Weight>,
    elem_parities: Vec<Parity>,
    table: Vec<Vec<Vec<(usize, Rat)>>>,
    elem_form: RatMatrix,
    norms: Vec<Rat>,
}

pub fn build_algebra(spec: &AlgebraSpec, positivity: &Positivity) -> Result<RootSystem> {
    RootSystem::build(spec, positivity)
}

struct RawBracket<'a>(&'a RawAlgebra);

impl RawBracket<'_> {
    fn bracket(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::new();
        for (a, ca) in x {
            for (b, cb) in y {
                for (k, c) in &self.0.table[*a][*b] {
                    *out.entry(*k).or_insert_with(Rat::zero) += ca * cb * c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn form(&self, x: &Element, y: &Element) -> Rat {
        let mut acc = Rat::zero();
        for (a, ca) in x {
            for (b, cb) in y {
                acc += ca * cb * &self.0.form[(*a, *b)];
            }
        }
        acc
    }
}

fn single(idx: usize, c: Rat) -> Element {
    let mut e = Element::new();
    e.insert(idx, c);
    e
}

fn as_multiple(e: &Element) -> Option<(usize, Rat)> {
    if e.len() == 1 {
        e.iter().next().map(|(k, c)| (*k, c.clone()))
    } else {
        None
    }
}

impl RootSystem {
    pub fn build(spec: &AlgebraSpec, positivity: &Positivity) -> Result<RootSystem> {
        spec.validate()?;
        let raw = spec.realize()?;
        Self::from_raw(spec.clone(), false, raw, positivity)
    }

    /// The even subalgebra `g_0` with the same Cartan and positivity, run
    /// through the same machinery. Its odd root set is empty.
    pub fn even_part(&self) -> Result<RootSystem> {
        let raw = self.spec.realize()?.even_part();
        Self::from_raw(self.spec.clone(), true, raw, &Positivity::Regular(self.regular.clone()))
    }

    fn from_raw(spec: AlgebraSpec, even_only: bool, raw: RawAlgebra, positivity: &Positivity) -> Result<RootSystem> {
        let rank = raw.rank;
        let cartan_form = raw.form.select(&raw.cartan, &raw.cartan);
        let form = cartan_form.inverse().map_err(|_| Error::Consistency("degenerate form on h".into()))?;

        let regular = match positivity {
            Positivity::Standard => (0..rank).map(|k| int(1i64 << (rank - 1 - k))).collect(),
            Positivity::Regular(h) => {
                if h.len() != rank {
                    return Err(Error::Dimension(format!(
                        "regular element has {} coordinates, rank is {rank}",
                        h.len()
                    )));
                }
                h.clone()
            }
        };

        let mut seen = HashMap::new();
        let mut positive = Vec::new();
        for (idx, w) in raw.weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            if seen.insert(w.clone(), idx).is_some() {
                return Err(Error::Consistency(format!("root space at {w} is not one-dimensional")));
            }
            let value = dot(w.coords(), &regular);
            if value.is_zero() {
                return Err(Error::NotRegular(format!("root {w} vanishes on the positivity element")));
            }
            if value.is_positive() {
                positive.push(Root { weight: w.clone(), parity: raw.parities[idx], vector_index: idx });
            }
        }

        let is_positive = |w: &Weight| positive.iter().any(|r| &r.weight == w);
        let mut simple: Vec<Weight> = positive
            .iter()
            .filter(|g| !positive.iter().any(|a| is_positive(&(&g.weight - &a.weight))))
            .map(|g| g.weight.clone())
            .collect();
        simple.sort_by(|a, b| b.cmp(a));

        let simple_matrix = RatMatrix::from_fn(rank, simple.len(), |i, j| simple[j].0[i].clone());
        let solver_rows = simple_matrix.independent_rows();
        if solver_rows.len() != simple.len() {
            return Err(Error::Consistency("simple roots are linearly dependent".into()));
        }
        let solver = simple_matrix
            .select(&solver_rows, &(0..simple.len()).collect::<Vec<_>>())
            .inverse()?;

        let mut rs = RootSystem {
            labels: spec.coordinate_labels(),
            spec,
            even_only,
            form,
            regular,
            positive: Vec::new(),
            simple: Vec::new(),
            simple_weights: simple.clone(),
            positive_coords: Vec::new(),
            solver_rows,
            solver,
            rho: Weight::zero(rank),
            root_index: HashMap::new(),
            elem_weights: Vec::new(),
            elem_parities: Vec::new(),
            table: Vec::new(),
            elem_form: RatMatrix::zeros(0, 0),
            norms: Vec::new(),
        };

        let mut keyed: Vec<(i64, Vec<i64>, Root)> = positive
            .into_iter()
            .map(|r| {
                let c = rs.integral_coords(&r.weight).expect("positive root in root lattice");
                (c.iter().sum(), c, r)
            })
            .collect();
        if keyed.iter().any(|(_, c, _)| c.iter().any(|&x| x < 0)) {
            return Err(Error::Consistency("positive root with negative simple coordinates".into()));
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
        rs.positive_coords = keyed.iter().map(|k| k.1.clone()).collect();
        rs.positive = keyed.into_iter().map(|k| k.2).collect();
        rs.simple = simple
            .iter()
            .map(|s| rs.positive.iter().position(|r| &r.weight == s).expect("simple root is positive"))
            .collect();
        for (i, r) in rs.positive.iter().enumerate() {
            rs.root_index.insert(r.weight.clone(), i);
        }

        let mut rho = Weight::zero(rank);
        for r in &rs.positive {
            rho = if r.parity.is_odd() { &rho - &r.weight } else { &rho + &r.weight };
        }
        rs.rho = rho.scale(&rat(1, 2));

        rs.normalize(&raw)?;
        Ok(rs)
    }

    /// Chevalley-type normalization by propagation from the simple roots.
    fn normalize(&mut self, raw: &RawAlgebra) -> Result<()> {
        let rank = self.rank();
        let np = self.positive.len();
        let rb = RawBracket(raw);
        let raw_index = raw.index_of_weight();
        // (raw index, scale) of each normalized basis element
        let mut scaled: Vec<(usize, Rat)> = raw.cartan.iter().map(|&c| (c, Rat::one())).collect();
        let mut pos_vec: Vec<Option<Element>> = vec![None; np];
        let mut neg_vec: Vec<Option<Element>> = vec![None; np];

        for i in 0..np {
            let w = self.positive[i].weight.clone();
            if self.simple.contains(&i) {
                let xp = single(raw_index[&w], Rat::one());
                let xm = single(raw_index[&-&w], Rat::one());
                let pairing = rb.form(&xp, &xm);
                if pairing.is_zero() {
                    return Err(Error::Consistency(format!("root spaces ±{w} are not paired")));
                }
                pos_vec[i] = Some(xp);
                neg_vec[i] = Some(single(raw_index[&-&w], pairing.recip()));
                continue;
            }
            let mut found = None;
            for &s in &self.simple {
                let rest = &w - &self.positive[s].weight;
                let j = if rest == self.positive[s].weight {
                    Some(s)
                } else {
                    self.root_index.get(&rest).copied()
                };
                let Some(j) = j else { continue };
                let (Some(xs), Some(xj)) = (&pos_vec[s], &pos_vec[j]) else { continue };
                let xp = rb.bracket(xs, xj);
                if xp.is_empty() {
                    continue;
                }
                let xm = rb.bracket(neg_vec[j].as_ref().unwrap(), neg_vec[s].as_ref().unwrap());
                if xm.is_empty() {
                    return Err(Error::Consistency(format!("σ propagation fails at {w}")));
                }
                found = Some((xp, xm));
                break;
            }
            let (xp, xm) = found.ok_or_else(|| {
                Error::Consistency(format!("root {w} is not generated by simple root vectors"))
            })?;
            pos_vec[i] = Some(xp);
            neg_vec[i] = Some(xm);
        }

        let mut norms = Vec::with_capacity(np);
        for i in 0..np {
            let xp = pos_vec[i].as_ref().unwrap();
            let xm = neg_vec[i].as_ref().unwrap();
            norms.push(rb.form(xp, xm));
            scaled.push(as_multiple(xp).ok_or_else(|| Error::Consistency("root vector not a monomial".into()))?);
            scaled.push(as_multiple(xm).ok_or_else(|| Error::Consistency("root vector not a monomial".into()))?);
        }

        let dim = scaled.len();
        let raw_to_new: HashMap<usize, usize> = scaled.iter().enumerate().map(|(k, (r, _))| (*r, k)).collect();
        if raw_to_new.len() != raw.dim() || dim != raw.dim() {
            return Err(Error::Consistency("normalized basis does not span the algebra".into()));
        }
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let (ra, ca) = &scaled[a];
                let (rb_, cb) = &scaled[b];
                let mut entry: Vec<(usize, Rat)> = raw.table[*ra][*rb_]
                    .iter()
                    .map(|(k, t)| {
                        let nk = raw_to_new[k];
                        (nk, ca * cb * t / &scaled[nk].1)
                    })
                    .collect();
                entry.sort_by_key(|e| e.0);
                table[a][b] = entry;
            }
        }
        self.elem_form = RatMatrix::from_fn(dim, dim, |a, b| {
            &scaled[a].1 * &scaled[b].1 * &raw.form[(scaled[a].0, scaled[b].0)]
        });
        self.elem_weights = scaled.iter().map(|(r, _)| raw.weights[*r].clone()).collect();
        self.elem_parities = scaled.iter().map(|(r, _)| raw.parities[*r]).collect();
        for (i, r) in self.positive.iter_mut().enumerate() {
            r.vector_index = rank + 2 * i;
        }
        self.table = table;
        self.norms = norms;
        Ok(())
    }

    fn integral_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        let c = self.simple_coords(w)?;
        c.iter()
            .map(|x| if x.is_integer() { i64::try_from(x.to_integer()).ok() } else { None })
            .collect()
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn name(&self) -> String {
        if self.even_only {
            format!("{}_0", self.spec.name())
        } else {
            self.spec.name()
        }
    }

    pub fn is_even_only(&self) -> bool {
        self.even_only
    }

    pub fn rank(&self) -> usize {
        self.form.rows()
    }

    pub fn coordinate_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn form_matrix(&self) -> &RatMatrix {
        &self.form
    }

    pub fn regular_element(&self) -> &[Rat] {
        &self.regular
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::Dimension(format!(
                "weight {w} has {} coordinates, rank is {}",
                w.rank(),
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn form(&self, x: &Weight, y: &Weight) -> Rat {
        assert_eq!(x.rank(), self.rank(), "weight rank mismatch");
        assert_eq!(y.rank(), self.rank(), "weight rank mismatch");
        let mut acc = Rat::zero();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let f = &self.form[(i, j)];
                if !f.is_zero() {
                    acc += f * &x.0[i] * &y.0[j];
                }
            }
        }
        acc
    }

    pub fn try_form(&self, x: &Weight, y: &Weight) -> Result<Rat> {
        self.check_weight(x)?;
        self.check_weight(y)?;
        Ok(self.form(x, y))
    }

    pub fn positive(&self) -> &[Root] {
        &self.positive
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.positive[i]
    }

    /// Indices into [`positive`](Self::positive), in the printed Π order.
    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_roots(&self) -> Vec<&Root> {
        self.simple.iter().map(|&i| &self.positive[i]).collect()
    }

    pub fn positive_index(&self, w: &Weight) -> Option<usize> {
        self.root_index.get(w).copied()
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.root_index.contains_key(w) || self.root_index.contains_key(&-w)
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.positive[i].parity.is_odd()
    }

    pub fn is_isotropic(&self, i: usize) -> bool {
        let w = &self.positive[i].weight;
        self.is_odd(i) && self.form(w, w).is_zero()
    }

    /// `α ∈ Δ̄₀`: even and `α/2` is not a root.
    pub fn is_even_bar(&self, i: usize) -> bool {
        !self.is_odd(i) && !self.is_root(&self.positive[i].weight.scale(&rat(1, 2)))
    }

    /// `α ∈ Δ₁⁺ \ Δ̄₁⁺`: odd with `2α` a root.
    pub fn is_odd_nonisotropic(&self, i: usize) -> bool {
        self.is_odd(i) && !self.is_isotropic(i)
    }

    /// Coordinates over Π, if `w` lies in the span of the roots.
    pub fn simple_coords(&self, w: &Weight) -> Option<Vec<Rat>> {
        if w.rank() != self.rank() {
            return None;
        }
        let b: Vec<Rat> = self.solver_rows.iter().map(|&r| w.0[r].clone()).collect();
        let c = self.solver.mul_vec(&b).ok()?;
        let mut back = Weight::zero(self.rank());
        for (j, s) in self.simple_weights.iter().enumerate() {
            back = &back + &s.scale(&c[j]);
        }
        (back == *w).then_some(c)
    }

    pub fn positive_simple_coords(&self, i: usize) -> &[i64] {
        &self.positive_coords[i]
    }

    pub fn height(&self, w: &Weight) -> Result<Rat> {
        self.simple_coords(w)
            .map(|c| c.into_iter().fold(Rat::zero(), |a, b| a + b))
            .ok_or_else(|| Error::Domain(format!("{w} is not in the span of the roots")))
    }

    /// `μ ≤ λ` in the order defined by Q⁺(Π).
    pub fn leq(&self, mu: &Weight, lam: &Weight) -> bool {
        match self.simple_coords(&(lam - mu)) {
            Some(c) => c.iter().all(|x| x.is_integer() && !x.is_negative()),
            None => false,
        }
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn weyl_vector(&self) -> Weight {
        self.rho.clone()
    }

    pub fn coroot_pairing(&self, lam: &Weight, alpha: &Root) -> Result<Rat> {
        let aa = self.form(&alpha.weight, &alpha.weight);
        if aa.is_zero() {
            return Err(Error::Isotropic(format!("root {} is isotropic", alpha.weight)));
        }
        Ok(int(2) * self.form(lam, &alpha.weight) / aa)
    }

    /// `h_w ∈ h` with `⟨λ, h_w⟩ = (λ, w)`.
    pub fn h_of(&self, w: &Weight) -> Element {
        let mut e = Element::new();
        for k in 0..self.rank() {
            let c = (0..self.rank()).fold(Rat::zero(), |acc, j| acc + &self.form[(k, j)] * &w.0[j]);
            if !c.is_zero() {
                e.insert(k, c);
            }
        }
        e
    }

    /// `k_α` with `[x_α, x_{-α}] = k_α h_α`.
    pub fn norm(&self, i: usize) -> &Rat {
        &self.norms[i]
    }

    pub fn weight_label(&self, w: &Weight) -> String {
        let mut s = String::new();
        for (c, name) in w.0.iter().zip(&self.labels) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if s.is_empty() { "" } else { "+" };
            let mag = c.abs();
            let coef = if mag.is_one() { String::new() } else { fmt_rat(&mag) };
            s.push_str(&format!("{sign}{coef}{name}"));
        }
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }

    // --- realization ---

    pub fn dim(&self) -> usize {
        self.elem_weights.len()
    }

    pub fn pos_elem(&self, i: usize) -> usize {
        self.rank() + 2 * i
    }

    pub fn neg_elem(&self, i: usize) -> usize {
        self.rank() + 2 * i + 1
    }

    pub fn is_cartan(&self, a: usize) -> bool {
        a < self.rank()
    }

    pub fn elem_weight(&self, a: usize) -> &Weight {
        &self.elem_weights[a]
    }

    pub fn elem_parity(&self, a: usize) -> Parity {
        self.elem_parities[a]
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Rat)] {
        &self.table[a][b]
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::new();
        for (a, ca) in x {
            for (b, cb) in y {
                for (k, c) in &self.table[*a][*b] {
                    *out.entry(*k).or_insert_with(Rat::zero) += ca * cb * c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn elem_form(&self, x: &Element, y: &Element) -> Rat {
        let mut acc = Rat::zero();
        for (a, ca) in x {
            for (b, cb) in y {
                acc += ca * cb * &self.elem_form[(*a, *b)];
            }
        }
        acc
    }

    pub fn sigma_basis(&self, a: usize) -> usize {
        if self.is_cartan(a) {
            a
        } else {
            let r = a - self.rank();
            self.rank() + (r ^ 1)
        }
    }

    pub fn sigma(&self, x: &Element) -> Element {
        x.iter().map(|(a, c)| (self.sigma_basis(*a), c.clone())).collect()
    }

    pub fn basis_element(&self, a: usize) -> Element {
        single(a, Rat::one())
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {}, {} positive roots)", self.name(), self.rank(), self.positive.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn all_systems() -> Vec<RootSystem> {
        let std = Positivity::Standard;
        vec![
            build_algebra(&AlgebraSpec::gl(1, 1), &std).unwrap(),
            build_algebra(&AlgebraSpec::gl(2, 1), &std).unwrap(),
            build_algebra(&AlgebraSpec::gl(2, 2), &std).unwrap(),
            build_algebra(&AlgebraSpec::osp(1, 1), &std).unwrap(),
            build_algebra(&AlgebraSpec::osp(2, 1), &std).unwrap(),
            build_algebra(&AlgebraSpec::osp(3, 1), &std).unwrap(),
            build_algebra(&AlgebraSpec::osp(3, 1), &Positivity::Regular(vec![int(1), int(2)])).unwrap(),
            build_algebra(&AlgebraSpec::osp(4, 1), &std).unwrap(),
            build_algebra(&AlgebraSpec::osp(1, 2), &std).unwrap(),
            build_algebra(&AlgebraSpec::d21(rat(1, 2)), &std).unwrap(),
            build_algebra(&AlgebraSpec::d21(rat(-3, 1)), &std).unwrap(),
        ]
    }

    fn w(c: &[i64]) -> Weight {
        Weight::from_i64(c)
    }

    #[test]
    fn gl11_standard() {
        let rs = build_algebra(&AlgebraSpec::gl(1, 1), &Positivity::Standard).unwrap();
        assert_eq!(rs.positive().len(), 1);
        assert_eq!(rs.root(0).weight, w(&[1, -1]));
        assert!(rs.is_isotropic(0));
        assert_eq!(rs.weyl_vector(), w(&[1, -1]).scale(&rat(-1, 2)));
        assert_eq!(rs.form(&w(&[1, -1]), &w(&[1, -1])), int(0));
    }

    #[test]
    fn gl21_standard() {
        let rs = build_algebra(&AlgebraSpec::gl(2, 1), &Positivity::Standard).unwrap();
        let even: Vec<_> = rs.positive().iter().filter(|r| !r.parity.is_odd()).map(|r| r.weight.clone()).collect();
        let mut odd: Vec<_> = rs.positive().iter().filter(|r| r.parity.is_odd()).map(|r| r.weight.clone()).collect();
        odd.sort();
        assert_eq!(even, vec![w(&[1, -1, 0])]);
        assert_eq!(odd, vec![w(&[0, 1, -1]), w(&[1, 0, -1])]);
        assert!((0..3).filter(|&i| rs.is_odd(i)).all(|i| rs.is_isotropic(i)));
        assert_eq!(rs.weyl_vector(), w(&[0, -1, 1]));
        assert_eq!(rs.height(&w(&[1, 0, -1])).unwrap(), int(2));
        assert_eq!(rs.height(&Weight::zero(3)).unwrap(), int(0));
    }

    #[test]
    fn osp12_standard() {
        let rs = build_algebra(&AlgebraSpec::osp(1, 1), &Positivity::Standard).unwrap();
        assert_eq!(rs.positive().len(), 2);
        assert_eq!(rs.root(0).weight, w(&[1]));
        assert!(rs.is_odd_nonisotropic(0));
        assert_eq!(rs.root(1).weight, w(&[2]));
        assert!(!rs.is_even_bar(1));
        assert_eq!(rs.weyl_vector(), Weight(vec![rat(1, 2)]));
        assert_eq!(rs.coroot_pairing(&w(&[1]), rs.root(0)).unwrap(), int(2));
    }

    #[test]
    fn osp32_simple_systems() {
        let std = build_algebra(&AlgebraSpec::osp(3, 1), &Positivity::Standard).unwrap();
        let pi: Vec<_> = std.simple_roots().iter().map(|r| r.weight.clone()).collect();
        assert_eq!(pi, vec![w(&[1, -1]), w(&[0, 1])]);
        let alt = build_algebra(&AlgebraSpec::osp(3, 1), &Positivity::Regular(vec![int(1), int(2)])).unwrap();
        let pi: Vec<_> = alt.simple_roots().iter().map(|r| r.weight.clone()).collect();
        assert_eq!(pi, vec![w(&[1, 0]), w(&[-1, 1])]);
    }

    #[test]
    fn osp_dimensions() {
        for (m, n) in [(1, 1), (2, 1), (3, 1), (4, 1), (1, 2), (5, 1)] {
            let rs = build_algebra(&AlgebraSpec::osp(m, n), &Positivity::Standard).unwrap();
            let p = 2 * n;
            let even = m * (m - 1) / 2 + p * (p + 1) / 2;
            assert_eq!(rs.dim(), even + m * p, "osp({m}|{p})");
        }
    }

    #[test]
    fn d21_roots_and_form() {
        let rs = build_algebra(&AlgebraSpec::d21(rat(1, 2)), &Positivity::Standard).unwrap();
        assert_eq!(rs.dim(), 17);
        assert_eq!(rs.positive().len(), 7);
        let diag: Vec<Rat> = (0..3).map(|i| rs.form_matrix()[(i, i)].clone()).collect();
        assert_eq!(diag, vec![int(1), rat(1, 2), rat(-3, 2)]);
        assert!((0..7).filter(|&i| rs.is_odd(i)).all(|i| rs.is_isotropic(i)));
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(AlgebraSpec::gl(0, 1).validate(), Err(Error::Spec(_))));
        assert!(matches!(AlgebraSpec::osp(1, 0).validate(), Err(Error::Spec(_))));
        assert!(matches!(AlgebraSpec::d21(int(-1)).validate(), Err(Error::Spec(_))));
        assert!(matches!(AlgebraSpec::d21(int(0)).validate(), Err(Error::Spec(_))));
        assert!(AlgebraSpec::d21(int(1)).validate().is_ok());
        let bad = Positivity::Regular(vec![int(1), int(1)]);
        assert!(matches!(build_algebra(&AlgebraSpec::gl(1, 1), &bad), Err(Error::NotRegular(_))));
        assert!(Family::parse("e8").is_err());
    }

    #[test]
    fn form_conventions() {
        let rs = build_algebra(&AlgebraSpec::gl(2, 2), &Positivity::Standard).unwrap();
        assert_eq!(rs.form(&w(&[1, 0, 0, 0]), &w(&[1, 0, 0, 0])), int(1));
        assert_eq!(rs.form(&w(&[1, 0, 0, 0]), &w(&[0, 0, 1, 0])), int(0));
        assert_eq!(rs.form(&w(&[0, 0, 1, 0]), &w(&[0, 0, 1, 0])), int(-1));
        let osp = build_algebra(&AlgebraSpec::osp(4, 1), &Positivity::Standard).unwrap();
        assert_eq!(osp.form(&w(&[0, 1, 0]), &w(&[0, 1, 0])), int(1));
        assert_eq!(osp.form(&w(&[0, 0, 1]), &w(&[0, 0, 1])), int(-1));
    }

    #[test]
    fn h_alpha_matches_form_and_bracket() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for rs in all_systems() {
            for (i, r) in rs.positive().iter().enumerate() {
                let b = rs.bracket(&rs.basis_element(rs.pos_elem(i)), &rs.basis_element(rs.neg_elem(i)));
                let h: Element = rs.h_of(&r.weight).into_iter().map(|(k, c)| (k, c * rs.norm(i))).collect();
                assert_eq!(b, h, "{} root {}", rs.name(), r.weight);
                assert!(!rs.norm(i).is_zero());
                for _ in 0..20 {
                    let lam = Weight((0..rs.rank()).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect());
                    let pairing = rs
                        .h_of(&r.weight)
                        .iter()
                        .fold(Rat::zero(), |acc, (k, c)| acc + c * &lam.0[*k]);
                    assert_eq!(pairing, rs.form(&lam, &r.weight));
                }
            }
            for &s in rs.simple_indices() {
                assert!(rs.norm(s).is_one());
            }
        }
    }

    #[test]
    fn super_jacobi_and_invariance() {
        for rs in all_systems() {
            let d = rs.dim();
            let e = |a| rs.basis_element(a);
            for a in 0..d {
                for b in 0..d {
                    let ab = rs.bracket(&e(a), &e(b));
                    let ba = rs.bracket(&e(b), &e(a));
                    let s = int(rs.elem_parity(a).swap_sign(rs.elem_parity(b)));
                    let neg: Element = ba.iter().map(|(k, c)| (*k, -(&s * c))).collect();
                    assert_eq!(ab, neg, "{} supersymmetry", rs.name());
                    for c in 0..d {
                        // ([a,b],c) = (a,[b,c])
                        assert_eq!(rs.elem_form(&ab, &e(c)), rs.elem_form(&e(a), &rs.bracket(&e(b), &e(c))));
                        // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
                        let lhs = rs.bracket(&e(a), &rs.bracket(&e(b), &e(c)));
                        let mut rhs = rs.bracket(&ab, &e(c));
                        for (k, v) in rs.bracket(&e(b), &rs.bracket(&e(a), &e(c))) {
                            *rhs.entry(k).or_insert_with(Rat::zero) += &s * v;
                        }
                        rhs.retain(|_, v| !v.is_zero());
                        assert_eq!(lhs, rhs, "{} Jacobi at {a},{b},{c}", rs.name());
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_is_anti_automorphism() {
        for rs in all_systems() {
            for a in 0..rs.dim() {
                assert_eq!(rs.sigma_basis(rs.sigma_basis(a)), a);
                for b in 0..rs.dim() {
                    let x = rs.basis_element(a);
                    let y = rs.basis_element(b);
                    let lhs = rs.sigma(&rs.bracket(&x, &y));
                    let rhs = rs.bracket(&rs.sigma(&y), &rs.sigma(&x));
                    assert_eq!(lhs, rhs, "{} σ at {a},{b}", rs.name());
                }
            }
        }
    }

    #[test]
    fn gl_sigma_is_transpose() {
        // in gl(m|n) the normalized x_α are matrix units up to a common rescaling of the pair
        let rs = build_algebra(&AlgebraSpec::gl(2, 1), &Positivity::Standard).unwrap();
        for i in 0..rs.positive().len() {
            let x = rs.basis_element(rs.pos_elem(i));
            assert_eq!(rs.elem_weight(rs.sigma_basis(rs.pos_elem(i))), &-&rs.root(i).weight);
            assert_eq!(rs.sigma(&rs.sigma(&x)), x);
        }
    }

    #[test]
    fn parity_additivity_and_isotropy() {
        for rs in all_systems() {
            let n = rs.positive().len();
            for i in 0..n {
                let a = &rs.root(i).weight;
                let double = a.scale(&int(2));
                assert_eq!(rs.is_odd(i) && !rs.is_root(&double), rs.is_isotropic(i), "{} {a}", rs.name());
                for j in 0..n {
                    if let Some(k) = rs.positive_index(&(a + &rs.root(j).weight)) {
                        assert_eq!(rs.root(k).parity, rs.root(i).parity.add(rs.root(j).parity));
                    }
                }
            }
        }
    }

    #[test]
    fn even_part_has_no_odd_roots() {
        let rs = build_algebra(&AlgebraSpec::gl(3, 1), &Positivity::Standard).unwrap();
        let ev = rs.even_part().unwrap();
        assert_eq!(ev.positive().len(), 3);
        assert!(ev.positive().iter().all(|r| !r.parity.is_odd()));
        assert_eq!(ev.simple_indices().len(), 2);
        assert_eq!(ev.rho(), &w(&[1, 0, -1, 0]));
    }

    #[test]
    fn labels() {
        let rs = build_algebra(&AlgebraSpec::gl(2, 1), &Positivity::Standard).unwrap();
        assert_eq!(rs.weight_label(&w(&[1, 1, -2])), "ε1+ε2-2δ1");
        assert_eq!(rs.weight_label(&w(&[0, -1, 0])), "-ε2");
    }
}
