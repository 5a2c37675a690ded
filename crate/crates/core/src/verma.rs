//! Brute-force parabolic Verma modules and their contravariant form.
//!
//! Both `V(λ)` and `M_p(λ)` are built with one engine, [`Induced`]: a module
//! `U(g) ⊗ B` spanned by ordered PBW monomials in a list of lowering root
//! vectors applied to a basis of a base module `B`. For `V(λ)` the base is the
//! highest weight line and the lowering roots are `Δ_l⁺`; the result is the
//! l-Verma module, cut down to `V(λ)` by quotienting each weight space by the
//! radical of its form. For `M_p(λ)` the base is `V(λ)` and the lowering roots
//! are `Δ_n`.
//!
//! Monomials are stored as non-decreasing lists of positions into the lowering
//! list. Normal ordering uses `x_{-a} x_{-b} = ± x_{-b} x_{-a} + [x_{-a}, x_{-b}]`
//! and `x x = ½[x, x]` for odd `x`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::catalog::{RootSystem, Weight};
use crate::character::{Over, ParabolicDatum, Partition};
use crate::error::{Error, Result};
use crate::linalg::{int, pow, rat, Rat, RatMatrix};

pub type Word = Vec<u8>;
pub type Key = (Word, usize);

/// Linear combination of PBW terms `x_{-word} ⊗ b`.
pub type PbwVector = BTreeMap<Key, Rat>;

fn add_scaled(acc: &mut PbwVector, v: &PbwVector, c: &Rat) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        let e = acc.entry(k.clone()).or_insert_with(Rat::zero);
        *e += x * c;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

fn single(word: Word, b: usize, c: Rat) -> PbwVector {
    let mut v = PbwVector::new();
    if !c.is_zero() {
        v.insert((word, b), c);
    }
    v
}

/// A module for the subalgebra that the lowering vectors are induced over.
pub trait BaseModule {
    fn weight(&self, b: usize) -> Weight;
    /// Action of a basis element of `g` that is not one of the lowering
    /// vectors; Cartan elements are handled by the engine.
    fn act(&self, y: usize, b: usize) -> Result<Vec<(usize, Rat)>>;
    fn form(&self, a: usize, b: usize) -> Result<Rat>;
}

pub struct Induced<'a, B> {
    rs: &'a RootSystem,
    lowering: Vec<usize>,
    position: HashMap<usize, u8>,
    base: B,
    act_memo: RefCell<HashMap<(usize, Word, usize), PbwVector>>,
    mul_memo: RefCell<HashMap<(u8, Word, usize), PbwVector>>,
}

impl<'a, B: BaseModule> Induced<'a, B> {
    pub fn new(rs: &'a RootSystem, lowering: Vec<usize>, base: B) -> Self {
        assert!(lowering.len() < u8::MAX as usize);
        let position = lowering.iter().enumerate().map(|(p, &r)| (rs.neg_elem(r), p as u8)).collect();
        Induced {
            rs,
            lowering,
            position,
            base,
            act_memo: RefCell::new(HashMap::new()),
            mul_memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn lowering(&self) -> &[usize] {
        &self.lowering
    }

    /// Positions of a partition's roots, as a PBW word.
    pub fn word_of(&self, p: &Partition) -> Word {
        let mut w: Word = p
            .word()
            .into_iter()
            .map(|r| self.lowering.iter().position(|&x| x == r).expect("root in lowering list") as u8)
            .collect();
        w.sort_unstable();
        w
    }

    pub fn term_weight(&self, word: &[u8], b: usize) -> Weight {
        let mut w = self.base.weight(b);
        for &q in word {
            w = &w - &self.rs.root(self.lowering[q as usize]).weight;
        }
        w
    }

    fn lower_parity_odd(&self, q: u8) -> bool {
        self.rs.is_odd(self.lowering[q as usize])
    }

    fn neg(&self, q: u8) -> usize {
        self.rs.neg_elem(self.lowering[q as usize])
    }

    /// `y · (x_{-word} ⊗ b)` for a basis element `y` of `g`.
    pub fn act_term(&self, y: usize, word: &[u8], b: usize) -> Result<PbwVector> {
        if let Some(&p) = self.position.get(&y) {
            return self.left_mul(p, word, b);
        }
        if self.rs.is_cartan(y) {
            let c = self.term_weight(word, b).0[y].clone();
            return Ok(single(word.to_vec(), b, c));
        }
        let key = (y, word.to_vec(), b);
        if let Some(v) = self.act_memo.borrow().get(&key) {
            return Ok(v.clone());
        }
        let mut out = PbwVector::new();
        if word.is_empty() {
            for (b2, c) in self.base.act(y, b)? {
                add_scaled(&mut out, &single(Vec::new(), b2, Rat::one()), &c);
            }
        } else {
            let a = word[0];
            let rest = &word[1..];
            for (k, c) in self.rs.bracket_basis(y, self.neg(a)) {
                add_scaled(&mut out, &self.act_term(*k, rest, b)?, c);
            }
            let sign = int(if self.rs.elem_parity(y).is_odd() && self.lower_parity_odd(a) { -1 } else { 1 });
            for ((w2, b2), c) in self.act_term(y, rest, b)? {
                add_scaled(&mut out, &self.left_mul(a, &w2, b2)?, &(&sign * c));
            }
        }
        self.act_memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    /// `x_{-lowering[p]} · (x_{-word} ⊗ b)` in normal order.
    fn left_mul(&self, p: u8, word: &[u8], b: usize) -> Result<PbwVector> {
        if word.is_empty() || p < word[0] || (p == word[0] && !self.lower_parity_odd(p)) {
            let mut w = Vec::with_capacity(word.len() + 1);
            w.push(p);
            w.extend_from_slice(word);
            return Ok(single(w, b, Rat::one()));
        }
        let key = (p, word.to_vec(), b);
        if let Some(v) = self.mul_memo.borrow().get(&key) {
            return Ok(v.clone());
        }
        let a = word[0];
        let rest = &word[1..];
        let mut out = PbwVector::new();
        if p == a {
            let half = rat(1, 2);
            for (k, c) in self.rs.bracket_basis(self.neg(p), self.neg(p)) {
                add_scaled(&mut out, &self.act_term(*k, rest, b)?, &(c * &half));
            }
        } else {
            let sign = int(if self.lower_parity_odd(p) && self.lower_parity_odd(a) { -1 } else { 1 });
            for ((w2, b2), c) in self.left_mul(p, rest, b)? {
                add_scaled(&mut out, &self.left_mul(a, &w2, b2)?, &(&sign * c));
            }
            for (k, c) in self.rs.bracket_basis(self.neg(p), self.neg(a)) {
                add_scaled(&mut out, &self.act_term(*k, rest, b)?, c);
            }
        }
        self.mul_memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    pub fn act(&self, y: usize, v: &PbwVector) -> Result<PbwVector> {
        let mut out = PbwVector::new();
        for ((w, b), c) in v {
            add_scaled(&mut out, &self.act_term(y, w, b.to_owned())?, c);
        }
        Ok(out)
    }

    /// `σ(x_{-word}) v = x_{a_k} ⋯ x_{a_1} v`.
    pub fn raise(&self, word: &[u8], v: &PbwVector) -> Result<PbwVector> {
        let mut cur = v.clone();
        for &a in word {
            cur = self.act(self.rs.pos_elem(self.lowering[a as usize]), &cur)?;
        }
        Ok(cur)
    }

    /// Contravariant pairing of two vectors.
    pub fn pairing(&self, u: &PbwVector, v: &PbwVector) -> Result<Rat> {
        let mut acc = Rat::zero();
        for ((w, b), c) in u {
            acc += c * self.top_pairing(*b, &self.raise(w, v)?)?;
        }
        Ok(acc)
    }

    fn top_pairing(&self, b: usize, v: &PbwVector) -> Result<Rat> {
        let mut acc = Rat::zero();
        for ((w, b2), c) in v {
            if w.is_empty() {
                acc += c * self.base.form(b, *b2)?;
            }
        }
        Ok(acc)
    }

    /// Gram matrix on a list of monomials; column raisings share prefixes.
    pub fn gram(&self, basis: &[Key]) -> Result<RatMatrix> {
        let n = basis.len();
        let mut m = RatMatrix::zeros(n, n);
        for (j, (wj, bj)) in basis.iter().enumerate() {
            let col = single(wj.clone(), *bj, Rat::one());
            let mut prefix: HashMap<Word, PbwVector> = HashMap::new();
            prefix.insert(Vec::new(), col);
            for (i, (wi, bi)) in basis.iter().enumerate() {
                for len in 1..=wi.len() {
                    if !prefix.contains_key(&wi[..len]) {
                        let prev = &prefix[&wi[..len - 1]];
                        let next = self.act(self.rs.pos_elem(self.lowering[wi[len - 1] as usize]), prev)?;
                        prefix.insert(wi[..len].to_vec(), next);
                    }
                }
                m[(i, j)] = self.top_pairing(*bi, &prefix[wi.as_slice()])?;
            }
        }
        Ok(m)
    }
}

/// The highest weight line `C v_λ` of the l-Verma module.
pub struct TopLine {
    lam: Weight,
}

impl BaseModule for TopLine {
    fn weight(&self, _: usize) -> Weight {
        self.lam.clone()
    }

    fn act(&self, _: usize, _: usize) -> Result<Vec<(usize, Rat)>> {
        // only raising vectors reach the base, and they kill v_λ
        Ok(Vec::new())
    }

    fn form(&self, _: usize, _: usize) -> Result<Rat> {
        Ok(Rat::one())
    }
}

#[derive(Clone, Debug)]
struct VSpace {
    words: Vec<Word>,
    gram: RatMatrix,
    inverse: RatMatrix,
    ids: Vec<usize>,
    l_verma_dim: usize,
}

/// `V(λ)` for the Levi, realized weight space by weight space on demand.
pub struct IrrepL<'a> {
    pd: &'a ParabolicDatum,
    lam: Weight,
    depth: usize,
    engine: Induced<'a, TopLine>,
    spaces: RefCell<BTreeMap<Weight, VSpace>>,
    index: RefCell<Vec<(Weight, usize)>>,
}

impl<'a> IrrepL<'a> {
    pub fn build(pd: &'a ParabolicDatum, lam: &Weight, depth: usize) -> Result<Self> {
        pd.require_dominant(lam)?;
        let irrep = IrrepL {
            pd,
            lam: lam.clone(),
            depth,
            engine: Induced::new(pd.rs(), pd.delta_l_plus().to_vec(), TopLine { lam: lam.clone() }),
            spaces: RefCell::new(BTreeMap::new()),
            index: RefCell::new(Vec::new()),
        };
        for nu in pd.window(lam, depth) {
            irrep.space(&nu)?;
        }
        Ok(irrep)
    }

    pub fn lambda(&self) -> &Weight {
        &self.lam
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    fn l_coords(&self, nu: &Weight) -> Option<Vec<i64>> {
        let c = self.pd.qplus_coords(&(&self.lam - nu))?;
        let pi_l = self.pd.pi_l();
        c.iter().enumerate().all(|(j, &x)| x == 0 || pi_l.contains(&j)).then_some(c)
    }

    fn space(&self, nu: &Weight) -> Result<VSpace> {
        if let Some(s) = self.spaces.borrow().get(nu) {
            return Ok(s.clone());
        }
        let words: Vec<Word> = match self.l_coords(nu) {
            Some(c) => self
                .pd
                .enumerate_with_order(&c, self.pd.delta_l_plus())
                .iter()
                .map(|p| self.engine.word_of(p))
                .collect(),
            None => Vec::new(),
        };
        let keys: Vec<Key> = words.iter().map(|w| (w.clone(), 0)).collect();
        let full = self.engine.gram(&keys)?;
        let rows = full.independent_rows();
        let gram = full.select(&rows, &rows);
        let inverse = gram.inverse().map_err(|_| Error::Consistency(format!("V(λ) form singular at {nu}")))?;
        let mut index = self.index.borrow_mut();
        let ids = (0..rows.len())
            .map(|i| {
                index.push((nu.clone(), i));
                index.len() - 1
            })
            .collect();
        let space = VSpace {
            words: rows.iter().map(|&r| words[r].clone()).collect(),
            gram,
            inverse,
            ids,
            l_verma_dim: words.len(),
        };
        self.spaces.borrow_mut().insert(nu.clone(), space.clone());
        Ok(space)
    }

    /// `n(ν) = dim V(λ)^ν`.
    pub fn dim(&self, nu: &Weight) -> Result<usize> {
        Ok(self.space(nu)?.ids.len())
    }

    /// Dimension of the l-Verma weight space before quotienting.
    pub fn l_verma_dim(&self, nu: &Weight) -> Result<usize> {
        Ok(self.space(nu)?.l_verma_dim)
    }

    /// Global basis ids `e_{ν,1..n(ν)}`.
    pub fn basis(&self, nu: &Weight) -> Result<Vec<usize>> {
        Ok(self.space(nu)?.ids)
    }

    /// Gram matrix `G_ν` of the chosen basis of `V(λ)^ν`.
    pub fn gram(&self, nu: &Weight) -> Result<RatMatrix> {
        Ok(self.space(nu)?.gram)
    }

    pub fn weights(&self) -> Vec<Weight> {
        self.spaces.borrow().iter().filter(|(_, s)| !s.ids.is_empty()).map(|(w, _)| w.clone()).collect()
    }

    fn locate(&self, id: usize) -> (Weight, usize) {
        self.index.borrow()[id].clone()
    }

    /// Coordinates of an l-Verma vector of weight `nu` in the basis of `V(λ)^ν`.
    fn coordinates(&self, nu: &Weight, u: &PbwVector) -> Result<Vec<(usize, Rat)>> {
        let space = self.space(nu)?;
        if space.ids.is_empty() || u.is_empty() {
            return Ok(Vec::new());
        }
        let pairings: Vec<Rat> = space
            .words
            .iter()
            .map(|w| self.engine.pairing(&single(w.clone(), 0, Rat::one()), u))
            .collect::<Result<_>>()?;
        let c = space.inverse.mul_vec(&pairings)?;
        Ok(space.ids.iter().copied().zip(c).filter(|(_, x)| !x.is_zero()).collect())
    }
}

impl BaseModule for IrrepL<'_> {
    fn weight(&self, b: usize) -> Weight {
        self.locate(b).0
    }

    fn act(&self, y: usize, b: usize) -> Result<Vec<(usize, Rat)>> {
        let rs = self.pd.rs();
        if !rs.is_cartan(y) {
            let r = (y - rs.rank()) / 2;
            if !self.pd.is_in_l(r) {
                if y == rs.pos_elem(r) {
                    return Ok(Vec::new());
                }
                return Err(Error::Consistency("nilradical lowering vector reached the base".into()));
            }
        }
        let (nu, i) = self.locate(b);
        let space = self.space(&nu)?;
        let u = self.engine.act_term(y, &space.words[i], 0)?;
        self.coordinates(&(&nu + rs.elem_weight(y)), &u)
    }

    fn form(&self, a: usize, b: usize) -> Result<Rat> {
        let (na, i) = self.locate(a);
        let (nb, j) = self.locate(b);
        if na != nb {
            return Ok(Rat::zero());
        }
        Ok(self.space(&na)?.gram[(i, j)].clone())
    }
}

pub fn build_irrep_l<'a>(pd: &'a ParabolicDatum, lam: &Weight, depth: usize) -> Result<IrrepL<'a>> {
    IrrepL::build(pd, lam, depth)
}

/// The determinant-relevant data of one weight space `M_p(λ)^μ`.
#[derive(Clone, Debug)]
pub struct GramBlock {
    pub mu: Weight,
    /// `(π, ν, i)` in matrix order.
    pub basis: Vec<(Partition, Weight, usize)>,
    pub matrix: RatMatrix,
    /// `(ν, G_ν, |P(ν − μ)|)`
    pub v_blocks: Vec<(Weight, RatMatrix, usize)>,
    /// `N_α = Σ_ν n(ν) Σ_{π ∈ P(ν−μ)} π(α)` per root of `Δ_n`.
    pub root_usage: Vec<(usize, u64)>,
}

/// `M_p(λ) = U(g) ⊗_{U(p)} V(λ)`.
pub struct ParabolicVerma<'a> {
    pd: &'a ParabolicDatum,
    engine: Induced<'a, IrrepL<'a>>,
}

impl<'a> ParabolicVerma<'a> {
    pub fn new(pd: &'a ParabolicDatum, lam: &Weight, depth: usize) -> Result<Self> {
        Self::with_order(pd, lam, depth, pd.delta_n().to_vec())
    }

    /// As [`new`](Self::new), with PBW monomials ordered by `order`, a
    /// permutation of `Δ_n`.
    pub fn with_order(pd: &'a ParabolicDatum, lam: &Weight, depth: usize, order: Vec<usize>) -> Result<Self> {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        let mut dn = pd.delta_n().to_vec();
        dn.sort_unstable();
        if sorted != dn {
            return Err(Error::Domain("ordering is not a permutation of Δ_n".into()));
        }
        let irrep = IrrepL::build(pd, lam, depth)?;
        Ok(ParabolicVerma { pd, engine: Induced::new(pd.rs(), order, irrep) })
    }

    pub fn irrep(&self) -> &IrrepL<'a> {
        self.engine.base()
    }

    pub fn lambda(&self) -> &Weight {
        self.irrep().lambda()
    }

    pub fn order(&self) -> &[usize] {
        self.engine.lowering()
    }

    /// `x_{-π} e_{ν,i}` as a vector.
    pub fn monomial(&self, pi: &Partition, e: usize) -> PbwVector {
        single(self.engine.word_of(pi), e, Rat::one())
    }

    pub fn act(&self, y: usize, v: &PbwVector) -> Result<PbwVector> {
        self.engine.act(y, v)
    }

    pub fn pairing(&self, u: &PbwVector, v: &PbwVector) -> Result<Rat> {
        self.engine.pairing(u, v)
    }

    pub fn weight_of(&self, key: &Key) -> Weight {
        self.engine.term_weight(&key.0, key.1)
    }

    /// `ν` with `λ − ν ∈ Q⁺(Δ_l)` and `ν ≥ μ`, in window order.
    fn levi_weights(&self, mu: &Weight) -> Result<Vec<Weight>> {
        let lam = self.lambda();
        let ht = self.ht_below(mu)?;
        let pi_l = self.pd.pi_l();
        Ok(self
            .pd
            .qplus_window(ht)
            .into_iter()
            .filter(|c| c.iter().enumerate().all(|(j, &x)| x == 0 || pi_l.contains(&j)))
            .map(|c| lam - &self.pd.weight_from_coords(&c))
            .filter(|nu| self.pd.qplus_coords(&(nu - mu)).is_some())
            .collect())
    }

    fn ht_below(&self, mu: &Weight) -> Result<usize> {
        let lam = self.lambda();
        let c = self
            .pd
            .qplus_coords(&(lam - mu))
            .ok_or_else(|| Error::Domain(format!("μ = {mu} is not below λ = {lam}")))?;
        Ok(c.iter().sum::<i64>() as usize)
    }

    /// Basis `x_{-π} e_{ν,i}` of `M_p(λ)^μ`, ordered by ν, then π, then i.
    pub fn weight_basis(&self, mu: &Weight) -> Result<Vec<(Partition, Weight, usize)>> {
        let mut out = Vec::new();
        for nu in self.levi_weights(mu)? {
            let ids = self.irrep().basis(&nu)?;
            if ids.is_empty() {
                continue;
            }
            let c = self.pd.qplus_coords(&(&nu - mu)).expect("filtered");
            for p in self.pd.enumerate_with_order(&c, self.order()) {
                for &e in &ids {
                    out.push((p.clone(), nu.clone(), e));
                }
            }
        }
        Ok(out)
    }

    pub fn gram_block(&self, mu: &Weight) -> Result<GramBlock> {
        self.pd.rs().check_weight(mu)?;
        let ht = self.ht_below(mu)?;
        if ht > self.irrep().depth() {
            return Err(Error::Depth(format!(
                "ht(λ − μ) = {ht} exceeds depth {}",
                self.irrep().depth()
            )));
        }
        let basis = self.weight_basis(mu)?;
        let keys: Vec<Key> = basis.iter().map(|(p, _, e)| (self.engine.word_of(p), *e)).collect();
        let matrix = self.engine.gram(&keys)?;
        let mut v_blocks = Vec::new();
        let mut usage: BTreeMap<usize, u64> = self.pd.delta_n().iter().map(|&r| (r, 0)).collect();
        for nu in self.levi_weights(mu)? {
            let n = self.irrep().dim(&nu)?;
            if n == 0 {
                continue;
            }
            let c = self.pd.qplus_coords(&(&nu - mu)).expect("filtered");
            let parts = self.pd.enumerate_with_order(&c, self.order());
            for p in &parts {
                for &(r, m) in &p.parts {
                    *usage.get_mut(&r).expect("Δ_n root") += m as u64 * n as u64;
                }
            }
            v_blocks.push((nu.clone(), self.irrep().gram(&nu)?, parts.len()));
        }
        Ok(GramBlock { mu: mu.clone(), basis, matrix, v_blocks, root_usage: usage.into_iter().collect() })
    }

    /// Determinant of the form on `M_p(λ)^μ` in an orthonormal `e`-basis and
    /// with root vectors normalized to `[x_α, x_{-α}] = h_α`.
    pub fn brute_determinant(&self, mu: &Weight) -> Result<Rat> {
        let block = self.gram_block(mu)?;
        block_determinant(self.pd.rs(), &block)
    }
}

pub fn block_determinant(rs: &RootSystem, block: &GramBlock) -> Result<Rat> {
    let mut d = block.matrix.det()?;
    if d.is_zero() {
        return Ok(d);
    }
    for (_, g, count) in &block.v_blocks {
        let gd = g.det()?;
        if gd.is_zero() {
            return Err(Error::Consistency("singular V(λ) block".into()));
        }
        d /= pow(&gd, *count as i64);
    }
    for &(r, n) in &block.root_usage {
        d /= pow(rs.norm(r), n as i64);
    }
    Ok(d)
}

/// `Ω(λ) = (λ + 2ρ, λ)`
pub fn casimir(rs: &RootSystem, lam: &Weight) -> Rat {
    let two_rho = rs.rho().scale(&int(2));
    rs.form(&(lam + &two_rho), lam)
}

/// Number of PBW basis vectors of `M_p(λ)^μ`, from the brute engine.
pub fn weight_space_dim(mp: &ParabolicVerma<'_>, mu: &Weight) -> Result<usize> {
    Ok(mp.weight_basis(mu)?.len())
}

/// Partition listing over `Δ_n` in the module's PBW order.
pub fn nilradical_partitions(pd: &ParabolicDatum, eta: &Weight) -> Vec<Partition> {
    pd.enumerate_partitions(eta, Over::N)
}
