//! Concrete realizations: supermatrices for gl(m|n) and osp(M|2n), and the
//! sl(2)^3 + (C^2)^{⊗3} model for D(2,1;α).
//!
//! The output is a [`RawAlgebra`]: a weight basis with structure constants and
//! an invariant form, before any choice of positive system or normalization.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{Parity, Weight};
use crate::error::{Error, Result};
use crate::linalg::{int, Rat, RatMatrix};

pub(crate) type Sparse = Vec<(usize, Rat)>;

#[derive(Clone, Debug)]
pub(crate) struct RawAlgebra {
    pub rank: usize,
    pub weights: Vec<Weight>,
    pub parities: Vec<Parity>,
    /// Raw indices of the Cartan basis `H_1..H_rank`, dual to the coordinate
    /// functionals of `h*`.
    pub cartan: Vec<usize>,
    pub table: Vec<Vec<Sparse>>,
    pub form: RatMatrix,
}

impl RawAlgebra {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn index_of_weight(&self) -> HashMap<Weight, usize> {
        let mut map = HashMap::new();
        for (i, w) in self.weights.iter().enumerate() {
            if !w.is_zero() {
                map.insert(w.clone(), i);
            }
        }
        map
    }

    /// Restriction to the even subalgebra `g_0`.
    pub fn even_part(&self) -> RawAlgebra {
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| !self.parities[i].is_odd()).collect();
        let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let table = keep
            .iter()
            .map(|&a| {
                keep.iter()
                    .map(|&b| self.table[a][b].iter().map(|(k, c)| (remap[k], c.clone())).collect())
                    .collect()
            })
            .collect();
        RawAlgebra {
            rank: self.rank,
            weights: keep.iter().map(|&i| self.weights[i].clone()).collect(),
            parities: keep.iter().map(|&i| self.parities[i]).collect(),
            cartan: self.cartan.iter().map(|c| remap[c]).collect(),
            table,
            form: self.form.select(&keep, &keep),
        }
    }
}

fn unit(n: usize, a: usize, b: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    m[(a, b)] = Rat::one();
    m
}

fn flatten(m: &RatMatrix) -> Vec<Rat> {
    m.to_rows().into_iter().flatten().collect()
}

struct MatrixBasis {
    size: usize,
    index_parity: Vec<Parity>,
    elems: Vec<(RatMatrix, Weight, Parity)>,
    rank: usize,
    form_scale: Rat,
}

impl MatrixBasis {
    fn supercommutator(&self, a: usize, b: usize) -> RatMatrix {
        let (x, _, px) = &self.elems[a];
        let (y, _, py) = &self.elems[b];
        let xy = x.mul(y).expect("square");
        let yx = y.mul(x).expect("square");
        let sign = if px.is_odd() && py.is_odd() { int(-1) } else { int(1) };
        RatMatrix::from_fn(self.size, self.size, |i, j| &xy[(i, j)] - &sign * &yx[(i, j)])
    }

    fn supertrace(&self, m: &RatMatrix) -> Rat {
        (0..self.size).fold(Rat::zero(), |acc, i| {
            if self.index_parity[i].is_odd() { acc - &m[(i, i)] } else { acc + &m[(i, i)] }
        })
    }

    fn into_raw(self) -> Result<RawAlgebra> {
        let dim = self.elems.len();
        let mut by_weight: HashMap<Weight, Vec<usize>> = HashMap::new();
        for (i, (_, w, _)) in self.elems.iter().enumerate() {
            by_weight.entry(w.clone()).or_default().push(i);
        }
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let c = self.supercommutator(a, b);
                if c.max_abs_entry().is_zero() {
                    continue;
                }
                let target = &self.elems[a].1 + &self.elems[b].1;
                let cands = by_weight.get(&target).ok_or_else(|| {
                    Error::Consistency(format!("bracket leaves the algebra at weight {target}"))
                })?;
                let cols: Vec<Vec<Rat>> = cands.iter().map(|&k| flatten(&self.elems[k].0)).collect();
                let m = RatMatrix::from_rows(cols)?.transpose();
                let coeffs = m.solve_in_span(&flatten(&c)).ok_or_else(|| {
                    Error::Consistency(format!("bracket not in span at weight {target}"))
                })?;
                table[a][b] = cands
                    .iter()
                    .zip(coeffs)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(&k, c)| (k, c))
                    .collect();
            }
        }
        let form = RatMatrix::from_fn(dim, dim, |a, b| {
            let p = self.elems[a].0.mul(&self.elems[b].0).expect("square");
            &self.form_scale * self.supertrace(&p)
        });
        Ok(RawAlgebra {
            rank: self.rank,
            weights: self.elems.iter().map(|e| e.1.clone()).collect(),
            parities: self.elems.iter().map(|e| e.2).collect(),
            cartan: (0..self.rank).collect(),
            table,
            form,
        })
    }
}

/// gl(m|n) in its defining representation; `n = 0` gives gl(m).
pub(crate) fn general_linear(m: usize, n: usize) -> Result<RawAlgebra> {
    let size = m + n;
    let index_parity: Vec<Parity> =
        (0..size).map(|i| if i < m { Parity::Even } else { Parity::Odd }).collect();
    let coord = |i: usize| Weight::unit(size, i);
    let mut elems = Vec::new();
    for i in 0..size {
        elems.push((unit(size, i, i), Weight::zero(size), Parity::Even));
    }
    for i in 0..size {
        for j in 0..size {
            if i != j {
                let parity = index_parity[i].add(index_parity[j]);
                elems.push((unit(size, i, j), &coord(i) - &coord(j), parity));
            }
        }
    }
    MatrixBasis { size, index_parity, elems, rank: size, form_scale: Rat::one() }.into_raw()
}

/// osp(M|2n) preserving the even supersymmetric form with antidiagonal
/// symmetric block on `C^M` and antidiagonal symplectic block on `C^{2n}`.
pub(crate) fn orthosymplectic(big_m: usize, n: usize) -> Result<RawAlgebra> {
    let size = big_m + 2 * n;
    let half = big_m / 2;
    let rank = half + n;
    let index_parity: Vec<Parity> =
        (0..size).map(|i| if i < big_m { Parity::Even } else { Parity::Odd }).collect();

    let mut bform = RatMatrix::zeros(size, size);
    for i in 0..big_m {
        bform[(i, big_m - 1 - i)] = Rat::one();
    }
    for j in 0..n {
        bform[(big_m + j, big_m + 2 * n - 1 - j)] = Rat::one();
        bform[(big_m + 2 * n - 1 - j, big_m + j)] = -Rat::one();
    }

    // weight of the standard basis vector e_a
    let index_weight = |a: usize| -> Weight {
        if a < big_m {
            if a < half {
                Weight::unit(rank, a)
            } else if big_m - 1 - a < half {
                -&Weight::unit(rank, big_m - 1 - a)
            } else {
                Weight::zero(rank)
            }
        } else {
            let j = a - big_m;
            if j < n {
                Weight::unit(rank, half + j)
            } else {
                -&Weight::unit(rank, half + (2 * n - 1 - j))
            }
        }
    };

    let mut elems = Vec::new();
    for k in 0..half {
        let mut h = unit(size, k, k);
        h[(big_m - 1 - k, big_m - 1 - k)] = -Rat::one();
        elems.push((h, Weight::zero(rank), Parity::Even));
    }
    for j in 0..n {
        let (a, b) = (big_m + j, big_m + 2 * n - 1 - j);
        let mut h = unit(size, a, a);
        h[(b, b)] = -Rat::one();
        elems.push((h, Weight::zero(rank), Parity::Even));
    }

    // group off-diagonal-weight matrix units by weight
    let mut groups: Vec<(Weight, Vec<(usize, usize)>)> = Vec::new();
    for a in 0..size {
        for b in 0..size {
            let w = &index_weight(a) - &index_weight(b);
            if w.is_zero() {
                continue;
            }
            match groups.iter_mut().find(|(g, _)| *g == w) {
                Some((_, v)) => v.push((a, b)),
                None => groups.push((w, vec![(a, b)])),
            }
        }
    }
    for (w, units) in groups {
        let parity = index_parity[units[0].0].add(index_parity[units[0].1]);
        // X ∈ osp iff (X^T B)_{cd} + (-1)^{|X||c|} (B X)_{cd} = 0 for all c, d.
        let mut rows = Vec::new();
        for c in 0..size {
            for d in 0..size {
                let sign = if parity.is_odd() && index_parity[c].is_odd() { -1 } else { 1 };
                let row: Vec<Rat> = units
                    .iter()
                    .map(|&(a, b)| {
                        // X = E_ab: (X^T B)_{cd} = [c==b] B_{a d}; (B X)_{cd} = B_{c a} [d==b]
                        let mut v = Rat::zero();
                        if c == b {
                            v += &bform[(a, d)];
                        }
                        if d == b {
                            v += int(sign) * &bform[(c, a)];
                        }
                        v
                    })
                    .collect();
                rows.push(row);
            }
        }
        let kernel = RatMatrix::from_rows(rows)?.kernel_basis();
        match kernel.len() {
            0 => continue,
            1 => {
                let mut x = RatMatrix::zeros(size, size);
                for (&(a, b), c) in units.iter().zip(&kernel[0]) {
                    x[(a, b)] = c.clone();
                }
                elems.push((x, w, parity));
            }
            k => {
                return Err(Error::Consistency(format!("root space of dimension {k} at weight {w}")))
            }
        }
    }
    MatrixBasis { size, index_parity, elems, rank, form_scale: Rat::new(1.into(), 2.into()) }
        .into_raw()
}

/// D(2,1;α): even part sl(2)^3, odd part C^2 ⊗ C^2 ⊗ C^2, with the odd bracket
/// weighted by `(s1, s2, s3) = (1, α, -1-α)`.
pub(crate) fn d21(alpha: &Rat) -> Result<RawAlgebra> {
    let s = [Rat::one(), alpha.clone(), -Rat::one() - alpha];
    if s.iter().any(Zero::is_zero) {
        return Err(Error::Spec("D(2,1;α) requires α ∉ {0, -1}".into()));
    }
    // basis: H1 H2 H3 | E1 F1 E2 F2 E3 F3 | v_{s} for s ∈ {±}^3
    const H: usize = 0;
    const E: usize = 3;
    let e_idx = |i: usize| E + 2 * i;
    let f_idx = |i: usize| E + 2 * i + 1;
    let signs: Vec<[i64; 3]> = (0..8)
        .map(|b| [if b & 4 == 0 { 1 } else { -1 }, if b & 2 == 0 { 1 } else { -1 }, if b & 1 == 0 { 1 } else { -1 }])
        .collect();
    let v_idx = |sg: [i64; 3]| 9 + signs.iter().position(|x| *x == sg).expect("sign vector");
    let dim = 17;

    let mut weights = vec![Weight::zero(3); dim];
    let mut parities = vec![Parity::Even; dim];
    for i in 0..3 {
        weights[e_idx(i)] = Weight::unit(3, i).scale(&int(2));
        weights[f_idx(i)] = Weight::unit(3, i).scale(&int(-2));
    }
    for sg in &signs {
        let k = v_idx(*sg);
        weights[k] = Weight(sg.iter().map(|&x| int(x)).collect());
        parities[k] = Parity::Odd;
    }

    let psi = |a: i64, b: i64| -> i64 {
        match (a, b) {
            (1, -1) => 1,
            (-1, 1) => -1,
            _ => 0,
        }
    };
    // p(u,v) ∈ sl(2) as sparse combination over (E, F, H) of copy i
    let p = |i: usize, a: i64, b: i64| -> Sparse {
        match (a, b) {
            (1, 1) => vec![(e_idx(i), int(2))],
            (-1, -1) => vec![(f_idx(i), int(-2))],
            _ => vec![(H + i, int(-1))],
        }
    };

    let mut table: Vec<Vec<Sparse>> = vec![vec![Vec::new(); dim]; dim];
    let set = |a: usize, b: usize, v: Sparse, table: &mut Vec<Vec<Sparse>>, a_odd: bool, b_odd: bool| {
        // [b, a] = -(-1)^{|a||b|} [a, b]
        let sign = if a_odd && b_odd { int(-1) } else { int(1) };
        table[b][a] = v.iter().map(|(k, c)| (*k, -(&sign * c))).collect();
        table[a][b] = v;
    };
    for i in 0..3 {
        set(H + i, e_idx(i), vec![(e_idx(i), int(2))], &mut table, false, false);
        set(H + i, f_idx(i), vec![(f_idx(i), int(-2))], &mut table, false, false);
        set(e_idx(i), f_idx(i), vec![(H + i, int(1))], &mut table, false, false);
        for sg in &signs {
            let v = v_idx(*sg);
            set(H + i, v, vec![(v, int(sg[i]))], &mut table, false, true);
            let mut flipped = *sg;
            flipped[i] = -sg[i];
            if sg[i] == -1 {
                set(e_idx(i), v, vec![(v_idx(flipped), int(1))], &mut table, false, true);
            } else {
                set(f_idx(i), v, vec![(v_idx(flipped), int(1))], &mut table, false, true);
            }
        }
    }
    for a in &signs {
        for b in &signs {
            let mut acc: HashMap<usize, Rat> = HashMap::new();
            for i in 0..3 {
                let coef: i64 = (0..3).filter(|&j| j != i).map(|j| psi(a[j], b[j])).product();
                if coef == 0 {
                    continue;
                }
                for (k, c) in p(i, a[i], b[i]) {
                    *acc.entry(k).or_insert_with(Rat::zero) += &s[i] * int(coef) * c;
                }
            }
            let mut v: Sparse = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            v.sort_by_key(|(k, _)| *k);
            table[v_idx(*a)][v_idx(*b)] = v;
        }
    }

    let mut form = RatMatrix::zeros(dim, dim);
    for i in 0..3 {
        form[(H + i, H + i)] = s[i].recip();
        let ef = (int(2) * &s[i]).recip();
        form[(e_idx(i), f_idx(i))] = ef.clone();
        form[(f_idx(i), e_idx(i))] = ef;
    }
    for a in &signs {
        for b in &signs {
            let c: i64 = (0..3).map(|j| psi(a[j], b[j])).product();
            if c != 0 {
                form[(v_idx(*a), v_idx(*b))] = int(-c);
            }
        }
    }
    Ok(RawAlgebra { rank: 3, weights, parities, cartan: vec![0, 1, 2], table, form })
}
