use std::collections::HashMap;
use std::hash::Hash;

use super::algebra::{AlgElem, Pbw};
use super::SmallQuantumGroup;
use crate::cyclotomic::CycloNum;

/// Coefficient grid over tuples of PBW indices; the normal form of tensor elements.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid<K: Hash + Eq> {
    entries: HashMap<K, CycloNum>,
}

pub type Grid2 = Grid<(u32, u32)>;
pub type Grid3 = Grid<(u32, u32, u32)>;

impl<K: Hash + Eq + Copy + Ord> Default for Grid<K> {
    fn default() -> Self {
        Grid { entries: HashMap::new() }
    }
}

impl<K: Hash + Eq + Copy + Ord> Grid<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: K, v: CycloNum) {
        if v.is_zero() {
            return;
        }
        match self.entries.get_mut(&key) {
            Some(s) => {
                *s += &v;
                if s.is_zero() {
                    self.entries.remove(&key);
                }
            }
            None => {
                self.entries.insert(key, v);
            }
        }
    }

    pub fn get(&self, key: &K) -> Option<&CycloNum> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &CycloNum)> {
        self.entries.iter()
    }

    /// Entries in key order.
    pub fn sorted(&self) -> Vec<(K, CycloNum)> {
        let mut v: Vec<_> = self.entries.iter().map(|(k, c)| (*k, c.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        let mut out = Self::new();
        for (k, v) in &self.entries {
            out.add(*k, v * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add(*k, -v);
        }
        out
    }

    pub fn add_grid(&mut self, other: &Self) {
        for (k, v) in &other.entries {
            self.add(*k, v.clone());
        }
    }
}

impl Grid2 {
    /// `a (x) b -> b (x) a`
    pub fn flip(&self) -> Grid2 {
        let mut out = Grid2::new();
        for (&(i, j), c) in self.iter() {
            out.add((j, i), c.clone());
        }
        out
    }

    pub fn pure(a: &AlgElem, b: &AlgElem) -> Grid2 {
        let mut out = Grid2::new();
        for (i, x) in a.entries() {
            for (j, y) in b.entries() {
                out.add((*i as u32, *j as u32), x * y);
            }
        }
        out
    }
}

/// Sum of pure tensors `sum_i a_i (x) b_i`.
#[derive(Clone, Debug, Default)]
pub struct TensorElem {
    pub terms: Vec<(AlgElem, AlgElem)>,
}

impl TensorElem {
    pub fn to_grid(&self) -> Grid2 {
        let mut out = Grid2::new();
        for (a, b) in &self.terms {
            out.add_grid(&Grid2::pure(a, b));
        }
        out
    }

    pub fn flip(&self) -> TensorElem {
        TensorElem {
            terms: self.terms.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl SmallQuantumGroup {
    fn delta_e_left(&self, t: &Grid2) -> Grid2 {
        let mut out = Grid2::new();
        for (&(i, j), c) in t.iter() {
            let (pi, pj) = (self.pbw(i as usize), self.pbw(j as usize));
            for (p, w) in self.e_left(pi) {
                out.add((self.index(p) as u32, j), c * &w);
            }
            let (pk, wk) = self.k_left(pi, 1);
            let ck = c * &wk;
            for (p, w) in self.e_left(pj) {
                out.add((self.index(pk) as u32, self.index(p) as u32), &ck * &w);
            }
        }
        out
    }

    fn delta_f_left(&self, t: &Grid2) -> Grid2 {
        let mut out = Grid2::new();
        for (&(i, j), c) in t.iter() {
            let (pi, pj) = (self.pbw(i as usize), self.pbw(j as usize));
            if let Some(p) = self.f_left(pi) {
                let (pk, wk) = self.k_left(pj, -1);
                out.add((self.index(p) as u32, self.index(pk) as u32), c * &wk);
            }
            if let Some(p) = self.f_left(pj) {
                out.add((i, self.index(p) as u32), c.clone());
            }
        }
        out
    }

    fn delta_k_left(&self, t: &Grid2, n: i64) -> Grid2 {
        let mut out = Grid2::new();
        for (&(i, j), c) in t.iter() {
            let (pi, wi) = self.k_left(self.pbw(i as usize), n);
            let (pj, wj) = self.k_left(self.pbw(j as usize), n);
            out.add((self.index(pi) as u32, self.index(pj) as u32), &(c * &wi) * &wj);
        }
        out
    }

    fn build_coproducts(&self) -> Vec<Grid2> {
        let l = self.l;
        let mut table = vec![Grid2::new(); self.dim()];
        let mut de = Grid2::new();
        de.add((0, 0), self.field.one());
        for c in 0..l {
            for b in 0..l {
                let mut cur = self.delta_k_left(&de, b as i64);
                for a in 0..l {
                    table[self.index(Pbw::new(a, b, c))] = cur.clone();
                    if a + 1 < l {
                        cur = self.delta_f_left(&cur);
                    }
                }
            }
            if c + 1 < l {
                de = self.delta_e_left(&de);
            }
        }
        table
    }

    /// `D(b_i)` for every basis element.
    pub fn coproduct_table(&self) -> &[Grid2] {
        self.coproducts.get_or_init(|| self.build_coproducts())
    }

    pub fn coproduct(&self, x: &AlgElem) -> Grid2 {
        let table = self.coproduct_table();
        let mut out = Grid2::new();
        for (i, c) in x.entries() {
            for (k, v) in table[*i].iter() {
                out.add(*k, c * v);
            }
        }
        out
    }

    pub fn coproduct_op(&self, x: &AlgElem) -> Grid2 {
        self.coproduct(x).flip()
    }

    pub fn counit_basis(&self, i: usize) -> bool {
        let p = self.pbw(i);
        p.f == 0 && p.e == 0
    }

    pub fn counit(&self, x: &AlgElem) -> CycloNum {
        x.entries()
            .iter()
            .filter(|(i, _)| self.counit_basis(*i))
            .fold(self.field.zero(), |acc, (_, c)| &acc + c)
    }

    fn build_anti(&self, se: &AlgElem, sf: &AlgElem) -> Vec<AlgElem> {
        let l = self.l;
        let se_pows: Vec<AlgElem> = (0..l).map(|c| self.pow(se, c)).collect();
        let sf_pows: Vec<AlgElem> = (0..l).map(|a| self.pow(sf, a)).collect();
        (0..self.dim())
            .map(|i| {
                let p = self.pbw(i);
                let left = self.mul(&se_pows[p.e as usize], &self.k_pow(-(p.k as i64)));
                self.mul(&left, &sf_pows[p.f as usize])
            })
            .collect()
    }

    /// `S(F^a K^b E^c) = S(E)^c K^-b S(F)^a`
    pub fn antipode_table(&self) -> &[AlgElem] {
        self.antipodes.get_or_init(|| {
            let se = self.monomial(0, -1, 1).neg();
            let sf = self.monomial(1, 1, 0).neg();
            self.build_anti(&se, &sf)
        })
    }

    /// `S^-1(E) = -E K^-1`, `S^-1(F) = -K F`
    pub fn antipode_inv_table(&self) -> &[AlgElem] {
        self.antipode_invs.get_or_init(|| {
            let se = self.mul(&self.e(), &self.k_pow(-1)).neg();
            let sf = self.mul(&self.k(), &self.f()).neg();
            self.build_anti(&se, &sf)
        })
    }

    fn apply_table(table: &[AlgElem], x: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero();
        for (i, c) in x.entries() {
            out = out.axpy(c, &table[*i]);
        }
        out
    }

    pub fn antipode(&self, x: &AlgElem) -> AlgElem {
        Self::apply_table(self.antipode_table(), x)
    }

    pub fn antipode_inv(&self, x: &AlgElem) -> AlgElem {
        Self::apply_table(self.antipode_inv_table(), x)
    }

    /// `sum c_ij b_i b_j`
    pub fn multiply_out(&self, t: &Grid2) -> AlgElem {
        let mut acc = super::algebra::Acc::new(self.dim());
        for (&(i, j), c) in t.iter() {
            self.mul_monomials_into(self.pbw(i as usize), self.pbw(j as usize), c, &mut acc);
        }
        acc.finish()
    }

    /// Applies `f (x) g` factorwise on basis images.
    pub fn map_grid2(
        &self,
        t: &Grid2,
        f: impl Fn(usize) -> AlgElem,
        g: impl Fn(usize) -> AlgElem,
    ) -> Grid2 {
        let mut out = Grid2::new();
        for (&(i, j), c) in t.iter() {
            let (a, b) = (f(i as usize), g(j as usize));
            for (x, cx) in a.entries() {
                let cc = c * cx;
                for (y, cy) in b.entries() {
                    out.add((*x as u32, *y as u32), &cc * cy);
                }
            }
        }
        out
    }

    /// Product in `u (x) u`.
    pub fn mul_grid2(&self, x: &Grid2, y: &Grid2) -> Grid2 {
        let mut out = Grid2::new();
        let xs = x.sorted();
        let ys = y.sorted();
        for ((i, j), c) in &xs {
            for ((i2, j2), c2) in &ys {
                let left = self.mul_basis(*i as usize, *i2 as usize);
                if left.is_zero() {
                    continue;
                }
                let right = self.mul_basis(*j as usize, *j2 as usize);
                let cc = c * c2;
                for (a, ca) in left.entries() {
                    let ca = &cc * ca;
                    for (b, cb) in right.entries() {
                        out.add((*a as u32, *b as u32), &ca * cb);
                    }
                }
            }
        }
        out
    }

    /// Product in `u (x) u (x) u`.
    pub fn mul_grid3(&self, x: &Grid3, y: &Grid3) -> Grid3 {
        let mut out = Grid3::new();
        let xs = x.sorted();
        let ys = y.sorted();
        for ((i, j, k), c) in &xs {
            for ((i2, j2, k2), c2) in &ys {
                let a = self.mul_basis(*i as usize, *i2 as usize);
                if a.is_zero() {
                    continue;
                }
                let b = self.mul_basis(*j as usize, *j2 as usize);
                if b.is_zero() {
                    continue;
                }
                let d = self.mul_basis(*k as usize, *k2 as usize);
                let cc = c * c2;
                for (p, cp) in a.entries() {
                    let cp = &cc * cp;
                    for (r, cr) in b.entries() {
                        let cr = &cp * cr;
                        for (s, cs) in d.entries() {
                            out.add((*p as u32, *r as u32, *s as u32), &cr * cs);
                        }
                    }
                }
            }
        }
        out
    }

    /// `(D (x) id)(t)`
    pub fn delta_left(&self, t: &Grid2) -> Grid3 {
        let table = self.coproduct_table();
        let mut out = Grid3::new();
        for (&(i, j), c) in t.iter() {
            for (&(a, b), v) in table[i as usize].iter() {
                out.add((a, b, j), c * v);
            }
        }
        out
    }

    /// `(id (x) D)(t)`
    pub fn delta_right(&self, t: &Grid2) -> Grid3 {
        let table = self.coproduct_table();
        let mut out = Grid3::new();
        for (&(i, j), c) in t.iter() {
            for (&(a, b), v) in table[j as usize].iter() {
                out.add((i, a, b), c * v);
            }
        }
        out
    }

    /// Places a two-fold tensor into legs `(p, q)` of a three-fold one, with `1` elsewhere.
    pub fn embed(t: &Grid2, legs: (usize, usize)) -> Grid3 {
        let mut out = Grid3::new();
        for (&(i, j), c) in t.iter() {
            let mut key = [0u32; 3];
            key[legs.0] = i;
            key[legs.1] = j;
            out.add((key[0], key[1], key[2]), c.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn u(l: u32) -> SmallQuantumGroup {
        SmallQuantumGroup::new(l).unwrap()
    }

    #[test]
    fn generator_coproducts() {
        let g = u(3);
        let kinv = g.k_pow(-1);
        assert_eq!(g.coproduct(&g.k()), Grid2::pure(&g.k(), &g.k()));
        let mut de = Grid2::pure(&g.e(), &g.one());
        de.add_grid(&Grid2::pure(&g.k(), &g.e()));
        assert_eq!(g.coproduct(&g.e()), de);
        let mut df = Grid2::pure(&g.f(), &kinv);
        df.add_grid(&Grid2::pure(&g.one(), &g.f()));
        assert_eq!(g.coproduct(&g.f()), df);
        assert!(g.counit(&g.k()).is_one());
        assert!(g.counit(&g.e()).is_zero());
        assert_eq!(g.antipode(&g.k()), kinv);
    }

    #[test]
    fn coproduct_is_multiplicative() {
        for l in [3, 5] {
            let g = u(l);
            for (_, x) in g.generators() {
                let dx = g.coproduct(&x);
                for j in 0..g.dim() {
                    let y = g.basis(j);
                    assert_eq!(
                        g.coproduct(&g.mul(&x, &y)),
                        g.mul_grid2(&dx, &g.coproduct(&y)),
                        "l={l} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn counit_axiom_on_f() {
        let g = u(3);
        let df = g.coproduct(&g.f());
        // (eps (x) id) D(F)
        let mut left = AlgElem::zero();
        let mut right = AlgElem::zero();
        for (&(i, j), c) in df.iter() {
            if g.counit_basis(i as usize) {
                left = left.axpy(c, &g.basis(j as usize));
            }
            if g.counit_basis(j as usize) {
                right = right.axpy(c, &g.basis(i as usize));
            }
        }
        assert_eq!(left, g.f());
        assert_eq!(right, g.f());
    }

    #[test]
    fn antipode_square_is_conjugation() {
        for l in [3, 5] {
            let g = u(l);
            let kinv = g.k_pow(-1);
            for i in 0..g.dim() {
                let b = g.basis(i);
                let s2 = g.antipode(&g.antipode(&b));
                assert_eq!(s2, g.mul(&g.mul(&kinv, &b), &g.k()));
                assert_eq!(g.antipode_inv(&g.antipode(&b)), b);
                assert_eq!(g.antipode(&g.antipode_inv(&b)), b);
            }
            let s2e = g.antipode(&g.antipode(&g.e()));
            assert_eq!(s2e, g.e().scale(&g.q_pow(-2)));
        }
    }

    #[test]
    fn antipode_is_anti_multiplicative() {
        let g = u(3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let a = g.random_elem(&mut rng, 0.2);
            let b = g.random_elem(&mut rng, 0.2);
            assert_eq!(
                g.antipode(&g.mul(&a, &b)),
                g.mul(&g.antipode(&b), &g.antipode(&a))
            );
            assert_eq!(
                g.counit(&g.mul(&a, &b)),
                &g.counit(&a) * &g.counit(&b)
            );
        }
    }
}
