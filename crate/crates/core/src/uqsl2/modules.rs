use super::algebra::{AlgElem, Pbw};
use super::dual::Functional;
use super::SmallQuantumGroup;
use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, SparseVec};

/// Simple module `L(i)` with basis `v_0..v_i`:
/// `K v_k = q^(i-2k) v_k`, `E v_k = [i-k+1] v_(k-1)`, `F v_k = [k+1] v_(k+1)`, `F v_i = 0`.
#[derive(Clone, Debug)]
pub struct SimpleModule {
    highest_weight: u32,
    e: DenseMatrix<CycloNum>,
    f: DenseMatrix<CycloNum>,
    k: DenseMatrix<CycloNum>,
}

impl SimpleModule {
    pub fn highest_weight(&self) -> u32 {
        self.highest_weight
    }

    pub fn dim(&self) -> usize {
        self.highest_weight as usize + 1
    }

    pub fn e(&self) -> &DenseMatrix<CycloNum> {
        &self.e
    }

    pub fn f(&self) -> &DenseMatrix<CycloNum> {
        &self.f
    }

    pub fn k(&self) -> &DenseMatrix<CycloNum> {
        &self.k
    }

    /// Image of `v_m` under `F^a K^b E^c`; monomials send basis vectors to multiples of basis vectors.
    fn apply_monomial(&self, g: &SmallQuantumGroup, p: Pbw, m: usize) -> Option<(usize, CycloNum)> {
        let i = self.highest_weight as i64;
        let (a, b, c) = (p.f as i64, p.k as i64, p.e as i64);
        let m = m as i64;
        if c > m || m - c + a > i {
            return None;
        }
        let field = g.field();
        let mut coeff = field.one();
        // E^c: v_m -> prod_(t=0..c) [i - (m - t) + 1] v_(m-c)
        for t in 0..c {
            coeff = &coeff * &field.qint(i - (m - t) + 1);
        }
        let mid = m - c;
        coeff = &coeff * &g.q_pow(b * (i - 2 * mid));
        // F^a: v_mid -> prod_(t=0..a) [mid + t + 1] v_(mid+a)
        for t in 0..a {
            coeff = &coeff * &field.qint(mid + t + 1);
        }
        (!coeff.is_zero()).then_some(((mid + a) as usize, coeff))
    }

    pub fn rho(&self, g: &SmallQuantumGroup, x: &AlgElem) -> DenseMatrix<CycloNum> {
        let n = self.dim();
        let cols: Vec<SparseVec<CycloNum>> = (0..n)
            .map(|m| {
                let mut pairs = vec![];
                for (idx, c) in x.entries() {
                    if let Some((row, v)) = self.apply_monomial(g, g.pbw(*idx), m) {
                        pairs.push((row, c * &v));
                    }
                }
                SparseVec::from_pairs(pairs)
            })
            .collect();
        DenseMatrix::from_columns(&cols)
    }

    /// `Tr rho(x)`
    pub fn trace(&self, g: &SmallQuantumGroup, x: &AlgElem) -> CycloNum {
        let mut acc = g.field().zero();
        for (idx, c) in x.entries() {
            let p = g.pbw(*idx);
            if p.f != p.e {
                continue;
            }
            for m in 0..self.dim() {
                if let Some((row, v)) = self.apply_monomial(g, p, m) {
                    if row == m {
                        acc += &(c * &v);
                    }
                }
            }
        }
        acc
    }
}

impl SmallQuantumGroup {
    pub fn simple_module(&self, i: u32) -> Result<SimpleModule> {
        if i >= self.l {
            return Err(Error::OutOfRange {
                index: i as usize,
                bound: self.l as usize,
            });
        }
        let n = i as usize + 1;
        let f = &self.field;
        let mut e = DenseMatrix::zeros(n);
        let mut fm = DenseMatrix::zeros(n);
        let mut k = DenseMatrix::zeros(n);
        for m in 0..n {
            let mi = m as i64;
            k.set(m, m, self.q_pow(i as i64 - 2 * mi));
            if m > 0 {
                e.set(m - 1, m, f.qint(i as i64 - mi + 1));
            }
            if m + 1 < n {
                fm.set(m + 1, m, f.qint(mi + 1));
            }
        }
        Ok(SimpleModule {
            highest_weight: i,
            e,
            f: fm,
            k,
        })
    }

    pub fn simple_modules(&self) -> Vec<SimpleModule> {
        (0..self.l)
            .map(|i| self.simple_module(i).expect("i < l"))
            .collect()
    }

    /// `xi(i)(x) = Tr_L(i)(rho(K x))`; the grouplike `K` is the one that lands in `C_r`
    /// for `S^-2 = Ad(K)`.
    pub fn q_character(&self, i: u32) -> Result<Functional> {
        let module = self.simple_module(i)?;
        let k = self.k();
        Ok(Functional::from_values(
            (0..self.dim())
                .map(|j| {
                    let kx = self.mul(&k, &self.basis(j));
                    (j, module.trace(self, &kx))
                })
                .collect(),
        ))
    }

    pub fn q_characters(&self) -> Vec<Functional> {
        (0..self.l)
            .map(|i| self.q_character(i).expect("i < l"))
            .collect()
    }

    /// The scalar by which a central `z` acts on `L(i)`.
    pub fn central_character(&self, module: &SimpleModule, z: &AlgElem) -> CycloNum {
        self.rho_entry(module, z, 0)
    }

    fn rho_entry(&self, module: &SimpleModule, x: &AlgElem, m: usize) -> CycloNum {
        let mut acc = self.field.zero();
        for (idx, c) in x.entries() {
            if let Some((row, v)) = module.apply_monomial(self, self.pbw(*idx), m) {
                if row == m {
                    acc += &(c * &v);
                }
            }
        }
        acc
    }

    /// `FE + (q K + q^-1 K^-1) / (q - q^-1)^2`
    pub fn casimir(&self) -> AlgElem {
        let f = &self.field;
        let d = (&f.q() - &f.q_pow(-1)).pow(2).expect("nonnegative power");
        let d = d.inv().expect("q != q^-1");
        let k_part = self
            .k()
            .scale(&f.q())
            .add(&self.k_pow(-1).scale(&f.q_pow(-1)))
            .scale(&d);
        self.mul(&self.f(), &self.e()).add(&k_part)
    }
}
