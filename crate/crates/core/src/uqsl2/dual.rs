use serde::{Serialize, Serializer};

use super::algebra::{AlgElem, Pbw};
use super::SmallQuantumGroup;
use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::linalg::{kernel, SparseVec};

/// Linear functional on `u`, stored by its values on the PBW basis.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Functional(pub(crate) SparseVec<CycloNum>);

impl Functional {
    pub fn zero() -> Self {
        Functional(SparseVec::new())
    }

    pub fn from_values(values: Vec<(usize, CycloNum)>) -> Self {
        Functional(SparseVec::from_pairs(values))
    }

    pub fn from_sparse(v: SparseVec<CycloNum>) -> Self {
        Functional(v)
    }

    pub fn as_sparse(&self) -> &SparseVec<CycloNum> {
        &self.0
    }

    pub fn values(&self) -> &[(usize, CycloNum)] {
        self.0.entries()
    }

    pub fn value_at(&self, i: usize) -> Option<&CycloNum> {
        self.0.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Functional(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Functional(self.0.sub(&other.0))
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        Functional(self.0.scale(c))
    }
}

impl Serialize for Functional {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.values().iter().map(|(i, c)| (i, c.to_strings())))
    }
}

/// Rows of the map given by `cols` (images of the basis), as sparse vectors.
pub(crate) fn rows_of(n: usize, cols: &[AlgElem]) -> Vec<SparseVec<CycloNum>> {
    let mut rows: Vec<Vec<(usize, CycloNum)>> = vec![vec![]; n];
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.entries() {
            rows[*i].push((j, v.clone()));
        }
    }
    rows.into_iter()
        .filter(|r| !r.is_empty())
        .map(SparseVec::from_pairs)
        .collect()
}

impl SmallQuantumGroup {
    pub fn eval(&self, p: &Functional, x: &AlgElem) -> CycloNum {
        p.0.dot(x.as_sparse()).unwrap_or_else(|| self.field.zero())
    }

    pub fn counit_functional(&self) -> Functional {
        Functional::from_values(
            (0..self.dim())
                .filter(|&i| self.counit_basis(i))
                .map(|i| (i, self.field.one()))
                .collect(),
        )
    }

    /// `(a -> p)(b) = p(S(a) b)`
    pub fn act_left(&self, a: &AlgElem, p: &Functional) -> Functional {
        let sa = self.antipode(a);
        Functional::from_values(
            (0..self.dim())
                .map(|k| (k, self.eval(p, &self.mul(&sa, &self.basis(k)))))
                .collect(),
        )
    }

    /// `a <- p = sum p(a_(1)) a_(2)`
    pub fn act_right(&self, a: &AlgElem, p: &Functional) -> AlgElem {
        let mut acc = super::algebra::Acc::new(self.dim());
        for (&(i, j), c) in self.coproduct(a).iter() {
            if let Some(v) = p.value_at(i as usize) {
                acc.add(j as usize, c * v);
            }
        }
        acc.finish()
    }

    /// `(p q)(x) = sum p(x_(1)) q(x_(2))`
    pub fn functional_product(&self, p: &Functional, q: &Functional) -> Functional {
        let table = self.coproduct_table();
        let values = (0..self.dim())
            .map(|k| {
                let mut v = self.field.zero();
                for (&(i, j), c) in table[k].iter() {
                    if let (Some(a), Some(b)) = (p.value_at(i as usize), q.value_at(j as usize)) {
                        v += &(&(c * a) * b);
                    }
                }
                (k, v)
            })
            .collect();
        Functional::from_values(values)
    }

    /// `(p <- x)(y) = p(x y)`
    pub fn shift_functional(&self, p: &Functional, x: &AlgElem) -> Functional {
        Functional::from_values(
            (0..self.dim())
                .map(|k| (k, self.eval(p, &self.mul(x, &self.basis(k)))))
                .collect(),
        )
    }

    /// `eta(f)(x) = f(K x)`
    pub fn eta(&self, f: &Functional) -> Functional {
        self.shift_functional(f, &self.k())
    }

    pub fn eta_inv(&self, f: &Functional) -> Functional {
        self.shift_functional(f, &self.k_pow(-1))
    }

    /// `f o S`
    pub fn compose_antipode(&self, f: &Functional) -> Functional {
        let s = self.antipode_table();
        Functional::from_values((0..self.dim()).map(|k| (k, self.eval(f, &s[k]))).collect())
    }

    fn kernel_of(&self, rows: Vec<SparseVec<CycloNum>>) -> Vec<SparseVec<CycloNum>> {
        kernel(self.dim(), rows, &self.field.one())
    }

    /// Two-sided integral: `x L = L x = eps(x) L` for the generators, normalized so the
    /// coefficient of `F^(l-1) K^b E^(l-1)` with the smallest such `b` is 1.
    pub fn integral(&self) -> Result<&AlgElem> {
        self.integral
            .get_or_init(|| {
                let n = self.dim();
                let mut rows = vec![];
                for (_, x) in self.generators() {
                    let eps = self.counit(&x);
                    let shift = |cols: Vec<AlgElem>| -> Vec<AlgElem> {
                        cols.into_iter()
                            .enumerate()
                            .map(|(j, c)| c.axpy(&-&eps, &self.basis(j)))
                            .collect()
                    };
                    rows.extend(rows_of(n, &shift(self.left_mult_columns(&x))));
                    rows.extend(rows_of(n, &shift(self.right_mult_columns(&x))));
                }
                let ker = self.kernel_of(rows);
                if ker.len() != 1 {
                    return Err(Error::NotOneDimensional { what: "two-sided integral", dim: ker.len() });
                }
                let lam = AlgElem::from_sparse(ker[0].clone());
                let top = self.l - 1;
                let lead = (0..self.l)
                    .find_map(|b| lam.coeff(self.index(Pbw::new(top, b, top))))
                    .ok_or_else(|| Error::Verification("integral has no top-degree term".into()))?
                    .inv()?;
                Ok(lam.scale(&lead))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Dimension of the space of two-sided integrals.
    pub fn integral_space_dim(&self) -> usize {
        match self.integral() {
            Ok(_) => 1,
            Err(Error::NotOneDimensional { dim, .. }) => dim,
            Err(_) => 0,
        }
    }

    /// Right integral: `sum lambda(x_(1)) x_(2) = lambda(x) 1` for all basis `x`,
    /// normalized by `lambda(Lambda) = 1`.
    pub fn right_integral(&self) -> Result<&Functional> {
        self.right_integral
            .get_or_init(|| {
                let n = self.dim();
                let table = self.coproduct_table();
                let one = self.field.one();
                let mut rows = vec![];
                for (k, d) in table.iter().enumerate() {
                    let mut by_out: std::collections::BTreeMap<u32, Vec<(usize, CycloNum)>> =
                        std::collections::BTreeMap::new();
                    by_out.entry(0).or_default();
                    for (&(i, j), c) in d.iter() {
                        by_out.entry(j).or_default().push((i as usize, c.clone()));
                    }
                    for (j, mut row) in by_out {
                        if j == 0 {
                            row.push((k, -&one));
                        }
                        let v = SparseVec::from_pairs(row);
                        if !v.is_zero() {
                            rows.push(v);
                        }
                    }
                }
                let ker = kernel(n, rows, &one);
                if ker.len() != 1 {
                    return Err(Error::NotOneDimensional { what: "right integral", dim: ker.len() });
                }
                let lam = Functional::from_sparse(ker[0].clone());
                let norm = self.eval(&lam, self.integral()?);
                Ok(lam.scale(&norm.inv()?))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `phi(a) = a -> lambda_r`
    pub fn phi(&self, a: &AlgElem) -> Result<Functional> {
        Ok(self.act_left(a, self.right_integral()?))
    }

    /// `phi^-1(p) = Lambda <- p`
    pub fn phi_inv(&self, p: &Functional) -> Result<AlgElem> {
        Ok(self.act_right(self.integral()?, p))
    }

    /// `J(p) = sum p(x_i) y_i` for the monodromy `M = sum x_i (x) y_i`.
    pub fn transmute(&self, p: &Functional) -> AlgElem {
        let mut acc = super::algebra::Acc::new(self.dim());
        for (&(i, j), c) in self.monodromy().iter() {
            if let Some(v) = p.value_at(i as usize) {
                acc.add(j as usize, c * v);
            }
        }
        acc.finish()
    }

    /// `p(x b) = p(b S^-2(x))` for the generators and all basis `b`; enough since
    /// `S^-2` is an algebra map.
    pub fn in_c_r(&self, p: &Functional) -> bool {
        self.c_r_equations()
            .iter()
            .all(|row| p.0.dot(row).is_none_or(|v| v.is_zero()))
    }

    /// `S^-2(x) = K x K^-1`
    pub fn antipode_inv_square(&self, x: &AlgElem) -> AlgElem {
        self.mul(&self.mul(&self.k(), x), &self.k_pow(-1))
    }

    fn c_r_equations(&self) -> Vec<SparseVec<CycloNum>> {
        let mut rows = vec![];
        for (_, x) in self.generators() {
            let sx = self.antipode_inv_square(&x);
            for b in 0..self.dim() {
                let lhs = self.mul(&x, &self.basis(b));
                let rhs = self.mul(&self.basis(b), &sx);
                let row = lhs.sub(&rhs).into_sparse();
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
        rows
    }

    /// Basis of `C_r = {p : p(ab) = p(b S^-2(a))}`.
    pub fn c_r_basis(&self) -> Vec<Functional> {
        self.kernel_of(self.c_r_equations())
            .into_iter()
            .map(Functional::from_sparse)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counit_and_unit_actions() {
        let g = SmallQuantumGroup::new(3).unwrap();
        let eps = g.counit_functional();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let a = g.random_elem(&mut rng, 0.3);
            assert_eq!(g.act_right(&a, &eps), a);
            let p = Functional::from_sparse(g.random_elem(&mut rng, 0.3).into_sparse());
            assert_eq!(g.act_left(&g.one(), &p), p);
        }
    }

    #[test]
    fn integrals_l3() {
        let g = SmallQuantumGroup::new(3).unwrap();
        let lam = g.integral().unwrap();
        assert!(g.mul(&g.e(), lam).is_zero());
        assert!(g.mul(lam, &g.f()).is_zero());
        assert_eq!(g.mul(&g.k(), lam), *lam);
        assert_eq!(g.integral_space_dim(), 1);
        let lr = g.right_integral().unwrap();
        assert!(g.eval(lr, lam).is_one());
        assert!(g.in_c_r(lr));
    }

    #[test]
    fn integral_is_a_twisted_sum_over_k() {
        // oracle: E F^(l-1) .. E^(l-1) terms vanish only in top degree, and
        // K F^(l-1) = q^2 F^(l-1) K forces the coefficient of K^b to be q^(2b)
        for l in [3, 5] {
            let g = SmallQuantumGroup::new(l).unwrap();
            let top = l - 1;
            let expected = (0..l).fold(AlgElem::zero(), |a, b| {
                a.axpy(&g.q_pow(2 * b as i64), &g.basis(g.index(Pbw::new(top, b, top))))
            });
            assert_eq!(*g.integral().unwrap(), expected, "l = {l}");
        }
    }

    #[test]
    fn integral_absorbs_random_elements() {
        let g = SmallQuantumGroup::new(3).unwrap();
        let lam = g.integral().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let x = g.random_elem(&mut rng, 0.2);
            let expected = lam.scale(&g.counit(&x));
            assert_eq!(g.mul(&x, lam), expected);
            assert_eq!(g.mul(lam, &x), expected);
        }
    }

    #[test]
    fn module_axioms_for_hits() {
        let g = SmallQuantumGroup::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..4 {
            let a = g.random_elem(&mut rng, 0.1);
            let b = g.random_elem(&mut rng, 0.1);
            let p = Functional::from_sparse(g.random_elem(&mut rng, 0.3).into_sparse());
            let q = Functional::from_sparse(g.random_elem(&mut rng, 0.3).into_sparse());
            assert_eq!(g.act_left(&g.mul(&a, &b), &p), g.act_left(&a, &g.act_left(&b, &p)));
            assert_eq!(
                g.act_right(&a, &g.functional_product(&p, &q)),
                g.act_right(&g.act_right(&a, &p), &q)
            );
        }
    }

    #[test]
    fn transmute_of_counit() {
        let g = SmallQuantumGroup::new(3).unwrap();
        // oracle: contract the first leg of M with eps directly
        let mut direct = AlgElem::zero();
        for (&(i, j), c) in g.monodromy().iter() {
            if g.counit_basis(i as usize) {
                direct = direct.axpy(c, &g.basis(j as usize));
            }
        }
        let j = g.transmute(&g.counit_functional());
        assert_eq!(j, direct);
        assert_eq!(j, g.one());
    }
}
