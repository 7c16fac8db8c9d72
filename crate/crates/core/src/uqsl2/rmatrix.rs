use num_bigint::BigInt;
use num_rational::BigRational;

use super::algebra::AlgElem;
use super::hopf::{Grid2, TensorElem};
use super::SmallQuantumGroup;
use crate::cyclotomic::CycloNum;

impl SmallQuantumGroup {
    /// `q^(s(s-1)/2) (q - q^-1)^s / [s]!`
    fn r_coefficient(&self, s: u32) -> CycloNum {
        let f = &self.field;
        let base = &f.q() - &f.q_pow(-1);
        let num = &self.q_pow((s as i64) * (s as i64 - 1) / 2)
            * &base.pow(s as i64).expect("nonnegative power");
        &num * &f.qfact(s).inv().expect("[s]! is invertible for s < l")
    }

    /// `R = (1/l) sum_(m,n) q^(-2mn) K^m (x) K^n . sum_s c_s F^s (x) E^s`, grouped by
    /// the left factor `K^m F^s`.
    pub fn r_matrix(&self) -> &TensorElem {
        self.r_matrix.get_or_init(|| {
            let l = self.l as i64;
            let inv_l = BigRational::new(BigInt::from(1), BigInt::from(l));
            let mut terms = vec![];
            for m in 0..l {
                for s in 0..self.l {
                    let c = self.r_coefficient(s).scale(&inv_l);
                    let left = self.mul(&self.k_pow(m), &self.monomial(s, 0, 0)).scale(&c);
                    let right = (0..l).fold(AlgElem::zero(), |acc, n| {
                        acc.axpy(&self.q_pow(-2 * m * n), &self.monomial(0, n, s))
                    });
                    terms.push((left, right));
                }
            }
            TensorElem { terms }
        })
    }

    pub fn r_grid(&self) -> Grid2 {
        self.r_matrix().to_grid()
    }

    /// `M = R21 R12 = sum b_i a_j (x) a_i b_j` for `R = sum a_i (x) b_i`.
    pub fn monodromy(&self) -> &Grid2 {
        self.monodromy.get_or_init(|| {
            let r = self.r_grid();
            self.mul_grid2(&r.flip(), &r)
        })
    }

    /// `(S (x) id)(t)`
    pub fn antipode_left(&self, t: &Grid2) -> Grid2 {
        let s = self.antipode_table();
        self.map_grid2(t, |i| s[i].clone(), |j| self.basis(j))
    }

    pub fn one_tensor(&self) -> Grid2 {
        Grid2::pure(&self.one(), &self.one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_matrix_shape() {
        let g = SmallQuantumGroup::new(3).unwrap();
        assert_eq!(g.r_matrix().len(), 9);
        // (eps (x) id) R = 1
        let mut acc = AlgElem::zero();
        for (&(i, j), c) in g.r_grid().iter() {
            if g.counit_basis(i as usize) {
                acc = acc.axpy(c, &g.basis(j as usize));
            }
        }
        assert_eq!(acc, g.one());
    }

    #[test]
    fn quasitriangular_on_generators_l3() {
        let g = SmallQuantumGroup::new(3).unwrap();
        let r = g.r_grid();
        for (name, x) in g.generators() {
            let lhs = g.mul_grid2(&r, &g.coproduct(&x));
            let rhs = g.mul_grid2(&g.coproduct_op(&x), &r);
            assert_eq!(lhs, rhs, "{name}");
        }
    }
}
