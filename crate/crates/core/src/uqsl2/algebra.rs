use std::fmt;

use serde::{Serialize, Serializer};

use super::SmallQuantumGroup;
use crate::cyclotomic::CycloNum;
use crate::linalg::SparseVec;

/// PBW monomial `F^f K^k E^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pbw {
    pub f: u32,
    pub k: u32,
    pub e: u32,
}

impl Pbw {
    pub fn new(f: u32, k: u32, e: u32) -> Self {
        Pbw { f, k, e }
    }

    pub fn index(self, l: u32) -> usize {
        ((self.f * l + self.k) * l + self.e) as usize
    }

    pub fn from_index(i: usize, l: u32) -> Self {
        let l = l as usize;
        Pbw {
            f: (i / (l * l)) as u32,
            k: (i / l % l) as u32,
            e: (i % l) as u32,
        }
    }

    /// `f - e`: the `K`-conjugation weight is `q^(-2 (f - e))`.
    pub fn degree(self) -> i64 {
        self.f as i64 - self.e as i64
    }
}

impl fmt::Display for Pbw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![];
        for (name, exp) in [("F", self.f), ("K", self.k), ("E", self.e)] {
            match exp {
                0 => {}
                1 => parts.push(name.to_string()),
                n => parts.push(format!("{name}^{n}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(""))
        }
    }
}

/// Element of `u` in PBW coordinates.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct AlgElem(pub(crate) SparseVec<CycloNum>);

impl AlgElem {
    pub fn zero() -> Self {
        AlgElem(SparseVec::new())
    }

    pub fn from_sparse(v: SparseVec<CycloNum>) -> Self {
        AlgElem(v)
    }

    pub fn from_terms(terms: Vec<(usize, CycloNum)>) -> Self {
        AlgElem(SparseVec::from_pairs(terms))
    }

    pub fn as_sparse(&self) -> &SparseVec<CycloNum> {
        &self.0
    }

    pub fn into_sparse(self) -> SparseVec<CycloNum> {
        self.0
    }

    pub fn entries(&self) -> &[(usize, CycloNum)] {
        self.0.entries()
    }

    pub fn coeff(&self, index: usize) -> Option<&CycloNum> {
        self.0.get(index)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn nnz(&self) -> usize {
        self.0.nnz()
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgElem(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        AlgElem(self.0.sub(&other.0))
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        AlgElem(self.0.scale(c))
    }

    pub fn neg(&self) -> Self {
        AlgElem(SparseVec::from_pairs(
            self.entries().iter().map(|(i, c)| (*i, -c)).collect(),
        ))
    }

    /// `self + c * other`
    pub fn axpy(&self, c: &CycloNum, other: &Self) -> Self {
        AlgElem(self.0.axpy(c, &other.0))
    }

    /// Renders with PBW monomials; `l` is needed to decode indices.
    pub fn display(&self, l: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.entries()
            .iter()
            .map(|(i, c)| format!("({c}) {}", Pbw::from_index(*i, l)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Dense scratch accumulator over the PBW basis.
pub(crate) struct Acc {
    slots: Vec<Option<CycloNum>>,
}

impl Acc {
    pub(crate) fn new(n: usize) -> Self {
        Acc { slots: vec![None; n] }
    }

    pub(crate) fn add(&mut self, i: usize, v: CycloNum) {
        match &mut self.slots[i] {
            Some(s) => *s += &v,
            slot @ None => *slot = Some(v),
        }
    }

    pub(crate) fn finish(self) -> AlgElem {
        AlgElem(SparseVec::from_pairs(
            self.slots
                .into_iter()
                .enumerate()
                .filter_map(|(i, v)| v.filter(|c| !c.is_zero()).map(|c| (i, c)))
                .collect(),
        ))
    }
}

/// Serialized as `[[f, k, e, [coeffs...]], ...]`.
pub struct AlgElemJson<'a> {
    pub elem: &'a AlgElem,
    pub l: u32,
}

impl Serialize for AlgElemJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.elem.entries().iter().map(|(i, c)| {
            let p = Pbw::from_index(*i, self.l);
            (p.f, p.k, p.e, c.to_strings())
        }))
    }
}

impl SmallQuantumGroup {
    pub fn pbw(&self, i: usize) -> Pbw {
        Pbw::from_index(i, self.l)
    }

    pub fn index(&self, p: Pbw) -> usize {
        p.index(self.l)
    }

    pub fn monomial(&self, f: u32, k: i64, e: u32) -> AlgElem {
        let k = k.rem_euclid(self.l as i64) as u32;
        AlgElem::from_terms(vec![(self.index(Pbw::new(f, k, e)), self.field.one())])
    }

    pub fn basis(&self, i: usize) -> AlgElem {
        AlgElem::from_terms(vec![(i, self.field.one())])
    }

    pub fn one(&self) -> AlgElem {
        self.monomial(0, 0, 0)
    }

    pub fn e(&self) -> AlgElem {
        self.monomial(0, 0, 1)
    }

    pub fn f(&self) -> AlgElem {
        self.monomial(1, 0, 0)
    }

    pub fn k(&self) -> AlgElem {
        self.monomial(0, 1, 0)
    }

    pub fn k_pow(&self, n: i64) -> AlgElem {
        self.monomial(0, n, 0)
    }

    pub fn scalar(&self, c: CycloNum) -> AlgElem {
        AlgElem::from_terms(vec![(0, c)])
    }

    pub fn generators(&self) -> [(&'static str, AlgElem); 3] {
        [("E", self.e()), ("F", self.f()), ("K", self.k())]
    }

    /// `E * F^a K^b E^c`
    pub(crate) fn e_left(&self, p: Pbw) -> Vec<(Pbw, CycloNum)> {
        let l = self.l;
        let mut out = vec![];
        if p.e + 1 < l {
            out.push((Pbw::new(p.f, p.k, p.e + 1), self.q_pow(-2 * p.k as i64)));
        }
        if p.f >= 1 {
            // E F^a = F^a E + [a]/(q - q^-1) F^(a-1) (q^-(a-1) K - q^(a-1) K^-1)
            let a = p.f as i64;
            let kappa = &self.commutator[p.f as usize];
            out.push((
                Pbw::new(p.f - 1, (p.k + 1) % l, p.e),
                kappa * self.q_pow_ref(-(a - 1)),
            ));
            out.push((
                Pbw::new(p.f - 1, (p.k + l - 1) % l, p.e),
                -(kappa * self.q_pow_ref(a - 1)),
            ));
        }
        out
    }

    /// `F * F^a K^b E^c`
    pub(crate) fn f_left(&self, p: Pbw) -> Option<Pbw> {
        (p.f + 1 < self.l).then(|| Pbw::new(p.f + 1, p.k, p.e))
    }

    /// `K^n * F^a K^b E^c = q^(-2 n a) F^a K^(b+n) E^c`
    pub(crate) fn k_left(&self, p: Pbw, n: i64) -> (Pbw, CycloNum) {
        let k = (p.k as i64 + n).rem_euclid(self.l as i64) as u32;
        (Pbw::new(p.f, k, p.e), self.q_pow(-2 * n * p.f as i64))
    }

    pub(crate) fn build_ef_table(&self) -> Vec<Vec<(Pbw, CycloNum)>> {
        let l = self.l;
        let mut table = vec![vec![]; (l * l) as usize];
        for d in 0..l {
            let mut cur = vec![(Pbw::new(d, 0, 0), self.field.one())];
            for c in 0..l {
                table[(c * l + d) as usize] = cur.clone();
                let mut acc = Acc::new(self.dim());
                for (p, w) in &cur {
                    for (p2, w2) in self.e_left(*p) {
                        acc.add(self.index(p2), w * &w2);
                    }
                }
                cur = acc
                    .finish()
                    .entries()
                    .iter()
                    .map(|(i, w)| (self.pbw(*i), w.clone()))
                    .collect();
            }
        }
        table
    }

    /// Accumulates `coeff * (F^a K^b E^c)(F^d K^e E^f)` into `acc`.
    pub(crate) fn mul_monomials_into(&self, x: Pbw, y: Pbw, coeff: &CycloNum, acc: &mut Acc) {
        let l = self.l;
        for (m, w) in &self.ef[(x.e * l + y.f) as usize] {
            // F^a K^b (F^d' K^k' E^c') K^e E^f
            if x.f + m.f >= l || m.e + y.e >= l {
                continue;
            }
            let exp = -2 * (x.k as i64 * m.f as i64 + m.e as i64 * y.k as i64);
            let p = Pbw::new(x.f + m.f, (x.k + m.k + y.k) % l, m.e + y.e);
            let c = &(coeff * w) * self.q_pow_ref(exp);
            acc.add(self.index(p), c);
        }
    }

    pub fn mul(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        let mut acc = Acc::new(self.dim());
        for (i, cx) in x.entries() {
            let px = self.pbw(*i);
            for (j, cy) in y.entries() {
                self.mul_monomials_into(px, self.pbw(*j), &(cx * cy), &mut acc);
            }
        }
        acc.finish()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> AlgElem {
        let mut acc = Acc::new(self.dim());
        self.mul_monomials_into(self.pbw(i), self.pbw(j), &self.field.one(), &mut acc);
        acc.finish()
    }

    pub fn commutator(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    pub fn pow(&self, x: &AlgElem, n: u32) -> AlgElem {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    /// Images of the basis under `z -> x z`.
    pub fn left_mult_columns(&self, x: &AlgElem) -> Vec<AlgElem> {
        (0..self.dim()).map(|j| self.mul(x, &self.basis(j))).collect()
    }

    /// Images of the basis under `z -> z x`.
    pub fn right_mult_columns(&self, x: &AlgElem) -> Vec<AlgElem> {
        (0..self.dim()).map(|j| self.mul(&self.basis(j), x)).collect()
    }

    /// Random element with each basis coefficient present with probability `density`;
    /// coefficients are small integer combinations of powers of `q`.
    pub fn random_elem<R: rand::Rng>(&self, rng: &mut R, density: f64) -> AlgElem {
        let mut terms = vec![];
        for i in 0..self.dim() {
            if !rng.gen_bool(density) {
                continue;
            }
            let mut c = self.field.zero();
            for _ in 0..self.field.degree() {
                let k = rng.gen_range(0..self.l as i64);
                let r = num_rational::BigRational::from_integer(rng.gen_range(-3i64..=3).into());
                c += &self.q_pow(k).scale(&r);
            }
            terms.push((i, c));
        }
        AlgElem::from_terms(terms)
    }
}
