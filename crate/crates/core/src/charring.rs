//! The rank-one character ring `R = Q[x + 1/x] / (x^l + x^-l - 2)` in the basis of
//! simple characters `xi(0), ..., xi(l-1)`, where `xi(i) = x^i + x^(i-2) + ... + x^-i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{kernel, DenseMatrix, SparseVec, Subspace};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Element of `R` in the simple-character basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CharElem {
    coeffs: Vec<BigRational>,
}

impl CharElem {
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        CharElem { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        CharElem { coeffs: coeffs.iter().map(|&c| rat(c)).collect() }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        CharElem { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        CharElem { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CharElem { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Evaluation at `x = 1`: the dimension of a virtual module.
    pub fn dimension(&self) -> BigRational {
        self.coeffs.iter().enumerate().map(|(i, c)| c * rat(i as i64 + 1)).sum()
    }

    pub fn to_sparse(&self) -> SparseVec<BigRational> {
        SparseVec::from_pairs(self.coeffs.iter().cloned().enumerate().collect())
    }

    fn from_sparse(l: usize, v: &SparseVec<BigRational>) -> Self {
        let mut coeffs = vec![BigRational::zero(); l];
        for (i, c) in v.entries() {
            coeffs[*i] = c.clone();
        }
        CharElem { coeffs }
    }
}

impl Serialize for CharElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl fmt::Display for CharElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, _) => write!(f, " {sign} ")?,
            }
            if mag.is_one() {
                write!(f, "xi({i})")?;
            } else {
                write!(f, "{mag}*xi({i})")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `sum_j c_j m_j` with `m_j = x^j + x^-j` and `m_0 = 1`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SymLaurent {
    terms: BTreeMap<u64, BigRational>,
}

impl SymLaurent {
    pub fn monomial(j: u64, c: BigRational) -> Self {
        let mut s = SymLaurent::default();
        s.add_term(j, c);
        s
    }

    pub fn terms(&self) -> &BTreeMap<u64, BigRational> {
        &self.terms
    }

    pub fn add_term(&mut self, j: u64, c: BigRational) {
        let slot = self.terms.entry(j).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&j);
        }
    }

    /// Product as Laurent polynomials: `m_a m_b = m_(a+b) + m_|a-b|`, with `m_a^2 = m_2a + 2`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = SymLaurent::default();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                let c = ca * cb;
                if a == 0 || b == 0 {
                    out.add_term(a + b, c);
                } else if a == b {
                    out.add_term(2 * a, c.clone());
                    out.add_term(0, c * rat(2));
                } else {
                    out.add_term(a + b, c.clone());
                    out.add_term(a.abs_diff(b), c);
                }
            }
        }
        out
    }

    /// Value at `x = 1`.
    pub fn dimension(&self) -> BigRational {
        self.terms.iter().map(|(&j, c)| if j == 0 { c.clone() } else { c * rat(2) }).sum()
    }
}

/// The ring `R` for a fixed odd `l >= 3`.
#[derive(Clone, Debug)]
pub struct CharRing {
    l: u32,
}

impl CharRing {
    pub fn new(l: u32) -> Result<Self> {
        if l < 3 || l.is_multiple_of(2) {
            return Err(Error::Inadmissible {
                l,
                reason: "l must be odd and at least 3".to_string(),
            });
        }
        Ok(CharRing { l })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn dim(&self) -> usize {
        self.l as usize
    }

    pub fn zero(&self) -> CharElem {
        CharElem { coeffs: vec![BigRational::zero(); self.dim()] }
    }

    pub fn one(&self) -> CharElem {
        self.xi(0)
    }

    pub fn xi(&self, i: usize) -> CharElem {
        let mut e = self.zero();
        e.coeffs[i] = BigRational::one();
        e
    }

    /// Steinberg character `xi(l-1)`.
    pub fn steinberg(&self) -> CharElem {
        self.xi(self.dim() - 1)
    }

    pub fn steinberg_index(&self) -> usize {
        self.dim() - 1
    }

    fn check(&self, a: &CharElem) -> Result<()> {
        if a.coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: a.coeffs.len() });
        }
        Ok(())
    }

    pub fn to_laurent(&self, a: &CharElem) -> SymLaurent {
        let mut s = SymLaurent::default();
        for (i, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut j = i as i64;
            while j >= 0 {
                s.add_term(j as u64, c.clone());
                j -= 2;
            }
        }
        s
    }

    /// Reduction modulo `m_l = 2`, then the unitriangular change `m_i = xi(i) - xi(i-2)`.
    pub fn reduce(&self, s: &SymLaurent) -> CharElem {
        let l = self.l as u64;
        let mut terms = s.terms.clone();
        while let Some((&j, _)) = terms.last_key_value() {
            if j < l {
                break;
            }
            let c = terms.remove(&j).expect("key present");
            let mut push = |k: u64, v: BigRational| {
                let slot = terms.entry(k).or_insert_with(BigRational::zero);
                *slot += v;
                if slot.is_zero() {
                    terms.remove(&k);
                }
            };
            if j == l || j == 2 * l {
                push(0, c * rat(2));
            } else {
                // m_j = m_(j-l) m_l - m_|j-2l|
                push(j - l, &c * rat(2));
                push(j.abs_diff(2 * l), -c);
            }
        }
        let mut out = self.zero();
        for (j, c) in terms {
            let j = j as usize;
            out.coeffs[j] += &c;
            if j >= 2 {
                out.coeffs[j - 2] -= &c;
            }
        }
        out
    }

    pub fn product(&self, a: &CharElem, b: &CharElem) -> Result<CharElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.reduce(&self.to_laurent(a).mul(&self.to_laurent(b))))
    }

    fn mul(&self, a: &CharElem, b: &CharElem) -> CharElem {
        self.product(a, b).expect("elements of this ring")
    }

    /// Matrix of `x -> a x` in the simple-character basis.
    pub fn multiplication_matrix(&self, a: &CharElem) -> DenseMatrix<BigRational> {
        let cols: Vec<_> = (0..self.dim()).map(|k| self.mul(a, &self.xi(k)).to_sparse()).collect();
        DenseMatrix::from_columns(&cols)
    }

    /// `T(a, b) = tr(x -> a b x)`.
    pub fn trace_form(&self, a: &CharElem, b: &CharElem) -> BigRational {
        self.multiplication_matrix(&self.mul(a, b)).trace().unwrap_or_else(BigRational::zero)
    }

    /// Kernel of the trace form.
    pub fn radical(&self) -> Vec<CharElem> {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                SparseVec::from_pairs(
                    (0..n).map(|k| (k, self.trace_form(&self.xi(i), &self.xi(k)))).collect(),
                )
            })
            .collect();
        kernel(n, rows, &BigRational::one())
            .iter()
            .map(|v| CharElem::from_sparse(n, v))
            .collect()
    }

    /// `{a : a s = 0 for all s in space}`.
    pub fn annihilator(&self, space: &[CharElem]) -> Vec<CharElem> {
        let n = self.dim();
        let mut rows = vec![];
        for s in space {
            let m = self.multiplication_matrix(s);
            rows.extend((0..n).map(|i| m.row(i)));
        }
        kernel(n, rows, &BigRational::one())
            .iter()
            .map(|v| CharElem::from_sparse(n, v))
            .collect()
    }

    /// Closed-form socle basis `xi(i) + xi(l-2-i)` for `i < (l-1)/2`, and `xi(l-1)`,
    /// checked against the annihilator of the radical.
    pub fn socle_basis(&self) -> Result<Vec<CharElem>> {
        let n = self.dim();
        let mut basis: Vec<CharElem> =
            (0..(n - 1) / 2).map(|i| self.xi(i).add(&self.xi(n - 2 - i))).collect();
        basis.push(self.steinberg());
        let closed = span(n, &basis);
        let computed = span(n, &self.annihilator(&self.radical()));
        if !closed.same_as(&computed) || closed.dim() != basis.len() {
            return Err(Error::Verification(format!(
                "socle at l = {}: closed form has dim {}, annihilator of the radical has dim {}",
                self.l,
                closed.dim(),
                computed.dim()
            )));
        }
        Ok(basis)
    }

    /// Image in `R` of the classical character `x^n + x^(n-2) + ... + x^-n`, for any `n`.
    pub fn weyl_character(&self, n: u64) -> CharElem {
        let mut s = SymLaurent::default();
        for j in (n % 2..=n).step_by(2) {
            s.add_term(j, BigRational::one());
        }
        self.reduce(&s)
    }

    /// Character of the tilting module `T(l+i)`, `0 <= i <= l-2`: `ch V(l+i) + ch V(l-2-i)`.
    pub fn tilting_character(&self, i: usize) -> CharElem {
        let l = self.dim();
        self.weyl_character((l + i) as u64).add(&self.xi(l - 2 - i))
    }

    /// Classes of simple characters glued by the tilting characters: indices in the
    /// support of one `ch T(l+i)` are linked, and the Steinberg index stays alone.
    pub fn tilting_classes(&self) -> Vec<Vec<usize>> {
        let n = self.dim();
        let mut class_of: Vec<usize> = (0..n).collect();
        for i in 0..n - 1 {
            let merged: Vec<usize> =
                self.tilting_character(i).support().iter().map(|&k| class_of[k]).collect();
            let Some(&target) = merged.iter().min() else { continue };
            for c in class_of.iter_mut() {
                if merged.contains(c) {
                    *c = target;
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, c) in class_of.into_iter().enumerate() {
            classes.entry(c).or_default().push(i);
        }
        classes.into_values().collect()
    }

    pub fn steinberg_checks(&self) -> Result<SteinbergReport> {
        let n = self.dim();
        let st = self.steinberg();
        let socle = self.socle_basis()?;
        let soc = span(n, &socle);
        let absorbs = (0..n).all(|k| soc.contains(&self.mul(&st, &self.xi(k)).to_sparse()));
        let squares: Vec<CharElem> = socle
            .iter()
            .flat_map(|a| socle.iter().map(move |b| (a, b)))
            .map(|(a, b)| self.mul(a, b))
            .collect();
        let soc_sq = span(n, &squares);
        let st_sq = self.mul(&st, &st);
        let st_sq_spans = soc_sq.dim() == 1 && soc_sq.contains(&st_sq.to_sparse()) && !st_sq.is_zero();
        let two = rat(2);
        // ch T(l+i) = 2 (xi(i) + xi(l-2-i)), and these with xi(l-1) span xi(l-1) R
        let tilts: Vec<CharElem> = (0..n - 1).map(|i| self.tilting_character(i)).collect();
        let formula = tilts
            .iter()
            .enumerate()
            .all(|(i, t)| *t == self.xi(i).add(&self.xi(n - 2 - i)).scale(&two));
        let st_multiples: Vec<CharElem> = (0..n).map(|k| self.mul(&st, &self.xi(k))).collect();
        let mut tilt_span = tilts.clone();
        tilt_span.push(st.clone());
        let tilting = formula && span(n, &st_multiples).same_as(&span(n, &tilt_span));
        let mut expected_sq = st.clone();
        for j in 0..n - 1 {
            expected_sq = expected_sq.add(&self.xi(j).scale(&two));
        }
        let classes = self.tilting_classes();
        let st_sq_hits_every_class = classes
            .iter()
            .all(|c| c.iter().any(|&i| !st_sq.coeff(i).is_zero()));
        Ok(SteinbergReport {
            l: self.l,
            socle_dim: socle.len(),
            socle_absorbs_steinberg_multiples: absorbs,
            socle_square_dim: soc_sq.dim(),
            socle_square_spanned_by_steinberg_square: st_sq_spans,
            tilting_formula: tilting,
            steinberg_square_formula: st_sq == expected_sq,
            steinberg_square_meets_every_class: st_sq_hits_every_class,
            steinberg_square: st_sq,
        })
    }
}

fn span(n: usize, v: &[CharElem]) -> Subspace<BigRational> {
    Subspace::span(n, v.iter().map(CharElem::to_sparse))
}

#[derive(Clone, Debug, Serialize)]
pub struct SteinbergReport {
    pub l: u32,
    pub socle_dim: usize,
    pub socle_absorbs_steinberg_multiples: bool,
    pub socle_square_dim: usize,
    pub socle_square_spanned_by_steinberg_square: bool,
    pub tilting_formula: bool,
    pub steinberg_square_formula: bool,
    pub steinberg_square_meets_every_class: bool,
    pub steinberg_square: CharElem,
}

impl SteinbergReport {
    pub fn all_pass(&self) -> bool {
        self.socle_dim == (self.l as usize).div_ceil(2)
            && self.socle_absorbs_steinberg_multiples
            && self.socle_square_dim == 1
            && self.socle_square_spanned_by_steinberg_square
            && self.tilting_formula
            && self.steinberg_square_formula
            && self.steinberg_square_meets_every_class
    }
}
