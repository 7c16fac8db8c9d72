use serde::Serialize;

use super::algebra::AlgElem;
use super::dual::{rows_of, Functional};
use super::SmallQuantumGroup;
use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::linalg::{kernel, CoordinateSystem, DenseMatrix, SparseVec, Subspace};

type Space = Subspace<CycloNum>;

/// A commutative subalgebra of `u` given by a basis, with products expressed in that basis.
struct Subalgebra<'a> {
    g: &'a SmallQuantumGroup,
    basis: Vec<AlgElem>,
    coords: CoordinateSystem<CycloNum>,
}

impl<'a> Subalgebra<'a> {
    fn new(g: &'a SmallQuantumGroup, space: &Space) -> Result<Self> {
        let basis: Vec<AlgElem> = space.basis().iter().cloned().map(AlgElem::from_sparse).collect();
        let coords = CoordinateSystem::new(g.dim(), space.basis())
            .ok_or_else(|| Error::Verification("echelon basis is dependent".into()))?;
        Ok(Subalgebra { g, basis, coords })
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn coordinates(&self, x: &AlgElem) -> Result<SparseVec<CycloNum>> {
        self.coords
            .coordinates(x.as_sparse())
            .ok_or_else(|| Error::Verification("product leaves the subalgebra".into()))
    }

    fn element(&self, c: &SparseVec<CycloNum>) -> AlgElem {
        c.entries()
            .iter()
            .fold(AlgElem::zero(), |acc, (i, v)| acc.axpy(v, &self.basis[*i]))
    }

    fn mult_matrix(&self, x: &AlgElem) -> Result<DenseMatrix<CycloNum>> {
        let cols = self
            .basis
            .iter()
            .map(|b| self.coordinates(&self.g.mul(x, b)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DenseMatrix::from_columns(&cols))
    }

    /// Kernel of the trace form `(a, b) -> Tr(L_ab)`; the Jacobson radical in characteristic 0.
    fn radical(&self) -> Result<Vec<AlgElem>> {
        let mats = self.basis.iter().map(|b| self.mult_matrix(b)).collect::<Result<Vec<_>>>()?;
        let zero = self.g.field.zero();
        let rows = (0..self.dim())
            .map(|i| {
                SparseVec::from_pairs(
                    (0..self.dim())
                        .map(|j| (j, mats[i].mul(&mats[j]).trace().unwrap_or_else(|| zero.clone())))
                        .collect(),
                )
            })
            .collect();
        Ok(kernel(self.dim(), rows, &self.g.field.one())
            .iter()
            .map(|c| self.element(c))
            .collect())
    }

    /// `{a : a s = 0 for every s}` inside the subalgebra.
    fn annihilator(&self, s: &[AlgElem]) -> Vec<AlgElem> {
        let mut rows = vec![];
        for x in s {
            let cols: Vec<AlgElem> = self.basis.iter().map(|b| self.g.mul(b, x)).collect();
            rows.extend(rows_of(self.g.dim(), &cols));
        }
        kernel(self.dim(), rows, &self.g.field.one())
            .iter()
            .map(|c| self.element(c))
            .collect()
    }
}

fn span(g: &SmallQuantumGroup, xs: &[AlgElem]) -> Space {
    Subspace::span(g.dim(), xs.iter().map(|x| x.as_sparse().clone()))
}

fn elements(s: &Space) -> Vec<AlgElem> {
    s.basis().iter().cloned().map(AlgElem::from_sparse).collect()
}

/// `Some(c)` with `a = c b`, for `b != 0`.
pub(crate) fn proportionality(a: &AlgElem, b: &AlgElem) -> Option<CycloNum> {
    let (i, bi) = b.entries().first()?;
    let c = match a.coeff(*i) {
        Some(ai) => ai * &bi.inv().ok()?,
        None => return a.is_zero().then(|| bi.field().zero()),
    };
    (b.scale(&c) == *a).then_some(c)
}

/// A primitive central idempotent with the simple modules of its block.
#[derive(Clone, Debug, Serialize)]
pub struct Idempotent {
    pub weights: Vec<u32>,
    #[serde(skip)]
    pub element: AlgElem,
    pub in_ztilde: bool,
}

/// Multiplicative structure of one block `Z 1_B`.
#[derive(Clone, Debug, Serialize)]
pub struct BlockShape {
    pub weights: Vec<u32>,
    pub dim: usize,
    pub ztilde_dim: usize,
    pub zprime_dim: usize,
    pub intersection_dim: usize,
    /// A radical element of `Z~ 1_B` (`Z~ ∩ Z'` part), if the block is not simple.
    #[serde(skip)]
    pub t: Option<AlgElem>,
    /// A radical element of `Z' 1_B` completing `t` to a basis of the radical.
    #[serde(skip)]
    pub s: Option<AlgElem>,
    /// `t^2 = ts = s^2 = 0`
    pub radical_products_vanish: bool,
}

#[derive(Clone, Debug)]
pub struct CentralSubalgebras {
    pub l: u32,
    pub center: Space,
    pub ztilde: Space,
    pub zprime: Space,
    pub intersection: Space,
    pub sum: Space,
    pub radical: Space,
    pub socle: Space,
    pub ztilde_radical: Space,
    pub ztilde_ann_radical: Space,
    pub idempotents: Vec<Idempotent>,
    pub blocks: Vec<BlockShape>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralDims {
    pub center: usize,
    pub ztilde: usize,
    pub zprime: usize,
    pub intersection: usize,
    pub sum: usize,
    pub radical: usize,
    pub socle: usize,
    pub idempotents: usize,
}

impl CentralSubalgebras {
    pub fn dims(&self) -> CentralDims {
        CentralDims {
            center: self.center.dim(),
            ztilde: self.ztilde.dim(),
            zprime: self.zprime.dim(),
            intersection: self.intersection.dim(),
            sum: self.sum.dim(),
            radical: self.radical.dim(),
            socle: self.socle.dim(),
            idempotents: self.idempotents.len(),
        }
    }

    pub fn idempotents_sum_to_one(&self, g: &SmallQuantumGroup) -> bool {
        let total = self
            .idempotents
            .iter()
            .fold(AlgElem::zero(), |acc, e| acc.add(&e.element));
        total == g.one()
    }

    /// `e_i e_j = delta_ij e_i`
    pub fn idempotents_orthogonal(&self, g: &SmallQuantumGroup) -> bool {
        self.idempotents.iter().enumerate().all(|(i, a)| {
            self.idempotents.iter().enumerate().all(|(j, b)| {
                let p = g.mul(&a.element, &b.element);
                if i == j {
                    p == a.element
                } else {
                    p.is_zero()
                }
            })
        })
    }
}

/// Outcome of the Fourier transform identities on the center.
#[derive(Clone, Debug, Serialize)]
pub struct FourierReport {
    /// `c` with `F^2(z) = c S^-1(z)` for every `z` in `Z`.
    pub square_scalar: Option<CycloNum>,
    /// `c` with `F(1) = c Lambda`.
    pub one_scalar: Option<CycloNum>,
    pub ztilde_to_zprime: bool,
    pub zprime_to_ztilde: bool,
    /// `c` with `eta^-1 F'^2 eta (ch L(i)) = c ch L(i) o S` for every `i`.
    pub dual_square_scalar: Option<CycloNum>,
}

impl FourierReport {
    pub fn all_pass(&self) -> bool {
        self.square_scalar.is_some()
            && self.one_scalar.as_ref().is_some_and(|c| !c.is_zero())
            && self.ztilde_to_zprime
            && self.zprime_to_ztilde
            && self.dual_square_scalar.is_some()
    }
}

/// The common scalar `c` with `xs[k] = c ys[k]` for all `k`, if one exists and is nonzero.
fn common_scalar<'x>(pairs: impl IntoIterator<Item = (&'x AlgElem, &'x AlgElem)>) -> Option<CycloNum> {
    let mut scalar: Option<CycloNum> = None;
    for (x, y) in pairs {
        if y.is_zero() {
            if !x.is_zero() {
                return None;
            }
            continue;
        }
        let c = proportionality(x, y)?;
        match &scalar {
            None => scalar = Some(c),
            Some(s) if *s == c => {}
            Some(_) => return None,
        }
    }
    scalar.filter(|c| !c.is_zero())
}

impl SmallQuantumGroup {
    /// Basis of the commutant `{z : zx = xz for x in E, F, K}`.
    pub fn center_basis(&self) -> Vec<AlgElem> {
        let n = self.dim();
        let mut rows = vec![];
        for (_, x) in self.generators() {
            let cols: Vec<AlgElem> = self
                .left_mult_columns(&x)
                .iter()
                .zip(self.right_mult_columns(&x))
                .map(|(a, b)| a.sub(&b))
                .collect();
            rows.extend(rows_of(n, &cols));
        }
        kernel(n, rows, &self.field.one())
            .into_iter()
            .map(AlgElem::from_sparse)
            .collect()
    }

    /// `J(xi(i))`, `0 <= i < l`
    pub fn ztilde_generators(&self) -> Vec<AlgElem> {
        self.q_characters().iter().map(|x| self.transmute(x)).collect()
    }

    /// `phi^-1(xi(i))`, `0 <= i < l`
    pub fn zprime_generators(&self) -> Result<Vec<AlgElem>> {
        self.q_characters().iter().map(|x| self.phi_inv(x)).collect()
    }

    /// `F = J o phi`
    pub fn fourier(&self, a: &AlgElem) -> Result<AlgElem> {
        Ok(self.transmute(&self.phi(a)?))
    }

    /// `F' = phi o J`
    pub fn fourier_dual(&self, f: &Functional) -> Result<Functional> {
        self.phi(&self.transmute(f))
    }

    /// Ordinary character `x -> Tr_L(i)(rho(x))`.
    pub fn character(&self, i: u32) -> Result<Functional> {
        let m = self.simple_module(i)?;
        Ok(Functional::from_values(
            (0..self.dim()).map(|j| (j, m.trace(self, &self.basis(j)))).collect(),
        ))
    }

    pub fn central_subalgebras(&self) -> Result<CentralSubalgebras> {
        let center = span(self, &self.center_basis());
        let ztilde = span(self, &self.ztilde_generators());
        let zprime = span(self, &self.zprime_generators()?);
        let intersection = ztilde.intersection(&zprime);
        let sum = ztilde.sum(&zprime);

        let z = Subalgebra::new(self, &center)?;
        let radical = span(self, &z.radical()?);
        let rad_elems = elements(&radical);
        let socle = span(self, &z.annihilator(&rad_elems));

        let zt = Subalgebra::new(self, &ztilde)?;
        let zt_rad = zt.radical()?;
        let ztilde_ann_radical = span(self, &zt.annihilator(&zt_rad));
        let ztilde_radical = span(self, &zt_rad);

        let idempotents = self.primitive_idempotents(&z, &ztilde)?;
        let blocks = idempotents
            .iter()
            .map(|e| self.block_shape(e, &center, &ztilde, &zprime, &radical))
            .collect::<Result<Vec<_>>>()?;

        Ok(CentralSubalgebras {
            l: self.l,
            center,
            ztilde,
            zprime,
            intersection,
            sum,
            radical,
            socle,
            ztilde_radical,
            ztilde_ann_radical,
            idempotents,
            blocks,
        })
    }

    /// Groups the simple modules by central character, then splits `1` along the generalized
    /// eigenspaces of multiplication by the Casimir element on `Z`.
    fn primitive_idempotents(&self, z: &Subalgebra<'_>, ztilde: &Space) -> Result<Vec<Idempotent>> {
        let modules = self.simple_modules();
        let mut groups: Vec<(Vec<CycloNum>, Vec<u32>)> = vec![];
        for m in &modules {
            let chi: Vec<CycloNum> = z.basis.iter().map(|b| self.central_character(m, b)).collect();
            match groups.iter_mut().find(|(c, _)| *c == chi) {
                Some((_, ws)) => ws.push(m.highest_weight()),
                None => groups.push((chi, vec![m.highest_weight()])),
            }
        }
        let casimir = self.casimir();
        let thetas: Vec<CycloNum> = groups
            .iter()
            .map(|(_, ws)| self.central_character(&modules[ws[0] as usize], &casimir))
            .collect();
        for (i, a) in thetas.iter().enumerate() {
            if thetas[..i].contains(a) {
                return Err(Error::Verification("Casimir does not separate blocks".into()));
            }
        }

        let d = z.dim();
        let mc = z.mult_matrix(&casimir)?;
        let mut pieces: Vec<Vec<SparseVec<CycloNum>>> = vec![];
        for theta in &thetas {
            let shifted = mc.shift_diagonal(theta);
            let mut power = shifted.clone();
            for _ in 1..d {
                power = power.mul(&shifted);
            }
            pieces.push(power.kernel(&self.field.one()));
        }
        let family: Vec<SparseVec<CycloNum>> = pieces.iter().flatten().cloned().collect();
        let cs = CoordinateSystem::new(d, &family)
            .filter(|cs| cs.len() == d)
            .ok_or_else(|| Error::Verification("generalized eigenspaces do not span Z".into()))?;
        let one = z.coordinates(&self.one())?;
        let c = cs
            .coordinates(&one)
            .ok_or_else(|| Error::Verification("1 is not in Z".into()))?;

        let mut out = vec![];
        let mut offset = 0;
        for ((_, weights), piece) in groups.into_iter().zip(&pieces) {
            let mut coords = SparseVec::new();
            for (k, v) in piece.iter().enumerate() {
                if let Some(ck) = c.get(offset + k) {
                    coords = coords.axpy(ck, v);
                }
            }
            offset += piece.len();
            let element = z.element(&coords);
            let in_ztilde = ztilde.contains(element.as_sparse());
            out.push(Idempotent { weights, element, in_ztilde });
        }
        Ok(out)
    }

    fn block_shape(
        &self,
        e: &Idempotent,
        center: &Space,
        ztilde: &Space,
        zprime: &Space,
        radical: &Space,
    ) -> Result<BlockShape> {
        let cut = |s: &Space| -> Space {
            let xs: Vec<AlgElem> = elements(s).iter().map(|x| self.mul(x, &e.element)).collect();
            span(self, &xs)
        };
        let block = cut(center);
        let zt = cut(ztilde);
        let zp = cut(zprime);
        let meet = zt.intersection(&zp);
        let rad = cut(radical);
        let t = elements(&rad.intersection(&zt)).into_iter().next();
        let s = t.as_ref().and_then(|t| {
            elements(&rad.intersection(&zp))
                .into_iter()
                .find(|x| !span(self, std::slice::from_ref(t)).contains(x.as_sparse()))
        });
        let rad_elems = elements(&rad);
        let radical_products_vanish = rad_elems
            .iter()
            .all(|a| rad_elems.iter().all(|b| self.mul(a, b).is_zero()));
        Ok(BlockShape {
            weights: e.weights.clone(),
            dim: block.dim(),
            ztilde_dim: zt.dim(),
            zprime_dim: zp.dim(),
            intersection_dim: meet.dim(),
            t,
            s,
            radical_products_vanish,
        })
    }

    pub fn fourier_report(&self, subalgebras: &CentralSubalgebras) -> Result<FourierReport> {
        let center = elements(&subalgebras.center);
        let f2 = center
            .iter()
            .map(|z| self.fourier(&self.fourier(z)?))
            .collect::<Result<Vec<_>>>()?;
        let s_inv: Vec<AlgElem> = center.iter().map(|z| self.antipode_inv(z)).collect();
        let square_scalar = common_scalar(f2.iter().zip(&s_inv));

        let one_scalar = proportionality(&self.fourier(&self.one())?, self.integral()?);

        let image = |s: &Space| -> Result<Space> {
            let xs = elements(s).iter().map(|x| self.fourier(x)).collect::<Result<Vec<_>>>()?;
            Ok(span(self, &xs))
        };
        let ztilde_to_zprime = image(&subalgebras.ztilde)?.same_as(&subalgebras.zprime);
        let zprime_to_ztilde = image(&subalgebras.zprime)?.same_as(&subalgebras.ztilde);

        let mut lhs = vec![];
        let mut rhs = vec![];
        for i in 0..self.l {
            let ch = self.character(i)?;
            let y = self.eta_inv(&self.fourier_dual(&self.fourier_dual(&self.eta(&ch))?)?);
            lhs.push(AlgElem::from_sparse(y.as_sparse().clone()));
            rhs.push(AlgElem::from_sparse(self.compose_antipode(&ch).as_sparse().clone()));
        }
        let dual_square_scalar = common_scalar(lhs.iter().zip(&rhs));

        Ok(FourierReport {
            square_scalar,
            one_scalar,
            ztilde_to_zprime,
            zprime_to_ztilde,
            dual_square_scalar,
        })
    }
}
