use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::AlgElem;
use super::center::{CentralDims, CentralSubalgebras, FourierReport};
use super::dual::Functional;
use super::hopf::Grid3;
use super::SmallQuantumGroup;
use crate::affine_orbits::{orbit_table, Action, OrbitTable, ResWeight, DEFAULT_BUDGET};
use crate::charring::CharRing;
use crate::cyclotomic::CycloNum;
use crate::error::Result;
use crate::linalg::{CoordinateSystem, SparseVec, Subspace};
use crate::rootdata::{RootDatum, RootType};

/// Caps the number of term products a tensor-grid check may perform before it is skipped.
pub const MAX_GRID_ENV: &str = "UQCENTER_MAX_GRID";
const DEFAULT_MAX_GRID: usize = 50_000_000;

pub fn max_grid_entries() -> usize {
    std::env::var(MAX_GRID_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_GRID)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool) -> Self {
        Check {
            name: name.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            detail: String::new(),
        }
    }

    fn with(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    fn skipped(name: &str, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            status: Status::Skipped,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Checks grouped by theme; the names are stable identifiers.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckGroup {
    pub checks: Vec<Check>,
}

impl CheckGroup {
    fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// No failures; skipped checks do not count against the group.
    pub fn no_failures(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// Every check ran and passed.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Scalars {
    pub fourier_square: Option<CycloNum>,
    pub fourier_one: Option<CycloNum>,
    pub fourier_dual_square: Option<CycloNum>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub l: u32,
    pub dim_u: usize,
    pub dim_c_r: usize,
    pub xbar: usize,
    pub dims: CentralDims,
    pub scalars: Scalars,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

fn rng_for(l: u32, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(u64::from(l) * 1_000 + stream)
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, ok: impl Fn(&T) -> bool) -> Option<T> {
    items.into_iter().find(|x| !ok(x))
}

/// Skips a grid product whose term count would exceed the configured cap.
fn grid_budget(name: &str, products: usize) -> Option<Check> {
    let cap = max_grid_entries();
    (products > cap).then(|| Check::skipped(name, format!("{products} term products exceed {MAX_GRID_ENV}={cap}")))
}

impl SmallQuantumGroup {
    fn sample(&self, stream: u64, n: usize, density: f64) -> Vec<AlgElem> {
        let mut rng = rng_for(self.l, stream);
        (0..n).map(|_| self.random_elem(&mut rng, density)).collect()
    }

    fn sample_density(&self) -> f64 {
        if self.l <= 3 {
            0.3
        } else {
            0.03
        }
    }

    /// Algebra relations, associativity, Hopf axioms and `S^2 = Ad(K^-1)`.
    pub fn verify_hopf(&self) -> CheckGroup {
        let mut out = CheckGroup::default();
        let (e, f, k) = (self.e(), self.f(), self.k());
        let l = self.l;
        let qq = (&self.field.q() - &self.q_pow(-1)).inv().expect("q != q^-1");
        let ef = self.commutator(&e, &f);
        let rhs = k.sub(&self.k_pow(-1)).scale(&qq);
        let relations = self.mul(&k, &e) == self.mul(&e.scale(&self.q_pow(2)), &k)
            && self.mul(&k, &f) == self.mul(&f.scale(&self.q_pow(-2)), &k)
            && ef == rhs
            && self.pow(&e, l).is_zero()
            && self.pow(&f, l).is_zero()
            && self.pow(&k, l) == self.one();
        out.push(Check::new("relations", relations));

        let d = self.sample_density();
        let xs = self.sample(1, 30, d);
        let assoc = first_failure(xs.chunks(3), |t| {
            self.mul(&self.mul(&t[0], &t[1]), &t[2]) == self.mul(&t[0], &self.mul(&t[1], &t[2]))
        });
        out.push(Check::new("associativity", assoc.is_none()).with(format!("{} random triples", xs.len() / 3)));

        let gens: Vec<AlgElem> = self.generators().into_iter().map(|(_, x)| x).collect();
        let mut pairs: Vec<(AlgElem, AlgElem)> = vec![];
        for a in &gens {
            for b in &gens {
                pairs.push((a.clone(), b.clone()));
            }
        }
        let extra = self.sample(2, 4, d);
        pairs.push((extra[0].clone(), extra[1].clone()));
        pairs.push((extra[2].clone(), extra[3].clone()));
        let products: usize = pairs
            .iter()
            .map(|(a, b)| self.coproduct(a).len() * self.coproduct(b).len())
            .sum();
        match grid_budget("coproduct_multiplicative", products) {
            Some(c) => out.push(c),
            None => {
                let ok = pairs.iter().all(|(a, b)| {
                    self.coproduct(&self.mul(a, b)) == self.mul_grid2(&self.coproduct(a), &self.coproduct(b))
                });
                out.push(Check::new("coproduct_multiplicative", ok));
            }
        }

        let mut coassoc_inputs = gens.clone();
        coassoc_inputs.extend(self.sample(3, 3, d));
        let ok = coassoc_inputs.iter().all(|x| {
            let dx = self.coproduct(x);
            self.delta_left(&dx) == self.delta_right(&dx)
        });
        out.push(Check::new("coassociativity", ok));

        let counit = (0..self.dim()).all(|i| {
            let x = self.basis(i);
            let d = self.coproduct(&x);
            let (mut left, mut right) = (AlgElem::zero(), AlgElem::zero());
            for (&(a, b), c) in d.iter() {
                if self.counit_basis(a as usize) {
                    left = left.axpy(c, &self.basis(b as usize));
                }
                if self.counit_basis(b as usize) {
                    right = right.axpy(c, &self.basis(a as usize));
                }
            }
            left == x && right == x
        });
        out.push(Check::new("counit_axiom", counit));

        let counit_mult = pairs
            .iter()
            .all(|(a, b)| self.counit(&self.mul(a, b)) == &self.counit(a) * &self.counit(b));
        out.push(Check::new("counit_multiplicative", counit_mult));

        let s = self.antipode_table();
        let antipode = (0..self.dim()).all(|i| {
            let d = self.coproduct_table()[i].clone();
            let eps = self.scalar(if self.counit_basis(i) { self.field.one() } else { self.field.zero() });
            let left = self.multiply_out(&self.map_grid2(&d, |a| s[a].clone(), |b| self.basis(b)));
            let right = self.multiply_out(&self.map_grid2(&d, |a| self.basis(a), |b| s[b].clone()));
            left == eps && right == eps
        });
        out.push(Check::new("antipode_axiom", antipode).with(format!("all {} basis elements", self.dim())));

        let anti = pairs
            .iter()
            .all(|(a, b)| self.antipode(&self.mul(a, b)) == self.mul(&self.antipode(b), &self.antipode(a)));
        out.push(Check::new("antipode_antimultiplicative", anti));

        let k_inv = self.k_pow(-1);
        let square = gens
            .iter()
            .chain(xs.iter().take(5))
            .all(|x| self.antipode(&self.antipode(x)) == self.mul(&self.mul(&k_inv, x), &k));
        out.push(Check::new("antipode_square_is_ad_k_inverse", square));

        let inverse = (0..self.dim()).all(|i| {
            let x = self.basis(i);
            self.antipode_inv(&self.antipode(&x)) == x && self.antipode(&self.antipode_inv(&x)) == x
        });
        out.push(Check::new("antipode_inverse", inverse));
        out
    }

    /// `R D(x) = D^op(x) R`, `(D (x) id)R = R13 R23`, `(id (x) D)R = R13 R12`, `(S (x) id)(R) R = 1`.
    pub fn verify_quasitriangular(&self) -> CheckGroup {
        let mut out = CheckGroup::default();
        let r = self.r_grid();
        let n = r.len();

        let ok = self.generators().iter().all(|(_, x)| {
            let d = self.coproduct(x);
            self.mul_grid2(&r, &d) == self.mul_grid2(&self.coproduct_op(x), &r)
        });
        out.push(Check::new("r_intertwines_coproduct", ok));

        let r13 = SmallQuantumGroup::embed(&r, (0, 2));
        let r23 = SmallQuantumGroup::embed(&r, (1, 2));
        let r12 = SmallQuantumGroup::embed(&r, (0, 1));
        let grids3 = |name: &str, lhs: &dyn Fn() -> Grid3, a: &Grid3, b: &Grid3| -> Check {
            grid_budget(name, a.len() * b.len()).unwrap_or_else(|| Check::new(name, lhs() == self.mul_grid3(a, b)))
        };
        out.push(grids3("delta_left_r", &|| self.delta_left(&r), &r13, &r23));
        out.push(grids3("delta_right_r", &|| self.delta_right(&r), &r13, &r12));

        let name = "antipode_r_inverse";
        let c = grid_budget(name, n * n).unwrap_or_else(|| {
            let sr = self.antipode_left(&r);
            let one = self.one_tensor();
            Check::new(name, self.mul_grid2(&sr, &r) == one && self.mul_grid2(&r, &sr) == one)
        });
        out.push(c);

        let mut eps_r = AlgElem::zero();
        for (&(i, j), c) in r.iter() {
            if self.counit_basis(i as usize) {
                eps_r = eps_r.axpy(c, &self.basis(j as usize));
            }
        }
        out.push(Check::new("counit_r", eps_r == self.one()));
        out
    }

    /// Integrals, `phi`, `C_r` and the factorization map `J`.
    pub fn verify_duality(&self) -> Result<(CheckGroup, usize)> {
        let mut out = CheckGroup::default();
        let dim_int = self.integral_space_dim();
        out.push(Check::new("integral_unique", dim_int == 1).with(format!("dim = {dim_int}")));
        let lam = self.integral()?;
        let lr = self.right_integral()?;
        out.push(Check::new("right_integral_normalized", self.eval(lr, lam).is_one()));

        let eps = self.counit_functional();
        let absorbs = (0..self.dim()).all(|k| {
            let p = Functional::from_sparse(SparseVec::unit(k, self.field.one()));
            let prod = self.functional_product(lr, &p);
            prod == lr.scale(&p.value_at(0).cloned().unwrap_or_else(|| self.field.zero()))
        });
        out.push(Check::new("right_integral_absorbs", absorbs));

        let in_c_r_gen = self.in_c_r(lr);
        let d = self.sample_density();
        let xs = self.sample(4, 100, d);
        let in_c_r_random = xs.chunks(2).all(|p| {
            let (a, b) = (&p[0], &p[1]);
            self.eval(lr, &self.mul(a, b)) == self.eval(lr, &self.mul(b, &self.antipode_inv(&self.antipode_inv(a))))
        });
        out.push(Check::new("right_integral_in_c_r", in_c_r_gen && in_c_r_random).with("generators and 50 random pairs"));

        out.push(Check::new("phi_one", self.phi(&self.one())? == *lr));
        out.push(Check::new("phi_inv_counit", self.phi_inv(&eps)? == *lam));

        let mut round = true;
        for i in 0..self.dim() {
            let b = self.basis(i);
            if self.phi_inv(&self.phi(&b)?)? != b {
                round = false;
                break;
            }
            let p = Functional::from_sparse(SparseVec::unit(i, self.field.one()));
            if self.phi(&self.phi_inv(&p)?)? != p {
                round = false;
                break;
            }
        }
        out.push(Check::new("phi_round_trip", round).with(format!("all {} basis vectors", self.dim())));

        let ys = self.sample(5, 6, d);
        let mut intertwine = true;
        for p in ys.chunks(2) {
            let (a, z) = (&p[0], &p[1]);
            intertwine &= self.phi(&self.mul(a, z))? == self.act_left(a, &self.phi(z)?);
        }
        out.push(Check::new("phi_left_module_map", intertwine));

        let c_r = self.c_r_basis();
        let center = self.center_basis();
        out.push(
            Check::new("dim_c_r_equals_dim_z", c_r.len() == center.len())
                .with(format!("dim C_r = {}, dim Z = {}", c_r.len(), center.len())),
        );
        let images: Vec<SparseVec<CycloNum>> = c_r.iter().map(|p| self.transmute(p).into_sparse()).collect();
        let image = Subspace::span(self.dim(), images);
        let z_space = Subspace::span(self.dim(), center.iter().map(|z| z.as_sparse().clone()));
        out.push(Check::new("j_injective_on_c_r", image.dim() == c_r.len()));
        out.push(Check::new("j_maps_c_r_onto_z", image.same_as(&z_space)));

        let chars = self.q_characters();
        out.push(Check::new("q_characters_in_c_r", chars.iter().all(|x| self.in_c_r(x))));
        let zs: Vec<AlgElem> = chars.iter().map(|x| self.transmute(x)).collect();
        let mut hom = true;
        for i in 0..chars.len() {
            for j in i..chars.len() {
                let lhs = self.mul(&zs[i], &zs[j]);
                hom &= lhs == self.transmute(&self.functional_product(&chars[i], &chars[j]));
            }
        }
        out.push(Check::new("j_multiplicative_on_characters", hom));
        Ok((out, c_r.len()))
    }

    /// Structure of `Z`, `Z~`, `Z'` against the bullet orbits of the restricted weights.
    pub fn verify_center(&self, cs: &CentralSubalgebras, orbits: &OrbitTable) -> CheckGroup {
        let mut out = CheckGroup::default();
        let l = self.l as usize;
        let xbar = orbits.len();
        let d = cs.dims();
        let expected = 3 * (l - 1) / 2 + 1;
        out.push(
            Check::new("center_dimension", d.center == expected).with(format!("dim Z = {}, expected {expected}", d.center)),
        );
        let z_contains = |x: &AlgElem| cs.center.contains(x.as_sparse());
        out.push(Check::new("casimir_central", z_contains(&self.casimir())));
        out.push(Check::new("ztilde_dimension", d.ztilde == l).with(format!("{}", d.ztilde)));
        out.push(Check::new("zprime_dimension", d.zprime == l).with(format!("{}", d.zprime)));
        out.push(Check::new("zprime_is_socle", cs.zprime.same_as(&cs.socle)));
        out.push(Check::new(
            "intersection_is_ann_rad_ztilde",
            cs.intersection.same_as(&cs.ztilde_ann_radical),
        ));
        out.push(
            Check::new("intersection_dimension", d.intersection == xbar)
                .with(format!("{} vs |Xbar| = {xbar}", d.intersection)),
        );
        out.push(Check::new("sum_dimension", d.sum == 2 * l - xbar).with(format!("{}", d.sum)));
        out.push(Check::new("sum_is_center", cs.sum.same_as(&cs.center)));
        out.push(Check::new("subspaces_central", cs.ztilde.basis().iter().chain(cs.zprime.basis()).all(|v| cs.center.contains(v))));

        out.push(Check::new("idempotent_count", d.idempotents == xbar).with(format!("{}", d.idempotents)));
        out.push(Check::new("idempotents_in_ztilde", cs.idempotents.iter().all(|e| e.in_ztilde)));
        out.push(Check::new("idempotents_sum_to_one", cs.idempotents_sum_to_one(self)));
        out.push(Check::new("idempotents_orthogonal", cs.idempotents_orthogonal(self)));

        let mut orbit_sets: Vec<Vec<u32>> = (0..orbits.len())
            .map(|o| {
                let mut m: Vec<u32> = orbits.members(o).iter().map(|w: &ResWeight| w.0[0]).collect();
                m.sort_unstable();
                m
            })
            .collect();
        orbit_sets.sort();
        let mut block_sets: Vec<Vec<u32>> = cs
            .blocks
            .iter()
            .map(|b| {
                let mut w = b.weights.clone();
                w.sort_unstable();
                w
            })
            .collect();
        block_sets.sort();
        out.push(Check::new("blocks_match_orbits", orbit_sets == block_sets));

        let st = (l - 1) as u32;
        let shapes = cs.blocks.iter().all(|b| {
            if b.weights == [st] {
                b.dim == 1
            } else {
                let (Some(t), Some(s)) = (&b.t, &b.s) else { return false };
                b.dim == 3
                    && b.ztilde_dim == 2
                    && b.zprime_dim == 2
                    && b.intersection_dim == 1
                    && cs.intersection.contains(t.as_sparse())
                    && cs.zprime.contains(s.as_sparse())
                    && self.mul(t, s).is_zero()
                    && self.mul(t, t).is_zero()
                    && self.mul(s, s).is_zero()
                    && b.radical_products_vanish
            }
        });
        out.push(Check::new("block_multiplication_table", shapes));
        out
    }

    pub fn verify_fourier(&self, report: &FourierReport) -> CheckGroup {
        let mut out = CheckGroup::default();
        let show = |c: &Option<CycloNum>| c.as_ref().map_or("none".to_string(), |c| c.to_string());
        out.push(Check::new("fourier_square_inverse_antipode", report.square_scalar.is_some()).with(show(&report.square_scalar)));
        out.push(
            Check::new("fourier_one_is_integral", report.one_scalar.as_ref().is_some_and(|c| !c.is_zero()))
                .with(show(&report.one_scalar)),
        );
        out.push(Check::new(
            "fourier_scalars_agree",
            report.square_scalar.is_some() && report.square_scalar == report.one_scalar,
        ));
        out.push(Check::new("fourier_ztilde_to_zprime", report.ztilde_to_zprime));
        out.push(Check::new("fourier_zprime_to_ztilde", report.zprime_to_ztilde));
        out.push(
            Check::new("fourier_dual_square_antipode", report.dual_square_scalar.is_some())
                .with(show(&report.dual_square_scalar)),
        );
        out
    }

    /// Structure constants of `Z~` in the basis `J(xi(i))` against the character ring.
    pub fn verify_character_ring(&self) -> Result<CheckGroup> {
        let mut out = CheckGroup::default();
        let ring = CharRing::new(self.l)?;
        let zs = self.ztilde_generators();
        let family: Vec<SparseVec<CycloNum>> = zs.iter().map(|z| z.as_sparse().clone()).collect();
        let Some(coords) = CoordinateSystem::new(self.dim(), &family) else {
            out.push(Check::new("ztilde_generators_independent", false));
            return Ok(out);
        };
        out.push(Check::new("ztilde_generators_independent", true));
        let to_cyclo = |r: &BigRational| self.field.from_rational(r.clone());
        let mut mismatch = None;
        'outer: for i in 0..zs.len() {
            for j in i..zs.len() {
                let expected = ring.product(&ring.xi(i), &ring.xi(j))?;
                let expected = SparseVec::from_pairs(
                    expected.coeffs().iter().enumerate().map(|(k, c)| (k, to_cyclo(c))).collect(),
                );
                let got = coords.coordinates(self.mul(&zs[i], &zs[j]).as_sparse());
                if got.as_ref() != Some(&expected) {
                    mismatch = Some((i, j));
                    break 'outer;
                }
            }
        }
        let detail = mismatch.map_or(String::new(), |(i, j)| format!("first mismatch at xi({i}) xi({j})"));
        out.push(Check::new("structure_constants_match", mismatch.is_none()).with(detail));
        Ok(out)
    }

    pub fn verify_all(&self) -> Result<VerifyReport> {
        let datum = RootDatum::build(RootType::A, 1)?;
        let orbits = orbit_table(&datum, self.l, Action::BulletOnP, DEFAULT_BUDGET)?;
        let mut checks = vec![];
        checks.extend(self.verify_hopf().checks);
        checks.extend(self.verify_quasitriangular().checks);
        let (duality, dim_c_r) = self.verify_duality()?;
        checks.extend(duality.checks);
        let cs = self.central_subalgebras()?;
        checks.extend(self.verify_center(&cs, &orbits).checks);
        let fourier = self.fourier_report(&cs)?;
        checks.extend(self.verify_fourier(&fourier).checks);
        checks.extend(self.verify_character_ring()?.checks);
        Ok(VerifyReport {
            l: self.l,
            dim_u: self.dim(),
            dim_c_r,
            xbar: orbits.len(),
            dims: cs.dims(),
            scalars: Scalars {
                fourier_square: fourier.square_scalar,
                fourier_one: fourier.one_scalar,
                fourier_dual_square: fourier.dual_square_scalar,
            },
            checks,
        })
    }
}
