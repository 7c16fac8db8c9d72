//! Exact model of the small quantum group `u = u_q(sl2)` at a primitive odd root of unity.
//!
//! Conventions:
//! - `KE = q^2 EK`, `KF = q^-2 FK`, `EF - FE = (K - K^-1)/(q - q^-1)`, `E^l = F^l = 0`, `K^l = 1`;
//! - `D(E) = E(x)1 + K(x)E`, `D(F) = F(x)K^-1 + 1(x)F`, `D(K) = K(x)K`;
//! - `S(E) = -K^-1 E`, `S(F) = -FK`, `S(K) = K^-1`, so that `S^2(a) = K^-1 a K`.
//!
//! Elements are stored in the PBW basis `F^a K^b E^c`, `0 <= a, b, c < l`, with
//! index `a l^2 + b l + c`. Every derived object (coproducts, antipodes, the R-matrix,
//! integrals) is computed lazily once and cached on the [`SmallQuantumGroup`].

mod algebra;
mod center;
mod dual;
mod hopf;
mod modules;
mod rmatrix;
mod verify;

use std::sync::{Arc, OnceLock};

pub use algebra::{AlgElem, AlgElemJson, Pbw};
pub use center::{BlockShape, CentralDims, CentralSubalgebras, FourierReport, Idempotent};
pub use dual::Functional;
pub use hopf::{Grid2, Grid3, TensorElem};
pub use modules::SimpleModule;
pub use verify::{max_grid_entries, Check, CheckGroup, Scalars, Status, VerifyReport, MAX_GRID_ENV};

use crate::cyclotomic::{CycloNum, CyclotomicField};
use crate::error::{Error, Result};

pub struct SmallQuantumGroup {
    l: u32,
    field: Arc<CyclotomicField>,
    // q^k for 0 <= k < l
    qpow: Vec<CycloNum>,
    // [a] / (q - q^-1)
    commutator: Vec<CycloNum>,
    // E^c F^d in PBW form, at index c * l + d
    ef: Vec<Vec<(Pbw, CycloNum)>>,
    coproducts: OnceLock<Vec<Grid2>>,
    antipodes: OnceLock<Vec<AlgElem>>,
    antipode_invs: OnceLock<Vec<AlgElem>>,
    r_matrix: OnceLock<TensorElem>,
    monodromy: OnceLock<Grid2>,
    integral: OnceLock<Result<AlgElem>>,
    right_integral: OnceLock<Result<Functional>>,
}

impl std::fmt::Debug for SmallQuantumGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "u_q(sl2) at l = {}", self.l)
    }
}

impl SmallQuantumGroup {
    pub fn new(l: u32) -> Result<Self> {
        if l < 3 || l.is_multiple_of(2) {
            return Err(Error::Inadmissible {
                l,
                reason: "l must be odd and at least 3".to_string(),
            });
        }
        let field = CyclotomicField::new(l)?;
        let qpow: Vec<CycloNum> = (0..l as i64).map(|k| field.q_pow(k)).collect();
        let q_minus_qinv = &field.q() - &field.q_pow(-1);
        let denom = q_minus_qinv.inv()?;
        let commutator = (0..l as i64).map(|a| &field.qint(a) * &denom).collect();
        let mut g = SmallQuantumGroup {
            l,
            field,
            qpow,
            commutator,
            ef: vec![],
            coproducts: OnceLock::new(),
            antipodes: OnceLock::new(),
            antipode_invs: OnceLock::new(),
            r_matrix: OnceLock::new(),
            monodromy: OnceLock::new(),
            integral: OnceLock::new(),
            right_integral: OnceLock::new(),
        };
        g.ef = g.build_ef_table();
        Ok(g)
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// `l^3`
    pub fn dim(&self) -> usize {
        (self.l as usize).pow(3)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(&self, k: i64) -> CycloNum {
        self.qpow[k.rem_euclid(self.l as i64) as usize].clone()
    }

    pub(crate) fn q_pow_ref(&self, k: i64) -> &CycloNum {
        &self.qpow[k.rem_euclid(self.l as i64) as usize]
    }
}
