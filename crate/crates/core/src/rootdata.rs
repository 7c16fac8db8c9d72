//! Simply-laced root data: Cartan matrices, roots, the Weyl group and the
//! admissibility test for the order `l` of the root of unity.
//!
//! Weights are written in fundamental-weight coordinates and roots in
//! simple-root coordinates, so `<mu, alpha>` is the plain dot product.

use std::borrow::Cow;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest rank whose Weyl group is stored as an explicit element list.
pub const MATERIALIZED_RANK: usize = 4;
/// Cap for on-demand generation of all Weyl group elements.
pub const MAX_GENERATED_WEYL_ORDER: u128 = 250_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RootType {
    A,
    D,
    E,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootType::A => "A",
            RootType::D => "D",
            RootType::E => "E",
        };
        f.write_str(s)
    }
}

impl FromStr for RootType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(RootType::A),
            "D" | "d" => Ok(RootType::D),
            "E" | "e" => Ok(RootType::E),
            other => Err(Error::InvalidRootDatum {
                label: other.to_string(),
                rank: 0,
                reason: "type must be one of A, D, E",
            }),
        }
    }
}

type IntMatrix = Vec<Vec<i64>>;

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn mat_vec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Integer determinant by fraction-free (Bareiss) elimination.
pub fn int_determinant(m: &IntMatrix) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(s) = (k + 1..n).find(|&s| a[s][k] != 0) else {
                return 0;
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rank of an integer matrix reduced modulo a prime.
fn rank_mod_prime(m: &IntMatrix, p: u64) -> usize {
    let p = p as i64;
    let mut a: IntMatrix = m
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect())
        .collect();
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = mod_inverse(a[rank][c], p).expect("nonzero mod a prime");
        for x in a[rank].iter_mut() {
            *x = (*x * inv).rem_euclid(p);
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for j in 0..cols {
                    a[r][j] = (a[r][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub(crate) fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let g = a.extended_gcd(&m);
    if g.gcd.abs() != 1 {
        return None;
    }
    Some((g.x * g.gcd).rem_euclid(m))
}

/// Element of the Weyl group, acting on both weight and root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    weight_matrix: IntMatrix,
    root_matrix: IntMatrix,
    word: Option<Vec<usize>>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        Self {
            weight_matrix: identity(rank),
            root_matrix: identity(rank),
            word: Some(vec![]),
        }
    }

    /// Matrix on fundamental-weight coordinates.
    pub fn matrix(&self) -> &IntMatrix {
        &self.weight_matrix
    }

    pub fn root_matrix(&self) -> &IntMatrix {
        &self.root_matrix
    }

    pub fn word(&self) -> Option<&[usize]> {
        self.word.as_deref()
    }

    pub fn act_on_weight(&self, mu: &[i64]) -> Vec<i64> {
        mat_vec(&self.weight_matrix, mu)
    }

    pub fn act_on_root(&self, beta: &[i64]) -> Vec<i64> {
        mat_vec(&self.root_matrix, beta)
    }

    /// Composition `self * other` (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        WeylElement {
            weight_matrix: mat_mul(&self.weight_matrix, &other.weight_matrix),
            root_matrix: mat_mul(&self.root_matrix, &other.root_matrix),
            word,
        }
    }

    pub fn determinant(&self) -> i64 {
        int_determinant(&self.weight_matrix)
    }

    pub fn is_identity(&self) -> bool {
        self.weight_matrix == identity(self.weight_matrix.len())
    }

    /// Order of the element in the group.
    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = cur.compose(self);
            k += 1;
        }
        k
    }
}

/// Reflection in an arbitrary root `alpha` (simple-root coordinates).
pub fn reflection(cartan: &IntMatrix, alpha: &[i64]) -> WeylElement {
    let r = cartan.len();
    // alpha in weight coordinates: C alpha (C symmetric)
    let alpha_w = mat_vec(cartan, alpha);
    // s(mu) = mu - <mu, alpha> alpha ; <mu, alpha> = mu . alpha
    let weight_matrix = (0..r)
        .map(|j| {
            (0..r)
                .map(|k| i64::from(j == k) - alpha_w[j] * alpha[k])
                .collect()
        })
        .collect();
    // s(beta) = beta - (beta|alpha) alpha ; (beta|alpha) = beta^T C alpha
    let root_matrix = (0..r)
        .map(|j| {
            (0..r)
                .map(|k| i64::from(j == k) - alpha[j] * alpha_w[k])
                .collect()
        })
        .collect();
    WeylElement {
        weight_matrix,
        root_matrix,
        word: None,
    }
}

/// All elements of the group generated by `gens` (closure by breadth-first search).
pub fn generate_group(rank: usize, gens: &[WeylElement], cap: u128) -> Result<Vec<WeylElement>> {
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    let mut out = vec![];
    let mut queue = VecDeque::from([WeylElement::identity(rank)]);
    seen.insert(identity(rank));
    while let Some(w) = queue.pop_front() {
        for g in gens {
            let next = w.compose(g);
            if seen.insert(next.weight_matrix.clone()) {
                queue.push_back(next);
            }
        }
        out.push(w);
        if out.len() as u128 > cap {
            return Err(Error::BudgetExceeded {
                needed: out.len() as u128,
                budget: cap,
            });
        }
    }
    Ok(out)
}

fn sub_cartan(cartan: &IntMatrix, nodes: &[usize]) -> IntMatrix {
    nodes
        .iter()
        .map(|&i| nodes.iter().map(|&j| cartan[i][j]).collect())
        .collect()
}

fn weight_orbit_size(cartan: &IntMatrix, start: Vec<i64>, cap: usize) -> Option<usize> {
    let r = cartan.len();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(mu) = queue.pop_front() {
        for i in 0..r {
            if mu[i] == 0 {
                continue;
            }
            let next: Vec<i64> = (0..r).map(|j| mu[j] - mu[i] * cartan[i][j]).collect();
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(next);
            }
        }
    }
    Some(seen.len())
}

/// `|W|` by orbit-stabilizer on fundamental weights: the stabilizer of `omega_i` is
/// the parabolic subgroup on the remaining nodes.
fn weyl_order_of(cartan: &IntMatrix) -> u128 {
    let r = cartan.len();
    if r == 0 {
        return 1;
    }
    let mut best: Option<(usize, usize)> = None;
    for i in 0..r {
        let mut omega = vec![0; r];
        omega[i] = 1;
        if let Some(s) = weight_orbit_size(cartan, omega, 100_000) {
            if best.is_none_or(|(_, b)| s < b) {
                best = Some((i, s));
            }
        }
    }
    let (i, size) = best.expect("some fundamental weight has a small orbit");
    let rest: Vec<usize> = (0..r).filter(|&j| j != i).collect();
    size as u128 * weyl_order_of(&sub_cartan(cartan, &rest))
}

/// A simply-laced root datum.
#[derive(Clone, Debug)]
pub struct RootDatum {
    root_type: RootType,
    rank: usize,
    cartan: IntMatrix,
    positive_roots: Vec<Vec<i64>>,
    highest_root: Vec<i64>,
    coxeter_number: u32,
    det_cartan: i64,
    weyl_order: u128,
    weyl_elements: Option<Vec<WeylElement>>,
}

fn cartan_matrix(t: RootType, r: usize) -> Result<IntMatrix> {
    let bad = |reason| Error::InvalidRootDatum {
        label: t.to_string(),
        rank: r,
        reason,
    };
    let mut edges: Vec<(usize, usize)> = vec![];
    match t {
        RootType::A => {
            if r < 1 {
                return Err(bad("type A needs rank >= 1"));
            }
            edges.extend((1..r).map(|i| (i - 1, i)));
        }
        RootType::D => {
            if r < 4 {
                return Err(bad("type D needs rank >= 4"));
            }
            // chain 0-1-...-(r-2), fork at r-3 to r-1
            edges.extend((1..r - 1).map(|i| (i - 1, i)));
            edges.push((r - 3, r - 1));
        }
        RootType::E => {
            if !(6..=8).contains(&r) {
                return Err(bad("type E needs rank 6, 7 or 8"));
            }
            // Bourbaki: 1-3-4-5-6-(7-8), 2 attached to 4 (zero based below)
            edges.push((0, 2));
            edges.push((1, 3));
            edges.extend((3..r).map(|i| (i - 1, i)));
        }
    }
    let mut c = identity(r);
    for row in c.iter_mut() {
        for x in row.iter_mut() {
            *x *= 2;
        }
    }
    for (i, j) in edges {
        c[i][j] = -1;
        c[j][i] = -1;
    }
    Ok(c)
}

impl RootDatum {
    pub fn build(root_type: RootType, rank: usize) -> Result<Self> {
        let cartan = cartan_matrix(root_type, rank)?;
        let r = rank;

        let mut roots: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            roots.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..r {
                let p: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
                let mut next = beta.clone();
                next[i] -= p;
                if roots.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut positive_roots: Vec<Vec<i64>> =
            roots.into_iter().filter(|b| b.iter().all(|&x| x >= 0)).collect();
        positive_roots.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let highest_root = positive_roots.last().cloned().expect("nonempty root system");
        let coxeter_number = (2 * positive_roots.len() / r) as u32;
        let det_cartan = int_determinant(&cartan);
        let weyl_order = weyl_order_of(&cartan);

        let mut datum = Self {
            root_type,
            rank,
            cartan,
            positive_roots,
            highest_root,
            coxeter_number,
            det_cartan,
            weyl_order,
            weyl_elements: None,
        };
        if rank <= MATERIALIZED_RANK {
            datum.weyl_elements = Some(datum.generate_elements()?);
        }
        Ok(datum)
    }

    pub fn root_type(&self) -> RootType {
        self.root_type
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.root_type, self.rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    /// Positive roots in simple-root coordinates, sorted by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.highest_root
    }

    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    pub fn coxeter_number(&self) -> u32 {
        self.coxeter_number
    }

    /// Determinant of the Cartan matrix, the index of connection `|P/Q|`.
    pub fn det_cartan(&self) -> i64 {
        self.det_cartan
    }

    pub fn weyl_order(&self) -> u128 {
        self.weyl_order
    }

    /// `<mu, alpha>` for a weight in fundamental-weight coordinates and a root in
    /// simple-root coordinates.
    pub fn pairing(&self, mu: &[i64], alpha: &[i64]) -> Result<i64> {
        for v in [mu, alpha] {
            if v.len() != self.rank {
                return Err(Error::DimensionMismatch {
                    expected: self.rank,
                    got: v.len(),
                });
            }
        }
        Ok(mu.iter().zip(alpha).map(|(a, b)| a * b).sum())
    }

    /// Weight coordinates of a root: `alpha_i = sum_j a_ij omega_j`.
    pub fn root_to_weight(&self, beta: &[i64]) -> Vec<i64> {
        mat_vec(&self.cartan, beta)
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        let mut e = vec![0; self.rank];
        e[i] = 1;
        let mut s = reflection(&self.cartan, &e);
        s.word = Some(vec![i]);
        s
    }

    pub fn simple_reflections(&self) -> Vec<WeylElement> {
        (0..self.rank).map(|i| self.simple_reflection(i)).collect()
    }

    fn generate_elements(&self) -> Result<Vec<WeylElement>> {
        generate_group(self.rank, &self.simple_reflections(), MAX_GENERATED_WEYL_ORDER)
    }

    /// All elements of `W`: stored for small rank, generated on demand otherwise.
    pub fn weyl_elements(&self) -> Result<Cow<'_, [WeylElement]>> {
        match &self.weyl_elements {
            Some(v) => Ok(Cow::Borrowed(v)),
            None => {
                if self.weyl_order > MAX_GENERATED_WEYL_ORDER {
                    return Err(Error::BudgetExceeded {
                        needed: self.weyl_order,
                        budget: MAX_GENERATED_WEYL_ORDER,
                    });
                }
                Ok(Cow::Owned(self.generate_elements()?))
            }
        }
    }

    /// Longest element, found by descending from `rho` to `-rho`.
    pub fn longest_element(&self) -> WeylElement {
        let mut w = WeylElement::identity(self.rank);
        let mut mu = self.rho();
        while let Some(i) = (0..self.rank).find(|&i| mu[i] > 0) {
            let s = self.simple_reflection(i);
            mu = s.act_on_weight(&mu);
            w = s.compose(&w);
        }
        w
    }

    /// Order of the subgroup generated by the reflections in `roots`.
    pub fn reflection_subgroup_order(&self, roots: &[Vec<i64>]) -> Result<u128> {
        let gens: Vec<WeylElement> = roots.iter().map(|a| reflection(&self.cartan, a)).collect();
        Ok(generate_group(self.rank, &gens, self.weyl_order)?.len() as u128)
    }

    /// Admissibility of `l` for this root datum.
    pub fn check_l(&self, l: i64) -> Admissibility {
        let mut failures = vec![];
        if l <= 0 {
            failures.push("l must be positive".to_string());
            return Admissibility {
                l,
                coxeter_number: self.coxeter_number,
                det_cartan: self.det_cartan,
                gcd: 0,
                cartan_invertible_mod_l: false,
                failures,
            };
        }
        if l % 2 == 0 {
            failures.push("l must be odd".to_string());
        }
        if l < self.coxeter_number as i64 {
            failures.push(format!("l < h (h={})", self.coxeter_number));
        }
        let gcd = (l as u64).gcd(&self.det_cartan.unsigned_abs());
        if gcd != 1 {
            failures.push(format!("gcd(l, det)={gcd}"));
        }
        let cartan_invertible_mod_l = prime_factors(l as u64)
            .into_iter()
            .all(|p| rank_mod_prime(&self.cartan, p) == self.rank);
        Admissibility {
            l,
            coxeter_number: self.coxeter_number,
            det_cartan: self.det_cartan,
            gcd,
            cartan_invertible_mod_l,
            failures,
        }
    }
}

/// Verdict of [`RootDatum::check_l`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub l: i64,
    pub coxeter_number: u32,
    pub det_cartan: i64,
    pub gcd: u64,
    /// Whether the Cartan matrix is invertible modulo `l`, i.e. the form
    /// `pi(K_mu, K_nu) = q^(mu|nu)` is nondegenerate on `Q/lQ`.
    pub cartan_invertible_mod_l: bool,
    pub failures: Vec<String>,
}

impl Admissibility {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    /// The gcd criterion and the mod-`l` invertibility test agree.
    pub fn tests_agree(&self) -> bool {
        self.l <= 0 || (self.gcd == 1) == self.cartan_invertible_mod_l
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::Inadmissible {
                l: self.l.max(0) as u32,
                reason: self.failures.join("; "),
            })
        }
    }
}
