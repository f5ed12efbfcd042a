//! Laplace spectrum as shifted sums of squares.
//!
//! A highest weight `nu~ = sum (nu_j - 1) omega_j` is encoded by its shifted
//! coefficient vector `nu` with every `nu_j >= 1`. Its eigenvalue is
//! `R / (b gamma)` with the integer numerator
//!
//! ```text
//! R = c^2 (<nu~ + eta, nu~ + eta> - <eta, eta>) = |A nu|^2 - R0
//! ```
//!
//! The metric scale `gamma` never enters: every quantity here is keyed by `R`.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, int, Rational};
use crate::root_systems::{FamilyLabel, RootSystem};

/// Shifted highest-weight coordinates `nu_j = nu~_j + 1 >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HighestWeight(Vec<i64>);

impl HighestWeight {
    pub fn new(nu: Vec<i64>) -> Result<Self> {
        if let Some(bad) = nu.iter().find(|&&x| x < 1) {
            return Err(Error::InvalidArgument(format!(
                "highest-weight coordinates must be >= 1, got {bad}"
            )));
        }
        Ok(HighestWeight(nu))
    }

    /// The trivial representation `(1, ..., 1)`.
    pub fn trivial(rank: usize) -> Self {
        HighestWeight(vec![1; rank])
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Unshifted coefficients `nu~_j = nu_j - 1`.
    pub fn unshifted(&self) -> Vec<i64> {
        self.0.iter().map(|x| x - 1).collect()
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(" "))
    }
}

impl Serialize for HighestWeight {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

fn check_rank(rs: &RootSystem, nu: &HighestWeight) -> Result<()> {
    if nu.len() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            actual: nu.len(),
        });
    }
    Ok(())
}

/// Eigenvalue numerator from the per-family closed-form expressions.
///
/// These are written out term by term from the explicit spectra of
/// `SU(l+1)`, `Spin(2l+1)`, `Sp(l)`, `Spin(2l)`, `E8`, `F4` and `G2`, and share
/// nothing with [`eigenvalue_root_form`] or [`integer_vector`] beyond the
/// family and rank.
pub fn eigenvalue_closed_form(rs: &RootSystem, nu: &HighestWeight) -> Result<i64> {
    check_rank(rs, nu)?;
    let l = rs.rank();
    let li = l as i64;
    // 1-based access
    let v = |j: usize| nu.as_slice()[j - 1];
    let sq = |x: i64| x * x;

    let value = match rs.family.label() {
        FamilyLabel::A => {
            let first: i64 = (1..=l).map(|j| (li + 1 - j as i64) * v(j)).sum();
            let middle: i64 = (2..=l)
                .map(|k| {
                    let low: i64 = (1..k).map(|j| j as i64 * v(j)).sum();
                    let high: i64 = (k..=l).map(|j| (li + 1 - j as i64) * v(j)).sum();
                    sq(high - low)
                })
                .sum();
            let last: i64 = (1..=l).map(|j| j as i64 * v(j)).sum();
            let shift: i64 = (1..=li + 1)
                .map(|k| sq(li - 2 * (k - 1)) * sq(li + 1))
                .sum::<i64>()
                / 4;
            sq(first) + middle + sq(last) - shift
        }
        FamilyLabel::B => {
            let head: i64 = (1..l)
                .map(|k| sq(2 * (k..l).map(v).sum::<i64>() + v(l)))
                .sum();
            let shift: i64 = (1..=li).map(|k| sq(2 * (li - k) + 1)).sum();
            head + sq(v(l)) - shift
        }
        FamilyLabel::C => {
            let head: i64 = (1..=l).map(|k| sq((k..=l).map(v).sum())).sum();
            head - li * (li + 1) * (2 * li + 1) / 6
        }
        FamilyLabel::D => {
            let head: i64 = (1..=l - 2)
                .map(|k| sq(2 * (k..=l - 2).map(v).sum::<i64>() + v(l - 1) + v(l)))
                .sum();
            let shift: i64 = (1..=li).map(|k| sq(2 * (li - k))).sum();
            head + sq(v(l) + v(l - 1)) + sq(v(l) - v(l - 1)) - shift
        }
        FamilyLabel::E8 => {
            let base = v(2) + v(3);
            let mut total = sq(v(2) - v(3)) + sq(base);
            let mut running = base;
            for j in 4..=8 {
                running += 2 * v(j);
                total += sq(running);
            }
            total += sq(
                4 * v(1) + 5 * v(2) + 7 * v(3) + 10 * v(4) + 8 * v(5) + 6 * v(6) + 4 * v(7)
                    + 2 * v(8),
            );
            total - 2480
        }
        FamilyLabel::F4 => {
            sq(2 * v(1) + 4 * v(2) + 3 * v(3) + 2 * v(4))
                + sq(2 * v(1) + 2 * v(2) + v(3))
                + sq(2 * v(2) + v(3))
                + sq(v(3))
                - 156
        }
        FamilyLabel::G2 => sq(v(1) + v(2)) + sq(v(1) + 2 * v(2)) + sq(v(2)) - 14,
    };
    Ok(value)
}

/// Eigenvalue numerator from the root data:
/// `c^2 (<nu~ + eta, nu~ + eta> - <eta, eta>)` in exact arithmetic.
pub fn eigenvalue_root_form(rs: &RootSystem, nu: &HighestWeight) -> Result<i64> {
    check_rank(rs, nu)?;
    let coeffs: Vec<Rational> = nu.unshifted().into_iter().map(int).collect();
    let weight = linalg::combination(&coeffs, &rs.fundamental_weights)?;
    let shifted = linalg::add(&weight, &rs.weyl_vector)?;
    let c_sq = int(rs.scale * rs.scale);
    let value = c_sq * (linalg::norm_sq(&shifted) - linalg::norm_sq(&rs.weyl_vector));
    linalg::to_integer(&value)
        .and_then(|n| n.to_i64())
        .ok_or_else(|| {
            Error::InternalInconsistency(format!("eigenvalue numerator {value} is not integral"))
        })
}

/// `n = A nu`.
pub fn integer_vector(rs: &RootSystem, nu: &HighestWeight) -> Result<Vec<i64>> {
    check_rank(rs, nu)?;
    linalg::int_mat_vec(&rs.matrix_a, nu.as_slice())
}

/// `|A nu|^2 - R0`.
pub fn eigenvalue_from_matrix(rs: &RootSystem, nu: &HighestWeight) -> Result<i64> {
    let n = integer_vector(rs, nu)?;
    Ok(n.iter().map(|x| x * x).sum::<i64>() - rs.r0)
}

/// Precomputed pairings for the Weyl dimension formula
/// `prod_{a > 0} (nu~ + eta, a) / (eta, a)`.
///
/// Every pairing is scaled by a common integer so the product runs over
/// integers; only the final division is checked for exactness.
#[derive(Debug, Clone)]
pub struct WeylDimensionFormula {
    /// Per positive root: scaled `(omega_j, a)` for each `j`.
    weight_pairings: Vec<Vec<BigInt>>,
    /// Per positive root: scaled `(eta, a)`.
    eta_pairings: Vec<BigInt>,
    denominator: BigUint,
    rank: usize,
}

impl WeylDimensionFormula {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let mut raw_weights = Vec::with_capacity(rs.positive_roots.len());
        let mut raw_eta = Vec::with_capacity(rs.positive_roots.len());
        for root in &rs.positive_roots {
            let row: Vec<Rational> = rs
                .fundamental_weights
                .iter()
                .map(|w| linalg::inner(w, root))
                .collect::<Result<_>>()?;
            raw_weights.push(row);
            raw_eta.push(linalg::inner(&rs.weyl_vector, root)?);
        }
        let lcm = raw_weights
            .iter()
            .flatten()
            .chain(raw_eta.iter())
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scale = Rational::from_integer(lcm);
        let to_int = |x: &Rational| (x * &scale).to_integer();

        let weight_pairings: Vec<Vec<BigInt>> = raw_weights
            .iter()
            .map(|row| row.iter().map(to_int).collect())
            .collect();
        let eta_pairings: Vec<BigInt> = raw_eta.iter().map(to_int).collect();
        let mut denominator = BigUint::one();
        for e in &eta_pairings {
            let e = e.to_biguint().filter(|e| !e.is_zero()).ok_or_else(|| {
                Error::InternalInconsistency("Weyl vector is not strictly dominant".into())
            })?;
            denominator *= e;
        }
        Ok(WeylDimensionFormula {
            weight_pairings,
            eta_pairings,
            denominator,
            rank: rs.rank(),
        })
    }

    pub fn dimension(&self, nu: &HighestWeight) -> Result<BigUint> {
        if nu.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                actual: nu.len(),
            });
        }
        let shifted = nu.unshifted();
        let mut numerator = BigUint::one();
        for (row, eta) in self.weight_pairings.iter().zip(&self.eta_pairings) {
            let mut pairing = eta.clone();
            for (w, &k) in row.iter().zip(&shifted) {
                if k != 0 {
                    pairing += w * k;
                }
            }
            let pairing = pairing.to_biguint().filter(|p| !p.is_zero()).ok_or_else(|| {
                Error::InternalInconsistency("non-positive pairing with a positive root".into())
            })?;
            numerator *= pairing;
        }
        let (q, r) = numerator.div_rem(&self.denominator);
        if !r.is_zero() {
            return Err(Error::InternalInconsistency(format!(
                "Weyl dimension of {nu} is not an integer"
            )));
        }
        Ok(q)
    }
}

/// Dimension of the irreducible representation with highest weight `nu`.
pub fn weyl_dimension(rs: &RootSystem, nu: &HighestWeight) -> Result<BigUint> {
    check_rank(rs, nu)?;
    WeylDimensionFormula::new(rs)?.dimension(nu)
}

/// One eigenvalue `R / (b gamma)` and the weights attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenvalueRecord {
    #[serde(rename = "R")]
    pub r: u64,
    pub weights: Vec<HighestWeight>,
    /// Number of parametrising weights.
    #[serde(rename = "N_R")]
    pub n_r: usize,
    #[serde(serialize_with = "crate::serde_big::vec::serialize")]
    pub weyl_dims: Vec<BigUint>,
    /// Full eigenspace dimension `sum dim^2`; distinct from `N_R`.
    #[serde(serialize_with = "crate::serde_big::serialize")]
    pub mult: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTable {
    pub family: crate::root_systems::GroupFamily,
    pub r_max: u64,
    pub b_table: i64,
    pub r0: i64,
    /// Sorted by `R`, strictly increasing.
    pub records: Vec<EigenvalueRecord>,
}

impl SpectrumTable {
    pub fn get(&self, r: u64) -> Option<&EigenvalueRecord> {
        self.records
            .binary_search_by_key(&r, |rec| rec.r)
            .ok()
            .map(|i| &self.records[i])
    }

    /// `N_R`, zero when `R` is not an eigenvalue numerator.
    pub fn n_r(&self, r: u64) -> usize {
        self.get(r).map_or(0, |rec| rec.n_r)
    }

    /// Total number of weights with `R <= r_max`.
    pub fn weight_count(&self) -> usize {
        self.records.iter().map(|r| r.n_r).sum()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Json<'a> {
            family: String,
            rank: usize,
            group: String,
            #[serde(rename = "R_max")]
            r_max: u64,
            b_table: i64,
            #[serde(rename = "R0")]
            r0: i64,
            records: &'a [EigenvalueRecord],
        }
        serde_json::to_value(Json {
            family: self.family.label().to_string(),
            rank: self.family.rank(),
            group: self.family.group_name(),
            r_max: self.r_max,
            b_table: self.b_table,
            r0: self.r0,
            records: &self.records,
        })
        .expect("spectrum tables always serialise")
    }

    /// CSV rows `family,rank,R,N_R,mult,weights` with a header line and LF
    /// endings. Weights are `(a b c)` tuples joined by `;`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,rank,R,N_R,mult,weights\n");
        for rec in &self.records {
            let weights: Vec<String> = rec.weights.iter().map(ToString::to_string).collect();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                self.family.label(),
                self.family.rank(),
                rec.r,
                rec.n_r,
                rec.mult,
                weights.join(";")
            ));
        }
        out
    }
}

/// Limits and knobs for [`enumerate_spectrum`].
#[derive(Debug, Clone)]
pub struct EnumerationConfig {
    /// Maximum number of search-tree nodes before giving up with
    /// [`Error::ResourceLimit`].
    pub node_budget: u64,
    /// Extra cells added to the search box in every coordinate.
    pub box_padding: i64,
    /// Split the outermost coordinate across the rayon pool.
    pub parallel: bool,
    /// Compute Weyl dimensions and eigenspace multiplicities.
    pub with_dimensions: bool,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            node_budget: 200_000_000,
            box_padding: 0,
            parallel: true,
            with_dimensions: true,
        }
    }
}

/// Smallest singular value of `A`.
pub fn smallest_singular_value(rs: &RootSystem) -> f64 {
    let rows = rs.matrix_a.len();
    let cols = rs.rank();
    let m = DMatrix::from_fn(rows, cols, |i, j| rs.matrix_a[i][j] as f64);
    m.singular_values().min()
}

/// Per-coordinate upper end of the search box for `R <= r_max`.
///
/// From `|A nu|^2 = R + R0` and `|A nu| >= s_min |nu|`, every admissible
/// `nu` has `|nu| <= sqrt(r_max + R0) / s_min`; `s_min` is shrunk by 1% to
/// absorb floating-point error in the singular value.
pub fn search_box(rs: &RootSystem, r_max: u64) -> i64 {
    let s_min = smallest_singular_value(rs) * 0.99;
    let radius = ((r_max as f64) + rs.r0 as f64).sqrt() / s_min;
    radius.floor() as i64
}

/// Enumeration of `{nu in [1, B]^l : |A nu|^2 <= bound}` by Fincke-Pohst
/// pruning on the Cholesky factor of `A^T A`.
struct LatticeSearch<'a> {
    matrix: &'a [Vec<i64>],
    rank: usize,
    /// `q[i][i]` on the diagonal and `q[i][j] = R[i][j] / R[i][i]` above it.
    q: Vec<Vec<f64>>,
    bound: i64,
    box_max: i64,
    budget: u64,
    visited: &'a AtomicU64,
    exhausted: &'a AtomicBool,
}

impl LatticeSearch<'_> {
    fn tick(&self) -> bool {
        let n = self.visited.fetch_add(1, Ordering::Relaxed);
        if n >= self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    /// Admissible integer range for coordinate `i` given the coordinates
    /// above it and the remaining quadratic budget.
    fn range(&self, i: usize, nu: &[i64], remaining: f64) -> Option<(i64, i64)> {
        if remaining < -1e-9 {
            return None;
        }
        let center: f64 = -((i + 1)..self.rank)
            .map(|j| self.q[i][j] * nu[j] as f64)
            .sum::<f64>();
        let half_width = (remaining.max(0.0) / self.q[i][i]).sqrt();
        let slack = 1e-7 * (1.0 + half_width + center.abs());
        let lo = ((center - half_width - slack).ceil() as i64).max(1);
        let hi = ((center + half_width + slack).floor() as i64).min(self.box_max);
        (lo <= hi).then_some((lo, hi))
    }

    fn partial(&self, i: usize, nu: &[i64]) -> f64 {
        let t: f64 = nu[i] as f64
            + ((i + 1)..self.rank)
                .map(|j| self.q[i][j] * nu[j] as f64)
                .sum::<f64>();
        self.q[i][i] * t * t
    }

    fn descend(&self, i: usize, nu: &mut Vec<i64>, remaining: f64, out: &mut Vec<(i64, Vec<i64>)>) {
        let Some((lo, hi)) = self.range(i, nu, remaining) else {
            return;
        };
        for x in lo..=hi {
            if !self.tick() {
                return;
            }
            nu[i] = x;
            let rest = remaining - self.partial(i, nu);
            if i == 0 {
                let norm: i64 = self
                    .matrix
                    .iter()
                    .map(|row| {
                        let n: i64 = row.iter().zip(nu.iter()).map(|(a, b)| a * b).sum();
                        n * n
                    })
                    .sum();
                if norm <= self.bound {
                    out.push((norm, nu.clone()));
                }
            } else {
                self.descend(i - 1, nu, rest, out);
            }
        }
        nu[i] = 0;
    }
}

fn cholesky_coefficients(rs: &RootSystem) -> Result<Vec<Vec<f64>>> {
    let l = rs.rank();
    let gram = DMatrix::from_fn(l, l, |i, j| {
        rs.matrix_a.iter().map(|row| (row[i] * row[j]) as f64).sum::<f64>()
    });
    let chol = gram
        .cholesky()
        .ok_or_else(|| Error::InternalInconsistency("A^T A is not positive definite".into()))?;
    // gram = L L^T; the upper factor is L^T.
    let lower = chol.l();
    let mut q = vec![vec![0.0; l]; l];
    for i in 0..l {
        let d = lower[(i, i)];
        q[i][i] = d * d;
        for j in (i + 1)..l {
            q[i][j] = lower[(j, i)] / d;
        }
    }
    Ok(q)
}

/// Complete table of eigenvalue numerators `R <= r_max`.
///
/// Completeness: the search covers the box `[1, B]^l` with `B` from
/// [`search_box`] (plus `box_padding`), pruned to the ellipsoid
/// `|A nu|^2 <= r_max + R0`. Pruning uses floating-point bounds widened by a
/// small slack; membership is decided in exact integer arithmetic.
pub fn enumerate_spectrum(
    rs: &RootSystem,
    r_max: u64,
    config: &EnumerationConfig,
) -> Result<SpectrumTable> {
    let l = rs.rank();
    let r_max_i = i64::try_from(r_max)
        .map_err(|_| Error::ResourceLimit(format!("R_max = {r_max} is too large")))?;
    let bound = r_max_i
        .checked_add(rs.r0)
        .ok_or_else(|| Error::ResourceLimit(format!("R_max = {r_max} is too large")))?;
    let box_max = search_box(rs, r_max) + config.box_padding;
    let q = cholesky_coefficients(rs)?;

    let visited = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let search = LatticeSearch {
        matrix: &rs.matrix_a,
        rank: l,
        q,
        bound,
        box_max,
        budget: config.node_budget,
        visited: &visited,
        exhausted: &exhausted,
    };

    let top = l - 1;
    let mut found: Vec<(i64, Vec<i64>)> = match search.range(top, &vec![0; l], bound as f64) {
        None => Vec::new(),
        Some((lo, hi)) => {
            let branch = |x: i64| {
                let mut nu = vec![0; l];
                nu[top] = x;
                let mut out = Vec::new();
                if !search.tick() {
                    return out;
                }
                let rest = bound as f64 - search.partial(top, &nu);
                if top == 0 {
                    let norm: i64 = rs.matrix_a.iter().map(|row| (row[0] * x).pow(2)).sum();
                    if norm <= bound {
                        out.push((norm, nu));
                    }
                } else {
                    search.descend(top - 1, &mut nu, rest, &mut out);
                }
                out
            };
            if config.parallel {
                (lo..=hi).into_par_iter().flat_map_iter(branch).collect()
            } else {
                (lo..=hi).flat_map(branch).collect()
            }
        }
    };
    if exhausted.load(Ordering::Relaxed) {
        return Err(Error::ResourceLimit(format!(
            "{}: enumeration for R_max = {r_max} exceeded the budget of {} search nodes",
            rs.family, config.node_budget
        )));
    }

    found.sort();
    let formula = if config.with_dimensions {
        Some(WeylDimensionFormula::new(rs)?)
    } else {
        None
    };

    let mut records: Vec<EigenvalueRecord> = Vec::new();
    for (norm, nu) in found {
        let r = u64::try_from(norm - rs.r0).map_err(|_| {
            Error::InternalInconsistency(format!("negative eigenvalue numerator at {nu:?}"))
        })?;
        let weight = HighestWeight(nu);
        let dim = match &formula {
            Some(f) => f.dimension(&weight)?,
            None => BigUint::zero(),
        };
        match records.last_mut() {
            Some(rec) if rec.r == r => {
                rec.weights.push(weight);
                rec.n_r += 1;
                rec.mult += &dim * &dim;
                if formula.is_some() {
                    rec.weyl_dims.push(dim);
                }
            }
            _ => records.push(EigenvalueRecord {
                r,
                weights: vec![weight],
                n_r: 1,
                mult: &dim * &dim,
                weyl_dims: if formula.is_some() { vec![dim] } else { Vec::new() },
            }),
        }
    }

    Ok(SpectrumTable {
        family: rs.family,
        r_max,
        b_table: rs.b_table,
        r0: rs.r0,
        records,
    })
}
