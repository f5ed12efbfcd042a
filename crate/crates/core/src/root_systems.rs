//! Irreducible root systems in their standard ambient coordinates.
//!
//! Each family is realised in an orthonormal basis `e_1, ..., e_m` with the
//! usual positive and simple roots. Fundamental weights, the Weyl vector, the
//! highest root and the integer constants used by the spectrum are derived
//! from those roots with exact rational arithmetic, never tabulated.

use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, int, ivec, Rational, RationalVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyLabel {
    A,
    B,
    C,
    D,
    E8,
    F4,
    G2,
}

impl FamilyLabel {
    pub const ALL: [FamilyLabel; 7] = [
        FamilyLabel::A,
        FamilyLabel::B,
        FamilyLabel::C,
        FamilyLabel::D,
        FamilyLabel::E8,
        FamilyLabel::F4,
        FamilyLabel::G2,
    ];

    /// Fixed rank of an exceptional family, `None` for the classical series.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            FamilyLabel::E8 => Some(8),
            FamilyLabel::F4 => Some(4),
            FamilyLabel::G2 => Some(2),
            _ => None,
        }
    }

    /// Smallest admissible rank.
    pub fn min_rank(self) -> usize {
        match self {
            FamilyLabel::A => 1,
            FamilyLabel::B => 2,
            FamilyLabel::C => 3,
            FamilyLabel::D => 4,
            other => other.fixed_rank().unwrap(),
        }
    }

    fn window(self) -> &'static str {
        match self {
            FamilyLabel::A => "rank >= 1",
            FamilyLabel::B => "rank >= 2",
            FamilyLabel::C => "rank >= 3",
            FamilyLabel::D => "rank >= 4",
            FamilyLabel::E8 => "rank = 8",
            FamilyLabel::F4 => "rank = 4",
            FamilyLabel::G2 => "rank = 2",
        }
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyLabel::A => "A",
            FamilyLabel::B => "B",
            FamilyLabel::C => "C",
            FamilyLabel::D => "D",
            FamilyLabel::E8 => "E8",
            FamilyLabel::F4 => "F4",
            FamilyLabel::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for FamilyLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(FamilyLabel::A),
            "B" => Ok(FamilyLabel::B),
            "C" => Ok(FamilyLabel::C),
            "D" => Ok(FamilyLabel::D),
            "E8" => Ok(FamilyLabel::E8),
            "F4" => Ok(FamilyLabel::F4),
            "G2" => Ok(FamilyLabel::G2),
            "E6" | "E7" => Err(Error::UnsupportedFamily(s.trim().to_ascii_uppercase())),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// A root-system family at a fixed rank, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupFamily {
    label: FamilyLabel,
    rank: usize,
}

impl GroupFamily {
    pub fn new(label: FamilyLabel, rank: usize) -> Result<Self> {
        let ok = match label.fixed_rank() {
            Some(r) => rank == r,
            None => rank >= label.min_rank(),
        };
        if !ok {
            return Err(Error::InvalidRank {
                family: label.to_string(),
                rank,
                window: label.window(),
            });
        }
        Ok(GroupFamily { label, rank })
    }

    /// Family from its label alone, using the fixed rank of an exceptional
    /// family or the supplied rank of a classical one.
    pub fn with_optional_rank(label: FamilyLabel, rank: Option<usize>) -> Result<Self> {
        match (label.fixed_rank(), rank) {
            (Some(r), None) => Self::new(label, r),
            (_, Some(r)) => Self::new(label, r),
            (None, None) => Err(Error::InvalidArgument(format!(
                "family {label} needs an explicit rank"
            ))),
        }
    }

    pub fn a(rank: usize) -> Result<Self> {
        Self::new(FamilyLabel::A, rank)
    }
    pub fn b(rank: usize) -> Result<Self> {
        Self::new(FamilyLabel::B, rank)
    }
    pub fn c(rank: usize) -> Result<Self> {
        Self::new(FamilyLabel::C, rank)
    }
    pub fn d(rank: usize) -> Result<Self> {
        Self::new(FamilyLabel::D, rank)
    }
    pub fn e8() -> Self {
        GroupFamily {
            label: FamilyLabel::E8,
            rank: 8,
        }
    }
    pub fn f4() -> Self {
        GroupFamily {
            label: FamilyLabel::F4,
            rank: 4,
        }
    }
    pub fn g2() -> Self {
        GroupFamily {
            label: FamilyLabel::G2,
            rank: 2,
        }
    }

    pub fn label(&self) -> FamilyLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of squares in the eigenvalue formula: `l + 1` for A and G2,
    /// `l` otherwise. Equals the ambient dimension of the realisation.
    pub fn m_spec(&self) -> usize {
        match self.label {
            FamilyLabel::A | FamilyLabel::G2 => self.rank + 1,
            _ => self.rank,
        }
    }

    /// Dimension of the compact group.
    pub fn group_dim(&self) -> usize {
        let l = self.rank;
        match self.label {
            FamilyLabel::A => l * (l + 2),
            FamilyLabel::B | FamilyLabel::C => l * (2 * l + 1),
            FamilyLabel::D => l * (2 * l - 1),
            FamilyLabel::E8 => 248,
            FamilyLabel::F4 => 52,
            FamilyLabel::G2 => 14,
        }
    }

    /// Classical count of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let l = self.rank;
        match self.label {
            FamilyLabel::A => l * (l + 1) / 2,
            FamilyLabel::B | FamilyLabel::C => l * l,
            FamilyLabel::D => l * (l - 1),
            FamilyLabel::E8 => 120,
            FamilyLabel::F4 => 24,
            FamilyLabel::G2 => 6,
        }
    }

    /// Simply-connected compact group with this root system.
    pub fn group_name(&self) -> String {
        let l = self.rank;
        match self.label {
            FamilyLabel::A => format!("SU({})", l + 1),
            FamilyLabel::B => format!("Spin({})", 2 * l + 1),
            FamilyLabel::C => format!("Sp({l})"),
            FamilyLabel::D => format!("Spin({})", 2 * l),
            FamilyLabel::E8 => "E8".into(),
            FamilyLabel::F4 => "F4".into(),
            FamilyLabel::G2 => "G2".into(),
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label.fixed_rank() {
            Some(_) => write!(f, "{}", self.label),
            None => write!(f, "{}{}", self.label, self.rank),
        }
    }
}

/// Root data and derived constants for one family at one rank.
///
/// Immutable after construction.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub family: GroupFamily,
    pub ambient_dim: usize,
    /// Sorted lexicographically on coordinates.
    pub positive_roots: Vec<RationalVector>,
    pub simple_roots: Vec<RationalVector>,
    pub fundamental_weights: Vec<RationalVector>,
    pub weyl_vector: RationalVector,
    pub highest_root: RationalVector,
    /// `<a, a> + 2 <a, eta>` for the highest root `a`.
    pub b_root: i64,
    /// Least positive integer clearing every denominator of `eta` and the
    /// fundamental weights.
    pub scale: i64,
    /// `scale^2 * b_root`, the denominator constant of the spectrum.
    pub b_table: i64,
    /// `<scale * eta, scale * eta>`.
    pub r0: i64,
    /// Integer `m_spec x l` matrix with `n = A nu`.
    pub matrix_a: Vec<Vec<i64>>,
    pub group_dim: usize,
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.family.rank()
    }

    pub fn m_spec(&self) -> usize {
        self.family.m_spec()
    }

    /// Coefficients of `v` in the basis of simple roots.
    pub fn simple_root_coordinates(&self, v: &[Rational]) -> Result<RationalVector> {
        simple_coordinates(&self.simple_roots, v)
    }
}

/// Standard positive and simple roots per family.
fn standard_roots(family: GroupFamily) -> (usize, Vec<RationalVector>, Vec<RationalVector>) {
    let l = family.rank();
    let e = |dim: usize, i: usize| linalg::unit(dim, i);
    let plus = |u: &RationalVector, v: &RationalVector| linalg::add(u, v).unwrap();
    let minus = |u: &RationalVector, v: &RationalVector| linalg::sub(u, v).unwrap();

    match family.label() {
        FamilyLabel::A => {
            let n = l + 1;
            let mut pos = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    pos.push(minus(&e(n, i), &e(n, j)));
                }
            }
            let simple = (0..l).map(|j| minus(&e(n, j), &e(n, j + 1))).collect();
            (n, pos, simple)
        }
        FamilyLabel::B => {
            let mut pos: Vec<_> = (0..l).map(|i| e(l, i)).collect();
            for i in 0..l {
                for j in (i + 1)..l {
                    pos.push(plus(&e(l, i), &e(l, j)));
                    pos.push(minus(&e(l, i), &e(l, j)));
                }
            }
            let mut simple: Vec<_> = (0..l - 1).map(|j| minus(&e(l, j), &e(l, j + 1))).collect();
            simple.push(e(l, l - 1));
            (l, pos, simple)
        }
        FamilyLabel::C => {
            let two = int(2);
            let mut pos: Vec<_> = (0..l).map(|i| linalg::scale(&two, &e(l, i))).collect();
            for i in 0..l {
                for j in (i + 1)..l {
                    pos.push(plus(&e(l, i), &e(l, j)));
                    pos.push(minus(&e(l, i), &e(l, j)));
                }
            }
            let mut simple: Vec<_> = (0..l - 1).map(|j| minus(&e(l, j), &e(l, j + 1))).collect();
            simple.push(linalg::scale(&two, &e(l, l - 1)));
            (l, pos, simple)
        }
        FamilyLabel::D => {
            let mut pos = Vec::new();
            for i in 0..l {
                for j in (i + 1)..l {
                    pos.push(plus(&e(l, i), &e(l, j)));
                    pos.push(minus(&e(l, i), &e(l, j)));
                }
            }
            let mut simple: Vec<_> = (0..l - 1).map(|j| minus(&e(l, j), &e(l, j + 1))).collect();
            simple.push(plus(&e(l, l - 2), &e(l, l - 1)));
            (l, pos, simple)
        }
        FamilyLabel::E8 => {
            let n = 8;
            let mut pos = Vec::new();
            // e_j +- e_i for i < j
            for j in 0..n {
                for i in 0..j {
                    pos.push(plus(&e(n, j), &e(n, i)));
                    pos.push(minus(&e(n, j), &e(n, i)));
                }
            }
            // (e_8 + sum_{k<8} (-1)^{s_k} e_k) / 2 with an even number of minus signs
            for mask in 0u32..128 {
                if mask.count_ones() % 2 != 0 {
                    continue;
                }
                let mut v = vec![linalg::rat(1, 2); n];
                for (k, x) in v.iter_mut().enumerate().take(7) {
                    if mask & (1 << k) != 0 {
                        *x = linalg::rat(-1, 2);
                    }
                }
                pos.push(v);
            }
            let mut simple = vec![
                linalg::qvec(&[
                    (1, 2),
                    (-1, 2),
                    (-1, 2),
                    (-1, 2),
                    (-1, 2),
                    (-1, 2),
                    (-1, 2),
                    (1, 2),
                ]),
                plus(&e(n, 0), &e(n, 1)),
            ];
            // a_j = e_{j-1} - e_{j-2} for j = 3..8 (1-based)
            for j in 3..=8 {
                simple.push(minus(&e(n, j - 2), &e(n, j - 3)));
            }
            (n, pos, simple)
        }
        FamilyLabel::F4 => {
            let n = 4;
            let mut pos: Vec<_> = (0..n).map(|i| e(n, i)).collect();
            for i in 0..n {
                for j in (i + 1)..n {
                    pos.push(plus(&e(n, i), &e(n, j)));
                    pos.push(minus(&e(n, i), &e(n, j)));
                }
            }
            for mask in 0u32..8 {
                let mut v = vec![linalg::rat(1, 2); n];
                for (k, x) in v.iter_mut().enumerate().skip(1) {
                    if mask & (1 << (k - 1)) != 0 {
                        *x = linalg::rat(-1, 2);
                    }
                }
                pos.push(v);
            }
            let simple = vec![
                ivec(&[0, 1, -1, 0]),
                ivec(&[0, 0, 1, -1]),
                ivec(&[0, 0, 0, 1]),
                linalg::qvec(&[(1, 2), (-1, 2), (-1, 2), (-1, 2)]),
            ];
            (n, pos, simple)
        }
        FamilyLabel::G2 => {
            let pos = vec![
                ivec(&[1, -1, 0]),
                ivec(&[0, -1, 1]),
                ivec(&[-1, 0, 1]),
                ivec(&[-2, 1, 1]),
                ivec(&[1, -2, 1]),
                ivec(&[-1, -1, 2]),
            ];
            let simple = vec![ivec(&[1, -1, 0]), ivec(&[-2, 1, 1])];
            (3, pos, simple)
        }
    }
}

/// The explicit integer matrix `A` with `n = A nu` for each family.
pub fn matrix_a(family: GroupFamily) -> Vec<Vec<i64>> {
    let l = family.rank();
    let li = l as i64;
    match family.label() {
        FamilyLabel::A => {
            let mut rows = Vec::with_capacity(l + 1);
            rows.push((1..=li).map(|j| li + 1 - j).collect());
            for k in 2..=li {
                rows.push(
                    (1..=li)
                        .map(|j| if j < k { -j } else { li + 1 - j })
                        .collect(),
                );
            }
            rows.push((1..=li).collect());
            rows
        }
        FamilyLabel::B => (0..l)
            .map(|k| {
                (0..l)
                    .map(|j| {
                        if j == l - 1 {
                            1
                        } else if j >= k {
                            2
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect(),
        FamilyLabel::C => (0..l)
            .map(|k| (0..l).map(|j| i64::from(j >= k)).collect())
            .collect(),
        FamilyLabel::D => {
            let mut rows: Vec<Vec<i64>> = (0..l - 2)
                .map(|k| {
                    (0..l)
                        .map(|j| {
                            if j >= l - 2 {
                                1
                            } else if j >= k {
                                2
                            } else {
                                0
                            }
                        })
                        .collect()
                })
                .collect();
            let mut penultimate = vec![0; l];
            penultimate[l - 2] = 1;
            penultimate[l - 1] = 1;
            let mut last = vec![0; l];
            last[l - 2] = -1;
            last[l - 1] = 1;
            rows.push(penultimate);
            rows.push(last);
            rows
        }
        FamilyLabel::E8 => vec![
            vec![0, 1, -1, 0, 0, 0, 0, 0],
            vec![0, 1, 1, 0, 0, 0, 0, 0],
            vec![0, 1, 1, 2, 0, 0, 0, 0],
            vec![0, 1, 1, 2, 2, 0, 0, 0],
            vec![0, 1, 1, 2, 2, 2, 0, 0],
            vec![0, 1, 1, 2, 2, 2, 2, 0],
            vec![0, 1, 1, 2, 2, 2, 2, 2],
            vec![4, 5, 7, 10, 8, 6, 4, 2],
        ],
        FamilyLabel::F4 => vec![
            vec![2, 4, 3, 2],
            vec![2, 2, 1, 0],
            vec![0, 2, 1, 0],
            vec![0, 0, 1, 0],
        ],
        FamilyLabel::G2 => vec![vec![1, 1], vec![1, 2], vec![0, 1]],
    }
}

/// Reference entries `(b, R0)` evaluated from their closed-form expressions in
/// the rank. Independent of the root data; used to cross-check
/// [`build_root_system`].
pub fn table1_closed_form(family: GroupFamily) -> (i64, i64) {
    let l = family.rank() as i64;
    match family.label() {
        FamilyLabel::A => {
            let b = 2 * (l + 1).pow(3);
            // (1/4) sum_{k=1}^{l+1} (l - 2(k-1))^2 (l+1)^2
            let s: i64 = (1..=l + 1)
                .map(|k| (l - 2 * (k - 1)).pow(2) * (l + 1).pow(2))
                .sum();
            assert_eq!(s % 4, 0);
            (b, s / 4)
        }
        FamilyLabel::B => (16 * l - 8, (1..=l).map(|k| (2 * (l - k) + 1).pow(2)).sum()),
        FamilyLabel::C => (4 * (l + 1), l * (l + 1) * (2 * l + 1) / 6),
        FamilyLabel::D => (16 * l - 16, (1..=l).map(|k| (2 * (l - k)).pow(2)).sum()),
        FamilyLabel::E8 => (240, 2480),
        FamilyLabel::F4 => (72, 156),
        FamilyLabel::G2 => (24, 14),
    }
}

fn simple_coordinates(simple: &[RationalVector], v: &[Rational]) -> Result<RationalVector> {
    let g = linalg::gram(simple)?;
    let g_inv = linalg::invert(&g)
        .ok_or_else(|| Error::InternalInconsistency("simple roots are linearly dependent".into()))?;
    coordinates_from_inverse(simple, &g_inv, v)
}

/// Coordinates of `v` in the simple-root basis, given the inverse Gram matrix.
fn coordinates_from_inverse(
    simple: &[RationalVector],
    g_inv: &[RationalVector],
    v: &[Rational],
) -> Result<RationalVector> {
    let pairings: Vec<Rational> = simple
        .iter()
        .map(|a| linalg::inner(a, v))
        .collect::<Result<_>>()?;
    Ok(g_inv
        .iter()
        .map(|row| {
            row.iter()
                .zip(&pairings)
                .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect())
}

fn exact_i64(x: &Rational, what: &str) -> Result<i64> {
    linalg::to_integer(x)
        .and_then(|n| n.to_i64())
        .ok_or_else(|| Error::InternalInconsistency(format!("{what} = {x} is not a machine integer")))
}

/// Builds the root system of `family` and derives every constant from it.
///
/// The result is checked against its own invariants (positive-root count,
/// fundamental-weight duality, Weyl-vector identity, full column rank of `A`,
/// and `A^T A = c^2 W^T W` for the weight matrix `W`); a violation is
/// reported as [`Error::InternalInconsistency`].
pub fn build_root_system(family: GroupFamily) -> Result<RootSystem> {
    let (ambient_dim, mut positive_roots, simple_roots) = standard_roots(family);
    positive_roots.sort();
    let l = family.rank();

    if positive_roots.len() != family.positive_root_count() {
        return Err(Error::InternalInconsistency(format!(
            "{family}: {} positive roots, expected {}",
            positive_roots.len(),
            family.positive_root_count()
        )));
    }

    // omega_i = (|a_i|^2 / 2) sum_k (G^-1)_{ik} a_k solves (omega_i, a_j) = delta_ij |a_j|^2 / 2.
    let g = linalg::gram(&simple_roots)?;
    let g_inv = linalg::invert(&g)
        .ok_or_else(|| Error::InternalInconsistency("simple roots are linearly dependent".into()))?;
    let half = linalg::rat(1, 2);
    let fundamental_weights: Vec<RationalVector> = (0..l)
        .map(|i| {
            let half_len = &half * &g[i][i];
            let coeffs: Vec<Rational> = g_inv[i].iter().map(|x| x * &half_len).collect();
            linalg::combination(&coeffs, &simple_roots)
        })
        .collect::<Result<_>>()?;

    let sum = positive_roots
        .iter()
        .try_fold(linalg::zeros(ambient_dim), |acc, r| linalg::add(&acc, r))?;
    let weyl_vector = linalg::scale(&half, &sum);

    // Highest root: maximal height in the simple-root basis.
    let mut highest: Option<(Rational, &RationalVector)> = None;
    for root in &positive_roots {
        let coords = coordinates_from_inverse(&simple_roots, &g_inv, root)?;
        if coords.iter().any(|c| !c.is_integer() || !linalg::is_nonnegative(c)) {
            return Err(Error::InternalInconsistency(format!(
                "{family}: positive root is not a non-negative integer combination of simple roots"
            )));
        }
        let height: Rational = coords.iter().sum();
        if highest.as_ref().is_none_or(|(h, _)| height > *h) {
            highest = Some((height, root));
        }
    }
    let highest_root = highest.expect("root system is non-empty").1.clone();

    let alpha_sq = linalg::norm_sq(&highest_root);
    let alpha_eta = linalg::inner(&highest_root, &weyl_vector)?;
    let b_root = exact_i64(&(&alpha_sq + int(2) * &alpha_eta), "b_root")?;

    let scale_big = linalg::denominator_lcm(fundamental_weights.iter().chain([&weyl_vector]));
    let scale = scale_big
        .to_i64()
        .ok_or_else(|| Error::InternalInconsistency("scale overflows i64".into()))?;
    let c_sq = Rational::from_integer(&scale_big * &scale_big);
    let b_table = exact_i64(&(&c_sq * int(b_root)), "b_table")?;
    let r0 = exact_i64(&(&c_sq * linalg::norm_sq(&weyl_vector)), "R0")?;

    let rs = RootSystem {
        family,
        ambient_dim,
        positive_roots,
        simple_roots,
        fundamental_weights,
        weyl_vector,
        highest_root,
        b_root,
        scale,
        b_table,
        r0,
        matrix_a: matrix_a(family),
        group_dim: family.group_dim(),
    };
    check_invariants(&rs)?;
    Ok(rs)
}

fn check_invariants(rs: &RootSystem) -> Result<()> {
    let fail = |msg: String| Err(Error::InternalInconsistency(format!("{}: {msg}", rs.family)));
    let l = rs.rank();

    for (i, w) in rs.fundamental_weights.iter().enumerate() {
        for (j, a) in rs.simple_roots.iter().enumerate() {
            let lhs = int(2) * linalg::inner(w, a)?;
            let expected = if i == j { linalg::norm_sq(a) } else { Rational::zero() };
            if lhs != expected {
                return fail(format!("fundamental weight duality fails at ({i}, {j})"));
            }
        }
    }
    for a in &rs.simple_roots {
        if int(2) * linalg::inner(&rs.weyl_vector, a)? != linalg::norm_sq(a) {
            return fail("Weyl vector identity fails".into());
        }
    }
    let max_len = rs
        .positive_roots
        .iter()
        .map(|r| linalg::norm_sq(r))
        .max()
        .expect("non-empty");
    if linalg::norm_sq(&rs.highest_root) != max_len {
        return fail("highest root is not long".into());
    }
    if rs.matrix_a.len() != rs.m_spec() || rs.matrix_a.iter().any(|r| r.len() != l) {
        return fail("matrix A has the wrong shape".into());
    }
    if linalg::rank(&rs.matrix_a) != l {
        return fail("matrix A is rank deficient".into());
    }
    if 2 * rs.positive_roots.len() + l != rs.group_dim {
        return fail("group dimension disagrees with the root count".into());
    }

    // A^T A must equal the Gram matrix of the scaled fundamental weights, so
    // that sum (A nu)^2 = |c (nu~ + eta)|^2 for every nu.
    let c = int(rs.scale);
    let scaled: Vec<RationalVector> = rs
        .fundamental_weights
        .iter()
        .map(|w| linalg::scale(&c, w))
        .collect();
    let weight_gram = linalg::gram(&scaled)?;
    for i in 0..l {
        for j in 0..l {
            let ata: i64 = rs.matrix_a.iter().map(|row| row[i] * row[j]).sum();
            if int(ata) != weight_gram[i][j] {
                return fail(format!("A^T A differs from the weight Gram matrix at ({i}, {j})"));
            }
        }
    }
    Ok(())
}

/// Exact inner product of two rational vectors.
pub fn inner(u: &[Rational], v: &[Rational]) -> Result<Rational> {
    linalg::inner(u, v)
}

// ---------------------------------------------------------------------------
// JSON export

#[derive(Debug, Serialize)]
pub struct RootSystemRecord {
    pub family: String,
    pub rank: usize,
    pub ambient_dim: usize,
    pub roots: Vec<Vec<[i64; 2]>>,
    pub b_root: i64,
    pub c: i64,
    pub b_table: i64,
    #[serde(rename = "R0")]
    pub r0: i64,
    #[serde(rename = "matrix_A")]
    pub matrix_a: Vec<Vec<i64>>,
    pub group_dim: usize,
}

impl From<&RootSystem> for RootSystemRecord {
    fn from(rs: &RootSystem) -> Self {
        RootSystemRecord {
            family: rs.family.label().to_string(),
            rank: rs.rank(),
            ambient_dim: rs.ambient_dim,
            roots: rs
                .positive_roots
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| {
                            [
                                x.numer().to_i64().expect("small numerator"),
                                x.denom().to_i64().expect("small denominator"),
                            ]
                        })
                        .collect()
                })
                .collect(),
            b_root: rs.b_root,
            c: rs.scale,
            b_table: rs.b_table,
            r0: rs.r0,
            matrix_a: rs.matrix_a.clone(),
            group_dim: rs.group_dim,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qvec;

    fn g2() -> RootSystem {
        build_root_system(GroupFamily::g2()).unwrap()
    }

    #[test]
    fn rank_windows_are_enforced() {
        assert!(GroupFamily::a(0).is_err());
        assert!(GroupFamily::b(1).is_err());
        assert!(GroupFamily::c(2).is_err());
        assert!(GroupFamily::d(3).is_err());
        assert!(GroupFamily::new(FamilyLabel::E8, 7).is_err());
        assert!(GroupFamily::new(FamilyLabel::G2, 3).is_err());
        assert!(GroupFamily::a(1).is_ok());
        assert!(GroupFamily::d(4).is_ok());
    }

    #[test]
    fn e6_and_e7_are_unsupported() {
        assert!(matches!("E6".parse::<FamilyLabel>(), Err(Error::UnsupportedFamily(_))));
        assert!(matches!("e7".parse::<FamilyLabel>(), Err(Error::UnsupportedFamily(_))));
        assert!(matches!("X".parse::<FamilyLabel>(), Err(Error::UnknownFamily(_))));
        assert_eq!("g2".parse::<FamilyLabel>().unwrap(), FamilyLabel::G2);
    }

    #[test]
    fn g2_constants() {
        let rs = g2();
        assert_eq!(rs.weyl_vector, ivec(&[-1, -2, 3]));
        assert_eq!(rs.highest_root, ivec(&[-1, -1, 2]));
        assert_eq!(rs.fundamental_weights, vec![ivec(&[0, -1, 1]), ivec(&[-1, -1, 2])]);
        assert_eq!(inner(&rs.weyl_vector, &rs.weyl_vector).unwrap(), int(14));
        assert_eq!(inner(&rs.highest_root, &rs.weyl_vector).unwrap(), int(9));
        assert_eq!((rs.b_root, rs.scale, rs.b_table, rs.r0), (24, 1, 24, 14));
        // roots lie in the plane orthogonal to e1 + e2 + e3
        let normal = ivec(&[1, 1, 1]);
        assert!(rs
            .positive_roots
            .iter()
            .all(|r| inner(r, &normal).unwrap().is_zero()));
    }

    #[test]
    fn su2_constants() {
        let rs = build_root_system(GroupFamily::a(1).unwrap()).unwrap();
        // brute-force sum over the single positive root e1 - e2
        let eta = linalg::scale(&linalg::rat(1, 2), &rs.positive_roots[0]);
        assert_eq!(rs.weyl_vector, eta);
        assert_eq!(rs.weyl_vector, qvec(&[(1, 2), (-1, 2)]));
        assert_eq!((rs.b_root, rs.scale, rs.b_table, rs.r0), (4, 2, 16, 2));
    }

    #[test]
    fn f4_weights_match_the_standard_realisation() {
        let rs = build_root_system(GroupFamily::f4()).unwrap();
        assert_eq!(
            rs.fundamental_weights,
            vec![
                ivec(&[1, 1, 0, 0]),
                ivec(&[2, 1, 1, 0]),
                qvec(&[(3, 2), (1, 2), (1, 2), (1, 2)]),
                ivec(&[1, 0, 0, 0]),
            ]
        );
        assert_eq!(rs.weyl_vector, qvec(&[(11, 2), (5, 2), (3, 2), (1, 2)]));
        assert_eq!(rs.highest_root, ivec(&[1, 1, 0, 0]));
        assert_eq!((rs.b_root, rs.b_table, rs.r0), (18, 72, 156));
    }

    #[test]
    fn e8_weights_match_the_standard_realisation() {
        let rs = build_root_system(GroupFamily::e8()).unwrap();
        assert_eq!(rs.fundamental_weights[0], ivec(&[0, 0, 0, 0, 0, 0, 0, 2]));
        assert_eq!(
            rs.fundamental_weights[2],
            qvec(&[(-1, 2), (1, 2), (1, 2), (1, 2), (1, 2), (1, 2), (1, 2), (7, 2)])
        );
        assert_eq!(rs.fundamental_weights[7], ivec(&[0, 0, 0, 0, 0, 0, 1, 1]));
        assert_eq!(rs.weyl_vector, ivec(&[0, 1, 2, 3, 4, 5, 6, 23]));
        assert_eq!(rs.highest_root, ivec(&[0, 0, 0, 0, 0, 0, 1, 1]));
        assert_eq!((rs.b_root, rs.scale, rs.b_table, rs.r0), (60, 2, 240, 2480));
    }

    #[test]
    fn classical_highest_roots() {
        let hr = |f| build_root_system(f).unwrap().highest_root;
        assert_eq!(hr(GroupFamily::a(3).unwrap()), ivec(&[1, 0, 0, -1]));
        assert_eq!(hr(GroupFamily::b(3).unwrap()), ivec(&[1, 1, 0]));
        assert_eq!(hr(GroupFamily::c(3).unwrap()), ivec(&[2, 0, 0]));
        assert_eq!(hr(GroupFamily::d(5).unwrap()), ivec(&[1, 1, 0, 0, 0]));
    }

    #[test]
    fn c3_matrix_row_sums() {
        let a = matrix_a(GroupFamily::c(3).unwrap());
        assert_eq!(linalg::int_mat_vec(&a, &[1, 1, 1]).unwrap(), vec![3, 2, 1]);
    }

    #[test]
    fn explicit_exceptional_matrices() {
        assert_eq!(matrix_a(GroupFamily::g2()), vec![vec![1, 1], vec![1, 2], vec![0, 1]]);
        assert_eq!(
            matrix_a(GroupFamily::f4()),
            vec![vec![2, 4, 3, 2], vec![2, 2, 1, 0], vec![0, 2, 1, 0], vec![0, 0, 1, 0]]
        );
    }

    #[test]
    fn positive_roots_are_sorted() {
        let rs = build_root_system(GroupFamily::b(3).unwrap()).unwrap();
        assert!(rs.positive_roots.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn json_record_has_stable_key_order() {
        let json = serde_json::to_string(&RootSystemRecord::from(&g2())).unwrap();
        let keys = [
            "\"family\"", "\"rank\"", "\"ambient_dim\"", "\"roots\"", "\"b_root\"", "\"c\"",
            "\"b_table\"", "\"R0\"", "\"matrix_A\"", "\"group_dim\"",
        ];
        let positions: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert!(json.contains("[[-2,1],[1,1],[1,1]]"));
    }
}
