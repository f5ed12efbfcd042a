//! Representation counts `r_s(R)` of integers as ordered sums of `s` squares.
//!
//! Three backends compute the same numbers independently: a direct lattice
//! enumeration, powers of the theta series, and the Jacobi divisor formulas
//! for two and four squares.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Tuples in `Z^s`; signs and zeros count as distinct.
    AllIntegers,
    /// Tuples of positive integers.
    PositiveOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    BruteForce,
    ThetaConvolution,
    DivisorFormula,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::AllIntegers, Variant::PositiveOnly];
}

impl Backend {
    pub const ALL: [Backend; 3] = [
        Backend::BruteForce,
        Backend::ThetaConvolution,
        Backend::DivisorFormula,
    ];

    /// Whether this backend can produce `(s, variant)`.
    pub fn supports(self, s: usize, variant: Variant) -> bool {
        match self {
            Backend::DivisorFormula => variant == Variant::AllIntegers && (s == 2 || s == 4),
            _ => s >= 1,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::AllIntegers => "all",
            Variant::PositiveOnly => "positive",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "all" | "all-integers" | "allintegers" => Ok(Variant::AllIntegers),
            "positive" | "positive-only" | "positiveonly" => Ok(Variant::PositiveOnly),
            _ => Err(Error::InvalidArgument(format!("unknown variant '{s}'"))),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::BruteForce => "brute",
            Backend::ThetaConvolution => "theta",
            Backend::DivisorFormula => "divisor",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "brute" | "brute-force" | "bruteforce" => Ok(Backend::BruteForce),
            "theta" | "theta-convolution" | "thetaconvolution" => Ok(Backend::ThetaConvolution),
            "divisor" | "divisor-formula" | "divisorformula" => Ok(Backend::DivisorFormula),
            _ => Err(Error::InvalidArgument(format!("unknown backend '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepCountTable {
    pub s: usize,
    pub variant: Variant,
    pub r_max: u64,
    /// `counts[R]` for `R = 0..=r_max`.
    pub counts: Vec<BigUint>,
    pub backend: Backend,
}

impl RepCountTable {
    pub fn get(&self, r: u64) -> Option<&BigUint> {
        usize::try_from(r).ok().and_then(|i| self.counts.get(i))
    }

    /// First `R` where two tables disagree, ignoring the backend label.
    pub fn first_mismatch(&self, other: &RepCountTable) -> Option<u64> {
        let n = self.counts.len().min(other.counts.len());
        (0..n)
            .find(|&i| self.counts[i] != other.counts[i])
            .map(|i| i as u64)
    }

    /// Largest `R <= r_max` with no representation.
    pub fn largest_zero(&self) -> Option<u64> {
        self.counts.iter().rposition(Zero::is_zero).map(|i| i as u64)
    }

    /// Header `s,variant,backend,R,count`, one row per `R`, LF endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,variant,backend,R,count\n");
        for (r, c) in self.counts.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                self.s, self.variant, self.backend, r, c
            ));
        }
        out
    }
}

/// Work limits for the counting backends.
#[derive(Debug, Clone, Copy)]
pub struct CountBudget {
    /// Search-tree nodes for the brute-force backend.
    pub brute_nodes: u64,
    /// Big-integer multiply-adds for the theta backend.
    pub theta_ops: u64,
}

impl Default for CountBudget {
    fn default() -> Self {
        CountBudget {
            brute_nodes: 500_000_000,
            theta_ops: 2_000_000_000,
        }
    }
}

fn check_s(s: usize) -> Result<()> {
    if s == 0 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    Ok(())
}

fn table_len(r_max: u64) -> Result<usize> {
    usize::try_from(r_max)
        .ok()
        .and_then(|n| n.checked_add(1))
        .ok_or_else(|| Error::ResourceLimit(format!("R_max = {r_max} is too large")))
}

pub fn count_brute(s: usize, r_max: u64, variant: Variant) -> Result<RepCountTable> {
    count_brute_with_budget(s, r_max, variant, CountBudget::default())
}

/// Enumerates non-increasing tuples `n_1 >= ... >= n_s >= lo` and weights each
/// by its number of distinct orderings (times `2^(nonzero entries)` for
/// [`Variant::AllIntegers`]).
pub fn count_brute_with_budget(
    s: usize,
    r_max: u64,
    variant: Variant,
    budget: CountBudget,
) -> Result<RepCountTable> {
    check_s(s)?;
    let len = table_len(r_max)?;
    let lo: u64 = match variant {
        Variant::AllIntegers => 0,
        Variant::PositiveOnly => 1,
    };
    let top = r_max.sqrt();
    let factorial: Vec<u128> = (0..=s as u128)
        .scan(1u128, |acc, k| {
            if k > 0 {
                *acc = acc.checked_mul(k)?;
            }
            Some(*acc)
        })
        .collect();
    if factorial.len() != s + 1 {
        return Err(Error::ResourceLimit(format!("s = {s} is too large")));
    }

    let visited = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let overflow = AtomicBool::new(false);
    let walker = BruteWalker {
        s,
        r_max,
        lo,
        signed: variant == Variant::AllIntegers,
        factorial: &factorial,
        budget: budget.brute_nodes,
        visited: &visited,
        exhausted: &exhausted,
        overflow: &overflow,
    };

    let totals = (lo..=top.max(lo))
        .into_par_iter()
        .filter(|&first| first * first <= r_max)
        .fold(
            || vec![0u128; len],
            |mut acc, first| {
                let mut tuple = Vec::with_capacity(s);
                tuple.push(first);
                walker.walk(&mut tuple, first * first, &mut acc);
                acc
            },
        )
        .reduce(
            || vec![0u128; len],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    match x.checked_add(y) {
                        Some(v) => *x = v,
                        None => overflow.store(true, Ordering::Relaxed),
                    }
                }
                a
            },
        );
    if exhausted.load(Ordering::Relaxed) {
        return Err(Error::ResourceLimit(format!(
            "brute-force count for s = {s}, R_max = {r_max} exceeded {} nodes",
            budget.brute_nodes
        )));
    }
    if overflow.load(Ordering::Relaxed) {
        return Err(Error::ResourceLimit(format!(
            "brute-force count for s = {s}, R_max = {r_max} overflows 128 bits"
        )));
    }
    Ok(RepCountTable {
        s,
        variant,
        r_max,
        counts: totals.into_iter().map(BigUint::from).collect(),
        backend: Backend::BruteForce,
    })
}

struct BruteWalker<'a> {
    s: usize,
    r_max: u64,
    lo: u64,
    signed: bool,
    factorial: &'a [u128],
    budget: u64,
    visited: &'a AtomicU64,
    exhausted: &'a AtomicBool,
    overflow: &'a AtomicBool,
}

impl BruteWalker<'_> {
    fn walk(&self, tuple: &mut Vec<u64>, sum: u64, acc: &mut [u128]) {
        if self.visited.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        if self.exhausted.load(Ordering::Relaxed) {
            return;
        }
        if tuple.len() == self.s {
            let weight = self.weight(tuple);
            let slot = &mut acc[sum as usize];
            match slot.checked_add(weight) {
                Some(v) => *slot = v,
                None => self.overflow.store(true, Ordering::Relaxed),
            }
            return;
        }
        let cap = *tuple.last().expect("walk starts with one entry");
        let room = self.r_max - sum;
        let hi = cap.min(room.sqrt());
        for x in self.lo..=hi {
            tuple.push(x);
            self.walk(tuple, sum + x * x, acc);
            tuple.pop();
        }
    }

    fn weight(&self, tuple: &[u64]) -> u128 {
        // distinct orderings of a sorted tuple: s! / prod(run lengths!)
        let mut w = self.factorial[self.s];
        let mut run = 1;
        for i in 1..=tuple.len() {
            if i < tuple.len() && tuple[i] == tuple[i - 1] {
                run += 1;
            } else {
                w /= self.factorial[run];
                run = 1;
            }
        }
        if self.signed {
            let nonzero = tuple.iter().filter(|&&x| x != 0).count() as u32;
            w <<= nonzero;
        }
        w
    }
}

/// Coefficients of the one-variable theta series truncated at `r_max`.
pub fn theta_series(r_max: u64, variant: Variant) -> Result<Vec<BigUint>> {
    let len = table_len(r_max)?;
    let mut theta = vec![BigUint::zero(); len];
    if variant == Variant::AllIntegers {
        theta[0] = BigUint::from(1u32);
    }
    let weight = match variant {
        Variant::AllIntegers => 2u32,
        Variant::PositiveOnly => 1u32,
    };
    let mut n = 1usize;
    while n * n < len {
        theta[n * n] = BigUint::from(weight);
        n += 1;
    }
    Ok(theta)
}

/// Cauchy product truncated to the length of `a`.
pub fn convolve(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let len = a.len();
    let support: Vec<(usize, &BigUint)> = b
        .iter()
        .enumerate()
        .take(len)
        .filter(|(_, x)| !x.is_zero())
        .collect();
    (0..len)
        .into_par_iter()
        .map(|r| {
            let mut total = BigUint::zero();
            for &(j, bj) in &support {
                if j > r {
                    break;
                }
                let ai = &a[r - j];
                if !ai.is_zero() {
                    total += ai * bj;
                }
            }
            total
        })
        .collect()
}

pub fn count_theta(s: usize, r_max: u64, variant: Variant) -> Result<RepCountTable> {
    count_theta_with_budget(s, r_max, variant, CountBudget::default())
}

/// `theta^s` by repeated truncated convolution with `theta`.
pub fn count_theta_with_budget(
    s: usize,
    r_max: u64,
    variant: Variant,
    budget: CountBudget,
) -> Result<RepCountTable> {
    check_s(s)?;
    let theta = theta_series(r_max, variant)?;
    let nonzero = theta.iter().filter(|x| !x.is_zero()).count() as u64;
    let ops = (s as u64 - 1)
        .saturating_mul(theta.len() as u64)
        .saturating_mul(nonzero);
    if ops > budget.theta_ops {
        return Err(Error::ResourceLimit(format!(
            "theta convolution for s = {s}, R_max = {r_max} needs about {ops} operations"
        )));
    }
    let mut counts = theta.clone();
    for _ in 1..s {
        counts = convolve(&counts, &theta);
    }
    Ok(RepCountTable {
        s,
        variant,
        r_max,
        counts,
        backend: Backend::ThetaConvolution,
    })
}

/// Jacobi's formulas `r_2 = 4 (d_1 - d_3)` and `r_4 = 8 sum_{d | R, 4 !| d} d`.
pub fn count_divisor_formula(s: usize, r_max: u64) -> Result<RepCountTable> {
    if s != 2 && s != 4 {
        return Err(Error::UnsupportedS(s));
    }
    let len = table_len(r_max)?;
    // divisor sieve
    let mut acc = vec![0i128; len];
    for d in 1..len {
        let contribution: i128 = match s {
            2 => match d % 4 {
                1 => 1,
                3 => -1,
                _ => 0,
            },
            _ => {
                if d % 4 == 0 {
                    0
                } else {
                    d as i128
                }
            }
        };
        if contribution == 0 {
            continue;
        }
        let mut multiple = d;
        while multiple < len {
            acc[multiple] += contribution;
            multiple += d;
        }
    }
    let factor: i128 = if s == 2 { 4 } else { 8 };
    let mut counts = Vec::with_capacity(len);
    for (r, v) in acc.into_iter().enumerate() {
        let value = if r == 0 { 1 } else { factor * v };
        let value = u128::try_from(value).map_err(|_| {
            Error::InternalInconsistency(format!("negative divisor sum at R = {r}"))
        })?;
        counts.push(BigUint::from(value));
    }
    Ok(RepCountTable {
        s,
        variant: Variant::AllIntegers,
        r_max,
        counts,
        backend: Backend::DivisorFormula,
    })
}

pub fn count(s: usize, r_max: u64, variant: Variant, backend: Backend) -> Result<RepCountTable> {
    match backend {
        Backend::BruteForce => count_brute(s, r_max, variant),
        Backend::ThetaConvolution => count_theta(s, r_max, variant),
        Backend::DivisorFormula => {
            if variant != Variant::AllIntegers {
                return Err(Error::InvalidArgument(
                    "the divisor formulas count all-integer tuples only".into(),
                ));
            }
            count_divisor_formula(s, r_max)
        }
    }
}

/// Observed growth of `r_s(R)` against the envelope for `s`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct GrowthReport {
    pub s: usize,
    pub r_lo: u64,
    pub r_hi: u64,
    /// Human-readable normaliser, e.g. `R^(3/2)`.
    pub normalizer: String,
    /// Smallest ratio over `R` with a nonzero count.
    pub min_ratio: f64,
    pub argmin: u64,
    pub max_ratio: f64,
    pub argmax: u64,
    /// `R` in range with `r_s(R) = 0`, excluded from `min_ratio`.
    pub zero_counts: Vec<u64>,
}

/// Fixed upper envelope for the three-square ratio
/// `r_3(R) / (sqrt(R) log(4R) log log(4R))` on `[4, 10^4]`, frozen from a
/// reference run (observed maximum 3.2654, at R = 5).
pub const THREE_SQUARES_ENVELOPE: f64 = 3.27;

fn normalizer(s: usize, r: f64) -> f64 {
    match s {
        3 => {
            let x = 4.0 * r;
            r.sqrt() * x.ln() * x.ln().ln()
        }
        4 => r * r.ln().ln(),
        _ => r.powf((s as f64 - 2.0) / 2.0),
    }
}

pub fn growth_report(s: usize, r_lo: u64, r_hi: u64) -> Result<GrowthReport> {
    let floor = match s {
        0..=2 => {
            return Err(Error::InvalidArgument(format!(
                "growth envelopes are defined for s >= 3, got {s}"
            )))
        }
        3 => 4,
        4 => 3,
        _ => 2,
    };
    if r_lo < floor || r_hi < r_lo {
        return Err(Error::InvalidArgument(format!(
            "growth range [{r_lo}, {r_hi}] must satisfy {floor} <= R_lo <= R_hi for s = {s}"
        )));
    }
    let table = count_theta(s, r_hi, Variant::AllIntegers)?;
    let mut report = GrowthReport {
        s,
        r_lo,
        r_hi,
        normalizer: match s {
            3 => "sqrt(R) log(4R) log(log(4R))".to_string(),
            4 => "R log(log(R))".to_string(),
            _ if s % 2 == 0 => format!("R^{}", (s - 2) / 2),
            _ => format!("R^({}/2)", s - 2),
        },
        min_ratio: f64::INFINITY,
        argmin: r_lo,
        max_ratio: 0.0,
        argmax: r_lo,
        zero_counts: Vec::new(),
    };
    for r in r_lo..=r_hi {
        let c = &table.counts[r as usize];
        if c.is_zero() {
            report.zero_counts.push(r);
            continue;
        }
        let ratio = c.to_f64().unwrap_or(f64::INFINITY) / normalizer(s, r as f64);
        if ratio < report.min_ratio {
            report.min_ratio = ratio;
            report.argmin = r;
        }
        if ratio > report.max_ratio {
            report.max_ratio = ratio;
            report.argmax = r;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn brute_force_examples() {
        let t = count_brute(2, 25, Variant::AllIntegers).unwrap();
        assert_eq!(t.counts[25], n(12));
        assert_eq!(t.counts[0], n(1));
        assert_eq!(count_brute(4, 1, Variant::AllIntegers).unwrap().counts[1], n(8));
        let p = count_brute(2, 25, Variant::PositiveOnly).unwrap();
        // 25 = 9 + 16 = 16 + 9
        assert_eq!(p.counts[25], n(2));
        assert_eq!(p.counts[0], n(0));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(count_theta(3, 9, Variant::AllIntegers).unwrap().counts[9], n(30));
        let one = count_theta(1, 50, Variant::AllIntegers).unwrap();
        for (r, c) in one.counts.iter().enumerate() {
            let root = (r as u64).sqrt();
            let expected = if r == 0 {
                1
            } else if root * root == r as u64 {
                2
            } else {
                0
            };
            assert_eq!(*c, n(expected), "R = {r}");
        }
    }

    #[test]
    fn divisor_examples() {
        let r2 = count_divisor_formula(2, 25).unwrap();
        assert_eq!(r2.counts[25], n(12));
        assert_eq!(r2.counts[2], n(4));
        assert_eq!(r2.counts[3], n(0));
        let r4 = count_divisor_formula(4, 12).unwrap();
        assert_eq!(r4.counts[12], n(96));
        assert_eq!(r4.counts[1], n(8));
        assert_eq!(count_divisor_formula(3, 10).unwrap_err(), Error::UnsupportedS(3));
    }

    #[test]
    fn backends_agree_on_small_ranges() {
        for s in 1..=5 {
            for variant in Variant::ALL {
                let a = count_brute(s, 300, variant).unwrap();
                let b = count_theta(s, 300, variant).unwrap();
                assert_eq!(a.first_mismatch(&b), None, "s = {s}, {variant}");
            }
        }
    }

    #[test]
    fn budgets_are_enforced() {
        let tiny = CountBudget {
            brute_nodes: 5,
            theta_ops: 5,
        };
        assert!(matches!(
            count_brute_with_budget(4, 1000, Variant::AllIntegers, tiny),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(
            count_theta_with_budget(4, 1000, Variant::AllIntegers, tiny),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn three_square_obstruction_is_flagged() {
        let report = growth_report(3, 4, 200).unwrap();
        // 4^a (8b + 7)
        for r in [7u64, 15, 23, 28, 60, 112] {
            assert!(report.zero_counts.contains(&r), "R = {r}");
        }
        assert!(report.max_ratio < THREE_SQUARES_ENVELOPE);
    }

    #[test]
    fn growth_range_validation() {
        assert!(growth_report(3, 3, 10).is_err());
        assert!(growth_report(4, 2, 10).is_err());
        assert!(growth_report(2, 10, 20).is_err());
        assert!(growth_report(5, 20, 10).is_err());
    }

    #[test]
    fn csv_rows() {
        let t = count_divisor_formula(2, 2).unwrap();
        assert_eq!(
            t.to_csv(),
            "s,variant,backend,R,count\n2,all,divisor,0,1\n2,all,divisor,1,4\n2,all,divisor,2,4\n"
        );
    }

    #[test]
    fn variant_and_backend_parse() {
        assert_eq!("all".parse::<Variant>().unwrap(), Variant::AllIntegers);
        assert_eq!("positive".parse::<Variant>().unwrap(), Variant::PositiveOnly);
        assert_eq!("theta".parse::<Backend>().unwrap(), Backend::ThetaConvolution);
        assert!("fft".parse::<Backend>().is_err());
    }
}
