//! Strichartz regularity exponents in exact rational arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{int, rat, Rational};
use crate::root_systems::GroupFamily;

/// A Lebesgue exponent in `[1, inf]`; `1/inf = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(Rational),
    Infinite,
}

impl Exponent {
    pub fn integer(n: i64) -> Self {
        Exponent::Finite(int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Exponent::Finite(rat(num, den))
    }

    pub fn reciprocal(&self) -> Rational {
        match self {
            Exponent::Finite(q) => Rational::one() / q,
            Exponent::Infinite => Rational::zero(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinite)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Exponent::Finite(q) => Some(q),
            Exponent::Infinite => None,
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => a.cmp(b),
            (Exponent::Finite(_), Exponent::Infinite) => Ordering::Less,
            (Exponent::Infinite, Exponent::Finite(_)) => Ordering::Greater,
            (Exponent::Infinite, Exponent::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(q) => write!(f, "{q}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts integers, `num/den` and `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
            return Ok(Exponent::Infinite);
        }
        parse_rational(t).map(Exponent::Finite)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses `n` or `num/den`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidExponent(format!("'{s}' is not a rational number"));
    let (num, den) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Comma-separated list of exponents, e.g. `2,5/2,inf`.
pub fn parse_grid(s: &str) -> Result<Vec<Exponent>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

fn two() -> Rational {
    int(2)
}

fn half() -> Rational {
    rat(1, 2)
}

/// `q* = 2(d+1)/(d-1)`.
pub fn breakpoint(d: u64) -> Result<Rational> {
    if d < 2 {
        return Err(Error::InvalidExponent(format!("dimension d = {d} must be at least 2")));
    }
    let d = d as i64;
    Ok(rat(2 * (d + 1), d - 1))
}

/// Spectral projection exponent:
/// `(d-1)/2 (1/2 - 1/q)` up to `q*`, then `(d-1)/2 - d/q`.
pub fn sigma(d: u64, q: &Exponent) -> Result<Rational> {
    let q_star = breakpoint(d)?;
    check_at_least_two("q", q)?;
    let di = int(d as i64);
    let lead = (&di - Rational::one()) / two();
    let inv = q.reciprocal();
    let first_regime = match q {
        Exponent::Finite(q) => *q <= q_star,
        Exponent::Infinite => false,
    };
    Ok(if first_regime {
        lead * (half() - inv)
    } else {
        lead - di * inv
    })
}

fn check_at_least_two(name: &str, x: &Exponent) -> Result<()> {
    if let Exponent::Finite(v) = x {
        if *v < two() {
            return Err(Error::InvalidExponent(format!("{name} = {v} must be at least 2")));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Strictness {
    /// `s >= s0R` suffices.
    #[serde(rename = "GE")]
    Ge,
    /// `s > s0R` is required.
    #[serde(rename = "GT")]
    Gt,
}

impl fmt::Display for Strictness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strictness::Ge => ">=",
            Strictness::Gt => ">",
        })
    }
}

fn ser_rational<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentProfile {
    #[serde(serialize_with = "ser_family")]
    pub family: GroupFamily,
    pub d: u64,
    pub m: u64,
    #[serde(serialize_with = "ser_rational")]
    pub p: Rational,
    pub q: Exponent,
    #[serde(serialize_with = "ser_rational")]
    pub alpha: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub sigma_q: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub s0: Rational,
    #[serde(rename = "s0R", serialize_with = "ser_rational")]
    pub s0r: Rational,
    pub strictness: Strictness,
}

fn ser_family<S: Serializer>(f: &GroupFamily, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(f)
}

impl ExponentProfile {
    /// `s0R - s0`.
    pub fn gap(&self) -> Rational {
        &self.s0r - &self.s0
    }

    /// Whether `q <= p`, the admissibility window of the classical estimate.
    pub fn is_classical(&self) -> bool {
        match &self.q {
            Exponent::Finite(q) => *q <= self.p,
            Exponent::Infinite => false,
        }
    }
}

fn check_rank(family: GroupFamily) -> Result<()> {
    if family.rank() < 2 {
        return Err(Error::UnsupportedRank(family.rank()));
    }
    Ok(())
}

/// All exponents for one group and one pair `(p, q)`.
///
/// Rank one is rejected: the estimates need `l >= 2` (for `SU(2) = Spin(3)`
/// the sphere `S^3` results apply instead).
pub fn profile(family: GroupFamily, p: &Rational, q: &Exponent) -> Result<ExponentProfile> {
    check_rank(family)?;
    if *p < two() {
        return Err(Error::InvalidExponent(format!("p = {p} must be at least 2")));
    }
    let d = family.group_dim() as u64;
    let m = family.m_spec() as u64;
    let sigma_q = sigma(d, q)?;
    let inv_p = Rational::one() / p;
    let inv_q = q.reciprocal();
    let di = int(d as i64);
    let s0 = &di / two() - two() * &inv_p - &di * inv_q;
    let s0r = int(m as i64) / two() - two() * &inv_p + &sigma_q;
    Ok(ExponentProfile {
        family,
        d,
        m,
        p: p.clone(),
        q: q.clone(),
        alpha: half() - inv_p,
        sigma_q,
        s0,
        s0r,
        strictness: if m >= 5 { Strictness::Ge } else { Strictness::Gt },
    })
}

/// The closed form of `s0R - s0` in each regime of `sigma`.
pub fn expected_gap(d: u64, m: u64, q: &Exponent) -> Result<Rational> {
    let q_star = breakpoint(d)?;
    check_at_least_two("q", q)?;
    let mi = int(m as i64);
    let first_regime = q.finite().is_some_and(|q| *q <= q_star);
    Ok(if first_regime {
        mi / two() - int(d as i64 + 1) / two() * (half() - q.reciprocal())
    } else {
        (mi - Rational::one()) / two()
    })
}

/// `(p1, p2) = (2 + 8/l, 2 + 4(d + l)/(d l))`.
pub fn zhang_thresholds(family: GroupFamily) -> Result<(Rational, Rational)> {
    check_rank(family)?;
    let l = family.rank() as i64;
    let d = family.group_dim() as i64;
    Ok((two() + rat(8, l), two() + rat(4 * (d + l), d * l)))
}

/// The default grid: `p in {2, 5/2, 3, 4, 10}`, `q in {2, 3, q*, 10, inf}`.
pub fn default_grid(d: u64) -> Result<(Vec<Rational>, Vec<Exponent>)> {
    let p = vec![int(2), rat(5, 2), int(3), int(4), int(10)];
    let q = vec![
        Exponent::integer(2),
        Exponent::integer(3),
        Exponent::Finite(breakpoint(d)?),
        Exponent::integer(10),
        Exponent::Infinite,
    ];
    Ok((p, q))
}

/// Profiles over a `(p, q)` grid in row-major order (`p` outer).
pub fn profile_grid(
    family: GroupFamily,
    p_grid: &[Rational],
    q_grid: &[Exponent],
) -> Result<Vec<ExponentProfile>> {
    let mut out = Vec::with_capacity(p_grid.len() * q_grid.len());
    for p in p_grid {
        for q in q_grid {
            out.push(profile(family, p, q)?);
        }
    }
    Ok(out)
}

/// Checks the gap identity and `s0R >= s0` for one profile.
pub fn check_identities(pr: &ExponentProfile) -> Result<()> {
    let expected = expected_gap(pr.d, pr.m, &pr.q)?;
    let gap = pr.gap();
    if gap != expected {
        return Err(Error::InternalInconsistency(format!(
            "{} p = {} q = {}: s0R - s0 = {gap}, expected {expected}",
            pr.family, pr.p, pr.q
        )));
    }
    if gap.is_negative() {
        return Err(Error::InternalInconsistency(format!(
            "{} p = {} q = {}: s0R < s0",
            pr.family, pr.p, pr.q
        )));
    }
    Ok(())
}

/// CSV header for [`profile_row`].
pub const CSV_HEADER: &str = "family,rank,d,m,p,q,alpha,sigma_q,s0,s0R,strictness";

pub fn profile_row(pr: &ExponentProfile) -> String {
    let strict = match pr.strictness {
        Strictness::Ge => "GE",
        Strictness::Gt => "GT",
    };
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        pr.family.label(),
        pr.family.rank(),
        pr.d,
        pr.m,
        pr.p,
        pr.q,
        pr.alpha,
        pr.sigma_q,
        pr.s0,
        pr.s0r,
        strict
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(8, &Exponent::integer(2)).unwrap(), int(0));
        // breakpoint for d = 3 is 4; both branches give 1/4
        assert_eq!(breakpoint(3).unwrap(), int(4));
        assert_eq!(sigma(3, &Exponent::integer(4)).unwrap(), rat(1, 4));
        assert_eq!(int(1) - int(3) * rat(1, 4), rat(1, 4));
        assert_eq!(sigma(8, &Exponent::Infinite).unwrap(), rat(7, 2));
        assert!(matches!(
            sigma(8, &Exponent::ratio(3, 2)),
            Err(Error::InvalidExponent(_))
        ));
    }

    #[test]
    fn su3_and_g2_profiles() {
        let su3 = profile(GroupFamily::a(2).unwrap(), &int(2), &Exponent::integer(2)).unwrap();
        assert_eq!((su3.d, su3.m), (8, 3));
        assert_eq!(su3.alpha, int(0));
        assert_eq!(su3.sigma_q, int(0));
        assert_eq!(su3.s0, int(-1));
        assert_eq!(su3.s0r, rat(1, 2));
        assert_eq!(su3.strictness, Strictness::Gt);

        let g2 = profile(GroupFamily::g2(), &int(2), &Exponent::integer(2)).unwrap();
        assert_eq!(g2.s0r, rat(1, 2));
        assert_eq!(g2.s0, int(-1));
    }

    #[test]
    fn strictness_follows_m() {
        let e8 = profile(GroupFamily::e8(), &int(4), &Exponent::integer(2)).unwrap();
        assert_eq!(e8.strictness, Strictness::Ge);
        let f4 = profile(GroupFamily::f4(), &int(4), &Exponent::integer(2)).unwrap();
        assert_eq!(f4.strictness, Strictness::Gt);
    }

    #[test]
    fn rank_one_and_small_p_are_rejected() {
        let su2 = GroupFamily::a(1).unwrap();
        assert_eq!(
            profile(su2, &int(2), &Exponent::integer(2)).unwrap_err(),
            Error::UnsupportedRank(1)
        );
        assert_eq!(zhang_thresholds(su2).unwrap_err(), Error::UnsupportedRank(1));
        assert!(matches!(
            profile(GroupFamily::g2(), &rat(3, 2), &Exponent::integer(2)),
            Err(Error::InvalidExponent(_))
        ));
    }

    #[test]
    fn thresholds() {
        let (p1, p2) = zhang_thresholds(GroupFamily::a(2).unwrap()).unwrap();
        assert_eq!(p1, int(6));
        assert_eq!(p2, rat(9, 2));
    }

    #[test]
    fn parsing() {
        assert_eq!("5/2".parse::<Exponent>().unwrap(), Exponent::ratio(5, 2));
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinite);
        assert_eq!("4".parse::<Exponent>().unwrap(), Exponent::integer(4));
        assert!("1/0".parse::<Exponent>().is_err());
        assert!("x".parse::<Exponent>().is_err());
        assert_eq!(parse_grid("2, 5/2,inf").unwrap().len(), 3);
    }

    #[test]
    fn default_grid_identities() {
        let f = GroupFamily::b(3).unwrap();
        let (p, q) = default_grid(f.group_dim() as u64).unwrap();
        for pr in profile_grid(f, &p, &q).unwrap() {
            check_identities(&pr).unwrap();
        }
    }

    #[test]
    fn json_uses_rational_strings() {
        let pr = profile(GroupFamily::g2(), &rat(5, 2), &Exponent::Infinite).unwrap();
        let v = serde_json::to_value(&pr).unwrap();
        assert_eq!(v["p"], "5/2");
        assert_eq!(v["q"], "inf");
        assert_eq!(v["strictness"], "GT");
        assert_eq!(v["family"], "G2");
    }
}
