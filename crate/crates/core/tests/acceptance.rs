//! Acceptance criteria 1 to 7. Each criterion prints one PASS/FAIL line;
//! run with `cargo test -p liespec --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use liespec::exponents::{check_identities, default_grid, profile_grid};
use liespec::fourier_verify::{run_suite, Suite, SuiteConfig, DEFAULT_SEED};
use liespec::spectrum::{
    eigenvalue_closed_form, eigenvalue_from_matrix, eigenvalue_root_form, enumerate_spectrum,
    EnumerationConfig, HighestWeight,
};
use liespec::sum_of_squares::{
    count_brute, count_divisor_formula, count_theta, growth_report, Variant,
    THREE_SQUARES_ENVELOPE,
};
use liespec::{build_root_system, GroupFamily};
use num_bigint::BigUint;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `(b, R0)` straight from the table of constants.
fn table_one(family: GroupFamily) -> (i64, i64) {
    let l = family.rank() as i64;
    match family.label() {
        liespec::FamilyLabel::A => (
            2 * (l + 1).pow(3),
            (1..=l + 1)
                .map(|k| (l - 2 * (k - 1)).pow(2) * (l + 1).pow(2))
                .sum::<i64>()
                / 4,
        ),
        liespec::FamilyLabel::B => (16 * l - 8, (1..=l).map(|k| (2 * (l - k) + 1).pow(2)).sum()),
        liespec::FamilyLabel::C => (4 * (l + 1), l * (l + 1) * (2 * l + 1) / 6),
        liespec::FamilyLabel::D => (16 * l - 16, (1..=l).map(|k| (2 * (l - k)).pow(2)).sum()),
        liespec::FamilyLabel::E8 => (240, 2480),
        liespec::FamilyLabel::F4 => (72, 156),
        liespec::FamilyLabel::G2 => (24, 14),
    }
}

fn table_one_families() -> Vec<GroupFamily> {
    let mut out = Vec::new();
    out.extend((1..=6).map(|l| GroupFamily::a(l).unwrap()));
    out.extend((2..=6).map(|l| GroupFamily::b(l).unwrap()));
    out.extend((3..=6).map(|l| GroupFamily::c(l).unwrap()));
    out.extend((4..=6).map(|l| GroupFamily::d(l).unwrap()));
    out.extend([GroupFamily::e8(), GroupFamily::f4(), GroupFamily::g2()]);
    out
}

fn criterion_1() -> Outcome {
    let families = table_one_families();
    for &family in &families {
        let rs = build_root_system(family).map_err(|e| format!("{family}: {e}"))?;
        let expected = table_one(family);
        ensure((rs.b_table, rs.r0) == expected, || {
            format!("{family}: derived ({}, {}) vs table {expected:?}", rs.b_table, rs.r0)
        })?;
        ensure(rs.b_table == rs.scale * rs.scale * rs.b_root, || {
            format!("{family}: b_table != c^2 b_root")
        })?;
    }
    for (family, pair) in [
        (GroupFamily::g2(), (24, 14)),
        (GroupFamily::f4(), (72, 156)),
        (GroupFamily::e8(), (240, 2480)),
    ] {
        let rs = build_root_system(family).map_err(|e| e.to_string())?;
        ensure((rs.b_table, rs.r0) == pair, || format!("{family}: fixed value"))?;
    }
    Ok(format!("{} family/rank pairs", families.len()))
}

fn cube(l: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..l {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn criterion_2() -> Outcome {
    let mut cases: Vec<(GroupFamily, i64)> = Vec::new();
    cases.extend((2..=4).map(|l| (GroupFamily::a(l).unwrap(), 4)));
    cases.extend((2..=4).map(|l| (GroupFamily::b(l).unwrap(), 4)));
    cases.extend((3..=4).map(|l| (GroupFamily::c(l).unwrap(), 4)));
    cases.extend((4..=5).map(|l| (GroupFamily::d(l).unwrap(), 4)));
    cases.extend([
        (GroupFamily::f4(), 4),
        (GroupFamily::g2(), 4),
        (GroupFamily::e8(), 2),
    ]);
    let mut checked = 0usize;
    for (family, b) in cases {
        let rs = build_root_system(family).map_err(|e| e.to_string())?;
        for nu in cube(rs.rank(), b) {
            let w = HighestWeight::new(nu.clone()).map_err(|e| e.to_string())?;
            let closed = eigenvalue_closed_form(&rs, &w).map_err(|e| e.to_string())?;
            let root = eigenvalue_root_form(&rs, &w).map_err(|e| e.to_string())?;
            let matrix = eigenvalue_from_matrix(&rs, &w).map_err(|e| e.to_string())?;
            ensure(closed == root && root == matrix, || {
                format!("{family} nu = {nu:?}: closed {closed}, root {root}, matrix {matrix}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} weights, all three formulas equal"))
}

fn criterion_3() -> Outcome {
    const R_MAX: u64 = 2000;
    let families = [
        GroupFamily::a(2).unwrap(),
        GroupFamily::b(2).unwrap(),
        GroupFamily::c(3).unwrap(),
        GroupFamily::d(4).unwrap(),
        GroupFamily::g2(),
        GroupFamily::f4(),
    ];
    let config = EnumerationConfig {
        with_dimensions: false,
        ..Default::default()
    };
    let mut summary = Vec::new();
    for family in families {
        let rs = build_root_system(family).map_err(|e| e.to_string())?;
        let m = rs.matrix_a.len();
        let table = enumerate_spectrum(&rs, R_MAX, &config).map_err(|e| e.to_string())?;
        let counts = count_theta(m, R_MAX + rs.r0 as u64, Variant::AllIntegers)
            .map_err(|e| e.to_string())?;
        let mut tightest = 0.0f64;
        for rec in &table.records {
            let bound = &counts.counts[(rec.r + rs.r0 as u64) as usize];
            ensure(BigUint::from(rec.n_r) <= *bound, || {
                format!("{family} R = {}: N_R = {} > r_{m}(R + R0) = {bound}", rec.r, rec.n_r)
            })?;
            let bound_f: f64 = bound.to_string().parse().unwrap_or(f64::INFINITY);
            tightest = tightest.max(rec.n_r as f64 / bound_f);
        }
        summary.push(format!("{} max N_R/r = {tightest:.3}", family.group_name()));
    }
    Ok(summary.join(", "))
}

fn criterion_4() -> Outcome {
    for s in 1..=6 {
        for variant in Variant::ALL {
            let brute = count_brute(s, 2000, variant).map_err(|e| e.to_string())?;
            let theta = count_theta(s, 2000, variant).map_err(|e| e.to_string())?;
            if let Some(r) = brute.first_mismatch(&theta) {
                return Err(format!("s = {s} {variant}: brute and theta differ at R = {r}"));
            }
        }
    }
    for s in [2, 4] {
        let divisor = count_divisor_formula(s, 10_000).map_err(|e| e.to_string())?;
        let brute = count_brute(s, 10_000, Variant::AllIntegers).map_err(|e| e.to_string())?;
        let theta = count_theta(s, 10_000, Variant::AllIntegers).map_err(|e| e.to_string())?;
        for (name, other) in [("brute", &brute), ("theta", &theta)] {
            if let Some(r) = divisor.first_mismatch(other) {
                return Err(format!("s = {s}: divisor and {name} differ at R = {r}"));
            }
        }
    }
    let r2 = count_divisor_formula(2, 25).map_err(|e| e.to_string())?;
    let r4 = count_divisor_formula(4, 12).map_err(|e| e.to_string())?;
    for (got, want, what) in [
        (&r2.counts[25], 12u32, "r2(25)"),
        (&r4.counts[1], 8, "r4(1)"),
        (&r4.counts[12], 96, "r4(12)"),
    ] {
        ensure(*got == BigUint::from(want), || format!("{what} = {got}, expected {want}"))?;
    }
    Ok("s <= 6 up to 2000; s = 2, 4 up to 10000; fixed cases".into())
}

fn criterion_5() -> Outcome {
    let mut summary = Vec::new();
    for s in [5, 6] {
        let r = growth_report(s, 100, 10_000).map_err(|e| e.to_string())?;
        ensure(
            r.min_ratio > 0.0 && r.min_ratio.is_finite() && r.max_ratio.is_finite(),
            || format!("s = {s}: ratios {} .. {}", r.min_ratio, r.max_ratio),
        )?;
        ensure(r.zero_counts.is_empty(), || format!("s = {s}: zero counts"))?;
        summary.push(format!("s={s} [{:.3}, {:.3}]", r.min_ratio, r.max_ratio));
    }
    let r3 = growth_report(3, 4, 10_000).map_err(|e| e.to_string())?;
    ensure(r3.max_ratio < THREE_SQUARES_ENVELOPE, || {
        format!("s = 3: {} >= {THREE_SQUARES_ENVELOPE}", r3.max_ratio)
    })?;
    summary.push(format!(
        "s=3 max {:.4} < {THREE_SQUARES_ENVELOPE} ({} zero counts)",
        r3.max_ratio,
        r3.zero_counts.len()
    ));
    Ok(summary.join(", "))
}

fn criterion_6() -> Outcome {
    let mut families = Vec::new();
    families.extend((2..=8).map(|l| GroupFamily::a(l).unwrap()));
    families.extend((2..=8).map(|l| GroupFamily::b(l).unwrap()));
    families.extend((3..=8).map(|l| GroupFamily::c(l).unwrap()));
    families.extend((4..=8).map(|l| GroupFamily::d(l).unwrap()));
    families.extend([GroupFamily::e8(), GroupFamily::f4(), GroupFamily::g2()]);
    let mut checked = 0;
    for family in families {
        let (p, q) = default_grid(family.group_dim() as u64).map_err(|e| e.to_string())?;
        for pr in profile_grid(family, &p, &q).map_err(|e| e.to_string())? {
            check_identities(&pr).map_err(|e| e.to_string())?;
            checked += 1;
        }
    }
    Ok(format!("{checked} profiles, exact"))
}

fn criterion_7() -> Outcome {
    let mut summary = Vec::new();
    for (suite, samples) in [
        (Suite::Orthogonality, 1),
        (Suite::Parseval, 100),
        (Suite::Wainger, 200),
    ] {
        let cfg = SuiteConfig {
            samples,
            ..SuiteConfig::defaults(suite, DEFAULT_SEED)
        };
        let report = run_suite(suite, &cfg).map_err(|e| e.to_string())?;
        ensure(report.pass, || {
            format!("{suite}: error {:e} > {:e}", report.max_error, cfg.tolerance)
        })?;
        summary.push(format!("{suite} {:.1e} <= {:.0e}", report.max_error, cfg.tolerance));
    }
    Ok(summary.join(", "))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome, Duration); 7] = [
        ("constant table reproduction", criterion_1, Duration::from_secs(1)),
        ("triple-formula equivalence", criterion_2, Duration::from_secs(60)),
        ("N_R <= r_m(R + R0)", criterion_3, Duration::from_secs(300)),
        ("counting backends agree", criterion_4, Duration::MAX),
        ("growth envelopes", criterion_5, Duration::MAX),
        ("exponent identities", criterion_6, Duration::MAX),
        ("time-side verification", criterion_7, Duration::MAX),
    ];
    let mut failures = Vec::new();
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            }
            other => other,
        };
        match &outcome {
            Ok(detail) => println!("criterion {} PASS {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                println!("criterion {} FAIL {name}: {why} ({elapsed:.2?})", i + 1);
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
