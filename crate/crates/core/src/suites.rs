//! Named verification suites shared by the command-line front end and the
//! acceptance tests: witness cross-multiplication, oracle equivalence over
//! prime fields, and the genus-one Weil sanity harness.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::groups::AbelianGroup;
use crate::realize::{
    a1_brute_feasible, brute_fixed_sym_a1, brute_fixed_sym_p1, classical_sym_counts,
    count_curve_points, p1_brute_feasible, p1_table, realize, P1Scenario,
};
use crate::series::PowerSeries;
use crate::zeta::{
    sym_affine_line, sym_affine_space, sym_curve_class, zeta_affine_line, zeta_affine_space,
    zeta_curve, CurveSpec,
};

/// Outcome of one verification suite.
#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn check(&mut self, label: impl FnOnce() -> String, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.failures.push(label());
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.passed += other.passed;
        self.failed += other.failed;
        self.failures.extend(other.failures);
    }

    pub fn summary(&self) -> String {
        format!("{} passed, {} failed", self.passed, self.failed)
    }
}

/// Cross-multiplication checks at the given truncation order: the affine
/// line witness for every character, the affine space witness for every
/// character multiset of size <= 2, and the curve witness against the
/// symmetric-power classes for genus 0..=2.
pub fn cross_suite(group: &AbelianGroup, order: u32) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let chars = group.characters();

    for chi in &chars {
        let w = zeta_affine_line(chi, group)?;
        let f = series_of_sym_line(chi, group, order)?;
        report.check(
            || format!("a1 cross-multiplication for chi={:?}", chi.residues()),
            w.check(&f),
        );
    }

    for (a, chi_a) in chars.iter().enumerate() {
        for chi_b in &chars[a..] {
            let pair = [chi_a.clone(), chi_b.clone()];
            let w = zeta_affine_space(&pair, group)?;
            let f = PowerSeries::tabulate(order, |n| {
                sym_affine_space(n, &pair, group).expect("characters are valid")
            });
            report.check(
                || {
                    format!(
                        "ak cross-multiplication for chis={:?},{:?}",
                        chi_a.residues(),
                        chi_b.residues()
                    )
                },
                w.check(&f),
            );
        }
    }

    for genus in 0..=2u32 {
        let spec = CurveSpec::new(genus, group.clone());
        let w = zeta_curve(&spec);
        let f = w.expand(order);
        let ok = (0..=order).all(|n| f.coeff(n) == &sym_curve_class(n, &spec));
        report.check(|| format!("curve witness consistency at genus {genus}"), ok);
    }

    Ok(report)
}

/// The series whose n-th coefficient is `[Sym^n(A^1, chi)]`.
pub fn series_of_sym_line(
    chi: &crate::groups::Character,
    group: &AbelianGroup,
    order: u32,
) -> Result<PowerSeries> {
    let coeffs = (0..=order)
        .map(|n| sym_affine_line(n, chi, group))
        .collect::<Result<Vec<_>>>()?;
    PowerSeries::from_coeffs(coeffs)
}

/// Oracle equivalence on the affine line: for every character and group
/// element, the realized `[Sym^n(A^1, chi)]` equals the brute-force count
/// of fixed monic polynomials, for all `n <= nmax`.
pub fn a1_oracle_suite(q: u64, r: u64, nmax: u32) -> Result<CheckReport> {
    if !a1_brute_feasible(q, nmax) {
        return Err(Error::TooLarge(format!(
            "q^n = {q}^{nmax} exceeds the enumeration bound"
        )));
    }
    let sc = P1Scenario::new(q, r)?;
    let spec = CurveSpec::new(0, sc.group().clone());
    let mut report = CheckReport::default();
    for g in sc.group().elements() {
        let table = p1_table(&sc, &g, &spec, nmax)?;
        for chi in sc.group().characters() {
            for n in 0..=nmax {
                let realized = realize(&sym_affine_line(n, &chi, sc.group())?, &table)?;
                let brute = BigInt::from(brute_fixed_sym_a1(n, &chi, &sc, &g)?);
                report.check(
                    || {
                        format!(
                            "a1 oracle at q={q}, r={r}, chi={:?}, g={:?}, n={n}",
                            chi.residues(),
                            g.residues()
                        )
                    },
                    realized == brute,
                );
            }
        }
    }
    Ok(report)
}

/// Oracle equivalence on the curve: for every group element, the realized
/// `[Sym^n(C, sigma)]` for the genus-zero scenario equals the brute-force
/// count of fixed points of `P^n`, for all `n <= nmax`.
pub fn p1_oracle_suite(q: u64, r: u64, nmax: u32) -> Result<CheckReport> {
    if !p1_brute_feasible(q, nmax) {
        return Err(Error::TooLarge(format!(
            "#P^{nmax}(F_{q}) exceeds the enumeration bound"
        )));
    }
    let sc = P1Scenario::new(q, r)?;
    let spec = CurveSpec::new(0, sc.group().clone());
    let mut report = CheckReport::default();
    for g in sc.group().elements() {
        let table = p1_table(&sc, &g, &spec, nmax.max(r as u32))?;
        for n in 0..=nmax {
            let realized = realize(&sym_curve_class(n, &spec), &table)?;
            let brute = BigInt::from(brute_fixed_sym_p1(n, &sc, &g)?);
            report.check(
                || format!("p1 oracle at q={q}, r={r}, g={:?}, n={n}", g.residues()),
                realized == brute,
            );
        }
    }
    Ok(report)
}

/// Genus-one sanity harness for `y^2 = x^3 + ax + b` over `F_p`: the
/// symmetric-power counts must satisfy the Weil recurrence
/// `c_n = (1+p) c_{n-1} - p c_{n-2}` and the divisor-counting closed form
/// `c_n = N_1 (p^n - 1)/(p - 1)`, and `N_1` must satisfy the Hasse bound.
pub fn weil_suite(p: u64, a: u64, b: u64, nmax: u32) -> Result<CheckReport> {
    let nmax = nmax.max(2) as usize;
    let counts = (1..=nmax as u32)
        .map(|s| count_curve_points(a, b, p, s))
        .collect::<Result<Vec<_>>>()?;
    let c = classical_sym_counts(&counts, nmax)?;
    let mut report = CheckReport::default();

    let n1 = counts[0].clone();
    let trace: BigInt = BigInt::from(p + 1) - &n1;
    report.check(
        || format!("Hasse bound for N_1 = {n1}"),
        &trace * &trace <= BigInt::from(4 * p),
    );

    let pb = BigInt::from(p);
    for n in 3..=nmax {
        let expected = (&pb + 1) * &c[n - 1] - &pb * &c[n - 2];
        report.check(|| format!("Weil recurrence at n={n}"), c[n] == expected);
    }
    for n in 1..=nmax {
        let expected = &n1 * (pb.pow(n as u32) - 1) / (&pb - 1);
        report.check(|| format!("divisor-count closed form at n={n}"), c[n] == expected);
    }
    Ok(report)
}
