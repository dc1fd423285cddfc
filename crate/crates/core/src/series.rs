//! Truncated formal power series in `t` with [`RingElement`] coefficients,
//! and rational-function witnesses with exact expansion and
//! cross-multiplication checking.
//!
//! Denominators always have constant term 1, so expansion is division-free.
//! Witnesses are never reduced to lowest terms; a witness keeps its
//! denominator as an explicit list of factors so that combining witnesses
//! can deduplicate shared factors syntactically.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::RingElement;

/// A power series truncated at order `N`: coefficients of `t^0 .. t^N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesJson", into = "SeriesJson")]
pub struct PowerSeries {
    coeffs: Vec<RingElement>,
}

impl PowerSeries {
    /// Wraps an explicit coefficient list; there must be at least the
    /// constant coefficient.
    pub fn from_coeffs(coeffs: Vec<RingElement>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a series needs at least the t^0 coefficient".into()));
        }
        Ok(PowerSeries { coeffs })
    }

    pub fn zero(order: u32) -> Self {
        PowerSeries { coeffs: vec![RingElement::zero(); order as usize + 1] }
    }

    /// Builds the series from a coefficient function.
    pub fn tabulate(order: u32, mut coeff: impl FnMut(u32) -> RingElement) -> Self {
        PowerSeries { coeffs: (0..=order).map(|n| coeff(n)).collect() }
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeff(&self, n: u32) -> &RingElement {
        &self.coeffs[n as usize]
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    /// Sum, truncated to the smaller order.
    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        PowerSeries::tabulate(order, |n| self.coeff(n) + other.coeff(n))
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        PowerSeries::tabulate(order, |n| {
            let mut acc = RingElement::zero();
            for k in 0..=n {
                acc = &acc + &(self.coeff(k) * other.coeff(n - k));
            }
            acc
        })
    }
}

// Shared rendering for anything that is a list of (degree, coefficient)
// terms in t.
fn fmt_t_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (u32, &'a RingElement)>,
) -> fmt::Result {
    let mut first = true;
    for (deg, coef) in terms {
        if coef.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        if deg == 0 {
            write!(f, "{coef}")?;
            continue;
        }
        if coef.num_terms() > 1 {
            write!(f, "({coef})*")?;
        } else if !coef.is_one() {
            write!(f, "{coef}*")?;
        }
        if deg == 1 {
            write!(f, "t")?;
        } else {
            write!(f, "t^{deg}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_t_terms(f, self.coeffs.iter().enumerate().map(|(n, c)| (n as u32, c)))
    }
}

/// A polynomial in `t`: strictly increasing degrees, nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<TPolyTermJson>", into = "Vec<TPolyTermJson>")]
pub struct TPoly {
    terms: Vec<(u32, RingElement)>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        TPoly::constant(RingElement::one())
    }

    pub fn constant(c: RingElement) -> Self {
        TPoly::term(0, c)
    }

    /// The single term `c * t^deg` (empty if `c` is zero).
    pub fn term(deg: u32, c: RingElement) -> Self {
        if c.is_zero() {
            TPoly::zero()
        } else {
            TPoly { terms: vec![(deg, c)] }
        }
    }

    /// Accumulates arbitrary terms into canonical form.
    pub fn from_terms<I: IntoIterator<Item = (u32, RingElement)>>(terms: I) -> Self {
        let mut map: std::collections::BTreeMap<u32, RingElement> = Default::default();
        for (deg, c) in terms {
            let entry = map.entry(deg).or_insert_with(RingElement::zero);
            *entry = &*entry + &c;
        }
        TPoly { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &[(u32, RingElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(d, _)| *d)
    }

    pub fn coeff(&self, deg: u32) -> RingElement {
        match self.terms.binary_search_by_key(&deg, |(d, _)| *d) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => RingElement::zero(),
        }
    }

    pub fn constant_term(&self) -> RingElement {
        self.coeff(0)
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        TPoly::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        TPoly::from_terms(self.terms.iter().flat_map(|(da, ca)| {
            other.terms.iter().map(move |(db, cb)| (da + db, ca * cb))
        }))
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: u32) -> TPoly {
        TPoly { terms: self.terms.iter().map(|(d, c)| (d + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &RingElement) -> TPoly {
        TPoly::from_terms(self.terms.iter().map(|(d, x)| (*d, x * c)))
    }

    pub fn to_series(&self, order: u32) -> PowerSeries {
        PowerSeries::tabulate(order, |n| self.coeff(n))
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_t_terms(f, self.terms.iter().map(|(d, c)| (*d, c)))
    }
}

/// A rationality witness: a numerator and a denominator (kept as a product
/// of factors, each with constant term 1) such that the certified series is
/// the unique solution of `den * f = num`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WitnessJson", into = "WitnessJson")]
pub struct RationalWitness {
    num: TPoly,
    den_factors: Vec<TPoly>,
}

impl RationalWitness {
    /// Builds a witness from a numerator and denominator factors. Every
    /// factor must have constant term exactly 1.
    pub fn new(num: TPoly, den_factors: Vec<TPoly>) -> Result<Self> {
        for f in &den_factors {
            if !f.constant_term().is_one() {
                return Err(Error::NonInvertibleDenominator);
            }
        }
        Ok(RationalWitness { num, den_factors })
    }

    /// A polynomial viewed as a witness with denominator 1.
    pub fn polynomial(num: TPoly) -> Self {
        RationalWitness { num, den_factors: Vec::new() }
    }

    /// Builds a witness from an already-expanded denominator.
    pub fn from_num_den(num: TPoly, den: TPoly) -> Result<Self> {
        if !den.constant_term().is_one() {
            return Err(Error::NonInvertibleDenominator);
        }
        let den_factors = if den.is_one() { Vec::new() } else { vec![den] };
        Ok(RationalWitness { num, den_factors })
    }

    pub fn num(&self) -> &TPoly {
        &self.num
    }

    pub fn den_factors(&self) -> &[TPoly] {
        &self.den_factors
    }

    /// The expanded denominator, the product of all factors.
    pub fn den(&self) -> TPoly {
        self.den_factors.iter().fold(TPoly::one(), |acc, f| acc.mul(f))
    }

    /// The unique series `f` with `den * f = num mod t^(order+1)`, computed
    /// by forward substitution.
    pub fn expand(&self, order: u32) -> PowerSeries {
        let den = self.den();
        let mut coeffs: Vec<RingElement> = Vec::with_capacity(order as usize + 1);
        for n in 0..=order {
            let mut c = self.num.coeff(n);
            for (d, dc) in den.terms() {
                if *d == 0 || *d > n {
                    continue;
                }
                c = &c - &(dc * &coeffs[(n - d) as usize]);
            }
            coeffs.push(c);
        }
        PowerSeries { coeffs }
    }

    /// Checks `den * f = num` coefficientwise up to the order of `f`.
    pub fn check(&self, f: &PowerSeries) -> bool {
        let den = self.den();
        for n in 0..=f.order() {
            let mut lhs = RingElement::zero();
            for (d, dc) in den.terms() {
                if *d > n {
                    continue;
                }
                lhs = &lhs + &(dc * f.coeff(n - d));
            }
            if lhs != self.num.coeff(n) {
                return false;
            }
        }
        true
    }

    /// Combines shifted witnesses over the factor-level least common
    /// denominator: each distinct factor appears with its maximal
    /// multiplicity across the inputs.
    pub fn combine(witnesses: &[RationalWitness], shifts: &[u32]) -> Result<RationalWitness> {
        let mut factors: Vec<(TPoly, usize)> = Vec::new();
        for w in witnesses {
            // multiplicities of this witness's factors
            let mut local: Vec<(&TPoly, usize)> = Vec::new();
            for f in &w.den_factors {
                match local.iter_mut().find(|(g, _)| *g == f) {
                    Some(entry) => entry.1 += 1,
                    None => local.push((f, 1)),
                }
            }
            for (f, count) in local {
                match factors.iter_mut().find(|(g, _)| g == f) {
                    Some(entry) => entry.1 = entry.1.max(count),
                    None => factors.push((f.clone(), count)),
                }
            }
        }
        let den_factors: Vec<TPoly> = factors
            .into_iter()
            .flat_map(|(f, count)| std::iter::repeat(f).take(count))
            .collect();
        RationalWitness::combine_over(witnesses, shifts, den_factors)
    }

    /// Combines shifted witnesses over a prescribed denominator factor
    /// list; every input's factors must be contained in it (as a
    /// multiset).
    pub fn combine_over(
        witnesses: &[RationalWitness],
        shifts: &[u32],
        den_factors: Vec<TPoly>,
    ) -> Result<RationalWitness> {
        if witnesses.len() != shifts.len() {
            return Err(Error::InvalidArgument(
                "need exactly one shift per witness".into(),
            ));
        }
        let mut num = TPoly::zero();
        for (w, &shift) in witnesses.iter().zip(shifts) {
            let mut remaining: Vec<&TPoly> = den_factors.iter().collect();
            for f in &w.den_factors {
                let pos = remaining.iter().position(|g| *g == f).ok_or_else(|| {
                    Error::InvalidArgument(
                        "denominator factor not covered by the combined denominator".into(),
                    )
                })?;
                remaining.swap_remove(pos);
            }
            let complement = remaining.into_iter().fold(TPoly::one(), |acc, f| acc.mul(f));
            num = num.add(&w.num.mul(&complement).shift(shift));
        }
        RationalWitness::new(num, den_factors)
    }
}

impl fmt::Display for RationalWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den())
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: u32,
    coeffs: Vec<RingElement>,
}

impl TryFrom<SeriesJson> for PowerSeries {
    type Error = Error;

    fn try_from(raw: SeriesJson) -> Result<Self> {
        if raw.coeffs.len() as u64 != raw.order as u64 + 1 {
            return Err(Error::InvalidEncoding("series must have order+1 coefficients".into()));
        }
        Ok(PowerSeries { coeffs: raw.coeffs })
    }
}

impl From<PowerSeries> for SeriesJson {
    fn from(s: PowerSeries) -> Self {
        SeriesJson { order: s.order(), coeffs: s.coeffs }
    }
}

#[derive(Serialize, Deserialize)]
struct TPolyTermJson {
    deg: u32,
    coef: RingElement,
}

impl TryFrom<Vec<TPolyTermJson>> for TPoly {
    type Error = Error;

    fn try_from(raw: Vec<TPolyTermJson>) -> Result<Self> {
        let mut terms: Vec<(u32, RingElement)> = Vec::with_capacity(raw.len());
        for t in raw {
            if t.coef.is_zero() {
                return Err(Error::InvalidEncoding("zero coefficient in t-polynomial".into()));
            }
            if let Some((last, _)) = terms.last() {
                if *last >= t.deg {
                    return Err(Error::InvalidEncoding(
                        "t-polynomial degrees must be strictly increasing".into(),
                    ));
                }
            }
            terms.push((t.deg, t.coef));
        }
        Ok(TPoly { terms })
    }
}

impl From<TPoly> for Vec<TPolyTermJson> {
    fn from(p: TPoly) -> Self {
        p.terms.into_iter().map(|(deg, coef)| TPolyTermJson { deg, coef }).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    num: TPoly,
    den: TPoly,
}

impl TryFrom<WitnessJson> for RationalWitness {
    type Error = Error;

    fn try_from(raw: WitnessJson) -> Result<Self> {
        RationalWitness::from_num_den(raw.num, raw.den)
    }
}

impl From<RationalWitness> for WitnessJson {
    fn from(w: RationalWitness) -> Self {
        let den = w.den();
        WitnessJson { num: w.num, den }
    }
}
