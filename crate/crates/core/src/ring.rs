//! The free commutative polynomial ring over the integers on the generator
//! alphabet, with unique canonical forms for exact equality.
//!
//! The cut-and-paste relation is not imposed as a quotient; identities
//! between genuinely different presentations of the same class are checked
//! under realization homomorphisms (see [`crate::realize`]), never
//! syntactically.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{AbelianGroup, Character};

/// A generator symbol of the ring alphabet.
///
/// The derived ordering (variant order, then payload) is the canonical
/// symbol order used everywhere: `AffLine < SymBase < E0Twist`, ties broken
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "SymbolJson", into = "SymbolJson")]
pub enum GenSymbol {
    /// The affine line twisted by a character. The trivial character gives
    /// the distinguished Lefschetz symbol `L`.
    AffLine(Character),
    /// The class of the n-th symmetric power of the fixed curve, `n >= 1`
    /// (`Sym^0` is the ring unit and is never stored).
    SymBase(u32),
    /// The Picard-bundle class of base degree `n_i = 2g+i` twisted by the
    /// inverse of the j-th character; `i`, `j` are 1-based indices into the
    /// character order in use.
    E0Twist(u32, u32),
}

impl GenSymbol {
    /// The Lefschetz symbol `L` of a group: the affine line with the
    /// trivial twist.
    pub fn lefschetz(group: &AbelianGroup) -> Self {
        GenSymbol::AffLine(group.trivial_character())
    }

    pub fn is_lefschetz(&self) -> bool {
        matches!(self, GenSymbol::AffLine(chi) if chi.is_trivial())
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSymbol::AffLine(chi) if chi.is_trivial() => write!(f, "L"),
            GenSymbol::AffLine(chi) => {
                write!(f, "A(")?;
                for (k, a) in chi.residues().iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            GenSymbol::SymBase(n) => write!(f, "SymC({n})"),
            GenSymbol::E0Twist(i, j) => write!(f, "E0({i},{j})"),
        }
    }
}

/// A power product of generator symbols, stored sorted by the canonical
/// symbol order with strictly positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(GenSymbol, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn generator(sym: GenSymbol) -> Self {
        Monomial { factors: vec![(sym, 1)] }
    }

    /// Builds a monomial from symbol powers, merging repeated symbols and
    /// dropping zero exponents.
    pub fn from_powers<I: IntoIterator<Item = (GenSymbol, u32)>>(powers: I) -> Self {
        let mut map: BTreeMap<GenSymbol, u32> = BTreeMap::new();
        for (sym, exp) in powers {
            if exp > 0 {
                *map.entry(sym).or_insert(0) += exp;
            }
        }
        Monomial { factors: map.into_iter().collect() }
    }

    pub fn factors(&self) -> &[(GenSymbol, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total degree: the sum of all exponents.
    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|(_, e)| *e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            match self.factors[i].0.cmp(&other.factors[j].0) {
                Ordering::Less => {
                    factors.push(self.factors[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    factors.push(other.factors[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    factors.push((self.factors[i].0.clone(), self.factors[i].1 + other.factors[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        Monomial { factors }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            factors: self
                .factors
                .iter()
                .filter(|_| k > 0)
                .map(|(s, e)| (s.clone(), e * k))
                .collect(),
        }
    }
}

/// Monomials order by total degree, then lexicographically on the sorted
/// factor list. This is the storage order of [`RingElement`] terms.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, (sym, exp)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{sym}")?;
            if *exp > 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

/// An element of the ring: an integer combination of monomials in canonical
/// form (terms sorted by monomial order, no zero coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<TermJson>", into = "Vec<TermJson>")]
pub struct RingElement {
    terms: Vec<(Monomial, BigInt)>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement { terms: Vec::new() }
    }

    pub fn one() -> Self {
        RingElement::int(1)
    }

    pub fn int(n: i64) -> Self {
        RingElement::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        if n.is_zero() {
            RingElement::zero()
        } else {
            RingElement { terms: vec![(Monomial::one(), n)] }
        }
    }

    pub fn generator(sym: GenSymbol) -> Self {
        RingElement { terms: vec![(Monomial::generator(sym), BigInt::one())] }
    }

    pub fn from_monomial(m: Monomial) -> Self {
        RingElement { terms: vec![(m, BigInt::one())] }
    }

    fn from_map(map: BTreeMap<Monomial, BigInt>) -> Self {
        RingElement { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Every generator symbol occurring in the element.
    pub fn symbols(&self) -> BTreeSet<GenSymbol> {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.factors().iter().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Less => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        terms.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        RingElement { terms }
    }

    pub fn neg(&self) -> RingElement {
        RingElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match map.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                }
            }
        }
        RingElement::from_map(map)
    }

    pub fn pow(&self, k: u32) -> RingElement {
        let mut acc = RingElement::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Largest `n` among `SymC(n)` symbols of the element, if any.
    pub fn max_sym_base(&self) -> Option<u32> {
        self.symbols()
            .into_iter()
            .filter_map(|s| match s {
                GenSymbol::SymBase(n) => Some(n),
                _ => None,
            })
            .max()
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        RingElement::add(self, rhs)
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        RingElement::sub(self, rhs)
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        RingElement::mul(self, rhs)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement::neg(self)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.sign() == num_bigint::Sign::Minus;
            let abs = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// The class of the regular representation `[A^r, tau]`: the product of one
/// twisted affine line per character, `prod_chi A(chi)`.
pub fn regular_rep_class(group: &AbelianGroup) -> RingElement {
    RingElement::from_monomial(Monomial::from_powers(
        group.characters().into_iter().map(|chi| (GenSymbol::AffLine(chi), 1)),
    ))
}

/// The class of the m-fold extended Picard bundle over base degree `n_i`:
/// `E0(i,1) * [A^r, tau]^m`, with `j = 1` the untwisted bundle.
pub fn e_m_class(i: u32, m: u32, group: &AbelianGroup) -> Result<RingElement> {
    if i == 0 || i as u64 > group.order() {
        return Err(Error::InvalidArgument(format!(
            "bundle index {i} out of range 1..={}",
            group.order()
        )));
    }
    let e0 = RingElement::generator(GenSymbol::E0Twist(i, 1));
    Ok(e0.mul(&regular_rep_class(group).pow(m)))
}

// --- JSON encoding ---------------------------------------------------------
//
// symbol   = {"kind":"aff","chi":[..]} | {"kind":"symc","n":N} | {"kind":"e0","i":I,"j":J}
// monomial = [{"gen":symbol,"exp":E}, ..]    sorted by the canonical symbol order
// element  = [{"coef":"C","mon":monomial}, ..] sorted by the monomial order,
//            coefficients as decimal strings
//
// Parsing accepts only the canonical form, so decode . encode is the
// identity on emitted bytes.

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum SymbolJson {
    #[serde(rename = "aff")]
    Aff { chi: Vec<u64> },
    #[serde(rename = "symc")]
    SymC { n: u32 },
    #[serde(rename = "e0")]
    E0 { i: u32, j: u32 },
}

impl TryFrom<SymbolJson> for GenSymbol {
    type Error = Error;

    fn try_from(raw: SymbolJson) -> Result<Self> {
        match raw {
            SymbolJson::Aff { chi } => Ok(GenSymbol::AffLine(Character::from_residues(chi))),
            SymbolJson::SymC { n } => {
                if n == 0 {
                    Err(Error::InvalidEncoding("symc degree must be >= 1 (Sym^0 is the unit)".into()))
                } else {
                    Ok(GenSymbol::SymBase(n))
                }
            }
            SymbolJson::E0 { i, j } => {
                if i == 0 || j == 0 {
                    Err(Error::InvalidEncoding("e0 indices are 1-based".into()))
                } else {
                    Ok(GenSymbol::E0Twist(i, j))
                }
            }
        }
    }
}

impl From<GenSymbol> for SymbolJson {
    fn from(sym: GenSymbol) -> Self {
        match sym {
            GenSymbol::AffLine(chi) => SymbolJson::Aff { chi: chi.residues().to_vec() },
            GenSymbol::SymBase(n) => SymbolJson::SymC { n },
            GenSymbol::E0Twist(i, j) => SymbolJson::E0 { i, j },
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MonEntryJson {
    gen: SymbolJson,
    exp: u32,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coef: String,
    mon: Vec<MonEntryJson>,
}

fn monomial_from_entries(entries: Vec<MonEntryJson>) -> Result<Monomial> {
    let mut factors: Vec<(GenSymbol, u32)> = Vec::with_capacity(entries.len());
    for entry in entries {
        let sym = GenSymbol::try_from(entry.gen)?;
        if entry.exp == 0 {
            return Err(Error::InvalidEncoding("monomial exponents must be >= 1".into()));
        }
        if let Some((last, _)) = factors.last() {
            if *last >= sym {
                return Err(Error::InvalidEncoding(
                    "monomial factors must be strictly increasing in the symbol order".into(),
                ));
            }
        }
        factors.push((sym, entry.exp));
    }
    Ok(Monomial { factors })
}

/// Accepts only canonical decimal strings: optional `-`, no leading zeros,
/// nonzero value.
fn parse_coef(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    let ok = !digits.is_empty()
        && digits.bytes().all(|b| b.is_ascii_digit())
        && !(digits.len() > 1 && digits.starts_with('0'))
        && digits != "0";
    if !ok {
        return Err(Error::InvalidEncoding(format!("bad coefficient {s:?}")));
    }
    BigInt::parse_bytes(s.as_bytes(), 10)
        .ok_or_else(|| Error::InvalidEncoding(format!("bad coefficient {s:?}")))
}

impl TryFrom<Vec<TermJson>> for RingElement {
    type Error = Error;

    fn try_from(raw: Vec<TermJson>) -> Result<Self> {
        let mut terms: Vec<(Monomial, BigInt)> = Vec::with_capacity(raw.len());
        for t in raw {
            let coef = parse_coef(&t.coef)?;
            let mon = monomial_from_entries(t.mon)?;
            if let Some((last, _)) = terms.last() {
                if *last >= mon {
                    return Err(Error::InvalidEncoding(
                        "element terms must be strictly increasing in the monomial order".into(),
                    ));
                }
            }
            terms.push((mon, coef));
        }
        Ok(RingElement { terms })
    }
}

impl From<RingElement> for Vec<TermJson> {
    fn from(elem: RingElement) -> Self {
        elem.terms
            .into_iter()
            .map(|(m, c)| TermJson {
                coef: c.to_string(),
                mon: m
                    .factors
                    .into_iter()
                    .map(|(sym, exp)| MonEntryJson { gen: sym.into(), exp })
                    .collect(),
            })
            .collect()
    }
}
