//! Finite abelian groups presented as products of cyclic factors, their
//! elements, their character (dual) groups, and the root-of-unity pairing.
//!
//! Roots of unity are abstract exponents modulo the group exponent `E`,
//! never floating point; downstream logic only ever compares exponents.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite abelian group `Z/d_1 x ... x Z/d_m`.
///
/// An empty divisor list is normalized to `[1]`, the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct AbelianGroup {
    divisors: Vec<u64>,
    order: u64,
    exponent: u64,
}

/// An element of an [`AbelianGroup`], componentwise reduced residues.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "ResiduesJson", into = "ResiduesJson")]
pub struct GroupElement {
    residues: Vec<u64>,
}

/// A character of an [`AbelianGroup`], stored as residues of the same shape
/// as a group element. The character group has identical divisors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "ResiduesJson", into = "ResiduesJson")]
pub struct Character {
    residues: Vec<u64>,
}

/// `zeta_E^e` for a fixed abstract primitive `E`-th root of unity `zeta_E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    e: u64,
    modulus: u64,
}

impl RootOfUnity {
    pub fn new(e: u64, modulus: u64) -> Self {
        assert!(modulus > 0);
        RootOfUnity { e: e % modulus, modulus }
    }

    /// The exponent `e` with `0 <= e < E`.
    pub fn exponent(&self) -> u64 {
        self.e
    }

    /// The modulus `E` the exponent is reduced by.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_one(&self) -> bool {
        self.e == 0
    }
}

impl AbelianGroup {
    /// Builds the group from its cyclic divisors. Empty input yields the
    /// trivial group; any zero divisor is rejected.
    pub fn new(divisors: &[u64]) -> Result<Self> {
        if divisors.iter().any(|&d| d == 0) {
            return Err(Error::InvalidGroup("divisors must be positive".into()));
        }
        let divisors = if divisors.is_empty() { vec![1] } else { divisors.to_vec() };
        let order = divisors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidGroup("group order overflows u64".into()))?;
        // lcm of divisors of `order` divides `order`, so this cannot overflow
        let exponent = divisors.iter().fold(1u64, |acc, &d| num_integer::lcm(acc, d));
        Ok(AbelianGroup { divisors, order, exponent })
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        AbelianGroup { divisors: vec![1], order: 1, exponent: 1 }
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    /// Group order `r`, the product of the divisors.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Group exponent `E = lcm(d_1, ..., d_m)`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { residues: vec![0; self.rank()] }
    }

    pub fn trivial_character(&self) -> Character {
        Character { residues: vec![0; self.rank()] }
    }

    /// Binds residues to this group, reducing componentwise.
    pub fn element(&self, residues: &[u64]) -> Result<GroupElement> {
        Ok(GroupElement { residues: self.reduce(residues)? })
    }

    /// Binds residues to a character of this group, reducing componentwise.
    pub fn character(&self, residues: &[u64]) -> Result<Character> {
        Ok(Character { residues: self.reduce(residues)? })
    }

    fn reduce(&self, residues: &[u64]) -> Result<Vec<u64>> {
        if residues.len() != self.rank() {
            return Err(Error::InvalidArgument(format!(
                "expected {} residues, got {}",
                self.rank(),
                residues.len()
            )));
        }
        Ok(residues.iter().zip(&self.divisors).map(|(&a, &d)| a % d).collect())
    }

    fn check_shape(&self, residues: &[u64]) -> Result<()> {
        if residues.len() != self.rank()
            || residues.iter().zip(&self.divisors).any(|(&a, &d)| a >= d)
        {
            return Err(Error::InvalidArgument(
                "residues do not match the group shape".into(),
            ));
        }
        Ok(())
    }

    pub fn validate_element(&self, g: &GroupElement) -> Result<()> {
        self.check_shape(&g.residues)
    }

    pub fn validate_character(&self, chi: &Character) -> Result<()> {
        self.check_shape(&chi.residues)
    }

    /// All group elements in ascending lexicographic order of residue tuples.
    pub fn elements(&self) -> Vec<GroupElement> {
        self.tuples().into_iter().map(|residues| GroupElement { residues }).collect()
    }

    /// All `r` characters in ascending lexicographic order of residue tuples.
    /// The first character is trivial. This sequence is also the character
    /// multiset of the regular representation, each character exactly once.
    pub fn characters(&self) -> Vec<Character> {
        self.tuples().into_iter().map(|residues| Character { residues }).collect()
    }

    fn tuples(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::with_capacity(self.order as usize);
        let mut cur = vec![0u64; self.rank()];
        'outer: loop {
            out.push(cur.clone());
            let mut i = self.rank();
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.divisors[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
        out
    }

    /// Componentwise sum of two group elements.
    pub fn elem_add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_shape(&a.residues)?;
        self.check_shape(&b.residues)?;
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.divisors)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect();
        Ok(GroupElement { residues })
    }

    /// Evaluates `chi(g)` as a root of unity: the exponent is
    /// `sum_i chi_i * g_i * (E/d_i) mod E`.
    pub fn pair(&self, chi: &Character, g: &GroupElement) -> Result<RootOfUnity> {
        self.check_shape(&chi.residues)?;
        self.check_shape(&g.residues)?;
        let big_e = self.exponent as u128;
        let mut acc: u128 = 0;
        for ((&c, &x), &d) in chi.residues.iter().zip(&g.residues).zip(&self.divisors) {
            let cofactor = (self.exponent / d) as u128;
            acc = (acc + (c as u128) * (x as u128) % big_e * cofactor) % big_e;
        }
        Ok(RootOfUnity { e: acc as u64, modulus: self.exponent })
    }

    /// Product of characters (componentwise modular addition).
    pub fn char_mul(&self, a: &Character, b: &Character) -> Result<Character> {
        self.check_shape(&a.residues)?;
        self.check_shape(&b.residues)?;
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.divisors)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect();
        Ok(Character { residues })
    }

    /// Inverse character (componentwise negation).
    pub fn char_inv(&self, a: &Character) -> Result<Character> {
        self.check_shape(&a.residues)?;
        let residues = a
            .residues
            .iter()
            .zip(&self.divisors)
            .map(|(&x, &d)| (d - x) % d)
            .collect();
        Ok(Character { residues })
    }

    /// Integer power of a character; negative exponents invert.
    pub fn char_pow(&self, a: &Character, k: i64) -> Result<Character> {
        self.check_shape(&a.residues)?;
        let residues = a
            .residues
            .iter()
            .zip(&self.divisors)
            .map(|(&x, &d)| ((x as i128 * k as i128).rem_euclid(d as i128)) as u64)
            .collect();
        Ok(Character { residues })
    }
}

impl GroupElement {
    /// Wraps raw residues; shape against a group is checked by group
    /// operations, not here.
    pub fn from_residues(residues: Vec<u64>) -> Self {
        GroupElement { residues }
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_identity(&self) -> bool {
        self.residues.iter().all(|&a| a == 0)
    }
}

impl Character {
    /// Wraps raw residues; shape against a group is checked by group
    /// operations, not here.
    pub fn from_residues(residues: Vec<u64>) -> Self {
        Character { residues }
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_trivial(&self) -> bool {
        self.residues.iter().all(|&a| a == 0)
    }
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    divisors: Vec<u64>,
}

impl TryFrom<GroupJson> for AbelianGroup {
    type Error = Error;

    fn try_from(raw: GroupJson) -> Result<Self> {
        AbelianGroup::new(&raw.divisors)
    }
}

impl From<AbelianGroup> for GroupJson {
    fn from(g: AbelianGroup) -> Self {
        GroupJson { divisors: g.divisors }
    }
}

#[derive(Serialize, Deserialize)]
struct ResiduesJson {
    residues: Vec<u64>,
}

impl From<ResiduesJson> for GroupElement {
    fn from(raw: ResiduesJson) -> Self {
        GroupElement { residues: raw.residues }
    }
}

impl From<GroupElement> for ResiduesJson {
    fn from(g: GroupElement) -> Self {
        ResiduesJson { residues: g.residues }
    }
}

impl From<ResiduesJson> for Character {
    fn from(raw: ResiduesJson) -> Self {
        Character { residues: raw.residues }
    }
}

impl From<Character> for ResiduesJson {
    fn from(c: Character) -> Self {
        ResiduesJson { residues: c.residues }
    }
}
