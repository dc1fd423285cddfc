//! Symmetric-power classes of twisted affine spaces, their zeta witnesses,
//! the `Omega` products, the decomposition of high symmetric powers of the
//! curve, and the assembled curve zeta witness.
//!
//! Character enumeration conventions: the canonical order is ascending
//! lexicographic with the trivial character first. Operations that depend
//! on the enumeration also come in `_with_order` variants taking an
//! explicit [`CharOrder`]; outputs under different orders are syntactically
//! different in general but realize to the same counts.

use crate::error::{Error, Result};
use crate::groups::{AbelianGroup, Character};
use crate::ring::{GenSymbol, RingElement};
use crate::series::{RationalWitness, TPoly};

/// A curve datum: genus `g` and acting group of order `r`. The tail base
/// degrees are `n_i = 2g + i` for `i = 1..r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    genus: u32,
    group: AbelianGroup,
}

impl CurveSpec {
    pub fn new(genus: u32, group: AbelianGroup) -> Self {
        CurveSpec { genus, group }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// `n_i = 2g + i`.
    pub fn base_degree(&self, i: u32) -> u32 {
        2 * self.genus + i
    }
}

/// An enumeration of all characters of a group, fixing the meaning of the
/// 1-based index `j` in `Omega_j` and `E0(i,j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharOrder {
    group: AbelianGroup,
    chars: Vec<Character>,
}

impl CharOrder {
    /// Ascending lexicographic order; the first character is trivial.
    pub fn canonical(group: &AbelianGroup) -> Self {
        CharOrder { group: group.clone(), chars: group.characters() }
    }

    /// An explicit enumeration; must be a permutation of all characters.
    pub fn new(group: &AbelianGroup, chars: Vec<Character>) -> Result<Self> {
        let mut sorted = chars.clone();
        sorted.sort();
        if sorted != group.characters() {
            return Err(Error::InvalidArgument(
                "character order must be a permutation of all characters".into(),
            ));
        }
        Ok(CharOrder { group: group.clone(), chars })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn chars(&self) -> &[Character] {
        &self.chars
    }

    /// The j-th character, 1-based.
    pub fn char(&self, j: u32) -> &Character {
        &self.chars[(j - 1) as usize]
    }
}

/// `[Sym^n(A^1, chi)] = prod_{i=1..n} A(chi^i)`; equal-character factors
/// merge into exponents, and `n = 0` gives 1.
pub fn sym_affine_line(n: u32, chi: &Character, group: &AbelianGroup) -> Result<RingElement> {
    group.validate_character(chi)?;
    let mut acc = RingElement::one();
    let mut power = group.trivial_character();
    for _ in 0..n {
        power = group.char_mul(&power, chi)?;
        acc = acc.mul(&RingElement::generator(GenSymbol::AffLine(power.clone())));
    }
    Ok(acc)
}

/// The zeta witness of the twisted affine line:
/// `num = sum_{k<r} [Sym^k(A^1,chi)] t^k`, `den = 1 - [Sym^r(A^1,chi)] t^r`.
///
/// The expansion has coefficient `[Sym^n(A^1,chi)]` at every order; the
/// denominator exponent must be `t^r`, not `t` (a degree-1 denominator
/// fails cross-multiplication for r >= 2).
pub fn zeta_affine_line(chi: &Character, group: &AbelianGroup) -> Result<RationalWitness> {
    let r = small_order(group)?;
    let num = TPoly::from_terms(
        (0..r).map(|k| Ok((k, sym_affine_line(k, chi, group)?))).collect::<Result<Vec<_>>>()?,
    );
    let den = one_minus(sym_affine_line(r, chi, group)?, r);
    RationalWitness::new(num, vec![den])
}

/// `[Sym^n(A^k, (chi_1..chi_k))] = prod_j [Sym^n(A^1, chi_j)]`.
pub fn sym_affine_space(n: u32, chars: &[Character], group: &AbelianGroup) -> Result<RingElement> {
    let mut acc = RingElement::one();
    for chi in chars {
        acc = acc.mul(&sym_affine_line(n, chi, group)?);
    }
    Ok(acc)
}

/// The zeta witness of a product of twisted affine lines:
/// `num = sum_{l<r} [Sym^l(A^k,sigma)] t^l`, `den = 1 - [Sym^r(A^k,sigma)] t^r`.
pub fn zeta_affine_space(chars: &[Character], group: &AbelianGroup) -> Result<RationalWitness> {
    let r = small_order(group)?;
    let num = TPoly::from_terms(
        (0..r)
            .map(|l| Ok((l, sym_affine_space(l, chars, group)?)))
            .collect::<Result<Vec<_>>>()?,
    );
    let den = one_minus(sym_affine_space(r, chars, group)?, r);
    RationalWitness::new(num, vec![den])
}

/// `Omega_j = prod_{k=j+1..r} A(chi_j^{-1} chi_k)` in the canonical order;
/// `j = r` gives 1.
pub fn omega(j: u32, group: &AbelianGroup) -> Result<RingElement> {
    omega_with_order(j, &CharOrder::canonical(group))
}

/// `Omega_j` relative to an explicit character order.
pub fn omega_with_order(j: u32, order: &CharOrder) -> Result<RingElement> {
    let r = order.chars.len() as u32;
    if j == 0 || j > r {
        return Err(Error::InvalidArgument(format!("omega index {j} out of range 1..={r}")));
    }
    let group = &order.group;
    let inv = group.char_inv(order.char(j))?;
    let mut acc = RingElement::one();
    for k in j + 1..=r {
        let chi = group.char_mul(&inv, order.char(k))?;
        acc = acc.mul(&RingElement::generator(GenSymbol::AffLine(chi)));
    }
    Ok(acc)
}

/// `[Sym^n(C,sigma)]` as a ring element, in the canonical character order.
///
/// For `n = 0` this is 1, for `1 <= n <= 2g+r` the opaque generator
/// `SymC(n)`, and beyond that `n` decomposes uniquely as `n_i + r m` with
/// `m >= 1`, giving
/// `SymC(n_i) + sum_j E0(i,j) (1 + L + .. + L^(m-1)) Omega_j^m`.
pub fn sym_curve_class(n: u32, spec: &CurveSpec) -> RingElement {
    sym_curve_class_with_order(n, spec, &CharOrder::canonical(&spec.group))
        .expect("canonical order is always valid")
}

/// [`sym_curve_class`] relative to an explicit character order.
pub fn sym_curve_class_with_order(n: u32, spec: &CurveSpec, order: &CharOrder) -> Result<RingElement> {
    if order.group != spec.group {
        return Err(Error::InvalidArgument("character order is for a different group".into()));
    }
    let g2 = 2 * spec.genus as u64;
    let r = spec.group.order();
    if n == 0 {
        return Ok(RingElement::one());
    }
    if n as u64 <= g2 + r {
        return Ok(RingElement::generator(GenSymbol::SymBase(n)));
    }
    // unique decomposition n = 2g + i + r m with 1 <= i <= r, m >= 1
    let r = r as u32;
    let i = ((n - 2 * spec.genus - 1) % r) + 1;
    let m = (n - spec.base_degree(i)) / r;
    let lefschetz = RingElement::generator(GenSymbol::lefschetz(&spec.group));
    let mut lsum = RingElement::zero();
    let mut lpow = RingElement::one();
    for s in 0..m {
        lsum = &lsum + &lpow;
        if s + 1 < m {
            lpow = lpow.mul(&lefschetz);
        }
    }
    let mut acc = RingElement::generator(GenSymbol::SymBase(spec.base_degree(i)));
    for j in 1..=r {
        let e0 = RingElement::generator(GenSymbol::E0Twist(i, j));
        let omega_m = omega_with_order(j, order)?.pow(m);
        acc = &acc + &e0.mul(&lsum).mul(&omega_m);
    }
    Ok(acc)
}

/// The assembled curve zeta witness. Its expansion reproduces
/// [`sym_curve_class`] at every order.
///
/// The denominator is the fixed product
/// `(1 - t^r) * prod_j (1 - Omega_j t^r)(1 - Omega_j L t^r)`; the
/// i-indexed copies of each factor are already deduplicated, and no
/// minimality across the j slots is attempted.
pub fn zeta_curve(spec: &CurveSpec) -> RationalWitness {
    zeta_curve_with_order(spec, &CharOrder::canonical(&spec.group))
        .expect("canonical order is always valid")
}

/// [`zeta_curve`] relative to an explicit character order.
pub fn zeta_curve_with_order(spec: &CurveSpec, order: &CharOrder) -> Result<RationalWitness> {
    if order.group != spec.group {
        return Err(Error::InvalidArgument("character order is for a different group".into()));
    }
    let r = small_order(&spec.group)?;
    let lefschetz = RingElement::generator(GenSymbol::lefschetz(&spec.group));

    let geometric = one_minus(RingElement::one(), r);
    let mut den_factors = vec![geometric.clone()];
    let mut omegas = Vec::with_capacity(r as usize);
    for j in 1..=r {
        let om = omega_with_order(j, order)?;
        den_factors.push(one_minus(om.clone(), r));
        den_factors.push(one_minus(om.mul(&lefschetz), r));
        omegas.push(om);
    }

    let mut pieces: Vec<RationalWitness> = Vec::new();
    let mut shifts: Vec<u32> = Vec::new();

    // low-degree polynomial part: sum_{n<=2g} [Sym^n C] t^n
    pieces.push(RationalWitness::polynomial(TPoly::from_terms(
        (0..=2 * spec.genus)
            .map(|n| (n, sym_curve_class_with_order(n, spec, order).expect("order checked"))),
    )));
    shifts.push(0);

    for i in 1..=r {
        let n_i = spec.base_degree(i);
        // SymC(n_i) / (1 - t^r), shifted by n_i
        pieces.push(RationalWitness::new(
            TPoly::constant(RingElement::generator(GenSymbol::SymBase(n_i))),
            vec![geometric.clone()],
        )?);
        shifts.push(n_i);
        // E0(i,j) Omega_j t^r / ((1 - Omega_j t^r)(1 - Omega_j L t^r)), shifted by n_i
        for j in 1..=r {
            let om = &omegas[(j - 1) as usize];
            let num = TPoly::term(
                r,
                RingElement::generator(GenSymbol::E0Twist(i, j)).mul(om),
            );
            pieces.push(RationalWitness::new(
                num,
                vec![one_minus(om.clone(), r), one_minus(om.mul(&lefschetz), r)],
            )?);
            shifts.push(n_i);
        }
    }

    RationalWitness::combine_over(&pieces, &shifts, den_factors)
}

/// `1 - c t^k`.
fn one_minus(c: RingElement, k: u32) -> TPoly {
    TPoly::from_terms([(0, RingElement::one()), (k, c.neg())])
}

fn small_order(group: &AbelianGroup) -> Result<u32> {
    u32::try_from(group.order())
        .map_err(|_| Error::InvalidArgument("group order too large for series degrees".into()))
}
