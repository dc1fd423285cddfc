//! Shared proptest strategies for randomized suites.

use proptest::prelude::*;

use equimot_core::groups::AbelianGroup;
use equimot_core::realize::GeneratorTable;
use equimot_core::ring::{GenSymbol, Monomial, RingElement};
use equimot_core::series::{RationalWitness, TPoly};

/// A fixed mixed alphabet: characters of Z/4 and Z/2xZ/2, a few curve
/// powers, a few bundle twists.
pub fn alphabet() -> Vec<GenSymbol> {
    let g4 = AbelianGroup::new(&[4]).unwrap();
    let g22 = AbelianGroup::new(&[2, 2]).unwrap();
    let mut syms: Vec<GenSymbol> = g4.characters().into_iter().map(GenSymbol::AffLine).collect();
    syms.extend(g22.characters().into_iter().map(GenSymbol::AffLine));
    syms.extend((1..=4).map(GenSymbol::SymBase));
    for i in 1..=2 {
        for j in 1..=2 {
            syms.push(GenSymbol::E0Twist(i, j));
        }
    }
    syms
}

pub fn arb_symbol() -> impl Strategy<Value = GenSymbol> {
    let syms = alphabet();
    (0..syms.len()).prop_map(move |i| syms[i].clone())
}

/// Up to 3 symbols, exponents 1..=3.
pub fn arb_monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec((arb_symbol(), 1u32..=3), 0..=3).prop_map(Monomial::from_powers)
}

/// Up to 4 monomials with coefficients in [-9, 9].
pub fn arb_element() -> impl Strategy<Value = RingElement> {
    proptest::collection::vec(
        ((-9i64..=9).prop_filter("nonzero coefficient", |c| *c != 0), arb_monomial()),
        0..=4,
    )
    .prop_map(|terms| {
        terms.into_iter().fold(RingElement::zero(), |acc, (c, m)| {
            &acc + &RingElement::from_bigint(c.into()).mul(&RingElement::from_monomial(m))
        })
    })
}

/// A table assigning small nonnegative values to the whole alphabet.
pub fn arb_table() -> impl Strategy<Value = GeneratorTable> {
    proptest::collection::vec(0u64..=9, alphabet().len()).prop_map(|vals| {
        let mut t = GeneratorTable::new();
        for (sym, v) in alphabet().into_iter().zip(vals) {
            t.insert(sym, v);
        }
        t
    })
}

pub fn arb_tpoly(max_deg: u32) -> impl Strategy<Value = TPoly> {
    proptest::collection::vec((0..=max_deg, arb_element()), 0..=3).prop_map(TPoly::from_terms)
}

/// A witness with denominator a product of one or two `1 - c t^k` factors.
pub fn arb_witness() -> impl Strategy<Value = RationalWitness> {
    (
        arb_tpoly(3),
        proptest::collection::vec((1u32..=3, arb_element()), 1..=2),
    )
        .prop_map(|(num, factors)| {
            let den_factors: Vec<TPoly> = factors
                .into_iter()
                .map(|(k, c)| TPoly::from_terms([(0, RingElement::one()), (k, c.neg())]))
                .collect();
            RationalWitness::new(num, den_factors).expect("factors have constant term 1")
        })
}
