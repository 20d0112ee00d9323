//! Symbolic character model of the 8-dimensional space of degree-2 theta
//! sections on a product of three elliptic curves.
//!
//! Each factor contributes a two-element eigenbasis indexed j = 1, 2. The sign
//! rules per factor are: flips act trivially (all sections are symmetric);
//! a half-shift `1/2` fixes j = 1 and negates j = 2; a half-shift `tau/2`
//! negates j = 1 and fixes j = 2. The normalization is the gauge in which the
//! all-(j=2) product vector is fixed by everything. Products over factors are
//! well defined on the ambient group because the commutation pairing is
//! identically trivial there.

use crate::affine::{ActionGroup, GroupElement, Token};
use crate::characters::{CharMultiset, Character};
use crate::sign::Sign;

/// Index of a product basis vector `theta_{j1 j2 j3}`, entries in {1, 2}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BasisVector(pub [u8; 3]);

impl BasisVector {
    /// All 8 product vectors in the row order of the published table:
    /// 111, 211, 121, 112, 122, 212, 221, 222.
    pub const TABLE_ORDER: [BasisVector; 8] = [
        BasisVector([1, 1, 1]),
        BasisVector([2, 1, 1]),
        BasisVector([1, 2, 1]),
        BasisVector([1, 1, 2]),
        BasisVector([1, 2, 2]),
        BasisVector([2, 1, 2]),
        BasisVector([2, 2, 1]),
        BasisVector([2, 2, 2]),
    ];

    pub fn label(&self) -> String {
        format!("theta_{}{}{}", self.0[0], self.0[1], self.0[2])
    }

    pub fn label_glyphs(&self) -> String {
        let sub = |d: u8| if d == 1 { '\u{2081}' } else { '\u{2082}' };
        format!(
            "\u{3b8}{}{}{}",
            sub(self.0[0]),
            sub(self.0[1]),
            sub(self.0[2])
        )
    }
}

/// Sign of one basis factor under one factor action.
fn factor_sign(action: &crate::affine::FactorAction, j: u8) -> Sign {
    let mut s = Sign::Plus;
    if j == 1 && action.shift.half_tau {
        s = Sign::Minus;
    }
    if j == 2 && action.shift.half {
        s = Sign::Minus;
    }
    s
}

/// Sign of the lifted action of `g` on the product basis vector `v`.
pub fn theta_sign(g: &GroupElement, v: &BasisVector) -> Sign {
    assert_eq!(g.num_factors(), 3, "product basis needs three factors");
    g.factors()
        .iter()
        .zip(v.0)
        .map(|(fa, j)| factor_sign(fa, j))
        .fold(Sign::Plus, |acc, s| acc * s)
}

/// The 8 x 7 sign grid of the seven basic involutions on the product basis,
/// rows in table order, columns `i1, i2, i3, i12, i13, i23, i123`.
pub fn basic_sign_table() -> [[Sign; 7]; 8] {
    let mut out = [[Sign::Plus; 7]; 8];
    for (r, v) in BasisVector::TABLE_ORDER.iter().enumerate() {
        for (c, tok) in Token::ALL.iter().enumerate() {
            out[r][c] = theta_sign(&GroupElement::basic(*tok), v);
        }
    }
    out
}

/// Signs of the three group generators on the 8 basis vectors, rows in table
/// order. This is the worked form of the section action for one family.
pub fn worked_sign_table(group: &ActionGroup) -> Vec<[Sign; 3]> {
    assert_eq!(group.rank(), 3);
    BasisVector::TABLE_ORDER
        .iter()
        .map(|v| {
            let mut row = [Sign::Plus; 3];
            for (k, g) in group.generators().iter().enumerate() {
                row[k] = theta_sign(g, v);
            }
            row
        })
        .collect()
}

/// Character of the restriction of one basis vector to the group.
pub fn basis_character(group: &ActionGroup, v: &BasisVector) -> Character {
    let signs: Vec<Sign> = group
        .generators()
        .iter()
        .map(|g| theta_sign(g, v))
        .collect();
    Character::new(&signs)
}

/// Character multiset of the full section space restricted to the group.
pub fn section_characters(group: &ActionGroup) -> CharMultiset {
    CharMultiset::from_iter(
        BasisVector::TABLE_ORDER
            .iter()
            .map(|v| basis_character(group, v)),
    )
}
