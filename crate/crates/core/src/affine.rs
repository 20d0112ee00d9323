//! Exact algebra of sign-plus-half-period affine involutions on products of
//! elliptic curves.
//!
//! An element acts on each factor as `z -> s z + c` with `s = +-1` and `c` a
//! half period. Shifts are 2-torsion, so every element squares to the identity
//! and the 64-element ambient group generated by the seven basic involutions
//! is elementary abelian.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use thiserror::Error;

use crate::characters::{canonical_masks, element_label};
use crate::sign::Sign;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("unknown generator token {0:?}")]
    UnknownToken(String),
    #[error("elements act on different numbers of factors ({0} vs {1})")]
    FactorCountMismatch(usize, usize),
    #[error("expected {expected} generators, got {got}")]
    WrongGeneratorCount { expected: usize, got: usize },
    #[error("generators are redundant: the generated group has {got} elements, not {expected}")]
    RedundantGenerators { expected: usize, got: usize },
    #[error("fixed locus of the identity is the whole variety")]
    IdentityFixedLocus,
}

/// A 2-torsion point `b1/2 + b2*tau/2` of one elliptic factor.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct HalfPeriod {
    pub half: bool,
    pub half_tau: bool,
}

impl HalfPeriod {
    pub const ZERO: HalfPeriod = HalfPeriod {
        half: false,
        half_tau: false,
    };

    pub fn new(half: bool, half_tau: bool) -> Self {
        HalfPeriod { half, half_tau }
    }

    pub fn is_zero(self) -> bool {
        !self.half && !self.half_tau
    }

}

/// Componentwise addition mod 2.
impl std::ops::Add for HalfPeriod {
    type Output = HalfPeriod;
    fn add(self, other: HalfPeriod) -> HalfPeriod {
        HalfPeriod {
            half: self.half ^ other.half,
            half_tau: self.half_tau ^ other.half_tau,
        }
    }
}

impl fmt::Display for HalfPeriod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.half, self.half_tau) {
            (false, false) => write!(f, "0"),
            (true, false) => write!(f, "1/2"),
            (false, true) => write!(f, "t/2"),
            (true, true) => write!(f, "(1+t)/2"),
        }
    }
}

/// Action on a single elliptic factor: `z -> sign * z + shift`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FactorAction {
    pub sign: Sign,
    pub shift: HalfPeriod,
}

impl FactorAction {
    pub const IDENTITY: FactorAction = FactorAction {
        sign: Sign::Plus,
        shift: HalfPeriod::ZERO,
    };

    pub fn new(sign: Sign, shift: HalfPeriod) -> Self {
        FactorAction { sign, shift }
    }

    pub fn is_identity(self) -> bool {
        self.sign.is_plus() && self.shift.is_zero()
    }

    /// Composition `(s1, c1) o (s2, c2) = (s1 s2, c1 + c2)`. The sign never
    /// acts on the shift because shifts are 2-torsion: `-c = c` mod lattice.
    pub fn compose(self, other: FactorAction) -> FactorAction {
        FactorAction {
            sign: self.sign * other.sign,
            shift: self.shift + other.shift,
        }
    }
}

/// The seven basic involution tokens of the generator-word grammar.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Token {
    I1,
    I2,
    I3,
    I12,
    I13,
    I23,
    I123,
}

impl Token {
    pub const ALL: [Token; 7] = [
        Token::I1,
        Token::I2,
        Token::I3,
        Token::I12,
        Token::I13,
        Token::I23,
        Token::I123,
    ];

    pub fn parse(text: &str) -> Result<Token, GroupError> {
        match text.to_ascii_lowercase().as_str() {
            "i1" => Ok(Token::I1),
            "i2" => Ok(Token::I2),
            "i3" => Ok(Token::I3),
            "i12" => Ok(Token::I12),
            "i13" => Ok(Token::I13),
            "i23" => Ok(Token::I23),
            "i123" => Ok(Token::I123),
            other => Err(GroupError::UnknownToken(other.to_string())),
        }
    }

    pub fn ascii(self) -> &'static str {
        match self {
            Token::I1 => "i1",
            Token::I2 => "i2",
            Token::I3 => "i3",
            Token::I12 => "i12",
            Token::I13 => "i13",
            Token::I23 => "i23",
            Token::I123 => "i123",
        }
    }

    /// Typeset form with iota and subscript digits, used in markdown tables.
    pub fn glyph(self) -> &'static str {
        match self {
            Token::I1 => "\u{3b9}\u{2081}",
            Token::I2 => "\u{3b9}\u{2082}",
            Token::I3 => "\u{3b9}\u{2083}",
            Token::I12 => "\u{3b9}\u{2081}\u{2082}",
            Token::I13 => "\u{3b9}\u{2081}\u{2083}",
            Token::I23 => "\u{3b9}\u{2082}\u{2083}",
            Token::I123 => "\u{3b9}\u{2081}\u{2082}\u{2083}",
        }
    }

    /// Per-factor actions on the three elliptic factors. The flip `i_a`
    /// negates factor `a`; `i_ab` applies the half-shifted flip `z -> -z + 1/2`
    /// on factors `a` and `b`; `i123` applies `z -> -z + tau/2` on all three.
    pub fn factor_actions(self) -> [FactorAction; 3] {
        let id = FactorAction::IDENTITY;
        let flip = FactorAction::new(Sign::Minus, HalfPeriod::ZERO);
        let t = FactorAction::new(Sign::Minus, HalfPeriod::new(true, false));
        let tau = FactorAction::new(Sign::Minus, HalfPeriod::new(false, true));
        match self {
            Token::I1 => [flip, id, id],
            Token::I2 => [id, flip, id],
            Token::I3 => [id, id, flip],
            Token::I12 => [t, t, id],
            Token::I13 => [t, id, t],
            Token::I23 => [id, t, t],
            Token::I123 => [tau, tau, tau],
        }
    }
}

/// One affine involution of the product, with a canonical token word.
///
/// Equality and hashing use the factor actions only: two elements are equal
/// iff they act identically, whatever words produced them.
#[derive(Clone, Debug)]
pub struct GroupElement {
    factors: Vec<FactorAction>,
    word: BTreeSet<Token>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for GroupElement {}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.factors.hash(state);
    }
}

/// The relation `i12 * i13 * i23 = 1` gives every element two token words;
/// the canonical one contains at most one of the three tokens.
fn normalize_word(mut word: BTreeSet<Token>) -> BTreeSet<Token> {
    let pair_tokens = [Token::I12, Token::I13, Token::I23];
    let present = pair_tokens.iter().filter(|t| word.contains(t)).count();
    if present >= 2 {
        for t in pair_tokens {
            if !word.remove(&t) {
                word.insert(t);
            }
        }
    }
    word
}

impl GroupElement {
    pub fn identity(num_factors: usize) -> Self {
        GroupElement {
            factors: vec![FactorAction::IDENTITY; num_factors],
            word: BTreeSet::new(),
        }
    }

    /// Build from explicit factor actions (no token word available).
    pub fn from_factors(factors: Vec<FactorAction>) -> Self {
        GroupElement {
            factors,
            word: BTreeSet::new(),
        }
    }

    pub fn basic(token: Token) -> Self {
        GroupElement {
            factors: token.factor_actions().to_vec(),
            word: BTreeSet::from([token]),
        }
    }

    pub fn factors(&self) -> &[FactorAction] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.iter().all(|f| f.is_identity())
    }

    /// Signs of the linear parts, one per factor.
    pub fn factor_signs(&self) -> Vec<Sign> {
        self.factors.iter().map(|f| f.sign).collect()
    }

    /// True when every factor is a translation (possibly trivial).
    pub fn is_translation(&self) -> bool {
        self.factors.iter().all(|f| f.sign.is_plus())
    }

    /// Canonical token word in ASCII, empty string for the identity.
    pub fn word_ascii(&self) -> String {
        self.word
            .iter()
            .map(|t| t.ascii())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Typeset token word, `1` for the identity.
    pub fn word_glyphs(&self) -> String {
        if self.word.is_empty() {
            return "1".to_string();
        }
        self.word.iter().map(|t| t.glyph()).collect()
    }

    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        if self.num_factors() != other.num_factors() {
            return Err(GroupError::FactorCountMismatch(
                self.num_factors(),
                other.num_factors(),
            ));
        }
        let factors = self
            .factors
            .iter()
            .zip(&other.factors)
            .map(|(a, b)| a.compose(*b))
            .collect();
        // product word = symmetric difference (tokens are commuting involutions)
        let word = normalize_word(
            self.word
                .symmetric_difference(&other.word)
                .copied()
                .collect(),
        );
        Ok(GroupElement { factors, word })
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() && !self.is_identity() {
            let parts: Vec<String> = self
                .factors
                .iter()
                .map(|fa| format!("({}{})", fa.sign, fa.shift))
                .collect();
            write!(f, "[{}]", parts.join(", "))
        } else if self.is_identity() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.word_ascii())
        }
    }
}

/// Parse a whitespace-separated generator word such as `"i1 i3 i13"`.
/// The empty word parses to the identity on three factors.
pub fn parse_word(word: &str) -> Result<GroupElement, GroupError> {
    let mut out = GroupElement::identity(3);
    for tok in word.split_whitespace() {
        out = out.compose(&GroupElement::basic(Token::parse(tok)?))?;
    }
    Ok(out)
}

/// The group generated by `r` commuting involutions, elements listed in the
/// canonical order `(1, g1, g2, g3, g1g2, g1g3, g2g3, g1g2g3)`.
#[derive(Clone, Debug)]
pub struct ActionGroup {
    rank: usize,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
}

impl ActionGroup {
    pub fn generate(generators: Vec<GroupElement>) -> Result<ActionGroup, GroupError> {
        let rank = generators.len();
        if !(1..=3).contains(&rank) {
            return Err(GroupError::WrongGeneratorCount {
                expected: 3,
                got: rank,
            });
        }
        let n = generators[0].num_factors();
        let mut elements = Vec::with_capacity(1 << rank);
        for &mask in canonical_masks(rank) {
            let mut e = GroupElement::identity(n);
            for (k, g) in generators.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    e = e.compose(g)?;
                }
            }
            elements.push(e);
        }
        let distinct: std::collections::HashSet<&GroupElement> = elements.iter().collect();
        if distinct.len() != elements.len() {
            return Err(GroupError::RedundantGenerators {
                expected: 1 << rank,
                got: distinct.len(),
            });
        }
        Ok(ActionGroup {
            rank,
            generators,
            elements,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.iter().any(|e| e == g)
    }

    pub fn element_labels(&self) -> Vec<String> {
        canonical_masks(self.rank)
            .iter()
            .map(|&m| element_label(m))
            .collect()
    }
}

/// The ambient order-64 group generated by all seven basic involutions.
pub fn ambient_group_elements() -> Vec<GroupElement> {
    let mut out = vec![GroupElement::identity(3)];
    for token in Token::ALL {
        let g = GroupElement::basic(token);
        let mut extended = out.clone();
        for e in &out {
            let p = e.compose(&g).unwrap();
            if !out.contains(&p) {
                extended.push(p);
            }
        }
        out = extended;
    }
    out
}

/// Fixed locus of one factor action.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FactorLocus {
    /// Identity factor: the whole curve.
    FullCurve,
    /// Flip factor `z -> -z + c`: the four solutions of `2z = c`, listed as
    /// exact `(x, y)` coordinates meaning `x + y*tau` with `x, y` in `[0,1)`.
    FourPoints([(Rational64, Rational64); 4]),
    /// Nonzero translation: empty.
    Empty,
}

/// Product fixed locus of an element acting on elliptic factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedLocus {
    pub factors: Vec<FactorLocus>,
}

impl FixedLocus {
    pub fn is_empty(&self) -> bool {
        self.factors.contains(&FactorLocus::Empty)
    }

    /// Complex dimension, when non-empty.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            Some(
                self.factors
                    .iter()
                    .filter(|f| **f == FactorLocus::FullCurve)
                    .count(),
            )
        }
    }

    /// Number of isolated points when the locus is finite.
    pub fn point_count(&self) -> Option<usize> {
        match self.dimension() {
            Some(0) => Some(
                self.factors
                    .iter()
                    .map(|f| match f {
                        FactorLocus::FourPoints(_) => 4,
                        _ => unreachable!(),
                    })
                    .product(),
            ),
            _ => None,
        }
    }
}

fn half(r: bool) -> Rational64 {
    if r {
        Rational64::new(1, 2)
    } else {
        Rational64::from_integer(0)
    }
}

/// Fixed locus on the product abelian variety. Errors on the identity.
pub fn fixed_locus(g: &GroupElement) -> Result<FixedLocus, GroupError> {
    if g.is_identity() {
        return Err(GroupError::IdentityFixedLocus);
    }
    let factors = g
        .factors()
        .iter()
        .map(|fa| match (fa.sign, fa.shift.is_zero()) {
            (Sign::Plus, true) => FactorLocus::FullCurve,
            (Sign::Plus, false) => FactorLocus::Empty,
            (Sign::Minus, _) => {
                // solutions of 2z = c: z = c/2 plus any half period
                let x0 = half(fa.shift.half) / 2;
                let y0 = half(fa.shift.half_tau) / 2;
                let h = Rational64::new(1, 2);
                FactorLocus::FourPoints([
                    (x0, y0),
                    (x0 + h, y0),
                    (x0, y0 + h),
                    (x0 + h, y0 + h),
                ])
            }
        })
        .collect();
    Ok(FixedLocus { factors })
}

/// How a nontrivial affine involution sits relative to an invariant ample
/// hypersurface.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ElementFreeness {
    /// Empty fixed locus on the ambient variety; free everywhere.
    Free,
    /// Finitely many fixed points on the ambient variety. A generic invariant
    /// hypersurface misses them, so freeness on the hypersurface is an
    /// assumption of the construction, not a computation.
    IsolatedFixedPoints { points: usize },
    /// Positive-dimensional fixed locus; an ample hypersurface always meets
    /// it, so the action on the hypersurface cannot be free.
    MeetsEveryAmpleHypersurface,
}

impl ElementFreeness {
    pub fn free_on_abelian(self) -> bool {
        self == ElementFreeness::Free
    }

    pub fn free_on_invariant_hypersurface(self) -> bool {
        !matches!(self, ElementFreeness::MeetsEveryAmpleHypersurface)
    }
}

/// Freeness verdict for one nontrivial element over elliptic factors.
pub fn element_freeness(g: &GroupElement) -> Result<ElementFreeness, GroupError> {
    let locus = fixed_locus(g)?;
    Ok(match locus.dimension() {
        None => ElementFreeness::Free,
        Some(0) => ElementFreeness::IsolatedFixedPoints {
            points: locus.point_count().unwrap(),
        },
        Some(_) => ElementFreeness::MeetsEveryAmpleHypersurface,
    })
}

/// Per-element freeness verdicts for all nontrivial elements, in canonical
/// order starting from `g1`.
pub fn freeness_verdicts(group: &ActionGroup) -> Vec<(String, ElementFreeness)> {
    group
        .elements()
        .iter()
        .zip(group.element_labels())
        .skip(1)
        .map(|(g, label)| (label, element_freeness(g).unwrap()))
        .collect()
}

/// True iff every nontrivial element has empty fixed locus on the abelian
/// variety.
pub fn is_free_on_abelian(group: &ActionGroup) -> bool {
    group
        .elements()
        .iter()
        .skip(1)
        .all(|g| element_freeness(g).unwrap() == ElementFreeness::Free)
}

/// Commutation obstruction for the lifts of two elements to the degree-2
/// bundle of each factor: `prod_a (-1)^(c1 d2 + c2 d1)` over the translation
/// parts. `Plus` means the lifted actions on sections commute.
///
/// With the symplectic form normalized to `E(1/2, tau/2) = 1/4` and the
/// degree-2 weight, the exponent per factor is exactly `c1 d2 + c2 d1` mod 2.
pub fn commutation_pairing(a: &GroupElement, b: &GroupElement) -> Result<Sign, GroupError> {
    if a.num_factors() != b.num_factors() {
        return Err(GroupError::FactorCountMismatch(
            a.num_factors(),
            b.num_factors(),
        ));
    }
    let mut parity = false;
    for (fa, fb) in a.factors().iter().zip(b.factors()) {
        let (c1, c2) = (fa.shift.half, fa.shift.half_tau);
        let (d1, d2) = (fb.shift.half, fb.shift.half_tau);
        parity ^= c1 & d2;
        parity ^= c2 & d1;
    }
    Ok(Sign::from_parity(parity))
}
