//! Character theory of elementary abelian 2-groups of rank 1..=3.
//!
//! Everything here is exact. A character is stored by its values on the
//! group generators; values on arbitrary elements follow by multiplicativity.
//! Trace vectors and character multisets are indexed against the canonical
//! element order `(1, g1, g2, g3, g1g2, g1g3, g2g3, g1g2g3)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_rational::Rational64;
use thiserror::Error;

use crate::sign::Sign;

pub const MAX_RANK: usize = 3;

/// Canonical element order for a rank-r group, as generator bitmasks
/// (bit k set means generator k+1 occurs in the product).
pub fn canonical_masks(rank: usize) -> &'static [u8] {
    match rank {
        1 => &[0b0, 0b1],
        2 => &[0b00, 0b01, 0b10, 0b11],
        3 => &[0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111],
        _ => panic!("unsupported rank {rank}"),
    }
}

/// Display label for the canonical element with the given generator mask.
pub fn element_label(mask: u8) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let mut out = String::new();
    for k in 0..MAX_RANK {
        if mask & (1 << k) != 0 {
            out.push('g');
            out.push(char::from_digit(k as u32 + 1, 10).unwrap());
        }
    }
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharError {
    #[error("trace vector and character live over groups of different rank ({0} vs {1})")]
    RankMismatch(usize, usize),
    #[error("trace vector is not the character of a representation: multiplicity of {character} is {multiplicity}")]
    NonRepresentation {
        character: Character,
        multiplicity: Rational64,
    },
    #[error("malformed sign string {0:?}")]
    BadSignString(String),
}

/// A +-1-valued multiplicative character, determined by its values on generators.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Character {
    rank: usize,
    gen_signs: [Sign; MAX_RANK],
}

impl Character {
    pub fn new(gen_signs: &[Sign]) -> Self {
        assert!((1..=MAX_RANK).contains(&gen_signs.len()));
        let mut signs = [Sign::Plus; MAX_RANK];
        signs[..gen_signs.len()].copy_from_slice(gen_signs);
        Character {
            rank: gen_signs.len(),
            gen_signs: signs,
        }
    }

    pub fn trivial(rank: usize) -> Self {
        Character::new(&vec![Sign::Plus; rank])
    }

    pub fn is_trivial(&self) -> bool {
        self.gen_signs[..self.rank].iter().all(|s| s.is_plus())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gen_signs(&self) -> &[Sign] {
        &self.gen_signs[..self.rank]
    }

    /// Value at the element with the given generator mask.
    pub fn value_at_mask(&self, mask: u8) -> Sign {
        let mut s = Sign::Plus;
        for k in 0..self.rank {
            if mask & (1 << k) != 0 {
                s *= self.gen_signs[k];
            }
        }
        s
    }

    /// Values at all elements in canonical order, as a trace vector of a
    /// one-dimensional representation.
    pub fn trace_vector(&self) -> TraceVector {
        TraceVector::new(
            self.rank,
            canonical_masks(self.rank)
                .iter()
                .map(|&m| self.value_at_mask(m).as_i64())
                .collect(),
        )
    }

    /// All 2^r characters of the rank-r group, in lexicographic order of their
    /// generator sign strings with `+` before `-`.
    pub fn all(rank: usize) -> Vec<Character> {
        let n = 1usize << rank;
        (0..n)
            .map(|bits| {
                let signs: Vec<Sign> = (0..rank)
                    .map(|k| Sign::from_parity(bits & (1 << (rank - 1 - k)) != 0))
                    .collect();
                Character::new(&signs)
            })
            .collect()
    }

    /// Parse a parenthesized or bare sign string such as `(+-+)` or `+-+`.
    pub fn parse(text: &str) -> Result<Character, CharError> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let signs: Option<Vec<Sign>> = inner.chars().map(Sign::parse).collect();
        match signs {
            Some(v) if (1..=MAX_RANK).contains(&v.len()) => Ok(Character::new(&v)),
            _ => Err(CharError::BadSignString(text.to_string())),
        }
    }

    fn render(&self, glyphs: bool) -> String {
        let mut out = String::from("(");
        for s in self.gen_signs() {
            out.push(if glyphs { s.glyph() } else { s.ascii() });
        }
        out.push(')');
        out
    }

    /// `(++-)` with the typeset minus, for markdown output.
    pub fn display_glyphs(&self) -> String {
        self.render(true)
    }
}

impl Mul for Character {
    type Output = Character;
    fn mul(self, rhs: Character) -> Character {
        assert_eq!(self.rank, rhs.rank, "character rank mismatch");
        let signs: Vec<Sign> = self
            .gen_signs()
            .iter()
            .zip(rhs.gen_signs())
            .map(|(&a, &b)| a * b)
            .collect();
        Character::new(&signs)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

/// Integer traces of the canonical group elements on some representation space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceVector {
    rank: usize,
    values: Vec<i64>,
}

impl TraceVector {
    pub fn new(rank: usize, values: Vec<i64>) -> Self {
        assert_eq!(values.len(), 1 << rank, "trace vector length");
        TraceVector { rank, values }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Trace of the identity, i.e. the dimension of the represented space.
    pub fn dim(&self) -> i64 {
        self.values[0]
    }

    pub fn sub_scaled(&self, other: &TraceVector, factor: i64) -> TraceVector {
        assert_eq!(self.rank, other.rank);
        TraceVector::new(
            self.rank,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - factor * b)
                .collect(),
        )
    }
}

/// Multiset of characters with non-negative multiplicities.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CharMultiset {
    counts: BTreeMap<Character, u64>,
}

impl FromIterator<Character> for CharMultiset {
    fn from_iter<I: IntoIterator<Item = Character>>(iter: I) -> Self {
        let mut ms = CharMultiset::new();
        for c in iter {
            ms.add(c, 1);
        }
        ms
    }
}

impl CharMultiset {
    pub fn new() -> Self {
        CharMultiset::default()
    }

    pub fn add(&mut self, c: Character, n: u64) {
        if n > 0 {
            *self.counts.entry(c).or_insert(0) += n;
        }
    }

    /// Remove one copy; panics if absent (callers check occurrence first).
    pub fn remove_one(&mut self, c: Character) {
        let entry = self.counts.get_mut(&c).expect("character not present");
        *entry -= 1;
        if *entry == 0 {
            self.counts.remove(&c);
        }
    }

    pub fn mult_of(&self, c: Character) -> u64 {
        self.counts.get(&c).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Character, &u64)> {
        self.counts.iter()
    }

    pub fn is_regular(&self, rank: usize) -> bool {
        self.counts.len() == 1 << rank && self.counts.values().all(|&m| m == 1)
    }

    pub fn trace_vector(&self, rank: usize) -> TraceVector {
        let values = canonical_masks(rank)
            .iter()
            .map(|&m| {
                self.counts
                    .iter()
                    .map(|(c, &n)| n as i64 * c.value_at_mask(m).as_i64())
                    .sum()
            })
            .collect();
        TraceVector::new(rank, values)
    }

    /// Pointwise product with a fixed character (twist).
    pub fn twist(&self, by: Character) -> CharMultiset {
        let mut out = CharMultiset::new();
        for (&c, &n) in &self.counts {
            out.add(c * by, n);
        }
        out
    }

    /// Deterministic rendering such as `3(+++) + 2(+-+)`.
    pub fn describe(&self) -> String {
        if self.counts.is_empty() {
            return "0".to_string();
        }
        self.counts
            .iter()
            .map(|(c, &n)| {
                if n == 1 {
                    format!("{c}")
                } else {
                    format!("{n}{c}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Multiplicity of the character in the representation with the given trace
/// vector, as an exact rational: `(1/|G|) sum_g chi(g) t(g)`.
///
/// A genuine representation always yields a non-negative integer; callers that
/// need that guarantee go through [`decompose_trace`].
pub fn multiplicity(t: &TraceVector, chi: &Character) -> Result<Rational64, CharError> {
    if t.rank() != chi.rank() {
        return Err(CharError::RankMismatch(t.rank(), chi.rank()));
    }
    let order = 1i64 << t.rank();
    let dot: i64 = canonical_masks(t.rank())
        .iter()
        .zip(t.values())
        .map(|(&m, &v)| chi.value_at_mask(m).as_i64() * v)
        .sum();
    Ok(Rational64::new(dot, order))
}

/// The unique character multiset whose trace vector equals `t`.
///
/// Fails with [`CharError::NonRepresentation`] when any multiplicity comes out
/// non-integral or negative; that failure is the engine's misprint detector.
pub fn decompose_trace(t: &TraceVector) -> Result<CharMultiset, CharError> {
    let mut out = CharMultiset::new();
    for chi in Character::all(t.rank()) {
        let m = multiplicity(t, &chi)?;
        if !m.is_integer() || m < Rational64::from_integer(0) {
            return Err(CharError::NonRepresentation {
                character: chi,
                multiplicity: m,
            });
        }
        out.add(chi, m.to_integer() as u64);
    }
    Ok(out)
}

/// Pointwise trace vector of a multiset; exact inverse of [`decompose_trace`].
pub fn trace_of_multiset(m: &CharMultiset, rank: usize) -> TraceVector {
    m.trace_vector(rank)
}
