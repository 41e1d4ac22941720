//! Exact word arithmetic in the braid group `B_n`.
//!
//! Words are sequences of signed Artin generator letters over a fixed strand
//! count. Everything here is purely combinatorial: free reduction, inversion,
//! products, conjugation, the half-twist `Δ`, conjugation by `Δ` (the index
//! complement map), and seeded random word generation. Equality *in the group*
//! lives in [`crate::normal_form`].

use std::fmt;
use std::str::FromStr;

use rand_core::RngCore;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{BraidError, Result};

/// One Artin generator letter: `s_i` or `s_i^{-1}`.
///
/// Stored as a nonzero signed integer, `+i` for `s_i` and `-i` for `s_i^{-1}`.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    /// Builds `s_index` (positive) or `s_index^{-1}` (negative).
    pub fn new(index: u32, positive: bool) -> Letter {
        debug_assert!(index >= 1);
        let v = index as i32;
        Letter(if positive { v } else { -v })
    }

    /// Interprets a nonzero signed integer as a letter.
    pub fn from_signed(value: i32) -> Option<Letter> {
        if value == 0 {
            None
        } else {
            Some(Letter(value))
        }
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    /// Generator subscript, always >= 1.
    pub fn index(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// Index complement `s_j -> s_{n-j}`, the effect of conjugating by `Δ`.
    fn complement(self, strands: usize) -> Letter {
        let j = self.index() as i32;
        let n = strands as i32;
        Letter(if self.0 > 0 { n - j } else { -(n - j) })
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A word in the Artin generators of `B_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    /// The empty word in `B_n`.
    pub fn empty(strands: usize) -> Result<BraidWord> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        Ok(BraidWord {
            strands,
            letters: Vec::new(),
        })
    }

    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<BraidWord> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        for l in &letters {
            if l.index() as usize >= strands {
                return Err(BraidError::LetterOutOfRange {
                    index: l.index(),
                    strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Convenience constructor from signed integers (`+i`/`-i`).
    pub fn from_signed(strands: usize, letters: &[i32]) -> Result<BraidWord> {
        let mut ls = Vec::with_capacity(letters.len());
        for &v in letters {
            let l = Letter::from_signed(v).ok_or_else(|| {
                BraidError::InvalidParameter("letter value 0 is not a generator".into())
            })?;
            ls.push(l);
        }
        BraidWord::new(strands, ls)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Literal letter count (word length, not geodesic length).
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn signed_letters(&self) -> impl Iterator<Item = i32> + '_ {
        self.letters.iter().map(|l| l.signed())
    }

    /// True when no adjacent pair of letters is an exact inverse pair.
    pub fn is_freely_reduced(&self) -> bool {
        self.letters
            .windows(2)
            .all(|w| w[0] != w[1].inverse())
    }

    /// Removes all adjacent inverse pairs, cascading, via a single stack scan.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    /// Formal inverse: reversed letters with flipped signs.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Freely reduced concatenation `self · other`.
    pub fn product(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        }
        .free_reduce())
    }

    /// Conjugate `g · x · g^{-1}`, freely reduced.
    pub fn conjugate(x: &BraidWord, g: &BraidWord) -> Result<BraidWord> {
        let gx = g.product(x)?;
        gx.product(&g.inverse())
    }

    /// Conjugation by the half-twist: `Δ^{-1} w Δ`, realized as the index
    /// complement `s_j -> s_{n-j}` on every letter. Involution on words.
    pub fn delta_conjugate(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .map(|l| l.complement(self.strands))
                .collect(),
        }
    }

    /// Concatenation without free reduction. Internal building block.
    pub(crate) fn raw_concat(&self, other: &BraidWord) -> BraidWord {
        debug_assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    pub(crate) fn from_letters_unchecked(strands: usize, letters: Vec<Letter>) -> BraidWord {
        BraidWord { strands, letters }
    }
}

impl fmt::Display for BraidWord {
    /// Compact text form `n:[±i,±j,...]`, e.g. `4:[1,-3,2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.strands)?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", l.signed())?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    /// Parses the compact text form `n:[±i,±j,...]`, e.g. `4:[1,-3,2]`.
    fn from_str(s: &str) -> Result<BraidWord> {
        let parse_err = |reason: &str| BraidError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (head, tail) = s
            .split_once(':')
            .ok_or_else(|| parse_err("expected `n:[...]`"))?;
        let strands: usize = head
            .trim()
            .parse()
            .map_err(|_| parse_err("strand count is not an integer"))?;
        let tail = tail.trim();
        let inner = tail
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| parse_err("letters must be bracketed"))?;
        let mut letters = Vec::new();
        for piece in inner.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let v: i32 = piece
                .parse()
                .map_err(|_| parse_err("letter is not an integer"))?;
            letters.push(v);
        }
        BraidWord::from_signed(strands, &letters)
    }
}

impl Serialize for BraidWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// An ordered tuple of words over a common `B_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidTuple {
    strands: usize,
    entries: Vec<BraidWord>,
}

impl BraidTuple {
    pub fn new(entries: Vec<BraidWord>) -> Result<BraidTuple> {
        let first = entries
            .first()
            .ok_or_else(|| BraidError::InvalidParameter("tuple must be non-empty".into()))?;
        let strands = first.strands();
        for e in &entries {
            if e.strands() != strands {
                return Err(BraidError::StrandMismatch {
                    left: strands,
                    right: e.strands(),
                });
            }
        }
        Ok(BraidTuple { strands, entries })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn entries(&self) -> &[BraidWord] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        // Constructor enforces non-emptiness.
        self.entries.is_empty()
    }
}

/// The half-twist `Δ = (s_1…s_{n-1})(s_1…s_{n-2})…(s_1 s_2)s_1`.
///
/// Its square generates the center of `B_n`; its word length is `n(n-1)/2`.
pub fn half_twist(strands: usize) -> Result<BraidWord> {
    if strands < 2 {
        return Err(BraidError::TooFewStrands(strands));
    }
    let mut letters = Vec::with_capacity(strands * (strands - 1) / 2);
    for row in (1..strands).rev() {
        for i in 1..=row {
            letters.push(Letter::new(i as u32, true));
        }
    }
    Ok(BraidWord { strands, letters })
}

/// `Δ^exponent` as a literal word (inverted half-twists for negative powers).
pub fn delta_power(strands: usize, exponent: i64) -> Result<BraidWord> {
    let delta = half_twist(strands)?;
    let block = if exponent >= 0 {
        delta
    } else {
        delta.inverse()
    };
    let mut letters = Vec::with_capacity(block.len() * exponent.unsigned_abs() as usize);
    for _ in 0..exponent.unsigned_abs() {
        letters.extend_from_slice(block.letters());
    }
    Ok(BraidWord { strands, letters })
}

/// Parameters for deterministic random word generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub strands: usize,
    pub target_length: usize,
    pub seed: u64,
}

/// Draws a uniform integer in `0..bound` from the raw RNG stream.
///
/// Widening-multiply rejection sampling; stable for a fixed stream regardless
/// of the rand crate's own distribution internals.
pub(crate) fn uniform_below(rng: &mut impl RngCore, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    loop {
        let x = rng.next_u64();
        let m = (x as u128) * (bound as u128);
        let lo = m as u64;
        if lo >= bound {
            return (m >> 64) as u64;
        }
        // Low slice may be biased: accept only above the rejection threshold.
        let threshold = bound.wrapping_neg() % bound;
        if lo >= threshold {
            return (m >> 64) as u64;
        }
    }
}

/// Random freely reduced word over an allowed set of generator indices.
///
/// Uniform walk on signed letters that never picks the exact inverse of the
/// previous letter, so the output is freely reduced by construction.
pub fn random_freely_reduced_over(
    strands: usize,
    allowed: &[u32],
    target_length: usize,
    rng: &mut impl RngCore,
) -> Result<BraidWord> {
    if strands < 2 {
        return Err(BraidError::TooFewStrands(strands));
    }
    if allowed.is_empty() {
        return Err(BraidError::InvalidParameter(
            "allowed generator set is empty".into(),
        ));
    }
    for &i in allowed {
        if i == 0 || i as usize >= strands {
            return Err(BraidError::LetterOutOfRange { index: i, strands });
        }
    }
    let signed: Vec<i32> = allowed
        .iter()
        .flat_map(|&i| [i as i32, -(i as i32)])
        .collect();
    let mut letters: Vec<Letter> = Vec::with_capacity(target_length);
    for _ in 0..target_length {
        let choice = match letters.last() {
            None => signed[uniform_below(rng, signed.len() as u64) as usize],
            Some(prev) => {
                let forbidden = -prev.signed();
                // Draw from the alphabet minus the immediate inverse by
                // skipping over its slot.
                let k = uniform_below(rng, signed.len() as u64 - 1) as usize;
                let pos = signed.iter().position(|&v| v == forbidden).unwrap();
                if k < pos {
                    signed[k]
                } else {
                    signed[k + 1]
                }
            }
        };
        letters.push(Letter::from_signed(choice).unwrap());
    }
    Ok(BraidWord { strands, letters })
}

/// Seeded random freely reduced word over all generators of `B_n`.
pub fn random_freely_reduced(spec: &RandomSpec) -> Result<BraidWord> {
    if spec.target_length < 1 {
        return Err(BraidError::InvalidParameter(
            "target_length must be at least 1".into(),
        ));
    }
    let mut rng = seeded_rng(spec.seed);
    let allowed: Vec<u32> = (1..spec.strands as u32).collect();
    random_freely_reduced_over(spec.strands, &allowed, spec.target_length, &mut rng)
}

/// The toolkit's deterministic RNG: a fixed ChaCha stream per 64-bit seed.
pub fn seeded_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand_core::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
