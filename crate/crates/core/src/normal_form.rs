//! Garside/Thurston left normal form in `B_n` and exact equality testing.
//!
//! Elements are written canonically as `Δ^p A_1 … A_k` where each `A_j` is a
//! positive permutation braid (every pair of strands crosses at most once),
//! no factor is trivial or `Δ`, and every adjacent pair is left-weighted: the
//! starting set of the right factor is contained in the finishing set of the
//! left factor. Two words are equal in `B_n` exactly when these data agree,
//! which makes the normal form the toolkit's ground-truth equality oracle,
//! fully independent of the handle-reduction pipeline.
//!
//! Words are absorbed letter by letter into a running form `A_1 … A_k Δ^p`
//! (delta power kept on the right while building, so a negative letter only
//! touches the tail), re-normalizing locally after each push. Local
//! left-weightedness of all adjacent pairs implies global canonicity, so the
//! final fixpoint is the normal form no matter the order of local fixes.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::braid::{delta_power, BraidWord, Letter};
use crate::error::{BraidError, Result};

/// A positive permutation braid factor, stored as the strand permutation
/// `map[start] = end` (0-based) together with its inverse.
#[derive(Clone, Eq)]
pub struct PermutationBraid {
    map: Vec<u16>,
    inv: Vec<u16>,
}

impl PartialEq for PermutationBraid {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}

impl std::fmt::Debug for PermutationBraid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermutationBraid({:?})", self.one_indexed())
    }
}

impl PermutationBraid {
    pub fn identity(n: usize) -> PermutationBraid {
        let map: Vec<u16> = (0..n as u16).collect();
        PermutationBraid {
            inv: map.clone(),
            map,
        }
    }

    /// The half-twist factor: strand `x` ends at `n-1-x`.
    pub fn delta(n: usize) -> PermutationBraid {
        let map: Vec<u16> = (0..n as u16).rev().collect();
        PermutationBraid {
            inv: map.clone(),
            map,
        }
    }

    /// The single-crossing factor for generator slot `t` (0-based, `s_{t+1}`).
    fn transposition(n: usize, t: usize) -> PermutationBraid {
        let mut f = PermutationBraid::identity(n);
        f.map.swap(t, t + 1);
        f.inv.swap(t, t + 1);
        f
    }

    /// Builds from 1-indexed strand images, validating bijectivity.
    pub fn from_one_indexed(images: &[usize]) -> Result<PermutationBraid> {
        let n = images.len();
        if n < 2 {
            return Err(BraidError::InvalidParameter(
                "permutation needs at least 2 strands".into(),
            ));
        }
        let mut map = vec![u16::MAX; n];
        let mut inv = vec![u16::MAX; n];
        for (start, &img) in images.iter().enumerate() {
            if img < 1 || img > n || inv[img - 1] != u16::MAX {
                return Err(BraidError::InvalidParameter(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            map[start] = (img - 1) as u16;
            inv[img - 1] = start as u16;
        }
        Ok(PermutationBraid { map, inv })
    }

    /// 1-indexed strand images, the JSON fixture form.
    pub fn one_indexed(&self) -> Vec<usize> {
        self.map.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.map.len();
        self.map
            .iter()
            .enumerate()
            .all(|(x, &y)| y as usize == n - 1 - x)
    }

    /// `s_{t+1}` lies in the starting set: strands entering at `t`, `t+1`
    /// cross immediately.
    fn starts_with(&self, t: usize) -> bool {
        self.map[t] > self.map[t + 1]
    }

    /// `s_{t+1}` lies in the finishing set: strands leaving at `t`, `t+1`
    /// crossed last.
    fn finishes_with(&self, t: usize) -> bool {
        self.inv[t] > self.inv[t + 1]
    }

    /// Appends a crossing on the right (`A · s_{t+1}`), swapping end slots.
    fn push_back_swap(&mut self, t: usize) {
        let a = self.inv[t] as usize;
        let b = self.inv[t + 1] as usize;
        self.map[a] = (t + 1) as u16;
        self.map[b] = t as u16;
        self.inv.swap(t, t + 1);
    }

    /// Removes a crossing from the front (`s_{t+1} · B'`), swapping starts.
    fn pop_front_swap(&mut self, t: usize) {
        self.map.swap(t, t + 1);
        self.inv[self.map[t] as usize] = t as u16;
        self.inv[self.map[t + 1] as usize] = (t + 1) as u16;
    }

    /// Conjugation by the half-twist: flips both starts and ends.
    fn delta_conjugated(&self) -> PermutationBraid {
        let n = self.map.len();
        let mut map = vec![0u16; n];
        let mut inv = vec![0u16; n];
        for x in 0..n {
            let y = (n - 1 - self.map[n - 1 - x] as usize) as u16;
            map[x] = y;
            inv[y as usize] = x as u16;
        }
        PermutationBraid { map, inv }
    }

    /// Canonical positive word: row-by-row bubble factorization, one letter
    /// per inversion.
    pub fn canonical_letters(&self) -> Vec<Letter> {
        let n = self.map.len();
        let mut seq: Vec<u16> = self.inv.clone();
        let mut swaps: Vec<usize> = Vec::new();
        for target in (1..n).rev() {
            let mut pos = seq.iter().position(|&v| v as usize == target).unwrap();
            while pos < target {
                seq.swap(pos, pos + 1);
                swaps.push(pos);
                pos += 1;
            }
        }
        swaps
            .iter()
            .rev()
            .map(|&t| Letter::new((t + 1) as u32, true))
            .collect()
    }
}

/// Left normal form `Δ^inf · A_1 … A_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    strands: usize,
    inf: i64,
    factors: Vec<PermutationBraid>,
}

impl NormalForm {
    pub fn strands(&self) -> usize {
        self.strands
    }

    /// The infimum: the power of `Δ` in the canonical form.
    pub fn inf(&self) -> i64 {
        self.inf
    }

    pub fn factors(&self) -> &[PermutationBraid] {
        &self.factors
    }

    /// Canonical length (number of permutation-braid factors).
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }
}

/// Transfers front letters of `b` to the back of `a` until the pair is
/// left-weighted (`S(b) ⊆ F(a)`). Returns whether anything moved.
fn make_left_weighted(a: &mut PermutationBraid, b: &mut PermutationBraid) -> bool {
    let n = a.degree();
    let mut changed = false;
    let mut t = 0;
    while t + 1 < n {
        if b.starts_with(t) && !a.finishes_with(t) {
            a.push_back_swap(t);
            b.pop_front_swap(t);
            changed = true;
            // A move at slot t only disturbs slots t-1, t, t+1.
            t = t.saturating_sub(1);
        } else {
            t += 1;
        }
    }
    changed
}

/// Brings a right-form chain `A_1 … A_k Δ^p` to its local fixpoint: no
/// identity factors, no `Δ` factors (they migrate right into `p`), and every
/// adjacent pair left-weighted.
fn normalize_chain(factors: &mut Vec<PermutationBraid>, p: &mut i64) {
    loop {
        let mut changed = false;

        let before = factors.len();
        factors.retain(|f| !f.is_identity());
        changed |= factors.len() != before;

        let mut j = 0;
        while j < factors.len() {
            if factors[j].is_delta() {
                factors.remove(j);
                for m in j..factors.len() {
                    factors[m] = factors[m].delta_conjugated();
                }
                *p += 1;
                changed = true;
            } else {
                j += 1;
            }
        }

        for j in 1..factors.len().max(1) {
            let (left, right) = factors.split_at_mut(j);
            changed |= make_left_weighted(&mut left[j - 1], &mut right[0]);
        }

        if !changed {
            return;
        }
    }
}

/// Computes the left normal form of a word. Infallible: word validity is
/// enforced at construction.
pub fn left_normal_form(word: &BraidWord) -> NormalForm {
    let n = word.strands();
    let mut p: i64 = 0;
    let mut factors: Vec<PermutationBraid> = Vec::new();
    for letter in word.letters() {
        // The chain is A_1 … A_k Δ^p; pulling the new letter through Δ^p
        // complements its index when p is odd.
        let t0 = letter.index() as usize - 1;
        let t = if p.rem_euclid(2) == 1 { n - 2 - t0 } else { t0 };
        if letter.is_positive() {
            factors.push(PermutationBraid::transposition(n, t));
        } else {
            // s^{-1} = (s^{-1} Δ) · Δ^{-1}; the parenthesized part is the
            // permutation braid x -> δ(τ_t(x)).
            let mut c = PermutationBraid::delta(n);
            c.pop_front_swap(t);
            p -= 1;
            factors.push(c);
        }
        normalize_chain(&mut factors, &mut p);
    }
    // Convert right form to left form: Δ^p commutes to the front by
    // conjugating every factor p times.
    if p.rem_euclid(2) == 1 {
        for f in &mut factors {
            *f = f.delta_conjugated();
        }
    }
    NormalForm {
        strands: n,
        inf: p,
        factors,
    }
}

/// Emits a word equal in `B_n` to the element of `nf`: the delta power as
/// literal half-twists, then each factor's canonical positive word.
pub fn nf_to_word(nf: &NormalForm) -> BraidWord {
    let mut word = delta_power(nf.strands, nf.inf).expect("valid strand count");
    let mut letters: Vec<Letter> = word.letters().to_vec();
    for f in &nf.factors {
        letters.extend(f.canonical_letters());
    }
    word = BraidWord::from_letters_unchecked(nf.strands, letters);
    word.free_reduce()
}

/// Replaces `inf` by `inf mod 2` (in `{0,1}`), dropping a central power of
/// `Δ²`. Idempotent; factors are untouched.
pub fn reduce_mod_delta_squared(nf: &NormalForm) -> NormalForm {
    NormalForm {
        strands: nf.strands,
        inf: nf.inf.rem_euclid(2),
        factors: nf.factors.clone(),
    }
}

/// A mixed-sign word for the element of `nf`, usually far shorter than
/// [`nf_to_word`] when `inf` is negative: each leading `Δ^{-1}` is absorbed
/// into the following factor via `Δ^{-1} A = (A^{-1} Δ)^{-1}`, emitting the
/// complement inverted (at `N - inv(A)` letters) instead of a full half-twist
/// plus the factor (`N + inv(A)` letters).
pub fn fraction_word(nf: &NormalForm) -> BraidWord {
    if nf.inf >= 0 {
        // Already a positive word; positive words are geodesic.
        return nf_to_word(nf);
    }
    let n = nf.strands;
    let m = nf.inf.unsigned_abs() as usize;
    let k = nf.factors.len();
    let paired = m.min(k);
    let mut letters: Vec<Letter> = Vec::new();
    for (i, factor) in nf.factors.iter().take(paired).enumerate() {
        // C_i = A_i^{-1} Δ, pushed through the remaining Δ^{-(m-1-i)}.
        let mut c = factor.complement_to_delta();
        if (m - 1 - i) % 2 == 1 {
            c = c.delta_conjugated();
        }
        let word = c.canonical_letters();
        letters.extend(word.iter().rev().map(|l| l.inverse()));
    }
    if m > k {
        let tail = delta_power(n, -((m - k) as i64)).expect("valid strand count");
        letters.extend_from_slice(tail.letters());
    }
    for factor in nf.factors.iter().skip(paired) {
        letters.extend(factor.canonical_letters());
    }
    BraidWord::from_letters_unchecked(n, letters).free_reduce()
}

/// Exact equality in `B_n` via canonical-form comparison.
pub fn equal_in_braid_group(u: &BraidWord, w: &BraidWord) -> Result<bool> {
    if u.strands() != w.strands() {
        return Err(BraidError::StrandMismatch {
            left: u.strands(),
            right: w.strands(),
        });
    }
    Ok(left_normal_form(u) == left_normal_form(w))
}

#[derive(Serialize, Deserialize)]
struct NormalFormWire {
    n: usize,
    inf: i64,
    factors: Vec<Vec<usize>>,
}

impl Serialize for NormalForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        NormalFormWire {
            n: self.strands,
            inf: self.inf,
            factors: self.factors.iter().map(|f| f.one_indexed()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NormalForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = NormalFormWire::deserialize(deserializer)?;
        let mut factors = Vec::with_capacity(wire.factors.len());
        for arr in &wire.factors {
            if arr.len() != wire.n {
                return Err(D::Error::custom("factor degree differs from n"));
            }
            let f = PermutationBraid::from_one_indexed(arr).map_err(D::Error::custom)?;
            if f.is_identity() || f.is_delta() {
                return Err(D::Error::custom(
                    "normal form factors may not be trivial or the half-twist",
                ));
            }
            factors.push(f);
        }
        Ok(NormalForm {
            strands: wire.n,
            inf: wire.inf,
            factors,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{half_twist, random_freely_reduced, BraidWord, RandomSpec};

    fn w(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::from_signed(n, letters).unwrap()
    }

    /// Independent permutation image of a word, for inequality oracles.
    fn word_permutation(word: &BraidWord) -> Vec<usize> {
        let n = word.strands();
        // occupant[pos] = strand currently at that position; a crossing swaps
        // adjacent positions regardless of sign.
        let mut occupant: Vec<usize> = (0..n).collect();
        for l in word.letters() {
            let t = l.index() as usize - 1;
            occupant.swap(t, t + 1);
        }
        let mut map = vec![0usize; n];
        for (pos, &strand) in occupant.iter().enumerate() {
            map[strand] = pos;
        }
        map
    }

    #[test]
    fn empty_word_is_trivial_form() {
        let nf = left_normal_form(&w(5, &[]));
        assert_eq!(nf.inf(), 0);
        assert!(nf.factors().is_empty());
    }

    #[test]
    fn half_twist_word_is_pure_delta() {
        let nf = left_normal_form(&half_twist(3).unwrap());
        assert_eq!(nf.inf(), 1);
        assert!(nf.factors().is_empty());
        let nf = left_normal_form(&half_twist(7).unwrap());
        assert_eq!(nf.inf(), 1);
        assert!(nf.factors().is_empty());
    }

    #[test]
    fn inverse_generator_in_b3() {
        // Δ · s1^{-1} = s1 s2 literally (free cancellation), so the normal
        // form of s1^{-1} is Δ^{-1} times the factor with word s1 s2.
        let delta_times = half_twist(3)
            .unwrap()
            .product(&w(3, &[-1]))
            .unwrap();
        assert_eq!(delta_times, w(3, &[1, 2]));

        let nf = left_normal_form(&w(3, &[-1]));
        assert_eq!(nf.inf(), -1);
        assert_eq!(nf.factors().len(), 1);
        assert_eq!(nf.factors()[0].one_indexed(), vec![3, 1, 2]);
        assert_eq!(nf.factors()[0].canonical_letters().len(), 2);
        assert_eq!(nf_to_word(&nf), w(3, &[-1, -2, -1, 1, 2]).free_reduce());
    }

    #[test]
    fn braid_relation_and_far_commutation() {
        assert!(equal_in_braid_group(&w(3, &[1, 2, 1]), &w(3, &[2, 1, 2])).unwrap());
        assert!(equal_in_braid_group(&w(4, &[1, 3]), &w(4, &[3, 1])).unwrap());
    }

    #[test]
    fn distinct_generators_differ() {
        // Oracle: distinct permutation images already separate s1 from s2.
        assert_ne!(
            word_permutation(&w(3, &[1])),
            word_permutation(&w(3, &[2]))
        );
        assert!(!equal_in_braid_group(&w(3, &[1]), &w(3, &[2])).unwrap());
    }

    #[test]
    fn equal_rejects_strand_mismatch() {
        assert!(equal_in_braid_group(&w(3, &[1]), &w(4, &[1])).is_err());
    }

    #[test]
    fn nf_to_word_round_trip_examples() {
        let nf = left_normal_form(&w(3, &[]));
        assert!(nf_to_word(&nf).is_empty());
        let delta = left_normal_form(&half_twist(3).unwrap());
        assert_eq!(nf_to_word(&delta), w(3, &[1, 2, 1]));
    }

    #[test]
    fn canonicality_on_random_words() {
        for n in [3usize, 5, 8] {
            for seed in 0..34u64 {
                let word = random_freely_reduced(&RandomSpec {
                    strands: n,
                    target_length: 40,
                    seed: 77 * n as u64 + seed,
                })
                .unwrap();
                let nf = left_normal_form(&word);
                let back = left_normal_form(&nf_to_word(&nf));
                assert_eq!(nf, back);
                assert_valid(&nf);
            }
        }
    }

    fn assert_valid(nf: &NormalForm) {
        for f in nf.factors() {
            assert!(!f.is_identity());
            assert!(!f.is_delta());
        }
        for pair in nf.factors().windows(2) {
            let n = pair[0].degree();
            for t in 0..n - 1 {
                if pair[1].starts_with(t) {
                    assert!(pair[0].finishes_with(t), "pair not left-weighted");
                }
            }
        }
    }

    #[test]
    fn mod_delta_squared_examples() {
        let mut nf = left_normal_form(&w(5, &[1, -2, 3, 4, -1, 2]));
        nf.inf = 4;
        let r = reduce_mod_delta_squared(&nf);
        assert_eq!(r.inf(), 0);
        assert_eq!(r.factors(), nf.factors());
        nf.inf = -3;
        let r = reduce_mod_delta_squared(&nf);
        assert_eq!(r.inf(), 1);
        assert_eq!(reduce_mod_delta_squared(&r), r);

        let delta_sq = crate::braid::delta_power(5, 2).unwrap();
        let nf = left_normal_form(&delta_sq);
        assert_eq!(nf.inf(), 2);
        let r = reduce_mod_delta_squared(&nf);
        assert!(r.is_trivial());
    }

    #[test]
    fn mod_delta_squared_drops_central_factor() {
        for seed in 0..8u64 {
            let word = random_freely_reduced(&RandomSpec {
                strands: 5,
                target_length: 30,
                seed: 9000 + seed,
            })
            .unwrap();
            let nf = left_normal_form(&word);
            let reduced = reduce_mod_delta_squared(&nf);
            let k = nf.inf().div_euclid(2);
            let lhs = nf_to_word(&nf);
            let rhs = crate::braid::delta_power(5, 2 * k)
                .unwrap()
                .product(&nf_to_word(&reduced))
                .unwrap();
            assert!(equal_in_braid_group(&lhs, &rhs).unwrap());
        }
    }

    #[test]
    fn delta_squared_is_central() {
        for n in [4usize, 5, 6, 7, 8] {
            for seed in 0..10u64 {
                let word = random_freely_reduced(&RandomSpec {
                    strands: n,
                    target_length: 30,
                    seed: 31 * n as u64 + seed,
                })
                .unwrap();
                let d2 = crate::braid::delta_power(n, 2).unwrap();
                let lhs = d2.product(&word).unwrap();
                let rhs = word.product(&d2).unwrap();
                assert!(equal_in_braid_group(&lhs, &rhs).unwrap());
            }
        }
    }

    #[test]
    fn equality_consistent_with_product_and_inverse() {
        for seed in 0..6u64 {
            let a = random_freely_reduced(&RandomSpec {
                strands: 6,
                target_length: 25,
                seed: 100 + seed,
            })
            .unwrap();
            let b = random_freely_reduced(&RandomSpec {
                strands: 6,
                target_length: 25,
                seed: 200 + seed,
            })
            .unwrap();
            // a·b·b^{-1} = a and (ab)(ab)^{-1} = 1.
            let ab = a.product(&b).unwrap();
            let back = ab.product(&b.inverse()).unwrap();
            assert!(equal_in_braid_group(&back, &a).unwrap());
            let triv = ab.product(&ab.inverse()).unwrap();
            assert!(left_normal_form(&triv).is_trivial());
        }
    }

    #[test]
    fn normal_form_serde_round_trip() {
        let word = w(4, &[1, -2, 3, 3, -1]);
        let nf = left_normal_form(&word);
        let json = serde_json::to_string(&nf).unwrap();
        let back: NormalForm = serde_json::from_str(&json).unwrap();
        assert_eq!(nf, back);
        assert!(json.contains("\"inf\""));
    }

    #[test]
    fn two_strand_group_is_infinite_cyclic() {
        // In B_2 every word collapses to Δ^(exponent sum).
        let nf = left_normal_form(&w(2, &[1, 1, 1, -1]));
        assert_eq!(nf.inf(), 2);
        assert!(nf.factors().is_empty());
        let nf = left_normal_form(&w(2, &[-1, -1]));
        assert_eq!(nf.inf(), -2);
    }
}
