//! The approximate length `|w|_a`: interleaved full reduction and
//! conjugation by `Δ`.
//!
//! Full reduction is biased towards low generator indices; conjugating by the
//! half-twist mirrors the indices, so alternating the two keeps exposing new
//! shortenings. The loop stops as soon as a round fails to shorten the word
//! or the iteration budget runs out. Because `Δ²` is central, an even number
//! of `Δ`-conjugations is the identity on the element, so the witness is
//! flipped back to even parity before returning.

use crate::braid::{BraidTuple, BraidWord};
use crate::error::{BraidError, Result};
use crate::reduction::full_reduce;

/// Default iteration budget for the reduce/conjugate loop.
pub const DEFAULT_ALEN_ITERATIONS: usize = 8;

/// Result of an approximate length computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxLengthResult {
    /// `|w|_a`, the literal length of `witness`.
    pub length: usize,
    /// A short word equal to the input in `B_n`.
    pub witness: BraidWord,
    /// Number of full reductions performed.
    pub iterations: usize,
}

/// Computes `|w|_a` together with its witness word.
pub fn approximate_length(w: &BraidWord, max_iterations: usize) -> Result<ApproxLengthResult> {
    if max_iterations < 1 {
        return Err(BraidError::InvalidParameter(
            "max_iterations must be at least 1".into(),
        ));
    }
    let mut prev_len = w.len();
    let mut current = full_reduce(w)?;
    let mut parity = 0u8;
    let mut iterations = 1usize;
    let mut best = current.clone();
    let mut best_parity = 0u8;
    while current.len() < prev_len && iterations < max_iterations {
        prev_len = current.len();
        parity ^= 1;
        current = full_reduce(&current.delta_conjugate())?;
        iterations += 1;
        if current.len() < best.len() {
            best = current.clone();
            best_parity = parity;
        }
    }
    if best_parity == 1 {
        // One more complement restores even parity without changing length.
        best = best.delta_conjugate();
    }
    Ok(ApproxLengthResult {
        length: best.len(),
        witness: best,
        iterations,
    })
}

/// Total approximate length of a tuple: the sum over its entries.
pub fn tuple_approx_length(t: &BraidTuple, max_iterations: usize) -> Result<usize> {
    let mut total = 0;
    for entry in t.entries() {
        total += approximate_length(entry, max_iterations)?.length;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{half_twist, random_freely_reduced, BraidWord, RandomSpec};
    use crate::normal_form::{equal_in_braid_group, left_normal_form, nf_to_word};
    use crate::reduction::full_reduce;

    fn w(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::from_signed(n, letters).unwrap()
    }

    #[test]
    fn empty_word_has_length_zero() {
        let r = approximate_length(&w(6, &[]), 8).unwrap();
        assert_eq!(r.length, 0);
        assert!(r.witness.is_empty());
    }

    #[test]
    fn half_twist_stays_short_and_equal() {
        let delta = half_twist(4).unwrap();
        let r = approximate_length(&delta, 8).unwrap();
        assert!(r.length <= 6);
        assert!(equal_in_braid_group(&r.witness, &delta).unwrap());
    }

    #[test]
    fn rejects_zero_iterations() {
        assert!(approximate_length(&w(4, &[1]), 0).is_err());
    }

    #[test]
    fn witness_equals_input_and_bounds_hold() {
        for n in [4usize, 8] {
            for seed in 0..15u64 {
                let word = random_freely_reduced(&RandomSpec {
                    strands: n,
                    target_length: 80,
                    seed: 5000 + 13 * n as u64 + seed,
                })
                .unwrap();
                let d = full_reduce(&word).unwrap();
                let r = approximate_length(&word, 8).unwrap();
                assert_eq!(r.length, r.witness.len());
                assert!(r.length <= d.len());
                assert!(d.len() <= word.len());
                assert!(equal_in_braid_group(&r.witness, &word).unwrap());
            }
        }
    }

    #[test]
    fn insensitive_to_normal_form_blowup() {
        // |·|_a of the normal-form rewriting of a word stays within 15% of
        // |·|_a of the word itself in at least 90 of 100 seeded trials.
        let mut close = 0;
        let mut blowup_longer = 0;
        for seed in 0..100u64 {
            let u = random_freely_reduced(&RandomSpec {
                strands: 8,
                target_length: 100,
                seed: 424200 + seed,
            })
            .unwrap();
            let tlnf = nf_to_word(&left_normal_form(&u));
            if tlnf.len() >= u.len() {
                blowup_longer += 1;
            }
            let a_u = approximate_length(&u, 8).unwrap().length as f64;
            let a_t = approximate_length(&tlnf, 8).unwrap().length as f64;
            if a_u == 0.0 {
                close += usize::from(a_t == 0.0);
                continue;
            }
            if (a_t - a_u).abs() <= 0.15 * a_u {
                close += 1;
            }
        }
        assert!(close >= 90, "only {close}/100 trials within 15%");
        // The rewritten word itself is generally much longer pre-reduction.
        assert!(blowup_longer >= 90, "normal form rarely blew up: {blowup_longer}");
    }

    #[test]
    fn tuple_length_sums_entries() {
        let empty = BraidTuple::new(vec![w(5, &[]), w(5, &[])]).unwrap();
        assert_eq!(tuple_approx_length(&empty, 8).unwrap(), 0);

        let word = random_freely_reduced(&RandomSpec {
            strands: 5,
            target_length: 40,
            seed: 3,
        })
        .unwrap();
        let single = BraidTuple::new(vec![word.clone()]).unwrap();
        assert_eq!(
            tuple_approx_length(&single, 8).unwrap(),
            approximate_length(&word, 8).unwrap().length
        );

        let other = random_freely_reduced(&RandomSpec {
            strands: 5,
            target_length: 25,
            seed: 4,
        })
        .unwrap();
        let pair = BraidTuple::new(vec![word.clone(), other.clone()]).unwrap();
        assert_eq!(
            tuple_approx_length(&pair, 8).unwrap(),
            tuple_approx_length(&BraidTuple::new(vec![word]).unwrap(), 8).unwrap()
                + tuple_approx_length(&BraidTuple::new(vec![other]).unwrap(), 8).unwrap()
        );
    }
}
