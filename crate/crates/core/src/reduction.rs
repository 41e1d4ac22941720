//! Dehornoy handle reduction and the full reduction `D(w)`.
//!
//! A `s_i`-handle is a factor `s_i^e u s_i^{-e}` whose interior `u` contains
//! no letter with index <= i. Reducing it conjugates every interior letter by
//! `s_i^e`: letters with index > i+1 are untouched and each `s_{i+1}^d`
//! becomes `s_{i+1}^{-e} s_i^d s_{i+1}^e`. Handle reduction terminates on
//! every word and the fixpoint has no handle at all, hence its main generator
//! occurs with a single sign (Dehornoy reduced).
//!
//! Reducing a handle with `k` interior letters of index i+1 changes the
//! length by `2k - 2`, so handle reduction alone may inflate a word while it
//! cleans low indices: the excess migrates to higher indices. `full_reduce`
//! therefore alternates plain reduction with its mirror image (reduce the
//! index-complemented word and complement back, which is exact because `Δ²`
//! is central), mixes in prefix-rotation wraps that expose handles straddling
//! the word ends, and keeps the shortest Dehornoy-reduced form seen. The loop
//! stops once a few consecutive rounds fail to shorten the word.

use crate::braid::{BraidWord, Letter};
use crate::error::{BraidError, Result};

/// Default cap on handle rewrites per reduction call.
pub const DEFAULT_STEP_CAP: usize = 1_000_000;

/// Instrumentation from a `full_reduce` call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub input_length: usize,
    pub output_length: usize,
    /// Shortening rounds run (each round = low-index and high-index handle
    /// reduction plus rotation attempts).
    pub passes: usize,
}

/// Smallest generator index occurring in `w`.
pub fn main_generator(w: &BraidWord) -> Result<u32> {
    w.letters()
        .iter()
        .map(|l| l.index())
        .min()
        .ok_or(BraidError::EmptyWord)
}

/// True iff the main generator occurs with only one sign (empty word: true).
pub fn is_dehornoy_reduced(w: &BraidWord) -> bool {
    let Ok(m) = main_generator(w) else {
        return true;
    };
    let mut pos = false;
    let mut neg = false;
    for l in w.letters() {
        if l.index() == m {
            if l.is_positive() {
                pos = true;
            } else {
                neg = true;
            }
        }
    }
    !(pos && neg)
}

const NIL: u32 = u32::MAX;

/// Doubly linked word buffer with a rewindable monotone scan stack.
///
/// The scan walks left to right keeping, for the prefix before the cursor, a
/// stack of node ids whose letter indices strictly increase from bottom to
/// top. The topmost entry with index <= a is then exactly the most recent
/// position carrying an index <= a, which is the only possible opener for a
/// handle closing at the cursor; the handle is reduced as soon as it closes,
/// so every reduced handle has a handle-free interior. Entries popped by
/// later pushes are logged so the stack can be rewound when a reduction
/// splices the word.
struct HandleMachine {
    letter: Vec<i32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    free: Vec<u32>,
    head: u32,
    tail: u32,
    stack: Vec<u32>,
    pop_log: Vec<(u32, u32)>, // (pusher, victim) in pop order
}

impl HandleMachine {
    fn new(word: &BraidWord) -> HandleMachine {
        let cap = word.len() + 2;
        let mut m = HandleMachine {
            letter: Vec::with_capacity(cap),
            next: Vec::with_capacity(cap),
            prev: Vec::with_capacity(cap),
            free: Vec::new(),
            head: 0,
            tail: 1,
            stack: Vec::new(),
            pop_log: Vec::new(),
        };
        // Sentinels occupy slots 0 and 1.
        m.letter.push(0);
        m.next.push(NIL);
        m.prev.push(NIL);
        m.letter.push(0);
        m.next.push(NIL);
        m.prev.push(NIL);
        let mut last = m.head;
        for l in word.letters() {
            let id = m.alloc(l.signed());
            m.next[last as usize] = id;
            m.prev[id as usize] = last;
            last = id;
        }
        m.next[last as usize] = m.tail;
        m.prev[m.tail as usize] = last;
        m
    }

    fn alloc(&mut self, letter: i32) -> u32 {
        if let Some(id) = self.free.pop() {
            self.letter[id as usize] = letter;
            id
        } else {
            let id = self.letter.len() as u32;
            self.letter.push(letter);
            self.next.push(NIL);
            self.prev.push(NIL);
            id
        }
    }

    fn index_of(&self, id: u32) -> u32 {
        self.letter[id as usize].unsigned_abs()
    }

    /// Runs the scan to the handle-free fixpoint, reducing the leftmost
    /// closing handle first. Local splices rewind the scan state, so one call
    /// suffices.
    fn reduce(&mut self, step_cap: usize, steps_used: &mut usize) -> Result<()> {
        let mut cursor = self.next[self.head as usize];
        while cursor != self.tail {
            let lc = self.letter[cursor as usize];
            let a = lc.unsigned_abs();
            // Topmost stack entry with index <= a (indices increase upward).
            let mut k = self.stack.len();
            while k > 0 && self.index_of(self.stack[k - 1]) > a {
                k -= 1;
            }
            let mut opener = None;
            if k > 0 {
                let q = self.stack[k - 1];
                if self.letter[q as usize] == -lc {
                    opener = Some(q);
                }
            }
            match opener {
                Some(q) => {
                    *steps_used += 1;
                    if *steps_used > step_cap {
                        return Err(BraidError::StepCapExceeded { cap: step_cap });
                    }
                    cursor = self.rewrite_handle(q, cursor);
                }
                None => {
                    // Push cursor, logging every entry it shadows.
                    while let Some(&top) = self.stack.last() {
                        if self.index_of(top) >= a {
                            self.stack.pop();
                            self.pop_log.push((cursor, top));
                        } else {
                            break;
                        }
                    }
                    self.stack.push(cursor);
                    cursor = self.next[cursor as usize];
                }
            }
        }
        Ok(())
    }

    /// Reduces the handle `opener .. closer` and returns the node to resume at.
    fn rewrite_handle(&mut self, opener: u32, closer: u32) -> u32 {
        let sign_e = self.letter[opener as usize].signum();
        let a = self.index_of(opener);

        // Rewind the scan stack to its state just before `opener` was
        // processed. Interior nodes are visited in reverse processing order;
        // each was pushed, so it must be on top when reached.
        let mut v = self.prev[closer as usize];
        loop {
            debug_assert_eq!(self.stack.last(), Some(&v));
            self.stack.pop();
            while self.pop_log.last().map(|e| e.0) == Some(v) {
                let (_, victim) = self.pop_log.pop().unwrap();
                self.stack.push(victim);
            }
            if v == opener {
                break;
            }
            v = self.prev[v as usize];
        }

        // Conjugate the interior by s_a^e, with eager free cancellation.
        let mut replacement: Vec<i32> = Vec::new();
        let push = |out: &mut Vec<i32>, l: i32| {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        };
        let mut node = self.next[opener as usize];
        while node != closer {
            let l = self.letter[node as usize];
            if l.unsigned_abs() == a + 1 {
                let d = l.signum();
                let b = (a + 1) as i32;
                push(&mut replacement, -sign_e * b);
                push(&mut replacement, d * a as i32);
                push(&mut replacement, sign_e * b);
            } else {
                push(&mut replacement, l);
            }
            node = self.next[node as usize];
        }

        // Splice: drop opener..closer, insert the replacement.
        let before = self.prev[opener as usize];
        let after = self.next[closer as usize];
        let mut node = opener;
        while node != after {
            let nx = self.next[node as usize];
            self.free.push(node);
            node = nx;
        }
        let mut last = before;
        for &l in &replacement {
            let id = self.alloc(l);
            self.next[last as usize] = id;
            self.prev[id as usize] = last;
            last = id;
        }
        self.next[last as usize] = after;
        self.prev[after as usize] = last;

        self.next[before as usize]
    }

    fn into_word(self, strands: usize) -> BraidWord {
        let mut letters = Vec::new();
        let mut node = self.next[self.head as usize];
        while node != self.tail {
            letters.push(Letter::from_signed(self.letter[node as usize]).unwrap());
            node = self.next[node as usize];
        }
        BraidWord::from_letters_unchecked(strands, letters)
    }
}

/// Handle reduction to the handle-free fixpoint (leftmost-closing first).
fn handle_reduce(w: &BraidWord, cap: usize, steps: &mut usize) -> Result<BraidWord> {
    let reduced = w.free_reduce();
    if reduced.is_empty() {
        return Ok(reduced);
    }
    let mut machine = HandleMachine::new(&reduced);
    machine.reduce(cap, steps)?;
    Ok(machine.into_word(w.strands()))
}

/// The mirror pass: reduce the index-complemented word and complement back.
/// Exact on the element (`Δ^{-2} w Δ² = w`); cleans the highest indices the
/// way the plain pass cleans the lowest.
fn handle_reduce_mirror(w: &BraidWord, cap: usize, steps: &mut usize) -> Result<BraidWord> {
    Ok(handle_reduce(&w.delta_conjugate(), cap, steps)?.delta_conjugate())
}

/// Deterministic handle reduction to a handle-free (hence Dehornoy reduced)
/// word equal to `w` in `B_n`, always reducing the leftmost-closing handle.
pub fn dehornoy_reduce(w: &BraidWord) -> Result<BraidWord> {
    dehornoy_reduce_with_cap(w, DEFAULT_STEP_CAP)
}

pub fn dehornoy_reduce_with_cap(w: &BraidWord, step_cap: usize) -> Result<BraidWord> {
    let mut steps = 0;
    handle_reduce(w, step_cap, &mut steps)
}

/// Full reduction `D(w)`.
pub fn full_reduce(w: &BraidWord) -> Result<BraidWord> {
    full_reduce_with_cap(w, DEFAULT_STEP_CAP).map(|(word, _)| word)
}

/// Non-improving rounds tolerated before the shortening loop gives up.
/// Alternating the two directions keeps rewriting the word even at constant
/// length, which often unlocks another drop a round or two later.
const PASS_PATIENCE: usize = 3;

/// `full_reduce` with an explicit rewrite-step cap shared by all passes,
/// returning the shortened word together with pass statistics.
pub fn full_reduce_with_cap(
    w: &BraidWord,
    step_cap: usize,
) -> Result<(BraidWord, ReductionReport)> {
    let input_length = w.len();
    let mut steps = 0usize;
    let mut current = w.free_reduce();
    // Best Dehornoy-reduced form seen; the plain pass output of round one
    // bounds it by |dehornoy_reduce(w)| from the start.
    let mut best: Option<BraidWord> = None;
    let mut best_len_seen = current.len();
    let mut passes = 0usize;
    let mut stale = 0usize;

    loop {
        passes += 1;

        // Low-index pass, then high-index pass on its output.
        let low = handle_reduce(&current, step_cap, &mut steps)?;
        let high = handle_reduce_mirror(&low, step_cap, &mut steps)?;

        let mut keep_dh = |cand: &BraidWord, best: &mut Option<BraidWord>| {
            if best.as_ref().map_or(true, |b| cand.len() < b.len()) {
                *best = Some(cand.clone());
            }
        };
        keep_dh(&low, &mut best);

        // Prefix rotation: a cyclic shift exposes handles straddling the word
        // ends; wrap back with p ... p^{-1} so the element is unchanged.
        let mut round_best = if high.len() < low.len() { high } else { low };
        if round_best.len() >= 4 {
            let splits = [
                round_best.len() / 4,
                round_best.len() / 2,
                3 * round_best.len() / 4,
            ];
            for k in splits {
                if k == 0 || k >= round_best.len() {
                    continue;
                }
                let letters = round_best.letters();
                let prefix = BraidWord::from_letters_unchecked(
                    round_best.strands(),
                    letters[..k].to_vec(),
                );
                let suffix = BraidWord::from_letters_unchecked(
                    round_best.strands(),
                    letters[k..].to_vec(),
                );
                let rotated = suffix.raw_concat(&prefix);
                let core = handle_reduce(&rotated, step_cap, &mut steps)?;
                if core.len() >= rotated.len() {
                    continue;
                }
                let wrapped = prefix.raw_concat(&core).raw_concat(&prefix.inverse());
                let candidate = handle_reduce(&wrapped, step_cap, &mut steps)?;
                keep_dh(&candidate, &mut best);
                if candidate.len() < round_best.len() {
                    round_best = candidate;
                }
            }
        }

        if round_best.len() < best_len_seen {
            best_len_seen = round_best.len();
            stale = 0;
        } else {
            stale += 1;
        }
        let fixpoint = round_best == current;
        current = round_best;
        if fixpoint || stale > PASS_PATIENCE {
            break;
        }
    }

    // `current` may be a mirror-pass output, whose *highest* index is clean
    // but whose main generator may still mix signs. Re-reduce it if that
    // yields the shortest Dehornoy-reduced form overall.
    let mut result = best.expect("at least one round ran");
    if current.len() < result.len() {
        let re = handle_reduce(&current, step_cap, &mut steps)?;
        if re.len() < result.len() {
            result = re;
        }
    }

    debug_assert!(is_dehornoy_reduced(&result));
    let report = ReductionReport {
        input_length,
        output_length: result.len(),
        passes,
    };
    Ok((result, report))
}
