//! Scratch pilot for reduction statistics. Not part of the library.

use std::time::Instant;

use bel_core::approx_length::approximate_length;
use bel_core::braid::{random_freely_reduced, BraidWord, RandomSpec};
use bel_core::normal_form::{left_normal_form, nf_to_word};
use bel_core::reduction::full_reduce;

fn main() {
    eprintln!("== Tlnf insensitivity (B_8, len 100, alen vs alen) ==");
    let mut close = 0;
    let mut ratio_sum = 0.0;
    let t0 = Instant::now();
    let trials = 50;
    for seed in 0..trials {
        let u = random_freely_reduced(&RandomSpec {
            strands: 8,
            target_length: 100,
            seed: 424_200 + seed,
        })
        .unwrap();
        let tlnf = nf_to_word(&left_normal_form(&u));
        let a_u = approximate_length(&u, 8).unwrap().length as f64;
        let a_t = approximate_length(&tlnf, 8).unwrap().length as f64;
        let ratio = if a_u == 0.0 { 1.0 } else { a_t / a_u };
        ratio_sum += ratio;
        if (ratio - 1.0).abs() <= 0.15 {
            close += 1;
        }
    }
    eprintln!(
        "within 15%: {close}/{trials}, mean ratio {:.3}, {:.1}ms/trial",
        ratio_sum / trials as f64,
        t0.elapsed().as_millis() as f64 / trials as f64
    );

    eprintln!("== Fig.1 regime (B_16): mean |w|_a / |D(w)| ==");
    for len in [25usize, 100, 200, 400, 800] {
        let mut ratio_sum = 0.0;
        let mut alen_sum = 0usize;
        let mut d_sum = 0usize;
        let trials = 20;
        let t0 = Instant::now();
        for seed in 0..trials {
            let w = random_freely_reduced(&RandomSpec {
                strands: 16,
                target_length: len,
                seed: 31_000 + seed,
            })
            .unwrap();
            let d = full_reduce(&w).unwrap();
            let a = approximate_length(&w, 8).unwrap();
            let ratio = if d.is_empty() {
                1.0
            } else {
                a.length as f64 / d.len() as f64
            };
            ratio_sum += ratio;
            alen_sum += a.length;
            d_sum += d.len();
        }
        eprintln!(
            "len {len}: mean ratio {:.3} (alen {:.0}, D {:.0}) {:.1}ms/trial",
            ratio_sum / trials as f64,
            alen_sum as f64 / trials as f64,
            d_sum as f64 / trials as f64,
            t0.elapsed().as_millis() as f64 / trials as f64
        );
    }

    eprintln!("== B_8 ratio curve ==");
    for len in [100usize, 200, 400, 800] {
        let mut ratio_sum = 0.0;
        let trials = 10;
        for seed in 0..trials {
            let w = random_freely_reduced(&RandomSpec {
                strands: 8,
                target_length: len,
                seed: 77_000 + seed,
            })
            .unwrap();
            let d = full_reduce(&w).unwrap();
            let a = approximate_length(&w, 8).unwrap();
            let ratio = if d.is_empty() {
                1.0
            } else {
                a.length as f64 / d.len() as f64
            };
            ratio_sum += ratio;
        }
        eprintln!("len {len}: mean ratio {:.3}", ratio_sum / trials as f64);
    }

    eprintln!("== conjugate shortening (B_8, |x|=20,|g|=190) ==");
    let mut rng = bel_core::braid::seeded_rng(777);
    let allowed: Vec<u32> = (1..8).collect();
    let mut shorter = 0;
    for _ in 0..20 {
        let x = bel_core::braid::random_freely_reduced_over(8, &allowed, 20, &mut rng).unwrap();
        let g = bel_core::braid::random_freely_reduced_over(8, &allowed, 190, &mut rng).unwrap();
        let conj = BraidWord::conjugate(&x, &g).unwrap();
        let fr = full_reduce(&conj).unwrap();
        if fr.len() < conj.len() {
            shorter += 1;
        }
    }
    eprintln!("shorter in {shorter}/20");
}
