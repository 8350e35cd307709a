//! Adversarial inputs for the repeat-free encoders: highly periodic and
//! constant payloads force elimination cascades, which is where the
//! splice/record machinery earns its keep. Every parameter set the
//! derivations accept must encode, stay repeat-free, and round-trip.

use strandcode::core::Strand;
use strandcode::repeat_free::{rf_decode, rf_encode, RfParams};
use strandcode::spectrum::is_repeat_free;

fn patterns(m: usize, q: u32) -> Vec<Strand> {
    let mut out = vec![
        Strand::new(vec![0; m]),
        Strand::new(vec![1; m]),
        Strand::new(vec![(q - 1) as u8; m]),
    ];
    for period in 1..=6usize {
        out.push(Strand::new(
            (0..m).map(|i| ((i / period) % q as usize) as u8).collect(),
        ));
        out.push(Strand::new(
            (0..m)
                .map(|i| ((i % (period + 1)) % q as usize) as u8)
                .collect(),
        ));
    }
    for block in [2usize, 3, 5, 8] {
        out.push(Strand::new(
            (0..m).map(|i| (((i / block) % 2) as u8) % q as u8).collect(),
        ));
    }
    out
}

fn exhaust(params: &RfParams) -> usize {
    let mut count = 0;
    for x in patterns(params.m, params.q) {
        let c = rf_encode(&x, params).unwrap_or_else(|e| {
            panic!("encode failed at {params:?} on {x}: {e}");
        });
        assert_eq!(c.len(), params.n_prime);
        // A window longer than the string cannot repeat.
        if params.ell <= c.len() {
            assert!(is_repeat_free(&c, params.ell).unwrap());
        }
        assert_eq!(rf_decode(&c, params).unwrap(), x);
        count += 1;
    }
    count
}

#[test]
fn adversarial_basic_sweep() {
    let mut done = 0;
    for q in [2u32, 3, 4] {
        for n_prime in (8..150).step_by(7) {
            if let Ok(params) = RfParams::basic(q, n_prime) {
                done += exhaust(&params);
            }
        }
    }
    assert!(done > 300, "sweep too small: {done}");
}

#[test]
fn adversarial_marker_sweep() {
    let mut done = 0;
    for q in [2u32, 3, 4] {
        for n_prime in 8..150 {
            if let Ok(params) = RfParams::marker(q, n_prime) {
                done += exhaust(&params);
            }
        }
    }
    assert!(done > 300, "sweep too small: {done}");
}

/// Heavier sweep, run explicitly with `cargo test --test adversarial -- --ignored`.
#[test]
#[ignore]
fn adversarial_marker_sweep_heavy() {
    use rand::{Rng, SeedableRng};
    let mut done = 0;
    for q in [2u32, 3, 4] {
        for n_prime in 8..400 {
            if let Ok(params) = RfParams::marker(q, n_prime) {
                done += exhaust(&params);
                let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(n_prime as u64);
                for _ in 0..20 {
                    let x = Strand::new(
                        (0..params.m).map(|_| rng.gen_range(0..q) as u8).collect(),
                    );
                    let c = rf_encode(&x, &params).unwrap();
                    assert_eq!(rf_decode(&c, &params).unwrap(), x);
                    done += 1;
                }
            }
        }
    }
    println!("heavy sweep: {done} encodes");
}
