//! Seeded Monte-Carlo roundtrip experiments with deterministic JSON reports.

use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use tdcode::channel::{run_channel, ChannelSpec, EditKinds};
use tdcode::codec::CodecB;

#[derive(Serialize)]
pub struct ExperimentReport {
    pub q: u8,
    pub n: usize,
    pub p: usize,
    pub mode: String,
    pub aux_codeword_len: usize,
    pub syndrome_frame_bits: usize,
    pub a_prime: u64,
    pub log2_a_prime: f64,
    pub trials: usize,
    pub successes: usize,
    /// Seeds of failed trials, in order.
    pub failures: Vec<u64>,
    pub codeword_symbols: usize,
    pub decode_ms_p50: f64,
    pub decode_ms_p99: f64,
}

pub fn run(
    codec: &CodecB,
    trials: usize,
    seed0: u64,
    dups: usize,
    edits: usize,
    kinds: EditKinds,
) -> ExperimentReport {
    // Message drawn from the base seed so the whole report is reproducible.
    let mut rng = ChaCha12Rng::seed_from_u64(seed0 ^ 0x5eed_d474);
    let data: Vec<bool> = (0..codec.capacity_bits()).map(|_| rng.random()).collect();
    let cw = codec.encode(&data).expect("encode failed");
    let record = codec.syndrome_for(&cw.x).expect("syndrome failed");

    let mut successes = 0;
    let mut failures = Vec::new();
    let mut times_ms: Vec<f64> = Vec::with_capacity(trials);
    for t in 0..trials {
        let seed = seed0 + t as u64;
        let spec = ChannelSpec { q: codec.q, max_dups: dups, num_edits: edits, edit_kinds: kinds, seed };
        let y = run_channel(&cw.full, &spec);
        let t0 = Instant::now();
        let outcome = codec.decode(&y);
        times_ms.push(t0.elapsed().as_secs_f64() * 1e3);
        match outcome {
            Ok(bits) if bits == data => successes += 1,
            _ => failures.push(seed),
        }
    }
    times_ms.sort_by(f64::total_cmp);
    let pick = |q: f64| times_ms[(q * (times_ms.len() - 1) as f64).round() as usize];
    ExperimentReport {
        q: codec.q,
        n: codec.n,
        p: codec.p,
        mode: format!("{:?}", codec.mode),
        aux_codeword_len: codec.aux.codeword_len(),
        syndrome_frame_bits: codec.frame_bits(),
        a_prime: record.a_prime,
        log2_a_prime: (record.a_prime as f64).log2(),
        trials,
        successes,
        failures,
        codeword_symbols: cw.full.len(),
        decode_ms_p50: if times_ms.is_empty() { 0.0 } else { pick(0.5) },
        decode_ms_p99: if times_ms.is_empty() { 0.0 } else { pick(0.99) },
    }
}
