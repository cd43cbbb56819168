//! Named invariant suites: each re-checks one block of library properties
//! and prints a green/red line per invariant, with counterexample seeds on
//! failure.

use num_bigint::BigUint;
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;

use tdcode::automaton::{apply_h, build_fa5, enumerate_ru, enumerate_rv, WindowRootTable};
use tdcode::auxcode;
use tdcode::channel::{run_channel, ChannelSpec, EditKinds};
use tdcode::codec::{candidate_generator_audit, CodecB};
use tdcode::confusable::*;
use tdcode::constrained::*;
use tdcode::edits::check_substring_edits;
use tdcode::gf::Field;
use tdcode::rs::{Received, ReedSolomon};
use tdcode::seq::{self, dedup_root, is_irreducible};

struct Tally {
    ok: bool,
}

impl Tally {
    fn new() -> Tally {
        Tally { ok: true }
    }

    fn check(&mut self, name: &str, pass: bool, detail: &str) {
        if pass {
            println!("ok    {name}");
        } else {
            println!("FAIL  {name}: {detail}");
            self.ok = false;
        }
    }
}

fn random_irreducible(q: u8, n: usize, rng: &mut impl Rng) -> Vec<u8> {
    let total = count_irr(q, n).unwrap();
    let i = BigUint::from(rng.random::<u64>()) % &total;
    unrank_irr(q, n, &i).unwrap()
}

fn suite_roots(t: &mut Tally, scale: usize) {
    let mut rng = ChaCha12Rng::seed_from_u64(0x0011);
    let trials = 10_000 / scale;
    let mut confluent = true;
    let mut detail = String::new();
    for i in 0..trials {
        let q = rng.random_range(3..=6) as u8;
        let n = rng.random_range(0..=30);
        let x: Vec<u8> = (0..n).map(|_| rng.random_range(0..q)).collect();
        let r1 = dedup_root(&x);
        let r2 = seq::dedup_root_leftmost(&x);
        if r1 != r2 || !is_irreducible(&r1) {
            confluent = false;
            detail = format!("trial {i}: {x:?}");
            break;
        }
    }
    t.check("roots/confluence", confluent, &detail);

    let mut preserved = true;
    let mut detail = String::new();
    for seed in 0..(2000 / scale) as u64 {
        let x = random_irreducible(4, 12, &mut rng);
        let spec =
            ChannelSpec { q: 4, max_dups: 8, num_edits: 0, edit_kinds: EditKinds::ALL, seed };
        if dedup_root(&run_channel(&x, &spec)) != x {
            preserved = false;
            detail = format!("seed {seed}");
            break;
        }
    }
    t.check("roots/channel-preserves-root", preserved, &detail);
}

fn suite_automaton(t: &mut Tally, scale: usize) {
    let ru = enumerate_ru().unwrap();
    t.check("automaton/ru-size-22", ru.len() == 22, &format!("got {}", ru.len()));
    let rv = enumerate_rv().unwrap();
    let h_image: std::collections::BTreeSet<_> =
        ru.iter().map(|u| apply_h(u).unwrap()).collect();
    t.check("automaton/rv-is-h-of-ru", rv == h_image, "mismatch");
    let fa = build_fa5();
    let root = vec![0u8, 1, 2, 3, 4];
    let mut rng = ChaCha12Rng::seed_from_u64(0xfa5);
    let mut agree = true;
    let mut detail = String::new();
    for i in 0..10_000 / scale {
        let n = rng.random_range(0..=18);
        let w: Vec<u8> = (0..n).map(|_| rng.random_range(0..5u8)).collect();
        if fa.accepts(&w) != (dedup_root(&w) == root) {
            agree = false;
            detail = format!("trial {i}: {w:?}");
            break;
        }
    }
    t.check("automaton/acceptance-matches-root", agree, &detail);
}

fn suite_buffers(t: &mut Tally, _scale: usize) {
    for q in [3u8, 4, 5, 6] {
        let ok = verify_buffer_depth(q, &SIGMA).unwrap();
        t.check(&format!("buffers/exact-depth-q{q}"), ok, "unreachable vertex");
    }
}

fn suite_growth(t: &mut Tally, _scale: usize) {
    let r = growth_rate(4);
    t.check("growth/root-2.6590", (r - 2.6590).abs() < 5e-5, &format!("got {r}"));
    let table = CountTable::new(4, 41).unwrap();
    let ratio = num_traits::ToPrimitive::to_f64(&table.counts[41]).unwrap()
        / num_traits::ToPrimitive::to_f64(&table.counts[40]).unwrap();
    t.check("growth/dp-ratio", (ratio - r).abs() < 1e-2, &format!("ratio {ratio}"));
}

fn suite_substring_edits(t: &mut Tally, scale: usize) {
    let mut rng = ChaCha12Rng::seed_from_u64(0x7e5);
    let mut pass = true;
    let mut detail = String::new();
    'outer: for p in [1usize, 2] {
        for i in 0..(200 / scale).max(10) {
            let n = rng.random_range(6..=12);
            let x = random_irreducible(4, n, &mut rng);
            let spec = ChannelSpec {
                q: 4,
                max_dups: 6,
                num_edits: p,
                edit_kinds: EditKinds::SUB_ONLY,
                seed: rng.random(),
            };
            let y = run_channel(&x, &spec);
            if !check_substring_edits(&x, &dedup_root(&y), p, 17) {
                pass = false;
                detail = format!("p={p} trial {i}: x={x:?}");
                break 'outer;
            }
        }
    }
    t.check("substring-edits/root-locality", pass, &detail);
}

fn suite_bounds(t: &mut Tally, scale: usize) {
    let table = WindowRootTable::new(4).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(0xb0);
    let mut pass = true;
    let mut detail = String::new();
    for i in 0..(30 / scale).max(5) {
        let n = rng.random_range(4..=10);
        let x = random_irreducible(4, n, &mut rng);
        let step = step_substitute(&x, &table);
        if step.len() > 968 * 4 * n + 1 {
            pass = false;
            detail = format!("step bound, trial {i}");
            break;
        }
        let rep = confusable_superset_a(&x, 1, &table);
        if !rep.check_bound() {
            pass = false;
            detail = format!("superset-A bound, trial {i}");
            break;
        }
    }
    t.check("bounds/step-and-superset-a", pass, &detail);

    let table3 = WindowRootTable::new(3).unwrap();
    let mut pass = true;
    let mut detail = String::new();
    for i in 0..(6 / scale).max(2) {
        let x = random_irreducible(3, 8, &mut rng);
        let rep =
            confusable_superset_b(&x, 1, 3, BMode::Strict, &table3, WorkLimit::default())
                .unwrap();
        if !rep.check_bound() {
            pass = false;
            detail = format!("strict-B bound, trial {i}");
            break;
        }
    }
    t.check("bounds/strict-b-reduced-l", pass, &detail);
}

fn suite_oracle(t: &mut Tally, scale: usize) {
    let table = WindowRootTable::new(4).unwrap();
    let limit = WorkLimit::default();
    let mut rng = ChaCha12Rng::seed_from_u64(0x0a);
    let mut pass = true;
    let mut detail = String::new();
    'outer: for i in 0..(8 / scale).max(2) {
        let n = rng.random_range(4..=6);
        let x = random_irreducible(4, n, &mut rng);
        let members = confusable_superset_a(&x, 1, &table).members;
        let rs_x = capped_root_set(&x, 1, 4, 4, limit).unwrap();
        // Exhaustive y over Irr(n).
        let total = num_traits::ToPrimitive::to_u64(&count_irr(4, n).unwrap()).unwrap();
        for j in 0..total {
            let y = unrank_irr(4, n, &BigUint::from(j)).unwrap();
            if y == x {
                continue;
            }
            let rs_y = capped_root_set(&y, 1, 4, 3, limit).unwrap();
            if !rs_x.is_disjoint(&rs_y) && !members.contains(&y) {
                pass = false;
                detail = format!("trial {i}: x={x:?} y={y:?}");
                break 'outer;
            }
        }
    }
    t.check("oracle/containment-in-superset-a", pass, &detail);
}

fn suite_rs(t: &mut Tally, scale: usize) {
    let field = Field::new(4).unwrap();
    let rs = ReedSolomon::new(&field, 15, 3).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(0x25);
    let mut pass = true;
    let mut detail = String::new();
    'outer: for i in 0..(20 / scale).max(4) {
        let msg: Vec<u16> = (0..3).map(|_| rng.random_range(0..16)).collect();
        let cw = rs.encode(&msg).unwrap();
        for te in 0..=6usize {
            for e in 0..=(12 - 2 * te) {
                let mut rx: Vec<Received> = cw.iter().map(|&v| Some(v)).collect();
                let mut pos: Vec<usize> = (0..15).collect();
                pos.shuffle(&mut rng);
                for &p in pos.iter().take(te) {
                    let mut v = rng.random_range(0..15u16);
                    if v >= cw[p] {
                        v += 1;
                    }
                    rx[p] = Some(v);
                }
                for &p in pos.iter().skip(te).take(e) {
                    rx[p] = None;
                }
                if rs.decode_message(&rx).ok() != Some(msg.clone()) {
                    pass = false;
                    detail = format!("codeword {i}, t={te}, e={e}");
                    break 'outer;
                }
            }
        }
    }
    t.check("rs/errors-and-erasures", pass, &detail);
}

fn suite_ce(t: &mut Tally, scale: usize) {
    let params = auxcode::AuxParams::default_q4();
    let blocks =
        auxcode::enumerate_blocks(params.q, &params.sigma, params.m, params.t_colors).unwrap();
    auxcode::validate_aux(&params, &blocks).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(0xce);
    let bits: Vec<bool> = (0..params.capacity_bits()).map(|_| rng.random()).collect();
    let cw = auxcode::encode_ce(&bits, &params, &blocks).unwrap();
    let mut pass = true;
    let mut detail = String::new();
    for seed in 0..(200 / scale) as u64 {
        let spec =
            ChannelSpec { q: 4, max_dups: 10, num_edits: 3, edit_kinds: EditKinds::SUB_ONLY, seed };
        let y = dedup_root(&run_channel(&cw, &spec));
        if auxcode::decode_ce(&y, &params, &blocks, bits.len()).ok() != Some(bits.clone()) {
            pass = false;
            detail = format!("seed {seed}");
            break;
        }
    }
    t.check("ce/channel-roundtrip", pass, &detail);
}

fn suite_roundtrip_b(t: &mut Tally, scale: usize) {
    let codec = CodecB::new(4, 24, 1, BMode::Anchored, 17).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(0xb);
    let data: Vec<bool> = (0..codec.capacity_bits()).map(|_| rng.random()).collect();
    let cw = codec.encode(&data).unwrap();
    let mut pass = true;
    let mut detail = String::new();
    for seed in 0..(200 / scale) as u64 {
        let spec =
            ChannelSpec { q: 4, max_dups: 10, num_edits: 1, edit_kinds: EditKinds::ALL, seed };
        let y = run_channel(&cw.full, &spec);
        if codec.decode(&y).ok() != Some(data.clone()) {
            pass = false;
            detail = format!("seed {seed}");
            break;
        }
    }
    t.check("roundtrip-b/anchored-n24", pass, &detail);
}

fn suite_audit(t: &mut Tally, scale: usize) {
    let codec = CodecB::new(4, 24, 1, BMode::Anchored, 17).unwrap();
    let data: Vec<bool> = (0..codec.capacity_bits()).map(|i| i % 2 == 0).collect();
    let cw = codec.encode(&data).unwrap();
    let report =
        candidate_generator_audit(&codec, &cw, 0..(500 / scale) as u64, 10, EditKinds::ALL);
    t.check(
        "audit/generator-completeness",
        report.misses.is_empty(),
        &format!("misses at seeds {:?}", report.misses),
    );
}

pub fn run_suite(name: &str, scale: usize) -> bool {
    let mut t = Tally::new();
    let mut known = true;
    match name {
        "roots" => suite_roots(&mut t, scale),
        "automaton" => suite_automaton(&mut t, scale),
        "buffers" => suite_buffers(&mut t, scale),
        "growth" => suite_growth(&mut t, scale),
        "substring-edits" => suite_substring_edits(&mut t, scale),
        "bounds" => suite_bounds(&mut t, scale),
        "oracle" => suite_oracle(&mut t, scale),
        "rs" => suite_rs(&mut t, scale),
        "ce" => suite_ce(&mut t, scale),
        "roundtrip-b" => suite_roundtrip_b(&mut t, scale),
        "audit" => suite_audit(&mut t, scale),
        "all" => {
            suite_roots(&mut t, scale);
            suite_automaton(&mut t, scale);
            suite_buffers(&mut t, scale);
            suite_growth(&mut t, scale);
            suite_substring_edits(&mut t, scale);
            suite_bounds(&mut t, scale);
            suite_oracle(&mut t, scale);
            suite_rs(&mut t, scale);
            suite_ce(&mut t, scale);
            suite_roundtrip_b(&mut t, scale);
            suite_audit(&mut t, scale);
        }
        other => {
            println!("unknown suite {other:?}; available: roots automaton buffers growth substring-edits bounds oracle rs ce roundtrip-b audit all");
            known = false;
        }
    }
    known && t.ok
}
