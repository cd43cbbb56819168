//! Top-level codes: the side-channel construction (irreducible payload plus
//! out-of-band syndrome) and the single-channel construction (payload,
//! buffer, marker, and a protected syndrome segment), both built on
//! syndrome compression: store only `f(x) mod a` for a modulus `a` that
//! separates `x` from everything it can be confused with.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::automaton::WindowRootTable;
use crate::auxcode::{self, AuxParams, BlockSet};
use crate::confusable::{
    anchored_candidates, confusable_superset_a, confusable_superset_b, step_closure,
    strict_closure, tail_anchor, BMode, WorkLimit,
};
use crate::constrained::{count_irr, find_buffer, rank_irr, unrank_irr, SIGMA};
use crate::error::{Error, Result};
use crate::parallel::*;
use crate::seq::{self, dedup_root, is_irreducible};

/// Injective labeling: `x` read as a base-`q` integer (most significant
/// symbol first).
pub fn label(x: &[u8], q: u8) -> BigUint {
    let mut acc = BigUint::zero();
    let qq = BigUint::from(q);
    for &sym in x {
        acc = acc * &qq + BigUint::from(sym);
    }
    acc
}

/// The binary matrix of `x`: row `i` holds bit `i` (MSB first) of each
/// symbol.
pub fn binary_matrix(x: &[u8], q: u8) -> Vec<Vec<u8>> {
    let rows = (u8::BITS - (q - 1).leading_zeros()) as usize;
    (0..rows)
        .map(|i| x.iter().map(|&s| (s >> (rows - 1 - i)) & 1).collect())
        .collect()
}

/// Deterministic Miller-Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard's rho (Brent variant) for u64.
fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul(x, x) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn factorize_u64(mut n: u64, out: &mut Vec<(u64, u32)>) {
    let mut stack = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    if n > 1 {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if is_prime_u64(m) {
            match out.iter_mut().find(|(p, _)| *p == m) {
                Some((_, e)) => *e += 1,
                None => out.push((m, 1)),
            }
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
}

/// Marks every divisor of `d` that is `<= cap`.
fn mark_divisors(d: u64, cap: u64, bad: &mut Vec<bool>) {
    let mut factors = Vec::new();
    factorize_u64(d, &mut factors);
    let mut divisors = vec![1u64];
    for (p, e) in factors {
        let prev = divisors.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe = pe.saturating_mul(p);
            if pe > cap {
                break;
            }
            for &v in &prev {
                if let Some(nd) = v.checked_mul(pe) {
                    if nd <= cap {
                        divisors.push(nd);
                    }
                }
            }
        }
    }
    for v in divisors {
        if v >= 2 {
            bad[v as usize] = true;
        }
    }
}

/// Smallest `a >= 2` with `fx != fy (mod a)` for every label in `others`.
///
/// Termination is guaranteed: any `a` exceeding every `|fx - fy|` works.
/// Small label sets fall back to direct scanning; u64-sized differences use
/// divisor marking via Pollard rho.
pub fn find_modulus<'a, I>(fx: &BigUint, others: I) -> Result<u64>
where
    I: IntoIterator<Item = &'a BigUint>,
{
    let mut diffs_big: Vec<BigUint> = Vec::new();
    for fy in others {
        let d = if fx >= fy { fx - fy } else { fy - fx };
        if d.is_zero() {
            return Err(Error::InvalidParams("fx must differ from every other label".into()));
        }
        diffs_big.push(d);
    }
    if diffs_big.is_empty() {
        return Ok(2);
    }
    diffs_big.sort();
    diffs_big.dedup();

    let all_u64: Option<Vec<u64>> = diffs_big.iter().map(|d| d.to_u64()).collect();
    if let Some(diffs) = all_u64 {
        // Divisor marking with an adaptively doubling cap.
        let mut cap = (4 * diffs.len() as u64 + 64).next_power_of_two();
        loop {
            let mut bad = vec![false; cap as usize + 1];
            for &d in &diffs {
                mark_divisors(d, cap, &mut bad);
            }
            if let Some(a) = (2..=cap).find(|&a| !bad[a as usize]) {
                return Ok(a);
            }
            cap = cap.checked_mul(2).ok_or_else(|| {
                Error::ModulusOverflow("divisor cap overflow".into())
            })?;
        }
    }

    // Big differences: scan candidate moduli in parallel blocks over the
    // little-endian limb representations.
    let limbs: Vec<Vec<u64>> = diffs_big.iter().map(|d| d.to_u64_digits()).collect();
    let mod_u64 = |limbs: &[u64], a: u64| -> u64 {
        let mut rem = 0u128;
        for &w in limbs.iter().rev() {
            rem = ((rem << 64) | w as u128) % a as u128;
        }
        rem as u64
    };
    const BLOCK: u64 = 8192;
    let mut start = 2u64;
    loop {
        let end = start.checked_add(BLOCK).ok_or_else(|| {
            Error::ModulusOverflow("candidate range exhausted".into())
        })?;
        let found = (start..end)
            .collect::<Vec<u64>>()
            .par_iter()
            .filter(|&&a| limbs.iter().all(|d| mod_u64(d, a) != 0))
            .min()
            .copied();
        if let Some(a) = found {
            return Ok(a);
        }
        start = end;
    }
}

/// The compressed syndrome: modulus, residue, and (anchored mode) the tail
/// anchor, framed as fixed-width bit fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeRecord {
    pub a_prime: u64,
    pub residue: u64,
    pub tail: Option<Vec<u8>>,
}

impl SyndromeRecord {
    /// Frame width in bits: 64 + 64 plus, in anchored mode, `3pL` symbol
    /// slots of `ceil(log2 q)` bits each.
    pub fn frame_bits(q: u8, p: usize, l_max: usize, mode: BMode) -> usize {
        let sym_bits = (u8::BITS - (q - 1).leading_zeros()) as usize;
        match mode {
            BMode::Strict => 128,
            BMode::Anchored => 128 + 3 * p * l_max * sym_bits,
        }
    }

    /// Serializes into the fixed frame. The tail occupies the trailing
    /// symbol slots (front slots zero-padded when `n < 3pL`).
    pub fn to_bits(&self, q: u8, p: usize, l_max: usize, mode: BMode) -> Vec<bool> {
        let mut bits = Vec::with_capacity(Self::frame_bits(q, p, l_max, mode));
        for i in (0..64).rev() {
            bits.push(self.a_prime >> i & 1 == 1);
        }
        for i in (0..64).rev() {
            bits.push(self.residue >> i & 1 == 1);
        }
        if mode == BMode::Anchored {
            let sym_bits = (u8::BITS - (q - 1).leading_zeros()) as usize;
            let slots = 3 * p * l_max;
            let tail = self.tail.as_deref().unwrap_or(&[]);
            debug_assert!(tail.len() <= slots);
            for slot in 0..slots {
                let sym = if slot >= slots - tail.len() {
                    tail[slot - (slots - tail.len())]
                } else {
                    0
                };
                for i in (0..sym_bits).rev() {
                    bits.push(sym >> i & 1 == 1);
                }
            }
        }
        bits
    }

    /// Parses the fixed frame; `tail_len` is `min(n, 3pL)`, known to the
    /// decoder from the code parameters.
    pub fn from_bits(
        bits: &[bool],
        q: u8,
        p: usize,
        l_max: usize,
        mode: BMode,
        tail_len: usize,
    ) -> Result<SyndromeRecord> {
        let want = Self::frame_bits(q, p, l_max, mode);
        if bits.len() != want {
            return Err(Error::DecodeFailure(format!(
                "syndrome frame is {} bits, expected {want}",
                bits.len()
            )));
        }
        let read_u64 = |bits: &[bool]| bits.iter().fold(0u64, |acc, &b| acc << 1 | u64::from(b));
        let a_prime = read_u64(&bits[..64]);
        let residue = read_u64(&bits[64..128]);
        if a_prime < 2 || residue >= a_prime {
            return Err(Error::DecodeFailure(format!(
                "implausible syndrome: a'={a_prime}, residue={residue}"
            )));
        }
        let tail = if mode == BMode::Anchored {
            let sym_bits = (u8::BITS - (q - 1).leading_zeros()) as usize;
            let slots = 3 * p * l_max;
            let mut syms = Vec::with_capacity(tail_len);
            for slot in slots - tail_len..slots {
                let start = 128 + slot * sym_bits;
                let mut sym = 0u8;
                for &b in &bits[start..start + sym_bits] {
                    sym = sym << 1 | u8::from(b);
                }
                if sym >= q {
                    return Err(Error::DecodeFailure(format!("tail symbol {sym} >= q")));
                }
                syms.push(sym);
            }
            Some(syms)
        } else {
            None
        };
        Ok(SyndromeRecord { a_prime, residue, tail })
    }
}

/// Bits (MSB first) to the integer they spell.
pub fn bits_to_biguint(bits: &[bool]) -> BigUint {
    let mut acc = BigUint::zero();
    for &b in bits {
        acc = (acc << 1) + BigUint::from(u8::from(b));
    }
    acc
}

pub fn biguint_to_bits(v: &BigUint, len: usize) -> Vec<bool> {
    (0..len).rev().map(|i| v.bit(i as u64)).collect()
}

/// Code for the error-free side channel: transmit irreducible `x` through
/// the noisy channel and `(a, f(x) mod a)` out of band.
pub struct CodecA {
    pub q: u8,
    pub n: usize,
    pub p: usize,
    pub table: WindowRootTable,
    capacity_bits: usize,
}

impl CodecA {
    pub fn new(q: u8, n: usize, p: usize) -> Result<CodecA> {
        let table = WindowRootTable::new(q)?;
        let capacity_bits = (count_irr(q, n)?.bits() - 1) as usize;
        Ok(CodecA { q, n, p, table, capacity_bits })
    }

    /// Message capacity in bits: `floor(log2 ||Irr_q(n)||)`.
    pub fn capacity_bits(&self) -> usize {
        self.capacity_bits
    }

    pub fn encode(&self, data: &[bool]) -> Result<(Vec<u8>, SyndromeRecord)> {
        if data.len() > self.capacity_bits {
            return Err(Error::CapacityExceeded {
                got: data.len(),
                capacity: self.capacity_bits,
            });
        }
        let mut padded = data.to_vec();
        padded.resize(self.capacity_bits, false);
        let x = unrank_irr(self.q, self.n, &bits_to_biguint(&padded))?;
        let fx = label(&x, self.q);
        let report = confusable_superset_a(&x, self.p, &self.table);
        let labels: Vec<BigUint> =
            report.members.par_iter().map(|y| label(y, self.q)).collect();
        let a_prime = find_modulus(&fx, labels.iter())?;
        let residue = (fx % a_prime).to_u64().unwrap();
        Ok((x, SyndromeRecord { a_prime, residue, tail: None }))
    }

    /// Recovers the message from a channel output and the error-free
    /// syndrome record.
    pub fn decode(&self, y: &[u8], record: &SyndromeRecord) -> Result<Vec<bool>> {
        let v = dedup_root(y);
        let candidates = step_closure(&v, self.p, &self.table);
        let survivors: Vec<Vec<u8>> = candidates
            .into_iter()
            .filter(|z| z.len() == self.n)
            .filter(|z| (label(z, self.q) % record.a_prime).to_u64() == Some(record.residue))
            .collect();
        match survivors.len() {
            0 => Err(Error::NoSurvivor),
            1 => {
                let rank = rank_irr(self.q, &survivors[0])?;
                Ok(biguint_to_bits(&rank, self.capacity_bits))
            }
            k => Err(Error::MultipleSurvivors(k)),
        }
    }
}

/// A full single-channel codeword: payload, buffer, marker, and protected
/// syndrome segment.
#[derive(Debug, Clone)]
pub struct CodewordB {
    pub x: Vec<u8>,
    pub buffer: Vec<u8>,
    pub r: Vec<u8>,
    pub full: Vec<u8>,
}

/// Single-channel code: `x . b_x . sigma . r` with `r` carrying the
/// syndrome through the auxiliary code.
pub struct CodecB {
    pub q: u8,
    pub n: usize,
    pub p: usize,
    pub mode: BMode,
    pub l_max: usize,
    pub aux: AuxParams,
    pub table: WindowRootTable,
    e1_blocks: BlockSet,
    capacity_bits: usize,
    limit: WorkLimit,
    /// Candidate cache keyed by the observed prefix and syndrome; repeated
    /// decodes of lightly perturbed words (adversary sweeps) hit it often.
    candidate_cache: Mutex<HashMap<(Vec<u8>, u64, u64), Vec<Vec<u8>>>>,
}

impl CodecB {
    pub fn new(q: u8, n: usize, p: usize, mode: BMode, l_max: usize) -> Result<CodecB> {
        Self::with_aux(q, n, p, mode, l_max, None)
    }

    /// Builds the codec, optionally with explicit auxiliary parameters
    /// (otherwise chosen to fit the syndrome frame).
    pub fn with_aux(
        q: u8,
        n: usize,
        p: usize,
        mode: BMode,
        l_max: usize,
        aux: Option<AuxParams>,
    ) -> Result<CodecB> {
        if n == 0 {
            return Err(Error::InvalidParams("empty payload length".into()));
        }
        if mode == BMode::Strict && n <= p * l_max {
            // Strict mode has no tail anchor; an empty prefix leaves nothing
            // to enumerate from.
            return Err(Error::InvalidParams(format!(
                "strict mode needs n > p L: n={n}, p={p}, L={l_max}"
            )));
        }
        let payload = SyndromeRecord::frame_bits(q, p, l_max, mode);
        let aux = match aux {
            Some(a) => a,
            None => choose_aux_params(q, p, l_max, payload)?,
        };
        let e1_blocks = auxcode::blocks_for_e1(&aux)?;
        auxcode::validate_aux(&aux, &e1_blocks)?;
        if aux.capacity_bits() < payload {
            return Err(Error::InvalidParams(format!(
                "aux capacity {} below syndrome frame {payload}",
                aux.capacity_bits()
            )));
        }
        let table = WindowRootTable::new(q)?;
        let capacity_bits = (count_irr(q, n)?.bits() - 1) as usize;
        Ok(CodecB {
            q,
            n,
            p,
            mode,
            l_max,
            aux,
            table,
            e1_blocks,
            capacity_bits,
            limit: WorkLimit::default(),
            candidate_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn capacity_bits(&self) -> usize {
        self.capacity_bits
    }

    /// Payload width of the syndrome frame in bits.
    pub fn frame_bits(&self) -> usize {
        SyndromeRecord::frame_bits(self.q, self.p, self.l_max, self.mode)
    }

    /// Codeword length `n + c_q + 5 + |r|`.
    pub fn codeword_len(&self) -> usize {
        self.n
            + crate::constrained::buffer_len(self.q)
            + self.aux.sigma.len()
            + self.aux.codeword_len()
    }

    fn tail_len(&self) -> usize {
        (3 * self.p * self.l_max).min(self.n)
    }

    /// Encodes data bits into a codeword, computing the separating modulus
    /// over the enumerated confusable superset.
    pub fn encode(&self, data: &[bool]) -> Result<CodewordB> {
        if data.len() > self.capacity_bits {
            return Err(Error::CapacityExceeded {
                got: data.len(),
                capacity: self.capacity_bits,
            });
        }
        let mut padded = data.to_vec();
        padded.resize(self.capacity_bits, false);
        let x = unrank_irr(self.q, self.n, &bits_to_biguint(&padded))?;
        let record = self.syndrome_for(&x)?;
        self.assemble(&x, &record)
    }

    /// Computes the syndrome record for a payload string.
    pub fn syndrome_for(&self, x: &[u8]) -> Result<SyndromeRecord> {
        let fx = label(x, self.q);
        let report =
            confusable_superset_b(x, self.p, self.l_max, self.mode, &self.table, self.limit)?;
        let labels: Vec<BigUint> =
            report.members.par_iter().map(|y| label(y, self.q)).collect();
        let a_prime = find_modulus(&fx, labels.iter())?;
        let residue = (fx % a_prime).to_u64().unwrap();
        let tail = match self.mode {
            BMode::Anchored => Some(tail_anchor(x, self.p, self.l_max)),
            BMode::Strict => None,
        };
        Ok(SyndromeRecord { a_prime, residue, tail })
    }

    /// Assembles `x . b_x . sigma . r` for a given syndrome record.
    pub fn assemble(&self, x: &[u8], record: &SyndromeRecord) -> Result<CodewordB> {
        let bits = record.to_bits(self.q, self.p, self.l_max, self.mode);
        let r = auxcode::encode_e1(&bits, &self.aux, &self.e1_blocks)?;
        let buffer = find_buffer(x, &self.aux.sigma, self.q)?;
        let mut full = Vec::with_capacity(self.codeword_len());
        full.extend_from_slice(x);
        full.extend_from_slice(&buffer);
        full.extend_from_slice(&self.aux.sigma);
        full.extend_from_slice(&r);
        debug_assert!(is_irreducible(&full));
        Ok(CodewordB { x: x.to_vec(), buffer, r, full })
    }

    /// Recovers the syndrome record from the root of a received word.
    pub fn recover_syndrome(&self, w: &[u8]) -> Result<SyndromeRecord> {
        let bits = auxcode::decode_e1_tail(w, &self.aux, &self.e1_blocks, self.frame_bits())?;
        SyndromeRecord::from_bits(
            &bits,
            self.q,
            self.p,
            self.l_max,
            self.mode,
            self.tail_len(),
        )
    }

    /// Candidate payloads consistent with the observed prefix `s` and the
    /// recovered record.
    pub fn candidates(&self, s: &[u8], record: &SyndromeRecord) -> Result<Vec<Vec<u8>>> {
        let key = (s.to_vec(), record.a_prime, record.residue);
        if let Some(hit) = self.candidate_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let generated: Vec<Vec<u8>> = match self.mode {
            BMode::Anchored => {
                let tail = record.tail.as_ref().ok_or_else(|| {
                    Error::DecodeFailure("anchored record missing tail".into())
                })?;
                anchored_candidates(s, tail, self.n, self.p, &self.table)
                    .into_iter()
                    .collect()
            }
            BMode::Strict => {
                // Reverse of the strict pipeline: extend the prefix by every
                // irreducible suffix of length <= 2pL, then up to p reverse
                // substitution rounds, filtered to length n.
                let suffix = 2 * self.p * self.l_max;
                let mut extended: Vec<Vec<u8>> = Vec::new();
                let mut stack = vec![s.to_vec()];
                let mut work = 0usize;
                while let Some(cur) = stack.pop() {
                    work += 1;
                    if work > self.limit.max_items {
                        return Err(Error::WorkLimit(
                            "strict decode suffix enumeration exceeded budget".into(),
                        ));
                    }
                    extended.push(cur.clone());
                    if cur.len() >= s.len() + suffix || cur.len() > self.n + self.p * 16 {
                        continue;
                    }
                    for a in 0..self.q {
                        let mut next = cur.clone();
                        next.push(a);
                        if !seq::repeat_ends_here(&next) {
                            stack.push(next);
                        }
                    }
                }
                let sets: Vec<std::collections::BTreeSet<Vec<u8>>> = extended
                    .par_iter()
                    .map(|e| {
                        strict_closure(e, self.p, self.l_max, &self.table)
                            .into_iter()
                            .filter(|z| z.len() == self.n)
                            .collect()
                    })
                    .collect();
                let mut merged = std::collections::BTreeSet::new();
                for set in sets {
                    merged.extend(set);
                }
                merged.into_iter().collect()
            }
        };
        let survivors: Vec<Vec<u8>> = generated
            .into_iter()
            .filter(|z| (label(z, self.q) % record.a_prime).to_u64() == Some(record.residue))
            .collect();
        self.candidate_cache.lock().unwrap().insert(key, survivors.clone());
        Ok(survivors)
    }

    /// Forward membership test: can `z` produce the observed prefix `s`
    /// through at most `p` rounds of the mode's step relation and a suffix
    /// deletion?
    pub fn forward_check(&self, z: &[u8], s: &[u8]) -> bool {
        let closure = match self.mode {
            BMode::Anchored => step_closure(z, self.p, &self.table),
            BMode::Strict => strict_closure(z, self.p, self.l_max, &self.table),
        };
        closure.iter().any(|v| v.len() >= s.len() && &v[..s.len()] == s)
    }

    /// Full decode: root, syndrome recovery, candidate filtering, unranking.
    pub fn decode(&self, y: &[u8]) -> Result<Vec<bool>> {
        let x = self.decode_payload(y)?;
        let rank = rank_irr(self.q, &x)?;
        Ok(biguint_to_bits(&rank, self.capacity_bits))
    }

    /// Decode down to the payload string `x`.
    pub fn decode_payload(&self, y: &[u8]) -> Result<Vec<u8>> {
        let w = dedup_root(y);
        let record = self.recover_syndrome(&w)?;
        let prefix_len = self.n.saturating_sub(self.p * self.l_max);
        if w.len() < prefix_len {
            return Err(Error::DecodeFailure(format!(
                "root too short: {} < {prefix_len}",
                w.len()
            )));
        }
        let s = &w[..prefix_len];
        let survivors: Vec<Vec<u8>> = self
            .candidates(s, &record)?
            .into_iter()
            .filter(|z| self.forward_check(z, s))
            .collect();
        match survivors.len() {
            0 => Err(Error::NoSurvivor),
            1 => Ok(survivors.into_iter().next().unwrap()),
            k => Err(Error::MultipleSurvivors(k)),
        }
    }
}

/// Picks auxiliary parameters for a syndrome payload of `payload_bits`:
/// `p_tilde = 3p`, `T = 3 p_tilde`, the smallest block length satisfying
/// the count floor, and the `(gamma, N_hat)` pair minimizing the segment
/// length.
pub fn choose_aux_params(q: u8, p: usize, l_max: usize, payload_bits: usize) -> Result<AuxParams> {
    // p = 0 still frames the syndrome; a 1-edit aux instance covers it.
    let p_tilde = (3 * p).max(1);
    let t_colors = 3 * p_tilde;
    let sigma = SIGMA.to_vec();
    seq::check_alphabet(&sigma, q)?;
    let floor = (24 * p_tilde * p_tilde + 15 * p_tilde) as u128;
    let m_start = (l_max + 1).max(sigma.len() + 1);
    let mut best: Option<AuxParams> = None;
    for m in m_start..=64 {
        let blocks = match auxcode::enumerate_blocks(q, &seq::reverse(&sigma), m, t_colors) {
            Ok(b) if b.total() >= floor => b,
            _ => continue,
        };
        for gamma in 4..=12u32 {
            if (1u128 << gamma) > blocks.min_color_size() {
                break;
            }
            let per_pos = t_colors * gamma as usize;
            let n_hat = (4 * p_tilde + 1).max(4 * p_tilde + payload_bits.div_ceil(per_pos));
            if n_hat > (1usize << gamma) - 1 {
                continue;
            }
            let params = AuxParams {
                q,
                sigma: sigma.clone(),
                m,
                p_tilde,
                t_colors,
                n_hat,
                gamma,
                l_edit: l_max,
            };
            if best.as_ref().map_or(true, |b| params.codeword_len() < b.codeword_len()) {
                best = Some(params);
            }
        }
        // Larger block lengths only help while no instantiation exists yet;
        // once one is found, a short horizon suffices.
        if let Some(b) = &best {
            if m > b.m + 8 {
                break;
            }
        }
    }
    best.ok_or_else(|| Error::InvalidParams("no feasible block length below 64".into()))
}

/// Result of the generator-completeness audit.
#[derive(Debug)]
pub struct AuditReport {
    pub trials: usize,
    pub misses: Vec<u64>,
}

/// Runs seeded channels on a codeword and asserts that the observed root
/// prefix passes the forward membership test for the true payload and that
/// the decoder's candidate generator reproduces it; any miss is reported
/// with its seed.
pub fn candidate_generator_audit(
    codec: &CodecB,
    cw: &CodewordB,
    seeds: std::ops::Range<u64>,
    max_dups: usize,
    edit_kinds: crate::channel::EditKinds,
) -> AuditReport {
    use crate::channel::{run_channel, ChannelSpec};
    let mut misses = Vec::new();
    let trials = (seeds.end - seeds.start) as usize;
    for seed in seeds {
        let spec = ChannelSpec {
            q: codec.q,
            max_dups,
            num_edits: codec.p,
            edit_kinds,
            seed,
        };
        let y = run_channel(&cw.full, &spec);
        let w = dedup_root(&y);
        let prefix_len = codec.n.saturating_sub(codec.p * codec.l_max);
        if w.len() < prefix_len {
            misses.push(seed);
            continue;
        }
        let s = &w[..prefix_len];
        // The observed prefix must be forward-reachable from the true payload.
        if !codec.forward_check(&cw.x, s) {
            misses.push(seed);
            continue;
        }
        let record = match codec.recover_syndrome(&w) {
            Ok(r) => r,
            Err(_) => {
                misses.push(seed);
                continue;
            }
        };
        match codec.candidates(s, &record) {
            Ok(cands) if cands.contains(&cw.x) => {}
            _ => misses.push(seed),
        }
    }
    AuditReport { trials, misses }
}
