//! The auxiliary high-redundancy code protecting syndrome payloads against
//! duplications and a bounded number of substring edits.
//!
//! Codewords are `m`-symbol message blocks separated by the marker `sigma`,
//! colored round-robin with `T` colors and grouped `T` at a time; each color
//! carries one Reed-Solomon codeword over `GF(2^gamma)`. Block colors let
//! the decoder re-synchronize shifted groups; the RS layer absorbs the at
//! most `2 * p_tilde` group substitutions/erasures that `p_tilde` substring
//! edits can cause. A reversed-placement variant decodes from the tail of a
//! longer sequence, which is how the top-level code protects its syndrome.
//!
//! The block set `B_sigma^m` is huge at the default parameters (~15 million
//! for `q = 4`, `m = 18`), so it is kept virtual: blocks are addressed by
//! lexicographic rank via a completion-count table rather than materialized.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::rs::{Received, ReedSolomon};
use crate::seq::{self, is_irreducible, repeat_ends_here, reverse};

/// Validated parameter bundle for the auxiliary code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxParams {
    pub q: u8,
    /// Marker sequence (length 5).
    pub sigma: Vec<u8>,
    /// Message-block length.
    pub m: usize,
    /// Substring-edit budget the code must survive.
    pub p_tilde: usize,
    /// Number of colors.
    pub t_colors: usize,
    /// Reed-Solomon length (shortened codes allowed).
    pub n_hat: usize,
    /// Field exponent.
    pub gamma: u32,
    /// Maximum substring-edit length in this instantiation.
    pub l_edit: usize,
}

impl AuxParams {
    /// Default standalone instantiation for `p = 1` over `q = 4`.
    pub fn default_q4() -> AuxParams {
        AuxParams {
            q: 4,
            sigma: seq::parse_seq("01020", 4).unwrap(),
            m: 18,
            p_tilde: 3,
            t_colors: 9,
            n_hat: 15,
            gamma: 4,
            l_edit: 17,
        }
    }

    /// Total codeword length `N_hat * T * (m + |sigma|) - |sigma|`.
    pub fn codeword_len(&self) -> usize {
        self.n_hat * self.t_colors * (self.m + self.sigma.len()) - self.sigma.len()
    }

    /// Message capacity in bits: `T * (N_hat - 4 p_tilde) * gamma`.
    pub fn capacity_bits(&self) -> usize {
        self.t_colors * (self.n_hat - 4 * self.p_tilde) * self.gamma as usize
    }

    pub fn rs_dimension(&self) -> usize {
        self.n_hat - 4 * self.p_tilde
    }

    /// Structural checks that do not need the block counts.
    pub fn validate_shape(&self) -> Result<()> {
        let l = self.sigma.len();
        if l != 5 || !is_irreducible(&self.sigma) {
            return Err(Error::InvalidParams("sigma must be an irreducible 5-string".into()));
        }
        seq::check_alphabet(&self.sigma, self.q)?;
        if self.m <= self.l_edit || self.m <= l {
            return Err(Error::InvalidParams(format!(
                "need m > max(L, l): m={}, L={}, l={l}",
                self.m, self.l_edit
            )));
        }
        if self.t_colors < 3 * self.p_tilde {
            return Err(Error::InvalidParams(format!(
                "need T >= 3 p_tilde: T={}, p_tilde={}",
                self.t_colors, self.p_tilde
            )));
        }
        if self.n_hat < 4 * self.p_tilde + 1 {
            return Err(Error::InvalidParams(format!(
                "need N_hat >= 4 p_tilde + 1: N_hat={}, p_tilde={}",
                self.n_hat, self.p_tilde
            )));
        }
        if self.gamma == 0 || self.gamma > 16 || self.n_hat > (1usize << self.gamma) - 1 {
            return Err(Error::InvalidParams(format!(
                "need N_hat <= 2^gamma - 1: N_hat={}, gamma={}",
                self.n_hat, self.gamma
            )));
        }
        Ok(())
    }
}

/// The block set `B_sigma^m` (all `B` with `sigma B sigma` irreducible and
/// containing exactly two `sigma` occurrences), addressed by lexicographic
/// rank, with its contiguous near-equal color partition.
pub struct BlockSet {
    pub q: u8,
    pub sigma: Vec<u8>,
    pub m: usize,
    total: u128,
    /// Color j occupies ranks `starts[j]..starts[j + 1]`.
    starts: Vec<u128>,
    memo: Mutex<HashMap<([u8; 5], usize), u128>>,
}

impl BlockSet {
    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn color_size(&self, j: usize) -> u128 {
        self.starts[j + 1] - self.starts[j]
    }

    pub fn min_color_size(&self) -> u128 {
        (0..self.starts.len() - 1).map(|j| self.color_size(j)).min().unwrap_or(0)
    }

    /// Valid next symbols never recreate the marker or a repeat.
    #[inline]
    fn admissible(&self, ctx: &[u8; 5], a: u8) -> Option<[u8; 5]> {
        let w = [ctx[0], ctx[1], ctx[2], ctx[3], ctx[4], a];
        if repeat_ends_here(&w) || w[1..] == self.sigma[..] {
            return None;
        }
        Some([ctx[1], ctx[2], ctx[3], ctx[4], a])
    }

    /// Can the trailing marker be appended after context `ctx`?
    fn final_ok(&self, ctx: &[u8; 5]) -> bool {
        let mut w = Vec::with_capacity(10);
        w.extend_from_slice(ctx);
        for (step, &s) in self.sigma.iter().enumerate() {
            w.push(s);
            if repeat_ends_here(&w) {
                return false;
            }
            // A marker occurrence ending here must be the trailing marker.
            if step + 1 < self.sigma.len() && w[w.len() - 5..] == self.sigma[..] {
                return false;
            }
        }
        true
    }

    /// Number of valid completions of length `rem` from context `ctx`.
    fn count_from(&self, ctx: [u8; 5], rem: usize) -> u128 {
        if rem == 0 {
            return u128::from(self.final_ok(&ctx));
        }
        if let Some(&hit) = self.memo.lock().unwrap().get(&(ctx, rem)) {
            return hit;
        }
        let mut total = 0u128;
        for a in 0..self.q {
            if let Some(next) = self.admissible(&ctx, a) {
                total += self.count_from(next, rem - 1);
            }
        }
        self.memo.lock().unwrap().insert((ctx, rem), total);
        total
    }

    fn sigma_ctx(&self) -> [u8; 5] {
        <[u8; 5]>::try_from(self.sigma.as_slice()).unwrap()
    }

    /// Lexicographic rank of `block`, or `None` if it is not in the set.
    pub fn rank(&self, block: &[u8]) -> Option<u128> {
        if block.len() != self.m {
            return None;
        }
        let mut ctx = self.sigma_ctx();
        let mut acc = 0u128;
        for (pos, &sym) in block.iter().enumerate() {
            if sym >= self.q {
                return None;
            }
            for a in 0..sym {
                if let Some(next) = self.admissible(&ctx, a) {
                    acc += self.count_from(next, self.m - pos - 1);
                }
            }
            ctx = self.admissible(&ctx, sym)?;
        }
        self.final_ok(&ctx).then_some(acc)
    }

    /// The block of lexicographic rank `i`.
    pub fn unrank(&self, i: u128) -> Vec<u8> {
        assert!(i < self.total, "rank out of range");
        let mut rest = i;
        let mut ctx = self.sigma_ctx();
        let mut out = Vec::with_capacity(self.m);
        for pos in 0..self.m {
            for a in 0..self.q {
                let Some(next) = self.admissible(&ctx, a) else { continue };
                let c = self.count_from(next, self.m - pos - 1);
                if rest < c {
                    out.push(a);
                    ctx = next;
                    break;
                }
                rest -= c;
            }
        }
        debug_assert_eq!(out.len(), self.m);
        out
    }

    /// Color of a block, if it belongs to the set.
    pub fn color_of(&self, block: &[u8]) -> Option<usize> {
        let idx = self.rank(block)?;
        Some(self.starts.partition_point(|&s| s <= idx) - 1)
    }

    /// `zeta_j`: field element to block of color `j`.
    pub fn block_for(&self, j: usize, value: u16) -> Vec<u8> {
        self.unrank(self.starts[j] + u128::from(value))
    }

    /// `zeta_j^{-1}`: block of color `j` back to a field element; `None` if
    /// the block lies outside the set or beyond the `2^gamma` range in use
    /// (treated as an erasure by the caller).
    pub fn value_for(&self, j: usize, block: &[u8], gamma: u32) -> Option<u16> {
        let idx = self.rank(block)?;
        if idx < self.starts[j] || idx >= self.starts[j + 1] {
            return None;
        }
        let local = idx - self.starts[j];
        (local < (1u128 << gamma)).then_some(local as u16)
    }
}

/// Builds the counted block set for `(q, sigma, m)` with `t_colors` color
/// classes.
pub fn enumerate_blocks(q: u8, sigma: &[u8], m: usize, t_colors: usize) -> Result<BlockSet> {
    if sigma.len() != 5 || !is_irreducible(sigma) {
        return Err(Error::InvalidParams("sigma must be an irreducible 5-string".into()));
    }
    seq::check_alphabet(sigma, q)?;
    if m <= sigma.len() {
        return Err(Error::InvalidParams("need m > |sigma|".into()));
    }
    let mut set = BlockSet {
        q,
        sigma: sigma.to_vec(),
        m,
        total: 0,
        starts: Vec::new(),
        memo: Mutex::new(HashMap::new()),
    };
    set.total = set.count_from(set.sigma_ctx(), m);
    let t = t_colors as u128;
    if set.total < t {
        return Err(Error::InvalidParams(format!(
            "only {} blocks for {t_colors} colors (m too small)",
            set.total
        )));
    }
    let base = set.total / t;
    let rem = set.total % t;
    let mut acc = 0u128;
    set.starts.push(0);
    for j in 0..t_colors {
        acc += base + u128::from((j as u128) < rem);
        set.starts.push(acc);
    }
    Ok(set)
}

/// Explicit DFS enumeration of the same set, for small-scale
/// cross-validation of the counted representation.
pub fn enumerate_blocks_explicit(q: u8, sigma: &[u8], m: usize) -> Vec<Vec<u8>> {
    fn dfs(cur: &mut Vec<u8>, q: u8, sigma: &[u8], m: usize, out: &mut Vec<Vec<u8>>) {
        let l = sigma.len();
        if cur.len() == l + m {
            let mark = cur.len();
            let mut ok = true;
            for (step, &s) in sigma.iter().enumerate() {
                cur.push(s);
                if repeat_ends_here(cur)
                    || (step + 1 < l && cur[cur.len() - l..] == *sigma)
                {
                    ok = false;
                    break;
                }
            }
            cur.truncate(mark);
            if ok {
                out.push(cur[l..].to_vec());
            }
            return;
        }
        for a in 0..q {
            cur.push(a);
            if !repeat_ends_here(cur) && cur[cur.len() - l..] != *sigma {
                dfs(cur, q, sigma, m, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    dfs(&mut sigma.to_vec(), q, sigma, m, &mut out);
    out.sort();
    out
}

/// Full parameter validation against the block counts, including the floor
/// `M >= 24 p_tilde^2 + 15 p_tilde`.
pub fn validate_aux(params: &AuxParams, blocks: &BlockSet) -> Result<()> {
    params.validate_shape()?;
    let need = (24 * params.p_tilde * params.p_tilde + 15 * params.p_tilde) as u128;
    if blocks.total() < need {
        return Err(Error::InvalidParams(format!(
            "block count {} below floor {need}",
            blocks.total()
        )));
    }
    if (1u128 << params.gamma) > blocks.min_color_size() {
        return Err(Error::InvalidParams(format!(
            "2^gamma = {} exceeds smallest color class {}",
            1u128 << params.gamma,
            blocks.min_color_size()
        )));
    }
    Ok(())
}

/// Packs bits (MSB-first per element) into field elements.
fn bits_to_elems(bits: &[bool], gamma: u32, count: usize) -> Vec<u16> {
    let mut elems = vec![0u16; count];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            let e = i / gamma as usize;
            let off = i % gamma as usize;
            elems[e] |= 1 << (gamma as usize - 1 - off);
        }
    }
    elems
}

fn elems_to_bits(elems: &[u16], gamma: u32) -> Vec<bool> {
    let mut bits = Vec::with_capacity(elems.len() * gamma as usize);
    for &e in elems {
        for off in 0..gamma as usize {
            bits.push(e & (1 << (gamma as usize - 1 - off)) != 0);
        }
    }
    bits
}

/// Encodes up to `capacity_bits` message bits as a codeword: `T` parallel
/// Reed-Solomon codewords interleaved as colored blocks with markers.
pub fn encode_ce(bits: &[bool], params: &AuxParams, blocks: &BlockSet) -> Result<Vec<u8>> {
    let capacity = params.capacity_bits();
    if bits.len() > capacity {
        return Err(Error::CapacityExceeded { got: bits.len(), capacity });
    }
    let field = Field::new(params.gamma)?;
    let rs = ReedSolomon::new(&field, params.n_hat, params.rs_dimension())?;
    let k = params.rs_dimension();
    let gamma = params.gamma;
    let mut padded = bits.to_vec();
    padded.resize(capacity, false);

    // Color j carries the j-th contiguous chunk of the padded message.
    let per_color_bits = k * gamma as usize;
    let mut codewords: Vec<Vec<u16>> = Vec::with_capacity(params.t_colors);
    for j in 0..params.t_colors {
        let chunk = &padded[j * per_color_bits..(j + 1) * per_color_bits];
        codewords.push(rs.encode(&bits_to_elems(chunk, gamma, k))?);
    }

    let mut out = Vec::with_capacity(params.codeword_len());
    for r in 0..params.n_hat {
        for (j, cw) in codewords.iter().enumerate() {
            if r > 0 || j > 0 {
                out.extend_from_slice(&params.sigma);
            }
            out.extend_from_slice(&blocks.block_for(j, cw[r]));
        }
    }
    debug_assert_eq!(out.len(), params.codeword_len());
    Ok(out)
}

/// One recovered message group: the `T` blocks in color order.
pub type Slot = Option<Vec<Vec<u8>>>;

/// Outcome of the block/group scan.
pub struct ScanResult {
    pub slots: Vec<Slot>,
    pub m_block_count: usize,
    /// Slots where more than one group satisfied the position test; must
    /// stay zero when `T >= 3 p_tilde` holds.
    pub collisions: usize,
}

/// Locates maximal marker-free blocks in `y`, identifies `T`-groups
/// (adjacent `m`-blocks with colors `1..T`), and assigns them to message
/// slots by the position window test.
pub fn scan_t_groups(y: &[u8], params: &AuxParams, blocks: &BlockSet) -> ScanResult {
    let sigma = &params.sigma;
    let l = sigma.len();
    let n = y.len();
    let t = params.t_colors;
    let p = params.p_tilde;

    // Positions covered by any sigma occurrence.
    let mut covered = vec![false; n];
    if n >= l {
        for i in 0..=n - l {
            if &y[i..i + l] == sigma.as_slice() {
                covered[i..i + l].iter_mut().for_each(|c| *c = true);
            }
        }
    }
    // Maximal uncovered segments.
    let mut segments: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < n {
        if covered[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i < n && !covered[i] {
            i += 1;
        }
        segments.push((start, i));
    }

    // m-blocks, with color lookups against the counted set.
    struct MBlock {
        start: usize,
        end: usize,
        color: Option<usize>,
    }
    let m_blocks: Vec<MBlock> = segments
        .iter()
        .filter(|(s, e)| e - s == params.m)
        .map(|&(start, end)| MBlock { start, end, color: blocks.color_of(&y[start..end]) })
        .collect();

    // T-groups: T consecutive, pairwise adjacent m-blocks with colors 0..T-1.
    let mut groups: Vec<(usize, Vec<Vec<u8>>)> = Vec::new(); // (preceding m-block count, blocks)
    if m_blocks.len() >= t {
        'win: for w in 0..=m_blocks.len() - t {
            for j in 0..t {
                let blk = &m_blocks[w + j];
                if blk.color != Some(j) {
                    continue 'win;
                }
                if j > 0 && blk.start != m_blocks[w + j - 1].end + l {
                    continue 'win;
                }
            }
            let group: Vec<Vec<u8>> =
                (0..t).map(|j| y[m_blocks[w + j].start..m_blocks[w + j].end].to_vec()).collect();
            groups.push((w, group));
        }
    }

    // Slot assignment: a group after b m-blocks serves slot r (0-based)
    // when b lies in [r T - 2 p, r T + p - 1].
    let mut slots: Vec<Slot> = vec![None; params.n_hat];
    let mut collisions = 0;
    for (r, slot) in slots.iter_mut().enumerate() {
        let lo = (r * t).saturating_sub(2 * p);
        let hi = r * t + p; // exclusive
        let mut matches = groups.iter().filter(|(b, _)| *b >= lo && *b < hi);
        if let Some((_, g)) = matches.next() {
            if matches.next().is_some() {
                collisions += 1;
            } else {
                *slot = Some(g.clone());
            }
        }
    }
    ScanResult { slots, m_block_count: m_blocks.len(), collisions }
}

/// Decodes a (possibly corrupted) codeword back to `bit_len` message bits.
pub fn decode_ce(
    y: &[u8],
    params: &AuxParams,
    blocks: &BlockSet,
    bit_len: usize,
) -> Result<Vec<bool>> {
    let scan = scan_t_groups(y, params, blocks);
    decode_from_scan(&scan, params, blocks, bit_len)
}

/// RS stage shared by the forward and reversed decoders.
pub fn decode_from_scan(
    scan: &ScanResult,
    params: &AuxParams,
    blocks: &BlockSet,
    bit_len: usize,
) -> Result<Vec<bool>> {
    let field = Field::new(params.gamma)?;
    let rs = ReedSolomon::new(&field, params.n_hat, params.rs_dimension())?;
    let gamma = params.gamma;
    let mut bits = Vec::with_capacity(params.capacity_bits());
    for j in 0..params.t_colors {
        let received: Vec<Received> = scan
            .slots
            .iter()
            .map(|slot| slot.as_ref().and_then(|group| blocks.value_for(j, &group[j], gamma)))
            .collect();
        let message = rs
            .decode_message(&received)
            .map_err(|e| Error::DecodeFailure(format!("aux color {j}: {e}")))?;
        bits.extend(elems_to_bits(&message, gamma));
    }
    if bit_len > bits.len() {
        return Err(Error::DecodeFailure(format!(
            "requested {bit_len} bits, capacity {}",
            bits.len()
        )));
    }
    bits.truncate(bit_len);
    Ok(bits)
}

/// Reversed-placement encoder: emits the reversal of a codeword built over
/// the reversed marker, so that `sigma . encode_e1(u)` is irreducible and
/// `u` can be recovered from the tail of the root of a corrupted
/// `x . sigma . encode_e1(u)`.
pub fn encode_e1(bits: &[bool], params: &AuxParams, blocks: &BlockSet) -> Result<Vec<u8>> {
    debug_assert_eq!(blocks.sigma, reverse(&params.sigma));
    let forward_params = AuxParams { sigma: reverse(&params.sigma), ..params.clone() };
    let cw = encode_ce(bits, &forward_params, blocks)?;
    Ok(reverse(&cw))
}

/// Recovers `bit_len` bits from the trailing segment of `w`, the root of a
/// corrupted `x . sigma . encode_e1(u)`. Only the last
/// `codeword_len + p_tilde * l_edit` symbols are scanned.
pub fn decode_e1_tail(
    w: &[u8],
    params: &AuxParams,
    blocks: &BlockSet,
    bit_len: usize,
) -> Result<Vec<bool>> {
    let scan = scan_e1_tail(w, params, blocks);
    decode_from_scan(&scan, params, blocks, bit_len)
}

/// Scan stage of the reversed decoder, exposed for instrumented tests.
pub fn scan_e1_tail(w: &[u8], params: &AuxParams, blocks: &BlockSet) -> ScanResult {
    let forward_params = AuxParams { sigma: reverse(&params.sigma), ..params.clone() };
    let window = (params.codeword_len() + params.p_tilde * params.l_edit).min(w.len());
    let tail_reversed = reverse(&w[w.len() - window..]);
    scan_t_groups(&tail_reversed, &forward_params, blocks)
}

/// Block set for the reversed-marker instance used by `encode_e1`.
pub fn blocks_for_e1(params: &AuxParams) -> Result<BlockSet> {
    enumerate_blocks(params.q, &reverse(&params.sigma), params.m, params.t_colors)
}
