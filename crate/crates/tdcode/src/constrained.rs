//! Constrained coding over irreducible strings: the De Bruijn subgraph whose
//! paths spell irreducible strings, exact transfer-matrix counting,
//! lexicographic rank/unrank data encoders, growth-rate computation, and the
//! buffer search that makes codeword framing irreducible.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::seq::{is_irreducible, repeat_ends_here};

/// Largest alphabet for which the length-5 vertex set is enumerated
/// explicitly. Counting beyond this is out of scope for the desk-scale
/// experiments.
pub const MAX_GRAPH_Q: u8 = 12;

/// Marker separating message blocks and the syndrome segment.
pub const SIGMA: [u8; 5] = [0, 1, 0, 2, 0];

/// Buffer length `c_q` (verified exhaustively in the tests): `c_3 = 13`, `c_4 = 7`,
/// `c_5 = 6`, and `c_q = 5` for `q >= 6`.
pub fn buffer_len(q: u8) -> usize {
    match q {
        0..=2 => panic!("alphabet too small"),
        3 => 13,
        4 => 7,
        5 => 6,
        _ => 5,
    }
}

/// Subgraph of the De Bruijn graph on `Irr_q(5)`: an edge
/// `a1..a5 -> a2..a6` exists iff `a1..a6` is irreducible, labeled `a6`.
/// Length-preserving paths spell irreducible strings.
pub struct DeBruijnIrrGraph {
    pub q: u8,
    pub verts: Vec<[u8; 5]>,
    idx: HashMap<[u8; 5], u32>,
    /// `succ[v] = [(w, label)]`
    pub succ: Vec<Vec<(u32, u8)>>,
}

impl DeBruijnIrrGraph {
    pub fn new(q: u8) -> Result<Self> {
        if !(3..=MAX_GRAPH_Q).contains(&q) {
            return Err(Error::InvalidParams(format!(
                "graph alphabet must be in [3, {MAX_GRAPH_Q}], got {q}"
            )));
        }
        let mut verts = Vec::new();
        let mut stack: Vec<Vec<u8>> = vec![Vec::new()];
        while let Some(cur) = stack.pop() {
            if cur.len() == 5 {
                verts.push(<[u8; 5]>::try_from(cur.as_slice()).unwrap());
                continue;
            }
            for a in 0..q {
                let mut next = cur.clone();
                next.push(a);
                if !repeat_ends_here(&next) {
                    stack.push(next);
                }
            }
        }
        verts.sort();
        let idx: HashMap<[u8; 5], u32> =
            verts.iter().enumerate().map(|(i, v)| (*v, i as u32)).collect();
        let mut succ = vec![Vec::new(); verts.len()];
        let mut six = [0u8; 6];
        for (i, v) in verts.iter().enumerate() {
            six[..5].copy_from_slice(v);
            for a in 0..q {
                six[5] = a;
                if !repeat_ends_here(&six) {
                    let w = <[u8; 5]>::try_from(&six[1..]).unwrap();
                    succ[i].push((idx[&w], a));
                }
            }
        }
        Ok(DeBruijnIrrGraph { q, verts, idx, succ })
    }

    pub fn vertex(&self, v: &[u8]) -> Option<u32> {
        self.idx.get(v).copied()
    }

    /// Vertices that can reach `target` by a path of exactly `depth` edges.
    pub fn exact_depth_sources(&self, target: u32, depth: usize) -> Vec<bool> {
        let mut reach = vec![false; self.verts.len()];
        reach[target as usize] = true;
        for _ in 0..depth {
            let mut next = vec![false; self.verts.len()];
            for (v, outs) in self.succ.iter().enumerate() {
                if outs.iter().any(|&(w, _)| reach[w as usize]) {
                    next[v] = true;
                }
            }
            reach = next;
        }
        reach
    }
}

/// Exact irreducible-string counts `||Irr_q(n)||` for `n = 0..=max_n`.
pub struct CountTable {
    pub q: u8,
    pub counts: Vec<BigUint>,
}

impl CountTable {
    pub fn new(q: u8, max_n: usize) -> Result<Self> {
        let mut ctx = CompletionCounter::new(q)?;
        let counts = (0..=max_n).map(|n| ctx.count(&[], n)).collect();
        Ok(CountTable { q, counts })
    }
}

/// Memoized count of irreducible completions: given the last (up to five)
/// symbols of an irreducible prefix, how many length-`rem` extensions keep
/// the string irreducible?
pub struct CompletionCounter {
    q: u8,
    memo: HashMap<(Vec<u8>, usize), BigUint>,
}

impl CompletionCounter {
    pub fn new(q: u8) -> Result<Self> {
        if !(3..=MAX_GRAPH_Q).contains(&q) {
            return Err(Error::InvalidParams(format!(
                "counting alphabet must be in [3, {MAX_GRAPH_Q}], got {q}"
            )));
        }
        Ok(CompletionCounter { q, memo: HashMap::new() })
    }

    /// `ctx` is the whole prefix when shorter than five symbols, else its
    /// last five.
    pub fn count(&mut self, ctx: &[u8], rem: usize) -> BigUint {
        debug_assert!(ctx.len() <= 5);
        if rem == 0 {
            return BigUint::one();
        }
        let key = (ctx.to_vec(), rem);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let mut total = BigUint::zero();
        let mut next_ctx = Vec::with_capacity(6);
        for a in 0..self.q {
            next_ctx.clear();
            next_ctx.extend_from_slice(ctx);
            next_ctx.push(a);
            if repeat_ends_here(&next_ctx) {
                continue;
            }
            let tail_start = next_ctx.len().saturating_sub(5);
            total += self.count(&next_ctx[tail_start..], rem - 1);
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// `||Irr_q(n)||` as an exact big integer.
pub fn count_irr(q: u8, n: usize) -> Result<BigUint> {
    Ok(CompletionCounter::new(q)?.count(&[], n))
}

/// Lexicographic unranking: the `i`-th irreducible string of length `n`
/// (0-based, `0 <= i < count_irr(q, n)`).
pub fn unrank_irr(q: u8, n: usize, i: &BigUint) -> Result<Vec<u8>> {
    let mut counter = CompletionCounter::new(q)?;
    if *i >= counter.count(&[], n) {
        return Err(Error::OutOfBounds(format!("rank {i} >= count_irr({q}, {n})")));
    }
    let mut rest = i.clone();
    let mut out: Vec<u8> = Vec::with_capacity(n);
    for pos in 0..n {
        let mut chosen = None;
        for a in 0..q {
            out.push(a);
            if repeat_ends_here(&out) {
                out.pop();
                continue;
            }
            let tail_start = out.len().saturating_sub(5);
            let c = counter.count(&out[tail_start..], n - pos - 1);
            if rest < c {
                chosen = Some(a);
                break;
            }
            rest -= c;
            out.pop();
        }
        debug_assert!(chosen.is_some());
    }
    Ok(out)
}

/// Lexicographic rank of an irreducible string; inverse of `unrank_irr`.
pub fn rank_irr(q: u8, x: &[u8]) -> Result<BigUint> {
    if !is_irreducible(x) {
        return Err(Error::InvalidParams("rank of a reducible string".into()));
    }
    let mut counter = CompletionCounter::new(q)?;
    let mut rank = BigUint::zero();
    let mut prefix: Vec<u8> = Vec::with_capacity(x.len());
    for (pos, &sym) in x.iter().enumerate() {
        for a in 0..sym {
            prefix.push(a);
            if !repeat_ends_here(&prefix) {
                let tail_start = prefix.len().saturating_sub(5);
                rank += counter.count(&prefix[tail_start..], x.len() - pos - 1);
            }
            prefix.pop();
        }
        prefix.push(sym);
    }
    Ok(rank)
}

/// Largest positive real root of `x^3 - (q-2)x^2 - (q-3)x - (q-2)`, the
/// per-symbol growth factor of `||Irr_q(n)||`.
pub fn growth_rate(q: u8) -> f64 {
    assert!(q >= 4);
    let qf = q as f64;
    let f = |x: f64| x * x * x - (qf - 2.0) * x * x - (qf - 3.0) * x - (qf - 2.0);
    let (mut lo, mut hi) = (1.0f64, qf);
    debug_assert!(f(lo) < 0.0 && f(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Finds the buffer `b` of length `c_q` with `x . b . sigma` irreducible.
///
/// For `q >= 6` the walk uses only symbols `{3, 4, 5}`, mirroring the
/// constructive proof; for smaller alphabets an exact-depth first-found
/// search runs over the whole alphabet. Existence is guaranteed, so failure
/// reports a bug.
pub fn find_buffer(x: &[u8], sigma: &[u8], q: u8) -> Result<Vec<u8>> {
    let depth = buffer_len(q);
    let allowed: Vec<u8> = if q >= 6 { vec![3, 4, 5] } else { (0..q).collect() };
    // Work on the tail only; repeats to be created involve at most the last
    // five old symbols.
    let tail_start = x.len().saturating_sub(5);
    let mut work: Vec<u8> = x[tail_start..].to_vec();
    let base = work.len();
    let mut buf = Vec::with_capacity(depth);
    if dfs_buffer(&mut work, base, depth, &allowed, sigma, &mut buf) {
        debug_assert!({
            let mut full = x.to_vec();
            full.extend_from_slice(&buf);
            full.extend_from_slice(sigma);
            is_irreducible(&full)
        });
        return Ok(buf);
    }
    Err(Error::InvalidParams(format!(
        "no buffer of length {depth} from tail {:?} (graph bug?)",
        &x[tail_start..]
    )))
}

fn dfs_buffer(
    work: &mut Vec<u8>,
    base: usize,
    depth: usize,
    allowed: &[u8],
    sigma: &[u8],
    buf: &mut Vec<u8>,
) -> bool {
    if work.len() - base == depth {
        // Append sigma, checking irreducibility incrementally.
        let mark = work.len();
        for &s in sigma {
            work.push(s);
            if repeat_ends_here(work) {
                work.truncate(mark);
                return false;
            }
        }
        work.truncate(mark);
        return true;
    }
    for &a in allowed {
        work.push(a);
        if !repeat_ends_here(work) {
            buf.push(a);
            if dfs_buffer(work, base, depth, allowed, sigma, buf) {
                work.pop();
                return true;
            }
            buf.pop();
        }
        work.pop();
    }
    false
}

/// Exhaustively verifies that from every vertex of the graph there is a path
/// of exactly `buffer_len(q) + 5` edges to the `sigma` vertex. This mirrors
/// the computational verification backing the buffer-length constants.
pub fn verify_buffer_depth(q: u8, sigma: &[u8; 5]) -> Result<bool> {
    let g = DeBruijnIrrGraph::new(q)?;
    let target = g
        .vertex(sigma)
        .ok_or_else(|| Error::InvalidParams("sigma is not irreducible".into()))?;
    let reach = g.exact_depth_sources(target, buffer_len(q) + 5);
    Ok(reach.iter().all(|&r| r))
}
