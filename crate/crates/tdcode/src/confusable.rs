//! Confusable-set enumeration for the duplication + substitution channel.
//!
//! One duplication/substitution round alters the root of an irreducible
//! string inside a 5-window; `step_substitute` applies every tabulated
//! window replacement and re-roots. Composing steps (and, for the
//! no-side-channel code, suffix deletions/extensions) yields computable
//! supersets of the confusable sets, whose sizes obey the counting bounds.
//! A capped brute-force oracle certifies true confusability from below.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::automaton::{is_sentinel, WindowRootTable, SENT_L1, SENT_L2, SENT_R1, SENT_R2};
use crate::constrained::count_irr;
use crate::edits::SUBSTRING_EDIT_LEN;
use crate::error::{Error, Result};
use crate::parallel::*;
use crate::seq::{self, dedup_root, is_irreducible, pack_u64};

/// Which superset construction produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Substitution rounds only (side-channel code).
    A,
    /// Substitution rounds plus exhaustive suffix deletion/extension.
    BStrict,
    /// Suffix extension replaced by the known tail anchor.
    BAnchored,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::A => "A",
            Variant::BStrict => "B-strict",
            Variant::BAnchored => "B-anchored",
        }
    }
}

/// Enumerated superset of a confusable set, with the matching size bound.
pub struct ConfusableReport {
    pub q: u8,
    pub x: Vec<u8>,
    pub p: usize,
    pub variant: Variant,
    pub members: BTreeSet<Vec<u8>>,
    pub bound: BigUint,
}

impl ConfusableReport {
    /// Canonical JSON document (members sorted) for fixture comparison.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "q": self.q,
            "x": seq::format_seq(&self.x, self.q),
            "p": self.p,
            "variant": self.variant.name(),
            "size": self.members.len(),
            "bound": self.bound.to_string(),
            "members": self.members.iter().map(|m| seq::format_seq(m, self.q)).collect::<Vec<_>>(),
        })
    }

    pub fn check_bound(&self) -> bool {
        BigUint::from(self.members.len()) <= self.bound
    }
}

/// All roots reachable from irreducible `x` by one tabulated window
/// substitution, plus `x` itself.
pub fn step_substitute(x: &[u8], table: &WindowRootTable) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::new();
    out.insert(x.to_vec());
    step_substitute_into(x, table, &mut |y| {
        out.insert(y);
    });
    out
}

/// Visits every root reachable by one window substitution (without the
/// identity), calling `sink` for each.
fn step_substitute_into(x: &[u8], table: &WindowRootTable, sink: &mut dyn FnMut(Vec<u8>)) {
    let n = x.len();
    if n == 0 {
        return;
    }
    // Padded view: two sentinels on each side; window i is centered on x[i].
    let mut padded = Vec::with_capacity(n + 4);
    padded.push(SENT_L1);
    padded.push(SENT_L2);
    padded.extend_from_slice(x);
    padded.push(SENT_R1);
    padded.push(SENT_R2);
    for i in 0..n {
        let window: [u8; 5] = padded[i..i + 5].try_into().unwrap();
        let entry = table.entry(&window);
        let left = &x[..i.saturating_sub(2)];
        let right = &x[(i + 3).min(n)..];
        for rep in entry.iter() {
            // Strip the replacement's boundary sentinels; they stand for
            // positions outside the string.
            let core_start = rep.iter().take_while(|&&a| is_sentinel(a)).count();
            let core_end = rep.len() - rep.iter().rev().take_while(|&&a| is_sentinel(a)).count();
            let core = &rep[core_start..core_end];
            let mut candidate = Vec::with_capacity(left.len() + core.len() + right.len());
            candidate.extend_from_slice(left);
            candidate.extend_from_slice(core);
            candidate.extend_from_slice(right);
            sink(dedup_root(&candidate));
        }
    }
}

/// Closure of at most `steps` window-substitution rounds (identity
/// included). Frontier expansion is partitioned across threads; the merged
/// result is independent of the partitioning.
pub fn step_closure(x: &[u8], steps: usize, table: &WindowRootTable) -> HashSet<Vec<u8>> {
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(x.to_vec());
    let mut frontier: Vec<Vec<u8>> = vec![x.to_vec()];
    for _ in 0..steps {
        let produced: Vec<HashSet<Vec<u8>>> = frontier
            .par_iter()
            .map(|s| {
                let mut local = HashSet::new();
                step_substitute_into(s, table, &mut |y| {
                    local.insert(y);
                });
                local
            })
            .collect();
        let mut next = Vec::new();
        for set in produced {
            for y in set {
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

/// All irreducible results of one substring edit `u -> v` with
/// `max(|u|, |v|) <= l_ball` (reducible results are not root-side words and
/// are dropped). Symmetric: `y` reachable from `x` iff `x` from `y`.
fn edit_ball_into(x: &[u8], l_ball: usize, q: u8, sink: &mut dyn FnMut(Vec<u8>)) {
    let n = x.len();
    let mut ins = Vec::with_capacity(l_ball);
    for pos in 0..=n {
        for del in 0..=l_ball.min(n - pos) {
            // DFS over insertions of length 0..=l_ball.
            fn rec(
                x: &[u8],
                pos: usize,
                del: usize,
                ins: &mut Vec<u8>,
                l_ball: usize,
                q: u8,
                sink: &mut dyn FnMut(Vec<u8>),
            ) {
                if del != 0 || !ins.is_empty() {
                    let mut cand = Vec::with_capacity(x.len() - del + ins.len());
                    cand.extend_from_slice(&x[..pos]);
                    cand.extend_from_slice(ins);
                    cand.extend_from_slice(&x[pos + del..]);
                    if is_irreducible(&cand) {
                        sink(cand);
                    }
                }
                if ins.len() < l_ball {
                    for a in 0..q {
                        ins.push(a);
                        rec(x, pos, del, ins, l_ball, q, sink);
                        ins.pop();
                    }
                }
            }
            rec(x, pos, del, &mut ins, l_ball, q, sink);
        }
    }
}

/// Closure of at most `steps` strict-mode rounds, where one round is either
/// a tabulated window substitution or a direct irreducible `l_ball`-substring
/// edit. The union keeps the substitution-round supersets ordered
/// (window-only closures are contained in strict closures) while covering
/// the direct-edit adversary the reduced-scale pipeline is tested against.
pub fn strict_closure(
    x: &[u8],
    steps: usize,
    l_ball: usize,
    table: &WindowRootTable,
) -> HashSet<Vec<u8>> {
    let q = table.q;
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(x.to_vec());
    let mut frontier: Vec<Vec<u8>> = vec![x.to_vec()];
    for _ in 0..steps {
        let produced: Vec<HashSet<Vec<u8>>> = frontier
            .par_iter()
            .map(|s| {
                let mut local = HashSet::new();
                step_substitute_into(s, table, &mut |y| {
                    local.insert(y);
                });
                edit_ball_into(s, l_ball, q, &mut |y| {
                    local.insert(y);
                });
                local
            })
            .collect();
        let mut next = Vec::new();
        for set in produced {
            for y in set {
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

/// Counting bound `(968 q (n + pL) + 1)^{2p}` on the irreducible-confusable
/// set size.
pub fn bound_superset_a(q: u8, n: usize, p: usize) -> BigUint {
    let base = BigUint::from(968u32 * u32::from(q)) * BigUint::from(n + p * SUBSTRING_EDIT_LEN)
        + BigUint::one();
    base.pow(2 * p as u32)
}

/// Superset of the irreducible-confusable set for the DSD(p) channel:
/// `2p` substitution rounds, filtered to length `|x|`.
pub fn confusable_superset_a(x: &[u8], p: usize, table: &WindowRootTable) -> ConfusableReport {
    let n = x.len();
    let members: BTreeSet<Vec<u8>> = if p == 0 {
        BTreeSet::new()
    } else {
        step_closure(x, 2 * p, table)
            .into_iter()
            .filter(|y| y.len() == n && y.as_slice() != x)
            .collect()
    };
    ConfusableReport {
        q: table.q,
        x: x.to_vec(),
        p,
        variant: Variant::A,
        members,
        bound: bound_superset_a(table.q, n, p),
    }
}

/// Counting bound `q^{4pL} (n + pL)^{2p}` for the strict suffix-augmented set.
pub fn bound_superset_b_strict(q: u8, n: usize, p: usize, l_max: usize) -> BigUint {
    BigUint::from(q).pow(4 * p as u32 * l_max as u32)
        * BigUint::from(n + p * l_max).pow(2 * p as u32)
}

/// Anchored-variant bound: substitution rounds times the suffix
/// deletion/alignment slack `(2pL + 1)^2`.
pub fn bound_superset_b_anchored(q: u8, n: usize, p: usize, l_max: usize) -> BigUint {
    let slack = BigUint::from(2 * p * l_max + 1);
    bound_superset_a(q, n, p) * &slack * &slack
}

/// Tail anchor carried by the anchored construction: the last
/// `min(n, 3pL)` symbols of `x`.
pub fn tail_anchor(x: &[u8], p: usize, l_max: usize) -> Vec<u8> {
    let keep = (3 * p * l_max).min(x.len());
    x[x.len() - keep..].to_vec()
}

/// Candidates of length `n` that end with `tail` and can reach prefix `s`
/// by at most `p` substitution rounds: shared by the anchored decoder and
/// the anchored encode-time superset.
pub fn anchored_candidates(
    s: &[u8],
    tail: &[u8],
    n: usize,
    p: usize,
    table: &WindowRootTable,
) -> BTreeSet<Vec<u8>> {
    let keep = n - tail.len();
    let mut out = BTreeSet::new();
    for z in step_closure(s, p, table) {
        if z.len() < keep {
            continue;
        }
        let mut candidate = Vec::with_capacity(n);
        candidate.extend_from_slice(&z[..keep]);
        candidate.extend_from_slice(tail);
        if is_irreducible(&candidate) {
            out.insert(candidate);
        }
    }
    out
}

/// Enumeration work limits for the exponential strict pipeline.
#[derive(Debug, Clone, Copy)]
pub struct WorkLimit {
    pub max_items: usize,
}

impl Default for WorkLimit {
    fn default() -> Self {
        WorkLimit { max_items: 20_000_000 }
    }
}

/// How suffix information is handled by the no-side-channel construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BMode {
    /// Exhaustive suffix extension (exponential in `pL`; test scale only).
    Strict,
    /// Suffix reconstruction from the tail anchor.
    Anchored,
}

/// Superset of the suffix-augmented confusable set.
///
/// Strict mode runs the exact pipeline: `p` substitution rounds, every
/// suffix deletion of length `<= 2pL`, every irreducible suffix extension of
/// length `<= 2pL`, another `p` rounds, filtered to length `|x|`. Anchored
/// mode constrains candidates to end with `x`'s tail anchor.
pub fn confusable_superset_b(
    x: &[u8],
    p: usize,
    l_max: usize,
    mode: BMode,
    table: &WindowRootTable,
    limit: WorkLimit,
) -> Result<ConfusableReport> {
    let n = x.len();
    let q = table.q;
    let members = match mode {
        BMode::Strict => strict_members(x, p, l_max, table, limit)?,
        BMode::Anchored => {
            let tail = tail_anchor(x, p, l_max);
            let mut members: BTreeSet<Vec<u8>> = BTreeSet::new();
            if p > 0 && n >= p * l_max {
                for v in step_closure(x, p, table) {
                    if v.len() < n - p * l_max {
                        continue;
                    }
                    let s = &v[..n - p * l_max];
                    members.extend(anchored_candidates(s, &tail, n, p, table));
                }
                members.remove(x);
            }
            members
        }
    };
    let bound = match mode {
        BMode::Strict => bound_superset_b_strict(q, n, p, l_max),
        BMode::Anchored => bound_superset_b_anchored(q, n, p, l_max),
    };
    Ok(ConfusableReport {
        q,
        x: x.to_vec(),
        p,
        variant: if mode == BMode::Strict { Variant::BStrict } else { Variant::BAnchored },
        members,
        bound,
    })
}

fn strict_members(
    x: &[u8],
    p: usize,
    l_max: usize,
    table: &WindowRootTable,
    limit: WorkLimit,
) -> Result<BTreeSet<Vec<u8>>> {
    if p == 0 {
        return Ok(BTreeSet::new());
    }
    let n = x.len();
    let q = table.q as usize;
    let suffix = 2 * p * l_max;
    // q^{2pL} extensions per string is the exponential part; refuse upfront
    // when it cannot fit the budget.
    let ext_budget = (q as f64 - 1.0).powi(suffix as i32);
    if ext_budget > limit.max_items as f64 {
        return Err(Error::WorkLimit(format!(
            "strict enumeration needs ~(q-1)^{suffix} extensions; reduce L or raise the limit"
        )));
    }

    let forward: Vec<Vec<u8>> = strict_closure(x, p, l_max, table).into_iter().collect();
    let mut work = 0usize;

    // All suffix deletions of length <= 2pL (prefixes stay irreducible).
    let mut truncated: HashSet<Vec<u8>> = HashSet::new();
    for v in &forward {
        for cut in 0..=suffix.min(v.len()) {
            truncated.insert(v[..v.len() - cut].to_vec());
            work += 1;
        }
    }

    // Irreducible suffix extensions of length <= 2pL. The final rounds only
    // need lengths near n, so extensions beyond n + p * (l_max + 16) are
    // pruned (a substitution round shifts length by at most 16).
    let len_cap = n + p * (l_max + 16);
    let mut extended: HashSet<Vec<u8>> = HashSet::new();
    for t in &truncated {
        let mut stack = vec![t.clone()];
        while let Some(cur) = stack.pop() {
            work += 1;
            if work > limit.max_items {
                return Err(Error::WorkLimit("strict suffix extension exceeded budget".into()));
            }
            extended.insert(cur.clone());
            if cur.len() >= t.len() + suffix || cur.len() >= len_cap {
                continue;
            }
            for a in 0..q as u8 {
                let mut next = cur.clone();
                next.push(a);
                if !seq::repeat_ends_here(&next) {
                    stack.push(next);
                }
            }
        }
    }

    // Final substitution rounds, filtered to length n.
    let extended: Vec<Vec<u8>> = extended.into_iter().collect();
    let sets: Vec<BTreeSet<Vec<u8>>> = extended
        .par_iter()
        .map(|e| {
            strict_closure(e, p, l_max, table)
                .into_iter()
                .filter(|y| y.len() == n)
                .collect::<BTreeSet<_>>()
        })
        .collect();
    let mut members: BTreeSet<Vec<u8>> = BTreeSet::new();
    for s in sets {
        members.extend(s);
    }
    members.remove(x);
    Ok(members)
}

/// Exact confusability witness under a duplication cap: do the root sets of
/// all `<= dup_cap`-duplication, `<= p`-substitution descendants of `x` and
/// `y` intersect? True answers certify membership in the confusable set;
/// false answers are only valid up to the cap.
pub fn brute_force_confusable_oracle(
    x: &[u8],
    y: &[u8],
    p: usize,
    q: u8,
    dup_cap: usize,
    limit: WorkLimit,
) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x == y {
        return Ok(true);
    }
    let rx = capped_root_set(x, p, q, dup_cap, limit)?;
    let ry = capped_root_set(y, p, q, dup_cap, limit)?;
    Ok(!rx.is_disjoint(&ry))
}

/// Packed root set `R(D^{<= dup_cap, <= p}(x))` by exhaustive enumeration.
/// Requires `q <= 4` and strings short enough to pack.
pub fn capped_root_set(
    x: &[u8],
    p: usize,
    q: u8,
    dup_cap: usize,
    limit: WorkLimit,
) -> Result<HashSet<u64>> {
    if q > 4 {
        return Err(Error::WorkLimit("oracle packing supports q <= 4".into()));
    }
    let mut roots: HashSet<u64> = HashSet::new();
    let key = pack_u64(&dedup_root(x))
        .ok_or_else(|| Error::WorkLimit("string too long to pack".into()))?;
    roots.insert(key);
    if p == 0 {
        return Ok(roots);
    }

    // Duplication descendants, deduplicated via packed keys. Substitutions
    // are applied last: later duplications never change the root, so every
    // root in D^{<=cap, <=p} arises from a descendant followed by a
    // substitution and a recursive (p-1)-level set.
    let mut level: Vec<Vec<u8>> = vec![x.to_vec()];
    let mut seen: HashSet<u64> = HashSet::new();
    seen.insert(pack_u64(x).ok_or_else(|| Error::WorkLimit("unpackable input".into()))?);
    let mut all: Vec<Vec<u8>> = vec![x.to_vec()];
    for _ in 0..dup_cap {
        let mut next = Vec::new();
        for s in &level {
            for len in 1..=seq::MAX_DUP_LEN.min(s.len()) {
                for pos in 0..=s.len() - len {
                    let mut d = Vec::with_capacity(s.len() + len);
                    d.extend_from_slice(&s[..pos + len]);
                    d.extend_from_slice(&s[pos..pos + len]);
                    d.extend_from_slice(&s[pos + len..]);
                    match pack_u64(&d) {
                        Some(k) => {
                            if seen.insert(k) {
                                next.push(d);
                            }
                        }
                        None => {
                            return Err(Error::WorkLimit(
                                "descendant exceeds packable length".into(),
                            ))
                        }
                    }
                    if seen.len() > limit.max_items {
                        return Err(Error::WorkLimit(format!(
                            "oracle descendant set exceeded {} items",
                            limit.max_items
                        )));
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
        if level.is_empty() {
            break;
        }
    }

    if p == 1 {
        let chunks: Vec<HashSet<u64>> = all
            .par_iter()
            .map(|d| {
                let mut local = HashSet::new();
                let mut tmp = d.clone();
                for pos in 0..d.len() {
                    let old = d[pos];
                    for sym in 0..q {
                        if sym == old {
                            continue;
                        }
                        tmp[pos] = sym;
                        if let Some(k) = pack_u64(&dedup_root(&tmp)) {
                            local.insert(k);
                        }
                    }
                    tmp[pos] = old;
                }
                local
            })
            .collect();
        for c in chunks {
            roots.extend(c);
        }
    } else {
        // Recurse per substitution point. Only used at small scales.
        for d in &all {
            let mut tmp = d.clone();
            for pos in 0..d.len() {
                let old = d[pos];
                for sym in 0..q {
                    if sym == old {
                        continue;
                    }
                    tmp[pos] = sym;
                    let sub_roots =
                        capped_root_set(&dedup_root(&tmp), p - 1, q, dup_cap, limit)?;
                    roots.extend(sub_roots);
                }
                tmp[pos] = old;
            }
        }
    }
    Ok(roots)
}

/// Gilbert-Varshamov-style existence bound: `||Irr_q(n)||` divided by the
/// confusable-set bound, as an exact rational plus a float view.
pub struct GvBound {
    pub numerator: BigUint,
    pub denominator: BigUint,
}

impl GvBound {
    pub fn to_f64(&self) -> f64 {
        let num = self.numerator.to_f64().unwrap_or(f64::INFINITY);
        let den = self.denominator.to_f64().unwrap_or(f64::INFINITY);
        num / den
    }

    pub fn log2(&self) -> f64 {
        let nbits = self.numerator.bits() as f64;
        let dbits = self.denominator.bits() as f64;
        let num = self.numerator.to_f64();
        let den = self.denominator.to_f64();
        match (num, den) {
            (Some(n), Some(d)) => n.log2() - d.log2(),
            _ => nbits - dbits, // within 1 bit each; fine for reporting
        }
    }
}

/// Lower bound on the size of a duplication+substitution code of length `n`.
pub fn gv_lower_bound(q: u8, n: usize, p: usize) -> Result<GvBound> {
    Ok(GvBound { numerator: count_irr(q, n)?, denominator: bound_superset_a(q, n, p) })
}
