//! The finite automaton recognizing the duplication descendants of `01234`,
//! its prefix/suffix root sets, the mirror map `h`, symbol-wise dominance,
//! and the per-window root tables driving confusable-set enumeration.
//!
//! The automaton is transcribed edge-by-edge; `D*(01234)` equals the set of
//! labels of `Start -> S9` paths. A membership/root cross-check in the tests
//! guards the transcription.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::seq::{dedup_root, is_irreducible};

/// States of the automaton, in declaration order.
#[rustfmt::skip]
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum State {
    Start,
    S1, S2, S3, S4, S5, S6, S7, S8, S9, S10,
    T2, T3, T4, T5, T6, T7, T8, T9, T10,
}

pub const NUM_STATES: usize = 20;

impl State {
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }
}

/// Deterministic automaton for the regular language `D*(01234)` over
/// `Sigma_5`; accepting state `S9`.
#[derive(Debug, Clone)]
pub struct Fa5 {
    /// `edges[state][label] = Some(next)`.
    edges: [[Option<State>; 5]; NUM_STATES],
    pub accept: State,
}

impl Fa5 {
    /// All transitions `(from, label, to)`.
    pub fn edge_list(&self) -> Vec<(State, u8, State)> {
        let mut out = Vec::new();
        for (i, row) in self.edges.iter().enumerate() {
            for (a, tgt) in row.iter().enumerate() {
                if let Some(t) = tgt {
                    out.push((STATES[i], a as u8, *t));
                }
            }
        }
        out
    }

    pub fn step(&self, s: State, label: u8) -> Option<State> {
        if label >= 5 {
            return None;
        }
        self.edges[s.index()][label as usize]
    }

    /// True iff `w` spells a `Start -> S9` path.
    pub fn accepts(&self, w: &[u8]) -> bool {
        let mut cur = State::Start;
        for &a in w {
            match self.step(cur, a) {
                Some(next) => cur = next,
                None => return false,
            }
        }
        cur == self.accept
    }
}

#[rustfmt::skip]
pub const STATES: [State; NUM_STATES] = [
    State::Start,
    State::S1, State::S2, State::S3, State::S4, State::S5,
    State::S6, State::S7, State::S8, State::S9, State::S10,
    State::T2, State::T3, State::T4, State::T5, State::T6,
    State::T7, State::T8, State::T9, State::T10,
];

/// Builds the hard-coded automaton.
pub fn build_fa5() -> Fa5 {
    use State::*;
    #[rustfmt::skip]
    let list: &[(State, u8, State)] = &[
        // 012-stage
        (Start, 0, S1),
        (S1, 1, S2), (S2, 2, S3), (S3, 0, S4), (S4, 1, S2),
        (S1, 0, S1), (S2, 1, S2), (S3, 2, S3), (S4, 0, S4),
        (T2, 0, T2), (T3, 1, T3), (T4, 2, T4),
        (S2, 0, T2), (T2, 1, S2),
        (S3, 1, T3), (T3, 2, S3),
        (S4, 2, T4), (T4, 0, S4),
        // 123-stage
        (S3, 3, S6),
        (S6, 1, S7), (S7, 2, S5), (S5, 3, S6),
        (S5, 2, S5), (S6, 3, S6), (S7, 1, S7),
        (T5, 1, T5), (T6, 2, T6), (T7, 3, T7),
        (S5, 1, T5), (T5, 2, S5),
        (S6, 2, T6), (T6, 3, S6),
        (S7, 3, T7), (T7, 1, S7),
        // 234-stage
        (S6, 4, S9),
        (S9, 2, S10), (S10, 3, S8), (S8, 4, S9),
        (S8, 3, S8), (S9, 4, S9), (S10, 2, S10),
        (T8, 2, T8), (T9, 3, T9), (T10, 4, T10),
        (S8, 2, T8), (T8, 3, S8),
        (S9, 3, T9), (T9, 4, S9),
        (S10, 4, T10), (T10, 2, S10),
    ];
    let mut edges = [[None; 5]; NUM_STATES];
    for &(from, label, to) in list {
        let slot = &mut edges[from.index()][label as usize];
        assert!(slot.is_none(), "nondeterministic edge at {from:?}/{label}");
        *slot = Some(to);
    }
    Fa5 { edges, accept: S9 }
}

/// Tripwire for the root-set fixpoints; observed maximum root length is 8.
const ROOT_LEN_CAP: usize = 16;

/// Roots of path labels `Start -> state`, per state. Uses the identity
/// `R(ua) = R(R(u) a)` to keep the fixpoint finite.
pub fn roots_into_states(fa: &Fa5) -> Result<Vec<BTreeSet<Vec<u8>>>> {
    let mut sets: Vec<BTreeSet<Vec<u8>>> = vec![BTreeSet::new(); NUM_STATES];
    let mut queue = vec![(State::Start, Vec::new())];
    sets[State::Start.index()].insert(Vec::new());
    while let Some((s, root)) = queue.pop() {
        for a in 0..5u8 {
            if let Some(next) = fa.step(s, a) {
                let mut w = root.clone();
                w.push(a);
                let r = dedup_root(&w);
                if r.len() > ROOT_LEN_CAP {
                    return Err(Error::RootCapExceeded);
                }
                if sets[next.index()].insert(r.clone()) {
                    queue.push((next, r));
                }
            }
        }
    }
    Ok(sets)
}

/// Roots of path labels `state -> S9`, per state (backward fixpoint).
pub fn roots_out_of_states(fa: &Fa5) -> Result<Vec<BTreeSet<Vec<u8>>>> {
    let mut incoming: Vec<Vec<(State, u8)>> = vec![Vec::new(); NUM_STATES];
    for (from, label, to) in fa.edge_list() {
        incoming[to.index()].push((from, label));
    }
    let mut sets: Vec<BTreeSet<Vec<u8>>> = vec![BTreeSet::new(); NUM_STATES];
    let mut queue = vec![(fa.accept, Vec::new())];
    sets[fa.accept.index()].insert(Vec::new());
    while let Some((s, root)) = queue.pop() {
        for &(prev, a) in &incoming[s.index()] {
            let mut w = Vec::with_capacity(root.len() + 1);
            w.push(a);
            w.extend_from_slice(&root);
            let r = dedup_root(&w);
            if r.len() > ROOT_LEN_CAP {
                return Err(Error::RootCapExceeded);
            }
            if sets[prev.index()].insert(r.clone()) {
                queue.push((prev, r));
            }
        }
    }
    Ok(sets)
}

/// `R(U)`: roots of labels of all paths from `Start` to any state.
pub fn enumerate_ru() -> Result<BTreeSet<Vec<u8>>> {
    let fa = build_fa5();
    let sets = roots_into_states(&fa)?;
    Ok(sets.into_iter().flatten().collect())
}

/// Mirror map over `Sigma_5`: reverse the string and complement each symbol
/// (`a -> 4 - a`). An involution exchanging prefix and suffix roots.
pub fn apply_h(s: &[u8]) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(s.len());
    for &a in s.iter().rev() {
        if a >= 5 {
            return Err(Error::SymbolOutOfRange { symbol: a, q: 5 });
        }
        out.push(4 - a);
    }
    Ok(out)
}

/// `R(V)`: roots of labels of all paths from any state to `S9`, computed by
/// backward fixpoint and cross-checked against `h(R(U))`.
pub fn enumerate_rv() -> Result<BTreeSet<Vec<u8>>> {
    let fa = build_fa5();
    let backward: BTreeSet<Vec<u8>> =
        roots_out_of_states(&fa)?.into_iter().flatten().collect();
    let via_h: BTreeSet<Vec<u8>> =
        enumerate_ru()?.iter().map(|u| apply_h(u)).collect::<Result<_>>()?;
    if backward != via_h {
        return Err(Error::InvalidParams(
            "R(V) fixpoint disagrees with h(R(U))".into(),
        ));
    }
    Ok(backward)
}

/// A symbol-wise map witnessing that `s` dominates `t` (`eta(s) = t`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceMap {
    pub map: BTreeMap<u8, u8>,
}

impl DominanceMap {
    pub fn apply(&self, s: &[u8]) -> Option<Vec<u8>> {
        s.iter().map(|a| self.map.get(a).copied()).collect()
    }
}

/// Finds `eta` with `eta(s) = t`, which exists iff the equality pattern of
/// `s` refines that of `t`.
pub fn find_dominance(s: &[u8], t: &[u8]) -> Result<Option<DominanceMap>> {
    if s.len() != t.len() {
        return Err(Error::LengthMismatch(s.len(), t.len()));
    }
    let mut map = BTreeMap::new();
    for (&a, &b) in s.iter().zip(t) {
        match map.insert(a, b) {
            Some(prev) if prev != b => return Ok(None),
            _ => {}
        }
    }
    Ok(Some(DominanceMap { map }))
}

/// Roots obtainable from `01234` by duplications, one substitution over
/// `Sigma_q_hat`, and deduplication: the set `{ R(ru . w^ . rv) }` over all
/// edges, prefix roots `ru`, substituted labels `w^`, and suffix roots `rv`.
///
/// A guaranteed superset of `R(D^{s,1}(01234))`, of size at most
/// `22^2 (q_hat - 1)`.
pub fn window_roots_01234(q_hat: u8) -> Result<BTreeSet<Vec<u8>>> {
    assert!(q_hat >= 5, "master alphabet must contain Sigma_5");
    let fa = build_fa5();
    let into = roots_into_states(&fa)?;
    let out_of = roots_out_of_states(&fa)?;
    let mut result = BTreeSet::new();
    for (from, w, to) in fa.edge_list() {
        for ru in &into[from.index()] {
            for rv in &out_of[to.index()] {
                let mut base = Vec::with_capacity(ru.len() + 1 + rv.len());
                base.extend_from_slice(ru);
                base.push(0); // placeholder
                base.extend_from_slice(rv);
                let mid = ru.len();
                for w_hat in 0..q_hat {
                    if w_hat == w {
                        continue;
                    }
                    base[mid] = w_hat;
                    result.insert(dedup_root(&base));
                }
            }
        }
    }
    Ok(result)
}

/// Sentinel symbols padding windows that overhang the string boundary. They
/// never participate in repeats or substitutions.
pub const SENT_L1: u8 = 250;
pub const SENT_L2: u8 = 251;
pub const SENT_R1: u8 = 252;
pub const SENT_R2: u8 = 253;

#[inline]
pub fn is_sentinel(a: u8) -> bool {
    a >= SENT_L1
}

/// Replacement table: for each 5-window `t` (boundary windows padded with
/// sentinels), a superset of `R(D^{s,1}(t))` obtained by mapping the
/// `01234` master set down through dominance. Entries are irreducible,
/// preserve `t`'s sentinel pattern positionally, and are cached per window.
pub struct WindowRootTable {
    pub q: u8,
    master: Vec<Vec<u8>>,
    cache: Mutex<HashMap<Vec<u8>, std::sync::Arc<Vec<Vec<u8>>>>>,
}

impl WindowRootTable {
    /// Builds the table driver for alphabet `Sigma_q`. The master set is the
    /// `01234` window-root enumeration over `Sigma_{q+4}`.
    pub fn new(q: u8) -> Result<Self> {
        assert!(q >= 3);
        let master = window_roots_01234(q + 4)?.into_iter().collect();
        Ok(WindowRootTable { q, master, cache: Mutex::new(HashMap::new()) })
    }

    /// The replacement set for a 5-window `t` (sentinels allowed at the
    /// boundary positions).
    pub fn entry(&self, t: &[u8; 5]) -> std::sync::Arc<Vec<Vec<u8>>> {
        if let Some(hit) = self.cache.lock().unwrap().get(t.as_slice()) {
            return hit.clone();
        }
        let computed = std::sync::Arc::new(self.compute_entry(t));
        self.cache.lock().unwrap().insert(t.to_vec(), computed.clone());
        computed
    }

    fn compute_entry(&self, t: &[u8; 5]) -> Vec<Vec<u8>> {
        // Sentinel pattern of t: a (possibly empty) prefix and suffix.
        let left = t.iter().take_while(|&&a| is_sentinel(a)).count();
        let right = t.iter().rev().take_while(|&&a| is_sentinel(a)).count();
        debug_assert!(left + right < 5);
        let mut out = BTreeSet::new();
        for z in &self.master {
            // eta maps 0..4 to t's symbols; a fresh symbol (>= 5), if any,
            // ranges over the whole target alphabet.
            let fresh = z.iter().copied().find(|&a| a >= 5);
            let targets: Vec<Option<u8>> = match fresh {
                None => vec![None],
                Some(_) => (0..self.q).map(Some).collect(),
            };
            'target: for target in targets {
                let mut img = Vec::with_capacity(z.len());
                for &a in z {
                    let mapped = if a < 5 { t[a as usize] } else { target.unwrap() };
                    img.push(mapped);
                }
                // Sentinels must reproduce exactly t's boundary pattern:
                // anywhere else the master string moved or copied a symbol
                // that stands for the string boundary.
                let img_left = img.iter().take_while(|&&a| is_sentinel(a)).count();
                let img_right = img.iter().rev().take_while(|&&a| is_sentinel(a)).count();
                if img_left != left || img_right != right || img.len() < left + right {
                    continue;
                }
                for (i, &a) in img.iter().enumerate() {
                    let in_prefix = i < left;
                    let in_suffix = i >= img.len() - right;
                    if is_sentinel(a) != (in_prefix || in_suffix) {
                        continue 'target;
                    }
                    if in_prefix && a != t[i] {
                        continue 'target;
                    }
                    if in_suffix && a != t[5 - (img.len() - i)] {
                        continue 'target;
                    }
                }
                let rooted = dedup_root(&img);
                if rooted.len() >= left + right {
                    out.insert(rooted);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Number of distinct cached windows so far.
    pub fn cached_windows(&self) -> usize {
        self.cache.lock().unwrap().len()
    }

    /// Re-populates the cache from `to_canonical_text` output. Rejects text
    /// with a different format version or alphabet.
    pub fn load_canonical_text(&self, text: &str) -> Result<usize> {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or("");
        let expected = format!("window-root-table v1 q={}", self.q);
        if header != expected {
            return Err(Error::Parse(format!(
                "cache header {header:?} does not match {expected:?}"
            )));
        }
        let parse_syms = |tok: &str| -> Result<Vec<u8>> {
            tok.split('.')
                .map(|v| v.parse::<u8>().map_err(|e| Error::Parse(e.to_string())))
                .collect()
        };
        let mut loaded = 0;
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let (key, vals) = line
                .split_once(": ")
                .ok_or_else(|| Error::Parse(format!("bad cache line {line:?}")))?;
            let window = parse_syms(key)?;
            let mut reps: Vec<Vec<u8>> = Vec::new();
            for tok in vals.split(' ').filter(|t| !t.is_empty()) {
                reps.push(parse_syms(tok)?);
            }
            self.cache.lock().unwrap().insert(window, std::sync::Arc::new(reps));
            loaded += 1;
        }
        Ok(loaded)
    }

    /// Serializes all cached entries as canonical sorted text
    /// (`window: replacement replacement ...` lines), prefixed with a
    /// format-version header.
    pub fn to_canonical_text(&self) -> String {
        let cache = self.cache.lock().unwrap();
        let mut lines: Vec<String> = cache
            .iter()
            .map(|(w, reps)| {
                let key: Vec<String> = w.iter().map(u8::to_string).collect();
                let vals: Vec<String> = reps
                    .iter()
                    .map(|r| {
                        r.iter().map(u8::to_string).collect::<Vec<_>>().join(".")
                    })
                    .collect();
                format!("{}: {}", key.join("."), vals.join(" "))
            })
            .collect();
        lines.sort();
        format!("window-root-table v1 q={}\n{}\n", self.q, lines.join("\n"))
    }
}

/// Precomputes entries for every interior window in `Irr_q(5)` and every
/// single-sided boundary window, returning the table.
pub fn build_window_root_table(q: u8) -> Result<WindowRootTable> {
    let table = WindowRootTable::new(q)?;
    let mut windows: Vec<[u8; 5]> = Vec::new();
    // Interior windows.
    let mut stack: Vec<Vec<u8>> = vec![Vec::new()];
    while let Some(cur) = stack.pop() {
        if cur.len() == 5 {
            windows.push(cur.try_into().unwrap());
            continue;
        }
        for a in 0..q {
            let mut next = cur.clone();
            next.push(a);
            if is_irreducible(&next) {
                stack.push(next);
            }
        }
    }
    // Boundary windows with 1-2 sentinels on one side.
    let mut boundary = Vec::new();
    for w in &windows {
        boundary.push([SENT_L1, SENT_L2, w[0], w[1], w[2]]);
        boundary.push([SENT_L2, w[0], w[1], w[2], w[3]]);
        boundary.push([w[2], w[3], w[4], SENT_R1, SENT_R2]);
        boundary.push([w[1], w[2], w[3], w[4], SENT_R1]);
    }
    windows.extend(boundary);
    windows.sort();
    windows.dedup();
    for w in &windows {
        table.entry(w);
    }
    Ok(table)
}
