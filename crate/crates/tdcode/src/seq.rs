//! Sequence algebra over small alphabets: tandem repeats, duplications,
//! deduplication roots, and single-symbol edits.
//!
//! Sequences are plain `&[u8]` symbol slices; the alphabet size `q` travels
//! alongside where it matters. A *repeat* is a factor `vv` with `|v| <= 3`; a
//! string with no such factor is *irreducible*. Deduplicating all repeats of
//! a string yields its unique *root*.

use crate::error::{Error, Result};

/// Maximum duplication length considered throughout (roots are unique up to
/// this bound, not beyond).
pub const MAX_DUP_LEN: usize = 3;

/// The DNA rendering used when `q == 4`.
pub const DNA: [char; 4] = ['A', 'C', 'G', 'T'];

/// A tandem duplication event: copy `len` symbols starting at `pos` and
/// insert the copy right after the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DuplicationEvent {
    pub pos: usize,
    pub len: usize,
}

/// A single-symbol edit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edit {
    Substitute { pos: usize, symbol: u8 },
    Insert { pos: usize, symbol: u8 },
    Delete { pos: usize },
}

/// Returns true iff `s[pos..pos+2*len]` is a repeat `vv`.
#[inline]
fn repeat_at(s: &[u8], pos: usize, len: usize) -> bool {
    pos + 2 * len <= s.len() && s[pos..pos + len] == s[pos + len..pos + 2 * len]
}

/// Leftmost, shortest repeat `vv` with `|v| <= 3`; `None` iff `s` is
/// irreducible. Returns `(pos, |v|)`.
pub fn find_shortest_repeat(s: &[u8]) -> Option<(usize, usize)> {
    for pos in 0..s.len() {
        for len in 1..=MAX_DUP_LEN {
            if repeat_at(s, pos, len) {
                return Some((pos, len));
            }
        }
    }
    None
}

/// True iff `s` has no repeat `vv` with `|v| <= 3`.
pub fn is_irreducible(s: &[u8]) -> bool {
    // Scan repeats ending at each position; O(3n).
    for end in 1..=s.len() {
        for len in 1..=MAX_DUP_LEN {
            if end >= 2 * len && repeat_at(s, end - 2 * len, len) {
                return false;
            }
        }
    }
    true
}

/// Pushes `sym` onto an irreducible stack, removing the repeat this creates,
/// if any. The stack stays irreducible.
#[inline]
pub(crate) fn push_reduced(stack: &mut Vec<u8>, sym: u8) {
    stack.push(sym);
    let n = stack.len();
    for len in 1..=MAX_DUP_LEN {
        if n >= 2 * len && repeat_at(stack, n - 2 * len, len) {
            stack.truncate(n - len);
            return;
        }
    }
}

/// True iff some repeat `vv` (`|v| <= 3`) ends at the last position of `s`.
/// Appending symbols one by one and checking this keeps a growing string
/// irreducible while looking only at its last five symbols.
#[inline]
pub fn repeat_ends_here(s: &[u8]) -> bool {
    let n = s.len();
    for len in 1..=MAX_DUP_LEN {
        if n >= 2 * len && repeat_at(s, n - 2 * len, len) {
            return true;
        }
    }
    false
}

/// The unique duplication root of `s`: deduplicate repeats `vv -> v`
/// (`|v| <= 3`) until none remain.
///
/// Implemented as a single left-to-right pass over an always-irreducible
/// stack; a freshly pushed symbol can only complete a repeat ending at the
/// top, and removing that copy leaves a prefix of the previous stack.
pub fn dedup_root(s: &[u8]) -> Vec<u8> {
    let mut stack = Vec::with_capacity(s.len().min(64));
    for &sym in s {
        push_reduced(&mut stack, sym);
    }
    stack
}

/// Root computation that removes the leftmost shortest repeat first, as a
/// slow reference for the stack-based `dedup_root`.
pub fn dedup_root_leftmost(s: &[u8]) -> Vec<u8> {
    let mut cur = s.to_vec();
    while let Some((pos, len)) = find_shortest_repeat(&cur) {
        cur.drain(pos..pos + len);
    }
    cur
}

/// Applies a duplication event, inserting the copy after the source.
pub fn apply_duplication(s: &[u8], d: DuplicationEvent) -> Result<Vec<u8>> {
    if d.len == 0 || d.len > MAX_DUP_LEN || d.pos + d.len > s.len() {
        return Err(Error::OutOfBounds(format!(
            "duplication pos={} len={} on |s|={}",
            d.pos,
            d.len,
            s.len()
        )));
    }
    let mut out = Vec::with_capacity(s.len() + d.len);
    out.extend_from_slice(&s[..d.pos + d.len]);
    out.extend_from_slice(&s[d.pos..d.pos + d.len]);
    out.extend_from_slice(&s[d.pos + d.len..]);
    Ok(out)
}

/// Applies a single edit. Substitutions must change the symbol.
pub fn apply_edit(s: &[u8], e: Edit) -> Result<Vec<u8>> {
    match e {
        Edit::Substitute { pos, symbol } => {
            if pos >= s.len() {
                return Err(Error::OutOfBounds(format!("sub at {pos} on |s|={}", s.len())));
            }
            if s[pos] == symbol {
                return Err(Error::IdentitySubstitution { pos, symbol });
            }
            let mut out = s.to_vec();
            out[pos] = symbol;
            Ok(out)
        }
        Edit::Insert { pos, symbol } => {
            if pos > s.len() {
                return Err(Error::OutOfBounds(format!("ins at {pos} on |s|={}", s.len())));
            }
            let mut out = s.to_vec();
            out.insert(pos, symbol);
            Ok(out)
        }
        Edit::Delete { pos } => {
            if pos >= s.len() {
                return Err(Error::OutOfBounds(format!("del at {pos} on |s|={}", s.len())));
            }
            let mut out = s.to_vec();
            out.remove(pos);
            Ok(out)
        }
    }
}

/// Checks that every symbol is in `[0, q)`.
pub fn check_alphabet(s: &[u8], q: u8) -> Result<()> {
    for &sym in s {
        if sym >= q {
            return Err(Error::SymbolOutOfRange { symbol: sym, q });
        }
    }
    Ok(())
}

/// Parses a sequence from text: ASCII digits for `q <= 10`
/// (e.g. `"213012"`), comma-separated integers otherwise, or `A/C/G/T`
/// for `q == 4`.
pub fn parse_seq(text: &str, q: u8) -> Result<Vec<u8>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let out: Vec<u8> = if text.contains(',') {
        text.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u8>()
                    .map_err(|e| Error::Parse(format!("bad symbol {tok:?}: {e}")))
            })
            .collect::<Result<_>>()?
    } else if q == 4 && text.chars().all(|c| DNA.contains(&c.to_ascii_uppercase())) {
        text.chars()
            .map(|c| DNA.iter().position(|&b| b == c.to_ascii_uppercase()).unwrap() as u8)
            .collect()
    } else {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("bad symbol {c:?}")))
            })
            .collect::<Result<_>>()?
    };
    check_alphabet(&out, q)?;
    Ok(out)
}

/// Renders a sequence as digits (`q <= 10`) or comma-separated integers.
pub fn format_seq(s: &[u8], q: u8) -> String {
    if q <= 10 {
        s.iter().map(|&x| char::from(b'0' + x)).collect()
    } else {
        s.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
    }
}

/// Renders a `q = 4` sequence as DNA letters.
pub fn format_dna(s: &[u8]) -> Result<String> {
    check_alphabet(s, 4)?;
    Ok(s.iter().map(|&x| DNA[x as usize]).collect())
}

/// Reverses a sequence. Roots commute with reversal, which the trailing
/// syndrome segment relies on.
pub fn reverse(s: &[u8]) -> Vec<u8> {
    let mut out = s.to_vec();
    out.reverse();
    out
}

/// Packs a short sequence into a `u64` key (2 bits per symbol, `q <= 4`,
/// `|s| <= 29`). Used by brute-force enumerations to keep hash sets cheap.
#[inline]
pub fn pack_u64(s: &[u8]) -> Option<u64> {
    if s.len() > 29 {
        return None;
    }
    let mut key = 0u64;
    for &sym in s {
        if sym >= 4 {
            return None;
        }
        key = (key << 2) | u64::from(sym);
    }
    Some(key | ((s.len() as u64) << 58))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::prelude::*;

    fn s(text: &str) -> Vec<u8> {
        parse_seq(text, 10).unwrap()
    }

    #[test]
    fn shortest_repeat_examples() {
        assert_eq!(find_shortest_repeat(&s("213213012")), Some((0, 3)));
        assert_eq!(find_shortest_repeat(&s("210")), None);
        assert_eq!(find_shortest_repeat(&s("0101")), Some((0, 2)));
        assert_eq!(find_shortest_repeat(&s("2100")), Some((2, 1)));
    }

    #[test]
    fn irreducible_examples() {
        assert!(is_irreducible(&s("213012")));
        assert!(!is_irreducible(&s("00")));
        assert!(is_irreducible(&[]));
        assert!(is_irreducible(&s("01234")));
        assert!(!is_irreducible(&s("010101")));
    }

    #[test]
    fn root_examples() {
        // x' = 213221303012 deduplicates back to x = 213012.
        assert_eq!(dedup_root(&s("213221303012")), s("213012"));
        assert_eq!(dedup_root(&s("213012")), s("213012"));
        assert_eq!(dedup_root(&[]), Vec::<u8>::new());
    }

    #[test]
    fn root_agrees_with_leftmost_removal_on_0101010() {
        let input = s("0101010");
        let stack = dedup_root(&input);
        let leftmost = dedup_root_leftmost(&input);
        assert_eq!(stack, leftmost);
        // Brute force: every removal order must land on the same root.
        fn all_orders(cur: &[u8], out: &mut std::collections::HashSet<Vec<u8>>) {
            let mut any = false;
            for pos in 0..cur.len() {
                for len in 1..=MAX_DUP_LEN {
                    if repeat_at(cur, pos, len) {
                        any = true;
                        let mut next = cur.to_vec();
                        next.drain(pos..pos + len);
                        all_orders(&next, out);
                    }
                }
            }
            if !any {
                out.insert(cur.to_vec());
            }
        }
        let mut roots = std::collections::HashSet::new();
        all_orders(&input, &mut roots);
        assert_eq!(roots.len(), 1);
        assert!(roots.contains(&stack));
    }

    #[test]
    fn duplication_examples() {
        let x = s("213012");
        assert_eq!(
            apply_duplication(&x, DuplicationEvent { pos: 0, len: 3 }).unwrap(),
            s("213213012")
        );
        assert_eq!(
            apply_duplication(&s("0"), DuplicationEvent { pos: 0, len: 1 }).unwrap(),
            s("00")
        );
        // Second arrow of the running example: 213213012 -> 21321303012.
        assert_eq!(
            apply_duplication(&s("213213012"), DuplicationEvent { pos: 5, len: 2 }).unwrap(),
            s("21321303012")
        );
        assert!(apply_duplication(&x, DuplicationEvent { pos: 5, len: 2 }).is_err());
    }

    #[test]
    fn edit_examples() {
        assert_eq!(
            apply_edit(&s("213221303012"), Edit::Substitute { pos: 4, symbol: 1 }).unwrap(),
            s("213211303012")
        );
        assert_eq!(apply_edit(&s("012"), Edit::Delete { pos: 1 }).unwrap(), s("02"));
        assert_eq!(
            apply_edit(&s("012"), Edit::Insert { pos: 3, symbol: 3 }).unwrap(),
            s("0123")
        );
        assert!(apply_edit(&s("012"), Edit::Substitute { pos: 1, symbol: 1 }).is_err());
        assert!(apply_edit(&s("012"), Edit::Delete { pos: 3 }).is_err());
    }

    #[test]
    fn edits_invert() {
        let x = s("2130121");
        let y = apply_edit(&x, Edit::Delete { pos: 2 }).unwrap();
        let z = apply_edit(&y, Edit::Insert { pos: 2, symbol: 3 }).unwrap();
        assert_eq!(z, x);
        let y = apply_edit(&x, Edit::Substitute { pos: 0, symbol: 0 }).unwrap();
        let z = apply_edit(&y, Edit::Substitute { pos: 0, symbol: 2 }).unwrap();
        assert_eq!(z, x);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_seq("213012", 4).unwrap(), vec![2, 1, 3, 0, 1, 2]);
        assert_eq!(parse_seq("GCTACG", 4).unwrap(), vec![2, 1, 3, 0, 1, 2]);
        assert_eq!(parse_seq("10,3,0", 12).unwrap(), vec![10, 3, 0]);
        assert_eq!(format_seq(&[2, 1, 3, 0], 4), "2130");
        assert_eq!(format_seq(&[10, 3], 12), "10,3");
        assert_eq!(format_dna(&[2, 1, 3, 0]).unwrap(), "GCTA");
        assert!(parse_seq("019", 4).is_err());
        assert!(parse_seq("0x1", 4).is_err());
    }

    #[test]
    fn pack_roundtrip_distinct() {
        let a = pack_u64(&[0, 1, 2, 3]).unwrap();
        let b = pack_u64(&[0, 1, 2]).unwrap();
        let c = pack_u64(&[1, 1, 2, 3]).unwrap();
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert!(pack_u64(&[0; 30]).is_none());
        assert!(pack_u64(&[4]).is_none());
    }

    /// 10^4 random sequences: stack root equals the leftmost-shortest
    /// reference, and roots are invariant under random removal orders.
    #[test]
    fn root_confluence_random() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(0x5eed_0001);
        for _ in 0..10_000 {
            let q = rng.random_range(3..=6) as u8;
            let n = rng.random_range(0..=24);
            let x: Vec<u8> = (0..n).map(|_| rng.random_range(0..q)).collect();
            let r1 = dedup_root(&x);
            // Random-order removal.
            let mut cur = x.clone();
            loop {
                let mut reps = Vec::new();
                for pos in 0..cur.len() {
                    for len in 1..=MAX_DUP_LEN {
                        if repeat_at(&cur, pos, len) {
                            reps.push((pos, len));
                        }
                    }
                }
                if reps.is_empty() {
                    break;
                }
                let &(pos, len) = reps.choose(&mut rng).unwrap();
                cur.drain(pos..pos + len);
            }
            assert_eq!(r1, cur, "divergent roots for {x:?}");
            assert!(is_irreducible(&r1));
        }
    }

    proptest! {
        #[test]
        fn duplication_preserves_root(
            x in proptest::collection::vec(0u8..4, 0..20),
            pos in 0usize..24,
            len in 1usize..=3,
        ) {
            if pos + len <= x.len() {
                let y = apply_duplication(&x, DuplicationEvent { pos, len }).unwrap();
                prop_assert_eq!(dedup_root(&y), dedup_root(&x));
            }
        }

        #[test]
        fn root_is_irreducible_and_fixed(x in proptest::collection::vec(0u8..5, 0..40)) {
            let r = dedup_root(&x);
            prop_assert!(is_irreducible(&r));
            prop_assert_eq!(dedup_root(&r), r.clone());
            prop_assert_eq!(is_irreducible(&x), r == x);
        }

        #[test]
        fn reversal_commutes_with_root(x in proptest::collection::vec(0u8..4, 0..40)) {
            prop_assert_eq!(dedup_root(&reverse(&x)), reverse(&dedup_root(&x)));
        }
    }
}
