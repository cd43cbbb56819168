//! Bounded-block edit distance: can `a` be turned into `b` by at most `p`
//! substring replacements `u -> v` with `max(|u|, |v|) <= L`?
//!
//! The search is constructive and therefore sound. Each replacement is
//! anchored within a window of `L - 1` positions before the first divergence
//! of the remaining suffixes; completeness within that window is a heuristic
//! (a `true` answer always exhibits a valid edit sequence, a `false` answer
//! may miss exotic overlapping decompositions).

use std::collections::HashMap;

/// Substring-edit locality constant: one duplication+substitution round
/// alters the root within a window of at most this length.
pub const SUBSTRING_EDIT_LEN: usize = 17;

/// True if at most `p` L-substring edits transform `a` into `b`.
pub fn check_substring_edits(a: &[u8], b: &[u8], p: usize, l_max: usize) -> bool {
    assert!(l_max >= 1);
    let mut memo = HashMap::new();
    search(a, b, 0, 0, p, l_max, &mut memo)
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn search(
    a: &[u8],
    b: &[u8],
    i: usize,
    j: usize,
    budget: usize,
    l_max: usize,
    memo: &mut HashMap<(usize, usize, usize), bool>,
) -> bool {
    if a[i..] == b[j..] {
        return true;
    }
    if budget == 0 {
        return false;
    }
    // Each edit shifts the length by at most l_max.
    let rem_a = a.len() - i;
    let rem_b = b.len() - j;
    if rem_a.abs_diff(rem_b) > budget * l_max {
        return false;
    }
    if let Some(&hit) = memo.get(&(i, j, budget)) {
        return hit;
    }

    let d = common_prefix(&a[i..], &b[j..]);
    // An edit must start no later than the first divergence and can reach
    // back at most L-1 positions into the matched prefix.
    let lo = i + d.saturating_sub(l_max - 1);
    let hi = i + d;
    let mut ok = false;
    'outer: for s in (lo..=hi).rev() {
        let js = j + (s - i);
        for del in 0..=l_max.min(a.len() - s) {
            for ins in 0..=l_max.min(b.len() - js) {
                if del == 0 && ins == 0 {
                    continue;
                }
                if search(a, b, s + del, js + ins, budget - 1, l_max, memo) {
                    ok = true;
                    break 'outer;
                }
            }
        }
    }
    memo.insert((i, j, budget), ok);
    ok
}
