//! Compressed-length computation on `u64` link fields (n <= 11, L <= 55).
//!
//! Mirrors the block grammar of [`crate::rle`] exactly but only reports the
//! minimal cost, never an emission. zcomplexity sums `2^-min(zeta, cap)`
//! over millions of fields, so this path works under a caller-supplied bound
//! and prunes positions whose best conceivable completion already exceeds it
//! (the completion estimate `w + ceil(remaining/2^w)` is a lower bound on
//! any suffix encoding, so pruning never changes results below the bound).
//!
//! Periodicity is read off `x_p = field ^ (field >> p)`: `bits[i..i+p+e)` is
//! `p`-periodic exactly when `e` low bits of `x_p >> i` are zero.

use crate::rle::{wordsize_range, GrammarVariant};

const INF: u32 = u32::MAX / 2;

#[inline]
fn mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Exact minimum compressed length over all legal wordsizes.
pub(crate) fn zeta_u64(n: usize, field: u64, variant: GrammarVariant) -> usize {
    zeta_bounded(n, field, variant, usize::MAX)
}

/// `min(zeta, cap)` where `cap = n(n+1)/2 + 1` is the uncompressed
/// description length — the only value zcomplexity ever needs.
pub(crate) fn zeta_capped_u64(n: usize, field: u64, variant: GrammarVariant) -> usize {
    let cap = n * (n + 1) / 2 + 1;
    zeta_bounded(n, field, variant, cap)
}

fn zeta_bounded(n: usize, field: u64, variant: GrammarVariant, init_bound: usize) -> usize {
    debug_assert!(n <= 11);
    if n == 0 {
        // no wordsize can hold a zero node count; the 1-bit description
        // stands as-is
        return init_bound.min(1);
    }
    let l = n * (n - 1) / 2;
    let field = field & mask(l);

    // x[p] valid on bits 0..l-p; prefilter: which p admit any c >= 2 repeat
    let xmax = l.saturating_sub(1).min(32);
    let mut x = [0u64; 33];
    let mut repeat_possible = [false; 33];
    for p in 1..=xmax {
        let xp = (field ^ (field >> p)) & mask(l - p);
        x[p] = xp;
        repeat_possible[p] = has_zero_run(xp, l - p, p);
    }

    let mut bound = init_bound;
    for w in wordsize_range(n) {
        bound = bound.min(cost_for_w(l, w, variant, bound, &x, &repeat_possible));
    }
    bound
}

/// True if `y` has a run of `p` zero bits within its low `valid` bits.
#[inline]
fn has_zero_run(y: u64, valid: usize, p: usize) -> bool {
    if p > valid {
        return false;
    }
    let mut z = !y & mask(valid);
    let mut have = 1usize;
    while have < p {
        let step = (p - have).min(have);
        z &= z >> step;
        have += step;
    }
    z != 0
}

fn cost_for_w(
    l: usize,
    w: u32,
    variant: GrammarVariant,
    init_bound: usize,
    x: &[u64; 33],
    repeat_possible: &[bool; 33],
) -> usize {
    let wu = w as usize;
    let header = 2 * wu + 1;
    let wmax = 1usize << w;
    let pmax = wmax.min(l);
    if l == 0 {
        return header.min(init_bound);
    }

    let mut dp = [INF; 56];
    dp[0] = 0;
    let mut best = if init_bound == usize::MAX {
        INF
    } else {
        init_bound.saturating_sub(header).min(INF as usize) as u32
    };

    // monotone deque over dp[k]-k for the literal layer (any p in 1..=pmax)
    let mut deque_pos = [0u8; 56];
    let mut deque_val = [0i32; 56];
    let (mut head, mut tail) = (0usize, 0usize);

    for i in 0..=l {
        // literal arrival: best dp[k]-k over k in [i-pmax, i)
        while head < tail && (deque_pos[head] as usize) + pmax < i {
            head += 1;
        }
        if head < tail {
            let cand = deque_val[head] + i as i32 + 2 * w as i32;
            if (cand as u32) < dp[i] {
                dp[i] = cand as u32;
            }
        }
        if i == l {
            break;
        }
        let di = dp[i];
        let remaining = l - i;

        if di < INF {
            // deque push for later literals
            let v = di as i32 - i as i32;
            while head < tail && deque_val[tail - 1] >= v {
                tail -= 1;
            }
            deque_pos[tail] = i as u8;
            deque_val[tail] = v;
            tail += 1;
        }

        // completion lower bound: one final block with maximal repeat
        let mc = wu + remaining.div_ceil(wmax);
        if di >= INF || di + mc as u32 >= best {
            continue;
        }

        // repeat blocks (c >= 2), only for periods that occur at all
        for p in 1..=pmax.min(remaining / 2) {
            if !repeat_possible[p] {
                continue;
            }
            let xp = x[p] >> i;
            if xp & mask(p) != 0 {
                continue;
            }
            let e = (xp.trailing_zeros() as usize).min(l - p - i);
            let cost = di + (2 * wu + p) as u32;
            let cmax = ((p + e) / p).min(wmax);
            for c in 2..=cmax {
                let j = i + c * p;
                if cost < dp[j] {
                    dp[j] = cost;
                }
            }
        }

        match variant {
            GrammarVariant::ExplicitLen => {
                // final block overruns the field end; p smallest first
                let plo = remaining.div_ceil(wmax).max(1);
                for p in plo..remaining.min(pmax + 1) {
                    let cost = di + (2 * wu + p) as u32;
                    if cost >= best {
                        break;
                    }
                    let c = remaining.div_ceil(p);
                    if c >= 2 && c <= wmax && (x[p] >> i) & mask(remaining - p) == 0 {
                        best = cost;
                        break;
                    }
                }
            }
            GrammarVariant::ImplicitFinalLen => {
                // final lengths are ceil(remaining/c); ascending via c descending
                let mut last_len = 0usize;
                for c in (1..=wmax).rev() {
                    let len = remaining.div_ceil(c);
                    if len == last_len {
                        continue;
                    }
                    last_len = len;
                    let cost = di + (wu + len) as u32;
                    if cost >= best {
                        break;
                    }
                    if len >= remaining || (x[len] >> i) & mask(remaining - len) == 0 {
                        best = cost;
                        break;
                    }
                }
            }
        }
    }

    if variant == GrammarVariant::ExplicitLen && dp[l] < best {
        best = dp[l];
    }
    if best >= INF {
        return init_bound;
    }
    (header + best as usize).min(init_bound)
}
