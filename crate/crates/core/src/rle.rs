//! Run-length compression of descriptions.
//!
//! A compressed stream is `w` ones, a zero, a `w`-bit node count, then a
//! sequence of blocks. A block is a `w`-bit repeat count, a `w`-bit payload
//! length, and the payload; expanding each payload `repeat` times in order
//! rebuilds the link field, with any overrun past its known end ignored.
//! All-zero count fields mean `2^w`. Two grammar variants exist because the
//! format's own accounting is ambiguous about the last block:
//!
//! * `explicit-len` — every block carries its length field. This is the
//!   self-delimiting, canonical decodable form.
//! * `implicit-final-len` — the final block omits its length field; the
//!   decoder recovers it as `ceil(remaining / repeat)`. This form is what
//!   the empty-network closed form counts.
//!
//! `compress` finds a minimum-length block parse by dynamic programming;
//! `zeta` is that minimum over every legal wordsize.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitString;
use crate::codec::Description;
use crate::error::Error;
use crate::Result;

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Default)]
pub enum GrammarVariant {
    ExplicitLen,
    #[default]
    ImplicitFinalLen,
}

impl fmt::Display for GrammarVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrammarVariant::ExplicitLen => "explicit-len",
            GrammarVariant::ImplicitFinalLen => "implicit-final-len",
        })
    }
}

impl FromStr for GrammarVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "explicit-len" => Ok(GrammarVariant::ExplicitLen),
            "implicit-final-len" => Ok(GrammarVariant::ImplicitFinalLen),
            other => Err(Error::InvalidParameter(format!(
                "unknown grammar variant {other:?}; use explicit-len or implicit-final-len"
            ))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompressedDescription {
    pub wordsize: u32,
    pub variant: GrammarVariant,
    pub bits: BitString,
}

impl CompressedDescription {
    /// Compressed length in bits.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

#[inline]
fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

#[inline]
fn floor_log2(n: usize) -> u32 {
    usize::BITS - 1 - n.leading_zeros()
}

/// Legal wordsizes for `n` nodes: integers in
/// `[log2 n, log2 n + log2(n-1) - 1]`. When the interval holds no integer
/// (n <= 3), the smallest wordsize able to hold `n` is used.
pub fn wordsize_range(n: usize) -> std::ops::RangeInclusive<u32> {
    let lo = ceil_log2(n).max(1);
    let links = n * n.saturating_sub(1) / 2;
    let hi = if links >= 1 { floor_log2(links) } else { 0 };
    if hi < lo {
        lo..=lo
    } else {
        lo..=hi
    }
}

/// The paper's closed-form zcomplexity of the empty (or full) network,
/// `2 + 3w + ceil(N(N-1)/2^(w+1))` at `w = ceil(log2 N)`.
pub fn empty_full_closed_form(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "closed form needs n >= 2, got {n}"
        )));
    }
    let w = ceil_log2(n) as usize;
    Ok(2 + 3 * w + (n * (n - 1)).div_ceil(1 << (w + 1)))
}

// ---------------------------------------------------------------------------
// parse search
// ---------------------------------------------------------------------------

const INF: u32 = u32::MAX / 2;

#[derive(Copy, Clone, Debug)]
struct Block {
    start: usize,
    repeat: u64,
    len: usize,
    implicit_len: bool,
}

struct Parse {
    cost: usize, // total bits, header included
    blocks: Vec<Block>,
}

/// Longest match table: `m[p-1][i]` = number of positions `k >= i` with
/// `bits[k] == bits[k+p]`, scanning while equal.
fn match_table(bits: &[bool], pmax: usize) -> Vec<Vec<u16>> {
    let l = bits.len();
    let mut table = Vec::with_capacity(pmax);
    for p in 1..=pmax {
        let mut row = vec![0u16; l.saturating_sub(p).max(1)];
        if l >= p {
            for i in (0..l - p).rev() {
                if bits[i] == bits[i + p] {
                    let next = if i + 1 < l - p { row[i + 1] } else { 0 };
                    row[i] = next + 1;
                }
            }
        }
        table.push(row);
    }
    table
}

fn minimal_parse(bits: &[bool], w: u32, variant: GrammarVariant) -> Parse {
    let l = bits.len();
    let header = 2 * w as usize + 1;
    let wmax = 1u64 << w; // largest expressible count
    let pmax_block = (wmax as usize).min(l.max(1));
    // final implicit lengths reach ceil(remaining/2), beyond the field width
    let pmax_final = if variant == GrammarVariant::ImplicitFinalLen {
        l.div_ceil(2).max(pmax_block)
    } else {
        pmax_block
    };
    let table = match_table(bits, pmax_final.min(l.saturating_sub(1)));
    let matches = |i: usize, p: usize| -> usize {
        if p > l.saturating_sub(1) || i >= l - p {
            0
        } else {
            table[p - 1][i] as usize
        }
    };

    let mut dp = vec![INF; l + 1];
    let mut prev: Vec<Option<Block>> = vec![None; l + 1];
    dp[0] = 0;
    // (cost excluding header, block) for the variant-specific last block
    let mut best_final: Option<(u32, Block)> = None;
    let relax_final = |cand: u32, block: Block, best: &mut Option<(u32, Block)>| {
        if best.as_ref().map_or(true, |(c, _)| cand < *c) {
            *best = Some((cand, block));
        }
    };

    for i in 0..l {
        if dp[i] >= INF {
            continue;
        }
        let remaining = l - i;
        for p in 1..=pmax_block.min(remaining) {
            let block_cost = 2 * w as usize + p;
            let m = matches(i, p);
            // c = 1 is a literal; larger counts need full matched periods
            let cmax = ((p + m) / p).min(wmax as usize);
            for c in 1..=cmax {
                let j = i + c * p;
                if j > l {
                    break;
                }
                let cand = dp[i] + block_cost as u32;
                if cand < dp[j] {
                    dp[j] = cand;
                    prev[j] = Some(Block {
                        start: i,
                        repeat: c as u64,
                        len: p,
                        implicit_len: false,
                    });
                }
            }
            if variant == GrammarVariant::ExplicitLen && p < remaining {
                // final block may overrun the link field; the excess is ignored
                let c = remaining.div_ceil(p) as u64;
                if c <= wmax && c >= 2 && p + m >= remaining {
                    relax_final(
                        dp[i] + block_cost as u32,
                        Block {
                            start: i,
                            repeat: c,
                            len: p,
                            implicit_len: false,
                        },
                        &mut best_final,
                    );
                }
            }
        }
        if variant == GrammarVariant::ImplicitFinalLen {
            for c in 1..=wmax {
                let len = remaining.div_ceil(c as usize);
                let periodic = len >= remaining || matches(i, len) >= remaining - len;
                if periodic {
                    relax_final(
                        dp[i] + w as usize as u32 + len as u32,
                        Block {
                            start: i,
                            repeat: c,
                            len,
                            implicit_len: true,
                        },
                        &mut best_final,
                    );
                }
            }
        }
    }

    let mut tail: Option<Block> = None;
    let mut cost = match variant {
        // explicit streams may also end with an exactly-covering block chain
        GrammarVariant::ExplicitLen => dp[l],
        GrammarVariant::ImplicitFinalLen => INF,
    };
    if let Some((c, block)) = best_final {
        if c < cost {
            cost = c;
            tail = Some(block);
        }
    }
    if l == 0 {
        cost = 0;
    }
    debug_assert!(cost < INF);

    let mut blocks = Vec::new();
    let mut at = match tail {
        Some(block) => {
            blocks.push(block);
            block.start
        }
        None => l,
    };
    while at > 0 {
        let block = prev[at].expect("dp path");
        blocks.push(block);
        at = block.start;
    }
    blocks.reverse();
    Parse {
        cost: header + cost as usize,
        blocks,
    }
}

// ---------------------------------------------------------------------------
// compress / decompress
// ---------------------------------------------------------------------------

fn count_field(value: u64, w: u32) -> u64 {
    debug_assert!(value >= 1 && value <= 1 << w);
    if value == 1 << w {
        0
    } else {
        value
    }
}

fn emit(d: &Description, w: u32, parse: &Parse) -> BitString {
    let field = d.link_field();
    let mut out = BitString::new();
    out.extend_repeat(true, w as usize);
    out.push(false);
    out.push_uint(count_field(d.node_count() as u64, w), w);
    for block in &parse.blocks {
        out.push_uint(count_field(block.repeat, w), w);
        if !block.implicit_len {
            out.push_uint(count_field(block.len as u64, w), w);
        }
        for k in 0..block.len {
            out.push(field.get(block.start + k));
        }
    }
    out
}

/// Minimum-length run-length encoding of `d` at wordsize `w`.
pub fn compress(d: &Description, w: u32, variant: GrammarVariant) -> Result<CompressedDescription> {
    let n = d.node_count();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "cannot compress the 0-node description: the node-count field encodes 1..=2^w".into(),
        ));
    }
    let range = wordsize_range(n);
    if !range.contains(&w) {
        return Err(Error::WordsizeOutOfRange {
            w,
            min: *range.start(),
            max: *range.end(),
            n,
        });
    }
    let bits: Vec<bool> = d.link_field().iter().collect();
    let parse = minimal_parse(&bits, w, variant);
    let out = emit(d, w, &parse);
    debug_assert_eq!(out.len(), parse.cost);

    let compressed = CompressedDescription {
        wordsize: w,
        variant,
        bits: out,
    };
    // An implicit-final stream can in principle parse two ways (a repeat
    // field whose remainder happens to look like a final payload). The
    // explicit grammar is self-delimiting, so only the implicit variant can
    // misread; fall back to the always-unambiguous literal tail there.
    if decompress(&compressed).as_ref() != Ok(d) {
        debug_assert_eq!(variant, GrammarVariant::ImplicitFinalLen);
        let literal = Parse {
            cost: 0,
            blocks: if bits.is_empty() {
                vec![]
            } else {
                vec![Block {
                    start: 0,
                    repeat: 1,
                    len: bits.len(),
                    implicit_len: true,
                }]
            },
        };
        let fallback = CompressedDescription {
            wordsize: w,
            variant,
            bits: emit(d, w, &literal),
        };
        debug_assert_eq!(decompress(&fallback).as_ref(), Ok(d));
        return Ok(fallback);
    }
    Ok(compressed)
}

fn decode_count(raw: u64, w: u32) -> u64 {
    if raw == 0 {
        1 << w
    } else {
        raw
    }
}

/// Expands a compressed stream back into the description it encodes.
pub fn decompress(c: &CompressedDescription) -> Result<Description> {
    let bits = &c.bits;
    let mut w = 0usize;
    while w < bits.len() && bits.get(w) {
        w += 1;
    }
    if w == 0 || w == bits.len() {
        return Err(Error::MalformedCompressed(
            "missing wordsize header".into(),
        ));
    }
    if w as u32 != c.wordsize {
        return Err(Error::MalformedCompressed(format!(
            "header wordsize {w} does not match the declared {}",
            c.wordsize
        )));
    }
    let mut pos = w + 1;
    if pos + w > bits.len() {
        return Err(Error::MalformedCompressed("truncated node count".into()));
    }
    let n = decode_count(bits.read_uint(pos, w as u32), w as u32) as usize;
    pos += w;
    let l = n * (n - 1) / 2;

    let mut field = BitString::zeros(l);
    let mut produced = 0usize;
    while produced < l {
        if pos + w > bits.len() {
            return Err(Error::MalformedCompressed(
                "block stream ends before the link field is filled".into(),
            ));
        }
        let repeat = decode_count(bits.read_uint(pos, w as u32), w as u32) as usize;
        pos += w;
        let remaining = l - produced;
        let stream_left = bits.len() - pos;

        let len = if c.variant == GrammarVariant::ImplicitFinalLen
            && stream_left == remaining.div_ceil(repeat)
        {
            stream_left // final block: its length field is implied
        } else {
            if pos + w > bits.len() {
                return Err(Error::MalformedCompressed("truncated length field".into()));
            }
            let len = decode_count(bits.read_uint(pos, w as u32), w as u32) as usize;
            pos += w;
            len
        };
        if pos + len > bits.len() {
            return Err(Error::MalformedCompressed("truncated payload".into()));
        }
        for r in 0..repeat {
            for k in 0..len {
                let at = produced + r * len + k;
                if at >= l {
                    break; // overrun past the known field end is ignored
                }
                if bits.get(pos + k) {
                    field.set(at, true);
                }
            }
        }
        produced = (produced + repeat * len).min(l);
        pos += len;
    }
    if pos != bits.len() {
        return Err(Error::MalformedCompressed(format!(
            "{} trailing bits after the link field is complete",
            bits.len() - pos
        )));
    }

    let mut full = BitString::new();
    full.extend_repeat(true, n);
    full.push(false);
    full.extend_from(&field);
    Description::from_bits(&full)
}

/// Best compressed length of `d` over every legal wordsize.
pub fn zeta(d: &Description, variant: GrammarVariant) -> usize {
    let n = d.node_count();
    if n == 0 {
        return d.len(); // nothing legal to try; treated as incompressible
    }
    if n <= 11 {
        return crate::rle_fast::zeta_u64(n, d.link_field().to_lsb_u64(), variant);
    }
    let bits: Vec<bool> = d.link_field().iter().collect();
    wordsize_range(n)
        .map(|w| minimal_parse(&bits, w, variant).cost)
        .min()
        .expect("non-empty wordsize range")
}

/// `zeta` capped at the uncompressed description length `n(n+1)/2 + 1`, the
/// form zcomplexity sums over.
pub fn zeta_capped(d: &Description, variant: GrammarVariant) -> usize {
    zeta(d, variant).min(d.len())
}
