//! Allocation-free canonical labeling for graphs with at most 11 nodes.
//!
//! Same refinement and target-cell rules as [`crate::canon`], specialized to
//! link fields packed in a `u64`. The exhaustive enumeration calls this a
//! quarter of a billion times, so partitions live in fixed arrays and leaf
//! fields are compared as packed integers (most-significant-bit-first, so
//! integer order is lexicographic order). No orbit pruning: searches on
//! graphs this small are cheap enough to walk in full.

const MAX_N: usize = 11;

/// Canonical (lexicographically smallest) link field of the graph described
/// by `field_lsb`, where bit `p` is link-field position `p`.
pub(crate) fn canonical_field_u64(n: usize, field_lsb: u64) -> u64 {
    assert!(n <= MAX_N);
    if n <= 1 {
        return 0;
    }
    let mut rows = [0u16; MAX_N];
    let mut pos = 0;
    for j in 1..n {
        for i in 0..j {
            if (field_lsb >> pos) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            pos += 1;
        }
    }

    let mut search = Search {
        rows,
        n,
        best: u64::MAX,
    };
    let mut order = [0u8; MAX_N];
    for (v, slot) in order.iter_mut().enumerate().take(n) {
        *slot = v as u8;
    }
    let mut cells = [(0u8, 0u8); MAX_N];
    cells[0] = (0, n as u8);
    search.explore(order, cells, 1);
    search.best.reverse_bits()
}

struct Search {
    rows: [u16; MAX_N],
    n: usize,
    best: u64, // msb-packed link field
}

impl Search {
    fn explore(&mut self, mut order: [u8; MAX_N], mut cells: [(u8, u8); MAX_N], mut ncells: usize) {
        refine(&self.rows, self.n, &mut order, &mut cells, &mut ncells);
        if ncells == self.n {
            let field = self.leaf_field(&order);
            if field < self.best {
                self.best = field;
            }
            return;
        }

        // first smallest non-singleton cell
        let mut target = 0;
        let mut tlen = u8::MAX;
        for (c, &(_, len)) in cells.iter().enumerate().take(ncells) {
            if len > 1 && len < tlen {
                tlen = len;
                target = c;
            }
        }
        let (start, len) = cells[target];
        let start = start as usize;

        for k in 0..len as usize {
            let mut corder = order;
            corder[start..=start + k].rotate_right(1);
            let mut ccells = cells;
            ccells[target + 1..=ncells].rotate_right(1);
            ccells[target] = (start as u8, 1);
            ccells[target + 1] = (start as u8 + 1, len - 1);
            self.explore(corder, ccells, ncells + 1);
        }
    }

    fn leaf_field(&self, order: &[u8; MAX_N]) -> u64 {
        let mut field = 0u64;
        let mut pos = 0;
        for b in 1..self.n {
            let row = self.rows[order[b] as usize];
            for a in 0..b {
                if (row >> order[a]) & 1 == 1 {
                    field |= 1 << (63 - pos);
                }
                pos += 1;
            }
        }
        field
    }
}

/// Counts per cell fit in a nibble (n <= 11), so the whole count vector packs
/// into one `u64` whose integer order matches the vector's lexicographic
/// order.
fn refine(
    rows: &[u16; MAX_N],
    n: usize,
    order: &mut [u8; MAX_N],
    cells: &mut [(u8, u8); MAX_N],
    ncells: &mut usize,
) {
    loop {
        if *ncells == n {
            return;
        }
        let mut masks = [0u16; MAX_N];
        for (c, &(start, len)) in cells.iter().enumerate().take(*ncells) {
            for k in start..start + len {
                masks[c] |= 1 << order[k as usize];
            }
        }
        let mut keys = [0u64; MAX_N];
        for &v in order.iter().take(n) {
            let mut key = 0u64;
            for mask in masks.iter().take(*ncells) {
                key = (key << 4) | (rows[v as usize] & mask).count_ones() as u64;
            }
            keys[v as usize] = key;
        }

        let mut new_cells = [(0u8, 0u8); MAX_N];
        let mut nnew = 0;
        for &(start, len) in cells.iter().take(*ncells) {
            if len == 1 {
                new_cells[nnew] = (start, 1);
                nnew += 1;
                continue;
            }
            let range = &mut order[start as usize..(start + len) as usize];
            // insertion sort: stable, ascending key
            for a in 1..range.len() {
                let mut b = a;
                while b > 0 && keys[range[b - 1] as usize] > keys[range[b] as usize] {
                    range.swap(b - 1, b);
                    b -= 1;
                }
            }
            let mut cell_start = 0u8;
            for k in 1..=len {
                if k == len
                    || keys[range[k as usize] as usize] != keys[range[cell_start as usize] as usize]
                {
                    new_cells[nnew] = (start + cell_start, k - cell_start);
                    nnew += 1;
                    cell_start = k;
                }
            }
        }

        let done = nnew == *ncells;
        cells[..nnew].copy_from_slice(&new_cells[..nnew]);
        *ncells = nnew;
        if done {
            return;
        }
    }
}
