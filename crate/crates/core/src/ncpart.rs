//! Non-crossing set partitions.
//!
//! A [`Partition`] of `{1, ..., n}` is stored in canonical form: indices inside
//! a block ascend and blocks are ordered by their least element, so two
//! partitions are equal exactly when their canonical forms are.

use std::fmt;

use crate::error::{domain, Error, Result};

/// Largest ground set accepted by the enumerators unless a cap is given.
pub const DEFAULT_ENUMERATION_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition of `{1..n}` from arbitrary-order blocks.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(domain("partition blocks must be nonempty"));
            }
            block.sort_unstable();
            for &i in block.iter() {
                if i == 0 || i > n {
                    return Err(domain(format!("index {i} outside 1..={n}")));
                }
                if seen[i] {
                    return Err(domain(format!("index {i} appears in two blocks")));
                }
                seen[i] = true;
            }
        }
        if seen.iter().skip(1).any(|s| !s) {
            return Err(domain("blocks do not cover the ground set"));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { n, blocks })
    }

    /// The partition of the empty set.
    pub fn empty() -> Self {
        Self {
            n: 0,
            blocks: Vec::new(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Number of blocks of cardinality one.
    pub fn singleton_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() == 1).count()
    }

    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// True iff some `i1 < j1 < i2 < j2` has `i1, i2` in one block and
    /// `j1, j2` in another.
    pub fn is_crossing(&self) -> bool {
        let mut owner = vec![usize::MAX; self.n + 1];
        for (id, block) in self.blocks.iter().enumerate() {
            for &i in block {
                owner[i] = id;
            }
        }
        for (x, bx) in self.blocks.iter().enumerate() {
            for (y, by) in self.blocks.iter().enumerate().skip(x + 1) {
                let lo = bx[0].min(by[0]);
                let hi = bx[bx.len() - 1].max(by[by.len() - 1]);
                // alternation count of the two labels restricted to [lo, hi]
                let mut runs = 0;
                let mut last = usize::MAX;
                for &o in &owner[lo..=hi] {
                    if (o == x || o == y) && o != last {
                        runs += 1;
                        last = o;
                    }
                }
                if runs >= 4 {
                    return true;
                }
            }
        }
        false
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, block) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, i) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{i}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

pub fn is_crossing(p: &Partition) -> bool {
    p.is_crossing()
}

pub fn singleton_count(p: &Partition) -> usize {
    p.singleton_count()
}

/// All of NC(n), canonical and without duplicates.
pub fn enumerate_nc(n: usize) -> Result<Vec<Partition>> {
    enumerate_nc_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_nc_capped(n: usize, cap: usize) -> Result<Vec<Partition>> {
    check_cap(n, cap)?;
    Ok(into_partitions(n, nc_raw(n)))
}

/// NC(n) restricted to blocks of size at most two.
pub fn enumerate_nc_le2(n: usize) -> Result<Vec<Partition>> {
    enumerate_nc_le2_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_nc_le2_capped(n: usize, cap: usize) -> Result<Vec<Partition>> {
    check_cap(n, cap)?;
    Ok(into_partitions(n, nc_le2_raw(n)))
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::OrderCap { requested: n, cap })
    } else {
        Ok(())
    }
}

/// Partitions of `0..len` as lists of 0-based blocks (unsorted block order).
type Raw = Vec<Vec<Vec<usize>>>;

fn into_partitions(n: usize, raw: Raw) -> Vec<Partition> {
    raw.into_iter()
        .map(|mut blocks| {
            for b in &mut blocks {
                for i in b.iter_mut() {
                    *i += 1;
                }
            }
            blocks.sort_unstable_by_key(|b| b[0]);
            Partition { n, blocks }
        })
        .collect()
}

fn shifted(parts: &Raw, offset: usize) -> Raw {
    parts
        .iter()
        .map(|p| {
            p.iter()
                .map(|b| b.iter().map(|i| i + offset).collect())
                .collect()
        })
        .collect()
}

fn product(left: &Raw, right: &Raw) -> Raw {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for l in left {
        for r in right {
            let mut p = l.clone();
            p.extend(r.iter().cloned());
            out.push(p);
        }
    }
    out
}

// First-block decomposition: the block of 0 is {0 = p1 < p2 < ...}; the gaps
// between consecutive elements and the tail after the last are independent.
// `table[k]` holds NC(k) for every k below the length being built.
fn nc_raw(n: usize) -> Raw {
    let mut table: Vec<Raw> = vec![vec![Vec::new()]];
    for len in 1..=n {
        let mut out = Vec::new();
        grow_block(len, vec![0], vec![Vec::new()], &table, &mut out);
        table.push(out);
    }
    table.swap_remove(n)
}

fn grow_block(len: usize, block: Vec<usize>, acc: Raw, table: &[Raw], out: &mut Raw) {
    let last = *block.last().expect("block is nonempty");
    let tail = shifted(&table[len - last - 1], last + 1);
    for mut p in product(&acc, &tail) {
        p.insert(0, block.clone());
        out.push(p);
    }
    for next in last + 1..len {
        let gap = shifted(&table[next - last - 1], last + 1);
        let mut extended = block.clone();
        extended.push(next);
        grow_block(len, extended, product(&acc, &gap), table, out);
    }
}

// The element 0 is either a singleton or paired with some `partner`, which
// splits the rest into an inside and an outside interval.
fn nc_le2_raw(n: usize) -> Raw {
    let mut table: Vec<Raw> = vec![vec![Vec::new()]];
    for len in 1..=n {
        let mut out = Vec::new();
        for mut p in shifted(&table[len - 1], 1) {
            p.insert(0, vec![0]);
            out.push(p);
        }
        for partner in 1..len {
            let inside = shifted(&table[partner - 1], 1);
            let outside = shifted(&table[len - partner - 1], partner + 1);
            for mut p in product(&inside, &outside) {
                p.insert(0, vec![0, partner]);
                out.push(p);
            }
        }
        table.push(out);
    }
    table.swap_remove(n)
}
