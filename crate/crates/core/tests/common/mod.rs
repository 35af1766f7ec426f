//! Slow, independent oracles shared by the integration tests.
#![allow(dead_code)]

use free_meixner::{ratio, Rational};
use num_traits::{One, Zero};

/// All set partitions of `{1..n}` via restricted growth strings, blocks sorted.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            let k = labels.iter().copied().max().map_or(0, |m| m + 1);
            let mut blocks = vec![Vec::new(); k];
            for (pos, &l) in labels.iter().enumerate() {
                blocks[l].push(pos + 1);
            }
            out.push(blocks);
            return;
        }
        let next = labels.iter().copied().max().map_or(0, |m| m + 1);
        for l in 0..=next {
            labels.push(l);
            go(i + 1, n, labels, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// Crossing test straight from the definition: `p < q < r < s` with `p, r`
/// in one block and `q, s` in another.
pub fn crosses(blocks: &[Vec<usize>]) -> bool {
    for (i, u) in blocks.iter().enumerate() {
        for (j, v) in blocks.iter().enumerate() {
            if i == j {
                continue;
            }
            for &p in u {
                for &r in u {
                    for &q in v {
                        for &s in v {
                            if p < q && q < r && r < s {
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

pub fn noncrossing_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    set_partitions(n)
        .into_iter()
        .filter(|b| !crosses(b))
        .collect()
}

/// `C_0 = 1`, `C_{n+1} = sum C_i C_{n-i}`.
pub fn catalan_numbers(n: usize) -> Vec<u64> {
    let mut c = vec![1u64];
    for k in 0..n {
        c.push((0..=k).map(|i| c[i] * c[k - i]).sum());
    }
    c
}

/// `M_0 = M_1 = 1`, `M_{n+1} = M_n + sum_{i=0}^{n-1} M_i M_{n-1-i}`.
pub fn motzkin_numbers(n: usize) -> Vec<u64> {
    let mut m = vec![1u64, 1];
    for k in 1..n {
        m.push(m[k] + (0..k).map(|i| m[i] * m[k - 1 - i]).sum::<u64>());
    }
    m.truncate(n + 1);
    m
}

/// Moments from cumulants by summing over brute-force non-crossing partitions.
pub fn moments_by_partitions(cumulants: &[Rational], order: usize) -> Vec<Rational> {
    (0..=order)
        .map(|n| {
            noncrossing_partitions(n)
                .iter()
                .map(|blocks| {
                    blocks.iter().fold(Rational::one(), |acc, b| {
                        acc * cumulants[b.len() - 1].clone()
                    })
                })
                .fold(Rational::zero(), |acc, t| acc + t)
        })
        .collect()
}

/// Moments `(J^n)_{00}` of the Jacobi operator with diagonal `(0, a, a, ...)`
/// and squared off-diagonal `(1, 1+b, 1+b, ...)`: a weighted Motzkin path count.
pub fn jacobi_moments(a: &Rational, b: &Rational, order: usize) -> Vec<Rational> {
    let size = order + 2;
    let diag = |k: usize| if k == 0 { Rational::zero() } else { a.clone() };
    let down = |k: usize| {
        if k == 1 {
            Rational::one()
        } else {
            Rational::one() + b.clone()
        }
    };
    // v_k = number-weighted paths from level 0 ending at level k
    let mut v = vec![Rational::zero(); size];
    v[0] = Rational::one();
    let mut out = vec![Rational::one()];
    for _ in 0..order {
        let mut w = vec![Rational::zero(); size];
        for k in 0..size {
            if v[k].is_zero() {
                continue;
            }
            w[k] = w[k].clone() + v[k].clone() * diag(k);
            if k + 1 < size {
                w[k + 1] = w[k + 1].clone() + v[k].clone();
            }
            if k > 0 {
                w[k - 1] = w[k - 1].clone() + v[k].clone() * down(k);
            }
        }
        v = w;
        out.push(v[0].clone());
    }
    out
}

pub fn rat(n: i64, d: i64) -> Rational {
    ratio(n, d)
}
