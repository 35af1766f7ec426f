//! Moment/free-cumulant calculus.
//!
//! Moments and free cumulants are related by
//! `m_n = sum over non-crossing partitions V of {1..n} of prod_{B in V} R_|B|`.
//! Splitting off the block that contains 1 turns this into
//! `m_n = sum_{s=1}^{n} R_s [z^{n-s}] M(z)^s`, which is what the transforms
//! below evaluate (cubic in the order instead of Catalan-many terms).
//!
//! Free pairs `(X, Y)` are handled through their cumulants: mixed cumulants of
//! free variables vanish, so a joint moment is a sum over non-crossing
//! partitions whose blocks are monochromatic once `S = X + Y` is expanded.

use std::collections::HashMap;
use std::rc::Rc;

use crate::error::{domain, Error, Result};
use crate::ncpart;
use crate::scalar::Scalar;
use crate::sequence::{CumulantSequence, MomentSequence};

/// Largest order accepted by the sequence transforms.
pub const MAX_ORDER: usize = 64;

/// Truncation order used when callers do not choose one.
pub const DEFAULT_ORDER: usize = 16;

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        Err(Error::OrderCap {
            requested: order,
            cap: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

/// Coefficient table `powers[s][k] = [z^k] M(z)^s`, filled diagonal by diagonal.
struct PowerTable<T> {
    powers: Vec<Vec<T>>,
}

impl<T: Scalar> PowerTable<T> {
    fn new(order: usize) -> Self {
        let mut powers = vec![Vec::with_capacity(order + 1); order + 1];
        powers[0] = (0..=order)
            .map(|k| if k == 0 { T::one() } else { T::zero() })
            .collect();
        Self { powers }
    }

    /// Extends every power `s = 1..=n` to degree `n - s`; needs `m_0..m_{n-1}`.
    fn advance(&mut self, n: usize, moments: &[T]) {
        for s in 1..=n {
            let k = n - s;
            debug_assert_eq!(self.powers[s].len(), k);
            let mut acc = T::zero();
            for i in 0..=k {
                acc = acc + self.powers[s - 1][i].clone() * moments[k - i].clone();
            }
            self.powers[s].push(acc);
        }
    }

    fn coefficient(&self, s: usize, k: usize) -> &T {
        &self.powers[s][k]
    }
}

/// Moments `m_0..m_N` of the law with free cumulants `R_1..R_N`.
pub fn cumulants_to_moments<T: Scalar>(
    cumulants: &CumulantSequence<T>,
) -> Result<MomentSequence<T>> {
    let order = cumulants.order();
    check_order(order)?;
    let r = cumulants.values();
    let mut table = PowerTable::new(order);
    let mut moments = vec![T::one()];
    for n in 1..=order {
        table.advance(n, &moments);
        let mut m = T::zero();
        for s in 1..=n {
            m = m + r[s - 1].clone() * table.coefficient(s, n - s).clone();
        }
        moments.push(m);
    }
    MomentSequence::new(moments)
}

/// Inverse of [`cumulants_to_moments`]: solves for the full-block term order by order.
pub fn moments_to_cumulants<T: Scalar>(moments: &MomentSequence<T>) -> Result<CumulantSequence<T>> {
    let order = moments.order();
    if order == 0 {
        return Err(domain("need at least m_1 to produce a cumulant"));
    }
    check_order(order)?;
    let m = moments.values();
    let mut table = PowerTable::new(order);
    let mut r: Vec<T> = Vec::with_capacity(order);
    for n in 1..=order {
        table.advance(n, &m[..n]);
        let mut lower = T::zero();
        for s in 1..n {
            lower = lower + r[s - 1].clone() * table.coefficient(s, n - s).clone();
        }
        r.push(m[n].clone() - lower);
    }
    CumulantSequence::new(r)
}

/// Free additive convolution: cumulants add.
pub fn free_convolve<T: Scalar>(
    left: &CumulantSequence<T>,
    right: &CumulantSequence<T>,
) -> Result<CumulantSequence<T>> {
    if left.order() != right.order() {
        return Err(Error::OrderMismatch {
            left: left.order(),
            right: right.order(),
        });
    }
    let values = left
        .values()
        .iter()
        .zip(right.values())
        .map(|(a, b)| a.clone() + b.clone())
        .collect();
    CumulantSequence::new(values)
}

/// Whether a convolution power must correspond to a probability law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PowerMode {
    /// `t >= 1`, the range where the free convolution power is a law.
    #[default]
    Law,
    /// Any `t`: formal scaling of cumulants, not necessarily a law.
    Formal,
}

/// `t`-fold free convolution power: `R_n -> t R_n`.
pub fn convolution_power<T: Scalar>(
    cumulants: &CumulantSequence<T>,
    t: &T,
    mode: PowerMode,
) -> Result<CumulantSequence<T>> {
    if mode == PowerMode::Law && *t < T::one() {
        return Err(domain(format!(
            "free convolution power t = {t} is below 1; use formal mode for cumulant scaling"
        )));
    }
    CumulantSequence::new(
        cumulants
            .values()
            .iter()
            .map(|r| r.clone() * t.clone())
            .collect(),
    )
}

/// Dilation `D_lambda`: `R_n -> lambda^n R_n`.
pub fn dilate<T: Scalar>(cumulants: &CumulantSequence<T>, lambda: &T) -> CumulantSequence<T> {
    let mut power = T::one();
    let values = cumulants
        .values()
        .iter()
        .map(|r| {
            power = power.clone() * lambda.clone();
            r.clone() * power.clone()
        })
        .collect();
    CumulantSequence::from_values_unchecked(values)
}

/// Dilation by `sqrt(lambda_squared)` (positive root) for laws whose odd
/// cumulants vanish, so the result stays exact when the root is irrational.
pub fn dilate_by_root<T: Scalar>(
    cumulants: &CumulantSequence<T>,
    lambda_squared: &T,
) -> Result<CumulantSequence<T>> {
    if lambda_squared.is_negative() {
        return Err(domain("dilation square must be nonnegative"));
    }
    if let Some(lambda) = lambda_squared.sqrt_checked() {
        return Ok(dilate(cumulants, &lambda));
    }
    let mut values = Vec::with_capacity(cumulants.order());
    for (idx, r) in cumulants.values().iter().enumerate() {
        let n = idx + 1;
        if n % 2 == 1 {
            if !r.is_zero() {
                return Err(Error::Inexact(format!(
                    "sqrt({lambda_squared}) dilation of a sequence with nonzero odd cumulant R_{n}"
                )));
            }
            values.push(T::zero());
        } else {
            values.push(r.clone() * lambda_squared.powi((n / 2) as u32));
        }
    }
    CumulantSequence::new(values)
}

/// Translation by `c` (free convolution with the point mass at `c`).
pub fn translate<T: Scalar>(cumulants: &CumulantSequence<T>, c: &T) -> CumulantSequence<T> {
    let mut values = cumulants.values().to_vec();
    values[0] = values[0].clone() + c.clone();
    CumulantSequence::from_values_unchecked(values)
}

/// Letters of a word in the free pair `(X, Y)` and their sum `S = X + Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
    S,
}

/// Two free variables given by their free cumulants.
#[derive(Debug, Clone, PartialEq)]
pub struct FreePair<T> {
    x: CumulantSequence<T>,
    y: CumulantSequence<T>,
}

impl<T: Scalar> FreePair<T> {
    pub fn new(x: CumulantSequence<T>, y: CumulantSequence<T>) -> Result<Self> {
        if x.order() != y.order() {
            return Err(Error::OrderMismatch {
                left: x.order(),
                right: y.order(),
            });
        }
        Ok(Self { x, y })
    }

    pub fn order(&self) -> usize {
        self.x.order()
    }

    pub fn x_cumulants(&self) -> &CumulantSequence<T> {
        &self.x
    }

    pub fn y_cumulants(&self) -> &CumulantSequence<T> {
        &self.y
    }

    pub fn s_cumulants(&self) -> CumulantSequence<T> {
        free_convolve(&self.x, &self.y).expect("orders agree by construction")
    }

    /// `tau(Z_1 ... Z_n)` for a word in `X`, `Y`, `S`.
    pub fn joint_moment(&self, word: &[Letter]) -> Result<T> {
        if word.len() > self.order() {
            return Err(Error::InsufficientOrder {
                requested: word.len(),
                available: self.order(),
            });
        }
        Ok(JointMoments::new(self, word).interval(0, word.len()))
    }

    /// Multivariate free cumulant `R_n(Z_1, ..., Z_n)`, recovered from joint
    /// moments by inverting the moment-cumulant relation over the word.
    pub fn word_cumulant(&self, word: &[Letter]) -> Result<T> {
        Ok(self.word_cumulants(&[word])?.remove(0))
    }

    /// [`FreePair::word_cumulant`] for several words, sharing sub-word work.
    pub fn word_cumulants(&self, words: &[&[Letter]]) -> Result<Vec<T>> {
        let mut cache = WordCache {
            values: HashMap::new(),
            partitions: HashMap::new(),
        };
        words
            .iter()
            .map(|word| {
                if word.is_empty() {
                    return Err(domain("cumulant of an empty word"));
                }
                if word.len() > self.order() {
                    return Err(Error::InsufficientOrder {
                        requested: word.len(),
                        available: self.order(),
                    });
                }
                self.word_cumulant_memo(word, &mut cache)
            })
            .collect()
    }

    fn word_cumulant_memo(&self, word: &[Letter], cache: &mut WordCache<T>) -> Result<T> {
        if let Some(hit) = cache.values.get(word) {
            return Ok(hit.clone());
        }
        let n = word.len();
        if let std::collections::hash_map::Entry::Vacant(e) = cache.partitions.entry(n) {
            // proper partitions only; the one-block term is the unknown
            let proper = ncpart::enumerate_nc(n)?
                .into_iter()
                .filter(|v| v.num_blocks() > 1)
                .map(|v| v.blocks().to_vec())
                .collect();
            e.insert(Rc::new(proper));
        }
        let partitions = Rc::clone(&cache.partitions[&n]);
        let mut value = self.joint_moment(word)?;
        for blocks in partitions.iter() {
            let mut term = T::one();
            for block in blocks {
                let sub: Vec<Letter> = block.iter().map(|&i| word[i - 1]).collect();
                term = term * self.word_cumulant_memo(&sub, cache)?;
                if term.is_zero() {
                    break;
                }
            }
            value = value - term;
        }
        cache.values.insert(word.to_vec(), value.clone());
        Ok(value)
    }
}

struct WordCache<T> {
    values: HashMap<Vec<Letter>, T>,
    partitions: HashMap<usize, Rc<Vec<Vec<Vec<usize>>>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Colour {
    Neutral,
    X,
    Y,
    Mixed,
}

impl Colour {
    fn of(letter: Letter) -> Self {
        match letter {
            Letter::X => Colour::X,
            Letter::Y => Colour::Y,
            Letter::S => Colour::Neutral,
        }
    }

    fn join(self, letter: Letter) -> Self {
        match (self, Colour::of(letter)) {
            (c, Colour::Neutral) | (Colour::Neutral, c) => c,
            (a, b) if a == b => a,
            _ => Colour::Mixed,
        }
    }
}

/// Interval dynamic programme over non-crossing partitions of a word.
///
/// `interval(i, j)` is the joint moment of `word[i..j]`; `block(p, j, c, s)`
/// sums over ways to finish a block whose latest element is `p`, whose letters
/// have colour `c` and which already holds `s` elements.
struct JointMoments<'a, T> {
    pair: &'a FreePair<T>,
    word: &'a [Letter],
    intervals: HashMap<(usize, usize), T>,
    blocks: HashMap<(usize, usize, Colour, usize), T>,
}

impl<'a, T: Scalar> JointMoments<'a, T> {
    fn new(pair: &'a FreePair<T>, word: &'a [Letter]) -> Self {
        Self {
            pair,
            word,
            intervals: HashMap::new(),
            blocks: HashMap::new(),
        }
    }

    fn block_weight(&self, colour: Colour, size: usize) -> T {
        let rx = || self.pair.x.values()[size - 1].clone();
        let ry = || self.pair.y.values()[size - 1].clone();
        match colour {
            Colour::Neutral => rx() + ry(),
            Colour::X => rx(),
            Colour::Y => ry(),
            Colour::Mixed => T::zero(),
        }
    }

    fn interval(&mut self, i: usize, j: usize) -> T {
        if i >= j {
            return T::one();
        }
        if let Some(hit) = self.intervals.get(&(i, j)) {
            return hit.clone();
        }
        let value = self.block(i, j, Colour::of(self.word[i]), 1);
        self.intervals.insert((i, j), value.clone());
        value
    }

    fn block(&mut self, p: usize, j: usize, colour: Colour, size: usize) -> T {
        if colour == Colour::Mixed {
            return T::zero();
        }
        let key = (p, j, colour, size);
        if let Some(hit) = self.blocks.get(&key) {
            return hit.clone();
        }
        let mut value = self.block_weight(colour, size) * self.interval(p + 1, j);
        for q in p + 1..j {
            let next = colour.join(self.word[q]);
            if next == Colour::Mixed {
                continue;
            }
            let gap = self.interval(p + 1, q);
            if gap.is_zero() {
                continue;
            }
            value = value + gap * self.block(q, j, next, size + 1);
        }
        self.blocks.insert(key, value.clone());
        value
    }
}

/// A free pair encoded by the cumulants of `S = X + Y` and the split `alpha`:
/// `R_n(X) = alpha R_n(S)`, `R_n(Y) = (1 - alpha) R_n(S)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FreePairSpec<T> {
    s_cumulants: CumulantSequence<T>,
    alpha: T,
}

impl<T: Scalar> FreePairSpec<T> {
    pub fn new(s_cumulants: CumulantSequence<T>, alpha: T) -> Result<Self> {
        if alpha <= T::zero() || alpha >= T::one() {
            return Err(domain(format!("split alpha = {alpha} must lie in (0, 1)")));
        }
        Ok(Self { s_cumulants, alpha })
    }

    pub fn alpha(&self) -> &T {
        &self.alpha
    }

    pub fn beta(&self) -> T {
        T::one() - self.alpha.clone()
    }

    pub fn order(&self) -> usize {
        self.s_cumulants.order()
    }

    pub fn s_cumulants(&self) -> &CumulantSequence<T> {
        &self.s_cumulants
    }

    pub fn x_cumulants(&self) -> CumulantSequence<T> {
        scale(&self.s_cumulants, &self.alpha)
    }

    pub fn y_cumulants(&self) -> CumulantSequence<T> {
        scale(&self.s_cumulants, &self.beta())
    }

    /// The pair as two explicit cumulant sequences.
    pub fn pair(&self) -> FreePair<T> {
        FreePair {
            x: self.x_cumulants(),
            y: self.y_cumulants(),
        }
    }

    /// Same pair with `alpha` and `1 - alpha` exchanged, i.e. `X` and `Y` swapped.
    pub fn swapped(&self) -> Self {
        Self {
            s_cumulants: self.s_cumulants.clone(),
            alpha: self.beta(),
        }
    }
}

fn scale<T: Scalar>(r: &CumulantSequence<T>, c: &T) -> CumulantSequence<T> {
    CumulantSequence::from_values_unchecked(
        r.values().iter().map(|v| v.clone() * c.clone()).collect(),
    )
}

pub fn joint_moment_free_pair<T: Scalar>(pair: &FreePairSpec<T>, word: &[Letter]) -> Result<T> {
    if word.is_empty() {
        return Err(domain("word must be nonempty"));
    }
    pair.pair().joint_moment(word)
}

/// `[n]_q = 1 + q + ... + q^{n-1}` with `[0]_q = 0`.
pub fn q_integer<T: Scalar>(n: usize, q: &T) -> T {
    let mut acc = T::zero();
    let mut power = T::one();
    for _ in 0..n {
        acc = acc + power.clone();
        power = power * q.clone();
    }
    acc
}

/// Gaussian binomial `[n choose k]_q`, via `[n k] = [n-1 k-1] + q^k [n-1 k]`.
pub fn q_binomial<T: Scalar>(n: usize, k: usize, q: &T) -> T {
    if k > n {
        return T::zero();
    }
    let mut row = vec![T::one()];
    for m in 1..=n {
        let mut next = vec![T::zero(); m + 1];
        for j in 0..=m {
            let left = if j > 0 { row[j - 1].clone() } else { T::zero() };
            let right = if j < m {
                q.powi(j as u32) * row[j].clone()
            } else {
                T::zero()
            };
            next[j] = left + right;
        }
        row = next;
    }
    row[k].clone()
}

/// Cumulants from the q-deformed recurrence
/// `R_{n+1} = a R_n + b sum_{j=2}^{n-1} [n-1 choose j-1]_q R_j R_{n+1-j}`,
/// `R_1 = 0`, `R_2 = 1`.
pub fn q_cumulants<T: Scalar>(a: &T, b: &T, q: &T, order: usize) -> Result<CumulantSequence<T>> {
    if *q <= -T::one() || *q > T::one() {
        return Err(domain(format!("q = {q} must lie in (-1, 1]")));
    }
    if order < 2 {
        return Err(domain("q-recurrence needs order at least 2"));
    }
    check_order(order)?;
    let mut r = vec![T::zero(), T::one()];
    for n in 2..order {
        let mut sum = T::zero();
        for j in 2..n {
            sum = sum + q_binomial(n - 1, j - 1, q) * r[j - 1].clone() * r[n - j].clone();
        }
        r.push(a.clone() * r[n - 1].clone() + b.clone() * sum);
    }
    CumulantSequence::new(r)
}
