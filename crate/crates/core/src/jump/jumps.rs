use num_complex::Complex64;
use rayon::prelude::*;

use crate::analytic::q_int;
use crate::cf_core::{denominator_continuants, infinity_continuant_digits, CFWord, IntPoly, RatFuncQ};
use crate::error::{Error, Result};
use crate::q_series::IntLaurent;

/// `Jump_x(q) = [x]_q - [x]_q^-` for `x = [[c_1, ..., c_N]]`.
///
/// With `t = (c_2, ..., c_N)` this is `q^{C_N}(1 - q) / (a(t) A(t))`, where
/// `a(t) = b_N` and `A(t)` is the infinity continuant of `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct JumpRecord {
    pub word: CFWord,
    pub weight: u64,
    pub value: JumpValue,
}

#[derive(Clone, Debug, PartialEq)]
pub enum JumpValue {
    Symbolic(RatFuncQ),
    Numeric(Complex64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum JumpMode {
    Symbolic,
    Numeric(Complex64),
}

fn jump_polys(word: &CFWord) -> (IntPoly, IntPoly) {
    let d = word.digits();
    let b = denominator_continuants(d).pop().unwrap();
    let big_b = infinity_continuant_digits(&d[1..]);
    (b, big_b)
}

pub fn jump_symbolic(word: &CFWord) -> RatFuncQ {
    let (b, big_b) = jump_polys(word);
    let num = IntPoly::from_i64s(&[1, -1]).shift_up(word.weight() as usize);
    RatFuncQ::new(num, &b * &big_b).expect("continuants have constant term 1")
}

/// Numeric jump by the floating-point recursion for `b` and `A`.
pub fn jump_numeric(word: &CFWord, q: Complex64) -> Complex64 {
    let d = word.digits();
    let one = Complex64::new(1.0, 0.0);
    // b_{k-1}, b_k with b_0 = 0, b_1 = 1
    let (mut prev, mut cur) = (Complex64::new(0.0, 0.0), one);
    for k in 1..d.len() {
        let next = q_int(d[k], q) * cur - q.powu(d[k - 1] - 1) * prev;
        prev = cur;
        cur = next;
    }
    let big_b = cur - q.powu(d[d.len() - 1] - 1) * (one - q) * prev;
    let big_b = if d.len() == 1 { one } else { big_b };
    q.powu(word.weight() as u32) * (one - q) / (cur * big_b)
}

pub fn jump_at(word: &CFWord, mode: JumpMode) -> JumpRecord {
    let value = match mode {
        JumpMode::Symbolic => JumpValue::Symbolic(jump_symbolic(word)),
        JumpMode::Numeric(q) => JumpValue::Numeric(jump_numeric(word, q)),
    };
    JumpRecord { word: word.clone(), weight: word.weight(), value }
}

/// All words with `1 <= C_N <= max_weight`, ordered by `(C_N, digits)`.
pub fn words_up_to_weight(max_weight: u64, budget: usize) -> Result<Vec<CFWord>> {
    let mut by_weight: Vec<Vec<Vec<u32>>> = vec![Vec::new(); max_weight as usize + 1];
    // A word of weight C is a composition of C into parts c_i - 1 >= 1.
    let mut stack: Vec<(Vec<u32>, u64)> = vec![(Vec::new(), 0)];
    let mut count = 0usize;
    while let Some((w, c)) = stack.pop() {
        if !w.is_empty() {
            count += 1;
            if count > budget {
                return Err(Error::EnumerationBudget { budget });
            }
            by_weight[c as usize].push(w.clone());
        }
        for part in 1..=(max_weight - c) {
            let mut next = w.clone();
            next.push(part as u32 + 1);
            stack.push((next, c + part));
        }
    }
    Ok(by_weight
        .into_iter()
        .flat_map(|mut ws| {
            ws.sort();
            ws.into_iter()
        })
        .map(|d| CFWord::new(d).expect("digits >= 2"))
        .collect())
}

/// Default cap on the number of enumerated words.
pub const DEFAULT_ENUMERATION_BUDGET: usize = 50_000_000;

/// Sum of all symbolic jumps with `C_N <= k`, modulo `q^{k+1}`.
pub fn formal_total_jump(k: u64) -> Result<IntLaurent> {
    formal_total_jump_with_budget(k, DEFAULT_ENUMERATION_BUDGET)
}

pub fn formal_total_jump_with_budget(k: u64, budget: usize) -> Result<IntLaurent> {
    let order = k as i64 + 1;
    let words = words_up_to_weight(k, budget)?;
    let terms: Vec<IntLaurent> = words
        .par_iter()
        .map(|w| IntLaurent::from_ratfunc(&jump_symbolic(w), order))
        .collect::<Result<_>>()?;
    Ok(terms.iter().fold(IntLaurent::zero(order), |acc, t| &acc + t))
}

/// `sum_{i >= 1} ([y_i]_q - [y_i]_q^-)` over the sorted rationals
/// `y_1 < y_2 < ...` with `C_N <= k`, computed from values and left limits
/// rather than the closed jump formula.
pub fn telescoped_total_jump(k: u64) -> Result<IntLaurent> {
    let order = k as i64 + 1;
    let words = words_up_to_weight(k, DEFAULT_ENUMERATION_BUDGET)?;
    let mut sum = IntLaurent::zero(order);
    for w in &words {
        let v = IntLaurent::from_ratfunc(&crate::cf_core::q_rational(w), order)?;
        let l = IntLaurent::from_ratfunc(&crate::cf_core::left_limit(w), order)?;
        sum = &sum + &(&v - &l);
    }
    Ok(sum)
}

/// Result of a numeric total-jump run.
#[derive(Clone, Debug, PartialEq)]
pub struct TotalJumpReport {
    pub q: Complex64,
    /// `q / (1 - q)`.
    pub target: Complex64,
    pub partial: Complex64,
    /// Largest `C_N` visited.
    pub depth: u64,
    pub residual: f64,
    /// Pruning threshold of the final pass.
    pub epsilon: f64,
    pub nodes: usize,
}

/// Scalar type for the tree walk: `f64` for real `q`, complex otherwise.
trait Scalar:
    Copy
    + Send
    + Sync
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::AddAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn abs(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn abs(self) -> f64 {
        self.norm()
    }
}

#[derive(Clone, Copy)]
struct Node<T> {
    /// `b_{N-1}`.
    bm1: T,
    /// `q^{c_{N-1} - 1} b_{N-2}`.
    sub: T,
    c: u32,
    weight: u32,
}

/// Power and q-integer tables, sized to the deepest level the pruning can reach.
struct Walker<T> {
    pow: Vec<T>,
    qint: Vec<T>,
    /// `q^k (1 - q)`.
    pow_gap: Vec<T>,
    eps: f64,
}

struct Partial<T> {
    sum: T,
    nodes: usize,
    depth: u64,
}

impl<T: Scalar> Partial<T> {
    fn new() -> Self {
        Partial { sum: T::zero(), nodes: 0, depth: 0 }
    }

    fn absorb(&mut self, other: Partial<T>) {
        self.sum += other.sum;
        self.nodes += other.nodes;
        self.depth = self.depth.max(other.depth);
    }
}

impl<T: Scalar> Walker<T> {
    fn new(q: T, r: f64, eps: f64) -> Self {
        // every visited node has |jump| >= eps and |jump| <= K r^weight
        let levels = ((eps.ln() - 8.0) / r.ln()).ceil().clamp(8.0, 4000.0) as usize + 2;
        let mut pow = vec![T::one()];
        let mut qint = vec![T::zero()];
        for k in 0..levels {
            pow.push(pow[k] * q);
            qint.push(qint[k] + pow[k]);
        }
        let gap = T::one() - q;
        let pow_gap = pow.iter().map(|&p| p * gap).collect();
        Walker { pow, qint, pow_gap, eps }
    }

    fn limit(&self) -> u32 {
        self.pow.len() as u32 - 2
    }

    #[inline]
    fn jump(&self, n: &Node<T>) -> (T, T) {
        let c = n.c as usize;
        let b = self.qint[c] * n.bm1 - n.sub;
        let big_b = b - self.pow_gap[c - 1] * n.bm1;
        (self.pow_gap[n.weight as usize] / (b * big_b), b)
    }

    #[inline]
    fn children(&self, n: &Node<T>, b: T) -> [Node<T>; 2] {
        [
            Node { c: n.c + 1, weight: n.weight + 1, ..*n },
            Node { bm1: b, sub: self.pow[n.c as usize - 1] * n.bm1, c: 2, weight: n.weight + 1 },
        ]
    }

    fn root() -> Node<T> {
        Node { bm1: T::zero(), sub: T::zero() - T::one(), c: 2, weight: 1 }
    }

    fn walk(&self, root: Node<T>, budget: usize) -> Result<Partial<T>> {
        let mut out = Partial::new();
        let mut stack = vec![root];
        let limit = self.limit();
        while let Some(n) = stack.pop() {
            let (j, b) = self.jump(&n);
            if j.abs() < self.eps {
                continue;
            }
            out.sum += j;
            out.nodes += 1;
            out.depth = out.depth.max(n.weight as u64);
            if out.nodes > budget || n.weight >= limit {
                return Err(Error::EnumerationBudget { budget });
            }
            stack.extend(self.children(&n, b));
        }
        Ok(out)
    }

    /// Breadth-first head of the tree, leaving a deterministic frontier.
    fn frontier(&self, levels: u32) -> (Partial<T>, Vec<Node<T>>) {
        let mut head = Partial::new();
        let mut layer = vec![Self::root()];
        for _ in 0..levels {
            let mut next = Vec::with_capacity(2 * layer.len());
            for n in &layer {
                let (j, b) = self.jump(n);
                if j.abs() < self.eps {
                    continue;
                }
                head.sum += j;
                head.nodes += 1;
                head.depth = head.depth.max(n.weight as u64);
                next.extend(self.children(n, b));
            }
            layer = next;
        }
        (head, layer)
    }

    fn run(&self, budget: usize) -> Result<Partial<T>> {
        let (mut total, frontier) = self.frontier(10);
        let parts: Vec<Result<Partial<T>>> = frontier.par_iter().map(|&n| self.walk(n, budget)).collect();
        for p in parts {
            total.absorb(p?);
        }
        if total.nodes > budget {
            return Err(Error::EnumerationBudget { budget });
        }
        Ok(total)
    }
}

fn total_jump_passes<T: Scalar>(q: T, r: f64, target: T, tol: f64, budget: usize) -> Result<(Partial<T>, f64, f64)> {
    let mut eps = tol;
    let mut history: Vec<(f64, f64)> = Vec::new();
    let mut used = 0usize;
    loop {
        let p = Walker::new(q, r, eps).run(budget.saturating_sub(used))?;
        used += p.nodes;
        let residual = (p.sum - target).abs();
        if residual < tol {
            return Ok((p, residual, eps));
        }
        history.push((eps.ln(), residual.ln()));
        // residual ~ eps^s: extrapolate the threshold once two passes exist
        let next = match history.as_slice() {
            [.., (e0, r0), (e1, r1)] if r1 < r0 => {
                let slope = (r1 - r0) / (e1 - e0);
                let want = (tol * 0.5).ln();
                (e1 + (want - r1) / slope.max(0.05)).exp().max(eps * 1e-4)
            }
            _ => eps / 10.0,
        };
        eps = next.min(eps / 2.0);
        if eps < 1e-300 {
            return Err(Error::ToleranceUnreachable { tol, achieved: residual });
        }
    }
}

/// Sum numeric jumps over the word tree until the partial sum is within
/// `tol` of `q/(1 - q)`.
///
/// The tree has root `[[2]]`; each word `w` has children "last digit + 1"
/// and "append 2", both raising `C_N` by one. Subtrees whose root jump is
/// below the pruning threshold are skipped. The threshold for the next pass
/// is extrapolated from the residuals of earlier passes. Subtrees of a
/// fixed frontier are walked in parallel and reduced in frontier order.
pub fn numeric_total_jump(q: Complex64, tol: f64, budget: usize) -> Result<TotalJumpReport> {
    let r = q.norm();
    if !(r < 1.0) || r == 0.0 {
        return Err(Error::domain("numeric_total_jump needs 0 < |q| < 1"));
    }
    let target = q / (Complex64::new(1.0, 0.0) - q);
    let (partial, nodes, depth, residual, epsilon) = if q.im == 0.0 {
        let (p, res, eps) = total_jump_passes(q.re, r, target.re, tol, budget)?;
        (Complex64::new(p.sum, 0.0), p.nodes, p.depth, res, eps)
    } else {
        let (p, res, eps) = total_jump_passes(q, r, target, tol, budget)?;
        (p.sum, p.nodes, p.depth, res, eps)
    };
    Ok(TotalJumpReport { q, target, partial, depth, residual, epsilon, nodes })
}

/// `Jump_*(q, z)_s` restricted to `C_N <= max_weight`: the sum of
/// `Jump_x(q) z^N` over words with `c_1 >= 3` and exactly `s` digits `>= 3`.
///
/// Returns the partial sum and a bound on the omitted words from
/// `Jump_x(q) <= q^{C_N}(1 - q)` (valid when `2 q z < 1`).
pub fn jump_star(q: f64, z: f64, s: usize, max_weight: u64) -> Result<(f64, f64)> {
    let words = words_up_to_weight(max_weight, DEFAULT_ENUMERATION_BUDGET)?;
    let qc = Complex64::new(q, 0.0);
    let sum = words
        .iter()
        .filter(|w| w.digits()[0] >= 3 && w.digits().iter().filter(|&&c| c >= 3).count() == s)
        .map(|w| jump_numeric(w, qc).re * z.powi(w.len() as i32))
        .sum();
    let x = 2.0 * q * z;
    let tail = if x < 1.0 { (1.0 - q) / 2.0 * x.powi(max_weight as i32 + 1) / (1.0 - x) } else { f64::INFINITY };
    Ok((sum, tail))
}
