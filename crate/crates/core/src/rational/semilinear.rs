//! Ultimately periodic subsets of `Z`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::alphabet::{Alphabet, Letter};
use crate::automata::Nfa;
use crate::error::{Error, Result};
use crate::word::Word;

/// A subset of `Z` described by a window `[-T, T]` and two periodic tails.
///
/// For `x > T`, `x` is a member iff `x mod pos_period` is a positive residue;
/// for `x < -T` likewise with the negative tail. A period of `0` is an empty
/// tail. Values are kept normalized (minimal periods, then minimal
/// threshold), so structural equality coincides with equality of sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemilinearZ {
    threshold: i64,
    window: BTreeSet<i64>,
    pos_period: i64,
    pos_residues: BTreeSet<i64>,
    neg_period: i64,
    neg_residues: BTreeSet<i64>,
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Least common multiple where `0` stands for "no constraint".
fn lcm0(a: i64, b: i64) -> i64 {
    match (a, b) {
        (0, x) | (x, 0) => x,
        _ => a / gcd(a, b) * b,
    }
}

/// Smallest `x > t` with `x ≡ r (mod p)`.
fn first_above(t: i64, r: i64, p: i64) -> i64 {
    t + 1 + (r - t - 1).rem_euclid(p)
}

/// Largest `x < -t` with `x ≡ r (mod p)`.
fn first_below(t: i64, r: i64, p: i64) -> i64 {
    -t - 1 - (-t - 1 - r).rem_euclid(p)
}

impl SemilinearZ {
    pub fn empty() -> Self {
        SemilinearZ {
            threshold: 0,
            window: BTreeSet::new(),
            pos_period: 0,
            pos_residues: BTreeSet::new(),
            neg_period: 0,
            neg_residues: BTreeSet::new(),
        }
    }

    pub fn all() -> Self {
        Self::from_predicate(0, 1, 1, |_| true)
    }

    pub fn singleton(x: i64) -> Self {
        Self::from_finite([x])
    }

    pub fn from_finite(points: impl IntoIterator<Item = i64>) -> Self {
        let window: BTreeSet<i64> = points.into_iter().collect();
        let threshold = window.iter().map(|x| x.abs()).max().unwrap_or(0);
        let mut s = SemilinearZ { threshold, window, ..Self::empty() };
        s.normalize();
        s
    }

    /// `{x : x ≡ r (mod m)}` for `m ≥ 1`.
    pub fn residue_class(r: i64, m: i64) -> Self {
        assert!(m >= 1, "modulus must be positive");
        Self::from_predicate(0, m, m, |x| (x - r).rem_euclid(m) == 0)
    }

    /// Samples a predicate that is known to be periodic with the given
    /// periods beyond `threshold` (a period of `0` meaning empty tail).
    pub fn from_predicate(threshold: i64, pos_period: i64, neg_period: i64, f: impl Fn(i64) -> bool) -> Self {
        let t = threshold.max(0);
        let window = (-t..=t).filter(|&x| f(x)).collect();
        let pos_residues =
            if pos_period > 0 { (0..pos_period).filter(|&r| f(first_above(t, r, pos_period))).collect() } else { BTreeSet::new() };
        let neg_residues =
            if neg_period > 0 { (0..neg_period).filter(|&r| f(first_below(t, r, neg_period))).collect() } else { BTreeSet::new() };
        let mut s =
            SemilinearZ { threshold: t, window, pos_period: pos_period.max(0), pos_residues, neg_period: neg_period.max(0), neg_residues };
        s.normalize();
        s
    }

    /// Builds a value from raw parts, checking ranges, then normalizes.
    pub fn from_parts(threshold: i64, window: BTreeSet<i64>, pos: (i64, BTreeSet<i64>), neg: (i64, BTreeSet<i64>)) -> Result<Self> {
        if threshold < 0 || pos.0 < 0 || neg.0 < 0 {
            return Err(Error::Input("threshold and periods must be nonnegative".into()));
        }
        if window.iter().any(|x| x.abs() > threshold) {
            return Err(Error::Input("window point outside [-T, T]".into()));
        }
        for (p, residues) in [&pos, &neg] {
            if residues.iter().any(|&r| r < 0 || r >= *p) {
                return Err(Error::Input("residue outside [0, period)".into()));
            }
        }
        let mut s = SemilinearZ { threshold, window, pos_period: pos.0, pos_residues: pos.1, neg_period: neg.0, neg_residues: neg.1 };
        s.normalize();
        Ok(s)
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    pub fn window(&self) -> &BTreeSet<i64> {
        &self.window
    }

    pub fn pos_tail(&self) -> (i64, &BTreeSet<i64>) {
        (self.pos_period, &self.pos_residues)
    }

    pub fn neg_tail(&self) -> (i64, &BTreeSet<i64>) {
        (self.neg_period, &self.neg_residues)
    }

    pub fn contains(&self, x: i64) -> bool {
        if x.abs() <= self.threshold {
            self.window.contains(&x)
        } else if x > 0 {
            self.pos_period > 0 && self.pos_residues.contains(&x.rem_euclid(self.pos_period))
        } else {
            self.neg_period > 0 && self.neg_residues.contains(&x.rem_euclid(self.neg_period))
        }
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty() && self.pos_residues.is_empty() && self.neg_residues.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.pos_residues.is_empty() && self.neg_residues.is_empty()
    }

    /// Members in `[lo, hi]`, ascending.
    pub fn members_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&x| self.contains(x)).collect()
    }

    fn normalize(&mut self) {
        fn shrink(period: &mut i64, residues: &mut BTreeSet<i64>) {
            if residues.is_empty() {
                *period = 0;
                return;
            }
            let p = *period;
            if let Some(d) =
                (1..p).filter(|d| p % d == 0).find(|&d| (0..p).all(|r| residues.contains(&r) == residues.contains(&((r + d) % p))))
            {
                *residues = residues.iter().copied().filter(|&r| r < d).collect();
                *period = d;
            }
        }
        shrink(&mut self.pos_period, &mut self.pos_residues);
        shrink(&mut self.neg_period, &mut self.neg_residues);
        let pos_says = |x: i64| self.pos_period > 0 && self.pos_residues.contains(&x.rem_euclid(self.pos_period));
        let neg_says = |x: i64| self.neg_period > 0 && self.neg_residues.contains(&x.rem_euclid(self.neg_period));
        let mut t = self.threshold;
        while t > 0 && self.window.contains(&t) == pos_says(t) && self.window.contains(&-t) == neg_says(-t) {
            t -= 1;
        }
        if t < self.threshold {
            self.window.retain(|x| x.abs() <= t);
            self.threshold = t;
        }
    }

    fn combine(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Self {
        let t = self.threshold.max(other.threshold);
        let mut p = lcm0(self.pos_period, other.pos_period);
        let mut n = lcm0(self.neg_period, other.neg_period);
        if f(false, false) {
            p = p.max(1);
            n = n.max(1);
        }
        Self::from_predicate(t, p, n, |x| f(self.contains(x), other.contains(x)))
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Self {
        self.combine(&Self::empty(), |a, _| !a)
    }

    /// `{x + k : x ∈ self}`.
    pub fn shift(&self, k: i64) -> Self {
        Self::from_predicate(self.threshold + k.abs(), self.pos_period, self.neg_period, |x| self.contains(x - k))
    }

    /// `{-x : x ∈ self}`.
    pub fn negate(&self) -> Self {
        Self::from_predicate(self.threshold, self.neg_period, self.pos_period, |x| self.contains(-x))
    }

    /// `{x : m x + r ∈ self}` for `m ≥ 1`.
    pub fn preimage_affine(&self, m: i64, r: i64) -> Self {
        assert!(m >= 1, "multiplier must be positive");
        let t = (self.threshold + r.abs()) / m + 1;
        Self::from_predicate(t, self.pos_period, self.neg_period, |x| self.contains(m * x + r))
    }

    /// `{m x + r : x ∈ self}` for `m ≥ 1`.
    pub fn image_affine(&self, m: i64, r: i64) -> Self {
        assert!(m >= 1, "multiplier must be positive");
        let t = m * self.threshold + r.abs();
        let p = self.pos_period * m;
        let n = self.neg_period * m;
        Self::from_predicate(t, p, n, |y| (y - r).rem_euclid(m) == 0 && self.contains((y - r).div_euclid(m)))
    }

    /// `self + d N`: adds any nonnegative multiple of `d`.
    pub fn add_ray(&self, d: i64) -> Self {
        if d == 0 || self.is_empty() {
            return self.clone();
        }
        if d < 0 {
            return self.negate().add_ray(-d).negate();
        }
        let t = self.threshold + lcm0(d, self.pos_period).max(d);
        let neg = if self.neg_period > 0 { gcd(d, self.neg_period) } else { 0 };
        let floor = -self.threshold - d * (self.neg_period + 1);
        Self::from_predicate(t, d, neg, |x| {
            let mut y = x;
            let floor = floor.min(x - d * (self.neg_period + 1));
            while y >= floor {
                if self.contains(y) {
                    return true;
                }
                y -= d;
            }
            false
        })
    }

    /// Least member of each occupied positive residue class beyond `T`.
    fn pos_starts(&self) -> Vec<i64> {
        self.pos_residues.iter().map(|&r| first_above(self.threshold, r, self.pos_period)).collect()
    }

    fn neg_starts(&self) -> Vec<i64> {
        self.neg_residues.iter().map(|&r| first_below(self.threshold, r, self.neg_period)).collect()
    }

    fn union_all(parts: impl IntoIterator<Item = Self>) -> Self {
        parts.into_iter().fold(Self::empty(), |acc, s| acc.union(&s))
    }

    /// Minkowski sum `{x + y : x ∈ self, y ∈ other}`.
    pub fn sum(&self, other: &Self) -> Self {
        if self.is_empty() || other.is_empty() {
            return Self::empty();
        }
        let mut acc = Self::union_all(self.window.iter().map(|&w| other.shift(w)));
        if self.pos_period > 0 {
            let seeds = Self::union_all(self.pos_starts().into_iter().map(|f| other.shift(f)));
            acc = acc.union(&seeds.add_ray(self.pos_period));
        }
        if self.neg_period > 0 {
            let seeds = Self::union_all(self.neg_starts().into_iter().map(|f| other.shift(f)));
            acc = acc.union(&seeds.add_ray(-self.neg_period));
        }
        acc
    }

    /// All finite sums of members, including the empty sum `0`.
    pub fn star(&self) -> Self {
        let zero = Self::singleton(0);
        let mut acc = zero.clone();
        for &w in &self.window {
            acc = acc.add_ray(w);
        }
        let tails =
            self.pos_starts().into_iter().map(|f| (f, self.pos_period)).chain(self.neg_starts().into_iter().map(|f| (f, -self.neg_period)));
        for (f, d) in tails {
            // (f + dN)* = {0} ∪ (f + dN + fN)
            let term = zero.union(&Self::singleton(f).add_ray(d).add_ray(f));
            acc = acc.sum(&term);
        }
        acc
    }

    /// Semantic equality; the same as `==` on normalized values.
    pub fn same_set(&self, other: &Self) -> bool {
        self.combine(other, |a, b| a != b).is_empty()
    }

    /// Words `u^k` for `k` in the set, over a one-letter-relevant alphabet.
    pub fn to_nfa(&self, alphabet: &Alphabet, u: Letter) -> Result<Nfa> {
        if !alphabet.contains(u) {
            return Err(Error::AlphabetMismatch);
        }
        let power = |k: i64| Nfa::word(alphabet.clone(), &Word::letter(u).power(k));
        let mut out = Nfa::empty(alphabet.clone());
        for &w in &self.window {
            out = out.union(&power(w))?;
        }
        for f in self.pos_starts() {
            out = out.union(&power(f).concat(&power(self.pos_period).star())?)?;
        }
        for f in self.neg_starts() {
            out = out.union(&power(f).concat(&power(-self.neg_period).star())?)?;
        }
        Ok(out)
    }
}

fn write_set(f: &mut fmt::Formatter<'_>, set: &BTreeSet<i64>) -> fmt::Result {
    f.write_str("{")?;
    for (i, x) in set.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("}")
}

impl fmt::Display for SemilinearZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("window=")?;
        write_set(f, &self.window)?;
        write!(f, " pos=({},{},", self.threshold, self.pos_period)?;
        write_set(f, &self.pos_residues)?;
        write!(f, ") neg=({},{},", self.threshold, self.neg_period)?;
        write_set(f, &self.neg_residues)?;
        f.write_str(")")
    }
}

fn parse_set(text: &str) -> Result<BTreeSet<i64>> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| Error::Input(alloc::format!("expected {{...}}, found {text:?}")))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| Error::Input(alloc::format!("bad integer {s:?}"))))
        .collect()
}

/// `(T,p,{...})`
fn parse_tail(text: &str) -> Result<(i64, i64, BTreeSet<i64>)> {
    let bad = || Error::Input(alloc::format!("bad tail {text:?}"));
    let inner = text.trim().strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    let mut parts = inner.splitn(3, ',');
    let t = parts.next().ok_or_else(bad)?.trim().parse::<i64>().map_err(|_| bad())?;
    let p = parts.next().ok_or_else(bad)?.trim().parse::<i64>().map_err(|_| bad())?;
    let residues = parse_set(parts.next().ok_or_else(bad)?)?;
    Ok((t, p, residues))
}

impl FromStr for SemilinearZ {
    type Err = Error;

    /// Parses the display format `window={..} pos=(T,p,{..}) neg=(T,p,{..})`.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::Input(alloc::format!("expected window=.. pos=(..) neg=(..), found {text:?}"));
        let rest = text.strip_prefix("window=").ok_or_else(bad)?;
        let (window, rest) = rest.split_once(" pos=").ok_or_else(bad)?;
        let (pos, neg) = rest.split_once(" neg=").ok_or_else(bad)?;
        let window = parse_set(window)?;
        let (tp, pp, pr) = parse_tail(pos)?;
        let (tn, np, nr) = parse_tail(neg)?;
        if tp != tn {
            return Err(Error::Input("pos and neg thresholds differ".into()));
        }
        SemilinearZ::from_parts(tp, window, (pp, pr), (np, nr))
    }
}

impl SemilinearZ {
    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}
