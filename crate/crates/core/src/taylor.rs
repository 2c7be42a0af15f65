//! Multi-indices over `(t, x, z)` and truncated Taylor series of total degree 3.
//!
//! A [`Taylor3`] stores normalized Taylor coefficients `c_J = ∂^J f / J!` about
//! a base point together with the highest order through which they are valid.
//! Differentiation lowers that order by one, so a chain of total derivatives
//! never silently reads coefficients that were truncated away.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Highest derivative order carried by jets and series.
pub const MAX_ORDER: usize = 3;
/// Number of multi-indices in three variables with total order ≤ 3.
pub const N_COEFFS: usize = 20;

/// Direction of an independent variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    T = 0,
    X = 1,
    Z = 2,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::T, Var::X, Var::Z];
}

/// Sorted multi-index: counts of `t`, `x`, `z` derivatives.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub [u8; 3]);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex([0, 0, 0]);

    pub const fn new(t: u8, x: u8, z: u8) -> Self {
        MultiIndex([t, x, z])
    }

    pub fn order(self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    pub fn count(self, v: Var) -> u8 {
        self.0[v as usize]
    }

    pub fn plus(self, v: Var) -> MultiIndex {
        let mut m = self.0;
        m[v as usize] += 1;
        MultiIndex(m)
    }

    pub fn minus(self, v: Var) -> Option<MultiIndex> {
        let mut m = self.0;
        m[v as usize] = m[v as usize].checked_sub(1)?;
        Some(MultiIndex(m))
    }

    /// `J! = t! x! z!`.
    pub fn factorial(self) -> f64 {
        self.0.iter().map(|&c| (1..=c as u32).product::<u32>() as f64).product()
    }

    /// Position in [`ALL_INDICES`]; `None` above order 3.
    pub fn slot(self) -> Option<usize> {
        if self.order() > MAX_ORDER {
            return None;
        }
        ALL_INDICES.iter().position(|&m| m == self)
    }

    /// Position in [`ALL_INDICES`]; panics above order 3.
    pub fn index(self) -> usize {
        SLOT[self.0[0] as usize][self.0[1] as usize][self.0[2] as usize] as usize
    }

    /// Is `other ≤ self` componentwise.
    pub fn contains(self, other: MultiIndex) -> bool {
        (0..3).all(|i| other.0[i] <= self.0[i])
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order() == 0 {
            return write!(f, "∅");
        }
        for (v, name) in Var::ALL.iter().zip(["t", "x", "z"]) {
            for _ in 0..self.count(*v) {
                write!(f, "{}", name)?;
            }
        }
        Ok(())
    }
}

/// All multi-indices of order ≤ 3, graded by order.
pub const ALL_INDICES: [MultiIndex; N_COEFFS] = [
    MultiIndex::new(0, 0, 0),
    MultiIndex::new(1, 0, 0),
    MultiIndex::new(0, 1, 0),
    MultiIndex::new(0, 0, 1),
    MultiIndex::new(2, 0, 0),
    MultiIndex::new(1, 1, 0),
    MultiIndex::new(1, 0, 1),
    MultiIndex::new(0, 2, 0),
    MultiIndex::new(0, 1, 1),
    MultiIndex::new(0, 0, 2),
    MultiIndex::new(3, 0, 0),
    MultiIndex::new(2, 1, 0),
    MultiIndex::new(2, 0, 1),
    MultiIndex::new(1, 2, 0),
    MultiIndex::new(1, 1, 1),
    MultiIndex::new(1, 0, 2),
    MultiIndex::new(0, 3, 0),
    MultiIndex::new(0, 2, 1),
    MultiIndex::new(0, 1, 2),
    MultiIndex::new(0, 0, 3),
];

const SLOT: [[[u8; 4]; 4]; 4] = build_slots();

const fn build_slots() -> [[[u8; 4]; 4]; 4] {
    let mut s = [[[u8::MAX; 4]; 4]; 4];
    let mut i = 0;
    while i < N_COEFFS {
        let m = ALL_INDICES[i].0;
        s[m[0] as usize][m[1] as usize][m[2] as usize] = i as u8;
        i += 1;
    }
    s
}

/// Truncated Taylor series in `(t, x, z)` about a base point.
///
/// `order` is the highest total degree whose coefficients are exact; entries
/// above it are kept at zero. A negative order means nothing is known.
#[derive(Clone, Copy, PartialEq)]
pub struct Taylor3 {
    pub coeffs: [f64; N_COEFFS],
    pub order: i8,
}

impl fmt::Debug for Taylor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Taylor3")
            .field("order", &self.order)
            .field("coeffs", &&self.coeffs[..])
            .finish()
    }
}

impl Taylor3 {
    pub fn from_coeffs(coeffs: [f64; N_COEFFS], order: i8) -> Self {
        let mut s = Taylor3 { coeffs, order };
        s.truncate();
        s
    }

    /// Series of the coordinate `v` expanded about `base`.
    pub fn variable(v: Var, base: f64) -> Self {
        let mut c = [0.0; N_COEFFS];
        c[0] = base;
        c[MultiIndex::EMPTY.plus(v).index()] = 1.0;
        Taylor3 { coeffs: c, order: MAX_ORDER as i8 }
    }

    /// Series from derivative values `∂^J f` (not yet divided by `J!`).
    pub fn from_derivatives(derivs: &[f64; N_COEFFS], order: i8) -> Self {
        let mut c = [0.0; N_COEFFS];
        for (k, m) in ALL_INDICES.iter().enumerate() {
            c[k] = derivs[k] / m.factorial();
        }
        Self::from_coeffs(c, order)
    }

    /// Derivative value `∂^J f` at the base point.
    pub fn derivative_value(&self, m: MultiIndex) -> f64 {
        debug_assert!(m.order() as i8 <= self.order, "reading {m} beyond order {}", self.order);
        self.coeffs[m.index()] * m.factorial()
    }

    pub fn coeff(&self, m: MultiIndex) -> f64 {
        self.coeffs[m.index()]
    }

    fn truncate(&mut self) {
        for (k, m) in ALL_INDICES.iter().enumerate() {
            if m.order() as i8 > self.order {
                self.coeffs[k] = 0.0;
            }
        }
    }

    /// Total derivative along `v`; validity drops by one order.
    pub fn d(&self, v: Var) -> Taylor3 {
        let order = self.order - 1;
        let mut c = [0.0; N_COEFFS];
        for (k, m) in ALL_INDICES.iter().enumerate() {
            if m.order() as i8 > order {
                continue;
            }
            let up = m.plus(v);
            c[k] = self.coeffs[up.index()] * (up.count(v) as f64);
        }
        Taylor3 { coeffs: c, order }
    }

    /// Repeated total derivative `D^J`.
    pub fn d_multi(&self, m: MultiIndex) -> Taylor3 {
        let mut s = *self;
        for v in Var::ALL {
            for _ in 0..m.count(v) {
                s = s.d(v);
            }
        }
        s
    }

    /// `f(self)` given `f` and its first three derivatives at the constant term.
    pub fn compose(&self, f: [f64; 4]) -> Taylor3 {
        let mut delta = *self;
        delta.coeffs[0] = 0.0;
        let mut out = Taylor3::constant(f[0]);
        out.order = self.order;
        let mut power = Taylor3::constant(1.0);
        let mut fact = 1.0;
        for (n, fn_) in f.iter().enumerate().skip(1) {
            power = power * delta;
            fact *= n as f64;
            out = out + power * (fn_ / fact);
        }
        out.order = self.order;
        out.truncate();
        out
    }
}

impl Add for Taylor3 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut c = self.coeffs;
        for (a, b) in c.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        Taylor3::from_coeffs(c, self.order.min(rhs.order))
    }
}

impl Sub for Taylor3 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut c = self.coeffs;
        for (a, b) in c.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
        Taylor3::from_coeffs(c, self.order.min(rhs.order))
    }
}

impl Mul for Taylor3 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut c = [0.0; N_COEFFS];
        if order >= 0 {
            for (i, mi) in ALL_INDICES.iter().enumerate() {
                let a = self.coeffs[i];
                if a == 0.0 {
                    continue;
                }
                for (j, mj) in ALL_INDICES.iter().enumerate() {
                    if (mi.order() + mj.order()) as i8 > order {
                        continue;
                    }
                    let sum = MultiIndex([mi.0[0] + mj.0[0], mi.0[1] + mj.0[1], mi.0[2] + mj.0[2]]);
                    c[sum.index()] += a * rhs.coeffs[j];
                }
            }
        }
        Taylor3 { coeffs: c, order }
    }
}

impl Neg for Taylor3 {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Add<f64> for Taylor3 {
    type Output = Self;
    fn add(mut self, rhs: f64) -> Self {
        self.coeffs[0] += rhs;
        self
    }
}

impl Sub<f64> for Taylor3 {
    type Output = Self;
    fn sub(mut self, rhs: f64) -> Self {
        self.coeffs[0] -= rhs;
        self
    }
}

impl Mul<f64> for Taylor3 {
    type Output = Self;
    fn mul(mut self, rhs: f64) -> Self {
        for c in self.coeffs.iter_mut() {
            *c *= rhs;
        }
        self
    }
}

impl Scalar for Taylor3 {
    fn constant(c: f64) -> Self {
        let mut coeffs = [0.0; N_COEFFS];
        coeffs[0] = c;
        Taylor3 { coeffs, order: MAX_ORDER as i8 }
    }
    fn value(&self) -> f64 {
        self.coeffs[0]
    }
    fn sin(self) -> Self {
        let (s, c) = self.coeffs[0].sin_cos();
        self.compose([s, c, -s, -c])
    }
    fn cos(self) -> Self {
        let (s, c) = self.coeffs[0].sin_cos();
        self.compose([c, -s, -c, s])
    }
    fn exp(self) -> Self {
        let e = self.coeffs[0].exp();
        self.compose([e, e, e, e])
    }
}
