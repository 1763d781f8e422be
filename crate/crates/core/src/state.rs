use std::ops::{Add, Index, Mul, Neg, Sub};

/// A point of the three-dimensional state space.
///
/// Read as `(x, y, z)` in dimensionless form or `(i1 mA, i2 mA, uC V)` in
/// rescaled circuit units; the interpretation is carried by the caller, not
/// by the type.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct State3(pub [f64; 3]);

impl State3 {
    pub const ZERO: State3 = State3([0.0; 3]);

    pub fn new(a: f64, b: f64, c: f64) -> Self {
        State3([a, b, c])
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }

    pub fn y(&self) -> f64 {
        self.0[1]
    }

    pub fn z(&self) -> f64 {
        self.0[2]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    /// Largest absolute component.
    pub fn max_norm(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

impl Add for State3 {
    type Output = State3;

    fn add(self, rhs: State3) -> State3 {
        State3([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
        ])
    }
}

impl Sub for State3 {
    type Output = State3;

    fn sub(self, rhs: State3) -> State3 {
        State3([
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
        ])
    }
}

impl Mul<f64> for State3 {
    type Output = State3;

    fn mul(self, k: f64) -> State3 {
        State3([self.0[0] * k, self.0[1] * k, self.0[2] * k])
    }
}

impl Neg for State3 {
    type Output = State3;

    fn neg(self) -> State3 {
        State3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Index<usize> for State3 {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}
