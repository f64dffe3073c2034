//! Small fixed-capacity vectors for positions and position differences.
//!
//! Localization lives in R^1, R^2 or R^3, so every vector fits in three
//! inline `f64`s. `Vector` is `Copy` and never allocates, which matters in
//! the inner solvers where gradients are evaluated millions of times.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 3;

/// A real vector of dimension 1, 2 or 3.
///
/// Unused trailing slots are kept at zero so that equality and arithmetic
/// never observe stale data.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector {
    data: [f64; MAX_DIM],
    dim: usize,
}

/// A sensor or anchor location.
pub type Position = Vector;

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "unsupported dimension {dim}");
        Self {
            data: [0.0; MAX_DIM],
            dim,
        }
    }

    /// Builds a vector from a slice of length 1 to 3.
    ///
    /// Panics on any other length; use `TryFrom<Vec<f64>>` for untrusted input.
    pub fn from_slice(coords: &[f64]) -> Self {
        let mut v = Self::zeros(coords.len());
        v.data[..coords.len()].copy_from_slice(coords);
        v
    }

    pub fn scalar(x: f64) -> Self {
        Self::from_slice(&[x])
    }

    pub fn xy(x: f64, y: f64) -> Self {
        Self::from_slice(&[x, y])
    }

    pub fn xyz(x: f64, y: f64, z: f64) -> Self {
        Self::from_slice(&[x, y, z])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data[..self.dim]
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data[..self.dim]
    }

    #[inline]
    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        let mut acc = 0.0;
        for k in 0..self.dim {
            acc += self.data[k] * other.data[k];
        }
        acc
    }

    #[inline]
    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|c| c.is_finite())
    }

    pub fn distance(&self, other: &Vector) -> f64 {
        (*self - *other).norm()
    }

    #[inline]
    fn zip_with(self, rhs: Vector, f: impl Fn(f64, f64) -> f64) -> Vector {
        debug_assert_eq!(self.dim, rhs.dim);
        let mut out = self;
        for k in 0..self.dim {
            out.data[k] = f(self.data[k], rhs.data[k]);
        }
        out
    }

    #[inline]
    fn map(self, f: impl Fn(f64) -> f64) -> Vector {
        let mut out = self;
        for k in 0..self.dim {
            out.data[k] = f(self.data[k]);
        }
        out
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = String;

    fn try_from(coords: Vec<f64>) -> Result<Self, Self::Error> {
        if coords.is_empty() || coords.len() > MAX_DIM {
            return Err(format!(
                "expected 1 to {MAX_DIM} coordinates, found {}",
                coords.len()
            ));
        }
        Ok(Vector::from_slice(&coords))
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.as_slice().to_vec()
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, k: usize) -> &f64 {
        &self.as_slice()[k]
    }
}

impl Add for Vector {
    type Output = Vector;
    #[inline]
    fn add(self, rhs: Vector) -> Vector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for Vector {
    type Output = Vector;
    #[inline]
    fn sub(self, rhs: Vector) -> Vector {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for Vector {
    type Output = Vector;
    #[inline]
    fn neg(self) -> Vector {
        self.map(|a| -a)
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    #[inline]
    fn mul(self, s: f64) -> Vector {
        self.map(|a| a * s)
    }
}

impl Mul<Vector> for f64 {
    type Output = Vector;
    #[inline]
    fn mul(self, v: Vector) -> Vector {
        v * self
    }
}

impl Div<f64> for Vector {
    type Output = Vector;
    #[inline]
    fn div(self, s: f64) -> Vector {
        self.map(|a| a / s)
    }
}

impl AddAssign for Vector {
    #[inline]
    fn add_assign(&mut self, rhs: Vector) {
        *self = *self + rhs;
    }
}

impl SubAssign for Vector {
    #[inline]
    fn sub_assign(&mut self, rhs: Vector) {
        *self = *self - rhs;
    }
}
