//! A small fixed-storage vector for points and directions in dimension 2
//! or 3.
//!
//! The ambient dimension is a runtime value (the library mixes planar and
//! spatial computations freely), so coordinates are stored in a `[f64; 3]`
//! with the third entry pinned to zero in the planar case. Operations on
//! mixed dimensions are programming errors and panic in debug builds; the
//! public entry points validate dimensions up front and return errors
//! instead.

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A point or direction in `R^2` or `R^3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vector {
    coords: [f64; 3],
    dim: usize,
}

impl Vector {
    /// A planar vector.
    pub fn new2(x: f64, y: f64) -> Self {
        Self { coords: [x, y, 0.0], dim: 2 }
    }

    /// A spatial vector.
    pub fn new3(x: f64, y: f64, z: f64) -> Self {
        Self { coords: [x, y, z], dim: 3 }
    }

    /// Builds a vector from a coordinate slice of length 2 or 3.
    pub fn from_slice(c: &[f64]) -> Option<Self> {
        match c {
            [x, y] => Some(Self::new2(*x, *y)),
            [x, y, z] => Some(Self::new3(*x, *y, *z)),
            _ => None,
        }
    }

    /// The zero vector of the given dimension.
    pub fn zero(dim: usize) -> Self {
        debug_assert!(dim == 2 || dim == 3);
        Self { coords: [0.0; 3], dim }
    }

    /// Ambient dimension, 2 or 3.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinate accessor; `i < dim`.
    pub fn coord(&self, i: usize) -> f64 {
        debug_assert!(i < self.dim);
        self.coords[i]
    }

    /// The active coordinates as a slice.
    pub fn as_slice(&self) -> &[f64] {
        &self.coords[..self.dim]
    }

    pub fn x(&self) -> f64 {
        self.coords[0]
    }

    pub fn y(&self) -> f64 {
        self.coords[1]
    }

    /// Zero in the planar case.
    pub fn z(&self) -> f64 {
        self.coords[2]
    }

    pub fn add(&self, o: &Vector) -> Vector {
        debug_assert_eq!(self.dim, o.dim);
        Vector {
            coords: [
                self.coords[0] + o.coords[0],
                self.coords[1] + o.coords[1],
                self.coords[2] + o.coords[2],
            ],
            dim: self.dim,
        }
    }

    pub fn sub(&self, o: &Vector) -> Vector {
        debug_assert_eq!(self.dim, o.dim);
        Vector {
            coords: [
                self.coords[0] - o.coords[0],
                self.coords[1] - o.coords[1],
                self.coords[2] - o.coords[2],
            ],
            dim: self.dim,
        }
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector {
            coords: [self.coords[0] * s, self.coords[1] * s, self.coords[2] * s],
            dim: self.dim,
        }
    }

    /// The affine combination `(1 − t)·self + t·o`.
    pub fn lerp(&self, o: &Vector, t: f64) -> Vector {
        self.scale(1.0 - t).add(&o.scale(t))
    }

    pub fn dot(&self, o: &Vector) -> f64 {
        debug_assert_eq!(self.dim, o.dim);
        self.coords[0] * o.coords[0] + self.coords[1] * o.coords[1] + self.coords[2] * o.coords[2]
    }

    /// Cross product; both operands must be spatial.
    pub fn cross(&self, o: &Vector) -> Vector {
        debug_assert_eq!(self.dim, 3);
        debug_assert_eq!(o.dim, 3);
        Vector::new3(
            self.coords[1] * o.coords[2] - self.coords[2] * o.coords[1],
            self.coords[2] * o.coords[0] - self.coords[0] * o.coords[2],
            self.coords[0] * o.coords[1] - self.coords[1] * o.coords[0],
        )
    }

    /// The planar cross product `self.x·o.y − self.y·o.x`.
    pub fn cross2(&self, o: &Vector) -> f64 {
        self.coords[0] * o.coords[1] - self.coords[1] * o.coords[0]
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dist(&self, o: &Vector) -> f64 {
        self.sub(o).norm()
    }

    /// Unit vector in the same direction, or `None` for (near-)zero input.
    pub fn normalized(&self, eps: f64) -> Option<Vector> {
        let n = self.norm();
        if n <= eps {
            None
        } else {
            Some(self.scale(1.0 / n))
        }
    }

    /// True when every coordinate is finite.
    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|c| c.is_finite())
    }

    /// Lexicographic comparison by coordinates, for deterministic ordering.
    pub fn lex_cmp(&self, o: &Vector) -> std::cmp::Ordering {
        for i in 0..self.dim {
            match self.coords[i].partial_cmp(&o.coords[i]) {
                Some(std::cmp::Ordering::Equal) | None => continue,
                Some(ord) => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dim))?;
        for c in self.as_slice() {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct VecVisitor;
        impl<'de> Visitor<'de> for VecVisitor {
            type Value = Vector;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a coordinate array of length 2 or 3")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Vector, A::Error> {
                let mut c = Vec::with_capacity(3);
                while let Some(v) = seq.next_element::<f64>()? {
                    c.push(v);
                    if c.len() > 3 {
                        return Err(serde::de::Error::invalid_length(c.len(), &self));
                    }
                }
                Vector::from_slice(&c)
                    .ok_or_else(|| serde::de::Error::invalid_length(c.len(), &self))
            }
        }
        deserializer.deserialize_seq(VecVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_in_two_dimensions() {
        let a = Vector::new2(1.0, 2.0);
        let b = Vector::new2(-3.0, 0.5);
        assert_eq!(a.add(&b), Vector::new2(-2.0, 2.5));
        assert_eq!(a.sub(&b), Vector::new2(4.0, 1.5));
        assert_eq!(a.dot(&b), -2.0);
        assert_eq!(a.cross2(&b), 0.5 + 6.0);
        assert!((a.norm() - 5.0_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn cross_product_is_orthogonal() {
        let a = Vector::new3(1.0, 2.0, 3.0);
        let b = Vector::new3(-0.5, 0.25, 4.0);
        let c = a.cross(&b);
        assert!(c.dot(&a).abs() < 1e-12);
        assert!(c.dot(&b).abs() < 1e-12);
    }

    #[test]
    fn lerp_hits_endpoints() {
        let a = Vector::new2(0.0, 1.0);
        let b = Vector::new2(2.0, 3.0);
        assert_eq!(a.lerp(&b, 0.0), a);
        assert_eq!(a.lerp(&b, 1.0), b);
        assert_eq!(a.lerp(&b, 0.5), Vector::new2(1.0, 2.0));
    }

    #[test]
    fn normalized_rejects_zero() {
        assert!(Vector::zero(3).normalized(1e-12).is_none());
        let u = Vector::new3(0.0, 3.0, 4.0).normalized(1e-12).unwrap();
        assert!((u.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip_preserves_dimension() {
        let a = Vector::new2(1.5, -2.0);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[1.5,-2.0]");
        let b: Vector = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);

        let c: Vector = serde_json::from_str("[1,2,3]").unwrap();
        assert_eq!(c.dim(), 3);
        assert!(serde_json::from_str::<Vector>("[1]").is_err());
        assert!(serde_json::from_str::<Vector>("[1,2,3,4]").is_err());
    }
}
