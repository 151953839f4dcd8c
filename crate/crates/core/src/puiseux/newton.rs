//! Newton polygons of differential sums and the characteristic polynomial of
//! the first variation along a face.

use std::fmt;

use num::complex::Complex64;
use num::integer::Integer;
use num::rational::Rational64;
use serde::Serialize;

use super::diffsum::DiffSum;
use crate::error::{Error, Result};
use crate::scalar::Coeff;

type Pt = (i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: Pt,
    pub to: Pt,
    /// Primitive outer normal.
    pub normal: Pt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub support: Vec<Pt>,
    /// Hull vertices, anticlockwise.
    pub vertices: Vec<Pt>,
    /// Edges sorted by the angle of their outer normal in (-pi, pi].
    pub edges: Vec<Edge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Face {
    Vertex(Pt),
    Edge(Pt, Pt),
}

fn cross(o: Pt, a: Pt, b: Pt) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn hull(points: &[Pt]) -> Vec<Pt> {
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() <= 2 {
        return p;
    }
    let mut lower: Vec<Pt> = Vec::new();
    for &x in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], x) <= 0 {
            lower.pop();
        }
        lower.push(x);
    }
    let mut upper: Vec<Pt> = Vec::new();
    for &x in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], x) <= 0 {
            upper.pop();
        }
        upper.push(x);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn outer_normal(a: Pt, b: Pt) -> Pt {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let g = dx.gcd(&dy).max(1);
    (dy / g, -dx / g)
}

impl NewtonPolygon {
    pub fn from_support(points: &[Pt]) -> Self {
        let mut support = points.to_vec();
        support.sort();
        support.dedup();
        let vertices = hull(&support);
        let mut edges = Vec::new();
        let n = vertices.len();
        if n >= 2 {
            let count = if n == 2 { 2 } else { n };
            for i in 0..count {
                let a = vertices[i % n];
                let b = vertices[(i + 1) % n];
                edges.push(Edge { from: a, to: b, normal: outer_normal(a, b) });
            }
        }
        edges.sort_by(|x, y| {
            let ax = (x.normal.1 as f64).atan2(x.normal.0 as f64);
            let ay = (y.normal.1 as f64).atan2(y.normal.0 as f64);
            ax.total_cmp(&ay)
        });
        NewtonPolygon { support, vertices, edges }
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        match *face {
            Face::Vertex(v) => self.vertices.contains(&v),
            Face::Edge(a, b) => self.edges.iter().any(|e| (e.from, e.to) == (a, b) || (e.from, e.to) == (b, a)),
        }
    }

    /// Support points lying on a face.
    pub fn on_face(face: &Face, p: Pt) -> bool {
        match *face {
            Face::Vertex(v) => p == v,
            Face::Edge(a, b) => {
                cross(a, b, p) == 0 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
            }
        }
    }

    /// Face cut out by the supporting line of direction `(-1, -r)`, i.e.
    /// the support points minimizing `a + r b`.
    pub fn face_for_exponent(&self, r: Rational64) -> Face {
        let val = |p: &Pt| Rational64::from_integer(p.0) + r * Rational64::from_integer(p.1);
        let h = self.support.iter().map(val).min().expect("nonempty support");
        let on: Vec<Pt> = self.support.iter().copied().filter(|p| val(p) == h).collect();
        if on.len() == 1 {
            Face::Vertex(on[0])
        } else {
            Face::Edge(on[0], *on.last().unwrap())
        }
    }

    /// Value of `a + r b` on the supporting line of `face_for_exponent(r)`.
    pub fn support_value(&self, r: Rational64) -> Rational64 {
        self.support
            .iter()
            .map(|p| Rational64::from_integer(p.0) + r * Rational64::from_integer(p.1))
            .min()
            .expect("nonempty support")
    }
}

/// Polygon of a sum whose coefficients are treated as nonzero symbols.
pub fn newton_polygon(p: &DiffSum) -> NewtonPolygon {
    let pts: Vec<Pt> = p.terms().map(|(m, _)| DiffSum::support_point(m)).collect();
    NewtonPolygon::from_support(&pts)
}

/// Polygon after substituting numeric parameters (vanishing coefficients drop out).
pub fn newton_polygon_at<T: Coeff>(p: &DiffSum, vals: &[T]) -> NewtonPolygon {
    let pts: Vec<Pt> = p.coeffs_at(vals).iter().map(|(m, _)| DiffSum::support_point(m)).collect();
    NewtonPolygon::from_support(&pts)
}

pub fn truncate_along(p: &DiffSum, face: &Face) -> Result<DiffSum> {
    if !newton_polygon(p).contains_face(face) {
        return Err(Error::FaceNotOnPolygon);
    }
    Ok(p.filter_support(|pt| NewtonPolygon::on_face(face, pt)))
}

/// Quadratic polynomial `c0 + c1 k + c2 k^2` in the exponent `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct KPoly<T = Complex64> {
    pub coeffs: [T; 3],
}

impl<T: Coeff> KPoly<T> {
    pub fn eval(&self, k: &T) -> T {
        self.coeffs[0].clone() + k.clone() * (self.coeffs[1].clone() + k.clone() * self.coeffs[2].clone())
    }

    pub fn scale(&self, s: &T) -> KPoly<T> {
        KPoly { coeffs: self.coeffs.clone().map(|c| c * s.clone()) }
    }

    pub fn distance(&self, other: &KPoly<T>) -> f64 {
        (0..3).map(|i| (self.coeffs[i].clone() - other.coeffs[i].clone()).modulus()).fold(0.0, f64::max)
    }

    /// Builds `lead * (k - r1)(k - r2)`.
    pub fn from_roots(lead: T, r1: T, r2: T) -> KPoly<T> {
        KPoly { coeffs: [lead.clone() * r1.clone() * r2.clone(), -(lead.clone() * (r1 + r2)), lead] }
    }
}

impl<T: Coeff> fmt::Display for KPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeffs.clone().map(|x| x.to_c64());
        write!(f, "({}) + ({})k + ({})k^2", c[0], c[1], c[2])
    }
}

/// First variation of `p` at `q = c z^r + u z^k` read at the controlling
/// exponent `h(r) + k - r`, where `h(r)` is the face value.
pub fn frechet_char<T: Coeff>(p: &DiffSum, r: Rational64, c: &T, vals: &[T]) -> Result<KPoly<T>> {
    let terms = p.coeffs_at(vals);
    if terms.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let val = |m: &(i32, u32, u32, u32)| {
        let (a, b) = DiffSum::support_point(m);
        Rational64::from_integer(a) + r * Rational64::from_integer(b)
    };
    let h = terms.iter().map(|(m, _)| val(m)).min().unwrap();
    let rt = T::from_ratio(r);
    let rr = T::from_ratio(r * (r - Rational64::from_integer(1)));
    let mut annih = T::zero();
    let mut scale = 0.0;
    let mut out = [T::zero(), T::zero(), T::zero()];
    for (m, coef) in terms.iter().filter(|(m, _)| val(m) == h) {
        let (_, b, cc, d) = *m;
        let big = b + cc + d;
        let full = coef.clone() * c.powi(big) * rt.powi(cc) * rr.powi(d);
        scale += full.modulus();
        annih = annih + full;
        if big == 0 {
            continue;
        }
        let base = coef.clone() * c.powi(big - 1);
        // q^b factor varied
        if b > 0 {
            out[0] = out[0].clone() + base.clone() * T::from_int(b as i64) * rt.powi(cc) * rr.powi(d);
        }
        // q' factor varied: derivative of u z^k contributes k
        if cc > 0 {
            out[1] = out[1].clone() + base.clone() * T::from_int(cc as i64) * rt.powi(cc - 1) * rr.powi(d);
        }
        // q'' factor varied: k(k-1) = k^2 - k
        if d > 0 {
            let w = base.clone() * T::from_int(d as i64) * rt.powi(cc) * rr.powi(d - 1);
            out[2] = out[2].clone() + w.clone();
            out[1] = out[1].clone() - w;
        }
    }
    if !annih.negligible(scale) {
        return Err(Error::NotAnnihilated(annih.modulus()));
    }
    Ok(KPoly { coeffs: out })
}

/// Characteristic polynomial of a linear differential sum on `z^k` (all
/// terms of total degree one in `q, q', q''`), read at the lowest face.
pub fn linear_char<T: Coeff>(p: &DiffSum, vals: &[T]) -> Result<KPoly<T>> {
    if p.terms().any(|(m, _)| m.1 + m.2 + m.3 != 1) {
        return Err(Error::Invalid("operator is not linear".into()));
    }
    let terms = p.coeffs_at(vals);
    let h = terms.iter().map(|(m, _)| DiffSum::support_point(m).0).min().ok_or(Error::EmptyWindow)?;
    let mut out = [T::zero(), T::zero(), T::zero()];
    for (m, coef) in terms.iter().filter(|(m, _)| DiffSum::support_point(m).0 == h) {
        match (m.1, m.2, m.3) {
            (1, 0, 0) => out[0] = out[0].clone() + coef.clone(),
            (0, 1, 0) => out[1] = out[1].clone() + coef.clone(),
            _ => {
                out[2] = out[2].clone() + coef.clone();
                out[1] = out[1].clone() - coef.clone();
            }
        }
    }
    Ok(KPoly { coeffs: out })
}
