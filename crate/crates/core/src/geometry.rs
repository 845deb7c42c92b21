//! Planar predicates with an absolute tolerance, and the three-way verdict
//! on configurations: embedded, self-touching, or crossing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linkage::Configuration;
use crate::point::Point;

/// Default absolute tolerance for distances.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
}

impl Segment {
    pub fn new(start: Point, end: Point) -> Self {
        Segment { start, end }
    }

    pub fn length(&self) -> f64 {
        self.start.dist(self.end)
    }

    pub fn direction(&self) -> Point {
        self.end - self.start
    }

    pub fn distance_to_point(&self, p: Point) -> f64 {
        point_segment_distance(p, self.start, self.end)
    }

    /// Minimum distance between the two closed segments.
    pub fn distance_to(&self, other: &Segment) -> f64 {
        if self.crosses_strictly(other) {
            return 0.0;
        }
        [
            self.distance_to_point(other.start),
            self.distance_to_point(other.end),
            other.distance_to_point(self.start),
            other.distance_to_point(self.end),
        ]
        .into_iter()
        .fold(f64::INFINITY, f64::min)
    }

    fn crosses_strictly(&self, other: &Segment) -> bool {
        let d1 = self.direction();
        let d2 = other.direction();
        let o1 = d1.cross(other.start - self.start);
        let o2 = d1.cross(other.end - self.start);
        let o3 = d2.cross(self.start - other.start);
        let o4 = d2.cross(self.end - other.start);
        o1 * o2 < 0.0 && o3 * o4 < 0.0
    }
}

pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentRelation {
    Disjoint,
    TouchPoint,
    OverlapSegment,
    ProperCross,
}

/// How two segments meet, up to the absolute tolerance `eps`.
///
/// Collinear overlap longer than `eps` is an overlap, not a crossing; any
/// other contact that is not a transversal interior crossing is a touch.
pub fn segment_relation(s1: &Segment, s2: &Segment, eps: f64) -> Result<SegmentRelation> {
    let len1 = s1.length();
    let len2 = s2.length();
    if !(len1 > eps && len2 > eps) {
        return Err(Error::DegenerateSegment);
    }
    if s1.distance_to(s2) > eps {
        return Ok(SegmentRelation::Disjoint);
    }

    let d1 = s1.direction();
    let d2 = s2.direction();
    let near_line =
        |p: Point, s: &Segment, dir: Point, len: f64| (dir.cross(p - s.start) / len).abs() <= eps;
    if near_line(s2.start, s1, d1, len1)
        && near_line(s2.end, s1, d1, len1)
        && near_line(s1.start, s2, d2, len2)
        && near_line(s1.end, s2, d2, len2)
    {
        let proj = |p: Point| (p - s1.start).dot(d1) / len1;
        let (a, b) = (proj(s2.start), proj(s2.end));
        let overlap = a.max(b).min(len1) - a.min(b).max(0.0);
        return Ok(if overlap > eps {
            SegmentRelation::OverlapSegment
        } else {
            SegmentRelation::TouchPoint
        });
    }

    let denom = d1.cross(d2);
    if (denom / (len1 * len2)).abs() > eps {
        let w = s2.start - s1.start;
        let t = w.cross(d2) / denom;
        let u = w.cross(d1) / denom;
        if t > 0.0 && t < 1.0 && u > 0.0 && u < 1.0 {
            let x = s1.start + d1 * t;
            let clear = [s1.start, s1.end, s2.start, s2.end]
                .iter()
                .all(|&p| p.dist(x) > eps);
            if clear {
                return Ok(SegmentRelation::ProperCross);
            }
        }
    }
    Ok(SegmentRelation::TouchPoint)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Embedded,
    SelfTouching,
    Crossing,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Embedded => "embedded",
            Classification::SelfTouching => "self-touching",
            Classification::Crossing => "crossing",
        }
    }
}

/// Classifies a configuration.
///
/// Consecutive bars meeting only at their shared joint are not a
/// self-intersection. Bars shorter than `eps` count as touching.
pub fn classify(config: &Configuration, eps: f64) -> Classification {
    let n = config.n();
    let edges: Vec<Segment> = (0..n)
        .map(|i| {
            let (a, b) = config.edge(i);
            Segment::new(a, b)
        })
        .collect();
    let adjacent = |i: usize, j: usize| (i + 1) % n == j || (j + 1) % n == i;

    let mut touching = false;
    for i in 0..n {
        for j in i + 1..n {
            match segment_relation(&edges[i], &edges[j], eps) {
                Ok(SegmentRelation::ProperCross) => return Classification::Crossing,
                Ok(SegmentRelation::Disjoint) => {}
                Ok(SegmentRelation::OverlapSegment) => touching = true,
                Ok(SegmentRelation::TouchPoint) => touching |= !adjacent(i, j),
                Err(_) => touching = true,
            }
        }
    }
    if touching {
        return Classification::SelfTouching;
    }
    for v in 0..n {
        let p = config.vertex(v);
        for (e, seg) in edges.iter().enumerate() {
            if e == v || (e + 1) % n == v {
                continue;
            }
            if seg.distance_to_point(p) <= eps {
                return Classification::SelfTouching;
            }
        }
    }
    Classification::Embedded
}

/// Intersection of two circles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleIntersection {
    /// Tangent circles (internally or externally).
    Tangent(Point),
    /// Transversal intersection; the first point lies left of the oriented
    /// line from the first center to the second.
    Two(Point, Point),
}

impl CircleIntersection {
    pub fn points(&self) -> Vec<Point> {
        match *self {
            CircleIntersection::Tangent(p) => vec![p],
            CircleIntersection::Two(p, q) => vec![p, q],
        }
    }
}

pub fn circle_circle(
    c1: Point,
    r1: f64,
    c2: Point,
    r2: f64,
    eps: f64,
) -> Result<CircleIntersection> {
    if !(r1 > 0.0 && r2 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "radii must be positive, got {r1} and {r2}"
        )));
    }
    let v = c2 - c1;
    let dist = v.norm();
    if dist <= eps {
        return Err(if (r1 - r2).abs() <= eps {
            Error::Coincident
        } else {
            Error::NoSolution
        });
    }
    let gap = (r1 - r2).abs();
    if dist > r1 + r2 + eps || dist < gap - eps {
        return Err(Error::NoSolution);
    }
    let u = v * (1.0 / dist);

    // tangencies: average the contact point as seen from either center
    if (dist - (r1 + r2)).abs() <= eps {
        let p = (c1 + u * r1).lerp(c2 - u * r2, 0.5);
        return Ok(CircleIntersection::Tangent(p));
    }
    if (dist - gap).abs() <= eps {
        let s = if r1 >= r2 { 1.0 } else { -1.0 };
        let p = (c1 + u * (s * r1)).lerp(c2 + u * (s * r2), 0.5);
        return Ok(CircleIntersection::Tangent(p));
    }

    let a = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
    let h = (r1 * r1 - a * a).max(0.0).sqrt();
    let base = c1 + u * a;
    let n = u.perp();
    Ok(CircleIntersection::Two(base + n * h, base - n * h))
}
