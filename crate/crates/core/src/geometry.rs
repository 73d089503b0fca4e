//! Planar spatial primitives and homogeneous Poisson point processes.
//!
//! All lengths are in meters and all densities in points per square meter.
//! Every sampler takes the random stream explicitly, so results are a pure
//! function of the generator state.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};

/// A point in the plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

impl Point2D {
    pub const ORIGIN: Point2D = Point2D { x: 0.0, y: 0.0 };

    /// Builds a point, rejecting NaN or infinite coordinates.
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::domain(format!("non-finite point ({x}, {y})")));
        }
        Ok(Self { x, y })
    }

    pub fn distance(&self, other: &Point2D) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Annular region `r_inner <= |p - center| <= r_outer`. A disk has `r_inner = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Annulus {
    center: Point2D,
    r_inner: f64,
    r_outer: f64,
}

impl Annulus {
    pub fn new(center: Point2D, r_inner: f64, r_outer: f64) -> Result<Self> {
        if !(r_inner.is_finite() && r_outer.is_finite()) || r_inner < 0.0 || r_inner >= r_outer {
            return Err(Error::domain(format!(
                "annulus needs 0 <= r_inner < r_outer, got [{r_inner}, {r_outer}]"
            )));
        }
        Ok(Self {
            center,
            r_inner,
            r_outer,
        })
    }

    pub fn disk(center: Point2D, radius: f64) -> Result<Self> {
        Self::new(center, 0.0, radius)
    }

    pub fn center(&self) -> Point2D {
        self.center
    }

    pub fn r_inner(&self) -> f64 {
        self.r_inner
    }

    pub fn r_outer(&self) -> f64 {
        self.r_outer
    }

    pub fn contains(&self, p: &Point2D) -> bool {
        let r = p.distance(&self.center);
        r >= self.r_inner && r <= self.r_outer
    }

    /// Draws one point uniformly on the region.
    ///
    /// The radius is placed by inverting the area CDF,
    /// `r = sqrt(r_in^2 + u (r_out^2 - r_in^2))`, so no draws are rejected.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Point2D {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        let r_in2 = self.r_inner * self.r_inner;
        let r_out2 = self.r_outer * self.r_outer;
        let r = (r_in2 + u * (r_out2 - r_in2))
            .sqrt()
            .clamp(self.r_inner, self.r_outer);
        let theta = 2.0 * PI * v;
        Point2D {
            x: self.center.x + r * theta.cos(),
            y: self.center.y + r * theta.sin(),
        }
    }
}

pub fn region_area(region: &Annulus) -> f64 {
    PI * (region.r_outer * region.r_outer - region.r_inner * region.r_inner)
}

/// Ordered point collection. The position of a point in generation order is
/// its identity and the tie-break key for every nearest-neighbour query.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PointSet {
    points: Vec<Point2D>,
}

impl PointSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn push(&mut self, p: Point2D) {
        self.points.push(p);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point2D> {
        self.points.iter()
    }

    pub fn as_slice(&self) -> &[Point2D] {
        &self.points
    }

    pub fn into_vec(self) -> Vec<Point2D> {
        self.points
    }
}

impl From<Vec<Point2D>> for PointSet {
    fn from(points: Vec<Point2D>) -> Self {
        Self { points }
    }
}

impl FromIterator<Point2D> for PointSet {
    fn from_iter<I: IntoIterator<Item = Point2D>>(iter: I) -> Self {
        Self {
            points: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point2D;
    type IntoIter = std::slice::Iter<'a, Point2D>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Samples a homogeneous PPP: a Poisson(density * area) count, then i.i.d.
/// uniform placement.
pub fn sample_ppp<R: Rng + ?Sized>(region: &Annulus, density: f64, rng: &mut R) -> PointSet {
    let mean = density * region_area(region);
    if !(mean > 0.0) {
        return PointSet::new();
    }
    let count = Poisson::new(mean)
        .expect("positive finite Poisson mean")
        .sample(rng) as usize;
    (0..count).map(|_| region.sample_uniform(rng)).collect()
}

/// Independent Bernoulli(keep_prob) retention, preserving relative order.
pub fn thin<R: Rng + ?Sized>(points: &PointSet, keep_prob: f64, rng: &mut R) -> PointSet {
    let keep_prob = keep_prob.clamp(0.0, 1.0);
    points
        .iter()
        .copied()
        .filter(|_| rng.random::<f64>() < keep_prob)
        .collect()
}

/// Index and distance of the candidate closest to `query`; ties go to the
/// lowest index.
pub fn nearest_point(query: &Point2D, candidates: &PointSet) -> Result<(usize, f64)> {
    candidates
        .iter()
        .enumerate()
        .map(|(i, p)| (i, query.distance(p)))
        .fold(None, |best: Option<(usize, f64)>, (i, d)| match best {
            Some((_, bd)) if bd <= d => best,
            _ => Some((i, d)),
        })
        .ok_or(Error::NoServingStation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(x: f64, y: f64) -> Point2D {
        Point2D::new(x, y).unwrap()
    }

    #[test]
    fn area_examples() {
        let unit = Annulus::disk(Point2D::ORIGIN, 1.0).unwrap();
        assert!((region_area(&unit) - PI).abs() < 1e-12);
        let disaster = Annulus::disk(Point2D::ORIGIN, 2000.0).unwrap();
        assert!((region_area(&disaster) - 1.25664e7).abs() / 1.25664e7 < 1e-5);
        let ring = Annulus::new(Point2D::ORIGIN, 2000.0, 2600.0).unwrap();
        assert!((region_area(&ring) - 8.67080e6).abs() / 8.67080e6 < 1e-5);
    }

    #[test]
    fn rejects_bad_regions_and_points() {
        assert!(Annulus::new(Point2D::ORIGIN, 5.0, 5.0).is_err());
        assert!(Annulus::new(Point2D::ORIGIN, -1.0, 5.0).is_err());
        assert!(Annulus::disk(Point2D::ORIGIN, f64::NAN).is_err());
        assert!(Point2D::new(f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn zero_density_is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let region = Annulus::disk(Point2D::ORIGIN, 2000.0).unwrap();
        assert!(sample_ppp(&region, 0.0, &mut rng).is_empty());
    }

    #[test]
    fn sampled_points_stay_inside_annulus() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let region = Annulus::new(p(10.0, -3.0), 2000.0, 2600.0).unwrap();
        let pts = sample_ppp(&region, 1e-4, &mut rng);
        assert!(pts.len() > 500);
        for q in &pts {
            let r = q.distance(&region.center());
            assert!(r >= 2000.0 - 1e-9 && r <= 2600.0 + 1e-9, "r = {r}");
        }
    }

    #[test]
    fn ppp_is_deterministic() {
        let region = Annulus::disk(Point2D::ORIGIN, 2000.0).unwrap();
        let a = sample_ppp(&region, 2e-6, &mut ChaCha8Rng::seed_from_u64(3));
        let b = sample_ppp(&region, 2e-6, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
    }

    #[test]
    fn thin_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pts: PointSet = (0..50).map(|i| p(i as f64, 0.0)).collect();
        assert_eq!(thin(&pts, 1.0, &mut rng), pts);
        assert!(thin(&pts, 0.0, &mut rng).is_empty());
    }

    #[test]
    fn thin_preserves_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pts: PointSet = (0..200).map(|i| p(i as f64, 0.0)).collect();
        let kept = thin(&pts, 0.5, &mut rng);
        assert!(kept.as_slice().windows(2).all(|w| w[0].x < w[1].x));
    }

    #[test]
    fn nearest_examples() {
        let one: PointSet = vec![p(3.0, 4.0)].into();
        assert_eq!(nearest_point(&Point2D::ORIGIN, &one).unwrap(), (0, 5.0));

        let tie: PointSet = vec![p(1.0, 0.0), p(-1.0, 0.0)].into();
        assert_eq!(nearest_point(&Point2D::ORIGIN, &tie).unwrap(), (0, 1.0));

        let three: PointSet = vec![p(0.0, 2.0), p(1.0, 1.0), p(5.0, 0.0)].into();
        let (i, d) = nearest_point(&Point2D::ORIGIN, &three).unwrap();
        assert_eq!(i, 1);
        assert!((d - 1.41421).abs() < 1e-5);
    }

    #[test]
    fn nearest_on_empty_set_errors() {
        assert!(matches!(
            nearest_point(&Point2D::ORIGIN, &PointSet::new()),
            Err(Error::NoServingStation)
        ));
    }
}
