//! The geometric layer: circumcircles, the curvilinear-triangle angles of a
//! 4-point set, the apex construction recovering cross ratios from angles,
//! and schematic SVG rendering of the whole configuration.
//!
//! The curvilinear triangle on three of the four points has its sides on
//! the circles through the fourth; sending any point to infinity
//! straightens the three circles through it, so angles are measured on a
//! euclidean triangle and carried back by conformality.

use crate::error::{Error, Result};
use crate::moebius::{cross_ratio_orbit, cross_ratio_points, FourPoints};
use crate::numerics::{cx, Cx, SpherePoint};
use crate::tol;

/// A circle or a line (the circles through infinity) in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneralizedCircle {
    Circle { center: Cx, radius: f64 },
    Line { point: Cx, direction: Cx },
}

impl GeneralizedCircle {
    /// Distance from `z` to the circle or line.
    pub fn distance(&self, z: Cx) -> f64 {
        match *self {
            GeneralizedCircle::Circle { center, radius } => ((z - center).norm() - radius).abs(),
            GeneralizedCircle::Line { point, direction } => {
                (direction.conj() * (z - point)).im.abs()
            }
        }
    }
}

/// The unique generalized circle through three distinct points; a line is
/// returned when the collinearity determinant vanishes to tolerance.
pub fn circumcircle(z1: Cx, z2: Cx, z3: Cx) -> Result<GeneralizedCircle> {
    let scale = 1.0 + z1.norm().max(z2.norm()).max(z3.norm());
    if (z1 - z2).norm() <= 1e-12 * scale
        || (z1 - z3).norm() <= 1e-12 * scale
        || (z2 - z3).norm() <= 1e-12 * scale
    {
        return Err(Error::DegenerateInput(
            "circumcircle needs pairwise distinct points".into(),
        ));
    }
    let u = z2 - z1;
    let v = z3 - z1;
    let det = u.re * v.im - u.im * v.re;
    if det.abs() <= 1e-10 * u.norm() * v.norm() {
        return Ok(GeneralizedCircle::Line {
            point: z1,
            direction: u / u.norm(),
        });
    }
    let (nu, nv) = (u.norm_sqr(), v.norm_sqr());
    let x = (nu * v.im - nv * u.im) / (2.0 * det);
    let y = (nv * u.re - nu * v.re) / (2.0 * det);
    let offset = cx(x, y);
    Ok(GeneralizedCircle::Circle {
        center: z1 + offset,
        radius: offset.norm(),
    })
}

/// True iff the quadruple lies on one generalized circle, i.e. its cross
/// ratio is real.
pub fn is_concyclic(pts: &FourPoints) -> Result<bool> {
    let chi = cross_ratio_points(pts)?;
    Ok(chi.im.abs() < tol::CONCYCLIC)
}

/// Oriented angle triple of a curvilinear triangle, always stored for a
/// positively oriented vertex reading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shape {
    angles: [f64; 3],
    relabeled: bool,
    near_concyclic: bool,
}

impl Shape {
    /// Angles at the (possibly relabeled) vertices, in vertex order.
    pub fn angles(&self) -> [f64; 3] {
        self.angles
    }

    /// True when the input reading was negatively oriented and the last two
    /// vertices were exchanged to restore positive orientation.
    pub fn relabeled(&self) -> bool {
        self.relabeled
    }

    /// Set when the configuration is within the warning band of being
    /// concyclic (the triangle is close to degenerate).
    pub fn near_concyclic(&self) -> bool {
        self.near_concyclic
    }

    /// Angles in ascending order (orientation-free comparison key).
    pub fn sorted_angles(&self) -> [f64; 3] {
        let mut a = self.angles;
        a.sort_by(f64::total_cmp);
        a
    }

    /// The lexicographically smallest cyclic rotation of the angle triple.
    pub fn canonical_angles(&self) -> [f64; 3] {
        let mut best = self.angles;
        for shift in 1..3 {
            let rot = [
                self.angles[shift % 3],
                self.angles[(shift + 1) % 3],
                self.angles[(shift + 2) % 3],
            ];
            let smaller = rot
                .iter()
                .zip(best.iter())
                .find_map(|(r, b)| match r.total_cmp(b) {
                    std::cmp::Ordering::Less => Some(true),
                    std::cmp::Ordering::Greater => Some(false),
                    std::cmp::Ordering::Equal => None,
                })
                .unwrap_or(false);
            if smaller {
                best = rot;
            }
        }
        best
    }

    /// Equality of oriented shapes: the triples agree up to a cyclic
    /// rotation, within `tolerance` per angle.
    pub fn matches(&self, other: &Shape, tolerance: f64) -> bool {
        (0..3).any(|shift| {
            (0..3).all(|i| (self.angles[(i + shift) % 3] - other.angles[i]).abs() <= tolerance)
        })
    }
}

/// Interior angles of the euclidean triangle `(w1, w2, w3)`, assumed
/// positively oriented.
fn euclidean_angles(w1: Cx, w2: Cx, w3: Cx) -> [f64; 3] {
    let alpha = ((w3 - w1) / (w2 - w1)).arg();
    let beta = ((w1 - w2) / (w3 - w2)).arg();
    let gamma = ((w2 - w3) / (w1 - w3)).arg();
    [alpha, beta, gamma]
}

/// Shape of the curvilinear triangle on the first three points of the
/// quadruple, measured after sending the fourth point to infinity by
/// `z -> 1/(z - p4)` (identity when `p4` is already infinite).
pub fn shape_of(pts: &FourPoints) -> Result<Shape> {
    let chi = cross_ratio_points(pts)?;
    let im = chi.im.abs();
    if im < tol::CONCYCLIC {
        return Err(Error::ConcyclicInput);
    }
    let near_concyclic = im <= tol::NEAR_CONCYCLIC;

    let to_plane = |p: SpherePoint, pivot: Cx| -> Cx {
        match p {
            SpherePoint::Finite(z) => (z - pivot).finv(),
            SpherePoint::Infinity => Cx::ZERO,
        }
    };
    let [p1, p2, p3, p4] = pts.points();
    let (w1, w2, w3) = match p4 {
        SpherePoint::Infinity => (
            p1.value().expect("distinctness leaves one infinity"),
            p2.value().expect("distinctness leaves one infinity"),
            p3.value().expect("distinctness leaves one infinity"),
        ),
        SpherePoint::Finite(q) => (to_plane(p1, q), to_plane(p2, q), to_plane(p3, q)),
    };

    let orientation = ((w2 - w1).conj() * (w3 - w1)).im;
    let (w2, w3, relabeled) = if orientation < 0.0 {
        (w3, w2, true)
    } else {
        (w2, w3, false)
    };
    Ok(Shape {
        angles: euclidean_angles(w1, w2, w3),
        relabeled,
        near_concyclic,
    })
}

/// Shapes of all four curvilinear triangles; entry `l` omits point `l`
/// (remaining vertices kept in ascending index order).
pub fn all_triangle_shapes(pts: &FourPoints) -> Result<[Shape; 4]> {
    let orders: [[usize; 4]; 4] = [
        [1, 2, 3, 0],
        [0, 2, 3, 1],
        [0, 1, 3, 2],
        [0, 1, 2, 3],
    ];
    let mut out = [shape_of(pts)?; 4];
    for (l, order) in orders.iter().enumerate() {
        out[l] = shape_of(&pts.permuted(*order)?)?;
    }
    Ok(out)
}

/// Apex of the positively oriented triangle on the base `[0, 1]` with angle
/// `alpha` at 0 and `beta` at 1:
/// `lambda = sin(beta)/sin(alpha + beta) * e^{i alpha}`.
pub fn apex_from_angles(alpha: f64, beta: f64) -> Result<Cx> {
    let pi = std::f64::consts::PI;
    if !(alpha > 0.0 && beta > 0.0 && alpha + beta < pi) {
        return Err(Error::Domain(format!(
            "angles ({alpha}, {beta}) do not bound a triangle"
        )));
    }
    let modulus = beta.sin() / (alpha + beta).sin();
    Ok(modulus * cx(alpha.cos(), alpha.sin()))
}

/// Recovers a cross ratio of the quadruple purely from its shape: the apex
/// construction applied to the measured angles. The result is certified to
/// lie in the analytic cross-ratio orbit of the quadruple.
pub fn cross_ratio_geometric(pts: &FourPoints) -> Result<Cx> {
    let shape = shape_of(pts)?;
    let [alpha, beta, _] = shape.angles();
    let lambda = apex_from_angles(alpha, beta)?;
    let chi = cross_ratio_points(pts)?;
    let orbit = cross_ratio_orbit(chi)?;
    if !orbit.contains(lambda, 1e-8) {
        return Err(Error::Internal(format!(
            "geometric cross ratio {lambda} escaped the orbit of {chi}"
        )));
    }
    Ok(lambda)
}

/// Rendering options for `shape_svg`.
#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Canvas width in pixels.
    pub width: u32,
    /// Stroke width of the highlighted triangle arcs, in pixels.
    pub stroke_width: f64,
    /// Radius of the point markers, in pixels.
    pub point_radius: f64,
    /// Label and legend font size, in pixels.
    pub font_size: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 640,
            stroke_width: 1.6,
            point_radius: 3.0,
            font_size: 12.0,
        }
    }
}

const PALETTE: [&str; 4] = ["#c0392b", "#2471a3", "#1e8449", "#884ea0"];
const CIRCLE_STROKE: &str = "#c8c8c8";

struct Camera {
    min: Cx,
    max: Cx,
    scale: f64,
    height: f64,
}

impl Camera {
    fn fit(finite: &[Cx], width: f64) -> Camera {
        let (mut minx, mut maxx) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut miny, mut maxy) = (f64::INFINITY, f64::NEG_INFINITY);
        for z in finite {
            minx = minx.min(z.re);
            maxx = maxx.max(z.re);
            miny = miny.min(z.im);
            maxy = maxy.max(z.im);
        }
        // viewport is the bounding box scaled by 1.2 about its center,
        // with a floor keeping thin configurations visible
        let (cx0, cy0) = ((minx + maxx) / 2.0, (miny + maxy) / 2.0);
        let mut half_w = (maxx - minx) / 2.0 * 1.2;
        let mut half_h = (maxy - miny) / 2.0 * 1.2;
        let big = half_w.max(half_h).max(1e-6);
        half_w = half_w.max(0.15 * big);
        half_h = half_h.max(0.15 * big);
        let scale = width / (2.0 * half_w);
        Camera {
            min: cx(cx0 - half_w, cy0 - half_h),
            max: cx(cx0 + half_w, cy0 + half_h),
            scale,
            height: 2.0 * half_h * scale,
        }
    }

    fn to_px(&self, z: Cx) -> (f64, f64) {
        (
            (z.re - self.min.re) * self.scale,
            (self.max.im - z.im) * self.scale,
        )
    }

    /// Largest `t >= 0` with `start + t * dir` inside the viewport.
    fn ray_exit(&self, start: Cx, dir: Cx) -> f64 {
        let mut t = f64::INFINITY;
        if dir.re > 0.0 {
            t = t.min((self.max.re - start.re) / dir.re);
        } else if dir.re < 0.0 {
            t = t.min((self.min.re - start.re) / dir.re);
        }
        if dir.im > 0.0 {
            t = t.min((self.max.im - start.im) / dir.im);
        } else if dir.im < 0.0 {
            t = t.min((self.min.im - start.im) / dir.im);
        }
        if t.is_finite() {
            t.max(0.0)
        } else {
            0.0
        }
    }
}

fn px(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v }; // normalize -0
    format!("{v:.2}")
}

/// Short complex formatting for legends (6 significant digits).
fn fmt_cx_short(z: Cx) -> String {
    let f = |v: f64| -> String {
        let rounded: f64 = format!("{v:.5e}").parse().unwrap_or(v);
        let rounded = if rounded == 0.0 { 0.0 } else { rounded };
        format!("{rounded}")
    };
    if z.im == 0.0 {
        f(z.re)
    } else if z.re == 0.0 {
        format!("{}i", f(z.im))
    } else if z.im < 0.0 {
        format!("{}{}i", f(z.re), f(z.im))
    } else {
        format!("{}+{}i", f(z.re), f(z.im))
    }
}

fn mod_tau(x: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let r = x % tau;
    if r < 0.0 {
        r + tau
    } else {
        r
    }
}

enum Side {
    Segment(Cx, Cx),
    /// Ray from a vertex toward infinity.
    Ray(Cx, Cx),
    /// Two rays (a straight side passing through infinity).
    DoubleRay(Cx, Cx, Cx, Cx),
    /// Arc on a circle from one vertex to the other, avoiding a third
    /// point on the same circle.
    Arc {
        center: Cx,
        radius: f64,
        from: Cx,
        to: Cx,
        avoid: Cx,
    },
}

/// The side of the curvilinear triangle joining `pm` and `pn`, lying on the
/// generalized circle through `pm`, `pn` and the omitted point `pl`.
fn triangle_side(pm: SpherePoint, pn: SpherePoint, pl: SpherePoint) -> Result<Side> {
    use SpherePoint::*;
    match (pm, pn, pl) {
        (Finite(m), Finite(n), Infinity) => Ok(Side::Segment(m, n)),
        (Finite(m), Infinity, Finite(l)) => {
            let dir = (m - l) / (m - l).norm();
            Ok(Side::Ray(m, dir))
        }
        (Infinity, Finite(n), Finite(l)) => {
            let dir = (n - l) / (n - l).norm();
            Ok(Side::Ray(n, dir))
        }
        (Finite(m), Finite(n), Finite(l)) => match circumcircle(m, n, l)? {
            GeneralizedCircle::Circle { center, radius } => Ok(Side::Arc {
                center,
                radius,
                from: m,
                to: n,
                avoid: l,
            }),
            GeneralizedCircle::Line { .. } => {
                // collinear triple: the side avoiding l is the segment when
                // l is outside [m, n] and the complement through infinity
                // otherwise
                let t = ((l - m).conj() * (n - m)).re / (n - m).norm_sqr();
                if (0.0..=1.0).contains(&t) {
                    let dir = (m - n) / (m - n).norm();
                    Ok(Side::DoubleRay(m, dir, n, -dir))
                } else {
                    Ok(Side::Segment(m, n))
                }
            }
        },
        _ => Err(Error::DegenerateInput(
            "two infinite points in one triangle side".into(),
        )),
    }
}

fn push_side(svg: &mut String, cam: &Camera, side: &Side, color: &str, stroke: f64) {
    let line_px = |svg: &mut String, a: Cx, b: Cx| {
        let (x1, y1) = cam.to_px(a);
        let (x2, y2) = cam.to_px(b);
        svg.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"{}\" />\n",
            px(x1), px(y1), px(x2), px(y2), px(stroke)
        ));
    };
    match *side {
        Side::Segment(a, b) => line_px(svg, a, b),
        Side::Ray(start, dir) => {
            let t = cam.ray_exit(start, dir);
            line_px(svg, start, start + t * dir);
        }
        Side::DoubleRay(a, da, b, db) => {
            let ta = cam.ray_exit(a, da);
            line_px(svg, a, a + ta * da);
            let tb = cam.ray_exit(b, db);
            line_px(svg, b, b + tb * db);
        }
        Side::Arc {
            center,
            radius,
            from,
            to,
            avoid,
        } => {
            let (cxp, cyp) = cam.to_px(center);
            let (x1, y1) = cam.to_px(from);
            let (x2, y2) = cam.to_px(to);
            let (xa, ya) = cam.to_px(avoid);
            let theta = |x: f64, y: f64| (y - cyp).atan2(x - cxp);
            let ta = theta(x1, y1);
            let tb = theta(x2, y2);
            let tp = theta(xa, ya);
            let span = mod_tau(tb - ta);
            let p_inside = mod_tau(tp - ta) < span;
            let (sweep, large) = if p_inside {
                (0, std::f64::consts::TAU - span > std::f64::consts::PI)
            } else {
                (1, span > std::f64::consts::PI)
            };
            let r = radius * cam.scale;
            svg.push_str(&format!(
                "  <path d=\"M {} {} A {} {} 0 {} {sweep} {} {}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{}\" />\n",
                px(x1), px(y1), px(r), px(r),
                if large { 1 } else { 0 },
                px(x2), px(y2), px(stroke)
            ));
        }
    }
}

/// Renders the configuration as an SVG 1.1 document: labeled point markers,
/// the four circumcircles (or lines) of the triples, and the sides of the
/// four curvilinear triangles, color-coded per triangle. Output is
/// deterministic for identical input and options.
pub fn shape_svg(pts: &FourPoints, options: &SvgOptions) -> Result<String> {
    if options.width < 64 || options.width > 8192 {
        return Err(Error::Domain(format!(
            "canvas width {} out of range 64..=8192",
            options.width
        )));
    }
    for (name, v) in [
        ("stroke_width", options.stroke_width),
        ("point_radius", options.point_radius),
        ("font_size", options.font_size),
    ] {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::Domain(format!("{name} must be finite and positive, got {v}")));
        }
    }
    if is_concyclic(pts)? {
        return Err(Error::ConcyclicInput);
    }

    let points = pts.points();
    let finite: Vec<Cx> = points.iter().filter_map(|p| p.value()).collect();
    let cam = Camera::fit(&finite, options.width as f64);
    let height = cam.height.ceil();

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        options.width, px(height), options.width, px(height)
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\" />\n",
        options.width,
        px(height)
    ));

    // the four circumcircles (triple omitting each point in turn)
    for l in 0..4 {
        let tri: Vec<SpherePoint> = (0..4).filter(|&i| i != l).map(|i| points[i]).collect();
        let finite_tri: Vec<Cx> = tri.iter().filter_map(|p| p.value()).collect();
        if finite_tri.len() == 2 {
            // circle through infinity: the full line through the two points
            let dir = (finite_tri[1] - finite_tri[0]) / (finite_tri[1] - finite_tri[0]).norm();
            let fwd = cam.ray_exit(finite_tri[0], dir);
            let back = cam.ray_exit(finite_tri[0], -dir);
            let a = finite_tri[0] - back * dir;
            let b = finite_tri[0] + fwd * dir;
            let (x1, y1) = cam.to_px(a);
            let (x2, y2) = cam.to_px(b);
            svg.push_str(&format!(
                "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{CIRCLE_STROKE}\" stroke-width=\"1\" />\n",
                px(x1), px(y1), px(x2), px(y2)
            ));
        } else {
            match circumcircle(finite_tri[0], finite_tri[1], finite_tri[2])? {
                GeneralizedCircle::Circle { center, radius } => {
                    let (cxp, cyp) = cam.to_px(center);
                    svg.push_str(&format!(
                        "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"{CIRCLE_STROKE}\" stroke-width=\"1\" />\n",
                        px(cxp), px(cyp), px(radius * cam.scale)
                    ));
                }
                GeneralizedCircle::Line { point, direction } => {
                    let fwd = cam.ray_exit(point, direction);
                    let back = cam.ray_exit(point, -direction);
                    let (x1, y1) = cam.to_px(point - back * direction);
                    let (x2, y2) = cam.to_px(point + fwd * direction);
                    svg.push_str(&format!(
                        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{CIRCLE_STROKE}\" stroke-width=\"1\" />\n",
                        px(x1), px(y1), px(x2), px(y2)
                    ));
                }
            }
        }
    }

    // highlighted sides of the four curvilinear triangles
    for l in 0..4 {
        let idx: Vec<usize> = (0..4).filter(|&i| i != l).collect();
        let color = PALETTE[l];
        for (m, n) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let side = triangle_side(points[idx[m]], points[idx[n]], points[l])?;
            push_side(&mut svg, &cam, &side, color, options.stroke_width);
        }
    }

    // markers and labels
    for (i, p) in points.iter().enumerate() {
        match p {
            SpherePoint::Finite(z) => {
                let (x, y) = cam.to_px(*z);
                svg.push_str(&format!(
                    "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\" />\n",
                    px(x),
                    px(y),
                    px(options.point_radius)
                ));
                svg.push_str(&format!(
                    "  <text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"{}\">z{}</text>\n",
                    px(x + 1.5 * options.point_radius),
                    px(y - 1.5 * options.point_radius),
                    px(options.font_size),
                    i + 1
                ));
            }
            SpherePoint::Infinity => {
                svg.push_str(&format!(
                    "  <text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"{}\" text-anchor=\"end\">z{} at infinity</text>\n",
                    px(options.width as f64 - 6.0),
                    px(options.font_size + 4.0),
                    px(options.font_size),
                    i + 1
                ));
            }
        }
    }

    // legend
    for (i, p) in points.iter().enumerate() {
        let value = match p {
            SpherePoint::Finite(z) => fmt_cx_short(*z),
            SpherePoint::Infinity => "inf".to_string(),
        };
        svg.push_str(&format!(
            "  <text x=\"6\" y=\"{}\" font-family=\"monospace\" font-size=\"{}\">z{} = {}</text>\n",
            px((i as f64 + 1.2) * (options.font_size + 2.0)),
            px(options.font_size),
            i + 1,
            value
        ));
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}
