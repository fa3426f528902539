//! Lattice polytope attached to a relator with zero exponent sums.
//!
//! The word is traced as a closed loop on Z² (a steps +x, b steps +y), the
//! integer convex hull of the visited points is taken, and the hull is eroded
//! by the unit square [0,1]²: the erosion is the largest polytope whose
//! Minkowski sum with the square reproduces the hull. For a relator that is
//! a proper power the construction runs on the maximal root and the result
//! is dilated by the exponent, so the polytope of S^n is n times the
//! polytope of S. Vertices are finally translated so both coordinate minima
//! are 0.

use crate::word::{Gen, Word, WordError};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub fn new(x: i64, y: i64) -> LatticePoint {
        LatticePoint { x, y }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PolytopeClass {
    Point,
    Segment,
    TwoDimensional,
}

impl PolytopeClass {
    /// Stable lowercase tag used in JSON output.
    pub fn tag(self) -> &'static str {
        match self {
            PolytopeClass::Point => "point",
            PolytopeClass::Segment => "segment",
            PolytopeClass::TwoDimensional => "2d",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("convex hull of an empty point set")]
    EmptyInput,
    #[error("polytope is not a unit-square Minkowski summand")]
    NotASummand,
    #[error("relator has non-zero exponent sums, no polytope is defined")]
    NotInDerivedSubgroup,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A convex lattice polytope of dimension 0, 1 or 2.
///
/// Vertices are strictly convex (no collinear triples), listed counter-
/// clockwise starting from the lexicographically least vertex; a point has
/// one vertex and a segment two (in lexicographic order).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticePolytope {
    vertices: Vec<LatticePoint>,
}

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    let ax = (a.x - o.x) as i128;
    let ay = (a.y - o.y) as i128;
    let bx = (b.x - o.x) as i128;
    let by = (b.y - o.y) as i128;
    ax * by - ay * bx
}

impl LatticePolytope {
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        match self.vertices.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    pub fn classify(&self) -> PolytopeClass {
        match self.dim() {
            0 => PolytopeClass::Point,
            1 => PolytopeClass::Segment,
            _ => PolytopeClass::TwoDimensional,
        }
    }

    pub fn translated(&self, dx: i64, dy: i64) -> LatticePolytope {
        LatticePolytope {
            vertices: self
                .vertices
                .iter()
                .map(|p| LatticePoint::new(p.x + dx, p.y + dy))
                .collect(),
        }
    }

    /// Integer dilation about the origin.
    pub fn dilated(&self, k: i64) -> LatticePolytope {
        assert!(k >= 1, "dilation factor must be positive");
        if k == 1 {
            return self.clone();
        }
        let scaled: Vec<LatticePoint> = self
            .vertices
            .iter()
            .map(|p| LatticePoint::new(p.x * k, p.y * k))
            .collect();
        convex_hull(&scaled).expect("dilation of a polytope is non-empty")
    }

    /// Translate so both coordinate minima are 0.
    pub fn normalized(&self) -> LatticePolytope {
        let min_x = self.vertices.iter().map(|p| p.x).min().unwrap();
        let min_y = self.vertices.iter().map(|p| p.y).min().unwrap();
        self.translated(-min_x, -min_y)
    }

    pub fn bounding_box(&self) -> (LatticePoint, LatticePoint) {
        let min_x = self.vertices.iter().map(|p| p.x).min().unwrap();
        let max_x = self.vertices.iter().map(|p| p.x).max().unwrap();
        let min_y = self.vertices.iter().map(|p| p.y).min().unwrap();
        let max_y = self.vertices.iter().map(|p| p.y).max().unwrap();
        (
            LatticePoint::new(min_x, min_y),
            LatticePoint::new(max_x, max_y),
        )
    }
}

/// Closed loop traced by `w` on Z²: all |w|+1 visited points in order.
pub fn trace_loop(w: &Word) -> Vec<LatticePoint> {
    let mut points = Vec::with_capacity(w.len() + 1);
    let mut cur = LatticePoint::new(0, 0);
    points.push(cur);
    for &l in w.letters() {
        match l.generator() {
            Gen::A => cur.x += l.sign(),
            Gen::B => cur.y += l.sign(),
        }
        points.push(cur);
    }
    points
}

/// Andrew's monotone chain with strict turns; collinear points are dropped.
pub fn convex_hull(points: &[LatticePoint]) -> Result<LatticePolytope, PolytopeError> {
    if points.is_empty() {
        return Err(PolytopeError::EmptyInput);
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() == 1 {
        return Ok(LatticePolytope { vertices: pts });
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    // Endpoints are shared between the chains.
    lower.pop();
    upper.pop();
    let mut vertices = lower;
    vertices.extend(upper);
    if vertices.len() == 2 && vertices[0] > vertices[1] {
        vertices.swap(0, 1);
    }
    // The chain starts at the sorted minimum, which is the lexicographically
    // least vertex, and runs counter-clockwise.
    Ok(LatticePolytope { vertices })
}

/// Hull of pairwise vertex sums. Exact for convex inputs.
pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> LatticePolytope {
    let mut sums = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            sums.push(LatticePoint::new(a.x + b.x, a.y + b.y));
        }
    }
    convex_hull(&sums).expect("sum of non-empty polytopes is non-empty")
}

pub fn unit_square() -> LatticePolytope {
    convex_hull(&[
        LatticePoint::new(0, 0),
        LatticePoint::new(1, 0),
        LatticePoint::new(1, 1),
        LatticePoint::new(0, 1),
    ])
    .unwrap()
}

/// A rational point nx/d, ny/d with d > 0, kept reduced.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct QPoint {
    nx: i128,
    ny: i128,
    d: i128,
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl QPoint {
    fn reduced(nx: i128, ny: i128, d: i128) -> QPoint {
        debug_assert!(d != 0);
        let (nx, ny, d) = if d < 0 { (-nx, -ny, -d) } else { (nx, ny, d) };
        let g = gcd(gcd(nx, ny), d).max(1);
        QPoint {
            nx: nx / g,
            ny: ny / g,
            d: d / g,
        }
    }

    fn is_integral(&self) -> bool {
        self.d == 1
    }
}

/// Lexicographic comparison by exact fractions.
fn qpoint_cmp(a: &QPoint, b: &QPoint) -> std::cmp::Ordering {
    (a.nx * b.d)
        .cmp(&(b.nx * a.d))
        .then((a.ny * b.d).cmp(&(b.ny * a.d)))
}

/// Sign of the cross product (b - a) x (c - a) over rational points.
fn qcross(a: &QPoint, b: &QPoint, c: &QPoint) -> i128 {
    // Denominators are positive, so they do not affect the sign.
    let abx = b.nx * a.d - a.nx * b.d;
    let aby = b.ny * a.d - a.ny * b.d;
    let acx = c.nx * a.d - a.nx * c.d;
    let acy = c.ny * a.d - a.ny * c.d;
    (abx * acy - aby * acx).signum()
}

/// Monotone chain over rational points, strict turns.
fn rational_hull(points: &mut Vec<QPoint>) -> Vec<QPoint> {
    points.sort_by(qpoint_cmp);
    points.dedup();
    if points.len() <= 1 {
        return points.clone();
    }
    let mut lower: Vec<QPoint> = Vec::new();
    for &p in points.iter() {
        while lower.len() >= 2 && qcross(&lower[lower.len() - 2], &lower[lower.len() - 1], &p) <= 0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<QPoint> = Vec::new();
    for &p in points.iter().rev() {
        while upper.len() >= 2 && qcross(&upper[upper.len() - 2], &upper[upper.len() - 1], &p) <= 0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    let mut vertices = lower;
    vertices.extend(upper);
    vertices
}

/// Erode a two-dimensional lattice polytope by the unit square [0,1]².
///
/// Each supporting half-plane n·x ≤ c of `p` is tightened to
/// n·x ≤ c - max(0, n_x) - max(0, n_y); the intersection of the tightened
/// half-planes is exactly { v : v + [0,1]² ⊆ p }. The result must be a
/// lattice polytope whose Minkowski sum with the square reproduces `p`,
/// otherwise `NotASummand` is returned.
pub fn erode_unit_square(p: &LatticePolytope) -> Result<LatticePolytope, PolytopeError> {
    if p.dim() < 2 {
        // A point or segment contains no translate of the square.
        return Err(PolytopeError::NotASummand);
    }
    let verts = &p.vertices;
    let m = verts.len();
    // Outward normals and tightened offsets.
    let mut normals: Vec<(i128, i128, i128)> = Vec::with_capacity(m);
    for i in 0..m {
        let v = verts[i];
        let w = verts[(i + 1) % m];
        let ex = (w.x - v.x) as i128;
        let ey = (w.y - v.y) as i128;
        let nx = ey;
        let ny = -ex;
        let c = nx * v.x as i128 + ny * v.y as i128;
        let tightened = c - nx.max(0) - ny.max(0);
        normals.push((nx, ny, tightened));
    }
    // Candidate vertices: pairwise intersections of the boundary lines that
    // satisfy every constraint.
    let mut candidates: Vec<QPoint> = Vec::new();
    for i in 0..m {
        let (ax, ay, ac) = normals[i];
        for j in (i + 1)..m {
            let (bx, by, bc) = normals[j];
            let det = ax * by - ay * bx;
            if det == 0 {
                continue;
            }
            let px = ac * by - bc * ay;
            let py = ax * bc - bx * ac;
            let q = QPoint::reduced(px, py, det);
            let feasible = normals
                .iter()
                .all(|&(nx, ny, c)| nx * q.nx + ny * q.ny <= c * q.d);
            if feasible {
                candidates.push(q);
            }
        }
    }
    if candidates.is_empty() {
        return Err(PolytopeError::NotASummand);
    }
    let hull = rational_hull(&mut candidates);
    let mut int_points = Vec::with_capacity(hull.len());
    for q in &hull {
        if !q.is_integral() {
            return Err(PolytopeError::NotASummand);
        }
        int_points.push(LatticePoint::new(q.nx as i64, q.ny as i64));
    }
    let eroded = convex_hull(&int_points)?;
    // Verify the summand property exactly.
    if &minkowski_sum(&eroded, &unit_square()) != p {
        return Err(PolytopeError::NotASummand);
    }
    Ok(eroded)
}

/// The relator polytope of `w`, which must have zero exponent sums.
///
/// Computed on the maximal root and dilated by the exponent; the final
/// polytope is translated so its coordinate minima are 0.
pub fn ft_polytope(w: &Word) -> Result<LatticePolytope, PolytopeError> {
    if w.is_empty() {
        return Err(PolytopeError::Word(WordError::EmptyWord));
    }
    if !w.exponent_sums().is_zero() {
        return Err(PolytopeError::NotInDerivedSubgroup);
    }
    let (root, n) = w.max_root()?;
    // Trace the cyclic core of the root: the conjugating prefix would add
    // stray points to the hull, and for a closed loop the traced point set
    // is rotation-invariant up to the translation removed by normalization.
    let (_, core) = root.cyclic_reduce();
    let hull = convex_hull(&trace_loop(&core.as_word()))?;
    let eroded = erode_unit_square(&hull)?;
    Ok(eroded.dilated(n as i64).normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
        v.iter().map(|&(x, y)| LatticePoint::new(x, y)).collect()
    }

    #[test]
    fn trace_of_the_figure_word() {
        let loop_pts = trace_loop(&w("aabbABAB"));
        assert_eq!(
            loop_pts,
            pts(&[
                (0, 0),
                (1, 0),
                (2, 0),
                (2, 1),
                (2, 2),
                (1, 2),
                (1, 1),
                (0, 1),
                (0, 0)
            ])
        );
    }

    #[test]
    fn hull_of_the_figure_word_is_a_pentagon() {
        let hull = convex_hull(&trace_loop(&w("aabbABAB"))).unwrap();
        assert_eq!(
            hull.vertices(),
            &pts(&[(0, 0), (2, 0), (2, 2), (1, 2), (0, 1)])[..]
        );
        assert_eq!(hull.classify(), PolytopeClass::TwoDimensional);
    }

    #[test]
    fn hull_handles_degenerate_inputs() {
        assert!(matches!(convex_hull(&[]), Err(PolytopeError::EmptyInput)));
        let point = convex_hull(&pts(&[(3, 4), (3, 4)])).unwrap();
        assert_eq!(point.classify(), PolytopeClass::Point);
        let seg = convex_hull(&pts(&[(2, 2), (0, 0), (1, 1)])).unwrap();
        assert_eq!(seg.vertices(), &pts(&[(0, 0), (2, 2)])[..]);
        assert_eq!(seg.classify(), PolytopeClass::Segment);
    }

    #[test]
    fn erosion_of_the_pentagon_is_the_figure_triangle() {
        let hull = convex_hull(&trace_loop(&w("aabbABAB"))).unwrap();
        let eroded = erode_unit_square(&hull).unwrap();
        assert_eq!(eroded.vertices(), &pts(&[(0, 0), (1, 0), (1, 1)])[..]);
    }

    #[test]
    fn erosion_of_the_square_is_a_point() {
        let eroded = erode_unit_square(&unit_square()).unwrap();
        assert_eq!(eroded.vertices(), &pts(&[(0, 0)])[..]);
    }

    #[test]
    fn erosion_of_a_rectangle_is_a_segment() {
        let rect = convex_hull(&pts(&[(-2, -1), (0, -1), (0, 0), (-2, 0)])).unwrap();
        let eroded = erode_unit_square(&rect).unwrap();
        assert_eq!(eroded.vertices(), &pts(&[(-2, -1), (-1, -1)])[..]);
    }

    #[test]
    fn erosion_rejects_thin_polytopes() {
        let thin = convex_hull(&pts(&[(0, 0), (1, 0), (0, 1)])).unwrap();
        assert_eq!(erode_unit_square(&thin), Err(PolytopeError::NotASummand));
        let seg = convex_hull(&pts(&[(0, 0), (2, 0)])).unwrap();
        assert_eq!(erode_unit_square(&seg), Err(PolytopeError::NotASummand));
    }

    #[test]
    fn minkowski_round_trip() {
        for s in ["aabbABAB", "AABaab", "abAB", "abABaBAb"] {
            let hull = convex_hull(&trace_loop(&w(s))).unwrap();
            let eroded = erode_unit_square(&hull).unwrap();
            assert_eq!(minkowski_sum(&eroded, &unit_square()), hull, "{s}");
        }
    }

    #[test]
    fn ft_polytope_examples() {
        let tri = ft_polytope(&w("aabbABAB")).unwrap();
        assert_eq!(tri.vertices(), &pts(&[(0, 0), (1, 0), (1, 1)])[..]);
        assert_eq!(tri.classify(), PolytopeClass::TwoDimensional);

        let seg = ft_polytope(&w("AABaab")).unwrap();
        assert_eq!(seg.vertices(), &pts(&[(0, 0), (1, 0)])[..]);
        assert_eq!(seg.classify(), PolytopeClass::Segment);

        let point = ft_polytope(&w("abAB")).unwrap();
        assert_eq!(point.vertices(), &pts(&[(0, 0)])[..]);
        assert_eq!(point.classify(), PolytopeClass::Point);

        let scaled = ft_polytope(&w("(aabbABAB)^3")).unwrap();
        assert_eq!(scaled.vertices(), &pts(&[(0, 0), (3, 0), (3, 3)])[..]);
    }

    #[test]
    fn ft_polytope_power_scaling() {
        for s in ["aabbABAB", "AABaab", "abAB", "abABaBAb"] {
            let base = ft_polytope(&w(s)).unwrap();
            for n in 1..=3i64 {
                let powered = ft_polytope(&w(s).power(n)).unwrap();
                assert_eq!(powered, base.dilated(n).normalized(), "{s}^{n}");
            }
        }
    }

    #[test]
    fn ft_polytope_is_conjugation_invariant() {
        let base = ft_polytope(&w("aabbABAB")).unwrap();
        for conj in ["b", "Ab", "baB"] {
            let u = w(conj);
            let conjugated = u.concat(&w("aabbABAB")).concat(&u.inverse());
            assert_eq!(ft_polytope(&conjugated).unwrap(), base, "{conj}");
        }
    }

    #[test]
    fn ft_polytope_rejects_bad_inputs() {
        assert_eq!(
            ft_polytope(&w("ab")),
            Err(PolytopeError::NotInDerivedSubgroup)
        );
        assert!(matches!(
            ft_polytope(&Word::empty()),
            Err(PolytopeError::Word(WordError::EmptyWord))
        ));
    }
}
