//! Edge-colored complete graphs and the two pattern detectors.
//!
//! Colors are 1-based. Every vertex keeps one neighborhood set per color so
//! that degree queries and the star-union criterion reduce to popcounts.

use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;

pub type Vertex = usize;
pub type Color = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("order must be at least 1")]
    EmptyGraph,
    #[error("color count must be between 1 and 255, got {0}")]
    BadColorCount(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("color {color} out of range 1..={num_colors}")]
    ColorOutOfRange { color: usize, num_colors: usize },
    #[error("expected {expected} edge colors, got {got}")]
    WrongEdgeCount { expected: usize, got: usize },
    #[error("pattern stars need at least one leaf each, got ({0}, {1})")]
    DegeneratePattern(usize, usize),
}

/// A k-edge-coloring of the complete graph on `order` vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredComplete {
    order: usize,
    num_colors: usize,
    /// Row-major `order × order`; diagonal holds 0.
    matrix: Vec<Color>,
    /// `nbrs[v * num_colors + (c - 1)]`
    nbrs: Vec<VertexSet>,
}

impl ColoredComplete {
    /// Builds a coloring from `color(i, j)` evaluated for every `i < j`.
    pub fn from_fn<F>(order: usize, num_colors: usize, mut color: F) -> Result<Self, ColoringError>
    where
        F: FnMut(Vertex, Vertex) -> usize,
    {
        if order == 0 {
            return Err(ColoringError::EmptyGraph);
        }
        if num_colors == 0 || num_colors > Color::MAX as usize {
            return Err(ColoringError::BadColorCount(num_colors));
        }
        let mut matrix = vec![0; order * order];
        let mut nbrs = vec![VertexSet::with_capacity(order); order * num_colors];
        for i in 0..order {
            for j in i + 1..order {
                let c = color(i, j);
                if c == 0 || c > num_colors {
                    return Err(ColoringError::ColorOutOfRange { color: c, num_colors });
                }
                matrix[i * order + j] = c as Color;
                matrix[j * order + i] = c as Color;
                nbrs[i * num_colors + c - 1].insert(j);
                nbrs[j * num_colors + c - 1].insert(i);
            }
        }
        Ok(ColoredComplete {
            order,
            num_colors,
            matrix,
            nbrs,
        })
    }

    /// Builds a coloring from its upper triangle read row by row:
    /// `(0,1), (0,2), …, (0,N-1), (1,2), …`.
    pub fn from_rows(order: usize, num_colors: usize, colors: &[Color]) -> Result<Self, ColoringError> {
        let expected = order * order.saturating_sub(1) / 2;
        if colors.len() != expected {
            return Err(ColoringError::WrongEdgeCount {
                expected,
                got: colors.len(),
            });
        }
        let mut it = colors.iter();
        Self::from_fn(order, num_colors, |_, _| *it.next().unwrap() as usize)
    }

    pub fn monochromatic(order: usize, num_colors: usize, color: Color) -> Result<Self, ColoringError> {
        Self::from_fn(order, num_colors, |_, _| color as usize)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    /// Color of edge `{i, j}`; `i != j` is the caller's responsibility.
    #[inline]
    pub fn color(&self, i: Vertex, j: Vertex) -> Color {
        debug_assert!(i != j);
        self.matrix[i * self.order + j]
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex, c: Color) -> &VertexSet {
        &self.nbrs[v * self.num_colors + c as usize - 1]
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), ColoringError> {
        if v >= self.order {
            return Err(ColoringError::VertexOutOfRange {
                vertex: v,
                order: self.order,
            });
        }
        Ok(())
    }

    fn check_color(&self, c: usize) -> Result<(), ColoringError> {
        if c == 0 || c > self.num_colors {
            return Err(ColoringError::ColorOutOfRange {
                color: c,
                num_colors: self.num_colors,
            });
        }
        Ok(())
    }

    /// Number of edges at `v` colored `c`.
    pub fn color_degree(&self, v: Vertex, c: usize) -> Result<usize, ColoringError> {
        self.check_vertex(v)?;
        self.check_color(c)?;
        Ok(self.neighbors(v, c as Color).len())
    }

    /// Largest monochromatic star at `v`, smallest color on ties.
    pub fn max_mono_star(&self, v: Vertex) -> Result<(Color, usize), ColoringError> {
        self.check_vertex(v)?;
        let mut best = (1, 0);
        for c in 1..=self.num_colors as Color {
            let d = self.neighbors(v, c).len();
            if d > best.1 {
                best = (c, d);
            }
        }
        Ok(best)
    }

    /// Upper triangle row by row, the inverse of [`ColoredComplete::from_rows`].
    pub fn rows(&self) -> Vec<Color> {
        let mut out = Vec::with_capacity(self.order * (self.order - 1) / 2);
        for i in 0..self.order {
            for j in i + 1..self.order {
                out.push(self.color(i, j));
            }
        }
        out
    }

    /// Colors that actually occur on some edge, ascending.
    pub fn colors_used(&self) -> Vec<Color> {
        (1..=self.num_colors as Color)
            .filter(|&c| (0..self.order).any(|v| !self.neighbors(v, c).is_empty()))
            .collect()
    }

    /// Sub-coloring induced on `vertices`, relabeled to `0..len` in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Result<Self, ColoringError> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        Self::from_fn(vertices.len(), self.num_colors, |i, j| {
            self.color(vertices[i], vertices[j]) as usize
        })
    }

    /// Same edges, palette widened to `num_colors` (never narrowed below the colors in use).
    pub fn with_num_colors(&self, num_colors: usize) -> Result<Self, ColoringError> {
        Self::from_fn(self.order, num_colors, |i, j| self.color(i, j) as usize)
    }

    /// Lexicographically first triple `x < y < z` with three distinct edge colors.
    pub fn find_rainbow_triangle(&self) -> Option<[Vertex; 3]> {
        if self.num_colors < 3 {
            return None;
        }
        for x in 0..self.order {
            for y in x + 1..self.order {
                let cxy = self.color(x, y);
                for z in y + 1..self.order {
                    let cxz = self.color(x, z);
                    let cyz = self.color(y, z);
                    if cxy != cxz && cxy != cyz && cxz != cyz {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    }

    /// First monochromatic `K(1,n) ∪ K(1,m)` in (color, first center, second center) order.
    ///
    /// Centers `u, v` in color `c` carry a vertex-disjoint pair of stars iff
    /// `|N(u) \ v| ≥ n`, `|N(v) \ u| ≥ m` and `|(N(u) ∪ N(v)) \ {u,v}| ≥ n + m`.
    /// Leaves are taken from private neighbors first, then from the common
    /// neighborhood, ascending.
    pub fn find_mono_star_union(&self, pattern: StarUnionPattern) -> Option<StarUnionEmbedding> {
        (1..=self.num_colors as Color).find_map(|c| self.find_mono_star_union_in(pattern, c))
    }

    /// As [`ColoredComplete::find_mono_star_union`], restricted to color `c`.
    pub fn find_mono_star_union_in(&self, pattern: StarUnionPattern, c: Color) -> Option<StarUnionEmbedding> {
        let (n, m) = (pattern.n(), pattern.m());
        if c == 0 || c as usize > self.num_colors {
            return None;
        }
        for u in 0..self.order {
            let nu = self.neighbors(u, c);
            if nu.len() < n {
                continue;
            }
            for v in 0..self.order {
                if v == u {
                    continue;
                }
                let nv = self.neighbors(v, c);
                if nv.len() < m {
                    continue;
                }
                let uv = nu.contains(v) as usize;
                if nu.len() - uv < n || nv.len() - uv < m {
                    continue;
                }
                // u ∉ N(u), so the union only needs {u, v} removed when they are adjacent in c
                if nu.union_len(nv) - 2 * uv < n + m {
                    continue;
                }
                return Some(self.assign_leaves(c, u, v, n, m));
            }
        }
        None
    }

    fn assign_leaves(&self, c: Color, u: Vertex, v: Vertex, n: usize, m: usize) -> StarUnionEmbedding {
        let mut nu = self.neighbors(u, c).clone();
        let mut nv = self.neighbors(v, c).clone();
        nu.remove(v);
        nv.remove(u);
        let common = nu.intersection(&nv);
        let mut leaves_a: Vec<Vertex> = nu.difference(&nv).iter().take(n).collect();
        let mut leaves_b: Vec<Vertex> = nv.difference(&nu).iter().take(m).collect();
        let mut shared = common.iter();
        while leaves_a.len() < n {
            leaves_a.push(shared.next().expect("criterion guarantees enough shared leaves"));
        }
        while leaves_b.len() < m {
            leaves_b.push(shared.next().expect("criterion guarantees enough shared leaves"));
        }
        leaves_a.sort_unstable();
        leaves_b.sort_unstable();
        StarUnionEmbedding {
            color: c,
            centers: (u, v),
            leaves_a,
            leaves_b,
        }
    }
}

impl std::fmt::Debug for ColoredComplete {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ColoredComplete(order={}, colors={}, rows={:?})",
            self.order,
            self.num_colors,
            self.rows()
        )
    }
}

/// Target `K(1,n) ∪ K(1,m)` with `n ≥ m ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StarUnionPattern {
    n: usize,
    m: usize,
}

impl StarUnionPattern {
    /// Accepts the two star sizes in either order.
    pub fn new(a: usize, b: usize) -> Result<Self, ColoringError> {
        if a == 0 || b == 0 {
            return Err(ColoringError::DegeneratePattern(a, b));
        }
        Ok(StarUnionPattern { n: a.max(b), m: a.min(b) })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Vertices spanned by one copy of the pattern.
    pub fn span(&self) -> usize {
        self.n + self.m + 2
    }
}

impl std::fmt::Display for StarUnionPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "K(1,{}) ∪ K(1,{})", self.n, self.m)
    }
}

/// Certificate for a monochromatic star union.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarUnionEmbedding {
    pub color: Color,
    pub centers: (Vertex, Vertex),
    /// Leaves of the larger star, centered at `centers.0`.
    pub leaves_a: Vec<Vertex>,
    /// Leaves of the smaller star, centered at `centers.1`.
    pub leaves_b: Vec<Vertex>,
}

impl StarUnionEmbedding {
    /// Re-checks the certificate edge by edge.
    pub fn is_valid_in(&self, g: &ColoredComplete, pattern: StarUnionPattern) -> bool {
        let (u, v) = self.centers;
        let n = g.order();
        if u >= n || v >= n || u == v {
            return false;
        }
        if self.leaves_a.len() != pattern.n() || self.leaves_b.len() != pattern.m() {
            return false;
        }
        let mut seen = VertexSet::with_capacity(n);
        seen.insert(u);
        seen.insert(v);
        for &x in self.leaves_a.iter().chain(&self.leaves_b) {
            if x >= n || seen.contains(x) {
                return false;
            }
            seen.insert(x);
        }
        self.leaves_a.iter().all(|&a| g.color(u, a) == self.color) && self.leaves_b.iter().all(|&b| g.color(v, b) == self.color)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle(c01: usize, c02: usize, c12: usize) -> ColoredComplete {
        ColoredComplete::from_fn(3, 3, |i, j| match (i, j) {
            (0, 1) => c01,
            (0, 2) => c02,
            _ => c12,
        })
        .unwrap()
    }

    #[test]
    fn color_degree_monochromatic_triangle() {
        let g = ColoredComplete::monochromatic(3, 2, 1).unwrap();
        for v in 0..3 {
            assert_eq!(g.color_degree(v, 1).unwrap(), 2);
            assert_eq!(g.color_degree(v, 2).unwrap(), 0);
        }
    }

    #[test]
    fn color_degree_rejects_bad_input() {
        let g = ColoredComplete::monochromatic(3, 2, 1).unwrap();
        assert!(matches!(g.color_degree(3, 1), Err(ColoringError::VertexOutOfRange { .. })));
        assert!(matches!(g.color_degree(0, 0), Err(ColoringError::ColorOutOfRange { .. })));
        assert!(matches!(g.color_degree(0, 3), Err(ColoringError::ColorOutOfRange { .. })));
    }

    #[test]
    fn construction_rejects_bad_colors() {
        assert_eq!(ColoredComplete::monochromatic(0, 1, 1).unwrap_err(), ColoringError::EmptyGraph);
        assert!(ColoredComplete::monochromatic(3, 2, 3).is_err());
        assert!(ColoredComplete::from_rows(3, 2, &[1, 2]).is_err());
    }

    #[test]
    fn rainbow_triangle_definition() {
        assert_eq!(triangle(1, 2, 3).find_rainbow_triangle(), Some([0, 1, 2]));
        assert_eq!(triangle(1, 1, 3).find_rainbow_triangle(), None);
    }

    #[test]
    fn two_colorings_have_no_rainbow_triangle() {
        let g = ColoredComplete::from_fn(8, 2, |i, j| 1 + (i * 7 + j * 3) % 2).unwrap();
        assert_eq!(g.find_rainbow_triangle(), None);
    }

    #[test]
    fn max_mono_star_examples() {
        let g = ColoredComplete::monochromatic(4, 2, 1).unwrap();
        assert_eq!(g.max_mono_star(2).unwrap(), (1, 3));
        // edge 0-1 color 2, others color 1
        let g = triangle(2, 1, 1);
        assert_eq!(g.max_mono_star(2).unwrap(), (1, 2));
        // tie broken towards smaller color
        assert_eq!(g.max_mono_star(0).unwrap(), (1, 1));
    }

    #[test]
    fn star_union_in_big_clique() {
        let g = ColoredComplete::monochromatic(7, 1, 1).unwrap();
        let p = StarUnionPattern::new(3, 2).unwrap();
        let e = g.find_mono_star_union(p).unwrap();
        assert!(e.is_valid_in(&g, p));
        assert_eq!(e.centers, (0, 1));
        // one vertex short
        let g = ColoredComplete::monochromatic(6, 1, 1).unwrap();
        assert_eq!(g.find_mono_star_union(p), None);
    }

    #[test]
    fn star_union_star_colored_k5() {
        // every edge at vertex 0 gets color 2, the rest color 1
        let g = ColoredComplete::from_fn(5, 2, |i, _| if i == 0 { 2 } else { 1 }).unwrap();
        let p = StarUnionPattern::new(1, 1).unwrap();
        assert_eq!(g.find_mono_star_union_in(p, 2), None);
        let e = g.find_mono_star_union_in(p, 1).unwrap();
        assert!(e.is_valid_in(&g, p));
        assert_eq!(g.find_mono_star_union(p).unwrap().color, 1);
    }

    #[test]
    fn pattern_normalizes() {
        let p = StarUnionPattern::new(2, 5).unwrap();
        assert_eq!((p.n(), p.m()), (5, 2));
        assert!(StarUnionPattern::new(0, 3).is_err());
    }

    #[test]
    fn rows_round_trip() {
        let g = ColoredComplete::from_fn(6, 3, |i, j| 1 + (i + 2 * j) % 3).unwrap();
        let back = ColoredComplete::from_rows(6, 3, &g.rows()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn embedding_validation_catches_overlap() {
        let g = ColoredComplete::monochromatic(7, 1, 1).unwrap();
        let p = StarUnionPattern::new(3, 2).unwrap();
        let mut e = g.find_mono_star_union(p).unwrap();
        e.leaves_b[0] = e.leaves_a[0];
        assert!(!e.is_valid_in(&g, p));
    }
}
