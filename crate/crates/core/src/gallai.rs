//! Gallai partitions: extraction, verification, reduced graphs, a random
//! Gallai-coloring generator and the star-stability checker.

use std::collections::BTreeSet;

use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::coloring::{Color, ColoredComplete, ColoringError, Vertex};
use crate::exec::{self, Threads};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GallaiError {
    #[error("a Gallai partition needs at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("vertex {0} appears in more than one part")]
    Overlap(Vertex),
    #[error("vertex {0} is not covered by any part")]
    Gap(Vertex),
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("partition is not a valid Gallai partition of this coloring")]
    InvalidPartition,
    #[error("no Gallai partition found (the coloring contains a rainbow triangle)")]
    NoPartition,
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Vertex partition with a single color between every pair of parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GallaiPartition {
    parts: Vec<Vec<Vertex>>,
    /// `t × t`, diagonal 0.
    between: Vec<Color>,
    palette: Vec<Color>,
}

impl GallaiPartition {
    /// Normalizes `parts` (each sorted, parts ordered by least vertex) and reads
    /// the between-part colors off one representative pair per part pair.
    /// Only the shape is checked here; see [`verify_partition`].
    pub fn from_parts(g: &ColoredComplete, parts: Vec<Vec<Vertex>>) -> Result<Self, GallaiError> {
        let parts = normalize_parts(g.order(), parts)?;
        let t = parts.len();
        let mut between = vec![0; t * t];
        let mut palette = BTreeSet::new();
        for i in 0..t {
            for j in i + 1..t {
                let c = g.color(parts[i][0], parts[j][0]);
                between[i * t + j] = c;
                between[j * t + i] = c;
                palette.insert(c);
            }
        }
        Ok(GallaiPartition {
            parts,
            between,
            palette: palette.into_iter().collect(),
        })
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn between_color(&self, i: usize, j: usize) -> Color {
        self.between[i * self.parts.len() + j]
    }

    /// Colors used between parts, ascending.
    pub fn palette(&self) -> &[Color] {
        &self.palette
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    /// `part_of[v]` is the index of the part holding `v`.
    pub fn part_index(&self) -> Vec<usize> {
        let n: usize = self.parts.iter().map(Vec::len).sum();
        let mut idx = vec![0; n];
        for (p, part) in self.parts.iter().enumerate() {
            for &v in part {
                idx[v] = p;
            }
        }
        idx
    }
}

fn normalize_parts(order: usize, mut parts: Vec<Vec<Vertex>>) -> Result<Vec<Vec<Vertex>>, GallaiError> {
    let mut seen = vec![false; order];
    for (i, part) in parts.iter_mut().enumerate() {
        if part.is_empty() {
            return Err(GallaiError::EmptyPart(i));
        }
        for &v in part.iter() {
            if v >= order {
                return Err(GallaiError::VertexOutOfRange { vertex: v, order });
            }
            if seen[v] {
                return Err(GallaiError::Overlap(v));
            }
            seen[v] = true;
        }
        part.sort_unstable();
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(GallaiError::Gap(v));
    }
    parts.sort_by_key(|p| p[0]);
    Ok(parts)
}

/// Checks every Gallai-partition invariant against `g` edge by edge:
/// at least two parts, one color between each pair of parts, at most two
/// colors overall, and a palette that matches the between colors.
pub fn verify_partition(g: &ColoredComplete, p: &GallaiPartition) -> Result<bool, GallaiError> {
    // shape errors are input errors, not a `false` verdict
    let parts = normalize_parts(g.order(), p.parts.clone())?;
    if parts != p.parts {
        return Err(GallaiError::InvalidPartition);
    }
    let t = p.num_parts();
    if t < 2 || p.between.len() != t * t {
        return Ok(false);
    }
    let mut used = BTreeSet::new();
    for i in 0..t {
        for j in i + 1..t {
            let c = p.between_color(i, j);
            if c != p.between_color(j, i) {
                return Ok(false);
            }
            for &x in &p.parts[i] {
                for &y in &p.parts[j] {
                    if g.color(x, y) != c {
                        return Ok(false);
                    }
                }
            }
            used.insert(c);
        }
    }
    Ok(used.len() <= 2 && used.into_iter().collect::<Vec<_>>() == p.palette)
}

/// The 2-colored complete graph on the parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGraph {
    pub graph: ColoredComplete,
}

impl ReducedGraph {
    pub fn colors_used(&self) -> Vec<Color> {
        self.graph.colors_used()
    }
}

pub fn reduced_graph(g: &ColoredComplete, p: &GallaiPartition) -> Result<ReducedGraph, GallaiError> {
    if !verify_partition(g, p)? {
        return Err(GallaiError::InvalidPartition);
    }
    let graph = ColoredComplete::from_fn(p.num_parts(), g.num_colors(), |i, j| p.between_color(i, j) as usize)?;
    Ok(ReducedGraph { graph })
}

/// Extracts a Gallai partition on the current thread.
pub fn find_gallai_partition(g: &ColoredComplete) -> Result<Option<GallaiPartition>, GallaiError> {
    find_gallai_partition_with(g, Threads::SEQUENTIAL)
}

/// Extracts a Gallai partition.
///
/// For every candidate palette (each color pair, then each single color) the
/// parts are seeded as connected components of the edges colored outside the
/// palette, then any two parts joined by more than one color are merged until
/// nothing changes. Surviving partitions with at least two parts are coarsened
/// greedily and the one with the fewest parts wins, ties broken by the
/// lexicographically least part list. The result is not guaranteed to have the
/// globally minimum number of parts.
///
/// Rainbow-triangle-free inputs always yield a partition. Other inputs may or
/// may not; anything returned passes [`verify_partition`].
pub fn find_gallai_partition_with(g: &ColoredComplete, threads: Threads) -> Result<Option<GallaiPartition>, GallaiError> {
    let n = g.order();
    if n < 2 {
        return Err(GallaiError::TooSmall(n));
    }
    let k = g.num_colors() as Color;
    let mut palettes: Vec<(Color, Color)> = Vec::new();
    for a in 1..=k {
        for b in a + 1..=k {
            palettes.push((a, b));
        }
    }
    palettes.extend((1..=k).map(|a| (a, a)));

    let found = exec::map(threads, &palettes, |&(a, b)| seeded_partition(g, a, b));
    let best = found
        .into_iter()
        .flatten()
        .min_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    best.map(|parts| GallaiPartition::from_parts(g, parts)).transpose()
}

fn seeded_partition(g: &ColoredComplete, a: Color, b: Color) -> Option<Vec<Vec<Vertex>>> {
    let n = g.order();
    let mut uf = UnionFind::<usize>::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let c = g.color(i, j);
            if c != a && c != b {
                uf.union(i, j);
            }
        }
    }
    loop {
        let labels: Vec<usize> = (0..n).map(|v| uf.find_mut(v)).collect();
        let roots: BTreeSet<usize> = labels.iter().copied().collect();
        if roots.len() < 2 {
            return None;
        }
        let t = roots.len();
        let mut slot_of_root = vec![usize::MAX; n];
        for (i, &r) in roots.iter().enumerate() {
            slot_of_root[r] = i;
        }
        let slot: Vec<usize> = labels.iter().map(|&r| slot_of_root[r]).collect();

        // first color seen between each pair of parts; MAX marks a conflict
        let mut seen = vec![0 as Color; t * t];
        let mut conflicts = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (pi, pj) = (slot[i], slot[j]);
                if pi == pj {
                    continue;
                }
                let cell = &mut seen[pi.min(pj) * t + pi.max(pj)];
                let c = g.color(i, j);
                if *cell == 0 {
                    *cell = c;
                } else if *cell != c && *cell != Color::MAX {
                    *cell = Color::MAX;
                    conflicts.push((i, j));
                }
            }
        }
        if conflicts.is_empty() {
            let mut parts: Vec<Vec<Vertex>> = vec![Vec::new(); t];
            for v in 0..n {
                parts[slot[v]].push(v);
            }
            return Some(coarsen(g, parts));
        }
        for (i, j) in conflicts {
            uf.union(i, j);
        }
    }
}

/// Greedy coarsening of a valid partition: split the reduced graph along a
/// disconnected color complement when possible, otherwise merge twin parts.
fn coarsen(g: &ColoredComplete, mut parts: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    loop {
        for p in parts.iter_mut() {
            p.sort_unstable();
        }
        parts.sort_by_key(|p| p[0]);
        let t = parts.len();
        if t <= 2 {
            return parts;
        }
        let col = |i: usize, j: usize| g.color(parts[i][0], parts[j][0]);
        let palette: BTreeSet<Color> = (0..t)
            .flat_map(|i| (i + 1..t).map(move |j| (i, j)))
            .map(|(i, j)| col(i, j))
            .collect();

        // parts reachable from part 0 without using color c
        let mut split = None;
        for &c in &palette {
            let mut reach = vec![false; t];
            reach[0] = true;
            let mut stack = vec![0];
            while let Some(i) = stack.pop() {
                for (j, r) in reach.iter_mut().enumerate() {
                    if !*r && j != i && col(i, j) != c {
                        *r = true;
                        stack.push(j);
                    }
                }
            }
            if reach.iter().any(|r| !r) {
                split = Some(reach);
                break;
            }
        }
        if let Some(reach) = split {
            let (mut side, mut rest) = (Vec::new(), Vec::new());
            for (i, p) in parts.into_iter().enumerate() {
                if reach[i] {
                    side.extend(p)
                } else {
                    rest.extend(p)
                }
            }
            return vec![side, rest];
        }

        let twins = (0..t)
            .flat_map(|i| (i + 1..t).map(move |j| (i, j)))
            .find(|&(i, j)| (0..t).all(|l| l == i || l == j || col(i, l) == col(j, l)));
        match twins {
            Some((i, j)) => {
                let moved = parts.remove(j);
                parts[i].extend(moved);
            }
            None => return parts,
        }
    }
}

/// Random Gallai coloring by recursive substitution into 2-colored bases.
///
/// `depth` bounds the substitution levels; at the bottom (or for tiny blocks)
/// a block is colored with two randomly chosen colors.
pub fn random_gallai(seed: u64, order: usize, num_colors: usize, depth: usize) -> Result<ColoredComplete, GallaiError> {
    if order == 0 {
        return Err(ColoringError::EmptyGraph.into());
    }
    if num_colors == 0 || num_colors > Color::MAX as usize {
        return Err(ColoringError::BadColorCount(num_colors).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matrix = vec![0usize; order * order];
    let vertices: Vec<Vertex> = (0..order).collect();
    fill_block(&mut rng, &vertices, num_colors, depth, order, &mut matrix);
    Ok(ColoredComplete::from_fn(order, num_colors, |i, j| matrix[i * order + j])?)
}

fn fill_block(rng: &mut ChaCha8Rng, block: &[Vertex], k: usize, depth: usize, order: usize, matrix: &mut [usize]) {
    let len = block.len();
    if len < 2 {
        return;
    }
    let a = rng.gen_range(1..=k);
    let b = rng.gen_range(1..=k);
    let mut set = |x: Vertex, y: Vertex, c: usize| {
        matrix[x * order + y] = c;
        matrix[y * order + x] = c;
    };
    if depth == 0 || len < 3 {
        for (i, &x) in block.iter().enumerate() {
            for &y in &block[i + 1..] {
                set(x, y, if rng.gen_bool(0.5) { a } else { b });
            }
        }
        return;
    }
    let t = rng.gen_range(2..=len.min(6));
    let mut shuffled = block.to_vec();
    shuffled.shuffle(rng);
    // t - 1 distinct cut points in 1..len
    let mut cuts: Vec<usize> = (1..len).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(t - 1).collect();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(t);
    let mut start = 0;
    for c in cuts.into_iter().chain(std::iter::once(len)) {
        parts.push(shuffled[start..c].to_vec());
        start = c;
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let c = if rng.gen_bool(0.5) { a } else { b };
            for &x in &parts[i] {
                for &y in &parts[j] {
                    set(x, y, c);
                }
            }
        }
    }
    for part in &parts {
        fill_block(rng, part, k, depth - 1, order, matrix);
    }
}

/// Outcome of checking the star-stability implication on one coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub n: usize,
    pub r: usize,
    pub order: usize,
    /// Precondition violations (reported, not fatal).
    pub warnings: Vec<String>,
    pub holds_hypothesis: bool,
    pub num_parts: usize,
    pub part_sizes: Vec<usize>,
    pub palette: Vec<Color>,
    pub min_part_size: usize,
    pub required_min_part_size: i64,
    /// Minimum over vertices and both palette colors of between-part degree.
    pub min_between_degree_per_color: usize,
    pub required_between_degree: i64,
    /// Largest monochromatic between-part degree; the hypothesis needs it below `n`.
    pub max_between_degree: usize,
    /// `None` when the hypothesis fails (implication vacuous).
    pub conclusion_holds: Option<bool>,
    /// Hypothesis holds but conclusion fails.
    pub counterexample: bool,
}

/// Checks hypothesis ⇒ conclusion for the star-stability statement on `g`:
/// if `|g| = (5n − r)/2` and no vertex has `n` between-part edges of one color,
/// the partition has exactly 5 parts, each of size `≥ ⌈(n − r + 3)/2⌉`, and every
/// vertex has `≥ n − r + 3` between-part edges in each palette color.
pub fn check_star_stability(g: &ColoredComplete, n: usize, r: usize) -> Result<StabilityReport, GallaiError> {
    check_star_stability_with(g, n, r, Threads::SEQUENTIAL)
}

pub fn check_star_stability_with(g: &ColoredComplete, n: usize, r: usize, threads: Threads) -> Result<StabilityReport, GallaiError> {
    let order = g.order();
    let mut warnings = Vec::new();
    if n < 22 {
        warnings.push(format!("n = {n} is below 22"));
    }
    if r < 4 {
        warnings.push(format!("r = {r} is below 4"));
    }
    if 4 * r > n + 4 {
        warnings.push(format!("r = {r} exceeds (n + 4)/4"));
    }
    let order_ok = (5 * n) >= r && (5 * n - r).is_multiple_of(2) && (5 * n - r) / 2 == order;
    if !order_ok {
        warnings.push(format!(
            "order {order} differs from (5n - r)/2 = {}",
            (5 * n) as f64 / 2.0 - r as f64 / 2.0
        ));
    }

    let p = find_gallai_partition_with(g, threads)?.ok_or(GallaiError::NoPartition)?;
    let part_of = p.part_index();
    let palette = p.palette().to_vec();

    let mut max_between = 0;
    let mut min_per_color = usize::MAX;
    for v in 0..order {
        // a one-color palette counts the missing second color as degree 0
        for c in palette.iter().copied().map(Some).chain(std::iter::repeat(None)).take(2) {
            let d = match c {
                Some(c) => g.neighbors(v, c).iter().filter(|&u| part_of[u] != part_of[v]).count(),
                None => 0,
            };
            max_between = max_between.max(d);
            min_per_color = min_per_color.min(d);
        }
    }

    let sizes = p.part_sizes();
    let min_part_size = sizes.iter().copied().min().unwrap_or(0);
    let (ni, ri) = (n as i64, r as i64);
    let required_min_part_size = (ni - ri + 3 + 1).div_euclid(2);
    let required_between_degree = ni - ri + 3;

    let holds_hypothesis = order_ok && max_between < n;
    let conclusion =
        p.num_parts() == 5 && min_part_size as i64 >= required_min_part_size && min_per_color as i64 >= required_between_degree;
    let conclusion_holds = holds_hypothesis.then_some(conclusion);
    Ok(StabilityReport {
        n,
        r,
        order,
        warnings,
        holds_hypothesis,
        num_parts: p.num_parts(),
        part_sizes: sizes,
        palette,
        min_part_size,
        required_min_part_size,
        min_between_degree_per_color: min_per_color,
        required_between_degree,
        max_between_degree: max_between,
        conclusion_holds,
        counterexample: conclusion_holds == Some(false),
    })
}
