//! Brute-force references shared by the integration tests.
#![allow(dead_code)]

use gallai_core::ColoredComplete;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_coloring(rng: &mut ChaCha8Rng, order: usize, k: usize) -> ColoredComplete {
    let colors: Vec<u8> = (0..order * order.saturating_sub(1) / 2)
        .map(|_| rng.gen_range(1..=k as u8))
        .collect();
    ColoredComplete::from_rows(order, k, &colors).unwrap()
}

/// Colorings where one color dominates, so large monochromatic stars are common.
pub fn skewed_coloring(rng: &mut ChaCha8Rng, order: usize, k: usize) -> ColoredComplete {
    let bias: f64 = rng.gen_range(0.3..0.95);
    let colors: Vec<u8> = (0..order * order.saturating_sub(1) / 2)
        .map(|_| if rng.gen_bool(bias) { 1 } else { rng.gen_range(1..=k as u8) })
        .collect();
    ColoredComplete::from_rows(order, k, &colors).unwrap()
}

pub fn brute_rainbow(g: &ColoredComplete) -> Option<[usize; 3]> {
    let n = g.order();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (x, y, z) = (g.color(a, b), g.color(a, c), g.color(b, c));
                if x != y && x != z && y != z {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

fn mask_of(g: &ColoredComplete, v: usize, c: u8) -> u32 {
    (0..g.order()).filter(|&u| u != v && g.color(u, v) == c).fold(0, |m, u| m | 1 << u)
}

fn subsets_of_size(mask: u32, size: u32, mut f: impl FnMut(u32) -> bool) -> bool {
    // every submask, filtered by size
    let mut sub = mask;
    loop {
        if sub.count_ones() == size && f(sub) {
            return true;
        }
        if sub == 0 {
            return false;
        }
        sub = (sub - 1) & mask;
    }
}

/// Does color `c` contain vertex-disjoint stars `K(1,n)` at `u` and `K(1,m)` at `v`?
/// Enumerates every leaf set of the first star.
pub fn brute_star_pair(g: &ColoredComplete, n: usize, m: usize, c: u8, u: usize, v: usize) -> bool {
    let nu = mask_of(g, u, c) & !(1 << v);
    let nv = mask_of(g, v, c) & !(1 << u);
    subsets_of_size(nu, n as u32, |a| (nv & !a).count_ones() as usize >= m)
}

pub fn brute_star_union(g: &ColoredComplete, n: usize, m: usize) -> bool {
    assert!(g.order() <= 32);
    for c in 1..=g.num_colors() as u8 {
        for u in 0..g.order() {
            for v in 0..g.order() {
                if u != v && brute_star_pair(g, n, m, c, u, v) {
                    return true;
                }
            }
        }
    }
    false
}

/// Edge-by-edge check of a claimed embedding.
pub fn embedding_is_valid(g: &ColoredComplete, n: usize, m: usize, e: &gallai_core::StarUnionEmbedding) -> bool {
    let (u, v) = e.centers;
    let mut seen = vec![false; g.order()];
    for &x in std::iter::once(&u).chain(std::iter::once(&v)).chain(&e.leaves_a).chain(&e.leaves_b) {
        if x >= g.order() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    e.leaves_a.len() == n
        && e.leaves_b.len() == m
        && e.leaves_a.iter().all(|&x| g.color(u, x) == e.color)
        && e.leaves_b.iter().all(|&x| g.color(v, x) == e.color)
}

/// Every coloring of `K_order` with colors `1..=k`, as upper-triangle rows.
pub fn all_colorings(order: usize, k: usize) -> impl Iterator<Item = ColoredComplete> {
    let edges = order * order.saturating_sub(1) / 2;
    let total = (k as u64).pow(edges as u32);
    (0..total).map(move |mut code| {
        let mut rows = vec![0u8; edges];
        for slot in rows.iter_mut() {
            *slot = (code % k as u64) as u8 + 1;
            code /= k as u64;
        }
        ColoredComplete::from_rows(order, k, &rows).unwrap()
    })
}

/// Whether some coloring of `K_order` avoids `K(1,n) ∪ K(1,m)` (and rainbow
/// triangles when `gallai`), by exhaustive enumeration.
pub fn brute_avoider_exists(order: usize, k: usize, n: usize, m: usize, gallai: bool) -> bool {
    all_colorings(order, k).any(|g| !(gallai && brute_rainbow(&g).is_some()) && !brute_star_union(&g, n, m))
}
