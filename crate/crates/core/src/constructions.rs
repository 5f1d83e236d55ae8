//! Lower-bound witness colorings.
//!
//! Every builder returns a [`Witness`] that has already been checked by both
//! detectors and against the order its bound predicts.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{Color, ColoredComplete, ColoringError, StarUnionEmbedding, StarUnionPattern, Vertex};
use crate::formulas;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("inside color {inside} and between colors ({a}, {b}) must be distinct and nonzero")]
    ColorsNotDistinct { inside: Color, a: Color, b: Color },
    #[error("pentagon part sizes must be at least 1, got {0:?}")]
    EmptyPart([usize; 5]),
    #[error("need at least 3 colors, got k = {0}")]
    TooFewColors(usize),
    #[error("n = {0} is even: an (n-1)-regular graph on 2n-1 vertices has odd degree sum, so the equal-stars construction does not exist")]
    ParityObstruction(usize),
    #[error("smaller star m = {m} exceeds larger star n = {n}")]
    StarsOutOfOrder { n: usize, m: usize },
    #[error("star size must be at least {min}, got {got}")]
    StarTooSmall { min: usize, got: usize },
    #[error("apex color {0} is already used or repeated")]
    ReusedColor(Color),
    #[error("arrangement {0:?} is not a permutation of 0..5")]
    BadArrangement([usize; 5]),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    SmallM,
    Equal,
    General,
    Pentagon,
    ApexExtension,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub kind: ConstructionKind,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// Clique sizes of the base graph, in cycle order for pentagon bases.
    pub part_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Failure {
    RainbowTriangle([Vertex; 3]),
    StarUnion(StarUnionEmbedding),
    OrderMismatch { expected: usize, actual: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    Unchecked,
    Pass,
    Fail(Failure),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub coloring: ColoredComplete,
    pub provenance: Provenance,
    pub pattern: StarUnionPattern,
    /// The Ramsey-type lower bound this coloring certifies: order + 1.
    pub claimed_bound: usize,
    pub verified: Verification,
}

impl Witness {
    pub fn passed(&self) -> bool {
        self.verified == Verification::Pass
    }
}

/// Pentagon base placed on cycle positions `P_0 … P_4`; position `i`
/// neighbours `i ± 1 (mod 5)` in color `a` and the other two in color `b`.
fn blowup(sizes: [usize; 5], inside: Color, a: Color, b: Color, k: usize) -> Result<ColoredComplete, ColoringError> {
    let mut part = Vec::new();
    for (p, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(p, s));
    }
    ColoredComplete::from_fn(part.len(), k, |i, j| {
        let (pi, pj) = (part[i], part[j]);
        let c = if pi == pj {
            inside
        } else if (pi + 1) % 5 == pj || (pj + 1) % 5 == pi {
            a
        } else {
            b
        };
        c as usize
    })
}

/// Clique blow-up of the 2-colored `K_5` without a monochromatic triangle.
pub fn pentagon_blowup(sizes: [usize; 5], inside: Color, between: (Color, Color)) -> Result<ColoredComplete, ConstructionError> {
    let (a, b) = between;
    if inside == a || inside == b || a == b || inside == 0 || a == 0 || b == 0 {
        return Err(ConstructionError::ColorsNotDistinct { inside, a, b });
    }
    if sizes.contains(&0) {
        return Err(ConstructionError::EmptyPart(sizes));
    }
    let k = inside.max(a).max(b) as usize;
    Ok(blowup(sizes, inside, a, b, k)?)
}

/// Appends one apex per color, each joined to every earlier vertex in its own color.
pub fn extend_with_apex(g: &ColoredComplete, new_colors: &[Color]) -> Result<ColoredComplete, ConstructionError> {
    let mut taken = g.colors_used();
    for &c in new_colors {
        if c == 0 || taken.contains(&c) {
            return Err(ConstructionError::ReusedColor(c));
        }
        taken.push(c);
    }
    if new_colors.is_empty() {
        return Ok(g.clone());
    }
    let base = g.order();
    let k = g.num_colors().max(new_colors.iter().copied().max().unwrap_or(0) as usize);
    Ok(ColoredComplete::from_fn(base + new_colors.len(), k, |i, j| {
        if j < base {
            g.color(i, j) as usize
        } else {
            new_colors[j - base] as usize
        }
    })?)
}

fn apex_colors(k: usize) -> Vec<Color> {
    (4..=k as Color).collect()
}

fn check_k(k: usize) -> Result<(), ConstructionError> {
    if k < 3 {
        return Err(ConstructionError::TooFewColors(k));
    }
    if k > Color::MAX as usize {
        return Err(ColoringError::BadColorCount(k).into());
    }
    Ok(())
}

fn finish(coloring: ColoredComplete, provenance: Provenance, pattern: StarUnionPattern) -> Witness {
    let claimed_bound = coloring.order() + 1;
    verify_witness(Witness {
        coloring,
        provenance,
        pattern,
        claimed_bound,
        verified: Verification::Unchecked,
    })
}

/// Five color-1 cliques of size `(n−1)/2` (odd `n`), or one of `n/2` and four of
/// `(n−2)/2` (even `n`), joined as a pentagon blow-up in colors 2 and 3, then
/// apexes in colors `4..=k`. No vertex has `n` edges in colors 1–3.
pub fn build_small_m_lower(n: usize, m: usize, k: usize) -> Result<Witness, ConstructionError> {
    check_k(k)?;
    if n < 2 {
        return Err(ConstructionError::StarTooSmall { min: 2, got: n });
    }
    if m == 0 {
        return Err(ConstructionError::StarTooSmall { min: 1, got: m });
    }
    if m > n {
        return Err(ConstructionError::StarsOutOfOrder { n, m });
    }
    let pattern = StarUnionPattern::new(n, m)?;
    let sizes = if n % 2 == 1 {
        [(n - 1) / 2; 5]
    } else {
        let s = (n - 2) / 2;
        [n / 2, s, s, s, s]
    };
    let base = blowup(sizes, 1, 2, 3, k)?;
    let g = extend_with_apex(&base, &apex_colors(k))?;
    let provenance = Provenance {
        kind: ConstructionKind::SmallM,
        n,
        m,
        k,
        part_sizes: sizes.to_vec(),
    };
    Ok(finish(g, provenance, pattern))
}

/// Equal-stars witness of order `3n + k − 2` for odd `n`.
///
/// `F_1` is the circulant on `Z_{2n−1}`: distances `1..=(n−1)/2` get color 1 and
/// `(n+1)/2..=n−1` color 2, so both color classes are `(n−1)`-regular. Then a
/// color-1 `K_n` joined to `F_1` in color 3, an apex `v` in color 1, an apex `w`
/// in color 2, and apexes in colors `4..=k`.
pub fn build_equal_lower(n: usize, k: usize) -> Result<Witness, ConstructionError> {
    check_k(k)?;
    if n == 0 {
        return Err(ConstructionError::StarTooSmall { min: 1, got: n });
    }
    if n.is_multiple_of(2) {
        return Err(ConstructionError::ParityObstruction(n));
    }
    let f1 = 2 * n - 1;
    let clique_end = f1 + n;
    let v = clique_end;
    let w = v + 1;
    let half = (n - 1) / 2;
    let base = ColoredComplete::from_fn(w + 1, k, |i, j| {
        if j < f1 {
            let d = (j - i).min(f1 - (j - i));
            if d <= half {
                1
            } else {
                2
            }
        } else if j < clique_end {
            if i < f1 {
                3
            } else {
                1
            }
        } else if j == v {
            1
        } else {
            2
        }
    })?;
    let g = extend_with_apex(&base, &apex_colors(k))?;
    let provenance = Provenance {
        kind: ConstructionKind::Equal,
        n,
        m: n,
        k,
        part_sizes: vec![f1, n, 1, 1],
    };
    Ok(finish(g, provenance, StarUnionPattern::new(n, n)?))
}

/// General witness with the parts in the order they are listed for the lemma:
/// `[(n−1)/2 ×4, m]` for odd `n`, `[(n−2)/2 ×3, m, n/2]` for even `n`.
pub fn build_general_lower(n: usize, m: usize, k: usize) -> Result<Witness, ConstructionError> {
    build_general_lower_arranged(n, m, k, [0, 1, 2, 3, 4])
}

/// As [`build_general_lower`], placing listed part `arrangement[i]` at cycle position `i`.
pub fn build_general_lower_arranged(n: usize, m: usize, k: usize, arrangement: [usize; 5]) -> Result<Witness, ConstructionError> {
    check_k(k)?;
    if m == 0 {
        return Err(ConstructionError::StarTooSmall { min: 1, got: m });
    }
    if m > n {
        return Err(ConstructionError::StarsOutOfOrder { n, m });
    }
    let mut sorted = arrangement;
    sorted.sort_unstable();
    if sorted != [0, 1, 2, 3, 4] {
        return Err(ConstructionError::BadArrangement(arrangement));
    }
    let listed = if n % 2 == 1 {
        let s = (n - 1) / 2;
        [s, s, s, s, m]
    } else {
        let s = (n - 2) / 2;
        [s, s, s, m, n / 2]
    };
    let sizes = arrangement.map(|i| listed[i]);
    let base = blowup(sizes, 1, 2, 3, k)?;
    let g = extend_with_apex(&base, &apex_colors(k))?;
    let provenance = Provenance {
        kind: ConstructionKind::General,
        n,
        m,
        k,
        part_sizes: sizes.to_vec(),
    };
    Ok(finish(g, provenance, StarUnionPattern::new(n, m)?))
}

/// Pentagon blow-up (inside color 1, between colors 2 and 3) with apexes
/// `4..=k`, checked against pattern `(n, m)`.
pub fn build_pentagon(sizes: [usize; 5], n: usize, m: usize, k: usize) -> Result<Witness, ConstructionError> {
    check_k(k)?;
    let base = pentagon_blowup(sizes, 1, (2, 3))?.with_num_colors(k)?;
    let g = extend_with_apex(&base, &apex_colors(k))?;
    let provenance = Provenance {
        kind: ConstructionKind::Pentagon,
        n,
        m,
        k,
        part_sizes: sizes.to_vec(),
    };
    Ok(finish(g, provenance, StarUnionPattern::new(n, m)?))
}

/// Extends a witness by fresh apex colors; the bound grows with the order.
pub fn extend_witness(w: &Witness, new_colors: &[Color]) -> Result<Witness, ConstructionError> {
    let g = extend_with_apex(&w.coloring, new_colors)?;
    let provenance = Provenance {
        kind: ConstructionKind::ApexExtension,
        k: g.num_colors(),
        ..w.provenance.clone()
    };
    Ok(finish(g, provenance, w.pattern))
}

/// Order the provenance predicts, where a closed form exists.
pub fn expected_order(p: &Provenance) -> Option<usize> {
    let (k, n, m) = (p.k as u64, p.n as u64, p.m as u64);
    let bound = match p.kind {
        ConstructionKind::SmallM => formulas::gr_small_m(k, n, m).value()?,
        ConstructionKind::Equal => formulas::gr_equal(k, n).value()?,
        ConstructionKind::General => formulas::general_construction_bound(k, n, m),
        ConstructionKind::Pentagon | ConstructionKind::ApexExtension => return None,
    };
    usize::try_from(bound - 1).ok()
}

/// Runs both detectors and the order checks, recording the first failure.
pub fn verify_witness(mut w: Witness) -> Witness {
    let order = w.coloring.order();
    let expected = expected_order(&w.provenance).unwrap_or(order);
    w.verified = if w.claimed_bound != order + 1 {
        Verification::Fail(Failure::OrderMismatch {
            expected: w.claimed_bound.saturating_sub(1),
            actual: order,
        })
    } else if expected != order {
        Verification::Fail(Failure::OrderMismatch { expected, actual: order })
    } else if let Some(t) = w.coloring.find_rainbow_triangle() {
        Verification::Fail(Failure::RainbowTriangle(t))
    } else if let Some(e) = w.coloring.find_mono_star_union(w.pattern) {
        Verification::Fail(Failure::StarUnion(e))
    } else {
        Verification::Pass
    };
    w
}
