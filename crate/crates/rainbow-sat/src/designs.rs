//! Combinatorial design primitives: Steiner triple systems (Bose and
//! Skolem constructions), the third-point operation, and 1-factorizations
//! of complete graphs of even order.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignError {
    #[error("no Steiner triple system of order {0} (order must be 1 or 3 mod 6, at least 3)")]
    NoSuchSystem(u32),
    #[error("no 1-factorization of K_{0} (order must be even, at least 2)")]
    OddOrder(u32),
}

/// A Steiner triple system on points `1..=order`.
#[derive(Debug, Clone)]
pub struct SteinerTripleSystem {
    order: u32,
    /// Lines as ascending point triples, sorted.
    lines: Vec<[u32; 3]>,
    /// `third[a][b]` = the third point of the line through a and b (a for
    /// a == b), 1-based with dummy row/column 0.
    third: Vec<Vec<u32>>,
    /// For each point pair to its line index.
    line_of: Vec<Vec<usize>>,
}

impl SteinerTripleSystem {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn lines(&self) -> &[[u32; 3]] {
        &self.lines
    }

    /// The i-th point (1-based) of line `l` in the fixed (ascending)
    /// ordering.
    pub fn line_point(&self, line: usize, i: usize) -> u32 {
        self.lines[line][i - 1]
    }

    pub fn line_through(&self, a: u32, b: u32) -> usize {
        self.line_of[a as usize][b as usize]
    }

    /// Flags (line index, point) in deterministic order.
    pub fn flags(&self) -> Vec<(usize, u32)> {
        let mut out = Vec::with_capacity(3 * self.lines.len());
        for (idx, line) in self.lines.iter().enumerate() {
            for &p in line {
                out.push((idx, p));
            }
        }
        out
    }

    /// `a` if a == b, else the third point of the unique line through a, b.
    pub fn star_op(&self, a: u32, b: u32) -> u32 {
        self.third[a as usize][b as usize]
    }
}

fn assemble(order: u32, mut lines: Vec<[u32; 3]>) -> SteinerTripleSystem {
    for line in &mut lines {
        line.sort_unstable();
    }
    lines.sort_unstable();
    let n = order as usize;
    let mut third = vec![vec![0u32; n + 1]; n + 1];
    let mut line_of = vec![vec![usize::MAX; n + 1]; n + 1];
    for p in 1..=order {
        third[p as usize][p as usize] = p;
    }
    for (idx, &[a, b, c]) in lines.iter().enumerate() {
        for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
            debug_assert_eq!(third[x as usize][y as usize], 0, "pair covered twice");
            third[x as usize][y as usize] = z;
            third[y as usize][x as usize] = z;
            line_of[x as usize][y as usize] = idx;
            line_of[y as usize][x as usize] = idx;
        }
    }
    SteinerTripleSystem {
        order,
        lines,
        third,
        line_of,
    }
}

/// Bose construction for t = 6s+3, over the idempotent commutative
/// quasigroup on Z_{2s+1} (x∘y = (x+y)(s+1) mod 2s+1).
fn bose(t: u32) -> SteinerTripleSystem {
    let q = (t / 3) as u64; // 2s+1, odd
    let s = (q - 1) / 2;
    let op = |x: u64, y: u64| -> u64 { (x + y) * (s + 1) % q };
    // point (i, k) -> k*q + i + 1
    let pt = |i: u64, k: u64| -> u32 { (k * q + i + 1) as u32 };
    let mut lines = Vec::new();
    for i in 0..q {
        lines.push([pt(i, 0), pt(i, 1), pt(i, 2)]);
    }
    for i in 0..q {
        for j in i + 1..q {
            for k in 0..3 {
                lines.push([pt(i, k), pt(j, k), pt(op(i, j), (k + 1) % 3)]);
            }
        }
    }
    assemble(t, lines)
}

/// Skolem construction for t = 6s+1, over the half-idempotent commutative
/// quasigroup on Z_{2s}.
fn skolem(t: u32) -> SteinerTripleSystem {
    let s = ((t - 1) / 6) as u64;
    let q = 2 * s;
    // relabel the Z_{2s} addition table so the diagonal is half-idempotent
    let alpha = |v: u64| -> u64 {
        if v % 2 == 0 {
            v / 2
        } else {
            s + (v - 1) / 2
        }
    };
    let op = |x: u64, y: u64| -> u64 { alpha((x + y) % q) };
    // point (i, k) -> k*2s + i + 1 for k in 0..3; the extra point is t
    let pt = |i: u64, k: u64| -> u32 { (k * q + i + 1) as u32 };
    let inf = t;
    let mut lines = Vec::new();
    for i in 0..s {
        lines.push([pt(i, 0), pt(i, 1), pt(i, 2)]);
    }
    for i in 0..s {
        for k in 0..3 {
            lines.push([inf, pt(s + i, k), pt(i, (k + 1) % 3)]);
        }
    }
    for i in 0..q {
        for j in i + 1..q {
            for k in 0..3 {
                lines.push([pt(i, k), pt(j, k), pt(op(i, j), (k + 1) % 3)]);
            }
        }
    }
    assemble(t, lines)
}

pub fn steiner_triple_system(t: u32) -> Result<SteinerTripleSystem, DesignError> {
    if t < 3 {
        return Err(DesignError::NoSuchSystem(t));
    }
    match t % 6 {
        3 => Ok(bose(t)),
        1 => Ok(skolem(t)),
        _ => Err(DesignError::NoSuchSystem(t)),
    }
}

/// A proper (r-1)-edge-colouring of K_r into perfect matchings, r even.
#[derive(Debug, Clone)]
pub struct OneFactorization {
    order: u32,
    /// `color_of[u][v]` in 1..=r-1, 0-based vertices.
    color_of: Vec<Vec<u32>>,
    /// Per colour (1-based index c-1): matching edges sorted
    /// lexicographically; this fixes the bijections g_c.
    matchings: Vec<Vec<(u32, u32)>>,
}

impl OneFactorization {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn color_of(&self, u: u32, v: u32) -> u32 {
        self.color_of[u as usize][v as usize]
    }

    /// The matching of colour `c` (1-based), edges sorted.
    pub fn matching(&self, c: u32) -> &[(u32, u32)] {
        &self.matchings[(c - 1) as usize]
    }

    /// g_c(i): the i-th (1-based) edge of the colour-c matching.
    pub fn g(&self, c: u32, i: usize) -> (u32, u32) {
        self.matching(c)[i - 1]
    }

    /// g_c^{-1}(edge): 1-based index of an edge in its matching.
    pub fn g_inv(&self, c: u32, e: (u32, u32)) -> usize {
        let e = (e.0.min(e.1), e.0.max(e.1));
        self.matching(c).iter().position(|&f| f == e).unwrap() + 1
    }
}

/// Circle-method 1-factorization: vertex r-1 is the hub; round i pairs the
/// hub with i and pairs (i+j) mod (r-1) with (i-j) mod (r-1).
pub fn one_factorization(r: u32) -> Result<OneFactorization, DesignError> {
    if r < 2 || r % 2 != 0 {
        return Err(DesignError::OddOrder(r));
    }
    let n = r as usize;
    let m = (r - 1) as i64;
    let mut color_of = vec![vec![0u32; n]; n];
    let mut matchings = Vec::with_capacity(m as usize);
    for i in 0..m {
        let mut matching = vec![(i as u32, (r - 1))];
        for j in 1..(r as i64) / 2 {
            let a = (i + j).rem_euclid(m) as u32;
            let b = (i - j).rem_euclid(m) as u32;
            matching.push((a.min(b), a.max(b)));
        }
        matching.sort_unstable();
        for &(a, b) in &matching {
            color_of[a as usize][b as usize] = (i + 1) as u32;
            color_of[b as usize][a as usize] = (i + 1) as u32;
        }
        matchings.push(matching);
    }
    let mut mt = matchings.clone();
    mt.iter_mut().for_each(|m| {
        m.iter_mut().for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
        m.sort_unstable();
    });
    Ok(OneFactorization {
        order: r,
        color_of,
        matchings: mt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_sts(sts: &SteinerTripleSystem) {
        let t = sts.order();
        assert_eq!(sts.lines().len() as u32, t * (t - 1) / 6);
        assert_eq!(sts.flags().len() as u32, t * (t - 1) / 2);
        // every pair in exactly one line
        for a in 1..=t {
            for b in a + 1..=t {
                let count = sts
                    .lines()
                    .iter()
                    .filter(|l| l.contains(&a) && l.contains(&b))
                    .count();
                assert_eq!(count, 1, "pair ({a},{b}) covered {count} times");
            }
        }
    }

    #[test]
    fn sts_small_orders() {
        for t in [3u32, 7, 9, 13, 15] {
            check_sts(&steiner_triple_system(t).unwrap());
        }
        assert_eq!(
            steiner_triple_system(5).unwrap_err(),
            DesignError::NoSuchSystem(5)
        );
        assert_eq!(steiner_triple_system(3).unwrap().lines(), &[[1, 2, 3]]);
        assert_eq!(steiner_triple_system(7).unwrap().lines().len(), 7);
        assert_eq!(steiner_triple_system(9).unwrap().lines().len(), 12);
    }

    #[test]
    fn star_op_axioms() {
        for t in [3u32, 7, 9, 13, 15] {
            let sts = steiner_triple_system(t).unwrap();
            for a in 1..=t {
                assert_eq!(sts.star_op(a, a), a);
                for b in 1..=t {
                    let ab = sts.star_op(a, b);
                    assert_eq!(ab, sts.star_op(b, a));
                    assert_eq!(sts.star_op(a, ab), b);
                }
            }
        }
    }

    #[test]
    fn star_op_permutes_lines_through_a() {
        for t in [7u32, 9, 13, 15] {
            let sts = steiner_triple_system(t).unwrap();
            for a in 1..=t {
                for line in sts.lines() {
                    if !line.contains(&a) {
                        continue;
                    }
                    let mut image: Vec<u32> = line.iter().map(|&b| sts.star_op(a, b)).collect();
                    image.sort_unstable();
                    assert_eq!(&image[..], &line[..]);
                }
            }
        }
    }

    #[test]
    fn sts3_star_op() {
        let sts = steiner_triple_system(3).unwrap();
        assert_eq!(sts.star_op(1, 1), 1);
        assert_eq!(sts.star_op(1, 2), 3);
    }

    #[test]
    fn one_factorization_invariants() {
        assert_eq!(one_factorization(5).unwrap_err(), DesignError::OddOrder(5));
        for r in [2u32, 4, 6, 8, 10, 12] {
            let f = one_factorization(r).unwrap();
            for c in 1..r {
                let m = f.matching(c);
                assert_eq!(m.len() as u32, r / 2, "colour {c} of K_{r}");
                let mut seen = vec![false; r as usize];
                for &(a, b) in m {
                    assert!(!seen[a as usize] && !seen[b as usize], "not a matching");
                    seen[a as usize] = true;
                    seen[b as usize] = true;
                    assert_eq!(f.color_of(a, b), c);
                }
                assert!(seen.iter().all(|&s| s), "not perfect");
                // g and g_inv are inverse
                for i in 1..=m.len() {
                    assert_eq!(f.g_inv(c, f.g(c, i)), i);
                }
            }
            // proper: every edge got exactly one colour
            for a in 0..r {
                for b in a + 1..r {
                    assert!(f.color_of(a, b) >= 1 && f.color_of(a, b) < r);
                }
            }
        }
    }
}
