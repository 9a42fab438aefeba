//! The square spiral `t: N → Z²`, its nine-region partition and index jumps.
//!
//! The spiral starts at `t(1) = (0,0)`, steps right to `(1,0)` and winds
//! counter-clockwise. Ring `j ≥ 1` holds the `8j` indices
//! `(2j-1)²+1 ..= (2j+1)²` and is the set of points with `max(|x|,|y|) = j`.

use crate::gen::Gen;
use crate::oracle::Z2Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    O,
    L1,
    L2,
    L3,
    L4,
    D1,
    D2,
    D3,
    D4,
}

pub fn classify((x, y): Z2Point) -> Region {
    use Region::*;
    if (x, y) == (0, 0) {
        O
    } else if x > 0 && y == -(x - 1) {
        L1
    } else if y == x && x > 0 {
        L2
    } else if x < 0 && y == -x {
        L3
    } else if x == y && y < 0 {
        L4
    } else if x > 1 && -(x - 1) < y && y < x {
        D1
    } else if y > 0 && -y < x && x < y {
        D2
    } else if x < 0 && x < y && y < -x {
        D3
    } else {
        debug_assert!(y < 0 && y < x && x < -y + 1);
        D4
    }
}

/// Ring of index `k` (0 for the origin).
fn ring(k: u64) -> u64 {
    if k <= 1 {
        return 0;
    }
    // smallest j with (2j+1)² ≥ k
    let mut j = (((k as f64).sqrt() - 1.0) / 2.0).ceil().max(0.0) as u64;
    while (2 * j + 1) * (2 * j + 1) < k {
        j += 1;
    }
    while j > 0 && (2 * j - 1) * (2 * j - 1) >= k {
        j -= 1;
    }
    j
}

/// `t(k)` in O(1).
pub fn spiral_point(k: u64) -> Z2Point {
    assert!(k >= 1, "spiral indices start at 1");
    let j = ring(k);
    if j == 0 {
        return (0, 0);
    }
    let o = (k - (2 * j - 1) * (2 * j - 1) - 1) as i64;
    let j = j as i64;
    if o < 2 * j {
        (j, -(j - 1) + o)
    } else if o < 4 * j {
        (j - (o - 2 * j + 1), j)
    } else if o < 6 * j {
        (-j, j - (o - 4 * j + 1))
    } else {
        (-j + (o - 6 * j + 1), -j)
    }
}

/// The unique `k` with `t(k) = p`.
pub fn spiral_index((x, y): Z2Point) -> u64 {
    let j = x.abs().max(y.abs());
    if j == 0 {
        return 1;
    }
    let o = if x == j && y > -j {
        y + j - 1
    } else if y == j {
        3 * j - 1 - x
    } else if x == -j {
        5 * j - 1 - y
    } else {
        7 * j - 1 + x
    };
    ((2 * j - 1) * (2 * j - 1) + 1 + o) as u64
}

/// Number of completed turns `i` before index `k`: `k_i ≤ k < k_{i+1}` with
/// `k_j = spiral_index((j+1, -j))`, and 0 below `k_0`.
pub fn turn_count(k: u64) -> u64 {
    ring(k).saturating_sub(1)
}

/// Walks the spiral cell by cell; the reference the closed forms are tested
/// against.
pub fn spiral_walk(n: usize) -> Vec<Z2Point> {
    let mut pts = Vec::with_capacity(n);
    let (mut x, mut y) = (0i64, 0i64);
    let dirs = [(1, 0), (0, 1), (-1, 0), (0, -1)];
    let (mut d, mut run, mut left_in_run, mut runs_at_len) = (0usize, 1i64, 1i64, 0);
    while pts.len() < n {
        pts.push((x, y));
        x += dirs[d].0;
        y += dirs[d].1;
        left_in_run -= 1;
        if left_in_run == 0 {
            d = (d + 1) % 4;
            runs_at_len += 1;
            if runs_at_len == 2 {
                runs_at_len = 0;
                run += 1;
            }
            left_in_run = run;
        }
    }
    pts
}

/// Unit translations of the lamplighter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    PlusA,
    MinusA,
    PlusB,
    MinusB,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::PlusA, Dir::MinusA, Dir::PlusB, Dir::MinusB];

    pub fn of(g: Gen) -> Option<Dir> {
        match g {
            Gen::A => Some(Dir::PlusA),
            Gen::AInv => Some(Dir::MinusA),
            Gen::B => Some(Dir::PlusB),
            Gen::BInv => Some(Dir::MinusB),
            _ => None,
        }
    }

    pub fn offset(self) -> Z2Point {
        match self {
            Dir::PlusA => (1, 0),
            Dir::MinusA => (-1, 0),
            Dir::PlusB => (0, 1),
            Dir::MinusB => (0, -1),
        }
    }
}

/// Index change for one unit step: `±(beta)` or, when `turns` is set,
/// `±(8i + beta)` with `i` the turn count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Jump {
    pub forward: bool,
    pub turns: bool,
    pub beta: u64,
}

impl Jump {
    const fn near(forward: bool, beta: u64) -> Self {
        Jump { forward, turns: false, beta }
    }

    const fn far(forward: bool, beta: u64) -> Self {
        Jump { forward, turns: true, beta }
    }

    pub fn distance(self, i: u64) -> u64 {
        if self.turns {
            8 * i + self.beta
        } else {
            self.beta
        }
    }
}

/// Index jump for moving from a point of `region` by `dir`.
pub fn jump(region: Region, dir: Dir) -> Jump {
    use Region::*;
    match (dir, region) {
        (Dir::PlusA, O | D4 | L4) => Jump::near(true, 1),
        (Dir::PlusA, L1 | D1 | L2) => Jump::far(true, 9),
        (Dir::PlusA, D2 | L3) => Jump::near(false, 1),
        (Dir::PlusA, D3) => Jump::far(false, 5),

        (Dir::MinusA, O) => Jump::near(true, 5),
        (Dir::MinusA, D1) => Jump::far(false, 1),
        (Dir::MinusA, D2 | L2) => Jump::near(true, 1),
        (Dir::MinusA, D3 | L3 | L4) => Jump::far(true, 13),
        (Dir::MinusA, D4 | L1) => Jump::near(false, 1),

        (Dir::PlusB, O) => Jump::near(true, 3),
        (Dir::PlusB, D1 | L1) => Jump::near(true, 1),
        (Dir::PlusB, D2 | L2 | L3) => Jump::far(true, 11),
        (Dir::PlusB, D3 | L4) => Jump::near(false, 1),
        (Dir::PlusB, D4) => Jump::far(false, 7),

        (Dir::MinusB, O) => Jump::near(true, 7),
        (Dir::MinusB, D1 | L2) => Jump::near(false, 1),
        (Dir::MinusB, D2) => Jump::far(false, 3),
        (Dir::MinusB, D3 | L3) => Jump::near(true, 1),
        (Dir::MinusB, D4 | L4) => Jump::far(true, 15),
        (Dir::MinusB, L1) => Jump::far(true, 7),
    }
}

/// `k'` with `t(k') = t(k) + dir`, from the region/turn formulas.
pub fn neighbor_index(k: u64, dir: Dir) -> u64 {
    let j = jump(classify(spiral_point(k)), dir);
    let dist = j.distance(turn_count(k));
    if j.forward {
        k + dist
    } else {
        k - dist
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Region::*;

    #[test]
    fn examples() {
        assert_eq!(classify((0, 0)), O);
        assert_eq!(classify((2, -1)), L1);
        assert_eq!(classify((1, -1)), D4);
        let expect = [(0, 0), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1), (2, -1)];
        for (k, p) in expect.iter().enumerate() {
            assert_eq!(spiral_point(k as u64 + 1), *p);
        }
        assert_eq!(spiral_point(27), (3, -1));
        assert_eq!(spiral_index((2, -1)), 10);
        assert_eq!(spiral_index((-1, 0)), 6);
        assert_eq!([1, 10, 25, 26].map(turn_count), [0, 1, 1, 2]);
        assert_eq!(neighbor_index(7, Dir::PlusA), 8);
        assert_eq!(neighbor_index(6, Dir::PlusA), 1);
        assert_eq!(neighbor_index(10, Dir::PlusA), 27);
    }

    #[test]
    fn first_regions() {
        let regions: Vec<Region> = (1..=10).map(|k| classify(spiral_point(k))).collect();
        assert_eq!(regions, vec![O, L1, L2, D2, L3, D3, L4, D4, D4, L1]);
    }

    #[test]
    fn regions_partition() {
        for x in -200i64..=200 {
            for y in -200i64..=200 {
                let c = [
                    (x, y) == (0, 0),
                    x > 0 && y == -(x - 1),
                    y == x && x > 0,
                    x < 0 && y == -x,
                    x == y && y < 0,
                    x > 1 && -(x - 1) < y && y < x,
                    y > 0 && -y < x && x < y,
                    x < 0 && x < y && y < -x,
                    y < 0 && y < x && x < -y + 1,
                ];
                assert_eq!(c.iter().filter(|&&b| b).count(), 1, "({x},{y})");
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn index_and_point_are_inverse(x in -1_000_000i64..1_000_000, y in -1_000_000i64..1_000_000) {
            proptest::prop_assert_eq!(spiral_point(spiral_index((x, y))), (x, y));
        }

        #[test]
        fn jumps_far_out(k in 1u64..4_000_000_000_000) {
            let (x, y) = spiral_point(k);
            for d in Dir::ALL {
                let (dx, dy) = d.offset();
                proptest::prop_assert_eq!(neighbor_index(k, d), spiral_index((x + dx, y + dy)));
            }
        }
    }

    #[test]
    fn closed_forms_match_walk() {
        let walk = spiral_walk(1_000_000);
        for (idx, &p) in walk.iter().enumerate() {
            let k = idx as u64 + 1;
            assert_eq!(spiral_point(k), p, "k={k}");
            assert_eq!(spiral_index(p), k);
        }
    }

    #[test]
    fn turn_markers() {
        for j in 0..200i64 {
            let kj = spiral_index((j + 1, -j));
            assert_eq!(turn_count(kj), j as u64);
            if kj > 1 {
                assert_eq!(turn_count(kj - 1), (j as u64).saturating_sub(1));
            }
        }
    }

    #[test]
    fn jumps_are_sound() {
        for k in 1..=100_000u64 {
            let (x, y) = spiral_point(k);
            for d in Dir::ALL {
                let (dx, dy) = d.offset();
                assert_eq!(neighbor_index(k, d), spiral_index((x + dx, y + dy)), "k={k} {d:?}");
            }
        }
    }

    #[test]
    fn ring_region_sequence() {
        // Within ring j: ℓ1, D1^(2j-2), ℓ2, D2^(2j-1), ℓ3, D3^(2j-1), ℓ4, D4^(2j).
        let mut k = 2u64;
        let mut j = 1u64;
        while k <= 100_000 {
            let mut expect = vec![L1];
            expect.extend(std::iter::repeat_n(D1, 2 * j as usize - 2));
            expect.push(L2);
            expect.extend(std::iter::repeat_n(D2, 2 * j as usize - 1));
            expect.push(L3);
            expect.extend(std::iter::repeat_n(D3, 2 * j as usize - 1));
            expect.push(L4);
            expect.extend(std::iter::repeat_n(D4, 2 * j as usize));
            for r in expect {
                assert_eq!(classify(spiral_point(k)), r, "k={k}");
                k += 1;
            }
            j += 1;
        }
    }
}
