use std::fmt;

use super::dyadic::Dyadic;
use crate::error::{Error, Result};

/// Piecewise-linear homeomorphism of `[0,1]` with dyadic breakpoints and
/// power-of-two slopes, stored canonically (no collinear interior breakpoints).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicPL {
    bps: Vec<(Dyadic, Dyadic)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlGen {
    X0,
    X1,
}

fn d(num: i64, exp: u32) -> Dyadic {
    Dyadic::new(num, exp)
}

impl DyadicPL {
    pub fn identity() -> Self {
        DyadicPL { bps: vec![(Dyadic::zero(), Dyadic::zero()), (Dyadic::one(), Dyadic::one())] }
    }

    /// Builds a map from breakpoints, checking endpoints, monotonicity and
    /// slopes. Collinear breakpoints are dropped.
    pub fn from_breakpoints(bps: Vec<(Dyadic, Dyadic)>) -> Option<Self> {
        let ok_ends = bps.len() >= 2
            && bps[0] == (Dyadic::zero(), Dyadic::zero())
            && *bps.last()? == (Dyadic::one(), Dyadic::one());
        if !ok_ends {
            return None;
        }
        let mut out: Vec<(Dyadic, Dyadic)> = vec![bps[0].clone()];
        let mut last_slope: Option<i64> = None;
        for w in bps.windows(2) {
            let (dx, dy) = (&w[1].0 - &w[0].0, &w[1].1 - &w[0].1);
            if !dx.is_positive() {
                return None;
            }
            let slope = dy.log2_ratio(&dx)?;
            if last_slope == Some(slope) {
                out.pop();
            }
            out.push(w[1].clone());
            last_slope = Some(slope);
        }
        Some(DyadicPL { bps: out })
    }

    pub fn breakpoints(&self) -> &[(Dyadic, Dyadic)] {
        &self.bps
    }

    /// The standard generators. `x0` has breakpoints (0,0),(1/4,1/2),(1/2,3/4),(1,1);
    /// `x1` is the identity on `[0,1/2]` and a half-scale copy of `x0` on `[1/2,1]`.
    /// With [`pl_compose`] acting on the right these satisfy
    /// `x_j x_i = x_i x_{j+1}` for `x_{n+1} = x0^{-n} x1 x0^n`.
    pub fn generator(which: PlGen, sign: i8) -> Self {
        let bps = match which {
            PlGen::X0 => vec![(d(0, 0), d(0, 0)), (d(1, 2), d(1, 1)), (d(1, 1), d(3, 2)), (d(1, 0), d(1, 0))],
            PlGen::X1 => vec![
                (d(0, 0), d(0, 0)),
                (d(1, 1), d(1, 1)),
                (d(5, 3), d(3, 2)),
                (d(3, 2), d(7, 3)),
                (d(1, 0), d(1, 0)),
            ],
        };
        let f = DyadicPL::from_breakpoints(bps).expect("generator breakpoints are valid");
        if sign < 0 {
            f.inverse()
        } else {
            f
        }
    }

    pub fn inverse(&self) -> Self {
        DyadicPL { bps: self.bps.iter().map(|(x, y)| (y.clone(), x.clone())).collect() }
    }

    fn segment_by(&self, v: &Dyadic, key: impl Fn(&(Dyadic, Dyadic)) -> &Dyadic) -> usize {
        // Last breakpoint with key <= v, capped below the final breakpoint.
        let idx = self.bps.partition_point(|bp| key(bp) <= v);
        idx.clamp(1, self.bps.len() - 1) - 1
    }

    /// Evaluates the map at `x ∈ [0,1]`.
    pub fn eval(&self, x: &Dyadic) -> Dyadic {
        let i = self.segment_by(x, |bp| &bp.0);
        let (x0, y0) = &self.bps[i];
        let (x1, y1) = &self.bps[i + 1];
        let slope = (y1 - y0).log2_ratio(&(x1 - x0)).expect("power-of-two slope");
        y0 + &(x - x0).mul_pow2(slope)
    }

    pub fn is_identity(&self) -> bool {
        self.bps.len() == 2
    }
}

impl fmt::Display for DyadicPL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.bps.iter().map(|(x, y)| format!("({x},{y})")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `x ↦ g(f(x))`: `f` acts first, matching right multiplication.
pub fn pl_compose(f: &DyadicPL, g: &DyadicPL) -> DyadicPL {
    let finv = f.inverse();
    let mut xs: Vec<Dyadic> = f.bps.iter().map(|(x, _)| x.clone()).collect();
    xs.extend(g.bps.iter().map(|(x, _)| finv.eval(x)));
    xs.sort();
    xs.dedup();
    let bps = xs.into_iter().map(|x| {
        let y = g.eval(&f.eval(&x));
        (x, y)
    });
    DyadicPL::from_breakpoints(bps.collect()).expect("composition of PL maps is a PL map")
}

/// Right action of a generator word `x0^{e}` / `x1^{e}` sequence.
pub fn pl_word(letters: &[(PlGen, i64)]) -> DyadicPL {
    let gens = [
        (DyadicPL::generator(PlGen::X0, 1), DyadicPL::generator(PlGen::X0, -1)),
        (DyadicPL::generator(PlGen::X1, 1), DyadicPL::generator(PlGen::X1, -1)),
    ];
    let mut acc = DyadicPL::identity();
    for &(g, e) in letters {
        let pair = &gens[g as usize];
        let step = if e < 0 { &pair.1 } else { &pair.0 };
        for _ in 0..e.unsigned_abs() {
            acc = pl_compose(&acc, step);
        }
    }
    acc
}

/// Parses an `a^{r0}b^{s0}#…#a^{rM}b^{sM}` string and evaluates the word
/// `x0^{r0} x1^{r1} … xM^{rM} xM^{-sM} … x0^{-s0}` with
/// `x_n = x0^{-(n-1)} x1 x0^{n-1}`.
pub fn pl_eval_normalform(u: &str) -> Result<DyadicPL> {
    if u.is_empty() {
        return Ok(DyadicPL::identity());
    }
    let mut blocks = Vec::new();
    for (i, block) in u.split('#').enumerate() {
        let r = block.chars().take_while(|&c| c == 'a').count();
        let s = block[r..].chars().take_while(|&c| c == 'b').count();
        if r + s != block.len() {
            return Err(Error::NotInLanguage(format!("block {i} is not of the form a*b*")));
        }
        blocks.push((r as i64, s as i64));
    }
    let (rm, sm) = *blocks.last().unwrap();
    if (rm > 0) == (sm > 0) {
        return Err(Error::NotInLanguage("exactly one of r_M, s_M must be nonzero".into()));
    }
    for i in 0..blocks.len() - 1 {
        let (r, s) = blocks[i];
        let (rn, sn) = blocks[i + 1];
        if r * s > 0 && rn + sn == 0 {
            return Err(Error::NotInLanguage(format!("r_{i} s_{i} > 0 but block {} is empty", i + 1)));
        }
    }
    // Sequence of x0-powers and x1-powers; adjacent x0 powers are merged.
    let mut letters: Vec<(PlGen, i64)> = Vec::new();
    let mut push = |g: PlGen, e: i64| {
        if e == 0 {
            return;
        }
        if let Some(last) = letters.last_mut() {
            if last.0 == g && g == PlGen::X0 {
                last.1 += e;
                if last.1 == 0 {
                    letters.pop();
                }
                return;
            }
        }
        letters.push((g, e));
    };
    let conj = |i: usize, e: i64, push: &mut dyn FnMut(PlGen, i64)| {
        if i == 0 {
            push(PlGen::X0, e);
        } else {
            push(PlGen::X0, -(i as i64 - 1));
            push(PlGen::X1, e);
            push(PlGen::X0, i as i64 - 1);
        }
    };
    for (i, &(r, _)) in blocks.iter().enumerate() {
        conj(i, r, &mut push);
    }
    for (i, &(_, s)) in blocks.iter().enumerate().rev() {
        conj(i, -s, &mut push);
    }
    Ok(pl_word(&letters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn x(g: PlGen, e: i64) -> (PlGen, i64) {
        (g, e)
    }

    fn commutator(p: &[(PlGen, i64)], q: &[(PlGen, i64)]) -> Vec<(PlGen, i64)> {
        let inv = |w: &[(PlGen, i64)]| w.iter().rev().map(|&(g, e)| (g, -e)).collect::<Vec<_>>();
        [inv(p), inv(q), p.to_vec(), q.to_vec()].concat()
    }

    #[test]
    fn generators() {
        let x0 = DyadicPL::generator(PlGen::X0, 1);
        let x1 = DyadicPL::generator(PlGen::X1, 1);
        assert_eq!(x0.eval(&d(1, 2)), d(1, 1));
        assert_eq!(DyadicPL::generator(PlGen::X0, -1).eval(&d(1, 1)), d(1, 2));
        assert_eq!(x1.eval(&d(1, 2)), d(1, 2));
        assert_eq!(x1.eval(&d(5, 3)), d(3, 2));
        assert!(pl_compose(&x0, &x0.inverse()).is_identity());
        assert!(pl_compose(&x1.inverse(), &x1).is_identity());
        assert_eq!(pl_compose(&DyadicPL::identity(), &x0), x0);
    }

    #[test]
    fn relators() {
        use PlGen::*;
        let p = [x(X0, 1), x(X1, -1)];
        let x2 = [x(X0, -1), x(X1, 1), x(X0, 1)];
        let x3 = [x(X0, -2), x(X1, 1), x(X0, 2)];
        assert!(pl_word(&commutator(&p, &x2)).is_identity());
        assert!(pl_word(&commutator(&p, &x3)).is_identity());
        // x_j x_i = x_i x_{j+1}
        let lhs = pl_word(&[x2.as_slice(), &[x(X1, 1)]].concat());
        let rhs = pl_word(&[[x(X1, 1)].as_slice(), &x3].concat());
        assert_eq!(lhs, rhs);
        // With x0^{-1} x1 in place of x0 x1^{-1} the commutator is not trivial.
        let q = [x(X0, -1), x(X1, 1)];
        assert!(!pl_word(&commutator(&q, &x2)).is_identity());
    }

    #[test]
    fn associativity() {
        let gens: Vec<DyadicPL> = [(PlGen::X0, 1), (PlGen::X0, -1), (PlGen::X1, 1), (PlGen::X1, -1)]
            .iter()
            .map(|&(g, s)| DyadicPL::generator(g, s))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let random = |rng: &mut ChaCha8Rng| {
            (0..rng.gen_range(0..8)).fold(DyadicPL::identity(), |acc, _| pl_compose(&acc, &gens[rng.gen_range(0..4)]))
        };
        for _ in 0..200 {
            let (f, g, h) = (random(&mut rng), random(&mut rng), random(&mut rng));
            assert_eq!(pl_compose(&pl_compose(&f, &g), &h), pl_compose(&f, &pl_compose(&g, &h)));
        }
    }

    #[test]
    fn normal_form_evaluation() {
        use PlGen::*;
        assert!(pl_eval_normalform("").unwrap().is_identity());
        assert_eq!(pl_eval_normalform("a").unwrap(), DyadicPL::generator(X0, 1));
        assert_eq!(pl_eval_normalform("b").unwrap(), DyadicPL::generator(X0, -1));
        // x2^{-1} x0^{-1} = x0^{-1} x1^{-1}
        assert_eq!(pl_eval_normalform("b##b").unwrap(), pl_word(&[x(X0, -1), x(X1, -1)]));
        assert_eq!(pl_eval_normalform("a#b").unwrap(), pl_word(&[x(X0, 1), x(X1, -1)]));
        for bad in ["ba", "ab#ba", "a#", "#", "ab#", "abc"] {
            assert!(matches!(pl_eval_normalform(bad), Err(Error::NotInLanguage(_))), "{bad}");
        }
    }

    #[test]
    fn distinct_forms_distinct_maps() {
        let forms = ["", "a", "b", "ab#a", "#a", "#b", "a#b", "b#a", "#ab#a", "b##b", "##a", "aa#bb", "a#ab#b"];
        let maps: Vec<DyadicPL> = forms.iter().map(|u| pl_eval_normalform(u).unwrap()).collect();
        for i in 0..maps.len() {
            for j in 0..i {
                assert_ne!(maps[i], maps[j], "{} vs {}", forms[i], forms[j]);
            }
        }
    }
}
