//! Recursive bracketed normal form: encoder, parser and decoder.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::oracle::{F2Word, LampConfigF2, Letter};
use crate::tapevm::Sym;

/// Which line a token list describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ctx {
    /// The `a`-line through the identity.
    Top,
    /// A vertical line inside `( … )`.
    Vert,
    /// A horizontal line inside `[ … ]`.
    Horiz,
}

impl Ctx {
    fn axis_is_a(self) -> bool {
        self != Ctx::Vert
    }

    /// Context of the groups hanging off this line.
    fn cross(self) -> Ctx {
        if self == Ctx::Vert {
            Ctx::Horiz
        } else {
            Ctx::Vert
        }
    }
}

#[derive(Clone, Copy)]
struct Pt<'a> {
    rest: &'a [Letter],
    lit: bool,
    pos: bool,
}

fn digit(lit: bool, zero: Sym, one: Sym) -> Sym {
    if lit {
        one
    } else {
        zero
    }
}

/// Token of one node; `cross` says whether the node opens a group.
fn node_token(ctx: Ctx, is_e: bool, lit: bool, pos: bool, cross: bool) -> Sym {
    use Sym::*;
    match (ctx, cross) {
        (Ctx::Top, true) if is_e && pos => digit(lit, D0B, D1B),
        (Ctx::Top, true) if is_e => digit(lit, D0A, D1A),
        (Ctx::Top | Ctx::Horiz, true) if pos => digit(lit, D0C, D1C),
        (Ctx::Top | Ctx::Horiz, true) => digit(lit, D0, D1),
        (Ctx::Vert, true) if pos => digit(lit, E0C, E1C),
        (Ctx::Vert, true) => digit(lit, E0, E1),
        (Ctx::Top, false) if is_e && pos => digit(lit, B0, B1),
        (Ctx::Top, false) if is_e => digit(lit, A0, A1),
        (_, false) if pos => digit(lit, C0, C1),
        (_, false) => digit(lit, Zero, One),
    }
}

/// Encodes one line. `pivot` is the already-chosen token of the node the
/// line passes through (`None` on the top line). `levels` bounds how many
/// further levels of groups are expanded.
fn line(pts: &[Pt], ctx: Ctx, pivot: Option<Sym>, levels: usize, out: &mut Vec<Sym>) {
    let (pos_letter, neg_letter) = if ctx.axis_is_a() { (Letter::A, Letter::AInv) } else { (Letter::B, Letter::BInv) };
    let mut buckets: BTreeMap<i64, Vec<Pt>> = BTreeMap::new();
    buckets.insert(0, Vec::new());
    for p in pts {
        let run = p.rest.iter().take_while(|&&l| l == p.rest[0]).count();
        let (i, rest) = match p.rest.first() {
            Some(&l) if l == pos_letter => (run as i64, &p.rest[run..]),
            Some(&l) if l == neg_letter => (-(run as i64), &p.rest[run..]),
            _ => (0, p.rest),
        };
        buckets.entry(i).or_default().push(Pt { rest, ..*p });
    }
    let (lo, hi) = (*buckets.keys().next().unwrap(), *buckets.keys().next_back().unwrap());
    let start = out.len();
    for i in lo..=hi {
        let here = buckets.get(&i).map(Vec::as_slice).unwrap_or(&[]);
        let lit = here.iter().any(|p| p.rest.is_empty() && p.lit);
        let pos = here.iter().any(|p| p.rest.is_empty() && p.pos);
        let children: Vec<Pt> = here.iter().filter(|p| !p.rest.is_empty()).copied().collect();
        if i == 0 {
            if let Some(pv) = pivot {
                out.push(pv);
                continue;
            }
        }
        let tok = node_token(ctx, i == 0, lit, pos, !children.is_empty());
        if children.is_empty() || levels == 0 {
            out.push(tok);
        } else {
            let cross = ctx.cross();
            let (open, close) = if cross == Ctx::Vert { (Sym::LParen, Sym::RParen) } else { (Sym::LBrack, Sym::RBrack) };
            out.push(open);
            line(&children, cross, Some(tok), levels - 1, out);
            out.push(close);
        }
    }
    // Cut the runs of 0s at both ends.
    let body = &out[start..];
    let lead = body.iter().take_while(|&&s| s == Sym::Zero).count();
    let trail = body.iter().rev().take_while(|&&s| s == Sym::Zero).count();
    let keep = body.len() - lead - trail;
    out.drain(start..start + lead);
    out.truncate(start + keep);
}

fn encode_levels(g: &LampConfigF2, levels: usize) -> Vec<Sym> {
    let mut pts: Vec<Pt> = g.lit.iter().map(|w| Pt { rest: w.letters(), lit: true, pos: *w == g.pos }).collect();
    if !g.lit.contains(&g.pos) {
        pts.push(Pt { rest: g.pos.letters(), lit: false, pos: true });
    }
    let mut out = Vec::new();
    line(&pts, Ctx::Top, None, levels, &mut out);
    out
}

pub fn encode(g: &LampConfigF2) -> Vec<Sym> {
    encode_levels(g, usize::MAX)
}

/// The string after the first `n ≥ 1` iterations of the recursive
/// construction (groups nested deeper than `n - 1` are left unexpanded).
pub fn encode_iterations(g: &LampConfigF2, n: usize) -> Vec<Sym> {
    encode_levels(g, n.saturating_sub(1))
}

/// A parsed normal form: tokens and bracketed groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Tok(Sym),
    Group { paren: bool, items: Vec<Item> },
}

pub fn parse(nf: &[Sym]) -> Result<Vec<Item>> {
    let mut stack: Vec<(bool, Vec<Item>)> = vec![(false, Vec::new())];
    for (idx, &s) in nf.iter().enumerate() {
        match s {
            Sym::LParen | Sym::LBrack => stack.push((s == Sym::LParen, Vec::new())),
            Sym::RParen | Sym::RBrack => {
                let want_paren = s == Sym::RParen;
                if stack.len() < 2 || stack.last().unwrap().0 != want_paren {
                    return Err(Error::NotInLanguage(format!("unmatched {s} at token {idx}")));
                }
                let (paren, items) = stack.pop().unwrap();
                stack.last_mut().unwrap().1.push(Item::Group { paren, items });
            }
            s if super::SIGMA.contains(&s) => stack.last_mut().unwrap().1.push(Item::Tok(s)),
            s => return Err(Error::NotInLanguage(format!("symbol {s} outside the alphabet"))),
        }
    }
    if stack.len() != 1 {
        return Err(Error::NotInLanguage("unclosed bracket".into()));
    }
    Ok(stack.pop().unwrap().1)
}

fn is_d(s: Sym) -> bool {
    use Sym::*;
    matches!(s, D0 | D1 | D0A | D1A | D0B | D1B | D0C | D1C)
}

fn is_e(s: Sym) -> bool {
    matches!(s, Sym::E0 | Sym::E1 | Sym::E0C | Sym::E1C)
}

fn is_anchor(s: Sym) -> bool {
    use Sym::*;
    matches!(s, A0 | A1 | B0 | B1 | D0A | D1A | D0B | D1B)
}

fn is_marker(s: Sym) -> bool {
    use Sym::*;
    matches!(s, C0 | C1 | D0C | D1C | E0C | E1C | B0 | B1 | D0B | D1B)
}

fn is_lit(s: Sym) -> bool {
    use Sym::*;
    matches!(s, One | C1 | D1 | D1A | D1B | D1C | E1 | E1C | A1 | B1)
}

/// Index of the group's pivot token.
fn pivot(items: &[Item], paren: bool) -> Result<usize> {
    let class: fn(Sym) -> bool = if paren { is_d } else { is_e };
    let mut found = None;
    for (i, it) in items.iter().enumerate() {
        if let Item::Tok(s) = it {
            if class(*s) {
                if found.is_some() {
                    return Err(Error::NotInLanguage("group with two pivots".into()));
                }
                found = Some(i);
            }
        }
    }
    found.ok_or_else(|| Error::NotInLanguage("group without pivot".into()))
}

struct Decoder {
    g: LampConfigF2,
    markers: usize,
}

impl Decoder {
    fn visit(&mut self, items: &[Item], base: &F2Word, ctx: Ctx, centre: usize, skip: Option<usize>) -> Result<()> {
        let (up, down) = if ctx.axis_is_a() { (Letter::A, Letter::AInv) } else { (Letter::B, Letter::BInv) };
        let mut nodes = vec![F2Word::identity(); items.len()];
        let mut cur = base.clone();
        for node in nodes.iter_mut().skip(centre) {
            *node = cur.clone();
            cur.push(up);
        }
        let mut cur = base.clone();
        for node in nodes[..centre].iter_mut().rev() {
            cur.push(down);
            *node = cur.clone();
        }
        for ((m, it), node) in items.iter().enumerate().zip(nodes) {
            if Some(m) == skip {
                continue;
            }
            let (tok, group) = match it {
                Item::Tok(s) => (*s, None),
                Item::Group { paren, items } => {
                    if *paren != (ctx.cross() == Ctx::Vert) {
                        return Err(Error::NotInLanguage("bracket type does not alternate".into()));
                    }
                    let p = pivot(items, *paren)?;
                    let Item::Tok(s) = items[p] else { unreachable!() };
                    (s, Some((items, p)))
                }
            };
            match tok {
                s if is_d(s) && group.is_none() => return Err(Error::NotInLanguage(format!("{s} outside a ( group"))),
                s if is_e(s) && group.is_none() => return Err(Error::NotInLanguage(format!("{s} outside a [ group"))),
                s if is_anchor(s) && ctx != Ctx::Top => {
                    return Err(Error::NotInLanguage(format!("identity token {s} off the top line")))
                }
                _ => {}
            }
            if is_lit(tok) {
                self.g.lit.insert(node.clone());
            }
            if is_marker(tok) {
                self.markers += 1;
                self.g.pos = node.clone();
            }
            if let Some((items, p)) = group {
                self.visit(items, &node, ctx.cross(), p, Some(p))?;
            }
        }
        Ok(())
    }
}

/// Decodes after structural validation; canonicity is checked by
/// [`super::validate`].
pub fn decode_structure(nf: &[Sym]) -> Result<LampConfigF2> {
    let items = parse(nf)?;
    let anchors: Vec<usize> = items
        .iter()
        .enumerate()
        .filter(|(_, it)| match it {
            Item::Tok(s) => is_anchor(*s),
            Item::Group { paren: true, items } => {
                pivot(items, true).map(|p| matches!(items[p], Item::Tok(s) if is_anchor(s))).unwrap_or(false)
            }
            _ => false,
        })
        .map(|(i, _)| i)
        .collect();
    if anchors.len() != 1 {
        return Err(Error::NotInLanguage(format!("expected one identity token on the top line, found {}", anchors.len())));
    }
    let mut d = Decoder { g: LampConfigF2::identity(), markers: 0 };
    d.visit(&items, &F2Word::identity(), Ctx::Top, anchors[0], None)?;
    if d.markers != 1 {
        return Err(Error::NotInLanguage(format!("expected one lamplighter token, found {}", d.markers)));
    }
    Ok(d.g)
}
