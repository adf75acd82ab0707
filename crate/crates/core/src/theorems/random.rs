use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dp::{DualForm, Exponent, VariableSet};
use crate::error::{Error, Result};
use crate::io::{validate, NormalForm, ValidateOptions};
use crate::linalg::Field;

/// Allowed `Y`-degrees of one block `X^[a] G_i`, `G_i` of degree `j - a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    pub a: u32,
    pub min_y: u32,
    pub max_y: u32,
    /// `Y`-degrees that always get a term.
    pub forced: Vec<u32>,
}

/// Structural parameters of a random `F = G_0 + Σ X^[a_i] G_i + W Z^[j-1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeSpec {
    pub j: u32,
    pub p: u32,
    pub q: u32,
    /// `G_0` has `Y`-degrees `p - m..=p`, both ends present.
    pub m: u32,
    pub blocks: Vec<BlockSpec>,
    /// Nonzero integer coefficients to draw from.
    pub coefficients: Vec<i64>,
    /// Chance that an optional term is present.
    pub density: f64,
}

const POOL: [i64; 5] = [1, 1, -1, 2, 3];

impl ShapeSpec {
    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InfeasibleShape(m));
        if self.p + self.q != self.j {
            return bad(format!("p + q = {} + {} is not j = {}", self.p, self.q, self.j));
        }
        if self.j < 3 {
            return bad("j must be at least 3".into());
        }
        if self.p < 2 {
            return bad("p = 1 would put Y Z^[j-1] in G_0".into());
        }
        if self.m + 2 > self.p {
            return bad(format!(
                "m = {} puts Y Z^[j-1] or Z^[j] in G_0; m is at most p - 2",
                self.m
            ));
        }
        if self.coefficients.is_empty() || self.coefficients.contains(&0) {
            return bad("the coefficient pool must be nonempty and nonzero".into());
        }
        if !(0.0..=1.0).contains(&self.density) {
            return bad("density must lie in [0, 1]".into());
        }
        let mut prev = 0;
        for b in &self.blocks {
            if b.a <= prev {
                return bad("block exponents must increase strictly from 1".into());
            }
            prev = b.a;
            if b.a >= self.j {
                return bad(format!("block exponent {} must be below j = {}", b.a, self.j));
            }
            if b.min_y > b.max_y || b.max_y > self.j - b.a {
                return bad(format!(
                    "block X^[{}] has Y-range {}..={} outside 0..={}",
                    b.a,
                    b.min_y,
                    b.max_y,
                    self.j - b.a
                ));
            }
            if b.forced.iter().any(|&r| r < b.min_y || r > b.max_y) {
                return bad(format!("block X^[{}] forces a Y-degree outside its range", b.a));
            }
            if b.a == 1 && b.forced.contains(&0) {
                return bad("X Z^[j-1] is not allowed in G".into());
            }
        }
        Ok(())
    }
}

/// Parameter families, each aimed at the hypotheses of one statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Thm1,
    Th0,
    Tm2,
    Converse,
    Lem0,
    Restrict,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::Thm1,
        Preset::Th0,
        Preset::Tm2,
        Preset::Converse,
        Preset::Lem0,
        Preset::Restrict,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Thm1 => "thm1",
            Preset::Th0 => "th0",
            Preset::Tm2 => "tm2",
            Preset::Converse => "converse",
            Preset::Lem0 => "lem0",
            Preset::Restrict => "restrict",
        }
    }

    /// Draws concrete parameters; socle degrees stay at most 11.
    pub fn draw(self, rng: &mut ChaCha8Rng) -> ShapeSpec {
        let mut spec = match self {
            Preset::Thm1 => {
                let j = rng.gen_range(7..=11);
                let p = rng.gen_range(2..=(j - 1) / 2);
                let e = rng.gen_range(p..=(j - 1) / 2);
                let top = if rng.gen_bool(0.5) { p } else { rng.gen_range(0..=e) };
                base(j, p, rng, vec![block(j - e, 0, top, vec![0, top])])
            }
            Preset::Th0 => {
                let j = rng.gen_range(6..=11);
                let p = rng.gen_range(2..=j - 3);
                if rng.gen_bool(0.6) {
                    // a_1 > p and every block below p: the necessary condition fails.
                    let a1 = rng.gen_range(p + 1..=j - 1);
                    let mut blocks = vec![block(a1, 0, (p - 1).min(j - a1), vec![])];
                    if a1 + 1 < j && rng.gen_bool(0.5) {
                        let a2 = rng.gen_range(a1 + 1..j);
                        blocks.push(block(a2, 0, (p - 1).min(j - a2), vec![]));
                    }
                    blocks.last_mut().expect("one block").forced.push(0);
                    base(j, p, rng, blocks)
                } else {
                    let a1 = rng.gen_range(2..=j - 1);
                    base(j, p, rng, vec![block(a1, 0, j - a1, vec![0])])
                }
            }
            Preset::Tm2 => {
                let j = rng.gen_range(7..=11);
                let p = rng.gen_range(2..=(j - 2).min(5));
                // a_n > j / 2 and j - a_n < a_1 < a_n.
                let an = rng.gen_range(j / 2 + 1..=j - 1);
                let mut blocks = Vec::new();
                if j - an + 1 < an && rng.gen_bool(0.7) {
                    let a1 = rng.gen_range(j - an + 1..an);
                    blocks.push(block(a1, 0, (p - 1).min(j - a1), vec![]));
                }
                let e = j - an;
                let top = if e >= p && rng.gen_bool(0.5) {
                    p
                } else {
                    rng.gen_range(0..=e)
                };
                blocks.push(block(an, 0, top, vec![0, top]));
                base(j, p, rng, blocks)
            }
            Preset::Converse => {
                let j = rng.gen_range(7..=11);
                let p = rng.gen_range(2..=(j - 1) / 2);
                // deg G_n = e >= p and e < a_1 <= a_n = j - e.
                let e = rng.gen_range(p..=(j - 1) / 2);
                let an = j - e;
                let mut blocks = Vec::new();
                if e + 1 < an && rng.gen_bool(0.7) {
                    let a1 = rng.gen_range(e + 1..an);
                    let ei = j - a1;
                    if rng.gen_bool(0.5) {
                        // Condition (2): deg_Z G_1 < deg_Z G_n = e.
                        let lo = ei - e + 1;
                        let hi = (p - 1).min(ei);
                        if lo <= hi {
                            blocks.push(block(a1, lo, hi, vec![]));
                        }
                    } else {
                        blocks.push(block(a1, 0, (p - 1).min(ei), vec![]));
                    }
                }
                let second = rng.gen_range(0..p);
                blocks.push(block(an, 0, p, vec![0, second, p]));
                base(j, p, rng, blocks)
            }
            Preset::Lem0 => {
                let j = rng.gen_range(6..=11);
                let p = rng.gen_range(2..=(j - 1) / 2);
                let a = rng.gen_range(2..=j - 1);
                base(j, p, rng, vec![block(a, 0, j - a, vec![0])])
            }
            Preset::Restrict => {
                let j = rng.gen_range(5..=9);
                let p = rng.gen_range(2..=j - 2);
                let a1 = rng.gen_range(2..=j - 1);
                let mut blocks = vec![block(a1, 0, j - a1, vec![])];
                if a1 + 1 < j && rng.gen_bool(0.5) {
                    let a2 = rng.gen_range(a1 + 1..j);
                    blocks.push(block(a2, 0, j - a2, vec![]));
                }
                let k = rng.gen_range(0..blocks.len());
                blocks[k].forced.push(0);
                base(j, p, rng, blocks)
            }
        };
        for b in &mut spec.blocks {
            b.forced.sort_unstable();
            b.forced.dedup();
        }
        spec
    }
}

fn block(a: u32, min_y: u32, max_y: u32, forced: Vec<u32>) -> BlockSpec {
    BlockSpec {
        a,
        min_y,
        max_y,
        forced,
    }
}

fn base(j: u32, p: u32, rng: &mut ChaCha8Rng, blocks: Vec<BlockSpec>) -> ShapeSpec {
    ShapeSpec {
        j,
        p,
        q: j - p,
        m: rng.gen_range(0..=p - 2),
        blocks,
        coefficients: POOL.to_vec(),
        density: rng.gen_range(0.3..0.8),
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where the search harness gets its shapes from.
#[derive(Clone, Debug, PartialEq)]
pub enum ShapeSource {
    Preset(Preset),
    Fixed(ShapeSpec),
}

impl ShapeSource {
    fn draw(&self, rng: &mut ChaCha8Rng) -> ShapeSpec {
        match self {
            ShapeSource::Preset(p) => p.draw(rng),
            ShapeSource::Fixed(s) => s.clone(),
        }
    }
}

/// A preset name, or `j=12,p=4,q=8,m=1,blocks=8:0-4:0.4/10:0-2` with
/// optional `density=0.5` and `coeffs=1.2.-1`. Each block is
/// `a:min-max[:forced.forced..]`.
impl FromStr for ShapeSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(p) = Preset::ALL.into_iter().find(|p| p.name() == s) {
            return Ok(ShapeSource::Preset(p));
        }
        let bad = |m: String| Error::InfeasibleShape(m);
        let num = |k: &str, v: &str| -> Result<u32> {
            v.parse()
                .map_err(|_| bad(format!("'{k}' needs a nonnegative integer, got '{v}'")))
        };
        let (mut j, mut p, mut q, mut m) = (None, None, None, 0);
        let mut blocks = Vec::new();
        let mut coefficients = POOL.to_vec();
        let mut density = 0.5;
        for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("expected a preset or key=value, got '{part}'")))?;
            match k.trim() {
                "j" => j = Some(num(k, v)?),
                "p" => p = Some(num(k, v)?),
                "q" => q = Some(num(k, v)?),
                "m" => m = num(k, v)?,
                "density" => {
                    density = v.parse().map_err(|_| bad(format!("bad density '{v}'")))?;
                }
                "coeffs" => {
                    coefficients = v
                        .split('.')
                        .map(|c| c.parse().map_err(|_| bad(format!("bad coefficient '{c}'"))))
                        .collect::<Result<_>>()?;
                }
                "blocks" => {
                    for b in v.split('/').filter(|x| !x.is_empty()) {
                        let mut it = b.split(':');
                        let a = num("a", it.next().unwrap_or(""))?;
                        let range = it.next().ok_or_else(|| bad(format!("block '{b}' needs a:min-max")))?;
                        let (lo, hi) = range
                            .split_once('-')
                            .ok_or_else(|| bad(format!("block range '{range}' needs min-max")))?;
                        let forced = match it.next() {
                            Some(f) => f.split('.').map(|r| num("forced", r)).collect::<Result<_>>()?,
                            None => Vec::new(),
                        };
                        blocks.push(block(a, num("min", lo)?, num("max", hi)?, forced));
                    }
                }
                other => return Err(bad(format!("unknown shape key '{other}'"))),
            }
        }
        let j = j.ok_or_else(|| bad("missing j".into()))?;
        let p = p.ok_or_else(|| bad("missing p".into()))?;
        let spec = ShapeSpec {
            j,
            p,
            q: q.unwrap_or(j.saturating_sub(p)),
            m,
            blocks,
            coefficients,
            density,
        };
        spec.check()?;
        Ok(ShapeSource::Fixed(spec))
    }
}

pub fn wxyz() -> VariableSet {
    VariableSet::new(&["W", "X", "Y", "Z"]).expect("valid names")
}

fn draw_form(spec: &ShapeSpec, rng: &mut ChaCha8Rng) -> DualForm {
    let field = Field::Rational;
    let mut f = DualForm::zero(4, field);
    let put = |f: &mut DualForm, e: [u32; 4], rng: &mut ChaCha8Rng| {
        let c = *spec.coefficients.choose(rng).expect("nonempty pool");
        f.add_term(Exponent::new(e.to_vec()), field.from_i64(c));
    };
    let j = spec.j;
    for t in 0..=spec.m {
        let r = spec.p - t;
        if t == 0 || t == spec.m || rng.gen_bool(spec.density) {
            put(&mut f, [0, 0, r, j - r], rng);
        }
    }
    for b in &spec.blocks {
        let e = j - b.a;
        let mut any = false;
        for r in b.min_y..=b.max_y {
            if b.a == 1 && r == 0 {
                continue;
            }
            if b.forced.contains(&r) || rng.gen_bool(spec.density) {
                put(&mut f, [0, b.a, r, e - r], rng);
                any = true;
            }
        }
        if !any {
            put(&mut f, [0, b.a, b.max_y, e - b.max_y], rng);
        }
    }
    f.add_term(Exponent::new(vec![1, 0, 0, j - 1]), field.one());
    f
}

/// A random form of the given shape in `W, X, Y, Z`; the same seed gives
/// the same form.
pub fn random_form(spec: &ShapeSpec, seed: u64) -> Result<DualForm> {
    spec.check()?;
    Ok(draw_form(spec, &mut ChaCha8Rng::seed_from_u64(seed)))
}

const ATTEMPTS: usize = 200;

/// The `index`-th form of a seeded stream. Each index owns its own ChaCha
/// stream, so results do not depend on how indices are spread over
/// workers. Draws that fail validation are redrawn from the same stream.
pub fn sample(source: &ShapeSource, seed: u64, index: u64) -> Result<NormalForm> {
    if let ShapeSource::Fixed(s) = source {
        s.check()?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let vars = wxyz();
    for _ in 0..ATTEMPTS {
        let spec = source.draw(&mut rng);
        debug_assert!(spec.check().is_ok(), "{spec:?}");
        let form = draw_form(&spec, &mut rng);
        if let Ok(nf) = validate(&form, &vars, ValidateOptions::default()) {
            return Ok(nf);
        }
    }
    Err(Error::InfeasibleShape(format!("no valid form in {ATTEMPTS} draws")))
}
