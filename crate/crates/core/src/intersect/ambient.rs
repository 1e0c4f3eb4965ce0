//! Ambient spaces with a verified diagonal, and the intersection product on
//! them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::morphism::{pushforward, Morphism};
use crate::error::{Error, Result};
use crate::exactmath::{parse_rational, IntMatrix, RatVec};
use crate::linspace::{build_lnk, lnk_star, rewrite_diagonal, star_diagonal_at, DiagonalRepresentation};
use crate::polyhedra::{cross, cycles_equal, Cell, TropicalCycle};

/// Which space an [`AmbientContext`] describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmbientShape {
    /// `L^n_k`.
    Linear { n: usize, k: usize },
    /// The star of `L^n_k` at a point.
    Star { n: usize, k: usize, point: RatVec },
    /// A product, factors in order.
    Product(Vec<AmbientShape>),
}

impl fmt::Display for AmbientShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmbientShape::Linear { n, k } => write!(f, "lnk:{n},{k}"),
            AmbientShape::Star { n, k, point } => {
                let p: Vec<String> = point.iter().map(|x| x.to_string()).collect();
                write!(f, "star:{n},{k}:{}", p.join(","))
            }
            AmbientShape::Product(parts) => {
                let p: Vec<String> = parts
                    .iter()
                    .map(|s| match s {
                        AmbientShape::Linear { n, k } => format!("{n},{k}"),
                        other => other.to_string(),
                    })
                    .collect();
                write!(f, "product:{}", p.join(";"))
            }
        }
    }
}

impl AmbientShape {
    /// Parses `lnk:n,k`, `star:n,k:x1,...,xn` or `product:A;B;...` where
    /// each factor is `n,k` or one of the other forms.
    pub fn parse(text: &str) -> Result<AmbientShape> {
        let t = text.trim();
        let bad = |why: &str| Error::Parse(format!("ambient {t:?}: {why}"));
        let pair = |s: &str| -> Result<(usize, usize)> {
            let (a, b) = s.split_once(',').ok_or_else(|| bad("expected n,k"))?;
            let n = a.trim().parse().map_err(|_| bad("n is not a number"))?;
            let k = b.trim().parse().map_err(|_| bad("k is not a number"))?;
            if k > n {
                return Err(bad("k exceeds n"));
            }
            Ok((n, k))
        };
        if let Some(rest) = t.strip_prefix("lnk:") {
            let (n, k) = pair(rest)?;
            return Ok(AmbientShape::Linear { n, k });
        }
        if let Some(rest) = t.strip_prefix("star:") {
            let (nk, pt) = rest.split_once(':').ok_or_else(|| bad("expected star:n,k:point"))?;
            let (n, k) = pair(nk)?;
            let point = pt.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
            if point.len() != n {
                return Err(bad("point has the wrong length"));
            }
            return Ok(AmbientShape::Star { n, k, point });
        }
        if let Some(rest) = t.strip_prefix("product:") {
            let parts = rest
                .split(';')
                .map(|p| {
                    let p = p.trim();
                    if p.contains(':') {
                        AmbientShape::parse(p)
                    } else {
                        pair(p).map(|(n, k)| AmbientShape::Linear { n, k })
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            if parts.is_empty() {
                return Err(bad("empty product"));
            }
            return Ok(AmbientShape::Product(parts));
        }
        Err(bad("expected lnk:, star: or product:"))
    }
}

/// A space together with Cartier divisors cutting out its diagonal.
#[derive(Clone, Debug)]
pub struct AmbientContext {
    shape: AmbientShape,
    ambient: TropicalCycle,
    factors: Vec<TropicalCycle>,
    diagonal_rep: DiagonalRepresentation,
}

fn linear_cache() -> &'static Mutex<BTreeMap<(usize, usize), AmbientContext>> {
    static CACHE: OnceLock<Mutex<BTreeMap<(usize, usize), AmbientContext>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl AmbientContext {
    /// `L^n_k` with the rewritten diagonal, verified once per `(n, k)`.
    pub fn linear_space(n: usize, k: usize) -> Result<AmbientContext> {
        if k > n {
            return Err(Error::Invalid(format!("k = {k} exceeds n = {n}")));
        }
        if let Some(c) = linear_cache().lock().expect("cache lock").get(&(n, k)) {
            return Ok(c.clone());
        }
        let ambient = build_lnk(n, k)?;
        let ctx = AmbientContext {
            shape: AmbientShape::Linear { n, k },
            factors: vec![ambient.clone()],
            ambient,
            diagonal_rep: rewrite_diagonal(n, n - k)?,
        };
        linear_cache().lock().expect("cache lock").entry((n, k)).or_insert(ctx.clone());
        Ok(ctx)
    }

    /// The star of `L^n_k` at a point; the point picks the cell of `L^n_k`
    /// whose relative interior contains it.
    pub fn star(n: usize, k: usize, point: &[crate::Rational]) -> Result<AmbientContext> {
        if point.len() != n {
            return Err(Error::Dimension(format!("point has {} coordinates, not {n}", point.len())));
        }
        let l = build_lnk(n, k)?;
        let tau: Cell = l
            .all_faces()
            .into_iter()
            .find(|c| c.contains_point_relint(point))
            .ok_or(Error::NotInSupport)?;
        let ambient = lnk_star(n, k, &tau, point)?;
        let rep = star_diagonal_at(n, k, &tau, point)?;
        Ok(AmbientContext {
            shape: AmbientShape::Star { n, k, point: point.to_vec() },
            factors: vec![ambient.clone()],
            ambient,
            diagonal_rep: rep,
        })
    }

    /// The product of spaces, with the factor diagonals pulled back along
    /// the projections `(x, y) -> (x_i, y_i)`; checked on construction.
    pub fn product(parts: &[AmbientContext]) -> Result<AmbientContext> {
        if parts.is_empty() {
            return Err(Error::Invalid("empty product".into()));
        }
        let dims: Vec<usize> = parts.iter().map(|p| p.ambient.ambient_dim()).collect();
        let m: usize = dims.iter().sum();
        let mut blocks = Vec::new();
        let mut codim = 0;
        let mut offset = 0;
        let mut ambient: Option<TropicalCycle> = None;
        for (p, &a) in parts.iter().zip(&dims) {
            // homogenized projection R^{2m} -> R^{2a}
            let mut proj = IntMatrix::zeros(2 * a + 1, 2 * m + 1);
            proj[(0, 0)] = 1.into();
            for i in 0..a {
                proj[(1 + i, 1 + offset + i)] = 1.into();
                proj[(1 + a + i, 1 + m + offset + i)] = 1.into();
            }
            for block in &p.diagonal_rep.blocks {
                let mut pulled = Vec::with_capacity(block.len());
                for t in block {
                    pulled.push(t.iter().map(|f| f.pullback_homogeneous(&proj)).collect::<Result<Vec<_>>>()?);
                }
                blocks.push(pulled);
            }
            codim += p.diagonal_rep.codim;
            ambient = Some(match ambient {
                None => p.ambient.clone(),
                Some(a) => cross(&a, &p.ambient),
            });
            offset += a;
        }
        let ctx = AmbientContext {
            shape: AmbientShape::Product(parts.iter().map(|p| p.shape.clone()).collect()),
            factors: parts.iter().map(|p| p.ambient.clone()).collect(),
            ambient: ambient.expect("nonempty product"),
            diagonal_rep: DiagonalRepresentation { codim, blocks, symbolic: None },
        };
        ctx.verify()?;
        Ok(ctx)
    }

    pub fn from_shape(shape: &AmbientShape) -> Result<AmbientContext> {
        match shape {
            AmbientShape::Linear { n, k } => Self::linear_space(*n, *k),
            AmbientShape::Star { n, k, point } => Self::star(*n, *k, point),
            AmbientShape::Product(parts) => {
                let ctxs = parts.iter().map(Self::from_shape).collect::<Result<Vec<_>>>()?;
                Self::product(&ctxs)
            }
        }
    }

    /// Replaces the diagonal representation, checking the new one.
    pub fn with_representation(&self, rep: DiagonalRepresentation) -> Result<AmbientContext> {
        let ctx = AmbientContext { diagonal_rep: rep, ..self.clone() };
        ctx.verify()?;
        Ok(ctx)
    }

    /// Checks `rep . [X x X] = diagonal of X`.
    pub fn verify(&self) -> Result<()> {
        let got = self.diagonal_rep.apply(&cross(&self.ambient, &self.ambient))?;
        if cycles_equal(&got, &super::diagonal_cycle(&self.ambient)) {
            Ok(())
        } else {
            Err(Error::Verification(format!("diagonal representation of {} is wrong", self.shape)))
        }
    }

    pub fn shape(&self) -> &AmbientShape {
        &self.shape
    }

    pub fn ambient(&self) -> &TropicalCycle {
        &self.ambient
    }

    /// Factor spaces, a single one unless this is a product.
    pub fn factors(&self) -> &[TropicalCycle] {
        &self.factors
    }

    pub fn diagonal_rep(&self) -> &DiagonalRepresentation {
        &self.diagonal_rep
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim()
    }

    fn check_subcycle(&self, d: &TropicalCycle) -> Result<()> {
        if d.ambient_dim() != self.ambient_dim() {
            return Err(Error::Dimension(format!(
                "cycle lives in R^{}, ambient in R^{}",
                d.ambient_dim(),
                self.ambient_dim()
            )));
        }
        if !d.is_empty() && d.dim() > self.dim() {
            return Err(Error::Dimension("cycle is larger than the ambient space".into()));
        }
        if !self.ambient.support_contains_cycle(d) {
            return Err(Error::Support(format!("cycle is not contained in {}", self.shape)));
        }
        Ok(())
    }
}

/// `D1 . D2 = pi_*(sum_i h_i1 ... h_ic . (D1 x D2))`.
pub fn intersect_cycles(d1: &TropicalCycle, d2: &TropicalCycle, ctx: &AmbientContext) -> Result<TropicalCycle> {
    ctx.check_subcycle(d1)?;
    ctx.check_subcycle(d2)?;
    let m = ctx.ambient_dim();
    let total = d1.dim() + d2.dim();
    if d1.is_empty() || d2.is_empty() || total < ctx.dim() {
        return Ok(TropicalCycle::empty(m, total.saturating_sub(ctx.dim())));
    }
    let cut = ctx.diagonal_rep.apply(&cross(d1, d2))?;
    if cut.is_empty() {
        return Ok(TropicalCycle::empty(m, total - ctx.dim()));
    }
    pushforward(&Morphism::first_projection(m, m), &cut)
}

/// `f^* C = pi_*(Gamma_f . (X x C))` in the product `X x Y` described by
/// `ctx`, whose two factors are the source `X` and the target `Y`.
pub fn pullback_cycle(f: &Morphism, c: &TropicalCycle, ctx: &AmbientContext) -> Result<TropicalCycle> {
    let [x, y] = ctx.factors() else {
        return Err(Error::Invalid("pull-back needs a product of source and target".into()));
    };
    if f.source_dim() != x.ambient_dim() || f.target_dim() != y.ambient_dim() {
        return Err(Error::Dimension("map does not match source and target".into()));
    }
    if c.ambient_dim() != y.ambient_dim() || !y.support_contains_cycle(c) {
        return Err(Error::Support("cycle is not contained in the target".into()));
    }
    let gamma = super::graph(f, x)?;
    if !ctx.ambient().support_contains_cycle(&gamma) {
        return Err(Error::Support("map does not send the source into the target".into()));
    }
    let xc = cross(x, c);
    let prod = intersect_cycles(&gamma, &xc, ctx)?;
    let a = x.ambient_dim();
    if prod.is_empty() {
        return Ok(TropicalCycle::empty(a, prod.dim()));
    }
    pushforward(&Morphism::first_projection(a, y.ambient_dim()), &prod)
}

/// Degree of `D1 . D2` when it is a 0-cycle; zero when it is empty.
pub fn intersection_degree(d1: &TropicalCycle, d2: &TropicalCycle, ctx: &AmbientContext) -> Result<BigInt> {
    let p = intersect_cycles(d1, d2, ctx)?;
    if p.is_empty() {
        return Ok(BigInt::zero());
    }
    crate::polyhedra::degree(&p)
}
