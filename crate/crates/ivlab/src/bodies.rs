//! Compositional convex bodies.
//!
//! A [`BodySpec`] describes a convex body anchored at a canonical position:
//! points sit at the origin, balls are centered at the origin, boxes span
//! `[0, s_1] x ... x [0, s_n]`. Composite bodies are built with orthogonal
//! products, nonnegative scalings, translations, and embeddings into higher
//! ambient dimension. Zero-length axes and zero radii are permitted, so a
//! body may be lower-dimensional than its ambient space.

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum BodySpec {
    /// The origin of `R^dim`.
    Point { dim: usize },
    /// Centered Euclidean ball of the given radius, `radius >= 0`.
    Ball { dim: usize, radius: f64 },
    /// Axis-aligned box `[0, lengths[0]] x ... x [0, lengths[n-1]]`.
    Box { lengths: Vec<f64> },
    /// Orthogonal product: `left` occupies the leading coordinates.
    Product {
        left: std::boxed::Box<BodySpec>,
        right: std::boxed::Box<BodySpec>,
    },
    /// `factor * inner` with `factor >= 0`; factor zero collapses to the origin.
    Scaled {
        factor: f64,
        inner: std::boxed::Box<BodySpec>,
    },
    /// `inner + offset`; `offset.len()` must equal the inner ambient dimension.
    Translated {
        offset: Vec<f64>,
        inner: std::boxed::Box<BodySpec>,
    },
    /// `inner x {0_extra}`: the same body inside `extra_dims` more dimensions.
    Embedded {
        inner: std::boxed::Box<BodySpec>,
        extra_dims: usize,
    },
}

impl BodySpec {
    pub fn cube(n: usize) -> BodySpec {
        BodySpec::Box {
            lengths: vec![1.0; n],
        }
    }

    pub fn product(left: BodySpec, right: BodySpec) -> BodySpec {
        BodySpec::Product {
            left: std::boxed::Box::new(left),
            right: std::boxed::Box::new(right),
        }
    }

    pub fn scaled(factor: f64, inner: BodySpec) -> BodySpec {
        BodySpec::Scaled {
            factor,
            inner: std::boxed::Box::new(inner),
        }
    }

    pub fn translated(offset: Vec<f64>, inner: BodySpec) -> BodySpec {
        BodySpec::Translated {
            offset,
            inner: std::boxed::Box::new(inner),
        }
    }

    pub fn embedded(inner: BodySpec, extra_dims: usize) -> BodySpec {
        BodySpec::Embedded {
            inner: std::boxed::Box::new(inner),
            extra_dims,
        }
    }

    /// Dimension of the ambient space the body lives in.
    pub fn ambient_dim(&self) -> usize {
        match self {
            BodySpec::Point { dim } | BodySpec::Ball { dim, .. } => *dim,
            BodySpec::Box { lengths } => lengths.len(),
            BodySpec::Product { left, right } => left.ambient_dim() + right.ambient_dim(),
            BodySpec::Scaled { inner, .. } | BodySpec::Translated { inner, .. } => {
                inner.ambient_dim()
            }
            BodySpec::Embedded { inner, extra_dims } => inner.ambient_dim() + extra_dims,
        }
    }

    /// Dimension of the affine hull: strictly positive axes, radii, factors count.
    pub fn intrinsic_dim(&self) -> usize {
        match self {
            BodySpec::Point { .. } => 0,
            BodySpec::Ball { dim, radius } => {
                if *radius > 0.0 {
                    *dim
                } else {
                    0
                }
            }
            BodySpec::Box { lengths } => lengths.iter().filter(|&&s| s > 0.0).count(),
            BodySpec::Product { left, right } => left.intrinsic_dim() + right.intrinsic_dim(),
            BodySpec::Scaled { factor, inner } => {
                if *factor > 0.0 {
                    inner.intrinsic_dim()
                } else {
                    0
                }
            }
            BodySpec::Translated { inner, .. } => inner.intrinsic_dim(),
            BodySpec::Embedded { inner, .. } => inner.intrinsic_dim(),
        }
    }

    /// Structural validity: nonnegative finite lengths/radii/factors,
    /// positive ambient dimension, translation offsets of matching length.
    pub fn validate(&self) -> Result<()> {
        let finite_nonneg = |v: f64, what: &str| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidInput(format!(
                    "{what} must be finite and nonnegative, got {v}"
                )))
            }
        };
        match self {
            BodySpec::Point { dim } => {
                if *dim == 0 {
                    return Err(Error::InvalidInput("ambient dimension must be >= 1".into()));
                }
            }
            BodySpec::Ball { dim, radius } => {
                if *dim == 0 {
                    return Err(Error::InvalidInput("ambient dimension must be >= 1".into()));
                }
                finite_nonneg(*radius, "ball radius")?;
            }
            BodySpec::Box { lengths } => {
                if lengths.is_empty() {
                    return Err(Error::InvalidInput("box needs at least one axis".into()));
                }
                for &s in lengths {
                    finite_nonneg(s, "box side length")?;
                }
            }
            BodySpec::Product { left, right } => {
                left.validate()?;
                right.validate()?;
            }
            BodySpec::Scaled { factor, inner } => {
                finite_nonneg(*factor, "scale factor")?;
                inner.validate()?;
            }
            BodySpec::Translated { offset, inner } => {
                inner.validate()?;
                if offset.len() != inner.ambient_dim() {
                    return Err(Error::DimensionMismatch {
                        expected: inner.ambient_dim(),
                        got: offset.len(),
                    });
                }
                for &v in offset {
                    if !v.is_finite() {
                        return Err(Error::InvalidInput("translation offset must be finite".into()));
                    }
                }
            }
            BodySpec::Embedded { inner, .. } => inner.validate()?,
        }
        Ok(())
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        let n = self.ambient_dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Nearest point of the body. Projection is idempotent and 1-Lipschitz.
    pub fn project(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        Ok(self.project_unchecked(x))
    }

    fn project_unchecked(&self, x: &[f64]) -> Vec<f64> {
        match self {
            BodySpec::Point { dim } => vec![0.0; *dim],
            BodySpec::Ball { dim, radius } => {
                let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                if norm <= *radius {
                    x.to_vec()
                } else if norm == 0.0 {
                    vec![0.0; *dim]
                } else {
                    x.iter().map(|v| v * radius / norm).collect()
                }
            }
            BodySpec::Box { lengths } => x
                .iter()
                .zip(lengths)
                .map(|(&v, &s)| v.clamp(0.0, s))
                .collect(),
            BodySpec::Product { left, right } => {
                let k = left.ambient_dim();
                let mut p = left.project_unchecked(&x[..k]);
                p.extend(right.project_unchecked(&x[k..]));
                p
            }
            BodySpec::Scaled { factor, inner } => {
                if *factor == 0.0 {
                    vec![0.0; inner.ambient_dim()]
                } else {
                    let scaled_in: Vec<f64> = x.iter().map(|v| v / factor).collect();
                    inner
                        .project_unchecked(&scaled_in)
                        .into_iter()
                        .map(|v| v * factor)
                        .collect()
                }
            }
            BodySpec::Translated { offset, inner } => {
                let shifted: Vec<f64> = x.iter().zip(offset).map(|(v, o)| v - o).collect();
                inner
                    .project_unchecked(&shifted)
                    .into_iter()
                    .zip(offset)
                    .map(|(v, o)| v + o)
                    .collect()
            }
            BodySpec::Embedded { inner, extra_dims } => {
                let k = inner.ambient_dim();
                let mut p = inner.project_unchecked(&x[..k]);
                p.extend(std::iter::repeat_n(0.0, *extra_dims));
                p
            }
        }
    }

    /// Squared Euclidean distance to the body, `|x - project(x)|^2`. The
    /// Monte Carlo integrands use this directly so no sqrt/square round trip
    /// enters their exponents.
    pub fn distance_squared(&self, x: &[f64]) -> Result<f64> {
        let p = self.project(x)?;
        Ok(x.iter().zip(&p).map(|(a, b)| (a - b) * (a - b)).sum())
    }

    /// Euclidean distance to the body: the norm of `x - project(x)`.
    pub fn distance(&self, x: &[f64]) -> Result<f64> {
        Ok(self.distance_squared(x)?.sqrt())
    }

    /// Membership by the algebraic test of each primitive. Equivalent to
    /// `distance(x) == 0` away from rounding-critical boundary points.
    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        self.check_dim(x)?;
        Ok(self.contains_unchecked(x))
    }

    fn contains_unchecked(&self, x: &[f64]) -> bool {
        match self {
            BodySpec::Point { .. } => x.iter().all(|&v| v == 0.0),
            BodySpec::Ball { radius, .. } => {
                x.iter().map(|v| v * v).sum::<f64>() <= radius * radius
            }
            BodySpec::Box { lengths } => x
                .iter()
                .zip(lengths)
                .all(|(&v, &s)| (0.0..=s).contains(&v)),
            BodySpec::Product { left, right } => {
                let k = left.ambient_dim();
                left.contains_unchecked(&x[..k]) && right.contains_unchecked(&x[k..])
            }
            BodySpec::Scaled { factor, inner } => {
                if *factor == 0.0 {
                    x.iter().all(|&v| v == 0.0)
                } else {
                    let scaled: Vec<f64> = x.iter().map(|v| v / factor).collect();
                    inner.contains_unchecked(&scaled)
                }
            }
            BodySpec::Translated { offset, inner } => {
                let shifted: Vec<f64> = x.iter().zip(offset).map(|(v, o)| v - o).collect();
                inner.contains_unchecked(&shifted)
            }
            BodySpec::Embedded { inner, .. } => {
                let k = inner.ambient_dim();
                inner.contains_unchecked(&x[..k]) && x[k..].iter().all(|&v| v == 0.0)
            }
        }
    }

    /// Conservative enclosing ball `(center, radius)`: the body is contained,
    /// but the radius is not necessarily minimal.
    pub fn enclosing_ball(&self) -> (Vec<f64>, f64) {
        match self {
            BodySpec::Point { dim } => (vec![0.0; *dim], 0.0),
            BodySpec::Ball { dim, radius } => (vec![0.0; *dim], *radius),
            BodySpec::Box { lengths } => {
                let center: Vec<f64> = lengths.iter().map(|s| s / 2.0).collect();
                let r = lengths.iter().map(|s| s * s / 4.0).sum::<f64>().sqrt();
                (center, r)
            }
            BodySpec::Product { left, right } => {
                let (mut c, rl) = left.enclosing_ball();
                let (cr, rr) = right.enclosing_ball();
                c.extend(cr);
                (c, (rl * rl + rr * rr).sqrt())
            }
            BodySpec::Scaled { factor, inner } => {
                let (c, r) = inner.enclosing_ball();
                (c.into_iter().map(|v| v * factor).collect(), r * factor)
            }
            BodySpec::Translated { offset, inner } => {
                let (c, r) = inner.enclosing_ball();
                (c.into_iter().zip(offset).map(|(v, o)| v + o).collect(), r)
            }
            BodySpec::Embedded { inner, extra_dims } => {
                let (mut c, r) = inner.enclosing_ball();
                c.extend(std::iter::repeat_n(0.0, *extra_dims));
                (c, r)
            }
        }
    }

    /// Axis-aligned bounding box `(lo, hi)`, `lo[i] <= hi[i]` per axis.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            BodySpec::Point { dim } => (vec![0.0; *dim], vec![0.0; *dim]),
            BodySpec::Ball { dim, radius } => (vec![-radius; *dim], vec![*radius; *dim]),
            BodySpec::Box { lengths } => (vec![0.0; lengths.len()], lengths.clone()),
            BodySpec::Product { left, right } => {
                let (mut lo, mut hi) = left.bounding_box();
                let (lo_r, hi_r) = right.bounding_box();
                lo.extend(lo_r);
                hi.extend(hi_r);
                (lo, hi)
            }
            BodySpec::Scaled { factor, inner } => {
                let (lo, hi) = inner.bounding_box();
                (
                    lo.into_iter().map(|v| v * factor).collect(),
                    hi.into_iter().map(|v| v * factor).collect(),
                )
            }
            BodySpec::Translated { offset, inner } => {
                let (lo, hi) = inner.bounding_box();
                (
                    lo.into_iter().zip(offset).map(|(v, o)| v + o).collect(),
                    hi.into_iter().zip(offset).map(|(v, o)| v + o).collect(),
                )
            }
            BodySpec::Embedded { inner, extra_dims } => {
                let (mut lo, mut hi) = inner.bounding_box();
                lo.extend(std::iter::repeat_n(0.0, *extra_dims));
                hi.extend(std::iter::repeat_n(0.0, *extra_dims));
                (lo, hi)
            }
        }
    }

    /// Reduce to a translated product of axis intervals when the body is one:
    /// returns `(corner_offset, lengths)`. Balls of positive radius and
    /// products involving them reduce to `None`.
    pub fn as_interval_product(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        match self {
            BodySpec::Point { dim } => Some((vec![0.0; *dim], vec![0.0; *dim])),
            BodySpec::Ball { dim, radius } => {
                if *radius == 0.0 {
                    Some((vec![0.0; *dim], vec![0.0; *dim]))
                } else {
                    None
                }
            }
            BodySpec::Box { lengths } => Some((vec![0.0; lengths.len()], lengths.clone())),
            BodySpec::Product { left, right } => {
                let (mut off, mut len) = left.as_interval_product()?;
                let (off_r, len_r) = right.as_interval_product()?;
                off.extend(off_r);
                len.extend(len_r);
                Some((off, len))
            }
            BodySpec::Scaled { factor, inner } => {
                let (off, len) = inner.as_interval_product()?;
                Some((
                    off.into_iter().map(|v| v * factor).collect(),
                    len.into_iter().map(|v| v * factor).collect(),
                ))
            }
            BodySpec::Translated { offset, inner } => {
                let (off, len) = inner.as_interval_product()?;
                Some((
                    off.into_iter().zip(offset).map(|(v, o)| v + o).collect(),
                    len,
                ))
            }
            BodySpec::Embedded { inner, extra_dims } => {
                let (mut off, mut len) = inner.as_interval_product()?;
                off.extend(std::iter::repeat_n(0.0, *extra_dims));
                len.extend(std::iter::repeat_n(0.0, *extra_dims));
                Some((off, len))
            }
        }
    }
}
