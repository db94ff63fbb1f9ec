//! The dyadic shift `S h_I = h_{I^+} − h_{I^-}` in each variable, iterated
//! commutators `[S⁽¹⁾,[S⁽²⁾,T]]` and the Haar-diagonal commutator formula.

use ndarray::Array2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dyadic::{haar_forward_2d, haar_inverse_2d, Depth, DyadicRect, GridFunction2D, HaarSpectrum2D, PrefixTable};
use crate::error::{Error, Result};
use crate::linop::{assemble, DenseOperator};
use crate::norms::{bmo_d_norm_sq, bmo_rect_norm_sq, lmo_d_norm, lmo_directional_norm};
use crate::paraproduct::{nine_part_apply, NinePartTag};

/// Extra levels per axis reserved for two nested shifts.
pub const HEADROOM: usize = 2;

/// Source depth and the ambient depth `source + (2, 2)` in which commutators
/// are evaluated without truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AmbientEmbedding {
    pub source: Depth,
    pub ambient: Depth,
}

impl AmbientEmbedding {
    pub fn new(source: Depth) -> Result<Self> {
        let ambient = Depth::new(source.s + HEADROOM, source.t + HEADROOM)?;
        Ok(Self { source, ambient })
    }

    pub fn embed_grid(&self, f: &GridFunction2D) -> Result<GridFunction2D> {
        self.source.ensure_same(&f.depth())?;
        f.refine(self.ambient)
    }

    pub fn embed_spectrum(&self, c: &HaarSpectrum2D) -> Result<HaarSpectrum2D> {
        self.source.ensure_same(&c.depth())?;
        c.embed(self.ambient)
    }
}

fn check_axis(axis: u8) -> Result<usize> {
    match axis {
        1 => Ok(0),
        2 => Ok(1),
        _ => Err(Error::InvalidInput(format!("axis must be 1 or 2, got {axis}"))),
    }
}

fn shift_coeffs(c: &Array2<f64>, ax: usize, truncate: bool) -> Result<Array2<f64>> {
    let c = if ax == 0 { c.clone() } else { c.t().to_owned() };
    let (n, m) = c.dim();
    let mut out = Array2::zeros((n, m));
    for a in 1..n {
        for b in 0..m {
            let v = c[[a, b]];
            if v == 0.0 {
                continue;
            }
            if 2 * a + 1 >= n {
                if truncate {
                    continue;
                }
                return Err(Error::InsufficientHeadroom);
            }
            out[[2 * a + 1, b]] += v;
            out[[2 * a, b]] -= v;
        }
    }
    Ok(if ax == 0 { out } else { out.t().to_owned() })
}

/// `S` acting in variable `axis` (1 = s, 2 = t); `S𝟙 = 0`. Fails when a
/// nonzero coefficient sits at the finest level of that axis.
pub fn shift_apply(c: &HaarSpectrum2D, axis: u8) -> Result<HaarSpectrum2D> {
    let ax = check_axis(axis)?;
    Ok(HaarSpectrum2D::from_coeffs_unchecked(c.depth(), shift_coeffs(c.coeffs(), ax, false)?))
}

/// Dense matrix of `S` in variable `axis`, dropping children beyond depth.
pub fn shift_operator(depth: Depth, axis: u8) -> Result<DenseOperator> {
    let ax = check_axis(axis)?;
    assemble(depth, |c| Ok(HaarSpectrum2D::from_coeffs_unchecked(depth, shift_coeffs(c.coeffs(), ax, true)?)))
}

fn shift_grid(g: &GridFunction2D, axis: u8) -> Result<GridFunction2D> {
    Ok(haar_inverse_2d(&shift_apply(&haar_forward_2d(g), axis)?))
}

/// `[S⁽¹⁾,[S⁽²⁾,T]]b = S₁S₂Tb − S₁TS₂b − S₂TS₁b + TS₂S₁b`, all at the depth of `b`.
pub fn double_commutator_apply<T>(op: T, b: &GridFunction2D) -> Result<GridFunction2D>
where
    T: Fn(&GridFunction2D) -> Result<GridFunction2D>,
{
    let s1 = |g: &GridFunction2D| shift_grid(g, 1);
    let s2 = |g: &GridFunction2D| shift_grid(g, 2);
    let t1 = s1(&s2(&op(b)?)?)?;
    let t2 = s1(&op(&s2(b)?)?)?;
    let t3 = s2(&op(&s1(b)?)?)?;
    let t4 = op(&s2(&s1(b)?)?)?;
    t1.sub(&t2)?.sub(&t3)?.add(&t4)
}

/// `[S⁽¹⁾,[S⁽²⁾,M_φ]]b` evaluated at the ambient depth.
pub fn iterated_commutator_apply(phi: &GridFunction2D, b: &GridFunction2D) -> Result<GridFunction2D> {
    phi.depth().ensure_same(&b.depth())?;
    let emb = AmbientEmbedding::new(b.depth())?;
    let phi_a = emb.embed_grid(phi)?;
    double_commutator_apply(|g| phi_a.pointwise_mul(g), &emb.embed_grid(b)?)
}

/// `[S⁽¹⁾,[S⁽²⁾,P_φ]]b` for one of the nine parts, at the ambient depth.
pub fn part_commutator_apply(tag: NinePartTag, phi: &GridFunction2D, b: &GridFunction2D) -> Result<GridFunction2D> {
    phi.depth().ensure_same(&b.depth())?;
    let emb = AmbientEmbedding::new(b.depth())?;
    let phi_a = haar_forward_2d(&emb.embed_grid(phi)?);
    double_commutator_apply(|g| nine_part_apply(tag, &phi_a, g), &emb.embed_grid(b)?)
}

/// Child order used by the R_R formula: `(I^+J^+, I^+J^-, I^-J^+, I^-J^-)`.
pub const CHILD_ORDER: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// Brackets `m_{IJ} − m_{I,J^b} − m_{I^a,J} + m_{I^a,J^b}` in [`CHILD_ORDER`].
pub fn rr_commutator_brackets(phi: &GridFunction2D, rect: DyadicRect) -> Result<[f64; 4]> {
    let depth = phi.depth();
    if rect.s.level() + 1 > depth.s || rect.t.level() + 1 > depth.t {
        return Err(Error::InsufficientHeadroom);
    }
    let table = PrefixTable::new(phi);
    let mean = |i: crate::dyadic::DyadicInterval, j: crate::dyadic::DyadicInterval| {
        table.rect_mean(i.cell_range(depth.s), j.cell_range(depth.t))
    };
    let child = |i: crate::dyadic::DyadicInterval, sign: i8| if sign > 0 { i.right() } else { i.left() };
    let (i, j) = (rect.s, rect.t);
    let m = mean(i, j)?;
    let mut out = [0.0; 4];
    for (slot, &(a, b)) in CHILD_ORDER.iter().enumerate() {
        let (ia, jb) = (child(i, a), child(j, b));
        out[slot] = m - mean(i, jb)? - mean(ia, j)? + mean(ia, jb)?;
    }
    Ok(out)
}

/// `[S⁽¹⁾,[S⁽²⁾,R_R φ]] h_R = Σ_{a,b} σ(a)σ(b)·bracket_{ab}·h_{I^a J^b}`,
/// with `σ(+) = 1`, `σ(−) = −1`. The children must exist at the depth of `φ`.
pub fn rr_commutator_on_basis(phi: &GridFunction2D, rect: DyadicRect) -> Result<HaarSpectrum2D> {
    let depth = phi.depth();
    if rect.s.level() + 2 > depth.s || rect.t.level() + 2 > depth.t {
        return Err(Error::InsufficientHeadroom);
    }
    let brackets = rr_commutator_brackets(phi, rect)?;
    let mut out = HaarSpectrum2D::zeros(depth);
    for (&(a, b), v) in CHILD_ORDER.iter().zip(brackets) {
        let ia = if a > 0 { rect.s.right() } else { rect.s.left() };
        let jb = if b > 0 { rect.t.right() } else { rect.t.left() };
        out.set_hh(DyadicRect::new(ia, jb), (a * b) as f64 * v)?;
    }
    Ok(out)
}

/// Symbol norm predicted to control one part of the commutator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ControlNorm {
    RectBmo,
    Bmo,
    Lmo1,
    Lmo2,
    Lmo,
}

impl ControlNorm {
    pub fn for_tag(tag: NinePartTag) -> Self {
        match tag {
            t if t == NinePartTag::R_R => ControlNorm::RectBmo,
            t if t == NinePartTag::PI => ControlNorm::Lmo,
            t if t == NinePartTag::PI_R || t == NinePartTag::PI_01 => ControlNorm::Lmo1,
            t if t == NinePartTag::R_PI || t == NinePartTag::PI_10 => ControlNorm::Lmo2,
            _ => ControlNorm::Bmo,
        }
    }

    pub fn evaluate(self, phi: &HaarSpectrum2D) -> Result<f64> {
        Ok(match self {
            ControlNorm::RectBmo => bmo_rect_norm_sq(phi).sqrt(),
            ControlNorm::Bmo => bmo_d_norm_sq(phi, None)?.norm_sq.sqrt(),
            ControlNorm::Lmo1 => lmo_directional_norm(phi, 1)?,
            ControlNorm::Lmo2 => lmo_directional_norm(phi, 2)?,
            ControlNorm::Lmo => lmo_d_norm(phi)?,
        })
    }
}

/// One line of [`commutator_part_norm_report`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartNormRow {
    pub part: String,
    /// `‖[S⁽¹⁾,[S⁽²⁾,P_φ]]b‖_{BMO^d}`
    pub commutator_bmo: f64,
    pub control: ControlNorm,
    pub control_norm: f64,
    pub b_bmo: f64,
    /// `commutator_bmo / (control_norm · b_bmo)`, 0 when the numerator is 0
    pub ratio: f64,
}

/// BMO norms of the nine part commutators applied to `b`, next to the
/// symbol norm controlling each. Source depth at most (3,3).
pub fn commutator_part_norm_report(phi: &GridFunction2D, b: &GridFunction2D) -> Result<Vec<PartNormRow>> {
    let depth = b.depth();
    if depth.s > 3 || depth.t > 3 {
        return Err(Error::OutOfRange("part-norm report supports source depth up to (3,3)".into()));
    }
    let phi_c = haar_forward_2d(phi).hh_part();
    let b_bmo = bmo_d_norm_sq(&haar_forward_2d(b).hh_part(), None)?.norm_sq.sqrt();
    NinePartTag::ALL
        .par_iter()
        .map(|&tag| {
            let out = part_commutator_apply(tag, phi, b)?;
            let value = bmo_d_norm_sq(&haar_forward_2d(&out).hh_part(), None)?.norm_sq.sqrt();
            let control = ControlNorm::for_tag(tag);
            let control_norm = control.evaluate(&phi_c)?;
            let ratio = if value == 0.0 { 0.0 } else { value / (control_norm * b_bmo) };
            Ok(PartNormRow { part: tag.name().to_string(), commutator_bmo: value, control, control_norm, b_bmo, ratio })
        })
        .collect()
}
