//! The Cartan group as ℝ⁵ with coordinates `(x, y, z, v, w)`, its
//! left-invariant frame and the rotation and dilation symmetries.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GroupPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub v: f64,
    pub w: f64,
}

impl GroupPoint {
    pub const IDENTITY: GroupPoint = GroupPoint {
        x: 0.0,
        y: 0.0,
        z: 0.0,
        v: 0.0,
        w: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64, v: f64, w: f64) -> Result<GroupPoint> {
        let g = GroupPoint { x, y, z, v, w };
        if g.to_array().iter().all(|c| c.is_finite()) {
            Ok(g)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn from_array(a: [f64; 5]) -> GroupPoint {
        GroupPoint {
            x: a[0],
            y: a[1],
            z: a[2],
            v: a[3],
            w: a[4],
        }
    }

    pub fn to_array(self) -> [f64; 5] {
        [self.x, self.y, self.z, self.v, self.w]
    }

    pub fn r2(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn max_abs_diff(self, other: GroupPoint) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Coordinate components of the frame field `X_i` at `g`; `X₀` is the
/// rotation generator, `X₁, X₂` span the distribution.
pub fn frame_field(i: usize, g: GroupPoint) -> Result<[f64; 5]> {
    let GroupPoint { x, y, v, w, .. } = g;
    let half_r2 = 0.5 * (x * x + y * y);
    Ok(match i {
        0 => [-y, x, 0.0, -w, v],
        1 => [1.0, 0.0, -0.5 * y, 0.0, -half_r2],
        2 => [0.0, 1.0, 0.5 * x, half_r2, 0.0],
        3 => [0.0, 0.0, 1.0, x, y],
        4 => [0.0, 0.0, 0.0, 1.0, 0.0],
        5 => [0.0, 0.0, 0.0, 0.0, 1.0],
        _ => return Err(Error::InvalidIndex(i)),
    })
}

/// The flow `e^{sX₀}`: simultaneous rotation of the `(x, y)` and `(v, w)` planes.
pub fn rotate(g: GroupPoint, s: f64) -> GroupPoint {
    let (sn, cs) = s.sin_cos();
    GroupPoint {
        x: g.x * cs - g.y * sn,
        y: g.x * sn + g.y * cs,
        z: g.z,
        v: g.v * cs - g.w * sn,
        w: g.v * sn + g.w * cs,
    }
}

/// The flow `e^{rY}` of the dilation field, weights `(1, 1, 2, 3, 3)`.
pub fn dilate(g: GroupPoint, r: f64) -> GroupPoint {
    let e1 = r.exp();
    let e2 = e1 * e1;
    let e3 = e2 * e1;
    GroupPoint {
        x: e1 * g.x,
        y: e1 * g.y,
        z: e2 * g.z,
        v: e3 * g.v,
        w: e3 * g.w,
    }
}

/// Coordinates adapted to the symmetries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantCoords {
    pub p: f64,
    pub q: f64,
    pub r_inv: f64,
    pub r: f64,
    pub chi: f64,
}

pub const AXIS_THRESHOLD: f64 = 1e-9;

/// `P = z/(2r²)`, `Q = (xv + yw)/r⁴`, `R = (xw − yv)/r⁴`, `r`, and
/// the polar angle `χ = atan2(y, x)`, so that `X₀χ = 1`.
pub fn invariant_coords(g: GroupPoint) -> Result<InvariantCoords> {
    let r2 = g.r2();
    let r = r2.sqrt();
    if !(r >= AXIS_THRESHOLD) {
        return Err(Error::OnSymmetryAxis(r));
    }
    let r4 = r2 * r2;
    Ok(InvariantCoords {
        p: g.z / (2.0 * r2),
        q: (g.x * g.v + g.y * g.w) / r4,
        r_inv: (g.x * g.w - g.y * g.v) / r4,
        r,
        chi: g.y.atan2(g.x),
    })
}
