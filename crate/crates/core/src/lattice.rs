//! General 2-D lattices: invariants, reduction, enumeration, affine images.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{AffineMap2, Vec2};

/// Tolerance for classifying basis coordinates as integers.
pub const EPS_COORD: f64 = 1e-7;

/// The lattice `{ v0 + m v1 + n v2 : m, n integers }`.
///
/// Immutable after construction; `fundamental_area`, `reduced_basis` and
/// `min_distance` are computed once by [`Lattice::new`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "LatticeSpec", into = "LatticeSpec")]
pub struct Lattice {
    origin: Vec2,
    gen1: Vec2,
    gen2: Vec2,
    fundamental_area: f64,
    reduced_basis: (Vec2, Vec2),
    min_distance: f64,
}

/// JSON form `{"v0":[x,y],"v1":[x,y],"v2":[x,y]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub v0: Vec2,
    pub v1: Vec2,
    pub v2: Vec2,
}

impl TryFrom<LatticeSpec> for Lattice {
    type Error = Error;
    fn try_from(s: LatticeSpec) -> Result<Lattice> {
        Lattice::new(s.v0, s.v1, s.v2)
    }
}

impl From<Lattice> for LatticeSpec {
    fn from(l: Lattice) -> LatticeSpec {
        LatticeSpec {
            v0: l.origin,
            v1: l.gen1,
            v2: l.gen2,
        }
    }
}

fn eps_degenerate(v1: Vec2, v2: Vec2) -> f64 {
    1e-12 * v1.norm().max(v2.norm()).powi(2)
}

impl Lattice {
    pub fn new(origin: Vec2, gen1: Vec2, gen2: Vec2) -> Result<Self> {
        let area = gen1.wedge(gen2).abs();
        if !(area > eps_degenerate(gen1, gen2)) {
            return Err(Error::DegenerateBasis);
        }
        let reduced = reduce_basis(gen1, gen2)?;
        Ok(Lattice {
            origin,
            gen1,
            gen2,
            fundamental_area: area,
            reduced_basis: reduced,
            min_distance: reduced.0.norm(),
        })
    }

    /// The standard integer lattice.
    pub fn standard() -> Self {
        Lattice::new(Vec2::ZERO, Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)).unwrap()
    }

    pub fn origin(&self) -> Vec2 {
        self.origin
    }

    pub fn generators(&self) -> (Vec2, Vec2) {
        (self.gen1, self.gen2)
    }

    /// `A_L = |v1 ^ v2|`.
    pub fn fundamental_area(&self) -> f64 {
        self.fundamental_area
    }

    pub fn reduced_basis(&self) -> (Vec2, Vec2) {
        self.reduced_basis
    }

    /// Minimum distance between distinct lattice points.
    pub fn min_distance(&self) -> f64 {
        self.min_distance
    }

    pub fn point(&self, m: i64, n: i64) -> Vec2 {
        self.origin + self.gen1 * m as f64 + self.gen2 * n as f64
    }

    /// Real-valued coordinates of `p` in the basis `(v1, v2)`.
    pub fn coords(&self, p: Vec2) -> (f64, f64) {
        let d = self.gen1.wedge(self.gen2);
        let r = p - self.origin;
        (r.wedge(self.gen2) / d, self.gen1.wedge(r) / d)
    }

    /// Integer coordinates of `p` if it is a lattice point within
    /// `EPS_COORD` of integrality.
    pub fn member_coords(&self, p: Vec2) -> Result<(i64, i64)> {
        let (a, b) = self.coords(p);
        let m = a.round();
        let n = b.round();
        if (a - m).abs() <= EPS_COORD && (b - n).abs() <= EPS_COORD {
            Ok((m as i64, n as i64))
        } else {
            Err(Error::NotLatticePoint)
        }
    }

    /// Integer `(m, n)` ranges whose points cover the closed box, obtained
    /// by mapping the corners through the inverse basis and widening by 1.
    pub fn index_ranges(&self, lo: Vec2, hi: Vec2) -> Result<((i64, i64), (i64, i64))> {
        if !(hi.x >= lo.x && hi.y >= lo.y) {
            return Err(Error::ConfigInvalid("empty box".into()));
        }
        let corners = [
            Vec2::new(lo.x, lo.y),
            Vec2::new(hi.x, lo.y),
            Vec2::new(lo.x, hi.y),
            Vec2::new(hi.x, hi.y),
        ];
        let mut m_lo = f64::INFINITY;
        let mut m_hi = f64::NEG_INFINITY;
        let mut n_lo = f64::INFINITY;
        let mut n_hi = f64::NEG_INFINITY;
        for c in corners {
            let (a, b) = self.coords(c);
            m_lo = m_lo.min(a);
            m_hi = m_hi.max(a);
            n_lo = n_lo.min(b);
            n_hi = n_hi.max(b);
        }
        Ok((
            ((m_lo.floor() as i64) - 1, (m_hi.ceil() as i64) + 1),
            ((n_lo.floor() as i64) - 1, (n_hi.ceil() as i64) + 1),
        ))
    }

    /// Number of candidate index pairs for the given box.
    pub fn candidate_count(&self, lo: Vec2, hi: Vec2) -> Result<u128> {
        let ((m0, m1), (n0, n1)) = self.index_ranges(lo, hi)?;
        Ok(((m1 - m0 + 1) as u128) * ((n1 - n0 + 1) as u128))
    }

    /// All lattice points inside the closed axis-aligned box, with their
    /// integer coordinates.
    pub fn enumerate_in_box_with_coords(&self, lo: Vec2, hi: Vec2) -> Result<Vec<(i64, i64, Vec2)>> {
        let ((m0, m1), (n0, n1)) = self.index_ranges(lo, hi)?;
        let mut out = Vec::new();
        for m in m0..=m1 {
            for n in n0..=n1 {
                let p = self.point(m, n);
                if p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y {
                    out.push((m, n, p));
                }
            }
        }
        Ok(out)
    }

    /// All lattice points inside the closed axis-aligned box.
    pub fn enumerate_in_box(&self, lo: Vec2, hi: Vec2) -> Result<Vec<Vec2>> {
        Ok(self
            .enumerate_in_box_with_coords(lo, hi)?
            .into_iter()
            .map(|(_, _, p)| p)
            .collect())
    }
}

/// Lagrange–Gauss reduction. Returns `(u1, u2)` generating the same
/// lattice with `|u1| <= |u2|` and `|<u1,u2>| <= |u1|^2 / 2`; `u1` is a
/// shortest nonzero lattice vector.
pub fn reduce_basis(v1: Vec2, v2: Vec2) -> Result<(Vec2, Vec2)> {
    if !(v1.wedge(v2).abs() > eps_degenerate(v1, v2)) {
        return Err(Error::DegenerateBasis);
    }
    let (mut u1, mut u2) = if v1.norm2() <= v2.norm2() {
        (v1, v2)
    } else {
        (v2, v1)
    };
    loop {
        let mu = (u2.dot(u1) / u1.norm2()).round();
        u2 = u2 - u1 * mu;
        if u2.norm2() < u1.norm2() {
            std::mem::swap(&mut u1, &mut u2);
        } else {
            break;
        }
    }
    Ok((u1, u2))
}

/// Transport a lattice through an affine map:
/// `phi[L(v0,v1,v2)] = L(phi(v0), M v1, M v2)`.
pub fn apply_affine_to_lattice(phi: &AffineMap2, lat: &Lattice) -> Result<Lattice> {
    if phi.det() == 0.0 {
        return Err(Error::DegenerateBasis);
    }
    let (g1, g2) = lat.generators();
    Lattice::new(
        phi.apply(lat.origin()),
        phi.linear.apply(g1),
        phi.linear.apply(g2),
    )
}

/// For lattice points `p0, p1, p2`, the integer `k >= 1` with
/// `Area = k * A_L / 2`.
pub fn lattice_triangle_multiple(p0: Vec2, p1: Vec2, p2: Vec2, lat: &Lattice) -> Result<i64> {
    let (m0, n0) = lat.member_coords(p0)?;
    let (m1, n1) = lat.member_coords(p1)?;
    let (m2, n2) = lat.member_coords(p2)?;
    let k = ((m1 - m0) * (n2 - n0) - (m2 - m0) * (n1 - n0)).abs();
    if k == 0 {
        return Err(Error::CollinearPoints);
    }
    Ok(k)
}

/// Convenience constructor mirroring the JSON schema.
pub fn make_lattice(v0: Vec2, v1: Vec2, v2: Vec2) -> Result<Lattice> {
    Lattice::new(v0, v1, v2)
}
