//! φ-Newton polygons and the residual polynomials of their edges.
//!
//! The digit `a_i` of the φ-expansion of `f` sits at abscissa `n - i` with
//! ordinate `v_p(a_i)` (Gauss valuation), so the leading digit is the
//! origin and the polygon rises to the right. Edges of positive slope are
//! the principal part; each one yields a residual polynomial over
//! `F_p[x]/(φ)`.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fq::{FqError, FqField, FqPoly};
use crate::zpoly::{gauss_valuation, phi_expand, IntPoly, PhiExpansion, Prime, Valuation, ZpolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("polynomial {0} is not monic")]
    NotMonic(IntPoly),
    #[error("{phi} is not irreducible mod {p}: {source}")]
    BadBase {
        phi: IntPoly,
        p: u64,
        #[source]
        source: FqError,
    },
    #[error("{phi} divides {f} over the integers")]
    BaseDividesPolynomial { f: IntPoly, phi: IntPoly },
    #[error("{phi} does not divide {f} mod {p}")]
    BaseNotAFactor { f: IntPoly, phi: IntPoly, p: u64 },
    #[error("edge {0:?} is not a principal edge of this polygon")]
    NotPrincipal(Edge),
    #[error(transparent)]
    Expansion(#[from] ZpolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PolygonPoint {
    pub x: usize,
    pub y: u64,
}

/// A hull edge of slope `slope_num / slope_den` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub start: PolygonPoint,
    pub end: PolygonPoint,
    pub slope_num: u64,
    pub slope_den: u64,
    pub length: usize,
}

impl Edge {
    fn between(start: PolygonPoint, end: PolygonPoint) -> Edge {
        let length = end.x - start.x;
        let rise = end.y - start.y;
        let g = rise.gcd(&(length as u64));
        Edge {
            start,
            end,
            slope_num: rise / g,
            slope_den: length as u64 / g,
            length,
        }
    }

    pub fn is_principal(&self) -> bool {
        self.slope_num > 0
    }

    /// Degree of the residual polynomial, `length / e`.
    pub fn residual_degree(&self) -> usize {
        self.length / self.slope_den as usize
    }
}

/// Lower convex hull of points with distinct abscissae, as maximal edges
/// ordered left to right (strictly increasing slopes). The leftmost point
/// must have the least ordinate, so every slope is non-negative.
pub fn lower_hull(points: &[PolygonPoint]) -> Vec<Edge> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup_by_key(|p| p.x);
    let mut hull: Vec<PolygonPoint> = Vec::with_capacity(pts.len());
    for pt in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // pop b unless a -> b -> pt turns strictly left
            let cross = (b.x as i128 - a.x as i128) * (pt.y as i128 - a.y as i128)
                - (b.y as i128 - a.y as i128) * (pt.x as i128 - a.x as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2).map(|w| Edge::between(w[0], w[1])).collect()
}

/// The φ-Newton polygon of `f` at `p`, with the expansion it was built from.
#[derive(Debug, Clone)]
pub struct NewtonPolygon {
    phi: IntPoly,
    p: Prime,
    field: Arc<FqField>,
    expansion: PhiExpansion,
    points: Vec<PolygonPoint>,
    edges: Vec<Edge>,
}

impl NewtonPolygon {
    pub fn phi(&self) -> &IntPoly {
        &self.phi
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    /// Residue field `F_p[x]/(φ)` of the residual coefficients.
    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn expansion(&self) -> &PhiExpansion {
        &self.expansion
    }

    /// Finite points, ordered by abscissa.
    pub fn points(&self) -> &[PolygonPoint] {
        &self.points
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn principal_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.is_principal())
    }

    /// Hull vertices, left to right.
    pub fn vertices(&self) -> Vec<PolygonPoint> {
        let mut out: Vec<PolygonPoint> = self.edges.iter().map(|e| e.start).collect();
        match self.edges.last() {
            Some(e) => out.push(e.end),
            None => out.extend(self.points.first().copied()),
        }
        out
    }

    /// Total length of the principal part; equals the multiplicity of φ̄ in
    /// f̄.
    pub fn principal_length(&self) -> usize {
        self.principal_edges().map(|e| e.length).sum()
    }

    /// Residual polynomial of a principal edge, normalised to be monic.
    ///
    /// The coefficient of `Y^k` comes from the lattice point `k·e` steps left
    /// of the right endpoint: the digit there divided by `p` to the height of
    /// the edge line, reduced into `F_p[x]/(φ)`. Points strictly above the
    /// edge contribute zero.
    pub fn residual_poly(&self, edge: &Edge) -> Result<FqPoly, PolygonError> {
        if !edge.is_principal() || !self.edges.contains(edge) {
            return Err(PolygonError::NotPrincipal(*edge));
        }
        let n = self.expansion.phi_degree();
        let digits = self.expansion.digits();
        let pb = self.p.to_bigint();
        let e = edge.slope_den as usize;
        let l = edge.slope_num;
        let t = edge.residual_degree();
        let coeffs = (0..=t)
            .map(|k| {
                let x = edge.end.x - k * e;
                let height = edge.end.y - k as u64 * l;
                let digit = &digits[n - x];
                if digit.is_zero() {
                    return self.field.zero();
                }
                let scale = pb.pow(height as u32);
                debug_assert!(digit.coeffs().iter().all(|c| (c % &scale).is_zero()));
                self.field.from_int_poly(&digit.div_exact(&scale))
            })
            .collect();
        let t_poly = FqPoly::new(self.field.clone(), coeffs);
        debug_assert_eq!(t_poly.degree(), Some(t));
        Ok(t_poly.monic())
    }
}

/// Build the φ-Newton polygon of `f` with respect to `p`.
///
/// `phi` must be monic and irreducible mod `p`, φ̄ must divide f̄, and `phi`
/// must not divide `f` over the integers.
pub fn build_polygon(f: &IntPoly, phi: &IntPoly, p: Prime) -> Result<NewtonPolygon, PolygonError> {
    if !f.is_monic() {
        return Err(PolygonError::NotMonic(f.clone()));
    }
    if !phi.is_monic() {
        return Err(PolygonError::NotMonic(phi.clone()));
    }
    let field = FqField::new(p, phi).map_err(|source| PolygonError::BadBase {
        phi: phi.clone(),
        p: p.get(),
        source,
    })?;
    let expansion = phi_expand(f, phi)?;
    let constant = &expansion.digits()[0];
    if constant.is_zero() {
        return Err(PolygonError::BaseDividesPolynomial {
            f: f.clone(),
            phi: phi.clone(),
        });
    }
    if gauss_valuation(constant, p) == Valuation::Finite(0) {
        return Err(PolygonError::BaseNotAFactor {
            f: f.clone(),
            phi: phi.clone(),
            p: p.get(),
        });
    }
    let n = expansion.phi_degree();
    let mut points: Vec<PolygonPoint> = expansion
        .digits()
        .iter()
        .enumerate()
        .filter_map(|(i, a)| gauss_valuation(a, p).finite().map(|y| PolygonPoint { x: n - i, y }))
        .collect();
    points.sort();
    let edges = lower_hull(&points);
    Ok(NewtonPolygon {
        phi: phi.clone(),
        p,
        field: Arc::new(field),
        expansion,
        points,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::factor_mod_p;
    use proptest::prelude::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn pt(x: usize, y: u64) -> PolygonPoint {
        PolygonPoint { x, y }
    }

    fn sextic(a: i64, m: usize, b: i64, c: i64) -> IntPoly {
        let mut cs = vec![0i64; 7];
        cs[6] = 1;
        cs[m] += a;
        cs[1] += b;
        cs[0] += c;
        IntPoly::from_i64s(&cs)
    }

    #[test]
    fn polygon_x2_x_1_at_2() {
        // d_2 = (b-a)x + 1+c-a = 8x + 16 for (a,b,c) = (8,16,23)
        let f = sextic(8, 2, 16, 23);
        let poly = build_polygon(&f, &IntPoly::from_i64s(&[1, 1, 1]), pr(2)).unwrap();
        assert_eq!(poly.points(), &[pt(0, 0), pt(1, 0), pt(2, 1), pt(3, 3)]);
        let principal: Vec<_> = poly.principal_edges().copied().collect();
        assert_eq!(principal.len(), 2);
        assert_eq!((principal[0].start, principal[0].end), (pt(1, 0), pt(2, 1)));
        assert_eq!((principal[0].slope_num, principal[0].slope_den), (1, 1));
        assert_eq!((principal[1].start, principal[1].end), (pt(2, 1), pt(3, 3)));
        for e in &principal {
            assert_eq!(poly.residual_poly(e).unwrap().degree(), Some(1));
        }
        // the slope-0 segment is kept but is not principal
        assert_eq!(poly.edges()[0].slope_num, 0);
        assert!(poly.residual_poly(&poly.edges()[0]).is_err());
    }

    #[test]
    fn polygon_x_minus_1_at_3() {
        let f = sextic(9, 2, 9, 8);
        let poly = build_polygon(&f, &IntPoly::linear(-1), pr(3)).unwrap();
        // constant digit a+b+c+1 = 27
        assert_eq!(
            poly.points(),
            &[pt(0, 0), pt(1, 1), pt(2, 1), pt(3, 0), pt(4, 1), pt(5, 1), pt(6, 3)]
        );
        let principal: Vec<_> = poly.principal_edges().copied().collect();
        assert_eq!(principal.len(), 2);
        assert_eq!((principal[0].start, principal[0].end), (pt(3, 0), pt(5, 1)));
        assert_eq!((principal[0].slope_num, principal[0].slope_den), (1, 2));
        assert_eq!(principal[0].residual_degree(), 1);
        assert_eq!(poly.residual_poly(&principal[0]).unwrap().degree(), Some(1));
    }

    #[test]
    fn polygon_x_at_2() {
        let f = sextic(15, 2, 8, 128);
        let poly = build_polygon(&f, &IntPoly::linear(0), pr(2)).unwrap();
        assert_eq!(poly.points(), &[pt(0, 0), pt(4, 0), pt(5, 3), pt(6, 7)]);
        let principal: Vec<_> = poly.principal_edges().copied().collect();
        assert_eq!((principal[0].start, principal[0].end), (pt(4, 0), pt(5, 3)));
        assert_eq!((principal[1].start, principal[1].end), (pt(5, 3), pt(6, 7)));
    }

    #[test]
    fn quadratic_residual_x_plus_1() {
        // (x+1)-digits of x^6+15x^2+8x+128, low to high:
        // 136, -28, 30, -20, 15, -6, 1  -> valuations 3,2,1,2,0,1,0
        let f = sextic(15, 2, 8, 128);
        let poly = build_polygon(&f, &IntPoly::linear(1), pr(2)).unwrap();
        let ds: Vec<i64> = poly
            .expansion()
            .digits()
            .iter()
            .map(|d| i64::try_from(d.coeff(0)).unwrap())
            .collect();
        assert_eq!(ds, vec![136, -28, 30, -20, 15, -6, 1]);
        let long = poly
            .principal_edges()
            .find(|e| e.length == 2 && e.slope_num == 1 && e.slope_den == 1)
            .copied()
            .unwrap();
        assert_eq!((long.start, long.end), (pt(4, 1), pt(6, 3)));
        let t = poly.residual_poly(&long).unwrap();
        // 30/2, -28/4, 136/8 = 15, -7, 17 -> all odd: Y^2 + Y + 1, no root in F_2
        assert_eq!(t.to_string(), "Y^2+Y+1");
        let k = poly.field();
        for y in k.elements() {
            assert!(!t.eval(&y).is_zero());
        }
    }

    #[test]
    fn build_errors() {
        let f = sextic(8, 2, 8, 7);
        assert!(matches!(
            build_polygon(&f, &IntPoly::linear(0), pr(2)),
            Err(PolygonError::BaseNotAFactor { .. })
        ));
        assert!(matches!(
            build_polygon(&f, &IntPoly::from_i64s(&[1, 0, 1]), pr(2)),
            Err(PolygonError::BadBase { .. })
        ));
        let g = &IntPoly::linear(1) * &IntPoly::from_i64s(&[1, 0, 0, 0, 0, 1]);
        assert!(matches!(
            build_polygon(&g, &IntPoly::linear(1), pr(2)),
            Err(PolygonError::BaseDividesPolynomial { .. })
        ));
        assert!(matches!(
            build_polygon(&IntPoly::from_i64s(&[1, 2]), &IntPoly::linear(1), pr(2)),
            Err(PolygonError::NotMonic(_))
        ));
    }

    #[test]
    fn principal_length_matches_multiplicity() {
        for (f, p) in [
            (sextic(8, 2, 16, 23), 2u64),
            (sextic(9, 2, 9, 8), 3),
            (sextic(15, 2, 8, 128), 2),
            (sextic(7, 4, 16, 64), 2),
            (sextic(10, 3, 27, 243), 3),
        ] {
            let p = pr(p);
            for (g, mult) in factor_mod_p(&f, p).unwrap().factors {
                let phi = g.lift_prime_field();
                let poly = build_polygon(&f, &phi, p).unwrap();
                assert_eq!(poly.principal_length(), mult as usize, "{f} {phi}");
            }
        }
    }

    /// Lower envelope value at `x` over all segments between point pairs, as
    /// a reduced fraction, by brute force.
    fn envelope_at(points: &[PolygonPoint], x: usize) -> (i128, i128) {
        let mut best: Option<(i128, i128)> = None;
        for a in points {
            for b in points {
                if a.x > x || b.x < x || (a.x == b.x && a.x != x) {
                    continue;
                }
                let (num, den) = if a.x == b.x {
                    (a.y as i128, 1)
                } else {
                    let dx = (b.x - a.x) as i128;
                    let num = a.y as i128 * dx + (b.y as i128 - a.y as i128) * (x - a.x) as i128;
                    (num, dx)
                };
                best = Some(match best {
                    Some((bn, bd)) if bn * den <= num * bd => (bn, bd),
                    _ => (num, den),
                });
            }
        }
        best.unwrap()
    }

    proptest! {
        #[test]
        fn hull_matches_brute_force(ys in proptest::collection::vec(proptest::option::of(0u64..12), 1..10)) {
            let mut points: Vec<PolygonPoint> = ys
                .iter()
                .enumerate()
                .filter_map(|(x, y)| y.map(|y| pt(x, y)))
                .collect();
            points.retain(|p| p.x > 0);
            points.push(pt(0, 0));
            points.sort();
            let edges = lower_hull(&points);
            // contiguous, strictly convex
            for w in edges.windows(2) {
                prop_assert_eq!(w[0].end, w[1].start);
                let lhs = (w[0].slope_num * w[1].slope_den) as i128;
                let rhs = (w[1].slope_num * w[0].slope_den) as i128;
                prop_assert!(lhs < rhs);
            }
            // every integer abscissa on the hull agrees with the envelope
            for e in &edges {
                for x in e.start.x..=e.end.x {
                    let (n, d) = envelope_at(&points, x);
                    let hull_num = e.start.y as i128 * e.length as i128
                        + (e.end.y as i128 - e.start.y as i128) * (x - e.start.x) as i128;
                    prop_assert_eq!(hull_num * d, n * e.length as i128);
                }
            }
        }
    }
}
