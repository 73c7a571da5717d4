use crate::tri::{face_verts, Triangulation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("homology_h1 requires a closed 3-manifold triangulation")]
    NotClosedManifold,
}

/// Smith normal form diagonal of an integer matrix, nonzero entries first in
/// divisibility order. Pivoting by minimal absolute value; all arithmetic
/// arbitrary precision.
pub fn smith_invariant_factors(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut factors = Vec::new();
    let mut top = 0usize;
    while top < rows.min(cols) {
        // Find a pivot of minimal absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in top..cols {
                if !m[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(top, pj);
        }
        loop {
            let mut clean = true;
            for i in top + 1..rows {
                if !m[i][top].is_zero() {
                    let q = div_round(&m[i][top], &m[top][top]);
                    for j in top..cols {
                        let sub = &q * &m[top][j];
                        m[i][j] -= sub;
                    }
                    if !m[i][top].is_zero() {
                        m.swap(top, i);
                        clean = false;
                    }
                }
            }
            for j in top + 1..cols {
                if !m[top][j].is_zero() {
                    let q = div_round(&m[top][j], &m[top][top]);
                    for i in top..rows {
                        let sub = &q * &m[i][top];
                        m[i][j] -= sub;
                    }
                    if !m[top][j].is_zero() {
                        for row in m.iter_mut() {
                            row.swap(top, j);
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        // Enforce divisibility of the remaining block by the pivot.
        let p = m[top][top].clone();
        let mut disturbed = false;
        'outer: for i in top + 1..rows {
            for j in top + 1..cols {
                if !(&m[i][j] % &p).is_zero() {
                    for jj in top..cols {
                        let add = m[i][jj].clone();
                        m[top][jj] += add;
                    }
                    disturbed = true;
                    break 'outer;
                }
            }
        }
        if disturbed {
            continue;
        }
        factors.push(m[top][top].abs());
        top += 1;
    }
    factors
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // Truncated quotient; the surrounding loop re-pivots on any remainder,
    // and the pivot magnitude strictly decreases, so this terminates.
    a.div_rem(b).0
}

pub fn rank(m: Vec<Vec<BigInt>>) -> usize {
    smith_invariant_factors(m).iter().filter(|f| !f.is_zero()).count()
}

/// Boundary map from triangle classes to edge classes of the quotient cell
/// structure (rows = edges, columns = triangles).
pub fn boundary2(tri: &Triangulation) -> Vec<Vec<BigInt>> {
    let skel = tri.skeleton();
    let mut m = vec![vec![BigInt::zero(); skel.triangles.len()]; skel.edges.len()];
    for (ti, tc) in skel.triangles.iter().enumerate() {
        let (t, f) = tc.embeddings[0];
        let vs = face_verts(f);
        // Oriented boundary of the 2-simplex [v0,v1,v2].
        for (a, b, coeff) in [(vs[0], vs[1], 1), (vs[1], vs[2], 1), (vs[0], vs[2], -1)] {
            let e = crate::tri::edge_index(a, b);
            let ec = skel.edge_class(t, e);
            let sign = if skel.edge_is_forward(t, e) { coeff } else { -coeff };
            m[ec][ti] += BigInt::from(sign);
        }
    }
    m
}

/// Boundary map from edge classes to vertex classes.
pub fn boundary1(tri: &Triangulation) -> Vec<Vec<BigInt>> {
    let skel = tri.skeleton();
    let mut m = vec![vec![BigInt::zero(); skel.edges.len()]; skel.vertices.len()];
    for (ei, ec) in skel.edges.iter().enumerate() {
        let (tail, head) = ec.endpoints;
        m[head][ei] += BigInt::from(1);
        m[tail][ei] -= BigInt::from(1);
    }
    m
}

/// First homology of a closed 3-manifold triangulation: invariant factors in
/// divisibility order, with one `0` entry per free rank.
pub fn homology_h1(tri: &Triangulation) -> Result<Vec<BigInt>, HomologyError> {
    if !tri.validate().is_closed_3_manifold {
        return Err(HomologyError::NotClosedManifold);
    }
    Ok(h1_of_complex(tri))
}

/// H1 of the cell complex without the manifold precondition (used internally
/// on pseudo-triangulations).
pub fn h1_of_complex(tri: &Triangulation) -> Vec<BigInt> {
    let skel = tri.skeleton();
    let d1 = boundary1(tri);
    let d2 = boundary2(tri);
    let r1 = rank(d1);
    let f2 = smith_invariant_factors(d2);
    let r2 = f2.iter().filter(|f| !f.is_zero()).count();
    let free = skel.edges.len() - r1 - r2;
    let mut out: Vec<BigInt> = f2
        .into_iter()
        .filter(|f| !f.is_zero() && *f != BigInt::from(1))
        .collect();
    out.extend(std::iter::repeat(BigInt::zero()).take(free));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn snf_small() {
        let m = bi(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let f = smith_invariant_factors(m);
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]);
    }

    #[test]
    fn snf_divisibility_chain() {
        let m = bi(&[&[-6, 111, -36, 6], &[5, -672, 210, 74], &[0, -255, 81, 24], &[-7, 255, -81, -10]]);
        let f = smith_invariant_factors(m);
        assert_eq!(f, vec![BigInt::one(), BigInt::from(3), BigInt::from(21)]);
        for w in f.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn one_tet_spheres_have_trivial_h1() {
        for tri in [crate::build::one_tet_sphere(), crate::build::one_tet_sphere_other()] {
            assert!(homology_h1(&tri).unwrap().is_empty());
        }
    }

    #[test]
    fn d1_d2_compose_to_zero() {
        let tri = crate::build::one_tet_sphere();
        let d1 = boundary1(&tri);
        let d2 = boundary2(&tri);
        let e = d2.len();
        let t = if e == 0 { 0 } else { d2[0].len() };
        for vi in 0..d1.len() {
            for tj in 0..t {
                let mut sum = BigInt::zero();
                for ei in 0..e {
                    sum += &d1[vi][ei] * &d2[ei][tj];
                }
                assert!(sum.is_zero());
            }
        }
    }
}
