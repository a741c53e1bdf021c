use std::collections::BTreeSet;

use num_integer::Integer;

use super::{HalfSpace, PolytopeError};

/// Fraction-free (Bareiss) determinant.
pub(crate) fn det(mut m: Vec<Vec<i128>>) -> Result<i128, PolytopeError> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j]
                    .checked_mul(m[k][k])
                    .and_then(|a| m[i][k].checked_mul(m[k][j]).and_then(|b| a.checked_sub(b)))
                    .ok_or(PolytopeError::Overflow)?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

pub(crate) fn rank(rows: &[Vec<i64>]) -> usize {
    // Gaussian elimination over ℚ via fraction-free row ops in i128
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for j in 0..cols {
                    m[i][j] = m[i][j] * a - m[r][j] * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| g.gcd(&x));
                if g > 1 {
                    for x in m[i].iter_mut() {
                        *x /= g;
                    }
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Normal of the hyperplane through `d` points in `ℤ^d` (generalized cross
/// product of the difference vectors); zero if they are affinely dependent.
fn hyperplane_normal(pts: &[&Vec<i64>]) -> Result<Vec<i64>, PolytopeError> {
    let d = pts[0].len();
    let rows: Vec<Vec<i128>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0]).map(|(a, b)| (a - b) as i128).collect())
        .collect();
    let mut normal = Vec::with_capacity(d);
    for j in 0..d {
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
            .collect();
        let v = det(minor)?;
        let v = if j % 2 == 0 { v } else { -v };
        normal.push(i64::try_from(v).map_err(|_| PolytopeError::Overflow)?);
    }
    Ok(normal)
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// All facets by scanning `d`-subsets of vertices: a spanning hyperplane
/// with every vertex weakly on one side is facet-defining.
pub(crate) fn enumerate_facets(vertices: &[Vec<i64>]) -> Result<Vec<HalfSpace>, PolytopeError> {
    let d = vertices[0].len();
    let n = vertices.len();
    let mut found: BTreeSet<HalfSpace> = BTreeSet::new();
    let mut idx: Vec<usize> = (0..d).collect();
    if n < d {
        return Err(PolytopeError::NotFullDimensional);
    }
    loop {
        let pts: Vec<&Vec<i64>> = idx.iter().map(|&i| &vertices[i]).collect();
        let mut a = hyperplane_normal(&pts)?;
        if a.iter().any(|&x| x != 0) {
            let g = a.iter().fold(0i64, |g, &x| g.gcd(&x));
            for x in a.iter_mut() {
                *x /= g;
            }
            let b = dot(&a, pts[0]);
            let (mut le, mut ge) = (true, true);
            for v in vertices {
                let s = dot(&a, v);
                le &= s <= b;
                ge &= s >= b;
                if !le && !ge {
                    break;
                }
            }
            if le {
                found.insert(HalfSpace { normal: a, rhs: b });
            } else if ge {
                found.insert(HalfSpace {
                    normal: a.iter().map(|x| -x).collect(),
                    rhs: -b,
                });
            }
        }
        // next combination
        let mut k = d;
        loop {
            if k == 0 {
                return Ok(found.into_iter().collect());
            }
            k -= 1;
            if idx[k] < n - d + k {
                idx[k] += 1;
                for j in k + 1..d {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det(vec![vec![2, 1], vec![1, 3]]).unwrap(), 5);
        assert_eq!(det(vec![vec![0, 1], vec![1, 0]]).unwrap(), -1);
        assert_eq!(
            det(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]).unwrap(),
            -3
        );
        assert_eq!(det(vec![vec![1, 2], vec![2, 4]]).unwrap(), 0);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[vec![1, 0, 0], vec![0, 1, 0]]), 2);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![0, 0]]), 0);
    }

    #[test]
    fn triangle_facets() {
        let v = vec![vec![1, 0], vec![0, 1], vec![-1, -1]];
        let f = enumerate_facets(&v).unwrap();
        let normals: BTreeSet<Vec<i64>> = f.iter().map(|h| h.normal.clone()).collect();
        assert_eq!(
            normals,
            BTreeSet::from([vec![1, 1], vec![-2, 1], vec![1, -2]])
        );
        assert!(f.iter().all(|h| h.rhs == 1));
    }
}
