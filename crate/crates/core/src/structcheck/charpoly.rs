use crate::exactpoly::univariate::UPoly;
use rug::Integer;

/// Monic characteristic polynomial `det(xI - M)` by fraction-free
/// elimination over `Z[x]`.
pub fn charpoly(m: &[Vec<i64>]) -> UPoly {
    let big: Vec<Vec<Integer>> = m.iter().map(|row| row.iter().map(|&x| Integer::from(x)).collect()).collect();
    charpoly_big(&big)
}

pub fn charpoly_big(m: &[Vec<Integer>]) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::constant(1);
    }
    let mut a: Vec<Vec<UPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    let c = Integer::from(-&m[i][k]);
                    if i == k {
                        UPoly::new(vec![c, Integer::from(1)])
                    } else {
                        UPoly::new(vec![c])
                    }
                })
                .collect()
        })
        .collect();
    let mut sign = 1i32;
    let mut prev = UPoly::constant(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return UPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.div_exact(&prev).expect("Bareiss quotients are exact");
            }
            a[i][k] = UPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

pub(crate) fn mat_mul_big(a: &[Vec<Integer>], b: &[Vec<Integer>]) -> Vec<Vec<Integer>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    let mut s = Integer::new();
                    for l in 0..n {
                        s += Integer::from(&a[i][l] * &b[l][k]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// `p(M)` by Horner's rule.
pub fn eval_at_matrix(p: &UPoly, m: &[Vec<i64>]) -> Vec<Vec<Integer>> {
    let n = m.len();
    let big: Vec<Vec<Integer>> = m.iter().map(|row| row.iter().map(|&x| Integer::from(x)).collect()).collect();
    let mut acc: Vec<Vec<Integer>> = vec![vec![Integer::new(); n]; n];
    for c in p.coeffs().iter().rev() {
        acc = mat_mul_big(&acc, &big);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::fixtures::{n249, n35};

    fn id(n: usize) -> Vec<Vec<i64>> {
        (0..n).map(|i| (0..n).map(|k| (i == k) as i64).collect()).collect()
    }

    #[test]
    fn identity_gives_power() {
        assert_eq!(charpoly(&id(5)), UPoly::linear_root(1).pow(5));
    }

    #[test]
    fn n35_b1() {
        let want = UPoly::linear_root(4).mul(&UPoly::linear_root(-1)).mul(&UPoly::from_i64(&[2, -6, 0, 1]));
        assert_eq!(charpoly(&n35().matrices[1]), want);
    }

    #[test]
    fn n249_b1() {
        let want = UPoly::linear_root(62).mul(&UPoly::from_i64(&[12, -57, -93, 1, 1]));
        assert_eq!(charpoly(&n249().matrices[1]), want);
    }

    #[test]
    fn zero_pivot_needs_swap() {
        // permutation matrix has zero diagonal after the first step
        let m = vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]];
        assert_eq!(charpoly(&m), UPoly::from_i64(&[-1, 0, 0, 1]));
        assert!(eval_at_matrix(&charpoly(&m), &m).iter().flatten().all(|x| *x == 0));
    }
}
