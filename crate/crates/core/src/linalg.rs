//! Exact dense linear algebra over an arbitrary coefficient field.
//!
//! Matrices are `Vec<Vec<Elem>>`, row-major.  The coefficient fields carry
//! exact division, so plain Gauss–Jordan elimination with the first nonzero
//! pivot is canonical — no numeric pivoting strategy is involved.  The
//! routines are fallible because inverting a pivot can fail in residue rings
//! whose modulus is not actually prime; that error is the caller's signal.

use crate::field::Field;
use crate::Result;

/// Reduce `mat` to reduced row echelon form in place.  Returns the pivot
/// column of each nonzero row, in order.
pub fn rref<F: Field>(field: &F, mat: &mut [Vec<F::Elem>]) -> Result<Vec<usize>> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&mat[i][c])) else {
            continue;
        };
        mat.swap(r, p);
        let inv = field.inv(&mat[r][c])?;
        for j in c..cols {
            mat[r][j] = field.mul(&mat[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !field.is_zero(&mat[i][c]) {
                let factor = mat[i][c].clone();
                for j in c..cols {
                    let t = field.mul(&mat[r][j], &factor);
                    mat[i][j] = field.sub(&mat[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// Rank of the matrix.
pub fn rank<F: Field>(field: &F, mat: &[Vec<F::Elem>]) -> Result<usize> {
    let mut work = mat.to_vec();
    Ok(rref(field, &mut work)?.len())
}

/// Basis of the null space { x : A·x = 0 } of an A with `cols` columns
/// (passed explicitly so an empty matrix still knows its width).  One basis
/// vector per free column, unit in that coordinate.
pub fn kernel_basis<F: Field>(
    field: &F,
    mat: &[Vec<F::Elem>],
    cols: usize,
) -> Result<Vec<Vec<F::Elem>>> {
    let mut work = mat.to_vec();
    for row in &work {
        assert_eq!(row.len(), cols, "row width disagrees with the column count");
    }
    let pivots = rref(field, &mut work)?;
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for fc in 0..cols {
        if is_pivot[fc] {
            continue;
        }
        let mut v = vec![field.zero(); cols];
        v[fc] = field.one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(&work[ri][fc]);
        }
        basis.push(v);
    }
    Ok(basis)
}

/// One solution of A·x = b, or None when the system is inconsistent.  Free
/// coordinates are set to zero.
pub fn solve<F: Field>(
    field: &F,
    mat: &[Vec<F::Elem>],
    rhs: &[F::Elem],
) -> Result<Option<Vec<F::Elem>>> {
    let rows = mat.len();
    assert_eq!(rows, rhs.len(), "one right-hand entry per row required");
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut aug: Vec<Vec<F::Elem>> = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut aug)?;
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); cols];
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[ri][cols].clone();
    }
    Ok(Some(x))
}

/// Reduce v against rows with known distinct pivots (monic at the pivot),
/// returning the surviving vector and its pivot, or None if v is in the span.
fn echelon_reduce<F: Field>(
    field: &F,
    rows: &std::collections::BTreeMap<usize, Vec<F::Elem>>,
    mut v: Vec<F::Elem>,
) -> Result<Option<(usize, Vec<F::Elem>)>> {
    loop {
        let Some(p) = v.iter().position(|c| !field.is_zero(c)) else {
            return Ok(None);
        };
        match rows.get(&p) {
            Some(row) => {
                let c = v[p].clone();
                for (vj, rj) in v.iter_mut().zip(row) {
                    let t = field.mul(&c, rj);
                    *vj = field.sub(vj, &t);
                }
            }
            None => {
                let inv = field.inv(&v[p])?;
                for vj in v.iter_mut() {
                    *vj = field.mul(vj, &inv);
                }
                return Ok(Some((p, v)));
            }
        }
    }
}

/// Basis of span(outer) modulo span(inner): the reduced representatives of
/// the outer vectors that extend inner's span, in input order.
pub fn complement_basis<F: Field>(
    field: &F,
    inner: &[Vec<F::Elem>],
    outer: &[Vec<F::Elem>],
) -> Result<Vec<Vec<F::Elem>>> {
    let mut rows: std::collections::BTreeMap<usize, Vec<F::Elem>> = std::collections::BTreeMap::new();
    for v in inner {
        if let Some((p, w)) = echelon_reduce(field, &rows, v.clone())? {
            rows.insert(p, w);
        }
    }
    let mut out = Vec::new();
    for v in outer {
        if let Some((p, w)) = echelon_reduce(field, &rows, v.clone())? {
            out.push(w.clone());
            rows.insert(p, w);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rationals};
    use crate::poly::{qring, Polynomial};
    use crate::ratfunc::RatFuncField;

    #[test]
    fn rref_finds_rank_and_pivots() {
        let f = Rationals;
        let mut m = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(1), rat(1), rat(1)],
        ];
        let pivots = rref(&f, &mut m).unwrap();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(rank(&f, &[vec![rat(0), rat(0)], vec![rat(0), rat(1)]]).unwrap(), 1);
    }

    #[test]
    fn kernel_dimension_complements_rank() {
        let f = Rationals;
        let m = vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(6)]];
        let ker = kernel_basis(&f, &m, 3).unwrap();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for row in &m {
                let dot = (0..3).fold(rat(0), |acc, j| acc + &row[j] * &v[j]);
                assert_eq!(dot, rat(0));
            }
        }
        // Empty matrix: the whole space is the kernel.
        assert_eq!(kernel_basis(&f, &[], 4).unwrap().len(), 4);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = Rationals;
        let m = vec![vec![rat(2), rat(1)], vec![rat(1), rat(-1)]];
        let x = solve(&f, &m, &[rat(4), rat(-1)]).unwrap().unwrap();
        assert_eq!(x, vec![rat(1), rat(2)]);
        let sing = vec![vec![rat(1), rat(1)], vec![rat(1), rat(1)]];
        assert!(solve(&f, &sing, &[rat(0), rat(1)]).unwrap().is_none());
        assert!(solve(&f, &sing, &[rat(1), rat(1)]).unwrap().is_some());
    }

    #[test]
    fn complement_extends_a_subspace() {
        let f = Rationals;
        // inner spans {(1,1,0)}, outer spans {(1,1,0),(1,0,0),(0,0,1)}.
        let inner = vec![vec![rat(2), rat(2), rat(0)]];
        let outer = vec![
            vec![rat(1), rat(1), rat(0)],
            vec![rat(1), rat(0), rat(0)],
            vec![rat(3), rat(1), rat(1)],
        ];
        let comp = complement_basis(&f, &inner, &outer).unwrap();
        assert_eq!(comp.len(), 2);
        // First survivor reduces to a vector pivoted on coordinate 1.
        assert_eq!(comp[0], vec![rat(0), rat(1), rat(0)]);
        assert_eq!(comp[1], vec![rat(0), rat(0), rat(1)]);
        // A full-containment case yields nothing.
        assert!(complement_basis(&f, &outer, &inner).unwrap().is_empty());
    }

    #[test]
    fn kernel_over_a_function_field() {
        // Rows [1, t] and [t, t^2] are proportional over Q(t).
        let params = qring(&["t"]);
        let f = RatFuncField::new(params.clone());
        let t = f.from_poly(Polynomial::var(&params, 0));
        let row1 = vec![f.one(), t.clone()];
        let row2 = vec![t.clone(), f.mul(&t, &t)];
        let ker = kernel_basis(&f, &[row1, row2], 2).unwrap();
        assert_eq!(ker.len(), 1);
        // The kernel vector is (-t, 1).
        assert_eq!(ker[0][1], f.one());
        assert_eq!(ker[0][0], f.neg(&t));
    }
}
