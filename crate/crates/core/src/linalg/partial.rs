//! Partial traces and subsystem permutations on tensor-product spaces.

use crate::error::{Error, Result};

use super::matrix::ComplexMatrix;

fn check_dims(m: &ComplexMatrix, dims: &[usize]) -> Result<usize> {
    if dims.is_empty() || dims.iter().any(|&d| d == 0) {
        return Err(Error::Dimension(format!("invalid subsystem dims {dims:?}")));
    }
    let total: usize = dims.iter().product();
    if !m.is_square() || m.rows() != total {
        return Err(Error::Dimension(format!(
            "dims {dims:?} (product {total}) do not match a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok(total)
}

/// Mixed-radix digits of `index` for the given dims, most significant first.
fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
}

fn compose(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (d, n)| acc * n + d)
}

/// Traces out every subsystem not listed in `keep`. The kept subsystems
/// retain their original relative order.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total = check_dims(m, dims)?;
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep_sorted.len() != keep.len() || keep_sorted.iter().any(|&k| k >= dims.len()) {
        return Err(Error::Dimension(format!(
            "keep set {keep:?} is not a set of subsystem indices below {}",
            dims.len()
        )));
    }
    if keep_sorted.is_empty() {
        return Err(Error::Dimension("keep set is empty".into()));
    }
    let kept_dims: Vec<usize> = keep_sorted.iter().map(|&k| dims[k]).collect();
    let kept_total: usize = kept_dims.iter().product();
    let mut out = ComplexMatrix::zeros(kept_total, kept_total);
    let mut row_digits = vec![0; dims.len()];
    let mut col_digits = vec![0; dims.len()];
    let mut kept_r = vec![0; kept_dims.len()];
    let mut kept_c = vec![0; kept_dims.len()];
    let is_kept: Vec<bool> = (0..dims.len()).map(|k| keep_sorted.contains(&k)).collect();
    for r in 0..total {
        digits(r, dims, &mut row_digits);
        for c in 0..total {
            digits(c, dims, &mut col_digits);
            // traced indices must agree
            if (0..dims.len()).any(|k| !is_kept[k] && row_digits[k] != col_digits[k]) {
                continue;
            }
            for (slot, &k) in keep_sorted.iter().enumerate() {
                kept_r[slot] = row_digits[k];
                kept_c[slot] = col_digits[k];
            }
            let rr = compose(&kept_r, &kept_dims);
            let cc = compose(&kept_c, &kept_dims);
            out[(rr, cc)] += m[(r, c)];
        }
    }
    Ok(out)
}

/// Reorders tensor factors. `order[j]` names which factor of `m` ends up in
/// slot `j` of the result.
pub fn permute_subsystems(m: &ComplexMatrix, dims: &[usize], order: &[usize]) -> Result<ComplexMatrix> {
    let total = check_dims(m, dims)?;
    let mut seen = order.to_vec();
    seen.sort_unstable();
    if seen != (0..dims.len()).collect::<Vec<_>>() {
        return Err(Error::Dimension(format!("{order:?} is not a permutation of subsystems")));
    }
    let new_dims: Vec<usize> = order.iter().map(|&k| dims[k]).collect();
    let mut old_digits = vec![0; dims.len()];
    let mut new_digits = vec![0; dims.len()];
    let map: Vec<usize> = (0..total)
        .map(|i| {
            digits(i, dims, &mut old_digits);
            for (j, &k) in order.iter().enumerate() {
                new_digits[j] = old_digits[k];
            }
            compose(&new_digits, &new_dims)
        })
        .collect();
    let mut out = ComplexMatrix::zeros(total, total);
    for r in 0..total {
        for c in 0..total {
            out[(map[r], map[c])] = m[(r, c)];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn trace_of_product_state() {
        let x = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let y = ComplexMatrix::from_real(3, 3, &[1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 5.0, 3.0]).unwrap();
        let xy = x.kron(&y);
        let a = partial_trace(&xy, &[2, 3], &[0]).unwrap();
        assert!(a.max_abs_diff(&x.scale_real(6.0)) < 1e-14);
        let b = partial_trace(&xy, &[2, 3], &[1]).unwrap();
        assert!(b.max_abs_diff(&y.scale_real(5.0)) < 1e-14);
    }

    #[test]
    fn dimension_errors() {
        let m = ComplexMatrix::identity(3);
        assert!(partial_trace(&m, &[2, 2], &[0]).is_err());
        assert!(partial_trace(&ComplexMatrix::identity(4), &[2, 2], &[2]).is_err());
        assert!(partial_trace(&ComplexMatrix::identity(4), &[2, 2], &[]).is_err());
    }

    #[test]
    fn swap_two_factors() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(0.0, 1.0),
                Complex64::new(5.0, 0.0),
                Complex64::new(6.0, 0.0),
                Complex64::new(7.0, -1.0),
            ],
        )
        .unwrap();
        let swapped = permute_subsystems(&a.kron(&b), &[2, 2], &[1, 0]).unwrap();
        assert_eq!(swapped, b.kron(&a));
    }
}
