//! Placement of local operators inside tensor products.
//!
//! Basis states of `V_0 ⊗ … ⊗ V_{k-1}` are indexed row-major:
//! `idx = ((i_0·d_1 + i_1)·d_2 + i_2)…`, the convention used by `kron`.

use super::{ExactError, Matrix, Ring};

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

fn decompose(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    out
}

/// Embeds `op`, acting on `V_{sites[0]} ⊗ V_{sites[1]} ⊗ …` (in that order),
/// into the full product space described by `dims`, acting as the identity
/// on every other factor.
pub fn embed<T: Ring>(op: &Matrix<T>, dims: &[usize], sites: &[usize]) -> Result<Matrix<T>, ExactError> {
    let local: usize = sites.iter().map(|&s| dims.get(s).copied().unwrap_or(0)).product();
    if op.shape() != (local, local) {
        return Err(ExactError::Layout(format!(
            "operator {:?} does not act on sites {sites:?} of {dims:?}",
            op.shape()
        )));
    }
    let mut seen = vec![false; dims.len()];
    for &s in sites {
        if s >= dims.len() || seen[s] {
            return Err(ExactError::Layout(format!("bad site list {sites:?}")));
        }
        seen[s] = true;
    }
    let total: usize = dims.iter().product();
    let st = strides(dims);
    let local_dims: Vec<usize> = sites.iter().map(|&s| dims[s]).collect();
    let rest: Vec<usize> = (0..dims.len()).filter(|k| !seen[*k]).collect();
    let rest_dims: Vec<usize> = rest.iter().map(|&k| dims[k]).collect();
    let rest_total: usize = rest_dims.iter().product();

    // offset of each local multi-index inside the full index
    let local_offset: Vec<usize> = (0..local)
        .map(|l| decompose(l, &local_dims).iter().zip(sites).map(|(i, &s)| i * st[s]).sum())
        .collect();
    let rest_offset: Vec<usize> = (0..rest_total)
        .map(|r| decompose(r, &rest_dims).iter().zip(&rest).map(|(i, &k)| i * st[k]).sum())
        .collect();

    let mut out = Matrix::zeros(total, total);
    for li in 0..local {
        for lj in 0..local {
            let x = op.get(li, lj);
            if x.is_zero() {
                continue;
            }
            for &ro in &rest_offset {
                out.set(ro + local_offset[li], ro + local_offset[lj], x.clone());
            }
        }
    }
    Ok(out)
}

/// Conjugates by the factor permutation: factor `k` of the input becomes
/// factor `perm[k]` of the output.
pub fn permute_factors<T: Ring>(op: &Matrix<T>, dims: &[usize], perm: &[usize]) -> Result<Matrix<T>, ExactError> {
    let total: usize = dims.iter().product();
    if op.shape() != (total, total) || perm.len() != dims.len() {
        return Err(ExactError::Layout("permutation does not match layout".into()));
    }
    let mut new_dims = vec![0; dims.len()];
    for (k, &p) in perm.iter().enumerate() {
        new_dims[p] = dims[k];
    }
    let nst = strides(&new_dims);
    let map: Vec<usize> = (0..total)
        .map(|i| decompose(i, dims).iter().enumerate().map(|(k, x)| x * nst[perm[k]]).sum())
        .collect();
    let mut out = Matrix::zeros(total, total);
    for i in 0..total {
        for j in 0..total {
            let x = op.get(i, j);
            if !x.is_zero() {
                out.set(map[i], map[j], x.clone());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::ScalarMatrix;

    fn swap2() -> ScalarMatrix {
        ScalarMatrix::from_ints(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]])
    }

    #[test]
    fn embed_matches_kron_on_leading_sites() {
        let p = swap2();
        let a = embed(&p, &[2, 2, 2], &[0, 1]).unwrap();
        assert_eq!(a, p.kron(&ScalarMatrix::identity(2)));
        let b = embed(&p, &[2, 2, 2], &[1, 2]).unwrap();
        assert_eq!(b, ScalarMatrix::identity(2).kron(&p));
    }

    #[test]
    fn swap_on_first_two_qubits() {
        // explicit index permutation oracle: |i j k> -> |j i k>
        let m = swap2().kron(&ScalarMatrix::identity(2));
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let src = i * 4 + j * 2 + k;
                    let dst = j * 4 + i * 2 + k;
                    for r in 0..8 {
                        let expect = if r == dst { 1 } else { 0 };
                        assert_eq!(*m.get(r, src), crate::exact_core::Scalar::from_int(expect));
                    }
                }
            }
        }
    }

    #[test]
    fn embed_rejects_bad_layout() {
        let p = swap2();
        assert!(embed(&p, &[2, 3, 2], &[0, 1]).is_err());
        assert!(embed(&p, &[2, 2, 2], &[0, 0]).is_err());
    }
}
