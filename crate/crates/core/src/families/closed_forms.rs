// SPDX-License-Identifier: Apache-2.0

//! Closed-form path counts for paths and for `G_ij`.
//!
//! Everything is evaluated in exact integer arithmetic; rows with halves are
//! computed doubled and divided at the end.

use num_bigint::BigUint;
use num_rational::Ratio;

use super::FamilyError;

fn to_big(x: i128, what: &str) -> Result<BigUint, FamilyError> {
    u128::try_from(x)
        .map(BigUint::from)
        .map_err(|_| FamilyError::OutOfDomain(format!("{what} evaluated negative ({x})")))
}

fn c2(x: i128) -> i128 {
    x * (x - 1) / 2
}

/// `P_k(i)` on a path of `n` edges, for `0 <= i <= n/2`, `2 <= k <= n`.
pub fn path_pkv(n: u64, i: u64, k: u64) -> Result<BigUint, FamilyError> {
    if i > n / 2 || k < 2 || k > n {
        return Err(FamilyError::OutOfDomain(format!(
            "path form needs 0 <= i <= n/2 and 2 <= k <= n (n={n} i={i} k={k})"
        )));
    }
    let (n, i, k) = (n as i128, i as i128, k as i128);
    let value = if k <= i {
        c2(k)
    } else if k <= n + 1 - i {
        c2(i) + i * (k - i)
    } else {
        c2(i) + i * (n - 2 * i + 1) + (n + 1) * (k - n + i - 1) + c2(n + 2 - i) - c2(k + 1)
    };
    to_big(value, "path P_k(i)")
}

/// `P_k` on a path of `n` edges: `k(n+1) - n - C(k+1, 2)`.
pub fn path_pk(n: u64, k: u64) -> Result<BigUint, FamilyError> {
    if k < 2 || k > n {
        return Err(FamilyError::OutOfDomain(format!("need 2 <= k <= n (n={n} k={k})")));
    }
    let (n, k) = (n as i128, k as i128);
    to_big(k * (n + 1) - n - c2(k + 1), "path P_k")
}

/// `BC_k(i)` on a path of `n` edges.
pub fn path_bck(n: u64, i: u64, k: u64) -> Result<Ratio<BigUint>, FamilyError> {
    Ok(Ratio::new(path_pkv(n, i, k)?, path_pk(n, k)?))
}

fn gij_domain(i: u64, j: u64) -> Result<(), FamilyError> {
    if j < 5 || i < 2 {
        return Err(FamilyError::OutOfDomain(format!(
            "G_ij tables need i >= 2 and j >= 5 (i={i} j={j})"
        )));
    }
    Ok(())
}

/// `p_k` on `G_ij` from the piecewise table.
pub fn gij_pk(i: u64, j: u64, k: u64) -> Result<BigUint, FamilyError> {
    gij_domain(i, j)?;
    let (ii, jj, kk) = (i as i128, j as i128, k as i128);
    let value = match k {
        2 => 3 * ii * jj + 4 * ii + 1,
        3 => 3 * ii * jj + 7 * ii,
        _ if (4..=j + 1).contains(&k) => ii * (3 * jj + 3) + (3 * kk - 5) * (ii - 1) + 6,
        _ if (j + 2..=j + 4).contains(&k) => kk * (3 * ii - 9) + ii * (3 * jj - 6) + 6 * jj + 21,
        _ if (j + 5..=2 * j).contains(&k) => kk * (3 * ii - 9) + ii * (3 * jj - 6) + 6 * jj + 23,
        _ if k == 2 * j + 1 => kk * (-4 * ii + 1) + ii * (17 * jj + 1) - 14 * jj + 13,
        _ if (2 * j + 2..=2 * j + 3).contains(&k) => kk * (-4 * ii - 1) + ii * (17 * jj + 9) - 10 * jj + 9,
        _ => gij_pk_band(ii, jj, kk).ok_or(FamilyError::OutOfTabulatedRange { i, j, k })?,
    };
    to_big(value, "G_ij p_k")
}

/// The four rows parameterized by `2 <= r <= i-1`.
fn gij_pk_band(i: i128, j: i128, k: i128) -> Option<i128> {
    (2..i).find_map(|r| {
        let base = r * (j + 1);
        if (base + 2..=base + 3).contains(&k) {
            Some(-9 * k + i * (9 * j - 3) + 6 * j + 12 * r + 9)
        } else if (base + 4..=(r + 1) * j + r - 1).contains(&k) {
            Some(-9 * k + i * (9 * j - 3) + 6 * j + 12 * r + 11)
        } else if ((r + 1) * j + r..=(r + 1) * j + r + 1).contains(&k) {
            Some(
                k * (4 * i - 3 - 4 * r) + i * (-3 + 5 * j - 4 * r * j - 4 * r)
                    + j * (-2 * r + 4 * r * r)
                    + 6 * r
                    + 4 * r * r
                    + 11,
            )
        } else if k == (r + 1) * j + r + 2 {
            Some(
                k * (-4 * i - 3 + 4 * r) + i * (4 * r * j + 13 * j + 4 * r + 5)
                    + j * (-4 * r * r - 10 * r)
                    - 4 * r * r
                    - 2 * r
                    + 9,
            )
        } else {
            None
        }
    })
}

fn gij_r_domain(i: u64, j: u64, r: u64) -> Result<(), FamilyError> {
    gij_domain(i, j)?;
    if r < 2 || r + 1 > i {
        return Err(FamilyError::OutOfDomain(format!("need 2 <= r <= i-1 (i={i} r={r})")));
    }
    Ok(())
}

/// `(P_{r(j+1)+2}, P_{r(j+1)+3}, P_{r(j+1)+4})` on `G_ij`.
pub fn gij_prefix_triple(i: u64, j: u64, r: u64) -> Result<[BigUint; 3], FamilyError> {
    gij_r_domain(i, j, r)?;
    let (i, j, r) = (i as i128, j as i128, r as i128);
    let doubled = r * r * (-9 * j * j - 6 * j - 1)
        + r * (18 * i * j * j + 12 * i * j + 2 * i + 12 * j * j - 23 * j + 17)
        + 2 * (i * (-6 * j * j + 16 * j - 7) - 3 * j * j + 15 * j - 17);
    if doubled % 2 != 0 {
        return Err(FamilyError::OutOfDomain("P_k row is not integral".into()));
    }
    let first = doubled / 2;
    let second = first + (9 * j - 3) * (i - r) + 6 * j - 18;
    let third = second + (9 * j - 3) * (i - r) + 6 * j - 25;
    Ok([to_big(first, "P_k")?, to_big(second, "P_k")?, to_big(third, "P_k")?])
}

/// `(P_{r(j+1)+2}(v), P_{r(j+1)+3}(v), P_{r(j+1)+4}(v))` for `v` = central vertex 1.
pub fn gij_through_triple(i: u64, j: u64, r: u64) -> Result<[BigUint; 3], FamilyError> {
    if r < 2 || r + 1 > i {
        return Err(FamilyError::OutOfDomain(format!("need 2 <= r <= i-1 (i={i} r={r})")));
    }
    let base = r * (3 * j + 1);
    Ok([base + 1, base + 2, base + 5].map(BigUint::from))
}
