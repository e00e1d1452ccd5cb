//! Named example presentations with their parameter slots.
//!
//! Identifiers: `fdex1`, `fdex2`, `fdex3`, `inbetweenex1`, `zerodim`,
//! `notsimple`, `betweenex2`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::scalar::{Matrix, Scalar};

pub const IDS: [&str; 7] = ["fdex1", "fdex2", "fdex3", "inbetweenex1", "zerodim", "notsimple", "betweenex2"];

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn build(mu: Vec<Vec<Scalar>>, b: Vec<Vec<Scalar>>) -> Presentation {
    Presentation::new(Matrix::from_rows(mu).unwrap(), Matrix::from_rows(b).unwrap())
        .expect("fixture data is a valid presentation")
}

/// μ with `a` above the diagonal in a 3-cycle pattern and `B_13 = B_31 = b`.
pub fn fdex1(a: Scalar, b: Scalar) -> Presentation {
    let ai = a.inv().expect("a must be nonzero");
    build(
        vec![vec![s(1), a.clone(), s(1)], vec![ai.clone(), s(1), a], vec![s(1), ai, s(1)]],
        vec![vec![s(0), s(0), b.clone()], vec![s(0), s(0), s(0)], vec![b, s(0), s(0)]],
    )
}

/// Quantum exterior algebra: arbitrary μ, `B = 0`.
pub fn fdex2(mu: Matrix) -> Result<Presentation> {
    let n = mu.rows();
    Ok(Presentation::new(mu, Matrix::zeros(n, n))?)
}

/// μ upper triangle filled from `upper` (row-major over i < j), completed
/// to multiplicative antisymmetry.
pub fn mu_from_upper(n: usize, upper: &[Scalar]) -> Matrix {
    let mut m = Matrix::identity(n);
    let mut it = upper.iter();
    for i in 0..n {
        for j in i + 1..n {
            let v = it.next().expect("enough upper entries").clone();
            m.set(j, i, v.inv().expect("nonzero mu entry"));
            m.set(i, j, v);
        }
    }
    m
}

/// `μ_ij = −1` off the diagonal, `B` diagonal.
pub fn fdex3(diag: &[Scalar]) -> Presentation {
    let n = diag.len();
    let mu = mu_from_upper(n, &vec![s(-1); n * (n - 1) / 2]);
    let mut b = Matrix::zeros(n, n);
    for (i, d) in diag.iter().enumerate() {
        b.set(i, i, d.clone());
    }
    Presentation::new(mu, b).expect("valid")
}

/// Four generators; `x_4` couples to everything through `B_i4`.
pub fn inbetweenex1(mu12: Scalar, mu13: Scalar, mu23: Scalar, b14: Scalar, b24: Scalar, b34: Scalar) -> Presentation {
    let mu = mu_from_upper(4, &[mu12, mu13, s(1), mu23, s(1), s(1)]);
    let z = s(0);
    let b = vec![
        vec![z.clone(), z.clone(), z.clone(), b14.clone()],
        vec![z.clone(), z.clone(), z.clone(), b24.clone()],
        vec![z.clone(), z.clone(), z.clone(), b34.clone()],
        vec![b14, b24, b34, s(1)],
    ];
    Presentation::new(mu, Matrix::from_rows(b).unwrap()).expect("valid")
}

/// Two generators, dimension zero.
pub fn zerodim() -> Presentation {
    build(vec![vec![s(1), s(-1)], vec![s(-1), s(1)]], vec![vec![s(0), s(1)], vec![s(-1), s(0)]])
}

pub fn notsimple(a: Scalar) -> Presentation {
    build(
        vec![vec![s(1), s(1), s(-1)], vec![s(1), s(1), s(-1)], vec![s(-1), s(-1), s(1)]],
        vec![vec![s(0), a.clone(), s(0)], vec![a, s(0), s(0)], vec![s(0), s(0), s(1)]],
    )
}

/// Symmetric `B` but dimension 2: `μ_12 = 2`, `B = diag(0, 1)`.
pub fn between_ex2() -> Presentation {
    let half = Scalar::new(1, 2).unwrap();
    build(vec![vec![s(1), s(2)], vec![half, s(1)]], vec![vec![s(0), s(0)], vec![s(0), s(1)]])
}

fn param(params: &BTreeMap<String, Scalar>, key: &str, default: Scalar) -> Scalar {
    params.get(key).cloned().unwrap_or(default)
}

fn param_n(params: &BTreeMap<String, Scalar>, default: usize) -> Result<usize> {
    match params.get("n") {
        None => Ok(default),
        Some(v) => v
            .to_i64()
            .filter(|&n| (1..=24).contains(&n))
            .map(|n| n as usize)
            .ok_or_else(|| Error::Input(format!("parameter n must be an integer in 1..=24, got {v}"))),
    }
}

/// Looks up a fixture by identifier. Unknown parameters are rejected so
/// that typos do not silently fall back to defaults.
pub fn by_id(id: &str, params: &BTreeMap<String, Scalar>) -> Result<Presentation> {
    let allowed: &[&str] = match id {
        "fdex1" => &["a", "b"],
        "fdex2" => &["n", "q"],
        "fdex3" => &["n", "d1", "d2", "d3", "d4", "d5", "d6", "d7", "d8"],
        "inbetweenex1" => &["mu12", "mu13", "mu23", "b14", "b24", "b34"],
        "zerodim" | "betweenex2" => &[],
        "notsimple" => &["a"],
        _ => return Err(Error::Input(format!("unknown fixture {id:?}; known: {}", IDS.join(", ")))),
    };
    if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::Input(format!("fixture {id} has no parameter {k:?}")));
    }
    let nonzero = |key: &str, default: i64| -> Result<Scalar> {
        let v = param(params, key, s(default));
        if v.is_zero() {
            Err(Error::Input(format!("parameter {key} must be nonzero")))
        } else {
            Ok(v)
        }
    };
    Ok(match id {
        "fdex1" => fdex1(nonzero("a", 2)?, param(params, "b", s(1))),
        "fdex2" => {
            let n = param_n(params, 3)?;
            let q = nonzero("q", 2)?;
            fdex2(mu_from_upper(n, &vec![q; n * (n - 1) / 2]))?
        }
        "fdex3" => {
            let n = param_n(params, 3)?;
            let diag: Vec<Scalar> = (1..=n).map(|i| param(params, &format!("d{i}"), s(1))).collect();
            fdex3(&diag)
        }
        "inbetweenex1" => inbetweenex1(
            nonzero("mu12", 2)?,
            nonzero("mu13", 1)?,
            nonzero("mu23", 1)?,
            nonzero("b14", 1)?,
            nonzero("b24", 1)?,
            nonzero("b34", 1)?,
        ),
        "zerodim" => zerodim(),
        "notsimple" => notsimple(param(params, "a", s(1))),
        "betweenex2" => between_ex2(),
        _ => unreachable!(),
    })
}
