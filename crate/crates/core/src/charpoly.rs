//! Exact characteristic polynomials and certified largest roots.
//!
//! `det(xI - A)` is expanded by fraction-free (Bareiss) elimination over
//! `Z[x]`. Every leading principal minor of `xI - A` is the characteristic
//! polynomial of a principal submatrix, hence monic, so elimination never
//! needs pivoting and every division is exact. The largest root is then
//! isolated by bisection on dyadic rationals, counting roots above the
//! midpoint with a Sturm chain of the square-free part.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SpexError};
use crate::graph::Graph;

/// Largest order accepted by the exact oracle.
pub const ORACLE_MAX_ORDER: usize = 12;

/// Half-width the bisection is driven below.
pub const ORACLE_HALF_WIDTH: f64 = 1e-15;

/// Integer polynomial, coefficients from the constant term upward.
type IntPoly = Vec<i128>;

fn trim(p: &mut IntPoly) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn mul(a: &IntPoly, b: &IntPoly) -> Result<IntPoly> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let t = x.checked_mul(y).ok_or(SpexError::Overflow)?;
            out[i + j] = out[i + j].checked_add(t).ok_or(SpexError::Overflow)?;
        }
    }
    trim(&mut out);
    Ok(out)
}

fn sub(a: &IntPoly, b: &IntPoly) -> Result<IntPoly> {
    let mut out = vec![0i128; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = x.checked_sub(y).ok_or(SpexError::Overflow)?;
    }
    trim(&mut out);
    Ok(out)
}

/// Exact quotient by a monic divisor; the remainder must vanish.
fn div_exact_monic(a: &IntPoly, d: &IntPoly) -> Result<IntPoly> {
    debug_assert_eq!(*d.last().unwrap(), 1);
    let mut rem = a.clone();
    trim(&mut rem);
    if rem.len() < d.len() {
        debug_assert!(rem.iter().all(|&c| c == 0));
        return Ok(vec![0]);
    }
    let dl = d.len() - 1;
    let mut q = vec![0i128; rem.len() - dl];
    for k in (0..q.len()).rev() {
        let c = rem[k + dl];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in d.iter().enumerate() {
                let t = c.checked_mul(dj).ok_or(SpexError::Overflow)?;
                rem[k + j] = rem[k + j].checked_sub(t).ok_or(SpexError::Overflow)?;
            }
        }
    }
    debug_assert!(
        rem.iter().all(|&c| c == 0),
        "Bareiss division must be exact"
    );
    trim(&mut q);
    Ok(q)
}

/// Coefficients of `det(xI - A)`, constant term first.
pub fn characteristic_polynomial(g: &Graph) -> Result<Vec<i128>> {
    let n = g.n();
    if n == 0 {
        return Ok(vec![1]);
    }
    let mut m: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        vec![0, 1]
                    } else if g.has_edge(i, j) {
                        vec![-1]
                    } else {
                        vec![0]
                    }
                })
                .collect()
        })
        .collect();
    let mut prev: IntPoly = vec![1];
    for k in 0..n - 1 {
        for i in k + 1..n {
            for j in k + 1..n {
                let num = sub(&mul(&m[k][k], &m[i][j])?, &mul(&m[i][k], &m[k][j])?)?;
                m[i][j] = div_exact_monic(&num, &prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(m[n - 1][n - 1].clone())
}

type RatPoly = Vec<BigRational>;

fn rat_trim(p: &mut RatPoly) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

fn is_zero_poly(p: &RatPoly) -> bool {
    p.iter().all(Zero::is_zero)
}

fn derivative(p: &RatPoly) -> RatPoly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

/// Returns (quotient, remainder) of rational polynomial division.
fn divmod(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    let mut rem = a.clone();
    rat_trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![BigRational::zero()], rem);
    }
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = &rem[k + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &c * bj;
            }
        }
        q[k] = c;
    }
    rem.truncate(db.max(1));
    rat_trim(&mut rem);
    (q, rem)
}

fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone(), derivative(p)];
    loop {
        let k = chain.len();
        if is_zero_poly(&chain[k - 1]) {
            chain.pop();
            break;
        }
        if chain[k - 1].len() == 1 {
            break;
        }
        let (_, r) = divmod(&chain[k - 2], &chain[k - 1]);
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

/// Scales a rational polynomial by a positive constant to integer coefficients.
fn to_integer(p: &RatPoly) -> Vec<BigInt> {
    let lcm = p.iter().fold(BigInt::one(), |acc, c| {
        num_integer::Integer::lcm(&acc, c.denom())
    });
    p.iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}

/// Sign of `p(m / 2^k)` times a positive factor.
fn sign_at(p: &[BigInt], m: &BigInt, k: u32) -> i8 {
    let d = p.len() - 1;
    let mut acc = BigInt::zero();
    let mut mpow = BigInt::one();
    for (i, c) in p.iter().enumerate() {
        if !c.is_zero() {
            acc += (c * &mpow) << (k as usize * (d - i));
        }
        mpow *= m;
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Bracket around the largest adjacency eigenvalue from the exact oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleRoot {
    pub lower: f64,
    pub upper: f64,
    pub value: f64,
}

/// Largest real root of `det(xI - A)` isolated to half-width `1e-15`.
///
/// Disconnected graphs are accepted; the largest root is then the maximum over
/// components.
pub fn charpoly_rho_oracle(g: &Graph) -> Result<OracleRoot> {
    let n = g.n();
    if n == 0 {
        return Err(SpexError::EmptyGraph);
    }
    if n > ORACLE_MAX_ORDER {
        return Err(SpexError::OracleTooLarge {
            n,
            limit: ORACLE_MAX_ORDER,
        });
    }
    let coeffs = characteristic_polynomial(g)?;
    Ok(largest_real_root(&coeffs))
}

/// Largest real root of a monic integer polynomial whose roots are all real
/// and bounded in absolute value by `bound`.
fn largest_root_bounded(coeffs: &[i128], bound: i64) -> OracleRoot {
    let p: RatPoly = coeffs
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect();
    let chain = sturm_chain(&p);
    let gcd = chain.last().unwrap();
    let square_free = if gcd.len() > 1 { divmod(&p, gcd).0 } else { p };
    let chain: Vec<Vec<BigInt>> = sturm_chain(&square_free).iter().map(to_integer).collect();
    let at_infinity = variations(chain.iter().map(|q| {
        if q.last().unwrap().is_positive() {
            1
        } else {
            -1
        }
    }));
    let roots_above =
        |m: &BigInt, k: u32| variations(chain.iter().map(|q| sign_at(q, m, k))) - at_infinity;

    // lo and hi share the exponent k: value = m / 2^k
    let mut k = 0u32;
    let mut lo = BigInt::from(-bound - 1);
    let mut hi = BigInt::from(bound + 1);
    let width = |lo: &BigInt, hi: &BigInt, k: u32| -> f64 {
        let w: f64 = (hi - lo).to_string().parse().unwrap();
        w / 2f64.powi(k as i32)
    };
    while width(&lo, &hi, k) > 2.0 * ORACLE_HALF_WIDTH {
        lo <<= 1usize;
        hi <<= 1usize;
        k += 1;
        let mid: BigInt = (&lo + &hi) >> 1usize;
        if roots_above(&mid, k) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let as_f64 = |m: &BigInt| -> f64 {
        let r = BigRational::new(m.clone(), BigInt::one() << k as usize);
        num_traits::ToPrimitive::to_f64(&r).unwrap()
    };
    let (lower, upper) = (as_f64(&lo), as_f64(&hi));
    let mid = BigRational::new(&lo + &hi, BigInt::one() << (k as usize + 1));
    OracleRoot {
        lower,
        upper,
        value: num_traits::ToPrimitive::to_f64(&mid).unwrap(),
    }
}

fn largest_real_root(coeffs: &[i128]) -> OracleRoot {
    // every eigenvalue of an adjacency matrix lies in [-n, n]
    let bound = coeffs.len() as i64;
    largest_root_bounded(coeffs, bound)
}
