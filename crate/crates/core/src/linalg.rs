//! Small dense helpers: real cubic roots, polynomial roots, characteristic
//! polynomials and a pivoted complex solve. Sizes here never exceed 4.

use num_complex::Complex;

use crate::scalar::Real;

/// Evaluates `c[0] + c[1]x + ... + c[d]x^d` and its derivative.
fn horner<T: Real>(c: &[T], x: T) -> (T, T) {
    let mut p = T::zero();
    let mut dp = T::zero();
    for &ci in c.iter().rev() {
        dp = dp * x + p;
        p = p * x + ci;
    }
    (p, dp)
}

fn horner_c<T: Real>(c: &[T], z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let mut p = Complex::new(T::zero(), T::zero());
    let mut dp = p;
    for &ci in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ci;
    }
    (p, dp)
}

/// Newton iterations on a real polynomial, stopping at relative step `tol`.
pub fn newton_polish<T: Real>(c: &[T], mut x: T, tol: T) -> T {
    for _ in 0..50 {
        let (p, dp) = horner(c, x);
        if dp == T::zero() || !dp.is_finite() {
            break;
        }
        let step = p / dp;
        let next = x - step;
        if !next.is_finite() {
            break;
        }
        // keep the better of the two iterates
        if horner(c, next).0.abs() > p.abs() {
            break;
        }
        x = next;
        if step.abs() <= tol * x.abs() {
            break;
        }
    }
    x
}

/// Real roots of `c3·x³ + c2·x² + c1·x + c0`, ascending, each polished by
/// Newton's method. Lower-degree polynomials are handled when leading
/// coefficients vanish.
pub fn cubic_real_roots<T: Real>(c3: T, c2: T, c1: T, c0: T) -> Vec<T> {
    let coeffs = [c0, c1, c2, c3];
    let tol = T::lit(1e-14);
    let mut roots = if c3 == T::zero() {
        quadratic_real_roots(c2, c1, c0)
    } else {
        let (b, c, d) = (c2 / c3, c1 / c3, c0 / c3);
        let three = T::lit(3.0);
        let q = (three * c - b * b) / T::lit(9.0);
        let r = (T::lit(9.0) * b * c - T::lit(27.0) * d - T::lit(2.0) * b * b * b) / T::lit(54.0);
        let disc = q * q * q + r * r;
        let shift = b / three;
        if disc > T::zero() {
            let sq = disc.sqrt();
            let s = (r + sq).cbrt();
            let t = (r - sq).cbrt();
            vec![s + t - shift]
        } else if q == T::zero() {
            vec![-shift]
        } else {
            let rho = (-q * q * q).sqrt();
            let theta = (r / rho).max(-T::one()).min(T::one()).acos();
            let m = T::lit(2.0) * (-q).sqrt();
            (0..3)
                .map(|k| m * ((theta + T::TAU() * T::from_int(k)) / three).cos() - shift)
                .collect()
        }
    };
    for x in roots.iter_mut() {
        *x = newton_polish(&coeffs, *x, tol);
    }
    roots.retain(|x| x.is_finite());
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

fn quadratic_real_roots<T: Real>(a: T, b: T, c: T) -> Vec<T> {
    if a == T::zero() {
        if b == T::zero() {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - T::lit(4.0) * a * c;
    if disc < T::zero() {
        return Vec::new();
    }
    // cancellation-free form
    let q = -(b + b.signum() * disc.sqrt()) / T::lit(2.0);
    if q == T::zero() {
        return vec![T::zero(), T::zero()];
    }
    vec![q / a, c / q]
}

/// Coefficients `[c0, .., cN]` (with `cN = 1`) of det(λI − A), by the
/// Faddeev–LeVerrier recursion.
pub fn char_poly<T: Real, const N: usize>(a: &[[T; N]; N]) -> Vec<T> {
    let mut coeffs = vec![T::zero(); N + 1];
    coeffs[N] = T::one();
    let mut m = [[T::zero(); N]; N];
    let mut c_prev = T::one();
    for k in 1..=N {
        // M_k = A·M_{k−1} + c_{N−k+1}·I
        let mut next = [[T::zero(); N]; N];
        for i in 0..N {
            for j in 0..N {
                let mut s = T::zero();
                for l in 0..N {
                    s = s + a[i][l] * m[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] = next[i][i] + c_prev;
        }
        m = next;
        let mut trace = T::zero();
        for i in 0..N {
            for l in 0..N {
                trace = trace + a[i][l] * m[l][i];
            }
        }
        c_prev = -trace / T::from_count(k);
        coeffs[N - k] = c_prev;
    }
    coeffs
}

/// All complex roots of a real polynomial `[c0, .., cd]` by Aberth–Ehrlich
/// iteration followed by a Newton polish.
pub fn poly_roots<T: Real>(c: &[T]) -> Vec<Complex<T>> {
    let mut c = c.to_vec();
    while c.len() > 1 && *c.last().unwrap() == T::zero() {
        c.pop();
    }
    let d = c.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let lead = c[d];
    let bound = T::one()
        + c[..d]
            .iter()
            .map(|x| (*x / lead).abs())
            .fold(T::zero(), T::max);
    let mut z: Vec<Complex<T>> = (0..d)
        .map(|k| {
            let angle = T::TAU() * T::from_count(k) / T::from_count(d) + T::lit(0.4);
            Complex::from_polar(bound * T::lit(0.5), angle)
        })
        .collect();
    let eps = T::epsilon();
    for _ in 0..500 {
        let mut worst = T::zero();
        for k in 0..d {
            let (p, dp) = horner_c(&c, z[k]);
            if p.norm() == T::zero() {
                continue;
            }
            let ratio = p / dp;
            let mut sum = Complex::new(T::zero(), T::zero());
            for j in 0..d {
                if j != k {
                    let diff = z[k] - z[j];
                    if diff.norm() > T::zero() {
                        sum = sum + diff.inv();
                    }
                }
            }
            let w = ratio / (Complex::new(T::one(), T::zero()) - ratio * sum);
            if w.re.is_finite() && w.im.is_finite() {
                z[k] = z[k] - w;
                worst = worst.max(w.norm() / z[k].norm().max(eps));
            }
        }
        if worst < T::lit(4.0) * eps {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner_c(&c, *zk);
            if dp.norm() == T::zero() {
                break;
            }
            let next = *zk - p / dp;
            if horner_c(&c, next).0.norm() < p.norm() {
                *zk = next;
            } else {
                break;
            }
        }
    }
    z
}

/// Eigenvalues of a small real matrix, via its scaled characteristic polynomial.
pub fn eigenvalues<T: Real, const N: usize>(a: &[[T; N]; N]) -> Vec<Complex<T>> {
    let scale = a
        .iter()
        .flat_map(|row| row.iter())
        .map(|x| x.abs())
        .fold(T::zero(), T::max);
    if scale == T::zero() {
        return vec![Complex::new(T::zero(), T::zero()); N];
    }
    let mut scaled = *a;
    for row in scaled.iter_mut() {
        for x in row.iter_mut() {
            *x = *x / scale;
        }
    }
    poly_roots(&char_poly(&scaled))
        .into_iter()
        .map(|z| z * scale)
        .collect()
}

/// Solves `A·x = b` by Gaussian elimination with partial pivoting. Returns
/// `None` when a pivot vanishes relative to the matrix scale.
pub fn solve<T: Real, const N: usize>(
    mut a: [[Complex<T>; N]; N],
    mut b: [Complex<T>; N],
) -> Option<[Complex<T>; N]> {
    let scale = a
        .iter()
        .flat_map(|row| row.iter())
        .map(|x| x.norm())
        .fold(T::zero(), T::max);
    if scale == T::zero() {
        return None;
    }
    let tiny = scale * T::epsilon() * T::lit(16.0);
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&i, &j| a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap())
            .unwrap();
        if !(a[pivot][col].norm() > tiny) {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..N {
            let f = a[row][col] / a[col][col];
            for k in col..N {
                let v = a[col][k];
                a[row][k] = a[row][k] - f * v;
            }
            let v = b[col];
            b[row] = b[row] - f * v;
        }
    }
    let mut x = [Complex::new(T::zero(), T::zero()); N];
    for row in (0..N).rev() {
        let mut s = b[row];
        for k in row + 1..N {
            s = s - a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}
