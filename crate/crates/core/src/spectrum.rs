//! Comb extraction from a periodic trajectory.
//!
//! Lines live on the grid k·ω_b/n relative to the control frequency. Line k
//! is the coefficient of e^{−ik(ω_b/n)t}, so the first probe (δ_p = ω_b) sits at
//! k = n and the second probe at k = 1.

use std::fmt;

use num_complex::Complex;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::model::SystemParams;
use crate::scalar::Real;

/// Default number of harmonics kept on each side, in units of n.
pub const DEFAULT_K_MAX_ORDERS: usize = 12;
/// Default relative amplitude for a line to count as present.
pub const DEFAULT_THRESHOLD_REL: f64 = 1e-5;

/// Origin of a comb line, following the integer/fraction/sum/difference
/// sideband families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineKind {
    Control,
    IntegerOrder,
    FractionOrder,
    Sum,
    Difference,
}

impl LineKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LineKind::Control => "control",
            LineKind::IntegerOrder => "integer-order",
            LineKind::FractionOrder => "fraction-order",
            LineKind::Sum => "sum",
            LineKind::Difference => "difference",
        }
    }
}

impl fmt::Display for LineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Integer ladder index `j` and fraction index `r` of a mixing product
/// |k| = j·n ± r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub j: i64,
    pub r: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Classification {
    pub kind: LineKind,
    /// k/n in units of ω_b.
    pub order: Ratio<i64>,
    /// |k| = j·n + r candidate, for off-grid lines beyond the first integer order.
    pub sum: Option<Decomposition>,
    /// |k| = j·n − r candidate.
    pub difference: Option<Decomposition>,
}

/// Tags line `k` on the grid with spacing ω_b/n.
///
/// Off-grid lines with |k| > n have two readings, `jn + r` and `(j+1)n − (n−r)`;
/// the one with the smaller fraction index wins, ties going to the sum.
pub fn classify_line(k: i64, n: u32) -> Classification {
    assert!(n >= 1, "n must be >= 1");
    let n = n as i64;
    let order = Ratio::new(k, n);
    let a = k.abs();
    let plain = |kind| Classification {
        kind,
        order,
        sum: None,
        difference: None,
    };
    if k == 0 {
        return plain(LineKind::Control);
    }
    if a % n == 0 {
        return plain(LineKind::IntegerOrder);
    }
    if a < n {
        return plain(LineKind::FractionOrder);
    }
    let j = a / n;
    let r = a % n;
    let sum = Decomposition { j, r };
    let difference = Decomposition { j: j + 1, r: n - r };
    let kind = if difference.r < sum.r {
        LineKind::Difference
    } else {
        LineKind::Sum
    };
    Classification {
        kind,
        order,
        sum: Some(sum),
        difference: Some(difference),
    }
}

/// Form of the input–output relation used to build the output lines.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IoConvention {
    /// s_out = ε/√(2κ) − √(2κ)·α: the drive is converted to an input field
    /// amplitude first, so both terms share units.
    #[default]
    FluxNormalized,
    /// s_out = ε − √(2κ)·α, taking the drive amplitude itself as the input.
    Literal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CombLine<T> {
    pub k: i64,
    pub amp_alpha: Complex<T>,
    pub amp_out: Complex<T>,
    /// Input drive landing on this line.
    pub drive: Complex<T>,
    pub class: Classification,
}

impl<T: Real> CombLine<T> {
    pub fn kind(&self) -> LineKind {
        self.class.kind
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CombSpectrum<T> {
    pub n: u32,
    pub omega_b: T,
    /// Grid spacing ω_b/n.
    pub omega_fund: T,
    /// One line per k in [−k_max, k_max], ascending.
    pub lines: Vec<CombLine<T>>,
    /// Projection of the off-comb residual at a non-harmonic test frequency.
    pub leakage_floor: T,
    /// Time average of |α|² over the window.
    pub mean_intensity: T,
    pub convention: IoConvention,
}

impl<T: Real> CombSpectrum<T> {
    pub fn k_max(&self) -> i64 {
        self.lines.last().map_or(0, |l| l.k)
    }

    pub fn line(&self, k: i64) -> Option<&CombLine<T>> {
        let km = self.k_max();
        if k.abs() > km {
            return None;
        }
        self.lines.get((k + km) as usize)
    }

    /// Order-j integer line, i.e. k = j·n.
    pub fn integer_line(&self, j: i64) -> Option<&CombLine<T>> {
        self.line(j * self.n as i64)
    }

    pub fn largest_alpha(&self) -> T {
        self.lines.iter().map(|l| l.amp_alpha.norm()).fold(T::zero(), T::max)
    }

    pub fn largest_out(&self) -> T {
        self.lines.iter().map(|l| l.amp_out.norm()).fold(T::zero(), T::max)
    }

    /// |Σ|amp_alpha|² − ⟨|α|²⟩| / ⟨|α|²⟩.
    pub fn parseval_error(&self) -> T {
        let power: T = self
            .lines
            .iter()
            .map(|l| l.amp_alpha.norm_sqr())
            .fold(T::zero(), |a, b| a + b);
        if self.mean_intensity == T::zero() {
            return power;
        }
        (power - self.mean_intensity).abs() / self.mean_intensity
    }

    /// Leakage floor relative to the strongest intracavity line.
    pub fn leakage_relative(&self) -> T {
        let top = self.largest_alpha();
        if top == T::zero() {
            return self.leakage_floor;
        }
        self.leakage_floor / top
    }

    /// Signed line frequency relative to the control, rad/s.
    pub fn frequency(&self, k: i64) -> T {
        T::from_int(k) * self.omega_fund
    }
}

/// Grid index of the first probe, δ_p/(ω_b/n), which must be an integer.
pub fn probe_index<T: Real>(p: &SystemParams<T>) -> Result<i64> {
    let ratio = (p.delta_p / p.omega_fund()).to_f64_lossy();
    let k = ratio.round();
    if (ratio - k).abs() > 1e-9 * ratio.abs().max(1.0) {
        return Err(Error::NonCommensurateWindow(format!(
            "probe detuning delta_p is {ratio} grid spacings, not an integer"
        )));
    }
    Ok(k as i64)
}

/// Input drive amplitude at each grid index.
pub fn drive_at<T: Real>(p: &SystemParams<T>, k: i64) -> Result<Complex<T>> {
    let mut d = Complex::new(T::zero(), T::zero());
    if k == 0 {
        d = d + p.control();
    }
    if p.eps_p != T::zero() && k == probe_index(p)? {
        d = d + p.probe_p();
    }
    if k == 1 {
        d = d + p.probe_f();
    }
    Ok(d)
}

/// Samples per fundamental period, checked to be an integer.
fn period_samples<T: Real>(traj: &Trajectory<T>, p: &SystemParams<T>) -> Result<usize> {
    let ratio = (p.fundamental_period() / traj.dt).to_f64_lossy();
    let per = ratio.round();
    if per < 1.0 || (ratio - per).abs() > 1e-6 * ratio {
        return Err(Error::NonCommensurateWindow(format!(
            "fundamental period is {ratio} steps, not an integer"
        )));
    }
    let per = per as usize;
    let len = traj.len();
    if len < per || !len.is_multiple_of(per) {
        return Err(Error::NonCommensurateWindow(format!(
            "{len} samples is not a whole number of {per}-sample periods"
        )));
    }
    Ok(per)
}

fn unit_roots<T: Real>(count: usize) -> Vec<Complex<T>> {
    (0..count)
        .map(|j| Complex::from_polar(T::one(), T::TAU() * T::from_count(j) / T::from_count(count)))
        .collect()
}

/// Projects the cavity amplitude onto every grid harmonic |k| ≤ `k_max`:
/// amp(k) = (1/N)·Σ α(t_i)·e^{+ik(ω_b/n)t_i} over a window of whole periods.
/// Output amplitudes are left at zero; see [`output_spectrum`].
pub fn project_harmonics<T: Real>(
    traj: &Trajectory<T>,
    p: &SystemParams<T>,
    k_max: usize,
) -> Result<CombSpectrum<T>> {
    let per = period_samples(traj, p)?;
    let w = p.omega_fund();
    let roots = unit_roots::<T>(per);
    let inv_n = T::one() / T::from_count(traj.len());
    let alphas: Vec<Complex<T>> = traj.alphas().collect();
    let km = k_max as i64;
    let project = |k: i64| -> Complex<T> {
        let base = Complex::from_polar(T::one(), T::from_int(k) * w * traj.t0);
        let step = k.rem_euclid(per as i64) as usize;
        let mut idx = 0usize;
        let mut acc = Complex::new(T::zero(), T::zero());
        for a in &alphas {
            acc = acc + *a * roots[idx];
            idx += step;
            if idx >= per {
                idx -= per;
            }
        }
        acc * base * inv_n
    };
    let amps: Vec<Complex<T>> = (-km..=km).into_par_iter().map(project).collect();

    let lines = (-km..=km)
        .zip(&amps)
        .map(|(k, a)| {
            Ok(CombLine {
                k,
                amp_alpha: *a,
                amp_out: Complex::new(T::zero(), T::zero()),
                drive: drive_at(p, k)?,
                class: classify_line(k, p.n),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mean_intensity = alphas.iter().map(|a| a.norm_sqr()).fold(T::zero(), |x, y| x + y) * inv_n;
    let leakage_floor = residual_projection(traj, &alphas, &amps, km, w, test_frequency(p));

    Ok(CombSpectrum {
        n: p.n,
        omega_b: p.omega_b,
        omega_fund: w,
        lines,
        leakage_floor,
        mean_intensity,
        convention: IoConvention::default(),
    })
}

/// Non-harmonic frequency used to probe the off-comb residual, ω_b·√2/7.
pub fn test_frequency<T: Real>(p: &SystemParams<T>) -> T {
    p.omega_b * T::lit(2.0).sqrt() / T::lit(7.0)
}

fn residual_projection<T: Real>(
    traj: &Trajectory<T>,
    alphas: &[Complex<T>],
    amps: &[Complex<T>],
    km: i64,
    w: T,
    probe: T,
) -> T {
    let zero = Complex::new(T::zero(), T::zero());
    let acc = alphas
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            let t = traj.t0 + T::from_count(i) * traj.dt;
            let comb = (-km..=km)
                .zip(amps)
                .fold(zero, |s, (k, c)| s + *c * Complex::from_polar(T::one(), -T::from_int(k) * w * t));
            (*a - comb) * Complex::from_polar(T::one(), probe * t)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(zero, |s, x| s + x);
    acc.norm() / T::from_count(alphas.len())
}

/// Same line amplitudes computed with a plain FFT of the window.
pub fn fft_harmonics<T: Real + rustfft::FftNum>(
    traj: &Trajectory<T>,
    p: &SystemParams<T>,
    k_max: usize,
) -> Result<Vec<Complex<T>>> {
    let per = period_samples(traj, p)?;
    let len = traj.len();
    let periods = (len / per) as i64;
    let mut buf: Vec<Complex<T>> = traj.alphas().collect();
    let mut planner = rustfft::FftPlanner::<T>::new();
    planner.plan_fft_forward(len).process(&mut buf);
    let inv_n = T::one() / T::from_count(len);
    let w = p.omega_fund();
    let km = k_max as i64;
    Ok((-km..=km)
        .map(|k| {
            let bin = (-k * periods).rem_euclid(len as i64) as usize;
            buf[bin] * Complex::from_polar(T::one(), T::from_int(k) * w * traj.t0) * inv_n
        })
        .collect())
}

/// Fills the output amplitude of every line from the input–output relation.
pub fn output_spectrum<T: Real>(
    mut comb: CombSpectrum<T>,
    p: &SystemParams<T>,
    convention: IoConvention,
) -> CombSpectrum<T> {
    let root = (T::lit(2.0) * p.kappa).sqrt();
    for line in comb.lines.iter_mut() {
        let input = match convention {
            IoConvention::FluxNormalized => line.drive / root,
            IoConvention::Literal => line.drive,
        };
        line.amp_out = input - line.amp_alpha * root;
    }
    comb.convention = convention;
    comb
}

/// Summary of the lines present above a relative threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct CombMetrics<T> {
    pub threshold_rel: T,
    /// Largest |amp_out|.
    pub largest: T,
    /// Grid indices of the present lines, ascending.
    pub present: Vec<i64>,
    /// Highest present order k/n (units of ω_b).
    pub cutoff_pos: Ratio<i64>,
    /// Lowest present order.
    pub cutoff_neg: Ratio<i64>,
    /// Smallest spacing between present lines, rad/s; `None` with one line.
    pub f_rep: Option<T>,
    /// (cutoff_neg·ω_b, cutoff_pos·ω_b), rad/s.
    pub f_range: (T, T),
    /// All gaps between neighbouring present lines are equal.
    pub uniform: bool,
}

fn ratio_to<T: Real>(r: Ratio<i64>) -> T {
    T::from_int(*r.numer()) / T::from_int(*r.denom())
}

/// Lines with |amp_out| ≥ `threshold_rel`·max|amp_out| and the derived cutoffs,
/// repetition frequency and range.
pub fn comb_metrics<T: Real>(comb: &CombSpectrum<T>, threshold_rel: f64) -> Result<CombMetrics<T>> {
    if !(threshold_rel > 0.0 && threshold_rel < 1.0) {
        return Err(Error::InvalidThreshold(threshold_rel));
    }
    let largest = comb.largest_out();
    if comb.lines.is_empty() || !(largest > T::zero()) {
        return Err(Error::EmptySpectrum);
    }
    let cut = largest * T::lit(threshold_rel);
    let present: Vec<i64> = comb
        .lines
        .iter()
        .filter(|l| l.amp_out.norm() >= cut)
        .map(|l| l.k)
        .collect();
    let n = comb.n as i64;
    let cutoff_pos = Ratio::new(*present.last().unwrap(), n);
    let cutoff_neg = Ratio::new(present[0], n);
    let gaps: Vec<i64> = present.windows(2).map(|w| w[1] - w[0]).collect();
    let f_rep = gaps.iter().min().map(|g| T::from_int(*g) * comb.omega_fund);
    let uniform = gaps.windows(2).all(|w| w[0] == w[1]);
    Ok(CombMetrics {
        threshold_rel: T::lit(threshold_rel),
        largest,
        f_range: (ratio_to::<T>(cutoff_neg) * comb.omega_b, ratio_to::<T>(cutoff_pos) * comb.omega_b),
        present,
        cutoff_pos,
        cutoff_neg,
        f_rep,
        uniform,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::FieldState;
    use proptest::prelude::*;

    type P = SystemParams<f64>;
    type C = Complex<f64>;

    fn synthetic(p: &P, periods: usize, spp: usize, f: impl Fn(f64) -> C) -> Trajectory<f64> {
        let dt = p.mechanical_period() / spp as f64;
        let count = periods * p.n as usize * spp;
        let t0 = 3.0 * p.fundamental_period();
        Trajectory {
            t0,
            dt,
            samples: (0..count)
                .map(|i| {
                    let t = t0 + i as f64 * dt;
                    FieldState { alpha: f(t), beta: C::new(0.0, 0.0), t }
                })
                .collect(),
        }
    }

    #[test]
    fn constant_signal_is_single_line() {
        let p = P::baseline().with_probes_ghz(0.0, 0.0, 4);
        let c = C::new(3.0, -2.0);
        let comb = project_harmonics(&synthetic(&p, 2, 64, |_| c), &p, 12).unwrap();
        assert!((comb.line(0).unwrap().amp_alpha - c).norm() < 1e-14 * c.norm());
        for l in comb.lines.iter().filter(|l| l.k != 0) {
            assert!(l.amp_alpha.norm() < 1e-12 * c.norm(), "k = {}", l.k);
        }
    }

    #[test]
    fn pure_tone_lands_on_positive_k() {
        let p = P::baseline().with_probes_ghz(0.0, 0.0, 10);
        let wb = p.omega_b;
        let comb = project_harmonics(&synthetic(&p, 3, 100, |t| C::new(0.0, -wb * t).exp()), &p, 30).unwrap();
        let line = comb.line(10).unwrap();
        assert!((line.amp_alpha - C::new(1.0, 0.0)).norm() < 1e-12);
        assert!(comb.lines.iter().filter(|l| l.k != 10).all(|l| l.amp_alpha.norm() < 1e-12));
        assert!(comb.parseval_error() < 1e-12);
        assert!(comb.leakage_relative() < 1e-10);
    }

    #[test]
    fn non_commensurate_window_rejected() {
        let p = P::baseline().with_probes_ghz(0.0, 0.0, 3);
        let mut traj = synthetic(&p, 2, 64, |_| C::new(1.0, 0.0));
        traj.samples.pop();
        assert!(matches!(project_harmonics(&traj, &p, 4), Err(Error::NonCommensurateWindow(_))));
        let mut traj = synthetic(&p, 2, 64, |_| C::new(1.0, 0.0));
        traj.dt *= 1.01;
        assert!(matches!(project_harmonics(&traj, &p, 4), Err(Error::NonCommensurateWindow(_))));
    }

    #[test]
    fn probe_must_sit_on_grid() {
        let p = P { delta_p: 1.37 * P::baseline().omega_b, ..P::baseline().with_probes_ghz(1.0, 0.0, 2) };
        assert!(probe_index(&p).is_err());
        let p = P::baseline().with_probes_ghz(1.0, 0.0, 7);
        assert_eq!(probe_index(&p).unwrap(), 7);
    }

    #[test]
    fn fft_agrees_bin_for_bin() {
        let p = P::baseline().with_probes_ghz(0.0, 0.0, 5);
        let w = p.omega_fund();
        let signal = |t: f64| {
            C::new(2.0, 0.5)
                + C::new(0.3, 0.0) * C::new(0.0, -w * t).exp()
                + C::new(0.0, 0.01) * C::new(0.0, 7.0 * w * t).exp()
                + C::new(1e-4, 0.0) * C::new(0.0, -23.0 * w * t).exp()
        };
        let traj = synthetic(&p, 4, 80, signal);
        let comb = project_harmonics(&traj, &p, 30).unwrap();
        let fft = fft_harmonics(&traj, &p, 30).unwrap();
        for (l, f) in comb.lines.iter().zip(&fft) {
            assert!((l.amp_alpha - f).norm() < 1e-12 * 2.1, "k = {}", l.k);
        }
        assert!((comb.line(-7).unwrap().amp_alpha - C::new(0.0, 0.01)).norm() < 1e-13);
    }

    #[test]
    fn zero_field_outputs_the_drives() {
        let p = P::baseline().with_probes_ghz(9.0, 0.9, 10);
        let comb = project_harmonics(&synthetic(&p, 1, 64, |_| C::new(0.0, 0.0)), &p, 30).unwrap();
        let lit = output_spectrum(comb.clone(), &p, IoConvention::Literal);
        for l in &lit.lines {
            assert_eq!(l.amp_out, l.drive);
        }
        assert_eq!(lit.line(0).unwrap().amp_out, C::new(p.eps_c, 0.0));
        assert_eq!(lit.line(10).unwrap().amp_out, C::new(p.eps_p, 0.0));
        assert_eq!(lit.line(1).unwrap().amp_out, C::new(p.eps_f, 0.0));
        assert_eq!(lit.lines.iter().filter(|l| l.amp_out.norm() > 0.0).count(), 3);
        let flux = output_spectrum(comb, &p, IoConvention::FluxNormalized);
        let root = (2.0 * p.kappa).sqrt();
        assert!((flux.line(10).unwrap().amp_out * root - C::new(p.eps_p, 0.0)).norm() < 1e-3);
    }

    #[test]
    fn n_equal_one_stacks_both_probes() {
        let p = P::baseline().with_probes_ghz(2.0, 3.0, 1);
        assert_eq!(drive_at(&p, 1).unwrap(), C::new(5e9, 0.0));
    }

    #[test]
    fn classification_examples() {
        let c = classify_line(10, 10);
        assert_eq!(c.kind, LineKind::IntegerOrder);
        assert_eq!(c.order, Ratio::from_integer(1));
        let c = classify_line(1, 10);
        assert_eq!(c.kind, LineKind::FractionOrder);
        assert_eq!(c.order, Ratio::new(1, 10));
        let c = classify_line(11, 10);
        assert_eq!(c.kind, LineKind::Sum);
        assert_eq!(c.order, Ratio::new(11, 10));
        assert_eq!(c.sum, Some(Decomposition { j: 1, r: 1 }));
        assert_eq!(c.difference, Some(Decomposition { j: 2, r: 9 }));
        let c = classify_line(-19, 10);
        assert_eq!(c.kind, LineKind::Difference);
        assert_eq!(c.difference, Some(Decomposition { j: 2, r: 1 }));
        assert_eq!(classify_line(18, 10).kind, LineKind::Difference);
        assert_eq!(classify_line(15, 10).kind, LineKind::Sum);
        assert_eq!(classify_line(0, 10).kind, LineKind::Control);
        assert_eq!(classify_line(-9, 10).kind, LineKind::FractionOrder);
        assert_eq!(classify_line(7, 1).kind, LineKind::IntegerOrder);
    }

    fn comb_from_out(n: u32, k_max: i64, amp: impl Fn(i64) -> f64) -> CombSpectrum<f64> {
        let p = P::baseline();
        CombSpectrum {
            n,
            omega_b: p.omega_b,
            omega_fund: p.omega_b / n as f64,
            lines: (-k_max..=k_max)
                .map(|k| CombLine {
                    k,
                    amp_alpha: C::new(0.0, 0.0),
                    amp_out: C::new(amp(k), 0.0),
                    drive: C::new(0.0, 0.0),
                    class: classify_line(k, n),
                })
                .collect(),
            leakage_floor: 0.0,
            mean_intensity: 0.0,
            convention: IoConvention::FluxNormalized,
        }
    }

    #[test]
    fn metrics_single_line() {
        let comb = comb_from_out(3, 9, |k| if k == 0 { 1.0 } else { 0.0 });
        let m = comb_metrics(&comb, 1e-4).unwrap();
        assert_eq!(m.present, vec![0]);
        assert_eq!((m.cutoff_neg, m.cutoff_pos), (Ratio::from_integer(0), Ratio::from_integer(0)));
        assert_eq!(m.f_range, (0.0, 0.0));
        assert_eq!(m.f_rep, None);
    }

    #[test]
    fn metrics_geometric_comb() {
        let n = 4;
        let comb = comb_from_out(n, 20, |k| 10f64.powi(-(k.abs() as i32)));
        let m = comb_metrics(&comb, 10f64.powf(-3.5)).unwrap();
        assert_eq!(m.cutoff_pos, Ratio::new(3, 4));
        assert_eq!(m.cutoff_neg, Ratio::new(-3, 4));
        assert_eq!(m.present, vec![-3, -2, -1, 0, 1, 2, 3]);
        assert!((m.f_rep.unwrap() - comb.omega_b / 4.0).abs() < 1e-6);
        assert!(m.uniform);
        assert!((m.f_range.1 - 0.75 * comb.omega_b).abs() < 1e-6);
    }

    #[test]
    fn metrics_integer_only_gives_mechanical_spacing() {
        let comb = comb_from_out(5, 20, |k| if k % 5 == 0 && k.abs() <= 10 { 1.0 } else { 0.0 });
        let m = comb_metrics(&comb, 1e-3).unwrap();
        assert!((m.f_rep.unwrap() - comb.omega_b).abs() < 1e-6);
        assert_eq!(m.cutoff_pos, Ratio::from_integer(2));
    }

    #[test]
    fn metrics_errors() {
        let comb = comb_from_out(2, 4, |_| 0.0);
        assert!(matches!(comb_metrics(&comb, 1e-4), Err(Error::EmptySpectrum)));
        let comb = comb_from_out(2, 4, |_| 1.0);
        assert!(matches!(comb_metrics(&comb, 0.0), Err(Error::InvalidThreshold(_))));
        assert!(matches!(comb_metrics(&comb, 1.0), Err(Error::InvalidThreshold(_))));
    }

    proptest! {
        #[test]
        fn classification_total_and_mirror_symmetric(k in -2000i64..2000, n in 1u32..60) {
            let a = classify_line(k, n);
            let b = classify_line(-k, n);
            prop_assert_eq!(a.kind, b.kind);
            prop_assert_eq!(a.sum, b.sum);
            prop_assert_eq!(a.difference, b.difference);
            prop_assert_eq!(a, classify_line(k, n));
            prop_assert_eq!(a.order * Ratio::from_integer(n as i64), Ratio::from_integer(k));
            if let (Some(s), Some(d)) = (a.sum, a.difference) {
                prop_assert_eq!(s.j * n as i64 + s.r, k.abs());
                prop_assert_eq!(d.j * n as i64 - d.r, k.abs());
                prop_assert!(s.j >= 1 && (1..n as i64).contains(&s.r) && (1..n as i64).contains(&d.r));
            }
        }
    }
}
