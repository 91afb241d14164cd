#![forbid(unsafe_code)]

//! Numerical tools for even averaging kernels on the line.
//!
//! The crate evaluates the scale-invariant uncertainty functional
//! `J(u) = ‖|ξ|^β û‖_∞^α · ‖|x|^α u‖_1^β / ‖u‖_1^(α+β)` for a family of
//! candidate kernels, certifies the alternating sign pattern of the
//! half-integer Fourier coefficients of the power kernels through a
//! generalized hypergeometric series, and verifies the associated
//! first-order stability inequality with Shannon-Whittaker machinery on
//! the shifted grid `ℤ - 1/2`.
//!
//! All operations are pure and deterministic; batch runners parallelize
//! over independent items with order-preserving collection.

use thiserror::Error;

mod bigfix;
pub mod functional;
pub mod hypergeom;
pub mod kernel;
pub mod optimizer;
pub mod quad;
pub mod spectral;
pub mod whittaker;

pub use functional::{SmoothingReport, UncertaintyReport};
pub use hypergeom::{SeriesValue, SignCertificate, Verdict};
pub use kernel::{KernelSpec, ScaleTransform};
pub use optimizer::{MinimizeResult, ProbeReport};
pub use spectral::SupNormResult;
pub use whittaker::{EvenPerturbation, HatSamples, StabilityReport, SumIdentities};

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature did not converge: achieved {achieved:.3e}, requested {requested:.3e}")]
    Quadrature { achieved: f64, requested: f64 },
    #[error("series did not converge within {max_terms} terms")]
    SeriesDivergence { max_terms: usize },
    #[error(
        "weighted sup with beta = {beta} is unbounded-risk for this kernel: \
         no decaying tail envelope is available"
    )]
    UnboundedRisk { beta: f64 },
    #[error("difference changes sign in more than one bracket: {brackets:?}")]
    MultipleBrackets { brackets: Vec<(f64, f64)> },
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
pub(crate) mod testutil {
    //! Test-only oracles, independent of the production quadrature path.

    /// Adaptive Simpson quadrature (Lyness criterion). Used as an oracle
    /// against the Gauss-Legendre implementation in `quad`.
    pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
        fn simpson_rule<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64) {
            let m = 0.5 * (a + b);
            let fm = f(m);
            ((b - a) / 6.0 * (fa + 4.0 * fm + fb), fm)
        }
        fn rec<F: Fn(f64) -> f64>(
            f: &F,
            a: f64,
            fa: f64,
            b: f64,
            fb: f64,
            whole: f64,
            fm: f64,
            tol: f64,
            depth: u32,
        ) -> f64 {
            let m = 0.5 * (a + b);
            let (left, flm) = simpson_rule(f, a, fa, m, fm);
            let (right, frm) = simpson_rule(f, m, fm, b, fb);
            let delta = left + right - whole;
            if depth == 0 || delta.abs() <= 15.0 * tol {
                left + right + delta / 15.0
            } else {
                rec(f, a, fa, m, fm, left, flm, 0.5 * tol, depth - 1)
                    + rec(f, m, fm, b, fb, right, frm, 0.5 * tol, depth - 1)
            }
        }
        let fa = f(a);
        let fb = f(b);
        let (whole, fm) = simpson_rule(f, a, fa, b, fb);
        rec(f, a, fa, b, fb, whole, fm, tol, 48)
    }

    /// Simpson oracle for oscillatory integrands: pre-splits into panels so
    /// each panel covers at most an eighth of a period.
    pub fn simpson_osc<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        periods_per_unit: f64,
        tol: f64,
    ) -> f64 {
        let panels = (((b - a) * periods_per_unit * 8.0).ceil() as usize).max(1);
        let h = (b - a) / panels as f64;
        let mut total = 0.0;
        for i in 0..panels {
            let lo = a + i as f64 * h;
            let hi = if i + 1 == panels { b } else { lo + h };
            total += simpson(f, lo, hi, tol / panels as f64);
        }
        total
    }

    pub fn assert_close(actual: f64, expected: f64, tol: f64, what: &str) {
        assert!(
            (actual - expected).abs() <= tol,
            "{what}: got {actual:.17e}, want {expected:.17e} (tol {tol:.1e}, diff {:.3e})",
            (actual - expected).abs()
        );
    }

    pub fn assert_rel(actual: f64, expected: f64, rel: f64, what: &str) {
        let denom = expected.abs().max(f64::MIN_POSITIVE);
        assert!(
            (actual - expected).abs() / denom <= rel,
            "{what}: got {actual:.17e}, want {expected:.17e} (rel tol {rel:.1e}, rel diff {:.3e})",
            (actual - expected).abs() / denom
        );
    }
}
