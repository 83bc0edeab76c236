use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

/// Pipeline stage at which a certificate search gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Attractor,
    AvoidedHyperplane,
    Clustering,
    Containment,
    CycleType,
    Metric,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Attractor => "attractor",
            Stage::AvoidedHyperplane => "avoided-hyperplane",
            Stage::Clustering => "clustering",
            Stage::Containment => "containment",
            Stage::CycleType => "cycle-type",
            Stage::Metric => "metric",
        }
    }
}

impl core::fmt::Display for Stage {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("zero vector has no projective class")]
    ZeroVector,
    #[error("only P^1 and P^2 are supported, got vector length {0}")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: P^{expected} vs P^{found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is numerically singular (|det| = {det:e} on the unit-Frobenius representative)")]
    SingularMatrix { det: f64 },
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(&'static str),
    #[error("points are not collinear (residual {residual:e})")]
    NotCollinear { residual: f64 },
    #[error("point lies on the avoided hyperplane")]
    OnAvoidedHyperplane,
    #[error("empty input")]
    EmptyInput,
    #[error("image of the body meets the avoided hyperplane")]
    ImageMeetsAvoidedHyperplane,
    #[error("point is not in the interior of the body")]
    NotInInterior,
    #[error("degenerate chord")]
    DegenerateChord,
    #[error("image is not strictly inside the target body (margin {margin:e})")]
    NoStrictContainment { margin: f64 },
    #[error("empty point cloud")]
    EmptyCloud,
    #[error("resource cap reached: {points} points would need resolution {resolution:e}")]
    ResourceCap { points: usize, resolution: f64 },
    #[error("pair graph has a directed cycle; no linear extension exists")]
    PartialOrderViolation,
    #[error("point is outside every certificate body")]
    OutsideCertificate,
    #[error("estimate did not converge within budget ({iterations} iterations, last delta {delta:e})")]
    NonConvergence { iterations: usize, delta: f64 },
    #[error("no contractivity certificate: {0}")]
    NotCertified(String),
    #[error("no certificate found at stage {stage}: {diagnostics}")]
    NoCertificateFound { stage: Stage, diagnostics: String },
    #[error("no gap between repeller points exceeds the threshold {threshold:e}")]
    DegenerateAllGaps { threshold: f64 },
    #[error("raster size {width}x{height} exceeds the limit")]
    SizeLimit { width: usize, height: usize },
}
