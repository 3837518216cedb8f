use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point at r = {r:e} is within r_min = {r_min:e} of the origin")]
    PointTooCloseToOrigin { r: f64, r_min: f64 },
    #[error("finite-difference step {h:e} too large for r = {r:e} (need r > 2h)")]
    StepTooLarge { h: f64, r: f64 },
    #[error("coupling kappa is zero")]
    ZeroCoupling,
    #[error("Laurent power {0} outside the supported range -2..=1")]
    UnsupportedPower(i32),
    #[error("point lies on the singular locus of the potential")]
    OnSingularLocus,
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("missing free parameter `{0}`")]
    MissingFreeParam(String),
    #[error("config parse error: {0}")]
    ConfigParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
