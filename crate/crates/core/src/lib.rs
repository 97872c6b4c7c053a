//! Harmonic mappings under convolution with normalized four-parameter
//! Wright functions: series evaluation, coefficient criteria for
//! starlikeness, convexity and close-to-convexity, and a sampling oracle
//! that checks the geometric definitions directly.

pub mod cli;
pub mod criteria;
pub mod error;
pub mod harmonic;
pub mod oracle;
pub mod render;
pub mod special_fn;
pub mod verify;

pub use criteria::{CriterionReport, Form, HypothesisReport, OrderParam, TheoremId};
pub use error::{Error, Result};
pub use harmonic::{convolve, CoefficientSeq, ConvolutionSpec, EvalPoint, ImageCoefficients};
pub use oracle::{sweep, OracleReport, Quantity, SampleGrid};
pub use special_fn::{derivs_at_one, normalized_eval, wright_eval, DerivativeValues, SeriesControl, WrightParams};
