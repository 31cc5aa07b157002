//! Interval type-2 fuzzy membership functions synthesized from sets of
//! expert interval estimates, and Bayes' theorem evaluated over their
//! alpha-cuts.
//!
//! - [`fou`]: overlap, categorization, weighted power means and trapezoid
//!   construction for a single quantity.
//! - [`bayes`]: alpha-cut representation, interval products and the
//!   evidence-adjusted posterior.
//! - [`centroid`]: enhanced Karnik-Mendel centroid of a sampled footprint.
//! - [`io`] and [`cli`]: file formats and the `it2bayes` command.
//!
//! ```
//! use it2bayes::{synthesize, IntervalSet, SynthesisConfig};
//!
//! let set = IntervalSet::from_pairs(&[(0.2, 0.5), (0.3, 0.6), (0.25, 0.7)], None, None)?;
//! let mf = synthesize(&set, &SynthesisConfig::with_r(2.0))?;
//! assert_eq!(mf.eval(0.4), (1.0, 1.0));
//! # Ok::<(), it2bayes::Error>(())
//! ```

pub mod bayes;
pub mod centroid;
pub mod cli;
pub mod error;
pub mod fou;
pub mod interval;
pub mod io;

pub use bayes::{
    alpha_cuts, fou_from_cuts, posterior_fou, AlphaCutFou, BayesInputs, Posterior, SampledFou,
};
pub use centroid::{ekm_centroid, CentroidResult};
pub use error::{Error, Result};
pub use fou::{
    synthesize, synthesize_signed, ExponentChoice, FouCategory, It2MembershipFunction,
    SynthesisConfig, TrapezoidSpec,
};
pub use interval::{Interval, IntervalSet};
