//! Geometry of the five-dimensional domains `Sigma+-` of the quadric
//! `(X, X) = +-1` in R^{4,2}, their conformal boundary, and the action of
//! O(4,2) on both.
//!
//! ```
//! use conformal5::charts::{chart_to_ambient, ChartPoint, DomainTag};
//! use conformal5::ambient::quadratic_form;
//!
//! let p = ChartPoint::positive(DomainTag::SigmaMinus, [0.0, 0.0, 0.0, 1.0], 0.5).unwrap();
//! let x = chart_to_ambient(&p);
//! assert!((quadratic_form(&x) + 1.0).abs() < 1e-12);
//! ```

pub mod ambient;
pub mod charts;
pub mod compactification;
pub mod error;
pub mod geodesics;
pub mod group_action;
pub mod hyperboloids;
pub mod properties;
pub mod sampling;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/ambient.md")]
    mod ambient {}
    #[doc = include_str!("../../../book/src/compactification.md")]
    mod compactification {}
    #[doc = include_str!("../../../book/src/charts.md")]
    mod charts {}
    #[doc = include_str!("../../../book/src/geodesics.md")]
    mod geodesics {}
    #[doc = include_str!("../../../book/src/group_action.md")]
    mod group_action {}
    #[doc = include_str!("../../../book/src/hyperboloids.md")]
    mod hyperboloids {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
