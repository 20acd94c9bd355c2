//! # mfgm
//!
//! A two-parameter polynomial extension of the Farlie–Gumbel–Morgenstern
//! copula,
//!
//! ```text
//! C(u, v; a, b) = uv { 1 + a (1-u)(1-v)(1+bu)(1+bv) },   (u, v) in [0,1]^2
//! ```
//!
//! with density `c(u, v) = 1 + a f(u,b) f(v,b)` where
//! `f(u,b) = 3bu^2 + 2u(1-b) - 1`.
//!
//! ## Modules
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`copula`] | CDF, density, kernels, conditional CDF and quantile |
//! | [`region`] | The closed parameter region and the exact density interval |
//! | [`zoo`] | FGM, Huang–Kotz types 1/2, the sign-flipped variant, iterated FGM |
//! | [`dependence`] | Closed-form and quadrature Spearman rho / Kendall tau, rank estimators |
//! | [`sampler`] | Seeded conditional-inversion sampling |
//! | [`certifier`] | Grid falsifier for the copula axioms |
//! | [`export`] | CSV serialization shared by the CLI |
//!
//! ## Quick start
//!
//! ```rust
//! use mfgm::{copula, dependence, region, CopulaParams, UnitPoint};
//!
//! let params = CopulaParams::new(0.5, 1.0).unwrap();
//! let p = UnitPoint::new(0.5, 0.5).unwrap();
//! assert!((copula::cdf(&params, p) - 0.3203125).abs() < 1e-15);
//! assert_eq!(region::in_omega(0.5, 1.0), region::RegionLabel::OmegaPlus);
//! assert_eq!(dependence::rho_closed(0.5, 1.0), 0.375);
//! ```
//!
//! Evaluation never checks admissibility: [`copula::pdf`] happily returns
//! negative values for parameters outside the admissible set. Validity is an
//! explicit query ([`region`]) or a numerical check ([`certifier`]).

pub mod certifier;
pub mod copula;
pub mod dependence;
mod error;
pub mod export;
pub mod quadrature;
pub mod region;
pub mod roots;
pub mod sampler;
pub mod zoo;

pub use copula::{CopulaParams, UnitPoint};
pub use error::{CopulaError, Result};
