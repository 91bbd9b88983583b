pub mod laurent;
pub mod logval;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series_uh;
pub mod special;

pub use laurent::Laurent;
pub use logval::LogValue;
pub use poly::Poly;
pub use ratfunc::{LaurentExpansion, PartialFractions, Point, RationalFunction};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use series_uh::SeriesUH;
pub use rational::binomial;
pub use special::{bernoulli, s_function_series, SKind};
