#pragma once

namespace modspace {

//! Upper incomplete gamma integral over (t, inf) of y^{beta-1} e^{-y} dy.
//! Series below the t = beta+1 crossover, continued fraction above;
//! relative error <= 1e-12.  Requires beta > 0, t >= 0.
double gamma_upper(double beta, double t);

//! Lower counterpart over (0, t); gamma_upper + gamma_lower = tgamma(beta).
double gamma_lower(double beta, double t);

//! Inverse of t -> gamma_upper(beta, t): returns g with
//! gamma_upper(beta, g) = u, for u in (0, tgamma(beta)].  Monotone bisection
//! to absolute tolerance 1e-10 in g.  Out-of-range u rejected.
double inverse_gamma_upper(double beta, double u);

}  // namespace modspace
