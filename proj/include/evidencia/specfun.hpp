#pragma once

// Scalar special functions: regularized incomplete gamma/beta, and the
// normal / Student-t / chi-square CDF-quantile pairs built on them.
// Everything here is deterministic and allocation-free.

namespace evidencia {

// Regularized lower incomplete gamma P(a,x); upper Q(a,x) = 1 - P(a,x).
double lower_gamma_reg(double a, double x);
double upper_gamma_reg(double a, double x);

// Regularized incomplete beta I_x(a,b).
double inc_beta_reg(double a, double b, double x);

double cdf_normal(double x);
double quantile_normal(double u);      // u in (0,1)

double cdf_t(double x, double nu);
double logcdf_t(double x, double nu);  // stable deep in the lower tail
double quantile_t(double u, double nu);

double logpdf_t1(double x, double nu); // univariate standard t density

double cdf_chisq(double x, double df);
double quantile_chisq(double u, double df);

} // namespace evidencia
