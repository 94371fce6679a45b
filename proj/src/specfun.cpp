#include "evidencia/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace evidencia {

namespace {

constexpr int kMaxIter = 300;
constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;

// Series expansion of P(a,x), good for x < a+1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x) (modified Lentz), good for x >= a+1.
double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

double log_inc_beta_prefactor(double a, double b, double x) {
    return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
           a * std::log(x) + b * std::log1p(-x);
}

} // namespace

double lower_gamma_reg(double a, double x) {
    if (a <= 0.0) throw std::invalid_argument("lower_gamma_reg: a must be positive");
    if (x < 0.0) throw std::invalid_argument("lower_gamma_reg: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double upper_gamma_reg(double a, double x) {
    if (a <= 0.0) throw std::invalid_argument("upper_gamma_reg: a must be positive");
    if (x < 0.0) throw std::invalid_argument("upper_gamma_reg: x must be nonnegative");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double inc_beta_reg(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("inc_beta_reg: a,b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double pre = std::exp(log_inc_beta_prefactor(a, b, x));
    // Use the fast-converging side of the continued fraction.
    if (x < (a + 1.0) / (a + b + 2.0))
        return pre * betacf(a, b, x) / a;
    return 1.0 - pre * betacf(b, a, 1.0 - x) / b;
}

double cdf_normal(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// Wichura's AS 241 (PPND16): double-precision normal quantile.
double quantile_normal(double u) {
    if (!(u > 0.0 && u < 1.0))
        throw std::invalid_argument("quantile_normal: u must lie in (0,1)");
    double q = u - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    r = (q < 0.0) ? u : 1.0 - u;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                  3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -val : val;
}

double cdf_t(double x, double nu) {
    if (nu <= 0.0) throw std::invalid_argument("cdf_t: nu must be positive");
    if (x == 0.0) return 0.5;
    double ib = inc_beta_reg(nu / 2.0, 0.5, nu / (nu + x * x));
    return (x > 0.0) ? 1.0 - 0.5 * ib : 0.5 * ib;
}

double logcdf_t(double x, double nu) {
    if (x >= 0.0) return std::log(cdf_t(x, nu));
    // Lower tail: 0.5 * I_{nu/(nu+x^2)}(nu/2, 1/2) in log space.
    double a = nu / 2.0, b = 0.5;
    double z = nu / (nu + x * x);
    if (z >= (a + 1.0) / (a + b + 2.0)) {
        double v = 0.5 * (1.0 - std::exp(log_inc_beta_prefactor(b, a, 1.0 - z)) *
                                    betacf(b, a, 1.0 - z) / b);
        return std::log(v);
    }
    return std::log(0.5) + log_inc_beta_prefactor(a, b, z) + std::log(betacf(a, b, z) / a);
}

double logpdf_t1(double x, double nu) {
    return std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0) -
           0.5 * std::log(nu * M_PI) - (nu + 1.0) / 2.0 * std::log1p(x * x / nu);
}

double quantile_t(double u, double nu) {
    if (!(u > 0.0 && u < 1.0))
        throw std::invalid_argument("quantile_t: u must lie in (0,1)");
    if (u == 0.5) return 0.0;
    if (u < 0.5) return -quantile_t(1.0 - u, nu);
    // Start from the normal quantile with a first-order tail correction,
    // bracket, then Newton polish on the CDF.
    double z = quantile_normal(u);
    double x0 = z * (1.0 + (z * z + 1.0) / (4.0 * nu));
    double lo = 0.0, hi = std::fabs(x0) + 1.0;
    while (cdf_t(hi, nu) < u) {
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error("quantile_t: bracket expansion failed");
    }
    double x = std::min(std::max(x0, lo), hi);
    for (int i = 0; i < 100; ++i) {
        double f = cdf_t(x, nu) - u;
        if (f > 0.0) hi = x; else lo = x;
        double pdf = std::exp(logpdf_t1(x, nu));
        double step = f / pdf;
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);  // bisection fallback
        if (std::fabs(xn - x) <= 1e-12 * (1.0 + std::fabs(x))) { x = xn; break; }
        x = xn;
    }
    return x;
}

double cdf_chisq(double x, double df) {
    if (!(df > 0.0)) throw std::invalid_argument("cdf_chisq: df must be positive");
    if (x <= 0.0) return 0.0;
    return lower_gamma_reg(df / 2.0, x / 2.0);
}

// Bisection on the regularized lower incomplete gamma.
double quantile_chisq(double u, double df) {
    if (!(u > 0.0 && u < 1.0))
        throw std::invalid_argument("quantile_chisq: u must lie in (0,1)");
    if (!(df > 0.0)) throw std::invalid_argument("quantile_chisq: df must be positive");
    double lo = 0.0, hi = df;
    while (cdf_chisq(hi, df) < u) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (cdf_chisq(mid, df) < u) lo = mid; else hi = mid;
        if (hi - lo <= 1e-13 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace evidencia
