#ifndef DIRCOUL_SPECFUN_HPP
#define DIRCOUL_SPECFUN_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace dircoul {
namespace specfun {

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Generalized Laguerre polynomial L_n^{(alpha)}(x) by the three-term forward
/// recurrence. Stable for x in [0, ~40*(n+alpha)], the range the radial
/// functions need. By convention L_{-1} == 0 (and any n < 0 returns 0), which
/// lets a single expression cover the n_f = 0 radial functions.
inline double laguerre(int n, double alpha, double x)
{
    if (alpha <= -1.0)
        throw std::domain_error("laguerre: order must satisfy alpha > -1");
    if (n < 0)
        return 0.0;
    double lm1 = 0.0;     // L_{k-1}
    double lk  = 1.0;     // L_0
    for (int k = 0; k < n; ++k) {
        const double lkp1 = ((2.0 * k + alpha + 1.0 - x) * lk - (k + alpha) * lm1) / (k + 1.0);
        lm1 = lk;
        lk  = lkp1;
    }
    return lk;
}

/// d/dx L_n^{(alpha)}(x) = -L_{n-1}^{(alpha+1)}(x).
inline double laguerre_deriv(int n, double alpha, double x)
{
    return -laguerre(n - 1, alpha + 1.0, x);
}

/// ln(Gamma(a)/Gamma(b)) for positive a, b, without overflow.
inline double log_gamma_ratio(double a, double b)
{
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("log_gamma_ratio: arguments must be positive");
    return std::lgamma(a) - std::lgamma(b);
}

namespace detail {

// Compensated (double-double) arithmetic for the Kummer series: the
// terminating series alternates with terms up to ~1e21 while the sum is
// O(1), so plain doubles lose everything to cancellation.
struct DD {
    double hi, lo;
};

inline DD two_sum(double a, double b)
{
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_two_sum(double a, double b)
{
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b)
{
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b)
{
    const DD s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline DD dd_mul(DD a, DD b)
{
    const DD p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline DD dd_div(DD a, DD b)
{
    const double q1 = a.hi / b.hi;
    DD r = dd_add(a, dd_mul({-q1, 0.0}, b));
    const double q2 = r.hi / b.hi;
    r = dd_add(r, dd_mul({-q2, 0.0}, b));
    const double q3 = r.hi / b.hi;
    return dd_add(quick_two_sum(q1, q2), {q3, 0.0});
}

} // namespace detail

/// Confluent hypergeometric function M(a, b, x) by power series with
/// compensated summation, truncated at relative tolerance 1e-14. When a is a
/// non-positive integer the series terminates exactly and satisfies the
/// Laguerre identity M(-n, alpha+1, x) = n! Gamma(alpha+1)/Gamma(n+alpha+1)
/// L_n^{(alpha)}(x). Beyond 500 terms without convergence a ConvergenceError
/// is raised rather than silently truncating.
inline double kummer_m(double a, double b, double x)
{
    const bool b_nonpos_int = (b <= 0.0) && (b == std::floor(b));
    if (b_nonpos_int)
        throw std::domain_error("kummer_m: b must not be a non-positive integer");

    constexpr int    max_terms = 500;
    constexpr double rel_tol   = 1e-14;

    const bool terminates = (a <= 0.0) && (a == std::floor(a));
    const int  last_term  = terminates ? static_cast<int>(-a) : max_terms;

    using detail::DD;
    DD sum{1.0, 0.0};
    DD term{1.0, 0.0};
    for (int k = 0; k < last_term; ++k) {
        const DD num = detail::dd_mul(detail::two_sum(a, k), {x, 0.0});
        const DD den = detail::dd_mul(detail::two_sum(b, k), {k + 1.0, 0.0});
        term = detail::dd_mul(term, detail::dd_div(num, den));
        sum = detail::dd_add(sum, term);
        if (!std::isfinite(term.hi) || !std::isfinite(sum.hi))
            throw ConvergenceError("kummer_m: series overflow before convergence");
        if (!terminates && std::abs(term.hi) <= rel_tol * std::abs(sum.hi) && k > 1)
            return sum.hi + sum.lo;
    }
    if (terminates)
        return sum.hi + sum.lo;
    throw ConvergenceError("kummer_m: series did not converge within " +
                           std::to_string(max_terms) + " terms");
}

struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes and weights of the n-point generalized Gauss-Laguerre rule with
/// weight x^alpha e^{-x}: exact for poly degree <= 2n-1. Newton iteration on
/// the recurrence, with the classical asymptotic initial guesses.
inline Quadrature gauss_laguerre(int n, double alpha)
{
    if (n < 1)
        throw std::domain_error("gauss_laguerre: need n >= 1");
    if (alpha <= -1.0)
        throw std::domain_error("gauss_laguerre: need alpha > -1");

    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);

    const double log_norm = std::lgamma(alpha + n) - std::lgamma(static_cast<double>(n));

    double x = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            x = (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * n + 1.8 * alpha);
        } else if (i == 1) {
            x += (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * n);
        } else {
            const double ai = i - 1;
            x += ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai)) *
                 (x - q.nodes[i - 2]) / (1.0 + 0.3 * alpha);
        }
        const double lower = (i == 0) ? 0.0 : q.nodes[i - 1];
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            const double p  = laguerre(n, alpha, x);
            pp = (n * p - (n + alpha) * laguerre(n - 1, alpha, x)) / x;
            const double dx = p / pp;
            double xn = x - dx;
            if (xn <= lower)
                xn = 0.5 * (x + lower);   // keep the iterate above the previous root
            const bool done = std::abs(xn - x) <= 1e-15 * (1.0 + std::abs(xn));
            x = xn;
            if (done)
                break;
        }
        q.nodes[i] = x;
        const double lnm1 = laguerre(n - 1, alpha, x);
        q.weights[i] = -std::exp(log_norm) / (n * pp * lnm1);
    }
    return q;
}

} // namespace specfun
} // namespace dircoul

#endif // DIRCOUL_SPECFUN_HPP
