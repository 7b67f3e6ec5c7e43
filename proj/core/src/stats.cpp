#include <cmath>
#include <stdexcept>

#include "tradenull/labkit.hpp"

namespace tradenull {

namespace {

constexpr double kGammaAccuracy = 1e-10;
constexpr int kGammaMaxIter = 500;

// Lower series: P(a,x) = x^a e^-x / Gamma(a) * sum_n x^n / (a (a+1) .. (a+n)).
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < kGammaMaxIter; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < kGammaAccuracy * std::fabs(sum))
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("regularized_gamma_p: series failed to converge");
}

// Upper continued fraction (modified Lentz): Q(a,x) = x^a e^-x / Gamma(a) * CF.
double gamma_q_continued_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kGammaMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kGammaAccuracy)
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("regularized_gamma_p: continued fraction failed to converge");
}

}  // namespace

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0)) throw std::invalid_argument("regularized_gamma_p: a must be positive");
    if (x < 0.0) throw std::invalid_argument("regularized_gamma_p: x must be non-negative");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_continued_fraction(a, x);
}

ChiSquareResult chi_square_uniform(std::span<const std::int64_t> counts) {
    if (counts.size() < 2)
        throw std::invalid_argument("chi_square_uniform: need at least 2 categories");
    std::int64_t total = 0;
    for (std::int64_t c : counts) {
        if (c < 0) throw std::invalid_argument("chi_square_uniform: negative count");
        total += c;
    }
    if (total == 0) throw std::invalid_argument("chi_square_uniform: zero total count");

    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double statistic = 0.0;
    for (std::int64_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        statistic += d * d / expected;
    }
    ChiSquareResult result;
    result.statistic = statistic;
    result.df = static_cast<int>(counts.size()) - 1;
    result.p_value = 1.0 - regularized_gamma_p(result.df / 2.0, statistic / 2.0);
    return result;
}

}  // namespace tradenull
