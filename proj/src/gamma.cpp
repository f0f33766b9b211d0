#include "netrel/gamma.hpp"

#include "netrel/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace netrel {

namespace {

constexpr int kMaxIterations = 1'000'000;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min() / kEps;

[[noreturn]] void fail(const char* method, double a, double x, int iterations, double last_term) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "incomplete gamma " << method << " did not converge: a=" << a << " x=" << x
        << " iterations=" << iterations << " last_term=" << last_term;
    throw NumericError(msg.str());
}

double log_prefactor(double a, double x) {
    return -x + a * std::log(x) - std::lgamma(a);
}

double lower_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n <= kMaxIterations; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) return sum * std::exp(log_prefactor(a, x));
    }
    fail("series", a, x, kMaxIterations, term);
}

double upper_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) return std::exp(log_prefactor(a, x)) * h;
    }
    fail("continued fraction", a, x, kMaxIterations, h);
}

void check_domain(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a) || std::isnan(x))
        throw InvalidArgument("incomplete gamma needs a > 0 and x >= 0");
}

} // namespace

double regularized_gamma_p(double a, double x) {
    check_domain(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return lower_series(a, x);
    return 1.0 - upper_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
    check_domain(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - lower_series(a, x);
    return upper_fraction(a, x);
}

} // namespace netrel
