#include "qtri/hypergeom.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qtri {

namespace {

double log_choose(long long a, long long b) {
    if (b < 0 || b > a) return -std::numeric_limits<double>::infinity();
    return std::lgamma(static_cast<double>(a) + 1.0) - std::lgamma(static_cast<double>(b) + 1.0) -
           std::lgamma(static_cast<double>(a - b) + 1.0);
}

}  // namespace

double hypergeom_disjoint(int n, double p, double q) {
    if (n < 1) throw std::domain_error("hypergeom_disjoint: n must be positive");
    if (p < 0 || q < 0) throw std::domain_error("hypergeom_disjoint: p and q must be nonnegative");
    if (p + q >= 1.0) throw std::domain_error("hypergeom_disjoint: requires p + q < 1");
    const auto pn = static_cast<long long>(std::llround(p * n));
    const auto qn = static_cast<long long>(std::llround(q * n));
    if (qn == 0 || pn == 0) return 1.0;
    if (qn > n - pn) return 0.0;
    return std::exp(log_choose(n - pn, qn) - log_choose(n, qn));
}

}  // namespace qtri
