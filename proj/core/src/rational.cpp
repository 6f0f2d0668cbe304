#include "moran/rational.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace moran {

Rational make_rational(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Rational q(static_cast<signed long>(num), static_cast<unsigned long>(den));
    q.canonicalize();
    return q;
}

double to_double(const Rational& q) {
    // mpq_get_d truncates toward zero; round to nearest by comparing the
    // exact value against the midpoint to the adjacent double.
    const double truncated = q.get_d();
    if (!std::isfinite(truncated)) return truncated;
    if (Rational(truncated) == q) return truncated;
    const double away = std::nextafter(
        truncated, sgn(q) < 0 ? -std::numeric_limits<double>::infinity()
                              : std::numeric_limits<double>::infinity());
    Rational midpoint = Rational(truncated) + Rational(away);
    midpoint /= 2;
    const int side = cmp(q, midpoint);
    if (side == 0)  // exact tie: keep the even mantissa
        return (std::bit_cast<std::uint64_t>(truncated) & 1u) == 0 ? truncated : away;
    const bool beyond = sgn(q) < 0 ? side < 0 : side > 0;
    return beyond ? away : truncated;
}

std::string fraction_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::size_t bit_size(const Rational& q) {
    return mpz_sizeinbase(q.get_num().get_mpz_t(), 2) +
           mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
}

}  // namespace moran
