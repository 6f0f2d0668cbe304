#include "moran/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace moran {

namespace {

/// Compensated (Kahan) accumulator.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double term) {
        const double y = term - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

void require_n(long long N, long long min_n) {
    if (N < min_n) throw std::invalid_argument("asymptotics: N too small");
}

}  // namespace

double central_binomial_factor(long long m) {
    if (m < 0) throw std::invalid_argument("central_binomial_factor: m >= 0 required");
    KahanSum log_cb;
    log_cb.add(std::numbers::ln2);
    for (long long l = 1; l <= m; ++l) log_cb.add(std::log1p(-1.0 / (2.0 * l)));
    return std::exp(log_cb.sum);
}

double central_binomial_factor_lgamma(long long m) {
    if (m < 0) throw std::invalid_argument("central_binomial_factor_lgamma: m >= 0 required");
    const double md = static_cast<double>(m);
    const double log_value = std::numbers::ln2 + std::lgamma(2.0 * md + 1.0) -
                             2.0 * std::lgamma(md + 1.0) - md * std::log(4.0);
    return std::exp(log_value);
}

double stirling_term(long long k) {
    if (k < 0) throw std::invalid_argument("stirling_term: k >= 0 required");
    return 2.0 / std::sqrt(std::numbers::pi * static_cast<double>(k + 1));
}

double x_closed_form(long long k, long long N) {
    require_n(N, 2);
    if (k < 0 || k > N - 1)
        throw std::invalid_argument("x_closed_form: 0 <= k <= N-1 required");
    KahanSum log_x;
    const double two_n_plus_1 = 2.0 * static_cast<double>(N) + 1.0;
    for (long long l = 1; l <= k; ++l)
        log_x.add(std::log1p(-1.0 / ((2.0 * l + 1.0) * two_n_plus_1)));
    log_x.add(std::numbers::ln2);
    for (long long l = 1; l <= k + 1; ++l) log_x.add(std::log1p(-1.0 / (2.0 * l)));
    return std::exp(log_x.sum);
}

std::vector<double> x_closed_form_all(long long N) {
    require_n(N, 2);
    std::vector<double> xs(static_cast<std::size_t>(N) + 1, 0.0);
    const double two_n_plus_1 = 2.0 * static_cast<double>(N) + 1.0;
    KahanSum log_x;
    log_x.add(std::numbers::ln2);
    log_x.add(std::log1p(-0.5));  // cb(1) = 1
    xs[1] = std::exp(log_x.sum);
    for (long long m = 2; m <= N; ++m) {
        log_x.add(std::log1p(-1.0 / ((2.0 * (m - 1) + 1.0) * two_n_plus_1)));
        log_x.add(std::log1p(-1.0 / (2.0 * m)));
        xs[static_cast<std::size_t>(m)] = std::exp(log_x.sum);
    }
    return xs;
}

double v_tilde_closed(long long N) {
    require_n(N, 2);
    const std::vector<double> xs = x_closed_form_all(N);
    KahanSum sum;
    for (long long l = 1; l <= N - 1; ++l) sum.add(xs[static_cast<std::size_t>(l)]);
    return sum.sum / (2.0 * static_cast<double>(N) + 1.0);
}

double theorem_prediction(long long N) {
    if (N < 1) throw std::invalid_argument("theorem_prediction: N >= 1 required");
    return 4.0 / std::sqrt(std::numbers::pi) * std::sqrt(static_cast<double>(N));
}

namespace {

BoundsReport bounds_for(long long k, long long N, double C, double x_value) {
    BoundsReport report;
    report.k = k;
    report.N = N;
    report.c_used = C;
    report.x_exact = x_value;
    const double base = 2.0 / std::sqrt(std::numbers::pi * static_cast<double>(k));
    report.lower =
        base * (1.0 - C * (std::log(static_cast<double>(k)) + 1.0) / static_cast<double>(N));
    report.upper = base * (1.0 + C / static_cast<double>(k));
    report.pass = report.lower <= x_value && x_value <= report.upper;
    return report;
}

}  // namespace

BoundsReport lemma_bounds(long long k, long long N, double C) {
    require_n(N, 2);
    if (k < 1 || k > N) throw std::invalid_argument("lemma_bounds: 1 <= k <= N required");
    if (C <= 0) throw std::invalid_argument("lemma_bounds: C > 0 required");
    return bounds_for(k, N, C, x_closed_form(k - 1, N));
}

SmallestC smallest_passing_c(long long N) {
    require_n(N, 2);
    const std::vector<double> xs = x_closed_form_all(N);
    SmallestC result{0.0, 1};
    for (long long k = 1; k <= N; ++k) {
        const double x = xs[static_cast<std::size_t>(k)];
        const double base = 2.0 / std::sqrt(std::numbers::pi * static_cast<double>(k));
        double required = 0.0;
        if (x < base) {
            // Lower bound binds: base (1 - C (log k + 1)/N) <= x.
            required = (1.0 - x / base) * static_cast<double>(N) /
                       (std::log(static_cast<double>(k)) + 1.0);
        } else if (x > base) {
            // Upper bound binds: x <= base (1 + C/k).
            required = (x / base - 1.0) * static_cast<double>(k);
        }
        if (required > result.c) {
            result.c = required;
            result.binding_k = k;
        }
    }
    return result;
}

bool log_sum_inequality_holds(long long k, long long N) {
    require_n(N, 2);
    if (k < 1) throw std::invalid_argument("log_sum_inequality_holds: k >= 1 required");
    KahanSum sum;
    const double two_n_plus_1 = 2.0 * static_cast<double>(N) + 1.0;
    for (long long l = 1; l <= k; ++l) sum.add(1.0 / ((2.0 * l + 1.0) * two_n_plus_1));
    return sum.sum < std::log(2.0 * static_cast<double>(k) + 2.0) / (2.0 * two_n_plus_1);
}

}  // namespace moran
