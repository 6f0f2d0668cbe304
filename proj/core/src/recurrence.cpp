#include "moran/recurrence.hpp"

#include <map>

namespace moran {

namespace {

void require_rational_n(long long N, const RationalLimits& limits) {
    if (N > limits.max_n)
        throw ResourceLimitError("rational mode limited to N <= " +
                                 std::to_string(limits.max_n) + " (got N = " +
                                 std::to_string(N) + ")");
}

}  // namespace

std::vector<RecurrenceRow<double>> iterate_uv(long long N) {
    return detail::iterate_uv_impl<double>(N, nullptr);
}

std::vector<RecurrenceRow<Rational>> iterate_uv_rational(long long N,
                                                         const RationalLimits& limits) {
    require_rational_n(N, limits);
    return detail::iterate_uv_impl<Rational>(N, &limits);
}

std::vector<UvRow<double>> iterate_uv_direct(long long N) {
    return detail::iterate_uv_direct_impl<double>(N, nullptr);
}

std::vector<UvRow<Rational>> iterate_uv_direct_rational(long long N,
                                                        const RationalLimits& limits) {
    require_rational_n(N, limits);
    return detail::iterate_uv_direct_impl<Rational>(N, &limits);
}

std::vector<double> x_sequence(long long N) { return detail::x_sequence_impl<double>(N); }

std::vector<Rational> x_sequence_rational(long long N) {
    return detail::x_sequence_impl<Rational>(N);
}

double expected_fixation_weight(long long N) {
    return iterate_uv(N).back().u;
}

Rational expected_fixation_weight_rational(long long N, const RationalLimits& limits) {
    return iterate_uv_rational(N, limits).back().u;
}

DisplayArbitration arbitrate_displays(long long max_n) {
    DisplayArbitration result;
    result.a_display_matches = true;
    result.a_tilde_variant_matches = true;
    // One typo record per (form, entry), keyed for deduplication.
    std::map<std::string, DisplayTypo> located;

    auto record = [&located](const std::string& form, const std::string& entry, long long k,
                             long long N, const Rational& display, const Rational& derived) {
        const std::string key = form + entry;
        if (located.contains(key)) return;
        located[key] =
            DisplayTypo{form, entry, k, N, fraction_string(display), fraction_string(derived)};
    };

    auto compare = [&record](const std::string& form, const Mat2<Rational>& display,
                             const Mat2<Rational>& derived, long long k, long long N) {
        bool all_equal = true;
        const std::pair<const Rational&, const Rational&> entries[4] = {
            {display.a00, derived.a00},
            {display.a01, derived.a01},
            {display.a10, derived.a10},
            {display.a11, derived.a11}};
        static const char* names[4] = {"(0,0)", "(0,1)", "(1,0)", "(1,1)"};
        for (int i = 0; i < 4; ++i) {
            if (entries[i].first == entries[i].second) continue;
            all_equal = false;
            record(form, names[i], k, N, entries[i].first, entries[i].second);
        }
        return all_equal;
    };

    for (long long N = 2; N <= max_n; ++N) {
        for (long long k = 1; k <= N - 1; ++k) {
            // matrix_A itself throws if product and display ever disagree;
            // compare here as well so a mismatch is reported, not fatal.
            const Mat2<Rational> identity{Rational(1), Rational(0), Rational(0), Rational(1)};
            const Mat2<Rational> h = matrix_H<Rational>(k, N);
            const Mat2<Rational> imh{Rational(identity.a00 - h.a00), Rational(identity.a01 - h.a01),
                                     Rational(identity.a10 - h.a10),
                                     Rational(identity.a11 - h.a11)};
            const Mat2<Rational> inv = triangular_inverse(imh);
            const Mat2<Rational> a = matrix_L<Rational>(k, N) * inv;

            if (!compare("A display", matrix_A_display<Rational>(k, N), a, k, N))
                result.a_display_matches = false;

            // Closed form of [I - H]^{-1} against the direct triangular inverse.
            if (!compare("[I-H]^{-1} display", matrix_ImH_inverse<Rational>(k, N), inv, k, N))
                result.a_display_matches = false;

            // Swapped-diagonal triangular-inverse variant, evaluated on I - H_k.
            compare("triangular-inverse variant", triangular_inverse_display_variant(imh), inv,
                    k, N);

            // Conjugated tilde matrix (defined for k <= N-2) against the
            // implemented closed form, then the variant display against both.
            const Mat2<Rational> a_tilde = matrix_A_tilde<Rational>(k, N);
            if (k <= N - 2) {
                const Rational dk1_u = make_rational(1, k + 1);
                const Rational dk1_v = make_rational(1, N - k - 1);
                const Rational dk_u = make_rational(k);
                const Rational dk_v = make_rational(N - k);
                const Mat2<Rational> conj{Rational(dk1_u * a.a00 * dk_u),
                                          Rational(dk1_u * a.a01 * dk_v),
                                          Rational(dk1_v * a.a10 * dk_u),
                                          Rational(dk1_v * a.a11 * dk_v)};
                if (!compare("A~ conjugation", a_tilde, conj, k, N))
                    throw std::logic_error("matrix_A_tilde disagrees with conjugation");
            }
            if (!compare("A~ display variant", matrix_A_tilde_display_variant<Rational>(k, N),
                         a_tilde, k, N))
                result.a_tilde_variant_matches = false;
        }
    }

    result.typos.reserve(located.size());
    for (auto& [key, typo] : located) result.typos.push_back(std::move(typo));
    return result;
}

}  // namespace moran
