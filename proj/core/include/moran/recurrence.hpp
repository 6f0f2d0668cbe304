// =============================================================================
// recurrence.hpp — Transfer-matrix recurrence for the expected ancestral
// weight of the initially advantaged individual.
//
// With u_k = E(B at the k-th sweep time) and v_k = E(C at the k-th sweep
// time), one step of the sweep (from k carriers to k+1) acts linearly:
//
//     (u_{k+1}, v_{k+1})^T = A_k (u_k, v_k)^T,   A_k = L_k [I - H_k]^{-1},
//
// where H_k collects the stay-at-k single-step action and L_k the jump
// action.  In the rescaled variables u~_k = u_k/k, v~_k = v_k/(N-k) the
// step matrix A~_k = D_{k+1} A_k D_k^{-1} is row-stochastic:
//
//     A~_k = [[1 - q, q], [r, 1 - r]],  q = (N-k)/((2N+1)(k+1)),  r = 1/(2N+1)
//
// which keeps the float iteration contractive and cancellation-free.
//
// Every matrix is available in two independently coded forms — the
// computed product L_k [I - H_k]^{-1} and a hand-expanded entrywise
// display — and the two are asserted equal on every call (exactly in
// rational arithmetic).  Known-bad display variants are kept alongside in
// display_variants.hpp form (see *_display_variant below) so the
// validation suite can locate and report each wrong entry instead of
// silently disagreeing.
//
// All functions are pure; scalars are either double or exact Rational.
// =============================================================================
#pragma once

#include "moran/rational.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace moran {

template <class S>
struct Mat2 {
    S a00{}, a01{}, a10{}, a11{};

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return Mat2{S(x.a00 * y.a00 + x.a01 * y.a10), S(x.a00 * y.a01 + x.a01 * y.a11),
                    S(x.a10 * y.a00 + x.a11 * y.a10), S(x.a10 * y.a01 + x.a11 * y.a11)};
    }
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a00 == y.a00 && x.a01 == y.a01 && x.a10 == y.a10 && x.a11 == y.a11;
    }
};

template <class S>
struct Vec2 {
    S u{}, v{};
};

template <class S>
Vec2<S> operator*(const Mat2<S>& m, const Vec2<S>& x) {
    return Vec2<S>{S(m.a00 * x.u + m.a01 * x.v), S(m.a10 * x.u + m.a11 * x.v)};
}

/// num/den in the scalar type S (exact for Rational, rounded for double).
template <class S>
S frac(long long num, long long den) {
    if constexpr (std::is_same_v<S, Rational>) {
        return make_rational(num, den);
    } else {
        return static_cast<S>(num) / static_cast<S>(den);
    }
}

namespace detail {
inline void require_k_range(long long k, long long N) {
    if (N < 2) throw std::invalid_argument("recurrence: N must be >= 2");
    if (k < 1 || k > N - 1)
        throw std::invalid_argument("recurrence: k must satisfy 1 <= k <= N-1");
}
}  // namespace detail

// ── Single-step transfer matrices ───────────────────────────────────────────

/// Stay-at-k step matrix H_k, lower triangular:
/// (1 - k/N) * [[1, 0], [1/(2N), 1 - 1/(2(N-k)) + 1/(2N)]].
template <class S>
Mat2<S> matrix_H(long long k, long long N) {
    detail::require_k_range(k, N);
    const S scale = frac<S>(N - k, N);
    Mat2<S> h;
    h.a00 = scale;
    h.a01 = S(0);
    h.a10 = S(scale * frac<S>(1, 2 * N));
    h.a11 = S(scale * (S(1) - frac<S>(1, 2 * (N - k)) + frac<S>(1, 2 * N)));
    return h;
}

/// Jump step matrix L_k, upper triangular:
/// (k/N) * [[1 + 1/(2k) + 1/(2N), 1/(2N)], [0, 1 - 1/(N-k)]].
template <class S>
Mat2<S> matrix_L(long long k, long long N) {
    detail::require_k_range(k, N);
    const S scale = frac<S>(k, N);
    Mat2<S> l;
    l.a00 = S(scale * (S(1) + frac<S>(1, 2 * k) + frac<S>(1, 2 * N)));
    l.a01 = S(scale * frac<S>(1, 2 * N));
    l.a10 = S(0);
    l.a11 = S(scale * (S(1) - frac<S>(1, N - k)));
    return l;
}

/// Inverse of a lower-triangular 2x2 matrix [[p, 0], [q, r]].
template <class S>
Mat2<S> triangular_inverse(const Mat2<S>& m) {
    if (!(m.a01 == S(0)))
        throw std::invalid_argument("triangular_inverse: matrix is not lower triangular");
    Mat2<S> inv;
    inv.a00 = S(S(1) / m.a00);
    inv.a01 = S(0);
    inv.a10 = S(-m.a10 / (m.a00 * m.a11));
    inv.a11 = S(S(1) / m.a11);
    return inv;
}

/// Closed form of [I - H_k]^{-1}:
/// (N/k) * [[1, 0], [(N-k)/((2N+1)k), 2N/(2N+1)]].
template <class S>
Mat2<S> matrix_ImH_inverse(long long k, long long N) {
    detail::require_k_range(k, N);
    const S scale = frac<S>(N, k);
    Mat2<S> inv;
    inv.a00 = scale;
    inv.a01 = S(0);
    inv.a10 = S(scale * frac<S>(N - k, (2 * N + 1) * k));
    inv.a11 = S(scale * frac<S>(2 * N, 2 * N + 1));
    return inv;
}

/// Hand-expanded entrywise display of A_k (agrees with the computed product).
template <class S>
Mat2<S> matrix_A_display(long long k, long long N) {
    detail::require_k_range(k, N);
    Mat2<S> a;
    a.a00 = S(S(1) + frac<S>(1, 2 * k) + frac<S>(1, 2 * N) +
              frac<S>(N - k, N) * frac<S>(1, 2 * k * (2 * N + 1)));
    a.a01 = frac<S>(1, 2 * N + 1);
    a.a10 = frac<S>(N - k - 1, (2 * N + 1) * k);
    a.a11 = S((S(1) - frac<S>(1, N - k)) * (S(1) - frac<S>(1, 2 * N + 1)));
    return a;
}

namespace detail {
template <class S>
bool matrices_close(const Mat2<S>& x, const Mat2<S>& y, double rel_tol) {
    if constexpr (std::is_same_v<S, Rational>) {
        (void)rel_tol;
        return x == y;
    } else {
        auto close = [rel_tol](double a, double b) {
            const double scale = std::max({std::abs(a), std::abs(b), 1.0});
            return std::abs(a - b) <= rel_tol * scale;
        };
        return close(x.a00, y.a00) && close(x.a01, y.a01) && close(x.a10, y.a10) &&
               close(x.a11, y.a11);
    }
}
}  // namespace detail

/// Sweep-step matrix A_k = L_k [I - H_k]^{-1}, computed via the triangular
/// inverse and asserted against matrix_A_display (a transcription bug in
/// either form throws).
template <class S>
Mat2<S> matrix_A(long long k, long long N) {
    detail::require_k_range(k, N);
    Mat2<S> identity{S(1), S(0), S(0), S(1)};
    const Mat2<S> h = matrix_H<S>(k, N);
    Mat2<S> imh{S(identity.a00 - h.a00), S(identity.a01 - h.a01),
                S(identity.a10 - h.a10), S(identity.a11 - h.a11)};
    const Mat2<S> a = matrix_L<S>(k, N) * triangular_inverse(imh);
    if (!detail::matrices_close(a, matrix_A_display<S>(k, N), 1e-14))
        throw std::logic_error("matrix_A: computed product disagrees with display");
    return a;
}

/// Rescaled sweep-step matrix A~_k = D_{k+1} A_k D_k^{-1}, row-stochastic:
/// [[1 - q, q], [1/(2N+1), 2N/(2N+1)]] with q = (N-k)/((2N+1)(k+1)).
template <class S>
Mat2<S> matrix_A_tilde(long long k, long long N) {
    detail::require_k_range(k, N);
    const S q = frac<S>(N - k, (2 * N + 1) * (k + 1));
    const S r = frac<S>(1, 2 * N + 1);
    return Mat2<S>{S(S(1) - q), q, r, S(S(1) - r)};
}

/// Variant display of A~_k whose left column is wrong (kept so the
/// validation suite can locate and report the bad entries; do not iterate
/// with it).  Right column matches matrix_A_tilde.
template <class S>
Mat2<S> matrix_A_tilde_display_variant(long long k, long long N) {
    detail::require_k_range(k, N);
    Mat2<S> a;
    a.a00 = S(S(1) - frac<S>(1, 2 * N + 1) *
                         (S(1) - frac<S>(1, 2 * k + 1) + frac<S>(1, 2 * N) -
                          frac<S>(1, 2 * N * (k + 1))));
    a.a01 = frac<S>(N - k, (2 * N + 1) * (k + 1));
    a.a10 = frac<S>(1, (2 * N + 1) * k);
    a.a11 = S(S(1) - frac<S>(1, 2 * N + 1));
    return a;
}

/// Variant closed form for the inverse of [[p, 0], [q, r]] with the two
/// diagonal entries swapped (wrong unless p == r); see display typo report.
template <class S>
Mat2<S> triangular_inverse_display_variant(const Mat2<S>& m) {
    if (!(m.a01 == S(0)))
        throw std::invalid_argument("triangular_inverse_display_variant: not lower triangular");
    Mat2<S> inv;
    inv.a00 = S(S(1) / m.a11);
    inv.a01 = S(0);
    inv.a10 = S(-m.a10 / (m.a00 * m.a11));
    inv.a11 = S(S(1) / m.a00);
    return inv;
}

// ── Recurrence iteration ────────────────────────────────────────────────────

/// One row of the per-k table: u, v plus the rescaled variables.
/// At k = N the rescaled v~ carries the formal recurrence value
/// (the v/(N-k) rescaling is undefined there) and v = 0 identically.
template <class S>
struct RecurrenceRow {
    long long k = 0;
    S u{}, v{}, u_tilde{}, v_tilde{}, x{};
};

/// (u_k, v_k) only; produced by the direct (u, v) route for cross-checks.
template <class S>
struct UvRow {
    long long k = 0;
    S u{}, v{};
};

/// Resource limits for exact iteration.
struct RationalLimits {
    long long max_n = 2000;          // numerators grow with N
    std::size_t max_bits = 1 << 22;  // watchdog on num+den bit size
};

namespace detail {

template <class S>
void check_budget(const Vec2<S>&, const RationalLimits*) {}

inline void check_budget(const Vec2<Rational>& x, const RationalLimits* limits) {
    if (limits == nullptr) return;
    const std::size_t bits = bit_size(x.u) + bit_size(x.v);
    if (bits > limits->max_bits)
        throw ResourceLimitError("rational iteration exceeded bit budget (" +
                                 std::to_string(bits) + " > " +
                                 std::to_string(limits->max_bits) + " bits)");
}

/// Tilde-variable iteration; rows for k = 1..N.
template <class S>
std::vector<RecurrenceRow<S>> iterate_uv_impl(long long N, const RationalLimits* limits) {
    if (N < 2) throw std::invalid_argument("iterate_uv: N must be >= 2");
    std::vector<RecurrenceRow<S>> rows;
    rows.reserve(static_cast<std::size_t>(N));
    Vec2<S> t{S(1), S(0)};  // (u~_1, v~_1) = (u_1/1, v_1/(N-1)) = (1, 0)
    rows.push_back(RecurrenceRow<S>{1, S(1), S(0), t.u, t.v, S(t.u - t.v)});
    for (long long k = 1; k < N; ++k) {
        t = matrix_A_tilde<S>(k, N) * t;
        check_budget(t, limits);
        RecurrenceRow<S> row;
        row.k = k + 1;
        row.u_tilde = t.u;
        row.v_tilde = t.v;
        row.u = S(t.u * frac<S>(k + 1, 1));
        row.v = S(t.v * frac<S>(N - k - 1, 1));  // 0 at k+1 = N by construction
        row.x = S(t.u - t.v);
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Direct (u, v) iteration with A_k; the cross-check route.
template <class S>
std::vector<UvRow<S>> iterate_uv_direct_impl(long long N, const RationalLimits* limits) {
    if (N < 2) throw std::invalid_argument("iterate_uv_direct: N must be >= 2");
    std::vector<UvRow<S>> rows;
    rows.reserve(static_cast<std::size_t>(N));
    Vec2<S> w{S(1), S(0)};
    rows.push_back(UvRow<S>{1, w.u, w.v});
    for (long long k = 1; k < N; ++k) {
        w = matrix_A<S>(k, N) * w;
        check_budget(w, limits);
        rows.push_back(UvRow<S>{k + 1, w.u, w.v});
    }
    return rows;
}

/// x_1 = 1;  x_{k+1} = (2Nk + N + k) / ((2N+1)(k+1)) * x_k.
template <class S>
std::vector<S> x_sequence_impl(long long N) {
    if (N < 2) throw std::invalid_argument("x_sequence: N must be >= 2");
    std::vector<S> xs;
    xs.reserve(static_cast<std::size_t>(N));
    S x = S(1);
    xs.push_back(x);
    for (long long k = 1; k < N; ++k) {
        x = S(x * frac<S>(2 * N * k + N + k, (2 * N + 1) * (k + 1)));
        xs.push_back(x);
    }
    return xs;
}

}  // namespace detail

std::vector<RecurrenceRow<double>> iterate_uv(long long N);
std::vector<RecurrenceRow<Rational>> iterate_uv_rational(long long N,
                                                         const RationalLimits& limits = {});
std::vector<UvRow<double>> iterate_uv_direct(long long N);
std::vector<UvRow<Rational>> iterate_uv_direct_rational(long long N,
                                                        const RationalLimits& limits = {});
std::vector<double> x_sequence(long long N);
std::vector<Rational> x_sequence_rational(long long N);

/// u_N (the expected fixation weight of the first carrier), float backend.
double expected_fixation_weight(long long N);

/// u_N in exact arithmetic.
Rational expected_fixation_weight_rational(long long N, const RationalLimits& limits = {});

// ── Display cross-checks ────────────────────────────────────────────────────

/// One located disagreement between a display variant and the derived form.
struct DisplayTypo {
    std::string form;       // which display ("A~ display variant", ...)
    std::string entry;      // matrix entry, e.g. "(0,0)"
    long long k = 0, N = 0;  // smallest instance exhibiting the mismatch
    std::string display_value;
    std::string derived_value;
};

/// Result of arbitrating the A_k / A~_k display pair over a (k, N) grid.
struct DisplayArbitration {
    bool a_display_matches = false;        // entrywise, all instances
    bool a_tilde_variant_matches = false;  // entrywise, all instances
    std::vector<DisplayTypo> typos;        // deduplicated by (form, entry)
};

/// Exact-arithmetic comparison of both displays against L_k [I-H_k]^{-1}
/// and its conjugation, for all 1 <= k <= N-1, N in [2, max_n].
/// Also checks the swapped-diagonal triangular-inverse variant.
DisplayArbitration arbitrate_displays(long long max_n);

}  // namespace moran
