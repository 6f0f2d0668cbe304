// =============================================================================
// asymptotics.hpp — Closed forms and bounds behind the sqrt(N) fixation law.
//
// The rescaled difference x_k = u~_k - v~_k telescopes into the product
//
//     x_{k+1} = prod_{l=1}^{k} [1 - 1/((2l+1)(2N+1))] * cb(k+1),
//     cb(m)   = 2 (2m)! / (4^m (m!)^2)  ~  2/sqrt(pi m),
//
// and v~_N = (1/(2N+1)) sum_{l=1}^{N-1} x_l.  Together these give
// E(fixation weight) = N (x_N + v~_N) ~ (4/sqrt(pi)) sqrt(N).
//
// Products are evaluated in log space as compensated sums of log1p terms;
// a log-gamma variant of cb is kept for cross-checks (it is a few ulp
// noisier at large k, see central_binomial_factor_lgamma).
// =============================================================================
#pragma once

#include <vector>

namespace moran {

/// cb(m) = 2 (2m)! / (4^m (m!)^2) via a compensated log1p sum. cb(0) = 2.
double central_binomial_factor(long long m);

/// Same quantity via log-gamma; cross-check only.
double central_binomial_factor_lgamma(long long m);

/// Leading-order approximation 2/sqrt(pi (k+1)) of cb(k+1).
double stirling_term(long long k);

/// x_{k+1} from the closed product form (k = 0 gives x_1 = 1). 0 <= k <= N-1.
double x_closed_form(long long k, long long N);

/// x_1..x_N from the closed form, evaluated incrementally in O(N).
/// Element [0] is unused (indexing follows the k subscript).
std::vector<double> x_closed_form_all(long long N);

/// v~_N = (1/(2N+1)) sum_{l=1}^{N-1} x_l with x from the closed form.
double v_tilde_closed(long long N);

/// (4/sqrt(pi)) sqrt(N), the predicted expected fixation weight.
double theorem_prediction(long long N);

/// Sandwich evaluation of x_k against 2/sqrt(pi k) (1 -+ correction):
/// lower = base (1 - C (log k + 1)/N), upper = base (1 + C/k).
struct BoundsReport {
    long long k = 0;
    long long N = 0;
    double x_exact = 0;
    double lower = 0;
    double upper = 0;
    double c_used = 0;
    bool pass = false;
};

BoundsReport lemma_bounds(long long k, long long N, double C);

/// Smallest C for which lemma_bounds passes at every k in 1..N, and the k
/// where that requirement binds.
struct SmallestC {
    double c = 0;
    long long binding_k = 0;
};

SmallestC smallest_passing_c(long long N);

/// sum_{l=1}^{k} 1/((2l+1)(2N+1)) < log(2k+2) / (2(2N+1)).
bool log_sum_inequality_holds(long long k, long long N);

}  // namespace moran
