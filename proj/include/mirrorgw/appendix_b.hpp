#pragma once

#include "mirrorgw/geometry.hpp"
#include "mirrorgw/series.hpp"

namespace mirrorgw {

// Combinatorial identities used by the structure-constant formulas. Every check
// throws IdentityViolation on the first failing instance and otherwise returns the
// number of instances verified.

// Vandermonde convolution, the alternating rising-product sum and the negative
// binomial expansion, for all arguments up to max_arg.
int check_binomial_identities(int max_arg);

// Coefficient of shat_{r1}^{b1} shat_{r2}^{b2} in the power sum w_{b1 r1 + b2 r2}
// written in the signed elementary symmetric polynomials, from Newton's identity.
BigRational power_sum_coefficient(int r1, int r2, int b1, int b2);
// Closed form C(b1+b2-1, b2) r1 + C(b1+b2-1, b1) r2 of the same coefficient.
BigRational power_sum_coefficient_closed(int r1, int r2, int b1, int b2);
// Compares the two for r1 != r2 in [1, max_r] and 0 < b1 + b2 <= max_b_sum.
int check_power_sum_coefficients(int max_b_sum, int max_r);

// [n L^{nu d + n t} / (|a| + nu L^n)]_{q;d} computed from L and from its closed form.
BigRational l_power_coefficient(const CIGeometry& g, const QSeries& L, int d, int t);
BigRational l_power_coefficient_closed(const CIGeometry& g, int d, int t);
// [n L^{nu d + n t} / (|a| + nu L^n)^k * L'/L]_{q;d} from L and from its closed form.
BigRational l_log_derivative_coefficient(const CIGeometry& g, const QSeries& L, int d, int t, int k);
BigRational l_log_derivative_coefficient_closed(const CIGeometry& g, int d, int t, int k);
// Both comparisons for 0 <= d <= max_d, |t| <= max_abs_t and 0 <= k <= max_k.
int check_l_power_identities(const CIGeometry& g, int max_d, int max_abs_t, int max_k);

}  // namespace mirrorgw
