#pragma once

// Scalar building blocks: q-shifted factorials, the Jacobi theta function,
// convergent basic hypergeometric series and the two q-exponentials.

#include "qconnect/qmodulus.hpp"

#include <span>

namespace qconnect {

/// (a;q)_n = (1-a)(1-aq)...(1-aq^{n-1}); 1 for n = 0.
Complex qpochhammer(Complex a, const QModulus& q, int n);

/// (a;q)_inf, truncated once |a q^n| < eps for `streak` consecutive n.
Complex qpochhammer_inf(Complex a, const QModulus& q, const Truncation& trunc = {});

/// (a_1, ..., a_m; q)_inf.
Complex qpochhammer_inf(std::span<const Complex> as, const QModulus& q,
                        const Truncation& trunc = {});

/// 1/(lambda q^{-k}; q)_inf through the closed form
///   (-lambda)^{-k} q^{k(k+1)/2} / ((lambda;q)_inf (q/lambda;q)_k).
/// Throws SpiralProximity when lambda is within `delta` of q^Z.
Complex qpochhammer_inf_shifted_pole(Complex lambda, const QModulus& q, int k,
                                     const Truncation& trunc = {},
                                     double delta = kDefaultProximity);

/// theta_q(x) = sum_{n in Z} q^{n(n-1)/2} x^n.
///
/// x is moved into the annulus |q|^{1/2} <= |y| <= |q|^{-1/2} with the shift
/// law and the triple product is evaluated there, which keeps the relative
/// accuracy near the zeros -q^Z.
Complex theta(const QModulus& q, Complex x, const Truncation& trunc = {});

/// A logarithm of theta_q(x) (any branch), finite where theta_q itself
/// would overflow. Throws ThetaZero at an exact zero.
Complex log_theta(const QModulus& q, Complex x, const Truncation& trunc = {});

/// Bilateral sum form of theta, at any x != 0.
Summation theta_sum(const QModulus& q, Complex x, const Truncation& trunc = {});

/// Triple product (q, -x, -q/x; q)_inf, at any x != 0.
Complex theta_product(const QModulus& q, Complex x, const Truncation& trunc = {});

/// True if x lies within `delta` of the zero set -q^Z of theta_q.
bool near_theta_zero(const QModulus& q, Complex x, double delta = kDefaultProximity);

/// The basic hypergeometric series
///   r phi s (a_1..a_r; b_1..b_s; q, x)
///     = sum_n (a;q)_n / ((b;q)_n (q;q)_n) ((-1)^n q^{n(n-1)/2})^{1+s-r} x^n.
///
/// Terminating series (some a_i in q^{-N}) are summed exactly. Otherwise
/// r - s > 1 raises DivergentSeries and r - s == 1 requires |x| < 1.
Summation rphis_sum(std::span<const Complex> upper, std::span<const Complex> lower,
                    const QModulus& q, Complex x, const Truncation& trunc = {});

Complex rphis(std::span<const Complex> upper, std::span<const Complex> lower,
              const QModulus& q, Complex x, const Truncation& trunc = {});

enum class ExpForm { Series, Product };

/// e_q(x) = 1 phi 0 (0;-;q,x) = sum x^n/(q;q)_n.
/// Series form needs |x| < 1; product form 1/(x;q)_inf is valid off the
/// poles q^{-k}, k >= 0, and raises PoleHit near them.
Complex e_q(const QModulus& q, Complex x, const Truncation& trunc = {},
            ExpForm form = ExpForm::Series, double delta = kDefaultProximity);

/// E_q(x) = 0 phi 0 (-;-;q,-x) = sum q^{n(n-1)/2} x^n/(q;q)_n = (-x;q)_inf.
Complex E_q(const QModulus& q, Complex x, const Truncation& trunc = {},
            ExpForm form = ExpForm::Series);

}  // namespace qconnect
