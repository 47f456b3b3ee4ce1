#pragma once

// The Ramanujan function, the q-Airy function and their representations at
// the origin and at infinity, including the resummed divergent series
// 2phi0(0,0;-;q,-x/q).

#include "qconnect/qmodulus.hpp"

namespace qconnect {

/// A_q(x) = sum_n q^{n^2} (-x)^n / (q;q)_n. Entire in x; any base works
/// (A_{q^2} is A evaluated with base q^2).
Summation ramanujan_A_sum(const QModulus& q, Complex x, const Truncation& trunc = {});
Complex ramanujan_A(const QModulus& q, Complex x, const Truncation& trunc = {});

/// Ai_q(x) = 1phi1(0; -q; q, -x).
Summation qairy_Ai_sum(const QModulus& q, Complex x, const Truncation& trunc = {});
Complex qairy_Ai(const QModulus& q, Complex x, const Truncation& trunc = {});

/// theta_q(q^2 x) / theta_q(-q^2 x) * Ai_q(-x), the second solution of the
/// q-Airy equation built from a single-valued theta ratio.
Complex qairy_second_solution(const QModulus& q, Complex x, const Truncation& trunc = {});

/// g(tau) = 1 / ((-q^2 tau; q)_inf (q^2 tau; q)_inf); poles at +-q^{-2-k}.
Complex g_borel_image(const QModulus& q, Complex tau, const Truncation& trunc = {},
                      double delta = kDefaultProximity);

/// Residue-sum form of f(t) = A_{q^2}(-q^3 t^2):
///   [theta(q^2 t) 1phi1(0;-q;q,1/t) + theta(-q^2 t) 1phi1(0;-q;q,-1/t)] / (q,-1;q)_inf.
struct ResidueSum {
    Complex value;
    /// (|first| + |second|) / |value|.
    double condition = 0.0;
    int terms = 0;
};
ResidueSum f_via_residues(const QModulus& q, Complex t, const Truncation& trunc = {});

/// Local solution of the q-Airy equation at infinity, z(t) = E(t) f(t) with
/// gauge E(t) = 1/theta_q(-q^2 t) and f(t) = A_{q^2}(-q^3 t^2), where t = 1/x.
struct SolutionAtInfinity {
    Complex t;
    Complex gauge;
    Complex series;

    Complex value() const noexcept { return gauge * series; }
};

/// Throws ThetaZero for t near q^Z, where the gauge has poles.
SolutionAtInfinity solution_at_infinity(const QModulus& q, Complex t, const Truncation& trunc = {},
                                        double delta = kDefaultProximity);

/// E(t) = 1/theta_q(-q^2 t).
Complex gauge_at_infinity(const QModulus& q, Complex t, const Truncation& trunc = {},
                          double delta = kDefaultProximity);

/// Resummation 2f0(0,0;-;q,-x/q) along [lambda; q]: the first-kind Laplace
/// transform of xi -> e_q(xi/q), with e_q in product form.
/// Throws SpiralProximity if lambda is near q^Z or x is near [-lambda; q].
Summation two_f_zero(const QModulus& q, Complex lambda, Complex x, const Truncation& trunc = {},
                     double delta = kDefaultProximity);

/// Closed form of the same resummation, split into its two summands
///
///   origin = (q;q)_inf theta_{q^2}(-lambda^2/(q x)) / (theta_q(-lambda/q) theta_q(lambda/x))
///              * 1phi1(0; q; q^2, q^2/x)
///   spiral = (q;q)_inf / (1-q) theta_{q^2}(-lambda^2/x) / (theta_q(-lambda/q) theta_q(lambda/x))
///              * (lambda/x) 1phi1(0; q^3; q^2, q^3/x)
struct TwoFZeroClosed {
    Complex origin_term;
    Complex spiral_term;
    Complex theta_x;
    int terms = 0;

    Complex bare() const noexcept { return origin_term + spiral_term; }
    /// theta_q(x) times the resummation.
    Complex with_theta() const noexcept { return theta_x * bare(); }
    double condition() const noexcept;
};

/// Throws ThetaZero if lambda is near q^Z (theta_q(-lambda/q) = 0) and
/// SpiralProximity if x is near [-lambda; q].
TwoFZeroClosed two_f_zero_closed(const QModulus& q, Complex lambda, Complex x,
                                 const Truncation& trunc = {}, double delta = kDefaultProximity);

/// Res{ 1/((tau/lambda; q)_inf tau) ; tau = lambda q^{-k} }
///   = (-1)^{k+1} q^{k(k+1)/2} / ((q;q)_k (q;q)_inf), independent of lambda.
Complex residue_lemma_closed(const QModulus& q, int k, const Truncation& trunc = {});

}  // namespace qconnect
