#pragma once

// Analytic q-Borel-Laplace machinery: the second-kind Laplace transform as a
// contour integral against the theta kernel, the first-kind Laplace transform
// as a bilateral sum over a q-spiral, and the covering transformation.

#include "qconnect/qmodulus.hpp"
#include "qconnect/series.hpp"

#include <functional>

namespace qconnect {

using ComplexFunction = std::function<Complex(Complex)>;

/// Node schedule of the uniform circle rule.
struct CircleRule {
    int initial_nodes = 64;
    int max_nodes = 4096;
    /// Successive node doublings must agree to this relative tolerance.
    double eps = 1e-15;
};

struct QuadratureResult {
    Complex value;
    int nodes = 0;
    /// mean |integrand sample| / |value|.
    double condition = 0.0;
};

/// (1/2 pi i) \oint_{|tau - center| = radius} f(tau) d tau by the uniform
/// circle rule with node doubling. Throws PoleOnContour if f is not finite
/// on the circle and NoConvergence if doubling exceeds the node cap.
QuadratureResult circle_integral(const ComplexFunction& f, Complex center, double radius,
                                 const CircleRule& rule = {});

/// min(1, 0.5/|q^2|).
double default_contour_radius(const QModulus& q);

/// Second-kind q-Laplace transform
///   (L^- g)(t) = (1/2 pi i) \oint_{|tau| = r} g(tau) theta_q(t/tau) d tau / tau,
/// for g analytic on |tau| <= r with 0 < r < 1/|q^2|.
QuadratureResult qlaplace_minus_detailed(const ComplexFunction& g, const QModulus& q, Complex t,
                                         double radius, const CircleRule& rule = {},
                                         const Truncation& trunc = {});

Complex qlaplace_minus(const ComplexFunction& g, const QModulus& q, Complex t, double radius,
                       const CircleRule& rule = {}, const Truncation& trunc = {});

/// First-kind q-Laplace transform along the spiral [lambda; q]:
///   (L^+ phi)(x) = sum_{n in Z} phi(lambda q^n) / theta_q(lambda q^n / x).
///
/// Each tail stops after max(trunc.streak, 5) consecutive terms below
/// eps |partial|. Throws SpiralProximity when x is near [-lambda; q].
Summation qlaplace_plus(const ComplexFunction& phi, const QModulus& q, Complex lambda, Complex x,
                        const Truncation& trunc = {}, double delta = kDefaultProximity);

/// Same transform for phi given by its coefficients. Each term is formed in
/// logarithmic scale, so phi(xi) and theta_q(xi/x) may individually overflow.
Summation qlaplace_plus(const FormalSeries& phi, Complex lambda, Complex x,
                        const Truncation& trunc = {}, double delta = kDefaultProximity);

/// Covering transformation t^2 = x, v(t) = u(t^2), p^2 = q:
/// each term c x^m sigma_q^l becomes c t^{2m} sigma_p^l over base p.
QDEOperator covering_transform(const QDEOperator& op, Complex p);

/// Same, with p the principal square root of the operator's base.
QDEOperator covering_transform(const QDEOperator& op);

/// v(t) = u(t^2) coefficientwise, over base p.
FormalSeries covering_series(const FormalSeries& u, Complex p);

}  // namespace qconnect
