#include "qconnect/transforms.hpp"

#include "qconnect/errors.hpp"
#include "qconnect/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qconnect {

namespace {

// Mean of h over the N uniform angles 2 pi j / N, refined by doubling.
QuadratureResult periodic_mean(const std::function<Complex(double)>& h, const CircleRule& rule)
{
    if (rule.initial_nodes < 1 || rule.max_nodes < rule.initial_nodes || !(rule.eps > 0.0))
        throw QError(Errc::InvalidArgument, "invalid circle rule");

    auto sample = [&](double angle) {
        const Complex v = h(angle);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw QError(Errc::PoleOnContour, "integrand is not finite on the contour");
        return v;
    };

    int n = rule.initial_nodes;
    Complex sum = 0.0;
    double abs_sum = 0.0;
    for (int j = 0; j < n; ++j) {
        const Complex v = sample(2.0 * std::numbers::pi * j / n);
        sum += v;
        abs_sum += std::abs(v);
    }
    Complex previous = sum / static_cast<double>(n);

    while (2 * n <= rule.max_nodes) {
        // The doubled rule reuses every old node and adds the odd ones.
        for (int j = 0; j < n; ++j) {
            const Complex v = sample(std::numbers::pi * (2 * j + 1) / n);
            sum += v;
            abs_sum += std::abs(v);
        }
        n *= 2;
        const Complex current = sum / static_cast<double>(n);
        const double mean_abs = abs_sum / n;
        const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * mean_abs;
        if (std::abs(current - previous) <= std::max(rule.eps * std::abs(current), rounding)) {
            return {current, n, mean_abs / std::max(std::abs(current), 1e-300)};
        }
        previous = current;
    }
    throw QError(Errc::NoConvergence, "circle rule did not converge within the node cap");
}

}  // namespace

QuadratureResult circle_integral(const ComplexFunction& f, Complex center, double radius,
                                 const CircleRule& rule)
{
    if (!(radius > 0.0))
        throw QError(Errc::InvalidArgument, "contour radius must be positive");
    // d tau / (2 pi i) = (tau - center) d angle / (2 pi).
    return periodic_mean(
        [&](double angle) {
            const Complex offset = std::polar(radius, angle);
            return f(center + offset) * offset;
        },
        rule);
}

double default_contour_radius(const QModulus& q)
{
    return std::min(1.0, 0.5 / std::norm(q.value()));
}

QuadratureResult qlaplace_minus_detailed(const ComplexFunction& g, const QModulus& q, Complex t,
                                         double radius, const CircleRule& rule,
                                         const Truncation& trunc)
{
    if (t == 0.0)
        throw QError(Errc::ZeroArgument, "q-Laplace transform needs t != 0");
    if (!(radius > 0.0 && radius < 1.0 / std::norm(q.value()))) {
        std::ostringstream os;
        os << "contour radius must lie in (0, 1/|q^2|), got " << radius;
        throw QError(Errc::InvalidArgument, os.str());
    }
    return periodic_mean(
        [&](double angle) {
            const Complex tau = std::polar(radius, angle);
            Complex gv;
            try {
                gv = g(tau);
            } catch (const QError& e) {
                if (e.code() == Errc::PoleHit)
                    throw QError(Errc::PoleOnContour, e.what());
                throw;
            }
            return gv * theta(q, t / tau, trunc);
        },
        rule);
}

Complex qlaplace_minus(const ComplexFunction& g, const QModulus& q, Complex t, double radius,
                       const CircleRule& rule, const Truncation& trunc)
{
    return qlaplace_minus_detailed(g, q, t, radius, rule, trunc).value;
}

namespace {

void require_off_spiral(const QModulus& q, Complex lambda, Complex x, double delta)
{
    if (lambda == 0.0 || x == 0.0)
        throw QError(Errc::ZeroArgument, "first-kind q-Laplace transform needs lambda, x != 0");
    if (Spiral(-lambda, q, delta).near(x)) {
        std::ostringstream os;
        os << "x=" << x << " lies on the spiral [-lambda;q] with lambda=" << lambda;
        throw QError(Errc::SpiralProximity, os.str());
    }
}

// Sum over n in Z of term(n), growing both tails until each has `streak`
// consecutive negligible terms.
template <typename Term>
Summation spiral_sum(const Term& term, const Truncation& trunc)
{
    const int streak = std::max(trunc.streak, 5);
    Summation out;
    out.value = term(0);
    out.magnitude = std::abs(out.value);
    out.terms = 1;
    int up_run = 0, down_run = 0;
    for (long long n = 1; n <= trunc.n_max; ++n) {
        if (up_run < streak) {
            const Complex v = term(n);
            out.value += v;
            out.magnitude += std::abs(v);
            ++out.terms;
            up_run = std::abs(v) <= trunc.eps * std::abs(out.value) ? up_run + 1 : 0;
        }
        if (down_run < streak) {
            const Complex v = term(-n);
            out.value += v;
            out.magnitude += std::abs(v);
            ++out.terms;
            down_run = std::abs(v) <= trunc.eps * std::abs(out.value) ? down_run + 1 : 0;
        }
        if (up_run >= streak && down_run >= streak)
            return out;
    }
    throw QError(Errc::TruncationExceeded, "spiral sum did not converge");
}

}  // namespace

Summation qlaplace_plus(const ComplexFunction& phi, const QModulus& q, Complex lambda, Complex x,
                        const Truncation& trunc, double delta)
{
    trunc.validate();
    require_off_spiral(q, lambda, x, delta);
    auto term = [&](long long n) {
        const Complex xi = lambda * q.pow(n);
        const Complex th = theta(q, xi / x, trunc);
        const Complex ph = phi(xi);
        if (!std::isfinite(std::abs(ph)))
            throw QError(Errc::TruncationExceeded,
                         "phi overflows on the spiral; use the series form of the transform");
        if (!std::isfinite(std::abs(th)))
            return Complex(0.0);
        return ph / th;
    };
    return spiral_sum(term, trunc);
}

Summation qlaplace_plus(const FormalSeries& phi, Complex lambda, Complex x,
                        const Truncation& trunc, double delta)
{
    trunc.validate();
    const QModulus& q = phi.base();
    require_off_spiral(q, lambda, x, delta);
    const Complex log_lambda = std::log(lambda);
    auto term = [&](long long n) {
        const Complex xi = lambda * q.pow(n);
        const Complex log_xi = log_lambda + static_cast<double>(n) * q.log_q();
        const Complex log_th = log_theta(q, xi / x, trunc);
        Complex sum = 0.0;
        for (int k = 0; k <= phi.order(); ++k) {
            if (phi[k] != 0.0)
                sum += phi[k] * std::exp(static_cast<double>(k) * log_xi - log_th);
        }
        return sum;
    };
    return spiral_sum(term, trunc);
}

QDEOperator covering_transform(const QDEOperator& op, Complex p)
{
    if (std::abs(p * p - op.base().value()) > 1e-14 * std::abs(op.base().value()))
        throw QError(Errc::InvalidArgument, "covering base p must satisfy p^2 = q");
    std::vector<QDETerm> terms;
    terms.reserve(op.terms().size());
    for (const auto& t : op.terms())
        terms.push_back({2 * t.power, t.coeff, t.shift});
    return QDEOperator(QModulus(p), std::move(terms));
}

QDEOperator covering_transform(const QDEOperator& op)
{
    return covering_transform(op, op.base().root());
}

FormalSeries covering_series(const FormalSeries& u, Complex p)
{
    if (std::abs(p * p - u.base().value()) > 1e-14 * std::abs(u.base().value()))
        throw QError(Errc::InvalidArgument, "covering base p must satisfy p^2 = q");
    std::vector<Complex> out(static_cast<std::size_t>(2 * u.order()) + 1, 0.0);
    for (int n = 0; n <= u.order(); ++n)
        out[static_cast<std::size_t>(2 * n)] = u[n];
    return FormalSeries(QModulus(p), std::move(out));
}

}  // namespace qconnect
