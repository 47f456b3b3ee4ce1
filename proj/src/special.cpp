#include "qconnect/special.hpp"

#include "qconnect/errors.hpp"
#include "qconnect/qcore.hpp"
#include "qconnect/transforms.hpp"

#include <cmath>
#include <sstream>

namespace qconnect {

namespace {

std::string describe(Complex z)
{
    std::ostringstream os;
    os.precision(15);
    os << z;
    return os.str();
}

}  // namespace

Summation ramanujan_A_sum(const QModulus& q, Complex x, const Truncation& trunc)
{
    trunc.validate();
    const Complex qq = q.value();
    Summation out;
    out.value = 1.0;
    out.magnitude = 1.0;
    out.terms = 1;
    if (x == 0.0)
        return out;

    // t_{n+1} / t_n = -x q^{2n+1} / (1 - q^{n+1}).
    Complex term = 1.0;
    Complex qn = 1.0;
    int run = 0;
    for (int n = 0; n < trunc.n_max; ++n) {
        term *= -x * qn * qn * qq / (1.0 - qn * qq);
        qn *= qq;
        out.value += term;
        out.magnitude += std::abs(term);
        ++out.terms;
        const double t = std::abs(term);
        run = (t == 0.0 || t <= trunc.eps * std::abs(out.value)) ? run + 1 : 0;
        if (run >= trunc.streak)
            return out;
    }
    throw QError(Errc::TruncationExceeded, "Ramanujan series did not converge at x=" + describe(x));
}

Complex ramanujan_A(const QModulus& q, Complex x, const Truncation& trunc)
{
    return ramanujan_A_sum(q, x, trunc).value;
}

Summation qairy_Ai_sum(const QModulus& q, Complex x, const Truncation& trunc)
{
    const Complex upper[] = {0.0};
    const Complex lower[] = {-q.value()};
    return rphis_sum(upper, lower, q, -x, trunc);
}

Complex qairy_Ai(const QModulus& q, Complex x, const Truncation& trunc)
{
    return qairy_Ai_sum(q, x, trunc).value;
}

Complex qairy_second_solution(const QModulus& q, Complex x, const Truncation& trunc)
{
    const Complex q2x = q.squared() * x;
    if (near_theta_zero(q, -q2x))
        throw QError(Errc::ThetaZero,
                     "theta_q(-q^2 x) vanishes at x=" + describe(x) + " (spiral [1;q])");
    return theta(q, q2x, trunc) / theta(q, -q2x, trunc) * qairy_Ai(q, -x, trunc);
}

Complex g_borel_image(const QModulus& q, Complex tau, const Truncation& trunc, double delta)
{
    const Complex anchor = 1.0 / q.squared();
    for (Complex sign : {Complex(1.0), Complex(-1.0)}) {
        if (auto k = Spiral(sign * anchor, q, delta).nearest_index(tau); k && *k <= 0)
            throw QError(Errc::PoleHit, "g has a pole at tau=" + describe(tau));
    }
    const Complex q2tau = q.squared() * tau;
    return 1.0 / (qpochhammer_inf(-q2tau, q, trunc) * qpochhammer_inf(q2tau, q, trunc));
}

ResidueSum f_via_residues(const QModulus& q, Complex t, const Truncation& trunc)
{
    if (t == 0.0)
        throw QError(Errc::ZeroArgument, "residue sum needs t != 0");
    const Complex upper[] = {0.0};
    const Complex lower[] = {-q.value()};
    const Summation plus = rphis_sum(upper, lower, q, 1.0 / t, trunc);
    const Summation minus = rphis_sum(upper, lower, q, -1.0 / t, trunc);
    const Complex norm = qpochhammer_inf(q.value(), q, trunc) * qpochhammer_inf(-1.0, q, trunc);
    const Complex first = theta(q, q.squared() * t, trunc) * plus.value / norm;
    const Complex second = theta(q, -q.squared() * t, trunc) * minus.value / norm;

    ResidueSum out;
    out.value = first + second;
    out.condition = (std::abs(first) + std::abs(second)) / std::max(std::abs(out.value), 1e-300);
    out.terms = plus.terms + minus.terms;
    return out;
}

Complex gauge_at_infinity(const QModulus& q, Complex t, const Truncation& trunc, double delta)
{
    const Complex arg = -q.squared() * t;
    if (arg == 0.0 || near_theta_zero(q, arg, delta))
        throw QError(Errc::ThetaZero,
                     "gauge 1/theta_q(-q^2 t) has a pole at t=" + describe(t) + " (spiral [1;q])");
    return 1.0 / theta(q, arg, trunc);
}

SolutionAtInfinity solution_at_infinity(const QModulus& q, Complex t, const Truncation& trunc,
                                        double delta)
{
    SolutionAtInfinity z;
    z.t = t;
    z.gauge = gauge_at_infinity(q, t, trunc, delta);
    z.series = ramanujan_A(q.squared_base(), -q.value() * q.squared() * t * t, trunc);
    return z;
}

Summation two_f_zero(const QModulus& q, Complex lambda, Complex x, const Truncation& trunc,
                     double delta)
{
    if (lambda == 0.0 || Spiral(1.0, q, delta).near(lambda))
        throw QError(Errc::SpiralProximity,
                     "lambda=" + describe(lambda) + " lies on [1;q], where e_q(xi/q) has poles");
    const Complex qq = q.value();
    return qlaplace_plus(
        [&](Complex xi) { return e_q(q, xi / qq, trunc, ExpForm::Product, delta); }, q, lambda, x,
        trunc, delta);
}

double TwoFZeroClosed::condition() const noexcept
{
    return (std::abs(origin_term) + std::abs(spiral_term)) / std::max(std::abs(bare()), 1e-300);
}

TwoFZeroClosed two_f_zero_closed(const QModulus& q, Complex lambda, Complex x,
                                 const Truncation& trunc, double delta)
{
    if (lambda == 0.0 || Spiral(1.0, q, delta).near(lambda))
        throw QError(Errc::ThetaZero, "theta_q(-lambda/q) vanishes for lambda=" + describe(lambda)
                                          + " on the spiral [1;q]");
    if (x == 0.0)
        throw QError(Errc::ZeroArgument, "closed form needs x != 0");
    if (Spiral(-lambda, q, delta).near(x))
        throw QError(Errc::SpiralProximity,
                     "x=" + describe(x) + " lies on the spiral [-lambda;q]");

    const Complex qq = q.value();
    const QModulus q2 = q.squared_base();
    const Complex pochhammer_q = qpochhammer_inf(qq, q, trunc);
    const Complex denominator = theta(q, -lambda / qq, trunc) * theta(q, lambda / x, trunc);
    const Complex prefactor = pochhammer_q / denominator;

    const Complex upper[] = {0.0};
    const Complex lower_origin[] = {qq};
    const Complex lower_spiral[] = {qq * qq * qq};
    const Summation origin_series = rphis_sum(upper, lower_origin, q2, q2.value() / x, trunc);
    const Summation spiral_series = rphis_sum(upper, lower_spiral, q2, qq * qq * qq / x, trunc);

    TwoFZeroClosed out;
    out.origin_term = prefactor * theta(q2, -lambda * lambda / (qq * x), trunc) * origin_series.value;
    out.spiral_term = prefactor / (1.0 - qq) * theta(q2, -lambda * lambda / x, trunc) * (lambda / x)
                    * spiral_series.value;
    out.theta_x = theta(q, x, trunc);
    out.terms = origin_series.terms + spiral_series.terms;
    return out;
}

Complex residue_lemma_closed(const QModulus& q, int k, const Truncation& trunc)
{
    if (k < 0)
        throw QError(Errc::InvalidArgument, "residue index must be nonnegative");
    const double sign = (k % 2 == 0) ? -1.0 : 1.0;
    const Complex qq = q.value();
    return sign * q.pow(static_cast<long long>(k) * (k + 1) / 2)
         / (qpochhammer(qq, q, k) * qpochhammer_inf(qq, q, trunc));
}

}  // namespace qconnect
