#include "qconnect/qcore.hpp"

#include "qconnect/errors.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace qconnect {

namespace {

// Counts consecutive negligible terms of a sum.
class TailMonitor {
public:
    explicit TailMonitor(const Truncation& trunc) : eps_(trunc.eps), streak_(trunc.streak) {}
    TailMonitor(const Truncation& trunc, int streak) : eps_(trunc.eps), streak_(streak) {}

    void observe(Complex term, Complex partial)
    {
        const double t = std::abs(term);
        if (t == 0.0 || t <= eps_ * std::abs(partial))
            ++run_;
        else
            run_ = 0;
    }
    bool done() const noexcept { return run_ >= streak_; }

private:
    double eps_;
    int streak_;
    int run_ = 0;
};

std::string describe(Complex z)
{
    std::ostringstream os;
    os.precision(15);
    os << z;
    return os.str();
}

}  // namespace

Complex qpochhammer(Complex a, const QModulus& q, int n)
{
    if (n < 0)
        throw QError(Errc::InvalidArgument, "qpochhammer: n must be nonnegative");
    Complex result = 1.0;
    Complex aqj = a;
    for (int j = 0; j < n; ++j) {
        result *= 1.0 - aqj;
        aqj *= q.value();
    }
    return result;
}

Complex qpochhammer_inf(Complex a, const QModulus& q, const Truncation& trunc)
{
    trunc.validate();
    if (a == 0.0)
        return 1.0;
    Complex result = 1.0;
    Complex aqn = a;
    int run = 0;
    for (int n = 0; n < trunc.n_max; ++n) {
        const Complex factor = 1.0 - aqn;
        result *= factor;
        if (result == 0.0)
            return 0.0;
        run = std::abs(aqn) < trunc.eps ? run + 1 : 0;
        if (run >= trunc.streak)
            return result;
        aqn *= q.value();
    }
    throw QError(Errc::TruncationExceeded,
                 "(a;q)_inf did not reach its tail tolerance for a=" + describe(a));
}

Complex qpochhammer_inf(std::span<const Complex> as, const QModulus& q, const Truncation& trunc)
{
    Complex result = 1.0;
    for (Complex a : as)
        result *= qpochhammer_inf(a, q, trunc);
    return result;
}

Complex qpochhammer_inf_shifted_pole(Complex lambda, const QModulus& q, int k,
                                     const Truncation& trunc, double delta)
{
    if (k < 0)
        throw QError(Errc::InvalidArgument, "shifted pole index must be nonnegative");
    if (lambda == 0.0 || Spiral(1.0, q, delta).near(lambda))
        throw QError(Errc::SpiralProximity,
                     "lambda=" + describe(lambda) + " lies on the spiral [1;q]");
    const Complex numerator = std::pow(-lambda, -k) * q.pow(static_cast<long long>(k) * (k + 1) / 2);
    return numerator / (qpochhammer_inf(lambda, q, trunc) * qpochhammer(q.value() / lambda, q, k));
}

Summation theta_sum(const QModulus& q, Complex x, const Truncation& trunc)
{
    trunc.validate();
    if (x == 0.0)
        throw QError(Errc::ZeroArgument, "theta_q is undefined at x = 0");
    const Complex qq = q.value();
    const Complex inv_x = 1.0 / x;

    Summation out;
    out.value = 1.0;
    out.magnitude = 1.0;
    out.terms = 1;

    // Positive side: t_{n+1} = t_n q^n x; negative side: t_{-(m+1)} = t_{-m} q^{m+1} / x.
    Complex up = 1.0, down = 1.0;
    Complex q_up = 1.0, q_down = qq;
    TailMonitor up_tail(trunc), down_tail(trunc);
    for (int n = 1; n <= trunc.n_max; ++n) {
        if (!up_tail.done()) {
            up *= q_up * x;
            q_up *= qq;
            out.value += up;
            out.magnitude += std::abs(up);
            ++out.terms;
            up_tail.observe(up, out.value);
        }
        if (!down_tail.done()) {
            down *= q_down * inv_x;
            q_down *= qq;
            out.value += down;
            out.magnitude += std::abs(down);
            ++out.terms;
            down_tail.observe(down, out.value);
        }
        if (up_tail.done() && down_tail.done())
            return out;
    }
    throw QError(Errc::TruncationExceeded, "theta sum did not converge at x=" + describe(x));
}

Complex theta_product(const QModulus& q, Complex x, const Truncation& trunc)
{
    if (x == 0.0)
        throw QError(Errc::ZeroArgument, "theta_q is undefined at x = 0");
    const Complex qq = q.value();
    return qpochhammer_inf(qq, q, trunc) * qpochhammer_inf(-x, q, trunc)
         * qpochhammer_inf(-qq / x, q, trunc);
}

namespace {

// x = q^k y with |y| near 1: theta(q^k y) = q^{-k(k-1)/2} y^{-k} theta(y).
struct ShiftedTheta {
    Complex log_prefactor;
    Complex product;
};

ShiftedTheta shifted_theta(const QModulus& q, Complex x, const Truncation& trunc)
{
    if (x == 0.0)
        throw QError(Errc::ZeroArgument, "theta_q is undefined at x = 0");
    const long long k = std::llround(std::log(std::abs(x)) / std::log(q.modulus()));
    const Complex y = x * q.pow(-k);
    const double kd = static_cast<double>(k);
    const Complex log_prefactor =
        k == 0 ? Complex(0.0) : -0.5 * kd * (kd - 1.0) * q.log_q() - kd * std::log(y);
    return {log_prefactor, theta_product(q, y, trunc)};
}

}  // namespace

Complex theta(const QModulus& q, Complex x, const Truncation& trunc)
{
    const ShiftedTheta s = shifted_theta(q, x, trunc);
    if (s.log_prefactor == 0.0)
        return s.product;
    return std::exp(s.log_prefactor) * s.product;
}

Complex log_theta(const QModulus& q, Complex x, const Truncation& trunc)
{
    const ShiftedTheta s = shifted_theta(q, x, trunc);
    if (s.product == 0.0)
        throw QError(Errc::ThetaZero, "log theta_q at a zero of theta_q");
    return s.log_prefactor + std::log(s.product);
}

bool near_theta_zero(const QModulus& q, Complex x, double delta)
{
    return Spiral(-1.0, q, delta).near(x);
}

Summation rphis_sum(std::span<const Complex> upper, std::span<const Complex> lower,
                    const QModulus& q, Complex x, const Truncation& trunc)
{
    trunc.validate();
    const Spiral unit(1.0, q);

    // a in q^{-m} truncates the series after the x^m term.
    std::optional<long long> last_term;
    for (Complex a : upper) {
        if (auto k = unit.nearest_index(a); k && *k <= 0) {
            const long long m = -*k;
            last_term = last_term ? std::min(*last_term, m) : m;
        }
    }
    for (Complex b : lower) {
        if (auto k = unit.nearest_index(b); k && *k <= 0) {
            const long long m = -*k;
            // (b;q)_n vanishes from n = m + 1 onwards.
            if (!last_term || *last_term > m)
                throw QError(Errc::BadLowerParameter,
                             "lower parameter " + describe(b) + " lies in q^{-N}");
        }
    }

    const int r = static_cast<int>(upper.size());
    const int s = static_cast<int>(lower.size());
    if (x != 0.0 && !last_term) {
        if (r - s > 1)
            throw QError(Errc::DivergentSeries,
                         "nonterminating series with r - s > 1 has zero radius of convergence");
        if (r - s == 1 && std::abs(x) >= 1.0)
            throw QError(Errc::OutsideRadius,
                         "series with r - s = 1 needs |x| < 1, got x=" + describe(x));
    }

    Summation out;
    out.value = 1.0;
    out.magnitude = 1.0;
    out.terms = 1;
    if (x == 0.0 || (last_term && *last_term == 0))
        return out;

    const int power = 1 + s - r;
    const Complex qq = q.value();
    Complex term = 1.0;
    Complex qn = 1.0;
    TailMonitor tail(trunc);
    for (int n = 0; n < trunc.n_max; ++n) {
        Complex ratio = x;
        for (Complex a : upper)
            ratio *= 1.0 - a * qn;
        Complex denominator = 1.0 - qn * qq;
        for (Complex b : lower)
            denominator *= 1.0 - b * qn;
        ratio /= denominator;
        const Complex sign_power = -qn;
        if (power > 0) {
            for (int j = 0; j < power; ++j)
                ratio *= sign_power;
        } else {
            for (int j = 0; j < -power; ++j)
                ratio /= sign_power;
        }
        term *= ratio;
        qn *= qq;

        out.value += term;
        out.magnitude += std::abs(term);
        ++out.terms;
        if (last_term && n + 1 >= *last_term)
            return out;
        tail.observe(term, out.value);
        if (tail.done())
            return out;
    }
    throw QError(Errc::TruncationExceeded,
                 "basic hypergeometric series did not converge at x=" + describe(x));
}

Complex rphis(std::span<const Complex> upper, std::span<const Complex> lower, const QModulus& q,
              Complex x, const Truncation& trunc)
{
    return rphis_sum(upper, lower, q, x, trunc).value;
}

Complex e_q(const QModulus& q, Complex x, const Truncation& trunc, ExpForm form, double delta)
{
    if (form == ExpForm::Series) {
        const Complex zero[] = {0.0};
        return rphis(zero, {}, q, x, trunc);
    }
    if (auto k = Spiral(1.0, q, delta).nearest_index(x); k && *k <= 0)
        throw QError(Errc::PoleHit, "e_q has a pole at x=" + describe(x) + " (spiral [1;q])");
    return 1.0 / qpochhammer_inf(x, q, trunc);
}

Complex E_q(const QModulus& q, Complex x, const Truncation& trunc, ExpForm form)
{
    if (form == ExpForm::Series)
        return rphis({}, {}, q, -x, trunc);
    return qpochhammer_inf(-x, q, trunc);
}

}  // namespace qconnect
