#include "qconnect/qmodulus.hpp"

#include "qconnect/errors.hpp"

#include <cmath>
#include <sstream>

namespace qconnect {

QModulus::QModulus(Complex q) : q_(q)
{
    const double m = std::abs(q);
    if (!(m > 0.0 && m < 1.0)) {
        std::ostringstream os;
        os << "base q must satisfy 0 < |q| < 1, got " << q;
        throw QError(Errc::InvalidArgument, os.str());
    }
    root_ = std::sqrt(q);
    log_q_ = std::log(q);
}

Complex QModulus::pow(long long k) const
{
    if (k == 0)
        return 1.0;
    // Repeated squaring keeps real bases like 0.5 exact.
    Complex base = k > 0 ? q_ : 1.0 / q_;
    unsigned long long n = k > 0 ? static_cast<unsigned long long>(k)
                                 : static_cast<unsigned long long>(-k);
    Complex result = 1.0;
    while (n != 0) {
        if (n & 1ULL)
            result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

void Truncation::validate() const
{
    if (!(eps > 0.0) || n_max < 1 || streak < 1) {
        std::ostringstream os;
        os << "invalid truncation policy (eps=" << eps << ", n_max=" << n_max
           << ", streak=" << streak << ")";
        throw QError(Errc::InvalidArgument, os.str());
    }
}

double Summation::condition() const noexcept
{
    const double v = std::abs(value);
    return magnitude / std::max(v, 1e-300);
}

Spiral::Spiral(Complex lambda, QModulus base, double delta)
    : lambda_(lambda), base_(base), delta_(delta)
{
    if (lambda == 0.0)
        throw QError(Errc::InvalidArgument, "spiral anchor must be nonzero");
    if (!(delta > 0.0))
        throw QError(Errc::InvalidArgument, "spiral proximity tolerance must be positive");
}

Complex Spiral::point(long long k) const
{
    return lambda_ * base_.pow(k);
}

std::optional<long long> Spiral::nearest_index(Complex x) const
{
    if (x == 0.0)
        return std::nullopt;
    const double ratio = std::abs(x / lambda_);
    const double k_real = std::log(ratio) / std::log(base_.modulus());
    if (!std::isfinite(k_real))
        return std::nullopt;
    const long long k0 = std::llround(k_real);
    for (long long k = k0 - 1; k <= k0 + 1; ++k) {
        if (std::abs(x - point(k)) <= delta_ * std::abs(x))
            return k;
    }
    return std::nullopt;
}

}  // namespace qconnect
