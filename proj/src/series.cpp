#include "qconnect/series.hpp"

#include "qconnect/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qconnect {

namespace {

void require_same_base(const QModulus& a, const QModulus& b)
{
    if (!(a == b))
        throw QError(Errc::BaseMismatch, "series and operators must share the same base q");
}

// log|x| bounds that keep a value comfortably inside the double range.
constexpr double kLogOverflow = 690.0;
constexpr double kLogUnderflow = -690.0;

// a * q^e without overflowing intermediates, or nullopt if the exact result
// is not representable. Underflow flushes to zero.
struct Reweighted {
    Complex value;
    bool overflow = false;
    bool flushed = false;
};

Reweighted reweight(Complex a, const QModulus& q, long long e)
{
    if (a == 0.0 || e == 0)
        return {a};
    const double log_mag = std::log(std::abs(a)) + static_cast<double>(e) * std::log(q.modulus());
    if (log_mag > kLogOverflow)
        return {0.0, true, false};
    if (log_mag < kLogUnderflow || std::exp(log_mag) < kUnderflowFlush)
        return {0.0, false, true};

    // Move in chunks whose magnitude stays near 1e±250, so the running value
    // travels monotonically between two representable endpoints.
    const long long chunk = std::max<long long>(
        1, static_cast<long long>(250.0 * std::log(10.0) / -std::log(q.modulus())));
    Complex value = a;
    long long left = e;
    while (left != 0) {
        const long long step = left > 0 ? std::min(left, chunk) : std::max(left, -chunk);
        value *= q.pow(step);
        left -= step;
    }
    return {value};
}

FormalSeries reweight_series(const FormalSeries& f, int sign)
{
    std::vector<Complex> out;
    out.reserve(f.coeffs().size());
    bool flushed = f.flushed();
    for (int n = 0; n <= f.order(); ++n) {
        const long long e = sign * static_cast<long long>(n) * (n - 1) / 2;
        const Reweighted w = reweight(f[n], f.base(), e);
        if (w.overflow)
            break;
        flushed = flushed || w.flushed;
        out.push_back(w.value);
    }
    if (out.empty())
        throw QError(Errc::InvalidArgument, "reweighting left no representable coefficient");
    FormalSeries result(f.base(), std::move(out));
    if (flushed)
        result.mark_flushed();
    return result;
}

}  // namespace

FormalSeries::FormalSeries(QModulus base, std::vector<Complex> coeffs)
    : base_(base), coeffs_(std::move(coeffs))
{
    if (coeffs_.empty())
        throw QError(Errc::InvalidArgument, "a formal series needs at least one coefficient");
}

FormalSeries FormalSeries::zero(QModulus base, int order)
{
    if (order < 0)
        throw QError(Errc::InvalidArgument, "series order must be nonnegative");
    return FormalSeries(base, std::vector<Complex>(static_cast<std::size_t>(order) + 1, 0.0));
}

FormalSeries FormalSeries::monomial(QModulus base, int power, int order)
{
    FormalSeries s = zero(base, order);
    if (power >= 0 && power <= order)
        s.coeffs_[static_cast<std::size_t>(power)] = 1.0;
    return s;
}

Complex FormalSeries::operator[](int n) const
{
    if (n < 0 || n > order())
        return 0.0;
    return coeffs_[static_cast<std::size_t>(n)];
}

FormalSeries FormalSeries::truncated(int new_order) const
{
    if (new_order < 0)
        throw QError(Errc::InvalidArgument, "series order must be nonnegative");
    std::vector<Complex> c(coeffs_.begin(),
                           coeffs_.begin() + std::min<std::ptrdiff_t>(new_order + 1, order() + 1));
    FormalSeries out(base_, std::move(c));
    out.flushed_ = flushed_;
    return out;
}

Complex FormalSeries::evaluate(Complex x) const
{
    Complex acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

FormalSeries& FormalSeries::operator+=(const FormalSeries& other)
{
    require_same_base(base_, other.base_);
    const int n = std::min(order(), other.order());
    coeffs_.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        coeffs_[static_cast<std::size_t>(i)] += other[i];
    flushed_ = flushed_ || other.flushed_;
    return *this;
}

FormalSeries& FormalSeries::operator-=(const FormalSeries& other)
{
    return *this += other * Complex(-1.0);
}

FormalSeries& FormalSeries::operator*=(Complex scalar)
{
    for (auto& c : coeffs_)
        c *= scalar;
    return *this;
}

QDEOperator::QDEOperator(QModulus base, std::vector<QDETerm> terms)
    : base_(base), terms_(std::move(terms))
{
    for (const auto& t : terms_) {
        if (t.power < 0 || t.shift < 0)
            throw QError(Errc::InvalidArgument,
                         "operator terms need nonnegative monomial and shift powers");
    }
}

QDEOperator QDEOperator::identity(QModulus base)
{
    return QDEOperator(base, {{0, 1.0, 0}});
}

QDEOperator QDEOperator::shift(QModulus base, int l)
{
    return QDEOperator(base, {{0, 1.0, l}});
}

QDEOperator QDEOperator::ramanujan_type(QModulus base, Complex k)
{
    return QDEOperator(base, {{1, k, 2}, {0, -1.0, 1}, {0, 1.0, 0}});
}

int QDEOperator::max_power() const noexcept
{
    int m = 0;
    for (const auto& t : terms_)
        m = std::max(m, t.power);
    return m;
}

QDEOperator& QDEOperator::operator+=(const QDEOperator& other)
{
    require_same_base(base_, other.base_);
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

QDEOperator& QDEOperator::operator*=(Complex scalar)
{
    for (auto& t : terms_)
        t.coeff *= scalar;
    return *this;
}

FormalSeries apply_operator(const QDEOperator& op, const FormalSeries& f)
{
    require_same_base(op.base(), f.base());
    const int order = f.order() - op.max_power();
    if (order < 0)
        throw QError(Errc::InvalidArgument, "series order is below the operator's monomial degree");
    std::vector<Complex> out(static_cast<std::size_t>(order) + 1, 0.0);
    for (const auto& t : op.terms()) {
        for (int n = t.power; n <= order; ++n) {
            const int k = n - t.power;
            out[static_cast<std::size_t>(n)] +=
                t.coeff * f.base().pow(static_cast<long long>(t.shift) * k) * f[k];
        }
    }
    FormalSeries result(f.base(), std::move(out));
    if (f.flushed())
        result.mark_flushed();
    return result;
}

FormalSeries qborel_plus(const FormalSeries& f) { return reweight_series(f, +1); }
FormalSeries qborel_minus(const FormalSeries& f) { return reweight_series(f, -1); }
FormalSeries formal_laplace_plus(const FormalSeries& phi) { return reweight_series(phi, -1); }
FormalSeries formal_laplace_minus(const FormalSeries& g) { return reweight_series(g, +1); }

FormalSeries shift_series(const FormalSeries& f, int s)
{
    std::vector<Complex> out;
    out.reserve(f.coeffs().size());
    bool flushed = f.flushed();
    for (int n = 0; n <= f.order(); ++n) {
        const Reweighted w = reweight(f[n], f.base(), static_cast<long long>(s) * n);
        if (w.overflow)
            break;
        flushed = flushed || w.flushed;
        out.push_back(w.value);
    }
    FormalSeries result(f.base(), std::move(out));
    if (flushed)
        result.mark_flushed();
    return result;
}

FormalSeries multiply_monomial(const FormalSeries& f, int m)
{
    if (m < 0)
        throw QError(Errc::InvalidArgument, "monomial power must be nonnegative");
    std::vector<Complex> out(static_cast<std::size_t>(m), 0.0);
    out.insert(out.end(), f.coeffs().begin(), f.coeffs().end());
    FormalSeries result(f.base(), std::move(out));
    if (f.flushed())
        result.mark_flushed();
    return result;
}

std::pair<FormalSeries, FormalSeries> borel_minus_operator_image(int m, int l, const FormalSeries& f)
{
    if (m < 0 || l < 0)
        throw QError(Errc::InvalidArgument, "operational relation needs m, l >= 0");
    const QModulus& q = f.base();

    FormalSeries lhs = qborel_minus(apply_operator(QDEOperator(q, {{m, 1.0, l}}), f));

    FormalSeries rhs = multiply_monomial(shift_series(qborel_minus(f), l - m), m);
    rhs *= q.pow(-static_cast<long long>(m) * (m - 1) / 2);

    const int order = std::min(lhs.order(), rhs.order());
    return {lhs.truncated(order), rhs.truncated(order)};
}

double max_coefficient_rel_diff(const FormalSeries& a, const FormalSeries& b, double floor)
{
    const int order = std::min(a.order(), b.order());
    double worst = 0.0;
    for (int n = 0; n <= order; ++n) {
        const double scale = std::max(std::abs(a[n]), std::abs(b[n]));
        if (scale < floor)
            continue;
        worst = std::max(worst, std::abs(a[n] - b[n]) / scale);
    }
    return worst;
}

}  // namespace qconnect
