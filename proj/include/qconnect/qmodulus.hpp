#pragma once

#include <complex>
#include <optional>

namespace qconnect {

using Complex = std::complex<double>;

/// Relative distance below which a point counts as lying on a q-spiral.
inline constexpr double kDefaultProximity = 1e-6;

/// The base q of all q-series, with 0 < |q| < 1.
class QModulus {
public:
    explicit QModulus(Complex q);

    Complex value() const noexcept { return q_; }
    Complex squared() const noexcept { return q_ * q_; }
    /// Principal square root p with p * p == q.
    Complex root() const noexcept { return root_; }
    double modulus() const noexcept { return std::abs(q_); }
    /// Principal log of q; q^k == exp(k * log_q()) for integer k.
    Complex log_q() const noexcept { return log_q_; }

    QModulus squared_base() const { return QModulus(squared()); }
    QModulus root_base() const { return QModulus(root_); }

    /// q^k for any integer k.
    Complex pow(long long k) const;

    friend bool operator==(const QModulus& a, const QModulus& b) noexcept { return a.q_ == b.q_; }

private:
    Complex q_;
    Complex root_;
    Complex log_q_;
};

/// Tail-tolerance policy for infinite sums and products.
///
/// A sum stops once `streak` consecutive terms are at most `eps` times the
/// running partial sum; a product stops once `streak` consecutive factors
/// differ from one by less than `eps`.
struct Truncation {
    double eps = 1e-15;
    int n_max = 10000;
    int streak = 3;

    /// Throws InvalidArgument unless eps > 0, n_max >= 1, streak >= 1.
    void validate() const;
};

/// Result of a truncated summation.
struct Summation {
    Complex value;
    int terms = 0;
    /// Sum of the absolute values of all accumulated terms.
    double magnitude = 0.0;

    /// magnitude / |value|; large values flag cancellation.
    double condition() const noexcept;
};

/// The discrete spiral [lambda; q] = { lambda q^k : k in Z }.
class Spiral {
public:
    Spiral(Complex lambda, QModulus base, double delta = kDefaultProximity);

    Complex anchor() const noexcept { return lambda_; }
    const QModulus& base() const noexcept { return base_; }
    double delta() const noexcept { return delta_; }

    /// lambda q^k.
    Complex point(long long k) const;

    /// Index k with |x - lambda q^k| <= delta |x|, if any.
    std::optional<long long> nearest_index(Complex x) const;

    bool near(Complex x) const { return nearest_index(x).has_value(); }

private:
    Complex lambda_;
    QModulus base_;
    double delta_;
};

}  // namespace qconnect
