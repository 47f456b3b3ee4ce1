#pragma once

// Truncated formal power series over C with an attached base q, and the
// algebra of q-difference operators sum c x^m sigma_q^l acting on them.

#include "qconnect/qmodulus.hpp"

#include <utility>
#include <vector>

namespace qconnect {

/// Coefficients below this magnitude are flushed to zero by reweightings.
inline constexpr double kUnderflowFlush = 1e-300;

/// c_0 + c_1 x + ... + c_N x^N, known exactly through order N.
class FormalSeries {
public:
    FormalSeries(QModulus base, std::vector<Complex> coeffs);

    static FormalSeries zero(QModulus base, int order);
    static FormalSeries monomial(QModulus base, int power, int order);

    const QModulus& base() const noexcept { return base_; }
    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
    /// Coefficient n, zero past the valid order.
    Complex operator[](int n) const;

    /// True if a reweighting flushed an underflowing coefficient to zero.
    bool flushed() const noexcept { return flushed_; }
    void mark_flushed() noexcept { flushed_ = true; }

    /// Keeps coefficients 0..order.
    FormalSeries truncated(int order) const;

    /// Horner evaluation of the stored polynomial.
    Complex evaluate(Complex x) const;

    FormalSeries& operator+=(const FormalSeries& other);
    FormalSeries& operator-=(const FormalSeries& other);
    FormalSeries& operator*=(Complex scalar);

    friend FormalSeries operator+(FormalSeries a, const FormalSeries& b) { return a += b; }
    friend FormalSeries operator-(FormalSeries a, const FormalSeries& b) { return a -= b; }
    friend FormalSeries operator*(FormalSeries a, Complex s) { return a *= s; }
    friend FormalSeries operator*(Complex s, FormalSeries a) { return a *= s; }

private:
    QModulus base_;
    std::vector<Complex> coeffs_;
    bool flushed_ = false;
};

/// One term c x^m sigma_q^l.
struct QDETerm {
    int power = 0;
    Complex coeff = 1.0;
    int shift = 0;
};

/// A q-difference operator sum_i c_i x^{m_i} sigma_q^{l_i}.
class QDEOperator {
public:
    QDEOperator(QModulus base, std::vector<QDETerm> terms);

    static QDEOperator identity(QModulus base);
    static QDEOperator shift(QModulus base, int l);
    /// K x sigma_q^2 - sigma_q + 1; K = q gives the Ramanujan equation.
    static QDEOperator ramanujan_type(QModulus base, Complex k);

    const QModulus& base() const noexcept { return base_; }
    const std::vector<QDETerm>& terms() const noexcept { return terms_; }
    int max_power() const noexcept;

    QDEOperator& operator+=(const QDEOperator& other);
    QDEOperator& operator*=(Complex scalar);
    friend QDEOperator operator+(QDEOperator a, const QDEOperator& b) { return a += b; }
    friend QDEOperator operator*(Complex s, QDEOperator a) { return a *= s; }

private:
    QModulus base_;
    std::vector<QDETerm> terms_;
};

/// op f; coefficient n of x^m sigma^l f is q^{l(n-m)} c_{n-m}.
/// The result is kept through order N - max_power. Throws BaseMismatch.
FormalSeries apply_operator(const QDEOperator& op, const FormalSeries& f);

/// First-kind Borel transform: a_n -> a_n q^{n(n-1)/2}.
FormalSeries qborel_plus(const FormalSeries& f);

/// Second-kind Borel transform: a_n -> a_n q^{-n(n-1)/2}. The valid order
/// shrinks to the last coefficient that stays representable.
FormalSeries qborel_minus(const FormalSeries& f);

/// Coefficientwise inverse of qborel_plus (the formal first-kind Laplace transform).
FormalSeries formal_laplace_plus(const FormalSeries& phi);

/// Coefficientwise inverse of qborel_minus (the formal second-kind Laplace transform).
FormalSeries formal_laplace_minus(const FormalSeries& g);

/// sigma_q^s for any integer s: c_n -> q^{s n} c_n.
FormalSeries shift_series(const FormalSeries& f, int s);

/// x^m f, valid through order N + m.
FormalSeries multiply_monomial(const FormalSeries& f, int m);

/// Both sides of the operational relation
///   B^-(t^m sigma^l f) = q^{-m(m-1)/2} tau^m sigma^{l-m} B^- f,
/// each computed on its own path and truncated to a common order.
/// For l < m the negative shift acts as q^{(l-m)n} on coefficients.
std::pair<FormalSeries, FormalSeries> borel_minus_operator_image(int m, int l,
                                                                 const FormalSeries& f);

/// Largest |a_n - b_n| / max(|a_n|, |b_n|) over the common valid prefix,
/// treating pairs with both entries below `floor` as equal.
double max_coefficient_rel_diff(const FormalSeries& a, const FormalSeries& b,
                                double floor = kUnderflowFlush);

}  // namespace qconnect
