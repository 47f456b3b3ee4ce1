#include "oracles.hpp"

#include "qconnect/errors.hpp"
#include "qconnect/qcore.hpp"
#include "qconnect/series.hpp"

#include <doctest.h>

#include <random>

using namespace qconnect;
using oracle::rel;

namespace {

FormalSeries random_series(const QModulus& q, int degree, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c)
        v = Complex(u(rng), u(rng));
    return FormalSeries(q, c);
}

FormalSeries ramanujan(const QModulus& q, int order)
{
    std::vector<Complex> c;
    for (int n = 0; n <= order; ++n)
        c.push_back(std::pow(-1.0, n) * q.pow(static_cast<long long>(n) * n) / qpochhammer(q.value(), q, n));
    return FormalSeries(q, c);
}

}  // namespace

TEST_CASE("apply_operator basics")
{
    const QModulus q(0.5);
    const FormalSeries f = random_series(q, 12, 1);
    const FormalSeries id = apply_operator(QDEOperator::identity(q), f);
    CHECK(max_coefficient_rel_diff(id, f) == 0.0);

    const FormalSeries one_plus_x(q, {1.0, 1.0});
    const FormalSeries shifted = apply_operator(QDEOperator::shift(q, 1), one_plus_x);
    CHECK(shifted[0] == Complex(1.0));
    CHECK(shifted[1] == Complex(0.5));

    const FormalSeries xf = apply_operator(QDEOperator(q, {{2, 1.0, 0}}), f);
    CHECK(xf.order() == f.order() - 2);
    CHECK(xf[0] == Complex(0.0));
    CHECK(xf[2] == f[0]);
}

TEST_CASE("Ramanujan operator annihilates the Ramanujan series")
{
    for (double qv : {0.3, 0.5, 0.8}) {
        const QModulus q(qv);
        const FormalSeries a = ramanujan(q, 20);
        const FormalSeries r = apply_operator(QDEOperator::ramanujan_type(q, q.value()), a);
        CHECK(r.order() == 19);
        for (int n = 0; n <= r.order(); ++n) {
            // Coefficient recurrence oracle: q a_{n-1} q^{2(n-1)} - q^n a_n + a_n.
            const Complex scale = std::abs(a[n]) + std::abs(a[n - 1]) + 1e-300;
            CHECK(std::abs(r[n]) < 1e-14 * std::abs(scale));
        }
    }
}

TEST_CASE("apply_operator is linear")
{
    const QModulus q(0.5);
    const FormalSeries f = random_series(q, 15, 2), g = random_series(q, 15, 3);
    const QDEOperator a = QDEOperator::ramanujan_type(q, Complex(0.3, 0.2));
    const QDEOperator b(q, {{1, Complex(-1.0, 0.5), 3}});
    const Complex s(0.7, -0.4);
    CHECK(max_coefficient_rel_diff(apply_operator(a, f + s * g),
                                   apply_operator(a, f) + s * apply_operator(a, g)) < 1e-14);
    CHECK(max_coefficient_rel_diff(apply_operator(a + s * b, f),
                                   apply_operator(a, f) + s * apply_operator(b, f)) < 1e-14);
}

TEST_CASE("series arithmetic needs a common base")
{
    FormalSeries a(QModulus(0.5), {1.0, 2.0});
    const FormalSeries b(QModulus(0.3), {1.0});
    try {
        a += b;
        FAIL("expected BaseMismatch");
    } catch (const QError& e) {
        CHECK(e.code() == Errc::BaseMismatch);
    }
    const FormalSeries c(QModulus(0.5), {1.0});
    CHECK((a + c).order() == 0);
}

TEST_CASE("Borel transforms reweight by q^{+-n(n-1)/2}")
{
    const QModulus q(0.5);
    const FormalSeries one(q, {2.5});
    CHECK(qborel_plus(one)[0] == Complex(2.5));
    CHECK(qborel_minus(one)[0] == Complex(2.5));

    const FormalSeries f = random_series(q, 30, 4);
    const FormalSeries p = qborel_plus(f), m = qborel_minus(f);
    for (int n = 0; n <= 30; ++n) {
        const double w = std::pow(0.5, n * (n - 1) / 2.0);
        CHECK(rel(p[n], f[n] * w) < 1e-15);
        CHECK(rel(m[n], f[n] / w) < 1e-15);
    }
    CHECK(max_coefficient_rel_diff(formal_laplace_minus(qborel_minus(f)), f) < 1e-14);
    CHECK(max_coefficient_rel_diff(formal_laplace_plus(qborel_plus(f)), f) < 1e-14);
}

TEST_CASE("B+ turns the divergent 2phi0 into the convergent 1phi0")
{
    // 2phi0(0,0;-;q,xi/q) coefficients: ((-1)^n q^{n(n-1)/2})^{-1} q^{-n} / (q;q)_n.
    const QModulus q(0.5);
    std::vector<Complex> c;
    for (int n = 0; n <= 40; ++n) {
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        c.push_back(sign / (std::pow(0.5, n * (n - 1) / 2.0) * std::pow(0.5, n) * qpochhammer(0.5, q, n)));
    }
    const FormalSeries phi = qborel_plus(FormalSeries(q, c));
    for (int n = 0; n <= 40; ++n) {
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        // Coefficient of 1phi0(0;-;q,-xi/q).
        CHECK(rel(phi[n], sign * std::pow(2.0, n) / qpochhammer(0.5, q, n)) < 1e-13);
    }
}

TEST_CASE("B- overflow shrinks the valid order instead of producing inf")
{
    const QModulus q(0.3);
    const FormalSeries f = random_series(q, 64, 5);
    const FormalSeries g = qborel_minus(f);
    CHECK(g.order() < 64);
    for (int n = 0; n <= g.order(); ++n)
        CHECK(std::isfinite(std::abs(g[n])));
}

TEST_CASE("operational relation for B-")
{
    const QModulus q(0.5);
    const FormalSeries ram = ramanujan(q, 24);
    const FormalSeries poly = random_series(q, 20, 6);

    SUBCASE("m = 0, l = 1 is B- of sigma f")
    {
        const auto [lhs, rhs] = borel_minus_operator_image(0, 1, poly);
        CHECK(max_coefficient_rel_diff(lhs, qborel_minus(shift_series(poly, 1))) < 1e-15);
        CHECK(max_coefficient_rel_diff(lhs, rhs) < 1e-14);
    }
    SUBCASE("m = 1, l = 2 on the Ramanujan series")
    {
        const auto [lhs, rhs] = borel_minus_operator_image(1, 2, ram);
        CHECK(lhs.order() > 10);
        CHECK(max_coefficient_rel_diff(lhs, rhs) < 1e-13);
    }
    SUBCASE("m = 2, l = 2 on a random polynomial")
    {
        const auto [lhs, rhs] = borel_minus_operator_image(2, 2, poly);
        CHECK(max_coefficient_rel_diff(lhs, rhs) < 1e-13);
    }
    SUBCASE("l < m uses the formal negative shift")
    {
        const auto [lhs, rhs] = borel_minus_operator_image(4, 1, poly);
        CHECK(max_coefficient_rel_diff(lhs, rhs) < 1e-13);
    }
}

TEST_CASE("B- of the equation at infinity is first order")
{
    // f(t) = A_{q^2}(-q^3 t^2) solves (-q^5 t^2 sigma^2 - sigma + 1) f = 0; its
    // B- image satisfies g(q tau) = (1 + q^2 tau)(1 - q^2 tau) g(tau).
    const QModulus q(0.5);
    const QModulus q2 = q.squared_base();
    const int order = 30;
    std::vector<Complex> f(static_cast<std::size_t>(order) + 1, 0.0);
    for (int n = 0; 2 * n <= order; ++n) {
        const Complex arg_pow = std::pow(-std::pow(0.5, 3.0), n);
        f[static_cast<std::size_t>(2 * n)] = q2.pow(static_cast<long long>(n) * n) * std::pow(-1.0, n) * arg_pow
                                           / qpochhammer(q2.value(), q2, n);
    }
    const FormalSeries g = qborel_minus(FormalSeries(q, f));
    // Written as (1 - sigma) g = q^4 tau^2 g to avoid cancelling against g.
    const FormalSeries lhs = g - shift_series(g, 1);
    const FormalSeries rhs = std::pow(0.5, 4) * multiply_monomial(g, 2).truncated(g.order());
    CHECK(max_coefficient_rel_diff(lhs, rhs, 1e-200) < 1e-12);
}
