#include "oracles.hpp"

#include "qconnect/errors.hpp"
#include "qconnect/qcore.hpp"
#include "qconnect/series.hpp"
#include "qconnect/special.hpp"
#include "qconnect/transforms.hpp"

#include <doctest.h>

#include <random>

using namespace qconnect;
using oracle::rel;

namespace {

FormalSeries random_poly(const QModulus& q, int degree, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c)
        v = Complex(u(rng), u(rng));
    return FormalSeries(q, c);
}

Errc code_of(auto&& fn)
{
    try {
        fn();
    } catch (const QError& e) {
        return e.code();
    }
    FAIL("no QError thrown");
    return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("circle rule picks residues")
{
    const QuadratureResult r = circle_integral([](Complex z) { return 1.0 / z; }, 0.0, 0.7);
    CHECK(rel(r.value, 1.0) < 1e-15);
    const QuadratureResult s = circle_integral([](Complex z) { return std::exp(z) / (z - 0.2); }, 0.1, 0.5);
    CHECK(rel(s.value, std::exp(0.2)) < 1e-14);
    CHECK(code_of([] { circle_integral([](Complex z) { return 1.0 / (z - 0.5); }, 0.0, 0.5); })
          == Errc::PoleOnContour);
}

TEST_CASE("second-kind Laplace transform")
{
    const QModulus q(0.5);
    const double r = default_contour_radius(q);
    CHECK(r == 1.0);
    CHECK(default_contour_radius(QModulus(0.8)) == doctest::Approx(0.5 / 0.64));

    SUBCASE("constant g")
    {
        for (Complex t : {Complex(2.0), Complex(0.3, -0.4), Complex(-5.0, 1.0)})
            CHECK(rel(qlaplace_minus([](Complex) { return Complex(1.0); }, q, t, r), 1.0) < 1e-14);
    }
    SUBCASE("inverse of B- on a degree-10 polynomial")
    {
        const FormalSeries p = random_poly(q, 10, 21);
        const FormalSeries g = qborel_minus(p);
        for (Complex t : {Complex(0.9, 0.2), Complex(-2.0, 1.5), Complex(0.4, -0.6)}) {
            const double radius = std::min(std::abs(t) * std::pow(0.5, 4.5), 3.9);
            const Complex v = qlaplace_minus([&](Complex tau) { return g.evaluate(tau); }, q, t, radius);
            CHECK(rel(v, p.evaluate(t)) < 1e-10);
        }
    }
    SUBCASE("g of the q-Airy problem at t = 2")
    {
        auto g = [&](Complex tau) { return g_borel_image(q, tau); };
        const Complex v = qlaplace_minus(g, q, 2.0, 1.0);
        CHECK(rel(v, 1.16805624450964321) < 1e-12);
        CHECK(rel(v, f_via_residues(q, 2.0).value) < 1e-12);
        // Independent of the radius inside the admissible range.
        CHECK(rel(qlaplace_minus(g, q, 2.0, 0.5), v) < 1e-12);
        CHECK(rel(qlaplace_minus(g, q, 2.0, 3.0), v) < 1e-11);
    }
    SUBCASE("argument checks")
    {
        auto one = [](Complex) { return Complex(1.0); };
        CHECK(code_of([&] { qlaplace_minus(one, q, 0.0, 1.0); }) == Errc::ZeroArgument);
        CHECK(code_of([&] { qlaplace_minus(one, q, 1.0, 4.0); }) == Errc::InvalidArgument);
        auto polar = [](Complex tau) { return 1.0 / (tau - 1.0); };
        CHECK(code_of([&] { qlaplace_minus(polar, q, 1.0, 1.0); }) == Errc::PoleOnContour);
    }
}

TEST_CASE("first-kind Laplace transform")
{
    const QModulus q(0.5);
    const FormalSeries p = random_poly(q, 10, 22);
    const FormalSeries phi = qborel_plus(p);

    SUBCASE("inverse of B+ through a function handle")
    {
        const Summation s = qlaplace_plus([&](Complex xi) { return phi.evaluate(xi); }, q, 1.3, 0.7);
        CHECK(rel(s.value, p.evaluate(0.7)) < 1e-12);
    }
    SUBCASE("inverse of B+ from coefficients, degree 30, several spirals")
    {
        const FormalSeries p30 = random_poly(q, 30, 23);
        const FormalSeries phi30 = qborel_plus(p30);
        for (Complex lambda : {Complex(0.7), Complex(1.3), std::polar(0.9, 0.3)}) {
            for (Complex x : {Complex(0.7), Complex(-1.2, 0.5), Complex(3.0, -2.0)}) {
                const Summation s = qlaplace_plus(phi30, lambda, x);
                CHECK(rel(s.value, p30.evaluate(x)) < 1e-9 * std::max(1.0, s.condition()));
            }
        }
    }
    SUBCASE("e_q(xi/q) resums 2phi0 and moves with lambda as the closed form does")
    {
        for (Complex lambda : {Complex(0.7), std::polar(1.1, 0.4)}) {
            auto phi_e = [&](Complex xi) { return e_q(q, xi / q.value(), {}, ExpForm::Product); };
            const Complex pipeline = qlaplace_plus(phi_e, q, lambda, 3.0).value;
            CHECK(rel(pipeline, two_f_zero_closed(q, lambda, 3.0).bare()) < 1e-12);
        }
    }
    SUBCASE("x on the spiral [-lambda;q] is rejected")
    {
        auto one = [](Complex) { return Complex(1.0); };
        CHECK(code_of([&] { qlaplace_plus(one, q, 0.7, -0.7 * 0.125); }) == Errc::SpiralProximity);
        CHECK(code_of([&] { qlaplace_plus(one, q, 0.0, 1.0); }) == Errc::ZeroArgument);
    }
}

TEST_CASE("covering transformation")
{
    const QModulus q(0.5);
    const Complex p = q.root();

    const QDEOperator id = covering_transform(QDEOperator::identity(q));
    REQUIRE(id.terms().size() == 1);
    CHECK(id.terms()[0].power == 0);
    CHECK(id.terms()[0].shift == 0);
    CHECK(id.base().value() == p);

    for (Complex k : {q.value(), -q.pow(5)}) {
        const QDEOperator v = covering_transform(QDEOperator::ramanujan_type(q, k), p);
        bool seen_top = false;
        for (const QDETerm& t : v.terms()) {
            if (t.power == 2) {
                CHECK(t.shift == 2);
                CHECK(t.coeff == k);
                seen_top = true;
            } else {
                CHECK(t.power == 0);
                CHECK((t.shift == 1 || t.shift == 0));
            }
        }
        CHECK(seen_top);
    }
    CHECK(code_of([&] { covering_transform(QDEOperator::identity(q), Complex(0.6)); }) == Errc::InvalidArgument);
}

TEST_CASE("covering transform of the equation at infinity is solved by A_{q^2}(-q^3 t^2)")
{
    // u(x) = A_{q^2}(-q^3 x) solves (-q^5 x sigma_{q^2}^2 - sigma_{q^2} + 1) u = 0,
    // and v(t) = u(t^2) solves the covered equation over base q.
    const QModulus q(0.5);
    const QModulus q2 = q.squared_base();
    const int order = 30;
    std::vector<Complex> u;
    for (int n = 0; n <= order; ++n)
        u.push_back(q2.pow(static_cast<long long>(n) * n) * std::pow(q.pow(3), n) / qpochhammer(q2.value(), q2, n));
    const FormalSeries us(q2, u);
    const QDEOperator op = QDEOperator::ramanujan_type(q2, -q.pow(5));
    const FormalSeries ru = apply_operator(op, us);
    for (int n = 0; n <= ru.order(); ++n)
        CHECK(std::abs(ru[n]) < 1e-14 * (std::abs(us[n]) + 1e-300) + 1e-300);

    const FormalSeries v = covering_series(us, q.value());
    const FormalSeries rv = apply_operator(covering_transform(op, q.value()), v);
    for (int n = 0; n <= rv.order(); ++n)
        CHECK(std::abs(rv[n]) < 1e-14 * (std::abs(v[n]) + std::abs(v[n > 1 ? n - 2 : 0])) + 1e-300);
    CHECK(rel(v.evaluate(0.8), ramanujan_A(q2, -q.pow(3) * 0.64)) < 1e-14);
}
