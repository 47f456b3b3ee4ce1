#include "qconnect/verify.hpp"

#include "qconnect/errors.hpp"
#include "qconnect/qcore.hpp"
#include "qconnect/series.hpp"
#include "qconnect/special.hpp"
#include "qconnect/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace qconnect {

namespace {

constexpr std::array<std::pair<IdentityId, std::string_view>, 13> kNames{{
    {IdentityId::Watson, "watson"},
    {IdentityId::IsmailZhang, "ismail-zhang"},
    {IdentityId::ThmRamanujanQairy, "thm-ramanujan-qairy"},
    {IdentityId::ThmEqEq, "thm-eq-Eq"},
    {IdentityId::LemmaAlt, "lemma-alt"},
    {IdentityId::Thm2f0, "thm-2f0"},
    {IdentityId::QdeRamanujan, "qde-ramanujan"},
    {IdentityId::QdeQairy, "qde-qairy"},
    {IdentityId::QdeTheta, "qde-theta"},
    {IdentityId::Qde2f0Resummed, "qde-2f0-resummed"},
    {IdentityId::ResidueLemma, "residue-lemma"},
    {IdentityId::OperationalLemma, "operational-lemma"},
    {IdentityId::FormalInverses, "formal-inverses"},
}};

constexpr std::array<IdentityId, 13> kAll{
    IdentityId::Watson,         IdentityId::IsmailZhang,  IdentityId::ThmRamanujanQairy,
    IdentityId::ThmEqEq,        IdentityId::LemmaAlt,     IdentityId::Thm2f0,
    IdentityId::QdeRamanujan,   IdentityId::QdeQairy,     IdentityId::QdeTheta,
    IdentityId::Qde2f0Resummed, IdentityId::ResidueLemma, IdentityId::OperationalLemma,
    IdentityId::FormalInverses,
};

// Why a point was not compared.
enum class SkipKind { None, Excluded, Failed };

struct Outcome {
    PointRecord record;
    SkipKind skip = SkipKind::None;
};

std::string describe(Complex z)
{
    std::ostringstream os;
    os.precision(6);
    os << z;
    return os.str();
}

Outcome compared(Complex x, Complex lhs, Complex rhs, double condition)
{
    Outcome o;
    o.record.x = x;
    o.record.lhs = lhs;
    o.record.rhs = rhs;
    o.record.condition = std::isfinite(condition) ? std::max(condition, 1.0) : 1e300;
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    if (!std::isfinite(scale) || !std::isfinite(std::abs(lhs - rhs))) {
        o.record.skipped = true;
        o.record.reason = "non-finite value";
        o.skip = SkipKind::Failed;
        o.record.lhs = o.record.rhs = 0.0;
        o.record.condition = 1.0;
        return o;
    }
    if (scale < 1e-250) {
        o.record.skipped = true;
        o.record.reason = "degenerate: both sides below 1e-250";
        o.skip = SkipKind::Failed;
        return o;
    }
    o.record.abs_err = std::abs(lhs - rhs);
    o.record.rel_err = o.record.abs_err / std::max(scale, 1e-300);
    return o;
}

// (|a| + |b|) / |a + b|.
double cancellation(Complex a, Complex b)
{
    return (std::abs(a) + std::abs(b)) / std::max(std::abs(a + b), 1e-300);
}

Outcome skipped(Complex x, SkipKind kind, std::string reason)
{
    Outcome o;
    o.record.x = x;
    o.record.lhs = o.record.rhs = 0.0;
    o.record.skipped = true;
    o.record.reason = std::move(reason);
    o.skip = kind;
    return o;
}

using Evaluator = std::function<Outcome()>;

// Runs one evaluation, turning library errors into skip records.
Outcome guarded(Complex x, const Evaluator& eval)
{
    try {
        return eval();
    } catch (const QError& e) {
        return skipped(x, SkipKind::Failed, e.what());
    }
}

Complex required_lambda(const IdentityCheck& c)
{
    return c.lambda.value_or(Complex(0.7));
}

void require_lambda_off_unit_spiral(const IdentityCheck& c)
{
    const Complex lambda = required_lambda(c);
    if (lambda == 0.0 || Spiral(1.0, c.q, c.delta).near(lambda))
        throw QError(Errc::SpiralProximity, "lambda=" + describe(lambda)
                                                + " lies on q^Z (theta_q(-lambda/q) = 0)");
}

FormalSeries random_polynomial(const QModulus& q, int degree, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c)
        v = Complex(unit(rng), unit(rng));
    return FormalSeries(q, std::move(c));
}

// Truncated so that q^{n^2 + 2 l n}, l <= kOperationalMax, stays in the normal double range.
FormalSeries ramanujan_series(const QModulus& q, int max_shift)
{
    const double budget = 250.0 * std::log(10.0) / -std::log(q.modulus());
    const double s = 2.0 * max_shift;
    const int order = static_cast<int>(-s / 2.0 + std::sqrt(s * s / 4.0 + budget));
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
    Complex qn = 1.0;   // q^n
    Complex qq_n = 1.0; // (q;q)_n
    Complex sign = 1.0;
    for (int n = 0; n <= order; ++n) {
        c[static_cast<std::size_t>(n)] = sign * q.pow(static_cast<long long>(n) * n) / qq_n;
        qn *= q.value();
        qq_n *= 1.0 - qn;
        sign = -sign;
    }
    return FormalSeries(q, std::move(c));
}

// ---------------------------------------------------------------------------
// Per-identity evaluators. Each appends one or more outcomes for point x.

void eval_watson(const IdentityCheck& c, Complex x, std::vector<Outcome>& out)
{
    const QModulus& q = c.q;
    const auto [a, b, cc] = c.abc.value_or(std::array<Complex, 3>{-4.0, 3.0, 0.5});
    const Complex z = cc * q.value() / (a * b * x);
    if (std::abs(x) >= 1.0) {
        out.push_back(skipped(x, SkipKind::Excluded, "excluded: |x| >= 1 (2phi1 radius)"));
        return;
    }
    if (std::abs(z) >= 1.0) {
        out.push_back(skipped(x, SkipKind::Excluded, "excluded: |cq/(abx)| >= 1"));
        return;
    }
    if (Spiral(1.0, q, c.delta).near(x)) {
        out.push_back(skipped(x, SkipKind::Excluded, "excluded: x near spiral [1;q]"));
        return;
    }
    out.push_back(guarded(x, [&] {
        const Complex up[] = {a, b};
        const Complex lo[] = {cc};
        const Summation lhs = rphis_sum(up, lo, q, x, c.trunc);

        auto P = [&](std::initializer_list<Complex> v) {
            return qpochhammer_inf(std::span<const Complex>(v.begin(), v.size()), q, c.trunc);
        };
        const Complex qq = q.value();
        const Complex den = P({cc, x, qq / x});
        const Complex up1[] = {a, a * qq / cc};
        const Complex lo1[] = {a * qq / b};
        const Complex up2[] = {b, b * qq / cc};
        const Complex lo2[] = {b * qq / a};
        const Complex pre1 = P({b, cc / a, a * x, qq / (a * x)}) / (den * P({b / a}));
        const Complex pre2 = P({a, cc / b, b * x, qq / (b * x)}) / (den * P({a / b}));
        const Summation s1 = rphis_sum(up1, lo1, q, z, c.trunc);
        const Summation s2 = rphis_sum(up2, lo2, q, z, c.trunc);
        const Complex rhs = pre1 * s1.value + pre2 * s2.value;
        // Counts every series term on both sides.
        const double spread = std::abs(pre1) * s1.magnitude + std::abs(pre2) * s2.magnitude;
        return compared(x, lhs.value, rhs,
                        std::max(lhs.condition(), spread / std::max(std::abs(rhs), 1e-300)));
    }));
}

void eval_ismail_zhang(const IdentityCheck& c, Complex x, std::vector<Outcome>& out)
{
    out.push_back(guarded(x, [&] {
        const QModulus& q = c.q;
        const QModulus q2 = q.squared_base();
        const Complex qq = q.value();
        const Complex lhs = ramanujan_A(q, x, c.trunc);

        auto P2 = [&](Complex a) { return qpochhammer_inf(a, q2, c.trunc); };
        const Complex zero[] = {0.0};
        const Complex lo1[] = {qq};
        const Complex lo2[] = {qq * qq * qq};
        const Complex first = P2(qq * x) * P2(qq / x) / P2(qq)
                            * rphis(zero, lo1, q2, q2.value() / x, c.trunc);
        const Complex second = -qq * P2(q2.value() * x) * P2(1.0 / x) / ((1.0 - qq) * P2(qq))
                             * rphis(zero, lo2, q2, qq * qq * qq / x, c.trunc);
        return compared(x, lhs, first + second, cancellation(first, second));
    }));
}

void eval_ramanujan_qairy(const IdentityCheck& c, Complex x, std::vector<Outcome>& out)
{
    out.push_back(guarded(x, [&] {
        const QModulus& q = c.q;
        const Complex qq = q.value();
        const Complex lhs = ramanujan_A(q.squared_base(), -qq * qq * qq / (x * x), c.trunc);
        const Complex norm = qpochhammer_inf(qq, q, c.trunc) * qpochhammer_inf(-1.0, q, c.trunc);
        const Complex th1 = theta(q, x / qq, c.trunc) / norm;
        const Complex th2 = theta(q, -x / qq, c.trunc) / norm;
        const Summation ai1 = qairy_Ai_sum(q, -x, c.trunc);
        const Summation ai2 = qairy_Ai_sum(q, x, c.trunc);
        const Complex rhs = th1 * ai1.value + th2 * ai2.value;
        // Counts every series term of both summands.
        const double spread = std::abs(th1) * ai1.magnitude + std::abs(th2) * ai2.magnitude;
        return compared(x, lhs, rhs, spread / std::max(std::abs(rhs), 1e-300));
    }));
}

bool exclude_unit_disc_and_spiral(const IdentityCheck& c, Complex x, std::vector<Outcome>& out)
{
    if (std::abs(x) >= 1.0) {
        out.push_back(skipped(x, SkipKind::Excluded, "excluded: |x| >= 1"));
        return true;
    }
    if (Spiral(1.0, c.q, c.delta).near(x)) {
        out.push_back(skipped(x, SkipKind::Excluded, "excluded: x near spiral [1;q]"));
        return true;
    }
    return false;
}

void eval_eq_Eq(const IdentityCheck& c, Complex x, std::vector<Outcome>& out)
{
    if (exclude_unit_disc_and_spiral(c, x, out))
        return;
    out.push_back(guarded(x, [&] {
        const QModulus& q = c.q;
        const Complex qq = q.value();
        const Complex lhs = e_q(q, x, c.trunc, ExpForm::Series);
        // E_q(-q/x) = 0phi0(-;-;q,q/x).
        const Summation big_e = rphis_sum({}, {}, q, qq / x, c.trunc);
        const Complex rhs = qpochhammer_inf(qq, q, c.trunc) / theta(q, -x, c.trunc) * big_e.value;
        return compared(x, lhs, rhs, big_e.condition());
    }));
}

void eval_lemma_alt(const IdentityCheck& c, Complex x, std::vector<Outcome>& out)
{
    if (exclude_unit_disc_and_spiral(c, x, out))
        return;
    out.push_back(guarded(x, [&] {
        const QModulus& q = c.q;
        const QModulus q2 = q.squared_base();
        const Complex qq = q.value();
        const Complex arg = x / qq;
        const Complex lhs = std::abs(arg) < 1.0 ? e_q(q, arg, c.trunc, ExpForm::Series)
                                                : e_q(q, arg, c.trunc, ExpForm::Product, c.delta);
        const Complex pre = qpochhammer_inf(qq, q, c.trunc) / theta(q, -arg, c.trunc);
        const Complex lo1[] = {qq};
        const Complex lo2[] = {qq * qq * qq};
        const Complex q5 = q.pow(5), q7 = q.pow(7);
        const Complex first = pre * rphis({}, lo1, q2, q5 / (x * x), c.trunc);
        const Complex second = -pre * qq * qq / ((1.0 - qq) * x) * rphis({}, lo2, q2, q7 / (x * x), c.trunc);
        return compared(x, lhs, first + second, cancellation(first, second));
    }));
}

bool exclude_lambda_spiral(const IdentityCheck& c, Complex x, std::vector<Outcome>& out)
{
    const Complex lambda = required_lambda(c);
    if (Spiral(-lambda, c.q, c.delta).near(x)) {
        out.push_back(skipped(x, SkipKind::Excluded, "excluded: x near spiral [-lambda;q]"));
        return true;
    }
    return false;
}

void eval_2f0(const IdentityCheck& c, Complex x, std::vector<Outcome>& out)
{
    if (exclude_lambda_spiral(c, x, out))
        return;
    out.push_back(guarded(x, [&] {
        const Complex lambda = required_lambda(c);
        const Complex lhs = two_f_zero(c.q, lambda, x, c.trunc, c.delta).value;
        const TwoFZeroClosed closed = two_f_zero_closed(c.q, lambda, x, c.trunc, c.delta);
        Complex rhs = closed.bare();
        if (c.mutation == Mutation::DropOneMinusQ)
            rhs = closed.origin_term + closed.spiral_term * (1.0 - c.q.value());
        return compared(x, lhs, rhs, closed.condition());
    }));
}

// lhs = a(x) + b(x), rhs = r(x) for an equation a + b - r = 0.
template <typename U>
Outcome residual_three_term(Complex x, const U& a, const U& b, const U& r)
{
    const Complex av = a(), bv = b(), rv = r();
    return compared(x, av + bv, rv, cancellation(av, bv));
}

void eval_qde_ramanujan(const IdentityCheck& c, Complex x, std::vector<Outcome>& out)
{
    out.push_back(guarded(x, [&] {
        const QModulus& q = c.q;
        const Complex qq = q.value();
        auto u = [&](Complex y) { return ramanujan_A(q, y, c.trunc); };
        const Complex a = qq * x * u(qq * qq * x);
        const Complex b = u(x);
        return compared(x, a + b, u(qq * x), cancellation(a, b));
    }));
}

// A value together with the sum of the absolute values of its series terms.
struct Weighted {
    Complex value;
    double magnitude;
};

// a + b = r with each side built from series; the condition counts every term.
Outcome weighted_residual(Complex x, Weighted a, Weighted b, Weighted r)
{
    const double spread = a.magnitude + b.magnitude + r.magnitude;
    return compared(x, a.value + b.value, r.value,
                    spread / std::max(std::abs(r.value), 1e-300));
}

void eval_qde_qairy(const IdentityCheck& c, Complex x, std::vector<Outcome>& out)
{
    const QModulus& q = c.q;
    const Complex qq = q.value();
    out.push_back(guarded(x, [&] {
        auto u = [&](Complex y, Complex coeff) {
            const Summation s = qairy_Ai_sum(q, y, c.trunc);
            return Weighted{coeff * s.value, std::abs(coeff) * s.magnitude};
        };
        return weighted_residual(x, u(qq * qq * x, 1.0), u(qq * x, x), u(x, 1.0));
    }));

    const bool on_unit_spiral = Spiral(1.0, q, c.delta).near(x);
    if (on_unit_spiral) {
        out.push_back(skipped(x, SkipKind::Excluded, "excluded: x near spiral [1;q]"));
        out.push_back(skipped(x, SkipKind::Excluded, "excluded: t near spiral [1;q]"));
        return;
    }
    out.push_back(guarded(x, [&] {
        auto u = [&](Complex y, Complex coeff) {
            const Complex y2 = qq * qq * y;
            const Complex ratio = coeff * theta(q, y2, c.trunc) / theta(q, -y2, c.trunc);
            const Summation s = qairy_Ai_sum(q, -y, c.trunc);
            return Weighted{ratio * s.value, std::abs(ratio) * s.magnitude};
        };
        return weighted_residual(x, u(qq * qq * x, 1.0), u(qq * x, x), u(x, 1.0));
    }));
    // At infinity, t = x: -z(q^2 t) + z(q t)/(q^2 t) + z(t) = 0.
    out.push_back(guarded(x, [&] {
        const Complex t = x;
        auto z = [&](Complex s, Complex coeff) {
            const Complex g = coeff * gauge_at_infinity(q, s, c.trunc, c.delta);
            const Summation f = ramanujan_A_sum(q.squared_base(), -qq * qq * qq * s * s, c.trunc);
            return Weighted{g * f.value, std::abs(g) * f.magnitude};
        };
        return weighted_residual(x, z(qq * t, 1.0 / (qq * qq * t)), z(t, 1.0), z(qq * qq * t, 1.0));
    }));
}

void eval_qde_theta(const IdentityCheck& c, Complex x, std::vector<Outcome>& out)
{
    const QModulus& q = c.q;
    if (near_theta_zero(q, x, c.delta)) {
        for (int i = 0; i < 6; ++i)
            out.push_back(skipped(x, SkipKind::Excluded, "excluded: x near theta zeros [-1;q]"));
        return;
    }
    // Shift law, k = 1..4: direct sum at q^k x against the product at x.
    for (int k = 1; k <= 4; ++k) {
        out.push_back(guarded(x, [&] {
            const Summation lhs = theta_sum(q, q.pow(k) * x, c.trunc);
            const Complex rhs = q.pow(-static_cast<long long>(k) * (k - 1) / 2) * std::pow(x, -k)
                              * theta_product(q, x, c.trunc);
            return compared(x, lhs.value, rhs, lhs.condition());
        }));
    }
    out.push_back(guarded(x, [&] {
        const Summation lhs = theta_sum(q, 1.0 / x, c.trunc);
        return compared(x, lhs.value, theta_product(q, x, c.trunc) / x, lhs.condition());
    }));
    out.push_back(guarded(x, [&] {
        const Summation lhs = theta_sum(q, x, c.trunc);
        return compared(x, lhs.value, theta_product(q, x, c.trunc), lhs.condition());
    }));
}

void eval_qde_2f0(const IdentityCheck& c, Complex x, std::vector<Outcome>& out)
{
    if (exclude_lambda_spiral(c, x, out))
        return;
    out.push_back(guarded(x, [&] {
        const QModulus& q = c.q;
        const Complex qq = q.value();
        const Complex lambda = required_lambda(c);
        auto u = [&](Complex y) {
            return theta(q, y, c.trunc) * two_f_zero(q, lambda, y, c.trunc, c.delta).value;
        };
        const Complex a = qq * x * u(qq * qq * x);
        const Complex b = u(x);
        return compared(x, a + b, u(qq * x), cancellation(a, b));
    }));
}

constexpr int kResidueItemOneMax = 5;
constexpr int kResidueItemTwoMax = 8;

void eval_residue_lemma(const IdentityCheck& c, Complex lambda, std::vector<Outcome>& out)
{
    const QModulus& q = c.q;
    const double gap = std::min(std::abs(1.0 - q.value()), std::abs(1.0 / q.value() - 1.0));
    for (int k = 0; k <= kResidueItemOneMax; ++k) {
        out.push_back(guarded(lambda, [&] {
            const Complex pole = lambda * q.pow(-k);
            auto f = [&](Complex tau) {
                return 1.0 / (qpochhammer_inf(tau / lambda, q, c.trunc) * tau);
            };
            const QuadratureResult res = circle_integral(f, pole, 0.5 * gap * std::abs(pole));
            return compared(lambda, res.value, residue_lemma_closed(q, k, c.trunc), res.condition);
        }));
    }
    const bool on_spiral = Spiral(1.0, q, c.delta).near(lambda);
    for (int k = 0; k <= kResidueItemTwoMax; ++k) {
        if (on_spiral) {
            out.push_back(skipped(lambda, SkipKind::Excluded, "excluded: lambda near spiral [1;q]"));
            continue;
        }
        out.push_back(guarded(lambda, [&] {
            const Complex direct = 1.0 / qpochhammer_inf(lambda * q.pow(-k), q, c.trunc);
            const Complex closed = qpochhammer_inf_shifted_pole(lambda, q, k, c.trunc, c.delta);
            return compared(lambda, direct, closed, 1.0);
        }));
    }
}

constexpr int kOperationalMax = 5;

void eval_operational_lemma(const IdentityCheck& c, std::vector<Outcome>& out)
{
    const std::vector<FormalSeries> inputs{ramanujan_series(c.q, kOperationalMax),
                                           random_polynomial(c.q, 20, c.seed)};
    for (const auto& f : inputs) {
        for (int m = 0; m <= kOperationalMax; ++m) {
            for (int l = 0; l <= kOperationalMax; ++l) {
                const Complex tag(m, l);
                out.push_back(guarded(tag, [&] {
                    const auto [lhs, rhs] = borel_minus_operator_image(m, l, f);
                    // Report the worst coefficient pair.
                    int worst = 0;
                    double worst_err = -1.0;
                    for (int n = 0; n <= lhs.order(); ++n) {
                        const double scale = std::max(std::abs(lhs[n]), std::abs(rhs[n]));
                        if (scale < kUnderflowFlush)
                            continue;
                        const double e = std::abs(lhs[n] - rhs[n]) / scale;
                        if (e > worst_err) {
                            worst_err = e;
                            worst = n;
                        }
                    }
                    return compared(tag, lhs[worst], rhs[worst], 1.0);
                }));
            }
        }
    }
}

// For g = B^- p with deg p = N, the term tau^n of g meets the theta term
// (t/tau)^n at |tau| = |t q^{n-1/2}|-ish; the middle of that range keeps the
// cancellation on the circle smallest.
double balanced_contour_radius(const QModulus& q, Complex t, int degree)
{
    const double r = std::abs(t) * std::pow(q.modulus(), 0.5 * (degree - 1));
    return std::min(r, 0.99 / std::norm(q.value()));
}

void eval_formal_inverses(const IdentityCheck& c, Complex x, std::vector<Outcome>& out)
{
    const QModulus& q = c.q;
    const FormalSeries p = random_polynomial(q, c.degree, c.seed);
    out.push_back(guarded(x, [&] {
        const FormalSeries g = qborel_minus(p);
        const QuadratureResult res = qlaplace_minus_detailed(
            [&](Complex tau) { return g.evaluate(tau); }, q, x,
            balanced_contour_radius(q, x, c.degree), {}, c.trunc);
        return compared(x, p.evaluate(x), res.value, res.condition);
    }));
    if (exclude_lambda_spiral(c, x, out))
        return;
    out.push_back(guarded(x, [&] {
        const FormalSeries phi = qborel_plus(p);
        const Summation s = qlaplace_plus(phi, required_lambda(c), x, c.trunc, c.delta);
        return compared(x, p.evaluate(x), s.value, s.condition());
    }));
}

}  // namespace

std::string_view to_string(IdentityId id) noexcept
{
    for (const auto& [key, name] : kNames) {
        if (key == id)
            return name;
    }
    return "unknown";
}

std::optional<IdentityId> identity_from_string(std::string_view name) noexcept
{
    for (const auto& [key, n] : kNames) {
        if (n == name)
            return key;
    }
    return std::nullopt;
}

std::span<const IdentityId> all_identities() noexcept
{
    return kAll;
}

int IdentityReport::evaluated() const noexcept
{
    return static_cast<int>(std::count_if(points.begin(), points.end(),
                                          [](const PointRecord& p) { return !p.skipped; }));
}

int IdentityReport::skipped() const noexcept
{
    return static_cast<int>(points.size()) - evaluated();
}

double effective_tolerance(double tol, double condition) noexcept
{
    if (!(condition > kConditionWidening))
        return tol;
    return std::min(tol * condition, std::max(tol, kMaxWidenedTolerance));
}

std::vector<Complex> default_grid()
{
    constexpr int kPoints = 24;
    constexpr double kMin = 0.15, kMax = 8.0;
    std::vector<Complex> grid;
    grid.reserve(kPoints);
    for (int i = 0; i < kPoints; ++i) {
        const double modulus = kMin * std::pow(kMax / kMin, static_cast<double>(i) / (kPoints - 1));
        const double angle = std::numbers::pi / 16.0 + (i % 8) * std::numbers::pi / 4.0;
        grid.push_back(std::polar(modulus, angle));
    }
    return grid;
}

IdentityCheck default_check(IdentityId id, QModulus q)
{
    IdentityCheck c;
    c.id = id;
    c.q = q;
    c.grid = default_grid();
    switch (id) {
    case IdentityId::Watson:
        c.abc = std::array<Complex, 3>{-4.0, 3.0, 0.5};
        c.tol = 1e-9;
        break;
    case IdentityId::IsmailZhang: c.tol = 1e-10; break;
    case IdentityId::ThmRamanujanQairy: c.tol = 1e-9; break;
    case IdentityId::ThmEqEq:
    case IdentityId::LemmaAlt: c.tol = 1e-12; break;
    case IdentityId::Thm2f0:
        c.lambda = 0.7;
        c.tol = 1e-8;
        break;
    case IdentityId::QdeRamanujan:
    case IdentityId::QdeQairy:
    case IdentityId::QdeTheta: c.tol = 1e-9; break;
    case IdentityId::Qde2f0Resummed:
        c.lambda = 0.7;
        c.tol = 1e-9;
        break;
    case IdentityId::ResidueLemma: c.tol = 1e-8; break;
    case IdentityId::OperationalLemma: c.tol = 1e-13; break;
    case IdentityId::FormalInverses:
        c.lambda = 0.7;
        c.tol = 1e-9;
        break;
    }
    return c;
}

IdentityReport check(const IdentityCheck& config)
{
    if (!(config.tol > 0.0))
        throw QError(Errc::InvalidArgument, "tolerance must be positive");
    config.trunc.validate();

    IdentityReport report;
    report.identity = std::string(to_string(config.id));
    report.q = config.q.value();
    report.trunc = config.trunc;

    switch (config.id) {
    case IdentityId::Thm2f0:
    case IdentityId::Qde2f0Resummed:
    case IdentityId::FormalInverses:
        report.lambda = required_lambda(config);
        if (config.id != IdentityId::FormalInverses)
            require_lambda_off_unit_spiral(config);
        else if (required_lambda(config) == 0.0)
            throw QError(Errc::ZeroArgument, "lambda must be nonzero");
        break;
    case IdentityId::Watson: {
        const auto [a, b, cc] = config.abc.value_or(std::array<Complex, 3>{-4.0, 3.0, 0.5});
        const Spiral unit(1.0, config.q, config.delta);
        const Complex qq = config.q.value();
        for (Complex lower : {cc, a * qq / b, b * qq / a}) {
            if (auto k = unit.nearest_index(lower); k && *k <= 0)
                throw QError(Errc::BadLowerParameter,
                             "Watson lower parameter " + describe(lower) + " lies in q^{-N}");
        }
        if (a == 0.0 || b == 0.0 || cc == 0.0 || unit.near(a / b))
            throw QError(Errc::SpiralProximity, "Watson parameters need a, b, c != 0 and b/a off q^Z");
        break;
    }
    default: break;
    }

    if (config.id != IdentityId::OperationalLemma && config.grid.empty())
        throw QError(Errc::EmptyGrid, "grid is empty");

    std::vector<Outcome> outcomes;
    if (config.id == IdentityId::OperationalLemma) {
        eval_operational_lemma(config, outcomes);
    } else {
        for (Complex x : config.grid) {
            if (x == 0.0) {
                outcomes.push_back(skipped(x, SkipKind::Excluded, "excluded: x = 0"));
                continue;
            }
            switch (config.id) {
            case IdentityId::Watson: eval_watson(config, x, outcomes); break;
            case IdentityId::IsmailZhang: eval_ismail_zhang(config, x, outcomes); break;
            case IdentityId::ThmRamanujanQairy: eval_ramanujan_qairy(config, x, outcomes); break;
            case IdentityId::ThmEqEq: eval_eq_Eq(config, x, outcomes); break;
            case IdentityId::LemmaAlt: eval_lemma_alt(config, x, outcomes); break;
            case IdentityId::Thm2f0: eval_2f0(config, x, outcomes); break;
            case IdentityId::QdeRamanujan: eval_qde_ramanujan(config, x, outcomes); break;
            case IdentityId::QdeQairy: eval_qde_qairy(config, x, outcomes); break;
            case IdentityId::QdeTheta: eval_qde_theta(config, x, outcomes); break;
            case IdentityId::Qde2f0Resummed: eval_qde_2f0(config, x, outcomes); break;
            case IdentityId::ResidueLemma: eval_residue_lemma(config, x, outcomes); break;
            case IdentityId::FormalInverses: eval_formal_inverses(config, x, outcomes); break;
            case IdentityId::OperationalLemma: break;
            }
        }
    }

    const bool all_excluded = std::all_of(outcomes.begin(), outcomes.end(), [](const Outcome& o) {
        return o.skip == SkipKind::Excluded;
    });
    if (all_excluded)
        throw QError(Errc::EmptyGrid, "every grid point of " + report.identity
                                          + " lies in an exclusion set");

    bool all_within = true;
    for (auto& o : outcomes) {
        if (!o.record.skipped) {
            report.max_rel_err = std::max(report.max_rel_err, o.record.rel_err);
            if (!(o.record.rel_err <= effective_tolerance(config.tol, o.record.condition)))
                all_within = false;
        }
        report.points.push_back(std::move(o.record));
    }
    report.pass = all_within && report.evaluated() >= 1;
    return report;
}

std::vector<IdentityReport> run_suite(const std::vector<IdentityCheck>& config)
{
    std::vector<IdentityReport> reports;
    reports.reserve(config.size());
    for (const auto& c : config)
        reports.push_back(check(c));
    return reports;
}

std::vector<IdentityCheck> default_suite()
{
    std::vector<IdentityCheck> suite;
    for (double q : {0.3, 0.5, 0.8}) {
        for (IdentityId id : all_identities())
            suite.push_back(default_check(id, QModulus(q)));
    }
    return suite;
}

std::string summary_line(const IdentityReport& report)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << (report.pass ? "PASS" : "FAIL")
       << " max_rel_err=" << report.max_rel_err;
    return os.str();
}

}  // namespace qconnect
