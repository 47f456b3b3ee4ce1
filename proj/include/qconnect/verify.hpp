#pragma once

// Numerical verification of connection formulae and q-difference equations
// over grids of complex points.

#include "qconnect/qmodulus.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qconnect {

enum class IdentityId {
    Watson,
    IsmailZhang,
    ThmRamanujanQairy,
    ThmEqEq,
    LemmaAlt,
    Thm2f0,
    QdeRamanujan,
    QdeQairy,
    QdeTheta,
    Qde2f0Resummed,
    ResidueLemma,
    OperationalLemma,
    FormalInverses,
};

std::string_view to_string(IdentityId id) noexcept;
std::optional<IdentityId> identity_from_string(std::string_view name) noexcept;
std::span<const IdentityId> all_identities() noexcept;

/// Deliberate corruption of a right-hand side, used to show that the harness
/// rejects wrong formulas.
enum class Mutation {
    None,
    /// Drops the 1/(1-q) factor of the second summand in the 2f0 closed form.
    DropOneMinusQ,
};

struct IdentityCheck {
    IdentityId id = IdentityId::ThmRamanujanQairy;
    QModulus q{0.5};
    std::optional<Complex> lambda;
    std::optional<std::array<Complex, 3>> abc;
    std::vector<Complex> grid;
    double tol = 1e-9;
    Truncation trunc{};
    double delta = kDefaultProximity;
    /// Polynomial degree for formal-inverses.
    int degree = 10;
    std::uint64_t seed = 20240611;
    Mutation mutation = Mutation::None;
};

struct PointRecord {
    Complex x;
    Complex lhs;
    Complex rhs;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double condition = 1.0;
    bool skipped = false;
    std::optional<std::string> reason;
};

struct IdentityReport {
    std::string identity;
    Complex q;
    std::optional<Complex> lambda;
    std::vector<PointRecord> points;
    double max_rel_err = 0.0;
    bool pass = false;
    Truncation trunc{};

    int evaluated() const noexcept;
    int skipped() const noexcept;
};

/// Condition numbers above this widen the tolerance to tol * condition.
inline constexpr double kConditionWidening = 1e3;
/// Widening never goes past this, so a wrong formula cannot hide behind a
/// large condition number.
inline constexpr double kMaxWidenedTolerance = 1e-3;

double effective_tolerance(double tol, double condition) noexcept;

/// 24 points with log-spaced moduli in [0.15, 8] and arguments
/// pi/16 + k pi/4, k = i mod 8.
std::vector<Complex> default_grid();

/// Default parameters and tolerance for one identity at base q.
IdentityCheck default_check(IdentityId id, QModulus q);

/// Evaluates both sides of one identity on every grid point.
///
/// Points in the identity's exclusion set are recorded as skipped; evaluation
/// errors also become skipped records. Throws EmptyGrid if no point survives
/// the exclusion filters, and a domain error if the identity's parameters
/// violate its hypotheses.
IdentityReport check(const IdentityCheck& config);

std::vector<IdentityReport> run_suite(const std::vector<IdentityCheck>& config);

/// Every identity at q in {0.3, 0.5, 0.8}.
std::vector<IdentityCheck> default_suite();

/// "PASS max_rel_err=..." or "FAIL max_rel_err=...".
std::string summary_line(const IdentityReport& report);

}  // namespace qconnect
