#include "qconnect/cli.hpp"

#include "qconnect/complex_literal.hpp"
#include "qconnect/errors.hpp"
#include "qconnect/qcore.hpp"
#include "qconnect/report_io.hpp"
#include "qconnect/special.hpp"
#include "qconnect/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qconnect {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Complex complex_arg(const std::string& text, const char* flag)
{
    const auto z = parse_complex(text);
    if (!z)
        throw UsageError(std::string("cannot parse ") + flag + " '" + text + "'; "
                         + std::string(kComplexGrammar));
    return *z;
}

std::vector<Complex> complex_list(const std::vector<std::string>& items, const char* flag)
{
    std::vector<Complex> out;
    out.reserve(items.size());
    for (const auto& s : items)
        out.push_back(complex_arg(s, flag));
    return out;
}

std::string format_complex(Complex z)
{
    char buf[96];
    const double im = z.imag();
    std::snprintf(buf, sizeof buf, "%.15g%c%.15gi", z.real(), std::signbit(im) ? '-' : '+',
                  std::abs(im));
    return buf;
}

struct TruncFlags {
    std::optional<double> eps;
    std::optional<int> n_max;

    void add(CLI::App* cmd)
    {
        cmd->add_option("--eps", eps, "Truncation tolerance");
        cmd->add_option("--nmax", n_max, "Maximum number of series terms");
    }

    Truncation resolve() const
    {
        Truncation t;
        if (const char* env = std::getenv("Q_CONNECT_TRUNC_EPS")) {
            char* end = nullptr;
            const double v = std::strtod(env, &end);
            if (end == env || *end != '\0')
                throw UsageError(std::string("Q_CONNECT_TRUNC_EPS is not a number: ") + env);
            t.eps = v;
        }
        if (eps)
            t.eps = *eps;
        if (n_max)
            t.n_max = *n_max;
        t.validate();
        return t;
    }
};

struct EvalArgs {
    std::string function;
    std::string q = "0.5";
    std::string x;
    std::optional<std::string> lambda;
    std::vector<std::string> upper;
    std::vector<std::string> lower;
    std::string form = "series";
    double delta = kDefaultProximity;
    TruncFlags trunc;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err)
{
    const QModulus q(complex_arg(a.q, "--q"));
    const Complex x = complex_arg(a.x, "--x");
    const Truncation trunc = a.trunc.resolve();
    const ExpForm form = a.form == "product" ? ExpForm::Product : ExpForm::Series;
    auto lambda = [&] {
        if (!a.lambda)
            throw UsageError(a.function + " requires --lambda");
        return complex_arg(*a.lambda, "--lambda");
    };

    Complex value;
    int terms = 0;
    const std::string& fn = a.function;
    if (fn == "Aq") {
        const Summation s = ramanujan_A_sum(q, x, trunc);
        value = s.value;
        terms = s.terms;
    } else if (fn == "Aiq") {
        const Complex zero[] = {0.0};
        const Complex lo[] = {-q.value()};
        const Summation s = rphis_sum(zero, lo, q, -x, trunc);
        value = s.value;
        terms = s.terms;
    } else if (fn == "theta") {
        if (x == 0.0)
            throw QError(Errc::ZeroArgument, "theta_q is undefined at x = 0");
        if (near_theta_zero(q, x, a.delta))
            err << "warning: x is within delta of the theta zero spiral [-1;q]\n";
        value = theta(q, x, trunc);
    } else if (fn == "eq") {
        value = e_q(q, x, trunc, form, a.delta);
    } else if (fn == "Eq") {
        value = E_q(q, x, trunc, form);
    } else if (fn == "rphis") {
        const auto up = complex_list(a.upper, "--upper");
        const auto lo = complex_list(a.lower, "--lower");
        const Summation s = rphis_sum(up, lo, q, x, trunc);
        value = s.value;
        terms = s.terms;
    } else if (fn == "2f0") {
        const Summation s = two_f_zero(q, lambda(), x, trunc, a.delta);
        value = s.value;
        terms = s.terms;
    } else if (fn == "2f0-closed") {
        const TwoFZeroClosed c = two_f_zero_closed(q, lambda(), x, trunc, a.delta);
        value = c.bare();
        terms = c.terms;
    } else if (fn == "f-residues") {
        const ResidueSum r = f_via_residues(q, x, trunc);
        value = r.value;
        terms = r.terms;
    } else if (fn == "g-borel") {
        value = g_borel_image(q, x, trunc, a.delta);
    }
    out << format_complex(value) << "\nterms=" << terms << '\n';
    return kExitPass;
}

struct CheckArgs {
    std::string identity;
    std::string q = "0.5";
    bool grid_default = false;
    std::vector<std::string> grid;
    std::optional<std::string> lambda;
    std::vector<std::string> abc;
    std::optional<double> tol;
    std::optional<std::string> out_path;
    std::string format = "json";
    std::optional<int> degree;
    bool mutate = false;
    double delta = kDefaultProximity;
    TruncFlags trunc;
};

void write_report(const std::string& text, const std::optional<std::string>& path)
{
    if (!path)
        return;
    std::ofstream f(*path, std::ios::binary);
    if (!f)
        throw UsageError("cannot open output file " + *path);
    f << text;
}

int cmd_check(const CheckArgs& a, std::ostream& out)
{
    const auto id = identity_from_string(a.identity);
    if (!id)
        throw UsageError("unknown identity '" + a.identity + "'");
    if (a.grid_default && !a.grid.empty())
        throw UsageError("--grid-default and --grid are mutually exclusive");

    IdentityCheck c = default_check(*id, QModulus(complex_arg(a.q, "--q")));
    if (!a.grid.empty())
        c.grid = complex_list(a.grid, "--grid");
    if (a.lambda)
        c.lambda = complex_arg(*a.lambda, "--lambda");
    if (!a.abc.empty()) {
        if (a.abc.size() != 3)
            throw UsageError("--abc takes exactly three values");
        const auto v = complex_list(a.abc, "--abc");
        c.abc = std::array<Complex, 3>{v[0], v[1], v[2]};
    }
    if (a.tol)
        c.tol = *a.tol;
    if (a.degree)
        c.degree = *a.degree;
    if (a.mutate)
        c.mutation = Mutation::DropOneMinusQ;
    c.delta = a.delta;
    c.trunc = a.trunc.resolve();

    const IdentityReport report = check(c);
    write_report(a.format == "csv" ? to_csv(report) : to_json(report), a.out_path);
    out << summary_line(report) << '\n';
    return report.pass ? kExitPass : kExitFail;
}

int cmd_suite(const std::optional<std::string>& out_path, std::ostream& out)
{
    const auto reports = run_suite(default_suite());
    bool all = true;
    for (const auto& r : reports) {
        std::ostringstream q;
        q << r.q.real();
        out << r.identity << " q=" << q.str() << ' ' << summary_line(r) << '\n';
        all = all && r.pass;
    }
    write_report(to_json(reports), out_path);
    return all ? kExitPass : kExitFail;
}

int cmd_show(const std::string& path, std::ostream& out)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw UsageError("cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    out << to_json(report_from_json(buf.str()));
    return kExitPass;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"q-special functions, q-Borel-Laplace transforms and connection formula checks"};
    app.require_subcommand(1);

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Evaluate a function at a point");
    eval->add_option("function", ev.function, "Function name")
        ->required()
        ->check(CLI::IsMember({"Aq", "Aiq", "theta", "eq", "Eq", "rphis", "2f0", "2f0-closed",
                               "f-residues", "g-borel"}));
    eval->add_option("--q", ev.q, "Base q, 0 < |q| < 1");
    eval->add_option("--x", ev.x, "Argument (t for f-residues, tau for g-borel)")->required();
    eval->add_option("--lambda", ev.lambda, "Spiral parameter for 2f0 and 2f0-closed");
    eval->add_option("--upper", ev.upper, "rphis upper parameters")->delimiter(',');
    eval->add_option("--lower", ev.lower, "rphis lower parameters")->delimiter(',');
    eval->add_option("--form", ev.form, "eq/Eq form")->check(CLI::IsMember({"series", "product"}));
    eval->add_option("--delta", ev.delta, "Spiral proximity threshold");
    ev.trunc.add(eval);

    CheckArgs ck;
    auto* chk = app.add_subcommand("check", "Check one identity over a grid");
    std::vector<std::string> ids;
    for (IdentityId id : all_identities())
        ids.emplace_back(to_string(id));
    chk->add_option("identity", ck.identity, "Identity id")->required()->check(CLI::IsMember(ids));
    chk->add_option("--q", ck.q, "Base q");
    chk->add_flag("--grid-default", ck.grid_default, "Use the 24-point default grid");
    chk->add_option("--grid", ck.grid, "Comma-separated grid points")->delimiter(',');
    chk->add_option("--lambda", ck.lambda, "Spiral parameter");
    chk->add_option("--abc", ck.abc, "Watson parameters a,b,c")->delimiter(',');
    chk->add_option("--tol", ck.tol, "Relative tolerance");
    chk->add_option("--out", ck.out_path, "Report file");
    chk->add_option("--format", ck.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    chk->add_option("--degree", ck.degree, "Polynomial degree for formal-inverses");
    chk->add_flag("--mutate", ck.mutate, "Corrupt the thm-2f0 right-hand side");
    chk->add_option("--delta", ck.delta, "Spiral proximity threshold");
    ck.trunc.add(chk);

    std::optional<std::string> suite_out;
    auto* suite = app.add_subcommand("suite", "Run every identity at q = 0.3, 0.5, 0.8");
    suite->add_option("--out", suite_out, "JSON report file");

    std::string show_path;
    auto* show = app.add_subcommand("show", "Re-print a JSON report");
    show->add_option("file", show_path, "Report file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (eval->parsed())
            return cmd_eval(ev, out, err);
        if (chk->parsed())
            return cmd_check(ck, out);
        if (suite->parsed())
            return cmd_suite(suite_out, out);
        return cmd_show(show_path, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const QError& e) {
        err << "error: " << e.what() << '\n';
        if (e.code() == Errc::InvalidArgument)
            return kExitUsage;
        return is_domain_error(e.code()) ? kExitDomain : kExitFail;
    }
}

}  // namespace qconnect
