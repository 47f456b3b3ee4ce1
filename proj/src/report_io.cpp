#include "qconnect/report_io.hpp"

#include "qconnect/errors.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace qconnect {

namespace {

using Json = nlohmann::ordered_json;

Json complex_json(Complex z)
{
    return Json{{"re", z.real()}, {"im", z.imag()}};
}

Complex complex_from(const Json& j)
{
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

Json report_json(const IdentityReport& r)
{
    Json points = Json::array();
    for (const auto& p : r.points) {
        points.push_back(Json{
            {"x", complex_json(p.x)},
            {"lhs", complex_json(p.lhs)},
            {"rhs", complex_json(p.rhs)},
            {"abs_err", p.abs_err},
            {"rel_err", p.rel_err},
            {"condition", p.condition},
            {"skipped", p.skipped},
            {"reason", p.reason ? Json(*p.reason) : Json(nullptr)},
        });
    }
    return Json{
        {"identity", r.identity},
        {"q", complex_json(r.q)},
        {"lambda", r.lambda ? complex_json(*r.lambda) : Json(nullptr)},
        {"points", std::move(points)},
        {"max_rel_err", r.max_rel_err},
        {"pass", r.pass},
        {"trunc", Json{{"eps", r.trunc.eps}, {"n_max", r.trunc.n_max}}},
    };
}

}  // namespace

std::string to_json(const IdentityReport& report)
{
    return report_json(report).dump(2) + "\n";
}

std::string to_json(const std::vector<IdentityReport>& reports)
{
    Json all = Json::array();
    for (const auto& r : reports)
        all.push_back(report_json(r));
    return all.dump(2) + "\n";
}

IdentityReport report_from_json(const std::string& text)
{
    try {
        const Json j = Json::parse(text);
        IdentityReport r;
        r.identity = j.at("identity").get<std::string>();
        r.q = complex_from(j.at("q"));
        if (!j.at("lambda").is_null())
            r.lambda = complex_from(j.at("lambda"));
        for (const auto& p : j.at("points")) {
            PointRecord rec;
            rec.x = complex_from(p.at("x"));
            rec.lhs = complex_from(p.at("lhs"));
            rec.rhs = complex_from(p.at("rhs"));
            rec.abs_err = p.at("abs_err").get<double>();
            rec.rel_err = p.at("rel_err").get<double>();
            rec.condition = p.at("condition").get<double>();
            rec.skipped = p.at("skipped").get<bool>();
            if (!p.at("reason").is_null())
                rec.reason = p.at("reason").get<std::string>();
            r.points.push_back(std::move(rec));
        }
        r.max_rel_err = j.at("max_rel_err").get<double>();
        r.pass = j.at("pass").get<bool>();
        r.trunc.eps = j.at("trunc").at("eps").get<double>();
        r.trunc.n_max = j.at("trunc").at("n_max").get<int>();
        return r;
    } catch (const Json::exception& e) {
        throw QError(Errc::InvalidArgument, std::string("malformed report: ") + e.what());
    }
}

std::string to_csv(const IdentityReport& report)
{
    std::ostringstream os;
    os << std::setprecision(17);
    os << "x_re,x_im,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,condition,skipped,reason\n";
    for (const auto& p : report.points) {
        os << p.x.real() << ',' << p.x.imag() << ',' << p.lhs.real() << ',' << p.lhs.imag() << ','
           << p.rhs.real() << ',' << p.rhs.imag() << ',' << p.abs_err << ',' << p.rel_err << ','
           << p.condition << ',' << (p.skipped ? "true" : "false") << ',';
        if (p.reason) {
            os << '"';
            for (char ch : *p.reason) {
                if (ch == '"')
                    os << '"';
                os << ch;
            }
            os << '"';
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace qconnect
