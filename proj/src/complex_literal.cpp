#include "qconnect/complex_literal.hpp"

#include <charconv>

namespace qconnect {

namespace {

// Parses a whole real number, allowing one leading sign.
std::optional<double> parse_real(std::string_view s)
{
    if (s.empty())
        return std::nullopt;
    if (s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

}  // namespace

std::optional<Complex> parse_complex(std::string_view text)
{
    if (text.empty())
        return std::nullopt;
    if (text.back() != 'i') {
        const auto re = parse_real(text);
        if (!re)
            return std::nullopt;
        return Complex(*re, 0.0);
    }
    const std::string_view body = text.substr(0, text.size() - 1);
    // The split is the last sign not at the start and not after an exponent marker.
    for (std::size_t k = body.size(); k-- > 1;) {
        const char ch = body[k];
        if (ch != '+' && ch != '-')
            continue;
        const char prev = body[k - 1];
        if (prev == 'e' || prev == 'E')
            continue;
        const auto re = parse_real(body.substr(0, k));
        const auto im = parse_real(body.substr(k));
        if (!re || !im)
            return std::nullopt;
        return Complex(*re, *im);
    }
    return std::nullopt;
}

}  // namespace qconnect
