#include "tscope/caps.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "tscope/error.hpp"

namespace tscope {

namespace {

std::uint64_t parse_uint(std::string_view s)
{
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v == 0)
        throw InvalidArgument("bad TORSION_SCOPE_CAP value '" + std::string(s) + "'");
    return v;
}

} // namespace

Caps parse_caps(std::string_view text)
{
    Caps caps;
    if (text.empty()) return caps;
    if (text.find('=') == std::string_view::npos) {
        caps.closure = parse_uint(text);
        return caps;
    }
    while (!text.empty()) {
        auto const comma = text.find(',');
        auto item = text.substr(0, comma);
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        auto const eq = item.find('=');
        if (eq == std::string_view::npos)
            throw InvalidArgument("bad TORSION_SCOPE_CAP item '" + std::string(item) + "'");
        auto key = item.substr(0, eq);
        auto value = parse_uint(item.substr(eq + 1));
        if (key == "closure")
            caps.closure = value;
        else if (key == "ambient")
            caps.ambient = value;
        else
            throw InvalidArgument("unknown TORSION_SCOPE_CAP key '" + std::string(key) + "'");
    }
    return caps;
}

Caps caps_from_env()
{
    char const * v = std::getenv("TORSION_SCOPE_CAP");
    return v ? parse_caps(v) : Caps{};
}

} // namespace tscope
