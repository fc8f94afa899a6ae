#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace tscope {

/// Resource caps. TORSION_SCOPE_CAP accepts either a bare integer (closure
/// cap) or a comma list such as "closure=2000000,ambient=2187"; `ambient`
/// bounds the scan modulus ell^(r+k) for every prime.
struct Caps
{
    std::size_t closure = 10'000'000;
    std::optional<std::uint64_t> ambient;
};

/// Throws InvalidArgument on a malformed value.
Caps parse_caps(std::string_view text);

/// parse_caps(getenv("TORSION_SCOPE_CAP")), or defaults when unset.
Caps caps_from_env();

} // namespace tscope
