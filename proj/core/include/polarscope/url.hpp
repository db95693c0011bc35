#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polarscope::url {

struct CanonicalUrl {
    std::string outlet;      // lowercased host after www./m. stripping
    std::string article_key; // outlet + path + normalized query
};

enum class RejectReason { none, unsupported_scheme, empty_host, malformed };

struct CanonicalizeResult {
    std::optional<CanonicalUrl> value;
    RejectReason reason = RejectReason::none;
};

struct CanonicalizeOptions {
    // Query parameters stripped before key construction. utm_* is always
    // treated as a prefix match.
    std::vector<std::string> strip_params = {"fbclid", "share", "ref"};
};

/// Normalize a URL to (outlet, article_key):
///  - scheme and fragment removed (missing scheme treated as http)
///  - host lowercased, leading "www." / "m." labels and any port removed
///  - tracking parameters removed, remaining query pairs sorted
/// Rejects non-http(s) schemes and URLs without a host. Idempotent:
/// canonicalizing an article_key yields the same key.
CanonicalizeResult canonicalize_url(std::string_view raw,
                                    const CanonicalizeOptions& opts = {});

const char* to_string(RejectReason r);

} // namespace polarscope::url
