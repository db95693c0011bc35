#include "polarscope/url.hpp"

#include <algorithm>

namespace polarscope::url {

const char* to_string(RejectReason r) {
    switch (r) {
        case RejectReason::none: return "none";
        case RejectReason::unsupported_scheme: return "unsupported scheme";
        case RejectReason::empty_host: return "empty host";
        case RejectReason::malformed: return "malformed";
    }
    return "malformed";
}

namespace {

std::string lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c += 0x20;
    return out;
}

bool strip_label(std::string& host, std::string_view label) {
    if (host.size() > label.size() + 1 && host.compare(0, label.size(), label) == 0 &&
        host[label.size()] == '.') {
        host.erase(0, label.size() + 1);
        return true;
    }
    return false;
}

bool keep_param(std::string_view pair, const CanonicalizeOptions& opts) {
    const auto eq = pair.find('=');
    const std::string_view key = pair.substr(0, eq);
    if (key.size() >= 4 && key.substr(0, 4) == "utm_") return false;
    for (const auto& p : opts.strip_params)
        if (key == p) return false;
    return true;
}

} // namespace

CanonicalizeResult canonicalize_url(std::string_view raw, const CanonicalizeOptions& opts) {
    std::string_view rest = raw;
    while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
    while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t')) rest.remove_suffix(1);
    if (rest.empty()) return {std::nullopt, RejectReason::malformed};

    // Scheme, if any. An article_key has none and is treated as http.
    const auto scheme_end = rest.find("://");
    if (scheme_end != std::string_view::npos) {
        const std::string scheme = lower_ascii(rest.substr(0, scheme_end));
        if (scheme != "http" && scheme != "https")
            return {std::nullopt, RejectReason::unsupported_scheme};
        rest.remove_prefix(scheme_end + 3);
    } else {
        // A colon before the first slash would be some other scheme form
        // ("mailto:...") or a stray port-only string; both are rejected
        // further down if no host remains.
        const auto colon = rest.find(':');
        const auto slash = rest.find('/');
        if (colon != std::string_view::npos && (slash == std::string_view::npos || colon < slash)) {
            // "host:port/..." is fine; "scheme:opaque" is not. Distinguish
            // by whether digits follow the colon.
            std::size_t i = colon + 1;
            bool digits = i < rest.size();
            for (; i < rest.size() && rest[i] != '/'; ++i)
                if (rest[i] < '0' || rest[i] > '9') { digits = false; break; }
            if (!digits) return {std::nullopt, RejectReason::unsupported_scheme};
        }
    }

    const auto frag = rest.find('#');
    if (frag != std::string_view::npos) rest = rest.substr(0, frag);

    const auto path_start = rest.find('/');
    std::string_view hostport =
        path_start == std::string_view::npos ? rest : rest.substr(0, path_start);
    std::string_view path_query =
        path_start == std::string_view::npos ? std::string_view{} : rest.substr(path_start);

    // Query may start before any slash ("host?x=1").
    const auto qmark_host = hostport.find('?');
    if (qmark_host != std::string_view::npos) {
        path_query = rest.substr(qmark_host);
        hostport = hostport.substr(0, qmark_host);
    }

    std::string host = lower_ascii(hostport);
    if (const auto port = host.find(':'); port != std::string::npos) host.erase(port);
    while (strip_label(host, "www") || strip_label(host, "m")) {
    }
    if (host.empty() || host.find('.') == std::string::npos ||
        host.front() == '.' || host.back() == '.')
        return {std::nullopt, RejectReason::empty_host};

    std::string_view path = path_query;
    std::string_view query;
    if (const auto q = path_query.find('?'); q != std::string_view::npos) {
        path = path_query.substr(0, q);
        query = path_query.substr(q + 1);
    }

    std::vector<std::string> kept;
    std::size_t pos = 0;
    while (pos <= query.size() && !query.empty()) {
        auto next = query.find('&', pos);
        if (next == std::string_view::npos) next = query.size();
        const std::string_view pair = query.substr(pos, next - pos);
        if (!pair.empty() && keep_param(pair, opts)) kept.emplace_back(pair);
        if (next == query.size()) break;
        pos = next + 1;
    }
    std::sort(kept.begin(), kept.end());

    CanonicalUrl out;
    out.outlet = std::move(host);
    out.article_key = out.outlet;
    out.article_key += path;
    if (!kept.empty()) {
        out.article_key += '?';
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (i) out.article_key += '&';
            out.article_key += kept[i];
        }
    }
    return {std::move(out), RejectReason::none};
}

} // namespace polarscope::url
