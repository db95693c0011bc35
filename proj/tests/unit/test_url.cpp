#include <doctest.h>

#include "polarscope/url.hpp"

using namespace polarscope::url;

TEST_CASE("canonicalize_url: tracking strip and www removal") {
    const auto r =
        canonicalize_url("https://www.hs.fi/politiikka/art-2000008589031.html?share=x");
    REQUIRE(r.value.has_value());
    CHECK(r.value->outlet == "hs.fi");
    CHECK(r.value->article_key == "hs.fi/politiikka/art-2000008589031.html");
}

TEST_CASE("canonicalize_url: already canonical") {
    const auto r = canonicalize_url("http://yle.fi/a/3-123");
    REQUIRE(r.value.has_value());
    CHECK(r.value->outlet == "yle.fi");
    CHECK(r.value->article_key == "yle.fi/a/3-123");
}

TEST_CASE("canonicalize_url: scheme rejections") {
    CHECK(!canonicalize_url("ftp://example.org/x").value.has_value());
    CHECK(canonicalize_url("ftp://example.org/x").reason == RejectReason::unsupported_scheme);
    CHECK(!canonicalize_url("mailto:user@example.org").value.has_value());
    CHECK(!canonicalize_url("").value.has_value());
    CHECK(!canonicalize_url("https:///nopath").value.has_value());
}

TEST_CASE("canonicalize_url: query normalization") {
    // utm_* prefix, fbclid/share/ref exact; remaining pairs sorted.
    const auto r = canonicalize_url(
        "https://m.example.fi/story?z=2&utm_source=tw&a=1&fbclid=abc&ref=x");
    REQUIRE(r.value.has_value());
    CHECK(r.value->outlet == "example.fi");
    CHECK(r.value->article_key == "example.fi/story?a=1&z=2");

    // all params stripped -> no question mark
    const auto r2 = canonicalize_url("https://example.fi/story?utm_campaign=x");
    CHECK(r2.value->article_key == "example.fi/story");
}

TEST_CASE("canonicalize_url: host normalization") {
    CHECK(canonicalize_url("HTTPS://WWW.YLE.FI/a").value->outlet == "yle.fi");
    CHECK(canonicalize_url("https://www.m.site.fi/x").value->outlet == "site.fi");
    CHECK(canonicalize_url("https://hs.fi:443/x").value->article_key == "hs.fi/x");
    // subdomains other than www/m are kept (documented policy)
    CHECK(canonicalize_url("https://suom.kuvalehti.fi/a").value->outlet ==
          "suom.kuvalehti.fi");
    // fragment dropped
    CHECK(canonicalize_url("https://yle.fi/a#section").value->article_key == "yle.fi/a");
}

TEST_CASE("canonicalize_url: idempotent on article keys") {
    const char* inputs[] = {
        "https://www.hs.fi/politiikka/art-2000008589031.html?share=x",
        "http://yle.fi/a/3-123",
        "https://m.example.fi/story?z=2&utm_source=tw&a=1",
        "https://example.fi",
        "https://example.fi/?b=2&a=1",
    };
    for (const auto* raw : inputs) {
        const auto first = canonicalize_url(raw);
        REQUIRE(first.value.has_value());
        const auto again = canonicalize_url(first.value->article_key);
        REQUIRE(again.value.has_value());
        CHECK(again.value->article_key == first.value->article_key);
        CHECK(again.value->outlet == first.value->outlet);
    }
}
