#include <doctest.h>

#include "polarscope/text.hpp"

using polarscope::text::case_fold;

TEST_CASE("case folding: ascii and Finnish letters") {
    CHECK(case_fold("KORONA") == "korona");
    CHECK(case_fold("Päästö") == "päästö");
    CHECK(case_fold("PÄÄSTÖ") == "päästö");
    CHECK(case_fold("ÅÄÖ åäö") == "åäö åäö");
    CHECK(case_fold("NATO-jäsenyys") == "nato-jäsenyys");
}

TEST_CASE("case folding: latin extended and beyond") {
    CHECK(case_fold("Šš Žž") == "šš žž");   // common in Finnish loanwords
    CHECK(case_fold("ŸÝ") == "ÿý");
    CHECK(case_fold("ИВАН") == "иван");
    CHECK(case_fold("ΕΛΛΑΣ") == "ελλασ");
}

TEST_CASE("case folding: idempotent") {
    const char* samples[] = {"KORONA rajoitukset", "PÄÄSTÖKAUPPA", "mixed ÅÄÖ text",
                             "\xff\xfeinvalid bytes", "emoji \xF0\x9F\x98\x80 ok"};
    for (const auto* s : samples) {
        const auto once = case_fold(s);
        CHECK(case_fold(once) == once);
    }
}

TEST_CASE("case folding: invalid utf-8 passes through") {
    const std::string bad = "abc\xC3";
    CHECK(case_fold(bad).size() == bad.size());
}
