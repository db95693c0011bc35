#include <doctest.h>

#include <set>

#include "polarscope/prng.hpp"

using namespace polarscope;

TEST_CASE("prng: same seed, same stream") {
    rng::Prng a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("prng: frozen reference values") {
    // These pins are part of the fixture-format contract; if they move,
    // every committed fixture regenerates differently.
    rng::Prng p(1);
    CHECK(p.next() == rng::mix64(1 + rng::kGolden));
    CHECK(rng::derive(7, "tag") == rng::derive(7, "tag"));
    CHECK(rng::derive(7, "tag") != rng::derive(7, "gat"));
    CHECK(rng::derive(7, std::uint64_t{1}) != rng::derive(7, std::uint64_t{2}));
}

TEST_CASE("prng: uniform01 in range, below in range") {
    rng::Prng p(99);
    for (int i = 0; i < 10000; ++i) {
        const double u = p.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(p.below(7) < 7);
    }
}

TEST_CASE("prng: shuffle is a permutation and seed-stable") {
    std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    rng::Prng p(5);
    p.shuffle(v);
    std::set<int> s(v.begin(), v.end());
    CHECK(s.size() == 10);

    std::vector<int> w{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    rng::Prng q(5);
    q.shuffle(w);
    CHECK(v == w);
}

TEST_CASE("prng: pick_cumulative respects bounds") {
    rng::Prng p(3);
    std::vector<double> cum{1.0, 3.0, 6.0};
    int counts[3] = {0, 0, 0};
    for (int i = 0; i < 6000; ++i) ++counts[p.pick_cumulative(cum)];
    CHECK(counts[0] > 600);
    CHECK(counts[1] > 1400);
    CHECK(counts[2] > 2300);
}
