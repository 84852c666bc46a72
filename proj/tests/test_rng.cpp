#include <vector>

#include <doctest.h>

#include "deam/rng.hpp"

using namespace deam;

TEST_CASE("fixed seed reproduces identical draw sequences") {
    Rng a(12345);
    Rng b(12345);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    Rng c(12345);
    Rng d(12346);
    bool all_equal = true;
    for (int i = 0; i < 64; ++i) {
        if (c.next_u64() != d.next_u64()) all_equal = false;
    }
    CHECK(!all_equal);
}

TEST_CASE("draws stay in range") {
    Rng rng(9);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double x = rng.uniform(-2.0, 3.0);
        CHECK(x >= -2.0);
        CHECK(x <= 3.0);
        CHECK(rng.below(7) < 7);
    }
}

TEST_CASE("shuffle permutes without loss") {
    Rng rng(4);
    std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7};
    rng.shuffle(v);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("derive gives distinct deterministic streams") {
    CHECK(Rng::derive(5, 1) == Rng::derive(5, 1));
    CHECK(Rng::derive(5, 1) != Rng::derive(5, 2));
    CHECK(Rng::derive(5, 1) != Rng::derive(6, 1));
}
