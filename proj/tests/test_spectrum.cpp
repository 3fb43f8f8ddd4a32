#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "femto/spectrum.hpp"

using namespace femto;

namespace {

Band mhz(double lo, double hi) { return {khz_from_mhz(lo), khz_from_mhz(hi)}; }

// Membership oracle: sample the midpoint of every 100 kHz cell of [0, 40) MHz.
std::vector<bool> grid(const BandSet& s) {
    std::vector<bool> out;
    for (Khz f = 50; f < 40000; f += 100) out.push_back(s.contains(f));
    return out;
}

BandSet random_set(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(0, 4), edge(0, 400);
    std::vector<Band> bands;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        int a = edge(rng), b = edge(rng);
        if (a > b) std::swap(a, b);
        bands.push_back({Khz{a} * 100, Khz{b} * 100});
    }
    return BandSet(bands);
}

}  // namespace

TEST_CASE("intersect examples") {
    CHECK(intersect(BandSet(mhz(0, 10)), BandSet(mhz(10, 20))).empty());
    CHECK(intersect(BandSet(mhz(0, 30)), BandSet(mhz(10, 20))) == BandSet(mhz(10, 20)));

    const BandSet a{mhz(0, 5), mhz(10, 15)};
    const BandSet b{mhz(3, 12)};
    const BandSet got = intersect(a, b);
    CHECK(got == BandSet{mhz(3, 5), mhz(10, 12)});

    std::vector<bool> expect;
    const auto ga = grid(a), gb = grid(b);
    for (std::size_t i = 0; i < ga.size(); ++i) expect.push_back(ga[i] && gb[i]);
    CHECK(grid(got) == expect);
}

TEST_CASE("unite examples") {
    CHECK(unite(BandSet(mhz(0, 10)), BandSet(mhz(10, 20))) == BandSet(mhz(0, 20)));
    CHECK(unite(BandSet(mhz(0, 10)), BandSet{}) == BandSet(mhz(0, 10)));
    CHECK(unite(BandSet(mhz(0, 10)), BandSet(mhz(10, 20))).bands().size() == 1);

    const BandSet a{mhz(0, 5), mhz(10, 15)};
    const BandSet b{mhz(3, 12)};
    const BandSet got = unite(a, b);
    CHECK(got == BandSet(mhz(0, 15)));

    std::vector<bool> expect;
    const auto ga = grid(a), gb = grid(b);
    for (std::size_t i = 0; i < ga.size(); ++i) expect.push_back(ga[i] || gb[i]);
    CHECK(grid(got) == expect);
}

TEST_CASE("partition_equal") {
    const auto thirds = partition_equal(mhz(0, 30), 3);
    REQUIRE(thirds.size() == 3);
    CHECK(thirds[0] == mhz(0, 10));
    CHECK(thirds[1] == mhz(10, 20));
    CHECK(thirds[2] == mhz(20, 30));

    const auto halves = partition_equal(mhz(20, 30), 2);
    REQUIRE(halves.size() == 2);
    CHECK(halves[0] == mhz(20, 25));
    CHECK(halves[1] == mhz(25, 30));

    const auto one = partition_equal(mhz(0, 10), 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == mhz(0, 10));

    CHECK_THROWS_AS(partition_equal(mhz(0, 10), 0), std::invalid_argument);
    CHECK_THROWS_AS(partition_equal(Band{}, 3), std::invalid_argument);

    // 10001 kHz into thirds: the last part takes the leftover 2 kHz
    const auto odd = partition_equal(Band{0, 10001}, 3);
    CHECK(odd[0].width() == 3333);
    CHECK(odd[1].width() == 3333);
    CHECK(odd[2].width() == 3335);
    CHECK(odd[2].hi == 10001);
}

TEST_CASE("partition_equal is contiguous and exact") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Khz> lo(0, 100000), w(1, 100000);
    std::uniform_int_distribution<int> n(1, 9);
    for (int t = 0; t < 500; ++t) {
        const Band b{lo(rng), 0};
        const Band band{b.lo, b.lo + w(rng)};
        const int parts = n(rng);
        if (band.width() < parts) continue;
        const auto p = partition_equal(band, parts);
        REQUIRE(static_cast<int>(p.size()) == parts);
        CHECK(p.front().lo == band.lo);
        CHECK(p.back().hi == band.hi);
        for (int k = 0; k + 1 < parts; ++k) {
            CHECK(p[static_cast<std::size_t>(k)].hi == p[static_cast<std::size_t>(k + 1)].lo);
            CHECK(p[static_cast<std::size_t>(k)].width() == band.width() / parts);
        }
        CHECK(p.back().width() - band.width() / parts < parts);
    }
}

TEST_CASE("random band sets against the grid oracle") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 1000; ++t) {
        const BandSet a = random_set(rng), b = random_set(rng);
        const BandSet i = intersect(a, b), u = unite(a, b), d = subtract(a, b);
        const auto ga = grid(a), gb = grid(b), gi = grid(i), gu = grid(u), gd = grid(d);
        for (std::size_t k = 0; k < ga.size(); ++k) {
            REQUIRE(gi[k] == (ga[k] && gb[k]));
            REQUIRE(gu[k] == (ga[k] || gb[k]));
            REQUIRE(gd[k] == (ga[k] && !gb[k]));
        }
        CHECK(is_subset(i, a));
        CHECK(is_subset(i, b));
        CHECK(is_subset(a, u));
        CHECK(is_subset(b, u));
        CHECK(a.width() + b.width() == u.width() + i.width());
        CHECK(intersect(a, b) == intersect(b, a));
        CHECK(overlaps(a, b) == !i.empty());

        // normalized: sorted, nonempty, neither overlapping nor touching
        const auto& m = u.bands();
        for (std::size_t k = 0; k < m.size(); ++k) {
            CHECK(!m[k].empty());
            if (k > 0) CHECK(m[k - 1].hi < m[k].lo);
        }
    }
}

TEST_CASE("empty band and printing") {
    CHECK(Band{}.width() == 0);
    CHECK(Band{5, 5} == Band{});
    CHECK(BandSet(Band{7, 7}).empty());
    CHECK(to_string(BandSet{Band{0, 10}, Band{20, 30}}) == "{[0,10);[20,30)}");
    CHECK(to_string(BandSet{}) == "{}");
    std::ostringstream os;
    os << Band{1, 2};
    CHECK(os.str() == "[1,2)");
}

TEST_CASE("MHz conversion is exact to the kHz") {
    CHECK(khz_from_mhz(30.0) == 30000);
    CHECK(khz_from_mhz(0.001) == 1);
    CHECK(mhz_from_khz(2500) == doctest::Approx(2.5));
}
