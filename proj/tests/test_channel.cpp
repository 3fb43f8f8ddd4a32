#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "femto/channel.hpp"

using namespace femto;

namespace {

ChannelParams unit_params() {
    ChannelParams p = ChannelParams::defaults();
    p.p0_femto = 1.0;
    p.p0_macro = 1.0;
    return p;
}

}  // namespace

TEST_CASE("mean_path_gain") {
    const ChannelParams p = unit_params();
    CHECK(mean_path_gain(LinkClass::FemtoOwn, 10.0, 0, p) == doctest::Approx(1e-2));
    CHECK(mean_path_gain(LinkClass::FemtoOwn, 20.0, 0, p) ==
          doctest::Approx(mean_path_gain(LinkClass::FemtoOwn, 10.0, 0, p) / 4.0));
    CHECK(mean_path_gain(LinkClass::FemtoCross, 15.0, 1, p) ==
          doctest::Approx(mean_path_gain(LinkClass::FemtoCross, 15.0, 0, p) * std::pow(10.0, -1.0)));
    CHECK(mean_path_gain(LinkClass::FemtoCross, 2.0, 0, p) == doctest::Approx(std::pow(2.0, -3.0)));
    CHECK(mean_path_gain(LinkClass::MacroDown, 2.0, 0, p) == doctest::Approx(std::pow(2.0, -3.5)));
    CHECK_THROWS_AS(mean_path_gain(LinkClass::FemtoOwn, 0.0, 0, p), std::invalid_argument);
    CHECK_THROWS_AS(mean_path_gain(LinkClass::FemtoOwn, -1.0, 0, p), std::invalid_argument);
}

TEST_CASE("free-space reference gain at 900 MHz") {
    const double lambda = 299792458.0 / 900e6;
    const double expect = std::pow(lambda / (4.0 * std::numbers::pi), 2.0);
    CHECK(free_space_reference_gain(900.0) == doctest::Approx(expect));
    const ChannelParams d = ChannelParams::defaults();
    CHECK(d.p0_femto == doctest::Approx(expect));
    CHECK(d.p0_macro == doctest::Approx(expect));
    CHECK_NOTHROW(d.validate());
    ChannelParams bad = d;
    bad.eta2 = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = d;
    bad.wall_loss = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("shadowing statistics") {
    Rng rng(17);
    for (int i = 0; i < 100; ++i) CHECK(sample_shadowing(0.0, rng) == 1.0);

    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = 10.0 * std::log10(sample_shadowing(8.0, rng));
        sum += g;
        sum_sq += g * g;
    }
    const double mean = sum / n;
    const double sd = std::sqrt((sum_sq - n * mean * mean) / (n - 1));
    CHECK(std::abs(mean) <= 0.1);
    CHECK(std::abs(sd - 8.0) <= 0.1);
}

TEST_CASE("fast fading statistics") {
    Rng rng(23);
    const int n = 1000000;
    double sum = 0.0;
    int above_one = 0, positive = 0;
    std::vector<double> first;
    first.reserve(100000);
    for (int i = 0; i < n; ++i) {
        const double z = sample_fast_fading(rng);
        sum += z;
        if (z > 1.0) ++above_one;
        if (z > 0.0) ++positive;
        if (i < 100000) first.push_back(z);
    }
    CHECK(std::abs(sum / n - 1.0) <= 0.005);
    CHECK(std::abs(static_cast<double>(above_one) / n - std::exp(-1.0)) <= 0.003);
    CHECK(positive == n);

    std::sort(first.begin(), first.end());
    double ks = 0.0;
    const double m = static_cast<double>(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        const double cdf = -std::expm1(-first[i]);
        ks = std::max({ks, std::abs(cdf - static_cast<double>(i) / m), std::abs(cdf - static_cast<double>(i + 1) / m)});
    }
    CHECK(ks < 0.01);
}

TEST_CASE("received_power") {
    const ChannelParams p = unit_params();
    CHECK(received_power(0.01, LinkClass::FemtoOwn, 5.0, 0, p, {}) == doctest::Approx(4e-4));
    CHECK(received_power(0.0, LinkClass::MacroDown, 100.0, 0, p, {2.0, 3.0}) == 0.0);
    CHECK_THROWS_AS(received_power(-1.0, LinkClass::FemtoOwn, 5.0, 0, p, {}), std::invalid_argument);
    CHECK_THROWS_AS(received_power(1.0, LinkClass::FemtoOwn, 0.0, 0, p, {}), std::invalid_argument);

    // shadowing never reaches the serving indoor link
    ChannelParams loud = p;
    loud.shadow_sigma_femto = 12.0;
    const LinkRealization r{7.5, 0.4};
    CHECK(received_power(0.01, LinkClass::FemtoOwn, 5.0, 0, loud, r) ==
          received_power(0.01, LinkClass::FemtoOwn, 5.0, 0, p, {1.0, 0.4}));
    Rng rng(1);
    CHECK(sample_link(LinkClass::FemtoOwn, loud, rng).xi == 1.0);

    CHECK(received_power(0.02, LinkClass::FemtoCross, 30.0, 1, p, r) ==
          doctest::Approx(2.0 * received_power(0.01, LinkClass::FemtoCross, 30.0, 1, p, r)));
    double prev = received_power(1.0, LinkClass::MacroDown, 1.0, 0, p, r);
    for (double d = 2.0; d < 2000.0; d *= 1.7) {
        const double now = received_power(1.0, LinkClass::MacroDown, d, 0, p, r);
        CHECK(now < prev);
        prev = now;
    }
}

TEST_CASE("shadowing sigma per class and macro slant range") {
    const ChannelParams p = ChannelParams::defaults();
    CHECK(shadow_sigma_db(LinkClass::FemtoOwn, p) == 0.0);
    CHECK(shadow_sigma_db(LinkClass::FemtoCross, p) == 4.0);
    CHECK(shadow_sigma_db(LinkClass::MacroDown, p) == 8.0);
    CHECK(macro_link_distance(0.0, p) == doctest::Approx(48.0));
    CHECK(macro_link_distance(200.0, p) == doctest::Approx(std::hypot(200.0, 48.0)));
}
