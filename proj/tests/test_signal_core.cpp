#include "gaitseg/error.hpp"
#include "gaitseg/signal_core.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <limits>

using namespace gaitseg;

TEST_CASE("TimeSeries rejects bad rate and non-finite samples") {
    CHECK_THROWS_AS(TimeSeries({1.0}, 0.0), InvalidSeries);
    CHECK_THROWS_AS(TimeSeries({1.0}, -5.0), InvalidSeries);
    CHECK_THROWS_AS(TimeSeries({1.0, std::numeric_limits<double>::quiet_NaN()}, 10.0),
                    InvalidSeries);
    CHECK_THROWS_AS(TimeSeries({std::numeric_limits<double>::infinity()}, 10.0), InvalidSeries);
    TimeSeries s({1, 2, 3, 4}, 2.0, "x");
    CHECK(s.duration_s() == doctest::Approx(2.0));
    CHECK(s.label() == "x");
    CHECK(s.slice({1, 3}).values() == std::vector<double>{2, 3});
    CHECK_THROWS_AS(s.slice({2, 5}), InvalidSeries);
}

TEST_CASE("linear_interpolate examples") {
    TimeSeries s({0.0, 1.0}, 10.0);
    auto r = linear_interpolate(s, {3});
    CHECK(r.values() == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(r.sample_rate_hz() == doctest::Approx(15.0));

    oracle::Gen g(11);
    auto v = g.vec(25);
    auto same = linear_interpolate(TimeSeries(v, 60.0), {25});
    CHECK(same.values() == v);

    CHECK_THROWS_AS(linear_interpolate(TimeSeries({1.0}, 1.0), {4}), SeriesTooShort);
    CHECK_THROWS_AS(linear_interpolate(TimeSeries({1.0, 2.0}, 1.0), {1}), InvalidParams);
}

TEST_CASE("linear_interpolate matches the two-point formula and anchors endpoints") {
    oracle::Gen g(12);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = g.index(2, 40);
        const std::size_t m = g.index(2, 200);
        auto v = g.vec(n, -50, 50);
        auto got = linear_interpolate(TimeSeries(v, 100.0), {m}).values();
        auto want = oracle::interpolate(v, m);
        REQUIRE(got.size() == m);
        CHECK(oracle::max_abs_diff(got, want) <= 1e-12);
        CHECK(got.front() == v.front());
        CHECK(got.back() == v.back());
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        for (double x : got) CHECK((x >= *lo && x <= *hi));
    }
}

TEST_CASE("linear_interpolate is exact on affine signals") {
    oracle::Gen g(13);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = g.uniform(-3, 3), b = g.uniform(-10, 10);
        const std::size_t n = g.index(2, 60), m = g.index(2, 300);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = a * static_cast<double>(i) + b;
        auto got = linear_interpolate(TimeSeries(v, 1.0), {m}).values();
        for (std::size_t i = 0; i < m; ++i) {
            const double x = static_cast<double>(i) * static_cast<double>(n - 1) /
                             static_cast<double>(m - 1);
            CHECK(std::abs(got[i] - (a * x + b)) <= 1e-12);
        }
    }
}

TEST_CASE("moving_average examples and errors") {
    TimeSeries c(std::vector<double>(30, 2.5), 1.0);
    for (std::size_t N : {0u, 1u, 7u, 14u}) {
        const auto y = moving_average(c, {N});
        for (double x : y.values()) CHECK(x == doctest::Approx(2.5));
    }

    oracle::Gen g(14);
    auto v = g.vec(200);
    CHECK(moving_average(TimeSeries(v, 1.0), {0}).values() == v);
    CHECK(oracle::max_abs_diff(moving_average(TimeSeries(v, 1.0), {3}).values(),
                               oracle::moving_average(v, 3)) < 1e-12);
    CHECK_THROWS_AS(moving_average(TimeSeries(g.vec(10), 1.0), {5}), WindowTooLarge);
    CHECK_NOTHROW(moving_average(TimeSeries(g.vec(11), 1.0), {5}));
}

TEST_CASE("moving_average matches direct summation and never amplifies range") {
    oracle::Gen g(15);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = g.index(1, 80);
        const std::size_t N = g.index(0, (n - 1) / 2);
        auto v = g.vec(n, -100, 100);
        auto got = moving_average(TimeSeries(v, 1.0), {N}).values();
        CHECK(oracle::max_abs_diff(got, oracle::moving_average(v, N)) < 1e-9);
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        for (double x : got) CHECK((x >= *lo - 1e-12 && x <= *hi + 1e-12));
    }
}

TEST_CASE("half_wave_rectify") {
    TimeSeries s({-1.0, 2.0, -3.0}, 5.0, "z");
    auto r = half_wave_rectify(s);
    CHECK(r.values() == std::vector<double>{0.0, 2.0, 0.0});
    CHECK(r.label() == "z");
    CHECK(r.sample_rate_hz() == 5.0);
    CHECK(half_wave_rectify(TimeSeries({0.0, 1.0, 4.0}, 1.0)).values() ==
          std::vector<double>{0.0, 1.0, 4.0});
    CHECK(half_wave_rectify(TimeSeries({-1.0, -0.5}, 1.0)).values() == std::vector<double>{0, 0});

    oracle::Gen g(16);
    for (int trial = 0; trial < 50; ++trial) {
        TimeSeries x(g.vec(g.index(1, 50)), 1.0);
        auto once = half_wave_rectify(x);
        CHECK(half_wave_rectify(once).values() == once.values());
    }
}

TEST_CASE("local_maxima handles plateaus and endpoints") {
    const std::vector<double> x{3, 1, 2, 2, 2, 2, 1, 5, 5, 0, 4};
    CHECK(local_maxima(x) == std::vector<std::size_t>{3, 7});
    const std::vector<double> edge{5, 4, 3, 4, 6};
    CHECK(local_maxima(edge).empty());
    oracle::Gen g(17);
    for (int trial = 0; trial < 300; ++trial) {
        auto v = g.coarse(g.index(0, 40), 4);
        CHECK(local_maxima(v) == oracle::pick_peaks(v, -1.0, 1));
    }
}

TEST_CASE("percentile") {
    const std::vector<double> v{5, 1, 3, 2, 4};
    CHECK(percentile(v, 0) == 1);
    CHECK(percentile(v, 100) == 5);
    CHECK(percentile(v, 50) == 3);
    CHECK(percentile(v, 10) == doctest::Approx(1.4));
    CHECK_THROWS_AS(percentile(std::vector<double>{}, 50), EmptyInput);
    oracle::Gen g(18);
    for (int trial = 0; trial < 100; ++trial) {
        auto x = g.vec(g.index(1, 60));
        const double q = g.uniform(0, 100);
        CHECK(percentile(x, q) == doctest::Approx(oracle::percentile(x, q)).epsilon(1e-12));
    }
}
