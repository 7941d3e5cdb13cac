#include "ppdcsk/channel.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "ppdcsk/compensated_sum.hpp"

using namespace ppdcsk;

TEST_CASE("zero noise passes the signal through unchanged") {
    BasebandSignal s;
    s.samples = {0.1, -0.2, 0.3};
    channel::AwgnChannel ch(0.0, 7);
    const BasebandSignal r = ch.transmit(s);
    CHECK(r.samples == s.samples);
    CHECK(r.sample_period == s.sample_period);
}

TEST_CASE("a fixed seed reproduces the identical output") {
    BasebandSignal s;
    s.samples.assign(5000, 0.25);

    channel::AwgnChannel a(1.5, 1234);
    channel::AwgnChannel b(1.5, 1234);
    CHECK(a.transmit(s).samples == b.transmit(s).samples);

    channel::AwgnChannel c(1.5, 1235);
    CHECK(a.transmit(s).samples != c.transmit(s).samples);
}

TEST_CASE("noise statistics match N0/2 over a million draws") {
    BasebandSignal zeros;
    zeros.samples.assign(1000000, 0.0);
    channel::AwgnChannel ch(2.0, 20250810);  // variance 1
    const BasebandSignal r = ch.transmit(zeros);

    CompensatedSum mean_sum, square_sum, lag_sum;
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        mean_sum.add(r.samples[i]);
        square_sum.add(r.samples[i] * r.samples[i]);
        if (i > 0) {
            lag_sum.add(r.samples[i] * r.samples[i - 1]);
        }
    }
    const double n = static_cast<double>(r.samples.size());
    const double mean = mean_sum.value() / n;
    const double variance = square_sum.value() / n - mean * mean;
    const double lag1 = lag_sum.value() / (n - 1.0);

    CHECK(std::abs(mean) < 0.005);
    CHECK(variance > 0.99);
    CHECK(variance < 1.01);
    CHECK(std::abs(lag1) < 0.01);
}

TEST_CASE("noise adds independently of the signal it rides on") {
    BasebandSignal s1, s2, s12;
    for (int i = 0; i < 4096; ++i) {
        s1.samples.push_back(0.01 * i);
        s2.samples.push_back(std::sin(0.1 * i));
        s12.samples.push_back(s1.samples.back() + s2.samples.back());
    }

    channel::AwgnChannel a(0.8, 77);
    channel::AwgnChannel b(0.8, 77);  // same realization
    const BasebandSignal r12 = a.transmit(s12);
    const BasebandSignal r1 = b.transmit(s1);
    for (std::size_t i = 0; i < r12.samples.size(); ++i) {
        REQUIRE(r12.samples[i] ==
                doctest::Approx(r1.samples[i] + s2.samples[i]).epsilon(1e-12));
    }
}

TEST_CASE("negative N0 is rejected") {
    CHECK_THROWS_AS(channel::AwgnChannel(-0.1, 1), std::domain_error);
}

TEST_CASE("the noise algorithm identifier is pinned") {
    CHECK(channel::kNoiseAlgorithm == "mt19937_64/box-muller");
}
