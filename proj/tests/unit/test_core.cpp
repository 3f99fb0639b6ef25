// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "fdecanc/core.hpp"
#include "fdecanc/error.hpp"

using namespace fdecanc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ComplexResponse delay_response(const FrequencyGrid& g, double tau) {
  std::vector<Complex> v;
  for (double f : g.points()) v.push_back(std::polar(1.0, -2.0 * kPi * f * tau));
  return {g, v};
}

}  // namespace

TEST_CASE("grid construction and validation") {
  const auto g = FrequencyGrid::parse("850e6:950e6:101");
  CHECK(g.size() == 101);
  CHECK(g.front() == 850e6);
  CHECK(g.back() == 950e6);
  CHECK_THAT(g.spacing(), WithinRel(1e6, 1e-12));
  CHECK(g.nearest_index(900.4e6) == 50);
  CHECK(g.nearest_index(900.5e6) == 50);  // tie goes low
  CHECK(g.nearest_index(1e12) == 100);

  CHECK_THROWS_AS(FrequencyGrid({1.0}), InsufficientGrid);
  CHECK_THROWS_AS(FrequencyGrid({1.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(FrequencyGrid({2.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(FrequencyGrid({1.0, 2.0, 4.0}), InvalidArgument);
  CHECK_THROWS_AS(FrequencyGrid({1.0, std::numeric_limits<double>::quiet_NaN()}), InvalidArgument);
  CHECK_THROWS_AS(FrequencyGrid::parse("850e6:950e6"), InvalidArgument);
  CHECK_THROWS_AS(FrequencyGrid::parse("850e6:950e6:1"), InvalidArgument);
  CHECK_THROWS_AS(FrequencyGrid::parse("a:950e6:3"), InvalidArgument);

  const auto s = g.slice(10, 3);
  CHECK(s.size() == 3);
  CHECK(s.front() == g[10]);
}

TEST_CASE("response arithmetic checks grids and finiteness") {
  const auto g = FrequencyGrid::uniform(1.0, 3.0, 3);
  CHECK_THROWS_AS(ComplexResponse(g, {1.0, 2.0}), InvalidArgument);
  CHECK_THROWS_AS(ComplexResponse(g, {1.0, 2.0, Complex(std::numeric_limits<double>::infinity(), 0)}),
                  InvalidArgument);
  const ComplexResponse a(g, {1.0, 2.0, 3.0});
  const ComplexResponse b(FrequencyGrid::uniform(1.0, 4.0, 3), {1.0, 1.0, 1.0});
  CHECK_THROWS_AS(a + b, InvalidArgument);
  const auto d = a - a;
  for (auto v : d.values()) CHECK(v == Complex{});
}

TEST_CASE("dB conversions") {
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK_THAT(db_to_linear(-20.0), WithinRel(0.1, 1e-15));
  CHECK_THAT(db_to_linear(6.0206), WithinAbs(2.0, 1e-4));
  CHECK(linear_to_db(0.0) == -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(db_to_linear(std::numeric_limits<double>::quiet_NaN()), InvalidArgument);
  for (double x = -100.0; x <= 100.0; x += 0.37) CHECK_THAT(linear_to_db(db_to_linear(x)), WithinAbs(x, 1e-12));

  const auto g = FrequencyGrid::uniform(1.0, 3.0, 3);
  CHECK(amplitude_db(ComplexResponse(g, {1.0, 1.0, 1.0})) == std::vector<double>{0.0, 0.0, 0.0});
  for (double v : amplitude_db(ComplexResponse(g, {0.1, 0.1, 0.1}))) CHECK_THAT(v, WithinAbs(-20.0, 1e-12));
  const auto m = amplitude_db(ComplexResponse(g, {Complex(3, 4), 0.0, 1.0}));
  CHECK_THAT(m[0], WithinAbs(20.0 * std::log10(5.0), 1e-12));
  CHECK_THAT(m[0], WithinAbs(13.979, 1e-3));
  CHECK(m[1] == -std::numeric_limits<double>::infinity());
}

TEST_CASE("phase unwrapping") {
  const auto g2 = FrequencyGrid::uniform(1.0, 2.0, 2);
  const auto p = unwrapped_phase(ComplexResponse(g2, {std::polar(1.0, 3.0), std::polar(1.0, -3.0)}));
  CHECK_THAT(p[0], WithinAbs(3.0, 1e-12));
  CHECK_THAT(p[1], WithinAbs(2.0 * kPi - 3.0, 1e-12));
  CHECK_THAT(p[1], WithinAbs(3.2832, 1e-4));

  const auto flat = unwrapped_phase(ComplexResponse(g2, {1.0, 1.0}));
  CHECK(flat == std::vector<double>{0.0, 0.0});

  const auto g = FrequencyGrid::parse("850e6:950e6:101");
  const double tau = 10e-9;
  const auto ramp = unwrapped_phase(delay_response(g, tau));
  const double offset = ramp[0] + 2.0 * kPi * g[0] * tau;
  CHECK_THAT(std::remainder(offset, 2.0 * kPi), WithinAbs(0.0, 1e-9));
  for (std::size_t k = 0; k < g.size(); ++k) CHECK_THAT(ramp[k] - offset, WithinAbs(-2.0 * kPi * g[k] * tau, 1e-6));

  CHECK_THROWS_AS(unwrapped_phase(ComplexResponse(g2, {1.0, 0.0})), DegenerateResponse);
}

TEST_CASE("unwrapped phase of a product is the sum up to one 2pi offset") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto g = FrequencyGrid::parse("1:64:64");
  std::vector<Complex> a, b;
  // Smooth random responses so that adjacent phase steps stay below pi.
  double pa = 0.0, pb = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    pa += 0.7 * u(gen);
    pb += 0.7 * u(gen);
    a.push_back(std::polar(1.0 + 0.5 * u(gen), pa));
    b.push_back(std::polar(1.0 + 0.5 * u(gen), pb));
  }
  const ComplexResponse ra(g, a), rb(g, b);
  const auto sum = unwrapped_phase(ra.multiplied(rb));
  const auto pa_u = unwrapped_phase(ra);
  const auto pb_u = unwrapped_phase(rb);
  const double off = sum[0] - pa_u[0] - pb_u[0];
  CHECK_THAT(std::remainder(off, 2.0 * kPi), WithinAbs(0.0, 1e-9));
  for (std::size_t k = 0; k < g.size(); ++k) CHECK_THAT(sum[k] - pa_u[k] - pb_u[k], WithinAbs(off, 1e-9));
}

TEST_CASE("group delay") {
  const auto g = FrequencyGrid::parse("850e6:950e6:101");
  for (double tau : {4.2e-9, 10e-9}) {
    const auto gd = group_delay(delay_response(g, tau));
    for (std::size_t k = 1; k + 1 < g.size(); ++k) CHECK_THAT(gd[k], WithinAbs(tau, 1e-15));
    CHECK_THAT(gd.front(), WithinAbs(tau, 1e-14));
    CHECK_THAT(gd.back(), WithinAbs(tau, 1e-14));
  }

  const ComplexResponse flat(g, std::vector<Complex>(g.size(), Complex(0.3, -0.2)));
  for (double v : group_delay(flat)) CHECK_THAT(v, WithinAbs(0.0, 1e-30));

  // Scaling by a complex constant leaves the delay untouched.
  const auto base = delay_response(g, 7e-9).multiplied(
      ComplexResponse(g, std::vector<Complex>(g.size(), std::polar(1.0, 0.01))));
  const auto gd1 = group_delay(base);
  const auto gd2 = group_delay(base * Complex(-2.5, 1.3));
  for (std::size_t k = 0; k < g.size(); ++k) CHECK_THAT(gd2[k], WithinAbs(gd1[k], 1e-18));

  CHECK_THROWS_AS(group_delay(ComplexResponse(FrequencyGrid::uniform(1, 2, 2), {1.0, 1.0})), InsufficientGrid);
}
