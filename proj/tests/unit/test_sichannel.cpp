// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

#include "fdecanc/core.hpp"
#include "fdecanc/error.hpp"
#include "fdecanc/io.hpp"
#include "fdecanc/sichannel.hpp"

using namespace fdecanc;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("fdecanc_" + name)).string();
}

}  // namespace

TEST_CASE("parse a flat three-row channel") {
  const auto h = parse_si_channel("freq_hz,re,im\n900e6,0.1,0\n910e6,0.1,0\n920e6,0.1,0\n");
  REQUIRE(h.size() == 3);
  for (double v : amplitude_db(h)) CHECK_THAT(v, WithinAbs(-20.0, 1e-12));
  CHECK(h.grid()[1] == 910e6);
}

TEST_CASE("parser accepts CRLF and rejects bad input with line numbers") {
  CHECK_NOTHROW(parse_si_channel("freq_hz,re,im\r\n1,0.1,0\r\n2,0.1,0\r\n"));
  CHECK_THROWS_AS(parse_si_channel("freq,re,im\n1,0,0\n2,0,0\n"), ParseError);
  CHECK_THROWS_AS(parse_si_channel("freq_hz,re,im\n900e6,0.1,0\n900e6,0.1,0\n910e6,0.1,0\n"), FormatError);
  CHECK_THROWS_AS(parse_si_channel("freq_hz,re,im\n1,0,0\n2,0,0\n4,0,0\n"), FormatError);
  try {
    parse_si_channel("freq_hz,re,im\n1,0.1,0\n2,abc,0\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK_THAT(std::string(e.what()), ContainsSubstring("line 3"));
  }
  try {
    parse_si_channel("freq_hz,re,im\n1,0.1,0\n2,0.1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("non-uniform files can be resampled onto a grid") {
  const std::string text = "freq_hz,re,im\n0,0,0\n1,1,2\n3,3,6\n";
  CHECK_THROWS_AS(parse_si_channel(text), FormatError);
  GridPolicy p;
  p.resample_to = FrequencyGrid::uniform(0.5, 2.5, 3);
  const auto h = parse_si_channel(text, p);
  CHECK(h[0] == Complex(0.5, 1.0));
  CHECK(h[1] == Complex(1.5, 3.0));
  CHECK(h[2] == Complex(2.5, 5.0));
  p.resample_to = FrequencyGrid::uniform(0.5, 3.5, 3);
  CHECK_THROWS_AS(parse_si_channel(text, p), FormatError);
}

TEST_CASE("save and load round trip exactly") {
  SynthChannelSpec spec;
  spec.randomize_phase = true;
  spec.seed = 9;
  const auto h = synth_si_channel(spec, FrequencyGrid::parse("850e6:950e6:101"));
  const auto path = temp_path("roundtrip.csv");
  save_si_channel(path, h);
  const auto back = load_si_channel(path);
  std::filesystem::remove(path);
  REQUIRE(back.size() == h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    CHECK(back.grid()[k] == h.grid()[k]);
    CHECK(back[k] == h[k]);
  }
  CHECK_THROWS_AS(load_si_channel(temp_path("does_not_exist.csv")), std::exception);
}

TEST_CASE("synthetic channel without echoes is a pure delay") {
  SynthChannelSpec spec;
  spec.reflections.clear();
  const auto g = FrequencyGrid::parse("850e6:950e6:101");
  const auto h = synth_si_channel(spec, g);
  for (double v : amplitude_db(h)) CHECK_THAT(v, WithinAbs(-20.0, 1e-12));
  const auto gd = group_delay(h);
  for (std::size_t k = 1; k + 1 < g.size(); ++k) CHECK_THAT(gd[k], WithinAbs(10e-9, 1e-15));
}

TEST_CASE("single echo ripples with period 1/delay") {
  SynthChannelSpec spec;
  spec.reflections = {{-10.0, 20e-9}};
  const auto g = FrequencyGrid::parse("700e6:1000e6:3001");
  const auto h = synth_si_channel(spec, g);
  std::vector<double> peaks;
  for (std::size_t k = 1; k + 1 < g.size(); ++k) {
    if (std::abs(h[k]) > std::abs(h[k - 1]) && std::abs(h[k]) >= std::abs(h[k + 1])) peaks.push_back(g[k]);
  }
  REQUIRE(peaks.size() >= 4);
  for (std::size_t i = 1; i < peaks.size(); ++i) CHECK_THAT(peaks[i] - peaks[i - 1], WithinAbs(50e6, 0.2e6));
}

TEST_CASE("default synthetic channel") {
  const auto g = FrequencyGrid::parse("850e6:950e6:101");
  const auto h = synth_si_channel(SynthChannelSpec{}, g);
  double mean = 0.0;
  for (double v : amplitude_db(h)) mean += v / static_cast<double>(g.size());
  CHECK(std::abs(mean + 20.0) <= 3.0);
  // Interior group-delay range, frozen from an independent numpy evaluation.
  const auto gd = group_delay(h);
  const auto [lo, hi] = std::minmax_element(gd.begin() + 1, gd.end() - 1);
  CHECK_THAT(*lo, WithinRel(-1.3370927611621778e-08, 1e-6));
  CHECK_THAT(*hi, WithinRel(1.7568902818073763e-08, 1e-6));

  SynthChannelSpec r;
  r.randomize_phase = true;
  r.seed = 4;
  const auto a = synth_si_channel(r, g);
  const auto b = synth_si_channel(r, g);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(a[k] == b[k]);
  r.seed = 5;
  const auto c = synth_si_channel(r, g);
  CHECK(c[0] != a[0]);
}

TEST_CASE("synthetic channel validation") {
  SynthChannelSpec s;
  s.isolation_db = 0.0;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s = {};
  s.base_delay_s = -1e-9;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s = {};
  s.reflections = {{0.0, 1e-9}};
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
}

TEST_CASE("atomic writes leave no temporary behind") {
  const auto path = temp_path("atomic.txt");
  write_file_atomically(path, "abc\n");
  CHECK(read_file(path) == "abc\n");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove(path);
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}
