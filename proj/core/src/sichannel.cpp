// SPDX-License-Identifier: Apache-2.0

#include "fdecanc/sichannel.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "fdecanc/error.hpp"
#include "fdecanc/io.hpp"

namespace fdecanc {

namespace {

constexpr std::string_view kHeader = "freq_hz,re,im";

std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

double parse_field(std::string_view field, std::size_t line_no) {
  std::string s(field);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("malformed number '" + s + "'", line_no);
  }
  if (used != s.size() || !std::isfinite(v)) throw ParseError("malformed number '" + s + "'", line_no);
  return v;
}

ComplexResponse resample(const std::vector<double>& f, const std::vector<Complex>& h, const FrequencyGrid& target) {
  if (target.front() < f.front() || target.back() > f.back()) {
    throw FormatError("resampling grid extends beyond the file's frequency span");
  }
  std::vector<Complex> out(target.size());
  std::size_t j = 0;
  for (std::size_t k = 0; k < target.size(); ++k) {
    const double x = target[k];
    while (j + 2 < f.size() && f[j + 1] < x) ++j;
    const double t = (x - f[j]) / (f[j + 1] - f[j]);
    out[k] = h[j] + t * (h[j + 1] - h[j]);
  }
  return ComplexResponse(target, std::move(out));
}

}  // namespace

void SynthChannelSpec::validate() const {
  if (!(isolation_db < 0.0) || !std::isfinite(isolation_db)) throw InvalidArgument("isolation_db must be negative");
  if (!(base_delay_s >= 0.0) || !std::isfinite(base_delay_s)) throw InvalidArgument("base delay must be >= 0");
  for (const auto& r : reflections) {
    if (!(r.amp_db < 0.0) || !std::isfinite(r.amp_db)) throw InvalidArgument("reflection amplitude must be < 0 dB");
    if (!(r.delay_s >= 0.0) || !std::isfinite(r.delay_s)) throw InvalidArgument("reflection delay must be >= 0");
  }
}

ComplexResponse parse_si_channel(std::string_view text, const GridPolicy& policy) {
  std::vector<double> freqs;
  std::vector<Complex> values;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim_cr(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!seen_header) {
      if (line != kHeader) throw ParseError("expected header '" + std::string(kHeader) + "'", line_no);
      seen_header = true;
      continue;
    }
    if (line.empty()) {
      if (text.empty()) break;
      throw ParseError("empty row", line_no);
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
      throw ParseError("expected 3 comma-separated fields", line_no);
    }
    const double f = parse_field(line.substr(0, c1), line_no);
    const double re = parse_field(line.substr(c1 + 1, c2 - c1 - 1), line_no);
    const double im = parse_field(line.substr(c2 + 1), line_no);
    if (!freqs.empty() && !(f > freqs.back())) {
      throw FormatError("line " + std::to_string(line_no) + ": frequencies must be strictly increasing");
    }
    freqs.push_back(f);
    values.emplace_back(re, im);
  }
  if (!seen_header) throw ParseError("empty file", 1);
  if (freqs.size() < 2) throw FormatError("channel file needs at least 2 rows");
  if (policy.resample_to) return resample(freqs, values, *policy.resample_to);
  try {
    return ComplexResponse(FrequencyGrid(std::move(freqs)), std::move(values));
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("channel grid: ") + e.what());
  }
}

ComplexResponse load_si_channel(const std::string& path, const GridPolicy& policy) {
  return parse_si_channel(read_file(path), policy);
}

std::string format_si_channel(const ComplexResponse& h) {
  std::string out(kHeader);
  out += '\n';
  for (std::size_t k = 0; k < h.size(); ++k) {
    out += format_double(h.grid()[k]);
    out += ',';
    out += format_double(h[k].real());
    out += ',';
    out += format_double(h[k].imag());
    out += '\n';
  }
  return out;
}

void save_si_channel(const std::string& path, const ComplexResponse& h) {
  write_file_atomically(path, format_si_channel(h));
}

ComplexResponse synth_si_channel(const SynthChannelSpec& spec, const FrequencyGrid& grid) {
  spec.validate();
  std::vector<double> echo_phase(spec.reflections.size(), 0.0);
  if (spec.randomize_phase) {
    std::mt19937_64 gen(spec.seed);
    for (auto& p : echo_phase) p = -kPi + 2.0 * kPi * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
  }
  const double iso = db_to_linear(spec.isolation_db);
  std::vector<Complex> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double w = 2.0 * kPi * grid[k];
    Complex multipath(1.0, 0.0);
    for (std::size_t p = 0; p < spec.reflections.size(); ++p) {
      const auto& r = spec.reflections[p];
      multipath += std::polar(db_to_linear(r.amp_db), -(w * r.delay_s + echo_phase[p]));
    }
    out[k] = std::polar(iso, -w * spec.base_delay_s) * multipath;
  }
  return ComplexResponse(grid, std::move(out));
}

}  // namespace fdecanc
