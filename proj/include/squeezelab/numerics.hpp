#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "squeezelab/errors.hpp"

namespace squeezelab {

struct Minimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a minimum of a unimodal f on [lo, hi]; stops
/// when the bracket is below rel_tol * max(|x|, abs_floor).
inline Minimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                       double rel_tol = 1e-6, double abs_floor = 1e-12) {
  if (!(hi > lo)) throw std::invalid_argument("golden_section_minimize: empty bracket");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (a + b);
    if (b - a <= rel_tol * std::max(std::abs(mid), abs_floor)) break;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? Minimum{c, fc} : Minimum{d, fd};
}

inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  out.back() = hi;
  return out;
}

inline std::vector<double> geomspace(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi > 0.0)) throw ConfigError("geomspace: endpoints must be positive");
  auto logs = linspace(std::log(lo), std::log(hi), count);
  std::vector<double> out(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) {
    out[i] = std::exp(logs[i]);
    // 4:64:geometric:5 should give exactly 4, 8, 16, 32, 64.
    const double nearest = std::round(out[i]);
    if (nearest != 0.0 && std::abs(out[i] - nearest) <= 1e-12 * nearest) out[i] = nearest;
  }
  if (!out.empty()) {
    out.front() = lo;
    out.back() = hi;
  }
  return out;
}

/// Parses "lo:hi:linear:count", "lo:hi:geometric:count", a comma list
/// "4,8,16", or a single number.
inline std::vector<double> parse_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("range: cannot parse number '" + s + "' in '" + text + "'");
    }
    if (used != s.size()) throw ConfigError("range: trailing characters in '" + s + "'");
    return v;
  };
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
      const auto pos = s.find(sep, start);
      parts.push_back(s.substr(start, pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    return parts;
  };
  if (text.find(':') != std::string::npos) {
    auto parts = split(text, ':');
    if (parts.size() != 4) throw ConfigError("range: expected lo:hi:linear|geometric:count, got '" + text + "'");
    const double lo = number(parts[0]);
    const double hi = number(parts[1]);
    const double count = number(parts[3]);
    if (count < 1 || count != std::floor(count)) throw ConfigError("range: count must be a positive integer");
    if (parts[2] == "linear") return linspace(lo, hi, static_cast<std::size_t>(count));
    if (parts[2] == "geometric") return geomspace(lo, hi, static_cast<std::size_t>(count));
    throw ConfigError("range: unknown spacing '" + parts[2] + "'");
  }
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(number(p));
  return out;
}

}  // namespace squeezelab
