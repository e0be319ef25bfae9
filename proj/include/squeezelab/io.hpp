#pragma once

// Output formats. Numbers are written in shortest round-trip form so that
// identical inputs give byte-identical files.

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "json.hpp"
#include "squeezelab/errors.hpp"
#include "squeezelab/fock_state.hpp"
#include "squeezelab/metrics.hpp"
#include "squeezelab/oscillator.hpp"

namespace squeezelab::io {

inline constexpr int kSchemaVersion = 1;

/// Shortest round-trip form; integral values below 1e15 print without exponent.
inline std::string format_number(double v) {
  char buf[64];
  if (v == std::trunc(v) && std::abs(v) < 1e15) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), static_cast<long long>(v));
    if (ec == std::errc{}) return std::string(buf, end);
  }
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, end);
}

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : columns_(header.size()) { row_strings(header); }

  void row(const std::vector<double>& values) {
    if (values.size() != columns_) throw std::invalid_argument("CsvWriter: wrong column count");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ',';
      out_ << format_number(values[i]);
    }
    out_ << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::size_t columns_;
  std::ostringstream out_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// Two numeric columns; a non-numeric first line is treated as a header.
inline std::pair<std::vector<double>, std::vector<double>> parse_two_column_csv(const std::string& text) {
  std::vector<double> first, second;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto parse = [&](const std::string& cell, double& v) {
    std::size_t b = cell.find_first_not_of(" \t\r");
    std::size_t e = cell.find_last_not_of(" \t\r");
    if (b == std::string::npos) return false;
    const std::string trimmed = cell.substr(b, e - b + 1);
    try {
      std::size_t used = 0;
      v = std::stod(trimmed, &used);
      return used == trimmed.size();
    } catch (const std::exception&) {
      return false;
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    double a = 0, b = 0;
    const bool ok = comma != std::string::npos && parse(line.substr(0, comma), a) && parse(line.substr(comma + 1), b);
    if (!ok) {
      if (first.empty() && line_no == 1) continue;  // header
      throw ConfigError("csv line " + std::to_string(line_no) + ": expected two numeric columns");
    }
    first.push_back(a);
    second.push_back(b);
  }
  return {std::move(first), std::move(second)};
}

inline nlohmann::ordered_json to_json(const PowerLawFit& fit) {
  return {{"exponent", fit.exponent}, {"prefactor", fit.prefactor}, {"r2", fit.r2}, {"points", fit.points}};
}

inline nlohmann::ordered_json to_json(const PhaseResolution& s) {
  return {{"intensity_Y", s.intensity_y}, {"var_X", s.var_x}, {"S", s.s}};
}

/// Debug dump: nonzero amplitudes as [[occupation...], [re, im]].
inline nlohmann::ordered_json to_json(const FockState& state) {
  nlohmann::ordered_json amps = nlohmann::ordered_json::array();
  const auto values = state.amplitudes();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == complex{}) continue;
    const Occupation occ = state.occupation(i);
    std::vector<int> tuple(occ.n.begin(), occ.n.begin() + occ.modes);
    amps.push_back({tuple, {values[i].real(), values[i].imag()}});
  }
  return {{"schema", kSchemaVersion}, {"mode_dims", state.dims()}, {"amplitudes", amps}};
}

inline FockState fock_state_from_json(const nlohmann::json& j) {
  const auto dims = j.at("mode_dims").get<std::vector<int>>();
  FockState shape = FockState::vacuum(dims);
  std::vector<complex> values(shape.size());
  for (const auto& entry : j.at("amplitudes")) {
    const auto tuple = entry.at(0).get<std::vector<int>>();
    if (tuple.size() != dims.size()) throw ConfigError("fock json: occupation tuple has wrong length");
    Occupation occ;
    occ.modes = static_cast<int>(tuple.size());
    for (std::size_t m = 0; m < tuple.size(); ++m) occ[static_cast<int>(m)] = tuple[m];
    if (!shape.contains(occ)) throw ConfigError("fock json: occupation outside mode_dims");
    values[shape.index(occ)] = complex(entry.at(1).at(0).get<double>(), entry.at(1).at(1).get<double>());
  }
  return FockState(dims, std::move(values));
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace squeezelab::io
