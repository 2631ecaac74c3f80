// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include "uqcal/dataset_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "uqcal/errors.hpp"

namespace uqcal {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& text, std::size_t row) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw NonFiniteValue("row " + std::to_string(row) + ": cannot parse '" + text + "'");
  if (!std::isfinite(value))
    throw NonFiniteValue("row " + std::to_string(row) + ": non-finite value '" + text + "'");
  return value;
}

}  // namespace

DatasetRead read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw EmptyFile("'" + path + "' is empty");
  // Strip a UTF-8 BOM and trailing CR.
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split_csv(line);
  int e_col = -1, u_col = -1;
  std::vector<std::string> feature_names;
  std::vector<int> feature_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string name = lower(header[c]);
    if (name == "e" && e_col < 0) {
      e_col = static_cast<int>(c);
    } else if (name == "ue" && u_col < 0) {
      u_col = static_cast<int>(c);
    } else {
      feature_names.push_back(header[c]);
      feature_cols.push_back(static_cast<int>(c));
    }
  }
  if (e_col < 0) throw MissingColumn("'" + path + "': no column named 'E'");
  if (u_col < 0) throw MissingColumn("'" + path + "': no column named 'uE'");

  std::vector<double> errors, uncertainties;
  std::vector<std::vector<double>> features(feature_cols.size());
  std::size_t row = 0, blank = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      ++blank;
      continue;
    }
    ++row;
    const auto fields = split_csv(line);
    if (fields.size() != header.size())
      throw Error("'" + path + "' row " + std::to_string(row) + ": expected " +
                  std::to_string(header.size()) + " fields, got " +
                  std::to_string(fields.size()));
    const double e = parse_double(fields[e_col], row);
    const double u = parse_double(fields[u_col], row);
    if (!(u > 0.0))
      throw NonPositiveUncertainty("'" + path + "' row " + std::to_string(row) +
                                   ": uE must be strictly positive, got " + fields[u_col]);
    errors.push_back(e);
    uncertainties.push_back(u);
    for (std::size_t f = 0; f < feature_cols.size(); ++f)
      features[f].push_back(parse_double(fields[feature_cols[f]], row));
  }
  if (row == 0) throw EmptyFile("'" + path + "' has a header but no data rows");

  DatasetRead out{PairedSample(std::move(errors), std::move(uncertainties),
                               std::move(feature_names), std::move(features)),
                  row, blank, path};
  return out;
}

void write_dataset(const PairedSample& sample, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << "E,uE";
  for (const auto& name : sample.feature_names()) out << ',' << name;
  out << '\n';
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
  };
  for (std::size_t i = 0; i < sample.size(); ++i) {
    put(sample.errors()[i]);
    out << ',';
    put(sample.uncertainties()[i]);
    for (std::size_t c = 0; c < sample.feature_count(); ++c) {
      out << ',';
      put(sample.feature(c)[i]);
    }
    out << '\n';
  }
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace uqcal
