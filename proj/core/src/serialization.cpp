// Copyright 2026 The xxquench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xxq/serialization.hpp"

#include "json.hpp"

#include <stdexcept>
#include <vector>

namespace xxq {

namespace {

using nlohmann::json;

json rows(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

Eigen::MatrixXd parse_rows(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
  const auto r = static_cast<Eigen::Index>(j.size());
  const Eigen::Index c = r == 0 ? 0 : static_cast<Eigen::Index>(j.front().size());
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c)
      throw std::invalid_argument("matrix rows must have equal length");
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
  }
  return m;
}

json complex_rows(const Eigen::MatrixXcd& m) {
  return json{{"re", rows(m.real())}, {"im", rows(m.imag())}};
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string to_json(const CouplingProfile& profile) {
  json j{{"kind", to_string(profile.kind)},
         {"sites", profile.sites},
         {"couplings", profile.couplings}};
  j["boundary"] = profile.boundary ? json(*profile.boundary) : json(nullptr);
  return j.dump();
}

CouplingProfile profile_from_json(std::string_view text) {
  const json j = parse(text);
  try {
    CouplingProfile p;
    p.kind = parse_profile_kind(j.at("kind").get<std::string>());
    p.sites = j.at("sites").get<int>();
    p.couplings = j.at("couplings").get<std::vector<double>>();
    if (j.contains("boundary") && !j["boundary"].is_null())
      p.boundary = j["boundary"].get<double>();
    validate(p);
    return p;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid profile JSON: ") + e.what());
  }
}

std::string to_json(const Eigen::MatrixXd& matrix) { return rows(matrix).dump(); }

std::string to_json(const Eigen::MatrixXcd& matrix) { return complex_rows(matrix).dump(); }

Eigen::MatrixXd real_matrix_from_json(std::string_view text) {
  try {
    return parse_rows(parse(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid matrix JSON: ") + e.what());
  }
}

Eigen::MatrixXcd complex_matrix_from_json(std::string_view text) {
  const json j = parse(text);
  try {
    const Eigen::MatrixXd re = parse_rows(j.at("re"));
    const Eigen::MatrixXd im = parse_rows(j.at("im"));
    if (re.rows() != im.rows() || re.cols() != im.cols())
      throw std::invalid_argument("real and imaginary parts differ in shape");
    Eigen::MatrixXcd m(re.rows(), re.cols());
    m.real() = re;
    m.imag() = im;
    return m;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid matrix JSON: ") + e.what());
  }
}

std::string to_json(const HoppingMatrix& hopping) {
  return json{{"tridiagonal", hopping.tridiagonal}, {"entries", rows(hopping.entries)}}.dump();
}

std::string to_json(const CorrelationMatrix& correlations) {
  return json{{"initial", to_string(correlations.initial)},
              {"time", correlations.time},
              {"values", complex_rows(correlations.values)}}
      .dump();
}

std::string to_json(const OptimizationResult& result) {
  return json{{"sites", result.sites},
              {"boundary", result.boundary},
              {"amplitude", result.amplitude},
              {"arrival_time", result.arrival_time},
              {"fef", result.fef}}
      .dump();
}

std::string to_json(const EnsembleSummary& summary) {
  json samples = json::array();
  for (const PairFefAtPeak& s : summary.samples)
    samples.push_back(json{{"time", s.time}, {"fef", s.fef}});
  return json{{"epsilon", summary.config.epsilon},
              {"two_chain", summary.config.two_chain},
              {"interchain_spacing", summary.config.interchain_spacing},
              {"realizations", summary.realizations},
              {"seed", summary.seed},
              {"mean", summary.mean},
              {"standard_error", summary.standard_error},
              {"mean_peak_time", summary.mean_peak_time},
              {"samples", samples}}
      .dump();
}

}  // namespace xxq
