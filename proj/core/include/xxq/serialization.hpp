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

#ifndef XXQ_SERIALIZATION_HPP
#define XXQ_SERIALIZATION_HPP

#include "xxq/chain_model.hpp"
#include "xxq/free_fermion.hpp"
#include "xxq/optimizer.hpp"

#include <Eigen/Dense>

#include <string>
#include <string_view>

namespace xxq {

// JSON text for reproducible pipelines. Matrices are row-major nested arrays;
// complex matrices are {"re": [...], "im": [...]}. Doubles are written with
// round-trip precision.

std::string to_json(const CouplingProfile& profile);
/// Throws std::invalid_argument on malformed input or a profile that fails
/// validation.
CouplingProfile profile_from_json(std::string_view text);

std::string to_json(const Eigen::MatrixXd& matrix);
std::string to_json(const Eigen::MatrixXcd& matrix);
Eigen::MatrixXd real_matrix_from_json(std::string_view text);
Eigen::MatrixXcd complex_matrix_from_json(std::string_view text);

std::string to_json(const HoppingMatrix& hopping);
std::string to_json(const CorrelationMatrix& correlations);
std::string to_json(const OptimizationResult& result);
std::string to_json(const EnsembleSummary& summary);

}  // namespace xxq

#endif  // XXQ_SERIALIZATION_HPP
