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

#ifndef XXQ_ERRORS_HPP
#define XXQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xxq {

// Precondition violations throw std::invalid_argument / std::out_of_range.
// Failures of a numerical method on valid input throw NumericalError.

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested system is beyond what the dense engines are allowed to allocate.
class SizeLimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace xxq

#endif  // XXQ_ERRORS_HPP
