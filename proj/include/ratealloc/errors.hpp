// Copyright 2026 The ratealloc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RATEALLOC_ERRORS_HPP_
#define RATEALLOC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ratealloc {

// Invalid arguments are reported with std::domain_error. CapacityError is
// raised when a request would blow up combinatorially (cell counts, product
// message spaces, allocation enumerations).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ratealloc

#endif  // RATEALLOC_ERRORS_HPP_
