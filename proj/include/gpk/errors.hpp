// Copyright 2026 The GPK Toolkit Authors
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
/**
 * @file
 * Exception types shared by every module of the toolkit.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace gpk {

/// A precondition of an operation was not met (width mismatch, bad parameters).
class ContractError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// The request is well-formed but exceeds the desk-scale enumeration limits.
class ResourceError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// The oracle was observed to break the promise an algorithm relies on.
class PromiseViolation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed oracle or basis file.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool condition, const std::string &message) {
    if (!condition) {
        throw ContractError(message);
    }
}
} // namespace detail

} // namespace gpk
