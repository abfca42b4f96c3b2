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
 * Command-line front end: gen, gpk, fbi, simon, verify and bench. Every
 * command writes one report (JSON or flat text) whose bytes depend only on
 * the arguments, the input files and the seed.
 */
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpk/gf2.hpp"

namespace gpk::cli {

enum ExitCode : int {
    kOk = 0,
    kPromiseFailure = 2,
    kResourceLimit = 3,
    kInputError = 4,
};

/// Unreadable or unwritable files and malformed sidecars.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string &path);

/// `key.sub[0].leaf: value` lines, one per scalar, in document order.
std::string render_text(const Json &report);

/// Hidden-subgroup sidecar: "n k" then k rows, most significant bit first.
std::string format_hidden(const SubspaceBasis &basis);
SubspaceBasis read_hidden(const std::string &path);

} // namespace gpk::cli
