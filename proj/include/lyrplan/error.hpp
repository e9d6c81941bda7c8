/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace lyrplan {

// Raised for malformed user input: files, configs, values out of contract.
// The CLI maps InputError to exit code 1, anything else to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lyrplan
