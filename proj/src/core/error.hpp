// Copyright 2026 The STA Authors
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

#ifndef STA_CORE_ERROR_HPP_
#define STA_CORE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace sta {

// Failure categories. The C API maps these one-to-one onto sta_status.
enum class ErrorCode {
  kInvalidArgument = 1,
  kDimensionMismatch,
  kNonFinite,
  kNotPositiveSemidefinite,
  kParse,
  kSchema,
  kIo,
  kOutOfRange,
  kEvaluation,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sta

#endif  // STA_CORE_ERROR_HPP_
