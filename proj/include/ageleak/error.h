// Copyright 2026 the ageleak authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AGELEAK_ERROR_H_
#define AGELEAK_ERROR_H_

#include <stdexcept>
#include <string>
#include <utility>

namespace ageleak {

// Error taxonomy shared by every module. The CLI maps kUnstable to exit
// status 3 and everything else to 2; library code throws, never exits.
enum class ErrorCode {
  kOutOfRange,
  kMissingField,
  kExtraneousField,
  kLengthMismatch,
  kTooLarge,
  kUnsupportedPolicy,
  kUnstable,
  kEmptyInput,
  kIo,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string field, const std::string& message)
      : std::runtime_error(message), code_(code), field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  // Name of the offending parameter or field; empty when not applicable.
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

[[noreturn]] void throw_error(ErrorCode code, const std::string& field,
                              const std::string& message);

}  // namespace ageleak

#endif  // AGELEAK_ERROR_H_
