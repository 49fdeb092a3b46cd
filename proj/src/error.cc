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

#include "ageleak/error.h"

namespace ageleak {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOutOfRange:
      return "OutOfRange";
    case ErrorCode::kMissingField:
      return "MissingField";
    case ErrorCode::kExtraneousField:
      return "ExtraneousField";
    case ErrorCode::kLengthMismatch:
      return "LengthMismatch";
    case ErrorCode::kTooLarge:
      return "TooLarge";
    case ErrorCode::kUnsupportedPolicy:
      return "UnsupportedPolicy";
    case ErrorCode::kUnstable:
      return "Unstable";
    case ErrorCode::kEmptyInput:
      return "EmptyInput";
    case ErrorCode::kIo:
      return "Io";
  }
  return "Unknown";
}

void throw_error(ErrorCode code, const std::string& field,
                 const std::string& message) {
  std::string text = std::string(to_string(code));
  if (!field.empty()) {
    text += "(" + field + ")";
  }
  text += ": " + message;
  throw Error(code, field, text);
}

}  // namespace ageleak
