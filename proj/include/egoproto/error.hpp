/*
 * Copyright (c) 2026, The egoproto Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace egoproto {

enum class ErrorCode {
  InvalidArgument,
  NegativeOrZeroWeight,
  SelfLoop,
  UnknownNode,
  EmptyGraph,
  KTooLarge,
  TooFewPoints,
  SingleCluster,
  EmptyCluster,
  GenerationFailed,
  ParseError,
  EmptyInput,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Library error. `is_validation()` separates bad input (CLI exit code 1)
/// from failures while running (exit code 2).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  bool is_validation() const noexcept {
    switch (code_) {
      case ErrorCode::InvalidArgument:
      case ErrorCode::NegativeOrZeroWeight:
      case ErrorCode::SelfLoop:
      case ErrorCode::UnknownNode:
      case ErrorCode::ParseError:
      case ErrorCode::EmptyInput:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NegativeOrZeroWeight: return "NegativeOrZeroWeight";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::SingleCluster: return "SingleCluster";
    case ErrorCode::EmptyCluster: return "EmptyCluster";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace egoproto
