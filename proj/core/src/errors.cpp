// Copyright 2026 The knowctx Authors
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

#include "knowctx/errors.hpp"

namespace knowctx {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kFinalLayerNotObservable: return "FinalLayerNotObservable";
    case ErrorCode::kNormalizationViolation: return "NormalizationViolation";
    case ErrorCode::kIllegalObservation: return "IllegalObservation";
    case ErrorCode::kOutOfOrderEvent: return "OutOfOrderEvent";
    case ErrorCode::kAlreadyResolved: return "AlreadyResolved";
    case ErrorCode::kKnowabilityMismatch: return "KnowabilityMismatch";
    case ErrorCode::kRuleContractViolation: return "RuleContractViolation";
    case ErrorCode::kUnsupportedRule: return "UnsupportedRule";
    case ErrorCode::kUnsupportedShape: return "UnsupportedShape";
    case ErrorCode::kPaddingInsufficient: return "PaddingInsufficient";
    case ErrorCode::kZeroAmplitudeProjection: return "ZeroAmplitudeProjection";
    case ErrorCode::kUnsupportedLayerCount: return "UnsupportedLayerCount";
    case ErrorCode::kNotSimultaneouslyKnowable: return "NotSimultaneouslyKnowable";
    case ErrorCode::kPathLimitExceeded: return "PathLimitExceeded";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace knowctx
