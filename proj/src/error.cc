// Copyright 2026 The cochlear-bank Authors.
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

#include "cochlear/error.hpp"

namespace cochlear {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSingularPotentialMatrix: return "SingularPotentialMatrix";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kAsymmetryTooLarge: return "AsymmetryTooLarge";
    case ErrorCode::kComplexEigenvalues: return "ComplexEigenvalues";
    case ErrorCode::kNegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::kSingularEigenbasis: return "SingularEigenbasis";
    case ErrorCode::kPoleOnRealAxis: return "PoleOnRealAxis";
    case ErrorCode::kInfeasibleDesign: return "InfeasibleDesign";
    case ErrorCode::kNyquistViolation: return "NyquistViolation";
    case ErrorCode::kSampleRateMismatch: return "SampleRateMismatch";
    case ErrorCode::kEmptyWindow: return "EmptyWindow";
    case ErrorCode::kInvalidPathIndex: return "InvalidPathIndex";
    case ErrorCode::kUnstableKernel: return "UnstableKernel";
    case ErrorCode::kKernelTooLong: return "KernelTooLong";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kSignalTooShort: return "SignalTooShort";
    case ErrorCode::kGridMismatch: return "GridMismatch";
    case ErrorCode::kInsufficientBins: return "InsufficientBins";
    case ErrorCode::kNonpositivePower: return "NonpositivePower";
    case ErrorCode::kAllSilent: return "AllSilent";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kWindowTooLong: return "WindowTooLong";
    case ErrorCode::kFitDiverged: return "FitDiverged";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kCorruptHeader: return "CorruptHeader";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kConflictingGeometry: return "ConflictingGeometry";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kNyquistViolation:
    case ErrorCode::kInvalidPathIndex:
    case ErrorCode::kSchemaViolation:
    case ErrorCode::kConflictingGeometry:
      return ErrorCategory::kUsage;
    case ErrorCode::kSingularPotentialMatrix:
    case ErrorCode::kComplexEigenvalues:
    case ErrorCode::kNegativeEigenvalue:
    case ErrorCode::kSingularEigenbasis:
    case ErrorCode::kPoleOnRealAxis:
    case ErrorCode::kInfeasibleDesign:
    case ErrorCode::kUnstableKernel:
    case ErrorCode::kKernelTooLong:
    case ErrorCode::kFitDiverged:
      return ErrorCategory::kNumerical;
    default:
      return ErrorCategory::kData;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace cochlear
