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

#ifndef COCHLEAR_ERROR_HPP_
#define COCHLEAR_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cochlear {

enum class ErrorCode {
  kInvalidArgument,
  // resonator_core
  kSingularPotentialMatrix,
  kDimensionMismatch,
  kAsymmetryTooLarge,
  kComplexEigenvalues,
  kNegativeEigenvalue,
  kSingularEigenbasis,
  kPoleOnRealAxis,
  kInfeasibleDesign,
  // gammatone_bank
  kNyquistViolation,
  kSampleRateMismatch,
  kEmptyWindow,
  kInvalidPathIndex,
  kUnstableKernel,
  kKernelTooLong,
  kLengthMismatch,
  // natural_stats
  kSignalTooShort,
  kGridMismatch,
  kInsufficientBins,
  kNonpositivePower,
  kAllSilent,
  kZeroVariance,
  kWindowTooLong,
  kFitDiverged,
  kInsufficientSamples,
  // signal_io
  kUnsupportedFormat,
  kCorruptHeader,
  kIoFailure,
  kSchemaViolation,
  kConflictingGeometry,
};

// Coarse classes used for the CLI exit-code contract.
enum class ErrorCategory { kUsage = 1, kData = 2, kNumerical = 3 };

std::string_view to_string(ErrorCode code);
ErrorCategory category(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace cochlear

#endif  // COCHLEAR_ERROR_HPP_
