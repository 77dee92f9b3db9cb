// Copyright 2026 LDTL Lab Contributors
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

#pragma once

#include <stdexcept>
#include <string>

namespace ldtl {

/// Base class for every error raised by the library. Validation errors map to
/// CLI exit status 1; `IoError` maps to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LDTL_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string &what) : Error(#Name ": " + what) {} \
  }

// world
LDTL_DEFINE_ERROR(InvalidDistribution);
LDTL_DEFINE_ERROR(EmptyWorld);
LDTL_DEFINE_ERROR(DuplicateAction);
LDTL_DEFINE_ERROR(UnavailableAction);
LDTL_DEFINE_ERROR(BadRatios);
// diagnoser
LDTL_DEFINE_ERROR(EmptyTrainingSet);
LDTL_DEFINE_ERROR(UnknownSymbol);
// trajectory
LDTL_DEFINE_ERROR(InfeasibleAction);
LDTL_DEFINE_ERROR(NoFeasibleAction);
LDTL_DEFINE_ERROR(EmptyPrefixSet);
// planner
LDTL_DEFINE_ERROR(SupportMismatch);
LDTL_DEFINE_ERROR(DivergedLoss);
// episode / eval
LDTL_DEFINE_ERROR(InvalidPolicy);
LDTL_DEFINE_ERROR(EmptyRecords);
// persistence / cli
LDTL_DEFINE_ERROR(ParseError);
LDTL_DEFINE_ERROR(SchemaError);
LDTL_DEFINE_ERROR(ShapeMismatch);
LDTL_DEFINE_ERROR(HashMismatch);
LDTL_DEFINE_ERROR(UnknownCommand);
LDTL_DEFINE_ERROR(ConfigConflict);
LDTL_DEFINE_ERROR(ValidationError);

#undef LDTL_DEFINE_ERROR

/// Filesystem failures (unreadable input, unwritable output).
class IoError : public Error {
 public:
  explicit IoError(const std::string &what) : Error("IoError: " + what) {}
};

}  // namespace ldtl
