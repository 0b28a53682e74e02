// Copyright 2026 The fplab Authors
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

#ifndef FPLAB_ERRORS_H_
#define FPLAB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace fplab {

// Root of every error raised by the library. Each subclass corresponds to one
// failure category so callers (and the CLI exit-code mapping) can dispatch on
// type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FPLAB_DEFINE_ERROR(Name)          \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

FPLAB_DEFINE_ERROR(DimensionError);
FPLAB_DEFINE_ERROR(DomainError);
FPLAB_DEFINE_ERROR(ParseError);
FPLAB_DEFINE_ERROR(EmptyHistoryError);
FPLAB_DEFINE_ERROR(DesyncError);
FPLAB_DEFINE_ERROR(ConstructionError);
FPLAB_DEFINE_ERROR(StructureError);
FPLAB_DEFINE_ERROR(UnsupportedError);
FPLAB_DEFINE_ERROR(TieStateError);
FPLAB_DEFINE_ERROR(DivergenceNotice);
FPLAB_DEFINE_ERROR(PersistentTieError);
FPLAB_DEFINE_ERROR(PreconditionError);
FPLAB_DEFINE_ERROR(MissingDataError);
FPLAB_DEFINE_ERROR(IoError);

#undef FPLAB_DEFINE_ERROR

// Raised when a first-hit search exceeds its round cap, or can provably never
// reach its target.
class NotReached : public Error {
 public:
  explicit NotReached(const std::string& what) : Error(what) {}
};

}  // namespace fplab

#endif  // FPLAB_ERRORS_H_
