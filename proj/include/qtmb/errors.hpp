// Copyright 2026 The qtmb Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qtmb {

// Base for every error raised by the library. The CLI maps these to exit
// code 2 (usage) unless stated otherwise.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QTMB_DEFINE_ERROR(Name)             \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

QTMB_DEFINE_ERROR(DimensionError);
QTMB_DEFINE_ERROR(NotUnitaryError);
QTMB_DEFINE_ERROR(SizeError);
QTMB_DEFINE_ERROR(ArityError);
QTMB_DEFINE_ERROR(RangeError);
QTMB_DEFINE_ERROR(StuckError);
QTMB_DEFINE_ERROR(TimeoutError);
QTMB_DEFINE_ERROR(MeasureError);
QTMB_DEFINE_ERROR(StructureError);
QTMB_DEFINE_ERROR(ParseError);

#undef QTMB_DEFINE_ERROR

}  // namespace qtmb
