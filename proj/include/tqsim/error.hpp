// Copyright 2026 The TQSim Authors
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

namespace tqsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed input such as a bad circuit or configuration value.
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

/// A statevector (or density matrix) would exceed the configured memory budget or width cap.
class CapacityError : public Error {
   public:
    using Error::Error;
};

/// Noise-model JSON that does not match the schema or holds unphysical values.
class NoiseModelError : public Error {
   public:
    NoiseModelError(std::string field, const std::string &message)
        : Error(field + ": " + message), field_(std::move(field)) {
    }
    const std::string &field() const {
        return field_;
    }

   private:
    std::string field_;
};

}  // namespace tqsim
