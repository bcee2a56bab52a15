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

#include <string>
#include <string_view>

#include "tqsim/circuit.hpp"
#include "tqsim/error.hpp"

namespace tqsim {

class QasmError : public Error {
   public:
    enum class Kind { Syntax, UnsupportedGate, Unsupported, QubitOutOfRange };

    QasmError(Kind kind, std::size_t line, std::size_t column, const std::string &message);

    Kind kind() const {
        return kind_;
    }
    std::size_t line() const {
        return line_;
    }
    std::size_t column() const {
        return column_;
    }

   private:
    Kind kind_;
    std::size_t line_;
    std::size_t column_;
};

/// Parses the supported OpenQASM 2.0 subset.
///
/// One `qreg`, at most one `creg`, the gates listed in GateTag (plus the aliases
/// u1/u2/u3/p/cu1/CX/U), `barrier` (dropped) and a terminal `measure`. Angles accept
/// decimal literals, `pi` and the arithmetic operators `+ - * /` with parentheses.
Circuit parse_qasm(std::string_view text);

/// Emits a program that `parse_qasm` reads back to an equal circuit.
std::string to_qasm(const Circuit &c);

}  // namespace tqsim
