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

#include "tqsim/circuit.hpp"

#include <cmath>
#include <numbers>

#include "tqsim/error.hpp"

namespace tqsim {

namespace {

struct TagInfo {
    std::string_view name;
    int params;
    int qubits;
};

constexpr TagInfo info(GateTag tag) {
    switch (tag) {
        case GateTag::X:
            return {"x", 0, 1};
        case GateTag::Y:
            return {"y", 0, 1};
        case GateTag::Z:
            return {"z", 0, 1};
        case GateTag::H:
            return {"h", 0, 1};
        case GateTag::S:
            return {"s", 0, 1};
        case GateTag::SDG:
            return {"sdg", 0, 1};
        case GateTag::T:
            return {"t", 0, 1};
        case GateTag::TDG:
            return {"tdg", 0, 1};
        case GateTag::RX:
            return {"rx", 1, 1};
        case GateTag::RY:
            return {"ry", 1, 1};
        case GateTag::RZ:
            return {"rz", 1, 1};
        case GateTag::U:
            return {"u", 3, 1};
        case GateTag::CX:
            return {"cx", 0, 2};
        case GateTag::CZ:
            return {"cz", 0, 2};
        case GateTag::SWAP:
            return {"swap", 0, 2};
        case GateTag::CP:
            return {"cp", 1, 2};
    }
    return {"?", 0, 0};
}

}  // namespace

int param_count(GateTag tag) {
    return info(tag).params;
}

int qubit_count(GateTag tag) {
    return info(tag).qubits;
}

std::string_view gate_name(GateTag tag) {
    return info(tag).name;
}

std::optional<GateTag> gate_tag_from_name(std::string_view name) {
    for (GateTag tag : kAllGateTags) {
        if (info(tag).name == name) {
            return tag;
        }
    }
    return std::nullopt;
}

GateKind::GateKind(GateTag tag, std::vector<double> params) : tag_(tag), params_(std::move(params)) {
    if (static_cast<int>(params_.size()) != param_count(tag)) {
        throw InvalidArgument(
            "gate '" + std::string(gate_name(tag)) + "' takes " + std::to_string(param_count(tag)) +
            " parameter(s), got " + std::to_string(params_.size()));
    }
    for (double p : params_) {
        if (!std::isfinite(p)) {
            throw InvalidArgument("gate '" + std::string(gate_name(tag)) + "' has a non-finite angle");
        }
    }
}

Gate::Gate(GateKind k, std::vector<std::uint32_t> q) : kind(std::move(k)), qubits(std::move(q)) {
    if (static_cast<int>(qubits.size()) != qubit_count(kind.tag())) {
        throw InvalidArgument(
            "gate '" + std::string(gate_name(kind.tag())) + "' acts on " + std::to_string(qubit_count(kind.tag())) +
            " qubit(s), got " + std::to_string(qubits.size()));
    }
    if (qubits.size() == 2 && qubits[0] == qubits[1]) {
        throw InvalidArgument("gate '" + std::string(gate_name(kind.tag())) + "' repeats qubit " +
                              std::to_string(qubits[0]));
    }
}

template <typename Real>
GateMatrix<Real> gate_matrix(const GateKind &kind) {
    using C = std::complex<Real>;
    const C i(0, 1);
    const Real r2 = Real(1) / std::sqrt(Real(2));
    auto p = kind.params();
    GateMatrix<Real> m;
    switch (kind.tag()) {
        case GateTag::X:
            m.resize(2, 2);
            m << 0, 1, 1, 0;
            break;
        case GateTag::Y:
            m.resize(2, 2);
            m << 0, -i, i, 0;
            break;
        case GateTag::Z:
            m.resize(2, 2);
            m << 1, 0, 0, -1;
            break;
        case GateTag::H:
            m.resize(2, 2);
            m << r2, r2, r2, -r2;
            break;
        case GateTag::S:
            m.resize(2, 2);
            m << 1, 0, 0, i;
            break;
        case GateTag::SDG:
            m.resize(2, 2);
            m << 1, 0, 0, -i;
            break;
        case GateTag::T:
            m.resize(2, 2);
            m << 1, 0, 0, std::polar(Real(1), std::numbers::pi_v<Real> / 4);
            break;
        case GateTag::TDG:
            m.resize(2, 2);
            m << 1, 0, 0, std::polar(Real(1), -std::numbers::pi_v<Real> / 4);
            break;
        case GateTag::RX: {
            Real c = std::cos(Real(p[0]) / 2), s = std::sin(Real(p[0]) / 2);
            m.resize(2, 2);
            m << c, -i * s, -i * s, c;
            break;
        }
        case GateTag::RY: {
            Real c = std::cos(Real(p[0]) / 2), s = std::sin(Real(p[0]) / 2);
            m.resize(2, 2);
            m << c, -s, s, c;
            break;
        }
        case GateTag::RZ:
            m.resize(2, 2);
            m << std::polar(Real(1), Real(-p[0] / 2)), 0, 0, std::polar(Real(1), Real(p[0] / 2));
            break;
        case GateTag::U: {
            Real c = std::cos(Real(p[0]) / 2), s = std::sin(Real(p[0]) / 2);
            Real phi = Real(p[1]), lam = Real(p[2]);
            m.resize(2, 2);
            m << c, -std::polar(s, lam), std::polar(s, phi), std::polar(c, phi + lam);
            break;
        }
        case GateTag::CX:
            m.setZero(4, 4);
            m(0, 0) = m(2, 2) = 1;
            m(1, 3) = m(3, 1) = 1;
            break;
        case GateTag::CZ:
            m.setZero(4, 4);
            m.diagonal() << 1, 1, 1, -1;
            break;
        case GateTag::SWAP:
            m.setZero(4, 4);
            m(0, 0) = m(3, 3) = 1;
            m(1, 2) = m(2, 1) = 1;
            break;
        case GateTag::CP:
            m.setZero(4, 4);
            m.diagonal() << 1, 1, 1, std::polar(Real(1), Real(p[0]));
            break;
    }
    return m;
}

template GateMatrix<double> gate_matrix<double>(const GateKind &);
template GateMatrix<float> gate_matrix<float>(const GateKind &);

Circuit::Circuit(std::uint32_t n_qubits, std::vector<Gate> gates, bool measured)
    : n_qubits_(n_qubits), measured_(measured) {
    if (n_qubits == 0) {
        throw InvalidArgument("circuit must have at least one qubit");
    }
    gates_.reserve(gates.size());
    for (auto &g : gates) {
        append(std::move(g));
    }
}

void Circuit::check(const Gate &gate) const {
    for (auto q : gate.qubits) {
        if (q >= n_qubits_) {
            throw InvalidArgument("qubit index " + std::to_string(q) + " out of range for " +
                                  std::to_string(n_qubits_) + "-qubit circuit");
        }
    }
}

Circuit &Circuit::append(Gate gate) {
    check(gate);
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::append(GateTag tag, std::vector<std::uint32_t> qubits, std::vector<double> params) {
    return append(Gate(GateKind(tag, std::move(params)), std::move(qubits)));
}

void validate_partition(const Partition &p, std::size_t gate_count) {
    std::size_t prev = 0;
    for (std::size_t b : p.boundaries) {
        if (b <= prev || b >= gate_count) {
            throw InvalidArgument("invalid partition boundary " + std::to_string(b) + " for " +
                                  std::to_string(gate_count) + " gates");
        }
        prev = b;
    }
}

std::vector<Circuit> slice(const Circuit &c, const Partition &p) {
    validate_partition(p, c.size());
    std::vector<Circuit> out;
    out.reserve(p.slice_count());
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= p.boundaries.size(); ++i) {
        std::size_t end = i < p.boundaries.size() ? p.boundaries[i] : c.size();
        std::vector<Gate> gates(c.gates().begin() + static_cast<std::ptrdiff_t>(begin),
                                c.gates().begin() + static_cast<std::ptrdiff_t>(end));
        bool last = i == p.boundaries.size();
        out.emplace_back(c.n_qubits(), std::move(gates), last && c.measured());
        begin = end;
    }
    return out;
}

Circuit concatenate(std::span<const Circuit> parts) {
    if (parts.empty()) {
        throw InvalidArgument("nothing to concatenate");
    }
    Circuit out(parts.front().n_qubits());
    for (const auto &part : parts) {
        if (part.n_qubits() != out.n_qubits()) {
            throw InvalidArgument("cannot concatenate circuits of different widths");
        }
        for (const auto &g : part.gates()) {
            out.append(g);
        }
    }
    out.set_measured(parts.back().measured());
    return out;
}

}  // namespace tqsim
