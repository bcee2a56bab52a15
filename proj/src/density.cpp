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

#include "tqsim/density.hpp"

#include <string>

namespace tqsim {

double DensityMatrix::hermiticity_error() const {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

Eigen::MatrixXcd embed_operator(const Eigen::MatrixXcd &local, std::span<const std::uint32_t> qubits,
                                std::uint32_t n_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    if (local.rows() != (Eigen::Index{1} << qubits.size()) || local.cols() != local.rows()) {
        throw InvalidArgument("local operator size does not match its qubit count");
    }
    std::uint64_t mask = 0;
    for (auto q : qubits) {
        if (q >= n_qubits) {
            throw InvalidArgument("qubit index out of range");
        }
        mask |= std::uint64_t{1} << q;
    }
    auto local_index = [&](std::uint64_t basis) {
        Eigen::Index idx = 0;
        for (std::size_t k = 0; k < qubits.size(); ++k) {
            idx |= static_cast<Eigen::Index>((basis >> qubits[k]) & 1) << k;
        }
        return idx;
    };
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            if ((static_cast<std::uint64_t>(r) & ~mask) == (static_cast<std::uint64_t>(c) & ~mask)) {
                full(r, c) = local(local_index(static_cast<std::uint64_t>(r)), local_index(static_cast<std::uint64_t>(c)));
            }
        }
    }
    return full;
}

namespace {

void check_cap(const Circuit &c, std::uint32_t cap) {
    if (c.n_qubits() > cap) {
        throw CapacityError("density-matrix oracle is limited to " + std::to_string(cap) + " qubits, circuit has " +
                            std::to_string(c.n_qubits()));
    }
}

}  // namespace

Eigen::MatrixXcd circuit_unitary(const Circuit &c, std::uint32_t cap) {
    check_cap(c, cap);
    const Eigen::Index dim = Eigen::Index{1} << c.n_qubits();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto &g : c.gates()) {
        Eigen::MatrixXcd local = gate_matrix<double>(g.kind);
        u = embed_operator(local, g.qubits, c.n_qubits()) * u;
    }
    return u;
}

DensityMatrix evolve_density(const Circuit &c, const NoiseModel &m, std::uint32_t cap) {
    check_cap(c, cap);
    const Eigen::Index dim = Eigen::Index{1} << c.n_qubits();
    DensityMatrix out{c.n_qubits(), Eigen::MatrixXcd::Zero(dim, dim)};
    out.rho(0, 0) = 1;
    for (const auto &g : c.gates()) {
        Eigen::MatrixXcd local = gate_matrix<double>(g.kind);
        const Eigen::MatrixXcd u = embed_operator(local, g.qubits, c.n_qubits());
        out.rho = (u * out.rho * u.adjoint()).eval();
        for (auto q : g.qubits) {
            const std::uint32_t target[1] = {q};
            for (const auto &kraus : m.location_channels(g.kind.tag())) {
                Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(dim, dim);
                for (const auto &k : kraus.operators()) {
                    const Eigen::MatrixXcd full = embed_operator(k, target, c.n_qubits());
                    next.noalias() += full * out.rho * full.adjoint();
                }
                out.rho = std::move(next);
            }
        }
    }
    return out;
}

Distribution output_distribution(const DensityMatrix &rho, const std::optional<Readout> &readout) {
    Eigen::VectorXd p = rho.rho.diagonal().real().cwiseMax(0.0);
    if (readout) {
        // Column-stochastic flip matrix per bit: [[1-p01, p10], [p01, 1-p10]].
        for (std::uint32_t q = 0; q < rho.n_qubits; ++q) {
            const Eigen::Index stride = Eigen::Index{1} << q;
            for (Eigen::Index i = 0; i < p.size(); ++i) {
                if (i & stride) {
                    continue;
                }
                const double p0 = p[i], p1 = p[i + stride];
                p[i] = (1 - readout->p01) * p0 + readout->p10 * p1;
                p[i + stride] = readout->p01 * p0 + (1 - readout->p10) * p1;
            }
        }
    }
    return Distribution::from_probabilities(p);
}

}  // namespace tqsim
