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

#include "tqsim/metrics.hpp"

#include <cmath>

namespace tqsim {

namespace {

void require_same_width(const Distribution &p, const Distribution &q) {
    if (p.n_qubits != q.n_qubits) {
        throw InvalidArgument("distribution width mismatch: " + std::to_string(p.n_qubits) + " vs " +
                              std::to_string(q.n_qubits));
    }
}

double bhattacharyya(const Distribution &p, const Distribution &q) {
    double sum = 0;
    const auto &small = p.probs.size() <= q.probs.size() ? p : q;
    const auto &large = &small == &p ? q : p;
    for (const auto &[bits, a] : small.probs) {
        const double b = large[bits];
        if (a > 0 && b > 0) {
            sum += std::sqrt(a * b);
        }
    }
    return sum;
}

}  // namespace

Distribution Distribution::from_counts(const Counts &counts) {
    if (counts.empty()) {
        throw InvalidArgument("cannot build a distribution from empty counts");
    }
    Distribution d;
    d.n_qubits = static_cast<std::uint32_t>(counts.begin()->first.size());
    std::uint64_t total = 0;
    for (const auto &[bits, n] : counts) {
        if (bits.size() != d.n_qubits) {
            throw InvalidArgument("counts mix bitstrings of different widths");
        }
        total += n;
    }
    if (total == 0) {
        throw InvalidArgument("counts hold no samples");
    }
    for (const auto &[bits, n] : counts) {
        if (n > 0) {
            d.probs[bits] = static_cast<double>(n) / static_cast<double>(total);
        }
    }
    return d;
}

Distribution Distribution::from_probabilities(const Eigen::VectorXd &p) {
    Distribution d;
    const auto size = static_cast<std::uint64_t>(p.size());
    if (size < 2 || (size & (size - 1)) != 0) {
        throw InvalidArgument("probability vector length must be a power of two");
    }
    while ((std::uint64_t{1} << d.n_qubits) < size) {
        ++d.n_qubits;
    }
    for (std::uint64_t i = 0; i < size; ++i) {
        if (p[static_cast<Eigen::Index>(i)] > 0) {
            d.probs[to_bitstring(i, d.n_qubits)] = p[static_cast<Eigen::Index>(i)];
        }
    }
    return d;
}

Distribution Distribution::uniform(std::uint32_t n_qubits) {
    if (n_qubits == 0 || n_qubits > 24) {
        throw InvalidArgument("uniform distribution width must be in [1, 24]");
    }
    Distribution d;
    d.n_qubits = n_qubits;
    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    const double p = 1.0 / static_cast<double>(dim);
    for (std::uint64_t i = 0; i < dim; ++i) {
        d.probs.emplace_hint(d.probs.end(), to_bitstring(i, n_qubits), p);
    }
    return d;
}

Distribution Distribution::of_state(const Statevector &s) {
    return from_probabilities(probabilities(s));
}

void Distribution::validate(double tol) const {
    double sum = 0;
    for (const auto &[bits, p] : probs) {
        if (bits.size() != n_qubits) {
            throw InvalidArgument("bitstring '" + bits + "' does not have width " + std::to_string(n_qubits));
        }
        if (!(p >= 0) || !std::isfinite(p)) {
            throw InvalidArgument("probability of '" + bits + "' is negative or not finite");
        }
        sum += p;
    }
    if (std::abs(sum - 1) > tol) {
        throw InvalidArgument("probabilities sum to " + std::to_string(sum));
    }
}

double state_fidelity(const Distribution &ideal, const Distribution &output) {
    require_same_width(ideal, output);
    const double b = bhattacharyya(ideal, output);
    return std::min(1.0, b * b);
}

double normalized_fidelity(const Distribution &ideal, const Distribution &output) {
    require_same_width(ideal, output);
    // F_s(ideal, uniform) = (sum_x sqrt(ideal(x) / 2^n))^2, computed without materializing the uniform map.
    double root_sum = 0;
    for (const auto &[bits, p] : ideal.probs) {
        if (p > 0) {
            root_sum += std::sqrt(p);
        }
    }
    const double f_uni = root_sum * root_sum / std::ldexp(1.0, static_cast<int>(ideal.n_qubits));
    const double denom = 1 - f_uni;
    if (denom < 1e-12) {
        throw InvalidArgument("normalized fidelity is undefined for a uniform ideal distribution");
    }
    return (state_fidelity(ideal, output) - f_uni) / denom;
}

double tvd(const Distribution &p, const Distribution &q) {
    require_same_width(p, q);
    double sum = 0;
    for (const auto &[bits, a] : p.probs) {
        sum += std::abs(a - q[bits]);
    }
    for (const auto &[bits, b] : q.probs) {
        if (!p.probs.contains(bits)) {
            sum += std::abs(b);
        }
    }
    return std::min(1.0, 0.5 * sum);
}

std::vector<double> qubit_error_frequency(const Counts &counts, const std::string &reference) {
    const std::size_t n = reference.size();
    std::vector<std::uint64_t> errors(n, 0);
    std::uint64_t total = 0;
    for (const auto &[bits, c] : counts) {
        if (bits.size() != n) {
            throw InvalidArgument("reference width " + std::to_string(n) + " does not match outcome '" + bits + "'");
        }
        total += c;
        for (std::size_t q = 0; q < n; ++q) {
            if (bits[n - 1 - q] != reference[n - 1 - q]) {
                errors[q] += c;
            }
        }
    }
    std::vector<double> freq(n, 0.0);
    if (total > 0) {
        for (std::size_t q = 0; q < n; ++q) {
            freq[q] = static_cast<double>(errors[q]) / static_cast<double>(total);
        }
    }
    return freq;
}

}  // namespace tqsim
