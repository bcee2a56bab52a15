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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "tqsim/circuit.hpp"
#include "tqsim/random.hpp"
#include "tqsim/statevector.hpp"

namespace tqsim {

/// Pauli channel: X, Y, Z each with probability p/3. Two-qubit gates use `p_2q` when set.
struct Depolarizing {
    double p = 0;
    std::optional<double> p_2q;
};

/// Relaxation over one gate duration; times are microseconds (T1, T2) and nanoseconds (gates).
/// `gate_time_ns` must hold "default" and may override per gate mnemonic ("cx", "h", ...).
struct ThermalRelaxation {
    double t1_us = 0;
    double t2_us = 0;
    std::map<std::string, double> gate_time_ns;

    double gate_time_for(GateTag tag) const;
};

struct AmplitudeDamping {
    double gamma = 0;
};

struct PhaseDamping {
    double lambda = 0;
};

/// Classical flip of a measured bit: 0 -> 1 with p01, 1 -> 0 with p10.
struct Readout {
    double p01 = 0;
    double p10 = 0;
};

using NoiseChannel = std::variant<Depolarizing, ThermalRelaxation, AmplitudeDamping, PhaseDamping, Readout>;

/// Throws NoiseModelError unless the channel's parameters are physical.
void validate(const NoiseChannel &channel);

/// Single-qubit Kraus operators with precomputed K^dagger K products.
///
/// Operators that are entirely zero are dropped. When every K^dagger K is a multiple of the
/// identity the branch probabilities do not depend on the state (`state_independent()`), which
/// lets trajectories sample a branch without touching the amplitudes.
class KrausSet {
   public:
    explicit KrausSet(std::vector<Eigen::Matrix2cd> operators);

    const std::vector<Eigen::Matrix2cd> &operators() const {
        return ops_;
    }
    std::size_t size() const {
        return ops_.size();
    }
    const Eigen::Matrix2cd &effect(std::size_t i) const {
        return effects_[i];
    }
    bool state_independent() const {
        return state_independent_;
    }
    /// Branch weights when state_independent().
    const std::vector<double> &weights() const {
        return weights_;
    }
    /// True when operator i is a positive multiple of the identity.
    bool is_identity(std::size_t i) const {
        return identity_[i];
    }
    /// max |sum K^dagger K - I|.
    double completeness_error() const;

   private:
    std::vector<Eigen::Matrix2cd> ops_;
    std::vector<Eigen::Matrix2cd> effects_;
    std::vector<double> weights_;
    std::vector<bool> identity_;
    bool state_independent_ = true;
};

/// Kraus set of an after-gate channel. `tag` selects the two-qubit depolarizing rate and the
/// thermal gate time; without it the one-qubit rate and the default gate time are used.
/// Throws InvalidArgument for Readout.
KrausSet kraus_for(const NoiseChannel &channel, std::optional<GateTag> tag = std::nullopt);

/// After-gate channels plus at most one readout channel.
///
/// Every after-gate channel acts on each qubit a gate touches, right after the gate, in the fixed
/// order depolarizing, thermal, amplitude damping, phase damping.
class NoiseModel {
   public:
    NoiseModel() : NoiseModel(std::vector<NoiseChannel>{}) {
    }
    explicit NoiseModel(std::vector<NoiseChannel> channels);

    const std::vector<NoiseChannel> &channels() const {
        return channels_;
    }
    const std::optional<Readout> &readout() const {
        return readout_;
    }
    bool noiseless() const;

    /// Kraus sets applied, in order, to each qubit touched by a gate with this tag.
    const std::vector<KrausSet> &location_channels(GateTag tag) const {
        return per_tag_[static_cast<std::size_t>(tag)];
    }

    /// Probability that a noise operator is inserted at one location after a gate with this tag.
    /// Combines channels as 1 - prod(1 - e_c), with e_c = p for depolarizing, gamma, lambda, and
    /// 1 - (1 - gamma)(1 - lambda) for thermal relaxation.
    double location_error_rate(GateTag tag) const;

   private:
    std::vector<NoiseChannel> channels_;
    std::optional<Readout> readout_;
    std::array<std::vector<KrausSet>, kAllGateTags.size()> per_tag_;
    std::array<double, kAllGateTags.size()> error_rate_{};
};

/// Parses and validates the noise-model JSON. Throws NoiseModelError naming the offending field.
NoiseModel load_noise_model(std::string_view json_text);

/// JSON form accepted by load_noise_model.
std::string noise_model_to_json(const NoiseModel &model);

/// Samples Kraus branch i with probability ||K_i psi||^2, applies K_i to `qubit` and renormalizes.
/// Returns the branch index.
std::size_t trajectory_noise_step(Statevector &s, std::uint32_t qubit, const KrausSet &kraus, RandomStream &rng);
std::size_t trajectory_noise_step(Statevector &s, std::uint32_t qubit, const NoiseChannel &channel, RandomStream &rng);

/// Applies a gate and then every after-gate channel of `model` on each qubit it touches.
void apply_noisy_gate(Statevector &s, const Gate &g, const NoiseModel &model, RandomStream &rng);

/// Flips each bit independently: p10 for a 1, p01 for a 0.
std::uint64_t apply_readout_error(std::uint64_t bits, std::uint32_t n_qubits, const Readout &channel, RandomStream &rng);
std::string apply_readout_error(const std::string &bits, const Readout &channel, RandomStream &rng);

/// Parameters for the named noise models DC, DCR, TR, TRR, AD, ADR, PD, PDR and ALL.
struct NoiseRates {
    double depolarizing = 0.001;
    double t1_us = 20.0;
    double t2_us = 30.0;
    double gate_time_1q_ns = 25.0;
    double gate_time_2q_ns = 100.0;
    double amplitude_damping = 0.01;
    double phase_damping = 0.01;
    double readout_p01 = 0.02;
    double readout_p10 = 0.05;
};

inline constexpr std::array<std::string_view, 9> kNamedNoiseModels = {"DC", "DCR", "TR", "TRR", "AD",
                                                                      "ADR", "PD", "PDR", "ALL"};

/// Builds one of kNamedNoiseModels; a trailing R adds readout error, ALL combines every channel.
NoiseModel named_noise_model(std::string_view name, const NoiseRates &rates = {});

}  // namespace tqsim
