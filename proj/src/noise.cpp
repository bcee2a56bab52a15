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

#include "tqsim/noise.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace tqsim {

namespace {

constexpr double kKrausTol = 1e-12;

void check_probability(const std::string &field, double v) {
    if (!std::isfinite(v) || v < 0 || v > 1) {
        throw NoiseModelError(field, "probability " + std::to_string(v) + " outside [0, 1]");
    }
}

double thermal_gamma(const ThermalRelaxation &t, double gate_ns) {
    return 1 - std::exp(-(gate_ns * 1e-3) / t.t1_us);
}

double thermal_lambda(const ThermalRelaxation &t, double gate_ns) {
    double rate = 1 / t.t2_us - 1 / (2 * t.t1_us);
    return std::clamp(1 - std::exp(-2 * (gate_ns * 1e-3) * rate), 0.0, 1.0);
}

Eigen::Matrix2cd diag2(double a, double b) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

std::vector<Eigen::Matrix2cd> amplitude_damping_ops(double gamma) {
    Eigen::Matrix2cd k1 = Eigen::Matrix2cd::Zero();
    k1(0, 1) = std::sqrt(gamma);
    return {diag2(1, std::sqrt(1 - gamma)), k1};
}

std::vector<Eigen::Matrix2cd> phase_damping_ops(double lambda) {
    return {diag2(1, std::sqrt(1 - lambda)), diag2(0, std::sqrt(lambda))};
}

bool is_two_qubit(GateTag tag) {
    return qubit_count(tag) == 2;
}

}  // namespace

double ThermalRelaxation::gate_time_for(GateTag tag) const {
    if (auto it = gate_time_ns.find(std::string(gate_name(tag))); it != gate_time_ns.end()) {
        return it->second;
    }
    if (auto it = gate_time_ns.find("default"); it != gate_time_ns.end()) {
        return it->second;
    }
    return 0;
}

void validate(const NoiseChannel &channel) {
    std::visit(
        [](const auto &c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Depolarizing>) {
                check_probability("depolarizing.p", c.p);
                if (c.p_2q) {
                    check_probability("depolarizing.p_2q", *c.p_2q);
                }
            } else if constexpr (std::is_same_v<T, ThermalRelaxation>) {
                if (!(c.t1_us > 0) || !std::isfinite(c.t1_us)) {
                    throw NoiseModelError("thermal.t1_us", "T1 must be positive");
                }
                if (!(c.t2_us > 0) || !std::isfinite(c.t2_us)) {
                    throw NoiseModelError("thermal.t2_us", "T2 must be positive");
                }
                if (c.t2_us > 2 * c.t1_us) {
                    throw NoiseModelError("thermal.t2_us", "T2 must not exceed 2*T1");
                }
                if (!c.gate_time_ns.contains("default")) {
                    throw NoiseModelError("thermal.gate_time_ns.default", "missing default gate time");
                }
                for (const auto &[name, ns] : c.gate_time_ns) {
                    if (name != "default" && !gate_tag_from_name(name)) {
                        throw NoiseModelError("thermal.gate_time_ns." + name, "unknown gate");
                    }
                    if (!(ns >= 0) || !std::isfinite(ns)) {
                        throw NoiseModelError("thermal.gate_time_ns." + name, "gate time must be >= 0");
                    }
                }
            } else if constexpr (std::is_same_v<T, AmplitudeDamping>) {
                check_probability("amplitude_damping.gamma", c.gamma);
            } else if constexpr (std::is_same_v<T, PhaseDamping>) {
                check_probability("phase_damping.lambda", c.lambda);
            } else {
                check_probability("readout.p01", c.p01);
                check_probability("readout.p10", c.p10);
            }
        },
        channel);
}

KrausSet::KrausSet(std::vector<Eigen::Matrix2cd> operators) {
    for (auto &k : operators) {
        if (k.cwiseAbs().maxCoeff() > 0) {
            ops_.push_back(k);
        }
    }
    if (ops_.empty()) {
        throw InvalidArgument("Kraus set has no nonzero operator");
    }
    for (const auto &k : ops_) {
        Eigen::Matrix2cd e = k.adjoint() * k;
        effects_.push_back(e);
        const double w = e(0, 0).real();
        const bool scalar_effect = std::abs(e(0, 1)) < kKrausTol && std::abs(e(1, 0)) < kKrausTol &&
                                   std::abs(e(1, 1) - e(0, 0)) < kKrausTol;
        state_independent_ = state_independent_ && scalar_effect;
        weights_.push_back(w);
        const bool identity = std::abs(k(0, 1)) == 0 && std::abs(k(1, 0)) == 0 && k(0, 0) == k(1, 1) &&
                              k(0, 0).imag() == 0 && k(0, 0).real() > 0;
        identity_.push_back(identity);
    }
    if (!state_independent_) {
        weights_.clear();
    }
}

double KrausSet::completeness_error() const {
    Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
    for (const auto &e : effects_) {
        sum += e;
    }
    return (sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

KrausSet kraus_for(const NoiseChannel &channel, std::optional<GateTag> tag) {
    return std::visit(
        [&](const auto &c) -> KrausSet {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Depolarizing>) {
                const double p = tag && is_two_qubit(*tag) && c.p_2q ? *c.p_2q : c.p;
                const double w = std::sqrt(p / 3);
                Eigen::Matrix2cd x, y, z;
                x << 0, 1, 1, 0;
                y << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
                z << 1, 0, 0, -1;
                return KrausSet({std::sqrt(1 - p) * Eigen::Matrix2cd::Identity(), w * x, w * y, w * z});
            } else if constexpr (std::is_same_v<T, ThermalRelaxation>) {
                double ns = 0;
                if (tag) {
                    ns = c.gate_time_for(*tag);
                } else if (auto it = c.gate_time_ns.find("default"); it != c.gate_time_ns.end()) {
                    ns = it->second;
                }
                auto ad = amplitude_damping_ops(thermal_gamma(c, ns));
                auto pd = phase_damping_ops(thermal_lambda(c, ns));
                std::vector<Eigen::Matrix2cd> ops;
                for (const auto &p : pd) {
                    for (const auto &a : ad) {
                        ops.push_back(p * a);
                    }
                }
                return KrausSet(std::move(ops));
            } else if constexpr (std::is_same_v<T, AmplitudeDamping>) {
                return KrausSet(amplitude_damping_ops(c.gamma));
            } else if constexpr (std::is_same_v<T, PhaseDamping>) {
                return KrausSet(phase_damping_ops(c.lambda));
            } else {
                throw InvalidArgument("readout error has no Kraus representation; it acts on measured bits");
            }
        },
        channel);
}

NoiseModel::NoiseModel(std::vector<NoiseChannel> channels) {
    for (auto &ch : channels) {
        validate(ch);
        if (auto *r = std::get_if<Readout>(&ch)) {
            if (readout_) {
                throw NoiseModelError("readout", "at most one readout channel is allowed");
            }
            readout_ = *r;
        } else {
            channels_.push_back(std::move(ch));
        }
    }
    std::stable_sort(channels_.begin(), channels_.end(),
                     [](const NoiseChannel &a, const NoiseChannel &b) { return a.index() < b.index(); });
    for (GateTag tag : kAllGateTags) {
        const auto i = static_cast<std::size_t>(tag);
        double keep = 1;
        for (const auto &ch : channels_) {
            KrausSet k = kraus_for(ch, tag);
            if (!(k.size() == 1 && k.is_identity(0))) {
                per_tag_[i].push_back(std::move(k));
            }
            std::visit(
                [&](const auto &c) {
                    using T = std::decay_t<decltype(c)>;
                    if constexpr (std::is_same_v<T, Depolarizing>) {
                        keep *= 1 - (is_two_qubit(tag) && c.p_2q ? *c.p_2q : c.p);
                    } else if constexpr (std::is_same_v<T, ThermalRelaxation>) {
                        const double ns = c.gate_time_for(tag);
                        keep *= (1 - thermal_gamma(c, ns)) * (1 - thermal_lambda(c, ns));
                    } else if constexpr (std::is_same_v<T, AmplitudeDamping>) {
                        keep *= 1 - c.gamma;
                    } else if constexpr (std::is_same_v<T, PhaseDamping>) {
                        keep *= 1 - c.lambda;
                    }
                },
                ch);
        }
        error_rate_[i] = 1 - keep;
    }
}

bool NoiseModel::noiseless() const {
    if (readout_ && (readout_->p01 > 0 || readout_->p10 > 0)) {
        return false;
    }
    return std::all_of(per_tag_.begin(), per_tag_.end(), [](const auto &v) { return v.empty(); });
}

double NoiseModel::location_error_rate(GateTag tag) const {
    return error_rate_[static_cast<std::size_t>(tag)];
}

namespace {

using nlohmann::json;

const json &require_object(const json &j, const std::string &field) {
    if (!j.is_object()) {
        throw NoiseModelError(field, "expected an object");
    }
    return j;
}

double require_number(const json &obj, const std::string &section, const char *key) {
    const std::string field = section + "." + key;
    if (!obj.contains(key)) {
        throw NoiseModelError(field, "missing required field");
    }
    const json &v = obj.at(key);
    if (!v.is_number()) {
        throw NoiseModelError(field, "expected a number");
    }
    return v.get<double>();
}

void reject_unknown(const json &obj, const std::string &section, std::initializer_list<std::string_view> known) {
    for (const auto &[key, value] : obj.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw NoiseModelError(section.empty() ? key : section + "." + key, "unknown field");
        }
    }
}

}  // namespace

NoiseModel load_noise_model(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw NoiseModelError("$", std::string("invalid JSON: ") + e.what());
    }
    require_object(root, "$");
    reject_unknown(root, "", {"depolarizing", "thermal", "amplitude_damping", "phase_damping", "readout"});
    if (root.empty()) {
        throw NoiseModelError("$", "at least one noise section is required");
    }

    std::vector<NoiseChannel> channels;
    if (root.contains("depolarizing")) {
        const json &d = require_object(root["depolarizing"], "depolarizing");
        reject_unknown(d, "depolarizing", {"p", "p_2q"});
        Depolarizing ch{require_number(d, "depolarizing", "p"), std::nullopt};
        if (d.contains("p_2q")) {
            ch.p_2q = require_number(d, "depolarizing", "p_2q");
        }
        channels.emplace_back(ch);
    }
    if (root.contains("thermal")) {
        const json &t = require_object(root["thermal"], "thermal");
        reject_unknown(t, "thermal", {"t1_us", "t2_us", "gate_time_ns"});
        ThermalRelaxation ch;
        ch.t1_us = require_number(t, "thermal", "t1_us");
        ch.t2_us = require_number(t, "thermal", "t2_us");
        if (!t.contains("gate_time_ns")) {
            throw NoiseModelError("thermal.gate_time_ns", "missing required field");
        }
        const json &times = require_object(t["gate_time_ns"], "thermal.gate_time_ns");
        for (const auto &[key, value] : times.items()) {
            ch.gate_time_ns[key] = require_number(times, "thermal.gate_time_ns", key.c_str());
        }
        channels.emplace_back(ch);
    }
    if (root.contains("amplitude_damping")) {
        const json &a = require_object(root["amplitude_damping"], "amplitude_damping");
        reject_unknown(a, "amplitude_damping", {"gamma"});
        channels.emplace_back(AmplitudeDamping{require_number(a, "amplitude_damping", "gamma")});
    }
    if (root.contains("phase_damping")) {
        const json &p = require_object(root["phase_damping"], "phase_damping");
        reject_unknown(p, "phase_damping", {"lambda"});
        channels.emplace_back(PhaseDamping{require_number(p, "phase_damping", "lambda")});
    }
    if (root.contains("readout")) {
        const json &r = require_object(root["readout"], "readout");
        reject_unknown(r, "readout", {"p01", "p10"});
        channels.emplace_back(Readout{require_number(r, "readout", "p01"), require_number(r, "readout", "p10")});
    }
    return NoiseModel(std::move(channels));
}

std::string noise_model_to_json(const NoiseModel &model) {
    json root = json::object();
    for (const auto &ch : model.channels()) {
        std::visit(
            [&](const auto &c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, Depolarizing>) {
                    root["depolarizing"]["p"] = c.p;
                    if (c.p_2q) {
                        root["depolarizing"]["p_2q"] = *c.p_2q;
                    }
                } else if constexpr (std::is_same_v<T, ThermalRelaxation>) {
                    root["thermal"] = {{"t1_us", c.t1_us}, {"t2_us", c.t2_us}, {"gate_time_ns", c.gate_time_ns}};
                } else if constexpr (std::is_same_v<T, AmplitudeDamping>) {
                    root["amplitude_damping"]["gamma"] = c.gamma;
                } else if constexpr (std::is_same_v<T, PhaseDamping>) {
                    root["phase_damping"]["lambda"] = c.lambda;
                }
            },
            ch);
    }
    if (model.readout()) {
        root["readout"] = {{"p01", model.readout()->p01}, {"p10", model.readout()->p10}};
    }
    return root.dump();
}

std::size_t trajectory_noise_step(Statevector &s, std::uint32_t qubit, const KrausSet &kraus, RandomStream &rng) {
    if (kraus.size() == 1) {
        if (!kraus.is_identity(0)) {
            apply_1q(s, qubit, kraus.operators()[0] / std::sqrt(kraus.effect(0)(0, 0).real()));
        }
        return 0;
    }

    std::size_t chosen = kraus.size() - 1;
    double p_chosen = 0;
    if (kraus.state_independent()) {
        const auto &w = kraus.weights();
        const double r = rng.uniform();
        double acc = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            acc += w[i];
            if (r < acc) {
                chosen = i;
                break;
            }
        }
        p_chosen = w[chosen];
    } else {
        // Reduced density matrix of `qubit`; branch probabilities are tr(K^dagger K rho).
        const auto *a = s.amplitudes().data();
        const std::uint64_t dim = static_cast<std::uint64_t>(s.dim());
        const std::uint64_t stride = std::uint64_t{1} << qubit;
        double r00 = 0, r11 = 0;
        std::complex<double> r01 = 0;
        for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
            for (std::uint64_t j = base; j < base + stride; ++j) {
                const auto x = a[j], y = a[j + stride];
                r00 += std::norm(x);
                r11 += std::norm(y);
                r01 += x * std::conj(y);
            }
        }
        std::vector<double> p(kraus.size());
        double total = 0;
        for (std::size_t i = 0; i < kraus.size(); ++i) {
            const auto &e = kraus.effect(i);
            p[i] = std::max(0.0, e(0, 0).real() * r00 + e(1, 1).real() * r11 + 2 * (e(1, 0) * r01).real());
            total += p[i];
        }
        const double r = rng.uniform() * total;
        double acc = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            acc += p[i];
            if (r < acc) {
                chosen = i;
                break;
            }
        }
        while (p[chosen] <= 0 && chosen > 0) {
            --chosen;
        }
        p_chosen = p[chosen] / total;
    }

    if (!kraus.is_identity(chosen)) {
        apply_1q(s, qubit, kraus.operators()[chosen] / std::sqrt(p_chosen));
    }
    return chosen;
}

std::size_t trajectory_noise_step(Statevector &s, std::uint32_t qubit, const NoiseChannel &channel,
                                  RandomStream &rng) {
    return trajectory_noise_step(s, qubit, kraus_for(channel), rng);
}

void apply_noisy_gate(Statevector &s, const Gate &g, const NoiseModel &model, RandomStream &rng) {
    apply_gate(s, g);
    const auto &sets = model.location_channels(g.kind.tag());
    if (sets.empty()) {
        return;
    }
    for (auto q : g.qubits) {
        for (const auto &k : sets) {
            trajectory_noise_step(s, q, k, rng);
        }
    }
}

std::uint64_t apply_readout_error(std::uint64_t bits, std::uint32_t n_qubits, const Readout &channel,
                                  RandomStream &rng) {
    if (channel.p01 == 0 && channel.p10 == 0) {
        return bits;
    }
    for (std::uint32_t q = 0; q < n_qubits; ++q) {
        const bool one = (bits >> q) & 1;
        if (rng.uniform() < (one ? channel.p10 : channel.p01)) {
            bits ^= std::uint64_t{1} << q;
        }
    }
    return bits;
}

std::string apply_readout_error(const std::string &bits, const Readout &channel, RandomStream &rng) {
    const auto n = static_cast<std::uint32_t>(bits.size());
    return to_bitstring(apply_readout_error(from_bitstring(bits), n, channel, rng), n);
}

NoiseModel named_noise_model(std::string_view name, const NoiseRates &rates) {
    std::string base(name);
    bool readout = false;
    if (base != "ALL" && base.size() == 3 && base.back() == 'R') {
        readout = true;
        base.pop_back();
    }
    std::vector<NoiseChannel> channels;
    ThermalRelaxation thermal{rates.t1_us, rates.t2_us, {{"default", rates.gate_time_1q_ns}}};
    for (GateTag tag : kAllGateTags) {
        if (qubit_count(tag) == 2) {
            thermal.gate_time_ns[std::string(gate_name(tag))] = rates.gate_time_2q_ns;
        }
    }
    if (base == "DC") {
        channels.emplace_back(Depolarizing{rates.depolarizing, std::nullopt});
    } else if (base == "TR") {
        channels.emplace_back(thermal);
    } else if (base == "AD") {
        channels.emplace_back(AmplitudeDamping{rates.amplitude_damping});
    } else if (base == "PD") {
        channels.emplace_back(PhaseDamping{rates.phase_damping});
    } else if (base == "ALL") {
        channels.emplace_back(Depolarizing{rates.depolarizing, std::nullopt});
        channels.emplace_back(thermal);
        channels.emplace_back(AmplitudeDamping{rates.amplitude_damping});
        channels.emplace_back(PhaseDamping{rates.phase_damping});
        readout = true;
    } else {
        throw InvalidArgument("unknown noise model '" + std::string(name) + "'");
    }
    if (readout) {
        channels.emplace_back(Readout{rates.readout_p01, rates.readout_p10});
    }
    return NoiseModel(std::move(channels));
}

}  // namespace tqsim
