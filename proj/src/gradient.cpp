// Copyright 2026 The dmps Authors
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

#include "dmps/gradient.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <cmath>
#include <numbers>

#include "dmps/errors.hpp"
#include "json.hpp"

namespace dmps {

namespace {

void check_inputs(const ParametricCircuit& c, std::span<const double> params, const QubitHamiltonian& h,
                  const Mps& initial) {
  if (params.size() != c.n_slots) {
    throw InvalidInput("expected " + std::to_string(c.n_slots) + " parameters, got " + std::to_string(params.size()));
  }
  if (initial.size() != c.n_qubits) throw InvalidInput("initial state and circuit have different qubit counts");
  if (h.n_qubits > c.n_qubits) throw InvalidInput("Hamiltonian acts on more qubits than the circuit");
  for (double v : params) {
    if (!std::isfinite(v)) throw InvalidInput("parameters contain NaN or Inf");
  }
}

// Forward pass in which gate `shifted` (if any) is replaced by the same
// rotation at a frozen angle.
Mps forward(const ParametricCircuit& c, std::span<const double> params, const Mps& initial,
            std::size_t shifted = static_cast<std::size_t>(-1), double angle = 0.0) {
  Mps psi = initial;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    if (i == shifted) {
      apply_gate(psi, gates::fixed_rotation(c.gates[i].kind, c.gates[i].qubits[0], angle), params);
    } else {
      apply_gate(psi, c.gates[i], params);
    }
  }
  return psi;
}

std::vector<double> finish(const ParametricCircuit& c, std::vector<double> per_gate, Granularity g) {
  return g == Granularity::PerGate ? per_gate : gates_to_slots(c, per_gate);
}

}  // namespace

std::vector<double> gates_to_slots(const ParametricCircuit& c, std::span<const double> per_gate) {
  if (per_gate.size() != c.n_parametric_gates()) throw InvalidInput("gates_to_slots: length mismatch");
  std::vector<double> out(c.n_slots, 0.0);
  std::size_t k = 0;
  for (const auto& g : c.gates) {
    if (g.is_parametric()) out[*g.param_slot] += per_gate[k++];
  }
  return out;
}

double energy(const ParametricCircuit& c, std::span<const double> params, const QubitHamiltonian& h,
              const Mps& initial) {
  check_inputs(c, params, h, initial);
  Mps psi = initial;
  apply_circuit(psi, c, params);
  return energy(psi, h);
}

namespace {

void check_coefficients(const QubitHamiltonian& group) {
  if (group.terms.empty()) throw InvalidInput("empty Hamiltonian group");
  for (const auto& t : group.terms) {
    if (!std::isfinite(t.coefficient.real()) || !std::isfinite(t.coefficient.imag())) {
      throw InvalidInput("term " + t.label() + " has a non-finite coefficient");
    }
  }
}

struct PhiState {
  std::size_t group;
  Mps state;
  double scale;
};

// Batch worker. errors[j] receives the failure of group j, if any; groups
// that fail are dropped while the others carry on. A failure of the forward
// pass or of the walk back of |Psi> is charged to every remaining group.
BatchGradient backprop_batch(const ParametricCircuit& c, std::span<const double> params,
                             std::span<const QubitHamiltonian> groups, const Mps& initial,
                             std::vector<std::exception_ptr>& errors) {
  BatchGradient out;
  out.groups.resize(groups.size());
  errors.assign(groups.size(), nullptr);
  for (auto& g : out.groups) g.per_gate.assign(c.n_parametric_gates(), 0.0);

  std::vector<PhiState> phis;
  Mps psi = initial;
  try {
    const auto fwd = apply_circuit(psi, c, params);
    out.shared.forward_total = fwd.total;
    out.shared.forward_max = fwd.max;
  } catch (...) {
    for (auto& e : errors) e = std::current_exception();
    return out;
  }

  for (std::size_t j = 0; j < groups.size(); ++j) {
    try {
      check_coefficients(groups[j]);
      auto& res = out.groups[j];
      res.term_values = expectation_terms(psi, groups[j].terms);
      std::vector<WeightedMps> parts;
      parts.reserve(groups[j].terms.size());
      for (const auto& t : groups[j].terms) parts.push_back(apply_pauli_string(psi, t));
      try {
        auto sum = add_and_compress(parts, psi.settings());
        res.phi_discarded = sum.discarded_weight;
        const double scale = sum.norm();
        phis.push_back({j, std::move(sum.state), scale});
      } catch (const DegenerateState&) {
        // H_j |psi> = 0: the group contributes nothing.
      }
    } catch (...) {
      errors[j] = std::current_exception();
    }
  }

  std::size_t k = c.n_parametric_gates();
  for (std::size_t i = c.gates.size(); i-- > 0 && !phis.empty();) {
    const Gate& g = c.gates[i];
    const Gate inv = inverse_gate(g);
    try {
      const double w = apply_gate(psi, inv, params);
      out.shared.backward_total += w;
      out.shared.backward_max = std::max(out.shared.backward_max, w);
    } catch (...) {
      for (const auto& ph : phis) errors[ph.group] = std::current_exception();
      phis.clear();
      break;
    }
    const bool parametric = g.is_parametric();
    const ComplexMatrix du = parametric ? gate_derivative(g, params) : ComplexMatrix();
    if (parametric) --k;
    for (auto it = phis.begin(); it != phis.end();) {
      auto& res = out.groups[it->group];
      try {
        if (parametric) res.per_gate[k] = it->scale * inner(it->state, psi, du, g.qubits[0]).real();
        const double wp = apply_gate(it->state, inv, params);
        res.phi_backward_total += wp;
        res.phi_backward_max = std::max(res.phi_backward_max, wp);
        if (inv.arity() == 2) it->scale *= it->state.last_renormalization();
        ++it;
      } catch (...) {
        errors[it->group] = std::current_exception();
        it = phis.erase(it);
      }
    }
  }
  for (auto& res : out.groups) {
    for (auto& v : res.per_gate) v *= 2.0;
  }
  return out;
}

}  // namespace

BatchGradient grad_backprop_batch(const ParametricCircuit& c, std::span<const double> params,
                                  std::span<const QubitHamiltonian> groups, const Mps& initial) {
  for (const auto& g : groups) check_inputs(c, params, g, initial);
  std::vector<std::exception_ptr> errors;
  auto out = backprop_batch(c, params, groups, initial, errors);
  WorkerPool::raise_if_failed(errors, "group");
  return out;
}

GroupGradient grad_backprop_group(const ParametricCircuit& c, std::span<const double> params,
                                  const QubitHamiltonian& group, const Mps& initial) {
  return std::move(grad_backprop_batch(c, params, std::span(&group, 1), initial).groups.front());
}

std::string GradientReport::to_json(bool include_timing) const {
  nlohmann::ordered_json j;
  j["granularity"] = granularity == Granularity::PerGate ? "per_gate" : "per_slot";
  j["grads"] = grads;
  j["energy"] = energy;
  j["group_count"] = group_count;
  j["truncation_summary"] = {{"forward_total", truncation.forward_total},
                             {"forward_max", truncation.forward_max},
                             {"backward_total", truncation.backward_total},
                             {"backward_max", truncation.backward_max},
                             {"phi_discarded", truncation.phi_discarded}};
  if (include_timing) j["timings"] = {{"wall_time", wall_time}};
  return j.dump(2);
}

GradientReport grad_total(const ParametricCircuit& c, std::span<const double> params, const QubitHamiltonian& h,
                          std::size_t group_size, const Mps& initial, WorkerPool& pool, Granularity granularity) {
  const auto start = std::chrono::steady_clock::now();
  if (group_size < 1) throw InvalidInput("group_size must be at least 1");
  check_inputs(c, params, h, initial);

  GradientReport report;
  report.granularity = granularity;
  std::vector<double> per_gate(c.n_parametric_gates(), 0.0);
  if (h.terms.empty()) {
    report.energy = h.constant;
    report.group_count = 0;
  } else {
    const auto groups = split_groups(h, group_size);
    report.group_count = groups.size();
    const std::size_t n_batches = std::min(pool.size(), groups.size());
    struct BatchResult {
      BatchGradient gradient;
      std::vector<std::exception_ptr> errors;
    };
    const auto batches = pool.map(n_batches, [&](std::size_t b) {
      const std::size_t lo = b * groups.size() / n_batches;
      const std::size_t hi = (b + 1) * groups.size() / n_batches;
      BatchResult r;
      r.gradient = backprop_batch(c, params, std::span(groups).subspan(lo, hi - lo), initial, r.errors);
      return r;
    });
    std::vector<std::exception_ptr> errors;
    for (const auto& b : batches) errors.insert(errors.end(), b.errors.begin(), b.errors.end());
    WorkerPool::raise_if_failed(errors, "group");

    double e = h.constant;
    auto& t = report.truncation;
    t.forward_total = batches.front().gradient.shared.forward_total;
    t.forward_max = batches.front().gradient.shared.forward_max;
    t.backward_total = batches.front().gradient.shared.backward_total;
    t.backward_max = batches.front().gradient.shared.backward_max;
    for (const auto& b : batches) {
      for (const auto& r : b.gradient.groups) {
        for (std::size_t k = 0; k < per_gate.size(); ++k) per_gate[k] += r.per_gate[k];
        for (const auto& v : r.term_values) e += v.real();
        t.backward_total += r.phi_backward_total;
        t.backward_max = std::max(t.backward_max, r.phi_backward_max);
        t.phi_discarded += r.phi_discarded;
      }
    }
    report.energy = e;
  }
  report.grads = finish(c, std::move(per_gate), granularity);
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<double> grad_psr(const ParametricCircuit& c, std::span<const double> params, const QubitHamiltonian& h,
                             const Mps& initial, Granularity granularity) {
  check_inputs(c, params, h, initial);
  std::vector<double> per_gate;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    if (!g.is_parametric()) continue;
    if (!g.is_rotation()) throw UnsupportedGate("parameter shift needs exp(-i t P / 2) rotations");
    const double theta = g.angle(params);
    const double plus = energy(forward(c, params, initial, i, theta + std::numbers::pi / 2), h);
    const double minus = energy(forward(c, params, initial, i, theta - std::numbers::pi / 2), h);
    per_gate.push_back(g.scale * 0.5 * (plus - minus));
  }
  return finish(c, std::move(per_gate), granularity);
}

std::vector<double> grad_finite_difference(const ParametricCircuit& c, std::span<const double> params,
                                           const QubitHamiltonian& h, const Mps& initial, double step) {
  check_inputs(c, params, h, initial);
  if (!(step > 0)) throw InvalidInput("finite-difference step must be positive");
  std::vector<double> shifted(params.begin(), params.end());
  std::vector<double> out(params.size());
  for (std::size_t s = 0; s < params.size(); ++s) {
    shifted[s] = params[s] + step;
    const double plus = energy(c, shifted, h, initial);
    shifted[s] = params[s] - step;
    const double minus = energy(c, shifted, h, initial);
    shifted[s] = params[s];
    out[s] = (plus - minus) / (2 * step);
  }
  return out;
}

double mean_relative_error(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidInput("mean_relative_error: length mismatch");
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  if (!(den > 0)) throw InvalidInput("mean_relative_error: reference gradient has zero norm");
  return std::sqrt(num / den);
}

}  // namespace dmps
