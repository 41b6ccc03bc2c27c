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

#include "dmps/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "dmps/errors.hpp"
#include "json.hpp"

namespace dmps {

namespace {

using Vec = Eigen::VectorXd;
using Clock = std::chrono::steady_clock;

std::span<const double> view(const Vec& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

Vec to_vec(std::span<const double> s) {
  Vec v(static_cast<Eigen::Index>(s.size()));
  std::copy(s.begin(), s.end(), v.data());
  return v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Recorder {
 public:
  Recorder(const OptimizerConfig& cfg, Trajectory& t) : cfg_(cfg), t_(t), start_(Clock::now()) {}

  void record(double e, double gnorm, const Vec& x) {
    EpochRecord r;
    r.epoch = t_.epochs.size();
    r.energy = e;
    r.grad_norm = gnorm;
    r.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    if (cfg_.record_params) r.params.assign(x.data(), x.data() + x.size());
    t_.epochs.push_back(std::move(r));
  }

 private:
  const OptimizerConfig& cfg_;
  Trajectory& t_;
  Clock::time_point start_;
};

bool finite(double e, const Vec& g) { return std::isfinite(e) && g.allFinite(); }

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "gd") return Method::GradientDescent;
  if (name == "adam") return Method::Adam;
  if (name == "bfgs") return Method::Bfgs;
  if (name == "nelder-mead" || name == "nm" || name == "gradient-free") return Method::NelderMead;
  throw InvalidInput("unknown optimizer '" + name + "' (expected gd, adam, bfgs or nelder-mead)");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::GradientDescent: return "gd";
    case Method::Adam: return "adam";
    case Method::Bfgs: return "bfgs";
    case Method::NelderMead: return "nelder-mead";
  }
  return "?";
}

std::string status_name(Status s) {
  switch (s) {
    case Status::ConvergedF: return "converged_f";
    case Status::ConvergedG: return "converged_g";
    case Status::MaxIter: return "max_iter";
    case Status::NonFinite: return "non_finite";
  }
  return "?";
}

void OptimizerConfig::validate() const {
  if (!(learning_rate > 0)) throw InvalidInput("learning rate must be positive");
  if (!(f_tol > 0) || !(g_tol > 0)) throw InvalidInput("tolerances must be positive");
  if (!(simplex_step > 0)) throw InvalidInput("simplex step must be positive");
}

std::string Trajectory::to_csv(bool with_timings) const {
  std::ostringstream out;
  out << "epoch,energy,grad_norm,seconds\n";
  for (const auto& r : epochs) {
    out << r.epoch << ',' << fmt(r.energy) << ',' << fmt(r.grad_norm) << ',' << fmt(with_timings ? r.seconds : 0.0)
        << '\n';
  }
  return out.str();
}

std::string Trajectory::to_json(bool with_timings) const {
  nlohmann::ordered_json j;
  j["status"] = status_name(status);
  j["evaluations"] = evaluations;
  auto& arr = j["epochs"] = nlohmann::ordered_json::array();
  for (const auto& r : epochs) {
    nlohmann::ordered_json e;
    e["epoch"] = r.epoch;
    e["energy"] = r.energy;
    e["grad_norm"] = r.grad_norm;
    e["seconds"] = with_timings ? r.seconds : 0.0;
    if (!r.params.empty()) e["params"] = r.params;
    arr.push_back(std::move(e));
  }
  return j.dump(2);
}

OptimizeResult minimize(const Objective& f, std::span<const double> x0, const OptimizerConfig& cfg) {
  cfg.validate();
  if (cfg.method == Method::NelderMead) {
    return gradient_free_baseline([&f](std::span<const double> x) { return f(x).value; }, x0, cfg);
  }
  OptimizeResult res;
  auto& traj = res.trajectory;
  Recorder rec(cfg, traj);
  const auto n = static_cast<Eigen::Index>(x0.size());

  Vec x = to_vec(x0);
  auto eval = [&](const Vec& at) {
    ++traj.evaluations;
    auto r = f(view(at));
    if (static_cast<Eigen::Index>(r.gradient.size()) != n) throw InvalidInput("objective returned a wrong-sized gradient");
    return std::pair<double, Vec>{r.value, to_vec(r.gradient)};
  };

  auto [e, g] = eval(x);
  rec.record(e, g.norm(), x);
  auto done = [&](double e_prev, double e_now, const Vec& grad, bool first) {
    if (!finite(e_now, grad)) {
      traj.status = Status::NonFinite;
      return true;
    }
    if (!first && std::abs(e_now - e_prev) < cfg.f_tol) {
      traj.status = Status::ConvergedF;
      return true;
    }
    if (grad.norm() < cfg.g_tol) {
      traj.status = Status::ConvergedG;
      return true;
    }
    return false;
  };
  if (done(e, e, g, true)) {
    res.params.assign(x.data(), x.data() + n);
    return res;
  }

  Vec adam_m = Vec::Zero(n), adam_v = Vec::Zero(n);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool hinv_scaled = false;

  traj.status = Status::MaxIter;
  for (std::size_t t = 1; t <= cfg.max_iter; ++t) {
    const double e_prev = e;
    const Vec x_prev = x;
    switch (cfg.method) {
      case Method::GradientDescent: {
        x -= cfg.learning_rate * g;
        std::tie(e, g) = eval(x);
        break;
      }
      case Method::Adam: {
        constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
        adam_m = b1 * adam_m + (1 - b1) * g;
        adam_v = b2 * adam_v + (1 - b2) * g.cwiseAbs2();
        const double c1 = 1 - std::pow(b1, static_cast<double>(t));
        const double c2 = 1 - std::pow(b2, static_cast<double>(t));
        x -= cfg.learning_rate * ((adam_m / c1).array() / ((adam_v / c2).array().sqrt() + eps)).matrix();
        std::tie(e, g) = eval(x);
        break;
      }
      case Method::Bfgs: {
        Vec d = -hinv * g;
        double slope = g.dot(d);
        if (!(slope < 0)) {
          hinv.setIdentity();
          hinv_scaled = false;
          d = -g;
          slope = g.dot(d);
        }
        constexpr double c_armijo = 1e-4;
        constexpr int kMaxHalvings = 50;
        double alpha = 1.0;
        Vec x_new = x;
        double e_new = e;
        Vec g_new = g;
        bool accepted = false;
        for (int k = 0; k < kMaxHalvings; ++k, alpha *= 0.5) {
          x_new = x + alpha * d;
          std::tie(e_new, g_new) = eval(x_new);
          if (!finite(e_new, g_new)) break;
          if (e_new <= e + c_armijo * alpha * slope) {
            accepted = true;
            break;
          }
        }
        if (!accepted && finite(e_new, g_new)) {
          // No sufficient decrease along d: stay put, which ends the run on f_tol.
          x_new = x;
          e_new = e;
          g_new = g;
        }
        const Vec s = x_new - x;
        const Vec y = g_new - g;
        const double sy = s.dot(y);
        if (accepted && sy > 1e-12) {
          if (!hinv_scaled) {
            hinv *= sy / y.squaredNorm();
            hinv_scaled = true;
          }
          const double rho = 1.0 / sy;
          const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
          hinv = (id - rho * s * y.transpose()) * hinv * (id - rho * y * s.transpose()) + rho * s * s.transpose();
        }
        x = x_new;
        e = e_new;
        g = g_new;
        break;
      }
      case Method::NelderMead: break;
    }
    if (!finite(e, g)) {
      traj.status = Status::NonFinite;
      x = x_prev;
      break;
    }
    rec.record(e, g.norm(), x);
    if (done(e_prev, e, g, false)) break;
  }
  res.params.assign(x.data(), x.data() + n);
  return res;
}

OptimizeResult gradient_free_baseline(const ValueOnly& f, std::span<const double> x0, const OptimizerConfig& cfg) {
  cfg.validate();
  OptimizeResult res;
  auto& traj = res.trajectory;
  Recorder rec(cfg, traj);
  const auto n = static_cast<Eigen::Index>(x0.size());
  auto eval = [&](const Vec& at) {
    ++traj.evaluations;
    return f(view(at));
  };

  std::vector<Vec> pts;
  std::vector<double> vals;
  pts.push_back(to_vec(x0));
  vals.push_back(eval(pts[0]));
  rec.record(vals[0], 0.0, pts[0]);
  if (!std::isfinite(vals[0])) {
    traj.status = Status::NonFinite;
    res.params.assign(x0.begin(), x0.end());
    return res;
  }
  if (n == 0) {
    traj.status = Status::ConvergedF;
    return res;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec p = pts[0];
    p[i] += cfg.simplex_step;
    pts.push_back(p);
    vals.push_back(eval(p));
  }

  std::vector<std::size_t> order(pts.size());
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<Vec> p2;
    std::vector<double> v2;
    for (auto k : order) {
      p2.push_back(pts[k]);
      v2.push_back(vals[k]);
    }
    pts = std::move(p2);
    vals = std::move(v2);
  };

  traj.status = Status::MaxIter;
  for (std::size_t t = 1; t <= cfg.max_iter; ++t) {
    sort_simplex();
    const auto worst = pts.size() - 1;
    Vec centroid = Vec::Zero(n);
    for (std::size_t k = 0; k < worst; ++k) centroid += pts[k];
    centroid /= static_cast<double>(worst);

    const Vec xr = centroid + (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[0]) {
      const Vec xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
    } else if (fr < vals[worst - 1]) {
      pts[worst] = xr;
      vals[worst] = fr;
    } else {
      const bool outside = fr < vals[worst];
      const Vec xc = outside ? Vec(centroid + 0.5 * (xr - centroid)) : Vec(centroid + 0.5 * (pts[worst] - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : vals[worst])) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        for (std::size_t k = 1; k < pts.size(); ++k) {
          pts[k] = pts[0] + 0.5 * (pts[k] - pts[0]);
          vals[k] = eval(pts[k]);
        }
      }
    }
    sort_simplex();
    rec.record(vals[0], 0.0, pts[0]);
    if (!std::all_of(vals.begin(), vals.end(), [](double v) { return std::isfinite(v); })) {
      traj.status = Status::NonFinite;
      break;
    }
    if (vals.back() - vals.front() < cfg.f_tol) {
      traj.status = Status::ConvergedF;
      break;
    }
  }
  res.params.assign(pts[0].data(), pts[0].data() + n);
  return res;
}

}  // namespace dmps
