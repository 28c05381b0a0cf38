// Copyright 2026 The qflow Authors
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

#include "qflow/analysis/fits.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <stdexcept>
#include <unsupported/Eigen/NonLinearOptimization>

namespace qflow {

namespace {

double r_squared(const std::vector<double>& y, const std::vector<double>& fit) {
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ss_res += (y[i] - fit[i]) * (y[i] - fit[i]);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  if (ss_tot == 0.0) return ss_res == 0.0 ? 1.0 : 0.0;
  return std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
}

void check_points(std::size_t nx, std::size_t ny) {
  if (nx != ny) throw std::invalid_argument("fit inputs differ in length");
  if (nx < 3) throw std::invalid_argument("fits need at least 3 points");
}

// Least-squares line y = s x + c.
FitResult line(FitModel model, const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 1e-300 * (1.0 + mx * mx))) throw std::invalid_argument("degenerate fit data: constant abscissae");
  FitResult r;
  r.model = model;
  const double s = sxy / sxx, c = my - s * mx;
  r.params = {s, c};
  std::vector<double> pred(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) pred[i] = s * x[i] + c;
  r.r_squared = r_squared(y, pred);
  return r;
}

std::vector<double> log_of(const std::vector<double>& v, const char* what) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive for a log fit");
    out[i] = std::log(v[i]);
  }
  return out;
}

struct KappaFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const std::vector<KappaPoint>* pts;
  int inputs() const { return 2; }
  int values() const { return static_cast<int>(pts->size()); }

  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& f) const {
    for (std::size_t i = 0; i < pts->size(); ++i) {
      const auto& q = (*pts)[i];
      const double model = kappa_model(q.m, q.nu, p[0], p[1]);
      f[static_cast<Eigen::Index>(i)] = (model > 0 ? std::log(model) : -700.0) - std::log(q.kappa);
    }
    return 0;
  }
  int df(const Eigen::VectorXd& p, Eigen::MatrixXd& j) const {
    for (std::size_t i = 0; i < pts->size(); ++i) {
      const auto& q = (*pts)[i];
      const double e = std::exp(-p[0] * q.m * q.nu);
      const double denom = e + p[1];
      j(static_cast<Eigen::Index>(i), 0) = -q.m * q.nu * e / denom;
      j(static_cast<Eigen::Index>(i), 1) = 1.0 / denom;
    }
    return 0;
  }
};

}  // namespace

std::string to_string(FitModel model) {
  switch (model) {
    case FitModel::kPowerLaw:
      return "power-law";
    case FitModel::kLogLinear:
      return "log-linear";
    case FitModel::kStretchedExponential:
      return "stretched-exponential";
  }
  return "?";
}

FitResult fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  check_points(x.size(), y.size());
  FitResult r = line(FitModel::kPowerLaw, log_of(x, "x"), log_of(y, "y"));
  r.params[1] = std::exp(r.params[1]);
  return r;
}

FitResult fit_log_linear(const std::vector<double>& x, const std::vector<double>& y) {
  check_points(x.size(), y.size());
  return line(FitModel::kLogLinear, log_of(x, "x"), y);
}

FitResult fit_error_power_law(const std::vector<unsigned>& q_pe, const std::vector<double>& eps_min) {
  return fit_power_law(std::vector<double>(q_pe.begin(), q_pe.end()), eps_min);
}

FitResult fit_t0_kappa(const std::vector<double>& kappa, const std::vector<double>& t0_star) {
  return fit_log_linear(kappa, t0_star);
}

double kappa_model(double m, double nu, double a, double c) { return m * (std::exp(-a * m * nu) + c); }

FitResult fit_kappa_model(const std::vector<KappaPoint>& points) {
  if (points.size() < 3) throw std::invalid_argument("fits need at least 3 points");
  for (const auto& p : points) {
    if (!(p.m > 0 && p.kappa > 0)) throw std::invalid_argument("m and kappa must be positive");
  }
  const bool constant_nu = std::all_of(points.begin(), points.end(), [&](const KappaPoint& p) {
    return p.nu == points.front().nu && p.m == points.front().m;
  });
  if (constant_nu) throw std::invalid_argument("degenerate fit data: all points share m and nu");
  KappaFunctor f{&points};
  Eigen::VectorXd p(2);
  p << 0.02, 2.0;
  Eigen::LevenbergMarquardt<KappaFunctor> lm(f);
  lm.parameters.xtol = 1e-14;
  lm.parameters.ftol = 1e-14;
  lm.parameters.maxfev = 2000;
  lm.minimize(p);
  FitResult r;
  r.model = FitModel::kStretchedExponential;
  r.params = {p[0], p[1]};
  std::vector<double> y, pred;
  for (const auto& q : points) {
    y.push_back(std::log(q.kappa));
    const double model = kappa_model(q.m, q.nu, p[0], p[1]);
    pred.push_back(model > 0 ? std::log(model) : -700.0);
  }
  r.r_squared = r_squared(y, pred);
  return r;
}

double predict_t0(double kappa, const FitResult& fit, double floor) {
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  if (fit.model != FitModel::kLogLinear || fit.params.size() != 2) {
    throw std::invalid_argument("predict_t0 needs a log-linear fit");
  }
  return std::max(floor, fit.params[0] * std::log(kappa) + fit.params[1]);
}

std::string fit_json(const FitResult& fit) {
  nlohmann::json j;
  j["model"] = to_string(fit.model);
  j["params"] = fit.params;
  j["r_squared"] = fit.r_squared;
  return j.dump(2);
}

}  // namespace qflow
