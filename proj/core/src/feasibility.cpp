// Copyright 2026 The knowctx Authors
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

#include "knowctx/feasibility.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "knowctx/errors.hpp"
#include "knowctx/random.hpp"

namespace knowctx {
namespace {

void check_shape(ShapeSpec shape) {
  if (shape.m == 0 || shape.m_prime == 0) {
    throw Error(ErrorCode::kInvalidArgument, "shape sizes must be at least 1");
  }
}

void check_rule(const ProbabilityRule& rule) {
  if (rule.is_classical()) {
    throw Error(ErrorCode::kUnsupportedRule,
                "the identity rule is excluded by the interference requirement");
  }
}

std::string monomial_text(const Polynomial::Exponents& e, std::size_t m) {
  std::string s;
  for (std::size_t j = 0; j < m; ++j) {
    for (int conj = 0; conj < 2; ++conj) {
      const unsigned p = e[2 * j + conj];
      if (p == 0) continue;
      if (!s.empty()) s += ' ';
      s += "c" + std::to_string(j + 1) + (conj ? "*" : "");
      if (p > 1) s += "^" + std::to_string(p);
    }
  }
  return s;
}

long binomial(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Amplitude> random_first_layer(Rng& rng, std::size_t m, const ProbabilityRule& rule) {
  std::vector<Amplitude> c(m);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& v : c) {
      v = rng.complex_normal();
      norm += rule(v);
    }
  } while (norm == 0.0);
  const double scale = std::pow(norm, -1.0 / (2.0 * rule.gamma()));
  for (auto& v : c) v *= scale;
  return c;
}

std::vector<Amplitude> to_complex(ShapeSpec shape, std::span<const double> x) {
  std::vector<Amplitude> z(shape.m * shape.m_prime);
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = {x[2 * k], x[2 * k + 1]};
  return z;
}

// d f(a) / d(Re a, Im a) for f = |a|^(2 gamma), returned as a complex
// number g with df = Re(conj(g) * da).
Amplitude rule_gradient(const ProbabilityRule& rule, Amplitude a) {
  const double n = std::norm(a);
  if (n == 0.0) return 0.0;
  const double scale = rule.gamma() == 1.0 ? 2.0 : 2.0 * rule.gamma() * std::pow(n, rule.gamma() - 1.0);
  return scale * a;
}

}  // namespace

long DofAccount::deficit() const noexcept {
  if (!available) return 0;
  return std::max(0L, required - *available);
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::kFeasible: return "Feasible";
    case Verdict::kNoSolutionFound: return "NoSolutionFound";
    case Verdict::kAnalyticallyInadmissible: return "AnalyticallyInadmissible";
  }
  return "?";
}

ConstraintSystem build_system(ShapeSpec shape, ProbabilityRule rule, std::uint64_t sample_seed) {
  check_shape(shape);
  check_rule(rule);
  ConstraintSystem sys;
  sys.shape_ = shape;
  sys.rule_ = rule;
  const std::size_t m = shape.m;
  const std::size_t mp = shape.m_prime;
  const std::size_t nz = m * mp;

  if (auto order = rule.polynomial_order()) {
    sys.mode_ = ConstraintSystem::Mode::kPolynomial;
    // Variables: c_0..c_{m-1}, then z_{jj'} at m + j*mp + j'.
    const std::size_t nv = m + nz;
    Polynomial total(nv);
    for (std::size_t jp = 0; jp < mp; ++jp) {
      Polynomial a(nv);
      Polynomial a_conj(nv);
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t zk = m + j * mp + jp;
        a += Polynomial::variable(nv, j) * Polynomial::variable(nv, zk);
        a_conj += Polynomial::variable(nv, j, true) * Polynomial::variable(nv, zk, true);
      }
      total += (a * a_conj).pow(static_cast<unsigned>(*order));
    }

    // Group by the first-layer monomial; the remainder is a polynomial in z.
    std::map<Polynomial::Exponents, Polynomial> groups;
    for (const auto& [e, coeff] : total.terms()) {
      Polynomial::Exponents key(e.begin(), e.begin() + 2 * m);
      Polynomial::Exponents rest(e.begin() + 2 * m, e.end());
      auto it = groups.try_emplace(key, Polynomial(nz)).first;
      it->second.add_term(rest, coeff);
    }

    auto mirrored = [m](const Polynomial::Exponents& key) {
      Polynomial::Exponents out = key;
      for (std::size_t j = 0; j < m; ++j) std::swap(out[2 * j], out[2 * j + 1]);
      return out;
    };
    auto pure_row = [m, order](const Polynomial::Exponents& key) -> std::optional<std::size_t> {
      for (std::size_t j = 0; j < m; ++j) {
        if (key[2 * j] == *order && key[2 * j + 1] == *order) return j;
      }
      return std::nullopt;
    };

    std::vector<std::pair<std::size_t, const Polynomial*>> rows;
    std::vector<std::pair<const Polynomial::Exponents*, const Polynomial*>> cross;
    for (const auto& [key, poly] : groups) {
      if (auto row = pure_row(key)) {
        rows.emplace_back(*row, &poly);
      } else if (key <= mirrored(key)) {
        cross.emplace_back(&key, &poly);
      }
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [row, poly] : rows) {
      sys.polynomials_.push_back(*poly);
      sys.constants_.push_back(1.0);
      sys.residuals_.push_back({ConstraintSystem::Residual::Kind::kPolynomialReal,
                                sys.polynomials_.size() - 1,
                                "row_norm[" + std::to_string(row + 1) + "]"});
    }
    for (const auto& [key, poly] : cross) {
      const double lead = std::abs(poly->terms().begin()->second);
      sys.polynomials_.push_back(poly->scaled(1.0 / lead));
      sys.constants_.push_back(0.0);
      const std::size_t idx = sys.polynomials_.size() - 1;
      const std::string label = "coef[" + monomial_text(*key, m) + "]";
      sys.residuals_.push_back(
          {ConstraintSystem::Residual::Kind::kPolynomialReal, idx, label + ".re"});
      sys.residuals_.push_back(
          {ConstraintSystem::Residual::Kind::kPolynomialImag, idx, label + ".im"});
    }
    return sys;
  }

  sys.mode_ = ConstraintSystem::Mode::kSampled;
  for (std::size_t j = 0; j < m; ++j) {
    sys.residuals_.push_back({ConstraintSystem::Residual::Kind::kRowNorm, j,
                              "row_norm[" + std::to_string(j + 1) + "]"});
  }
  Rng rng(sample_seed);
  const std::size_t samples = 4 * m * mp + 4;
  for (std::size_t s = 0; s < samples; ++s) {
    sys.samples_.push_back(random_first_layer(rng, m, rule));
    sys.residuals_.push_back({ConstraintSystem::Residual::Kind::kSample, s,
                              "sample[" + std::to_string(s) + "]"});
  }
  return sys;
}

std::vector<double> ConstraintSystem::residuals(std::span<const double> x) const {
  if (x.size() != unknown_count()) {
    throw Error(ErrorCode::kInvalidArgument, "unknown vector has the wrong length");
  }
  const std::vector<Amplitude> z = to_complex(shape_, x);
  const std::size_t mp = shape_.m_prime;
  std::vector<double> out;
  out.reserve(residuals_.size());
  std::vector<Amplitude> poly_values(polynomials_.size());
  for (std::size_t p = 0; p < polynomials_.size(); ++p) poly_values[p] = polynomials_[p].evaluate(z);

  for (const Residual& r : residuals_) {
    switch (r.kind) {
      case Residual::Kind::kPolynomialReal:
        out.push_back(poly_values[r.index].real() - constants_[r.index]);
        break;
      case Residual::Kind::kPolynomialImag:
        out.push_back(poly_values[r.index].imag());
        break;
      case Residual::Kind::kRowNorm: {
        double sum = 0.0;
        for (std::size_t jp = 0; jp < mp; ++jp) sum += rule_(z[r.index * mp + jp]);
        out.push_back(sum - 1.0);
        break;
      }
      case Residual::Kind::kSample: {
        const auto& c = samples_[r.index];
        double sum = 0.0;
        for (std::size_t jp = 0; jp < mp; ++jp) {
          Amplitude a = 0.0;
          for (std::size_t j = 0; j < shape_.m; ++j) a += c[j] * z[j * mp + jp];
          sum += rule_(a);
        }
        out.push_back(sum - 1.0);
        break;
      }
    }
  }
  return out;
}

std::vector<double> ConstraintSystem::jacobian(std::span<const double> x) const {
  if (x.size() != unknown_count()) {
    throw Error(ErrorCode::kInvalidArgument, "unknown vector has the wrong length");
  }
  const std::vector<Amplitude> z = to_complex(shape_, x);
  const std::size_t n = unknown_count();
  const std::size_t mp = shape_.m_prime;
  std::vector<double> jac(residuals_.size() * n, 0.0);

  // d/du = dP/dz + dP/dz*, d/dv = i (dP/dz - dP/dz*).
  std::vector<std::vector<Amplitude>> du(polynomials_.size());
  std::vector<std::vector<Amplitude>> dv(polynomials_.size());
  for (std::size_t p = 0; p < polynomials_.size(); ++p) {
    std::vector<Amplitude> dz;
    std::vector<Amplitude> dc;
    polynomials_[p].gradient(z, dz, dc);
    du[p].resize(z.size());
    dv[p].resize(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
      du[p][k] = dz[k] + dc[k];
      dv[p][k] = Amplitude(0.0, 1.0) * (dz[k] - dc[k]);
    }
  }

  for (std::size_t i = 0; i < residuals_.size(); ++i) {
    const Residual& r = residuals_[i];
    double* row = jac.data() + i * n;
    switch (r.kind) {
      case Residual::Kind::kPolynomialReal:
      case Residual::Kind::kPolynomialImag: {
        const bool real = r.kind == Residual::Kind::kPolynomialReal;
        for (std::size_t k = 0; k < z.size(); ++k) {
          row[2 * k] = real ? du[r.index][k].real() : du[r.index][k].imag();
          row[2 * k + 1] = real ? dv[r.index][k].real() : dv[r.index][k].imag();
        }
        break;
      }
      case Residual::Kind::kRowNorm: {
        for (std::size_t jp = 0; jp < mp; ++jp) {
          const std::size_t k = r.index * mp + jp;
          const Amplitude g = rule_gradient(rule_, z[k]);
          row[2 * k] = g.real();
          row[2 * k + 1] = g.imag();
        }
        break;
      }
      case Residual::Kind::kSample: {
        const auto& c = samples_[r.index];
        for (std::size_t jp = 0; jp < mp; ++jp) {
          Amplitude a = 0.0;
          for (std::size_t j = 0; j < shape_.m; ++j) a += c[j] * z[j * mp + jp];
          const Amplitude g = rule_gradient(rule_, a);
          for (std::size_t j = 0; j < shape_.m; ++j) {
            // da/du = c_j, da/dv = i c_j; df = Re(conj(g) da).
            const std::size_t k = j * mp + jp;
            row[2 * k] = (std::conj(g) * c[j]).real();
            row[2 * k + 1] = (std::conj(g) * Amplitude(0.0, 1.0) * c[j]).real();
          }
        }
        break;
      }
    }
  }
  return jac;
}

DofAccount dof_count(ShapeSpec shape, ProbabilityRule rule) {
  check_shape(shape);
  check_rule(rule);
  const long m = static_cast<long>(shape.m);
  const long mp = static_cast<long>(shape.m_prime);
  DofAccount dof;
  dof.unknowns = 2 * m * mp;
  dof.required = m * (mp - 1);
  dof.first_layer_unknowns = 2 * m;
  dof.first_layer_conditions = 1;
  dof.first_layer_available = 2 * m - 1;
  dof.first_layer_required = m - 1;
  if (auto order = rule.polynomial_order()) {
    // N first-layer monomials of degree gamma; coefficient classes of
    // c^alpha conj(c)^beta up to conjugation, each counted as two real
    // conditions except the M pure ones (row norms).
    const long n = binomial(*order + m - 1, m - 1);
    dof.conditions = n * (n + 1) - m;
    dof.available = dof.unknowns - *dof.conditions;
  }
  return dof;
}

bool born_admissible(ShapeSpec shape) noexcept {
  return shape.m_prime + 1 >= shape.m;
}

AmplitudeMatrix unpack_amplitudes(ShapeSpec shape, std::span<const double> x) {
  AmplitudeMatrix w(shape.m, shape.m_prime);
  for (std::size_t j = 0; j < shape.m; ++j) {
    for (std::size_t jp = 0; jp < shape.m_prime; ++jp) {
      const std::size_t k = j * shape.m_prime + jp;
      w(j, jp) = {x[2 * k], x[2 * k + 1]};
    }
  }
  return w;
}

namespace {

struct RunResult {
  Eigen::VectorXd x;
  double residual = std::numeric_limits<double>::infinity();
};

RunResult levenberg_marquardt(const ConstraintSystem& sys, Eigen::VectorXd x,
                              const SolverOptions& opt) {
  const Eigen::Index n = x.size();
  auto eval = [&](const Eigen::VectorXd& p) {
    std::vector<double> r = sys.residuals({p.data(), static_cast<std::size_t>(n)});
    return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size())));
  };
  Eigen::VectorXd r = eval(x);
  double cost = 0.5 * r.squaredNorm();
  double mu = -1.0;
  double nu = 2.0;
  std::size_t iterations = 0;
  while (iterations < opt.max_iterations && std::sqrt(2.0 * cost) > opt.feasible_tolerance) {
    std::vector<double> jv = sys.jacobian({x.data(), static_cast<std::size_t>(n)});
    const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        jac(jv.data(), r.size(), n);
    const Eigen::MatrixXd a = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * r;
    if (g.lpNorm<Eigen::Infinity>() < 1e-300) break;
    if (mu < 0.0) mu = 1e-3 * std::max(a.diagonal().maxCoeff(), 1e-12);

    bool accepted = false;
    while (!accepted && iterations < opt.max_iterations) {
      ++iterations;
      Eigen::MatrixXd damped = a;
      damped.diagonal().array() += mu;
      const Eigen::VectorXd step = damped.ldlt().solve(-g);
      if (!step.allFinite() || step.norm() <= 1e-16 * (x.norm() + 1e-16)) {
        iterations = opt.max_iterations;
        break;
      }
      const Eigen::VectorXd trial = x + step;
      const Eigen::VectorXd rt = eval(trial);
      const double trial_cost = 0.5 * rt.squaredNorm();
      const double predicted = 0.5 * step.dot(mu * step - g);
      const double rho = predicted > 0.0 ? (cost - trial_cost) / predicted : -1.0;
      if (rho > 0.0 && std::isfinite(trial_cost)) {
        x = trial;
        r = rt;
        cost = trial_cost;
        mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
        nu = 2.0;
        accepted = true;
      } else {
        mu *= nu;
        nu *= 2.0;
        if (mu > 1e30) iterations = opt.max_iterations;
      }
    }
  }
  return {std::move(x), std::sqrt(2.0 * cost)};
}

Eigen::VectorXd random_start(const ConstraintSystem& sys, Rng& rng) {
  const ShapeSpec shape = sys.shape();
  const ProbabilityRule& rule = sys.rule();
  Eigen::VectorXd x(static_cast<Eigen::Index>(sys.unknown_count()));
  for (std::size_t j = 0; j < shape.m; ++j) {
    std::vector<Amplitude> row(shape.m_prime);
    double norm = 0.0;
    for (auto& v : row) {
      v = rng.complex_normal();
      norm += rule(v);
    }
    const double scale = norm > 0.0 ? std::pow(norm, -1.0 / (2.0 * rule.gamma())) : 1.0;
    for (std::size_t jp = 0; jp < shape.m_prime; ++jp) {
      const std::size_t k = j * shape.m_prime + jp;
      x[static_cast<Eigen::Index>(2 * k)] = row[jp].real() * scale;
      x[static_cast<Eigen::Index>(2 * k + 1)] = row[jp].imag() * scale;
    }
  }
  return x;
}

std::size_t jacobian_rank(const ConstraintSystem& sys, const Eigen::VectorXd& x) {
  std::vector<double> jv = sys.jacobian({x.data(), static_cast<std::size_t>(x.size())});
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      jac(jv.data(), static_cast<Eigen::Index>(sys.residual_count()), x.size());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > 1e-8 * s[0]) ++rank;
  }
  return rank;
}

}  // namespace

FeasibilityReport solve(const ConstraintSystem& system, std::size_t restarts, std::uint64_t seed,
                        const SolverOptions& options) {
  if (restarts == 0) throw Error(ErrorCode::kInvalidArgument, "restarts must be at least 1");
  FeasibilityReport report;
  report.shape = system.shape();
  report.rule = system.rule();
  report.restarts = restarts;
  report.seed = seed;
  report.generator = std::string(Rng::kName);
  report.residual_count = system.residual_count();
  report.unknown_count = system.unknown_count();

  RunResult best;
  bool all_above_threshold = true;
  for (std::size_t i = 0; i < restarts; ++i) {
    Rng rng(derive_seed(seed, i));
    RunResult run = levenberg_marquardt(system, random_start(system, rng), options);
    if (run.residual <= options.feasible_tolerance) ++report.converged_restarts;
    if (!(run.residual >= options.refutation_threshold)) all_above_threshold = false;
    if (run.residual < best.residual) {
      best = std::move(run);
      report.best_restart = i;
    }
  }

  report.best_residual = best.residual;
  if (best.x.size() > 0) {
    report.jacobian_rank = jacobian_rank(system, best.x);
  }
  if (best.residual <= options.feasible_tolerance) {
    report.verdict = Verdict::kFeasible;
    report.witness = unpack_amplitudes(system.shape(), {best.x.data(), static_cast<std::size_t>(best.x.size())});
    report.deterministic_witness = std::all_of(
        report.witness->data().begin(), report.witness->data().end(), [&](const Amplitude& c) {
          const double p = system.rule()(c);
          return std::abs(p) < 1e-6 || std::abs(p - 1.0) < 1e-6;
        });
    report.reason = "restart " + std::to_string(report.best_restart) + " reached the tolerance";
  } else {
    report.verdict = Verdict::kNoSolutionFound;
    report.refutation_certified = all_above_threshold;
    std::ostringstream msg;
    msg << "no restart reached " << options.feasible_tolerance << "; "
        << (all_above_threshold ? "all" : "not all") << " restarts stayed at or above "
        << options.refutation_threshold;
    report.reason = msg.str();
  }
  return report;
}

FeasibilityReport assess(ShapeSpec shape, ProbabilityRule rule, std::size_t restarts,
                         std::uint64_t seed, const SolverOptions& options) {
  check_shape(shape);
  check_rule(rule);
  if (rule.is_born() && !born_admissible(shape)) {
    FeasibilityReport report;
    report.verdict = Verdict::kAnalyticallyInadmissible;
    report.shape = shape;
    report.rule = rule;
    report.restarts = 0;
    report.seed = seed;
    report.generator = std::string(Rng::kName);
    report.best_residual = std::numeric_limits<double>::quiet_NaN();
    report.dof = dof_count(shape, rule);
    report.unknown_count = 2 * shape.m * shape.m_prime;
    report.residual_count = static_cast<std::size_t>(report.dof->conditions.value_or(0));
    report.reason = "M' = " + std::to_string(shape.m_prime) + " < M - 1 = " +
                    std::to_string(shape.m - 1) + ": " + std::to_string(*report.dof->available) +
                    " free parameters for " + std::to_string(report.dof->required) +
                    " independent propensities";
    return report;
  }
  FeasibilityReport report = solve(build_system(shape, rule, seed), restarts, seed, options);
  report.dof = dof_count(shape, rule);
  if (report.dof->deficit() > 0) {
    report.reason += "; analytic deficit of " + std::to_string(report.dof->deficit()) +
                     " free parameters";
  }
  return report;
}

DofAccount real_rule_exclusion(ShapeSpec shape) {
  const bool supported = (shape.m == 2 && shape.m_prime == 2) || (shape.m == 1 && shape.m_prime == 1);
  if (!supported) {
    throw Error(ErrorCode::kUnsupportedShape,
                "real-argument counting is defined for the (2,2) context and the trivial (1,1)");
  }
  const long m = static_cast<long>(shape.m);
  const long mp = static_cast<long>(shape.m_prime);
  DofAccount dof;
  dof.unknowns = m + m * mp;
  // One normalization per complete set observed classically, plus the
  // knowability-1 normalization, which only adds information when M >= 2.
  dof.conditions = 1 + m + (m >= 2 ? 1 : 0);
  dof.available = dof.unknowns - *dof.conditions;
  dof.required = m * mp - 1;
  dof.first_layer_unknowns = m;
  dof.first_layer_conditions = 1;
  dof.first_layer_available = m - 1;
  dof.first_layer_required = m - 1;
  return dof;
}

DofAccount complex_rule_accounting(ShapeSpec shape) {
  check_shape(shape);
  const DofAccount born = dof_count(shape, ProbabilityRule::born());
  DofAccount dof;
  dof.unknowns = born.first_layer_unknowns + born.unknowns;
  dof.conditions = born.first_layer_conditions + *born.conditions;
  dof.available = dof.unknowns - *dof.conditions;
  dof.required = born.first_layer_required + born.required;
  dof.first_layer_unknowns = born.first_layer_unknowns;
  dof.first_layer_conditions = born.first_layer_conditions;
  dof.first_layer_available = born.first_layer_available;
  dof.first_layer_required = born.first_layer_required;
  return dof;
}

ContextNetwork pad_hypothetical(const ContextNetwork& ctx, std::size_t target_m_prime) {
  if (ctx.layer_count() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "padding needs a preceding layer");
  }
  const std::size_t last = ctx.layer_count() - 1;
  const std::size_t current = ctx.layer(last).size();
  const std::size_t m = ctx.layer(last - 1).size();
  if (target_m_prime < current) {
    throw Error(ErrorCode::kInvalidArgument, "padding cannot remove alternatives");
  }
  if (!born_admissible({m, target_m_prime})) {
    throw Error(ErrorCode::kPaddingInsufficient,
                "(" + std::to_string(m) + "," + std::to_string(target_m_prime) +
                    ") still has M' < M - 1");
  }
  if (target_m_prime == current) return ctx;

  std::vector<AlternativeSet> layers = ctx.layers();
  AlternativeSet& final_set = layers[last];
  if (!final_set.padded_from) final_set.padded_from = current;
  for (std::size_t j = current; j < target_m_prime; ++j) {
    final_set.labels.push_back(hypothetical_label(last, j));
  }
  AmplitudeAssignment amps = ctx.amplitudes();
  const AmplitudeMatrix& old = amps.transitions[last - 1];
  AmplitudeMatrix widened(old.rows(), target_m_prime);
  for (std::size_t r = 0; r < old.rows(); ++r) {
    for (std::size_t c = 0; c < old.cols(); ++c) widened(r, c) = old(r, c);
  }
  amps.transitions[last - 1] = std::move(widened);
  return with_layers(ctx, std::move(layers), std::move(amps));
}

double sampled_independence_check(ShapeSpec shape, ProbabilityRule rule,
                                  const AmplitudeMatrix& witness, std::size_t samples,
                                  std::uint64_t seed) {
  check_shape(shape);
  check_rule(rule);
  if (witness.rows() != shape.m || witness.cols() != shape.m_prime) {
    throw Error(ErrorCode::kShapeMismatch, "witness does not match the shape");
  }
  for (std::size_t j = 0; j < shape.m; ++j) {
    double sum = 0.0;
    for (const Amplitude& c : witness.row(j)) sum += rule(c);
    if (std::abs(sum - 1.0) > 1e-8) {
      throw Error(ErrorCode::kNormalizationViolation,
                  "witness row " + std::to_string(j) + " is not normalized under " + rule.name());
    }
  }
  Rng rng(seed);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::vector<Amplitude> c = random_first_layer(rng, shape.m, rule);
    double total = 0.0;
    for (std::size_t jp = 0; jp < shape.m_prime; ++jp) {
      Amplitude a = 0.0;
      for (std::size_t j = 0; j < shape.m; ++j) a += c[j] * witness(j, jp);
      total += rule(a);
    }
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return worst;
}

}  // namespace knowctx
