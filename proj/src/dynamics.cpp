// Copyright 2026 The dressed-cool Authors
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

#include "dressed_cool/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/LU>

#include "dressed_cool/errors.hpp"

namespace dressed_cool {

namespace {

SparseComplex to_sparse(const ComplexMatrix& m) {
  return m.sparseView(Complex(0.0), 0.0);
}

void require_dims(const ComplexMatrix& h, const CollapseSet& ls) {
  if (h.rows() != h.cols() || h.rows() == 0) throw ValidationError("Hamiltonian must be square");
  for (const auto& term : ls) {
    if (term.op.rows() != h.rows() || term.op.cols() != h.cols()) {
      throw ValidationError("collapse operator '" + term.name + "' does not match the Hamiltonian dimension");
    }
    if (!(term.rate >= 0.0)) throw ValidationError("collapse rate for '" + term.name + "' is negative");
  }
}

void symmetrize(ComplexMatrix& rho) {
  const ComplexMatrix adj = rho.adjoint();
  rho = (rho + adj) * 0.5;
}

// Dormand-Prince 5(4) tableau.
constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 4.0 / 5.0, kC5 = 8.0 / 9.0;
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                 kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

class DormandPrince {
 public:
  explicit DormandPrince(const LindbladGenerator& gen) : gen_(gen) {
    const int d = gen.dim();
    for (auto& k : k_) k.resize(d, d);
    y_stage_.resize(d, d);
    y_new_.resize(d, d);
    err_.resize(d, d);
  }

  // Derivative at the current state; refreshed after each accepted step (FSAL).
  ComplexMatrix& k1() { return k_[0]; }

  // Attempts one step of size h from y (whose derivative is k1()). Leaves the
  // candidate in y_new() and the error estimate in err().
  void attempt(const ComplexMatrix& y, double h) {
    y_stage_ = y + h * kA21 * k_[0];
    gen_.apply(y_stage_, k_[1]);
    y_stage_ = y + h * (kA31 * k_[0] + kA32 * k_[1]);
    gen_.apply(y_stage_, k_[2]);
    y_stage_ = y + h * (kA41 * k_[0] + kA42 * k_[1] + kA43 * k_[2]);
    gen_.apply(y_stage_, k_[3]);
    y_stage_ = y + h * (kA51 * k_[0] + kA52 * k_[1] + kA53 * k_[2] + kA54 * k_[3]);
    gen_.apply(y_stage_, k_[4]);
    y_stage_ = y + h * (kA61 * k_[0] + kA62 * k_[1] + kA63 * k_[2] + kA64 * k_[3] + kA65 * k_[4]);
    gen_.apply(y_stage_, k_[5]);
    y_new_ = y + h * (kB1 * k_[0] + kB3 * k_[2] + kB4 * k_[3] + kB5 * k_[4] + kB6 * k_[5]);
    gen_.apply(y_new_, k_[6]);
    err_ = h * (kE1 * k_[0] + kE3 * k_[2] + kE4 * k_[3] + kE5 * k_[4] + kE6 * k_[5] + kE7 * k_[6]);
  }

  const ComplexMatrix& y_new() const { return y_new_; }
  ComplexMatrix& y_new() { return y_new_; }

  double error_norm(const ComplexMatrix& y, double rtol, double atol) const {
    // std::norm avoids the hypot call inside std::abs; entries are O(1).
    double sum = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double scale = atol + rtol * std::sqrt(std::max(std::norm(y(i)), std::norm(y_new_(i))));
      sum += std::norm(err_(i)) / (scale * scale);
    }
    return std::sqrt(sum / static_cast<double>(y.size()));
  }

  void accept() {
    std::swap(k_[0], k_[6]);
  }

 private:
  const LindbladGenerator& gen_;
  std::array<ComplexMatrix, 7> k_;
  ComplexMatrix y_stage_;
  ComplexMatrix y_new_;
  ComplexMatrix err_;
};

double rms_scaled(const ComplexMatrix& v, const ComplexMatrix& y, double rtol, double atol) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double r = std::abs(v(i)) / (atol + rtol * std::abs(y(i)));
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(v.size()));
}

// Starting step size heuristic (Hairer, Norsett & Wanner, II.4).
double initial_step(const LindbladGenerator& gen, const ComplexMatrix& y0, const ComplexMatrix& f0,
                    double rtol, double atol, double span) {
  const double d0 = rms_scaled(y0, y0, rtol, atol);
  const double d1 = rms_scaled(f0, y0, rtol, atol);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  const ComplexMatrix y1 = y0 + h0 * f0;
  const ComplexMatrix f1 = gen.apply(y1);
  const double d2 = rms_scaled(f1 - f0, y0, rtol, atol) / h0;
  const double m = std::max(d1, d2);
  const double h1 = m <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / m, 1.0 / 5.0);
  return std::min({100.0 * h0, h1, span});
}

struct Recorder {
  Recorder(Trajectory& traj, const std::vector<Observable>& observables, const EvolveOptions& opt)
      : traj_(traj), observables_(observables), opt_(opt) {}

  void record(double t, const ComplexMatrix& rho) {
    traj_.times.push_back(t);
    traj_.max_trace_error = std::max(traj_.max_trace_error, std::abs(rho.trace() - 1.0));
    traj_.max_hermiticity_residual =
        std::max(traj_.max_hermiticity_residual, hermiticity_residual(rho));
    for (std::size_t k = 0; k < observables_.size(); ++k) {
      traj_.values[k].push_back((observables_[k].op.transpose().cwiseProduct(rho)).sum().real());
    }
    if (opt_.check_positivity) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho, Eigen::EigenvaluesOnly);
      const double lo = solver.eigenvalues().minCoeff();
      traj_.min_eigenvalue = std::isnan(traj_.min_eigenvalue) ? lo : std::min(traj_.min_eigenvalue, lo);
    }
    if (opt_.store_states) traj_.states.emplace_back(rho);
  }

  Trajectory& traj_;
  const std::vector<Observable>& observables_;
  const EvolveOptions& opt_;
};

[[noreturn]] void underflow(double t, double h) {
  std::ostringstream msg;
  msg << "evolve: step size underflow (h = " << h << ") at t = " << t << " us";
  throw NumericalError(msg.str());
}

}  // namespace

LindbladGenerator::LindbladGenerator(const ComplexMatrix& h, const CollapseSet& ls)
    : dim_(static_cast<int>(h.rows())) {
  require_dims(h, ls);
  ComplexMatrix h_eff = h;
  const Complex half_i(0.0, 0.5);
  for (const auto& term : ls) {
    if (term.rate == 0.0) continue;
    h_eff -= half_i * term.rate * (term.op.adjoint() * term.op);
    jumps_.push_back(to_sparse(term.scaled()));
  }
  h_eff_ = to_sparse(h_eff);
  scratch_.resize(dim_, dim_);
}

void LindbladGenerator::apply(const ComplexMatrix& rho, ComplexMatrix& out) const {
  const Complex minus_i(0.0, -1.0);
  out.noalias() = minus_i * (h_eff_ * rho);
  out += out.adjoint().eval();
  for (const auto& jump : jumps_) {
    // L rho L^+ = L (L rho)^+ for Hermitian rho; keeps the sparse factor on the left.
    scratch_.noalias() = jump * rho;
    out.noalias() += jump * scratch_.adjoint();
  }
}

ComplexMatrix LindbladGenerator::apply(const ComplexMatrix& rho) const {
  ComplexMatrix out(dim_, dim_);
  apply(rho, out);
  return out;
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& h, const CollapseSet& ls, const DensityMatrix& rho) {
  if (rho.dim() != h.rows()) {
    throw ValidationError("lindblad_rhs: state dimension " + std::to_string(rho.dim()) +
                          " does not match Hamiltonian dimension " + std::to_string(h.rows()));
  }
  return LindbladGenerator(h, ls).apply(rho.mat());
}

const std::vector<double>& Trajectory::series(const std::string& name) const {
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == name) return values[k];
  }
  throw ValidationError("trajectory has no observable named '" + name + "'");
}

Trajectory evolve(const ComplexMatrix& h, const CollapseSet& ls, const DensityMatrix& rho0,
                  const std::vector<double>& t_grid, const std::vector<Observable>& observables,
                  const EvolveOptions& options) {
  const LindbladGenerator gen(h, ls);
  if (rho0.dim() != gen.dim()) throw ValidationError("evolve: initial state dimension mismatch");
  if (t_grid.empty()) throw ValidationError("evolve: empty time grid");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw ValidationError("evolve: time grid must be strictly increasing");
  }
  for (const auto& obs : observables) {
    if (obs.op.rows() != gen.dim() || obs.op.cols() != gen.dim()) {
      throw ValidationError("evolve: observable '" + obs.name + "' has the wrong dimension");
    }
  }
  if (!(options.rtol > 0.0 && options.atol > 0.0)) throw ValidationError("evolve: tolerances must be > 0");

  Trajectory traj;
  traj.names.reserve(observables.size());
  for (const auto& obs : observables) traj.names.push_back(obs.name);
  traj.values.assign(observables.size(), {});
  Recorder recorder(traj, observables, options);

  ComplexMatrix y = rho0.mat();
  double t = t_grid.front();
  recorder.record(t, y);
  if (t_grid.size() == 1) return traj;

  DormandPrince dp(gen);
  gen.apply(y, dp.k1());
  const double span = t_grid.back() - t;
  double h_next = options.fixed_step > 0.0
                 ? options.fixed_step
                 : initial_step(gen, y, dp.k1(), options.rtol, options.atol, span);
  h_next = std::min(h_next, options.max_step);

  std::size_t next = 1;
  std::size_t steps = 0;
  while (next < t_grid.size()) {
    const double target = t_grid[next];
    const double remaining = target - t;
    const bool lands = h_next >= remaining * (1.0 - 1e-12);
    const double step = lands ? remaining : h_next;
    if (step < 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0)) {
      underflow(t, step);
    }
    if (++steps > options.max_steps) {
      throw NumericalError("evolve: exceeded max_steps at t = " + std::to_string(t) + " us");
    }

    dp.attempt(y, step);

    if (options.fixed_step > 0.0) {
      ++traj.accepted_steps;
    } else {
      const double err = dp.error_norm(y, options.rtol, options.atol);
      if (!std::isfinite(err)) underflow(t, step);
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (err > 1.0) {
        ++traj.rejected_steps;
        h_next = step * std::min(1.0, factor);
        continue;
      }
      ++traj.accepted_steps;
      // Do not let a short landing step shrink the next one.
      h_next = std::min(options.max_step, (lands ? std::max(step, h_next) : step) * factor);
    }

    t = lands ? target : t + step;
    std::swap(y, dp.y_new());
    symmetrize(y);
    dp.accept();
    if (lands) {
      recorder.record(t, y);
      ++next;
    }
  }
  return traj;
}

Eigen::VectorXcd vectorize(const ComplexMatrix& rho) {
  return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

ComplexMatrix unvectorize(const Eigen::VectorXcd& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) throw ValidationError("unvectorize: size mismatch");
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

Liouvillian liouvillian_matrix(const ComplexMatrix& h, const CollapseSet& ls) {
  require_dims(h, ls);
  const int d = static_cast<int>(h.rows());
  const ComplexMatrix id = identity(d);
  const Complex i(0.0, 1.0);

  ComplexMatrix heff = h;
  ComplexMatrix l = ComplexMatrix::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  for (const auto& term : ls) {
    if (term.rate == 0.0) continue;
    heff -= 0.5 * i * term.rate * (term.op.adjoint() * term.op);
    l += term.rate * kron(term.op.conjugate(), term.op);
  }
  // -i H_eff rho + i rho H_eff^+
  l += -i * kron(id, heff) + i * kron(heff.adjoint().transpose(), id);
  return {d, std::move(l)};
}

SteadyStateResult steady_state_solve(const ComplexMatrix& h, const CollapseSet& ls) {
  const bool dissipative = std::any_of(ls.begin(), ls.end(), [](const auto& t) { return t.rate > 0.0; });
  if (!dissipative) throw ValidationError("steady_state: needs at least one nonzero dissipation rate");

  const Liouvillian liou = liouvillian_matrix(h, ls);
  const int d = liou.dim;
  const Eigen::Index n = liou.mat.rows();

  ComplexMatrix a = liou.mat;
  a.row(0).setZero();
  for (int k = 0; k < d; ++k) a(0, static_cast<Eigen::Index>(k) * d + k) = 1.0;
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
  b(0) = 1.0;

  const Eigen::PartialPivLU<ComplexMatrix> lu(a);
  // The rcond estimator misses exactly zero pivots, so check those as well.
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double rcond = std::min(lu.rcond(), pivots.minCoeff() / pivots.maxCoeff());
  if (!(rcond > 1e-13)) {
    std::ostringstream msg;
    msg << "steady_state: Liouvillian has multiple steady states (rcond = " << rcond << ")";
    throw NumericalError(msg.str());
  }
  Eigen::VectorXcd x = lu.solve(b);
  x += lu.solve(b - a * x);  // one round of iterative refinement

  ComplexMatrix rho = unvectorize(x, d);
  symmetrize(rho);
  rho /= rho.trace();
  const double residual = (liou.mat * vectorize(rho)).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-9)) {
    std::ostringstream msg;
    msg << "steady_state: residual " << residual << " exceeds 1e-9";
    throw NumericalError(msg.str());
  }
  return {DensityMatrix(std::move(rho)), residual};
}

DensityMatrix steady_state(const ComplexMatrix& h, const CollapseSet& ls) {
  return steady_state_solve(h, ls).rho;
}

std::vector<double> linspace(double t0, double t1, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {t0};
  std::vector<double> out(count);
  const double dt = (t1 - t0) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) out[k] = t0 + dt * static_cast<double>(k);
  out.back() = t1;
  return out;
}

}  // namespace dressed_cool
