#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wgqed/errors.hpp"
#include "wgqed/krylovsim.hpp"

namespace wgqed::sim {

KrylovPropagator::KrylovPropagator(const Hamiltonian& H, int max_dim, double tol)
    : H_(H), max_dim_(max_dim), tol_(tol) {
  if (max_dim < 2) throw DomainError("Krylov dimension must be at least 2");
  if (!(tol > 0)) throw DomainError("Krylov tolerance must be positive");
}

namespace {

// exp(-i dt T) e_1 for the real symmetric tridiagonal T given by its eigenpairs.
Eigen::VectorXcd small_propagator(const Eigen::VectorXd& evals, const Eigen::MatrixXd& evecs, double dt) {
  Eigen::VectorXcd c(evals.size());
  for (Eigen::Index k = 0; k < evals.size(); ++k)
    c[k] = std::exp(cplx(0.0, -dt * evals[k])) * evecs(0, k);
  return evecs.cast<cplx>() * c;
}

}  // namespace

double KrylovPropagator::step(Vector& v, double dt) {
  const Eigen::Index n = v.size();
  const double nv = v.norm();
  if (!(nv > 0)) return dt;
  const int m_max = static_cast<int>(std::min<Eigen::Index>(max_dim_, n));
  if (V_.rows() != n || V_.cols() < m_max + 1) V_.resize(n, m_max + 1);
  std::vector<double> alpha, beta;
  V_.col(0) = v / nv;

  const double happy = 1e-12 * std::max(1.0, H_.norm_bound());
  int m = 0;
  double err = 0.0;
  Eigen::VectorXd evals;
  Eigen::MatrixXd evecs;
  Eigen::VectorXcd y;
  bool breakdown = false;

  for (int j = 0; j < m_max; ++j) {
    H_.apply(V_.col(j), w_);
    ++stats_.matvecs;
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXcd c = V_.leftCols(j + 1).adjoint() * w_;
      w_.noalias() -= V_.leftCols(j + 1) * c;
      if (pass == 0) alpha.push_back(c[j].real());
    }
    const double b = w_.norm();
    m = j + 1;

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      T(k, k) = alpha[k];
      if (k + 1 < m) T(k, k + 1) = T(k + 1, k) = beta[k];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    evals = es.eigenvalues();
    evecs = es.eigenvectors();

    if (b < happy) {
      breakdown = true;
      err = 0.0;
      break;
    }
    y = small_propagator(evals, evecs, dt);
    err = b * std::abs(y[m - 1]) * nv;
    beta.push_back(b);
    if ((m >= 4 && err < tol_) || m == m_max) break;
    V_.col(j + 1) = w_ / b;
  }

  double h = dt;
  if (!breakdown) {
    y = small_propagator(evals, evecs, h);
    err = beta.back() * std::abs(y[m - 1]) * nv;
    while (err > tol_) {
      h *= 0.5;
      ++stats_.halvings;
      if (h < 1e-8 * dt) throw NumericError("Krylov step collapsed below 1e-8 of the target step");
      y = small_propagator(evals, evecs, h);
      err = beta.back() * std::abs(y[m - 1]) * nv;
    }
  } else {
    y = small_propagator(evals, evecs, h);
  }
  v = nv * (V_.leftCols(m) * y);
  ++stats_.steps;
  stats_.max_error = std::max(stats_.max_error, err);
  return h;
}

EvolveResult evolve(const Hamiltonian& H, LatticeState state, const SimConfig& cfg, bool stop_on_completion,
                    const Monitor& monitor, const Observer& observer) {
  cfg.validate();
  if (state.basis.N() != H.basis().N() || state.basis.sector() != H.basis().sector())
    throw DomainError("state and Hamiltonian use different lattices");
  KrylovPropagator prop(H, cfg.krylov_dim, cfg.step_tol);
  EvolveResult res;

  std::vector<double> last_values;
  double last_t = 0.0;
  auto record = [&](const LatticeState& st) {
    Observation ob = observe(H, st);
    if (monitor) {
      ob.monitored = monitor(st);
      if (!last_values.empty()) {
        if (last_values.size() != ob.monitored.size()) throw DomainError("monitor changed its output size");
        for (std::size_t i = 0; i < ob.monitored.size(); ++i)
          ob.completion_rate =
              std::max(ob.completion_rate, std::abs(ob.monitored[i] - last_values[i]) / (st.time - last_t));
      } else {
        ob.completion_rate = std::numeric_limits<double>::infinity();
      }
      last_values = ob.monitored;
      last_t = st.time;
    } else {
      ob.completion_rate = std::max(ob.flux_down, ob.flux_up);
    }
    res.trajectory.push_back(ob);
    if (observer) observer(st, ob);
    return ob;
  };

  Observation ob = record(state);
  double quiet_since = -1.0;
  long sample = 0;
  while (state.time < cfg.t_max - 1e-12) {
    const double next = std::min(cfg.t_max, static_cast<double>(++sample) * cfg.sample_every);
    while (state.time < next - 1e-12) {
      const double h = prop.step(state.amp, std::min(cfg.dt, next - state.time));
      state.time += h;
    }
    state.time = next;
    ob = record(state);

    if (state.time >= cfg.min_time && ob.completion_rate < cfg.flux_threshold) {
      if (quiet_since < 0) quiet_since = state.time;
      if (!res.completed && state.time - quiet_since >= cfg.quiet_time - 1e-12) {
        res.completed = true;
        res.completion_time = state.time;
        if (stop_on_completion) break;
      }
    } else {
      quiet_since = -1.0;
    }
  }
  res.wall_probability = wall_probability(state, cfg.wall_width);
  if (res.completed && res.wall_probability > cfg.wall_tol)
    throw NumericError("probability " + std::to_string(res.wall_probability) +
                       " reached the walls before completion; increase N");
  res.stats = prop.stats();
  res.final_state = std::move(state);
  return res;
}

}  // namespace wgqed::sim
