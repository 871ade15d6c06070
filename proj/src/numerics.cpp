#include "crnsr/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace crnsr {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log10(lo), std::log10(hi));
  return std::pow(10.0, u(rng));
}

bool has_backward_term(const Reaction& r) { return r.reversible; }

}  // namespace

KineticsInstance sample_kinetics(const ReactionNetwork& net, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  KineticsInstance k;
  k.seed = seed;
  const auto m = static_cast<Eigen::Index>(net.reaction_count());
  k.forward.resize(m);
  k.backward.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    k.forward(j) = log_uniform(rng, 0.1, 10.0);
    const double b = log_uniform(rng, 0.1, 10.0);
    k.backward(j) = has_backward_term(net.reactions()[static_cast<std::size_t>(j)]) ? b : 0.0;
  }
  return k;
}

FlowConfig FlowConfig::closed() { return {}; }

FlowConfig FlowConfig::cfstr(double q, Eigen::VectorXd feed) {
  if (!(q >= 0.0)) throw std::invalid_argument("CFSTR flow rate must be nonnegative");
  if (feed.size() > 0 && feed.minCoeff() < 0.0) throw std::invalid_argument("feed concentrations must be nonnegative");
  FlowConfig f;
  f.mode = Mode::Cfstr;
  f.q = q;
  f.feed = std::move(feed);
  return f;
}

FlowConfig FlowConfig::outflow_rates(Eigen::VectorXd feed, Eigen::VectorXd coefficients) {
  if (feed.size() != coefficients.size()) throw std::invalid_argument("feed and outflow sizes differ");
  if (feed.size() > 0 && feed.minCoeff() < 0.0) throw std::invalid_argument("feed concentrations must be nonnegative");
  if (coefficients.size() > 0 && !(coefficients.minCoeff() > 0.0)) {
    throw std::invalid_argument("outflow coefficients must be positive");
  }
  FlowConfig f;
  f.mode = Mode::Outflow;
  f.feed = std::move(feed);
  f.outflow = std::move(coefficients);
  return f;
}

FlowConfig sample_outflow(std::size_t species, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const auto n = static_cast<Eigen::Index>(species);
  Eigen::VectorXd feed(n);
  Eigen::VectorXd c(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    feed(i) = log_uniform(rng, 0.1, 10.0);
    c(i) = log_uniform(rng, 0.1, 10.0);
  }
  return FlowConfig::outflow_rates(std::move(feed), std::move(c));
}

// ---------------------------------------------------------------------------

MassActionModel::MassActionModel(const ReactionNetwork& net, KineticsInstance kinetics, FlowConfig flow)
    : gamma_(to_double(stoichiometric_matrix(net))), kinetics_(std::move(kinetics)), flow_(std::move(flow)) {
  const auto n = gamma_.rows();
  const auto m = gamma_.cols();
  if (kinetics_.forward.size() != m || kinetics_.backward.size() != m) {
    throw std::invalid_argument("kinetics size does not match the reaction count");
  }
  if (flow_.mode == FlowConfig::Mode::Cfstr && flow_.feed.size() != n) {
    if (flow_.feed.size() == 0) {
      flow_.feed = Eigen::VectorXd::Zero(n);
    } else {
      throw std::invalid_argument("feed size does not match the species count");
    }
  }
  if (flow_.mode == FlowConfig::Mode::Outflow && flow_.feed.size() != n) {
    throw std::invalid_argument("outflow configuration size does not match the species count");
  }
  for (const auto& r : net.reactions()) {
    std::vector<Factor> fwd;
    std::vector<Factor> bwd;
    for (const auto& t : r.left) {
      if (r.is_influenced_by(t.species)) {
        fwd.push_back({static_cast<Eigen::Index>(t.species), t.coefficient.convert_to<double>(), false});
      }
    }
    for (const auto& t : r.right) {
      if (!r.is_influenced_by(t.species)) continue;
      if (r.reversible) {
        bwd.push_back({static_cast<Eigen::Index>(t.species), t.coefficient.convert_to<double>(), false});
      } else {
        fwd.push_back({static_cast<Eigen::Index>(t.species), 1.0, true});
      }
    }
    forward_.push_back(std::move(fwd));
    backward_.push_back(std::move(bwd));
  }
}

double MassActionModel::value(const Factor& f, double x) {
  if (f.inhibition) return 1.0 / (1.0 + x);
  return f.order == 1.0 ? x : std::pow(x, f.order);
}

double MassActionModel::slope(const Factor& f, double x) {
  if (f.inhibition) return -1.0 / ((1.0 + x) * (1.0 + x));
  if (f.order == 1.0) return 1.0;
  return f.order * std::pow(x, f.order - 1.0);
}

double MassActionModel::product(const std::vector<Factor>& fs, const Eigen::VectorXd& x,
                                std::optional<Eigen::Index> skip) {
  double p = 1.0;
  for (const auto& f : fs) {
    if (skip && f.species == *skip) continue;
    p *= value(f, x(f.species));
  }
  return p;
}

Eigen::VectorXd MassActionModel::rates(const Eigen::VectorXd& x) const {
  Eigen::VectorXd v(gamma_.cols());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const auto jj = static_cast<std::size_t>(j);
    v(j) = kinetics_.forward(j) * product(forward_[jj], x, std::nullopt);
    if (kinetics_.backward(j) != 0.0) v(j) -= kinetics_.backward(j) * product(backward_[jj], x, std::nullopt);
  }
  return v;
}

Eigen::MatrixXd MassActionModel::rate_jacobian(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(gamma_.cols(), gamma_.rows());
  for (Eigen::Index j = 0; j < jac.rows(); ++j) {
    const auto jj = static_cast<std::size_t>(j);
    for (const auto& f : forward_[jj]) {
      jac(j, f.species) += kinetics_.forward(j) * slope(f, x(f.species)) * product(forward_[jj], x, f.species);
    }
    if (kinetics_.backward(j) == 0.0) continue;
    for (const auto& f : backward_[jj]) {
      jac(j, f.species) -= kinetics_.backward(j) * slope(f, x(f.species)) * product(backward_[jj], x, f.species);
    }
  }
  return jac;
}

Eigen::VectorXd MassActionModel::rhs(const Eigen::VectorXd& x) const {
  if (x.size() != gamma_.rows()) throw std::invalid_argument("state size does not match the species count");
  if (x.size() > 0 && x.minCoeff() < 0.0) throw std::domain_error("state has a negative component");
  return rhs_clamped(x);
}

Eigen::VectorXd MassActionModel::rhs_clamped(const Eigen::VectorXd& x) const {
  Eigen::VectorXd dx = gamma_ * rates(x.cwiseMax(0.0));
  switch (flow_.mode) {
    case FlowConfig::Mode::Closed:
      break;
    case FlowConfig::Mode::Cfstr:
      dx += flow_.q * (flow_.feed - x);
      break;
    case FlowConfig::Mode::Outflow:
      dx += flow_.feed - flow_.outflow.cwiseProduct(x);
      break;
  }
  return dx;
}

Eigen::MatrixXd MassActionModel::jacobian(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd jac = gamma_ * rate_jacobian(x);
  switch (flow_.mode) {
    case FlowConfig::Mode::Closed:
      break;
    case FlowConfig::Mode::Cfstr:
      jac.diagonal().array() -= flow_.q;
      break;
    case FlowConfig::Mode::Outflow:
      jac.diagonal() -= flow_.outflow;
      break;
  }
  return jac;
}

Eigen::VectorXd rhs(const ReactionNetwork& net, const KineticsInstance& kin, const FlowConfig& flow,
                    const Eigen::VectorXd& x) {
  return MassActionModel(net, kin, flow).rhs(x);
}

Eigen::MatrixXd rate_jacobian(const ReactionNetwork& net, const KineticsInstance& kin, const Eigen::VectorXd& x) {
  return MassActionModel(net, kin).rate_jacobian(x);
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4)

namespace {

constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                 kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0, kB5 = -2187.0 / 6784.0,
                 kB6 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0, kE5 = -17253.0 / 339200.0,
                 kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

}  // namespace

Trajectory integrate(const MassActionModel& model, const Eigen::VectorXd& x0, const std::vector<double>& grid,
                     const IntegrationOptions& options) {
  if (grid.empty()) throw std::invalid_argument("empty time grid");
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("time grid must be increasing");
  if (x0.size() != static_cast<Eigen::Index>(model.species_count())) {
    throw std::invalid_argument("initial state size does not match the species count");
  }
  if (x0.size() > 0 && x0.minCoeff() < 0.0) throw std::domain_error("initial state has a negative component");

  const double tol = options.tol;
  Trajectory traj;
  traj.times = grid;
  traj.states.resize(static_cast<Eigen::Index>(grid.size()), x0.size());
  traj.states.row(0) = x0.transpose();

  auto f = [&](const Eigen::VectorXd& y) { return model.rhs_clamped(y); };
  const double span = grid.back() - grid.front();
  double t = grid.front();
  double h = 1e-3 * std::max(span, 1e-12);
  Eigen::VectorXd y = x0;
  Eigen::VectorXd k1 = f(y);
  std::size_t steps = 0;

  for (std::size_t g = 1; g < grid.size(); ++g) {
    const double target = grid[g];
    while (t < target) {
      if (++steps > options.max_steps) throw IntegrationError("step budget exhausted at t = " + std::to_string(t));
      const bool to_grid = h >= target - t;
      const double step = to_grid ? target - t : h;

      const Eigen::VectorXd k2 = f(y + step * (kA21 * k1));
      const Eigen::VectorXd k3 = f(y + step * (kA31 * k1 + kA32 * k2));
      const Eigen::VectorXd k4 = f(y + step * (kA41 * k1 + kA42 * k2 + kA43 * k3));
      const Eigen::VectorXd k5 = f(y + step * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
      const Eigen::VectorXd k6 = f(y + step * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
      Eigen::VectorXd y_new = y + step * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
      const Eigen::VectorXd k7 = f(y_new);
      const Eigen::VectorXd err_vec =
          step * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);

      const Eigen::ArrayXd scale = tol + tol * y.array().abs().max(y_new.array().abs());
      const double err = std::sqrt((err_vec.array() / scale).square().mean());
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);

      if (err <= 1.0) {
        t = to_grid ? target : t + step;
        traj.diagnostics.max_error_estimate =
            std::max(traj.diagnostics.max_error_estimate, err_vec.cwiseAbs().maxCoeff());
        ++traj.diagnostics.accepted_steps;
        bool clipped = false;
        for (Eigen::Index i = 0; i < y_new.size(); ++i) {
          if (y_new(i) >= 0.0) continue;
          if (y_new(i) >= -10.0 * tol) {
            y_new(i) = 0.0;
            ++traj.diagnostics.clipped_components;
            clipped = true;
          } else {
            traj.diagnostics.most_negative = std::min(traj.diagnostics.most_negative, y_new(i));
          }
        }
        y = std::move(y_new);
        k1 = clipped ? f(y) : k7;
        h = std::max(h, step) * factor;
        if (to_grid) h = std::max(h, step * factor);
      } else {
        ++traj.diagnostics.rejected_steps;
        h = step * factor;
      }
      if (h < 1e-14 * std::max(1.0, std::abs(t))) {
        throw IntegrationError("step size underflow at t = " + std::to_string(t) + " (stiff or singular system)");
      }
    }
    traj.states.row(static_cast<Eigen::Index>(g)) = y.transpose();
  }
  return traj;
}

std::vector<double> uniform_grid(double horizon, std::size_t points) {
  if (points < 2) throw std::invalid_argument("a grid needs at least two points");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k) grid[k] = horizon * static_cast<double>(k) / static_cast<double>(points - 1);
  grid.back() = horizon;
  return grid;
}

Trajectory integrate(const ReactionNetwork& net, const KineticsInstance& kin, const FlowConfig& flow,
                     const Eigen::VectorXd& x0, double horizon, double tol, std::size_t points) {
  return integrate(MassActionModel(net, kin, flow), x0, uniform_grid(horizon, points), {tol});
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, const std::vector<std::string>& names) {
  out << "t";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  out << std::setprecision(12);
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    out << trajectory.times[k];
    for (Eigen::Index i = 0; i < trajectory.states.cols(); ++i) {
      out << ',' << trajectory.states(static_cast<Eigen::Index>(k), i);
    }
    out << '\n';
  }
}

Eigen::VectorXd random_positive_state(std::size_t n, std::mt19937_64& rng, double lo, double hi) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = log_uniform(rng, lo, hi);
  return x;
}

// ---------------------------------------------------------------------------
// batteries

Eigen::MatrixXd recoordinatized_jacobian(const MassActionModel& model, const RationalMatrix& gamma,
                                         const ConeBasis& cone, const Eigen::VectorXd& x) {
  const Eigen::MatrixXd reduced = to_double(RationalMatrix(cone.left_inverse() * gamma));
  return reduced * model.rate_jacobian(x) * to_double(cone.generators());
}

CooperativityReport cooperativity_check(const ReactionNetwork& net, const KineticsInstance& kin,
                                        const ConeBasis& cone, std::size_t samples, std::uint64_t seed,
                                        double tolerance) {
  const RationalMatrix gamma = stoichiometric_matrix(net);
  if (cone.generators().rows() != gamma.rows()) throw std::invalid_argument("cone dimension does not match");
  const MassActionModel model(net, kin);
  const Eigen::MatrixXd reduced = to_double(RationalMatrix(cone.left_inverse() * gamma));
  const Eigen::MatrixXd t = to_double(cone.generators());
  std::mt19937_64 rng(seed);

  CooperativityReport report;
  report.samples = samples;
  report.min_off_diagonal = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    const Eigen::VectorXd x = random_positive_state(net.species_count(), rng);
    const Eigen::MatrixXd j = reduced * model.rate_jacobian(x) * t;
    for (Eigen::Index a = 0; a < j.rows(); ++a) {
      for (Eigen::Index b = 0; b < j.cols(); ++b) {
        if (a != b && j(a, b) < report.min_off_diagonal) {
          report.min_off_diagonal = j(a, b);
          report.worst_state = x;
        }
      }
    }
  }
  if (!std::isfinite(report.min_off_diagonal)) report.min_off_diagonal = 0.0;
  report.passed = report.min_off_diagonal >= -tolerance;
  return report;
}

OrderPreservationReport order_preservation_test(const ReactionNetwork& net, const KineticsInstance& kin,
                                                const ConeBasis& cone, const FlowConfig& flow, std::size_t pairs,
                                                double horizon, std::uint64_t seed,
                                                const OrderPreservationOptions& options) {
  if (flow.mode == FlowConfig::Mode::Outflow) {
    throw std::invalid_argument("order preservation is tested for closed and CFSTR flows only");
  }
  const MassActionModel model(net, kin, flow);
  const Eigen::MatrixXd t = to_double(cone.generators());
  const Eigen::MatrixXd t_inv = to_double(cone.left_inverse());
  if (t.rows() != static_cast<Eigen::Index>(net.species_count())) {
    throw std::invalid_argument("cone dimension does not match");
  }
  const auto grid = uniform_grid(horizon, options.grid_points);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  OrderPreservationReport report;
  report.pairs = pairs;
  report.worst_normalized = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < pairs; ++p) {
    const Eigen::VectorXd y0 = random_positive_state(net.species_count(), rng);
    Eigen::VectorXd alpha(t.cols());
    for (Eigen::Index k = 0; k < alpha.size(); ++k) alpha(k) = unit(rng);
    // shrink alpha until the upper point is inside the orthant
    const Eigen::VectorXd shift = t * alpha;
    double scale = 1.0;
    for (Eigen::Index i = 0; i < shift.size(); ++i) {
      if (shift(i) < 0.0) scale = std::min(scale, 0.5 * y0(i) / -shift(i));
    }
    alpha *= scale;
    const Eigen::VectorXd x0 = (y0 + t * alpha).cwiseMax(0.0);

    const Trajectory upper = integrate(model, x0, grid, {options.integration_tol});
    const Trajectory lower = integrate(model, y0, grid, {options.integration_tol});
    report.max_error_estimate = std::max({report.max_error_estimate, upper.diagnostics.max_error_estimate,
                                          lower.diagnostics.max_error_estimate});
    const double norm0 = alpha.norm();
    const double threshold = options.relative_tolerance * norm0;
    bool violated = false;
    for (Eigen::Index k = 0; k < upper.states.rows(); ++k) {
      const Eigen::VectorXd beta = t_inv * (upper.states.row(k) - lower.states.row(k)).transpose();
      const double lowest = beta.minCoeff();
      if (norm0 > 0.0) report.worst_normalized = std::min(report.worst_normalized, lowest / norm0);
      if (lowest < -threshold) violated = true;
    }
    if (violated) ++report.violations;
  }
  if (!std::isfinite(report.worst_normalized)) report.worst_normalized = 0.0;
  report.passed = report.violations == 0;
  return report;
}

ConservationReport conservation_check(const ReactionNetwork& net, const KineticsInstance& kin,
                                      const FlowConfig& flow, const Eigen::VectorXd& x0, double horizon,
                                      double tolerance) {
  ConservationReport report;
  if (!flow.conserves_classes()) return report;
  const Eigen::MatrixXd w = to_double(conserved_vectors(stoichiometric_matrix(net)));
  report.vectors = static_cast<std::size_t>(w.cols());
  report.status = ConservationReport::Status::Conserved;
  if (w.cols() == 0) return report;
  const Trajectory traj = integrate(net, kin, flow, x0, horizon);
  const Eigen::VectorXd initial = w.transpose() * x0;
  for (Eigen::Index k = 0; k < traj.states.rows(); ++k) {
    const Eigen::VectorXd now = w.transpose() * traj.states.row(k).transpose();
    for (Eigen::Index c = 0; c < now.size(); ++c) {
      const double dev = std::abs(now(c) - initial(c)) / (1.0 + std::abs(initial(c)));
      report.max_relative_deviation = std::max(report.max_relative_deviation, dev);
    }
  }
  if (report.max_relative_deviation > tolerance) report.status = ConservationReport::Status::Violated;
  return report;
}

EquilibriaReport equilibria_search(const ReactionNetwork& net, const KineticsInstance& kin, const FlowConfig& flow,
                                   std::size_t starts, std::uint64_t seed, const EquilibriaOptions& options) {
  const MassActionModel model(net, kin, flow);
  const auto n = static_cast<Eigen::Index>(net.species_count());
  std::mt19937_64 rng(seed);

  Eigen::MatrixXd w(n, 0);
  EquilibriaReport report;
  if (flow.conserves_classes()) {
    w = to_double(conserved_vectors(stoichiometric_matrix(net)));
    if (w.cols() > 0) {
      report.class_point = options.class_point ? *options.class_point
                                               : random_positive_state(net.species_count(), rng);
    }
  }
  const Eigen::VectorXd anchor = report.class_point ? *report.class_point : Eigen::VectorXd::Zero(n);

  auto residual = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd g(n + w.cols());
    g << model.rhs(x), w.transpose() * (x - anchor);
    return g;
  };
  auto converged = [&](const Eigen::VectorXd& g, const Eigen::VectorXd& x) {
    return g.lpNorm<Eigen::Infinity>() <= options.tol * (1.0 + x.lpNorm<Eigen::Infinity>());
  };

  std::vector<Equilibrium> found;
  for (std::size_t s = 0; s < starts; ++s) {
    Eigen::VectorXd x = random_positive_state(net.species_count(), rng, 0.01, 10.0);
    Eigen::VectorXd g = residual(x);
    bool ok = converged(g, x);
    for (std::size_t it = 0; it < options.max_iterations && !ok; ++it) {
      Eigen::MatrixXd jac(n + w.cols(), n);
      jac << model.jacobian(x), w.transpose();
      const Eigen::VectorXd dx = jac.colPivHouseholderQr().solve(-g);
      double lambda = 1.0;
      bool stepped = false;
      const double current = g.norm();
      for (int halving = 0; halving <= 40; ++halving, lambda *= 0.5) {
        const Eigen::VectorXd trial = x + lambda * dx;
        if (trial.minCoeff() < 0.0) continue;
        const Eigen::VectorXd g_trial = residual(trial);
        if (g_trial.norm() < current) {
          x = trial;
          g = g_trial;
          stepped = true;
          break;
        }
      }
      if (!stepped) break;
      ok = converged(g, x);
    }
    if (!ok) {
      ++report.failed;
      continue;
    }
    ++report.converged;
    const bool duplicate = std::any_of(found.begin(), found.end(), [&](const Equilibrium& e) {
      const double scale = std::max({x.norm(), e.state.norm(), 1e-300});
      return (x - e.state).norm() <= options.dedup * scale;
    });
    if (!duplicate) found.push_back({x, g.lpNorm<Eigen::Infinity>()});
  }
  std::sort(found.begin(), found.end(), [](const Equilibrium& a, const Equilibrium& b) {
    return std::lexicographical_compare(a.state.begin(), a.state.end(), b.state.begin(), b.state.end());
  });
  report.roots = std::move(found);
  return report;
}

}  // namespace crnsr
