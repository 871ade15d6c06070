#ifndef CRNSR_NUMERICS_HPP
#define CRNSR_NUMERICS_HPP

#include "crnsr/network.hpp"
#include "crnsr/verdicts.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace crnsr {

/// Rate constants for one sampled instance. Irreversible reactions have
/// backward constant 0.
struct KineticsInstance {
  Eigen::VectorXd forward;
  Eigen::VectorXd backward;
  std::string family = "mass-action";
  std::uint64_t seed = 0;
};

/// Constants log-uniform on [0.1, 10]; deterministic in `seed`.
KineticsInstance sample_kinetics(const ReactionNetwork& net, std::uint64_t seed);

struct FlowConfig {
  enum class Mode { Closed, Cfstr, Outflow };

  Mode mode = Mode::Closed;
  double q = 0.0;
  Eigen::VectorXd feed;      // x_in
  Eigen::VectorXd outflow;   // c_i in q_i(x_i) = c_i x_i

  static FlowConfig closed();
  /// dx/dt = q (x_in - x) + Gamma v(x); requires q >= 0, x_in >= 0.
  static FlowConfig cfstr(double q, Eigen::VectorXd feed);
  /// dx/dt = x_in + Gamma v(x) - c .* x; requires x_in >= 0, c > 0.
  static FlowConfig outflow_rates(Eigen::VectorXd feed, Eigen::VectorXd coefficients);

  /// Stoichiometry classes are invariant (closed, or CFSTR with q = 0).
  bool conserves_classes() const { return mode == Mode::Closed || (mode == Mode::Cfstr && q == 0.0); }
};

/// Feed and outflow coefficients log-uniform on [0.1, 10].
FlowConfig sample_outflow(std::size_t species, std::uint64_t seed);

/// Mass-action rates v_j = kf_j prod x_i^{a_ij} - kb_j prod x_i^{b_ij}, taken
/// over species allowed to influence reaction j. A product that influences an
/// irreversible reaction enters as an inhibition factor 1/(1 + x_p).
class MassActionModel {
 public:
  MassActionModel(const ReactionNetwork& net, KineticsInstance kinetics, FlowConfig flow = FlowConfig::closed());

  std::size_t species_count() const { return static_cast<std::size_t>(gamma_.rows()); }
  std::size_t reaction_count() const { return static_cast<std::size_t>(gamma_.cols()); }
  const Eigen::MatrixXd& stoichiometry() const { return gamma_; }
  const KineticsInstance& kinetics() const { return kinetics_; }
  const FlowConfig& flow() const { return flow_; }

  Eigen::VectorXd rates(const Eigen::VectorXd& x) const;
  /// V(j,i) = dv_j/dx_i, m x n.
  Eigen::MatrixXd rate_jacobian(const Eigen::VectorXd& x) const;
  /// Throws std::domain_error for a state with a negative component.
  Eigen::VectorXd rhs(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;
  /// rhs with rate factors evaluated at max(x, 0); used inside the integrator.
  Eigen::VectorXd rhs_clamped(const Eigen::VectorXd& x) const;

 private:
  struct Factor {
    Eigen::Index species;
    double order;     // exponent for a power factor
    bool inhibition;  // 1/(1+x) instead of x^order
  };
  static double value(const Factor& f, double x);
  static double slope(const Factor& f, double x);
  static double product(const std::vector<Factor>& fs, const Eigen::VectorXd& x, std::optional<Eigen::Index> skip);

  Eigen::MatrixXd gamma_;
  KineticsInstance kinetics_;
  FlowConfig flow_;
  std::vector<std::vector<Factor>> forward_;
  std::vector<std::vector<Factor>> backward_;
};

/// Convenience forms.
Eigen::VectorXd rhs(const ReactionNetwork& net, const KineticsInstance& kin, const FlowConfig& flow,
                    const Eigen::VectorXd& x);
Eigen::MatrixXd rate_jacobian(const ReactionNetwork& net, const KineticsInstance& kin, const Eigen::VectorXd& x);

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntegrationOptions {
  double tol = 1e-8;  // relative and absolute error target per step
  std::size_t max_steps = 2'000'000;
};

struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXd states;  // one row per time point

  struct Diagnostics {
    double max_error_estimate = 0.0;  // largest accepted local error estimate (absolute)
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::size_t clipped_components = 0;  // negatives in [-10 tol, 0) reset to 0
    double most_negative = 0.0;          // most negative component left unclipped
  } diagnostics;
};

/// Dormand-Prince 5(4) with step-size control, landing exactly on each grid
/// time. Throws IntegrationError on step-size underflow or step exhaustion.
Trajectory integrate(const MassActionModel& model, const Eigen::VectorXd& x0, const std::vector<double>& grid,
                     const IntegrationOptions& options = {});

Trajectory integrate(const ReactionNetwork& net, const KineticsInstance& kin, const FlowConfig& flow,
                     const Eigen::VectorXd& x0, double horizon, double tol = 1e-8, std::size_t points = 101);

std::vector<double> uniform_grid(double horizon, std::size_t points);

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, const std::vector<std::string>& names);

/// Random state with components log-uniform on [lo, hi].
Eigen::VectorXd random_positive_state(std::size_t n, std::mt19937_64& rng, double lo = 0.1, double hi = 10.0);

/// J = T' Gamma V T at state x, with T' Gamma formed exactly before rounding.
Eigen::MatrixXd recoordinatized_jacobian(const MassActionModel& model, const RationalMatrix& gamma,
                                         const ConeBasis& cone, const Eigen::VectorXd& x);

struct CooperativityReport {
  bool passed = true;
  std::size_t samples = 0;
  double min_off_diagonal = 0.0;
  Eigen::VectorXd worst_state;
};

CooperativityReport cooperativity_check(const ReactionNetwork& net, const KineticsInstance& kin,
                                        const ConeBasis& cone, std::size_t samples, std::uint64_t seed,
                                        double tolerance = 1e-12);

struct OrderPreservationOptions {
  double relative_tolerance = 1e-6;  // violation if beta_k(t) < -tol * |beta(0)|
  double integration_tol = 1e-8;
  std::size_t grid_points = 101;
};

struct OrderPreservationReport {
  bool passed = true;
  std::size_t pairs = 0;
  std::size_t violations = 0;
  /// Minimum over pairs, times and coordinates of beta_k(t) / |beta(0)|.
  double worst_normalized = 0.0;
  double max_error_estimate = 0.0;
};

/// Integrates ordered pairs x0 = y0 + T alpha (alpha >= 0) and checks that
/// x(t) - y(t) = T beta(t) keeps beta(t) >= 0 up to tolerance.
OrderPreservationReport order_preservation_test(const ReactionNetwork& net, const KineticsInstance& kin,
                                                const ConeBasis& cone, const FlowConfig& flow, std::size_t pairs,
                                                double horizon, std::uint64_t seed,
                                                const OrderPreservationOptions& options = {});

struct ConservationReport {
  enum class Status { Conserved, Violated, Skipped };
  Status status = Status::Skipped;
  std::size_t vectors = 0;
  /// max over vectors and times of |w.x(t) - w.x0| / (1 + |w.x0|)
  double max_relative_deviation = 0.0;
};

ConservationReport conservation_check(const ReactionNetwork& net, const KineticsInstance& kin,
                                      const FlowConfig& flow, const Eigen::VectorXd& x0, double horizon,
                                      double tolerance = 1e-6);

struct EquilibriaOptions {
  double tol = 1e-10;               // convergence: |G|_inf <= tol (1 + |x|_inf)
  double dedup = 1e-4;              // relative distance below which roots coincide
  std::size_t max_iterations = 200;
  /// Closed systems: a point fixing the stoichiometry class searched.
  /// Defaults to a seeded random positive state.
  std::optional<Eigen::VectorXd> class_point;
};

struct Equilibrium {
  Eigen::VectorXd state;
  double residual = 0.0;
};

struct EquilibriaReport {
  std::vector<Equilibrium> roots;  // distinct, sorted lexicographically
  std::size_t converged = 0;
  std::size_t failed = 0;
  std::optional<Eigen::VectorXd> class_point;
};

/// Damped Newton (step halved until the residual drops, at most 40 times)
/// from `starts` random positive points on f(x) = 0, augmented by the
/// conservation constraints when classes are invariant.
EquilibriaReport equilibria_search(const ReactionNetwork& net, const KineticsInstance& kin, const FlowConfig& flow,
                                   std::size_t starts, std::uint64_t seed, const EquilibriaOptions& options = {});

}  // namespace crnsr

#endif  // CRNSR_NUMERICS_HPP
