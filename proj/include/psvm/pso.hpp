#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "psvm/rng.hpp"

namespace psvm {

/// Bounded search box in external units. Dimensions flagged log_scale are
/// searched in log10 space: the optimizer samples, moves and clamps on the
/// internal (log) coordinates, and to_external() maps back.
struct SearchSpace {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    std::vector<bool> log_scale;

    int dims() const { return static_cast<int>(lower.size()); }

    /// lower <= upper per dimension (equality collapses the dimension to a
    /// point); log-scaled dimensions need strictly positive lower bounds.
    void validate() const;

    Eigen::VectorXd internal_lower() const;
    Eigen::VectorXd internal_upper() const;
    /// Maps internal coordinates back to external units, clamped into
    /// [lower, upper] so round-off can never escape the box.
    Eigen::VectorXd to_external(const Eigen::VectorXd& internal) const;
    Eigen::VectorXd to_internal(const Eigen::VectorXd& external) const;
};

/// Positions and velocities live in the space's internal coordinates.
struct Particle {
    Eigen::VectorXd position;
    Eigen::VectorXd velocity;
    Eigen::VectorXd best_position;
    double best_fitness = 0.0;
};

enum class InertiaKind { LinearDecay, Constant, Random };

struct InertiaStrategy {
    InertiaKind kind = InertiaKind::LinearDecay;
    double value = 0.0; // used by Constant only
};

enum class UpdateRule { Modified, Standard };

struct PsoConfig {
    int swarm_size = 30;
    int max_iters = 50;
    double c1 = 2.05; // cognitive constant
    double c2 = 2.05; // social constant
    InertiaStrategy inertia{};
    double vmax_fraction = 0.5; // Vmax as a fraction of each dimension's range
    UpdateRule update_rule = UpdateRule::Modified;
    std::uint64_t seed = 0;
    /// Fitness evaluation threads: 1 = serial, 0 = hardware concurrency.
    /// Results are identical either way.
    unsigned eval_threads = 1;
};

struct SwarmState {
    std::vector<Particle> particles;
    Eigen::VectorXd global_best_position;
    double global_best_fitness = 0.0;
    int iteration = 0;
};

/// Immutable per-iteration view handed to observers. iteration 0 is the
/// state right after initialization.
struct IterationSnapshot {
    int iteration = 0;
    double global_best_fitness = 0.0;
    Eigen::VectorXd global_best_position;
};

using IterationObserver = std::function<void(const IterationSnapshot&)>;

struct OptimizeResult {
    Eigen::VectorXd best_position; // internal coordinates
    double best_fitness = 0.0;
    /// Global best after initialization and after each iteration
    /// (max_iters + 1 entries, non-decreasing).
    std::vector<double> history;
};

/// Convergence factor 2 / |2 - C - sqrt(C^2 - 4C)| with C = c1 + c2.
/// Throws std::invalid_argument when C <= 4 (no real square root).
double constriction_factor(double c1, double c2);

/// LinearDecay: 0.9 - (t / t_max) * 0.5. Constant: the stored value.
/// Random: a fresh draw in [0.4, 0.9].
double inertia_weight(int t, int t_max, const InertiaStrategy& strategy,
                      std::mt19937_64& rng);

/// One velocity/position update for a single particle.
/// Modified rule: V <- lambda * [omega V + c1 r1 (pbest - X) + c2 r2 (gbest - X)],
/// clamp to +-Vmax, then X <- X + omega * V.
/// Standard rule: same bracket without lambda, then X <- X + V.
/// r1, r2 are fresh per-dimension draws from rng. Positions are clamped to
/// the box afterwards, zeroing the violating velocity component.
Particle step_particle(const Particle& p, const Eigen::VectorXd& gbest, double omega,
                       double lambda, const PsoConfig& cfg, const SearchSpace& space,
                       std::mt19937_64& rng);

namespace detail {
/// Shared update kernel. The Modified rule is (omega, lambda, pos_scale = omega);
/// the Standard rule is (omega, 1, 1). Forcing lambda = pos_scale = 1 under
/// Modified must reproduce the Standard trajectory exactly; tests rely on it.
Particle step_particle_impl(const Particle& p, const Eigen::VectorXd& gbest,
                            double omega, double lambda, double pos_scale,
                            const PsoConfig& cfg, const SearchSpace& space,
                            std::mt19937_64& rng);
} // namespace detail

/// Maximizes the objective over the box. Runs exactly cfg.max_iters
/// iterations after initialization. Fully deterministic for a fixed seed:
/// each particle draws from its own substream of cfg.seed, so concurrent
/// fitness evaluation cannot reorder randomness. Objective failures abort
/// with iteration and particle context.
OptimizeResult optimize(const std::function<double(const Eigen::VectorXd&)>& objective,
                        const SearchSpace& space, const PsoConfig& cfg,
                        const IterationObserver& on_iteration = {});

} // namespace psvm
