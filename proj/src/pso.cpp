#include "psvm/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <fmt/core.h>

namespace psvm {

namespace {

void validate_config(const PsoConfig& cfg) {
    if (cfg.swarm_size < 1) {
        throw std::invalid_argument(fmt::format("pso: swarm_size must be >= 1, got {}",
                                                cfg.swarm_size));
    }
    if (cfg.max_iters < 1) {
        throw std::invalid_argument(fmt::format("pso: max_iters must be >= 1, got {}",
                                                cfg.max_iters));
    }
    if (!(cfg.vmax_fraction > 0.0) || cfg.vmax_fraction > 1.0) {
        throw std::invalid_argument(
            fmt::format("pso: vmax_fraction must be in (0, 1], got {}", cfg.vmax_fraction));
    }
    if (cfg.update_rule == UpdateRule::Modified) {
        constriction_factor(cfg.c1, cfg.c2); // throws when c1 + c2 <= 4
    }
}

Eigen::VectorXd vmax_of(const SearchSpace& space, double fraction) {
    return fraction * (space.internal_upper() - space.internal_lower());
}

// Evaluate all positions, serially or on a small worker pool. Pure objective
// plus per-index result slots keep the outcome identical in both modes.
std::vector<double> evaluate_all(const std::function<double(const Eigen::VectorXd&)>& objective,
                                 const std::vector<Eigen::VectorXd>& positions,
                                 unsigned threads, int iteration) {
    const std::size_t n = positions.size();
    std::vector<double> fitness(n, 0.0);
    std::vector<std::string> errors(n);
    std::vector<unsigned char> failed(n, 0); // plain bytes: vector<bool> bit-packing races

    auto eval_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                fitness[i] = objective(positions[i]);
            } catch (const std::exception& e) {
                failed[i] = 1;
                errors[i] = e.what();
            } catch (...) {
                failed[i] = 1;
                errors[i] = "unknown error";
            }
        }
    };

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n));
    if (workers <= 1) {
        eval_range(0, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = static_cast<std::size_t>(w) * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(eval_range, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (failed[i]) {
            throw std::runtime_error(fmt::format(
                "objective failed at iteration {}, particle {}: {}", iteration, i, errors[i]));
        }
    }
    return fitness;
}

} // namespace

void SearchSpace::validate() const {
    if (lower.size() < 1) {
        throw std::invalid_argument("SearchSpace: need at least one dimension");
    }
    if (upper.size() != lower.size() ||
        static_cast<Eigen::Index>(log_scale.size()) != lower.size()) {
        throw std::invalid_argument("SearchSpace: lower/upper/log_scale sizes disagree");
    }
    for (Eigen::Index i = 0; i < lower.size(); ++i) {
        if (!(lower[i] <= upper[i])) {
            throw std::invalid_argument(
                fmt::format("SearchSpace: lower[{}] = {} exceeds upper[{}] = {}", i, lower[i],
                            i, upper[i]));
        }
        if (log_scale[static_cast<std::size_t>(i)] && !(lower[i] > 0.0)) {
            throw std::invalid_argument(
                fmt::format("SearchSpace: log-scaled dimension {} needs lower > 0, got {}", i,
                            lower[i]));
        }
    }
}

Eigen::VectorXd SearchSpace::internal_lower() const {
    Eigen::VectorXd out = lower;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (log_scale[static_cast<std::size_t>(i)]) out[i] = std::log10(out[i]);
    }
    return out;
}

Eigen::VectorXd SearchSpace::internal_upper() const {
    Eigen::VectorXd out = upper;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (log_scale[static_cast<std::size_t>(i)]) out[i] = std::log10(out[i]);
    }
    return out;
}

Eigen::VectorXd SearchSpace::to_external(const Eigen::VectorXd& internal) const {
    Eigen::VectorXd out(internal.size());
    for (Eigen::Index i = 0; i < internal.size(); ++i) {
        double v = log_scale[static_cast<std::size_t>(i)] ? std::pow(10.0, internal[i])
                                                          : internal[i];
        out[i] = std::clamp(v, lower[i], upper[i]);
    }
    return out;
}

Eigen::VectorXd SearchSpace::to_internal(const Eigen::VectorXd& external) const {
    Eigen::VectorXd out(external.size());
    for (Eigen::Index i = 0; i < external.size(); ++i) {
        out[i] = log_scale[static_cast<std::size_t>(i)] ? std::log10(external[i]) : external[i];
    }
    return out;
}

double constriction_factor(double c1, double c2) {
    const double c = c1 + c2;
    if (!(c > 4.0)) {
        throw std::invalid_argument(fmt::format(
            "constriction_factor: c1 + c2 must exceed 4 for a real root, got {}", c));
    }
    return 2.0 / std::abs(2.0 - c - std::sqrt(c * c - 4.0 * c));
}

double inertia_weight(int t, int t_max, const InertiaStrategy& strategy,
                      std::mt19937_64& rng) {
    if (t_max < 1 || t < 0 || t > t_max) {
        throw std::invalid_argument(
            fmt::format("inertia_weight: need 0 <= t <= t_max with t_max >= 1, got t = {}, "
                        "t_max = {}",
                        t, t_max));
    }
    switch (strategy.kind) {
    case InertiaKind::LinearDecay:
        return 0.9 - (static_cast<double>(t) / static_cast<double>(t_max)) * 0.5;
    case InertiaKind::Constant:
        return strategy.value;
    case InertiaKind::Random:
        return uniform(rng, 0.4, 0.9);
    }
    return 0.9;
}

namespace detail {

Particle step_particle_impl(const Particle& p, const Eigen::VectorXd& gbest, double omega,
                            double lambda, double pos_scale, const PsoConfig& cfg,
                            const SearchSpace& space, std::mt19937_64& rng) {
    const Eigen::VectorXd lo = space.internal_lower();
    const Eigen::VectorXd hi = space.internal_upper();
    const Eigen::VectorXd vmax = vmax_of(space, cfg.vmax_fraction);

    Particle out = p;
    for (Eigen::Index i = 0; i < p.position.size(); ++i) {
        const double r1 = uniform01(rng);
        const double r2 = uniform01(rng);
        double v = lambda * (omega * p.velocity[i] +
                             cfg.c1 * r1 * (p.best_position[i] - p.position[i]) +
                             cfg.c2 * r2 * (gbest[i] - p.position[i]));
        v = std::clamp(v, -vmax[i], vmax[i]);
        double x = p.position[i] + pos_scale * v;
        if (x < lo[i]) {
            x = lo[i];
            v = 0.0;
        } else if (x > hi[i]) {
            x = hi[i];
            v = 0.0;
        }
        out.velocity[i] = v;
        out.position[i] = x;
    }
    return out;
}

} // namespace detail

Particle step_particle(const Particle& p, const Eigen::VectorXd& gbest, double omega,
                       double lambda, const PsoConfig& cfg, const SearchSpace& space,
                       std::mt19937_64& rng) {
    if (cfg.update_rule == UpdateRule::Modified) {
        return detail::step_particle_impl(p, gbest, omega, lambda, omega, cfg, space, rng);
    }
    return detail::step_particle_impl(p, gbest, omega, 1.0, 1.0, cfg, space, rng);
}

OptimizeResult optimize(const std::function<double(const Eigen::VectorXd&)>& objective,
                        const SearchSpace& space, const PsoConfig& cfg,
                        const IterationObserver& on_iteration) {
    space.validate();
    validate_config(cfg);

    const int dims = space.dims();
    const Eigen::VectorXd lo = space.internal_lower();
    const Eigen::VectorXd hi = space.internal_upper();
    const Eigen::VectorXd vmax = vmax_of(space, cfg.vmax_fraction);
    const double lambda =
        cfg.update_rule == UpdateRule::Modified ? constriction_factor(cfg.c1, cfg.c2) : 1.0;

    // One substream per particle; the stream one past the last particle
    // drives swarm-level draws (random inertia).
    std::vector<std::mt19937_64> streams;
    streams.reserve(static_cast<std::size_t>(cfg.swarm_size));
    for (int i = 0; i < cfg.swarm_size; ++i) {
        streams.push_back(substream(cfg.seed, static_cast<std::uint64_t>(i)));
    }
    auto swarm_rng = substream(cfg.seed, static_cast<std::uint64_t>(cfg.swarm_size));

    SwarmState state;
    state.particles.resize(static_cast<std::size_t>(cfg.swarm_size));
    for (int i = 0; i < cfg.swarm_size; ++i) {
        auto& p = state.particles[static_cast<std::size_t>(i)];
        auto& rng = streams[static_cast<std::size_t>(i)];
        p.position.resize(dims);
        p.velocity.resize(dims);
        for (int d = 0; d < dims; ++d) {
            p.position[d] = uniform(rng, lo[d], hi[d]);
            p.velocity[d] = uniform(rng, -vmax[d], vmax[d]);
        }
        p.best_position = p.position;
        p.best_fitness = -std::numeric_limits<double>::infinity();
    }

    OptimizeResult result;
    result.history.reserve(static_cast<std::size_t>(cfg.max_iters) + 1);

    std::vector<Eigen::VectorXd> positions(state.particles.size());
    auto gather_positions = [&] {
        for (std::size_t i = 0; i < state.particles.size(); ++i) {
            positions[i] = state.particles[i].position;
        }
    };

    // Personal bests replace on strictly greater fitness; the global best
    // scan runs in ascending particle order, so ties keep the first finder.
    state.global_best_fitness = -std::numeric_limits<double>::infinity();
    auto absorb_fitness = [&](const std::vector<double>& fitness) {
        for (std::size_t i = 0; i < state.particles.size(); ++i) {
            auto& p = state.particles[i];
            if (fitness[i] > p.best_fitness) {
                p.best_fitness = fitness[i];
                p.best_position = p.position;
            }
            if (p.best_fitness > state.global_best_fitness) {
                state.global_best_fitness = p.best_fitness;
                state.global_best_position = p.best_position;
            }
        }
    };

    auto notify = [&] {
        result.history.push_back(state.global_best_fitness);
        if (on_iteration) {
            on_iteration(IterationSnapshot{state.iteration, state.global_best_fitness,
                                           state.global_best_position});
        }
    };

    gather_positions();
    absorb_fitness(evaluate_all(objective, positions, cfg.eval_threads, 0));
    state.iteration = 0;
    notify();

    for (int it = 0; it < cfg.max_iters; ++it) {
        const double omega = inertia_weight(it, cfg.max_iters, cfg.inertia, swarm_rng);
        for (std::size_t i = 0; i < state.particles.size(); ++i) {
            state.particles[i] = step_particle(state.particles[i], state.global_best_position,
                                               omega, lambda, cfg, space, streams[i]);
        }
        gather_positions();
        absorb_fitness(evaluate_all(objective, positions, cfg.eval_threads, it + 1));
        state.iteration = it + 1;
        notify();
    }

    result.best_position = state.global_best_position;
    result.best_fitness = state.global_best_fitness;
    return result;
}

} // namespace psvm
