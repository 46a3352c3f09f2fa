// Copyright 2026 The netbell Authors
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

#include "netbell/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "netbell/detail/parallel.hpp"
#include "netbell/detail/rng.hpp"
#include "netbell/error.hpp"

namespace netbell {

namespace {

Eigen::Vector3d random_unit(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    while (true) {
        const Eigen::Vector3d v(normal(rng), normal(rng), normal(rng));
        const double n = v.norm();
        if (n > 1e-8) {
            return v / n;
        }
    }
}

/// f(n) = Σ_j |α_j + β_j·n|^{1/l}.
struct SlotObjective {
    std::vector<double> alpha;
    std::vector<Eigen::Vector3d> beta;
    double inv_l = 1.0;

    double operator()(const Eigen::Vector3d &n) const {
        double f = 0.0;
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            f += std::pow(std::abs(alpha[j] + beta[j].dot(n)), inv_l);
        }
        return f;
    }

    Eigen::Vector3d gradient(const Eigen::Vector3d &n) const {
        Eigen::Vector3d g = Eigen::Vector3d::Zero();
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            const double z = alpha[j] + beta[j].dot(n);
            const double az = std::abs(z);
            if (az < 1e-300) {
                continue;
            }
            g += inv_l * std::pow(az, inv_l - 1.0) * (z > 0 ? 1.0 : -1.0) * beta[j];
        }
        return g;
    }
};

Eigen::Vector3d maximize_on_sphere(const SlotObjective &f, const Eigen::Vector3d &start) {
    Eigen::Vector3d best = start;
    double fbest = f(best);
    const auto consider = [&](const Eigen::Vector3d &cand) {
        const double v = f(cand);
        if (v > fbest) {
            fbest = v;
            best = cand;
        }
    };
    for (const auto &b : f.beta) {
        const double nb = b.norm();
        if (nb > 0.0) {
            consider(b / nb);
            consider(-b / nb);
        }
    }
    // Geodesic ascent with step halving; only improving steps are taken.
    double theta = 0.5;
    for (int iter = 0; iter < 200; ++iter) {
        Eigen::Vector3d g = f.gradient(best);
        g -= g.dot(best) * best;
        const double ng = g.norm();
        if (ng < 1e-15) {
            break;
        }
        const Eigen::Vector3d dir = g / ng;
        bool improved = false;
        for (int h = 0; h < 40; ++h, theta *= 0.5) {
            const Eigen::Vector3d cand = (std::cos(theta) * best + std::sin(theta) * dir).normalized();
            const double v = f(cand);
            if (v > fbest) {
                best = cand;
                fbest = v;
                improved = true;
                break;
            }
        }
        if (!improved || theta < 1e-12) {
            break;
        }
        theta = std::min(1.0, 2.0 * theta);
    }
    return best;
}

struct RestartResult {
    double value = 0.0;
    std::vector<Eigen::Vector3d> slots;
    bool converged = false;
};

RestartResult run_restart(const detail::CorrelatorPlan &plan, std::vector<Eigen::Vector3d> slots,
                          const SeesawNetworkOptions &options) {
    const double inv_l = 1.0 / plan.l();
    std::vector<double> vals = plan.columns(slots);
    const auto total = [&] {
        double s = 0.0;
        for (const double v : vals) {
            s += std::pow(std::abs(v), inv_l);
        }
        return s;
    };
    double s_value = total();
    RestartResult out;
    SlotObjective f;
    f.inv_l = inv_l;
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        const double previous = s_value;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            const auto &cols = plan.columns_of_slot(i);
            if (cols.empty()) {
                continue;
            }
            const Eigen::Vector3d saved = slots[i];
            f.alpha.assign(cols.size(), 0.0);
            f.beta.assign(cols.size(), Eigen::Vector3d::Zero());
            slots[i].setZero();
            for (std::size_t c = 0; c < cols.size(); ++c) {
                f.alpha[c] = plan.column(cols[c], slots);
            }
            for (int m = 0; m < 3; ++m) {
                slots[i] = Eigen::Vector3d::Unit(m);
                for (std::size_t c = 0; c < cols.size(); ++c) {
                    f.beta[c](m) = plan.column(cols[c], slots) - f.alpha[c];
                }
            }
            slots[i] = maximize_on_sphere(f, saved);
            for (std::size_t c = 0; c < cols.size(); ++c) {
                vals[static_cast<std::size_t>(cols[c])] = f.alpha[c] + f.beta[c].dot(slots[i]);
            }
        }
        s_value = total();
        if (s_value - previous <= options.stagnation_tol * std::max(1.0, std::abs(s_value))) {
            out.converged = true;
            break;
        }
    }
    out.value = plan.s_value(slots);
    out.slots = std::move(slots);
    return out;
}

} // namespace

SearchReport seesaw_network(const NetworkInequality &ineq, const SourceStates &states,
                            const SeesawNetworkOptions &options) {
    return seesaw_on(ineq, ineq.topology(), states, options);
}

SearchReport seesaw_on(const NetworkInequality &ineq, const NetworkTopology &physical, const SourceStates &states,
                       const SeesawNetworkOptions &options) {
    if (options.restarts < 1) {
        fail(ErrorCode::InvalidArgument, "restarts must be positive");
    }
    const detail::CorrelatorPlan plan(ineq, physical, states);
    const MeasurementStrategy layout(physical, plan.input_counts());
    std::vector<Eigen::Vector3d> warm;
    if (options.warm_start) {
        const auto &ws = *options.warm_start;
        if (ws.input_counts() != plan.input_counts() || ws.slot_count() != plan.slot_count()) {
            fail(ErrorCode::InvalidArgument, "warm-start strategy does not fit the network");
        }
        warm = ws.slot_vectors();
    }

    std::vector<RestartResult> results(static_cast<std::size_t>(options.restarts));
    detail::parallel_for(options.restarts, options.threads, [&](int r) {
        std::vector<Eigen::Vector3d> slots;
        if (r == 0 && !warm.empty()) {
            slots = warm;
        } else {
            auto rng = detail::derived_rng(options.seed, static_cast<std::uint64_t>(r));
            slots.reserve(plan.slot_count());
            for (std::size_t i = 0; i < plan.slot_count(); ++i) {
                slots.push_back(random_unit(rng));
            }
        }
        results[static_cast<std::size_t>(r)] = run_restart(plan, std::move(slots), options);
    });

    SearchReport report;
    report.seed = options.seed;
    report.restarts_used = options.restarts;
    std::size_t best = 0;
    for (std::size_t r = 0; r < results.size(); ++r) {
        report.history.push_back(results[r].value);
        if (results[r].value > results[best].value) {
            best = r;
        }
    }
    report.best_value = results[best].value;
    report.converged = results[best].converged;
    MeasurementStrategy strategy = layout;
    strategy.assign_slot_vectors(results[best].slots);
    report.best_strategy = std::move(strategy);
    return report;
}

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::Violated:
        return "VIOLATED";
    case Verdict::Boundary:
        return "BOUNDARY";
    case Verdict::NotFound:
        return "NOT_FOUND";
    }
    return "NOT_FOUND";
}

Verdict classify(double best, double bound, double tol) {
    if (best > bound + tol) {
        return Verdict::Violated;
    }
    if (std::abs(best - bound) <= tol) {
        return Verdict::Boundary;
    }
    return Verdict::NotFound;
}

DiscriminationReport discriminate(const NetworkInequality &target, const NetworkTopology &source,
                                  const SourceStates &states, SeesawNetworkOptions options) {
    if (target.topology().n_parties() != source.n_parties()) {
        fail(ErrorCode::PartyCountMismatch, "target network has " + std::to_string(target.topology().n_parties()) +
                                                " parties, source network has " +
                                                std::to_string(source.n_parties()));
    }
    DiscriminationReport out;
    out.search = seesaw_on(target, source, states, options);
    out.target_bound = target.quantum_bound();
    out.verdict = classify(out.search.best_value, out.target_bound);
    return out;
}

VisibilityWindow visibility_window(const NetworkTopology &a, const NetworkTopology &b) {
    const auto la = find_leaves(a);
    const auto lb = find_leaves(b);
    for (const auto *lv : {&la, &lb}) {
        if (lv->l() < 2) {
            fail(ErrorCode::TooFewLeaves, "visibility thresholds need at least two leaves, found " +
                                              std::to_string(lv->l()));
        }
    }
    VisibilityWindow w;
    w.l_a = la.l();
    w.l_b = lb.l();
    w.m_a = a.n_sources();
    w.m_b = b.n_sources();
    w.threshold_a = std::pow(2.0, -static_cast<double>(w.l_a) / (2.0 * w.m_a));
    w.threshold_b = std::pow(2.0, -static_cast<double>(w.l_b) / (2.0 * w.m_b));
    w.lower = std::min(w.threshold_a, w.threshold_b);
    w.upper = std::max(w.threshold_a, w.threshold_b);
    return w;
}

WindowComparison compare_window(const VisibilityWindow &window, double quoted_lower, double quoted_upper,
                                double tol) {
    if (!(quoted_lower > 0.0 && quoted_lower < 1.0 && quoted_upper > 0.0 && quoted_upper < 1.0)) {
        fail(ErrorCode::InvalidArgument, "quoted window endpoints must lie in (0, 1)");
    }
    const bool a_is_lower = window.threshold_a <= window.threshold_b;
    WindowComparison c;
    c.l_lower = a_is_lower ? window.l_a : window.l_b;
    c.l_upper = a_is_lower ? window.l_b : window.l_a;
    c.implied_sources_lower = -c.l_lower / (2.0 * std::log2(quoted_lower));
    c.implied_sources_upper = -c.l_upper / (2.0 * std::log2(quoted_upper));
    c.matches = std::abs(window.lower - quoted_lower) <= tol && std::abs(window.upper - quoted_upper) <= tol;
    return c;
}

} // namespace netbell
