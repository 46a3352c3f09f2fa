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

#include <cmath>
#include <random>
#include <string>

#include "netbell/detail/parallel.hpp"
#include "netbell/detail/rng.hpp"
#include "netbell/error.hpp"
#include "netbell/optimizer.hpp"

namespace netbell {

namespace {

using Tables = std::vector<std::vector<std::int8_t>>;
using Weights = std::vector<std::vector<double>>;

/// Evaluates S for local models on a fixed inequality and alphabet sizes.
/// For each joint hidden value the leaf expressions fold into
/// Δ_j(λ) = Σ_x M_xj a(x, λ), and I_j averages the products.
class LocalEvaluator {
  public:
    LocalEvaluator(const NetworkInequality &ineq, std::vector<int> cards) : ineq_(ineq), cards_(std::move(cards)) {
        const auto &topo = ineq.topology();
        if (static_cast<int>(cards_.size()) != topo.n_sources()) {
            fail(ErrorCode::InvalidArgument, "need one hidden-variable cardinality per source");
        }
        for (const int c : cards_) {
            if (c < 1) {
                fail(ErrorCode::InvalidArgument, "hidden-variable cardinalities must be positive");
            }
        }
        n_ = topo.n_parties();
        inputs_ = ineq.input_counts();
        double log_combos = 0.0;
        for (const int c : cards_) {
            log_combos += std::log2(static_cast<double>(c));
        }
        alphabet_bits_ = log_combos;
        if (log_combos > 20.0) {
            fail(ErrorCode::TooLarge, "joint hidden-variable alphabet is too large to average over");
        }
        combos_ = 1;
        for (const int c : cards_) {
            combos_ *= c;
        }
        radix_.assign(static_cast<std::size_t>(n_), 1);
        table_bits_ = 0.0;
        for (PartyIndex p = 1; p <= n_; ++p) {
            for (const auto &inc : topo.incident(p)) {
                radix_[static_cast<std::size_t>(p - 1)] *= cards_[static_cast<std::size_t>(inc.source - 1)];
            }
            table_bits_ += static_cast<double>(inputs_[static_cast<std::size_t>(p - 1)]) *
                           radix_[static_cast<std::size_t>(p - 1)];
        }
        // digits_[combo * M + s] and local_[combo * N + p]
        const int m = topo.n_sources();
        digits_.resize(static_cast<std::size_t>(combos_) * static_cast<std::size_t>(m));
        local_.resize(static_cast<std::size_t>(combos_) * static_cast<std::size_t>(n_));
        for (int combo = 0; combo < combos_; ++combo) {
            int rest = combo;
            for (int s = m - 1; s >= 0; --s) {
                digits_[static_cast<std::size_t>(combo * m + s)] = rest % cards_[static_cast<std::size_t>(s)];
                rest /= cards_[static_cast<std::size_t>(s)];
            }
            for (PartyIndex p = 1; p <= n_; ++p) {
                int idx = 0;
                for (const auto &inc : topo.incident(p)) {
                    idx = idx * cards_[static_cast<std::size_t>(inc.source - 1)] +
                          digits_[static_cast<std::size_t>(combo * m + inc.source - 1)];
                }
                local_[static_cast<std::size_t>(combo * n_ + p - 1)] = idx;
            }
        }
        for (PartyIndex p = 1; p <= n_; ++p) {
            if (ineq.is_leaf(p)) {
                leaves_.push_back(p - 1);
                matrices_.push_back(&ineq.fcbi_for_leaf(p).entries());
            } else {
                fixed_.push_back(p - 1);
            }
        }
    }

    double table_bits() const { return table_bits_; }
    double alphabet_bits() const { return alphabet_bits_; }
    int table_size(int p) const { return inputs_[static_cast<std::size_t>(p)] * radix_[static_cast<std::size_t>(p)]; }
    int radix(int p) const { return radix_[static_cast<std::size_t>(p)]; }
    int n() const { return n_; }
    const std::vector<int> &cards() const { return cards_; }

    std::vector<double> columns(const Tables &tables, const Weights &weights) const {
        const int k = ineq_.k();
        const int m = static_cast<int>(cards_.size());
        std::vector<double> I(static_cast<std::size_t>(k), 0.0);
        for (int combo = 0; combo < combos_; ++combo) {
            double q = 1.0;
            for (int s = 0; s < m && q != 0.0; ++s) {
                q *= weights[static_cast<std::size_t>(s)]
                            [static_cast<std::size_t>(digits_[static_cast<std::size_t>(combo * m + s)])];
            }
            if (q == 0.0) {
                continue;
            }
            const int *loc = &local_[static_cast<std::size_t>(combo * n_)];
            for (int j = 0; j < k; ++j) {
                double prod = q;
                for (const int p : fixed_) {
                    prod *= tables[static_cast<std::size_t>(p)][static_cast<std::size_t>(j * radix_[static_cast<std::size_t>(p)] + loc[p])];
                }
                for (std::size_t li = 0; li < leaves_.size() && prod != 0.0; ++li) {
                    const int p = leaves_[li];
                    const auto &mat = *matrices_[li];
                    double delta = 0.0;
                    for (int x = 0; x < mat.rows(); ++x) {
                        delta += mat(x, j) *
                                 tables[static_cast<std::size_t>(p)][static_cast<std::size_t>(x * radix_[static_cast<std::size_t>(p)] + loc[p])];
                    }
                    prod *= delta;
                }
                I[static_cast<std::size_t>(j)] += prod;
            }
        }
        return I;
    }

    double s_value(const Tables &tables, const Weights &weights) const {
        double s = 0.0;
        for (const double v : columns(tables, weights)) {
            s += std::pow(std::abs(v), 1.0 / ineq_.l());
        }
        return s;
    }

  private:
    const NetworkInequality &ineq_;
    std::vector<int> cards_;
    int n_ = 0;
    std::vector<int> inputs_;
    std::vector<int> radix_;
    int combos_ = 1;
    double table_bits_ = 0.0;
    double alphabet_bits_ = 0.0;
    std::vector<int> digits_;
    std::vector<int> local_;
    std::vector<int> leaves_;
    std::vector<const Eigen::MatrixXd *> matrices_;
    std::vector<int> fixed_;
};

Weights uniform_weights(const std::vector<int> &cards) {
    Weights w;
    for (const int c : cards) {
        w.emplace_back(static_cast<std::size_t>(c), 1.0 / c);
    }
    return w;
}

Tables blank_tables(const LocalEvaluator &ev) {
    Tables t(static_cast<std::size_t>(ev.n()));
    for (int p = 0; p < ev.n(); ++p) {
        t[static_cast<std::size_t>(p)].assign(static_cast<std::size_t>(ev.table_size(p)), 1);
    }
    return t;
}

void fill_from_mask(Tables &tables, std::uint64_t mask) {
    int bit = 0;
    for (auto &table : tables) {
        for (auto &entry : table) {
            entry = ((mask >> bit) & 1U) ? -1 : 1;
            ++bit;
        }
    }
}

struct Candidate {
    double value = -1.0;
    Tables tables;
    Weights weights;
};

void keep_best(Candidate &best, double value, const Tables &tables, const Weights &weights) {
    if (value > best.value) {
        best.value = value;
        best.tables = tables;
        best.weights = weights;
    }
}

LocalModel to_model(const LocalEvaluator &ev, Candidate c) {
    LocalModel m;
    m.cardinalities = ev.cards();
    m.weights = std::move(c.weights);
    m.responses = std::move(c.tables);
    return m;
}

void validate_model(const NetworkInequality &ineq, const LocalEvaluator &ev, const LocalModel &model) {
    const auto &topo = ineq.topology();
    if (model.weights.size() != model.cardinalities.size()) {
        fail(ErrorCode::InvalidArgument, "need one weight vector per source");
    }
    for (std::size_t s = 0; s < model.weights.size(); ++s) {
        const auto &w = model.weights[s];
        if (static_cast<int>(w.size()) != model.cardinalities[s]) {
            fail(ErrorCode::InvalidArgument, "weight vector of source " + std::to_string(s + 1) +
                                                 " does not match its cardinality");
        }
        double sum = 0.0;
        for (const double x : w) {
            if (!(x >= 0.0)) {
                fail(ErrorCode::InvalidArgument, "hidden-variable weights must be non-negative");
            }
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            fail(ErrorCode::InvalidArgument, "weights of source " + std::to_string(s + 1) + " do not sum to 1");
        }
    }
    if (static_cast<int>(model.responses.size()) != topo.n_parties()) {
        fail(ErrorCode::PartyCountMismatch, "need one response table per party");
    }
    for (int p = 0; p < ev.n(); ++p) {
        const auto &t = model.responses[static_cast<std::size_t>(p)];
        if (static_cast<int>(t.size()) != ev.table_size(p)) {
            fail(ErrorCode::InvalidArgument, "response table of party " + std::to_string(p + 1) + " has the wrong size");
        }
        for (const auto a : t) {
            if (a != 1 && a != -1) {
                fail(ErrorCode::InvalidArgument, "responses must be +1 or -1");
            }
        }
    }
}

} // namespace

LocalModel LocalModel::all_plus(const NetworkTopology &topology, std::vector<int> input_counts,
                                std::vector<int> cardinalities) {
    if (static_cast<int>(input_counts.size()) != topology.n_parties() ||
        static_cast<int>(cardinalities.size()) != topology.n_sources()) {
        fail(ErrorCode::InvalidArgument, "input counts or cardinalities do not match the network");
    }
    LocalModel m;
    m.cardinalities = cardinalities;
    m.weights = uniform_weights(cardinalities);
    for (PartyIndex p = 1; p <= topology.n_parties(); ++p) {
        int radix = 1;
        for (const auto &inc : topology.incident(p)) {
            radix *= cardinalities[static_cast<std::size_t>(inc.source - 1)];
        }
        m.responses.emplace_back(static_cast<std::size_t>(radix * input_counts[static_cast<std::size_t>(p - 1)]), 1);
    }
    return m;
}

EvaluationResult evaluate_local(const NetworkInequality &ineq, const LocalModel &model, double tol) {
    const LocalEvaluator ev(ineq, model.cardinalities);
    validate_model(ineq, ev, model);
    EvaluationResult out;
    out.I = ev.columns(model.responses, model.weights);
    for (const double v : out.I) {
        out.S += std::pow(std::abs(v), 1.0 / ineq.l());
    }
    out.classical_violation = out.S > ineq.classical_bound() + tol;
    out.quantum_saturation = std::abs(out.S - ineq.quantum_bound()) <= tol;
    return out;
}

SearchReport classical_oracle(const NetworkInequality &ineq, std::vector<int> cardinalities,
                              const OracleOptions &options) {
    if (cardinalities.empty()) {
        cardinalities.assign(static_cast<std::size_t>(ineq.topology().n_sources()), 2);
    }
    if (options.budget < 0) {
        fail(ErrorCode::InvalidArgument, "budget must be non-negative");
    }
    const LocalEvaluator ev(ineq, cardinalities);
    SearchReport report;
    report.seed = options.seed;
    const int workers = std::max(1, options.threads);
    std::vector<Candidate> partial(static_cast<std::size_t>(workers));
    Candidate best;

    if (options.mode == OracleMode::Exhaustive) {
        if (ev.table_bits() > kMaxExhaustiveTableBits || ev.alphabet_bits() > kMaxExhaustiveAlphabetBits) {
            fail(ErrorCode::TooLargeForExhaustive,
                 "response-table space is 2^" + std::to_string(static_cast<long long>(ev.table_bits())) +
                     "; exhaustive search is limited to 2^" + std::to_string(kMaxExhaustiveTableBits) +
                     " tables and 2^" + std::to_string(kMaxExhaustiveAlphabetBits) + " joint hidden values");
        }
        const auto bits = static_cast<int>(ev.table_bits());
        const std::uint64_t total = std::uint64_t{1} << bits;
        const Weights weights = uniform_weights(cardinalities);
        // Chunks are contiguous mask ranges; ties keep the lowest mask.
        detail::parallel_for(workers, workers, [&](int w) {
            const std::uint64_t lo = total * static_cast<std::uint64_t>(w) / static_cast<std::uint64_t>(workers);
            const std::uint64_t hi = total * static_cast<std::uint64_t>(w + 1) / static_cast<std::uint64_t>(workers);
            Tables tables = blank_tables(ev);
            auto &mine = partial[static_cast<std::size_t>(w)];
            for (std::uint64_t mask = lo; mask < hi; ++mask) {
                fill_from_mask(tables, mask);
                keep_best(mine, ev.s_value(tables, weights), tables, weights);
            }
        });
        for (auto &c : partial) {
            if (c.value > best.value) {
                best = std::move(c);
            }
        }
        report.history.push_back(best.value);
        report.restarts_used = static_cast<int>(std::min<std::uint64_t>(total, 0x7fffffff));
        partial.assign(static_cast<std::size_t>(workers), Candidate{});
    }

    if (options.budget > 0) {
        const std::int64_t budget = options.budget;
        detail::parallel_for(workers, workers, [&](int w) {
            const std::int64_t lo = budget * w / workers;
            const std::int64_t hi = budget * (w + 1) / workers;
            Tables tables = blank_tables(ev);
            Weights weights = uniform_weights(cardinalities);
            auto &mine = partial[static_cast<std::size_t>(w)];
            std::exponential_distribution<double> expo(1.0);
            for (std::int64_t sample = lo; sample < hi; ++sample) {
                auto rng = detail::derived_rng(options.seed, static_cast<std::uint64_t>(sample));
                for (auto &wv : weights) {
                    double sum = 0.0;
                    for (auto &x : wv) {
                        x = expo(rng);
                        sum += x;
                    }
                    for (auto &x : wv) {
                        x /= sum;
                    }
                }
                for (auto &table : tables) {
                    for (auto &entry : table) {
                        entry = (rng() & 1U) ? -1 : 1;
                    }
                }
                keep_best(mine, ev.s_value(tables, weights), tables, weights);
            }
        });
        Candidate random_best;
        for (auto &c : partial) {
            if (c.value > random_best.value) {
                random_best = std::move(c);
            }
        }
        report.history.push_back(random_best.value);
        report.restarts_used += static_cast<int>(std::min<std::int64_t>(budget, 0x7fffffff));
        if (random_best.value > best.value) {
            best = std::move(random_best);
        }
    }

    if (best.value < 0.0) {
        fail(ErrorCode::InvalidArgument, "random mode needs a positive budget");
    }
    report.best_value = best.value;
    report.converged = true;
    report.best_model = to_model(ev, std::move(best));
    return report;
}

} // namespace netbell
