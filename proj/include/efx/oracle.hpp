// Copyright 2026 The efxgraph Authors
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

#pragma once

// Exhaustive search for EFX orientations (2^m) and EFX allocations (n^m).
//
// Both searches walk assignments in lexicographic edge order, so the first
// witness found is canonical. Values are rescaled to int64 when the totals
// fit, which keeps the inner loop free of allocations; otherwise the search
// runs on exact rationals.

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <gmpxx.h>

#include "efx/errors.hpp"
#include "efx/fairness.hpp"
#include "efx/instance.hpp"

namespace efx {

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

/// Budget from EFX_ORACLE_BUDGET when set, else the default.
inline std::uint64_t default_oracle_budget() {
    if (const char* env = std::getenv("EFX_ORACLE_BUDGET"); env != nullptr && *env != '\0') {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InputError("EFX_ORACLE_BUDGET is not a non-negative integer");
        }
    }
    return kDefaultOracleBudget;
}

struct OracleOptions {
    std::uint64_t budget = default_oracle_budget();
    bool count = false;
    bool prune = true;
    unsigned jobs = 1;
};

struct OracleResult {
    bool exists = false;
    std::optional<Allocation> witness;
    std::optional<std::uint64_t> count;
};

namespace detail {

// base^exp, saturating at uint64 max.
inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
    std::uint64_t out = 1;
    for (std::size_t k = 0; k < exp; ++k) {
        if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        out *= base;
    }
    return out;
}

inline void require_budget(std::uint64_t states, std::uint64_t budget, const std::string& what) {
    if (states > budget) {
        throw BudgetExceeded(what + " search space exceeds budget of " + std::to_string(budget) + " states");
    }
}

// Per-edge weights as seen by each endpoint.
template <typename V>
struct Weights {
    std::vector<V> wu;
    std::vector<V> wv;
};

// int64 weights scaled by the lcm of all denominators, when totals stay far
// from overflow.
inline std::optional<Weights<std::int64_t>> scaled_weights(const Instance& inst) {
    mpz_class lcm = 1;
    for (const auto& e : inst.edges()) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.wu.raw().get_den_mpz_t());
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.wv.raw().get_den_mpz_t());
    }
    Weights<std::int64_t> out;
    mpz_class total = 0;
    const mpz_class limit = mpz_class(std::numeric_limits<std::int64_t>::max() / 4);
    for (const auto& e : inst.edges()) {
        for (const Rational* w : {&e.wu, &e.wv}) {
            const mpz_class scaled = w->raw().get_num() * (lcm / w->raw().get_den());
            total += scaled;
            if (total > limit) return std::nullopt;
            (w == &e.wu ? out.wu : out.wv).push_back(scaled.get_si());
        }
    }
    return out;
}

inline Weights<Rational> exact_weights(const Instance& inst) {
    Weights<Rational> out;
    for (const auto& e : inst.edges()) {
        out.wu.push_back(e.wu);
        out.wv.push_back(e.wv);
    }
    return out;
}

// Orientation search over edges [depth, m) below a fixed prefix.
template <typename V>
class OrientationSearch {
public:
    OrientationSearch(const Instance& inst, const Weights<V>& w, bool prune, bool count)
        : inst_(inst), w_(w), prune_(prune), count_(count), owner_(inst.items(), kNoAgent),
          finalized_at_(inst.items()) {
        for (Agent a = 0; a < inst.agents(); ++a) {
            if (!inst.incident(a).empty()) {
                EdgeId last = 0;
                for (EdgeId e : inst.incident(a)) last = std::max(last, e);
                finalized_at_[last].push_back(a);
            }
        }
    }

    // Runs below `prefix` (its first `bits` edges fixed, bit k for edge k
    // counted from the most significant).
    void run(std::uint64_t prefix, std::size_t bits) {
        for (std::size_t k = 0; k < bits; ++k) {
            const bool to_v = ((prefix >> (bits - 1 - k)) & 1U) != 0;
            if (!place(k, to_v)) return;
        }
        descend(bits);
    }

    [[nodiscard]] std::uint64_t count() const { return found_; }
    [[nodiscard]] const std::optional<std::vector<Agent>>& witness() const { return witness_; }

private:
    bool place(EdgeId e, bool to_v) {
        const auto& item = inst_.edge(e);
        owner_[e] = to_v ? item.v : item.u;
        if (!prune_) return true;
        for (Agent a : finalized_at_[e]) {
            for (Agent b : inst_.neighbors(a)) {
                if (is_final(b, e) && !pair_ok(a, b)) return false;
            }
        }
        return true;
    }

    [[nodiscard]] bool is_final(Agent b, EdgeId upto) const {
        for (EdgeId e : inst_.incident(b)) {
            if (e > upto) return false;
        }
        return true;
    }

    [[nodiscard]] const V& weight(Agent a, EdgeId e) const {
        return inst_.edge(e).u == a ? w_.wu[e] : w_.wv[e];
    }

    // Neither of a, b strongly envies the other; both bundles are final.
    [[nodiscard]] bool pair_ok(Agent a, Agent b) const { return no_strong_envy(a, b) && no_strong_envy(b, a); }

    [[nodiscard]] bool no_strong_envy(Agent i, Agent j) const {
        V own{};
        for (EdgeId e : inst_.incident(i)) {
            if (owner_[e] == i) own += weight(i, e);
        }
        // X_j as seen by i: shared edges held by j; anything else of X_j is worth 0.
        V seen{};
        std::optional<V> cheapest;
        bool has_zero = false;
        for (EdgeId e : inst_.incident(j)) {
            if (owner_[e] != j) continue;
            if (!inst_.edge(e).incident(i)) {
                has_zero = true;
                continue;
            }
            const V& g = weight(i, e);
            seen += g;
            if (!cheapest || g < *cheapest) cheapest = g;
        }
        if (!cheapest) return true;
        if (has_zero) return !(own < seen);
        return !(own < seen - *cheapest);
    }

    [[nodiscard]] bool leaf_ok() const {
        for (const auto& [pair, list] : inst_.pairs()) {
            if (!pair_ok(pair.first, pair.second)) return false;
        }
        return true;
    }

    void descend(EdgeId e) {
        if (done_) return;
        if (e == inst_.items()) {
            if (!prune_ && !leaf_ok()) return;
            ++found_;
            if (!witness_) witness_ = owner_;
            if (!count_) done_ = true;
            return;
        }
        for (bool to_v : {false, true}) {
            if (place(e, to_v)) descend(e + 1);
            owner_[e] = kNoAgent;
            if (done_) return;
        }
    }

    const Instance& inst_;
    const Weights<V>& w_;
    bool prune_;
    bool count_;
    std::vector<Agent> owner_;
    std::vector<std::vector<Agent>> finalized_at_;
    std::uint64_t found_ = 0;
    std::optional<std::vector<Agent>> witness_;
    bool done_ = false;
};

// Allocation search: each edge to any agent, lowest agent first.
template <typename V>
class AllocationSearch {
public:
    AllocationSearch(const Instance& inst, const Weights<V>& w, bool prune)
        : inst_(inst), w_(w), prune_(prune), n_(inst.agents()), owner_(inst.items(), kNoAgent),
          seen_(n_ * n_), remaining_(n_), held_(n_) {
        for (EdgeId e = 0; e < inst.items(); ++e) {
            remaining_[inst.edge(e).u] += w.wu[e];
            remaining_[inst.edge(e).v] += w.wv[e];
        }
    }

    void run(std::uint64_t prefix, std::size_t digits) {
        std::vector<Agent> fixed(digits);
        for (std::size_t k = digits; k-- > 0;) {
            fixed[k] = static_cast<Agent>(prefix % n_);
            prefix /= n_;
        }
        for (std::size_t k = 0; k < digits; ++k) {
            place(k, fixed[k]);
            if (prune_ && hopeless()) return;
        }
        descend(digits);
    }

    [[nodiscard]] const std::optional<std::vector<Agent>>& witness() const { return witness_; }

private:
    [[nodiscard]] V value(Agent a, EdgeId e) const {
        const auto& item = inst_.edge(e);
        if (item.u == a) return w_.wu[e];
        if (item.v == a) return w_.wv[e];
        return V{};
    }

    V& seen(Agent i, Agent j) { return seen_[i * n_ + j]; }
    [[nodiscard]] const V& seen(Agent i, Agent j) const { return seen_[i * n_ + j]; }

    void place(EdgeId e, Agent a) {
        owner_[e] = a;
        held_[a].push_back(e);
        const auto& item = inst_.edge(e);
        seen(item.u, a) += w_.wu[e];
        seen(item.v, a) += w_.wv[e];
        remaining_[item.u] -= w_.wu[e];
        remaining_[item.v] -= w_.wv[e];
    }

    void unplace(EdgeId e) {
        const Agent a = owner_[e];
        owner_[e] = kNoAgent;
        held_[a].pop_back();
        const auto& item = inst_.edge(e);
        seen(item.u, a) -= w_.wu[e];
        seen(item.v, a) -= w_.wv[e];
        remaining_[item.u] += w_.wu[e];
        remaining_[item.v] += w_.wv[e];
    }

    [[nodiscard]] V cheapest(Agent i, Agent j) const {
        V best = value(i, held_[j].front());
        for (EdgeId e : held_[j]) {
            V g = value(i, e);
            if (g < best) best = g;
        }
        return best;
    }

    // i strongly envies j beyond repair even if i gets every unassigned item
    // it values; growing X_j never lowers v_i(X_j) minus its cheapest item.
    [[nodiscard]] bool hopeless() const {
        for (Agent i = 0; i < n_; ++i) {
            const V best_own = seen(i, i) + remaining_[i];
            for (Agent j = 0; j < n_; ++j) {
                if (j == i || !(best_own < seen(i, j))) continue;
                if (best_own < seen(i, j) - cheapest(i, j)) return true;
            }
        }
        return false;
    }

    [[nodiscard]] bool leaf_ok() const {
        for (Agent i = 0; i < n_; ++i) {
            for (Agent j = 0; j < n_; ++j) {
                if (j == i || !(seen(i, i) < seen(i, j))) continue;
                if (seen(i, i) < seen(i, j) - cheapest(i, j)) return false;
            }
        }
        return true;
    }

    void descend(EdgeId e) {
        if (witness_) return;
        if (e == inst_.items()) {
            if (leaf_ok()) witness_ = owner_;
            return;
        }
        for (Agent a = 0; a < n_ && !witness_; ++a) {
            place(e, a);
            if (!prune_ || !hopeless()) descend(e + 1);
            unplace(e);
        }
    }

    const Instance& inst_;
    const Weights<V>& w_;
    bool prune_;
    std::size_t n_;
    std::vector<Agent> owner_;
    std::vector<V> seen_;       // seen(i, j) = v_i(X_j)
    std::vector<V> remaining_;  // value of unassigned items per agent
    std::vector<Bundle> held_;  // X_j in assignment order
    std::optional<std::vector<Agent>> witness_;
};

inline Allocation from_owners(const Instance& inst, const std::vector<Agent>& owners) {
    Allocation x = empty_allocation(inst);
    for (EdgeId e = 0; e < owners.size(); ++e) x.assign(e, owners[e]);
    return x;
}

// Splits the first `digits` choices (each with `radix` options) into
// contiguous prefix blocks, one per worker; results merge by prefix order.
template <typename Task>
void run_partitioned(std::uint64_t radix, std::size_t digits, unsigned jobs, Task&& task) {
    const std::uint64_t prefixes = saturating_pow(radix, digits);
    if (jobs <= 1 || prefixes <= 1) {
        for (std::uint64_t p = 0; p < prefixes; ++p) task(p);
        return;
    }
    std::vector<std::thread> workers;
    const unsigned used = static_cast<unsigned>(std::min<std::uint64_t>(jobs, prefixes));
    for (unsigned w = 0; w < used; ++w) {
        workers.emplace_back([&, w] {
            for (std::uint64_t p = w; p < prefixes; p += used) task(p);
        });
    }
    for (auto& t : workers) t.join();
}

// Enough prefix digits for several tasks per worker.
inline std::size_t prefix_digits(std::uint64_t radix, std::size_t m, unsigned jobs) {
    if (jobs <= 1 || radix < 2) return 0;
    std::size_t digits = 0;
    std::uint64_t blocks = 1;
    while (digits < m && blocks < 4ULL * jobs) {
        blocks *= radix;
        ++digits;
    }
    return digits;
}

template <typename V>
OracleResult orientation_search(const Instance& inst, const Weights<V>& w, const OracleOptions& opt) {
    const std::size_t digits = prefix_digits(2, inst.items(), opt.jobs);
    const std::uint64_t prefixes = saturating_pow(2, digits);
    std::vector<std::uint64_t> counts(prefixes, 0);
    std::vector<std::optional<std::vector<Agent>>> witnesses(prefixes);
    run_partitioned(2, digits, opt.jobs, [&](std::uint64_t p) {
        OrientationSearch<V> search(inst, w, opt.prune, opt.count);
        search.run(p, digits);
        counts[p] = search.count();
        witnesses[p] = search.witness();
    });
    OracleResult result;
    std::uint64_t total = 0;
    for (std::uint64_t p = 0; p < prefixes; ++p) {
        total += counts[p];
        if (!result.witness && witnesses[p]) result.witness = from_owners(inst, *witnesses[p]);
    }
    result.exists = result.witness.has_value();
    if (opt.count) result.count = total;
    return result;
}

template <typename V>
OracleResult allocation_search(const Instance& inst, const Weights<V>& w, const OracleOptions& opt) {
    const std::size_t digits = prefix_digits(inst.agents(), inst.items(), opt.jobs);
    const std::uint64_t prefixes = saturating_pow(inst.agents(), digits);
    std::vector<std::optional<std::vector<Agent>>> witnesses(prefixes);
    run_partitioned(inst.agents(), digits, opt.jobs, [&](std::uint64_t p) {
        AllocationSearch<V> search(inst, w, opt.prune);
        search.run(p, digits);
        witnesses[p] = search.witness();
    });
    OracleResult result;
    for (const auto& wit : witnesses) {
        if (wit) {
            result.witness = from_owners(inst, *wit);
            break;
        }
    }
    result.exists = result.witness.has_value();
    return result;
}

}  // namespace detail

/// Does any complete EFX orientation exist? Optionally counts all of them.
inline OracleResult decide_efx_orientation(const Instance& inst, const OracleOptions& opt = {}) {
    detail::require_budget(detail::saturating_pow(2, inst.items()), opt.budget, "orientation");
    if (auto scaled = detail::scaled_weights(inst)) return detail::orientation_search(inst, *scaled, opt);
    return detail::orientation_search(inst, detail::exact_weights(inst), opt);
}

/// Does any complete (possibly wasteful) EFX allocation exist?
inline OracleResult decide_efx_allocation(const Instance& inst, const OracleOptions& opt = {}) {
    if (inst.items() > 0 && inst.agents() == 0) throw PreconditionError("items without agents");
    detail::require_budget(detail::saturating_pow(inst.agents(), inst.items()), opt.budget, "allocation");
    if (auto scaled = detail::scaled_weights(inst)) return detail::allocation_search(inst, *scaled, opt);
    return detail::allocation_search(inst, detail::exact_weights(inst), opt);
}

}  // namespace efx
