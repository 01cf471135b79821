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

// Named instance families plus seeded random instances.
//
// Every named family is symmetric. Agents are 0-indexed: agent k here is
// agent k + 1 in the usual 1-indexed labelling.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "efx/errors.hpp"
#include "efx/instance.hpp"

namespace efx {

struct FamilySpec {
    std::string family;
    Rational eps = Rational(1, 100);
    Rational delta = Rational(1, 1'000'000);
    std::size_t q = 4;                // p4-qn only
    std::vector<long> partition;      // np-gadget only
};

namespace detail {

inline void add_pair(std::vector<EdgeItem>& edges, Agent u, Agent v, std::initializer_list<Rational> values) {
    for (const auto& w : values) edges.push_back(EdgeItem{u, v, w, w});
}

inline void require_eps_delta(const FamilySpec& spec) {
    if (!spec.delta.is_positive() || !(spec.delta < spec.eps) || !(spec.eps < Rational(1))) {
        throw InputError("family parameters need 0 < delta < eps < 1");
    }
}

// {eps, 10 + eps/2} on (a, b) and {10, eps} on (b, c).
inline void add_block(std::vector<EdgeItem>& edges, Agent a, Agent b, Agent c, const Rational& eps) {
    add_pair(edges, a, b, {eps, Rational(10) + eps / Rational(2)});
    add_pair(edges, b, c, {Rational(10), eps});
}

}  // namespace detail

inline Instance c4_counter(const Rational& eps, const Rational& delta) {
    std::vector<EdgeItem> e;
    detail::add_pair(e, 0, 1, {Rational(10) + eps / Rational(2), eps});
    detail::add_pair(e, 1, 2, {Rational(10), eps});
    detail::add_pair(e, 0, 3, {Rational(10), eps});
    detail::add_pair(e, 2, 3, {delta, delta});
    return Instance(4, std::move(e));
}

inline Instance p4_q3(const Rational& eps) {
    const Rational one(1);
    std::vector<EdgeItem> e;
    detail::add_pair(e, 0, 1, {one, one + eps, one + eps});
    detail::add_pair(e, 1, 2, {Rational(2) + Rational(3, 2) * eps});
    detail::add_pair(e, 2, 3, {one, one + eps, one + eps});
    return Instance(4, std::move(e));
}

inline Instance p4_qn(std::size_t q, const Rational& eps) {
    if (q < 4) throw InputError("p4-qn needs q >= 4");
    std::vector<EdgeItem> e;
    for (std::size_t k = 0; k < q; ++k) detail::add_pair(e, 0, 1, {Rational(1)});
    detail::add_pair(e, 1, 2, {Rational(static_cast<long>((q + 1) / 2)) + eps});
    for (std::size_t k = 0; k < q; ++k) detail::add_pair(e, 2, 3, {Rational(1)});
    return Instance(4, std::move(e));
}

inline Instance p3_block(const Rational& eps) {
    std::vector<EdgeItem> e;
    detail::add_block(e, 0, 1, 2, eps);
    return Instance(3, std::move(e));
}

inline Instance p6_counter(const Rational& eps, const Rational& delta) {
    std::vector<EdgeItem> e;
    detail::add_block(e, 0, 1, 2, eps);
    detail::add_pair(e, 2, 3, {delta});
    detail::add_pair(e, 4, 5, {eps, Rational(10) + eps / Rational(2)});
    detail::add_pair(e, 3, 4, {Rational(10), eps});
    return Instance(6, std::move(e));
}

/// Partition gadget on 8 agents. Zero entries of P carry no edge, since
/// every edge needs positive value; they never affect an equal-sum split.
inline Instance np_gadget(const std::vector<long>& p, const Rational& eps, const Rational& delta) {
    if (p.empty()) throw InputError("partition multiset must be nonempty");
    std::vector<EdgeItem> e;
    detail::add_block(e, 0, 1, 2, eps);
    detail::add_pair(e, 2, 3, {delta});
    for (long value : p) {
        if (value < 0) throw InputError("partition entries must be non-negative");
        if (value > 0) detail::add_pair(e, 3, 4, {Rational(value)});
    }
    detail::add_pair(e, 4, 5, {delta});
    detail::add_pair(e, 5, 6, {Rational(10), eps});
    detail::add_pair(e, 6, 7, {eps, Rational(10) + eps / Rational(2)});
    return Instance(8, std::move(e));
}

inline Instance reduce_partition(const std::vector<long>& p, const Rational& eps = Rational(1, 100),
                                 const Rational& delta = Rational(1, 1'000'000)) {
    return np_gadget(p, eps, delta);
}

/// The 7-agent worked example: S = {0, 1, 2, 3}, T = {4, 5, 6}.
inline Instance running_example() {
    std::vector<EdgeItem> e;
    auto r = [](long v) { return Rational(v); };
    detail::add_pair(e, 0, 4, {r(10)});
    detail::add_pair(e, 1, 4, {r(10), r(9)});
    detail::add_pair(e, 2, 4, {r(8)});
    detail::add_pair(e, 0, 5, {r(6), r(5)});
    detail::add_pair(e, 1, 5, {r(6), r(6)});
    detail::add_pair(e, 2, 5, {r(7)});
    detail::add_pair(e, 0, 6, {r(6), r(5)});
    detail::add_pair(e, 1, 6, {r(6), r(6)});
    detail::add_pair(e, 2, 6, {r(7)});
    detail::add_pair(e, 3, 6, {r(3), r(4)});
    detail::add_pair(e, 3, 4, {r(6), r(3)});
    return Instance(7, std::move(e));
}

inline const std::vector<std::string_view>& family_names() {
    static const std::vector<std::string_view> names{"c4-counter", "p4-q3",      "p4-qn",          "p3-block",
                                                     "p6-counter", "np-gadget", "running-example"};
    return names;
}

inline Instance generate(const FamilySpec& spec) {
    const std::string& f = spec.family;
    if (f == "running-example") return running_example();
    detail::require_eps_delta(spec);
    if (f == "c4-counter") return c4_counter(spec.eps, spec.delta);
    if (f == "p4-q3") return p4_q3(spec.eps);
    if (f == "p4-qn") return p4_qn(spec.q, spec.eps);
    if (f == "p3-block") return p3_block(spec.eps);
    if (f == "p6-counter") return p6_counter(spec.eps, spec.delta);
    if (f == "np-gadget") return np_gadget(spec.partition, spec.eps, spec.delta);
    throw InputError("unknown family '" + f + "'");
}

enum class RandomFamily { bipartite, tree, cycle, star };

struct RandomSpec {
    std::size_t n = 6;
    std::size_t m = 10;
    std::size_t q_max = 3;
    RandomFamily family = RandomFamily::bipartite;
    long numerator_max = 1000;
    long denominator_max = 1;
    std::uint64_t seed = 0;
    bool symmetric = false;
};

namespace detail {

using Skeleton = std::vector<std::pair<Agent, Agent>>;

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Tree of depth <= 2 around a random center, so the diameter is at most 4.
inline Skeleton random_shallow_tree(std::size_t n, std::mt19937_64& rng) {
    std::vector<Agent> order(n);
    std::iota(order.begin(), order.end(), Agent{0});
    std::shuffle(order.begin(), order.end(), rng);
    Skeleton sk;
    std::vector<Agent> depth_one;
    for (std::size_t k = 1; k < n; ++k) {
        if (depth_one.empty() || uniform(rng, 0, 1) == 0) {
            sk.emplace_back(order[0], order[k]);
            depth_one.push_back(order[k]);
        } else {
            sk.emplace_back(depth_one[uniform(rng, 0, depth_one.size() - 1)], order[k]);
        }
    }
    return sk;
}

inline Skeleton random_cycle(std::size_t n, std::mt19937_64& rng) {
    std::vector<Agent> order(n);
    std::iota(order.begin(), order.end(), Agent{0});
    std::shuffle(order.begin(), order.end(), rng);
    Skeleton sk;
    for (std::size_t k = 0; k < n; ++k) sk.emplace_back(order[k], order[(k + 1) % n]);
    return sk;
}

inline Skeleton random_star(std::size_t n, std::mt19937_64& rng) {
    const Agent hub = uniform(rng, 0, n - 1);
    Skeleton sk;
    for (Agent a = 0; a < n; ++a) {
        if (a != hub) sk.emplace_back(hub, a);
    }
    return sk;
}

// Random two-sided split; every cross pair is a candidate skeleton edge.
inline Skeleton random_bipartite_pairs(std::size_t n, std::mt19937_64& rng) {
    std::vector<bool> side(n);
    for (Agent a = 0; a < n; ++a) side[a] = uniform(rng, 0, 1) == 1;
    if (n >= 2) {
        side[0] = false;
        side[uniform(rng, 1, n - 1)] = true;
    }
    Skeleton pairs;
    for (Agent a = 0; a < n; ++a) {
        for (Agent b = a + 1; b < n; ++b) {
            if (side[a] != side[b]) pairs.emplace_back(a, b);
        }
    }
    return pairs;
}

}  // namespace detail

/// Deterministic under the seed. Shaped families use every skeleton pair at
/// least once; bipartite draws pairs freely.
inline Instance random_instance(const RandomSpec& spec) {
    if (spec.q_max == 0 || spec.numerator_max < 1 || spec.denominator_max < 1) {
        throw InputError("random instance needs q_max, numerator and denominator bounds >= 1");
    }
    std::mt19937_64 rng(spec.seed);
    const std::size_t n = spec.n;
    detail::Skeleton sk;
    bool cover_all = true;
    switch (spec.family) {
        case RandomFamily::tree:
            if (n < 2) throw InputError("tree needs n >= 2");
            sk = detail::random_shallow_tree(n, rng);
            break;
        case RandomFamily::cycle:
            if (n < 3) throw InputError("cycle needs n >= 3");
            sk = detail::random_cycle(n, rng);
            break;
        case RandomFamily::star:
            if (n < 2) throw InputError("star needs n >= 2");
            sk = detail::random_star(n, rng);
            break;
        case RandomFamily::bipartite:
            if (n < 2) throw InputError("bipartite needs n >= 2");
            sk = detail::random_bipartite_pairs(n, rng);
            cover_all = false;
            break;
    }
    if (spec.m > sk.size() * spec.q_max || (cover_all && spec.m < sk.size())) {
        throw InputError("edge count " + std::to_string(spec.m) + " infeasible for the requested family");
    }

    std::vector<std::size_t> mult(sk.size(), cover_all ? 1 : 0);
    std::size_t placed = cover_all ? sk.size() : 0;
    while (placed < spec.m) {
        const std::size_t k = detail::uniform(rng, 0, sk.size() - 1);
        if (mult[k] < spec.q_max) {
            ++mult[k];
            ++placed;
        }
    }

    auto draw = [&] {
        const long num = static_cast<long>(detail::uniform(rng, 1, static_cast<std::size_t>(spec.numerator_max)));
        const auto den = static_cast<unsigned long>(detail::uniform(rng, 1, static_cast<std::size_t>(spec.denominator_max)));
        return Rational(num, den);
    };
    std::vector<EdgeItem> edges;
    for (std::size_t k = 0; k < sk.size(); ++k) {
        for (std::size_t c = 0; c < mult[k]; ++c) {
            Rational wu = draw();
            Rational wv = spec.symmetric ? wu : draw();
            edges.push_back(EdgeItem{sk[k].first, sk[k].second, std::move(wu), std::move(wv)});
        }
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    return Instance(n, std::move(edges));
}

}  // namespace efx
