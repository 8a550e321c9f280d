#pragma once

// Random test inputs shared by the unit tests and the acceptance runner.

#include "seifertvol/manifold.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace gen {

inline long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline long nonzero(std::mt19937_64& rng, long r) {
    long v = 0;
    while (v == 0) v = uniform(rng, -r, r);
    return v;
}

inline seifertvol::Rational rational(std::mt19937_64& rng, long num_range, long max_den) {
    return seifertvol::Rational(uniform(rng, -num_range, num_range), uniform(rng, 1, max_den));
}

inline bool connected(const std::vector<std::string>& ids, const std::vector<std::pair<std::string, std::string>>& edges) {
    if (ids.empty()) return false;
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::set<std::string> seen{ids.front()};
    std::vector<std::string> stack{ids.front()};
    while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (const auto& y : adj[x])
            if (seen.insert(y).second) stack.push_back(y);
    }
    return seen.size() == ids.size();
}

// Connected simplicial graph on n vertices, chi < 0, random rational k and
// nonzero integer b.
inline seifertvol::FormattedGraphManifold random_manifold(std::mt19937_64& rng, long n) {
    while (true) {
        seifertvol::FormattedGraphManifold m;
        std::vector<std::string> ids;
        for (long i = 0; i < n; ++i) {
            ids.push_back("v" + std::to_string(i));
            m.add_vertex(ids.back(), -seifertvol::Rational(uniform(rng, 1, 6), uniform(rng, 1, 3)), rational(rng, 6, 4));
        }
        std::vector<std::pair<std::string, std::string>> pairs;
        for (long i = 0; i < n; ++i)
            for (long j = i + 1; j < n; ++j)
                if (uniform(rng, 0, 3) == 0) {
                    pairs.emplace_back(ids[i], ids[j]);
                    m.add_edge(ids[i], ids[j], nonzero(rng, 3));
                }
        if (connected(ids, pairs)) return m;
    }
}

// A consistent random cover: a degree-d graph cover (random permutation per
// base edge), fiber degrees f in {1,2,3} and a global c with [J':J] = c f^2
// and [T':T] = c f_u f_w, so that [J':J]/f = sum T/f_w holds at every vertex.
inline seifertvol::CoverSpec random_cover(std::mt19937_64& rng, const seifertvol::FormattedGraphManifold& base,
                                          const std::string& prefix = "c") {
    // every cover of degree > 1 of a tree is disconnected
    const bool tree = base.edges.size() + 1 == base.vertices.size();
    const long d = tree ? 1 : uniform(rng, 1, 3);
    const long c = uniform(rng, 1, 2);
    while (true) {
        seifertvol::CoverSpec spec;
        std::map<std::pair<std::string, long>, std::string> id;
        std::map<std::string, long> f;
        std::vector<std::string> ids;
        for (const auto& [v, _] : base.vertices)
            for (long i = 0; i < d; ++i) {
                std::string name = prefix + "[" + v + "." + std::to_string(i) + "]";
                id[{v, i}] = name;
                f[name] = uniform(rng, 1, 3);
                ids.push_back(name);
                spec.vertices.push_back({name, v, c * f[name] * f[name], f[name]});
            }
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& e : base.edges) {
            std::vector<long> perm(d);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            for (long i = 0; i < d; ++i) {
                std::string u = id[{e.u, i}], w = id[{e.v, perm[i]}];
                pairs.emplace_back(u, w);
                spec.edges.push_back({u, w, c * f[u] * f[w], std::nullopt, std::nullopt});
            }
        }
        if (connected(ids, pairs)) return spec;
    }
}

}  // namespace gen
