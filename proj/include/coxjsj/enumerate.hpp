#ifndef COXJSJ_ENUMERATE_HPP
#define COXJSJ_ENUMERATE_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coxjsj/errors.hpp"
#include "coxjsj/graph.hpp"
#include "coxjsj/k4.hpp"
#include "coxjsj/structure.hpp"

namespace coxjsj {

enum class SubgroupKind { finite, two_ended, large };

inline const char *to_string(SubgroupKind k) {
    switch (k) {
    case SubgroupKind::finite:
        return "finite";
    case SubgroupKind::two_ended:
        return "two_ended";
    case SubgroupKind::large:
        return "infinite_many_or_one_ended";
    }
    return "?";
}

/// Shape test for the special subgroup generated by `gens` in a triangle-free graph.
inline SubgroupKind classify_special_subgroup(const DefiningGraph &g, VertexSet gens) {
    auto v = gens.to_vector();
    bool clique = true;
    for (std::size_t i = 0; i < v.size() && clique; ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (!g.adjacent(v[i], v[j])) {
                clique = false;
                break;
            }
    if (clique)
        return SubgroupKind::finite;
    if (v.size() == 2)
        return SubgroupKind::two_ended;
    if (v.size() == 3)
        for (std::size_t c = 0; c < 3; ++c) {
            Vertex x = v[(c + 1) % 3], y = v[(c + 2) % 3];
            if (!g.adjacent(x, y) && g.adjacent(v[c], x) && g.adjacent(v[c], y))
                return SubgroupKind::two_ended;
        }
    return SubgroupKind::large;
}

/// Special subgroup up to conjugacy: its generating vertex set.
struct SpecialSubgroup {
    VertexSet generators;
    SubgroupKind kind = SubgroupKind::finite;

    static SpecialSubgroup of(const DefiningGraph &g, VertexSet gens) {
        return {gens, classify_special_subgroup(g, gens)};
    }
    bool operator==(const SpecialSubgroup &) const = default;
};

/// The unique common neighbour of a and b, if any. Two of them would form a square.
inline std::optional<Vertex> common_neighbour(const DefiningGraph &g, Vertex a, Vertex b) {
    VertexSet c = g.neighbours(a) & g.neighbours(b);
    if (c.empty())
        return std::nullopt;
    if (c.size() > 1)
        throw PreconditionError("vertices " + g.label(a) + " and " + g.label(b) +
                                " have several common neighbours, so the graph has a square");
    return c.min();
}

struct ApproxPairOrbit {
    CutPairInfo cut;
    int valence = 0;
    SpecialSubgroup stabiliser;

    Vertex a() const { return cut.a; }
    Vertex b() const { return cut.b; }
    int k() const { return cut.k(); }
    std::optional<Vertex> singleton() const { return cut.singleton; }

    /// Components of Γ∖{a,b} other than the singleton.
    std::vector<VertexSet> sides() const {
        std::vector<VertexSet> out;
        for (const auto &c : cut.components)
            if (!(cut.singleton && c == VertexSet::single(*cut.singleton)))
                out.push_back(c);
        return out;
    }
};

enum class SimKind { sim_pair, infinite_class };

struct SimClassOrbit {
    VertexSet a_set;
    SimKind kind = SimKind::infinite_class;
    std::vector<Vertex> order;
    std::vector<std::pair<Vertex, Vertex>> frontier_pairs;
    SpecialSubgroup stabiliser;
};

struct StarOrbit {
    VertexSet b_set;
    std::vector<CutPairInfo> internal_cut_pairs;
    SpecialSubgroup stabiliser;
};

/// Per-graph state shared by the enumerators: the (A1) relation, a catalogue of subdivided K4s
/// for (A2), and memoised (A2) answers. Not thread-safe; build one per thread.
class JsjContext {
public:
    explicit JsjContext(const DefiningGraph &g, std::size_t k4_budget = default_k4_budget)
        : g_(g), budget_(k4_budget), separates_(static_cast<std::size_t>(g.size())) {
        for (Vertex a = 0; a < g.size(); ++a)
            for (Vertex b = a + 1; b < g.size(); ++b)
                if (separates_realisation(g, a, b)) {
                    separates_[static_cast<std::size_t>(a)].insert(b);
                    separates_[static_cast<std::size_t>(b)].insert(a);
                }
    }

    const DefiningGraph &graph() const { return g_; }
    std::size_t budget() const { return budget_; }

    /// Vertices u with {u,v} separating the realisation of Γ.
    VertexSet separating_partners(Vertex v) const { return separates_[static_cast<std::size_t>(v)]; }

    bool a1(VertexSet s) const {
        for (Vertex v : s)
            if (!separating_partners(v).contains(s - VertexSet::single(v)))
                return false;
        return true;
    }

    bool a2(VertexSet s) {
        if (s.size() < 3)
            return true;
        if (auto it = a2_memo_.find(s); it != a2_memo_.end())
            return it->second;
        bool ok = !catalogue().violated_by(s);
        a2_memo_.emplace(s, ok);
        return ok;
    }

    const K4Catalogue &catalogue() {
        if (!catalogue_)
            catalogue_ = std::make_unique<K4Catalogue>(g_, budget_);
        return *catalogue_;
    }

    const std::optional<CutPairInfo> &cut_info(Vertex a, Vertex b) {
        auto key = std::minmax(a, b);
        auto it = cut_cache_.find(key);
        if (it == cut_cache_.end())
            it = cut_cache_.emplace(key, cut_pair_info(g_, a, b)).first;
        return it->second;
    }

private:
    const DefiningGraph &g_;
    std::size_t budget_;
    std::vector<VertexSet> separates_;
    std::unique_ptr<K4Catalogue> catalogue_;
    std::unordered_map<VertexSet, bool> a2_memo_;
    std::map<std::pair<Vertex, Vertex>, std::optional<CutPairInfo>> cut_cache_;
};

inline bool satisfies_a1(const DefiningGraph &g, VertexSet a_set) {
    auto v = a_set.to_vector();
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (!separates_realisation(g, v[i], v[j]))
                return false;
    return true;
}

inline bool satisfies_a2(const DefiningGraph &g, VertexSet a_set, std::size_t budget = default_k4_budget) {
    return !a2_violation(g, a_set, budget);
}

namespace detail {

// Bron-Kerbosch with pivoting over an adjacency given as vertex sets.
inline void maximal_cliques(const std::vector<VertexSet> &adj, VertexSet r, VertexSet p, VertexSet x,
                            const std::function<void(VertexSet)> &emit) {
    if (p.empty() && x.empty()) {
        emit(r);
        return;
    }
    Vertex pivot = (p | x).min();
    int best = -1;
    for (Vertex u : p | x) {
        int c = (p & adj[static_cast<std::size_t>(u)]).size();
        if (c > best) {
            best = c;
            pivot = u;
        }
    }
    for (Vertex v : p - adj[static_cast<std::size_t>(pivot)]) {
        VertexSet nv = adj[static_cast<std::size_t>(v)];
        maximal_cliques(adj, r | VertexSet::single(v), p & nv, x & nv, emit);
        p.erase(v);
        x.insert(v);
    }
}

} // namespace detail

/// Maximal vertex sets satisfying (A1) and (A2) whose special subgroup is infinite,
/// in canonical order.
inline std::vector<VertexSet> enumerate_a_sets(JsjContext &ctx) {
    const DefiningGraph &g = ctx.graph();
    std::vector<VertexSet> adj;
    for (Vertex v = 0; v < g.size(); ++v)
        adj.push_back(ctx.separating_partners(v));

    std::set<VertexSet> found;
    auto globally_maximal = [&](VertexSet s) {
        VertexSet ext = g.vertices() - s;
        for (Vertex v : s)
            ext &= ctx.separating_partners(v);
        for (Vertex v : ext)
            if (ctx.a2(s | VertexSet::single(v)))
                return false;
        return true;
    };

    detail::maximal_cliques(adj, VertexSet{}, g.vertices(), VertexSet{}, [&](VertexSet clique) {
        if (ctx.a2(clique)) {
            found.insert(clique);
            return;
        }
        // (A1)∧(A2) is inherited by subsets: grow subsets of the clique in increasing vertex
        // order, stopping at the first (A2) failure.
        std::vector<VertexSet> good;
        std::function<void(VertexSet, VertexSet)> grow = [&](VertexSet s, VertexSet cand) {
            bool extended = false;
            for (Vertex v : cand) {
                VertexSet t = s | VertexSet::single(v);
                VertexSet later = VertexSet(cand.bits() & ~((std::uint64_t{2} << v) - 1));
                if (ctx.a2(t)) {
                    extended = true;
                    grow(t, later);
                }
            }
            (void)extended;
            good.push_back(s);
        };
        grow(VertexSet{}, clique);
        for (VertexSet s : good) {
            if (s.size() < 2)
                continue;
            bool maximal_in_clique = true;
            for (Vertex v : clique - s)
                if (ctx.a2(s | VertexSet::single(v))) {
                    maximal_in_clique = false;
                    break;
                }
            if (maximal_in_clique && globally_maximal(s))
                found.insert(s);
        }
    });

    std::vector<VertexSet> out;
    for (VertexSet s : found)
        if (classify_special_subgroup(g, s) != SubgroupKind::finite)
            out.push_back(s);
    return out;
}

inline std::vector<VertexSet> enumerate_a_sets(const DefiningGraph &g, std::size_t budget = default_k4_budget) {
    JsjContext ctx(g, budget);
    return enumerate_a_sets(ctx);
}

/// True when the class of `a_set` is really the boundary of an essential cut pair with at
/// least three complementary components.
inline bool is_approx_coincident(const DefiningGraph &g, VertexSet a_set) {
    auto essential_approx = [&](Vertex a, Vertex b) {
        if (g.degree(a) < 3 || g.degree(b) < 3)
            return false;
        auto info = cut_pair_info(g, a, b);
        return info && info->k() >= 3;
    };
    auto v = a_set.to_vector();
    if (v.size() == 2)
        return essential_approx(v[0], v[1]);
    if (v.size() == 3)
        for (std::size_t c = 0; c < 3; ++c) {
            Vertex x = v[(c + 1) % 3], y = v[(c + 2) % 3];
            if (g.adjacent(v[c], x) && g.adjacent(v[c], y) && essential_approx(x, y))
                return true;
        }
    return false;
}

inline std::vector<std::pair<Vertex, Vertex>> frontier_pairs(const DefiningGraph &g,
                                                             const std::vector<Vertex> &order) {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (auto [x, y] : consecutive_pairs(order))
        if (g.degree(x) >= 3 && g.degree(y) >= 3 && cut_pair_info(g, x, y))
            out.emplace_back(x, y);
    return out;
}

inline std::vector<std::pair<Vertex, Vertex>> frontier_pairs(const DefiningGraph &g, const SimClassOrbit &orbit) {
    return frontier_pairs(g, orbit.order);
}

inline std::vector<SimClassOrbit> enumerate_sim_orbits(JsjContext &ctx) {
    const DefiningGraph &g = ctx.graph();
    std::vector<SimClassOrbit> out;
    for (VertexSet a : enumerate_a_sets(ctx)) {
        if (is_approx_coincident(g, a))
            continue;
        SimClassOrbit o;
        o.a_set = a;
        o.kind = classify_special_subgroup(g, a) == SubgroupKind::two_ended ? SimKind::sim_pair
                                                                            : SimKind::infinite_class;
        o.order = cyclic_order(g, a, ctx.budget());
        o.frontier_pairs = frontier_pairs(g, o.order);
        VertexSet stab = a;
        if (o.kind == SimKind::sim_pair && a.size() == 2) {
            auto v = a.to_vector();
            if (auto c = common_neighbour(g, v[0], v[1]))
                stab.insert(*c);
        }
        o.stabiliser = SpecialSubgroup::of(g, stab);
        out.push_back(std::move(o));
    }
    return out;
}

inline std::vector<SimClassOrbit> enumerate_sim_orbits(const DefiningGraph &g,
                                                       std::size_t budget = default_k4_budget) {
    JsjContext ctx(g, budget);
    return enumerate_sim_orbits(ctx);
}

inline std::vector<ApproxPairOrbit> enumerate_approx_orbits(const DefiningGraph &g) {
    std::vector<ApproxPairOrbit> out;
    VertexSet ess = essential_vertices(g);
    for (Vertex a : ess)
        for (Vertex b : ess) {
            if (b <= a)
                continue;
            auto info = cut_pair_info(g, a, b);
            if (!info || info->k() < 3)
                continue;
            ApproxPairOrbit o;
            o.valence = info->singleton ? 2 * (info->k() - 1) : info->k();
            VertexSet stab{a, b};
            if (info->singleton)
                stab.insert(*info->singleton);
            else if (auto c = common_neighbour(g, a, b))
                stab.insert(*c);
            o.stabiliser = SpecialSubgroup::of(g, stab);
            o.cut = std::move(*info);
            out.push_back(std::move(o));
        }
    return out;
}

/// (B1): for every pair C of essential vertices, b_set∖C lies in one component of Γ∖C.
inline bool satisfies_b1(const DefiningGraph &g, VertexSet b_set) {
    VertexSet ess = essential_vertices(g);
    for (Vertex c1 : ess)
        for (Vertex c2 : ess) {
            if (c2 <= c1)
                continue;
            VertexSet rest = b_set - VertexSet{c1, c2};
            if (rest.size() < 2)
                continue;
            int hit = 0;
            for (VertexSet comp : components_after_removal(g, VertexSet{c1, c2}))
                if (comp.intersects(rest))
                    ++hit;
            if (hit > 1)
                return false;
        }
    return true;
}

inline std::vector<StarOrbit> enumerate_star_orbits(const DefiningGraph &g) {
    VertexSet ess = essential_vertices(g);
    // x ~ y when no pair of essential vertices avoiding both separates them; (B1) sets are
    // exactly the cliques of this relation.
    std::vector<VertexSet> together(static_cast<std::size_t>(g.size()));
    for (Vertex x : ess)
        together[static_cast<std::size_t>(x)] = ess - VertexSet::single(x);
    for (Vertex c1 : ess)
        for (Vertex c2 : ess) {
            if (c2 <= c1)
                continue;
            auto comps = components_after_removal(g, VertexSet{c1, c2});
            if (comps.size() < 2)
                continue;
            for (Vertex x : ess - VertexSet{c1, c2})
                for (const auto &comp : comps)
                    if (comp.contains(x))
                        together[static_cast<std::size_t>(x)] &= comp | VertexSet{c1, c2};
        }
    std::vector<VertexSet> sets;
    detail::maximal_cliques(together, VertexSet{}, ess, VertexSet{}, [&](VertexSet b) {
        if (b.size() >= 4)
            sets.push_back(b);
    });
    std::sort(sets.begin(), sets.end());

    std::vector<StarOrbit> out;
    for (VertexSet b : sets) {
        StarOrbit o;
        o.b_set = b;
        for (Vertex x : b)
            for (Vertex y : b)
                if (x < y)
                    if (auto info = cut_pair_info(g, x, y))
                        o.internal_cut_pairs.push_back(std::move(*info));
        o.stabiliser = SpecialSubgroup::of(g, b);
        out.push_back(std::move(o));
    }
    return out;
}

} // namespace coxjsj

#endif
