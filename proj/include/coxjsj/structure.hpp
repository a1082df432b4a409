#ifndef COXJSJ_STRUCTURE_HPP
#define COXJSJ_STRUCTURE_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coxjsj/errors.hpp"
#include "coxjsj/graph.hpp"

namespace coxjsj {

/// Connected components of the subgraph induced on `within`, ordered by smallest vertex.
inline std::vector<VertexSet> components_within(const DefiningGraph &g, VertexSet within) {
    std::vector<VertexSet> out;
    VertexSet left = within;
    while (!left.empty()) {
        VertexSet comp = VertexSet::single(left.min());
        VertexSet frontier = comp;
        while (!frontier.empty()) {
            VertexSet next;
            for (Vertex v : frontier)
                next |= g.neighbours(v);
            next = (next & left) - comp;
            comp |= next;
            frontier = next;
        }
        out.push_back(comp);
        left -= comp;
    }
    return out;
}

inline std::vector<VertexSet> components_after_removal(const DefiningGraph &g, VertexSet removed) {
    return components_within(g, g.vertices() - removed);
}

inline bool is_connected(const DefiningGraph &g) { return components_within(g, g.vertices()).size() <= 1; }

inline VertexSet essential_vertices(const DefiningGraph &g) {
    VertexSet out;
    for (Vertex v = 0; v < g.size(); ++v)
        if (g.degree(v) >= 3)
            out.insert(v);
    return out;
}

struct CutPairInfo {
    Vertex a = 0, b = 0; // a < b
    std::vector<VertexSet> components;
    std::optional<Vertex> singleton;

    int k() const { return static_cast<int>(components.size()); }
    VertexSet pair() const { return VertexSet{a, b}; }
};

/// Returns the components of Γ minus {a,b} when there are at least two of them.
inline std::optional<CutPairInfo> cut_pair_info(const DefiningGraph &g, Vertex a, Vertex b) {
    if (a == b)
        throw PreconditionError("cut pair needs two distinct vertices");
    auto comps = components_after_removal(g, VertexSet{a, b});
    if (comps.size() < 2)
        return std::nullopt;
    CutPairInfo info;
    info.a = std::min(a, b);
    info.b = std::max(a, b);
    for (const auto &c : comps)
        if (c.size() == 1 && !info.singleton)
            info.singleton = c.min();
    info.components = std::move(comps);
    return info;
}

/// All cut pairs in canonical order.
inline std::vector<CutPairInfo> cut_pairs(const DefiningGraph &g) {
    std::vector<CutPairInfo> out;
    for (Vertex a = 0; a < g.size(); ++a)
        for (Vertex b = a + 1; b < g.size(); ++b)
            if (auto info = cut_pair_info(g, a, b))
                out.push_back(std::move(*info));
    return out;
}

/// True when removing a and b disconnects the geometric realisation of Γ: either the
/// pair is an edge (its open interior becomes a component) or it is a cut pair.
inline bool separates_realisation(const DefiningGraph &g, Vertex a, Vertex b) {
    if (a == b)
        throw PreconditionError("separation needs two distinct vertices");
    return g.adjacent(a, b) || components_after_removal(g, VertexSet{a, b}).size() >= 2;
}

inline bool splits_over_two_ended(const DefiningGraph &g) {
    for (Vertex a = 0; a < g.size(); ++a)
        for (Vertex b = a + 1; b < g.size(); ++b)
            if (components_after_removal(g, VertexSet{a, b}).size() >= 2)
                return true;
    return false;
}

/// Cycle graph test: connected, 2-regular.
inline std::optional<int> cycle_length(const DefiningGraph &g) {
    if (g.size() < 3 || !is_connected(g))
        return std::nullopt;
    for (Vertex v = 0; v < g.size(); ++v)
        if (g.degree(v) != 2)
            return std::nullopt;
    return g.size();
}

inline bool is_cocompact_fuchsian(const DefiningGraph &g) {
    auto n = cycle_length(g);
    return n && *n >= 5;
}

struct AssumptionReport {
    bool triangle_free = true;
    bool one_ended = true;
    bool square_free = true;
    bool not_cycle = true;
    bool has_cut_pair = true;
    // One witness per flag, in the order above. Empty when the flag holds.
    std::array<std::string, 5> witnesses;

    bool passes_all() const { return triangle_free && one_ended && square_free && not_cycle && has_cut_pair; }

    std::array<bool, 5> flags() const { return {triangle_free, one_ended, square_free, not_cycle, has_cut_pair}; }

    static constexpr std::array<const char *, 5> flag_names = {"triangle_free", "one_ended", "square_free",
                                                               "not_cycle", "has_cut_pair"};
};

inline AssumptionReport check_standing_assumptions(const DefiningGraph &g) {
    AssumptionReport r;
    const int n = g.size();

    for (auto [u, v] : g.edges()) {
        VertexSet common = g.neighbours(u) & g.neighbours(v);
        if (!common.empty()) {
            r.triangle_free = false;
            r.witnesses[0] = "triangle " + g.label(u) + " " + g.label(v) + " " + g.label(common.min());
            break;
        }
    }

    // Any 4-cycle counts, induced or not.
    for (Vertex u = 0; u < n && r.square_free; ++u)
        for (Vertex w = u + 1; w < n; ++w) {
            VertexSet common = g.neighbours(u) & g.neighbours(w);
            if (common.size() >= 2) {
                auto it = common.begin();
                Vertex x = *it++;
                Vertex y = *it;
                r.square_free = false;
                r.witnesses[2] = "square " + g.label(u) + " " + g.label(x) + " " + g.label(w) + " " + g.label(y);
                break;
            }
        }

    auto comps = components_within(g, g.vertices());
    if (n == 0) {
        r.one_ended = false;
        r.witnesses[1] = "empty graph";
    } else if (comps.size() > 1) {
        r.one_ended = false;
        r.witnesses[1] = "disconnected: " + std::to_string(comps.size()) + " components";
    } else {
        for (Vertex v = 0; v < n && r.one_ended; ++v)
            if (components_after_removal(g, VertexSet::single(v)).size() > 1) {
                r.one_ended = false;
                r.witnesses[1] = "separating vertex " + g.label(v);
            }
        for (auto [u, v] : g.edges()) {
            if (!r.one_ended)
                break;
            if (components_after_removal(g, VertexSet{u, v}).size() > 1) {
                r.one_ended = false;
                r.witnesses[1] = "separating edge " + g.label(u) + " " + g.label(v);
            }
        }
        if (r.one_ended && n <= 2) {
            r.one_ended = false;
            r.witnesses[1] = "finite group: graph is a clique";
        }
    }

    if (auto len = cycle_length(g); len && *len >= 5) {
        r.not_cycle = false;
        r.witnesses[3] = "cycle of length " + std::to_string(*len);
    }

    r.has_cut_pair = false;
    for (Vertex a = 0; a < n && !r.has_cut_pair; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            if (components_after_removal(g, VertexSet{a, b}).size() >= 2) {
                r.has_cut_pair = true;
                break;
            }
    if (!r.has_cut_pair)
        r.witnesses[4] = "no pair of vertices separates the graph";
    return r;
}

struct Branch {
    Vertex from = 0, to = 0; // essential endpoints, from < to
    std::vector<Vertex> interior;

    int length() const { return static_cast<int>(interior.size()) + 1; }

    VertexSet vertices() const {
        VertexSet s{from, to};
        for (Vertex v : interior)
            s.insert(v);
        return s;
    }

    /// Vertices from `from` to `to` in path order.
    std::vector<Vertex> path() const {
        std::vector<Vertex> p{from};
        p.insert(p.end(), interior.begin(), interior.end());
        p.push_back(to);
        return p;
    }

    bool operator==(const Branch &) const = default;
};

/// Maximal paths between essential vertices with all interior vertices of degree 2,
/// sorted by (from, to, interior).
inline std::vector<Branch> branches(const DefiningGraph &g) {
    VertexSet ess = essential_vertices(g);
    if (ess.empty())
        throw PreconditionError("graph has no essential vertices, so it has no branches");
    std::vector<Branch> out;
    for (Vertex s : ess)
        for (Vertex first : g.neighbours(s)) {
            std::vector<Vertex> interior;
            Vertex prev = s, cur = first;
            while (!ess.contains(cur)) {
                if (g.degree(cur) != 2)
                    throw PreconditionError("vertex " + g.label(cur) + " has degree " +
                                            std::to_string(g.degree(cur)) + " and lies on no branch");
                interior.push_back(cur);
                VertexSet next = g.neighbours(cur) - VertexSet::single(prev);
                prev = cur;
                cur = next.min();
            }
            if (cur == s)
                throw PreconditionError("branch from " + g.label(s) + " returns to itself");
            if (s > cur)
                continue;
            out.push_back(Branch{s, cur, std::move(interior)});
        }
    std::sort(out.begin(), out.end(), [](const Branch &x, const Branch &y) {
        return std::tie(x.from, x.to, x.interior) < std::tie(y.from, y.to, y.interior);
    });
    return out;
}

namespace detail {

struct InducedCycleSearch {
    const DefiningGraph &g;
    VertexSet target;
    Vertex root;
    std::size_t budget;
    std::size_t nodes = 0;
    std::vector<Vertex> path;
    VertexSet on_path;
    std::optional<std::vector<Vertex>> found;

    bool extend() {
        if (++nodes > budget)
            throw InconclusiveError("induced cycle search exceeded its budget", nodes);
        Vertex last = path.back();
        for (Vertex v : g.neighbours(last) - on_path) {
            VertexSet touching = g.neighbours(v) & on_path;
            bool closes = touching.contains(root) && path.size() >= 2;
            VertexSet allowed = VertexSet::single(last);
            if (closes)
                allowed.insert(root);
            if (!allowed.contains(touching))
                continue;
            path.push_back(v);
            on_path.insert(v);
            if (closes) {
                if (on_path.contains(target)) {
                    found = path;
                    return true;
                }
            } else if (extend()) {
                return true;
            }
            path.pop_back();
            on_path.erase(v);
        }
        return false;
    }
};

} // namespace detail

/// An induced cycle of Γ passing through every vertex of `through`, as a vertex sequence
/// starting at the smallest vertex of `through`. Requires |through| >= 1.
inline std::optional<std::vector<Vertex>> induced_cycle_through(const DefiningGraph &g, VertexSet through,
                                                                std::size_t budget = 10'000'000) {
    if (through.empty())
        throw PreconditionError("induced cycle search needs a non-empty vertex set");
    detail::InducedCycleSearch s{g, through, through.min(), budget, 0, {through.min()}, VertexSet::single(through.min()), {}};
    s.extend();
    return s.found;
}

/// Cyclic order induced on `a_set` by an induced cycle through it. The result starts at the
/// smallest vertex and runs in the direction whose second element is smaller.
inline std::vector<Vertex> cyclic_order(const DefiningGraph &g, VertexSet a_set, std::size_t budget = 10'000'000) {
    if (a_set.size() < 2)
        throw PreconditionError("cyclic order needs at least two vertices");
    if (a_set.size() == 2)
        return a_set.to_vector();
    auto cycle = induced_cycle_through(g, a_set, budget);
    if (!cycle)
        throw PreconditionError("no induced cycle contains " + g.format(a_set) +
                                "; the set does not satisfy the separation conditions");
    std::vector<Vertex> order;
    for (Vertex v : *cycle)
        if (a_set.contains(v))
            order.push_back(v);
    if (order.size() > 2 && order.back() < order[1])
        std::reverse(order.begin() + 1, order.end());
    return order;
}

/// Pairs of cyclically consecutive elements of `order`. A 2-element order yields one pair.
inline std::vector<std::pair<Vertex, Vertex>> consecutive_pairs(const std::vector<Vertex> &order) {
    std::vector<std::pair<Vertex, Vertex>> out;
    const std::size_t n = order.size();
    if (n < 2)
        return out;
    if (n == 2) {
        out.emplace_back(std::min(order[0], order[1]), std::max(order[0], order[1]));
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        Vertex x = order[i], y = order[(i + 1) % n];
        out.emplace_back(std::min(x, y), std::max(x, y));
    }
    return out;
}

} // namespace coxjsj

#endif
