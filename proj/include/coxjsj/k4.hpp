#ifndef COXJSJ_K4_HPP
#define COXJSJ_K4_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxjsj/errors.hpp"
#include "coxjsj/graph.hpp"
#include "coxjsj/structure.hpp"

namespace coxjsj {

inline constexpr std::size_t default_k4_budget = 10'000'000;

/// Order in which the six arcs are stored: index pairs into branch_vertices.
inline constexpr std::array<std::pair<int, int>, 6> k4_arc_pairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// A topological K4 in Γ: four branch vertices and six internally disjoint arcs.
struct SubdividedK4 {
    std::array<Vertex, 4> branch_vertices{};
    // arcs[i] runs from branch_vertices[k4_arc_pairs[i].first] to ...second, endpoints included.
    std::array<std::vector<Vertex>, 6> arcs;
    bool induced = false;

    VertexSet vertices() const {
        VertexSet s;
        for (const auto &a : arcs)
            for (Vertex v : a)
                s.insert(v);
        return s;
    }

    VertexSet arc_vertices(int i) const {
        VertexSet s;
        for (Vertex v : arcs[static_cast<std::size_t>(i)])
            s.insert(v);
        return s;
    }

    int edge_count() const {
        int m = 0;
        for (const auto &a : arcs)
            m += static_cast<int>(a.size()) - 1;
        return m;
    }
};

namespace detail {

class K4Search {
public:
    K4Search(const DefiningGraph &g, bool induced_only, std::size_t budget)
        : g_(g), induced_only_(induced_only), budget_(budget) {}

    // Calls visit(const SubdividedK4&) for each subdivided K4 in canonical order until it returns true.
    // Returns whether the visitor stopped the search.
    template <class Visit>
    bool run(Visit &&visit) {
        std::vector<Vertex> cand;
        for (Vertex v = 0; v < g_.size(); ++v)
            if (g_.degree(v) >= 3)
                cand.push_back(v);
        const std::size_t n = cand.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k)
                    for (std::size_t l = k + 1; l < n; ++l) {
                        cur_.branch_vertices = {cand[i], cand[j], cand[k], cand[l]};
                        used_ = VertexSet{cand[i], cand[j], cand[k], cand[l]};
                        if (route(0, visit))
                            return true;
                    }
        return false;
    }

    std::size_t nodes() const { return nodes_; }

private:
    const DefiningGraph &g_;
    bool induced_only_;
    std::size_t budget_;
    std::size_t nodes_ = 0;
    SubdividedK4 cur_;
    VertexSet used_;

    void tick() {
        if (++nodes_ > budget_)
            throw InconclusiveError("subdivided K4 search exceeded its node budget", nodes_);
    }

    Vertex end_of(int arc, bool second) const {
        auto [x, y] = k4_arc_pairs[static_cast<std::size_t>(arc)];
        return cur_.branch_vertices[static_cast<std::size_t>(second ? y : x)];
    }

    bool connected_avoiding(Vertex s, Vertex t, VertexSet blocked) const {
        VertexSet seen = VertexSet::single(s);
        VertexSet frontier = seen;
        VertexSet open = g_.vertices() - blocked;
        open.insert(t);
        while (!frontier.empty()) {
            VertexSet next;
            for (Vertex v : frontier)
                next |= g_.neighbours(v);
            if (next.contains(t))
                return true;
            next = (next & open) - seen;
            seen |= next;
            frontier = next;
        }
        return false;
    }

    bool remaining_routable(int from_arc) const {
        for (int a = from_arc; a < 6; ++a) {
            Vertex s = end_of(a, false), t = end_of(a, true);
            if (g_.adjacent(s, t))
                continue;
            if (!connected_avoiding(s, t, used_))
                return false;
        }
        return true;
    }

    template <class Visit>
    bool route(int arc, Visit &visit) {
        tick();
        if (arc == 6) {
            cur_.induced = is_induced();
            if (induced_only_ && !cur_.induced)
                return false;
            return visit(static_cast<const SubdividedK4 &>(cur_));
        }
        if (!remaining_routable(arc))
            return false;
        Vertex s = end_of(arc, false), t = end_of(arc, true);
        auto &path = cur_.arcs[static_cast<std::size_t>(arc)];
        path.assign(1, s);
        if (g_.adjacent(s, t)) {
            path.push_back(t);
            if (route(arc + 1, visit))
                return true;
            path.clear();
            if (induced_only_)
                return false;
            path.push_back(s);
        }
        bool stop = walk(arc, s, t, visit);
        path.clear();
        return stop;
    }

    template <class Visit>
    bool walk(int arc, Vertex cur, Vertex t, Visit &visit) {
        tick();
        auto &path = cur_.arcs[static_cast<std::size_t>(arc)];
        for (Vertex v : g_.neighbours(cur) - used_) {
            if (induced_only_) {
                VertexSet touching = g_.neighbours(v) & used_;
                VertexSet allowed{cur, t};
                if (!allowed.contains(touching))
                    continue;
            }
            if (!connected_avoiding(v, t, used_ | VertexSet::single(v)))
                continue;
            path.push_back(v);
            used_.insert(v);
            bool stop;
            if (g_.adjacent(v, t)) {
                path.push_back(t);
                stop = route(arc + 1, visit);
                path.pop_back();
                if (!stop && !induced_only_)
                    stop = walk(arc, v, t, visit);
            } else {
                stop = walk(arc, v, t, visit);
            }
            used_.erase(v);
            path.pop_back();
            if (stop)
                return true;
        }
        return false;
    }

    bool is_induced() const {
        VertexSet all = cur_.vertices();
        int induced_edges = 0;
        for (Vertex v : all)
            induced_edges += (g_.neighbours(v) & all).size();
        return induced_edges / 2 == cur_.edge_count();
    }
};

} // namespace detail

/// Enumerates every subdivided K4 of Γ (every one whose union is induced, when `induced_only`)
/// in canonical order. The visitor returns true to stop. Throws InconclusiveError when the node
/// budget runs out before the enumeration finishes or the visitor stops it.
template <class Visit>
bool for_each_subdivided_k4(const DefiningGraph &g, bool induced_only, Visit &&visit,
                            std::size_t budget = default_k4_budget) {
    detail::K4Search search(g, induced_only, budget);
    return search.run(visit);
}

/// The canonically first subdivided K4, or nothing when none exists.
inline std::optional<SubdividedK4> find_subdivided_k4(const DefiningGraph &g, bool induced_only,
                                                      std::size_t budget = default_k4_budget) {
    std::optional<SubdividedK4> found;
    for_each_subdivided_k4(
        g, induced_only,
        [&](const SubdividedK4 &k) {
            found = k;
            return true;
        },
        budget);
    return found;
}

struct A2Violation {
    SubdividedK4 k4;
    std::array<Vertex, 3> triple{}; // three members of the set lying on the K4
};

/// Compact form of a subdivided K4 used for repeated containment queries.
struct K4Shape {
    VertexSet all;
    std::array<VertexSet, 6> arcs;

    explicit K4Shape(const SubdividedK4 &k) : all(k.vertices()) {
        for (int i = 0; i < 6; ++i)
            arcs[static_cast<std::size_t>(i)] = k.arc_vertices(i);
    }

    /// True when at least three members of `s` lie on the K4 but `s` is not inside one closed arc.
    bool violated_by(VertexSet s) const {
        if ((s & all).size() < 3)
            return false;
        for (const auto &a : arcs)
            if (a.contains(s))
                return false;
        return true;
    }
};

namespace detail {

inline std::array<Vertex, 3> violation_triple(const K4Shape &shape, VertexSet s) {
    VertexSet on = s & shape.all;
    std::vector<Vertex> v = on.to_vector();
    // Prefer three members that no single arc contains.
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            for (std::size_t k = j + 1; k < v.size(); ++k) {
                VertexSet t{v[i], v[j], v[k]};
                bool together = false;
                for (const auto &a : shape.arcs)
                    together = together || a.contains(t);
                if (!together)
                    return {v[i], v[j], v[k]};
            }
    return {v[0], v[1], v[2]};
}

} // namespace detail

/// A subdivided K4 carrying at least three vertices of `a_set` while `a_set` does not lie on a
/// single one of its arcs.
inline std::optional<A2Violation> a2_violation(const DefiningGraph &g, VertexSet a_set,
                                               std::size_t budget = default_k4_budget) {
    if (a_set.size() < 3)
        return std::nullopt;
    std::optional<A2Violation> found;
    for_each_subdivided_k4(
        g, false,
        [&](const SubdividedK4 &k) {
            K4Shape shape(k);
            if (!shape.violated_by(a_set))
                return false;
            found = A2Violation{k, detail::violation_triple(shape, a_set)};
            return true;
        },
        budget);
    return found;
}

/// Every subdivided K4 of Γ in compact form, for answering many (A2) queries on one graph.
class K4Catalogue {
public:
    K4Catalogue() = default;

    explicit K4Catalogue(const DefiningGraph &g, std::size_t budget = default_k4_budget) {
        for_each_subdivided_k4(
            g, false,
            [&](const SubdividedK4 &k) {
                shapes_.emplace_back(k);
                return false;
            },
            budget);
    }

    const std::vector<K4Shape> &shapes() const { return shapes_; }
    bool empty() const { return shapes_.empty(); }

    bool violated_by(VertexSet s) const {
        if (s.size() < 3)
            return false;
        for (const auto &sh : shapes_)
            if (sh.violated_by(s))
                return true;
        return false;
    }

private:
    std::vector<K4Shape> shapes_;
};

} // namespace coxjsj

#endif
