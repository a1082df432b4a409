#ifndef COXJSJ_COMPARE_HPP
#define COXJSJ_COMPARE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "coxjsj/tree.hpp"

namespace coxjsj {

enum class Verdict { equivalent, distinct, invariant_only };

inline const char *to_string(Verdict v) {
    switch (v) {
    case Verdict::equivalent:
        return "equivalent";
    case Verdict::distinct:
        return "distinct";
    case Verdict::invariant_only:
        return "invariant_only";
    }
    return "?";
}

/// Vertex orbits of both trees sharing one stable colour.
struct ColourClass {
    int colour = 0;
    std::vector<std::string> first, second;
};

struct ComparisonResult {
    Verdict verdict = Verdict::distinct;
    std::optional<std::vector<ColourClass>> matched_colouring;
    std::string reason;
    int rounds = 0;

    /// "equivalent (QI)", "invariant_only" or "distinct".
    std::string label() const {
        if (verdict == Verdict::equivalent)
            return "equivalent (QI)";
        return to_string(verdict);
    }
};

namespace detail {

inline Count add_counts(Count a, Count b) {
    if (a.is_infinite() || b.is_infinite())
        return Count::infinite();
    return Count(a.value() + b.value());
}

struct JointQuotient {
    struct Half {
        std::size_t nbr;
        std::size_t edge;
        Count mult; // at this end
    };
    std::vector<VType> vtype;
    std::vector<Count> valence;
    std::vector<std::string> id;
    std::vector<std::vector<Half>> adj;
    std::size_t split = 0; // vertices [0, split) come from the first tree

    JointQuotient(const QuotientTree &t1, const QuotientTree &t2) {
        std::size_t edge_base = 0;
        const QuotientTree *trees[2] = {&t1, &t2};
        for (int side = 0; side < 2; ++side) {
            const QuotientTree *t = trees[side];
            std::map<std::string, std::size_t> index;
            for (const auto &v : t->vertices) {
                index[v.id] = vtype.size();
                vtype.push_back(v.vtype);
                valence.push_back(v.valence);
                id.push_back(v.id);
            }
            adj.resize(vtype.size());
            for (std::size_t e = 0; e < t->edges.size(); ++e) {
                const auto &ed = t->edges[e];
                std::size_t a = index.at(ed.ends[0]), b = index.at(ed.ends[1]);
                adj[a].push_back({b, edge_base + e, ed.mult.at(ed.ends[0])});
                adj[b].push_back({a, edge_base + e, ed.mult.at(ed.ends[1])});
            }
            edge_base += t->edges.size();
            if (side == 0)
                split = vtype.size();
        }
    }

    std::size_t size() const { return vtype.size(); }
};

using ChildMultiset = std::vector<std::pair<int, Count>>;

inline ChildMultiset aggregate(std::map<int, Count> &&m) {
    return ChildMultiset(m.begin(), m.end());
}

// Rooted unfolding of the universal cover to a fixed depth, as interned canonical ids.
class Unfolder {
public:
    explicit Unfolder(const JointQuotient &q) : q_(q) {}

    int canon(std::size_t v, std::optional<std::size_t> parent_edge, int depth) {
        auto key = std::make_tuple(v, parent_edge ? static_cast<long long>(*parent_edge) : -1LL, depth);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        std::map<int, Count> children;
        if (depth > 0)
            for (const auto &h : q_.adj[v]) {
                Count m = h.mult;
                if (parent_edge && h.edge == *parent_edge) {
                    if (!m.is_infinite())
                        m = Count(m.value() - 1);
                    if (m == Count(0))
                        continue;
                }
                int c = canon(h.nbr, h.edge, depth - 1);
                auto [it, fresh] = children.emplace(c, m);
                if (!fresh)
                    it->second = add_counts(it->second, m);
            }
        auto sig = std::make_tuple(static_cast<int>(q_.vtype[v]), q_.valence[v], aggregate(std::move(children)));
        auto [it, fresh] = intern_.emplace(std::move(sig), static_cast<int>(intern_.size()));
        memo_.emplace(key, it->second);
        return it->second;
    }

private:
    const JointQuotient &q_;
    std::map<std::tuple<int, Count, ChildMultiset>, int> intern_;
    std::map<std::tuple<std::size_t, long long, int>, int> memo_;
};

inline std::string valence_list(const QuotientTree &t, VType ty) {
    std::set<Count> vals;
    for (const auto &v : t.vertices)
        if (v.vtype == ty)
            vals.insert(v.valence);
    if (vals.empty())
        return "none";
    std::string s;
    for (const auto &c : vals)
        s += (s.empty() ? "" : ",") + c.str();
    return s;
}

} // namespace detail

/// Decides whether two quotient trees have isomorphic type-preserving universal covers, by joint
/// colour refinement, cross-checked by rooted unfolding to `depth`. Equivalence is labelled QI
/// only when both defining graphs lie in the class with no induced subdivided K4.
inline ComparisonResult compare_trees(const QuotientTree &t1, const QuotientTree &t2,
                                      std::pair<bool, bool> in_class_g, int depth = 8) {
    detail::JointQuotient q(t1, t2);
    const std::size_t n = q.size();
    ComparisonResult r;

    std::vector<int> colour(n);
    {
        std::map<std::pair<int, Count>, int> ids;
        for (std::size_t v = 0; v < n; ++v)
            ids.emplace(std::pair(static_cast<int>(q.vtype[v]), q.valence[v]), 0);
        int next = 0;
        for (auto &[k, id] : ids)
            id = next++;
        for (std::size_t v = 0; v < n; ++v)
            colour[v] = ids.at({static_cast<int>(q.vtype[v]), q.valence[v]});
    }
    auto colour_count = [&] { return std::set<int>(colour.begin(), colour.end()).size(); };
    std::size_t classes = colour_count();
    while (true) {
        std::map<std::pair<int, detail::ChildMultiset>, int> ids;
        std::vector<std::pair<int, detail::ChildMultiset>> sig(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::map<int, Count> nb;
            for (const auto &h : q.adj[v]) {
                auto [it, fresh] = nb.emplace(colour[h.nbr], h.mult);
                if (!fresh)
                    it->second = detail::add_counts(it->second, h.mult);
            }
            sig[v] = {colour[v], detail::aggregate(std::move(nb))};
            ids.emplace(sig[v], 0);
        }
        int next = 0;
        for (auto &[k, id] : ids)
            id = next++;
        for (std::size_t v = 0; v < n; ++v)
            colour[v] = ids.at(sig[v]);
        ++r.rounds;
        std::size_t now = colour_count();
        if (now == classes)
            break;
        classes = now;
    }

    std::set<int> c1(colour.begin(), colour.begin() + static_cast<std::ptrdiff_t>(q.split));
    std::set<int> c2(colour.begin() + static_cast<std::ptrdiff_t>(q.split), colour.end());
    bool refined_equal = c1 == c2;

    detail::Unfolder unfold(q);
    std::set<int> u1, u2;
    for (std::size_t v = 0; v < n; ++v)
        (v < q.split ? u1 : u2).insert(unfold.canon(v, std::nullopt, depth));
    bool unfolded_equal = u1 == u2;

    if (refined_equal && unfolded_equal) {
        r.verdict = in_class_g.first && in_class_g.second ? Verdict::equivalent : Verdict::invariant_only;
        std::vector<ColourClass> classes_out;
        for (int c : c1) {
            ColourClass cc{c, {}, {}};
            for (std::size_t v = 0; v < n; ++v)
                if (colour[v] == c)
                    (v < q.split ? cc.first : cc.second).push_back(q.id[v]);
            if (cc.first.empty() || cc.second.empty())
                throw BuildError("colour class " + std::to_string(c) + " is matched on one side only");
            classes_out.push_back(std::move(cc));
        }
        r.matched_colouring = std::move(classes_out);
        r.reason = r.verdict == Verdict::equivalent
                       ? "stable colourings agree"
                       : "stable colourings agree; not a quasi-isometry verdict outside the class without induced "
                         "subdivided K4";
        return r;
    }

    r.verdict = Verdict::distinct;
    for (VType ty : all_vtypes) {
        std::string a = detail::valence_list(t1, ty), b = detail::valence_list(t2, ty);
        if (a != b) {
            r.reason = std::string(to_string(ty)) + " valence " + a + " vs " + b;
            return r;
        }
    }
    if (!refined_equal)
        r.reason = "colour refinement separates the trees after " + std::to_string(r.rounds) + " rounds";
    else
        r.reason = "rooted unfoldings differ within depth " + std::to_string(depth);
    return r;
}

} // namespace coxjsj

#endif
