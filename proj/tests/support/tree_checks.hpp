#ifndef COXJSJ_TESTS_TREE_CHECKS_HPP
#define COXJSJ_TESTS_TREE_CHECKS_HPP

// Structural checks on a quotient tree, written out directly from the definitions and sharing
// no code with tree_violations.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "coxjsj/tree.hpp"

namespace coxjsj::testing {

inline int type_class(VType t) {
    if (t == VType::infinite_sim)
        return 2;
    if (t == VType::star)
        return 3;
    return 1;
}

/// One line per failed invariant.
inline std::vector<std::string> structural_failures(const QuotientTree &t, const DefiningGraph &g) {
    std::vector<std::string> bad;
    std::map<std::string, const TreeVertex *> v;
    for (const auto &x : t.vertices)
        v[x.id] = &x;
    std::map<std::string, int> finite_sum;
    std::map<std::string, bool> saw_infinite;
    for (const auto &e : t.edges) {
        const TreeVertex *a = v.at(e.ends[0]), *b = v.at(e.ends[1]);
        if (type_class(a->vtype) == type_class(b->vtype))
            bad.push_back("same type across " + e.id);
        if (a->vtype == VType::sim_pair && b->vtype != VType::star)
            bad.push_back("sim pair " + a->id + " next to " + to_string(b->vtype));
        if (b->vtype == VType::sim_pair && a->vtype != VType::star)
            bad.push_back("sim pair " + b->id + " next to " + to_string(a->vtype));
        for (const auto &end : e.ends) {
            Count m = e.mult.at(end);
            if (m.is_infinite())
                saw_infinite[end] = true;
            else
                finite_sum[end] += m.value();
        }
    }
    for (const auto &x : t.vertices) {
        if (x.vtype == VType::subdivision && x.valence != Count(2))
            bad.push_back("subdivision " + x.id + " valence " + x.valence.str());
        if (x.valence.is_infinite()) {
            if (finite_sum[x.id] != 0)
                bad.push_back("finite multiplicity at " + x.id);
        } else if (saw_infinite[x.id] || finite_sum[x.id] != x.valence.value()) {
            bad.push_back("degree sum at " + x.id);
        }
    }
    for (const auto &a : t.vertices)
        for (const auto &b : t.vertices)
            if (a.vtype == VType::infinite_sim && b.vtype == VType::star) {
                std::set<std::string> sa(a.set.begin(), a.set.end());
                int common = 0;
                for (const auto &l : b.set)
                    common += static_cast<int>(sa.count(l));
                if (common > 2)
                    bad.push_back("class " + a.id + " meets star " + b.id + " in " + std::to_string(common));
            }
    // Connected with one edge fewer than vertices.
    if (!t.vertices.empty()) {
        std::set<std::string> seen{t.vertices.front().id};
        std::vector<std::string> stack{t.vertices.front().id};
        while (!stack.empty()) {
            std::string x = stack.back();
            stack.pop_back();
            for (const auto &e : t.edges)
                for (int i = 0; i < 2; ++i)
                    if (e.ends[static_cast<std::size_t>(i)] == x && seen.insert(e.ends[static_cast<std::size_t>(1 - i)]).second)
                        stack.push_back(e.ends[static_cast<std::size_t>(1 - i)]);
        }
        if (seen.size() != t.vertices.size() || t.edges.size() + 1 != t.vertices.size())
            bad.push_back("quotient is not a tree");
    }
    for (const auto &x : t.vertices)
        for (const auto &l : x.set)
            if (!g.find(l))
                bad.push_back("vertex " + x.id + " names unknown label " + l);
    return bad;
}

} // namespace coxjsj::testing

#endif
