#ifndef COXJSJ_TREE_HPP
#define COXJSJ_TREE_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "coxjsj/enumerate.hpp"
#include "coxjsj/errors.hpp"
#include "coxjsj/graph.hpp"
#include "coxjsj/k4.hpp"
#include "coxjsj/structure.hpp"

namespace coxjsj {

/// A valence or multiplicity: a non-negative integer or the symbol "inf", which sits above
/// every integer. Infinite counts are only compared, never added.
class Count {
public:
    constexpr Count() = default;
    constexpr Count(int n) : value_(n) {}
    static constexpr Count infinite() {
        Count c;
        c.infinite_ = true;
        return c;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr int value() const {
        if (infinite_)
            throw PreconditionError("infinite count has no integer value");
        return value_;
    }

    constexpr bool operator==(const Count &o) const {
        return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
    }
    constexpr std::strong_ordering operator<=>(const Count &o) const {
        if (infinite_ || o.infinite_)
            return static_cast<int>(infinite_) <=> static_cast<int>(o.infinite_);
        return value_ <=> o.value_;
    }

    std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

    nlohmann::json to_json() const { return infinite_ ? nlohmann::json("inf") : nlohmann::json(value_); }

    static Count from_json(const nlohmann::json &j) {
        if (j.is_string() && j.get<std::string>() == "inf")
            return infinite();
        if (j.is_number_integer() && j.get<long long>() >= 0)
            return Count(j.get<int>());
        throw ParseError("expected a non-negative integer or \"inf\", got " + j.dump());
    }

private:
    int value_ = 0;
    bool infinite_ = false;
};

enum class VType { approx, sim_pair, infinite_sim, star, subdivision };

inline constexpr std::array<VType, 5> all_vtypes = {VType::approx, VType::sim_pair, VType::infinite_sim, VType::star,
                                                    VType::subdivision};

inline const char *to_string(VType t) {
    switch (t) {
    case VType::approx:
        return "approx";
    case VType::sim_pair:
        return "sim_pair";
    case VType::infinite_sim:
        return "infinite_sim";
    case VType::star:
        return "star";
    case VType::subdivision:
        return "subdivision";
    }
    return "?";
}

inline VType vtype_from_string(std::string_view s) {
    for (VType t : all_vtypes)
        if (s == to_string(t))
            return t;
    throw ParseError("unknown vertex type '" + std::string(s) + "'");
}

/// Bowditch type: 1 for cut-pair vertices (approx, sim_pair, subdivision), 2 for infinite
/// classes, 3 for stars.
inline int bowditch_type(VType t) {
    switch (t) {
    case VType::infinite_sim:
        return 2;
    case VType::star:
        return 3;
    default:
        return 1;
    }
}

struct TreeVertex {
    std::string id;
    VType vtype = VType::approx;
    std::vector<std::string> set;
    Count valence;
    std::vector<std::string> stabiliser;

    bool operator==(const TreeVertex &) const = default;
};

struct TreeEdge {
    std::string id;
    std::array<std::string, 2> ends;
    std::map<std::string, Count> mult;

    Count mult_at(const std::string &v) const { return mult.at(v); }
    const std::string &other(const std::string &v) const { return ends[0] == v ? ends[1] : ends[0]; }

    bool operator==(const TreeEdge &) const = default;
};

/// Finite quotient of the JSJ tree: vertex orbits and edge orbits with the number of tree
/// edges of each orbit at each endpoint.
struct QuotientTree {
    std::vector<TreeVertex> vertices;
    std::vector<TreeEdge> edges;

    const TreeVertex &vertex(const std::string &id) const {
        for (const auto &v : vertices)
            if (v.id == id)
                return v;
        throw PreconditionError("no vertex orbit '" + id + "'");
    }

    std::vector<const TreeEdge *> incident(const std::string &id) const {
        std::vector<const TreeEdge *> out;
        for (const auto &e : edges)
            if (e.ends[0] == id || e.ends[1] == id)
                out.push_back(&e);
        return out;
    }

    std::size_t count(VType t) const {
        return static_cast<std::size_t>(
            std::count_if(vertices.begin(), vertices.end(), [t](const TreeVertex &v) { return v.vtype == t; }));
    }

    bool operator==(const QuotientTree &) const = default;
};

namespace detail {

struct BuildNode {
    VType vtype;
    VertexSet set;
    VertexSet stabiliser;
    Count valence;
    std::optional<CutPairInfo> cut; // Type 1 only
};

inline std::string describe_candidates(const DefiningGraph &g, const std::vector<BuildNode> &nodes,
                                       const std::vector<std::size_t> &cands) {
    if (cands.empty())
        return "none";
    std::string s;
    for (std::size_t c : cands) {
        if (!s.empty())
            s += ", ";
        s += std::string(to_string(nodes[c].vtype)) + " " + g.format(nodes[c].set);
    }
    return s;
}

} // namespace detail

/// Checks the structural invariants of a quotient tree and returns one message per violation.
/// When `g` is given, edge stabilisers and class/star intersections are checked against it too.
inline std::vector<std::string> tree_violations(const QuotientTree &t, const DefiningGraph *g = nullptr) {
    std::vector<std::string> out;
    std::map<std::string, const TreeVertex *> by_id;
    for (const auto &v : t.vertices)
        if (!by_id.emplace(v.id, &v).second)
            out.push_back("duplicate vertex id " + v.id);
    std::set<std::string> edge_ids;
    for (const auto &e : t.edges) {
        if (!edge_ids.insert(e.id).second)
            out.push_back("duplicate edge id " + e.id);
        auto a = by_id.find(e.ends[0]), b = by_id.find(e.ends[1]);
        if (a == by_id.end() || b == by_id.end()) {
            out.push_back("edge " + e.id + " names an unknown vertex");
            continue;
        }
        if (e.mult.size() != 2 || !e.mult.count(e.ends[0]) || !e.mult.count(e.ends[1]))
            out.push_back("edge " + e.id + " lacks a multiplicity at one of its ends");
        VType ta = a->second->vtype, tb = b->second->vtype;
        int ba = bowditch_type(ta), bb = bowditch_type(tb);
        if (ba == bb)
            out.push_back("edge " + e.id + " joins two vertices of Bowditch type " + std::to_string(ba));
        else if (ba != 1 && bb != 1)
            out.push_back("edge " + e.id + " joins an infinite class directly to a star");
        if ((ta == VType::sim_pair && tb != VType::star) || (tb == VType::sim_pair && ta != VType::star))
            out.push_back("sim_pair orbit on edge " + e.id + " is joined to a non-star");
        if (g) {
            VertexSet sa, sb;
            for (const auto &l : a->second->stabiliser)
                sa.insert(g->at(l));
            for (const auto &l : b->second->stabiliser)
                sb.insert(g->at(l));
            VertexSet common = sa & sb;
            bool two_ended = false;
            for (Vertex x : common)
                for (Vertex y : common)
                    two_ended = two_ended || (x < y && !g->adjacent(x, y));
            if (!two_ended)
                out.push_back("edge " + e.id + ": stabilisers meet in " + g->format(common) +
                              ", which spans no 2-ended subgroup");
        }
    }
    for (const auto &v : t.vertices) {
        auto inc = t.incident(v.id);
        if (v.vtype == VType::subdivision && !(v.valence == Count(2)))
            out.push_back("subdivision orbit " + v.id + " has valence " + v.valence.str());
        if (v.valence.is_infinite()) {
            for (const auto *e : inc)
                if (e->mult.count(v.id) && !e->mult.at(v.id).is_infinite())
                    out.push_back("edge " + e->id + " has finite multiplicity at infinite-valence vertex " + v.id);
            continue;
        }
        int sum = 0;
        bool finite = true;
        for (const auto *e : inc) {
            if (!e->mult.count(v.id))
                continue;
            Count m = e->mult.at(v.id);
            if (m.is_infinite())
                finite = false;
            else
                sum += m.value();
        }
        if (!finite || sum != v.valence.value())
            out.push_back("vertex " + v.id + " (" + to_string(v.vtype) + ") has valence " + v.valence.str() +
                          " but incident multiplicities sum to " + (finite ? std::to_string(sum) : "inf"));
    }
    // The quotient of a tree by a group generated by involutions is itself a tree.
    {
        std::map<std::string, std::string> parent;
        for (const auto &v : t.vertices)
            parent[v.id] = v.id;
        std::function<std::string(const std::string &)> root = [&](const std::string &x) {
            return parent[x] == x ? x : parent[x] = root(parent[x]);
        };
        std::size_t pieces = parent.size();
        for (const auto &e : t.edges) {
            if (!parent.count(e.ends[0]) || !parent.count(e.ends[1]))
                continue;
            std::string ra = root(e.ends[0]), rb = root(e.ends[1]);
            if (ra == rb) {
                out.push_back("edge " + e.id + " closes a cycle in the quotient");
                continue;
            }
            parent[ra] = rb;
            --pieces;
        }
        if (pieces > 1)
            out.push_back("quotient is disconnected: " + std::to_string(pieces) + " pieces");
    }
    if (g) {
        for (const auto &a : t.vertices)
            for (const auto &b : t.vertices) {
                if (a.vtype != VType::infinite_sim || b.vtype != VType::star)
                    continue;
                std::size_t common = 0;
                for (const auto &l : a.set)
                    common += static_cast<std::size_t>(std::count(b.set.begin(), b.set.end(), l));
                if (common > 2)
                    out.push_back("class " + a.id + " and star " + b.id + " share " + std::to_string(common) +
                                  " vertices");
            }
    }
    return out;
}

inline void validate_tree(const QuotientTree &t, const DefiningGraph *g = nullptr) {
    auto v = tree_violations(t, g);
    if (v.empty())
        return;
    std::string msg = "quotient tree failed validation:";
    for (const auto &s : v)
        msg += "\n  " + s;
    throw BuildError(msg);
}

/// Assembles the quotient tree of Γ from the enumerated orbits. Edges are derived twice, from
/// the component-side rule and from the pair rules, and the two must agree.
inline QuotientTree build_quotient_tree(const DefiningGraph &g, std::size_t k4_budget = default_k4_budget) {
    using detail::BuildNode;
    JsjContext ctx(g, k4_budget);
    auto approx = enumerate_approx_orbits(g);
    auto sims = enumerate_sim_orbits(ctx);
    auto stars = enumerate_star_orbits(g);

    auto type1_valence = [](const CutPairInfo &c) { return Count(c.singleton ? 2 * (c.k() - 1) : c.k()); };

    std::vector<BuildNode> nodes;
    for (const auto &o : approx)
        nodes.push_back({VType::approx, o.cut.pair(), o.stabiliser.generators, Count(o.valence), o.cut});
    for (const auto &o : sims) {
        if (o.kind != SimKind::sim_pair)
            continue;
        // The cut pair of a two-ended class is its non-adjacent pair.
        auto v = o.a_set.to_vector();
        std::optional<CutPairInfo> cut;
        for (std::size_t i = 0; i < v.size() && !cut; ++i)
            for (std::size_t j = i + 1; j < v.size() && !cut; ++j)
                if (!g.adjacent(v[i], v[j]))
                    cut = cut_pair_info(g, v[i], v[j]);
        if (!cut)
            throw BuildError("two-ended class " + g.format(o.a_set) + " has no cut pair");
        nodes.push_back({VType::sim_pair, o.a_set, o.stabiliser.generators, type1_valence(*cut), cut});
    }
    std::vector<std::size_t> infinite_ids, star_ids;
    for (const auto &o : sims)
        if (o.kind == SimKind::infinite_class) {
            infinite_ids.push_back(nodes.size());
            nodes.push_back({VType::infinite_sim, o.a_set, o.stabiliser.generators, Count::infinite(), std::nullopt});
        }
    for (const auto &o : stars) {
        star_ids.push_back(nodes.size());
        nodes.push_back({VType::star, o.b_set, o.stabiliser.generators, Count::infinite(), std::nullopt});
    }

    auto find_type1 = [&](VType t, VertexSet pair) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].vtype == t && nodes[i].cut && nodes[i].cut->pair() == pair)
                return i;
        return std::nullopt;
    };

    // Pair rules.
    std::set<std::pair<std::size_t, std::size_t>> pair_rule_edges;
    for (std::size_t ai = 0; ai < approx.size(); ++ai)
        for (std::size_t s : infinite_ids)
            if (nodes[s].set.contains(approx[ai].cut.pair()))
                pair_rule_edges.emplace(ai, s);
    for (std::size_t si = 0; si < stars.size(); ++si) {
        std::size_t star = star_ids[si];
        for (const auto &cp : stars[si].internal_cut_pairs) {
            VertexSet pair = cp.pair();
            if (cp.k() >= 3) {
                auto a = find_type1(VType::approx, pair);
                if (!a)
                    throw BuildError("star " + g.format(stars[si].b_set) + ": cut pair " + g.format(pair) +
                                     " has no approx orbit");
                pair_rule_edges.emplace(*a, star);
                continue;
            }
            if (auto sp = find_type1(VType::sim_pair, pair)) {
                pair_rule_edges.emplace(*sp, star);
                continue;
            }
            bool matched = false;
            for (std::size_t s : infinite_ids) {
                const SimClassOrbit &cls = *std::find_if(sims.begin(), sims.end(), [&](const SimClassOrbit &o) {
                    return o.a_set == nodes[s].set;
                });
                if ((cls.a_set & stars[si].b_set) != pair)
                    continue;
                bool consecutive = false;
                for (auto [x, y] : consecutive_pairs(cls.order))
                    consecutive = consecutive || VertexSet{x, y} == pair;
                if (!consecutive)
                    continue;
                matched = true;
                std::size_t sub = nodes.size();
                nodes.push_back({VType::subdivision, pair, stars[si].b_set & cls.a_set, type1_valence(cp), cp});
                pair_rule_edges.emplace(sub, star);
                pair_rule_edges.emplace(sub, s);
            }
            if (!matched)
                throw BuildError("star " + g.format(stars[si].b_set) + ": cut pair " + g.format(pair) +
                                 " matches no two-ended class and no infinite class");
        }
    }

    // Component-side rule: each side of a Type-1 cut pair has exactly one neighbour.
    std::map<std::pair<std::size_t, std::size_t>, int> side_edges;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (bowditch_type(nodes[i].vtype) != 1)
            continue;
        const CutPairInfo &c = *nodes[i].cut;
        VertexSet pair = c.pair();
        int ends_per_side = c.singleton ? 2 : 1;
        for (const auto &side : c.components) {
            if (c.singleton && side == VertexSet::single(*c.singleton))
                continue;
            std::vector<std::size_t> cands;
            for (std::size_t s : infinite_ids) {
                VertexSet rest = nodes[s].set - pair;
                if (nodes[s].set.contains(pair) && !rest.empty() && side.contains(rest))
                    cands.push_back(s);
            }
            for (std::size_t s : star_ids)
                if (nodes[s].set.contains(pair) && side.contains(nodes[s].set - pair))
                    cands.push_back(s);
            if (cands.size() != 1)
                throw BuildError("ambiguous neighbour: " + std::string(to_string(nodes[i].vtype)) + " " +
                                 g.format(nodes[i].set) + ", side " + g.format(side) + " has candidates " +
                                 detail::describe_candidates(g, nodes, cands));
            side_edges[{i, cands[0]}] += ends_per_side;
        }
    }

    std::set<std::pair<std::size_t, std::size_t>> side_rule_edges;
    for (const auto &[key, m] : side_edges)
        side_rule_edges.insert(key);
    if (side_rule_edges != pair_rule_edges) {
        std::string msg = "edge rules disagree:";
        auto show = [&](const std::pair<std::size_t, std::size_t> &e) {
            return std::string(to_string(nodes[e.first].vtype)) + " " + g.format(nodes[e.first].set) + " -- " +
                   to_string(nodes[e.second].vtype) + " " + g.format(nodes[e.second].set);
        };
        for (const auto &e : side_rule_edges)
            if (!pair_rule_edges.count(e))
                msg += "\n  side rule only: " + show(e);
        for (const auto &e : pair_rule_edges)
            if (!side_rule_edges.count(e))
                msg += "\n  pair rules only: " + show(e);
        throw BuildError(msg);
    }

    // Canonical vertex order: by type, then by creation order.
    std::vector<std::size_t> order(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return static_cast<int>(nodes[x].vtype) < static_cast<int>(nodes[y].vtype);
    });
    std::vector<std::string> id_of(nodes.size());
    QuotientTree t;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const BuildNode &n = nodes[order[pos]];
        id_of[order[pos]] = "v" + std::to_string(pos);
        t.vertices.push_back({id_of[order[pos]], n.vtype, g.names(n.set), n.valence, g.names(n.stabiliser)});
    }
    std::vector<std::pair<std::size_t, std::size_t>> edge_list;
    for (const auto &[key, m] : side_edges)
        edge_list.push_back(key);
    std::vector<std::size_t> rank(nodes.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        rank[order[pos]] = pos;
    std::sort(edge_list.begin(), edge_list.end(), [&](const auto &x, const auto &y) {
        return std::pair(rank[x.first], rank[x.second]) < std::pair(rank[y.first], rank[y.second]);
    });
    for (const auto &key : edge_list) {
        TreeEdge e;
        e.id = "e" + std::to_string(t.edges.size());
        e.ends = {id_of[key.first], id_of[key.second]};
        e.mult[id_of[key.first]] = Count(side_edges[key]);
        e.mult[id_of[key.second]] = Count::infinite();
        t.edges.push_back(std::move(e));
    }
    validate_tree(t, &g);
    return t;
}

/// Membership in the class of graphs with no induced subdivided K4.
inline bool is_class_g(const DefiningGraph &g, std::size_t budget = default_k4_budget) {
    return !find_subdivided_k4(g, true, budget).has_value();
}

/// Whether "the tree has a star" and "Γ has a subdivided K4" agree on g.
inline bool stars_iff_k4_check(const DefiningGraph &g, std::size_t budget = default_k4_budget) {
    bool has_star = !enumerate_star_orbits(g).empty();
    bool has_k4 = find_subdivided_k4(g, false, budget).has_value();
    return has_star == has_k4;
}

/// One-line orbit summary, e.g. "approx:1(val 6) infinite_sim:3 sim_pair:0 star:0 subdivision:0".
inline std::string tree_summary(const QuotientTree &t) {
    std::string s = "approx:" + std::to_string(t.count(VType::approx));
    std::string vals;
    for (const auto &v : t.vertices)
        if (v.vtype == VType::approx)
            vals += (vals.empty() ? "" : ",") + v.valence.str();
    if (!vals.empty())
        s += "(val " + vals + ")";
    for (VType ty : {VType::infinite_sim, VType::sim_pair, VType::star, VType::subdivision})
        s += std::string(" ") + to_string(ty) + ":" + std::to_string(t.count(ty));
    return s;
}

inline nlohmann::json tree_to_json(const QuotientTree &t) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (const auto &v : t.vertices)
        j["vertices"].push_back({{"id", v.id},
                                 {"vtype", to_string(v.vtype)},
                                 {"set", v.set},
                                 {"valence", v.valence.to_json()},
                                 {"stabiliser", v.stabiliser}});
    j["edges"] = nlohmann::json::array();
    for (const auto &e : t.edges) {
        nlohmann::json mult = nlohmann::json::object();
        for (const auto &[id, m] : e.mult)
            mult[id] = m.to_json();
        j["edges"].push_back({{"id", e.id}, {"ends", e.ends}, {"mult", mult}});
    }
    return j;
}

inline QuotientTree tree_from_json(const nlohmann::json &j) {
    auto field = [](const nlohmann::json &o, const char *name) -> const nlohmann::json & {
        if (!o.is_object() || !o.contains(name))
            throw ParseError(std::string("missing field \"") + name + "\"");
        return o.at(name);
    };
    QuotientTree t;
    try {
        for (const auto &v : field(j, "vertices"))
            t.vertices.push_back({field(v, "id").get<std::string>(), vtype_from_string(field(v, "vtype").get<std::string>()),
                                  field(v, "set").get<std::vector<std::string>>(), Count::from_json(field(v, "valence")),
                                  field(v, "stabiliser").get<std::vector<std::string>>()});
        for (const auto &e : field(j, "edges")) {
            TreeEdge te;
            te.id = field(e, "id").get<std::string>();
            auto ends = field(e, "ends").get<std::vector<std::string>>();
            if (ends.size() != 2)
                throw ParseError("edge " + te.id + " must have two ends");
            te.ends = {ends[0], ends[1]};
            for (const auto &[id, m] : field(e, "mult").items())
                te.mult[id] = Count::from_json(m);
            t.edges.push_back(std::move(te));
        }
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("bad tree JSON: ") + e.what());
    }
    return t;
}

inline std::string export_tree_json(const QuotientTree &t) { return tree_to_json(t).dump(2) + "\n"; }

inline QuotientTree import_tree_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("malformed tree JSON: ") + e.what());
    }
    return tree_from_json(j);
}

namespace detail {

inline std::string dot_escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        if (c == '"')
            out += '\\';
        out += c;
    }
    return out;
}

inline std::string join_set(const std::vector<std::string> &v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + v[i];
    return s + "}";
}

} // namespace detail

/// Graphviz rendering. Shapes and colours by vertex type:
/// approx box/lightblue, sim_pair diamond/palegreen, infinite_sim ellipse/gold,
/// star doubleoctagon/salmon, subdivision circle/grey80.
inline std::string export_tree_dot(const QuotientTree &t) {
    auto style = [](VType ty) -> std::pair<const char *, const char *> {
        switch (ty) {
        case VType::approx:
            return {"box", "lightblue"};
        case VType::sim_pair:
            return {"diamond", "palegreen"};
        case VType::infinite_sim:
            return {"ellipse", "gold"};
        case VType::star:
            return {"doubleoctagon", "salmon"};
        case VType::subdivision:
            return {"circle", "grey80"};
        }
        return {"ellipse", "white"};
    };
    std::ostringstream os;
    os << "graph quotient {\n";
    for (const auto &v : t.vertices) {
        auto [shape, colour] = style(v.vtype);
        std::string label = std::string(to_string(v.vtype)) + "\\n" + detail::join_set(v.set) + "\\nval " +
                            v.valence.str() + "\\nstab " + detail::join_set(v.stabiliser);
        os << "  " << v.id << " [shape=" << shape << ", style=filled, fillcolor=" << colour << ", label=\""
           << detail::dot_escape(label) << "\"];\n";
    }
    for (const auto &e : t.edges) {
        std::string label;
        for (const auto &end : e.ends) {
            Count m = e.mult.at(end);
            if (!m.is_infinite()) {
                label = "×" + m.str() + "@" + to_string(t.vertex(end).vtype);
                break;
            }
        }
        os << "  " << e.ends[0] << " -- " << e.ends[1] << " [label=\"" << detail::dot_escape(label) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace coxjsj

#endif
