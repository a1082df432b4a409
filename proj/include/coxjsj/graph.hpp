#ifndef COXJSJ_GRAPH_HPP
#define COXJSJ_GRAPH_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coxjsj/errors.hpp"
#include "coxjsj/vertex_set.hpp"

namespace coxjsj {

using Edge = std::pair<Vertex, Vertex>;

/// Finite simplicial graph. Vertices are indexed in lexicographic label order, which is
/// the canonical order used by every enumeration in the library.
class DefiningGraph {
public:
    DefiningGraph() = default;

    /// Builds a graph from labels and label pairs. Rejects loops, repeated edges,
    /// repeated labels and edges naming unknown vertices.
    static DefiningGraph from_labels(std::vector<std::string> labels,
                                     const std::vector<std::pair<std::string, std::string>> &edges) {
        std::vector<std::string> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ParseError("duplicate vertex '" + *std::adjacent_find(sorted.begin(), sorted.end()) + "'");
        if (sorted.size() > static_cast<std::size_t>(max_vertices))
            throw ParseError("graph has " + std::to_string(sorted.size()) + " vertices; at most " +
                             std::to_string(max_vertices) + " are supported");

        DefiningGraph g;
        g.labels_ = std::move(sorted);
        g.adj_.assign(g.labels_.size(), VertexSet{});
        for (const auto &[su, sv] : edges) {
            auto u = g.find(su), v = g.find(sv);
            if (!u)
                throw ParseError("edge endpoint '" + su + "' is not a listed vertex");
            if (!v)
                throw ParseError("edge endpoint '" + sv + "' is not a listed vertex");
            if (*u == *v)
                throw ParseError("loop at '" + su + "'");
            if (g.adj_[*u].contains(*v))
                throw ParseError("duplicate edge '" + su + "' '" + sv + "'");
            g.adj_[*u].insert(*v);
            g.adj_[*v].insert(*u);
        }
        return g;
    }

    /// Same as from_labels, but the vertex list is taken to be the edge endpoints plus `extra`.
    static DefiningGraph from_edges(const std::vector<std::pair<std::string, std::string>> &edges,
                                    const std::vector<std::string> &extra = {}) {
        std::vector<std::string> labels = extra;
        for (const auto &[u, v] : edges) {
            labels.push_back(u);
            labels.push_back(v);
        }
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        return from_labels(std::move(labels), edges);
    }

    int size() const { return static_cast<int>(labels_.size()); }
    VertexSet vertices() const { return VertexSet::first_n(size()); }

    const std::string &label(Vertex v) const { return labels_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::string> &labels() const { return labels_; }

    std::optional<Vertex> find(std::string_view name) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), name);
        if (it == labels_.end() || *it != name)
            return std::nullopt;
        return static_cast<Vertex>(it - labels_.begin());
    }

    Vertex at(std::string_view name) const {
        if (auto v = find(name))
            return *v;
        throw PreconditionError("unknown vertex '" + std::string(name) + "'");
    }

    VertexSet set_of(std::initializer_list<std::string_view> names) const {
        VertexSet s;
        for (auto n : names)
            s.insert(at(n));
        return s;
    }

    VertexSet neighbours(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
    bool adjacent(Vertex u, Vertex v) const { return adj_[static_cast<std::size_t>(u)].contains(v); }
    int degree(Vertex v) const { return neighbours(v).size(); }

    int edge_count() const {
        int m = 0;
        for (const auto &n : adj_)
            m += n.size();
        return m / 2;
    }

    /// Edges as (u, v) with u < v, in lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (Vertex u = 0; u < size(); ++u)
            for (Vertex v : neighbours(u))
                if (u < v)
                    out.emplace_back(u, v);
        return out;
    }

    std::vector<std::string> names(VertexSet s) const {
        std::vector<std::string> out;
        for (Vertex v : s)
            out.push_back(label(v));
        return out;
    }

    std::string format(VertexSet s) const {
        std::string out = "{";
        bool first = true;
        for (Vertex v : s) {
            if (!first)
                out += ',';
            out += label(v);
            first = false;
        }
        return out + "}";
    }

    /// Copy of the graph with every label passed through `rename`. The mapping must be injective.
    template <class F>
    DefiningGraph relabelled(F &&rename) const {
        std::vector<std::string> labels;
        std::vector<std::pair<std::string, std::string>> es;
        for (const auto &l : labels_)
            labels.push_back(rename(l));
        for (auto [u, v] : edges())
            es.emplace_back(rename(label(u)), rename(label(v)));
        return from_labels(std::move(labels), es);
    }

    bool operator==(const DefiningGraph &) const = default;

private:
    std::vector<std::string> labels_;
    std::vector<VertexSet> adj_;
};

} // namespace coxjsj

#endif
