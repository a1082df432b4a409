#ifndef COXJSJ_GRAPH_IO_HPP
#define COXJSJ_GRAPH_IO_HPP

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "coxjsj/graph.hpp"

namespace coxjsj {

enum class GraphFormat { json, edgelist, dot };

inline GraphFormat graph_format_from_name(std::string_view name) {
    if (name == "json")
        return GraphFormat::json;
    if (name == "edgelist" || name == "txt")
        return GraphFormat::edgelist;
    if (name == "dot" || name == "gv")
        return GraphFormat::dot;
    throw PreconditionError("unknown graph format '" + std::string(name) + "'");
}

/// Guesses the format from a file name: .json, .dot/.gv, anything else is an edge list.
inline GraphFormat graph_format_from_path(std::string_view path) {
    auto dot = path.rfind('.');
    if (dot == std::string_view::npos)
        return GraphFormat::edgelist;
    auto ext = path.substr(dot + 1);
    if (ext == "json")
        return GraphFormat::json;
    if (ext == "dot" || ext == "gv")
        return GraphFormat::dot;
    return GraphFormat::edgelist;
}

namespace detail {

inline std::size_t line_of(std::string_view text, std::size_t pos) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < pos && i < text.size(); ++i)
        if (text[i] == '\n')
            ++line;
    return line;
}

inline std::string json_label(const nlohmann::json &j) {
    if (j.is_string())
        return j.get<std::string>();
    if (j.is_number_integer())
        return std::to_string(j.get<long long>());
    throw ParseError("vertex labels must be strings or integers, got " + j.dump());
}

inline DefiningGraph parse_json_graph(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what(),
                         line_of(text, e.byte ? e.byte - 1 : 0));
    }
    if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_array())
        throw ParseError("expected an object with an \"edges\" array");
    std::vector<std::string> labels;
    if (doc.contains("vertices")) {
        if (!doc["vertices"].is_array())
            throw ParseError("\"vertices\" must be an array");
        for (const auto &v : doc["vertices"])
            labels.push_back(json_label(v));
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto &e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2)
            throw ParseError("each edge must be a two-element array, got " + e.dump());
        edges.emplace_back(json_label(e[0]), json_label(e[1]));
    }
    if (doc.contains("vertices"))
        return DefiningGraph::from_labels(std::move(labels), edges);
    return DefiningGraph::from_edges(edges);
}

inline DefiningGraph parse_edgelist(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::string> isolated;
    std::set<std::pair<std::string, std::string>> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;)
            tok.push_back(t);
        if (tok.empty())
            continue;
        if (tok.size() == 1) {
            isolated.push_back(tok[0]);
            continue;
        }
        if (tok.size() != 2)
            throw ParseError("expected \"u v\", got " + std::to_string(tok.size()) + " tokens", lineno);
        if (tok[0] == tok[1])
            throw ParseError("loop at '" + tok[0] + "'", lineno);
        if (!seen.emplace(std::min(tok[0], tok[1]), std::max(tok[0], tok[1])).second)
            throw ParseError("duplicate edge '" + tok[0] + "' '" + tok[1] + "'", lineno);
        edges.emplace_back(tok[0], tok[1]);
    }
    return DefiningGraph::from_edges(edges, isolated);
}

class DotReader {
public:
    explicit DotReader(std::string_view text) : text_(text) {}

    DefiningGraph read() {
        skip_ws();
        std::string kw = word();
        if (kw == "strict") {
            skip_ws();
            kw = word();
        }
        if (kw == "digraph")
            fail("directed graphs are not supported");
        if (kw != "graph")
            fail("expected 'graph'");
        skip_ws();
        if (peek() != '{')
            id();
        skip_ws();
        expect('{');
        while (true) {
            skip_ws();
            if (peek() == '}')
                break;
            if (at_end())
                fail("unterminated graph body");
            statement();
        }
        return DefiningGraph::from_edges(edges_, nodes_);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<std::pair<std::string, std::string>> edges_;
    std::vector<std::string> nodes_;

    [[noreturn]] void fail(const std::string &what) const { throw ParseError(what, line_of(text_, pos_)); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void expect(char c) {
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_ws() {
        while (!at_end()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#' || text_.substr(pos_, 2) == "//") {
                while (!at_end() && text_[pos_] != '\n')
                    ++pos_;
            } else if (text_.substr(pos_, 2) == "/*") {
                auto end = text_.find("*/", pos_ + 2);
                if (end == std::string_view::npos)
                    fail("unterminated comment");
                pos_ = end + 2;
            } else {
                break;
            }
        }
    }

    std::string word() {
        std::string out;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '.'))
            out += text_[pos_++];
        return out;
    }

    std::string id() {
        skip_ws();
        if (peek() == '"') {
            ++pos_;
            std::string out;
            while (!at_end() && peek() != '"') {
                if (peek() == '\\' && pos_ + 1 < text_.size())
                    ++pos_;
                out += text_[pos_++];
            }
            expect('"');
            return out;
        }
        std::string out = word();
        if (out.empty())
            fail("expected an identifier");
        return out;
    }

    void skip_attributes() {
        skip_ws();
        while (peek() == '[') {
            auto end = text_.find(']', pos_);
            if (end == std::string_view::npos)
                fail("unterminated attribute list");
            pos_ = end + 1;
            skip_ws();
        }
    }

    void statement() {
        std::string first = id();
        skip_ws();
        if ((first == "graph" || first == "node" || first == "edge") && peek() == '[') {
            skip_attributes();
        } else if (peek() == '=') {
            ++pos_;
            id();
        } else if (text_.substr(pos_, 2) == "->") {
            fail("directed edge in undirected graph");
        } else if (text_.substr(pos_, 2) == "--") {
            std::string prev = first;
            while (text_.substr(pos_, 2) == "--") {
                pos_ += 2;
                std::string next = id();
                if (prev == next)
                    fail("loop at '" + prev + "'");
                edges_.emplace_back(prev, next);
                prev = next;
                skip_ws();
            }
            skip_attributes();
        } else {
            if (first == "subgraph")
                fail("subgraphs are not supported");
            nodes_.push_back(first);
            skip_attributes();
        }
        skip_ws();
        if (peek() == ';' || peek() == ',')
            ++pos_;
    }
};

} // namespace detail

inline DefiningGraph parse_graph(const std::string &text, GraphFormat format) {
    switch (format) {
    case GraphFormat::json:
        return detail::parse_json_graph(text);
    case GraphFormat::edgelist:
        return detail::parse_edgelist(text);
    case GraphFormat::dot:
        return detail::DotReader(text).read();
    }
    throw PreconditionError("unknown graph format");
}

/// Reads and parses a graph file; the format comes from the extension unless given.
inline DefiningGraph read_graph_file(const std::string &path, std::optional<GraphFormat> format = std::nullopt) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str(), format ? *format : graph_format_from_path(path));
}

inline nlohmann::json graph_to_json(const DefiningGraph &g) {
    nlohmann::json j;
    j["vertices"] = g.labels();
    j["edges"] = nlohmann::json::array();
    for (auto [u, v] : g.edges())
        j["edges"].push_back({g.label(u), g.label(v)});
    return j;
}

} // namespace coxjsj

#endif
