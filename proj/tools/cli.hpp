#ifndef COXJSJ_TOOLS_CLI_HPP
#define COXJSJ_TOOLS_CLI_HPP

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coxjsj/coxjsj.hpp"
#include "json.hpp"

namespace coxjsj::cli {

enum ExitCode : int { ok = 0, negative = 1, input_error = 2, inconclusive = 3 };

inline constexpr const char *unsupported_stamp = "UNSUPPORTED INPUT";

struct Config {
    std::vector<std::string> inputs;
    std::string input_format = "auto";
    std::string format = "text";
    std::string out;
    int radius = default_radius;
    std::size_t budget = default_k4_budget;
    std::size_t cap = default_element_cap;
    bool force = false;
    bool no_gate = false;
    bool strict_cap = false;
};

struct FuchsianVerdict {
    bool yes = false;
    int n = 0;
    std::string note;

    std::string text() const {
        std::string s = yes ? "cocompact Fuchsian: yes (n=" + std::to_string(n) + ")" : "cocompact Fuchsian: no";
        if (!note.empty())
            s += "\nnote: " + note;
        return s;
    }
};

inline FuchsianVerdict fuchsian_verdict(const DefiningGraph &g) {
    FuchsianVerdict v;
    auto n = cycle_length(g);
    v.yes = is_cocompact_fuchsian(g);
    if (v.yes) {
        v.n = *n;
    } else if (n && *n == 4) {
        v.note = "C4 has a square, so the group fails hyperbolicity";
    } else if (n && *n == 3) {
        v.note = "K3 is a triangle, so the group is finite";
    } else {
        for (auto [x, y] : g.edges())
            if ((g.neighbours(x) & g.neighbours(y)).size() > 0) {
                v.note = "graph has a triangle";
                break;
            }
    }
    return v;
}

namespace detail {

inline DefiningGraph load(const Config &c, const std::string &path) {
    std::optional<GraphFormat> f;
    if (c.input_format != "auto")
        f = graph_format_from_name(c.input_format);
    return read_graph_file(path, f);
}

inline std::string failing_flags(const AssumptionReport &r) {
    std::string s;
    auto flags = r.flags();
    for (std::size_t i = 0; i < flags.size(); ++i)
        if (!flags[i])
            s += (s.empty() ? "" : "; ") + std::string(AssumptionReport::flag_names[i]) + " (" + r.witnesses[i] + ")";
    return s;
}

// Returns the failure text when g must be refused, or nothing.
inline std::optional<std::string> gate(const Config &c, const DefiningGraph &g, const std::string &path) {
    auto r = check_standing_assumptions(g);
    if (r.passes_all())
        return std::nullopt;
    std::string why = path + " fails the standing assumptions: " + failing_flags(r);
    if (c.force)
        return std::nullopt;
    return why;
}

inline std::string stem(const std::string &path) { return std::filesystem::path(path).stem().string(); }

inline std::string pad(const std::string &s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); }

inline std::string table(const std::vector<std::vector<std::string>> &rows) {
    std::vector<std::size_t> width;
    for (const auto &r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            width.resize(std::max(width.size(), r.size()), 0);
            width[i] = std::max(width[i], r[i].size());
        }
    std::string s;
    for (const auto &r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i)
            line += i + 1 == r.size() ? r[i] : pad(r[i], width[i] + 2);
        s += line + "\n";
    }
    return s;
}

inline std::string brace(const std::vector<std::string> &v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + v[i];
    return s + "}";
}

inline std::string tree_table(const QuotientTree &t) {
    std::vector<std::vector<std::string>> rows{{"orbit", "type", "valence", "set", "stabiliser"}};
    for (const auto &v : t.vertices)
        rows.push_back({v.id, to_string(v.vtype), v.valence.str(), brace(v.set), brace(v.stabiliser)});
    std::string s = table(rows) + "\n";
    std::vector<std::vector<std::string>> erows{{"edge", "ends", "multiplicities"}};
    for (const auto &e : t.edges)
        erows.push_back({e.id, e.ends[0] + " " + e.ends[1],
                         e.ends[0] + ":" + e.mult_at(e.ends[0]).str() + " " + e.ends[1] + ":" +
                             e.mult_at(e.ends[1]).str()});
    return s + table(erows);
}

inline int emit(const Config &c, const std::string &body, std::ostream &out, std::ostream &err) {
    if (c.out.empty()) {
        out << body;
        return ok;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
        err << "error: cannot write '" << c.out << "'\n";
        return input_error;
    }
    f << body;
    return ok;
}

} // namespace detail

inline int cmd_validate(const Config &c, std::ostream &out, std::ostream &err) {
    if (c.format == "dot") {
        err << "error: validate has no dot output\n";
        return input_error;
    }
    const std::string &path = c.inputs.at(0);
    DefiningGraph g = detail::load(c, path);
    auto r = check_standing_assumptions(g);
    std::string body;
    if (c.format == "json") {
        nlohmann::json j;
        j["graph"] = path;
        j["vertices"] = g.size();
        j["edges"] = g.edges().size();
        auto flags = r.flags();
        for (std::size_t i = 0; i < flags.size(); ++i) {
            j["flags"][AssumptionReport::flag_names[i]] = static_cast<bool>(flags[i]);
            if (!flags[i])
                j["witnesses"][AssumptionReport::flag_names[i]] = r.witnesses[i];
        }
        j["passes_all"] = r.passes_all();
        body = j.dump(2) + "\n";
    } else {
        body = "graph: " + path + " (" + std::to_string(g.size()) + " vertices, " + std::to_string(g.edges().size()) +
               " edges)\n";
        auto flags = r.flags();
        for (std::size_t i = 0; i < flags.size(); ++i)
            body += std::string(AssumptionReport::flag_names[i]) + ": " +
                    (flags[i] ? "yes" : "no (" + r.witnesses[i] + ")") + "\n";
        body += std::string("passes_all: ") + (r.passes_all() ? "yes" : "no") + "\n";
    }
    int rc = detail::emit(c, body, out, err);
    if (rc != ok)
        return rc;
    return r.passes_all() ? ok : negative;
}

inline int cmd_jsj(const Config &c, std::ostream &out, std::ostream &err) {
    const std::string &path = c.inputs.at(0);
    DefiningGraph g = detail::load(c, path);
    if (auto refused = detail::gate(c, g, path)) {
        err << "error: " << *refused << " (use --force to build anyway)\n";
        return input_error;
    }
    const bool unsupported = !check_standing_assumptions(g).passes_all();
    QuotientTree t = build_quotient_tree(g, c.budget);

    std::string file_format = c.format;
    if (file_format == "text" && !c.out.empty())
        file_format = graph_format_from_path(c.out) == GraphFormat::dot ? "dot" : "json";

    auto tree_text = [&](const std::string &fmt) {
        if (fmt == "dot") {
            std::string s = export_tree_dot(t);
            return unsupported ? std::string("// ") + unsupported_stamp + "\n" + s : s;
        }
        nlohmann::json j = tree_to_json(t);
        if (unsupported)
            j["note"] = unsupported_stamp;
        return j.dump(2) + "\n";
    };
    std::string summary = (unsupported ? std::string(unsupported_stamp) + "\n" : std::string()) + tree_summary(t) + "\n";

    if (!c.out.empty()) {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) {
            err << "error: cannot write '" << c.out << "'\n";
            return input_error;
        }
        f << tree_text(file_format);
        out << summary << "\n" << detail::tree_table(t);
        return ok;
    }
    if (c.format == "text")
        out << summary << "\n" << detail::tree_table(t);
    else
        out << tree_text(c.format);
    return ok;
}

inline int cmd_compare(const Config &c, std::ostream &out, std::ostream &err) {
    if (c.format == "dot") {
        err << "error: compare has no dot output\n";
        return input_error;
    }
    DefiningGraph g1 = detail::load(c, c.inputs.at(0));
    DefiningGraph g2 = detail::load(c, c.inputs.at(1));
    for (const auto &[g, p] : {std::pair<const DefiningGraph &, const std::string &>(g1, c.inputs[0]),
                               std::pair<const DefiningGraph &, const std::string &>(g2, c.inputs[1])})
        if (auto refused = detail::gate(c, g, p)) {
            err << "error: " << *refused << "\n";
            return input_error;
        }
    const bool unsupported = !check_standing_assumptions(g1).passes_all() || !check_standing_assumptions(g2).passes_all();
    QuotientTree t1 = build_quotient_tree(g1, c.budget), t2 = build_quotient_tree(g2, c.budget);
    std::pair<bool, bool> gated{true, true};
    if (!c.no_gate)
        gated = {is_class_g(g1, c.budget), is_class_g(g2, c.budget)};
    ComparisonResult r = compare_trees(t1, t2, gated);

    std::string body;
    if (c.format == "json") {
        nlohmann::json j;
        j["verdict"] = to_string(r.verdict);
        j["label"] = r.label();
        j["reason"] = r.reason;
        j["rounds"] = r.rounds;
        j["class_g"] = {gated.first, gated.second};
        if (r.matched_colouring) {
            j["matched_colouring"] = nlohmann::json::array();
            for (const auto &cc : *r.matched_colouring)
                j["matched_colouring"].push_back({{"colour", cc.colour}, {"first", cc.first}, {"second", cc.second}});
        }
        if (unsupported)
            j["note"] = unsupported_stamp;
        body = j.dump(2) + "\n";
    } else {
        body = unsupported ? std::string(unsupported_stamp) + "\n" : std::string();
        body += r.label() + ": " + r.reason + "\n";
    }
    int rc = detail::emit(c, body, out, err);
    if (rc != ok)
        return rc;
    return r.verdict == Verdict::distinct ? negative : ok;
}

inline int cmd_oracle_check(const Config &c, std::ostream &out, std::ostream &err) {
    const std::string &path = c.inputs.at(0);
    DefiningGraph g = detail::load(c, path);
    if (auto refused = detail::gate(c, g, path)) {
        err << "error: " << *refused << "\n";
        return input_error;
    }
    const std::string name = detail::stem(path);
    bool all_consistent = true;
    bool thin = false;
    std::string body = csv_header() + "\n";
    for (const auto &r : verify_all_separations(g, c.radius)) {
        body += csv_row(g, name, r) + "\n";
        all_consistent = all_consistent && r.consistent;
        thin = thin || r.insufficient_radius;
    }

    auto orbits = enumerate_sim_orbits(g, c.budget);
    if (!orbits.empty()) {
        std::optional<CayleyBall> ball;
        try {
            ball = c.strict_cap ? build_ball(g, c.radius, c.cap) : build_ball_within_cap(g, c.radius, c.cap);
        } catch (const CapExceeded &e) {
            err << "error: " << e.what() << "\n";
            detail::emit(c, body, out, err);
            return inconclusive;
        }
        for (const auto &o : orbits)
            for (const auto &w : a_set_geodesic_words(g, o)) {
                auto r = verify_a_set_separation(g, *ball, o.a_set, w, c.radius);
                body += csv_row(g, name, r) + "\n";
                all_consistent = all_consistent && r.consistent;
                thin = thin || r.insufficient_radius;
            }
    }
    if (thin)
        err << "warning: radius " << c.radius << " is too small for some checks; those rows are vacuous\n";
    int rc = detail::emit(c, body, out, err);
    if (rc != ok)
        return rc;
    return all_consistent ? ok : negative;
}

inline int cmd_fuchsian(const Config &c, std::ostream &out, std::ostream &err) {
    if (c.format == "dot") {
        err << "error: fuchsian has no dot output\n";
        return input_error;
    }
    DefiningGraph g = detail::load(c, c.inputs.at(0));
    FuchsianVerdict v = fuchsian_verdict(g);
    std::string body;
    if (c.format == "json") {
        nlohmann::json j;
        j["fuchsian"] = v.yes;
        if (v.yes)
            j["n"] = v.n;
        if (!v.note.empty())
            j["note"] = v.note;
        body = j.dump(2) + "\n";
    } else {
        body = v.text() + "\n";
    }
    int rc = detail::emit(c, body, out, err);
    if (rc != ok)
        return rc;
    return v.yes ? ok : negative;
}

/// Parses a command line and runs one command. Returns the process exit code.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Config c;
    if (const char *env = std::getenv("COXJSJ_BUDGET")) {
        try {
            std::size_t used = 0;
            c.budget = std::stoull(env, &used);
            if (used != std::string(env).size())
                throw std::invalid_argument(env);
        } catch (const std::exception &) {
            err << "error: COXJSJ_BUDGET must be a non-negative integer, got '" << env << "'\n";
            return input_error;
        }
    }

    CLI::App app{"JSJ trees and quasi-isometry invariants for right-angled Coxeter groups", "coxjsj"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "dot"}))
        ->capture_default_str();
    app.add_option("--input-format", c.input_format, "Input format; by default taken from the file extension")
        ->check(CLI::IsMember({"auto", "json", "edgelist", "dot"}))
        ->capture_default_str();
    app.add_option("--out", c.out, "Write the artifact to this file");
    app.add_option("--radius", c.radius, "Cayley ball radius for oracle-check")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app.add_option("--budget", c.budget, "Node budget for subdivided K4 searches (env COXJSJ_BUDGET)")
        ->capture_default_str();
    app.add_option("--cap", c.cap, "Element cap for materialised Cayley balls")->capture_default_str();
    app.add_flag("--force", c.force, "Run on graphs failing the standing assumptions; output is stamped");
    app.add_flag("--no-gate", c.no_gate, "Label equal colourings as equivalent even with an induced subdivided K4");
    app.add_flag("--strict-cap", c.strict_cap, "Fail instead of shrinking the radius when a ball outgrows the cap");

    auto *validate = app.add_subcommand("validate", "Check the standing assumptions");
    validate->add_option("graph", c.inputs, "Graph file")->required()->expected(1);
    auto *jsj = app.add_subcommand("jsj", "Build the quotient JSJ tree");
    jsj->add_option("graph", c.inputs, "Graph file")->required()->expected(1);
    auto *compare = app.add_subcommand("compare", "Compare the JSJ trees of two graphs");
    compare->add_option("graphs", c.inputs, "Two graph files")->required()->expected(2);
    auto *oracle = app.add_subcommand("oracle-check", "Check separation claims in a Cayley ball; CSV output");
    oracle->add_option("graph", c.inputs, "Graph file")->required()->expected(1);
    auto *fuchsian = app.add_subcommand("fuchsian", "Decide whether the group is a cocompact Fuchsian group");
    fuchsian->add_option("graph", c.inputs, "Graph file")->required()->expected(1);

    std::vector<const char *> argv{"coxjsj"};
    for (const auto &a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? ok : input_error;
    }

    try {
        if (validate->parsed())
            return cmd_validate(c, out, err);
        if (jsj->parsed())
            return cmd_jsj(c, out, err);
        if (compare->parsed())
            return cmd_compare(c, out, err);
        if (oracle->parsed())
            return cmd_oracle_check(c, out, err);
        return cmd_fuchsian(c, out, err);
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    } catch (const PreconditionError &e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    } catch (const InconclusiveError &e) {
        err << "error: " << e.what() << "\n";
        return inconclusive;
    } catch (const CapExceeded &e) {
        err << "error: " << e.what() << "\n";
        return inconclusive;
    } catch (const BuildError &e) {
        err << "error: " << e.what() << "\n";
        return negative;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
}

} // namespace coxjsj::cli

#endif
