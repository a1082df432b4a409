#ifndef COXJSJ_ORACLE_HPP
#define COXJSJ_ORACLE_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coxjsj/enumerate.hpp"
#include "coxjsj/errors.hpp"
#include "coxjsj/graph.hpp"
#include "coxjsj/structure.hpp"

namespace coxjsj {

inline constexpr std::size_t default_element_cap = 200'000;
inline constexpr int default_radius = 6;

using Word = std::vector<Vertex>;

/// Element of W_Γ held as its shortlex normal form (letters compared by canonical vertex order).
struct GroupElement {
    Word letters;

    std::size_t length() const { return letters.size(); }
    bool operator==(const GroupElement &) const = default;
    auto operator<=>(const GroupElement &o) const {
        if (letters.size() != o.letters.size())
            return letters.size() <=> o.letters.size();
        return letters <=> o.letters;
    }
};

/// Reads a word such as "a x1 b". Tokens are separated by whitespace; a token that is not a
/// label is split into characters when every label is a single character ("aba").
inline Word parse_word(const DefiningGraph &g, std::string_view text) {
    bool single_chars = std::all_of(g.labels().begin(), g.labels().end(), [](const std::string &l) { return l.size() == 1; });
    Word w;
    std::istringstream in{std::string(text)};
    for (std::string tok; in >> tok;) {
        if (auto v = g.find(tok)) {
            w.push_back(*v);
            continue;
        }
        if (!single_chars)
            throw PreconditionError("unknown generator '" + tok + "'");
        for (char c : tok) {
            auto v = g.find(std::string(1, c));
            if (!v)
                throw PreconditionError("unknown generator '" + std::string(1, c) + "'");
            w.push_back(*v);
        }
    }
    return w;
}

inline std::string format_word(const DefiningGraph &g, const Word &w) {
    if (w.empty())
        return "e";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i)
        s += (i ? " " : "") + g.label(w[i]);
    return s;
}

namespace detail {

inline VertexSet below(Vertex x) { return VertexSet((std::uint64_t{1} << x) - 1); }

// Multiplies a reduced word on the right by s, cancelling s against an occurrence that can be
// commuted to the end.
inline void multiply_reduced(const DefiningGraph &g, Word &w, Vertex s) {
    for (std::size_t j = w.size(); j-- > 0;) {
        if (w[j] == s) {
            w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
            return;
        }
        if (!g.adjacent(w[j], s))
            break;
    }
    w.push_back(s);
}

// Lexicographically least rearrangement of a reduced word under commutations.
inline Word lex_least(const DefiningGraph &g, const Word &w) {
    Word out;
    std::vector<bool> taken(w.size(), false);
    out.reserve(w.size());
    for (std::size_t step = 0; step < w.size(); ++step) {
        std::size_t best = w.size();
        VertexSet blocking; // untaken letters seen so far that the candidate must commute past
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (taken[i])
                continue;
            bool free = true;
            for (Vertex b : blocking)
                if (!g.adjacent(b, w[i])) {
                    free = false;
                    break;
                }
            // An equal letter earlier blocks too: letters never commute with themselves.
            if (free && blocking.contains(w[i]))
                free = false;
            if (free && (best == w.size() || w[i] < w[best]))
                best = i;
            blocking.insert(w[i]);
        }
        taken[best] = true;
        out.push_back(w[best]);
    }
    return out;
}

} // namespace detail

inline GroupElement normal_form(const DefiningGraph &g, const Word &word) {
    Word w;
    for (Vertex s : word) {
        if (s < 0 || s >= g.size())
            throw PreconditionError("unknown generator index " + std::to_string(s));
        detail::multiply_reduced(g, w, s);
    }
    return {detail::lex_least(g, w)};
}

inline GroupElement normal_form(const DefiningGraph &g, std::string_view word) {
    return normal_form(g, parse_word(g, word));
}

inline bool is_reduced(const DefiningGraph &g, const Word &w) { return normal_form(g, w).length() == w.size(); }

/// Letters s for which nf(w) followed by s is again a normal form, given that w is one.
inline VertexSet normal_extensions(const DefiningGraph &g, const Word &w) {
    VertexSet commuting = g.vertices();
    VertexSet invalid;
    for (std::size_t j = w.size(); j-- > 0 && !commuting.empty();) {
        Vertex x = w[j];
        invalid |= commuting & (VertexSet::single(x) | (g.neighbours(x) & detail::below(x)));
        commuting &= g.neighbours(x);
    }
    return g.vertices() - invalid;
}

class CayleyBall;

namespace detail {

inline CayleyBall make_ball(const DefiningGraph &g, int r, std::size_t cap, bool truncate);

} // namespace detail

/// Radius-r ball of the Cayley graph, elements in shortlex order.
class CayleyBall {
public:
    int radius() const { return radius_; }
    std::size_t size() const { return elements_.size(); }
    const std::vector<GroupElement> &elements() const { return elements_; }
    const GroupElement &element(std::size_t i) const { return elements_[i]; }

    std::optional<std::size_t> index(const Word &nf) const {
        auto it = index_.find(key(nf));
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    /// Index of element i times generator s, when it lies in the ball.
    std::optional<std::size_t> neighbour(std::size_t i, Vertex s) const {
        int j = right_[i * static_cast<std::size_t>(generators_) + static_cast<std::size_t>(s)];
        if (j < 0)
            return std::nullopt;
        return static_cast<std::size_t>(j);
    }

    /// Number of elements of each length 0..radius.
    std::vector<std::size_t> sphere_sizes() const {
        std::vector<std::size_t> out(static_cast<std::size_t>(radius_) + 1, 0);
        for (const auto &e : elements_)
            ++out[e.length()];
        return out;
    }

private:
    friend CayleyBall detail::make_ball(const DefiningGraph &, int, std::size_t, bool);

    static std::string key(const Word &w) { return std::string(w.begin(), w.end()); }

    int radius_ = 0;
    int generators_ = 0;
    std::vector<GroupElement> elements_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<int> right_;
};

/// Breadth-first ball of radius r. Throws CapExceeded, carrying the largest complete radius,
/// when the ball would hold more than `cap` elements.
inline CayleyBall build_ball(const DefiningGraph &g, int r, std::size_t cap = default_element_cap) {
    return detail::make_ball(g, r, cap, false);
}

/// The largest complete ball of radius at most r holding at most `cap` elements.
inline CayleyBall build_ball_within_cap(const DefiningGraph &g, int r, std::size_t cap = default_element_cap) {
    return detail::make_ball(g, r, cap, true);
}

namespace detail {

inline CayleyBall make_ball(const DefiningGraph &g, int r, std::size_t cap, bool truncate) {
    if (r < 0)
        throw PreconditionError("radius must be non-negative");
    CayleyBall ball;
    ball.radius_ = 0;
    ball.generators_ = g.size();
    ball.elements_.push_back({});
    std::size_t level_begin = 0;
    for (int len = 1; len <= r; ++len) {
        std::size_t level_end = ball.elements_.size();
        bool over = false;
        for (std::size_t i = level_begin; i < level_end && !over; ++i) {
            const Word &parent = ball.elements_[i].letters;
            for (Vertex s : normal_extensions(g, parent)) {
                if (ball.elements_.size() >= cap) {
                    over = true;
                    break;
                }
                Word child = ball.elements_[i].letters;
                child.push_back(s);
                ball.elements_.push_back({std::move(child)});
            }
        }
        if (over) {
            if (!truncate)
                throw CapExceeded(cap, len - 1);
            ball.elements_.resize(level_end);
            break;
        }
        ball.radius_ = len;
        level_begin = level_end;
    }
    for (std::size_t i = 0; i < ball.elements_.size(); ++i)
        ball.index_.emplace(CayleyBall::key(ball.elements_[i].letters), i);
    ball.right_.assign(ball.elements_.size() * static_cast<std::size_t>(g.size()), -1);
    for (std::size_t i = 0; i < ball.elements_.size(); ++i)
        for (Vertex s = 0; s < g.size(); ++s) {
            Word w = ball.elements_[i].letters;
            multiply_reduced(g, w, s);
            if (w.size() > static_cast<std::size_t>(ball.radius_))
                continue;
            if (auto j = ball.index(lex_least(g, w)))
                ball.right_[i * static_cast<std::size_t>(g.size()) + static_cast<std::size_t>(s)] = static_cast<int>(*j);
        }
    return ball;
}

} // namespace detail

/// A cut pair {a,b} prepared for side classification. With a singleton component {c} the
/// separating set is the strip ⟨a,b,c⟩; otherwise it is the geodesic ⟨a,b⟩.
struct SeparatingPair {
    CutPairInfo cut;
    VertexSet letters;                // {a,b} or {a,b,c}
    std::vector<VertexSet> sides;     // non-singleton components of Γ∖{a,b}
    std::vector<int> side_of;         // per vertex: side index, or -1

    int expected_classes() const { return cut.singleton ? 2 * (cut.k() - 1) : cut.k(); }

    static SeparatingPair of(const DefiningGraph &g, Vertex a, Vertex b) {
        if (a == b || g.adjacent(a, b))
            throw PreconditionError("separation needs two distinct non-adjacent vertices");
        auto info = cut_pair_info(g, a, b);
        if (!info)
            throw PreconditionError("{" + g.label(a) + "," + g.label(b) + "} is not a cut pair");
        SeparatingPair sp;
        sp.cut = *info;
        sp.letters = info->pair();
        if (info->singleton)
            sp.letters.insert(*info->singleton);
        sp.side_of.assign(static_cast<std::size_t>(g.size()), -1);
        for (const auto &comp : info->components) {
            if (info->singleton && comp == VertexSet::single(*info->singleton))
                continue;
            for (Vertex v : comp)
                sp.side_of[static_cast<std::size_t>(v)] = static_cast<int>(sp.sides.size());
            sp.sides.push_back(comp);
        }
        return sp;
    }
};

struct SideLabel {
    int side = 0;        // index into SeparatingPair::sides
    bool primed = false; // reached through the singleton c

    int code() const { return side * 2 + (primed ? 1 : 0); }
    bool operator==(const SideLabel &) const = default;
};

namespace detail {

// Side of the element spelled by a reduced word: the component of its first letter outside the
// separating letters, primed when c occurs before it. Empty when the word has no such letter.
inline std::optional<SideLabel> side_of_word(const SeparatingPair &sp, const Vertex *w, std::size_t n,
                                             std::size_t skip = static_cast<std::size_t>(-1)) {
    bool primed = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == skip)
            continue;
        Vertex x = w[i];
        if (sp.letters.contains(x)) {
            primed = primed || (sp.cut.singleton && x == *sp.cut.singleton);
            continue;
        }
        return SideLabel{sp.side_of[static_cast<std::size_t>(x)], primed};
    }
    return std::nullopt;
}

} // namespace detail

/// Length of the longest prefix of w (as an element) lying in the separating subgroup; the
/// element's Cayley distance to the separating set is |w| minus this.
inline std::size_t separating_prefix_length(const DefiningGraph &g, const SeparatingPair &sp, const Word &w) {
    VertexSet outside;
    std::size_t len = 0;
    for (Vertex x : w) {
        if (sp.letters.contains(x) && !outside.contains(x) && g.neighbours(x).contains(outside))
            ++len;
        else
            outside.insert(x);
    }
    return len;
}

inline std::size_t distance_to_separating_set(const DefiningGraph &g, const SeparatingPair &sp, const GroupElement &w) {
    return w.length() - separating_prefix_length(g, sp, w.letters);
}

inline SideLabel classify_side(const DefiningGraph &g, const SeparatingPair &sp, const GroupElement &w) {
    auto label = detail::side_of_word(sp, w.letters.data(), w.letters.size());
    if (!label)
        throw PreconditionError("element " + format_word(g, w.letters) + " is on separating set");
    return *label;
}

inline SideLabel classify_side(const DefiningGraph &g, Vertex a, Vertex b, const GroupElement &w) {
    return classify_side(g, SeparatingPair::of(g, a, b), w);
}

struct SeparationReport {
    Vertex a = 0, b = 0;
    int radius = 0;
    int k = 0;
    bool singleton = false;
    int expected = 0;
    int classes = 0;
    std::size_t elements = 0;
    std::size_t edges_checked = 0;
    std::size_t violations = 0;
    bool insufficient_radius = false;
    bool consistent = false;
    std::string first_violation;
};

namespace detail {

// Walks every normal form of length <= r depth-first, without storing the ball.
template <class Visit>
void for_each_normal_form(const DefiningGraph &g, int r, Visit &&visit) {
    Word w;
    w.reserve(static_cast<std::size_t>(r));
    std::vector<VertexSet> pending(static_cast<std::size_t>(r) + 1);
    visit(w);
    if (r == 0)
        return;
    pending[0] = g.vertices();
    std::size_t depth = 0;
    while (true) {
        if (pending[depth].empty()) {
            if (depth == 0)
                return;
            --depth;
            w.pop_back();
            continue;
        }
        Vertex s = pending[depth].min();
        pending[depth].erase(s);
        w.push_back(s);
        visit(w);
        if (static_cast<int>(w.size()) < r) {
            ++depth;
            pending[depth] = normal_extensions(g, w);
        } else {
            w.pop_back();
        }
    }
}

// Right descents of a normal form: (position, letter) for each letter that commutes to the end.
inline int right_descents(const DefiningGraph &g, const Word &w, std::pair<std::size_t, Vertex> *out) {
    int n = 0;
    VertexSet commuting = g.vertices();
    for (std::size_t j = w.size(); j-- > 0 && !commuting.empty();) {
        if (commuting.contains(w[j]))
            out[n++] = {j, w[j]};
        commuting &= g.neighbours(w[j]);
    }
    return n;
}

} // namespace detail

/// Checks the separation pattern of every given cut pair on the radius-r ball in one streaming
/// pass: (i) every side label is realised at distance >= 2 from the separating set, and
/// (ii) no Cayley edge joins elements with different side labels.
inline std::vector<SeparationReport> verify_separations(const DefiningGraph &g,
                                                        const std::vector<std::pair<Vertex, Vertex>> &pairs, int r) {
    if (r < 0)
        throw PreconditionError("radius must be non-negative");
    const std::size_t np = pairs.size();
    std::vector<SeparatingPair> sps;
    std::vector<SeparationReport> reps(np);
    for (std::size_t p = 0; p < np; ++p) {
        sps.push_back(SeparatingPair::of(g, pairs[p].first, pairs[p].second));
        auto &rep = reps[p];
        rep.a = sps[p].cut.a;
        rep.b = sps[p].cut.b;
        rep.radius = r;
        rep.k = sps[p].cut.k();
        rep.singleton = sps[p].cut.singleton.has_value();
        rep.expected = sps[p].expected_classes();
        rep.insufficient_radius = r < 2 + (rep.singleton ? 1 : 0);
    }

    // (i) Side labels at distance >= 2, on growing radii until every label is seen.
    std::vector<std::uint64_t> seen(np, 0);
    auto complete = [&](std::size_t p) {
        return std::popcount(seen[p]) == static_cast<int>(sps[p].sides.size() * (reps[p].singleton ? 2 : 1));
    };
    for (int rad = std::min(r, 3); rad <= r; ++rad) {
        std::vector<std::size_t> open;
        for (std::size_t p = 0; p < np; ++p)
            if (!complete(p))
                open.push_back(p);
        if (open.empty())
            break;
        detail::for_each_normal_form(g, rad, [&](const Word &w) {
            if (rad > 3 && static_cast<int>(w.size()) < rad)
                return; // shorter words were seen on an earlier pass
            for (std::size_t p : open) {
                auto label = detail::side_of_word(sps[p], w.data(), w.size());
                if (label && w.size() - separating_prefix_length(g, sps[p], w) >= 2)
                    seen[p] |= std::uint64_t{1} << label->code();
            }
        });
        if (rad == r)
            break;
    }

    // (ii) Each Cayley edge is visited once, from its longer end, by removing a right descent.
    // The side label depends only on the letters up to the first non-separating one, so an edge
    // can only change label for pairs whose letters fill the word before the removed position.
    const std::size_t words = (np + 63) / 64;
    std::vector<std::vector<std::uint64_t>> pairs_with(static_cast<std::size_t>(g.size()),
                                                       std::vector<std::uint64_t>(words, 0));
    for (std::size_t p = 0; p < np; ++p)
        for (Vertex v : sps[p].letters)
            pairs_with[static_cast<std::size_t>(v)][p / 64] |= std::uint64_t{1} << (p % 64);
    // prefix_pairs[d]: pairs whose letters contain the first d letters of the current word.
    std::vector<std::vector<std::uint64_t>> prefix_pairs(static_cast<std::size_t>(r) + 1,
                                                         std::vector<std::uint64_t>(words, 0));
    for (std::size_t p = 0; p < np; ++p)
        prefix_pairs[0][p / 64] |= std::uint64_t{1} << (p % 64);
    std::size_t elements = 0;
    std::pair<std::size_t, Vertex> desc[64];
    detail::for_each_normal_form(g, r, [&](const Word &w) {
        ++elements;
        const std::size_t len = w.size();
        if (len == 0)
            return;
        for (std::size_t i = 0; i < words; ++i)
            prefix_pairs[len][i] = prefix_pairs[len - 1][i] & pairs_with[static_cast<std::size_t>(w[len - 1])][i];
        int nd = detail::right_descents(g, w, desc);
        for (int d = 0; d < nd; ++d) {
            std::size_t j = desc[d].first;
            for (std::size_t i = 0; i < words; ++i)
                for (std::uint64_t bits = prefix_pairs[j][i]; bits; bits &= bits - 1) {
                    std::size_t p = i * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                    auto longer = detail::side_of_word(sps[p], w.data(), len);
                    auto shorter = detail::side_of_word(sps[p], w.data(), len, j);
                    if (!longer || !shorter)
                        continue;
                    ++reps[p].edges_checked;
                    if (*longer == *shorter)
                        continue;
                    if (reps[p].violations++ == 0) {
                        Word s = w;
                        s.erase(s.begin() + static_cast<std::ptrdiff_t>(j));
                        reps[p].first_violation = format_word(g, w) + " -- " + format_word(g, s);
                    }
                }
        }
    });

    for (std::size_t p = 0; p < np; ++p) {
        auto &rep = reps[p];
        rep.elements = elements;
        rep.classes = std::popcount(seen[p]);
        rep.consistent = rep.violations == 0 && (rep.insufficient_radius || rep.classes == rep.expected);
    }
    return reps;
}

inline SeparationReport verify_separation(const DefiningGraph &g, Vertex a, Vertex b, int r) {
    return verify_separations(g, {{a, b}}, r).front();
}

/// Every cut pair of Γ (non-adjacent by one-endedness) checked in one pass.
inline std::vector<SeparationReport> verify_all_separations(const DefiningGraph &g, int r) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (const auto &c : cut_pairs(g))
        pairs.emplace_back(c.a, c.b);
    return verify_separations(g, pairs, r);
}

struct ASetReport {
    VertexSet a_set;
    Word word;
    int radius = 0;      // requested
    int radius_used = 0; // smaller when the ball was cut back to fit the cap
    std::size_t elements = 0;
    std::size_t geodesic_vertices = 0;
    int components = 0;
    bool separates = false;
    bool insufficient_radius = false; // radius_used < 2: nothing off the geodesic to compare
    bool consistent = false;
};

namespace detail {

inline void check_geodesic_word(const DefiningGraph &g, VertexSet a_set, const Word &word, int r) {
    if (word.empty())
        throw PreconditionError("geodesic word is empty");
    for (Vertex x : word)
        if (!a_set.contains(x))
            throw PreconditionError("letter " + g.label(x) + " is not in " + g.format(a_set));
    if (!satisfies_a1(g, a_set))
        throw PreconditionError(g.format(a_set) + " does not pairwise separate the graph");
    // Every window of length 2r of the periodic word must be reduced.
    Word window;
    std::size_t span = std::max<std::size_t>(2 * static_cast<std::size_t>(std::max(r, 1)), word.size()) + word.size();
    for (std::size_t i = 0; i < span; ++i)
        window.push_back(word[i % word.size()]);
    if (!is_reduced(g, window))
        throw PreconditionError("word " + format_word(g, word) + " does not label a geodesic");
}

} // namespace detail

/// Number of components of (ball minus the bi-infinite geodesic through the identity labelled by
/// the periodic word) that touch the geodesic, on a prebuilt ball.
inline ASetReport verify_a_set_separation(const DefiningGraph &g, const CayleyBall &ball, VertexSet a_set,
                                          const Word &word, int requested_radius = -1) {
    const int used = ball.radius();
    detail::check_geodesic_word(g, a_set, word, used);
    ASetReport rep;
    rep.a_set = a_set;
    rep.word = word;
    rep.radius = requested_radius < 0 ? used : requested_radius;
    rep.radius_used = used;
    rep.elements = ball.size();

    std::vector<char> on_geodesic(ball.size(), 0);
    Word forward, backward;
    auto mark = [&](const Word &w) {
        auto i = ball.index(normal_form(g, w).letters);
        if (!i)
            throw PreconditionError("geodesic vertex " + format_word(g, w) + " fell outside the ball");
        on_geodesic[*i] = 1;
    };
    mark(forward);
    for (int i = 0; i < used; ++i) {
        forward.push_back(word[static_cast<std::size_t>(i) % word.size()]);
        backward.push_back(word[word.size() - 1 - static_cast<std::size_t>(i) % word.size()]);
        mark(forward);
        mark(backward);
    }
    rep.geodesic_vertices = static_cast<std::size_t>(std::count(on_geodesic.begin(), on_geodesic.end(), 1));

    std::vector<std::size_t> parent(ball.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < ball.size(); ++i) {
        if (on_geodesic[i])
            continue;
        for (Vertex s = 0; s < g.size(); ++s)
            if (auto j = ball.neighbour(i, s); j && !on_geodesic[*j])
                parent[find(i)] = find(*j);
    }
    std::vector<char> touching(ball.size(), 0);
    for (std::size_t i = 0; i < ball.size(); ++i) {
        if (!on_geodesic[i])
            continue;
        for (Vertex s = 0; s < g.size(); ++s)
            if (auto j = ball.neighbour(i, s); j && !on_geodesic[*j])
                touching[find(*j)] = 1;
    }
    rep.components = static_cast<int>(std::count(touching.begin(), touching.end(), 1));
    rep.separates = rep.components >= 2;
    rep.insufficient_radius = used < 2;
    rep.consistent = rep.insufficient_radius || rep.separates;
    return rep;
}

/// As above, building the radius-r ball first. Over the cap this throws CapExceeded, unless
/// `fit_to_cap` is set, in which case the largest complete ball within the cap is used.
inline ASetReport verify_a_set_separation(const DefiningGraph &g, VertexSet a_set, const Word &word, int r,
                                          std::size_t cap = default_element_cap, bool fit_to_cap = false) {
    detail::check_geodesic_word(g, a_set, word, r);
    CayleyBall ball = fit_to_cap ? build_ball_within_cap(g, r, cap) : build_ball(g, r, cap);
    return verify_a_set_separation(g, ball, a_set, word, r);
}

/// Words labelling the geodesics checked for an a-set: the bicoloured word of each frontier
/// pair, and for sets of three or more vertices the word running once round the cyclic order.
inline std::vector<Word> a_set_geodesic_words(const DefiningGraph &g, const SimClassOrbit &orbit) {
    std::vector<Word> out;
    for (auto [x, y] : orbit.frontier_pairs)
        if (!g.adjacent(x, y))
            out.push_back({x, y});
    if (orbit.order.size() >= 3 && is_reduced(g, orbit.order) && is_reduced(g, [&] {
            Word twice = orbit.order;
            twice.insert(twice.end(), orbit.order.begin(), orbit.order.end());
            return twice;
        }()))
        out.push_back(orbit.order);
    return out;
}

inline std::string csv_header() {
    return "graph,check,set,word,radius,radius_used,expected,classes,edges_checked,violations,consistent,note";
}

inline std::string csv_row(const DefiningGraph &g, const std::string &graph_name, const SeparationReport &r) {
    std::ostringstream os;
    os << graph_name << ",pair,\"" << g.format(VertexSet{r.a, r.b}) << "\",\"" << g.label(r.a) << " " << g.label(r.b)
       << "\"," << r.radius << "," << r.radius << "," << r.expected << "," << r.classes << "," << r.edges_checked << ","
       << r.violations << "," << (r.consistent ? "yes" : "no") << ",";
    if (r.insufficient_radius)
        os << "insufficient radius";
    else if (!r.first_violation.empty())
        os << "\"" << r.first_violation << "\"";
    return os.str();
}

inline std::string csv_row(const DefiningGraph &g, const std::string &graph_name, const ASetReport &r) {
    std::ostringstream os;
    os << graph_name << ",a_set,\"" << g.format(r.a_set) << "\",\"" << format_word(g, r.word) << "\"," << r.radius
       << "," << r.radius_used << ",>=2," << r.components << ",,," << (r.consistent ? "yes" : "no") << ",";
    if (r.insufficient_radius)
        os << "insufficient radius";
    else if (r.radius_used < r.radius)
        os << "ball cut back to fit the element cap";
    return os.str();
}

} // namespace coxjsj

#endif
