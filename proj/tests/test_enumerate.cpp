#include <algorithm>
#include <random>
#include <string>

#include "catch_amalgamated.hpp"
#include "coxjsj/coxjsj.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_graphs.hpp"

using namespace coxjsj;
using namespace coxjsj::testing;

namespace {

const ApproxPairOrbit &approx_at(const std::vector<ApproxPairOrbit> &os, const DefiningGraph &g, const char *a,
                                 const char *b) {
    for (const auto &o : os)
        if (o.a() == g.at(a) && o.b() == g.at(b))
            return o;
    FAIL("no approx orbit for {" << a << "," << b << "}");
    throw std::logic_error("unreachable");
}

std::vector<std::string> formatted(const DefiningGraph &g, const std::vector<VertexSet> &sets) {
    std::vector<std::string> out;
    for (VertexSet s : sets)
        out.push_back(g.format(s));
    return out;
}

std::vector<VertexSet> a_sets_of(const std::vector<SimClassOrbit> &os) {
    std::vector<VertexSet> out;
    for (const auto &o : os)
        out.push_back(o.a_set);
    return out;
}

bool brute_separates(const Matrix &m, int a, int b) {
    return m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] || brute_components_without(m, {a, b}).size() >= 2;
}

std::vector<VertexSet> brute_a_sets(const DefiningGraph &g) {
    auto m = matrix_of(g);
    JsjContext ctx(g);
    auto ok = [&](std::uint64_t bits) {
        VertexSet s(bits);
        auto v = s.to_vector();
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j)
                if (!brute_separates(m, v[i], v[j]))
                    return false;
        return ctx.a2(s);
    };
    std::vector<VertexSet> out;
    for (std::uint64_t bits : brute_maximal_subsets(g.size(), ok, g.vertices().bits())) {
        VertexSet s(bits);
        auto v = s.to_vector();
        // Triangle-free, so a special subgroup is finite exactly for a vertex or an edge.
        bool finite = v.size() == 1 || (v.size() == 2 && g.adjacent(v[0], v[1]));
        if (!finite)
            out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexSet> brute_b_sets(const DefiningGraph &g) {
    auto m = matrix_of(g);
    VertexSet ess;
    for (Vertex v = 0; v < g.size(); ++v)
        if (g.degree(v) >= 3)
            ess.insert(v);
    auto ok = [&](std::uint64_t bits) {
        VertexSet s(bits);
        for (Vertex c1 : ess)
            for (Vertex c2 : ess) {
                if (c2 <= c1)
                    continue;
                VertexSet rest = s - VertexSet{c1, c2};
                if (rest.size() < 2)
                    continue;
                int hit = 0;
                for (const auto &comp : brute_components_without(m, {c1, c2}))
                    for (int v : comp)
                        if (rest.contains(v)) {
                            ++hit;
                            break;
                        }
                if (hit > 1)
                    return false;
            }
        return true;
    };
    std::vector<VertexSet> out;
    for (std::uint64_t bits : brute_maximal_subsets(g.size(), ok, ess.bits()))
        if (std::popcount(bits) >= 4)
            out.push_back(VertexSet(bits));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("special subgroups are classified by their generators") {
    auto g = fixture("theta_1223.json");
    CHECK(classify_special_subgroup(g, g.set_of({"a"})) == SubgroupKind::finite);
    CHECK(classify_special_subgroup(g, g.set_of({"a", "c"})) == SubgroupKind::finite);
    CHECK(classify_special_subgroup(g, g.set_of({"a", "b"})) == SubgroupKind::two_ended);
    CHECK(classify_special_subgroup(g, g.set_of({"a", "b", "c"})) == SubgroupKind::two_ended);
    CHECK(classify_special_subgroup(g, g.set_of({"a", "b", "x1"})) == SubgroupKind::large);
    CHECK(std::string(to_string(SubgroupKind::large)) == "infinite_many_or_one_ended");
    CHECK(common_neighbour(g, g.at("a"), g.at("b")) == g.at("c"));
    CHECK(common_neighbour(g, g.at("a"), g.at("x2")) == g.at("x1"));
    CHECK_FALSE(common_neighbour(g, g.at("a"), g.at("z3")));
    CHECK_THROWS_AS(common_neighbour(fixture("c4.txt"), 0, 2), PreconditionError);
}

TEST_CASE("approx orbits of the theta graphs") {
    auto t1 = fixture("theta_1223.json");
    auto os = enumerate_approx_orbits(t1);
    REQUIRE(os.size() == 1);
    CHECK(os[0].k() == 4);
    CHECK(os[0].singleton() == t1.at("c"));
    CHECK(os[0].valence == 6);
    CHECK(os[0].stabiliser.generators == t1.set_of({"a", "b", "c"}));
    CHECK(os[0].sides().size() == 3);

    auto t2 = fixture("theta_2223.json");
    os = enumerate_approx_orbits(t2);
    REQUIRE(os.size() == 1);
    CHECK(os[0].k() == 4);
    CHECK_FALSE(os[0].singleton());
    CHECK(os[0].valence == 4);
    CHECK(os[0].stabiliser.generators == t2.set_of({"a", "b"}));

    auto t3 = fixture("theta_333.txt");
    os = enumerate_approx_orbits(t3);
    REQUIRE(os.size() == 1);
    CHECK(os[0].valence == 3);
}

TEST_CASE("approx orbits of the glued and pentagon graphs") {
    auto left = fixture("fig3_left.txt");
    auto os = enumerate_approx_orbits(left);
    REQUIRE(os.size() == 2);
    CHECK(approx_at(os, left, "a", "d").valence == 4);
    CHECK(approx_at(os, left, "a", "e").valence == 3);

    auto centre = fixture("fig3_centre.txt");
    os = enumerate_approx_orbits(centre);
    REQUIRE(os.size() == 5);
    for (int i = 1; i <= 5; ++i) {
        std::string a = "a" + std::to_string(i), b = "a" + std::to_string(i % 5 + 1), m = "m" + std::to_string(i);
        auto lo = std::min(a, b), hi = std::max(a, b);
        const auto &o = approx_at(os, centre, lo.c_str(), hi.c_str());
        CHECK(o.valence == 4);
        CHECK(o.k() == 3);
        CHECK(o.singleton() == centre.at(m));
        CHECK(o.stabiliser.generators == centre.set_of({a, b, m}));
    }
    CHECK(enumerate_approx_orbits(fixture("fig3_right.txt")).empty());
    CHECK(enumerate_approx_orbits(fixture("k4_twice_subdivided.txt")).empty());
}

TEST_CASE("infinite classes and sim pairs on the fixtures") {
    auto t1 = fixture("theta_1223.json");
    auto os = enumerate_sim_orbits(t1);
    CHECK(formatted(t1, a_sets_of(os)) == std::vector<std::string>{"{a,b,x1,x2}", "{a,b,y1,y2}", "{a,b,z1,z2,z3}"});
    for (const auto &o : os)
        CHECK(o.kind == SimKind::infinite_class);

    CHECK(enumerate_sim_orbits(fixture("theta_2223.json")).size() == 4);
    CHECK(enumerate_sim_orbits(fixture("k4_twice_subdivided.txt")).size() == 6);

    auto left = fixture("fig3_left.txt");
    auto ls = a_sets_of(enumerate_sim_orbits(left));
    CHECK(ls.size() == 6);
    CHECK(std::count(ls.begin(), ls.end(), left.set_of({"a", "d", "e", "f", "g"})) == 1);

    auto centre = fixture("fig3_centre.txt");
    auto cs = enumerate_sim_orbits(centre);
    CHECK(cs.size() == 6);
    auto pent = std::find_if(cs.begin(), cs.end(), [&](const SimClassOrbit &o) {
        return o.a_set == centre.set_of({"a1", "a2", "a3", "a4", "a5"});
    });
    REQUIRE(pent != cs.end());
    CHECK(pent->frontier_pairs.size() == 5);
    CHECK(pent->order.size() == 5);

    auto right = fixture("fig3_right.txt");
    auto rs = enumerate_sim_orbits(right);
    std::vector<std::string> pairs;
    int infinite = 0;
    for (const auto &o : rs) {
        if (o.kind == SimKind::sim_pair)
            pairs.push_back(right.format(o.a_set));
        else
            ++infinite;
    }
    CHECK(pairs == std::vector<std::string>{"{p,q}", "{r,s,w2}", "{u,v,w1}"});
    CHECK(infinite == 8);
    for (const auto &o : rs)
        if (o.kind == SimKind::sim_pair)
            CHECK(o.stabiliser.generators == o.a_set);
}

TEST_CASE("stars on the fixtures") {
    auto right = fixture("fig3_right.txt");
    auto ss = enumerate_star_orbits(right);
    std::vector<std::string> bs;
    for (const auto &s : ss)
        bs.push_back(right.format(s.b_set));
    CHECK(bs == std::vector<std::string>{"{p,q,r,s}", "{p,q,u,v}"});

    auto k4 = fixture("k4_twice_subdivided.txt");
    auto ks = enumerate_star_orbits(k4);
    REQUIRE(ks.size() == 1);
    CHECK(ks[0].b_set == k4.set_of({"p", "q", "r", "s"}));
    // Each pair of branch vertices cuts off the interior of its arc.
    CHECK(ks[0].internal_cut_pairs.size() == 6);
    for (const auto &c : ks[0].internal_cut_pairs)
        CHECK(c.k() == 2);

    for (const char *name : {"theta_1223.json", "theta_2223.json", "fig3_left.txt", "fig3_centre.txt"})
        CHECK(enumerate_star_orbits(fixture(name)).empty());
}

TEST_CASE("a-sets match maximal-subset search on random graphs") {
    auto graphs = valid_random_graphs(60, 21, 12);
    for (const auto &g : graphs) {
        CAPTURE(graph_to_json(g).dump());
        CHECK(enumerate_a_sets(g) == brute_a_sets(g));
    }
}

TEST_CASE("b-sets match maximal-subset search on random graphs") {
    auto graphs = valid_random_graphs(60, 22, 14);
    for (const auto &g : graphs) {
        CAPTURE(graph_to_json(g).dump());
        std::vector<VertexSet> lib;
        for (const auto &s : enumerate_star_orbits(g))
            lib.push_back(s.b_set);
        CHECK(lib == brute_b_sets(g));
    }
}

TEST_CASE("a-sets are downward closed, maximal and meet in at most two vertices") {
    auto graphs = valid_random_graphs(80, 23, 20);
    for (const auto &name : corpus_names())
        graphs.push_back(fixture(name));
    for (const auto &g : graphs) {
        CAPTURE(graph_to_json(g).dump());
        JsjContext ctx(g);
        auto sets = enumerate_a_sets(ctx);
        for (VertexSet s : sets) {
            CHECK(satisfies_a1(g, s));
            CHECK(satisfies_a2(g, s));
            // Every subset keeps both properties.
            for (Vertex v : s) {
                VertexSet t = s - VertexSet::single(v);
                CHECK(ctx.a1(t));
                CHECK(ctx.a2(t));
            }
            for (Vertex v : g.vertices() - s)
                CHECK_FALSE((ctx.a1(s | VertexSet::single(v)) && ctx.a2(s | VertexSet::single(v))));
        }
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = i + 1; j < sets.size(); ++j)
                CHECK((sets[i] & sets[j]).size() <= 2);
        for (const auto &st : enumerate_star_orbits(g)) {
            CHECK(satisfies_b1(g, st.b_set));
            CHECK(essential_vertices(g).contains(st.b_set));
            for (VertexSet s : sets)
                CHECK((s & st.b_set).size() <= 2);
        }
    }
}

TEST_CASE("a class contains each branch whose interior it meets") {
    auto graphs = valid_random_graphs(60, 24, 20);
    for (const auto &name : corpus_names())
        graphs.push_back(fixture(name));
    for (const auto &g : graphs) {
        CAPTURE(graph_to_json(g).dump());
        auto bs = branches(g);
        for (const auto &o : enumerate_sim_orbits(g)) {
            if (o.kind != SimKind::infinite_class)
                continue;
            for (const auto &b : bs) {
                bool meets = std::any_of(b.interior.begin(), b.interior.end(), [&](Vertex v) { return o.a_set.contains(v); });
                if (meets)
                    CHECK(o.a_set.contains(b.vertices()));
            }
        }
    }
}

TEST_CASE("enumeration commutes with relabelling") {
    auto graphs = valid_random_graphs(50, 25, 18);
    for (const auto &name : corpus_names())
        graphs.push_back(fixture(name));
    for (const auto &g : graphs) {
        // Reverse the label order so every vertex index changes.
        auto rename = [](const std::string &s) {
            std::string r;
            for (char ch : s)
                r += static_cast<char>('z' - (ch >= 'a' && ch <= 'z' ? ch - 'a' : 0)) + std::string(1, ch);
            return "~" + r;
        };
        auto h = g.relabelled(rename);
        auto map_set = [&](VertexSet s) {
            VertexSet out;
            for (Vertex v : s)
                out.insert(h.at(rename(g.label(v))));
            return out;
        };
        std::set<VertexSet> expect, got;
        for (VertexSet s : enumerate_a_sets(g))
            expect.insert(map_set(s));
        for (VertexSet s : enumerate_a_sets(h))
            got.insert(s);
        CHECK(expect == got);

        std::set<std::pair<VertexSet, int>> ea, ga;
        for (const auto &o : enumerate_approx_orbits(g))
            ea.emplace(map_set(o.cut.pair()), o.valence);
        for (const auto &o : enumerate_approx_orbits(h))
            ga.emplace(o.cut.pair(), o.valence);
        CHECK(ea == ga);

        std::set<VertexSet> es, gs;
        for (const auto &o : enumerate_star_orbits(g))
            es.insert(map_set(o.b_set));
        for (const auto &o : enumerate_star_orbits(h))
            gs.insert(o.b_set);
        CHECK(es == gs);
    }
}

TEST_CASE("approx valences follow the component count") {
    auto graphs = valid_random_graphs(80, 26, 20);
    for (const auto &g : graphs)
        for (const auto &o : enumerate_approx_orbits(g)) {
            CHECK(o.k() >= 3);
            CHECK(g.degree(o.a()) >= 3);
            CHECK(g.degree(o.b()) >= 3);
            CHECK(o.valence == (o.singleton() ? 2 * (o.k() - 1) : o.k()));
        }
}
