#include <doctest.h>

#include <set>

#include "isocycle/errors.hpp"
#include "isocycle/ssgraph.hpp"

using namespace isocycle;

namespace {

ModPolyDB test_db() { return ModPolyDB(ISOCYCLE_DATA_DIR); }

std::set<std::string> rendered(const RootMultiset& rm, const FieldContext& ctx) {
    std::set<std::string> out;
    for (const auto& [r, m] : rm.entries) out.insert(ctx.render(r) + "*" + std::to_string(m));
    return out;
}

}  // namespace

TEST_CASE("cm_seed picks the worked starting points") {
    {
        FieldContext ctx(3461, 1, 1);
        CMSeed s = cm_seed(ctx);
        CHECK(s.disc == -28);
        CHECK(s.j == ctx.from_int(16581375));
        CHECK(s.j == Fp2{3185, 0});
    }
    {
        FieldContext ctx(12601, 11, 0);
        CMSeed s = cm_seed(ctx);
        CHECK(s.disc == -11);
        CHECK(s.j == Fp2{5035, 0});
    }
    for (u64 p : {827ull, 103ull, 107ull, 11ull}) {
        if (p % 4 != 3) continue;
        FieldContext ctx = FieldContext::with_default_poly(p);
        CHECK(cm_seed(ctx).disc == -4);
        CHECK(cm_seed(ctx).j == ctx.from_int(1728));
    }
}

TEST_CASE("seed_for_disc rejects split discriminants and finds the H_-44 root") {
    FieldContext ctx(12601, 11, 0);
    CHECK(seed_for_disc(-44, ctx) == Fp2{4825, 0});
    CHECK_THROWS_AS(seed_for_disc(-7, ctx), error);  // -7 splits at 12601
    CHECK_THROWS_AS(seed_for_disc(-123456, ctx), error);
}

TEST_CASE("neighbors: example 2 and example 4 adjacency") {
    ModPolyDB db = test_db();
    {
        FieldContext ctx(12601, 11, 0);
        RootMultiset nb = neighbors(ctx, 2, Fp2{4825, 0}, db);
        CHECK(rendered(nb, ctx) ==
              std::set<std::string>{"5035*1", "7022b+1350*1", "5579b+1350*1"});
    }
    {
        FieldContext ctx(827, 1, 0);
        RootMultiset nb = neighbors(ctx, 2, ctx.from_int(287496), db);
        CHECK(rendered(nb, ctx) ==
              std::set<std::string>{"774b+169*1", "53b+169*1", "74*1"});  // 74 = 1728 mod 827
    }
    for (u64 p : {103ull, 839ull}) {
        FieldContext ctx(p, 1, 0);
        RootMultiset nb = neighbors(ctx, 2, ctx.from_int(1728), db);
        REQUIRE(nb.entries.size() == 2);
        CHECK(nb.multiplicity_of(ctx.from_int(1728)) == 1);
        CHECK(nb.multiplicity_of(ctx.from_int(287496)) == 2);
    }
}

TEST_CASE("supersingular count formula") {
    CHECK(supersingular_count_formula(11) == 2);
    CHECK(supersingular_count_formula(103) == 9);
    CHECK(supersingular_count_formula(3461) == 289);
    CHECK(supersingular_count_formula(12601) == 1050);
}

TEST_CASE("enumeration closes under the 2-isogeny walk with the right count") {
    ModPolyDB db = test_db();
    for (u64 p : {11ull, 103ull, 3461ull}) {
        FieldContext ctx = FieldContext::with_default_poly(p);
        auto all = enumerate_supersingular(ctx, db);
        CHECK(all.size() == supersingular_count_formula(p));
    }
}

TEST_CASE("parallel and serial neighbor kernels agree") {
    ModPolyDB db = test_db();
    for (u64 p : {3461ull, 12601ull}) {
        FieldContext ctx = FieldContext::with_default_poly(p);
        EnumerateOptions par{true, 1234}, ser{false, 1234};
        auto a = enumerate_supersingular(ctx, db, par);
        auto b = enumerate_supersingular(ctx, db, ser);
        CHECK(a == b);
        const ReducedModPoly& rmp = db.reduced(3, p);
        auto ba = neighbor_batch(a, rmp, ctx, 99);
        auto bb = neighbor_batch_serial(a, rmp, ctx, 99);
        CHECK(ba == bb);
    }
}

TEST_CASE("is_supersingular: membership in the closure") {
    ModPolyDB db = test_db();
    FieldContext ctx(3461, 1, 1);
    CHECK(is_supersingular(ctx, Fp2{3185, 0}, db));
    CHECK(is_supersingular(ctx, ctx.zero(), db));  // 3461 = 2 mod 3
    auto all = enumerate_supersingular(ctx, db);
    Fp2 ordinary{};
    for (u64 a0 = 1; a0 < 3461; ++a0) {
        if (!std::binary_search(all.begin(), all.end(), Fp2{a0, 0}, Fp2Less{})) {
            ordinary = {a0, 0};
            break;
        }
    }
    CHECK_FALSE(is_supersingular(ctx, ordinary, db));
}

TEST_CASE("full-graph regularity away from 0 and 1728") {
    ModPolyDB db = test_db();
    FieldContext ctx(3461, 1, 1);
    auto all = enumerate_supersingular(ctx, db);
    const Fp2 j0 = ctx.zero(), j1728 = ctx.from_int(1728);
    int tested = 0;
    for (size_t i = 0; i < all.size() && tested < 20; i += all.size() / 20) {
        const Fp2& j = all[i];
        if (j == j0 || j == j1728) continue;
        for (int ell : {2, 3, 5}) CHECK(neighbors(ctx, ell, j, db).total_multiplicity() == ell + 1);
        ++tested;
    }
}

TEST_CASE("edge reciprocity on the example-1 subgraphs") {
    ModPolyDB db = test_db();
    FieldContext ctx(3461, 1, 1);
    RootMultiset nb = neighbors(ctx, 5, Fp2{3185, 0}, db);
    std::vector<Fp2> verts;
    for (const auto& [v, m] : nb.entries) verts.push_back(v);
    for (int L : {11, 23}) {
        IsogenyGraph g = induced_subgraph(verts, ctx, L, db);
        for (const auto& [key, m] : g.edges) {
            CHECK(g.multiplicity(key.second, key.first) == m);
        }
    }
}

TEST_CASE("cycle enumeration on hand-built graphs") {
    FieldContext ctx = FieldContext::with_default_poly(101);
    SUBCASE("loop of multiplicity 2 reports two loops") {
        IsogenyGraph g;
        g.p = 101;
        g.level = 5;
        g.vertices = {ctx.from_int(7)};
        g.edges[{0, 0}] = 2;
        auto cycles = simple_cycles(g, 4);
        REQUIRE(cycles.size() == 2);
        CHECK(cycles[0].vertices == std::vector<Fp2>{ctx.from_int(7)});
    }
    SUBCASE("triangle in both orientations gives exactly two 3-cycles") {
        IsogenyGraph g;
        g.p = 101;
        g.level = 5;
        g.vertices = {ctx.from_int(1), ctx.from_int(2), ctx.from_int(3)};
        for (auto [a, b] : {std::pair{0, 1}, {1, 2}, {2, 0}, {1, 0}, {2, 1}, {0, 2}}) g.edges[{a, b}] = 1;
        auto cycles = simple_cycles(g, 3);
        int len3 = 0, len2 = 0;
        for (const auto& c : cycles) {
            if (c.vertices.size() == 3) ++len3;
            if (c.vertices.size() == 2) ++len2;
        }
        CHECK(len3 == 2);
        CHECK(len2 == 3);  // each mutual pair closes a 2-cycle
        for (const auto& c : cycles)
            if (c.vertices.size() > 1) CHECK(Fp2Less{}(c.vertices[0], c.vertices[1]));
    }
    SUBCASE("double edges multiply the cycle count") {
        IsogenyGraph g;
        g.p = 101;
        g.level = 47;
        g.vertices = {ctx.from_int(1), ctx.from_int(2)};
        g.edges[{0, 1}] = 2;
        g.edges[{1, 0}] = 2;
        auto cycles = simple_cycles(g, 2);
        CHECK(cycles.size() == 4);  // 2 choices out, 2 back
    }
}

TEST_CASE("count_isogenies: triple edges of example 4 and loops of example 2") {
    ModPolyDB db = test_db();
    {
        FieldContext ctx(827, 1, 0);
        CHECK(count_isogenies(ctx, 13, Fp2{169, 774}, Fp2{169, 53}, db) == 3);
    }
    {
        // the partner of 860b+1506 is its Frobenius conjugate 1449b+646
        FieldContext ctx(2309, 1, 1);
        CHECK(count_isogenies(ctx, 37, Fp2{1506, 860}, Fp2{646, 1449}, db) == 3);
        CHECK(ctx.frobenius(Fp2{1506, 860}) == Fp2{646, 1449});
    }
    {
        FieldContext ctx(12601, 11, 0);
        CHECK(count_isogenies(ctx, 47, Fp2{5035, 0}, Fp2{5035, 0}, db) == 2);
    }
}

TEST_CASE("exports are deterministic and carry the element grammar") {
    ModPolyDB db = test_db();
    FieldContext ctx(12601, 11, 0);
    RootMultiset nb = neighbors(ctx, 2, Fp2{4825, 0}, db);
    std::vector<Fp2> verts;
    for (const auto& [v, m] : nb.entries) verts.push_back(v);
    IsogenyGraph g = induced_subgraph(verts, ctx, 47, db);
    std::string dot = graph_to_dot(g, ctx);
    std::string json = graph_to_json(g, ctx);
    CHECK(dot == graph_to_dot(g, ctx));
    CHECK(json == graph_to_json(g, ctx));
    CHECK(dot.find("\"5035\" -> \"5035\"") != std::string::npos);
    CHECK(json.find("\"7022b+1350\"") != std::string::npos);
    CHECK(json.find("\"def_poly\"") != std::string::npos);
}
