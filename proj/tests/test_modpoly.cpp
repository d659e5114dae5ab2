#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "isocycle/errors.hpp"
#include "isocycle/modpoly.hpp"

using namespace isocycle;

namespace {

ModPolyDB test_db() { return ModPolyDB(ISOCYCLE_DATA_DIR); }

Poly from_ints(const FieldContext& ctx, std::initializer_list<i64> cs) {
    std::vector<Fp2> v;
    for (i64 c : cs) v.push_back(ctx.from_int(c));
    return Poly(std::move(v));
}

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& content) {
        path = std::filesystem::temp_directory_path() /
               ("isocycle_mp_" + std::to_string(reinterpret_cast<uintptr_t>(this)) + ".txt");
        std::ofstream(path) << content;
    }
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("loading the classical level-2 polynomial") {
    ModPolyDB db = test_db();
    const ModularPolynomial& mp = db.get(2);
    CHECK(mp.degree() == 3);
    CHECK(mp.coefficient(0, 0) == "-157464000000000");
    CHECK(mp.coefficient(3, 0) == "1");
    CHECK(mp.coefficient(1, 0) == mp.coefficient(0, 1));
}

TEST_CASE("specializations match the explicit factorizations") {
    ModPolyDB db = test_db();
    SUBCASE("Phi_2(X, 1728) = (X-1728)(X-66^3)^2, p = 3 mod 4") {
        for (u64 p : {103ull, 827ull, 839ull}) {
            FieldContext ctx(p, 1, 0);
            Poly lhs = specialize(db.reduced(2, p), ctx.from_int(1728), ctx);
            Poly rhs = poly_mul(from_ints(ctx, {-1728, 1}),
                                poly_mul(from_ints(ctx, {-287496, 1}), from_ints(ctx, {-287496, 1}), ctx), ctx);
            CHECK(lhs == rhs);
        }
    }
    SUBCASE("Phi_3(X, 1728) = (X^2 - 153542016 X - 1790957481984)^2") {
        for (u64 p : {103ull, 2309ull}) {
            FieldContext ctx = FieldContext::with_default_poly(p);
            Poly q = Poly(std::vector<Fp2>{ctx.from_int(-1790957481984LL), ctx.from_int(-153542016), ctx.one()});
            CHECK(specialize(db.reduced(3, p), ctx.from_int(1728), ctx) == poly_mul(q, q, ctx));
        }
    }
    SUBCASE("Phi_2(X, 0) = (X - 54000)^3, p = 2 mod 3") {
        for (u64 p : {107ull, 3461ull}) {
            FieldContext ctx = FieldContext::with_default_poly(p);
            Poly lin = from_ints(ctx, {-54000, 1});
            Poly rhs = poly_mul(lin, poly_mul(lin, lin, ctx), ctx);
            CHECK(specialize(db.reduced(2, p), ctx.zero(), ctx) == rhs);
        }
    }
    SUBCASE("Phi_3(X, 0) = X (X + 12288000)^3: the triple root is the CM value -12288000") {
        for (u64 p : {107ull, 3461ull}) {
            FieldContext ctx = FieldContext::with_default_poly(p);
            Poly lin = from_ints(ctx, {12288000, 1});
            Poly rhs = poly_mul(from_ints(ctx, {0, 1}),
                                poly_mul(lin, poly_mul(lin, lin, ctx), ctx), ctx);
            CHECK(specialize(db.reduced(3, p), ctx.zero(), ctx) == rhs);
        }
    }
}

TEST_CASE("every available level specializes to a monic polynomial of degree N+1") {
    ModPolyDB db = test_db();
    FieldContext ctx(3461, 1, 1);
    for (int level : db.available_levels()) {
        Poly f = specialize(db.reduced(level, 3461), Fp2{819, 42}, ctx);
        CHECK(f.degree() == level + 1);
        CHECK(f.lead() == ctx.one());
    }
}

TEST_CASE("parser reports malformed input with positions") {
    CHECK_THROWS_AS(load_modpoly("/nonexistent/phi_j_002.txt", 2), error);
    {
        TempFile f("[0,0] 5\n[1,0 6\n");
        CHECK_THROWS_AS(load_modpoly(f.path, 2), error);
    }
    {
        TempFile f("[0,0] 5x\n");
        CHECK_THROWS_AS(load_modpoly(f.path, 2), error);
    }
    {
        // conflicting mirror entries
        TempFile f("[3,0] 1\n[0,1] 5\n[1,0] 6\n");
        try {
            load_modpoly(f.path, 2);
            CHECK(false);
        } catch (const error& e) {
            CHECK(e.code() == errc::parse_error);
        }
    }
    {
        // max exponent disagrees with the level
        TempFile f("[3,0] 1\n[0,0] 2\n");
        try {
            load_modpoly(f.path, 5);
            CHECK(false);
        } catch (const error& e) {
            CHECK(e.code() == errc::degree_mismatch);
        }
    }
    {
        // not monic
        TempFile f("[3,0] 2\n[0,0] 2\n");
        CHECK_THROWS_AS(load_modpoly(f.path, 2), error);
    }
    {
        // comments and blank lines are fine
        TempFile f("# classical level 2\n\n[3,0] 1\n[2,2] -1\n[2,1] 1488\n[2,0] -162000\n"
                   "[1,1] 40773375\n[1,0] 8748000000\n[0,0] -157464000000000\n");
        CHECK_NOTHROW(load_modpoly(f.path, 2));
    }
}

TEST_CASE("symmetry check passes on real data and fails on corruption") {
    ModPolyDB db = test_db();
    FieldContext ctx(3461, 1, 1);
    for (int level : {2, 3, 5}) CHECK(symmetry_check(db.get(level), ctx, 50));

    ModularPolynomial corrupted = db.get(3);
    corrupted.entries[{2, 1}] = "123456789";  // mirror (1,2) left intact
    CHECK_FALSE(symmetry_check(corrupted, ctx, 50));
}

TEST_CASE("example-1 adjacency is symmetric in both arguments") {
    ModPolyDB db = test_db();
    FieldContext ctx(3461, 1, 1);
    const ReducedModPoly& rmp = db.reduced(5, 3461);
    CHECK(ctx.is_zero(evaluate(rmp, ctx.from_int(3185), ctx.from_int(819), ctx)));
    CHECK(ctx.is_zero(evaluate(rmp, ctx.from_int(819), ctx.from_int(3185), ctx)));
}

TEST_CASE("data directory resolution order") {
    CHECK(ModPolyDB::resolve_dir(std::string("/explicit")) == std::filesystem::path("/explicit"));
    setenv("ISOCYCLE_MODPOLY_DIR", "/from_env", 1);
    CHECK(ModPolyDB::resolve_dir(std::nullopt) == std::filesystem::path("/from_env"));
    unsetenv("ISOCYCLE_MODPOLY_DIR");
    CHECK(ModPolyDB::resolve_dir(std::nullopt) == std::filesystem::path("data/phi"));
}
