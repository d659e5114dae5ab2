#include <doctest.h>

#include <map>

#include "isocycle/errors.hpp"
#include "isocycle/poly.hpp"

using namespace isocycle;

namespace {

struct Rng {
    u64 s;
    u64 next() {
        s += 0x9e3779b97f4a7c15ULL;
        u64 z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

Poly from_ints(const FieldContext& ctx, std::initializer_list<i64> cs) {
    std::vector<Fp2> v;
    for (i64 c : cs) v.push_back(ctx.from_int(c));
    return Poly(std::move(v));
}

Poly random_poly(const FieldContext& ctx, Rng& rng, int deg) {
    std::vector<Fp2> c(deg + 1);
    for (auto& x : c) x = {rng.next() % ctx.p(), rng.next() % ctx.p()};
    if (ctx.is_zero(c.back())) c.back() = ctx.one();
    return Poly(std::move(c));
}

Poly linear(const FieldContext& ctx, const Fp2& root) {
    return Poly(std::vector<Fp2>{ctx.neg(root), ctx.one()});
}

// oracle: evaluate f at every element of F_{p^2}, multiplicity by division
RootMultiset exhaustive_roots(const Poly& f, const FieldContext& ctx) {
    RootMultiset out;
    for (u64 a1 = 0; a1 < ctx.p(); ++a1)
        for (u64 a0 = 0; a0 < ctx.p(); ++a0) {
            Fp2 x{a0, a1};
            if (!ctx.is_zero(poly_eval(f, x, ctx))) continue;
            Poly w = f;
            int m = 0;
            for (;;) {
                Poly r = poly_rem(w, linear(ctx, x), ctx);
                if (!r.is_zero()) break;
                w = poly_quot(w, linear(ctx, x), ctx);
                ++m;
            }
            out.entries.emplace_back(x, m);
        }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const auto& a, const auto& b) { return Fp2Less{}(a.first, b.first); });
    return out;
}

}  // namespace

TEST_CASE("gcd normalization and golden cases") {
    FieldContext ctx = FieldContext::with_default_poly(101);
    Poly f = from_ints(ctx, {3, 5, 7});
    CHECK(poly_gcd(f, Poly(), ctx) == poly_monic(f, ctx));
    // gcd((X-1)(X-2), (X-1)(X-3)) = X - 1
    Poly a = poly_mul(linear(ctx, ctx.from_int(1)), linear(ctx, ctx.from_int(2)), ctx);
    Poly b = poly_mul(linear(ctx, ctx.from_int(1)), linear(ctx, ctx.from_int(3)), ctx);
    CHECK(poly_gcd(a, b, ctx) == linear(ctx, ctx.from_int(1)));
}

TEST_CASE("division: construct-then-divide oracle on random instances") {
    FieldContext ctx = FieldContext::with_default_poly(101);
    Rng rng{11};
    for (int t = 0; t < 50; ++t) {
        Poly f = random_poly(ctx, rng, 1 + static_cast<int>(rng.next() % 5));
        Poly g = random_poly(ctx, rng, 1 + static_cast<int>(rng.next() % 4));
        Poly r = random_poly(ctx, rng, g.degree() - 1);
        Poly sum = poly_add(poly_mul(f, g, ctx), r, ctx);
        CHECK(poly_rem(sum, g, ctx) == r);
        CHECK(poly_quot(sum, g, ctx) == f);
    }
    CHECK_THROWS_AS(poly_rem(from_ints(ctx, {1, 1}), Poly(), ctx), error);
}

TEST_CASE("roots of a constructed square") {
    FieldContext ctx = FieldContext::with_default_poly(101);
    Poly sq = poly_mul(linear(ctx, ctx.from_int(5)), linear(ctx, ctx.from_int(5)), ctx);
    RootMultiset r = roots_in_fp2(sq, ctx);
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0] == std::pair{ctx.from_int(5), 2});
}

TEST_CASE("root extraction equals the exhaustive oracle on small fields") {
    for (u64 p : {13ull, 31ull}) {
        FieldContext ctx = FieldContext::with_default_poly(p);
        Rng rng{p * 7 + 1};
        for (int t = 0; t < 12; ++t) {
            // mix of structured products and raw random polynomials
            Poly f;
            if (t % 3 == 0) {
                f = random_poly(ctx, rng, 2 + static_cast<int>(rng.next() % 5));
            } else {
                f = Poly::constant(ctx.one());
                int nlin = 1 + static_cast<int>(rng.next() % 3);
                for (int i = 0; i < nlin; ++i) {
                    Fp2 root{rng.next() % p, rng.next() % p};
                    int e = 1 + static_cast<int>(rng.next() % 3);
                    for (int k = 0; k < e; ++k) f = poly_mul(f, linear(ctx, root), ctx);
                }
                f = poly_mul(f, random_poly(ctx, rng, 2), ctx);
            }
            CHECK(roots_in_fp2(f, ctx) == exhaustive_roots(f, ctx));
        }
    }
}

TEST_CASE("char-p multiplicities: (X - c)^p") {
    FieldContext ctx = FieldContext::with_default_poly(13);
    Fp2 c = {4, 9};
    Poly f = Poly::constant(ctx.one());
    for (int i = 0; i < 13; ++i) f = poly_mul(f, linear(ctx, c), ctx);
    CHECK(poly_derivative(f, ctx).is_zero());
    RootMultiset r = roots_in_fp2(f, ctx);
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0] == std::pair{c, 13});
}

TEST_CASE("root extraction is seed-stable and seed-independent") {
    FieldContext ctx(3461, 1, 1);
    Rng rng{5};
    for (int t = 0; t < 10; ++t) {
        Poly f = random_poly(ctx, rng, 8);
        RootMultiset a = roots_in_fp2(f, ctx, 1);
        RootMultiset b = roots_in_fp2(f, ctx, 1);
        RootMultiset c = roots_in_fp2(f, ctx, 999 + t);
        CHECK(a == b);
        CHECK(a == c);
    }
}

TEST_CASE("product of (X - r)^mult divides the input exactly") {
    FieldContext ctx = FieldContext::with_default_poly(499);
    Rng rng{77};
    for (int t = 0; t < 10; ++t) {
        Poly f = random_poly(ctx, rng, 9);
        RootMultiset rm = roots_in_fp2(f, ctx);
        Poly prod = Poly::constant(ctx.one());
        for (const auto& [r, m] : rm.entries)
            for (int k = 0; k < m; ++k) prod = poly_mul(prod, linear(ctx, r), ctx);
        if (prod.degree() >= 0) CHECK(poly_rem(f, prod, ctx).is_zero());
    }
    CHECK_THROWS_AS(roots_in_fp2(Poly(), ctx), error);
}
