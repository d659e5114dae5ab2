#include "isocycle/poly.hpp"

#include <algorithm>

#include "isocycle/errors.hpp"

namespace isocycle {

Poly poly_add(const Poly& f, const Poly& g, const FieldContext& ctx) {
    std::vector<Fp2> c(std::max(f.coeffs().size(), g.coeffs().size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = ctx.add(f.coeff(i), g.coeff(i));
    return Poly(std::move(c));
}

Poly poly_sub(const Poly& f, const Poly& g, const FieldContext& ctx) {
    std::vector<Fp2> c(std::max(f.coeffs().size(), g.coeffs().size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = ctx.sub(f.coeff(i), g.coeff(i));
    return Poly(std::move(c));
}

Poly poly_mul(const Poly& f, const Poly& g, const FieldContext& ctx) {
    if (f.is_zero() || g.is_zero()) return Poly();
    std::vector<Fp2> c(f.coeffs().size() + g.coeffs().size() - 1);
    for (size_t i = 0; i < f.coeffs().size(); ++i)
        for (size_t k = 0; k < g.coeffs().size(); ++k)
            c[i + k] = ctx.add(c[i + k], ctx.mul(f.coeffs()[i], g.coeffs()[k]));
    return Poly(std::move(c));
}

namespace {

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g, const FieldContext& ctx) {
    if (g.is_zero()) fail(errc::division_by_zero, "polynomial division by zero");
    if (f.degree() < g.degree()) return {Poly(), f};
    Fp2 linv = ctx.inv(g.lead());
    std::vector<Fp2> rem = f.coeffs();
    std::vector<Fp2> quo(f.degree() - g.degree() + 1);
    for (int i = f.degree(); i >= g.degree(); --i) {
        Fp2 q = ctx.mul(rem[i], linv);
        if (q == Fp2{}) continue;
        quo[i - g.degree()] = q;
        for (int k = 0; k <= g.degree(); ++k)
            rem[i - g.degree() + k] = ctx.sub(rem[i - g.degree() + k], ctx.mul(q, g.coeffs()[k]));
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

}  // namespace

Poly poly_quot(const Poly& f, const Poly& g, const FieldContext& ctx) { return divmod(f, g, ctx).first; }

Poly poly_rem(const Poly& f, const Poly& g, const FieldContext& ctx) { return divmod(f, g, ctx).second; }

Poly poly_monic(const Poly& f, const FieldContext& ctx) {
    if (f.is_zero()) return f;
    Fp2 linv = ctx.inv(f.lead());
    std::vector<Fp2> c = f.coeffs();
    for (auto& x : c) x = ctx.mul(x, linv);
    return Poly(std::move(c));
}

Poly poly_gcd(Poly f, Poly g, const FieldContext& ctx) {
    while (!g.is_zero()) {
        Poly r = poly_rem(f, g, ctx);
        f = std::move(g);
        g = std::move(r);
    }
    return poly_monic(f, ctx);
}

Poly poly_derivative(const Poly& f, const FieldContext& ctx) {
    if (f.degree() < 1) return Poly();
    std::vector<Fp2> c(f.degree());
    for (int i = 1; i <= f.degree(); ++i) {
        Fp2 k = ctx.from_int(i);
        c[i - 1] = ctx.mul(k, f.coeffs()[i]);
    }
    return Poly(std::move(c));
}

Fp2 poly_eval(const Poly& f, const Fp2& x, const FieldContext& ctx) {
    Fp2 acc{};
    for (int i = f.degree(); i >= 0; --i) acc = ctx.add(ctx.mul(acc, x), f.coeffs()[i]);
    return acc;
}

Poly poly_powmod(const Poly& base, u128 e, const Poly& m, const FieldContext& ctx) {
    Poly r = Poly::constant(ctx.one());
    Poly b = poly_rem(base, m, ctx);
    while (e) {
        if (e & 1) r = poly_rem(poly_mul(r, b, ctx), m, ctx);
        b = poly_rem(poly_mul(b, b, ctx), m, ctx);
        e >>= 1;
    }
    return r;
}

namespace {

struct SplitMix {
    u64 s;
    u64 next() {
        s += 0x9e3779b97f4a7c15ULL;
        u64 z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    Fp2 element(const FieldContext& ctx) { return {next() % ctx.p(), next() % ctx.p()}; }
};

// x^(p^2) - x reduced mod f, then gcd: isolates the F_{p^2}-rational linear part
Poly linear_part(const Poly& f, const FieldContext& ctx) {
    u128 q = u128(ctx.p()) * ctx.p();
    Poly x(std::vector<Fp2>{ctx.zero(), ctx.one()});
    Poly xq = poly_powmod(x, q, f, ctx);
    return poly_gcd(f, poly_sub(xq, x, ctx), ctx);
}

// equal-degree splitting of a monic product of distinct linear factors
void split_linears(const Poly& h, const FieldContext& ctx, SplitMix& rng, std::vector<Fp2>& out) {
    if (h.degree() <= 0) return;
    if (h.degree() == 1) {
        out.push_back(ctx.neg(h.coeffs()[0]));  // monic: root of X + c
        return;
    }
    u128 half = (u128(ctx.p()) * ctx.p() - 1) / 2;
    for (;;) {
        Poly shift(std::vector<Fp2>{rng.element(ctx), ctx.one()});
        Poly t = poly_powmod(shift, half, h, ctx);
        t = poly_sub(t, Poly::constant(ctx.one()), ctx);
        Poly g = poly_gcd(h, t, ctx);
        if (g.degree() > 0 && g.degree() < h.degree()) {
            split_linears(g, ctx, rng, out);
            split_linears(poly_quot(h, g, ctx), ctx, rng, out);
            return;
        }
    }
}

// exact p-th root of f = g(x^p): coefficients at p*i, each raised to p
Poly pth_root(const Poly& f, const FieldContext& ctx) {
    std::vector<Fp2> c(static_cast<size_t>(f.degree() / static_cast<i64>(ctx.p())) + 1);
    for (size_t i = 0; i < c.size(); ++i) c[i] = ctx.frobenius(f.coeff(i * ctx.p()));
    return Poly(std::move(c));
}

int multiplicity_in(const Poly& f, const Fp2& r, const FieldContext& ctx) {
    Poly lin(std::vector<Fp2>{ctx.neg(r), ctx.one()});
    Poly w = f;
    int m = 0;
    for (;;) {
        auto [q, rem] = std::pair{poly_quot(w, lin, ctx), poly_rem(w, lin, ctx)};
        if (!rem.is_zero()) return m;
        ++m;
        w = q;
        if (w.degree() < 1) return m;
    }
}

}  // namespace

RootMultiset roots_in_fp2(const Poly& f, const FieldContext& ctx, u64 seed) {
    if (f.is_zero()) fail(errc::division_by_zero, "root extraction of the zero polynomial");
    SplitMix rng{seed ^ 0xA5A5A5A5DEADBEEFULL};
    RootMultiset out;
    Poly work = poly_monic(f, ctx);
    while (work.degree() > 0) {
        Poly d = poly_derivative(work, ctx);
        if (d.is_zero()) {
            work = pth_root(work, ctx);
            continue;
        }
        Poly g = poly_gcd(work, d, ctx);
        Poly rad = poly_quot(work, g, ctx);
        std::vector<Fp2> roots;
        split_linears(linear_part(rad, ctx), ctx, rng, roots);
        for (const Fp2& r : roots) {
            if (out.multiplicity_of(r) == 0) out.entries.emplace_back(r, multiplicity_in(f, r, ctx));
        }
        work = std::move(g);
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const auto& x, const auto& y) { return Fp2Less{}(x.first, y.first); });
    return out;
}

}  // namespace isocycle
