#include <CLI11.hpp>
#include <iostream>

#include "isocycle/errors.hpp"
#include "isocycle/theorems.hpp"

using namespace isocycle;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitData = 3;

struct GlobalOpts {
    std::string data_dir;
    std::string format = "text";
    u64 seed = kDefaultRootSeed;
    std::vector<u64> poly;  // c0 c1
};

RunOptions run_options(const GlobalOpts& g) {
    RunOptions o;
    o.seed = g.seed;
    if (!g.poly.empty()) o.field_poly = {{g.poly[0], g.poly.size() > 1 ? g.poly[1] : 0}};
    return o;
}

FieldContext context_for(u64 p, const GlobalOpts& g) {
    if (!g.poly.empty()) return FieldContext(p, g.poly[0], g.poly.size() > 1 ? g.poly[1] : 0);
    return FieldContext::with_default_poly(p);
}

TauKind parse_tau(const std::string& s) {
    if (s == "sqrt") return TauKind::sqrt_minus_d;
    if (s == "half") return TauKind::half;
    fail(errc::hypothesis_failure, "--tau must be sqrt or half");
}

void print_graph(const IsogenyGraph& g, const FieldContext& ctx, const std::string& format) {
    if (format == "dot") {
        std::cout << graph_to_dot(g, ctx);
    } else if (format == "json") {
        std::cout << graph_to_json(g, ctx);
    } else {
        for (size_t i = 0; i < g.vertices.size(); ++i) {
            std::cout << ctx.render(g.vertices[i]) << " ->";
            for (const auto& [key, m] : g.edges)
                if (key.first == static_cast<int>(i))
                    for (int k = 0; k < m; ++k) std::cout << " " << ctx.render(g.vertices[key.second]);
            std::cout << "\n";
        }
    }
}

int cmd_enumerate(u64 p, const GlobalOpts& g) {
    ModPolyDB db(ModPolyDB::resolve_dir(g.data_dir.empty() ? std::nullopt
                                                           : std::optional<std::string>(g.data_dir)));
    FieldContext ctx = context_for(p, g);
    auto all = enumerate_supersingular(ctx, db, {true, g.seed});
    if (g.format == "json") {
        std::cout << "{\n  \"p\": " << p << ",\n  \"count\": " << all.size() << ",\n  \"vertices\": [";
        for (size_t i = 0; i < all.size(); ++i)
            std::cout << (i ? ", " : "") << '"' << ctx.render(all[i]) << '"';
        std::cout << "]\n}\n";
    } else {
        for (const Fp2& j : all) std::cout << ctx.render(j) << "\n";
    }
    std::cout << "count " << all.size() << " matches floor(p/12)+eps: PASS\n";
    return kExitOk;
}

int cmd_subgraph(u64 p, int ell, int L, i64 d, const std::string& tau, const std::string& jflag,
                 const GlobalOpts& g) {
    ModPolyDB db(ModPolyDB::resolve_dir(g.data_dir.empty() ? std::nullopt
                                                           : std::optional<std::string>(g.data_dir)));
    RunOptions opts = run_options(g);
    FieldContext ctx = context_for(p, g);
    if (!jflag.empty()) opts.seed_j = ctx.parse(jflag);
    PredictionReport r = construct_cycles(p, ell, L, d, parse_tau(tau), db, opts);
    if (g.format == "json") {
        std::cout << report_to_json(r, ctx);
    } else {
        std::cout << "seed " << ctx.render(r.seed_j) << " (disc " << r.seed_disc << "), predicted m = "
                  << r.predicted_m << ", verdict " << verdict_name(r.verdict) << "\n";
        print_graph(r.subgraph, ctx, g.format);
    }
    return r.verdict == Verdict::mismatch ? kExitMismatch : kExitOk;
}

int cmd_predict(i64 d, const std::string& tau, int ell, int L, const GlobalOpts& g) {
    QuadOrder base = QuadOrder::make(d, parse_tau(tau), 1);
    if (ell == L) fail(errc::hypothesis_failure, "ell and L must differ");
    auto w = cornacchia(base, L);
    if (!w) fail(errc::not_split, "L does not split into principal ideals in the order");
    UnitClass uc = base.disc() == -4   ? UnitClass::gauss
                   : base.disc() == -3 ? UnitClass::eisenstein
                                       : UnitClass::generic;
    int m = order_m(*w, base, ell, uc);
    i64 ratio = class_ratio(base, ell);
    std::cout << "witness (" << w->a << ", " << w->b << "), m = " << m << ", h'/h = " << ratio << "\n";
    if (base.kind == TauKind::sqrt_minus_d || w->b % 2 == 0) {
        SplitWitness ws = base.kind == TauKind::sqrt_minus_d
                              ? *w
                              : SplitWitness{w->a + w->b / 2, w->b / 2, w->L};
        if (ell == 2) {
            std::cout << "2-cycle condition (ell=2): " << (two_cycle_condition(TwoCycleCase::generic_ell2, 2, ws) ? "yes" : "no")
                      << "\n";
        } else {
            std::cout << "2-cycle condition: " << (two_cycle_condition(TwoCycleCase::generic_odd, ell, ws) ? "yes" : "no")
                      << "\n";
        }
    }
    return kExitOk;
}

bool check(bool ok, const std::string& what) {
    std::cout << "  " << (ok ? "PASS" : "FAIL") << "  " << what << "\n";
    return ok;
}

int verify_example(int n, const GlobalOpts& g) {
    ModPolyDB db(ModPolyDB::resolve_dir(g.data_dir.empty() ? std::nullopt
                                                           : std::optional<std::string>(g.data_dir)));
    bool ok = true;
    if (n == 1) {
        std::cout << "example 1 (p=3461, ell=5, L=11 and 23):\n";
        RunOptions opts;
        opts.field_poly = {{1, 1}};
        FieldContext ctx(3461, 1, 1);
        PredictionReport r = construct_cycles(3461, 5, 11, 7, TauKind::sqrt_minus_d, db, opts);
        ok &= check(r.seed_j == Fp2{3185, 0}, "seed 255^3 = 3185");
        std::vector<Fp2> expect = {ctx.parse("819"), ctx.parse("2402"), ctx.parse("2591b+1415"),
                                   ctx.parse("1039b+2586"), ctx.parse("870b+2285"), ctx.parse("2422b+1547")};
        std::sort(expect.begin(), expect.end(), Fp2Less{});
        ok &= check(r.subgraph.vertices == expect, "six neighbor j-invariants");
        ok &= check(r.predicted_m == 3 && r.verdict == Verdict::confirmed, "two 3-cycles at every vertex");
        PredictionReport r2 = construct_cycles(3461, 5, 23, 7, TauKind::sqrt_minus_d, db, opts);
        ok &= check(r2.predicted_m == 6 && r2.verdict == Verdict::confirmed, "two 6-cycles through all six");
    } else if (n == 2) {
        std::cout << "example 2 (p=12601, ell=2, L=47):\n";
        RunOptions opts;
        opts.field_poly = {{11, 0}};
        PredictionReport r = construct_cycles(12601, 2, 47, 11, TauKind::half, db, opts);
        ok &= check(r.seed_j == Fp2{4825, 0}, "seed is the H_-44 root 4825");
        int i0 = r.subgraph.index_of(Fp2{5035, 0});
        int i1 = r.subgraph.index_of(Fp2{1350, 7022});
        int i2 = r.subgraph.index_of(Fp2{1350, 5579});
        ok &= check(i0 >= 0 && i1 >= 0 && i2 >= 0, "vertices 5035, 7022b+1350, 5579b+1350");
        ok &= check(i0 >= 0 && r.subgraph.multiplicity(i0, i0) == 2, "two loops at 5035");
        ok &= check(i1 >= 0 && i2 >= 0 && r.subgraph.multiplicity(i1, i2) == 2 &&
                        r.subgraph.multiplicity(i2, i1) == 2,
                    "double 2-cycles between the conjugate pair");
        ok &= check(r.verdict == Verdict::confirmed, "verdict CONFIRMED");
    } else if (n == 3) {
        std::cout << "example 3 (d=7, ell=5):\n";
        QuadOrder z7 = QuadOrder::make(7, TauKind::sqrt_minus_d);
        auto m_of = [&](i64 L) { return order_m(*cornacchia(z7, L), z7, 5, UnitClass::generic); };
        ok &= check(m_of(11) == 3, "m(11) = 3");
        ok &= check(m_of(23) == 6, "m(23) = 6");
        ok &= check(m_of(179) == 1, "m(179) = 1");
        ok &= check(m_of(53) == 2, "m(53) = 2");
        ok &= check(class_ratio(z7, 5) == 6, "h'/h = 6");
    } else if (n == 4) {
        std::cout << "example 4 (two-isogeny bound sharpness):\n";
        RunOptions o1;
        o1.field_poly = {{1, 0}};
        PairCountReport a = conjugate_pair_check(827, 2, 13, 1, TauKind::sqrt_minus_d, db, o1);
        ok &= check(a.bound == 832 && !a.above_bound, "827 < 16*4*13 = 832");
        ok &= check(a.pairs.size() == 1 && a.pairs[0].count_ab == 3, "three 13-isogenies at p=827");
        RunOptions o2;
        o2.field_poly = {{1, 1}};
        PairCountReport b = conjugate_pair_check(2309, 3, 37, 7, TauKind::half, db, o2);
        ok &= check(b.bound == 2331 && !b.above_bound, "2309 < 7*9*37 = 2331");
        bool three = false;
        for (const auto& pc : b.pairs) three |= pc.count_ab == 3 && pc.count_ba == 3;
        ok &= check(three, "three 37-isogenies at p=2309");
        PairCountReport c = conjugate_pair_check(839, 2, 13, 1, TauKind::sqrt_minus_d, db);
        ok &= check(c.above_bound && c.verdict == Verdict::confirmed, "exactly two above the bound (p=839)");
    } else {
        fail(errc::hypothesis_failure, "--example must be 1..4 or all");
    }
    return ok ? kExitOk : kExitMismatch;
}

int cmd_modpoly_verify(int level, int trials, const GlobalOpts& g) {
    ModPolyDB db(ModPolyDB::resolve_dir(g.data_dir.empty() ? std::nullopt
                                                           : std::optional<std::string>(g.data_dir)));
    bool ok = true;
    std::vector<int> levels = level ? std::vector<int>{level} : db.available_levels();
    u64 s = g.seed;
    auto next_prime_in = [&s](u64 lo, u64 hi, u64 residue, u64 mod) {
        for (;;) {
            s = s * 6364136223846793005ULL + 1442695040888963407ULL;
            u64 cand = lo + s % (hi - lo);
            if (cand % mod == residue && is_prime_u64(cand)) return cand;
        }
    };
    for (int N : levels) {
        const ModularPolynomial& mp = db.get(N);
        FieldContext ctx = FieldContext::with_default_poly(next_prime_in(1000, 32000, 1, 2));
        ok &= check(symmetry_check(mp, ctx, trials, g.seed), "Phi_" + std::to_string(N) + " symmetry, " +
                                                                 std::to_string(trials) + " random pairs");
    }
    // the four explicit factorizations at 1728 and 0
    for (int t = 0; t < 10; ++t) {
        u64 p3 = next_prime_in(32, 32000, 3, 4);
        FieldContext c3(p3, 1, 0);
        Poly f2 = specialize(db.reduced(2, p3), c3.from_int(1728), c3);
        Poly lin1728 = Poly(std::vector<Fp2>{c3.from_int(-1728), c3.one()});
        Poly lin663 = Poly(std::vector<Fp2>{c3.from_int(-287496), c3.one()});
        ok &= f2 == poly_mul(lin1728, poly_mul(lin663, lin663, c3), c3);
        Poly f3 = specialize(db.reduced(3, p3), c3.from_int(1728), c3);
        Poly q = Poly(std::vector<Fp2>{c3.from_int(-1790957481984LL), c3.from_int(-153542016), c3.one()});
        ok &= f3 == poly_mul(q, q, c3);
        u64 p2 = next_prime_in(32, 32000, 2, 3);
        FieldContext c2 = FieldContext::with_default_poly(p2);
        Poly g2 = specialize(db.reduced(2, p2), c2.zero(), c2);
        Poly lin54k = Poly(std::vector<Fp2>{c2.from_int(-54000), c2.one()});
        ok &= g2 == poly_mul(lin54k, poly_mul(lin54k, lin54k, c2), c2);
        Poly g3 = specialize(db.reduced(3, p2), c2.zero(), c2);
        Poly linm12m = Poly(std::vector<Fp2>{c2.from_int(12288000), c2.one()});
        Poly x = Poly(std::vector<Fp2>{c2.zero(), c2.one()});
        ok &= g3 == poly_mul(x, poly_mul(linm12m, poly_mul(linm12m, linm12m, c2), c2), c2);
    }
    check(ok, "factorizations of Phi_2/Phi_3 at 1728 and 0 over 10 random primes");
    return ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"loops and cycles in supersingular L-isogeny graphs at CM neighbors"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--data-dir", g.data_dir, "modular polynomial directory");
    app.add_option("--format", g.format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
    app.add_option("--seed", g.seed, "seed for factorization randomness");
    app.add_option("--poly", g.poly, "field polynomial c0 [c1] for b^2 + c1 b + c0 = 0")->expected(1, 2);

    u64 p = 0;
    int ell = 2, L = 0, example_level = 0, trials = 50;
    i64 d = 0;
    std::string tau = "sqrt", jflag, example = "all";

    auto* enumerate = app.add_subcommand("enumerate", "list all supersingular j-invariants");
    enumerate->add_option("--p", p, "prime characteristic")->required();

    auto* subgraph = app.add_subcommand("subgraph", "L-subgraph on the ell-neighbors of the CM seed");
    subgraph->add_option("--p", p)->required();
    subgraph->add_option("--ell", ell)->required();
    subgraph->add_option("--L", L)->required();
    subgraph->add_option("--d", d)->required();
    subgraph->add_option("--tau", tau, "sqrt or half");
    subgraph->add_option("--j", jflag, "explicit seed j-invariant (element grammar)");

    auto* predict = app.add_subcommand("predict", "witness, cycle length m and class-number ratio");
    predict->add_option("--d", d)->required();
    predict->add_option("--tau", tau, "sqrt or half");
    predict->add_option("--ell", ell)->required();
    predict->add_option("--L", L)->required();

    auto* verify = app.add_subcommand("verify", "reproduce the worked examples");
    verify->add_option("--example", example, "1, 2, 3, 4 or all");

    auto* modpoly = app.add_subcommand("modpoly", "modular polynomial data checks");
    auto* mpverify = modpoly->add_subcommand("verify", "symmetry and specialization identities");
    mpverify->add_option("--N", example_level, "check one level only");
    mpverify->add_option("--trials", trials, "random pairs per symmetry check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*enumerate) return cmd_enumerate(p, g);
        if (*subgraph) return cmd_subgraph(p, ell, L, d, tau, jflag, g);
        if (*predict) return cmd_predict(d, tau, ell, L, g);
        if (*verify) {
            if (example == "all") {
                int rc = kExitOk;
                for (int n = 1; n <= 4; ++n) rc = std::max(rc, verify_example(n, g));
                return rc;
            }
            return verify_example(std::stoi(example), g);
        }
        if (*mpverify) return cmd_modpoly_verify(example_level, trials, g);
        std::cerr << app.help();
        return kExitInput;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case errc::missing_file:
            case errc::parse_error:
            case errc::degree_mismatch:
            case errc::count_mismatch: return kExitData;
            default: return kExitInput;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
