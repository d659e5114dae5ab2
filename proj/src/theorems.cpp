#include "isocycle/theorems.hpp"

#include <algorithm>

#include <json.hpp>

#include "isocycle/errors.hpp"

namespace isocycle {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::confirmed: return "CONFIRMED";
        case Verdict::hypotheses_not_met: return "HYPOTHESES_NOT_MET";
        case Verdict::mismatch: return "MISMATCH";
    }
    return "?";
}

const char* ell_behavior_name(EllBehavior b) {
    switch (b) {
        case EllBehavior::split: return "split";
        case EllBehavior::inert: return "inert";
        case EllBehavior::ramified: return "ramified";
    }
    return "?";
}

const char* j_class_name(JClass c) {
    switch (c) {
        case JClass::generic: return "GENERIC";
        case JClass::j1728: return "1728";
        case JClass::j0: return "0";
    }
    return "?";
}

namespace {

FieldContext make_context(u64 p, const RunOptions& opts) {
    if (opts.field_poly) return FieldContext(p, opts.field_poly->first, opts.field_poly->second);
    return FieldContext::with_default_poly(p);
}

void check_inputs(u64 p, int ell, int L) {
    if (!is_prime_u64(p) || p <= 3) fail(errc::composite_modulus, "p must be a prime > 3");
    if (!is_prime_u64(static_cast<u64>(ell)) || !is_prime_u64(static_cast<u64>(L)))
        fail(errc::hypothesis_failure, "ell and L must be prime");
    if (ell == L) fail(errc::hypothesis_failure, "ell and L must differ");
    if (static_cast<u64>(ell) == p || static_cast<u64>(L) == p)
        fail(errc::hypothesis_failure, "ell and L must differ from p");
}

UnitClass unit_class_for(const QuadOrder& order) {
    if (order.disc() == -4) return UnitClass::gauss;
    if (order.disc() == -3) return UnitClass::eisenstein;
    return UnitClass::generic;
}

/// A witness iff L is the norm of an element of the order of the given
/// (negative) discriminant; used for the per-vertex richer-CM check.
bool splits_principally(i64 disc, i64 L) {
    TauKind kind = (((disc % 4) + 4) % 4 == 0) ? TauKind::sqrt_minus_d : TauKind::half;
    i64 d = kind == TauKind::sqrt_minus_d ? -disc / 4 : -disc;
    return cornacchia(QuadOrder{d, kind, 1}, L).has_value();
}

struct Setup {
    FieldContext ctx;
    QuadOrder eff;
    bool stepped;
    SplitWitness witness;
    int m;
    Fp2 seed_j;
    i64 seed_disc;
};

/// Seed + witness selection shared by construct_cycles and conjugate_pair_check.
/// If the conductor-1 prediction degenerates to loops (m = 1) and the
/// conductor-ell order has a tabulated CM point, the walk starts there
/// instead; this is what turns the trivial all-loops answer into the
/// 2-cycle and m-cycle pictures at 66^3, 54000, -12288000 and the
/// H_{-44} root.
Setup prepare(u64 p, int ell, int L, i64 d, TauKind kind, const RunOptions& opts) {
    check_inputs(p, ell, L);
    FieldContext ctx = make_context(p, opts);
    QuadOrder base = QuadOrder::make(d, kind, 1);
    if (kronecker(base.disc0(), static_cast<i64>(p)) != -1)
        fail(errc::seed_not_found, "p is not inert in the order; the CM point is not supersingular");

    auto w0 = cornacchia(base, L);
    if (!w0)
        fail(errc::not_split,
             "L = " + std::to_string(L) + " does not split into principal ideals in the order");
    int m0 = order_m(*w0, base, ell, unit_class_for(base));

    QuadOrder eff = base;
    SplitWitness w = *w0;
    int m = m0;
    bool stepped = false;
    if (m0 == 1 && !opts.seed_j) {
        QuadOrder up = base.with_conductor(ell);
        if (cm_point_mod_p(up.disc(), ctx)) {
            auto w1 = cornacchia(up, L);
            if (w1) {
                eff = up;
                w = *w1;
                m = order_m(w, eff, ell, UnitClass::generic);
                stepped = true;
            }
        }
    }

    Fp2 seed_j;
    if (opts.seed_j) {
        seed_j = *opts.seed_j;
    } else {
        auto sj = cm_point_mod_p(eff.disc(), ctx);
        if (!sj)
            fail(errc::seed_not_found,
                 "no tabulated CM point for discriminant " + std::to_string(eff.disc()));
        seed_j = *sj;
    }
    return {std::move(ctx), eff, stepped, w, m, seed_j, eff.disc()};
}

std::optional<i64> cm_disc_of_vertex(const Fp2& v, const FieldContext& ctx) {
    for (i64 disc : cm_seed_search_order()) {
        if (kronecker(disc, static_cast<i64>(ctx.p())) != -1) continue;
        auto j = cm_point_mod_p(disc, ctx);
        if (j && *j == v) return disc;
    }
    return std::nullopt;
}

}  // namespace

PredictionReport construct_cycles(u64 p, int ell, int L, i64 d, TauKind kind, ModPolyDB& db,
                                  const RunOptions& opts) {
    Setup s = prepare(p, ell, L, d, kind, opts);
    const FieldContext& ctx = s.ctx;

    PredictionReport r;
    r.p = p;
    r.ell = ell;
    r.L = L;
    r.d = d;
    r.kind = kind;
    r.effective_order = s.eff;
    r.stepped = s.stepped;
    r.seed_disc = s.seed_disc;
    r.seed_j = s.seed_j;
    r.witness = s.witness;
    r.predicted_m = s.m;
    r.j_class = s.seed_j == ctx.from_int(1728) ? JClass::j1728
                : s.seed_j == ctx.zero()       ? JClass::j0
                                               : JClass::generic;
    int chi = kronecker(s.eff.disc(), ell);
    r.ell_in_order = chi == 1 ? EllBehavior::split : chi == -1 ? EllBehavior::inert : EllBehavior::ramified;
    r.bound = static_cast<i64>(ell) * ell * L * (-s.eff.disc());
    r.bound_ok = static_cast<i64>(p) > r.bound;
    if (!r.bound_ok)
        r.notes.push_back("p is below the bound ell^2*L*D; the length guarantee is not covered");
    if (s.stepped)
        r.notes.push_back("seed stepped to the conductor-" + std::to_string(ell) +
                          " order (the conductor-1 witness already gives loops everywhere)");

    RootMultiset nb = neighbors(ctx, ell, s.seed_j, db, opts.seed);
    std::vector<Fp2> verts;
    for (const auto& [v, m] : nb.entries) verts.push_back(v);
    EnumerateOptions eo{opts.parallel, opts.seed};
    r.subgraph = induced_subgraph(verts, ctx, L, db, eo);
    r.cycles = simple_cycles(r.subgraph, static_cast<int>(r.subgraph.vertices.size()));

    // A length-2 vertex cycle whose return edge is forced to be the dual of
    // the outgoing edge is a backtracking walk, not one of the constructed
    // 2-cycles. Pairing each edge with its dual leaves
    // m_uv * m_vu - min(m_uv, m_vu) genuine 2-cycles between u and v.
    const int n = static_cast<int>(r.subgraph.vertices.size());
    auto two_cycles_at = [&](int vi) {
        int total = 0;
        for (int k = 0; k < n; ++k) {
            if (k == vi) continue;
            int ab = r.subgraph.multiplicity(vi, k), ba = r.subgraph.multiplicity(k, vi);
            if (ab > 0 && ba > 0) total += ab * ba - std::min(ab, ba);
        }
        return total;
    };
    auto census_at = [&](const Fp2& v, int len) {
        int total = 0;
        for (const Cycle& c : r.cycles)
            if (static_cast<int>(c.vertices.size()) == len &&
                std::find(c.vertices.begin(), c.vertices.end(), v) != c.vertices.end())
                ++total;
        return total;
    };

    bool all_ok = true;
    for (int vi = 0; vi < n; ++vi) {
        const Fp2& v = r.subgraph.vertices[vi];
        VertexObservation obs;
        obs.j = v;
        for (const Cycle& c : r.cycles) {
            if (std::find(c.vertices.begin(), c.vertices.end(), v) == c.vertices.end()) continue;
            obs.cycle_lengths.push_back(static_cast<int>(c.vertices.size()));
            if (c.vertices.size() == 1) ++obs.loops;
        }
        obs.cm_disc = cm_disc_of_vertex(v, ctx);
        obs.expected_loops = obs.cm_disc && splits_principally(*obs.cm_disc, L);
        if (obs.expected_loops) {
            obs.ok = obs.loops >= 2;
        } else {
            int at_m = s.m == 1   ? obs.loops
                       : s.m == 2 ? two_cycles_at(vi)
                                  : census_at(v, s.m);
            obs.ok = at_m >= 2;
            if (obs.ok && r.bound_ok) {
                // above the bound nothing shorter than m may pass through v
                for (int len = 1; len < s.m; ++len) {
                    int shorter = len == 1 ? obs.loops : len == 2 ? two_cycles_at(vi) : census_at(v, len);
                    if (shorter > 0) obs.ok = false;
                }
            }
        }
        all_ok = all_ok && obs.ok;
        r.vertex_obs.push_back(std::move(obs));
    }

    // Split ell breaks the distinct-vertices argument only for generic seeds;
    // at 1728 and 0 the unit action supplies the second isogeny instead.
    if (r.ell_in_order == EllBehavior::split && r.j_class == JClass::generic) {
        r.verdict = Verdict::hypotheses_not_met;
        r.notes.push_back(
            "ell splits in the order: closed walks of length m exist but simplicity is not "
            "guaranteed; observations reported without a verdict");
    } else {
        r.verdict = all_ok ? Verdict::confirmed : Verdict::mismatch;
    }
    return r;
}

bool two_cycle_condition(TwoCycleCase c, i64 ell, const SplitWitness& w) {
    const i64 a = w.a, b = w.b;
    switch (c) {
        case TwoCycleCase::gauss:
            if (ell <= 2) fail(errc::case_mismatch, "case (1) requires an odd ell");
            return (a * a - b * b) % ell == 0 && a % ell != 0;
        case TwoCycleCase::eisenstein:
            if (ell <= 3) fail(errc::case_mismatch, "case (2) requires ell > 3");
            return a % ell != 0 && b % ell != 0 && (a + b) % ell != 0 &&
                   ((a * a - b * b) % ell == 0 || (b * b + 2 * a * b) % ell == 0 ||
                    (a * a + 2 * a * b) % ell == 0);
        case TwoCycleCase::generic_odd:
            if (ell <= 2) fail(errc::case_mismatch, "case (3) requires an odd ell");
            return a % ell == 0 && b % ell != 0;
        case TwoCycleCase::generic_ell2:
            if (ell != 2) fail(errc::case_mismatch, "case (4) requires ell = 2");
            return b % 2 != 0;
    }
    return false;
}

namespace {

/// Witness in sqrt(-d)-coordinates: for a half-kind order this needs the
/// tau-coefficient to be even.
std::optional<SplitWitness> sqrt_coordinates(const SplitWitness& w, const QuadOrder& order) {
    if (order.kind == TauKind::sqrt_minus_d) return w;
    if (w.b % 2 != 0) return std::nullopt;
    return SplitWitness{w.a + w.b / 2 * order.conductor, w.b / 2, w.L};
}

}  // namespace

PairCountReport conjugate_pair_check(u64 p, int ell, int L, i64 d, TauKind kind, ModPolyDB& db,
                                     const RunOptions& opts) {
    Setup s = prepare(p, ell, L, d, kind, opts);
    const FieldContext& ctx = s.ctx;

    PairCountReport r;
    r.p = p;
    r.ell = ell;
    r.L = L;
    r.d = d;
    r.kind = kind;
    r.effective_order = s.eff;
    r.stepped = s.stepped;
    r.seed_j = s.seed_j;
    r.witness = s.witness;
    r.bound = (-s.eff.disc()) * static_cast<i64>(ell) * ell * L;
    r.above_bound = static_cast<i64>(p) > r.bound;

    if (kronecker(s.eff.disc(), ell) == 1)
        fail(errc::hypothesis_failure, "ell splits in the order; the two-isogeny bound requires ramified or inert");

    // which 2-cycle case applies
    if (s.eff.disc() == -4 && ell > 2) {
        r.two_cycle_case = TwoCycleCase::gauss;
        r.two_cycle_holds = two_cycle_condition(TwoCycleCase::gauss, ell, s.witness);
    } else if (s.eff.disc() == -3 && ell > 3) {
        r.two_cycle_case = TwoCycleCase::eisenstein;
        r.two_cycle_holds = two_cycle_condition(TwoCycleCase::eisenstein, ell, s.witness);
    } else if (auto ws = sqrt_coordinates(s.witness, s.eff)) {
        r.two_cycle_case = ell == 2 ? TwoCycleCase::generic_ell2 : TwoCycleCase::generic_odd;
        r.two_cycle_holds = two_cycle_condition(*r.two_cycle_case, ell, *ws);
    } else {
        r.notes.push_back("witness has no sqrt(-d)-coordinates; the 2-cycle conditions do not apply");
    }

    RootMultiset nb = neighbors(ctx, ell, s.seed_j, db, opts.seed);
    std::vector<Fp2> verts;
    for (const auto& [v, m] : nb.entries) verts.push_back(v);
    EnumerateOptions eo{opts.parallel, opts.seed};
    IsogenyGraph g = induced_subgraph(verts, ctx, L, db, eo);

    // mutually connected pairs of generic vertices (tabulated CM points are
    // not subjects of the two-isogeny claim: optimality fails there)
    const int n = static_cast<int>(g.vertices.size());
    for (int i = 0; i < n; ++i) {
        if (cm_disc_of_vertex(g.vertices[i], ctx)) continue;
        for (int k = i + 1; k < n; ++k) {
            if (cm_disc_of_vertex(g.vertices[k], ctx)) continue;
            int ab = g.multiplicity(i, k), ba = g.multiplicity(k, i);
            if (ab > 0 && ba > 0) r.pairs.push_back({g.vertices[i], g.vertices[k], ab, ba});
        }
    }
    if (r.pairs.empty()) {
        r.verdict = Verdict::hypotheses_not_met;
        r.notes.push_back("no mutually L-connected generic neighbor pair found");
        return r;
    }
    if (!r.above_bound) {
        r.verdict = Verdict::hypotheses_not_met;
        r.notes.push_back("p is below D*ell^2*L; extra isogenies are permitted");
        return r;
    }
    bool all_two = true;
    for (const PairCount& pc : r.pairs) all_two = all_two && pc.count_ab == 2 && pc.count_ba == 2;
    r.verdict = all_two ? Verdict::confirmed : Verdict::mismatch;
    return r;
}

SpecialNeighborCounts special_neighbor_counts(u64 p, int ell, int which, ModPolyDB& db,
                                              const RunOptions& opts) {
    if (!is_prime_u64(p) || p <= 3) fail(errc::composite_modulus, "p must be a prime > 3");
    if (!is_prime_u64(static_cast<u64>(ell)) || ell <= 3)
        fail(errc::hypothesis_failure, "the closed forms require a prime ell > 3");
    FieldContext ctx = make_context(p, opts);
    SpecialNeighborCounts res;
    Fp2 vertex;
    if (which == 1728) {
        if (p % 4 != 3) fail(errc::hypothesis_failure, "vertex 1728 requires p = 3 mod 4");
        if (static_cast<i64>(p) <= 4 * static_cast<i64>(ell) * ell)
            fail(errc::hypothesis_failure, "vertex 1728 requires p > 4 ell^2");
        vertex = ctx.from_int(1728);
        res.expected_count = static_cast<int>((ell - kronecker(-1, ell)) / 2);
        res.expected_multiplicity = 2;
    } else if (which == 0) {
        if (p % 3 != 2) fail(errc::hypothesis_failure, "vertex 0 requires p = 2 mod 3");
        if (static_cast<i64>(p) <= 3 * static_cast<i64>(ell) * ell)
            fail(errc::hypothesis_failure, "vertex 0 requires p > 3 ell^2");
        vertex = ctx.zero();
        res.expected_count = static_cast<int>((ell - kronecker(ell, 3)) / 3);
        res.expected_multiplicity = 3;
    } else {
        fail(errc::hypothesis_failure, "vertex must be 1728 or 0");
    }
    RootMultiset nb = neighbors(ctx, ell, vertex, db, opts.seed);
    res.multiplicity = -1;
    for (const auto& [r, m] : nb.entries) {
        if (r == vertex) continue;  // loops at the special vertex are not counted
        ++res.neighbor_count;
        if (res.multiplicity == -1) res.multiplicity = m;
        if (m != res.multiplicity) res.multiplicity = -2;  // not uniform
    }
    res.ok = res.neighbor_count == res.expected_count && res.multiplicity == res.expected_multiplicity;
    return res;
}

namespace {

nlohmann::ordered_json vertex_obs_json(const VertexObservation& o, const FieldContext& ctx) {
    nlohmann::ordered_json j;
    j["j"] = ctx.render(o.j);
    j["loops"] = o.loops;
    j["cycle_lengths"] = o.cycle_lengths;
    if (o.cm_disc) j["cm_disc"] = *o.cm_disc;
    j["expected"] = o.expected_loops ? "loops" : "m_cycles";
    j["ok"] = o.ok;
    return j;
}

}  // namespace

std::string report_to_json(const PredictionReport& r, const FieldContext& ctx) {
    nlohmann::ordered_json j;
    j["p"] = r.p;
    j["ell"] = r.ell;
    j["L"] = r.L;
    j["d"] = r.d;
    j["kind"] = r.kind == TauKind::sqrt_minus_d ? "sqrt" : "half";
    j["seed_disc"] = r.seed_disc;
    j["seed_j"] = ctx.render(r.seed_j);
    j["stepped"] = r.stepped;
    j["j_class"] = j_class_name(r.j_class);
    j["witness"] = {{"a", r.witness.a}, {"b", r.witness.b}, {"L", r.witness.L}};
    j["ell_in_order"] = ell_behavior_name(r.ell_in_order);
    j["bound"] = r.bound;
    j["bound_ok"] = r.bound_ok;
    j["predicted_m"] = r.predicted_m;
    auto& cyc = j["cycles"] = nlohmann::ordered_json::array();
    for (const Cycle& c : r.cycles) {
        nlohmann::ordered_json one = nlohmann::ordered_json::array();
        for (const Fp2& v : c.vertices) one.push_back(ctx.render(v));
        cyc.push_back(std::move(one));
    }
    auto& vo = j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& o : r.vertex_obs) vo.push_back(vertex_obs_json(o, ctx));
    j["verdict"] = verdict_name(r.verdict);
    j["notes"] = r.notes;
    return j.dump(2) + "\n";
}

std::string report_to_json(const PairCountReport& r, const FieldContext& ctx) {
    nlohmann::ordered_json j;
    j["p"] = r.p;
    j["ell"] = r.ell;
    j["L"] = r.L;
    j["d"] = r.d;
    j["kind"] = r.kind == TauKind::sqrt_minus_d ? "sqrt" : "half";
    j["seed_j"] = ctx.render(r.seed_j);
    j["stepped"] = r.stepped;
    j["witness"] = {{"a", r.witness.a}, {"b", r.witness.b}, {"L", r.witness.L}};
    j["two_cycle_holds"] = r.two_cycle_holds;
    j["bound"] = r.bound;
    j["above_bound"] = r.above_bound;
    auto& pairs = j["pairs"] = nlohmann::ordered_json::array();
    for (const PairCount& pc : r.pairs) {
        nlohmann::ordered_json e;
        e["a"] = ctx.render(pc.a);
        e["b"] = ctx.render(pc.b);
        e["count_ab"] = pc.count_ab;
        e["count_ba"] = pc.count_ba;
        pairs.push_back(std::move(e));
    }
    j["verdict"] = verdict_name(r.verdict);
    j["notes"] = r.notes;
    return j.dump(2) + "\n";
}

}  // namespace isocycle
