#include "isocycle/ssgraph.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "isocycle/errors.hpp"

namespace isocycle {

namespace {

// class-number-one CM j-invariants, keyed by discriminant
constexpr std::pair<i64, i64> kCmTable[] = {
    {-3, 0},
    {-4, 1728},
    {-7, -3375},
    {-8, 8000},
    {-11, -32768},
    {-12, 54000},
    {-16, 287496},
    {-19, -884736},
    {-27, -12288000},
    {-28, 16581375},
    {-43, -884736000},
    {-67, -147197952000},
    {-163, -262537412640768000},
};

// seed search order: -4 first, then the two discriminants the worked
// examples start from, then the rest of the table, H_{-44} last
constexpr i64 kSeedOrder[] = {-4, -28, -11, -3, -7, -8, -12, -16, -19, -27, -43, -67, -163, -44};

const std::vector<i64> kHilbert44 = {-653249011576832, 270413882112, -1122662608, 1};

u64 mix_seed(u64 seed, const Fp2& v) {
    u64 z = seed ^ (v.a0 * 0x9e3779b97f4a7c15ULL) ^ (v.a1 + 0x632be59bd9b4e019ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct Fp2Hash {
    size_t operator()(const Fp2& v) const {
        return std::hash<u64>{}(v.a0 * 0x9e3779b97f4a7c15ULL ^ v.a1);
    }
};

}  // namespace

std::optional<i64> tabulated_cm_j(i64 disc) {
    for (const auto& [d, j] : kCmTable)
        if (d == disc) return j;
    return std::nullopt;
}

const std::vector<i64>& hilbert_class_poly(i64 disc) {
    if (disc != -44) fail(errc::seed_not_found, "no stored class polynomial for this discriminant");
    return kHilbert44;
}

std::span<const i64> cm_seed_search_order() { return kSeedOrder; }

std::optional<Fp2> cm_point_mod_p(i64 disc, const FieldContext& ctx) {
    if (auto j = tabulated_cm_j(disc)) return ctx.from_int(*j);
    if (disc != -44) return std::nullopt;
    const auto& h = hilbert_class_poly(disc);
    std::vector<Fp2> coeffs;
    coeffs.reserve(h.size());
    for (i64 c : h) coeffs.push_back(ctx.from_int(c));
    RootMultiset roots = roots_in_fp2(Poly(std::move(coeffs)), ctx);
    for (const auto& [r, m] : roots.entries)
        if (ctx.in_base_field(r)) return r;  // entries are sorted, first F_p root is smallest
    return std::nullopt;
}

CMSeed cm_seed(const FieldContext& ctx) {
    for (i64 disc : kSeedOrder) {
        if (kronecker(disc, static_cast<i64>(ctx.p())) != -1) continue;
        if (auto j = cm_point_mod_p(disc, ctx)) return {disc, *j};
    }
    fail(errc::seed_not_found, "no tabulated discriminant is inert at p; extend the seed table");
}

Fp2 seed_for_disc(i64 disc, const FieldContext& ctx) {
    if (kronecker(disc, static_cast<i64>(ctx.p())) != -1)
        fail(errc::seed_not_found,
             "discriminant " + std::to_string(disc) + " is not inert at p; CM point is not supersingular");
    auto j = cm_point_mod_p(disc, ctx);
    if (!j) fail(errc::seed_not_found, "discriminant " + std::to_string(disc) + " is not tabulated");
    return *j;
}

RootMultiset neighbors(const FieldContext& ctx, int level, const Fp2& j, ModPolyDB& db, u64 seed) {
    const ReducedModPoly& rmp = db.reduced(level, ctx.p());
    return roots_in_fp2(specialize(rmp, j, ctx), ctx, mix_seed(seed, j));
}

std::vector<RootMultiset> neighbor_batch_serial(std::span<const Fp2> js, const ReducedModPoly& rmp,
                                                const FieldContext& ctx, u64 seed) {
    std::vector<RootMultiset> out(js.size());
    for (size_t i = 0; i < js.size(); ++i)
        out[i] = roots_in_fp2(specialize(rmp, js[i], ctx), ctx, mix_seed(seed, js[i]));
    return out;
}

std::vector<RootMultiset> neighbor_batch(std::span<const Fp2> js, const ReducedModPoly& rmp,
                                         const FieldContext& ctx, u64 seed) {
    std::vector<RootMultiset> out(js.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < static_cast<long>(js.size()); ++i)
        out[i] = roots_in_fp2(specialize(rmp, js[i], ctx), ctx, mix_seed(seed, js[i]));
    return out;
}

u64 supersingular_count_formula(u64 p) {
    u64 eps = 0;
    switch (p % 12) {
        case 1: eps = 0; break;
        case 5:
        case 7: eps = 1; break;
        case 11: eps = 2; break;
        default: fail(errc::composite_modulus, "p must be a prime > 3");
    }
    return p / 12 + eps;
}

std::vector<Fp2> enumerate_supersingular(const FieldContext& ctx, ModPolyDB& db,
                                         const EnumerateOptions& opts) {
    const ReducedModPoly& rmp = db.reduced(2, ctx.p());
    CMSeed start = cm_seed(ctx);
    std::unordered_set<Fp2, Fp2Hash> seen{start.j};
    std::vector<Fp2> frontier{start.j};
    while (!frontier.empty()) {
        auto batches = opts.parallel ? neighbor_batch(frontier, rmp, ctx, opts.seed)
                                     : neighbor_batch_serial(frontier, rmp, ctx, opts.seed);
        std::vector<Fp2> next;
        for (const RootMultiset& rm : batches)
            for (const auto& [r, m] : rm.entries)
                if (seen.insert(r).second) next.push_back(r);
        frontier = std::move(next);
    }
    u64 expected = supersingular_count_formula(ctx.p());
    if (seen.size() != expected)
        fail(errc::count_mismatch, "BFS found " + std::to_string(seen.size()) + " vertices, formula gives " +
                                       std::to_string(expected));
    std::vector<Fp2> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), Fp2Less{});
    return out;
}

bool is_supersingular(const FieldContext& ctx, const Fp2& j, ModPolyDB& db) {
    auto all = enumerate_supersingular(ctx, db);
    return std::binary_search(all.begin(), all.end(), j, Fp2Less{});
}

int IsogenyGraph::index_of(const Fp2& v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v, Fp2Less{});
    if (it == vertices.end() || !(*it == v)) return -1;
    return static_cast<int>(it - vertices.begin());
}

int IsogenyGraph::out_multiplicity(int v) const {
    int t = 0;
    for (const auto& [key, m] : edges)
        if (key.first == v) t += m;
    return t;
}

IsogenyGraph induced_subgraph(std::span<const Fp2> vertex_set, const FieldContext& ctx, int level,
                              ModPolyDB& db, const EnumerateOptions& opts) {
    IsogenyGraph g;
    g.p = ctx.p();
    g.level = level;
    g.def_poly = ctx.def_poly();
    g.vertices.assign(vertex_set.begin(), vertex_set.end());
    std::sort(g.vertices.begin(), g.vertices.end(), Fp2Less{});
    g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());

    const ReducedModPoly& rmp = db.reduced(level, ctx.p());
    auto batches = opts.parallel ? neighbor_batch(g.vertices, rmp, ctx, opts.seed)
                                 : neighbor_batch_serial(g.vertices, rmp, ctx, opts.seed);
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        for (const auto& [r, m] : batches[i].entries) {
            int k = g.index_of(r);
            if (k >= 0) g.edges[{static_cast<int>(i), k}] = m;
        }
    }
    return g;
}

namespace {

void cycle_dfs(const IsogenyGraph& g, int start, int cur, int max_len, std::vector<int>& path,
               std::vector<bool>& on_path, i64 mult_product, std::vector<std::pair<std::vector<int>, i64>>& found) {
    if (static_cast<int>(path.size()) > max_len) return;
    // close the cycle (length >= 2; loops handled separately)
    if (path.size() >= 2) {
        if (int m = g.multiplicity(cur, start); m > 0)
            found.push_back({path, mult_product * m});
    }
    if (static_cast<int>(path.size()) == max_len) return;
    for (int nxt = start + 1; nxt < static_cast<int>(g.vertices.size()); ++nxt) {
        if (on_path[nxt]) continue;
        int m = g.multiplicity(cur, nxt);
        if (m == 0) continue;
        path.push_back(nxt);
        on_path[nxt] = true;
        cycle_dfs(g, start, nxt, max_len, path, on_path, mult_product * m, found);
        on_path[nxt] = false;
        path.pop_back();
    }
}

}  // namespace

std::vector<Cycle> simple_cycles(const IsogenyGraph& g, int max_len) {
    if (g.vertices.size() > 64) fail(errc::unsupported, "cycle enumeration is limited to 64 vertices");
    std::vector<Cycle> out;
    const int n = static_cast<int>(g.vertices.size());
    std::vector<std::pair<std::vector<int>, i64>> found;
    for (int v = 0; v < n; ++v) {
        // loops, repeated per multiplicity
        for (int k = 0; k < g.multiplicity(v, v); ++k) out.push_back({{g.vertices[v]}});
        if (max_len < 2) continue;
        std::vector<int> path{v};
        std::vector<bool> on_path(n, false);
        on_path[v] = true;
        cycle_dfs(g, v, v, max_len, path, on_path, 1, found);
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    for (const auto& [idxs, mult] : found) {
        Cycle c;
        c.vertices.reserve(idxs.size());
        for (int i : idxs) c.vertices.push_back(g.vertices[i]);
        for (i64 k = 0; k < mult; ++k) out.push_back(c);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Cycle& a, const Cycle& b) { return a.vertices.size() < b.vertices.size(); });
    return out;
}

int count_isogenies(const FieldContext& ctx, int L, const Fp2& j1, const Fp2& j2, ModPolyDB& db,
                    u64 seed) {
    return neighbors(ctx, L, j1, db, seed).multiplicity_of(j2);
}

std::string graph_to_dot(const IsogenyGraph& g, const FieldContext& ctx) {
    std::ostringstream os;
    os << "digraph isogeny {\n";
    for (const Fp2& v : g.vertices) os << "  \"" << ctx.render(v) << "\";\n";
    for (const auto& [key, m] : g.edges)
        for (int k = 0; k < m; ++k)
            os << "  \"" << ctx.render(g.vertices[key.first]) << "\" -> \""
               << ctx.render(g.vertices[key.second]) << "\";\n";
    os << "}\n";
    return os.str();
}

std::string graph_to_json(const IsogenyGraph& g, const FieldContext& ctx) {
    nlohmann::ordered_json j;
    j["p"] = g.p;
    j["level"] = g.level;
    j["def_poly"] = {g.def_poly.first, g.def_poly.second};
    auto& verts = j["vertices"] = nlohmann::ordered_json::array();
    for (const Fp2& v : g.vertices) verts.push_back(ctx.render(v));
    auto& edges = j["edges"] = nlohmann::ordered_json::array();
    for (const auto& [key, m] : g.edges) {
        nlohmann::ordered_json e;
        e["from"] = ctx.render(g.vertices[key.first]);
        e["to"] = ctx.render(g.vertices[key.second]);
        e["mult"] = m;
        edges.push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

}  // namespace isocycle
