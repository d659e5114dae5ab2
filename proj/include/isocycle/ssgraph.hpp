#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "isocycle/modpoly.hpp"
#include "isocycle/poly.hpp"
#include "isocycle/quadorder.hpp"

namespace isocycle {

struct CMSeed {
    i64 disc = 0;
    Fp2 j;
};

/// Integer j-invariant for the class-number-one discriminants (nullopt for
/// anything else, including -44 which is stored as a class polynomial).
std::optional<i64> tabulated_cm_j(i64 disc);

/// Hilbert class polynomial coefficients, ascending degree. Only -44.
const std::vector<i64>& hilbert_class_poly(i64 disc);

/// Seed-table discriminants in search order.
std::span<const i64> cm_seed_search_order();

/// Reduction of the CM point of `disc` mod p: the tabulated integer j, or
/// the smallest F_p root of the stored class polynomial. nullopt when the
/// disc is not tabulated or the class polynomial has no F_p root.
std::optional<Fp2> cm_point_mod_p(i64 disc, const FieldContext& ctx);

/// First tabulated discriminant inert at p, with its reduced j-invariant.
CMSeed cm_seed(const FieldContext& ctx);

/// CM point for one specific discriminant; requires kronecker(disc,p) = -1.
Fp2 seed_for_disc(i64 disc, const FieldContext& ctx);

/// Roots of Phi_level(X, j) with multiplicity; total = level + 1.
RootMultiset neighbors(const FieldContext& ctx, int level, const Fp2& j, ModPolyDB& db,
                       u64 seed = kDefaultRootSeed);

/// Neighbor multisets for a batch of vertices. The parallel kernel and the
/// serial reference compute identical output (per-vertex seeds are derived
/// from the vertex coordinates, not the schedule).
std::vector<RootMultiset> neighbor_batch(std::span<const Fp2> js, const ReducedModPoly& rmp,
                                         const FieldContext& ctx, u64 seed);
std::vector<RootMultiset> neighbor_batch_serial(std::span<const Fp2> js, const ReducedModPoly& rmp,
                                                const FieldContext& ctx, u64 seed);

u64 supersingular_count_formula(u64 p);

struct EnumerateOptions {
    bool parallel = true;
    u64 seed = kDefaultRootSeed;
};

/// All supersingular j-invariants: BFS closure of cm_seed(p) in the
/// 2-isogeny graph, checked against the count formula.
std::vector<Fp2> enumerate_supersingular(const FieldContext& ctx, ModPolyDB& db,
                                         const EnumerateOptions& opts = {});

bool is_supersingular(const FieldContext& ctx, const Fp2& j, ModPolyDB& db);

/// Directed multigraph on j-invariants; vertices sorted by Fp2Less and
/// edges keyed by vertex index with multiplicities.
struct IsogenyGraph {
    u64 p = 0;
    int level = 0;
    std::pair<u64, u64> def_poly;
    std::vector<Fp2> vertices;
    std::map<std::pair<int, int>, int> edges;

    int index_of(const Fp2& v) const;
    int multiplicity(int from, int to) const {
        auto it = edges.find({from, to});
        return it == edges.end() ? 0 : it->second;
    }
    int out_multiplicity(int v) const;
};

IsogenyGraph induced_subgraph(std::span<const Fp2> vertex_set, const FieldContext& ctx, int level,
                              ModPolyDB& db, const EnumerateOptions& opts = {});

/// Simple directed cycle as an ordered vertex list, canonically rotated to
/// start at the least vertex. Loops are length 1.
struct Cycle {
    std::vector<Fp2> vertices;
    friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// All directed simple cycles up to rotation (orientation preserved, so a
/// cycle and its reverse are distinct), with one entry per choice of
/// parallel edges: a loop of multiplicity k appears k times.
std::vector<Cycle> simple_cycles(const IsogenyGraph& g, int max_len);

/// Multiplicity of j2 as a root of Phi_L(X, j1).
int count_isogenies(const FieldContext& ctx, int L, const Fp2& j1, const Fp2& j2, ModPolyDB& db,
                    u64 seed = kDefaultRootSeed);

std::string graph_to_dot(const IsogenyGraph& g, const FieldContext& ctx);
std::string graph_to_json(const IsogenyGraph& g, const FieldContext& ctx);

}  // namespace isocycle
