#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isocycle/ssgraph.hpp"

namespace isocycle {

enum class Verdict { confirmed, hypotheses_not_met, mismatch };
enum class EllBehavior { split, inert, ramified };
enum class JClass { generic, j1728, j0 };

const char* verdict_name(Verdict v);
const char* ell_behavior_name(EllBehavior b);
const char* j_class_name(JClass c);

struct RunOptions {
    std::optional<Fp2> seed_j;                       // explicit seed override
    std::optional<std::pair<u64, u64>> field_poly;   // (c0, c1) override
    u64 seed = kDefaultRootSeed;
    bool parallel = true;
};

struct VertexObservation {
    Fp2 j;
    int loops = 0;                      // loop entries at this vertex
    std::vector<int> cycle_lengths;     // lengths of cycle entries through it (loops included)
    std::optional<i64> cm_disc;         // set when the vertex is a tabulated CM point
    bool expected_loops = false;        // richer CM with principal L
    bool ok = false;
};

struct PredictionReport {
    u64 p = 0;
    int ell = 0, L = 0;
    i64 d = 0;
    TauKind kind = TauKind::sqrt_minus_d;

    QuadOrder effective_order;          // conductor > 1 when the seed was stepped
    bool stepped = false;
    i64 seed_disc = 0;
    Fp2 seed_j;
    JClass j_class = JClass::generic;
    SplitWitness witness;               // for the effective order
    EllBehavior ell_in_order = EllBehavior::inert;
    i64 bound = 0;                      // ell^2 * L * |disc(effective order)|
    bool bound_ok = false;              // warning only when false
    int predicted_m = 0;

    IsogenyGraph subgraph;
    std::vector<Cycle> cycles;
    std::vector<VertexObservation> vertex_obs;
    Verdict verdict = Verdict::hypotheses_not_met;
    std::vector<std::string> notes;
};

/// The whole pipeline: seed, ell-neighborhood, L-subgraph, cycle census,
/// predicted m from the class-group side, verdict.
PredictionReport construct_cycles(u64 p, int ell, int L, i64 d, TauKind kind, ModPolyDB& db,
                                  const RunOptions& opts = {});

enum class TwoCycleCase { gauss, eisenstein, generic_odd, generic_ell2 };

/// Divisibility conditions forcing 2-cycles, evaluated on sqrt(-d)-coordinates.
bool two_cycle_condition(TwoCycleCase c, i64 ell, const SplitWitness& w);

struct PairCount {
    Fp2 a, b;
    int count_ab = 0, count_ba = 0;
};

struct PairCountReport {
    u64 p = 0;
    int ell = 0, L = 0;
    i64 d = 0;
    TauKind kind = TauKind::sqrt_minus_d;
    QuadOrder effective_order;
    bool stepped = false;
    Fp2 seed_j;
    SplitWitness witness;
    bool two_cycle_holds = false;
    std::optional<TwoCycleCase> two_cycle_case;
    i64 bound = 0;                      // D * ell^2 * L
    bool above_bound = false;
    std::vector<PairCount> pairs;       // mutually L-connected generic neighbor pairs
    Verdict verdict = Verdict::hypotheses_not_met;
    std::vector<std::string> notes;
};

/// Counts the L-isogenies inside each conjugate neighbor pair and compares
/// with the two-isogeny guarantee above the bound.
PairCountReport conjugate_pair_check(u64 p, int ell, int L, i64 d, TauKind kind, ModPolyDB& db,
                                     const RunOptions& opts = {});

struct SpecialNeighborCounts {
    int neighbor_count = 0;
    int multiplicity = 0;     // common edge multiplicity
    int expected_count = 0;
    int expected_multiplicity = 0;
    bool ok = false;
};

/// Neighbor counts at 1728 (which=1728) or 0 (which=0) against the closed
/// forms, under the congruence and size hypotheses that make them exact.
SpecialNeighborCounts special_neighbor_counts(u64 p, int ell, int which, ModPolyDB& db,
                                              const RunOptions& opts = {});

std::string report_to_json(const PredictionReport& r, const FieldContext& ctx);
std::string report_to_json(const PairCountReport& r, const FieldContext& ctx);

}  // namespace isocycle
