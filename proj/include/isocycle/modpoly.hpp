#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "isocycle/poly.hpp"

namespace isocycle {

/// Classical modular polynomial Phi_N as loaded from a coefficient file.
/// Coefficients stay decimal strings until reduction; entries are
/// materialized in both (i,j) orientations so asymmetric corruption is
/// representable and detectable by symmetry_check.
struct ModularPolynomial {
    int level = 0;
    std::map<std::pair<int, int>, std::string> entries;

    int degree() const { return level + 1; }
    std::optional<std::string> coefficient(int i, int j) const {
        auto it = entries.find({i, j});
        if (it == entries.end()) return std::nullopt;
        return it->second;
    }
};

/// Build from (i, j, coefficient) triples, validating symmetry conflicts,
/// exponent range, monicity and degree. Shared by the file loader and tests.
ModularPolynomial modpoly_from_entries(int level,
                                       const std::vector<std::tuple<int, int, std::string>>& triples);

/// Parse the `[i,j] c` one-entry-per-line format ('#' starts a comment).
ModularPolynomial load_modpoly(const std::filesystem::path& path, int level);

/// Per-prime reduction of all coefficients (streamed per digit).
struct ReducedModPoly {
    int level = 0;
    u64 p = 0;
    std::vector<std::tuple<int, int, u64>> entries;
};

ReducedModPoly reduce_modpoly(const ModularPolynomial& mp, u64 p);

/// Phi_N(X, j0) over F_{p^2}: monic of degree N+1.
Poly specialize(const ReducedModPoly& rmp, const Fp2& j0, const FieldContext& ctx);
Poly specialize(const ModularPolynomial& mp, const Fp2& j0, const FieldContext& ctx);

/// Full bivariate evaluation.
Fp2 evaluate(const ReducedModPoly& rmp, const Fp2& u, const Fp2& v, const FieldContext& ctx);

/// Random-pair check that evaluation at (u,v) equals evaluation at (v,u).
bool symmetry_check(const ModularPolynomial& mp, const FieldContext& ctx, int trials,
                    u64 seed = kDefaultRootSeed);

/// Directory-backed cache of modular polynomials and their reductions.
/// get()/reduced() mutate the cache; call them before entering parallel
/// regions and hand the returned references to the kernels.
class ModPolyDB {
  public:
    explicit ModPolyDB(std::filesystem::path dir) : dir_(std::move(dir)) {}

    /// CLI flag, then ISOCYCLE_MODPOLY_DIR, then ./data/phi.
    static std::filesystem::path resolve_dir(const std::optional<std::string>& flag);

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path path_for(int level) const;
    bool available(int level) const;
    std::vector<int> available_levels() const;

    const ModularPolynomial& get(int level);
    const ReducedModPoly& reduced(int level, u64 p);

  private:
    std::filesystem::path dir_;
    std::map<int, ModularPolynomial> loaded_;
    std::map<std::pair<int, u64>, ReducedModPoly> reduced_;
};

}  // namespace isocycle
