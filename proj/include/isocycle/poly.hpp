#pragma once

#include <vector>

#include "isocycle/field.hpp"

namespace isocycle {

/// Dense univariate polynomial over F_{p^2}. Coefficient index = degree,
/// trailing zeros trimmed; degree() is -1 exactly for the zero polynomial.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Fp2> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(const Fp2& c) { return Poly(std::vector<Fp2>{c}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Fp2 coeff(size_t i) const { return i < c_.size() ? c_[i] : Fp2{}; }
    const Fp2& lead() const { return c_.back(); }
    const std::vector<Fp2>& coeffs() const { return c_; }

    friend bool operator==(const Poly&, const Poly&) = default;

  private:
    void trim() {
        while (!c_.empty() && c_.back() == Fp2{}) c_.pop_back();
    }
    std::vector<Fp2> c_;
};

Poly poly_add(const Poly& f, const Poly& g, const FieldContext& ctx);
Poly poly_sub(const Poly& f, const Poly& g, const FieldContext& ctx);
Poly poly_mul(const Poly& f, const Poly& g, const FieldContext& ctx);
Poly poly_quot(const Poly& f, const Poly& g, const FieldContext& ctx);
Poly poly_rem(const Poly& f, const Poly& g, const FieldContext& ctx);
/// Monic gcd; gcd(f, 0) = monic(f).
Poly poly_gcd(Poly f, Poly g, const FieldContext& ctx);
Poly poly_monic(const Poly& f, const FieldContext& ctx);
Poly poly_derivative(const Poly& f, const FieldContext& ctx);
Fp2 poly_eval(const Poly& f, const Fp2& x, const FieldContext& ctx);
/// base^e mod m by square-and-multiply.
Poly poly_powmod(const Poly& base, u128 e, const Poly& m, const FieldContext& ctx);

struct RootMultiset {
    std::vector<std::pair<Fp2, int>> entries;  // distinct roots, sorted by Fp2Less

    int total_multiplicity() const {
        int t = 0;
        for (const auto& [r, m] : entries) t += m;
        return t;
    }
    int multiplicity_of(const Fp2& r) const {
        for (const auto& [x, m] : entries)
            if (x == r) return m;
        return 0;
    }
    friend bool operator==(const RootMultiset&, const RootMultiset&) = default;
};

inline constexpr u64 kDefaultRootSeed = 0x150c7c1e0f00d5ULL;

/// All roots of f lying in F_{p^2}, each with exact multiplicity.
/// Deterministic for a fixed seed; different seeds give equal multisets.
RootMultiset roots_in_fp2(const Poly& f, const FieldContext& ctx, u64 seed = kDefaultRootSeed);

}  // namespace isocycle
