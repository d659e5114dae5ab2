#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace isocycle {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

/// Element of F_{p^2} in coordinates a0 + a1*b for the context's generator b.
struct Fp2 {
    u64 a0 = 0;
    u64 a1 = 0;
    friend bool operator==(const Fp2&, const Fp2&) = default;
};

/// Total order on coordinates (a1 major, a0 minor); fixes vertex order in
/// graphs, reports and cycle canonicalization.
struct Fp2Less {
    bool operator()(const Fp2& x, const Fp2& y) const {
        return x.a1 != y.a1 ? x.a1 < y.a1 : x.a0 < y.a0;
    }
};

bool is_prime_u64(u64 n);
u64 mulmod_u64(u64 a, u64 b, u64 m);
u64 powmod_u64(u64 a, u128 e, u64 m);
u64 invmod_u64(u64 a, u64 m);

/// Reduce a signed decimal literal mod p by per-digit folding.
/// Throws malformed_literal on anything that is not an optional sign
/// followed by one or more digits.
u64 reduce_integer_string(std::string_view s, u64 p);

/// F_{p^2} = F_p(b) with a caller-chosen defining polynomial
/// b^2 + c1*b + c0 = 0. Immutable after construction; all operations are
/// pure, so a context can be shared freely across threads.
class FieldContext {
  public:
    FieldContext(u64 p, u64 c0, u64 c1);

    /// b^2 - n for the least quadratic non-residue n, except b^2 + b + 1
    /// when p = 2 mod 3.
    static FieldContext with_default_poly(u64 p);

    u64 p() const { return p_; }
    std::pair<u64, u64> def_poly() const { return {c0_, c1_}; }

    // base-field helpers
    u64 addp(u64 x, u64 y) const;
    u64 subp(u64 x, u64 y) const;
    u64 mulp(u64 x, u64 y) const { return mulmod_u64(x, y, p_); }
    u64 negp(u64 x) const { return x == 0 ? 0 : p_ - x; }
    u64 invp(u64 x) const;

    Fp2 from_int(i64 v) const;
    Fp2 from_parts(u64 a0, u64 a1) const { return {a0 % p_, a1 % p_}; }
    Fp2 zero() const { return {0, 0}; }
    Fp2 one() const { return {1, 0}; }
    Fp2 beta() const { return {0, 1}; }

    bool is_zero(const Fp2& x) const { return x.a0 == 0 && x.a1 == 0; }
    bool in_base_field(const Fp2& x) const { return x.a1 == 0; }

    Fp2 add(const Fp2& x, const Fp2& y) const;
    Fp2 sub(const Fp2& x, const Fp2& y) const;
    Fp2 neg(const Fp2& x) const;
    Fp2 mul(const Fp2& x, const Fp2& y) const;
    Fp2 inv(const Fp2& x) const;
    Fp2 pow(Fp2 x, u128 e) const;
    Fp2 frobenius(const Fp2& x) const;

    /// "a1b+a0" with the literal letter b when a1 != 0, bare decimal
    /// otherwise, e.g. "2591b+1415".
    std::string render(const Fp2& x) const;
    Fp2 parse(std::string_view s) const;

  private:
    u64 p_;
    u64 c0_, c1_;  // b^2 = -c1*b - c0
};

}  // namespace isocycle
