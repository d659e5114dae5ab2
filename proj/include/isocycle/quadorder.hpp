#pragma once

#include <optional>

#include "isocycle/field.hpp"

namespace isocycle {

enum class TauKind { sqrt_minus_d, half };

/// Imaginary quadratic order Z[f*tau] with tau = sqrt(-d) or (1+sqrt(-d))/2.
/// conductor 1 is Z[tau] itself; conductor ell is Z[ell tau].
struct QuadOrder {
    i64 d = 1;
    TauKind kind = TauKind::sqrt_minus_d;
    i64 conductor = 1;

    i64 disc0() const { return kind == TauKind::sqrt_minus_d ? -4 * d : -d; }
    i64 disc() const { return conductor * conductor * disc0(); }
    /// trace and norm of the generator f*tau
    i64 trace() const { return kind == TauKind::half ? conductor : 0; }
    i64 norm() const {
        return kind == TauKind::half ? conductor * conductor * (1 + d) / 4 : conductor * conductor * d;
    }
    QuadOrder with_conductor(i64 f) const { return {d, kind, f}; }

    static QuadOrder make(i64 d, TauKind kind, i64 conductor = 1);
};

/// Kronecker symbol (a/n) with the standard conventions for n <= 0 and even n.
int kronecker(i64 a, i64 n);

/// Tonelli-Shanks; q an odd prime, returns a root of x^2 = n when one exists.
std::optional<i64> sqrt_mod_prime(i64 n, i64 q);

/// a + b * (f*tau) of norm L, i.e. a principal-splitting witness for L in
/// the order. Normalized to b > 0 and the larger of the two conjugate
/// a-values (a > 0 in every non-degenerate case).
struct SplitWitness {
    i64 a = 0;
    i64 b = 0;
    i64 L = 0;
    friend bool operator==(const SplitWitness&, const SplitWitness&) = default;
};

/// Cornacchia: a witness iff L splits into two principal ideals in the
/// order. Ramified L (kronecker 0) reports nullopt.
std::optional<SplitWitness> cornacchia(const QuadOrder& order, i64 L);

enum class UnitClass { generic, gauss, eisenstein };

/// Least m such that some unit multiple of (a + b f tau)^m lies in
/// Z[ell * f * tau], computed in (Z/ell)[f tau].
int order_m(const SplitWitness& w, const QuadOrder& order, i64 ell, UnitClass uc);

/// Positive definite integral binary quadratic form A x^2 + B xy + C y^2.
struct BQForm {
    i64 A = 1, B = 0, C = 0;
    i64 disc() const { return B * B - 4 * A * C; }
    friend bool operator==(const BQForm&, const BQForm&) = default;
};

BQForm principal_form(i64 disc);
BQForm form_inverse(const BQForm& f);
BQForm reduce_form(BQForm f);
/// Gauss composition (via ideal multiplication), reduced result.
BQForm compose(const BQForm& f, const BQForm& g);

/// Number of reduced primitive forms of the given discriminant.
i64 class_number(i64 disc);

/// h'/h for the conductor-ell extension of a conductor-1 order:
/// (ell - (disc0/ell)) / [O^* : O'^*].
i64 class_ratio(const QuadOrder& order, i64 ell);

/// Order of the class of a prime ideal above L in the form class group of
/// the order's discriminant. The order is expected to carry conductor ell.
int form_order_of_L(const QuadOrder& order, i64 L);

}  // namespace isocycle
