#include "isocycle/field.hpp"

#include <array>
#include <cctype>

#include "isocycle/errors.hpp"

namespace isocycle {

u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>((u128(a) * b) % m); }

u64 powmod_u64(u64 a, u128 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invmod_u64(u64 a, u64 m) {
    // extended Euclid; m need not be prime but gcd(a, m) must be 1
    i64 t = 0, nt = 1;
    u64 r = m, nr = a % m;
    while (nr != 0) {
        u64 q = r / nr;
        i64 tmp = t - static_cast<i64>(q) * nt;
        t = nt;
        nt = tmp;
        u64 rr = r - q * nr;
        r = nr;
        nr = rr;
    }
    if (r != 1) fail(errc::division_by_zero, "element not invertible");
    return t < 0 ? static_cast<u64>(t + static_cast<i64>(m)) : static_cast<u64>(t);
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // deterministic Miller-Rabin base set for 64-bit inputs
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 reduce_integer_string(std::string_view s, u64 p) {
    size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        negative = s[i] == '-';
        ++i;
    }
    if (i == s.size()) fail(errc::malformed_literal, "empty integer literal");
    u64 r = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            fail(errc::malformed_literal, "unexpected character '" + std::string(1, s[i]) + "'");
        r = static_cast<u64>((u128(r) * 10 + static_cast<u64>(s[i] - '0')) % p);
    }
    return negative && r != 0 ? p - r : r;
}

namespace {

constexpr u64 kModulusCap = u64(1) << 61;

bool has_root_in_fp(u64 c0, u64 c1, u64 p) {
    // b^2 + c1 b + c0 splits iff disc = c1^2 - 4 c0 is a square mod p
    u64 disc = (mulmod_u64(c1, c1, p) + 4 * (p - c0 % p)) % p;
    if (disc == 0) return true;
    return powmod_u64(disc, (p - 1) / 2, p) == 1;
}

}  // namespace

FieldContext::FieldContext(u64 p, u64 c0, u64 c1) : p_(p), c0_(c0 % (p ? p : 1)), c1_(c1 % (p ? p : 1)) {
    if (p <= 3 || !is_prime_u64(p))
        fail(errc::composite_modulus, "modulus " + std::to_string(p) + " is not a prime > 3");
    if (p >= kModulusCap) fail(errc::composite_modulus, "modulus exceeds the 2^61 cap");
    if (has_root_in_fp(c0_, c1_, p))
        fail(errc::reducible_polynomial, "defining polynomial has a root mod p");
}

FieldContext FieldContext::with_default_poly(u64 p) {
    if (p <= 3 || !is_prime_u64(p))
        fail(errc::composite_modulus, "modulus " + std::to_string(p) + " is not a prime > 3");
    if (p % 3 == 2) return FieldContext(p, 1, 1);
    for (u64 n = 2;; ++n) {
        if (powmod_u64(n, (p - 1) / 2, p) == p - 1) return FieldContext(p, p - n, 0);
    }
}

u64 FieldContext::addp(u64 x, u64 y) const {
    u64 s = x + y;
    if (s >= p_) s -= p_;
    return s;
}

u64 FieldContext::subp(u64 x, u64 y) const { return x >= y ? x - y : x + p_ - y; }

u64 FieldContext::invp(u64 x) const {
    if (x % p_ == 0) fail(errc::division_by_zero, "inverse of zero");
    return invmod_u64(x % p_, p_);
}

Fp2 FieldContext::from_int(i64 v) const {
    i64 m = v % static_cast<i64>(p_);
    if (m < 0) m += static_cast<i64>(p_);
    return {static_cast<u64>(m), 0};
}

Fp2 FieldContext::add(const Fp2& x, const Fp2& y) const { return {addp(x.a0, y.a0), addp(x.a1, y.a1)}; }

Fp2 FieldContext::sub(const Fp2& x, const Fp2& y) const { return {subp(x.a0, y.a0), subp(x.a1, y.a1)}; }

Fp2 FieldContext::neg(const Fp2& x) const { return {negp(x.a0), negp(x.a1)}; }

Fp2 FieldContext::mul(const Fp2& x, const Fp2& y) const {
    // (x0 + x1 b)(y0 + y1 b) with b^2 = -c1 b - c0
    u64 t00 = mulp(x.a0, y.a0);
    u64 t11 = mulp(x.a1, y.a1);
    u64 cross = addp(mulp(x.a0, y.a1), mulp(x.a1, y.a0));
    u64 r0 = subp(t00, mulp(c0_, t11));
    u64 r1 = subp(cross, mulp(c1_, t11));
    return {r0, r1};
}

Fp2 FieldContext::inv(const Fp2& x) const {
    if (is_zero(x)) fail(errc::division_by_zero, "inverse of zero");
    // conjugate of b is -c1 - b; norm = x * conj(x) lies in F_p
    u64 n = addp(subp(mulp(x.a0, x.a0), mulp(c1_, mulp(x.a0, x.a1))), mulp(c0_, mulp(x.a1, x.a1)));
    u64 ninv = invp(n);
    Fp2 conj{subp(x.a0, mulp(c1_, x.a1)), negp(x.a1)};
    return {mulp(conj.a0, ninv), mulp(conj.a1, ninv)};
}

Fp2 FieldContext::pow(Fp2 x, u128 e) const {
    Fp2 r = one();
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

Fp2 FieldContext::frobenius(const Fp2& x) const {
    // x^p; b maps to the conjugate root -c1 - b
    return {subp(x.a0, mulp(c1_, x.a1)), negp(x.a1)};
}

std::string FieldContext::render(const Fp2& x) const {
    if (x.a1 == 0) return std::to_string(x.a0);
    return std::to_string(x.a1) + "b+" + std::to_string(x.a0);
}

Fp2 FieldContext::parse(std::string_view s) const {
    size_t bpos = s.find('b');
    if (bpos == std::string_view::npos) return {reduce_integer_string(s, p_), 0};
    u64 a1 = reduce_integer_string(s.substr(0, bpos), p_);
    std::string_view rest = s.substr(bpos + 1);
    if (rest.empty()) return {0, a1};
    if (rest[0] != '+' && rest[0] != '-')
        fail(errc::malformed_literal, "expected sign after 'b' in \"" + std::string(s) + "\"");
    return {reduce_integer_string(rest, p_), a1};
}

const char* errc_name(errc c) {
    switch (c) {
        case errc::composite_modulus: return "CompositeModulus";
        case errc::reducible_polynomial: return "ReduciblePolynomial";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::malformed_literal: return "MalformedLiteral";
        case errc::missing_file: return "MissingFile";
        case errc::parse_error: return "ParseError";
        case errc::degree_mismatch: return "DegreeMismatch";
        case errc::invalid_unit_class: return "InvalidUnitClass";
        case errc::not_positive_definite: return "NotPositiveDefinite";
        case errc::discriminant_mismatch: return "DiscriminantMismatch";
        case errc::invalid_discriminant: return "InvalidDiscriminant";
        case errc::not_split: return "NotSplit";
        case errc::seed_not_found: return "SeedNotFound";
        case errc::count_mismatch: return "CountMismatch";
        case errc::hypothesis_failure: return "HypothesisFailure";
        case errc::case_mismatch: return "CaseMismatch";
        case errc::unsupported: return "Unsupported";
    }
    return "UnknownError";
}

}  // namespace isocycle
