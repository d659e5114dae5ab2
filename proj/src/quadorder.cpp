#include "isocycle/quadorder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "isocycle/errors.hpp"

namespace isocycle {

QuadOrder QuadOrder::make(i64 d, TauKind kind, i64 conductor) {
    if (d <= 0) fail(errc::invalid_discriminant, "d must be positive");
    if (kind == TauKind::half && d % 4 != 3)
        fail(errc::invalid_discriminant, "tau = (1+sqrt(-d))/2 requires d = 3 mod 4");
    if (conductor < 1) fail(errc::invalid_discriminant, "conductor must be positive");
    return {d, kind, conductor};
}

int kronecker(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    int t = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++t;
    }
    if (t) {
        if (a % 2 == 0) return 0;
        i64 amod = ((a % 8) + 8) % 8;
        if (t % 2 == 1 && (amod == 3 || amod == 5)) sign = -sign;
    }
    a = ((a % n) + n) % n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 nmod = n % 8;
            if (nmod == 3 || nmod == 5) sign = -sign;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) sign = -sign;
        a %= n;
    }
    return n == 1 ? sign : 0;
}

std::optional<i64> sqrt_mod_prime(i64 n, i64 q) {
    n = ((n % q) + q) % q;
    if (n == 0) return 0;
    if (q == 2) return n % 2;
    if (powmod_u64(static_cast<u64>(n), static_cast<u64>((q - 1) / 2), static_cast<u64>(q)) != 1)
        return std::nullopt;
    if (q % 4 == 3)
        return static_cast<i64>(powmod_u64(static_cast<u64>(n), static_cast<u64>((q + 1) / 4),
                                           static_cast<u64>(q)));
    // Tonelli-Shanks
    i64 s = 0, d = q - 1;
    while (d % 2 == 0) d /= 2, ++s;
    i64 z = 2;
    while (kronecker(z, q) != -1) ++z;
    u64 qq = static_cast<u64>(q);
    u64 M = static_cast<u64>(s);
    u64 c = powmod_u64(static_cast<u64>(z), static_cast<u64>(d), qq);
    u64 t = powmod_u64(static_cast<u64>(n), static_cast<u64>(d), qq);
    u64 r = powmod_u64(static_cast<u64>(n), static_cast<u64>((d + 1) / 2), qq);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod_u64(tt, tt, qq);
            ++i;
        }
        u64 b = c;
        for (u64 k = 0; k + i + 1 < M; ++k) b = mulmod_u64(b, b, qq);
        M = i;
        c = mulmod_u64(b, b, qq);
        t = mulmod_u64(t, c, qq);
        r = mulmod_u64(r, b, qq);
    }
    return static_cast<i64>(r);
}

namespace {

i64 isqrt_i64(i64 n) {
    if (n < 0) return -1;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

std::optional<SplitWitness> cornacchia(const QuadOrder& order, i64 L) {
    if (L < 2 || !is_prime_u64(static_cast<u64>(L))) fail(errc::not_split, "L must be prime");
    const i64 disc = order.disc();
    const i64 absD = -disc;
    if (kronecker(disc, L) != 1) return std::nullopt;

    i64 u = 0, v = 0;
    if (L == 2) {
        // 4L = 8: u^2 + |D| v^2 = 8 with v = 1
        i64 t = 8 - absD;
        i64 r = isqrt_i64(t);
        if (t < 0 || r * r != t) return std::nullopt;
        u = r;
        v = 1;
    } else {
        // modified Cornacchia for u^2 + |D| v^2 = 4L
        auto x0 = sqrt_mod_prime(disc, L);
        if (!x0) return std::nullopt;
        i64 x = *x0;
        if (((x ^ disc) & 1) != 0) x = L - x;  // match parity of disc
        i64 a = 2 * L, b = x;
        i64 limit = isqrt_i64(4 * L);
        while (b > limit) {
            i64 r = a % b;
            a = b;
            b = r;
        }
        i64 t = 4 * L - b * b;
        if (t % absD != 0) return std::nullopt;
        i64 vv = t / absD;
        i64 r = isqrt_i64(vv);
        if (r * r != vv) return std::nullopt;
        u = b;
        v = r;
    }
    if (v == 0) return std::nullopt;
    // element (u + v sqrt(disc))/2 = a + v * (f tau), a = (u - v*trace)/2
    i64 tr = order.trace();
    i64 a = (u - v * tr) / 2;
    // normalize: b > 0, then prefer the conjugate-negated variant if a < 0
    i64 aa = a, bb = v;
    if (bb < 0) {
        aa = -aa;
        bb = -bb;
    }
    if (aa < 0) aa = -aa - bb * tr;
    return SplitWitness{aa, bb, L};
}

namespace {

void validate_unit_class(const QuadOrder& order, UnitClass uc) {
    const i64 disc = order.disc();
    switch (uc) {
        case UnitClass::gauss:
            if (disc != -4) fail(errc::invalid_unit_class, "gauss units require Z[i]");
            break;
        case UnitClass::eisenstein:
            if (disc != -3) fail(errc::invalid_unit_class, "eisenstein units require Z[(1+sqrt(-3))/2]");
            break;
        case UnitClass::generic:
            if (disc == -4 || disc == -3)
                fail(errc::invalid_unit_class, "unit group of this order is larger than {1,-1}");
            break;
    }
}

}  // namespace

int order_m(const SplitWitness& w, const QuadOrder& order, i64 ell, UnitClass uc) {
    validate_unit_class(order, uc);
    if (ell < 2 || !is_prime_u64(static_cast<u64>(ell))) fail(errc::not_split, "ell must be prime");
    if (w.L % ell == 0) fail(errc::not_split, "ell divides L");
    const i64 tr = ((order.trace() % ell) + ell) % ell;
    const i64 nm = ((order.norm() % ell) + ell) % ell;
    const i64 a = ((w.a % ell) + ell) % ell;
    const i64 b = ((w.b % ell) + ell) % ell;
    auto hits = [&](i64 x, i64 y) {
        switch (uc) {
            case UnitClass::gauss: return y == 0 || x == 0;
            case UnitClass::eisenstein: return y == 0 || x == 0 || (x + y) % ell == 0;
            case UnitClass::generic: return y == 0;
        }
        return false;
    };
    i64 x = a, y = b;
    const int cap = static_cast<int>(8 * (ell + 1) * std::max<i64>(-order.disc0(), 4)) + 16;
    for (int k = 1; k <= cap; ++k) {
        if (hits(x, y)) return k;
        // (x + y t)(a + b t) with t^2 = tr*t - nm
        i64 nx = (x * a % ell - y * b % ell * nm % ell + ell * ell) % ell;
        i64 ny = (x * b % ell + y * a % ell + y * b % ell * tr % ell) % ell;
        x = nx;
        y = ny;
    }
    throw std::logic_error("order_m did not terminate within the class-group bound");
}

BQForm principal_form(i64 disc) {
    if (disc >= 0 || (((disc % 4) + 4) % 4 != 0 && ((disc % 4) + 4) % 4 != 1))
        fail(errc::invalid_discriminant, "discriminant must be negative and 0 or 1 mod 4");
    i64 B = ((disc % 2) + 2) % 2;
    return {1, B, (B * B - disc) / 4};
}

BQForm form_inverse(const BQForm& f) { return reduce_form({f.A, -f.B, f.C}); }

BQForm reduce_form(BQForm f) {
    if (f.A <= 0 || f.disc() >= 0) fail(errc::not_positive_definite, "form is not positive definite");
    const i64 D = f.disc();
    for (;;) {
        if (f.B > f.A || f.B <= -f.A) {
            // translate B into (-A, A]
            i64 twoA = 2 * f.A;
            i64 r = ((f.B % twoA) + twoA) % twoA;  // [0, 2A)
            if (r > f.A) r -= twoA;
            f.B = r;
            f.C = (f.B * f.B - D) / (4 * f.A);
        }
        if (f.A > f.C) {
            f = {f.C, -f.B, f.A};
            continue;
        }
        break;
    }
    if (f.A == f.C && f.B < 0) f.B = -f.B;
    return f;
}

namespace {

i64 gcd_i64(i64 a, i64 b) { return std::gcd(a, b); }

// extended gcd: g = ax + by
i64 xgcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    i64 x1, y1;
    i64 g = xgcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

}  // namespace

BQForm compose(const BQForm& f1, const BQForm& f2) {
    if (f1.disc() != f2.disc()) fail(errc::discriminant_mismatch, "composing forms of unequal discriminant");
    const i64 D = f1.disc();
    // ideal bases [A, t + w] with w = (D + sqrt D)/2, t = -(B + D)/2;
    // w^2 = D w - D(D-1)/4
    const i64 q = D * (D - 1) / 4;
    const i64 t1 = -(f1.B + D) / 2, t2 = -(f2.B + D) / 2;
    struct Gen {
        i64 x, y;
    };
    const Gen gens[4] = {{f1.A * f2.A, 0},
                         {f1.A * t2, f1.A},
                         {f2.A * t1, f2.A},
                         {t1 * t2 - q, t1 + t2 + D}};
    // 2-dim HNF: basis [(n, 0), (s, m)]
    i64 n = 0, s = 0, m = 0;
    for (const Gen& g : gens) {
        if (g.y == 0) {
            n = gcd_i64(n, g.x);
            continue;
        }
        if (m == 0) {
            s = g.x;
            m = g.y;
            continue;
        }
        i64 u, v;
        i64 g2 = xgcd(m, g.y, u, v);
        i64 elim = (m / g2) * g.x - (g.y / g2) * s;  // combination with zero w-part
        n = gcd_i64(n, elim);
        s = u * s + v * g.x;
        m = g2;
    }
    if (m < 0) {
        m = -m;
        s = -s;
    }
    if (n < 0) n = -n;
    if (n == 0 || m == 0) throw std::logic_error("degenerate ideal product");
    s %= n;
    if (s < 0) s += n;
    if (n % m != 0 || s % m != 0) throw std::logic_error("ideal product is not m * (proper ideal)");
    const i64 A3 = n / m, t3 = s / m;
    i64 B3 = -(2 * t3 + D);
    if ((B3 * B3 - D) % (4 * A3) != 0) throw std::logic_error("composed form has broken discriminant");
    return reduce_form({A3, B3, (B3 * B3 - D) / (4 * A3)});
}

i64 class_number(i64 disc) {
    if (disc >= 0 || (((disc % 4) + 4) % 4 != 0 && ((disc % 4) + 4) % 4 != 1))
        fail(errc::invalid_discriminant, "discriminant must be negative and 0 or 1 mod 4");
    i64 count = 0;
    for (i64 A = 1; 3 * A * A <= -disc; ++A) {
        for (i64 B = -A + 1; B <= A; ++B) {
            if ((B * B - disc) % (4 * A) != 0) continue;
            i64 C = (B * B - disc) / (4 * A);
            if (C < A) continue;
            if (A == C && B < 0) continue;
            if (std::gcd(std::gcd(A, B < 0 ? -B : B), C) != 1) continue;
            ++count;
        }
    }
    return count;
}

i64 class_ratio(const QuadOrder& order, i64 ell) {
    if (order.conductor != 1) fail(errc::unsupported, "class_ratio expects a conductor-1 order");
    if (ell < 2 || !is_prime_u64(static_cast<u64>(ell))) fail(errc::not_split, "ell must be prime");
    const i64 disc = order.disc0();
    const int chi = kronecker(disc, ell);
    const i64 unit_index = disc == -4 ? 2 : disc == -3 ? 3 : 1;
    const i64 num = ell - chi;
    if (num % unit_index != 0) throw std::logic_error("class-number ratio is not integral");
    return num / unit_index;
}

int form_order_of_L(const QuadOrder& order, i64 L) {
    if (L < 2 || !is_prime_u64(static_cast<u64>(L))) fail(errc::not_split, "L must be prime");
    const i64 disc = order.disc();
    if (disc % L == 0) fail(errc::not_split, "L divides the discriminant");
    i64 B = -1;
    if (L == 2) {
        for (i64 c = 0; c < 4; ++c)
            if ((c * c - disc) % 8 == 0) {
                B = c;
                break;
            }
        if (B < 0) fail(errc::not_split, "no square root of the discriminant mod 8");
    } else {
        auto r = sqrt_mod_prime(disc, L);
        if (!r) fail(errc::not_split, "discriminant is not a square mod L");
        B = *r;
        if (((B ^ disc) & 1) != 0) B = L - B;  // fix parity so B^2 = disc mod 4L
    }
    const BQForm base = reduce_form({L, B, (B * B - disc) / (4 * L)});
    const BQForm id = principal_form(disc);
    BQForm acc = base;
    for (int k = 1; k <= 4 * (-disc); ++k) {
        if (acc == id) return k;
        acc = compose(acc, base);
    }
    throw std::logic_error("form order exceeds the class-number bound");
}

}  // namespace isocycle
