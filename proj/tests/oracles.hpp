#pragma once

// Independent reference computations used by the tests. Nothing here calls into the library's
// own versions of the same quantity.

#include <cmath>
#include <numeric>
#include <vector>

#include <gmpxx.h>

#include "hmf/quadfield.hpp"

namespace oracle {

using hmf::i64;

inline mpz_class ipow(long b, unsigned e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(std::labs(b)), e);
    return (b < 0 && e % 2) ? mpz_class(-r) : r;
}

// Bernoulli numbers by the defining recursion sum_{j<=n} binom(n+1, j) B_j = 0
inline std::vector<mpq_class> bernoulli(int n) {
    std::vector<mpq_class> B(n + 1);
    B[0] = 1;
    for (int m = 1; m <= n; ++m) {
        mpq_class s = 0;
        mpz_class c = 1;  // binom(m+1, j)
        for (int j = 0; j < m; ++j) {
            s += mpq_class(c) * B[j];
            c = c * (m + 1 - j) / (j + 1);
        }
        B[m] = -s / mpq_class(m + 1);
    }
    return B;
}

inline mpq_class bernoulli_poly(int m, const mpq_class& x) {
    auto B = bernoulli(m);
    mpq_class s = 0, xp = 1;
    std::vector<mpq_class> pw(m + 1);
    for (int j = 0; j <= m; ++j) {
        pw[j] = xp;
        xp *= x;
    }
    mpz_class c = 1;
    for (int j = 0; j <= m; ++j) {
        s += mpq_class(c) * B[j] * pw[m - j];
        c = c * (m - j) / (j + 1);
    }
    return s;
}

// Kronecker symbol (D / n) for a fundamental discriminant, by the quadratic character's definition
inline int chi(i64 D, i64 n) {
    n %= D;
    if (n < 0) n += D;
    if (std::gcd(n, D) != 1) return 0;
    int r = 1;
    i64 m = n;
    for (i64 p = 2; m > 1; ++p) {
        while (m % p == 0) {
            m /= p;
            // (D/p) for odd p by Euler's criterion, for p = 2 by D mod 8
            int s;
            if (p == 2) {
                s = (D % 8 == 1 || D % 8 == 7) ? 1 : -1;
            } else {
                mpz_class e, dd(static_cast<long>(D % p + p) % p), pp(static_cast<long>(p));
                mpz_powm_ui(e.get_mpz_t(), dd.get_mpz_t(), static_cast<unsigned long>((p - 1) / 2), pp.get_mpz_t());
                s = e == 1 ? 1 : -1;
            }
            r *= s;
        }
    }
    return r;
}

// zeta_F(1-m) = zeta(1-m) L(1-m, chi_D) = (B_m / m) * (B_{m,chi} / m) with the generalized
// Bernoulli number B_{m,chi} = D^(m-1) sum_{a=1}^{D} chi(a) B_m(a / D)
inline mpq_class zeta_neg(i64 D, int m) {
    auto B = bernoulli(m);
    mpq_class g = 0;
    for (i64 a = 1; a <= D; ++a) {
        int c = chi(D, a);
        if (c) g += c * bernoulli_poly(m, mpq_class(static_cast<long>(a), static_cast<long>(D)));
    }
    g *= mpq_class(ipow(D, static_cast<unsigned>(m - 1)));
    return (B[m] / m) * (g / m);
}

// every integral ideal as an HNF {a, b + c w} with a * c = n: enumerate c | a, 0 <= b < a, and keep
// the lattices closed under multiplication by w
inline std::vector<hmf::IdealHNF> ideals_of_norm(const hmf::FieldContext& F, i64 n) {
    std::vector<hmf::IdealHNF> out;
    for (i64 c = 1; c <= n; ++c) {
        if (n % c) continue;
        i64 a = n / c;
        if (a % c) continue;
        for (i64 b = 0; b < a; b += c) {
            hmf::IdealHNF I{a, b, c};
            // a*w and (b + c w) * w must lie in the lattice
            auto in = [&](const hmf::QuadInt& x) {
                if (x.b % c) return false;
                i64 t = x.b / c;
                return (x.a - t * b) % a == 0;
            };
            hmf::QuadInt w{0, 1};
            if (in(F.mul(hmf::QuadInt{a, 0}, w)) && in(F.mul(hmf::QuadInt{b, c}, w))) out.push_back(I);
        }
    }
    return out;
}

inline bool contains(const hmf::IdealHNF& I, const hmf::QuadInt& x) {
    if (x.b % I.c) return false;
    return (x.a - (x.b / I.c) * I.b) % I.a == 0;
}

// sum of N(b)^r over ideals b containing the principal ideal (x)
inline mpz_class sigma(const hmf::FieldContext& F, const hmf::QuadInt& x, unsigned r) {
    i64 n = std::llabs(F.norm(x));
    mpz_class s = 0;
    for (i64 d = 1; d <= n; ++d) {
        if (n % d) continue;
        for (const auto& I : ideals_of_norm(F, d)) {
            // (x) subset I  iff  x and x*w in I
            if (contains(I, x) && contains(I, F.mul(x, hmf::QuadInt{0, 1}))) s += ipow(d, r);
        }
    }
    return s;
}

inline mpz_class sigma_int(long n, unsigned r) {
    mpz_class s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) s += ipow(d, r);
    return s;
}

// 1 + 240 sum sigma_3 q^n and 1 - 504 sum sigma_5 q^n
inline std::vector<mpq_class> elliptic_E(int k, int terms) {
    std::vector<mpq_class> c(terms);
    c[0] = 1;
    long f = k == 4 ? 240 : -504;
    for (int n = 1; n < terms; ++n) c[n] = mpq_class(f * sigma_int(n, static_cast<unsigned>(k - 1)));
    return c;
}

// orbit reduction of a totally positive xi = x / sqrt D by scanning eps0^(2j), j in [-10, 10]
inline hmf::QuadInt reduce_scan(const hmf::FieldContext& F, const hmf::QuadInt& x) {
    long double e = F.emb1(F.eps0);
    long double e4 = e * e * e * e;
    hmf::QuadInt y = x;
    for (int j = 0; j < 10; ++j) y = F.mul(y, F.eps0_inv_sq);
    for (int j = -10; j <= 10; ++j) {
        // ratio xi / xi' = -x / x'
        long double r = -F.emb1(y) / F.emb2(y);
        if (r >= 1 - 1e-15L && r < e4 * (1 - 1e-15L)) return y;
        y = F.mul(y, F.eps0_sq);
    }
    return {0, 0};
}

} // namespace oracle
