#include "hmf/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace hmf {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::NotFundamentalDiscriminant: return "NotFundamentalDiscriminant";
    case Errc::NarrowClassNumberNotOne: return "NarrowClassNumberNotOne";
    case Errc::NotTotallyPositive: return "NotTotallyPositive";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::FactorizationTooLarge: return "FactorizationTooLarge";
    case Errc::GeneratorSearchExhausted: return "GeneratorSearchExhausted";
    case Errc::Overflow: return "Overflow";
    case Errc::ReconstructionUnstable: return "ReconstructionUnstable";
    case Errc::CrossCheckFailed: return "CrossCheckFailed";
    case Errc::GammaPole: return "GammaPole";
    case Errc::ZetaArgumentOdd: return "ZetaArgumentOdd";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::WeightMismatch: return "WeightMismatch";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::FitInconsistent: return "FitInconsistent";
    case Errc::NumericCrossCheckFailed: return "NumericCrossCheckFailed";
    case Errc::SymmetryViolated: return "SymmetryViolated";
    case Errc::InsufficientTruncation: return "InsufficientTruncation";
    case Errc::NotStable: return "NotStable";
    case Errc::FactorizationFailed: return "FactorizationFailed";
    case Errc::EigenvalueCheckFailed: return "EigenvalueCheckFailed";
    case Errc::MissingPrime: return "MissingPrime";
    case Errc::RegionViolation: return "RegionViolation";
    case Errc::TailBoundTooLarge: return "TailBoundTooLarge";
    case Errc::NotInSpan: return "NotInSpan";
    case Errc::GridTooSparse: return "GridTooSparse";
    case Errc::CacheCorrupt: return "CacheCorrupt";
    case Errc::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

namespace {

i64 to_i64(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw Error(Errc::Overflow, "integer coordinate exceeds 64 bits");
    return static_cast<i64>(v);
}

// sign of P + Q*sqrt(D)
int sign_pq(i128 P, i128 Q, i64 D) {
    int sp = (P > 0) - (P < 0), sq = (Q > 0) - (Q < 0);
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    // opposite signs: compare P^2 with Q^2 D
    mpz_class p2 = mpz_class(static_cast<long>(P)) * mpz_class(static_cast<long>(P));
    mpz_class q2 = mpz_class(static_cast<long>(Q)) * mpz_class(static_cast<long>(Q)) * mpz_class(static_cast<long>(D));
    return p2 > q2 ? sp : sq;
}

int sign_pq(const mpq_class& P, const mpq_class& Q, i64 D) {
    int sp = sgn(P), sq = sgn(Q);
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    mpq_class lhs = P * P, rhs = Q * Q * D;
    return lhs > rhs ? sp : sq;
}

bool squarefree(i64 n) {
    for (i64 p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

i64 isqrt(i64 n) {
    i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

i64 floordiv(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 ceildiv(i64 a, i64 b) { return -floordiv(-a, b); }

i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 powmod(i64 b, i64 e, i64 m) {
    i128 r = 1, x = mod(b, m);
    while (e > 0) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<i64>(r);
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

// floor((P + sqrt D)/Q), Q != 0, exact
mpz_class floor_quad(const mpz_class& P, const mpz_class& Q, i64 D) {
    auto ge = [&](const mpz_class& a) {
        // (P + sqrt D)/Q >= a  <=>  sign((P - aQ) + sqrt D) * sign(Q) >= 0
        mpq_class Pq(P - a * Q), one(1);
        int s = sign_pq(Pq, one, D);
        return s * sgn(Q) >= 0;
    };
    double approx = (P.get_d() + std::sqrt(static_cast<double>(D))) / Q.get_d();
    mpz_class a(std::floor(approx));
    while (!ge(a)) --a;
    while (ge(a + 1)) ++a;
    return a;
}

QuadInt to_quadint(const mpz_class& a, const mpz_class& b) {
    if (!a.fits_slong_p() || !b.fits_slong_p())
        throw Error(Errc::Overflow, "fundamental unit does not fit 64-bit coordinates");
    return {a.get_si(), b.get_si()};
}

} // namespace

std::string to_string(const QuadRat& x) {
    std::ostringstream os;
    os << "(" << x.a.get_str() << ", " << x.b.get_str() << ")";
    return os.str();
}

std::string to_string(const IdealHNF& I) {
    std::ostringstream os;
    os << "[" << I.a << ", " << I.b << " + " << I.c << "w]";
    return os.str();
}

const char* prime_type_name(PrimeType t) {
    switch (t) {
    case PrimeType::Split: return "split";
    case PrimeType::Inert: return "inert";
    case PrimeType::Ramified: return "ramified";
    }
    return "?";
}

// ---------------------------------------------------------------- integral arithmetic

QuadInt FieldContext::mul(const QuadInt& x, const QuadInt& y) const {
    i128 a = static_cast<i128>(x.a) * y.a - static_cast<i128>(omega_norm) * x.b * y.b;
    i128 b = static_cast<i128>(x.a) * y.b + static_cast<i128>(x.b) * y.a + static_cast<i128>(D) * x.b * y.b;
    return {to_i64(a), to_i64(b)};
}

QuadInt FieldContext::conj(const QuadInt& x) const { return {to_i64(static_cast<i128>(x.a) + static_cast<i128>(x.b) * D), -x.b}; }

i64 FieldContext::norm(const QuadInt& x) const {
    i128 n = static_cast<i128>(x.a) * x.a + static_cast<i128>(x.a) * x.b * D + static_cast<i128>(x.b) * x.b * omega_norm;
    return to_i64(n);
}

i64 FieldContext::trace(const QuadInt& x) const { return to_i64(2 * static_cast<i128>(x.a) + static_cast<i128>(x.b) * D); }

QuadInt FieldContext::pow(QuadInt x, unsigned e) const {
    QuadInt r{1, 0};
    while (e) {
        if (e & 1) r = mul(r, x);
        e >>= 1;
        if (e) x = mul(x, x);
    }
    return r;
}

std::optional<QuadInt> FieldContext::exact_div(const QuadInt& x, const QuadInt& y) const {
    i64 n = norm(y);
    if (n == 0) throw Error(Errc::ZeroElement, "division by zero element");
    QuadInt t = mul(x, conj(y));
    if (t.a % n != 0 || t.b % n != 0) return std::nullopt;
    return QuadInt{t.a / n, t.b / n};
}

long double FieldContext::emb1(const QuadInt& x) const { return x.a + x.b * (D + sqrtD) / 2; }
long double FieldContext::emb2(const QuadInt& x) const { return x.a + x.b * (D - sqrtD) / 2; }

int FieldContext::sign1(const QuadInt& x) const {
    return sign_pq(2 * static_cast<i128>(x.a) + static_cast<i128>(x.b) * D, x.b, D);
}
int FieldContext::sign2(const QuadInt& x) const {
    return sign_pq(2 * static_cast<i128>(x.a) + static_cast<i128>(x.b) * D, -static_cast<i128>(x.b), D);
}

QuadInt FieldContext::reduce_index(QuadInt x) const {
    if (!is_index(x)) throw Error(Errc::NotTotallyPositive, "index element must satisfy x > 0 > x'");
    // ratio -x/x' in [1, eps0^4)  <=>  Tr(x) >= 0 and Tr(eps0^-2 x) < 0
    while (trace(x) < 0) x = mul(x, eps0_sq);
    for (;;) {
        QuadInt y = mul(x, eps0_inv_sq);
        if (trace(y) < 0) break;
        x = y;
    }
    return x;
}

// ---------------------------------------------------------------- rational arithmetic

QuadRat FieldContext::mul(const QuadRat& x, const QuadRat& y) const {
    return {x.a * y.a - omega_norm * x.b * y.b, x.a * y.b + x.b * y.a + D * x.b * y.b};
}
QuadRat FieldContext::conj(const QuadRat& x) const { return {x.a + x.b * D, -x.b}; }
mpq_class FieldContext::norm(const QuadRat& x) const { return x.a * x.a + x.a * x.b * D + x.b * x.b * omega_norm; }
mpq_class FieldContext::trace(const QuadRat& x) const { return 2 * x.a + x.b * D; }
QuadRat FieldContext::inv(const QuadRat& x) const {
    mpq_class n = norm(x);
    if (sgn(n) == 0) throw Error(Errc::ZeroElement, "inverse of zero");
    QuadRat c = conj(x);
    return {c.a / n, c.b / n};
}
int FieldContext::sign1(const QuadRat& x) const { return sign_pq(2 * x.a + x.b * D, x.b, D); }
int FieldContext::sign2(const QuadRat& x) const { return sign_pq(2 * x.a + x.b * D, -x.b, D); }
long double FieldContext::emb1(const QuadRat& x) const {
    return x.a.get_d() + x.b.get_d() * (D + sqrtD) / 2;
}
long double FieldContext::emb2(const QuadRat& x) const {
    return x.a.get_d() + x.b.get_d() * (D - sqrtD) / 2;
}

QuadRat FieldContext::index_to_xi(const QuadInt& x) const {
    QuadRat t = mul(QuadRat(x), sqrtD_elem());
    return {t.a / D, t.b / D};
}

QuadInt FieldContext::xi_to_index(const QuadRat& xi) const {
    QuadRat t = mul(xi, sqrtD_elem());
    if (!t.is_integral()) throw Error(Errc::PreconditionViolated, "element is not in the inverse different");
    return {t.a.get_num().get_si(), t.b.get_num().get_si()};
}

// ---------------------------------------------------------------- construction

bool is_fundamental_discriminant(i64 D) {
    if (D <= 1) return false;
    i64 r = isqrt(D);
    if (r * r == D) return false;
    if (D % 4 == 1) return squarefree(D);
    if (D % 4 == 0) {
        i64 m = D / 4;
        return (m % 4 == 2 || m % 4 == 3) && squarefree(m);
    }
    return false;
}

int kronecker(i64 D, i64 p) {
    if (p == 2) {
        if (D % 2 == 0) return 0;
        i64 r = mod(D, 8);
        return (r == 1 || r == 7) ? 1 : -1;
    }
    i64 r = mod(D, p);
    if (r == 0) return 0;
    return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

namespace {

// fundamental unit from the continued fraction of theta = (delta + sqrt D)/2
QuadInt fundamental_unit(const FieldContext& F) {
    const i64 D = F.D;
    const i64 delta = D % 2;
    const mpz_class normTheta = (mpz_class(delta * delta) - D) / 4;
    mpz_class P = delta, Q = 2;
    mpz_class p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    for (int step = 0; step < 100000; ++step) {
        mpz_class a = floor_quad(P, Q, D);
        mpz_class p = a * p1 + p2, q = a * q1 + q2;
        p2 = p1; p1 = p; q2 = q1; q1 = q;
        mpz_class n = p * p - p * q * delta + q * q * normTheta;
        if (abs(n) == 1) {
            // eps = p - q*theta' = (p - q*delta) + q*theta, theta = omega - (D - delta)/2
            mpz_class ea = p - q * delta - q * ((D - delta) / 2);
            return to_quadint(ea, q);
        }
        P = a * Q - P;
        Q = (mpz_class(D) - P * P) / Q;
    }
    throw Error(Errc::Overflow, "continued fraction did not reach a unit");
}

std::vector<IdealHNF> primes_above_raw(const FieldContext& F, i64 p) {
    std::vector<IdealHNF> out;
    int kr = kronecker(F.D, p);
    if (kr == -1) {
        out.push_back({p, 0, p});
        return out;
    }
    // roots of t^2 - D t + N(omega) mod p
    std::vector<i64> roots;
    for (i64 r = 0; r < p; ++r) {
        i128 v = static_cast<i128>(r) * r - static_cast<i128>(F.D) * r + F.omega_norm;
        if (static_cast<i64>(((v % p) + p) % p) == 0) roots.push_back(r);
    }
    if (kr == 0 && roots.size() != 1) throw Error(Errc::PreconditionViolated, "ramified prime without a double root");
    if (kr == 1 && roots.size() != 2) throw Error(Errc::PreconditionViolated, "split prime without two roots");
    for (i64 r : roots) out.push_back(ideal_from_generators(F, {{p, 0}, {-r, 1}}));
    return out;
}

PrimeIdeal attach_generator(const FieldContext& F, const IdealHNF& I, i64 p) {
    int kr = kronecker(F.D, p);
    PrimeType t = kr == 1 ? PrimeType::Split : (kr == 0 ? PrimeType::Ramified : PrimeType::Inert);
    return PrimeIdeal{I, principal_generator_tp_int(F, I), t, p, I.norm()};
}

template <class Elem, class Mul, class BCoord>
Elem reduce_tp(Elem x, const Elem& e2, const Elem& em2, Mul mul, BCoord bsign) {
    // ratio x/x' in [1, eps0^4)  <=>  b(x) >= 0 and b(eps0^-2 x) < 0
    while (bsign(x) < 0) x = mul(x, e2);
    for (;;) {
        Elem y = mul(x, em2);
        if (bsign(y) < 0) break;
        x = y;
    }
    return x;
}

QuadInt reduce_tp_int(const FieldContext& F, const QuadInt& x) {
    return reduce_tp(x, F.eps0_sq, F.eps0_inv_sq,
                     [&](const QuadInt& u, const QuadInt& v) { return F.mul(u, v); },
                     [](const QuadInt& u) { return (u.b > 0) - (u.b < 0); });
}

} // namespace

Field make_field(i64 D, i64 factor_bound) {
    if (!is_fundamental_discriminant(D))
        throw Error(Errc::NotFundamentalDiscriminant, "D=" + std::to_string(D) + " is not a fundamental discriminant");
    auto F = std::make_shared<FieldContext>();
    F->D = D;
    F->omega_norm = (D * D - D) / 4;
    F->sqrtD = std::sqrt(static_cast<long double>(D));
    F->factor_bound = factor_bound;
    F->eps0 = fundamental_unit(*F);
    i64 n = F->norm(F->eps0);
    F->narrow.eps0_norm = n;
    if (n != -1)
        throw Error(Errc::NarrowClassNumberNotOne,
                    "D=" + std::to_string(D) + ": fundamental unit has norm +1");
    F->eps0_sq = F->mul(F->eps0, F->eps0);
    F->eps0_inv_sq = F->conj(F->eps0_sq);  // N(eps0^2) = 1
    F->narrow.minkowski_bound = 0.5 * std::sqrt(static_cast<double>(D));
    for (i64 p = 2; p <= static_cast<i64>(F->narrow.minkowski_bound); ++p) {
        if (!is_prime(p)) continue;
        for (const IdealHNF& I : primes_above_raw(*F, p)) {
            if (static_cast<double>(I.norm()) > F->narrow.minkowski_bound) continue;
            if (!find_generator(*F, I))
                throw Error(Errc::NarrowClassNumberNotOne,
                            "D=" + std::to_string(D) + ": prime " + to_string(I) + " is not principal");
            F->narrow.checked.push_back(attach_generator(*F, I, p));
        }
    }
    return F;
}

// ---------------------------------------------------------------- enumeration

std::vector<QuadInt> index_box(const FieldContext& F, i64 N) {
    std::vector<QuadInt> out;
    const i64 D = F.D;
    for (i64 v = 1; v <= N; ++v) {
        // x = u + v*omega with x > 0 > x': -v(D+sqrtD)/2 < u < -v(D-sqrtD)/2
        i64 s = isqrt(v * v * D);  // floor(v sqrt D), never exact
        i64 umin = floordiv(-v * D - s - 1, 2) + 1;
        i64 umax = ceildiv(-v * D + s + 1, 2) - 1;
        for (i64 u = umin; u <= umax; ++u) {
            QuadInt x{u, v};
            if (F.is_index(x)) out.push_back(x);
        }
    }
    return out;
}

QuadRat unit_reduce(const FieldContext& F, const QuadRat& xi) {
    if (F.sign1(xi) <= 0 || F.sign2(xi) <= 0)
        throw Error(Errc::NotTotallyPositive, "unit_reduce needs a totally positive element");
    QuadRat e2(QuadRat(F.eps0_sq)), em2(QuadRat(F.eps0_inv_sq));
    return reduce_tp(xi, e2, em2, [&](const QuadRat& u, const QuadRat& v) { return F.mul(u, v); },
                     [](const QuadRat& u) { return sgn(u.b); });
}

std::vector<QuadRat> enumerate_tp_invdiff(const FieldContext& F, i64 N, bool orbits) {
    std::vector<QuadInt> box = index_box(F, N);
    std::vector<QuadRat> out;
    if (!orbits) {
        for (const QuadInt& x : box) out.push_back(F.index_to_xi(x));
        return out;
    }
    std::unordered_set<QuadInt, QuadIntHash> seen;
    std::vector<QuadInt> reps;
    for (const QuadInt& x : box) {
        QuadInt r = F.reduce_index(x);
        if (seen.insert(r).second) reps.push_back(r);
    }
    std::sort(reps.begin(), reps.end(), index_less);
    for (const QuadInt& x : reps) out.push_back(F.index_to_xi(x));
    return out;
}

// ---------------------------------------------------------------- ideals

IdealHNF ideal_from_generators(const FieldContext& F, const std::vector<QuadInt>& gens) {
    // Z-lattice spanned by g and g*omega for each generator
    std::vector<QuadInt> vecs;
    for (const QuadInt& g : gens) {
        vecs.push_back(g);
        vecs.push_back(F.mul(g, QuadInt{0, 1}));
    }
    i128 rx = 0, ry = 0;  // row with current gcd of omega-coordinates
    i128 A = 0;
    for (const QuadInt& v : vecs) {
        i128 x = v.a, y = v.b;
        if (y == 0) {
            A = std::gcd(A, x < 0 ? -x : x);
            continue;
        }
        if (ry == 0) {
            rx = x; ry = y;
            continue;
        }
        // extended gcd on (ry, y)
        i128 old_r = ry, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
        while (r != 0) {
            i128 q = old_r / r;
            i128 tmp = old_r - q * r; old_r = r; r = tmp;
            tmp = old_s - q * s; old_s = s; s = tmp;
            tmp = old_t - q * t; old_t = t; t = tmp;
        }
        i128 g = old_r;
        i128 nx = old_s * rx + old_t * x;
        // the complementary combination kills the omega-coordinate
        i128 kx = (y / g) * rx - (ry / g) * x;
        A = std::gcd(A, kx < 0 ? -kx : kx);
        rx = nx; ry = g;
    }
    if (ry < 0) { rx = -rx; ry = -ry; }
    if (A == 0 || ry == 0) throw Error(Errc::ZeroElement, "ideal generated by zero");
    IdealHNF I;
    I.a = to_i64(A);
    I.c = to_i64(ry);
    I.b = mod(to_i64(rx % A), I.a);
    return I;
}

IdealHNF ideal_from_element(const FieldContext& F, const QuadInt& x) {
    if (x.is_zero()) throw Error(Errc::ZeroElement, "ideal of the zero element");
    return ideal_from_generators(F, {x});
}

IdealHNF ideal_from_element(const FieldContext& F, const QuadRat& x) {
    if (!x.is_integral()) throw Error(Errc::PreconditionViolated, "element is not integral");
    return ideal_from_element(F, QuadInt{x.a.get_num().get_si(), x.b.get_num().get_si()});
}

IdealHNF ideal_mul(const FieldContext& F, const IdealHNF& I, const IdealHNF& J) {
    QuadInt i1{I.a, 0}, i2{I.b, I.c}, j1{J.a, 0}, j2{J.b, J.c};
    return ideal_from_generators(F, {F.mul(i1, j1), F.mul(i1, j2), F.mul(i2, j1), F.mul(i2, j2)});
}

i64 ideal_norm(const IdealHNF& I) { return I.norm(); }

IdealHNF ideal_conj(const FieldContext& F, const IdealHNF& I) {
    return ideal_from_generators(F, {QuadInt{I.a, 0}, F.conj(QuadInt{I.b, I.c})});
}

bool ideal_contains(const IdealHNF& I, const QuadInt& x) {
    if (x.b % I.c != 0) return false;
    i128 j = x.b / I.c;
    i128 rem = static_cast<i128>(x.a) - j * I.b;
    return rem % I.a == 0;
}

bool ideal_divides(const FieldContext&, const IdealHNF& P, const IdealHNF& M) {
    return ideal_contains(P, QuadInt{M.a, 0}) && ideal_contains(P, QuadInt{M.b, M.c});
}

namespace {

IdealHNF divide_by_integer(const FieldContext& F, const IdealHNF& I, i64 n) {
    if (I.a % n || I.b % n || I.c % n) throw Error(Errc::PreconditionViolated, "ideal not divisible by integer");
    return ideal_from_generators(F, {QuadInt{I.a / n, 0}, QuadInt{I.b / n, I.c / n}});
}

} // namespace

std::vector<std::pair<i64, int>> factor_integer(i64 n, i64 bound) {
    std::vector<std::pair<i64, int>> out;
    if (n < 0) n = -n;
    for (i64 p = 2; p * p <= n; ++p) {
        if (p > bound) throw Error(Errc::FactorizationTooLarge, "norm " + std::to_string(n) + " exceeds factoring bound");
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::vector<PrimeIdeal> primes_above(const FieldContext& F, i64 p) {
    std::vector<PrimeIdeal> out;
    for (const IdealHNF& I : primes_above_raw(F, p)) out.push_back(attach_generator(F, I, p));
    return out;
}

std::vector<PrimeIdeal> primes_below(const FieldContext& F, i64 B) {
    std::vector<PrimeIdeal> out;
    for (i64 p = 2; p <= B; ++p) {
        if (!is_prime(p)) continue;
        for (const PrimeIdeal& P : primes_above(F, p))
            if (P.norm <= B) out.push_back(P);
    }
    std::stable_sort(out.begin(), out.end(), [](const PrimeIdeal& x, const PrimeIdeal& y) {
        if (x.norm != y.norm) return x.norm < y.norm;
        return std::tie(x.ideal.a, x.ideal.b, x.ideal.c) < std::tie(y.ideal.a, y.ideal.b, y.ideal.c);
    });
    return out;
}

std::vector<std::pair<PrimeIdeal, int>> ideal_factor(const FieldContext& F, const IdealHNF& M0) {
    std::vector<std::pair<PrimeIdeal, int>> out;
    IdealHNF M = M0;
    for (auto [p, e] : factor_integer(M0.norm(), F.factor_bound)) {
        (void)e;
        for (const PrimeIdeal& P : primes_above(F, p)) {
            int v = 0;
            IdealHNF Pc = ideal_conj(F, P.ideal);
            while (ideal_divides(F, P.ideal, M)) {
                M = divide_by_integer(F, ideal_mul(F, M, Pc), P.norm);
                ++v;
            }
            if (v) out.push_back({P, v});
        }
    }
    if (M.norm() != 1) throw Error(Errc::PreconditionViolated, "incomplete ideal factorization");
    return out;
}

std::vector<IdealHNF> ideal_divisors(const FieldContext& F, const IdealHNF& M) {
    std::vector<IdealHNF> divs{IdealHNF{1, 0, 1}};
    for (const auto& [P, e] : ideal_factor(F, M)) {
        std::vector<IdealHNF> next;
        for (const IdealHNF& d : divs) {
            IdealHNF cur = d;
            next.push_back(cur);
            for (int j = 1; j <= e; ++j) {
                cur = ideal_mul(F, cur, P.ideal);
                next.push_back(cur);
            }
        }
        divs = std::move(next);
    }
    std::sort(divs.begin(), divs.end(), [](const IdealHNF& x, const IdealHNF& y) {
        return std::tie(x.a, x.c, x.b) < std::tie(y.a, y.c, y.b);
    });
    return divs;
}

mpz_class sigma_ideal(const FieldContext& F, const IdealHNF& M, unsigned r) {
    mpz_class total = 1;
    for (const auto& [P, e] : ideal_factor(F, M)) {
        mpz_class q, term = 1, s = 1;
        mpz_pow_ui(q.get_mpz_t(), mpz_class(static_cast<long>(P.norm)).get_mpz_t(), r);
        for (int j = 1; j <= e; ++j) {
            term *= q;
            s += term;
        }
        total *= s;
    }
    return total;
}

// ---------------------------------------------------------------- generators

std::optional<QuadInt> find_generator(const FieldContext& F, const IdealHNF& M) {
    // a generator balanced by units has both embeddings bounded by sqrt(N(M) * eps0)
    const long double e0 = F.emb1(F.eps0);
    const long double R = std::sqrt(static_cast<long double>(M.norm()) * e0) * (1 + 1e-9L) + 1e-9L;
    const i64 jmax = static_cast<i64>(std::ceil(2 * R / (M.c * F.sqrtD))) + 1;
    const long double w1 = (F.D + F.sqrtD) / 2;
    for (i64 j = -jmax; j <= jmax; ++j) {
        long double off = M.b + M.c * w1;  // first embedding of b + c*omega
        long double lo = (-R - j * off) / M.a, hi = (R - j * off) / M.a;
        for (i64 i = static_cast<i64>(std::floor(lo)) - 1; i <= static_cast<i64>(std::ceil(hi)) + 1; ++i) {
            QuadInt x{to_i64(static_cast<i128>(i) * M.a + static_cast<i128>(j) * M.b), to_i64(static_cast<i128>(j) * M.c)};
            if (x.is_zero()) continue;
            i64 n = F.norm(x);
            if (n == M.norm() || n == -M.norm()) return x;
        }
    }
    return std::nullopt;
}

QuadInt principal_generator_tp_int(const FieldContext& F, const IdealHNF& M) {
    auto g = find_generator(F, M);
    if (!g) throw Error(Errc::GeneratorSearchExhausted, "no generator found for " + to_string(M));
    QuadInt x = *g;
    if (F.norm(x) < 0) x = F.mul(x, F.eps0);
    if (F.sign1(x) < 0) x = -x;
    x = reduce_tp_int(F, x);
    if (ideal_from_element(F, x) != M) throw Error(Errc::GeneratorSearchExhausted, "generator check failed");
    return x;
}

QuadRat principal_generator_tp(const FieldContext& F, const IdealHNF& M) {
    return QuadRat(principal_generator_tp_int(F, M));
}

} // namespace hmf
