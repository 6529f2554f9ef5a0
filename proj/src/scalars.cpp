#include "hmf/scalars.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include <boost/multiprecision/mpfr.hpp>

namespace hmf {

namespace bmp = boost::multiprecision;
using Real = bmp::mpfr_float;

// ---------------------------------------------------------------- FormalScalar

FormalScalar::FormalScalar(mpq_class q, i64 D, int i_exp, int pi_exp, int sqrtD_exp)
    : q_(std::move(q)), a_(i_exp), b_(pi_exp), c_(sqrtD_exp), D_(D) {
    canonicalize();
}

void FormalScalar::canonicalize() {
    if (sgn(q_) == 0) {
        a_ = b_ = c_ = 0;
        return;
    }
    int a = ((a_ % 4) + 4) % 4;
    if (a >= 2) {
        q_ = -q_;
        a -= 2;
    }
    a_ = a;
    // sqrt(D)^c = D^floor(c/2) * sqrt(D)^(c mod 2)
    int c = c_;
    int half = c >= 0 ? c / 2 : -((-c + 1) / 2);
    int rem = c - 2 * half;
    if (half != 0) {
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), mpz_class(static_cast<long>(D_)).get_mpz_t(), static_cast<unsigned long>(half > 0 ? half : -half));
        if (half > 0) q_ *= mpq_class(p);
        else q_ /= mpq_class(p);
    }
    c_ = rem;
}

FormalScalar FormalScalar::operator*(const FormalScalar& o) const {
    i64 D = D_ ? D_ : o.D_;
    if (D_ && o.D_ && D_ != o.D_) throw Error(Errc::FieldMismatch, "formal scalars over different fields");
    return FormalScalar(q_ * o.q_, D, a_ + o.a_, b_ + o.b_, c_ + o.c_);
}

FormalScalar FormalScalar::operator*(const mpq_class& r) const { return FormalScalar(q_ * r, D_, a_, b_, c_); }

FormalScalar FormalScalar::operator+(const FormalScalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (!same_monomial(o)) throw Error(Errc::PreconditionViolated, "adding formal scalars with different monomials");
    return FormalScalar(q_ + o.q_, D_, a_, b_, c_);
}

FormalScalar FormalScalar::inverse() const {
    if (is_zero()) throw Error(Errc::ZeroElement, "inverse of zero formal scalar");
    // (q i^a pi^b sqrtD^c)^-1 = q^-1 i^-a pi^-b sqrtD^-c
    return FormalScalar(1 / q_, D_, -a_, -b_, -c_);
}

FormalScalar FormalScalar::pow(int e) const {
    FormalScalar base = e >= 0 ? *this : inverse();
    FormalScalar r = one(D_);
    for (int i = 0; i < (e >= 0 ? e : -e); ++i) r = r * base;
    return r;
}

bool FormalScalar::operator==(const FormalScalar& o) const {
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    return q_ == o.q_ && same_monomial(o) && (c_ == 0 || D_ == o.D_);
}

FormalScalar FormalScalar::monomial() const {
    FormalScalar m = *this;
    m.q_ = 1;
    return m;
}

std::complex<double> FormalScalar::value() const {
    double mag = q_.get_d() * std::pow(M_PI, b_) * std::pow(std::sqrt(static_cast<double>(D_)), c_);
    return a_ == 0 ? std::complex<double>(mag, 0) : std::complex<double>(0, mag);
}

std::string FormalScalar::to_string() const {
    std::ostringstream os;
    os << q_.get_str();
    if (a_) os << "*i";
    if (b_) os << "*pi^" << b_;
    if (c_) os << "*sqrt(" << D_ << ")";
    return os.str();
}

// ---------------------------------------------------------------- integer helpers

mpz_class factorial(long n) {
    if (n < 0) throw Error(Errc::GammaPole, "factorial of a negative integer");
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

mpz_class gamma_int(long n) {
    if (n <= 0) throw Error(Errc::GammaPole, "Gamma(" + std::to_string(n) + ")");
    return factorial(n - 1);
}

mpz_class binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

std::vector<mpq_class> bernoulli_numbers(int n) {
    static std::mutex mu;
    static std::vector<mpq_class> cache{mpq_class(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= n) {
        long m = static_cast<long>(cache.size());
        mpq_class s = 0;
        for (long k = 0; k < m; ++k) s += mpq_class(binomial(m + 1, k)) * cache[k];
        cache.push_back(-s / (m + 1));
    }
    return std::vector<mpq_class>(cache.begin(), cache.begin() + n + 1);
}

// ---------------------------------------------------------------- numeric zeta

namespace {

int chi(i64 D, i64 a) {
    int r = 1;
    for (auto [p, e] : factor_integer(a, 1 << 20)) {
        int k = kronecker(D, p);
        if (k == 0) return 0;
        if (k == -1 && (e % 2)) r = -r;
    }
    return r;
}

Real to_real(const mpq_class& q) {
    return Real(Real(q.get_num().get_str()) / Real(q.get_den().get_str()));
}

// Hurwitz zeta(s, a) by Euler-Maclaurin, s > 1, 0 < a <= 1, at the current default precision
Real hurwitz(const Real& s, const Real& a, int prec_bits) {
    const int M = prec_bits / 3 + 10;
    const int N = M + static_cast<int>(s.convert_to<double>()) + 10;
    std::vector<mpq_class> B = bernoulli_numbers(2 * M);
    Real sum = 0;
    for (int n = 0; n < N; ++n) sum += bmp::pow(a + n, -s);
    Real x = a + N;
    sum += bmp::pow(x, 1 - s) / (s - 1);
    sum += bmp::pow(x, -s) / 2;
    Real rising = s;              // s (s+1) ... (s + 2j - 2)
    Real xp = bmp::pow(x, -s - 1);  // x^(-s-2j+1)
    Real fact = 2;                // (2j)!
    Real x2 = x * x;
    for (int j = 1; j <= M; ++j) {
        sum += to_real(B[2 * j]) / fact * rising * xp;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        xp /= x2;
        fact *= Real((2 * j + 1) * (2 * j + 2));
    }
    return sum;
}

// zeta_F(s) = zeta(s) L(s, chi_D) with L(s, chi) = D^-s sum_a chi(a) zeta(s, a/D)
Real zetaF_real(const FieldContext& F, const Real& s, int prec_bits) {
    Real z = hurwitz(s, Real(1), prec_bits);
    Real L = 0;
    for (i64 a = 1; a < F.D; ++a) {
        int c = chi(F.D, a);
        if (c == 0) continue;
        Real h = hurwitz(s, Real(a) / Real(F.D), prec_bits);
        L += c > 0 ? h : Real(-h);
    }
    L *= bmp::pow(Real(F.D), -s);
    return z * L;
}

// zeta_F(1-m) from zeta_F(m): D^(m-1/2) pi^(-2m) ((n-1)!)^2 ((2n)!)^2 / (16^n (n!)^2), n = m/2
Real zetaF_neg_real(const FieldContext& F, int m, int prec_bits) {
    Real zm = zetaF_real(F, Real(m), prec_bits);
    long n = m / 2;
    mpq_class g(gamma_int(n) * gamma_int(n) * factorial(2 * n) * factorial(2 * n));
    mpz_class sixteen_n;
    mpz_ui_pow_ui(sixteen_n.get_mpz_t(), 16, static_cast<unsigned long>(n));
    g /= mpq_class(sixteen_n * factorial(n) * factorial(n));
    Real pi = bmp::acos(Real(-1));
    return zm * bmp::pow(Real(F.D), Real(m) - Real(0.5)) * bmp::pow(pi, -2 * m) * to_real(g);
}

std::optional<mpq_class> cf_reconstruct(const Real& x, const mpz_class& bound, const Real& tol) {
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    Real y = x;
    for (int it = 0; it < 2000; ++it) {
        Real fl = bmp::floor(y);
        mpz_class a;
        mpfr_get_z(a.get_mpz_t(), fl.backend().data(), MPFR_RNDD);
        mpz_class h = a * h1 + h0, k = a * k1 + k0;
        if (k > bound) return std::nullopt;
        h0 = h1; h1 = h; k0 = k1; k1 = k;
        mpq_class cand(h, k);
        cand.canonicalize();
        if (bmp::abs(x - to_real(cand)) <= tol) return cand;
        Real frac = y - fl;
        if (frac == 0) return cand;
        y = 1 / frac;
    }
    return std::nullopt;
}

struct PrecisionGuard {
    unsigned old;
    explicit PrecisionGuard(int bits) : old(Real::default_precision()) {
        Real::default_precision(static_cast<unsigned>(bits * 0.30103) + 5);
    }
    ~PrecisionGuard() { Real::default_precision(old); }
};

std::optional<mpq_class> reconstruct_at(const FieldContext& F, int m, int bits) {
    PrecisionGuard g(bits);
    Real v = zetaF_neg_real(F, m, bits);
    Real tol = bmp::pow(Real(2), -(bits - 48)) * bmp::max(Real(1), bmp::abs(v));
    mpz_class bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), 2, 64);
    return cf_reconstruct(v, bound, tol);
}

} // namespace

ZetaReport zetaF_neg_report(const FieldContext& F, int m, int prec_bits) {
    if (m < 2 || m > 30 || m % 2 != 0)
        throw Error(Errc::PreconditionViolated, "zeta_F(1-m) needs even m in [2, 30], got m=" + std::to_string(m));
    double mag;
    {
        PrecisionGuard g(64);
        Real v = zetaF_neg_real(F, m, 64);
        mag = std::log2(std::max(1.0, std::fabs(v.convert_to<double>())));
    }
    int p1 = std::max(prec_bits, static_cast<int>(mag) + 160);
    int p2 = 2 * p1;
    auto v1 = reconstruct_at(F, m, p1);
    auto v2 = reconstruct_at(F, m, p2);
    if (!v1 || !v2 || *v1 != *v2)
        throw Error(Errc::ReconstructionUnstable, "zeta_F(1-" + std::to_string(m) + ") reconstruction disagrees between precisions");
    return {*v1, p1, p2};
}

mpq_class zetaF_neg(const FieldContext& F, int m, int prec_bits) { return zetaF_neg_report(F, m, prec_bits).value; }

double zetaF_numeric(const FieldContext& F, double s) {
    if (!(s > 1)) throw Error(Errc::PreconditionViolated, "zeta_F numeric needs s > 1");
    PrecisionGuard g(96);
    return zetaF_real(F, Real(s), 96).convert_to<double>();
}

FormalScalar zetaF_pos_formal(const FieldContext& F, int m, ZetaTable* table) {
    mpq_class zneg = table ? table->get(m) : zeta_table(F).get(m);
    long n = m / 2;
    mpz_class sixteen_n;
    mpz_ui_pow_ui(sixteen_n.get_mpz_t(), 16, static_cast<unsigned long>(n));
    mpq_class q = zneg * mpq_class(sixteen_n * n * n) / mpq_class(factorial(2 * n) * factorial(2 * n));
    return FormalScalar(q, F.D, 0, 2 * m, 1 - 2 * m);
}

// ---------------------------------------------------------------- ZetaTable

mpq_class ZetaTable::get(int m) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = values_.find(m);
        if (it != values_.end()) return it->second;
    }
    mpq_class v = zetaF_neg(*F_, m);
    std::lock_guard<std::mutex> lock(mu_);
    return values_.emplace(m, v).first->second;
}

std::map<int, mpq_class> ZetaTable::snapshot() const {
    std::lock_guard<std::mutex> lock(mu_);
    return values_;
}

void ZetaTable::corrupt(int m, const mpq_class& v) {
    std::lock_guard<std::mutex> lock(mu_);
    values_[m] = v;
}

ZetaTable& zeta_table(const FieldContext& F) {
    static std::mutex mu;
    static std::map<i64, std::unique_ptr<ZetaTable>> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto& t = tables[F.D];
    if (!t) t = std::make_unique<ZetaTable>(make_field(F.D, F.factor_bound));
    return *t;
}

// ---------------------------------------------------------------- paper constants

FormalScalar cohen_constant(const FieldContext& F, int k, int s) {
    if (s <= 0 || s >= k) throw Error(Errc::GammaPole, "cohen constant needs 1 <= s <= k-1");
    // D^((k-1)/2) 2^(2-k) pi Gamma(k-1) / (i^s Gamma(s) Gamma(k-s))
    mpq_class q = mpq_class(gamma_int(k - 1)) / mpq_class(gamma_int(s) * gamma_int(k - s));
    mpz_class p2;
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(k - 2));
    q /= mpq_class(p2);
    return FormalScalar(q, F.D, -s, 1, k - 1);
}

FormalScalar alpha_constant(const FieldContext& F, int k, int s, int w, ZetaTable* table) {
    if (s < 1 || s > k - 1 || w < 1 || w > k - 1)
        throw Error(Errc::GammaPole, "alpha needs 1 <= s, w <= k-1");
    const int m1 = 1 - w + s, m2 = 1 - w + k - s;
    if (m1 % 2 != 0 || m2 % 2 != 0)
        throw Error(Errc::ZetaArgumentOdd, "zeta arguments " + std::to_string(m1) + ", " + std::to_string(m2));
    if (m1 < 2 || m2 < 2) throw Error(Errc::PreconditionViolated, "zeta arguments must be >= 2");
    FormalScalar z1 = zetaF_pos_formal(F, m1, table), z2 = zetaF_pos_formal(F, m2, table);
    // inner = i^s (2 pi)^(w-k-1) 2^(k-2) Gamma(s) Gamma(k-s) Gamma(k-w) / Gamma(k-1)
    mpq_class g = mpq_class(gamma_int(s) * gamma_int(k - s) * gamma_int(k - w)) / mpq_class(gamma_int(k - 1));
    int two_exp = (w - k - 1) + (k - 2);
    mpz_class p2;
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(two_exp >= 0 ? two_exp : -two_exp));
    if (two_exp >= 0) g *= mpq_class(p2);
    else g /= mpq_class(p2);
    FormalScalar inner(g, F.D, s, w - k - 1, 0);
    FormalScalar Dpow(1, F.D, 0, 0, 2 * (k - w));
    return Dpow * z1 * z2 * inner * inner;
}

} // namespace hmf
