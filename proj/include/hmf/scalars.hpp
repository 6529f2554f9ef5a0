#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <string>

#include <gmpxx.h>

#include "hmf/quadfield.hpp"

namespace hmf {

// q * i^a * pi^b * sqrt(D)^c in canonical form: a, c in {0, 1} (i^2 = -1 and sqrt(D)^2 = D
// folded into q); zero is q = 0 with all exponents 0.
class FormalScalar {
public:
    FormalScalar() = default;
    FormalScalar(mpq_class q, i64 D, int i_exp = 0, int pi_exp = 0, int sqrtD_exp = 0);
    static FormalScalar one(i64 D) { return FormalScalar(1, D); }

    const mpq_class& q() const { return q_; }
    int i_exp() const { return a_; }
    int pi_exp() const { return b_; }
    int sqrtD_exp() const { return c_; }
    i64 D() const { return D_; }
    bool is_zero() const { return sgn(q_) == 0; }
    // exponents all zero: the value is the rational q
    bool is_rational() const { return a_ == 0 && b_ == 0 && c_ == 0; }
    bool same_monomial(const FormalScalar& o) const { return a_ == o.a_ && b_ == o.b_ && c_ == o.c_; }

    FormalScalar operator*(const FormalScalar& o) const;
    FormalScalar operator*(const mpq_class& r) const;
    FormalScalar operator+(const FormalScalar& o) const;  // same monomial only
    FormalScalar inverse() const;
    FormalScalar pow(int e) const;
    bool operator==(const FormalScalar& o) const;
    bool operator!=(const FormalScalar& o) const { return !(*this == o); }

    // the monomial part with q = 1
    FormalScalar monomial() const;
    std::complex<double> value() const;
    std::string to_string() const;

private:
    void canonicalize();
    mpq_class q_ = 0;
    int a_ = 0, b_ = 0, c_ = 0;
    i64 D_ = 0;
};

// (n-1)! for positive integers n
mpz_class gamma_int(long n);
mpz_class factorial(long n);
mpz_class binomial(long n, long k);

// Bernoulli numbers B_0..B_n (B_1 = -1/2)
std::vector<mpq_class> bernoulli_numbers(int n);

struct ZetaReport {
    mpq_class value;
    int precision_bits = 0;
    int second_precision_bits = 0;
};

// zeta_F(1-m) for even m in [2, 30] by numeric zeta_F(m), the functional equation and
// continued-fraction reconstruction, confirmed at a second precision.
ZetaReport zetaF_neg_report(const FieldContext& F, int m, int prec_bits = 200);
mpq_class zetaF_neg(const FieldContext& F, int m, int prec_bits = 200);
// zeta_F(m) = rational * pi^(2m) * sqrt(D)^(1-2m)
class ZetaTable;
FormalScalar zetaF_pos_formal(const FieldContext& F, int m, ZetaTable* table = nullptr);
// numeric zeta_F(s) at a real argument s > 1 (Euler product of zeta and L(s, chi_D))
double zetaF_numeric(const FieldContext& F, double s);

// Per-field table of zeta_F(1-m), filled once per m.
class ZetaTable {
public:
    explicit ZetaTable(Field F) : F_(std::move(F)) {}
    ZetaTable(const ZetaTable& o) : F_(o.F_), values_(o.snapshot()) {}
    mpq_class get(int m);
    std::map<int, mpq_class> snapshot() const;
    // override one value (sensitivity tests)
    void corrupt(int m, const mpq_class& v);

private:
    Field F_;
    mutable std::mutex mu_;
    std::map<int, mpq_class> values_;
};

ZetaTable& zeta_table(const FieldContext& F);

FormalScalar cohen_constant(const FieldContext& F, int k, int s);
FormalScalar alpha_constant(const FieldContext& F, int k, int s, int w, ZetaTable* table = nullptr);

} // namespace hmf
