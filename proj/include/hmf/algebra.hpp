#pragma once

// Exact polynomials over Q, simple number fields Q[t]/(m), and dense linear algebra
// over either.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hmf/errors.hpp"

namespace hmf {

// coefficients from low to high degree, no trailing zeros
using Poly = std::vector<mpq_class>;

void poly_trim(Poly& p);
int poly_deg(const Poly& p);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const mpq_class& s);
void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly poly_rem(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);  // monic
Poly poly_derivative(const Poly& p);
Poly poly_monic(const Poly& p);
mpq_class poly_eval(const Poly& p, const mpq_class& x);
std::string poly_to_string(const Poly& p, const std::string& var = "t");

// number of distinct real roots in (lo, hi]
int sturm_count(const Poly& p, const mpq_class& lo, const mpq_class& hi);
int sturm_count_all(const Poly& p);
Poly squarefree_part(const Poly& p);
bool all_roots_real(const Poly& p);
// distinct real roots of p, each to absolute accuracy 2^-bits, increasing
std::vector<mpq_class> real_roots(const Poly& p, int bits = 256);

struct PolyFactor {
    Poly factor;  // monic irreducible over Q
    int multiplicity;
};
// factorization of a monic integer polynomial with only real roots; irreducible factors of
// degree <= max_degree are found by rounding products of root subsets and checked by exact division
std::vector<PolyFactor> factor_real_rooted(const Poly& p, int max_degree = 4);

class NumberField {
public:
    explicit NumberField(Poly modulus);
    int degree() const { return static_cast<int>(mod_.size()) - 1; }
    const Poly& modulus() const { return mod_; }
    // real embeddings: roots of the modulus, increasing
    const std::vector<mpq_class>& roots() const { return roots_; }
    std::string to_string() const { return poly_to_string(mod_); }

private:
    Poly mod_;
    std::vector<mpq_class> roots_;
};

using NF = std::shared_ptr<const NumberField>;

NF rational_field();

class NFElem {
public:
    NFElem() = default;
    NFElem(NF K, const mpq_class& r);
    NFElem(NF K, Poly c);
    static NFElem generator(NF K);

    const NF& field() const { return K_; }
    const Poly& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }
    mpq_class rational() const;

    NFElem operator+(const NFElem& o) const;
    NFElem operator-(const NFElem& o) const;
    NFElem operator-() const;
    NFElem operator*(const NFElem& o) const;
    NFElem operator*(const mpq_class& r) const;
    NFElem inverse() const;
    NFElem operator/(const NFElem& o) const { return *this * o.inverse(); }
    bool operator==(const NFElem& o) const { return c_ == o.c_; }
    bool operator!=(const NFElem& o) const { return !(*this == o); }

    mpq_class trace() const;
    mpq_class norm() const;
    // the non-trivial automorphism of a degree-2 field
    NFElem conj2() const;
    // value under the i-th real embedding
    double embed(int i) const;
    std::string to_string(const std::string& var = "t") const { return poly_to_string(c_, var); }

private:
    NF K_;
    Poly c_;
};

// ---------------------------------------------------------------- dense matrices

template <class T>
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<T> a;
    Mat() = default;
    Mat(std::size_t r, std::size_t c, const T& fill) : rows(r), cols(c), a(r * c, fill) {}
    T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

using QMat = Mat<mpq_class>;

// Row echelon form in place (reduced); returns pivot columns.
template <class T, class IsZero, class Inv>
std::vector<std::size_t> rref_inplace(Mat<T>& M, IsZero is_zero, Inv inv) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < M.cols && r < M.rows; ++c) {
        std::size_t p = r;
        while (p < M.rows && is_zero(M(p, c))) ++p;
        if (p == M.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < M.cols; ++j) std::swap(M(p, j), M(r, j));
        T s = inv(M(r, c));
        for (std::size_t j = c; j < M.cols; ++j) M(r, j) = M(r, j) * s;
        for (std::size_t i = 0; i < M.rows; ++i) {
            if (i == r || is_zero(M(i, c))) continue;
            T f = M(i, c);
            for (std::size_t j = c; j < M.cols; ++j) M(i, j) = M(i, j) - f * M(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

std::vector<std::size_t> rref(QMat& M);
QMat mat_mul(const QMat& A, const QMat& B);
QMat mat_identity(std::size_t n);
bool mat_equal(const QMat& A, const QMat& B);
Poly charpoly(const QMat& A);  // monic det(tI - A)

// right null space basis over K of a rational matrix minus theta*I: (A - theta I) v = 0
std::vector<std::vector<NFElem>> eigenvectors(const QMat& A, const NFElem& theta);

std::string q_to_string(const mpq_class& q);

} // namespace hmf
