#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hmf/errors.hpp"

namespace hmf {

using i64 = std::int64_t;
using i128 = __int128;

// a + b*omega with integer coordinates, omega = (D + sqrt D)/2.
struct QuadInt {
    i64 a = 0;
    i64 b = 0;
    bool is_zero() const { return a == 0 && b == 0; }
    friend bool operator==(const QuadInt&, const QuadInt&) = default;
};

// Index order: by omega-coordinate first (that is the trace of x/sqrt D), then by a.
inline bool index_less(const QuadInt& x, const QuadInt& y) {
    return x.b != y.b ? x.b < y.b : x.a < y.a;
}

struct QuadIntHash {
    std::size_t operator()(const QuadInt& x) const noexcept {
        return std::hash<i64>()(x.a) * 1000003u ^ std::hash<i64>()(x.b);
    }
};

inline QuadInt operator+(const QuadInt& x, const QuadInt& y) { return {x.a + y.a, x.b + y.b}; }
inline QuadInt operator-(const QuadInt& x, const QuadInt& y) { return {x.a - y.a, x.b - y.b}; }
inline QuadInt operator-(const QuadInt& x) { return {-x.a, -x.b}; }

// a + b*omega with rational coordinates.
struct QuadRat {
    mpq_class a;
    mpq_class b;
    QuadRat() = default;
    QuadRat(mpq_class a_, mpq_class b_) : a(std::move(a_)), b(std::move(b_)) {}
    explicit QuadRat(const QuadInt& x) : a(static_cast<long>(x.a)), b(static_cast<long>(x.b)) {}
    bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
    bool is_integral() const { return a.get_den() == 1 && b.get_den() == 1; }
    friend bool operator==(const QuadRat& x, const QuadRat& y) { return x.a == y.a && x.b == y.b; }
};

inline QuadRat operator+(const QuadRat& x, const QuadRat& y) { return {x.a + y.a, x.b + y.b}; }
inline QuadRat operator-(const QuadRat& x, const QuadRat& y) { return {x.a - y.a, x.b - y.b}; }
inline QuadRat operator-(const QuadRat& x) { return {-x.a, -x.b}; }
inline QuadRat operator*(const mpq_class& r, const QuadRat& x) { return {r * x.a, r * x.b}; }

std::string to_string(const QuadRat& x);

// Z-basis {a, b + c*omega}, c | a, c | b, 0 <= b < a.
struct IdealHNF {
    i64 a = 1;
    i64 b = 0;
    i64 c = 1;
    i64 norm() const { return a * c; }
    friend bool operator==(const IdealHNF&, const IdealHNF&) = default;
};

std::string to_string(const IdealHNF& I);

enum class PrimeType { Split, Inert, Ramified };
const char* prime_type_name(PrimeType t);

struct PrimeIdeal {
    IdealHNF ideal;
    QuadInt gen;  // totally positive, unit-reduced generator
    PrimeType type;
    i64 p;        // rational prime below
    i64 norm;
};

struct NarrowRecord {
    i64 eps0_norm = 0;
    double minkowski_bound = 0;
    std::vector<PrimeIdeal> checked;  // primes of norm <= Minkowski bound, with generators
};

class FieldContext {
public:
    i64 D = 0;
    i64 omega_norm = 0;  // N(omega) = (D^2 - D)/4, Tr(omega) = D
    QuadInt eps0;        // fundamental unit > 1, norm -1
    QuadInt eps0_sq;
    QuadInt eps0_inv_sq;
    long double sqrtD = 0;
    i64 factor_bound = 1000000;
    NarrowRecord narrow;

    // integral arithmetic
    QuadInt mul(const QuadInt& x, const QuadInt& y) const;
    QuadInt conj(const QuadInt& x) const;
    i64 norm(const QuadInt& x) const;
    i64 trace(const QuadInt& x) const;
    QuadInt pow(QuadInt x, unsigned e) const;
    std::optional<QuadInt> exact_div(const QuadInt& x, const QuadInt& y) const;
    long double emb1(const QuadInt& x) const;
    long double emb2(const QuadInt& x) const;
    int sign1(const QuadInt& x) const;
    int sign2(const QuadInt& x) const;
    bool totally_positive(const QuadInt& x) const { return sign1(x) > 0 && sign2(x) > 0; }
    // x > 0 > x': the integral elements x with x/sqrt(D) totally positive
    bool is_index(const QuadInt& x) const { return sign1(x) > 0 && sign2(x) < 0; }
    // orbit representative of an index under multiplication by eps0^2
    QuadInt reduce_index(QuadInt x) const;
    // the index of the conjugate of x/sqrt(D)
    QuadInt conj_index(const QuadInt& x) const { return -conj(x); }

    // rational arithmetic
    QuadRat mul(const QuadRat& x, const QuadRat& y) const;
    QuadRat conj(const QuadRat& x) const;
    mpq_class norm(const QuadRat& x) const;
    mpq_class trace(const QuadRat& x) const;
    QuadRat inv(const QuadRat& x) const;
    int sign1(const QuadRat& x) const;
    int sign2(const QuadRat& x) const;
    long double emb1(const QuadRat& x) const;
    long double emb2(const QuadRat& x) const;
    QuadRat sqrtD_elem() const { return QuadRat(mpq_class(-D), mpq_class(2)); }

    // xi = x / sqrt(D) and back
    QuadRat index_to_xi(const QuadInt& x) const;
    QuadInt xi_to_index(const QuadRat& xi) const;
};

using Field = std::shared_ptr<const FieldContext>;

bool is_fundamental_discriminant(i64 D);
int kronecker(i64 D, i64 p);  // Kronecker symbol (D/p) for a prime p

Field make_field(i64 D, i64 factor_bound = 1000000);

// all integral x = u + v*omega with x > 0 > x' and 1 <= v <= trace_bound, sorted by index order
std::vector<QuadInt> index_box(const FieldContext& F, i64 trace_bound);

QuadRat unit_reduce(const FieldContext& F, const QuadRat& xi);
std::vector<QuadRat> enumerate_tp_invdiff(const FieldContext& F, i64 trace_bound, bool orbits);

IdealHNF ideal_from_generators(const FieldContext& F, const std::vector<QuadInt>& gens);
IdealHNF ideal_from_element(const FieldContext& F, const QuadInt& x);
IdealHNF ideal_from_element(const FieldContext& F, const QuadRat& x);
IdealHNF ideal_mul(const FieldContext& F, const IdealHNF& I, const IdealHNF& J);
i64 ideal_norm(const IdealHNF& I);
IdealHNF ideal_conj(const FieldContext& F, const IdealHNF& I);
bool ideal_contains(const IdealHNF& I, const QuadInt& x);
bool ideal_divides(const FieldContext& F, const IdealHNF& P, const IdealHNF& M);  // P | M

std::vector<std::pair<i64, int>> factor_integer(i64 n, i64 bound);
std::vector<PrimeIdeal> primes_above(const FieldContext& F, i64 p);
std::vector<PrimeIdeal> primes_below(const FieldContext& F, i64 B);

// prime factorization of an integral ideal
std::vector<std::pair<PrimeIdeal, int>> ideal_factor(const FieldContext& F, const IdealHNF& M);
std::vector<IdealHNF> ideal_divisors(const FieldContext& F, const IdealHNF& M);
mpz_class sigma_ideal(const FieldContext& F, const IdealHNF& M, unsigned r);

std::optional<QuadInt> find_generator(const FieldContext& F, const IdealHNF& M);
QuadRat principal_generator_tp(const FieldContext& F, const IdealHNF& M);
QuadInt principal_generator_tp_int(const FieldContext& F, const IdealHNF& M);

} // namespace hmf
