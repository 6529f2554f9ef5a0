#pragma once

// Truncated Fourier expansions of parallel-weight Hilbert modular forms.
//
// An index is an integral x with x > 0 > x'; it stands for xi = x / sqrt(D), a totally positive
// element of the inverse different with Tr(xi) = x.b. The trace bound N keeps every index with
// x.b <= N. Modular objects store one coefficient per unit orbit; derivatives are stored per index.

#include <complex>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "hmf/quadfield.hpp"
#include "hmf/scalars.hpp"

namespace hmf {

// Orbits of indices under the totally positive units, restricted to the trace box.
class OrbitIndex {
public:
    OrbitIndex(Field F, i64 N);
    // shared per (D, N)
    static std::shared_ptr<const OrbitIndex> get(const Field& F, i64 N);

    const Field& field() const { return F_; }
    i64 trace_bound() const { return N_; }
    std::size_t size() const { return low_.size(); }
    // smallest-trace member of each orbit, in the storage order
    const std::vector<QuadInt>& members() const { return low_; }
    // canonical (unit-reduced) representative of each orbit
    const std::vector<QuadInt>& reps() const { return reps_; }
    const std::vector<QuadInt>& full() const { return full_; }
    const std::vector<int>& full_orbit() const { return full_orbit_; }
    // orbit position of an arbitrary index, -1 if the orbit misses the box
    int find(const QuadInt& x) const;
    // position of the orbit of the conjugate
    int conj_pos(int i) const { return conj_[i]; }
    // first position in full() with trace > t
    std::size_t full_end(i64 t) const;

private:
    Field F_;
    i64 N_;
    std::vector<QuadInt> low_, reps_, full_;
    std::vector<int> full_orbit_, conj_;
    std::vector<std::size_t> trace_start_;
    std::unordered_map<QuadInt, int, QuadIntHash> pos_;
};

using Orbits = std::shared_ptr<const OrbitIndex>;

class RawExpansion;

class FourierExpansion {
public:
    FourierExpansion() = default;
    FourierExpansion(Orbits idx, int weight);
    static FourierExpansion constant(const Field& F, i64 N, const mpq_class& c);

    const Field& field() const { return idx_->field(); }
    const Orbits& index() const { return idx_; }
    int weight() const { return weight_; }
    i64 trace_bound() const { return idx_->trace_bound(); }
    const mpq_class& const_term() const { return c0_; }
    mpq_class& const_term() { return c0_; }
    const std::vector<mpq_class>& coeffs() const { return a_; }
    std::vector<mpq_class>& coeffs() { return a_; }
    // coefficient at an arbitrary index; throws InsufficientTruncation if its orbit is not stored
    const mpq_class& at(const QuadInt& x) const;
    bool has(const QuadInt& x) const { return idx_->find(x) >= 0; }
    bool is_cuspidal() const { return sgn(c0_) == 0; }
    bool is_zero() const;
    bool is_symmetric() const;

    FourierExpansion truncate(i64 N) const;
    std::string provenance;

private:
    Orbits idx_;
    int weight_ = 0;
    mpq_class c0_ = 0;
    std::vector<mpq_class> a_;
};

FourierExpansion add(const FourierExpansion& f, const FourierExpansion& g);
FourierExpansion sub(const FourierExpansion& f, const FourierExpansion& g);
FourierExpansion scale(const FourierExpansion& f, const mpq_class& c);
bool equals_upto(const FourierExpansion& f, const FourierExpansion& g, i64 N);
FourierExpansion mul(const FourierExpansion& f, const FourierExpansion& g);

// coefficients c(0..N) of the restriction to z1 = z2
std::vector<mpq_class> diagonal_restriction(const FourierExpansion& f);

// Non-modular intermediates: one coefficient in Q(sqrt D) per index.
class RawExpansion {
public:
    RawExpansion() = default;
    RawExpansion(Field F, i64 N);
    const Field& field() const { return F_; }
    i64 trace_bound() const { return N_; }
    const std::vector<QuadInt>& indices() const { return idx_; }
    const std::vector<QuadRat>& coeffs() const { return c_; }
    std::vector<QuadRat>& coeffs() { return c_; }
    QuadRat& const_term() { return c0_; }
    const QuadRat& const_term() const { return c0_; }
    const QuadRat& at(const QuadInt& x) const;
    FormalScalar multiplier;

private:
    Field F_;
    i64 N_ = 0;
    std::vector<QuadInt> idx_;
    std::unordered_map<QuadInt, std::size_t, QuadIntHash> pos_;
    std::vector<QuadRat> c_;
    QuadRat c0_{0, 0};
};

// a(xi) xi^l1 xi'^l2 with multiplier (2 pi i)^(l1+l2)
RawExpansion derivative(const FourierExpansion& f, int l1, int l2);
RawExpansion raw_mul(const RawExpansion& f, const RawExpansion& g);
RawExpansion raw_add(const RawExpansion& f, const RawExpansion& g);  // multipliers must agree
RawExpansion raw_scale(const RawExpansion& f, const mpq_class& c);
// back to orbit storage; SymmetryViolated if not unit invariant or not rational
FourierExpansion compress(const RawExpansion& f, int weight);

struct NumericValue {
    std::complex<double> value;
    double tail = 0;
};

// f(z) with z = (z1, z2) in H^2; tail from the coefficient growth seen in the stored range
NumericValue evaluate_numeric(const FourierExpansion& f, std::complex<double> z1, std::complex<double> z2,
                              double tolerance = -1);
// includes the multiplier
NumericValue evaluate_numeric(const RawExpansion& f, std::complex<double> z1, std::complex<double> z2);

// numeric xi and xi' of an index
std::pair<double, double> xi_embeddings(const FieldContext& F, const QuadInt& x);

std::string to_json(const FourierExpansion& f);
FourierExpansion expansion_from_json(const Field& F, const std::string& text);

} // namespace hmf
