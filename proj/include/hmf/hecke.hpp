#pragma once

#include <map>
#include <vector>

#include "hmf/algebra.hpp"
#include "hmf/modforms.hpp"

namespace hmf {

// index x with (x) = m for a principal ideal m: x = g * eps0 with g totally positive
QuadInt ideal_index(const FieldContext& F, const IdealHNF& m);

// A'(m) = A(p m) + N(p)^(k-1) A(m / p); the output keeps the largest trace bound for which
// every lookup succeeded (InsufficientTruncation if that is zero)
FourierExpansion hecke_operator(const FourierExpansion& f, const PrimeIdeal& p);

struct HeckeMatrix {
    PrimeIdeal prime;
    QMat M;        // T(b_j) = sum_i M(i, j) b_i
    i64 checked_bound = 0;  // trace bound on which the residual was verified
};

// NotStable if T(basis) leaves the span on the verified range
HeckeMatrix hecke_matrix(const CuspSpace& S, const PrimeIdeal& p);

struct EigenformData {
    Field F;
    int k = 0;
    NF K;                          // Hecke field, generated by a root of the factor below
    Poly minpoly;                  // irreducible factor of the generic combination
    NFElem theta;                  // eigenvalue of the generic combination, in K
    std::vector<NFElem> coords;    // over the cusp basis, normalized so that a(O) = 1
    std::vector<NFElem> coeffs;    // Fourier coefficients per orbit of the cusp space storage
    i64 N = 0;
    std::vector<std::pair<PrimeIdeal, NFElem>> eigenvalues;
    NFElem coefficient(const QuadInt& x) const;  // InsufficientTruncation outside the box
    NFElem eigenvalue(const IdealHNF& p) const;  // MissingPrime
};

struct EigenSystem {
    CuspSpace space;
    std::vector<HeckeMatrix> matrices;
    std::vector<long> combination;  // integer weights of the generic combination
    Poly charpoly;                  // of the generic combination
    std::vector<EigenformData> forms;
};

// sum of the Hecke matrices with the weights of the generic combination
QMat generic_matrix(const EigenSystem& sys);

// primitive forms of the constructed cusp space; eigen-equation verified on every stored
// coefficient for every prime of norm <= max_norm whose Hecke matrix is available
EigenSystem eigenforms(const Field& F, int k, i64 N, i64 max_norm = 25);

// eigenform for an explicit eigenvalue theta of the generic combination (theta in any field
// containing a root of the factor); used for Galois-conjugate forms
EigenformData eigenform_for_root(const EigenSystem& sys, const NFElem& theta, const Poly& factor);

// Dirichlet coefficients a_f(m) for ideals of norm <= norm_bound, by multiplicativity
std::vector<std::pair<IdealHNF, NFElem>> lseries_coeffs(const EigenformData& f, i64 norm_bound);

} // namespace hmf
