#pragma once

// Completed double Eisenstein series at the bracket-reachable points, their spectral
// coefficients c_f(s, w) = Lambda(f, s) Lambda(f, w) / <f, f>, and the identities they satisfy.

#include <optional>
#include <string>
#include <vector>

#include "hmf/hecke.hpp"
#include "hmf/modforms.hpp"

namespace hmf {

struct GridPoint {
    int k1 = 0, k2 = 0, nu = 0;
    int s = 0, w = 0;       // (k1 + nu, nu + 1)
    bool interior = false;  // strictly inside the convergence region (k1, k2 >= 4)
};

// all (k1, k2, nu) with k1, k2 even >= 2, nu >= 1, k1 + k2 + 2 nu = k
std::vector<GridPoint> grid(int k);

struct GridEntry {
    int k = 0;
    GridPoint p;
    FourierExpansion expansion;  // [E_k1, E_k2]_nu of the normalized series, rational
    FormalScalar multiplier;     // E* = multiplier * expansion
};

// bracket_factor is the rational scaling turning the normalized bracket into the double Eisenstein
// series (exposed for sensitivity tests)
mpq_class bracket_factor(int k1, int k2, int nu);
GridEntry estar_entry(const Field& F, int k1, int k2, int nu, i64 N, ZetaTable* table = nullptr);

// x * monomial with x in a Hecke field; the rational part of the FormalScalar lives in x
struct CValue {
    NFElem x;
    FormalScalar monomial;
    CValue() = default;
    CValue(NFElem v, const FormalScalar& m);
    CValue operator*(const CValue& o) const;
    CValue operator/(const CValue& o) const;
    CValue conj2() const { return CValue(x.conj2(), monomial); }
    bool is_zero() const { return x.is_zero(); }
    bool trivial_monomial() const { return monomial.is_rational(); }
    bool operator==(const CValue& o) const;
    bool operator!=(const CValue& o) const { return !(*this == o); }
    std::string to_string() const;
};

// coefficient of f in the entry; f must belong to sys (left eigenvector of the generic combination
// for f.theta). The full decomposition is checked in project().
CValue project_onto(const GridEntry& e, const EigenSystem& sys, const EigenformData& f);
// c_f for every form of sys; NotInSpan unless expansion = sum over forms of Tr(c_f f) exactly
std::vector<CValue> project(const GridEntry& e, const EigenSystem& sys);

struct CoefficientMatrix {
    Field F;
    int k = 0;
    i64 N = 0;
    EigenSystem sys;
    std::vector<GridEntry> entries;
    std::vector<std::vector<CValue>> c;  // c[entry][form]
};

CoefficientMatrix coefficient_matrix(const Field& F, int k, i64 N, ZetaTable* table = nullptr);

// images of (s, w) under s -> k - s and (s, w) -> (w, s)
std::vector<std::pair<int, int>> funceq_orbit(int k, int s, int w);

struct IdentityCheck {
    std::string description;
    bool pass = false;
};

struct FunceqReport {
    std::vector<IdentityCheck> checks;
    bool pass = true;
};
FunceqReport funceq_check(const CoefficientMatrix& M);

// c_f(e, o) for even e <= k/2 and odd o <= k/2 after closure under the functional equations
struct ParityTable {
    std::vector<int> evens, odds;
    std::vector<std::vector<std::optional<CValue>>> cell;  // [even][odd]
};
ParityTable parity_table(const CoefficientMatrix& M, std::size_t form);

struct LambdaRatios {
    int even_anchor = 0, odd_anchor = 0;
    std::vector<std::pair<int, CValue>> even, odd;  // lambda(s) / lambda(anchor)
    CValue scale;                                   // c_f(even_anchor, odd_anchor)
};
LambdaRatios factor_lambda(const CoefficientMatrix& M, std::size_t form, int even_anchor = 0, int odd_anchor = 0);

struct Rank1Report {
    std::vector<IdentityCheck> minors;
    std::vector<LambdaRatios> lambdas;  // per form
    bool pass = true;
};
// GridTooSparse if no 2x2 minor is available
Rank1Report rank1_check(const CoefficientMatrix& M);

struct RationalityReport {
    std::vector<IdentityCheck> entries;
    std::vector<IdentityCheck> galois;
    bool uniform_constant = false;  // every entry carries the same nontrivial monomial
    std::string diagnostic;
    bool pass = true;
};
RationalityReport rationality_check(const CoefficientMatrix& M);

} // namespace hmf
