#pragma once

#include <string>
#include <vector>

#include "hmf/fourier.hpp"

namespace hmf {

struct EllipticQSeries {
    int weight = 0;
    std::vector<mpq_class> c;  // c[0..n_terms-1]
};

// reduced echelon basis of M_weight(SL2(Z)) from monomials in E4, E6
std::vector<EllipticQSeries> elliptic_basis(int weight, int n_terms);
// coordinates of c in the echelon basis if it lies in the space (all coefficients checked)
bool in_elliptic_space(const std::vector<mpq_class>& c, int weight);

struct EisensteinSeries {
    int k = 0;
    mpq_class c;  // a(xi) = c * sigma_{k-1}((xi) d)
    FourierExpansion f;
    // 4 / zeta_F(1-k) from the zeta table; equals c when the cross-check passes
    mpq_class zeta_prediction;
    // relative |coset sum - 4 E_k| at a test point (k >= 4), -1 if not checked
    double coset_discrepancy = -1;
};

// normalized 1 + c_k sum sigma_{k-1} q^xi, c_k fitted against the elliptic diagonal oracle
// (memoized per (D, k, N))
EisensteinSeries eisenstein(const Field& F, int k, i64 N);

struct Bracket {
    FourierExpansion f;       // arithmetic part, rational
    FormalScalar multiplier;  // (2 pi i)^(2 nu)
};

// nu-th Rankin-Cohen bracket at parallel (nu, nu) by the norm form of the binomial polynomial
Bracket rc_bracket(const FourierExpansion& f, const FourierExpansion& g, int nu);
// same, literally as a sum of derivative products (slow; used as an oracle)
Bracket rc_bracket_literal(const FourierExpansion& f, const FourierExpansion& g, int nu);

struct CuspSpace {
    Field F;
    int k = 0;
    i64 N = 0;
    std::vector<FourierExpansion> basis;   // reduced echelon form
    std::vector<int> pivots;               // orbit positions
    std::vector<std::string> generators;   // provenance of the independent generators used
    bool span_only = true;                 // the span of the constructions; may be a proper subspace
    std::vector<mpq_class> coordinates(const FourierExpansion& g) const;  // NotInSpan if residual != 0
};

// span of [E_a, E_b]_nu (nu >= 1) and E_a E_b - E_k; memoized per (D, k, N)
CuspSpace cusp_space(const Field& F, int k, i64 N);

} // namespace hmf
