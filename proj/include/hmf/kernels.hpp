#pragma once

// Numeric evaluation of the coset and lattice sums.

#include <complex>
#include <vector>

#include "hmf/quadfield.hpp"

namespace hmf {

using cplx = std::complex<double>;

struct CosetRep {
    QuadInt c, d;
    double c1 = 0, c2 = 0, d1 = 0, d2 = 0;  // embeddings
    double height = 0;                       // max(|c|,|d|) * max(|c'|,|d'|)
};

// Bottom rows (c, d) of Gamma_inf^+ \ SL2(O): coprime pairs modulo simultaneous scaling by
// totally positive units, with height <= B. The representative is balanced: the ratio of the two
// maxima lies in [eps0^-2, eps0^2), ties broken by coordinates.
std::vector<CosetRep> coset_reps(const FieldContext& F, double B);
// canonical representative of the scaling class of (c, d)
std::pair<QuadInt, QuadInt> reduce_coset(const FieldContext& F, QuadInt c, QuadInt d);

struct KernelEvalReport {
    cplx value;
    cplx value_half;  // same sum with height bound B/2
    double height_bound = 0;
    double tail_estimate = 0;  // |value - value_half|
    bool region_ok = true;
    std::size_t terms = 0;
};

struct Point {
    cplx z1, z2;
};

// sum over cosets of N(cz+d)^-k
KernelEvalReport eisenstein_numeric(const FieldContext& F, int k, Point z, double B);

// sum over x in O of N(w + x)^-s by the exponential side of the Lipschitz formula, with w balanced
// by units first; switches to a direct lattice sum when Im w is too small for the exponential side
cplx lipschitz_inner(const FieldContext& F, cplx s, Point w);

// (1/2) c^-2 sum over A \ Gamma of (gamma z)^-s j(gamma, z)^-k
KernelEvalReport cohen_kernel_numeric(const FieldContext& F, int k, cplx s, Point z, double B);

// sum over coset pairs with c_{gamma delta^-1} >> 0
KernelEvalReport double_eisenstein_numeric(const FieldContext& F, int k, cplx s, cplx w, Point z, double B);

struct LipschitzReport {
    cplx lhs, rhs;
    double diff = 0;
    double lhs_tail = 0;  // |lhs(L) - lhs(L/2)|
    double rhs_tail = 0;  // contribution of the last trace layer
    double rhs_next = 0;  // |rhs(T+1) - rhs(T)|
};

LipschitzReport lipschitz_check(const FieldContext& F, cplx s, Point z, int lattice_bound, int xi_bound);

// gamma z and N(j(gamma, z)) for gamma = [[a, b], [c, d]] over O
struct Moebius {
    QuadInt a, b, c, d;
};
Point act(const FieldContext& F, const Moebius& g, Point z);
cplx automorphy_norm(const FieldContext& F, const Moebius& g, Point z);
bool in_sl2(const FieldContext& F, const Moebius& g);

// region guards
bool cohen_region(int k, cplx s);
bool double_eisenstein_region(int k, cplx s, cplx w);

} // namespace hmf
