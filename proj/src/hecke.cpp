#include "hmf/hecke.hpp"

#include <random>

namespace hmf {

QuadInt ideal_index(const FieldContext& F, const IdealHNF& m) {
    QuadInt g = principal_generator_tp_int(F, m);
    return F.reduce_index(F.mul(g, F.eps0));
}

namespace {

mpq_class norm_power(const PrimeIdeal& p, int k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p.norm), static_cast<unsigned long>(k - 1));
    return mpq_class(r);
}

// largest trace bound t such that every index of trace <= t has p x and x / p (when integral) stored
template <class Has>
i64 hecke_trust_bound(const FieldContext& F, const OrbitIndex& idx, const QuadInt& pi, Has has) {
    i64 t = 0;
    std::size_t j = 0;
    const auto& full = idx.full();
    while (j < full.size()) {
        i64 b = full[j].b;
        bool ok = true;
        for (; j < full.size() && full[j].b == b; ++j) {
            const QuadInt& x = full[j];
            if (!has(F.mul(pi, x))) ok = false;
            auto q = F.exact_div(x, pi);
            if (q && !has(*q)) ok = false;
        }
        if (!ok) break;
        t = b;
    }
    return t;
}

} // namespace

FourierExpansion hecke_operator(const FourierExpansion& f, const PrimeIdeal& p) {
    const FieldContext& F = *f.field();
    const QuadInt& pi = p.gen;
    i64 Nt = hecke_trust_bound(F, *f.index(), pi, [&](const QuadInt& y) { return f.has(y); });
    if (Nt == 0)
        throw Error(Errc::InsufficientTruncation, "trace bound " + std::to_string(f.trace_bound()) +
                                                      " too small for the Hecke operator at norm " + std::to_string(p.norm));
    mpq_class npk = norm_power(p, f.weight());
    FourierExpansion r(OrbitIndex::get(f.field(), Nt), f.weight());
    r.const_term() = (1 + npk) * f.const_term();
    const auto& low = r.index()->members();
    for (std::size_t i = 0; i < low.size(); ++i) {
        const QuadInt& x = low[i];
        mpq_class v = f.at(F.mul(pi, x));
        if (auto q = F.exact_div(x, pi)) v += npk * f.at(*q);
        r.coeffs()[i] = v;
    }
    r.provenance = "T(" + to_string(p.ideal) + ")" + f.provenance;
    return r;
}

HeckeMatrix hecke_matrix(const CuspSpace& S, const PrimeIdeal& p) {
    const std::size_t n = S.basis.size();
    HeckeMatrix H{p, QMat(n, n, mpq_class(0)), 0};
    if (n == 0) return H;
    const auto& members = S.basis[0].index()->members();
    for (std::size_t j = 0; j < n; ++j) {
        FourierExpansion t = hecke_operator(S.basis[j], p);
        i64 Nt = t.trace_bound();
        for (std::size_t i = 0; i < n; ++i) {
            const QuadInt& x = members[S.pivots[i]];
            if (x.b > Nt)
                throw Error(Errc::InsufficientTruncation, "pivot at trace " + std::to_string(x.b) +
                                                              " beyond the Hecke image bound " + std::to_string(Nt));
            H.M(i, j) = t.at(x);
        }
        for (const QuadInt& x : t.index()->members()) {
            mpq_class v = 0;
            for (std::size_t i = 0; i < n; ++i) v += H.M(i, j) * S.basis[i].at(x);
            if (v != t.at(x))
                throw Error(Errc::NotStable, "T(" + to_string(p.ideal) + ") of basis vector " + std::to_string(j) +
                                                 " leaves the span at trace " + std::to_string(x.b));
        }
        H.checked_bound = j == 0 ? Nt : std::min(H.checked_bound, Nt);
    }
    return H;
}

NFElem EigenformData::coefficient(const QuadInt& x) const {
    int o = OrbitIndex::get(F, N)->find(x);
    if (o < 0) throw Error(Errc::InsufficientTruncation, "eigenform coefficient beyond the stored bound");
    return coeffs[o];
}

NFElem EigenformData::eigenvalue(const IdealHNF& p) const {
    for (const auto& [P, v] : eigenvalues)
        if (P.ideal == p) return v;
    throw Error(Errc::MissingPrime, "no eigenvalue stored for " + to_string(p));
}

namespace {

QMat combination_matrix(const std::vector<HeckeMatrix>& Ms, const std::vector<long>& w) {
    std::size_t n = Ms[0].M.rows;
    QMat A(n, n, mpq_class(0));
    for (std::size_t t = 0; t < w.size(); ++t)
        for (std::size_t i = 0; i < n * n; ++i) A.a[i] += w[t] * Ms[t].M.a[i];
    return A;
}

bool squarefree(const Poly& p) { return poly_deg(poly_gcd(p, poly_derivative(p))) == 0; }

} // namespace

EigenformData eigenform_for_root(const EigenSystem& sys, const NFElem& theta, const Poly& factor) {
    const CuspSpace& S = sys.space;
    const FieldContext& F = *S.F;
    const NF& K = theta.field();
    QMat A = combination_matrix(sys.matrices, sys.combination);
    auto vs = eigenvectors(A, theta);
    if (vs.size() != 1)
        throw Error(Errc::EigenvalueCheckFailed, "eigenspace of dimension " + std::to_string(vs.size()));
    std::vector<NFElem> v = vs[0];

    EigenformData E;
    E.F = S.F;
    E.k = S.k;
    E.K = K;
    E.minpoly = factor;
    E.theta = theta;
    E.N = S.N;
    const std::size_t n = S.basis.size();
    const Orbits idx = S.basis[0].index();
    auto coeffs_of = [&](const std::vector<NFElem>& c) {
        std::vector<NFElem> out(idx->size(), NFElem(K, mpq_class(0)));
        for (std::size_t o = 0; o < idx->size(); ++o) {
            NFElem s(K, mpq_class(0));
            for (std::size_t i = 0; i < n; ++i)
                if (sgn(S.basis[i].coeffs()[o]) != 0) s = s + c[i] * S.basis[i].coeffs()[o];
            out[o] = s;
        }
        return out;
    };
    QuadInt one_index = ideal_index(F, IdealHNF{1, 0, 1});
    int o1 = idx->find(one_index);
    NFElem lead(K, mpq_class(0));
    for (std::size_t i = 0; i < n; ++i) lead = lead + v[i] * S.basis[i].coeffs()[o1];
    if (lead.is_zero()) throw Error(Errc::EigenvalueCheckFailed, "eigenvector has a(O) = 0");
    NFElem inv = lead.inverse();
    for (auto& c : v) c = c * inv;
    E.coords = v;
    E.coeffs = coeffs_of(v);

    for (const HeckeMatrix& H : sys.matrices) {
        // M v = lambda v
        std::vector<NFElem> w(n, NFElem(K, mpq_class(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(H.M(i, j)) != 0) w[i] = w[i] + v[j] * H.M(i, j);
        std::size_t piv = 0;
        while (v[piv].is_zero()) ++piv;
        NFElem lambda = w[piv] / v[piv];
        for (std::size_t i = 0; i < n; ++i)
            if (w[i] != lambda * v[i])
                throw Error(Errc::EigenvalueCheckFailed, "not an eigenvector of T(" + to_string(H.prime.ideal) + ")");
        // on the Fourier coefficients directly
        const QuadInt& pi = H.prime.gen;
        mpq_class npk = norm_power(H.prime, S.k);
        const auto& full = idx->full();
        for (std::size_t j = 0; j < full.size() && full[j].b <= H.checked_bound; ++j) {
            const QuadInt& x = full[j];
            NFElem lhs = E.coefficient(F.mul(pi, x));
            if (auto q = F.exact_div(x, pi)) lhs = lhs + E.coefficient(*q) * npk;
            if (lhs != lambda * E.coeffs[idx->full_orbit()[j]])
                throw Error(Errc::EigenvalueCheckFailed,
                            "eigen-equation fails for T(" + to_string(H.prime.ideal) + ") at trace " + std::to_string(x.b));
        }
        if (E.coefficient(ideal_index(F, H.prime.ideal)) != lambda)
            throw Error(Errc::EigenvalueCheckFailed, "eigenvalue differs from the normalized coefficient");
        // a(p^2) = a(p)^2 - N(p)^(k-1) where stored
        QuadInt x2 = ideal_index(F, ideal_mul(F, H.prime.ideal, H.prime.ideal));
        if (idx->find(x2) >= 0 && E.coefficient(x2) != lambda * lambda - NFElem(K, npk))
            throw Error(Errc::EigenvalueCheckFailed, "Hecke relation fails at the square of " + to_string(H.prime.ideal));
        E.eigenvalues.emplace_back(H.prime, lambda);
    }
    return E;
}

QMat generic_matrix(const EigenSystem& sys) { return combination_matrix(sys.matrices, sys.combination); }

EigenSystem eigenforms(const Field& Fp, int k, i64 N, i64 max_norm) {
    const FieldContext& F = *Fp;
    EigenSystem sys;
    sys.space = cusp_space(Fp, k, N);
    const std::size_t n = sys.space.basis.size();
    if (n == 0) return sys;
    for (const PrimeIdeal& p : primes_below(F, max_norm)) {
        try {
            sys.matrices.push_back(hecke_matrix(sys.space, p));
        } catch (const Error& e) {
            if (e.code() != Errc::InsufficientTruncation) throw;
        }
    }
    if (sys.matrices.empty()) throw Error(Errc::InsufficientTruncation, "no Hecke matrix fits the trace bound");

    std::mt19937 rng(12345);
    std::uniform_int_distribution<long> dist(-3, 3);
    const std::size_t m = std::min<std::size_t>(3, sys.matrices.size());
    sys.combination.assign(m, 0);
    sys.combination[0] = 1;
    for (int attempt = 0;; ++attempt) {
        QMat A = combination_matrix(sys.matrices, sys.combination);
        sys.charpoly = charpoly(A);
        if (squarefree(sys.charpoly)) break;
        if (attempt == 50) throw Error(Errc::FactorizationFailed, "no generic combination with simple spectrum");
        for (auto& w : sys.combination) w = dist(rng);
        if (std::all_of(sys.combination.begin(), sys.combination.end(), [](long w) { return w == 0; }))
            sys.combination[0] = 1;
    }
    auto factors = factor_real_rooted(sys.charpoly, 4);
    for (const PolyFactor& pf : factors) {
        NF K = std::make_shared<NumberField>(pf.factor);
        sys.forms.push_back(eigenform_for_root(sys, NFElem::generator(K), pf.factor));
    }
    return sys;
}

std::vector<std::pair<IdealHNF, NFElem>> lseries_coeffs(const EigenformData& f, i64 norm_bound) {
    const FieldContext& F = *f.F;
    const NF& K = f.K;
    std::vector<std::pair<IdealHNF, NFElem>> out{{IdealHNF{1, 0, 1}, NFElem(K, mpq_class(1))}};
    for (const PrimeIdeal& P : primes_below(F, norm_bound)) {
        NFElem ap = f.eigenvalue(P.ideal);
        mpq_class npk = norm_power(P, f.k);
        // powers a(P^e) by the recursion
        std::vector<NFElem> pw{NFElem(K, mpq_class(1)), ap};
        std::vector<IdealHNF> pid{IdealHNF{1, 0, 1}, P.ideal};
        i64 nn = P.norm;
        while (nn <= norm_bound / P.norm) {
            nn *= P.norm;
            std::size_t e = pw.size();
            pw.push_back(ap * pw[e - 1] - pw[e - 2] * npk);
            pid.push_back(ideal_mul(F, pid[e - 1], P.ideal));
        }
        std::size_t cur = out.size();
        for (std::size_t i = 0; i < cur; ++i) {
            i64 base = out[i].first.norm();
            i64 pn = 1;
            for (std::size_t e = 1; e < pw.size(); ++e) {
                pn *= P.norm;
                if (base > norm_bound / pn) break;
                out.emplace_back(ideal_mul(F, out[i].first, pid[e]), out[i].second * pw[e]);
            }
        }
    }
    // agreement with the Fourier data where both exist
    const Orbits idx = OrbitIndex::get(f.F, f.N);
    for (const auto& [I, v] : out) {
        QuadInt x = ideal_index(F, I);
        int o = idx->find(x);
        if (o >= 0 && f.coeffs[o] != v)
            throw Error(Errc::EigenvalueCheckFailed, "Dirichlet coefficient at " + to_string(I) + " disagrees with the expansion");
    }
    return out;
}

} // namespace hmf
