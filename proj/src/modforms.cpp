#include "hmf/modforms.hpp"

#include <map>
#include <mutex>

#include "hmf/algebra.hpp"
#include "hmf/hecke.hpp"
#include "hmf/kernels.hpp"

namespace hmf {

// ---------------------------------------------------------------- elliptic oracle

namespace {

mpz_class sigma_int(long n, unsigned r) {
    mpz_class s = 0, p;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), r);
        s += p;
        long e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(e), r);
            s += p;
        }
    }
    return s;
}

std::vector<mpq_class> series_mul(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    std::vector<mpq_class> c(a.size(), mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

} // namespace

std::vector<EllipticQSeries> elliptic_basis(int weight, int n_terms) {
    if (weight < 4 || weight % 2) throw Error(Errc::PreconditionViolated, "elliptic weight must be even and >= 4");
    std::vector<mpq_class> e4(n_terms), e6(n_terms);
    e4[0] = e6[0] = 1;
    for (int n = 1; n < n_terms; ++n) {
        e4[n] = 240 * mpq_class(sigma_int(n, 3));
        e6[n] = -504 * mpq_class(sigma_int(n, 5));
    }
    std::vector<std::vector<mpq_class>> rows;
    for (int b = 0; 6 * b <= weight; ++b) {
        int rest = weight - 6 * b;
        if (rest % 4) continue;
        std::vector<mpq_class> m(n_terms, mpq_class(0));
        m[0] = 1;
        for (int i = 0; i < rest / 4; ++i) m = series_mul(m, e4);
        for (int i = 0; i < b; ++i) m = series_mul(m, e6);
        rows.push_back(m);
    }
    QMat M(rows.size(), static_cast<std::size_t>(n_terms), mpq_class(0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < n_terms; ++j) M(i, j) = rows[i][j];
    auto piv = rref(M);
    std::vector<EllipticQSeries> out;
    for (std::size_t i = 0; i < piv.size(); ++i) {
        EllipticQSeries s{weight, std::vector<mpq_class>(n_terms)};
        for (int j = 0; j < n_terms; ++j) s.c[j] = M(i, j);
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

std::vector<int> leading_positions(const std::vector<EllipticQSeries>& B) {
    std::vector<int> p;
    for (const auto& s : B) {
        int j = 0;
        while (sgn(s.c[j]) == 0) ++j;
        p.push_back(j);
    }
    return p;
}

} // namespace

bool in_elliptic_space(const std::vector<mpq_class>& c, int weight) {
    auto B = elliptic_basis(weight, static_cast<int>(c.size()));
    auto piv = leading_positions(B);
    std::vector<mpq_class> r = c;
    for (std::size_t i = 0; i < B.size(); ++i) {
        mpq_class f = r[piv[i]];
        if (sgn(f) == 0) continue;
        for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * B[i].c[j];
    }
    for (const auto& v : r)
        if (sgn(v) != 0) return false;
    return true;
}

// ---------------------------------------------------------------- Eisenstein series

namespace {

EisensteinSeries build_eisenstein(const Field& Fp, int k, i64 N) {
    const FieldContext& F = *Fp;
    if (k < 2 || k % 2) throw Error(Errc::PreconditionViolated, "Eisenstein weight must be even and >= 2");
    Orbits idx = OrbitIndex::get(Fp, N);
    std::vector<mpq_class> sig(idx->size());
    for (std::size_t i = 0; i < idx->size(); ++i)
        sig[i] = mpq_class(sigma_ideal(F, ideal_from_element(F, idx->members()[i]), static_cast<unsigned>(k - 1)));
    // diagonal of sum sigma q^xi
    std::vector<mpq_class> d(static_cast<std::size_t>(N) + 1, mpq_class(0));
    for (std::size_t j = 0; j < idx->full().size(); ++j) d[idx->full()[j].b] += sig[idx->full_orbit()[j]];

    auto B = elliptic_basis(2 * k, static_cast<int>(N) + 1);
    auto piv = leading_positions(B);
    // 1 + c d lies in the space iff at each non-pivot n:
    //   delta(n) + c d(n) = sum_i (delta(p_i) + c d(p_i)) B_i(n)
    std::vector<mpq_class> lin(N + 1), rhs(N + 1);
    std::vector<bool> is_piv(N + 1, false);
    for (int p : piv) is_piv[p] = true;
    for (i64 n = 0; n <= N; ++n) {
        mpq_class l = d[n], r = -mpq_class(n == 0 ? 1 : 0);
        for (std::size_t i = 0; i < B.size(); ++i) {
            l -= d[piv[i]] * B[i].c[n];
            r += mpq_class(piv[i] == 0 ? 1 : 0) * B[i].c[n];
        }
        lin[n] = l;
        rhs[n] = r;
    }
    std::optional<mpq_class> c;
    for (i64 n = 0; n <= N && !c; ++n)
        if (!is_piv[n] && sgn(lin[n]) != 0) c = rhs[n] / lin[n];
    if (!c) throw Error(Errc::FitInconsistent, "Eisenstein normalization is not determined by the diagonal");
    for (i64 n = 0; n <= N; ++n)
        if (lin[n] * *c != rhs[n])
            throw Error(Errc::FitInconsistent,
                        "weight " + std::to_string(k) + ": diagonal coefficient " + std::to_string(n) + " off the elliptic space");

    EisensteinSeries E;
    E.k = k;
    E.c = *c;
    E.f = FourierExpansion(idx, k);
    E.f.const_term() = 1;
    for (std::size_t i = 0; i < idx->size(); ++i) E.f.coeffs()[i] = *c * sig[i];
    E.f.provenance = "E_" + std::to_string(k);
    if (k <= 30) {
        E.zeta_prediction = 4 / zeta_table(F).get(k);
        if (E.zeta_prediction != E.c)
            throw Error(Errc::CrossCheckFailed, "fitted Eisenstein constant " + E.c.get_str() +
                                                    " disagrees with 4/zeta_F(1-k) = " + E.zeta_prediction.get_str());
    }
    if (k >= 4) {
        // the coset sum over Gamma_inf^+ \ SL2(O) is 4 E_k ([O^x : O_+^x] = 4)
        const Point z{{0.05, 1.0}, {-0.1, 1.2}};
        auto num = eisenstein_numeric(F, k, z, 24);
        auto fv = evaluate_numeric(E.f, z.z1, z.z2);
        double diff = std::abs(num.value - 4.0 * fv.value);
        E.coset_discrepancy = diff / std::abs(num.value);
        if (diff > 10 * (num.tail_estimate + 4 * fv.tail) + 1e-9 * std::abs(num.value))
            throw Error(Errc::NumericCrossCheckFailed, "weight " + std::to_string(k) + ": coset sum differs from 4 E_k by " + std::to_string(diff));
    }
    return E;
}

} // namespace

EisensteinSeries eisenstein(const Field& F, int k, i64 N) {
    static std::mutex mu;
    static std::map<std::tuple<i64, int, i64>, EisensteinSeries> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({F->D, k, N});
        if (it != memo.end()) return it->second;
    }
    EisensteinSeries E = build_eisenstein(F, k, N);
    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(std::make_tuple(F->D, k, N), E).first->second;
}

// ---------------------------------------------------------------- brackets

namespace {

struct ZQ {
    mpz_class a, b;
};

ZQ zq_mul(const FieldContext& F, const ZQ& x, const ZQ& y) {
    return {x.a * y.a - F.omega_norm * (x.b * y.b), x.a * y.b + x.b * y.a + F.D * (x.b * y.b)};
}

mpz_class zq_norm(const FieldContext& F, const ZQ& x) {
    return x.a * x.a + F.D * (x.a * x.b) + F.omega_norm * (x.b * x.b);
}

FormalScalar two_pi_i_pow(i64 D, int e) {
    mpz_class two;
    mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return FormalScalar(mpq_class(two), D, e, e, 0);
}

void check_bracket_inputs(const FourierExpansion& f, const FourierExpansion& g, int nu) {
    if (nu < 0) throw Error(Errc::PreconditionViolated, "bracket order must be >= 0");
    if (f.field()->D != g.field()->D) throw Error(Errc::FieldMismatch, "bracket of forms over different fields");
    if (!f.is_symmetric() || !g.is_symmetric())
        throw Error(Errc::SymmetryViolated, "bracket inputs must be symmetric");
}

} // namespace

Bracket rc_bracket(const FourierExpansion& f, const FourierExpansion& g, int nu) {
    check_bracket_inputs(f, g, nu);
    const FieldContext& F = *f.field();
    const int k1 = f.weight(), k2 = g.weight();
    i64 N = std::min(f.trace_bound(), g.trace_bound());
    FourierExpansion a = f.truncate(N), b = g.truncate(N);
    const OrbitIndex& idx = *a.index();
    // P(u, v) = sum_l (-1)^l binom(k1+nu-1, nu-l) binom(k2+nu-1, l) u^l v^(nu-l)
    std::vector<mpz_class> cl(nu + 1);
    for (int l = 0; l <= nu; ++l) {
        cl[l] = binomial(k1 + nu - 1, nu - l) * binomial(k2 + nu - 1, l);
        if (l % 2) cl[l] = -cl[l];
    }
    auto P = [&](const QuadInt& u, const QuadInt& v) {
        std::vector<ZQ> up(nu + 1), vp(nu + 1);
        up[0] = vp[0] = ZQ{1, 0};
        ZQ uz{u.a, u.b}, vz{v.a, v.b};
        for (int l = 1; l <= nu; ++l) {
            up[l] = zq_mul(F, up[l - 1], uz);
            vp[l] = zq_mul(F, vp[l - 1], vz);
        }
        ZQ s{0, 0};
        for (int l = 0; l <= nu; ++l) {
            ZQ t = zq_mul(F, up[l], vp[nu - l]);
            s.a += cl[l] * t.a;
            s.b += cl[l] * t.b;
        }
        return zq_norm(F, s);
    };
    // norm of P(xi1, xi2) = (-1)^nu D^-nu N(P(x1, x2))
    mpz_class Dnu;
    mpz_ui_pow_ui(Dnu.get_mpz_t(), static_cast<unsigned long>(F.D), static_cast<unsigned long>(nu));
    mpq_class norm_factor(nu % 2 ? -1 : 1, 1);
    norm_factor /= mpq_class(Dnu);
    const QuadInt zero{0, 0};

    FourierExpansion r(a.index(), k1 + k2 + 2 * nu);
    r.const_term() = nu == 0 ? mpq_class(a.const_term() * b.const_term()) : mpq_class(0);
    const auto& full = idx.full();
    const auto& forb = idx.full_orbit();
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const QuadInt& x = idx.members()[i];
        mpz_class nx = 0;
        mpq_class acc = 0;
        if (sgn(a.const_term()) != 0) acc += a.const_term() * b.coeffs()[i] * mpq_class(P(zero, x));
        if (sgn(b.const_term()) != 0) acc += b.const_term() * a.coeffs()[i] * mpq_class(P(x, zero));
        std::size_t end = idx.full_end(x.b - 1);
        for (std::size_t j = 0; j < end; ++j) {
            const mpq_class& av = a.coeffs()[forb[j]];
            if (sgn(av) == 0) continue;
            QuadInt y = x - full[j];
            if (!F.is_index(y)) continue;
            const mpq_class& bv = b.coeffs()[idx.find(y)];
            if (sgn(bv) == 0) continue;
            acc += av * bv * mpq_class(P(full[j], y));
        }
        r.coeffs()[i] = acc * norm_factor;
    }
    if (!r.is_symmetric()) throw Error(Errc::SymmetryViolated, "bracket output is not symmetric");
    r.provenance = "[" + (f.provenance.empty() ? "f" : f.provenance) + "," + (g.provenance.empty() ? "g" : g.provenance) +
                   "]_" + std::to_string(nu);
    return {r, two_pi_i_pow(F.D, 2 * nu)};
}

Bracket rc_bracket_literal(const FourierExpansion& f, const FourierExpansion& g, int nu) {
    check_bracket_inputs(f, g, nu);
    const FieldContext& F = *f.field();
    const int k1 = f.weight(), k2 = g.weight();
    std::optional<RawExpansion> sum;
    for (int l1 = 0; l1 <= nu; ++l1)
        for (int l2 = 0; l2 <= nu; ++l2) {
            mpz_class c = binomial(k1 + nu - 1, nu - l1) * binomial(k1 + nu - 1, nu - l2) *
                          binomial(k2 + nu - 1, l1) * binomial(k2 + nu - 1, l2);
            if ((l1 + l2) % 2) c = -c;
            RawExpansion t = raw_scale(raw_mul(derivative(f, l1, l2), derivative(g, nu - l1, nu - l2)), mpq_class(c));
            sum = sum ? raw_add(*sum, t) : t;
        }
    Bracket out{compress(*sum, k1 + k2 + 2 * nu), sum->multiplier};
    if (!out.f.is_symmetric()) throw Error(Errc::SymmetryViolated, "bracket output is not symmetric");
    if (out.multiplier != two_pi_i_pow(F.D, 2 * nu))
        throw Error(Errc::PreconditionViolated, "unexpected bracket multiplier");
    return out;
}

// ---------------------------------------------------------------- cusp space

namespace {

// reduced row echelon form of the coefficient rows; returns pivots
std::vector<std::size_t> echelon(std::vector<std::vector<mpq_class>>& rows, std::size_t ncols) {
    QMat M(rows.size(), ncols, mpq_class(0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < ncols; ++j) M(i, j) = rows[i][j];
    auto piv = rref(M);
    rows.assign(piv.size(), std::vector<mpq_class>(ncols));
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t j = 0; j < ncols; ++j) rows[i][j] = M(i, j);
    return piv;
}

std::size_t rank_of(const std::vector<FourierExpansion>& gens, i64 N) {
    if (gens.empty()) return 0;
    Orbits idx = OrbitIndex::get(gens[0].field(), N);
    std::vector<std::vector<mpq_class>> rows;
    for (const auto& g : gens) {
        std::vector<mpq_class> r(idx->size());
        for (std::size_t i = 0; i < idx->size(); ++i) r[i] = g.at(idx->members()[i]);
        rows.push_back(r);
    }
    return echelon(rows, idx->size()).size();
}

CuspSpace build_cusp_space(const Field& Fp, int k, i64 N) {
    if (k < 6 || k % 2) throw Error(Errc::PreconditionViolated, "cusp space weight must be even and >= 6");
    std::vector<FourierExpansion> gens;
    std::vector<std::string> names;
    for (int nu = 1; 2 * nu + 4 <= k; ++nu)
        for (int a = 2; a + 2 + 2 * nu <= k; a += 2) {
            int b = k - a - 2 * nu;
            Bracket br = rc_bracket(eisenstein(Fp, a, N).f, eisenstein(Fp, b, N).f, nu);
            gens.push_back(br.f);
            names.push_back("[E_" + std::to_string(a) + ",E_" + std::to_string(b) + "]_" + std::to_string(nu));
        }
    FourierExpansion Ek = eisenstein(Fp, k, N).f;
    for (int a = 2; 2 * a <= k; a += 2) {
        int b = k - a;
        FourierExpansion p = sub(mul(eisenstein(Fp, a, N).f, eisenstein(Fp, b, N).f), Ek);
        if (!p.is_cuspidal()) throw Error(Errc::PreconditionViolated, "product minus Eisenstein is not cuspidal");
        gens.push_back(p);
        names.push_back("E_" + std::to_string(a) + "*E_" + std::to_string(b) + "-E_" + std::to_string(k));
    }
    std::size_t r_full = rank_of(gens, N);
    std::size_t r_low = rank_of(gens, std::max<i64>(1, N - 5));
    if (r_full != r_low)
        throw Error(Errc::InsufficientTruncation, "cusp space rank " + std::to_string(r_low) + " at N-5 but " +
                                                      std::to_string(r_full) + " at N=" + std::to_string(N));

    Orbits idx = OrbitIndex::get(Fp, N);
    std::vector<std::vector<mpq_class>> rows;
    CuspSpace S;
    S.F = Fp;
    S.k = k;
    S.N = N;
    // independent generators in order
    {
        std::vector<FourierExpansion> chosen;
        for (std::size_t g = 0; g < gens.size(); ++g) {
            chosen.push_back(gens[g]);
            if (rank_of(chosen, N) < chosen.size()) chosen.pop_back();
            else S.generators.push_back(names[g]);
        }
        for (const auto& g : chosen) rows.push_back(g.coeffs());
    }
    auto piv = echelon(rows, idx->size());
    for (std::size_t i = 0; i < piv.size(); ++i) {
        FourierExpansion b(idx, k);
        b.coeffs() = rows[i];
        b.provenance = "basis_" + std::to_string(i);
        S.basis.push_back(std::move(b));
        S.pivots.push_back(static_cast<int>(piv[i]));
    }
    return S;
}

} // namespace

std::vector<mpq_class> CuspSpace::coordinates(const FourierExpansion& g) const {
    std::vector<mpq_class> c(basis.size());
    if (basis.empty()) {
        if (!g.is_zero()) throw Error(Errc::NotInSpan, "nonzero form in a zero space");
        return c;
    }
    if (!g.is_cuspidal()) throw Error(Errc::NotInSpan, "form is not cuspidal");
    i64 M = std::min(N, g.trace_bound());
    Orbits idx = OrbitIndex::get(F, M);
    const auto& members = basis[0].index()->members();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const QuadInt& x = members[pivots[i]];
        if (x.b > M) throw Error(Errc::InsufficientTruncation, "pivot beyond the form's trace bound");
        c[i] = g.at(x);
    }
    for (const QuadInt& x : idx->members()) {
        mpq_class v = 0;
        for (std::size_t i = 0; i < basis.size(); ++i) v += c[i] * basis[i].at(x);
        if (v != g.at(x)) throw Error(Errc::NotInSpan, "residual at trace " + std::to_string(x.b));
    }
    return c;
}

CuspSpace cusp_space(const Field& F, int k, i64 N) {
    static std::mutex mu;
    static std::map<std::tuple<i64, int, i64>, CuspSpace> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({F->D, k, N});
        if (it != memo.end()) return it->second;
    }
    CuspSpace S = build_cusp_space(F, k, N);
    // stability under the smallest prime
    if (!S.basis.empty()) hecke_matrix(S, primes_below(*F, 4 * F->D).front());
    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(std::make_tuple(F->D, k, N), S).first->second;
}

} // namespace hmf
