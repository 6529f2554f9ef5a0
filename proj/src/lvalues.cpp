#include "hmf/lvalues.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hmf {

std::vector<GridPoint> grid(int k) {
    if (k < 8 || k % 2 != 0) throw Error(Errc::PreconditionViolated, "grid needs an even weight >= 8");
    std::vector<GridPoint> out;
    for (int nu = 1; 2 * nu + 4 <= k; ++nu)
        for (int k1 = 2; k1 + 2 + 2 * nu <= k; k1 += 2) {
            GridPoint p;
            p.k1 = k1;
            p.k2 = k - k1 - 2 * nu;
            p.nu = nu;
            p.s = k1 + nu;
            p.w = nu + 1;
            p.interior = p.k1 >= 4 && p.k2 >= 4;
            out.push_back(p);
        }
    return out;
}

mpq_class bracket_factor(int k1, int k2, int nu) {
    // 2 * (1/4) * (G(k1) G(nu+1) / G(k1+nu))^2 * (G(k2) / G(k2+nu))^2 * 4^2; the last factor converts
    // the normalized series into coset sums
    mpq_class a(gamma_int(k1) * gamma_int(nu + 1), gamma_int(k1 + nu));
    mpq_class b(gamma_int(k2), gamma_int(k2 + nu));
    a.canonicalize();
    b.canonicalize();
    return mpq_class(8) * a * a * b * b;
}

GridEntry estar_entry(const Field& F, int k1, int k2, int nu, i64 N, ZetaTable* table) {
    if (k1 < 2 || k2 < 2 || k1 % 2 || k2 % 2 || nu < 1)
        throw Error(Errc::PreconditionViolated, "need even k1, k2 >= 2 and nu >= 1");
    GridEntry e;
    e.k = k1 + k2 + 2 * nu;
    e.p.k1 = k1;
    e.p.k2 = k2;
    e.p.nu = nu;
    e.p.s = k1 + nu;
    e.p.w = nu + 1;
    e.p.interior = k1 >= 4 && k2 >= 4;
    const auto& E1 = eisenstein(F, k1, N);
    const auto& E2 = eisenstein(F, k2, N);
    Bracket br = rc_bracket(E1.f, E2.f, nu);
    if (!br.f.is_cuspidal()) throw Error(Errc::CrossCheckFailed, "bracket has a constant term");
    e.expansion = br.f;
    e.expansion.provenance = "[E" + std::to_string(k1) + ",E" + std::to_string(k2) + "]_" + std::to_string(nu);
    // 1 - w + s and 1 - w + k - s are k1 and k2 here, so alpha never meets an odd argument
    FormalScalar alpha = alpha_constant(*F, e.k, e.p.s, e.p.w, table);
    e.multiplier = alpha * br.multiplier * bracket_factor(k1, k2, nu);
    return e;
}

// ---------------------------------------------------------------- CValue

CValue::CValue(NFElem v, const FormalScalar& m) {
    if (m.is_zero() || v.is_zero()) {
        x = NFElem(v.field(), mpq_class(0));
        monomial = FormalScalar::one(m.D());
        return;
    }
    x = v * m.q();
    monomial = m.monomial();
}

CValue CValue::operator*(const CValue& o) const { return CValue(x * o.x, monomial * o.monomial); }

CValue CValue::operator/(const CValue& o) const { return CValue(x / o.x, monomial * o.monomial.inverse()); }

bool CValue::operator==(const CValue& o) const {
    if (x != o.x) return false;
    return x.is_zero() || monomial == o.monomial;
}

std::string CValue::to_string() const {
    std::string v = x.to_string();
    if (monomial.is_rational()) return v;
    return "(" + v + ")*" + monomial.to_string();
}

// ---------------------------------------------------------------- projection

namespace {

QMat transpose(const QMat& A) {
    QMat T(A.cols, A.rows, mpq_class(0));
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
}

NFElem raw_coordinate(const std::vector<mpq_class>& y, const EigenSystem& sys, const EigenformData& f) {
    auto us = eigenvectors(transpose(generic_matrix(sys)), f.theta);
    if (us.size() != 1) throw Error(Errc::EigenvalueCheckFailed, "left eigenspace is not one-dimensional");
    const auto& u = us[0];
    const NF& K = f.K;
    NFElem num(K, mpq_class(0)), den(K, mpq_class(0));
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (sgn(y[i]) != 0) num = num + u[i] * y[i];
        den = den + u[i] * f.coords[i];
    }
    if (den.is_zero()) throw Error(Errc::EigenvalueCheckFailed, "left and right eigenvectors are orthogonal");
    return num / den;
}

} // namespace

CValue project_onto(const GridEntry& e, const EigenSystem& sys, const EigenformData& f) {
    auto y = sys.space.coordinates(e.expansion);
    return CValue(raw_coordinate(y, sys, f), e.multiplier);
}

std::vector<CValue> project(const GridEntry& e, const EigenSystem& sys) {
    if (e.expansion.index() != sys.space.basis.at(0).index())
        throw Error(Errc::PreconditionViolated, "entry and eigenforms use different trace boxes");
    auto y = sys.space.coordinates(e.expansion);
    std::vector<NFElem> raw;
    for (const auto& f : sys.forms) raw.push_back(raw_coordinate(y, sys, f));
    // expansion = sum over forms of Tr(c_f f), coefficientwise
    const auto& a = e.expansion.coeffs();
    for (std::size_t o = 0; o < a.size(); ++o) {
        mpq_class s = 0;
        for (std::size_t j = 0; j < sys.forms.size(); ++j) s += (raw[j] * sys.forms[j].coeffs[o]).trace();
        if (s != a[o]) throw Error(Errc::NotInSpan, "eigenform decomposition leaves a residual at orbit " + std::to_string(o));
    }
    std::vector<CValue> out;
    for (auto& r : raw) out.emplace_back(r, e.multiplier);
    return out;
}

CoefficientMatrix coefficient_matrix(const Field& F, int k, i64 N, ZetaTable* table) {
    CoefficientMatrix M;
    M.F = F;
    M.k = k;
    M.N = N;
    M.sys = eigenforms(F, k, N);
    if (M.sys.forms.empty()) throw Error(Errc::PreconditionViolated, "no cusp forms of weight " + std::to_string(k));
    for (const GridPoint& p : grid(k)) {
        M.entries.push_back(estar_entry(F, p.k1, p.k2, p.nu, N, table));
        M.c.push_back(project(M.entries.back(), M.sys));
    }
    return M;
}

// ---------------------------------------------------------------- functional equations

std::vector<std::pair<int, int>> funceq_orbit(int k, int s, int w) {
    std::set<std::pair<int, int>> seen{{s, w}};
    std::vector<std::pair<int, int>> todo{{s, w}};
    while (!todo.empty()) {
        auto [a, b] = todo.back();
        todo.pop_back();
        for (auto n : {std::pair{k - a, b}, std::pair{b, a}})
            if (seen.insert(n).second) todo.push_back(n);
    }
    return {seen.begin(), seen.end()};
}

namespace {

std::string label(const GridEntry& e) {
    std::ostringstream os;
    os << "(" << e.p.s << "," << e.p.w << ") from (" << e.p.k1 << "," << e.p.k2 << "," << e.p.nu << ")";
    return os.str();
}

} // namespace

FunceqReport funceq_check(const CoefficientMatrix& M) {
    FunceqReport r;
    for (std::size_t i = 0; i < M.entries.size(); ++i) {
        auto orb = funceq_orbit(M.k, M.entries[i].p.s, M.entries[i].p.w);
        for (std::size_t j = i + 1; j < M.entries.size(); ++j) {
            std::pair<int, int> sw{M.entries[j].p.s, M.entries[j].p.w};
            if (std::find(orb.begin(), orb.end(), sw) == orb.end()) continue;
            for (std::size_t f = 0; f < M.sys.forms.size(); ++f) {
                IdentityCheck c;
                c.description = "form " + std::to_string(f) + ": c" + label(M.entries[i]) + " = c" + label(M.entries[j]);
                c.pass = M.c[i][f] == M.c[j][f];
                r.pass = r.pass && c.pass;
                r.checks.push_back(c);
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------- rank one

ParityTable parity_table(const CoefficientMatrix& M, std::size_t form) {
    ParityTable t;
    const int k = M.k;
    for (int e = 2; e <= k / 2; e += 2) t.evens.push_back(e);
    for (int o = 3; o <= k / 2; o += 2) t.odds.push_back(o);
    t.cell.assign(t.evens.size(), std::vector<std::optional<CValue>>(t.odds.size()));
    for (std::size_t i = 0; i < M.entries.size(); ++i) {
        int s = M.entries[i].p.s, w = M.entries[i].p.w;
        int e = s % 2 == 0 ? s : w, o = s % 2 == 0 ? w : s;
        e = std::min(e, k - e);
        o = std::min(o, k - o);
        auto ei = std::find(t.evens.begin(), t.evens.end(), e) - t.evens.begin();
        auto oi = std::find(t.odds.begin(), t.odds.end(), o) - t.odds.begin();
        if (ei == static_cast<long>(t.evens.size()) || oi == static_cast<long>(t.odds.size())) continue;
        auto& cell = t.cell[ei][oi];
        if (!cell) cell = M.c[i][form];
    }
    return t;
}

LambdaRatios factor_lambda(const CoefficientMatrix& M, std::size_t form, int even_anchor, int odd_anchor) {
    ParityTable t = parity_table(M, form);
    auto pos = [](const std::vector<int>& v, int x) -> long {
        auto it = std::find(v.begin(), v.end(), x);
        return it == v.end() ? -1 : it - v.begin();
    };
    long e0 = -1, o0 = -1;
    if (even_anchor && odd_anchor) {
        e0 = pos(t.evens, even_anchor);
        o0 = pos(t.odds, odd_anchor);
    } else {
        for (std::size_t e = 0; e < t.evens.size() && e0 < 0; ++e)
            for (std::size_t o = 0; o < t.odds.size(); ++o)
                if (t.cell[e][o] && !t.cell[e][o]->is_zero()) {
                    e0 = static_cast<long>(e);
                    o0 = static_cast<long>(o);
                    break;
                }
    }
    if (e0 < 0 || o0 < 0 || !t.cell[e0][o0] || t.cell[e0][o0]->is_zero())
        throw Error(Errc::GridTooSparse, "no nonzero anchor entry");
    LambdaRatios L;
    L.even_anchor = t.evens[e0];
    L.odd_anchor = t.odds[o0];
    L.scale = *t.cell[e0][o0];
    for (std::size_t e = 0; e < t.evens.size(); ++e)
        if (t.cell[e][o0]) L.even.emplace_back(t.evens[e], *t.cell[e][o0] / L.scale);
    for (std::size_t o = 0; o < t.odds.size(); ++o)
        if (t.cell[e0][o]) L.odd.emplace_back(t.odds[o], *t.cell[e0][o] / L.scale);
    return L;
}

Rank1Report rank1_check(const CoefficientMatrix& M) {
    Rank1Report r;
    for (std::size_t f = 0; f < M.sys.forms.size(); ++f) {
        ParityTable t = parity_table(M, f);
        for (std::size_t e1 = 0; e1 < t.evens.size(); ++e1)
            for (std::size_t e2 = e1 + 1; e2 < t.evens.size(); ++e2)
                for (std::size_t o1 = 0; o1 < t.odds.size(); ++o1)
                    for (std::size_t o2 = o1 + 1; o2 < t.odds.size(); ++o2) {
                        const auto &a = t.cell[e1][o1], &b = t.cell[e2][o2], &c = t.cell[e1][o2], &d = t.cell[e2][o1];
                        if (!a || !b || !c || !d) continue;
                        std::ostringstream os;
                        os << "form " << f << ": c(" << t.evens[e1] << "," << t.odds[o1] << ") c(" << t.evens[e2] << ","
                           << t.odds[o2] << ") = c(" << t.evens[e1] << "," << t.odds[o2] << ") c(" << t.evens[e2] << ","
                           << t.odds[o1] << ")";
                        IdentityCheck ic;
                        ic.description = os.str();
                        ic.pass = (*a) * (*b) == (*c) * (*d);
                        r.pass = r.pass && ic.pass;
                        r.minors.push_back(ic);
                    }
        r.lambdas.push_back(factor_lambda(M, f));
    }
    if (r.minors.empty()) throw Error(Errc::GridTooSparse, "no 2x2 minor at weight " + std::to_string(M.k));
    return r;
}

// ---------------------------------------------------------------- rationality

RationalityReport rationality_check(const CoefficientMatrix& M) {
    RationalityReport r;
    std::vector<FormalScalar> monos;
    for (std::size_t i = 0; i < M.entries.size(); ++i)
        for (std::size_t f = 0; f < M.sys.forms.size(); ++f) {
            const CValue& c = M.c[i][f];
            IdentityCheck ic;
            ic.description = "form " + std::to_string(f) + ": c" + label(M.entries[i]) + " = " + c.to_string();
            ic.pass = c.trivial_monomial() && c.x.field() == M.sys.forms[f].K;
            r.pass = r.pass && ic.pass;
            r.entries.push_back(ic);
            if (!c.is_zero()) monos.push_back(c.monomial);
        }
    if (!r.pass && !monos.empty()) {
        bool uniform = std::all_of(monos.begin(), monos.end(), [&](const FormalScalar& m) { return m == monos[0]; });
        r.uniform_constant = uniform && !monos[0].is_rational();
        std::ostringstream os;
        if (r.uniform_constant) {
            os << "uniform constant " << monos[0].to_string() << " (i^" << monos[0].i_exp() << " pi^" << monos[0].pi_exp()
               << " sqrtD^" << monos[0].sqrtD_exp() << ") on every entry";
        } else {
            os << "non-uniform exponents:";
            for (const auto& m : monos) os << " (" << m.i_exp() << "," << m.pi_exp() << "," << m.sqrtD_exp() << ")";
        }
        r.diagnostic = os.str();
    }
    for (std::size_t f = 0; f < M.sys.forms.size(); ++f) {
        const EigenformData& form = M.sys.forms[f];
        if (form.K->degree() != 2) continue;
        EigenformData conj = eigenform_for_root(M.sys, form.theta.conj2(), form.minpoly);
        for (std::size_t i = 0; i < M.entries.size(); ++i) {
            IdentityCheck ic;
            ic.description = "form " + std::to_string(f) + ": sigma(c" + label(M.entries[i]) + ") = c_sigma(f)";
            ic.pass = project_onto(M.entries[i], M.sys, conj) == M.c[i][f].conj2();
            r.pass = r.pass && ic.pass;
            r.galois.push_back(ic);
        }
    }
    return r;
}

} // namespace hmf
