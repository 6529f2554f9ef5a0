#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "hmf/lvalues.hpp"

using namespace hmf;

namespace {

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::ConfigError;
}

const CoefficientMatrix& matrix(int k) {
    static std::map<int, CoefficientMatrix> memo;
    auto it = memo.find(k);
    if (it == memo.end()) it = memo.emplace(k, coefficient_matrix(make_field(5), k, 24)).first;
    return it->second;
}

std::size_t entry(const CoefficientMatrix& M, int k1, int k2, int nu) {
    for (std::size_t i = 0; i < M.entries.size(); ++i)
        if (M.entries[i].p.k1 == k1 && M.entries[i].p.k2 == k2 && M.entries[i].p.nu == nu) return i;
    FAIL("missing grid entry");
    return 0;
}

} // namespace

TEST_CASE("bracket grid", "[lvalues]") {
    auto g = grid(8);
    REQUIRE(g.size() == 3);
    for (const auto& p : g) {
        CHECK(p.k1 + p.k2 + 2 * p.nu == 8);
        CHECK(p.s == p.k1 + p.nu);
        CHECK(p.w == p.nu + 1);
        CHECK(p.interior == (p.k1 >= 4 && p.k2 >= 4));
    }
    // (2,4,1) -> (3,2) and (4,2,1) -> (5,2)
    CHECK(std::count_if(g.begin(), g.end(), [](const GridPoint& p) { return p.s == 3 && p.w == 2; }) == 1);
    CHECK(std::count_if(g.begin(), g.end(), [](const GridPoint& p) { return p.s == 5 && p.w == 2; }) == 1);
    for (int k : {10, 12, 14}) {
        // nu from 1 to k/2 - 2, and (k - 2 nu - 2) / 2 choices of k1
        std::size_t n = 0;
        for (int nu = 1; 2 * nu + 4 <= k; ++nu) n += static_cast<std::size_t>((k - 2 * nu - 2) / 2);
        CHECK(grid(k).size() == n);
    }
    CHECK(code_of([] { grid(6); }) == Errc::PreconditionViolated);
    CHECK(code_of([] { grid(9); }) == Errc::PreconditionViolated);

    auto orb = funceq_orbit(8, 3, 2);
    std::sort(orb.begin(), orb.end());
    // the swap turns s -> k - s into w -> k - w as well
    CHECK(orb == std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 2}, {3, 6}, {5, 2}, {5, 6}, {6, 3}, {6, 5}});
    CHECK(funceq_orbit(8, 4, 4).size() == 1);
}

TEST_CASE("bracket factor", "[lvalues]") {
    for (int k1 : {2, 4, 6})
        for (int k2 : {2, 4})
            for (int nu : {1, 2, 3}) {
                double a = std::tgamma(k1) * std::tgamma(nu + 1) / std::tgamma(k1 + nu), b = std::tgamma(k2) / std::tgamma(k2 + nu);
                double want = 2 * 0.25 * a * a * b * b * 16;
                CHECK(std::abs(bracket_factor(k1, k2, nu).get_d() - want) < 1e-12 * want);
            }
}

TEST_CASE("grid entries carry rational multipliers", "[lvalues]") {
    auto F = make_field(5);
    for (int k : {8, 10, 12})
        for (const auto& p : grid(k)) {
            INFO(p.k1 << "," << p.k2 << "," << p.nu);
            GridEntry e = estar_entry(F, p.k1, p.k2, p.nu, 12);
            CHECK(e.multiplier.is_rational());
            CHECK(e.expansion.is_cuspidal());
            CHECK(e.expansion.weight() == k);
        }
    CHECK(code_of([&] { estar_entry(F, 3, 4, 1, 10); }) == Errc::PreconditionViolated);
    CHECK(code_of([&] { estar_entry(F, 2, 4, 0, 10); }) == Errc::PreconditionViolated);
}

TEST_CASE("spectral coefficients in a one-dimensional space", "[lvalues]") {
    const auto& M = matrix(8);
    REQUIRE(M.sys.forms.size() == 1);
    // with a single normalized form the coefficient is the bracket's coefficient at the unit ideal
    QuadInt one = ideal_index(*M.F, IdealHNF{1, 0, 1});
    for (std::size_t i = 0; i < M.entries.size(); ++i) {
        const auto& e = M.entries[i];
        mpq_class want = e.multiplier.q() * e.expansion.at(one);
        CHECK(M.c[i][0].trivial_monomial());
        CHECK(M.c[i][0].x == NFElem(M.sys.forms[0].K, want));
    }
    CHECK(M.c[entry(M, 2, 4, 1)][0].x.rational() == mpq_class(4096, 45));
    CHECK(M.c[entry(M, 4, 2, 1)][0].x.rational() == mpq_class(4096, 45));
    CHECK(M.c[entry(M, 2, 2, 2)][0].x.rational() == mpq_class(8192, 375));
}

TEST_CASE("projection", "[lvalues]") {
    const auto& M = matrix(10);
    for (std::size_t i = 0; i < M.entries.size(); ++i) {
        auto c = project(M.entries[i], M.sys);
        for (std::size_t f = 0; f < c.size(); ++f) CHECK(c[f] == M.c[i][f]);
    }
    GridEntry bad = M.entries[0];
    bad.expansion = eisenstein(M.F, 10, 24).f;
    CHECK(code_of([&] { project(bad, M.sys); }) == Errc::NotInSpan);
}

TEST_CASE("functional equations", "[lvalues]") {
    for (int k : {8, 10, 12}) {
        auto r = funceq_check(matrix(k));
        CHECK_FALSE(r.checks.empty());
        CHECK(r.pass);
    }
    // a perturbed coefficient is caught
    CoefficientMatrix M = matrix(8);
    std::size_t i = entry(M, 2, 4, 1);
    M.c[i][0] = M.c[i][0] * CValue(NFElem(M.sys.forms[0].K, mpq_class(2)), FormalScalar::one(5));
    CHECK_FALSE(funceq_check(M).pass);
}

TEST_CASE("rank one", "[lvalues]") {
    CHECK(code_of([] { rank1_check(matrix(8)); }) == Errc::GridTooSparse);
    for (int k : {10, 12}) {
        auto r = rank1_check(matrix(k));
        CHECK_FALSE(r.minors.empty());
        CHECK(r.pass);
        // the factorization reproduces every filled cell
        for (std::size_t f = 0; f < matrix(k).sys.forms.size(); ++f) {
            auto t = parity_table(matrix(k), f);
            const auto& L = r.lambdas[f];
            for (const auto& [e, le] : L.even)
                for (const auto& [o, lo] : L.odd) {
                    auto ei = std::find(t.evens.begin(), t.evens.end(), e) - t.evens.begin();
                    auto oi = std::find(t.odds.begin(), t.odds.end(), o) - t.odds.begin();
                    if (t.cell[ei][oi]) CHECK(*t.cell[ei][oi] == L.scale * le * lo);
                }
        }
    }
    // scaling every entry that lands in the (2, 3) cell breaks the minors through it
    CoefficientMatrix M = matrix(12);
    std::size_t hit = 0;
    for (std::size_t i = 0; i < M.entries.size(); ++i) {
        int s = M.entries[i].p.s, w = M.entries[i].p.w;
        int e = s % 2 == 0 ? s : w, o = s % 2 == 0 ? w : s;
        if (std::min(e, 12 - e) == 2 && std::min(o, 12 - o) == 3) {
            M.c[i][0] = M.c[i][0] * CValue(NFElem(M.sys.forms[0].K, mpq_class(3)), FormalScalar::one(5));
            ++hit;
        }
    }
    REQUIRE(hit > 0);
    CHECK(funceq_check(M).pass);
    CHECK_FALSE(rank1_check(M).pass);
}

TEST_CASE("rationality", "[lvalues]") {
    for (int k : {8, 10, 12}) {
        auto r = rationality_check(matrix(k));
        CHECK(r.pass);
        CHECK_FALSE(r.uniform_constant);
        if (k >= 10) CHECK_FALSE(r.galois.empty());
        for (const auto& row : matrix(k).c)
            for (const auto& c : row) CHECK(c.trivial_monomial());
    }
    // a uniform pi is reported as a constant discrepancy
    CoefficientMatrix M = matrix(8);
    FormalScalar pi(mpq_class(1), 5, 0, 1, 0);
    for (auto& row : M.c)
        for (auto& c : row) c = c * CValue(NFElem(c.x.field(), mpq_class(1)), pi);
    auto r = rationality_check(M);
    CHECK_FALSE(r.pass);
    CHECK(r.uniform_constant);
    CHECK(r.diagnostic.find("pi^1") != std::string::npos);
    // a non-uniform one is not
    M.c[0][0] = M.c[0][0] * CValue(NFElem(M.c[0][0].x.field(), mpq_class(1)), pi);
    r = rationality_check(M);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.uniform_constant);
}

TEST_CASE("zeta table sensitivity", "[lvalues]") {
    auto F = make_field(5);
    ZetaTable t(zeta_table(*F));
    GridEntry good = estar_entry(F, 2, 4, 1, 12);
    t.corrupt(4, t.get(4) * 2);
    GridEntry bad = estar_entry(F, 2, 4, 1, 12, &t);
    CHECK(bad.multiplier == good.multiplier * mpq_class(2));
    CHECK(bad.expansion.coeffs() == good.expansion.coeffs());
}
