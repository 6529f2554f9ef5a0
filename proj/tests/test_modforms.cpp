#include <catch2/catch_amalgamated.hpp>

#include "hmf/modforms.hpp"
#include "oracles.hpp"

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

} // namespace

TEST_CASE("elliptic basis", "[modforms]") {
    auto E4 = oracle::elliptic_E(4, 30), E6 = oracle::elliptic_E(6, 30);
    auto b4 = elliptic_basis(4, 30);
    REQUIRE(b4.size() == 1);
    CHECK(b4[0].c == E4);
    // dimensions of M_k(SL2(Z))
    for (auto [k, d] : {std::pair{4, 1}, {6, 1}, {8, 1}, {10, 1}, {12, 2}, {14, 1}, {24, 3}, {26, 2}, {36, 4}})
        CHECK(elliptic_basis(k, 40).size() == static_cast<std::size_t>(d));
    CHECK(code_of([] { elliptic_basis(2, 10); }) == Errc::PreconditionViolated);
    // E4 * E6 lies in weight 10, E4 + E6 does not lie in either
    std::vector<mpq_class> p(30, mpq_class(0)), s(30);
    for (int n = 0; n < 30; ++n) {
        for (int j = 0; j <= n; ++j) p[n] += E4[j] * E6[n - j];
        s[n] = E4[n] + E6[n];
    }
    CHECK(in_elliptic_space(p, 10));
    CHECK_FALSE(in_elliptic_space(s, 4));
    CHECK_FALSE(in_elliptic_space(s, 6));
    // Delta = (E4^3 - E6^2) / 1728 has tau(2) = -24
    std::vector<mpq_class> e43(30, mpq_class(0)), e4sq(30, mpq_class(0)), e62(30, mpq_class(0)), delta(30);
    for (int n = 0; n < 30; ++n)
        for (int j = 0; j <= n; ++j) {
            e4sq[n] += E4[j] * E4[n - j];
            e62[n] += E6[j] * E6[n - j];
        }
    for (int n = 0; n < 30; ++n)
        for (int j = 0; j <= n; ++j) e43[n] += e4sq[j] * E4[n - j];
    for (int n = 0; n < 30; ++n) delta[n] = (e43[n] - e62[n]) / 1728;
    CHECK(delta[1] == 1);
    CHECK(delta[2] == -24);
    CHECK(delta[3] == 252);
    CHECK(in_elliptic_space(delta, 12));
}

TEST_CASE("Eisenstein series", "[modforms]") {
    for (i64 D : {5, 8, 13}) {
        auto F = make_field(D);
        for (int k : {2, 4, 6}) {
            INFO("D=" << D << " k=" << k);
            auto E = eisenstein(F, k, 12);
            // normalization by the zeta value
            CHECK(E.c == E.zeta_prediction);
            CHECK(E.c == 4 / oracle::zeta_neg(D, k));
            CHECK(E.f.const_term() == 1);
            CHECK(E.f.is_symmetric());
            // coefficients are divisor sums over ideals, computed independently
            const auto& idx = *E.f.index();
            for (std::size_t i = 0; i < idx.size(); ++i) {
                if (idx.members()[i].b > 8) continue;
                CHECK(E.f.coeffs()[i] == E.c * mpq_class(oracle::sigma(*F, idx.members()[i], k - 1)));
            }
            CHECK(in_elliptic_space(diagonal_restriction(E.f), 2 * k));
            if (k >= 4) CHECK(E.coset_discrepancy >= 0);
        }
    }
    auto F = make_field(5);
    auto E2 = eisenstein(F, 2, 20);
    CHECK(E2.c == 120);
    auto d = diagonal_restriction(E2.f);
    CHECK(d == oracle::elliptic_E(4, 21));
    CHECK(code_of([&] { eisenstein(F, 3, 10); }) == Errc::PreconditionViolated);
}

TEST_CASE("Rankin-Cohen brackets", "[modforms]") {
    auto F = make_field(5);
    const i64 N = 10;
    for (auto [a, b, nu] : {std::tuple{2, 2, 1}, {2, 4, 1}, {4, 2, 2}, {2, 2, 2}, {4, 4, 1}}) {
        INFO(a << "," << b << "," << nu);
        auto f = eisenstein(F, a, N).f, g = eisenstein(F, b, N).f;
        Bracket fast = rc_bracket(f, g, nu), lit = rc_bracket_literal(f, g, nu);
        CHECK(fast.f.coeffs() == lit.f.coeffs());
        CHECK(fast.multiplier == lit.multiplier);
        // (2 pi i)^(2 nu)
        CHECK(fast.multiplier == FormalScalar(mpq_class(2), 5, 1, 1, 0).pow(2 * nu));
        CHECK(fast.f.is_cuspidal());
        CHECK(fast.f.weight() == a + b + 2 * nu);
        CHECK(fast.f.is_symmetric());
        // the sign (-1)^nu of swapping appears once per variable
        CHECK(rc_bracket(g, f, nu).f.coeffs() == fast.f.coeffs());
    }
    auto E2 = eisenstein(F, 2, N).f;
    CHECK(rc_bracket(E2, E2, 1).f.is_zero() == false);
    CHECK(code_of([&] { rc_bracket(E2, E2, -1); }) == Errc::PreconditionViolated);
}

TEST_CASE("cusp spaces", "[modforms]") {
    auto F = make_field(5);
    // span dimensions for Q(sqrt 5), even parallel weight
    for (auto [k, d] : {std::pair{6, 1}, {8, 1}, {10, 2}, {12, 3}}) {
        const CuspSpace& S = cusp_space(F, k, 14);
        CHECK(S.basis.size() == static_cast<std::size_t>(d));
        CHECK(S.span_only);
        for (const auto& b : S.basis) {
            CHECK(b.is_cuspidal());
            CHECK(b.is_symmetric());
            CHECK(in_elliptic_space(diagonal_restriction(b), 2 * k));
        }
        // every generator lies in the span, Eisenstein series do not
        auto Ea = eisenstein(F, 2, 14).f, Eb = eisenstein(F, k - 2, 14).f;
        auto c = S.coordinates(sub(mul(Ea, Eb), eisenstein(F, k, 14).f));
        CHECK(c.size() == S.basis.size());
        CHECK(code_of([&] { S.coordinates(eisenstein(F, k, 14).f); }) == Errc::NotInSpan);
    }
    CHECK(code_of([&] { cusp_space(F, 4, 10); }) == Errc::PreconditionViolated);
}
