#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "hmf/fourier.hpp"
#include "hmf/modforms.hpp"

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

// random unit-invariant expansion: one value per orbit
FourierExpansion random_form(const Field& F, i64 N, int weight, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> d(-9, 9);
    FourierExpansion f(OrbitIndex::get(F, N), weight);
    f.const_term() = d(rng);
    for (auto& c : f.coeffs()) {
        c = mpq_class(d(rng), 1 + (d(rng) & 3));
        c.canonicalize();
    }
    return f;
}

} // namespace

TEST_CASE("orbit index", "[fourier]") {
    for (i64 D : {5, 8, 13, 17}) {
        auto F = make_field(D);
        const i64 N = 15;
        auto idx = OrbitIndex::get(F, N);
        CHECK(idx == OrbitIndex::get(F, N));
        const auto& full = idx->full();
        CHECK(full.size() == index_box(*F, N).size());
        std::set<QuadInt, decltype(&index_less)> reps(&index_less);
        for (std::size_t j = 0; j < full.size(); ++j) {
            CHECK(F->is_index(full[j]));
            CHECK(full[j].b <= N);
            int o = idx->full_orbit()[j];
            CHECK(idx->find(full[j]) == o);
            CHECK(F->reduce_index(full[j]) == idx->reps()[o]);
            // the stored member has minimal trace in its orbit
            CHECK(idx->members()[o].b <= full[j].b);
            if (j) CHECK(full[j - 1].b <= full[j].b);
            reps.insert(F->reduce_index(full[j]));
        }
        CHECK(reps.size() == idx->size());
        for (std::size_t i = 0; i < idx->size(); ++i) {
            int c = idx->conj_pos(static_cast<int>(i));
            CHECK(idx->conj_pos(c) == static_cast<int>(i));
            CHECK(idx->find(F->conj_index(idx->members()[i])) == c);
        }
        CHECK(idx->find(QuadInt{0, 0}) == -1);
    }
}

TEST_CASE("ring operations against direct convolution", "[fourier]") {
    auto F = make_field(5);
    const i64 N = 10;
    auto f = random_form(F, N, 2, 1), g = random_form(F, N, 4, 2);
    auto h = mul(f, g);
    CHECK(h.weight() == 6);
    auto idx = f.index();
    // every pair of indices, plus the constant terms
    std::map<std::pair<i64, i64>, mpq_class> conv;
    for (const auto& x : idx->full()) conv[{x.a, x.b}] = f.const_term() * g.at(x) + g.const_term() * f.at(x);
    for (const auto& x : idx->full())
        for (const auto& y : idx->full()) {
            QuadInt s = x + y;
            if (s.b <= N) conv[{s.a, s.b}] += f.at(x) * g.at(y);
        }
    for (const auto& x : idx->full()) CHECK(h.at(x) == (conv[{x.a, x.b}]));
    CHECK(h.const_term() == f.const_term() * g.const_term());
    CHECK(mul(f, g).coeffs() == mul(g, f).coeffs());
    auto k = random_form(F, N, 2, 3);
    CHECK(mul(mul(f, g), k).coeffs() == mul(f, mul(g, k)).coeffs());
    CHECK(mul(f, FourierExpansion::constant(F, N, 1)).coeffs() == f.coeffs());

    // restriction to the diagonal is a ring map
    auto df = diagonal_restriction(f), dg = diagonal_restriction(g), dh = diagonal_restriction(h);
    for (i64 n = 0; n <= N; ++n) {
        mpq_class s = 0;
        for (i64 j = 0; j <= n; ++j) s += df[j] * dg[n - j];
        CHECK(dh[n] == s);
    }

    auto f2 = random_form(F, N, 2, 7);
    CHECK(sub(add(f, f2), f2).coeffs() == f.coeffs());
    CHECK(scale(f, 3).coeffs() == add(f, add(f, f)).coeffs());
    CHECK(sub(f, f).is_zero());
    CHECK(code_of([&] { (void)add(f, g); }) == Errc::WeightMismatch);
    CHECK(code_of([&] { (void)mul(f, random_form(make_field(8), N, 2, 1)); }) == Errc::FieldMismatch);
}

TEST_CASE("truncation and lookups", "[fourier]") {
    auto F = make_field(13);
    auto f = random_form(F, 12, 2, 4);
    auto t = f.truncate(6);
    CHECK(t.trace_bound() == 6);
    CHECK(equals_upto(f, t, 6));
    for (const auto& x : t.index()->full()) CHECK(t.at(x) == f.at(x));
    QuadInt far = f.index()->full().back();
    far.b += 20;
    far.a -= 20 * 4;
    if (F->is_index(far)) CHECK(code_of([&] { (void)f.at(far); }) == Errc::InsufficientTruncation);
    CHECK(f.truncate(13).trace_bound() == 12);
}

TEST_CASE("derivatives and compression", "[fourier]") {
    auto F = make_field(5);
    auto E = eisenstein(F, 4, 16).f;
    // D^(0,0) compresses back
    CHECK(compress(derivative(E, 0, 0), 4).coeffs() == E.coeffs());
    // D^(1,0) picks up irrational xi
    CHECK(code_of([&] { (void)compress(derivative(E, 1, 0), 6); }) == Errc::SymmetryViolated);
    // D^(1,1) multiplies by the norm, rational but not unit invariant only up to the unit norm 1
    auto n11 = derivative(E, 1, 1);
    CHECK(n11.multiplier == FormalScalar(mpq_class(-4), 5, 0, 2, 0));
    for (std::size_t j = 0; j < n11.indices().size(); ++j) {
        const QuadInt& x = n11.indices()[j];
        QuadRat xi = F->index_to_xi(x);
        QuadRat want = F->norm(xi) * QuadRat(E.at(x), 0);
        CHECK(n11.coeffs()[j] == want);
    }
    // products of derivatives stay consistent with products of coefficients
    auto a = derivative(E, 1, 0), b = derivative(E, 0, 1);
    auto p = raw_mul(a, b);
    CHECK(p.multiplier == a.multiplier * b.multiplier);
    auto q = raw_mul(b, a);
    CHECK(p.coeffs() == q.coeffs());
    CHECK(code_of([&] { (void)raw_add(a, derivative(E, 1, 1)); }) == Errc::PreconditionViolated);
}

TEST_CASE("numeric derivative matches finite differences", "[fourier]") {
    auto F = make_field(5);
    auto E = eisenstein(F, 4, 20).f;
    std::complex<double> z1(0.1, 1.0), z2(-0.2, 1.2);
    const double h = 1e-4;
    std::complex<double> ih(0, h);
    for (auto [l1, l2] : {std::pair{1, 0}, std::pair{0, 1}}) {
        auto d = evaluate_numeric(derivative(E, l1, l2), z1, z2);
        std::complex<double> fd;
        if (l1) fd = (evaluate_numeric(E, z1 + h, z2).value - evaluate_numeric(E, z1 - h, z2).value) / (2 * h);
        else fd = (evaluate_numeric(E, z1, z2 + h).value - evaluate_numeric(E, z1, z2 - h).value) / (2 * h);
        INFO("analytic " << d.value << " fd " << fd);
        CHECK(std::abs(d.value - fd) < 1e-6 * std::abs(d.value));
        // holomorphic: the derivative along i h agrees
        std::complex<double> fdi = l1 ? (evaluate_numeric(E, z1 + ih, z2).value - evaluate_numeric(E, z1 - ih, z2).value) / (2.0 * ih)
                                      : (evaluate_numeric(E, z1, z2 + ih).value - evaluate_numeric(E, z1, z2 - ih).value) / (2.0 * ih);
        CHECK(std::abs(fdi - fd) < 1e-6 * std::abs(fd));
    }
}

TEST_CASE("numeric evaluation", "[fourier]") {
    auto F = make_field(5);
    auto E = eisenstein(F, 2, 20).f;
    // symmetric forms are invariant under z1 <-> z2
    std::complex<double> z1(0.3, 0.9), z2(-0.1, 1.3);
    auto a = evaluate_numeric(E, z1, z2), b = evaluate_numeric(E, z2, z1);
    CHECK(std::abs(a.value - b.value) < 1e-10 * std::abs(a.value));
    // invariance under translation by the integers
    auto c = evaluate_numeric(E, z1 + 1.0, z2 + 1.0);
    CHECK(std::abs(a.value - c.value) < 1e-10 * std::abs(a.value));
    // and by omega: (z1 + w, z2 + w')
    double w1 = static_cast<double>(F->emb1(QuadInt{0, 1})), w2 = static_cast<double>(F->emb2(QuadInt{0, 1}));
    auto d = evaluate_numeric(E, z1 + w1, z2 + w2);
    CHECK(std::abs(a.value - d.value) < 1e-9 * std::abs(a.value));
    // the tail shrinks with the truncation
    auto small = evaluate_numeric(E.truncate(10), z1, z2);
    CHECK(small.tail > a.tail);
    CHECK(std::abs(small.value - a.value) <= 10 * small.tail + 1e-12);
    CHECK(code_of([&] { (void)evaluate_numeric(E, {0, -1}, z2); }) == Errc::PreconditionViolated);
    CHECK(code_of([&] { (void)evaluate_numeric(E.truncate(3), {0, 0.05}, {0, 0.05}, 1e-12); }) == Errc::TailBoundTooLarge);
}

TEST_CASE("serialization", "[fourier]") {
    auto F = make_field(8);
    auto f = random_form(F, 9, 6, 11);
    f.provenance = "test";
    auto g = expansion_from_json(F, to_json(f));
    CHECK(g.coeffs() == f.coeffs());
    CHECK(g.const_term() == f.const_term());
    CHECK(g.weight() == 6);
    CHECK(g.provenance == "test");
    CHECK(code_of([&] { (void)expansion_from_json(make_field(5), to_json(f)); }) == Errc::FieldMismatch);
}
