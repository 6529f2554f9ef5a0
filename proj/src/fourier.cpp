#include "hmf/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "json.hpp"

namespace hmf {

// ---------------------------------------------------------------- OrbitIndex

OrbitIndex::OrbitIndex(Field F, i64 N) : F_(std::move(F)), N_(N) {
    const FieldContext& K = *F_;
    full_ = index_box(K, N);
    full_orbit_.resize(full_.size());
    trace_start_.assign(static_cast<std::size_t>(N) + 2, full_.size());
    for (std::size_t j = full_.size(); j-- > 0;) trace_start_[full_[j].b] = j;
    for (i64 t = N; t >= 0; --t)
        if (trace_start_[t] > trace_start_[t + 1]) trace_start_[t] = trace_start_[t + 1];
    for (std::size_t j = 0; j < full_.size(); ++j) {
        const QuadInt& x = full_[j];
        QuadInt r = K.reduce_index(x);
        auto it = pos_.find(r);
        int o;
        if (it == pos_.end()) {
            o = static_cast<int>(low_.size());
            low_.push_back(x);
            reps_.push_back(r);
            pos_[r] = o;
        } else {
            o = it->second;
        }
        full_orbit_[j] = o;
    }
    for (std::size_t j = 0; j < full_.size(); ++j) pos_[full_[j]] = full_orbit_[j];
    conj_.resize(low_.size());
    for (std::size_t i = 0; i < low_.size(); ++i) conj_[i] = find(K.conj_index(low_[i]));
}

std::shared_ptr<const OrbitIndex> OrbitIndex::get(const Field& F, i64 N) {
    static std::mutex mu;
    static std::map<std::pair<i64, i64>, std::shared_ptr<const OrbitIndex>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{F->D, N}];
    if (!slot) slot = std::make_shared<OrbitIndex>(F, N);
    return slot;
}

int OrbitIndex::find(const QuadInt& x) const {
    auto it = pos_.find(x);
    if (it != pos_.end()) return it->second;
    if (!F_->is_index(x)) return -1;
    it = pos_.find(F_->reduce_index(x));
    return it == pos_.end() ? -1 : it->second;
}

std::size_t OrbitIndex::full_end(i64 t) const {
    if (t < 0) return 0;
    if (t >= N_) return full_.size();
    return trace_start_[t + 1];
}

// ---------------------------------------------------------------- FourierExpansion

FourierExpansion::FourierExpansion(Orbits idx, int weight)
    : idx_(std::move(idx)), weight_(weight), a_(idx_->size(), mpq_class(0)) {}

FourierExpansion FourierExpansion::constant(const Field& F, i64 N, const mpq_class& c) {
    FourierExpansion f(OrbitIndex::get(F, N), 0);
    f.c0_ = c;
    return f;
}

const mpq_class& FourierExpansion::at(const QuadInt& x) const {
    int o = idx_->find(x);
    if (o < 0)
        throw Error(Errc::InsufficientTruncation,
                    "coefficient at trace " + std::to_string(x.b) + " beyond bound " + std::to_string(trace_bound()));
    return a_[o];
}

bool FourierExpansion::is_zero() const {
    if (sgn(c0_) != 0) return false;
    for (const auto& v : a_)
        if (sgn(v) != 0) return false;
    return true;
}

bool FourierExpansion::is_symmetric() const {
    for (std::size_t i = 0; i < a_.size(); ++i) {
        int j = idx_->conj_pos(static_cast<int>(i));
        if (j < 0 || a_[i] != a_[j]) return false;
    }
    return true;
}

FourierExpansion FourierExpansion::truncate(i64 N) const {
    if (N >= trace_bound()) return *this;
    FourierExpansion g(OrbitIndex::get(field(), N), weight_);
    g.c0_ = c0_;
    g.provenance = provenance;
    const auto& low = g.idx_->members();
    for (std::size_t i = 0; i < low.size(); ++i) g.a_[i] = at(low[i]);
    return g;
}

namespace {

void check_compatible(const FourierExpansion& f, const FourierExpansion& g, bool same_weight) {
    if (f.field()->D != g.field()->D) throw Error(Errc::FieldMismatch, "expansions over different fields");
    if (same_weight && f.weight() != g.weight())
        throw Error(Errc::WeightMismatch,
                    "weights " + std::to_string(f.weight()) + " and " + std::to_string(g.weight()));
}

template <class Op>
FourierExpansion combine(const FourierExpansion& f, const FourierExpansion& g, Op op) {
    // weight 0 means a constant, which combines with anything
    check_compatible(f, g, f.weight() != 0 && g.weight() != 0);
    i64 N = std::min(f.trace_bound(), g.trace_bound());
    FourierExpansion a = f.truncate(N), b = g.truncate(N);
    FourierExpansion r(a.index(), std::max(f.weight(), g.weight()));
    r.const_term() = op(a.const_term(), b.const_term());
    for (std::size_t i = 0; i < r.coeffs().size(); ++i) r.coeffs()[i] = op(a.coeffs()[i], b.coeffs()[i]);
    return r;
}

} // namespace

FourierExpansion add(const FourierExpansion& f, const FourierExpansion& g) {
    return combine(f, g, [](const mpq_class& x, const mpq_class& y) { return mpq_class(x + y); });
}

FourierExpansion sub(const FourierExpansion& f, const FourierExpansion& g) {
    return combine(f, g, [](const mpq_class& x, const mpq_class& y) { return mpq_class(x - y); });
}

FourierExpansion scale(const FourierExpansion& f, const mpq_class& c) {
    FourierExpansion r = f;
    r.const_term() *= c;
    for (auto& v : r.coeffs()) v *= c;
    return r;
}

bool equals_upto(const FourierExpansion& f, const FourierExpansion& g, i64 N) {
    check_compatible(f, g, false);
    if (N > f.trace_bound() || N > g.trace_bound())
        throw Error(Errc::InsufficientTruncation, "comparison bound exceeds a stored trace bound");
    if (f.const_term() != g.const_term()) return false;
    const Orbits idx = OrbitIndex::get(f.field(), N);
    for (const QuadInt& x : idx->members())
        if (f.at(x) != g.at(x)) return false;
    return true;
}

FourierExpansion mul(const FourierExpansion& f, const FourierExpansion& g) {
    check_compatible(f, g, false);
    i64 N = std::min(f.trace_bound(), g.trace_bound());
    FourierExpansion a = f.truncate(N), b = g.truncate(N);
    const OrbitIndex& idx = *a.index();
    const FieldContext& F = *a.field();
    const auto& full = idx.full();
    const auto& forb = idx.full_orbit();
    FourierExpansion r(a.index(), f.weight() + g.weight());
    r.const_term() = a.const_term() * b.const_term();
    const auto& low = idx.members();
    mpq_class acc;
    for (std::size_t i = 0; i < low.size(); ++i) {
        const QuadInt& x = low[i];
        acc = a.const_term() * b.coeffs()[i] + b.const_term() * a.coeffs()[i];
        std::size_t end = idx.full_end(x.b - 1);
        for (std::size_t j = 0; j < end; ++j) {
            const mpq_class& av = a.coeffs()[forb[j]];
            if (sgn(av) == 0) continue;
            QuadInt y = x - full[j];
            if (!F.is_index(y)) continue;
            acc += av * b.coeffs()[idx.find(y)];
        }
        r.coeffs()[i] = acc;
    }
    return r;
}

std::vector<mpq_class> diagonal_restriction(const FourierExpansion& f) {
    const OrbitIndex& idx = *f.index();
    std::vector<mpq_class> c(static_cast<std::size_t>(f.trace_bound()) + 1, mpq_class(0));
    c[0] = f.const_term();
    for (std::size_t j = 0; j < idx.full().size(); ++j) c[idx.full()[j].b] += f.coeffs()[idx.full_orbit()[j]];
    return c;
}

// ---------------------------------------------------------------- RawExpansion

RawExpansion::RawExpansion(Field F, i64 N) : multiplier(FormalScalar::one(F->D)), F_(std::move(F)), N_(N) {
    idx_ = OrbitIndex::get(F_, N)->full();
    for (std::size_t j = 0; j < idx_.size(); ++j) pos_[idx_[j]] = j;
    c_.assign(idx_.size(), QuadRat(0, 0));
}

const QuadRat& RawExpansion::at(const QuadInt& x) const {
    auto it = pos_.find(x);
    if (it == pos_.end()) throw Error(Errc::InsufficientTruncation, "index outside raw expansion box");
    return c_[it->second];
}

RawExpansion derivative(const FourierExpansion& f, int l1, int l2) {
    const FieldContext& F = *f.field();
    RawExpansion r(f.field(), f.trace_bound());
    const OrbitIndex& idx = *f.index();
    if (l1 == 0 && l2 == 0) r.const_term() = QuadRat(f.const_term(), 0);
    for (std::size_t j = 0; j < idx.full().size(); ++j) {
        const mpq_class& a = f.coeffs()[idx.full_orbit()[j]];
        if (sgn(a) == 0) continue;
        QuadRat xi = F.index_to_xi(idx.full()[j]);
        QuadRat xc = F.conj(xi);
        QuadRat v(a, 0);
        for (int t = 0; t < l1; ++t) v = F.mul(v, xi);
        for (int t = 0; t < l2; ++t) v = F.mul(v, xc);
        r.coeffs()[j] = v;
    }
    int l = l1 + l2;
    mpz_class two;
    mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(l));
    r.multiplier = FormalScalar(mpq_class(two), F.D, l, l, 0);
    return r;
}

RawExpansion raw_mul(const RawExpansion& f, const RawExpansion& g) {
    if (f.field()->D != g.field()->D) throw Error(Errc::FieldMismatch, "raw expansions over different fields");
    const FieldContext& F = *f.field();
    i64 N = std::min(f.trace_bound(), g.trace_bound());
    RawExpansion r(f.field(), N);
    r.multiplier = f.multiplier * g.multiplier;
    r.const_term() = F.mul(f.const_term(), g.const_term());
    const auto& X = r.indices();
    for (std::size_t i = 0; i < X.size(); ++i) {
        const QuadInt& x = X[i];
        QuadRat acc = F.mul(f.const_term(), g.at(x)) + F.mul(g.const_term(), f.at(x));
        for (std::size_t j = 0; j < X.size() && X[j].b < x.b; ++j) {
            const QuadRat& fv = f.coeffs()[j];
            if (fv.is_zero()) continue;
            QuadInt y = x - X[j];
            if (!F.is_index(y)) continue;
            acc = acc + F.mul(fv, g.at(y));
        }
        r.coeffs()[i] = acc;
    }
    return r;
}

RawExpansion raw_add(const RawExpansion& f, const RawExpansion& g) {
    if (f.multiplier != g.multiplier)
        throw Error(Errc::PreconditionViolated, "adding raw expansions with different multipliers");
    i64 N = std::min(f.trace_bound(), g.trace_bound());
    RawExpansion r(f.field(), N);
    r.multiplier = f.multiplier;
    r.const_term() = f.const_term() + g.const_term();
    for (std::size_t i = 0; i < r.indices().size(); ++i)
        r.coeffs()[i] = f.at(r.indices()[i]) + g.at(r.indices()[i]);
    return r;
}

RawExpansion raw_scale(const RawExpansion& f, const mpq_class& c) {
    RawExpansion r = f;
    r.const_term() = c * r.const_term();
    for (auto& v : r.coeffs()) v = c * v;
    return r;
}

FourierExpansion compress(const RawExpansion& f, int weight) {
    const Orbits idx = OrbitIndex::get(f.field(), f.trace_bound());
    FourierExpansion r(idx, weight);
    if (sgn(f.const_term().b) != 0) throw Error(Errc::SymmetryViolated, "irrational constant term");
    r.const_term() = f.const_term().a;
    std::vector<bool> set(idx->size(), false);
    for (std::size_t j = 0; j < idx->full().size(); ++j) {
        const QuadRat& v = f.coeffs()[j];
        if (sgn(v.b) != 0)
            throw Error(Errc::SymmetryViolated, "irrational coefficient at trace " + std::to_string(idx->full()[j].b));
        int o = idx->full_orbit()[j];
        if (!set[o]) {
            r.coeffs()[o] = v.a;
            set[o] = true;
        } else if (r.coeffs()[o] != v.a) {
            throw Error(Errc::SymmetryViolated, "coefficients differ inside a unit orbit");
        }
    }
    return r;
}

// ---------------------------------------------------------------- numeric evaluation

std::pair<double, double> xi_embeddings(const FieldContext& F, const QuadInt& x) {
    double s = static_cast<double>(F.sqrtD);
    return {static_cast<double>(F.emb1(x)) / s, -static_cast<double>(F.emb2(x)) / s};
}

namespace {

std::complex<double> expo(const FieldContext& F, const QuadInt& x, std::complex<double> z1, std::complex<double> z2) {
    auto [u, v] = xi_embeddings(F, x);
    const std::complex<double> two_pi_i(0, 2 * M_PI);
    return std::exp(two_pi_i * (u * z1 + v * z2));
}

// tail of sum over traces > N of count(t) * M * t^e * exp(-2 pi t y)
double tail_sum(double sqrtD, i64 N, double M, double e, double y) {
    double tail = 0;
    for (i64 t = N + 1; t < N + 100000; ++t) {
        double term = (sqrtD * t + 2) * M * std::pow(static_cast<double>(t), e) * std::exp(-2 * M_PI * t * y);
        tail += term;
        if (t > N + 5 && term < 1e-40 * std::max(1.0, tail)) break;
    }
    return tail;
}

} // namespace

NumericValue evaluate_numeric(const FourierExpansion& f, std::complex<double> z1, std::complex<double> z2,
                              double tolerance) {
    if (!(z1.imag() > 0 && z2.imag() > 0)) throw Error(Errc::PreconditionViolated, "evaluation point not in H^2");
    const FieldContext& F = *f.field();
    const OrbitIndex& idx = *f.index();
    std::complex<double> sum = f.const_term().get_d();
    double e = std::max(0, 2 * f.weight() - 2);
    double M = 0;
    for (std::size_t j = 0; j < idx.full().size(); ++j) {
        const mpq_class& a = f.coeffs()[idx.full_orbit()[j]];
        if (sgn(a) == 0) continue;
        double ad = a.get_d();
        sum += ad * expo(F, idx.full()[j], z1, z2);
        M = std::max(M, std::fabs(ad) / std::pow(static_cast<double>(idx.full()[j].b), e));
    }
    double y = std::min(z1.imag(), z2.imag());
    double tail = tail_sum(static_cast<double>(F.sqrtD), f.trace_bound(), M, e, y);
    if (tolerance > 0 && tail > tolerance)
        throw Error(Errc::TailBoundTooLarge, "tail bound " + std::to_string(tail) + " exceeds tolerance");
    return {sum, tail};
}

NumericValue evaluate_numeric(const RawExpansion& f, std::complex<double> z1, std::complex<double> z2) {
    if (!(z1.imag() > 0 && z2.imag() > 0)) throw Error(Errc::PreconditionViolated, "evaluation point not in H^2");
    const FieldContext& F = *f.field();
    auto qd = [&](const QuadRat& v) { return static_cast<double>(F.emb1(v)); };
    std::complex<double> sum = qd(f.const_term());
    double M = 0, e = 12;
    for (std::size_t j = 0; j < f.indices().size(); ++j) {
        const QuadRat& v = f.coeffs()[j];
        if (v.is_zero()) continue;
        double vd = qd(v);
        sum += vd * expo(F, f.indices()[j], z1, z2);
        M = std::max(M, std::fabs(vd) / std::pow(static_cast<double>(f.indices()[j].b), e));
    }
    std::complex<double> m = f.multiplier.value();
    double tail = tail_sum(static_cast<double>(F.sqrtD), f.trace_bound(), M, e, std::min(z1.imag(), z2.imag()));
    return {sum * m, tail * std::abs(m)};
}

// ---------------------------------------------------------------- JSON

std::string to_json(const FourierExpansion& f) {
    nlohmann::ordered_json j;
    const FieldContext& F = *f.field();
    j["D"] = F.D;
    j["weight"] = f.weight();
    j["trace_bound"] = f.trace_bound();
    j["ring"] = "Q";
    j["const"] = f.const_term().get_str();
    if (!f.provenance.empty()) j["provenance"] = f.provenance;
    auto arr = nlohmann::ordered_json::array();
    const auto& low = f.index()->members();
    for (std::size_t i = 0; i < low.size(); ++i) {
        QuadRat xi = F.index_to_xi(low[i]);
        arr.push_back({{"xi", {xi.a.get_str(), xi.b.get_str()}}, {"val", f.coeffs()[i].get_str()}});
    }
    j["coeffs"] = arr;
    return j.dump();
}

FourierExpansion expansion_from_json(const Field& F, const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("D").get<i64>() != F->D) throw Error(Errc::FieldMismatch, "stored expansion belongs to another field");
    FourierExpansion f(OrbitIndex::get(F, j.at("trace_bound").get<i64>()), j.at("weight").get<int>());
    f.const_term() = mpq_class(j.at("const").get<std::string>());
    if (j.contains("provenance")) f.provenance = j["provenance"].get<std::string>();
    const auto& arr = j.at("coeffs");
    if (arr.size() != f.coeffs().size()) throw Error(Errc::CacheCorrupt, "coefficient count mismatch");
    for (const auto& e : arr) {
        QuadRat xi(mpq_class(e.at("xi")[0].get<std::string>()), mpq_class(e.at("xi")[1].get<std::string>()));
        xi.a.canonicalize();
        xi.b.canonicalize();
        int o = f.index()->find(F->xi_to_index(xi));
        if (o < 0) throw Error(Errc::CacheCorrupt, "stored index outside the box");
        mpq_class v(e.at("val").get<std::string>());
        v.canonicalize();
        f.coeffs()[o] = v;
    }
    return f;
}

} // namespace hmf
