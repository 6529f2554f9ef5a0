#include "hmf/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hmf {

std::string q_to_string(const mpq_class& q) { return q.get_str(); }

// ---------------------------------------------------------------- polynomials

void poly_trim(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int poly_deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_trim(r);
    return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    poly_trim(r);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}

Poly poly_scale(const Poly& a, const mpq_class& s) {
    Poly r = a;
    for (auto& c : r) c *= s;
    poly_trim(r);
    return r;
}

void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.empty()) throw Error(Errc::PreconditionViolated, "polynomial division by zero");
    r = a;
    poly_trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, mpq_class(0));
    const mpq_class lead = b.back();
    while (!r.empty() && r.size() >= b.size()) {
        std::size_t shift = r.size() - b.size();
        mpq_class f = r.back() / lead;
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= f * b[i];
        poly_trim(r);
    }
    poly_trim(q);
}

Poly poly_rem(const Poly& a, const Poly& b) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    return r;
}

Poly poly_monic(const Poly& p) {
    if (p.empty()) return p;
    return poly_scale(p, 1 / p.back());
}

Poly poly_gcd(Poly a, Poly b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

Poly poly_derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    poly_trim(d);
    return d;
}

mpq_class poly_eval(const Poly& p, const mpq_class& x) {
    mpq_class r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

std::string poly_to_string(const Poly& p, const std::string& var) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (sgn(p[i]) == 0) continue;
        mpq_class c = p[i];
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) os << "-";
        c = abs(c);
        if (i == 0 || c != 1) os << c.get_str();
        if (i > 0) {
            if (c != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

namespace {

struct Sturm {
    std::vector<Poly> seq;
    explicit Sturm(const Poly& p) {
        seq.push_back(p);
        seq.push_back(poly_derivative(p));
        while (!seq.back().empty()) {
            Poly r = poly_rem(seq[seq.size() - 2], seq.back());
            if (r.empty()) break;
            seq.push_back(poly_scale(r, -1));
        }
    }
    int variations(const mpq_class& x) const {
        int v = 0, last = 0;
        for (const Poly& q : seq) {
            int s = sgn(poly_eval(q, x));
            if (s == 0) continue;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    }
};

mpq_class cauchy_bound(const Poly& p) {
    mpq_class m = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, mpq_class(abs(p[i] / p.back())));
    return m + 1;
}

} // namespace

int sturm_count(const Poly& p, const mpq_class& lo, const mpq_class& hi) {
    Sturm s(squarefree_part(p));
    return s.variations(lo) - s.variations(hi);
}

int sturm_count_all(const Poly& p) {
    mpq_class M = cauchy_bound(p);
    return sturm_count(p, -M, M);
}

Poly squarefree_part(const Poly& p) {
    Poly g = poly_gcd(p, poly_derivative(p));
    Poly q, r;
    poly_divmod(p, g, q, r);
    return poly_monic(q);
}

bool all_roots_real(const Poly& p) {
    Poly s = squarefree_part(p);
    return sturm_count_all(s) == poly_deg(s);
}

std::vector<mpq_class> real_roots(const Poly& p0, int bits) {
    Poly p = squarefree_part(p0);
    std::vector<mpq_class> out;
    if (poly_deg(p) < 1) return out;
    Sturm S(p);
    mpq_class M = cauchy_bound(p);
    mpq_class eps;
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(bits));
    eps = mpq_class(1, 1) / mpq_class(den);
    struct Iv { mpq_class lo, hi; int vlo, vhi; };
    std::vector<Iv> stack{{-M, M, S.variations(-M), S.variations(M)}};
    while (!stack.empty()) {
        Iv iv = stack.back();
        stack.pop_back();
        int n = iv.vlo - iv.vhi;
        if (n == 0) continue;
        if (n == 1) {
            mpq_class lo = iv.lo, hi = iv.hi;
            int vlo = iv.vlo;
            while (hi - lo > eps) {
                mpq_class mid = (lo + hi) / 2;
                int vm = S.variations(mid);
                if (vlo - vm == 1) hi = mid;
                else { lo = mid; vlo = vm; }
            }
            out.push_back(hi);
            continue;
        }
        mpq_class mid = (iv.lo + iv.hi) / 2;
        int vm = S.variations(mid);
        stack.push_back({iv.lo, mid, iv.vlo, vm});
        stack.push_back({mid, iv.hi, vm, iv.vhi});
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

mpz_class round_q(const mpq_class& x) {
    mpq_class y = x + mpq_class(1, 2);
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    return f;
}

bool next_combination(std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<Poly> split_squarefree(Poly p, int max_degree) {
    std::vector<Poly> out;
    std::vector<mpq_class> roots = real_roots(p, 320);
    if (static_cast<int>(roots.size()) != poly_deg(p))
        throw Error(Errc::FactorizationFailed, "polynomial has non-real roots: " + poly_to_string(p));
    while (!roots.empty()) {
        int n = static_cast<int>(roots.size());
        bool found = false;
        for (int s = 1; s < n && s <= max_degree && !found; ++s) {
            std::vector<int> idx(s);
            for (int i = 0; i < s; ++i) idx[i] = i;
            do {
                Poly cand{mpq_class(1)};
                for (int i : idx) cand = poly_mul(cand, Poly{-roots[i], mpq_class(1)});
                Poly rounded;
                for (const auto& c : cand) rounded.push_back(mpq_class(round_q(c)));
                poly_trim(rounded);
                Poly q, r;
                poly_divmod(p, rounded, q, r);
                if (r.empty()) {
                    out.push_back(rounded);
                    p = q;
                    std::vector<mpq_class> rest;
                    for (int i = 0; i < n; ++i)
                        if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(roots[i]);
                    roots = std::move(rest);
                    found = true;
                    break;
                }
            } while (next_combination(idx, n));
        }
        if (!found) {
            if (n > max_degree)
                throw Error(Errc::FactorizationFailed, "irreducible factor of degree " + std::to_string(n) + " exceeds supported degree");
            out.push_back(p);
            roots.clear();
        }
    }
    return out;
}

} // namespace

std::vector<PolyFactor> factor_real_rooted(const Poly& p0, int max_degree) {
    Poly p = poly_monic(p0);
    for (const auto& c : p)
        if (c.get_den() != 1) throw Error(Errc::FactorizationFailed, "polynomial is not integral");
    std::vector<PolyFactor> out;
    // Yun's square-free decomposition
    Poly a = p, b = poly_derivative(p);
    Poly c = poly_gcd(a, b);
    Poly w, rem;
    poly_divmod(a, c, w, rem);
    int mult = 1;
    while (poly_deg(w) > 0) {
        Poly y = poly_gcd(w, c);
        Poly z;
        poly_divmod(w, y, z, rem);
        if (poly_deg(z) > 0)
            for (Poly& f : split_squarefree(poly_monic(z), max_degree)) out.push_back({f, mult});
        Poly c2;
        poly_divmod(c, y, c2, rem);
        c = c2;
        w = y;
        ++mult;
    }
    std::sort(out.begin(), out.end(), [](const PolyFactor& x, const PolyFactor& y) {
        if (x.factor.size() != y.factor.size()) return x.factor.size() < y.factor.size();
        for (std::size_t i = x.factor.size(); i-- > 0;)
            if (x.factor[i] != y.factor[i]) return x.factor[i] < y.factor[i];
        return false;
    });
    return out;
}

// ---------------------------------------------------------------- number fields

NumberField::NumberField(Poly modulus) : mod_(poly_monic(modulus)) {
    if (poly_deg(mod_) < 1) throw Error(Errc::PreconditionViolated, "number field modulus must have degree >= 1");
    roots_ = real_roots(mod_, 256);
}

NF rational_field() {
    static NF Q = std::make_shared<NumberField>(Poly{mpq_class(0), mpq_class(1)});
    return Q;
}

NFElem::NFElem(NF K, const mpq_class& r) : K_(std::move(K)) {
    if (sgn(r) != 0) c_.push_back(r);
}

NFElem::NFElem(NF K, Poly c) : K_(std::move(K)), c_(std::move(c)) {
    poly_trim(c_);
    if (poly_deg(c_) >= K_->degree()) c_ = poly_rem(c_, K_->modulus());
}

NFElem NFElem::generator(NF K) { return NFElem(K, Poly{mpq_class(0), mpq_class(1)}); }

mpq_class NFElem::rational() const {
    if (!is_rational()) throw Error(Errc::PreconditionViolated, "number field element is not rational");
    return c_.empty() ? mpq_class(0) : c_[0];
}

NFElem NFElem::operator+(const NFElem& o) const { return NFElem(K_ ? K_ : o.K_, poly_add(c_, o.c_)); }
NFElem NFElem::operator-(const NFElem& o) const { return NFElem(K_ ? K_ : o.K_, poly_sub(c_, o.c_)); }
NFElem NFElem::operator-() const { return NFElem(K_, poly_scale(c_, -1)); }
NFElem NFElem::operator*(const NFElem& o) const {
    const NF& K = K_ ? K_ : o.K_;
    return NFElem(K, poly_rem(poly_mul(c_, o.c_), K->modulus()));
}
NFElem NFElem::operator*(const mpq_class& r) const { return NFElem(K_, poly_scale(c_, r)); }

NFElem NFElem::inverse() const {
    if (is_zero()) throw Error(Errc::ZeroElement, "inverse of zero in number field");
    // extended Euclid: s*c + t*m = g, g constant
    Poly r0 = K_->modulus(), r1 = c_;
    Poly s0, s1{mpq_class(1)};
    while (poly_deg(r1) > 0) {
        Poly q, r;
        poly_divmod(r0, r1, q, r);
        Poly s = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s);
    }
    if (r1.empty()) throw Error(Errc::ZeroElement, "element shares a factor with the modulus");
    return NFElem(K_, poly_scale(s1, 1 / r1[0]));
}

namespace {

QMat mult_matrix(const NFElem& x) {
    const int d = x.field()->degree();
    QMat M(d, d, mpq_class(0));
    NFElem t = NFElem::generator(x.field());
    NFElem cur = x;
    for (int j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < cur.coeffs().size(); ++i) M(i, j) = cur.coeffs()[i];
        cur = cur * t;
    }
    return M;
}

mpq_class det(QMat M) {
    mpq_class d = 1;
    const std::size_t n = M.rows;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(M(p, c)) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(M(p, j), M(c, j));
            d = -d;
        }
        d *= M(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            mpq_class f = M(i, c) / M(c, c);
            for (std::size_t j = c; j < n; ++j) M(i, j) -= f * M(c, j);
        }
    }
    return d;
}

} // namespace

mpq_class NFElem::trace() const {
    QMat M = mult_matrix(*this);
    mpq_class t = 0;
    for (std::size_t i = 0; i < M.rows; ++i) t += M(i, i);
    return t;
}

mpq_class NFElem::norm() const { return det(mult_matrix(*this)); }

NFElem NFElem::conj2() const {
    if (K_->degree() != 2) throw Error(Errc::PreconditionViolated, "conj2 needs a quadratic field");
    // t -> -a1 - t for modulus t^2 + a1 t + a0
    const mpq_class& a1 = K_->modulus()[1];
    Poly c = c_;
    c.resize(2, mpq_class(0));
    return NFElem(K_, Poly{c[0] - c[1] * a1, -c[1]});
}

double NFElem::embed(int i) const { return poly_eval(c_, K_->roots().at(i)).get_d(); }

// ---------------------------------------------------------------- matrices

std::vector<std::size_t> rref(QMat& M) {
    return rref_inplace(M, [](const mpq_class& x) { return sgn(x) == 0; },
                        [](const mpq_class& x) { return mpq_class(1 / x); });
}

QMat mat_mul(const QMat& A, const QMat& B) {
    QMat C(A.rows, B.cols, mpq_class(0));
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k) {
            if (sgn(A(i, k)) == 0) continue;
            for (std::size_t j = 0; j < B.cols; ++j) C(i, j) += A(i, k) * B(k, j);
        }
    return C;
}

QMat mat_identity(std::size_t n) {
    QMat I(n, n, mpq_class(0));
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

bool mat_equal(const QMat& A, const QMat& B) { return A.rows == B.rows && A.cols == B.cols && A.a == B.a; }

Poly charpoly(const QMat& A) {
    // Faddeev-LeVerrier
    const std::size_t n = A.rows;
    Poly c(n + 1, mpq_class(0));
    c[n] = 1;
    QMat Mk(n, n, mpq_class(0));
    for (std::size_t k = 1; k <= n; ++k) {
        QMat T = mat_mul(A, Mk);
        for (std::size_t i = 0; i < n; ++i) T(i, i) += c[n - k + 1];
        Mk = T;
        QMat AM = mat_mul(A, Mk);
        mpq_class tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += AM(i, i);
        c[n - k] = -tr / static_cast<long>(k);
    }
    poly_trim(c);
    return c;
}

std::vector<std::vector<NFElem>> eigenvectors(const QMat& A, const NFElem& theta) {
    const NF& K = theta.field();
    const std::size_t n = A.rows;
    Mat<NFElem> M(n, n, NFElem(K, mpq_class(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            M(i, j) = NFElem(K, A(i, j));
            if (i == j) M(i, j) = M(i, j) - theta;
        }
    auto piv = rref_inplace(M, [](const NFElem& x) { return x.is_zero(); }, [](const NFElem& x) { return x.inverse(); });
    std::vector<std::vector<NFElem>> basis;
    std::vector<bool> is_piv(n, false);
    for (auto p : piv) is_piv[p] = true;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        std::vector<NFElem> v(n, NFElem(K, mpq_class(0)));
        v[f] = NFElem(K, mpq_class(1));
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -M(r, f);
        basis.push_back(v);
    }
    return basis;
}

} // namespace hmf
