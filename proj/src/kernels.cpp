#include "hmf/kernels.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <cmath>
#include <thread>
#include <unordered_set>

#include "hmf/scalars.hpp"

namespace hmf {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI(0, 1);

struct PairHash {
    std::size_t operator()(const std::pair<QuadInt, QuadInt>& p) const noexcept {
        QuadIntHash h;
        return h(p.first) * 31 + h(p.second);
    }
};

double e1(const FieldContext& F, const QuadInt& x) { return static_cast<double>(F.emb1(x)); }
double e2(const FieldContext& F, const QuadInt& x) { return static_cast<double>(F.emb2(x)); }

bool lex_less(const std::pair<QuadInt, QuadInt>& p, const std::pair<QuadInt, QuadInt>& q) {
    auto key = [](const std::pair<QuadInt, QuadInt>& r) { return std::array<i64, 4>{r.first.a, r.first.b, r.second.a, r.second.b}; };
    return key(p) < key(q);
}

cplx ipow(cplx x, long n) {
    if (n < 0) return 1.0 / ipow(x, -n);
    cplx r = 1;
    while (n) {
        if (n & 1) r *= x;
        n >>= 1;
        if (n) x *= x;
    }
    return r;
}

bool is_integer(cplx s) { return s.imag() == 0 && std::floor(s.real()) == s.real(); }

// principal-branch x^-s componentwise, integer fast path
cplx norm_pow(cplx x1, cplx x2, cplx s) {
    if (is_integer(s)) {
        long n = static_cast<long>(s.real());
        return ipow(x1 * x2, -n);
    }
    return std::exp(-s * (std::log(x1) + std::log(x2)));
}

// log Gamma for complex argument (Lanczos, g = 7)
cplx lgamma_c(cplx z) {
    static const double g = 7;
    static const double c[] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                               771.32342877765313,   -176.61502916214059,   12.507343278686905,
                               -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) return std::log(kPi / std::sin(kPi * z)) - lgamma_c(1.0 - z);
    z -= 1;
    cplx x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + double(i));
    cplx t = z + g + 0.5;
    return 0.5 * std::log(2 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx gamma_c(cplx z) {
    if (is_integer(z) && z.real() >= 1 && z.real() <= 30) return std::tgamma(z.real());
    return std::exp(lgamma_c(z));
}

// (2 pi)^(2s) / (e^(pi i s) Gamma(s)^2 sqrt D)
cplx lipschitz_constant(const FieldContext& F, cplx s) {
    cplx g = gamma_c(s);
    return std::exp(2.0 * s * std::log(2 * kPi)) / (std::exp(kPi * kI * s) * g * g * std::sqrt(double(F.D)));
}

template <class Body>
void parallel_for(std::size_t n, Body body) {
    unsigned T = std::max(1u, std::thread::hardware_concurrency());
    if (T == 1 || n < 64) {
        body(0, n, 0u);
        return;
    }
    std::vector<std::thread> th;
    for (unsigned t = 0; t < T; ++t)
        th.emplace_back([&, t] { body(n * t / T, n * (t + 1) / T, t); });
    for (auto& x : th) x.join();
}

// x c + y d = 1 over O
std::pair<QuadInt, QuadInt> bezout(const FieldContext& F, const QuadInt& c, const QuadInt& d) {
    // columns: coordinates of c, c*omega, d, d*omega; track unimodular transform
    QuadInt w{0, 1};
    std::array<QuadInt, 4> v{c, F.mul(c, w), d, F.mul(d, w)};
    std::array<std::array<i64, 4>, 4> T{};
    for (int i = 0; i < 4; ++i) T[i][i] = 1;
    auto colop = [&](int dst, int src, i64 q) {  // col dst -= q col src
        v[dst].a -= q * v[src].a;
        v[dst].b -= q * v[src].b;
        for (int r = 0; r < 4; ++r) T[dst][r] -= q * T[src][r];
    };
    auto swapc = [&](int i, int j) {
        std::swap(v[i], v[j]);
        std::swap(T[i], T[j]);
    };
    // gcd on the b-coordinate into column 0, then on a-coordinate of the rest into column 1
    auto reduce_coord = [&](int first, bool use_b) {
        for (;;) {
            int piv = -1;
            for (int i = first; i < 4; ++i) {
                i64 val = use_b ? v[i].b : v[i].a;
                if (val != 0 && (piv < 0 || std::llabs(val) < std::llabs(use_b ? v[piv].b : v[piv].a))) piv = i;
            }
            if (piv < 0) return;
            swapc(first, piv);
            bool done = true;
            for (int i = first + 1; i < 4; ++i) {
                i64 val = use_b ? v[i].b : v[i].a;
                i64 p = use_b ? v[first].b : v[first].a;
                if (val != 0) {
                    colop(i, first, val / p);
                    if ((use_b ? v[i].b : v[i].a) != 0) done = false;
                }
            }
            if (done) return;
        }
    };
    reduce_coord(0, true);
    reduce_coord(1, false);
    // now v[1] = (g, 0) and v[0] = (a0, b0); the lattice is O so b0 = +-1... solve for 1 = (1, 0)
    if (std::llabs(v[1].a) != 1) throw Error(Errc::PreconditionViolated, "bottom row is not coprime");
    std::array<i64, 4> t{};
    for (int r = 0; r < 4; ++r) t[r] = T[1][r] * v[1].a;
    QuadInt x{t[0], t[1]}, y{t[2], t[3]};
    QuadInt one = F.mul(x, c) + F.mul(y, d);
    if (!(one == QuadInt{1, 0})) throw Error(Errc::PreconditionViolated, "Bezout reconstruction failed");
    return {x, y};
}

} // namespace

// ---------------------------------------------------------------- cosets

std::pair<QuadInt, QuadInt> reduce_coset(const FieldContext& F, QuadInt c, QuadInt d) {
    if (c.is_zero() && d.is_zero()) throw Error(Errc::ZeroElement, "zero bottom row");
    const double eps = e1(F, F.eps0);
    auto ratio = [&](const QuadInt& x, const QuadInt& y) {
        double m1 = std::max(std::fabs(e1(F, x)), std::fabs(e1(F, y)));
        double m2 = std::max(std::fabs(e2(F, x)), std::fabs(e2(F, y)));
        return m1 / m2;
    };
    double r = ratio(c, d);
    long j0 = std::lround(std::log(r) / (4 * std::log(eps)));
    const double lo = std::pow(eps, -2) * (1 - 1e-12), hi = std::pow(eps, 2) * (1 + 1e-12);
    std::optional<std::pair<QuadInt, QuadInt>> best;
    for (long j = j0 - 1; j <= j0 + 1; ++j) {
        // scale by eps0^(-2j)
        QuadInt u = j >= 0 ? F.pow(F.eps0_inv_sq, static_cast<unsigned>(j)) : F.pow(F.eps0_sq, static_cast<unsigned>(-j));
        std::pair<QuadInt, QuadInt> cand{F.mul(u, c), F.mul(u, d)};
        double rr = ratio(cand.first, cand.second);
        if (rr < lo || rr >= hi) continue;
        if (!best || lex_less(cand, *best)) best = cand;
    }
    if (!best) throw Error(Errc::PreconditionViolated, "coset balancing failed");
    return *best;
}

std::vector<CosetRep> coset_reps(const FieldContext& F, double B) {
    if (B < 1) throw Error(Errc::PreconditionViolated, "height bound must be >= 1");
    const double eps = e1(F, F.eps0);
    const double R = eps * std::sqrt(B) * (1 + 1e-9);
    const double sD = std::sqrt(double(F.D));
    std::vector<QuadInt> el;
    i64 bmax = static_cast<i64>(std::floor(2 * R / sD)) + 1;
    for (i64 b = -bmax; b <= bmax; ++b) {
        double w1 = (F.D + sD) / 2 * b;
        i64 amin = static_cast<i64>(std::floor(-R - w1)) - 1, amax = static_cast<i64>(std::ceil(R - w1)) + 1;
        for (i64 a = amin; a <= amax; ++a) {
            QuadInt x{a, b};
            if (std::fabs(e1(F, x)) <= R && std::fabs(e2(F, x)) <= R) el.push_back(x);
        }
    }
    const double lo = std::pow(eps, -2) * (1 - 1e-9), hi = std::pow(eps, 2) * (1 + 1e-9);
    std::vector<CosetRep> out;
    std::unordered_set<std::pair<QuadInt, QuadInt>, PairHash> seen;
    for (const QuadInt& c : el) {
        double c1 = std::fabs(e1(F, c)), c2 = std::fabs(e2(F, c));
        for (const QuadInt& d : el) {
            if (c.is_zero() && d.is_zero()) continue;
            double m1 = std::max(c1, std::fabs(e1(F, d))), m2 = std::max(c2, std::fabs(e2(F, d)));
            double H = m1 * m2;
            if (H > B * (1 + 1e-12)) continue;
            double r = m1 / m2;
            if (r < lo || r > hi) continue;
            if (ideal_from_generators(F, {c, d}).norm() != 1) continue;
            auto can = reduce_coset(F, c, d);
            if (!(can.first == c && can.second == d)) continue;
            if (!seen.insert(can).second) continue;
            CosetRep rep;
            rep.c = c;
            rep.d = d;
            rep.c1 = e1(F, c);
            rep.c2 = e2(F, c);
            rep.d1 = e1(F, d);
            rep.d2 = e2(F, d);
            rep.height = H;
            out.push_back(rep);
        }
    }
    std::sort(out.begin(), out.end(), [](const CosetRep& x, const CosetRep& y) {
        if (x.height != y.height) return x.height < y.height;
        return lex_less({x.c, x.d}, {y.c, y.d});
    });
    return out;
}

// ---------------------------------------------------------------- Moebius action

Point act(const FieldContext& F, const Moebius& g, Point z) {
    cplx w1 = (e1(F, g.a) * z.z1 + e1(F, g.b)) / (e1(F, g.c) * z.z1 + e1(F, g.d));
    cplx w2 = (e2(F, g.a) * z.z2 + e2(F, g.b)) / (e2(F, g.c) * z.z2 + e2(F, g.d));
    return {w1, w2};
}

cplx automorphy_norm(const FieldContext& F, const Moebius& g, Point z) {
    return (e1(F, g.c) * z.z1 + e1(F, g.d)) * (e2(F, g.c) * z.z2 + e2(F, g.d));
}

bool in_sl2(const FieldContext& F, const Moebius& g) {
    return F.mul(g.a, g.d) - F.mul(g.b, g.c) == QuadInt{1, 0};
}

bool cohen_region(int k, cplx s) { return s.real() > 1 && s.real() < k - 1; }

bool double_eisenstein_region(int k, cplx s, cplx w) {
    return s.real() > 2 && s.real() < k - 2 && w.real() < std::min(s.real() - 1, k - 1 - s.real());
}

// ---------------------------------------------------------------- Eisenstein coset sum

KernelEvalReport eisenstein_numeric(const FieldContext& F, int k, Point z, double B) {
    if (k < 4) throw Error(Errc::RegionViolation, "coset sum converges only for k >= 4");
    if (z.z1.imag() <= 0 || z.z2.imag() <= 0) throw Error(Errc::PreconditionViolated, "z not in H^2");
    auto reps = coset_reps(F, B);
    KernelEvalReport r;
    r.height_bound = B;
    for (const CosetRep& g : reps) {
        cplx j = (g.c1 * z.z1 + g.d1) * (g.c2 * z.z2 + g.d2);
        cplx t = ipow(j, -k);
        r.value += t;
        if (g.height <= B / 2) r.value_half += t;
    }
    r.terms = reps.size();
    r.tail_estimate = std::abs(r.value - r.value_half);
    return r;
}

// ---------------------------------------------------------------- Lipschitz

namespace {

// sum over x in O of N(w + x)^-s: exponential side
cplx lipschitz_rhs_sum(const FieldContext& F, cplx s, Point w, int T, cplx* last_layer = nullptr) {
    const double sD = std::sqrt(double(F.D));
    const double om1 = (F.D + sD) / 2, om2 = (F.D - sD) / 2;
    const cplx A = std::exp(2 * kPi * kI * (w.z1 - w.z2) / sD);
    const bool integral = is_integer(s);
    const long sm1 = static_cast<long>(s.real()) - 1;
    cplx sum = 0;
    for (int v = 1; v <= T; ++v) {
        i64 vs = static_cast<i64>(std::floor(v * sD));
        i64 umin = static_cast<i64>(std::floor((-v * F.D - vs - 1) / 2.0)) + 1;
        i64 umax = static_cast<i64>(std::ceil((-v * F.D + vs + 1) / 2.0)) - 1;
        cplx layer = 0;
        cplx e;
        bool started = false;
        for (i64 u = umin; u <= umax; ++u) {
            QuadInt x{u, v};
            if (!F.is_index(x)) {
                started = false;
                continue;
            }
            if (!started) {
                e = std::exp(2 * kPi * kI * (double(u) * (w.z1 - w.z2) + double(v) * (om1 * w.z1 - om2 * w.z2)) / sD);
                started = true;
            } else {
                e *= A;
            }
            double nxi = -static_cast<double>(F.norm(x)) / F.D;  // N(x / sqrt D) > 0
            cplx p = integral ? cplx(std::pow(nxi, double(sm1))) : std::exp((s - 1.0) * std::log(nxi));
            layer += p * e;
        }
        sum += layer;
        if (last_layer && v == T) *last_layer = layer;
    }
    return sum;
}

Point balance(const FieldContext& F, Point w) {
    const double eps2 = e1(F, F.eps0_sq);
    long j = std::lround(std::log(w.z2.imag() / w.z1.imag()) / (2 * std::log(eps2)));
    double u1 = std::pow(eps2, double(j)), u2 = 1 / u1;
    return {w.z1 * u1, w.z2 * u2};
}

// sum over x in O of N(w + x)^-s directly over a coordinate box around the nearest lattice point
cplx lipschitz_direct(const FieldContext& F, cplx s, Point w, int R) {
    const double sD = std::sqrt(double(F.D));
    const double om1 = (F.D + sD) / 2, om2 = (F.D - sD) / 2;
    double b0 = -(w.z1.real() - w.z2.real()) / sD;
    i64 bc = std::llround(b0);
    i64 ac = std::llround(-w.z1.real() - bc * om1);
    cplx sum = 0;
    for (i64 b = bc - R; b <= bc + R; ++b)
        for (i64 a = ac - R; a <= ac + R; ++a) sum += norm_pow(w.z1 + (a + b * om1), w.z2 + (a + b * om2), s);
    return sum;
}

} // namespace

cplx lipschitz_inner(const FieldContext& F, cplx s, Point w) {
    Point b = balance(F, w);
    double y = std::min(b.z1.imag(), b.z2.imag());
    // layer v of the exponential side decays like exp(-2 pi v y); the direct box is only used
    // very close to the real axis, where the layers would run into the thousands
    if (y >= 0.04) {
        int T = static_cast<int>(std::ceil(8.0 / y)) + 2;
        return lipschitz_constant(F, s) * lipschitz_rhs_sum(F, s, b, T);
    }
    return lipschitz_direct(F, s, b, 48);
}

LipschitzReport lipschitz_check(const FieldContext& F, cplx s, Point z, int L, int T) {
    if (s.real() <= 2) throw Error(Errc::RegionViolation, "Lipschitz formula needs Re(s) > 2");
    if (z.z1.imag() <= 0 || z.z2.imag() <= 0) throw Error(Errc::PreconditionViolated, "z not in H^2");
    const double sD = std::sqrt(double(F.D));
    const double om1 = (F.D + sD) / 2, om2 = (F.D - sD) / 2;
    LipschitzReport rep;
    cplx lhs = 0, lhs_half = 0;
    if (is_integer(s)) {
        const long n = static_cast<long>(s.real());
        // S_j(p) = (-2 pi i)^j / (j-1)! sum_{m>=1} m^(j-1) e^(2 pi i m p); j = 1 regularized
        auto Sj = [&](cplx p, long j) {
            cplx q = std::exp(2 * kPi * kI * p);
            cplx acc = 0, qm = q;
            for (long m = 1; m < 100000; ++m) {
                cplx t = std::pow(double(m), double(j - 1)) * qm;
                acc += t;
                if (std::abs(t) < 1e-30 * std::max(1.0, std::abs(acc)) && m > 3) break;
                qm *= q;
            }
            return ipow(-2 * kPi * kI, j) / std::tgamma(double(j)) * acc;
        };
        for (long b = -L; b <= L; ++b) {
            cplx p = z.z1 + double(b) * om1, q = z.z2 + double(b) * om2;
            cplx d = q - p;
            cplx row = 0;
            if (std::abs(d) < 1e-12) {
                row = Sj(p, 2 * n);
            } else {
                for (long j = 1; j <= n; ++j) {
                    // binom(-n, n-j) = (-1)^(n-j) binom(2n-j-1, n-j)
                    double bc = binomial(2 * n - j - 1, n - j).get_d() * ((n - j) % 2 ? -1 : 1);
                    cplx al = bc * ipow(d, j - 2 * n), be = bc * ipow(-d, j - 2 * n);
                    row += al * Sj(p, j) + be * Sj(q, j);
                }
            }
            lhs += row;
            if (std::labs(b) <= L / 2) lhs_half += row;
        }
    } else {
        for (long b = -L; b <= L; ++b)
            for (long a = -L; a <= L; ++a) {
                cplx t = norm_pow(z.z1 + (a + b * om1), z.z2 + (a + b * om2), s);
                lhs += t;
                if (std::labs(a) <= L / 2 && std::labs(b) <= L / 2) lhs_half += t;
            }
    }
    cplx C = lipschitz_constant(F, s), last;
    cplx rhs = C * lipschitz_rhs_sum(F, s, z, T, &last);
    cplx next = C * (lipschitz_rhs_sum(F, s, z, T + 1) - lipschitz_rhs_sum(F, s, z, T));
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.diff = std::abs(lhs - rhs);
    rep.lhs_tail = std::abs(lhs - lhs_half);
    rep.rhs_tail = std::abs(C * last);
    rep.rhs_next = std::abs(next);
    return rep;
}

// ---------------------------------------------------------------- Cohen kernel

KernelEvalReport cohen_kernel_numeric(const FieldContext& F, int k, cplx s, Point z, double B) {
    KernelEvalReport r;
    r.height_bound = B;
    r.region_ok = cohen_region(k, s) && s.real() > 2;
    if (!r.region_ok) throw Error(Errc::RegionViolation, "Cohen kernel needs 2 < Re(s) < k-1 for the inner Lipschitz sum");
    if (k < 4) throw Error(Errc::RegionViolation, "Cohen kernel needs k >= 4");
    cplx c;
    if (is_integer(s)) {
        c = cohen_constant(F, k, static_cast<int>(s.real())).value();
    } else {
        c = std::pow(double(F.D), (k - 1) / 2.0) * std::pow(2.0, 2 - k) * kPi * std::tgamma(double(k - 1)) /
            (std::exp(kPi * kI * s / 2.0) * gamma_c(s) * gamma_c(double(k) - s));
    }
    auto reps = coset_reps(F, B);
    std::vector<cplx> full(reps.size()), half(reps.size());
    parallel_for(reps.size(), [&](std::size_t lo, std::size_t hi, unsigned) {
        for (std::size_t i = lo; i < hi; ++i) {
            const CosetRep& g = reps[i];
            QuadInt a, b;
            if (g.c.is_zero()) {
                // d is a unit: gamma = diag(d^-1, d)
                a = *F.exact_div(QuadInt{1, 0}, g.d);
                b = QuadInt{0, 0};
            } else {
                auto [x, y] = bezout(F, g.c, g.d);
                a = y;
                b = -x;
            }
            Moebius m{a, b, g.c, g.d};
            Point w = act(F, m, z);
            cplx j = automorphy_norm(F, m, z);
            cplx t = ipow(j, -k) * lipschitz_inner(F, s, w);
            full[i] = t;
            half[i] = g.height <= B / 2 ? t : cplx(0);
        }
    });
    for (std::size_t i = 0; i < reps.size(); ++i) {
        r.value += full[i];
        r.value_half += half[i];
    }
    cplx pre = 0.5 / (c * c);
    r.value *= pre;
    r.value_half *= pre;
    r.terms = reps.size();
    r.tail_estimate = std::abs(r.value - r.value_half);
    return r;
}

// ---------------------------------------------------------------- double Eisenstein series

KernelEvalReport double_eisenstein_numeric(const FieldContext& F, int k, cplx s, cplx w, Point z, double B) {
    KernelEvalReport r;
    r.height_bound = B;
    r.region_ok = double_eisenstein_region(k, s, w);
    if (!r.region_ok)
        throw Error(Errc::RegionViolation, "(s, w) outside 2 < Re s < k-2, Re w < min(Re s - 1, k - 1 - Re s)");
    auto reps = coset_reps(F, B);
    const std::size_t n = reps.size();
    const bool fast = is_integer(s) && is_integer(w);
    std::vector<cplx> J1(n), J2(n), P(n), Q(n);
    for (std::size_t i = 0; i < n; ++i) {
        const CosetRep& g = reps[i];
        J1[i] = g.c1 * z.z1 + g.d1;
        J2[i] = g.c2 * z.z2 + g.d2;
        if (fast) {
            long si = static_cast<long>(s.real());
            P[i] = ipow(J1[i] * J2[i], -si);
            Q[i] = ipow(J1[i] * J2[i], si - k);
        }
    }
    const long wm1 = static_cast<long>(w.real()) - 1;
    unsigned T = std::max(1u, std::thread::hardware_concurrency());
    std::vector<cplx> acc(T), acc_half(T);
    std::vector<std::size_t> cnt(T);
    parallel_for(n, [&](std::size_t lo, std::size_t hi, unsigned t) {
        cplx a = 0, ah = 0;
        std::size_t m = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            const CosetRep& g = reps[i];
            cplx inner = 0, inner_h = 0;
            for (std::size_t j = 0; j < n; ++j) {
                const CosetRep& h = reps[j];
                double x1 = g.c1 * h.d1 - g.d1 * h.c1;
                if (x1 <= 1e-9) continue;
                double x2 = g.c2 * h.d2 - g.d2 * h.c2;
                if (x2 <= 1e-9) continue;
                cplx term;
                if (fast) {
                    double nc = x1 * x2, pw = 1;
                    for (long e = 0; e < wm1; ++e) pw *= nc;
                    term = pw * Q[j];
                } else {
                    cplx lc = (w - 1.0) * (std::log(x1) + std::log(x2));
                    cplx ratio = -s * (std::log(J1[i] / J1[j]) + std::log(J2[i] / J2[j]));
                    term = std::exp(lc + ratio) * ipow(J1[j] * J2[j], -k);
                }
                inner += term;
                if (h.height <= B / 2) inner_h += term;
                ++m;
            }
            if (fast) {
                a += P[i] * inner;
                if (g.height <= B / 2) ah += P[i] * inner_h;
            } else {
                a += inner;
                if (g.height <= B / 2) ah += inner_h;
            }
        }
        acc[t] = a;
        acc_half[t] = ah;
        cnt[t] = m;
    });
    for (unsigned t = 0; t < T; ++t) {
        r.value += acc[t];
        r.value_half += acc_half[t];
        r.terms += cnt[t];
    }
    r.tail_estimate = std::abs(r.value - r.value_half);
    return r;
}

} // namespace hmf
