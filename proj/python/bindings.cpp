#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hmf/hecke.hpp"
#include "hmf/kernels.hpp"
#include "hmf/lvalues.hpp"

namespace py = pybind11;
using namespace hmf;

namespace {

std::vector<std::string> strs(const std::vector<mpq_class>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(x.get_str());
    return out;
}

py::dict formal(const FormalScalar& f) {
    py::dict d;
    d["q"] = f.q().get_str();
    d["i"] = f.i_exp();
    d["pi"] = f.pi_exp();
    d["sqrtD"] = f.sqrtD_exp();
    return d;
}

py::dict expansion(const FourierExpansion& f) {
    py::dict d;
    d["weight"] = f.weight();
    d["trace_bound"] = f.trace_bound();
    d["const"] = f.const_term().get_str();
    const FieldContext& F = *f.field();
    py::list idx;
    for (const auto& x : f.index()->members()) {
        QuadRat xi = F.index_to_xi(x);
        idx.append(py::make_tuple(xi.a.get_str(), xi.b.get_str()));
    }
    d["xi"] = idx;
    d["coeffs"] = strs(f.coeffs());
    d["cuspidal"] = f.is_cuspidal();
    d["symmetric"] = f.is_symmetric();
    d["diagonal"] = strs(diagonal_restriction(f));
    return d;
}

py::dict report(const KernelEvalReport& r) {
    py::dict d;
    d["value"] = r.value;
    d["value_half"] = r.value_half;
    d["tail"] = r.tail_estimate;
    d["region_ok"] = r.region_ok;
    d["terms"] = r.terms;
    return d;
}

Point point(std::complex<double> z1, std::complex<double> z2) { return {z1, z2}; }

py::list checks(const std::vector<IdentityCheck>& v) {
    py::list l;
    for (const auto& c : v) l.append(py::make_tuple(c.description, c.pass));
    return l;
}

} // namespace

PYBIND11_MODULE(_hmf, m) {
    m.doc() = "Hilbert modular forms over real quadratic fields of narrow class number one";

    static py::exception<Error> exc(m, "HmfError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(exc, e.what());
        }
    });

    m.def("field_info", [](long D) {
        Field F = make_field(D);
        py::dict d;
        d["D"] = F->D;
        d["eps0"] = py::make_tuple(F->eps0.a, F->eps0.b);
        d["eps0_norm"] = F->narrow.eps0_norm;
        py::list primes;
        for (const auto& p : primes_below(*F, 50))
            primes.append(py::make_tuple(p.norm, prime_type_name(p.type), py::make_tuple(p.gen.a, p.gen.b)));
        d["primes"] = primes;
        return d;
    }, py::arg("D"));

    m.def("zeta_neg", [](long D, int m_) { return zetaF_neg(*make_field(D), m_).get_str(); }, py::arg("D"), py::arg("m"),
          "zeta_F(1 - m) for even m as an exact rational string");

    m.def("eisenstein", [](long D, int k, long N) {
        EisensteinSeries E = eisenstein(make_field(D), k, N);
        py::dict d = expansion(E.f);
        d["c"] = E.c.get_str();
        return d;
    }, py::arg("D"), py::arg("k"), py::arg("N"));

    m.def("bracket", [](long D, int k1, int k2, int nu, long N) {
        Field F = make_field(D);
        Bracket b = rc_bracket(eisenstein(F, k1, N).f, eisenstein(F, k2, N).f, nu);
        py::dict d = expansion(b.f);
        d["multiplier"] = formal(b.multiplier);
        return d;
    }, py::arg("D"), py::arg("k1"), py::arg("k2"), py::arg("nu"), py::arg("N"));

    m.def("cusp_dimension", [](long D, int k, long N) { return cusp_space(make_field(D), k, N).basis.size(); },
          py::arg("D"), py::arg("k"), py::arg("N"));

    m.def("eigenforms", [](long D, int k, long N) {
        EigenSystem sys = eigenforms(make_field(D), k, N);
        py::list out;
        for (const auto& f : sys.forms) {
            py::dict d;
            d["minpoly"] = strs(f.minpoly);
            py::dict ev;
            for (const auto& [p, l] : f.eigenvalues) ev[py::str(to_string(p.ideal))] = strs(l.coeffs());
            d["eigenvalues"] = ev;
            out.append(d);
        }
        return out;
    }, py::arg("D"), py::arg("k"), py::arg("N"), "eigenvalues as coefficient lists in the generator of the Hecke field");

    m.def("lgrid", [](long D, int k, long N) {
        CoefficientMatrix M = coefficient_matrix(make_field(D), k, N);
        py::dict d;
        py::list entries;
        for (std::size_t i = 0; i < M.entries.size(); ++i) {
            const auto& e = M.entries[i];
            py::list c;
            for (const auto& v : M.c[i]) c.append(py::make_tuple(strs(v.x.coeffs()), formal(v.monomial)));
            entries.append(py::make_tuple(py::make_tuple(e.p.k1, e.p.k2, e.p.nu), py::make_tuple(e.p.s, e.p.w), c));
        }
        d["entries"] = entries;
        d["funceq"] = checks(funceq_check(M).checks);
        try {
            d["rank1"] = checks(rank1_check(M).minors);
        } catch (const Error& e) {
            if (e.code() != Errc::GridTooSparse) throw;
            d["rank1"] = py::list();
        }
        auto ra = rationality_check(M);
        d["rationality"] = checks(ra.entries);
        d["galois"] = checks(ra.galois);
        return d;
    }, py::arg("D"), py::arg("k"), py::arg("N"));

    m.def("lipschitz_check", [](long D, std::complex<double> s, std::complex<double> z1, std::complex<double> z2, int lattice_bound,
                                int xi_bound) {
        auto r = lipschitz_check(*make_field(D), s, point(z1, z2), lattice_bound, xi_bound);
        py::dict d;
        d["lhs"] = r.lhs;
        d["rhs"] = r.rhs;
        d["diff"] = r.diff;
        d["lhs_tail"] = r.lhs_tail;
        d["rhs_next"] = r.rhs_next;
        return d;
    }, py::arg("D"), py::arg("s"), py::arg("z1"), py::arg("z2"), py::arg("lattice_bound") = 200, py::arg("xi_bound") = 40);

    m.def("coset_count", [](long D, double B) { return coset_reps(*make_field(D), B).size(); }, py::arg("D"), py::arg("B"));

    m.def("eisenstein_numeric", [](long D, int k, std::complex<double> z1, std::complex<double> z2, double B) {
        return report(eisenstein_numeric(*make_field(D), k, point(z1, z2), B));
    }, py::arg("D"), py::arg("k"), py::arg("z1"), py::arg("z2"), py::arg("B"));

    m.def("cohen_kernel", [](long D, int k, std::complex<double> s, std::complex<double> z1, std::complex<double> z2, double B) {
        return report(cohen_kernel_numeric(*make_field(D), k, s, point(z1, z2), B));
    }, py::arg("D"), py::arg("k"), py::arg("s"), py::arg("z1"), py::arg("z2"), py::arg("B"));

    m.def("double_eisenstein", [](long D, int k, std::complex<double> s, std::complex<double> w, std::complex<double> z1,
                                  std::complex<double> z2, double B) {
        return report(double_eisenstein_numeric(*make_field(D), k, s, w, point(z1, z2), B));
    }, py::arg("D"), py::arg("k"), py::arg("s"), py::arg("w"), py::arg("z1"), py::arg("z2"), py::arg("B"));

    m.def("evaluate", [](long D, int k, long N, std::complex<double> z1, std::complex<double> z2) {
        return evaluate_numeric(eisenstein(make_field(D), k, N).f, z1, z2).value;
    }, py::arg("D"), py::arg("k"), py::arg("N"), py::arg("z1"), py::arg("z2"), "normalized Eisenstein series at a point");
}
