#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "egelab/charpoly.hpp"
#include "egelab/chebmod.hpp"
#include "egelab/cli.hpp"
#include "egelab/errors.hpp"
#include "egelab/gaflimit.hpp"
#include "egelab/hermite.hpp"
#include "egelab/momentcomb.hpp"
#include "egelab/sampling.hpp"
#include "egelab/spectrum.hpp"
#include "egelab/tracestats.hpp"
#include "egelab/wickoracle.hpp"

namespace py = pybind11;
using namespace egelab;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

CArray to_numpy(const CMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.order());
  CArray out({n, n});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

CMatrix from_numpy(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw DimensionError("expected a square 2-D array");
  const auto n = static_cast<std::size_t>(a.shape(0));
  return CMatrix(n, std::vector<cplx>(a.data(), a.data() + n * n));
}

CArray vector_to_numpy(const std::vector<cplx>& v) {
  // Explicit strides: the count-only constructor yields a zero stride with some pybind11 builds.
  CArray out({static_cast<py::ssize_t>(v.size())}, {static_cast<py::ssize_t>(sizeof(cplx))});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> real_to_numpy(const std::vector<double>& v) {
  py::array_t<double> out({static_cast<py::ssize_t>(v.size())}, {static_cast<py::ssize_t>(sizeof(double))});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict estimate_to_dict(const MomentEstimate& est) {
  const auto k = static_cast<py::ssize_t>(est.kmax);
  auto values = [k](const CTable& t) {
    CArray v({k, k});
    std::copy(t.values.begin(), t.values.end(), v.mutable_data());
    return v;
  };
  auto errors = [k](const CTable& t) {
    py::array_t<double> se({k, k});
    std::copy(t.stderr_.begin(), t.stderr_.end(), se.mutable_data());
    return se;
  };
  py::dict d;
  d["reps"] = est.reps;
  d["mean"] = vector_to_numpy(est.mean);
  d["mean_se"] = real_to_numpy(est.mean_se);
  d["cov_sq"] = values(est.cov_sq);
  d["cov_sq_se"] = errors(est.cov_sq);
  d["cov_abs"] = values(est.cov_abs);
  d["cov_abs_se"] = errors(est.cov_abs);
  d["cum4"] = real_to_numpy(est.cum4);
  d["cum4_se"] = real_to_numpy(est.cum4_se);
  return d;
}

}  // namespace

PYBIND11_MODULE(_egelab, m) {
  m.doc() = "Elliptic Ginibre ensemble: samplers, characteristic polynomials and trace statistics";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_RuntimeError);

  m.def(
      "sample_ege",
      [](std::size_t n, double t, std::uint64_t seed, std::uint64_t index) {
        const EgeParams p{n, t, seed};
        p.validate();
        SampleStream s = derive_stream(seed, index);
        return to_numpy(sample_ege(s, p));
      },
      py::arg("n"), py::arg("t"), py::arg("seed") = 0, py::arg("index") = 0);

  m.def(
      "eigenvalues",
      [](const CArray& a) {
        const Spectrum s = eigenvalues(from_numpy(a));
        return py::make_tuple(vector_to_numpy(s.eigenvalues), s.converged);
      },
      py::arg("a"), "Eigenvalues and a convergence flag.");

  m.def(
      "log_f",
      [](const CArray& a, double t, cplx z) {
        const ScaledComplex v = eval_f(from_numpy(a), t, z);
        return py::make_tuple(v.log_abs(), v.arg());
      },
      py::arg("a"), py::arg("t"), py::arg("z"), "(log|f|, arg f) of the normalised characteristic polynomial.");

  m.def(
      "f_value",
      [](const CArray& a, double t, cplx z) { return eval_f(from_numpy(a), t, z).value(); }, py::arg("a"), py::arg("t"),
      py::arg("z"));

  m.def(
      "portrait_ppm",
      [](const CArray& a, double t, cplx center, double half_width, int resolution) {
        const Grid g{center, half_width, resolution};
        return py::bytes(ppm_bytes(render_portrait(eval_grid(from_numpy(a), t, g))));
      },
      py::arg("a"), py::arg("t"), py::arg("center") = cplx{0.0, 0.0}, py::arg("half_width") = 1.0,
      py::arg("resolution") = 256);

  m.def("g_map", &g_map, py::arg("t"), py::arg("z"));
  m.def("g_inverse", &g_inverse, py::arg("t"), py::arg("u"));

  m.def("exact_second_moment", &exact_second_moment, py::arg("n"), py::arg("t"), py::arg("z"));
  m.def("asymptotic_second_moment", &asymptotic_second_moment, py::arg("t"), py::arg("z"));
  m.def("limit_second_moment", &limit_second_moment, py::arg("t"), py::arg("z"));

  m.def(
      "cheb_poly", [](int k, double t) { return cheb_poly(k, t).coeffs; }, py::arg("k"), py::arg("t"));
  m.def("h_coeff", &h_coeff, py::arg("k"), py::arg("t"));
  m.def(
      "cov_table",
      [](double t, int max_degree) {
        const CovTable tab = build_cov_table(t, max_degree);
        py::dict d;
        d["phi"] = tab.phi;
        d["phi_c"] = tab.phi_c;
        return d;
      },
      py::arg("t"), py::arg("max_degree"));
  m.def("exact_trace_expectation", &exact_trace_expectation, py::arg("n"), py::arg("k"), py::arg("t"));

  m.def(
      "compute_U", [](const CArray& a, double t, int kmax) { return vector_to_numpy(compute_U(from_numpy(a), t, kmax).u); },
      py::arg("a"), py::arg("t"), py::arg("kmax"));
  m.def(
      "mc_moments",
      [](std::size_t n, double t, std::uint64_t seed, int reps, int kmax) {
        MomentEstimate est;
        {
          py::gil_scoped_release release;
          est = mc_moments(EgeParams{n, t, seed}, reps, kmax);
        }
        return estimate_to_dict(est);
      },
      py::arg("n"), py::arg("t"), py::arg("seed"), py::arg("reps"), py::arg("kmax") = kDefaultKmax);

  m.def(
      "sample_f_limit",
      [](double t, const std::vector<cplx>& zs, std::uint64_t seed, std::uint64_t index, int K) {
        SampleStream s = derive_stream(seed, index);
        return vector_to_numpy(sample_f_limit(s, t, K, zs));
      },
      py::arg("t"), py::arg("zs"), py::arg("seed") = 0, py::arg("index") = 0, py::arg("K") = kDefaultGafTruncation);

  m.def(
      "outlier_count",
      [](const CArray& eigs, std::size_t n, double t, double inflation) {
        Spectrum s{std::vector<cplx>(eigs.data(), eigs.data() + eigs.size()), true};
        return outlier_count(s, n, EllipseSpec{t, inflation});
      },
      py::arg("eigenvalues"), py::arg("n"), py::arg("t"), py::arg("inflation") = 1.0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the ege_lab command line in-process; returns (exit code, stdout, stderr).");
}
