#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "abssep/criteria.hpp"
#include "abssep/error.hpp"
#include "abssep/fixtures.hpp"
#include "abssep/matricization.hpp"
#include "abssep/oracle.hpp"
#include "abssep/report_json.hpp"

namespace py = pybind11;
using namespace abssep;

namespace {

Tolerances tolerances(double tol, double tol_abs) {
  Tolerances t;
  t.psd_rel = tol;
  t.psd_abs = tol_abs;
  return t;
}

Spectrum spectrum(int m, int n, const std::vector<double>& eigenvalues, bool normalize,
                  double sum_tol) {
  return make_spectrum(Dims(m, n), eigenvalues, sum_tol, normalize);
}

std::vector<std::vector<double>> rows(const SymMatrix& a) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(a.size()));
  for (int r = 0; r < a.size(); ++r)
    for (int c = 0; c < a.size(); ++c) out[static_cast<std::size_t>(r)].push_back(a(r, c));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Spectral tests for absolute PPT states";

  static py::exception<Error> error(mod, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  mod.def(
      "classify",
      [](int m, int n, const std::vector<double>& eigenvalues, bool normalize, double sum_tol,
         double tol, double tol_abs) {
        ClassifyOptions options;
        options.tol = tolerances(tol, tol_abs);
        return to_json(classify(spectrum(m, n, eigenvalues, normalize, sum_tol), options)).dump();
      },
      py::arg("m"), py::arg("n"), py::arg("eigenvalues"), py::arg("normalize") = false,
      py::arg("sum_tol") = 1e-6, py::arg("tol") = 1e-8, py::arg("tol_abs") = 1e-10);

  mod.def(
      "lambda_sym",
      [](int m, int n, const std::vector<double>& eigenvalues, int index, double sum_tol) {
        const auto s = spectrum(m, n, eigenvalues, false, sum_tol);
        const auto pairs = canonical_pairs(s.dims().p());
        if (index < 1 || index > static_cast<int>(pairs.size()))
          throw Error(Errc::IndexOutOfRange, "no canonical ordering with that index");
        return rows(build_lambda_sym(s, pairs[static_cast<std::size_t>(index - 1)]));
      },
      py::arg("m"), py::arg("n"), py::arg("eigenvalues"), py::arg("index"),
      py::arg("sum_tol") = 1e-6);

  mod.def(
      "sym_eigenvalues",
      [](const std::vector<std::vector<double>>& a) {
        SymMatrix m(static_cast<int>(a.size()));
        for (int r = 0; r < m.size(); ++r) {
          if (static_cast<int>(a[static_cast<std::size_t>(r)].size()) != m.size())
            throw Error(Errc::DimensionMismatch, "matrix must be square");
          for (int c = r; c < m.size(); ++c)
            m.set(r, c, a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
        }
        return sym_eigenvalues(m).eigenvalues;
      },
      py::arg("matrix"));

  mod.def("canonical_pair_count", [](int p) { return canonical_pairs(p).size(); }, py::arg("p"));

  mod.def(
      "sample_pair_count",
      [](int p, std::uint64_t seed, int samples) { return sample_pairs(p, seed, samples).size(); },
      py::arg("p"), py::arg("seed"), py::arg("samples"));

  mod.def(
      "sample_spectrum",
      [](int m, int n, std::uint64_t seed, std::uint64_t index) {
        const auto s = sample_spectrum(Dims(m, n), seed, index);
        return std::vector<double>(s.values().begin(), s.values().end());
      },
      py::arg("m"), py::arg("n"), py::arg("seed"), py::arg("index"));

  mod.def(
      "falsify",
      [](int m, int n, const std::vector<double>& eigenvalues, int trials, std::uint64_t seed,
         double sum_tol) {
        return to_json(random_unitary_falsifier(spectrum(m, n, eigenvalues, false, sum_tol), trials,
                                                seed))
            .dump();
      },
      py::arg("m"), py::arg("n"), py::arg("eigenvalues"), py::arg("trials") = 2000,
      py::arg("seed") = 1, py::arg("sum_tol") = 1e-6);

  mod.def(
      "x_witness",
      [](int m, int n, const std::vector<double>& eigenvalues, double sum_tol) -> std::string {
        const auto w = x_witness(spectrum(m, n, eigenvalues, false, sum_tol));
        return w ? to_json(*w).dump() : "null";
      },
      py::arg("m"), py::arg("n"), py::arg("eigenvalues"), py::arg("sum_tol") = 1e-6);

  mod.def(
      "aligned_state_min_pt_eigenvalue",
      [](int m, int n, const std::vector<double>& eigenvalues, const std::vector<double>& x,
         double sum_tol) {
        const auto a = aligned_state(spectrum(m, n, eigenvalues, false, sum_tol), x);
        return std::pair{a.overlap, hermitian_min_eigenvalue(partial_transpose(a.state))};
      },
      py::arg("m"), py::arg("n"), py::arg("eigenvalues"), py::arg("x"), py::arg("sum_tol") = 1e-6);

  mod.def("fixture_names", [] {
    std::vector<std::string> names;
    for (const auto& f : worked_examples()) names.push_back(f.name);
    return names;
  });
  mod.def(
      "fixture_spectrum",
      [](const std::string& name) {
        const auto& f = worked_example(name);
        return py::make_tuple(f.m, f.n, f.eigenvalues, f.sum_tolerance);
      },
      py::arg("name"));
}
