#include <pybind11/pybind11.h>

#include "padiq/json_io.hpp"
#include "padiq/paper_checks.hpp"

namespace py = pybind11;

namespace {

using namespace padiq;

Rat target_of(const std::string& a) {
  Rat r(a);
  r.canonicalize();
  return r;
}

std::string jordan_s(const std::string& form, long p) {
  return jordan_json(jordan_decompose(parse_form_string(form), p)).dump();
}

std::string rep_s(const std::string& form, long p, const std::string& a,
                  bool primitive) {
  return rep_json(decide_representation(parse_form_string(form), p,
                                        target_of(a), primitive))
      .dump();
}

std::string spectrum_s(const std::string& form, long p, long e_max,
                       bool primitive) {
  return spectrum_json(spectrum(parse_form_string(form), p, e_max, primitive))
      .dump();
}

std::string universal_s(const std::string& form, long p) {
  return report_json(is_primitively_universal_local(parse_form_string(form), p))
      .dump();
}

std::string gap_s(const std::string& form, long p) {
  return gap_json(anisotropic_gap(parse_form_string(form), p)).dump();
}

std::string scan_s(const std::string& form, long bound, int threads) {
  return scan_json(enumerate_values(parse_form_string(form), bound, threads))
      .dump();
}

std::string verdict_s(const std::string& form) {
  FormMatrix L = parse_form_string(form);
  return verdict_json(almost_universality_verdict(L), L).dump();
}

std::string theorem3_s(const std::string& form) {
  return theorem3_json(theorem3_check(parse_form_string(form))).dump();
}

bool isotropic_s(const std::string& form, long p) {
  return is_isotropic(parse_form_string(form), p);
}

}  // namespace

PYBIND11_MODULE(_padiq, m) {
  m.doc() = "exact p-adic representation analysis for integral quadratic forms";
  m.def("jordan", &jordan_s, py::arg("form"), py::arg("p"));
  m.def("rep", &rep_s, py::arg("form"), py::arg("p"), py::arg("a"),
        py::arg("primitive") = false);
  m.def("spectrum", &spectrum_s, py::arg("form"), py::arg("p"),
        py::arg("e_max") = 4, py::arg("primitive") = false);
  m.def("universal", &universal_s, py::arg("form"), py::arg("p"));
  m.def("gap", &gap_s, py::arg("form"), py::arg("p"));
  m.def("scan", &scan_s, py::arg("form"), py::arg("bound"),
        py::arg("threads") = 1);
  m.def("verdict", &verdict_s, py::arg("form"));
  m.def("theorem3", &theorem3_s, py::arg("form"));
  m.def("is_isotropic", &isotropic_s, py::arg("form"), py::arg("p"));
  m.def(
      "hilbert_symbol",
      [](long a, long b, long p) { return hilbert_symbol(Rat(a), Rat(b), p); },
      py::arg("a"), py::arg("b"), py::arg("p"));
  m.def(
      "square_class",
      [](const std::string& a, long p) {
        return class_json(square_class(target_of(a), p)).dump();
      },
      py::arg("a"), py::arg("p"));
}
