#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "tpsharp/chebyshev.hpp"
#include "tpsharp/constructions.hpp"
#include "tpsharp/error.hpp"
#include "tpsharp/positivity.hpp"
#include "tpsharp/sequences.hpp"
#include "tpsharp/serialize.hpp"

namespace py = pybind11;
using namespace tpsharp;

namespace {

// Floats always become approx; ints and strings are parsed like file cells.
// Results come back as JSON text, decoded on the Python side.
Scalar to_scalar(py::handle h) {
  if (py::isinstance<py::bool_>(h)) throw Error(ErrorCode::ParseError, "booleans are not numbers");
  if (py::isinstance<py::int_>(h)) return Scalar(parse_rational(py::str(h).cast<std::string>()));
  if (py::isinstance<py::float_>(h)) return Scalar::approx(h.cast<double>());
  if (py::isinstance<py::str>(h)) return parse_scalar(h.cast<std::string>());
  // fractions.Fraction and friends
  return parse_scalar(py::str(h).cast<std::string>());
}

Rational to_rational(py::handle h) {
  const Scalar s = to_scalar(h);
  if (!s.is_exact()) throw Error(ErrorCode::NotExact, "expected an exact rational (int or \"p/q\" string)");
  return s.rational();
}

Matrix to_matrix(const py::sequence& rows) {
  std::vector<std::vector<Scalar>> out;
  for (py::handle r : rows) {
    std::vector<Scalar> row;
    for (py::handle c : r.cast<py::sequence>()) row.push_back(to_scalar(c));
    out.push_back(std::move(row));
  }
  return Matrix::from_rows(out);
}

std::vector<Scalar> to_sequence(const py::sequence& s) {
  std::vector<Scalar> out;
  for (py::handle h : s) out.push_back(to_scalar(h));
  return out;
}

std::string dump(const nlohmann::json& j) { return j.dump(); }

template <class T>
std::string dump_list(const std::vector<T>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a.dump();
}

CheckOptions options(double tau) {
  CheckOptions o;
  o.tau = tau;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Compiled core of tpsharp";

  static py::exception<Error> error_type(m, "TpsharpError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object pos = py::none();
      if (e.position()) pos = py::make_tuple(e.position()->first, e.position()->second);
      py::tuple args = py::make_tuple(std::string(to_string(e.code())), e.what(), pos);
      PyErr_SetObject(error_type.ptr(), args.ptr());
    }
  });

  m.attr("DEFAULT_TAU") = kDefaultTau;

  m.def("det_exact", [](const py::sequence& a) { return to_string(det_exact(to_matrix(a))); });
  m.def(
      "det_float",
      [](const py::sequence& a, double tau) {
        const FloatDet d = det_float(to_matrix(a).to_approx(), tau);
        return py::make_tuple(d.value, std::string(to_string(d.sign.verdict)));
      },
      py::arg("matrix"), py::arg("tau") = kDefaultTau);

  m.def("ck_enclosure", [](int k, py::handle w) { return dump(to_json(ck_enclosure(k, to_rational(w)))); });
  m.def("constant_c_tilde", [](py::handle w) { return dump(to_json(constant_c_tilde(to_rational(w)))); });
  m.def("constant_d", [](py::handle w) { return dump(to_json(constant_d(to_rational(w)))); });

  m.def("f_closed", [](int k, py::handle c) { return f_closed(k, to_scalar(c)).str(); });
  m.def("f_recurrence", [](int k, py::handle c) { return dump(to_json(f_recurrence(k, to_scalar(c)))); });

  m.def("critical_ratio", [](const py::sequence& a) { return dump(to_json(critical_ratio(to_matrix(a)))); });
  m.def(
      "minor_scan",
      [](const py::sequence& a, std::size_t k, bool contiguous, double tau) {
        return dump(to_json(minor_scan(to_matrix(a), k, contiguous ? MinorMode::Contiguous : MinorMode::All, tau)));
      },
      py::arg("matrix"), py::arg("k"), py::arg("contiguous") = false, py::arg("tau") = kDefaultTau);

  m.def(
      "theorem1_check",
      [](const py::sequence& a, bool strict, double tau) {
        return dump(to_json(theorem1_check(to_matrix(a), strict, options(tau))));
      },
      py::arg("matrix"), py::arg("strict") = false, py::arg("tau") = kDefaultTau);
  m.def(
      "theorem2_check",
      [](const py::sequence& a, std::size_t k, bool strict, double tau) {
        return dump(to_json(theorem2_check(to_matrix(a), k, strict, options(tau))));
      },
      py::arg("matrix"), py::arg("k"), py::arg("strict") = false, py::arg("tau") = kDefaultTau);
  m.def(
      "theorem3_check",
      [](const py::sequence& a, double tau) { return dump(to_json(theorem3_check(to_matrix(a), options(tau)))); },
      py::arg("matrix"), py::arg("tau") = kDefaultTau);
  m.def(
      "theorem5_check",
      [](const py::sequence& a, double tau) { return dump(to_json(theorem5_check(to_matrix(a), options(tau)))); },
      py::arg("matrix"), py::arg("tau") = kDefaultTau);
  m.def("theorem6_bound",
        [](const py::sequence& a, py::handle c) { return dump(to_json(theorem6_bound(to_matrix(a), to_scalar(c)))); });
  m.def("proof_chain_check",
        [](const py::sequence& a, py::handle c) { return dump_list(proof_chain_check(to_matrix(a), to_scalar(c))); });

  m.def("toeplitz_mn", [](std::size_t n, double phi) { return dump(to_json(toeplitz_mn(n, phi))); });
  m.def("det_mn_closed", &det_mn_closed);
  m.def("epsilon_cascade", &epsilon_cascade);
  m.def("hankel_dn",
        [](std::size_t n, py::handle p, py::handle q) { return dump(to_json(hankel_dn(n, to_scalar(p), to_scalar(q)))); });
  m.def("lemma4_exponents", &lemma4_exponents);
  m.def("lemma4_leading_check", [](int n, py::handle p, const py::sequence& qs) {
    std::vector<Rational> q;
    for (py::handle h : qs) q.push_back(to_rational(h));
    return dump(to_json(lemma4_leading_check(n, to_rational(p), q)));
  });
  m.def("toeplitz_witness", [](int k, py::handle c) { return dump(to_json(toeplitz_witness(k, to_scalar(c)))); });
  m.def("hankel_witness", [](int k, py::handle c) { return dump(to_json(hankel_witness(k, to_scalar(c)))); });

  m.def("pfm_check", [](const py::sequence& s, std::size_t m_, std::size_t n) {
    return dump(to_json(pfm_check(to_sequence(s), m_, n)));
  });
  m.def("hutchinson_ratio", [](const py::sequence& s) { return dump(to_json(hutchinson_ratio(to_sequence(s)))); });
  m.def(
      "corollary5_check",
      [](const py::sequence& s, std::size_t m_, std::optional<std::size_t> n) {
        return dump(to_json(corollary5_check(to_sequence(s), m_, n)));
      },
      py::arg("seq"), py::arg("m"), py::arg("N") = py::none());
  m.def("hankel_moment_check",
        [](const py::sequence& s, std::size_t k) { return dump_list(hankel_moment_check(to_sequence(s), k)); });
  m.def("corollary3_moment_check", [](const py::sequence& s, std::size_t k) {
    return dump(to_json(corollary3_moment_check(to_sequence(s), k)));
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<std::string> full{"tpsharp"};
    full.insert(full.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = cli::run(full, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
