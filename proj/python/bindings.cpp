#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hodgebox/diffop.hpp"
#include "hodgebox/fedotov.hpp"
#include "hodgebox/hypmat.hpp"
#include "hodgebox/mixvol.hpp"
#include "hodgebox/serialize.hpp"

namespace py = pybind11;
using namespace hodgebox;

// Rationals cross the boundary as "p/q" strings; the Python side wraps them
// in fractions.Fraction.
using StrMatrix = std::vector<std::vector<std::string>>;

namespace {

RatVector parse_vector(const std::vector<std::string>& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(parse_rational(s));
  return out;
}

RatMatrix parse_matrix(const StrMatrix& rows) {
  std::vector<RatVector> r;
  for (const auto& row : rows) r.push_back(parse_vector(row));
  return RatMatrix::from_rows(r);
}

StrMatrix format_matrix(const RatMatrix& m) {
  StrMatrix out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(to_string(m(i, j)));
  return out;
}

std::vector<BoxBody> parse_boxes(const StrMatrix& widths) {
  std::vector<BoxBody> out;
  for (const auto& w : widths) out.emplace_back(parse_vector(w));
  return out;
}

}  // namespace

PYBIND11_MODULE(_hodgebox, m) {
  m.doc() = "Exact mixed volumes of boxes and Fedotov-matrix certificates";

  m.def(
      "mixed_volume",
      [](const StrMatrix& widths, const std::vector<std::size_t>& multiplicities, bool derivatives) {
        auto boxes = parse_boxes(widths);
        if (boxes.empty()) throw py::value_error("need at least one body");
        std::vector<TupleEntry> entries;
        for (std::size_t i = 0; i < boxes.size(); ++i)
          entries.push_back({boxes[i], multiplicities.empty() ? std::size_t{1} : multiplicities.at(i)});
        BodyTuple t(boxes.front().dim(), entries);
        return to_string(derivatives ? mixed_volume_via_derivatives(t) : mixed_volume(t));
      },
      py::arg("widths"), py::arg("multiplicities") = std::vector<std::size_t>{}, py::arg("derivatives") = false);

  m.def(
      "fedotov_matrix",
      [](const StrMatrix& bodies, std::size_t k, const StrMatrix& tail, std::size_t threads) {
        return format_matrix(build_matrix(parse_boxes(bodies), k, parse_boxes(tail), threads).entries);
      },
      py::arg("bodies"), py::arg("k"), py::arg("tail") = StrMatrix{}, py::arg("threads") = 1);

  m.def("det", [](const StrMatrix& a) { return to_string(det(parse_matrix(a))); });

  m.def("inertia", [](const StrMatrix& a) {
    auto in = inertia(parse_matrix(a));
    return std::make_tuple(in.n_pos, in.n_neg, in.n_zero);
  });

  m.def("is_hyperbolic", [](const StrMatrix& a) { return is_hyperbolic(parse_matrix(a)); });

  m.def(
      "sylvester_violation",
      [](const StrMatrix& a, std::size_t threads) -> std::optional<std::tuple<std::vector<std::size_t>, std::string>> {
        auto v = sylvester_violation(parse_matrix(a), threads);
        if (!v) return std::nullopt;
        return std::make_tuple(v->subset, to_string(v->det));
      },
      py::arg("matrix"), py::arg("threads") = 1);

  m.def(
      "primitive_basis",
      [](std::size_t n, std::size_t k) {
        std::vector<BoxBody> tail(n - std::min(n, 2 * k), BoxBody::unit_cube(n));
        std::vector<std::vector<std::string>> out;
        for (const auto& op : primitive_space_basis(k, BoxBody::unit_cube(n), tail)) {
          std::vector<std::string> row;
          for (const auto& c : op.coordinates()) row.push_back(to_string(c));
          out.push_back(row);
        }
        return out;
      },
      py::arg("n"), py::arg("k"));

  m.def(
      "construct_certificate",
      [](std::size_t n, std::size_t k, std::size_t threads) {
        py::gil_scoped_release release;
        return dump_canonical(certificate_to_json(construct_counterexample(n, k, {threads, kMaxExhaustiveDim})));
      },
      py::arg("n"), py::arg("k"), py::arg("threads") = 1);

  m.def(
      "verify_certificate",
      [](const std::string& json_text, std::size_t threads) {
        Certificate c;
        try {
          c = certificate_from_json(Json::parse(json_text));
        } catch (const std::exception& e) {
          return std::make_tuple(false, std::string("malformed certificate: ") + e.what());
        }
        py::gil_scoped_release release;
        auto r = hodgebox::verify_certificate(c, threads);
        return std::make_tuple(r.ok, r.reason);
      },
      py::arg("certificate"), py::arg("threads") = 1);
}
