#include "hodgebox/serialize.hpp"

#include <stdexcept>

namespace hodgebox {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw std::invalid_argument(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

BigRational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return BigRational(j.get<long>());
  throw std::invalid_argument("rational must be a \"p/q\" string");
}

std::vector<std::size_t> indices_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("index list must be an array");
  std::vector<std::size_t> out;
  for (const auto& e : j) {
    if (!e.is_number_integer() || e.get<long long>() < 0) throw std::invalid_argument("index must be a nonnegative integer");
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

std::vector<BoxBody> boxes_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("body list must be an array");
  std::vector<BoxBody> out;
  for (const auto& e : j) out.push_back(box_from_json(e));
  return out;
}

Json boxes_to_json(const std::vector<BoxBody>& v) {
  Json out = Json::array();
  for (const auto& b : v) out.push_back(box_to_json(b));
  return out;
}

}  // namespace

Json rationals_to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(to_string(e));
  return out;
}

RatVector rationals_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("rational list must be an array");
  RatVector out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

Json matrix_to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(rationals_to_json(RatVector(m.row(i).begin(), m.row(i).end())));
  return out;
}

RatMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
  std::vector<RatVector> rows;
  for (const auto& r : j) rows.push_back(rationals_from_json(r));
  return RatMatrix::from_rows(rows);
}

Json box_to_json(const BoxBody& b) {
  return Json{{"n", b.dim()}, {"widths", rationals_to_json(b.widths())}, {"offset", rationals_to_json(b.offset())}};
}

BoxBody box_from_json(const Json& j) {
  const std::size_t n = size_field(j, "n");
  RatVector widths = rationals_from_json(field(j, "widths"));
  RatVector offset = j.contains("offset") ? rationals_from_json(j.at("offset")) : RatVector(n);
  if (widths.size() != n || offset.size() != n) throw std::invalid_argument("box: widths/offset length differs from n");
  return BoxBody(std::move(widths), std::move(offset));
}

Json tuple_to_json(const BodyTuple& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries()) entries.push_back({{"body", box_to_json(e.body)}, {"multiplicity", e.multiplicity}});
  return Json{{"n", t.dim()}, {"entries", entries}};
}

BodyTuple tuple_from_json(const Json& j) {
  const std::size_t n = size_field(j, "n");
  std::vector<TupleEntry> entries;
  const Json& list = field(j, "entries");
  if (!list.is_array()) throw std::invalid_argument("tuple entries must be an array");
  for (const auto& e : list) {
    const std::size_t mult = e.contains("multiplicity") ? size_field(e, "multiplicity") : 1;
    entries.push_back({box_from_json(field(e, "body")), mult});
  }
  return BodyTuple(n, std::move(entries));
}

Json operator_to_json(const SlabOperator& op) {
  Json terms = Json::array();
  for (auto s : k_subsets(op.dim(), op.degree())) {
    const BigRational c = op.coefficient(s);
    if (sgn(c) == 0) continue;
    terms.push_back({{"S", subset_indices(s)}, {"c", to_string(c)}});
  }
  return Json{{"n", op.dim()}, {"k", op.degree()}, {"terms", terms}};
}

SlabOperator operator_from_json(const Json& j) {
  const std::size_t n = size_field(j, "n");
  const std::size_t k = size_field(j, "k");
  std::map<SubsetMask, BigRational> coeffs;
  for (const auto& t : field(j, "terms")) {
    const auto idx = indices_from_json(field(t, "S"));
    for (auto i : idx)
      if (i >= n) throw std::invalid_argument("operator term index out of range");
    const SubsetMask s = subset_mask(idx);
    if (!coeffs.emplace(s, rational_from_json(field(t, "c"))).second)
      throw std::invalid_argument("operator has a repeated term");
  }
  return SlabOperator(n, k, std::move(coeffs));
}

Json violation_to_json(const Violation& v) { return Json{{"I", v.subset}, {"det", to_string(v.det)}}; }

Violation violation_from_json(const Json& j) {
  return Violation{indices_from_json(field(j, "I")), rational_from_json(field(j, "det"))};
}

Json certificate_to_json(const Certificate& c) {
  Json bodies = Json::array();
  for (const auto& lb : c.bodies) bodies.push_back({{"label", lb.label}, {"box", box_to_json(lb.body)}});
  Json out{
      {"version", c.version}, {"kind", c.kind},        {"n", c.n},
      {"k", c.k},             {"bodies", bodies},      {"C", boxes_to_json(c.tail)},
      {"x", rationals_to_json(c.x)}, {"y", rationals_to_json(c.y)},
      {"matrix", matrix_to_json(c.matrix)}, {"core", c.core},
      {"violation", violation_to_json(c.violation)},  {"trace", c.trace},
  };
  Json pairings = Json::object();
  if (c.x_m_y) pairings["xMy"] = to_string(*c.x_m_y);
  if (c.x_m_x) pairings["xMx"] = to_string(*c.x_m_x);
  out["pairings"] = pairings;
  return out;
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  const Json& version = field(j, "version");
  if (!version.is_number_integer()) throw std::invalid_argument("version must be an integer");
  c.version = version.get<int>();
  c.kind = field(j, "kind").get<std::string>();
  c.n = size_field(j, "n");
  c.k = size_field(j, "k");
  for (const auto& b : field(j, "bodies"))
    c.bodies.push_back({field(b, "label").get<std::string>(), box_from_json(field(b, "box"))});
  c.tail = boxes_from_json(field(j, "C"));
  c.x = rationals_from_json(field(j, "x"));
  c.y = rationals_from_json(field(j, "y"));
  const Json& pairings = field(j, "pairings");
  if (pairings.contains("xMy")) c.x_m_y = rational_from_json(pairings.at("xMy"));
  if (pairings.contains("xMx")) c.x_m_x = rational_from_json(pairings.at("xMx"));
  c.matrix = matrix_from_json(field(j, "matrix"));
  c.core = indices_from_json(field(j, "core"));
  c.violation = violation_from_json(field(j, "violation"));
  c.trace = j.contains("trace") ? j.at("trace") : Json::object();
  return c;
}

FedotovMatrix matrix_input_from_json(const Json& j, std::size_t threads) {
  const std::size_t k = j.contains("k") ? size_field(j, "k") : 1;
  std::vector<BoxBody> bodies;
  if (j.contains("bodies"))
    for (const auto& b : j.at("bodies")) bodies.push_back(b.contains("box") ? box_from_json(b.at("box")) : box_from_json(b));
  return build_matrix(std::move(bodies), k, boxes_from_json(field(j, "C")), threads);
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace hodgebox
