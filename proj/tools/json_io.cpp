#include "json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace twistlab::io {

json to_json(const Q& x) { return to_string(x); }

json to_json(const Z& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json to_json(const QMatrix& m, int sign_exponent) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_string(m(i, j)));
    rows.push_back(r);
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"sign_exponent", sign_exponent}, {"entries", rows}};
}

json to_json(const CyclicMatrix& m) { return to_json(m.m, m.e); }

json to_json(Subset s) { return elements(s); }

json to_json(const std::vector<Subset>& sets) {
  json a = json::array();
  for (Subset s : sets) a.push_back(to_json(s));
  return a;
}

json to_json(const std::vector<AffinePermutation>& fs) {
  json a = json::array();
  for (const auto& f : fs) a.push_back(f.str());
  return a;
}

json to_json(const LeDiagram& d) {
  json rows = json::array();
  for (const auto& r : d.plus) {
    json row = json::array();
    for (char c : r) row.push_back(c ? 1 : 0);
    rows.push_back(row);
  }
  return rows;
}

Q rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Q(j.get<long>());
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

CyclicMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("entries")) throw std::invalid_argument("matrix JSON needs an \"entries\" array");
  const auto& e = j.at("entries");
  const std::size_t r = e.size(), c = r ? e.at(0).size() : 0;
  if (j.contains("rows") && j.at("rows").get<std::size_t>() != r)
    throw std::invalid_argument("matrix JSON: \"rows\" disagrees with entries");
  if (j.contains("cols") && j.at("cols").get<std::size_t>() != c)
    throw std::invalid_argument("matrix JSON: \"cols\" disagrees with entries");
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (e.at(i).size() != c) throw std::invalid_argument("matrix JSON: ragged rows");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = rational_from_json(e.at(i).at(k));
  }
  const int se = j.value("sign_exponent", r > 0 ? static_cast<int>(r) - 1 : 0);
  return CyclicMatrix(m, se);
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace twistlab::io
