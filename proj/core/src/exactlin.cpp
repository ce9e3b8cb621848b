#include <sstream>

#include "twistlab/plucker.hpp"

namespace twistlab {

std::vector<Subset> k_subsets(int n, int k) {
  std::vector<Subset> out;
  if (k < 0 || k > n) return out;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i + 1;
  while (true) {
    out.push_back(make_subset(c));
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

std::string subset_label(Subset s, int n) {
  std::ostringstream os;
  auto el = elements(s);
  if (n < 10) {
    for (int x : el) os << x;
    if (el.empty()) os << "{}";
    return os.str();
  }
  os << "{";
  for (std::size_t i = 0; i < el.size(); ++i) os << (i ? "," : "") << el[i];
  os << "}";
  return os.str();
}

std::string to_debug_string(const QMatrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "[";
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).get_str();
    os << "]\n";
  }
  return os.str();
}

const Q& PluckerVector::operator[](Subset s) const {
  if (s >= pos.size() || pos[s] < 0) throw std::out_of_range("PluckerVector: subset not of size k");
  return coords[static_cast<std::size_t>(pos[s])];
}

PluckerVector PluckerVector::normalized() const {
  PluckerVector p = *this;
  for (const auto& c : coords) {
    if (c != 0) {
      Q inv = 1 / c;
      for (auto& x : p.coords) x *= inv;
      return p;
    }
  }
  return p;
}

std::vector<Subset> PluckerVector::support_sets() const {
  std::vector<Subset> s;
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (coords[i] != 0) s.push_back(sets[i]);
  return s;
}

PluckerVector plucker(const QMatrix& m) {
  PluckerVector p;
  p.k = static_cast<int>(m.rows());
  p.n = static_cast<int>(m.cols());
  p.sets = k_subsets(p.n, p.k);
  p.coords.reserve(p.sets.size());
  p.pos.assign(std::size_t(1) << p.n, -1);
  for (std::size_t i = 0; i < p.sets.size(); ++i) p.pos[p.sets[i]] = static_cast<int>(i);
  std::vector<std::size_t> rs(m.rows());
  for (std::size_t i = 0; i < rs.size(); ++i) rs[i] = i;
  bool any = false;
  for (Subset s : p.sets) {
    std::vector<std::size_t> cs;
    for (int x : elements(s)) cs.push_back(static_cast<std::size_t>(x - 1));
    p.coords.push_back(det(m.submatrix(rs, cs)));
    any = any || p.coords.back() != 0;
  }
  if (!any) throw RankDeficient("plucker: matrix does not have full row rank");
  return p;
}

bool projective_equal(const PluckerVector& p, const PluckerVector& q) {
  if (p.k != q.k || p.n != q.n) return false;
  auto a = p.normalized(), b = q.normalized();
  return a.coords == b.coords;
}

bool same_row_span(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return projective_equal(plucker(a), plucker(b));
}

Q three_term_residual(const PluckerVector& p, Subset s, int a, int b, int c, int d) {
  auto D = [&](int x, int y) { return p[s | singleton(x) | singleton(y)]; };
  return D(a, c) * D(b, d) - D(a, b) * D(c, d) - D(a, d) * D(b, c);
}

}  // namespace twistlab
