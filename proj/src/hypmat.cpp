#include "hodgebox/hypmat.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#include "hodgebox/parallel.hpp"

namespace hodgebox {

namespace {

void require_symmetric_positive(const RatMatrix& m, const char* what) {
  if (!m.is_symmetric()) throw std::invalid_argument(std::string(what) + ": matrix is not symmetric");
  if (!m.is_positive()) throw std::invalid_argument(std::string(what) + ": matrix has a non-positive entry");
}

// Advances idx to the next k-combination of [n] in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
  if (i == 0) return false;
  ++idx[i - 1];
  for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

}  // namespace

bool Violation::verifies_against(const RatMatrix& m) const {
  if (subset.empty() || !std::is_sorted(subset.begin(), subset.end()) ||
      std::adjacent_find(subset.begin(), subset.end()) != subset.end() || subset.back() >= m.rows())
    return false;
  const BigRational d = hodgebox::det(principal_submatrix(m, subset));
  return d == det && parity_sign() * sgn(d) > 0;
}

bool is_hyperbolic(const RatMatrix& m) {
  require_symmetric_positive(m, "is_hyperbolic");
  return inertia(m).n_pos == 1;
}

std::optional<Violation> sylvester_violation(const RatMatrix& m, std::size_t threads) {
  require_symmetric_positive(m, "sylvester_violation");
  const std::size_t n = m.rows();
  if (n > kMaxExhaustiveDim)
    throw std::length_error("sylvester_violation: dimension too large for exhaustive search; reduce with greedy_core");

  constexpr std::size_t kChunk = 2048;
  for (std::size_t size = 1; size <= n; ++size) {
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    bool more = true;
    while (more) {
      std::vector<std::vector<std::size_t>> batch;
      while (more && batch.size() < kChunk) {
        batch.push_back(idx);
        more = next_combination(idx, n);
      }
      std::vector<BigRational> dets(batch.size());
      parallel_for(batch.size(), threads,
                   [&](std::size_t i) { dets[i] = det(principal_submatrix(m, batch[i])); });
      const int parity = size % 2 == 0 ? 1 : -1;
      for (std::size_t i = 0; i < batch.size(); ++i)
        if (parity * sgn(dets[i]) > 0) return Violation{batch[i], dets[i]};
    }
  }
  return std::nullopt;
}

bool af_form_check(const RatMatrix& m, const RatVector& x, const RatVector& y) {
  if (!m.is_square() || x.size() != m.rows() || y.size() != m.rows())
    throw std::invalid_argument("af_form_check: dimension mismatch");
  auto nonneg = [](const RatVector& v) {
    return std::all_of(v.begin(), v.end(), [](const BigRational& e) { return sgn(e) >= 0; });
  };
  if (!nonneg(x) || !nonneg(y)) throw std::invalid_argument("af_form_check: vectors must be nonnegative");
  const BigRational xy = bilinear(m, x, y);
  return xy * xy >= bilinear(m, x, x) * bilinear(m, y, y);
}

namespace {

bool parallel_vectors(const RatVector& a, const RatVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

}  // namespace

bool EqualityWitness::verifies() const {
  if (x.size() != y.size() || x.empty()) return false;
  auto positive = [](const RatVector& v) {
    return std::all_of(v.begin(), v.end(), [](const BigRational& e) { return sgn(e) > 0; });
  };
  return positive(x) && positive(y) && !parallel_vectors(x, y) && x_m_y * x_m_y == x_m_x * y_m_y;
}

EqualityWitness equality_witness(const RatMatrix& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("equality_witness: matrix is not symmetric");
  if (m.is_zero()) throw std::invalid_argument("equality_witness: matrix is zero");
  if (sgn(det(m)) != 0) throw std::invalid_argument("equality_witness: matrix is nonsingular");

  const RatVector z = nullspace_basis(m).front();
  const std::size_t n = m.rows();
  RatVector y(n, BigRational(1));
  if (parallel_vectors(z, y)) y[0] = 2;
  BigRational worst = 0;
  for (const auto& e : z) worst = std::max(worst, BigRational(-e));
  const BigRational b = 1 + worst;

  EqualityWitness w;
  w.y = y;
  w.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) w.x[i] = z[i] + b * y[i];
  w.x_m_y = bilinear(m, w.x, w.y);
  w.x_m_x = bilinear(m, w.x, w.x);
  w.y_m_y = bilinear(m, w.y, w.y);
  return w;
}

namespace {

// Removal order: indices carrying little weight in the non-Perron positive
// eigenspace go first.
std::vector<std::size_t> removal_order(const RatMatrix& m) {
  const std::size_t n = m.rows();
  Eigen::MatrixXd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j).get_d();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  std::vector<double> weight(n, 0.0);
  if (solver.info() == Eigen::Success) {
    const auto& vals = solver.eigenvalues();  // ascending
    const auto& vecs = solver.eigenvectors();
    const double tol = 1e-9 * std::max(1.0, std::abs(vals(n - 1)));
    for (Eigen::Index c = 0; c + 1 < static_cast<Eigen::Index>(n); ++c) {
      if (vals(c) <= tol) continue;
      for (std::size_t i = 0; i < n; ++i) weight[i] += vecs(i, c) * vecs(i, c);
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return weight[a] < weight[b]; });
  return order;
}

}  // namespace

std::vector<std::size_t> greedy_core(const RatMatrix& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("greedy_core: matrix is not symmetric");
  const std::size_t n = m.rows();
  auto keeps_two = [&](const std::vector<std::size_t>& subset) {
    return !subset.empty() && inertia(principal_submatrix(m, subset)).n_pos >= 2;
  };
  std::vector<bool> alive(n, true);
  auto current = [&] {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
      if (alive[i]) out.push_back(i);
    return out;
  };
  if (n == 0 || inertia(m).n_pos < 2) throw std::invalid_argument("greedy_core: matrix is already hyperbolic");

  // Exact duplicate rows: dropping one is a congruence followed by deleting
  // a zero row, which leaves n_pos unchanged.
  for (std::size_t i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j)
      if (alive[j] && std::equal(m.row(i).begin(), m.row(i).end(), m.row(j).begin())) alive[j] = false;
  }
  if (!keeps_two(current())) throw std::logic_error("greedy_core: duplicate removal lost a positive eigenvalue");

  const auto order = removal_order(m);
  std::size_t chunk = std::max<std::size_t>(1, current().size() / 2);
  while (true) {
    std::vector<std::size_t> candidates;
    for (auto i : order)
      if (alive[i]) candidates.push_back(i);
    for (std::size_t start = 0; start < candidates.size(); start += chunk) {
      const std::size_t stop = std::min(candidates.size(), start + chunk);
      for (std::size_t t = start; t < stop; ++t) alive[candidates[t]] = false;
      if (!keeps_two(current()))
        for (std::size_t t = start; t < stop; ++t) alive[candidates[t]] = true;
    }
    // n_pos only drops on passing to principal submatrices, so a failed
    // single removal stays failed as J shrinks: one pass at chunk 1 leaves J
    // minimal.
    if (chunk == 1) break;
    chunk /= 2;
  }
  return current();
}

}  // namespace hodgebox
