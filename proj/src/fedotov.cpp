#include "hodgebox/fedotov.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <stdexcept>

#include "hodgebox/mixvol.hpp"
#include "hodgebox/parallel.hpp"
#include "hodgebox/serialize.hpp"

namespace hodgebox {

namespace {

void check(bool condition, const std::string& what) {
  if (!condition) throw std::logic_error("exact check failed: " + what);
}

std::vector<BoxBody> cube_tail(std::size_t n, std::size_t count) {
  return std::vector<BoxBody>(count, BoxBody::unit_cube(n));
}

// Distinct bodies plus, for each input position, its slot in that list.
std::pair<std::vector<BoxBody>, std::vector<std::size_t>> dedupe(const std::vector<BoxBody>& bodies) {
  std::map<RatVector, std::size_t> seen;
  std::vector<BoxBody> unique;
  std::vector<std::size_t> slot;
  for (const auto& b : bodies) {
    auto [it, fresh] = seen.try_emplace(b.widths(), unique.size());
    if (fresh) unique.emplace_back(b.widths());
    slot.push_back(it->second);
  }
  return {unique, slot};
}

}  // namespace

RatMatrix mixed_volume_matrix(const std::vector<BoxBody>& bodies, std::size_t k, const std::vector<BoxBody>& tail,
                              MixedVolumePath path, std::size_t threads) {
  const auto [unique, slot] = dedupe(bodies);
  const std::size_t u = unique.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < u; ++i)
    for (std::size_t j = i; j < u; ++j) pairs.emplace_back(i, j);
  std::vector<BigRational> values(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t p) {
    const auto& [i, j] = pairs[p];
    values[p] = path == MixedVolumePath::permanent ? mixed_volume_kk(unique[i], unique[j], k, tail)
                                                   : mixed_volume_kk_via_derivatives(unique[i], unique[j], k, tail);
  });
  std::vector<BigRational> table(u * u);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& [i, j] = pairs[p];
    table[i * u + j] = values[p];
    table[j * u + i] = values[p];
  }
  return RatMatrix::generate(bodies.size(), bodies.size(),
                             [&](std::size_t i, std::size_t j) { return table[slot[i] * u + slot[j]]; });
}

FedotovMatrix build_matrix(std::vector<BoxBody> bodies, std::size_t k, std::vector<BoxBody> tail,
                           std::size_t threads) {
  if (bodies.empty()) throw std::invalid_argument("build_matrix: need at least one body");
  const std::size_t n = bodies.front().dim();
  if (k == 0 || 2 * k + tail.size() != n) throw std::invalid_argument("build_matrix: requires 2k + |C| = n");
  for (const auto& b : bodies)
    if (b.dim() != n) throw std::invalid_argument("build_matrix: body dimension mismatch");
  for (const auto& c : tail)
    if (c.dim() != n) throw std::invalid_argument("build_matrix: C dimension mismatch");
  FedotovMatrix out;
  out.n = n;
  out.k = k;
  out.entries = mixed_volume_matrix(bodies, k, tail, MixedVolumePath::permanent, threads);
  out.bodies = std::move(bodies);
  out.tail = std::move(tail);
  return out;
}

ShephardReport shephard_verify(const FedotovMatrix& m) {
  if (m.k != 1) throw std::invalid_argument("shephard_verify: requires k = 1");
  const std::size_t size = m.entries.rows();
  if (size > kMaxExhaustiveDim) throw std::length_error("shephard_verify: too many bodies for exhaustive check");
  ShephardReport report;
  report.det = det(m.entries);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << size); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < size; ++i)
      if ((mask >> i) & 1u) subset.push_back(i);
    Violation v{subset, det(principal_submatrix(m.entries, subset))};
    ++report.subsets_checked;
    if (v.is_violation() && !report.violation) report.violation = v;
  }
  report.passed = !report.violation.has_value();
  return report;
}

K2Base build_k2_base(std::size_t n, std::size_t threads) {
  if (n < 4) throw std::invalid_argument("k = 2 construction requires n >= 4");
  K2Base base;
  base.n = n;
  const BoxBody cube = BoxBody::unit_cube(n);
  base.tail = cube_tail(n, n - 4);

  // Any nonzero primitive alpha has alpha V != 0 in the squarefree
  // representation, so the first basis vector gives a strict HR inequality.
  const auto basis = primitive_space_basis(2, cube, base.tail);
  check(!basis.empty(), "primitive space is nonzero");
  base.alpha = basis.front();
  check(!apply(base.alpha, SlabPolynomial::volume(n)).is_zero(), "alpha V != 0");
  base.hr_value = hr_form(base.alpha, base.alpha, base.tail);
  check(sgn(base.hr_value) > 0, "alpha^2 D^{n-4} V > 0");

  base.powers = express_as_powers(base.alpha);
  check(base.powers.as_operator() == base.alpha, "power expansion reproduces alpha");
  for (const auto& [x, body] : base.powers.terms) {
    check(body.in_cube_family(), "expansion body is nondegenerate");
    base.bodies.push_back(body);
    base.x.push_back(x);
  }
  base.bodies.push_back(cube);
  base.x.emplace_back(0);
  base.y = RatVector(base.bodies.size(), BigRational(0));
  base.y.back() = 1;

  base.matrix = mixed_volume_matrix(base.bodies, 2, base.tail, MixedVolumePath::permanent, threads);
  check(base.matrix.is_positive(), "matrix is positive");
  base.x_m_y = bilinear(base.matrix, base.x, base.y);
  base.x_m_x = bilinear(base.matrix, base.x, base.x);
  check(sgn(base.x_m_y) == 0, "<x,My> = 0");
  check(base.x_m_x == base.hr_value / BigRational(factorial(n)), "<x,Mx> = alpha^2 D^{n-4} V / n!");
  check(sgn(base.x_m_x) > 0, "<x,Mx> > 0");
  return base;
}

namespace {

// greedy_core, then exhaustive search inside the core, mapped back.
void attach_violation(Certificate& cert, std::size_t max_core_size, std::size_t threads) {
  check(!is_hyperbolic(cert.matrix), "matrix is not hyperbolic");
  cert.core = greedy_core(cert.matrix);
  if (cert.core.size() > max_core_size)
    throw std::runtime_error("core of size " + std::to_string(cert.core.size()) + " exceeds --max-core-size");
  const RatMatrix sub = principal_submatrix(cert.matrix, cert.core);
  auto local = sylvester_violation(sub, threads);
  check(local.has_value(), "core has a violating principal minor");
  Violation global{{}, local->det};
  for (auto i : local->subset) global.subset.push_back(cert.core[i]);
  check(global.verifies_against(cert.matrix), "violation re-verifies on the full matrix");
  cert.violation = std::move(global);
}

}  // namespace

Certificate construct_counterexample_k2(std::size_t n, const PipelineOptions& options) {
  const K2Base base = build_k2_base(n, options.threads);
  Certificate cert;
  cert.kind = "hodge-k2";
  cert.n = n;
  cert.k = 2;
  for (std::size_t i = 0; i < base.bodies.size(); ++i)
    cert.bodies.push_back({"K" + std::to_string(i), base.bodies[i]});
  cert.tail = base.tail;
  cert.x = base.x;
  cert.y = base.y;
  cert.x_m_y = base.x_m_y;
  cert.x_m_x = base.x_m_x;
  cert.matrix = base.matrix;
  cert.trace = {
      {"alpha", operator_to_json(base.alpha)},
      {"hr_value", to_string(base.hr_value)},
      {"m", base.powers.terms.size()},
      {"shifts", rationals_to_json(shift_values(2))},
      {"shift_weights", rationals_to_json(shift_weights(2))},
  };
  attach_violation(cert, options.max_core_size, options.threads);
  return cert;
}

std::string delta_string(std::uint32_t delta, std::size_t k) {
  std::string s;
  for (std::size_t r = 1; r <= k; ++r) s += ((delta >> (k - r)) & 1u) ? '1' : '0';
  return s;
}

namespace {

// delta_r for r = 1..k.
bool delta_bit(std::uint32_t delta, std::size_t k, std::size_t r) { return (delta >> (k - r)) & 1u; }

int polarization_sign(std::uint32_t delta, std::size_t k) {
  return (k + static_cast<std::size_t>(std::popcount(delta))) % 2 == 0 ? 1 : -1;
}

}  // namespace

Reduction build_reduction(const K2Base& base, std::size_t k, std::size_t threads) {
  const std::size_t n = base.n;
  if (k < 2 || 2 * k > n) throw std::invalid_argument("reduction requires 2 <= k <= n/2");
  if (k > 20) throw std::invalid_argument("reduction: k too large");
  Reduction r;
  r.n = n;
  r.k = k;
  r.tail = cube_tail(n, n - 2 * k);
  const BoxBody cube = BoxBody::unit_cube(n);
  const BigRational kfact(factorial(k));
  const std::uint32_t first = std::uint32_t{1} << (k - 1);  // delta = (1, 0, ..., 0)
  for (std::size_t i = 0; i < base.bodies.size(); ++i) {
    for (std::uint32_t delta = 1; delta < (std::uint32_t{1} << k); ++delta) {
      unsigned a = 0, b = 0;
      for (std::size_t t = 1; t <= k; ++t)
        if (delta_bit(delta, k, t)) (t <= 2 ? a : b) += 1;
      const std::vector<WeightedBody> parts{{BigRational(a), base.bodies[i]}, {BigRational(b), cube}};
      r.bodies.push_back(minkowski_combine(parts));
      r.base_index.push_back(i);
      r.delta.push_back(delta);
      r.x.push_back(polarization_sign(delta, k) * base.x[i] / kfact);
      r.y.emplace_back(i + 1 == base.bodies.size() && delta == first ? 1 : 0);
    }
  }
  for (const auto& b : r.bodies) check(b.in_cube_family(), "reduction body is nondegenerate");
  r.matrix = mixed_volume_matrix(r.bodies, k, r.tail, MixedVolumePath::permanent, threads);
  return r;
}

RatMatrix collapse_reduction(const Reduction& r) {
  const std::size_t rows = r.bodies.size();
  const std::size_t per = (std::size_t{1} << r.k) - 1;
  const std::size_t m = rows / per;
  const BigRational kfact(factorial(r.k));
  const BigRational scale = 1 / (kfact * kfact);
  return RatMatrix::generate(m, m, [&](std::size_t i, std::size_t j) -> BigRational {
    BigRational acc = 0;
    for (std::size_t a = 0; a < per; ++a)
      for (std::size_t b = 0; b < per; ++b) {
        const std::size_t p = i * per + a, q = j * per + b;
        const int s = polarization_sign(r.delta[p], r.k) * polarization_sign(r.delta[q], r.k);
        if (s > 0) acc += r.matrix(p, q);
        else acc -= r.matrix(p, q);
      }
    return acc * scale;
  });
}

Certificate reduce_to_general_k(const K2Base& base, std::size_t k, const PipelineOptions& options) {
  const Reduction r = build_reduction(base, k, options.threads);
  Certificate cert;
  cert.kind = "reduction";
  cert.n = r.n;
  cert.k = k;
  for (std::size_t p = 0; p < r.bodies.size(); ++p)
    cert.bodies.push_back({"K" + std::to_string(r.base_index[p]) + "/" + delta_string(r.delta[p], k), r.bodies[p]});
  cert.tail = r.tail;
  cert.x = r.x;
  cert.y = r.y;
  cert.matrix = r.matrix;
  cert.x_m_y = bilinear(r.matrix, r.x, r.y);
  cert.x_m_x = bilinear(r.matrix, r.x, r.x);
  check(*cert.x_m_y == base.x_m_y, "<x~,M~y~> = <x,My>");
  check(*cert.x_m_x == base.x_m_x, "<x~,M~x~> = <x,Mx>");
  check(sgn(*cert.x_m_y) == 0 && sgn(*cert.x_m_x) > 0, "lifted pairings keep their signs");
  check(collapse_reduction(r) == base.matrix, "double polarization recovers the base matrix");
  cert.trace = {
      {"alpha", operator_to_json(base.alpha)},
      {"base_m", base.powers.terms.size()},
      {"base_x_m_x", to_string(base.x_m_x)},
      {"base_x_m_y", to_string(base.x_m_y)},
      {"delta_order", "lexicographic in delta_1..delta_k, zero excluded"},
      {"shifts", rationals_to_json(shift_values(2))},
  };
  attach_violation(cert, options.max_core_size, options.threads);
  return cert;
}

Certificate construct_counterexample(std::size_t n, std::size_t k, const PipelineOptions& options) {
  if (k < 2 || 2 * k > n) throw std::invalid_argument("construct: requires 2 <= k <= n/2");
  if (k == 2) return construct_counterexample_k2(n, options);
  return reduce_to_general_k(build_k2_base(n, options.threads), k, options);
}

RatVector default_search_grid() {
  RatVector grid;
  for (int i = 1; i <= 16; ++i) grid.emplace_back(i, 4);
  for (auto& g : grid) g.canonicalize();
  return grid;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

SearchResult random_search(const SearchOptions& o) {
  if (o.k == 0 || 2 * o.k > o.n) throw std::invalid_argument("search: requires 1 <= k <= n/2");
  if (o.m == 0) throw std::invalid_argument("search: m must be at least 1");
  const RatVector grid = o.grid.empty() ? default_search_grid() : o.grid;
  for (const auto& g : grid)
    if (sgn(g) <= 0) throw std::invalid_argument("search: grid values must be positive");

  struct Trial {
    std::vector<BoxBody> bodies, tail;
    RatMatrix matrix;
    bool hyperbolic = true;
  };
  std::vector<Trial> trials(o.trials);
  parallel_for(o.trials, o.threads, [&](std::size_t t) {
    std::mt19937_64 rng(splitmix64(o.seed ^ splitmix64(t)));
    auto draw = [&] {
      RatVector w(o.n);
      for (auto& e : w) e = grid[rng() % grid.size()];
      return BoxBody(std::move(w));
    };
    Trial& tr = trials[t];
    for (std::size_t i = 0; i < o.m; ++i) tr.bodies.push_back(draw());
    for (std::size_t i = 0; i + 2 * o.k < o.n; ++i) tr.tail.push_back(draw());
    tr.matrix = mixed_volume_matrix(tr.bodies, o.k, tr.tail, MixedVolumePath::permanent);
    tr.hyperbolic = inertia(tr.matrix).n_pos == 1;
  });

  SearchResult result;
  result.stats.trials = o.trials;
  for (std::size_t t = 0; t < trials.size(); ++t) {
    if (trials[t].hyperbolic) continue;
    ++result.stats.non_hyperbolic;
    if (!result.stats.first_hit) result.stats.first_hit = t;
  }
  if (result.stats.first_hit) {
    const std::size_t t = *result.stats.first_hit;
    Certificate cert;
    cert.kind = "direct";
    cert.n = o.n;
    cert.k = o.k;
    for (std::size_t i = 0; i < trials[t].bodies.size(); ++i)
      cert.bodies.push_back({"K" + std::to_string(i), trials[t].bodies[i]});
    cert.tail = trials[t].tail;
    cert.matrix = trials[t].matrix;
    cert.trace = {{"seed", o.seed}, {"trial", t}};
    attach_violation(cert, o.max_core_size, o.threads);
    result.certificate = std::move(cert);
  }
  return result;
}

VerificationResult verify_certificate(const Certificate& c, std::size_t threads) {
  auto fail = [](std::string why) { return VerificationResult{false, std::move(why)}; };
  try {
    if (c.version != 1) return fail("unsupported version");
    if (c.kind != "hodge-k2" && c.kind != "reduction" && c.kind != "direct") return fail("unknown kind");
    if (c.k == 0 || 2 * c.k > c.n) return fail("requires 1 <= k <= n/2");
    if (c.tail.size() != c.n - 2 * c.k) return fail("C-list must hold n - 2k bodies");
    const std::size_t size = c.bodies.size();
    if (size == 0) return fail("no bodies");
    if (c.matrix.rows() != size || c.matrix.cols() != size) return fail("matrix size does not match body count");

    std::vector<BoxBody> bodies;
    for (const auto& lb : c.bodies) {
      if (lb.body.dim() != c.n) return fail("body " + lb.label + " has wrong dimension");
      if (!lb.body.in_cube_family()) return fail("body " + lb.label + " is degenerate");
      bodies.push_back(lb.body);
    }
    for (const auto& t : c.tail) {
      if (t.dim() != c.n) return fail("C body has wrong dimension");
      if (!t.in_cube_family()) return fail("C body is degenerate");
    }

    const RatMatrix recomputed = mixed_volume_matrix(bodies, c.k, c.tail, MixedVolumePath::derivatives, threads);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j)
        if (recomputed(i, j) != c.matrix(i, j))
          return fail("matrix entry (" + std::to_string(i) + "," + std::to_string(j) + ") does not match");

    if (c.kind != "direct") {
      if (c.x.size() != size || c.y.size() != size) return fail("x, y sizes do not match the matrix");
      if (std::any_of(c.y.begin(), c.y.end(), [](const BigRational& v) { return sgn(v) < 0; }) ||
          std::all_of(c.y.begin(), c.y.end(), [](const BigRational& v) { return sgn(v) == 0; }))
        return fail("y must be nonnegative and nonzero");
      const BigRational xy = bilinear(recomputed, c.x, c.y);
      const BigRational xx = bilinear(recomputed, c.x, c.x);
      if (sgn(xy) != 0) return fail("<x,My> != 0");
      if (sgn(xx) <= 0) return fail("<x,Mx> <= 0");
      if (!c.x_m_y || *c.x_m_y != xy || !c.x_m_x || *c.x_m_x != xx) return fail("recorded pairings do not match");
    }

    const auto& I = c.violation.subset;
    if (I.empty() || !std::is_sorted(I.begin(), I.end()) || std::adjacent_find(I.begin(), I.end()) != I.end() ||
        I.back() >= size)
      return fail("violating subset is malformed");
    const BigRational d = det(principal_submatrix(recomputed, I));
    if (d != c.violation.det) return fail("recorded det M_I does not match");
    if (c.violation.parity_sign() * sgn(d) <= 0) return fail("(-1)^|I| det M_I is not positive");
    return {true, "ok"};
  } catch (const std::exception& e) {
    return fail(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace hodgebox
