#include "hodgebox/suites.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "hodgebox/cubefam.hpp"
#include "hodgebox/diffop.hpp"
#include "hodgebox/exactlin.hpp"
#include "hodgebox/fedotov.hpp"
#include "hodgebox/hypmat.hpp"
#include "hodgebox/mixvol.hpp"

namespace hodgebox::suites {

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::size_t range(std::size_t lo, std::size_t hi) { return lo + rng_() % (hi - lo + 1); }
  long integer(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  BigRational positive() {
    BigRational r(integer(1, 8), integer(1, 4));
    r.canonicalize();
    return r;
  }
  BigRational nonnegative() {
    BigRational r(integer(0, 6), integer(1, 3));
    r.canonicalize();
    return r;
  }
  BigRational any() {
    BigRational r(integer(-6, 6), integer(1, 3));
    r.canonicalize();
    return r;
  }
  BoxBody box(std::size_t n) {
    RatVector w(n), off(n);
    for (auto& e : w) e = positive();
    for (auto& e : off) e = any();
    return BoxBody(std::move(w), std::move(off));
  }
  std::vector<BoxBody> boxes(std::size_t n, std::size_t count) {
    std::vector<BoxBody> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(box(n));
    return out;
  }
  RatVector vec(std::size_t n, bool nonneg) {
    RatVector v(n);
    for (auto& e : v) e = nonneg ? nonnegative() : any();
    return v;
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

class Recorder {
 public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }
  void expect(bool ok, const std::function<std::string()>& describe) {
    ++result_.cases;
    if (!ok) {
      if (result_.failures == 0) result_.detail = describe();
      ++result_.failures;
    }
  }
  SuiteResult done() { return result_; }

 private:
  SuiteResult result_;
};

std::string widths_str(const BoxBody& b) {
  std::ostringstream os;
  os << "(";
  for (std::size_t j = 0; j < b.dim(); ++j) os << (j ? "," : "") << to_string(b.widths()[j]);
  os << ")";
  return os.str();
}

}  // namespace

SuiteResult af_suite(std::size_t per_n, std::uint64_t seed) {
  Recorder rec("alexandrov-fenchel");
  Sampler s(seed);
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::size_t t = 0; t < per_n; ++t) {
      const BoxBody K = s.box(n), L = s.box(n);
      const auto C = s.boxes(n, n - 2);
      const auto r = af_check(K, L, C);
      rec.expect(r.holds, [&] { return "AF fails for K=" + widths_str(K) + " L=" + widths_str(L); });
    }
  return rec.done();
}

SuiteResult shephard_suite(std::size_t count, std::uint64_t seed) {
  Recorder rec("shephard");
  Sampler s(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t n = s.range(2, 6), m = s.range(1, 6);
    const auto fm = build_matrix(s.boxes(n, m), 1, s.boxes(n, n - 2));
    const auto report = shephard_verify(fm);
    rec.expect(report.passed, [&] { return "principal minor sign violated at trial " + std::to_string(t); });
    // Form inequality on nonnegative vectors.
    const RatVector x = s.vec(m, true), y = s.vec(m, true);
    rec.expect(af_form_check(fm.entries, x, y), [&] { return "form inequality fails at trial " + std::to_string(t); });
  }
  return rec.done();
}

SuiteResult shephard_equality_suite(std::size_t count, std::uint64_t seed) {
  Recorder rec("shephard-equality");
  Sampler s(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t n = s.range(2, 6), m = s.range(2, 5);
    const BoxBody K = s.box(n);
    std::vector<BoxBody> bodies;
    for (std::size_t i = 0; i < m; ++i) {
      const std::vector<WeightedBody> part{{s.positive(), K}};
      bodies.push_back(minkowski_combine(part));
    }
    const auto fm = build_matrix(bodies, 1, s.boxes(n, n - 2));
    const auto report = shephard_verify(fm);
    rec.expect(report.passed && sgn(report.det) == 0, [&] { return "homothety matrix not singular-hyperbolic"; });
    const auto w = equality_witness(fm.entries);
    rec.expect(w.verifies(), [&] { return "equality witness does not verify"; });
    // The witness as bodies: sum x_i K_i and sum y_i K_i meet AF with equality.
    std::vector<WeightedBody> xs, ys;
    for (std::size_t i = 0; i < m; ++i) {
      xs.emplace_back(w.x[i], bodies[i]);
      ys.emplace_back(w.y[i], bodies[i]);
    }
    const auto af = af_check(minkowski_combine(xs), minkowski_combine(ys), fm.tail);
    rec.expect(af.lhs == af.rhs, [&] { return "witness bodies do not attain AF equality"; });
  }
  return rec.done();
}

SuiteResult fedotov_m2_suite(std::size_t count, std::uint64_t seed) {
  Recorder rec("fedotov-m2");
  Sampler s(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t n = s.range(2, 6), k = s.range(1, n / 2);
    const auto fm = build_matrix(s.boxes(n, 2), k, s.boxes(n, n - 2 * k));
    rec.expect(sgn(det(fm.entries)) <= 0, [&] {
      return "det > 0 for n=" + std::to_string(n) + " k=" + std::to_string(k);
    });
  }
  return rec.done();
}

SuiteResult iterated_af_suite(std::size_t count, std::uint64_t seed) {
  Recorder rec("iterated-af");
  Sampler s(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t n = s.range(2, 6);
    const std::size_t k = s.range(1, n - 1);
    const std::size_t l = s.range(1, n - k);
    const auto r = iterated_af_check(s.box(n), s.box(n), k, l, s.boxes(n, n - k - l));
    rec.expect(r.holds, [&] {
      return "iterated AF fails for n=" + std::to_string(n) + " k=" + std::to_string(k) + " l=" + std::to_string(l);
    });
  }
  return rec.done();
}

SuiteResult hyperbolic_equivalence_suite(std::size_t count, std::uint64_t seed) {
  Recorder rec("hyperbolic-equivalence");
  Sampler s(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t m = s.range(1, 6);
    RatMatrix M;
    switch (t % 3) {
      case 0: {  // arbitrary symmetric positive
        std::vector<RatVector> rows(m, RatVector(m));
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = i; j < m; ++j) rows[i][j] = rows[j][i] = s.positive();
        M = RatMatrix::from_rows(rows);
        break;
      }
      case 1: {  // Shephard matrix: hyperbolic
        const std::size_t n = s.range(2, 5);
        M = build_matrix(s.boxes(n, m), 1, s.boxes(n, n - 2)).entries;
        break;
      }
      default: {  // u u^T - w w^T, kept positive
        RatVector u(m), w(m);
        for (auto& e : u) e = s.positive() + 4;
        for (auto& e : w) e = s.positive() / 2;
        M = RatMatrix::generate(m, m, [&](std::size_t i, std::size_t j) { return BigRational(u[i] * u[j] - w[i] * w[j]); });
        break;
      }
    }
    const bool hyp = is_hyperbolic(M);
    const auto v = sylvester_violation(M);
    rec.expect(hyp == !v.has_value(), [&] { return "inertia and minor criteria disagree at trial " + std::to_string(t); });
    if (v) rec.expect(v->verifies_against(M), [&] { return "violation does not re-verify"; });
    if (hyp)
      for (int r = 0; r < 20; ++r) {
        const RatVector x = s.vec(m, true), y = s.vec(m, true);
        rec.expect(af_form_check(M, x, y), [&] { return "hyperbolic matrix fails the form inequality"; });
      }
  }
  return rec.done();
}

SuiteResult oracle_equivalence_suite(std::size_t count, std::uint64_t seed) {
  Recorder rec("permanent-vs-derivative");
  Sampler s(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t n = s.range(1, 6);
    std::vector<TupleEntry> entries;
    std::size_t left = n;
    while (left > 0) {
      const std::size_t mult = s.range(1, left);
      BoxBody b = s.box(n);
      if (s.range(0, 9) == 0) b = BoxBody(RatVector(n));  // occasional point
      entries.push_back({b, mult});
      left -= mult;
    }
    const BodyTuple tuple(n, entries);
    rec.expect(mixed_volume(tuple) == mixed_volume_via_derivatives(tuple),
               [&] { return "paths disagree at trial " + std::to_string(t); });
  }
  return rec.done();
}

SuiteResult hvector_suite() {
  Recorder rec("cube-h-vector");
  for (std::size_t n = 4; n <= 6; ++n) {
    const BoxBody cube = BoxBody::unit_cube(n);
    const auto h = h_vector_cube(n);
    for (std::size_t k = 1; 2 * k <= n; ++k) {
      const std::vector<BoxBody> tail(n - 2 * k, cube);
      const std::size_t r = rank(hr_pairing_matrix(n, k, tail));
      rec.expect(r == h[k], [&] { return "pairing rank " + std::to_string(r) + " != h_k for n=" + std::to_string(n); });
      const auto basis = primitive_space_basis(k, cube, tail);
      rec.expect(basis.size() == h[k] - h[k - 1], [&] {
        return "primitive dimension " + std::to_string(basis.size()) + " for n=" + std::to_string(n) +
               " k=" + std::to_string(k);
      });
    }
  }
  return rec.done();
}

SuiteResult hr_positivity_suite(std::size_t count, std::uint64_t seed) {
  Recorder rec("hodge-riemann");
  Sampler s(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t n = s.range(2, 6), k = s.range(1, n / 2);
    // L and C either the cube or random boxes.
    const bool cube_case = t % 2 == 0;
    const BoxBody L = cube_case ? BoxBody::unit_cube(n) : s.box(n);
    std::vector<BoxBody> tail;
    for (std::size_t i = 0; i + 2 * k < n; ++i) tail.push_back(cube_case ? BoxBody::unit_cube(n) : s.box(n));
    const auto basis = primitive_space_basis(k, L, tail);
    SlabOperator alpha(n, k);
    for (const auto& b : basis) alpha = alpha + b.scaled(BigRational(s.integer(-3, 3)));
    const auto r = hr_check(alpha, L, tail);
    rec.expect(r.sign_ok && r.equality_iff_zero_ok, [&] {
      return "HR fails for n=" + std::to_string(n) + " k=" + std::to_string(k) + " value " + to_string(r.value);
    });
  }
  return rec.done();
}

SuiteResult hr_mixed_volume_consistency_suite(std::size_t count, std::uint64_t seed) {
  Recorder rec("hr-form-vs-mixed-volume");
  Sampler s(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t n = s.range(2, 6), k = s.range(1, n / 2);
    const BoxBody K = s.box(n), Kp = s.box(n);
    const auto tail = s.boxes(n, n - 2 * k);
    const BigRational lhs = hr_form(op_from_box(K, k), op_from_box(Kp, k), tail) / BigRational(factorial(n));
    rec.expect(lhs == mixed_volume_kk(K, Kp, k, tail), [&] { return "hr_form/n! differs from mixed volume"; });
  }
  return rec.done();
}

SuiteResult power_roundtrip_suite(std::size_t count, std::uint64_t seed) {
  Recorder rec("express-as-powers");
  Sampler s(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t n = s.range(1, 5), k = s.range(1, std::min<std::size_t>(2, n));
    RatVector coords(binomial(n, k));
    for (auto& c : coords) c = s.any();
    const auto alpha = SlabOperator::from_coordinates(n, k, coords);
    const auto combo = express_as_powers(alpha);
    const bool nondegenerate = std::all_of(combo.terms.begin(), combo.terms.end(),
                                           [](const WeightedBody& wb) { return wb.second.in_cube_family(); });
    rec.expect(nondegenerate && combo.as_operator() == alpha, [&] { return "roundtrip fails at trial " + std::to_string(t); });
  }
  return rec.done();
}

SuiteResult mixed_volume_invariants_suite(std::size_t count, std::uint64_t seed) {
  Recorder rec("mixed-volume-invariants");
  Sampler s(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t n = s.range(1, 5);
    auto bodies = s.boxes(n, n);
    const BigRational base = mixed_volume(BodyTuple::of(bodies));
    rec.expect(sgn(base) > 0, [&] { return "mixed volume of nondegenerate boxes not positive"; });
    // Exhaustive permutation symmetry.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    bool symmetric = true;
    while (std::next_permutation(perm.begin(), perm.end())) {
      std::vector<BoxBody> permuted;
      for (auto i : perm) permuted.push_back(bodies[i]);
      symmetric = symmetric && mixed_volume(BodyTuple::of(permuted)) == base;
    }
    rec.expect(symmetric, [&] { return "mixed volume not symmetric"; });
    // Multilinearity in the first slot.
    const BigRational a = s.nonnegative(), b = s.nonnegative();
    const BoxBody other = s.box(n);
    const std::vector<WeightedBody> combo{{a, bodies[0]}, {b, other}};
    auto with_first = [&](const BoxBody& f) {
      auto v = bodies;
      v[0] = f;
      return mixed_volume(BodyTuple::of(v));
    };
    rec.expect(with_first(minkowski_combine(combo)) == a * base + b * with_first(other),
               [&] { return "mixed volume not multilinear"; });
    // Polynomial expansion of the volume of a combination, n = dim.
    const std::size_t mcount = s.range(1, 3);
    const auto parts = s.boxes(n, mcount);
    std::vector<WeightedBody> lam;
    for (const auto& p : parts) lam.emplace_back(s.positive(), p);
    BigRational expected = 1;
    for (std::size_t j = 0; j < n; ++j) {
      BigRational col = 0;
      for (const auto& [c, p] : lam) col += c * p.widths()[j];
      expected *= col;
    }
    rec.expect(volume(minkowski_combine(lam)) == expected, [&] { return "volume polynomial expansion fails"; });
  }
  return rec.done();
}

SuiteResult linear_algebra_invariants_suite(std::size_t count, std::uint64_t seed) {
  Recorder rec("exact-linear-algebra");
  Sampler s(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t n = s.range(1, 8);
    const RatMatrix A = RatMatrix::generate(n, n, [&](std::size_t, std::size_t) { return s.any(); });
    rec.expect(det(A) == det(A.transpose()), [&] { return "det(A) != det(A^T)"; });

    const std::size_t m = s.range(1, 6);
    std::vector<RatVector> rows(m, RatVector(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) rows[i][j] = rows[j][i] = (s.range(0, 3) == 0 ? BigRational(0) : s.any());
    const RatMatrix S = RatMatrix::from_rows(rows);
    const Inertia in = inertia(S);
    RatMatrix P = RatMatrix::generate(m, m, [&](std::size_t, std::size_t) { return s.any(); });
    if (sgn(det(P)) == 0) P = RatMatrix::identity(m);
    rec.expect(inertia(P.transpose() * S * P) == in, [&] { return "inertia not congruence invariant"; });
    const BigRational d = det(S);
    const bool consistent = in.n_zero > 0 ? sgn(d) == 0 : sgn(d) == (in.n_neg % 2 == 0 ? 1 : -1);
    rec.expect(consistent, [&] { return "det sign disagrees with inertia"; });
  }
  return rec.done();
}

std::vector<SuiteResult> run_all(std::uint64_t seed) {
  return {
      linear_algebra_invariants_suite(200, seed + 1),
      mixed_volume_invariants_suite(100, seed + 2),
      oracle_equivalence_suite(500, seed + 3),
      af_suite(1000, seed + 4),
      iterated_af_suite(200, seed + 5),
      shephard_suite(200, seed + 6),
      shephard_equality_suite(50, seed + 7),
      fedotov_m2_suite(200, seed + 8),
      hyperbolic_equivalence_suite(500, seed + 9),
      hvector_suite(),
      hr_positivity_suite(100, seed + 10),
      hr_mixed_volume_consistency_suite(100, seed + 11),
      power_roundtrip_suite(100, seed + 12),
  };
}

}  // namespace hodgebox::suites
