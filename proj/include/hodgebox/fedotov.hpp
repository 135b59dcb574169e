#pragma once

// Shephard/Fedotov matrices M_ij = V(K_i[k], K_j[k], C_1, ..., C_{n-2k}),
// the Hodge-Riemann counterexample construction (k = 2, then any k via the
// polarization reduction), a direct randomized search, and an independent
// certificate verifier.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hodgebox/cubefam.hpp"
#include "hodgebox/diffop.hpp"
#include "hodgebox/exactlin.hpp"
#include "hodgebox/hypmat.hpp"

namespace hodgebox {

struct FedotovMatrix {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<BoxBody> bodies;
  std::vector<BoxBody> tail;
  RatMatrix entries;
};

enum class MixedVolumePath { permanent, derivatives };

/// Symmetric matrix of V(bodies_i[k], bodies_j[k], tail). Repeated bodies are
/// evaluated once.
RatMatrix mixed_volume_matrix(const std::vector<BoxBody>& bodies, std::size_t k, const std::vector<BoxBody>& tail,
                              MixedVolumePath path, std::size_t threads = 1);

/// Throws std::invalid_argument unless m >= 1, 2k + |tail| = n and all
/// dimensions agree.
FedotovMatrix build_matrix(std::vector<BoxBody> bodies, std::size_t k, std::vector<BoxBody> tail,
                           std::size_t threads = 1);

struct ShephardReport {
  bool passed = false;
  std::size_t subsets_checked = 0;
  BigRational det;
  std::optional<Violation> violation;
};

/// Checks (-1)^|I| det M_I <= 0 on every principal subset of a k = 1 matrix.
ShephardReport shephard_verify(const FedotovMatrix& m);

struct LabeledBody {
  std::string label;
  BoxBody body;
};

/// Exact, self-contained witness that a Fedotov matrix is not hyperbolic.
/// kind is "hodge-k2", "reduction" or "direct"; the last carries no x, y.
struct Certificate {
  int version = 1;
  std::string kind;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<LabeledBody> bodies;
  std::vector<BoxBody> tail;
  RatVector x;
  RatVector y;
  std::optional<BigRational> x_m_y;
  std::optional<BigRational> x_m_x;
  RatMatrix matrix;
  std::vector<std::size_t> core;
  Violation violation;
  nlohmann::json trace = nlohmann::json::object();

  bool has_pairing() const { return !x.empty(); }
};

struct PipelineOptions {
  std::size_t threads = 1;
  std::size_t max_core_size = kMaxExhaustiveDim;
};

/// Data of the k = 2 construction in R^n with L = C_i = unit cube.
struct K2Base {
  std::size_t n = 0;
  SlabOperator alpha{0, 2};
  PowerCombination powers;
  std::vector<BoxBody> bodies;  // K_1..K_m, then the cube
  std::vector<BoxBody> tail;    // cube, n - 4 times
  RatVector x;
  RatVector y;
  RatMatrix matrix;
  BigRational x_m_y;
  BigRational x_m_x;
  BigRational hr_value;  // alpha^2 D_cube^{n-4} V
};

/// Steps 1-5 of the construction: primitive alpha, its power expansion, the
/// matrix over K_1..K_m and the cube, and the exact pairings. Throws
/// std::logic_error if any exact check fails.
K2Base build_k2_base(std::size_t n, std::size_t threads = 1);

Certificate construct_counterexample_k2(std::size_t n, const PipelineOptions& options = {});

/// Rows indexed by (i, delta), i major, delta in {0,1}^k minus 0 in
/// lexicographic order of the bit string delta_1..delta_k.
struct Reduction {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::size_t> base_index;
  std::vector<std::uint32_t> delta;  // bit (k - r) holds delta_r
  std::vector<BoxBody> bodies;
  std::vector<BoxBody> tail;         // cube, n - 2k times
  RatMatrix matrix;
  RatVector x;
  RatVector y;
};

std::string delta_string(std::uint32_t delta, std::size_t k);

/// K_{i,delta} = (delta_1 + delta_2) K_i + (delta_3 + ... + delta_k) cube and
/// the lifted x, y. Accepts 2 <= k <= n/2; k = 2 reproduces the base.
Reduction build_reduction(const K2Base& base, std::size_t k, std::size_t threads = 1);

/// (1/k!^2) sum_{delta,eps} (-1)^{k+|delta|} (-1)^{k+|eps|} M~_{i delta, j eps}.
RatMatrix collapse_reduction(const Reduction& r);

Certificate reduce_to_general_k(const K2Base& base, std::size_t k, const PipelineOptions& options = {});

/// k = 2 construction when k == 2, otherwise the reduction from the k = 2
/// base in the same dimension.
Certificate construct_counterexample(std::size_t n, std::size_t k, const PipelineOptions& options = {});

struct SearchOptions {
  std::size_t n = 4;
  std::size_t k = 2;
  std::size_t m = 3;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::size_t max_core_size = kMaxExhaustiveDim;
  RatVector grid;  // empty: multiples of 1/4 in [1/4, 4]
};

struct SearchStats {
  std::size_t trials = 0;
  std::size_t non_hyperbolic = 0;
  std::optional<std::size_t> first_hit;
};

struct SearchResult {
  std::optional<Certificate> certificate;
  SearchStats stats;
};

RatVector default_search_grid();

/// Samples every body's widths from the grid, one independent generator per
/// trial, and reports the lowest-index trial whose matrix is not hyperbolic.
SearchResult random_search(const SearchOptions& options);

struct VerificationResult {
  bool ok = false;
  std::string reason;
};

/// Re-derives every matrix entry through the derivative path, re-checks the
/// pairings, and recomputes det M_I by fraction-free elimination.
VerificationResult verify_certificate(const Certificate& c, std::size_t threads = 1);

}  // namespace hodgebox
