// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when everything holds).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "hodgebox/cli.hpp"
#include "hodgebox/diffop.hpp"
#include "hodgebox/fedotov.hpp"
#include "hodgebox/serialize.hpp"
#include "hodgebox/suites.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace hodgebox;

namespace {

std::size_t g_threads = 4;
const std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

// Shared checks for a certificate produced through the CLI.
Outcome check_construct(std::size_t n, std::size_t k, double limit_seconds) {
  auto t0 = std::chrono::steady_clock::now();
  auto r = cli({"fedotov", "construct", "--n", std::to_string(n), "--k", std::to_string(k), "--format", "json",
                "--threads", std::to_string(g_threads)});
  const double elapsed = seconds_since(t0);
  if (r.code != 0) return {false, "construct exited " + std::to_string(r.code) + ": " + r.err};
  auto cert = certificate_from_json(Json::parse(r.out));
  if (cert.k != k || cert.n != n) return {false, "wrong n or k in certificate"};
  const BigRational xmy = bilinear(cert.matrix, cert.x, cert.y);
  const BigRational xmx = bilinear(cert.matrix, cert.x, cert.x);
  if (xmy != 0) return {false, "<x,My> = " + to_string(xmy)};
  if (xmx <= 0) return {false, "<x,Mx> = " + to_string(xmx)};
  const BigRational d = det(principal_submatrix(cert.matrix, cert.violation.subset));
  const int parity = cert.violation.subset.size() % 2 == 0 ? 1 : -1;
  if (parity * sgn(d) <= 0) return {false, "subset does not violate"};
  auto vr = verify_certificate(cert, g_threads);
  if (!vr.ok) return {false, "independent verification failed: " + vr.reason};
  if (elapsed >= limit_seconds) return {false, "took " + fmt_seconds(elapsed)};
  std::ostringstream os;
  os << "matrix " << cert.matrix.rows() << "x" << cert.matrix.cols() << ", <x,My> = 0, <x,Mx> = " << to_string(xmx)
     << ", |I| = " << cert.violation.subset.size() << ", (-1)^|I| det M_I = " << to_string(BigRational(parity * d))
     << ", " << fmt_seconds(elapsed);
  if (k > 2) {
    // the lifted pairing must equal the base pairing exactly
    auto base = build_k2_base(n, g_threads);
    if (xmx != base.x_m_x) return {false, "lifted <x,Mx> differs from the base value " + to_string(base.x_m_x)};
    os << ", equals base <x,Mx>";
  }
  return {true, os.str()};
}

Outcome criterion_hvector() {
  std::ostringstream os;
  for (std::size_t n = 4; n <= 6; ++n)
    for (std::size_t k = 1; 2 * k <= n; ++k) {
      std::vector<BoxBody> tail(n - 2 * k, BoxBody::unit_cube(n));
      const std::size_t r = rank(hr_pairing_matrix(n, k, tail));
      const std::size_t dim = primitive_space_basis(k, BoxBody::unit_cube(n), tail).size();
      const std::size_t want_dim = binomial(n, k) - binomial(n, k - 1);
      if (r != binomial(n, k) || dim != want_dim) {
        os << "n=" << n << " k=" << k << ": rank " << r << " dim " << dim;
        return {false, os.str()};
      }
      os << "(" << n << "," << k << "): rank " << r << " dim " << dim << "; ";
    }
  return {true, os.str()};
}

Outcome criterion_explicit_hr() {
  auto m = [](std::size_t a, std::size_t b) { return (SubsetMask{1} << a) | (SubsetMask{1} << b); };
  SlabOperator alpha(4, 2, {{m(0, 1), 1}, {m(2, 3), 1}, {m(0, 2), -1}, {m(1, 3), -1}});
  const auto v = SlabPolynomial::volume(4);
  // oracle path: differentiate one variable at a time
  SlabPolynomial dl(4);
  {
    std::map<SubsetMask, BigRational> acc;
    for (std::size_t j = 0; j < 4; ++j) {
      const auto dj = oracle::differentiate(v, j);
      for (const auto& [mono, c] : dj.terms()) acc[mono] += c;
    }
    dl = SlabPolynomial(4, acc);
  }
  const bool primitive_oracle = oracle::naive_apply(alpha, dl).is_zero();
  const auto sq = oracle::naive_apply(alpha, oracle::naive_apply(alpha, v));
  const BigRational oracle_value = sq.coefficient(0);
  const bool primitive = is_primitive(alpha, BoxBody::unit_cube(4), {});
  const BigRational value = hr_form(alpha, alpha, {});
  const bool ok = primitive && primitive_oracle && value == 4 && oracle_value == 4;
  return {ok, "primitive " + std::string(primitive && primitive_oracle ? "yes" : "no") + ", alpha^2 V = " +
                  to_string(value) + " (oracle " + to_string(oracle_value) + ")"};
}

Outcome from_suites(const std::vector<suites::SuiteResult>& rs) {
  bool ok = true;
  std::ostringstream os;
  for (const auto& r : rs) {
    ok = ok && r.passed();
    os << r.name << " " << r.cases << " cases, " << r.failures << " failures";
    if (!r.detail.empty()) os << " [" << r.detail << "]";
    os << "; ";
  }
  return {ok, os.str()};
}

Outcome criterion_af() {
  auto t0 = std::chrono::steady_clock::now();
  auto r = suites::af_suite(1000, kSeed);
  const double elapsed = seconds_since(t0);
  auto o = from_suites({r});
  if (r.cases != 5000) o.pass = false;
  if (elapsed >= 60) o.pass = false;
  o.detail += fmt_seconds(elapsed);
  return o;
}

Outcome criterion_determinism() {
  const fs::path dir = fs::temp_directory_path() / ("hodgebox_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  const auto tuple = write("tuple.json", R"({"n":3,"entries":[{"body":{"n":3,"widths":["1","2","1/2"]},"multiplicity":2},)"
                                         R"({"body":{"n":3,"widths":["3","1","1"]},"multiplicity":1}]})");
  const auto mat = write("mat.json", R"({"k":1,"bodies":[{"n":3,"widths":["1","2","1"]},{"n":3,"widths":["2","1","3"]},)"
                                     R"({"n":3,"widths":["1","1","1"]}],"C":[{"n":3,"widths":["1","3","2"]}]})");
  {
    auto c = cli({"fedotov", "construct", "--n", "4", "--k", "2", "--format", "json"});
    write("cert.json", c.out);
  }
  const std::vector<std::vector<std::string>> commands{
      {"mixvol", tuple},
      {"shephard", mat},
      {"shephard", "--n", "5", "--m", "6", "--seed", "11"},
      {"fedotov", "construct", "--n", "4", "--k", "2"},
      {"fedotov", "construct", "--n", "5", "--k", "2"},
      {"fedotov", "construct", "--n", "6", "--k", "3"},
      {"fedotov", "search", "--n", "4", "--k", "2", "--m", "6", "--trials", "200", "--seed", "5"},
      {"fedotov", "search", "--n", "4", "--k", "1", "--m", "4", "--trials", "50", "--seed", "5"},
      {"fedotov", "verify", (dir / "cert.json").string()},
      {"hodge", "primitive", "--n", "6", "--k", "3"},
      {"selftest", "--seed", "3"},
  };
  std::size_t compared = 0;
  for (const auto& base : commands)
    for (const char* format : {"text", "json"}) {
      std::vector<std::string> reference_args = base;
      reference_args.insert(reference_args.end(), {"--format", format, "--threads", "1"});
      const auto reference = cli(reference_args);
      if (reference.code != 0) {
        fs::remove_all(dir);
        return {false, "command failed: " + base[0] + " " + (base.size() > 1 ? base[1] : "") + ": " + reference.err};
      }
      for (const char* threads : {"1", "2", "8"}) {
        auto args = base;
        args.insert(args.end(), {"--format", format, "--threads", threads});
        const auto again = cli(args);
        ++compared;
        if (again.out != reference.out || again.code != reference.code) {
          fs::remove_all(dir);
          return {false, "output differs for " + base[0] + " with --threads " + threads};
        }
      }
      // --output writes the same bytes
      auto args = base;
      const auto path = (dir / "out.txt").string();
      args.insert(args.end(), {"--format", format, "--threads", "3", "--output", path});
      const auto to_file = cli(args);
      std::ifstream in(path);
      const std::string written{std::istreambuf_iterator<char>(in), {}};
      ++compared;
      if (to_file.code != reference.code || written != reference.out || !to_file.out.empty()) {
        fs::remove_all(dir);
        return {false, "--output differs for " + base[0]};
      }
    }
  fs::remove_all(dir);
  return {true, std::to_string(commands.size()) + " commands x 2 formats, " + std::to_string(compared) +
                    " repeated runs byte-identical across 1/2/3/8 threads"};
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t only = 0;  // 1-based criterion, 0 runs all
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--threads") g_threads = std::stoul(argv[i + 1]);
    if (std::string(argv[i]) == "--criterion") only = std::stoul(argv[i + 1]);
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"counterexample k=2 (construct --n 4 --k 2)", [] { return check_construct(4, 2, 60); }},
      {"counterexample general k (construct --n 6 --k 3)", [] { return check_construct(6, 3, 600); }},
      {"cube h-vector and primitive dimensions", criterion_hvector},
      {"explicit Hodge-Riemann value", criterion_explicit_hr},
      {"Alexandrov-Fenchel suite", criterion_af},
      {"Shephard suite",
       [] {
         return from_suites({suites::shephard_suite(200, kSeed), suites::shephard_equality_suite(100, kSeed)});
       }},
      {"Fedotov easy cases",
       [] { return from_suites({suites::fedotov_m2_suite(200, kSeed), suites::iterated_af_suite(200, kSeed)}); }},
      {"hyperbolicity equivalences", [] { return from_suites({suites::hyperbolic_equivalence_suite(500, kSeed)}); }},
      {"oracle equivalence", [] { return from_suites({suites::oracle_equivalence_suite(500, kSeed)}); }},
      {"determinism", criterion_determinism},
  };

  int failed = 0;
  std::size_t ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && only != i + 1) continue;
    ++ran;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << " -- "
              << o.detail << "\n";
  }
  if (ran == 0) {
    std::cerr << "no such criterion\n";
    return 2;
  }
  std::cout << (ran - failed) << "/" << ran << " criteria passed\n";
  return failed;
}
