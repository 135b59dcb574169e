#include "hodgebox/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "hodgebox/diffop.hpp"
#include "hodgebox/fedotov.hpp"
#include "hodgebox/mixvol.hpp"
#include "hodgebox/serialize.hpp"
#include "hodgebox/suites.hpp"

namespace hodgebox::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("input file '" + path + "' is not valid JSON: " + e.what());
  }
}

const std::string& require_input(const RunConfig& c) {
  if (!c.input) throw UsageError("missing input FILE argument");
  return *c.input;
}

struct Report {
  int status = exit_code::ok;
  Json json;
  std::string text;
};

std::string certificate_summary(const Certificate& c, const VerificationResult& v) {
  std::ostringstream os;
  os << "certificate kind " << c.kind << ", n=" << c.n << ", k=" << c.k << "\n"
     << "  matrix size        " << c.matrix.rows() << "\n";
  if (c.has_pairing())
    os << "  <x,My>             " << to_string(*c.x_m_y) << "\n"
       << "  <x,Mx>             " << to_string(*c.x_m_x) << "\n";
  os << "  core size          " << c.core.size() << "\n"
     << "  violating subset I [";
  for (std::size_t i = 0; i < c.violation.subset.size(); ++i) os << (i ? ", " : "") << c.violation.subset[i];
  os << "]\n"
     << "  det M_I            " << to_string(c.violation.det) << "\n"
     << "  (-1)^|I| det M_I   " << to_string(BigRational(c.violation.parity_sign() * c.violation.det)) << " > 0\n"
     << "  verified           " << (v.ok ? "yes" : "NO (" + v.reason + ")") << "\n";
  return os.str();
}

Report cmd_mixvol(const RunConfig& c) {
  const BodyTuple tuple = tuple_from_json(read_json_file(require_input(c)));
  const BigRational a = mixed_volume(tuple);
  const BigRational b = mixed_volume_via_derivatives(tuple);
  Report r;
  r.status = a == b ? exit_code::ok : exit_code::verification_failed;
  r.json = {{"n", tuple.dim()}, {"mixed_volume", to_string(a)}, {"via_derivatives", to_string(b)}, {"agree", a == b}};
  r.text = "mixed volume      " + to_string(a) + "\nvia derivatives   " + to_string(b) + "\npaths agree       " +
           (a == b ? "yes" : "NO") + "\n";
  return r;
}

Report cmd_shephard(const RunConfig& c) {
  FedotovMatrix fm;
  if (c.input) {
    fm = matrix_input_from_json(read_json_file(*c.input), c.threads);
    if (fm.k != 1) throw UsageError("shephard input must have k = 1");
  } else {
    if (c.n < 2 || c.n > kMaxMixedVolumeDim) throw UsageError("--n must lie in 2..12");
    if (c.m < 1 || c.m > kMaxExhaustiveDim) throw UsageError("--m must lie in 1..22");
    std::mt19937_64 rng(c.seed);
    const RatVector grid = default_search_grid();
    auto draw = [&] {
      RatVector w(c.n);
      for (auto& e : w) e = grid[rng() % grid.size()];
      return BoxBody(std::move(w));
    };
    std::vector<BoxBody> bodies, tail;
    for (std::size_t i = 0; i < c.m; ++i) bodies.push_back(draw());
    for (std::size_t i = 0; i + 2 < c.n; ++i) tail.push_back(draw());
    fm = build_matrix(std::move(bodies), 1, std::move(tail), c.threads);
  }
  const ShephardReport rep = shephard_verify(fm);
  Report r;
  r.status = rep.passed ? exit_code::ok : exit_code::verification_failed;
  r.json = {{"n", fm.n},
            {"m", fm.entries.rows()},
            {"matrix", matrix_to_json(fm.entries)},
            {"det", to_string(rep.det)},
            {"subsets_checked", rep.subsets_checked},
            {"passed", rep.passed},
            {"violation", rep.violation ? violation_to_json(*rep.violation) : Json(nullptr)}};
  std::ostringstream os;
  os << "shephard matrix n=" << fm.n << " m=" << fm.entries.rows() << "\n"
     << "  det M              " << to_string(rep.det) << "\n"
     << "  principal subsets  " << rep.subsets_checked << "\n"
     << "  all minors ok      " << (rep.passed ? "yes" : "NO") << "\n";
  r.text = os.str();
  return r;
}

Report cmd_construct(const RunConfig& c) {
  if (!c.n_set || !c.k_set) throw UsageError("fedotov construct requires --n and --k");
  if (c.k < 2) throw UsageError("--k must be at least 2");
  if (2 * c.k > c.n) throw UsageError("--n must be at least 2*k (got --n " + std::to_string(c.n) + ")");
  if (c.n > kMaxMixedVolumeDim) throw UsageError("--n must be at most 12");
  const Certificate cert = construct_counterexample(c.n, c.k, {c.threads, c.max_core_size});
  const VerificationResult v = verify_certificate(cert, c.threads);
  Report r;
  r.status = v.ok ? exit_code::ok : exit_code::verification_failed;
  r.json = certificate_to_json(cert);
  r.text = certificate_summary(cert, v);
  return r;
}

Report cmd_search(const RunConfig& c) {
  if (c.k < 1 || 2 * c.k > c.n) throw UsageError("--k must satisfy 1 <= k <= n/2");
  if (c.n > kMaxMixedVolumeDim) throw UsageError("--n must be at most 12");
  if (c.m < 1) throw UsageError("--m must be at least 1");
  SearchOptions o;
  o.n = c.n;
  o.k = c.k;
  o.m = c.m;
  o.trials = c.trials;
  o.seed = c.seed;
  o.threads = c.threads;
  o.max_core_size = c.max_core_size;
  const SearchResult res = random_search(o);
  Report r;
  Json stats = {{"trials", res.stats.trials}, {"non_hyperbolic", res.stats.non_hyperbolic},
                {"first_hit", res.stats.first_hit ? Json(*res.stats.first_hit) : Json(nullptr)}};
  std::ostringstream os;
  os << "search n=" << c.n << " k=" << c.k << " m=" << c.m << " seed=" << c.seed << "\n"
     << "  trials             " << res.stats.trials << "\n"
     << "  non-hyperbolic     " << res.stats.non_hyperbolic << "\n";
  r.json = {{"stats", stats}, {"certificate", nullptr}, {"verified", nullptr}};
  if (res.certificate) {
    const VerificationResult v = verify_certificate(*res.certificate, c.threads);
    r.status = v.ok ? exit_code::ok : exit_code::verification_failed;
    r.json["certificate"] = certificate_to_json(*res.certificate);
    r.json["verified"] = v.ok;
    os << "  first hit (trial)  " << *res.stats.first_hit << "\n" << certificate_summary(*res.certificate, v);
  } else {
    os << "  no violation found\n";
  }
  r.text = os.str();
  return r;
}

Report cmd_verify(const RunConfig& c) {
  const Json j = read_json_file(require_input(c));
  VerificationResult v;
  try {
    v = verify_certificate(certificate_from_json(j), c.threads);
  } catch (const std::exception& e) {
    v = {false, std::string("malformed certificate: ") + e.what()};
  }
  Report r;
  r.status = v.ok ? exit_code::ok : exit_code::verification_failed;
  r.json = {{"ok", v.ok}, {"reason", v.reason}};
  r.text = std::string(v.ok ? "certificate verified" : "certificate REJECTED: " + v.reason) + "\n";
  return r;
}

Report cmd_hodge_primitive(const RunConfig& c) {
  if (!c.n_set || !c.k_set) throw UsageError("hodge primitive requires --n and --k");
  if (c.k < 1) throw UsageError("--k must be at least 1");
  if (2 * c.k > c.n) throw UsageError("--n must be at least 2*k");
  if (c.n > kMaxMixedVolumeDim) throw UsageError("--n must be at most 12");
  const BoxBody cube = BoxBody::unit_cube(c.n);
  const std::vector<BoxBody> tail(c.n - 2 * c.k, cube);
  const auto basis = primitive_space_basis(c.k, cube, tail);
  const auto h = h_vector_cube(c.n);
  const std::size_t expected = h[c.k] - h[c.k - 1];
  const std::size_t pairing_rank = rank(hr_pairing_matrix(c.n, c.k, tail));

  Report r;
  bool ok = basis.size() == expected && pairing_rank == h[c.k];
  Json entries = Json::array();
  std::ostringstream os;
  os << "primitive space n=" << c.n << " k=" << c.k << " (L = C = cube)\n"
     << "  dimension          " << basis.size() << "\n"
     << "  h_k - h_(k-1)      " << expected << "\n"
     << "  pairing rank       " << pairing_rank << " (h_k = " << h[c.k] << ")\n";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto chk = hr_check(basis[i], cube, tail);
    ok = ok && chk.sign_ok && chk.equality_iff_zero_ok;
    entries.push_back({{"operator", operator_to_json(basis[i])},
                       {"hr_value", to_string(chk.value)},
                       {"sign_ok", chk.sign_ok},
                       {"equality_iff_zero_ok", chk.equality_iff_zero_ok}});
    os << "  basis[" << i << "] =";
    for (const auto& [s, coeff] : basis[i].coefficients()) {
      os << " " << (sgn(coeff) < 0 ? "-" : "+") << to_string(abs(coeff)) << "*d";
      for (auto j : subset_indices(s)) os << j;
    }
    os << "\n      alpha^2 D^(n-2k) V = " << to_string(chk.value) << (chk.sign_ok ? "  (sign ok)" : "  (SIGN FAILS)")
       << "\n";
  }
  r.status = ok ? exit_code::ok : exit_code::verification_failed;
  r.json = {{"n", c.n},
            {"k", c.k},
            {"dimension", basis.size()},
            {"expected_dimension", expected},
            {"h_vector", h},
            {"pairing_rank", pairing_rank},
            {"basis", entries}};
  r.text = os.str();
  return r;
}

Report cmd_selftest(const RunConfig& c) {
  const auto results = suites::run_all(c.seed);
  Report r;
  Json list = Json::array();
  std::ostringstream os;
  bool all = true;
  for (const auto& s : results) {
    all = all && s.passed();
    list.push_back({{"name", s.name}, {"cases", s.cases}, {"failures", s.failures}, {"detail", s.detail}});
    os << (s.passed() ? "PASS " : "FAIL ") << s.name << " (" << s.cases << " checks";
    if (!s.passed()) os << ", " << s.failures << " failures: " << s.detail;
    os << ")\n";
  }
  r.status = all ? exit_code::ok : exit_code::verification_failed;
  r.json = {{"seed", c.seed}, {"suites", list}, {"passed", all}};
  r.text = os.str();
  return r;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.threads == 0) throw UsageError("--threads must be at least 1");
    if (config.max_core_size == 0 || config.max_core_size > kMaxExhaustiveDim)
      throw UsageError("--max-core-size must lie in 1..22");
    Report report;
    const auto& cmd = config.command;
    auto is = [&](std::initializer_list<const char*> words) {
      return cmd.size() == words.size() && std::equal(words.begin(), words.end(), cmd.begin());
    };
    if (is({"mixvol"})) report = cmd_mixvol(config);
    else if (is({"shephard"})) report = cmd_shephard(config);
    else if (is({"fedotov", "construct"})) report = cmd_construct(config);
    else if (is({"fedotov", "search"})) report = cmd_search(config);
    else if (is({"fedotov", "verify"})) report = cmd_verify(config);
    else if (is({"hodge", "primitive"})) report = cmd_hodge_primitive(config);
    else if (is({"selftest"})) report = cmd_selftest(config);
    else throw UsageError("unknown command");

    const std::string body = config.format == OutputFormat::json ? dump_canonical(report.json) : report.text;
    if (config.output) {
      std::ofstream f(*config.output, std::ios::binary);
      if (!f) throw UsageError("cannot write --output '" + *config.output + "'");
      f << body;
    } else {
      out << body;
    }
    return report.status;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::verification_failed;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact mixed volumes of boxes, Hodge-Riemann checks and Fedotov-matrix certificates", "hodgebox"};
  app.require_subcommand(1);
  RunConfig c;
  std::string format = "text";
  std::string output;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--output", output, "Write the report to PATH instead of stdout");
    sub->add_option("--threads", c.threads, "Worker threads (results do not depend on it)");
    sub->add_option("--max-core-size", c.max_core_size, "Largest core searched exhaustively");
    sub->add_option("--seed", c.seed, "Random seed");
  };
  auto add_nk = [&](CLI::App* sub) {
    sub->add_option("--n", c.n, "Dimension");
    sub->add_option("--k", c.k, "Degree k");
  };

  auto* mixvol = app.add_subcommand("mixvol", "Mixed volume of a body tuple file, both evaluation paths");
  mixvol->add_option("FILE", c.input, "Body tuple JSON")->required();
  add_common(mixvol);

  auto* shephard = app.add_subcommand("shephard", "Build and verify a k = 1 (Shephard) matrix");
  shephard->add_option("FILE", c.input, "Matrix input JSON; random boxes when omitted");
  shephard->add_option("--n", c.n, "Dimension (random mode)");
  shephard->add_option("--m", c.m, "Number of bodies (random mode)");
  add_common(shephard);

  auto* fedotov = app.add_subcommand("fedotov", "Fedotov-matrix counterexamples");
  fedotov->require_subcommand(1);
  auto* construct = fedotov->add_subcommand("construct", "Hodge-Riemann construction (k = 2, or reduction for k > 2)");
  add_nk(construct);
  add_common(construct);
  auto* search = fedotov->add_subcommand("search", "Randomized direct search");
  add_nk(search);
  search->add_option("--m", c.m, "Number of bodies");
  search->add_option("--trials", c.trials, "Number of trials");
  add_common(search);
  auto* verify = fedotov->add_subcommand("verify", "Independently re-verify a certificate");
  verify->add_option("FILE", c.input, "Certificate JSON")->required();
  add_common(verify);

  auto* hodge = app.add_subcommand("hodge", "Hodge-Riemann tools for the unit cube");
  hodge->require_subcommand(1);
  auto* primitive = hodge->add_subcommand("primitive", "Primitive space basis, dimension and HR values");
  add_nk(primitive);
  add_common(primitive);

  auto* selftest = app.add_subcommand("selftest", "Run every exact property suite");
  add_common(selftest);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_code::usage;
  }

  for (const auto* sub : app.get_subcommands()) {
    c.command.push_back(sub->get_name());
    for (const auto* inner : sub->get_subcommands()) {
      c.command.push_back(inner->get_name());
      if (const auto* o = inner->get_option_no_throw("--n")) c.n_set = c.n_set || o->count() > 0;
      if (const auto* o = inner->get_option_no_throw("--k")) c.k_set = c.k_set || o->count() > 0;
    }
  }
  c.format = format == "json" ? OutputFormat::json : OutputFormat::text;
  if (!output.empty()) c.output = output;
  return run(c, out, err);
}

}  // namespace hodgebox::cli
