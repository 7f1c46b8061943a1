// srct: command-line front end.
// Exit codes: 0 success, 1 a verification failed, 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "srct/codec.hpp"
#include "srct/coeff.hpp"
#include "srct/entropy.hpp"
#include "srct/error.hpp"
#include "srct/layered.hpp"
#include "srct/region.hpp"

namespace {

using srct::Json;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::uint64_t max_prime_from_env() {
  const char* v = std::getenv("SRCT_MAX_PRIME");
  if (!v || !*v) return srct::PrecodeOptions{}.max_prime;
  try {
    std::size_t used = 0;
    const auto p = std::stoull(v, &used);
    if (used != std::string(v).size()) throw std::invalid_argument(v);
    return p;
  } catch (const std::exception&) {
    throw UsageError(std::string("SRCT_MAX_PRIME is not an integer: ") + v);
  }
}

srct::LinearStorageCode load_code(const std::string& path) { return srct::parse_code(read_file(path)); }

// --- subcommand bodies -------------------------------------------------------

struct RegionArgs {
  int n = 0, k = 0, d = 0, ell = 0;
  std::string format = "json";
};

int run_region(const RegionArgs& a) {
  const auto v = srct::region_report({a.n, a.k, a.d, a.ell});
  if (a.format == "csv") {
    std::cout << srct::sweep_csv({{a.d, a.k, a.ell, v.gamma, v.in_ps, v.ell_hat, v.ell_star, v.single_corner}});
  } else {
    print(srct::to_json(v));
  }
  return kOk;
}

struct ThresholdArgs {
  int k = 0, d = 0;
};

int run_thresholds(const ThresholdArgs& a) {
  if (!(2 <= a.k && a.k <= a.d)) throw srct::InvalidParams("need 2 <= k <= d");
  const int hat = a.k == a.d ? srct::ell_hat_kd(a.d) : srct::ell_hat(a.k, a.d);
  const int star = srct::ell_star(a.k, a.d);
  print(Json{{"version", srct::kReportVersion},
             {"k", a.k},
             {"d", a.d},
             {"ell_hat", hat},
             {"ell_star", star},
             {"gap", star - hat}});
  return kOk;
}

struct SweepArgs {
  int d_max = 10;
  std::string out;
  std::size_t consistency = 0;
};

int run_sweep(const SweepArgs& a) {
  if (a.d_max < 3) throw srct::InvalidParams("--d-max must be at least 3");
  if (a.consistency > 0) {
    const auto rep = srct::sweep_consistency(a.d_max, a.consistency);
    Json ce = Json::array();
    for (const auto& c : rep.counterexamples) ce.push_back({{"d", c.d}, {"k", c.k}, {"ell", c.ell}, {"rule", c.rule}});
    print(Json{{"version", srct::kReportVersion},
               {"tuples", rep.tuples},
               {"pass", rep.counterexamples.empty()},
               {"counterexamples", std::move(ce)}});
    return rep.counterexamples.empty() ? kOk : kFail;
  }
  const std::string csv = srct::sweep_csv(srct::sweep_rows(a.d_max));
  if (a.out.empty()) {
    std::cout << csv;
  } else {
    write_file(a.out, csv);
  }
  return kOk;
}

struct ConstructArgs {
  int n = 0, ell = 0;
  std::uint64_t prime = 1009;
  std::uint64_t seed = 0;
  std::string out;
};

int run_construct(const ConstructArgs& a) {
  if (a.n < 4 || a.n > 16) throw srct::InvalidParams("--n must lie in 4..16");
  if (!srct::is_prime(a.prime)) throw srct::NotPrime("--prime " + std::to_string(a.prime) + " is not prime");
  srct::PrecodeOptions opts;
  opts.seed = a.seed;
  opts.max_prime = max_prime_from_env();
  const auto base = srct::build_layered_code(a.n, a.prime);
  const auto code = srct::secure_precode(base, a.ell, opts);
  if (!a.out.empty()) write_file(a.out, srct::serialize_code(code).dump() + "\n");
  print(Json{{"n", code.n},
             {"ell", code.ell},
             {"p", code.p},
             {"T", code.T},
             {"B_s", code.B_s},
             {"alpha", code.alpha()},
             {"beta", code.beta()},
             {"point", srct::to_json(srct::achieved_point(code))},
             {"corner", srct::to_json(srct::corner_point(code.k, code.d, code.ell))}});
  return kOk;
}

struct CheckArgs {
  std::string code;
  int symmetry_size = 2;
  int samples = 0;
  std::uint64_t seed = 1;
};

int run_check(const CheckArgs& a) {
  const auto code = load_code(a.code);
  const srct::EntropyOracle oracle(code);
  Json report;
  report["version"] = srct::kReportVersion;
  bool ok = true;

  const auto sdss = srct::check_sdss(oracle);
  report["sdss"] = srct::to_json(sdss);
  ok = ok && sdss.pass();

  srct::SymmetryOptions so;
  so.subset_size_limit = a.symmetry_size;
  so.random_samples = a.samples;
  so.seed = a.seed;
  const auto sym = srct::check_symmetry(code, so);
  report["symmetry"] = srct::to_json(sym);
  ok = ok && sym.pass();

  if (code.ell >= 1 && code.B_s > 0) {
    const auto cat = srct::check_inequality_catalog(oracle);
    report["catalog"] = srct::to_json(cat);
    for (const auto& e : cat) ok = ok && e.pass;

    const auto pt = srct::achieved_point(code);
    const auto corner = srct::corner_point(code.k, code.d, code.ell);
    report["achieved_point"] = {{"point", srct::to_json(pt)},
                                {"corner", srct::to_json(corner)},
                                {"alpha_gap", (pt.alpha_bar - corner.alpha_bar).str()},
                                {"beta_gap", (pt.beta_bar - corner.beta_bar).str()},
                                {"below_corner", pt.alpha_bar < corner.alpha_bar}};
  }
  report["pass"] = ok;
  print(report);
  return ok ? kOk : kFail;
}

struct RepairArgs {
  std::string code;
  int fail = 0;
  std::uint64_t seed = 0;
};

int run_repair(const RepairArgs& a) {
  const auto code = load_code(a.code);
  if (a.fail < 1 || a.fail > code.n) {
    throw UsageError("--fail must lie in 1.." + std::to_string(code.n));
  }
  const auto state = srct::encode_state(code, a.seed);
  const auto out = srct::repair_node(code, state, a.fail);
  const std::size_t expected = static_cast<std::size_t>(code.d) * code.beta();
  const bool ok = out.matches && out.downloaded == expected;
  print(Json{{"fail", a.fail},
             {"helpers", code.d},
             {"downloaded", out.downloaded},
             {"expected_download", expected},
             {"match", out.matches},
             {"pass", ok}});
  return ok ? kOk : kFail;
}

struct CoeffArgs {
  std::string mode;
  int bound = 0;
  std::string out;
};

int run_verify_coeffs(const CoeffArgs& a) {
  if (a.bound < 5) throw UsageError("--bound must be at least 5");
  const auto mode = a.mode == "kd" ? srct::SweepMode::Kd : srct::SweepMode::Kld;
  const auto rep = srct::verify_sweep(mode, a.bound);
  if (!a.out.empty()) write_file(a.out, rep.csv);
  print(srct::to_json(rep));
  return rep.pass() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure exact-repair regenerating codes: regions, constructions and verification"};
  app.require_subcommand(1);

  RegionArgs region;
  auto* r = app.add_subcommand("region", "Region verdict for (n, k, d, ell)");
  r->add_option("--n", region.n, "Number of nodes")->required();
  r->add_option("--k", region.k, "Reconstruction degree")->required();
  r->add_option("--d", region.d, "Repair degree")->required();
  r->add_option("--ell", region.ell, "Wiretapped nodes")->required();
  r->add_option("--format", region.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  ThresholdArgs thr;
  auto* t = app.add_subcommand("thresholds", "ell_hat and ell_star for (k, d)");
  t->add_option("--k", thr.k)->required();
  t->add_option("--d", thr.d)->required();

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "Region table for every valid tuple with d <= d-max");
  s->add_option("--d-max", sweep.d_max, "Largest d")->capture_default_str();
  s->add_option("--out", sweep.out, "CSV output path (stdout if omitted)");
  s->add_option("--consistency", sweep.consistency,
                "Check closure and containment on the first N tuples with k < d instead of printing the table");

  ConstructArgs cons;
  auto* c = app.add_subcommand("construct", "Build and verify a secure layered code with k = d = n-1");
  c->add_option("--n", cons.n)->required();
  c->add_option("--ell", cons.ell)->required();
  c->add_option("--prime", cons.prime, "Starting prime of the ladder")->capture_default_str();
  c->add_option("--seed", cons.seed)->capture_default_str();
  c->add_option("--out", cons.out, "Code document path");

  CheckArgs chk;
  auto* k = app.add_subcommand("check", "Verify a code document");
  k->add_option("--code", chk.code)->required();
  k->add_option("--symmetry-size", chk.symmetry_size, "Exhaustive subset size for the symmetry check")
      ->capture_default_str();
  k->add_option("--samples", chk.samples, "Random (subset, permutation) samples")->capture_default_str();
  k->add_option("--seed", chk.seed, "Seed for the random samples")->capture_default_str();

  RepairArgs rep;
  auto* p = app.add_subcommand("repair", "Simulate repair of one node");
  p->add_option("--code", rep.code)->required();
  p->add_option("--fail", rep.fail, "Failed node, 1-based")->required();
  p->add_option("--seed", rep.seed)->capture_default_str();

  CoeffArgs coef;
  auto* v = app.add_subcommand("verify-coeffs", "Exact sweep over the proof coefficients");
  v->add_option("--mode", coef.mode)->required()->check(CLI::IsMember({"kd", "kld"}));
  v->add_option("--bound", coef.bound)->required();
  v->add_option("--out", coef.out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*r) return run_region(region);
    if (*t) return run_thresholds(thr);
    if (*s) return run_sweep(sweep);
    if (*c) return run_construct(cons);
    if (*k) return run_check(chk);
    if (*p) return run_repair(rep);
    if (*v) return run_verify_coeffs(coef);
  } catch (const srct::SecrecyUnachievable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  } catch (const srct::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
