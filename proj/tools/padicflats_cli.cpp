// padicflats: expected k-flat counts, verification suites, Volkenborn sums.
//
// Exit codes: 0 ok, 1 a check failed, 2 invalid configuration, 3 enumeration
// guard exceeded. Output is buffered and written only on exit 0 or 1.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "padicflats/counting.hpp"
#include "padicflats/expectation.hpp"
#include "padicflats/jacobian.hpp"
#include "padicflats/linalg.hpp"
#include "padicflats/sampling.hpp"
#include "padicflats/volkenborn.hpp"

using namespace padicflats;
using Json = nlohmann::ordered_json;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t p = 2;
  bool p_given = false;
  int n = 0;
  int k = 0;
  std::string degrees;
  std::string method = "exact";
  int precision = 0;
  std::uint64_t samples = 200'000;
  std::uint64_t seed = 0;
  std::uint64_t guard = kDefaultGuard;
  std::string format = "json";
  std::string output;
  unsigned workers = 0;
  std::string suite = "all";
  std::string primes = "2..101";
  std::string levels = "1..2";
  std::string integrand = "cubic-det";
  std::string target = "-1/9";
};

std::string dec(const ExactRational& x) { return to_decimal_string(x, 12); }

void put_rational(Json& j, const std::string& key, const ExactRational& x) {
  j[key] = to_fraction_string(x);
  j[key + "_decimal"] = dec(x);
}

std::vector<long> parse_list(const std::string& text, const std::string& what) {
  std::vector<long> out;
  const auto range = text.find("..");
  try {
    if (range != std::string::npos) {
      const long a = std::stol(text.substr(0, range));
      const long b = std::stol(text.substr(range + 2));
      if (a > b) throw ConfigError(what + ": empty range " + text);
      for (long x = a; x <= b; ++x) out.push_back(x);
      return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw ConfigError(what + ": bad entry '" + item + "'");
    }
  } catch (const std::logic_error&) {
    throw ConfigError(what + ": cannot parse '" + text + "'");
  }
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw ConfigError("p = " + std::to_string(p) + " is not prime");
}

DegreeProfile profile_of(const RunConfig& cfg) {
  DegreeProfile prof{cfg.n, cfg.k, {}};
  for (long d : parse_list(cfg.degrees, "--degrees")) prof.degrees.push_back(static_cast<int>(d));
  try {
    prof.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (!check_codim(prof)) {
    throw ConfigError("profile " + prof.to_string() + " is not admissible: sum C(k+d_j, d_j) != (k+1)(n-k)");
  }
  return prof;
}

Json profile_json(const DegreeProfile& prof) {
  return Json{{"n", prof.n}, {"k", prof.k}, {"degrees", prof.degrees}};
}

EngineOptions engine(const RunConfig& cfg) { return {cfg.guard, cfg.workers}; }

bool within_guard(std::uint64_t p, long exponent, std::uint64_t guard) {
  BigInt total = int_power(p, static_cast<unsigned>(exponent));
  return total <= BigInt(static_cast<unsigned long>(guard));
}

struct Output {
  std::vector<std::string> lines;
  bool all_pass = true;

  void record(const Json& j) {
    lines.push_back(j.dump());
    if (j.contains("pass") && j["pass"].is_boolean() && !j["pass"].get<bool>()) all_pass = false;
  }
};

// expected-flats

void cmd_expected_flats(const RunConfig& cfg, Output& out) {
  require_prime(cfg.p);
  const DegreeProfile prof = profile_of(cfg);
  FlatCountParams params;
  if (cfg.method == "exact") {
    params.method = Method::Exact;
  } else if (cfg.method == "mc") {
    params.method = Method::MonteCarlo;
    if (cfg.samples < 100) throw ConfigError("--samples must be >= 100");
  } else {
    throw ConfigError("--method must be exact or mc");
  }
  if (cfg.precision < 0) throw ConfigError("--precision must be >= 1");
  params.precision = cfg.precision;
  params.samples = cfg.samples;
  params.seed = cfg.seed;
  params.engine = engine(cfg);

  const FlatCountResult r = expected_flats(prof, cfg.p, params);
  Json j;
  j["profile"] = profile_json(prof);
  j["p"] = cfg.p;
  j["m"] = r.precision;
  j["method"] = to_string(r.method);
  put_rational(j, "lo", r.expected_count.lo);
  put_rational(j, "hi", r.expected_count.hi);
  put_rational(j, "det_lo", r.det_bracket().lo);
  put_rational(j, "det_hi", r.det_bracket().hi);
  put_rational(j, "grassmannian_volume", r.grassmannian_factor);
  j["std_error"] = r.std_error;
  if (r.method == Method::MonteCarlo) {
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
  } else {
    j["samples"] = nullptr;
    j["seed"] = nullptr;
  }
  if (auto ref = reference_count(prof, cfg.p)) {
    put_rational(j, "reference_value", *ref);
    j["pass"] = r.consistent_with(*ref);
  } else {
    j["reference_value"] = nullptr;
    j["pass"] = nullptr;
  }
  out.record(j);
}

// verify

Json identity(const std::string& lemma, Json params, const Json& brute, const Json& formula) {
  Json j;
  j["lemma"] = lemma;
  j["params"] = std::move(params);
  j["brute"] = brute;
  j["formula"] = formula;
  j["pass"] = brute == formula;
  return j;
}

std::string str(std::uint64_t x) { return std::to_string(x); }
std::string str(const BigInt& x) { return x.get_str(); }

void suite_volumes(std::uint64_t p, const RunConfig& cfg, Output& out) {
  const VolumeTable table(p);
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 2; ++m) {
      if (!within_guard(p, static_cast<long>(m) * n * n, cfg.guard)) continue;
      const auto hist = det_histogram_all_matrices(n, p, m, cfg.guard);
      const ExactRational total(int_power(p, static_cast<unsigned>(m * n * n)));
      auto measure = [&](std::uint64_t c) -> ExactRational { return ExactRational(BigInt(static_cast<unsigned long>(c))) / total; };
      const Json params{{"p", p}, {"n", n}, {"m", m}};
      out.record(identity("gl_volume", params, to_fraction_string(measure(hist.counts[0])),
                          to_fraction_string(gl_volume(n, table))));
      ExactRational covered = 0;
      for (int ell = 0; ell < m; ++ell) {
        const ExactRational vol = det_level_volume(n, ell, table);
        covered += vol;
        Json pe = params;
        pe["ell"] = ell;
        out.record(identity("det_level_volume", pe, to_fraction_string(measure(hist.counts[ell])),
                            to_fraction_string(vol)));
      }
      out.record(identity("censored_det_mass", params, to_fraction_string(measure(hist.censored())),
                          to_fraction_string(ExactRational(1) - covered)));
    }
  }
  for (int n = 1; n <= 3; ++n) {
    for (int k = 0; k < n; ++k) {
      if (!within_guard(p, static_cast<long>(k + 1) * (n + 1), cfg.guard)) continue;
      // Flats over F_p: full-rank (k+1) x (n+1) matrices modulo GL_{k+1}.
      const ExactRational flats =
          ExactRational(BigInt(static_cast<unsigned long>(count_full_rank(k + 1, n + 1, p, cfg.guard)))) /
          ExactRational(BigInt(static_cast<unsigned long>(count_gl(k + 1, p, 1, cfg.guard))));
      const ExactRational brute = flats / ExactRational(int_power(p, static_cast<unsigned>((k + 1) * (n - k))));
      out.record(identity("grassmannian_volume", {{"p", p}, {"k", k}, {"n", n}}, to_fraction_string(brute),
                          to_fraction_string(grassmannian_volume(k, n, table))));
    }
  }
}

void suite_counts(std::uint64_t p, const RunConfig& cfg, Output& out) {
  for (int k = 1; k <= 3; ++k) {
    if (!within_guard(p, 3L * k, cfg.guard)) continue;
    out.record(identity("A_k", {{"p", p}, {"k", k}}, str(count_A(k, p, cfg.guard)), str(A_formula(k, p))));
  }
  for (int k = 1; k <= 2; ++k) {
    if (!within_guard(p, 4L * k, cfg.guard)) continue;
    out.record(identity("B_k", {{"p", p}, {"k", k}}, str(count_B(k, p, cfg.guard)), str(B_formula(k, p))));
  }
  for (int n = 1; n <= 2; ++n) {
    if (!within_guard(p, 4L * n, cfg.guard)) continue;
    out.record(identity("S_n", {{"p", p}, {"n", n}}, str(count_singular_2x2(p, n, cfg.guard)),
                        str(singular_2x2_formula(p, n))));
  }
  for (int n = 1; n <= 2; ++n) {
    for (int m = 1; m <= 2; ++m) {
      if (!within_guard(p, static_cast<long>(m) * n * n, cfg.guard)) continue;
      const auto hist = det_histogram_all_matrices(n, p, m, cfg.guard);
      out.record(identity("gl_count", {{"p", p}, {"n", n}, {"m", m}}, str(hist.counts[0]),
                          str(gl_count_formula(n, p, m))));
      for (int ell = 0; ell < m; ++ell) {
        out.record(identity("det_level_count", {{"p", p}, {"n", n}, {"m", m}, {"ell", ell}},
                            str(hist.counts[ell]), str(det_level_count_formula(n, p, m, ell))));
      }
    }
  }
}

void fiber_report(const std::string& lemma, const MinorMapReport& r,
                  const std::function<BigInt(int)>& formula, Output& out) {
  std::map<int, std::set<std::uint64_t>> by_m1;
  for (const auto& [pt, c] : r.fiber_sizes) by_m1[pt.min_valuation].insert(c);
  for (const auto& [m1, sizes] : by_m1) {
    Json brute = Json::array();
    for (auto s : sizes) brute.push_back(str(s));
    Json j = identity(lemma, {{"p", r.prime}, {"n", r.exponent}, {"m1", m1}}, brute.size() == 1 ? brute[0] : brute,
                      str(formula(m1)));
    j["targets"] = [&] {
      std::uint64_t t = 0;
      for (const auto& [pt, c] : r.fiber_sizes) t += pt.min_valuation == m1;
      return t;
    }();
    out.record(j);
  }
  out.record(identity(lemma + "_image", {{"p", r.prime}, {"n", r.exponent}}, str(r.fiber_sizes.size()),
                      str(projective_point_count(r.target_coords, r.prime, r.exponent))));
}

void suite_fibers(std::uint64_t p, const RunConfig& cfg, Output& out) {
  for (int n = 1; n <= 2; ++n) {
    if (!within_guard(p, 6L * n, cfg.guard)) continue;
    fiber_report("fiber_3x2", minor_fibers_3x2(p, n, cfg.guard),
                 [&](int m1) { return fiber_3x2_formula(p, n, m1); }, out);
  }
  for (int n = 1; n <= 2; ++n) {
    if (!within_guard(p, 12L * n, cfg.guard)) continue;
    fiber_report("fiber_4x3", minor_fibers_4x3(p, n, cfg.guard),
                 [&](int m1) { return fiber_4x3_formula(p, n, m1); }, out);
  }
}

std::vector<DegreeProfile> admissible_profiles(int max_n, int max_k, int max_point_degree) {
  std::vector<DegreeProfile> out;
  for (int n = 1; n <= max_n; ++n) {
    for (int k = 0; k <= max_k && k < n; ++k) {
      std::vector<int> deg;
      std::function<void(int, int)> extend = [&](int min_d, int left) {
        if (left == 0) {
          out.push_back({n, k, deg});
          return;
        }
        for (int d = min_d; k > 0 || d <= max_point_degree; ++d) {
          const int c = static_cast<int>(binomial(k + d, d));
          if (c > left) break;
          deg.push_back(d);
          extend(d, left - c);
          deg.pop_back();
        }
      };
      extend(1, (k + 1) * (n - k));
    }
  }
  return out;
}

void suite_jacobian_templates(Output& out) {
  for (const auto& prof : admissible_profiles(6, 2, 4)) {
    const auto t = build_template(prof);
    out.record(identity("template_repetition", {{"profile", profile_json(prof)}}, check_repetition(t), true));
  }
}

void suite_jacobian(std::uint64_t p, const RunConfig& cfg, Output& out) {
  const PadicContext ctx(p, 4);
  struct Case {
    std::string lemma;
    DegreeProfile profile;
    IntPolynomial poly;
  };
  const std::vector<Case> cases = {{"cubic_det_identity", {3, 1, {3}}, cubic_det_polynomial()},
                                   {"quadrics_det_identity", {4, 1, {2, 2}}, quadrics_det_polynomial()}};
  constexpr int kTrials = 200;
  for (const auto& c : cases) {
    const auto t = build_template(c.profile);
    SeededStream stream(cfg.seed);
    int agree = 0;
    for (int trial = 0; trial < kTrials; ++trial) {
      auto sub = stream.substream(trial);
      std::vector<PadicApprox> draws;
      std::vector<BigInt> point;
      for (std::size_t v = 0; v < t.var_count(); ++v) {
        draws.push_back(sample_uniform(ctx, sub));
        point.push_back(draws.back().residue());
      }
      if (det_residue(instantiate(t, draws)) == PadicApprox(ctx, c.poly.evaluate(point))) ++agree;
    }
    out.record(identity(c.lemma, {{"p", p}, {"m", 4}, {"trials", kTrials}, {"seed", cfg.seed}}, agree, kTrials));
  }
}

Json limit_report(const PolynomialIntegrand& f, std::uint64_t p, const std::vector<int>& levels,
                  const ExactRational& target, const RunConfig& cfg, Output* closed_form_out) {
  std::vector<VolkenbornPartial> partials;
  for (int n : levels) {
    partials.push_back(volkenborn_partial(f, p, n, engine(cfg)));
    if (closed_form_out) {
      closed_form_out->record(identity("volkenborn_closed_form", {{"p", p}, {"n", n}},
                                       to_fraction_string(partials.back().raw_sum),
                                       to_fraction_string(cubic_det_raw_sum_formula(p, n))));
    }
  }
  const LimitCheck check = padic_limit_check(partials, target, p);
  Json j;
  j["integrand"] = f.name();
  j["p"] = p;
  j["levels"] = levels;
  Json ps = Json::array();
  for (const auto& s : partials) {
    Json e;
    e["level"] = s.level;
    e["raw_sum"] = to_fraction_string(s.raw_sum);
    put_rational(e, "normalized_sum", s.normalized_sum);
    ps.push_back(std::move(e));
  }
  j["partials"] = std::move(ps);
  j["target"] = to_fraction_string(target);
  Json vals = Json::array();
  for (const auto& [n, v] : check.valuations) {
    vals.push_back(Json{{"level", n}, {"valuation", v ? Json(*v) : Json("inf")}});
  }
  j["valuations"] = std::move(vals);
  j["pass"] = check.pass;
  return j;
}

void suite_volkenborn(std::uint64_t p, const RunConfig& cfg, Output& out) {
  std::vector<int> levels;
  for (int n = 1; n <= 3 && within_guard(p, 6L * n, cfg.guard); ++n) levels.push_back(n);
  if (levels.empty()) return;
  Json j = limit_report(cubic_det_integrand(), p, levels, ExactRational(-1, 9), cfg, &out);
  Json line{{"lemma", "volkenborn_limit"}};
  line.update(j);
  out.record(line);
}

void cmd_verify(const RunConfig& cfg, Output& out) {
  static const std::vector<std::string> kSuites = {"volumes", "counts", "fibers", "jacobian", "volkenborn"};
  if (cfg.suite != "all" && std::find(kSuites.begin(), kSuites.end(), cfg.suite) == kSuites.end()) {
    throw ConfigError("unknown suite '" + cfg.suite + "'");
  }
  std::vector<std::uint64_t> primes = {2, 3, 5};
  if (cfg.p_given) {
    require_prime(cfg.p);
    primes = {cfg.p};
  }
  auto wants = [&](const std::string& s) { return cfg.suite == "all" || cfg.suite == s; };
  if (wants("jacobian")) suite_jacobian_templates(out);
  for (auto p : primes) {
    if (wants("volumes")) suite_volumes(p, cfg, out);
    if (wants("counts")) suite_counts(p, cfg, out);
    if (wants("fibers")) suite_fibers(p, cfg, out);
    if (wants("jacobian")) suite_jacobian(p, cfg, out);
    if (wants("volkenborn")) suite_volkenborn(p, cfg, out);
  }
}

// scan

void cmd_scan(const RunConfig& cfg, Output& out) {
  std::vector<std::uint64_t> primes;
  for (long p : parse_list(cfg.primes, "--primes")) {
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
      // A range scans the primes inside it; explicit entries must be prime.
      if (cfg.primes.find("..") != std::string::npos) continue;
      throw ConfigError(std::to_string(p) + " is not prime");
    }
    primes.push_back(static_cast<std::uint64_t>(p));
  }
  if (primes.empty()) throw ConfigError("--primes contains no primes");
  const std::vector<std::string> columns = {"p", "cubic", "cubic_decimal", "quadrics", "lower_bound",
                                            "lower_bound_decimal", "limsup_bound", "limsup_bound_decimal",
                                            "within_bounds"};
  if (cfg.format == "csv") {
    std::string header;
    for (const auto& c : columns) header += (header.empty() ? "" : ",") + c;
    out.lines.push_back(header);
  }
  for (auto p : primes) {
    const ExactRational cubic = closed_form(ClosedFormCase::cubic(), p);
    const ExactRational quad = closed_form(ClosedFormCase::quadrics(), p);
    const ExactRational lower =
        grassmannian_volume(1, 3, VolumeTable(p)) * closed_form(ClosedFormCase::lower_bound(1, 3), p);
    const ExactRational upper = closed_form(ClosedFormCase::limsup_bound(), p);
    const bool ok = lower <= cubic && cubic <= upper && quad == 1;
    if (!ok) out.all_pass = false;
    if (cfg.format == "csv") {
      out.lines.push_back(std::to_string(p) + "," + to_fraction_string(cubic) + "," + dec(cubic) + "," +
                          to_fraction_string(quad) + "," + to_fraction_string(lower) + "," + dec(lower) + "," +
                          to_fraction_string(upper) + "," + dec(upper) + "," + (ok ? "true" : "false"));
    } else {
      Json j;
      j["p"] = p;
      put_rational(j, "cubic", cubic);
      j["quadrics"] = to_fraction_string(quad);
      put_rational(j, "lower_bound", lower);
      put_rational(j, "limsup_bound", upper);
      j["within_bounds"] = ok;
      out.record(j);
    }
  }
}

// volkenborn

PolynomialIntegrand integrand_of(const std::string& name) {
  if (name == "cubic-det") return cubic_det_integrand();
  if (name == "x") return PolynomialIntegrand(1, {{ExactRational(1), {1}}}, "x");
  const std::string prefix = "constant:";
  if (name.rfind(prefix, 0) == 0) {
    try {
      return PolynomialIntegrand::constant(1, parse_rational(name.substr(prefix.size())));
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  throw ConfigError("unknown integrand '" + name + "' (cubic-det, x, constant:<num/den>)");
}

void cmd_volkenborn(const RunConfig& cfg, Output& out) {
  require_prime(cfg.p);
  const PolynomialIntegrand f = integrand_of(cfg.integrand);
  std::vector<int> levels;
  for (long n : parse_list(cfg.levels, "--levels")) {
    if (n < 0) throw ConfigError("levels must be >= 0");
    levels.push_back(static_cast<int>(n));
  }
  ExactRational target;
  try {
    target = parse_rational(cfg.target);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  for (int n : levels) {
    if (!within_guard(cfg.p, static_cast<long>(f.variables()) * n, cfg.guard)) {
      throw TooLarge("level " + std::to_string(n) + " needs p^" + std::to_string(f.variables() * n) +
                     " terms, above the guard");
    }
  }
  out.record(limit_report(f, cfg.p, levels, target, cfg, nullptr));
}

// template-dump

void cmd_template_dump(const RunConfig& cfg, Output& out) {
  out.lines.push_back(build_template(profile_of(cfg)).to_json());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expected k-flat counts on random p-adic complete intersections"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("PADICFLATS_GUARD")) {
    try {
      cfg.guard = std::stoull(env);
    } catch (const std::logic_error&) {
      std::cerr << "error: PADICFLATS_GUARD must be a positive integer\n";
      return 2;
    }
  }

  auto common = [&](CLI::App* sub) {
    sub->add_option("--guard", cfg.guard, "Maximum enumerated tuples (env PADICFLATS_GUARD)");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", cfg.output, "Write records to this file instead of stdout");
    sub->add_option("--workers", cfg.workers, "Worker threads (0 = logical cores)");
  };
  auto profile_flags = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Ambient projective dimension")->required();
    sub->add_option("--k", cfg.k, "Flat dimension")->required();
    sub->add_option("--degrees", cfg.degrees, "Comma-separated degrees")->required();
  };
  auto prime_flag = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--p", cfg.p, "Prime");
    if (required) opt->required();
    return opt;
  };

  auto* flats = app.add_subcommand("expected-flats", "Expected number of k-flats");
  prime_flag(flats, true);
  profile_flags(flats);
  flats->add_option("--method", cfg.method, "exact or mc");
  flats->add_option("--precision", cfg.precision, "Working precision m (default: exact auto, mc 20)");
  flats->add_option("--samples", cfg.samples, "Monte Carlo samples");
  flats->add_option("--seed", cfg.seed, "Monte Carlo seed");
  common(flats);

  auto* verify = app.add_subcommand("verify", "Run exact verification suites");
  auto* verify_p = prime_flag(verify, false);
  verify->add_option("--suite", cfg.suite, "volumes|counts|fibers|jacobian|volkenborn|all");
  verify->add_option("--seed", cfg.seed, "Seed for randomized identities");
  common(verify);

  auto* scan = app.add_subcommand("scan", "Closed forms and bounds over a list of primes");
  scan->add_option("--primes", cfg.primes, "Comma list or range a..b");
  common(scan);

  auto* volk = app.add_subcommand("volkenborn", "Normalized Riemann sums and p-adic convergence");
  prime_flag(volk, true);
  volk->add_option("--levels", cfg.levels, "Comma list or range a..b");
  volk->add_option("--integrand", cfg.integrand, "cubic-det, x or constant:<num/den>");
  volk->add_option("--target", cfg.target, "Rational limit to test against");
  common(volk);

  auto* dump = app.add_subcommand("template-dump", "Jacobian template as JSON");
  profile_flags(dump);
  common(dump);

  scan->callback([&] {
    if (!scan->count("--format")) cfg.format = "csv";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.p_given = verify_p->count() > 0;
  if (cfg.guard == 0) {
    std::cerr << "error: guard must be positive\n";
    return 2;
  }

  Output out;
  try {
    if (cfg.format == "csv" && !scan->parsed()) throw ConfigError("csv output is only available for scan");
    if (flats->parsed()) cmd_expected_flats(cfg, out);
    if (verify->parsed()) cmd_verify(cfg, out);
    if (scan->parsed()) cmd_scan(cfg, out);
    if (volk->parsed()) cmd_volkenborn(cfg, out);
    if (dump->parsed()) cmd_template_dump(cfg, out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const TooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      std::cerr << "error: cannot open " << cfg.output << "\n";
      return 2;
    }
  }
  std::ostream& sink = cfg.output.empty() ? std::cout : file;
  for (const auto& line : out.lines) sink << line << "\n";
  sink.flush();
  return out.all_pass ? 0 : 1;
}
