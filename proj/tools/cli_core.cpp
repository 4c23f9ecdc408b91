#include "cli_core.hpp"

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "eismeas/eisenstein.hpp"
#include "eismeas/serialize.hpp"

namespace eismeas::cli {

namespace {

const ComplexApprox kTestPoint(0.05, 0.9);
constexpr long kMoebiusTerms = 400;
constexpr long kHeckeTerms = 2000000;
constexpr long kLSeriesTerms = 100000;

long level(const RunConfig& cfg) { return ipow_small(cfg.p, static_cast<unsigned>(cfg.m)); }

Convention convention(const RunConfig& cfg) { return parse_convention(cfg.convention); }

MeasureReport numeric_report(std::string claim, Json inputs, ComplexApprox left, ComplexApprox right,
                             double tolerance, Json details = Json::object()) {
  MeasureReport r;
  r.claim = std::move(claim);
  r.inputs = std::move(inputs);
  r.left = to_json(left);
  r.right = to_json(right);
  r.exact = false;
  r.tolerance = tolerance;
  r.equal = std::abs(left - right) <= tolerance;
  r.holds = r.equal;
  r.details = std::move(details);
  r.details["abs_difference"] = std::abs(left - right);
  return r;
}

bool all_hold(const std::vector<MeasureReport>& reports) {
  for (const auto& r : reports)
    if (!r.holds) return false;
  return true;
}

// Equality or a fully determined exact ratio.
bool exactly_reported(const MeasureReport& r) { return r.exact && (r.equal || r.ratio.has_value()); }

void require_even_k(const RunConfig& cfg, long minimum) {
  if (cfg.k < minimum || cfg.k % 2 != 0)
    throw InvalidArgument("k must be even and >= " + std::to_string(minimum));
}

SuiteResult suite_fourier(const RunConfig& cfg) {
  SuiteResult s{"fourier", {}, true};
  const long n = level(cfg);
  const std::vector<std::pair<long, long>> pairs{{1, 0}, {0, 1}, {1, 2}, {2, mod(-2, n)}};
  for (auto [a, b] : pairs) {
    const auto lattice = lattice_sum(cfg.k, n, a, b, kTestPoint, cfg.cutoff);
    const auto series = evaluate_raw(eisenstein_raw_numeric(cfg.k, n, a, b, cfg.qprec), cfg.k, n, kTestPoint);
    s.reports.push_back(numeric_report(
        "fourier_expansion", Json{{"k", cfg.k}, {"N", n}, {"a", a}, {"b", b}, {"cutoff", cfg.cutoff}, {"qprec", cfg.qprec}},
        lattice.value, series.value, cfg.tol,
        Json{{"lattice_tail_estimate", lattice.tail_estimate}, {"series_tail_bound", series.tail_bound}}));
  }
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 0}, {0, 1}, {1, 1}}) {
    const auto coprime = lattice_sum_coprime(cfg.k, n, a, b, kTestPoint, cfg.cutoff);
    const auto moebius = moebius_estar_numeric(cfg.k, n, a, b, kTestPoint, kMoebiusTerms);
    s.reports.push_back(numeric_report(
        "moebius_hecke_identity", Json{{"k", cfg.k}, {"N", n}, {"a", a}, {"b", b}, {"cutoff", cfg.cutoff}},
        moebius.value, coprime.value, 10 * cfg.tol,
        Json{{"lattice_tail_estimate", coprime.tail_estimate}, {"moebius_tail_bound", moebius.tail_bound}}));
  }
  for (long t = 1; t < n; ++t) {
    if (t % cfg.p == 0) continue;
    const auto direct = hecke_ct_numeric(cfg.k, cfg.p, cfg.m, t, kHeckeTerms);
    const auto chars = hecke_ct_character_form(cfg.k, cfg.p, cfg.m, t, kHeckeTerms);
    const auto printed = hecke_ct_character_form(cfg.k, cfg.p, cfg.m, t, kHeckeTerms, true);
    s.reports.push_back(numeric_report(
        "hecke_ct", Json{{"k", cfg.k}, {"p", cfg.p}, {"m", cfg.m}, {"t", t}, {"terms", kHeckeTerms}}, direct.value,
        chars.value, direct.tail_bound + chars.tail_bound + cfg.tol,
        Json{{"conjugated_form", to_json(printed.value)},
             {"conjugated_form_matches", std::abs(printed.value - direct.value) <=
                                             direct.tail_bound + printed.tail_bound + cfg.tol}}));
  }
  s.passed = all_hold(s.reports);
  return s;
}

SuiteResult suite_distribution(const RunConfig& cfg) {
  SuiteResult s{"distribution", {}, true};
  const long n = level(cfg);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      const auto res = distribution_refinement_check(cfg.k, cfg.p, cfg.m, a, b, cfg.qprec);
      MeasureReport r;
      r.claim = "distribution_refinement";
      r.inputs = Json{{"k", cfg.k}, {"p", cfg.p}, {"m", cfg.m}, {"a", a}, {"b", b}, {"qprec", cfg.qprec}};
      r.left = "E(a, b) at level p^m";
      r.right = "sum of level p^(m+1) refinements";
      r.equal = r.holds = res.equal;
      if (res.first_difference) r.details["first_difference"] = *res.first_difference;
      s.reports.push_back(std::move(r));
    }
  s.passed = all_hold(s.reports);
  return s;
}

SuiteResult suite_lemmas(const RunConfig& cfg) {
  SuiteResult s{"lemmas", {}, true};
  for (long b = 1; b < cfg.p; ++b)
    for (long n = 1; n < cfg.p; ++n) s.reports.push_back(character_sum_lemma(cfg.p, b, n));
  const long n = level(cfg);
  for (long m = 1; m <= cfg.m; ++m)
    for (const auto& chi : enumerate_characters(cfg.p, m))
      for (long v = 0; v < ipow_small(cfg.p, static_cast<unsigned>(m)); ++v) {
        s.reports.push_back(geometric_sum_lemma(chi, v));
        s.reports.push_back(gauss_summation_lemma(chi, v));
      }
  for (const auto& chi : enumerate_characters(cfg.p, cfg.m))
    if (chi.conductor() == n || chi.is_principal())
      s.reports.push_back(functional_equation_check(chi, cfg.k, kLSeriesTerms, cfg.tol));
  s.passed = all_hold(s.reports);
  return s;
}

std::vector<Rational> fermat_polynomial(long p, long k) {
  std::vector<Rational> h(k + p, 0);
  h[k + p - 1] = 1;
  h[k] = -1;
  return h;
}

SuiteResult suite_kummer(const RunConfig& cfg) {
  SuiteResult s{"kummer", {}, true};
  for (long k = 1; k <= cfg.k; ++k) s.reports.push_back(kummer_theorem_check(cfg.p, cfg.m, cfg.c, fermat_polynomial(cfg.p, k)));
  auto rejected = kummer_theorem_check(cfg.p, cfg.m, cfg.c, {0, -1, 1});
  const bool filtered = !rejected.applicable;
  rejected.details["expected"] = "hypothesis filter rejects";
  s.reports.push_back(std::move(rejected));
  s.passed = all_hold(s.reports) && filtered;
  return s;
}

SuiteResult suite_mazur(const RunConfig& cfg) {
  SuiteResult s{"mazur", {}, true};
  for (long k = 1; k <= 8; ++k) s.reports.push_back(mazur_interpolation_check(cfg.p, cfg.m, cfg.c, k));
  s.reports.push_back(mazur_refinement_check(cfg.p, cfg.m, cfg.c));
  s.passed = all_hold(s.reports);
  return s;
}

SuiteResult suite_divisibility(const RunConfig& cfg) {
  SuiteResult s{"divisibility", {}, true};
  const auto cprime = compute_cprime(cfg.p, cfg.m, {cfg.k});
  const long mprime = std::max(cfg.mprime, cfg.m);
  for (const auto& chi : enumerate_characters(cfg.p, cfg.m)) {
    auto r = divisibility_5_11(chi, cfg.k, cprime.value);
    r.details["cprime_p_part"] = cprime.p_part;
    s.reports.push_back(std::move(r));
  }
  for (const auto& chi : enumerate_characters(cfg.p, cfg.m))
    for (long d : {1L, cfg.p}) s.reports.push_back(exp_sum_divisibility_5_17(chi, d, 1, mprime));
  s.passed = all_hold(s.reports);
  return s;
}

SuiteResult suite_chain(const RunConfig& cfg) {
  SuiteResult s{"chain", intmuk_chain_verify(cfg.p, cfg.k, cfg.mprime), true};
  for (const auto& r : s.reports) s.passed = s.passed && exactly_reported(r);
  return s;
}

SuiteResult suite_theorem1(const RunConfig& cfg) {
  SuiteResult s{"theorem1", {}, true};
  const auto conv = convention(cfg);
  s.reports.push_back(theorem1_check(cfg.p, cfg.k, cfg.mprime, conv));
  const auto other = conv == Convention::AsPrinted ? Convention::FromDefinition : Convention::AsPrinted;
  s.reports.push_back(theorem1_check(cfg.p, cfg.k, cfg.mprime, other));
  for (const auto& r : s.reports) s.passed = s.passed && exactly_reported(r);
  return s;
}

SuiteResult suite_boundedness(const RunConfig& cfg) {
  SuiteResult s{"boundedness", {boundedness_check(cfg.p, cfg.k, std::max(cfg.m, 2L), convention(cfg))}, true};
  s.passed = all_hold(s.reports);
  return s;
}

std::string csv_coords(const CyclotomicNumber& a) {
  std::string out;
  for (const auto& c : a.coords()) out += (out.empty() ? "" : ";") + to_string(c);
  return out;
}

std::ostream& output(const RunConfig& cfg, std::ostream& fallback, std::ofstream& file) {
  if (cfg.out.empty()) return fallback;
  file.open(cfg.out);
  if (!file) throw InvalidArgument("cannot open output file " + cfg.out);
  return file;
}

}  // namespace

Json RunConfig::to_json() const {
  return Json{{"p", p},         {"m", m},         {"k", k},           {"c", c},
              {"mprime", mprime}, {"qprec", qprec}, {"cutoff", cutoff}, {"tol", tol},
              {"format", format}, {"convention", convention}, {"suites", suites}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"fourier", "distribution", "lemmas",  "kummer",     "mazur",
                                              "divisibility", "chain",   "theorem1", "boundedness"};
  return names;
}

void validate_suite(const std::string& suite, const RunConfig& cfg) {
  if (cfg.p < 3 || !is_prime(cfg.p)) throw InvalidArgument("p must be an odd prime");
  if (cfg.m < 1) throw InvalidArgument("m must be >= 1");
  parse_convention(cfg.convention);
  if (suite == "fourier") {
    if (cfg.k < 3) throw InvalidArgument("k must be >= 3 for absolute convergence");
    if (cfg.cutoff < 1 || cfg.qprec < 1) throw InvalidArgument("cutoff and qprec must be positive");
  } else if (suite == "distribution") {
    if (cfg.k < 2) throw InvalidArgument("k must be >= 2");
  } else if (suite == "lemmas") {
    if (cfg.k < 2) throw InvalidArgument("k must be >= 2");
  } else if (suite == "kummer" || suite == "mazur") {
    if (cfg.c <= 1 || gcd(cfg.c, 2 * cfg.p) != 1) throw InvalidArgument("c must be > 1 and coprime to 2p");
    if (cfg.k < 1) throw InvalidArgument("k must be >= 1");
  } else if (suite == "divisibility") {
    require_even_k(cfg, 4);
  } else if (suite == "chain" || suite == "theorem1") {
    require_mu_star_inputs(cfg.p, 1, cfg.k, cfg.mprime);
  } else if (suite == "boundedness") {
    for (long m = 1; m <= std::max(cfg.m, 2L); ++m) require_mu_star_inputs(cfg.p, m, cfg.k, 2 * m + 1);
  } else {
    throw InvalidArgument("unknown suite: " + suite);
  }
}

SuiteResult run_suite(const std::string& suite, const RunConfig& cfg) {
  validate_suite(suite, cfg);
  if (suite == "fourier") return suite_fourier(cfg);
  if (suite == "distribution") return suite_distribution(cfg);
  if (suite == "lemmas") return suite_lemmas(cfg);
  if (suite == "kummer") return suite_kummer(cfg);
  if (suite == "mazur") return suite_mazur(cfg);
  if (suite == "divisibility") return suite_divisibility(cfg);
  if (suite == "chain") return suite_chain(cfg);
  if (suite == "theorem1") return suite_theorem1(cfg);
  return suite_boundedness(cfg);
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> suites;
  for (const auto& s : cfg.suites.empty() ? std::vector<std::string>{"all"} : cfg.suites) {
    if (s == "all")
      suites.insert(suites.end(), suite_names().begin(), suite_names().end());
    else
      suites.push_back(s);
  }
  try {
    for (const auto& s : suites) validate_suite(s, cfg);
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }

  std::vector<std::future<SuiteResult>> running;
  for (const auto& s : suites) running.push_back(std::async(std::launch::async, run_suite, s, cfg));
  std::vector<SuiteResult> results;
  try {
    for (auto& f : running) results.push_back(f.get());
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }

  std::ofstream file;
  std::ostream& os = output(cfg, out, file);
  RunConfig echoed = cfg;
  echoed.suites = suites;
  os << Json{{"config", echoed.to_json()}}.dump() << "\n";
  bool passed = true;
  for (const auto& res : results) {
    for (const auto& r : res.reports) {
      Json line = to_json(r);
      line["suite"] = res.name;
      os << line.dump() << "\n";
    }
    os << Json{{"suite", res.name}, {"passed", res.passed}, {"reports", res.reports.size()}}.dump() << "\n";
    passed = passed && res.passed;
  }
  return passed ? kPass : kCheckFailure;
}

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;
  if (format != "csv" && format != "json") {
    err << "usage error: format must be csv or json\n";
    return kUsageError;
  }
  const bool csv = format == "csv";
  std::ostringstream buf;
  try {
    if (cfg.kind == "bernoulli" || cfg.kind == "zeta") {
      const bool zeta = cfg.kind == "zeta";
      if (cfg.max_k < 0) throw InvalidArgument("max-k must be >= 0");
      Json rows = Json::array();
      if (csv) buf << (zeta ? "k,zeta(1-k)\n" : "k,B_k\n");
      for (long k = zeta ? 2 : 0; k <= cfg.max_k; k += 2) {
        const Rational v = zeta ? zeta_neg(k) : bernoulli_number(k);
        if (csv)
          buf << k << "," << to_string(v) << "\n";
        else
          rows.push_back(Json{{"k", k}, {"value", to_string(v)}});
      }
      if (!csv) buf << rows.dump() << "\n";
    } else if (cfg.kind == "mustar") {
      require_even_k(cfg, 4);
      const auto t = mu_star_table(cfg.p, cfg.m, cfg.k, cfg.mprime, convention(cfg));
      if (csv) {
        buf << "residue,order,coords\n";
        for (const auto& [a, v] : t.values) buf << a << "," << v.order() << "," << csv_coords(v) << "\n";
      } else {
        buf << mu_star_table_json(t, cfg.k, cfg.mprime).dump() << "\n";
      }
    } else if (cfg.kind == "mazur") {
      const auto t = mazur_measure(cfg.p, cfg.m, cfg.c);
      if (csv) {
        buf << "residue,value\n";
        for (const auto& [a, v] : t.values) buf << a << "," << to_string(v) << "\n";
      } else {
        buf << to_json(t).dump() << "\n";
      }
    } else if (cfg.kind == "characters") {
      Json rows = Json::array();
      if (csv) buf << "index,conductor,parity,gauss_order,gauss_coords\n";
      for (const auto& chi : enumerate_characters(cfg.p, cfg.m)) {
        const auto g = gauss_sum(chi);
        if (csv)
          buf << chi.index() << "," << chi.conductor() << "," << chi.parity() << "," << g.order() << ","
              << csv_coords(g) << "\n";
        else
          rows.push_back(Json{{"character", to_json(chi)},
                              {"conductor", chi.conductor()},
                              {"parity", chi.parity()},
                              {"gauss_sum", to_json(g)}});
      }
      if (!csv) buf << rows.dump() << "\n";
    } else {
      throw InvalidArgument("unknown table kind: " + cfg.kind);
    }
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }
  std::ofstream file;
  output(cfg, out, file) << buf.str();
  return kPass;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numeric checks for Eisenstein distributions and p-adic measures", "eismeas"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "odd prime");
    sub->add_option("--m", cfg.m, "level exponent");
    sub->add_option("--k", cfg.k, "weight");
    sub->add_option("--c", cfg.c, "Mazur regularization parameter");
    sub->add_option("--mprime", cfg.mprime, "coefficient exponent m'");
    sub->add_option("--qprec", cfg.qprec, "q-expansion precision");
    sub->add_option("--cutoff", cfg.cutoff, "lattice cutoff R");
    sub->add_option("--tol", cfg.tol, "numeric tolerance");
    sub->add_option("--format", cfg.format, "json or csv");
    sub->add_option("--out", cfg.out, "output path");
    sub->add_option("--convention", cfg.convention, "as-printed or from-definition");
  };
  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify);
  verify->add_option("--suite", cfg.suites, "suite name or all")->take_all();
  auto* table = app.add_subcommand("table", "emit tables");
  add_common(table);
  table->add_option("--kind", cfg.kind, "bernoulli, zeta, mustar, mazur, characters")->required();
  table->add_option("--max-k", cfg.max_k, "largest k for bernoulli and zeta tables");

  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }
  try {
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    return cmd_table(cfg, out, err);
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailure;
  }
}

}  // namespace eismeas::cli
