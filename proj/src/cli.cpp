#include "qwabs/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "qwabs/classical.hpp"
#include "qwabs/closed_forms.hpp"
#include "qwabs/error.hpp"
#include "qwabs/evolution.hpp"
#include "qwabs/hitting.hpp"
#include "qwabs/series.hpp"
#include "qwabs/verify.hpp"

namespace qwabs::cli {

using nlohmann::json;

namespace {

std::vector<double> split_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a number: '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

/// Usage and scope errors map to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string coin = "hadamard";
  std::string lattice = "inf";
  int start = 1;
  std::vector<std::string> qubit = {"0,0", "1,0"};
  std::string route = "recurrence";
  std::optional<long> horizon;
  long order = 32;
  int nodes = kDefaultNodes;
  std::string format = "json";
  int threads = 1;
  bool per_time = false;
  bool classical = false;
  double p = 0.5;
  bool experimental = false;
  std::string only;
};

std::optional<int> parse_lattice(const std::string& text) {
  if (text == "inf") return std::nullopt;
  try {
    size_t used = 0;
    const int n = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return n;
  } catch (const std::exception&) {
    throw UsageError("--lattice expects an integer N or 'inf', got '" + text + "'");
  }
}

void emit(const json& report, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << report.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    out << "route,value,truncation,nodes,order\n";
    const auto& d = report["diagnostics"];
    auto cell = [](const json& v) { return v.is_null() ? std::string() : v.dump(); };
    out << report["route"].get<std::string>() << "," << report["value"].dump() << ","
        << cell(d["truncation"]) << "," << cell(d["nodes"]) << "," << cell(d["order"]) << "\n";
    if (report.contains("per_time")) {
      out << "n,at_0,at_N\n";
      const auto& pt = report["per_time"];
      for (size_t n = 0; n < pt["at_0"].size(); ++n) {
        out << n << "," << pt["at_0"][n].dump() << ",";
        if (pt["at_N"].size() > n) out << pt["at_N"][n].dump();
        out << "\n";
      }
    }
    return;
  }
  out << std::setprecision(15);
  out << "route: " << report["route"].get<std::string>() << "\n";
  out << "value: " << report["value"].get<double>() << "\n";
  for (const auto& [key, v] : report["diagnostics"].items())
    if (!v.is_null()) out << key << ": " << v.dump() << "\n";
}

json absorb_classical(const RunConfig& cfg) {
  const auto n = parse_lattice(cfg.lattice);
  json report;
  report["route"] = "classical";
  report["inputs"] = {{"p", cfg.p},
                      {"lattice", n ? json(*n) : json("inf")},
                      {"start", cfg.start}};
  try {
    if (n) {
      classical::ClassicalWalkSpec spec{cfg.p, *n, cfg.start};
      report["value"] = classical::ruin_prob(spec);
    } else {
      report["value"] = classical::ruin_prob_infinite(cfg.p, cfg.start);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json diag = {{"truncation", nullptr}, {"nodes", nullptr}, {"order", nullptr}};
  if (!n && cfg.start == 1) {
    const MomentValue e = classical::classical_conditional_expectation(cfg.p);
    diag["expected_t0_given_hit"] = is_divergent(e) ? json("inf") : json(std::get<double>(e));
  }
  report["diagnostics"] = diag;
  report["tolerances"] = {{"symmetric_window", classical::kSymmetricWindow}};
  return report;
}

json absorb_quantum(const RunConfig& cfg, std::ostream& err) {
  const Coin coin = make_coin(parse_coin_spec(cfg.coin));
  if (cfg.qubit.size() != 2) throw UsageError("--qubit expects two 're,im' pairs");
  const QubitState phi = parse_qubit(cfg.qubit[0], cfg.qubit[1], err);
  const auto n = parse_lattice(cfg.lattice);
  const LatticeSpec lattice = n ? LatticeSpec::finite(*n, cfg.start)
                                : LatticeSpec::semi_infinite(cfg.start);

  json report;
  report["route"] = cfg.route;
  report["inputs"] = {{"coin", cfg.coin},
                      {"coin_matrix",
                       {complex_json(coin.a()), complex_json(coin.b()), complex_json(coin.c()),
                        complex_json(coin.d())}},
                      {"lattice", n ? json(*n) : json("inf")},
                      {"start", cfg.start},
                      {"qubit", {complex_json(phi.alpha()), complex_json(phi.beta())}}};
  json diag = {{"truncation", nullptr}, {"nodes", nullptr}, {"order", nullptr}};
  json tolerances = {{"unitarity", kUnitarityTol}};

  if (cfg.route == "evolve" || cfg.route == "recurrence") {
    long horizon = cfg.horizon.value_or(n ? 500 : 2000);
    if (!n && !cfg.horizon)
      err << "note: semi-infinite lattice with default horizon " << horizon
          << "; the tail beyond it is not included\n";
    report["inputs"]["horizon"] = horizon;
    if (cfg.route == "evolve") {
      const HittingDistribution h = run_absorption(lattice, coin, phi, horizon);
      report["value"] = h.cumulative_at_0;
      diag["truncation"] = h.survival;
      diag["absorbed_at_N"] = n ? json(h.cumulative_at_n) : json(nullptr);
      if (cfg.per_time) report["per_time"] = {{"at_0", h.per_time_at_0}, {"at_N", h.per_time_at_n}};
    } else {
      const AbsorptionResult a = absorption_prob(lattice, coin, phi, horizon);
      report["value"] = a.probability;
      diag["truncation"] = a.survival;
      if (cfg.per_time) {
        const XiTable t = build_xi_table(lattice, coin, horizon);
        std::vector<double> at0(horizon + 1);
        for (long i = 0; i <= horizon; ++i) at0[i] = hitting_prob_at_time(t, cfg.start, i, phi);
        report["per_time"] = {{"at_0", at0}, {"at_N", json::array()}};
      }
    }
    diag["horizon"] = horizon;
  } else if (cfg.route == "theorem2") {
    if (!n) throw UsageError("route theorem2 needs a finite lattice");
    Theorem2Options opt;
    opt.nodes = cfg.nodes;
    opt.threads = cfg.threads;
    opt.experimental_general_coin = cfg.experimental;
    const Theorem2Result t = theorem2_absorption(*n, cfg.start, coin, phi, opt);
    report["value"] = t.probability;
    diag["nodes"] = t.nodes;
    diag["constants"] = {{"C1", t.constants.c1},
                         {"C2", t.constants.c2},
                         {"C3", complex_json(t.constants.c3)}};
    tolerances["quadrature_agreement"] = opt.agreement;
    tolerances["pole_proximity"] = 1e-12;
  } else if (cfg.route == "closed-form") {
    if (n || cfg.start != 1 || !coin.is_hadamard())
      throw UsageError("route closed-form covers the Hadamard coin on --lattice inf --start 1");
    report["value"] = p_inf_1_hadamard(phi);
    diag["expected_t0_given_hit"] = expected_t0_given_hit(phi);
  } else {
    throw UsageError("unknown route '" + cfg.route + "'");
  }
  report["diagnostics"] = diag;
  report["tolerances"] = tolerances;
  return report;
}

json series_report(const RunConfig& cfg) {
  const auto n = parse_lattice(cfg.lattice);
  if (cfg.order < 1) throw UsageError("--order must be at least 1");
  json report;
  report["route"] = "series";
  report["inputs"] = {{"lattice", n ? json(*n) : json("inf")},
                      {"start", cfg.start},
                      {"order", cfg.order}};
  SeriesCoeffs p, r;
  if (!n) {
    if (cfg.start < 1) throw UsageError("--start must be an interior site");
    const GenSeries g = gen_infinite_hadamard_k(cfg.start, std::max<long>(cfg.order, cfg.start));
    p = g.p.truncated(cfg.order);
    r = g.r.truncated(cfg.order);
  } else {
    if (cfg.start != 1 || *n < 2)
      throw UsageError(
          "rational forms are available for k=1 only; evaluate other sites pointwise "
          "(gen_finite_eval, or absorb --route theorem2)");
    const RationalFn f = gen_r_finite_k1(*n);
    report["rational"] = f.to_string();
    p = SeriesCoeffs::monomial(1, cfg.order);
    r = taylor_coeffs(f, cfg.order);
  }
  json coeffs = json::array();
  for (long i = 0; i <= cfg.order; ++i) {
    if (p[i] == cplx{} && r[i] == cplx{}) continue;
    coeffs.push_back({{"n", i}, {"p", p[i].real()}, {"r", r[i].real()}});
  }
  report["coefficients"] = coeffs;
  report["value"] = parseval_sum(r);
  report["diagnostics"] = {{"truncation", nullptr}, {"nodes", nullptr}, {"order", cfg.order}};
  report["tolerances"] = json::object();
  return report;
}

void emit_series(const json& report, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << report.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    out << "n,p,r\n";
    for (const auto& c : report["coefficients"])
      out << c["n"].dump() << "," << c["p"].dump() << "," << c["r"].dump() << "\n";
    return;
  }
  out << std::setprecision(15);
  if (report.contains("rational")) out << "r(z) = " << report["rational"].get<std::string>() << "\n";
  for (const auto& c : report["coefficients"])
    out << "n=" << c["n"].dump() << "  p=" << c["p"].get<double>() << "  r=" << c["r"].get<double>()
        << "\n";
}

int verify(const RunConfig& cfg, std::ostream& out) {
  const std::vector<CheckRow> rows = run_verification(cfg.only, cfg.threads);
  const bool all = std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.passed; });
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"group", r.group},
                     {"name", r.name},
                     {"value", r.value},
                     {"expected", r.expected},
                     {"tolerance", r.tolerance},
                     {"passed", r.passed},
                     {"detail", r.detail}});
    out << json{{"passed", all}, {"rows", arr}}.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    out << "group,name,value,expected,tolerance,passed\n";
    for (const auto& r : rows)
      out << r.group << ",\"" << r.name << "\"," << json(r.value).dump() << ","
          << json(r.expected).dump() << "," << r.tolerance << "," << (r.passed ? 1 : 0) << "\n";
  } else {
    out << std::setprecision(12);
    for (const auto& r : rows)
      out << (r.passed ? "PASS" : "FAIL") << "  [" << r.group << "] " << r.name << ": " << r.value
          << " (expected " << r.expected << ", tol " << r.tolerance << ")"
          << (r.detail.empty() ? "" : " " + r.detail) << "\n";
    const auto passed = std::count_if(rows.begin(), rows.end(), [](const CheckRow& r) { return r.passed; });
    out << passed << "/" << rows.size() << " checks passed\n";
  }
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

CoinSpec parse_coin_spec(const std::string& text) {
  if (text == "hadamard") return HadamardSpec{};
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("unknown coin '" + text + "'");
  const std::string kind = text.substr(0, eq);
  const std::vector<double> v = split_numbers(text.substr(eq + 1));
  if (kind == "rho" && v.size() == 1) return RhoSpec{v[0]};
  if (kind == "sym" && v.size() == 3) return SymmetricSpec{v[0], v[1], v[2]};
  if (kind == "custom" && v.size() == 8)
    return CustomSpec{{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}};
  throw std::invalid_argument("malformed coin '" + text + "'");
}

cplx parse_complex(const std::string& text) {
  const std::vector<double> v = split_numbers(text);
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() == 2) return {v[0], v[1]};
  throw std::invalid_argument("expected 're,im', got '" + text + "'");
}

QubitState parse_qubit(const std::string& alpha, const std::string& beta, std::ostream& warn) {
  const cplx a = parse_complex(alpha), b = parse_complex(beta);
  const double norm = std::sqrt(std::norm(a) + std::norm(b));
  if (norm > 0.0 && std::abs(norm - 1.0) > 1e-9)
    warn << "warning: qubit norm " << norm << " rescaled to 1\n";
  return QubitState::normalized(a, b);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Absorption probabilities for one-dimensional coined quantum walks"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_walk_options = [&cfg](CLI::App* sub) {
    sub->add_option("--lattice", cfg.lattice, "right boundary N, or 'inf'");
    sub->add_option("--start", cfg.start, "start site k");
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv", "text"}));
  };

  auto* absorb = app.add_subcommand("absorb", "absorption probability at site 0");
  add_walk_options(absorb);
  absorb->add_option("--coin", cfg.coin, "hadamard | rho=<x> | sym=<eta,phi,psi> | custom=<8 reals>");
  absorb->add_option("--qubit", cfg.qubit, "alpha and beta as 're,im' pairs")->expected(2);
  absorb->add_option("--route", cfg.route)
      ->check(CLI::IsMember({"evolve", "recurrence", "theorem2", "closed-form"}));
  absorb->add_option("--horizon", cfg.horizon, "time horizon T");
  absorb->add_option("--nodes", cfg.nodes, "initial quadrature nodes");
  absorb->add_option("--threads", cfg.threads)->check(CLI::PositiveNumber);
  absorb->add_flag("--per-time", cfg.per_time, "include per-time hitting probabilities");
  absorb->add_flag("--classical", cfg.classical, "classical gambler's ruin instead");
  absorb->add_option("--p", cfg.p, "classical probability of a step toward 0");
  absorb->add_flag("--experimental", cfg.experimental, "allow non-Hadamard coins in theorem2");

  auto* classical_cmd = app.add_subcommand("classical", "alias for absorb --classical");
  add_walk_options(classical_cmd);
  classical_cmd->add_option("--p", cfg.p, "probability of a step toward 0");

  auto* series = app.add_subcommand("series", "generating-function coefficients (Hadamard)");
  add_walk_options(series);
  series->add_option("--order", cfg.order, "highest power of z");

  auto* verify_cmd = app.add_subcommand("verify", "run the cross-route verification matrix");
  verify_cmd->add_option("--only", cfg.only, "run a single group")
      ->check(CLI::IsMember(verification_groups()));
  verify_cmd->add_option("--threads", cfg.threads)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv", "text"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    // verify prints a table unless a format is requested.
    const bool has_format = std::find(args.begin(), args.end(), "--format") != args.end();
    app.parse(reversed);
    if (verify_cmd->parsed() && !has_format) cfg.format = "text";
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify_cmd->parsed()) return verify(cfg, out);
    if (series->parsed()) {
      emit_series(series_report(cfg), cfg.format, out);
      return kExitOk;
    }
    const bool classical_run = classical_cmd->parsed() || cfg.classical;
    emit(classical_run ? absorb_classical(cfg) : absorb_quantum(cfg, err), cfg.format, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ScopeError& e) {
    err << "error: " << e.what() << " (--experimental lifts this for theorem2)\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace qwabs::cli
