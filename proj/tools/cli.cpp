#include "cli.hpp"

#include "expthresh/constructions/basic.hpp"
#include "expthresh/constructions/linear.hpp"
#include "expthresh/constructions/reductions.hpp"
#include "expthresh/errors.hpp"
#include "expthresh/instances/instances.hpp"
#include "expthresh/json_io.hpp"
#include "expthresh/oracles/cover_program.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

#ifndef EXPTHRESH_VERSION
#define EXPTHRESH_VERSION "unknown"
#endif

namespace expthresh::cli {

namespace {

struct Options {
  std::string command;
  std::string input;
  std::string out;
  int precision = 128;
  unsigned budget_enum = 22;
  std::size_t budget_lp = std::size_t{1} << 18;
  std::size_t budget_nodes = 200000;
  std::uint64_t seed = 0;
  std::string theta = "1/2";
  std::string mode;
  bool seed_given = false;
  bool no_verify = false;

  // oracle
  std::string p;
  bool fractional = false;

  // construct
  std::string algorithm;
  std::string L;
  std::string J = "1";
  std::string V;
  std::string class_constant = "200";
  unsigned c = 0;
  std::size_t retries = 100;

  // instance
  std::string kind;
  unsigned n = 8;
  unsigned k = 2;
  unsigned edges = 0;
  unsigned denominator = 16;
  bool unweighted = false;

  Budgets budgets() const {
    Budgets b;
    b.precision = precision;
    b.enum_bits = budget_enum;
    b.lp_variables = budget_lp;
    b.bnb_nodes = budget_nodes;
    if (b.max_precision < precision) b.max_precision = precision;
    return b;
  }

  Json config() const {
    Json j = {{"command", command},
              {"precision", precision},
              {"budget_enum", budget_enum},
              {"budget_lp", budget_lp},
              {"budget_nodes", budget_nodes},
              {"seed", seed}};
    if (!input.empty()) j["input"] = input;
    if (!out.empty()) j["out"] = out;
    if (!mode.empty()) j["mode"] = mode;
    j["theta"] = theta;
    if (command == "oracle") {
      j["p"] = p;
      j["fractional"] = fractional;
    }
    if (command == "construct") {
      j["algorithm"] = algorithm;
      j["verify"] = !no_verify;
      if (!p.empty()) j["p"] = p;
      if (!L.empty()) j["L"] = L;
      if (!V.empty()) j["V"] = V;
      j["J"] = J;
      j["class_constant"] = class_constant;
      if (c) j["c"] = c;
      j["retries"] = retries;
    }
    if (command == "instance") {
      j["kind"] = kind;
      j["n"] = n;
      j["k"] = k;
      j["edges"] = edges;
      j["denominator"] = denominator;
      j["weighted"] = !unweighted;
    }
    return j;
  }
};

Json tool_info() { return {{"name", "expthresh"}, {"version", EXPTHRESH_VERSION}}; }

const char* tri_name(Tri t) { return t == Tri::yes ? "yes" : t == Tri::no ? "no" : "unknown"; }

/// "3/2", "e", "e^2", "10*2^10*e^2" style products of rationals, powers of 2 and e.
Real parse_real_text(const std::string& text) {
  require(!text.empty(), ErrorCode::parse_error, "empty number");
  Real acc(1);
  std::stringstream ss(text);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    require(!factor.empty(), ErrorCode::parse_error, "malformed number '" + text + "'");
    auto caret = factor.find('^');
    std::string base = factor.substr(0, caret);
    long exponent = 1;
    if (caret != std::string::npos) {
      try {
        exponent = std::stol(factor.substr(caret + 1));
      } catch (const std::exception&) {
        fail(ErrorCode::parse_error, "malformed exponent in '" + text + "'");
      }
    }
    Real b = base == "e" ? Real::e() : Real(parse_rational(base));
    acc = acc * pow(b, exponent);
  }
  return acc;
}

SubsetMask parse_elements(const std::string& text, unsigned n) {
  SubsetMask s(n);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    unsigned long x = 0;
    try {
      x = std::stoul(item);
    } catch (const std::exception&) {
      fail(ErrorCode::parse_error, "malformed element '" + item + "'");
    }
    require(x < n, ErrorCode::invalid_argument, "element " + item + " outside the ground set");
    s.set(static_cast<unsigned>(x));
  }
  return s;
}

Json load(const std::string& path, const char* key) {
  Json j = read_json_file(path);
  if (j.is_object() && j.contains(key)) return j.at(key);
  return j;
}

Json error_json(std::string_view code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}, {"tool", tool_info()}};
}

Json sets_json(const std::vector<SubsetMask>& sets) {
  Json a = Json::array();
  for (const auto& s : sets) a.push_back(to_json(s));
  return a;
}

Json solution_json(const CoverProgram& prog, const CoverSolution& sol) {
  Json j = {{"integral", sol.integral}, {"objective", to_json(sol.objective)}};
  if (sol.exact_objective) j["exact_objective"] = to_string(*sol.exact_objective);
  if (sol.integral) {
    j["cover"] = sets_json(sol.support(prog));
    j["nodes"] = sol.nodes;
  } else {
    Json a = Json::array();
    for (std::size_t i = 0; i < sol.assignment.size(); ++i)
      if (sol.assignment[i] != 0) a.push_back({{"set", to_json(prog.variables[i])}, {"x", to_string(sol.assignment[i])}});
    j["assignment"] = a;
    j["dual_objective"] = to_json(sol.dual_objective);
    j["dual_verified"] = sol.dual_verified;
  }
  return j;
}

int cmd_thresholds(const Options& o, Json& report) {
  const Budgets budgets = o.budgets();
  MonotoneFamily f = monotone_family_from_json(load(o.input, "family"));
  const Rational theta = parse_rational(o.theta);
  ThresholdResult q = expectation_threshold_q(f, theta, budgets);
  ThresholdResult qf = fractional_expectation_threshold_qf(f, theta, budgets);
  Real pc = threshold_pc(f, budgets);
  CoverProgram prog = CoverProgram::for_family(f, budgets);

  const int bits = budgets.precision;
  const Tri q_gt_qf = certify_lt(qf.value, q.value, bits, budgets.max_precision);
  const bool pc_implied = theta <= Rational(1, 2);
  const Tri qf_gt_pc = certify_lt(pc, qf.value, bits, budgets.max_precision);
  const bool violated = q_gt_qf == Tri::yes || (pc_implied && qf_gt_pc == Tri::yes);

  report["q"] = to_json(q.value.eval(bits));
  report["q_f"] = to_json(qf.value.eval(bits));
  report["p_c"] = to_json(pc.eval(bits));
  report["witnesses"] = {{"q", solution_json(prog, q.witness)}, {"q_f", solution_json(prog, qf.witness)}};
  report["chain"] = {{"q_le_qf_violated", tri_name(q_gt_qf)},
                     {"qf_le_pc_checked", pc_implied},
                     {"qf_le_pc_violated", tri_name(qf_gt_pc)},
                     {"holds", !violated}};
  return violated ? chain_violation : ok;
}

int cmd_oracle(const Options& o, Json& report) {
  const Budgets budgets = o.budgets();
  MonotoneFamily f = monotone_family_from_json(load(o.input, "family"));
  require(!o.p.empty(), ErrorCode::invalid_argument, "--p is required");
  const Rational p = parse_rational(o.p);
  CoverProgram prog = CoverProgram::for_family(f, budgets);
  CoverSolution sol = o.fractional ? solve_fractional(prog, p, budgets) : solve_integral(prog, p, budgets);
  report["solution"] = solution_json(prog, sol);
  return ok;
}

unsigned smallest_c(const WeightFunction& g) {
  const unsigned k = *g.uniform_k();
  const unsigned d = g.max_codegree();
  for (unsigned c = 1;; ++c) {
    unsigned long ck = 1;
    for (unsigned i = 0; i < k; ++i) ck *= c;
    if (ck >= d) return c;
  }
}

Certificate construct(const Options& o, const WeightFunction& g, const Real& p, Json& extra) {
  const Budgets budgets = o.budgets();
  const std::string& a = o.algorithm;
  auto need_L = [&](Real fallback) { return o.L.empty() ? fallback : parse_real_text(o.L); };
  if (a == "singleton") return singleton_cover(g, p, budgets);
  if (a == "volume") {
    require(!o.L.empty(), ErrorCode::invalid_argument, "volume needs --L");
    SubsetMask v = o.V.empty() ? SubsetMask::full(g.n()) : parse_elements(o.V, g.n());
    return volume_certificate(g, v, p, parse_real_text(o.L), budgets);
  }
  if (a == "constant-density") {
    require(!o.L.empty(), ErrorCode::invalid_argument, "constant-density needs --L");
    std::optional<SubsetMask> v;
    if (!o.V.empty()) v = parse_elements(o.V, g.n());
    return constant_density_cover(g, p, parse_real_text(o.L), v, budgets);
  }
  if (a == "randomized") {
    require(o.seed_given, ErrorCode::invalid_argument, "randomized needs --seed");
    RandomizedResult r = randomized_cover(g, p, o.seed, o.retries, budgets);
    extra["attempts"] = r.attempts;
    return r.certificate;
  }
  if (a == "uniformize") return uniformize_cover(g, p, exact_oracle_builder(std::nullopt, budgets), budgets).certificate;
  if (a == "weight-class")
    return weight_class_cover(g, p, need_L(linear_pipeline_L()), parse_rational(o.class_constant),
                              linear_class_builder(budgets), budgets)
        .certificate;
  if (a == "linear-star") {
    LinearCoverResult r =
        linear_constant_cover(g, p, parse_rational(o.J), need_L(Real(1024) * Real::e() * Real::e()), budgets);
    extra["branch"] = r.small_branch ? "support" : "stars";
    extra["vacuous"] = tri_name(r.vacuous);
    return r.certificate;
  }
  if (a == "nearly-linear") {
    require(!g.empty() && g.uniform_k(), ErrorCode::invalid_argument, "nearly-linear needs a uniform weight function");
    const unsigned c = o.c ? o.c : smallest_c(g);
    NearlyLinearResult r = nearly_linear_cover(g, p, c, budgets);
    extra["c"] = c;
    extra["colour_classes"] = r.classes;
    return r.certificate;
  }
  fail(ErrorCode::invalid_argument, "unknown algorithm '" + a + "'");
}

std::optional<CoverageMode> requested_mode(const Options& o) {
  if (o.mode.empty()) return std::nullopt;
  require(o.mode.rfind("sampled", 0) != 0 || o.seed_given, ErrorCode::invalid_argument, "sampled mode needs --seed");
  return parse_coverage_mode(o.mode, o.seed);
}

int cmd_construct(const Options& o, Json& report) {
  WeightFunction g = weight_function_from_json(load(o.input, "weights"));
  require(!g.empty(), ErrorCode::invalid_argument, "weight function is empty");
  Real p = o.p.empty() ? unit_weight_p(g) : parse_real_text(o.p);
  Json extra = Json::object();
  Certificate cert = construct(o, g, p, extra);
  if (o.no_verify) {
    report = to_json(cert);
    report["run"] = extra;
    return ok;
  }
  VerificationReport rep = verify_certificate(cert, o.budgets(), requested_mode(o));
  report = to_json(cert, &rep);
  report["run"] = extra;
  return rep.valid ? ok : invalid_certificate;
}

int cmd_verify(const Options& o, Json& report) {
  Certificate cert = certificate_from_json(read_json_file(o.input));
  VerificationReport rep = verify_certificate(cert, o.budgets(), requested_mode(o));
  report["report"] = to_json(rep);
  report["valid"] = rep.valid;
  return rep.valid ? ok : invalid_certificate;
}

int cmd_instance(const Options& o, Json& report) {
  InstanceSpec spec;
  spec.kind = parse_instance_kind(o.kind);
  spec.n = o.n;
  spec.k = o.k;
  spec.edges = o.edges;
  spec.seed = o.seed;
  spec.law.denominator = o.denominator;
  spec.weighted = !o.unweighted;
  report = generate_instance(spec);
  return ok;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--precision", o.precision, "Working precision in bits")->check(CLI::Range(16, 1 << 16));
  sub->add_option("--budget-enum", o.budget_enum, "Largest ground set scanned exhaustively")->check(CLI::Range(1, 40));
  sub->add_option("--budget-lp", o.budget_lp, "Largest number of LP variables")->check(CLI::PositiveNumber);
  sub->add_option("--budget-nodes", o.budget_nodes, "Branch and bound node limit")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "Seed for every random choice");
  sub->add_option("--theta", o.theta, "Cover weight threshold for q and q_f");
  sub->add_option("--mode", o.mode, "Coverage check: exhaustive | minimal | sampled:<count>");
  sub->add_option("--out", o.out, "Write the JSON result to this file");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
  Options o;
  CLI::App app{"Expectation thresholds, cover certificates and their verification", "expthresh"};
  app.require_subcommand(1);
  app.set_version_flag("--version", EXPTHRESH_VERSION);

  auto* thr = app.add_subcommand("thresholds", "q, q_f and p_c of a monotone family, with the chain check");
  thr->add_option("family", o.input, "Family JSON")->required()->check(CLI::ExistingFile);
  add_common(thr, o);

  auto* orc = app.add_subcommand("oracle", "Minimum-weight cover of a monotone family at p");
  orc->add_option("family", o.input, "Family JSON")->required()->check(CLI::ExistingFile);
  orc->add_option("--p", o.p, "Rational probability")->required();
  orc->add_flag("--fractional", o.fractional, "Solve the LP relaxation instead");
  add_common(orc, o);

  auto* con = app.add_subcommand("construct", "Build and verify a cover certificate");
  con->add_option("weights", o.input, "Weight function JSON")->required()->check(CLI::ExistingFile);
  con->add_option("--algorithm", o.algorithm, "Construction")
      ->required()
      ->check(CLI::IsMember({"singleton", "volume", "constant-density", "randomized", "uniformize", "weight-class",
                             "linear-star", "nearly-linear"}));
  con->add_option("--p", o.p, "Probability (default: the p with w(g,p) = 1)");
  con->add_option("--L", o.L, "Loss, e.g. 5*e or 2^10*e^2");
  con->add_option("--J", o.J, "Restricted up-set parameter J");
  con->add_option("--V", o.V, "Comma-separated elements of V");
  con->add_option("--class-constant", o.class_constant, "Per-class weight constant c in c/i^2");
  con->add_option("--c", o.c, "Codegree parameter c (default: smallest with codegree <= c^k)");
  con->add_option("--retries", o.retries, "Randomized draws before giving up")->check(CLI::PositiveNumber);
  con->add_flag("--no-verify", o.no_verify, "Skip verification");
  add_common(con, o);

  auto* ver = app.add_subcommand("verify", "Re-check a certificate");
  ver->add_option("certificate", o.input, "Certificate JSON")->required()->check(CLI::ExistingFile);
  add_common(ver, o);

  auto* ins = app.add_subcommand("instance", "Generate an instance");
  ins->add_option("--kind", o.kind, "k_ap | random_linear | halving | random_monotone | random_weights | fano | clique")
      ->required();
  ins->add_option("--n", o.n, "Ground set size (vertices for clique)");
  ins->add_option("--k", o.k, "Set size (clique size for clique)");
  ins->add_option("--edges", o.edges, "Number of sets for the random kinds");
  ins->add_option("--denominator", o.denominator, "Weights on {1/d, ..., d/d}")->check(CLI::PositiveNumber);
  ins->add_flag("--unweighted", o.unweighted, "Weight 1 on every set");
  add_common(ins, o);

  std::vector<std::string> argv_store = {"expthresh"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success&) {
    out << (args.size() == 1 && args[0] == "--version" ? std::string(EXPTHRESH_VERSION) + "\n" : app.help());
    return ok;
  } catch (const CLI::ParseError& e) {
    out << error_json(to_string(ErrorCode::parse_error), e.what()).dump(2) << "\n";
    return error;
  }
  CLI::App* chosen = app.get_subcommands().front();
  o.command = chosen->get_name();
  o.seed_given = chosen->count("--seed") > 0;

  Json report = Json::object();
  int code = ok;
  try {
    if (o.command == "thresholds") code = cmd_thresholds(o, report);
    if (o.command == "oracle") code = cmd_oracle(o, report);
    if (o.command == "construct") code = cmd_construct(o, report);
    if (o.command == "verify") code = cmd_verify(o, report);
    if (o.command == "instance") code = cmd_instance(o, report);
  } catch (const Error& e) {
    out << error_json(to_string(e.code()), e.what()).dump(2) << "\n";
    return error;
  } catch (const nlohmann::json::exception& e) {
    out << error_json(to_string(ErrorCode::parse_error), e.what()).dump(2) << "\n";
    return error;
  } catch (const std::exception& e) {
    out << error_json("Internal", e.what()).dump(2) << "\n";
    return error;
  }
  report["tool"] = tool_info();
  report["config"] = o.config();
  if (o.out.empty()) {
    out << report.dump(2) << "\n";
  } else {
    write_json_file(o.out, report);
  }
  return code;
}

}  // namespace expthresh::cli
