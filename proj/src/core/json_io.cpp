#include "expthresh/json_io.hpp"

#include "expthresh/errors.hpp"

#include <fstream>
#include <sstream>

namespace expthresh {

namespace {

template <class F>
auto parsing(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string(what) + ": " + e.what());
  }
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  fail(ErrorCode::parse_error, "expected a rational string, got " + j.dump());
}

unsigned ground_size(const Json& j) {
  long long n = j.at("n").get<long long>();
  require(n >= 1 && n <= (1 << 20), ErrorCode::parse_error, "ground set size out of range");
  return static_cast<unsigned>(n);
}

Json coverage_json(const CoverageMode& m) {
  Json j = {{"mode", to_string(m)}};
  if (m.kind == CoverageKind::sampled) j["seed"] = m.seed;
  return j;
}

CoverageMode coverage_from_json(const Json& j) {
  if (j.is_string()) return parse_coverage_mode(j.get<std::string>());
  return parse_coverage_mode(j.at("mode").get<std::string>(), j.value("seed", std::uint64_t{0}));
}

}  // namespace

Json to_json(const SubsetMask& s) { return s.elements(); }

SubsetMask subset_from_json(const Json& j, unsigned n) {
  return parsing("subset", [&] {
    auto xs = j.get<std::vector<long long>>();
    std::vector<unsigned> us;
    for (long long x : xs) {
      require(x >= 0 && x < n, ErrorCode::parse_error, "element " + std::to_string(x) + " outside the ground set");
      us.push_back(static_cast<unsigned>(x));
    }
    return SubsetMask::from_elements(n, us);
  });
}

Json to_json(const WeightFunction& g) {
  Json entries = Json::array();
  for (const auto& e : g.entries()) entries.push_back({{"set", to_json(e.set)}, {"weight", to_string(e.weight)}});
  Json j = {{"n", g.n()}, {"entries", entries}};
  if (!g.ground().labels.empty()) j["labels"] = g.ground().labels;
  return j;
}

WeightFunction weight_function_from_json(const Json& j) {
  return parsing("weight function", [&] {
    unsigned n = ground_size(j);
    GroundSet ground(n, j.value("labels", std::vector<std::string>{}));
    std::vector<WeightEntry> es;
    for (const auto& e : j.at("entries")) es.push_back({subset_from_json(e.at("set"), n), rational_from_json(e.at("weight"))});
    return WeightFunction(std::move(ground), std::move(es));
  });
}

Json to_json(const MonotoneFamily& f) {
  Json minimal = Json::array();
  for (const auto& m : f.minimal()) minimal.push_back(to_json(m));
  return {{"n", f.n()}, {"minimal", minimal}};
}

MonotoneFamily monotone_family_from_json(const Json& j) {
  return parsing("monotone family", [&] {
    unsigned n = ground_size(j);
    std::vector<SubsetMask> minimal;
    for (const auto& m : j.at("minimal")) minimal.push_back(subset_from_json(m, n));
    return MonotoneFamily(GroundSet(n), std::move(minimal));
  });
}

Json to_json(const CoverFamily& g) {
  switch (g.kind()) {
    case CoverFamily::Kind::explicit_sets: {
      Json sets = Json::array();
      for (const auto& s : g.sets()) sets.push_back(to_json(s));
      return {{"kind", "explicit"}, {"n", g.n()}, {"sets", sets}};
    }
    case CoverFamily::Kind::singleton_levels:
      return {{"kind", "singleton_levels"}, {"n", g.n()}, {"order", g.order()}, {"a", g.level_size()}};
    case CoverFamily::Kind::volume:
      return {{"kind", "volume"}, {"n", g.n()}, {"V", to_json(g.volume_set())}, {"t", g.volume_t()}};
    case CoverFamily::Kind::stars: {
      const StarSystem& st = g.star_system();
      Json edges = Json::array(), levels = Json::array();
      for (const auto& e : st.edges()) edges.push_back(to_json(e));
      for (const auto& l : st.levels()) levels.push_back({{"b", l.b}, {"edges", l.edges}});
      return {{"kind", "stars"}, {"n", g.n()},        {"k", st.k()},
              {"edges", edges},  {"levels", levels}, {"L", st.L().to_json()},
              {"sum_g", to_string(st.sum_g())}};
    }
    case CoverFamily::Kind::union_of: {
      Json parts = Json::array();
      for (const auto& p : g.parts()) parts.push_back(to_json(p));
      return {{"kind", "union"}, {"n", g.n()}, {"parts", parts}};
    }
    case CoverFamily::Kind::copy_projection:
      return {{"kind", "copy"}, {"n", g.n()}, {"copy", g.copy_index()}, {"inner", to_json(g.inner())}};
  }
  return {};
}

CoverFamily cover_family_from_json(const Json& j) {
  return parsing("cover family", [&] {
    const std::string kind = j.at("kind").get<std::string>();
    unsigned n = ground_size(j);
    if (kind == "explicit") {
      std::vector<SubsetMask> sets;
      for (const auto& s : j.at("sets")) sets.push_back(subset_from_json(s, n));
      return CoverFamily::explicit_sets(n, std::move(sets));
    }
    if (kind == "singleton_levels")
      return CoverFamily::singleton_levels(n, j.at("order").get<std::vector<unsigned>>(), j.at("a").get<unsigned>());
    if (kind == "volume") return CoverFamily::volume(subset_from_json(j.at("V"), n), j.at("t").get<unsigned>());
    if (kind == "stars") {
      std::vector<SubsetMask> edges;
      for (const auto& e : j.at("edges")) edges.push_back(subset_from_json(e, n));
      std::vector<StarLevel> levels;
      for (const auto& l : j.at("levels")) levels.push_back({l.at("b").get<unsigned>(), l.at("edges").get<unsigned>()});
      return CoverFamily::stars(std::make_shared<StarSystem>(n, j.at("k").get<unsigned>(), std::move(edges), std::move(levels),
                                                             Real::from_json(j.at("L")), rational_from_json(j.at("sum_g"))));
    }
    if (kind == "union") {
      std::vector<CoverFamily> parts;
      for (const auto& p : j.at("parts")) parts.push_back(cover_family_from_json(p));
      return CoverFamily::union_of(n, std::move(parts));
    }
    if (kind == "copy") return CoverFamily::copy_projection(cover_family_from_json(j.at("inner")), j.at("copy").get<unsigned>(), n);
    fail(ErrorCode::parse_error, "unknown cover family kind '" + kind + "'");
  });
}

Json to_json(const Interval& x) { return {{"lower", x.lower_string()}, {"upper", x.upper_string()}}; }

Json to_json(const VerificationReport& r) {
  Json failures = Json::array();
  for (const auto& s : r.failures) failures.push_back(to_json(s));
  return {{"coverage", {{"mode", to_string(r.mode_used)},
                        {"checked", r.checked},
                        {"failures", r.failure_count},
                        {"failing_sets", failures},
                        {"inconclusive", r.inconclusive},
                        {"ok", r.coverage_ok}}},
          {"weight", {{"value", to_json(r.weight)}, {"upper_only", r.weight_upper_only}, {"ok", r.weight_ok},
                      {"precision", r.precision_used}}},
          {"notes", r.notes},
          {"valid", r.valid}};
}

Json to_json(const Certificate& c, const VerificationReport* report) {
  const int bits = 128;
  Json target = c.target.restricted
                    ? Json{{"kind", "upset_jl"}, {"J", to_string(c.target.J)}, {"L", c.target.L.to_json()}}
                    : Json{{"kind", "upset"}};
  Json j = {{"g", to_json(c.g)},
            {"p", c.p.to_json()},
            {"p_interval", to_json(c.p.eval(bits))},
            {"cover", to_json(c.cover)},
            {"cover_description", c.cover.describe()},
            {"loss", c.loss.to_json()},
            {"loss_text", c.loss.str()},
            {"loss_interval", to_json(c.loss.eval(bits))},
            {"bound", c.bound.to_json()},
            {"bound_interval", to_json(c.bound.eval(bits))},
            {"target", target},
            {"coverage", coverage_json(c.coverage)},
            {"provenance", {{"construction", c.provenance.construction},
                            {"guarantee", c.provenance.guarantee},
                            {"parameters", c.provenance.parameters}}}};
  if (report) {
    j["report"] = to_json(*report);
    j["valid"] = report->valid;
  }
  return j;
}

Certificate certificate_from_json(const Json& j) {
  return parsing("certificate", [&] {
    Certificate c;
    c.g = weight_function_from_json(j.at("g"));
    c.p = Real::from_json(j.at("p"));
    c.cover = cover_family_from_json(j.at("cover"));
    c.loss = Real::from_json(j.at("loss"));
    c.bound = Real::from_json(j.at("bound"));
    const Json& t = j.at("target");
    if (t.at("kind").get<std::string>() == "upset_jl")
      c.target = CoverTarget::upset_jl(rational_from_json(t.at("J")), Real::from_json(t.at("L")));
    else
      require(t.at("kind").get<std::string>() == "upset", ErrorCode::parse_error, "unknown target kind");
    if (j.contains("coverage")) c.coverage = coverage_from_json(j.at("coverage"));
    if (j.contains("provenance")) {
      const Json& p = j.at("provenance");
      c.provenance.construction = p.value("construction", "");
      c.provenance.guarantee = p.value("guarantee", "");
      c.provenance.parameters = p.value("parameters", Json::object());
    }
    require(c.cover.n() == c.g.n(), ErrorCode::parse_error, "cover and weights use different ground sets");
    return c;
  });
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::parse_error, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    require(out.good(), ErrorCode::invalid_argument, "cannot write " + tmp.string());
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace expthresh
