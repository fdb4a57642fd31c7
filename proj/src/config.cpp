#include "pseq/config.hpp"

#include "pseq/errors.hpp"

#include <fstream>
#include <set>

namespace pseq {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

Rational rational_from_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return {j.get<std::int64_t>(), 1};
  if (j.is_number()) return Rational::from_double(j.get<double>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
      bad(what + ": " + e.what());
    }
  }
  bad(what + " must be a number or a \"p/q\" string");
}

template <typename T>
T positive(const Json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) bad(key + " must be a positive integer");
  return static_cast<T>(v.get<std::int64_t>());
}

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) bad(where + " must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) bad("unknown key '" + k + "' in " + where);
}

}  // namespace

Gauge gauge_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) bad("gauge needs a string \"type\"");
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "power") {
      check_keys(j, {"type", "a"}, "power gauge");
      if (!j.contains("a")) bad("power gauge needs \"a\"");
      Rational a = rational_from_json(j.at("a"), "power exponent");
      if (a.num < 0) bad("power exponent must be >= 0");
      return Gauge::power(a);
    }
    if (type == "log-power") {
      check_keys(j, {"type", "j"}, "log-power gauge");
      if (!j.contains("j")) bad("log-power gauge needs \"j\"");
      Rational e = rational_from_json(j.at("j"), "log-power exponent");
      if (e.num <= 0) bad("log-power exponent must be > 0");
      return Gauge::log_power(e);
    }
    if (type == "log-log") {
      check_keys(j, {"type"}, "log-log gauge");
      return Gauge::log_log();
    }
    if (type == "log-chain") {
      check_keys(j, {"type"}, "log-chain gauge");
      return Gauge::log_chain();
    }
    if (type == "table") {
      check_keys(j, {"type", "points"}, "table gauge");
      if (!j.contains("points") || !j.at("points").is_array()) bad("table gauge needs \"points\"");
      std::vector<std::pair<double, double>> pts;
      for (const Json& p : j.at("points")) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
          bad("table points must be [x, y] number pairs");
        pts.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
      return Gauge::table(std::move(pts));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    bad(std::string("invalid gauge: ") + e.what());
  }
  bad("unknown gauge type '" + type + "'");
}

Json gauge_to_json(const Gauge& g) {
  switch (g.kind()) {
    case GaugeKind::Power: return {{"type", "power"}, {"a", to_string(g.exponent())}};
    case GaugeKind::LogPower: return {{"type", "log-power"}, {"j", to_string(g.exponent())}};
    case GaugeKind::LogLog: return {{"type", "log-log"}};
    case GaugeKind::LogChain: return {{"type", "log-chain"}};
    case GaugeKind::Table: {
      Json pts = Json::array();
      for (const auto& [x, y] : g.points()) pts.push_back({x, y});
      return {{"type", "table"}, {"points", pts}};
    }
  }
  return {};
}

ScheduleSpec schedule_from_json(const Json& j) {
  check_keys(j, {"variant", "phi", "q", "psi", "k"}, "schedule");
  ScheduleSpec s;
  if (!j.contains("variant") || !j.at("variant").is_string()) bad("schedule needs a string \"variant\"");
  s.variant = parse_variant(j.at("variant").get<std::string>());
  if (!j.contains("phi")) bad("schedule needs \"phi\"");
  s.phi = gauge_from_json(j.at("phi"));
  if (j.contains("q")) s.q = rational_from_json(j.at("q"), "q");
  if (j.contains("psi")) s.psi = gauge_from_json(j.at("psi"));
  s.k = positive<unsigned>(j, "k", 1);
  return s;
}

Json schedule_to_json(const ScheduleSpec& s) {
  Json j = {{"variant", to_string(s.variant)}, {"phi", gauge_to_json(s.phi)}};
  if (s.variant == Variant::TheoremA) j["q"] = to_string(s.q);
  if (s.variant == Variant::Lemma14) {
    if (s.psi) j["psi"] = gauge_to_json(*s.psi);
    j["k"] = s.k;
  }
  return j;
}

BaseSpec base_from_json(const Json& j) {
  check_keys(j, {"type", "path"}, "base");
  BaseSpec b;
  if (!j.contains("type") || !j.at("type").is_string()) bad("base needs a string \"type\"");
  b.type = j.at("type").get<std::string>();
  if (b.type != "squares" && b.type != "synthetic-block" && b.type != "naturals" && b.type != "file")
    bad("unknown base type '" + b.type + "'");
  if (b.type == "file") {
    if (!j.contains("path") || !j.at("path").is_string()) bad("file base needs a \"path\"");
    b.path = j.at("path").get<std::string>();
  }
  return b;
}

Json base_to_json(const BaseSpec& b) {
  Json j = {{"type", b.type}};
  if (b.type == "file") j["path"] = b.path;
  return j;
}

RunConfig config_from_json(const Json& j) {
  check_keys(j, {"name", "schedule", "base", "caps", "p_grid", "series", "yano", "seed", "out"}, "config");
  RunConfig c;
  if (j.contains("name")) c.name = j.at("name").get<std::string>();
  if (!j.contains("schedule")) bad("config needs \"schedule\"");
  c.schedule = schedule_from_json(j.at("schedule"));
  if (j.contains("base")) c.base = base_from_json(j.at("base"));
  if (j.contains("caps")) {
    const Json& k = j.at("caps");
    check_keys(k, {"k_max", "u_max", "max_bits", "max_candidates", "max_block_bits", "max_k"}, "caps");
    if (k.contains("k_max")) {
      if (!k.at("k_max").is_number_integer() || k.at("k_max").get<std::int64_t>() < 0) bad("k_max must be >= 0");
      c.k_max = k.at("k_max").get<std::uint64_t>();
    }
    c.u_max = positive<std::uint64_t>(k, "u_max", c.u_max);
    c.limits.search.max_bits = positive<unsigned>(k, "max_bits", c.limits.search.max_bits);
    c.limits.search.max_candidates = positive<std::uint64_t>(k, "max_candidates", c.limits.search.max_candidates);
    c.limits.max_k = positive<std::uint64_t>(k, "max_k", c.limits.max_k);
    c.schedule_caps.max_block_bits = positive<unsigned>(k, "max_block_bits", c.schedule_caps.max_block_bits);
  }
  c.schedule_caps.max_u = std::max<std::uint64_t>(c.schedule_caps.max_u, c.u_max);
  if (j.contains("p_grid")) {
    check_keys(j.at("p_grid"), {"n_max"}, "p_grid");
    c.p_n_max = positive<unsigned>(j.at("p_grid"), "n_max", c.p_n_max);
  }
  if (j.contains("series")) {
    check_keys(j.at("series"), {"U"}, "series");
    c.series_U = positive<std::uint64_t>(j.at("series"), "U", c.series_U);
  }
  if (j.contains("yano")) {
    const Json& y = j.at("yano");
    check_keys(y, {"phi", "samples"}, "yano");
    if (y.contains("phi")) c.yano_phi = gauge_from_json(y.at("phi"));
    c.yano_samples = positive<unsigned>(y, "samples", c.yano_samples);
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) bad("seed must be a nonnegative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
  // Build the schedule once so gauge and variant problems surface as config errors.
  try {
    Schedule probe(c.schedule, c.schedule_caps);
  } catch (const Error& e) {
    bad(e.what());
  }
  return c;
}

Json config_to_json(const RunConfig& c) {
  return {{"name", c.name},
          {"schedule", schedule_to_json(c.schedule)},
          {"base", base_to_json(c.base)},
          {"caps",
           {{"k_max", c.k_max},
            {"u_max", c.u_max},
            {"max_bits", c.limits.search.max_bits},
            {"max_candidates", c.limits.search.max_candidates},
            {"max_block_bits", c.schedule_caps.max_block_bits},
            {"max_k", c.limits.max_k}}},
          {"p_grid", {{"n_max", c.p_n_max}}},
          {"series", {{"U", c.series_U}}},
          {"yano", {{"phi", gauge_to_json(c.yano_phi)}, {"samples", c.yano_samples}}},
          {"seed", c.seed},
          {"out", c.out_dir.string()}};
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad("config " + path.string() + " is not valid JSON: " + e.what());
  }
  try {
    RunConfig c = config_from_json(j);
    c.source_dir = path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path();
    return c;
  } catch (const nlohmann::json::exception& e) {
    bad("config " + path.string() + ": " + e.what());
  }
}

std::shared_ptr<const BaseSequence> make_base(const BaseSpec& spec, const std::filesystem::path& source_dir) {
  if (spec.type == "squares") return make_squares();
  if (spec.type == "synthetic-block") return make_synthetic_block();
  if (spec.type == "naturals") return make_naturals();
  if (spec.type == "file") {
    std::filesystem::path p = spec.path;
    if (p.is_relative()) p = source_dir / p;
    return load_sequence_file(p);
  }
  bad("unknown base type '" + spec.type + "'");
}

std::shared_ptr<const Schedule> make_schedule(const RunConfig& c) {
  return std::make_shared<const Schedule>(c.schedule, c.schedule_caps);
}

}  // namespace pseq
