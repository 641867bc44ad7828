#include "treecomp/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "treecomp/cli/builtin_examples.hpp"
#include "treecomp/dsl.hpp"
#include "treecomp/errors.hpp"
#include "treecomp/function_space.hpp"
#include "treecomp/oracle.hpp"
#include "treecomp/spec.hpp"

namespace treecomp::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json vertex_json(const std::optional<VertexId>& v) {
  return v ? json(v->to_string()) : json(nullptr);
}

json optional_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

json verdict_json(const Verdict& v) {
  return {{"status", std::string(to_string(v.status))},
          {"witness", vertex_json(v.witness)},
          {"searched_depth", v.searched_depth},
          {"value", optional_json(v.value)},
          {"note", v.note}};
}

json check_json(const Check& c) {
  json j = {{"holds", c.holds},
            {"witness", vertex_json(c.witness)},
            {"value", optional_json(c.value)},
            {"note", c.note}};
  if (c.other) {
    j["other"] = c.other->to_string();
  }
  return j;
}

json assumptions_json(const Assumptions& a) {
  json list = json::array();
  if (a.weight_pinch) {
    list.push_back({{"kind", "pinch"}, {"m", a.weight_pinch->first}, {"M", a.weight_pinch->second}});
  }
  if (a.finite_range) {
    list.push_back({{"kind", "finite-range"}});
  }
  if (a.sigma) {
    list.push_back({{"kind", "sigma"}, {"value", *a.sigma}});
  }
  return list;
}

std::string format_name(Format f) {
  switch (f) {
    case Format::Text:
      return "text";
    case Format::Json:
      return "json";
    case Format::Csv:
      return "csv";
  }
  return "text";
}

// Maps library exceptions onto the exit-code contract.
template <class F>
CommandResult guarded(F&& body) {
  try {
    return body();
  } catch (const BudgetError& e) {
    return {kExitBudgetError, nullptr, "", std::string("budget error: ") + e.what()};
  } catch (const SyntaxError& e) {
    return {kExitSpecError, nullptr, "", std::string("spec error: ") + e.what()};
  } catch (const Error& e) {
    return {kExitSpecError, nullptr, "", std::string("error: ") + e.what()};
  }
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "text") {
    return Format::Text;
  }
  if (s == "json") {
    return Format::Json;
  }
  if (s == "csv") {
    return Format::Csv;
  }
  throw ConfigError("unknown format '" + s + "' (text, json or csv)");
}

void RunConfig::validate() const {
  if (resolved_preimage_depth() < depth) {
    throw ConfigError("preimage depth " + std::to_string(resolved_preimage_depth()) +
                      " is below the depth " + std::to_string(depth));
  }
  if (!(tolerance > 0.0)) {
    throw ConfigError("tolerance must be positive");
  }
  if (!(blowup_threshold > 0.0)) {
    throw ConfigError("blowup threshold must be positive");
  }
  if (budget == 0) {
    throw ConfigError("vertex budget must be positive");
  }
  if (cutoffs.empty()) {
    throw ConfigError("at least one cutoff is required");
  }
  for (std::size_t k = 1; k < cutoffs.size(); ++k) {
    if (cutoffs[k] <= cutoffs[k - 1]) {
      throw ConfigError("cutoffs must be strictly increasing");
    }
  }
  if (assumptions.weight_pinch) {
    const auto [m, M] = *assumptions.weight_pinch;
    if (!(m > 0.0) || !(M >= m)) {
      throw ConfigError("weight pinch needs 0 < m <= M");
    }
  }
}

void parse_assumption(const std::string& text, Assumptions& into) {
  if (text == "finite-range") {
    into.finite_range = true;
    return;
  }
  const auto eq = text.find('=');
  const std::string key = text.substr(0, eq);
  const std::string value = eq == std::string::npos ? "" : text.substr(eq + 1);
  try {
    if (key == "pinch") {
      const auto comma = value.find(',');
      if (comma == std::string::npos) {
        throw ConfigError("pinch needs two values: pinch=m,M");
      }
      std::size_t used = 0;
      const double m = std::stod(value.substr(0, comma), &used);
      const std::string rest = value.substr(comma + 1);
      std::size_t used2 = 0;
      const double M = std::stod(rest, &used2);
      if (used != comma || used2 != rest.size()) {
        throw ConfigError("malformed pinch '" + value + "'");
      }
      into.weight_pinch = {m, M};
      return;
    }
    if (key == "sigma") {
      std::size_t used = 0;
      into.sigma = std::stod(value, &used);
      if (used != value.size()) {
        throw ConfigError("malformed sigma '" + value + "'");
      }
      return;
    }
  } catch (const std::logic_error&) {
    throw ConfigError("malformed assumption '" + text + "'");
  }
  throw ConfigError("unknown assumption '" + text + "' (pinch=m,M, finite-range, sigma=X)");
}

std::vector<std::size_t> parse_cutoffs(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    std::size_t x = 0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), x);
    if (ec != std::errc() || ptr != piece.data() + piece.size() || piece.empty()) {
      throw ConfigError("malformed cutoff '" + piece + "'");
    }
    out.push_back(x);
  }
  return out;
}

std::string load_spec_source(const std::string& source, bool* was_file) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec)) {
    std::ifstream in(source);
    std::stringstream buf;
    buf << in.rdbuf();
    if (was_file != nullptr) {
      *was_file = true;
    }
    return buf.str();
  }
  if (was_file != nullptr) {
    *was_file = false;
  }
  return source;
}

std::size_t budget_from_env() {
  if (const char* env = std::getenv(kBudgetEnv)) {
    const std::string s(env);
    std::size_t b = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), b);
    if (ec == std::errc() && ptr == s.data() + s.size() && b > 0) {
      return b;
    }
    throw ConfigError(std::string(kBudgetEnv) + " must be a positive integer");
  }
  return kDefaultVertexBudget;
}

json without_timing(json report) {
  if (report.is_object()) {
    report.erase("timing_ms");
    for (auto& [key, value] : report.items()) {
      value = without_timing(value);
    }
  } else if (report.is_array()) {
    for (auto& value : report) {
      value = without_timing(value);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// analyze

namespace {

json analysis_json(const RunConfig& config, const Spec& spec) {
  const Problem p = instantiate(spec);
  const AnalysisOptions opts{config.budget, config.threads, config.tolerance};
  const std::size_t depth = config.depth;
  const std::size_t preimage_depth = config.resolved_preimage_depth();

  const SigmaEstimate sig = sigma(p.phi, p.mu, depth, opts);
  const Verdict bounded =
      boundedness_verdict(p.phi, p.mu, depth, config.blowup_threshold, config.assumptions, opts);
  const WeightRange range = weight_uniformity(p.mu, p.tree, depth, opts);
  const CompactnessReport compact = compactness_verdict(p.phi, p.mu, depth, config.cutoffs,
                                                        config.tolerance, config.assumptions, opts);
  const IsometryReport iso = isometry_report(p.phi, p.mu, depth, preimage_depth, opts);
  const ContractionCheck contraction =
      contraction_check(p.phi, p.mu, depth, config.samples, config.seed, opts);

  json trace = json::array();
  for (const auto& t : sig.ratio_trace) {
    trace.push_back({{"depth", t.depth}, {"value", t.value}, {"witness", t.witness.to_string()}});
  }
  json tail = json::array();
  for (const auto& row : compact.tail.rows) {
    tail.push_back({{"cutoff", row.cutoff},
                    {"value", optional_json(row.value)},
                    {"witness", vertex_json(row.witness)}});
  }

  return {
      {"sigma",
       {{"depth", sig.depth},
        {"value", sig.value},
        {"witness", sig.witness.to_string()},
        {"ratio_trace", trace}}},
      {"operator_norm",
       {{"lower_bound", sig.value},
        {"note", "||C_phi|| = sigma; the window sup is a lower bound"}}},
      {"boundedness", verdict_json(bounded)},
      {"weight_uniformity",
       {{"min", range.min},
        {"min_witness", range.min_witness.to_string()},
        {"max", range.max},
        {"max_witness", range.max_witness.to_string()}}},
      {"essential_tail", {{"depth", compact.tail.depth}, {"rows", tail}}},
      {"compactness",
       {{"verdict", verdict_json(compact.verdict)},
        {"trend", std::string(to_string(compact.trend))},
        {"image_count", compact.image_count},
        {"max_image_length", compact.max_image_length}}},
      {"isometry",
       {{"depth", iso.depth},
        {"preimage_depth", iso.preimage_depth},
        {"ratio_identically_one", check_json(iso.ratio_identically_one)},
        {"sup_ratio_one", check_json(iso.sup_ratio_one)},
        {"surjective", check_json(iso.surjective)},
        {"injective", check_json(iso.injective)},
        {"chi_norm", check_json(iso.chi_norm)},
        {"unit_weight", iso.unit_weight},
        {"verdict", verdict_json(iso.verdict)}}},
      {"contraction",
       {{"samples", contraction.samples},
        {"seed", contraction.seed},
        {"max_ratio", contraction.max_ratio},
        {"violations", contraction.violations}}},
  };
}

std::string analyze_text(const json& r) {
  std::ostringstream out;
  const json& c = r["checks"];
  out << "spec\n";
  out << "  tree: " << r["spec"]["tree"].get<std::string>() << "\n";
  out << "  mu:   " << r["spec"]["mu"].get<std::string>() << "\n";
  out << "  phi:  " << r["spec"]["phi"].get<std::string>() << "\n";
  out << "window depth " << r["config"]["depth"] << ", preimage depth "
      << r["config"]["preimage_depth"] << "\n\n";
  out << "sigma (lower bound for ||C_phi||): " << num(c["sigma"]["value"].get<double>()) << " at "
      << c["sigma"]["witness"].get<std::string>() << "\n";
  auto verdict_line = [&](const char* label, const json& v) {
    out << label << v["status"].get<std::string>();
    if (!v["witness"].is_null()) {
      out << " (witness " << v["witness"].get<std::string>() << ")";
    }
    out << "\n    " << v["note"].get<std::string>() << "\n";
  };
  verdict_line("boundedness: ", c["boundedness"]);
  out << "weight range on window: [" << num(c["weight_uniformity"]["min"].get<double>()) << ", "
      << num(c["weight_uniformity"]["max"].get<double>()) << "]\n";
  out << "essential tail E_D(N):\n";
  for (const auto& row : c["essential_tail"]["rows"]) {
    out << "  N=" << row["cutoff"] << "  ";
    if (row["value"].is_null()) {
      out << "absent\n";
    } else {
      out << num(row["value"].get<double>()) << " at " << row["witness"].get<std::string>()
          << "\n";
    }
  }
  verdict_line("compactness: ", c["compactness"]["verdict"]);
  verdict_line("isometry: ", c["isometry"]["verdict"]);
  out << "contraction check: " << c["contraction"]["violations"] << " violation(s) in "
      << c["contraction"]["samples"] << " samples (seed " << c["contraction"]["seed"] << ")\n";
  return out.str();
}

std::string analyze_csv(const json& r) {
  std::ostringstream out;
  out << "table,key,value,witness\n";
  for (const auto& t : r["checks"]["sigma"]["ratio_trace"]) {
    out << "ratio_trace," << t["depth"] << "," << num(t["value"].get<double>()) << ","
        << t["witness"].get<std::string>() << "\n";
  }
  for (const auto& row : r["checks"]["essential_tail"]["rows"]) {
    out << "essential_tail," << row["cutoff"] << ","
        << (row["value"].is_null() ? std::string() : num(row["value"].get<double>())) << ","
        << (row["witness"].is_null() ? std::string() : row["witness"].get<std::string>()) << "\n";
  }
  return out.str();
}

std::string render(Format f, const json& report, std::string (*text)(const json&),
                   std::string (*csv)(const json&)) {
  switch (f) {
    case Format::Json:
      return report.dump(2) + "\n";
    case Format::Csv:
      return csv(report);
    case Format::Text:
      return text(report);
  }
  return {};
}

}  // namespace

CommandResult cmd_analyze(const RunConfig& config) {
  return guarded([&]() -> CommandResult {
    const auto start = Clock::now();
    config.validate();
    const Spec spec = parse_spec(config.spec_text);
    json report = {
        {"schema", kReportSchema},
        {"command", "analyze"},
        {"config",
         {{"spec_source", config.spec_source},
          {"depth", config.depth},
          {"preimage_depth", config.resolved_preimage_depth()},
          {"cutoffs", config.cutoffs},
          {"tolerance", config.tolerance},
          {"blowup_threshold", config.blowup_threshold},
          {"budget", config.budget},
          {"seed", config.seed},
          {"samples", config.samples},
          {"format", format_name(config.format)}}},
        {"spec",
         {{"tree", dsl::print(spec.tree)}, {"mu", dsl::print(spec.mu)}, {"phi", dsl::print(spec.phi)}}},
        {"assumptions", assumptions_json(config.assumptions)},
        {"checks", analysis_json(config, spec)},
    };
    if (config.timing) {
      report["timing_ms"] = elapsed_ms(start);
    }
    CommandResult result;
    result.output = render(config.format, report, analyze_text, analyze_csv);
    result.report = std::move(report);
    return result;
  });
}

// ---------------------------------------------------------------------------
// oracle

namespace {

std::string oracle_text(const json& r) {
  std::ostringstream out;
  if (r.contains("instance")) {
    const json& inst = r["instance"];
    out << "instance seed " << inst["seed"] << ", depth " << inst["depth"] << ", "
        << inst["vertices"].size() << " vertices\n";
    out << "vertex,weight,phi\n";
    for (const auto& row : inst["vertices"]) {
      out << row["vertex"].get<std::string>() << "," << num(row["weight"].get<double>()) << ","
          << row["phi"].get<std::string>() << "\n";
    }
    out << "sigma " << num(inst["sigma"].get<double>()) << ", brute "
        << num(inst["brute"].get<double>()) << "\n";
    return out.str();
  }
  out << "oracle campaign: " << r["rows"].size() << " instances, seed " << r["config"]["seed"]
      << ", tolerance " << num(r["config"]["tolerance"].get<double>()) << "\n";
  out << "max |sigma - brute| = " << num(r["max_diff"].get<double>()) << ", failures "
      << r["failures"] << "\n";
  return out.str();
}

std::string oracle_csv(const json& r) {
  std::ostringstream out;
  if (r.contains("instance")) {
    out << "vertex,weight,phi\n";
    for (const auto& row : r["instance"]["vertices"]) {
      out << row["vertex"].get<std::string>() << "," << num(row["weight"].get<double>()) << ","
          << row["phi"].get<std::string>() << "\n";
    }
    return out.str();
  }
  out << "seed,depth,branching,sigma,brute,diff\n";
  for (const auto& row : r["rows"]) {
    out << row["seed"] << "," << row["depth"] << "," << row["branching"] << ","
        << num(row["sigma"].get<double>()) << "," << num(row["brute"].get<double>()) << ","
        << num(row["diff"].get<double>()) << "\n";
  }
  return out.str();
}

}  // namespace

CommandResult cmd_oracle(const OracleConfig& config) {
  return guarded([&]() -> CommandResult {
    const auto start = Clock::now();
    if (config.tolerance < 0.0 || std::isnan(config.tolerance)) {
      throw ConfigError("tolerance must be non-negative");
    }
    if (config.samples == 0) {
      throw ConfigError("at least one random sample is required");
    }
    json report = {{"schema", kReportSchema},
                   {"command", "oracle"},
                   {"config",
                    {{"instances", config.instances},
                     {"max_depth", config.max_depth},
                     {"seed", config.seed},
                     {"samples", config.samples},
                     {"tolerance", config.tolerance},
                     {"format", format_name(config.format)}}}};
    int exit_code = kExitOk;
    if (config.echo) {
      const FiniteInstance inst = FiniteInstance::random(config.seed, config.max_depth);
      json rows = json::array();
      for (std::size_t i = 0; i < inst.size(); ++i) {
        rows.push_back({{"vertex", inst.vertices()[i].to_string()},
                        {"weight", inst.weights()[i]},
                        {"phi", inst.vertices()[inst.map()[i]].to_string()}});
      }
      const double sig = sigma(inst.self_map(), inst.weight(), inst.depth()).value;
      const double brute = brute_operator_norm(inst, config.samples, config.seed).value;
      const double diff = std::fabs(sig - brute);
      report["instance"] = {{"seed", config.seed},
                            {"depth", inst.depth()},
                            {"branching", inst.max_branching()},
                            {"vertices", rows},
                            {"sigma", sig},
                            {"brute", brute},
                            {"diff", diff}};
      report["failures"] = diff <= config.tolerance ? 0 : 1;
      report["max_diff"] = diff;
      report["rows"] = json::array();
      exit_code = diff <= config.tolerance ? kExitOk : kExitCheckFailed;
    } else {
      const Campaign c = run_campaign(config.instances, config.max_depth, config.seed,
                                      config.samples, config.tolerance, config.threads);
      json rows = json::array();
      for (const auto& row : c.rows) {
        rows.push_back({{"seed", row.seed},
                        {"depth", row.depth},
                        {"branching", row.branching},
                        {"vertices", row.vertices},
                        {"sigma", row.sigma},
                        {"brute", row.brute},
                        {"diff", row.diff}});
      }
      report["rows"] = rows;
      report["failures"] = c.failures;
      report["max_diff"] = c.max_diff;
      exit_code = c.failures == 0 ? kExitOk : kExitCheckFailed;
    }
    if (config.timing) {
      report["timing_ms"] = elapsed_ms(start);
    }
    CommandResult result;
    result.exit_code = exit_code;
    result.output = render(config.format, report, oracle_text, oracle_csv);
    result.report = std::move(report);
    return result;
  });
}

// ---------------------------------------------------------------------------
// examples

namespace {

struct Assertions {
  json items = json::array();
  bool all_pass = true;

  void check(const std::string& name, bool pass, const std::string& expected,
             const std::string& observed) {
    items.push_back(
        {{"name", name}, {"pass", pass}, {"expected", expected}, {"observed", observed}});
    all_pass = all_pass && pass;
  }
};

json example_entry(const std::string& name, const std::vector<std::string>& specs,
                   Assertions& a) {
  json spec_texts = json::array();
  for (const auto& s : specs) {
    spec_texts.push_back(to_text(parse_spec(builtin_spec(s).text)));
  }
  return {{"name", name}, {"specs", spec_texts}, {"assertions", a.items}, {"pass", a.all_pass}};
}

json run_unbounded(const AnalysisOptions& opts) {
  const Problem p = instantiate(parse_spec(builtin_spec("unbounded-3").text));
  Assertions a;
  const SigmaEstimate s = sigma(p.phi, p.mu, 10, opts);
  a.check("sigma over |v| <= 10 equals 2^10/10", s.value == 1024.0 / 10.0, num(102.4), num(s.value));
  a.check("sigma witness has length 10", s.witness.length() == 10, "10",
          std::to_string(s.witness.length()));
  bool trace_ok = true;
  for (std::size_t d = 4; d <= 10; ++d) {
    trace_ok = trace_ok && s.ratio_trace[d].value == std::ldexp(1.0, static_cast<int>(d)) / d;
  }
  a.check("running sup equals 2^d/d for d = 4..10", trace_ok, "2^d/d", trace_ok ? "2^d/d" : "mismatch");
  const Verdict b = boundedness_verdict(p.phi, p.mu, 10, 100.0, {}, opts);
  a.check("boundedness at threshold 100", b.status == Status::FailsWitnessed, "FailsWitnessed",
          std::string(to_string(b.status)));
  const WeightRange r = weight_uniformity(p.mu, p.tree, 10, opts);
  a.check("weight is bounded (max 2 at the root)", r.max == 2.0 && r.max_witness.is_root(), "2 at o",
          num(r.max) + " at " + r.max_witness.to_string());
  return example_entry("unbounded-3", {"unbounded-3"}, a);
}

json run_parity(const AnalysisOptions& opts) {
  const Problem p = instantiate(parse_spec(builtin_spec("compact-parity-4").text));
  Assertions a;
  const EssentialTail t = essential_tail(p.phi, p.mu, 40, {4, 16, 100}, opts);
  const double expected[] = {0.5, 0.25, 0.1};
  const std::size_t expected_depth[] = {2, 4, 10};
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& row = t.rows[k];
    const bool ok = row.value && *row.value == expected[k] && row.witness &&
                    row.witness->length() == expected_depth[k];
    a.check("E_40(" + std::to_string(row.cutoff) + ")", ok,
            num(expected[k]) + " at length " + std::to_string(expected_depth[k]),
            row.value ? num(*row.value) + " at length " + std::to_string(row.witness->length())
                      : "absent");
  }
  // Odd lengths: the ratio is exactly 1.
  bool odd_ok = true;
  std::size_t odd_count = 0;
  for (const auto& v : enumerate(Truncation{p.tree, 40, opts.budget})) {
    if (v.length() % 2 == 1) {
      ++odd_count;
      odd_ok = odd_ok && p.mu(v) / p.mu(p.phi(v)) == 1.0;
    }
  }
  a.check("ratio is 1 at every odd-length vertex", odd_ok, "1",
          odd_ok ? "1 on " + std::to_string(odd_count) + " vertices" : "mismatch");
  const CompactnessReport c = compactness_verdict(p.phi, p.mu, 40, {4, 16, 64, 256}, 1e-9, {}, opts);
  a.check("tail decreases across {4,16,64,256}", c.trend == TailTrend::Decreasing, "decreasing",
          std::string(to_string(c.trend)));
  std::vector<VertexId> targets;
  for (std::size_t n = 2; n <= 20; n += 2) {
    targets.push_back(VertexId::spine(n * n));
  }
  const auto trace = compactness_sequence_test(p.phi, p.mu, targets, 20, opts);
  bool seq_ok = trace.size() == 10;
  for (std::size_t k = 0; k < trace.size() && seq_ok; ++k) {
    seq_ok = trace[k] == 1.0 / static_cast<double>(2 * (k + 1)) && (k == 0 || trace[k] < trace[k - 1]);
  }
  a.check("||C_phi f_n|| = 1/|v_n| for |v_n| = 2..20", seq_ok, "1/2 ... 1/20",
          seq_ok ? "1/2 ... 1/20" : "mismatch");
  return example_entry("compact-parity-4", {"compact-parity-4"}, a);
}

json run_parent(const AnalysisOptions& opts) {
  const Problem p = instantiate(parse_spec(builtin_spec("parent-5").text));
  Assertions a;
  const VertexId w = VertexId::parse("0.1.0.1.1");
  const double chi_norm = mu_norm(TreeFunction::chi(w), p.mu, Truncation{p.tree, 6, opts.budget}).value;
  const double composed =
      mu_norm(compose(p.phi, TreeFunction::chi(w)), p.mu, Truncation{p.tree, 6, opts.budget}, opts.threads)
          .value;
  a.check("||chi_w||_mu at |w| = 5", chi_norm == 5.0, "5", num(chi_norm));
  a.check("||C_phi chi_w||_mu at |w| = 5", composed == 6.0, "6", num(composed));
  const IsometryReport iso = isometry_report(p.phi, p.mu, 12, 16, opts);
  a.check("phi surjective up to depth 12", iso.surjective.holds, "true",
          iso.surjective.holds ? "true" : "false");
  a.check("isometry verdict", iso.verdict.status == Status::FailsWitnessed, "FailsWitnessed",
          std::string(to_string(iso.verdict.status)));
  a.check("window sup of the ratio is the literal value 2 (at length 2)",
          iso.sup_ratio_one.value == 2.0 && iso.sup_ratio_one.witness->length() == 2, "2",
          num(*iso.sup_ratio_one.value));
  return example_entry("parent-5", {"parent-5"}, a);
}

json run_doubling(const AnalysisOptions& opts) {
  Assertions a;
  {
    const Problem p = instantiate(parse_spec(builtin_spec("doubling-final-unit").text));
    const IsometryReport iso = isometry_report(p.phi, p.mu, 12, 16, opts);
    a.check("mu = 1: isometry", iso.verdict.status == Status::HoldsWitnessed, "HoldsWitnessed",
            std::string(to_string(iso.verdict.status)));
    const SigmaEstimate s = sigma(p.phi, p.mu, 12, opts);
    a.check("mu = 1: ||C_phi|| = 1", s.value == 1.0, "1", num(s.value));
  }
  {
    const Problem p = instantiate(parse_spec(builtin_spec("doubling-final").text));
    const IsometryReport iso = isometry_report(p.phi, p.mu, 12, 16, opts);
    a.check("mu = 2^|v|: isometry", iso.verdict.status == Status::FailsWitnessed, "FailsWitnessed",
            std::string(to_string(iso.verdict.status)));
    const bool witness_ok = iso.verdict.witness && iso.verdict.witness->length() == 1 &&
                            iso.verdict.value && *iso.verdict.value == 2.0;
    a.check("ratio-2 witness at length 1", witness_ok, "2 at length 1",
            iso.verdict.witness ? num(iso.verdict.value.value_or(0.0)) + " at " +
                                      iso.verdict.witness->to_string()
                                : "none");
    const SigmaEstimate s = sigma(p.phi, p.mu, 12, opts);
    bool ratios_ok = true;
    for (const auto& v : enumerate(Truncation{p.tree, 12, opts.budget})) {
      ratios_ok = ratios_ok && p.mu(v) / p.mu(p.phi(v)) == (v.is_root() ? 1.0 : 2.0);
    }
    a.check("ratio is 2 off the root and 1 at the root", ratios_ok && s.value == 2.0, "2 / 1",
            ratios_ok ? "2 / 1" : "mismatch");
  }
  return example_entry("doubling-final", {"doubling-final-unit", "doubling-final"}, a);
}

std::string examples_text(const json& r) {
  std::ostringstream out;
  for (const auto& e : r["examples"]) {
    out << (e["pass"].get<bool>() ? "PASS " : "FAIL ") << e["name"].get<std::string>() << "\n";
    for (const auto& item : e["assertions"]) {
      out << "  " << (item["pass"].get<bool>() ? "ok   " : "FAIL ") << item["name"].get<std::string>()
          << ": " << item["observed"].get<std::string>();
      if (!item["pass"].get<bool>()) {
        out << " (expected " << item["expected"].get<std::string>() << ")";
      }
      out << "\n";
    }
  }
  out << r["passed"] << "/" << r["examples"].size() << " examples passed\n";
  return out.str();
}

std::string examples_csv(const json& r) {
  std::ostringstream out;
  out << "example,assertion,pass,expected,observed\n";
  for (const auto& e : r["examples"]) {
    for (const auto& item : e["assertions"]) {
      out << e["name"].get<std::string>() << ",\"" << item["name"].get<std::string>() << "\","
          << (item["pass"].get<bool>() ? "true" : "false") << ",\""
          << item["expected"].get<std::string>() << "\",\"" << item["observed"].get<std::string>()
          << "\"\n";
    }
  }
  return out.str();
}

}  // namespace

CommandResult cmd_examples(const ExamplesConfig& config) {
  return guarded([&]() -> CommandResult {
    const auto start = Clock::now();
    const auto& names = example_names();
    if (std::find(names.begin(), names.end(), config.which) == names.end()) {
      throw ConfigError("unknown example '" + config.which +
                        "' (unbounded-3, compact-parity-4, parent-5, doubling-final, all)");
    }
    if (config.write_specs_dir) {
      std::filesystem::create_directories(*config.write_specs_dir);
      for (const auto& s : builtin_specs()) {
        std::ofstream out(std::filesystem::path(*config.write_specs_dir) / (s.name + ".spec"));
        out << s.text;
        if (!out) {
          throw ConfigError("cannot write spec files to " + *config.write_specs_dir);
        }
      }
    }
    const AnalysisOptions opts{kDefaultVertexBudget, config.threads, kTolerance};
    json examples = json::array();
    const bool all = config.which == "all";
    if (all || config.which == "unbounded-3") {
      examples.push_back(run_unbounded(opts));
    }
    if (all || config.which == "compact-parity-4") {
      examples.push_back(run_parity(opts));
    }
    if (all || config.which == "parent-5") {
      examples.push_back(run_parent(opts));
    }
    if (all || config.which == "doubling-final") {
      examples.push_back(run_doubling(opts));
    }
    std::size_t passed = 0;
    for (const auto& e : examples) {
      passed += e["pass"].get<bool>() ? 1 : 0;
    }
    json report = {{"schema", kReportSchema},
                   {"command", "examples"},
                   {"config", {{"which", config.which}, {"format", format_name(config.format)}}},
                   {"examples", examples},
                   {"passed", passed}};
    if (config.timing) {
      report["timing_ms"] = elapsed_ms(start);
    }
    CommandResult result;
    result.exit_code = passed == examples.size() ? kExitOk : kExitCheckFailed;
    result.output = render(config.format, report, examples_text, examples_csv);
    result.report = std::move(report);
    return result;
  });
}

}  // namespace treecomp::cli
