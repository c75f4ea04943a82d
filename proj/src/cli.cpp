#include "glide/cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "glide/document.hpp"
#include "glide/errors.hpp"
#include "glide/grrp.hpp"
#include "glide/mrap.hpp"
#include "glide/service.hpp"
#include "glide/verification.hpp"

namespace glide {

namespace {

constexpr int kOk = 0;
constexpr int kSolverFailure = 1;
constexpr int kUsage = 2;

std::vector<double> parse_numbers(const std::string& text, const std::string& field) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    std::string item = text.substr(pos, end - pos);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v))
      throw validation_error(field, "expected comma-separated numbers, got '" + text + "'");
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

struct Input {
  std::string scenario;
  std::string preset;
  std::string out;
};

Scenario load_input(const Input& in) {
  if (in.scenario.empty() == in.preset.empty()) throw validation_error("scenario", "give exactly one of --scenario or --preset");
  if (!in.preset.empty()) return make_preset(in.preset);
  return load_scenario_file(in.scenario).scenario;
}

void emit(const ResultDocument& doc, const std::string& path, std::ostream& out) {
  if (path.empty()) out << serialize_document(doc) << '\n';
  else write_document(path, doc);
}

std::string percent(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << 100.0 * v << '%';
  return s.str();
}

int benchmark(const std::string& suite, std::ostream& out) {
  const auto outcomes = run_suite(suite);
  bool all = true;
  for (const auto& o : outcomes) {
    out << std::left << std::setw(30) << o.name;
    if (o.report) {
      out << " max_rel=" << percent(o.report->max_rel) << " mean_rel=" << percent(o.report->mean_rel)
          << " max_abs=" << std::setprecision(4) << o.report->max_abs
          << " conservative=" << (o.report->conservative ? "yes" : "no") << " bound=" << percent(o.bound)
          << " included=" << o.report->included;
    } else {
      out << " no oracle";
    }
    out << " runtime=" << std::setprecision(3) << o.meta.runtime_s << "s " << (o.passed ? "PASS" : "FAIL") << '\n';
    for (const auto& f : o.failures) out << "    " << f << '\n';
    all = all && o.passed;
  }
  out << outcomes.size() << " benchmarks, " << (all ? "all passed" : "failures present") << '\n';
  return all ? kOk : kSolverFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Glide reachability and minimal return altitude solvers", "glidereach"};
  app.require_subcommand(1);

  Input solve_in;
  std::string variant = "auto";
  auto* grr = app.add_subcommand("solve-grr", "Gliding reachable region from a start position and altitude");
  grr->add_option("--scenario", solve_in.scenario, "Scenario JSON file");
  grr->add_option("--preset", solve_in.preset, "Built-in scenario name");
  grr->add_option("--out", solve_in.out, "Result document path (stdout when omitted)");
  grr->add_option("--variant", variant, "auto, fmm or oum")->check(CLI::IsMember({"auto", "fmm", "oum"}));

  Input mra_in;
  auto* mra = app.add_subcommand("solve-mra", "Minimal return altitude toward an airfield");
  mra->add_option("--scenario", mra_in.scenario, "Scenario JSON file");
  mra->add_option("--preset", mra_in.preset, "Built-in scenario name");
  mra->add_option("--out", mra_in.out, "Result document path (stdout when omitted)");

  Input trace_in;
  std::string target;
  auto* trace = app.add_subcommand("trace", "Solve and trace the path to (GRRP) or from (MRAP) a target");
  trace->add_option("--scenario", trace_in.scenario, "Scenario JSON file");
  trace->add_option("--preset", trace_in.preset, "Built-in scenario name");
  trace->add_option("--target", target, "X,Y")->required();
  trace->add_option("--out", trace_in.out, "Result document path (stdout when omitted)");

  std::string suite = "all";
  auto* bench = app.add_subcommand("benchmark", "Run a benchmark suite against its oracles");
  bench->add_option("--suite", suite, "appendix-g, terrain, all, or one benchmark name");

  Input contour_in;
  std::string result_path, levels_text;
  int count = 10;
  auto* contours = app.add_subcommand("contours", "Contour lines of a solved field");
  contours->add_option("--scenario", contour_in.scenario, "Scenario JSON file");
  contours->add_option("--preset", contour_in.preset, "Built-in scenario name");
  contours->add_option("--result", result_path, "Existing result document instead of solving");
  contours->add_option("--levels", levels_text, "Comma-separated levels");
  contours->add_option("--count", count, "Evenly spaced levels when --levels is omitted")->check(CLI::PositiveNumber);
  contours->add_option("--out", contour_in.out, "Result document path (stdout when omitted)");

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
  serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", host, "Bind address");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (app.get_subcommands().empty()) err << app.help();
    return kUsage;
  }

  try {
    if (grr->parsed()) {
      const Scenario s = load_input(solve_in);
      if (!s.is_grrp()) throw validation_error("problem.type", "solve-grr needs a grrp problem; use solve-mra");
      const GrrpVariant v = variant == "fmm" ? GrrpVariant::fmm : variant == "oum" ? GrrpVariant::oum : GrrpVariant::automatic;
      emit(make_document(s, solve_grrp(s, v)), solve_in.out, out);
    } else if (mra->parsed()) {
      const Scenario s = load_input(mra_in);
      if (s.is_grrp()) throw validation_error("problem.type", "solve-mra needs an mrap problem; use solve-grr");
      emit(make_document(s, solve_mrap(s)), mra_in.out, out);
    } else if (trace->parsed()) {
      const std::vector<double> t = parse_numbers(target, "target");
      if (t.size() != 2) throw validation_error("target", "expected X,Y");
      const Scenario s = load_input(trace_in);
      const ResultDocument doc = solve_document(s, {}, Vec2{t[0], t[1]});
      emit(doc, trace_in.out, out);
      if (doc.trajectories.front().termination != Termination::reached_origin) {
        err << "trace stopped early: " << to_string(doc.trajectories.front().termination) << '\n';
        return kSolverFailure;
      }
    } else if (bench->parsed()) {
      return benchmark(suite, out);
    } else if (contours->parsed()) {
      ResultDocument doc;
      if (!result_path.empty()) {
        if (!contour_in.scenario.empty() || !contour_in.preset.empty())
          throw validation_error("result", "--result cannot be combined with --scenario or --preset");
        std::ifstream in(result_path, std::ios::binary);
        if (!in) throw Error(ErrorCode::io, "cannot read '" + result_path + "'", "result");
        std::stringstream buf;
        buf << in.rdbuf();
        doc = parse_document(buf.str());
      } else {
        doc = solve_document(load_input(contour_in));
      }
      const std::vector<double> levels =
          levels_text.empty() ? default_contour_levels(doc.field, count) : parse_numbers(levels_text, "levels");
      doc.contours = extract_contours(doc.grid, doc.field, levels);
      emit(doc, contour_in.out, out);
    } else if (serve_cmd->parsed()) {
      serve(host, port);
    }
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return e.code() == ErrorCode::infeasible ? kSolverFailure : kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kOk;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace glide
