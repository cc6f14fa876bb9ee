// Command-line driver: resolution invariants, centers, cobordant blow-ups,
// principalization / embedded-resolution loops, toric checks, and the
// property-suite verifier.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cobord/checks.hpp"
#include "cobord/driver.hpp"
#include "cobord/errors.hpp"

namespace {

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw cobord::Error("cannot open " + path, cobord::ExitCode::ParseError);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw cobord::Error("malformed JSON in " + path + ": " + e.what(),
                        cobord::ExitCode::ParseError);
  }
  return j;
}

// Flat human-readable rendering for --format text.
void render_text(const nlohmann::json& v, const std::string& prefix,
                 std::ostream& os) {
  if (v.is_object()) {
    for (const auto& [k, val] : v.items()) {
      std::string key = prefix.empty() ? k : prefix + "." + k;
      render_text(val, key, os);
    }
  } else if (v.is_array()) {
    bool scalars = true;
    for (const auto& e : v) scalars = scalars && !e.is_structured();
    if (scalars) {
      os << prefix << ": ";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
      }
      os << "\n";
    } else {
      for (std::size_t i = 0; i < v.size(); ++i)
        render_text(v[i], prefix + "[" + std::to_string(i) + "]", os);
    }
  } else {
    os << prefix << ": "
       << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

void emit(const nlohmann::json& payload, const std::string& trace_path,
          const std::string& format) {
  std::ostringstream os;
  if (format == "text")
    render_text(payload, "", os);
  else
    os << payload.dump(2);
  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    out << os.str() << "\n";
  }
  std::cout << os.str() << "\n";
}

std::uint64_t seed_from_env() {
  const char* s = std::getenv("COBORDANT_SEED");
  if (!s) return 0xC0B0DA17ULL;
  return std::strtoull(s, nullptr, 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cobord: weighted-center resolution invariants and cobordant blow-ups"};
  app.require_subcommand(1);

  std::string input_path, plan_path, trace_path, format = "json";
  long precision = 0;
  int max_steps = 0;
  std::string divisor_policy;
  bool with_timings = false;

  auto add_common = [&](CLI::App* cmd, bool with_plan) {
    cmd->add_option("--input", input_path, "Problem JSON file")->required();
    if (with_plan) cmd->add_option("--plan", plan_path, "Plan JSON file");
    cmd->add_option("--precision", precision, "jet precision override");
    cmd->add_option("--max-steps", max_steps, "blow-up step limit");
    cmd->add_option("--divisors", divisor_policy,
                    "divisor transform policy: total|strict");
    cmd->add_option("--trace", trace_path, "also write the output here");
    cmd->add_option("--format", format, "json|text");
  };

  CLI::App* inv = app.add_subcommand("inv", "invariant at the marked point");
  add_common(inv, false);
  CLI::App* center = app.add_subcommand("center", "maximal admissible center");
  add_common(center, false);
  CLI::App* blowup = app.add_subcommand("blowup", "single blow-up chart and transforms");
  add_common(blowup, true);
  CLI::App* resolve = app.add_subcommand("resolve", "run the resolution loop");
  add_common(resolve, true);
  resolve->add_flag("--timings", with_timings,
                    "include per-step wall times (breaks byte-identical traces)");
  CLI::App* toric = app.add_subcommand("toric", "star subdivision / cobordism cone");
  toric->add_option("--input", input_path, "fan+vector JSON file")->required();
  toric->add_option("--trace", trace_path, "also write the output here");
  toric->add_option("--format", format, "json|text");
  CLI::App* verify = app.add_subcommand("verify", "run the property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (app.got_subcommand(verify)) {
      auto results = cobord::run_property_checks(seed_from_env());
      bool ok = true;
      for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.pass && !r.detail.empty()) std::cout << "  [" << r.detail << "]";
        std::cout << "\n";
        ok = ok && r.pass;
      }
      std::cout << (ok ? "verify: all properties hold\n"
                       : "verify: FAILURES above\n");
      return ok ? 0 : 5;
    }

    if (app.got_subcommand(toric)) {
      emit(cobord::run_toric(load_json(input_path)), trace_path, format);
      return 0;
    }

    cobord::Problem problem = cobord::Problem::from_json(load_json(input_path));
    if (precision > 0) problem.options.precision = precision;
    if (max_steps > 0) problem.options.max_steps = max_steps;
    if (!divisor_policy.empty()) {
      if (divisor_policy == "total")
        problem.options.policy = cobord::DivisorPolicy::Total;
      else if (divisor_policy == "strict")
        problem.options.policy = cobord::DivisorPolicy::Strict;
      else
        throw cobord::Error("--divisors must be total or strict",
                            cobord::ExitCode::ParseError);
    }

    if (app.got_subcommand(inv) || app.got_subcommand(center)) {
      emit(cobord::run_inv(problem), trace_path, format);
      return 0;
    }
    if (app.got_subcommand(blowup)) {
      cobord::Plan plan;
      if (!plan_path.empty()) plan = cobord::Plan::from_json(load_json(plan_path));
      emit(cobord::run_blowup(problem, plan), trace_path, format);
      return 0;
    }
    if (app.got_subcommand(resolve)) {
      cobord::Plan plan;
      if (!plan_path.empty()) plan = cobord::Plan::from_json(load_json(plan_path));
      cobord::Trace trace = problem.mode == cobord::Mode::Embedded
                                ? cobord::run_embedded(problem, plan)
                                : cobord::run_principalize(problem, plan);
      emit(trace.to_json(with_timings), trace_path, format);
      return 0;
    }
  } catch (const cobord::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
