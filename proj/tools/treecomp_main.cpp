#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "treecomp/cli/builtin_examples.hpp"
#include "treecomp/cli/commands.hpp"
#include "treecomp/errors.hpp"

namespace {

using namespace treecomp::cli;

int emit(const CommandResult& r, const std::string& out_path) {
  if (!r.error.empty()) {
    std::cerr << "treecomp: " << r.error << "\n";
    return r.exit_code;
  }
  if (out_path.empty()) {
    std::cout << r.output;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << r.output;
    if (!out) {
      std::cerr << "treecomp: cannot write " << out_path << "\n";
      return kExitSpecError;
    }
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composition operators on weighted sup-norm spaces over rooted trees"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string out_path;
  std::size_t threads = 0;
  bool no_timing = false;

  RunConfig run;
  std::string spec_arg;
  std::string cutoffs_arg;
  std::vector<std::string> assume_args;
  std::size_t preimage_depth = 0;
  auto* analyze = app.add_subcommand("analyze", "Analyze a tree/weight/map spec");
  analyze->add_option("--spec", spec_arg, "Spec file path or inline spec text")->required();
  analyze->add_option("--depth", run.depth, "Window depth D")->capture_default_str();
  auto* pre_opt =
      analyze->add_option("--preimage-depth", preimage_depth, "Preimage search depth M (default D+4)");
  analyze->add_option("--cutoffs", cutoffs_arg, "Comma-separated essential-tail cutoffs");
  analyze->add_option("--tolerance", run.tolerance, "Equality tolerance")->capture_default_str();
  analyze->add_option("--threshold", run.blowup_threshold, "Blow-up threshold for boundedness")
      ->capture_default_str();
  analyze->add_option("--assume", assume_args, "pinch=m,M | finite-range | sigma=X (repeatable)");
  analyze->add_option("--seed", run.seed, "Seed for sampled checks")->capture_default_str();
  analyze->add_option("--samples", run.samples, "Sampled functions for the contraction check")
      ->capture_default_str();

  OracleConfig oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force norm campaign on random finite instances");
  oracle_cmd->add_option("--instances", oracle.instances)->capture_default_str();
  oracle_cmd->add_option("--max-depth", oracle.max_depth)->capture_default_str();
  oracle_cmd->add_option("--seed", oracle.seed)->capture_default_str();
  oracle_cmd->add_option("--samples", oracle.samples, "Random functions per instance")
      ->capture_default_str();
  oracle_cmd->add_option("--tolerance", oracle.tolerance)->capture_default_str();
  oracle_cmd->add_flag("--echo", oracle.echo, "Print the weight/map tables of the --seed instance");

  ExamplesConfig examples;
  std::string write_specs;
  auto* examples_cmd = app.add_subcommand("examples", "Reproduce the built-in worked examples");
  examples_cmd->add_option("--which", examples.which)
      ->check(CLI::IsMember(example_names()))
      ->capture_default_str();
  examples_cmd->add_option("--write-specs", write_specs, "Directory to write the built-in spec files");

  for (auto* sub : {analyze, oracle_cmd, examples_cmd}) {
    sub->add_option("--format", format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", out_path, "Write the report here instead of stdout");
    sub->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)")
        ->capture_default_str();
    sub->add_flag("--no-timing", no_timing, "Omit timing_ms from reports");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitSpecError;
  }

  try {
    const Format fmt = parse_format(format);
    if (*analyze) {
      bool was_file = false;
      run.spec_text = load_spec_source(spec_arg, &was_file);
      run.spec_source = was_file ? spec_arg : "inline";
      if (*pre_opt) {
        run.preimage_depth = preimage_depth;
      }
      if (!cutoffs_arg.empty()) {
        run.cutoffs = parse_cutoffs(cutoffs_arg);
      }
      for (const auto& a : assume_args) {
        parse_assumption(a, run.assumptions);
      }
      run.budget = budget_from_env();
      run.format = fmt;
      run.threads = threads;
      run.timing = !no_timing;
      return emit(cmd_analyze(run), out_path);
    }
    if (*oracle_cmd) {
      oracle.format = fmt;
      oracle.threads = threads;
      oracle.timing = !no_timing;
      return emit(cmd_oracle(oracle), out_path);
    }
    examples.format = fmt;
    examples.threads = threads;
    examples.timing = !no_timing;
    if (!write_specs.empty()) {
      examples.write_specs_dir = write_specs;
    }
    return emit(cmd_examples(examples), out_path);
  } catch (const treecomp::Error& e) {
    std::cerr << "treecomp: " << e.what() << "\n";
    return kExitSpecError;
  }
}
