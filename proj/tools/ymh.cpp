// ymh: vacuum analysis of Yang-Mills-Higgs models.
//
// Exit codes: 0 every enabled check passed, 1 a check failed or a numerical
// stage could not be certified, 2 the input was unusable.

#include "ymh/cli/model_file.hpp"
#include "ymh/cli/pipeline.hpp"
#include "ymh/cli/report.hpp"
#include "ymh/error.hpp"
#include "ymh/models.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace ymh;
using namespace ymh::cli;

int emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InputError(out + ": cannot open output file");
  f << text;
  return 0;
}

RunOptions options(std::optional<std::uint64_t> seed, std::optional<int> trials, bool parallel,
                   const std::vector<std::string>& only) {
  RunOptions o;
  o.seed = seed;
  o.trials = trials;
  o.parallel = parallel;
  o.only.insert(only.begin(), only.end());
  return o;
}

std::string render(const RunResult& r, const std::string& format) {
  return format == "markdown" ? render_markdown(r.report) : render_json(r.report);
}

int run_check(const RunOptions& o) {
  std::vector<CheckRow> rows;
  const bool holonomy = o.only.empty() || o.only.contains("holonomy");
  for (const auto& name : preset_names()) {
    ModelSpec m = parse_model(preset_document(name));
    m.trials = 100;
    RunOptions analysis = o;
    if (!analysis.only.empty()) analysis.only.erase("holonomy");
    if (o.only.empty() || !analysis.only.empty()) {
      const auto r = run_analysis(m, analysis);
      rows.insert(rows.end(), r.checks.begin(), r.checks.end());
    }
    if (!holonomy) continue;
    for (const char* kind : {"path", "cycle"}) {
      auto doc = preset_document(name);
      doc["name"] = name + "/" + kind;
      doc["holonomy"] = {{"kind", kind}, {"length", 5}, {"group", "stabilizer"}, {"random_connections", 5}};
      ModelSpec hm = parse_model(doc);
      hm.trials = 100;
      const auto r = run_holonomy(hm, o);
      rows.insert(rows.end(), r.checks.begin(), r.checks.end());
    }
  }
  std::cout << render_check_table(rows);
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& c) { return c.pass; }) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vacuum structure, mass spectra and holonomy of Yang-Mills-Higgs models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("ymh ") + kToolVersion);

  std::string model, format = "json", out;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  bool parallel = false;
  std::vector<std::string> only;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Random seed (overrides the model file)");
    sub->add_option("--trials", trials, "Random trials per property check")->check(CLI::PositiveNumber);
    sub->add_flag("--parallel", parallel, "Spread trial sweeps across threads (results unchanged)");
  };
  const auto sections = CLI::IsMember(section_names());

  auto* analyze = app.add_subcommand("analyze", "Analyze a model file and print a report");
  analyze->add_option("model", model, "Model file (JSON)")->required();
  analyze->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "markdown"}));
  analyze->add_option("--out", out, "Write the report here instead of stdout");
  analyze->add_option("--only", only, "Run only these check sections")->check(sections);
  add_common(analyze);

  auto* check = app.add_subcommand("check", "Run the invariant suite over all shipped presets");
  check->add_option("--only", only, "Run only these check sections")->check(sections);
  add_common(check);

  auto* holo = app.add_subcommand("holonomy", "Classify the connections in a model's holonomy section");
  holo->add_option("model", model, "Model file (JSON)")->required();
  holo->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "markdown"}));
  holo->add_option("--out", out, "Write the report here instead of stdout");
  add_common(holo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const RunOptions o = options(seed, trials, parallel, only);
    if (*analyze) {
      const auto r = run_analysis(load_model_file(model), o);
      emit(render(r, format), out);
      return r.passed ? 0 : 1;
    }
    if (*holo) {
      const auto r = run_holonomy(load_model_file(model), o);
      emit(render(r, format), out);
      return r.passed ? 0 : 1;
    }
    return run_check(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure in stage '" << e.stage() << "': " << e.what() << "\n";
    return 1;
  }
}
