// Command-line front end: validate, analyze, and path inspection over
// .viscat spec files. Exit codes are a stable contract: 0 pass, 1 validation
// failure (or disagreeing paths), 2 spec errors, 3 I/O errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "viscat/viscat.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitSpecError = 2;
constexpr int kExitIoError = 3;

struct Options {
  std::vector<std::string> inputs;
  std::string format = "text";
  std::string mode = "set-level";
  std::size_t max_len = 0;
  std::string out;
  std::string from;
  std::string to;
};

viscat::ReportFormat format_of(const Options& opts) {
  return opts.format == "machine" ? viscat::ReportFormat::machine
                                  : viscat::ReportFormat::text;
}

viscat::StatusMode mode_of(const Options& opts) {
  return opts.mode == "categorical" ? viscat::StatusMode::categorical
                                    : viscat::StatusMode::set_level;
}

std::optional<viscat::SpecSource> read_input(const std::string& path) {
  viscat::SpecSource src;
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    src.text = buffer.str();
    src.origin = "<stdin>";
    return src;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << path << ": error: cannot open file\n";
    return std::nullopt;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  src.text = buffer.str();
  src.origin = path;
  return src;
}

void print_diagnostics(const viscat::ParseResult& result, const std::string& origin) {
  for (const auto& d : result.diagnostics) {
    std::cerr << origin << ':' << d.line << ':' << d.column << ": "
              << (d.severity == viscat::Severity::error ? "error" : "warning")
              << ": " << d.message << '\n';
  }
}

int run_validate(const std::string& path, const Options& opts, std::string& sink) {
  auto src = read_input(path);
  if (!src) return kExitIoError;
  viscat::ParseResult parsed = viscat::parse_spec(*src);
  print_diagnostics(parsed, src->origin);
  if (!parsed.ok()) return kExitSpecError;

  viscat::ReportBundle bundle;
  if (parsed.process) {
    bundle = viscat::bundle_validation(
        viscat::validate_process(*parsed.process, opts.max_len));
    bundle.intension = viscat::intension_status(*parsed.process);
  } else {
    viscat::DiagramValidation dv = viscat::validate_diagram(*parsed.diagram, opts.max_len);
    bundle.axioms = dv.axioms;
    bundle.commutativity = dv.commutativity;
  }
  sink += viscat::emit_report(bundle, format_of(opts));
  return bundle.pass() ? kExitPass : kExitValidationFailure;
}

int run_analyze(const std::string& path, const Options& opts, std::string& sink) {
  auto src = read_input(path);
  if (!src) return kExitIoError;
  viscat::ParseResult parsed = viscat::parse_spec(*src);
  print_diagnostics(parsed, src->origin);
  if (!parsed.ok()) return kExitSpecError;
  if (!parsed.process) {
    std::cerr << src->origin
              << ":1:1: error: analyze requires role bindings (a bare diagram has "
                 "no render morphism to profile)\n";
    return kExitSpecError;
  }
  const viscat::ProcessModel& model = *parsed.process;

  viscat::ReportBundle bundle;
  bundle.render_profile = viscat::profile_render(model);
  bundle.render_status = viscat::categorical_status(
      model.core(), *model.morphism_id(viscat::MorphismRole::render), mode_of(opts));
  bundle.intension = viscat::intension_status(model);
  if (model.intension_bound()) {
    bundle.questions = viscat::answerable_questions(model);
    if (model.derivations()) {
      bundle.chart_junk = viscat::detect_chart_junk(model);
    } else {
      bundle.chart_junk_skipped = "no derive block declared";
    }
  }
  sink += viscat::emit_report(bundle, format_of(opts));
  return kExitPass;  // analysis findings are informational
}

int run_paths(const std::string& path, const Options& opts, std::string& sink) {
  auto src = read_input(path);
  if (!src) return kExitIoError;
  viscat::ParseResult parsed = viscat::parse_spec(*src);
  print_diagnostics(parsed, src->origin);
  if (!parsed.ok()) return kExitSpecError;
  const viscat::Diagram& diagram =
      parsed.process ? parsed.process->core() : *parsed.diagram;

  std::size_t max_len = opts.max_len;
  if (max_len == 0) max_len = std::max<std::size_t>(diagram.morphisms().size(), 1);

  viscat::PathsReport report;
  report.from = opts.from;
  report.to = opts.to;
  try {
    report.paths = viscat::enumerate_paths(diagram, opts.from, opts.to, max_len);
  } catch (const viscat::Error& e) {
    std::cerr << src->origin << ": error: " << e.what() << '\n';
    return kExitSpecError;
  }
  for (std::size_t i = 0; i < report.paths.size(); ++i) {
    for (std::size_t j = i + 1; j < report.paths.size(); ++j) {
      viscat::FiniteMap left = viscat::compose_path(diagram, report.paths[i]);
      viscat::FiniteMap right = viscat::compose_path(diagram, report.paths[j]);
      if (auto witness = viscat::first_disagreement(left, right)) {
        report.agree = false;
        report.failures.push_back(viscat::CommuteFailure{
            "", report.paths[i], report.paths[j], *witness, left.apply(*witness),
            right.apply(*witness)});
      }
    }
  }
  sink += viscat::emit_paths_report(report, format_of(opts));
  return report.agree ? kExitPass : kExitValidationFailure;
}

int flush_output(const std::string& text, const Options& opts) {
  if (opts.out.empty()) {
    std::cout << text;
    return kExitPass;
  }
  std::ofstream out(opts.out, std::ios::binary);
  if (!out) {
    std::cerr << opts.out << ": error: cannot open for writing\n";
    return kExitIoError;
  }
  out << text;
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"viscat — finite-category engine for visualization process specs"};
  app.require_subcommand(1);

  Options opts;
  auto add_common = [&](CLI::App* cmd, bool multiple_inputs) {
    if (multiple_inputs) {
      cmd->add_option("files", opts.inputs, "input spec files ('-' for stdin)")
          ->required();
    } else {
      cmd->add_option("file", opts.inputs, "input spec file ('-' for stdin)")
          ->required()
          ->expected(1);
    }
    cmd->add_option("--format", opts.format, "report format")
        ->check(CLI::IsMember({"text", "machine"}))
        ->capture_default_str();
    cmd->add_option("--max-len", opts.max_len,
                    "path length bound (default: number of morphisms)");
    cmd->add_option("--out", opts.out, "write the report to a file");
  };

  CLI::App* validate = app.add_subcommand(
      "validate", "check category axioms, commutativity, and extremal objects");
  add_common(validate, true);
  validate->add_option("--mode", opts.mode, "morphism status mode")
      ->check(CLI::IsMember({"set-level", "categorical"}));

  CLI::App* analyze = app.add_subcommand(
      "analyze", "derive the render profile, chart junk, intension, and questions");
  add_common(analyze, true);
  analyze->add_option("--mode", opts.mode, "morphism status mode")
      ->check(CLI::IsMember({"set-level", "categorical"}));

  CLI::App* paths = app.add_subcommand(
      "paths", "list parallel paths between two objects and compare compositions");
  add_common(paths, false);
  paths->add_option("--mode", opts.mode, "morphism status mode")
      ->check(CLI::IsMember({"set-level", "categorical"}));
  paths->add_option("--from", opts.from, "source object id")->required();
  paths->add_option("--to", opts.to, "target object id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitSpecError;
  }

  std::string sink;
  int worst = kExitPass;
  for (const auto& input : opts.inputs) {
    int code = kExitPass;
    if (validate->parsed()) {
      code = run_validate(input, opts, sink);
    } else if (analyze->parsed()) {
      code = run_analyze(input, opts, sink);
    } else {
      code = run_paths(input, opts, sink);
    }
    worst = std::max(worst, code);
  }
  int io = flush_output(sink, opts);
  return std::max(worst, io);
}
