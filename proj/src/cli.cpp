#include "vtask/cli.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <iterator>
#include <sstream>

#include "vtask/baseline_translator.hpp"
#include "vtask/corpus_io.hpp"
#include "vtask/error.hpp"
#include "vtask/evalkit.hpp"
#include "vtask/meta_gen.hpp"
#include "vtask/report.hpp"
#include "vtask/template_engine.hpp"
#include "vtask/text_util.hpp"
#include "vtask/verilog_lint.hpp"

namespace vtask {

namespace {

namespace fs = std::filesystem;

struct Globals {
  std::uint64_t seed = 42;
  fs::path out_dir = ".";
  fs::path data_dir;
  int jobs = 1;
};

struct Io {
  std::ostream& out;
  std::ostream& err;
  std::istream& in;
};

std::set<Split> parse_splits(const std::string& text) {
  std::set<Split> out;
  for (std::string_view item : split(text, ',')) {
    const auto s = parse_split(trim(item));
    if (!s) throw Error(ErrorKind::config, "unknown split '" + std::string(trim(item)) + "'");
    out.insert(*s);
  }
  if (out.empty()) throw Error(ErrorKind::config, "empty split list");
  return out;
}

std::string read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return read_text_file(path);
}

fs::path or_default(const std::string& given, const fs::path& fallback) {
  return given.empty() ? fallback : fs::path(given);
}

Registry load_registry(const Globals& g) { return Registry::load_directory(g.data_dir / "templates"); }
Lexicon load_lexicon(const Globals& g) { return Lexicon::load(g.data_dir / "lexicon.txt"); }

void require_clean_registry(const Registry& registry, const Lexicon& lexicon) {
  const auto problems = validate_registry(registry, lexicon);
  if (problems.empty()) return;
  std::string message = "template registry is invalid:";
  for (const auto& p : problems) message += " [" + p.template_id + "] " + p.message + ";";
  throw Error(ErrorKind::config, message);
}

int exit_for(ErrorKind kind) { return kind == ErrorKind::internal ? kExitInternal : kExitData; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream* in) {
  Io io{out, err, in ? *in : std::cin};
  Globals g;
  std::string data_dir;

  CLI::App app{"Generate, translate and score English-to-Verilog task corpora.", "vtask"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  app.set_config("--config", "", "Read option values from a TOML/INI file (keys are long option names)");
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "Directory for written artifacts")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads (0: all cores); results do not depend on it")
      ->capture_default_str();
  app.add_option("--data-dir", data_dir, "Directory holding templates/ and lexicon.txt");

  // generate
  auto* generate = app.add_subcommand("generate", "Sample tasks and write corpus.jsonl + manifest.json");
  std::string plan_path;
  generate->add_option("--plan", plan_path, "Plan file: '<template id> = <count>' per line")->required();
  GenConfig gen;
  for (const GenConfigField& f : gen_config_fields()) {
    const std::string flag = "--" + std::string(f.name);
    if (f.int_member) {
      generate->add_option(flag, gen.*f.int_member, "Sampling knob")->capture_default_str();
    } else {
      generate->add_option(flag, gen.*f.real_member, "Sampling probability")->capture_default_str();
    }
  }

  // split
  auto* split_cmd = app.add_subcommand("split", "Tag trained-template pairs as train or validate");
  std::string split_corpus_dir;
  double train_fraction = kDefaultTrainFraction;
  split_cmd->add_option("--corpus", split_corpus_dir, "Corpus directory (default: --out-dir)");
  split_cmd->add_option("--train-fraction", train_fraction, "Fraction of each template kept for training")
      ->capture_default_str();

  // export
  auto* export_cmd = app.add_subcommand("export", "Write training text for the language model");
  std::string export_corpus_dir, export_output, export_splits = "train";
  std::string sentinel{kDefaultSentinel};
  bool shuffle = false;
  export_cmd->add_option("--corpus", export_corpus_dir, "Corpus directory (default: --out-dir)");
  export_cmd->add_option("--splits", export_splits, "Comma-separated splits to export")->capture_default_str();
  export_cmd->add_option("--sentinel", sentinel, "End-of-result marker line")->capture_default_str();
  export_cmd->add_flag("--shuffle", shuffle, "Shuffle records with --seed");
  export_cmd->add_option("--output", export_output, "Output file (default: <out-dir>/train.txt)");

  // lint
  auto* lint_cmd = app.add_subcommand("lint", "Check Verilog snippets against the supported subset");
  std::vector<std::string> lint_files;
  lint_cmd->add_option("files", lint_files, "Snippet files ('-' for stdin)")->required();

  // translate
  auto* translate_cmd = app.add_subcommand("translate", "Rule-based English to Verilog translation");
  std::string translate_input, translate_corpus_dir, translate_output;
  std::string translate_splits = "validate,held_out";
  bool held_out = false;
  translate_cmd->add_option("input", translate_input, "English task file ('-' or absent: stdin)");
  translate_cmd->add_flag("--held-out", held_out, "Also match held-out templates");
  translate_cmd->add_option("--corpus", translate_corpus_dir, "Batch mode: translate a corpus directory");
  translate_cmd->add_option("--splits", translate_splits, "Batch mode: splits to translate")
      ->capture_default_str();
  translate_cmd->add_option("--output", translate_output,
                            "Batch mode output (default: <out-dir>/predictions.jsonl)");

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score predictions against a corpus");
  std::string eval_corpus_dir, eval_predictions, eval_output, eval_splits = "validate,held_out";
  std::vector<std::string> eval_templates;
  evaluate_cmd->add_option("--corpus", eval_corpus_dir, "Corpus directory (default: --out-dir)");
  evaluate_cmd->add_option("--predictions", eval_predictions,
                           "Predictions JSONL (default: <out-dir>/predictions.jsonl)");
  evaluate_cmd->add_option("--splits", eval_splits, "Splits to score")->capture_default_str();
  evaluate_cmd->add_option("--templates", eval_templates, "Restrict to these template ids")->delimiter(',');
  evaluate_cmd->add_option("--output", eval_output, "Records file (default: <out-dir>/records.jsonl)");

  // report
  auto* report_cmd = app.add_subcommand("report", "Render result tables from a records file");
  std::string report_records, report_output, report_format = "text";
  report_cmd->add_option("--records", report_records, "Records file (default: <out-dir>/records.jsonl)");
  report_cmd->add_option("--format", report_format, "text | csv | pipe")
      ->check(CLI::IsMember({"text", "csv", "pipe"}))
      ->capture_default_str();
  report_cmd->add_option("--output", report_output, "Output file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io.out, io.err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    g.data_dir = data_dir.empty() ? default_data_dir() : fs::path(data_dir);

    if (*generate) {
      const Plan plan = Plan::load(plan_path);
      const Registry registry = load_registry(g);
      const Lexicon lexicon = load_lexicon(g);
      require_clean_registry(registry, lexicon);
      const Corpus corpus = generate_corpus(registry, lexicon, plan, g.seed, gen, g.jobs);
      save_corpus(corpus, g.out_dir);
      io.out << "generated " << corpus.pairs.size() << " pairs for " << plan.entries.size()
             << " plan entries into " << g.out_dir.string() << "\n";
    } else if (*split_cmd) {
      Corpus corpus = load_corpus(or_default(split_corpus_dir, g.out_dir));
      split_corpus(corpus, train_fraction, g.seed);
      save_corpus(corpus, g.out_dir);
      for (const auto& [name, n] : corpus.manifest.split_counts) io.out << name << " " << n << "\n";
    } else if (*export_cmd) {
      const Corpus corpus = load_corpus(or_default(export_corpus_dir, g.out_dir));
      ExportOptions options;
      options.splits = parse_splits(export_splits);
      options.sentinel = sentinel;
      if (shuffle) options.shuffle_seed = g.seed;
      const fs::path target = or_default(export_output, g.out_dir / "train.txt");
      write_text_file(target, export_training_text(corpus, options));
      io.out << "wrote " << target.string() << "\n";
    } else if (*lint_cmd) {
      bool clean = true;
      for (const std::string& file : lint_files) {
        const std::string source = read_input(file, io.in);
        const auto issues = lint(source);
        const std::string name = file == "-" ? "<stdin>" : file;
        for (const LintIssue& issue : issues) {
          io.out << name << ":" << issue.line << ":" << issue.column << ": "
                 << to_string(issue.kind) << ": " << issue.message << "\n";
        }
        if (issues.empty()) io.out << name << ": ok\n";
        clean = clean && issues.empty();
      }
      return clean ? kExitOk : kExitData;
    } else if (*translate_cmd) {
      const Registry registry = load_registry(g);
      const Lexicon lexicon = load_lexicon(g);
      TranslatorOptions options;
      options.include_held_out = held_out;
      const BaselineTranslator translator(registry, lexicon, options);
      if (!translate_corpus_dir.empty()) {
        const Corpus corpus = load_corpus(translate_corpus_dir);
        const Predictions predictions =
            translate_corpus(translator, corpus, parse_splits(translate_splits), g.jobs);
        const fs::path target = or_default(translate_output, g.out_dir / "predictions.jsonl");
        write_text_file(target, predictions_to_jsonl(predictions));
        io.out << "wrote " << predictions.size() << " predictions to " << target.string() << "\n";
      } else {
        io.out << translator.translate(read_input(translate_input, io.in)) << "\n";
      }
    } else if (*evaluate_cmd) {
      const Corpus corpus = load_corpus(or_default(eval_corpus_dir, g.out_dir));
      const Predictions predictions =
          load_predictions(or_default(eval_predictions, g.out_dir / "predictions.jsonl"));
      EvalFilter filter;
      filter.splits = parse_splits(eval_splits);
      filter.templates.insert(eval_templates.begin(), eval_templates.end());
      const EvalResult result = evaluate_run(predictions, corpus, filter, g.jobs);
      const fs::path target = or_default(eval_output, g.out_dir / "records.jsonl");
      write_text_file(target, records_to_jsonl(result));
      io.out << "Overall: " << format_percent(result.overall.percent()) << "% ("
             << result.overall.correct << "/" << result.overall.validated << ")\n";
    } else if (*report_cmd) {
      const fs::path source = or_default(report_records, g.out_dir / "records.jsonl");
      const EvalResult result = parse_records(read_text_file(source), source.string());
      const std::string text = render_report(result, *parse_report_format(report_format));
      if (report_output.empty()) {
        io.out << text;
      } else {
        write_text_file(report_output, text);
      }
    }
  } catch (const Error& e) {
    io.err << "error:" << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    io.err << "error:internal: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace vtask
