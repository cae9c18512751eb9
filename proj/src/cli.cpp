#include "nl2bt/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "nl2bt/action_registry.hpp"
#include "nl2bt/bt_interpreter.hpp"
#include "nl2bt/dataset.hpp"
#include "nl2bt/evaluation.hpp"
#include "nl2bt/nl_frontend.hpp"
#include "nl2bt/xml_emitter.hpp"

namespace nl2bt::cli {
namespace {

namespace fs = std::filesystem;

class IoError : public Error {
 public:
  using Error::Error;
};

// Paths left empty fall back to the built-in registry, lexicon and templates.
struct CliConfig {
  std::string lexicon_path;
  std::string registry_path;
  bool strict = false;
  std::uint64_t seed = 7;
  std::string out_path;
};

std::string read_file(const std::string& path, std::istream& in) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << content) || !file.flush()) {
    throw IoError("cannot write '" + path.string() + "'");
  }
}

class Session {
 public:
  Session(std::istream& in, std::ostream& out, std::ostream& err)
      : in_(in), out_(out), err_(err) {}

  CliConfig config;

  const ActionRegistry& registry() {
    if (!registry_) {
      registry_ = config.registry_path.empty()
                      ? builtin_registry()
                      : load_registry(read_file(config.registry_path, in_));
      for (const Diagnostic& d : registry_->load_diagnostics()) {
        err_ << config.registry_path << ": " << d.message << "\n";
      }
    }
    return *registry_;
  }

  const Lexicon& lexicon() {
    if (!lexicon_) {
      lexicon_ = config.lexicon_path.empty()
                     ? default_lexicon(registry())
                     : load_lexicon(read_file(config.lexicon_path, in_), registry());
    }
    return *lexicon_;
  }

  ValidationMode mode() const {
    return config.strict ? ValidationMode::Strict : ValidationMode::Lenient;
  }

  // validate -> emit -> write. Returns the exit code.
  int finish(const SequenceNode& tree, const std::string& out_path) {
    std::vector<Diagnostic> diagnostics = validate(tree, registry(), mode());
    for (const Diagnostic& d : diagnostics) err_ << to_string(d) << "\n";
    if (has_errors(diagnostics)) return kInvalid;
    std::string xml = emit(tree, registry());
    if (out_path == "-") {
      out_ << xml;
    } else {
      write_file(out_path, xml);
      out_ << render(tree) << "\n";
    }
    return kOk;
  }

  std::istream& in() { return in_; }
  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

 private:
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  std::optional<ActionRegistry> registry_;
  std::optional<Lexicon> lexicon_;
};

int guarded(Session& session, const std::function<int()>& body) {
  std::ostream& err = session.err();
  try {
    return body();
  } catch (const TranslateError& e) {
    err << "error: " << e.what() << "\n";
    return kNoVerbMatch;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kSyntax;
  } catch (const XmlError& e) {
    err << "error: " << e.what() << "\n";
    return kSyntax;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kSyntax;
  } catch (const EmitError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ConfigParseError& e) {
    err << "error: config " << e.what() << "\n";
    return kConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
}

int cmd_compile(Session& s, const std::string& utterance) {
  SequenceNode tree = translate(Utterance(utterance), s.lexicon(), s.registry());
  return s.finish(tree, s.config.out_path);
}

int cmd_parse(Session& s, const std::string& form) {
  return s.finish(parse_logical_form(form), s.config.out_path);
}

int cmd_generate(Session& s, std::size_t n_train, std::size_t n_test,
                 const std::string& templates_path) {
  const ActionRegistry& registry = s.registry();
  TemplateSet templates = templates_path.empty()
                              ? default_templates(registry)
                              : load_templates(read_file(templates_path, s.in()), registry);
  auto [train, test] = generate(n_train, n_test, s.config.seed, registry, templates);
  fs::path dir = s.config.out_path.empty() ? fs::path(".") : fs::path(s.config.out_path);
  std::error_code ec;
  fs::create_directories(dir, ec);
  for (const Corpus* corpus : {&train, &test}) {
    const char* name = corpus->split == Split::Train ? "train.tsv" : "test.tsv";
    write_file(dir / name, write_tsv(*corpus));
    VocabStats stats = vocab_stats(*corpus);
    s.out() << (dir / name).string() << "\tpairs=" << corpus->pairs.size()
            << "\tinput_vocab=" << stats.input << "\toutput_vocab=" << stats.output << "\n";
  }
  return kOk;
}

int cmd_eval(Session& s, const std::string& corpus_path, double threshold, unsigned threads) {
  Corpus corpus = read_tsv(read_file(corpus_path, s.in()), Split::Test);
  const Lexicon& lexicon = s.lexicon();
  const ActionRegistry& registry = s.registry();
  Frontend frontend = [&](std::string_view text) {
    return translate(Utterance(std::string(text)), lexicon, registry);
  };
  EvalReport report = evaluate(frontend, corpus, threads);
  s.out() << format_report_table(report);
  if (!s.config.out_path.empty()) write_file(s.config.out_path, format_report_lines(report));
  return report.accuracy >= threshold ? kOk : kFailed;
}

int cmd_run(Session& s, const std::string& xml_path) {
  MockPlant plant;
  RunResult result = run(std::string_view(read_file(xml_path, s.in())), plant);
  for (const TraceEntry& entry : result.trace) {
    s.out() << format_trace_line(entry) << "\n";
    if (entry.unknown_action) {
      s.err() << "warning: step " << entry.step << " '" << entry.action
              << "' has no handler; ran as a no-op\n";
    }
  }
  s.err() << "mission " << to_string(result.status) << "\n";
  return result.status == Status::Success ? kOk : kFailed;
}

int cmd_repl(Session& s) {
  fs::path dir = s.config.out_path.empty() ? fs::path(".") : fs::path(s.config.out_path);
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::string line;
  std::size_t count = 0;
  while (std::getline(s.in(), line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    fs::path target = dir / ("mission_" + std::to_string(++count) + ".xml");
    int code = guarded(s, [&] {
      SequenceNode tree = translate(Utterance(line), s.lexicon(), s.registry());
      std::vector<Diagnostic> diagnostics = validate(tree, s.registry(), s.mode());
      for (const Diagnostic& d : diagnostics) s.err() << to_string(d) << "\n";
      if (has_errors(diagnostics)) return int{kInvalid};
      write_file(target, emit(tree, s.registry()));
      s.out() << render(tree) << "\t" << target.string() << "\n";
      return int{kOk};
    });
    if (code != kOk) --count;
    s.out().flush();
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Session session(in, out, err);
  CliConfig& config = session.config;

  CLI::App app{"Compile robot commands into behavior-tree missions", "nl2bt"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--lexicon", config.lexicon_path, "Lexicon file (default: built-in)");
  app.add_option("--registry", config.registry_path, "Extra action definitions");
  app.add_flag("--strict", config.strict, "Reject unknown actions and params");

  auto* compile = app.add_subcommand("compile", "Utterance -> logical form + XML");
  std::string utterance;
  auto* utterance_opt = compile->add_option("utterance", utterance, "Command text (default: stdin)");
  std::string compile_out = "mission.xml";
  compile->add_option("--out", compile_out, "XML output path, '-' for stdout")
      ->capture_default_str();

  auto* parse = app.add_subcommand("parse", "Logical form -> XML");
  std::string form;
  parse->add_option("form", form, "Logical form text")->required();
  std::string parse_out = "mission.xml";
  parse->add_option("--out", parse_out, "XML output path, '-' for stdout")
      ->capture_default_str();

  auto* gen = app.add_subcommand("generate", "Write train.tsv and test.tsv");
  std::size_t n_train = 1000;
  std::size_t n_test = 250;
  std::string templates_path;
  gen->add_option("--train", n_train, "Training pairs")->capture_default_str();
  gen->add_option("--test", n_test, "Test pairs")->capture_default_str();
  gen->add_option("--seed", config.seed, "Random seed")->capture_default_str();
  gen->add_option("--templates", templates_path, "Template file (default: built-in)");
  std::string gen_out = ".";
  gen->add_option("--out", gen_out, "Output directory")->capture_default_str();

  auto* eval = app.add_subcommand("eval", "Exact-match accuracy of the lexicon frontend");
  std::string corpus_path;
  double threshold = 1.0;
  unsigned threads = 1;
  eval->add_option("--corpus", corpus_path, "Corpus TSV")->required();
  eval->add_option("--threshold", threshold, "Minimum accuracy for exit 0")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  eval->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  std::string eval_out;
  eval->add_option("--out", eval_out, "Write per-pair report lines here");

  auto* runc = app.add_subcommand("run", "Execute an XML mission on the mock plant");
  std::string xml_path;
  runc->add_option("mission", xml_path, "Mission XML, '-' for stdin")->required();

  auto* repl = app.add_subcommand("repl", "Compile utterances line by line");
  std::string repl_out = ".";
  repl->add_option("--out", repl_out, "Directory for mission_N.xml")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  for (auto [sub, path] : {std::pair{compile, &compile_out}, std::pair{parse, &parse_out},
                           std::pair{gen, &gen_out}, std::pair{eval, &eval_out},
                           std::pair{repl, &repl_out}}) {
    if (*sub) config.out_path = *path;
  }

  return guarded(session, [&]() -> int {
    if (*compile) {
      if (utterance_opt->count() == 0) {
        utterance = std::string(std::istreambuf_iterator<char>(in), {});
      }
      return cmd_compile(session, utterance);
    }
    if (*parse) return cmd_parse(session, form);
    if (*gen) return cmd_generate(session, n_train, n_test, templates_path);
    if (*eval) return cmd_eval(session, corpus_path, threshold, threads);
    if (*runc) return cmd_run(session, xml_path);
    if (*repl) return cmd_repl(session);
    return kFailed;
  });
}

}  // namespace nl2bt::cli
