#include "heh/cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "heh/eval/session.hpp"

namespace heh::cli {

namespace {

constexpr std::uint64_t kReplFuel = 10'000'000;

struct Options {
  std::string file;
  std::string expression;
  std::string probe;
  bool strict_arrays = false;
  bool no_memo = false;
  std::optional<std::uint64_t> fuel;
  std::size_t force_print = 10;
  bool no_prelude = false;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs `source` and prints its result (or the probed element). Errors are
// reported on `err`; returns false if one occurred.
bool execute(eval::Session& session, const std::string& source, const Options& opt,
             std::ostream& out, std::ostream& err) {
  try {
    const auto h = session.run(source);
    if (!opt.probe.empty()) {
      if (!h) {
        err << "error: --probe needs a program with a result expression\n";
        return false;
      }
      out << eval::render_scalar(session.probe(*h, std::string_view(opt.probe))) << '\n';
    } else if (h) {
      out << session.render(*h, opt.force_print) << '\n';
    }
    return true;
  } catch (const Error& e) {
    err << e.render() << '\n';
  }
  return false;
}

int bracket_depth(const std::string& text) {
  int depth = 0;
  bool comment = false;
  for (char c : text) {
    if (c == '\n') comment = false;
    if (comment) continue;
    switch (c) {
      case ';': comment = true; break;
      case '(': case '[': case '{': ++depth; break;
      case ')': case ']': case '}': --depth; break;
      default: break;
    }
  }
  return depth;
}

void print_config(eval::Session& s, const Options& opt, std::ostream& out) {
  const eval::EvalConfig& c = s.config();
  out << "strict-arrays: " << (c.strict_finite_imaps ? "on" : "off") << '\n'
      << "memoize: " << (c.memoize ? "on" : "off") << '\n'
      << "fuel: " << (c.fuel ? std::to_string(*c.fuel) : "unlimited") << '\n'
      << "force-print: " << opt.force_print << '\n'
      << "max-depth: " << c.max_depth << '\n';
}

int repl(eval::Session& session, const Options& opt, std::istream& in, std::ostream& out,
         std::ostream& err) {
  std::string line;
  for (;;) {
    out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    if (line.starts_with(":")) {
      std::istringstream words(line);
      std::string cmd, arg;
      words >> cmd;
      std::getline(words >> std::ws, arg);
      if (cmd == ":quit" || cmd == ":q") break;
      if (cmd == ":config") {
        print_config(session, opt, out);
      } else if (cmd == ":load") {
        if (const auto text = read_file(arg))
          execute(session, *text, opt, out, err);
        else
          err << "error: cannot read '" << arg << "'\n";
      } else if (cmd == ":help") {
        out << ":load FILE   run a program in this session\n"
               ":config      show evaluation settings\n"
               ":quit        leave\n";
      } else {
        err << "error: unknown command " << cmd << " (try :help)\n";
      }
      continue;
    }
    std::string chunk = line;
    // Keep reading while brackets are open; continuation lines are indented
    // so they do not start a new top-level item.
    while (bracket_depth(chunk) > 0) {
      out << ". " << std::flush;
      if (!std::getline(in, line)) break;
      chunk += "\n  " + line;
    }
    if (chunk.find_first_not_of(" \t\r") == std::string::npos) continue;
    execute(session, chunk, opt, out, err);
  }
  out << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interpreter for a functional array language with transfinite shapes", "heh"};
  Options opt;
  std::uint64_t fuel = 0;
  app.add_option("file", opt.file, "Program to run; starts a REPL when omitted");
  app.add_option("-e,--eval", opt.expression, "Evaluate a program given on the command line");
  app.add_option("--probe", opt.probe, "Print only the element of the result at this index, e.g. \"[3,3]\"");
  app.add_flag("--strict-arrays", opt.strict_arrays, "Evaluate finite imaps eagerly");
  app.add_flag("--no-memo", opt.no_memo, "Do not memoize computed imap or filter elements");
  auto* fuel_opt = app.add_option("--fuel", fuel, "Maximum rule applications per evaluation");
  app.add_option("--force-print", opt.force_print,
                 "Elements shown per segment when printing lazy values")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--no-prelude", opt.no_prelude, "Do not load the standard definitions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (!opt.file.empty() && !opt.expression.empty()) {
    err << "error: give either a file or -e, not both\n";
    return 2;
  }
  const bool interactive = opt.file.empty() && opt.expression.empty();
  if (interactive && !opt.probe.empty()) {
    err << "error: --probe needs a file or -e\n";
    return 2;
  }
  if (*fuel_opt) opt.fuel = fuel;
  else if (interactive) opt.fuel = kReplFuel;

  std::string source = opt.expression;
  if (!opt.file.empty()) {
    const auto text = read_file(opt.file);
    if (!text) {
      err << "error: cannot read '" << opt.file << "'\n";
      return 2;
    }
    source = *text;
  }

  eval::EvalConfig config;
  config.strict_finite_imaps = opt.strict_arrays;
  config.memoize = !opt.no_memo;
  config.fuel = opt.fuel;
  try {
    eval::Session session(config, !opt.no_prelude);
    if (interactive) return repl(session, opt, in, out, err);
    return execute(session, source, opt, out, err) ? 0 : 1;
  } catch (const Error& e) {
    err << e.render() << '\n';
    return 1;
  }
}

}  // namespace heh::cli
