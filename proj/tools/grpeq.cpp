// grpeq: command-line front end over grpeq::cli::run.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "grpeq/cli.hpp"
#include "grpeq/error.hpp"

namespace {

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace

int main(int argc, char** argv) {
  using namespace grpeq;
  CLI::App app{"Equations over groups: classification, rewriting, unique products, finite solutions"};
  std::string command, input, format = "text";
  std::vector<std::string> args;
  cli::Options opt;
  std::string names;
  for (const auto& c : cli::commands()) names += (names.empty() ? "" : ", ") + c;
  app.add_option("command", command, "one of: " + names)->required();
  app.add_option("args", args, "names of declarations, or a group expression for search-nonup");
  app.add_option("-i,--input", input, "script file, or - for standard input");
  auto* radius = app.add_option("--radius", opt.radius, "ball radius for search-nonup");
  auto* max_size = app.add_option("--max-size", opt.max_size, "largest subset for search-nonup");
  auto* max_len = app.add_option("--max-len", opt.max_len, "word length for relation probes");
  auto* window = app.add_option("--window", opt.window, "level window for presentations");
  auto* max_degree = app.add_option("--max-degree", opt.max_degree, "largest degree for solve-finite");
  auto* budget = app.add_option("--budget-ms", opt.budget_ms, "time budget in milliseconds");
  auto* h = app.add_option("--h-factors", opt.h_factors, "factors of G forming H in normal-form-6")
                ->delimiter(',');
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "structured"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cli::exit_error;
  }

  cli::Options cfg;
  try {
    cfg = cli::config_from_env();
  } catch (const Error& e) {
    std::cerr << "grpeq: " << e.what() << "\n";
    return cli::exit_error;
  }
  if (radius->count()) cfg.radius = opt.radius;
  if (max_size->count()) cfg.max_size = opt.max_size;
  if (max_len->count()) cfg.max_len = opt.max_len;
  if (window->count()) cfg.window = opt.window;
  if (max_degree->count()) cfg.max_degree = opt.max_degree;
  if (budget->count()) cfg.budget_ms = opt.budget_ms;
  if (h->count()) cfg.h_factors = opt.h_factors;

  std::string script;
  if (input == "-") {
    script = read_all(std::cin);
  } else if (!input.empty()) {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
      std::cerr << "grpeq: cannot open " << input << "\n";
      return cli::exit_error;
    }
    script = read_all(in);
  }

  cli::Outcome out = cli::run(command, args, cfg, script);
  std::cout << (format == "structured" ? cli::render_structured(out.report)
                                       : cli::render_text(out.report));
  return out.exit_code;
}
