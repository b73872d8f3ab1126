// Command dispatch for the grpeq tool. Every command produces one report
// with the layout
//   {schema, version, kind, status, result, input}
// and the human text is rendered from that report.

#ifndef GRPEQ_CLI_HPP_
#define GRPEQ_CLI_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace grpeq::cli {

inline constexpr const char* schema_name = "grpeq-report";
inline constexpr int schema_version = 1;

struct Options {
  int radius = 3;
  int max_size = 14;
  int max_len = 8;
  int window = 8;
  int max_degree = 8;
  std::int64_t budget_ms = 60000;
  std::vector<int> h_factors;  // normal-form-6: factors of G forming H

  nlohmann::json to_json() const;
  static Options from_json(const nlohmann::json& j);
  static Options from_json(const nlohmann::json& j, Options base);
  // Throws ConfigError when a value is outside its cap.
  void validate() const;
};

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_falsified = 1;
inline constexpr int exit_error = 2;

struct Outcome {
  int exit_code = exit_ok;
  nlohmann::json report;
};

const std::vector<std::string>& commands();

// Never throws on bad input: errors become reports with kind "error".
Outcome run(const std::string& command, const std::vector<std::string>& args,
            const Options& options, const std::string& script);

std::string render_text(const nlohmann::json& report);
// Two-space indented JSON followed by a newline.
std::string render_structured(const nlohmann::json& report);

// Options from the JSON file named by GRPEQ_CONFIG, if set.
Options config_from_env();

} // namespace grpeq::cli

#endif
