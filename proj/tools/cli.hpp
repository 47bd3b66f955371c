#ifndef ECTRACE_TOOLS_CLI_HPP
#define ECTRACE_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ectrace::cli {

struct RunConfig {
  std::string command;
  std::string input;
  std::string format = "json";
  std::string method = "edge";
  std::string arithmetic = "auto";
  double tolerance = 1e-6;
  double imag_tolerance = 1e-9;
  std::uint64_t max_terms = std::uint64_t{1} << 28;
  bool force = false;
  unsigned threads = 0;
  bool serial = false;

  std::vector<int> tree;
  std::string orientation;
  std::optional<int> modulus;
  std::optional<int> length;
  std::vector<int> subset;
  std::string alpha;
  bool homology = false;

  std::string mode = "aut";
  std::string half;
  std::optional<int> pinned_edge;
  std::string generators;
  bool auto_generators = false;
  bool dump_rows = false;

  std::optional<int> root;
  bool dump_matrix = false;
  std::string twist;

  int oracle_max_length = 12;
  std::uint64_t oracle_max_nodes = 100'000'000;
};

// What a subcommand produces. Rows are optional; `columns` fixes their order.
struct Output {
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
};

Output dispatch(const RunConfig& config);

// Writes the output in config.format. `seconds` only appears in JSON.
void emit(const RunConfig& config, const Output& output, double seconds, std::ostream& out);

// Parses argv, runs, and returns the exit status (0, or an ErrorKind code).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ectrace::cli

#endif  // ECTRACE_TOOLS_CLI_HPP
