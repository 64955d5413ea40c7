#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "diamond/charts.hpp"
#include "diamond/lie.hpp"
#include "diamond/polyexp.hpp"
#include "diamond/verify.hpp"

namespace diamond::cli {

/// Malformed input; offset is the byte position of the offending character.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Grammar (whitespace allowed between tokens):
///   expr   := term (('+' | '-') term)*
///   term   := '-'* [number ['*']] basis
///   basis  := 'X' | 'Y' | 'Z' | 'T'
/// Repeated basis symbols accumulate.
LieElement parse_lie(std::string_view text);

/// Inverse of to_canonical_string.
PolyExp parse_polyexp(std::string_view text);

/// "a,b,c,d" -> functional.
DualFunctional parse_functional(std::string_view text);

/// "x>0" / "positive" / "+" and "x<0" / "negative" / "-".
Branch parse_branch(std::string_view text);

inline constexpr const char* kConfigEnvVar = "DIAMONDQ_CONFIG";

/// Settings shared by the subcommands. Config files are flat text:
///   # comment
///   key = value
/// Keys: alpha beta gamma delta branch n_p n_q l_p l_q n_x l_x q_min q_max
/// order seed tol output.
struct RunConfig {
  DualFunctional functional{1.0, 0.0, 0.0, 0.0};
  std::optional<Branch> branch;
  verify::SuiteConfig suite;
  double tol = 1e-6;
  std::string output;

  /// Applies one key; throws std::invalid_argument on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  void validate() const;
};

/// Reads key = value lines; errors carry the line number.
RunConfig load_config(const std::string& path, RunConfig base = {});

/// The file named by DIAMONDQ_CONFIG, or defaults when unset.
RunConfig default_config();

struct CommandOutput {
  std::string text;
  int exit_code = 0;
};

CommandOutput cmd_classify(const DualFunctional& F);
CommandOutput cmd_hamiltonian(const LieElement& A, const RunConfig& cfg);
/// Random A, B from the seed when not given.
CommandOutput cmd_star_check(std::optional<LieElement> A, std::optional<LieElement> B,
                             const RunConfig& cfg);
CommandOutput cmd_operators(const LieElement& A, const RunConfig& cfg);
CommandOutput cmd_verify(const RunConfig& cfg);

struct FlowSpec {
  double tau = 1.0;
  std::size_t snapshots = 4;
  double s_min = -10.0;
  double s_max = 10.0;
  std::size_t n = 401;
  double center = 0.0;
  double width = 1.0;
  double wavenumber = 0.0;
  std::size_t steps = 1024;
};

/// CSV "tau,s,re,im" with snapshots at tau * k / snapshots, k = 0..snapshots.
CommandOutput cmd_flow(const LieElement& A, const RunConfig& cfg, const FlowSpec& spec);
CommandOutput cmd_fourier_check(const LieElement& A, const RunConfig& cfg);

}  // namespace diamond::cli
