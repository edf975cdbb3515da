#pragma once

// Text formats: parameter files (labelled rows, one column per time chunk,
// values in MHz) and state specs (one `<bits> <re> [<im>]` term per line).

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qnnw/dynamics.hpp"
#include "qnnw/states.hpp"

namespace qnnw {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Sidecar metadata carried by training checkpoints.
struct CheckpointMeta {
  int stage = 0;
  std::string convention = "angular";  // angular | linear | custom
  double angular_factor = UnitConvention::kAngular;
  bool ordered_pair_sum = false;
  Schedule schedule;

  UnitConvention unit_convention() const { return {angular_factor, ordered_pair_sum}; }
};

struct ParameterFile {
  QnnParameters params;
  std::optional<CheckpointMeta> meta;
};

// Row labels: K_A.., eps_A.., zeta_AB.. (the Greek spellings ε_A and ζ_AB
// are accepted on input). An optional header row starts with "t".
ParameterFile parse_parameter_file(std::string_view text);
ParameterFile read_parameter_file(const std::filesystem::path& path);

// Values are written with 17 significant digits so reading back is exact.
std::string format_parameter_file(const ParameterFile& file);
void write_parameter_file(const std::filesystem::path& path, const ParameterFile& file);

// Qubit count is the bitstring length, which must agree across lines.
StateSpec parse_state_spec(std::string_view text);
StateSpec read_state_spec(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace qnnw
