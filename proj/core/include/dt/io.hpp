#pragma once

// JSON and CSV emitters (shortest round-trip reals, no locale) and config parsing.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "dt/chain.hpp"
#include "dt/dynamics.hpp"
#include "dt/experiments.hpp"
#include "dt/rep.hpp"

namespace dt {

/// Bad config; the message starts with the JSON pointer of the offending
/// field, e.g. "/alpha/2: expected a number".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Shortest round-trip decimal; non-finite values are written as null.
std::string fmt_real(double v);

std::string to_json(const TriangleChain& chain);
std::string to_json(const Representation& rep);
std::string to_json(const ActionAngleCoords& coords);
/// One JSONL line (no trailing newline): {step, word, beta, gamma, fp}.
std::string to_jsonl(const OrbitRecord& rec);

std::string to_json(const ExperimentConfig& cfg);
std::string to_json(const DensityReport& rep);
std::string to_json(const GluingReport& rep);

void write_csv(std::ostream& os, const FiberReport& rep);
void write_csv(std::ostream& os, const ZeroLocusScan& scan);
void write_csv(std::ostream& os, const TransversalityReport& rep);

/// Parses a config document. Unknown keys are rejected.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

TriangleChain chain_from_json(const std::string& text);

}  // namespace dt
