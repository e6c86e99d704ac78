#pragma once

// JSON encodings of states, reports, spectra, verdicts and circuits.

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "boat/certify.hpp"
#include "boat/compile.hpp"
#include "boat/dicke.hpp"
#include "boat/fourier.hpp"
#include "boat/mqc.hpp"

namespace boat {

using Json = nlohmann::ordered_json;

/// Malformed document; line and column are 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed JSON with missing fields or wrong types.
class SchemaError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Parses text, translating byte offsets of syntax errors into line/column.
Json parse_json(std::string_view text);

/// {"n", "d", "labels": [[...]], "amplitudes": [[re, im], ...]}
Json to_json(const SymmetricState& s);
SymmetricState state_from_json(const Json& j);

Json to_json(const GHZReport& r);
Json to_json(const MQCSpectrum& s);
Json to_json(const CoherenceMagnitudes& m);
Json to_json(const GHZBlock& b);
/// {"d", "threshold", "lower", "upper", "s", "certified", "relabeling", ...}
Json to_json(const Verdict& v);

/// {"n", "d", "ops": [{"kind": "swap", "levels": [g, a]}, ...]}
Json to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

/// Block document: {"populations": [p0, p1, p2],
///                  "magnitudes": [|r01|, |r02|, |r12|],
///                  "phases": [...] (optional)}
GHZBlock block_from_json(const Json& j);

} // namespace boat
