#ifndef FRACSPEC_SPEC_IO_HPP
#define FRACSPEC_SPEC_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracspec/errors.hpp"
#include "fracspec/lattice.hpp"
#include "fracspec/spectral_pair.hpp"

namespace fracspec {

/// On-disk form of a simple-factor datum. Spec files are UTF-8 JSON:
///
///   {
///     "name": "scale4",
///     "dimension": 1,
///     "K_basis": [["1"]], "A_basis": [["1/2"]], "Gamma_basis": [["1/4"]],
///     "digits_B": [["0"], ["1/2"]],
///     "digits_L": [["0"], ["1"]],
///     "omega":   [ [["0"], ["1/4"]], [["1/2"], ["3/4"]] ],
///     "D_prime": [ [["0"], ["1/4"]] ]
///   }
///
/// Bases are d×d row-major arrays whose columns are the generators. All
/// numbers are rational strings "p/q"; JSON numbers are rejected so nothing
/// passes through floating point. Boxes are [low corner, high corner] pairs.
struct SpecDocument {
  std::string name;
  std::size_t dimension = 0;
  RatMat K_basis, A_basis, Gamma_basis;
  std::vector<RatVec> digits_B, digits_L;
  std::optional<BoxUnion> omega;
  std::optional<BoxUnion> d_prime;

  SimpleFactorSpec to_spec() const;
};

class ValidationFailed : public Error {
 public:
  ValidationFailed(const std::string& spec_name, ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Throws ParseError with the offending field in the message.
SpecDocument parse_spec_json(const nlohmann::json& doc);
SpecDocument parse_spec_text(const std::string& text);
nlohmann::json spec_to_json(const SpecDocument& doc);

/// A built-in name ("scale4", "scale4x2", "middlethird", "degenerate") or a
/// path to a spec file. Throws ParseError or IOError.
SpecDocument load_spec_document(const std::string& path_or_name);

struct LoadedSpec {
  SpecDocument document;
  SimpleFactorSpec spec;
  ValidationReport report;
};

/// Parses and validates; with require_valid, throws ValidationFailed on a
/// failing report.
LoadedSpec parse_spec(const std::string& path_or_name, bool require_valid = false);

std::vector<std::string> builtin_spec_names();
std::optional<SpecDocument> builtin_spec(const std::string& name);
/// K = Z, A = Γ = (1/3)Z, B = {0, 2/3}, L = {0, ℓ}. Not a valid simple
/// factor for any ℓ; used as a negative control.
SpecDocument middle_third_document(const Rational& ell);

nlohmann::json report_to_json(const ValidationReport& report);
RatVec parse_rational_vector(const std::string& text);

}  // namespace fracspec

#endif  // FRACSPEC_SPEC_IO_HPP
