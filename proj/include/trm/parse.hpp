#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "trm/halfplane.hpp"
#include "trm/modelspace.hpp"
#include "trm/torus.hpp"

namespace trm {

/// Malformed input text (distinct from mathematical domain errors).
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Complex literal: optional real part, optional signed imaginary part with
/// the suffix 'i' ("1+2i", "-0.5i", "i", "3"). No whitespace.
cplx parse_complex(const std::string& text);

/// Complex literal that must land in the upper half-plane.
HPoint parse_hpoint(const std::string& text);

/// "inf" or a real number.
BoundaryPoint parse_boundary(const std::string& text);

/// "a,b" with (a, b) != (0, 0).
FoliationVec parse_foliation(const std::string& text);

/// Comma-separated list of complex literals.
std::vector<cplx> parse_complex_list(const std::string& text);

std::string format_complex(cplx z);

/// Model-space description file:
/// {"schema": 1, "grid": {"nx": .., "ny": ..}, "basis": [spec...], "seed": ..}
ModelSpace load_model_space(const std::string& path);
std::string model_space_json(const ModelSpace& s);

}  // namespace trm
