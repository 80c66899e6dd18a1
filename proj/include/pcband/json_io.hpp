#pragma once

#include <optional>
#include <string>

#include "pcband/profile.hpp"
#include "pcband/stratified.hpp"

namespace pcband {

// A medium loaded from user input: either a periodic profile or an
// explicit layer stack (exactly one is set).
struct ProfileSource {
  std::optional<Profile> profile;
  std::optional<LayerStack> stack;
  std::string label;
};

// Parse a profile description document:
//   {"type": "canonical",  "canonical": "sinusoidal"}
//   {"type": "expression", "expression": "2 + cos(2*pi*x)", "period": 1.0}
//   {"type": "layers",     "layers": [{"n": 3.0, "d": 0.25}, ...]}
// "period" is optional: expressions default to 1, layer stacks derive it
// from the layer widths (a given value must match their sum), canonical
// profiles are fixed at period 1.  Malformed documents raise parse_error;
// structurally valid but physically impossible ones raise
// precondition_error.
ProfileSource parse_profile_json(const std::string& text);

// parse_profile_json over the contents of a file.
ProfileSource load_profile_file(const std::string& path);

// Resolve a command-line profile argument: one of the canonical names
// (sinusoidal, triangular, square, ramp_jump), or a path to a JSON
// profile document.
ProfileSource resolve_profile_arg(const std::string& arg);

}  // namespace pcband
