#include "pcband/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pcband/errors.hpp"
#include "pcband/expr.hpp"

namespace pcband {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw parse_error(what, 0); }

double number_field(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number()) bad(std::string("profile JSON: \"") + key + "\" must be a number");
  return v.get<double>();
}

ProfileSource from_json(const json& doc) {
  if (!doc.is_object()) bad("profile JSON: document must be an object");
  if (!doc.contains("type") || !doc["type"].is_string())
    bad("profile JSON: missing string field \"type\"");
  const std::string type = doc["type"].get<std::string>();

  // Exactly one payload field may be present, and it must match the type.
  const int payloads = int(doc.contains("canonical")) +
                       int(doc.contains("expression")) +
                       int(doc.contains("layers"));
  if (payloads != 1)
    bad("profile JSON: exactly one of \"canonical\", \"expression\", "
        "\"layers\" must be present");

  ProfileSource src;
  if (type == "canonical") {
    if (!doc.contains("canonical") || !doc["canonical"].is_string())
      bad("profile JSON: canonical type needs a string \"canonical\"");
    if (doc.contains("period") && number_field(doc, "period") != 1.0)
      bad("profile JSON: canonical profiles have period 1");
    const std::string name = doc["canonical"].get<std::string>();
    src.profile = canonical_profile(name);  // rejects unknown names
    src.label = name;
  } else if (type == "expression") {
    if (!doc.contains("expression") || !doc["expression"].is_string())
      bad("profile JSON: expression type needs a string \"expression\"");
    double period = 1.0;
    if (doc.contains("period")) {
      period = number_field(doc, "period");
      if (!(period > 0)) bad("profile JSON: \"period\" must be positive");
    }
    const std::string text = doc["expression"].get<std::string>();
    src.profile = parse_profile_expr(text, period);
    src.label = src.profile->label;
  } else if (type == "layers") {
    if (!doc.contains("layers") || !doc["layers"].is_array() ||
        doc["layers"].empty())
      bad("profile JSON: layers type needs a non-empty \"layers\" array");
    std::vector<LayerStack::Layer> layers;
    double total = 0.0;
    for (const json& item : doc["layers"]) {
      if (!item.is_object() || !item.contains("n") || !item.contains("d") ||
          !item["n"].is_number() || !item["d"].is_number())
        bad("profile JSON: each layer needs numbers \"n\" and \"d\"");
      LayerStack::Layer l{item["n"].get<double>(), item["d"].get<double>()};
      total += l.d;
      layers.push_back(l);
    }
    if (doc.contains("period")) {
      const double period = number_field(doc, "period");
      if (std::fabs(period - total) > 1e-12 * std::max(1.0, total))
        bad("profile JSON: \"period\" disagrees with the layer widths");
    }
    src.stack = make_layer_stack(std::move(layers));
    src.label = "layers";
  } else {
    bad("profile JSON: unknown type \"" + type +
        "\" (expected canonical, expression or layers)");
  }
  return src;
}

}  // namespace

ProfileSource parse_profile_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("profile JSON: ") + e.what(),
                      std::size_t(std::max<std::ptrdiff_t>(0, e.byte - 1)));
  }
  return from_json(doc);
}

ProfileSource load_profile_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open profile file: " + path, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profile_json(buf.str());
}

ProfileSource resolve_profile_arg(const std::string& arg) {
  for (const char* name : {"sinusoidal", "triangular", "square", "ramp_jump"})
    if (arg == name) {
      ProfileSource src;
      src.profile = canonical_profile(arg);
      src.label = arg;
      return src;
    }
  return load_profile_file(arg);
}

}  // namespace pcband
