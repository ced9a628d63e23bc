#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace transvecta::cli {

using Json = nlohmann::ordered_json;

/// Compact JSON with every float printed as %.17g (non-finite values become
/// null). Key order is insertion order, so equal inputs give equal bytes.
inline void dump_to(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out.push_back('{');
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out.push_back(',');
        first = false;
        out += Json(key).dump();
        out.push_back(':');
        dump_to(value, out);
      }
      out.push_back('}');
      return;
    }
    case Json::value_t::array: {
      out.push_back('[');
      bool first = true;
      for (const auto& value : j) {
        if (!first) out.push_back(',');
        first = false;
        dump_to(value, out);
      }
      out.push_back(']');
      return;
    }
    case Json::value_t::number_float: {
      const double d = j.get<double>();
      if (!std::isfinite(d)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

inline std::string dump(const Json& j) {
  std::string out;
  dump_to(j, out);
  return out;
}

}  // namespace transvecta::cli
