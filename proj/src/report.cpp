#include "ivbmc/report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace ivbmc {

Report& Report::put_typed(const std::string& key, std::string value, Type type) {
  entries_.push_back({key, std::move(value), type, nullptr});
  return *this;
}

Report& Report::put(const std::string& key, const std::string& value) {
  return put_typed(key, value, Type::String);
}

Report& Report::put(const std::string& key, const char* value) {
  return put_typed(key, value, Type::String);
}

Report& Report::put(const std::string& key, long long value) {
  return put_typed(key, std::to_string(value), Type::Int);
}

Report& Report::put(const std::string& key, unsigned long long value) {
  return put_typed(key, std::to_string(value), Type::UInt);
}

Report& Report::put(const std::string& key, int value) {
  return put_typed(key, std::to_string(value), Type::Int);
}

Report& Report::put(const std::string& key, double value) {
  return put_typed(key, format_double(value), Type::Float);
}

Report& Report::put(const std::string& key, bool value) {
  return put_typed(key, value ? "true" : "false", Type::Bool);
}

Report& Report::child(const std::string& key) {
  entries_.push_back({key, "", Type::String, std::make_shared<Report>()});
  return *entries_.back().sub;
}

std::string Report::format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == std::floor(v) && std::fabs(v) < 9.007199254740992e15)
    return std::to_string(static_cast<long long>(v));
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void Report::render_text(std::string& out, int indent) const {
  const std::string pad(static_cast<size_t>(indent) * 2, ' ');
  for (const Entry& e : entries_) {
    if (e.sub) {
      out += pad + e.key + ":\n";
      e.sub->render_text(out, indent + 1);
    } else {
      out += pad + e.key + ": " + e.value + "\n";
    }
  }
}

std::string Report::to_text() const {
  std::string out;
  render_text(out, 0);
  return out;
}

void Report::render_json(std::string& out) const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const Entry& e : entries_) {
    if (e.sub) {
      std::string nested;
      e.sub->render_json(nested);
      j[e.key] = nlohmann::ordered_json::parse(nested);
      continue;
    }
    switch (e.type) {
      case Type::Int: j[e.key] = std::stoll(e.value); break;
      case Type::UInt: j[e.key] = std::stoull(e.value); break;
      case Type::Bool: j[e.key] = e.value == "true"; break;
      case Type::Float:
        // keep canonical text for non-finite and integral-valued floats
        if (e.value == "inf" || e.value == "-inf")
          j[e.key] = e.value;
        else
          j[e.key] = std::stod(e.value);
        break;
      case Type::String: j[e.key] = e.value; break;
    }
  }
  out = j.dump(2);
}

std::string Report::to_json() const {
  std::string out;
  render_json(out);
  return out;
}

std::string format_interval(const Interval& iv) { return to_string(iv); }

std::string format_box(const IntBox& b) { return to_string(b); }

}  // namespace ivbmc
